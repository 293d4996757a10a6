//! Integration coverage of the verify suites themselves: the convergence
//! study and the report plumbing, at study-scale grids.

use num_complex::Complex64;
use verify::report::write_cells_csv;
use verify::Tolerances;

fn tau_i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

#[test]
fn convergence_study_is_monotone() {
    let report = verify::convergence::convergence_study(
        tau_i(),
        4,
        &[64, 128, 256, 512],
        &verify::default_torus_points(),
    )
    .unwrap();
    assert!(report.passed(), "{}", report.to_json());
    // empirical orders are positive (the reductions are genuine)
    for key in ["order_dbar_refined", "order_cross_path", "order_ratio_spread"] {
        let order: f64 = report.measured[key].parse().unwrap();
        assert!(order > 1.0, "{key} = {order}");
    }
}

#[test]
fn coarse_grids_may_fail_tolerance_but_stay_monotone() {
    let report = verify::convergence::convergence_study(
        tau_i(),
        4,
        &[32, 64, 128],
        &verify::default_torus_points(),
    )
    .unwrap();
    // monotone even though N = 32 would fail the acceptance tolerances
    assert!(report.passed(), "{}", report.to_json());
}

#[test]
fn descending_grid_list_is_rejected() {
    let report = verify::convergence::convergence_study(
        tau_i(),
        4,
        &[128, 64],
        &verify::default_torus_points(),
    )
    .unwrap();
    assert!(!report.passed());
}

#[test]
fn reports_serialize_and_tabulate() {
    let tol = Tolerances::default();
    let lift = verify::lift::verify_lift_p1(&[2, 3], &verify::default_p1_points());
    let sym = verify::symmetry::verify_symmetry_torus(
        tau_i(),
        4,
        64,
        &[((0.42, 0.5), (0.58, 0.55))],
        &tol,
    )
    .unwrap();
    assert!(lift.passed());
    // serialization round-trips through JSON
    let text = lift.to_json();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["schema_version"], 1);
    assert_eq!(parsed["check"], "lift_p1");
    // CSV emission with the RFC-4180 header
    let dir = std::env::temp_dir().join("verify-suites-test");
    std::fs::create_dir_all(&dir).unwrap();
    let csv_path = dir.join("cells.csv");
    write_cells_csv(&[lift, sym], &csv_path).unwrap();
    let content = std::fs::read_to_string(&csv_path).unwrap();
    assert!(content.starts_with("check,backend,cell,value,"));
    assert!(content.lines().count() > 5);

    // byte-identical JSON on repeated exact runs
    let again = verify::lift::verify_lift_p1(&[2, 3], &verify::default_p1_points());
    let strip = |t: &str| {
        // wall time is the one legitimately varying field
        t.lines()
            .filter(|l| !l.contains("wall_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&text), strip(&again.to_json()));
}

#[test]
fn twisted_report_passes_at_study_scale() {
    let tol = Tolerances::default();
    let chi = torus_backend::FlatCharacter::new(0.5, 0.0).unwrap();
    let report = verify::lift::verify_twisted_lift(
        tau_i(),
        4,
        128,
        chi,
        &verify::default_torus_points(),
        &Tolerances { twisted_spread: 1e-5, ..tol },
    )
    .unwrap();
    assert!(report.passed(), "{}", report.to_json());
}
