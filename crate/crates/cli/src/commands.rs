//! Command implementations: computations, serialization and the verify
//! driver with its exit-code protocol.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use gauss_core::pairs::{pair_relation_space, SplitBundle};
use gauss_core::{gauss_rho, relation_space, wahl_mu2, HodgeBackend, SymTensor};
use num_complex::Complex64;
use p1_backend::P1Backend;
use serde_json::{json, Value};
use torus_backend::{FlatCharacter, TorusBackend};
use verify::report::{write_cells_csv, Outcome, VerificationReport};

use crate::config::{
    parse_exact_point, parse_torus_point, BackendChoice, ConfigError, ConfigFile, Overrides,
    RunConfig,
};

type CmdResult = Result<(), Box<dyn std::error::Error>>;

fn write_json(dir: &Path, name: &str, value: &Value) -> CmdResult {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, format!("{}\n", serde_json::to_string_pretty(value)?))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn torus_backend(cfg: &RunConfig) -> Result<TorusBackend, gauss_core::BackendError> {
    let chi = FlatCharacter::new(cfg.chi.0, cfg.chi.1)?;
    TorusBackend::with_options(cfg.tau, cfg.degree, cfg.grid, 1.0, chi, cfg.bump_radius)
}

fn exact_tensor_json(t: &SymTensor<exact_algebra::GaussianRational>) -> Value {
    let entries: Vec<Value> = t
        .support()
        .iter()
        .map(|(m, c)| json!({ "multiset": m.elems(), "coeff": c.to_string() }))
        .collect();
    json!(entries)
}

fn complex_tensor_json(t: &SymTensor<Complex64>) -> Value {
    let entries: Vec<Value> = t
        .support()
        .iter()
        .map(|(m, c)| json!({ "multiset": m.elems(), "re": c.re, "im": c.im }))
        .collect();
    json!(entries)
}

pub fn cmd_ik(cfg: &RunConfig) -> CmdResult {
    let payload = match cfg.backend {
        BackendChoice::P1 => {
            let backend = P1Backend::new(cfg.degree);
            let space = relation_space(&backend, cfg.k)?;
            println!(
                "I_{}(O({})) on p1: dim {} (rank {})",
                cfg.k,
                cfg.degree,
                space.dim(),
                space.diagnostics.rank
            );
            json!({
                "schema_version": 1,
                "backend": "p1",
                "degree": cfg.degree,
                "k": cfg.k,
                "dim": space.dim(),
                "rank": space.diagnostics.rank,
                "basis": space.basis.iter().map(exact_tensor_json).collect::<Vec<_>>(),
            })
        }
        BackendChoice::Torus => {
            let backend = torus_backend(cfg)?;
            let space = relation_space(&backend, cfg.k)?;
            println!(
                "I_{}(L_{}) on the torus: dim {} (rank {}, gap {:.3e})",
                cfg.k,
                cfg.degree,
                space.dim(),
                space.diagnostics.rank,
                space.diagnostics.gap
            );
            json!({
                "schema_version": 1,
                "backend": "torus",
                "tau": format!("{}+{}i", cfg.tau.re, cfg.tau.im),
                "grid": cfg.grid,
                "degree": cfg.degree,
                "k": cfg.k,
                "dim": space.dim(),
                "rank": space.diagnostics.rank,
                "singular_value_gap": space.diagnostics.gap,
                "singular_values": space.diagnostics.singular_values,
                "basis": space.basis.iter().map(complex_tensor_json).collect::<Vec<_>>(),
            })
        }
    };
    write_json(&cfg.output, "relation_space.json", &payload)
}

pub fn cmd_wahl(cfg: &RunConfig) -> CmdResult {
    let payload = match cfg.backend {
        BackendChoice::P1 => {
            let backend = P1Backend::new(cfg.degree);
            let space = relation_space(&backend, 2)?;
            let images: Vec<Value> = space
                .basis
                .iter()
                .map(|q| {
                    let w = wahl_mu2(&backend, q)?;
                    Ok(json!(w
                        .coords
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()))
                })
                .collect::<Result<_, gauss_core::BackendError>>()?;
            json!({
                "schema_version": 1,
                "backend": "p1",
                "degree": cfg.degree,
                "target": "H0(L^2 K^2) in the monomial basis",
                "images": images,
            })
        }
        BackendChoice::Torus => {
            let backend = torus_backend(cfg)?;
            let space = relation_space(&backend, 2)?;
            let images: Vec<Value> = space
                .basis
                .iter()
                .map(|q| {
                    let w = wahl_mu2(&backend, q)?;
                    Ok(json!(w
                        .coords
                        .iter()
                        .map(|c| json!({ "re": c.re, "im": c.im }))
                        .collect::<Vec<_>>()))
                })
                .collect::<Result<_, gauss_core::BackendError>>()?;
            json!({
                "schema_version": 1,
                "backend": "torus",
                "degree": cfg.degree,
                "grid": cfg.grid,
                "target": "H0(L^2 K^2) in the theta basis",
                "images": images,
            })
        }
    };
    println!("wahl images computed");
    write_json(&cfg.output, "wahl_images.json", &payload)
}

pub fn cmd_rho(cfg: &RunConfig, q_index: usize, point: Option<&str>) -> CmdResult {
    let payload = match cfg.backend {
        BackendChoice::P1 => {
            let backend = P1Backend::new(cfg.degree);
            let space = relation_space(&backend, cfg.k)?;
            if space.dim() == 0 {
                return Err(Box::new(ConfigError(format!(
                    "relation space is zero: I_{}(O({})) has no elements",
                    cfg.k, cfg.degree
                ))));
            }
            if q_index >= space.dim() {
                return Err(Box::new(ConfigError(format!(
                    "q-index {q_index} out of range: dim I_k = {}",
                    space.dim()
                ))));
            }
            let p = match point {
                Some(s) => parse_exact_point(s)?,
                None => cfg
                    .p1_points
                    .first()
                    .cloned()
                    .ok_or_else(|| ConfigError("no sample points configured".into()))?,
            };
            let xi = backend.schiffer_class(&p, cfg.m)?;
            let image = gauss_rho(&backend, &space.basis[q_index], &xi, cfg.m)?;
            println!("rho image coords: [{}]", image
                .coords
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", "));
            json!({
                "schema_version": 1,
                "backend": "p1",
                "degree": cfg.degree,
                "k": cfg.k,
                "m": cfg.m,
                "q_index": q_index,
                "point": p.to_string(),
                "target_power": image.target_power,
                "coords": image.coords.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "diagnostics": {
                    "decomposition_residual": image.diagnostics.decomposition_residual,
                    "closedness_residual": image.diagnostics.closedness_residual,
                    "projection_residual": image.diagnostics.projection_residual,
                },
            })
        }
        BackendChoice::Torus => {
            let backend = torus_backend(cfg)?;
            let space = relation_space(&backend, cfg.k)?;
            if space.dim() == 0 {
                return Err(Box::new(ConfigError(format!(
                    "relation space is zero: I_{}(L_{}) has no elements",
                    cfg.k, cfg.degree
                ))));
            }
            if q_index >= space.dim() {
                return Err(Box::new(ConfigError(format!(
                    "q-index {q_index} out of range: dim I_k = {}",
                    space.dim()
                ))));
            }
            let p = match point {
                Some(s) => parse_torus_point(s)?,
                None => cfg.torus_points[0],
            };
            let xi = backend.schiffer_class(&p, cfg.m)?;
            let image = gauss_rho(&backend, &space.basis[q_index], &xi, cfg.m)?;
            println!(
                "rho image computed: closedness residual {:.3e}",
                image.diagnostics.closedness_residual
            );
            json!({
                "schema_version": 1,
                "backend": "torus",
                "tau": format!("{}+{}i", cfg.tau.re, cfg.tau.im),
                "grid": cfg.grid,
                "degree": cfg.degree,
                "k": cfg.k,
                "m": cfg.m,
                "chi": [cfg.chi.0, cfg.chi.1],
                "q_index": q_index,
                "point": [p.0, p.1],
                "target_power": image.target_power,
                "coords": image.coords.iter().map(|c| json!({"re": c.re, "im": c.im})).collect::<Vec<_>>(),
                "diagnostics": {
                    "decomposition_residual": image.diagnostics.decomposition_residual,
                    "closedness_residual": image.diagnostics.closedness_residual,
                    "projection_residual": image.diagnostics.projection_residual,
                },
            })
        }
    };
    write_json(&cfg.output, "rho_image.json", &payload)
}

fn parse_degrees(s: &str) -> Result<SplitBundle, ConfigError> {
    let degrees: Result<Vec<usize>, _> = s
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| ConfigError(format!("bad summand degree {p:?}")))
        })
        .collect();
    let degrees = degrees?;
    if degrees.is_empty() {
        return Err(ConfigError("split bundle needs at least one summand".into()));
    }
    Ok(SplitBundle { degrees })
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_pair(
    file: Option<&ConfigFile>,
    ov: &Overrides,
    e_degrees: &str,
    f_degrees: &str,
    component: Option<usize>,
    point: Option<&str>,
    q_index: usize,
) -> CmdResult {
    let e = parse_degrees(e_degrees)?;
    let f = parse_degrees(f_degrees)?;
    let space = pair_relation_space(&e, &f)?;
    println!(
        "R_2(O{:?}, O{:?}): dim {} (jet rank {})",
        e.degrees,
        f.degrees,
        space.dim(),
        space.diagnostics.rank
    );
    let mut payload = json!({
        "schema_version": 1,
        "e_degrees": e.degrees,
        "f_degrees": f.degrees,
        "dim": space.dim(),
        "jet_rank": space.diagnostics.rank,
        "basis": space
            .basis
            .iter()
            .map(|t| json!(t.iter().map(ToString::to_string).collect::<Vec<_>>()))
            .collect::<Vec<_>>(),
    });
    if let (Some(component), Some(point)) = (component, point) {
        if q_index >= space.dim() {
            return Err(Box::new(ConfigError(format!(
                "q-index {q_index} out of range: dim R_2 = {}",
                space.dim()
            ))));
        }
        let p = parse_exact_point(point)?;
        let image = p1_backend::rho_pair(&e, &f, &space.basis[q_index], component, &p)?;
        payload["pair_image"] = json!({
            "component": component,
            "point": p.to_string(),
            "q_index": q_index,
            "per_summand": image
                .per_summand
                .iter()
                .map(|c| json!(c.iter().map(ToString::to_string).collect::<Vec<_>>()))
                .collect::<Vec<_>>(),
        });
        println!("pair image computed for component {component} at P = {p}");
    }
    let out = ov
        .output
        .clone()
        .or_else(|| {
            file.and_then(|f| f.get("run", "output"))
                .map(PathBuf::from)
        })
        .unwrap_or_else(|| PathBuf::from("out"));
    write_json(&out, "pair_relations.json", &payload)
}

pub fn cmd_verify(cfg: &RunConfig, suite: &str) -> ExitCode {
    let suites: Vec<&str> = match suite {
        "all" => vec![
            "lift",
            "twisted",
            "welldefined",
            "closedness",
            "symmetry",
            "convergence",
        ],
        s => vec![s],
    };
    let mut reports: Vec<VerificationReport> = Vec::new();
    for s in &suites {
        match run_suite(cfg, s) {
            Ok(mut r) => reports.append(&mut r),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        }
    }
    let mut failed = false;
    let mut inconclusive = false;
    for r in &reports {
        let status = match r.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => {
                failed = true;
                "FAIL"
            }
            Outcome::Inconclusive => {
                inconclusive = true;
                "INCONCLUSIVE"
            }
        };
        println!("{status}  {} [{} ms]", r.check, r.wall_ms);
        if let Err(e) = r.write_json(&cfg.output) {
            eprintln!("error: cannot write report: {e}");
            return ExitCode::from(1);
        }
    }
    let csv_path = cfg.output.join("cells.csv");
    if let Err(e) = write_cells_csv(&reports, &csv_path) {
        eprintln!("error: cannot write CSV: {e}");
        return ExitCode::from(1);
    }
    println!("wrote {} reports and {}", reports.len(), csv_path.display());
    if failed {
        ExitCode::from(2)
    } else if inconclusive {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_suite(
    cfg: &RunConfig,
    suite: &str,
) -> Result<Vec<VerificationReport>, Box<dyn std::error::Error>> {
    let tol = cfg.tolerances;
    let mut out = Vec::new();
    match (suite, cfg.backend) {
        ("lift", BackendChoice::P1) => {
            out.push(verify::lift::verify_lift_p1(&[cfg.degree], &cfg.p1_points));
        }
        ("lift", BackendChoice::Torus) => {
            let pair = verify::lift::verify_lift_torus(
                cfg.tau,
                cfg.degree,
                cfg.grid,
                &cfg.torus_points,
                &tol,
            )?;
            out.push(pair.coarse.report);
            out.push(pair.fine.report);
        }
        ("twisted", BackendChoice::Torus) => {
            let chi = FlatCharacter::new(cfg.chi.0, cfg.chi.1)?;
            if chi.is_trivial() {
                // the trivial character reproduces the plain lift
                let run = verify::lift::torus_lift_ratios(
                    cfg.tau,
                    cfg.degree,
                    cfg.grid,
                    chi,
                    &cfg.torus_points,
                    tol.lift_spread,
                )?;
                out.push(run.report);
            } else {
                out.push(verify::lift::verify_twisted_lift(
                    cfg.tau,
                    cfg.degree,
                    cfg.grid,
                    chi,
                    &cfg.torus_points,
                    &tol,
                )?);
            }
        }
        ("twisted", BackendChoice::P1) => {
            return Err(Box::new(ConfigError(
                "the twisted suite needs the torus backend".into(),
            )));
        }
        ("welldefined", BackendChoice::P1) => {
            out.push(verify::welldefined::verify_welldefined_p1(cfg.degree));
        }
        ("welldefined", BackendChoice::Torus) => {
            out.push(verify::welldefined::verify_welldefined_torus(
                cfg.tau, cfg.degree, cfg.grid, &tol,
            )?);
        }
        ("closedness", BackendChoice::P1) => {
            let fixtures: Vec<(usize, usize)> =
                (2..=cfg.k.max(2)).map(|k| (cfg.degree, k)).collect();
            out.push(verify::closedness::verify_closedness_p1(&fixtures));
        }
        ("closedness", BackendChoice::Torus) => {
            out.push(verify::closedness::verify_closedness_torus(
                cfg.tau,
                cfg.degree,
                cfg.grid,
                &cfg.torus_points,
                &tol,
            )?);
        }
        ("symmetry", BackendChoice::P1) => {
            let pairs: Vec<_> = cfg
                .p1_points
                .windows(2)
                .map(|w| (w[0].clone(), w[1].clone()))
                .collect();
            out.push(verify::symmetry::verify_symmetry_p1(cfg.degree, &pairs));
        }
        ("symmetry", BackendChoice::Torus) => {
            let pairs: Vec<_> = cfg
                .torus_points
                .windows(2)
                .map(|w| (w[0], w[1]))
                .collect();
            out.push(verify::symmetry::verify_symmetry_torus(
                cfg.tau, cfg.degree, cfg.grid, &pairs, &tol,
            )?);
        }
        ("convergence", BackendChoice::Torus) => {
            out.push(verify::convergence::convergence_study(
                cfg.tau,
                cfg.degree,
                &cfg.grids,
                &cfg.torus_points,
            )?);
        }
        ("convergence", BackendChoice::P1) => {
            return Err(Box::new(ConfigError(
                "the convergence suite needs the torus backend".into(),
            )));
        }
        (other, _) => {
            return Err(Box::new(ConfigError(format!(
                "unknown suite {other:?}: use lift | twisted | welldefined | closedness | symmetry | convergence | all"
            ))));
        }
    }
    Ok(out)
}

pub fn cmd_report(path: &Path) -> CmdResult {
    let text = std::fs::read_to_string(path)?;
    let report: serde_json::Value = serde_json::from_str(&text)?;
    let check = report["check"].as_str().unwrap_or("?");
    let outcome = report["outcome"].as_str().unwrap_or("?");
    println!("{check}: {}", outcome.to_uppercase());
    if let Some(params) = report["params"].as_object() {
        for (k, v) in params {
            println!("  param {k} = {}", v.as_str().unwrap_or("?"));
        }
    }
    if let Some(measured) = report["measured"].as_object() {
        for (k, v) in measured {
            println!("  measured {k} = {}", v.as_str().unwrap_or("?"));
        }
    }
    if let Some(cells) = report["cells"].as_array() {
        println!("  cells: {}", cells.len());
        for c in cells.iter().take(8) {
            println!(
                "    {} = {}",
                c["label"].as_str().unwrap_or("?"),
                c["value"].as_str().unwrap_or("?")
            );
        }
        if cells.len() > 8 {
            println!("    ... ({} more)", cells.len() - 8);
        }
    }
    Ok(())
}
