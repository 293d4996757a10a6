//! Oracle tests for the exact backend: every frozen value below is either
//! forced by elementary algebra (computed in the comments) or cross-checked
//! through an independent code path inside the test.

use exact_algebra::{ExactMatrix, GaussianRational, Polynomial, RationalFunction};
use gauss_core::relation::transform_tensor;
use gauss_core::{
    gauss_rho, gauss_rho_derivative_form, pair_relation_space, relation_space, symmetry_pair,
    wahl_mu2, HodgeBackend, Multiset, SymTensor,
};
use gauss_core::pairs::SplitBundle;
use p1_backend::{pair_schiffer, rho_pair, rho_schiffer_exact, P1Backend, P1Class01};

fn g(s: &str) -> GaussianRational {
    s.parse().unwrap()
}

/// The quadric x0 x2 - x1^2 in Sym^2 H^0(O(2)): a_02 = a_20 = 1/2, a_11 = -1.
fn quadric_d2() -> SymTensor<GaussianRational> {
    let mut q = SymTensor::zero(2, 3);
    q.set_coeff(&Multiset::new(vec![0, 2]), g("1"));
    q.set_coeff(&Multiset::new(vec![1, 1]), g("-1"));
    q
}

#[test]
fn relation_space_dimensions_match_riemann_roch() {
    // dim I_2(O(d)) = (d+1)(d+2)/2 - (2d+1) = d(d-1)/2
    for d in 1..=6usize {
        let backend = P1Backend::new(d);
        let space = relation_space(&backend, 2).unwrap();
        assert_eq!(space.dim(), d * (d - 1) / 2, "d = {d}");
        assert_eq!(space.diagnostics.rank, 2 * d + 1);
    }
    // the d = 2 kernel is the quadric, with the documented tuple weights
    let space = relation_space(&P1Backend::new(2), 2).unwrap();
    let q = &space.basis[0];
    assert_eq!(q.tuple_coeff(&[0, 2]), g("1/2"));
    assert_eq!(q.tuple_coeff(&[2, 0]), g("1/2"));
    assert_eq!(q.tuple_coeff(&[1, 1]), g("-1"));
}

#[test]
fn relation_identity_holds_exactly() {
    for d in 2..=5usize {
        let backend = P1Backend::new(d);
        let space = relation_space(&backend, 2).unwrap();
        for q in &space.basis {
            let res = gauss_core::relation::relation_residual(&backend, q).unwrap();
            assert_eq!(res, 0.0);
        }
    }
}

#[test]
fn rho_closed_form_fixture() {
    // d=2, Q = x0 x2 - x1^2, P=0: numerator sum a_ij phi_i(0) phi_j(z) = z^2/2,
    // so sigma = -(z^2/2)/z^2 = -1/2.
    let backend = P1Backend::new(2);
    let image = rho_schiffer_exact(&backend, &quadric_d2(), &g("0"), 1).unwrap();
    assert_eq!(image.coords, vec![g("-1/2")]);

    // zero tensor maps to zero
    let zero = SymTensor::<GaussianRational>::zero(2, 3);
    let zimg = rho_schiffer_exact(&backend, &zero, &g("5"), 1).unwrap();
    assert!(zimg.is_zero());
}

#[test]
fn rho_closed_form_is_linear_in_the_tensor() {
    let backend = P1Backend::new(3);
    let space = relation_space(&backend, 2).unwrap();
    assert_eq!(space.dim(), 3);
    let p = g("2");
    let a = &space.basis[0];
    let b = &space.basis[1];
    let combo = a.scale(&g("3")).add(&b.scale(&g("-1/2")));
    let img_combo = rho_schiffer_exact(&backend, &combo, &p, 1).unwrap();
    let img_a = rho_schiffer_exact(&backend, a, &p, 1).unwrap();
    let img_b = rho_schiffer_exact(&backend, b, &p, 1).unwrap();
    let expect: Vec<GaussianRational> = img_a
        .coords
        .iter()
        .zip(&img_b.coords)
        .map(|(x, y)| &(&g("3") * x) + &(&g("-1/2") * y))
        .collect();
    assert_eq!(img_combo.coords, expect);
}

#[test]
fn pipeline_equals_closed_form() {
    // gauss_rho through the symbolic harmonic decomposition must reproduce
    // the residue-algebra closed form exactly, for every basis element and
    // several points.
    for d in 2..=5usize {
        let backend = P1Backend::new(d);
        let space = relation_space(&backend, 2).unwrap();
        for q in &space.basis {
            for ps in ["0", "1", "-1", "2", "1/2"] {
                let p = g(ps);
                let xi = backend.schiffer_class(&p, 1).unwrap();
                let via_pipeline = gauss_rho(&backend, q, &xi, 1).unwrap();
                let via_closed = rho_schiffer_exact(&backend, q, &p, 1).unwrap();
                assert_eq!(via_pipeline.coords, via_closed.coords, "d={d} P={ps}");
            }
        }
    }
}

#[test]
fn pipeline_zero_inputs() {
    let backend = P1Backend::new(2);
    let xi = backend.schiffer_class(&g("0"), 1).unwrap();
    let zero = SymTensor::<GaussianRational>::zero(2, 3);
    assert!(gauss_rho(&backend, &zero, &xi, 1).unwrap().is_zero());
    let zero_xi = P1Class01::zero(1);
    assert!(gauss_rho(&backend, &quadric_d2(), &zero_xi, 1).unwrap().is_zero());
}

#[test]
fn derivative_form_agrees_exactly() {
    // Remark-style reformulation vs direct splitting, on all (k,m) fixtures
    let fixtures: &[(usize, usize, usize)] = &[(2, 2, 1), (2, 3, 1), (2, 3, 2), (2, 4, 2), (3, 2, 1), (4, 2, 1), (3, 3, 2)];
    for &(d, k, m) in fixtures {
        let backend = P1Backend::new(d);
        if m * d < 2 {
            continue;
        }
        let space = relation_space(&backend, k).unwrap();
        for q in &space.basis {
            for ps in ["0", "1", "-2"] {
                let p = g(ps);
                let xi = backend.schiffer_class(&p, m).unwrap();
                let direct = gauss_rho(&backend, q, &xi, m).unwrap();
                let deriv = gauss_rho_derivative_form(&backend, q, &xi, m).unwrap();
                assert_eq!(direct.coords, deriv.coords, "d={d} k={k} m={m} P={ps}");
            }
        }
    }
}

#[test]
fn wahl_fixture_and_linearity() {
    // mu_2(x0 x2 - x1^2) = 1/2 (phidd_0 phi_2 + phidd_2 phi_0) - phidd_1 phi_1
    //                    = 1/2 (0 + 2) - 0 = 1, the constant section of O(0)
    let backend = P1Backend::new(2);
    let w = wahl_mu2(&backend, &quadric_d2()).unwrap();
    assert_eq!(w.coords, vec![g("1")]);

    let zero = SymTensor::<GaussianRational>::zero(2, 3);
    assert!(wahl_mu2(&backend, &zero).unwrap().is_zero());

    let backend3 = P1Backend::new(3);
    let space = relation_space(&backend3, 2).unwrap();
    let a = &space.basis[0];
    let b = &space.basis[2];
    let combo = a.scale(&g("2")).add(&b.scale(&g("i")));
    let wc = wahl_mu2(&backend3, &combo).unwrap();
    let wa = wahl_mu2(&backend3, a).unwrap();
    let wb = wahl_mu2(&backend3, b).unwrap();
    let expect: Vec<GaussianRational> = wa
        .coords
        .iter()
        .zip(&wb.coords)
        .map(|(x, y)| &(&g("2") * x) + &(&g("i") * y))
        .collect();
    assert_eq!(wc.coords, expect);
}

#[test]
fn pairing_fixtures() {
    // constant omega: pair(xi_P, 1 dz (x) l) = 1 for any P
    let one = RationalFunction::from_poly(Polynomial::new(vec![g("1")]));
    assert_eq!(pair_schiffer(&g("3"), &one).unwrap(), g("1"));
    // omega = z dz (x) l at P = 2
    let zpoly = RationalFunction::from_poly(Polynomial::new(vec![g("0"), g("1")]));
    assert_eq!(pair_schiffer(&g("2"), &zpoly).unwrap(), g("2"));
    // pairing xi_0 against rho(Q, 0) for the d=2 quadric: the image is the
    // constant -1/2, so the pairing evaluates to -1/2
    let backend = P1Backend::new(2);
    let image = rho_schiffer_exact(&backend, &quadric_d2(), &g("0"), 1).unwrap();
    let omega = RationalFunction::from_poly(Polynomial::new(image.coords.clone()));
    assert_eq!(pair_schiffer(&g("0"), &omega).unwrap(), g("-1/2"));
    // the backend-level pairing agrees
    let xi = backend.schiffer_class(&g("0"), 1).unwrap();
    assert_eq!(backend.pair_xi_class(&xi, &image).unwrap(), g("-1/2"));
}

#[test]
fn symmetry_of_the_pairing_is_exact() {
    // pair(xi_P, rho_Q(xi_P')) = pair(xi_P', rho_Q(xi_P)) for distinct points
    for d in [2usize, 3] {
        let backend = P1Backend::new(d);
        let space = relation_space(&backend, 2).unwrap();
        for q in &space.basis {
            for (a, b) in [("0", "1"), ("1", "-1"), ("2", "1/2")] {
                let xi = backend.schiffer_class(&g(a), 1).unwrap();
                let eta = backend.schiffer_class(&g(b), 1).unwrap();
                let (left, right) = symmetry_pair(&backend, q, &xi, &eta).unwrap();
                assert_eq!(left, right, "d={d} P={a} P'={b}");
            }
        }
    }
}

#[test]
fn order_two_vanishing_and_degree_bound() {
    // the numerator vanishes to order >= 2 at P (exact division succeeds) and
    // the image lands in H^0(O(d-2)) for every Q and sample point, d in 2..=6
    for d in 2..=6usize {
        let backend = P1Backend::new(d);
        let space = relation_space(&backend, 2).unwrap();
        for q in &space.basis {
            for ps in ["0", "1", "-1", "2", "-2", "1/2"] {
                let image = rho_schiffer_exact(&backend, q, &g(ps), 1).unwrap();
                assert_eq!(image.coords.len(), d - 1, "coords live in O(d-2)");
            }
        }
    }
    // a non-relation is rejected by the order-two check
    let backend = P1Backend::new(2);
    let mut bad = SymTensor::zero(2, 3);
    bad.set_coeff(&Multiset::new(vec![0, 0]), g("1"));
    assert!(rho_schiffer_exact(&backend, &bad, &g("0"), 1).is_err());
}

#[test]
fn basis_independence_of_the_image() {
    // install a random-ish exact invertible basis, transform the tensor
    // accordingly, and demand the identical image
    let d = 3usize;
    let monomial = P1Backend::new(d);
    let space = relation_space(&monomial, 2).unwrap();

    // new basis rows: lambda'_i = sum_j m[i][j] z^j
    let rows = [
        ["1", "1", "0", "0"],
        ["0", "1", "-1/2", "0"],
        ["i", "0", "1", "0"],
        ["0", "0", "2", "1"],
    ];
    let basis: Vec<Polynomial> = rows
        .iter()
        .map(|r| Polynomial::new(r.iter().map(|s| g(s)).collect()))
        .collect();
    let primed = P1Backend::with_basis(d, basis.clone()).unwrap();

    // expansion of the monomials in the primed basis: z^j = sum_i inv[j][i] lambda'_i,
    // i.e. inv is the inverse of the matrix whose (j,i) entry is coeff_j(lambda'_i)
    let n = d + 1;
    let mat = ExactMatrix::from_rows(
        (0..n)
            .map(|j| (0..n).map(|i| basis[i].coeff(j)).collect())
            .collect(),
    )
    .unwrap();
    // z^j = sum_i inv[j][i] lambda'_i requires inv[j][i] = (B^{-1})[i][j]
    let inv = mat.inverse().expect("basis change invertible");
    let change_inverse: Vec<Vec<GaussianRational>> = (0..n)
        .map(|j| (0..n).map(|i| inv.at(i, j).clone()).collect())
        .collect();

    for q in &space.basis {
        let q_primed = transform_tensor(q, &change_inverse);
        // sanity: the transformed tensor is still a relation for the primed basis
        assert_eq!(
            gauss_core::relation::relation_residual(&primed, &q_primed).unwrap(),
            0.0
        );
        for ps in ["0", "1", "-1", "3"] {
            let p = g(ps);
            let img_monomial = rho_schiffer_exact(&monomial, q, &p, 1).unwrap();
            let img_primed = rho_schiffer_exact(&primed, &q_primed, &p, 1).unwrap();
            assert_eq!(img_monomial.coords, img_primed.coords, "P = {ps}");
        }
    }
}

#[test]
fn general_class_from_spanning_set_and_linearity() {
    // xi in H^1(O(-d)) as an exact combination of Schiffer classes; rho is
    // linear in xi
    let d = 3usize;
    let backend = P1Backend::new(d);
    let space = relation_space(&backend, 2).unwrap();
    let q = &space.basis[0];
    let points: Vec<GaussianRational> = ["0", "1"].iter().map(|s| g(s)).collect();
    let xis = backend.schiffer_spanning_set(&points, 1).unwrap();
    let combo = P1Class01::linear_combination(&[(g("2"), &xis[0]), (g("-i"), &xis[1])]).unwrap();
    let img = gauss_rho(&backend, q, &combo, 1).unwrap();
    let img0 = gauss_rho(&backend, q, &xis[0], 1).unwrap();
    let img1 = gauss_rho(&backend, q, &xis[1], 1).unwrap();
    let expect: Vec<GaussianRational> = img0
        .coords
        .iter()
        .zip(&img1.coords)
        .map(|(x, y)| &(&g("2") * x) + &(&g("-i") * y))
        .collect();
    assert_eq!(img.coords, expect);

    // degenerate choices are rejected: coincident points can never span
    let bad = backend.schiffer_spanning_set(&[g("1"), g("1")], 1);
    assert!(bad.is_err());
}

#[test]
fn representative_perturbation_leaves_the_class_fixed() {
    // add dbar(chi) for a bump-supported smooth chi = b * (regular rational):
    // the pipeline must return the identical image, exactly
    let d = 3usize;
    let backend = P1Backend::new(d);
    let space = relation_space(&backend, 2).unwrap();
    let q = &space.basis[1];
    let p = g("1");
    let xi = backend.schiffer_class(&p, 1).unwrap();
    // chi = b_{c}(z) * g(z) with g regular on the closed bump at c = -2:
    // dbar chi = g db_c, one extra bump term
    let gfun = RationalFunction::new(
        Polynomial::new(vec![g("1"), g("1/3")]),
        Polynomial::new(vec![g("7"), g("0"), g("1")]), // poles at +-sqrt(-7), far away
    )
    .unwrap();
    let perturbation = P1Class01 {
        twist_m: 1,
        terms: vec![p1_backend::BumpTerm { center: g("-2"), f: gfun }],
    };
    let perturbed = P1Class01::linear_combination(&[
        (g("1"), &xi),
        (g("1"), &perturbation),
    ])
    .unwrap();
    let base = gauss_rho(&backend, q, &xi, 1).unwrap();
    let moved = gauss_rho(&backend, q, &perturbed, 1).unwrap();
    assert_eq!(base.coords, moved.coords);
}

#[test]
fn pair_space_and_rho_pair_match_the_symmetric_theory() {
    // R_2(O(2),O(2)) contains (the symmetrization of) the quadric, and
    // rho_pair on it reproduces gauss_rho
    let e = SplitBundle::line(2);
    let r2 = pair_relation_space(&e, &e).unwrap();
    assert_eq!(r2.dim(), 1);
    let t = &r2.basis[0];
    // normalize: the kernel vector is c * (tuple embedding of the quadric);
    // match scale through the (0,2) slot, whose tuple coefficient is 1/2
    let scale = &g("1/2") / &t[0 * 3 + 2];
    let scaled: Vec<GaussianRational> = t.iter().map(|x| x * &scale).collect();

    let backend = P1Backend::new(2);
    for ps in ["0", "1", "-1", "2"] {
        let p = g(ps);
        let pair_img = rho_pair(&e, &e, &scaled, 0, &p).unwrap();
        let sym_img = rho_schiffer_exact(&backend, &quadric_d2(), &p, 1).unwrap();
        assert_eq!(pair_img.per_summand[0], sym_img.coords, "P = {ps}");
    }

    // zero tensor maps to zero
    let zero = vec![g("0"); 9];
    assert!(rho_pair(&e, &e, &zero, 0, &g("0")).unwrap().is_zero());
}

#[test]
fn schiffer_class_needs_positive_twist_degree() {
    let backend = P1Backend::new(1);
    // m*d = 1 < 2: H^1 vanishes
    assert!(backend.schiffer_class(&g("0"), 1).is_err());
    assert!(backend.schiffer_class(&g("0"), 2).is_ok());
}
