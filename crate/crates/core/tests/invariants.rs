mod common;

use std::f64::consts::{LN_2, PI};

use common::*;
use prodcalc::forms::{max_log_difference, sample_points, LogForm, MultiIndex, ProductForm};
use prodcalc::geometry::{
    affine_map, boundary, boundary_chain, pullback_log, pullback_product, standard_simplex, Chain, Simplex, SmoothMap,
};
use prodcalc::quad::{integrate_interval, integrate_logform_over_simplex, integrate_std_simplex, QuadratureRule};
use prodcalc::scalar::{
    geometric_integral, geometric_integral_signed, sign_profile, volterra_integral, SignProfile,
    DEFAULT_ROOT_TOLERANCE, DEFAULT_SIGN_SAMPLES,
};
use prodcalc::stokes::{log_product_integral_over_chain, stokes_check};
use prodcalc::{Expr, Interval};
use proptest::prelude::*;
use rand::Rng;

fn iv(a: f64, b: f64) -> Interval {
    Interval::new(a, b).unwrap()
}

fn simplex_strategy(k: usize) -> impl Strategy<Value = Simplex> {
    proptest::collection::vec(proptest::collection::vec(-2.0f64..2.0, k), k + 1).prop_map(|v| Simplex::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_of_boundary_is_empty(k in 2usize..=4, seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut c = Chain::empty(k, k);
        for _ in 0..3 {
            let s = random_simplex(&mut r, k, k, 0.0);
            c.push(r.gen_range(-3i32..=3) as f64, s).unwrap();
        }
        prop_assert!(boundary_chain(&boundary_chain(&c).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn swapping_vertices_flips_the_integral(s in simplex_strategy(2), i in 0usize..3, j in 0usize..3) {
        prop_assume!(i != j && s.gram_determinant() > 1e-6);
        let omega = LogForm::from_terms(2, 2, [(MultiIndex::new(2, vec![1, 2]).unwrap(), p("exp(x1) * cos(x2) + x1^2"))]).unwrap();
        let rule = QuadratureRule::fixed(12);
        let mut v = s.vertices().to_vec();
        v.swap(i, j);
        let swapped = Simplex::new(v).unwrap();
        let a = integrate_logform_over_simplex(&omega, &s, &rule).unwrap();
        let b = integrate_logform_over_simplex(&omega, &swapped, &rule).unwrap();
        prop_assert!((a + b).abs() <= 1e-12 * a.abs().max(1e-300), "{} vs {}", a, b);
    }

    #[test]
    fn gauss_is_exact_for_degree_2q_minus_1(q in 1usize..=12, seed in any::<u64>()) {
        let mut r = rng(seed);
        let coeffs: Vec<f64> = (0..2 * q).map(|_| r.gen_range(-1.0..1.0)).collect();
        let f = coeffs.iter().enumerate().fold(Expr::zero(), |acc, (k, c)| acc + Expr::constant(*c) * Expr::var(1).powf(k as f64));
        // exact antiderivative on [0, 1]
        let exact: f64 = coeffs.iter().enumerate().map(|(k, c)| c / (k as f64 + 1.0)).sum();
        let got = integrate_interval(&f, iv(0.0, 1.0), &QuadratureRule::fixed(q)).unwrap();
        let scale: f64 = coeffs.iter().map(|c| c.abs()).sum();
        prop_assert!((got - exact).abs() <= 1e-13 * scale);
    }
}

#[test]
fn adaptive_log_sine_error_is_monotone_in_tolerance() {
    let f = p("ln(abs(sin(x1)))");
    let want = -PI * LN_2;
    let mut last = f64::INFINITY;
    for tol in [1e-4, 5e-5, 2.5e-5, 1.25e-5, 6.25e-6, 1e-6, 1e-8, 1e-10] {
        let rule = QuadratureRule::adaptive(16, tol, 1 << 14);
        let err = (integrate_interval(&f, iv(0.0, PI), &rule).unwrap() - want).abs();
        assert!(err <= last, "tolerance {tol}: error {err} > {last}");
        last = err;
    }
}

#[test]
fn chain_integral_is_additive() {
    let omega = LogForm::from_terms(
        2,
        1,
        [
            (MultiIndex::new(2, vec![1]).unwrap(), p("x1 * x2")),
            (MultiIndex::new(2, vec![2]).unwrap(), p("sin(x1)")),
        ],
    )
    .unwrap();
    let alpha = omega.exp_map();
    let rule = QuadratureRule::fixed(16);
    let c = Chain::parse("2*[(0,0),(1,0)] - 0.5*[(1,0),(1,1)] + 3*[(0.2,0.4),(0.7,0.1)]").unwrap();
    let total = log_product_integral_over_chain(&alpha, &c, &rule).unwrap();
    let parts: f64 = c
        .terms()
        .iter()
        .map(|(w, s)| w * integrate_logform_over_simplex(&omega, s, &rule).unwrap())
        .sum();
    assert!((total - parts).abs() < 1e-15);
}

#[test]
fn affine_pullback_matches_direct_parametrisation() {
    // ∫_s ω for s = [(1,2),(3,1),(0,4)], ω = x1 x2 dx1∧dx2: the pullback coefficient is (x1 x2)∘x(t) · det J
    let s = Simplex::parse("[(1,2),(3,1),(0,4)]").unwrap();
    let omega = LogForm::from_terms(2, 2, [(MultiIndex::new(2, vec![1, 2]).unwrap(), p("x1 * x2"))]).unwrap();
    let rule = QuadratureRule::fixed(8);
    let got = integrate_logform_over_simplex(&omega, &s, &rule).unwrap();
    let det = (3.0 - 1.0) * (4.0 - 2.0) - (0.0 - 1.0) * (1.0 - 2.0);
    let f = p(&format!("(1 + 2*x1 - x2) * (2 - x1 + 2*x2) * {det}"));
    let want = integrate_std_simplex(&f, 2, &rule).unwrap();
    assert!((got - want).abs() < 1e-13);
    let phi = affine_map(&s).unwrap();
    let pulled = pullback_log(&phi, &omega).unwrap();
    assert_eq!(pulled.dim(), 2);
}

fn polynomial_map(r: &mut rand_chacha::ChaCha8Rng, m: usize, n: usize) -> SmoothMap {
    SmoothMap::new(m, (0..n).map(|_| random_poly(r, m, 2)).collect()).unwrap()
}

#[test]
fn pullback_commutes_with_q() {
    let mut r = rng(64);
    let mut worst = 0.0f64;
    for case in 0..20 {
        let (m, n) = (3, 3);
        let degree = case % 2;
        let phi = polynomial_map(&mut r, m, n);
        let alpha = dense_form(&mut r, n, degree, |r| {
            random_poly(r, n, 2).powf(2.0) + Expr::constant(1.0)
        });
        let left = pullback_product(&phi, &alpha).unwrap().q_diff().unwrap();
        let right = pullback_product(&phi, &alpha.q_diff().unwrap()).unwrap();
        let pts = random_points(&mut r, m, 50);
        worst = worst.max(max_log_difference(&left, &right, &pts).unwrap());
    }
    assert!(worst <= 1e-8, "{worst}");
}

#[test]
fn pullback_naturality_reference_case() {
    let alpha = ProductForm::parse("dx1:exp(x1*x2)", 2).unwrap();
    let phi = SmoothMap::new(2, vec![p("x1^2 + x2"), p("x1*x2 - 1")]).unwrap();
    let left = pullback_product(&phi, &alpha).unwrap().q_diff().unwrap();
    let right = pullback_product(&phi, &alpha.q_diff().unwrap()).unwrap();
    assert!(max_log_difference(&left, &right, &sample_points(2, 32)).unwrap() <= 1e-12);
}

#[test]
fn pullback_respects_oplus() {
    let mut r = rng(62);
    let phi = polynomial_map(&mut r, 2, 3);
    let a = random_form(&mut r, 3, 1);
    let b = random_form(&mut r, 3, 1);
    let left = pullback_product(&phi, &a.oplus(&b).unwrap()).unwrap();
    let right = pullback_product(&phi, &a)
        .unwrap()
        .oplus(&pullback_product(&phi, &b).unwrap())
        .unwrap();
    assert!(max_log_difference(&left, &right, &sample_points(2, 32)).unwrap() <= 1e-12);
}

fn wedge_pullback_gap(phi: &SmoothMap, alpha: &ProductForm, gamma: &ProductForm, pts: &[Vec<f64>]) -> f64 {
    let left = pullback_product(phi, &alpha.wedge_p(gamma).unwrap()).unwrap();
    let right = pullback_product(phi, alpha)
        .unwrap()
        .wedge_p(&pullback_product(phi, gamma).unwrap())
        .unwrap();
    max_log_difference(&left, &right, pts).unwrap()
}

#[test]
fn wedge_commutes_with_translations_and_swaps() {
    let alpha = ProductForm::monomial(3, &[1], p("x1 + 2")).unwrap();
    let gamma = ProductForm::monomial(3, &[2, 3], p("exp(x2*x3)")).unwrap();
    let pts = sample_points(3, 32);
    for phi in [
        SmoothMap::new(3, vec![p("x1 + 0.3"), p("x2 - 0.2"), p("x3 + 1")]).unwrap(),
        SmoothMap::new(3, vec![p("x2"), p("x1"), p("x3")]).unwrap(),
    ] {
        assert!(wedge_pullback_gap(&phi, &alpha, &gamma, &pts) <= 1e-10, "{phi:?}");
    }
}

#[test]
fn wedge_does_not_commute_with_cyclic_relabelling() {
    // y = (x2, x3, x1): dy2∧dy3 pulls back to -dx1∧dx3, stored as 1/c, and the wedge then gives c/a instead of ac
    let alpha = ProductForm::monomial(3, &[1], p("x1 + 2")).unwrap();
    let gamma = ProductForm::monomial(3, &[2, 3], p("exp(x2*x3)")).unwrap();
    let phi = SmoothMap::new(3, vec![p("x2"), p("x3"), p("x1")]).unwrap();
    let pts = sample_points(3, 32);
    let want = pts.iter().map(|q| 2.0 * (q[1] + 2.0).ln()).fold(0.0, f64::max);
    assert!((wedge_pullback_gap(&phi, &alpha, &gamma, &pts) - want).abs() < 1e-12);
}

#[test]
fn wedge_does_not_commute_with_scaling_maps() {
    // φ(x) = (2x1, 3x2): φ*(α∧γ) = (ac)^6 but φ*α ∧ φ*γ = a^2 c^3 on dx1^dx2
    let alpha = ProductForm::monomial(2, &[1], p("2")).unwrap();
    let gamma = ProductForm::monomial(2, &[2], p("5")).unwrap();
    let phi = SmoothMap::new(2, vec![p("2*x1"), p("3*x2")]).unwrap();
    let left = pullback_product(&phi, &alpha.wedge_p(&gamma).unwrap()).unwrap();
    let right = pullback_product(&phi, &alpha)
        .unwrap()
        .wedge_p(&pullback_product(&phi, &gamma).unwrap())
        .unwrap();
    let want = (6.0 * 10f64.ln() - (4f64.ln() + 3.0 * 5f64.ln())).abs();
    let got = max_log_difference(&left, &right, &sample_points(2, 8)).unwrap();
    assert!((got - want).abs() < 1e-12, "{got} vs {want}");
}

#[test]
fn stokes_on_weighted_chains_is_bounded_by_parts() {
    let mut r = rng(65);
    let rule = QuadratureRule::fixed(16);
    for _ in 0..10 {
        let alpha = random_exp_poly_form(&mut r, 3, 1);
        let mut c = Chain::empty(3, 2);
        for _ in 0..3 {
            c.push(r.gen_range(-2.0..2.0), random_simplex(&mut r, 3, 2, 1e-3))
                .unwrap();
        }
        let report = stokes_check(&alpha, &c, &rule).unwrap();
        let bound: f64 = report
            .simplices
            .iter()
            .map(|s| s.weight.abs() * s.log_discrepancy)
            .sum();
        assert!(
            report.log_discrepancy <= bound + 1e-12,
            "{} > {}",
            report.log_discrepancy,
            bound
        );
    }
}

#[test]
fn zero_form_stokes_is_the_fundamental_theorem() {
    let rule = QuadratureRule::default();
    for (text, a, b) in [("exp(sin(x1))", 0.3, 1.9), ("x1^2 + 1", -1.0, 2.0), ("5^x1", 0.0, 1.5)] {
        let f = ProductForm::scalar(1, p(text)).unwrap();
        let s = Simplex::new(vec![vec![a], vec![b]]).unwrap();
        let r = stokes_check(&f, &Chain::from_simplex(s), &rule).unwrap();
        let e = p(text);
        let want = e.eval(&[b]).unwrap() / e.eval(&[a]).unwrap();
        assert!(rel(r.lhs, want) <= 1e-10 && rel(r.rhs, want) <= 1e-10, "{text}: {r:?}");
    }
}

#[test]
fn boundary_matches_standard_pattern() {
    let b = boundary(&standard_simplex(3)).unwrap();
    assert_eq!(b.terms().len(), 4);
    let signs: Vec<f64> = b.terms().iter().map(|t| t.0).collect();
    assert_eq!(signs, vec![1.0, -1.0, 1.0, -1.0]);
}

#[test]
fn scalar_bridges() {
    let rule = QuadratureRule::default();
    let i = iv(0.5, 2.5);
    for text in ["x1", "exp(sin(x1))", "x1^2 + 1"] {
        let f = p(text);
        let g = geometric_integral(&f, i, &rule).unwrap();
        // ∏ (1 + ln f dx) = ∏ f^dx
        let v = volterra_integral(&f.clone().ln(), i, &rule).unwrap();
        assert!(rel(v, g) <= 1e-14, "{text}");
        let prof = sign_profile(&f, i, DEFAULT_SIGN_SAMPLES, DEFAULT_ROOT_TOLERANCE).unwrap();
        let s = geometric_integral_signed(&f, i, &rule, &prof).unwrap();
        assert!(rel(s.re, g) <= 1e-13 && s.im.abs() <= 1e-12, "{text}");
    }
    // negative everywhere: e^{iπ(b−a)} ∏|f|^dx
    let f = p("0 - x1^2 - 1");
    let prof = SignProfile::uniform(i, -1).unwrap();
    let s = geometric_integral_signed(&f, i, &rule, &prof).unwrap();
    let m = geometric_integral(&p("x1^2 + 1"), i, &rule).unwrap();
    let want = (PI * 2.0f64).cos() * m;
    assert!(rel(s.re, want) <= 1e-10 && (s.im / m).abs() <= 1e-10);
}
