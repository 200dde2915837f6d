//! Product integrals over chains and the product-form Stokes check.
//!
//! `∏_c α = exp(Σ_i a_i ∫_{σ_i} ln α)` for a chain `c = Σ a_i σ_i`. All sums
//! are carried in log space and exponentiated once.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::forms::ProductForm;
use crate::geometry::{boundary, boundary_chain, standard_simplex, Chain, Simplex};
use crate::quad::{integrate_logform_over_simplex, integrate_std_simplex, KahanSum, QuadratureRule};

fn check_chain(alpha: &ProductForm, c: &Chain) -> Result<()> {
    if alpha.dim() != c.dim() || alpha.degree() != c.degree() {
        return Err(Error::ShapeMismatch(format!(
            "degree-{} form in {} variables over a chain of {}-simplices in ℝ^{}",
            alpha.degree(),
            alpha.dim(),
            c.degree(),
            c.dim()
        )));
    }
    Ok(())
}

/// Coefficients must be positive at the vertices and centroid of `s`.
fn check_positive_on(alpha: &ProductForm, s: &Simplex) -> Result<()> {
    for v in s.vertices().iter().chain(std::iter::once(&s.centroid())) {
        alpha.evaluate(v)?;
    }
    Ok(())
}

/// `ln ∏_s α`, with `s` checked for degeneracy and positivity.
pub fn log_product_integral_over_simplex(alpha: &ProductForm, s: &Simplex, rule: &QuadratureRule) -> Result<f64> {
    s.check_nondegenerate()?;
    check_positive_on(alpha, s)?;
    integrate_logform_over_simplex(&alpha.log_map(), s, rule)
}

/// `ln ∏_c α = Σ_i a_i ∫_{σ_i} ln α`.
pub fn log_product_integral_over_chain(alpha: &ProductForm, c: &Chain, rule: &QuadratureRule) -> Result<f64> {
    check_chain(alpha, c)?;
    let mut sum = KahanSum::default();
    for (w, s) in c.terms() {
        sum.add(w * log_product_integral_over_simplex(alpha, s, rule)?);
    }
    Ok(sum.value())
}

/// `∏_c α`; for a 0-form `f` and the chain `(P_1) - (P_0)` this is `f(P_1)/f(P_0)`.
pub fn product_integral_over_chain(alpha: &ProductForm, c: &Chain, rule: &QuadratureRule) -> Result<f64> {
    Ok(log_product_integral_over_chain(alpha, c, rule)?.exp())
}

/// Contribution of one simplex of the chain to a Stokes check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplexBreakdown {
    pub weight: f64,
    pub simplex: String,
    /// `ln ∏_{∂σ} α`
    pub log_boundary: f64,
    /// `ln ∏_σ qα`
    pub log_interior: f64,
    pub log_discrepancy: f64,
}

/// Both sides of `∏_{∂c} α = ∏_c qα`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StokesReport {
    pub lhs: f64,
    pub rhs: f64,
    pub log_lhs: f64,
    pub log_rhs: f64,
    /// `|ln lhs - ln rhs|`
    pub log_discrepancy: f64,
    pub simplices: Vec<SimplexBreakdown>,
}

/// Evaluate both sides of the Stokes identity for `α` over `c`.
///
/// The left side integrates `α` over `boundary_chain(c)`; the right side
/// integrates `q α` over `c`. No threshold is applied.
pub fn stokes_check(alpha: &ProductForm, c: &Chain, rule: &QuadratureRule) -> Result<StokesReport> {
    if alpha.dim() != c.dim() || alpha.degree() + 1 != c.degree() {
        return Err(Error::ShapeMismatch(format!(
            "degree-{} form in {} variables needs a chain of {}-simplices in ℝ^{}, got {}-simplices in ℝ^{}",
            alpha.degree(),
            alpha.dim(),
            alpha.degree() + 1,
            alpha.dim(),
            c.degree(),
            c.dim()
        )));
    }
    let q = alpha.q_diff()?;
    let mut simplices = Vec::with_capacity(c.terms().len());
    for (w, s) in c.terms() {
        s.check_nondegenerate()?;
        let log_boundary = log_product_integral_over_chain(alpha, &boundary(s)?, rule)?;
        let log_interior = log_product_integral_over_simplex(&q, s, rule)?;
        simplices.push(SimplexBreakdown {
            weight: *w,
            simplex: s.to_string(),
            log_boundary,
            log_interior,
            log_discrepancy: (log_boundary - log_interior).abs(),
        });
    }
    let log_lhs = log_product_integral_over_chain(alpha, &boundary_chain(c)?, rule)?;
    let log_rhs = log_product_integral_over_chain(&q, c, rule)?;
    Ok(StokesReport {
        lhs: log_lhs.exp(),
        rhs: log_rhs.exp(),
        log_lhs,
        log_rhs,
        log_discrepancy: (log_lhs - log_rhs).abs(),
        simplices,
    })
}

/// The three quantities compared by [`proof_identity_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProofIdentityReport {
    pub n: usize,
    /// `∏_{∂Δ} η`
    pub lhs: f64,
    /// `∏_Δ qη`
    pub rhs: f64,
    /// `(-1)^n ⊙ ∏_{Δ_n} (A(x, 1 - Σx) / A(x, 0))^{dx}`
    pub closed_form: f64,
    pub log_lhs: f64,
    pub log_rhs: f64,
    pub log_closed_form: f64,
    pub lhs_rhs_discrepancy: f64,
    pub lhs_closed_discrepancy: f64,
    pub rhs_closed_discrepancy: f64,
}

impl ProofIdentityReport {
    pub fn max_discrepancy(&self) -> f64 {
        self.lhs_rhs_discrepancy
            .max(self.lhs_closed_discrepancy)
            .max(self.rhs_closed_discrepancy)
    }
}

/// For `η = (A)^{dx1…dxn}` on the standard `(n+1)`-simplex, compare the
/// boundary product integral, the product integral of `qη`, and the closed form
/// obtained by integrating out `x_{n+1}`.
pub fn proof_identity_check(a: &Expr, n: usize, rule: &QuadratureRule) -> Result<ProofIdentityReport> {
    if a.max_var() > n + 1 {
        return Err(Error::ShapeMismatch(format!(
            "A references x{} but lives in {} variables",
            a.max_var(),
            n + 1
        )));
    }
    let slot: Vec<usize> = (1..=n).collect();
    let eta = ProductForm::monomial(n + 1, &slot, a.clone())?;
    let report = stokes_check(&eta, &Chain::from_simplex(standard_simplex(n + 1)), rule)?;

    let ln_a = a.clone().ln_of();
    let mut top: Vec<Expr> = (1..=n).map(Expr::var).collect();
    let mut bottom = top.clone();
    top.push((1..=n).fold(Expr::one(), |acc, i| acc - Expr::var(i)));
    bottom.push(Expr::zero());
    let integrand = ln_a.substitute(&top) - ln_a.substitute(&bottom);
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let log_closed_form = sign * integrate_std_simplex(&integrand, n, rule)?;

    let (l, r, cf) = (report.log_lhs, report.log_rhs, log_closed_form);
    Ok(ProofIdentityReport {
        n,
        lhs: l.exp(),
        rhs: r.exp(),
        closed_form: cf.exp(),
        log_lhs: l,
        log_rhs: r,
        log_closed_form: cf,
        lhs_rhs_discrepancy: (l - r).abs(),
        lhs_closed_discrepancy: (l - cf).abs(),
        rhs_closed_discrepancy: (r - cf).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Expr {
        Expr::parse(s).unwrap()
    }

    fn rule() -> QuadratureRule {
        QuadratureRule::fixed(16)
    }

    #[test]
    fn zero_form_over_point_chain() {
        let f = ProductForm::scalar(1, p("exp(x1)")).unwrap();
        let c = boundary(&Simplex::parse("[(0),(1)]").unwrap()).unwrap();
        let v = product_integral_over_chain(&f, &c, &rule()).unwrap();
        assert!((v - std::f64::consts::E).abs() < 1e-15);
        let g = ProductForm::scalar(1, p("x1^2 + 1")).unwrap();
        let c = boundary(&Simplex::parse("[(0.5),(2)]").unwrap()).unwrap();
        assert!((product_integral_over_chain(&g, &c, &rule()).unwrap() - 5.0 / 1.25).abs() < 1e-14);
    }

    #[test]
    fn one_form_over_triangle_boundary() {
        let alpha = ProductForm::parse("dx1:exp(x1*x2)", 2).unwrap();
        let c = boundary(&standard_simplex(2)).unwrap();
        let v = log_product_integral_over_chain(&alpha, &c, &rule()).unwrap();
        assert!((v + 1.0 / 6.0).abs() < 1e-14);
        let doubled = log_product_integral_over_chain(&alpha, &c.scale(2.0), &rule()).unwrap();
        assert!((doubled - 2.0 * v).abs() < 1e-15);
    }

    #[test]
    fn positivity_is_checked() {
        let alpha = ProductForm::parse("dx1:x1 - 0.5", 1).unwrap();
        let c = Chain::from_simplex(Simplex::parse("[(0),(1)]").unwrap());
        assert!(matches!(
            product_integral_over_chain(&alpha, &c, &rule()),
            Err(Error::PositivityViolation { .. })
        ));
        let degenerate = Chain::from_simplex(Simplex::parse("[(0),(0)]").unwrap());
        assert!(matches!(
            product_integral_over_chain(&alpha, &degenerate, &rule()),
            Err(Error::DegenerateSimplex { .. })
        ));
    }

    #[test]
    fn stokes_examples() {
        let f = ProductForm::scalar(1, p("exp(x1)")).unwrap();
        let r = stokes_check(&f, &Chain::parse("[(0),(1)]").unwrap(), &rule()).unwrap();
        assert!((r.lhs - std::f64::consts::E).abs() < 1e-15 && r.log_discrepancy < 1e-15);

        let alpha = ProductForm::parse("dx1:exp(x1*x2)", 2).unwrap();
        let r = stokes_check(&alpha, &Chain::from_simplex(standard_simplex(2)), &rule()).unwrap();
        assert!((r.log_lhs + 1.0 / 6.0).abs() < 1e-14);
        assert!((r.log_rhs + 1.0 / 6.0).abs() < 1e-14);

        let constant = ProductForm::parse("dx1:2; dx2:3", 2).unwrap();
        let tri = Chain::parse("[(0.1,0.2),(0.9,0.3),(0.4,0.8)]").unwrap();
        let r = stokes_check(&constant, &tri, &rule()).unwrap();
        assert_eq!(r.rhs, 1.0);
        assert!(r.log_lhs.abs() < 1e-15);
        assert!(stokes_check(&constant, &Chain::parse("[(0),(1)]").unwrap(), &rule()).is_err());
    }

    #[test]
    fn weighted_chain_breakdown() {
        let alpha = ProductForm::parse("dx1:exp(x1^2*x2); dx2:exp(sin(x1))", 2).unwrap();
        let c = Chain::parse("2*[(0,0),(1,0),(0,1)] - 0.5*[(1,0),(1,1),(0,1)]").unwrap();
        let r = stokes_check(&alpha, &c, &rule()).unwrap();
        let bound: f64 = r.simplices.iter().map(|s| s.weight.abs() * s.log_discrepancy).sum();
        assert!(r.log_discrepancy <= bound + 1e-14);
        assert!(r.log_discrepancy < 1e-12);
    }

    #[test]
    fn proof_identity_examples() {
        let r = proof_identity_check(&p("7"), 1, &rule()).unwrap();
        assert_eq!((r.log_lhs, r.log_rhs, r.log_closed_form), (0.0, 0.0, 0.0));
        let r = proof_identity_check(&p("exp(x2)"), 1, &rule()).unwrap();
        assert!((r.log_closed_form + 0.5).abs() < 1e-15);
        assert!(r.max_discrepancy() < 1e-14);
        let r = proof_identity_check(&p("exp(x1*x2)"), 1, &rule()).unwrap();
        // ∫_0^1 -x(1-x) dx
        assert!((r.log_closed_form + 1.0 / 6.0).abs() < 1e-15);
        assert!(r.max_discrepancy() < 1e-14);
        let r = proof_identity_check(&p("exp(x1*x3 + x2^2)"), 2, &rule()).unwrap();
        assert!(r.max_discrepancy() < 1e-12, "{r:?}");
    }
}
