//! Deterministic Gauss–Legendre integration over intervals and standard simplices.
//!
//! Every rule evaluates its integrand only at interior Gauss nodes, so
//! integrable singularities sitting exactly on a cell boundary (such as
//! `ln(sin x)` at `x = 0`) never produce a domain error. Sums are accumulated
//! in ascending node order with compensated summation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::forms::{LogForm, MultiIndex};
use crate::geometry::{affine_map, pullback_log, Simplex};
use crate::scalar::Interval;

pub const DEFAULT_ORDER: usize = 16;
pub const DEFAULT_BUDGET: usize = 1 << 14;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Adaptive cells narrower than this are not bisected further.
pub const MIN_CELL_WIDTH: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    /// One Gauss panel per axis.
    Fixed,
    /// Recursive bisection until each cell's two halves agree with the parent.
    Adaptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    /// Gauss nodes per cell and axis.
    pub order: usize,
    /// Maximum number of cells one adaptive interval integration may create.
    pub budget: usize,
    pub tolerance: f64,
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self {
            kind: RuleKind::Adaptive,
            order: DEFAULT_ORDER,
            budget: DEFAULT_BUDGET,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

impl QuadratureRule {
    pub fn fixed(order: usize) -> Self {
        Self {
            kind: RuleKind::Fixed,
            order,
            ..Self::default()
        }
    }

    pub fn adaptive(order: usize, tolerance: f64, budget: usize) -> Self {
        Self {
            kind: RuleKind::Adaptive,
            order,
            budget,
            tolerance,
        }
    }

    /// Same parameters, adaptive kind.
    pub fn as_adaptive(self) -> Self {
        Self {
            kind: RuleKind::Adaptive,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.order == 0 {
            return Err(Error::InvalidArgument("quadrature order must be at least 1".into()));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "quadrature tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.budget == 0 {
            return Err(Error::InvalidArgument("cell budget must be at least 1".into()));
        }
        Ok(())
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Newton iteration on P_n from the Tricomi initial guess
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let step = p / d;
                x -= step;
                if step.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Apply the rule on `[a, b]`.
    pub fn apply<F>(&self, a: f64, b: f64, f: &mut F) -> Result<f64>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = KahanSum::default();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum.add(w * f(mid + half * x)?);
        }
        Ok(half * sum.value())
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    let dp = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = KahanSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

struct Adaptive<'a, F> {
    gauss: &'a GaussLegendre,
    f: F,
    tolerance: f64,
    budget: usize,
    cells: usize,
}

impl<F> Adaptive<'_, F>
where
    F: FnMut(f64) -> Result<f64>,
{
    fn cell(&mut self, a: f64, b: f64, whole: f64) -> Result<f64> {
        let mid = 0.5 * (a + b);
        let left = self.gauss.apply(a, mid, &mut self.f)?;
        let right = self.gauss.apply(mid, b, &mut self.f)?;
        let halves = left + right;
        if (halves - whole).abs() <= self.tolerance * (1.0 + halves.abs()) {
            return Ok(halves);
        }
        if b - a < MIN_CELL_WIDTH || mid <= a || mid >= b {
            return Err(Error::NotConverged { at: mid });
        }
        self.cells += 2;
        if self.cells > self.budget {
            return Err(Error::BudgetExhausted { budget: self.budget });
        }
        let l = self.cell(a, mid, left)?;
        let r = self.cell(mid, b, right)?;
        Ok(l + r)
    }
}

/// Integrate a closure over `[a, b]`. `a < b` is not required; reversed bounds negate.
pub fn integrate_with<F>(a: f64, b: f64, rule: &QuadratureRule, f: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    rule.validate()?;
    let gauss = GaussLegendre::new(rule.order);
    integrate_with_gauss(a, b, rule, &gauss, f)
}

fn integrate_with_gauss<F>(a: f64, b: f64, rule: &QuadratureRule, gauss: &GaussLegendre, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    match rule.kind {
        RuleKind::Fixed => gauss.apply(a, b, &mut f),
        RuleKind::Adaptive => {
            let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
            let whole = gauss.apply(lo, hi, &mut f)?;
            let mut state = Adaptive {
                gauss,
                f,
                tolerance: rule.tolerance,
                budget: rule.budget,
                cells: 1,
            };
            Ok(sign * state.cell(lo, hi, whole)?)
        }
    }
}

/// `∫_a^b f(x1) dx1` for a one-variable expression.
pub fn integrate_interval(f: &Expr, interval: Interval, rule: &QuadratureRule) -> Result<f64> {
    if f.max_var() > 1 {
        return Err(Error::ShapeMismatch(format!(
            "interval integrand must use only x1, found x{}",
            f.max_var()
        )));
    }
    integrate_with(interval.a(), interval.b(), rule, |x| f.eval(&[x]))
}

/// Integrate over the standard `k`-simplex `{x_i ≥ 0, Σ x_i ≤ 1}` through the
/// collapsed map `x_i = u_i (1 - x_1 - … - x_{i-1})`, `u ∈ [0, 1]^k`.
///
/// For `k = 0` the simplex is a single point and the result is `f()`.
pub fn integrate_std_simplex_with<F>(k: usize, rule: &QuadratureRule, mut f: F) -> Result<f64>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    rule.validate()?;
    if k == 0 {
        return f(&[]);
    }
    let gauss = GaussLegendre::new(rule.order);
    let mut point = vec![0.0; k];
    collapsed_axis(0, 1.0, &mut point, rule, &gauss, &mut f)
}

fn collapsed_axis<F>(
    axis: usize,
    remaining: f64,
    point: &mut [f64],
    rule: &QuadratureRule,
    gauss: &GaussLegendre,
    f: &mut F,
) -> Result<f64>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    let k = point.len();
    integrate_with_gauss(0.0, 1.0, rule, gauss, |u| {
        let x = u * remaining;
        point[axis] = x;
        if axis + 1 == k {
            Ok(remaining * f(point)?)
        } else {
            // inner variables are fixed by the outer loop; copy the prefix so the closure can recurse
            let mut inner = point.to_vec();
            Ok(remaining * collapsed_axis(axis + 1, remaining - x, &mut inner, rule, gauss, f)?)
        }
    })
}

/// `∫_{standard k-simplex} f` for an expression in `x1..xk`.
pub fn integrate_std_simplex(f: &Expr, k: usize, rule: &QuadratureRule) -> Result<f64> {
    if f.max_var() > k {
        return Err(Error::ShapeMismatch(format!(
            "integrand references x{} on a {k}-simplex",
            f.max_var()
        )));
    }
    integrate_std_simplex_with(k, rule, |x| f.eval(x))
}

/// `∫_s ω` for a degree-`k` form on a `k`-simplex: the form is pulled back
/// along the affine parametrisation of `s` and its single top coefficient is
/// integrated over the standard simplex.
pub fn integrate_logform_over_simplex(omega: &LogForm, s: &Simplex, rule: &QuadratureRule) -> Result<f64> {
    if omega.dim() != s.dim() || omega.degree() != s.degree() {
        return Err(Error::ShapeMismatch(format!(
            "degree-{} form in {} variables integrated over a {}-simplex in ℝ^{}",
            omega.degree(),
            omega.dim(),
            s.degree(),
            s.dim()
        )));
    }
    let pulled = pullback_log(&affine_map(s)?, omega)?;
    let k = s.degree();
    let top = pulled.coefficient(&MultiIndex::all(k, k).remove(0));
    integrate_std_simplex(&top, k, rule)
}
