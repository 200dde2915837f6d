//! Single-variable multiplicative calculus.
//!
//! The product derivative `q f(x) = exp(f'(x) / f(x))` is computed with a
//! symbolic `f'`. Product integrals are computed on the log side,
//! `∏_a^b f(x)^dx = exp(∫_a^b ln f)`, and the literal finite products over a
//! midpoint partition are available as independent oracles.
//!
//! Functions that change sign get a complex value: every negative stretch of
//! length `m` contributes the phase `exp(iπ m)`.

use std::f64::consts::PI;
use std::ops::Mul;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::quad::{self, QuadratureRule};

/// Closed interval `[a, b]` with finite `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a >= b {
            return Err(Error::InvalidArgument(format!(
                "interval needs finite a < b, got [{a}, {b}]"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexScalar {
    pub re: f64,
    pub im: f64,
}

impl ComplexScalar {
    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    /// `exp(log_modulus + i·phase)`.
    pub fn from_polar_log(log_modulus: f64, phase: f64) -> Self {
        let r = log_modulus.exp();
        Self {
            re: r * phase.cos(),
            im: r * phase.sin(),
        }
    }

    /// `exp(log_modulus + iπ·half_turns)`; exact when `half_turns` is a multiple of 1/2.
    pub fn from_log_half_turns(log_modulus: f64, half_turns: f64) -> Self {
        let r = log_modulus.exp();
        let t = half_turns % 2.0;
        let (sin, cos) = if t == 0.0 {
            (0.0, 1.0)
        } else if t.abs() == 1.0 {
            (0.0, -1.0)
        } else if t == 0.5 || t == -1.5 {
            (1.0, 0.0)
        } else if t == -0.5 || t == 1.5 {
            (-1.0, 0.0)
        } else {
            (PI * t).sin_cos()
        };
        Self {
            re: r * cos,
            im: r * sin,
        }
    }

    pub fn norm(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Mul for ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, rhs: Self) -> Self {
        Self {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl std::fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", sig6(self.re), sign, sig6(self.im.abs()))
    }
}

/// Six significant digits, trailing zeros trimmed.
pub(crate) fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=6).contains(&exp) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Where a function is negative on an interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignProfile {
    interval: Interval,
    roots: Vec<f64>,
    signs: Vec<i8>,
    negative_measure: f64,
}

impl SignProfile {
    /// Build from interior roots and per-segment signs (`roots.len() + 1` of them).
    pub fn new(interval: Interval, roots: Vec<f64>, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != roots.len() + 1 {
            return Err(Error::InvalidArgument(format!(
                "{} roots need {} segment signs, got {}",
                roots.len(),
                roots.len() + 1,
                signs.len()
            )));
        }
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidArgument("segment signs must be +1 or -1".into()));
        }
        let mut prev = interval.a;
        for r in &roots {
            if !(*r > prev && *r < interval.b) {
                return Err(Error::InvalidArgument(format!(
                    "roots must be strictly increasing inside ({}, {})",
                    interval.a, interval.b
                )));
            }
            prev = *r;
        }
        if signs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(
                "signs must alternate at each listed root".into(),
            ));
        }
        let mut profile = Self {
            interval,
            roots,
            signs,
            negative_measure: 0.0,
        };
        profile.negative_measure = profile
            .segments()
            .filter(|(_, _, s)| *s < 0)
            .map(|(lo, hi, _)| hi - lo)
            .sum();
        Ok(profile)
    }

    /// Constant-sign profile without roots.
    pub fn uniform(interval: Interval, sign: i8) -> Result<Self> {
        Self::new(interval, Vec::new(), vec![sign])
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Total length of the negative segments.
    pub fn negative_measure(&self) -> f64 {
        self.negative_measure
    }

    /// `(lo, hi, sign)` for each segment, left to right.
    pub fn segments(&self) -> impl Iterator<Item = (f64, f64, i8)> + '_ {
        let bounds: Vec<f64> = std::iter::once(self.interval.a)
            .chain(self.roots.iter().copied())
            .chain(std::iter::once(self.interval.b))
            .collect();
        (0..self.signs.len()).map(move |i| (bounds[i], bounds[i + 1], self.signs[i]))
    }
}

pub const DEFAULT_SIGN_SAMPLES: usize = 1024;
pub const DEFAULT_ROOT_TOLERANCE: f64 = 1e-12;

fn require_single_variable(f: &Expr) -> Result<()> {
    if f.max_var() > 1 {
        return Err(Error::ShapeMismatch(format!(
            "single-variable function expected, found x{}",
            f.max_var()
        )));
    }
    Ok(())
}

/// `exp(f'(x) / f(x))`.
pub fn product_derivative(f: &Expr, x: f64) -> Result<f64> {
    Ok(log_derivative(f, x)?.exp())
}

/// `f'(x) / f(x)`.
pub fn log_derivative(f: &Expr, x: f64) -> Result<f64> {
    require_single_variable(f)?;
    let value = f.eval(&[x])?;
    if value == 0.0 {
        return Err(Error::Domain(format!("f({x}) = 0")));
    }
    Ok(f.diff(1).eval(&[x])? / value)
}

/// `f(c) · (q f(c))^(x - c)`, the multiplicative analogue of the tangent line.
pub fn multiplicative_linearization(f: &Expr, c: f64, x: f64) -> Result<f64> {
    require_single_variable(f)?;
    let fc = f.eval(&[c])?;
    if fc <= 0.0 {
        return Err(Error::Domain(format!("f({c}) = {fc} is not positive")));
    }
    Ok(fc * product_derivative(f, c)?.powf(x - c))
}

/// `∏_a^b f(x)^dx = exp(∫_a^b ln f)`, requiring `f > 0` at every quadrature node.
pub fn geometric_integral(f: &Expr, interval: Interval, rule: &QuadratureRule) -> Result<f64> {
    Ok(log_geometric_integral(f, interval, rule)?.exp())
}

/// `∫_a^b ln f`, the logarithm of [`geometric_integral`].
pub fn log_geometric_integral(f: &Expr, interval: Interval, rule: &QuadratureRule) -> Result<f64> {
    require_single_variable(f)?;
    quad::integrate_with(interval.a, interval.b, rule, |x| {
        let v = f.eval(&[x])?;
        if v <= 0.0 {
            return Err(Error::NonPositiveIntegrand { x, value: v });
        }
        Ok(v.ln())
    })
}

fn midpoints(interval: Interval, n: usize) -> impl Iterator<Item = f64> {
    let width = interval.length() / n as f64;
    (0..n).map(move |k| interval.a + (k as f64 + 0.5) * width)
}

/// Literal `∏ f(c_k)^Δ` over a uniform partition with midpoint tags.
pub fn riemann_product_oracle(f: &Expr, interval: Interval, n: usize) -> Result<f64> {
    require_single_variable(f)?;
    if n == 0 {
        return Err(Error::InvalidArgument("partition count must be at least 1".into()));
    }
    let width = interval.length() / n as f64;
    let mut product = 1.0;
    for c in midpoints(interval, n) {
        let v = f.eval(&[c])?;
        if v <= 0.0 {
            return Err(Error::NonPositiveIntegrand { x: c, value: v });
        }
        product *= v.powf(width);
    }
    Ok(product)
}

/// `∏_a^b (1 + g dx) = exp(∫_a^b g)`.
pub fn volterra_integral(g: &Expr, interval: Interval, rule: &QuadratureRule) -> Result<f64> {
    require_single_variable(g)?;
    Ok(quad::integrate_interval(g, interval, rule)?.exp())
}

/// Literal `∏ (1 + g(c_k) Δ)` over a uniform midpoint partition.
pub fn volterra_riemann_oracle(g: &Expr, interval: Interval, n: usize) -> Result<f64> {
    require_single_variable(g)?;
    if n == 0 {
        return Err(Error::InvalidArgument("partition count must be at least 1".into()));
    }
    let width = interval.length() / n as f64;
    let mut product = 1.0;
    for c in midpoints(interval, n) {
        let factor = 1.0 + g.eval(&[c])? * width;
        if factor <= 0.0 {
            return Err(Error::DegeneratePartition { at: c, factor });
        }
        product *= factor;
    }
    Ok(product)
}

fn sign_of(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Detect the sign structure of `f` on `interval`.
///
/// `f` is sampled on `samples` uniformly spaced points including both ends;
/// every sign change between neighbouring samples is refined by bisection to
/// a bracket of width `<= tol`. Two consecutive exact zeros are rejected as a
/// zero plateau. Pairs of roots closer than the sample spacing can be missed.
pub fn sign_profile(f: &Expr, interval: Interval, samples: usize, tol: f64) -> Result<SignProfile> {
    require_single_variable(f)?;
    if samples < 2 {
        return Err(Error::InvalidArgument("sign detection needs at least 2 samples".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument("root tolerance must be positive".into()));
    }
    let step = interval.length() / (samples - 1) as f64;
    let grid: Vec<f64> = (0..samples)
        .map(|j| {
            if j + 1 == samples {
                interval.b
            } else {
                interval.a + j as f64 * step
            }
        })
        .collect();
    let values = grid.iter().map(|x| f.eval(&[*x])).collect::<Result<Vec<_>>>()?;
    if let Some(j) = values.windows(2).position(|w| w[0] == 0.0 && w[1] == 0.0) {
        return Err(Error::DegenerateSign(format!(
            "f vanishes on [{}, {}]",
            grid[j],
            grid[j + 1]
        )));
    }

    let mut roots = Vec::new();
    let mut signs = Vec::new();
    // last nonzero sample seen, and its position
    let mut current: Option<(f64, i8)> = None;
    for (x, v) in grid.iter().zip(&values) {
        let s = sign_of(*v);
        if s == 0 {
            continue;
        }
        match current {
            None => signs.push(s),
            Some((prev_x, prev_s)) if prev_s != s => {
                let root = if let Some(z) = exact_zero_between(&grid, &values, prev_x, *x) {
                    z
                } else {
                    bisect_root(f, prev_x, *x, prev_s, tol)?
                };
                if root > interval.a && root < interval.b && roots.last().is_none_or(|r| root > *r) {
                    roots.push(root);
                    signs.push(s);
                }
            }
            _ => {}
        }
        current = Some((*x, s));
    }
    if signs.is_empty() {
        return Err(Error::DegenerateSign("f vanishes at every sample".into()));
    }
    SignProfile::new(interval, roots, signs)
}

fn exact_zero_between(grid: &[f64], values: &[f64], lo: f64, hi: f64) -> Option<f64> {
    grid.iter()
        .zip(values)
        .find(|(x, v)| **x > lo && **x < hi && **v == 0.0)
        .map(|(x, _)| *x)
}

fn bisect_root(f: &Expr, mut lo: f64, mut hi: f64, lo_sign: i8, tol: f64) -> Result<f64> {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = sign_of(f.eval(&[mid])?);
        if s == 0 {
            return Ok(mid);
        }
        if s == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `(∫_a^b ln|f|, m)`: the log-modulus and the phase in half-turns.
fn signed_log_parts(f: &Expr, rule: &QuadratureRule, profile: &SignProfile) -> Result<(f64, f64)> {
    require_single_variable(f)?;
    let rule = rule.as_adaptive();
    let mut total = quad::KahanSum::default();
    for (lo, hi, _) in profile.segments() {
        let part = quad::integrate_with(lo, hi, &rule, |x| {
            let v = f.eval(&[x])?.abs();
            if v == 0.0 {
                return Err(Error::NonIntegrableSingularity(format!(
                    "f({x}) = 0 at a quadrature node"
                )));
            }
            Ok(v.ln())
        })
        .map_err(|e| match e {
            Error::BudgetExhausted { .. } | Error::NotConverged { .. } => {
                Error::NonIntegrableSingularity(format!("ln|f| did not converge on [{lo}, {hi}]: {e}"))
            }
            other => other,
        })?;
        total.add(part);
    }
    Ok((total.value(), profile.negative_measure()))
}

/// `exp(iπ m) · exp(∫_a^b ln|f|)` with `m` the negative measure of `profile`.
///
/// Segments are integrated adaptively regardless of `rule.kind`, because
/// `ln|f|` has logarithmic singularities at the roots that bound them.
pub fn geometric_integral_signed(
    f: &Expr,
    interval: Interval,
    rule: &QuadratureRule,
    profile: &SignProfile,
) -> Result<ComplexScalar> {
    check_profile_interval(interval, profile)?;
    let (log_modulus, turns) = signed_log_parts(f, rule, profile)?;
    Ok(ComplexScalar::from_log_half_turns(log_modulus, turns))
}

/// `exp((∫ ln|f| + iπ m) / (b - a))`; the phase is not reduced modulo 2π.
pub fn geometric_mean(
    f: &Expr,
    interval: Interval,
    rule: &QuadratureRule,
    profile: &SignProfile,
) -> Result<ComplexScalar> {
    check_profile_interval(interval, profile)?;
    let (log_modulus, turns) = signed_log_parts(f, rule, profile)?;
    let len = interval.length();
    Ok(ComplexScalar::from_log_half_turns(log_modulus / len, turns / len))
}

fn check_profile_interval(interval: Interval, profile: &SignProfile) -> Result<()> {
    if profile.interval() != interval {
        return Err(Error::InvalidArgument(format!(
            "sign profile covers [{}, {}] but the integral is over [{}, {}]",
            profile.interval().a,
            profile.interval().b,
            interval.a,
            interval.b
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{E, FRAC_PI_2};

    use super::*;

    fn p(s: &str) -> Expr {
        Expr::parse(s).unwrap()
    }

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    /// Forward ratio `(f(x+δ)/f(x))^(1/δ)`; first-order accurate in δ.
    fn ratio_oracle(f: &Expr, x: f64, delta: f64) -> f64 {
        (f.eval(&[x + delta]).unwrap() / f.eval(&[x]).unwrap()).powf(1.0 / delta)
    }

    #[test]
    fn interval_validation() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn product_derivative_examples() {
        assert!(rel(product_derivative(&p("exp(x1^2)"), 1.0).unwrap(), E * E) < 1e-15);
        for x in [-2.0, 0.0, 3.7] {
            assert!(rel(product_derivative(&p("5^x1"), x).unwrap(), 5.0) < 1e-14);
        }
        let got = product_derivative(&p("x1"), 2.0).unwrap();
        assert!(rel(got, 0.5f64.exp()) < 1e-15);
        assert!(rel(got, ratio_oracle(&p("x1"), 2.0, 1e-6)) < 1e-6);
        assert!(matches!(product_derivative(&p("x1"), 0.0), Err(Error::Domain(_))));
        // negative values are fine for the derivative
        assert!(rel(product_derivative(&p("0 - x1^2"), 2.0).unwrap(), 1f64.exp()) < 1e-15);
    }

    #[test]
    fn linearization_examples() {
        let f = p("exp(x1^2)");
        assert!(rel(multiplicative_linearization(&f, 1.0, 1.1).unwrap(), 1.2f64.exp()) < 1e-14);
        assert_eq!(multiplicative_linearization(&f, 1.0, 1.0).unwrap(), E);
        assert!(rel(multiplicative_linearization(&p("5^x1"), 0.0, 2.0).unwrap(), 25.0) < 1e-14);
        assert!(matches!(
            multiplicative_linearization(&p("x1"), -1.0, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn geometric_integral_examples() {
        let rule = QuadratureRule::default();
        assert!(
            rel(
                geometric_integral(&p("exp(x1)"), iv(0.0, 1.0), &rule).unwrap(),
                0.5f64.exp()
            ) < 1e-14
        );
        assert!(rel(geometric_integral(&p("e"), iv(-1.0, 2.5), &rule).unwrap(), 3.5f64.exp()) < 1e-14);
        let want = 27.0 * (-2.0f64).exp();
        assert!(rel(geometric_integral(&p("x1"), iv(1.0, 3.0), &rule).unwrap(), want) < 1e-14);
        let err = geometric_integral(&p("x1 - 2"), iv(1.0, 3.0), &rule).unwrap_err();
        assert!(matches!(err, Error::NonPositiveIntegrand { .. }));
    }

    #[test]
    fn riemann_oracle_examples() {
        assert!(rel(riemann_product_oracle(&p("e"), iv(0.0, 2.0), 7).unwrap(), 2f64.exp()) < 1e-15);
        assert_eq!(riemann_product_oracle(&p("x1"), iv(1.0, 3.0), 1).unwrap(), 4.0);
        let v = riemann_product_oracle(&p("x1"), iv(1.0, 3.0), 100_000).unwrap();
        assert!(rel(v, 27.0 * (-2.0f64).exp()) < 1e-6);
        assert!(riemann_product_oracle(&p("x1"), iv(1.0, 3.0), 0).is_err());
    }

    #[test]
    fn volterra_examples() {
        let rule = QuadratureRule::default();
        assert!(rel(volterra_integral(&p("1.5"), iv(0.0, 2.0), &rule).unwrap(), 3f64.exp()) < 1e-14);
        assert!(rel(volterra_integral(&p("cos(x1)"), iv(0.0, FRAC_PI_2), &rule).unwrap(), E) < 1e-14);
        let bridge = volterra_integral(&p("ln(exp(x1))"), iv(0.0, 1.0), &rule).unwrap();
        let direct = geometric_integral(&p("exp(x1)"), iv(0.0, 1.0), &rule).unwrap();
        assert!(rel(bridge, direct) < 1e-14);

        assert_eq!(volterra_riemann_oracle(&p("0"), iv(0.0, 1.0), 13).unwrap(), 1.0);
        let v = volterra_riemann_oracle(&p("cos(x1)"), iv(0.0, FRAC_PI_2), 100_000).unwrap();
        assert!(rel(v, E) < 1e-4);
        assert!(matches!(
            volterra_riemann_oracle(&p("-1000"), iv(0.0, 1.0), 10),
            Err(Error::DegeneratePartition { .. })
        ));
    }

    #[test]
    fn log_derivative_examples() {
        assert!(rel(log_derivative(&p("x1^2"), 2.0).unwrap(), 1.0) < 1e-15);
        assert!(rel(log_derivative(&p("exp(3*x1)"), -0.4).unwrap(), 3.0) < 1e-15);
        let f = p("x1^2 + 1");
        assert!(
            rel(
                product_derivative(&f, 1.0).unwrap().ln(),
                log_derivative(&f, 1.0).unwrap()
            ) < 1e-15
        );
        assert_eq!(log_derivative(&f, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn sign_profile_of_sine_over_full_period() {
        let prof = sign_profile(&p("sin(x1)"), iv(0.0, 2.0 * PI), 1000, 1e-12).unwrap();
        assert_eq!(prof.roots().len(), 1);
        assert!((prof.roots()[0] - PI).abs() < 1e-11);
        assert_eq!(prof.signs(), &[1, -1]);
        assert!((prof.negative_measure() - PI).abs() < 1e-11);
    }

    #[test]
    fn sign_profile_constant_cases() {
        let neg = sign_profile(&p("-3"), iv(0.0, 1.0), 16, 1e-12).unwrap();
        assert!(neg.roots().is_empty());
        assert_eq!(neg.signs(), &[-1]);
        assert_eq!(neg.negative_measure(), 1.0);
        let pos = sign_profile(&p("x1^2 + 1"), iv(-1.0, 1.0), 16, 1e-12).unwrap();
        assert_eq!(pos.signs(), &[1]);
        assert_eq!(pos.negative_measure(), 0.0);
    }

    #[test]
    fn sign_profile_degenerate_and_exact_zeros() {
        assert!(matches!(
            sign_profile(&p("0 * x1"), iv(0.0, 1.0), 8, 1e-12),
            Err(Error::DegenerateSign(_))
        ));
        // exact interior zero on a grid point
        let prof = sign_profile(&p("x1 - 0.5"), iv(0.0, 1.0), 11, 1e-12).unwrap();
        assert_eq!(prof.roots(), &[0.5]);
        assert_eq!(prof.signs(), &[-1, 1]);
        // touching zero without a sign change is not a root
        let prof = sign_profile(&p("(x1 - 0.5)^2"), iv(0.0, 1.0), 11, 1e-12).unwrap();
        assert!(prof.roots().is_empty());
    }

    #[test]
    fn signed_constant_closed_forms() {
        let rule = QuadratureRule::default();
        let f = p("0 - 3");
        let i01 = iv(0.0, 1.0);
        let v = geometric_integral_signed(&f, i01, &rule, &SignProfile::uniform(i01, -1).unwrap()).unwrap();
        assert!((v.re + 3.0).abs() < 3e-10 && v.im.abs() < 3e-10);
        let i02 = iv(0.0, 2.0);
        let v = geometric_integral_signed(&f, i02, &rule, &SignProfile::uniform(i02, -1).unwrap()).unwrap();
        assert!((v.re - 9.0).abs() < 9e-10 && v.im == 0.0);
    }

    #[test]
    fn half_turn_phases_are_exact() {
        assert_eq!(
            ComplexScalar::from_log_half_turns(0.0, 2.0),
            ComplexScalar::new(1.0, 0.0)
        );
        assert_eq!(
            ComplexScalar::from_log_half_turns(0.0, 3.0),
            ComplexScalar::new(-1.0, 0.0)
        );
        assert_eq!(
            ComplexScalar::from_log_half_turns(0.0, 0.5),
            ComplexScalar::new(0.0, 1.0)
        );
        assert_eq!(
            ComplexScalar::from_log_half_turns(0.0, -0.5),
            ComplexScalar::new(0.0, -1.0)
        );
        let z = ComplexScalar::from_log_half_turns(1.0, 0.25);
        let w = ComplexScalar::from_polar_log(1.0, PI / 4.0);
        assert!((z.re - w.re).abs() < 1e-15 && (z.im - w.im).abs() < 1e-15);
    }

    #[test]
    fn signed_matches_unsigned_for_positive_functions() {
        let rule = QuadratureRule::default();
        let f = p("x1^2 + 1");
        let i = iv(-1.0, 2.0);
        let prof = sign_profile(&f, i, DEFAULT_SIGN_SAMPLES, DEFAULT_ROOT_TOLERANCE).unwrap();
        let s = geometric_integral_signed(&f, i, &rule, &prof).unwrap();
        let u = geometric_integral(&f, i, &rule).unwrap();
        assert!(rel(s.re, u) < 1e-13);
        assert!(s.im.abs() <= 1e-12);
    }

    #[test]
    fn sine_geometric_mean_is_half_i() {
        let rule = QuadratureRule::default();
        let i = iv(0.0, 2.0 * PI);
        let prof = sign_profile(&p("sin(x1)"), i, DEFAULT_SIGN_SAMPLES, DEFAULT_ROOT_TOLERANCE).unwrap();
        let m = geometric_mean(&p("sin(x1)"), i, &rule, &prof).unwrap();
        assert!(m.re.abs() < 1e-6 && (m.im - 0.5).abs() < 1e-6, "{m}");
        let v = geometric_integral_signed(&p("sin(x1)"), i, &rule, &prof).unwrap();
        let want = ComplexScalar::from_polar_log(-2.0 * PI * 2f64.ln(), PI * PI);
        assert!((v.re - want.re).abs() < 1e-9 && (v.im - want.im).abs() < 1e-9);
    }

    #[test]
    fn geometric_mean_examples() {
        let rule = QuadratureRule::default();
        for (a, b) in [(0.0, 1.0), (-2.0, 5.0), (1.0, 1.5)] {
            let i = iv(a, b);
            let m = geometric_mean(&p("-3"), i, &rule, &SignProfile::uniform(i, -1).unwrap()).unwrap();
            assert!((m.re + 3.0).abs() < 1e-12 && m.im.abs() < 1e-12, "{m}");
        }
        let i = iv(1.0, 3.0);
        let m = geometric_mean(&p("x1"), i, &rule, &SignProfile::uniform(i, 1).unwrap()).unwrap();
        assert!(rel(m.re, 3.0 * 3f64.sqrt() / E) < 1e-13);
    }

    #[test]
    fn profile_must_match_interval() {
        let rule = QuadratureRule::default();
        let prof = SignProfile::uniform(iv(0.0, 1.0), 1).unwrap();
        assert!(geometric_mean(&p("x1"), iv(0.0, 2.0), &rule, &prof).is_err());
    }

    #[test]
    fn profile_validation() {
        let i = iv(0.0, 1.0);
        assert!(SignProfile::new(i, vec![0.5], vec![1]).is_err());
        assert!(SignProfile::new(i, vec![0.5], vec![1, 1]).is_err());
        assert!(SignProfile::new(i, vec![1.5], vec![1, -1]).is_err());
        assert!(SignProfile::new(i, vec![0.6, 0.4], vec![1, -1, 1]).is_err());
        let ok = SignProfile::new(i, vec![0.25, 0.75], vec![-1, 1, -1]).unwrap();
        assert_eq!(ok.negative_measure(), 0.5);
    }

    #[test]
    fn complex_display() {
        assert_eq!(ComplexScalar::new(0.0, 0.5).to_string(), "0+0.5i");
        assert_eq!(ComplexScalar::new(-3.0, -1.0 / 3.0).to_string(), "-3-0.333333i");
        assert_eq!(sig6(1.911304082), "1.9113");
        assert_eq!(sig6(7.38905609893065), "7.38906");
    }
}
