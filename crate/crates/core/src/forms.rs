//! Product forms.
//!
//! A degree-`p` product form in `n` variables is a formal product
//! `∏_S (a_S)^{dx^S}` over sorted index sets `S`. Its coefficients are
//! positive scalar fields. Vector addition `⊕` multiplies coefficients,
//! scalar multiplication `⊙` raises them to a power, and the identity `I` has
//! every coefficient equal to 1. Taking logarithms coefficientwise gives an
//! ordinary differential form ([`LogForm`]); the q differential is
//! `exp ∘ d ∘ ln`.
//!
//! Only sorted index sets are stored. A slot written in another order is
//! normalised by permutation parity: odd parity stores the reciprocal.
//! Coefficients that simplify to the constant 1 are dropped, so an empty
//! table is the identity.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, ParseDiagnostic, Result};
use crate::expr::Expr;

/// Sorted, strictly increasing tuple of 1-based indices in `1..=dim`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    indices: Vec<usize>,
    dim: usize,
}

impl MultiIndex {
    pub fn new(dim: usize, indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "multi-index {indices:?} is not strictly increasing"
            )));
        }
        if indices.iter().any(|&i| i == 0 || i > dim) {
            return Err(Error::ShapeMismatch(format!(
                "multi-index {indices:?} out of range for dimension {dim}"
            )));
        }
        Ok(Self { indices, dim })
    }

    /// The empty index of 0-forms.
    pub fn empty(dim: usize) -> Self {
        Self {
            indices: Vec::new(),
            dim,
        }
    }

    /// Sort an arbitrary index list. Returns the sorted index and the
    /// permutation parity (+1 or -1), or `None` when an index repeats.
    pub fn from_unsorted(dim: usize, indices: &[usize]) -> Result<Option<(Self, i8)>> {
        let mut sorted = indices.to_vec();
        let mut sign = 1i8;
        // insertion sort counting transpositions
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(None);
        }
        Ok(Some((Self::new(dim, sorted)?, sign)))
    }

    /// All `C(dim, degree)` sorted indices, lexicographically.
    pub fn all(dim: usize, degree: usize) -> Vec<Self> {
        fn rec(start: usize, dim: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if left == 0 {
                out.push(MultiIndex {
                    indices: cur.clone(),
                    dim,
                });
                return;
            }
            for i in start..=dim {
                if dim - i + 1 < left {
                    break;
                }
                cur.push(i);
                rec(i + 1, dim, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if degree <= dim {
            rec(1, dim, degree, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn is_disjoint(&self, other: &MultiIndex) -> bool {
        self.indices.iter().all(|i| !other.contains(*i))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            return write!(f, "0");
        }
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, "^")?;
            }
            write!(f, "dx{i}")?;
        }
        Ok(())
    }
}

fn check_shape(dim: usize, degree: usize) -> Result<()> {
    if degree > dim {
        return Err(Error::DegreeOverflow { degree, dim });
    }
    Ok(())
}

fn check_slot(dim: usize, degree: usize, slot: &MultiIndex, coefficient: &Expr) -> Result<()> {
    if slot.dim != dim || slot.degree() != degree {
        return Err(Error::ShapeMismatch(format!(
            "slot {slot} does not belong to a degree-{degree} form in {dim} variables"
        )));
    }
    if coefficient.max_var() > dim {
        return Err(Error::ShapeMismatch(format!(
            "coefficient on {slot} references x{} in dimension {dim}",
            coefficient.max_var()
        )));
    }
    Ok(())
}

fn check_same_shape(a: (usize, usize), b: (usize, usize)) -> Result<()> {
    if a != b {
        return Err(Error::ShapeMismatch(format!(
            "degree-{} form in {} variables vs degree-{} form in {} variables",
            a.1, a.0, b.1, b.0
        )));
    }
    Ok(())
}

/// Product form; absent slots have coefficient 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductForm {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<MultiIndex, Expr>,
}

/// Classical differential form; absent slots have coefficient 0.
#[derive(Debug, Clone, PartialEq)]
pub struct LogForm {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<MultiIndex, Expr>,
}

/// The ⊕ identity `I` of degree `degree` in `dim` variables.
pub fn identity_form(dim: usize, degree: usize) -> Result<ProductForm> {
    check_shape(dim, degree)?;
    Ok(ProductForm {
        dim,
        degree,
        coeffs: BTreeMap::new(),
    })
}

impl ProductForm {
    /// Build from `(slot, coefficient)` pairs; repeated slots multiply.
    pub fn from_terms<I>(dim: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Expr)>,
    {
        let mut form = identity_form(dim, degree)?;
        for (slot, coefficient) in terms {
            check_slot(dim, degree, &slot, &coefficient)?;
            let combined = match form.coeffs.remove(&slot) {
                Some(existing) => existing * coefficient,
                None => coefficient,
            };
            form.set(slot, combined);
        }
        Ok(form)
    }

    /// Single-slot form `(coefficient)^{dx^slot}`; the slot order may be unsorted.
    pub fn monomial(dim: usize, slot: &[usize], coefficient: Expr) -> Result<Self> {
        let degree = slot.len();
        check_shape(dim, degree)?;
        let Some((slot, sign)) = MultiIndex::from_unsorted(dim, slot)? else {
            // dx^i ∧ dx^i = 0: the product form is the identity
            return identity_form(dim, degree);
        };
        let coefficient = if sign < 0 {
            Expr::one() / coefficient
        } else {
            coefficient
        };
        Self::from_terms(dim, degree, [(slot, coefficient)])
    }

    /// 0-form with value `f`.
    pub fn scalar(dim: usize, f: Expr) -> Result<Self> {
        Self::from_terms(dim, 0, [(MultiIndex::empty(dim), f)])
    }

    fn set(&mut self, slot: MultiIndex, coefficient: Expr) {
        let c = coefficient.simplify();
        if c.is_const(1.0) {
            self.coeffs.remove(&slot);
        } else {
            self.coeffs.insert(slot, c);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Stored coefficient, or the constant 1 for an absent slot.
    pub fn coefficient(&self, slot: &MultiIndex) -> Expr {
        self.coeffs.get(slot).cloned().unwrap_or_else(Expr::one)
    }

    /// Stored `(slot, coefficient)` pairs in slot order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Expr)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `α ⊕ β`: coefficientwise product.
    pub fn oplus(&self, other: &ProductForm) -> Result<ProductForm> {
        check_same_shape((self.dim, self.degree), (other.dim, other.degree))?;
        let mut out = self.clone();
        for (slot, b) in &other.coeffs {
            let combined = match out.coeffs.remove(slot) {
                Some(a) => a * b.clone(),
                None => b.clone(),
            };
            out.set(slot.clone(), combined);
        }
        Ok(out)
    }

    /// `a ⊙ α`: every coefficient raised to the power `a`.
    pub fn scalar_odot(&self, a: f64) -> ProductForm {
        let mut out = identity_form(self.dim, self.degree).expect("shape already valid");
        for (slot, c) in &self.coeffs {
            out.set(slot.clone(), c.clone().powf(a));
        }
        out
    }

    /// Coefficientwise reciprocal; equals `(-1) ⊙ α` semantically.
    pub fn inverse(&self) -> ProductForm {
        let mut out = identity_form(self.dim, self.degree).expect("shape already valid");
        for (slot, c) in &self.coeffs {
            out.set(slot.clone(), Expr::one() / c.clone());
        }
        out
    }

    /// Product wedge `α ∧ₚ β`.
    ///
    /// Every pair of stored slots `(S, a)`, `(T, b)` with disjoint `S`, `T`
    /// contributes `(a b)^σ` on `sorted(S ∪ T)`, where `σ = ±1` is the parity
    /// of the permutation sorting the concatenation `S, T` and exponent `-1`
    /// means reciprocal. Contributions to one slot are ⊕-combined. Slots with
    /// coefficient 1 are not stored and so contribute nothing.
    pub fn wedge_p(&self, other: &ProductForm) -> Result<ProductForm> {
        if self.dim != other.dim {
            return Err(Error::ShapeMismatch(format!(
                "wedge of forms in {} and {} variables",
                self.dim, other.dim
            )));
        }
        let degree = self.degree + other.degree;
        check_shape(self.dim, degree)?;
        // numerator and denominator factors per slot, so e.g. a1 b2 / (a2 b1) folds as written
        let mut parts: BTreeMap<MultiIndex, (Vec<Expr>, Vec<Expr>)> = BTreeMap::new();
        for (s, a) in &self.coeffs {
            for (t, b) in &other.coeffs {
                if !s.is_disjoint(t) {
                    continue;
                }
                let concat: Vec<usize> = s.indices.iter().chain(&t.indices).copied().collect();
                let (slot, sign) =
                    MultiIndex::from_unsorted(self.dim, &concat)?.expect("disjoint index sets cannot repeat");
                let entry = parts.entry(slot).or_default();
                let side = if sign > 0 { &mut entry.0 } else { &mut entry.1 };
                side.push(a.clone() * b.clone());
            }
        }
        let mut out = identity_form(self.dim, degree)?;
        for (slot, (num, den)) in parts {
            let product = |factors: Vec<Expr>| factors.into_iter().reduce(|x, y| x * y);
            let coefficient = match (product(num), product(den)) {
                (Some(n), Some(d)) => n / d,
                (Some(n), None) => n,
                (None, Some(d)) => Expr::one() / d,
                (None, None) => continue,
            };
            out.set(slot, coefficient);
        }
        Ok(out)
    }

    /// Coefficientwise logarithm.
    pub fn log_map(&self) -> LogForm {
        let mut out = LogForm::zero(self.dim, self.degree).expect("shape already valid");
        for (slot, c) in &self.coeffs {
            out.set(slot.clone(), c.clone().ln_of());
        }
        out
    }

    /// q differential `exp ∘ d ∘ ln`. For a 0-form `f` this is
    /// `∏_i (q_{x_i} f)^{dx_i}`.
    pub fn q_diff(&self) -> Result<ProductForm> {
        Ok(self.log_map().d()?.exp_map())
    }

    /// Numeric coefficients at `point`, one entry per sorted slot (absent slots report 1).
    pub fn evaluate(&self, point: &[f64]) -> Result<BTreeMap<MultiIndex, f64>> {
        if point.len() != self.dim {
            return Err(Error::ShapeMismatch(format!(
                "point has {} coordinates, form lives in {} variables",
                point.len(),
                self.dim
            )));
        }
        let mut out = BTreeMap::new();
        for slot in MultiIndex::all(self.dim, self.degree) {
            let value = match self.coeffs.get(&slot) {
                Some(c) => c.eval(point)?,
                None => 1.0,
            };
            if value.is_nan() || value <= 0.0 {
                return Err(Error::PositivityViolation {
                    slot: slot.to_string(),
                    value,
                });
            }
            out.insert(slot, value);
        }
        Ok(out)
    }

    /// Parse the notation `"dx1:expr; dx1^dx2:expr"`, or `"0:expr"` for a 0-form.
    ///
    /// The degree is inferred from the slots; an empty string is the degree-0
    /// identity. Slots must be strictly increasing and may not repeat.
    pub fn parse(text: &str, dim: usize) -> Result<ProductForm> {
        let entries = parse_form_entries(text, dim)?;
        let degree = entries.first().map_or(0, |(slot, _)| slot.degree());
        ProductForm::from_terms(dim, degree, entries)
    }
}

impl fmt::Display for ProductForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_table(f, &self.coeffs)
    }
}

impl fmt::Display for LogForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_table(f, &self.coeffs)
    }
}

fn write_table(f: &mut fmt::Formatter<'_>, coeffs: &BTreeMap<MultiIndex, Expr>) -> fmt::Result {
    for (k, (slot, c)) in coeffs.iter().enumerate() {
        if k > 0 {
            write!(f, "; ")?;
        }
        write!(f, "{slot}:{c}")?;
    }
    Ok(())
}

impl LogForm {
    pub fn zero(dim: usize, degree: usize) -> Result<Self> {
        check_shape(dim, degree)?;
        Ok(Self {
            dim,
            degree,
            coeffs: BTreeMap::new(),
        })
    }

    /// Build from `(slot, coefficient)` pairs; repeated slots add.
    pub fn from_terms<I>(dim: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Expr)>,
    {
        let mut form = Self::zero(dim, degree)?;
        for (slot, coefficient) in terms {
            check_slot(dim, degree, &slot, &coefficient)?;
            form.accumulate(slot, coefficient);
        }
        Ok(form)
    }

    fn set(&mut self, slot: MultiIndex, coefficient: Expr) {
        let c = coefficient.simplify();
        if c.is_const(0.0) {
            self.coeffs.remove(&slot);
        } else {
            self.coeffs.insert(slot, c);
        }
    }

    fn accumulate(&mut self, slot: MultiIndex, term: Expr) {
        let combined = match self.coeffs.remove(&slot) {
            Some(existing) => existing + term,
            None => term,
        };
        self.set(slot, combined);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, slot: &MultiIndex) -> Expr {
        self.coeffs.get(slot).cloned().unwrap_or_else(Expr::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Expr)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &LogForm) -> Result<LogForm> {
        check_same_shape((self.dim, self.degree), (other.dim, other.degree))?;
        let mut out = self.clone();
        for (slot, c) in &other.coeffs {
            out.accumulate(slot.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, a: f64) -> LogForm {
        let mut out = LogForm::zero(self.dim, self.degree).expect("shape already valid");
        for (slot, c) in &self.coeffs {
            out.set(slot.clone(), c.clone() * a);
        }
        out
    }

    /// Coefficientwise exponential.
    pub fn exp_map(&self) -> ProductForm {
        let mut out = identity_form(self.dim, self.degree).expect("shape already valid");
        for (slot, c) in &self.coeffs {
            out.set(slot.clone(), c.clone().exp_of());
        }
        out
    }

    /// Classical exterior derivative: `c dx^S` contributes `∂_k c` on
    /// `sorted({k} ∪ S)` with sign `(-1)^{#{s ∈ S : s < k}}`.
    pub fn d(&self) -> Result<LogForm> {
        if self.degree >= self.dim {
            return Err(Error::DegreeOverflow {
                degree: self.degree + 1,
                dim: self.dim,
            });
        }
        let mut out = LogForm::zero(self.dim, self.degree + 1)?;
        for (slot, c) in &self.coeffs {
            for k in 1..=self.dim {
                if slot.contains(k) {
                    continue;
                }
                let partial = c.diff(k);
                if partial.is_const(0.0) {
                    continue;
                }
                let before = slot.indices.iter().filter(|&&s| s < k).count();
                let mut indices = slot.indices.clone();
                indices.insert(before, k);
                let target = MultiIndex { indices, dim: self.dim };
                let term = if before % 2 == 0 { partial } else { -partial };
                out.accumulate(target, term);
            }
        }
        Ok(out)
    }

    /// Numeric coefficients at `point`, one entry per sorted slot (absent slots report 0).
    pub fn evaluate(&self, point: &[f64]) -> Result<BTreeMap<MultiIndex, f64>> {
        if point.len() != self.dim {
            return Err(Error::ShapeMismatch(format!(
                "point has {} coordinates, form lives in {} variables",
                point.len(),
                self.dim
            )));
        }
        let mut out = BTreeMap::new();
        for slot in MultiIndex::all(self.dim, self.degree) {
            let value = match self.coeffs.get(&slot) {
                Some(c) => c.eval(point)?,
                None => 0.0,
            };
            out.insert(slot, value);
        }
        Ok(out)
    }
}

fn parse_slot(text: &str, offset: usize, dim: usize) -> Result<MultiIndex> {
    let t = text.trim();
    let lead = offset + (text.len() - text.trim_start().len());
    if t == "0" {
        return Ok(MultiIndex::empty(dim));
    }
    let mut indices = Vec::new();
    for part in t.split('^') {
        let p = part.trim();
        let index = p
            .strip_prefix("dx")
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|i| *i >= 1)
            .ok_or_else(|| ParseDiagnostic::new(lead, format!("malformed slot '{t}'"), "'0' or dx1^dx2^..."))?;
        indices.push(index);
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ParseDiagnostic::new(
            lead,
            format!("slot '{t}' is not strictly increasing"),
            "sorted slot such as dx1^dx3",
        )
        .into());
    }
    if indices.iter().any(|&i| i > dim) {
        return Err(Error::ShapeMismatch(format!("slot '{t}' exceeds dimension {dim}")));
    }
    MultiIndex::new(dim, indices)
}

fn parse_form_entries(text: &str, dim: usize) -> Result<Vec<(MultiIndex, Expr)>> {
    let mut entries: Vec<(MultiIndex, Expr)> = Vec::new();
    let mut offset = 0;
    for chunk in text.split(';') {
        let chunk_offset = offset;
        offset += chunk.len() + 1;
        if chunk.trim().is_empty() {
            continue;
        }
        let Some(colon) = chunk.find(':') else {
            let lead = chunk_offset + (chunk.len() - chunk.trim_start().len());
            return Err(ParseDiagnostic::new(lead, "missing ':' between slot and coefficient", "slot:expr").into());
        };
        let slot = parse_slot(&chunk[..colon], chunk_offset, dim)?;
        let expr_text = &chunk[colon + 1..];
        let coefficient = Expr::parse(expr_text).map_err(|mut d| {
            d.offset += chunk_offset + colon + 1;
            d
        })?;
        if let Some((first, _)) = entries.first() {
            if first.degree() != slot.degree() {
                return Err(Error::ShapeMismatch(format!(
                    "slots {first} and {slot} have different degrees"
                )));
            }
        }
        if entries.iter().any(|(s, _)| *s == slot) {
            return Err(
                ParseDiagnostic::new(chunk_offset, format!("duplicate slot {slot}"), "each slot at most once").into(),
            );
        }
        entries.push((slot, coefficient));
    }
    Ok(entries)
}

/// Deterministic Halton points in `[0.1, 0.9]^dim`.
pub fn sample_points(dim: usize, count: usize) -> Vec<Vec<f64>> {
    const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
    assert!(
        dim <= PRIMES.len(),
        "sample_points supports up to {} dimensions",
        PRIMES.len()
    );
    (1..=count as u64)
        .map(|i| {
            PRIMES[..dim]
                .iter()
                .map(|&base| {
                    let (mut f, mut r, mut n) = (1.0, 0.0, i);
                    while n > 0 {
                        f /= base as f64;
                        r += f * (n % base) as f64;
                        n /= base;
                    }
                    0.1 + 0.8 * r
                })
                .collect()
        })
        .collect()
}

/// Number of sample points used for semantic form comparisons.
pub const DEFAULT_SAMPLE_COUNT: usize = 32;
pub const DEFAULT_EQUALITY_TOLERANCE: f64 = 1e-10;

/// Largest `|ln a_S(p) - ln b_S(p)|` over all slots and points.
pub fn max_log_difference(a: &ProductForm, b: &ProductForm, points: &[Vec<f64>]) -> Result<f64> {
    log_difference(a, b, points, false)
}

/// As [`max_log_difference`], scaled by `max(1, |ln a|, |ln b|)` per comparison.
pub fn max_scaled_log_difference(a: &ProductForm, b: &ProductForm, points: &[Vec<f64>]) -> Result<f64> {
    log_difference(a, b, points, true)
}

fn log_difference(a: &ProductForm, b: &ProductForm, points: &[Vec<f64>], scaled: bool) -> Result<f64> {
    check_same_shape((a.dim, a.degree), (b.dim, b.degree))?;
    let (la, lb) = (a.log_map(), b.log_map());
    let mut worst = 0.0f64;
    for p in points {
        let va = la.evaluate(p)?;
        let vb = lb.evaluate(p)?;
        for (slot, x) in &va {
            let y = vb[slot];
            let mut diff = (x - y).abs();
            if scaled {
                diff /= 1f64.max(x.abs()).max(y.abs());
            }
            if diff.is_nan() {
                return Ok(f64::NAN);
            }
            worst = worst.max(diff);
        }
    }
    Ok(worst)
}

/// Semantic equality at the default sample points.
pub fn forms_agree(a: &ProductForm, b: &ProductForm) -> Result<bool> {
    let points = sample_points(a.dim, DEFAULT_SAMPLE_COUNT);
    Ok(max_log_difference(a, b, &points)? <= DEFAULT_EQUALITY_TOLERANCE)
}

/// Result of comparing two symbolic constructions numerically.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    /// Largest absolute difference between log coefficients.
    pub max_abs_log_difference: f64,
    pub points_checked: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Compare `α ∧ₚ (β ∧ₚ γ)` with `(α ∧ₚ β) ∧ₚ γ`. Diagnostic only.
pub fn check_associativity(
    alpha: &ProductForm,
    beta: &ProductForm,
    gamma: &ProductForm,
    points: &[Vec<f64>],
) -> Result<ResidualReport> {
    let lhs = alpha.wedge_p(&beta.wedge_p(gamma)?)?;
    let rhs = alpha.wedge_p(beta)?.wedge_p(gamma)?;
    residual(&lhs, &rhs, points)
}

/// Compare `q(α ∧ₚ β)` with `(qα) ∧ₚ β ⊕ (-1)^p ⊙ (α ∧ₚ qβ)`, `p = deg α`. Diagnostic only.
pub fn check_leibniz(alpha: &ProductForm, beta: &ProductForm, points: &[Vec<f64>]) -> Result<ResidualReport> {
    let lhs = alpha.wedge_p(beta)?.q_diff()?;
    let sign = if alpha.degree.is_multiple_of(2) { 1.0 } else { -1.0 };
    let rhs = alpha
        .q_diff()?
        .wedge_p(beta)?
        .oplus(&alpha.wedge_p(&beta.q_diff()?)?.scalar_odot(sign))?;
    residual(&lhs, &rhs, points)
}

fn residual(lhs: &ProductForm, rhs: &ProductForm, points: &[Vec<f64>]) -> Result<ResidualReport> {
    Ok(ResidualReport {
        max_abs_log_difference: max_log_difference(lhs, rhs, points)?,
        points_checked: points.len(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}
