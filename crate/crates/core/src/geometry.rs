//! Simplices, chains, boundaries and pullbacks.
//!
//! A [`Simplex`] is an ordered vertex list; the order is its orientation.
//! A [`Chain`] is a weighted formal sum of simplices of one degree, and
//! [`boundary`] is the alternating face sum. A [`SmoothMap`] carries forms
//! back from its codomain via symbolic Jacobian minors.

use std::fmt;

use crate::error::{Error, ParseDiagnostic, Result};
use crate::expr::Expr;
use crate::forms::{LogForm, MultiIndex, ProductForm};

/// Gram determinants at or below this value mark a simplex as degenerate.
pub const GRAM_TOLERANCE: f64 = 1e-12;

/// Ordered list of `k + 1` points in `ℝ^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    vertices: Vec<Vec<f64>>,
}

impl Simplex {
    pub fn new(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidArgument("a simplex needs at least one vertex".into()));
        };
        let m = first.len();
        if vertices.iter().any(|v| v.len() != m) {
            return Err(Error::ShapeMismatch(
                "simplex vertices have different dimensions".into(),
            ));
        }
        if vertices.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("simplex vertices must be finite".into()));
        }
        Ok(Self { vertices })
    }

    /// Parse a literal such as `[(0,0),(1,0),(0,1)]`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cursor = Cursor::new(text);
        let s = cursor.simplex()?;
        cursor.skip_ws();
        if !cursor.at_end() {
            return Err(cursor.error("unexpected trailing input", "end of simplex literal"));
        }
        Ok(s)
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// Ambient dimension `m`.
    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    /// Simplex degree `k` (one less than the vertex count).
    pub fn degree(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Edge vectors `P_i - P_0`.
    pub fn edges(&self) -> Vec<Vec<f64>> {
        let p0 = &self.vertices[0];
        self.vertices[1..]
            .iter()
            .map(|p| p.iter().zip(p0).map(|(x, y)| x - y).collect())
            .collect()
    }

    /// Determinant of the Gram matrix of the edge vectors (1 for a point).
    pub fn gram_determinant(&self) -> f64 {
        let e = self.edges();
        let gram: Vec<Vec<f64>> = e
            .iter()
            .map(|u| e.iter().map(|v| u.iter().zip(v).map(|(a, b)| a * b).sum()).collect())
            .collect();
        determinant(gram)
    }

    pub fn check_nondegenerate(&self) -> Result<()> {
        let gram = self.gram_determinant();
        if gram.is_nan() || gram <= GRAM_TOLERANCE {
            return Err(Error::DegenerateSimplex { gram });
        }
        Ok(())
    }

    /// Vertex average.
    pub fn centroid(&self) -> Vec<f64> {
        let n = self.vertices.len() as f64;
        (0..self.dim())
            .map(|i| self.vertices.iter().map(|v| v[i]).sum::<f64>() / n)
            .collect()
    }

    /// Copy with vertex `i` removed.
    pub fn face(&self, i: usize) -> Simplex {
        let mut vertices = self.vertices.clone();
        vertices.remove(i);
        Simplex { vertices }
    }

    fn same_vertices(&self, other: &Simplex) -> bool {
        self.vertices.len() == other.vertices.len()
            && self
                .vertices
                .iter()
                .flatten()
                .zip(other.vertices.iter().flatten())
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for (j, x) in v.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}

/// Vertices `0, e_1, …, e_k` in `ℝ^k`.
pub fn standard_simplex(k: usize) -> Simplex {
    let mut vertices = vec![vec![0.0; k]];
    for i in 0..k {
        let mut v = vec![0.0; k];
        v[i] = 1.0;
        vertices.push(v);
    }
    Simplex { vertices }
}

/// Weighted sum of simplices sharing ambient dimension and degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    dim: usize,
    degree: usize,
    terms: Vec<(f64, Simplex)>,
}

impl Chain {
    pub fn empty(dim: usize, degree: usize) -> Self {
        Self {
            dim,
            degree,
            terms: Vec::new(),
        }
    }

    pub fn from_simplex(s: Simplex) -> Self {
        let mut c = Self::empty(s.dim(), s.degree());
        c.terms.push((1.0, s));
        c
    }

    /// Parse `w1*S1 + w2*S2 - S3`, each `S` a simplex literal.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cursor = Cursor::new(text);
        let chain = cursor.chain()?;
        Ok(chain)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(f64, Simplex)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `weight · s`, merging with a bitwise-identical vertex list.
    pub fn push(&mut self, weight: f64, s: Simplex) -> Result<()> {
        if s.dim() != self.dim || s.degree() != self.degree {
            return Err(Error::ShapeMismatch(format!(
                "{}-simplex in ℝ^{} added to a chain of {}-simplices in ℝ^{}",
                s.degree(),
                s.dim(),
                self.degree,
                self.dim
            )));
        }
        if !weight.is_finite() {
            return Err(Error::InvalidArgument("chain weights must be finite".into()));
        }
        if let Some(pos) = self.terms.iter().position(|(_, t)| t.same_vertices(&s)) {
            self.terms[pos].0 += weight;
            if self.terms[pos].0 == 0.0 {
                self.terms.remove(pos);
            }
        } else if weight != 0.0 {
            self.terms.push((weight, s));
        }
        Ok(())
    }

    pub fn add(&self, other: &Chain) -> Result<Chain> {
        let mut out = self.clone();
        for (w, s) in &other.terms {
            out.push(*w, s.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, a: f64) -> Chain {
        let mut out = Chain::empty(self.dim, self.degree);
        if a != 0.0 {
            out.terms = self.terms.iter().map(|(w, s)| (w * a, s.clone())).collect();
        }
        out
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, s)) in self.terms.iter().enumerate() {
            match (i, *w < 0.0) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            if w.abs() != 1.0 {
                write!(f, "{}*", w.abs())?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// `Σ_i (-1)^i (P_0, …, P̂_i, …, P_k)`.
pub fn boundary(s: &Simplex) -> Result<Chain> {
    if s.degree() == 0 {
        return Err(Error::DegreeUnderflow);
    }
    let mut out = Chain::empty(s.dim(), s.degree() - 1);
    for i in 0..=s.degree() {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        out.push(sign, s.face(i))?;
    }
    Ok(out)
}

/// Linear extension of [`boundary`] over chain weights.
pub fn boundary_chain(c: &Chain) -> Result<Chain> {
    if c.degree == 0 {
        return Err(Error::DegreeUnderflow);
    }
    let mut out = Chain::empty(c.dim, c.degree - 1);
    for (w, s) in &c.terms {
        for (sign, face) in boundary(s)?.terms {
            out.push(w * sign, face)?;
        }
    }
    Ok(out)
}

/// Map `ℝ^m → ℝ^n` given by `n` component expressions in `x1..xm`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothMap {
    domain: usize,
    components: Vec<Expr>,
}

impl SmoothMap {
    pub fn new(domain: usize, components: Vec<Expr>) -> Result<Self> {
        if let Some(c) = components.iter().find(|c| c.max_var() > domain) {
            return Err(Error::ShapeMismatch(format!(
                "map component {c} references x{} but the domain has dimension {domain}",
                c.max_var()
            )));
        }
        Ok(Self { domain, components })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            domain: n,
            components: (1..=n).map(Expr::var).collect(),
        }
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn codomain(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    pub fn eval(&self, point: &[f64]) -> Result<Vec<f64>> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    /// Symbolic Jacobian, `J[i][j] = ∂y_{i+1}/∂x_{j+1}`.
    pub fn jacobian(&self) -> Vec<Vec<Expr>> {
        self.components
            .iter()
            .map(|c| (1..=self.domain).map(|j| c.diff(j)).collect())
            .collect()
    }
}

/// Parametrisation `x(t) = P_0 + Σ t_i (P_i - P_0)` of `s` by the standard simplex.
pub fn affine_map(s: &Simplex) -> Result<SmoothMap> {
    s.check_nondegenerate()?;
    let p0 = &s.vertices[0];
    let edges = s.edges();
    let components = (0..s.dim())
        .map(|i| {
            let mut c = Expr::constant(p0[i]);
            for (j, e) in edges.iter().enumerate() {
                if e[i] != 0.0 {
                    c = c + Expr::constant(e[i]) * Expr::var(j + 1);
                }
            }
            c.simplify()
        })
        .collect();
    SmoothMap::new(s.degree(), components)
}

/// Classical pullback: the coefficient on domain slot `L` is
/// `Σ_K a_K(φ(x)) · det(∂y^K/∂x^L)`.
pub fn pullback_log(phi: &SmoothMap, omega: &LogForm) -> Result<LogForm> {
    if omega.dim() != phi.codomain() {
        return Err(Error::ShapeMismatch(format!(
            "form in {} variables pulled back along a map into ℝ^{}",
            omega.dim(),
            phi.codomain()
        )));
    }
    let p = omega.degree();
    if p > phi.domain {
        return Err(Error::ShapeMismatch(format!(
            "degree-{p} form pulled back to a {}-dimensional domain",
            phi.domain
        )));
    }
    let jac = phi.jacobian();
    let mut terms = Vec::new();
    for (k, a) in omega.terms() {
        let a = a.substitute(&phi.components);
        for l in MultiIndex::all(phi.domain, p) {
            let minor: Vec<Vec<Expr>> = k
                .indices()
                .iter()
                .map(|&i| l.indices().iter().map(|&j| jac[i - 1][j - 1].clone()).collect())
                .collect();
            let det = symbolic_determinant(&minor);
            if det.is_const(0.0) {
                continue;
            }
            terms.push((l, a.clone() * det));
        }
    }
    LogForm::from_terms(phi.domain, p, terms)
}

/// `exp ∘ pullback_log ∘ ln`.
pub fn pullback_product(phi: &SmoothMap, alpha: &ProductForm) -> Result<ProductForm> {
    Ok(pullback_log(phi, &alpha.log_map())?.exp_map())
}

/// Cofactor expansion along the first row.
fn symbolic_determinant(m: &[Vec<Expr>]) -> Expr {
    match m.len() {
        0 => Expr::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Expr::zero();
            for j in 0..n {
                if m[0][j].is_const(0.0) {
                    continue;
                }
                let sub: Vec<Vec<Expr>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].clone() * symbolic_determinant(&sub);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc.simplify()
        }
    }
}

/// Gaussian elimination with partial pivoting.
fn determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("non-empty range");
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..n {
            let (upper, lower) = m.split_at_mut(row);
            let (pivot_row, target) = (&upper[col], &mut lower[0]);
            let factor = target[col] / pivot_row[col];
            for (t, p) in target[col..].iter_mut().zip(&pivot_row[col..]) {
                *t -= factor * p;
            }
        }
    }
    det
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn error(&self, message: &str, expected: &str) -> Error {
        ParseDiagnostic::new(self.pos, message, expected).into()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'"), &format!("'{c}'")))
        }
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-')))
            .unwrap_or(self.rest().len());
        // a sign may only lead or follow an exponent marker
        let candidate = &self.rest()[..len];
        let mut end = 0;
        for (i, c) in candidate.char_indices() {
            if matches!(c, '+' | '-') && i > 0 && !matches!(candidate.as_bytes()[i - 1], b'e' | b'E') {
                break;
            }
            end = i + c.len_utf8();
        }
        match candidate[..end].parse::<f64>() {
            Ok(v) if v.is_finite() => {
                self.pos += end;
                Ok(v)
            }
            _ => Err(self.error("expected a number", "number")),
        }
    }

    fn point(&mut self) -> Result<Vec<f64>> {
        self.expect('(')?;
        let mut coords = vec![self.number()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            coords.push(self.number()?);
        }
        self.expect(')')?;
        Ok(coords)
    }

    fn simplex(&mut self) -> Result<Simplex> {
        self.expect('[')?;
        let start = self.pos;
        let mut vertices = vec![self.point()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            vertices.push(self.point()?);
        }
        self.expect(']')?;
        if vertices.iter().any(|v| v.len() != vertices[0].len()) {
            return Err(
                ParseDiagnostic::new(start, "vertices have different dimensions", "points of equal length").into(),
            );
        }
        Simplex::new(vertices)
    }

    fn term(&mut self, sign: f64) -> Result<(f64, Simplex)> {
        let weight = if self.peek() == Some('[') {
            1.0
        } else {
            let w = self.number()?;
            self.expect('*')?;
            w
        };
        Ok((sign * weight, self.simplex()?))
    }

    fn chain(&mut self) -> Result<Chain> {
        let mut sign = 1.0;
        if self.peek() == Some('-') {
            self.pos += 1;
            sign = -1.0;
        }
        let mut terms = vec![self.term(sign)?];
        loop {
            match self.peek() {
                None => break,
                Some('+') => sign = 1.0,
                Some('-') => sign = -1.0,
                Some(_) => return Err(self.error("unexpected input in chain", "'+', '-' or end")),
            }
            self.pos += 1;
            terms.push(self.term(sign)?);
        }
        let first = &terms[0].1;
        let mut chain = Chain::empty(first.dim(), first.degree());
        for (w, s) in terms {
            chain.push(w, s)?;
        }
        Ok(chain)
    }
}
