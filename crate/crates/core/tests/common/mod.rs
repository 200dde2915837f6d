#![allow(dead_code)]

use prodcalc::forms::{MultiIndex, ProductForm};
use prodcalc::geometry::Simplex;
use prodcalc::Expr;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn p(s: &str) -> Expr {
    Expr::parse(s).unwrap()
}

/// All exponent vectors of total degree ≤ `max_degree` in `nvars` variables.
fn monomials(nvars: usize, max_degree: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, vars: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == vars {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(left - e, vars, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_degree, nvars, &mut Vec::new(), &mut out);
    out
}

/// Polynomial of total degree ≤ `max_degree` with coefficients drawn from [-1, 1].
pub fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, max_degree: usize) -> Expr {
    let mut acc = Expr::zero();
    for exps in monomials(nvars, max_degree) {
        let mut term = Expr::constant(rng.gen_range(-1.0..=1.0));
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                term = term * Expr::var(i + 1).powf(e as f64);
            }
        }
        acc = acc + term;
    }
    acc
}

pub fn random_exp_poly(rng: &mut ChaCha8Rng, nvars: usize, max_degree: usize) -> Expr {
    random_poly(rng, nvars, max_degree).exp()
}

/// Positive coefficient drawn from a mix of exp/sin/polynomial families.
pub fn random_positive(rng: &mut ChaCha8Rng, nvars: usize) -> Expr {
    match rng.gen_range(0..4) {
        0 => random_exp_poly(rng, nvars, 2),
        1 => random_poly(rng, nvars, 2).sin().exp(),
        2 => random_poly(rng, nvars, 2).powf(2.0) + Expr::constant(rng.gen_range(0.5..2.0)),
        _ => random_poly(rng, nvars, 1).sin() + Expr::constant(rng.gen_range(1.5..3.0)),
    }
}

/// Degree-`p` form on every slot, coefficients from `coef`.
pub fn dense_form<F>(rng: &mut ChaCha8Rng, dim: usize, p: usize, mut coef: F) -> ProductForm
where
    F: FnMut(&mut ChaCha8Rng) -> Expr,
{
    let terms: Vec<_> = MultiIndex::all(dim, p).into_iter().map(|s| (s, coef(rng))).collect();
    ProductForm::from_terms(dim, p, terms).unwrap()
}

pub fn random_form(rng: &mut ChaCha8Rng, dim: usize, p: usize) -> ProductForm {
    dense_form(rng, dim, p, |r| random_positive(r, dim))
}

pub fn random_exp_poly_form(rng: &mut ChaCha8Rng, dim: usize, p: usize) -> ProductForm {
    dense_form(rng, dim, p, |r| random_exp_poly(r, dim, 3))
}

/// `k`-simplex with vertices in [0,1]^n and Gram determinant ≥ `min_gram`.
pub fn random_simplex(rng: &mut ChaCha8Rng, n: usize, k: usize, min_gram: f64) -> Simplex {
    loop {
        let vertices = (0..=k)
            .map(|_| (0..n).map(|_| rng.gen_range(0.0..1.0)).collect())
            .collect();
        let s = Simplex::new(vertices).unwrap();
        if s.gram_determinant() >= min_gram {
            return s;
        }
    }
}

pub fn random_points(rng: &mut ChaCha8Rng, dim: usize, count: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| (0..dim).map(|_| rng.gen_range(0.1..0.9)).collect())
        .collect()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
