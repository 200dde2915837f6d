// Pullback of product forms along smooth maps, and its commutation with q.

use prodcalc::forms::{max_log_difference, sample_points, ProductForm, DEFAULT_SAMPLE_COUNT};
use prodcalc::geometry::{affine_map, pullback_product, Simplex, SmoothMap};
use prodcalc::Expr;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    // polar-like map (r, t) ↦ (r cos t, r sin t)
    let phi = SmoothMap::new(2, vec![Expr::parse("x1*cos(x2)")?, Expr::parse("x1*sin(x2)")?])?;
    let alpha = ProductForm::parse("dx1^dx2:exp(1)", 2)?;
    println!("φ* (e)^(dx1∧dx2) = {}", pullback_product(&phi, &alpha)?);

    let beta = ProductForm::parse("0:exp(x1^2 + x2)", 2)?;
    let lhs = pullback_product(&phi, &beta.q_diff()?)?;
    let rhs = pullback_product(&phi, &beta)?.q_diff()?;
    let points = sample_points(2, DEFAULT_SAMPLE_COUNT);
    println!(
        "φ* q β vs q φ* β: max log difference {:.3e}",
        max_log_difference(&lhs, &rhs, &points)?
    );

    let s = Simplex::parse("[(1,0),(3,1),(0,2)]")?;
    let map = affine_map(&s)?;
    println!(
        "affine map of {s}: {:?}",
        map.components().iter().map(|c| c.to_string()).collect::<Vec<_>>()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
