// Volterra product integrals exp(∫ g) and their Riemann-product oracle.

use prodcalc::scalar::{volterra_integral, volterra_riemann_oracle};
use prodcalc::{Expr, Interval, QuadratureRule};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let rule = QuadratureRule::default();
    let half_pi = std::f64::consts::FRAC_PI_2;
    for (text, a, b) in [("cos(x1)", 0.0, half_pi), ("0", 0.0, 5.0), ("x1 - 1", 0.0, 3.0)] {
        let g = Expr::parse(text)?;
        let interval = Interval::new(a, b)?;
        println!(
            "prod_[{a:.4},{b:.4}] (1 + ({g}) dx) = {:.12}  (product of 10^5 factors: {:.12})",
            volterra_integral(&g, interval, &rule)?,
            volterra_riemann_oracle(&g, interval, 100_000)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
