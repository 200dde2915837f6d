// Geometric product integrals against the Riemann-product definition.

use prodcalc::scalar::{geometric_integral, riemann_product_oracle};
use prodcalc::{Expr, Interval, QuadratureRule};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let rule = QuadratureRule::default();
    for (text, a, b) in [("exp(x1)", 0.0, 1.0), ("x1", 1.0, 3.0), ("1/x1", 0.0, 1.0)] {
        let f = Expr::parse(text)?;
        let interval = Interval::new(a, b)?;
        let value = geometric_integral(&f, interval, &rule)?;
        print!("prod_[{a},{b}] ({f})^dx = {value:.12}");
        if a > 0.0 {
            print!(
                "  (Riemann product, n = 10^5: {:.12})",
                riemann_product_oracle(&f, interval, 100_000)?
            );
        }
        println!();
    }

    // multiplicativity over adjacent intervals
    let f = Expr::parse("1 + x1^2")?;
    let whole = geometric_integral(&f, Interval::new(0.0, 2.0)?, &rule)?;
    let left = geometric_integral(&f, Interval::new(0.0, 0.7)?, &rule)?;
    let right = geometric_integral(&f, Interval::new(0.7, 2.0)?, &rule)?;
    println!("[0,2] = {whole:.12}, [0,0.7]·[0.7,2] = {:.12}", left * right);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
