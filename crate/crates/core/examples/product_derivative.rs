// Product derivatives and the multiplicative linearisation.

use prodcalc::scalar::{multiplicative_linearization, product_derivative};
use prodcalc::Expr;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for (text, x) in [("exp(x1^2)", 1.0), ("5^x1", 3.7), ("x1^x1", 2.0)] {
        let f = Expr::parse(text)?;
        println!("f = {f:<10} f*({x}) = {:.12}", product_derivative(&f, x)?);
    }

    // f(x) ≈ f(c) · f*(c)^(x - c) near c
    let f = Expr::parse("2 + sin(x1)")?;
    for x in [0.45, 0.5, 0.55] {
        let approx = multiplicative_linearization(&f, 0.5, x)?;
        println!("x = {x}: f = {:.8}, linearised = {:.8}", f.eval(&[x])?, approx);
    }

    match product_derivative(&Expr::parse("x1")?, 0.0) {
        Err(e) => println!("x1 at 0: {e}"),
        Ok(v) => println!("unexpected {v}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
