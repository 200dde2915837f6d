// Complex-valued product integrals and geometric means of sign-changing functions.

use prodcalc::scalar::{geometric_integral_signed, geometric_mean, sign_profile};
use prodcalc::{Expr, Interval, QuadratureRule};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let rule = QuadratureRule::default();
    let two_pi = 2.0 * std::f64::consts::PI;
    for (text, a, b) in [("sin(x1)", 0.0, two_pi), ("0 - 3", 0.0, 2.0), ("x1^2 - 1", -2.0, 2.0)] {
        let f = Expr::parse(text)?;
        let interval = Interval::new(a, b)?;
        let profile = sign_profile(&f, interval, 512, 1e-12)?;
        let integral = geometric_integral_signed(&f, interval, &rule, &profile)?;
        let mean = geometric_mean(&f, interval, &rule, &profile)?;
        println!(
            "{f:<10} roots {:?}, negative measure {:.6}",
            profile.roots(),
            profile.negative_measure()
        );
        println!("  integral = {:.9} {:+.9}i", integral.re, integral.im);
        println!("  mean     = {:.9} {:+.9}i", mean.re, mean.im);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
