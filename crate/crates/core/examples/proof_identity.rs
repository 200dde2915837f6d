// The boundary/interior identity for (A)^{dx1∧…∧dxn} on the standard (n+1)-simplex.

use prodcalc::stokes::proof_identity_check;
use prodcalc::{Expr, QuadratureRule};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let rule = QuadratureRule::default();
    for (text, n) in [("exp(x1*x2)", 1), ("1 + x1^2 + x3", 2), ("exp(x1*x2 + x4^2)", 3)] {
        let a = Expr::parse(text)?;
        let report = proof_identity_check(&a, n, &rule)?;
        println!(
            "n = {n}, a = {a}: boundary {:.12}, interior {:.12}, closed form {:.12}, max log discrepancy {:.2e}",
            report.lhs,
            report.rhs,
            report.closed_form,
            report.max_discrepancy()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
