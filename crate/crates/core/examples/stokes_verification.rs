// Product integrals over chains and the multiplicative Stokes identity.

use prodcalc::forms::ProductForm;
use prodcalc::geometry::{boundary_chain, Chain};
use prodcalc::stokes::{product_integral_over_chain, stokes_check};
use prodcalc::QuadratureRule;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let rule = QuadratureRule::default();
    let cases = [
        (1, "0:exp(x1)", "[(0),(1)]"),
        (2, "dx1:exp(x1*x2)", "[(0,0),(1,0),(0,1)]"),
        (
            2,
            "dx1:2 + x2^2; dx2:exp(sin(x1))",
            "2*[(0,0),(1,0),(0,1)] - 0.5*[(1,1),(2,1),(1,3)]",
        ),
        (
            3,
            "dx1^dx2:exp(x1*x3); dx2^dx3:1 + x2^2",
            "[(0,0,0),(1,0,0),(0,1,0),(0,0,1)]",
        ),
    ];
    for (n, form, chain) in cases {
        let alpha = ProductForm::parse(form, n)?;
        let c = Chain::parse(chain)?;
        let report = stokes_check(&alpha, &c, &rule)?;
        println!("α = {alpha}, c = {c}");
        println!(
            "  ∏_∂c α = {:.12}, ∏_c qα = {:.12}, log discrepancy {:.2e}",
            report.lhs, report.rhs, report.log_discrepancy
        );
    }

    let c = Chain::parse("[(0,0),(1,0),(0,1)]")?;
    let dc = boundary_chain(&c)?;
    println!("∂c = {dc}");
    println!("∂∂c empty: {}", boundary_chain(&dc)?.is_empty());
    let alpha = ProductForm::parse("dx1^dx2:3", 2)?;
    println!(
        "∏_c (3)^(dx1∧dx2) = {:.12}",
        product_integral_over_chain(&alpha, &c, &rule)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
