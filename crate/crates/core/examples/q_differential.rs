// The q differential, q∘q = I and the product Leibniz rule.

use prodcalc::forms::{check_leibniz, sample_points, ProductForm, DEFAULT_SAMPLE_COUNT};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let f = ProductForm::parse("0:exp(x1*x2)", 2)?;
    let qf = f.q_diff()?;
    println!("q f  = {qf}");
    println!("qq f is the identity: {}", qf.q_diff()?.is_identity());

    let alpha = ProductForm::parse("dx1:exp(x1*x2)", 3)?;
    println!("q α  = {}", alpha.q_diff()?);

    let points = sample_points(3, DEFAULT_SAMPLE_COUNT);
    for (l, r) in [("dx1:exp(x1)", "dx2:exp(x2)"), ("dx1:exp(x2)", "dx2:exp(x3)")] {
        let report = check_leibniz(&ProductForm::parse(l, 3)?, &ProductForm::parse(r, 3)?, &points)?;
        println!("Leibniz residual for {l} ∧ {r}: {:.6}", report.max_abs_log_difference);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
