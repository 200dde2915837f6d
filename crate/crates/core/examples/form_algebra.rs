// Product forms: ⊕, ⊙, inverses and the product wedge.

use prodcalc::forms::{check_associativity, forms_agree, sample_points, ProductForm, DEFAULT_SAMPLE_COUNT};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let a = ProductForm::parse("dx1:2; dx2:3; dx3:5", 3)?;
    let b = ProductForm::parse("dx1:7; dx2:11; dx3:13", 3)?;
    println!("a = {a}");
    println!("b = {b}");
    println!("a ⊕ b = {}", a.oplus(&b)?);
    println!("2 ⊙ a = {}", a.scalar_odot(2.0));
    println!(
        "a ⊕ a⁻¹ = I: {}",
        forms_agree(&a.oplus(&a.inverse())?, &ProductForm::from_terms(3, 1, [])?)?
    );

    let ab = a.wedge_p(&b)?;
    let ba = b.wedge_p(&a)?;
    let origin = [0.0; 3];
    for (slot, value) in ab.evaluate(&origin)? {
        println!(
            "(a ∧ b)[{slot}] = {value:.12}, (b ∧ a)[{slot}] = {:.12}",
            ba.evaluate(&origin)?[&slot]
        );
    }

    let x = ProductForm::parse("dx1:exp(x2)", 3)?;
    let y = ProductForm::parse("dx2:exp(x3)", 3)?;
    let z = ProductForm::parse("dx3:2", 3)?;
    let report = check_associativity(&x, &y, &z, &sample_points(3, DEFAULT_SAMPLE_COUNT))?;
    println!(
        "associativity residual on ascending monomials: {:.3e}",
        report.max_abs_log_difference
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
