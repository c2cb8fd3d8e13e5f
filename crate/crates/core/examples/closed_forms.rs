//! Telescoping closed forms, checked by exact membership in certified balls.

use fibotheta::exactnum::{rat, ten_pow_neg, QuadElem};
use fibotheta::fibonacci::lucas_sum_closed_form;
use fibotheta::products::{eval_lucas_sum, eval_product, eval_reciprocal_sum, ProductSpec, ReciprocalKind};

fn main() -> fibotheta::Result<()> {
    let t = ten_pow_neg(50);
    let one_plus_s5 = &QuadElem::one() + &QuadElem::sqrt5();

    let even_plus = eval_product(&ProductSpec::even_plus(), &t)?;
    println!("prod (1 + 1/F_2n) = {even_plus}");
    println!("  contains 1 + √5: {}", even_plus.contains_exact(&one_plus_s5));

    let even_minus = eval_product(&ProductSpec::even_minus(), &t)?;
    let sixth = one_plus_s5.scale(&rat(1, 6));
    println!("prod (1 - 1/F_2n), n >= 2 = {even_minus}");
    println!("  contains (1 + √5)/6: {}", even_minus.contains_exact(&sixth));

    let lucas = eval_lucas_sum(&t)?;
    println!("sum 1/F_(2^n) = {lucas}");
    println!("  contains (5 - √5)/2: {}", lucas.contains_exact(&lucas_sum_closed_form()));

    // no closed form is known for these
    println!("sum 1/F_n      = {}", eval_reciprocal_sum(ReciprocalKind::All, &t)?);
    println!("sum 1/F_(2n-1) = {}", eval_reciprocal_sum(ReciprocalKind::Odd, &t)?);
    Ok(())
}
