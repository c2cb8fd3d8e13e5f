//! Exact Q(√5) arithmetic next to certified ball enclosures.

use fibotheta::exactnum::{
    ball_round, fourth_root_enclosure, rat, render_decimal, sqrt5_enclosure, Ball, QuadElem,
};

fn main() -> fibotheta::Result<()> {
    let alpha = QuadElem::alpha();
    let beta = QuadElem::beta();
    println!("alpha = {alpha}, beta = {beta}");
    println!("alpha * beta = {}", &alpha * &beta);
    println!("beta^4 = {}", beta.pow(4)?);

    let s5 = sqrt5_enclosure(30);
    println!("sqrt(5) ~ {s5}");

    // a wide input gives a wide, but still sound, result
    let x = Ball::new(QuadElem::from_rational(rat(3, 2)), rat(1, 100));
    let y = x.mul(&x).sub(&Ball::exact(beta.clone())).div(&x)?;
    println!("(x^2 - beta) / x with x = 1.5 ± 0.01: {y}");

    let long = Ball::exact(beta.pow(60)?);
    let rounded = ball_round(&long, 80);
    println!(
        "beta^60 rounded to 80 bits: {rounded} (contains exact value: {})",
        rounded.contains_exact(long.center())
    );

    let root = fourth_root_enclosure(&Ball::exact(beta), 25)?;
    let r = render_decimal(&root, 20);
    println!("beta^(1/4) = {} (certified: {})", r.text, r.certified);
    Ok(())
}
