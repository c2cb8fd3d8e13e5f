//! Jacobi theta values at the golden-ratio nome.

use fibotheta::exactnum::{rat, render_decimal, ten_pow_neg, QuadElem};
use fibotheta::theta::{theta_ball, theta_ball_terms, ThetaIndex};

fn main() -> fibotheta::Result<()> {
    let beta = QuadElem::beta();
    let beta4 = beta.pow(4)?;
    let target = ten_pow_neg(40);
    let cases = [
        ("theta2(beta)", ThetaIndex::Two, beta.clone()),
        ("theta3(beta)", ThetaIndex::Three, beta.clone()),
        ("theta4(beta)", ThetaIndex::Four, beta.clone()),
        ("theta4(beta^4)", ThetaIndex::Four, beta4),
        ("theta3(1/2)", ThetaIndex::Three, QuadElem::from_rational(rat(1, 2))),
    ];
    for (label, which, q) in cases {
        let v = theta_ball(which, &q, &target)?;
        let b = v.collapse(40)?;
        println!("{label:<15} {}", render_decimal(&b, 35).text);
    }

    // ϑ₂ keeps its q^(1/4) factor symbolic until collapsed
    let t2 = theta_ball_terms(ThetaIndex::Two, &beta, 12)?;
    println!(
        "theta2(beta) with 12 terms: beta^({}/4) * {}",
        t2.quarter_exp(),
        t2.body()
    );
    Ok(())
}
