//! Exact coefficient checks of theta product identities, plus a negative control.

use fibotheta::exactnum::int;
use fibotheta::qseries::{compare_sides, identity_sides, theta_series, verify_identity, Identity, ThetaSeries};

fn main() -> fibotheta::Result<()> {
    println!("theta3 = {}", theta_series(ThetaSeries::Three, 20));
    for id in Identity::ALL {
        let o = verify_identity(id, 200)?;
        println!("{:<15} order {} {}", id.name(), o.order, if o.pass { "pass" } else { "FAIL" });
    }

    let mut sides = identity_sides(Identity::Tp4, 60)?;
    let c = sides[1].coeff(25).clone();
    sides[1].set_coeff(25, c + int(1));
    println!("tp4 with q^25 perturbed: first mismatch {:?}", compare_sides(&sides)?);
    Ok(())
}
