//! Integer-relation search: positive controls, then the two Fibonacci products.

use fibotheta::exactnum::{BigInt, Ball, QuadElem};
use fibotheta::products::{thm1_rhs, Thm1Target};
use fibotheta::relations::{minimal_polynomial_search, polynomial_relation_search};

fn main() -> fibotheta::Result<()> {
    let h = BigInt::from(100_000_000);
    let golden = Ball::exact(&QuadElem::one() + &QuadElem::sqrt5());
    println!("-- 1 + √5 --\n{}\n", minimal_polynomial_search(&golden, 4, &h, 40)?);

    let xi1 = thm1_rhs(Thm1Target::Xi1, 130)?;
    let xi2 = thm1_rhs(Thm1Target::Xi2, 130)?;
    println!("-- xi1 alone --\n{}\n", minimal_polynomial_search(&xi1, 4, &h, 100)?);
    println!("-- (xi1, 1 + √5) --\n{}\n", polynomial_relation_search(&xi1, &golden, 2, &h, 100)?);
    println!("-- (xi1, xi2), degree 3 --\n{}", polynomial_relation_search(&xi1, &xi2, 3, &h, 100)?);
    Ok(())
}
