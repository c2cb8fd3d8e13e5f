//! Both evaluation paths for the two Fibonacci products: the direct product
//! and the theta-function formula.

use fibotheta::exactnum::{format_sci_up, render_decimal, ten_pow_neg};
use fibotheta::products::{eval_product, thm1_rhs, thm1_rhs_value, ProductSpec, Thm1Target};

fn main() -> fibotheta::Result<()> {
    let p = 60;
    for (name, spec, which) in [
        ("xi1", ProductSpec::xi1(), Thm1Target::Xi1),
        ("xi2", ProductSpec::xi2(), Thm1Target::Xi2),
    ] {
        let direct = eval_product(&spec, &ten_pow_neg(p + 4))?;
        let formula = thm1_rhs(which, p + 4)?;
        let (_, gap) = direct.distance_bounds(&formula);
        println!("{name} product {}", render_decimal(&direct, p).text);
        println!("{name} theta   {}", render_decimal(&formula, p).text);
        println!(
            "   quarter exponent of beta after assembly: {}, |difference| <= {}",
            thm1_rhs_value(which, p)?.quarter_exp(),
            format_sci_up(&gap, 3)
        );
    }
    Ok(())
}
