//! Certified values of infinite products `∏ (1 ± j/F_n)`.

use fibotheta::exactnum::{render_truncated, ten_pow_neg};
use fibotheta::fibonacci::{fib, Convention};
use fibotheta::products::{eval_product, eval_product_cutoff, ProductSpec};

fn main() -> fibotheta::Result<()> {
    let f: Vec<String> = (1..=12).map(|n| fib(n, Convention::Standard).to_string()).collect();
    println!("F_1..F_12 = {}", f.join(", "));
    println!("F_1000 has {} digits", fib(1000, Convention::Standard).to_string().len());

    let specs = [
        ("prod_{n>=1} (1 + 1/F_n)", ProductSpec::xi1()),
        ("prod_{n>=3} (1 - 1/F_n)", ProductSpec::xi2()),
        ("prod_{n>=1} (1 + 1/F_{2n-1})", ProductSpec::odd_plus()),
        ("prod_{n>=2} (1 - 1/F_{2n-1})", ProductSpec::odd_minus()),
        ("gamma_1 = prod (1 + 1/F_{2^n})", ProductSpec::gamma(1)?),
        ("gamma_2 = prod (1 + 2/F_{2^n})", ProductSpec::gamma(2)?),
    ];
    for (label, spec) in &specs {
        let b = eval_product(spec, &ten_pow_neg(32))?;
        let r = render_truncated(&b, 30);
        println!("{label:<32} {}{}", r.text, if r.certified { "" } else { " (uncertified)" });
    }

    // a fixed cutoff with its certified tail enclosure
    let coarse = eval_product_cutoff(&ProductSpec::xi1(), 20)?;
    println!("xi1 from 20 factors plus tail: {coarse}");
    Ok(())
}
