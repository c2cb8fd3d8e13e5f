//! Which Fibonacci indexing reproduces the printed constants.

use fibotheta::fibonacci::convention_probe;

fn main() -> fibotheta::Result<()> {
    let report = convention_probe(12)?;
    for v in [&report.standard, &report.shifted] {
        println!(
            "{:<9} prod(1+1/F_n) = {}  prod(1-1/F_n) = {}  sum 1/F_(2^n) = {}  matches printed: {}",
            v.convention.to_string(),
            v.xi1,
            v.xi2,
            v.lucas_sum,
            v.reproduces_printed()
        );
    }
    println!("reproducing: {:?}", report.reproducing);
    Ok(())
}
