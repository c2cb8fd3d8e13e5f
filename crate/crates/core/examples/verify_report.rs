//! The full check registry as newline-delimited JSON, then a negative control.

use fibotheta::verify::{run_all, run_check_entry, scaled, CheckEntry, VerifyOptions};

fn main() -> fibotheta::Result<()> {
    let (reports, summary) = run_all(40)?;
    for r in &reports {
        println!("{}", r.to_json_line());
    }
    eprintln!("{summary}");

    // ξ₁ with its prefactor 2 replaced by 3 must be refuted
    let bad = CheckEntry::numeric("thm1_xi1_prefactor_3", |p| {
        let (lhs, rhs) = fibotheta::verify::sides("thm1_xi1", p)?;
        Ok((lhs, scaled(&rhs, 3, 2)))
    });
    let r = run_check_entry(&bad, &VerifyOptions::default())?;
    eprintln!("mutated: {} (separation >= {})", r.status, r.gap_bound);
    Ok(())
}
