//! Fibonacci numbers under both index conventions.
//!
//! `Standard` is `F₀ = 0, F₁ = F₂ = 1`. `Shifted` is `F₀ = F₁ = 1`, so a
//! shifted index `n` is the standard index `n + 1`. Everything downstream
//! defaults to the standard convention: it is the one under which the
//! published decimal values of the products and the Lucas-type sum come out
//! right, which [`convention_probe`] demonstrates.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{render_truncated, ten_pow_neg, Ball, QuadElem};
use crate::products::{eval_lucas_sum_with, eval_product, IndexMap, ProductSpec, Sign};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Standard,
    Shifted,
}

impl Convention {
    /// Standard index holding the value this convention calls `F_n`.
    pub fn standard_index(self, n: u64) -> u64 {
        match self {
            Convention::Standard => n,
            Convention::Shifted => n + 1,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Standard => "standard",
            Convention::Shifted => "shifted",
        })
    }
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Convention::Standard),
            "shifted" => Ok(Convention::Shifted),
            other => Err(Error::Usage(format!("unknown convention `{other}`"))),
        }
    }
}

/// `(F_k, F_{k+1})` in the standard convention, by fast doubling.
pub fn fib_pair(k: u64) -> (BigInt, BigInt) {
    let mut a = BigInt::zero();
    let mut b = BigInt::one();
    for bit in (0..u64::BITS - k.leading_zeros()).rev() {
        // F(2m) = F(m)(2F(m+1) - F(m)), F(2m+1) = F(m)² + F(m+1)²
        let c = &a * ((&b << 1usize) - &a);
        let d = &a * &a + &b * &b;
        if (k >> bit) & 1 == 1 {
            a = d.clone();
            b = c + d;
        } else {
            a = c;
            b = d;
        }
    }
    (a, b)
}

pub fn fib(n: u64, conv: Convention) -> BigInt {
    fib_pair(conv.standard_index(n)).0
}

/// Walks the standard sequence forward, jumping by fast doubling on long gaps.
#[derive(Clone, Debug)]
pub struct FibWalker {
    k: u64,
    cur: BigInt,
    next: BigInt,
}

impl Default for FibWalker {
    fn default() -> Self {
        Self::new()
    }
}

impl FibWalker {
    pub fn new() -> Self {
        FibWalker {
            k: 0,
            cur: BigInt::zero(),
            next: BigInt::one(),
        }
    }

    /// Standard `F_target`; `target` may not move backward.
    pub fn seek(&mut self, target: u64) -> &BigInt {
        assert!(target >= self.k, "FibWalker cannot move backward");
        if target - self.k > 64 {
            let (a, b) = fib_pair(target);
            self.cur = a;
            self.next = b;
            self.k = target;
        }
        while self.k < target {
            let n = &self.cur + &self.next;
            self.cur = std::mem::replace(&mut self.next, n);
            self.k += 1;
        }
        &self.cur
    }
}

/// `(αⁿ − (−β)ⁿ)/√5` evaluated exactly in Q(√5).
///
/// The √5 factors cancel, so the ball is exact with an integer center equal
/// to the standard `F_n`.
pub fn fib_binet_ball(n: u64) -> Ball {
    let alpha_n = QuadElem::alpha().pow(n as i64).expect("α ≠ 0");
    let minus_beta_n = (-QuadElem::beta()).pow(n as i64).expect("β ≠ 0");
    let v = (&alpha_n - &minus_beta_n)
        .checked_div(&QuadElem::sqrt5())
        .expect("√5 ≠ 0");
    Ball::exact(v)
}

/// Decimal values printed in the source for the two main products.
pub const PRINTED_XI1: &str = "13.1509666577";
pub const PRINTED_XI2: &str = "0.1897891436";

/// Closed form `(5 − √5)/2` of the sum of `1/F_{2^n}`.
pub fn lucas_sum_closed_form() -> QuadElem {
    QuadElem::new(crate::exactnum::rat(5, 2), crate::exactnum::rat(-1, 2))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConventionValues {
    pub convention: Convention,
    /// `∏_{n≥1} (1 + 1/F_n)`
    pub xi1: String,
    /// `∏_{n≥3} (1 − 1/F_n)`
    pub xi2: String,
    /// `Σ_{n≥1} 1/F_{2^n}`
    pub lucas_sum: String,
    pub certified: bool,
    pub matches_printed_xi1: bool,
    pub matches_printed_xi2: bool,
    pub lucas_matches_closed_form: bool,
}

impl ConventionValues {
    pub fn reproduces_printed(&self) -> bool {
        self.matches_printed_xi1 && self.matches_printed_xi2 && self.lucas_matches_closed_form
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConventionReport {
    pub digits: u32,
    pub standard: ConventionValues,
    pub shifted: ConventionValues,
    /// The convention(s) whose values match the printed constants.
    pub reproducing: Vec<Convention>,
}

fn convention_values(conv: Convention, digits: u32) -> Result<ConventionValues> {
    let target = ten_pow_neg(digits + 2);
    let xi1 = eval_product(
        &ProductSpec::new(Sign::Plus, IndexMap::All, 1, 1, conv)?,
        &target,
    )?;
    let xi2 = eval_product(
        &ProductSpec::new(Sign::Minus, IndexMap::All, 3, 1, conv)?,
        &target,
    )?;
    let lucas = eval_lucas_sum_with(conv, &target)?;
    let r1 = render_truncated(&xi1, digits);
    let r2 = render_truncated(&xi2, digits);
    let rl = render_truncated(&lucas, digits);
    Ok(ConventionValues {
        convention: conv,
        matches_printed_xi1: render_truncated(&xi1, 10).text == PRINTED_XI1,
        matches_printed_xi2: render_truncated(&xi2, 10).text == PRINTED_XI2,
        lucas_matches_closed_form: lucas.contains_exact(&lucas_sum_closed_form()),
        certified: r1.certified && r2.certified && rl.certified,
        xi1: r1.text,
        xi2: r2.text,
        lucas_sum: rl.text,
    })
}

/// Evaluates `∏(1 + 1/F_n)`, `∏(1 − 1/F_n)` and `Σ 1/F_{2^n}` under both
/// conventions and reports which one reproduces the printed constants.
pub fn convention_probe(precision_digits: u32) -> Result<ConventionReport> {
    if precision_digits < 10 {
        return Err(Error::Usage(
            "convention probe needs at least 10 digits".into(),
        ));
    }
    let standard = convention_values(Convention::Standard, precision_digits)?;
    let shifted = convention_values(Convention::Shifted, precision_digits)?;
    let reproducing = [&standard, &shifted]
        .into_iter()
        .filter(|v| v.reproduces_printed())
        .map(|v| v.convention)
        .collect();
    Ok(ConventionReport {
        digits: precision_digits,
        standard,
        shifted,
        reproducing,
    })
}
