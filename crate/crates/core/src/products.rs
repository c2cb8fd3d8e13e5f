//! Certified Fibonacci infinite products and reciprocal sums.
//!
//! A product `∏ (1 ± j/F_{k(n)})` is evaluated as an exact (or rounded)
//! partial product times a certified tail factor. With `m` the first
//! standard index left out and `m >= 2`, the ratio `F_{k+1}/F_k >= 3/2`
//! gives
//!
//! * plus sign:  `0 <= log T <= Σ j/F_k <= 3j/F_m`
//! * minus sign: `0 <= -log T <= Σ j/(F_k - j) <= 6j/F_m` when `F_m >= 2j`
//!
//! and both majorants telescope (`B(m) >= term(m) + B(m+1)`), so tails at
//! later cutoffs nest inside earlier ones. The log bound `ε` becomes the
//! rational interval `[1, 1/(1-ε)]` or `[1-ε, 1]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{
    ball_round, log2_upper, ten_pow_neg, Ball, QuadElem, DEFAULT_GUARD_BITS,
};
use crate::fibonacci::{fib, Convention, FibWalker};
use crate::theta::{theta_ball, ThetaIndex, ThetaValue};

/// Hard cap on the number of factors or terms accumulated.
pub const MAX_TERMS: u64 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Which Fibonacci indices a product runs over, as a function of `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IndexMap {
    /// `n`
    All,
    /// `2n - 1`
    Odd,
    /// `2n`
    Even,
    /// `2^n`
    PowersOfTwo,
}

impl IndexMap {
    pub fn index(self, n: u64) -> u64 {
        match self {
            IndexMap::All => n,
            IndexMap::Odd => 2 * n - 1,
            IndexMap::Even => 2 * n,
            IndexMap::PowersOfTwo => 1u64 << n,
        }
    }
}

/// `∏_{n >= start} (1 + sign · numerator / F_{index(n)})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductSpec {
    sign: Sign,
    index_map: IndexMap,
    start: u64,
    numerator: u64,
    convention: Convention,
}

impl ProductSpec {
    pub fn new(
        sign: Sign,
        index_map: IndexMap,
        start: u64,
        numerator: u64,
        convention: Convention,
    ) -> Result<Self> {
        if numerator == 0 {
            return Err(Error::Domain("numerator must be positive".into()));
        }
        if index_map == IndexMap::Odd && start == 0 {
            return Err(Error::Domain("odd index map starts at n = 1".into()));
        }
        if index_map == IndexMap::PowersOfTwo && start > 40 {
            return Err(Error::Domain("power-of-two start index too large".into()));
        }
        let spec = ProductSpec {
            sign,
            index_map,
            start,
            numerator,
            convention,
        };
        // F is nondecreasing from index 1 on, so the first factor is the smallest
        let first = fib(spec.standard_index(start), Convention::Standard);
        if first.is_zero() {
            return Err(Error::Domain("factor 1/F_0 is undefined".into()));
        }
        if sign == Sign::Minus && first <= BigInt::from(numerator) {
            return Err(Error::Domain(format!(
                "factor 1 - {numerator}/{first} is not positive"
            )));
        }
        Ok(spec)
    }

    /// `∏_{n≥1} (1 + 1/F_n)`
    pub fn xi1() -> Self {
        Self::new(Sign::Plus, IndexMap::All, 1, 1, Convention::Standard).unwrap()
    }

    /// `∏_{n≥3} (1 − 1/F_n)`
    pub fn xi2() -> Self {
        Self::new(Sign::Minus, IndexMap::All, 3, 1, Convention::Standard).unwrap()
    }

    /// `∏_{n≥1} (1 + 1/F_{2n-1})`
    pub fn odd_plus() -> Self {
        Self::new(Sign::Plus, IndexMap::Odd, 1, 1, Convention::Standard).unwrap()
    }

    /// `∏_{n≥2} (1 − 1/F_{2n-1})`
    pub fn odd_minus() -> Self {
        Self::new(Sign::Minus, IndexMap::Odd, 2, 1, Convention::Standard).unwrap()
    }

    /// `∏_{n≥1} (1 + 1/F_{2n}) = 1 + √5`
    pub fn even_plus() -> Self {
        Self::new(Sign::Plus, IndexMap::Even, 1, 1, Convention::Standard).unwrap()
    }

    /// `∏_{n≥2} (1 − 1/F_{2n}) = (1 + √5)/6`
    pub fn even_minus() -> Self {
        Self::new(Sign::Minus, IndexMap::Even, 2, 1, Convention::Standard).unwrap()
    }

    /// `γ_j = ∏_{n≥1} (1 + j/F_{2^n})`
    pub fn gamma(j: u64) -> Result<Self> {
        Self::new(Sign::Plus, IndexMap::PowersOfTwo, 1, j, Convention::Standard)
    }

    pub fn with_convention(mut self, convention: Convention) -> Result<Self> {
        self.convention = convention;
        Self::new(
            self.sign,
            self.index_map,
            self.start,
            self.numerator,
            self.convention,
        )
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    /// Standard Fibonacci index of the `n`-th factor.
    pub fn standard_index(&self, n: u64) -> u64 {
        self.convention.standard_index(self.index_map.index(n))
    }

    fn factor(&self, f: &BigInt) -> BigRational {
        let j = BigInt::from(self.numerator);
        match self.sign {
            Sign::Plus => BigRational::new(f + j, f.clone()),
            Sign::Minus => BigRational::new(f - j, f.clone()),
        }
    }

    /// Log-bound `ε` for the tail whose first standard index is `m`.
    fn tail_log_bound(&self, m: u64, f_m: &BigInt) -> Option<BigRational> {
        if m < 2 {
            return None;
        }
        let j = BigInt::from(self.numerator);
        match self.sign {
            Sign::Plus => Some(BigRational::new(j * 3, f_m.clone())),
            Sign::Minus if f_m >= &(&j * 2) => Some(BigRational::new(j * 6, f_m.clone())),
            Sign::Minus => None,
        }
    }

    /// Multiplicative enclosure of the tail; `None` when the bound is unusable.
    fn tail_ball(&self, eps: &BigRational) -> Option<Ball> {
        let one = BigRational::one();
        match self.sign {
            Sign::Plus => {
                if eps >= &one {
                    return None;
                }
                Some(Ball::from_interval(one.clone(), &one / (&one - eps)))
            }
            Sign::Minus => {
                let lo = if eps >= &one {
                    BigRational::zero()
                } else {
                    &one - eps
                };
                Some(Ball::from_interval(lo, one))
            }
        }
    }
}

/// Exact partial product over `start <= n <= cutoff` times the certified tail.
pub fn eval_product_cutoff(spec: &ProductSpec, cutoff: u64) -> Result<Ball> {
    let mut walker = FibWalker::new();
    let mut partial = BigRational::one();
    for n in spec.start..=cutoff {
        let f = walker.seek(spec.standard_index(n)).clone();
        partial *= spec.factor(&f);
    }
    let next = (cutoff + 1).max(spec.start);
    let m = spec.standard_index(next);
    let f_m = walker.seek(m).clone();
    let tail = spec
        .tail_log_bound(m, &f_m)
        .and_then(|eps| spec.tail_ball(&eps))
        .ok_or_else(|| Error::Domain(format!("cutoff {cutoff} too small for a certified tail")))?;
    Ok(Ball::from_rational(partial).mul(&tail))
}

/// Working mantissa for a target radius: its bit length plus the guard bits.
fn working_bits(target: &BigRational) -> u64 {
    let e = log2_upper(&target.recip()).unwrap_or(0).max(0) as u64;
    e + DEFAULT_GUARD_BITS
}

fn check_target(target: &BigRational) -> Result<()> {
    if !target.is_positive() {
        return Err(Error::Usage("target radius must be positive".into()));
    }
    Ok(())
}

/// Ball of radius `<= target_radius` containing the infinite product.
pub fn eval_product(spec: &ProductSpec, target_radius: &BigRational) -> Result<Ball> {
    check_target(target_radius)?;
    let bits = working_bits(target_radius);
    let half = target_radius / BigInt::from(2);
    let mut walker = FibWalker::new();
    let mut partial = Ball::from_int(1);
    let mut n = spec.start;
    loop {
        if n - spec.start > MAX_TERMS {
            return Err(Error::Resource(format!(
                "no certified radius after {MAX_TERMS} factors"
            )));
        }
        let f = walker.seek(spec.standard_index(n)).clone();
        partial = ball_round(&partial.mul(&Ball::from_rational(spec.factor(&f))), bits);
        n += 1;
        let m = spec.standard_index(n);
        let f_m = walker.seek(m).clone();
        let Some(eps) = spec.tail_log_bound(m, &f_m) else {
            continue;
        };
        if partial.mag_upper() * &eps > half {
            continue;
        }
        let Some(tail) = spec.tail_ball(&eps) else {
            continue;
        };
        let full = ball_round(&partial.mul(&tail), bits);
        if full.radius() <= target_radius {
            return Ok(full);
        }
    }
}

/// Exact `Σ_{n=1}^{n_max} 1/F_{2^n}`.
pub fn lucas_partial_sum(n_max: u64) -> BigRational {
    (1..=n_max)
        .map(|n| BigRational::new(BigInt::one(), fib(1u64 << n, Convention::Standard)))
        .fold(BigRational::zero(), |acc, t| acc + t)
}

/// Ball containing `Σ_{n≥1} 1/F_{2^n}` in the standard convention.
///
/// Every term is at least three times the next (`F_{2k} = F_k L_k`, `L_k >= 3`
/// for `k >= 2`), so the tail after `n <= N` is at most `(3/2)/F_{2^(N+1)}`.
pub fn eval_lucas_sum(target_radius: &BigRational) -> Result<Ball> {
    eval_lucas_sum_with(Convention::Standard, target_radius)
}

/// Same sum with the index convention made explicit.
///
/// Under the shifted convention the terms are `1/F_{2^n + 1}` (standard) and
/// the term ratio is only guaranteed to be at least 2
/// (`F_{2k+1} = F_{k+1}² + F_k² >= 2F_{k+1}` for `k >= 2`), giving a tail of
/// at most `2/F_{2^(N+1)+1}`.
pub fn eval_lucas_sum_with(conv: Convention, target_radius: &BigRational) -> Result<Ball> {
    check_target(target_radius)?;
    for n in 1..62u64 {
        let b = lucas_sum_cutoff(conv, n)?;
        if b.radius() <= target_radius {
            return Ok(b);
        }
    }
    Err(Error::Resource("lucas sum did not converge".into()))
}

/// Exact partial sum over `1 <= n <= n_max` plus the certified tail.
pub fn lucas_sum_cutoff(conv: Convention, n_max: u64) -> Result<Ball> {
    if !(1..62).contains(&n_max) {
        return Err(Error::Usage("lucas sum cutoff must be in 1..62".into()));
    }
    let (num, den) = match conv {
        Convention::Standard => (3, 2),
        Convention::Shifted => (2, 1),
    };
    let sum = (1..=n_max).fold(BigRational::zero(), |acc, n| {
        acc + BigRational::new(BigInt::one(), fib(conv.standard_index(1 << n), Convention::Standard))
    });
    let f_next = fib(conv.standard_index(1 << (n_max + 1)), Convention::Standard);
    let tail = BigRational::new(BigInt::from(num), f_next * den);
    Ok(Ball::from_interval(sum.clone(), sum + tail))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ReciprocalKind {
    /// `Σ_{n≥1} 1/F_n`
    All,
    /// `Σ_{n≥1} 1/F_{2n-1}`
    Odd,
}

impl ReciprocalKind {
    fn index(self, n: u64) -> u64 {
        match self {
            ReciprocalKind::All => n,
            ReciprocalKind::Odd => 2 * n - 1,
        }
    }
}

/// Exact sum of the first `terms` reciprocals.
pub fn reciprocal_partial_sum(kind: ReciprocalKind, terms: u64) -> BigRational {
    let mut walker = FibWalker::new();
    (1..=terms).fold(BigRational::zero(), |acc, n| {
        acc + BigRational::new(BigInt::one(), walker.seek(kind.index(n)).clone())
    })
}

/// Exact sum of the first `terms` reciprocals plus the certified tail.
pub fn reciprocal_sum_cutoff(kind: ReciprocalKind, terms: u64) -> Result<Ball> {
    if terms == 0 {
        return Err(Error::Usage("at least one term is needed".into()));
    }
    let sum = reciprocal_partial_sum(kind, terms);
    let tail = BigRational::new(BigInt::from(3), fib(kind.index(terms + 1), Convention::Standard));
    Ok(Ball::from_interval(sum.clone(), sum + tail))
}

/// Ball containing the reciprocal sum; the tail from standard index
/// `m >= 2` is at most `3/F_m`.
pub fn eval_reciprocal_sum(kind: ReciprocalKind, target_radius: &BigRational) -> Result<Ball> {
    check_target(target_radius)?;
    let bits = working_bits(target_radius);
    let mut walker = FibWalker::new();
    let mut sum = Ball::from_int(0);
    for n in 1..MAX_TERMS {
        let f = walker.seek(kind.index(n)).clone();
        sum = ball_round(&sum.add(&Ball::from_rational(BigRational::new(BigInt::one(), f))), bits);
        let m = kind.index(n + 1);
        let tail = BigRational::new(BigInt::from(3), walker.seek(m).clone());
        if tail <= *target_radius {
            let t = Ball::from_interval(BigRational::zero(), tail);
            return Ok(sum.add(&t));
        }
    }
    Err(Error::Resource("reciprocal sum did not converge".into()))
}

/// Which theta-function formula to assemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Thm1Target {
    Xi1,
    Xi2,
}

/// Assembles the theta-function expression for ξ₁ or ξ₂ with its quarter
/// power of β still symbolic:
///
/// * ξ₁ = 2 β^(-5/4) ϑ₂(β) / ϑ₄(β⁴)
/// * ξ₂ = (√5/6) β^(-5/4) ϑ₂(β) ϑ₃(β) ϑ₄(β) / ϑ₄(β⁴)
///
/// ϑ₂ carries `β^(1/4)`, so the assembled quarter exponent is `-4`.
pub fn thm1_rhs_value(which: Thm1Target, precision_digits: u32) -> Result<ThetaValue> {
    let beta = QuadElem::beta();
    let target = ten_pow_neg(precision_digits + 12);
    let t2 = theta_ball(ThetaIndex::Two, &beta, &target)?;
    let beta4 = beta.pow(4)?;
    let t4_beta4 = theta_ball(ThetaIndex::Four, &beta4, &target)?.collapse(precision_digits + 12)?;
    let assembled = match which {
        Thm1Target::Xi1 => t2.mul_quarter_power(-5).scale(&Ball::from_int(2)),
        Thm1Target::Xi2 => {
            let t3 = theta_ball(ThetaIndex::Three, &beta, &target)?;
            let t4 = theta_ball(ThetaIndex::Four, &beta, &target)?;
            let pref = QuadElem::sqrt5().scale(&crate::exactnum::rat(1, 6));
            t2.mul(&t3)?
                .mul(&t4)?
                .mul_quarter_power(-5)
                .scale(&Ball::exact(pref))
        }
    };
    assembled.scale_div(&t4_beta4)
}

/// The theta-function side of ξ₁ or ξ₂ as a plain ball.
pub fn thm1_rhs(which: Thm1Target, precision_digits: u32) -> Result<Ball> {
    if precision_digits < 10 {
        return Err(Error::Usage("theta formulas need at least 10 digits".into()));
    }
    let v = thm1_rhs_value(which, precision_digits)?;
    let ball = v.collapse(precision_digits + 12)?;
    Ok(ball_round(&ball, working_bits(&ten_pow_neg(precision_digits + 6))))
}
