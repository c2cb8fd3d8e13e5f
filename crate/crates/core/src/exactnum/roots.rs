//! Root enclosures by bisection over dyadic endpoints.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{dyadic, floor_rat, log2_upper, scale_pow2, Ball, QuadElem};
use crate::error::{Error, Result};

/// Finest known bracket `m / 2^k <= √5 < (m + 1) / 2^k`.
static SQRT5: RwLock<Option<(BigInt, u64)>> = RwLock::new(None);

/// Smallest bit count `b` with `2^-b < 10^-digits`.
pub fn bits_for_digits(digits: u32) -> u64 {
    // log2(10) rounded up, plus one bit of slack
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u64 + 1
}

/// Returns `m` with `m / 2^bits <= √5 < (m + 1) / 2^bits`.
///
/// The bracket is refined by bisection on `x² − 5` and cached; coarser
/// requests are served by truncating the cached bracket, so enclosures at
/// different precisions are always nested.
pub fn sqrt5_bounds(bits: u64) -> BigInt {
    {
        let guard = SQRT5.read().unwrap_or_else(|e| e.into_inner());
        if let Some((m, k)) = guard.as_ref() {
            if *k >= bits {
                return m >> (k - bits) as usize;
            }
        }
    }
    let mut guard = SQRT5.write().unwrap_or_else(|e| e.into_inner());
    let (mut m, mut k) = guard.clone().unwrap_or((BigInt::from(2), 0));
    if k >= bits {
        return m >> (k - bits) as usize;
    }
    let five = BigInt::from(5);
    while k < bits {
        // halve [m, m+1] / 2^k: test the midpoint (2m + 1) / 2^(k+1)
        let mid = (&m << 1usize) + 1;
        k += 1;
        let target = &five << (2 * k) as usize;
        m = if &mid * &mid <= target { mid } else { m << 1usize };
    }
    *guard = Some((m.clone(), k));
    m
}

/// Ball of radius `< 10^-digits` containing √5.
pub fn sqrt5_enclosure(digits: u32) -> Ball {
    let k = bits_for_digits(digits);
    let m = sqrt5_bounds(k);
    let center = dyadic((m << 1usize) + 1, k as i64 + 1);
    let radius = dyadic(BigInt::one(), k as i64 + 1);
    Ball::new(QuadElem::from_rational(center), radius)
}

/// Rational bracket `[lo, hi]` of width `<= 2^-abs_bits` around `x`.
pub fn enclose(x: &QuadElem, abs_bits: u64) -> (BigRational, BigRational) {
    let a = x.rational_part();
    let b = x.sqrt5_part();
    if b.is_zero() {
        return (a.clone(), a.clone());
    }
    // |b| · 2^-k <= 2^-abs_bits; at least ~32 decimal digits of √5
    let bmag = log2_upper(b).unwrap_or(0).max(0) as u64;
    let k = (abs_bits + bmag + 1).max(108);
    let m = sqrt5_bounds(k);
    let lo5 = dyadic(m.clone(), k as i64);
    let hi5 = dyadic(m + 1, k as i64);
    let (p, q) = (a + b * &lo5, a + b * &hi5);
    if b.is_positive() {
        (p, q)
    } else {
        (q, p)
    }
}

/// Largest integer `m >= 0` with `m^n <= t`, by bisection.
fn root_floor(t: &BigInt, n: u32) -> BigInt {
    if !t.is_positive() {
        return BigInt::zero();
    }
    let mut lo = BigInt::zero();
    let mut hi = BigInt::one() << (t.bits() / n as u64 + 1) as usize;
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1usize;
        if num_traits::pow(mid.clone(), n as usize) <= *t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `[lo, hi]` bracketing `x^(1/n)` on the `2^-k` grid; `x >= 0`.
fn root_bracket(x: &BigRational, n: u32, k: u64) -> (BigInt, BigInt) {
    let scaled = floor_rat(&scale_pow2(x, (n as u64 * k) as i64));
    let m = root_floor(&scaled, n);
    (m.clone(), m + 1)
}

/// Ball of radius `< 10^-digits` containing `x^(1/n)` for every real in `x`.
pub fn nth_root_enclosure(x: &Ball, n: u32, digits: u32) -> Result<Ball> {
    assert!(n >= 1);
    let want = bits_for_digits(digits);
    let mut extra = 8u64;
    for _ in 0..12 {
        let abs_bits = want * n as u64 + extra;
        let (lo, hi) = x.bounds(abs_bits);
        if !lo.is_positive() {
            return Err(Error::Domain(
                "root of a ball that is not certified positive".into(),
            ));
        }
        // the lower bound may be tiny; scale grid bits to its magnitude
        let small = (-log2_upper(&lo).unwrap_or(0)).max(0) as u64;
        let k = want + extra + small;
        let (m_lo, _) = root_bracket(&lo, n, k);
        let (_, m_hi) = root_bracket(&hi, n, k);
        let width = dyadic(&m_hi - &m_lo, k as i64);
        let radius = width / BigInt::from(2);
        let limit = super::ten_pow_neg(digits);
        if radius < limit {
            let center = dyadic(m_lo + m_hi, k as i64 + 1);
            return Ok(Ball::new(QuadElem::from_rational(center), radius));
        }
        extra *= 2;
    }
    Err(Error::Precision(format!(
        "input ball too wide for a {digits}-digit root enclosure"
    )))
}

/// Ball of radius `< 10^-digits` containing `x^(1/4)`.
pub fn fourth_root_enclosure(x: &Ball, digits: u32) -> Result<Ball> {
    nth_root_enclosure(x, 4, digits)
}

/// Ball of radius `< 10^-digits` containing `√x` for rational `x >= 0`.
pub fn sqrt_enclosure(x: &BigRational, digits: u32) -> Result<Ball> {
    if x.is_negative() {
        return Err(Error::Domain("square root of a negative rational".into()));
    }
    if x.is_zero() {
        return Ok(Ball::exact(QuadElem::zero()));
    }
    nth_root_enclosure(&Ball::exact(QuadElem::from_rational(x.clone())), 2, digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat, render_decimal, ten_pow_neg};

    /// Plain rational bisection on x² − 5, independent of the cached routine.
    fn bisect_sqrt5(steps: usize) -> (BigRational, BigRational) {
        let (mut lo, mut hi) = (int(2), int(3));
        for _ in 0..steps {
            let mid = (&lo + &hi) / int(2);
            if &mid * &mid <= int(5) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    }

    #[test]
    fn sqrt5_ten_digits() {
        let b = sqrt5_enclosure(10);
        assert!(b.radius() < &ten_pow_neg(10));
        let (lo, hi) = bisect_sqrt5(60);
        assert!(b.overlaps(&Ball::from_interval(lo, hi)));
        assert!(b.contains_exact(&QuadElem::sqrt5()));
        assert_eq!(render_decimal(&b, 10).text, "2.2360679775");
    }

    #[test]
    fn sqrt5_one_digit_is_within_bracket() {
        let b = sqrt5_enclosure(1);
        let (lo, hi) = b.bounds(64);
        assert!(lo >= rat(22, 10) && hi <= rat(23, 10));
    }

    #[test]
    fn sqrt5_enclosures_nest() {
        let coarse = sqrt5_enclosure(10);
        let fine = sqrt5_enclosure(20);
        assert!(coarse.contains_ball(&fine));
        let finer = sqrt5_enclosure(300);
        assert!(fine.contains_ball(&finer));
        assert!(sqrt5_enclosure(5).contains_ball(&sqrt5_enclosure(7)));
    }

    #[test]
    fn enclose_brackets_value() {
        let x = QuadElem::beta().pow(200).unwrap();
        let (lo, hi) = enclose(&x, 200);
        assert!(lo.is_positive());
        assert!(&hi - &lo <= dyadic(BigInt::one(), 200));
        // β^200 < 2^-138
        assert!(hi < dyadic(BigInt::one(), 138));
    }

    #[test]
    fn fourth_root_of_sixteen() {
        let b = fourth_root_enclosure(&Ball::exact(QuadElem::from_int(16)), 30).unwrap();
        assert!(b.contains_exact(&QuadElem::from_int(2)));
        assert!(b.radius() < &ten_pow_neg(30));
    }

    #[test]
    fn fourth_root_of_beta() {
        // rational bisection on t⁴ − β using a separate √5 bracket
        let (s_lo, s_hi) = bisect_sqrt5(80);
        let beta_lo = (&s_lo - int(1)) / int(2);
        let beta_hi = (&s_hi - int(1)) / int(2);
        let (mut lo, mut hi) = (int(0), int(1));
        for _ in 0..40 {
            let mid = (&lo + &hi) / int(2);
            let m4 = &mid * &mid * &mid * &mid;
            if m4 <= beta_lo {
                lo = mid;
            } else if m4 >= beta_hi {
                hi = mid;
            } else {
                break;
            }
        }
        let b = fourth_root_enclosure(&Ball::exact(QuadElem::beta()), 7).unwrap();
        assert!(b.radius() < &ten_pow_neg(7));
        assert!(b.overlaps(&Ball::from_interval(lo, hi)));
        assert_eq!(render_decimal(&b, 7).text, "0.8866518");
    }

    #[test]
    fn fourth_root_rejects_nonpositive() {
        let x = Ball::new(QuadElem::zero(), int(1));
        assert!(matches!(fourth_root_enclosure(&x, 5), Err(Error::Domain(_))));
    }

    #[test]
    fn sqrt_of_rational() {
        let b = sqrt_enclosure(&rat(9, 4), 20).unwrap();
        assert!(b.contains_exact(&QuadElem::from_rational(rat(3, 2))));
        let two = sqrt_enclosure(&int(2), 40).unwrap();
        let sq = two.mul(&two);
        assert!(sq.contains_exact(&QuadElem::from_int(2)));
    }
}
