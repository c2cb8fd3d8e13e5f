//! Exact arithmetic over the rationals and the real quadratic field Q(√5),
//! midpoint-radius balls, certified root extraction and decimal rendering.

mod ball;
mod quad;
mod render;
mod roots;

pub use ball::{ball_round, Ball, DEFAULT_GUARD_BITS, RADIUS_BITS};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use quad::QuadElem;
pub use render::{format_sci_down, format_sci_up, render_decimal, render_truncated, Rendered};
pub use roots::{
    bits_for_digits, enclose, fourth_root_enclosure, nth_root_enclosure, sqrt5_bounds,
    sqrt5_enclosure, sqrt_enclosure,
};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `10^k` as a big integer.
pub fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), k as usize)
}

/// `10^-k` as an exact rational.
pub fn ten_pow_neg(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), pow10(k))
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `m · 2^-shift` for any sign of `shift`.
pub fn dyadic(m: BigInt, shift: i64) -> BigRational {
    if shift >= 0 {
        BigRational::new(m, BigInt::one() << shift as usize)
    } else {
        BigRational::from_integer(m << (-shift) as usize)
    }
}

/// Exponent `e` with `|r| < 2^e`; `None` for zero.
pub fn log2_upper(r: &BigRational) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    let bn = r.numer().bits() as i64;
    let bd = r.denom().bits() as i64;
    Some(bn - bd + 1)
}

/// Smallest dyadic with `bits`-bit mantissa that is `>= r`. Requires `r >= 0`.
pub fn round_up_mantissa(r: &BigRational, bits: u64) -> BigRational {
    debug_assert!(!r.is_negative());
    let Some(e) = log2_upper(r) else {
        return BigRational::zero();
    };
    if r.denom().is_one() && r.numer().bits() <= bits {
        return r.clone();
    }
    let shift = bits as i64 - e;
    let scaled = scale_pow2(r, shift);
    dyadic(ceil_rat(&scaled), shift)
}

/// Nearest dyadic multiple of `2^-shift` (ties away from zero).
pub fn round_to_grid(r: &BigRational, shift: i64) -> BigRational {
    let scaled = scale_pow2(r, shift);
    dyadic(round_rat(&scaled), shift)
}

pub(crate) fn scale_pow2(r: &BigRational, shift: i64) -> BigRational {
    if shift >= 0 {
        BigRational::new(r.numer() << shift as usize, r.denom().clone())
    } else {
        BigRational::new(r.numer().clone(), r.denom() << (-shift) as usize)
    }
}

pub(crate) fn floor_rat(r: &BigRational) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub(crate) fn ceil_rat(r: &BigRational) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

/// Round half away from zero.
pub(crate) fn round_rat(r: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if r.is_negative() {
        ceil_rat(&(r - half))
    } else {
        floor_rat(&(r + half))
    }
}

/// True when `r` is `m / 2^k` with `|m|` of at most `bits` bits.
pub(crate) fn is_compact_dyadic(r: &BigRational, bits: u64) -> bool {
    let d = r.denom();
    let is_pow2 = d.is_one() || (d.trailing_zeros() == Some(d.bits() - 1));
    is_pow2 && r.numer().bits() <= bits
}
