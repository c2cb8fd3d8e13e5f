use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{
    dyadic, enclose, is_compact_dyadic, log2_upper, round_to_grid, round_up_mantissa, QuadElem,
};
use crate::error::{Error, Result};

/// Mantissa width used when rounding radii upward.
pub const RADIUS_BITS: u64 = 64;

/// Extra mantissa bits kept above the working precision in long accumulations.
pub const DEFAULT_GUARD_BITS: u64 = 64;

/// Midpoint-radius enclosure `[center - radius, center + radius]` with an
/// exact Q(√5) center.
///
/// Every operation returns a ball containing all results obtainable from
/// reals drawn from the operands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    center: QuadElem,
    radius: BigRational,
}

impl Ball {
    pub fn new(center: QuadElem, radius: BigRational) -> Self {
        assert!(!radius.is_negative(), "ball radius must be nonnegative");
        Ball { center, radius }
    }

    pub fn exact(center: QuadElem) -> Self {
        Ball {
            center,
            radius: BigRational::zero(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::exact(QuadElem::from_rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::exact(QuadElem::from_int(n))
    }

    /// Smallest ball equal to the rational interval `[lo, hi]`.
    pub fn from_interval(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi);
        let two = BigRational::from_integer(BigInt::from(2));
        let radius = (&hi - &lo) / &two;
        Ball::new(QuadElem::from_rational((lo + hi) / two), radius)
    }

    pub fn center(&self) -> &QuadElem {
        &self.center
    }

    pub fn radius(&self) -> &BigRational {
        &self.radius
    }

    pub fn is_exact(&self) -> bool {
        self.radius.is_zero()
    }

    /// Rational lower and upper bounds, with the center bracketed to `2^-abs_bits`.
    pub fn bounds(&self, abs_bits: u64) -> (BigRational, BigRational) {
        let (lo, hi) = enclose(&self.center, abs_bits);
        (lo - &self.radius, hi + &self.radius)
    }

    /// Rational upper bound on `|x|` for every `x` in the ball.
    pub fn mag_upper(&self) -> BigRational {
        let (lo, hi) = self.bounds(RADIUS_BITS);
        round_up_mantissa(&lo.abs().max(hi.abs()), RADIUS_BITS)
    }

    /// Rational lower bound on `|x|`; zero when the ball may contain zero.
    pub fn mag_lower(&self, abs_bits: u64) -> BigRational {
        let (lo, hi) = self.bounds(abs_bits);
        if lo.is_positive() {
            lo
        } else if hi.is_negative() {
            -hi
        } else {
            BigRational::zero()
        }
    }

    fn with_radius(center: QuadElem, radius: BigRational) -> Self {
        Ball {
            center,
            radius: round_up_mantissa(&radius, RADIUS_BITS),
        }
    }

    pub fn add(&self, other: &Ball) -> Ball {
        Ball::with_radius(&self.center + &other.center, &self.radius + &other.radius)
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        Ball::with_radius(&self.center - &other.center, &self.radius + &other.radius)
    }

    pub fn neg(&self) -> Ball {
        Ball {
            center: -&self.center,
            radius: self.radius.clone(),
        }
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        let center = &self.center * &other.center;
        if self.is_exact() && other.is_exact() {
            return Ball::exact(center);
        }
        // |c1| r2 + |c2| r1 + r1 r2
        let mut radius = &self.radius * &other.radius;
        if !other.radius.is_zero() {
            radius += Ball::exact(self.center.clone()).mag_upper() * &other.radius;
        }
        if !self.radius.is_zero() {
            radius += Ball::exact(other.center.clone()).mag_upper() * &self.radius;
        }
        Ball::with_radius(center, radius)
    }

    /// Multiply by an exact field element.
    pub fn mul_exact(&self, k: &QuadElem) -> Ball {
        self.mul(&Ball::exact(k.clone()))
    }

    pub fn scale(&self, k: &BigRational) -> Ball {
        Ball::with_radius(self.center.scale(k), &self.radius * k.abs())
    }

    pub fn recip(&self) -> Result<Ball> {
        if self.center.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let center = self.center.recip()?;
        if self.is_exact() {
            return Ok(Ball::exact(center));
        }
        // |1/x - 1/c| <= r / ((|c| - r) |c|)
        let mut abs_bits = 64;
        loop {
            let lc = Ball::exact(self.center.clone()).mag_lower(abs_bits);
            if lc > self.radius {
                let radius = &self.radius / ((&lc - &self.radius) * &lc);
                return Ok(Ball::with_radius(center, radius));
            }
            if abs_bits > 1 << 16 {
                return Err(Error::DivisionByZero);
            }
            abs_bits *= 4;
        }
    }

    pub fn div(&self, other: &Ball) -> Result<Ball> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, e: u32) -> Ball {
        let mut acc = Ball::from_int(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact test: the field element lies in the ball.
    pub fn contains_exact(&self, v: &QuadElem) -> bool {
        let d = v - &self.center;
        let r = QuadElem::from_rational(self.radius.clone());
        !(&r - &d).is_negative() && !(&r + &d).is_negative()
    }

    /// Exact test: `other` is a subset of `self`.
    pub fn contains_ball(&self, other: &Ball) -> bool {
        let slack = &self.radius - &other.radius;
        if slack.is_negative() {
            return false;
        }
        let d = &other.center - &self.center;
        let s = QuadElem::from_rational(slack);
        !(&s - &d).is_negative() && !(&s + &d).is_negative()
    }

    /// Exact test: the two balls share at least one point.
    pub fn overlaps(&self, other: &Ball) -> bool {
        let d = &other.center - &self.center;
        let s = QuadElem::from_rational(&self.radius + &other.radius);
        !(&s - &d).is_negative() && !(&s + &d).is_negative()
    }

    /// Certified `(lower, upper)` bounds on `|x - y|` over `x ∈ self`, `y ∈ other`.
    ///
    /// The lower bound is the guaranteed separation (zero when overlapping),
    /// the upper bound the largest possible distance.
    pub fn distance_bounds(&self, other: &Ball) -> (BigRational, BigRational) {
        let d = &self.center - &other.center;
        let bits = 64 + d.max_bits() / 2;
        let (lo, hi) = enclose(&d, bits.max(RADIUS_BITS + 40));
        let r = &self.radius + &other.radius;
        let (dmin, dmax) = if lo.is_positive() {
            (lo.clone(), hi.clone())
        } else if hi.is_negative() {
            (-hi.clone(), -lo.clone())
        } else {
            (BigRational::zero(), lo.abs().max(hi.abs()))
        };
        let lower = if dmin > r {
            dmin - &r
        } else {
            BigRational::zero()
        };
        (lower, dmax + r)
    }
}

/// Rounds the center of `x` to a dyadic rational with `mantissa_bits`
/// significant bits relative to `|x|` and inflates the radius by the
/// rounding error. Centers that already fit the budget are kept as is.
///
/// Rounding collapses a Q(√5) center to a rational one.
pub fn ball_round(x: &Ball, mantissa_bits: u64) -> Ball {
    assert!(mantissa_bits >= 8, "mantissa budget must be at least 8 bits");
    let c = &x.center;
    if is_compact_dyadic(c.rational_part(), mantissa_bits + 1)
        && is_compact_dyadic(c.sqrt5_part(), mantissa_bits + 1)
    {
        return x.clone();
    }
    // exponent of |center|, floored so near-zero values stop at 2^-2p
    let (lo, hi) = enclose(c, mantissa_bits);
    let mag = lo.abs().max(hi.abs()) + dyadic(BigInt::one(), mantissa_bits as i64);
    let e = log2_upper(&mag).unwrap_or(0).max(-(mantissa_bits as i64));
    let shift = mantissa_bits as i64 - e;
    let (lo, hi) = enclose(c, (shift + 2).max(0) as u64);
    let rounded = round_to_grid(&lo, shift);
    let err = (&rounded - &lo).abs() + (&hi - &lo);
    Ball::with_radius(QuadElem::from_rational(rounded), &x.radius + err)
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = super::render_decimal(self, 20);
        write!(f, "{} ± {}", r.text, super::format_sci_up(&self.radius, 3))
    }
}
