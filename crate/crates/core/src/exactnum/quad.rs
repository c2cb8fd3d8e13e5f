use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element `a + b·√5` of the real quadratic field Q(√5).
///
/// The pair `(a, b)` is unique for a given value since √5 is irrational, so
/// structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QuadElem {
    a: BigRational,
    b: BigRational,
}

impl QuadElem {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadElem { a, b }
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadElem {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn sqrt5() -> Self {
        QuadElem {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn alpha() -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        QuadElem {
            a: half.clone(),
            b: half,
        }
    }

    /// `1/α = (√5 − 1)/2`.
    pub fn beta() -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        QuadElem { a: -half.clone(), b: half }
    }

    /// The rational part `a`.
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    /// The coefficient `b` of √5.
    pub fn sqrt5_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn conj(&self) -> Self {
        QuadElem {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// Field norm `a² − 5b² = x · conj(x)`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(5)) * &self.b * &self.b
    }

    /// Exact sign of the real number `a + b√5`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (_, Ordering::Equal) => sa,
            (Ordering::Equal, _) => sb,
            _ if sa == sb => sa,
            _ => {
                // opposite signs: compare a² with 5b²
                let a2 = &self.a * &self.a;
                let b2 = BigRational::from_integer(BigInt::from(5)) * &self.b * &self.b;
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact comparison of two field elements as real numbers.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuadElem {
            a: &self.a / &n,
            b: -&self.b / &n,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QuadElem {
            a: &self.a * r,
            b: &self.b * r,
        }
    }

    /// Integer power by binary exponentiation; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.recip()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = QuadElem::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Bit length of the largest numerator or denominator among the two components.
    pub fn max_bits(&self) -> u64 {
        [
            self.a.numer().bits(),
            self.a.denom().bits(),
            self.b.numer().bits(),
            self.b.denom().bits(),
        ]
        .into_iter()
        .max()
        .unwrap_or(0)
    }
}

impl From<BigRational> for QuadElem {
    fn from(a: BigRational) -> Self {
        QuadElem::from_rational(a)
    }
}

impl From<i64> for QuadElem {
    fn from(n: i64) -> Self {
        QuadElem::from_int(n)
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}√5", self.b);
        }
        if self.b.is_negative() {
            write!(f, "{} - {}√5", self.a, -&self.b)
        } else {
            write!(f, "{} + {}√5", self.a, self.b)
        }
    }
}

impl<'a> Add<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: &QuadElem) -> QuadElem {
        QuadElem {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'a> Sub<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: &QuadElem) -> QuadElem {
        QuadElem {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'a> Mul<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: &QuadElem) -> QuadElem {
        // (a + b√5)(c + d√5) = (ac + 5bd) + (ad + bc)√5
        let five = BigRational::from_integer(BigInt::from(5));
        QuadElem {
            a: &self.a * &rhs.a + five * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $m(self, rhs: QuadElem) -> QuadElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $m(self, rhs: &QuadElem) -> QuadElem {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn q(a: (i64, i64), b: (i64, i64)) -> QuadElem {
        QuadElem::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn conjugate_product_is_norm() {
        let x = q((1, 1), (1, 1));
        let y = q((1, 1), (-1, 1));
        assert_eq!(&x * &y, QuadElem::from_int(-4));
        assert_eq!(x.norm(), rat(-4, 1));
    }

    #[test]
    fn golden_ratio_relations() {
        let a = QuadElem::alpha();
        let b = QuadElem::beta();
        assert_eq!(QuadElem::one().checked_div(&b).unwrap(), a);
        assert_eq!(&a * &b, QuadElem::one());
        assert_eq!(&a - &b, QuadElem::one());
        assert_eq!(&a + &b, QuadElem::sqrt5());
        let b2 = &b * &b;
        assert!((&(&b2 + &b) - &QuadElem::one()).is_zero());
        assert_eq!(b.pow(4).unwrap(), q((7, 2), (-3, 2)));
        assert_eq!(b.pow(4).unwrap(), &QuadElem::from_int(2) - &b.scale(&rat(3, 1)));
        assert_eq!(b.pow(-1).unwrap(), a);
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(
            QuadElem::one().checked_div(&QuadElem::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn exact_sign() {
        assert!(QuadElem::beta().is_positive());
        assert!(q((-9, 4), (1, 1)).is_negative()); // √5 < 9/4
        assert!(q((-11, 5), (1, 1)).is_positive()); // √5 > 11/5
        assert!(q((3, 1), (-1, 1)).is_positive());
        assert_eq!(QuadElem::zero().signum(), Ordering::Equal);
    }

    #[test]
    fn display() {
        assert_eq!(QuadElem::beta().to_string(), "-1/2 + 1/2√5");
        assert_eq!(QuadElem::from_int(3).to_string(), "3");
    }
}
