//! Exact truncated power series in `q` and coefficient-level identity checks.
//!
//! A [`TruncSeries`] is `q^(quarter_offset/4) · Σ_{k<=order} c_k q^k`, known
//! modulo `q^(order+1)`. Series with offsets that differ by a multiple of
//! four are aligned by shifting coefficients; other offsets never mix.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<BigRational>,
    quarter_offset: i64,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![BigRational::zero(); order + 1],
            quarter_offset: 0,
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// `c · q^k`, truncated at `order`.
    pub fn monomial(c: BigRational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>, quarter_offset: i64) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        TruncSeries {
            coeffs,
            quarter_offset,
        }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
            0,
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, c: BigRational) {
        self.coeffs[k] = c;
    }

    pub fn quarter_offset(&self) -> i64 {
        self.quarter_offset
    }

    /// Multiply by `q^(k/4)`.
    pub fn with_quarter_shift(mut self, k: i64) -> Self {
        self.quarter_offset += k;
        self
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(order + 1);
        TruncSeries {
            coeffs: c,
            quarter_offset: self.quarter_offset,
        }
    }

    /// Rewrites `self` with offset `target`, which must be lower by a multiple of 4.
    fn lower_offset_to(&self, target: i64) -> Result<Self> {
        let diff = self.quarter_offset - target;
        if diff < 0 || diff % 4 != 0 {
            return Err(Error::Usage(format!(
                "quarter offsets {} and {target} are not comparable",
                self.quarter_offset
            )));
        }
        let shift = (diff / 4) as usize;
        let order = self.order();
        let mut coeffs = vec![BigRational::zero(); order + 1];
        if shift <= order {
            coeffs[shift..].clone_from_slice(&self.coeffs[..=order - shift]);
        }
        Ok(TruncSeries {
            coeffs,
            quarter_offset: target,
        })
    }

    /// Brings both series to a common offset and order.
    pub fn align(&self, other: &Self) -> Result<(Self, Self)> {
        let off = self.quarter_offset.min(other.quarter_offset);
        let order = self.order().min(other.order());
        let a = self.lower_offset_to(off)?.truncate(order);
        let b = other.lower_offset_to(off)?.truncate(order);
        Ok((a, b))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = self.align(other)?;
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        Ok(a)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            quarter_offset: self.quarter_offset,
        }
    }

    /// Convolution truncated to the smaller order; offsets add.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncSeries {
            coeffs: out,
            quarter_offset: self.quarter_offset + other.quarter_offset,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = TruncSeries::one(self.order()).with_quarter_shift(0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitution `q -> q^k`, keeping coefficients through `order`.
    ///
    /// Requires `k · self.order() + k - 1 >= order` so every kept
    /// coefficient is determined.
    pub fn dilate(&self, k: usize, order: usize) -> Self {
        assert!(k >= 1);
        assert!(k * (self.order() + 1) > order, "dilation would invent coefficients");
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k > order {
                break;
            }
            coeffs[i * k] = c.clone();
        }
        TruncSeries {
            coeffs,
            quarter_offset: self.quarter_offset * k as i64,
        }
    }

    /// Multiply in place by `(1 + sign · q^e)`.
    fn mul_binomial(&mut self, sign: i8, e: usize) {
        let s = BigRational::from_integer(BigInt::from(sign));
        if e == 0 {
            let c = BigRational::one() + s;
            for x in &mut self.coeffs {
                *x *= &c;
            }
            return;
        }
        for k in (e..self.coeffs.len()).rev() {
            let add = &self.coeffs[k - e] * &s;
            self.coeffs[k] += add;
        }
    }

    /// Exact value of the coefficient body at a rational point (offset ignored).
    pub fn eval_body(&self, q: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * q + c)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.quarter_offset != 0 {
            write!(f, "q^({}/4)·(", self.quarter_offset)?;
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}q")?,
                _ => write!(f, "{c}q^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)?;
        if self.quarter_offset != 0 {
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ThetaSeries {
    /// `2 Σ_{n≥0} q^(n(n+1))`, carrying the `q^(1/4)` of ϑ₂ as offset 1.
    TwoBody,
    Three,
    Four,
}

/// Series of ϑ₂ (as `q^(1/4)` times its body), ϑ₃ or ϑ₄ through `q^order`.
pub fn theta_series(which: ThetaSeries, order: usize) -> TruncSeries {
    let mut s = TruncSeries::zero(order);
    let two = BigRational::from_integer(BigInt::from(2));
    match which {
        ThetaSeries::TwoBody => {
            let mut n = 0usize;
            while n * (n + 1) <= order {
                s.coeffs[n * (n + 1)] = two.clone();
                n += 1;
            }
            s.quarter_offset = 1;
        }
        ThetaSeries::Three | ThetaSeries::Four => {
            s.coeffs[0] = BigRational::one();
            let mut n = 1usize;
            while n * n <= order {
                let neg = which == ThetaSeries::Four && n % 2 == 1;
                s.coeffs[n * n] = if neg { -two.clone() } else { two.clone() };
                n += 1;
            }
        }
    }
    s
}

/// One factor family `∏_{n≥1} (1 + sign · q^(a·n + b))^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub sign: i8,
    pub a: u64,
    pub b: i64,
    pub power: u32,
}

impl Factor {
    pub const fn new(sign: i8, a: u64, b: i64, power: u32) -> Self {
        Factor { sign, a, b, power }
    }

    /// `(1 - q^(a n + b))^power`
    pub const fn minus(a: u64, b: i64, power: u32) -> Self {
        Factor::new(-1, a, b, power)
    }

    /// `(1 + q^(a n + b))^power`
    pub const fn plus(a: u64, b: i64, power: u32) -> Self {
        Factor::new(1, a, b, power)
    }
}

/// Exact truncation of a product of factor families.
pub fn product_series(factors: &[Factor], order: usize) -> Result<TruncSeries> {
    let mut s = TruncSeries::one(order);
    for f in factors {
        if f.a == 0 {
            return Err(Error::Usage("factor exponent must grow with n".into()));
        }
        if f.sign != 1 && f.sign != -1 {
            return Err(Error::Usage("factor sign must be ±1".into()));
        }
        if f.a as i64 + f.b < 0 {
            return Err(Error::Usage("factor exponent is negative at n = 1".into()));
        }
        let mut n = 1i64;
        loop {
            let e = f.a as i64 * n + f.b;
            if e > order as i64 {
                break;
            }
            for _ in 0..f.power {
                s.mul_binomial(f.sign, e as usize);
            }
            n += 1;
        }
    }
    Ok(s)
}

/// Registered formal identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// ϑ₂ = q^(1/4) ∏ (1 − q^2n)(1 + q^(2n−2))(1 + q^2n)
    Tp2,
    /// ϑ₃ = ∏ (1 − q^2n)(1 + q^(2n−1))²
    Tp3,
    /// ϑ₄ = ∏ (1 − q^2n)(1 − q^(2n−1))²
    Tp4,
    /// q^(−1/4) ϑ₂ = ∏ (1 − q^2n)(1 + q^(2n−2))(1 + q^2n)
    Eq46,
    /// ϑ₂ ϑ₃ ϑ₄ = 2 q^(1/4) ∏ (1 − q^2n)³
    Eq467,
    /// ϑ₄(q⁴) and its four product forms
    Eq47Chain,
    /// ϑ₃⁴ = ϑ₂⁴ + ϑ₄⁴
    JacobiQuartic,
    /// 2 ϑ₃²(q²) = ϑ₃²(q) + ϑ₄²(q)
    LandenSum,
    /// ϑ₄²(q²) = ϑ₃(q) ϑ₄(q)
    LandenProd,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::Tp2,
        Identity::Tp3,
        Identity::Tp4,
        Identity::Eq46,
        Identity::Eq467,
        Identity::Eq47Chain,
        Identity::JacobiQuartic,
        Identity::LandenSum,
        Identity::LandenProd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Tp2 => "tp2",
            Identity::Tp3 => "tp3",
            Identity::Tp4 => "tp4",
            Identity::Eq46 => "eq46",
            Identity::Eq467 => "eq467",
            Identity::Eq47Chain => "eq47chain",
            Identity::JacobiQuartic => "jacobi_quartic",
            Identity::LandenSum => "landen_sum",
            Identity::LandenProd => "landen_prod",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = if s == "eq47" { "eq47chain" } else { s };
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown identity `{s}`")))
    }
}

const TP2_FACTORS: [Factor; 3] = [
    Factor::minus(2, 0, 1),
    Factor::plus(2, -2, 1),
    Factor::plus(2, 0, 1),
];

/// The expressions an identity asserts to be equal, each expanded to `order`.
pub fn identity_sides(id: Identity, order: usize) -> Result<Vec<TruncSeries>> {
    use ThetaSeries::*;
    let t2 = || theta_series(TwoBody, order);
    let t3 = || theta_series(Three, order);
    let t4 = || theta_series(Four, order);
    let two = BigRational::from_integer(BigInt::from(2));
    Ok(match id {
        Identity::Tp2 => vec![
            t2(),
            product_series(&TP2_FACTORS, order)?.with_quarter_shift(1),
        ],
        Identity::Tp3 => vec![
            t3(),
            product_series(&[Factor::minus(2, 0, 1), Factor::plus(2, -1, 2)], order)?,
        ],
        Identity::Tp4 => vec![
            t4(),
            product_series(&[Factor::minus(2, 0, 1), Factor::minus(2, -1, 2)], order)?,
        ],
        Identity::Eq46 => vec![
            t2().with_quarter_shift(-1),
            product_series(&TP2_FACTORS, order)?,
        ],
        Identity::Eq467 => vec![
            t2().mul(&t3()).mul(&t4()),
            product_series(&[Factor::minus(2, 0, 3)], order)?
                .scale(&two)
                .with_quarter_shift(1),
        ],
        Identity::Eq47Chain => vec![
            t4().dilate(4, order),
            product_series(&[Factor::minus(8, 0, 1), Factor::minus(8, -4, 2)], order)?,
            product_series(&[Factor::minus(4, 0, 1), Factor::minus(8, -4, 1)], order)?,
            product_series(
                &[Factor::minus(4, 0, 1), Factor::minus(4, -2, 1), Factor::plus(4, -2, 1)],
                order,
            )?,
            product_series(&[Factor::minus(2, 0, 1), Factor::plus(4, -2, 1)], order)?,
        ],
        Identity::JacobiQuartic => vec![t3().pow(4), t2().pow(4).add(&t4().pow(4))?],
        Identity::LandenSum => {
            let t3sq = t3().dilate(2, order);
            vec![
                t3sq.mul(&t3sq).scale(&two),
                t3().pow(2).add(&t4().pow(2))?,
            ]
        }
        Identity::LandenProd => {
            let t4sq = t4().dilate(2, order);
            vec![t4sq.mul(&t4sq), t3().mul(&t4())]
        }
    })
}

/// First coefficient index where two series differ after alignment.
pub fn first_difference(lhs: &TruncSeries, rhs: &TruncSeries) -> Result<Option<usize>> {
    let (a, b) = lhs.align(rhs)?;
    Ok(a.coeffs.iter().zip(&b.coeffs).position(|(x, y)| x != y))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityOutcome {
    pub identity: Identity,
    pub order: usize,
    pub pass: bool,
    /// `(side, coefficient)`: side `i` differs from side 0 first at `q^coefficient`.
    pub first_mismatch: Option<(usize, usize)>,
}

/// Compares every side of a chain against the first one.
pub fn compare_sides(sides: &[TruncSeries]) -> Result<Option<(usize, usize)>> {
    for (i, s) in sides.iter().enumerate().skip(1) {
        if let Some(k) = first_difference(&sides[0], s)? {
            return Ok(Some((i, k)));
        }
    }
    Ok(None)
}

/// Expands every side of `id` to `order` and compares coefficients exactly.
pub fn verify_identity(id: Identity, order: usize) -> Result<IdentityOutcome> {
    let sides = identity_sides(id, order)?;
    let first_mismatch = compare_sides(&sides)?;
    Ok(IdentityOutcome {
        identity: id,
        order,
        pass: first_mismatch.is_none(),
        first_mismatch,
    })
}

/// Same as [`verify_identity`] with the identity given by name.
pub fn verify_identity_named(name: &str, order: usize) -> Result<IdentityOutcome> {
    verify_identity(name.parse()?, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    fn ints(s: &TruncSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn small_products() {
        let a = TruncSeries::from_ints(&[1, 1, 0]);
        let b = TruncSeries::from_ints(&[1, -1, 0]);
        assert_eq!(ints(&a.mul(&b)), vec![1, 0, -1]);
        assert_eq!(ints(&a.mul(&a)), vec![1, 2, 1]);
    }

    #[test]
    fn two_squares_counts() {
        // r₂(k): number of (x, y) ∈ Z² with x² + y² = k
        let order = 8usize;
        let brute: Vec<i64> = (0..=order as i64)
            .map(|k| {
                let mut c = 0;
                for x in -3i64..=3 {
                    for y in -3i64..=3 {
                        if x * x + y * y == k {
                            c += 1;
                        }
                    }
                }
                c
            })
            .collect();
        let t3 = theta_series(ThetaSeries::Three, order);
        assert_eq!(ints(&t3.mul(&t3)), brute);
        assert_eq!(&brute[..6], &[1, 4, 4, 0, 4, 8]);
    }

    #[test]
    fn theta_series_read_off() {
        assert_eq!(
            ints(&theta_series(ThetaSeries::Three, 9)),
            vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]
        );
        assert_eq!(ints(&theta_series(ThetaSeries::Four, 4)), vec![1, -2, 0, 0, 2]);
        let t2 = theta_series(ThetaSeries::TwoBody, 6);
        assert_eq!(ints(&t2), vec![2, 0, 2, 0, 0, 0, 2]);
        assert_eq!(t2.quarter_offset(), 1);
    }

    #[test]
    fn product_series_examples() {
        // oracle: multiply (1 - q^2)(1 - q^4)(1 - q^6) directly
        let mut direct = TruncSeries::one(6);
        for n in 1..=3 {
            direct = direct.mul(&TruncSeries::one(6).sub(&TruncSeries::monomial(int(1), 2 * n, 6)).unwrap());
        }
        let p = product_series(&[Factor::minus(2, 0, 1)], 6).unwrap();
        assert_eq!(p, direct);
        assert_eq!(ints(&p), vec![1, 0, -1, 0, -1, 0, 0]);
        let p = product_series(&[Factor::plus(2, -1, 2)], 2).unwrap();
        assert_eq!(ints(&p), vec![1, 2, 1]);
        let p = product_series(&[Factor::minus(5, 3, 1)], 6).unwrap();
        assert_eq!(p, TruncSeries::one(6));
        assert!(product_series(&[Factor::minus(0, 1, 1)], 6).is_err());
    }

    #[test]
    fn factor_order_is_irrelevant() {
        let fs = [Factor::minus(2, 0, 1), Factor::plus(2, -1, 2), Factor::plus(3, 1, 1)];
        let a = product_series(&fs, 60).unwrap();
        let mut rev = fs;
        rev.reverse();
        assert_eq!(a, product_series(&rev, 60).unwrap());
    }

    #[test]
    fn every_identity_holds_to_order_200() {
        for id in Identity::ALL {
            let out = verify_identity(id, 200).unwrap();
            assert!(out.pass, "{id}: {:?}", out.first_mismatch);
        }
    }

    #[test]
    fn flipped_factor_sign_is_detected() {
        let t3 = theta_series(ThetaSeries::Three, 50);
        let bad = product_series(&[Factor::plus(2, 0, 1), Factor::plus(2, -1, 2)], 50).unwrap();
        assert_eq!(first_difference(&t3, &bad).unwrap(), Some(2));
    }

    #[test]
    fn single_coefficient_mutations_are_detected() {
        for id in Identity::ALL {
            let sides = identity_sides(id, 40).unwrap();
            for side in 0..sides.len() {
                for k in [0usize, 1, 7, 40] {
                    let mut mutated = sides.clone();
                    let c = mutated[side].coeff(k) + int(1);
                    mutated[side].set_coeff(k, c);
                    let found = compare_sides(&mutated).unwrap();
                    assert!(found.is_some(), "{id} side {side} coeff {k}");
                }
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
        assert_eq!("eq47".parse::<Identity>().unwrap(), Identity::Eq47Chain);
        assert!("tp5".parse::<Identity>().is_err());
    }

    #[test]
    fn incompatible_offsets_are_rejected() {
        let a = TruncSeries::one(5);
        let b = TruncSeries::one(5).with_quarter_shift(1);
        assert!(a.add(&b).is_err());
    }

    fn series(order: usize) -> impl Strategy<Value = TruncSeries> {
        proptest::collection::vec((-9i64..10, 1i64..4), order + 1).prop_map(|v| {
            TruncSeries::from_coeffs(v.into_iter().map(|(n, d)| rat(n, d)).collect(), 0)
        })
    }

    proptest! {
        #[test]
        fn dilation_is_a_ring_homomorphism(a in series(12), b in series(12)) {
            let order = 24;
            let lhs = a.mul(&b).dilate(2, order);
            let rhs = a.dilate(2, order).mul(&b.dilate(2, order));
            prop_assert_eq!(&lhs, &rhs);
            let sum = a.add(&b).unwrap().dilate(2, order);
            prop_assert_eq!(sum, a.dilate(2, order).add(&b.dilate(2, order)).unwrap());
            let ab = a.mul(&b);
            for k in 0..=12 {
                prop_assert_eq!(lhs.coeff(2 * k), ab.coeff(k));
            }
        }
    }
}
