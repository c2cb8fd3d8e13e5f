//! Jacobi theta values at exact real nomes in Q(√5).
//!
//! Partial sums are exact field elements; only the tail contributes radius:
//!
//! * ϑ₃, ϑ₄ after `|n| <= N`: `2 q^((N+1)²) / (1 - q)`
//! * ϑ₂ body after `0 <= n <= N`: `2 q^((N+1)(N+2)) / (1 - q)`
//!
//! using an upper bound `q_hi >= q` on the dyadic grid. The tail is the
//! only error, so targets are absolute: ϑ₄(β) ≈ 0.0303 keeps its absolute
//! radius but loses relative accuracy to cancellation, and a later division
//! by it magnifies the relative error accordingly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{
    ceil_rat, dyadic, enclose, fourth_root_enclosure, round_up_mantissa, scale_pow2, Ball,
    QuadElem, RADIUS_BITS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ThetaIndex {
    Two,
    Three,
    Four,
}

/// `base_q^(quarter_exp/4) · body`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaValue {
    base_q: QuadElem,
    quarter_exp: i64,
    body: Ball,
}

impl ThetaValue {
    pub fn new(base_q: QuadElem, quarter_exp: i64, body: Ball) -> Self {
        ThetaValue {
            base_q,
            quarter_exp,
            body,
        }
    }

    pub fn base_q(&self) -> &QuadElem {
        &self.base_q
    }

    pub fn quarter_exp(&self) -> i64 {
        self.quarter_exp
    }

    pub fn body(&self) -> &Ball {
        &self.body
    }

    pub fn is_quarter_free(&self) -> bool {
        self.quarter_exp.rem_euclid(4) == 0
    }

    fn same_base(&self, other: &ThetaValue) -> Result<()> {
        if self.base_q != other.base_q {
            return Err(Error::Usage("theta values over different nomes".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &ThetaValue) -> Result<ThetaValue> {
        self.same_base(other)?;
        Ok(ThetaValue {
            base_q: self.base_q.clone(),
            quarter_exp: self.quarter_exp + other.quarter_exp,
            body: self.body.mul(&other.body),
        })
    }

    pub fn div(&self, other: &ThetaValue) -> Result<ThetaValue> {
        self.same_base(other)?;
        Ok(ThetaValue {
            base_q: self.base_q.clone(),
            quarter_exp: self.quarter_exp - other.quarter_exp,
            body: self.body.div(&other.body)?,
        })
    }

    pub fn pow(&self, e: u32) -> ThetaValue {
        ThetaValue {
            base_q: self.base_q.clone(),
            quarter_exp: self.quarter_exp * e as i64,
            body: self.body.pow(e),
        }
    }

    /// Multiply by `base_q^(k/4)`.
    pub fn mul_quarter_power(&self, k: i64) -> ThetaValue {
        ThetaValue {
            base_q: self.base_q.clone(),
            quarter_exp: self.quarter_exp + k,
            body: self.body.clone(),
        }
    }

    pub fn scale(&self, k: &Ball) -> ThetaValue {
        ThetaValue {
            body: self.body.mul(k),
            ..self.clone()
        }
    }

    pub fn scale_div(&self, k: &Ball) -> Result<ThetaValue> {
        Ok(ThetaValue {
            body: self.body.div(k)?,
            ..self.clone()
        })
    }

    /// Plain ball for the value. Exact when the quarter exponent is a
    /// multiple of four; otherwise uses a fourth-root enclosure of the nome
    /// with radius `< 10^-precision_digits`.
    pub fn collapse(&self, precision_digits: u32) -> Result<Ball> {
        if self.quarter_exp == 0 {
            return Ok(self.body.clone());
        }
        let whole = self.quarter_exp.div_euclid(4);
        let rem = self.quarter_exp.rem_euclid(4) as u32;
        let exact = self.base_q.pow(whole)?;
        let body = self.body.mul_exact(&exact);
        if rem == 0 {
            return Ok(body);
        }
        let root = fourth_root_enclosure(&Ball::exact(self.base_q.clone()), precision_digits)?;
        Ok(body.mul(&root.pow(rem)))
    }
}

fn check_nome(q: &QuadElem) -> Result<()> {
    if !q.is_positive() || !(&QuadElem::one() - q).is_positive() {
        return Err(Error::Domain(format!("nome {q} is not in (0, 1)")));
    }
    Ok(())
}

/// Dyadic `q_hi` with `q <= q_hi < 1`.
fn nome_upper(q: &QuadElem) -> BigRational {
    let mut bits = 64u64;
    loop {
        let (_, hi) = enclose(q, bits + 2);
        let up = dyadic(ceil_rat(&scale_pow2(&hi, bits as i64)), bits as i64);
        if up < BigRational::one() {
            return up;
        }
        bits *= 2;
    }
}

fn tail_exponent(which: ThetaIndex, terms: u64) -> u64 {
    match which {
        ThetaIndex::Two => (terms + 1) * (terms + 2),
        ThetaIndex::Three | ThetaIndex::Four => (terms + 1) * (terms + 1),
    }
}

fn tail_bound(which: ThetaIndex, q_hi: &BigRational, terms: u64) -> BigRational {
    let e = tail_exponent(which, terms);
    let p = num_traits::pow(q_hi.clone(), e as usize);
    let two = BigRational::from_integer(BigInt::from(2));
    round_up_mantissa(&(two * p / (BigRational::one() - q_hi)), RADIUS_BITS)
}

/// Exact partial sum: ϑ₂ body over `0..=terms`, ϑ₃/ϑ₄ over `1..=terms`.
fn partial_sum(which: ThetaIndex, q: &QuadElem, terms: u64) -> QuadElem {
    let q2 = q * q;
    let two = QuadElem::from_int(2);
    match which {
        ThetaIndex::Two => {
            // exponents n(n+1): 0, 2, 6, 12, ... with steps 2(n+1)
            let mut power = QuadElem::one();
            let mut step = q2.clone();
            let mut acc = QuadElem::one();
            for _ in 0..terms {
                power = &power * &step;
                step = &step * &q2;
                acc = &acc + &power;
            }
            &acc * &two
        }
        ThetaIndex::Three | ThetaIndex::Four => {
            // exponents n²: 1, 4, 9, ... with steps 2n + 1
            let mut power = QuadElem::one();
            let mut step = q.clone();
            let mut acc = QuadElem::zero();
            for n in 1..=terms {
                power = &power * &step;
                step = &step * &q2;
                if which == ThetaIndex::Four && n.is_odd() {
                    acc = &acc - &power;
                } else {
                    acc = &acc + &power;
                }
            }
            &QuadElem::one() + &(&acc * &two)
        }
    }
}

fn value(which: ThetaIndex, q: &QuadElem, terms: u64, q_hi: &BigRational) -> ThetaValue {
    let body = Ball::new(partial_sum(which, q, terms), tail_bound(which, q_hi, terms));
    let quarter_exp = if which == ThetaIndex::Two { 1 } else { 0 };
    ThetaValue::new(q.clone(), quarter_exp, body)
}

/// Theta value from a fixed number of series terms plus its certified tail.
pub fn theta_ball_terms(which: ThetaIndex, q: &QuadElem, terms: u64) -> Result<ThetaValue> {
    check_nome(q)?;
    Ok(value(which, q, terms, &nome_upper(q)))
}

/// Theta value whose body has radius `<= target_radius`, using the fewest
/// terms whose tail bound is at most half the target.
pub fn theta_ball(which: ThetaIndex, q: &QuadElem, target_radius: &BigRational) -> Result<ThetaValue> {
    check_nome(q)?;
    if !target_radius.is_positive() {
        return Err(Error::Usage("target radius must be positive".into()));
    }
    let q_hi = nome_upper(q);
    let half = target_radius / BigInt::from(2);
    let mut terms = 0u64;
    while tail_bound(which, &q_hi, terms) > half {
        terms += 1;
        if terms > 1_000_000 {
            return Err(Error::Resource("theta series did not converge".into()));
        }
    }
    Ok(value(which, q, terms, &q_hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat, render_decimal, ten_pow_neg};

    fn beta() -> QuadElem {
        QuadElem::beta()
    }

    #[test]
    fn theta3_at_one_half() {
        // hand oracle: 1 + 2(1/2 + 1/16 + 1/512 + 1/65536 + 2^-25) plus tail < 2^-35
        let partial = int(1)
            + int(2)
                * (rat(1, 2) + rat(1, 16) + rat(1, 512) + rat(1, 65536) + rat(1, 33_554_432));
        let v = theta_ball(ThetaIndex::Three, &QuadElem::from_rational(rat(1, 2)), &ten_pow_neg(6))
            .unwrap();
        assert!(v.body().radius() < &ten_pow_neg(6));
        let oracle = Ball::new(QuadElem::from_rational(partial), rat(1, 1 << 30));
        assert!(v.body().overlaps(&oracle));
        assert_eq!(render_decimal(v.body(), 7).text, "2.1289368");
    }

    #[test]
    fn nome_must_be_inside_unit_interval() {
        for q in [QuadElem::zero(), QuadElem::one(), QuadElem::from_int(-1), QuadElem::alpha()] {
            assert!(matches!(
                theta_ball(ThetaIndex::Four, &q, &ten_pow_neg(5)),
                Err(Error::Domain(_))
            ));
        }
    }

    #[test]
    fn theta_values_at_beta() {
        let t = ten_pow_neg(20);
        let t4 = theta_ball(ThetaIndex::Four, &beta(), &t).unwrap();
        assert_eq!(render_decimal(t4.body(), 7).text, "0.0303112");
        let b4 = beta().pow(4).unwrap();
        assert_eq!(b4, &QuadElem::from_int(2) - &beta().scale(&int(3)));
        let t4b4 = theta_ball(ThetaIndex::Four, &b4, &t).unwrap();
        assert_eq!(render_decimal(t4b4.body(), 6).text, "0.709110");
        let t2 = theta_ball(ThetaIndex::Two, &beta(), &t).unwrap();
        assert_eq!(t2.quarter_exp(), 1);
        assert_eq!(render_decimal(t2.body(), 6).text, "2.881733");
        let full = t2.collapse(25).unwrap();
        assert_eq!(render_decimal(&full, 6).text, "2.555093");
    }

    #[test]
    fn collapse_cases() {
        let v = ThetaValue::new(beta(), 4, Ball::from_int(1));
        assert_eq!(v.collapse(10).unwrap(), Ball::exact(beta()));
        let body = Ball::new(QuadElem::from_rational(rat(3, 7)), rat(1, 1000));
        let v = ThetaValue::new(beta(), 0, body.clone());
        assert_eq!(v.collapse(10).unwrap(), body);
        let v = ThetaValue::new(beta(), -4, Ball::from_int(1));
        assert_eq!(v.collapse(10).unwrap(), Ball::exact(QuadElem::alpha()));
    }

    #[test]
    fn tails_nest() {
        let nomes = [
            QuadElem::from_rational(rat(1, 4)),
            QuadElem::from_rational(rat(1, 2)),
            QuadElem::from_rational(rat(3, 5)),
            beta(),
        ];
        for q in &nomes {
            for which in [ThetaIndex::Two, ThetaIndex::Three, ThetaIndex::Four] {
                for n in [1u64, 3, 7, 12] {
                    let coarse = theta_ball_terms(which, q, n).unwrap();
                    let fine = theta_ball_terms(which, q, n + 20).unwrap();
                    assert!(coarse.body().contains_ball(fine.body()), "{which:?} {q} {n}");
                }
            }
        }
    }

    #[test]
    fn monotone_in_nome() {
        let t = ten_pow_neg(30);
        let pts = [rat(1, 10), rat(1, 4), rat(1, 2), rat(3, 5), rat(4, 5)];
        let eval = |w, r: &BigRational| {
            theta_ball(w, &QuadElem::from_rational(r.clone()), &t).unwrap().body().clone()
        };
        for pair in pts.windows(2) {
            let (lo3, hi3) = (eval(ThetaIndex::Three, &pair[0]), eval(ThetaIndex::Three, &pair[1]));
            let (_, a) = lo3.bounds(128);
            let (b, _) = hi3.bounds(128);
            assert!(a < b);
            let (lo4, hi4) = (eval(ThetaIndex::Four, &pair[0]), eval(ThetaIndex::Four, &pair[1]));
            let (c, _) = lo4.bounds(128);
            let (_, d) = hi4.bounds(128);
            assert!(d < c);
        }
    }
}
