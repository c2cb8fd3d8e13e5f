use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{bits_for_digits, ceil_rat, enclose, floor_rat, pow10, round_rat, Ball};

/// A decimal rendering of a ball center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rendered {
    pub text: String,
    /// Radius below half a unit in the last printed place.
    pub certified: bool,
}

/// Prints the center of `x` rounded to `digits` decimal places.
pub fn render_decimal(x: &Ball, digits: u32) -> Rendered {
    let (lo, _) = enclose(x.center(), bits_for_digits(digits) + 24);
    let scaled = lo * BigRational::from_integer(pow10(digits));
    let n = round_rat(&scaled);
    let text = format_fixed(&n, digits);
    let half_ulp = BigRational::new(BigInt::from(1), pow10(digits) * 2);
    Rendered {
        text,
        certified: x.radius() < &half_ulp,
    }
}

/// The leading `digits` decimals of the value, truncated toward zero as in
/// "13.1509666577…". Certified iff every point of the ball has the same
/// leading digits and sign.
pub fn render_truncated(x: &Ball, digits: u32) -> Rendered {
    let scale = BigRational::from_integer(pow10(digits));
    let (lo, hi) = x.bounds(bits_for_digits(digits) + 24);
    let (c, _) = enclose(x.center(), bits_for_digits(digits) + 24);
    let t_lo = (&lo * &scale).to_integer();
    let t_hi = (&hi * &scale).to_integer();
    let same_sign = lo.is_positive() || hi.is_negative();
    Rendered {
        text: format_fixed(&(c * scale).to_integer(), digits),
        certified: same_sign && t_lo == t_hi,
    }
}

fn format_fixed(n: &BigInt, digits: u32) -> String {
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let d = digits as usize;
    let body = if d == 0 {
        s
    } else if s.len() <= d {
        format!("0.{}{}", "0".repeat(d - s.len()), s)
    } else {
        let (i, f) = s.split_at(s.len() - d);
        format!("{i}.{f}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// `floor(log10 |r|)` for nonzero `r`.
fn decimal_exponent(r: &BigRational) -> i64 {
    let r = r.abs();
    let bits = r.numer().bits() as i64 - r.denom().bits() as i64;
    let mut e = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let ten = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(pow10(k as u32))
        } else {
            BigRational::new(BigInt::from(1), pow10((-k) as u32))
        }
    };
    while ten(e) > r {
        e -= 1;
    }
    while ten(e + 1) <= r {
        e += 1;
    }
    e
}

fn format_sci(r: &BigRational, sig: u32, up: bool) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let mut e = decimal_exponent(&a);
    let shift = sig as i64 - 1 - e;
    let scaled = if shift >= 0 {
        &a * BigRational::from_integer(pow10(shift as u32))
    } else {
        &a / BigRational::from_integer(pow10((-shift) as u32))
    };
    // rounding direction applies to the magnitude
    let mut m = if up != neg {
        ceil_rat(&scaled)
    } else {
        floor_rat(&scaled)
    };
    if m == pow10(sig) {
        m = pow10(sig - 1);
        e += 1;
    }
    let digits = m.to_string();
    let mantissa = if digits.len() > 1 {
        format!("{}.{}", &digits[..1], &digits[1..])
    } else {
        digits
    };
    format!("{}{}e{}", if neg { "-" } else { "" }, mantissa, e)
}

/// Scientific notation rounded toward +∞ (an upper bound).
pub fn format_sci_up(r: &BigRational, sig: u32) -> String {
    format_sci(r, sig.max(1), true)
}

/// Scientific notation rounded toward −∞ (a lower bound).
pub fn format_sci_down(r: &BigRational, sig: u32) -> String {
    format_sci(r, sig.max(1), false)
}
