//! Integer-relation search over certified constants.
//!
//! Candidates come from LLL-reducing the lattice spanned by the rows
//! `[e_i | round(10^P · x_i)]`. The lattice step is a heuristic; a candidate
//! is only accepted after ball arithmetic certifies
//! `|Σ a_i x_i| < 10^(-P/2)` and `max |a_i| <= max_height`.
//!
//! A "not found" result means no relation exists within the searched
//! height, degree and precision. It is evidence, not a proof of
//! independence.

mod lll;

pub use lll::{lll_reduce, CancelToken, Delta};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactnum::{
    bits_for_digits, enclose, format_sci_up, pow10, round_rat, ten_pow_neg, Ball,
};

pub const MIN_DIMENSION: usize = 2;
pub const MAX_DIMENSION: usize = 16;

/// Attached to every negative outcome.
pub const NOT_FOUND_NOTE: &str =
    "no relation within the search bounds: evidence, not proof, of independence";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchParams {
    pub dimension: usize,
    pub max_height: BigInt,
    pub precision_digits: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationResult {
    pub found: bool,
    /// Content-free, with the last nonzero entry positive.
    pub coefficients: Option<Vec<BigInt>>,
    /// Certified `|Σ a_i x_i|` bound of the accepted relation, or of the best
    /// in-height candidate when nothing was accepted.
    pub residual_bound: Option<BigRational>,
    pub search_params: SearchParams,
    /// Monomial exponents `(i, j)` for `x^i y^j` when the search ran over a
    /// monomial basis.
    pub monomials: Option<Vec<(u32, u32)>>,
}

impl RelationResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "found": self.found,
            "coefficients": self.coefficients.as_ref().map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            "relation": self.relation_text(),
            "residual_bound": self.residual_bound.as_ref().map(|r| format_sci_up(r, 3)),
            "search_params": {
                "dimension": self.search_params.dimension,
                "max_height": self.search_params.max_height.to_string(),
                "precision_digits": self.search_params.precision_digits,
            },
            "note": if self.found { "certified relation" } else { NOT_FOUND_NOTE },
        })
    }

    /// The relation as a polynomial when a monomial basis is known.
    pub fn relation_text(&self) -> Option<String> {
        let c = self.coefficients.as_ref()?;
        Some(match &self.monomials {
            Some(m) => polynomial_text(c, m),
            None => c
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(i, a)| format!("{a}·v{i}"))
                .collect::<Vec<_>>()
                .join(" + "),
        })
    }
}

impl fmt::Display for RelationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.search_params;
        writeln!(
            f,
            "dimension {}, height <= {}, precision {} digits",
            p.dimension, p.max_height, p.precision_digits
        )?;
        let residual = self
            .residual_bound
            .as_ref()
            .map(|r| format_sci_up(r, 3))
            .unwrap_or_else(|| "n/a".into());
        match (&self.coefficients, self.found) {
            (Some(c), true) => {
                let list: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                writeln!(f, "found: ({})", list.join(", "))?;
                if let Some(t) = self.relation_text() {
                    writeln!(f, "relation: {t} = 0")?;
                }
                write!(f, "certified residual <= {residual}")
            }
            _ => {
                writeln!(f, "not found (best candidate residual {residual})")?;
                write!(f, "{NOT_FOUND_NOTE}")
            }
        }
    }
}

/// `(i, j)` exponent pairs for `x^i y^j` with `i + j <= total_degree`, in
/// ascending graded-lex order with `x > y`.
pub fn monomials(total_degree: u32) -> Vec<(u32, u32)> {
    (0..=total_degree)
        .flat_map(|d| (0..=d).map(move |i| (i, d - i)))
        .collect()
}

fn term(c: &BigInt, var: &str, first: bool) -> String {
    let sign = if c.is_negative() {
        if first { "-" } else { " - " }
    } else if first {
        ""
    } else {
        " + "
    };
    let a = c.abs();
    if var.is_empty() {
        format!("{sign}{a}")
    } else if a.is_one() {
        format!("{sign}{var}")
    } else {
        format!("{sign}{a}{var}")
    }
}

fn monomial_name(i: u32, j: u32) -> String {
    let p = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    format!("{}{}", p("x", i), p("y", j))
}

/// Highest monomial first, as polynomials are usually written.
pub fn polynomial_text(coeffs: &[BigInt], monos: &[(u32, u32)]) -> String {
    let mut out = String::new();
    for (c, &(i, j)) in coeffs.iter().zip(monos).rev() {
        if c.is_zero() {
            continue;
        }
        out.push_str(&term(c, &monomial_name(i, j), out.is_empty()));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Divides out the content and makes the last nonzero entry positive.
pub fn normalize(coeffs: &[BigInt]) -> Vec<BigInt> {
    let g = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return coeffs.to_vec();
    }
    let flip = coeffs.iter().rev().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
    coeffs
        .iter()
        .map(|c| {
            let v = c / &g;
            if flip {
                -v
            } else {
                v
            }
        })
        .collect()
}

/// Certified upper bound on `|Σ a_i x_i|`, with the center bracketed to
/// `2^-abs_bits`.
pub fn residual_bound(values: &[Ball], coeffs: &[BigInt], abs_bits: u64) -> BigRational {
    let sum = values
        .iter()
        .zip(coeffs)
        .fold(Ball::from_int(0), |acc, (x, a)| {
            acc.add(&x.scale(&BigRational::from_integer(a.clone())))
        });
    let (lo, hi) = sum.bounds(abs_bits);
    lo.abs().max(hi.abs())
}

fn residual_bits(precision_digits: u32) -> u64 {
    bits_for_digits(precision_digits) + 64
}

/// Acceptance test for a candidate relation.
pub fn certify(values: &[Ball], coeffs: &[BigInt], max_height: &BigInt, precision_digits: u32) -> Option<BigRational> {
    if coeffs.iter().all(|c| c.is_zero()) || coeffs.len() != values.len() {
        return None;
    }
    if coeffs.iter().any(|c| c.abs() > *max_height) {
        return None;
    }
    let r = residual_bound(values, coeffs, residual_bits(precision_digits));
    // r < 10^(-P/2)  <=>  r² · 10^P < 1
    let accepted = &r * &r * BigRational::from_integer(pow10(precision_digits)) < BigRational::one();
    accepted.then_some(r)
}

fn scaled_integer(x: &Ball, precision_digits: u32) -> BigInt {
    let (lo, _) = enclose(x.center(), bits_for_digits(precision_digits) * 2 + 16);
    round_rat(&(lo * BigRational::from_integer(pow10(precision_digits))))
}

/// Integer relation search with the default (never cancelled) token.
pub fn find_integer_relation(values: &[Ball], max_height: &BigInt, precision_digits: u32) -> Result<RelationResult> {
    find_integer_relation_with(values, max_height, precision_digits, &CancelToken::new())
}

pub fn find_integer_relation_with(
    values: &[Ball],
    max_height: &BigInt,
    precision_digits: u32,
    cancel: &CancelToken,
) -> Result<RelationResult> {
    let n = values.len();
    if !(MIN_DIMENSION..=MAX_DIMENSION).contains(&n) {
        return Err(Error::Usage(format!(
            "dimension {n} outside {MIN_DIMENSION}..={MAX_DIMENSION}"
        )));
    }
    if !max_height.is_positive() {
        return Err(Error::Usage("max height must be positive".into()));
    }
    let limit = ten_pow_neg(precision_digits);
    if values.iter().any(|v| v.radius() >= &limit) {
        return Err(Error::Precision(format!(
            "every input needs radius < 1e-{precision_digits}"
        )));
    }
    let basis: Vec<Vec<BigInt>> = values
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let mut row = vec![BigInt::zero(); n + 1];
            row[i] = BigInt::one();
            row[n] = scaled_integer(x, precision_digits);
            row
        })
        .collect();
    let reduced = lll_reduce(basis, Delta::default(), cancel)?;

    let mut best: Option<(Vec<BigInt>, BigRational)> = None;
    let mut best_rejected: Option<BigRational> = None;
    for row in &reduced {
        let a = normalize(&row[..n]);
        if a.iter().all(|c| c.is_zero()) || a.iter().any(|c| c.abs() > *max_height) {
            continue;
        }
        match certify(values, &a, max_height, precision_digits) {
            Some(r) => {
                let better = best.as_ref().is_none_or(|(b, _)| height(&a) < height(b));
                if better {
                    best = Some((a, r));
                }
            }
            None => {
                let r = residual_bound(values, &a, residual_bits(precision_digits));
                if best_rejected.as_ref().is_none_or(|b| &r < b) {
                    best_rejected = Some(r);
                }
            }
        }
    }
    let search_params = SearchParams {
        dimension: n,
        max_height: max_height.clone(),
        precision_digits,
    };
    Ok(match best {
        Some((a, r)) => RelationResult {
            found: true,
            coefficients: Some(a),
            residual_bound: Some(r),
            search_params,
            monomials: None,
        },
        None => RelationResult {
            found: false,
            coefficients: None,
            residual_bound: best_rejected,
            search_params,
            monomials: None,
        },
    })
}

fn height(a: &[BigInt]) -> BigInt {
    a.iter().map(|c| c.abs()).max().unwrap_or_default()
}

/// Largest `p <= requested` with every radius below `10^-p`.
fn usable_precision(values: &[Ball], requested: u32) -> Result<u32> {
    let mut p = requested;
    while p > 0 {
        let limit = ten_pow_neg(p);
        if values.iter().all(|v| v.radius() < &limit) {
            return Ok(p);
        }
        p -= 1;
    }
    Err(Error::Precision("inputs too wide for any relation search".into()))
}

/// Lowest-degree integer polynomial vanishing at `x`, trying degrees
/// `1..=max_degree` in turn. Coefficients are listed from the constant term up.
pub fn minimal_polynomial_search(
    x: &Ball,
    max_degree: u32,
    max_height: &BigInt,
    precision_digits: u32,
) -> Result<RelationResult> {
    minimal_polynomial_search_with(x, max_degree, max_height, precision_digits, &CancelToken::new())
}

pub fn minimal_polynomial_search_with(
    x: &Ball,
    max_degree: u32,
    max_height: &BigInt,
    precision_digits: u32,
    cancel: &CancelToken,
) -> Result<RelationResult> {
    if !(1..=8).contains(&max_degree) {
        return Err(Error::Usage("degree must be in 1..=8".into()));
    }
    let mut powers = vec![Ball::from_int(1), x.clone()];
    for _ in 2..=max_degree {
        let next = powers.last().unwrap().mul(x);
        powers.push(next);
    }
    let p = usable_precision(&powers, precision_digits)?;
    let mut last = None;
    for d in 1..=max_degree as usize {
        let mut r = find_integer_relation_with(&powers[..=d], max_height, p, cancel)?;
        r.monomials = Some((0..=d as u32).map(|i| (i, 0)).collect());
        if r.found {
            return Ok(r);
        }
        last = Some(r);
    }
    Ok(last.expect("at least one degree searched"))
}

/// Integer polynomial relation `P(x, y) = 0` of total degree at most
/// `total_degree`, over the monomials of [`monomials`].
pub fn polynomial_relation_search(
    x: &Ball,
    y: &Ball,
    total_degree: u32,
    max_height: &BigInt,
    precision_digits: u32,
) -> Result<RelationResult> {
    polynomial_relation_search_with(x, y, total_degree, max_height, precision_digits, &CancelToken::new())
}

pub fn polynomial_relation_search_with(
    x: &Ball,
    y: &Ball,
    total_degree: u32,
    max_height: &BigInt,
    precision_digits: u32,
    cancel: &CancelToken,
) -> Result<RelationResult> {
    if !(1..=4).contains(&total_degree) {
        return Err(Error::Usage("total degree must be in 1..=4".into()));
    }
    let monos = monomials(total_degree);
    let xp: Vec<Ball> = (0..=total_degree).scan(Ball::from_int(1), |acc, k| {
        let cur = acc.clone();
        if k < total_degree {
            *acc = acc.mul(x);
        }
        Some(cur)
    }).collect();
    let yp: Vec<Ball> = (0..=total_degree).scan(Ball::from_int(1), |acc, k| {
        let cur = acc.clone();
        if k < total_degree {
            *acc = acc.mul(y);
        }
        Some(cur)
    }).collect();
    let values: Vec<Ball> = monos
        .iter()
        .map(|&(i, j)| xp[i as usize].mul(&yp[j as usize]))
        .collect();
    let p = usable_precision(&values, precision_digits)?;
    let mut r = find_integer_relation_with(&values, max_height, p, cancel)?;
    r.monomials = Some(monos);
    Ok(r)
}
