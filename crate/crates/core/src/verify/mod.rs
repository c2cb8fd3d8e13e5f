//! Named checks for every identity the crate reproduces, with a three-valued
//! status and a stable JSON report.
//!
//! A numeric check evaluates both sides as balls. `fail` means the balls
//! are certifiably disjoint, `pass` means they intersect and both radii are
//! at most `10^-(p-5)`, anything else is `inconclusive`.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{
    format_sci_down, format_sci_up, rat, render_decimal, ten_pow_neg, Ball,
    QuadElem,
};
use crate::fibonacci::{convention_probe, Convention, PRINTED_XI1, PRINTED_XI2};
use crate::products::{
    eval_lucas_sum, eval_product, thm1_rhs, ProductSpec, Thm1Target,
};
use crate::qseries::{compare_sides, identity_sides, Identity};
use crate::theta::{theta_ball, ThetaIndex, ThetaValue};

pub const DEFAULT_PRECISION: u32 = 40;
pub const DEFAULT_ORDER: usize = 200;
pub const MIN_PRECISION: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// One line of the report. Field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    /// Upper bound on `|lhs − rhs|`, or a lower bound on it when failing.
    pub gap_bound: String,
    pub precision_digits: u32,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<26} {:<12} gap {:<10} lhs {} rhs {}",
            self.name, self.status, self.gap_bound, self.lhs, self.rhs
        )
    }
}

type Sides = fn(u32) -> Result<(Ball, Ball)>;

/// How a registered check computes its two sides.
#[derive(Clone)]
pub enum CheckKind {
    /// Both sides as balls at the given precision.
    Numeric(Sides),
    /// Same, with the nome supplied by the entry.
    ThetaIdentity(fn(&QuadElem, u32) -> Result<(Ball, Ball)>, QuadElem),
    /// Exact coefficient comparison of a formal identity.
    Series(Identity),
    /// Standard-convention products against the printed constants.
    Convention,
}

#[derive(Clone)]
pub struct CheckEntry {
    pub name: String,
    pub kind: CheckKind,
}

impl CheckEntry {
    pub fn numeric(name: &str, sides: Sides) -> Self {
        CheckEntry {
            name: name.to_string(),
            kind: CheckKind::Numeric(sides),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub precision_digits: u32,
    pub order: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            precision_digits: DEFAULT_PRECISION,
            order: DEFAULT_ORDER,
        }
    }
}

impl VerifyOptions {
    pub fn with_precision(precision_digits: u32) -> Self {
        VerifyOptions {
            precision_digits,
            ..Self::default()
        }
    }
}

// ---- sides ------------------------------------------------------------------

fn target(p: u32) -> BigRational {
    ten_pow_neg(p + 8)
}

fn product(spec: &ProductSpec, p: u32) -> Result<Ball> {
    eval_product(spec, &target(p))
}

fn theta_value(which: ThetaIndex, q: &QuadElem, p: u32) -> Result<ThetaValue> {
    theta_ball(which, q, &ten_pow_neg(p + 14))
}

fn theta(which: ThetaIndex, q: &QuadElem, p: u32) -> Result<Ball> {
    theta_value(which, q, p)?.collapse(p + 14)
}

/// ϑ₂⁴ with the quarter power folded in exactly.
fn theta2_fourth(q: &QuadElem, p: u32) -> Result<Ball> {
    theta_value(ThetaIndex::Two, q, p)?.pow(4).collapse(p + 14)
}

fn beta() -> QuadElem {
    QuadElem::beta()
}

fn beta4() -> QuadElem {
    QuadElem::beta().pow(4).expect("β is nonzero")
}

fn thm1_xi1(p: u32) -> Result<(Ball, Ball)> {
    Ok((product(&ProductSpec::xi1(), p)?, thm1_rhs(Thm1Target::Xi1, p + 4)?))
}

fn thm1_xi2(p: u32) -> Result<(Ball, Ball)> {
    Ok((product(&ProductSpec::xi2(), p)?, thm1_rhs(Thm1Target::Xi2, p + 4)?))
}

/// `ϑ₂(β) / ϑ₄(β⁴)` times `β^(k/4)` beyond the quarter power ϑ₂ carries.
fn theta2_over_t4b4(extra_quarters: i64, p: u32) -> Result<Ball> {
    let t2 = theta_value(ThetaIndex::Two, &beta(), p)?;
    let t4 = theta(ThetaIndex::Four, &beta4(), p)?;
    t2.mul_quarter_power(extra_quarters).scale_div(&t4)?.collapse(p + 14)
}

fn eq09101(p: u32) -> Result<(Ball, Ball)> {
    Ok((product(&ProductSpec::odd_plus(), p)?, theta2_over_t4b4(-1, p)?))
}

fn eq09102(p: u32) -> Result<(Ball, Ball)> {
    let b = beta();
    let b2 = &b * &b;
    let one = QuadElem::one();
    let pref = (&one + &b2).checked_div(&(&(&one - &b2) * &QuadElem::from_int(2)))?;
    let t2 = theta_value(ThetaIndex::Two, &b, p)?;
    let t3 = theta_value(ThetaIndex::Three, &b, p)?;
    let t4 = theta_value(ThetaIndex::Four, &b, p)?;
    let t4b4 = theta(ThetaIndex::Four, &beta4(), p)?;
    let rhs = t2
        .mul(&t3)?
        .mul(&t4)?
        .mul_quarter_power(-1)
        .scale(&Ball::exact(pref))
        .scale_div(&t4b4)?
        .collapse(p + 14)?;
    Ok((product(&ProductSpec::odd_minus(), p)?, rhs))
}

fn eq09081(p: u32) -> Result<(Ball, Ball)> {
    let xi1 = eval_product(&ProductSpec::xi1(), &ten_pow_neg(p + 12))?;
    let t3 = theta(ThetaIndex::Three, &beta(), p + 4)?;
    let t4 = theta(ThetaIndex::Four, &beta(), p + 4)?;
    let diff = t3.div(&t4)?.sub(&t4.div(&t3)?);
    let rhs = diff.mul_exact(&beta().pow(-5)?).scale(&rat(32, 1));
    Ok((xi1.pow(4), rhs))
}

fn eq113(p: u32) -> Result<(Ball, Ball)> {
    let t3 = theta(ThetaIndex::Three, &beta(), p)?;
    let t4 = theta(ThetaIndex::Four, &beta(), p)?;
    let xi1 = product(&ProductSpec::xi1(), p + 2)?;
    let xi2 = product(&ProductSpec::xi2(), p + 2)?;
    let pref = QuadElem::sqrt5().scale(&rat(12, 5));
    Ok((t3.mul(&t4), xi2.div(&xi1)?.mul_exact(&pref)))
}

fn quartic(q: &QuadElem, p: u32) -> Result<(Ball, Ball)> {
    let t3 = theta(ThetaIndex::Three, q, p)?;
    let t4 = theta(ThetaIndex::Four, q, p)?;
    Ok((t3.pow(4), theta2_fourth(q, p)?.add(&t4.pow(4))))
}

fn landen_sum(q: &QuadElem, p: u32) -> Result<(Ball, Ball)> {
    let t3q2 = theta(ThetaIndex::Three, &(q * q), p)?;
    let t3 = theta(ThetaIndex::Three, q, p)?;
    let t4 = theta(ThetaIndex::Four, q, p)?;
    Ok((t3q2.pow(2).scale(&rat(2, 1)), t3.pow(2).add(&t4.pow(2))))
}

fn landen_prod(q: &QuadElem, p: u32) -> Result<(Ball, Ball)> {
    let t4q2 = theta(ThetaIndex::Four, &(q * q), p)?;
    let t3 = theta(ThetaIndex::Three, q, p)?;
    let t4 = theta(ThetaIndex::Four, q, p)?;
    Ok((t4q2.pow(2), t3.mul(&t4)))
}

fn eq492a(p: u32) -> Result<(Ball, Ball)> {
    let b = beta();
    let t3 = theta(ThetaIndex::Three, &b, p)?;
    let t4 = theta(ThetaIndex::Four, &b, p)?;
    Ok((theta2_fourth(&b, p)?, t3.pow(4).sub(&t4.pow(4))))
}

fn eq492b(p: u32) -> Result<(Ball, Ball)> {
    let b = beta();
    let t3 = theta(ThetaIndex::Three, &b, p)?;
    let t4 = theta(ThetaIndex::Four, &b, p)?;
    let t4b4 = theta(ThetaIndex::Four, &beta4(), p)?;
    let rhs = t3.mul(&t4).mul(&t3.pow(2).add(&t4.pow(2))).scale(&rat(1, 2));
    Ok((t4b4.pow(4), rhs))
}

fn eq453a(p: u32) -> Result<(Ball, Ball)> {
    let exact = &QuadElem::one() + &QuadElem::sqrt5();
    Ok((product(&ProductSpec::even_plus(), p)?, Ball::exact(exact)))
}

fn eq453b(p: u32) -> Result<(Ball, Ball)> {
    let exact = (&QuadElem::one() + &QuadElem::sqrt5()).scale(&rat(1, 6));
    Ok((product(&ProductSpec::even_minus(), p)?, Ball::exact(exact)))
}

fn eq3484(p: u32) -> Result<(Ball, Ball)> {
    let exact = QuadElem::new(rat(5, 2), rat(-1, 2));
    Ok((eval_lucas_sum(&target(p))?, Ball::exact(exact)))
}

// ---- registry ---------------------------------------------------------------

/// Every registered check, sorted by name.
pub fn registry() -> Vec<CheckEntry> {
    let mut out = vec![
        CheckEntry::numeric("thm1_xi1", thm1_xi1),
        CheckEntry::numeric("thm1_xi2", thm1_xi2),
        CheckEntry::numeric("eq09101", eq09101),
        CheckEntry::numeric("eq09102", eq09102),
        CheckEntry::numeric("eq09081", eq09081),
        CheckEntry::numeric("eq113", eq113),
        CheckEntry::numeric("eq492a", eq492a),
        CheckEntry::numeric("eq492b", eq492b),
        CheckEntry::numeric("eq453a", eq453a),
        CheckEntry::numeric("eq453b", eq453b),
        CheckEntry::numeric("eq3484", eq3484),
        CheckEntry {
            name: "convention".into(),
            kind: CheckKind::Convention,
        },
    ];
    let nomes = [
        ("q1_4", QuadElem::from_rational(rat(1, 4))),
        ("q1_2", QuadElem::from_rational(rat(1, 2))),
        ("beta", QuadElem::beta()),
    ];
    type NomeSides = fn(&QuadElem, u32) -> Result<(Ball, Ball)>;
    let identities: [(&str, NomeSides); 3] = [
        ("quartic", quartic),
        ("landen_sum", landen_sum),
        ("landen_prod", landen_prod),
    ];
    for (id, f) in identities {
        for (tag, q) in &nomes {
            out.push(CheckEntry {
                name: format!("eq2_{id}_{tag}"),
                kind: CheckKind::ThetaIdentity(f, q.clone()),
            });
        }
    }
    for id in Identity::ALL {
        let name = match id {
            Identity::Eq47Chain => "eq47".to_string(),
            other => other.name().to_string(),
        };
        out.push(CheckEntry {
            name: format!("series_{name}"),
            kind: CheckKind::Series(id),
        });
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

pub fn check_names() -> Vec<String> {
    registry().into_iter().map(|e| e.name).collect()
}

// ---- running ----------------------------------------------------------------

fn classify(lhs: &Ball, rhs: &Ball, p: u32) -> (Status, String) {
    let tol = ten_pow_neg(p - 5);
    let (lower, upper) = lhs.distance_bounds(rhs);
    if lower.is_positive() {
        (Status::Fail, format_sci_down(&lower, 3))
    } else if lhs.radius() <= &tol && rhs.radius() <= &tol {
        (Status::Pass, format_sci_up(&upper, 3))
    } else {
        (Status::Inconclusive, format_sci_up(&upper, 3))
    }
}

fn numeric_report(name: &str, sides: Result<(Ball, Ball)>, p: u32) -> Result<(Status, String, String, String)> {
    let (lhs, rhs) = match sides {
        Ok(s) => s,
        // a side that cannot reach the requested radius is not a refutation
        Err(Error::Precision(msg)) | Err(Error::Resource(msg)) => {
            return Ok((Status::Inconclusive, msg, String::new(), "n/a".into()));
        }
        Err(e) => return Err(Error::Domain(format!("{name}: {e}"))),
    };
    let (status, gap) = classify(&lhs, &rhs, p);
    Ok((
        status,
        render_decimal(&lhs, p).text,
        render_decimal(&rhs, p).text,
        gap,
    ))
}

fn series_report(id: Identity, order: usize) -> Result<(Status, String, String, String)> {
    let sides = identity_sides(id, order)?;
    let lhs = format!("{} side 0, exact to q^{order}", id.name());
    let rhs = format!("{} other side(s), exact to q^{order}", sides.len() - 1);
    Ok(match compare_sides(&sides)? {
        None => (Status::Pass, lhs, rhs, "0".into()),
        Some((i, k)) => {
            let (a, b) = sides[0].align(&sides[i])?;
            let d = (a.coeff(k) - b.coeff(k)).abs();
            (
                Status::Fail,
                lhs,
                format!("side {i} differs at q^{k}"),
                format_sci_down(&d, 3),
            )
        }
    })
}

fn convention_report(p: u32) -> Result<(Status, String, String, String)> {
    let report = convention_probe(p)?;
    let std = &report.standard;
    let lhs = format!("{}, {}", render_at_10(&std.xi1), render_at_10(&std.xi2));
    let rhs = format!("{PRINTED_XI1}, {PRINTED_XI2}");
    let reproduces = report.reproducing.contains(&Convention::Standard);
    let status = if !std.certified {
        Status::Inconclusive
    } else if reproduces {
        Status::Pass
    } else {
        Status::Fail
    };
    // truncated printed digits are within one unit of the 10th place
    let gap = if reproduces { "1e-10".to_string() } else { "n/a".to_string() };
    Ok((status, lhs, rhs, gap))
}

fn render_at_10(text: &str) -> String {
    match text.find('.') {
        Some(i) if text.len() > i + 11 => text[..i + 11].to_string(),
        _ => text.to_string(),
    }
}

/// Runs a (possibly modified) entry.
pub fn run_check_entry(entry: &CheckEntry, opts: &VerifyOptions) -> Result<CheckReport> {
    let p = opts.precision_digits;
    if p < MIN_PRECISION {
        return Err(Error::Usage(format!("precision must be at least {MIN_PRECISION}")));
    }
    let start = Instant::now();
    let (status, lhs, rhs, gap_bound) = match &entry.kind {
        CheckKind::Numeric(f) => numeric_report(&entry.name, f(p), p)?,
        CheckKind::ThetaIdentity(f, q) => numeric_report(&entry.name, f(q, p), p)?,
        CheckKind::Series(id) => series_report(*id, opts.order)?,
        CheckKind::Convention => convention_report(p)?,
    };
    Ok(CheckReport {
        name: entry.name.clone(),
        status,
        lhs,
        rhs,
        gap_bound,
        precision_digits: p,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn find_check(name: &str) -> Result<CheckEntry> {
    registry()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Usage(format!("unknown check `{name}`")))
}

/// Both sides of a numeric check, for building modified entries.
pub fn sides(name: &str, precision_digits: u32) -> Result<(Ball, Ball)> {
    match find_check(name)?.kind {
        CheckKind::Numeric(f) => f(precision_digits),
        CheckKind::ThetaIdentity(f, q) => f(&q, precision_digits),
        _ => Err(Error::Usage(format!("`{name}` is not a numeric check"))),
    }
}

pub fn run_check(name: &str, precision_digits: u32) -> Result<CheckReport> {
    run_check_with(name, &VerifyOptions::with_precision(precision_digits))
}

pub fn run_check_with(name: &str, opts: &VerifyOptions) -> Result<CheckReport> {
    run_check_entry(&find_check(name)?, opts)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn of(reports: &[CheckReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Inconclusive => s.inconclusive += 1,
            }
        }
        s
    }

    /// 0 all pass, 1 any fail, 2 inconclusive without failures.
    pub fn exit_code(&self) -> i32 {
        if self.fail > 0 {
            1
        } else if self.inconclusive > 0 {
            2
        } else {
            0
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} pass, {} fail, {} inconclusive",
            self.pass, self.fail, self.inconclusive
        )
    }
}

/// Runs the given entries concurrently; the result is ordered by name.
pub fn run_entries(entries: &[CheckEntry], opts: &VerifyOptions) -> Result<Vec<CheckReport>> {
    let mut reports = entries
        .par_iter()
        .map(|e| run_check_entry(e, opts))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(reports)
}

/// Checks whose name equals `filter` or starts with it; all when `None`.
pub fn run_matching(filter: Option<&str>, opts: &VerifyOptions) -> Result<(Vec<CheckReport>, Summary)> {
    let entries: Vec<CheckEntry> = registry()
        .into_iter()
        .filter(|e| filter.is_none_or(|f| e.name.starts_with(f)))
        .collect();
    if entries.is_empty() {
        return Err(Error::Usage(format!(
            "no check matches `{}`",
            filter.unwrap_or_default()
        )));
    }
    let reports = run_entries(&entries, opts)?;
    let summary = Summary::of(&reports);
    Ok((reports, summary))
}

pub fn run_all(precision_digits: u32) -> Result<(Vec<CheckReport>, Summary)> {
    run_matching(None, &VerifyOptions::with_precision(precision_digits))
}

/// `b · num/den`, for building negative controls.
pub fn scaled(b: &Ball, num: i64, den: i64) -> Ball {
    b.scale(&BigRational::new(BigInt::from(num), BigInt::from(den)))
}
