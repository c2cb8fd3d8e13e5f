//! Command-line front end: `digits`, `verify`, `probe` and `series`.
//!
//! Exit codes: 0 all pass, 1 any fail, 2 inconclusive or uncertified,
//! 3 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactnum::{render_truncated, ten_pow_neg, Ball, QuadElem};
use crate::fibonacci::Convention;
use crate::products::{
    eval_lucas_sum_with, eval_product, eval_reciprocal_sum, thm1_rhs, ProductSpec,
    ReciprocalKind, Thm1Target,
};
use crate::qseries::verify_identity_named;
use crate::relations::{minimal_polynomial_search, polynomial_relation_search};
use crate::theta::{theta_ball, ThetaIndex};
use crate::verify::{run_matching, VerifyOptions, DEFAULT_ORDER, DEFAULT_PRECISION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fibotheta", version, about = "Certified Fibonacci products, theta values and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print certified leading digits of a constant.
    Digits {
        constant: String,
        #[arg(long)]
        digits: u32,
        #[arg(long, default_value = "standard")]
        convention: String,
    },
    /// Run one check, a name prefix, or the whole registry.
    Verify {
        #[arg(long)]
        check: Option<String>,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Integer-relation search over one or two constants.
    Probe {
        #[arg(long, value_delimiter = ',', required = true)]
        targets: Vec<String>,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        height: String,
        #[arg(long)]
        precision: u32,
        #[arg(long)]
        json: bool,
    },
    /// Exact q-series check of a named identity.
    Series {
        #[arg(long)]
        identity: String,
        #[arg(long)]
        order: usize,
    },
}

/// Constants known to `digits` and `probe`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    Xi1,
    Xi2,
    Gamma(u64),
    LucasSum,
    PsiAll,
    PsiOdd,
    Theta2Beta,
    Theta3Beta,
    Theta4Beta,
    Theta4Beta4,
}

impl FromStr for Constant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "xi1" => Constant::Xi1,
            "xi2" => Constant::Xi2,
            "lucas_sum" => Constant::LucasSum,
            "psi_all" => Constant::PsiAll,
            "psi_odd" => Constant::PsiOdd,
            "theta2_beta" => Constant::Theta2Beta,
            "theta3_beta" => Constant::Theta3Beta,
            "theta4_beta" => Constant::Theta4Beta,
            "theta4_beta4" => Constant::Theta4Beta4,
            _ => match s.strip_prefix("gamma").map(str::parse::<u64>) {
                Some(Ok(j)) if j >= 1 => Constant::Gamma(j),
                _ => return Err(Error::Usage(format!("unknown constant `{s}`"))),
            },
        })
    }
}

impl Constant {
    fn takes_convention(self) -> bool {
        matches!(self, Constant::Xi1 | Constant::Xi2 | Constant::Gamma(_) | Constant::LucasSum)
    }
}

/// A ball of radius `< 10^-digits` around the constant.
pub fn eval_constant(c: Constant, digits: u32, conv: Convention) -> Result<Ball> {
    if conv != Convention::Standard && !c.takes_convention() {
        return Err(Error::Usage("--convention applies to Fibonacci products and sums only".into()));
    }
    let target = ten_pow_neg(digits + 2);
    let theta = |which, q: &QuadElem| theta_ball(which, q, &ten_pow_neg(digits + 4))?.collapse(digits + 4);
    match c {
        // the theta formula is the fast path at high precision
        Constant::Xi1 if conv == Convention::Standard && digits > 60 => thm1_rhs(Thm1Target::Xi1, digits),
        Constant::Xi2 if conv == Convention::Standard && digits > 60 => thm1_rhs(Thm1Target::Xi2, digits),
        Constant::Xi1 => eval_product(&ProductSpec::xi1().with_convention(conv)?, &target),
        Constant::Xi2 => eval_product(&ProductSpec::xi2().with_convention(conv)?, &target),
        Constant::Gamma(j) => eval_product(&ProductSpec::gamma(j)?.with_convention(conv)?, &target),
        Constant::LucasSum => eval_lucas_sum_with(conv, &target),
        Constant::PsiAll => eval_reciprocal_sum(ReciprocalKind::All, &target),
        Constant::PsiOdd => eval_reciprocal_sum(ReciprocalKind::Odd, &target),
        Constant::Theta2Beta => theta(ThetaIndex::Two, &QuadElem::beta()),
        Constant::Theta3Beta => theta(ThetaIndex::Three, &QuadElem::beta()),
        Constant::Theta4Beta => theta(ThetaIndex::Four, &QuadElem::beta()),
        Constant::Theta4Beta4 => theta(ThetaIndex::Four, &QuadElem::beta().pow(4)?),
    }
}

/// Leading digits of a constant, refining until they are certified.
pub fn certified_digits(c: Constant, digits: u32, conv: Convention) -> Result<(String, bool)> {
    let mut last = None;
    for extra in [0, 8, 24] {
        let ball = eval_constant(c, digits + extra, conv)?;
        let r = render_truncated(&ball, digits);
        if r.certified {
            return Ok((r.text, true));
        }
        last = Some(r.text);
    }
    Ok((last.expect("loop ran"), false))
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::Usage(_) => EXIT_USAGE,
        Error::Precision(_) | Error::Resource(_) | Error::Cancelled => EXIT_INCONCLUSIVE,
        _ => EXIT_FAIL,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_for(&e)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Resource(format!("write failed: {e}"))
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Digits { constant, digits, convention } => {
            let c: Constant = constant.parse()?;
            let conv: Convention = convention.parse()?;
            if digits == 0 {
                return Err(Error::Usage("--digits must be positive".into()));
            }
            let (text, certified) = certified_digits(c, digits, conv)?;
            writeln!(out, "{text}").map_err(io)?;
            Ok(if certified { EXIT_OK } else { EXIT_INCONCLUSIVE })
        }
        Command::Verify { check, precision, order, json } => {
            let opts = VerifyOptions { precision_digits: precision, order };
            let (reports, summary) = run_matching(check.as_deref(), &opts)?;
            for r in &reports {
                if json {
                    writeln!(out, "{}", r.to_json_line()).map_err(io)?;
                } else {
                    writeln!(out, "{r}").map_err(io)?;
                }
            }
            if !json {
                writeln!(out, "{summary}").map_err(io)?;
            }
            Ok(summary.exit_code())
        }
        Command::Probe { targets, degree, height, precision, json } => {
            let height: BigInt = height
                .parse()
                .map_err(|_| Error::Usage(format!("bad height `{height}`")))?;
            let consts = targets
                .iter()
                .map(|t| t.parse::<Constant>())
                .collect::<Result<Vec<_>>>()?;
            // guard digits cover the growth of monomials up to degree 8
            let work = precision + 8 + 2 * degree;
            let balls = consts
                .iter()
                .map(|&c| eval_constant(c, work, Convention::Standard))
                .collect::<Result<Vec<_>>>()?;
            let result = match balls.as_slice() {
                [x] => minimal_polynomial_search(x, degree, &height, precision)?,
                [x, y] => polynomial_relation_search(x, y, degree, &height, precision)?,
                _ => return Err(Error::Usage("--targets takes one or two constants".into())),
            };
            if json {
                writeln!(out, "{}", result.to_json()).map_err(io)?;
            } else {
                writeln!(out, "targets: {}", targets.join(", ")).map_err(io)?;
                writeln!(out, "{result}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Series { identity, order } => {
            let o = verify_identity_named(&identity, order)?;
            match o.first_mismatch {
                None => writeln!(out, "{}: pass (exact to q^{})", o.identity, o.order),
                Some((side, k)) => writeln!(
                    out,
                    "{}: fail (side {side} differs at q^{k})",
                    o.identity
                ),
            }
            .map_err(io)?;
            Ok(if o.pass { EXIT_OK } else { EXIT_FAIL })
        }
    }
}
