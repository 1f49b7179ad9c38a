use std::io::Write;

use clap::{Parser, Subcommand};
use eisenstein_core::census::census;
use eisenstein_core::identity::{
    decide_with, decide_with_oracle_at, tbreak_check_at, wild_counterexample, with_precision_retry,
};
use eisenstein_core::metric::{distance_e, distance_p};
use eisenstein_core::norm_graded::graded_norm_with;
use eisenstein_core::ramification::RamificationData;
use eisenstein_core::{BaseField, EisensteinPoly, Error};
use serde_json::Value;

use crate::expr::{parse_poly, ParseError, PolyExpr};
use crate::report;

#[derive(Debug, Parser)]
#[command(
    name = "eisen",
    version,
    about = "Distances, ramification breaks and identity tests for Eisenstein polynomials over Q_p"
)]
struct Cli {
    /// The prime p of the base field Q_p.
    #[arg(short = 'p', global = true)]
    prime: Option<u64>,
    /// Working precision in p-adic digits (default 32e).
    #[arg(long, global = true)]
    prec: Option<u32>,
    /// Emit JSON instead of TSV.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// v(f, g) for Eisenstein f, g; with --resultant, v_p(Res(f, g)) for monic f, g.
    Distance {
        #[arg(short = 'f')]
        f: String,
        #[arg(short = 'g')]
        g: String,
        #[arg(long)]
        resultant: bool,
    },
    /// Ramification data of a Galois Eisenstein polynomial.
    Ram {
        #[arg(short = 'f')]
        f: String,
    },
    /// Do f and g define the same extension?
    Decide {
        #[arg(short = 'f')]
        f: String,
        #[arg(short = 'g')]
        g: String,
        /// Settle the question by root finding, whatever the bounds say.
        #[arg(long)]
        oracle: bool,
    },
    /// Probe the g_u family at distance exactly u_break.
    Tbreak {
        #[arg(short = 'f')]
        f: String,
    },
    /// Graded norm map N_n with its theta image and cokernel.
    Normmap {
        #[arg(short = 'f')]
        f: String,
        #[arg(short = 'n')]
        n: u32,
    },
    /// Classes of Eisenstein polynomials with coefficients in [0, p^B).
    Census {
        #[arg(short = 'e')]
        e: usize,
        #[arg(short = 'B')]
        bound: u32,
    },
}

#[derive(Debug, thiserror::Error)]
enum AppError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
}

impl AppError {
    fn kind(&self) -> &'static str {
        match self {
            AppError::Core(e) => e.kind(),
            AppError::Parse(_) => "ParseError",
            AppError::Usage(_) => "UsageError",
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            AppError::Parse(_) | AppError::Usage(_) => 2,
            AppError::Core(e) => exit_code(e),
        }
    }
}

/// 2 for bad input, 3 for precision exhaustion, 4 for domain errors, 1 for
/// internal failures.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotPrime(_)
        | Error::ZeroPrecision
        | Error::NotMonic
        | Error::ConstantPolynomial
        | Error::NotEisenstein { .. }
        | Error::DegreeMismatch { .. }
        | Error::PrimeMismatch { .. }
        | Error::BadUnitClass { .. }
        | Error::InvalidArgument(_) => 2,
        Error::InsufficientPrecision(_) => 3,
        Error::NotGalois { .. }
        | Error::NotConstructible(_)
        | Error::NonIntegerBreak(_)
        | Error::UnsupportedMultipleRoot => 4,
        Error::MixedExtensions | Error::NonUnit | Error::NotDivisible | Error::Inconsistent(_) => 1,
    }
}

struct Ctx {
    p: u64,
    prec: Option<u32>,
}

impl Ctx {
    fn eisenstein(&self, text: &str) -> Result<EisensteinPoly, AppError> {
        let PolyExpr { poly, .. } = parse_poly(text)?;
        Ok(EisensteinPoly::from_poly(&poly, self.p)?)
    }

    fn precision(&self, f: &EisensteinPoly) -> u32 {
        self.prec
            .unwrap_or_else(|| BaseField::default_precision(f.degree()))
    }

    /// Runs `op` at the working precision, once more at double on failure.
    fn retrying<T>(
        &self,
        f: &EisensteinPoly,
        op: impl FnMut(u32) -> Result<T, Error>,
    ) -> Result<T, AppError> {
        Ok(with_precision_retry(self.precision(f), 1, op)?)
    }

    fn ramification(&self, f: &EisensteinPoly) -> Result<RamificationData, AppError> {
        self.retrying(f, |prec| RamificationData::new(f, prec))
    }
}

/// The document to print, and whether plain mode should print it bare.
fn dispatch(cli: &Cli) -> Result<(Value, bool), AppError> {
    let p = cli
        .prime
        .ok_or_else(|| AppError::Usage("the prime -p is required".into()))?;
    if cli.prec == Some(0) {
        return Err(Error::ZeroPrecision.into());
    }
    BaseField::new(p, 1)?;
    let ctx = Ctx { p, prec: cli.prec };
    Ok(match &cli.command {
        Command::Distance {
            f,
            g,
            resultant: true,
        } => {
            let (pf, pg) = (parse_poly(f)?, parse_poly(g)?);
            let v = distance_p(&pf.poly, &pg.poly, p)?;
            (
                report::resultant_distance(&pf.to_string(), &pg.to_string(), p, v),
                true,
            )
        }
        Command::Distance { f, g, .. } => {
            let (f, g) = (ctx.eisenstein(f)?, ctx.eisenstein(g)?);
            (report::distance(&f, &g, distance_e(&f, &g)?), true)
        }
        Command::Ram { f } => {
            let f = ctx.eisenstein(f)?;
            (report::ramification(&ctx.ramification(&f)?), false)
        }
        Command::Decide { f, g, oracle } => {
            let (f, g) = (ctx.eisenstein(f)?, ctx.eisenstein(g)?);
            let rd = ctx.ramification(&f)?;
            let outcome = if *oracle {
                ctx.retrying(&f, |prec| decide_with_oracle_at(&rd, &g, prec))?
            } else {
                decide_with(&rd, &g)?
            };
            (report::decision(&f, &g, &outcome), false)
        }
        Command::Tbreak { f } => {
            let f = ctx.eisenstein(f)?;
            let rd = ctx.ramification(&f)?;
            let check = ctx.retrying(&f, |prec| tbreak_check_at(&rd, prec))?;
            (
                report::break_check(&f, &check, wild_counterexample(&rd)),
                false,
            )
        }
        Command::Normmap { f, n } => {
            let f = ctx.eisenstein(f)?;
            let rd = ctx.ramification(&f)?;
            (report::norm_map(&graded_norm_with(&rd, *n)?)?, false)
        }
        Command::Census { e, bound } => (report::census(&census(p, *e, *bound)?), false),
    })
}

fn render(doc: &Value, json: bool, bare: bool) -> String {
    if json {
        serde_json::to_string_pretty(doc).expect("JSON values serialize") + "\n"
    } else if bare {
        format!("{}\n", report::to_tsv(&doc["distance"]).trim_end())
    } else {
        report::to_tsv(doc)
    }
}

/// Runs the command line `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e);
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e);
                    2
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok((doc, bare)) => {
            let _ = out.write_all(render(&doc, cli.json, bare).as_bytes());
            0
        }
        Err(e) => {
            if cli.json {
                let doc = serde_json::json!({ "error": e.to_string(), "kind": e.kind() });
                let _ = out.write_all(render(&doc, true, false).as_bytes());
            } else {
                let _ = writeln!(err, "error[{}]: {}", e.kind(), e);
            }
            e.exit_code()
        }
    }
}
