//! The subcommands as plain functions. Each returns the text to write and
//! the process exit status, so tests can drive them without a subprocess.

use std::fmt;

use epir_core::analysis::verify::{self, Report};
use epir_core::analysis::{in_class_p, indicator_h, omega_bruteforce, IrreducibleCounts};
use epir_core::elgamal::Ciphertext;
use epir_core::epir::{
    blinded_plaintext, run_full, run_restricted, valid_blocks, Database, FullRandomness, QuerySpec,
    RunOptions, Transcript,
};
use epir_core::gf::text::{parse_elem, parse_kpoly, parse_lpoly};
use epir_core::gf::{find_primitive_modulus, Elem, FieldCtx, LPoly};
use epir_core::{builtin_modulus, Error};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::parallel::eta_parallel;
use crate::report::{check_rows, to_csv, to_json, BoundRow, FailureRow};
use crate::transcript::{render_json, render_text};

pub const DEFAULT_SEED: u64 = 0x4550_4952;

/// Degrees of the reference bound table.
pub const TABLE_DEGREES: [u32; 18] = [
    2, 3, 4, 5, 6, 7, 12, 20, 34, 57, 98, 169, 296, 522, 934, 1681, 3058, 5596,
];

/// Degrees up to which `bounds-table` re-derives `ω` by brute force.
pub const CROSS_CHECK_MAX_N: u32 = 8;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(Error::Parse { .. }) => 2,
            CliError::Core(_) => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// What a command produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    /// Diagnostics for stderr.
    pub notes: Vec<String>,
    pub code: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TranscriptFormat {
    Text,
    Json,
}

fn rows<T: serde::Serialize>(format: TableFormat, rows: &[T]) -> String {
    match format {
        TableFormat::Csv => to_csv(rows),
        TableFormat::Json => to_json(rows),
    }
}

fn render(format: TranscriptFormat, ctx: &FieldCtx, t: &Transcript) -> String {
    match format {
        TranscriptFormat::Text => render_text(ctx, t),
        TranscriptFormat::Json => render_json(ctx, t),
    }
}

/// The field for `(p, n)`: the built-in modulus when `modulus` is absent,
/// the smallest primitive modulus for `auto`, otherwise the parsed text,
/// which must be primitive.
pub fn field_for(p: u32, n: u32, modulus: Option<&str>) -> CliResult<FieldCtx> {
    let poly = match modulus.map(str::trim) {
        None => match builtin_modulus(n).filter(|_| p == 2) {
            Some(m) => m,
            None => {
                return Err(CliError::Usage(format!(
                    "no built-in modulus for p={p} n={n}; pass --modulus <poly> or --modulus auto"
                )))
            }
        },
        Some("auto") => find_primitive_modulus(p, n).ok_or_else(|| {
            CliError::Usage(format!("no primitive modulus found for p={p} n={n}"))
        })?,
        Some(text) => parse_kpoly(p, text)?,
    };
    let ctx = FieldCtx::new(p, n, poly)?;
    if !ctx.alpha_is_primitive() {
        return Err(CliError::Usage(format!(
            "modulus {} is irreducible but not primitive",
            ctx.modulus().display('t')
        )));
    }
    Ok(ctx)
}

/// Parses `a..b`, `a..=b` or a single degree.
pub fn parse_range(text: &str) -> CliResult<(u32, u32)> {
    let bad = || {
        CliError::Usage(format!(
            "expected a degree or a range like 2..9, got {text:?}"
        ))
    };
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(text)?;
            (n, n)
        }
    };
    if lo < 2 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Parameters of the reproduced counterexample execution.
pub mod demo {
    pub const N: u32 = 3;
    pub const X: u32 = 6;
    pub const S: u32 = 6;
    pub const R: u32 = 1;
    pub const BLOCK: &str = "g^2+g";
}

/// The counterexample run over `GF(2^3)`, optionally at another block.
///
/// Without an override the exit status is 0 iff every step reproduces the
/// known values and the run fails. With `--block` it is 0 iff the run's
/// success flag agrees with the indicator evaluated from the polynomials.
pub fn demo_counterexample(block: Option<&str>, format: TranscriptFormat) -> CliResult<Outcome> {
    let ctx = field_for(2, demo::N, None)?;
    let f = LPoly::constant(ctx.generator());
    let r = parse_elem(&ctx, block.unwrap_or(demo::BLOCK))?;
    let t = run_restricted(&ctx, demo::X, &f, demo::S, demo::R, r)?;
    let mut notes = Vec::new();

    let ok = if block.is_none() {
        let el = |s: &str| parse_elem(&ctx, s).expect("literal");
        let kp = |s: &str| parse_kpoly(2, s).expect("literal");
        let ct = |a: &str, b: &str| Ciphertext {
            c1: el(a),
            c2: el(b),
        };
        let checks: [(&str, bool); 7] = [
            ("y = g^2+1", t.y == el("g^2+1")),
            (
                "C = (g^2+1, g^2+g)",
                t.query.first() == Some(&ct("g^2+1", "g^2+g")),
            ),
            (
                "V(t) = t^2+1, W(t) = t^2+t",
                t.query_polys.first() == Some(&(kp("t^2+1"), kp("t^2+t"))),
            ),
            ("C(R) = (g+1, g^2)", t.response == Some(ct("g+1", "g^2"))),
            ("output g^2+g", t.decoded == Some(el("g^2+g"))),
            ("F(R) = g", t.expected == el("g")),
            ("run fails", !t.success),
        ];
        for (what, holds) in &checks {
            if !holds {
                notes.push(format!("mismatch: expected {what}"));
            }
        }
        checks.iter().all(|c| c.1)
    } else {
        let h = indicator_h(&ctx, demo::X, &f, demo::S, demo::R, r);
        if t.success != h {
            notes.push(format!(
                "transcript success {} disagrees with indicator {}",
                t.success, h
            ));
        }
        t.success == h
    };
    Ok(Outcome {
        output: render(format, &ctx, &t),
        notes,
        code: if ok { 0 } else { 1 },
    })
}

pub struct FailureTableArgs<'a> {
    pub degrees: (u32, u32),
    pub f: &'a str,
    pub p: u32,
    pub modulus: Option<&'a str>,
    pub workers: usize,
    pub format: TableFormat,
}

pub fn failure_table(args: &FailureTableArgs<'_>) -> CliResult<Outcome> {
    let (lo, hi) = args.degrees;
    if args.modulus.is_some_and(|m| m.trim() != "auto") && lo != hi {
        return Err(CliError::Usage(
            "an explicit --modulus needs a single degree".into(),
        ));
    }
    let mut out = Vec::new();
    let mut notes = Vec::new();
    for n in lo..=hi {
        let ctx = field_for(args.p, n, args.modulus)?;
        let f = parse_lpoly(&ctx, args.f)?;
        let f_text = ctx.display_lpoly(&f).to_string();
        if !in_class_p(&ctx, &f) {
            notes.push(format!(
                "n={n}: F = {f_text} is not in class P; the value is exploratory"
            ));
        }
        let stats = eta_parallel(&ctx, &f, args.workers);
        let (up, even) = (stats.eta_5dp(), stats.eta_5dp_half_even());
        if up != even {
            notes.push(format!("n={n}: half-up {up}, half-even {even}"));
        }
        out.push(FailureRow::new(
            &stats,
            ctx.modulus().display('t').to_string(),
            f_text,
        ));
    }
    Ok(Outcome {
        output: rows(args.format, &out),
        notes,
        code: 0,
    })
}

/// `h(n)` and `ω_p(n)` for each degree, re-derived by brute force for small
/// `n`; exits 1 if the two disagree.
pub fn bounds_table(degrees: &[u32], p: u32, format: TableFormat) -> CliResult<Outcome> {
    let mut counts = IrreducibleCounts::new(p)?;
    let mut out = Vec::new();
    let mut notes = Vec::new();
    let mut code = 0;
    for &n in degrees {
        let rec = epir_core::analysis::bounds::omega_h_with(&mut counts, n)?;
        if n <= CROSS_CHECK_MAX_N {
            match omega_bruteforce(p, n) {
                Ok(w) if w == rec.omega => {}
                Ok(w) => {
                    notes.push(format!(
                        "n={n}: brute force gives {w}, prefix search {}",
                        rec.omega
                    ));
                    code = 1;
                }
                Err(Error::IntractableSize(why)) => {
                    notes.push(format!("n={n}: brute force skipped ({why})"))
                }
                Err(e) => return Err(e.into()),
            }
        }
        out.push(BoundRow::from(&rec));
    }
    Ok(Outcome {
        output: rows(format, &out),
        notes,
        code,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    LemmasSmall,
    Bounds,
    Cosets,
    ElGamal,
    All,
}

/// Largest degree swept exhaustively by `lemmas-small`.
pub const SMALL_MAX_N: u32 = 4;
/// Degrees with computed failure tables checked by `bounds`.
pub const BOUNDS_ETA_DEGREES: std::ops::RangeInclusive<u32> = 2..=9;
/// Degrees over which the shape of `ω` and `h` is checked.
pub const BOUNDS_OMEGA_DEGREES: std::ops::RangeInclusive<u32> = 2..=600;
pub const COSET_DEGREES: std::ops::RangeInclusive<u32> = 2..=12;

pub fn run_suite(suite: Suite, workers: usize) -> CliResult<Report> {
    let mut report = Report::default();
    let pick = |s: Suite| suite == s || suite == Suite::All;
    if pick(Suite::Cosets) {
        report.extend(verify::verify_cosets(2, COSET_DEGREES)?);
        report.extend(verify::verify_irreducible_bound(2, COSET_DEGREES)?);
    }
    if pick(Suite::ElGamal) {
        report.extend(verify::verify_elgamal(&field_for(2, 3, None)?)?);
    }
    if pick(Suite::LemmasSmall) {
        for n in 2..=SMALL_MAX_N {
            report.extend(verify::verify_root_property(&field_for(2, n, None)?)?);
        }
    }
    if pick(Suite::Bounds) {
        for n in BOUNDS_ETA_DEGREES {
            let ctx = field_for(2, n, None)?;
            let stats = eta_parallel(&ctx, &LPoly::constant(ctx.generator()), workers);
            report.extend(verify::verify_failure_bounds(&stats)?);
        }
        report.extend(verify::verify_omega_shape(2, BOUNDS_OMEGA_DEGREES)?);
    }
    Ok(report)
}

/// Runs a suite; the exit status is the code of the first failed check.
pub fn verify_cmd(suite: Suite, workers: usize, format: TableFormat) -> CliResult<Outcome> {
    let report = run_suite(suite, workers)?;
    let code = report.first_failure().map_or(0, |c| c.kind.code());
    let notes = report
        .failures()
        .map(|c| {
            format!(
                "{} failed for {}: {} vs {}",
                c.kind.name(),
                c.subject,
                c.lhs,
                c.rhs
            )
        })
        .collect();
    Ok(Outcome {
        output: rows(format, &check_rows(&report)),
        notes,
        code,
    })
}

pub struct RunArgs<'a> {
    pub full: bool,
    pub p: u32,
    pub n: u32,
    pub modulus: Option<&'a str>,
    pub x: Option<u32>,
    pub f: &'a str,
    pub s: &'a [u32],
    pub r: Option<u32>,
    pub blocks: &'a [String],
    pub big_n: Option<usize>,
    pub index: usize,
    pub r_prime: Option<u32>,
    pub seed: u64,
    pub strict: bool,
    pub format: TranscriptFormat,
}

/// One execution. Missing values are drawn from a ChaCha stream seeded by
/// `seed` in the order key, blocks, exponents, `r`, `r'`. Drawn blocks come
/// from the valid set; a drawn `r` with `F(α) + r = 0` is redrawn.
pub fn run_cmd(args: &RunArgs<'_>) -> CliResult<Outcome> {
    let ctx = field_for(args.p, args.n, args.modulus)?;
    let f = parse_lpoly(&ctx, args.f)?;
    let (p, q) = (ctx.p(), ctx.q());
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut notes = Vec::new();

    let x = match args.x {
        Some(x) => x,
        None => rng.random_range(0..q),
    };
    let big_n = if args.full {
        args.big_n.unwrap_or(args.blocks.len().max(1))
    } else {
        1
    };
    if !args.full && args.big_n.is_some_and(|b| b != 1) {
        return Err(CliError::Usage(
            "the restricted protocol has exactly one block".into(),
        ));
    }
    let blocks: Vec<Elem> = if args.blocks.is_empty() {
        let valid = valid_blocks(&ctx, x);
        (0..big_n)
            .map(|_| valid[rng.random_range(0..valid.len())])
            .collect()
    } else if args.blocks.len() == big_n {
        args.blocks
            .iter()
            .map(|b| parse_elem(&ctx, b))
            .collect::<Result<_, _>>()?
    } else {
        return Err(CliError::Usage(format!(
            "expected {big_n} --R values, got {}",
            args.blocks.len()
        )));
    };
    let exponents: Vec<u32> = if args.s.is_empty() {
        (0..big_n).map(|_| rng.random_range(0..q)).collect()
    } else if args.s.len() == big_n {
        args.s.to_vec()
    } else {
        return Err(CliError::Usage(format!(
            "expected {big_n} --s values, got {}",
            args.s.len()
        )));
    };
    let blinding = match args.r {
        Some(r) => r,
        None => {
            let mut r = rng.random_range(0..p);
            while blinded_plaintext(&ctx, &f, r).is_zero() {
                notes.push(format!(
                    "warning: drawn r = {r} gives F(α)+r = 0; redrawing"
                ));
                r = rng.random_range(0..p);
            }
            r
        }
    };

    let t = if args.full {
        let r_prime = match args.r_prime {
            Some(v) => v,
            None => rng.random_range(0..q),
        };
        let spec = QuerySpec::new(f, args.index, big_n)?;
        let randomness = FullRandomness {
            blinding,
            exponents,
            r_prime,
        };
        run_full(
            &ctx,
            x,
            &spec,
            &Database::new(blocks),
            &randomness,
            RunOptions {
                strict: args.strict,
            },
        )?
    } else {
        if args.index != 1 {
            return Err(CliError::Usage(
                "the restricted protocol always retrieves block 1".into(),
            ));
        }
        if args.strict {
            Database::new(blocks.clone()).validate(&ctx, x)?;
        }
        run_restricted(&ctx, x, &f, exponents[0], blinding, blocks[0])?
    };
    Ok(Outcome {
        output: render(args.format, &ctx, &t),
        notes,
        code: 0,
    })
}

/// Degrees for `bounds-table` when none are given.
pub fn default_bound_degrees() -> Vec<u32> {
    TABLE_DEGREES.to_vec()
}
