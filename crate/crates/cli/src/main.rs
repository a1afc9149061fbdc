//! `quartic`: Dirichlet series for quartic fields by cubic resolvent, field
//! enumeration and the verification suites.

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use quartic_core::dirichlet::{phi_k, phi_k_charsum, write_series, CharsumField, SeriesFormat};
use quartic_core::enumerate::{discover_l2, enumerate_fields, DiscTarget, SearchBudget, SearchSpec, SignatureFilter};
use quartic_core::exactmath::{parse_poly, IntPoly};
use quartic_core::numfield::{galois_type_quartic, make_field, ClassBudget, NumberField};
use quartic_core::resolvent::{
    make_quartic_record, make_quartic_record_with, quartic_from_alpha, resolvent_cubic, sextic_from_alpha,
    AlphaCharPoly,
};
use quartic_core::verify::data::{self, TableRow, SPLIT_TABLE};
use quartic_core::verify::{self as v, DiscRecord, Status, VerificationReport};
use quartic_core::{Error, Parallelism};

#[derive(Parser)]
#[command(name = "quartic", version, about)]
struct Cli {
    #[command(flatten)]
    cfg: RunConfig,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Settings shared by every subcommand.
#[derive(Args, Clone, Debug)]
struct RunConfig {
    /// Worker threads for searches; 1 runs sequentially, 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for sampled inputs in the verification suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    /// Ceiling on the |Disc| bound of any search.
    #[arg(long, global = true, env = "QUARTIC_MAX_DISC", default_value_t = 10_000_000)]
    max_disc: u64,
    /// Ceiling on the number of candidate polynomials in a search.
    #[arg(long = "budget", global = true, env = "QUARTIC_MAX_NODES", default_value_t = 2_000_000_000)]
    max_nodes: u64,
    /// Ceiling on the truncation bound X of a series.
    #[arg(long, global = true, env = "QUARTIC_MAX_X", default_value_t = 1_000_000)]
    max_x: usize,
}

impl RunConfig {
    fn budget(&self) -> SearchBudget {
        SearchBudget { max_disc: self.max_disc, max_nodes: self.max_nodes }
    }

    fn par(&self) -> Parallelism {
        Parallelism::from_jobs(self.jobs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Coefficients of Φ_k up to X.
    Phi {
        #[arg(long)]
        cubic: String,
        #[arg(long)]
        bound: usize,
        /// Φ_k⁺, counting totally real quartics only.
        #[arg(long)]
        signed: bool,
        /// Use the character-sum form instead of the Euler product.
        #[arg(long)]
        charsum: bool,
    },
    /// Fields of degree 3 or 4 by discriminant.
    Enumerate {
        #[arg(long)]
        degree: usize,
        #[arg(long, conflicts_with = "disc_bound", required_unless_present = "disc_bound")]
        disc: Option<BigInt>,
        #[arg(long)]
        disc_bound: Option<u64>,
        /// Keep quartics whose cubic resolvent is this field.
        #[arg(long)]
        resolvent: Option<String>,
        #[arg(long)]
        totally_real: bool,
    },
    /// Run verification suites and print a JSON report array.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
        /// JSON array of table rows to audit instead of the built-in table.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Resolvent data of a quartic, or the quartic and sextic of an α.
    Resolvent {
        #[arg(long, conflicts_with = "alpha", required_unless_present = "alpha")]
        quartic: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Phi,
    Tables,
    Counting,
    Congruences,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Level {
    Quick,
    Full,
}

enum Failure {
    Core(Error),
    Io(io::Error),
    Verification,
    Budget,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type CmdResult = Result<(), Failure>;

fn field(s: &str) -> Result<NumberField, Error> {
    make_field(&parse_poly(s)?)
}

fn cmd_phi(cfg: &RunConfig, cubic: &str, bound: usize, signed: bool, charsum: bool, out: &mut dyn Write) -> CmdResult {
    if bound == 0 || bound > cfg.max_x {
        return Err(Error::InvalidInput(format!("bound {bound} outside 1..={}", cfg.max_x)).into());
    }
    let k = field(cubic)?;
    if k.degree() != 3 {
        return Err(Error::InvalidInput(format!("{cubic} is not a cubic")).into());
    }
    let l2 = discover_l2(&k, signed, cfg.budget(), cfg.par())?;
    let series = if charsum {
        let fields = l2.iter().map(|r| CharsumField::new(r.clone())).collect::<Result<Vec<_>, _>>()?;
        phi_k_charsum(&k, &fields, bound, signed)?
    } else {
        phi_k(&k, &l2, bound, signed)?
    };
    let fmt = match cfg.format {
        Format::Jsonl => SeriesFormat::Jsonl,
        Format::Csv => SeriesFormat::Csv,
    };
    write_series(&series, fmt, out)?;
    Ok(())
}

fn cmd_enumerate(
    cfg: &RunConfig,
    degree: usize,
    disc: Option<BigInt>,
    disc_bound: Option<u64>,
    resolvent: Option<&str>,
    totally_real: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let target = match (disc, disc_bound) {
        (Some(d), _) => DiscTarget::Exact(d),
        (None, Some(b)) => DiscTarget::AbsBound(b),
        (None, None) => return Err(Error::InvalidInput("give --disc or --disc-bound".into()).into()),
    };
    let mut spec = SearchSpec::new(degree, target).budget(cfg.budget());
    if totally_real {
        spec = spec.signature(SignatureFilter::TotallyReal);
    }
    let k = resolvent.map(field).transpose()?;
    if let Some(k) = &k {
        spec = spec.resolvent(k.clone());
    }
    let fields = enumerate_fields(&spec, cfg.par())?;
    if cfg.format == Format::Csv {
        writeln!(out, "poly,disc,r1,r2,galois")?;
    }
    for f in &fields {
        let rec = f.record();
        match cfg.format {
            Format::Csv => writeln!(
                out,
                "{},{},{},{},{}",
                rec.poly.to_human(),
                rec.disc,
                rec.r1,
                rec.r2,
                rec.galois.clone().unwrap_or_default()
            )?,
            Format::Jsonl => match &k {
                Some(k) => {
                    let q = make_quartic_record_with(f, k.clone(), galois_type_quartic(f)?)?;
                    writeln!(out, "{}", serde_json::to_string(&q.to_json())?)?
                }
                None => writeln!(out, "{}", serde_json::to_string(&rec)?)?,
            },
        }
    }
    Ok(())
}

fn cmd_resolvent(quartic: Option<&str>, alpha: Option<&str>, out: &mut dyn Write) -> CmdResult {
    let value = if let Some(q) = quartic {
        let q = parse_poly(q)?;
        let cubic = resolvent_cubic(&q)?;
        let rec = make_quartic_record(&make_field(&q)?)?;
        json!({ "resolvent_cubic": cubic, "record": rec.to_json() })
    } else {
        let a = AlphaCharPoly::new(parse_poly(alpha.expect("clap requires one input"))?)?;
        let q = quartic_from_alpha(&a)?;
        let sextic = sextic_from_alpha(&a)?;
        let rec = make_quartic_record(&make_field(&q)?)?;
        json!({ "quartic": q, "sextic": sextic, "record": rec.to_json() })
    };
    writeln!(out, "{}", serde_json::to_string(&value)?)?;
    Ok(())
}

/// Random monic polynomials of height ≤ 20: quartics, and cubics with
/// constant term −s² so that N(α) is a square.
fn sample_polys(seed: u64, n: usize) -> (Vec<IntPoly>, Vec<AlphaCharPoly>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = || rng.gen_range(-20i64..=20);
    let quartics = (0..n).map(|_| IntPoly::from_i64(&[c(), c(), c(), c(), 1])).collect();
    let alphas = (0..n)
        .map(|_| {
            let s = c().abs() % 5 + 1;
            AlphaCharPoly(IntPoly::from_i64(&[-s * s, c(), c(), 1]))
        })
        .collect();
    (quartics, alphas)
}

fn run_suite(cfg: &RunConfig, suite: Suite, level: Level, table: &[TableRow]) -> Result<Vec<VerificationReport>, Error> {
    let full = level == Level::Full;
    let (budget, par) = (cfg.budget(), cfg.par());
    let mut out = Vec::new();
    if matches!(suite, Suite::Tables | Suite::All) {
        out.push(v::audit_split_tables(table));
        let k = field(data::K_FIVE)?;
        let ls = data::L_FIVE.iter().map(|s| field(s)).collect::<Result<Vec<_>, _>>()?;
        out.push(v::five_fields_check(&k, &ls));
    }
    if matches!(suite, Suite::Phi | Suite::All) {
        let mut cases = vec![(data::K49, 13, false), (data::K148, 12, false), (data::K229, 8, false), (data::K469, 8, true), (data::K469, 16, true)];
        if full {
            cases.extend([(data::K49, 30, false), (data::K229, 16, false), (data::K469, 16, false)]);
        }
        for (k, b, signed) in cases {
            let k = field(k)?;
            out.push(v::verify_phi(&k, b, signed, budget, par));
            if full {
                match discover_l2(&k, signed, budget, par) {
                    Ok(l2) => out.push(v::verify_charsum(&k, &l2, 200, signed)),
                    Err(e) => out.push(VerificationReport {
                        check: format!("charsum Disc(k)={}", k.disc()),
                        status: if matches!(e, Error::BudgetExceeded(_)) { Status::SkippedBudget } else { Status::Fail },
                        witness: Some(e.to_string()),
                        detail: None,
                        runtime_ms: 0,
                    }),
                }
            }
        }
    }
    if matches!(suite, Suite::Counting | Suite::All) {
        let mut ks = vec![data::K49, data::K148, data::K229, data::K469];
        if full {
            ks.push(data::K26569);
        }
        for k in ks {
            out.push(v::check_counting(&field(k)?, ClassBudget::default(), budget, par));
        }
    }
    if matches!(suite, Suite::Congruences | Suite::All) {
        let bound = if full { 20_000 } else { 2_000 };
        let mut fields = Vec::new();
        for degree in [3, 4] {
            let spec = SearchSpec::new(degree, DiscTarget::AbsBound(bound)).budget(budget);
            fields.extend(enumerate_fields(&spec, par)?);
        }
        let records: Vec<DiscRecord> = fields.iter().map(DiscRecord::of).collect();
        out.push(v::check_disc_congruences(&records));
        out.push(v::check_stickelberger(&fields, 100));
        let (q, a) = sample_polys(cfg.seed, if full { 2000 } else { 200 });
        out.push(v::check_poly_identities(&q, &a));
    }
    Ok(out)
}

fn cmd_verify(cfg: &RunConfig, suite: Suite, level: Level, table: Option<&PathBuf>, out: &mut dyn Write) -> CmdResult {
    let rows: Vec<TableRow> = match table {
        Some(p) => serde_json::from_str(&std::fs::read_to_string(p)?)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display())))?,
        None => SPLIT_TABLE.to_vec(),
    };
    let reports = run_suite(cfg, suite, level, &rows)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
    if reports.iter().any(|r| r.status == Status::Fail) {
        Err(Failure::Verification)
    } else if reports.iter().any(|r| r.status == Status::SkippedBudget) {
        Err(Failure::Budget)
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let cfg = &cli.cfg;
    let res = match &cli.cmd {
        Cmd::Phi { cubic, bound, signed, charsum } => cmd_phi(cfg, cubic, *bound, *signed, *charsum, &mut out),
        Cmd::Enumerate { degree, disc, disc_bound, resolvent, totally_real } => {
            cmd_enumerate(cfg, *degree, disc.clone(), *disc_bound, resolvent.as_deref(), *totally_real, &mut out)
        }
        Cmd::Verify { suite, level, table } => cmd_verify(cfg, *suite, *level, table.as_ref(), &mut out),
        Cmd::Resolvent { quartic, alpha } => cmd_resolvent(quartic.as_deref(), alpha.as_deref(), &mut out),
    };
    let flushed = out.flush();
    match (res, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Ok(()), Err(e)) | (Err(Failure::Io(e)), _) => {
            eprintln!("quartic: {e}");
            ExitCode::from(1)
        }
        (Err(Failure::Verification), _) => ExitCode::from(1),
        (Err(Failure::Budget), _) => ExitCode::from(3),
        (Err(Failure::Core(e)), _) => {
            eprintln!("quartic: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded(_) => 3,
                Error::Internal(_) => 1,
                _ => 2,
            })
        }
    }
}
