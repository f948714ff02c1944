//! The `arith` command-line front end.
//!
//! Exit codes: 0 success, 1 a check evaluated to fail, 2 usage or
//! checkpoint-integrity error.

pub mod checkpoint;

use arith_core::asymptotic::{emit_figure1, format_scientific, g_asymptotic, GFormula};
use arith_core::chebyshev::{pi_segmented_count, psi_exact};
use arith_core::diagnostics::{
    check_mertens_order, check_mu_log_over_d, check_mu_over_d, check_pi_estimate,
    check_psi_identity, default_sample_count, fit_bound_constants, BoundReport, ClaimId,
};
use arith_core::inequality::{
    eval_inequality, hassani_cubic_inequality, hassani_power_inequality, scan_range,
    scan_range_with, HassaniVerdict, ScanSummary, GALWAY_X,
};
use arith_core::mertens::MertensEngine;
use arith_core::sieve::{build_mu_table, primes_in_range, SegmentPlan};
use arith_core::PrimeCountEngine;
use checkpoint::Checkpoint;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::error::Error;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "arith",
    version,
    about = "Exact arithmetic-function engines and an inequality verification harness"
)]
struct Cli {
    /// Worker threads for scans (overridden by ARITH_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write sieved Mobius values or primes as CSV.
    Sieve {
        #[arg(long)]
        limit: u64,
        #[arg(long, value_enum)]
        emit: EmitKind,
        #[arg(long)]
        out: PathBuf,
    },
    /// Mertens function M(x).
    Mertens {
        #[arg(long)]
        x: u64,
        #[arg(long, value_enum)]
        method: Option<MertensMethod>,
    },
    /// Prime count pi(x).
    Pi {
        #[arg(long)]
        x: u64,
        #[arg(long, value_enum)]
        method: Option<PiMethod>,
    },
    /// Chebyshev psi(x) by prime-power enumeration.
    Psi {
        #[arg(long)]
        x: u64,
    },
    /// Run an order-estimate check and report pass/fail.
    Check {
        /// One of: mu-over-d, mu-log-over-d, mertens-order, psi-identity,
        /// pi-estimate, pi-via-psi, pi-via-mertens.
        claim: String,
        #[arg(long)]
        max: u64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        out: OutFormat,
    },
    /// Ramanujan-inequality evaluations and scans.
    Ineq {
        #[command(subcommand)]
        cmd: IneqCmd,
    },
    /// Closed-form asymptotics of the inequality gap at x = e^k.
    Asym {
        #[command(subcommand)]
        cmd: AsymCmd,
    },
    /// Fit the two-sided pi bound constants alpha and beta.
    Bounds {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
}

#[derive(Subcommand)]
enum IneqCmd {
    /// Evaluate the inequality at one x.
    Eval {
        #[arg(long)]
        x: u64,
    },
    /// Scan a range and list counterexamples.
    Scan(ScanArgs),
    /// Evaluate at the largest known prime counterexample below 1e11.
    Galway,
    /// Generalized inequalities in log space.
    Hassani {
        #[arg(long, value_enum)]
        variant: HassaniVariant,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        x: u64,
    },
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    from: u64,
    #[arg(long)]
    to: u64,
    #[arg(long)]
    primes_only: bool,
    /// CSV output path (columns x,pi_x,pi_x_over_e,g_sign,margin_log10).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Checkpoint file; an existing valid checkpoint resumes the scan.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Points per checkpointed chunk.
    #[arg(long, default_value_t = 4_194_304)]
    chunk: u64,
}

#[derive(Subcommand)]
enum AsymCmd {
    /// The 28-row table of G(e^k) for k = 547..3247.
    Table1 {
        #[arg(long, value_enum, default_value_t = FormulaArg::TableRef)]
        formula: FormulaArg,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        out: OutFormat,
    },
    /// Series of (k, ln(-G(e^k))) for plotting.
    Figure {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        step: f64,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        out: OutFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitKind {
    Mu,
    Primes,
}

#[derive(Clone, Copy, ValueEnum)]
enum MertensMethod {
    Dense,
    Sublinear,
}

#[derive(Clone, Copy, ValueEnum)]
enum PiMethod {
    Sieve,
    Sublinear,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OutFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum HassaniVariant {
    Pow2,
    Cubic,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaArg {
    Leading,
    TableRef,
}

impl From<FormulaArg> for GFormula {
    fn from(f: FormulaArg) -> GFormula {
        match f {
            FormulaArg::Leading => GFormula::Leading,
            FormulaArg::TableRef => GFormula::TableRef,
        }
    }
}

/// Parse argv and run; returns the process exit code.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    init_threads(cli.threads);
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn init_threads(flag: Option<usize>) {
    let threads = std::env::var("ARITH_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .or(flag);
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn run(command: Command) -> Result<i32, Box<dyn Error>> {
    match command {
        Command::Sieve { limit, emit, out } => {
            let mut w = std::io::BufWriter::new(std::fs::File::create(&out)?);
            writeln!(w, "n,value")?;
            match emit {
                EmitKind::Mu => {
                    let table = build_mu_table(limit)?;
                    for (n, mu) in table.iter() {
                        writeln!(w, "{n},{mu}")?;
                    }
                }
                EmitKind::Primes => {
                    let plan = SegmentPlan::new(1, limit)?;
                    for (i, p) in primes_in_range(&plan)?.iter().enumerate() {
                        writeln!(w, "{},{}", i + 1, p)?;
                    }
                }
            }
            w.flush()?;
            println!("wrote {}", out.display());
            Ok(0)
        }
        Command::Mertens { x, method } => {
            let t0 = Instant::now();
            let (value, method_name) = match method {
                Some(MertensMethod::Dense) => {
                    let engine = MertensEngine::new(x.max(1))?;
                    (engine.mertens_dense(x)?, "dense")
                }
                Some(MertensMethod::Sublinear) | None => {
                    let engine = MertensEngine::new(MertensEngine::recommended_dense_limit(x))?;
                    (engine.mertens_sublinear(x)?, "sublinear")
                }
            };
            println!("M({x})={value}");
            println!(
                "{}",
                json!({"x": x, "m": value, "method": method_name,
                       "seconds": t0.elapsed().as_secs_f64()})
            );
            Ok(0)
        }
        Command::Pi { x, method } => {
            let t0 = Instant::now();
            let (value, method_name) = match method {
                Some(PiMethod::Sieve) => (pi_segmented_count(x), "sieve"),
                Some(PiMethod::Sublinear) => (lucy_pi_checked(x)?, "sublinear"),
                None => {
                    if x <= 100_000_000 {
                        (pi_segmented_count(x), "sieve")
                    } else {
                        (lucy_pi_checked(x)?, "sublinear")
                    }
                }
            };
            println!("{value}");
            println!(
                "{}",
                json!({"x": x, "pi": value, "method": method_name,
                       "seconds": t0.elapsed().as_secs_f64()})
            );
            Ok(0)
        }
        Command::Psi { x } => {
            let t0 = Instant::now();
            let v = psi_exact(x)?;
            println!("{}", v.psi);
            println!(
                "{}",
                json!({"x": x, "psi": v.psi, "terms": v.terms,
                       "method": "prime-powers",
                       "seconds": t0.elapsed().as_secs_f64()})
            );
            Ok(0)
        }
        Command::Check {
            claim,
            max,
            samples,
            threshold,
            out,
        } => run_check(&claim, max, samples, threshold, out),
        Command::Ineq { cmd } => run_ineq(cmd),
        Command::Asym { cmd } => run_asym(cmd),
        Command::Bounds { from, to } => {
            let fit = fit_bound_constants(from, to)?;
            println!(
                "{}",
                json!({"alpha": fit.alpha, "beta": fit.beta,
                       "range_lo": fit.range_lo, "range_hi": fit.range_hi})
            );
            Ok(0)
        }
    }
}

fn lucy_pi_checked(x: u64) -> Result<u64, Box<dyn Error>> {
    let engine = PrimeCountEngine::new(2)?;
    Ok(engine.pi_sublinear(x)?)
}

fn print_report(report: &BoundReport, out: OutFormat) {
    match out {
        OutFormat::Csv => {
            println!("x,ratio");
            for (x, r) in report.sample_points.iter().zip(&report.ratios) {
                println!("{x},{r}");
            }
        }
        OutFormat::Json => {
            let samples: Vec<_> = report
                .sample_points
                .iter()
                .zip(&report.ratios)
                .map(|(x, r)| json!({"x": x, "ratio": r}))
                .collect();
            println!(
                "{}",
                json!({"claim": report.claim.name(), "pass": report.pass,
                       "max_ratio": report.max_ratio, "threshold": report.threshold,
                       "samples": samples})
            );
        }
        OutFormat::Text => {
            println!(
                "check {}: {} (max ratio {:.6}, threshold {})",
                report.claim.name(),
                if report.pass { "PASS" } else { "FAIL" },
                report.max_ratio,
                report.threshold
            );
        }
    }
}

fn run_check(
    claim: &str,
    max: u64,
    samples: Option<usize>,
    threshold: Option<f64>,
    out: OutFormat,
) -> Result<i32, Box<dyn Error>> {
    let samples = samples.unwrap_or_else(|| default_sample_count(10, max));
    let reports: Vec<BoundReport> = match claim {
        "pi-estimate" => {
            let r = check_pi_estimate(max, samples)?;
            vec![r.via_mertens, r.via_psi]
        }
        _ => {
            let id = ClaimId::parse(claim)
                .ok_or_else(|| format!("unknown claim {claim:?}; see `arith check --help`"))?;
            match id {
                ClaimId::MuOverD => vec![check_mu_over_d(max, samples, threshold)?],
                ClaimId::MuLogOverD => vec![check_mu_log_over_d(max, samples, threshold)?],
                ClaimId::MertensOrder => {
                    let engine = MertensEngine::new(MertensEngine::recommended_dense_limit(max))?;
                    vec![check_mertens_order(&engine, max, samples, threshold)?]
                }
                ClaimId::PsiIdentity => {
                    let engine = MertensEngine::new(MertensEngine::recommended_dense_limit(max))?;
                    vec![check_psi_identity(&engine, max, samples, threshold)?]
                }
                ClaimId::PiViaPsi => {
                    let r = check_pi_estimate(max, samples)?;
                    vec![r.via_psi]
                }
                ClaimId::PiViaMertens => {
                    let r = check_pi_estimate(max, samples)?;
                    vec![r.via_mertens]
                }
            }
        }
    };
    let mut pass = true;
    for report in &reports {
        print_report(report, out);
        pass &= report.pass;
    }
    Ok(if pass { 0 } else { 1 })
}

fn report_json(r: &arith_core::InequalityReport) -> serde_json::Value {
    json!({
        "x": r.x,
        "pi_x": r.pi_x,
        "pi_x_over_e": r.pi_x_over_e,
        "lhs": r.lhs,
        "rhs": r.rhs,
        "g_sign": r.g_sign.as_str(),
        "margin_log10": r.margin_log10,
    })
}

fn verdict_json(v: &HassaniVerdict) -> serde_json::Value {
    json!({
        "x": v.x,
        "n": v.n,
        "sign": v.sign.as_str(),
        "ln_lhs": v.ln_lhs,
        "ln_rhs": v.ln_rhs,
        "margin_ln": v.margin_ln,
        "note": v.note,
    })
}

fn run_ineq(cmd: IneqCmd) -> Result<i32, Box<dyn Error>> {
    match cmd {
        IneqCmd::Eval { x } => {
            let engine = PrimeCountEngine::new(1_000_000)?;
            let r = eval_inequality(&engine, x)?;
            let verdict = match r.g_sign {
                arith_core::GSign::Negative => "HOLDS",
                arith_core::GSign::Indeterminate => "INDETERMINATE",
                _ => "FAILS",
            };
            println!(
                "inequality {verdict} at x={x} (g_sign {})",
                r.g_sign.as_str()
            );
            println!("{}", report_json(&r));
            Ok(0)
        }
        IneqCmd::Scan(args) => {
            let engine = PrimeCountEngine::new(1_000_000)?;
            let job = ScanJob {
                range_lo: args.from,
                range_hi: args.to,
                primes_only: args.primes_only,
                csv_out: args.out,
                checkpoint: args.checkpoint,
                chunk: args.chunk,
                max_chunks: None,
            };
            let outcome = run_scan(&engine, &job)?;
            print_scan_summary(&outcome.summary);
            Ok(0)
        }
        IneqCmd::Galway => {
            let engine = PrimeCountEngine::new(1_000_000)?;
            let r = eval_inequality(&engine, GALWAY_X)?;
            let verdict = if r.g_sign.is_counterexample() {
                "FAILS"
            } else {
                "holds"
            };
            println!(
                "inequality {verdict} at x={GALWAY_X} (g_sign {})",
                r.g_sign.as_str()
            );
            println!("{}", report_json(&r));
            Ok(0)
        }
        IneqCmd::Hassani { variant, n, x } => {
            let engine = PrimeCountEngine::new(1_000_000)?;
            let v = match variant {
                HassaniVariant::Pow2 => hassani_power_inequality(&engine, x, n)?,
                HassaniVariant::Cubic => hassani_cubic_inequality(&engine, x, n)?,
            };
            println!("{}", verdict_json(&v));
            Ok(0)
        }
    }
}

fn run_asym(cmd: AsymCmd) -> Result<i32, Box<dyn Error>> {
    match cmd {
        AsymCmd::Table1 { formula, out } => {
            let formula = GFormula::from(formula);
            let rows: Vec<(u32, i8, f64, String)> = (547..=3247u32)
                .step_by(100)
                .map(|k| {
                    let g = g_asymptotic(f64::from(k), formula).expect("k > 1");
                    let log10 = g.log10_mag();
                    (k, g.sign(), log10, format_scientific(g.sign(), log10))
                })
                .collect();
            match out {
                OutFormat::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|(k, sign, log10, s)| {
                            json!({"k": k, "sign": sign, "log10_abs_g": log10, "formatted": s})
                        })
                        .collect();
                    println!("{}", json!({"formula": formula.name(), "rows": rows}));
                }
                _ => {
                    println!("k,sign,log10_abs_g,formatted");
                    for (k, sign, log10, s) in rows {
                        println!("{k},{sign},{log10},{s}");
                    }
                }
            }
            Ok(0)
        }
        AsymCmd::Figure {
            from,
            to,
            step,
            out,
        } => {
            let pts = emit_figure1(from, to, step)?;
            match out {
                OutFormat::Json => {
                    let rows: Vec<_> = pts
                        .iter()
                        .map(|(k, v)| json!({"log_x": k, "ln_neg_g": v}))
                        .collect();
                    println!("{}", json!({"rows": rows}));
                }
                _ => {
                    println!("log_x,ln_neg_g");
                    for (k, v) in pts {
                        println!("{k},{v}");
                    }
                }
            }
            Ok(0)
        }
    }
}

fn print_scan_summary(s: &ScanSummary) {
    println!(
        "scanned [{}, {}] ({}): holds {}, fails {}, indeterminate {}",
        s.range_lo, s.range_hi, s.step_rule, s.holds_count, s.fails_count, s.indeterminate_count
    );
    println!(
        "{}",
        json!({
            "range_lo": s.range_lo,
            "range_hi": s.range_hi,
            "step_rule": s.step_rule,
            "holds": s.holds_count,
            "fails": s.fails_count,
            "indeterminate": s.indeterminate_count,
            "counterexamples": s.counterexamples,
        })
    );
}

/// A scan request with optional CSV streaming and checkpointing.
pub struct ScanJob {
    pub range_lo: u64,
    pub range_hi: u64,
    pub primes_only: bool,
    pub csv_out: Option<PathBuf>,
    pub checkpoint: Option<PathBuf>,
    pub chunk: u64,
    /// Stop after this many chunks (used to exercise interrupted runs).
    pub max_chunks: Option<usize>,
}

pub struct ScanOutcome {
    pub summary: ScanSummary,
    pub completed: bool,
}

fn summary_from_checkpoint(cp: &Checkpoint) -> ScanSummary {
    ScanSummary {
        range_lo: cp.range_lo,
        range_hi: cp.range_hi,
        step_rule: cp.step_rule.clone(),
        holds_count: cp.holds_count,
        fails_count: cp.fails_count,
        indeterminate_count: cp.indeterminate_count,
        counterexamples: cp.counterexamples.clone(),
    }
}

/// Run a scan in chunks, optionally streaming CSV rows and persisting a
/// checkpoint after every completed chunk. Resuming from a checkpoint
/// reproduces the uninterrupted output, CSV included.
pub fn run_scan(engine: &PrimeCountEngine, job: &ScanJob) -> Result<ScanOutcome, Box<dyn Error>> {
    if job.chunk == 0 {
        return Err("chunk size must be positive".into());
    }
    let mut cp = match &job.checkpoint {
        Some(path) if path.exists() => {
            let loaded = Checkpoint::load(path)?;
            loaded.validate_against(job.range_lo, job.range_hi, job.primes_only)?;
            loaded
        }
        _ => Checkpoint::new(job.range_lo, job.range_hi, job.primes_only),
    };
    if cp.is_complete() {
        return Ok(ScanOutcome {
            summary: summary_from_checkpoint(&cp),
            completed: true,
        });
    }
    let resuming = cp.last_completed_x + 1 > job.range_lo;
    let mut csv = match &job.csv_out {
        Some(path) => {
            let file = if resuming {
                std::fs::OpenOptions::new().append(true).open(path)?
            } else {
                std::fs::File::create(path)?
            };
            let mut w = std::io::BufWriter::new(file);
            if !resuming {
                writeln!(w, "x,pi_x,pi_x_over_e,g_sign,margin_log10")?;
            }
            Some(w)
        }
        None => None,
    };

    let mut chunks_done = 0usize;
    let mut start = cp.last_completed_x + 1;
    while start <= job.range_hi {
        if job.max_chunks.is_some_and(|m| chunks_done >= m) {
            return Ok(ScanOutcome {
                summary: summary_from_checkpoint(&cp),
                completed: false,
            });
        }
        let end = job.range_hi.min(start + job.chunk - 1);
        let sub = match csv.as_mut() {
            Some(w) => {
                let mut io_err: Option<std::io::Error> = None;
                let summary = scan_range_with(engine, start, end, job.primes_only, |r| {
                    if io_err.is_none() {
                        if let Err(e) = writeln!(
                            w,
                            "{},{},{},{},{}",
                            r.x,
                            r.pi_x,
                            r.pi_x_over_e,
                            r.g_sign.as_str(),
                            r.margin_log10
                        ) {
                            io_err = Some(e);
                        }
                    }
                })?;
                if let Some(e) = io_err {
                    return Err(e.into());
                }
                w.flush()?;
                summary
            }
            None => scan_range(engine, start, end, job.primes_only)?,
        };
        cp.holds_count += sub.holds_count;
        cp.fails_count += sub.fails_count;
        cp.indeterminate_count += sub.indeterminate_count;
        cp.counterexamples.extend(sub.counterexamples);
        cp.last_completed_x = end;
        if let Some(path) = &job.checkpoint {
            cp.save(path)?;
        }
        chunks_done += 1;
        start = end + 1;
    }
    if let Some(w) = csv.as_mut() {
        w.flush()?;
    }
    Ok(ScanOutcome {
        summary: summary_from_checkpoint(&cp),
        completed: true,
    })
}
