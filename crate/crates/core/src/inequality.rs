//! Exact evaluation and scanning of the prime-counting inequality
//! `pi(x)^2 < (e x / log x) pi(x/e)`.
//!
//! The gap G(x) = pi(x)^2 - (e x / log x) pi(floor(x/e)) is evaluated with
//! exact pi values; the left side is an exact integer square, the right side
//! is computed to ~5e-16 relative error. A sign is only reported when the
//! error interval around lhs - rhs excludes zero; otherwise the evaluator
//! escalates to double-double and, failing that, reports indeterminate.

use crate::chebyshev::PrimeCountEngine;
use crate::error::{Error, Result};
use crate::logmag::{lm_add, LogMagnitude};
use crate::numeric::{floor_div_e, floor_div_e_pow, floor_mul_e, DDouble};
use crate::sieve::primes_in_range;
use crate::sieve::SegmentPlan;
use rayon::prelude::*;

/// Largest prime below 1e11 violating the inequality.
pub const GALWAY_X: u64 = 38_358_837_677;
/// Inequality evaluation is supported up to this argument.
pub const EVAL_CEILING: u64 = 100_000_000_000;
/// Scan work is split into chunks of this width for parallel processing.
const SCAN_CHUNK: u64 = 1 << 22;

/// Verdict sign for G(x) = lhs - rhs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GSign {
    Negative,
    Zero,
    Positive,
    /// The error interval around lhs - rhs straddles zero even at extended
    /// precision.
    Indeterminate,
}

impl GSign {
    /// True when the point is a counterexample (G >= 0 certified).
    pub fn is_counterexample(&self) -> bool {
        matches!(self, GSign::Positive | GSign::Zero)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            GSign::Negative => "-1",
            GSign::Zero => "0",
            GSign::Positive => "+1",
            GSign::Indeterminate => "indeterminate",
        }
    }
}

/// One evaluation of the inequality at integer x.
#[derive(Debug, Clone)]
pub struct InequalityReport {
    pub x: u64,
    pub pi_x: u64,
    pub pi_x_over_e: u64,
    /// pi(x)^2 rounded to f64; the sign decision uses the exact integer.
    pub lhs: f64,
    pub rhs: f64,
    pub g_sign: GSign,
    /// log10 |lhs - rhs|; -inf on an exact zero.
    pub margin_log10: f64,
}

/// Aggregate result of a range scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSummary {
    pub range_lo: u64,
    pub range_hi: u64,
    pub step_rule: String,
    pub holds_count: u64,
    pub fails_count: u64,
    pub indeterminate_count: u64,
    pub counterexamples: Vec<u64>,
}

impl ScanSummary {
    pub fn evaluated(&self) -> u64 {
        self.holds_count + self.fails_count + self.indeterminate_count
    }
}

/// Sign of pi_x^2 - (e x / log x) pi_q with a certified error interval.
fn sign_core(x: u64, pi_x: u64, pi_q: u64) -> (GSign, f64, f64, f64) {
    let lhs_exact: u128 = u128::from(pi_x) * u128::from(pi_x);
    let px = pi_x as f64;
    let lhs = px * px;
    if pi_q == 0 {
        // rhs is exactly zero; x >= 2 gives pi_x >= 1.
        return (GSign::Positive, lhs, 0.0, lhs.log10());
    }
    let xf = x as f64;
    let rhs = DDouble::E.hi * xf / xf.ln() * pi_q as f64;
    let diff = lhs - rhs;
    let tol = 1e-12 * (lhs + rhs);
    if diff.abs() > tol {
        let sign = if diff > 0.0 {
            GSign::Positive
        } else {
            GSign::Negative
        };
        return (sign, lhs, rhs, diff.abs().log10());
    }
    // Too close to call in f64: redo the right side in double-double.
    let rhs_dd = DDouble::E
        .mul(DDouble::from_u64(x))
        .div(DDouble::ln_refined(xf))
        .mul(DDouble::from_u64(pi_q));
    let diff_dd = DDouble::from_u128(lhs_exact).sub(rhs_dd);
    let tol_dd = rhs_dd.to_f64().abs() * 5e-16;
    let d = diff_dd.to_f64();
    let sign = if d.abs() > tol_dd {
        if d > 0.0 {
            GSign::Positive
        } else {
            GSign::Negative
        }
    } else if d == 0.0 {
        GSign::Zero
    } else {
        GSign::Indeterminate
    };
    (sign, lhs, rhs_dd.to_f64(), d.abs().log10())
}

/// G(x) as a double-double value (used for monotonicity margins).
fn g_value_dd(x: u64, pi_x: u64, pi_q: u64) -> DDouble {
    let lhs = DDouble::from_u128(u128::from(pi_x) * u128::from(pi_x));
    if pi_q == 0 {
        return lhs;
    }
    let rhs = DDouble::E
        .mul(DDouble::from_u64(x))
        .div(DDouble::ln_refined(x as f64))
        .mul(DDouble::from_u64(pi_q));
    lhs.sub(rhs)
}

fn report_for(x: u64, pi_x: u64, pi_q: u64) -> InequalityReport {
    let (g_sign, lhs, rhs, margin_log10) = sign_core(x, pi_x, pi_q);
    InequalityReport {
        x,
        pi_x,
        pi_x_over_e: pi_q,
        lhs,
        rhs,
        g_sign,
        margin_log10,
    }
}

/// Evaluate the inequality at x (x >= 3 so that floor(x/e) >= 1 and
/// log x > 1).
pub fn eval_inequality(engine: &PrimeCountEngine, x: u64) -> Result<InequalityReport> {
    if x < 3 {
        return Err(Error::Domain(format!(
            "inequality evaluation needs x >= 3, got {x}"
        )));
    }
    if x > EVAL_CEILING {
        return Err(Error::Capacity {
            what: "inequality argument",
            requested: x,
            ceiling: EVAL_CEILING,
        });
    }
    let q = floor_div_e(x);
    let pi_x = engine.pi(x)?;
    let pi_q = engine.pi(q)?;
    Ok(report_for(x, pi_x, pi_q))
}

/// Tally for one scanned chunk.
#[derive(Default)]
struct ChunkTally {
    holds: u64,
    fails: u64,
    indeterminate: u64,
    counterexamples: Vec<u64>,
}

impl ChunkTally {
    fn record(&mut self, x: u64, sign: GSign) {
        match sign {
            GSign::Negative => self.holds += 1,
            GSign::Positive | GSign::Zero => {
                self.fails += 1;
                self.counterexamples.push(x);
            }
            GSign::Indeterminate => self.indeterminate += 1,
        }
    }
}

/// Incremental pi tracker over one chunk: a sorted prime list for the chunk
/// plus the running count below the cursor.
struct PiCursor {
    primes: Vec<u64>,
    next: usize,
    count: u64,
}

impl PiCursor {
    fn new(engine: &PrimeCountEngine, start: u64, lo: u64, hi: u64) -> Result<Self> {
        let primes = if hi >= lo.max(2) {
            primes_in_range(&SegmentPlan::new(lo.max(2), hi)?)?
        } else {
            Vec::new()
        };
        Ok(PiCursor {
            primes,
            next: 0,
            count: engine.pi(start)?,
        })
    }

    /// pi(v) for non-decreasing v.
    #[inline]
    fn advance_to(&mut self, v: u64) -> u64 {
        while self.next < self.primes.len() && self.primes[self.next] <= v {
            self.next += 1;
            self.count += 1;
        }
        self.count
    }
}

fn scan_chunk(
    engine: &PrimeCountEngine,
    lo: u64,
    hi: u64,
    primes_only: bool,
    mut sink: Option<&mut dyn FnMut(&InequalityReport)>,
) -> Result<ChunkTally> {
    let mut tally = ChunkTally::default();
    let q_lo = floor_div_e(lo);
    let q_hi = floor_div_e(hi);
    let mut x_cursor = PiCursor::new(engine, lo - 1, lo, hi)?;
    let mut q_cursor = PiCursor::new(engine, q_lo, q_lo + 1, q_hi)?;

    let mut visit = |x: u64, pi_x: u64, pi_q: u64, tally: &mut ChunkTally| {
        if let Some(sink) = sink.as_deref_mut() {
            let report = report_for(x, pi_x, pi_q);
            tally.record(x, report.g_sign);
            sink(&report);
        } else {
            let (sign, ..) = sign_core(x, pi_x, pi_q);
            tally.record(x, sign);
        }
    };

    if primes_only {
        let primes = std::mem::take(&mut x_cursor.primes);
        let base = x_cursor.count;
        for (i, &p) in primes.iter().enumerate() {
            let q = floor_div_e(p);
            let pi_q = q_cursor.advance_to(q);
            visit(p, base + i as u64 + 1, pi_q, &mut tally);
        }
    } else {
        let mut q = q_lo;
        let mut next_jump = floor_mul_e(q + 1) + 1;
        let mut pi_q = q_cursor.count;
        for x in lo..=hi {
            let pi_x = x_cursor.advance_to(x);
            while x >= next_jump {
                q += 1;
                pi_q = q_cursor.advance_to(q);
                next_jump = floor_mul_e(q + 1) + 1;
            }
            debug_assert_eq!(q, floor_div_e(x));
            visit(x, pi_x, pi_q, &mut tally);
        }
    }
    Ok(tally)
}

/// Scan [range_lo, range_hi]; evaluation points are every integer, or only
/// the primes of the range when `primes_only` is set (pi only jumps there,
/// and between primes the right side grows, so G can only fall). Chunks are
/// processed in parallel and merged in range order.
pub fn scan_range(
    engine: &PrimeCountEngine,
    range_lo: u64,
    range_hi: u64,
    primes_only: bool,
) -> Result<ScanSummary> {
    if range_lo > range_hi {
        return Err(Error::InvalidArgument(format!(
            "empty scan range [{range_lo}, {range_hi}]"
        )));
    }
    if range_lo < 2 {
        return Err(Error::InvalidArgument(
            "scan range must start at 2 or above".into(),
        ));
    }
    if range_hi > EVAL_CEILING {
        return Err(Error::Capacity {
            what: "scan upper end",
            requested: range_hi,
            ceiling: EVAL_CEILING,
        });
    }

    let chunks: Vec<(u64, u64)> = (range_lo..=range_hi)
        .step_by(SCAN_CHUNK as usize)
        .map(|lo| (lo, range_hi.min(lo + SCAN_CHUNK - 1)))
        .collect();
    let tallies: Vec<ChunkTally> = if chunks.len() == 1 {
        vec![scan_chunk(
            engine,
            chunks[0].0,
            chunks[0].1,
            primes_only,
            None,
        )?]
    } else {
        chunks
            .par_iter()
            .map(|&(lo, hi)| scan_chunk(engine, lo, hi, primes_only, None))
            .collect::<Result<Vec<_>>>()?
    };

    let mut summary = empty_summary(range_lo, range_hi, primes_only);
    for t in tallies {
        merge_tally(&mut summary, t);
    }
    Ok(summary)
}

/// Like `scan_range`, but sequential and streaming: `sink` receives the full
/// report of every evaluated point in ascending order.
pub fn scan_range_with(
    engine: &PrimeCountEngine,
    range_lo: u64,
    range_hi: u64,
    primes_only: bool,
    mut sink: impl FnMut(&InequalityReport),
) -> Result<ScanSummary> {
    if range_lo > range_hi {
        return Err(Error::InvalidArgument(format!(
            "empty scan range [{range_lo}, {range_hi}]"
        )));
    }
    if range_lo < 2 {
        return Err(Error::InvalidArgument(
            "scan range must start at 2 or above".into(),
        ));
    }
    if range_hi > EVAL_CEILING {
        return Err(Error::Capacity {
            what: "scan upper end",
            requested: range_hi,
            ceiling: EVAL_CEILING,
        });
    }
    let mut summary = empty_summary(range_lo, range_hi, primes_only);
    let mut lo = range_lo;
    while lo <= range_hi {
        let hi = range_hi.min(lo + SCAN_CHUNK - 1);
        let tally = scan_chunk(engine, lo, hi, primes_only, Some(&mut sink))?;
        merge_tally(&mut summary, tally);
        lo = hi + 1;
    }
    Ok(summary)
}

fn empty_summary(range_lo: u64, range_hi: u64, primes_only: bool) -> ScanSummary {
    ScanSummary {
        range_lo,
        range_hi,
        step_rule: if primes_only {
            "primes-only".to_string()
        } else {
            "all-integers".to_string()
        },
        holds_count: 0,
        fails_count: 0,
        indeterminate_count: 0,
        counterexamples: Vec::new(),
    }
}

fn merge_tally(summary: &mut ScanSummary, t: ChunkTally) {
    summary.holds_count += t.holds;
    summary.fails_count += t.fails;
    summary.indeterminate_count += t.indeterminate;
    summary.counterexamples.extend(t.counterexamples);
}

/// An adjacent pair where G increased.
#[derive(Debug, Clone, Copy)]
pub struct MonotonicityViolation {
    pub x: u64,
    pub x_next: u64,
    pub g_x: f64,
    pub g_next: f64,
    /// G(x_next) - G(x), positive for a violation.
    pub margin: f64,
}

/// Adjacent-pair report over x = lo, lo+step, ...; lists every pair with
/// G(x+step) > G(x). Emptiness is not asserted: G jumps upward at primes.
#[derive(Debug, Clone)]
pub struct MonotonicityReport {
    pub range_lo: u64,
    pub range_hi: u64,
    pub step: u64,
    pub pairs_checked: u64,
    pub violations: Vec<MonotonicityViolation>,
}

pub fn monotonicity_probe(
    engine: &PrimeCountEngine,
    range_lo: u64,
    range_hi: u64,
    step: u64,
) -> Result<MonotonicityReport> {
    if step == 0 {
        return Err(Error::InvalidArgument("step must be >= 1".into()));
    }
    if range_lo < 2 || range_lo > range_hi {
        return Err(Error::InvalidArgument(format!(
            "invalid probe range [{range_lo}, {range_hi}]"
        )));
    }
    if range_hi > EVAL_CEILING {
        return Err(Error::Capacity {
            what: "probe upper end",
            requested: range_hi,
            ceiling: EVAL_CEILING,
        });
    }
    let g_at = |x: u64| -> Result<DDouble> {
        let pi_x = engine.pi(x)?;
        let pi_q = engine.pi(floor_div_e(x))?;
        Ok(g_value_dd(x, pi_x, pi_q))
    };
    let mut report = MonotonicityReport {
        range_lo,
        range_hi,
        step,
        pairs_checked: 0,
        violations: Vec::new(),
    };
    let mut x = range_lo;
    let mut g_prev = g_at(x)?;
    while x + step <= range_hi {
        let x_next = x + step;
        let g_next = g_at(x_next)?;
        report.pairs_checked += 1;
        if g_next.sub(g_prev).to_f64() > 0.0 {
            report.violations.push(MonotonicityViolation {
                x,
                x_next,
                g_x: g_prev.to_f64(),
                g_next: g_next.to_f64(),
                margin: g_next.sub(g_prev).to_f64(),
            });
        }
        x = x_next;
        g_prev = g_next;
    }
    Ok(report)
}

/// Verdict of a generalized inequality evaluated in log space.
#[derive(Debug, Clone)]
pub struct HassaniVerdict {
    pub x: u64,
    pub n: u32,
    /// For the power family: sign of LHS - RHS. For the cubic family:
    /// sign of RHS - LHS.
    pub sign: GSign,
    pub ln_lhs: f64,
    pub ln_rhs: f64,
    pub margin_ln: f64,
    pub note: Option<&'static str>,
}

/// Power-tower generalization:
/// pi(x)^(2^n) vs e^n / prod_{k=1..n} (1-(k-1)/log x)^(2^(n-k))
///            * (x/log x)^(2^n - 1) * pi(x/e^n).
/// Returns the sign of LHS - RHS; n = 1 collapses to the base inequality.
pub fn hassani_power_inequality(
    engine: &PrimeCountEngine,
    x: u64,
    n: u32,
) -> Result<HassaniVerdict> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    if x > EVAL_CEILING {
        return Err(Error::Capacity {
            what: "inequality argument",
            requested: x,
            ceiling: EVAL_CEILING,
        });
    }
    if x < 3 {
        return Err(Error::Domain(format!("x = {x} too small")));
    }
    let lx = (x as f64).ln();
    if lx <= (n - 1) as f64 {
        return Err(Error::Domain(format!(
            "log x = {lx:.6} must exceed n - 1 = {}",
            n - 1
        )));
    }
    let q = floor_div_e_pow(x, n);
    if q < 2 {
        return Err(Error::Domain(format!(
            "floor(x/e^{n}) = {q} must be at least 2"
        )));
    }
    let pi_x = engine.pi(x)?;
    let pi_q = engine.pi(q)?;
    let two_n = (2f64).powi(n as i32);

    let f64_eval = || -> (f64, f64) {
        let ln_lhs = two_n * (pi_x as f64).ln();
        let mut ln_rhs = n as f64 + (two_n - 1.0) * (lx - lx.ln()) + (pi_q as f64).ln();
        for k in 1..=n {
            let w = (2f64).powi((n - k) as i32);
            ln_rhs -= w * (1.0 - (k - 1) as f64 / lx).ln();
        }
        (ln_lhs, ln_rhs)
    };
    let (ln_lhs, ln_rhs) = f64_eval();
    let diff = ln_lhs - ln_rhs;
    let scale = ln_lhs.abs().max(ln_rhs.abs()).max(1.0);
    let sign = if diff.abs() > 1e-11 * scale {
        sign_of(diff)
    } else {
        // double-double replay of both sides
        let lx_dd = DDouble::ln_refined(x as f64);
        let ln_lhs_dd = DDouble::ln_refined(pi_x as f64).mul(DDouble::from_f64(two_n));
        let mut ln_rhs_dd = DDouble::from_f64(n as f64)
            .add(lx_dd.sub(lx_dd.ln()).mul(DDouble::from_f64(two_n - 1.0)))
            .add(DDouble::ln_refined(pi_q as f64));
        for k in 1..=n {
            let w = (2f64).powi((n - k) as i32);
            let arg = DDouble::from_f64(1.0).sub(DDouble::from_f64((k - 1) as f64).div(lx_dd));
            ln_rhs_dd = ln_rhs_dd.sub(arg.ln().mul(DDouble::from_f64(w)));
        }
        let d = ln_lhs_dd.sub(ln_rhs_dd).to_f64();
        if d.abs() > 1e-14 * scale {
            sign_of(d)
        } else if d == 0.0 {
            GSign::Zero
        } else {
            GSign::Indeterminate
        }
    };
    Ok(HassaniVerdict {
        x,
        n,
        sign,
        ln_lhs,
        ln_rhs,
        margin_ln: diff,
        note: None,
    })
}

/// Cubic generalization:
/// 3 e x / log x * pi(x/e)^(3^n - 1)  vs
/// pi(x)^(3^n) + 3 e^2 x / (log x)^2 * pi(x/e^2)^(3^n - 2).
/// Returns the sign of RHS - LHS; the n = 1 case is reported with a note,
/// its direction is the documented reversed one and is not asserted.
pub fn hassani_cubic_inequality(
    engine: &PrimeCountEngine,
    x: u64,
    n: u32,
) -> Result<HassaniVerdict> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    if x > EVAL_CEILING {
        return Err(Error::Capacity {
            what: "inequality argument",
            requested: x,
            ceiling: EVAL_CEILING,
        });
    }
    let q2 = if x >= 2 { floor_div_e_pow(x, 2) } else { 0 };
    if q2 < 2 {
        return Err(Error::Domain(format!(
            "x = {x} is below 2 e^2; floor(x/e^2) must be at least 2"
        )));
    }
    let q1 = floor_div_e(x);
    let pi_x = engine.pi(x)?;
    let pi_q1 = engine.pi(q1)?;
    let pi_q2 = engine.pi(q2)?;
    let p3 = (3f64).powi(n as i32);
    let lx = (x as f64).ln();
    let ln3 = 3f64.ln();

    let lhs = LogMagnitude::new(
        1,
        ln3 + 1.0 + (x as f64).ln() - lx.ln() + (p3 - 1.0) * (pi_q1 as f64).ln(),
    );
    let t_pi = LogMagnitude::new(1, p3 * (pi_x as f64).ln());
    let t2 = LogMagnitude::new(
        1,
        ln3 + 2.0 + (x as f64).ln() - 2.0 * lx.ln() + (p3 - 2.0) * (pi_q2 as f64).ln(),
    );
    let rhs = lm_add(t_pi, t2);
    let diff_ln = rhs.ln_mag() - lhs.ln_mag();
    let scale = rhs.ln_mag().abs().max(lhs.ln_mag().abs()).max(1.0);
    let sign = if diff_ln.abs() > 1e-11 * scale {
        sign_of(diff_ln)
    } else {
        GSign::Indeterminate
    };
    Ok(HassaniVerdict {
        x,
        n,
        sign,
        ln_lhs: lhs.ln_mag(),
        ln_rhs: rhs.ln_mag(),
        margin_ln: diff_ln,
        note: (n == 1).then_some("n=1 cubic case: inequality direction reverses"),
    })
}

#[inline]
fn sign_of(d: f64) -> GSign {
    if d > 0.0 {
        GSign::Positive
    } else {
        GSign::Negative
    }
}
