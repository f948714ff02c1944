//! Empirical order-estimate reports.
//!
//! Each check samples a claim at geometrically spaced points, records the
//! dimensionless ratio that the claim says is bounded, and passes or fails
//! against a configured acceptance threshold. The thresholds are harness
//! configuration chosen with at least 2x empirical headroom; they are not
//! assertions about the underlying constants.

use crate::chebyshev::{lucy_pi, sweep_samples};
use crate::error::{Error, Result};
use crate::mertens::MertensEngine;
use crate::numeric::KahanSum;
use crate::sieve::build_mu_table;

/// Default ratio between consecutive sample points.
pub const DEFAULT_SAMPLE_RATIO: f64 = 1.2;
/// Ceiling for the mu-sum sweeps.
pub const MU_SWEEP_CEILING: u64 = 1_000_000_000;

/// Acceptance thresholds (harness configuration, not claims).
pub const MU_OVER_D_THRESHOLD: f64 = 2.0;
pub const MU_LOG_OVER_D_THRESHOLD: f64 = 3.0;
pub const MERTENS_ORDER_THRESHOLD: f64 = 1.0;
pub const PSI_IDENTITY_THRESHOLD: f64 = 3.0;
pub const PI_VIA_PSI_THRESHOLD: f64 = 2.0;
pub const PI_VIA_MERTENS_BAND: (f64, f64) = (0.9, 1.5);
/// The pi-estimate bands are asserted only from this x upward.
pub const PI_BAND_MIN_X: u64 = 10_000;

/// Which bounded quantity a report tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimId {
    /// |sum_{d<=x} mu(d)/d| * log x
    MuOverD,
    /// |sum_{d<=x} mu(d) log d / d|
    MuLogOverD,
    /// |M(x)| / sqrt(x)
    MertensOrder,
    /// |psi(x) - x + sum_{n<=x} M(x/n)| / sqrt(x)
    PsiIdentity,
    /// |pi(x) - psi(x)/log x| * log^2 x / x
    PiViaPsi,
    /// |pi(x) - x/log x + 1/log x| * log^2 x / x
    PiViaMertens,
}

impl ClaimId {
    pub fn parse(s: &str) -> Option<ClaimId> {
        match s {
            "mu-over-d" => Some(ClaimId::MuOverD),
            "mu-log-over-d" => Some(ClaimId::MuLogOverD),
            "mertens-order" => Some(ClaimId::MertensOrder),
            "psi-identity" => Some(ClaimId::PsiIdentity),
            "pi-via-psi" => Some(ClaimId::PiViaPsi),
            "pi-via-mertens" => Some(ClaimId::PiViaMertens),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClaimId::MuOverD => "mu-over-d",
            ClaimId::MuLogOverD => "mu-log-over-d",
            ClaimId::MertensOrder => "mertens-order",
            ClaimId::PsiIdentity => "psi-identity",
            ClaimId::PiViaPsi => "pi-via-psi",
            ClaimId::PiViaMertens => "pi-via-mertens",
        }
    }
}

/// Sampled ratios for one claim with a pass verdict.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub claim: ClaimId,
    pub sample_points: Vec<u64>,
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl BoundReport {
    fn from_ratios(
        claim: ClaimId,
        sample_points: Vec<u64>,
        ratios: Vec<f64>,
        threshold: f64,
        pass: bool,
    ) -> Self {
        debug_assert!(!sample_points.is_empty());
        debug_assert!(ratios.iter().all(|r| r.is_finite() && *r >= 0.0));
        let max_ratio = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        BoundReport {
            claim,
            sample_points,
            ratios,
            max_ratio,
            threshold,
            pass,
        }
    }
}

/// Both ratio tracks of the pi estimates.
#[derive(Debug, Clone)]
pub struct PiEstimateReport {
    pub via_psi: BoundReport,
    pub via_mertens: BoundReport,
    pub pass: bool,
}

/// Fitted constants for the two-sided pi bound
/// (1 - beta) x/log x <= pi(x) <= x/log x + alpha x log x.
#[derive(Debug, Clone, Copy)]
pub struct BoundFit {
    pub alpha: f64,
    pub beta: f64,
    pub range_lo: u64,
    pub range_hi: u64,
}

/// `count` geometrically spaced integers spanning [lo, hi], deduplicated,
/// always including both endpoints.
pub fn sample_points(lo: u64, hi: u64, count: usize) -> Vec<u64> {
    assert!(lo >= 1 && lo <= hi);
    if count <= 1 || lo == hi {
        return vec![hi];
    }
    let ratio = ((hi as f64) / (lo as f64)).powf(1.0 / (count as f64 - 1.0));
    let mut pts = Vec::with_capacity(count);
    let mut x = lo as f64;
    for _ in 0..count {
        pts.push((x.round() as u64).clamp(lo, hi));
        x *= ratio;
    }
    pts.push(hi);
    pts.sort_unstable();
    pts.dedup();
    pts
}

/// Sample count implied by the default 1.2 spacing over [lo, hi].
pub fn default_sample_count(lo: u64, hi: u64) -> usize {
    if hi <= lo {
        return 1;
    }
    let n = ((hi as f64 / lo as f64).ln() / DEFAULT_SAMPLE_RATIO.ln()).ceil() as usize;
    n.max(1) + 1
}

fn resolve_samples(x_max: u64, samples: usize) -> Result<Vec<u64>> {
    if x_max == 0 {
        return Err(Error::InvalidArgument("x_max must be positive".into()));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be positive".into()));
    }
    let lo = 10u64.min(x_max);
    Ok(sample_points(lo, x_max, samples))
}

/// Sweep of sum mu(d)/d with ratios |sum| * log x.
/// Pass needs every ratio at or below the threshold and the unconditional
/// fact |sum| <= 1 at every sample.
pub fn check_mu_over_d(x_max: u64, samples: usize, threshold: Option<f64>) -> Result<BoundReport> {
    let threshold = threshold.unwrap_or(MU_OVER_D_THRESHOLD);
    let points = resolve_samples(x_max, samples)?;
    let sums = mu_weighted_prefix(x_max, &points, |_d, _ln_d| 1.0)?;
    let mut pass = true;
    let ratios: Vec<f64> = points
        .iter()
        .zip(&sums)
        .map(|(&x, &s)| {
            if s.abs() > 1.0 {
                pass = false;
            }
            s.abs() * (x as f64).ln().max(0.0)
        })
        .collect();
    pass &= ratios.iter().all(|r| *r <= threshold);
    Ok(BoundReport::from_ratios(
        ClaimId::MuOverD,
        points,
        ratios,
        threshold,
        pass,
    ))
}

/// Sweep of sum mu(d) log d / d with ratios |sum|.
pub fn check_mu_log_over_d(
    x_max: u64,
    samples: usize,
    threshold: Option<f64>,
) -> Result<BoundReport> {
    let threshold = threshold.unwrap_or(MU_LOG_OVER_D_THRESHOLD);
    let points = resolve_samples(x_max, samples)?;
    let sums = mu_weighted_prefix(x_max, &points, |_d, ln_d| ln_d)?;
    let ratios: Vec<f64> = sums.iter().map(|s| s.abs()).collect();
    let pass = ratios.iter().all(|r| *r <= threshold);
    Ok(BoundReport::from_ratios(
        ClaimId::MuLogOverD,
        points,
        ratios,
        threshold,
        pass,
    ))
}

/// Kahan prefix sums of mu(d) * weight(d, ln d) / d at the sample points.
fn mu_weighted_prefix(
    x_max: u64,
    points: &[u64],
    weight: impl Fn(u64, f64) -> f64,
) -> Result<Vec<f64>> {
    if x_max > MU_SWEEP_CEILING {
        return Err(Error::Capacity {
            what: "mu sweep limit",
            requested: x_max,
            ceiling: MU_SWEEP_CEILING,
        });
    }
    let table = build_mu_table(x_max)?;
    let mut acc = KahanSum::new();
    let mut out = Vec::with_capacity(points.len());
    let mut next = 0usize;
    for (d, mu) in table.iter() {
        while next < points.len() && points[next] < d {
            out.push(acc.value());
            next += 1;
        }
        if mu != 0 {
            let ln_d = if d == 1 { 0.0 } else { (d as f64).ln() };
            acc.add(f64::from(mu) * weight(d, ln_d) / d as f64);
        }
    }
    while next < points.len() {
        out.push(acc.value());
        next += 1;
    }
    Ok(out)
}

/// |M(x)| / sqrt(x) at sample points.
pub fn check_mertens_order(
    engine: &MertensEngine,
    x_max: u64,
    samples: usize,
    threshold: Option<f64>,
) -> Result<BoundReport> {
    let threshold = threshold.unwrap_or(MERTENS_ORDER_THRESHOLD);
    let points = resolve_samples(x_max, samples)?;
    let mut ratios = Vec::with_capacity(points.len());
    for &x in &points {
        let m = engine.mertens_sublinear(x)?;
        ratios.push(m.unsigned_abs() as f64 / (x as f64).sqrt());
    }
    let pass = ratios.iter().all(|r| *r <= threshold);
    Ok(BoundReport::from_ratios(
        ClaimId::MertensOrder,
        points,
        ratios,
        threshold,
        pass,
    ))
}

/// |psi(x) - x + sum_{n<=x} M(x/n)| / sqrt(x) at sample points. The quotient
/// sum is recomputed per point; the identity forces it to 1, so a deviation
/// flags an engine bug rather than a failed estimate.
pub fn check_psi_identity(
    engine: &MertensEngine,
    x_max: u64,
    samples: usize,
    threshold: Option<f64>,
) -> Result<BoundReport> {
    let threshold = threshold.unwrap_or(PSI_IDENTITY_THRESHOLD);
    let points = resolve_samples(x_max, samples)?;
    let sweep = sweep_samples(&points)?;
    let mut ratios = Vec::with_capacity(points.len());
    for s in &sweep {
        let qsum = engine.quotient_sum(s.x)? as f64;
        ratios.push((s.psi - s.x as f64 + qsum).abs() / (s.x as f64).sqrt());
    }
    let pass = ratios.iter().all(|r| *r <= threshold);
    Ok(BoundReport::from_ratios(
        ClaimId::PsiIdentity,
        points,
        ratios,
        threshold,
        pass,
    ))
}

/// Two normalized error tracks for pi: against psi(x)/log x, and against
/// x/log x - 1/log x (the quotient-sum identity makes the second exact
/// rather than asymptotic). The bands are asserted for x >= PI_BAND_MIN_X.
pub fn check_pi_estimate(x_max: u64, samples: usize) -> Result<PiEstimateReport> {
    let points = resolve_samples(x_max, samples)?;
    let sweep_limit = crate::chebyshev::PSI_CEILING;
    if x_max > sweep_limit {
        return Err(Error::Capacity {
            what: "pi estimate sweep",
            requested: x_max,
            ceiling: sweep_limit,
        });
    }
    let sweep = sweep_samples(&points)?;
    let mut r1 = Vec::with_capacity(points.len());
    let mut r2 = Vec::with_capacity(points.len());
    for s in &sweep {
        let x = s.x as f64;
        let lx = x.ln();
        if s.x < 2 {
            r1.push(0.0);
            r2.push(0.0);
            continue;
        }
        let pi = lucy_pi(s.x) as f64;
        debug_assert_eq!(pi as u64, s.pi, "sieve and quotient-set pi disagree");
        let norm = lx * lx / x;
        r1.push((pi - s.psi / lx).abs() * norm);
        r2.push((pi - x / lx + 1.0 / lx).abs() * norm);
    }
    let asserted = |pts: &[u64], rs: &[f64], lo: f64, hi: f64| {
        pts.iter()
            .zip(rs)
            .filter(|(x, _)| **x >= PI_BAND_MIN_X)
            .all(|(_, r)| (lo..=hi).contains(r))
    };
    let p1 = asserted(&points, &r1, 0.0, PI_VIA_PSI_THRESHOLD);
    let p2 = asserted(&points, &r2, PI_VIA_MERTENS_BAND.0, PI_VIA_MERTENS_BAND.1);
    let via_psi = BoundReport::from_ratios(
        ClaimId::PiViaPsi,
        points.clone(),
        r1,
        PI_VIA_PSI_THRESHOLD,
        p1,
    );
    let via_mertens =
        BoundReport::from_ratios(ClaimId::PiViaMertens, points, r2, PI_VIA_MERTENS_BAND.1, p2);
    let pass = p1 && p2;
    Ok(PiEstimateReport {
        via_psi,
        via_mertens,
        pass,
    })
}

/// Minimal alpha >= 0 and beta in (0,1) such that
/// pi(x) <= x/log x + alpha x log x and pi(x) >= (1-beta) x/log x at every
/// sampled x in [range_lo, range_hi]. Holds at the samples by construction.
pub fn fit_bound_constants(range_lo: u64, range_hi: u64) -> Result<BoundFit> {
    if range_lo < 2 || range_lo > range_hi {
        return Err(Error::InvalidArgument(format!(
            "invalid fit range [{range_lo}, {range_hi}]"
        )));
    }
    let points = sample_points(range_lo, range_hi, default_sample_count(range_lo, range_hi));
    if points.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "fit range [{range_lo}, {range_hi}] yields fewer than 2 samples"
        )));
    }
    let mut alpha = 0f64;
    let mut beta = 0f64;
    for &x in &points {
        let pi = lucy_pi(x) as f64;
        let xf = x as f64;
        let lx = xf.ln();
        alpha = alpha.max((pi - xf / lx) / (xf * lx));
        beta = beta.max(1.0 - pi * lx / xf);
    }
    // beta must stay in (0,1): when pi(x) > x/log x everywhere sampled the
    // supremum is non-positive and any positive beta works.
    let beta = beta.max(1e-12);
    let alpha = alpha.max(0.0);
    Ok(BoundFit {
        alpha,
        beta,
        range_lo,
        range_hi,
    })
}
