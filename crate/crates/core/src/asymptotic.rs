//! Closed-form asymptotics for the inequality gap G(x) at exponential scale,
//! where exact evaluation is impossible: G(e^547) is on the order of 10^458.
//!
//! Two reference formulas are provided. `Leading` is the cancelled main term
//! -x^2 / ((log x)^2 (log x - 1)). `TableRef` squares the denominator,
//! -x^2 / ((log x)^2 (log x - 1))^2, which reproduces the published table of
//! G values row for row in log10 magnitude; it is labeled a reference
//! generator, not a derivation.

use crate::error::{Error, Result};
use crate::logmag::LogMagnitude;

/// Which closed form to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GFormula {
    /// Cancelled main term: ln|G| = 2 ln x - ln((ln x)^2 (ln x - 1)).
    Leading,
    /// Table generator: ln|G| = 2 ln x - 2 ln((ln x)^2 (ln x - 1)).
    TableRef,
}

impl GFormula {
    pub fn parse(s: &str) -> Option<GFormula> {
        match s {
            "leading" => Some(GFormula::Leading),
            "table-ref" | "table_ref" | "tableref" => Some(GFormula::TableRef),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GFormula::Leading => "leading",
            GFormula::TableRef => "table-ref",
        }
    }
}

/// G(e^{log_x}) by the chosen closed form; always negative in its domain.
pub fn g_asymptotic(log_x: f64, formula: GFormula) -> Result<LogMagnitude> {
    if log_x.is_nan() || log_x <= 1.0 {
        return Err(Error::Domain(format!(
            "g_asymptotic needs log x > 1, got {log_x}"
        )));
    }
    let denom = log_x * log_x * (log_x - 1.0);
    let ln_mag = match formula {
        GFormula::Leading => 2.0 * log_x - denom.ln(),
        GFormula::TableRef => 2.0 * log_x - 2.0 * denom.ln(),
    };
    Ok(LogMagnitude::new(-1, ln_mag))
}

/// One row of the large-x table of G values at x = e^k.
#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub k: u32,
    pub g_log10: f64,
    pub g_sign: i8,
    pub formatted: String,
}

/// The tabulated exponents: k = 547, 647, ..., 3247.
pub const TABLE1_K_FIRST: u32 = 547;
pub const TABLE1_K_LAST: u32 = 3247;
pub const TABLE1_K_STEP: u32 = 100;

/// All 28 rows of the G table from the table-ref closed form.
pub fn emit_table1() -> Vec<Table1Row> {
    (TABLE1_K_FIRST..=TABLE1_K_LAST)
        .step_by(TABLE1_K_STEP as usize)
        .map(|k| {
            let g = g_asymptotic(f64::from(k), GFormula::TableRef).expect("k > 1");
            let g_log10 = g.log10_mag();
            Table1Row {
                k,
                g_log10,
                g_sign: g.sign(),
                formatted: format_scientific(g.sign(), g_log10),
            }
        })
        .collect()
}

/// Scientific string "-d.ddddddde+EEE" from a sign and log10 magnitude.
pub fn format_scientific(sign: i8, log10_mag: f64) -> String {
    let exp = log10_mag.floor();
    let mut mant = 10f64.powf(log10_mag - exp);
    let mut exp = exp as i64;
    // Guard the mantissa against rounding to 10.0000000 at format time.
    if mant >= 9.99999995 {
        mant /= 10.0;
        exp += 1;
    }
    let s = if sign < 0 { "-" } else { "" };
    format!("{s}{mant:.7}e{exp:+}")
}

/// Parse "-d.ddddddde+EEE" back to (sign, log10 magnitude).
pub fn parse_scientific(s: &str) -> Option<(i8, f64)> {
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1i8, r),
        None => (1i8, s),
    };
    let (mant, exp) = rest.split_once('e')?;
    let mant: f64 = mant.parse().ok()?;
    let exp: i64 = exp.parse().ok()?;
    Some((sign, exp as f64 + mant.log10()))
}

/// Series of (k, ln(-G(e^k))) for external plotting.
pub fn emit_figure1(k_lo: f64, k_hi: f64, step: f64) -> Result<Vec<(f64, f64)>> {
    if k_lo.is_nan() || k_lo <= 1.0 {
        return Err(Error::Domain(format!("k_lo must exceed 1, got {k_lo}")));
    }
    if step <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "step must be positive, got {step}"
        )));
    }
    if k_hi < k_lo {
        return Err(Error::InvalidArgument(format!(
            "k_hi {k_hi} below k_lo {k_lo}"
        )));
    }
    let mut out = Vec::new();
    let mut i = 0u64;
    loop {
        let k = k_lo + step * i as f64;
        if k > k_hi + 1e-9 {
            break;
        }
        let g = g_asymptotic(k, GFormula::TableRef)?;
        out.push((k, g.ln_mag()));
        i += 1;
    }
    Ok(out)
}

/// Least-squares slope of y against x.
pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
