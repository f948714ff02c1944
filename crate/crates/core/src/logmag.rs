//! Signed log-magnitude arithmetic.
//!
//! A value is carried as (sign, ln|value|) so that quantities on the order
//! of 10^2800 stay inside f64. Multiplication adds ln-magnitudes; addition
//! is log-sum-exp on the dominant operand.

use std::ops::{Add, Mul, Neg};

/// A real number represented as sign and natural log of absolute value.
/// Zero is (0, -inf).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogMagnitude {
    sign: i8,
    ln_mag: f64,
}

impl LogMagnitude {
    pub const ZERO: LogMagnitude = LogMagnitude {
        sign: 0,
        ln_mag: f64::NEG_INFINITY,
    };

    pub fn new(sign: i8, ln_mag: f64) -> Self {
        debug_assert!(sign == -1 || sign == 0 || sign == 1);
        if sign == 0 {
            Self::ZERO
        } else {
            LogMagnitude { sign, ln_mag }
        }
    }

    pub fn from_value(v: f64) -> Self {
        if v == 0.0 {
            Self::ZERO
        } else {
            LogMagnitude {
                sign: if v > 0.0 { 1 } else { -1 },
                ln_mag: v.abs().ln(),
            }
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn ln_mag(&self) -> f64 {
        self.ln_mag
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn log10_mag(&self) -> f64 {
        self.ln_mag / std::f64::consts::LN_10
    }

    /// Back to a plain f64; overflows to +-inf beyond ~1e308.
    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * self.ln_mag.exp()
    }

    /// Integer power: multiplies the ln-magnitude, alternates the sign.
    pub fn powi(&self, k: u32) -> Self {
        if k == 0 {
            return LogMagnitude::new(1, 0.0);
        }
        if self.sign == 0 {
            return Self::ZERO;
        }
        let sign = if self.sign < 0 && k % 2 == 1 { -1 } else { 1 };
        LogMagnitude::new(sign, self.ln_mag * k as f64)
    }

    /// Compare by signed magnitude.
    pub fn cmp_signed(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match self.sign.cmp(&other.sign) {
            Equal => {}
            o => return o,
        }
        match self.sign {
            0 => Equal,
            1 => self.ln_mag.partial_cmp(&other.ln_mag).unwrap_or(Equal),
            _ => other.ln_mag.partial_cmp(&self.ln_mag).unwrap_or(Equal),
        }
    }
}

/// Product: signs multiply, ln-magnitudes add. Exact for zero operands.
pub fn lm_mul(a: LogMagnitude, b: LogMagnitude) -> LogMagnitude {
    if a.sign == 0 || b.sign == 0 {
        return LogMagnitude::ZERO;
    }
    LogMagnitude::new(a.sign * b.sign, a.ln_mag + b.ln_mag)
}

/// Sum by log-sum-exp. Same signs: max + ln(1 + exp(min - max)). Opposite
/// signs with equal ln-magnitude cancel to zero exactly.
pub fn lm_add(a: LogMagnitude, b: LogMagnitude) -> LogMagnitude {
    if a.sign == 0 {
        return b;
    }
    if b.sign == 0 {
        return a;
    }
    let (big, small) = if a.ln_mag >= b.ln_mag { (a, b) } else { (b, a) };
    let delta = small.ln_mag - big.ln_mag; // <= 0
    if a.sign == b.sign {
        LogMagnitude::new(a.sign, big.ln_mag + delta.exp().ln_1p())
    } else if a.ln_mag == b.ln_mag {
        LogMagnitude::ZERO
    } else {
        LogMagnitude::new(big.sign, big.ln_mag + (-delta.exp()).ln_1p())
    }
}

impl Mul for LogMagnitude {
    type Output = LogMagnitude;
    fn mul(self, rhs: Self) -> Self {
        lm_mul(self, rhs)
    }
}

impl Add for LogMagnitude {
    type Output = LogMagnitude;
    fn add(self, rhs: Self) -> Self {
        lm_add(self, rhs)
    }
}

impl Neg for LogMagnitude {
    type Output = LogMagnitude;
    fn neg(self) -> Self {
        LogMagnitude::new(-self.sign, self.ln_mag)
    }
}
