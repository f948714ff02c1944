//! Shared numeric kernels: compensated summation, double-double arithmetic,
//! exact integer roots, and certified floor(x/e) / floor(x*e).
//!
//! The double-double type carries ~32 significant digits and is the fallback
//! precision for sign decisions that are too close to call in plain f64.
//! Quotients by e are certified with a 38-digit rational bracket of e and
//! 256-bit cross multiplication, so a prime boundary can never be crossed by
//! rounding.

/// Kahan-compensated accumulator for long f64 sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let y = value - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Unevaluated sum of two doubles with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

#[allow(clippy::should_implement_trait)]
impl DDouble {
    pub const E: DDouble = DDouble {
        hi: std::f64::consts::E,
        lo: 1.4456468917292502e-16,
    };
    pub const LN_10: DDouble = DDouble {
        hi: std::f64::consts::LN_10,
        lo: -2.1707562233822494e-16,
    };

    #[inline]
    pub fn from_f64(x: f64) -> Self {
        DDouble { hi: x, lo: 0.0 }
    }

    pub fn from_u64(x: u64) -> Self {
        let hi = x as f64;
        // f64 holds 53 bits; the residual is an exact small integer.
        let r = x as i128 - hi as i128;
        DDouble { hi, lo: r as f64 }
    }

    pub fn from_u128(x: u128) -> Self {
        let hi = x as f64;
        let r = x as i128 - hi as i128;
        DDouble { hi, lo: r as f64 }
    }

    pub fn from_i128(x: i128) -> Self {
        let hi = x as f64;
        let r = x - hi as i128;
        DDouble { hi, lo: r as f64 }
    }

    #[inline]
    pub fn add(self, other: DDouble) -> DDouble {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        DDouble { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: DDouble) -> DDouble {
        self.add(other.neg())
    }

    #[inline]
    pub fn neg(self) -> DDouble {
        DDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn mul(self, other: DDouble) -> DDouble {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        DDouble { hi, lo }
    }

    #[inline]
    pub fn div(self, other: DDouble) -> DDouble {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul(DDouble::from_f64(q1)));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul(DDouble::from_f64(q2)));
        let q3 = r.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DDouble { hi, lo }.add(DDouble::from_f64(q3))
    }

    pub fn powi(self, mut n: u32) -> DDouble {
        let mut base = self;
        let mut acc = DDouble::from_f64(1.0);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            n >>= 1;
        }
        acc
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> DDouble {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    /// Natural log of a positive f64, refined to ~1e-16 absolute error
    /// (the limit set by one f64 exp evaluation).
    pub fn ln_refined(x: f64) -> DDouble {
        debug_assert!(x > 0.0 && x.is_finite());
        let hi = x.ln();
        let e = (-hi).exp();
        let t = DDouble::from_f64(x).mul(DDouble::from_f64(e));
        let u = t.sub(DDouble::from_f64(1.0));
        // ln(1+u) = u - u^2/2 + O(u^3); u ~ 1e-16 so the cubic term is lost.
        let corr = u.sub(u.mul(u).mul(DDouble::from_f64(0.5)));
        DDouble::from_f64(hi).add(corr)
    }

    /// Natural log of a positive DDouble value.
    pub fn ln(self) -> DDouble {
        debug_assert!(self.hi > 0.0);
        let base = Self::ln_refined(self.hi);
        // ln(hi + lo) = ln(hi) + ln(1 + lo/hi) ~ ln(hi) + lo/hi
        base.add(DDouble::from_f64(self.lo / self.hi))
    }
}

/// Integer square root: the largest r with r*r <= n.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r > 0 && (r as u128) * (r as u128) > n as u128 {
        r -= 1;
    }
    while ((r + 1) as u128) * ((r + 1) as u128) <= n as u128 {
        r += 1;
    }
    r
}

/// Integer m-th root: the largest r with r^m <= n (m >= 1).
pub fn iroot(n: u64, m: u32) -> u64 {
    debug_assert!(m >= 1);
    if m == 1 || n <= 1 {
        return n;
    }
    if m >= 64 {
        return 1;
    }
    let mut r = (n as f64).powf(1.0 / m as f64) as u64;
    let pow = |b: u64| -> Option<u128> {
        let mut acc: u128 = 1;
        for _ in 0..m {
            acc = acc.checked_mul(b as u128)?;
            if acc > u64::MAX as u128 * 2 {
                return Some(acc);
            }
        }
        Some(acc)
    };
    while r > 1 && pow(r).is_none_or(|p| p > n as u128) {
        r -= 1;
    }
    while pow(r + 1).is_some_and(|p| p <= n as u128) {
        r += 1;
    }
    r
}

// 38-digit rational bracket e in (E_NUM_LO/E_DEN, E_NUM_HI/E_DEN).
const E_NUM_LO: u128 = 27182818284590452353602874713526624977;
const E_NUM_HI: u128 = 27182818284590452353602874713526624978;
const E_DEN: u128 = 10u128.pow(37);

/// Full 256-bit product of two u128 values as (hi, lo) limbs.
fn widening_mul_u128(a: u128, b: u128) -> (u128, u128) {
    let (a_hi, a_lo) = (a >> 64, a & u128::from(u64::MAX));
    let (b_hi, b_lo) = (b >> 64, b & u128::from(u64::MAX));
    let ll = a_lo * b_lo;
    let lh = a_lo * b_hi;
    let hl = a_hi * b_lo;
    let hh = a_hi * b_hi;
    let mid = (ll >> 64) + (lh & u128::from(u64::MAX)) + (hl & u128::from(u64::MAX));
    let lo = (mid << 64) | (ll & u128::from(u64::MAX));
    let hi = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
    (hi, lo)
}

#[inline]
fn le_256(a: (u128, u128), b: (u128, u128)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 <= b.1)
}

/// Certified comparison of m*e against the integer x.
/// Returns true iff m*e <= x. Panics only if the 38-digit bracket cannot
/// decide, which cannot occur for m, x below ~1e30.
fn mul_e_le(m: u64, x: u64) -> bool {
    let lhs_hi = widening_mul_u128(m as u128, E_NUM_HI);
    let rhs = widening_mul_u128(x as u128, E_DEN);
    if le_256(lhs_hi, rhs) {
        return true; // m*e < m*E_NUM_HI/E_DEN <= x
    }
    let lhs_lo = widening_mul_u128(m as u128, E_NUM_LO);
    if le_256(rhs, lhs_lo) {
        return false; // m*e > m*E_NUM_LO/E_DEN >= x
    }
    unreachable!("rational bracket for e too narrow to decide {m}*e vs {x}");
}

/// floor(x / e), certified exactly.
pub fn floor_div_e(x: u64) -> u64 {
    if x == 0 {
        return 0;
    }
    let mut q = (x as f64 / DDouble::E.hi) as u64;
    q = q.saturating_sub(2);
    // floor(x/e) = q  <=>  q*e <= x < (q+1)*e
    while mul_e_le(q + 1, x) {
        q += 1;
    }
    q
}

/// floor(x * e), certified exactly.
pub fn floor_mul_e(x: u64) -> u64 {
    if x == 0 {
        return 0;
    }
    let mut m = (x as f64 * DDouble::E.hi) as u64;
    m = m.saturating_sub(2);
    // floor(x*e) = m  <=>  m <= x*e < m+1  <=>  !(x*e <= m) is false side:
    // advance while m+1 <= x*e, i.e. while NOT (x*e <= m+1 with strictness);
    // e is irrational so x*e is never an integer and <= equals <.
    while !mul_e_le(x, m + 1) {
        m += 1;
    }
    m
}

/// floor(x / e^n) for n >= 1. n = 1 uses the certified rational path; larger
/// n uses double-double with ~3e-30 relative error, far below the spacing of
/// the quotients that occur at or below 1e11.
pub fn floor_div_e_pow(x: u64, n: u32) -> u64 {
    debug_assert!(n >= 1);
    if n == 1 {
        return floor_div_e(x);
    }
    let q = DDouble::from_u64(x).div(DDouble::E.powi(n));
    let mut f = q.hi.floor();
    if q.hi - f + q.lo < 0.0 {
        f -= 1.0;
    } else if q.hi - f + q.lo >= 1.0 {
        f += 1.0;
    }
    f as u64
}
