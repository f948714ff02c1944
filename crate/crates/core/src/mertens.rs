//! Mertens function M(x) = sum of mu(n) for n <= x.
//!
//! A dense prefix table answers M(x) directly up to its limit; beyond it the
//! engine evaluates M(x) exactly with the floor-quotient recursion
//! `M(x) = 1 - sum_{n=2..x} M(floor(x/n))`,
//! grouped over blocks of equal quotient, which is the divisor-sum identity
//! for mu turned into an O(x^{2/3})-style algorithm. The same machinery
//! yields sum_{n<=x} M(floor(x/n)), which collapses to 1 for every x.

use crate::error::{Error, Result};
use crate::numeric::isqrt;
use crate::sieve::{build_mu_table_with_ceiling, MU_TABLE_CEILING};
use std::collections::HashMap;
use std::sync::Mutex;

/// Sublinear evaluation is supported up to this argument.
pub const MERTENS_X_CEILING: u64 = 1_000_000_000_000;
/// Quotient sums are supported up to this argument.
pub const QUOTIENT_SUM_CEILING: u64 = 100_000_000_000;
/// Default dense prefix size.
pub const DEFAULT_DENSE_LIMIT: u64 = 1_000_000;

/// Which square-root bound to test M against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MertensBound {
    /// |M(n)| < sqrt(n)
    SqrtN,
    /// |M(n)| < sqrt(n)/2
    HalfSqrtN,
}

/// Dense Mertens prefix sums plus a memo for big floor-quotient arguments.
pub struct MertensEngine {
    dense_limit: u64,
    dense: Vec<i32>,
    memo: Mutex<HashMap<u64, i64>>,
}

impl MertensEngine {
    /// Build the dense prefix table M(1..=dense_limit).
    pub fn new(dense_limit: u64) -> Result<Self> {
        let table = build_mu_table_with_ceiling(dense_limit, MU_TABLE_CEILING)?;
        let mut dense = vec![0i32; dense_limit as usize + 1];
        let mut acc = 0i32;
        for n in 1..=dense_limit {
            acc += i32::from(table.mu(n));
            dense[n as usize] = acc;
        }
        Ok(MertensEngine {
            dense_limit,
            dense,
            memo: Mutex::new(HashMap::new()),
        })
    }

    /// Dense table size recommended for a batch of sublinear queries up to x.
    pub fn recommended_dense_limit(x: u64) -> u64 {
        let cube = (x as f64).powf(2.0 / 3.0).ceil() as u64;
        cube.clamp(DEFAULT_DENSE_LIMIT, MU_TABLE_CEILING)
    }

    pub fn dense_limit(&self) -> u64 {
        self.dense_limit
    }

    /// M(x) from the dense table.
    pub fn mertens_dense(&self, x: u64) -> Result<i64> {
        if x == 0 || x > self.dense_limit {
            return Err(Error::OutOfRange {
                what: "mertens argument",
                value: x,
                limit: self.dense_limit,
                hint: "use mertens_sublinear",
            });
        }
        Ok(i64::from(self.dense[x as usize]))
    }

    /// Exact M(x) for x up to 1e12 via the quotient recursion.
    pub fn mertens_sublinear(&self, x: u64) -> Result<i64> {
        if x == 0 || x > MERTENS_X_CEILING {
            return Err(Error::Capacity {
                what: "mertens argument",
                requested: x,
                ceiling: MERTENS_X_CEILING,
            });
        }
        if x <= self.dense_limit {
            return Ok(i64::from(self.dense[x as usize]));
        }
        if let Some(&m) = self.memo.lock().unwrap().get(&x) {
            return Ok(m);
        }
        let big = self.big_quotient_values(x);
        let m = big[1];
        let mut memo = self.memo.lock().unwrap();
        for (n, &value) in big.iter().enumerate().skip(1) {
            let q = x / n as u64;
            if q > self.dense_limit {
                memo.insert(q, value);
            }
        }
        Ok(m)
    }

    /// sum_{n<=x} M(floor(x/n)), evaluated by floor-quotient blocking.
    /// The divisor-sum identity forces this to equal 1 for every x >= 1.
    pub fn quotient_sum(&self, x: u64) -> Result<i64> {
        if x == 0 || x > QUOTIENT_SUM_CEILING {
            return Err(Error::Capacity {
                what: "quotient-sum argument",
                requested: x,
                ceiling: QUOTIENT_SUM_CEILING,
            });
        }
        let big = if x > self.dense_limit {
            self.big_quotient_values(x)
        } else {
            Vec::new()
        };
        let mut sum = 0i64;
        let mut n = 1u64;
        while n <= x {
            let q = x / n;
            let n_end = x / q;
            let m = if q <= self.dense_limit {
                i64::from(self.dense[q as usize])
            } else {
                big[(x / q) as usize]
            };
            sum += m * (n_end - n + 1) as i64;
            n = n_end + 1;
        }
        Ok(sum)
    }

    /// M at every quotient value of x that exceeds the dense limit.
    ///
    /// Entry n holds M(floor(x/n)); n runs from 1 to x/dense_limit. This is
    /// the per-query scratch: small quotients are read from the shared dense
    /// table, large ones are indexed by their cofactor n.
    fn big_quotient_values(&self, x: u64) -> Vec<i64> {
        let n_max = (x / self.dense_limit.max(1)).max(1) as usize;
        let mut big = vec![0i64; n_max + 1];
        for n in (1..=n_max).rev() {
            let v = x / n as u64;
            if v <= self.dense_limit {
                big[n] = i64::from(self.dense[v as usize]);
                continue;
            }
            // M(v) = 1 - sum_{m=2..v} M(floor(v/m)) over equal-quotient blocks
            let mut m_v = 1i64;
            let mut m = 2u64;
            while m <= v {
                let q = v / m;
                let m_end = v / q;
                let mq = if q <= self.dense_limit {
                    i64::from(self.dense[q as usize])
                } else {
                    // floor(v/m) = floor(x/(n*m')) stays in the quotient set
                    big[(x / q) as usize]
                };
                m_v -= mq * (m_end - m + 1) as i64;
                m = m_end + 1;
            }
            big[n] = m_v;
        }
        big
    }

    /// Every n in [lo, hi] (requires hi <= dense_limit) violating the bound.
    /// Comparisons are exact: M(n)^2 vs n, or 4 M(n)^2 vs n.
    pub fn bound_violations(&self, lo: u64, hi: u64, bound: MertensBound) -> Result<Vec<u64>> {
        if lo == 0 || lo > hi {
            return Err(Error::InvalidArgument(format!(
                "invalid bound-check range [{lo}, {hi}]"
            )));
        }
        if hi > self.dense_limit {
            return Err(Error::OutOfRange {
                what: "bound-check upper end",
                value: hi,
                limit: self.dense_limit,
                hint: "build a larger dense table",
            });
        }
        let mut out = Vec::new();
        for n in lo..=hi {
            let m = i64::from(self.dense[n as usize]);
            let m2 = (m * m) as u64;
            let violated = match bound {
                MertensBound::SqrtN => m2 >= n,
                MertensBound::HalfSqrtN => 4 * m2 >= n,
            };
            if violated {
                out.push(n);
            }
        }
        Ok(out)
    }
}

/// Ascending floor-quotient values of x (the O(sqrt x) distinct floor(x/n)).
pub fn quotient_values(x: u64) -> Vec<u64> {
    let r = isqrt(x);
    let mut vals = Vec::with_capacity(2 * r as usize + 2);
    for v in 1..=r {
        vals.push(v);
    }
    for n in (1..=r).rev() {
        let v = x / n;
        if v > r {
            vals.push(v);
        }
    }
    vals
}
