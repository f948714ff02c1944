//! Exact prime counting and the second Chebyshev function.
//!
//! pi(x) comes in three flavors: a dense bitset-with-rank table for x within
//! memory, a segmented streaming recount (the oracle side of dual-method
//! checks), and the sublinear floor-quotient recursion that carries exact
//! values to 1e11. psi(x) enumerates prime powers directly: primes once via
//! the segmented sieve, then one extra pass per exponent level m with
//! p <= x^(1/m), accumulating log p under Kahan compensation.

use crate::error::{Error, Result};
use crate::numeric::{iroot, isqrt, KahanSum};
use crate::sieve::for_each_prime;
use std::collections::HashMap;
use std::sync::Mutex;

/// psi enumeration is supported up to this argument.
pub const PSI_CEILING: u64 = 10_000_000_000;
/// Sublinear pi is supported up to this argument.
pub const PI_SUBLINEAR_CEILING: u64 = 100_000_000_000;
/// Dense pi tables are supported up to this size.
pub const PI_DENSE_CEILING: u64 = 10_000_000_000;
/// Default dense table size.
pub const DEFAULT_PI_DENSE_LIMIT: u64 = 100_000_000;

/// psi(x) with the number of prime powers that contributed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiValue {
    pub x: u64,
    pub psi: f64,
    pub terms: u64,
}

/// One point of a combined pi/psi sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepSample {
    pub x: u64,
    pub pi: u64,
    pub psi: f64,
    pub psi_terms: u64,
}

/// Dense prime counts (bitset with per-word rank) plus a memo for the
/// sublinear path.
pub struct PrimeCountEngine {
    dense_limit: u64,
    words: Vec<u64>,
    rank: Vec<u32>,
    memo: Mutex<HashMap<u64, u64>>,
}

impl PrimeCountEngine {
    pub fn new(dense_limit: u64) -> Result<Self> {
        if dense_limit == 0 || dense_limit > PI_DENSE_CEILING {
            return Err(Error::Capacity {
                what: "pi dense limit",
                requested: dense_limit,
                ceiling: PI_DENSE_CEILING,
            });
        }
        // Odd-only sieve: bit i represents 2i + 1, set = prime.
        let n_bits = (dense_limit / 2 + 1) as usize;
        let n_words = n_bits.div_ceil(64);
        let mut words = vec![u64::MAX; n_words];
        words[0] &= !1; // 1 is not prime
        let tail = n_words * 64 - n_bits;
        if tail > 0 {
            words[n_words - 1] >>= tail;
        }
        let root = isqrt(dense_limit);
        let mut p = 3u64;
        while p <= root {
            if words[(p / 2 / 64) as usize] & (1 << (p / 2 % 64)) != 0 {
                let mut m = p * p;
                while m <= dense_limit {
                    let i = m / 2;
                    words[(i / 64) as usize] &= !(1 << (i % 64));
                    m += 2 * p;
                }
            }
            p += 2;
        }
        let mut rank = vec![0u32; n_words + 1];
        let mut acc = 0u32;
        for (w, &word) in words.iter().enumerate() {
            rank[w] = acc;
            acc += word.count_ones();
        }
        rank[n_words] = acc;
        Ok(PrimeCountEngine {
            dense_limit,
            words,
            rank,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn dense_limit(&self) -> u64 {
        self.dense_limit
    }

    /// pi(x) from the dense table.
    pub fn pi_exact(&self, x: u64) -> Result<u64> {
        if x > self.dense_limit {
            return Err(Error::OutOfRange {
                what: "pi argument",
                value: x,
                limit: self.dense_limit,
                hint: "use pi_sublinear",
            });
        }
        if x < 2 {
            return Ok(0);
        }
        let i = (x - 1) / 2; // largest bit index with 2i+1 <= x
        let w = (i / 64) as usize;
        let within = self.words[w] & (u64::MAX >> (63 - i % 64));
        Ok(1 + u64::from(self.rank[w]) + u64::from(within.count_ones()))
    }

    /// Exact pi(x) for x up to 1e11 via the quotient-set recursion.
    pub fn pi_sublinear(&self, x: u64) -> Result<u64> {
        if x > PI_SUBLINEAR_CEILING {
            return Err(Error::Capacity {
                what: "pi argument",
                requested: x,
                ceiling: PI_SUBLINEAR_CEILING,
            });
        }
        if x <= self.dense_limit {
            return self.pi_exact(x);
        }
        if let Some(&v) = self.memo.lock().unwrap().get(&x) {
            return Ok(v);
        }
        let v = lucy_pi(x);
        self.memo.lock().unwrap().insert(x, v);
        Ok(v)
    }

    /// pi(x) choosing the dense table when it covers x.
    pub fn pi(&self, x: u64) -> Result<u64> {
        if x <= self.dense_limit {
            self.pi_exact(x)
        } else {
            self.pi_sublinear(x)
        }
    }
}

/// Prime counting by the floor-quotient sieve: maintain
/// S(v) = #{2 <= n <= v : n not struck} for every quotient value v of x,
/// striking one prime p <= sqrt(x) at a time.
pub fn lucy_pi(x: u64) -> u64 {
    if x < 2 {
        return 0;
    }
    let r = isqrt(x);
    let mut small = vec![0i64; r as usize + 1];
    let mut large = vec![0i64; r as usize + 1];
    for v in 1..=r {
        small[v as usize] = v as i64 - 1;
    }
    for j in 1..=r {
        large[j as usize] = (x / j) as i64 - 1;
    }
    for p in 2..=r {
        if small[p as usize] == small[p as usize - 1] {
            continue; // p composite
        }
        let sp = small[p as usize - 1];
        let p2 = p * p;
        let j_max = r.min(x / p2);
        for j in 1..=j_max {
            let d = j * p;
            let vd = x / d;
            let term = if vd <= r {
                small[vd as usize]
            } else {
                large[d as usize]
            };
            large[j as usize] -= term - sp;
        }
        for v in (p2..=r).rev() {
            small[v as usize] -= small[(v / p) as usize] - sp;
        }
    }
    large[1] as u64
}

/// Exact pi(x) by streaming a segmented sieve; the Eratosthenes-side oracle
/// for dual-method agreement checks.
pub fn pi_segmented_count(x: u64) -> u64 {
    let mut count = 0u64;
    if x >= 2 {
        for_each_prime(1, x, |_| count += 1).expect("range within ceiling");
    }
    count
}

/// psi at one point.
pub fn psi_exact(x: u64) -> Result<PsiValue> {
    let s = sweep_samples(&[x])?.pop().expect("one sample");
    Ok(PsiValue {
        x: s.x,
        psi: s.psi,
        terms: s.psi_terms,
    })
}

/// pi and psi at several ascending points from a single prime sweep.
pub fn sweep_samples(points: &[u64]) -> Result<Vec<SweepSample>> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("no sample points".into()));
    }
    if points.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument(
            "sample points must be ascending".into(),
        ));
    }
    if points[0] == 0 {
        return Err(Error::InvalidArgument(
            "sample points must be positive".into(),
        ));
    }
    let max = *points.last().expect("nonempty");
    if max > PSI_CEILING {
        return Err(Error::Capacity {
            what: "psi argument",
            requested: max,
            ceiling: PSI_CEILING,
        });
    }

    // Prefix sums of log p over the small primes p <= sqrt(max), for the
    // m >= 2 exponent levels.
    let root = isqrt(max);
    let mut small_primes: Vec<u64> = Vec::new();
    if root >= 2 {
        for_each_prime(1, root, |p| small_primes.push(p))?;
    }
    let mut theta_prefix = Vec::with_capacity(small_primes.len() + 1);
    theta_prefix.push(0.0f64);
    let mut acc = KahanSum::new();
    for &p in &small_primes {
        acc.add((p as f64).ln());
        theta_prefix.push(acc.value());
    }
    let small_stats = |bound: u64| -> (f64, u64) {
        let idx = small_primes.partition_point(|&p| p <= bound);
        (theta_prefix[idx], idx as u64)
    };

    // One streaming pass accumulates theta(x) = sum_{p<=x} log p and pi(x).
    let mut out: Vec<SweepSample> = Vec::with_capacity(points.len());
    {
        let mut theta = KahanSum::new();
        let mut pi = 0u64;
        let mut next = 0usize;
        let flush_until = |bound_exclusive: u64,
                           theta: &KahanSum,
                           pi: u64,
                           next: &mut usize,
                           out: &mut Vec<SweepSample>| {
            while *next < points.len() && points[*next] < bound_exclusive {
                out.push(SweepSample {
                    x: points[*next],
                    pi,
                    psi: theta.value(),
                    psi_terms: pi,
                });
                *next += 1;
            }
        };
        if max >= 2 {
            for_each_prime(1, max, |p| {
                flush_until(p, &theta, pi, &mut next, &mut out);
                theta.add((p as f64).ln());
                pi += 1;
            })?;
        }
        flush_until(u64::MAX, &theta, pi, &mut next, &mut out);
    }

    // Add the higher prime-power levels: for each m >= 2, theta(x^(1/m)).
    for sample in &mut out {
        let x = sample.x;
        let mut m = 2u32;
        loop {
            let r = iroot(x, m);
            if r < 2 {
                break;
            }
            let (theta_r, count_r) = small_stats(r);
            sample.psi += theta_r;
            sample.psi_terms += count_r;
            m += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_exact_small() {
        let e = PrimeCountEngine::new(1000).unwrap();
        assert_eq!(e.pi_exact(1).unwrap(), 0);
        assert_eq!(e.pi_exact(2).unwrap(), 1);
        assert_eq!(e.pi_exact(3).unwrap(), 2);
        assert_eq!(e.pi_exact(10).unwrap(), 4);
        assert_eq!(e.pi_exact(100).unwrap(), 25);
        assert_eq!(e.pi_exact(1000).unwrap(), 168);
        assert!(matches!(e.pi_exact(1001), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn pi_exact_matches_trial_division_to_1e4() {
        let e = PrimeCountEngine::new(10_000).unwrap();
        let mut count = 0u64;
        for n in 1..=10_000u64 {
            let mut is_p = n >= 2;
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    is_p = false;
                    break;
                }
                d += 1;
            }
            if is_p {
                count += 1;
            }
            assert_eq!(e.pi_exact(n).unwrap(), count, "n={n}");
        }
    }

    #[test]
    fn pi_dense_is_monotone_with_unit_steps() {
        let e = PrimeCountEngine::new(5000).unwrap();
        let mut prev = 0;
        for n in 1..=5000 {
            let v = e.pi_exact(n).unwrap();
            assert!(v == prev || v == prev + 1);
            prev = v;
        }
    }

    #[test]
    fn lucy_matches_dense_to_1e4() {
        let e = PrimeCountEngine::new(10_000).unwrap();
        for x in 0..=10_000u64 {
            assert_eq!(lucy_pi(x), e.pi_exact(x).unwrap(), "x={x}");
        }
    }

    #[test]
    fn lucy_known_decades() {
        assert_eq!(lucy_pi(1_000_000), 78_498);
        assert_eq!(lucy_pi(10_000_000), 664_579);
        assert_eq!(lucy_pi(100_000_000), 5_761_455);
    }

    #[test]
    fn engine_routes_and_memoizes() {
        let e = PrimeCountEngine::new(1000).unwrap();
        assert_eq!(e.pi(100).unwrap(), 25);
        assert_eq!(e.pi(1_000_000).unwrap(), 78_498);
        assert_eq!(e.memo.lock().unwrap().get(&1_000_000), Some(&78_498));
        assert_eq!(e.pi_sublinear(1_000_000).unwrap(), 78_498);
        assert!(e.pi_sublinear(PI_SUBLINEAR_CEILING + 1).is_err());
    }

    #[test]
    fn segmented_recount_matches() {
        assert_eq!(pi_segmented_count(0), 0);
        assert_eq!(pi_segmented_count(100), 25);
        assert_eq!(pi_segmented_count(1_000_000), 78_498);
    }

    #[test]
    fn psi_small_values() {
        let v = psi_exact(1).unwrap();
        assert_eq!((v.psi, v.terms), (0.0, 0));
        // prime powers <= 10: 2,3,4,5,7,8,9 -> 3 ln2 + 2 ln3 + ln5 + ln7
        let v = psi_exact(10).unwrap();
        assert_eq!(v.terms, 7);
        let expect = 3.0 * 2f64.ln() + 2.0 * 3f64.ln() + 5f64.ln() + 7f64.ln();
        assert!((v.psi - expect).abs() < 1e-12, "psi(10) = {}", v.psi);
        assert!((v.psi - 7.832014).abs() < 1e-6);
        let v2 = psi_exact(2).unwrap();
        assert!((v2.psi - 2f64.ln()).abs() < 1e-15);
        assert_eq!(v2.terms, 1);
    }

    #[test]
    fn psi_increments_classify_prime_powers() {
        // psi(x) - psi(x-1) = log p when x = p^m, else 0.
        let samples = sweep_samples(&(1..=2000u64).collect::<Vec<_>>()).unwrap();
        for w in samples.windows(2) {
            let x = w[1].x;
            let inc = w[1].psi - w[0].psi;
            let mut expected = 0.0;
            for m in 1..=11u32 {
                let r = iroot(x, m);
                let mut pow = 1u64;
                let mut exact = true;
                for _ in 0..m {
                    pow = match pow.checked_mul(r) {
                        Some(v) => v,
                        None => {
                            exact = false;
                            break;
                        }
                    };
                }
                if exact && pow == x && is_prime_trial(r) {
                    expected = (r as f64).ln();
                    break;
                }
            }
            assert!(
                (inc - expected).abs() < 1e-9,
                "x={x} inc={inc} expected={expected}"
            );
        }
    }

    fn is_prime_trial(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn psi_1e6_against_fixed_point_oracle() {
        // Same term set, summed in 128-bit fixed point (2^64 scale).
        let x = 1_000_000u64;
        let got = psi_exact(x).unwrap();
        let scale = 2f64.powi(64);
        let mut acc: i128 = 0;
        let mut terms = 0u64;
        for_each_prime(1, x, |p| {
            acc += ((p as f64).ln() * scale) as i128;
            terms += 1;
        })
        .unwrap();
        let mut m = 2u32;
        loop {
            let r = iroot(x, m);
            if r < 2 {
                break;
            }
            for_each_prime(1, r, |p| {
                acc += ((p as f64).ln() * scale) as i128;
                terms += 1;
            })
            .unwrap();
            m += 1;
        }
        let oracle = acc as f64 / scale;
        assert_eq!(got.terms, terms);
        assert!(
            (got.psi - oracle).abs() < 3e-6,
            "psi={} oracle={}",
            got.psi,
            oracle
        );
    }

    #[test]
    fn psi_capacity_and_argument_errors() {
        assert!(psi_exact(0).is_err());
        assert!(psi_exact(PSI_CEILING + 1).is_err());
        assert!(sweep_samples(&[]).is_err());
        assert!(sweep_samples(&[5, 3]).is_err());
    }

    #[test]
    fn sweep_pi_matches_engine() {
        let pts: Vec<u64> = vec![1, 2, 10, 97, 1000, 65_536, 1_000_000];
        let samples = sweep_samples(&pts).unwrap();
        let e = PrimeCountEngine::new(1_000_000).unwrap();
        for s in samples {
            assert_eq!(s.pi, e.pi_exact(s.x).unwrap(), "x={}", s.x);
        }
    }
}
