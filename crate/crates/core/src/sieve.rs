//! Linear and segmented sieves.
//!
//! The linear (Euler) sieve produces Mobius values and a primality bitset in
//! O(N) for the in-memory range; segmented Eratosthenes answers prime-range
//! queries up to 1e12 with a base sieve no larger than sqrt(hi). Mobius
//! values are stored as signed bytes and primality as a bitset, so a full
//! table costs 9/8 bytes per integer.

use crate::error::{Error, Result};
use crate::numeric::isqrt;

/// Default ceiling on in-memory table sizes (entries, not bytes).
pub const MU_TABLE_CEILING: u64 = 1_000_000_000;
/// Segmented range queries are supported up to this bound.
pub const RANGE_CEILING: u64 = 1_000_000_000_000;
/// Cache-resident default segment length.
pub const DEFAULT_SEGMENT_LEN: u64 = 1 << 20;

/// Plain bitset over 0..len.
#[derive(Debug, Clone)]
pub struct BitSet {
    words: Vec<u64>,
    len: u64,
}

impl BitSet {
    pub fn new(len: u64) -> Self {
        BitSet {
            words: vec![0u64; (len as usize).div_ceil(64)],
            len,
        }
    }

    #[inline]
    pub fn set(&mut self, i: u64) {
        self.words[(i / 64) as usize] |= 1u64 << (i % 64);
    }

    #[inline]
    pub fn clear(&mut self, i: u64) {
        self.words[(i / 64) as usize] &= !(1u64 << (i % 64));
    }

    #[inline]
    pub fn get(&self, i: u64) -> bool {
        debug_assert!(i < self.len);
        self.words[(i / 64) as usize] & (1u64 << (i % 64)) != 0
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Sieved Mobius values mu(1..=limit) with a primality bitset.
#[derive(Debug, Clone)]
pub struct MuTable {
    limit: u64,
    mu: Vec<i8>,
    is_prime: BitSet,
}

impl MuTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// mu(n) for 1 <= n <= limit.
    #[inline]
    pub fn mu(&self, n: u64) -> i8 {
        self.mu[n as usize]
    }

    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && n <= self.limit && self.is_prime.get(n)
    }

    /// Iterator over (n, mu(n)) for n = 1..=limit.
    pub fn iter(&self) -> impl Iterator<Item = (u64, i8)> + '_ {
        (1..=self.limit).map(move |n| (n, self.mu[n as usize]))
    }
}

/// Build mu(1..=limit) and the prime bitset with a linear sieve.
pub fn build_mu_table(limit: u64) -> Result<MuTable> {
    build_mu_table_with_ceiling(limit, MU_TABLE_CEILING)
}

pub fn build_mu_table_with_ceiling(limit: u64, ceiling: u64) -> Result<MuTable> {
    if limit == 0 || limit > ceiling {
        return Err(Error::Capacity {
            what: "mu table limit",
            requested: limit,
            ceiling,
        });
    }
    let n = limit as usize;
    let mut mu = vec![0i8; n + 1];
    let mut is_prime = BitSet::new(limit + 1);
    let mut primes: Vec<u32> = Vec::new();
    mu[1] = 1;
    // Linear sieve: every composite is struck exactly once, by its smallest
    // prime factor, which is what makes the mu propagation exact.
    let mut composite = vec![false; n + 1];
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u32);
            is_prime.set(i as u64);
            mu[i] = -1;
        }
        for &p in &primes {
            let p = p as usize;
            if i * p > n {
                break;
            }
            composite[i * p] = true;
            if i % p == 0 {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    Ok(MuTable {
        limit,
        mu,
        is_prime,
    })
}

/// Sum of mu(d) over the divisors d of n. Equals 1 at n = 1, else 0.
pub fn mobius_divisor_sum(n: u64, table: &MuTable) -> Result<i64> {
    if n == 0 || n > table.limit() {
        return Err(Error::OutOfRange {
            what: "divisor-sum argument",
            value: n,
            limit: table.limit(),
            hint: "build a larger mu table",
        });
    }
    let mut sum = 0i64;
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            sum += i64::from(table.mu(d));
            let q = n / d;
            if q != d {
                sum += i64::from(table.mu(q));
            }
        }
        d += 1;
    }
    Ok(sum)
}

/// A segment tiling of an inclusive range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentPlan {
    pub segment_length: u64,
    pub range_lo: u64,
    pub range_hi: u64,
}

impl SegmentPlan {
    pub fn new(range_lo: u64, range_hi: u64) -> Result<Self> {
        Self::with_segment_length(range_lo, range_hi, DEFAULT_SEGMENT_LEN)
    }

    pub fn with_segment_length(range_lo: u64, range_hi: u64, segment_length: u64) -> Result<Self> {
        if range_lo > range_hi {
            return Err(Error::InvalidArgument(format!(
                "range_lo {range_lo} exceeds range_hi {range_hi}"
            )));
        }
        if range_lo == 0 {
            return Err(Error::InvalidArgument(
                "range_lo must be a positive integer".into(),
            ));
        }
        if segment_length < 2 {
            return Err(Error::InvalidArgument(format!(
                "segment_length {segment_length} must be at least 2"
            )));
        }
        Ok(SegmentPlan {
            segment_length,
            range_lo,
            range_hi,
        })
    }

    /// The non-overlapping segments tiling [range_lo, range_hi].
    pub fn segments(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let len = self.segment_length;
        let hi = self.range_hi;
        (self.range_lo..=hi)
            .step_by(len as usize)
            .map(move |lo| (lo, hi.min(lo + len - 1)))
    }
}

/// Exactly the primes in [plan.range_lo, plan.range_hi], ascending.
pub fn primes_in_range(plan: &SegmentPlan) -> Result<Vec<u64>> {
    if plan.range_hi > RANGE_CEILING {
        return Err(Error::Capacity {
            what: "range_hi",
            requested: plan.range_hi,
            ceiling: RANGE_CEILING,
        });
    }
    let mut out = Vec::new();
    for_each_prime_in(plan, |p| out.push(p))?;
    Ok(out)
}

/// Stream the primes of [lo, hi] in ascending order into `f`.
pub fn for_each_prime(lo: u64, hi: u64, f: impl FnMut(u64)) -> Result<()> {
    let plan = SegmentPlan::new(lo.max(1), hi)?;
    for_each_prime_in(&plan, f)
}

fn for_each_prime_in(plan: &SegmentPlan, mut f: impl FnMut(u64)) -> Result<()> {
    let (lo, hi) = (plan.range_lo, plan.range_hi);
    if hi < 2 {
        return Ok(());
    }
    if lo <= 2 {
        f(2);
    }
    let root = isqrt(hi);
    let base = small_odd_primes(root);

    // Odd-only bitset per segment: bit i of a segment starting at odd value
    // s represents s + 2i; a set bit marks a composite.
    for (seg_lo, seg_hi) in plan.segments() {
        let first_odd = if seg_lo <= 3 {
            3
        } else if seg_lo % 2 == 0 {
            seg_lo + 1
        } else {
            seg_lo
        };
        if first_odd > seg_hi {
            continue;
        }
        let n_odds = (seg_hi - first_odd) / 2 + 1;
        let mut bits = vec![0u64; (n_odds as usize).div_ceil(64)];
        for &p in &base {
            let p = p as u64;
            if p * p > seg_hi {
                break;
            }
            let mut start = p * p;
            if start < first_odd {
                let k = first_odd.div_ceil(p);
                start = k * p;
                if start.is_multiple_of(2) {
                    start += p;
                }
            }
            let mut m = start;
            while m <= seg_hi {
                let i = (m - first_odd) / 2;
                bits[(i / 64) as usize] |= 1 << (i % 64);
                m += 2 * p;
            }
        }
        for i in 0..n_odds {
            if bits[(i / 64) as usize] & (1 << (i % 64)) == 0 {
                let n = first_odd + 2 * i;
                if n >= lo {
                    f(n);
                }
            }
        }
    }
    Ok(())
}

/// Odd primes up to `limit` (inclusive) by a simple odd-only sieve.
fn small_odd_primes(limit: u64) -> Vec<u32> {
    if limit < 3 {
        return Vec::new();
    }
    let n_odds = ((limit - 3) / 2 + 1) as usize;
    let mut composite = vec![false; n_odds];
    let mut primes = Vec::new();
    for i in 0..n_odds {
        if !composite[i] {
            let p = 3 + 2 * i as u64;
            primes.push(p as u32);
            let mut m = p * p;
            while m <= limit {
                composite[((m - 3) / 2) as usize] = true;
                m += 2 * p;
            }
        }
    }
    primes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu_by_trial_division(mut n: u64) -> i8 {
        if n == 1 {
            return 1;
        }
        let mut k = 0;
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                n /= d;
                if n.is_multiple_of(d) {
                    return 0;
                }
                k += 1;
            }
            d += 1;
        }
        if n > 1 {
            k += 1;
        }
        if k % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn mu_table_definition_cases() {
        let t = build_mu_table(30).unwrap();
        assert_eq!(t.mu(1), 1);
        assert_eq!(t.mu(30), -1); // 2*3*5
        assert_eq!(t.mu(12), 0); // 2^2 | 12
        assert_eq!(t.mu(2), -1);
        assert_eq!(t.mu(6), 1);
        let t1 = build_mu_table(1).unwrap();
        assert_eq!(t1.mu(1), 1);
    }

    #[test]
    fn mu_table_capacity_errors() {
        let err = build_mu_table(0).unwrap_err();
        assert!(err.to_string().contains(&MU_TABLE_CEILING.to_string()));
        let err = build_mu_table_with_ceiling(11, 10).unwrap_err();
        assert!(matches!(err, Error::Capacity { ceiling: 10, .. }));
    }

    #[test]
    fn mu_matches_trial_division_to_1e5() {
        let t = build_mu_table(100_000).unwrap();
        for n in 1..=100_000u64 {
            assert_eq!(t.mu(n), mu_by_trial_division(n), "mu({n})");
        }
    }

    #[test]
    fn prime_flags_match_divisor_counts() {
        let t = build_mu_table(1000).unwrap();
        for n in 1..=1000u64 {
            let divisors = (1..=n).filter(|d| n % d == 0).count();
            assert_eq!(t.is_prime(n), divisors == 2, "n={n}");
        }
    }

    #[test]
    fn squarefree_count_matches_inclusion_exclusion() {
        let n = 1_000_000u64;
        let t = build_mu_table(n).unwrap();
        let sieved = t.iter().filter(|&(_, m)| m != 0).count() as i64;
        let by_inclusion_exclusion: i64 = (1..=1000u64)
            .map(|d| i64::from(t.mu(d)) * (n / (d * d)) as i64)
            .sum();
        assert_eq!(sieved, by_inclusion_exclusion);
        assert_eq!(sieved, 607_926);
    }

    #[test]
    fn divisor_sum_examples() {
        let t = build_mu_table(6000).unwrap();
        assert_eq!(mobius_divisor_sum(1, &t).unwrap(), 1);
        assert_eq!(mobius_divisor_sum(6, &t).unwrap(), 0);
        assert_eq!(mobius_divisor_sum(5040, &t).unwrap(), 0);
        for n in 2..=2000 {
            assert_eq!(mobius_divisor_sum(n, &t).unwrap(), 0, "n={n}");
        }
        assert!(mobius_divisor_sum(6001, &t).is_err());
    }

    #[test]
    fn primes_in_small_ranges() {
        let plan = SegmentPlan::new(1, 10).unwrap();
        assert_eq!(primes_in_range(&plan).unwrap(), vec![2, 3, 5, 7]);
        let plan = SegmentPlan::new(90, 100).unwrap();
        assert_eq!(primes_in_range(&plan).unwrap(), vec![97]);
        let plan = SegmentPlan::new(2, 2).unwrap();
        assert_eq!(primes_in_range(&plan).unwrap(), vec![2]);
    }

    #[test]
    fn primes_near_1e9_match_trial_division() {
        let lo = 1_000_000_000u64;
        let hi = lo + 100;
        let plan = SegmentPlan::new(lo, hi).unwrap();
        let got = primes_in_range(&plan).unwrap();
        let want: Vec<u64> = (lo..=hi)
            .filter(|&n| {
                let mut d = 2u64;
                while d * d <= n {
                    if n % d == 0 {
                        return false;
                    }
                    d += 1;
                }
                n >= 2
            })
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn segment_tiling_concatenates() {
        let tiled = SegmentPlan::with_segment_length(1, 10_000, 137).unwrap();
        let whole = SegmentPlan::new(1, 10_000).unwrap();
        assert_eq!(
            primes_in_range(&tiled).unwrap(),
            primes_in_range(&whole).unwrap()
        );
        // segments() tiles without gaps or overlap
        let mut expect = 1u64;
        for (lo, hi) in tiled.segments() {
            assert_eq!(lo, expect);
            assert!(hi >= lo && hi <= 10_000);
            expect = hi + 1;
        }
        assert_eq!(expect, 10_001);
    }

    #[test]
    fn plan_validation() {
        assert!(SegmentPlan::new(10, 5).is_err());
        assert!(SegmentPlan::new(0, 5).is_err());
        assert!(SegmentPlan::with_segment_length(1, 5, 1).is_err());
        let plan = SegmentPlan {
            segment_length: DEFAULT_SEGMENT_LEN,
            range_lo: 1,
            range_hi: RANGE_CEILING + 1,
        };
        assert!(matches!(
            primes_in_range(&plan),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn pi_1e6_reference() {
        let mut count = 0u64;
        for_each_prime(1, 1_000_000, |_| count += 1).unwrap();
        assert_eq!(count, 78_498);
    }
}
