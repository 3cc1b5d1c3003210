//! Segmented verification that every `n` in a range is a prime plus a
//! non-squarefree integer.
//!
//! Each segment `[lo, hi)` runs three stages and attributes every `n` to the
//! first stage that succeeds:
//!
//! 1. **covering**: for every prime `p` in the sieve window, mark `p + s` for
//!    all non-squarefree `s` in the table `S1`. Implemented as a word-parallel
//!    OR of the shifted prime mask, one shift per `s`, stopping as soon as the
//!    whole segment is marked (later shifts cannot change the result).
//! 2. **targeted**: for each unmarked `n`, scan `S2` ascending and test
//!    `n - s` for primality.
//! 3. **fallback**: exhaustive search over every `s` in `[4, n - 2]`.
//!
//! Anything left over is an exception. With the default left-extended window
//! `[lo - s1_bound, hi)` and `S2 ⊆ S1`, the covering stage subsumes the
//! targeted stage; set `extend_cover_left = false` to cover from primes inside
//! the segment only, which leaves work near the left edge to the later stages.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::arith::sieve::DEFAULT_SEGMENT_CAPACITY;
use crate::arith::{is_prime_u64, is_squarefree, BitSet, SegmentSieve, SieveSegment};
use crate::error::{Error, Result};
use crate::representations::RepresentationWitness;

/// Smallest `n` the pipeline accepts; 24 is the last exception.
pub const MIN_START: u64 = 25;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifierConfig {
    pub segment_width: u64,
    pub s1_bound: u64,
    pub s2_bound: u64,
    pub thread_count: usize,
    /// Cover from primes in `[lo - s1_bound, hi)` rather than `[lo, hi)`.
    pub extend_cover_left: bool,
}

impl Default for VerifierConfig {
    fn default() -> Self {
        VerifierConfig {
            segment_width: 10_000_000,
            s1_bound: 100_000,
            s2_bound: 10_000,
            thread_count: std::thread::available_parallelism().map_or(1, |n| n.get()),
            extend_cover_left: true,
        }
    }
}

impl VerifierConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(crate::error::domain(msg));
        if self.segment_width == 0 || self.segment_width > DEFAULT_SEGMENT_CAPACITY {
            return bad("segment_width must be in [1, segment capacity]");
        }
        if self.s2_bound < 4 || self.s1_bound < 4 {
            return bad("s1_bound and s2_bound must be >= 4");
        }
        if self.s2_bound > self.s1_bound {
            return bad("s2_bound must not exceed s1_bound");
        }
        if self.thread_count == 0 {
            return bad("thread_count must be positive");
        }
        Ok(())
    }
}

/// Precomputed non-squarefree tables.
#[derive(Clone, Debug)]
pub struct Tables {
    s1_mask: BitSet,
    s1: Vec<u64>,
    s2: Vec<u64>,
}

impl Tables {
    /// Membership in `S1`: non-squarefree `m` in `(1, s1_bound]`.
    pub fn in_s1(&self, m: u64) -> bool {
        (m as usize) < self.s1_mask.len() && self.s1_mask.get(m as usize)
    }

    pub fn s1(&self) -> &[u64] {
        &self.s1
    }

    pub fn s2(&self) -> &[u64] {
        &self.s2
    }
}

pub fn build_tables(cfg: &VerifierConfig) -> Result<Tables> {
    if cfg.s1_bound < 4 || cfg.s2_bound < 4 {
        return Err(crate::error::domain("table bounds must be >= 4"));
    }
    let top = cfg.s1_bound.max(cfg.s2_bound);
    let seg = crate::arith::sieve_segment_with_capacity(0, top + 1, false, top + 1)?;
    let mut s1_mask = BitSet::zeros(cfg.s1_bound as usize + 1);
    let mut s1 = Vec::new();
    for m in 2..=cfg.s1_bound {
        if !seg.is_squarefree(m) {
            s1_mask.set(m as usize);
            s1.push(m);
        }
    }
    let s2 = (2..=cfg.s2_bound)
        .filter(|&m| !seg.is_squarefree(m))
        .collect();
    Ok(Tables { s1_mask, s1, s2 })
}

/// Per-range outcome. Equality ignores `elapsed`.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub lo: u64,
    pub hi: u64,
    pub covered_count: u64,
    pub targeted_count: u64,
    pub fallback_count: u64,
    pub exceptions: Vec<u64>,
    pub elapsed: Duration,
}

impl PartialEq for VerificationReport {
    fn eq(&self, other: &Self) -> bool {
        self.lo == other.lo
            && self.hi == other.hi
            && self.covered_count == other.covered_count
            && self.targeted_count == other.targeted_count
            && self.fallback_count == other.fallback_count
            && self.exceptions == other.exceptions
    }
}

impl VerificationReport {
    /// Every `n` in the range is accounted for exactly once.
    pub fn is_balanced(&self) -> bool {
        self.covered_count
            + self.targeted_count
            + self.fallback_count
            + self.exceptions.len() as u64
            == self.hi - self.lo
            && self.exceptions.windows(2).all(|w| w[0] < w[1])
            && self.exceptions.iter().all(|&n| n >= self.lo && n < self.hi)
    }

    /// Joins two reports over adjacent ranges, in either argument order.
    pub fn merge(self, other: VerificationReport) -> Result<VerificationReport> {
        let (a, b) = if self.lo <= other.lo {
            (self, other)
        } else {
            (other, self)
        };
        if a.hi != b.lo {
            return Err(Error::InvalidRange {
                lo: a.lo,
                hi: b.hi,
                reason: "merged reports must cover adjacent ranges",
            });
        }
        let mut exceptions = a.exceptions;
        exceptions.extend(b.exceptions);
        Ok(VerificationReport {
            lo: a.lo,
            hi: b.hi,
            covered_count: a.covered_count + b.covered_count,
            targeted_count: a.targeted_count + b.targeted_count,
            fallback_count: a.fallback_count + b.fallback_count,
            exceptions,
            elapsed: a.elapsed + b.elapsed,
        })
    }
}

/// Verifier bound to one configuration, holding the tables and base primes.
#[derive(Clone, Debug)]
pub struct RangeVerifier {
    cfg: VerifierConfig,
    tables: Tables,
    sieve: SegmentSieve,
    max_hi: u64,
}

impl RangeVerifier {
    /// `max_hi` bounds every segment this verifier will process.
    pub fn new(cfg: VerifierConfig, max_hi: u64) -> Result<Self> {
        let tables = build_tables(&cfg)?;
        Self::with_tables(cfg, tables, max_hi)
    }

    pub fn with_tables(cfg: VerifierConfig, tables: Tables, max_hi: u64) -> Result<Self> {
        cfg.validate()?;
        let sieve = SegmentSieve::new(max_hi, cfg.segment_width + cfg.s1_bound);
        Ok(RangeVerifier {
            cfg,
            tables,
            sieve,
            max_hi,
        })
    }

    pub fn config(&self) -> &VerifierConfig {
        &self.cfg
    }

    pub fn tables(&self) -> &Tables {
        &self.tables
    }

    /// Segment boundaries: aligned to multiples of `segment_width`, clipped to `[lo, hi)`.
    pub fn segments(&self, lo: u64, hi: u64) -> Vec<(u64, u64)> {
        let w = self.cfg.segment_width;
        let mut out = Vec::new();
        let mut a = lo;
        while a < hi {
            let b = ((a / w + 1) * w).min(hi);
            out.push((a, b));
            a = b;
        }
        out
    }

    pub fn verify_segment(&self, lo: u64, hi: u64) -> Result<VerificationReport> {
        if lo < MIN_START || lo >= hi {
            return Err(Error::InvalidRange {
                lo,
                hi,
                reason: "segments must satisfy 24 < lo < hi",
            });
        }
        if hi - lo > self.cfg.segment_width {
            return Err(Error::InvalidRange {
                lo,
                hi,
                reason: "segment wider than segment_width",
            });
        }
        let start = Instant::now();
        let win_lo = if self.cfg.extend_cover_left {
            lo.saturating_sub(self.cfg.s1_bound)
        } else {
            lo
        };
        let window = self.sieve.sieve(win_lo, hi, false)?;
        let covered = self.cover(&window, lo, hi);
        let covered_count = covered.count_ones() as u64;

        let mut targeted_count = 0;
        let mut fallback_count = 0;
        let mut exceptions = Vec::new();
        let len = (hi - lo) as usize;
        for i in 0..len {
            if covered.get(i) {
                continue;
            }
            let n = lo + i as u64;
            let prime = |m: u64| {
                if window.contains(m) {
                    window.is_prime(m)
                } else {
                    is_prime_u64(m)
                }
            };
            if self
                .tables
                .s2
                .iter()
                .take_while(|&&s| s + 2 <= n)
                .any(|&s| prime(n - s))
            {
                targeted_count += 1;
            } else if exhaustive_witness(n).is_some() {
                fallback_count += 1;
            } else {
                exceptions.push(n);
            }
        }

        let report = VerificationReport {
            lo,
            hi,
            covered_count,
            targeted_count,
            fallback_count,
            exceptions,
            elapsed: start.elapsed(),
        };
        assert!(report.is_balanced(), "unbalanced report for [{lo}, {hi})");
        Ok(report)
    }

    fn cover(&self, window: &SieveSegment, lo: u64, hi: u64) -> BitSet {
        let len = (hi - lo) as usize;
        let off = (lo - window.lo()) as i64;
        let primes = window.prime_mask();
        let mut covered = BitSet::zeros(len);
        let n_words = len.div_ceil(64);
        let full = |w: usize| -> u64 {
            let rem = len - w * 64;
            if rem >= 64 {
                u64::MAX
            } else {
                (1u64 << rem) - 1
            }
        };
        let mut active: Vec<usize> = (0..n_words).collect();
        let words = covered.words_mut();
        for (k, &s) in self.tables.s1.iter().enumerate() {
            let shift = off - s as i64;
            for &w in &active {
                let src = w as i64 * 64 + shift;
                let bits = if src >= 0 {
                    primes.word_at(src as usize)
                } else if src > -64 {
                    primes.word_at(0) << (-src)
                } else {
                    0
                };
                words[w] |= bits & full(w);
            }
            if k % 8 == 7 {
                active.retain(|&w| words[w] != full(w));
                if active.is_empty() {
                    break;
                }
            }
        }
        covered
    }

    /// Verifies `[lo, hi)` segment by segment on `thread_count` workers.
    pub fn verify_range(&self, lo: u64, hi: u64) -> Result<VerificationReport> {
        self.verify_range_resumable(lo, hi, &BTreeMap::new(), |_| {})
    }

    /// As [`verify_range`](Self::verify_range), reusing `completed` segment
    /// reports keyed by `lo` and calling `on_segment` for each new segment.
    pub fn verify_range_resumable<F>(
        &self,
        lo: u64,
        hi: u64,
        completed: &BTreeMap<u64, VerificationReport>,
        on_segment: F,
    ) -> Result<VerificationReport>
    where
        F: Fn(&VerificationReport) + Sync,
    {
        if lo < MIN_START || lo >= hi {
            return Err(Error::InvalidRange {
                lo,
                hi,
                reason: "ranges must satisfy 24 < lo < hi",
            });
        }
        if hi > self.max_hi {
            return Err(Error::InvalidRange {
                lo,
                hi,
                reason: "range exceeds the verifier's max_hi",
            });
        }
        let segs = self.segments(lo, hi);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.cfg.thread_count)
            .build()
            .map_err(|e| crate::error::domain(format!("thread pool: {e}")))?;
        let reports: Vec<Result<VerificationReport>> = pool.install(|| {
            segs.par_iter()
                .map(|&(a, b)| match completed.get(&a) {
                    Some(r) if r.hi == b => Ok(r.clone()),
                    _ => {
                        let r = self.verify_segment(a, b)?;
                        on_segment(&r);
                        Ok(r)
                    }
                })
                .collect()
        });
        let mut merged: Option<VerificationReport> = None;
        for r in reports {
            let r = r?;
            merged = Some(match merged {
                None => r,
                Some(m) => m.merge(r)?,
            });
        }
        let merged = merged.expect("non-empty range has at least one segment");
        assert!(merged.is_balanced());
        Ok(merged)
    }
}

/// Smallest non-squarefree `s` with `n - s` prime, by exhaustive scalar search.
pub fn exhaustive_witness(n: u64) -> Option<RepresentationWitness> {
    (4..=n.saturating_sub(2))
        .find(|&s| is_prime_u64(n - s) && !is_squarefree(s))
        .map(|s| RepresentationWitness { n, p: n - s, s })
}

pub fn verify_segment(
    lo: u64,
    hi: u64,
    cfg: &VerifierConfig,
    tables: &Tables,
) -> Result<VerificationReport> {
    RangeVerifier::with_tables(cfg.clone(), tables.clone(), hi)?.verify_segment(lo, hi)
}

pub fn verify_range(lo: u64, hi: u64, cfg: &VerifierConfig) -> Result<VerificationReport> {
    RangeVerifier::new(cfg.clone(), hi)?.verify_range(lo, hi)
}
