//! Exhaustive discrete-log sweeps over prime ranges.
//!
//! A [`WorkUnit`] names a prime range, a set of color counts and a largest
//! progression length. Running it analyzes every prime with the shortcut and
//! keeps, for each `(k, r)`, the largest prime whose block is valid. Units can
//! be split, run anywhere, checkpointed, resumed, and merged; the merged table
//! does not depend on how the range was split or how many threads ran.

mod analysis;
mod checkpoint;
mod result;

use std::collections::BTreeMap;
use std::hash::Hasher;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use fnv::FnvHasher;
use log::info;
use rayon::prelude::*;

use crate::colorings::MAX_COLORS;
use crate::error::{Error, Result};
use crate::numtheory::PrimeStream;

pub use analysis::{analyze_prime, Analyzer, ColorAnalysis, PrimeAnalysis};
pub use result::{merge_results, MergeReport, RESULT_HEADER};

/// Primes analyzed between checkpoints.
pub const CHECKPOINT_INTERVAL: usize = 1024;

/// Best `(p, bound)` per `(k, r)`.
pub type BestMap = BTreeMap<(u32, u32), (u64, u128)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkUnit {
    pub lo: u64,
    pub hi: u64,
    /// Sorted, without duplicates.
    pub r_set: Vec<u32>,
    pub k_max: u32,
    pub unit_id: String,
}

impl WorkUnit {
    pub fn new(
        lo: u64,
        hi: u64,
        r_set: &[u32],
        k_max: u32,
        unit_id: impl Into<String>,
    ) -> Result<Self> {
        let unit_id = unit_id.into();
        if lo >= hi {
            return Err(Error::domain(format!(
                "empty range: lo = {lo} is not below hi = {hi}"
            )));
        }
        if r_set.is_empty() {
            return Err(Error::domain("color set must not be empty"));
        }
        if let Some(r) = r_set.iter().find(|&&r| !(2..=MAX_COLORS).contains(&r)) {
            return Err(Error::domain(format!(
                "color count {r} outside 2..={MAX_COLORS}"
            )));
        }
        if !(3..=1000).contains(&k_max) {
            return Err(Error::domain(format!("k_max = {k_max} outside 3..=1000")));
        }
        if unit_id.is_empty() || unit_id.contains(char::is_whitespace) {
            return Err(Error::domain(format!(
                "unit id {unit_id:?} must be nonempty without whitespace"
            )));
        }
        let mut r_set = r_set.to_vec();
        r_set.sort_unstable();
        r_set.dedup();
        Ok(Self {
            lo,
            hi,
            r_set,
            k_max,
            unit_id,
        })
    }

    /// Splits the range into `count` contiguous units `<id>.0`, `<id>.1`, ...
    pub fn shards(&self, count: u64) -> Vec<WorkUnit> {
        let count = count.clamp(1, self.hi - self.lo);
        let span = self.hi - self.lo;
        (0..count)
            .map(|i| WorkUnit {
                lo: self.lo + span * i / count,
                hi: self.lo + span * (i + 1) / count,
                unit_id: format!("{}.{i}", self.unit_id),
                ..self.clone()
            })
            .collect()
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    /// Resume from and periodically write to this file.
    pub checkpoint: Option<PathBuf>,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Stop after this many batches, as if interrupted. For testing resume.
    pub stop_after_batches: Option<usize>,
}

/// Running fold over a unit's primes, in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SweepState {
    pub last_p: Option<u64>,
    pub primes: u64,
    pub fold: u64,
    pub best: BestMap,
}

impl SweepState {
    fn new() -> Self {
        Self {
            last_p: None,
            primes: 0,
            fold: FnvHasher::default().finish(),
            best: BestMap::new(),
        }
    }

    fn absorb(&mut self, a: &PrimeAnalysis, k_max: u32) {
        let mut h = FnvHasher::with_key(self.fold);
        for ca in &a.per_color {
            h.write(&a.p.to_le_bytes());
            h.write(&ca.r.to_le_bytes());
            h.write(&ca.longest_run.to_le_bytes());
            if let Some(k0) = ca.min_valid_k {
                for k in k0..=k_max {
                    let bound = (k as u128 - 1) * a.p as u128 + 1;
                    let slot = self.best.entry((k, ca.r)).or_insert((a.p, bound));
                    if bound > slot.1 {
                        *slot = (a.p, bound);
                    }
                }
            }
        }
        self.fold = h.finish();
        self.primes += 1;
        self.last_p = Some(a.p);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepResult {
    pub unit_id: String,
    pub lo: u64,
    pub hi: u64,
    pub r_set: Vec<u32>,
    pub k_max: u32,
    pub best: BestMap,
    pub primes: u64,
    /// FNV-1a over the `(p, r, longest_run)` stream.
    pub checksum: u64,
    /// Wall time of the last run; not serialized.
    pub elapsed: Duration,
}

impl SweepResult {
    fn from_state(unit: &WorkUnit, state: SweepState, elapsed: Duration) -> Self {
        Self {
            unit_id: unit.unit_id.clone(),
            lo: unit.lo,
            hi: unit.hi,
            r_set: unit.r_set.clone(),
            k_max: unit.k_max,
            best: state.best,
            primes: state.primes,
            checksum: state.fold,
            elapsed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepOutcome {
    Complete(SweepResult),
    Interrupted { last_p: Option<u64>, primes: u64 },
}

/// Runs a unit to completion, resuming from `checkpoint` if it exists.
pub fn run_workunit(unit: &WorkUnit, checkpoint: Option<&Path>) -> Result<SweepResult> {
    let options = SweepOptions {
        checkpoint: checkpoint.map(Path::to_path_buf),
        ..SweepOptions::default()
    };
    match run_workunit_with(unit, &options)? {
        SweepOutcome::Complete(result) => Ok(result),
        SweepOutcome::Interrupted { .. } => unreachable!("no stop requested"),
    }
}

pub fn run_workunit_with(unit: &WorkUnit, options: &SweepOptions) -> Result<SweepOutcome> {
    let pool = match options.threads {
        Some(n) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Resource(format!("cannot start thread pool: {e}")))?,
        ),
        None => None,
    };
    let run = || run_batches(unit, options);
    match pool {
        Some(pool) => pool.install(run),
        None => run(),
    }
}

fn run_batches(unit: &WorkUnit, options: &SweepOptions) -> Result<SweepOutcome> {
    let started = Instant::now();
    let mut state = match &options.checkpoint {
        Some(path) if path.exists() => {
            let state = checkpoint::read(path, unit)?;
            info!(
                "unit {}: resuming after p = {:?} ({} primes done)",
                unit.unit_id, state.last_p, state.primes
            );
            state
        }
        _ => SweepState::new(),
    };
    let start = state.last_p.map_or(unit.lo, |p| p + 1).max(unit.lo);
    let mut stream = PrimeStream::new(start, unit.hi)?;
    let mut batch = Vec::with_capacity(CHECKPOINT_INTERVAL);
    let mut batches = 0usize;
    loop {
        batch.clear();
        batch.extend(stream.by_ref().take(CHECKPOINT_INTERVAL));
        if batch.is_empty() {
            break;
        }
        let analyses: Vec<Result<PrimeAnalysis>> = batch
            .par_iter()
            .map_init(Analyzer::new, |a, &p| a.analyze(p, &unit.r_set, unit.k_max))
            .collect();
        for a in analyses {
            state.absorb(&a?, unit.k_max);
        }
        batches += 1;
        if let Some(path) = &options.checkpoint {
            checkpoint::write(path, unit, &state)?;
        }
        info!(
            "unit {}: {} primes, last p = {:?}",
            unit.unit_id, state.primes, state.last_p
        );
        if options.stop_after_batches == Some(batches) && batch.len() == CHECKPOINT_INTERVAL {
            return Ok(SweepOutcome::Interrupted {
                last_p: state.last_p,
                primes: state.primes,
            });
        }
    }
    if let Some(path) = &options.checkpoint {
        checkpoint::write(path, unit, &state)?;
    }
    Ok(SweepOutcome::Complete(SweepResult::from_state(
        unit,
        state,
        started.elapsed(),
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_validation() {
        assert!(WorkUnit::new(5, 5, &[2], 7, "a").is_err());
        assert!(WorkUnit::new(2, 5, &[], 7, "a").is_err());
        assert!(WorkUnit::new(2, 5, &[1], 7, "a").is_err());
        assert!(WorkUnit::new(2, 5, &[2], 2, "a").is_err());
        assert!(WorkUnit::new(2, 5, &[2], 7, "a b").is_err());
        let u = WorkUnit::new(2, 5, &[3, 2, 3], 7, "a").unwrap();
        assert_eq!(u.r_set, vec![2, 3]);
    }

    #[test]
    fn shards_cover_range() {
        let u = WorkUnit::new(2, 1000, &[2], 7, "u").unwrap();
        let s = u.shards(7);
        assert_eq!(s.len(), 7);
        assert_eq!(s[0].lo, 2);
        assert_eq!(s[6].hi, 1000);
        assert!(s.windows(2).all(|w| w[0].hi == w[1].lo));
        assert_eq!(s[3].unit_id, "u.3");
        assert_eq!(
            WorkUnit::new(2, 4, &[2], 7, "t").unwrap().shards(16).len(),
            2
        );
    }

    #[test]
    fn small_sweeps() {
        let r = run_workunit(&WorkUnit::new(2, 1000, &[2], 7, "a").unwrap(), None).unwrap();
        assert_eq!(r.best[&(7, 2)], (617, 3703));
        assert_eq!(r.primes, 168);
        let r = run_workunit(&WorkUnit::new(2, 400, &[4], 4, "b").unwrap(), None).unwrap();
        assert_eq!(r.best[&(4, 4)], (349, 1048));
        let r = run_workunit(&WorkUnit::new(24, 29, &[2], 7, "c").unwrap(), None).unwrap();
        assert!(r.best.is_empty());
        assert_eq!(r.primes, 0);
    }
}
