//! Interchangeable progression scanners, selected by name.

use std::collections::BTreeMap;

use rayon::prelude::*;

/// Above this length the run scanner splits spacings across the thread pool.
const PARALLEL_THRESHOLD: usize = 20_000;

/// Finds monochromatic `k`-term progressions in a linear sequence.
///
/// Implementations must return the canonical witness: smallest spacing,
/// then smallest start. Results are `(start index, spacing)`.
pub trait ApScanner: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn find(&self, colors: &[u8], k: usize) -> Option<(usize, usize)>;
}

/// One pass per spacing, tracking the current run length along each residue
/// chain. `O(n)` per spacing, `O(n^2 / (k-1))` total.
#[derive(Debug, Default, Clone, Copy)]
pub struct RunScanner;

impl RunScanner {
    fn scan_spacing(colors: &[u8], k: usize, d: usize, run: &mut [u32]) -> Option<usize> {
        let n = colors.len();
        let k = k as u32;
        run[..d].fill(1);
        for i in d..n {
            if colors[i] == colors[i - d] {
                let len = run[i - d] + 1;
                if len >= k {
                    return Some(i - (k as usize - 1) * d);
                }
                run[i] = len;
            } else {
                run[i] = 1;
            }
        }
        None
    }
}

impl ApScanner for RunScanner {
    fn name(&self) -> &'static str {
        "run"
    }

    fn description(&self) -> &'static str {
        "per-spacing run tracking, O(n^2/(k-1))"
    }

    fn find(&self, colors: &[u8], k: usize) -> Option<(usize, usize)> {
        let n = colors.len();
        if k <= 1 {
            return (n > 0).then_some((0, 1));
        }
        if n < k {
            return None;
        }
        let max_d = (n - 1) / (k - 1);
        if n < PARALLEL_THRESHOLD {
            let mut run = vec![0u32; n];
            return (1..=max_d)
                .find_map(|d| Self::scan_spacing(colors, k, d, &mut run).map(|s| (s, d)));
        }
        (1..=max_d)
            .into_par_iter()
            .map_init(
                || vec![0u32; n],
                |run, d| Self::scan_spacing(colors, k, d, run).map(|s| (s, d)),
            )
            .find_map_first(|hit| hit)
    }
}

/// Checks every (spacing, start, color) triple term by term.
#[derive(Debug, Default, Clone, Copy)]
pub struct NaiveScanner;

impl ApScanner for NaiveScanner {
    fn name(&self) -> &'static str {
        "naive"
    }

    fn description(&self) -> &'static str {
        "exhaustive triple loop, O(n^2 k / (k-1)); reference only"
    }

    fn find(&self, colors: &[u8], k: usize) -> Option<(usize, usize)> {
        let n = colors.len();
        if k <= 1 {
            return (n > 0).then_some((0, 1));
        }
        for d in 1..n {
            for start in 0..n {
                if start + (k - 1) * d >= n {
                    break;
                }
                let c = colors[start];
                if (1..k).all(|i| colors[start + i * d] == c) {
                    return Some((start, d));
                }
            }
        }
        None
    }
}

/// Name-keyed collection of scanners.
pub struct ScannerRegistry {
    scanners: BTreeMap<&'static str, Box<dyn ApScanner>>,
}

impl ScannerRegistry {
    pub fn empty() -> Self {
        Self {
            scanners: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, scanner: impl ApScanner + 'static) {
        self.scanners.insert(scanner.name(), Box::new(scanner));
    }

    pub fn get(&self, name: &str) -> Option<&dyn ApScanner> {
        self.scanners.get(name).map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.scanners.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn ApScanner> {
        self.scanners.values().map(|s| s.as_ref())
    }
}

impl Default for ScannerRegistry {
    fn default() -> Self {
        let mut registry = Self::empty();
        registry.register(RunScanner);
        registry.register(NaiveScanner);
        registry
    }
}
