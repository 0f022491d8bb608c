//! Per-prime shortcut analysis.

use crate::colorings::{fill_rabung_colors, PackedColors, ShortcutProfile};
use crate::error::{Error, Result};
use crate::numtheory::{is_prime, primitive_root};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorAnalysis {
    pub r: u32,
    pub longest_run: u64,
    pub min_valid_k: Option<u32>,
}

/// Results for one prime, for each color count `r` in the set with `r | p-1`.
/// Other color counts are skipped: the shortcut does not apply to them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeAnalysis {
    pub p: u64,
    pub root: u64,
    pub per_color: Vec<ColorAnalysis>,
}

/// Reusable buffers for analyzing many primes.
#[derive(Debug, Default)]
pub struct Analyzer {
    buffers: Vec<PackedColors>,
}

impl Analyzer {
    pub fn new() -> Self {
        Self::default()
    }

    /// `r_set` must be sorted and deduplicated.
    pub fn analyze(&mut self, p: u64, r_set: &[u32], k_max: u32) -> Result<PrimeAnalysis> {
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        let applicable: Vec<u32> = r_set
            .iter()
            .copied()
            .filter(|&r| (p - 1) % r as u64 == 0)
            .collect();
        if applicable.is_empty() {
            return Ok(PrimeAnalysis {
                p,
                root: primitive_root(p)?,
                per_color: Vec::new(),
            });
        }
        let root = primitive_root(p)?;

        // Largest first: a smaller r dividing an already computed R reads
        // log mod r straight off the R coloring as (log mod R) mod r.
        let mut computed: Vec<(u32, usize)> = Vec::new();
        let mut per_color = Vec::with_capacity(applicable.len());
        for &r in applicable.iter().rev() {
            let profile = match computed.iter().find(|(big, _)| big % r == 0) {
                Some(&(_, slot)) => {
                    let rr = r as u8;
                    ShortcutProfile::from_colors(self.buffers[slot].iter().map(|c| c % rr), r)
                }
                None => {
                    let slot = computed.len();
                    if self.buffers.len() <= slot {
                        self.buffers.push(PackedColors::for_colors(r, 0));
                    }
                    fill_rabung_colors(p, root, r, &mut self.buffers[slot]);
                    computed.push((r, slot));
                    ShortcutProfile::from_packed(&self.buffers[slot], r)
                }
            };
            per_color.push(ColorAnalysis {
                r,
                longest_run: profile.longest_run,
                min_valid_k: profile.min_valid_k(k_max),
            });
        }
        per_color.reverse();
        Ok(PrimeAnalysis { p, root, per_color })
    }
}

/// One-off analysis using the smallest primitive root.
pub fn analyze_prime(p: u64, r_set: &[u32], k_max: u32) -> Result<PrimeAnalysis> {
    let mut set = r_set.to_vec();
    set.sort_unstable();
    set.dedup();
    Analyzer::new().analyze(p, &set, k_max)
}
