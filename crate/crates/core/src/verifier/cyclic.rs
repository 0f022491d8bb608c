//! Progressions in the ring `Z_n`.
//!
//! A progression of length `k` with spacing `d` is `a, a+d, ..., a+(k-1)d`
//! taken mod `n`, and its `k` terms must be distinct. The distinctness
//! condition fails exactly when the additive order `n / gcd(d, n)` is below `k`.

use super::ApWitness;
use crate::colorings::Coloring;
use crate::numtheory::gcd;

/// Canonical (smallest spacing, then smallest start) monochromatic progression
/// of length `k` with wraparound.
pub fn find_mono_ap_cyclic(c: &Coloring, k: u32) -> Option<ApWitness> {
    let colors = c.to_vec();
    let n = colors.len();
    let k = k as usize;
    if k == 0 || n < k {
        return None;
    }
    let mut best: Option<(usize, usize)> = None; // (spacing, start)
                                                 // Spacing d and n - d describe the same sets, so d <= n/2 suffices.
    for d in 1..=n / 2 {
        let g = gcd(d as u64, n as u64) as usize;
        let cycle = n / g;
        if cycle < k {
            continue;
        }
        for a in 0..g {
            if let Some(start) = circular_run_start(&colors, a, d, cycle, k) {
                let better = match best {
                    Some((bd, bs)) => d < bd || (d == bd && start < bs),
                    None => true,
                };
                if better {
                    best = Some((d, start));
                }
            }
        }
        if best.is_some() {
            break;
        }
    }
    best.map(|(d, start)| ApWitness {
        color: colors[start],
        start: start as u64,
        spacing: d as u64,
        length: k as u64,
    })
}

/// Smallest ring position that starts a run of `k` equal colors along the
/// cycle `a, a+d, ...` of length `cycle`.
fn circular_run_start(colors: &[u8], a: usize, d: usize, cycle: usize, k: usize) -> Option<usize> {
    let n = colors.len();
    let at = |j: usize| (a + (j % cycle) * d) % n;
    // Run length ending at each step, over two laps so wrapped runs are seen.
    let mut best: Option<usize> = None;
    let mut run = 1usize;
    for j in 1..2 * cycle {
        if colors[at(j)] == colors[at(j - 1)] {
            run += 1;
        } else {
            run = 1;
        }
        if run >= k {
            let start = at(j + 1 - k);
            best = Some(best.map_or(start, |b| b.min(start)));
        }
    }
    best
}

pub fn has_mono_ap_cyclic(c: &Coloring, k: u32) -> bool {
    find_mono_ap_cyclic(c, k).is_some()
}
