//! Exact van der Waerden numbers by depth-first extension.
//!
//! Colorings grow one position at a time. A color is rejected as soon as it
//! completes a monochromatic `k`-term progression ending at the new position,
//! and colors are introduced in order (position `i` may only use a color
//! already seen or the next unused one) to quotient out palette symmetry.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteForce {
    /// `W(k, r)` exactly.
    Exact(u64),
    /// A valid coloring of length `limit` exists, so `W(k, r) > limit`.
    ExceedsLimit(u64),
}

struct Search {
    k: usize,
    r: u8,
    colors: Vec<u8>,
}

impl Search {
    /// True if placing `c` at the end completes a monochromatic progression.
    fn completes_ap(&self, c: u8) -> bool {
        let n = self.colors.len();
        let steps = self.k - 1;
        (1..=n / steps).any(|d| (1..=steps).all(|i| self.colors[n - i * d] == c))
    }

    fn next_colors(&self) -> u8 {
        let used = self.colors.iter().copied().max().map_or(0, |m| m + 1);
        used.saturating_add(1).min(self.r)
    }
}

/// Smallest `N` such that every `r`-coloring of `0..N-1` has a monochromatic
/// `k`-term progression, provided `N <= limit`.
pub fn brute_force_w(k: u32, r: u32, limit: u64) -> Result<BruteForce> {
    if k < 3 || !(2..=36).contains(&r) {
        return Err(Error::domain(format!(
            "need k >= 3 and 2 <= r <= 36, got k={k} r={r}"
        )));
    }
    let limit_len = usize::try_from(limit).map_err(|_| Error::domain("limit too large"))?;
    let mut search = Search {
        k: k as usize,
        r: r as u8,
        colors: Vec::with_capacity(limit_len),
    };
    // Explicit stack of next color to try at each depth.
    let mut next: Vec<u8> = vec![0];
    let mut longest = 0usize;
    while let Some(&cand) = next.last() {
        let depth = next.len() - 1;
        if cand >= search.next_colors() {
            next.pop();
            search.colors.pop();
            if let Some(top) = next.last_mut() {
                *top += 1;
            }
            continue;
        }
        debug_assert_eq!(search.colors.len(), depth);
        if search.completes_ap(cand) {
            *next.last_mut().unwrap() += 1;
            continue;
        }
        search.colors.push(cand);
        longest = longest.max(search.colors.len());
        if longest >= limit_len {
            return Ok(BruteForce::ExceedsLimit(limit));
        }
        next.push(0);
    }
    Ok(BruteForce::Exact(longest as u64 + 1))
}

/// Every `k`-AP-free coloring of length `len` with colors introduced in order.
pub fn enumerate_ap_free(k: u32, r: u32, len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut search = Search {
        k: k as usize,
        r: r as u8,
        colors: Vec::with_capacity(len),
    };
    extend_all(&mut search, len, &mut out);
    out
}

fn extend_all(search: &mut Search, len: usize, out: &mut Vec<Vec<u8>>) {
    if search.colors.len() == len {
        out.push(search.colors.clone());
        return;
    }
    for c in 0..search.next_colors() {
        if !search.completes_ap(c) {
            search.colors.push(c);
            extend_all(search, len, out);
            search.colors.pop();
        }
    }
}
