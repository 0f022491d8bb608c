//! Discrete-logarithm colorings of `1..p-1` and the spacing-1 validity shortcut.
//!
//! Position `n` receives color `log_rho(n) mod r`. When `r` divides `p - 1`,
//! multiplying every position by `d^-1 mod p` shifts all colors by the same
//! amount, so a monochromatic progression of spacing `d` exists iff a
//! monochromatic run (spacing 1) of the same length does. Validity of the
//! assembled certificate then reduces to two facts about the block: its
//! longest run, and whether its first few positions share a color.

use super::{bits_for, check_color_count, Coloring, PackedColors, Topology};
use crate::error::{Error, Result};
use crate::numtheory::{factorize, gcd, is_prime, is_primitive_root_with, mul_mod};

/// Largest progression length searched by default.
pub const DEFAULT_K_MAX: u32 = 25;

fn check_rabung_inputs(p: u64, rho: u64, r: u32) -> Result<()> {
    check_color_count(r)?;
    if p < 3 || !is_prime(p) {
        return Err(Error::domain(format!("{p} is not an odd prime")));
    }
    if !is_primitive_root_with(rho, p, &factorize(p - 1)?) {
        return Err(Error::domain(format!(
            "{rho} is not a primitive root of {p}"
        )));
    }
    Ok(())
}

/// Builds the discrete-log coloring of positions `1..p-1` (origin 1).
pub fn rabung_coloring(p: u64, rho: u64, r: u32) -> Result<Coloring> {
    check_rabung_inputs(p, rho, r)?;
    let mut packed = PackedColors::for_colors(r, 1);
    fill_rabung_colors(p, rho, r, &mut packed);
    Ok(Coloring::from_packed(packed, r, Topology::Linear, 1))
}

/// Writes the coloring into `out`, reusing its allocation. Inputs are not
/// checked; callers must pass a prime and one of its primitive roots.
pub fn fill_rabung_colors(p: u64, rho: u64, r: u32, out: &mut PackedColors) {
    out.reset(bits_for(r), (p - 1) as usize);
    let mut x = 1u64;
    let mut color = 0u8;
    let r = r as u8;
    let small = p <= u32::MAX as u64;
    for _ in 0..p - 1 {
        out.set((x - 1) as usize, color);
        color += 1;
        if color == r {
            color = 0;
        }
        x = if small {
            x * rho % p
        } else {
            mul_mod(x, rho, p)
        };
    }
}

/// Longest block of one color and the position where it first starts.
pub fn longest_run(c: &Coloring) -> (u64, u64) {
    let (len, start) = longest_run_packed(c.packed());
    (len, c.origin() + start)
}

/// Returns `(length, start index)`.
fn longest_run_packed(colors: &PackedColors) -> (u64, u64) {
    let mut best = (0u64, 0u64);
    let mut run = 0u64;
    let mut start = 0u64;
    let mut prev = None;
    for (i, c) in colors.iter().enumerate() {
        if prev == Some(c) {
            run += 1;
        } else {
            run = 1;
            start = i as u64;
            prev = Some(c);
        }
        if run > best.0 {
            best = (run, start);
        }
    }
    best
}

/// Everything the shortcut needs to know about a block of `1..p-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShortcutProfile {
    pub len: u64,
    pub colors: u32,
    pub longest_run: u64,
    /// Position (origin 1) where the first longest run starts.
    pub longest_start: u64,
    /// How many leading positions `1, 2, ...` share the color of position 1.
    pub prefix_run: u64,
    /// Whether positions `1` and `p - 1` have the same color.
    pub ends_match: bool,
}

impl ShortcutProfile {
    pub fn of(block: &Coloring) -> Self {
        Self::from_packed(block.packed(), block.colors())
    }

    pub fn from_packed(colors: &PackedColors, r: u32) -> Self {
        Self::from_colors(colors.iter(), r)
    }

    /// Single pass over the block colors in position order. Panics on an
    /// empty block.
    pub fn from_colors(colors: impl IntoIterator<Item = u8>, r: u32) -> Self {
        let mut iter = colors.into_iter();
        let first = iter.next().expect("block must be nonempty");
        let (mut len, mut run, mut start) = (1u64, 1u64, 0u64);
        let (mut longest_run, mut longest_start) = (1u64, 0u64);
        let mut prefix_run = 1u64;
        let mut in_prefix = true;
        let mut prev = first;
        for c in iter {
            if c == prev {
                run += 1;
                if in_prefix {
                    prefix_run += 1;
                }
            } else {
                run = 1;
                start = len;
                in_prefix = false;
                prev = c;
            }
            if run > longest_run {
                longest_run = run;
                longest_start = start;
            }
            len += 1;
        }
        Self {
            len,
            colors: r,
            longest_run,
            longest_start: longest_start + 1,
            prefix_run,
            ends_match: first == prev,
        }
    }

    /// The shortcut only holds when `log mod r` is a homomorphism, i.e. `r | p - 1`.
    pub fn applicable(&self) -> bool {
        self.len % self.colors as u64 == 0
    }

    /// No monochromatic run of length `k`.
    pub fn runs_ok(&self, k: u32) -> bool {
        self.longest_run < k as u64
    }

    /// Positions `1..m` are not all one color, where `m = ceil((k-1)/2)` if
    /// the end colors match and `m = k - 1` otherwise.
    pub fn boundary_ok(&self, k: u32) -> bool {
        let k = k as u64;
        let m = if self.ends_match {
            (k - 1).div_ceil(2)
        } else {
            k - 1
        };
        self.prefix_run < m.min(self.len)
    }

    pub fn valid_for(&self, k: u32) -> bool {
        self.applicable() && self.runs_ok(k) && self.boundary_ok(k)
    }

    /// Smallest `k >= 3` for which the block is valid, if it is at most `k_max`.
    /// Both clauses are monotone in `k`, so validity persists above it.
    pub fn min_valid_k(&self, k_max: u32) -> Option<u32> {
        if !self.applicable() || self.prefix_run >= self.len {
            return None;
        }
        let from_boundary = if self.ends_match {
            2 * self.prefix_run + 2
        } else {
            self.prefix_run + 2
        };
        let k = 3.max(self.longest_run + 1).max(from_boundary);
        (k <= k_max as u64).then_some(k as u32)
    }
}

pub fn rabung_boundary_ok(block: &Coloring, k: u32) -> bool {
    ShortcutProfile::of(block).boundary_ok(k)
}

/// True iff the certificate assembled from the `(p, rho, r)` block avoids
/// monochromatic progressions of length `k`, decided without building it.
pub fn rabung_valid(p: u64, rho: u64, r: u32, k: u32) -> Result<bool> {
    if k < 3 {
        return Err(Error::domain(format!(
            "progression length {k} must be at least 3"
        )));
    }
    let block = rabung_coloring(p, rho, r)?;
    Ok(ShortcutProfile::of(&block).valid_for(k))
}

pub fn min_valid_k(p: u64, rho: u64, r: u32, k_max: u32) -> Result<Option<u32>> {
    let block = rabung_coloring(p, rho, r)?;
    Ok(ShortcutProfile::of(&block).min_valid_k(k_max))
}

/// `i -> color(d * i mod p)` on a coloring of `1..p-1`, where `p = len + 1`.
pub fn multiplicative_permute(c: &Coloring, d: u64) -> Result<Coloring> {
    let p = c.len() as u64 + 1;
    if d % p == 0 || gcd(d % p, p) != 1 {
        return Err(Error::domain(format!(
            "multiplier {d} is not a unit modulo {p}"
        )));
    }
    let mut out = PackedColors::for_colors(c.colors(), c.len());
    for i in 1..p {
        let j = mul_mod(d, i, p);
        out.set((i - 1) as usize, c.get((j - 1) as usize));
    }
    Ok(Coloring::from_packed(
        out,
        c.colors(),
        c.topology(),
        c.origin(),
    ))
}
