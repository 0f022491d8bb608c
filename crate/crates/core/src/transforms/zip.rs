//! The cyclic zipper.
//!
//! A block `c` on `1..q-1` (`q = L + 1` odd) is read as a coloring of the
//! nonzero residues mod `q`. Zipping lifts it to `1..2q-1`, identified with
//! `Z_2q = Z_2 x Z_q`: position `x` gets `c(x / 2 mod q)`, shifted by `r/2`
//! when `x` is odd. Even positions `2i` therefore reproduce `c(i)`, odd
//! positions `2i + q mod 2q` carry `c(i) + r/2`, and the pivot `x = q` is
//! left free for the assembler.

use crate::colorings::{Coloring, PackedColors, Topology};
use crate::error::{Error, Result};
use crate::numtheory::mod_inverse;

/// Shift pattern indexed by `x mod 2`.
const ZIP_SPREAD: [u8; 2] = [0, 1];
/// Shift pattern indexed by `x mod 4` for the quadrupling lift.
const ZIP_TWICE_SPREAD: [u8; 4] = [0, 0, 1, 1];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZipRecipe {
    pub input_length: u64,
    pub r: u32,
    pub shift: u32,
}

impl ZipRecipe {
    pub fn new(input_length: u64, r: u32) -> Result<Self> {
        if input_length == 0 || input_length % 2 != 0 {
            return Err(Error::domain(format!(
                "zip needs an even block length, got {input_length}"
            )));
        }
        if r % 2 != 0 {
            return Err(Error::domain(format!(
                "zip needs an even color count, got {r}"
            )));
        }
        Ok(Self {
            input_length,
            r,
            shift: r / 2,
        })
    }

    /// `q = L + 1`, the modulus the block lives in.
    pub fn modulus(&self) -> u64 {
        self.input_length + 1
    }
}

/// A block on positions `1..len` whose entries at `free_positions` are
/// placeholders to be chosen during assembly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedBlock {
    pub coloring: Coloring,
    pub free_positions: Vec<u64>,
}

impl LiftedBlock {
    /// A block with nothing left to choose.
    pub fn plain(coloring: Coloring) -> Self {
        Self {
            coloring: coloring.with_topology(Topology::Linear).with_origin(1),
            free_positions: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.coloring.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coloring.is_empty()
    }

    /// Assembly period: the block plus one boundary slot.
    pub fn period(&self) -> u64 {
        self.len() as u64 + 1
    }
}

/// Lifts `c` from `Z_q` to `Z_{mq}` with shift pattern `spread`.
fn spread_lift(c: &Coloring, spread: &[u8]) -> Result<LiftedBlock> {
    let recipe = ZipRecipe::new(c.len() as u64, c.colors())?;
    let q = recipe.modulus();
    let m = spread.len() as u64;
    let m_inv = mod_inverse(m % q, q)?;
    let block = c.to_vec();
    let r = recipe.r;
    let len = (m * q - 1) as usize;
    let mut out = PackedColors::for_colors(r, len);
    let mut free = Vec::with_capacity(m as usize - 1);
    for x in 1..m * q {
        let idx = (x - 1) as usize;
        if x % q == 0 {
            free.push(x);
            out.set(idx, 0);
            continue;
        }
        let i = ((x % q) * m_inv) % q;
        let base = block[(i - 1) as usize] as u32;
        let shifted = (base + spread[(x % m) as usize] as u32 * recipe.shift) % r;
        out.set(idx, shifted as u8);
    }
    Ok(LiftedBlock {
        coloring: Coloring::from_packed(out, r, Topology::Linear, 1),
        free_positions: free,
    })
}

/// Doubles the period: a block of length `L` becomes one of length `2L + 1`
/// whose middle position `L + 1` is free.
pub fn zip(c: &Coloring) -> Result<LiftedBlock> {
    spread_lift(c, &ZIP_SPREAD)
}

/// Quadruples the period with shift pattern `0, 0, 1, 1` over `x mod 4`.
/// Output length `4L + 3` with free positions `q, 2q, 3q`. Experimental.
pub fn zip_twice(c: &Coloring) -> Result<LiftedBlock> {
    spread_lift(c, &ZIP_TWICE_SPREAD)
}

/// Output position of the shifted copy of input position `i` (`1 <= i <= L`).
pub fn zip_odd_position(i: u64, input_length: u64) -> u64 {
    let q = input_length + 1;
    (2 * i + q) % (2 * q)
}
