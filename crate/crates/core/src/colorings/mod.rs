//! Colorings, certificates, and the discrete-logarithm construction.

mod certificate;
mod packed;
mod rabung;

pub use certificate::{
    alternating_fill, assemble_certificate, Certificate, CertificateKind, Verification,
};
pub use packed::{bits_for, PackedColors};
pub use rabung::{
    fill_rabung_colors, longest_run, min_valid_k, multiplicative_permute, rabung_boundary_ok,
    rabung_coloring, rabung_valid, ShortcutProfile, DEFAULT_K_MAX,
};

use crate::error::{Error, Result};

/// Largest color count the base-36 certificate format can carry.
pub const MAX_COLORS: u32 = 36;

/// Display letters: 0 = B(lue), 1 = G(reen), then the rest of the alphabet and digits.
const LETTERS: &[u8; 36] = b"BGYRPVACDEFHIJKLMNOQSTUWXZ0123456789";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Topology {
    Linear,
    /// Positions form the ring `Z_n`; progressions wrap modulo `n`.
    Cyclic,
}

/// A finite coloring with `r` colors.
///
/// Entries are addressed two ways: by zero-based `index` into the sequence,
/// or by `position`, which is `origin + index`.
#[derive(Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: PackedColors,
    r: u32,
    topology: Topology,
    origin: u64,
}

impl Coloring {
    pub fn new(colors: &[u8], r: u32, topology: Topology, origin: u64) -> Result<Self> {
        check_color_count(r)?;
        if colors.is_empty() {
            return Err(Error::domain("coloring must have at least one entry"));
        }
        if let Some((i, &c)) = colors.iter().enumerate().find(|(_, &c)| c as u32 >= r) {
            return Err(Error::domain(format!(
                "entry {i} has color {c}, but only {r} colors are allowed"
            )));
        }
        let mut packed = PackedColors::for_colors(r, colors.len());
        for (i, &c) in colors.iter().enumerate() {
            packed.set(i, c);
        }
        Ok(Self::from_packed(packed, r, topology, origin))
    }

    /// Linear coloring indexed from 0.
    pub fn linear(colors: &[u8], r: u32) -> Result<Self> {
        Self::new(colors, r, Topology::Linear, 0)
    }

    /// Coloring of the ring `Z_n`, `n = colors.len()`.
    pub fn cyclic(colors: &[u8], r: u32) -> Result<Self> {
        Self::new(colors, r, Topology::Cyclic, 0)
    }

    pub(crate) fn from_packed(
        colors: PackedColors,
        r: u32,
        topology: Topology,
        origin: u64,
    ) -> Self {
        debug_assert!(!colors.is_empty());
        Self {
            colors,
            r,
            topology,
            origin,
        }
    }

    /// Parses letters from the display table, e.g. `"BGGBBGGB"`.
    pub fn from_letters(s: &str, r: u32) -> Result<Self> {
        let colors = s
            .bytes()
            .map(|b| {
                LETTERS
                    .iter()
                    .position(|&l| l == b.to_ascii_uppercase())
                    .map(|c| c as u8)
                    .ok_or_else(|| Error::parse(format!("unknown color letter {:?}", b as char)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::linear(&colors, r)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors(&self) -> u32 {
        self.r
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn origin(&self) -> u64 {
        self.origin
    }

    pub fn packed(&self) -> &PackedColors {
        &self.colors
    }

    #[inline]
    pub fn get(&self, index: usize) -> u8 {
        self.colors.get(index)
    }

    /// Color at a position label, if the position is in range.
    pub fn at(&self, position: u64) -> Option<u8> {
        let index = position.checked_sub(self.origin)?;
        (index < self.len() as u64).then(|| self.get(index as usize))
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = u8> + '_ {
        self.colors.iter()
    }

    pub fn to_vec(&self) -> Vec<u8> {
        self.iter().collect()
    }

    pub fn with_topology(mut self, topology: Topology) -> Self {
        self.topology = topology;
        self
    }

    pub fn with_origin(mut self, origin: u64) -> Self {
        self.origin = origin;
        self
    }

    /// Same entries, reinterpreted with a larger palette.
    pub fn with_colors(mut self, r: u32) -> Result<Self> {
        check_color_count(r)?;
        if r < self.r {
            if let Some(c) = self.iter().find(|&c| c as u32 >= r) {
                return Err(Error::domain(format!(
                    "color {c} does not fit in {r} colors"
                )));
            }
        }
        if bits_for(r) != self.colors.width() {
            let values = self.to_vec();
            let mut packed = PackedColors::for_colors(r, values.len());
            values
                .iter()
                .enumerate()
                .for_each(|(i, &c)| packed.set(i, c));
            self.colors = packed;
        }
        self.r = r;
        Ok(self)
    }

    pub fn letters(&self) -> String {
        self.iter().map(|c| LETTERS[c as usize] as char).collect()
    }

    /// Number of entries of each color.
    pub fn histogram(&self) -> Vec<usize> {
        let mut counts = vec![0; self.r as usize];
        self.iter().for_each(|c| counts[c as usize] += 1);
        counts
    }
}

impl std::fmt::Debug for Coloring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let body = if self.len() <= 120 {
            self.letters()
        } else {
            format!("{}…", &self.letters()[..120])
        };
        write!(
            f,
            "Coloring(r={}, n={}, {:?}, origin={}, {body})",
            self.r,
            self.len(),
            self.topology,
            self.origin
        )
    }
}

pub(crate) fn check_color_count(r: u32) -> Result<()> {
    if !(2..=MAX_COLORS).contains(&r) {
        return Err(Error::domain(format!(
            "color count {r} outside supported range 2..={MAX_COLORS}"
        )));
    }
    Ok(())
}
