//! Certificates and the `vdwcert 1` text format.
//!
//! ```text
//! vdwcert 1
//! k=4 r=2 n=34 kind=rabung meta=p=11 root=2 period=11 fill=0101
//! 0010001110110100011101001000111011
//! ```
//!
//! Colors are base-36 digits, 80 per line except the last, LF line endings.

use std::fmt;
use std::str::FromStr;

use super::{Coloring, PackedColors, Topology};
use crate::error::{Error, Result};

const MAGIC: &str = "vdwcert 1";
const DIGITS_PER_LINE: usize = 80;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    Rabung,
    Zip,
    Product,
    Manual,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::Rabung => "rabung",
            CertificateKind::Zip => "zip",
            CertificateKind::Product => "product",
            CertificateKind::Manual => "manual",
        }
    }
}

impl FromStr for CertificateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rabung" => CertificateKind::Rabung,
            "zip" => CertificateKind::Zip,
            "product" => CertificateKind::Product,
            "manual" => CertificateKind::Manual,
            other => return Err(Error::parse(format!("unknown certificate kind {other:?}"))),
        })
    }
}

/// How a certificate's progression-freeness has been established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verification {
    None,
    Shortcut,
    Direct,
}

impl Verification {
    pub fn as_str(self) -> &'static str {
        match self {
            Verification::None => "none",
            Verification::Shortcut => "shortcut",
            Verification::Direct => "direct",
        }
    }
}

/// A linear coloring of `0..n-1` claimed to avoid monochromatic `k`-term
/// progressions, witnessing `W(k, r) > n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub coloring: Coloring,
    pub k: u32,
    pub kind: CertificateKind,
    /// Construction recipe, free text without newlines.
    pub meta: String,
    pub verified: Verification,
}

impl Certificate {
    pub fn new(
        coloring: Coloring,
        k: u32,
        kind: CertificateKind,
        meta: impl Into<String>,
    ) -> Result<Self> {
        if k < 3 {
            return Err(Error::domain(format!(
                "progression length {k} must be at least 3"
            )));
        }
        let meta = meta.into();
        if meta.contains(['\n', '\r']) {
            return Err(Error::domain("certificate meta must not contain newlines"));
        }
        Ok(Self {
            coloring: coloring.with_topology(Topology::Linear).with_origin(0),
            k,
            kind,
            meta,
            verified: Verification::None,
        })
    }

    pub fn len(&self) -> usize {
        self.coloring.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coloring.is_empty()
    }

    pub fn colors(&self) -> u32 {
        self.coloring.colors()
    }

    /// Looks up `key=value` in the meta string.
    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta
            .split_whitespace()
            .find_map(|tok| tok.strip_prefix(key)?.strip_prefix('='))
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{MAGIC}")?;
        writeln!(
            f,
            "k={} r={} n={} kind={} meta={}",
            self.k,
            self.colors(),
            self.len(),
            self.kind.as_str(),
            self.meta
        )?;
        let digits: Vec<u8> = self.coloring.iter().map(base36_digit).collect();
        for line in digits.chunks(DIGITS_PER_LINE) {
            // Digits are ASCII by construction.
            f.write_str(std::str::from_utf8(line).map_err(|_| fmt::Error)?)?;
            f.write_str("\n")?;
        }
        Ok(())
    }
}

impl FromStr for Certificate {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.split('\n');
        if lines.next() != Some(MAGIC) {
            return Err(Error::parse(format!("missing `{MAGIC}` header")));
        }
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("missing parameter line"))?;
        let (params, meta) = header
            .split_once(" meta=")
            .ok_or_else(|| Error::parse("parameter line lacks meta="))?;
        let mut fields = params.split(' ');
        let mut field = |name: &str| -> Result<&str> {
            fields
                .next()
                .and_then(|f| f.strip_prefix(name)?.strip_prefix('='))
                .ok_or_else(|| Error::parse(format!("expected `{name}=` in parameter line")))
        };
        let k: u32 = parse_int(field("k")?, "k")?;
        let r: u32 = parse_int(field("r")?, "r")?;
        let n: usize = parse_int(field("n")?, "n")?;
        let kind: CertificateKind = field("kind")?.parse()?;
        if fields.next().is_some() {
            return Err(Error::parse("unexpected field before meta="));
        }

        let body: Vec<&str> = lines.collect();
        // Text must end with LF, so the final split piece is empty.
        let Some((&"", body)) = body.split_last() else {
            return Err(Error::parse("certificate must end with a newline"));
        };
        let mut colors = Vec::with_capacity(n);
        for (i, line) in body.iter().enumerate() {
            let last = i + 1 == body.len();
            if line.is_empty()
                || line.len() > DIGITS_PER_LINE
                || (!last && line.len() != DIGITS_PER_LINE)
            {
                return Err(Error::parse(format!(
                    "color line {} has {} digits; expected {DIGITS_PER_LINE} per line except the last",
                    i + 1,
                    line.len()
                )));
            }
            for b in line.bytes() {
                colors.push(parse_base36(b)?);
            }
        }
        if colors.len() != n {
            return Err(Error::parse(format!(
                "header declares n={n} but body holds {} colors",
                colors.len()
            )));
        }
        let coloring = Coloring::linear(&colors, r)?;
        Certificate::new(coloring, k, kind, meta)
    }
}

fn parse_int<T: FromStr>(s: &str, name: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::parse(format!("{name}={s:?} is not an integer")))
}

fn base36_digit(c: u8) -> u8 {
    match c {
        0..=9 => b'0' + c,
        _ => b'a' + (c - 10),
    }
}

fn parse_base36(b: u8) -> Result<u8> {
    match b {
        b'0'..=b'9' => Ok(b - b'0'),
        b'a'..=b'z' => Ok(b - b'a' + 10),
        _ => Err(Error::parse(format!("invalid color digit {:?}", b as char))),
    }
}

/// `0, 1, 0, 1, ...` of length `k`.
pub fn alternating_fill(k: u32) -> Vec<u8> {
    (0..k).map(|i| (i % 2) as u8).collect()
}

/// Repeats `block` (positions `1..L-1`, period `L = block.len() + 1`) `k - 1`
/// times over `0..(k-1)L`, putting `fill[j]` at position `j * L`.
pub fn assemble_certificate(block: &Coloring, k: u32, fill: &[u8]) -> Result<Certificate> {
    if k < 3 {
        return Err(Error::domain(format!(
            "progression length {k} must be at least 3"
        )));
    }
    if fill.len() != k as usize {
        return Err(Error::domain(format!(
            "fill has {} entries, expected k = {k}",
            fill.len()
        )));
    }
    if fill.iter().all(|&c| c == fill[0]) {
        return Err(Error::domain("boundary fill must use at least two colors"));
    }
    if block.len() < 2 {
        return Err(Error::domain("block of length 1 is degenerate"));
    }
    let r = block.colors();
    if let Some(&c) = fill.iter().find(|&&c| c as u32 >= r) {
        return Err(Error::domain(format!("fill color {c} exceeds {r} colors")));
    }
    let period = block.len() + 1;
    let n = (k as usize - 1) * period + 1;
    let mut packed = PackedColors::for_colors(r, n);
    for pos in 0..n {
        let offset = pos % period;
        let color = if offset == 0 {
            fill[pos / period]
        } else {
            block.get(offset - 1)
        };
        packed.set(pos, color);
    }
    let fill_text: String = fill.iter().map(|&c| base36_digit(c) as char).collect();
    Certificate::new(
        Coloring::from_packed(packed, r, Topology::Linear, 0),
        k,
        CertificateKind::Manual,
        format!("period={period} fill={fill_text}"),
    )
}
