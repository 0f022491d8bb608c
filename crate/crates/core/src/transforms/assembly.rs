//! Assembling lifted blocks into certificates, choosing the free entries.
//!
//! The block is repeated `k - 1` times with a boundary slot between copies.
//! First the body is checked with every boundary slot and free position set
//! to its own sentinel color, which no progression can pass through. If the
//! body is clean, only progressions through those special positions depend
//! on the choice, so candidates are tested by checking just those.

use log::debug;

use super::zip::LiftedBlock;
use crate::colorings::{alternating_fill, Certificate, CertificateKind, Coloring, Verification};
use crate::error::{Error, Result};
use crate::verifier::{verify_certificate, ApScanner, RunScanner, VerifyOutcome};

/// Upper limit on (fill, free-color) combinations tried.
pub const MAX_ASSEMBLY_CANDIDATES: u64 = 1 << 24;

const SENTINEL_BASE: usize = 64;

/// Searches boundary fills and free-position colors for an assembly of
/// `block` that avoids monochromatic `k`-term progressions. The alternating
/// fill is tried first, then every non-constant fill in lexicographic order.
/// The result is directly verified; lengths above `cap` are refused.
pub fn assemble_lifted(
    block: &LiftedBlock,
    k: u32,
    kind: CertificateKind,
    meta: &str,
    cap: usize,
) -> Result<Certificate> {
    if k < 3 {
        return Err(Error::domain(format!(
            "progression length {k} must be at least 3"
        )));
    }
    let r = block.coloring.colors();
    let period = block.period() as usize;
    let n = (k as usize - 1) * period + 1;
    if n > cap {
        return Err(Error::Resource(format!(
            "assembled length {n} exceeds the direct-verification cap {cap}"
        )));
    }

    // Special positions: boundary slots first, then free positions per copy.
    let mut specials: Vec<usize> = (0..k as usize).map(|j| j * period).collect();
    for j in 0..k as usize - 1 {
        specials.extend(
            block
                .free_positions
                .iter()
                .map(|&f| j * period + f as usize),
        );
    }
    if SENTINEL_BASE + specials.len() > u8::MAX as usize {
        return Err(Error::domain(
            "too many boundary and free positions to search",
        ));
    }
    let mut seq: Vec<u8> = (0..n)
        .map(|pos| match pos % period {
            0 => 0,
            off => block.coloring.get(off - 1),
        })
        .collect();
    for (i, &s) in specials.iter().enumerate() {
        seq[s] = (SENTINEL_BASE + i) as u8;
    }
    if let Some((start, d)) = RunScanner.find(&seq, k as usize) {
        return Err(Error::Validation(format!(
            "block body already contains a monochromatic progression (start {start}, spacing {d})"
        )));
    }

    let free = block.free_positions.len() as u32;
    let total = (r as u64).checked_pow(k + free).unwrap_or(u64::MAX);
    if total > MAX_ASSEMBLY_CANDIDATES {
        return Err(Error::Resource(format!(
            "{total} boundary/free combinations exceed the search limit {MAX_ASSEMBLY_CANDIDATES}"
        )));
    }
    let alternating = alternating_fill(k);
    let fills = std::iter::once(alternating.clone()).chain(
        (0..(r as u64).pow(k))
            .map(|code| digits(code, r, k as usize))
            .filter(|f| f != &alternating && f.iter().any(|&c| c != f[0])),
    );
    let mut tried = 0u64;
    for fill in fills {
        for code in 0..(r as u64).pow(free) {
            tried += 1;
            let free_colors = digits(code, r, free as usize);
            for (j, s) in specials.iter().enumerate() {
                seq[*s] = if j < k as usize {
                    fill[j]
                } else {
                    free_colors[(j - k as usize) % free as usize]
                };
            }
            if specials.iter().any(|&s| mono_through(&seq, s, k as usize)) {
                continue;
            }
            debug!("assembly found after {tried} candidates: fill {fill:?}, free {free_colors:?}");
            return finish(seq, r, k, kind, meta, period, &fill, &free_colors, cap);
        }
    }
    Err(Error::Validation(format!(
        "no boundary fill or free-position choice avoids a {k}-term progression ({tried} tried)"
    )))
}

#[allow(clippy::too_many_arguments)]
fn finish(
    seq: Vec<u8>,
    r: u32,
    k: u32,
    kind: CertificateKind,
    meta: &str,
    period: usize,
    fill: &[u8],
    free_colors: &[u8],
    cap: usize,
) -> Result<Certificate> {
    let text = |v: &[u8]| {
        v.iter()
            .map(|c| char::from_digit(*c as u32, 36).unwrap())
            .collect::<String>()
    };
    let mut full_meta = format!("{meta} period={period} fill={}", text(fill));
    if !free_colors.is_empty() {
        full_meta.push_str(&format!(" free={}", text(free_colors)));
    }
    let cert = Certificate::new(Coloring::linear(&seq, r)?, k, kind, full_meta.trim_start())?;
    match verify_certificate(&cert, cap)? {
        VerifyOutcome::Verified(c) if c.verified == Verification::Direct => Ok(c),
        VerifyOutcome::Verified(_) => unreachable!("verified at its own k"),
        VerifyOutcome::Refuted(w) => Err(Error::Validation(format!(
            "assembled certificate failed direct verification: {w}"
        ))),
    }
}

/// Base-`r` digits of `code`, most significant first.
fn digits(mut code: u64, r: u32, len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for slot in out.iter_mut().rev() {
        *slot = (code % r as u64) as u8;
        code /= r as u64;
    }
    out
}

/// Whether some monochromatic `k`-term progression passes through `s`.
fn mono_through(seq: &[u8], s: usize, k: usize) -> bool {
    let n = seq.len();
    let c = seq[s];
    let max_d = (n - 1) / (k - 1);
    for d in 1..=max_d {
        let mut left = 0;
        let mut pos = s;
        while left < k - 1 && pos >= d && seq[pos - d] == c {
            pos -= d;
            left += 1;
        }
        let mut right = 0;
        pos = s;
        while left + right < k - 1 && pos + d < n && seq[pos + d] == c {
            pos += d;
            right += 1;
        }
        if left + right + 1 >= k {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::rabung_coloring;
    use crate::transforms::{zip, zip_twice};
    use crate::verifier::DEFAULT_VERIFY_CAP;

    #[test]
    fn plain_block_matches_fixed_fill() {
        let block = LiftedBlock::plain(rabung_coloring(11, 2, 2).unwrap());
        let cert = assemble_lifted(
            &block,
            4,
            CertificateKind::Rabung,
            "p=11",
            DEFAULT_VERIFY_CAP,
        )
        .unwrap();
        assert_eq!(cert.len(), 34);
        assert_eq!(cert.meta, "p=11 period=11 fill=0101");
        assert_eq!(cert.verified, Verification::Direct);
    }

    #[test]
    fn zip_113_gives_w62_tight() {
        let block = zip(&rabung_coloring(113, 3, 2).unwrap()).unwrap();
        let cert =
            assemble_lifted(&block, 6, CertificateKind::Zip, "", DEFAULT_VERIFY_CAP).unwrap();
        assert_eq!(cert.len(), 1131);
    }

    #[test]
    fn zip_twice_11_gives_w52_tight() {
        let block = zip_twice(&rabung_coloring(11, 2, 2).unwrap()).unwrap();
        let cert =
            assemble_lifted(&block, 5, CertificateKind::Zip, "", DEFAULT_VERIFY_CAP).unwrap();
        assert_eq!(cert.len(), 177);
    }

    #[test]
    fn dirty_body_is_rejected() {
        let block = LiftedBlock::plain(Coloring::linear(&[0, 0, 0, 1], 2).unwrap());
        assert!(matches!(
            assemble_lifted(&block, 3, CertificateKind::Manual, "", 1000),
            Err(Error::Validation(_))
        ));
        let ok = LiftedBlock::plain(rabung_coloring(11, 2, 2).unwrap());
        assert!(matches!(
            assemble_lifted(&ok, 4, CertificateKind::Manual, "", 10),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn mono_through_matches_scan() {
        let seq = [0u8, 1, 0, 1, 1, 0, 0, 1, 1];
        for s in 0..seq.len() {
            let brute = (1..seq.len()).any(|d| {
                (0..3).any(|t| {
                    (0..3).all(|i| {
                        let pos = s as i64 + (i as i64 - t as i64) * d as i64;
                        pos >= 0 && (pos as usize) < seq.len() && seq[pos as usize] == seq[s]
                    })
                })
            });
            assert_eq!(mono_through(&seq, s, 3), brute, "s={s}");
        }
    }
}
