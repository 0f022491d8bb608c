//! Ground-truth progression checks and the exact small-case solver.

mod cyclic;
mod scanner;
mod solver;

pub use cyclic::{find_mono_ap_cyclic, has_mono_ap_cyclic};
pub use scanner::{ApScanner, NaiveScanner, RunScanner, ScannerRegistry};
pub use solver::{brute_force_w, enumerate_ap_free, BruteForce};

use std::fmt;

use crate::colorings::{Certificate, Coloring, Verification};
use crate::error::{Error, Result};

/// Largest certificate checked directly by default.
pub const DEFAULT_VERIFY_CAP: usize = 100_000;

/// A monochromatic progression `start, start + spacing, ...` of `length` terms.
/// For cyclic colorings positions are taken modulo `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApWitness {
    pub color: u8,
    pub start: u64,
    pub spacing: u64,
    pub length: u64,
}

impl ApWitness {
    pub fn positions(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.length).map(move |i| self.start + i * self.spacing)
    }
}

impl fmt::Display for ApWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "color={} start={} spacing={} length={}",
            self.color, self.start, self.spacing, self.length
        )
    }
}

/// Longest monochromatic progression. Ties go to the smallest spacing, then the
/// smallest start.
pub fn longest_ap(c: &Coloring) -> ApWitness {
    let colors = c.to_vec();
    let n = colors.len();
    let mut best = (1usize, 0usize, 1usize); // (length, start, spacing)
    let mut run = vec![0u32; n];
    for d in 1..n {
        // No progression with this spacing can beat the current best.
        if (n - 1) / d + 1 <= best.0 {
            break;
        }
        run[..d].fill(1);
        for i in d..n {
            run[i] = if colors[i] == colors[i - d] {
                run[i - d] + 1
            } else {
                1
            };
            let len = run[i] as usize;
            if len > best.0 {
                best = (len, i - (len - 1) * d, d);
            }
        }
    }
    let (length, start, spacing) = best;
    ApWitness {
        color: colors[start],
        start: c.origin() + start as u64,
        spacing: spacing as u64,
        length: length as u64,
    }
}

/// Canonical monochromatic `k`-term progression found by `scanner`, if any.
pub fn find_mono_ap_with(c: &Coloring, k: u32, scanner: &dyn ApScanner) -> Option<ApWitness> {
    let colors = c.to_vec();
    scanner
        .find(&colors, k as usize)
        .map(|(start, d)| ApWitness {
            color: colors[start],
            start: c.origin() + start as u64,
            spacing: d as u64,
            length: k as u64,
        })
}

pub fn find_mono_ap(c: &Coloring, k: u32) -> Option<ApWitness> {
    find_mono_ap_with(c, k, &RunScanner)
}

pub fn has_mono_ap(c: &Coloring, k: u32) -> bool {
    find_mono_ap(c, k).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    Verified(Certificate),
    Refuted(ApWitness),
}

/// Directly checks a certificate for monochromatic progressions of its own `k`.
pub fn verify_certificate(cert: &Certificate, cap: usize) -> Result<VerifyOutcome> {
    verify_certificate_with(cert, cert.k, cap, &RunScanner)
}

pub fn verify_certificate_with(
    cert: &Certificate,
    k: u32,
    cap: usize,
    scanner: &dyn ApScanner,
) -> Result<VerifyOutcome> {
    if cert.len() > cap {
        return Err(Error::Resource(format!(
            "certificate has {} entries, above the direct-verification cap of {cap}; \
             raise the cap or rely on shortcut validation only",
            cert.len()
        )));
    }
    if k < 3 {
        return Err(Error::domain(format!(
            "progression length {k} must be at least 3"
        )));
    }
    Ok(match find_mono_ap_with(&cert.coloring, k, scanner) {
        Some(w) => VerifyOutcome::Refuted(w),
        None => {
            let mut verified = cert.clone();
            if k == cert.k {
                verified.verified = Verification::Direct;
            }
            VerifyOutcome::Verified(verified)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::{
        alternating_fill, assemble_certificate, rabung_coloring, CertificateKind,
    };

    fn letters(s: &str) -> Coloring {
        Coloring::from_letters(s, 2).unwrap()
    }

    #[test]
    fn longest_ap_examples() {
        assert_eq!(longest_ap(&letters("BGGBBGGB")).length, 2);
        let w = longest_ap(&letters("BGGBBGGBB"));
        assert_eq!((w.color, w.start, w.spacing, w.length), (0, 0, 4, 3));
        let w = longest_ap(&letters("BGGBBGGBG"));
        assert_eq!((w.color, w.start, w.spacing, w.length), (1, 2, 3, 3));
        let single = Coloring::linear(&[1], 2).unwrap();
        assert_eq!(longest_ap(&single).length, 1);
    }

    #[test]
    fn has_mono_ap_examples() {
        assert!(!has_mono_ap(&letters("BGGBBGGB"), 3));
        let cert =
            assemble_certificate(&rabung_coloring(11, 2, 2).unwrap(), 4, &alternating_fill(4))
                .unwrap();
        assert!(!has_mono_ap(&cert.coloring, 4));
        assert!(has_mono_ap(&cert.coloring, 3));
        assert!(has_mono_ap(&Coloring::linear(&[1; 5], 2).unwrap(), 5));
    }

    #[test]
    fn verify_examples() {
        let cert =
            assemble_certificate(&rabung_coloring(11, 2, 2).unwrap(), 4, &alternating_fill(4))
                .unwrap();
        match verify_certificate(&cert, DEFAULT_VERIFY_CAP).unwrap() {
            VerifyOutcome::Verified(v) => {
                assert_eq!(v.verified, Verification::Direct);
                assert_eq!(v.len(), 34);
            }
            other => panic!("unexpected {other:?}"),
        }
        let constant = Certificate::new(
            Coloring::linear(&[0; 10], 2).unwrap(),
            3,
            CertificateKind::Manual,
            "",
        )
        .unwrap();
        let VerifyOutcome::Refuted(w) = verify_certificate(&constant, DEFAULT_VERIFY_CAP).unwrap()
        else {
            panic!("constant coloring verified");
        };
        assert_eq!((w.start, w.spacing, w.length), (0, 1, 3));
        assert!(matches!(
            verify_certificate(&constant, 5),
            Err(Error::Resource(_))
        ));
    }
}
