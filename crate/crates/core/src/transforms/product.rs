//! Xu's product: a ring coloring of `Z_n` times a linear certificate.

use num_bigint::BigUint;

use crate::bounds::{BoundRecord, BoundStatus};
use crate::colorings::{Coloring, PackedColors, Topology, MAX_COLORS};
use crate::error::{Error, Result};
use crate::numtheory::factorize;
use crate::verifier::has_mono_ap_cyclic;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductRecipe {
    /// Outer ring size.
    pub n: u64,
    /// Outer colors.
    pub s: u32,
    /// Inner length.
    pub m: u64,
    /// Inner colors.
    pub t: u32,
    pub k: u32,
}

impl ProductRecipe {
    pub fn of(outer: &Coloring, inner: &Coloring, k: u32) -> Self {
        Self {
            n: outer.len() as u64,
            s: outer.colors(),
            m: inner.len() as u64,
            t: inner.colors(),
            k,
        }
    }

    /// Names every failed precondition of the product theorem.
    pub fn violations(&self, outer: &Coloring) -> Result<Vec<String>> {
        let mut failed = Vec::new();
        if self.n < 5 {
            failed.push(format!("outer ring size n = {} must be at least 5", self.n));
        }
        let lpd = least_prime_divisor(self.n)?;
        if lpd <= self.k as u64 {
            failed.push(format!(
                "least prime divisor of n = {} is {lpd}, must exceed k = {}",
                self.n, self.k
            ));
        }
        if has_mono_ap_cyclic(outer, self.k) {
            failed.push(format!(
                "outer coloring has a monochromatic {}-term progression in Z_{}",
                self.k, self.n
            ));
        }
        Ok(failed)
    }
}

/// Smallest prime factor, with `least_prime_divisor(1) = 1`.
pub fn least_prime_divisor(n: u64) -> Result<u64> {
    match n {
        0 => return Err(Error::domain("0 has no least prime divisor")),
        1 => return Ok(1),
        _ => {}
    }
    Ok(factorize(n)?.primes().min().unwrap_or(1))
}

/// Position `i` gets `inner(i / n) * s + outer(i mod n)`: each inner entry is
/// replaced by a copy of the ring coloring in that entry's palette. A
/// progression whose spacing is a multiple of `n` projects to one in the
/// inner certificate; any other projects to `k` distinct points of `Z_n`.
/// Preconditions are checked unless `permissive` is set, which allows
/// demonstration products outside the theorem's hypotheses.
pub fn xu_product(
    outer: &Coloring,
    inner: &Coloring,
    k: u32,
    permissive: bool,
) -> Result<Coloring> {
    if k < 3 {
        return Err(Error::domain(format!(
            "progression length {k} must be at least 3"
        )));
    }
    let recipe = ProductRecipe::of(outer, inner, k);
    let colors = recipe.s * recipe.t;
    if colors > MAX_COLORS {
        return Err(Error::domain(format!(
            "product needs {colors} colors, more than {MAX_COLORS}"
        )));
    }
    if !permissive {
        let failed = recipe.violations(outer)?;
        if !failed.is_empty() {
            return Err(Error::domain(format!(
                "product preconditions failed: {}",
                failed.join("; ")
            )));
        }
    }
    let (n, m) = (outer.len(), inner.len());
    let len = n
        .checked_mul(m)
        .ok_or_else(|| Error::domain("product length overflows"))?;
    let mut out = PackedColors::for_colors(colors, len);
    let ring = outer.to_vec();
    for (block, c) in inner.iter().enumerate() {
        let base = c as u32 * recipe.s;
        for (j, &o) in ring.iter().enumerate() {
            out.set(block * n + j, (base + o as u32) as u8);
        }
    }
    Ok(Coloring::from_packed(out, colors, Topology::Linear, 0))
}

/// The product bound `W(k, s t) > n b` for an inner certificate of length
/// `b`. The recipe also carries the theorem's value `n b + 1`.
pub fn xu_bound(n: u64, b: &BigUint, k: u32, s: u32, t: u32) -> BoundRecord {
    let bound = b * n;
    let formula = &bound + 1u32;
    BoundRecord::new(
        k,
        s * t,
        bound,
        BoundStatus::Formula,
        format!("xu n={n} b={b} theorem={formula}"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::{find_mono_ap, has_mono_ap};

    fn bggbbggb() -> Coloring {
        Coloring::from_letters("BGGBBGGB", 2).unwrap()
    }

    #[test]
    fn demo_product_of_length_64() {
        let outer = bggbbggb().with_topology(Topology::Cyclic);
        let inner = bggbbggb();
        assert!(xu_product(&outer, &inner, 3, false).is_err());
        let prod = xu_product(&outer, &inner, 3, true).unwrap();
        assert_eq!(prod.len(), 64);
        assert_eq!(prod.colors(), 4);
        assert_eq!(&prod.letters()[..16], "BGGBBGGBYRRYYRRY");
        // n = 8 violates the prime-divisor condition, and it shows: blocks
        // 1 and 2 are both the ring in the second palette, so 8, 12, 16
        // share its first color.
        let w = find_mono_ap(&prod, 3).unwrap();
        assert_eq!((w.start, w.spacing), (8, 4));
    }

    #[test]
    fn theorem_product_is_valid() {
        // Ring-valid for k = 4 on Z_7, and 7 > 4 is prime.
        let outer = Coloring::cyclic(&[0, 0, 0, 1, 0, 1, 1], 2).unwrap();
        let inner = crate::colorings::assemble_certificate(
            &crate::colorings::rabung_coloring(11, 2, 2).unwrap(),
            4,
            &crate::colorings::alternating_fill(4),
        )
        .unwrap()
        .coloring;
        let prod = xu_product(&outer, &inner, 4, false).unwrap();
        assert_eq!(prod.len(), 7 * 34);
        assert!(!has_mono_ap(&prod, 4));
    }

    #[test]
    fn precondition_messages() {
        let outer = bggbbggb().with_topology(Topology::Cyclic);
        let err = xu_product(&outer, &bggbbggb(), 3, false)
            .unwrap_err()
            .to_string();
        assert!(err.contains("least prime divisor of n = 8 is 2"), "{err}");
    }

    #[test]
    fn projections() {
        let outer = Coloring::cyclic(&[0, 0, 1, 1, 0], 2).unwrap();
        let inner = Coloring::linear(&[0, 1, 2, 1], 3).unwrap();
        let prod = xu_product(&outer, &inner, 3, true).unwrap();
        for (i, c) in prod.iter().enumerate() {
            assert_eq!(c % 2, outer.get(i % 5));
            assert_eq!(c / 2, inner.get(i / 5));
        }
        let single = xu_product(&outer, &Coloring::linear(&[1], 3).unwrap(), 3, true).unwrap();
        assert_eq!(single.to_vec(), vec![2, 2, 3, 3, 2]);
    }

    #[test]
    fn bound_examples() {
        let r = xu_bound(617, &BigUint::from(3703u32), 7, 2, 2);
        assert_eq!((r.k, r.r), (7, 4));
        assert_eq!(r.bound, BigUint::from(2_284_751u64));
        let r = xu_bound(11_497, &BigUint::from(103_474u32), 10, 2, 2);
        assert_eq!(r.bound, BigUint::from(1_189_640_578u64));
        assert_eq!(
            xu_bound(29, &BigUint::from(1u32), 3, 2, 2).bound,
            BigUint::from(29u32)
        );
        assert_eq!(least_prime_divisor(239_873).unwrap(), 239_873);
        assert_eq!(least_prime_divisor(1).unwrap(), 1);
    }
}
