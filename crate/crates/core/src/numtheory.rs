//! Exact 64-bit modular arithmetic, primality, factorization and primitive roots.
//!
//! Everything here is a pure function of its inputs. Products are widened to
//! `u128` so no operation overflows anywhere in the `u64` range.

use crate::error::{Error, Result};

/// Witness set that makes Miller-Rabin deterministic for every `n < 3.3 * 10^24`.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Trial division handles every factor below this bound before Pollard-rho runs.
const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Widest range `sieve_range` will materialize as a list.
pub const MAX_SIEVE_SPAN: u64 = 1 << 32;

/// Largest base prime the segmented sieve will generate (covers `hi < 2^56`).
const MAX_BASE_PRIME: u64 = 1 << 28;

/// Bytes per sieve segment.
const SEGMENT_LEN: u64 = 1 << 18;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m`. Returns 0 when `m == 1`.
pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    assert!(m > 0, "modulus must be positive");
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `d` modulo the prime `p`, in `1..p`.
pub fn mod_inverse(d: u64, p: u64) -> Result<u64> {
    if p < 2 {
        return Err(Error::domain(format!("modulus {p} is not a prime")));
    }
    let d = d % p;
    if d == 0 {
        return Err(Error::domain(format!("{d} is not invertible modulo {p}")));
    }
    // Extended Euclid on signed 128-bit values.
    let (mut old_r, mut r) = (d as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::domain(format!("{d} is not invertible modulo {p}")));
    }
    Ok(old_s.rem_euclid(p as i128) as u64)
}

/// Deterministic primality test over the whole `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_WITNESSES {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization with factors sorted by prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(q, _)| q)
    }

    /// Multiplies the factors back together; `None` on overflow.
    pub fn product(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(q, e)| {
            q.checked_pow(e).and_then(|qe| acc.checked_mul(qe))
        })
    }
}

pub fn factorize(n: u64) -> Result<PrimeFactorization> {
    if n < 2 {
        return Err(Error::domain(format!("cannot factorize {n}")));
    }
    let mut primes = Vec::new();
    let mut rest = n;
    for q in [2u64, 3] {
        while rest % q == 0 {
            primes.push(q);
            rest /= q;
        }
    }
    let mut q = 5u64;
    while q <= TRIAL_DIVISION_LIMIT && q * q <= rest {
        for cand in [q, q + 2] {
            while rest % cand == 0 {
                primes.push(cand);
                rest /= cand;
            }
        }
        q += 6;
    }
    if rest > 1 {
        split_large(rest, &mut primes);
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match factors.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => factors.push((q, 1)),
        }
    }
    Ok(PrimeFactorization { n, factors })
}

/// Splits a cofactor with no small prime factors.
fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let r = isqrt(n);
    if r * r == n {
        split_large(r, out);
        split_large(r, out);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Brent's cycle-finding variant of Pollard-rho. `n` must be an odd composite.
fn pollard_brent(n: u64) -> u64 {
    const BATCH: u64 = 128;
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut y = 2u64;
        let mut x = y;
        let mut ys = y;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut len = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..len {
                y = f(y);
            }
            let mut k = 0;
            while k < len && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(len - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            len *= 2;
        }
        if g == n {
            // Batched product hit zero; replay one step at a time.
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("Pollard-rho exhausted all increments")
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).map_or(true, |sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// True iff `rho` generates the multiplicative group mod `p`, given the
/// distinct prime factors of `p - 1`.
pub fn is_primitive_root_with(rho: u64, p: u64, factors_of_order: &PrimeFactorization) -> bool {
    if p == 2 {
        return rho % 2 == 1;
    }
    if rho % p == 0 {
        return false;
    }
    factors_of_order
        .primes()
        .all(|q| mod_pow(rho, (p - 1) / q, p) != 1)
}

pub fn is_primitive_root(rho: u64, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if p == 2 {
        return Ok(rho % 2 == 1);
    }
    Ok(is_primitive_root_with(rho, p, &factorize(p - 1)?))
}

/// Smallest primitive root of the prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if p == 2 {
        return Ok(1);
    }
    let order = factorize(p - 1)?;
    (2..p)
        .find(|&g| is_primitive_root_with(g, p, &order))
        .ok_or_else(|| Error::domain(format!("no primitive root found for {p}")))
}

/// Primes in `[lo, hi)`, ascending.
pub fn sieve_range(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if lo > hi {
        return Err(Error::domain(format!("empty interval: lo {lo} > hi {hi}")));
    }
    if hi - lo > MAX_SIEVE_SPAN {
        return Err(Error::Resource(format!(
            "range of {} integers exceeds the sieve limit of {MAX_SIEVE_SPAN}; \
             iterate with PrimeStream instead",
            hi - lo
        )));
    }
    Ok(PrimeStream::new(lo, hi)?.collect())
}

/// Streaming segmented sieve over `[lo, hi)` with bounded memory.
pub struct PrimeStream {
    base: Vec<u64>,
    seg_lo: u64,
    hi: u64,
    mark: Vec<bool>,
    buffered: std::vec::IntoIter<u64>,
}

impl PrimeStream {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        let lo = lo.max(2);
        let hi = hi.max(lo);
        let root = if hi > 2 { isqrt(hi - 1) } else { 0 };
        if root > MAX_BASE_PRIME {
            return Err(Error::Resource(format!(
                "upper bound {hi} needs base primes beyond {MAX_BASE_PRIME}"
            )));
        }
        Ok(Self {
            base: simple_sieve(root),
            seg_lo: lo,
            hi,
            mark: Vec::new(),
            buffered: Vec::new().into_iter(),
        })
    }

    fn fill_next_segment(&mut self) -> bool {
        if self.seg_lo >= self.hi {
            return false;
        }
        let seg_hi = self.seg_lo.saturating_add(SEGMENT_LEN).min(self.hi);
        let len = (seg_hi - self.seg_lo) as usize;
        self.mark.clear();
        self.mark.resize(len, true);
        for &q in &self.base {
            let sq = q * q;
            if sq >= seg_hi {
                break;
            }
            let first = sq.max(self.seg_lo.div_ceil(q) * q);
            let mut m = first;
            while m < seg_hi {
                self.mark[(m - self.seg_lo) as usize] = false;
                m += q;
            }
        }
        let base = self.seg_lo;
        let found: Vec<u64> = self
            .mark
            .iter()
            .enumerate()
            .filter(|&(_, &is_p)| is_p)
            .map(|(i, _)| base + i as u64)
            .collect();
        self.buffered = found.into_iter();
        self.seg_lo = seg_hi;
        true
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if let Some(p) = self.buffered.next() {
                return Some(p);
            }
            if !self.fill_next_segment() {
                return None;
            }
        }
    }
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut is_p = vec![true; n + 1];
    is_p[0] = false;
    is_p[1] = false;
    let mut i = 2;
    while i * i <= n {
        if is_p[i] {
            (i * i..=n).step_by(i).for_each(|j| is_p[j] = false);
        }
        i += 1;
    }
    is_p.iter()
        .enumerate()
        .filter(|&(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}
