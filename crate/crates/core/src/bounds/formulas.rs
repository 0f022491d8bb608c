//! Closed-form and compositional lower bounds, in exact big-integer arithmetic.

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::numtheory::is_prime;

fn require_prime(p: u64, what: &str) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} = {p} must be prime")))
    }
}

fn require_k(k: u32) -> Result<()> {
    if k < 3 {
        return Err(Error::domain(format!(
            "progression length {k} must be at least 3"
        )));
    }
    Ok(())
}

/// Length of the assembled discrete-log certificate: `(k-1) p + 1`.
pub fn bound_rabung(p: u64, k: u32) -> BigUint {
    BigUint::from(k - 1) * p + 1u32
}

/// Length of the assembled zipped certificate (period `2p`): `(k-1) 2p + 1`.
pub fn bound_zip(p: u64, k: u32) -> BigUint {
    BigUint::from(k - 1) * (2 * p as u128) + 1u32
}

/// Length with the quadrupling lift (period `4p`): `(k-1) 4p + 1`.
pub fn bound_zip_twice(p: u64, k: u32) -> BigUint {
    BigUint::from(k - 1) * (4 * p as u128) + 1u32
}

/// `W(k, r) > p * b_inner` whenever `W(k, r - ceil(r/p)) > b_inner`, for prime `p <= k`.
pub fn bound_blankenship(p: u64, b_inner: &BigUint, k: u32) -> Result<BigUint> {
    require_k(k)?;
    require_prime(p, "p")?;
    if p > k as u64 {
        return Err(Error::domain(format!(
            "recurrence needs p <= k, got p = {p} > k = {k}"
        )));
    }
    Ok(b_inner * p)
}

/// Color count of the inner number in the recurrence: `r - ceil(r/p)`.
pub fn blankenship_inner_colors(p: u64, r: u32) -> u32 {
    r - (r as u64).div_ceil(p) as u32
}

/// `W(p+1, 2) >= p (2^p - 1)`.
pub fn formula_berlekamp(p: u64) -> Result<BigUint> {
    require_prime(p, "p")?;
    let two_p: BigUint = Pow::pow(BigUint::from(2u32), p);
    Ok((two_p - 1u32) * p)
}

/// `W(p+1, r) > p^(r-1) 2^p`.
pub fn formula_blankenship_power(p: u64, r: u32) -> Result<BigUint> {
    require_prime(p, "p")?;
    if r < 2 {
        return Err(Error::domain(format!("color count {r} must be at least 2")));
    }
    let pr: BigUint = Pow::pow(BigUint::from(p), r - 1);
    let two_p: BigUint = Pow::pow(BigUint::from(2u32), p);
    Ok(pr * two_p)
}

/// `W(k, 2) >= 2^(k-1) / (e k)`.
pub fn formula_szabo(k: u32) -> Result<f64> {
    require_k(k)?;
    Ok((k as f64 - 1.0).exp2() / (std::f64::consts::E * k as f64))
}

/// `W(p+1, q) >= p (q^p - 1) + 1` for primes `q` and `p >= 5`.
pub fn formula_landman_robertson(p: u64, q: u64) -> Result<BigUint> {
    require_prime(p, "p")?;
    require_prime(q, "q")?;
    if p < 5 {
        return Err(Error::domain(format!("formula needs p >= 5, got {p}")));
    }
    let qp: BigUint = Pow::pow(BigUint::from(q), p);
    Ok((qp - BigUint::one()) * p + 1u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn rabung_lengths() {
        assert_eq!(bound_rabung(11, 4), big(34));
        assert_eq!(bound_rabung(617, 7), big(3703));
        assert_eq!(bound_rabung(958_485_937, 25), big(23_003_662_489));
    }

    #[test]
    fn zip_lengths() {
        assert_eq!(bound_zip(2213, 5), big(17_705));
        assert_eq!(bound_zip(821, 8), big(11_495));
        assert_eq!(bound_zip(29_033, 12), big(638_727));
        assert_eq!(bound_zip(113, 6), big(1131));
        assert_eq!(bound_zip_twice(11, 5), big(177));
    }

    #[test]
    fn blankenship_examples() {
        assert_eq!(bound_blankenship(5, &big(98_741), 5).unwrap(), big(493_705));
        assert_eq!(
            bound_blankenship(7, &big(2_284_751), 7).unwrap(),
            big(15_993_257)
        );
        assert_eq!(bound_blankenship(3, &big(75), 3).unwrap(), big(225));
        assert!(matches!(
            bound_blankenship(7, &big(10), 5),
            Err(Error::Domain(_))
        ));
        assert!(bound_blankenship(4, &big(10), 5).is_err());
        assert_eq!(blankenship_inner_colors(5, 7), 5);
        assert_eq!(blankenship_inner_colors(3, 6), 4);
        assert_eq!(blankenship_inner_colors(7, 5), 4);
    }

    #[test]
    fn berlekamp_examples() {
        assert_eq!(formula_berlekamp(5).unwrap(), big(155));
        assert_eq!(formula_berlekamp(2).unwrap(), big(6));
        assert_eq!(formula_berlekamp(31).unwrap(), big(66_571_993_057));
        assert!(formula_berlekamp(4).is_err());
    }

    #[test]
    fn blankenship_power_examples() {
        assert_eq!(formula_blankenship_power(5, 2).unwrap(), big(160));
        assert_eq!(formula_blankenship_power(5, 3).unwrap(), big(800));
        assert_eq!(formula_blankenship_power(2, 2).unwrap(), big(8));
    }

    #[test]
    fn szabo_examples() {
        let e = std::f64::consts::E;
        let rel = |a: f64, b: f64| ((a - b) / b).abs();
        assert!(rel(formula_szabo(3).unwrap(), 4.0 / (3.0 * e)) < 1e-12);
        assert!(rel(formula_szabo(10).unwrap(), 512.0 / (10.0 * e)) < 1e-12);
        assert!((formula_szabo(3).unwrap() - 0.4905).abs() < 1e-4);
        assert!((formula_szabo(10).unwrap() - 18.83).abs() < 1e-2);
    }

    #[test]
    fn landman_robertson_examples() {
        assert_eq!(formula_landman_robertson(5, 3).unwrap(), big(1211));
        assert_eq!(formula_landman_robertson(5, 2).unwrap(), big(156));
        assert_eq!(formula_landman_robertson(7, 2).unwrap(), big(890));
        assert!(matches!(
            formula_landman_robertson(3, 2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn big_values_do_not_overflow() {
        let b = formula_berlekamp(127).unwrap();
        assert_eq!(b.bits(), 134);
    }
}
