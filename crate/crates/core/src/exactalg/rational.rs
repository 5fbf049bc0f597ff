//! Scalar helpers around `num_rational::BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with optional sign.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn lcm_denoms<'a>(it: impl IntoIterator<Item = &'a Q>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

pub fn gcd_numers<'a>(it: impl IntoIterator<Item = &'a Q>) -> BigInt {
    it.into_iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn pow_q(x: &Q, e: u32) -> Q {
    let mut r = Q::one();
    for _ in 0..e {
        r *= x;
    }
    r
}

pub fn to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        // huge numerator/denominator: scale down through the bit lengths
        let nb = x.numer().bits() as i64;
        let db = x.denom().bits() as i64;
        let shift = (nb - 900).max(0) as usize;
        let dshift = (db - 900).max(0) as usize;
        let n = (x.numer().abs() >> shift).to_f64().unwrap_or(f64::MAX);
        let d = (x.denom() >> dshift).to_f64().unwrap_or(f64::MAX);
        let v = n / d * 2f64.powi(shift as i32 - dshift as i32);
        if x.is_negative() {
            -v
        } else {
            v
        }
    })
}

/// Largest `s` with `s^2 | n` found by trial division up to `limit`, and the cofactor.
pub fn split_square(n: &BigInt, limit: u64) -> (BigInt, BigInt) {
    let mut rest = n.abs();
    let mut sq = BigInt::one();
    let mut p = 2u64;
    while p <= limit {
        let pp = BigInt::from(p * p);
        if pp > rest {
            break;
        }
        let bp = BigInt::from(p);
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            sq *= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        sq *= r;
        rest = BigInt::one();
    }
    if n.is_negative() {
        rest = -rest;
    }
    (sq, rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_q("-81/4").unwrap(), qf(-81, 4));
        assert_eq!(parse_q("6/4").unwrap(), qf(3, 2));
        assert_eq!(fmt_q(&qf(3, 2)), "3/2");
        assert_eq!(fmt_q(&q(-8)), "-8");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn square_split() {
        let (s, r) = split_square(&BigInt::from(32), 1000);
        assert_eq!((s, r), (BigInt::from(4), BigInt::from(2)));
        let (s, r) = split_square(&BigInt::from(-12), 1000);
        assert_eq!((s, r), (BigInt::from(2), BigInt::from(-3)));
    }
}
