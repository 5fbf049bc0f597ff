//! Word-size prime field arithmetic, used only to certify coprimality cheaply.
//!
//! If integer polynomials `a`, `b` have a common factor of degree `d` over `Q`
//! and `p` does not divide their leading coefficients, then `gcd(a mod p, b mod p)`
//! has degree at least `d`. A constant gcd mod `p` therefore proves coprimality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::rational::Q;

pub const PRIMES: [u64; 3] = [
    2_305_843_009_213_693_951,
    4_611_686_018_427_387_847,
    998_244_353,
];

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

fn invm(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

pub fn int_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

/// `None` when the denominator vanishes mod `p`.
pub fn q_mod(x: &Q, p: u64) -> Option<u64> {
    let d = int_mod(x.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mulm(int_mod(x.numer(), p), invm(d, p), p))
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of `gcd(a, b)` over `F_p` (`None` if both are zero).
pub fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Option<usize> {
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() && b.is_empty() {
        return None;
    }
    while !b.is_empty() {
        // a <- a mod b
        let inv = invm(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let f = mulm(*a.last().unwrap(), inv, p);
            let shift = a.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                let t = mulm(f, *bc, p);
                a[shift + i] = (a[shift + i] + p - t) % p;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    Some(a.len() - 1)
}

/// Reduces rational coefficients mod `p`; `None` if some denominator vanishes.
pub fn reduce(coeffs: &[Q], p: u64) -> Option<Vec<u64>> {
    coeffs.iter().map(|c| q_mod(c, p)).collect()
}

/// Evaluates a polynomial with already-reduced coefficients.
pub fn eval(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0, |acc, c| (mulm(acc, x, p) + c) % p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_degrees() {
        let p = PRIMES[2];
        // (x-1)(x+2) and (x-1)(x-3)
        let a = vec![p - 2, 1, 1];
        let b = vec![3, p - 4, 1];
        assert_eq!(gcd_degree(a, b, p), Some(1));
        assert_eq!(gcd_degree(vec![1, 1], vec![p - 1, 1], p), Some(0));
    }
}
