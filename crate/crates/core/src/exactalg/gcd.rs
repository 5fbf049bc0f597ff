//! Bivariate polynomial gcd.
//!
//! Fast paths strip monomial content and powers of `x - 1`, `y - 1` (the only
//! pole factors that occur in practice), then try to certify coprimality mod a
//! word prime. The general fallback is the subresultant PRS in `Q[y][x]`.

use super::modp::{self, PRIMES};
use super::mpoly::{MPoly, Var};
use super::rational::Q;
use super::upoly::UPoly;

pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if let (Some(ua), Some(ub)) = (a.as_upoly(Var::X), b.as_upoly(Var::X)) {
        return MPoly::from_upoly(&UPoly::gcd(&ua, &ub), Var::X);
    }
    if let (Some(ua), Some(ub)) = (a.as_upoly(Var::Y), b.as_upoly(Var::Y)) {
        return MPoly::from_upoly(&UPoly::gcd(&ua, &ub), Var::Y);
    }

    let (ai, aj) = a.min_exponents();
    let (bi, bj) = b.min_exponents();
    let mut common = MPoly::monomial(Q::from_integer(1.into()), ai.min(bi), aj.min(bj));
    let mut a = a.unshift(ai, aj);
    let mut b = b.unshift(bi, bj);
    for v in [Var::X, Var::Y] {
        let (ma, ra) = a.split_one(v);
        let (mb, rb) = b.split_one(v);
        let m = ma.min(mb);
        if m > 0 {
            let lin = &MPoly::var(v) - &MPoly::one();
            common = &common * &lin.pow(m);
        }
        a = ra;
        b = rb;
    }
    if a.is_constant() || b.is_constant() || coprime_mod_p(&a, &b) {
        return common;
    }
    &common * &subresultant(&a, &b)
}

/// Sound coprimality certificate; `false` means "unknown".
fn coprime_mod_p(a: &MPoly, b: &MPoly) -> bool {
    let (a, _) = a.primitive();
    let (b, _) = b.primitive();
    // no factor involving `main`, then no factor involving the other variable
    no_common_factor_in(&a, &b, Var::X) && no_common_factor_in(&a, &b, Var::Y)
}

fn no_common_factor_in(a: &MPoly, b: &MPoly, main: Var) -> bool {
    let ca = a.coeffs_in(main);
    let cb = b.coeffs_in(main);
    if ca.len() <= 1 || cb.len() <= 1 {
        // one side is free of `main`, so is every common factor
        return true;
    }
    for &p in &PRIMES {
        let (Some(ra), Some(rb)) = (reduce_all(&ca, p), reduce_all(&cb, p)) else {
            continue;
        };
        for y0 in [3u64, 7, 12345, 987_654_321] {
            let y0 = y0 % p;
            let ea: Vec<u64> = ra.iter().map(|c| modp::eval(c, y0, p)).collect();
            let eb: Vec<u64> = rb.iter().map(|c| modp::eval(c, y0, p)).collect();
            // leading coefficients must survive so degrees are preserved
            if *ea.last().unwrap() == 0 || *eb.last().unwrap() == 0 {
                continue;
            }
            return modp::gcd_degree(ea, eb, p) == Some(0);
        }
    }
    false
}

fn reduce_all(cs: &[UPoly], p: u64) -> Option<Vec<Vec<u64>>> {
    cs.iter().map(|c| modp::reduce(c.coeffs(), p)).collect()
}

fn content(cs: &[UPoly]) -> UPoly {
    cs.iter().fold(UPoly::zero(), |g, c| {
        if g.is_one() {
            g
        } else {
            UPoly::gcd(&g, c)
        }
    })
}

fn div_all(cs: &[UPoly], d: &UPoly) -> Vec<UPoly> {
    cs.iter()
        .map(|c| c.exact_div(d).expect("content divides every coefficient"))
        .collect()
}

fn trim(v: &mut Vec<UPoly>) {
    while v.last().is_some_and(UPoly::is_zero) {
        v.pop();
    }
}

/// Pseudo-remainder of `a` by `b` over `Q[y]`: `lc(b)^(da-db+1) a mod b`.
fn prem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut steps = 0usize;
    let delta = a.len() - b.len();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&lr * bc);
        }
        r.pop();
        trim(&mut r);
        steps += 1;
    }
    let extra = delta + 1 - steps;
    if extra > 0 {
        let f = lb.pow(extra as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

/// Subresultant algorithm in `Q[y][x]`.
fn subresultant(a: &MPoly, b: &MPoly) -> MPoly {
    let mut a = a.coeffs_in(Var::X);
    let mut b = b.coeffs_in(Var::X);
    if b.len() > a.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let ca = content(&a);
    let cb = content(&b);
    let d = UPoly::gcd(&ca, &cb);
    a = div_all(&a, &ca);
    b = div_all(&b, &cb);
    let mut g = UPoly::one();
    let mut h = UPoly::one();
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            b = vec![UPoly::one()];
            break;
        }
        a = b;
        let den = &g * &h.pow(delta);
        b = div_all(&r, &den);
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta);
            num.exact_div(&h.pow(delta - 1))
                .expect("subresultant h update is exact")
        };
    }
    let cb = content(&b);
    let b = div_all(&b, &cb);
    let g = MPoly::from_coeffs_in(Var::X, &b);
    &g * &MPoly::from_upoly(&d, Var::Y)
}

/// Test hook: forces the general algorithm.
#[doc(hidden)]
pub fn gcd_prs(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() || b.is_zero() {
        return gcd(a, b);
    }
    subresultant(a, b)
}

/// `a = u * b` for a nonzero rational `u`.
pub fn is_unit_multiple(a: &MPoly, b: &MPoly) -> bool {
    match (a.leading(), b.leading()) {
        (Some((_, ca)), Some((_, cb))) => a.scale(&(cb / ca)) == *b,
        (None, None) => true,
        _ => false,
    }
}
