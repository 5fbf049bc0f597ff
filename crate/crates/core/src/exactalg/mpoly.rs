//! Sparse bivariate polynomials over `Q`.
//!
//! Exponent pairs `(i, j)` index `x^i y^j`; the `BTreeMap` order is lexicographic
//! with `x` before `y`, so the last entry is the lex-leading term. The two
//! variable slots are named only at the I/O boundary (`x, y`, `s, t` or `u, v`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{fmt_q, gcd_numers, lcm_denoms, q, Q};
use super::upoly::UPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<(u32, u32), Q>,
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(["x", "y"]))
    }
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        MPoly::monomial(c, 0, 0)
    }

    pub fn monomial(c: Q, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        MPoly { terms }
    }

    pub fn x() -> Self {
        MPoly::monomial(Q::one(), 1, 0)
    }

    pub fn y() -> Self {
        MPoly::monomial(Q::one(), 0, 1)
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => MPoly::x(),
            Var::Y => MPoly::y(),
        }
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), Q)>) -> Self {
        let mut terms: BTreeMap<(u32, u32), Q> = BTreeMap::new();
        for (e, c) in it {
            *terms.entry(e).or_insert_with(Q::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        MPoly { terms }
    }

    pub fn from_int_terms(t: &[(u32, u32, i64)]) -> Self {
        MPoly::from_terms(t.iter().map(|&(i, j, c)| ((i, j), q(c))))
    }

    pub fn from_upoly(p: &UPoly, v: Var) -> Self {
        MPoly::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| {
            let k = k as u32;
            let e = match v {
                Var::X => (k, 0),
                Var::Y => (0, k),
            };
            (e, c.clone())
        }))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Q {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&(0, 0)))
    }

    pub fn constant_value(&self) -> Option<Q> {
        self.is_constant().then(|| self.coeff(0, 0))
    }

    /// Lex-leading term `((i, j), c)`.
    pub fn leading(&self) -> Option<(&(u32, u32), &Q)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|&(i, j)| if v == Var::X { i } else { j })
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn min_exponents(&self) -> (u32, u32) {
        let mi = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let mj = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        (mi, mj)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|&(i, j)| i + j);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn involves(&self, v: Var) -> bool {
        self.degree(v) > 0
    }

    /// Univariate view when the polynomial does not involve the other variable.
    pub fn as_upoly(&self, v: Var) -> Option<UPoly> {
        if self.involves(v.other()) {
            return None;
        }
        let n = self.degree(v) as usize;
        let mut c = vec![Q::zero(); n + 1];
        for (&(i, j), val) in &self.terms {
            c[if v == Var::X { i } else { j } as usize] = val.clone();
        }
        Some(UPoly::new(c))
    }

    pub fn scale(&self, s: &Q) -> MPoly {
        if s.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn shift(&self, di: u32, dj: u32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i + di, j + dj), c.clone()))
                .collect(),
        }
    }

    /// Divides by `x^di y^dj`; the caller guarantees divisibility.
    pub fn unshift(&self, di: u32, dj: u32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i - di, j - dj), c.clone()))
                .collect(),
        }
    }

    pub fn swap_vars(&self) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())))
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut r = MPoly::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        r
    }

    pub fn derivative(&self, v: Var) -> MPoly {
        MPoly::from_terms(self.terms.iter().filter_map(|(&(i, j), c)| match v {
            Var::X if i > 0 => Some(((i - 1, j), c * q(i as i64))),
            Var::Y if j > 0 => Some(((i, j - 1), c * q(j as i64))),
            _ => None,
        }))
    }

    pub fn eval(&self, x: &Q, y: &Q) -> Q {
        self.coeffs_in(Var::X)
            .iter()
            .rev()
            .fold(Q::zero(), |acc, cy| acc * x + cy.eval(y))
    }

    /// Substitutes a value for one variable, leaving a polynomial in the other.
    pub fn eval_var(&self, v: Var, val: &Q) -> UPoly {
        let cs = self.coeffs_in(v.other());
        UPoly::new(cs.iter().map(|c| c.eval(val)).collect())
    }

    /// Dense coefficients with respect to `main`; entry `k` is the coefficient
    /// of `main^k`, a univariate polynomial in the other variable.
    pub fn coeffs_in(&self, main: Var) -> Vec<UPoly> {
        let n = self.degree(main) as usize;
        let m = self.degree(main.other()) as usize;
        let mut dense = vec![vec![Q::zero(); m + 1]; n + 1];
        if self.is_zero() {
            return vec![];
        }
        for (&(i, j), c) in &self.terms {
            let (a, b) = if main == Var::X { (i, j) } else { (j, i) };
            dense[a as usize][b as usize] = c.clone();
        }
        dense.into_iter().map(UPoly::new).collect()
    }

    pub fn from_coeffs_in(main: Var, cs: &[UPoly]) -> MPoly {
        MPoly::from_terms(cs.iter().enumerate().flat_map(|(a, p)| {
            p.coeffs().iter().enumerate().map(move |(b, c)| {
                let (a, b) = (a as u32, b as u32);
                let e = if main == Var::X { (a, b) } else { (b, a) };
                (e, c.clone())
            })
        }))
    }

    /// Exact division in lex order; `None` when the remainder is nonzero.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "polynomial division by zero");
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (&(di, dj), dc) = d.leading().unwrap();
        let dinv = dc.recip();
        let mut r = self.clone();
        let mut quo = BTreeMap::new();
        while let Some((&(i, j), c)) = r.leading() {
            if i < di || j < dj {
                return None;
            }
            let f = c * &dinv;
            let (ei, ej) = (i - di, j - dj);
            for (&(a, b), v) in &d.terms {
                let key = (a + ei, b + ej);
                let entry = r.terms.entry(key).or_insert_with(Q::zero);
                *entry -= &f * v;
                if entry.is_zero() {
                    r.terms.remove(&key);
                }
            }
            quo.insert((ei, ej), f);
        }
        Some(MPoly { terms: quo })
    }

    /// Multiplicity of the factor `v - 1` and the cofactor.
    pub fn split_one(&self, v: Var) -> (u32, MPoly) {
        if self.is_zero() {
            return (0, MPoly::zero());
        }
        let mut cs = self.coeffs_in(v);
        let mut m = 0;
        loop {
            if cs.len() <= 1 {
                break;
            }
            // synthetic division by (v - 1) over Q[other]
            let n = cs.len();
            let mut quo = vec![UPoly::zero(); n - 1];
            let mut acc = UPoly::zero();
            for k in (0..n).rev() {
                acc = &acc + &cs[k];
                if k > 0 {
                    quo[k - 1] = acc.clone();
                }
            }
            if !acc.is_zero() {
                break;
            }
            cs = quo;
            m += 1;
        }
        (m, MPoly::from_coeffs_in(v, &cs))
    }

    /// Scale to integer coefficients with content 1; returns `(poly, factor)`
    /// with `poly = factor * self`.
    pub fn primitive(&self) -> (MPoly, Q) {
        if self.is_zero() {
            return (MPoly::zero(), Q::one());
        }
        let l = lcm_denoms(self.terms.values());
        let g = gcd_numers(self.terms.values());
        let f = Q::new(l, g);
        (self.scale(&f), f)
    }

    pub fn integer_coeffs(&self) -> Option<Vec<((u32, u32), BigInt)>> {
        self.terms
            .iter()
            .map(|(e, c)| c.is_integer().then(|| (*e, c.numer().clone())))
            .collect()
    }

    pub fn to_text(&self, names: [&str; 2]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (&(i, j), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial_text(i, j, names);
            if mono.is_empty() {
                s.push_str(&fmt_q(&a));
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", fmt_q(&a), mono));
            }
        }
        s
    }
}

pub(crate) fn monomial_text(i: u32, j: u32, names: [&str; 2]) -> String {
    let mut parts = vec![];
    for (e, n) in [(i, names[0]), (j, names[1])] {
        match e {
            0 => {}
            1 => parts.push(n.to_string()),
            _ => parts.push(format!("{n}^{e}")),
        }
    }
    parts.join("*")
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            let entry = terms.entry(*e).or_insert_with(Q::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        MPoly { terms }
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            let entry = terms.entry(*e).or_insert_with(Q::zero);
            *entry -= c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        MPoly { terms }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut terms: BTreeMap<(u32, u32), Q> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            for (&(i, j), d) in &o.terms {
                *terms.entry((a + i, b + j)).or_insert_with(Q::zero) += c * d;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MPoly { terms }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, o: MPoly) -> MPoly {
        &self + &o
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, o: MPoly) -> MPoly {
        &self - &o
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, o: MPoly) -> MPoly {
        &self * &o
    }
}
