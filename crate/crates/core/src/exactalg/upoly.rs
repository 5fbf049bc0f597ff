//! Dense univariate polynomials over `Q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::modp;
use super::rational::{fmt_q, q, Q};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    c: Vec<Q>,
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*t^{}", fmt_q(c), i))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl UPoly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&v| q(v)).collect())
    }

    pub fn zero() -> Self {
        UPoly { c: vec![] }
    }

    pub fn one() -> Self {
        UPoly { c: vec![Q::one()] }
    }

    pub fn constant(v: Q) -> Self {
        UPoly::new(vec![v])
    }

    /// `v * t^e`
    pub fn monomial(v: Q, e: usize) -> Self {
        let mut c = vec![Q::zero(); e + 1];
        c[e] = v;
        UPoly::new(c)
    }

    /// `t - r`
    pub fn linear_root(r: &Q) -> Self {
        UPoly::new(vec![-r.clone(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<Q> {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg_or_zero(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.c.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn lc(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|v| !v.is_zero())
    }

    pub fn scale(&self, s: &Q) -> UPoly {
        if s.is_zero() {
            return UPoly::zero();
        }
        UPoly {
            c: self.c.iter().map(|v| v * s).collect(),
        }
    }

    pub fn shift_up(&self, e: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Q::zero(); e];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    pub fn shift_down(&self, e: usize) -> UPoly {
        UPoly::new(self.c.iter().skip(e).cloned().collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.c.iter().rev().fold(Q::zero(), |acc, v| acc * x + v)
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut r = UPoly::one();
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

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, v)| v * q(i as i64))
                .collect(),
        )
    }

    /// `self(other(t))`
    pub fn compose(&self, other: &UPoly) -> UPoly {
        self.c.iter().rev().fold(UPoly::zero(), |acc, v| {
            &(&acc * other) + &UPoly::constant(v.clone())
        })
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.c.len() < d.c.len() {
            return (UPoly::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let dl = d.c.len();
        let inv = d.lc().recip();
        let mut quo = vec![Q::zero(); r.len() - dl + 1];
        for i in (0..quo.len()).rev() {
            let f = &r[i + dl - 1] * &inv;
            if f.is_zero() {
                continue;
            }
            for (j, dc) in d.c.iter().enumerate() {
                r[i + j] -= &f * dc;
            }
            quo[i] = f;
        }
        r.truncate(dl - 1);
        (UPoly::new(quo), UPoly::new(r))
    }

    pub fn exact_div(&self, d: &UPoly) -> Option<UPoly> {
        let (quo, r) = self.div_rem(d);
        r.is_zero().then_some(quo)
    }

    /// Synthetic division by `t - r`: quotient and remainder `self(r)`.
    pub fn div_linear(&self, r: &Q) -> (UPoly, Q) {
        if self.is_zero() {
            return (UPoly::zero(), Q::zero());
        }
        let n = self.c.len();
        let mut quo = vec![Q::zero(); n - 1];
        let mut acc = Q::zero();
        for i in (0..n).rev() {
            acc = acc * r + &self.c[i];
            if i > 0 {
                quo[i - 1] = acc.clone();
            }
        }
        (UPoly::new(quo), acc)
    }

    /// Multiplicity of the root `r` and the cofactor.
    pub fn split_root(&self, r: &Q) -> (u32, UPoly) {
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (quo, rem) = p.div_linear(r);
            if !rem.is_zero() {
                break;
            }
            p = quo;
            m += 1;
        }
        (m, p)
    }

    /// Exact square root when `self = g^2` for some `g` in `Q[t]`.
    pub fn sqrt_exact(&self) -> Option<UPoly> {
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        let d = self.degree().unwrap();
        if d % 2 == 1 {
            return None;
        }
        let v = self.valuation().unwrap();
        if v % 2 == 1 {
            return None;
        }
        let lc = self.lc();
        let root_lc = rational_sqrt(&lc)?;
        let m = d / 2;
        // coefficients of g from the top: g_m = root_lc, then solve downwards
        let mut g = vec![Q::zero(); m + 1];
        g[m] = root_lc.clone();
        let two_lc = &root_lc * q(2);
        for k in (0..m).rev() {
            // coefficient of t^(m+k) in g^2 = 2 g_m g_k + sum_{i+j = m+k, k<i,j<m} g_i g_j
            let mut s = self.coeff(m + k);
            for i in (k + 1)..m {
                let j = m + k - i;
                if j > k && j < m {
                    s -= &g[i] * &g[j];
                }
            }
            g[k] = s / &two_lc;
        }
        let g = UPoly::new(g);
        (&g * &g == *self).then_some(g)
    }

    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return UPoly::one();
        }
        let va = a.valuation().unwrap();
        let vb = b.valuation().unwrap();
        let m = va.min(vb);
        let a1 = a.shift_down(va);
        let b1 = b.shift_down(vb);
        let one = Q::one();
        let (ea, a2) = a1.split_root(&one);
        let (eb, b2) = b1.split_root(&one);
        let e = ea.min(eb);
        let common = UPoly::linear_root(&one).pow(e).shift_up(m);
        if a2.is_constant() || b2.is_constant() || coprime_mod_p(&a2, &b2) {
            return common;
        }
        let g = euclid(a2, b2);
        (&common * &g).monic()
    }
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    use num_traits::Signed;
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Q::new(n, d))
}

pub(crate) fn coprime_mod_p(a: &UPoly, b: &UPoly) -> bool {
    for &p in &modp::PRIMES {
        let (Some(ra), Some(rb)) = (modp::reduce(&a.c, p), modp::reduce(&b.c, p)) else {
            continue;
        };
        if ra.last() == Some(&0) || rb.last() == Some(&0) {
            continue;
        }
        if modp::gcd_degree(ra, rb, p) == Some(0) {
            return true;
        }
        // a positive degree over F_p is not conclusive by itself
        return false;
    }
    false
}

fn euclid(mut a: UPoly, mut b: UPoly) -> UPoly {
    if a.c.len() < b.c.len() {
        std::mem::swap(&mut a, &mut b);
    }
    a = a.monic();
    b = b.monic();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r.monic();
    }
    a.monic()
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new(
            (0..n)
                .map(|i| match (self.c.get(i), o.c.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new(
            (0..n)
                .map(|i| match (self.c.get(i), o.c.get(i)) {
                    (Some(a), Some(b)) => a - b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => -b,
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        UPoly::new(c)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            c: self.c.iter().map(|v| -v).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UPoly {
            type Output = UPoly;
            fn $m(self, o: UPoly) -> UPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::from_ints(c)
    }

    #[test]
    fn division_and_gcd() {
        let a = &p(&[-1, 1]) * &p(&[2, 0, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(UPoly::gcd(&a, &b), p(&[-1, 1]));
        let (quo, r) = a.div_rem(&p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(quo, p(&[2, 0, 1]));
        // nontrivial factor that is neither t nor t-1
        let f = p(&[5, 3, 1]);
        let a = &f * &p(&[1, 2]);
        let b = &f * &p(&[7, 0, 1]);
        assert_eq!(UPoly::gcd(&a, &b), f);
    }

    #[test]
    fn sqrt_and_roots() {
        let g = p(&[1, -6, 1]);
        assert_eq!((&g * &g).sqrt_exact(), Some(g.clone()));
        assert_eq!(g.sqrt_exact(), None);
        let h = &p(&[-1, 1]).pow(3) * &g;
        let (m, rest) = h.split_root(&Q::one());
        assert_eq!((m, rest), (3, g));
    }

    #[test]
    fn compose_eval() {
        let f = p(&[1, 1, 1]);
        let g = p(&[0, 2]);
        assert_eq!(f.compose(&g), p(&[1, 2, 4]));
        assert_eq!(f.eval(&q(3)), q(13));
    }
}
