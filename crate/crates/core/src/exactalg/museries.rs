//! Truncated power series in an auxiliary variable `mu`, with coefficients in
//! `Q(s, t)` (stored in the two `RatFun` slots).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::ratfun::RatFun;
use super::rational::{factorial, q, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuSeries {
    c: Vec<RatFun>,
}

impl MuSeries {
    /// Coefficients of `mu^0..mu^order`; missing ones are zero.
    pub fn new(order: usize, mut c: Vec<RatFun>) -> Self {
        c.resize(order + 1, RatFun::zero());
        c.truncate(order + 1);
        MuSeries { c }
    }

    pub fn zero(order: usize) -> Self {
        MuSeries::new(order, vec![])
    }

    pub fn constant(order: usize, v: RatFun) -> Self {
        MuSeries::new(order, vec![v])
    }

    /// `e^(-mu f)` truncated at `order`.
    pub fn exp_neg(order: usize, f: &RatFun) -> Self {
        let mut c = Vec::with_capacity(order + 1);
        let mut pw = RatFun::one();
        let negf = -f;
        for k in 0..=order {
            let fk = Q::new(BigInt::one(), factorial(k as u64));
            c.push(pw.scale(&fk));
            pw = &pw * &negf;
        }
        MuSeries { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> &RatFun {
        &self.c[k]
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|v| !v.is_zero())
    }

    pub fn add(&self, o: &MuSeries) -> MuSeries {
        assert_eq!(self.order(), o.order(), "series orders differ");
        MuSeries {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &MuSeries) -> MuSeries {
        assert_eq!(self.order(), o.order(), "series orders differ");
        MuSeries {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, f: &RatFun) -> MuSeries {
        MuSeries {
            c: self.c.iter().map(|a| a * f).collect(),
        }
    }

    pub fn mul(&self, o: &MuSeries) -> MuSeries {
        assert_eq!(self.order(), o.order(), "series orders differ");
        let n = self.order();
        let mut c = vec![RatFun::zero(); n + 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + &(a * b);
                }
            }
        }
        MuSeries { c }
    }

    /// `self / o` to order `N - v`, where `v` is the valuation of `o`; the
    /// first `v` coefficients of `self` must vanish.
    pub fn div(&self, o: &MuSeries) -> Result<MuSeries> {
        let n = self.order();
        let v = o.valuation().ok_or(Error::DivisionByZeroElement)?;
        if v > n {
            return Err(Error::DivisionValuationExceedsOrder {
                valuation: v,
                order: n,
            });
        }
        if self.c[..v].iter().any(|a| !a.is_zero()) {
            return Err(Error::DivisionValuationExceedsOrder {
                valuation: v,
                order: self.valuation().unwrap_or(n),
            });
        }
        let m = n - v;
        let a = &self.c[v..];
        let b = &o.c[v..];
        let inv0 = b[0].recip()?;
        let mut quo: Vec<RatFun> = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut acc = a[k].clone();
            for j in 1..=k {
                if !b[j].is_zero() && !quo[k - j].is_zero() {
                    acc = &acc - &(&b[j] * &quo[k - j]);
                }
            }
            quo.push(&acc * &inv0);
        }
        Ok(MuSeries { c: quo })
    }

    pub fn pow(&self, e: u32) -> MuSeries {
        let mut r = MuSeries::constant(self.order(), RatFun::one());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// `p(X, Y)` for series `X`, `Y`, by Horner in the first slot.
    pub fn substitute(p: &MPoly, x: &MuSeries, y: &MuSeries) -> MuSeries {
        let n = x.order();
        let ypow = {
            let dy = p.degree(super::mpoly::Var::Y) as usize;
            let mut v = vec![MuSeries::constant(n, RatFun::one())];
            for i in 0..dy {
                let next = v[i].mul(y);
                v.push(next);
            }
            v
        };
        let mut acc = MuSeries::zero(n);
        for row in p.coeffs_in(super::mpoly::Var::X).iter().rev() {
            let mut inner = MuSeries::zero(n);
            for (j, c) in row.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    inner = inner.add(&ypow[j].scale(&RatFun::constant(c.clone())));
                }
            }
            acc = acc.mul(x).add(&inner);
        }
        acc
    }

    /// `p(e^(-mu s), e^(-mu t))` with `s`, `t` in the two slots; the `mu^k`
    /// coefficient is `(-1)^k/k! * sum c_ij (i s + j t)^k`.
    pub fn exp_substitute(p: &MPoly, order: usize) -> MuSeries {
        let mut c = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut terms = Vec::new();
            for m in 0..=k {
                // s^m t^(k-m) with weight C(k,m) sum c_ij i^m j^(k-m)
                let mut mom = Q::zero();
                for (&(i, j), cij) in p.terms() {
                    let w = pow_u(i, m) * pow_u(j, k - m);
                    if !w.is_zero() {
                        mom += cij * Q::from_integer(w);
                    }
                }
                if !mom.is_zero() {
                    terms.push((
                        (m as u32, (k - m) as u32),
                        mom * Q::from_integer(binom(k, m)),
                    ));
                }
            }
            let sign = if k % 2 == 0 { q(1) } else { q(-1) };
            let f = sign / Q::from_integer(factorial(k as u64));
            c.push(RatFun::from_poly(MPoly::from_terms(terms).scale(&f)));
        }
        MuSeries { c }
    }
}

fn pow_u(b: u32, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(b), e)
}

fn binom(n: usize, k: usize) -> BigInt {
    factorial(n as u64) / (factorial(k as u64) * factorial((n - k) as u64))
}
