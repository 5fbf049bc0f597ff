//! Normalized rational functions in two variables, and in one.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::mpoly::{MPoly, Var};
use super::rational::{gcd_numers, lcm_denoms, q, Q};
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// `num/den` with `gcd(num, den) = 1`, integer coefficients of combined content
/// one, and a positive lex-leading denominator coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: MPoly,
    den: MPoly,
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(["x", "y"]))
    }
}

impl RatFun {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        Ok(RatFun::normalize_units(num, den))
    }

    /// Skips the gcd; the caller guarantees the parts are coprime.
    pub(crate) fn from_coprime(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return RatFun::zero();
        }
        RatFun::normalize_units(num, den)
    }

    fn normalize_units(num: MPoly, den: MPoly) -> Self {
        let all = || num.terms().chain(den.terms()).map(|(_, c)| c);
        let l = lcm_denoms(all());
        let g = gcd_numers(all());
        let mut f = Q::new(l, g);
        if den.leading().unwrap().1 * &f < Q::zero() {
            f = -f;
        }
        if f.is_one() {
            return RatFun { num, den };
        }
        RatFun {
            num: num.scale(&f),
            den: den.scale(&f),
        }
    }

    pub fn zero() -> Self {
        RatFun {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFun::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        RatFun::from_poly(MPoly::constant(c))
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFun::from_coprime(p, MPoly::one())
    }

    pub fn x() -> Self {
        RatFun::from_poly(MPoly::x())
    }

    pub fn y() -> Self {
        RatFun::from_poly(MPoly::y())
    }

    pub fn var(v: Var) -> Self {
        RatFun::from_poly(MPoly::var(v))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial itself when the denominator is constant.
    pub fn as_poly(&self) -> Option<MPoly> {
        let c = self.den.constant_value()?;
        Some(self.num.scale(&c.recip()))
    }

    pub fn constant_value(&self) -> Option<Q> {
        if !self.num.is_constant() {
            return None;
        }
        Some(self.num.coeff(0, 0) / self.den.constant_value()?)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.num.involves(v) || self.den.involves(v)
    }

    pub fn scale(&self, s: &Q) -> RatFun {
        if s.is_zero() {
            return RatFun::zero();
        }
        RatFun::normalize_units(self.num.scale(s), self.den.clone())
    }

    pub fn recip(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RatFun::normalize_units(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i32) -> Result<RatFun> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(RatFun::normalize_units(base.num.pow(e), base.den.pow(e)))
    }

    pub fn swap_vars(&self) -> RatFun {
        RatFun::normalize_units(self.num.swap_vars(), self.den.swap_vars())
    }

    /// Substitutes a constant for one variable.
    pub fn subs(&self, v: Var, val: &Q) -> Result<RatFun> {
        let n = MPoly::from_upoly(&self.num.eval_var(v, val), v.other());
        let d = MPoly::from_upoly(&self.den.eval_var(v, val), v.other());
        if d.is_zero() {
            return Err(Error::PoleAtValue);
        }
        RatFun::new(n, d)
    }

    pub fn eval(&self, x: &Q, y: &Q) -> Result<Q> {
        let d = self.den.eval(x, y);
        if d.is_zero() {
            return Err(Error::PoleAtValue);
        }
        Ok(self.num.eval(x, y) / d)
    }

    /// Multiplicity of `v - 1` in the denominator.
    pub fn pole_order_at_one(&self, v: Var) -> u32 {
        self.den.split_one(v).0
    }

    /// Coefficients of `x^i y^j`, `0 <= i <= imax`, `0 <= j <= jmax`, indexed `[i][j]`.
    pub fn series_coeffs(&self, imax: usize, jmax: usize) -> Result<Vec<Vec<Q>>> {
        let d00 = self.den.coeff(0, 0);
        if d00.is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        let inv = d00.recip();
        let mut h = vec![vec![Q::zero(); jmax + 1]; imax + 1];
        let den_terms: Vec<((usize, usize), Q)> = self
            .den
            .terms()
            .filter(|(e, _)| **e != (0, 0))
            .map(|(&(a, b), c)| ((a as usize, b as usize), c.clone()))
            .collect();
        for (&(a, b), c) in self.num.terms() {
            let (a, b) = (a as usize, b as usize);
            if a <= imax && b <= jmax {
                h[a][b] = c.clone();
            }
        }
        // den * h = num, solved cell by cell in increasing (i, j)
        for i in 0..=imax {
            for j in 0..=jmax {
                let mut acc = std::mem::take(&mut h[i][j]);
                for ((a, b), c) in &den_terms {
                    if *a <= i && *b <= j {
                        let prev = &h[i - a][j - b];
                        if !prev.is_zero() {
                            acc -= c * prev;
                        }
                    }
                }
                h[i][j] = acc * &inv;
            }
        }
        Ok(h)
    }

    /// Univariate series in `v` of the function restricted to `other = 0`.
    pub fn axis_series(&self, v: Var, order: usize) -> Result<Vec<Q>> {
        let r = self.subs(v.other(), &Q::zero())?;
        let s = match v {
            Var::X => r
                .series_coeffs(order, 0)?
                .into_iter()
                .map(|row| row[0].clone())
                .collect(),
            Var::Y => r.series_coeffs(0, order)?.swap_remove(0),
        };
        Ok(s)
    }

    /// Univariate view in `v`, if the function does not involve the other variable.
    pub fn as_univariate(&self, v: Var) -> Option<URatFun> {
        let n = self.num.as_upoly(v)?;
        let d = self.den.as_upoly(v)?;
        Some(URatFun::from_coprime(n, d))
    }

    pub fn from_univariate(f: &URatFun, v: Var) -> RatFun {
        RatFun::from_coprime(MPoly::from_upoly(&f.num, v), MPoly::from_upoly(&f.den, v))
    }

    pub fn derivative(&self, v: Var) -> RatFun {
        let n = &(&self.num.derivative(v) * &self.den) - &(&self.num * &self.den.derivative(v));
        RatFun::new(n, self.den.pow(2)).unwrap()
    }

    pub fn to_text(&self, names: [&str; 2]) -> String {
        if self.den.is_one_poly() {
            return self.num.to_text(names);
        }
        format!(
            "({})/({})",
            self.num.to_text(names),
            self.den.to_text(names)
        )
    }
}

impl MPoly {
    pub(crate) fn is_one_poly(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFun::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        if let (Some(a), Some(b)) = (self.den.constant_value(), o.den.constant_value()) {
            let n = &self.num.scale(&b) + &o.num.scale(&a);
            return RatFun::from_coprime(n, MPoly::constant(a * b));
        }
        let g = gcd(&self.den, &o.den);
        let d1 = self.den.exact_div(&g).unwrap();
        let d2 = o.den.exact_div(&g).unwrap();
        let n = &(&self.num * &d2) + &(&o.num * &d1);
        let d = &self.den * &d2;
        // only factors of g can cancel
        let h = gcd(&n, &g);
        if h.is_constant() {
            RatFun::from_coprime(n, d)
        } else {
            RatFun::from_coprime(n.exact_div(&h).unwrap(), d.exact_div(&h).unwrap())
        }
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let cut = |p: &MPoly, g: &MPoly| {
            if g.is_constant() {
                p.clone()
            } else {
                p.exact_div(g).unwrap()
            }
        };
        let n = &cut(&self.num, &g1) * &cut(&o.num, &g2);
        let d = &cut(&self.den, &g2) * &cut(&o.den, &g1);
        RatFun::from_coprime(n, d)
    }
}

impl Div for &RatFun {
    type Output = Result<RatFun>;
    fn div(self, o: &RatFun) -> Result<RatFun> {
        Ok(self * &o.recip()?)
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(RatFun);
owned_ops!(URatFun);

/// Univariate rational function with monic denominator, gcd-reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct URatFun {
    num: UPoly,
    den: UPoly,
}

impl fmt::Debug for URatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

impl URatFun {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let g = UPoly::gcd(&num, &den);
        if g.is_one() {
            return Ok(URatFun::from_coprime(num, den));
        }
        Ok(URatFun::from_coprime(
            num.exact_div(&g).unwrap(),
            den.exact_div(&g).unwrap(),
        ))
    }

    pub(crate) fn from_coprime(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return URatFun::zero();
        }
        let l = den.lc();
        if l.is_one() {
            return URatFun { num, den };
        }
        let inv = l.recip();
        URatFun {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        URatFun {
            num: UPoly::zero(),
            den: UPoly::one(),
        }
    }

    pub fn one() -> Self {
        URatFun::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        URatFun::from_poly(UPoly::constant(c))
    }

    pub fn from_poly(p: UPoly) -> Self {
        URatFun {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn var() -> Self {
        URatFun::from_poly(UPoly::monomial(q(1), 1))
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, s: &Q) -> URatFun {
        URatFun::from_coprime(self.num.scale(s), self.den.clone())
    }

    pub fn recip(&self) -> Result<URatFun> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(URatFun::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn eval(&self, t: &Q) -> Result<Q> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Err(Error::PoleAtValue);
        }
        Ok(self.num.eval(t) / d)
    }
}

impl Add for &URatFun {
    type Output = URatFun;
    fn add(self, o: &URatFun) -> URatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return URatFun::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        let g = UPoly::gcd(&self.den, &o.den);
        let d1 = self.den.exact_div(&g).unwrap();
        let d2 = o.den.exact_div(&g).unwrap();
        let n = &(&self.num * &d2) + &(&o.num * &d1);
        let d = &self.den * &d2;
        let h = UPoly::gcd(&n, &g);
        if h.is_one() {
            URatFun::from_coprime(n, d)
        } else {
            URatFun::from_coprime(n.exact_div(&h).unwrap(), d.exact_div(&h).unwrap())
        }
    }
}

impl Neg for &URatFun {
    type Output = URatFun;
    fn neg(self) -> URatFun {
        URatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &URatFun {
    type Output = URatFun;
    fn sub(self, o: &URatFun) -> URatFun {
        self + &(-o)
    }
}

impl Mul for &URatFun {
    type Output = URatFun;
    fn mul(self, o: &URatFun) -> URatFun {
        if self.is_zero() || o.is_zero() {
            return URatFun::zero();
        }
        let g1 = UPoly::gcd(&self.num, &o.den);
        let g2 = UPoly::gcd(&o.num, &self.den);
        let n = &self.num.exact_div(&g1).unwrap() * &o.num.exact_div(&g2).unwrap();
        let d = &self.den.exact_div(&g2).unwrap() * &o.den.exact_div(&g1).unwrap();
        URatFun::from_coprime(n, d)
    }
}

impl Div for &URatFun {
    type Output = Result<URatFun>;
    fn div(self, o: &URatFun) -> Result<URatFun> {
        Ok(self * &o.recip()?)
    }
}
