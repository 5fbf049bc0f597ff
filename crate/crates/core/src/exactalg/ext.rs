//! Quadratic extensions `K(s)` of a univariate rational function field `K = Q(t)`,
//! with `q2 s^2 + q1 s + q0 = 0`.
//!
//! Polynomial evaluation avoids per-step gcds: values are carried as
//! `(p0 + p1 sigma) / d` with `sigma = q2 s`, which is integral over `Q[t]`
//! (`sigma^2 + q1 sigma + q0 q2 = 0`), and reduced only at the end.

use std::sync::Arc;

use num_traits::Zero;

use super::mpoly::{MPoly, Var};
use super::ratfun::{RatFun, URatFun};
use super::rational::q;
use super::upoly::UPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    base: Var,
    q2: UPoly,
    q1: UPoly,
    q0: UPoly,
}

impl QuadExt {
    pub fn new(base: Var, q2: UPoly, q1: UPoly, q0: UPoly) -> Result<Arc<QuadExt>> {
        if q2.is_zero() {
            return Err(Error::ExtensionDegenerate);
        }
        let disc = &(&q1 * &q1) - &(&q2 * &q0).scale(&q(4));
        if disc.sqrt_exact().is_some() {
            return Err(Error::ExtensionDegenerate);
        }
        Ok(Arc::new(QuadExt { base, q2, q1, q0 }))
    }

    pub fn base(&self) -> Var {
        self.base
    }

    pub fn min_poly(&self) -> (&UPoly, &UPoly, &UPoly) {
        (&self.q2, &self.q1, &self.q0)
    }

    pub fn discriminant(&self) -> UPoly {
        &(&self.q1 * &self.q1) - &(&self.q2 * &self.q0).scale(&q(4))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElem {
    ext: Arc<QuadExt>,
    a: URatFun,
    b: URatFun,
}

impl ExtElem {
    pub fn new(ext: &Arc<QuadExt>, a: URatFun, b: URatFun) -> Self {
        ExtElem {
            ext: ext.clone(),
            a,
            b,
        }
    }

    pub fn from_base(ext: &Arc<QuadExt>, a: URatFun) -> Self {
        ExtElem::new(ext, a, URatFun::zero())
    }

    /// The root `s` itself.
    pub fn gen(ext: &Arc<QuadExt>) -> Self {
        ExtElem::new(ext, URatFun::zero(), URatFun::one())
    }

    /// The base variable `t`.
    pub fn base_var(ext: &Arc<QuadExt>) -> Self {
        ExtElem::from_base(ext, URatFun::var())
    }

    pub fn ext(&self) -> &Arc<QuadExt> {
        &self.ext
    }

    pub fn a(&self) -> &URatFun {
        &self.a
    }

    /// The `s`-component.
    pub fn b(&self) -> &URatFun {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn as_base(&self) -> Option<&URatFun> {
        self.b.is_zero().then_some(&self.a)
    }

    fn same(&self, o: &ExtElem) -> Result<()> {
        if Arc::ptr_eq(&self.ext, &o.ext) || self.ext == o.ext {
            Ok(())
        } else {
            Err(Error::MixedExtensions)
        }
    }

    /// `q1 / q2` and `q0 / q2` as base-field elements.
    fn ratios(&self) -> Result<(URatFun, URatFun)> {
        let e = &self.ext;
        Ok((
            URatFun::new(e.q1.clone(), e.q2.clone())?,
            URatFun::new(e.q0.clone(), e.q2.clone())?,
        ))
    }

    pub fn add(&self, o: &ExtElem) -> Result<ExtElem> {
        self.same(o)?;
        Ok(ExtElem::new(&self.ext, &self.a + &o.a, &self.b + &o.b))
    }

    pub fn sub(&self, o: &ExtElem) -> Result<ExtElem> {
        self.same(o)?;
        Ok(ExtElem::new(&self.ext, &self.a - &o.a, &self.b - &o.b))
    }

    pub fn neg(&self) -> ExtElem {
        ExtElem::new(&self.ext, -&self.a, -&self.b)
    }

    pub fn mul(&self, o: &ExtElem) -> Result<ExtElem> {
        self.same(o)?;
        if self.b.is_zero() {
            return Ok(ExtElem::new(&self.ext, &self.a * &o.a, &self.a * &o.b));
        }
        if o.b.is_zero() {
            return Ok(ExtElem::new(&self.ext, &self.a * &o.a, &self.b * &o.a));
        }
        // s^2 = -(q1 s + q0)/q2
        let (r1, r0) = self.ratios()?;
        let bb = &self.b * &o.b;
        let a = &(&self.a * &o.a) - &(&bb * &r0);
        let b = &(&(&self.a * &o.b) + &(&self.b * &o.a)) - &(&bb * &r1);
        Ok(ExtElem::new(&self.ext, a, b))
    }

    /// `A + B sbar` with `sbar = -q1/q2 - s`.
    pub fn conj(&self) -> Result<ExtElem> {
        let (r1, _) = self.ratios()?;
        Ok(ExtElem::new(
            &self.ext,
            &self.a - &(&self.b * &r1),
            -&self.b,
        ))
    }

    pub fn norm(&self) -> Result<URatFun> {
        let (r1, r0) = self.ratios()?;
        let a2 = &self.a * &self.a;
        let ab = &(&self.a * &self.b) * &r1;
        let b2 = &(&self.b * &self.b) * &r0;
        Ok(&(&a2 - &ab) + &b2)
    }

    pub fn trace(&self) -> Result<URatFun> {
        let (r1, _) = self.ratios()?;
        Ok(&self.a.scale(&q(2)) - &(&self.b * &r1))
    }

    pub fn inv(&self) -> Result<ExtElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroElement);
        }
        if self.b.is_zero() {
            return Ok(ExtElem::from_base(&self.ext, self.a.recip()?));
        }
        let n = self.norm()?;
        let ninv = n.recip().map_err(|_| Error::ExtensionDegenerate)?;
        let c = self.conj()?;
        Ok(ExtElem::new(&self.ext, &c.a * &ninv, &c.b * &ninv))
    }

    pub fn div(&self, o: &ExtElem) -> Result<ExtElem> {
        self.same(o)?;
        self.mul(&o.inv()?)
    }

    /// Evaluates a polynomial of the base variable at this element.
    pub fn eval_upoly(&self, p: &UPoly) -> ExtElem {
        let f = Form::from_elem(self);
        let mut acc = Form::zero();
        for c in p.coeffs().iter().rev() {
            acc = acc
                .mul(&f, &self.ext)
                .add(&Form::constant(UPoly::constant(c.clone())));
        }
        acc.to_elem(&self.ext)
    }

    pub fn eval_urat(&self, f: &URatFun) -> Result<ExtElem> {
        let n = self.eval_upoly(f.num());
        let d = self.eval_upoly(f.den());
        if d.is_zero() {
            return Err(Error::PoleAtValue);
        }
        n.div(&d)
    }
}

/// `(p0 + p1 sigma) / d`.
#[derive(Clone, Debug)]
struct Form {
    p0: UPoly,
    p1: UPoly,
    d: UPoly,
}

impl Form {
    fn zero() -> Form {
        Form::constant(UPoly::zero())
    }

    fn constant(p: UPoly) -> Form {
        Form {
            p0: p,
            p1: UPoly::zero(),
            d: UPoly::one(),
        }
    }

    fn from_elem(e: &ExtElem) -> Form {
        let q2 = &e.ext.q2;
        if e.b.is_zero() {
            return Form {
                p0: e.a.num().clone(),
                p1: UPoly::zero(),
                d: e.a.den().clone(),
            };
        }
        // B s = (B/q2) sigma
        let bd = e.b.den() * q2;
        if e.a.is_zero() {
            return Form {
                p0: UPoly::zero(),
                p1: e.b.num().clone(),
                d: bd,
            };
        }
        let g = UPoly::gcd(e.a.den(), &bd);
        let fa = bd.exact_div(&g).unwrap();
        let fb = e.a.den().exact_div(&g).unwrap();
        Form {
            p0: e.a.num() * &fa,
            p1: e.b.num() * &fb,
            d: e.a.den() * &fa,
        }
    }

    fn is_zero(&self) -> bool {
        self.p0.is_zero() && self.p1.is_zero()
    }

    fn add(&self, o: &Form) -> Form {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.d == o.d {
            return Form {
                p0: &self.p0 + &o.p0,
                p1: &self.p1 + &o.p1,
                d: self.d.clone(),
            };
        }
        Form {
            p0: &(&self.p0 * &o.d) + &(&o.p0 * &self.d),
            p1: &(&self.p1 * &o.d) + &(&o.p1 * &self.d),
            d: &self.d * &o.d,
        }
    }

    fn mul(&self, o: &Form, ext: &QuadExt) -> Form {
        if self.is_zero() || o.is_zero() {
            return Form::zero();
        }
        let pp = &self.p1 * &o.p1;
        let (p0, p1) = if pp.is_zero() {
            (&self.p0 * &o.p0, &(&self.p0 * &o.p1) + &(&self.p1 * &o.p0))
        } else {
            // sigma^2 = -q1 sigma - q0 q2
            (
                &(&self.p0 * &o.p0) - &(&pp * &(&ext.q0 * &ext.q2)),
                &(&(&self.p0 * &o.p1) + &(&self.p1 * &o.p0)) - &(&pp * &ext.q1),
            )
        };
        Form {
            p0,
            p1,
            d: &self.d * &o.d,
        }
    }

    fn mul_poly(&self, p: &UPoly) -> Form {
        Form {
            p0: &self.p0 * p,
            p1: &self.p1 * p,
            d: self.d.clone(),
        }
    }

    /// `self / o` via the conjugate `p0 - q1 p1 - p1 sigma` of the divisor.
    fn div(&self, o: &Form, ext: &QuadExt) -> Result<Form> {
        if o.is_zero() {
            return Err(Error::PoleAtValue);
        }
        let cj = Form {
            p0: &o.p0 - &(&ext.q1 * &o.p1),
            p1: -&o.p1,
            d: UPoly::one(),
        };
        let norm = &(&(&o.p0 * &o.p0) - &(&(&ext.q1 * &o.p0) * &o.p1))
            + &(&(&ext.q0 * &ext.q2) * &(&o.p1 * &o.p1));
        if norm.is_zero() {
            return Err(Error::ExtensionDegenerate);
        }
        let mut r = self.mul(&cj, ext).mul_poly(&o.d);
        r.d = &r.d * &norm;
        Ok(r)
    }

    fn to_elem(&self, ext: &Arc<QuadExt>) -> ExtElem {
        let a = URatFun::new(self.p0.clone(), self.d.clone()).unwrap();
        let b = URatFun::new(&self.p1 * &ext.q2, self.d.clone()).unwrap();
        ExtElem::new(ext, a, b)
    }
}

/// Horner evaluation of `p(x, y)` with both coordinates given as forms.
fn eval_mpoly_form(p: &MPoly, x: &Form, y: &Form, ext: &QuadExt) -> Form {
    let dx = p.degree(Var::X) as usize;
    let dy = p.degree(Var::Y) as usize;
    let xn = Form {
        d: UPoly::one(),
        ..x.clone()
    };
    let yn = Form {
        d: UPoly::one(),
        ..y.clone()
    };
    let powers = |f: &Form, n: usize| {
        let mut v = vec![Form::constant(UPoly::one())];
        for i in 0..n {
            let next = v[i].mul(f, ext);
            v.push(next);
        }
        v
    };
    let xp = powers(&xn, dx);
    let yp = powers(&yn, dy);
    let dxp: Vec<UPoly> = (0..=dx).map(|i| x.d.pow(i as u32)).collect();
    let dyp: Vec<UPoly> = (0..=dy).map(|i| y.d.pow(i as u32)).collect();
    // sum c_ij X^i dx^(DX-i) Y^j dy^(DY-j), all over dx^DX dy^DY
    let mut acc = Form::zero();
    for (i, row) in p.coeffs_in(Var::X).iter().enumerate() {
        let mut inner = Form::zero();
        for (j, c) in row.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = yp[j].mul_poly(&dyp[dy - j].scale(c));
            inner = inner.add(&t);
        }
        if inner.is_zero() {
            continue;
        }
        let t = inner.mul(&xp[i], ext).mul_poly(&dxp[dx - i]);
        acc = acc.add(&t);
    }
    acc.d = &dxp[dx] * &dyp[dy];
    acc
}

/// Evaluates `f(x, y)` at a point of the extension.
pub fn eval_ratfun_at(f: &RatFun, x: &ExtElem, y: &ExtElem) -> Result<ExtElem> {
    x.same(y)?;
    let ext = &x.ext;
    let fx = Form::from_elem(x);
    let fy = Form::from_elem(y);
    let n = eval_mpoly_form(f.num(), &fx, &fy, ext);
    let d = eval_mpoly_form(f.den(), &fx, &fy, ext);
    if d.is_zero() {
        return Err(Error::PoleAtValue);
    }
    Ok(n.div(&d, ext)?.to_elem(ext))
}

/// Evaluates `f` with `var := value`; any other variable of `f` must be the
/// base variable of the extension.
pub fn eval_ratfun_at_ext(f: &RatFun, var: Var, value: &ExtElem) -> Result<ExtElem> {
    let ext = value.ext();
    let other = var.other();
    if f.involves(other) && ext.base() != other {
        return Err(Error::MixedExtensions);
    }
    let t = ExtElem::base_var(ext);
    match var {
        Var::X => eval_ratfun_at(f, value, &t),
        Var::Y => eval_ratfun_at(f, &t, value),
    }
}
