//! Quadratic number fields `Q(c)`, `c^2 + p c + q = 0`, and polynomials over them.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::mpoly::{MPoly, Var};
use super::rational::{fmt_q, q, split_square, to_f64, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    p: Q,
    q: Q,
}

impl QuadField {
    /// Field generated by a root of `c^2 + p c + q`; the polynomial must be irreducible.
    pub fn new(p: Q, q: Q) -> Result<Arc<QuadField>> {
        let f = QuadField { p, q };
        if is_rational_square(&f.disc()) {
            return Err(Error::ExtensionDegenerate);
        }
        Ok(Arc::new(f))
    }

    /// `Q(sqrt d)` with generator `sqrt d`.
    pub fn sqrt(d: Q) -> Result<Arc<QuadField>> {
        QuadField::new(Q::zero(), -d)
    }

    pub fn coeffs(&self) -> (&Q, &Q) {
        (&self.p, &self.q)
    }

    pub fn disc(&self) -> Q {
        &self.p * &self.p - q(4) * &self.q
    }

    /// `disc = k^2 r` with `r` a square-free integer.
    fn disc_split(&self) -> (Q, BigInt) {
        let d = self.disc();
        // d = n/m = n m / m^2
        let nm = d.numer() * d.denom();
        let (s, r) = split_square(&nm, 100_000);
        (Q::new(s, d.denom().clone()), r)
    }
}

fn is_rational_square(x: &Q) -> bool {
    if x.is_negative() {
        return false;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    &n * &n == *x.numer() && &d * &d == *x.denom()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumElem {
    field: Arc<QuadField>,
    a: Q,
    b: Q,
}

impl fmt::Debug for NumElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl NumElem {
    pub fn new(field: &Arc<QuadField>, a: Q, b: Q) -> Self {
        NumElem {
            field: field.clone(),
            a,
            b,
        }
    }

    pub fn rational(field: &Arc<QuadField>, a: Q) -> Self {
        NumElem::new(field, a, Q::zero())
    }

    pub fn gen(field: &Arc<QuadField>) -> Self {
        NumElem::new(field, Q::zero(), Q::one())
    }

    pub fn field(&self) -> &Arc<QuadField> {
        &self.field
    }

    /// Components of `a + b c`.
    pub fn parts(&self) -> (&Q, &Q) {
        (&self.a, &self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<Q> {
        self.is_rational().then(|| self.a.clone())
    }

    fn check(&self, o: &NumElem) {
        assert!(
            Arc::ptr_eq(&self.field, &o.field) || self.field == o.field,
            "number field elements from different fields"
        );
    }

    pub fn add(&self, o: &NumElem) -> NumElem {
        self.check(o);
        NumElem::new(&self.field, &self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &NumElem) -> NumElem {
        self.check(o);
        NumElem::new(&self.field, &self.a - &o.a, &self.b - &o.b)
    }

    pub fn neg(&self) -> NumElem {
        NumElem::new(&self.field, -&self.a, -&self.b)
    }

    pub fn scale(&self, s: &Q) -> NumElem {
        NumElem::new(&self.field, &self.a * s, &self.b * s)
    }

    pub fn mul(&self, o: &NumElem) -> NumElem {
        self.check(o);
        // c^2 = -p c - q
        let bb = &self.b * &o.b;
        let a = &self.a * &o.a - &bb * &self.field.q;
        let b = &self.a * &o.b + &self.b * &o.a - &bb * &self.field.p;
        NumElem::new(&self.field, a, b)
    }

    /// The other root: `c -> -p - c`.
    pub fn conj(&self) -> NumElem {
        NumElem::new(&self.field, &self.a - &self.b * &self.field.p, -&self.b)
    }

    pub fn norm(&self) -> Q {
        let f = &self.field;
        &self.a * &self.a - &self.a * &self.b * &f.p + &self.b * &self.b * &f.q
    }

    pub fn inv(&self) -> Result<NumElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroElement);
        }
        let n = self.norm().recip();
        Ok(self.conj().scale(&n))
    }

    pub fn div(&self, o: &NumElem) -> Result<NumElem> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<NumElem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut r = NumElem::rational(&self.field, Q::one());
        for _ in 0..e.unsigned_abs() {
            r = r.mul(&base);
        }
        Ok(r)
    }

    /// `(u, v, r)` with `self = u + v sqrt(r)`, `r` square-free.
    pub fn surd_form(&self) -> (Q, Q, BigInt) {
        // c = (-p + sqrt(disc))/2 = (-p + k sqrt r)/2
        let (k, r) = self.field.disc_split();
        let u = &self.a - &self.b * &self.field.p / q(2);
        let v = &self.b * k / q(2);
        (u, v, r)
    }

    /// Approximate value as `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let (u, v, r) = self.surd_form();
        let rf = to_f64(&Q::from_integer(r.abs()));
        let root = rf.sqrt() * to_f64(&v);
        if r.is_negative() {
            (to_f64(&u), root)
        } else {
            (to_f64(&u) + root, 0.0)
        }
    }

    /// Exact sign comparison against a rational, for real fields.
    pub fn cmp_rational(&self, c: &Q) -> Option<Ordering> {
        let (u, v, r) = self.surd_form();
        if r.is_negative() && !v.is_zero() {
            return None;
        }
        let x = u - c;
        let r = Q::from_integer(r);
        // sign of x + v sqrt(r)
        let sx = x.cmp(&Q::zero());
        let sv = v.cmp(&Q::zero());
        if sv == Ordering::Equal || sx == sv {
            return Some(if sx == Ordering::Equal { sv } else { sx });
        }
        if sx == Ordering::Equal {
            return Some(sv);
        }
        let lhs = &x * &x;
        let rhs = &v * &v * r;
        Some(match lhs.cmp(&rhs) {
            Ordering::Greater => sx,
            Ordering::Less => sv,
            Ordering::Equal => Ordering::Equal,
        })
    }

    /// Text like `1/2 + 1/2*i*sqrt(3)` or `3 - 2*sqrt(2)`.
    pub fn to_text(&self) -> String {
        let (u, v, r) = self.surd_form();
        if v.is_zero() {
            return fmt_q(&u);
        }
        let root = if r.is_negative() {
            if r == BigInt::from(-1) {
                "i".to_string()
            } else {
                format!("i*sqrt({})", -r)
            }
        } else {
            format!("sqrt({r})")
        };
        let vt = if v.abs().is_one() {
            root
        } else {
            format!("{}*{}", fmt_q(&v.abs()), root)
        };
        let sign = if v.is_negative() { "-" } else { "+" };
        if u.is_zero() {
            if v.is_negative() {
                format!("-{vt}")
            } else {
                vt
            }
        } else {
            format!("{} {} {}", fmt_q(&u), sign, vt)
        }
    }
}

/// `P0 + c P1` with rational bivariate `P0`, `P1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CPoly {
    field: Arc<QuadField>,
    p0: MPoly,
    p1: MPoly,
}

impl fmt::Debug for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) + c*({:?})", self.p0, self.p1)
    }
}

impl CPoly {
    pub fn new(field: &Arc<QuadField>, p0: MPoly, p1: MPoly) -> Self {
        CPoly {
            field: field.clone(),
            p0,
            p1,
        }
    }

    pub fn real(field: &Arc<QuadField>, p: MPoly) -> Self {
        CPoly::new(field, p, MPoly::zero())
    }

    pub fn monomial(c: &NumElem, i: u32, j: u32) -> Self {
        CPoly::new(
            c.field(),
            MPoly::monomial(c.a.clone(), i, j),
            MPoly::monomial(c.b.clone(), i, j),
        )
    }

    pub fn field(&self) -> &Arc<QuadField> {
        &self.field
    }

    pub fn parts(&self) -> (&MPoly, &MPoly) {
        (&self.p0, &self.p1)
    }

    pub fn is_zero(&self) -> bool {
        self.p0.is_zero() && self.p1.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.p1.is_zero()
    }

    pub fn as_real(&self) -> Option<&MPoly> {
        self.is_real().then_some(&self.p0)
    }

    pub fn coeff(&self, i: u32, j: u32) -> NumElem {
        NumElem::new(&self.field, self.p0.coeff(i, j), self.p1.coeff(i, j))
    }

    /// Exponents carrying a nonzero coefficient.
    pub fn support(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = self
            .p0
            .terms()
            .chain(self.p1.terms())
            .map(|(e, _)| *e)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn add(&self, o: &CPoly) -> CPoly {
        CPoly::new(&self.field, &self.p0 + &o.p0, &self.p1 + &o.p1)
    }

    pub fn sub(&self, o: &CPoly) -> CPoly {
        CPoly::new(&self.field, &self.p0 - &o.p0, &self.p1 - &o.p1)
    }

    pub fn mul_poly(&self, m: &MPoly) -> CPoly {
        CPoly::new(&self.field, &self.p0 * m, &self.p1 * m)
    }

    pub fn mul_elem(&self, c: &NumElem) -> CPoly {
        // (P0 + c P1)(a + b c) = a P0 - q b P1 + c (b P0 + a P1 - p b P1)
        let (p, q) = (&self.field.p, &self.field.q);
        let p0 = &self.p0.scale(&c.a) - &self.p1.scale(&(&c.b * q));
        let p1 = &(&self.p0.scale(&c.b) + &self.p1.scale(&c.a)) - &self.p1.scale(&(&c.b * p));
        CPoly::new(&self.field, p0, p1)
    }

    pub fn shift(&self, di: u32, dj: u32) -> CPoly {
        CPoly::new(&self.field, self.p0.shift(di, dj), self.p1.shift(di, dj))
    }

    pub fn unshift(&self, di: u32, dj: u32) -> CPoly {
        CPoly::new(
            &self.field,
            self.p0.unshift(di, dj),
            self.p1.unshift(di, dj),
        )
    }

    pub fn min_exponents(&self) -> (u32, u32) {
        match (self.p0.is_zero(), self.p1.is_zero()) {
            (true, true) => (0, 0),
            (false, true) => self.p0.min_exponents(),
            (true, false) => self.p1.min_exponents(),
            (false, false) => {
                let (a, b) = self.p0.min_exponents();
                let (c, d) = self.p1.min_exponents();
                (a.min(c), b.min(d))
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.support().into_iter().map(|(i, j)| i + j);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.p0.total_degree().max(self.p1.total_degree())
    }

    /// Exact division by a rational polynomial, componentwise.
    pub fn exact_div(&self, d: &MPoly) -> Option<CPoly> {
        Some(CPoly::new(
            &self.field,
            self.p0.exact_div(d)?,
            self.p1.exact_div(d)?,
        ))
    }

    /// Substitutes `x = e y`; returns the coefficients of `y^n`, keyed by `n`.
    pub fn subs_x_linear(&self, e: &NumElem) -> Vec<(u32, NumElem)> {
        let mut map: std::collections::BTreeMap<u32, NumElem> = Default::default();
        let mut pw = vec![NumElem::rational(&self.field, Q::one())];
        for (i, j) in self.support() {
            while pw.len() <= i as usize {
                let next = pw.last().unwrap().mul(e);
                pw.push(next);
            }
            let term = self.coeff(i, j).mul(&pw[i as usize]);
            let slot = map
                .entry(i + j)
                .or_insert_with(|| NumElem::rational(&self.field, Q::zero()));
            *slot = slot.add(&term);
        }
        map.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    pub fn derivative(&self, v: Var) -> CPoly {
        CPoly::new(&self.field, self.p0.derivative(v), self.p1.derivative(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::qf;

    #[test]
    fn sixth_roots_of_unity() {
        // c^2 - c + 1: c = (1 + i sqrt 3)/2
        let f = QuadField::new(q(-1), q(1)).unwrap();
        let c = NumElem::gen(&f);
        assert_eq!(c.to_text(), "1/2 + 1/2*i*sqrt(3)");
        assert_eq!(c.pow(3).unwrap(), NumElem::rational(&f, q(-1)));
        assert_eq!(c.mul(&c.conj()).as_rational(), Some(q(1)));
        assert_eq!(c.pow(-1).unwrap().mul(&c), NumElem::rational(&f, q(1)));
    }

    #[test]
    fn real_surd_ordering() {
        let f = QuadField::sqrt(q(2)).unwrap();
        let y1 = NumElem::new(&f, q(3), q(-2));
        assert_eq!(y1.cmp_rational(&q(0)), Some(Ordering::Greater));
        assert_eq!(y1.cmp_rational(&qf(1, 5)), Some(Ordering::Less));
        assert_eq!(y1.to_text(), "3 - 2*sqrt(2)");
    }

    #[test]
    fn reducible_rejected() {
        assert!(QuadField::new(q(0), q(-4)).is_err());
    }
}
