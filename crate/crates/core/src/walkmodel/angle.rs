use num_traits::{One, Signed, Zero};

use super::model::StepModel;
use crate::exactalg::rational::to_f64;
use crate::exactalg::{fmt_q, NumElem, QuadField, Q};

/// Largest `m` tried when recognizing `theta = pi/m`.
pub const MAX_PI_OVER_THETA: u32 = 12;

/// `cos theta = sign * sqrt(cos_sq)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleData {
    pub cos_sq: Q,
    pub sign: i8,
    pub pi_over_theta: Option<u32>,
}

impl AngleData {
    pub fn cos_approx(&self) -> f64 {
        self.sign as f64 * to_f64(&self.cos_sq).sqrt()
    }

    pub fn theta_approx(&self) -> f64 {
        self.cos_approx().acos()
    }

    pub fn pi_over_theta_approx(&self) -> f64 {
        std::f64::consts::PI / self.theta_approx()
    }

    pub fn cos_text(&self) -> String {
        if self.sign == 0 {
            return "0".into();
        }
        let s = if self.sign < 0 { "-" } else { "" };
        match rational_sqrt(&self.cos_sq) {
            Some(r) => format!("{s}{}", fmt_q(&r)),
            None => format!("{s}sqrt({})", fmt_q(&self.cos_sq)),
        }
    }
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Q::new(n, d))
}

pub fn angle(model: &StepModel) -> AngleData {
    let (s11, s12, s22) = model.moments();
    let cos_sq = &s12 * &s12 / (&s11 * &s22);
    // cos theta = -s12 / sqrt(s11 s22)
    let sign = if s12.is_zero() {
        0
    } else if s12.is_positive() {
        -1
    } else {
        1
    };
    let mut a = AngleData {
        cos_sq,
        sign,
        pi_over_theta: None,
    };
    let m = a.pi_over_theta_approx().round();
    if (2.0..=MAX_PI_OVER_THETA as f64).contains(&m) && chebyshev_is_minus_one(&a, m as u32) {
        a.pi_over_theta = Some(m as u32);
    }
    a
}

/// Exact test of `T_m(cos theta) = -1`, i.e. `cos(m theta) = -1`.
fn chebyshev_is_minus_one(a: &AngleData, m: u32) -> bool {
    let minus_one = -Q::one();
    if let Some(r) = rational_sqrt(&a.cos_sq) {
        let c = r * Q::from_integer(a.sign.into());
        let (mut t0, mut t1) = (Q::one(), c.clone());
        for _ in 1..m {
            let t2 = Q::from_integer(2.into()) * &c * &t1 - &t0;
            t0 = t1;
            t1 = t2;
        }
        return t1 == minus_one;
    }
    let f = QuadField::sqrt(a.cos_sq.clone()).expect("non-square");
    let c = NumElem::gen(&f).scale(&Q::from_integer(a.sign.into()));
    let two_c = c.scale(&Q::from_integer(2.into()));
    let mut t0 = NumElem::rational(&f, Q::one());
    let mut t1 = c;
    for _ in 1..m {
        let t2 = two_c.mul(&t1).sub(&t0);
        t0 = t1;
        t1 = t2;
    }
    t1 == NumElem::rational(&f, minus_one)
}
