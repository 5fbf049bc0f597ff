use std::cmp::Ordering;

use num_traits::{One, Signed};

use super::kernel::Kernel;
use crate::error::{Error, Result};
use crate::exactalg::{fmt_q, NumElem, QuadField, UPoly, Q};

/// A real branch point: rational, a quadratic surd, or infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchPoint {
    Rational(Q),
    Surd(NumElem),
    Infinity,
}

impl BranchPoint {
    pub fn approx(&self) -> f64 {
        match self {
            BranchPoint::Rational(r) => crate::exactalg::rational::to_f64(r),
            BranchPoint::Surd(e) => e.to_complex().0,
            BranchPoint::Infinity => f64::INFINITY,
        }
    }

    fn cmp_q(&self, c: &Q) -> Ordering {
        match self {
            BranchPoint::Rational(r) => r.cmp(c),
            BranchPoint::Surd(e) => e.cmp_rational(c).expect("real surd"),
            BranchPoint::Infinity => Ordering::Greater,
        }
    }

    fn abs_le_one(&self) -> bool {
        let one = Q::one();
        self.cmp_q(&-&one) != Ordering::Less && self.cmp_q(&one) != Ordering::Greater
    }

    pub fn to_text(&self) -> String {
        match self {
            BranchPoint::Rational(r) => fmt_q(r),
            BranchPoint::Surd(e) => e.to_text(),
            BranchPoint::Infinity => "inf".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchData {
    pub d: UPoly,
    /// `d / (y - 1)^2`
    pub residual: UPoly,
    pub y1: BranchPoint,
    pub y4: BranchPoint,
    pub double_root_at_one: bool,
}

impl BranchData {
    /// `y1` in `[-1, 1)` and `y4` in `(1, inf) u (-inf, -1]` or infinite.
    pub fn intervals_ok(&self) -> bool {
        let one = Q::one();
        let y1_ok =
            self.y1.cmp_q(&-&one) != Ordering::Less && self.y1.cmp_q(&one) == Ordering::Less;
        let y4_ok = match &self.y4 {
            BranchPoint::Infinity => true,
            p => p.cmp_q(&one) == Ordering::Greater || p.cmp_q(&-&one) != Ordering::Greater,
        };
        y1_ok && y4_ok
    }
}

pub fn branch_points(k: &Kernel) -> Result<BranchData> {
    let d = k.discriminant_y();
    let (mult, residual) = d.split_root(&Q::one());
    if mult < 2 {
        return Err(Error::DoubleRootMissing);
    }
    let residual = if mult > 2 {
        &residual * &UPoly::linear_root(&Q::one()).pow(mult - 2)
    } else {
        residual
    };
    let mut roots = roots_of(&residual)?;
    while roots.len() < 2 {
        roots.push(BranchPoint::Infinity);
    }
    // y1 is the root inside [-1, 1]
    let (y1, y4) = if roots[0].abs_le_one() || !roots[1].abs_le_one() {
        (roots[0].clone(), roots[1].clone())
    } else {
        (roots[1].clone(), roots[0].clone())
    };
    Ok(BranchData {
        d,
        residual,
        y1,
        y4,
        double_root_at_one: true,
    })
}

/// Real roots of a polynomial of degree at most two, smaller first.
fn roots_of(p: &UPoly) -> Result<Vec<BranchPoint>> {
    match p.degree() {
        None | Some(0) => Ok(vec![]),
        Some(1) => Ok(vec![BranchPoint::Rational(-p.coeff(0) / p.coeff(1))]),
        Some(2) => {
            let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
            let disc = &b * &b - Q::from_integer(4.into()) * &a * &c;
            if disc.is_negative() {
                return Err(Error::Degenerate);
            }
            let two_a = Q::from_integer(2.into()) * &a;
            let mid = -&b / &two_a;
            let half = (&two_a).recip();
            match QuadField::sqrt(disc.clone()) {
                Ok(f) => {
                    // sqrt(disc) is irrational; order by the sign of 2a
                    let s = if a.is_positive() {
                        half.clone()
                    } else {
                        -half.clone()
                    };
                    let lo = NumElem::new(&f, mid.clone(), -s.clone());
                    let hi = NumElem::new(&f, mid, s);
                    Ok(vec![BranchPoint::Surd(lo), BranchPoint::Surd(hi)])
                }
                Err(_) => {
                    let r = Q::new(disc.numer().sqrt(), disc.denom().sqrt());
                    let mut v = [&mid - &r * &half, &mid + &r * &half];
                    v.sort();
                    Ok(v.into_iter().map(BranchPoint::Rational).collect())
                }
            }
        }
        Some(_) => Err(Error::Degenerate),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walkmodel::catalog;
    use num_traits::Zero;

    #[test]
    fn simple_walk_branch_points() {
        let w = catalog::walk("simple").unwrap();
        let b = branch_points(w.kernel()).unwrap();
        let want = UPoly::from_ints(&[1, -6, 1]).scale(&Q::new(1.into(), 16.into()));
        assert_eq!(b.residual, want);
        assert_eq!(b.y1.to_text(), "3 - 2*sqrt(2)");
        assert_eq!(b.y4.to_text(), "3 + 2*sqrt(2)");
        assert!((b.y1.approx() - 0.171_572_875).abs() < 1e-8);
        assert!(b.intervals_ok());
    }

    #[test]
    fn tandem_branch_points() {
        let w = catalog::walk("tandem").unwrap();
        let b = branch_points(w.kernel()).unwrap();
        assert_eq!(b.y1, BranchPoint::Rational(Q::zero()));
        assert_eq!(b.y4, BranchPoint::Rational(Q::from_integer(4.into())));
        assert!(b.intervals_ok());
    }
}
