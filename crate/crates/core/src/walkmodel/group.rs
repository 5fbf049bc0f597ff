//! The group generated by the root-swapping involutions, and orbit sums.

use std::sync::Arc;

use super::kernel::Kernel;
use crate::error::{Error, Result};
use crate::exactalg::{eval_ratfun_at, ExtElem, MPoly, QuadExt, RatFun, URatFun, Var};

pub const DEFAULT_GROUP_CAP: usize = 16;

/// A point `(xi, eta)` of the kernel curve over `L = Q(x)[Y]/(a Y^2 + b Y + c)`.
pub type Point = (ExtElem, ExtElem);

#[derive(Clone, Debug)]
pub struct GroupData {
    ext: Arc<QuadExt>,
    /// `p_0 = (x, Y)`, `p_1 = Psi p_0`, `p_2 = Phi p_1`, ...; `p_i` has sign `(-1)^i`
    orbit: Vec<Point>,
    kernel: Kernel,
}

impl GroupData {
    pub fn order(&self) -> usize {
        self.orbit.len()
    }

    /// Half the order: `Theta = Phi Psi` has order `n`.
    pub fn n(&self) -> usize {
        self.orbit.len() / 2
    }

    pub fn orbit(&self) -> &[Point] {
        &self.orbit
    }

    pub fn ext(&self) -> &Arc<QuadExt> {
        &self.ext
    }

    pub fn psi(&self, p: &Point) -> Result<Point> {
        psi(&self.kernel, p)
    }

    pub fn phi(&self, p: &Point) -> Result<Point> {
        phi(&self.kernel, p)
    }

    /// x-coordinate of `Theta^i (x, Y)`.
    pub fn theta_x(&self, i: usize) -> &ExtElem {
        &self.orbit[(2 * i) % self.orbit.len()].0
    }
}

/// `(xi, eta) -> (xi, c(xi) / (a(xi) eta))`.
pub fn psi(k: &Kernel, (xi, eta): &Point) -> Result<Point> {
    let (a, _, c) = k.in_y();
    let num = xi.eval_upoly(c);
    let den = xi.eval_upoly(a).mul(eta)?;
    Ok((xi.clone(), num.div(&den)?))
}

/// `(xi, eta) -> (c~(eta) / (a~(eta) xi), eta)`.
pub fn phi(k: &Kernel, (xi, eta): &Point) -> Result<Point> {
    let (at, _, ct) = k.in_x();
    let num = eta.eval_upoly(ct);
    let den = eta.eval_upoly(at).mul(xi)?;
    Ok((num.div(&den)?, eta.clone()))
}

/// Function field of the kernel curve, generated by `Y` over `Q(x)`.
pub fn curve_field(k: &Kernel) -> Result<Arc<QuadExt>> {
    let (a, b, c) = k.in_y();
    QuadExt::new(Var::X, a.clone(), b.clone(), c.clone())
}

/// Field generated by the root `X` of the kernel over `Q(y)`.
pub fn xroot_field(k: &Kernel) -> Result<Arc<QuadExt>> {
    let (at, bt, ct) = k.in_x();
    QuadExt::new(Var::Y, at.clone(), bt.clone(), ct.clone())
}

pub fn group_orbit(k: &Kernel, cap: usize) -> Result<GroupData> {
    let ext = curve_field(k)?;
    let start: Point = (ExtElem::base_var(&ext), ExtElem::gen(&ext));
    let mut orbit = vec![start.clone()];
    loop {
        let last = orbit.last().unwrap();
        let next = if orbit.len() % 2 == 1 {
            psi(k, last)?
        } else {
            phi(k, last)?
        };
        if next == start {
            break;
        }
        if orbit.len() >= cap {
            return Err(Error::InfiniteGroupSuspected(cap));
        }
        orbit.push(next);
    }
    Ok(GroupData {
        ext,
        orbit,
        kernel: k.clone(),
    })
}

/// `sum_i (-1)^i M(p_i)` as an element of `L`.
pub fn signed_orbit_sum_elem(m: &RatFun, g: &GroupData) -> Result<ExtElem> {
    let mut acc = ExtElem::from_base(&g.ext, URatFun::zero());
    for (i, (xi, eta)) in g.orbit.iter().enumerate() {
        let v = eval_ratfun_at(m, xi, eta).map_err(|e| match e {
            Error::PoleAtValue | Error::DivisionByZeroElement => Error::PoleOnOrbit,
            e => e,
        })?;
        acc = if i % 2 == 0 {
            acc.add(&v)?
        } else {
            acc.sub(&v)?
        };
    }
    Ok(acc)
}

/// The signed orbit sum re-expressed as `A(x) + B(x) y`.
pub fn signed_orbit_sum(m: &RatFun, g: &GroupData) -> Result<RatFun> {
    let s = signed_orbit_sum_elem(m, g)?;
    let a = RatFun::from_univariate(s.a(), Var::X);
    let b = RatFun::from_univariate(s.b(), Var::X);
    Ok(&a + &(&b * &RatFun::from_poly(MPoly::y())))
}
