use std::sync::Arc;

use num_traits::Zero;

use super::basis::divide_by_kernel;
use super::laplacian::gf_laplacian;
use super::polygf::{alpha_bound, Decoupler, PolyGF};
use crate::error::{Error, Result};
use crate::exactalg::{
    eval_ratfun_at, eval_ratfun_at_ext, ExtElem, MPoly, RatFun, UPoly, URatFun, Var, Q,
};
use crate::walkmodel::group::signed_orbit_sum_elem;
use crate::walkmodel::Walk;

fn xy_times(h: &RatFun) -> RatFun {
    &RatFun::from_poly(MPoly::monomial(Q::from_integer(1.into()), 1, 1)) * h
}

/// `M(X_+, y)` in the field of the root `X_+` over `Q(y)`.
fn at_xplus(walk: &Walk, m: &RatFun) -> Result<ExtElem> {
    let s = ExtElem::gen(walk.xroot_field());
    eval_ratfun_at_ext(m, Var::X, &s).map_err(|e| match e {
        Error::PoleAtValue | Error::DivisionByZeroElement => Error::PoleOnOrbit,
        e => e,
    })
}

fn base_part(e: &ExtElem, what: &str, v: Var) -> Result<RatFun> {
    match e.as_base() {
        Some(a) => Ok(RatFun::from_univariate(a, v)),
        None => Err(Error::ResidualExtensionComponent(what.to_string())),
    }
}

/// Decoupling pair for `M = x y H`.
pub fn decouple(walk: &Walk, h: &PolyGF) -> Result<Decoupler> {
    decouple_fn(walk, &xy_times(&h.gf))
}

/// Decoupling pair `(F, G)` of an arbitrary `M` with vanishing signed orbit sum.
pub fn decouple_fn(walk: &Walk, m: &RatFun) -> Result<Decoupler> {
    let mx = at_xplus(walk, m)?;
    if mx.as_base().is_some() {
        return Ok(Decoupler {
            f: RatFun::zero(),
            g: base_part(&mx, "M(X_+, y)", Var::Y)?,
            source_m: m.clone(),
        });
    }
    let g = walk.group();
    if !signed_orbit_sum_elem(m, g)?.is_zero() {
        return Err(Error::NonzeroOrbitSum);
    }
    // T(x) = M(x, Y_+) + M(x, Y_-)
    let base = &g.orbit()[0];
    let t = eval_ratfun_at(m, &base.0, &base.1)?.trace()?;
    let n = g.n();
    let mut sum = ExtElem::from_base(g.ext(), URatFun::zero());
    for i in 1..n {
        sum = sum.add(&g.theta_x(i).eval_urat(&t).map_err(|_| Error::PoleOnOrbit)?)?;
    }
    let f = base_part(&sum, "sum of Theta-images of the trace", Var::X)?
        .scale(&Q::new((-1).into(), (n as i64).into()));
    let fx = at_xplus(walk, &f)?;
    let f = match base_part(&mx.sub(&fx)?, "M(X_+, y) - F(X_+)", Var::Y) {
        Ok(gg) => {
            return Ok(Decoupler {
                f,
                g: gg,
                source_m: m.clone(),
            })
        }
        // the trace formula does not decouple every M; fall back to the telescoping sum
        Err(Error::ResidualExtensionComponent(_)) => telescoping_decoupler(walk, m)?,
        Err(e) => return Err(e),
    };
    let gg = base_part(&mx.sub(&at_xplus(walk, &f)?)?, "M(X_+, y) - F(X_+)", Var::Y)?;
    Ok(Decoupler {
        f,
        g: gg,
        source_m: m.clone(),
    })
}

/// `F(x) = -(1/n) sum_k k (M(p_{2k+1}) - M(p_{2k+2}))` over the orbit `p_0 .. p_{2n-1}`,
/// indices mod `2n`. Exact up to a function of `omega` when the signed orbit sum vanishes.
pub fn telescoping_decoupler(walk: &Walk, m: &RatFun) -> Result<RatFun> {
    let g = walk.group();
    let pts = g.orbit();
    let n = g.n();
    let at = |i: usize| {
        let (xi, eta) = &pts[i % (2 * n)];
        eval_ratfun_at(m, xi, eta).map_err(|_| Error::PoleOnOrbit)
    };
    let mut sum = ExtElem::from_base(g.ext(), URatFun::zero());
    for k in 1..n {
        let d = at(2 * k + 1)?.sub(&at(2 * k + 2)?)?;
        let kk = URatFun::constant(Q::from_integer((k as i64).into()));
        sum = sum.add(&d.mul(&ExtElem::from_base(g.ext(), kk))?)?;
    }
    Ok(base_part(&sum, "telescoping orbit sum", Var::X)?
        .scale(&Q::new((-1).into(), (n as i64).into())))
}

/// `G(y)` if `M(X_+, y) - F(X_+)` lies in the base field, else `ResidualExtensionComponent`.
pub fn check_decoupler(walk: &Walk, m: &RatFun, f: &RatFun) -> Result<RatFun> {
    let e = at_xplus(walk, m)?.sub(&at_xplus(walk, f)?)?;
    base_part(&e, "M(X_+, y) - F(X_+)", Var::Y)
}

/// `R` with `f = R(omega)`, `deg R <= max_deg`, if one exists.
pub fn as_omega_poly(walk: &Walk, f: &RatFun, max_deg: u32) -> Result<Option<UPoly>> {
    let om = &walk.conformal()?.omega;
    if f.involves(Var::Y) {
        return Ok(None);
    }
    let v = om.num().min_exponents().0 as usize;
    let order = v * max_deg as usize;
    let Ok(target) = f.axis_series(Var::X, order) else {
        return Ok(None);
    };
    let mut pows = vec![RatFun::one()];
    for i in 1..=max_deg as usize {
        pows.push(&pows[i - 1] * om);
    }
    let series: Vec<Vec<Q>> = pows
        .iter()
        .map(|p| p.axis_series(Var::X, order))
        .collect::<Result<_>>()?;
    // omega^i starts at x^{i v}
    let mut c = vec![Q::zero(); max_deg as usize + 1];
    for i in 0..=max_deg as usize {
        let mut r = target[i * v].clone();
        for (j, cj) in c.iter().enumerate().take(i) {
            r -= cj * &series[j][i * v];
        }
        c[i] = r / &series[i][i * v];
    }
    let r = UPoly::new(c);
    let mut acc = RatFun::zero();
    for (i, ci) in r.coeffs().iter().enumerate() {
        acc = &acc + &pows[i].scale(ci);
    }
    Ok((acc == *f).then_some(r))
}

/// `H' = (x y H - F(x) - G(y)) / K`, with pole-order and Laplacian checks.
pub fn lift(walk: &Walk, h: &Arc<PolyGF>, d: &Decoupler) -> Result<PolyGF> {
    let m = xy_times(&h.gf);
    let num = &(&m - &d.f) - &d.g;
    let gf = divide_by_kernel(&num, walk.kernel().poly())?;
    let bound = alpha_bound(walk.pi_over_theta()?, h.n + 1, h.k);
    check_pole_form(&gf, bound)?;
    if gf_laplacian(&gf, walk.kernel())? != h.gf {
        return Err(Error::LaplacianMismatch);
    }
    Ok(PolyGF {
        model: h.model.clone(),
        n: h.n + 1,
        k: h.k,
        gf,
        alpha_bound: bound,
        prev: Some((h.clone(), d.clone())),
    })
}

/// Denominator must be `c (x-1)^a (y-1)^b` with `a, b <= bound`.
pub fn check_pole_form(f: &RatFun, bound: u32) -> Result<()> {
    let (a, rest) = f.den().split_one(Var::X);
    let (b, rest) = rest.split_one(Var::Y);
    if !rest.is_constant() {
        return Err(Error::PoleOrderExceeded {
            bound,
            found: f.den().total_degree(),
        });
    }
    let found = a.max(b);
    if found > bound {
        return Err(Error::PoleOrderExceeded { bound, found });
    }
    Ok(())
}
