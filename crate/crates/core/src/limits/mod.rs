//! Exact discrete-to-continuous limits through truncated `mu`-series.

use num_traits::Zero;

use crate::contphf::{LaplacePHF, Scaling};
use crate::discretephf::PolyGF;
use crate::error::{Error, Result};
use crate::exactalg::{q, MPoly, MuSeries, NumElem, RatFun, Var, Q};
use crate::walkmodel::Walk;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelLimit {
    pub ok: bool,
    pub valuation: Option<usize>,
    /// `mu^2` coefficient of `K(e^{-mu s}, e^{-mu t})`
    pub leading: RatFun,
    pub gamma: RatFun,
}

/// `K(e^{-mu s}, e^{-mu t}) = mu^2 gamma(s, t) + O(mu^3)`.
pub fn kernel_limit_check(walk: &Walk, sc: &Scaling) -> KernelLimit {
    let ser = MuSeries::exp_substitute(walk.kernel().poly(), 4);
    let gamma = RatFun::from_poly(sc.gamma());
    let valuation = ser.valuation();
    let leading = ser.coeff(2).clone();
    KernelLimit {
        ok: valuation == Some(2) && leading == gamma,
        valuation,
        leading,
        gamma,
    }
}

/// First-order coefficients of `X_+(e^{-mu s})` and `X_-(e^{-mu s})` at `s = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XplusExpansion {
    pub constant: Q,
    pub xi_plus: NumElem,
    pub xi_minus: NumElem,
}

/// Solves the `mu^2` equation for `X = 1 + xi mu + O(mu^2)` on `K(X, e^{-mu s}) = 0`
/// and matches the roots with `-c_+ s`, `-c_- s`.
pub fn xplus_expansion_check(walk: &Walk, sc: &Scaling) -> Result<XplusExpansion> {
    let k = walk.kernel().poly();
    let one = q(1);
    let d = |a: u32, b: u32| {
        let mut p = k.clone();
        for _ in 0..a {
            p = p.derivative(Var::X);
        }
        for _ in 0..b {
            p = p.derivative(Var::Y);
        }
        p.eval(&one, &one)
    };
    // mu^0 and mu^1 terms of K(1 + xi mu, 1 - s mu + s^2 mu^2 / 2) vanish at a zero-drift root
    if !k.eval(&one, &one).is_zero() || !d(1, 0).is_zero() || !d(0, 1).is_zero() {
        return Err(Error::BranchAmbiguity);
    }
    // mu^2: K_xx xi^2 / 2 - K_xy xi + K_yy / 2 + K_y / 2, at s = 1
    let h = Q::new(1.into(), 2.into());
    let (a2, a1, a0) = (&d(2, 0) * &h, -d(1, 1), &d(0, 2) * &h + &d(0, 1) * &h);
    let quad = |xi: &NumElem| {
        let f = xi.field();
        xi.mul(xi)
            .scale(&a2)
            .add(&xi.scale(&a1))
            .add(&NumElem::rational(f, a0.clone()))
    };
    let xp = sc.roots.plus.neg();
    let xm = sc.roots.minus.neg();
    if !quad(&xp).is_zero() || !quad(&xm).is_zero() || xp == xm {
        return Err(Error::BranchAmbiguity);
    }
    Ok(XplusExpansion {
        constant: one,
        xi_plus: xp,
        xi_minus: xm,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitReport {
    pub exponent: u32,
    pub order: usize,
    /// `mu`-valuation of the substituted denominator
    pub den_valuation: usize,
    /// `lim mu^exponent H(e^{-mu s}, e^{-mu t})`
    pub limit: RatFun,
    pub alpha: Q,
    pub matched: bool,
}

/// `L` as a rational function of `(s, t)`; it must have real coefficients.
pub fn laplace_ratfun(l: &LaplacePHF) -> Result<RatFun> {
    let num = l.real_num().ok_or(Error::ComplexResidue)?;
    RatFun::new(num.clone(), MPoly::monomial(q(1), l.den.0, l.den.1))
}

/// Series order for a function whose denominator has `mu`-valuation `v`.
pub fn default_order(exponent: u32, den: &MPoly) -> usize {
    let (a, rest) = den.split_one(Var::X);
    let (b, _) = rest.split_one(Var::Y);
    (exponent + 3).max(a + b + 3) as usize
}

fn leading_ratio(num: &MPoly, den: &MPoly, order: usize) -> Result<(usize, usize, RatFun)> {
    let p = MuSeries::exp_substitute(num, order);
    let d = MuSeries::exp_substitute(den, order);
    let vd = d.valuation().ok_or(Error::DivisionValuationExceedsOrder {
        valuation: order + 1,
        order,
    })?;
    let vp = p.valuation().ok_or(Error::DivisionValuationExceedsOrder {
        valuation: order + 1,
        order,
    })?;
    Ok((vp, vd, (p.coeff(vp) / d.coeff(vd))?))
}

/// `lim mu^{k pi/theta + 2n} H(e^{-mu s}, e^{-mu t}) = alpha L(s, t)`.
pub fn phf_limit(
    h: &PolyGF,
    l: &LaplacePHF,
    pi_over_theta: u32,
    order: Option<usize>,
) -> Result<LimitReport> {
    let exponent = h.k * pi_over_theta + 2 * h.n;
    let order = order.unwrap_or_else(|| default_order(exponent, h.gf.den()));
    let (vp, vd, limit) = leading_ratio(h.gf.num(), h.gf.den(), order)?;
    let gap = vd as i64 - vp as i64;
    if gap != exponent as i64 {
        return Err(Error::ExponentMismatch {
            expected: exponent as i64,
            found: gap,
        });
    }
    let ratio = (&limit / &laplace_ratfun(l)?)?;
    let alpha = ratio.constant_value().ok_or(Error::NotProportional)?;
    Ok(LimitReport {
        exponent,
        order,
        den_valuation: vd,
        limit,
        matched: !alpha.is_zero(),
        alpha,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecouplingLimit {
    pub ok: bool,
    /// `lim mu^exponent F(e^{-mu s})`
    pub limit: RatFun,
    /// `limit - alpha f(s)`, accepted when it is a polynomial in `1/s^{pi/theta}`
    pub ambiguity: RatFun,
}

/// The decoupler limit against `alpha f(s)` with `f = beta / s^d`.
pub fn decoupling_limit_check(
    f_disc: &RatFun,
    f_cont: (&Q, u32),
    exponent: u32,
    alpha: &Q,
    pi_over_theta: u32,
) -> Result<DecouplingLimit> {
    let target = RatFun::new(
        MPoly::constant(alpha * f_cont.0),
        MPoly::monomial(q(1), f_cont.1, 0),
    )?;
    let limit = if f_disc.is_zero() {
        RatFun::zero()
    } else {
        let order = default_order(exponent, f_disc.den());
        let (vp, vd, lim) = leading_ratio(f_disc.num(), f_disc.den(), order)?;
        if vd as i64 - vp as i64 > exponent as i64 {
            return Err(Error::ExponentMismatch {
                expected: exponent as i64,
                found: vd as i64 - vp as i64,
            });
        }
        if vd as i64 - vp as i64 == exponent as i64 {
            lim
        } else {
            RatFun::zero()
        }
    };
    let ambiguity = &limit - &target;
    let ok = ambiguity.is_zero() || is_power_of_inverse(&ambiguity, pi_over_theta);
    Ok(DecouplingLimit {
        ok,
        limit,
        ambiguity,
    })
}

fn is_power_of_inverse(f: &RatFun, m: u32) -> bool {
    // c / s^{j m}
    f.num().is_constant()
        && f.den().num_terms() == 1
        && f.den().min_exponents().1 == 0
        && f.den().min_exponents().0 % m == 0
        && !f.den().is_constant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contphf::{cont_chain, cont_harmonic};
    use crate::discretephf::Family;
    use crate::exactalg::qf;
    use crate::walkmodel::catalog;

    #[test]
    fn kernel_limits() {
        for name in ["simple", "tandem"] {
            let w = catalog::walk(name).unwrap();
            let sc = Scaling::new(&w).unwrap();
            let r = kernel_limit_check(&w, &sc);
            assert!(r.ok, "{name}");
            let x = xplus_expansion_check(&w, &sc).unwrap();
            assert_eq!(x.xi_plus, sc.roots.plus.neg());
        }
    }

    #[test]
    fn simple_alpha() {
        let w = catalog::walk("simple").unwrap();
        let sc = Scaling::new(&w).unwrap();
        let fam = Family::new(w);
        let r = phf_limit(
            &fam.get(1, 1).unwrap(),
            &cont_harmonic(&sc, 1).unwrap(),
            2,
            None,
        )
        .unwrap();
        assert_eq!(r.exponent, 4);
        assert_eq!(r.alpha, qf(-2, 1));
        assert_eq!(r.den_valuation, 4);
    }

    #[test]
    fn tandem_first_decoupler_limit() {
        let w = catalog::walk("tandem").unwrap();
        let sc = Scaling::new(&w).unwrap();
        let fam = Family::new(w.clone());
        let (ls, fs) = cont_chain(&sc, 2, 1).unwrap();
        let r = phf_limit(&fam.get(1, 1).unwrap(), &ls[0], 3, None).unwrap();
        assert_eq!(r.alpha, qf(-27, 4));
        let h2 = fam.get(2, 1).unwrap();
        let d = h2.decoupler().unwrap();
        let f = &fs[0];
        let c =
            decoupling_limit_check(&d.f, (&f.alpha.as_rational().unwrap(), f.d), 5, &r.alpha, 3)
                .unwrap();
        assert!(c.ok && c.ambiguity.is_zero());
    }
}
