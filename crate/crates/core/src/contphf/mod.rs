//! Laplace transforms of polyharmonic functions of the Brownian scaling limit.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::rational::factorial;
use crate::exactalg::{q, CPoly, MPoly, NumElem, QuadField, Var, Q};
use crate::walkmodel::{StepModel, Walk};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covariance {
    pub s11: Q,
    pub s12: Q,
    pub s22: Q,
}

impl Covariance {
    /// `gamma(x, y) = (s11 x^2 + 2 s12 x y + s22 y^2) / 2`.
    pub fn gamma(&self) -> MPoly {
        let h = Q::new(1.into(), 2.into());
        MPoly::from_terms([
            ((2, 0), &self.s11 * &h),
            ((1, 1), self.s12.clone()),
            ((0, 2), &self.s22 * &h),
        ])
    }
}

/// Second moments of the steps. Unnormalized weights need `raw_moments`.
pub fn covariance(model: &StepModel, raw_moments: bool) -> Result<Covariance> {
    if !model.is_normalized() && !raw_moments {
        return Err(Error::DegenerateCovariance);
    }
    let (s11, s12, s22) = model.moments();
    if !(s11 > Q::zero() && s22 > Q::zero() && &s11 * &s22 - &s12 * &s12 > Q::zero()) {
        return Err(Error::DegenerateCovariance);
    }
    Ok(Covariance { s11, s12, s22 })
}

/// The roots of `s11 c^2 + 2 s12 c + s22` with `c_+` the one with positive surd part.
#[derive(Clone, Debug)]
pub struct CRoots {
    pub field: Arc<QuadField>,
    pub plus: NumElem,
    pub minus: NumElem,
}

pub fn c_roots(s: &Covariance) -> Result<CRoots> {
    let p = q(2) * &s.s12 / &s.s11;
    let qq = &s.s22 / &s.s11;
    let field = QuadField::new(p.clone(), qq)?;
    let plus = NumElem::gen(&field);
    let minus = NumElem::rational(&field, -p).sub(&plus);
    Ok(CRoots { field, plus, minus })
}

/// `num / (x^a y^b)` with a homogeneous numerator over `Q(c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacePHF {
    pub model: String,
    pub n: u32,
    pub k: u32,
    pub num: CPoly,
    pub den: (u32, u32),
}

impl LaplacePHF {
    /// Reduced form: no monomial factor shared by numerator and denominator.
    pub fn new(model: &str, n: u32, k: u32, num: CPoly, den: (u32, u32)) -> LaplacePHF {
        let (num, den) = if num.is_zero() {
            (num, (0, 0))
        } else {
            let (mi, mj) = num.min_exponents();
            let (di, dj) = (mi.min(den.0), mj.min(den.1));
            (num.unshift(di, dj), (den.0 - di, den.1 - dj))
        };
        LaplacePHF {
            model: model.to_string(),
            n,
            k,
            num,
            den,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn field(&self) -> &Arc<QuadField> {
        self.num.field()
    }

    pub fn is_real(&self) -> bool {
        self.num.is_real()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.num.is_homogeneous()
    }

    /// Degree of homogeneity of the ratio.
    pub fn total_degree(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        self.num.support()[0].0 as i64 + self.num.support()[0].1 as i64
            - (self.den.0 + self.den.1) as i64
    }

    /// `(c, i, j)` for the Laurent monomials `c x^i y^j`.
    pub fn laurent_terms(&self) -> Vec<(NumElem, i64, i64)> {
        self.num
            .support()
            .into_iter()
            .map(|(i, j)| {
                (
                    self.num.coeff(i, j),
                    i as i64 - self.den.0 as i64,
                    j as i64 - self.den.1 as i64,
                )
            })
            .collect()
    }

    /// `L(c y, y) = beta / y^d`; returns `beta`.
    pub fn on_line(&self, c: &NumElem) -> Result<NumElem> {
        let zero = NumElem::rational(self.field(), Q::zero());
        let terms = self.num.subs_x_linear(c);
        let s = match terms.len() {
            0 => zero,
            1 => terms[0].1.clone(),
            _ => return Err(Error::GammaDivisionFailed),
        };
        Ok(s.mul(&c.pow(-(self.den.0 as i64))?))
    }

    /// The real numerator, if every coefficient is rational.
    pub fn real_num(&self) -> Option<&MPoly> {
        self.num.as_real()
    }
}

/// Data of the continuous construction for one walk.
#[derive(Clone, Debug)]
pub struct Scaling {
    pub model: String,
    pub cov: Covariance,
    pub roots: CRoots,
    pub pi_over_theta: u32,
}

impl Scaling {
    pub fn new(walk: &Walk) -> Result<Scaling> {
        let cov = covariance(walk.model(), false)?;
        let roots = c_roots(&cov)?;
        Ok(Scaling {
            model: walk.name().to_string(),
            cov,
            roots,
            pi_over_theta: walk.pi_over_theta()?,
        })
    }

    pub fn gamma(&self) -> MPoly {
        self.cov.gamma()
    }

    fn field(&self) -> &Arc<QuadField> {
        &self.roots.field
    }
}

/// `L(h_1^k) = (w(x)^k - w(c_+ y)^k) / gamma` with `w(x) = x^{-pi/theta}`.
pub fn cont_harmonic(sc: &Scaling, k: u32) -> Result<LaplacePHF> {
    let e = sc.pi_over_theta * k;
    let f = sc.field();
    // (y^e - c_+^{-e} x^e) / (x^e y^e)
    let ce = sc.roots.plus.pow(-(e as i64))?;
    let num =
        CPoly::monomial(&NumElem::rational(f, Q::one()), 0, e).sub(&CPoly::monomial(&ce, e, 0));
    let q = num
        .exact_div(&sc.gamma())
        .ok_or(Error::GammaDivisionFailed)?;
    if !q.is_real() {
        return Err(Error::ComplexResidue);
    }
    Ok(LaplacePHF::new(&sc.model, 1, k, q, (e, e)))
}

/// `f(x) = alpha / x^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContDecoupler {
    pub alpha: NumElem,
    pub d: u32,
}

impl ContDecoupler {
    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero()
    }

    pub fn at(&self, c: &NumElem) -> Result<NumElem> {
        Ok(self.alpha.mul(&c.pow(-(self.d as i64))?))
    }
}

/// Solves `f(c_+ y) - f(c_- y) = L(c_+ y, y) - L(c_- y, y)` with `f = alpha / x^d`.
pub fn cont_decouple(sc: &Scaling, l: &LaplacePHF) -> Result<ContDecoupler> {
    let f = sc.field();
    let d = (-l.total_degree()).max(0) as u32;
    let zero = ContDecoupler {
        alpha: NumElem::rational(f, Q::zero()),
        d,
    };
    if l.is_zero() {
        return Ok(zero);
    }
    let (cp, cm) = (&sc.roots.plus, &sc.roots.minus);
    let r = l.on_line(cp)?.sub(&l.on_line(cm)?);
    if r.is_zero() {
        return Ok(zero);
    }
    let denom = cp.pow(-(d as i64))?.sub(&cm.pow(-(d as i64))?);
    if denom.is_zero() {
        return Err(Error::AnsatzUnsolvable);
    }
    let alpha = r.div(&denom)?;
    if !alpha.is_rational() {
        return Err(Error::ComplexResidue);
    }
    Ok(ContDecoupler { alpha, d })
}

/// `r(y) y^d = L(c_+ y, y) - L(c_- y, y)` scaled to the monomial `y^{-d}`.
pub fn line_difference(sc: &Scaling, l: &LaplacePHF) -> Result<NumElem> {
    Ok(l.on_line(&sc.roots.plus)?.sub(&l.on_line(&sc.roots.minus)?))
}

/// `L' = (L - f(x) - [L(c_+ y, y) - f(c_+ y)]) / gamma`.
pub fn cont_lift(sc: &Scaling, l: &LaplacePHF, f: &ContDecoupler) -> Result<LaplacePHF> {
    let fld = sc.field();
    let d = f.d;
    let (a, b) = l.den;
    let (aa, bb) = (a.max(d), b.max(d));
    // zeta / y^d = L(c_+ y, y) - f(c_+ y)
    let zeta = if l.is_zero() {
        NumElem::rational(fld, Q::zero())
    } else {
        l.on_line(&sc.roots.plus)?.sub(&f.at(&sc.roots.plus)?)
    };
    if !zeta.is_rational() {
        return Err(Error::ComplexResidue);
    }
    let mut num = l.num.shift(aa - a, bb - b);
    num = num.sub(&CPoly::monomial(&f.alpha, aa - d, bb));
    num = num.sub(&CPoly::monomial(&zeta, aa, bb - d));
    let q = num
        .exact_div(&sc.gamma())
        .ok_or(Error::GammaDivisionFailed)?;
    if !q.is_real() {
        return Err(Error::ComplexResidue);
    }
    let out = LaplacePHF::new(&l.model, l.n + 1, l.k, q, (aa, bb));
    if !out.is_zero() && out.total_degree() != l.total_degree() - 2 {
        return Err(Error::GammaDivisionFailed);
    }
    Ok(out)
}

/// `L(h_1^k), ..., L(h_n^k)` with the decouplers used between them.
pub fn cont_chain(sc: &Scaling, n: u32, k: u32) -> Result<(Vec<LaplacePHF>, Vec<ContDecoupler>)> {
    let mut ls = vec![cont_harmonic(sc, k)?];
    let mut fs = Vec::new();
    for _ in 1..n {
        let last = ls.last().unwrap();
        let f = cont_decouple(sc, last)?;
        let next = cont_lift(sc, last, &f)?;
        if !verify_cont_fe(sc, &next, Some(last)).0 {
            return Err(Error::GammaDivisionFailed);
        }
        fs.push(f);
        ls.push(next);
    }
    Ok((ls, fs))
}

/// `sum beta u^{a-1} v^{b-1} / ((a-1)! (b-1)!)` for `L = sum beta x^{-a} y^{-b}`.
pub fn inverse_laplace(l: &LaplacePHF) -> Result<MPoly> {
    let mut terms = Vec::new();
    for (c, i, j) in l.laurent_terms() {
        let (a, b) = (-i, -j);
        if a < 1 || b < 1 {
            return Err(Error::NonMonomialDenominator);
        }
        let c = c.as_rational().ok_or(Error::ComplexResidue)?;
        let fa = factorial((a - 1) as u64) * factorial((b - 1) as u64);
        terms.push((((a - 1) as u32, (b - 1) as u32), c / Q::from_integer(fa)));
    }
    Ok(MPoly::from_terms(terms))
}

/// `(s11 p_uu + 2 s12 p_uv + s22 p_vv) / 2`.
pub fn cont_laplacian(p: &MPoly, s: &Covariance) -> MPoly {
    let h = Q::new(BigInt::one(), 2.into());
    let uu = p.derivative(Var::X).derivative(Var::X).scale(&s.s11);
    let uv = p
        .derivative(Var::X)
        .derivative(Var::Y)
        .scale(&(q(2) * &s.s12));
    let vv = p.derivative(Var::Y).derivative(Var::Y).scale(&s.s22);
    (&(&uu + &uv) + &vv).scale(&h)
}

/// Whether `gamma L_n - L_prev` is a sum of a function of `x` and one of `y`.
/// On failure returns a Laurent monomial `(i, j)` coupling both variables.
pub fn verify_cont_fe(
    sc: &Scaling,
    ln: &LaplacePHF,
    lprev: Option<&LaplacePHF>,
) -> (bool, Option<(i64, i64)>) {
    let mut r = ln.num.mul_poly(&sc.gamma());
    let (mut a, mut b) = ln.den;
    if let Some(p) = lprev.filter(|p| !p.is_zero()) {
        let (pa, pb) = p.den;
        let (na, nb) = (a.max(pa), b.max(pb));
        r = r.shift(na - a, nb - b).sub(&p.num.shift(na - pa, nb - pb));
        a = na;
        b = nb;
    }
    for (i, j) in r.support() {
        let (ei, ej) = (i as i64 - a as i64, j as i64 - b as i64);
        if ei != 0 && ej != 0 {
            return (false, Some((ei, ej)));
        }
    }
    (true, None)
}
