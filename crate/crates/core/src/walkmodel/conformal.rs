//! The rational invariant `omega` with `omega(X_+) = omega(X_-)`, and its checks.

use num_traits::Zero;

use super::group::xroot_field;
use super::kernel::Kernel;
use crate::error::{Error, Result};
use crate::exactalg::{eval_ratfun_at_ext, ExtElem, RatFun, Var, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConformalSource {
    Catalog,
    User,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalData {
    pub pi_over_theta: u32,
    /// `omega(x)`
    pub omega: RatFun,
    /// `omega(X_+(y))`, a rational function of `y`
    pub omega_xplus: RatFun,
    /// `omega(X_+(0))`
    pub d0: Q,
    pub source: ConformalSource,
}

/// Conformal data as supplied by a user; missing fields are derived.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UserConformal {
    pub omega: Option<RatFun>,
    pub omega_xplus: Option<RatFun>,
    pub pi_over_theta: Option<u32>,
}

/// Checks every invariant of `omega` against the kernel and returns the validated data.
pub fn validate_conformal(
    k: &Kernel,
    omega: RatFun,
    omega_xplus: Option<RatFun>,
    pi_over_theta: u32,
    source: ConformalSource,
) -> Result<ConformalData> {
    if omega.involves(Var::Y) {
        return Err(Error::InvarianceCheckFailed(
            "omega must depend on x only".into(),
        ));
    }
    match omega.subs(Var::X, &Q::zero()) {
        Ok(v) if v.is_zero() => {}
        _ => return Err(Error::InvarianceCheckFailed("omega(0) != 0".into())),
    }
    let found = omega.pole_order_at_one(Var::X);
    if found != pi_over_theta {
        return Err(Error::PoleOrderMismatch {
            expected: pi_over_theta,
            found,
        });
    }
    let xext = xroot_field(k)?;
    let at_root = eval_ratfun_at_ext(&omega, Var::X, &ExtElem::gen(&xext))
        .map_err(|e| Error::InvarianceCheckFailed(format!("omega(X_+): {e}")))?;
    let Some(val) = at_root.as_base() else {
        return Err(Error::InvarianceCheckFailed(
            "omega(X_+) has a nonzero extension component".into(),
        ));
    };
    let computed = RatFun::from_univariate(val, Var::Y);
    if let Some(given) = omega_xplus {
        if given != computed {
            return Err(Error::InvarianceCheckFailed(format!(
                "omega(X_+) = {}, stored {}",
                computed.to_text(["x", "y"]),
                given.to_text(["x", "y"])
            )));
        }
    }
    let d0 = computed
        .subs(Var::Y, &Q::zero())
        .ok()
        .and_then(|r| r.constant_value())
        .ok_or_else(|| Error::InvarianceCheckFailed("omega(X_+(0)) is infinite".into()))?;
    // the boundary valuations drive the series matching of the basis decomposition
    let dw = omega.derivative(Var::X).subs(Var::X, &Q::zero());
    let dwp = computed.derivative(Var::Y).subs(Var::Y, &Q::zero());
    let nonzero = |r: Result<RatFun>| r.map(|v| !v.is_zero()).unwrap_or(false);
    if !nonzero(dw) && !nonzero(dwp) {
        return Err(Error::InvarianceCheckFailed(
            "omega and omega(X_+) both have vanishing derivative at 0".into(),
        ));
    }
    Ok(ConformalData {
        pi_over_theta,
        omega,
        omega_xplus: computed,
        d0,
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q, MPoly};
    use crate::walkmodel::catalog;

    fn simple_omega() -> RatFun {
        // -2x/(1-x)^2
        RatFun::new(
            MPoly::from_int_terms(&[(1, 0, -2)]),
            MPoly::from_int_terms(&[(0, 0, 1), (1, 0, -2), (2, 0, 1)]),
        )
        .unwrap()
    }

    #[test]
    fn simple_walk_invariant() {
        let w = catalog::walk("simple").unwrap();
        let c =
            validate_conformal(w.kernel(), simple_omega(), None, 2, ConformalSource::User).unwrap();
        assert_eq!(c.omega_xplus, -&simple_omega().swap_vars());
        assert_eq!(c.d0, Q::zero());
    }

    #[test]
    fn rejects_bad_data() {
        let w = catalog::walk("simple").unwrap();
        let k = w.kernel();
        assert!(matches!(
            validate_conformal(k, RatFun::x(), None, 0, ConformalSource::User),
            Err(Error::InvarianceCheckFailed(_))
        ));
        assert_eq!(
            validate_conformal(k, simple_omega(), None, 3, ConformalSource::User),
            Err(Error::PoleOrderMismatch {
                expected: 3,
                found: 2
            })
        );
        let shifted = &simple_omega() + &RatFun::constant(q(1));
        assert!(validate_conformal(k, shifted, None, 2, ConformalSource::User).is_err());
        let wrong = Some(simple_omega().swap_vars());
        assert!(matches!(
            validate_conformal(k, simple_omega(), wrong, 2, ConformalSource::User),
            Err(Error::InvarianceCheckFailed(_))
        ));
    }
}
