use num_traits::Zero;

use super::polygf::{alpha_bound, PolyGF};
use crate::error::{Error, Result};
use crate::exactalg::{MPoly, RatFun, UPoly, Q};
use crate::walkmodel::Walk;

/// `P_{2m}(z) = z^m (z - d0)^m`, `P_{2m+1}(z) = z^{m+1} (z - d0)^m`.
pub fn basis_poly(k: u32, d0: &Q) -> UPoly {
    let m = k / 2;
    let z = UPoly::monomial(Q::from_integer(1.into()), 1);
    let zd = UPoly::linear_root(d0);
    let p = &z.pow(m) * &zd.pow(m);
    if k % 2 == 1 {
        &p * &z
    } else {
        p
    }
}

/// `p(f)` computed over the common denominator `den(f)^deg p`.
pub fn compose_upoly(p: &UPoly, f: &RatFun) -> RatFun {
    let Some(d) = p.degree() else {
        return RatFun::zero();
    };
    let (n, den) = (f.num(), f.den());
    let mut npow = vec![MPoly::one()];
    let mut dpow = vec![MPoly::one()];
    for i in 1..=d {
        npow.push(&npow[i - 1] * n);
        dpow.push(&dpow[i - 1] * den);
    }
    let mut acc = MPoly::zero();
    for (i, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = acc + (&npow[i] * &dpow[d - i]).scale(c);
        }
    }
    // acc = c_d n^d mod den, so it is coprime to den^d
    RatFun::from_coprime(acc, dpow.swap_remove(d))
}

/// Exact quotient `(N / D) / K` where `K | N`.
pub fn divide_by_kernel(f: &RatFun, k: &MPoly) -> Result<RatFun> {
    let q = f.num().exact_div(k).ok_or(Error::KernelDivisionFailed)?;
    RatFun::new(q, f.den().clone())
}

/// `H_1^k = (P_k(omega(x)) - P_k(omega(X_+))) / K`.
pub fn harmonic_basis(walk: &Walk, k: u32) -> Result<PolyGF> {
    assert!(k >= 1, "basis index starts at 1");
    let c = walk.conformal()?;
    let p = basis_poly(k, &c.d0);
    let num = &compose_upoly(&p, &c.omega) - &compose_upoly(&p, &c.omega_xplus);
    let gf = divide_by_kernel(&num, walk.kernel().poly())?;
    Ok(PolyGF {
        model: walk.name().to_string(),
        n: 1,
        k,
        gf,
        alpha_bound: alpha_bound(c.pi_over_theta, 1, k),
        prev: None,
    })
}
