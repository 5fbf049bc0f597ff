use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{MPoly, RatFun, Var, Q};
use crate::walkmodel::Kernel;

/// Generating function of `sum p_s h(. + s) - h` with Dirichlet boundary:
/// `(K H - K(x,0) H(x,0) - K(0,y) H(0,y) + K(0,0) H(0,0)) / (x y)`.
pub fn gf_laplacian(h: &RatFun, k: &Kernel) -> Result<RatFun> {
    if h.is_zero() {
        return Ok(RatFun::zero());
    }
    let axis = |v: Var| h.subs(v, &Q::zero()).map_err(|_| Error::AxisPole);
    let hx0 = axis(Var::Y)?;
    let h0y = axis(Var::X)?;
    let h00 = hx0.subs(Var::X, &Q::zero()).map_err(|_| Error::AxisPole)?;
    let kx0 = RatFun::from_poly(MPoly::from_upoly(&k.at_y0(), Var::X));
    let k0y = RatFun::from_poly(MPoly::from_upoly(&k.at_x0(), Var::Y));
    let mut acc = &k.ratfun() * h;
    acc = &acc - &(&kx0 * &hx0);
    acc = &acc - &(&k0y * &h0y);
    if !k.k00().is_zero() {
        acc = &acc + &h00.scale(k.k00());
    }
    let xy = RatFun::from_poly(MPoly::monomial(Q::from_integer(1.into()), 1, 1));
    &acc / &xy
}

/// `Delta^m H`.
pub fn gf_laplacian_pow(h: &RatFun, k: &Kernel, m: u32) -> Result<RatFun> {
    let mut cur = h.clone();
    for _ in 0..m {
        if cur.is_zero() {
            break;
        }
        cur = gf_laplacian(&cur, k)?;
    }
    Ok(cur)
}
