use std::collections::BTreeMap;

use num_traits::Zero;

use super::family::Family;
use super::laplacian::{gf_laplacian, gf_laplacian_pow};
use crate::error::{Error, Result};
use crate::exactalg::{RatFun, Var, Q};

/// `input = sum a_{i,j} H_i^j + residual`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisDecomposition {
    pub coefficients: BTreeMap<(u32, u32), Q>,
    /// number of harmonic basis functions used per layer
    pub order: u32,
    pub residual: RatFun,
}

impl BasisDecomposition {
    pub fn is_exact(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Q {
        self.coefficients
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    /// `sum a_{i,j} H_i^j`.
    pub fn rebuild(&self, fam: &Family) -> Result<RatFun> {
        let mut acc = RatFun::zero();
        for (&(i, j), a) in &self.coefficients {
            acc = &acc + &fam.get(i, j)?.gf.scale(a);
        }
        Ok(acc)
    }
}

/// Boundary series `K(x,0) H(x,0)` (`Var::X`) or `K(0,y) H(0,y)` (`Var::Y`).
fn boundary_series(fam: &Family, h: &RatFun, v: Var, order: usize) -> Result<Vec<Q>> {
    let k = fam.walk().kernel();
    let kp = match v {
        Var::X => k.at_y0(),
        Var::Y => k.at_x0(),
    };
    let s = h.axis_series(v, order)?;
    // multiply by the kernel's axis polynomial
    let mut out = vec![Q::zero(); order + 1];
    for (i, a) in kp.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in s.iter().enumerate() {
            if i + j <= order {
                out[i + j] += a * b;
            }
        }
    }
    Ok(out)
}

/// Order of vanishing at 0 of a univariate rational function with no pole at 0.
fn valuation(f: &RatFun, v: Var) -> Option<u32> {
    if f.is_zero() {
        return None;
    }
    let (mx, my) = f.num().min_exponents();
    Some(match v {
        Var::X => mx,
        Var::Y => my,
    })
}

/// Series-matching equation for basis index `k`: which boundary, which exponent.
fn pivots(fam: &Family, count: u32) -> Result<Vec<(Var, usize)>> {
    let c = fam.walk().conformal()?;
    let vx = valuation(&c.omega, Var::X).ok_or(Error::NotHarmonic)? as usize;
    let wp0 = &c.omega_xplus - &RatFun::constant(c.d0.clone());
    let vy = valuation(&wp0, Var::Y).ok_or(Error::NotHarmonic)? as usize;
    let mut out = Vec::with_capacity(count as usize);
    for k in 1..=count as usize {
        out.push(if c.d0.is_zero() {
            // P_k = z^k: the boundary with the smaller valuation is triangular
            if vy < vx {
                (Var::Y, k * vy)
            } else {
                (Var::X, k * vx)
            }
        } else if k == 1 {
            (Var::X, 0)
        } else if k % 2 == 0 {
            (Var::X, (k / 2) * vx)
        } else {
            (Var::Y, (k / 2) * vy)
        });
    }
    Ok(out)
}

fn solve_harmonic(fam: &Family, h: &RatFun, count: u32) -> Result<BasisDecomposition> {
    let mut coefficients = BTreeMap::new();
    if h.is_zero() || count == 0 {
        return Ok(BasisDecomposition {
            coefficients,
            order: count,
            residual: h.clone(),
        });
    }
    let piv = pivots(fam, count)?;
    let ord = |v: Var| {
        piv.iter()
            .filter(|p| p.0 == v)
            .map(|p| p.1)
            .max()
            .unwrap_or(0)
    };
    let (ox, oy) = (ord(Var::X), ord(Var::Y));
    let target = [
        boundary_series(fam, h, Var::X, ox)?,
        boundary_series(fam, h, Var::Y, oy)?,
    ];
    let mut basis = Vec::with_capacity(count as usize);
    for k in 1..=count {
        let b = &fam.get(1, k)?.gf;
        basis.push([
            boundary_series(fam, b, Var::X, ox)?,
            boundary_series(fam, b, Var::Y, oy)?,
        ]);
    }
    let side = |v: Var| if v == Var::X { 0 } else { 1 };
    let mut a: Vec<Q> = Vec::with_capacity(count as usize);
    for (k, &(v, e)) in piv.iter().enumerate() {
        let s = side(v);
        let mut rhs = target[s][e].clone();
        for (j, aj) in a.iter().enumerate() {
            rhs -= aj * &basis[j][s][e];
        }
        let p = &basis[k][s][e];
        if p.is_zero() {
            return Err(Error::DecompositionFailed(format!(
                "zero pivot for basis index {}",
                k + 1
            )));
        }
        a.push(rhs / p);
    }
    let mut residual = h.clone();
    for (k, ak) in a.iter().enumerate() {
        if !ak.is_zero() {
            let k = k as u32 + 1;
            residual = &residual - &fam.get(1, k)?.gf.scale(ak);
            coefficients.insert((1, k), ak.clone());
        }
    }
    Ok(BasisDecomposition {
        coefficients,
        order: count,
        residual,
    })
}

/// Coefficients `a_1..a_N` with `H = sum a_k H_1^k + residual`.
pub fn decompose_harmonic(fam: &Family, h: &RatFun, count: u32) -> Result<BasisDecomposition> {
    if !gf_laplacian(h, fam.walk().kernel())?.is_zero() {
        return Err(Error::NotHarmonic);
    }
    solve_harmonic(fam, h, count)
}

/// Coefficients over `{H_i^j : i <= n, j <= N}`; peels one Laplacian per layer.
pub fn decompose_polyharmonic(
    fam: &Family,
    h: &RatFun,
    n: u32,
    count: u32,
) -> Result<BasisDecomposition> {
    let k = fam.walk().kernel();
    if !gf_laplacian_pow(h, k, n)?.is_zero() {
        return Err(Error::NotPolyharmonicOfOrder(n));
    }
    layered(fam, h, n, count)
}

fn layered(fam: &Family, h: &RatFun, n: u32, count: u32) -> Result<BasisDecomposition> {
    if n <= 1 {
        return solve_harmonic(fam, h, count);
    }
    let lower = layered(fam, &gf_laplacian(h, fam.walk().kernel())?, n - 1, count)?;
    let mut lifted = RatFun::zero();
    let mut coefficients = BTreeMap::new();
    for (&(i, j), a) in &lower.coefficients {
        lifted = &lifted + &fam.get(i + 1, j)?.gf.scale(a);
        coefficients.insert((i + 1, j), a.clone());
    }
    let rest = solve_harmonic(fam, &(h - &lifted), count)?;
    coefficients.extend(rest.coefficients);
    Ok(BasisDecomposition {
        coefficients,
        order: count,
        residual: rest.residual,
    })
}

/// Smallest `n <= max` with `Delta^n H = 0`.
pub fn polyharmonic_order(h: &RatFun, fam: &Family, max: u32) -> Result<Option<u32>> {
    let k = fam.walk().kernel();
    let mut cur = h.clone();
    for n in 0..=max {
        if cur.is_zero() {
            return Ok(Some(n));
        }
        if n < max {
            cur = gf_laplacian(&cur, k)?;
        }
    }
    Ok(None)
}
