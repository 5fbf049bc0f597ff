//! Coefficient grids and the pointwise Laplacian with Dirichlet boundary.

use num_traits::Zero;

use crate::discretephf::PolyGF;
use crate::error::{Error, Result};
use crate::exactalg::{RatFun, Q};
use crate::walkmodel::StepModel;

pub const DEFAULT_WINDOW: usize = 30;

/// `h(i, j)` for `0 <= i <= I`, `0 <= j <= J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffGrid {
    pub model: String,
    values: Vec<Vec<Q>>,
}

impl CoeffGrid {
    pub fn new(model: &str, values: Vec<Vec<Q>>) -> Result<CoeffGrid> {
        let w = values.first().map(|r| r.len()).unwrap_or(0);
        if w == 0 || values.iter().any(|r| r.len() != w) {
            return Err(Error::WindowTooSmall);
        }
        Ok(CoeffGrid {
            model: model.to_string(),
            values,
        })
    }

    pub fn from_fn(
        model: &str,
        imax: usize,
        jmax: usize,
        f: impl Fn(usize, usize) -> Q,
    ) -> CoeffGrid {
        let values = (0..=imax)
            .map(|i| (0..=jmax).map(|j| f(i, j)).collect())
            .collect();
        CoeffGrid {
            model: model.to_string(),
            values,
        }
    }

    /// Largest `i` index.
    pub fn imax(&self) -> usize {
        self.values.len() - 1
    }

    pub fn jmax(&self) -> usize {
        self.values[0].len() - 1
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.values[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.values[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(|v| v.is_zero())
    }

    /// First nonzero cell in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Q)> {
        for (i, r) in self.values.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                if !v.is_zero() {
                    return Some((i, j, v.clone()));
                }
            }
        }
        None
    }

    /// The sub-window `[0, imax] x [0, jmax]`.
    pub fn truncate(&self, imax: usize, jmax: usize) -> CoeffGrid {
        CoeffGrid::from_fn(&self.model, imax, jmax, |i, j| self.values[i][j].clone())
    }

    pub fn scale(&self, s: &Q) -> CoeffGrid {
        CoeffGrid::from_fn(&self.model, self.imax(), self.jmax(), |i, j| {
            &self.values[i][j] * s
        })
    }
}

pub fn expand_ratfun(model: &str, f: &RatFun, imax: usize, jmax: usize) -> Result<CoeffGrid> {
    CoeffGrid::new(model, f.series_coeffs(imax, jmax)?)
}

/// Coefficients of `x^i y^j` in `H.gf`.
pub fn expand(h: &PolyGF, imax: usize, jmax: usize) -> Result<CoeffGrid> {
    expand_ratfun(&h.model, &h.gf, imax, jmax)
}

/// `sum p_{u,v} h(i+u, j+v) - h(i,j)` on `[0, I-1] x [0, J-1]`; `h = 0` off the quadrant.
pub fn discrete_laplacian(g: &CoeffGrid, model: &StepModel) -> Result<CoeffGrid> {
    if g.imax() < 1 || g.jmax() < 1 {
        return Err(Error::WindowTooSmall);
    }
    let steps: Vec<((i64, i64), Q)> = model.steps().map(|(s, w)| (*s, w.clone())).collect();
    let (im, jm) = (g.imax() - 1, g.jmax() - 1);
    Ok(CoeffGrid::from_fn(&g.model, im, jm, |i, j| {
        let mut acc = -g.values[i][j].clone();
        for ((u, v), w) in &steps {
            let (a, b) = (i as i64 + u, j as i64 + v);
            if a >= 0 && b >= 0 {
                acc += w * &g.values[a as usize][b as usize];
            }
        }
        acc
    }))
}

pub fn discrete_laplacian_pow(g: &CoeffGrid, model: &StepModel, n: u32) -> Result<CoeffGrid> {
    let mut cur = g.clone();
    for _ in 0..n {
        cur = discrete_laplacian(&cur, model)?;
    }
    Ok(cur)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyharmonicReport {
    pub order: u32,
    pub verified: bool,
    /// `[0, I - n] x [0, J - n]`, where `Delta^n` is known exactly
    pub window: (usize, usize),
    pub first_failure: Option<(usize, usize, Q)>,
    /// `Delta^{n-1} != 0` on its window
    pub exact_order: bool,
}

/// Applies `Delta` `n` times and checks the zero grid; also checks `Delta^{n-1} != 0`.
pub fn check_polyharmonic(g: &CoeffGrid, model: &StepModel, n: u32) -> Result<PolyharmonicReport> {
    if n == 0 || g.imax() < n as usize || g.jmax() < n as usize {
        return Err(Error::WindowTooSmall);
    }
    let lower = discrete_laplacian_pow(g, model, n - 1)?;
    let top = discrete_laplacian(&lower, model)?;
    let first_failure = top.first_nonzero();
    Ok(PolyharmonicReport {
        order: n,
        verified: first_failure.is_none(),
        window: (top.imax(), top.jmax()),
        first_failure,
        exact_order: !lower.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretephf::Family;
    use crate::exactalg::qf;
    use crate::walkmodel::catalog;

    #[test]
    fn simple_harmonic_grid() {
        let m = catalog::catalog_model("simple").unwrap();
        let g = CoeffGrid::from_fn("simple", 4, 4, |i, j| qf(((i + 1) * (j + 1)) as i64, 1));
        let d = discrete_laplacian(&g, &m).unwrap();
        assert!(d.is_zero());
        assert_eq!((d.imax(), d.jmax()), (3, 3));
        let z = CoeffGrid::from_fn("simple", 2, 2, |_, _| Q::zero());
        assert!(discrete_laplacian(&z, &m).unwrap().is_zero());
        let thin = CoeffGrid::from_fn("simple", 0, 3, |_, _| Q::zero());
        assert_eq!(discrete_laplacian(&thin, &m), Err(Error::WindowTooSmall));
    }

    #[test]
    fn corrupted_cell_is_found() {
        let fam = Family::new(catalog::walk("tandem").unwrap());
        let h = fam.get(1, 1).unwrap();
        let mut g = expand(&h, 8, 8).unwrap();
        let r = check_polyharmonic(&g, fam.walk().model(), 1).unwrap();
        assert!(r.verified && r.exact_order);
        assert_eq!(g.get(0, 0), &qf(-81, 4));
        let v = g.get(3, 2) + &qf(1, 1);
        g.set(3, 2, v);
        let r = check_polyharmonic(&g, fam.walk().model(), 1).unwrap();
        assert!(!r.verified);
        let (i, j, _) = r.first_failure.unwrap();
        assert!((i as i64 - 3).abs() <= 1 && (j as i64 - 2).abs() <= 1);
    }
}
