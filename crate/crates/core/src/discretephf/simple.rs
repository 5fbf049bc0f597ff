use num_integer::binomial;

use super::basis::harmonic_basis;
use super::polygf::{alpha_bound, PolyGF};
use crate::error::{Error, Result};
use crate::exactalg::{RatFun, Q};
use crate::walkmodel::{catalog, Walk};

/// `s_m(j)` with `s_1 = 1` and `s_{l+1}(j) = sum_{i <= j} s_l(i)`.
pub fn s_table(m: u32, jmax: u32) -> Vec<u64> {
    let mut s = vec![1u64; jmax as usize + 1];
    for _ in 1..m {
        for j in 1..s.len() {
            s[j] += s[j - 1];
        }
    }
    s
}

/// `s_m(j) = C(j + m - 1, m - 1)`, used as a cross-check of the table.
pub fn s_closed(m: u32, j: u32) -> u64 {
    binomial((j + m - 1) as u64, (m - 1) as u64)
}

pub fn is_simple_walk(walk: &Walk) -> bool {
    catalog::catalog_model("simple")
        .map(|m| m.steps().eq(walk.model().steps()))
        .unwrap_or(false)
}

/// `H_m^k = 2^{m-1} w+^{m-1} (w - w+)/K * sum_j s_m(j) w+^j w^{k-j-1}` for the simple walk.
pub fn simple_walk_closed_form(walk: &Walk, m: u32, k: u32) -> Result<PolyGF> {
    if !is_simple_walk(walk) {
        return Err(Error::NotSimpleWalk);
    }
    assert!(m >= 1 && k >= 1);
    let c = walk.conformal()?;
    let h11 = harmonic_basis(walk, 1)?.gf;
    let w = &c.omega;
    let wp = &c.omega_xplus;
    let s = s_table(m, k - 1);
    let mut sum = RatFun::zero();
    for j in 0..k {
        let t = &wp.pow(j as i32)? * &w.pow((k - j - 1) as i32)?;
        sum = &sum + &t.scale(&Q::from_integer(s[j as usize].into()));
    }
    let pre = wp
        .pow(m as i32 - 1)?
        .scale(&Q::from_integer((1u64 << (m - 1)).into()));
    let gf = &(&pre * &h11) * &sum;
    Ok(PolyGF {
        model: walk.name().to_string(),
        n: m,
        k,
        gf,
        alpha_bound: alpha_bound(c.pi_over_theta, m, k),
        prev: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_recursion_is_binomial() {
        assert_eq!(s_table(2, 4), vec![1, 2, 3, 4, 5]);
        assert_eq!(s_table(3, 3), vec![1, 3, 6, 10]);
        for m in 1..6 {
            let t = s_table(m, 6);
            for j in 0..=6 {
                assert_eq!(t[j as usize], s_closed(m, j));
            }
        }
    }

    #[test]
    fn rejects_other_models() {
        let w = catalog::walk("tandem").unwrap();
        assert!(matches!(
            simple_walk_closed_form(&w, 1, 1),
            Err(Error::NotSimpleWalk)
        ));
    }
}
