//! Exact excursion counts in the quarter plane and their leading asymptotics.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::discretephf::{decompose_polyharmonic, polyharmonic_order, BasisDecomposition, Family};
use crate::error::{Error, Result};
use crate::exactalg::rational::{factorial, to_f64};
use crate::exactalg::{q, MPoly, RatFun, Q};
use crate::walkmodel::StepModel;

/// `q(0, (i, j); n)` for `n <= N`; layer `n` is indexed `[i][j]` with `i, j <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub model: String,
    pub weighted: bool,
    layers: Vec<Vec<Vec<Q>>>,
}

impl CountTable {
    pub fn max_len(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn get(&self, i: usize, j: usize, n: usize) -> Q {
        self.layers
            .get(n)
            .and_then(|l| l.get(i))
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn layer(&self, n: usize) -> &[Vec<Q>] {
        &self.layers[n]
    }

    /// `(n, i, j, value)` for the nonzero entries, in that order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Q)> {
        self.layers.iter().enumerate().flat_map(|(n, l)| {
            l.iter().enumerate().flat_map(move |(i, r)| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(j, v)| (n, i, j, v))
            })
        })
    }
}

fn step_weights(model: &StepModel, weighted: bool) -> Vec<((i64, i64), Q)> {
    model
        .steps()
        .map(|(s, w)| (*s, if weighted { w.clone() } else { Q::one() }))
        .collect()
}

fn next_layer(prev: &[Vec<Q>], steps: &[((i64, i64), Q)]) -> Vec<Vec<Q>> {
    let n = prev.len();
    let mut next = vec![vec![Q::zero(); n + 1]; n + 1];
    for (i, row) in prev.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for ((u, w), p) in steps {
                let (a, b) = (i as i64 + u, j as i64 + w);
                if a >= 0 && b >= 0 {
                    next[a as usize][b as usize] += v * p;
                }
            }
        }
    }
    next
}

/// Dynamic programming over path length; paths leaving the quadrant are dropped.
/// `weighted = false` counts every step with weight 1.
pub fn count_paths(model: &StepModel, max_len: usize, weighted: bool) -> CountTable {
    let steps = step_weights(model, weighted);
    let mut layers = vec![vec![vec![Q::one()]]];
    for n in 1..=max_len {
        let next = next_layer(&layers[n - 1], &steps);
        layers.push(next);
    }
    CountTable {
        model: model.name().to_string(),
        weighted,
        layers,
    }
}

/// Same recursion, keeping only the layers listed in `keep`.
pub fn count_layers(
    model: &StepModel,
    max_len: usize,
    weighted: bool,
    keep: &[usize],
) -> Vec<(usize, Vec<Vec<Q>>)> {
    let steps = step_weights(model, weighted);
    let mut cur = vec![vec![Q::one()]];
    let mut out = vec![];
    for n in 0..=max_len {
        if n > 0 {
            cur = next_layer(&cur, &steps);
        }
        if keep.contains(&n) {
            out.push((n, cur.clone()));
        }
    }
    out
}

/// The simple walk count `(i+1)(j+1) n! (n+2)! / (m! (m+i+1)! (m+j+1)! (m+i+j+2)!)`, `m = (n-i-j)/2`.
pub fn simple_walk_exact(i: u64, j: u64, n: u64) -> BigInt {
    if n < i + j || (n - i - j) % 2 == 1 {
        return BigInt::zero();
    }
    let m = (n - i - j) / 2;
    let top = BigInt::from((i + 1) * (j + 1)) * factorial(n) * factorial(n + 2);
    let bot = factorial(m) * factorial(m + i + 1) * factorial(m + j + 1) * factorial(m + i + j + 2);
    top / bot
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymEntry {
    pub target: (usize, usize),
    /// extrapolated `v_1(i, j) / v_1(0, 0)`
    pub estimate: f64,
    pub estimate_exact: Q,
    pub reference: Option<Q>,
    pub rel_deviation: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymReport {
    pub entries: Vec<AsymEntry>,
    pub max_rel_deviation: Option<f64>,
}

/// Smallest `P > 0` with a nonzero excursion of length `P`, searched up to `cap`.
pub fn return_period(model: &StepModel, cap: usize) -> Option<usize> {
    let t = count_paths(model, cap, false);
    (1..=cap).find(|&n| !t.get(0, 0, n).is_zero())
}

/// Top extrapolation level: the largest multiple of `4 P` leaving room for a shift below `P`.
pub fn fit_level(max_len: usize, period: usize) -> usize {
    let p = period.max(1);
    (max_len.saturating_sub(p - 1) / (4 * p)) * 4 * p
}

/// `{n0, n0/2, n0/4} + s` for `s < period`: the lengths read by [`leading_asymptotics`].
pub fn fit_lengths(max_len: usize, period: usize) -> Vec<usize> {
    let n0 = fit_level(max_len, period);
    let mut out = vec![];
    for n in [n0 / 4, n0 / 2, n0] {
        out.extend((0..period.max(1)).map(|s| n + s));
    }
    out
}

/// Ratio sequences `q(i,j; n+s) / (q(0,0; n) g^s)` at lengths `n` that are multiples of the
/// return period, where `s < period` is the first shift reaching `(i, j)`; `g` is the growth rate.
/// Richardson extrapolation over `n0, n0/2, n0/4` removes the `1/n` and `1/n^2` terms.
pub fn leading_asymptotics(
    count: impl Fn(usize, usize, usize) -> Q,
    growth: &Q,
    period: usize,
    max_len: usize,
    targets: &[(usize, usize)],
    reference: Option<&dyn Fn(usize, usize) -> Q>,
) -> Result<AsymReport> {
    let period = period.max(1);
    let n0 = fit_level(max_len, period);
    if n0 < 8 * period {
        return Err(Error::InsufficientLength(8 * period + period - 1));
    }
    let mut entries = Vec::new();
    for &(i, j) in targets {
        let Some(par) = (0..period).find(|&t| !count(i, j, n0 + t).is_zero()) else {
            return Err(Error::InsufficientLength(n0 + period));
        };
        let ratio = |n: usize| -> Result<Q> {
            let r = count(0, 0, n);
            if r.is_zero() {
                return Err(Error::InsufficientLength(n + 1));
            }
            let gpow = crate::exactalg::rational::pow_q(growth, par as u32);
            Ok(count(i, j, n + par) / (r * gpow))
        };
        let (r1, r2, r4) = (ratio(n0)?, ratio(n0 / 2)?, ratio(n0 / 4)?);
        let a = q(2) * &r1 - &r2;
        let b = q(2) * &r2 - &r4;
        let est = (q(4) * a - b) / q(3);
        let refv = reference.map(|f| f(i, j));
        let dev = refv
            .as_ref()
            .map(|r| ((to_f64(&est) - to_f64(r)) / to_f64(r)).abs());
        entries.push(AsymEntry {
            target: (i, j),
            estimate: to_f64(&est),
            estimate_exact: est,
            reference: refv,
            rel_deviation: dev,
        });
    }
    let max_rel_deviation = entries
        .iter()
        .filter_map(|e| e.rel_deviation)
        .fold(None, |m: Option<f64>, d| Some(m.map_or(d, |m| m.max(d))));
    Ok(AsymReport {
        entries,
        max_rel_deviation,
    })
}

/// Leading asymptotics of the simple walk from the closed form, against `(i+1)(j+1)`.
pub fn simple_walk_asymptotics(max_len: usize, targets: &[(usize, usize)]) -> Result<AsymReport> {
    let refv = |i: usize, j: usize| q(((i + 1) * (j + 1)) as i64);
    leading_asymptotics(
        |i, j, n| Q::from_integer(simple_walk_exact(i as u64, j as u64, n as u64)),
        &q(4),
        2,
        max_len,
        targets,
        Some(&refv),
    )
}

/// `p(i) = sum_a c_a C(i + a, a)`.
fn binomial_basis(p: &[Q]) -> Vec<Q> {
    let mut rest = p.to_vec();
    let d = rest.len();
    let mut out = vec![Q::zero(); d];
    for a in (0..d).rev() {
        if rest[a].is_zero() {
            continue;
        }
        // C(i+a, a) = (i+1)...(i+a)/a!, leading coefficient 1/a!
        let c = &rest[a] * Q::from_integer(factorial(a as u64));
        let mut b = vec![Q::one()];
        for t in 1..=a {
            // multiply by (i + t)
            let mut nb = vec![Q::zero(); b.len() + 1];
            for (e, v) in b.iter().enumerate() {
                nb[e + 1] += v;
                nb[e] += v * Q::from_integer((t as i64).into());
            }
            b = nb;
        }
        let fa = Q::from_integer(factorial(a as u64));
        for (e, v) in b.iter().enumerate() {
            rest[e] -= &c * v / &fa;
        }
        out[a] = c;
    }
    out
}

/// `sum_{i,j} p(i, j) x^i y^j` for a polynomial `p`.
pub fn plain_gf(p: &MPoly) -> RatFun {
    let dx = p.degree(crate::exactalg::Var::X) as usize;
    // columns: coefficient polynomial in i for each power of j
    let mut grid: BTreeMap<(usize, usize), Q> = BTreeMap::new();
    let rows = p.coeffs_in(crate::exactalg::Var::Y);
    for (jp, row) in rows.iter().enumerate() {
        let mut c = row.coeffs().to_vec();
        c.resize(dx + 1, Q::zero());
        for (a, ca) in binomial_basis(&c).into_iter().enumerate() {
            if !ca.is_zero() {
                *grid.entry((a, jp)).or_insert_with(Q::zero) += ca;
            }
        }
    }
    // now p = sum_a C(i+a,a) g_a(j) with g_a(j) = sum_jp grid[a,jp] j^jp
    let dy = rows.len().max(1);
    let mut acc = RatFun::zero();
    for a in 0..=dx {
        let g: Vec<Q> = (0..dy)
            .map(|jp| grid.get(&(a, jp)).cloned().unwrap_or_else(Q::zero))
            .collect();
        for (b, cb) in binomial_basis(&g).into_iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            let den = &one_minus_pow(true, a as u32 + 1) * &one_minus_pow(false, b as u32 + 1);
            acc = &acc + &RatFun::new(MPoly::constant(cb), den).expect("nonzero");
        }
    }
    acc
}

fn one_minus_pow(x: bool, e: u32) -> MPoly {
    let t = if x { (1, 0, -1) } else { (0, 1, -1) };
    MPoly::from_int_terms(&[(0, 0, 1), t]).pow(e)
}

/// The asymptotic coefficients `v_1, v_2, v_3` of the simple walk, as polynomials in `(i, j)`.
pub fn simple_vp(p: u32) -> MPoly {
    let base = MPoly::from_int_terms(&[(0, 0, 1), (1, 0, 1)])
        * MPoly::from_int_terms(&[(0, 0, 1), (0, 1, 1)]);
    match p {
        1 => base,
        2 => {
            base * MPoly::from_int_terms(&[(0, 0, 15), (1, 0, 4), (2, 0, 2), (0, 1, 4), (0, 2, 2)])
        }
        3 => {
            let j2 = MPoly::from_int_terms(&[(0, 0, 21), (0, 1, 4), (0, 2, 2)])
                .shift(1, 0)
                .scale(&q(8));
            let j3 = MPoly::from_int_terms(&[(0, 0, 25), (0, 1, 4), (0, 2, 2)])
                .shift(2, 0)
                .scale(&q(4));
            let rest = MPoly::from_int_terms(&[
                (0, 0, 317),
                (3, 0, 16),
                (4, 0, 4),
                (0, 1, 168),
                (0, 2, 100),
                (0, 3, 16),
                (0, 4, 4),
            ]);
            base * (rest + j2 + j3)
        }
        _ => panic!("v_p is tabulated for p = 1, 2, 3"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VpResult {
    pub p: u32,
    pub gf: RatFun,
    pub decomposition: BasisDecomposition,
    /// coefficient of `H_p^1`, the only order-`p` term
    pub top: Q,
    pub structure_ok: bool,
}

/// Decomposes `V_p` over `{H_i^j}` and checks that its order-`p` part is a multiple of `H_p^1`.
pub fn vp_structure_check(fam: &Family, p: u32, count: u32) -> Result<VpResult> {
    let gf = plain_gf(&simple_vp(p));
    let order = polyharmonic_order(&gf, fam, p + 1)?;
    if order != Some(p) {
        return Err(Error::DecompositionFailed(format!(
            "V_{p} has polyharmonic order {order:?}"
        )));
    }
    let d = decompose_polyharmonic(fam, &gf, p, count)?;
    if !d.is_exact() {
        return Err(Error::DecompositionFailed(format!(
            "V_{p} leaves a residual"
        )));
    }
    let top = d.coeff(p, 1);
    let structure_ok = !top.is_zero() && d.coefficients.keys().all(|&(i, j)| i < p || j == 1);
    Ok(VpResult {
        p,
        gf,
        decomposition: d,
        top,
        structure_ok,
    })
}

/// The printed combinations `V_p = sum a_{i,j} H_i^j`, shown next to the solved ones.
pub fn printed_vp_combination(p: u32) -> Vec<((u32, u32), Q)> {
    let f = |n: i64, d: i64| Q::new(n.into(), d.into());
    match p {
        1 => vec![((1, 1), f(64, 1))],
        2 => vec![((2, 1), f(3, 8)), ((1, 2), f(-3, 8)), ((1, 1), f(60, 1))],
        3 => vec![
            ((3, 1), f(-24, 1)),
            ((2, 2), f(24, 1)),
            ((2, 1), f(72, 1)),
            ((1, 3), f(-30, 1)),
            ((1, 2), f(-72, 1)),
            ((1, 1), f(5072, 1)),
        ],
        _ => vec![],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qf;
    use crate::walkmodel::catalog;

    #[test]
    fn small_counts() {
        let s = catalog::catalog_model("simple").unwrap();
        let t = count_paths(&s, 4, false);
        assert_eq!(t.get(0, 0, 2), q(2));
        assert_eq!(t.get(0, 0, 4), q(10));
        assert_eq!(t.get(0, 0, 0), q(1));
        let tw = count_paths(&s, 4, true);
        assert_eq!(tw.get(0, 0, 4), qf(10, 256));
        let td = count_paths(&catalog::catalog_model("tandem").unwrap(), 3, false);
        assert_eq!(td.get(0, 0, 3), q(1));
        assert_eq!(simple_walk_exact(1, 0, 1), BigInt::from(1));
        assert_eq!(simple_walk_exact(0, 0, 3), BigInt::from(0));
    }

    #[test]
    fn binomial_gf() {
        let v1 = plain_gf(&simple_vp(1));
        let want = RatFun::new(
            MPoly::one(),
            &one_minus_pow(true, 2) * &one_minus_pow(false, 2),
        )
        .unwrap();
        assert_eq!(v1, want);
        let v2 = plain_gf(&simple_vp(2));
        let s = v2.series_coeffs(4, 4).unwrap();
        let p = simple_vp(2);
        for i in 0..=4u32 {
            for j in 0..=4u32 {
                assert_eq!(
                    s[i as usize][j as usize],
                    p.eval(&q(i as i64), &q(j as i64))
                );
            }
        }
    }
}
