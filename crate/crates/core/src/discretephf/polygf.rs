use std::sync::Arc;

use crate::exactalg::{RatFun, Var};

/// `F(x) + G(y) = M(x, y) mod K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoupler {
    pub f: RatFun,
    pub g: RatFun,
    pub source_m: RatFun,
}

/// A constructed `H_n^k` together with the chain that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyGF {
    pub model: String,
    pub n: u32,
    pub k: u32,
    pub gf: RatFun,
    /// `k pi/theta + 2(n - 1)`
    pub alpha_bound: u32,
    /// `H_{n-1}^k` and the decoupler of `xy H_{n-1}^k` used to lift it
    pub prev: Option<(Arc<PolyGF>, Decoupler)>,
}

impl PolyGF {
    /// Orders of the poles at `x = 1` and `y = 1`.
    pub fn pole_orders(&self) -> (u32, u32) {
        (
            self.gf.pole_order_at_one(Var::X),
            self.gf.pole_order_at_one(Var::Y),
        )
    }

    pub fn decoupler(&self) -> Option<&Decoupler> {
        self.prev.as_ref().map(|(_, d)| d)
    }

    /// Decouplers `F_1 .. F_{n-1}` in chain order.
    pub fn decoupler_chain(&self) -> Vec<Decoupler> {
        let mut out = vec![];
        let mut cur = self;
        while let Some((p, d)) = &cur.prev {
            out.push(d.clone());
            cur = p;
        }
        out.reverse();
        out
    }
}

pub fn alpha_bound(pi_over_theta: u32, n: u32, k: u32) -> u32 {
    k * pi_over_theta + 2 * (n - 1)
}
