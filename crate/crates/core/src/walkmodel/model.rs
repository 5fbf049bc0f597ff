use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{fmt_q, Q};

/// Cyclic order used by the non-degeneracy test.
const CYCLE: [(i64, i64); 8] = [
    (1, 1),
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, 1),
];

/// A validated small-step set with zero drift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepModel {
    name: String,
    weights: BTreeMap<(i64, i64), Q>,
}

impl StepModel {
    /// Validates raw weights; duplicate steps are summed, zero weights dropped.
    pub fn new(name: &str, raw: impl IntoIterator<Item = ((i64, i64), Q)>) -> Result<StepModel> {
        let mut weights: BTreeMap<(i64, i64), Q> = BTreeMap::new();
        for ((i, j), w) in raw {
            if !((-1..=1).contains(&i) && (-1..=1).contains(&j)) || (i, j) == (0, 0) {
                return Err(Error::NotSmallSteps(i, j));
            }
            *weights.entry((i, j)).or_insert_with(Q::zero) += w;
        }
        if let Some((&(i, j), _)) = weights.iter().find(|(_, w)| w.is_negative()) {
            return Err(Error::NegativeWeight(i, j));
        }
        weights.retain(|_, w| !w.is_zero());
        let m = StepModel {
            name: name.to_string(),
            weights,
        };
        let (dx, dy) = m.drift();
        if !dx.is_zero() || !dy.is_zero() {
            return Err(Error::NonzeroDrift(fmt_q(&dx), fmt_q(&dy)));
        }
        let zero = |k: usize| !m.weights.contains_key(&CYCLE[k % 8]);
        if (0..8).any(|k| zero(k) && zero(k + 1) && zero(k + 2)) {
            return Err(Error::Degenerate);
        }
        Ok(m)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn weight(&self, i: i64, j: i64) -> Q {
        self.weights.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn steps(&self) -> impl Iterator<Item = (&(i64, i64), &Q)> {
        self.weights.iter()
    }

    pub fn total_weight(&self) -> Q {
        self.weights.values().sum()
    }

    pub fn is_normalized(&self) -> bool {
        self.total_weight() == Q::from_integer(1.into())
    }

    pub fn drift(&self) -> (Q, Q) {
        let mut dx = Q::zero();
        let mut dy = Q::zero();
        for (&(i, j), w) in &self.weights {
            dx += w * Q::from_integer(i.into());
            dy += w * Q::from_integer(j.into());
        }
        (dx, dy)
    }

    /// `(sum i^2 p, sum i j p, sum j^2 p)`.
    pub fn moments(&self) -> (Q, Q, Q) {
        let mut m = (Q::zero(), Q::zero(), Q::zero());
        for (&(i, j), w) in &self.weights {
            m.0 += w * Q::from_integer((i * i).into());
            m.1 += w * Q::from_integer((i * j).into());
            m.2 += w * Q::from_integer((j * j).into());
        }
        m
    }

    /// The same step set with every weight replaced by `w`.
    pub fn with_uniform_weight(&self, w: Q) -> StepModel {
        StepModel {
            name: self.name.clone(),
            weights: self.weights.keys().map(|&k| (k, w.clone())).collect(),
        }
    }
}

/// Convenience wrapper with the usual signature.
pub fn validate_model(name: &str, raw: &[((i64, i64), Q)]) -> Result<StepModel> {
    StepModel::new(name, raw.iter().cloned())
}
