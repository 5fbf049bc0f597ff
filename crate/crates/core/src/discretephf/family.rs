use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::basis::harmonic_basis;
use super::decouple::{decouple, lift};
use super::polygf::PolyGF;
use crate::error::Result;
use crate::walkmodel::Walk;

/// Memoized family `H_n^k` of one walk, built by the lift chain.
#[derive(Debug)]
pub struct Family {
    walk: Walk,
    cache: Mutex<HashMap<(u32, u32), Arc<PolyGF>>>,
}

impl Family {
    pub fn new(walk: Walk) -> Family {
        Family {
            walk,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn walk(&self) -> &Walk {
        &self.walk
    }

    pub fn get(&self, n: u32, k: u32) -> Result<Arc<PolyGF>> {
        assert!(n >= 1 && k >= 1);
        if let Some(h) = self.cache.lock().unwrap().get(&(n, k)) {
            return Ok(h.clone());
        }
        // the lock is not held while computing: lower levels recurse into `get`
        let h = if n == 1 {
            Arc::new(harmonic_basis(&self.walk, k)?)
        } else {
            let prev = self.get(n - 1, k)?;
            let d = decouple(&self.walk, &prev)?;
            Arc::new(lift(&self.walk, &prev, &d)?)
        };
        let mut c = self.cache.lock().unwrap();
        Ok(c.entry((n, k)).or_insert(h).clone())
    }

    /// `H_1^k, ..., H_n^k`.
    pub fn chain(&self, n: u32, k: u32) -> Result<Vec<Arc<PolyGF>>> {
        (1..=n).map(|i| self.get(i, k)).collect()
    }
}
