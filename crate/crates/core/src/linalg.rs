//! Exact sparse linear algebra over `Q`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Q;

pub type SparseVec = BTreeMap<usize, Q>;

/// `target += c · v`, dropping cancelled entries.
pub fn axpy(target: &mut SparseVec, c: &Q, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&k, x) in v {
        let entry = target.entry(k).or_insert_with(Q::zero);
        *entry += c * x;
        if entry.is_zero() {
            target.remove(&k);
        }
    }
}

/// An incrementally built row-echelon basis. Each stored row is normalized
/// to have a unit pivot and remembers how it was formed from the inserted
/// vectors.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts the next vector `v_k`. If it lies in the span of the earlier
    /// ones, returns `c` with `v_k = Σ_{i<k} c_i v_i` and leaves the basis
    /// unchanged.
    pub fn insert(&mut self, v: SparseVec) -> Option<SparseVec> {
        let k = self.inserted;
        self.inserted += 1;
        let mut v = v;
        let mut combo: SparseVec = BTreeMap::from([(k, Q::one())]);
        loop {
            let pivot = v.iter().find(|(p, _)| self.rows.contains_key(p)).map(|(p, x)| (*p, x.clone()));
            let Some((p, x)) = pivot else { break };
            let (row, row_combo) = &self.rows[&p];
            let c = -x;
            axpy(&mut v, &c, row);
            axpy(&mut combo, &c, row_combo);
        }
        match v.iter().next().map(|(p, x)| (*p, x.clone())) {
            None => {
                combo.remove(&k);
                Some(combo.into_iter().map(|(i, c)| (i, -c)).collect())
            }
            Some((p, x)) => {
                let inv = x.recip();
                let v = v.into_iter().map(|(i, y)| (i, y * &inv)).collect();
                let combo = combo.into_iter().map(|(i, y)| (i, y * &inv)).collect();
                self.rows.insert(p, (v, combo));
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, x)| (k, q(x))).collect()
    }

    #[test]
    fn finds_dependencies() {
        let mut e = Echelon::new();
        assert_eq!(e.insert(sv(&[(0, 1), (1, 2)])), None);
        assert_eq!(e.insert(sv(&[(1, 1), (2, 1)])), None);
        let c = e.insert(sv(&[(0, 2), (1, 7), (2, 3)])).unwrap();
        assert_eq!(c, sv(&[(0, 2), (1, 3)]));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.insert(SparseVec::new()), Some(SparseVec::new()));
    }
}
