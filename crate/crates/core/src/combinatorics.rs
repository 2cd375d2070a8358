//! Directed pairings on finite ground sets, the sign of a pair of pairings,
//! and the alternating-cycle (face) structure of their union.
//!
//! Ground sets are `{1, ..., n}` at the interface. Every element appears in
//! exactly one pair.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A ground set `{1, ..., size}` with `size` even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    size: usize,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if !size.is_multiple_of(2) {
            return Err(Error::InvalidPairing(format!(
                "ground set size {size} is odd"
            )));
        }
        Ok(GroundSet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of perfect matchings, `(size - 1)!!`.
    pub fn pairing_count(&self) -> u128 {
        (1..self.size as u128).step_by(2).product()
    }
}

/// An undirected perfect matching stored as a partner table (0-based inside).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    partner: Vec<usize>,
}

impl Matching {
    /// Builds from 1-based pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let dp = DirectedPairing::new(n, pairs.to_vec())?;
        Ok(dp.undirected())
    }

    /// Builds from a 0-based partner table.
    pub fn from_partner(partner: Vec<usize>) -> Result<Self> {
        let n = partner.len();
        for (i, &p) in partner.iter().enumerate() {
            if p >= n || p == i || partner[p] != i {
                return Err(Error::InvalidPairing(format!(
                    "partner table is not an involution without fixed points at {}",
                    i + 1
                )));
            }
        }
        Ok(Matching { partner })
    }

    pub(crate) fn from_partner_unchecked(partner: Vec<usize>) -> Self {
        Matching { partner }
    }

    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    /// 0-based partner of 0-based element `i`.
    pub fn partner0(&self, i: usize) -> usize {
        self.partner[i]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    /// 1-based pairs `(i, j)` with `i < j`, sorted by `i`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(i, &p)| i < p)
            .map(|(i, &p)| (i + 1, p + 1))
            .collect()
    }

    /// Canonical orientation: `(smaller, larger)` per pair, pairs in
    /// increasing order of the first element.
    pub fn canonical_orientation(&self) -> DirectedPairing {
        DirectedPairing {
            n: self.len(),
            pairs: self.pairs(),
        }
    }
}

/// An oriented perfect matching; the order of the pairs is part of the data.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectedPairing {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl DirectedPairing {
    /// Validates 1-based `pairs` over `{1..n}`.
    pub fn new(n: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        GroundSet::new(n)?;
        if pairs.len() * 2 != n {
            return Err(Error::InvalidPairing(format!(
                "{} pairs cannot cover {n} elements",
                pairs.len()
            )));
        }
        let mut seen = vec![false; n];
        for &(i, j) in &pairs {
            for x in [i, j] {
                if x == 0 || x > n {
                    return Err(Error::InvalidPairing(format!(
                        "element {x} outside 1..{n}"
                    )));
                }
                if std::mem::replace(&mut seen[x - 1], true) {
                    return Err(Error::InvalidPairing(format!(
                        "element {x} appears twice"
                    )));
                }
            }
        }
        Ok(DirectedPairing { n, pairs })
    }

    pub fn ground_set(&self) -> GroundSet {
        GroundSet { size: self.n }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn undirected(&self) -> Matching {
        let mut partner = vec![0; self.n];
        for &(i, j) in &self.pairs {
            partner[i - 1] = j - 1;
            partner[j - 1] = i - 1;
        }
        Matching { partner }
    }

    /// `i_1 i_2 ... i_n`: the pairs written out in order, 0-based.
    fn flattened0(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().flat_map(|&(i, j)| [i - 1, j - 1])
    }

    /// Whether `(i, j)` (1-based) is a pair oriented from `i` to `j`.
    pub fn points_from(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&(i, j))
    }

    /// The same pairing with pair `k` reversed.
    pub fn flip(&self, k: usize) -> Self {
        let mut out = self.clone();
        let (i, j) = out.pairs[k];
        out.pairs[k] = (j, i);
        out
    }

    /// Juxtaposition on the disjoint union `{1..n} ⊔ {n+1..n+m}`: the
    /// elements of `other` are shifted by `self.size()`.
    pub fn disjoint_union(&self, other: &DirectedPairing) -> DirectedPairing {
        let off = self.n;
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().map(|&(i, j)| (i + off, j + off)));
        DirectedPairing {
            n: self.n + other.n,
            pairs,
        }
    }

    /// Relabels element `x` as `map[x - 1]` (1-based images).
    pub fn relabel(&self, map: &[usize]) -> DirectedPairing {
        DirectedPairing {
            n: self.n,
            pairs: self
                .pairs
                .iter()
                .map(|&(i, j)| (map[i - 1], map[j - 1]))
                .collect(),
        }
    }
}

/// Sign of the permutation sending the flattened pair sequence of `m1` to
/// that of `m2`.
pub fn pairing_sign(m1: &DirectedPairing, m2: &DirectedPairing) -> Result<i32> {
    if m1.n != m2.n {
        return Err(Error::IncompatibleGroundSets(m1.n, m2.n));
    }
    let mut perm = vec![0usize; m1.n];
    for (a, b) in m1.flattened0().zip(m2.flattened0()) {
        perm[a] = b;
    }
    Ok(permutation_sign(&perm))
}

/// Sign of a 0-based permutation via its cycle decomposition.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// One alternating cycle of a two-colored pairing union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// 1-based elements in traversal order, starting at the smallest, first
    /// step along the first pairing.
    pub elements: Vec<usize>,
    /// Even number of edges pointing along the traversal direction.
    pub even: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FaceDecomposition {
    pub cycles: Vec<Face>,
}

impl FaceDecomposition {
    pub fn total(&self) -> usize {
        self.cycles.len()
    }

    pub fn even_count(&self) -> usize {
        self.cycles.iter().filter(|f| f.even).count()
    }

    pub fn odd_count(&self) -> usize {
        self.total() - self.even_count()
    }
}

/// Alternating cycles of the union of `m1` (color 1) and `m2` (color 2), each
/// tagged with the parity of its forward-pointing edges.
pub fn face_decomposition(m1: &DirectedPairing, m2: &DirectedPairing) -> Result<FaceDecomposition> {
    if m1.n != m2.n {
        return Err(Error::IncompatibleGroundSets(m1.n, m2.n));
    }
    let n = m1.n;
    // target[i] = Some(j) if the pair containing i is oriented i -> j
    let heads = |m: &DirectedPairing| {
        let mut partner = vec![0usize; n];
        let mut forward = vec![false; n];
        for &(i, j) in &m.pairs {
            partner[i - 1] = j - 1;
            partner[j - 1] = i - 1;
            forward[i - 1] = true;
        }
        (partner, forward)
    };
    let (p1, f1) = heads(m1);
    let (p2, f2) = heads(m2);
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut elements = Vec::new();
        let mut forward_edges = 0usize;
        let mut x = start;
        loop {
            seen[x] = true;
            elements.push(x + 1);
            let y = p1[x];
            if f1[x] {
                forward_edges += 1;
            }
            seen[y] = true;
            elements.push(y + 1);
            let z = p2[y];
            if f2[y] {
                forward_edges += 1;
            }
            x = z;
            if x == start {
                break;
            }
        }
        cycles.push(Face {
            elements,
            even: forward_edges.is_multiple_of(2),
        });
    }
    Ok(FaceDecomposition { cycles })
}

/// Lazy enumeration of all perfect matchings of `{1..n}` in lexicographic
/// order: the smallest unpaired element is matched to each larger unpaired
/// element in increasing order.
pub struct Pairings {
    n: usize,
    partner: Vec<Option<usize>>,
    stack: Vec<(usize, usize)>,
    state: PairingsState,
}

#[derive(PartialEq, Eq)]
enum PairingsState {
    Fresh,
    Running,
    Done,
}

pub fn all_pairings(ground: GroundSet) -> Pairings {
    Pairings {
        n: ground.size(),
        partner: vec![None; ground.size()],
        stack: Vec::new(),
        state: PairingsState::Fresh,
    }
}

impl Pairings {
    fn complete_greedily(&mut self) {
        loop {
            let Some(a) = (0..self.n).find(|&i| self.partner[i].is_none()) else {
                return;
            };
            let b = (a + 1..self.n)
                .find(|&i| self.partner[i].is_none())
                .expect("even ground set");
            self.link(a, b);
        }
    }

    fn link(&mut self, a: usize, b: usize) {
        self.partner[a] = Some(b);
        self.partner[b] = Some(a);
        self.stack.push((a, b));
    }

    fn current(&self) -> Matching {
        Matching::from_partner_unchecked(self.partner.iter().map(|p| p.unwrap()).collect())
    }
}

impl Iterator for Pairings {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        match self.state {
            PairingsState::Done => return None,
            PairingsState::Fresh => {
                self.state = PairingsState::Running;
                self.complete_greedily();
                return Some(self.current());
            }
            PairingsState::Running => {}
        }
        while let Some((a, b)) = self.stack.pop() {
            self.partner[a] = None;
            self.partner[b] = None;
            if let Some(c) = (b + 1..self.n).find(|&i| self.partner[i].is_none()) {
                self.link(a, c);
                self.complete_greedily();
                return Some(self.current());
            }
        }
        self.state = PairingsState::Done;
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn dp(n: usize, pairs: &[(usize, usize)]) -> DirectedPairing {
        DirectedPairing::new(n, pairs.to_vec()).unwrap()
    }

    #[test]
    fn sign_of_identical_and_flipped() {
        let m = dp(6, &[(1, 4), (2, 6), (5, 3)]);
        assert_eq!(pairing_sign(&m, &m).unwrap(), 1);
        assert_eq!(pairing_sign(&m, &m.flip(1)).unwrap(), -1);
    }

    #[test]
    fn sign_rejects_mismatched_ground_sets() {
        let a = dp(2, &[(1, 2)]);
        let b = dp(4, &[(1, 2), (3, 4)]);
        assert_eq!(
            pairing_sign(&a, &b),
            Err(Error::IncompatibleGroundSets(2, 4))
        );
        assert!(face_decomposition(&a, &b).is_err());
    }

    #[test]
    fn invalid_pairings_rejected() {
        assert!(DirectedPairing::new(3, vec![(1, 2)]).is_err());
        assert!(DirectedPairing::new(4, vec![(1, 2), (2, 3)]).is_err());
        assert!(DirectedPairing::new(4, vec![(1, 2), (3, 5)]).is_err());
        assert!(DirectedPairing::new(4, vec![(1, 2)]).is_err());
        assert!(Matching::from_partner(vec![1, 0, 2, 2]).is_err());
    }

    #[test]
    fn pairing_counts() {
        let counts: Vec<usize> = [0, 2, 4, 8]
            .iter()
            .map(|&n| all_pairings(GroundSet::new(n).unwrap()).count())
            .collect();
        assert_eq!(counts, vec![1, 1, 3, 105]);
        for n in [6, 10, 12] {
            let g = GroundSet::new(n).unwrap();
            let all: HashSet<Matching> = all_pairings(g).collect();
            assert_eq!(all.len() as u128, g.pairing_count());
            assert_eq!(all_pairings(g).count() as u128, g.pairing_count());
        }
    }

    #[test]
    fn pairings_in_lexicographic_order() {
        let first: Vec<Vec<(usize, usize)>> = all_pairings(GroundSet::new(4).unwrap())
            .map(|m| m.pairs())
            .collect();
        assert_eq!(
            first,
            vec![
                vec![(1, 2), (3, 4)],
                vec![(1, 3), (2, 4)],
                vec![(1, 4), (2, 3)],
            ]
        );
    }

    #[test]
    fn union_of_singletons() {
        let a = dp(2, &[(1, 2)]);
        assert_eq!(a.disjoint_union(&a), dp(4, &[(1, 2), (3, 4)]));
    }

    #[test]
    fn faces_of_identical_pairings() {
        let m = dp(4, &[(1, 2), (3, 4)]);
        let f = face_decomposition(&m, &m).unwrap();
        assert_eq!(f.total(), 2);
        assert_eq!(f.even_count(), 0);
        assert_eq!(pairing_sign(&m, &m).unwrap(), 1);
    }

    #[test]
    fn single_long_cycle() {
        for k in 1..=5 {
            let n = 2 * k;
            let m1 = DirectedPairing::new(n, (0..k).map(|i| (2 * i + 1, 2 * i + 2)).collect()).unwrap();
            let m2 = DirectedPairing::new(
                n,
                (0..k).map(|i| (2 * i + 2, (2 * i + 2) % n + 1)).collect(),
            )
            .unwrap();
            let f = face_decomposition(&m1, &m2).unwrap();
            assert_eq!(f.total(), 1);
            assert_eq!(f.cycles[0].elements.len(), n);
            let expect = if f.even_count().is_multiple_of(2) { 1 } else { -1 };
            assert_eq!(pairing_sign(&m1, &m2).unwrap(), expect);
        }
    }
}
