//! Enumeration of connected stranded graphs up to isomorphism.

use std::collections::BTreeMap;

use crate::combinatorics::{all_pairings, GroundSet, Matching};
use crate::error::{Error, Result};
use crate::young::Permutation;

use super::graph::StrandedGraph;

/// Which relabelings identify two invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotSymmetry {
    /// Vertex relabelings only; slots keep their positions.
    None,
    /// Vertex relabelings and arbitrary permutations of the slots at each
    /// vertex (a fully symmetric propagator).
    Full,
}

/// Bound on `(2pD - 1)!! · (2p)!`, the work of the canonical-form search.
pub const DEFAULT_ENUMERATION_CAP: u128 = 50_000_000;

fn double_factorial(n: usize) -> u128 {
    (1..n).step_by(2).map(|k| k as u128).product::<u128>().max(1)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product::<u128>().max(1)
}

/// Sorted 1-based pairs of the matching after moving vertex `v` to `perm(v)`.
fn relabeled_pairs(m: &Matching, d: usize, perm: &Permutation) -> Vec<(usize, usize)> {
    let map = |x: usize| perm.apply(x / d) * d + x % d;
    let mut pairs: Vec<(usize, usize)> = m
        .pairs()
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (map(a - 1) + 1, map(b - 1) + 1);
            (a.min(b), a.max(b))
        })
        .collect();
    pairs.sort_unstable();
    pairs
}

/// Upper triangle of the vertex multigraph (strand counts, loops included)
/// after relabeling.
fn relabeled_adjacency(m: &Matching, d: usize, vertices: usize, perm: &Permutation) -> Vec<usize> {
    let mut counts = vec![0usize; vertices * vertices];
    for (a, b) in m.pairs() {
        let (v, w) = (perm.apply((a - 1) / d), perm.apply((b - 1) / d));
        counts[v.min(w) * vertices + v.max(w)] += 1;
    }
    counts
}

fn is_connected(m: &Matching, d: usize, vertices: usize) -> bool {
    let mut seen = vec![false; vertices];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for k in 0..d {
            let w = m.partner0(v * d + k) / d;
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// One representative per isomorphism class of connected stranded graphs
/// with `vertices` tensors of order `d`, ordered by canonical form. Each
/// representative is the lexicographically smallest labeled form in its
/// class, canonically oriented.
pub fn enumerate_invariants(d: usize, vertices: usize, symmetry: SlotSymmetry, cap: u128) -> Result<Vec<StrandedGraph>> {
    if d == 0 || vertices == 0 || vertices % 2 == 1 {
        return Err(Error::InvalidGraph(format!("cannot build graphs with D = {d} and {vertices} vertices")));
    }
    let nodes = d * vertices;
    let work = double_factorial(nodes).saturating_mul(factorial(vertices));
    if work > cap {
        return Err(Error::CapExceeded {
            what: "enumeration work (2pD-1)!! (2p)!",
            size: usize::try_from(work).unwrap_or(usize::MAX),
            cap: usize::try_from(cap).unwrap_or(usize::MAX),
        });
    }
    let perms = Permutation::all(vertices);
    let mut classes: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    for m in all_pairings(GroundSet::new(nodes)?) {
        if !is_connected(&m, d, vertices) {
            continue;
        }
        let labeled = perms.iter().map(|g| relabeled_pairs(&m, d, g)).min().expect("nonempty group");
        let key = match symmetry {
            SlotSymmetry::None => labeled.iter().flat_map(|&(a, b)| [a, b]).collect(),
            SlotSymmetry::Full => perms
                .iter()
                .map(|g| relabeled_adjacency(&m, d, vertices, g))
                .min()
                .expect("nonempty group"),
        };
        classes.entry(key).or_insert(labeled);
    }
    classes
        .into_values()
        .map(|pairs| StrandedGraph::from_matching(d, vertices, &Matching::from_pairs(nodes, &pairs)?))
        .collect()
}
