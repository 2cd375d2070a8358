//! Stranded graphs: `2p` vertices of `D` nodes each, joined by a directed
//! pairing of the nodes (the strands). Node `(v, i)` (vertex `v`, slot `i`,
//! both 1-based) has the flat 1-based label `(v - 1) D + i`.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{DirectedPairing, Matching};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrandedGraph {
    d: usize,
    vertices: usize,
    strands: DirectedPairing,
}

/// A node as `(vertex, slot)`, both 1-based.
pub type Node = (usize, usize);

impl StrandedGraph {
    /// Strands are given as ordered node pairs; the order orients them.
    pub fn new(d: usize, vertices: usize, strands: &[(Node, Node)]) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidGraph("D must be positive".into()));
        }
        let flat = |(v, i): Node| -> Result<usize> {
            if v == 0 || v > vertices || i == 0 || i > d {
                return Err(Error::InvalidGraph(format!("node ({v}, {i}) outside {vertices} vertices of {d} slots")));
            }
            Ok((v - 1) * d + i)
        };
        let pairs = strands
            .iter()
            .map(|&(a, b)| Ok((flat(a)?, flat(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairing(d, vertices, DirectedPairing::new(d * vertices, pairs).map_err(|e| Error::InvalidGraph(e.to_string()))?)
    }

    pub fn from_pairing(d: usize, vertices: usize, strands: DirectedPairing) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidGraph("D must be positive".into()));
        }
        if strands.size() != d * vertices {
            return Err(Error::InvalidGraph(format!(
                "{} strand endpoints for {vertices} vertices of {d} slots",
                strands.size()
            )));
        }
        if vertices % 2 == 1 {
            return Err(Error::InvalidGraph(format!("odd number of vertices {vertices}")));
        }
        Ok(StrandedGraph { d, vertices, strands })
    }

    pub fn from_matching(d: usize, vertices: usize, m: &Matching) -> Result<Self> {
        Self::from_pairing(d, vertices, m.canonical_orientation())
    }

    /// The graph with no vertices.
    pub fn empty(d: usize) -> Self {
        StrandedGraph {
            d,
            vertices: 0,
            strands: DirectedPairing::new(0, Vec::new()).expect("empty pairing"),
        }
    }

    pub fn strand_count(&self) -> usize {
        self.d
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn node_count(&self) -> usize {
        self.d * self.vertices
    }

    pub fn strands(&self) -> &DirectedPairing {
        &self.strands
    }

    pub fn node(&self, flat: usize) -> Node {
        ((flat - 1) / self.d + 1, (flat - 1) % self.d + 1)
    }

    pub fn flat(&self, (v, i): Node) -> usize {
        (v - 1) * self.d + i
    }

    /// Strands as node pairs, in orientation order.
    pub fn node_pairs(&self) -> Vec<(Node, Node)> {
        self.strands.pairs().iter().map(|&(a, b)| (self.node(a), self.node(b))).collect()
    }

    /// Connected components of the vertex graph, each sorted, listed by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for &(a, b) in self.strands.pairs() {
            let (ra, rb) = (find(&mut parent, (a - 1) / self.d), find(&mut parent, (b - 1) / self.d));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 0..self.vertices {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v + 1);
        }
        groups.into_values().collect()
    }

    /// Connected with at least one vertex.
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Juxtaposition; vertices of `other` are renumbered after those of `self`.
    pub fn disjoint_union(&self, other: &StrandedGraph) -> Result<StrandedGraph> {
        if self.d != other.d {
            return Err(Error::StrandMismatch(self.d, other.d));
        }
        Ok(StrandedGraph {
            d: self.d,
            vertices: self.vertices + other.vertices,
            strands: self.strands.disjoint_union(&other.strands),
        })
    }

    /// Renames vertex `v` to `perm[v - 1]` (1-based images).
    pub fn relabel_vertices(&self, perm: &[usize]) -> Result<StrandedGraph> {
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (1..=self.vertices).collect::<Vec<_>>() {
            return Err(Error::InvalidGraph(format!("{perm:?} is not a permutation of the vertices")));
        }
        let map: Vec<usize> = (1..=self.node_count())
            .map(|x| {
                let (v, i) = self.node(x);
                self.flat((perm[v - 1], i))
            })
            .collect();
        Ok(StrandedGraph {
            d: self.d,
            vertices: self.vertices,
            strands: self.strands.relabel(&map),
        })
    }

    /// Reverses strand `k` (0-based position in the strand list).
    pub fn reorient(&self, k: usize) -> StrandedGraph {
        StrandedGraph {
            d: self.d,
            vertices: self.vertices,
            strands: self.strands.flip(k),
        }
    }

    /// The same undirected graph with canonical orientation.
    pub fn canonical(&self) -> StrandedGraph {
        StrandedGraph {
            d: self.d,
            vertices: self.vertices,
            strands: self.strands.undirected().canonical_orientation(),
        }
    }
}

/// `{"D": 3, "vertices": 4, "strands": [[[v, i], [w, j]], ...]}`
#[derive(Serialize, Deserialize)]
struct GraphJson {
    #[serde(rename = "D")]
    d: usize,
    vertices: usize,
    strands: Vec<[[usize; 2]; 2]>,
}

impl Serialize for StrandedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            d: self.d,
            vertices: self.vertices,
            strands: self.node_pairs().into_iter().map(|((v, i), (w, j))| [[v, i], [w, j]]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StrandedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let g = GraphJson::deserialize(de)?;
        let strands: Vec<(Node, Node)> = g.strands.iter().map(|[[v, i], [w, j]]| ((*v, *i), (*w, *j))).collect();
        StrandedGraph::new(g.d, g.vertices, &strands).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_components() {
        let g = StrandedGraph::new(2, 4, &[((1, 1), (2, 1)), ((1, 2), (2, 2)), ((3, 1), (4, 2)), ((3, 2), (4, 1))]).unwrap();
        assert_eq!(g.components(), vec![vec![1, 2], vec![3, 4]]);
        assert!(!g.is_connected());
        assert_eq!(g.node(6), (3, 2));
        assert!(StrandedGraph::new(2, 2, &[((1, 1), (2, 1)), ((1, 2), (3, 2))]).is_err());
        assert!(StrandedGraph::new(1, 3, &[((1, 1), (2, 1))]).is_err());
        assert!(StrandedGraph::empty(3).components().is_empty());
    }

    #[test]
    fn json_round_trip() {
        let g = StrandedGraph::new(2, 2, &[((1, 2), (1, 1)), ((2, 1), (2, 2))]).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"D":2,"vertices":2,"strands":[[[1,2],[1,1]],[[2,1],[2,2]]]}"#);
        assert_eq!(serde_json::from_str::<StrandedGraph>(&text).unwrap(), g);
        assert!(!g.is_connected());
    }

    #[test]
    fn relabel_and_union() {
        let g = StrandedGraph::new(1, 2, &[((1, 1), (2, 1))]).unwrap();
        let gg = g.disjoint_union(&g).unwrap();
        assert_eq!(gg.vertex_count(), 4);
        assert_eq!(gg.node_pairs(), vec![((1, 1), (2, 1)), ((3, 1), (4, 1))]);
        let r = gg.relabel_vertices(&[3, 1, 2, 4]).unwrap();
        assert_eq!(r.node_pairs(), vec![((3, 1), (1, 1)), ((2, 1), (4, 1))]);
        assert!(gg.relabel_vertices(&[1, 1, 2, 3]).is_err());
    }
}
