//! Propagators: weighted sums of pairings of the `2D` indices `a_1..a_D`
//! (top row) and `b_1..b_D` (bottom row), each with a chosen orientation.
//! Weights are rational functions of the loop weight `z`; the grading picks
//! `z = N` or `z = -N`.

use crate::brauer::{BrauerDiagram, BrauerElement};
use crate::combinatorics::DirectedPairing;
use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::poly::{Poly, RatFunc};
use crate::rational::Q;
use crate::representation::{antisymmetrizer_formal, symmetric_traceless_formal};

#[derive(Clone, Debug, PartialEq)]
pub struct PropagatorTerm {
    pub diagram: BrauerDiagram,
    pub orientation: DirectedPairing,
    pub weight: RatFunc,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Propagator {
    d: usize,
    terms: Vec<PropagatorTerm>,
}

impl Propagator {
    pub fn new(d: usize, terms: Vec<PropagatorTerm>) -> Result<Self> {
        for t in &terms {
            if t.diagram.strands() != d {
                return Err(Error::StrandMismatch(d, t.diagram.strands()));
            }
            if t.orientation.undirected() != t.diagram.matching() {
                return Err(Error::InvalidPropagator(format!("orientation does not match diagram {}", t.diagram)));
            }
            if t.weight.is_zero() {
                return Err(Error::InvalidPropagator(format!("zero weight on diagram {}", t.diagram)));
            }
        }
        Ok(Propagator { d, terms })
    }

    /// Terms in canonical orientation; zero weights are dropped.
    pub fn from_weights(d: usize, weights: impl IntoIterator<Item = (BrauerDiagram, RatFunc)>) -> Result<Self> {
        let terms = weights
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(diagram, weight)| PropagatorTerm {
                orientation: diagram.matching().canonical_orientation(),
                diagram,
                weight,
            })
            .collect();
        Self::new(d, terms)
    }

    pub fn identity(d: usize) -> Self {
        Self::from_weights(d, [(BrauerDiagram::identity(d), RatFunc::one())]).expect("valid")
    }

    /// Constant weights from an element with numeric loop weight.
    pub fn from_numeric(e: &BrauerElement<Q>) -> Result<Self> {
        Self::from_weights(e.strands(), e.terms().map(|(k, c)| (k.clone(), RatFunc::constant(c.clone()))))
    }

    pub fn from_formal(e: &BrauerElement<Poly>) -> Result<Self> {
        Self::from_weights(e.strands(), e.terms().map(|(k, c)| (k.clone(), RatFunc::from_poly(c.clone()))))
    }

    pub fn from_rational(e: &BrauerElement<RatFunc>) -> Result<Self> {
        Self::from_weights(e.strands(), e.terms().map(|(k, c)| (k.clone(), c.clone())))
    }

    /// `∏_f (1 - A_D / ((z + 2(D-f-1)) f)) · c_S / D!`: the symmetric
    /// traceless projector for `b = 0`, its antisymmetric dual for `b = 1`.
    pub fn symmetric_traceless(d: usize) -> Result<Self> {
        Self::from_rational(&symmetric_traceless_formal(d)?)
    }

    /// `c_∧ / D!`: antisymmetric for `b = 0`, symmetric for `b = 1`.
    pub fn antisymmetric(d: usize) -> Result<Self> {
        Self::from_formal(&antisymmetrizer_formal(d))
    }

    pub fn strands(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> &[PropagatorTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Weight of term `t` as a function of `N` at the given grading.
    pub fn weight_in_n(&self, t: usize, grading: Grading) -> RatFunc {
        let w = &self.terms[t].weight;
        if grading.is_odd() {
            w.reflect()
        } else {
            w.clone()
        }
    }

    /// The same propagator with pair `k` of term `t` reversed.
    pub fn reorient(&self, t: usize, k: usize) -> Self {
        let mut out = self.clone();
        out.terms[t].orientation = out.terms[t].orientation.flip(k);
        out
    }

    /// The Brauer element `Σ γ_M M` with `z` formal.
    pub fn to_element(&self) -> BrauerElement<RatFunc> {
        let mut e = BrauerElement::zero(self.d, RatFunc::x());
        for t in &self.terms {
            e.add_term(t.diagram.clone(), t.weight.clone());
        }
        e
    }
}
