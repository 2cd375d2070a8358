//! Fixed-order perturbative expansion of the partition function.

use num_traits::One;

use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::rational::{q, Q};

use super::amplitude::Amplitude;
use super::graph::StrandedGraph;
use super::propagator::Propagator;
use super::wick::{check_wick_size, gaussian_expectation, ExpectationOptions};

#[derive(Clone, Debug, PartialEq)]
pub struct Interaction {
    /// Name of the coupling constant.
    pub name: String,
    pub graph: StrandedGraph,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    d: usize,
    grading: Grading,
    propagator: Propagator,
    interactions: Vec<Interaction>,
}

impl ModelSpec {
    /// Interactions must be connected and involve more than two tensors.
    pub fn new(d: usize, grading: Grading, propagator: Propagator, interactions: Vec<Interaction>) -> Result<Self> {
        if propagator.strands() != d {
            return Err(Error::StrandMismatch(d, propagator.strands()));
        }
        for i in &interactions {
            if i.graph.strand_count() != d {
                return Err(Error::StrandMismatch(d, i.graph.strand_count()));
            }
            if !i.graph.is_connected() {
                return Err(Error::InvalidGraph(format!("interaction {} is not connected", i.name)));
            }
            if i.graph.vertex_count() <= 2 {
                return Err(Error::InvalidGraph(format!("interaction {} has only {} tensors", i.name, i.graph.vertex_count())));
            }
        }
        Ok(ModelSpec {
            d,
            grading,
            propagator,
            interactions,
        })
    }

    pub fn strands(&self) -> usize {
        self.d
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn propagator(&self) -> &Propagator {
        &self.propagator
    }

    pub fn interactions(&self) -> &[Interaction] {
        &self.interactions
    }

    /// The same model at the other grading.
    pub fn dual(&self) -> ModelSpec {
        self.with_grading(self.grading.other())
    }

    pub fn with_grading(&self, grading: Grading) -> ModelSpec {
        ModelSpec { grading, ..self.clone() }
    }
}

/// One term `∏_S (1/p_S!) (λ_S / V_S)^{p_S} ⟨∏_S I_S^{p_S}⟩₀`, with `V_S`
/// the number of tensors in `S`. The couplings stay symbolic: `powers[k]`
/// is the exponent of the `k`-th coupling.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionTerm {
    pub powers: Vec<usize>,
    pub coefficient: Q,
    pub amplitude: Amplitude,
}

impl ExpansionTerm {
    /// `"g^2 h"`, or `"1"` for the empty term.
    pub fn monomial(&self, model: &ModelSpec) -> String {
        let parts: Vec<String> = self
            .powers
            .iter()
            .zip(model.interactions())
            .filter(|(&p, _)| p > 0)
            .map(|(&p, i)| if p == 1 { i.name.clone() } else { format!("{}^{p}", i.name) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// All exponent vectors with total at most `order`, by total then
/// lexicographically descending.
fn exponent_vectors(count: usize, order: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, remaining_slots: usize, total: usize, out: &mut Vec<Vec<usize>>) {
        if remaining_slots == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for p in (0..=total).rev() {
            prefix.push(p);
            rec(prefix, remaining_slots - 1, total - p, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=order {
        rec(&mut Vec::new(), count, total, &mut out);
    }
    out
}

/// Terms of the expansion with at most `order` interaction insertions.
pub fn perturbative_expansion(model: &ModelSpec, order: usize, options: &ExpectationOptions) -> Result<Vec<ExpansionTerm>> {
    let exponents = exponent_vectors(model.interactions.len(), order);
    for powers in &exponents {
        let vertices = powers.iter().zip(&model.interactions).map(|(&p, i)| p * i.graph.vertex_count()).sum();
        check_wick_size(vertices, model.propagator.len())?;
    }
    let mut out = Vec::new();
    for powers in exponents {
        let mut graph = StrandedGraph::empty(model.d);
        let mut coefficient = Q::one();
        for (&p, interaction) in powers.iter().zip(&model.interactions) {
            let per_vertex = Q::one() / q(interaction.graph.vertex_count() as i64);
            for k in 1..=p {
                graph = graph.disjoint_union(&interaction.graph)?;
                coefficient = coefficient * &per_vertex / q(k as i64);
            }
        }
        let amplitude = gaussian_expectation(&graph, &model.propagator, model.grading, options)?;
        out.push(ExpansionTerm {
            powers,
            coefficient,
            amplitude,
        });
    }
    Ok(out)
}
