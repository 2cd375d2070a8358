//! Wick expansion of invariants into two-colored stranded graphs, face
//! counting, per-graph amplitudes and Gaussian expectations.

use std::collections::BTreeMap;

use crate::combinatorics::{all_pairings, face_decomposition, pairing_sign, DirectedPairing, GroundSet, Matching};
use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::poly::{Poly, RatFunc};
use crate::rational::q;

use super::amplitude::Amplitude;
use super::graph::StrandedGraph;
use super::propagator::Propagator;

/// `{(1,2), (3,4), ..., (2p-1, 2p)}`
pub fn default_reference(vertices: usize) -> DirectedPairing {
    DirectedPairing::new(vertices, (0..vertices / 2).map(|k| (2 * k + 1, 2 * k + 2)).collect()).expect("even vertex count")
}

/// `M⃗^D`: a pairing of vertices promoted to the pairing of their nodes
/// slot by slot.
pub fn promote(m: &DirectedPairing, d: usize) -> DirectedPairing {
    let node = |v: usize, k: usize| (v - 1) * d + k;
    let pairs = (1..=d)
        .flat_map(|k| m.pairs().iter().map(move |&(i, j)| (node(i, k), node(j, k))))
        .collect();
    DirectedPairing::new(m.size() * d, pairs).expect("promotion of a valid pairing")
}

/// The data of an invariant written against a reference pairing of its
/// tensors: `I = (∏_{ref} T T) · ε(M⃗^D_ref, E⃗)^b · ∏_{E⃗} g_{kl}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantNormalForm {
    /// Vertices in the order their tensors appear in the monomial.
    pub tensor_order: Vec<usize>,
    /// `ε(M⃗^D_ref, E⃗(S⃗))`, to be raised to the power `b`.
    pub sign: i32,
    /// Oriented strands `(k, l)`, each contributing `g_{kl}`.
    pub contractions: Vec<(usize, usize)>,
}

pub fn invariant_sign_normal_form(graph: &StrandedGraph, reference: &DirectedPairing) -> Result<InvariantNormalForm> {
    if reference.size() != graph.vertex_count() {
        return Err(Error::IncompatibleGroundSets(reference.size(), graph.vertex_count()));
    }
    let promoted = promote(reference, graph.strand_count());
    Ok(InvariantNormalForm {
        tensor_order: reference.pairs().iter().flat_map(|&(i, j)| [i, j]).collect(),
        sign: pairing_sign(&promoted, graph.strands())?,
        contractions: graph.strands().pairs().to_vec(),
    })
}

/// An invariant's stranded graph completed by propagator edges.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoColoredGraph {
    pub graph: StrandedGraph,
    pub reference: DirectedPairing,
    /// Pairing of the vertices, each pair `(i, j)` read as `C^{a^i a^j}`.
    pub m0: DirectedPairing,
    /// Propagator term used on each pair of `m0`, in order.
    pub terms: Vec<usize>,
    /// Color-0 strands on the nodes: the union of the chosen terms.
    pub m_tot: DirectedPairing,
    /// `γ_G = ∏_e γ_{M^e}` as a function of `z`.
    pub weight: RatFunc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceCounts {
    pub total: usize,
    pub even: usize,
    pub odd: usize,
}

fn total_pairing(d: usize, m0: &DirectedPairing, propagator: &Propagator, terms: &[usize]) -> DirectedPairing {
    let node = |v: usize, k: usize| (v - 1) * d + k;
    let mut pairs = Vec::with_capacity(m0.size() * d / 2);
    for (&(i, j), &t) in m0.pairs().iter().zip(terms) {
        let place = |x: usize| if x <= d { node(i, x) } else { node(j, x - d) };
        for &(x, y) in propagator.terms()[t].orientation.pairs() {
            pairs.push((place(x), place(y)));
        }
    }
    DirectedPairing::new(m0.size() * d, pairs).expect("union of propagator pairings")
}

/// Largest number of two-colored graphs a single Wick sum may visit.
pub const MAX_WICK_GRAPHS: u128 = 10_000_000;

/// `(2p-1)!! k^p`, saturating.
fn wick_graph_count(vertices: usize, terms: usize) -> u128 {
    let pairings = (1..vertices).step_by(2).fold(1u128, |acc, k| acc.saturating_mul(k as u128));
    (0..vertices / 2).fold(pairings, |acc, _| acc.saturating_mul(terms as u128))
}

fn check_inputs(graph: &StrandedGraph, propagator: &Propagator, reference: &DirectedPairing) -> Result<()> {
    if graph.strand_count() != propagator.strands() && graph.vertex_count() > 0 {
        return Err(Error::StrandMismatch(graph.strand_count(), propagator.strands()));
    }
    if reference.size() != graph.vertex_count() {
        return Err(Error::IncompatibleGroundSets(reference.size(), graph.vertex_count()));
    }
    check_wick_size(graph.vertex_count(), propagator.len())
}

/// Errors when a Wick sum over `vertices` tensors with `terms` propagator
/// terms would exceed [`MAX_WICK_GRAPHS`].
pub fn check_wick_size(vertices: usize, terms: usize) -> Result<()> {
    let count = wick_graph_count(vertices, terms);
    if count > MAX_WICK_GRAPHS {
        return Err(Error::CapExceeded {
            what: "Wick graphs (2p-1)!! k^p",
            size: usize::try_from(count).unwrap_or(usize::MAX),
            cap: MAX_WICK_GRAPHS as usize,
        });
    }
    Ok(())
}

/// Odometer over term choices for `p` edges.
fn term_choices(p: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if k == 0 && p > 0 { 0 } else { k.pow(p as u32) };
    (0..total).map(move |mut x| {
        let mut out = vec![0; p];
        for slot in out.iter_mut().rev() {
            *slot = x % k;
            x /= k;
        }
        out
    })
}

/// Every vertex pairing `M₀` (canonically oriented, lexicographic order)
/// combined with every choice of propagator term per edge.
pub fn wick_expand(graph: &StrandedGraph, propagator: &Propagator, reference: &DirectedPairing) -> Result<Vec<TwoColoredGraph>> {
    check_inputs(graph, propagator, reference)?;
    let d = graph.strand_count();
    let p = graph.vertex_count() / 2;
    let mut out = Vec::new();
    for m in all_pairings(GroundSet::new(graph.vertex_count())?) {
        let m0 = m.canonical_orientation();
        for terms in term_choices(p, propagator.len()) {
            let weight = terms
                .iter()
                .fold(RatFunc::one(), |acc, &t| &acc * &propagator.terms()[t].weight);
            out.push(TwoColoredGraph {
                graph: graph.clone(),
                reference: reference.clone(),
                m_tot: total_pairing(d, &m0, propagator, &terms),
                m0: m0.clone(),
                terms,
                weight,
            });
        }
    }
    Ok(out)
}

pub fn count_faces(g: &TwoColoredGraph) -> Result<FaceCounts> {
    let faces = face_decomposition(&g.m_tot, g.graph.strands())?;
    Ok(FaceCounts {
        total: faces.total(),
        even: faces.even_count(),
        odd: faces.odd_count(),
    })
}

/// The sign and face count of one graph, obtained by multiplying out every
/// factor of the expansion: the invariant's reference sign, the Wick sign
/// of the tensor reordering, the propagators' own signs and the graded
/// symmetry picked up around odd faces. Returns `(sign, F)`; the amplitude
/// is `sign · γ_G · N^F`.
fn sign_and_faces(graph: &StrandedGraph, reference: &DirectedPairing, m0: &DirectedPairing, m_tot: &DirectedPairing, grading: Grading) -> Result<(i32, usize)> {
    let d = graph.strand_count();
    let faces = face_decomposition(m_tot, graph.strands())?;
    if !grading.is_odd() {
        return Ok((1, faces.total()));
    }
    let invariant = pairing_sign(&promote(reference, d), graph.strands())?;
    let wick = pairing_sign(reference, m0)?.pow(d as u32);
    let propagators = pairing_sign(m_tot, &promote(m0, d))?;
    let odd_faces = if faces.odd_count() % 2 == 0 { 1 } else { -1 };
    Ok((invariant * wick * propagators * odd_faces, faces.total()))
}

pub fn graph_amplitude(g: &TwoColoredGraph, grading: Grading) -> Result<Amplitude> {
    let (sign, faces) = sign_and_faces(&g.graph, &g.reference, &g.m0, &g.m_tot, grading)?;
    let weight = if grading.is_odd() { g.weight.reflect() } else { g.weight.clone() };
    let value = &weight * &RatFunc::from_poly(Poly::monomial(q(sign as i64), faces));
    Ok(Amplitude::new(grading, value))
}

/// `γ_G ((-1)^b N)^F`, the closed form of a graph's amplitude.
pub fn face_formula_amplitude(g: &TwoColoredGraph, grading: Grading) -> Result<Amplitude> {
    let faces = count_faces(g)?.total;
    let weight = if grading.is_odd() { g.weight.reflect() } else { g.weight.clone() };
    let z = Poly::monomial(q(grading.power(-1) as i64), 1);
    Ok(Amplitude::new(grading, &weight * &RatFunc::from_poly(z.pow(faces as u32))))
}

#[derive(Clone, Debug)]
pub struct ExpectationOptions {
    /// Reference pairing of the tensors; defaults to `{(1,2),(3,4),...}`.
    pub reference: Option<DirectedPairing>,
    pub threads: usize,
}

impl Default for ExpectationOptions {
    fn default() -> Self {
        ExpectationOptions {
            reference: None,
            threads: 1,
        }
    }
}

/// `Σ sign · N^F` per sorted multiset of propagator terms.
type Partial = BTreeMap<Vec<usize>, Poly>;

fn accumulate(graph: &StrandedGraph, propagator: &Propagator, reference: &DirectedPairing, m0s: &[Matching], grading: Grading) -> Result<Partial> {
    let d = graph.strand_count();
    let p = graph.vertex_count() / 2;
    let mut partial: Partial = BTreeMap::new();
    for m in m0s {
        let m0 = m.canonical_orientation();
        for terms in term_choices(p, propagator.len()) {
            let m_tot = total_pairing(d, &m0, propagator, &terms);
            let (sign, faces) = sign_and_faces(graph, reference, &m0, &m_tot, grading)?;
            let mut key = terms;
            key.sort_unstable();
            let entry = partial.entry(key).or_insert_with(Poly::zero);
            *entry = &*entry + &Poly::monomial(q(sign as i64), faces);
        }
    }
    Ok(partial)
}

/// `⟨I_S⟩₀` as an exact function of `N`.
pub fn gaussian_expectation(graph: &StrandedGraph, propagator: &Propagator, grading: Grading, options: &ExpectationOptions) -> Result<Amplitude> {
    let reference = options.reference.clone().unwrap_or_else(|| default_reference(graph.vertex_count()));
    check_inputs(graph, propagator, &reference)?;
    let m0s: Vec<Matching> = all_pairings(GroundSet::new(graph.vertex_count())?).collect();
    let threads = options.threads.max(1).min(m0s.len().max(1));
    let partials: Vec<Partial> = if threads == 1 {
        vec![accumulate(graph, propagator, &reference, &m0s, grading)?]
    } else {
        let chunk = m0s.len().div_ceil(threads);
        std::thread::scope(|scope| {
            let handles: Vec<_> = m0s
                .chunks(chunk)
                .map(|part| scope.spawn(|| accumulate(graph, propagator, &reference, part, grading)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect::<Result<Vec<_>>>()
        })?
    };
    let mut merged: Partial = BTreeMap::new();
    for part in partials {
        for (key, poly) in part {
            let entry = merged.entry(key).or_insert_with(Poly::zero);
            *entry = &*entry + &poly;
        }
    }
    let weights: Vec<RatFunc> = (0..propagator.len()).map(|t| propagator.weight_in_n(t, grading)).collect();
    let mut total = RatFunc::zero();
    for (key, poly) in merged {
        if poly.is_zero() {
            continue;
        }
        let gamma = key.iter().fold(RatFunc::one(), |acc, &t| &acc * &weights[t]);
        total = &total + &(&gamma * &RatFunc::from_poly(poly));
    }
    Ok(Amplitude::new(grading, total))
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub orthogonal: Amplitude,
    pub symplectic: Amplitude,
    pub holds: bool,
}

/// Whether `⟨I_S⟩₀` at `b = 1` equals the `b = 0` result with `N ↦ -N`.
pub fn duality_check(graph: &StrandedGraph, propagator: &Propagator, options: &ExpectationOptions) -> Result<DualityReport> {
    let orthogonal = gaussian_expectation(graph, propagator, Grading::Orthogonal, options)?;
    let symplectic = gaussian_expectation(graph, propagator, Grading::Symplectic, options)?;
    let holds = symplectic.value() == orthogonal.dual().value();
    Ok(DualityReport {
        orthogonal,
        symplectic,
        holds,
    })
}
