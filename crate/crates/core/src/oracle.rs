//! Brute-force Gaussian expectations over explicit tensor components.
//!
//! Nothing here goes through faces or two-colored graphs. The covariance is
//! assembled entry by entry from the propagator, invariants are summed over
//! every index assignment, and moments come either from the sum over
//! pairings (commuting components) or from Berezin integration in an
//! explicit exterior algebra (anticommuting components). In the fermionic
//! case every sign is produced by the order of exterior multiplication.

#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::linalg::Echelon;
use crate::model::{Propagator, StrandedGraph};
use crate::rational::{q, Q};

/// Largest number of anticommuting generators the exterior algebra holds.
pub const MAX_GENERATORS: usize = 16;
/// Largest number of tensor components `N^D`.
pub const MAX_COMPONENTS: usize = 256;
/// Largest number of nonzero index assignments summed for one invariant.
pub const MAX_ASSIGNMENTS: usize = 1 << 24;

/// Sign of the permutation taking `from` to `to`, two arrangements of the
/// same distinct values, by counting inversions.
fn arrangement_sign(from: &[usize], to: &[usize]) -> i32 {
    let position: HashMap<usize, usize> = from.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let image: Vec<usize> = to.iter().map(|x| position[x]).collect();
    let mut inversions = 0usize;
    for i in 0..image.len() {
        for j in i + 1..image.len() {
            if image[i] > image[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn flatten(pairs: &[(usize, usize)]) -> Vec<usize> {
    pairs.iter().flat_map(|&(x, y)| [x, y]).collect()
}

/// The invariant form on `C^N`: `δ_{ij}` or the standard symplectic form,
/// with `ω_{i, i+N/2} = 1`.
#[derive(Clone, Copy, Debug)]
struct Form {
    n: usize,
    grading: Grading,
}

impl Form {
    fn new(n: usize, grading: Grading) -> Result<Self> {
        if n == 0 {
            return Err(Error::IndexOutOfRange("N must be positive".into()));
        }
        if grading.is_odd() && n % 2 == 1 {
            return Err(Error::OddSymplecticDimension(n));
        }
        Ok(Form { n, grading })
    }

    fn lower(&self, i: usize, j: usize) -> i64 {
        match self.grading {
            Grading::Orthogonal => i64::from(i == j),
            Grading::Symplectic => {
                let h = self.n / 2;
                if i < h && j == i + h {
                    1
                } else if i >= h && j + h == i {
                    -1
                } else {
                    0
                }
            }
        }
    }

    /// The inverse form, `g^{ij} g_{jk} = δ^i_k`.
    fn upper(&self, i: usize, j: usize) -> i64 {
        match self.grading {
            Grading::Orthogonal => self.lower(i, j),
            Grading::Symplectic => -self.lower(i, j),
        }
    }
}

/// The propagator as an explicit `N^D × N^D` matrix `C^{AB}`. Multi-indices
/// are little-endian base-`N` digit strings, the first slot least
/// significant.
#[derive(Clone, Debug, PartialEq)]
pub struct ExplicitCovariance {
    n: usize,
    d: usize,
    grading: Grading,
    entries: Vec<Vec<Q>>,
}

impl ExplicitCovariance {
    /// Substitutes concrete indices into every propagator term. Term
    /// weights are evaluated at the loop weight of the grading. Fails if the
    /// result is not symmetric (`bD` even) or antisymmetric (`bD` odd).
    pub fn new(propagator: &Propagator, n: usize, grading: Grading) -> Result<Self> {
        let d = propagator.strands();
        let form = Form::new(n, grading)?;
        let size = component_count(n, d)?;
        let z = grading.loop_weight(n);
        let reference: Vec<usize> = (1..=d).flat_map(|k| [k, d + k]).collect();
        let mut entries = vec![vec![Q::zero(); size]; size];
        for term in propagator.terms() {
            let gamma = term
                .weight
                .eval(&z)
                .ok_or_else(|| Error::DegenerateN(format!("propagator weight has a pole at N = {n}")))?;
            let pairs = term.orientation.pairs();
            let sign = if grading.is_odd() { arrangement_sign(&reference, &flatten(pairs)) } else { 1 };
            let gamma = gamma * q(sign as i64);
            for a in 0..size {
                for b in 0..size {
                    let mut w = digits(a, n, d);
                    w.extend(digits(b, n, d));
                    let product: i64 = pairs.iter().map(|&(x, y)| form.upper(w[x - 1], w[y - 1])).product();
                    if product != 0 {
                        entries[a][b] += &gamma * q(product);
                    }
                }
            }
        }
        let cov = ExplicitCovariance { n, d, grading, entries };
        let parity = if cov.is_odd() { -Q::one() } else { Q::one() };
        for a in 0..size {
            for b in 0..size {
                if cov.entries[b][a] != &parity * &cov.entries[a][b] {
                    return Err(Error::InvalidPropagator(format!(
                        "covariance is not {}symmetric",
                        if cov.is_odd() { "anti" } else { "" }
                    )));
                }
            }
        }
        Ok(cov)
    }

    /// Wraps an explicit matrix, for tests and small hand-made cases.
    pub fn from_matrix(entries: Vec<Vec<Q>>, odd: bool) -> Result<Self> {
        let size = entries.len();
        if entries.iter().any(|row| row.len() != size) {
            return Err(Error::InvalidPropagator("covariance matrix is not square".into()));
        }
        let grading = if odd { Grading::Symplectic } else { Grading::Orthogonal };
        Ok(ExplicitCovariance { n: size, d: 1, grading, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn strands(&self) -> usize {
        self.d
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    /// Whether the components anticommute: `bD` odd.
    pub fn is_odd(&self) -> bool {
        self.grading.is_odd() && self.d % 2 == 1
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, a: usize, b: usize) -> &Q {
        &self.entries[a][b]
    }

    pub fn entries(&self) -> &[Vec<Q>] {
        &self.entries
    }
}

fn component_count(n: usize, d: usize) -> Result<usize> {
    let size = (n as u128).pow(d as u32);
    if size > MAX_COMPONENTS as u128 {
        return Err(Error::CapExceeded {
            what: "tensor components",
            size: usize::try_from(size).unwrap_or(usize::MAX),
            cap: MAX_COMPONENTS,
        });
    }
    Ok(size as usize)
}

fn digits(mut a: usize, n: usize, d: usize) -> Vec<usize> {
    (0..d)
        .map(|_| {
            let x = a % n;
            a /= n;
            x
        })
        .collect()
}

/// `⟨T^{A_1} ... T^{A_k}⟩` for commuting components: the sum over pairings
/// of the positions of products of covariance entries, with no signs.
pub fn bosonic_moment(cov: &ExplicitCovariance, components: &[usize]) -> Result<Q> {
    if components.len() % 2 == 1 {
        return Err(Error::InvalidPairing(format!("odd number of components ({})", components.len())));
    }
    if let Some(&bad) = components.iter().find(|&&a| a >= cov.size()) {
        return Err(Error::IndexOutOfRange(format!("component {bad} of {}", cov.size())));
    }
    Ok(isserlis(cov, components))
}

fn isserlis(cov: &ExplicitCovariance, components: &[usize]) -> Q {
    let Some((&first, rest)) = components.split_first() else {
        return Q::one();
    };
    let mut total = Q::zero();
    for k in 0..rest.len() {
        let c = cov.entry(first, rest[k]);
        if c.is_zero() {
            continue;
        }
        let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
        total += c * isserlis(cov, &remaining);
    }
    total
}

/// An element of the exterior algebra on at most [`MAX_GENERATORS`]
/// generators, stored by subset bitmask. The basis monomial of a mask is the
/// product of its generators in increasing order.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ExteriorElement {
    generators: usize,
    terms: BTreeMap<u32, Q>,
}

impl ExteriorElement {
    pub fn zero(generators: usize) -> Result<Self> {
        if generators > MAX_GENERATORS {
            return Err(Error::CapExceeded {
                what: "exterior generators",
                size: generators,
                cap: MAX_GENERATORS,
            });
        }
        Ok(ExteriorElement {
            generators,
            terms: BTreeMap::new(),
        })
    }

    pub fn scalar(generators: usize, c: Q) -> Result<Self> {
        let mut e = Self::zero(generators)?;
        e.add_term(0, c);
        Ok(e)
    }

    /// The generator `θ_i`, 0-based.
    pub fn generator(generators: usize, i: usize) -> Result<Self> {
        let mut e = Self::zero(generators)?;
        if i >= generators {
            return Err(Error::IndexOutOfRange(format!("generator {i} of {generators}")));
        }
        e.add_term(1 << i, Q::one());
        Ok(e)
    }

    /// `Σ_i c_i θ_i`.
    pub fn linear(coefficients: &[Q]) -> Result<Self> {
        let mut e = Self::zero(coefficients.len())?;
        for (i, c) in coefficients.iter().enumerate() {
            e.add_term(1 << i, c.clone());
        }
        Ok(e)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn terms(&self) -> &BTreeMap<u32, Q> {
        &self.terms
    }

    pub fn coeff(&self, mask: u32) -> Q {
        self.terms.get(&mask).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mask: u32, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.generators = out.generators.max(other.generators);
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self {
            generators: self.generators,
            terms: BTreeMap::new(),
        };
        for (&m, x) in &self.terms {
            out.add_term(m, x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self {
            generators: self.generators.max(other.generators),
            terms: BTreeMap::new(),
        };
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let product = x * y;
                if monomial_sign(a, b) < 0 {
                    out.add_term(a | b, -product);
                } else {
                    out.add_term(a | b, product);
                }
            }
        }
        out
    }

    /// `exp` of a nilpotent even element with zero scalar part; the series
    /// terminates.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() || self.terms.keys().any(|m| m.count_ones() % 2 == 1) {
            return Err(Error::InvalidPropagator("exponent must be even with no scalar part".into()));
        }
        let mut total = Self::scalar(self.generators, Q::one())?;
        let mut power = total.clone();
        let mut k = 1i64;
        loop {
            power = power.mul(self).scale(&(Q::one() / q(k)));
            if power.is_zero() {
                return Ok(total);
            }
            total = total.add(&power);
            k += 1;
        }
    }

    /// The Berezin integral: the coefficient of `θ_1 θ_2 ... θ_G`.
    pub fn top_coefficient(&self) -> Q {
        let top = if self.generators == 32 { u32::MAX } else { (1u32 << self.generators) - 1 };
        self.coeff(top)
    }
}

/// Sign from reordering `(θ_a in order)(θ_b in order)` into increasing
/// order: one transposition for every pair with the `a`-generator larger.
fn monomial_sign(a: u32, b: u32) -> i32 {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> j).count_ones();
        rest &= rest - 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Gaussian integration over anticommuting components with covariance
/// `cov`. The covariance is restricted to its image: a maximal set `J` of
/// independent rows gives a nonsingular block `C_JJ`, and the components are
/// written as `θ = C_{·J} C_JJ^{-1} ψ` in terms of `|J|` generators `ψ` with
/// weight `exp(-½ ψᵀ C_JJ^{-1} ψ)`.
#[derive(Clone, Debug)]
pub struct BerezinIntegrator {
    components: Vec<ExteriorElement>,
    weight: ExteriorElement,
    normalization: Q,
}

impl BerezinIntegrator {
    pub fn new(cov: &ExplicitCovariance) -> Result<Self> {
        let size = cov.size();
        let mut echelon = Echelon::new();
        let mut pivots = Vec::new();
        for (a, row) in cov.entries().iter().enumerate() {
            let sparse = row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
            if echelon.insert(sparse).is_none() {
                pivots.push(a);
            }
        }
        let rank = pivots.len();
        if rank > MAX_GENERATORS {
            return Err(Error::CapExceeded {
                what: "exterior generators",
                size: rank,
                cap: MAX_GENERATORS,
            });
        }
        let block: Vec<Vec<Q>> = pivots.iter().map(|&i| pivots.iter().map(|&j| cov.entry(i, j).clone()).collect()).collect();
        let inverse = invert(&block)?;
        let components = (0..size)
            .map(|a| {
                let coefficients: Vec<Q> = (0..rank)
                    .map(|k| {
                        pivots
                            .iter()
                            .enumerate()
                            .fold(Q::zero(), |acc, (i, &p)| acc + cov.entry(a, p) * &inverse[i][k])
                    })
                    .collect();
                ExteriorElement::linear(&coefficients)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut exponent = ExteriorElement::zero(rank)?;
        for i in 0..rank {
            for j in 0..rank {
                if i == j {
                    continue;
                }
                let term = ExteriorElement::generator(rank, i)?
                    .mul(&ExteriorElement::generator(rank, j)?)
                    .scale(&(-&inverse[i][j] / q(2)));
                exponent = exponent.add(&term);
            }
        }
        let weight = exponent.exp_nilpotent()?;
        let normalization = weight.top_coefficient();
        if normalization.is_zero() {
            return Err(Error::Singular("Gaussian weight has vanishing integral".into()));
        }
        Ok(BerezinIntegrator {
            components,
            weight,
            normalization,
        })
    }

    /// Number of generators after restriction to the image.
    pub fn rank(&self) -> usize {
        self.weight.generators()
    }

    /// The component `θ_a` as an element of the exterior algebra.
    pub fn component(&self, a: usize) -> &ExteriorElement {
        &self.components[a]
    }

    /// `∫ f · weight / ∫ weight`.
    pub fn expectation(&self, f: &ExteriorElement) -> Q {
        let top = (1u32 << self.rank()) - 1;
        let mut total = Q::zero();
        for (&m, c) in f.terms() {
            let rest = top & !m;
            let w = self.weight.coeff(rest);
            if w.is_zero() {
                continue;
            }
            let term = c * w;
            if monomial_sign(m, rest) < 0 {
                total -= term;
            } else {
                total += term;
            }
        }
        total / &self.normalization
    }

    /// `⟨θ_{A_1} ... θ_{A_k}⟩`.
    pub fn moment(&self, components: &[usize]) -> Result<Q> {
        let mut product = ExteriorElement::scalar(self.rank(), Q::one())?;
        for &a in components {
            let theta = self
                .components
                .get(a)
                .ok_or_else(|| Error::IndexOutOfRange(format!("component {a} of {}", self.components.len())))?;
            product = product.mul(theta);
            if product.is_zero() {
                return Ok(Q::zero());
            }
        }
        Ok(self.expectation(&product))
    }
}

/// Gauss-Jordan inverse over `Q`.
fn invert(matrix: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
    let size = matrix.len();
    let mut work: Vec<Vec<Q>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..size).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..size {
        let pivot = (col..size)
            .find(|&r| !work[r][col].is_zero())
            .ok_or_else(|| Error::Singular("restricted covariance block".into()))?;
        work.swap(col, pivot);
        let inv = work[col][col].recip();
        for x in work[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..size {
            if r != col && !work[r][col].is_zero() {
                let factor = work[r][col].clone();
                let pivot_row = work[col].clone();
                for (x, p) in work[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
    }
    Ok(work.into_iter().map(|row| row[size..].to_vec()).collect())
}

/// `⟨θ_{A_1} ... θ_{A_k}⟩` for anticommuting components.
pub fn berezin_expectation(cov: &ExplicitCovariance, components: &[usize]) -> Result<Q> {
    BerezinIntegrator::new(cov)?.moment(components)
}

/// The Gaussian expectation of the invariant of `graph` at concrete `N` and
/// grading, by literal index summation, with the reference pairing
/// `(1,2),(3,4),...` of vertices.
pub fn numeric_invariant_expectation(graph: &StrandedGraph, propagator: &Propagator, n: usize, grading: Grading) -> Result<Q> {
    let reference: Vec<(usize, usize)> = (0..graph.vertex_count() / 2).map(|k| (2 * k + 1, 2 * k + 2)).collect();
    numeric_invariant_expectation_with_reference(graph, propagator, n, grading, &reference)
}

/// As [`numeric_invariant_expectation`] with an explicit reference pairing
/// of the vertices (1-based). Tensors are multiplied in the flattened
/// order of `reference`. Each directed strand `x → y` contributes
/// `g_{i_x i_y}`, and at `b = 1` the term carries the sign of the
/// permutation from the slot-wise copies of `reference` to the directed
/// strands.
pub fn numeric_invariant_expectation_with_reference(
    graph: &StrandedGraph,
    propagator: &Propagator,
    n: usize,
    grading: Grading,
    reference: &[(usize, usize)],
) -> Result<Q> {
    let d = graph.strand_count();
    if propagator.strands() != d {
        return Err(Error::StrandMismatch(d, propagator.strands()));
    }
    let vertices = graph.vertex_count();
    let order = flatten(reference);
    let mut sorted = order.clone();
    sorted.sort_unstable();
    if sorted != (1..=vertices).collect::<Vec<_>>() {
        return Err(Error::InvalidPairing(format!("reference is not a pairing of {vertices} vertices")));
    }
    if vertices == 0 {
        return Ok(Q::one());
    }
    let form = Form::new(n, grading)?;
    let cov = ExplicitCovariance::new(propagator, n, grading)?;
    let integrator = if cov.is_odd() { Some(BerezinIntegrator::new(&cov)?) } else { None };

    let strands: Vec<(usize, usize)> = graph.strands().pairs().to_vec();
    let invariant_sign = if grading.is_odd() {
        // node (v, i) is numbered (v-1)D + i
        let promoted: Vec<usize> = (1..=d)
            .flat_map(|i| reference.iter().flat_map(move |&(v, w)| [(v - 1) * d + i, (w - 1) * d + i]))
            .collect();
        arrangement_sign(&promoted, &flatten(&strands))
    } else {
        1
    };

    let assignments = (n as u128).pow(strands.len() as u32);
    if assignments > MAX_ASSIGNMENTS as u128 {
        return Err(Error::CapExceeded {
            what: "index assignments",
            size: usize::try_from(assignments).unwrap_or(usize::MAX),
            cap: MAX_ASSIGNMENTS,
        });
    }

    let nodes = vertices * d;
    let mut index = vec![0usize; nodes];
    let mut moments: HashMap<Vec<usize>, Q> = HashMap::new();
    let mut total = Q::zero();
    assign(&strands, &form, 0, 1, &mut index, &mut |index, coefficient| {
        let components: Vec<usize> = order
            .iter()
            .map(|&v| (0..d).rev().fold(0usize, |acc, i| acc * n + index[(v - 1) * d + i]))
            .collect();
        let moment = match moments.get(&components) {
            Some(m) => m.clone(),
            None => {
                let m = match &integrator {
                    Some(integrator) => integrator.moment(&components)?,
                    None => isserlis(&cov, &components),
                };
                moments.insert(components, m.clone());
                m
            }
        };
        total += moment * q(coefficient);
        Ok(())
    })?;
    Ok(total * q(invariant_sign as i64))
}

/// Enumerates index values strand by strand, keeping only assignments with
/// every `g_{i_x i_y}` nonzero.
fn assign(
    strands: &[(usize, usize)],
    form: &Form,
    k: usize,
    coefficient: i64,
    index: &mut [usize],
    visit: &mut dyn FnMut(&[usize], i64) -> Result<()>,
) -> Result<()> {
    let Some(&(x, y)) = strands.get(k) else {
        return visit(index, coefficient);
    };
    for i in 0..form.n {
        for j in 0..form.n {
            let g = form.lower(i, j);
            if g == 0 {
                continue;
            }
            index[x - 1] = i;
            index[y - 1] = j;
            assign(strands, form, k + 1, coefficient * g, index, visit)?;
        }
    }
    Ok(())
}

/// Pipeline and oracle values side by side.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleComparison {
    pub pipeline: Q,
    pub oracle: Q,
}

impl OracleComparison {
    pub fn agrees(&self) -> bool {
        self.pipeline == self.oracle
    }
}

/// Evaluates the face-counting expectation at `N` and compares it with
/// [`numeric_invariant_expectation`].
pub fn compare_with_pipeline(
    graph: &StrandedGraph,
    propagator: &Propagator,
    n: usize,
    grading: Grading,
    options: &crate::model::ExpectationOptions,
) -> Result<OracleComparison> {
    let amplitude = crate::model::gaussian_expectation(graph, propagator, grading, options)?;
    let pipeline = amplitude
        .eval(&q(n as i64))
        .ok_or_else(|| Error::DegenerateN(format!("expectation has a pole at N = {n}")))?;
    let oracle = numeric_invariant_expectation(graph, propagator, n, grading)?;
    Ok(OracleComparison { pipeline, oracle })
}
