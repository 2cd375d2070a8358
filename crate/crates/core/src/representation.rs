//! The action of `B_D((-1)^b N)` on `V^{⊗D}`: graded forms, exact sparse
//! tensor maps, the spectrum of `A_D`, the universal traceless projector and
//! irreducible-symmetry projectors.
//!
//! Basis tensors `e_{a_1} ⊗ ... ⊗ e_{a_D}` are indexed by the base-`N`
//! number `a_1 a_2 ... a_D` (most significant digit first). A diagram reads
//! its input indices on the top row and writes its output indices on the
//! bottom row, so `map(d1 · d2) = map(d1) ∘ map(d2)`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::brauer::{casimir_ad, embed_group_algebra, BrauerDiagram, BrauerElement, FormalElement};
use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::linalg::{axpy, Echelon, SparseVec};
use crate::poly::{Poly, RatFunc};
use crate::rational::{is_integer, q, Q};
use crate::young::{GroupAlgebraElement, YoungDiagram};

/// Default bound on `N^D`.
pub const DEFAULT_SIZE_CAP: usize = 20736;

/// The graded form `g^b`: `δ` for `b = 0`, the canonical symplectic form
/// `ω = [[0, 1], [-1, 0]]` (in `N/2`-blocks) for `b = 1`. Both the form and
/// its inverse have exactly one nonzero entry `±1` per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedForm {
    n: usize,
    grading: Grading,
    size_cap: usize,
}

impl GradedForm {
    pub fn new(n: usize, grading: Grading) -> Result<Self> {
        if n == 0 {
            return Err(Error::IndexOutOfRange("N must be positive".into()));
        }
        if grading.is_odd() && n % 2 == 1 {
            return Err(Error::OddSymplecticDimension(n));
        }
        Ok(GradedForm {
            n,
            grading,
            size_cap: DEFAULT_SIZE_CAP,
        })
    }

    pub fn with_size_cap(mut self, cap: usize) -> Self {
        self.size_cap = cap;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn size_cap(&self) -> usize {
        self.size_cap
    }

    /// `z = (-1)^b N`
    pub fn loop_weight(&self) -> Q {
        self.grading.loop_weight(self.n)
    }

    /// The unique `c` with `g_{a c} ≠ 0`, and that entry.
    pub fn lower(&self, a: usize) -> (usize, i32) {
        match self.grading {
            Grading::Orthogonal => (a, 1),
            Grading::Symplectic => {
                let h = self.n / 2;
                if a < h {
                    (a + h, 1)
                } else {
                    (a - h, -1)
                }
            }
        }
    }

    /// The unique `c` with `g^{a c} ≠ 0`, and that entry.
    pub fn upper(&self, a: usize) -> (usize, i32) {
        let (c, s) = self.lower(a);
        (c, self.grading.power(-1) * s)
    }

    pub fn lower_entry(&self, a: usize, c: usize) -> i32 {
        let (p, s) = self.lower(a);
        if p == c {
            s
        } else {
            0
        }
    }

    pub fn upper_entry(&self, a: usize, c: usize) -> i32 {
        let (p, s) = self.upper(a);
        if p == c {
            s
        } else {
            0
        }
    }

    /// `N^D`, checked against the size cap.
    pub fn tensor_dimension(&self, d: usize) -> Result<usize> {
        let too_big = || Error::CapExceeded {
            what: "N^D",
            size: usize::MAX,
            cap: self.size_cap,
        };
        let dim = u32::try_from(d)
            .ok()
            .and_then(|d| self.n.checked_pow(d))
            .ok_or_else(too_big)?;
        if dim > self.size_cap {
            return Err(Error::CapExceeded {
                what: "N^D",
                size: dim,
                cap: self.size_cap,
            });
        }
        Ok(dim)
    }

    /// Base-`N` digits of a basis index.
    pub fn digits(&self, d: usize, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; d];
        for k in (0..d).rev() {
            out[k] = index % self.n;
            index /= self.n;
        }
        out
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &a| acc * self.n + a)
    }
}

/// An exact linear map on `V^{⊗D}`, stored as sparse rows `M[out][in]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorMap {
    d: usize,
    n: usize,
    grading: Grading,
    rows: Vec<SparseVec>,
}

impl TensorMap {
    pub fn zero(d: usize, form: &GradedForm) -> Result<Self> {
        let dim = form.tensor_dimension(d)?;
        Ok(TensorMap {
            d,
            n: form.n,
            grading: form.grading,
            rows: vec![SparseVec::new(); dim],
        })
    }

    pub fn identity(d: usize, form: &GradedForm) -> Result<Self> {
        let mut m = Self::zero(d, form)?;
        for (i, row) in m.rows.iter_mut().enumerate() {
            row.insert(i, Q::one());
        }
        Ok(m)
    }

    pub fn strands(&self) -> usize {
        self.d
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn get(&self, out: usize, inp: usize) -> Q {
        self.rows[out].get(&inp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn row(&self, out: usize) -> &SparseVec {
        &self.rows[out]
    }

    pub fn nonzero_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.d != other.d || self.n != other.n || self.grading != other.grading {
            return Err(Error::StrandMismatch(self.d, other.d));
        }
        Ok(())
    }

    fn add_scaled(&mut self, c: &Q, other: &Self) {
        for (row, o) in self.rows.iter_mut().zip(&other.rows) {
            axpy(row, c, o);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_scaled(&Q::one(), other);
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_scaled(&-Q::one(), other);
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = self.clone();
        for row in &mut out.rows {
            if c.is_zero() {
                row.clear();
            } else {
                for x in row.values_mut() {
                    *x *= c;
                }
            }
        }
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (row_out, row) in out.rows.iter_mut().zip(&self.rows) {
            let mut acc = SparseVec::new();
            for (&k, x) in row {
                axpy(&mut acc, x, &other.rows[k]);
            }
            *row_out = acc;
        }
        Ok(out)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = Q::zero();
            for (k, x) in row {
                if let Some(y) = v.get(k) {
                    acc += x * y;
                }
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }

    pub fn trace(&self) -> Q {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.get(&i))
            .fold(Q::zero(), |acc, x| acc + x)
    }

    /// `(-1)^{bD} tr`, the graded trace. For `b = 1` it continues the
    /// orthogonal trace polynomials to `N ↦ -N`.
    pub fn supertrace(&self) -> Q {
        let t = self.trace();
        if self.grading.is_odd() && self.d % 2 == 1 {
            -t
        } else {
            t
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for row in &self.rows {
            e.insert(row.clone());
        }
        e.rank()
    }

    pub fn is_idempotent(&self) -> bool {
        self.compose(self).map(|sq| &sq == self).unwrap_or(false)
    }

    /// The entries as one sparse vector keyed by `out · dim + in`.
    pub fn flatten(&self) -> SparseVec {
        let dim = self.dimension();
        let mut out = SparseVec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (k, x) in row {
                out.insert(i * dim + k, x.clone());
            }
        }
        out
    }
}

/// How each of the `D` independent index values of a diagram feeds the
/// input (top) and output (bottom) positions.
enum Component {
    /// top `k` to bottom `m`: `δ(y_m = x_k)`
    Through { top: usize, bottom: usize },
    /// top arc `k < l`: `g_{x_l x_k}`
    TopArc { left: usize, right: usize },
    /// bottom arc `m > n`: `g^{y_m y_n}`
    BottomArc { left: usize, right: usize },
}

fn components(diagram: &BrauerDiagram) -> Vec<Component> {
    let d = diagram.strands();
    let p = diagram.partners();
    let mut out = Vec::with_capacity(d);
    for (x, &y) in p.iter().enumerate() {
        if x < d && y >= d {
            out.push(Component::Through { top: x, bottom: y - d });
        } else if x < y && y < d {
            out.push(Component::TopArc { left: x, right: y });
        } else if x >= d && x < y {
            out.push(Component::BottomArc { left: x - d, right: y - d });
        }
    }
    out
}

/// The matrix of a single diagram, `η^b` included.
pub fn diagram_to_map(diagram: &BrauerDiagram, form: &GradedForm) -> Result<TensorMap> {
    let mut m = TensorMap::zero(diagram.strands(), form)?;
    let eta = form.grading.power(diagram.eta());
    add_diagram(&mut m, diagram, &q(eta as i64), form);
    Ok(m)
}

fn add_diagram(m: &mut TensorMap, diagram: &BrauerDiagram, coeff: &Q, form: &GradedForm) {
    let d = diagram.strands();
    let n = form.n;
    let comps = components(diagram);
    let mut values = vec![0usize; d];
    let mut x = vec![0usize; d];
    let mut y = vec![0usize; d];
    loop {
        let mut sign = 1;
        for (c, &v) in comps.iter().zip(&values) {
            match *c {
                Component::Through { top, bottom } => {
                    x[top] = v;
                    y[bottom] = v;
                }
                Component::TopArc { left, right } => {
                    let (p, s) = form.lower(v);
                    x[right] = v;
                    x[left] = p;
                    sign *= s;
                }
                Component::BottomArc { left, right } => {
                    let (p, s) = form.upper(v);
                    y[right] = v;
                    y[left] = p;
                    sign *= s;
                }
            }
        }
        let value = if sign < 0 { -coeff.clone() } else { coeff.clone() };
        let row = &mut m.rows[form.index(&y)];
        let entry = row.entry(form.index(&x)).or_insert_with(Q::zero);
        *entry += value;
        if entry.is_zero() {
            row.remove(&form.index(&x));
        }

        let mut k = 0;
        while k < d {
            values[k] += 1;
            if values[k] < n {
                break;
            }
            values[k] = 0;
            k += 1;
        }
        if k == d {
            break;
        }
    }
}

fn check_loop_weight<C>(e: &BrauerElement<C>, expected: &C) -> Result<()>
where
    C: crate::brauer::Coefficient + std::fmt::Display,
{
    if e.loop_weight() != expected {
        return Err(Error::InvalidPropagator(format!(
            "element has loop weight {} but the form requires {}",
            e.loop_weight(),
            expected
        )));
    }
    Ok(())
}

/// The matrix of an element whose loop weight is already `(-1)^b N`.
pub fn element_to_map(e: &BrauerElement<Q>, form: &GradedForm) -> Result<TensorMap> {
    check_loop_weight(e, &form.loop_weight())?;
    let mut m = TensorMap::zero(e.strands(), form)?;
    for (diagram, c) in e.terms() {
        let eta = form.grading.power(diagram.eta());
        let c = if eta < 0 { -c.clone() } else { c.clone() };
        add_diagram(&mut m, diagram, &c, form);
    }
    Ok(m)
}

/// The matrix of a formal element, `z` evaluated at `(-1)^b N`.
pub fn formal_to_map(e: &FormalElement, form: &GradedForm) -> Result<TensorMap> {
    element_to_map(&e.evaluate(&form.loop_weight()), form)
}

/// `A_D` in `B_D((-1)^b N)`.
pub fn casimir_numeric(d: usize, form: &GradedForm) -> Result<BrauerElement<Q>> {
    casimir_ad(d, form.loop_weight())
}

/// Minimal polynomial of the matrix of `e`, found as the first linear
/// dependency among the matrices of `1, e, e², ...`.
pub fn minimal_polynomial(e: &BrauerElement<Q>, form: &GradedForm) -> Result<Poly> {
    let d = e.strands();
    let mut echelon = Echelon::new();
    let mut power = BrauerElement::identity(d, form.loop_weight());
    let limit = double_factorial(2 * d) + 1;
    for k in 0..=limit {
        let v = element_to_map(&power, form)?.flatten();
        if let Some(combo) = echelon.insert(v) {
            let mut coeffs = vec![Q::zero(); k + 1];
            coeffs[k] = Q::one();
            for (i, c) in combo {
                coeffs[i] = -c;
            }
            return Ok(Poly::new(coeffs));
        }
        power = power.mul(e)?;
    }
    Err(Error::NonIntegerEigenvalue("minimal polynomial search did not terminate".into()))
}

fn double_factorial(n: usize) -> usize {
    (1..n).step_by(2).product::<usize>().max(1)
}

/// Distinct nonzero eigenvalues of `A_D` on `V^{⊗D}`, ascending.
///
/// The minimal polynomial must split into distinct integer linear factors;
/// anything else is reported as an error.
pub fn ad_nonzero_eigenvalues(d: usize, form: &GradedForm) -> Result<Vec<i64>> {
    let a = casimir_numeric(d, form)?;
    let mut poly = minimal_polynomial(&a, form)?;
    let bound = (d * (d - 1) / 2 * form.n) as i64;
    let mut roots = Vec::new();
    for alpha in -bound..=bound {
        let x = q(alpha);
        if poly.eval(&x).is_zero() {
            let (quot, rem) = poly.div_rem(&Poly::linear(-x.clone()));
            debug_assert!(rem.is_zero());
            poly = quot;
            if poly.eval(&x).is_zero() {
                return Err(Error::NonIntegerEigenvalue(format!("A_{d} has a repeated root {alpha}: not diagonalizable")));
            }
            roots.push(alpha);
        }
    }
    if poly.degree() != Some(0) {
        return Err(Error::NonIntegerEigenvalue(format!(
            "minimal polynomial of A_{d} has a factor {poly} without integer roots"
        )));
    }
    roots.retain(|&r| r != 0);
    let sign = form.grading.power(-1) as i64;
    if let Some(bad) = roots.iter().find(|&&r| r * sign < 0) {
        return Err(Error::NonIntegerEigenvalue(format!("eigenvalue {bad} has the wrong sign for b = {}", form.grading)));
    }
    Ok(roots)
}

/// A projector together with its trace, rank and idempotency verdict.
#[derive(Clone, Debug)]
pub struct ProjectorReport {
    pub element: BrauerElement<Q>,
    pub map: TensorMap,
    pub trace: Q,
    pub rank: usize,
    pub idempotent: bool,
}

impl ProjectorReport {
    pub fn from_element(element: BrauerElement<Q>, form: &GradedForm) -> Result<Self> {
        let map = element_to_map(&element, form)?;
        let idempotent = map.is_idempotent();
        let trace = map.trace();
        let rank = match (idempotent, trace.to_integer().to_usize()) {
            (true, Some(r)) if is_integer(&trace) && !trace.is_negative() => r,
            _ => map.rank(),
        };
        Ok(ProjectorReport {
            element,
            map,
            trace,
            rank,
            idempotent,
        })
    }
}

/// `𝔓_D = ∏_α (1 - A_D/α)` over the nonzero eigenvalues, as an element.
pub fn traceless_element(d: usize, form: &GradedForm) -> Result<BrauerElement<Q>> {
    let z = form.loop_weight();
    let a = casimir_numeric(d, form)?;
    let one = BrauerElement::identity(d, z);
    let mut p = one.clone();
    for alpha in ad_nonzero_eigenvalues(d, form)? {
        let factor = one.sub(&a.scale(&(Q::one() / q(alpha))))?;
        p = p.mul(&factor)?;
    }
    Ok(p)
}

/// The universal traceless projector.
pub fn traceless_projector(d: usize, form: &GradedForm) -> Result<ProjectorReport> {
    ProjectorReport::from_element(traceless_element(d, form)?, form)
}

/// `∏_{f=1}^{⌊D/2⌋} (1 - A_D / ((z + 2(D-f-1)) f)) · c_S / D!` in `B_D(z)`
/// with `z` formal; coefficients are rational functions of `z`.
pub fn symmetric_traceless_formal(d: usize) -> Result<BrauerElement<RatFunc>> {
    let z = RatFunc::x();
    let a = casimir_ad(d, z.clone())?;
    let one = BrauerElement::identity(d, z.clone());
    let mut p = one.clone();
    for f in 1..=d / 2 {
        let shift = 2 * (d as i64 - f as i64 - 1);
        let den = Poly::linear(q(shift)).scale(&q(f as i64));
        let inv = RatFunc::new(Poly::one(), den)?;
        p = p.mul(&one.sub(&a.scale(&inv))?)?;
    }
    let sym = embed_group_algebra(&GroupAlgebraElement::symmetrizer(d), z);
    Ok(p.mul(&sym)?.scale(&RatFunc::constant(Q::one() / factorial(d))))
}

/// `c_∧ / D!` in `B_D(z)`.
pub fn antisymmetrizer_formal(d: usize) -> FormalElement {
    embed_group_algebra(&GroupAlgebraElement::antisymmetrizer(d), Poly::x()).scale(&Poly::constant(Q::one() / factorial(d)))
}

pub fn factorial(d: usize) -> Q {
    (1..=d as i64).fold(Q::one(), |acc, k| acc * q(k))
}

/// The explicit symmetric traceless projector at a concrete `N`.
pub fn symmetric_traceless_projector(d: usize, form: &GradedForm) -> Result<ProjectorReport> {
    let formal = symmetric_traceless_formal(d)?;
    let z = form.loop_weight();
    let element = formal.evaluate(&z).map_err(|_| {
        Error::DegenerateN(format!("the symmetric traceless projector for D = {d} is undefined at z = {z}"))
    })?;
    ProjectorReport::from_element(element, form)
}

/// `(c_λ / n_λ) · 𝔓_D` as an element.
pub fn irreducible_element(lambda: &YoungDiagram, form: &GradedForm) -> Result<BrauerElement<Q>> {
    let d = lambda.size();
    let z = form.loop_weight();
    let c = embed_group_algebra(&lambda.young_symmetrizer(), z.clone()).scale(&(Q::one() / lambda.symmetrizer_norm()));
    if d < 2 {
        return Ok(c);
    }
    c.mul(&traceless_element(d, form)?)
}

pub fn irreducible_projector(lambda: &YoungDiagram, form: &GradedForm) -> Result<ProjectorReport> {
    ProjectorReport::from_element(irreducible_element(lambda, form)?, form)
}

/// The irreducible projector written in the diagram basis; each term is a
/// propagator term `γ ε(M⃗, M⃗_ref)^b ∏ g^{ij}` with `M⃗` the diagram's
/// canonical orientation and `γ` its coefficient.
pub fn decompose_projector_as_propagator(lambda: &YoungDiagram, form: &GradedForm) -> Result<BTreeMap<BrauerDiagram, Q>> {
    let d = lambda.size();
    if d > 4 {
        return Err(Error::CapExceeded {
            what: "D for projector decomposition",
            size: d,
            cap: 4,
        });
    }
    let e = irreducible_element(lambda, form)?;
    Ok(e.terms().map(|(k, v)| (k.clone(), v.clone())).collect())
}
