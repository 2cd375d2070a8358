//! The Brauer algebra `B_D(z)`: diagrams, their product with loop counting,
//! formal linear combinations, the standard generators, `A_D = Σ β_ij` and
//! the grading sign `η`.
//!
//! Points `1..=D` form the top row and `D+1..=2D` the bottom row. In a
//! product `d1 · d2` the diagram `d2` is placed on top, so its top row
//! becomes the top row of the result; for permutation diagrams this is the
//! composition `d1 ∘ d2`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::combinatorics::{pairing_sign, DirectedPairing, Matching};
use crate::error::{Error, Result};
use crate::poly::{Poly, RatFunc};
use crate::rational::Q;
use crate::young::{GroupAlgebraElement, Permutation};

/// A perfect matching of the `2D` points, stored as a 0-based partner table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrauerDiagram {
    d: usize,
    partner: Vec<usize>,
}

impl BrauerDiagram {
    /// From 1-based pairs over `1..=2D`.
    pub fn new(d: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let m = Matching::from_pairs(2 * d, pairs)?;
        Ok(BrauerDiagram {
            d,
            partner: m.partners().to_vec(),
        })
    }

    pub fn from_matching(d: usize, m: &Matching) -> Result<Self> {
        if m.len() != 2 * d {
            return Err(Error::StrandMismatch(d, m.len() / 2));
        }
        Ok(BrauerDiagram {
            d,
            partner: m.partners().to_vec(),
        })
    }

    fn from_partner(d: usize, partner: Vec<usize>) -> Self {
        debug_assert_eq!(partner.len(), 2 * d);
        BrauerDiagram { d, partner }
    }

    pub fn identity(d: usize) -> Self {
        Self::from_permutation(&Permutation::identity(d))
    }

    /// The arc-free diagram joining top `i` to bottom `σ(i)`.
    pub fn from_permutation(sigma: &Permutation) -> Self {
        let d = sigma.degree();
        let mut partner = vec![0; 2 * d];
        for i in 0..d {
            let j = d + sigma.apply(i);
            partner[i] = j;
            partner[j] = i;
        }
        Self::from_partner(d, partner)
    }

    /// The permutation of an arc-free diagram.
    pub fn to_permutation(&self) -> Option<Permutation> {
        let images: Option<Vec<usize>> = (0..self.d)
            .map(|i| self.partner[i].checked_sub(self.d))
            .collect();
        images.map(|v| Permutation::from_images(v).expect("arc-free diagram"))
    }

    /// `σ_i`, swapping strands `i` and `i+1`.
    pub fn sigma(d: usize, i: usize) -> Result<Self> {
        check_adjacent(d, i)?;
        Self::sigma_ij(d, i, i + 1)
    }

    /// `β_i`, with arcs `(i, i+1)` on top and bottom.
    pub fn beta(d: usize, i: usize) -> Result<Self> {
        check_adjacent(d, i)?;
        Self::beta_ij(d, i, i + 1)
    }

    /// `σ_ij` for `1 ≤ i < j ≤ D`.
    pub fn sigma_ij(d: usize, i: usize, j: usize) -> Result<Self> {
        check_pair(d, i, j)?;
        Ok(Self::from_permutation(&Permutation::transposition(d, i, j)))
    }

    /// `β_ij` for `1 ≤ i < j ≤ D`: arcs `(i, j)` and `(i', j')`, other
    /// strands vertical.
    pub fn beta_ij(d: usize, i: usize, j: usize) -> Result<Self> {
        check_pair(d, i, j)?;
        let mut partner: Vec<usize> = (0..2 * d).map(|x| (x + d) % (2 * d)).collect();
        let (a, b) = (i - 1, j - 1);
        partner[a] = b;
        partner[b] = a;
        partner[d + a] = d + b;
        partner[d + b] = d + a;
        Ok(Self::from_partner(d, partner))
    }

    pub fn strands(&self) -> usize {
        self.d
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    /// 1-based pairs `(i, j)`, `i < j`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.matching().pairs()
    }

    pub fn matching(&self) -> Matching {
        Matching::from_partner(self.partner.clone()).expect("valid diagram")
    }

    pub fn arc_count(&self) -> usize {
        (0..self.d).filter(|&i| self.partner[i] < self.d).count()
    }

    /// Upside-down reflection, exchanging the two rows.
    pub fn flip(&self) -> Self {
        let d = self.d;
        let swap = |x: usize| if x < d { x + d } else { x - d };
        let mut partner = vec![0; 2 * d];
        for x in 0..2 * d {
            partner[swap(x)] = swap(self.partner[x]);
        }
        Self::from_partner(d, partner)
    }

    /// Orientation used for the grading sign: through strands top to
    /// bottom, top arcs left to right, bottom arcs right to left.
    pub fn oriented(&self) -> DirectedPairing {
        let d = self.d;
        let mut pairs = Vec::with_capacity(d);
        for x in 0..2 * d {
            let y = self.partner[x];
            let keep = if x < d && y >= d {
                true
            } else if x < d {
                x < y
            } else {
                y >= d && x > y
            };
            if keep {
                pairs.push((x + 1, y + 1));
            }
        }
        DirectedPairing::new(2 * d, pairs).expect("valid diagram")
    }

    /// `{(1, D+1), ..., (D, 2D)}`
    pub fn reference_pairing(d: usize) -> DirectedPairing {
        DirectedPairing::new(2 * d, (1..=d).map(|k| (k, k + d)).collect()).expect("valid")
    }

    /// `η = ε(oriented diagram, reference)`; equals `(-1)^{minimal crossings}`.
    pub fn eta(&self) -> i32 {
        pairing_sign(&self.oriented(), &Self::reference_pairing(self.d)).expect("same size")
    }
}

fn check_adjacent(d: usize, i: usize) -> Result<()> {
    if i == 0 || i >= d {
        return Err(Error::IndexOutOfRange(format!("generator index {i} for D = {d}")));
    }
    Ok(())
}

fn check_pair(d: usize, i: usize, j: usize) -> Result<()> {
    if i == 0 || i >= j || j > d {
        return Err(Error::IndexOutOfRange(format!("strand pair ({i}, {j}) for D = {d}")));
    }
    Ok(())
}

impl fmt::Display for BrauerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().iter().map(|(i, j)| format!("{i}-{j}")).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[derive(Clone, Copy)]
enum Node {
    Top(usize),
    Bottom(usize),
    /// middle point reached from the lower diagram / from the upper diagram
    MidFromLower(usize),
    MidFromUpper(usize),
}

/// Stacks `upper` on top of `lower`, straightens the strands and removes the
/// closed loops. Returns the product `lower · upper` and the number of loops.
pub fn compose_diagrams(lower: &BrauerDiagram, upper: &BrauerDiagram) -> Result<(BrauerDiagram, usize)> {
    if lower.d != upper.d {
        return Err(Error::StrandMismatch(lower.d, upper.d));
    }
    let d = lower.d;
    let mut partner = vec![usize::MAX; 2 * d];
    let mut mid_seen = vec![false; d];

    let step = |node: Node, mid_seen: &mut Vec<bool>| -> Node {
        match node {
            Node::Top(k) | Node::MidFromLower(k) => {
                let from = if let Node::Top(_) = node { k } else { d + k };
                let p = upper.partner[from];
                if p < d {
                    Node::Top(p)
                } else {
                    mid_seen[p - d] = true;
                    Node::MidFromUpper(p - d)
                }
            }
            Node::Bottom(k) | Node::MidFromUpper(k) => {
                let from = if let Node::Bottom(_) = node { d + k } else { k };
                let p = lower.partner[from];
                if p >= d {
                    Node::Bottom(p - d)
                } else {
                    mid_seen[p] = true;
                    Node::MidFromLower(p)
                }
            }
        }
    };
    let index = |node: Node| match node {
        Node::Top(k) => Some(k),
        Node::Bottom(k) => Some(d + k),
        _ => None,
    };

    for start in 0..2 * d {
        if partner[start] != usize::MAX {
            continue;
        }
        let mut node = if start < d { Node::Top(start) } else { Node::Bottom(start - d) };
        let end = loop {
            node = step(node, &mut mid_seen);
            if let Some(i) = index(node) {
                break i;
            }
        };
        partner[start] = end;
        partner[end] = start;
    }

    let mut loops = 0;
    for m in 0..d {
        if mid_seen[m] {
            continue;
        }
        loops += 1;
        let mut node = Node::MidFromUpper(m);
        mid_seen[m] = true;
        loop {
            node = step(node, &mut mid_seen);
            if let Node::MidFromUpper(k) = node {
                if k == m {
                    break;
                }
            }
        }
    }
    Ok((BrauerDiagram::from_partner(d, partner), loops))
}

/// Coefficient rings for Brauer elements.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_q(c: Q) -> Self;
}

impl Coefficient for Q {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_q(c: Q) -> Self {
        c
    }
}

impl Coefficient for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_q(c: Q) -> Self {
        Poly::constant(c)
    }
}

impl Coefficient for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_q(c: Q) -> Self {
        RatFunc::constant(c)
    }
}

/// A formal linear combination of diagrams with coefficients in `C`, living
/// in the algebra whose closed loops weigh `z`.
///
/// With `C = Poly` and `z` the polynomial variable this is `B_D(z)` with a
/// formal loop weight; with `C = Q` the loop weight is a number.
#[derive(Clone, Debug, PartialEq)]
pub struct BrauerElement<C: Coefficient> {
    d: usize,
    z: C,
    terms: BTreeMap<BrauerDiagram, C>,
}

pub type FormalElement = BrauerElement<Poly>;

impl FormalElement {
    /// Zero of `B_D(z)` with formal `z`.
    pub fn formal_zero(d: usize) -> Self {
        BrauerElement::zero(d, Poly::x())
    }

    pub fn formal(diagram: BrauerDiagram) -> Self {
        BrauerElement::from_diagram(Poly::x(), diagram)
    }
}

impl<C: Coefficient> BrauerElement<C> {
    pub fn zero(d: usize, z: C) -> Self {
        BrauerElement {
            d,
            z,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(d: usize, z: C) -> Self {
        Self::from_diagram(z, BrauerDiagram::identity(d))
    }

    pub fn from_diagram(z: C, diagram: BrauerDiagram) -> Self {
        let mut out = Self::zero(diagram.d, z);
        out.add_term(diagram, C::one());
        out
    }

    pub fn from_terms(d: usize, z: C, terms: impl IntoIterator<Item = (BrauerDiagram, C)>) -> Result<Self> {
        let mut out = Self::zero(d, z);
        for (diagram, c) in terms {
            if diagram.d != d {
                return Err(Error::StrandMismatch(d, diagram.d));
            }
            out.add_term(diagram, c);
        }
        Ok(out)
    }

    pub fn add_term(&mut self, diagram: BrauerDiagram, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(diagram) {
            Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn strands(&self) -> usize {
        self.d
    }

    pub fn loop_weight(&self) -> &C {
        &self.z
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BrauerDiagram, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, diagram: &BrauerDiagram) -> C {
        self.terms.get(diagram).cloned().unwrap_or_else(C::zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::StrandMismatch(self.d, other.d));
        }
        if self.z != other.z {
            return Err(Error::InvalidPropagator("elements live in algebras with different loop weights".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (diagram, c) in &other.terms {
            out.add_term(diagram.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&C::one().neg()))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.d, self.z.clone());
        for (diagram, x) in &self.terms {
            out.add_term(diagram.clone(), x.mul(c));
        }
        out
    }

    /// Bilinear extension of the diagram product, each term weighted by
    /// `z^loops`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.d, self.z.clone());
        let mut z_pow = vec![C::one()];
        for (d1, a) in &self.terms {
            for (d2, b) in &other.terms {
                let (d, loops) = compose_diagrams(d1, d2)?;
                while z_pow.len() <= loops {
                    let next = z_pow.last().unwrap().mul(&self.z);
                    z_pow.push(next);
                }
                out.add_term(d, a.mul(b).mul(&z_pow[loops]));
            }
        }
        Ok(out)
    }

    pub fn map_coefficients<D: Coefficient>(&self, z: D, f: impl Fn(&C) -> D) -> BrauerElement<D> {
        let mut out = BrauerElement::zero(self.d, z);
        for (diagram, c) in &self.terms {
            out.add_term(diagram.clone(), f(c));
        }
        out
    }

    /// Upside-down reflection of every diagram. An anti-automorphism.
    pub fn flip(&self) -> Self {
        let mut out = Self::zero(self.d, self.z.clone());
        for (diagram, c) in &self.terms {
            out.add_term(diagram.flip(), c.clone());
        }
        out
    }
}

impl FormalElement {
    /// Specializes the formal loop weight to a number.
    pub fn evaluate(&self, z: &Q) -> BrauerElement<Q> {
        self.map_coefficients(z.clone(), |c| c.eval(z))
    }
}

impl BrauerElement<RatFunc> {
    /// Specializes `z`; fails at a pole of any coefficient.
    pub fn evaluate(&self, z: &Q) -> Result<BrauerElement<Q>> {
        let mut out = BrauerElement::zero(self.d, z.clone());
        for (diagram, c) in &self.terms {
            let v = c
                .eval(z)
                .ok_or_else(|| Error::DegenerateN(format!("coefficient {} has a pole at z = {z}", c.display_in("z"))))?;
            out.add_term(diagram.clone(), v);
        }
        Ok(out)
    }
}

/// `A_D = Σ_{i<j} β_ij`
pub fn casimir_ad<C: Coefficient>(d: usize, z: C) -> Result<BrauerElement<C>> {
    if d < 2 {
        return Err(Error::IndexOutOfRange(format!("A_D needs D >= 2, got {d}")));
    }
    let mut out = BrauerElement::zero(d, z);
    for i in 1..=d {
        for j in i + 1..=d {
            out.add_term(BrauerDiagram::beta_ij(d, i, j)?, C::one());
        }
    }
    Ok(out)
}

/// The inclusion of the symmetric group algebra as arc-free diagrams.
pub fn embed_group_algebra<C: Coefficient>(e: &GroupAlgebraElement, z: C) -> BrauerElement<C> {
    let mut out = BrauerElement::zero(e.degree(), z);
    for (g, c) in e.terms() {
        out.add_term(BrauerDiagram::from_permutation(g), C::from_q(c.clone()));
    }
    out
}
