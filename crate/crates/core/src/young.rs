//! Young diagrams, the canonical tableau, hook lengths, the GL(N) dimension
//! polynomial, row/column groups and Young symmetrizers in the group algebra
//! of the symmetric group.
//!
//! Row and column groups are materialized as explicit permutation lists, so
//! practical use is limited to `D <= 8`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{q, Q};

/// A partition `λ₁ ≥ λ₂ ≥ ... ≥ λ_k > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.contains(&0) {
            return Err(Error::InvalidDiagram(format!("zero-length row in {rows:?}")));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidDiagram(format!("rows {rows:?} increase")));
        }
        Ok(YoungDiagram { rows })
    }

    /// Parses `"2,1,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let rows = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad row length {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    /// The one-row diagram `(d)`.
    pub fn row(d: usize) -> Self {
        YoungDiagram { rows: vec![d] }
    }

    /// The one-column diagram `(1, ..., 1)`.
    pub fn column(d: usize) -> Self {
        YoungDiagram { rows: vec![1; d] }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && self.rows.get(i - 1).is_some_and(|&r| j <= r)
    }

    /// Boxes `(row, column)`, 1-based, row-major.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (1..=r).map(move |j| (i + 1, j)))
    }

    /// Column lengths.
    pub fn transpose(&self) -> YoungDiagram {
        let width = self.rows.first().copied().unwrap_or(0);
        YoungDiagram {
            rows: (1..=width)
                .map(|j| self.rows.iter().filter(|&&r| r >= j).count())
                .collect(),
        }
    }

    pub fn hook_length(&self, i: usize, j: usize) -> Result<usize> {
        if !self.contains(i, j) {
            return Err(Error::BoxOutside(i, j));
        }
        let arm = self.rows[i - 1] - j;
        let leg = self.rows[i..].iter().filter(|&&r| r >= j).count();
        Ok(arm + leg + 1)
    }

    fn hook_product(&self) -> usize {
        self.boxes()
            .map(|(i, j)| self.hook_length(i, j).unwrap())
            .product()
    }

    /// `∏ (N - i + j) / h_ij`, expanded.
    pub fn gl_dimension_poly(&self) -> Poly {
        let num = self.boxes().fold(Poly::one(), |acc, (i, j)| {
            &acc * &Poly::linear(q(j as i64 - i as i64))
        });
        num.scale(&(Q::one() / q(self.hook_product() as i64)))
    }

    /// Factored form, e.g. `N(N-1)(N-2)(N+1)/8`.
    pub fn gl_dimension_factored(&self) -> String {
        let mut contents: BTreeMap<i64, usize> = BTreeMap::new();
        for (i, j) in self.boxes() {
            *contents.entry(j as i64 - i as i64).or_default() += 1;
        }
        let mut order: Vec<i64> = contents.keys().copied().collect();
        order.sort_by_key(|&c| (c != 0, c > 0, c.abs()));
        let mut out = String::new();
        for c in order {
            let base = match c {
                0 => "N".to_string(),
                c if c < 0 => format!("(N-{})", -c),
                c => format!("(N+{c})"),
            };
            out.push_str(&base);
            if contents[&c] > 1 {
                out.push_str(&format!("^{}", contents[&c]));
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        let h = self.hook_product();
        if h != 1 {
            out.push_str(&format!("/{h}"));
        }
        out
    }

    /// `dim(λ, -N) = (-1)^{|λ|} dim(λ', N)` as polynomials.
    pub fn dimension_duality_check(&self) -> bool {
        let lhs = self.gl_dimension_poly().reflect();
        let mut rhs = self.transpose().gl_dimension_poly();
        if self.size() % 2 == 1 {
            rhs = -&rhs;
        }
        lhs == rhs
    }

    /// Entry of the canonical (row-major) tableau in box `(i, j)`, 1-based.
    pub fn tableau_entry(&self, i: usize, j: usize) -> usize {
        self.rows[..i - 1].iter().sum::<usize>() + j
    }

    fn row_blocks(&self) -> Vec<Vec<usize>> {
        (1..=self.rows.len())
            .map(|i| (1..=self.rows[i - 1]).map(|j| self.tableau_entry(i, j) - 1).collect())
            .collect()
    }

    fn column_blocks(&self) -> Vec<Vec<usize>> {
        let t = self.transpose();
        (1..=t.rows.len())
            .map(|j| (1..=t.rows[j - 1]).map(|i| self.tableau_entry(i, j) - 1).collect())
            .collect()
    }

    /// Permutations preserving each row of the canonical tableau.
    pub fn row_group(&self) -> Vec<Permutation> {
        block_group(&self.row_blocks(), self.size())
    }

    /// Permutations preserving each column of the canonical tableau.
    pub fn column_group(&self) -> Vec<Permutation> {
        block_group(&self.column_blocks(), self.size())
    }

    /// `a_λ = Σ_{P_λ} g`
    pub fn row_symmetrizer(&self) -> GroupAlgebraElement {
        GroupAlgebraElement::from_terms(self.size(), self.row_group().into_iter().map(|g| (g, Q::one())))
    }

    /// `b_λ = Σ_{Q_λ} sgn(g) g`
    pub fn column_antisymmetrizer(&self) -> GroupAlgebraElement {
        GroupAlgebraElement::from_terms(
            self.size(),
            self.column_group().into_iter().map(|g| {
                let s = q(g.sign() as i64);
                (g, s)
            }),
        )
    }

    /// `c_λ = a_λ · b_λ`, unnormalized.
    pub fn young_symmetrizer(&self) -> GroupAlgebraElement {
        self.row_symmetrizer().mul(&self.column_antisymmetrizer())
    }

    /// The constant `n_λ` with `c_λ² = n_λ c_λ`, namely `D! / f^λ`.
    pub fn symmetrizer_norm(&self) -> Q {
        let c = self.young_symmetrizer();
        let c2 = c.mul(&c);
        let id = Permutation::identity(self.size());
        c2.coeff(&id) / c.coeff(&id)
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `d`, in reverse lexicographic order.
pub fn partitions(d: usize) -> Vec<YoungDiagram> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        if rest == 0 {
            out.push(YoungDiagram { rows: cur.clone() });
            return;
        }
        for r in (1..=rest.min(max)).rev() {
            cur.push(r);
            go(rest - r, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

/// A permutation of `{0..d}` stored by images; `(g·h)(i) = g(h(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation((0..d).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::IndexOutOfRange(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    /// Transposition of the 1-based points `i` and `j`.
    pub fn transposition(d: usize, i: usize, j: usize) -> Self {
        let mut p: Vec<usize> = (0..d).collect();
        p.swap(i - 1, j - 1);
        Permutation(p)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn compose(&self, h: &Permutation) -> Permutation {
        Permutation(h.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    pub fn sign(&self) -> i32 {
        crate::combinatorics::permutation_sign(&self.0)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// All permutations of `{0..d}` in lexicographic order of images.
    pub fn all(d: usize) -> Vec<Permutation> {
        block_group(&[(0..d).collect()], d)
    }
}

fn block_group(blocks: &[Vec<usize>], d: usize) -> Vec<Permutation> {
    let mut out = vec![Permutation::identity(d)];
    for block in blocks {
        let arrangements = permutations_of(block);
        let mut next = Vec::with_capacity(out.len() * arrangements.len());
        for g in &out {
            for arr in &arrangements {
                let mut images = g.0.clone();
                for (src, &dst) in block.iter().zip(arr) {
                    images[*src] = dst;
                }
                next.push(Permutation(images));
            }
        }
        out = next;
    }
    out.sort();
    out
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Finite formal combination of permutations with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    degree: usize,
    terms: BTreeMap<Permutation, Q>,
}

impl GroupAlgebraElement {
    pub fn zero(degree: usize) -> Self {
        GroupAlgebraElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(g: Permutation) -> Self {
        Self::from_terms(g.degree(), [(g, Q::one())])
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Permutation, Q)>) -> Self {
        let mut out = Self::zero(degree);
        for (g, c) in terms {
            assert_eq!(g.degree(), degree, "permutation degree mismatch");
            out.add_term(g, c);
        }
        out
    }

    fn add_term(&mut self, g: Permutation, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// `Σ_{σ ∈ S_d} σ`
    pub fn symmetrizer(d: usize) -> Self {
        Self::from_terms(d, Permutation::all(d).into_iter().map(|g| (g, Q::one())))
    }

    /// `Σ_{σ ∈ S_d} sgn(σ) σ`
    pub fn antisymmetrizer(d: usize) -> Self {
        Self::from_terms(
            d,
            Permutation::all(d).into_iter().map(|g| {
                let s = q(g.sign() as i64);
                (g, s)
            }),
        )
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &Permutation) -> Q {
        self.terms.get(g).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_terms(self.degree, self.terms.iter().map(|(g, x)| (g.clone(), x * c)))
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Permutation, Q> = BTreeMap::new();
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                *acc.entry(g.compose(h)).or_insert_with(Q::zero) += a * b;
            }
        }
        Self::from_terms(self.degree, acc)
    }
}
