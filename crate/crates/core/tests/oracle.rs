#![allow(clippy::needless_range_loop)]

mod common;

use common::{random_graph, random_symmetric_propagator, rng};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use tensor_duality::brauer::BrauerDiagram;
use tensor_duality::model::*;
use tensor_duality::oracle::*;
use tensor_duality::poly::RatFunc;
use tensor_duality::rational::{q, Q};
use tensor_duality::{Error, Grading};

const B0: Grading = Grading::Orthogonal;
const B1: Grading = Grading::Symplectic;

fn matrix(rows: &[&[i64]]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

fn identity_plus_swap() -> Propagator {
    Propagator::from_weights(
        2,
        [(BrauerDiagram::identity(2), RatFunc::one()), (BrauerDiagram::sigma(2, 1).unwrap(), RatFunc::one())],
    )
    .unwrap()
}

fn trace_invariant() -> StrandedGraph {
    StrandedGraph::new(2, 2, &[((1, 1), (2, 1)), ((1, 2), (2, 2))]).unwrap()
}

#[test]
fn exterior_algebra_anticommutes() {
    let a = ExteriorElement::generator(3, 0).unwrap();
    let b = ExteriorElement::generator(3, 2).unwrap();
    assert_eq!(a.mul(&b), b.mul(&a).scale(&q(-1)));
    assert!(a.mul(&a).is_zero());
    let ab = a.mul(&b);
    assert_eq!(ab.coeff(0b101), q(1));
    assert_eq!(b.mul(&a).coeff(0b101), q(-1));
    assert!(ExteriorElement::zero(17).is_err());
}

/// `exp(-½ θᵀKθ)` on two generators is `1 - K_12 θ_1θ_2`, so the
/// normalized integral of `θ_1θ_2` is `-1/K_12`, and `K = C^{-1}` has
/// `K_12 = -1/c` for `C = [[0, c], [-c, 0]]`.
#[test]
fn two_generator_closed_form() {
    for c in [q(1), q(3), q(-2) / q(5)] {
        let k12 = -(Q::one() / &c);
        let weight = ExteriorElement::scalar(2, Q::one())
            .unwrap()
            .add(&ExteriorElement::generator(2, 0).unwrap().mul(&ExteriorElement::generator(2, 1).unwrap()).scale(&-&k12));
        let z = weight.top_coefficient();
        let hand = Q::one() / z;
        assert_eq!(hand, -(Q::one() / &k12));

        let cov = ExplicitCovariance::from_matrix(vec![vec![q(0), c.clone()], vec![-c.clone(), q(0)]], true).unwrap();
        assert_eq!(berezin_expectation(&cov, &[0, 1]).unwrap(), hand);
        assert_eq!(berezin_expectation(&cov, &[1, 0]).unwrap(), -hand);
        assert_eq!(berezin_expectation(&cov, &[]).unwrap(), Q::one());
        assert_eq!(berezin_expectation(&cov, &[0]).unwrap(), Q::zero());
    }
}

fn random_antisymmetric(r: &mut impl Rng, size: usize) -> Vec<Vec<Q>> {
    let mut m = vec![vec![Q::zero(); size]; size];
    for i in 0..size {
        for j in i + 1..size {
            let x = q(r.gen_range(-3..=3));
            m[i][j] = x.clone();
            m[j][i] = -x;
        }
    }
    m
}

#[test]
fn berezin_four_point_function_is_pfaffian_like() {
    let mut r = rng(60);
    for _ in 0..20 {
        let m = random_antisymmetric(&mut r, 4);
        let cov = match ExplicitCovariance::from_matrix(m.clone(), true) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let expected = &m[0][1] * &m[2][3] - &m[0][2] * &m[1][3] + &m[0][3] * &m[1][2];
        assert_eq!(berezin_expectation(&cov, &[0, 1, 2, 3]).unwrap(), expected);
        for (i, j) in [(0, 1), (0, 2), (1, 3)] {
            assert_eq!(berezin_expectation(&cov, &[i, j]).unwrap(), m[i][j]);
        }
    }
}

#[test]
fn berezin_handles_singular_covariance() {
    // rank two on four generators
    let m = matrix(&[&[0, 1, 2, 0], &[-1, 0, 0, 0], &[-2, 0, 0, 0], &[0, 0, 0, 0]]);
    let cov = ExplicitCovariance::from_matrix(m.clone(), true).unwrap();
    let integrator = BerezinIntegrator::new(&cov).unwrap();
    assert_eq!(integrator.rank(), 2);
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(integrator.moment(&[i, j]).unwrap(), m[i][j]);
        }
    }
    assert_eq!(integrator.moment(&[0, 1, 0, 2]).unwrap(), Q::zero());
}

#[test]
fn berezin_antisymmetric_under_adjacent_transposition() {
    let mut r = rng(61);
    let m = random_antisymmetric(&mut r, 6);
    let cov = ExplicitCovariance::from_matrix(m, true).unwrap();
    let integrator = BerezinIntegrator::new(&cov).unwrap();
    for _ in 0..30 {
        let mut idx: Vec<usize> = (0..6).collect();
        idx.shuffle(&mut r);
        idx.truncate(4);
        let base = integrator.moment(&idx).unwrap();
        let k = r.gen_range(0..3);
        idx.swap(k, k + 1);
        assert_eq!(integrator.moment(&idx).unwrap(), -base);
    }
}

#[test]
fn bosonic_moments() {
    let unit = ExplicitCovariance::from_matrix(matrix(&[&[1]]), false).unwrap();
    assert_eq!(bosonic_moment(&unit, &[0, 0, 0, 0]).unwrap(), q(3));
    assert_eq!(bosonic_moment(&unit, &[0; 6]).unwrap(), q(15));
    assert!(bosonic_moment(&unit, &[0]).is_err());

    let m = matrix(&[&[2, 1, 0], &[1, 3, -1], &[0, -1, 1]]);
    let cov = ExplicitCovariance::from_matrix(m.clone(), false).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(bosonic_moment(&cov, &[i, j]).unwrap(), m[i][j]);
        }
    }
    let base = bosonic_moment(&cov, &[0, 1, 1, 2]).unwrap();
    for perm in [[1, 0, 2, 1], [2, 1, 1, 0], [1, 2, 0, 1]] {
        assert_eq!(bosonic_moment(&cov, &perm).unwrap(), base);
    }
}

#[test]
fn trace_invariant_numeric() {
    let c = identity_plus_swap();
    assert_eq!(numeric_invariant_expectation(&trace_invariant(), &c, 2, B0).unwrap(), q(6));
    assert_eq!(numeric_invariant_expectation(&trace_invariant(), &c, 3, B0).unwrap(), q(12));
    assert_eq!(numeric_invariant_expectation(&trace_invariant(), &c, 2, B1).unwrap(), q(2));
    assert_eq!(numeric_invariant_expectation(&trace_invariant(), &c, 4, B1).unwrap(), q(12));
}

#[test]
fn covariance_symmetry_follows_grading() {
    let c = Propagator::identity(3);
    let even = ExplicitCovariance::new(&c, 2, B0).unwrap();
    assert!(!even.is_odd());
    let odd = ExplicitCovariance::new(&c, 2, B1).unwrap();
    assert!(odd.is_odd());
    for a in 0..8 {
        for b in 0..8 {
            assert_eq!(odd.entry(a, b), &-odd.entry(b, a));
        }
    }
    assert!(matches!(ExplicitCovariance::new(&c, 3, B1), Err(Error::OddSymplecticDimension(3))));
    // a single swap is not symmetric under exchange of the two tensors
    let lopsided = Propagator::from_weights(3, [(BrauerDiagram::from_permutation(&tensor_duality::young::Permutation::from_images(vec![1, 2, 0]).unwrap()), RatFunc::one())]).unwrap();
    assert!(ExplicitCovariance::new(&lopsided, 2, B0).is_err());
}

fn connected_graphs(d: usize, max_vertices: usize) -> Vec<StrandedGraph> {
    (1..=max_vertices / 2)
        .flat_map(|p| enumerate_invariants(d, 2 * p, SlotSymmetry::None, DEFAULT_ENUMERATION_CAP).unwrap())
        .collect()
}

fn agree(g: &StrandedGraph, c: &Propagator, n: usize, b: Grading) {
    let cmp = compare_with_pipeline(g, c, n, b, &ExpectationOptions::default()).unwrap();
    assert!(cmp.agrees(), "N = {n}, b = {}: pipeline {} vs oracle {}", b.bit(), cmp.pipeline, cmp.oracle);
}

#[test]
fn oracle_matches_pipeline_orthogonal_d2() {
    let props = [Propagator::symmetric_traceless(2).unwrap(), Propagator::antisymmetric(2).unwrap(), identity_plus_swap()];
    for g in connected_graphs(2, 4) {
        for c in &props {
            for n in 2..=4 {
                agree(&g, c, n, B0);
            }
        }
    }
}

#[test]
fn oracle_matches_pipeline_symplectic_d2() {
    let props = [Propagator::symmetric_traceless(2).unwrap(), Propagator::antisymmetric(2).unwrap(), identity_plus_swap()];
    for g in connected_graphs(2, 4) {
        for c in &props {
            agree(&g, c, 2, B1);
            agree(&g, c, 4, B1);
        }
    }
}

#[test]
fn oracle_matches_pipeline_fermionic_quadratic() {
    let props = [Propagator::antisymmetric(3).unwrap(), Propagator::identity(3)];
    for g in connected_graphs(3, 2) {
        for c in &props {
            agree(&g, c, 2, B1);
        }
    }
}

#[test]
fn oracle_matches_pipeline_random() {
    let mut r = rng(62);
    for _ in 0..10 {
        let d = r.gen_range(1..=3);
        let vertices = if d == 3 { 2 } else { 2 * r.gen_range(1..=2) };
        let g = random_graph(&mut r, d, vertices);
        let c = random_symmetric_propagator(&mut r, d, 3);
        for b in [B0, B1] {
            agree(&g, &c, 2, b);
        }
    }
}

#[test]
fn fermionic_quartic_invariants() {
    let mut r = rng(63);
    for _ in 0..5 {
        let g = random_graph(&mut r, 3, 4);
        agree(&g, &Propagator::identity(3), 2, B1);
    }
}

#[test]
fn oracle_is_independent_of_reference_pairing() {
    let mut r = rng(64);
    let c = Propagator::identity(3);
    for _ in 0..20 {
        let g = random_graph(&mut r, 3, 4);
        for b in [B0, B1] {
            let base = numeric_invariant_expectation(&g, &c, 2, b).unwrap();
            let mut order: Vec<usize> = (1..=4).collect();
            order.shuffle(&mut r);
            let reference = [(order[0], order[1]), (order[2], order[3])];
            assert_eq!(numeric_invariant_expectation_with_reference(&g, &c, 2, b, &reference).unwrap(), base);
            let k = r.gen_range(0..6);
            assert_eq!(numeric_invariant_expectation(&g.reorient(k), &c, 2, b).unwrap(), base);
        }
    }
}

#[test]
fn oracle_caps() {
    let c = Propagator::identity(4);
    let g = enumerate_invariants(4, 2, SlotSymmetry::None, DEFAULT_ENUMERATION_CAP).unwrap().remove(0);
    assert!(matches!(numeric_invariant_expectation(&g, &c, 5, B0), Err(Error::CapExceeded { .. })));
}
