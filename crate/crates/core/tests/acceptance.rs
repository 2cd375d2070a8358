//! Acceptance criteria. Each test prints one `PASS` or `FAIL` line and
//! asserts the verdict. All comparisons are exact; each criterion also has a
//! wall-clock budget.

mod common;

use std::time::{Duration, Instant};

use common::{random_element, random_graph, random_symmetric_propagator, rng};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tensor_duality::brauer::{casimir_ad, compose_diagrams, BrauerDiagram, FormalElement};
use tensor_duality::combinatorics::{all_pairings, face_decomposition, pairing_sign, DirectedPairing, GroundSet};
use tensor_duality::model::*;
use tensor_duality::oracle::{compare_with_pipeline, ExplicitCovariance};
use tensor_duality::poly::{Poly, RatFunc};
use tensor_duality::rational::{q, Q};
use tensor_duality::representation::{
    element_to_map, factorial, symmetric_traceless_projector, traceless_element, GradedForm,
};
use tensor_duality::young::{partitions, GroupAlgebraElement, Permutation, YoungDiagram};
use tensor_duality::brauer::embed_group_algebra;
use tensor_duality::Grading;

const B0: Grading = Grading::Orthogonal;
const B1: Grading = Grading::Symplectic;

fn verdict(number: u32, title: &str, pass: bool, detail: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let ok = pass && in_time;
    println!(
        "criterion {number} [{}] {title}: {detail}; {:.2}s of {}s",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    assert!(pass, "criterion {number} failed: {detail}");
    assert!(in_time, "criterion {number} exceeded its time budget");
}

/// `(1/denominator) ∏ (N + shift)`.
fn factored(shifts: &[i64], denominator: i64) -> Poly {
    shifts
        .iter()
        .fold(Poly::one(), |acc, &c| &acc * &Poly::linear(q(c)))
        .scale(&(Q::from(num_bigint::BigInt::from(1)) / q(denominator)))
}

#[test]
fn criterion_1_dimension_polynomials() {
    let start = Instant::now();
    let stated_211 = factored(&[0, -1, 1, 2], 8);
    let stated_31 = factored(&[0, -1, -2, 1], 8);
    let got_211 = YoungDiagram::new(vec![2, 1, 1]).unwrap().gl_dimension_poly();
    let got_31 = YoungDiagram::new(vec![3, 1]).unwrap().gl_dimension_poly();
    let first = got_211 == stated_211;
    let second = got_31 == stated_31;
    let mut duality_cases = 0;
    let mut duality_failures = Vec::new();
    for d in 1..=7 {
        for lambda in partitions(d) {
            duality_cases += 1;
            let lhs = lambda.gl_dimension_poly().reflect();
            let rhs = lambda.transpose().gl_dimension_poly();
            let rhs = if d % 2 == 1 { -&rhs } else { rhs };
            if lhs != rhs {
                duality_failures.push(format!("{:?}", lambda.rows()));
            }
        }
    }
    let detail = format!(
        "dim((2,1,1)) = {} vs stated N(N-1)(N+1)(N+2)/8 [{}]; dim((3,1)) = {} vs stated N(N-1)(N-2)(N+1)/8 [{}]; \
         duality on {duality_cases} shapes with |lambda| <= 7 [{} failures]",
        YoungDiagram::new(vec![2, 1, 1]).unwrap().gl_dimension_factored(),
        if first { "equal" } else { "differs" },
        YoungDiagram::new(vec![3, 1]).unwrap().gl_dimension_factored(),
        if second { "equal" } else { "differs" },
        duality_failures.len()
    );
    verdict(
        1,
        "dimension polynomials",
        first && second && duality_failures.is_empty(),
        &detail,
        start,
        Duration::from_secs(1),
    );
}

/// Top point `i` joined to bottom point `images[i-1]`.
fn permutation_diagram(images: &[usize]) -> BrauerDiagram {
    let d = images.len();
    let pairs: Vec<_> = images.iter().enumerate().map(|(i, &j)| (i + 1, d + j)).collect();
    BrauerDiagram::new(d, &pairs).unwrap()
}

#[test]
fn criterion_2_brauer_products() {
    let start = Instant::now();
    let sigma = permutation_diagram(&[2, 3, 1, 4]);
    let tau = permutation_diagram(&[2, 1, 4, 3]);
    let (sigma_tau, sigma_tau_loops) = compose_diagrams(&sigma, &tau).unwrap();
    let first = sigma_tau == permutation_diagram(&[3, 2, 4, 1]) && sigma_tau_loops == 0;

    let beta = BrauerDiagram::new(4, &[(1, 3), (2, 4), (5, 6), (7, 8)]).unwrap();
    let upsilon = BrauerDiagram::new(4, &[(1, 2), (3, 8), (4, 6), (5, 7)]).unwrap();
    let expected = BrauerDiagram::new(4, &[(1, 2), (3, 4), (5, 6), (7, 8)]).unwrap();
    let (_, loops) = compose_diagrams(&beta, &upsilon).unwrap();
    let product = FormalElement::formal(beta).mul(&FormalElement::formal(upsilon)).unwrap();
    let second = loops == 1 && product.len() == 1 && product.coeff(&expected) == Poly::x();

    let detail = format!("sigma tau = {sigma_tau} with {sigma_tau_loops} loops; beta upsilon = z times {expected}");
    verdict(2, "Brauer products", first && second, &detail, start, Duration::from_secs(1));
}

/// Two melonic D=3 interactions: vertices 1, 2 joined slot by slot and
/// vertices 3, 4 joined with slots 2 and 3 crossed. Propagator edges join 1
/// with 3 through the swap of slots 2, 3 and 2 with 4 straight.
#[test]
fn criterion_3_three_face_graph() {
    let start = Instant::now();
    let s1 = StrandedGraph::new(3, 2, &[((1, 1), (2, 1)), ((1, 2), (2, 2)), ((1, 3), (2, 3))]).unwrap();
    let s2 = StrandedGraph::new(3, 2, &[((1, 1), (2, 1)), ((1, 2), (2, 3)), ((1, 3), (2, 2))]).unwrap();
    let s = s1.disjoint_union(&s2).unwrap();
    let swap = BrauerDiagram::sigma_ij(3, 2, 3).unwrap();
    let c = Propagator::from_weights(3, [(BrauerDiagram::identity(3), RatFunc::one()), (swap.clone(), RatFunc::one())]).unwrap();
    let swap_term = c.terms().iter().position(|t| t.diagram == swap).unwrap();
    let m0 = DirectedPairing::new(4, vec![(1, 3), (2, 4)]).unwrap();
    let graph = wick_expand(&s, &c, &default_reference(4))
        .unwrap()
        .into_iter()
        .find(|g| g.m0 == m0 && g.terms == vec![swap_term, 1 - swap_term])
        .unwrap();
    let faces = count_faces(&graph).unwrap().total;
    let even = graph_amplitude(&graph, B0).unwrap();
    let odd = graph_amplitude(&graph, B1).unwrap();
    let cube = RatFunc::from_poly(Poly::monomial(q(1), 3));
    let pass = faces == 3 && even.value() == &cube && odd.value() == &-&cube;
    let detail = format!("F = {faces}; b=0: {}; b=1: {}", even.value().display_in("N"), odd.value().display_in("N"));
    verdict(3, "three-face graph", pass, &detail, start, Duration::from_secs(1));
}

#[test]
fn criterion_4_homomorphism() {
    let start = Instant::now();
    let mut r = rng(1004);
    let mut checked = 0;
    let mut failures = 0;
    for (d, n, b) in [(2, 3, B0), (3, 2, B0), (2, 2, B1), (3, 2, B1)] {
        let form = GradedForm::new(n, b).unwrap();
        let z = form.loop_weight();
        for _ in 0..25 {
            let e1 = random_element(&mut r, d, z.clone(), 4);
            let e2 = random_element(&mut r, d, z.clone(), 4);
            let lhs = element_to_map(&e1.mul(&e2).unwrap(), &form).unwrap();
            let rhs = element_to_map(&e1, &form).unwrap().compose(&element_to_map(&e2, &form).unwrap()).unwrap();
            checked += 1;
            if lhs != rhs {
                failures += 1;
            }
        }
    }
    let detail = format!("{checked} random pairs over four (D, N, b) settings, {failures} mismatches");
    verdict(4, "homomorphism", failures == 0 && checked >= 100, &detail, start, Duration::from_secs(60));
}

#[test]
fn criterion_5_projectors() {
    let start = Instant::now();
    let mut checks = 0;
    let mut failures = Vec::new();
    let settings = [(B0, vec![1, 2, 3, 4]), (B1, vec![2, 4])];
    for (b, ns) in &settings {
        for &n in ns {
            let form = GradedForm::new(n, *b).unwrap();
            for d in 2..=3 {
                let p = element_to_map(&traceless_element(d, &form).unwrap(), &form).unwrap();
                let a = element_to_map(&casimir_ad(d, form.loop_weight()).unwrap(), &form).unwrap();
                let mut ok = p.compose(&p).unwrap() == p && a.compose(&p).unwrap().is_zero();
                for g in Permutation::all(d) {
                    let s = element_to_map(
                        &tensor_duality::brauer::BrauerElement::from_diagram(form.loop_weight(), BrauerDiagram::from_permutation(&g)),
                        &form,
                    )
                    .unwrap();
                    ok &= s.compose(&p).unwrap() == p.compose(&s).unwrap();
                }
                checks += 1;
                if !ok {
                    failures.push(format!("D={d} N={n} b={}", b.bit()));
                }
            }
        }
    }
    for b in [B0, B1] {
        let form = GradedForm::new(4, b).unwrap();
        for d in 2..=3 {
            let formula = symmetric_traceless_projector(d, &form).unwrap().map;
            let p = element_to_map(&traceless_element(d, &form).unwrap(), &form).unwrap();
            let symmetrizer = embed_group_algebra(&GroupAlgebraElement::symmetrizer(d), form.loop_weight())
                .scale(&(Q::from(num_bigint::BigInt::from(1)) / factorial(d)));
            let composed = p.compose(&element_to_map(&symmetrizer, &form).unwrap()).unwrap();
            checks += 1;
            if formula != composed {
                failures.push(format!("product formula D={d} N=4 b={}", b.bit()));
            }
        }
    }
    let detail = format!("{checks} settings checked, failures: {failures:?}");
    verdict(5, "projector suite", failures.is_empty(), &detail, start, Duration::from_secs(120));
}

/// Every connected stranded graph, as a labeled pairing of the nodes.
fn all_connected_graphs(d: usize, vertices: usize) -> Vec<StrandedGraph> {
    all_pairings(GroundSet::new(d * vertices).unwrap())
        .map(|m| StrandedGraph::from_matching(d, vertices, &m).unwrap())
        .filter(|g| g.is_connected())
        .collect()
}

#[test]
fn criterion_6_duality() {
    let start = Instant::now();
    let options = ExpectationOptions::default();
    let mut checked = 0;
    let mut failures = 0;
    for (d, vertices) in [(2, 2), (2, 4), (3, 2)] {
        let propagators = [Propagator::symmetric_traceless(d).unwrap(), Propagator::antisymmetric(d).unwrap()];
        for g in all_connected_graphs(d, vertices) {
            for c in &propagators {
                checked += 1;
                if !duality_check(&g, c, &options).unwrap().holds {
                    failures += 1;
                }
            }
        }
    }
    let detail = format!("{checked} (graph, projector propagator) pairs, {failures} failures");
    verdict(6, "duality", failures == 0, &detail, start, Duration::from_secs(300));
}

#[test]
fn criterion_7_oracle_equivalence() {
    let start = Instant::now();
    let options = ExpectationOptions::default();
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut compare = |g: &StrandedGraph, c: &Propagator, n: usize, b: Grading| {
        let cmp = compare_with_pipeline(g, c, n, b, &options).unwrap();
        checked += 1;
        if !cmp.agrees() {
            failures.push(format!("N={n} b={}: {} vs {}", b.bit(), cmp.pipeline, cmp.oracle));
        }
    };
    let d2: Vec<StrandedGraph> = [2, 4].iter().flat_map(|&v| all_connected_graphs(2, v)).collect();
    let projectors2 = [Propagator::symmetric_traceless(2).unwrap(), Propagator::antisymmetric(2).unwrap()];
    for g in &d2 {
        for c in &projectors2 {
            for n in 2..=4 {
                compare(g, c, n, B0);
            }
            compare(g, c, 2, B1);
        }
    }
    let fermionic = Propagator::antisymmetric(3).unwrap();
    let odd = ExplicitCovariance::new(&fermionic, 2, B1).unwrap().is_odd();
    for g in all_connected_graphs(3, 2) {
        compare(&g, &fermionic, 2, B1);
        compare(&g, &Propagator::identity(3), 2, B1);
    }
    let detail = format!("{checked} comparisons (anticommuting components at D=3: {odd}), mismatches: {failures:?}");
    verdict(7, "oracle equivalence", failures.is_empty() && odd, &detail, start, Duration::from_secs(600));
}

fn random_directed_pairing(r: &mut ChaCha8Rng, n: usize) -> DirectedPairing {
    let mut nodes: Vec<usize> = (1..=n).collect();
    nodes.shuffle(r);
    let pairs = nodes.chunks(2).map(|c| if r.gen() { (c[0], c[1]) } else { (c[1], c[0]) }).collect();
    DirectedPairing::new(n, pairs).unwrap()
}

/// Sign of the permutation between the flattened pair lists, by counting
/// inversions.
fn inversion_sign(m1: &DirectedPairing, m2: &DirectedPairing) -> i32 {
    let a: Vec<usize> = m1.pairs().iter().flat_map(|&(x, y)| [x, y]).collect();
    let b: Vec<usize> = m2.pairs().iter().flat_map(|&(x, y)| [x, y]).collect();
    let position: Vec<usize> = b.iter().map(|x| a.iter().position(|y| y == x).unwrap()).collect();
    let mut inversions = 0;
    for i in 0..position.len() {
        for j in i + 1..position.len() {
            inversions += usize::from(position[i] > position[j]);
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[test]
fn criterion_8_sign_properties() {
    let start = Instant::now();
    let mut r = rng(1008);
    let instances = 250;
    let mut failures = [0usize; 5];
    for _ in 0..instances {
        let n = 2 * r.gen_range(1..=6);
        let m1 = random_directed_pairing(&mut r, n);
        let m2 = random_directed_pairing(&mut r, n);
        let m3 = random_directed_pairing(&mut r, n);
        let e12 = pairing_sign(&m1, &m2).unwrap();
        if e12 != inversion_sign(&m1, &m2) {
            failures[0] += 1;
        }
        if e12 != pairing_sign(&m2, &m1).unwrap() {
            failures[1] += 1;
        }
        if e12 != pairing_sign(&m1, &m3).unwrap() * pairing_sign(&m2, &m3).unwrap() {
            failures[2] += 1;
        }
        let k = 2 * r.gen_range(1..=4);
        let m4 = random_directed_pairing(&mut r, k);
        let m5 = random_directed_pairing(&mut r, k);
        if pairing_sign(&m1.disjoint_union(&m4), &m2.disjoint_union(&m5)).unwrap() != e12 * pairing_sign(&m4, &m5).unwrap() {
            failures[3] += 1;
        }
        let even = face_decomposition(&m1, &m2).unwrap().even_count();
        if e12 != if even.is_multiple_of(2) { 1 } else { -1 } {
            failures[4] += 1;
        }
    }
    let detail = format!(
        "{instances} instances each; failures: inversion count {}, symmetry {}, transitivity {}, disjoint union {}, even faces {}",
        failures[0], failures[1], failures[2], failures[3], failures[4]
    );
    verdict(8, "sign properties", failures.iter().all(|&f| f == 0), &detail, start, Duration::from_secs(10));
}

#[test]
fn criterion_9_invariance() {
    let start = Instant::now();
    let mut r = rng(1009);
    let instances = 60;
    let mut failures = [0usize; 3];
    for _ in 0..instances {
        let d = r.gen_range(1..=3);
        let vertices = 2 * r.gen_range(1..=2);
        let g = random_graph(&mut r, d, vertices);
        let c = random_symmetric_propagator(&mut r, d, 3);
        let k = r.gen_range(0..g.strand_count() * vertices / 2);
        let mut perm: Vec<usize> = (1..=vertices).collect();
        perm.shuffle(&mut r);
        let reference = DirectedPairing::new(vertices, perm.chunks(2).map(|p| (p[0], p[1])).collect()).unwrap();
        perm.shuffle(&mut r);
        for b in [B0, B1] {
            let base = gaussian_expectation(&g, &c, b, &ExpectationOptions::default()).unwrap();
            let reoriented = gaussian_expectation(&g.reorient(k), &c, b, &ExpectationOptions::default()).unwrap();
            let options = ExpectationOptions {
                reference: Some(reference.clone()),
                threads: 1,
            };
            let rereferenced = gaussian_expectation(&g, &c, b, &options).unwrap();
            let relabeled = gaussian_expectation(&g.relabel_vertices(&perm).unwrap(), &c, b, &ExpectationOptions::default()).unwrap();
            failures[0] += usize::from(reoriented != base);
            failures[1] += usize::from(rereferenced != base);
            failures[2] += usize::from(relabeled != base);
        }
    }
    let detail = format!(
        "{instances} random (S, C) at both gradings; failures: reorientation {}, reference {}, relabeling {}",
        failures[0], failures[1], failures[2]
    );
    verdict(9, "invariance", failures.iter().all(|&f| f == 0), &detail, start, Duration::from_secs(120));
}
