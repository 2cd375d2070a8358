#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tensor_duality::brauer::{BrauerDiagram, BrauerElement, Coefficient};
use tensor_duality::rational::{q_frac, Q};
use tensor_duality::young::Permutation;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_diagram(rng: &mut ChaCha8Rng, d: usize) -> BrauerDiagram {
    let mut points: Vec<usize> = (1..=2 * d).collect();
    points.shuffle(rng);
    let pairs: Vec<_> = points.chunks(2).map(|c| (c[0], c[1])).collect();
    BrauerDiagram::new(d, &pairs).unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, d: usize) -> Permutation {
    let mut images: Vec<usize> = (0..d).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Q {
    q_frac(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

pub fn random_element<C: Coefficient>(rng: &mut ChaCha8Rng, d: usize, z: C, terms: usize) -> BrauerElement<C> {
    let mut e = BrauerElement::zero(d, z);
    for _ in 0..terms {
        let c = random_rational(rng);
        e.add_term(random_diagram(rng, d), C::from_q(c));
    }
    e
}

use tensor_duality::model::{Propagator, StrandedGraph};

pub fn random_graph(rng: &mut ChaCha8Rng, d: usize, vertices: usize) -> StrandedGraph {
    let mut nodes: Vec<usize> = (1..=d * vertices).collect();
    nodes.shuffle(rng);
    let pairs: Vec<_> = nodes.chunks(2).map(|c| (c[0], c[1])).collect();
    let pairing = tensor_duality::combinatorics::DirectedPairing::new(d * vertices, pairs).unwrap();
    StrandedGraph::from_pairing(d, vertices, pairing).unwrap()
}

pub fn random_connected_graph(rng: &mut ChaCha8Rng, d: usize, vertices: usize) -> StrandedGraph {
    loop {
        let g = random_graph(rng, d, vertices);
        if g.is_connected() {
            return g;
        }
    }
}

/// A random propagator invariant under exchanging its two tensors.
pub fn random_symmetric_propagator(rng: &mut ChaCha8Rng, d: usize, terms: usize) -> Propagator {
    let e = random_element(rng, d, Q::from_integer(0.into()), terms);
    let sym = e.add(&e.flip()).unwrap();
    Propagator::from_numeric(&sym).unwrap()
}
