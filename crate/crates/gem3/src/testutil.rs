//! Shared fixtures for the unit tests.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::graph::ColouredGraph;

pub(crate) fn graph(matchings: [&[u32]; 4]) -> ColouredGraph {
    ColouredGraph::new(matchings.map(|m| m.to_vec())).expect("fixture must be valid")
}

/// Order-4 graph that is connected but not contracted: three parallel
/// matchings plus one crossing matching, so dropping colour 3 disconnects.
pub(crate) fn non_contracted_order4() -> ColouredGraph {
    graph([
        &[1, 0, 3, 2],
        &[1, 0, 3, 2],
        &[1, 0, 3, 2],
        &[2, 3, 0, 1],
    ])
}

/// Connected proper graph that is not bipartite (it has 3-cycles).
pub(crate) fn non_bipartite_order4() -> ColouredGraph {
    graph([
        &[1, 0, 3, 2],
        &[1, 0, 3, 2],
        &[2, 3, 0, 1],
        &[3, 2, 1, 0],
    ])
}

/// Bipartite, contracted, but with complementary residue counts 2 vs 1, so
/// the embedding machinery must refuse it. Found in the order-6 census.
pub(crate) fn genus_mismatch_order6() -> ColouredGraph {
    graph([
        &[1, 0, 3, 2, 5, 4],
        &[1, 0, 4, 5, 2, 3],
        &[2, 3, 0, 1, 5, 4],
        &[5, 4, 3, 2, 1, 0],
    ])
}

/// Bipartite contracted graph failing the sphere criterion (a 3-residue
/// carries a torus, not a sphere). Found in the order-6 census.
pub(crate) fn non_manifold_order6() -> ColouredGraph {
    graph([
        &[1, 0, 3, 2, 5, 4],
        &[1, 0, 3, 2, 5, 4],
        &[2, 4, 0, 5, 1, 3],
        &[5, 3, 4, 1, 2, 0],
    ])
}

/// The colour-0 edges (0,1) and (2,3) lie on a common bicoloured cycle for
/// all three pairs through colour 0.
pub(crate) fn rho3_order6() -> ColouredGraph {
    graph([
        &[1, 0, 3, 2, 5, 4],
        &[3, 2, 1, 0, 5, 4],
        &[3, 2, 1, 0, 5, 4],
        &[3, 4, 5, 0, 1, 2],
    ])
}

/// Random valid coloured graph: four random fixed-point-free involutions,
/// re-sampled until connected.
pub(crate) fn random_graph(order: usize, seed: u64) -> ColouredGraph {
    assert!(order >= 2 && order.is_multiple_of(2));
    let mut rng = StdRng::seed_from_u64(seed);
    loop {
        let matchings: [Vec<u32>; 4] = std::array::from_fn(|_| random_involution(order, &mut rng));
        if let Ok(g) = ColouredGraph::new(matchings) {
            return g;
        }
    }
}

fn random_involution(order: usize, rng: &mut StdRng) -> Vec<u32> {
    let mut vertices: Vec<u32> = (0..order as u32).collect();
    vertices.shuffle(rng);
    let mut m = vec![0u32; order];
    for pair in vertices.chunks(2) {
        m[pair[0] as usize] = pair[1];
        m[pair[1] as usize] = pair[0];
    }
    m
}
