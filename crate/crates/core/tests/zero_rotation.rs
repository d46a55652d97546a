use immersa::generators::{random_series_parallel, trees};
use immersa::graph::NamedGraph;
use immersa::zero_rotation::{construct_zero_rotation, verify_zero, ZeroRotationError};
use immersa::MultiGraph;

fn assert_zero(g: &MultiGraph, what: &str) {
    let c = construct_zero_rotation(g).unwrap_or_else(|e| panic!("{what}: {e}"));
    assert!(c.immersion.validate().ok, "{what}");
    assert_eq!(verify_zero(&c.immersion).unwrap(), None, "{what}");
    c.certificate
        .verify(&c.immersion)
        .unwrap_or_else(|e| panic!("{what}: {e}"));
}

#[test]
fn random_series_parallel_graphs() {
    for seed in 0..50 {
        assert_zero(&random_series_parallel(seed, 4), &format!("seed {seed}"));
    }
}

#[test]
fn theta_graphs() {
    for n in 2..=8 {
        assert_zero(&NamedGraph::Theta(n).build(), &format!("theta {n}"));
    }
}

#[test]
fn all_small_trees() {
    for n in 1..=8 {
        for (i, t) in trees(n).iter().enumerate() {
            assert_zero(t, &format!("tree {i} on {n} vertices"));
        }
    }
}

#[test]
fn graphs_with_k4_minors_are_refused() {
    for named in [
        NamedGraph::Complete(4),
        NamedGraph::Petersen,
        NamedGraph::Heawood,
        NamedGraph::CompleteBipartite(3, 3),
    ] {
        let g = named.build();
        match construct_zero_rotation(&g) {
            Err(ZeroRotationError::HasK4Minor { witness, .. }) => {
                assert!(witness.witness.verify(&g), "{named}")
            }
            other => panic!("{named}: {:?}", other.map(|_| ())),
        }
    }
}
