mod common;

use rand::Rng;
use spreadembed::generate::{gnm, toy_bipartite};
use spreadembed::hetero::{self, hetero_update_center, map_to_benchmark, sigma0, update_mapping_matrices};
use spreadembed::homo;
use spreadembed::rng::{stream_rng, Stream};
use spreadembed::sampling::draw_all;
use spreadembed::trainer::TrainConfig;
use spreadembed::{train, train_hetero, MappingMatrices};

use common::*;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn gradients_match_finite_differences() {
    let mut rng = stream_rng(21, Stream::Generator, 0);
    for _ in 0..20 {
        let n = rng.random_range(3..=15);
        let d = rng.random_range(1..=5);
        let types = rng.random_range(1..=3);
        let g = with_random_types(random_graph(n, 0.35, &mut rng), types, &mut rng);
        let samples = draw_all(&g, rng.random_range(1..=3), &mut rng);
        let emb = random_table(n, d, 1.0, &mut rng);
        let maps = perturbed_identity(types, d, 0.4, &mut rng);
        let (e, m) = hetero_gradient_error(&g, &emb, &maps, &samples);
        assert!(e < 1e-5 && m < 1e-5, "α {e}, W {m}");
    }
}

#[test]
fn identity_matrices_reduce_to_homogeneous_likelihood() {
    let mut rng = stream_rng(22, Stream::Generator, 0);
    let g = with_random_types(gnm(20, 50, &mut rng), 3, &mut rng);
    let samples = draw_all(&g, 2, &mut rng);
    let emb = random_table(20, 4, 1.0, &mut rng);
    let maps = MappingMatrices::identity(3, 4);
    let a = hetero::log_likelihood(&g, &emb, &maps, &samples);
    let b = homo::log_likelihood(&g, &emb, &samples);
    assert!(close(a, b));
}

#[test]
fn benchmark_vector_is_matrix_product() {
    let g = toy_bipartite();
    let mut rng = stream_rng(23, Stream::Generator, 0);
    let emb = random_table(6, 3, 1.0, &mut rng);
    let maps = perturbed_identity(2, 3, 0.5, &mut rng);
    for v in g.nodes() {
        let w = maps.matrix(g.node_type(v));
        let x = emb.row(v);
        let expected: Vec<f64> = (0..3).map(|i| (0..3).map(|j| w[i * 3 + j] * x[j]).sum()).collect();
        let got = map_to_benchmark(&g, v, &emb, &maps).unwrap();
        assert!(got.iter().zip(&expected).all(|(a, b)| close(*a, *b)));
    }
    let (a, p) = (g.node_id("a1").unwrap(), g.node_id("p1").unwrap());
    let s = sigma0(&g, a, p, &emb, &maps);
    let ba = map_to_benchmark(&g, a, &emb, &maps).unwrap();
    let bp = map_to_benchmark(&g, p, &emb, &maps).unwrap();
    let z: f64 = ba.iter().zip(&bp).map(|(x, y)| x * y).sum();
    assert!(close(s, 1.0 / (1.0 + (-z).exp())));
}

#[test]
fn embedding_update_is_a_gradient_step() {
    let mut rng = stream_rng(24, Stream::Generator, 0);
    let g = with_random_types(gnm(20, 45, &mut rng), 2, &mut rng);
    let samples = draw_all(&g, 2, &mut rng);
    let emb = random_table(20, 4, 1.0, &mut rng);
    let maps = perturbed_identity(2, 4, 0.3, &mut rng);
    let lr = 0.02;
    for set in &samples {
        let (grad, _) = hetero::log_likelihood_gradient(&g, &emb, &maps, std::slice::from_ref(set));
        let mut stepped = emb.clone();
        hetero_update_center(&g, set, &mut stepped, &maps, lr).unwrap();
        for ((after, before), gr) in stepped.as_slice().iter().zip(emb.as_slice()).zip(grad.as_slice()) {
            assert!(close(after - before, lr * gr));
        }
    }
}

#[test]
fn matrix_update_is_a_gradient_step() {
    let mut rng = stream_rng(25, Stream::Generator, 0);
    let g = with_random_types(gnm(20, 45, &mut rng), 3, &mut rng);
    let samples = draw_all(&g, 2, &mut rng);
    let emb = random_table(20, 3, 1.0, &mut rng);
    let maps = perturbed_identity(3, 3, 0.3, &mut rng);
    let (_, grad) = hetero::log_likelihood_gradient(&g, &emb, &maps, &samples);
    let mut stepped = maps.clone();
    update_mapping_matrices(&g, &emb, &mut stepped, &samples, 0.01).unwrap();
    for t in 0..3 {
        for i in 0..9 {
            assert!(close(
                stepped.matrix(t)[i] - maps.matrix(t)[i],
                0.01 * grad.matrix(t)[i]
            ));
        }
    }
}

#[test]
fn frozen_identity_training_equals_homogeneous() {
    let g = gnm(50, 150, &mut stream_rng(26, Stream::Generator, 0));
    let config = TrainConfig {
        dimension: 6,
        max_iterations: 5,
        seed: 3,
        freeze_matrices: true,
        ..TrainConfig::default()
    };
    let a = train(&g, &config).unwrap();
    let b = train_hetero(&g, &config).unwrap();
    assert_eq!(a.model.embeddings, b.model.embeddings);
    assert_eq!(a.likelihood, b.likelihood);
    assert_eq!(b.model.matrices.unwrap(), MappingMatrices::identity(1, 6));
}

#[test]
fn bipartite_training_separates_links_from_non_links() {
    let g = toy_bipartite();
    let config = TrainConfig {
        dimension: 4,
        learning_rate: 0.05,
        negative: 1,
        max_iterations: 100,
        ..TrainConfig::default()
    };
    let out = train_hetero(&g, &config).unwrap();
    assert!(out.likelihood.last().unwrap() > &out.likelihood[0]);
    let maps = out.model.matrices.as_ref().unwrap();
    let mut linked = Vec::new();
    let mut unlinked = Vec::new();
    for a in g.nodes().filter(|&v| g.node_type(v) == 0) {
        for p in g.nodes().filter(|&v| g.node_type(v) == 1) {
            let s = sigma0(&g, a, p, &out.model.embeddings, maps);
            if g.is_adjacent(a, p) {
                linked.push(s)
            } else {
                unlinked.push(s)
            }
        }
    }
    let min_linked = linked.iter().copied().fold(f64::MAX, f64::min);
    let max_unlinked = unlinked.iter().copied().fold(f64::MIN, f64::max);
    assert!(min_linked > max_unlinked, "{linked:?} {unlinked:?}");
}
