use graph_ce::dense::{build_state, dense_purity, mixture_of_outcomes, reduced_density_matrix};
use graph_ce::metrics::concentratable_entanglement_exhaustive;
use graph_ce::{concentratable_entanglement, purity, Family, Graph, QubitSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn every_subset_purity_matches_dense_for_families() {
    for kind in Family::ALL {
        for size in kind.min_size().max(2)..=5 {
            let g = Graph::family(kind, size).unwrap();
            let psi = build_state(&g).unwrap();
            for kept in g.vertices().subsets().filter(|s| !s.is_empty()) {
                let exact = purity(&g, &kept).unwrap().to_f64();
                assert!(
                    (dense_purity(&psi, &kept) - exact).abs() < 1e-10,
                    "{kind}({size}) {kept}"
                );
            }
        }
    }
}

#[test]
fn dense_ce_matches_exact_ce() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..40 {
        let n = rng.gen_range(2..=8);
        let g = Graph::random_connected(n, 0.4, &mut rng);
        let psi = build_state(&g).unwrap();
        let s = QubitSet::from_mask(n, rng.gen_range(1..1u64 << n)).unwrap();
        let dense: f64 = s
            .subsets()
            .map(|a| {
                if a.is_empty() {
                    1.0
                } else {
                    dense_purity(&psi, &a)
                }
            })
            .sum();
        let dense_ce = 1.0 - dense / (1u64 << s.len()) as f64;
        let exact = concentratable_entanglement(&g, &s).unwrap();
        assert_eq!(
            exact,
            concentratable_entanglement_exhaustive(&g, &s).unwrap()
        );
        assert!((dense_ce - exact.to_f64()).abs() < 1e-10);
    }
}

#[test]
fn reduced_state_is_uniform_mixture_of_outcome_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..20 {
        let n = rng.gen_range(3..=7);
        let g = Graph::random_connected(n, 0.5, &mut rng);
        let traced = QubitSet::from_mask(n, rng.gen_range(1..(1u64 << n) - 1)).unwrap();
        let psi = build_state(&g).unwrap();
        let rho = reduced_density_matrix(&psi, &traced.complement());
        let mix = mixture_of_outcomes(&g, &traced).unwrap();
        assert!(rho.max_abs_diff(&mix) < 1e-10);
    }
}
