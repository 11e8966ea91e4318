//! Structural invariants that tie the independent computation paths
//! together: exact character verdicts against floating eigendecompositions,
//! cube symmetries, scheme axioms sampled at random, bookkeeping identities
//! of design reports, and determinism of the search enumeration.

use gdesign_core::{
    cube_decomposition, cube_design_report, cube_graph, design_report, exhaustive_design_search,
    fixture, hamming_scheme, hoffman_bound, johnson_scheme, max_stable_set, spectral_decomposition,
    Design, Error, Fixture, Rational64, SpectralDecomposition,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random nonempty proper subset of `0..size`.
fn random_subset(rng: &mut ChaCha8Rng, size: usize) -> Vec<usize> {
    loop {
        let subset: Vec<usize> = (0..size).filter(|_| rng.gen::<bool>()).collect();
        if !subset.is_empty() && subset.len() < size {
            return subset;
        }
    }
}

#[test]
fn exact_and_floating_verdicts_agree_on_random_designs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfee1);
    for (n, d) in [(3usize, 1usize), (3, 2), (4, 1), (4, 3), (5, 1)] {
        let cube = cube_graph(n, d).unwrap();
        let floating = spectral_decomposition(&cube.to_graph().unwrap()).unwrap();
        for _ in 0..10 {
            let words = random_subset(&mut rng, 1 << n);
            let exact = cube_design_report(n, d, &words).unwrap();
            let design = Design::new(floating.graph(), words.iter().copied()).unwrap();
            let float_report = design_report(&floating, &design).unwrap();
            assert_eq!(
                exact.report.verdicts, float_report.verdicts,
                "Q{n}({d}), design {words:?}"
            );
            assert_eq!(exact.report.k, float_report.k);
            assert_eq!(exact.report.efficacy, float_report.efficacy);
            assert_eq!(exact.report.extremal, float_report.extremal);
        }
    }
}

#[test]
fn cube_verdicts_are_invariant_under_symmetries() {
    // Characters see only distance structure, so verdicts must not change
    // under translation, coordinate permutation, or (on the nontrivial
    // classes) complementation.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e77);
    for (n, d) in [(4usize, 1usize), (4, 2), (5, 1)] {
        for _ in 0..8 {
            let words = random_subset(&mut rng, 1 << n);
            let base = cube_design_report(n, d, &words).unwrap();

            // Translation by a random word.
            let shift = rng.gen_range(0..1usize << n);
            let translated: Vec<usize> = words.iter().map(|&w| w ^ shift).collect();
            let report = cube_design_report(n, d, &translated).unwrap();
            assert_eq!(report.report.verdicts, base.report.verdicts);

            // Random coordinate permutation.
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let permuted: Vec<usize> = words
                .iter()
                .map(|&w| {
                    (0..n)
                        .filter(|&b| w >> perm[b] & 1 == 1)
                        .fold(0usize, |acc, b| acc | 1 << b)
                })
                .collect();
            let report = cube_design_report(n, d, &permuted).unwrap();
            assert_eq!(report.report.verdicts, base.report.verdicts);

            // Complementation preserves every nontrivial verdict.
            let complement: Vec<usize> = (0..1usize << n).filter(|w| !words.contains(w)).collect();
            let report = cube_design_report(n, d, &complement).unwrap();
            for (space, (&a, &b)) in base
                .eigenspaces
                .iter()
                .zip(base.report.verdicts.iter().zip(&report.report.verdicts))
            {
                if space.classes != vec![0] {
                    assert_eq!(a, b, "classes {:?}", space.classes);
                }
            }
        }
    }
}

#[test]
fn report_bookkeeping_identities() {
    // efficacy · integrated-dimension = |W|; the chosen order's first k
    // entries are integrated, cover the integrated dimension, and respect
    // tie groups of the frequency order.
    let mut rng = ChaCha8Rng::seed_from_u64(0xb00c);
    let decompositions: Vec<SpectralDecomposition> = vec![
        cube_decomposition(4, 1).unwrap(),
        cube_decomposition(4, 2).unwrap(),
        spectral_decomposition(&fixture(Fixture::TruncatedTetrahedron).unwrap()).unwrap(),
        spectral_decomposition(&fixture(Fixture::Petersen).unwrap()).unwrap(),
    ];
    for decomposition in &decompositions {
        let n = decomposition.graph().vertex_count();
        for _ in 0..12 {
            let subset = random_subset(&mut rng, n);
            let design = Design::new(decomposition.graph(), subset.iter().copied()).unwrap();
            let report = design_report(decomposition, &design).unwrap();

            let efficacy = report.efficacy.expect("regular graph");
            assert_eq!(
                efficacy,
                Rational64::new(subset.len() as i64, report.integrated_dimension as i64),
            );

            // chosen_order is a permutation of all eigenspace indices.
            let mut sorted = report.chosen_order.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..report.verdicts.len()).collect::<Vec<_>>());

            // Its k-prefix is integrated and realizes the dimension.
            let prefix = &report.chosen_order[..report.k];
            assert!(prefix.iter().all(|&i| report.verdicts[i]));
            let dim: usize = prefix
                .iter()
                .map(|&i| decomposition.eigenspaces()[i].dimension())
                .sum();
            assert_eq!(dim, report.integrated_dimension);

            // The order never moves an eigenspace across tie-group
            // boundaries: tie groups appear as contiguous runs in their
            // frequency-order positions.
            let ties: Vec<usize> = report
                .chosen_order
                .iter()
                .map(|&i| decomposition.eigenspaces()[i].tie_group())
                .collect();
            let mut expected = ties.clone();
            expected.sort_unstable();
            assert_eq!(ties, expected, "tie groups out of order: {ties:?}");

            // Extremal means regular + exactly one failing verdict.
            let failures = report.verdicts.iter().filter(|&&v| !v).count();
            assert_eq!(report.extremal, failures == 1);
        }
    }
}

#[test]
fn scheme_axioms_hold_on_random_pairs() {
    // Intersection numbers are constant: counted directly for random pairs
    // and compared against the stored table.
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc5);
    for scheme in [
        johnson_scheme(6, 2).unwrap(),
        johnson_scheme(5, 2).unwrap(),
        hamming_scheme(4).unwrap(),
    ] {
        let size = scheme.point_count();
        for _ in 0..100 {
            let x = rng.gen_range(0..size);
            let y = rng.gen_range(0..size);
            let k = scheme.relation(x, y);
            for i in 0..=scheme.classes() {
                for j in 0..=scheme.classes() {
                    let direct = (0..size)
                        .filter(|&z| scheme.relation(x, z) == i && scheme.relation(z, y) == j)
                        .count() as u64;
                    assert_eq!(
                        direct,
                        scheme.intersection_number(i, j, k),
                        "p^{k}_{{{i}{j}}} at pair ({x},{y})"
                    );
                }
            }
        }

        // Relation matrices commute (checked through the eigenvalue table:
        // shared eigenbasis implies commutativity; verify A_i A_j = A_j A_i
        // directly on the smaller schemes).
        if size <= 20 {
            for i in 1..=scheme.classes() {
                for j in i + 1..=scheme.classes() {
                    let a = scheme.relation_matrix(i);
                    let b = scheme.relation_matrix(j);
                    assert!((&a * &b - &b * &a).norm() < 1e-9, "classes {i},{j}");
                }
            }
        }
    }
}

/// Colexicographic key: reversed sorted subset compares lexicographically.
fn colex_key(subset: &[usize]) -> Vec<usize> {
    let mut key = subset.to_vec();
    key.sort_unstable();
    key.reverse();
    key
}

#[test]
fn search_is_deterministic_and_consistent() {
    let decomposition =
        spectral_decomposition(&fixture(Fixture::TruncatedTetrahedron).unwrap()).unwrap();

    let first = exhaustive_design_search(&decomposition, 4).unwrap();
    let second = exhaustive_design_search(&decomposition, 4).unwrap();
    assert_eq!(first, second);

    // Witnesses appear in enumeration order: increasing size, colex within.
    for pair in first.witnesses.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        assert!(
            a.len() < b.len() || (a.len() == b.len() && colex_key(a) < colex_key(b)),
            "witness order violated: {a:?} before {b:?}"
        );
    }

    // Every witness reproduces the minimum through the report path.
    for witness in &first.witnesses {
        let design = Design::new(decomposition.graph(), witness.iter().copied()).unwrap();
        let report = design_report(&decomposition, &design).unwrap();
        assert_eq!(report.efficacy, first.best_efficacy);
    }

    // Enlarging the search space can only improve the minimum.
    let wider = exhaustive_design_search(&decomposition, 11).unwrap();
    assert!(wider.exhaustive);
    assert!(wider.best_efficacy.unwrap() <= first.best_efficacy.unwrap());
}

#[test]
fn stability_numbers_respect_the_ratio_bound() {
    // α(G) ≤ ⌊|V| · hoffman⌋ on the regular fixtures, with equality where
    // the certificates say so.
    let cases: Vec<(SpectralDecomposition, usize)> = vec![
        (
            spectral_decomposition(&fixture(Fixture::Complete(5)).unwrap()).unwrap(),
            1,
        ),
        (
            spectral_decomposition(&fixture(Fixture::Petersen).unwrap()).unwrap(),
            4,
        ),
        (cube_decomposition(3, 2).unwrap(), 2),
        (
            spectral_decomposition(&fixture(Fixture::CompleteBipartite(4, 4)).unwrap()).unwrap(),
            4,
        ),
    ];
    for (decomposition, alpha) in &cases {
        let result = max_stable_set(decomposition.graph()).unwrap();
        assert_eq!(result.size, *alpha);
        let bound = hoffman_bound(decomposition).unwrap().to_f64();
        let n = decomposition.graph().vertex_count() as f64;
        assert!(
            (result.size as f64) <= (n * bound + 1e-9).floor(),
            "α = {} exceeds ⌊{n}·{bound}⌋",
            result.size
        );
    }
}

#[test]
fn search_space_guard_rejects_oversized_requests() {
    // Q₁₂ has 4096 vertices; subsets up to half size exceed the 10⁸ cap.
    let q12 = cube_decomposition(12, 1).unwrap();
    match exhaustive_design_search(&q12, 2048) {
        Err(Error::TooLarge { limit, .. }) => assert_eq!(limit, 100_000_000),
        other => panic!("expected a resource error, got {other:?}"),
    }
    // A size-1 scan of the same graph is fine.
    let singletons = exhaustive_design_search(&q12, 1).unwrap();
    assert_eq!(singletons.subsets_examined, 4096);
}
