use super::*;
use crate::arith::Precision;
use crate::graphs::{fixture, sample_symmetric_matrix, EntryDistribution, Graph, SeededStream};
use crate::linalg::IntMatrix;
use crate::minors::{MinorEngine, MinorIndex};
use crate::poly::IntPolynomial;
use crate::spectral::SpectralData;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn ints(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&k| BigRational::from_integer(k.into())).collect()
}

fn unit(n: usize, i: usize) -> Vec<BigRational> {
    (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()
}

fn p(cs: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(cs)
}

#[test]
fn path_three_walks() {
    // Hand elimination: W(e1) = [[1,0,1],[0,1,0],[0,0,1]], M³e1 = 2·Me1.
    let a = Graph::path(3).adjacency();
    let r = walk_rank(&a, &unit(3, 0), Precision::default()).unwrap();
    assert_eq!(r.rank, 3);
    assert_eq!(r.annihilator, p(&[0, -2, 0, 1]));
    assert_eq!(r.claim, WalkClaim::NotApplicable);
    assert!(r.consistent());
    // The middle vertex misses the 0-eigenvector (1, 0, -1): M²e2 = 2e2.
    let r = walk_rank(&a, &unit(3, 1), Precision::default()).unwrap();
    assert_eq!(r.rank, 2);
    assert_eq!(r.annihilator, p(&[-2, 0, 1]));
    assert_eq!(r.spectral.as_ref().unwrap().nonzero, 2);
    assert_eq!(r.rank_identity, Some(true));
}

#[test]
fn figure_one_unit_vector_has_full_rank() {
    let a = fixture("fig1", None).unwrap().adjacency();
    let r = walk_rank(&a, &unit(8, 0), Precision::default()).unwrap();
    assert_eq!(r.rank, 8);
    assert_eq!(r.claim, WalkClaim::FullRank { holds: true });
    assert_eq!(r.annihilator, a.char_poly());
    assert!(r.consistent());
}

#[test]
fn regular_graph_ones_vector() {
    // C4 has a repeated eigenvalue, so only the exact part is reported.
    let a = Graph::cycle(4).adjacency();
    let r = walk_rank(&a, &ints(&[1, 1, 1, 1]), Precision::default()).unwrap();
    assert_eq!(r.rank, 1);
    assert_eq!(r.annihilator, p(&[-2, 1]));
    assert!(r.spectral.is_none() && r.consistent());
}

#[test]
fn laplacian_walks() {
    let g = fixture("fig2", None).unwrap();
    let r = walk_rank_laplacian(&g, &unit(9, 0), Precision::default()).unwrap();
    assert_eq!(r.rank, 9);
    assert_eq!(r.claim, WalkClaim::FullRank { holds: true });
    let r = walk_rank_laplacian(&g, &ints(&[1; 9]), Precision::default()).unwrap();
    assert_eq!((r.rank, r.annihilator.clone()), (1, IntPolynomial::x()));
    assert_eq!(r.claim, WalkClaim::OnesMultiple { rank: 1 });
    assert!(r.consistent());
    let mut x = unit(9, 0);
    x[1] = -BigRational::one();
    let r = walk_rank_laplacian(&g, &x, Precision::default()).unwrap();
    assert_eq!(r.claim, WalkClaim::OnesOrthogonal { rank: 8, expected: 8 });
    assert_eq!(r.rank_identity, Some(true));
    let r = walk_rank_laplacian(&Graph::path(2), &ints(&[1, 0]), Precision::default()).unwrap();
    assert_eq!(r.rank, 2);
    let split = Graph::new(4, [(1, 2), (3, 4)], false).unwrap();
    assert!(matches!(walk_rank_laplacian(&split, &unit(4, 0), Precision::default()), Err(crate::Error::DisconnectedGraph)));
}

#[test]
fn zero_vector_is_rejected() {
    let a = Graph::path(3).adjacency();
    assert!(walk_rank(&a, &ints(&[0, 0, 0]), Precision::default()).is_err());
    assert!(walk_rank(&a, &ints(&[1, 0]), Precision::default()).is_err());
}

/// A seeded symmetric block with a rational eigenvalue appended, so that
/// `x = (M - 7I)·y` has exactly one vanishing spectral coefficient.
#[test]
fn zeroed_coefficient_drops_the_rank() {
    let block = sample_symmetric_matrix(4, &EntryDistribution::uniform(-10, 10, 3));
    let mut m = IntMatrix::zeros(5, 5);
    for i in 0..4 {
        for j in 0..4 {
            m.set(i, j, block.get(i, j).clone());
        }
    }
    m.set(4, 4, 7.into());
    let sd = SpectralData::build(&m, Precision::default()).unwrap();
    let shifted = {
        let mut s = m.clone();
        for i in 0..5 {
            s.set(i, i, s.get(i, i) - 7);
        }
        s
    };
    let x = shifted.mul_rational_vec(&ints(&[1, 2, -1, 3, 5]));
    let r = walk_rank_with(&sd, &x).unwrap();
    assert_eq!(r.rank, 4);
    assert_eq!(r.spectral.as_ref().unwrap().nonzero, 4);
    assert!(r.consistent());
    // A rounded float eigenvector combination is generic: full rank.
    let u = unit_eigenvectors(&sd);
    let rounded: Vec<BigRational> = (0..5)
        .map(|v| {
            let f: f64 = (1..5).map(|i| u[i][v].re).sum();
            BigRational::from_float(f).unwrap()
        })
        .collect();
    assert_eq!(walk_rank_with(&sd, &rounded).unwrap().rank, 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn walk_identities_hold(seed in 0u64..1000, entries in prop::collection::vec(-3i64..=3, 5)) {
        prop_assume!(entries.iter().any(|&e| e != 0));
        let m = sample_symmetric_matrix(5, &EntryDistribution::uniform(-4, 4, seed));
        let r = walk_rank(&m, &ints(&entries), Precision::default()).unwrap();
        prop_assert!(r.consistent(), "{r:?}");
        prop_assert_eq!(r.annihilator.degree(), r.rank);
    }
}

#[test]
fn radius_one_matches_minor_verdicts() {
    let sd = SpectralData::build_laplacian(&fixture("fig3", None).unwrap().laplacian().unwrap(), Precision::default()).unwrap();
    let engine = MinorEngine::new(&sd);
    let mut rng = SeededStream::new(11, 0);
    for _ in 0..20 {
        let m = 1 + rng.below(4) as usize;
        let pick = |rng: &mut SeededStream| -> Vec<usize> {
            let mut all: Vec<usize> = (0..7).collect();
            (0..m).map(|_| all.remove(rng.below(all.len() as u64) as usize)).collect()
        };
        let rows = pick(&mut rng);
        let cols = pick(&mut rng);
        let spec = BlockKrylovSpec::new(rows.clone(), vec![1; m], cols.clone()).unwrap();
        let block = block_krylov_fullrank(&engine, &spec).unwrap();
        let minor = engine.certify_minor(&MinorIndex::new(rows, cols).unwrap()).unwrap();
        assert_eq!(block.status, minor.status);
    }
}

#[test]
fn figure_two_distance_condition_fails() {
    let sd = SpectralData::build_laplacian(&fixture("fig2", None).unwrap().laplacian().unwrap(), Precision::default()).unwrap();
    let engine = MinorEngine::new(&sd);
    // Vertices 1 and 9 are joined through 7.
    assert_eq!(support_distances(&sd, 0)[8], Some(2));
    let spec = BlockKrylovSpec::new(vec![0, 8], vec![2, 2], vec![1, 2, 3, 4]).unwrap();
    let v = block_krylov_fullrank(&engine, &spec).unwrap();
    assert!(!v.distance_condition);
    assert_eq!(v.violations[0].distance, 2);
    assert!(v.full_rank);
}

#[test]
fn distant_vertices_on_a_path() {
    // Cycles repeat eigenvalues; the path keeps them simple.
    let sd = SpectralData::build(&Graph::path(11).adjacency(), Precision::default()).unwrap();
    let engine = MinorEngine::new(&sd);
    let spec = BlockKrylovSpec::new(vec![0, 10], vec![2, 2], vec![0, 3, 6, 9]).unwrap();
    let v = block_krylov_fullrank(&engine, &spec).unwrap();
    assert!(v.distance_condition);
    assert!(v.full_rank);
    assert!(BlockKrylovSpec::new(vec![0, 1], vec![2, 2], vec![0, 1, 2]).is_err());
}

#[test]
fn gram_identity_on_fixtures() {
    let sd = SpectralData::build(&fixture("fig1", None).unwrap().adjacency(), Precision::default()).unwrap();
    for (v, a, w, b) in [(0, 0, 0, 0), (0, 1, 3, 1), (2, 2, 5, 1), (7, 3, 7, 2)] {
        let g = gram_identity(&sd, v, a, w, b).unwrap();
        assert!(g.contains, "{v},{a},{w},{b}: {:?} vs {}", g.value.to_complex64(), g.expected);
    }
}

fn fig2_laplacian() -> SpectralData {
    SpectralData::build_laplacian(&fixture("fig2", None).unwrap().laplacian().unwrap(), Precision::default()).unwrap()
}

#[test]
fn delta_signal_recovers_its_vertex() {
    let sd = fig2_laplacian();
    let one = Complex64::new(1.0, 0.0);
    let freqs = [2, 5];
    let samples = spectral_samples(&sd, &freqs, &[(3, one)]);
    let r = sparse_recover(&sd, &freqs, &samples, 1).unwrap();
    assert_eq!(r.support, vec![3]);
    assert!((r.coefficients[0] - one).norm() < 1e-6);
}

#[test]
fn empty_support() {
    let sd = fig2_laplacian();
    let r = prony_recover(&sd, 0, &[], 0).unwrap();
    assert!(r.support.is_empty());
    let r = sparse_recover(&sd, &[], &[], 0).unwrap();
    assert!(r.support.is_empty());
}

#[test]
fn two_sparse_round_trips() {
    let sd = fig2_laplacian();
    let mut rng = SeededStream::new(5, 0);
    let mut pool: Vec<usize> = (0..9).collect();
    let support: Vec<usize> = (0..2).map(|_| pool.remove(rng.below(pool.len() as u64) as usize)).collect();
    let values = [Complex64::new(1.5, 0.0), Complex64::new(-0.75, 0.0)];
    let terms: Vec<(usize, Complex64)> = support.iter().copied().zip(values).collect();

    let freqs = [1, 3, 5, 7];
    let r = sparse_recover(&sd, &freqs, &spectral_samples(&sd, &freqs, &terms), 2).unwrap();
    let mut expected = terms.clone();
    expected.sort_by_key(|t| t.0);
    assert_eq!(r.support, expected.iter().map(|t| t.0).collect::<Vec<_>>());
    for (c, (_, e)) in r.coefficients.iter().zip(&expected) {
        assert!((c - e).norm() < 1e-6);
    }

    // Spectral side: the same values on two eigenvectors, sampled by walks.
    let r = prony_recover(&sd, 0, &walk_samples(&sd, 0, &expected, 4), 2).unwrap();
    assert_eq!(r.support, expected.iter().map(|t| t.0).collect::<Vec<_>>());
    for (c, (_, e)) in r.coefficients.iter().zip(&expected) {
        assert!((c - e).norm() < 1e-6, "{c} vs {e}");
    }
}
