//! Cross-module invariants through the public API, on seeded random inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use spectral_certify::arith::Precision;
use spectral_certify::campaign::{run_campaign, CampaignOptions};
use spectral_certify::exec::Exec;
use spectral_certify::galois::DEFAULT_PRIME_BUDGET;
use spectral_certify::graphs::{sample_symmetric_matrix, EntryDistribution};
use spectral_certify::krylov::{walk_matrix, walk_rank_with};
use spectral_certify::minors::{MinorEngine, ScanOptions};
use spectral_certify::spectral::SpectralData;

fn symmetric(n: usize, seed: u64) -> Option<SpectralData> {
    let m = sample_symmetric_matrix(n, &EntryDistribution::uniform(-3, 3, seed));
    m.char_poly().is_squarefree().then(|| SpectralData::build(&m, Precision::default()).expect("squarefree spectrum"))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    /// Inferring large sizes by complements gives the same vanishing sets as
    /// scanning them, and worker threads never change a report.
    #[test]
    fn scan_modes_agree(n in 3usize..=5, seed in 0u64..10_000) {
        let Some(sd) = symmetric(n, seed) else { return Ok(()) };
        let scan = |exec, use_complement| {
            MinorEngine::with_options(&sd, DEFAULT_PRIME_BUDGET, exec)
                .scan_all_minors(ScanOptions { use_complement, ..ScanOptions::default() })
                .expect("scan")
        };
        let direct = scan(Exec::Sequential, false);
        let inferred = scan(Exec::Sequential, true);
        prop_assert_eq!(&scan(Exec::Parallel, true), &inferred);
        prop_assert_eq!(direct.total_undecided(), 0);
        for (a, b) in direct.sizes.iter().zip(&inferred.sizes) {
            prop_assert_eq!(a.m, b.m);
            prop_assert_eq!(&a.vanishing_supports, &b.vanishing_supports);
        }
    }

    /// The walk matrix's exact rank equals the number of nonzero spectral
    /// coefficients of the probe.
    #[test]
    fn walk_rank_is_spectral_support(n in 3usize..=5, seed in 0u64..10_000, x in prop::collection::vec(-3i64..=3, 5)) {
        let Some(sd) = symmetric(n, seed) else { return Ok(()) };
        let x: Vec<BigRational> = x[..n].iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
        prop_assume!(x.iter().any(|v| *v != BigRational::from_integer(BigInt::from(0))));
        let report = walk_rank_with(&sd, &x).expect("walk report");
        prop_assert!(report.consistent());
        prop_assert_eq!(report.rank, walk_matrix(sd.matrix(), &x).rank());
        let spectral = report.spectral.as_ref().expect("spectral coefficients");
        prop_assert_eq!(spectral.undecided, 0);
        prop_assert_eq!(spectral.nonzero, report.rank);
    }
}

#[test]
fn campaign_counts_cover_every_sample() {
    for (n, samples, seed) in [(3, 12, 5), (4, 8, 9)] {
        let summary = run_campaign(&CampaignOptions::new(n, samples, EntryDistribution::uniform(-2, 2, seed))).unwrap();
        let c = &summary.counts;
        assert_eq!(c.an_certified + c.inconclusive + c.smaller, samples);
        assert_eq!(summary.instances.len(), samples);
        assert!(summary.violations.is_empty());
    }
}
