//! Sequential against rayon execution on the two data-parallel workloads:
//! a full minor scan of fig2's Laplacian and a small random campaign.
//! Without the `parallel` feature both modes run the sequential path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spectral_certify::arith::Precision;
use spectral_certify::campaign::{run_campaign, CampaignOptions};
use spectral_certify::exec::Exec;
use spectral_certify::galois::DEFAULT_PRIME_BUDGET;
use spectral_certify::graphs::{fixture, EntryDistribution};
use spectral_certify::minors::{MinorEngine, ScanOptions};
use spectral_certify::spectral::SpectralData;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn minor_scan(c: &mut Criterion) {
    let laplacian = fixture("fig2", None).and_then(|g| g.laplacian()).expect("fig2 fixture");
    let sd = SpectralData::build_laplacian(&laplacian, Precision::default()).expect("fig2 spectrum");
    let mut group = c.benchmark_group("fig2_minor_scan");
    group.sample_size(10);
    for (label, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            // A fresh engine per iteration so cached precision levels do not carry over.
            b.iter(|| {
                MinorEngine::with_options(&sd, DEFAULT_PRIME_BUDGET, exec)
                    .scan_all_minors(ScanOptions::default())
                    .expect("scan")
            })
        });
    }
    group.finish();
}

fn campaign(c: &mut Criterion) {
    let mut group = c.benchmark_group("campaign_n6");
    group.sample_size(10);
    for (label, exec) in MODES {
        let opts = CampaignOptions { exec, ..CampaignOptions::new(6, 16, EntryDistribution::uniform(-10, 10, 11)) };
        group.bench_function(BenchmarkId::from_parameter(label), |b| b.iter(|| run_campaign(&opts).expect("campaign")));
    }
    group.finish();
}

criterion_group!(benches, minor_scan, campaign);
criterion_main!(benches);
