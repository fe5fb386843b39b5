//! Seeded random-matrix campaigns: certify `≥ A_n` on each sample and, when
//! certified, scan every minor of the eigenvector matrix. Any vanishing
//! minor on a certified instance is a counterexample to the implementation.

use crate::arith::Precision;
use crate::exec::Exec;
use crate::galois::{certify_an_with, AnStatus, DEFAULT_PRIME_BUDGET};
use crate::graphs::{sample_matrix, EntryDistribution, SeededStream};
use crate::minors::{MinorEngine, ScanOptions};
use crate::spectral::SpectralData;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Largest dimension run without `force`.
pub const DESK_SCALE_MAX_N: usize = 12;

#[derive(Clone, Debug)]
pub struct CampaignOptions {
    pub n: usize,
    pub samples: usize,
    /// Its seed is the campaign seed; instance seeds derive from it.
    pub distribution: EntryDistribution,
    pub force: bool,
    pub prime_budget: usize,
    pub precision: Precision,
    pub exec: Exec,
}

impl CampaignOptions {
    pub fn new(n: usize, samples: usize, distribution: EntryDistribution) -> CampaignOptions {
        CampaignOptions {
            n,
            samples,
            distribution,
            force: false,
            prime_budget: DEFAULT_PRIME_BUDGET,
            precision: Precision::from_env(),
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignInstance {
    pub index: usize,
    /// Replays with `sample_matrix(n, distribution with this seed)`.
    pub seed: u64,
    pub status: AnStatus,
    pub scanned: bool,
    pub minors: u64,
    pub vanishing: u64,
    pub undecided: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusCounts {
    pub an_certified: usize,
    pub inconclusive: usize,
    pub smaller: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub n: usize,
    pub samples: usize,
    pub distribution: EntryDistribution,
    pub seed: u64,
    pub counts: StatusCounts,
    /// Certified instances whose scan found no vanishing and no undecided minor.
    pub agreeing: usize,
    /// Seeds of certified instances with a vanishing minor.
    pub violations: Vec<u64>,
    /// Seeds of certified instances with undecided minors.
    pub undecided: Vec<u64>,
    pub instances: Vec<CampaignInstance>,
}

impl CampaignSummary {
    /// `agreeing / certified`; `None` without certified instances.
    pub fn agreement_rate(&self) -> Option<f64> {
        (self.counts.an_certified > 0).then(|| self.agreeing as f64 / self.counts.an_certified as f64)
    }

    pub fn certified_fraction(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.counts.an_certified as f64 / self.samples as f64
        }
    }
}

/// Seeds of the instances, drawn from the campaign seed.
pub fn instance_seeds(seed: u64, samples: usize) -> Vec<u64> {
    let mut rng = SeededStream::new(seed, 5);
    (0..samples).map(|_| rng.next_u64()).collect()
}

fn run_instance(opts: &CampaignOptions, index: usize, seed: u64) -> Result<CampaignInstance> {
    let dist = EntryDistribution { seed, ..opts.distribution.clone() };
    let m = sample_matrix(opts.n, &dist);
    let cert = certify_an_with(&m.char_poly(), opts.prime_budget, Exec::Sequential);
    let mut inst =
        CampaignInstance { index, seed, status: cert.status, scanned: false, minors: 0, vanishing: 0, undecided: 0 };
    if cert.status == AnStatus::CertifiedAtLeastAn {
        let sd = SpectralData::build(&m, opts.precision)?;
        let engine = MinorEngine::with_options(&sd, opts.prime_budget, Exec::Sequential);
        let scan = engine.scan_all_minors(ScanOptions::default())?;
        inst.scanned = true;
        inst.minors = scan.total_minors();
        inst.vanishing = scan.total_vanishing();
        inst.undecided = scan.total_undecided();
    }
    Ok(inst)
}

pub fn run_campaign(opts: &CampaignOptions) -> Result<CampaignSummary> {
    if opts.n > DESK_SCALE_MAX_N && !opts.force {
        return Err(Error::Precondition(format!("n = {} exceeds {DESK_SCALE_MAX_N}; pass force to run anyway", opts.n)));
    }
    if opts.n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let seeds = instance_seeds(opts.distribution.seed, opts.samples);
    let indexed: Vec<(usize, u64)> = seeds.iter().copied().enumerate().collect();
    let instances = opts
        .exec
        .map(&indexed, |&(i, s)| run_instance(opts, i, s))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut counts = StatusCounts::default();
    for inst in &instances {
        match inst.status {
            AnStatus::CertifiedAtLeastAn => counts.an_certified += 1,
            AnStatus::Inconclusive => counts.inconclusive += 1,
            AnStatus::CertifiedStrictlySmaller => counts.smaller += 1,
        }
    }
    let scanned = || instances.iter().filter(|i| i.scanned);
    Ok(CampaignSummary {
        n: opts.n,
        samples: opts.samples,
        distribution: opts.distribution.clone(),
        seed: opts.distribution.seed,
        counts,
        agreeing: scanned().filter(|i| i.vanishing == 0 && i.undecided == 0).count(),
        violations: scanned().filter(|i| i.vanishing > 0).map(|i| i.seed).collect(),
        undecided: scanned().filter(|i| i.undecided > 0).map(|i| i.seed).collect(),
        instances,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_uniform_campaign_agrees() {
        let opts = CampaignOptions::new(5, 50, EntryDistribution::uniform(-10, 10, 1));
        let s = run_campaign(&opts).unwrap();
        let c = &s.counts;
        assert_eq!(c.an_certified + c.inconclusive + c.smaller, 50);
        assert!(c.an_certified > 0);
        assert!(s.violations.is_empty() && s.undecided.is_empty());
        assert_eq!(s.agreement_rate(), Some(1.0));
    }

    #[test]
    fn degenerate_binary_entries() {
        let opts = CampaignOptions::new(2, 40, EntryDistribution::uniform(0, 1, 3));
        let s = run_campaign(&opts).unwrap();
        assert_eq!(s.counts.an_certified + s.counts.inconclusive + s.counts.smaller, 40);
        assert!(s.counts.inconclusive > 0);
    }

    #[test]
    fn guard_and_replay() {
        let big = CampaignOptions::new(13, 1, EntryDistribution::uniform(-1, 1, 0));
        assert!(matches!(run_campaign(&big), Err(Error::Precondition(_))));
        let opts = CampaignOptions { exec: Exec::Sequential, ..CampaignOptions::new(4, 6, EntryDistribution::uniform(-3, 3, 2)) };
        let a = run_campaign(&opts).unwrap();
        let b = run_campaign(&CampaignOptions { exec: Exec::Parallel, ..opts }).unwrap();
        assert_eq!(a, b);
    }
}
