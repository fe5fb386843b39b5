//! Group-theoretic certificates for `Gal(f)`: m-homogeneity through set
//! resolvents, the orbit partition of m-subsets of roots, and a one-sided
//! `≥ A_n` certificate from Frobenius cycle types.

mod cycles;
mod resolvent;

pub use cycles::{
    certify_an, certify_an_cycles, certify_an_with, cycle_type, AnCertificate, AnStatus, CycleWitness, DiscSquare, WitnessRole,
    DEFAULT_PRIME_BUDGET,
};
pub use resolvent::{set_resolvent, set_resolvent_data, ResolventData, MAX_SHIFT};

use crate::arith::Precision;
use crate::poly::{factor_over_z, IntPolynomial, RootSystem};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

pub use crate::poly::is_irreducible;

/// Resolvents above this degree are not factored.
pub const RESOLVENT_DEGREE_CAP: usize = 70;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Homogeneity {
    Homogeneous,
    NotHomogeneous,
}

#[derive(Clone, Debug)]
pub struct HomogeneityReport {
    pub m: usize,
    pub verdict: Homogeneity,
    pub resolvent: IntPolynomial,
    pub shift: u32,
    pub orbit_sizes: Vec<usize>,
    /// Irreducible factors of the resolvent in factorization order; empty
    /// when the verdict came from an `A_n` certificate instead.
    pub factors: Vec<IntPolynomial>,
}

/// Blocks of m-subsets of root indices (0-based, in root order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    pub m: usize,
    pub blocks: Vec<Vec<Vec<usize>>>,
}

impl OrbitPartition {
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Every m-subset in one block.
    pub fn single(n: usize, m: usize) -> OrbitPartition {
        use itertools::Itertools;
        OrbitPartition { m, blocks: vec![(0..n).combinations(m).collect()] }
    }

    /// Orbits of complements: the action commutes with complementation.
    pub fn complement(&self, n: usize) -> OrbitPartition {
        OrbitPartition {
            m: n - self.m,
            blocks: self
                .blocks
                .iter()
                .map(|b| {
                    let mut out: Vec<Vec<usize>> =
                        b.iter().map(|s| (0..n).filter(|i| !s.contains(i)).collect()).collect();
                    out.sort();
                    out
                })
                .collect(),
        }
    }
}

/// Homogeneous iff the set resolvent is irreducible; orbit sizes are the
/// degrees of its irreducible factors.
pub fn homogeneity(
    f: &IntPolynomial,
    m: usize,
    roots: &RootSystem,
    certificate: Option<&AnCertificate>,
) -> Result<HomogeneityReport> {
    let data = set_resolvent_data(f, m, roots, Precision::from_env())?;
    homogeneity_from(&data, m, certificate)
}

pub(crate) fn homogeneity_from(
    data: &ResolventData,
    m: usize,
    certificate: Option<&AnCertificate>,
) -> Result<HomogeneityReport> {
    let degree = data.poly.degree();
    let an = certificate.is_some_and(|c| c.status == AnStatus::CertifiedAtLeastAn);
    if degree > RESOLVENT_DEGREE_CAP || (an && degree > 1) {
        if an {
            return Ok(HomogeneityReport {
                m,
                verdict: Homogeneity::Homogeneous,
                resolvent: data.poly.clone(),
                shift: data.shift,
                orbit_sizes: vec![degree],
                factors: Vec::new(),
            });
        }
        return Err(Error::ResolventTooLarge { degree, cap: RESOLVENT_DEGREE_CAP });
    }
    let fz = factor_over_z(&data.poly);
    debug_assert!(fz.factors.iter().all(|(_, k)| *k == 1), "resolvent is squarefree");
    let factors: Vec<IntPolynomial> = fz.factors.iter().map(|(g, _)| g.clone()).collect();
    let orbit_sizes: Vec<usize> = factors.iter().map(IntPolynomial::degree).collect();
    Ok(HomogeneityReport {
        m,
        verdict: if factors.len() == 1 { Homogeneity::Homogeneous } else { Homogeneity::NotHomogeneous },
        resolvent: data.poly.clone(),
        shift: data.shift,
        orbit_sizes,
        factors,
    })
}

/// Assigns every m-subset to the unique resolvent factor vanishing at its
/// subset sum.
pub fn orbit_partition(f: &IntPolynomial, m: usize, roots: &RootSystem) -> Result<OrbitPartition> {
    let ladder = Precision::from_env();
    let data = set_resolvent_data(f, m, roots, ladder)?;
    let report = homogeneity_from(&data, m, None)?;
    orbit_partition_from(f, &data, &report, ladder)
}

pub(crate) fn orbit_partition_from(
    f: &IntPolynomial,
    data: &ResolventData,
    report: &HomogeneityReport,
    ladder: Precision,
) -> Result<OrbitPartition> {
    let m = report.m;
    if report.factors.len() <= 1 {
        return Ok(OrbitPartition { m, blocks: vec![data.subsets.clone()] });
    }
    let mut p = Precision { bits: data.roots.prec().max(ladder.bits), ..ladder };
    loop {
        let refined = if p.bits > data.roots.prec() {
            set_resolvent_at(f, data, p.bits)?
        } else {
            data.sums.clone()
        };
        let mut blocks = vec![Vec::new(); report.factors.len()];
        let mut ambiguous = false;
        for (s, subset) in refined.iter().zip(&data.subsets) {
            let hits: Vec<usize> = report
                .factors
                .iter()
                .enumerate()
                .filter(|(_, g)| g.eval_ball(s).contains_zero())
                .map(|(j, _)| j)
                .collect();
            if hits.len() == 1 {
                blocks[hits[0]].push(subset.clone());
            } else {
                ambiguous = true;
                break;
            }
        }
        if !ambiguous {
            for (b, g) in blocks.iter().zip(&report.factors) {
                if b.len() != g.degree() {
                    return Err(Error::InvalidInput(format!(
                        "orbit of size {} assigned to a factor of degree {}",
                        b.len(),
                        g.degree()
                    )));
                }
            }
            return Ok(OrbitPartition { m, blocks });
        }
        p = p.escalate().ok_or_else(|| Error::precision(p.bits, format!("orbit assignment for m={m}")))?;
    }
}

/// Subset sums for the already chosen shift at a higher precision.
fn set_resolvent_at(f: &IntPolynomial, data: &ResolventData, bits: u32) -> Result<Vec<crate::arith::Ball>> {
    use crate::arith::Ball;
    let rs = data.roots.refine(bits)?;
    let lc = Ball::from_bigint(&f.leading(), bits);
    let t = Ball::from_i64(data.shift as i64, bits);
    let mu: Vec<Ball> = rs
        .roots()
        .iter()
        .map(|r| {
            let nu = r.mul(&lc);
            nu.add(&t.mul(&nu.sqr()))
        })
        .collect();
    Ok(data
        .subsets
        .iter()
        .map(|s| s.iter().fold(Ball::zero(bits), |acc, &i| acc.add(&mu[i])))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::isolate_roots;

    fn p(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    #[test]
    fn figure_three_xi_orbits() {
        let xi = p(&[7, -50, 115, -114, 54, -12, 1]);
        assert!(is_irreducible(&xi));
        let rs = isolate_roots(&xi, Precision::default()).unwrap();
        let h = homogeneity(&xi, 3, &rs, None).unwrap();
        assert_eq!(h.verdict, Homogeneity::NotHomogeneous);
        let mut sizes = h.orbit_sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![2, 18]);
        let part = orbit_partition(&xi, 3, &rs).unwrap();
        let small = part.blocks.iter().find(|b| b.len() == 2).unwrap();
        let mut union: Vec<usize> = small.iter().flatten().copied().collect();
        union.sort();
        assert_eq!(union, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn figure_one_four_sets() {
        let f = p(&[1, -4, -12, 12, 23, -4, -10, 0, 1]);
        let rs = isolate_roots(&f, Precision::default()).unwrap();
        assert_eq!(homogeneity(&f, 1, &rs, None).unwrap().verdict, Homogeneity::Homogeneous);
        let h = homogeneity(&f, 4, &rs, None).unwrap();
        assert_eq!(h.verdict, Homogeneity::NotHomogeneous);
        let mut sizes = h.orbit_sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![2, 32, 36]);
        let part = orbit_partition(&f, 4, &rs).unwrap();
        assert!(part.block_sizes().contains(&2));
    }

    #[test]
    fn complement_partition() {
        let part = OrbitPartition { m: 1, blocks: vec![vec![vec![0]], vec![vec![1], vec![2]]] };
        let c = part.complement(3);
        assert_eq!(c.blocks, vec![vec![vec![1, 2]], vec![vec![0, 2], vec![0, 1]].into_iter().rev().collect()]);
    }
}
