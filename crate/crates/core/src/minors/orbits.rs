//! Galois-stable blocks of column sets.
//!
//! A column set `S` splits into its parts `S_k` on the roots of each
//! irreducible factor `g_k`. The product over factors of the orbits of the
//! parts is a union of Galois orbits of `S`, hence Galois-stable. It is a
//! single orbit when at most one part is a proper nonempty subset of its
//! factor's roots and that factor's partition is exact.

use crate::exec::Exec;
use crate::galois::{
    certify_an_cycles, homogeneity_from, orbit_partition_from, set_resolvent_data, AnCertificate, AnStatus,
    OrbitPartition,
};
use crate::poly::{IntPolynomial, RootSystem};
use crate::spectral::SpectralData;
use itertools::Itertools;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Galois-stable blocks of `m`-sets of root indices.
#[derive(Clone, Debug)]
pub struct ColumnOrbits {
    pub m: usize,
    pub blocks: Vec<Vec<Vec<usize>>>,
    /// Whether each block is certified to be a single orbit.
    pub exact: Vec<bool>,
    index: HashMap<Vec<usize>, usize>,
}

impl ColumnOrbits {
    fn new(m: usize, blocks: Vec<Vec<Vec<usize>>>, exact: Vec<bool>) -> ColumnOrbits {
        let index = blocks.iter().enumerate().flat_map(|(b, sets)| sets.iter().map(move |s| (s.clone(), b))).collect();
        ColumnOrbits { m, blocks, exact, index }
    }

    pub fn block_of(&self, cols: &[usize]) -> Option<usize> {
        self.index.get(cols).copied()
    }

    pub fn all_exact(&self) -> bool {
        self.exact.iter().all(|&e| e)
    }

    pub fn set_count(&self) -> usize {
        self.index.len()
    }
}

struct FactorOrbits {
    roots: Vec<usize>,
    poly: IntPolynomial,
    system: RootSystem,
    certificate: Option<AnCertificate>,
    cache: Mutex<HashMap<usize, Arc<(OrbitPartition, bool)>>>,
}

/// Per-factor Galois data of a spectral decomposition and the derived
/// column-set blocks, computed lazily and cached.
pub struct GaloisStructure {
    n: usize,
    factors: Vec<FactorOrbits>,
    ladder: crate::arith::Precision,
    cache: Mutex<HashMap<usize, Arc<ColumnOrbits>>>,
    notes: Mutex<Vec<String>>,
}

impl GaloisStructure {
    pub fn new(sd: &SpectralData, prime_budget: usize, exec: Exec) -> GaloisStructure {
        let factors = (0..sd.factor_count())
            .map(|k| {
                let poly = sd.factor(k).clone();
                let roots = sd.factor_roots(k).to_vec();
                let certificate = (poly.degree() >= 2).then(|| certify_an_cycles(&poly, prime_budget, exec));
                FactorOrbits {
                    system: sd.roots().restrict(&poly, &roots),
                    roots,
                    poly,
                    certificate,
                    cache: Mutex::new(HashMap::new()),
                }
            })
            .collect();
        GaloisStructure {
            n: sd.dim(),
            factors,
            ladder: sd.ladder(),
            cache: Mutex::new(HashMap::new()),
            notes: Mutex::new(Vec::new()),
        }
    }

    /// Cycle-type certificates of the nonlinear factors, in factor order.
    pub fn certificates(&self) -> Vec<Option<&AnCertificate>> {
        self.factors.iter().map(|f| f.certificate.as_ref()).collect()
    }

    /// Degradations (inexact partitions) encountered so far.
    pub fn notes(&self) -> Vec<String> {
        self.notes.lock().expect("notes lock").clone()
    }

    fn note(&self, s: String) {
        let mut notes = self.notes.lock().expect("notes lock");
        if !notes.contains(&s) {
            notes.push(s);
        }
    }

    /// Orbits of `j`-subsets of factor `k`'s roots, in local indices.
    fn factor_partition(&self, k: usize, j: usize) -> Arc<(OrbitPartition, bool)> {
        let fo = &self.factors[k];
        if let Some(hit) = fo.cache.lock().expect("partition lock").get(&j) {
            return hit.clone();
        }
        let d = fo.poly.degree();
        let an = fo.certificate.as_ref().is_some_and(|c| c.status == AnStatus::CertifiedAtLeastAn);
        let result = if j == 0 || j == d || d == 1 || an {
            (OrbitPartition::single(d, j), true)
        } else if 2 * j > d {
            let (p, exact) = &*self.factor_partition(k, d - j);
            (p.complement(d), *exact)
        } else {
            let computed = set_resolvent_data(&fo.poly, j, &fo.system, self.ladder).and_then(|data| {
                let report = homogeneity_from(&data, j, None)?;
                orbit_partition_from(&fo.poly, &data, &report, self.ladder)
            });
            match computed {
                Ok(p) => (p, true),
                Err(e) => {
                    self.note(format!("factor {} ({}), {j}-sets: {e}; treated as one Galois-stable block", k, fo.poly));
                    (OrbitPartition::single(d, j), false)
                }
            }
        };
        let result = Arc::new(result);
        fo.cache.lock().expect("partition lock").insert(j, result.clone());
        result
    }

    /// Blocks of `m`-sets of all `n` roots.
    pub fn column_orbits(&self, m: usize) -> Arc<ColumnOrbits> {
        if let Some(hit) = self.cache.lock().expect("orbit lock").get(&m) {
            return hit.clone();
        }
        let degrees: Vec<usize> = self.factors.iter().map(|f| f.roots.len()).collect();
        let mut blocks = Vec::new();
        let mut exact = Vec::new();
        for split in compositions(m, &degrees) {
            let parts: Vec<Arc<(OrbitPartition, bool)>> =
                split.iter().enumerate().map(|(k, &j)| self.factor_partition(k, j)).collect();
            let mixing = split.iter().zip(&degrees).filter(|&(&j, &d)| j > 0 && j < d && d >= 2).count();
            let parts_exact = parts.iter().all(|p| p.1);
            let choices = parts.iter().map(|p| 0..p.0.blocks.len()).multi_cartesian_product();
            for choice in choices {
                let mut block: Vec<Vec<usize>> = choice
                    .iter()
                    .enumerate()
                    .map(|(k, &b)| {
                        parts[k].0.blocks[b]
                            .iter()
                            .map(|local| local.iter().map(|&i| self.factors[k].roots[i]).collect::<Vec<_>>())
                            .collect::<Vec<_>>()
                    })
                    .multi_cartesian_product()
                    .map(|pieces| pieces.into_iter().flatten().sorted().collect())
                    .collect();
                block.sort();
                blocks.push(block);
                exact.push(parts_exact && mixing <= 1);
            }
        }
        let orbits = Arc::new(ColumnOrbits::new(m, blocks, exact));
        debug_assert_eq!(orbits.set_count(), (0..self.n).combinations(m).count());
        self.cache.lock().expect("orbit lock").insert(m, orbits.clone());
        orbits
    }
}

/// All `(j_k)` with `0 ≤ j_k ≤ d_k` and `Σ j_k = m`, lexicographic.
fn compositions(m: usize, degrees: &[usize]) -> Vec<Vec<usize>> {
    fn go(m: usize, degrees: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match degrees.split_first() {
            None => {
                if m == 0 {
                    out.push(prefix.clone());
                }
            }
            Some((&d, rest)) => {
                let room: usize = rest.iter().sum();
                for j in m.saturating_sub(room)..=d.min(m) {
                    prefix.push(j);
                    go(m - j, rest, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(m, degrees, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Precision;
    use crate::graphs::fixture;

    #[test]
    fn compositions_cover_sizes() {
        assert_eq!(compositions(2, &[1, 3]), vec![vec![0, 2], vec![1, 1]]);
        assert_eq!(compositions(0, &[2, 2]), vec![vec![0, 0]]);
        assert!(compositions(5, &[1, 3]).is_empty());
    }

    #[test]
    fn figure_three_triples() {
        let l = fixture("fig3", None).unwrap().laplacian().unwrap();
        let sd = SpectralData::build_laplacian(&l, Precision::default()).unwrap();
        let gs = GaloisStructure::new(&sd, 200, Exec::default());
        let orbits = gs.column_orbits(3);
        assert_eq!(orbits.set_count(), 35);
        assert!(orbits.all_exact());
        // Triples inside ξ's six roots: 2 + 18; triples through the kernel root: pairs of ξ.
        let kernel = sd.kernel_root().unwrap();
        let inside: Vec<usize> = orbits
            .blocks
            .iter()
            .filter(|b| !b[0].contains(&kernel))
            .map(Vec::len)
            .sorted()
            .collect();
        assert_eq!(inside, vec![2, 18]);
        let pair = orbits.blocks.iter().find(|b| b.len() == 2).unwrap();
        let union: Vec<usize> = pair.iter().flatten().copied().sorted().collect();
        let xi_roots: Vec<usize> = (0..7).filter(|&i| i != kernel).collect();
        assert_eq!(union, xi_roots);
    }

    #[test]
    fn reducible_products_are_flagged() {
        // Two quadratic factors: x^2 - 2 and x^2 - 3 on a block diagonal.
        let m = crate::linalg::IntMatrix::from_i64_rows(&[&[0, 2, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 3], &[0, 0, 1, 0]]);
        let sd = SpectralData::build(&m, Precision::default()).unwrap();
        let gs = GaloisStructure::new(&sd, 50, Exec::Sequential);
        let orbits = gs.column_orbits(2);
        assert_eq!(orbits.set_count(), 6);
        let sizes: Vec<(usize, bool)> = orbits.blocks.iter().map(Vec::len).zip(orbits.exact.iter().copied()).collect();
        assert!(sizes.contains(&(4, false)));
        assert_eq!(sizes.iter().filter(|s| s.1).count(), 2);
    }
}
