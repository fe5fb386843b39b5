//! Frobenius cycle types and the one-sided `Gal(f) ≥ A_n` certificate.

use super::{homogeneity, Homogeneity};
use crate::arith::Precision;
use crate::exec::Exec;
use crate::poly::modp::ModPoly;
use crate::poly::{discriminant, is_irreducible, isolate_roots, IntPolynomial};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub const DEFAULT_PRIME_BUDGET: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnStatus {
    CertifiedAtLeastAn,
    CertifiedStrictlySmaller,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscSquare {
    Square,
    Nonsquare,
    Unknown,
}

/// Cycle type of a Frobenius element at an unramified prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub prime: u64,
    pub cycle_type: Vec<usize>,
    pub role: WitnessRole,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessRole {
    /// An n-cycle: proves transitivity on its own.
    Transitivity,
    /// Proves the group is primitive (given transitivity).
    Primitivity,
    /// A power of this element is a prime cycle that forces `≥ A_n`.
    PrimeCycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnCertificate {
    pub status: AnStatus,
    pub degree: usize,
    pub irreducible: bool,
    pub witnesses: Vec<CycleWitness>,
    pub primes_sampled: usize,
    pub disc_square: DiscSquare,
    /// Smallest `m` whose exact homogeneity test failed, when that is the
    /// reason for `CertifiedStrictlySmaller`.
    pub failed_m: Option<usize>,
    pub note: String,
}

/// Frobenius cycle type at `p`, for `p ∤ lc` with `f mod p` squarefree.
pub fn cycle_type(f: &IntPolynomial, p: u64) -> Option<Vec<usize>> {
    let lc = f.leading();
    if (&lc % BigInt::from(p)).is_zero() {
        return None;
    }
    let fp = ModPoly::from_int(f, p);
    if !fp.is_squarefree() {
        return None;
    }
    let mut t = fp.factor_degrees();
    t.sort_unstable_by(|a, b| b.cmp(a));
    Some(t)
}

/// Some power of an element of this type is a `q`-cycle, `q` prime.
fn pure_prime_cycle(t: &[usize], q: usize) -> bool {
    let divisible: Vec<&usize> = t.iter().filter(|&&c| c % q == 0).collect();
    divisible.len() == 1 && *divisible[0] == q
}

fn is_prime(q: usize) -> bool {
    crate::poly::modp::is_prime(q as u64)
}

fn disc_square(f: &IntPolynomial) -> DiscSquare {
    let d = discriminant(f);
    if d.is_negative() {
        return DiscSquare::Nonsquare;
    }
    let r = d.sqrt();
    if &r * &r == d {
        DiscSquare::Square
    } else {
        DiscSquare::Nonsquare
    }
}

/// Dedekind sampling plus a generalized Jordan criterion: a primitive
/// group containing a prime cycle of length `q ≤ n - 3`, or a transposition
/// or 3-cycle, contains `A_n`. Primitivity comes from `n` prime, an
/// `(n-1)`-cycle, or a prime cycle longer than `n/2`.
pub fn certify_an(f: &IntPolynomial, prime_budget: usize) -> AnCertificate {
    certify_an_with(f, prime_budget, Exec::default())
}

pub fn certify_an_with(f: &IntPolynomial, prime_budget: usize, exec: Exec) -> AnCertificate {
    let mut cert = certify_an_cycles(f, prime_budget, exec);
    if cert.status != AnStatus::Inconclusive || !cert.irreducible || cert.degree <= 3 {
        return cert;
    }
    let n = cert.degree;

    // A_n is m-homogeneous for every m; one failure proves a smaller group.
    let roots = match isolate_roots(f, Precision::from_env()) {
        Ok(r) => r,
        Err(e) => {
            cert.note = format!("cycle types inconclusive; roots unavailable: {e}");
            return cert;
        }
    };
    let mut skipped = Vec::new();
    for m in 2..=n / 2 {
        match homogeneity(f, m, &roots, None) {
            Ok(h) if h.verdict == Homogeneity::NotHomogeneous => {
                cert.status = AnStatus::CertifiedStrictlySmaller;
                cert.failed_m = Some(m);
                cert.note = format!("set resolvent for m={m} is reducible");
                return cert;
            }
            Ok(_) => {}
            Err(e) => skipped.push(format!("m={m}: {e}")),
        }
    }
    cert.note = if skipped.is_empty() {
        "cycle types inconclusive; homogeneous for every tested m".into()
    } else {
        format!("cycle types inconclusive; untested {}", skipped.join(", "))
    };
    cert
}

/// The cycle-type stage alone: never runs set resolvents, so an
/// irreducible input it cannot certify stays `Inconclusive`.
pub fn certify_an_cycles(f: &IntPolynomial, prime_budget: usize, exec: Exec) -> AnCertificate {
    let n = f.degree();
    let mut cert = AnCertificate {
        status: AnStatus::Inconclusive,
        degree: n,
        irreducible: n >= 1 && is_irreducible(f),
        witnesses: Vec::new(),
        primes_sampled: 0,
        disc_square: if n >= 1 { disc_square(f) } else { DiscSquare::Unknown },
        failed_m: None,
        note: String::new(),
    };
    if n <= 1 {
        cert.status = AnStatus::CertifiedAtLeastAn;
        cert.note = "degree <= 1: the symmetric group is trivial".into();
        return cert;
    }
    if !cert.irreducible {
        if n == 2 {
            cert.note = "reducible quadratic: A_2 is trivial but the group is not transitive".into();
        } else {
            cert.status = AnStatus::CertifiedStrictlySmaller;
            cert.failed_m = Some(1);
            cert.note = "reducible: not transitive, while A_n is".into();
        }
        return cert;
    }
    if n <= 3 {
        cert.status = AnStatus::CertifiedAtLeastAn;
        cert.note = "irreducible of degree <= 3: every transitive group contains A_n".into();
        return cert;
    }

    // Cycle types in parallel batches, consumed in prime order.
    let primes: Vec<u64> = crate::poly::modp::primes_from(3)
        .filter(|&p| cycle_type(f, p).is_some())
        .take(prime_budget)
        .collect();
    let types = exec.map(&primes, |&p| cycle_type(f, p).expect("filtered good prime"));

    let mut primitive: Option<CycleWitness> = None;
    let mut prime_cycle: Option<CycleWitness> = None;
    let mut transitive: Option<CycleWitness> = None;
    let n_is_prime = is_prime(n);
    for (k, (&p, t)) in primes.iter().zip(types).enumerate() {
        cert.primes_sampled = k + 1;
        if transitive.is_none() && t == [n] {
            transitive = Some(CycleWitness { prime: p, cycle_type: t.clone(), role: WitnessRole::Transitivity });
        }
        if primitive.is_none() {
            let two_transitive = t == [n - 1, 1];
            let long_prime = (n / 2 + 1..n).any(|q| is_prime(q) && pure_prime_cycle(&t, q));
            if two_transitive || long_prime {
                primitive = Some(CycleWitness { prime: p, cycle_type: t.clone(), role: WitnessRole::Primitivity });
            }
        }
        if prime_cycle.is_none() {
            let jordan = (2..n).any(|q| is_prime(q) && (q + 3 <= n || q <= 3) && pure_prime_cycle(&t, q));
            if jordan {
                prime_cycle = Some(CycleWitness { prime: p, cycle_type: t.clone(), role: WitnessRole::PrimeCycle });
            }
        }
        if (n_is_prime || primitive.is_some()) && prime_cycle.is_some() {
            cert.status = AnStatus::CertifiedAtLeastAn;
            cert.note = if n_is_prime && primitive.is_none() {
                "irreducible of prime degree (primitive) with a Jordan prime cycle".into()
            } else {
                "irreducible, primitive, with a Jordan prime cycle".into()
            };
            cert.witnesses = [transitive, primitive, prime_cycle].into_iter().flatten().collect();
            return cert;
        }
    }
    cert.witnesses = [transitive, primitive, prime_cycle].into_iter().flatten().collect();
    cert.note = "cycle types inconclusive".into();
    cert
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    #[test]
    fn quadratic_is_trivially_certified() {
        let c = certify_an(&p(&[-2, 0, 1]), 10);
        assert_eq!(c.status, AnStatus::CertifiedAtLeastAn);
        assert_eq!(c.disc_square, DiscSquare::Nonsquare);
    }

    #[test]
    fn disc_square_of_split_cubic() {
        let f = p(&[-6, 11, -6, 1]);
        assert_eq!(disc_square(&f), DiscSquare::Square);
        let c = certify_an(&f, 20);
        assert_eq!(c.status, AnStatus::CertifiedStrictlySmaller);
    }

    #[test]
    fn split_polynomials_only_show_identity() {
        let f = p(&[24, -50, 35, -10, 1]); // (x-1)(x-2)(x-3)(x-4)
        for q in crate::poly::modp::primes_from(5).take(30) {
            if let Some(t) = cycle_type(&f, q) {
                assert!(t.iter().all(|&c| c == 1));
            }
        }
    }

    #[test]
    fn generic_quintic_is_certified() {
        // x^5 - x - 1 has group S_5.
        let c = certify_an(&p(&[-1, -1, 0, 0, 0, 1]), 200);
        assert_eq!(c.status, AnStatus::CertifiedAtLeastAn);
        assert!(c.witnesses.iter().any(|w| w.role == WitnessRole::PrimeCycle));
    }

    #[test]
    fn cyclotomic_is_smaller() {
        // Φ7 has cyclic group of order 6 < A_6 and reducible 2-set resolvent.
        let c = certify_an(&p(&[1, 1, 1, 1, 1, 1, 1]), 50);
        assert_eq!(c.status, AnStatus::CertifiedStrictlySmaller);
    }

    #[test]
    fn pure_cycles() {
        assert!(pure_prime_cycle(&[3, 2], 3));
        assert!(pure_prime_cycle(&[3, 2], 2));
        assert!(!pure_prime_cycle(&[6, 1], 3));
        assert!(!pure_prime_cycle(&[3, 3], 3));
    }
}
