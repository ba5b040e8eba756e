//! Hyperplane and triple incidence spectra, the double-counting identities
//! they satisfy, the divisibility exponent and the two classification checks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{gauss_number, gauss_signed, pow};
use crate::subspace::SubspaceSet;
use crate::{Error, Limits, Result};

/// `a_i`: the number of hyperplanes containing exactly `i` members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceSpectrum {
    pub q: u64,
    pub v: usize,
    pub k: usize,
    pub n: usize,
    pub counts: BTreeMap<usize, u64>,
}

impl IncidenceSpectrum {
    pub fn get(&self, i: usize) -> u64 {
        self.counts.get(&i).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// The values `n - i` over all `i` with `a_i > 0`.
    pub fn residues(&self) -> Vec<i64> {
        self.counts
            .iter()
            .filter(|(_, &a)| a > 0)
            .map(|(&i, _)| self.n as i64 - i as i64)
            .collect()
    }
}

/// Ordered counts of member triples by the dimension of their span, so the
/// entries add up to n(n-1)(n-2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleSpectrum {
    pub counts: BTreeMap<usize, u64>,
}

impl TripleSpectrum {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Number of hyperplanes of GF(q)^v, checked against the enumeration limit.
fn hyperplane_count(q: u64, v: usize, limits: &Limits) -> Result<u64> {
    let count = gauss_number(q, v as u32)?;
    if count > BigInt::from(limits.max_hyperplanes) {
        return Err(Error::TooLarge {
            what: "hyperplane enumeration",
            size: count.to_string(),
            limit: limits.max_hyperplanes.to_string(),
        });
    }
    Ok(u64::try_from(count).expect("bounded by the limit"))
}

/// Calls `visit` once per hyperplane of GF(q)^v with its canonical functional
/// (first nonzero coordinate equal to 1).
pub fn for_each_hyperplane(q: u64, v: usize, mut visit: impl FnMut(&[u32])) {
    let mut h = vec![0u32; v];
    for lead in 0..v {
        h.iter_mut().for_each(|x| *x = 0);
        h[lead] = 1;
        let tail_len = v - lead - 1;
        let tail_count = q.pow(tail_len as u32);
        for t in 0..tail_count {
            let mut x = t;
            for c in h[lead + 1..].iter_mut() {
                *c = (x % q) as u32;
                x /= q;
            }
            visit(&h);
        }
    }
}

pub fn hyperplane_spectrum(s: &SubspaceSet, limits: &Limits) -> Result<IncidenceSpectrum> {
    let q = s.q();
    let v = s.ambient_dim();
    hyperplane_count(q, v, limits)?;
    let f = s.field();
    let mut counts = BTreeMap::new();
    for_each_hyperplane(q, v, |h| {
        let inside = s.members().iter().filter(|m| m.annihilated_by(h, f)).count();
        *counts.entry(inside).or_insert(0u64) += 1;
    });
    Ok(IncidenceSpectrum {
        q,
        v,
        k: s.member_dim(),
        n: s.len(),
        counts,
    })
}

pub fn triple_spectrum(s: &SubspaceSet) -> TripleSpectrum {
    let f = s.field();
    let m = s.members();
    let mut counts = BTreeMap::new();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let pair = m[i].generator().vstack(m[j].generator());
            for l in j + 1..m.len() {
                let dim = pair.vstack(m[l].generator()).rank(f);
                // six orderings per unordered triple
                *counts.entry(dim).or_insert(0u64) += 6;
            }
        }
    }
    TripleSpectrum { counts }
}

/// Largest r such that q^r divides every `n - i` with `a_i > 0`.
pub fn exponent_of_spectrum(a: &IncidenceSpectrum) -> u32 {
    let g = a.residues().into_iter().fold(0u64, |g, r| g.gcd(&r.unsigned_abs()));
    if g == 0 {
        return 0;
    }
    let mut r = 0;
    let mut rest = g;
    while rest % a.q == 0 {
        rest /= a.q;
        r += 1;
    }
    r
}

/// The measured divisibility exponent, computed in the span of the members.
pub fn divisibility_exponent(s: &SubspaceSet, limits: &Limits) -> Result<u32> {
    s.require_disjoint()?;
    if s.is_empty() {
        return Ok(0);
    }
    let (restricted, _) = s.span_and_restrict();
    let a = hyperplane_spectrum(&restricted, limits)?;
    Ok(exponent_of_spectrum(&a))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    #[serde(serialize_with = "crate::format::ser_int")]
    pub lhs: BigInt,
    /// `None` when the right-hand side would need a bracket of negative
    /// argument with a nonzero coefficient.
    #[serde(serialize_with = "crate::format::ser_opt_int")]
    pub rhs: Option<BigInt>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn bracket_term(q: u64, coeff: BigInt, arg: i64) -> Option<BigInt> {
    if coeff.is_zero() {
        return Some(BigInt::zero());
    }
    gauss_signed(q, arg).map(|g| coeff * g)
}

fn falling(i: usize, depth: usize) -> BigInt {
    (0..depth).fold(BigInt::one(), |acc, d| acc * BigInt::from(i as i64 - d as i64))
}

fn check(name: &'static str, lhs: BigInt, rhs: Option<BigInt>) -> IdentityCheck {
    let holds = rhs.as_ref() == Some(&lhs);
    IdentityCheck { name, lhs, rhs, holds }
}

/// Evaluates the double-counting identities for the hyperplane spectrum `a`
/// and, when given, the ordered triple spectrum `b`.
pub fn check_counting_identities(
    a: &IncidenceSpectrum,
    b: Option<&TripleSpectrum>,
    q: u64,
    v: usize,
    k: usize,
    n: usize,
) -> IdentityReport {
    let moment = |depth: usize| {
        a.counts
            .iter()
            .map(|(&i, &ai)| falling(i, depth) * BigInt::from(ai))
            .sum::<BigInt>()
    };
    let (vi, ki) = (v as i64, k as i64);
    let mut checks = vec![
        check("hyperplanes", moment(0), gauss_signed(q, vi)),
        check(
            "member-hyperplane pairs",
            moment(1),
            bracket_term(q, falling(n, 1), vi - ki),
        ),
        check(
            "member-pair-hyperplane triples",
            moment(2),
            bracket_term(q, falling(n, 2), vi - 2 * ki),
        ),
    ];
    if let Some(b) = b {
        let rhs = b.counts.iter().try_fold(BigInt::zero(), |acc, (&dim, &bd)| {
            bracket_term(q, BigInt::from(bd), vi - dim as i64).map(|t| acc + t)
        });
        checks.push(check("member-triple-hyperplane quadruples", moment(3), rhs));
        let total: BigInt = b.counts.values().map(|&x| BigInt::from(x)).sum();
        checks.push(check("ordered triples", total, Some(falling(n, 3))));
    }
    IdentityReport { checks }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Classification {
    /// A single nonzero `a_r`, r > 0: the set is a k-spread of GF(q)^{sk}.
    Spread {
        s: usize,
        #[serde(serialize_with = "crate::format::ser_int")]
        r: BigInt,
    },
    /// A q-divisible set of q^k + 1 members: a k-spread of GF(q)^{2k}.
    PartitionOf2k,
    Unclassified,
}

pub fn classify_spectrum(a: &IncidenceSpectrum, q: u64, v: usize, k: usize) -> Result<Classification> {
    let n = BigInt::from(a.n);
    let nonzero: Vec<(usize, u64)> = a.counts.iter().filter(|(_, &x)| x > 0).map(|(&i, &x)| (i, x)).collect();

    let q_divisible = !nonzero.is_empty() && nonzero.iter().all(|&(i, _)| ((a.n as i64 - i as i64) % q as i64) == 0);
    if q_divisible && n == pow(q, k as u32) + 1 {
        if v != 2 * k {
            return Err(Error::Inconsistent(format!(
                "q-divisible set of q^k + 1 = {n} members spans dimension {v}, expected {}",
                2 * k
            )));
        }
        let covered = &n * gauss_number(q, k as u32)?;
        if covered != gauss_number(q, v as u32)? {
            return Err(Error::Inconsistent("members do not cover every point".into()));
        }
        return Ok(Classification::PartitionOf2k);
    }

    if let [(r, _)] = nonzero[..] {
        if r > 0 {
            if k == 0 || k >= v || !v.is_multiple_of(k) {
                return Err(Error::Inconsistent(format!(
                    "single hyperplane type {r} requires k | v with k < v (k = {k}, v = {v})"
                )));
            }
            let qk1 = pow(q, k as u32) - 1;
            let expected_n = (pow(q, v as u32) - 1) / &qk1;
            let expected_r = (pow(q, (v - k) as u32) - 1) / &qk1;
            if n != expected_n || BigInt::from(r) != expected_r {
                return Err(Error::Inconsistent(format!(
                    "single hyperplane type {r} with n = {n}; a spread needs n = {expected_n}, r = {expected_r}"
                )));
            }
            return Ok(Classification::Spread {
                s: v / k,
                r: expected_r,
            });
        }
    }
    Ok(Classification::Unclassified)
}
