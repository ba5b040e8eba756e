//! Per-cardinality verdicts for q^r-divisible sets of k-subspaces.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::constructions::ConstructionRecipe;
use crate::criteria::{
    average_excludes, min_cardinality, minimal_spread_layers, quadratic_excludes, ExclusionReason, ExclusionVerdict,
};
use crate::lp::{scan_dimensions, ScanOptions};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Excluded { reason: ExclusionReason },
    OpenPossible,
    Constructible { spreads: u64, mrds: u64, recipe: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub n: u64,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectrumOptions {
    /// Additionally run the LP method over `vmin..=vmax` for survivors.
    pub use_lp: bool,
    pub vmin: usize,
    pub vmax: usize,
    pub include_triples: bool,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            use_lp: false,
            vmin: 1,
            vmax: 12,
            include_triples: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub q: u64,
    pub k: u32,
    pub r: u32,
    pub nmax: u64,
    pub entries: Vec<SpectrumEntry>,
    /// Largest cardinality up to `nmax` excluded by the implemented criteria.
    pub largest_excluded: Option<u64>,
    /// Largest integer outside the semigroup of constructible cardinalities,
    /// an upper bound for the threshold above which every cardinality occurs.
    #[serde(serialize_with = "crate::format::ser_opt_int")]
    pub semigroup_frobenius: Option<BigInt>,
}

impl SpectrumReport {
    /// Cardinalities not excluded.
    pub fn admissible(&self) -> Vec<u64> {
        self.entries
            .iter()
            .filter(|e| !matches!(e.verdict, Verdict::Excluded { .. }))
            .map(|e| e.n)
            .collect()
    }

    pub fn constructible(&self) -> Vec<u64> {
        self.entries
            .iter()
            .filter(|e| matches!(e.verdict, Verdict::Constructible { .. }))
            .map(|e| e.n)
            .collect()
    }

    pub fn entry(&self, n: u64) -> Option<&SpectrumEntry> {
        self.entries.iter().find(|e| e.n == n)
    }
}

/// Runs the exclusion criteria for one cardinality in order: the tight
/// minimum, the average bound, the quadratic criterion and, optionally, the
/// LP over a range of dimensions.
pub fn exclusion(q: u64, k: u32, r: u32, n: u64, opts: &SpectrumOptions) -> Result<ExclusionVerdict> {
    let minimum = min_cardinality(q, k, r);
    if BigInt::from(n) < minimum {
        return Ok(ExclusionVerdict::by(ExclusionReason::BelowMinimum { minimum }));
    }
    let avg = average_excludes(q, k, r, n);
    if avg.excluded {
        return Ok(avg);
    }
    let quad = quadratic_excludes(q, k, r, n);
    if quad.excluded {
        return Ok(quad);
    }
    if opts.use_lp {
        let scan_opts = ScanOptions {
            include_triples: opts.include_triples,
            ilp_node_limit: None,
        };
        let scan = scan_dimensions(q, k as usize, r, n, opts.vmin, opts.vmax, scan_opts)?;
        if scan.excluded_on_range {
            return Ok(ExclusionVerdict::by(ExclusionReason::LinearProgram {
                vmin: opts.vmin,
                vmax: opts.vmax,
            }));
        }
    }
    Ok(ExclusionVerdict::admitted())
}

fn check_params(q: u64, k: u32, r: u32) -> Result<()> {
    if q < 2 || k < 1 || r < 1 {
        return Err(Error::Parameter(format!(
            "need q >= 2, k >= 1, r >= 1 (q = {q}, k = {k}, r = {r})"
        )));
    }
    if !crate::algebra::is_prime_power(q) {
        return Err(Error::NotPrimePower(q));
    }
    Ok(())
}

/// Verdicts from the criteria alone: every entry is Excluded or OpenPossible.
pub fn admissible_set(q: u64, k: u32, r: u32, nmax: u64, opts: &SpectrumOptions) -> Result<SpectrumReport> {
    check_params(q, k, r)?;
    let entries = (1..=nmax)
        .map(|n| {
            let v = exclusion(q, k, r, n, opts)?;
            let verdict = match v.reason {
                Some(reason) => Verdict::Excluded { reason },
                None => Verdict::OpenPossible,
            };
            Ok(SpectrumEntry { n, verdict })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(q, k, r, nmax, entries))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructibleEntry {
    pub n: u64,
    /// Copies of the minimal spread.
    pub spreads: u64,
    /// Copies of the lifted MRD set.
    pub mrds: u64,
    pub recipe: ConstructionRecipe,
}

/// The two generating constructions: the spread of minimum cardinality and
/// the lifted MRD set.
pub fn generators(q: u64, k: u32, r: u32) -> (ConstructionRecipe, ConstructionRecipe) {
    (
        ConstructionRecipe::Spread {
            q,
            k: k as usize,
            s: minimal_spread_layers(k, r) as usize,
        },
        ConstructionRecipe::LiftedMrd {
            q,
            k: k as usize,
            r: r as usize,
        },
    )
}

/// Cardinalities `a*c1 + b*c2` in `1..=nmax`, each with the witness using the
/// fewest spreads.
pub fn constructible_set(q: u64, k: u32, r: u32, nmax: u64) -> Result<Vec<ConstructibleEntry>> {
    check_params(q, k, r)?;
    let (spread, mrd) = generators(q, k, r);
    let c1 = spread.cardinality().to_u64();
    let c2 = mrd.cardinality().to_u64();
    let mut found: BTreeMap<u64, (u64, u64)> = BTreeMap::new();
    if let Some(c1) = c1 {
        let mut a = 0;
        while a * c1 <= nmax {
            if let Some(c2) = c2 {
                let mut b = 0;
                while a * c1 + b * c2 <= nmax {
                    let n = a * c1 + b * c2;
                    if n >= 1 {
                        found.entry(n).or_insert((a, b));
                    }
                    b += 1;
                }
            } else if a >= 1 {
                found.entry(a * c1).or_insert((a, 0));
            }
            a += 1;
        }
    }
    Ok(found
        .into_iter()
        .map(|(n, (a, b))| {
            let left = ConstructionRecipe::repeated(spread.clone(), a as usize);
            let right = ConstructionRecipe::repeated(mrd.clone(), b as usize);
            let recipe = match (left, right) {
                (Some(l), Some(r)) => ConstructionRecipe::DirectSum {
                    left: Box::new(l),
                    right: Box::new(r),
                },
                (Some(x), None) | (None, Some(x)) => x,
                (None, None) => unreachable!("n >= 1"),
            };
            ConstructibleEntry {
                n,
                spreads: a,
                mrds: b,
                recipe,
            }
        })
        .collect())
}

/// Frobenius number of the semigroup generated by the two constructions.
pub fn semigroup_frobenius(q: u64, k: u32, r: u32) -> Option<BigInt> {
    let (spread, mrd) = generators(q, k, r);
    let (c1, c2) = (spread.cardinality(), mrd.cardinality());
    (c1.gcd(&c2) == BigInt::from(1)).then(|| &c1 * &c2 - &c1 - &c2)
}

fn finish(q: u64, k: u32, r: u32, nmax: u64, entries: Vec<SpectrumEntry>) -> SpectrumReport {
    let largest_excluded = entries
        .iter()
        .rev()
        .find(|e| matches!(e.verdict, Verdict::Excluded { .. }))
        .map(|e| e.n);
    SpectrumReport {
        q,
        k,
        r,
        nmax,
        entries,
        largest_excluded,
        semigroup_frobenius: semigroup_frobenius(q, k, r),
    }
}

/// Criteria verdicts merged with the constructible cardinalities.
pub fn report(q: u64, k: u32, r: u32, nmax: u64, opts: &SpectrumOptions) -> Result<SpectrumReport> {
    let mut rep = admissible_set(q, k, r, nmax, opts)?;
    for c in constructible_set(q, k, r, nmax)? {
        let entry = &mut rep.entries[(c.n - 1) as usize];
        if let Verdict::Excluded { reason } = &entry.verdict {
            return Err(Error::Inconsistent(format!(
                "cardinality {} is constructible by {} but excluded by {reason}",
                c.n, c.recipe
            )));
        }
        entry.verdict = Verdict::Constructible {
            spreads: c.spreads,
            mrds: c.mrds,
            recipe: c.recipe.to_string(),
        };
    }
    Ok(rep)
}
