//! The linear-programming method: the double-counting identities as an exact
//! equality system, solved over the nonnegative rationals or integers.

mod simplex;
mod system;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

pub use simplex::{phase_one, PhaseOne};
pub use system::{build_system, build_system_with, Constraint, LinearSystem, SystemParams, Variable};

use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FeasibilityStatus {
    Feasible,
    Infeasible,
    NodeLimit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityResult {
    pub status: FeasibilityStatus,
    /// A nonnegative (integral for the ILP) solution when feasible.
    #[serde(serialize_with = "ser_opt_rats")]
    pub point: Option<Vec<BigRational>>,
    /// Optimal sum of artificial variables of the relaxation that decided
    /// infeasibility; positive iff that relaxation is infeasible.
    #[serde(serialize_with = "crate::format::ser_rat")]
    pub phase_one_optimum: BigRational,
    /// Multipliers `y` with `y^T A <= 0 < y^T b` for an infeasible relaxation.
    #[serde(serialize_with = "ser_opt_rats")]
    pub farkas: Option<Vec<BigRational>>,
    /// Branch-and-bound nodes visited; `None` for a plain LP solve.
    pub nodes: Option<u64>,
}

fn ser_opt_rats<S: serde::Serializer>(x: &Option<Vec<BigRational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => crate::format::ser_rats(v, s),
        None => s.serialize_none(),
    }
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        self.status == FeasibilityStatus::Feasible
    }

    /// Value of a named variable in the certificate point.
    pub fn value(&self, sys: &LinearSystem, var: Variable) -> Option<&BigRational> {
        let idx = sys.index_of(var)?;
        self.point.as_ref().map(|p| &p[idx])
    }
}

fn matrix(sys: &LinearSystem) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let a = sys.constraints.iter().map(|c| c.coeffs.clone()).collect();
    let b = sys.constraints.iter().map(|c| c.rhs.clone()).collect();
    (a, b)
}

/// Exact nonnegative-rational feasibility of `sys`. Every returned point or
/// Farkas vector is re-checked against the system before it is reported.
pub fn lp_feasible(sys: &LinearSystem) -> FeasibilityResult {
    let (a, b) = matrix(sys);
    match phase_one(&a, &b, sys.num_vars()) {
        PhaseOne::Feasible(x) => {
            assert!(sys.is_solution(&x), "simplex returned a point that fails the system");
            FeasibilityResult {
                status: FeasibilityStatus::Feasible,
                point: Some(x),
                phase_one_optimum: BigRational::zero(),
                farkas: None,
                nodes: None,
            }
        }
        PhaseOne::Infeasible { optimum, farkas } => {
            assert!(
                sys.is_infeasibility_certificate(&farkas),
                "simplex returned an invalid Farkas vector"
            );
            FeasibilityResult {
                status: FeasibilityStatus::Infeasible,
                point: None,
                phase_one_optimum: optimum,
                farkas: Some(farkas),
                nodes: None,
            }
        }
    }
}

#[derive(Debug, Clone)]
enum Bound {
    Upper(usize, BigInt),
    Lower(usize, BigInt),
}

/// Relaxation of `sys` with extra bounds, each bound turned into an equality
/// with its own slack column.
fn relax(sys: &LinearSystem, bounds: &[Bound]) -> PhaseOne {
    let (mut a, mut b) = matrix(sys);
    let nv = sys.num_vars();
    let width = nv + bounds.len();
    for row in a.iter_mut() {
        row.resize(width, BigRational::zero());
    }
    for (t, bound) in bounds.iter().enumerate() {
        let mut row = vec![BigRational::zero(); width];
        let (j, value, slack) = match bound {
            Bound::Upper(j, u) => (*j, u, BigRational::one()),
            Bound::Lower(j, l) => (*j, l, -BigRational::one()),
        };
        row[j] = BigRational::one();
        row[nv + t] = slack;
        a.push(row);
        b.push(BigRational::from_integer(value.clone()));
    }
    match phase_one(&a, &b, width) {
        PhaseOne::Feasible(mut x) => {
            x.truncate(nv);
            PhaseOne::Feasible(x)
        }
        other => other,
    }
}

/// Depth-first branch and bound for a nonnegative integer solution. Every
/// variable is first capped by [`LinearSystem::implied_upper_bounds`], so the
/// search tree is finite; `node_limit` caps the visited nodes.
pub fn ilp_feasible(sys: &LinearSystem, node_limit: u64) -> FeasibilityResult {
    let root: Vec<Bound> = sys
        .implied_upper_bounds()
        .into_iter()
        .enumerate()
        .filter_map(|(j, u)| u.map(|u| Bound::Upper(j, u)))
        .collect();
    let root_lp = lp_feasible(sys);
    if !root_lp.is_feasible() {
        return FeasibilityResult {
            nodes: Some(1),
            ..root_lp
        };
    }
    let mut stack = vec![root];
    let mut nodes = 0u64;
    while let Some(bounds) = stack.pop() {
        if nodes >= node_limit {
            return FeasibilityResult {
                status: FeasibilityStatus::NodeLimit,
                point: None,
                phase_one_optimum: BigRational::zero(),
                farkas: None,
                nodes: Some(nodes),
            };
        }
        nodes += 1;
        let PhaseOne::Feasible(x) = relax(sys, &bounds) else {
            continue;
        };
        match x.iter().position(|v| !v.is_integer()) {
            None => {
                assert!(sys.is_solution(&x));
                return FeasibilityResult {
                    status: FeasibilityStatus::Feasible,
                    point: Some(x),
                    phase_one_optimum: BigRational::zero(),
                    farkas: None,
                    nodes: Some(nodes),
                };
            }
            Some(j) => {
                let down = x[j].floor().to_integer();
                let mut up_branch = bounds.clone();
                up_branch.push(Bound::Lower(j, &down + 1));
                let mut down_branch = bounds;
                down_branch.push(Bound::Upper(j, down));
                // explore the rounded-down side first
                stack.push(up_branch);
                stack.push(down_branch);
            }
        }
    }
    FeasibilityResult {
        status: FeasibilityStatus::Infeasible,
        point: None,
        phase_one_optimum: BigRational::zero(),
        farkas: None,
        nodes: Some(nodes),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    pub v: usize,
    /// Why the dimension was not solved (too small to hold the members).
    pub skipped: Option<String>,
    pub lp: Option<FeasibilityResult>,
    pub ilp: Option<FeasibilityResult>,
}

impl ScanEntry {
    /// Feasible under every solver that ran; skipped dimensions count as infeasible.
    pub fn feasible(&self) -> bool {
        self.skipped.is_none()
            && self.lp.as_ref().is_none_or(FeasibilityResult::is_feasible)
            && self
                .ilp
                .as_ref()
                .is_none_or(|r| r.status != FeasibilityStatus::Infeasible)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub q: u64,
    pub k: usize,
    pub r: u32,
    pub n: u64,
    pub vmin: usize,
    pub vmax: usize,
    pub entries: Vec<ScanEntry>,
    pub feasible_dims: Vec<usize>,
    /// True when no scanned dimension is feasible. This only covers the
    /// scanned range and is not an exclusion for all dimensions.
    pub excluded_on_range: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScanOptions {
    pub include_triples: bool,
    /// Also run branch and bound with this node limit.
    pub ilp_node_limit: Option<u64>,
}

/// Builds and solves the counting system for every `v` in `vmin..=vmax`.
pub fn scan_dimensions(
    q: u64,
    k: usize,
    r: u32,
    n: u64,
    vmin: usize,
    vmax: usize,
    opts: ScanOptions,
) -> Result<ScanReport> {
    let mut entries = Vec::new();
    for v in vmin..=vmax {
        match build_system(q, k, r, n, v, opts.include_triples) {
            Ok(sys) => {
                let lp = lp_feasible(&sys);
                let ilp = match opts.ilp_node_limit {
                    Some(limit) if lp.is_feasible() => Some(ilp_feasible(&sys, limit)),
                    _ => None,
                };
                entries.push(ScanEntry {
                    v,
                    skipped: None,
                    lp: Some(lp),
                    ilp,
                });
            }
            Err(crate::Error::Dimension(msg)) => entries.push(ScanEntry {
                v,
                skipped: Some(msg),
                lp: None,
                ilp: None,
            }),
            Err(e) => return Err(e),
        }
    }
    let feasible_dims: Vec<usize> = entries.iter().filter(|e| e.feasible()).map(|e| e.v).collect();
    Ok(ScanReport {
        q,
        k,
        r,
        n,
        vmin,
        vmax,
        excluded_on_range: feasible_dims.is_empty(),
        feasible_dims,
        entries,
    })
}
