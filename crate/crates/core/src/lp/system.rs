use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::{gauss_signed, pow};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum Variable {
    /// `a_i`: hyperplanes containing exactly `i` members.
    Hyperplane(usize),
    /// `b_j`: ordered member triples spanning dimension `j`.
    Triple(usize),
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Hyperplane(i) => write!(f, "a_{i}"),
            Variable::Triple(j) => write!(f, "b_{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub name: &'static str,
    #[serde(serialize_with = "crate::format::ser_rats")]
    pub coeffs: Vec<BigRational>,
    #[serde(serialize_with = "crate::format::ser_rat")]
    pub rhs: BigRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SystemParams {
    pub q: u64,
    pub k: usize,
    pub r: u32,
    pub n: u64,
    pub v: usize,
    pub include_triples: bool,
    /// Also admit `a_n`, i.e. hyperplanes containing every member, which only
    /// occur when the ambient space is larger than the span.
    pub admit_full: bool,
}

/// Equality system `A x = b, x >= 0` in the hyperplane counts `a_i` and,
/// optionally, the triple counts `b_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearSystem {
    pub params: SystemParams,
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
}

fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

fn falling(i: u64, depth: u64) -> BigInt {
    (0..depth).fold(BigInt::from(1), |acc, d| acc * (BigInt::from(i) - d))
}

pub fn build_system(q: u64, k: usize, r: u32, n: u64, v: usize, include_triples: bool) -> Result<LinearSystem> {
    build_system_with(SystemParams {
        q,
        k,
        r,
        n,
        v,
        include_triples,
        admit_full: false,
    })
}

pub fn build_system_with(params: SystemParams) -> Result<LinearSystem> {
    let SystemParams {
        q,
        k,
        r,
        n,
        v,
        include_triples,
        admit_full,
    } = params;
    if q < 2 || k < 1 || r < 1 {
        return Err(Error::Parameter(format!(
            "need q >= 2, k >= 1, r >= 1 (q = {q}, k = {k}, r = {r})"
        )));
    }
    if !crate::algebra::is_prime_power(q) {
        return Err(Error::NotPrimePower(q));
    }
    if n < 1 {
        return Err(Error::Parameter("the counting system needs n >= 1".into()));
    }
    if n >= 2 && v < 2 * k {
        return Err(Error::Dimension(format!(
            "{n} disjoint {k}-subspaces need dimension at least {}, got v = {v}",
            2 * k
        )));
    }
    if v < k {
        return Err(Error::Dimension(format!(
            "a {k}-subspace does not fit in dimension {v}"
        )));
    }
    let delta = u64::try_from(pow(q, r)).map_err(|_| Error::Parameter("q^r does not fit in 64 bits".into()))?;

    let mut incidences: Vec<u64> = (1..)
        .map(|h| h * delta)
        .take_while(|&d| d <= n)
        .map(|d| n - d)
        .collect();
    if admit_full {
        incidences.push(n);
    }
    incidences.sort_unstable();
    let mut variables: Vec<Variable> = incidences.iter().map(|&i| Variable::Hyperplane(i as usize)).collect();
    let triples = include_triples && n >= 3;
    let triple_dims: Vec<usize> = if triples {
        (2 * k..=(3 * k).min(v)).collect()
    } else {
        Vec::new()
    };
    variables.extend(triple_dims.iter().map(|&j| Variable::Triple(j)));

    let bracket = |m: i64| gauss_signed(q, m).expect("nonnegative by the dimension checks");
    let width = variables.len();
    let a_row = |depth: u64| {
        let mut c: Vec<BigRational> = incidences.iter().map(|&i| int(falling(i, depth))).collect();
        c.resize(width, BigRational::zero());
        c
    };
    let (vi, ki) = (v as i64, k as i64);
    let pair_rhs = if n >= 2 {
        falling(n, 2) * bracket(vi - 2 * ki)
    } else {
        BigInt::zero()
    };
    let mut constraints = vec![
        Constraint {
            name: "hyperplanes",
            coeffs: a_row(0),
            rhs: int(bracket(vi)),
        },
        Constraint {
            name: "member-hyperplane pairs",
            coeffs: a_row(1),
            rhs: int(BigInt::from(n) * bracket(vi - ki)),
        },
        Constraint {
            name: "member-pair-hyperplane triples",
            coeffs: a_row(2),
            rhs: int(pair_rhs),
        },
    ];
    if triples {
        let offset = incidences.len();
        let mut c = a_row(3);
        for (t, &j) in triple_dims.iter().enumerate() {
            c[offset + t] = -int(bracket(vi - j as i64));
        }
        constraints.push(Constraint {
            name: "member-triple-hyperplane quadruples",
            coeffs: c,
            rhs: BigRational::zero(),
        });
        let mut c = vec![BigRational::zero(); width];
        for t in 0..triple_dims.len() {
            c[offset + t] = int(1);
        }
        constraints.push(Constraint {
            name: "ordered triples",
            coeffs: c,
            rhs: int(falling(n, 3)),
        });
    }
    Ok(LinearSystem {
        params,
        variables,
        constraints,
    })
}

impl LinearSystem {
    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn index_of(&self, var: Variable) -> Option<usize> {
        self.variables.iter().position(|&x| x == var)
    }

    /// `A x - b` for each constraint.
    pub fn residuals(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.constraints
            .iter()
            .map(|c| c.coeffs.iter().zip(x).map(|(a, xi)| a * xi).sum::<BigRational>() - &c.rhs)
            .collect()
    }

    /// Exact check that `x` is a nonnegative solution.
    pub fn is_solution(&self, x: &[BigRational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|xi| !xi.is_negative())
            && self.residuals(x).iter().all(Zero::is_zero)
    }

    /// Exact check of a Farkas certificate: `y^T A <= 0` componentwise and
    /// `y^T b > 0`, which rules out every `x >= 0` with `A x = b`.
    pub fn is_infeasibility_certificate(&self, y: &[BigRational]) -> bool {
        if y.len() != self.constraints.len() {
            return false;
        }
        let yb: BigRational = self.constraints.iter().zip(y).map(|(c, yi)| &c.rhs * yi).sum();
        let columns_ok = (0..self.num_vars()).all(|j| {
            let s: BigRational = self.constraints.iter().zip(y).map(|(c, yi)| &c.coeffs[j] * yi).sum();
            !s.is_positive()
        });
        columns_ok && yb.is_positive()
    }

    /// Upper bound per variable implied by a constraint with nonnegative
    /// coefficients: its right-hand side over the variable's coefficient.
    pub fn implied_upper_bounds(&self) -> Vec<Option<BigInt>> {
        (0..self.num_vars())
            .map(|j| {
                self.constraints
                    .iter()
                    .filter(|c| c.coeffs.iter().all(|a| !a.is_negative()) && c.coeffs[j].is_positive())
                    .map(|c| (&c.rhs / &c.coeffs[j]).floor().to_integer())
                    .min()
            })
            .collect()
    }
}
