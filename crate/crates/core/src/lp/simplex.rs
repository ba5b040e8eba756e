//! Phase-one simplex over exact rationals with Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Outcome of minimizing the sum of artificial variables for `A x = b, x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhaseOne {
    Feasible(Vec<BigRational>),
    /// Positive optimum and multipliers `y` with `y^T A <= 0`, `y^T b > 0`.
    Infeasible {
        optimum: BigRational,
        farkas: Vec<BigRational>,
    },
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    /// Reduced costs over structural then artificial columns.
    cost: Vec<BigRational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for x in self.rows[row].iter_mut() {
            *x /= &p;
        }
        self.rhs[row] /= &p;
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, pr) in r.iter_mut().zip(&pivot_row) {
                if !pr.is_zero() {
                    *x -= &f * pr;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for (x, pr) in self.cost.iter_mut().zip(&pivot_row) {
                if !pr.is_zero() {
                    *x -= &f * pr;
                }
            }
        }
        self.basis[row] = col;
    }
}

/// Solves the feasibility problem `A x = b, x >= 0` exactly. Only structural
/// columns may enter the basis; Bland's smallest-index rule on both entering
/// and leaving choices guarantees termination.
pub fn phase_one(a: &[Vec<BigRational>], b: &[BigRational], num_vars: usize) -> PhaseOne {
    let m = a.len();
    let sign: Vec<BigRational> = b
        .iter()
        .map(|x| {
            if x.is_negative() {
                -BigRational::one()
            } else {
                BigRational::one()
            }
        })
        .collect();
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<BigRational> = a[i].iter().map(|x| x * &sign[i]).collect();
        row.resize(num_vars, BigRational::zero());
        row.extend((0..m).map(|j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        }));
        rows.push(row);
    }
    let rhs: Vec<BigRational> = b.iter().zip(&sign).map(|(x, s)| x * s).collect();
    let mut cost = vec![BigRational::zero(); num_vars + m];
    for j in 0..num_vars {
        cost[j] = -rows.iter().map(|r| r[j].clone()).sum::<BigRational>();
    }
    let mut t = Tableau {
        rows,
        rhs,
        cost,
        basis: (num_vars..num_vars + m).collect(),
    };

    while let Some(col) = (0..num_vars).find(|&j| t.cost[j].is_negative()) {
        let mut best: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if !t.rows[i][col].is_positive() {
                continue;
            }
            let ratio = &t.rhs[i] / &t.rows[i][col];
            let better = match &best {
                None => true,
                Some((bi, br)) => ratio < *br || (ratio == *br && t.basis[i] < t.basis[*bi]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        // the phase-one objective is bounded below by zero, so some row qualifies
        let (row, _) = best.expect("phase-one problem is bounded");
        t.pivot(row, col);
    }

    let optimum: BigRational = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&j, _)| j >= num_vars)
        .map(|(_, x)| x.clone())
        .sum();
    if optimum.is_zero() {
        let mut x = vec![BigRational::zero(); num_vars];
        for (&j, val) in t.basis.iter().zip(&t.rhs) {
            if j < num_vars {
                x[j] = val.clone();
            }
        }
        PhaseOne::Feasible(x)
    } else {
        // multipliers of the sign-adjusted rows are 1 - (reduced cost of the
        // artificial column); undo the row flips for the original system
        let farkas = (0..m)
            .map(|i| (BigRational::one() - &t.cost[num_vars + i]) * &sign[i])
            .collect();
        PhaseOne::Infeasible { optimum, farkas }
    }
}
