//! Small exact simplex over `BigRational`.
//!
//! Reference solver for the verification suites: the routing solver is
//! checked against exact path-LP feasibility, and the flow-based demand
//! maximization against the demand polytope optimum. Problems here have at
//! most a few thousand variables, so a dense tableau with Bland's rule is
//! plenty (and cannot cycle).
//!
//! Form: maximize `c x` subject to `A x <= b`, `x >= 0`, with `b >= 0` so
//! the slack basis is feasible from the start.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SimplexProblem {
    num_vars: usize,
    objective: Vec<BigRational>,
    rows: Vec<(Vec<(usize, BigRational)>, BigRational)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpResult {
    Optimal { value: BigRational, solution: Vec<BigRational> },
    Unbounded,
}

impl LpResult {
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            LpResult::Unbounded => None,
        }
    }
}

impl SimplexProblem {
    pub fn new(num_vars: usize) -> Self {
        SimplexProblem {
            num_vars,
            objective: vec![BigRational::zero(); num_vars],
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_objective(&mut self, var: usize, coeff: BigRational) {
        self.objective[var] = coeff;
    }

    /// Adds `sum coeffs <= rhs`; `rhs` must be non-negative.
    pub fn add_le_constraint(
        &mut self,
        coeffs: Vec<(usize, BigRational)>,
        rhs: BigRational,
    ) -> Result<()> {
        if rhs.is_negative() {
            return Err(Error::param(
                "simplex form needs non-negative right-hand sides".to_string(),
            ));
        }
        for &(var, _) in &coeffs {
            if var >= self.num_vars {
                return Err(Error::param(format!("constraint references variable {var}")));
            }
        }
        self.rows.push((coeffs, rhs));
        Ok(())
    }

    pub fn maximize(&self) -> Result<LpResult> {
        let n = self.num_vars;
        let m = self.rows.len();
        let cols = n + m + 1; // variables, slacks, rhs
        let rhs_col = n + m;

        let mut tab: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); cols]; m];
        let mut basis: Vec<usize> = (n..n + m).collect();
        for (i, (coeffs, rhs)) in self.rows.iter().enumerate() {
            for (var, c) in coeffs {
                tab[i][*var] = tab[i][*var].clone() + c.clone();
            }
            tab[i][n + i] = BigRational::one();
            tab[i][rhs_col] = rhs.clone();
        }
        // Objective row holds c_j while x_j is nonbasic; value accumulates
        // separately.
        let mut obj: Vec<BigRational> = vec![BigRational::zero(); cols];
        for (j, c) in self.objective.iter().enumerate() {
            obj[j] = c.clone();
        }
        let mut value = BigRational::zero();

        loop {
            // Bland: entering variable is the lowest index with positive
            // reduced cost.
            let Some(enter) = (0..n + m).find(|&j| obj[j].is_positive()) else {
                let mut solution = vec![BigRational::zero(); n];
                for (i, &b) in basis.iter().enumerate() {
                    if b < n {
                        solution[b] = tab[i][rhs_col].clone();
                    }
                }
                return Ok(LpResult::Optimal { value, solution });
            };
            // Ratio test; ties break to the lowest basis variable (Bland).
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..m {
                if tab[i][enter].is_positive() {
                    let ratio = tab[i][rhs_col].clone() / tab[i][enter].clone();
                    let replace = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && basis[i] < basis[*li])
                        }
                    };
                    if replace {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((pivot_row, _)) = leave else {
                return Ok(LpResult::Unbounded);
            };

            let pivot = tab[pivot_row][enter].clone();
            for x in tab[pivot_row].iter_mut() {
                *x = x.clone() / pivot.clone();
            }
            for i in 0..m {
                if i != pivot_row && !tab[i][enter].is_zero() {
                    let factor = tab[i][enter].clone();
                    for j in 0..cols {
                        let delta = factor.clone() * tab[pivot_row][j].clone();
                        tab[i][j] = tab[i][j].clone() - delta;
                    }
                }
            }
            if !obj[enter].is_zero() {
                let factor = obj[enter].clone();
                for j in 0..cols {
                    let delta = factor.clone() * tab[pivot_row][j].clone();
                    obj[j] = obj[j].clone() - delta;
                }
                value = value + factor * tab[pivot_row][rhs_col].clone();
            }
            basis[pivot_row] = enter;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn textbook_two_variable_problem() {
        // max 3x + 5y st x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6).
        let mut p = SimplexProblem::new(2);
        p.set_objective(0, r(3, 1));
        p.set_objective(1, r(5, 1));
        p.add_le_constraint(vec![(0, r(1, 1))], r(4, 1)).unwrap();
        p.add_le_constraint(vec![(1, r(2, 1))], r(12, 1)).unwrap();
        p.add_le_constraint(vec![(0, r(3, 1)), (1, r(2, 1))], r(18, 1)).unwrap();
        match p.maximize().unwrap() {
            LpResult::Optimal { value, solution } => {
                assert_eq!(value, r(36, 1));
                assert_eq!(solution, vec![r(2, 1), r(6, 1)]);
            }
            LpResult::Unbounded => panic!("bounded problem"),
        }
    }

    #[test]
    fn unbounded_direction_is_detected() {
        let mut p = SimplexProblem::new(2);
        p.set_objective(0, r(1, 1));
        p.add_le_constraint(vec![(1, r(1, 1))], r(1, 1)).unwrap();
        assert_eq!(p.maximize().unwrap(), LpResult::Unbounded);
    }

    #[test]
    fn degenerate_ties_terminate() {
        // Multiple zero-rhs rows force degenerate pivots; Bland must exit.
        let mut p = SimplexProblem::new(3);
        p.set_objective(0, r(1, 1));
        p.set_objective(1, r(1, 1));
        p.add_le_constraint(vec![(0, r(1, 1)), (1, r(-1, 1))], r(0, 1)).unwrap();
        p.add_le_constraint(vec![(0, r(-1, 1)), (1, r(1, 1))], r(0, 1)).unwrap();
        p.add_le_constraint(vec![(0, r(1, 1)), (1, r(1, 1)), (2, r(1, 1))], r(2, 1)).unwrap();
        match p.maximize().unwrap() {
            LpResult::Optimal { value, .. } => assert_eq!(value, r(2, 1)),
            LpResult::Unbounded => panic!("bounded problem"),
        }
    }

    #[test]
    fn negative_rhs_is_rejected() {
        let mut p = SimplexProblem::new(1);
        assert!(p.add_le_constraint(vec![(0, r(1, 1))], r(-1, 1)).is_err());
    }

    #[test]
    fn rational_answers_are_exact() {
        // max x + y st 3x + y <= 1, x + 3y <= 1 -> 1/2 at (1/4, 1/4).
        let mut p = SimplexProblem::new(2);
        p.set_objective(0, r(1, 1));
        p.set_objective(1, r(1, 1));
        p.add_le_constraint(vec![(0, r(3, 1)), (1, r(1, 1))], r(1, 1)).unwrap();
        p.add_le_constraint(vec![(0, r(1, 1)), (1, r(3, 1))], r(1, 1)).unwrap();
        match p.maximize().unwrap() {
            LpResult::Optimal { value, solution } => {
                assert_eq!(value, r(1, 2));
                assert_eq!(solution, vec![r(1, 4), r(1, 4)]);
            }
            LpResult::Unbounded => panic!("bounded problem"),
        }
    }
}
