//! Exact Gauss-Jordan elimination over a field.

use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearError {
    #[error("system has a {kernel_dim}-dimensional solution kernel")]
    Underdetermined { kernel_dim: usize },
    #[error("system is inconsistent (row {row} reduces to 0 = nonzero)")]
    Inconsistent { row: usize },
    #[error("row {row} has {got} entries, expected {expected}")]
    Shape { row: usize, expected: usize, got: usize },
}

/// A dense linear system `A u = b`.
#[derive(Debug, Clone)]
pub struct LinearSystem<F> {
    unknowns: usize,
    rows: Vec<Vec<F>>,
    rhs: Vec<F>,
}

impl<F: Field> LinearSystem<F> {
    pub fn new(unknowns: usize) -> Self {
        LinearSystem {
            unknowns,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equations(&self) -> usize {
        self.rows.len()
    }

    pub fn push(&mut self, row: Vec<F>, rhs: F) -> Result<(), LinearError> {
        if row.len() != self.unknowns {
            return Err(LinearError::Shape {
                row: self.rows.len(),
                expected: self.unknowns,
                got: row.len(),
            });
        }
        self.rows.push(row);
        self.rhs.push(rhs);
        Ok(())
    }

    /// Add an equation given sparsely as `(column, coefficient)` pairs.
    pub fn push_sparse(&mut self, entries: impl IntoIterator<Item = (usize, F)>, rhs: F) {
        let mut row = vec![F::zero(); self.unknowns];
        for (col, c) in entries {
            row[col] = row[col].clone() + c;
        }
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    /// Solve for the unique solution. Columns are pivoted in index order.
    #[allow(clippy::needless_range_loop)]
    pub fn solve_unique(&self) -> Result<Vec<F>, LinearError> {
        let mut rows = self.rows.clone();
        let mut rhs = self.rhs.clone();
        let mut pivot_cols = Vec::new();
        let mut rank = 0;
        for col in 0..self.unknowns {
            let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot);
            rhs.swap(rank, pivot);
            let inv = F::one() / rows[rank][col].clone();
            for c in col..self.unknowns {
                rows[rank][c] = rows[rank][c].clone() * inv.clone();
            }
            rhs[rank] = rhs[rank].clone() * inv;
            for r in 0..rows.len() {
                if r == rank || rows[r][col].is_zero() {
                    continue;
                }
                let factor = rows[r][col].clone();
                for c in col..self.unknowns {
                    let delta = factor.clone() * rows[rank][c].clone();
                    rows[r][c] = rows[r][c].clone() - delta;
                }
                let delta = factor * rhs[rank].clone();
                rhs[r] = rhs[r].clone() - delta;
            }
            pivot_cols.push(col);
            rank += 1;
        }
        if let Some(row) = (rank..rows.len()).find(|&r| !rhs[r].is_zero()) {
            return Err(LinearError::Inconsistent { row });
        }
        if rank < self.unknowns {
            return Err(LinearError::Underdetermined {
                kernel_dim: self.unknowns - rank,
            });
        }
        let mut solution = vec![F::zero(); self.unknowns];
        for (r, &col) in pivot_cols.iter().enumerate() {
            solution[col] = rhs[r].clone();
        }
        Ok(solution)
    }
}
