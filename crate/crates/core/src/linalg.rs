//! Dense exact linear algebra over the rationals.
//!
//! Everything here runs Gaussian elimination with the first nonzero entry in
//! canonical (row) order as pivot.  Exact arithmetic makes the pivot choice
//! correctness-neutral, so determinism wins.  Intended for desk-scale matrices
//! (at most a few hundred entries per side).

use crate::error::Error;
use crate::rat::Rat;

/// Dense rational matrix.  Row and column positions follow whatever canonical
/// order the caller's index sets carry (vertex order, edge order, ...).
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == n_cols), "ragged rows");
        RatMatrix {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Rat {
        &self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rat) {
        self.data[row * self.cols + col] = value;
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Submatrix keeping the given columns, in the given order.
    pub fn column_submatrix(&self, columns: &[usize]) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.rows, columns.len());
        for i in 0..self.rows {
            for (jj, &j) in columns.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &x[j]).sum())
            .collect()
    }
}

impl std::fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Outcome of solving `m x = rhs` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinSolveResult {
    Infeasible,
    Solution {
        /// One solution, with all free variables set to zero.
        particular: Vec<Rat>,
        /// Basis of the kernel of `m`; one vector per free column, that free
        /// variable set to one.  Its length equals the nullity.
        kernel_basis: Vec<Vec<Rat>>,
    },
}

/// Row echelon form, in place.  Returns the pivot (row, col) list.
fn echelonize(m: &mut RatMatrix) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..m.cols {
        if pivot_row == m.rows {
            break;
        }
        let found = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero());
        let Some(src) = found else { continue };
        if src != pivot_row {
            for j in 0..m.cols {
                let a = m.get(src, j).clone();
                let b = m.get(pivot_row, j).clone();
                m.set(src, j, b);
                m.set(pivot_row, j, a);
            }
        }
        let pivot = m.get(pivot_row, col).clone();
        for r in (pivot_row + 1)..m.rows {
            if m.get(r, col).is_zero() {
                continue;
            }
            let factor = m.get(r, col) / &pivot;
            for j in col..m.cols {
                let delta = &factor * m.get(pivot_row, j);
                let updated = m.get(r, j) - &delta;
                m.set(r, j, updated);
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    pivots
}

/// Rank and nullity of `m` by exact elimination; `rank + nullity = m.cols()`.
pub fn rank_nullity(m: &RatMatrix) -> (usize, usize) {
    let mut work = m.clone();
    let rank = echelonize(&mut work).len();
    (rank, m.cols() - rank)
}

/// Back-substitute one solution of the echelon system.  `rhs` is the reduced
/// right-hand side (None for homogeneous); `free` fixes the free columns.
fn back_substitute(
    echelon: &RatMatrix,
    pivots: &[(usize, usize)],
    rhs: Option<&[Rat]>,
    free: &[Rat],
) -> Vec<Rat> {
    let mut x = free.to_vec();
    for &(row, col) in pivots.iter().rev() {
        let mut acc = rhs.map_or_else(Rat::zero, |r| r[row].clone());
        for j in (col + 1)..echelon.cols() {
            if !echelon.get(row, j).is_zero() && !x[j].is_zero() {
                acc -= &(echelon.get(row, j) * &x[j]);
            }
        }
        x[col] = &acc / echelon.get(row, col);
    }
    x
}

/// Solve `m x = rhs` exactly: either `Infeasible`, or a particular solution
/// together with a kernel basis.
pub fn solve_affine(m: &RatMatrix, rhs: &[Rat]) -> Result<LinSolveResult, Error> {
    if rhs.len() != m.rows() {
        return Err(Error::IndexMismatch(format!(
            "rhs has {} entries but matrix has {} rows",
            rhs.len(),
            m.rows()
        )));
    }
    // Augment with the rhs so row operations track it.
    let mut work = RatMatrix::zeros(m.rows(), m.cols() + 1);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            work.set(i, j, m.get(i, j).clone());
        }
        work.set(i, m.cols(), rhs[i].clone());
    }
    let pivots = echelonize(&mut work);
    // A pivot in the augmented column means 0 = nonzero.
    if pivots.iter().any(|&(_, c)| c == m.cols()) {
        return Ok(LinSolveResult::Infeasible);
    }

    let reduced_rhs: Vec<Rat> = (0..m.rows())
        .map(|i| work.get(i, m.cols()).clone())
        .collect();
    let echelon = work.column_submatrix(&(0..m.cols()).collect::<Vec<_>>());
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();

    let zeroes = vec![Rat::zero(); m.cols()];
    let particular = back_substitute(&echelon, &pivots, Some(&reduced_rhs), &zeroes);

    let mut kernel_basis = Vec::new();
    for fc in (0..m.cols()).filter(|c| !pivot_cols.contains(c)) {
        let mut free = vec![Rat::zero(); m.cols()];
        free[fc] = Rat::one();
        kernel_basis.push(back_substitute(&echelon, &pivots, None, &free));
    }

    debug_assert_eq!(m.mul_vec(&particular), rhs.to_vec());
    debug_assert!(kernel_basis
        .iter()
        .all(|k| m.mul_vec(k).iter().all(Rat::is_zero)));
    Ok(LinSolveResult::Solution {
        particular,
        kernel_basis,
    })
}
