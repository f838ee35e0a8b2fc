//! Dense integer matrices with overflow-checked elimination.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("integer overflow during exact elimination")]
    Overflow,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged matrix rows");
            data.extend_from_slice(row.as_ref());
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let term = a.checked_mul(other[(k, j)]).ok_or(LinalgError::Overflow)?;
                    out[(i, j)] = out[(i, j)].checked_add(term).ok_or(LinalgError::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension("vector length".into()));
        }
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(0i64, |acc, (&a, &b)| {
                    a.checked_mul(b)
                        .and_then(|t| acc.checked_add(t))
                        .ok_or(LinalgError::Overflow)
                })
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination in `i128`.
    pub fn determinant(&self) -> Result<i64, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(i128::from).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(a[k][k])
                        .zip(a[i][k].checked_mul(a[k][j]))
                        .and_then(|(x, y)| x.checked_sub(y))
                        .ok_or(LinalgError::Overflow)?;
                    a[i][j] = num / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| LinalgError::Overflow)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of unimodular row reduction: `transform * input = reduced`, with
/// `reduced` in row echelon form (positive pivots) and `inverse` the exact
/// inverse of `transform`.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    pub reduced: IntMatrix,
    pub transform: IntMatrix,
    pub inverse: IntMatrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

fn add_multiple(
    row_target: &mut [i64],
    row_source: &[i64],
    factor: i64,
) -> Result<(), LinalgError> {
    for (t, &s) in row_target.iter_mut().zip(row_source) {
        let term = s.checked_mul(factor).ok_or(LinalgError::Overflow)?;
        *t = t.checked_add(term).ok_or(LinalgError::Overflow)?;
    }
    Ok(())
}

struct Reducer {
    a: Vec<Vec<i64>>,
    u: Vec<Vec<i64>>,
    // stored transposed so column operations on the inverse become row operations
    u_inv_t: Vec<Vec<i64>>,
}

impl Reducer {
    fn swap(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
        self.u_inv_t.swap(i, j);
    }

    fn negate(&mut self, i: usize) {
        for row in [&mut self.a[i], &mut self.u[i], &mut self.u_inv_t[i]] {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }

    /// `row_i -= factor * row_p`.
    fn subtract(&mut self, i: usize, p: usize, factor: i64) -> Result<(), LinalgError> {
        let neg = factor.checked_neg().ok_or(LinalgError::Overflow)?;
        let src = self.a[p].clone();
        add_multiple(&mut self.a[i], &src, neg)?;
        let src = self.u[p].clone();
        add_multiple(&mut self.u[i], &src, neg)?;
        // inverse picks up column_p += factor * column_i
        let src = self.u_inv_t[i].clone();
        add_multiple(&mut self.u_inv_t[p], &src, factor)
    }
}

/// Row echelon form over the integers by unimodular row operations. Pivot
/// choice is deterministic: the smallest absolute value, lowest row on ties.
pub fn row_echelon(input: &IntMatrix) -> Result<RowEchelon, LinalgError> {
    let m = input.rows();
    let mut r = Reducer {
        a: input.to_rows(),
        u: IntMatrix::identity(m).to_rows(),
        u_inv_t: IntMatrix::identity(m).to_rows(),
    };
    let mut pivot_row = 0;
    let mut pivot_columns = Vec::new();
    for col in 0..input.cols() {
        if pivot_row == m {
            break;
        }
        loop {
            let best = (pivot_row..m)
                .filter(|&i| r.a[i][col] != 0)
                .min_by_key(|&i| (r.a[i][col].unsigned_abs(), i));
            let Some(best) = best else { break };
            if best != pivot_row {
                r.swap(best, pivot_row);
            }
            let pivot = r.a[pivot_row][col];
            let mut clean = true;
            for i in pivot_row + 1..m {
                let x = r.a[i][col];
                if x != 0 {
                    r.subtract(i, pivot_row, x.div_euclid(pivot))?;
                    if r.a[i][col] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if r.a[pivot_row][col] != 0 {
            if r.a[pivot_row][col] < 0 {
                r.negate(pivot_row);
            }
            pivot_columns.push(col);
            pivot_row += 1;
        }
    }
    Ok(RowEchelon {
        reduced: IntMatrix::from_rows(&r.a),
        transform: IntMatrix::from_rows(&r.u),
        inverse: IntMatrix::from_rows(&r.u_inv_t).transpose(),
        rank: pivot_row,
        pivot_columns,
    })
}
