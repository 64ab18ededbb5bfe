//! Dense exact matrices over `ℚ`.
//!
//! Rank and echelon forms go through fraction-free (Bareiss) elimination on
//! integer rows obtained by clearing denominators row by row. Pivots are the
//! first nonzero entry in column order, so every derived basis is
//! deterministic.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::MatrixError;
use crate::scalar::{format_rational, rat, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        ExactMatrix { rows: nrows, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Shape(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Fraction-free row echelon form over the integers.
    pub fn fraction_free_echelon(&self) -> FractionFreeEchelon {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|i| clear_denominators(self.row(i))).collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let (head, tail) = a.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let pivot = &pivot_row[c];
            for row in tail.iter_mut() {
                let lead = std::mem::take(&mut row[c]);
                for j in c + 1..self.cols {
                    let v = pivot * &row[j] - &lead * &pivot_row[j];
                    // Sylvester's identity guarantees exact division.
                    row[j] = v / &prev;
                }
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        FractionFreeEchelon { rows: a, pivots, cols: self.cols }
    }

    /// Exact rank over `ℚ`.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if let Some(r) = self.small_integer_rank() {
            return r;
        }
        self.fraction_free_echelon().pivots.len()
    }

    /// Bareiss in checked `i128` for integer matrices; `None` if any entry is
    /// not an integer that fits or an intermediate overflows.
    fn small_integer_rank(&self) -> Option<usize> {
        let mut a: Vec<Vec<i128>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            let mut out = Vec::with_capacity(self.cols);
            for x in row {
                if !x.is_integer() {
                    return None;
                }
                out.push(x.numer().to_i128()?);
            }
            a.push(out);
        }
        let mut prev: i128 = 1;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, p);
            let (head, tail) = a.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let pivot = pivot_row[c];
            for row in tail.iter_mut() {
                let lead = std::mem::take(&mut row[c]);
                for j in c + 1..self.cols {
                    let v = pivot.checked_mul(row[j])?.checked_sub(lead.checked_mul(pivot_row[j])?)?;
                    row[j] = v / prev;
                }
            }
            prev = pivot;
            r += 1;
        }
        Some(r)
    }

    /// Reduced row echelon form restricted to its nonzero rows, with pivot columns.
    pub fn rref(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let ech = self.fraction_free_echelon();
        let mut rows: Vec<Vec<Rational>> = ech
            .rows
            .iter()
            .zip(&ech.pivots)
            .map(|(row, &p)| {
                let lead = Rational::from_integer(row[p].clone());
                row.iter().map(|x| Rational::from_integer(x.clone()) / &lead).collect()
            })
            .collect();
        for (r, &p) in ech.pivots.iter().enumerate().rev() {
            for above in 0..r {
                let f = rows[above][p].clone();
                if f.is_zero() {
                    continue;
                }
                let (upper, lower) = rows.split_at_mut(r);
                for (x, y) in upper[above].iter_mut().zip(&lower[0]).skip(p) {
                    *x -= &f * y;
                }
            }
        }
        (rows, ech.pivots)
    }

    /// Basis of the right kernel: exactly `cols - rank` vectors with `m·v = 0`.
    ///
    /// One vector per free column `f`, with a 1 in position `f`.
    pub fn nullspace_basis(&self) -> Vec<Vec<Rational>> {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in rref.iter().zip(&pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<ExactMatrix, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::Shape(self.rows, self.cols, self.cols, self.rows));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (rref, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(MatrixError::Singular);
        }
        Ok(ExactMatrix::from_rows(rref.into_iter().map(|row| row[n..].to_vec()).collect()))
    }
}

/// Integer echelon rows produced by [`ExactMatrix::fraction_free_echelon`].
#[derive(Clone, Debug)]
pub struct FractionFreeEchelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Exact rank; see [`ExactMatrix::rank`].
pub fn rank(m: &ExactMatrix) -> usize {
    m.rank()
}

/// See [`ExactMatrix::nullspace_basis`].
pub fn nullspace_basis(m: &ExactMatrix) -> Vec<Vec<Rational>> {
    m.nullspace_basis()
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
