//! Dense matrices over `ℚ(i)` and their exact rank.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::gaussian::GaussianRational;
use super::ClosureError;
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GRMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl GRMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GaussianRational>) -> Result<Self, ClosureError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(ClosureError::Shape { rows, cols, entries: entries.len() });
        }
        Ok(GRMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self, ClosureError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(ClosureError::Shape { rows: r, cols: c, entries: bad.len() });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> GaussianRational) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        let entries = (0..rows * cols).map(|idx| f(idx / cols, idx % cols)).collect();
        GRMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| GaussianRational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &GaussianRational::one())
    }

    pub fn scalar(n: usize, c: &GaussianRational) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { c.clone() } else { GaussianRational::zero() })
    }

    pub fn diagonal(diag: &[GaussianRational]) -> Self {
        Self::from_fn(diag.len(), diag.len(), |i, j| {
            if i == j { diag[i].clone() } else { GaussianRational::zero() }
        })
    }

    /// Block-diagonal sum of square or rectangular blocks.
    pub fn block_diag(blocks: &[GRMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    *out.get_mut(r0 + i, c0 + j) = b.get(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut GaussianRational {
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> GaussianRational {
        let mut t = GaussianRational::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        GRMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e * c).collect() }
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        GRMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e.scale(c)).collect() }
    }

    pub fn checked_mul(&self, rhs: &GRMatrix) -> Result<Self, ClosureError> {
        if self.cols != rhs.rows {
            return Err(ClosureError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(l, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &GRMatrix, f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational) -> Result<Self, ClosureError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(ClosureError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect();
        Ok(GRMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn checked_add(&self, rhs: &GRMatrix) -> Result<Self, ClosureError> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &GRMatrix) -> Result<Self, ClosureError> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// `Q X Qᵀ`.
    pub fn conjugate_by(&self, q: &GRMatrix) -> Result<Self, ClosureError> {
        q.checked_mul(self)?.checked_mul(&q.transpose())
    }

    pub fn pow(&self, e: u32) -> Result<Self, ClosureError> {
        if !self.is_square() {
            return Err(ClosureError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut out = Self::identity(self.rows);
        for _ in 0..e {
            out = out.checked_mul(self)?;
        }
        Ok(out)
    }
}

impl Mul for &GRMatrix {
    type Output = GRMatrix;
    fn mul(self, rhs: &GRMatrix) -> GRMatrix {
        self.checked_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &GRMatrix {
    type Output = GRMatrix;
    fn add(self, rhs: &GRMatrix) -> GRMatrix {
        self.checked_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &GRMatrix {
    type Output = GRMatrix;
    fn sub(self, rhs: &GRMatrix) -> GRMatrix {
        self.checked_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl fmt::Display for GRMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{:>width$}", cells[i * self.cols + j])).collect();
            writeln!(f, "[ {} ]", row.join("  "))?;
        }
        Ok(())
    }
}

/// Array of rows, each an array of entry strings; the inverse of the parser.
impl Serialize for GRMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&self.entries[i * self.cols..(i + 1) * self.cols])?;
        }
        seq.end()
    }
}

type GaussianInt = Complex<BigInt>;

/// Rank over `ℚ(i)`.
///
/// Rows are first scaled to Gaussian integers; Bareiss elimination then keeps
/// every intermediate entry a minor of the scaled matrix, and each division
/// by the previous pivot is exact in `ℤ[i]`.
pub fn rank_exact(m: &GRMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<GaussianInt>> = (0..rows)
        .map(|i| {
            let row = &m.entries[i * cols..(i + 1) * cols];
            let lcm = row.iter().fold(BigInt::one(), |acc, e| num_integer::Integer::lcm(&acc, &e.denom_lcm()));
            row.iter()
                .map(|e| {
                    let re = (&e.re * &lcm).to_integer();
                    let im = (&e.im * &lcm).to_integer();
                    Complex::new(re, im)
                })
                .collect()
        })
        .collect();

    let mut prev = GaussianInt::one();
    let mut rank = 0;
    let mut col_order: Vec<usize> = (0..cols).collect();
    while rank < rows.min(cols) {
        // pivot: any nonzero entry in the trailing block
        let pivot = (rank..rows).find_map(|i| (rank..cols).find(|&j| !a[i][col_order[j]].is_zero()).map(|j| (i, j)));
        let Some((pi, pj)) = pivot else { break };
        a.swap(rank, pi);
        col_order.swap(rank, pj);
        let pc = col_order[rank];
        let p = a[rank][pc].clone();
        for i in rank + 1..rows {
            let lead = a[i][pc].clone();
            for &c in &col_order[rank + 1..] {
                let v = (&p * &a[i][c] - &lead * &a[rank][c]) / &prev;
                a[i][c] = v;
            }
            a[i][pc] = GaussianInt::zero();
        }
        prev = p;
        rank += 1;
    }
    rank
}
