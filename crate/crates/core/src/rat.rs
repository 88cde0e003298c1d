//! Exact rational scalars and dense rational matrices.

use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::str::FromStr;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical string form `numerator/denominator`, gcd 1, denominator > 0.
pub fn rat_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"a/b"` or a plain integer `"a"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::BadRational(s.to_string());
    match s.split_once('/') {
        Some((num, den)) => {
            let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Dense matrix of exact rationals, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub nrows: usize,
    pub ncols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        QMatrix { nrows, ncols, data: vec![Rat::zero(); nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidIndexTuple("ragged matrix rows".into()));
        }
        Ok(QMatrix { nrows, ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
            .expect("rectangular integer matrix")
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.ncols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.ncols + j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rat]> {
        self.data.chunks(self.ncols)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zero(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.ncols, other.nrows, "inner dimensions must agree");
        let mut out = QMatrix::zero(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    *out.at_mut(i, j) = v;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    /// Gauss-Jordan reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.ncols {
            if row == m.nrows {
                break;
            }
            let Some(pr) = (row..m.nrows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            for j in 0..m.ncols {
                let tmp = m.at(pr, j).clone();
                *m.at_mut(pr, j) = m.at(row, j).clone();
                *m.at_mut(row, j) = tmp;
            }
            let inv = m.at(row, col).clone();
            for j in col..m.ncols {
                let v = m.at(row, j) / &inv;
                *m.at_mut(row, j) = v;
            }
            for r in 0..m.nrows {
                if r != row && !m.at(r, col).is_zero() {
                    let f = m.at(r, col).clone();
                    for j in col..m.ncols {
                        let v = m.at(r, j) - &f * m.at(row, j);
                        *m.at_mut(r, j) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one row per free column, in ascending free
    /// column order. Each row carries a unit entry at its free column, so on
    /// a chart `(I | A)` the result is exactly `(-A^T | I)`.
    pub fn kernel_basis(&self) -> QMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        let mut out = QMatrix::zero(free.len(), self.ncols);
        for (k, &f) in free.iter().enumerate() {
            *out.at_mut(k, f) = Rat::one();
            for (i, &c) in pivots.iter().enumerate() {
                *out.at_mut(k, c) = -r.at(i, f).clone();
            }
        }
        out
    }

    /// Exact determinant of a square matrix by Gaussian elimination.
    pub fn det(&self) -> Result<Rat> {
        if self.nrows != self.ncols {
            return Err(Error::NonSquare { rows: self.nrows, cols: self.ncols });
        }
        let n = self.nrows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return Ok(Rat::zero());
            };
            if pr != col {
                for j in 0..n {
                    let tmp = m.at(pr, j).clone();
                    *m.at_mut(pr, j) = m.at(col, j).clone();
                    *m.at_mut(col, j) = tmp;
                }
                det = -det;
            }
            let piv = m.at(col, col).clone();
            det *= &piv;
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col) / &piv;
                for j in col..n {
                    let v = m.at(r, j) - &f * m.at(col, j);
                    *m.at_mut(r, j) = v;
                }
            }
        }
        Ok(det)
    }

    /// All maximal minors at once: for every ascending `k`-subset `S` of the
    /// columns (k = nrows), the determinant of the square submatrix on `S`.
    /// Laplace recursion over column subsets, shared across minors.
    pub fn maximal_minors(&self) -> Vec<(Vec<usize>, Rat)> {
        let k = self.nrows;
        let n = self.ncols;
        assert!(n <= 63, "column count too large for subset enumeration");
        use std::collections::HashMap;
        // layer[i]: minors of the first i rows on each i-subset of columns
        let mut layer: HashMap<u64, Rat> = HashMap::new();
        layer.insert(0, Rat::one());
        for i in 0..k {
            let mut next: HashMap<u64, Rat> = HashMap::new();
            for (mask, sub) in &layer {
                if sub.is_zero() {
                    continue;
                }
                let mut sign_flips = 0usize;
                for j in 0..n {
                    let bit = 1u64 << j;
                    if mask & bit != 0 {
                        sign_flips += 1;
                        continue;
                    }
                    let a = self.at(i, j);
                    if a.is_zero() {
                        continue;
                    }
                    // inserting column j after `sign_flips` chosen smaller columns
                    let term = if (i - sign_flips) % 2 == 0 { a * sub } else { -(a * sub) };
                    let e = next.entry(mask | bit).or_insert_with(Rat::zero);
                    *e += term;
                }
            }
            layer = next;
        }
        let mut out: Vec<(Vec<usize>, Rat)> = Vec::new();
        // emit every k-subset, including those whose minor vanished
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let mask = subset.iter().fold(0u64, |m, &j| m | 1 << j);
            let val = layer.get(&mask).cloned().unwrap_or_else(Rat::zero);
            out.push((subset.clone(), val));
            // next combination
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if subset[i] != i + n - k {
                    subset[i] += 1;
                    for j in i + 1..k {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_round_trip() {
        assert_eq!(rat_str(&rat_frac(4, -6)), "-2/3");
        assert_eq!(rat_str(&rat(5)), "5/1");
        assert_eq!(parse_rat("-2/3").unwrap(), rat_frac(-2, 3));
        assert_eq!(parse_rat(" 7 ").unwrap(), rat(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn kernel_of_chart_matrix_is_minus_a_transpose() {
        let m = QMatrix::from_i64(&[vec![1, 0, 2, 3], vec![0, 1, 4, 5]]);
        let k = m.kernel_basis();
        let expected = QMatrix::from_i64(&[vec![-2, -4, 1, 0], vec![-3, -5, 0, 1]]);
        assert_eq!(k, expected);
        assert!(m.mul(&k.transpose()).is_zero());
    }

    #[test]
    fn determinant_and_minors_agree() {
        let m = QMatrix::from_i64(&[vec![1, 0, 2, 3], vec![0, 1, 4, 5]]);
        for (cols, minor) in m.maximal_minors() {
            let sq = QMatrix::from_rows(
                (0..2).map(|i| cols.iter().map(|&c| m.at(i, c).clone()).collect()).collect(),
            )
            .unwrap();
            assert_eq!(sq.det().unwrap(), minor, "columns {:?}", cols);
        }
    }

    #[test]
    fn determinant_of_singular_matrix_vanishes() {
        let m = QMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.det().unwrap(), rat(0));
        assert_eq!(m.rank(), 1);
    }
}
