use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::rational::Rational;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == c), "ragged rows");
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| BigInt::from(x))).collect();
        IntMatrix { rows: rows.len(), cols: c, data }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rational(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| Rational::from_integer(self[(i, j)].clone()))
    }

    /// Scales each row by the lcm of its denominators.
    pub fn from_rational_cleared(m: &Matrix) -> IntMatrix {
        let mut out = IntMatrix::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            let row = m.row(i);
            let l = super::rational::lcm_of_denominators(row.iter());
            for j in 0..m.cols() {
                let v = &row[j] * Rational::from_integer(l.clone());
                out[(i, j)] = v.to_integer();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * &rhs.data[k * rhs.cols + j];
                }
            }
        }
        out
    }

    pub fn det(&self) -> BigInt {
        self.to_rational().det().expect("square").to_integer()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// d₁ | d₂ | … | d_r, all positive (ones included).
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

/// Smith normal form by elementary operations, pivoting on the entry of least absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[(i, j)].is_zero()
                    && best.map_or(true, |(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut a, t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let p = a[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&p);
                row_axpy(&mut a, i, t, &q);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&p);
                col_axpy(&mut a, j, t, &q);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // pivot must divide the whole remaining block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[(i, j)].is_multiple_of(&p));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        // fold the offending row into the pivot row and retry
                        let one = BigInt::from(-1);
                        row_axpy(&mut a, t, i, &one);
                        continue;
                    }
                }
            }
            // move the smallest entry of row/col t into the pivot slot
            let mut best = (t, t);
            for i in t..rows {
                if !a[(i, t)].is_zero() && a[(i, t)].abs() < a[best].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[(t, j)].is_zero() && a[(t, j)].abs() < a[best].abs() {
                    best = (t, j);
                }
            }
            swap_rows(&mut a, t, best.0);
            swap_cols(&mut a, t, best.1);
        }
        diag.push(a[(t, t)].abs());
        t += 1;
    }
    SmithForm { rank: diag.len(), factors: diag }
}

fn swap_rows(a: &mut IntMatrix, r: usize, s: usize) {
    if r != s {
        for j in 0..a.cols {
            a.data.swap(r * a.cols + j, s * a.cols + j);
        }
    }
}

fn swap_cols(a: &mut IntMatrix, c: usize, d: usize) {
    if c != d {
        for i in 0..a.rows {
            a.data.swap(i * a.cols + c, i * a.cols + d);
        }
    }
}

/// row[target] -= q·row[src]
fn row_axpy(a: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    for j in 0..a.cols {
        let v = &a[(src, j)] * q;
        a[(target, j)] -= v;
    }
}

/// col[target] -= q·col[src]
fn col_axpy(a: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    for i in 0..a.rows {
        let v = &a[(i, src)] * q;
        a[(i, target)] -= v;
    }
}
