use num_traits::Zero;

use super::{LieAlgebra, LieError};
use crate::exact::{format_vector, kernel_basis, sub, Matrix, Rational};

/// Linear map `D` with `D[x,y] = [Dx,y] + [x,Dy]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    matrix: Matrix,
}

impl Derivation {
    pub fn new(g: &LieAlgebra, matrix: Matrix) -> Result<Self, LieError> {
        check_leibniz(g, &matrix)?;
        Ok(Derivation { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }
}

fn check_leibniz(g: &LieAlgebra, d: &Matrix) -> Result<(), LieError> {
    let n = g.dim();
    if d.rows() != n || d.cols() != n {
        return Err(LieError::Shape(format!("derivation must be {n}x{n}")));
    }
    let cols: Vec<_> = (0..n).map(|j| d.col(j)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.mul_vec(g.bracket_basis(i, j));
            let e = |t| crate::exact::unit(n, t);
            let rhs = crate::exact::add(&g.bracket(&cols[i], &e(j)), &g.bracket(&e(i), &cols[j]));
            let diff = sub(&lhs, &rhs);
            if !crate::exact::is_zero_vec(&diff) {
                return Err(LieError::NotDerivation(format!(
                    "Leibniz fails on ({}, {}): defect {}",
                    g.label(i),
                    g.label(j),
                    format_vector(&diff)
                )));
            }
        }
    }
    Ok(())
}

pub fn is_derivation(g: &LieAlgebra, d: &Matrix) -> bool {
    check_leibniz(g, d).is_ok()
}

/// Basis of the derivation algebra, as matrices.
pub fn derivation_space(g: &LieAlgebra) -> Vec<Matrix> {
    let n = g.dim();
    // unknown D[a][b] at position a*n + b; one equation per (i<j, output coordinate)
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for out in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                // (D[e_i,e_j])_out = Σ_m c_ij^m D[out][m]
                for (m, c) in g.bracket_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        row[out * n + m] += c;
                    }
                }
                // [De_i, e_j]_out = Σ_a D[a][i] c_aj^out
                for a in 0..n {
                    let c = g.structure_constant(a, j, out);
                    if !c.is_zero() {
                        row[a * n + i] -= c;
                    }
                    let c = g.structure_constant(i, a, out);
                    if !c.is_zero() {
                        row[a * n + j] -= c;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..n * n).map(|t| crate::exact::unit(n * n, t)).collect()
    } else {
        kernel_basis(&Matrix::from_rows(rows).unwrap())
    };
    kernel.into_iter().map(|v| Matrix::from_fn(n, n, |a, b| v[a * n + b].clone())).collect()
}
