use num_traits::Zero;

use crate::exact::{is_zero_vec, kernel_basis, Matrix, Rational, Vector};

/// Linear subspace of ℚⁿ, stored as the nonzero rows of a reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: vec![] }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &(0..ambient).map(|i| crate::exact::unit(ambient, i)).collect::<Vec<_>>())
    }

    pub fn span(ambient: usize, vecs: &[Vector]) -> Self {
        let rows: Vec<Vector> = vecs.iter().filter(|v| !is_zero_vec(v)).cloned().collect();
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_rows(rows).expect("vectors of equal length");
        assert_eq!(m.cols(), ambient, "vector length differs from ambient dimension");
        let (r, piv) = m.rref();
        let basis = (0..piv.len()).map(|i| r.row(i)).collect();
        Subspace { ambient, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if is_zero_vec(v) {
            return true;
        }
        let mut all = self.basis.clone();
        all.push(v.to_vec());
        Matrix::from_rows(all).unwrap().rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::span(self.ambient, &all)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ambient);
        }
        // a·B1 = b·B2  ⇔  [B1ᵀ | −B2ᵀ] (a, b) = 0
        let (p, q) = (self.dim(), other.dim());
        let m = Matrix::from_fn(self.ambient, p + q, |i, j| {
            if j < p {
                self.basis[j][i].clone()
            } else {
                -other.basis[j - p][i].clone()
            }
        });
        let vecs: Vec<Vector> = kernel_basis(&m)
            .into_iter()
            .map(|k| {
                let mut v = vec![Rational::zero(); self.ambient];
                for (j, c) in k.iter().take(p).enumerate() {
                    crate::exact::axpy(&mut v, c, &self.basis[j]);
                }
                v
            })
            .collect();
        Self::span(self.ambient, &vecs)
    }

    /// `{x : b(v, x) = 0 for all v}` where `b(v, x) = vᵀ G x`.
    pub fn orthogonal_complement(&self, gram: &Matrix) -> Subspace {
        if self.is_zero() {
            return Self::full(self.ambient);
        }
        let rows: Vec<Vector> = self.basis.iter().map(|v| gram.vec_mul(v)).collect();
        Self::span(self.ambient, &kernel_basis(&Matrix::from_rows(rows).unwrap()))
    }

    pub fn image(&self, m: &Matrix) -> Subspace {
        Self::span(m.rows(), &self.basis.iter().map(|v| m.mul_vec(v)).collect::<Vec<_>>())
    }

    pub fn is_invariant_under(&self, m: &Matrix) -> bool {
        self.basis.iter().all(|v| self.contains(&m.mul_vec(v)))
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_cols(self.ambient, &self.basis)
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        if self.is_zero() {
            return is_zero_vec(v).then(Vec::new);
        }
        self.basis_matrix().solve(v)
    }
}
