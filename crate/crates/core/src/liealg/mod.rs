//! Lie algebras by structure constants, subspaces, exterior forms, extensions, structure analysis.

mod derivation;
mod extension;
mod forms;
mod structure;
mod subspace;

pub use derivation::{derivation_space, is_derivation, Derivation};
pub use extension::{
    central_extension, central_extension_labeled, double_extension, double_extension_labeled, semidirect_product,
};
pub use forms::{ce_differential, closed_forms, wedge, KForm};
pub use structure::{
    analyze, bracket_spaces, center, derived_algebra, heisenberg_profile, is_nilpotent_operator, is_solvable,
    is_unimodular, nilradical, StructureReport,
};
pub use subspace::Subspace;

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{format_vector, is_zero_vec, zeros, ExactError, Matrix, Rational, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("structure constants have the wrong shape: {0}")]
    Shape(String),
    #[error("{0}")]
    Violation(Violation),
    #[error("2-form is not closed")]
    NotClosed,
    #[error("matrix is not a derivation: {0}")]
    NotDerivation(String),
    #[error("change of basis is singular")]
    SingularBasis,
    #[error("subspace is not closed under the bracket")]
    NotSubalgebra,
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A failed axiom, naming the offending basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Antisymmetry { i: usize, j: usize, labels: (String, String) },
    Jacobi { i: usize, j: usize, k: usize, labels: (String, String, String), residual: Vector },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Antisymmetry { labels, .. } => {
                write!(f, "[{0},{1}] + [{1},{0}] != 0", labels.0, labels.1)
            }
            Violation::Jacobi { labels, residual, .. } => write!(
                f,
                "Jacobi fails at ({}, {}, {}): residual {}",
                labels.0,
                labels.1,
                labels.2,
                format_vector(residual)
            ),
        }
    }
}

/// Real Lie algebra with `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    /// `brackets[i * dim + j]` holds the coordinates of `[e_i, e_j]`.
    brackets: Vec<Vector>,
}

impl LieAlgebra {
    /// Shape-checked constructor; axioms are checked by [`validate`].
    pub fn new(labels: Vec<String>, brackets: Vec<Vector>) -> Result<Self, LieError> {
        let dim = labels.len();
        if brackets.len() != dim * dim || brackets.iter().any(|v| v.len() != dim) {
            return Err(LieError::Shape(format!("expected {dim}x{dim} brackets of length {dim}")));
        }
        Ok(LieAlgebra { dim, labels, brackets })
    }

    pub fn abelian(dim: usize) -> Self {
        Self::abelian_labeled(default_labels(dim))
    }

    pub fn abelian_labeled(labels: Vec<String>) -> Self {
        let dim = labels.len();
        LieAlgebra { dim, labels, brackets: vec![zeros(dim); dim * dim] }
    }

    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = −v` for each listed pair; the rest is zero.
    pub fn from_brackets(labels: Vec<String>, brackets: &[(usize, usize, Vector)]) -> Result<Self, LieError> {
        let mut g = Self::abelian_labeled(labels);
        let n = g.dim;
        let mut seen = std::collections::BTreeMap::new();
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n || v.len() != n {
                return Err(LieError::Shape(format!("bracket ({i},{j}) out of range")));
            }
            if i == j {
                if !is_zero_vec(v) {
                    return Err(LieError::Violation(Violation::Antisymmetry {
                        i,
                        j,
                        labels: (g.labels[i].clone(), g.labels[j].clone()),
                    }));
                }
                continue;
            }
            let (key, val) = if i < j { ((i, j), v.clone()) } else { ((j, i), crate::exact::neg(v)) };
            if let Some(prev) = seen.insert(key, val.clone()) {
                if prev != val {
                    return Err(LieError::Shape(format!("conflicting brackets for ({i},{j})")));
                }
            }
        }
        for ((i, j), v) in seen {
            g.brackets[j * n + i] = crate::exact::neg(&v);
            g.brackets[i * n + j] = v;
        }
        Ok(g)
    }

    /// Same as [`from_brackets`](Self::from_brackets) with integer coefficients.
    pub fn from_int_brackets(labels: &[&str], brackets: &[(usize, usize, &[i64])]) -> Result<Self, LieError> {
        let b: Vec<(usize, usize, Vector)> = brackets
            .iter()
            .map(|(i, j, v)| (*i, *j, v.iter().map(|&x| crate::exact::int(x)).collect()))
            .collect();
        Self::from_brackets(labels.iter().map(|s| s.to_string()).collect(), &b)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.brackets[i * self.dim + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.brackets[i * self.dim + j][k]
    }

    /// Same structure constants, labels ignored.
    pub fn same_structure(&self, other: &LieAlgebra) -> bool {
        self.dim == other.dim && self.brackets == other.brackets
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let n = self.dim;
        let mut out = zeros(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let s = &x[i] * &y[j];
                crate::exact::axpy(&mut out, &s, &self.brackets[i * n + j]);
            }
        }
        out
    }

    /// Matrix of `ad_x`; column j is `[x, e_j]`.
    pub fn ad(&self, x: &[Rational]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    let c = &self.brackets[i * n + j][k];
                    if !c.is_zero() {
                        m[(k, j)] += &x[i] * c;
                    }
                }
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&crate::exact::unit(self.dim, i))
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(|v| is_zero_vec(v))
    }

    /// Nonzero brackets with `i < j`.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vector)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = &self.brackets[i * n + j];
                if !is_zero_vec(v) {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    /// The same algebra in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra, LieError> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(LieError::Shape("change of basis must be square".into()));
        }
        let inv = p.inverse().ok_or(LieError::SingularBasis)?;
        let cols: Vec<Vector> = (0..n).map(|j| p.col(j)).collect();
        let mut brackets = vec![zeros(n); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = inv.mul_vec(&self.bracket(&cols[i], &cols[j]));
                brackets[j * n + i] = crate::exact::neg(&v);
                brackets[i * n + j] = v;
            }
        }
        Ok(LieAlgebra { dim: n, labels: self.labels.clone(), brackets })
    }

    /// Reorders the basis: new basis vector `i` is old basis vector `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<LieAlgebra, LieError> {
        let p = Matrix::from_cols(self.dim, &perm.iter().map(|&i| crate::exact::unit(self.dim, i)).collect::<Vec<_>>());
        let labels = perm.iter().map(|&i| self.labels[i].clone()).collect();
        Ok(self.change_basis(&p)?.with_labels(labels))
    }

    /// Algebra on span(`basis`) with bracket `proj([x, y])`, expressed in `basis`.
    ///
    /// With `proj` the identity this is the subalgebra spanned by `basis`.
    pub fn induced(
        &self,
        basis: &[Vector],
        labels: Vec<String>,
        proj: &dyn Fn(&Vector) -> Vector,
    ) -> Result<LieAlgebra, LieError> {
        let m = basis.len();
        let b = Matrix::from_cols(self.dim, basis);
        if b.rank() != m {
            return Err(LieError::SingularBasis);
        }
        let mut brackets = vec![zeros(m); m * m];
        for i in 0..m {
            for j in i + 1..m {
                let v = proj(&self.bracket(&basis[i], &basis[j]));
                let c = b.solve(&v).ok_or(LieError::NotSubalgebra)?;
                brackets[j * m + i] = crate::exact::neg(&c);
                brackets[i * m + j] = c;
            }
        }
        LieAlgebra::new(labels, brackets)
    }

    pub fn subalgebra(&self, basis: &[Vector], labels: Vec<String>) -> Result<LieAlgebra, LieError> {
        self.induced(basis, labels, &|v: &Vector| v.clone())
    }

    /// `self ⊕ other` with `other`'s basis appended.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (a, b) = (self.dim, other.dim);
        let n = a + b;
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut brackets = vec![zeros(n); n * n];
        for i in 0..a {
            for j in 0..a {
                for k in 0..a {
                    brackets[i * n + j][k] = self.brackets[i * a + j][k].clone();
                }
            }
        }
        for i in 0..b {
            for j in 0..b {
                for k in 0..b {
                    brackets[(a + i) * n + a + j][a + k] = other.brackets[i * b + j][k].clone();
                }
            }
        }
        LieAlgebra { dim: n, labels, brackets }
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

/// Antisymmetry and Jacobi on all basis pairs and triples.
pub fn validate(g: &LieAlgebra) -> Result<(), Violation> {
    let n = g.dim;
    for i in 0..n {
        for j in i..n {
            let s = crate::exact::add(g.bracket_basis(i, j), g.bracket_basis(j, i));
            if !is_zero_vec(&s) {
                return Err(Violation::Antisymmetry { i, j, labels: (g.labels[i].clone(), g.labels[j].clone()) });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let e = |t: usize| crate::exact::unit(n, t);
                let mut r = g.bracket(g.bracket_basis(i, j), &e(k));
                r = crate::exact::add(&r, &g.bracket(g.bracket_basis(j, k), &e(i)));
                r = crate::exact::add(&r, &g.bracket(g.bracket_basis(k, i), &e(j)));
                if !is_zero_vec(&r) {
                    return Err(Violation::Jacobi {
                        i,
                        j,
                        k,
                        labels: (g.labels[i].clone(), g.labels[j].clone(), g.labels[k].clone()),
                        residual: r,
                    });
                }
            }
        }
    }
    Ok(())
}
