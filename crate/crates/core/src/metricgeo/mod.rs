//! Left-invariant metrics: Levi-Civita connection, curvature, codifferential, flat decomposition.

mod blocks;
mod flat;

pub use blocks::{adapted_block_basis, block_diagonalize, AdaptedBlockBasis, DEFAULT_TOLERANCE};
pub use flat::{flat_decomposition, FlatDecomposition};

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{format_vector, unit, ExactError, Matrix, Rational, Vector};
use crate::liealg::{KForm, LieAlgebra, LieError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeoError {
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is not positive definite (leading minor {0} is {1})")]
    NotPositiveDefinite(usize, String),
    #[error("metric has dimension {0}, algebra has dimension {1}")]
    DimensionMismatch(usize, usize),
    #[error("metric is not flat: {0}")]
    NotFlat(String),
    #[error("operators are not admissible: {0}")]
    Operators(String),
    #[error("numerical block diagonalization failed: {0}")]
    Numerical(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Positive-definite symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Metric {
    gram: Matrix,
    inverse: Matrix,
}

impl Metric {
    pub fn new(gram: Matrix) -> Result<Self, GeoError> {
        if !gram.is_square() {
            return Err(ExactError::NotSquare(gram.rows(), gram.cols()).into());
        }
        if !gram.is_symmetric() {
            return Err(GeoError::NotSymmetric);
        }
        for k in 1..=gram.rows() {
            let idx: Vec<usize> = (0..k).collect();
            let d = gram.select(&idx, &idx).det()?;
            if d <= Rational::zero() {
                return Err(GeoError::NotPositiveDefinite(k, crate::exact::format_rational(&d)));
            }
        }
        let inverse = gram.inverse().expect("positive definite");
        Ok(Metric { gram, inverse })
    }

    pub fn identity(n: usize) -> Self {
        Metric { gram: Matrix::identity(n), inverse: Matrix::identity(n) }
    }

    /// Diagonal metric with the given positive entries.
    pub fn diagonal(d: &[Rational]) -> Result<Self, GeoError> {
        Self::new(Matrix::diagonal(d))
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    pub fn inner(&self, x: &[Rational], y: &[Rational]) -> Rational {
        crate::exact::dot(x, &self.gram.mul_vec(y))
    }

    pub fn norm2(&self, x: &[Rational]) -> Rational {
        self.inner(x, x)
    }

    /// Vector `v` with `⟨v, ·⟩ = α`.
    pub fn sharp(&self, covector: &[Rational]) -> Vector {
        self.inverse.mul_vec(covector)
    }

    /// Covector `⟨v, ·⟩`.
    pub fn flat(&self, v: &[Rational]) -> Vector {
        self.gram.vec_mul(v)
    }

    pub fn scaled(&self, s: &Rational) -> Metric {
        Metric { gram: self.gram.scale(s), inverse: self.inverse.scale(&s.recip()) }
    }

    /// `Mᵀ G + G M = 0`.
    pub fn is_skew(&self, m: &Matrix) -> bool {
        (&(&m.transpose() * &self.gram) + &(&self.gram * m)).is_zero()
    }

    /// Gram matrix of the given vectors.
    pub fn restricted(&self, vs: &[Vector]) -> Result<Metric, GeoError> {
        Metric::new(Matrix::from_fn(vs.len(), vs.len(), |i, j| self.inner(&vs[i], &vs[j])))
    }
}

/// Levi-Civita connection; `nabla[i]` is the matrix of `∇_{e_i}` (column j is `∇_{e_i} e_j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    nabla: Vec<Matrix>,
}

impl Connection {
    pub fn dim(&self) -> usize {
        self.nabla.len()
    }

    pub fn basis_operator(&self, i: usize) -> &Matrix {
        &self.nabla[i]
    }

    /// `∇_{e_i} e_j`.
    pub fn christoffel(&self, i: usize, j: usize) -> Vector {
        self.nabla[i].col(j)
    }

    /// Matrix of `∇_x`.
    pub fn operator(&self, x: &[Rational]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = &m + &self.nabla[i].scale(c);
            }
        }
        m
    }

    pub fn covariant(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.operator(x).mul_vec(y)
    }
}

fn check_dims(g: &LieAlgebra, m: &Metric) -> Result<(), GeoError> {
    if g.dim() != m.dim() {
        return Err(GeoError::DimensionMismatch(m.dim(), g.dim()));
    }
    Ok(())
}

/// Koszul: `⟨∇_x y, z⟩ = ½(⟨[x,y],z⟩ − ⟨[y,z],x⟩ + ⟨[z,x],y⟩)`.
pub fn levi_civita(g: &LieAlgebra, m: &Metric) -> Result<Connection, GeoError> {
    check_dims(g, m)?;
    let n = g.dim();
    let half = Rational::new(1.into(), 2.into());
    let gb = |i: usize, j: usize, l: usize| m.inner(g.bracket_basis(i, j), &unit(n, l));
    let mut nabla = Vec::with_capacity(n);
    for i in 0..n {
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let k: Vector = (0..n).map(|l| &half * (gb(i, j, l) - gb(j, l, i) + gb(l, i, j))).collect();
            cols.push(m.sharp(&k));
        }
        nabla.push(Matrix::from_cols(n, &cols));
    }
    let conn = Connection { nabla };
    for i in 0..n {
        if !m.is_skew(&conn.nabla[i]) {
            return Err(GeoError::Invariant(format!("∇_{} is not metric", g.label(i))));
        }
        for j in 0..n {
            let t = crate::exact::sub(&conn.christoffel(i, j), &conn.christoffel(j, i));
            if t != *g.bracket_basis(i, j) {
                return Err(GeoError::Invariant(format!("torsion at ({}, {})", g.label(i), g.label(j))));
            }
        }
    }
    Ok(conn)
}

/// `R(e_i, e_j) = ∇_{[e_i,e_j]} − [∇_{e_i}, ∇_{e_j}]`.
pub fn curvature(g: &LieAlgebra, conn: &Connection, i: usize, j: usize) -> Matrix {
    &conn.operator(g.bracket_basis(i, j)) - &conn.nabla[i].commutator(&conn.nabla[j])
}

/// First nonzero `R(e_i, e_j) e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatnessReport {
    pub flat: bool,
    pub witness: Option<CurvatureWitness>,
}

impl FlatnessReport {
    pub fn describe(&self, g: &LieAlgebra) -> String {
        match &self.witness {
            None => "flat".into(),
            Some(w) => format!(
                "R({}, {}){} = {}",
                g.label(w.i),
                g.label(w.j),
                g.label(w.k),
                format_vector(&w.value)
            ),
        }
    }
}

pub fn is_flat(g: &LieAlgebra, m: &Metric) -> Result<FlatnessReport, GeoError> {
    let conn = levi_civita(g, m)?;
    Ok(flatness(g, &conn))
}

pub fn flatness(g: &LieAlgebra, conn: &Connection) -> FlatnessReport {
    let n = g.dim();
    for i in 0..n {
        for j in i + 1..n {
            let r = curvature(g, conn, i, j);
            if let Some(k) = (0..n).find(|&k| !crate::exact::is_zero_vec(&r.col(k))) {
                return FlatnessReport { flat: false, witness: Some(CurvatureWitness { i, j, k, value: r.col(k) }) };
            }
        }
    }
    FlatnessReport { flat: true, witness: None }
}

/// `(∇_{e_i} α)(v₁,…) = −Σ α(…, ∇_{e_i} v_p, …)`.
pub fn covariant_derivative_form(conn: &Connection, i: usize, alpha: &KForm) -> KForm {
    let n = conn.dim();
    let k = alpha.degree();
    let nab = &conn.nabla[i];
    let mut out = KForm::zero(n, k);
    for idx in KForm::zero(n, k).tuples() {
        let mut val = Rational::zero();
        for pos in 0..k {
            for mrow in 0..n {
                let c = &nab[(mrow, idx[pos])];
                if c.is_zero() {
                    continue;
                }
                let mut t = idx.clone();
                t[pos] = mrow;
                let comp = alpha.component(&t);
                if !comp.is_zero() {
                    val -= c * comp;
                }
            }
        }
        out.add_component(&idx, &val);
    }
    out
}

/// `(δα)(v…) = −Σ_{j,l} G^{jl} (∇_{e_j} α)(e_l, v…)`.
pub fn codifferential(g: &LieAlgebra, m: &Metric, alpha: &KForm) -> Result<KForm, GeoError> {
    let conn = levi_civita(g, m)?;
    Ok(codifferential_with(&conn, m, alpha))
}

pub fn codifferential_with(conn: &Connection, m: &Metric, alpha: &KForm) -> KForm {
    let n = conn.dim();
    let k = alpha.degree();
    assert!(k >= 1, "codifferential of a function");
    let derivs: Vec<KForm> = (0..n).map(|j| covariant_derivative_form(conn, j, alpha)).collect();
    let ginv = m.inverse();
    let mut out = KForm::zero(n, k - 1);
    for idx in KForm::zero(n, k - 1).tuples() {
        let mut val = Rational::zero();
        for j in 0..n {
            for l in 0..n {
                let c = &ginv[(j, l)];
                if c.is_zero() {
                    continue;
                }
                let mut t = vec![l];
                t.extend_from_slice(&idx);
                let comp = derivs[j].component(&t);
                if !comp.is_zero() {
                    val -= c * comp;
                }
            }
        }
        out.add_component(&idx, &val);
    }
    out
}

/// `∇T = 0` for an endomorphism field: `[∇_{e_i}, T] = 0` for all i.
pub fn is_parallel_endomorphism(conn: &Connection, t: &Matrix) -> bool {
    conn.nabla.iter().all(|nab| nab.commutator(t).is_zero())
}

/// `∇α = 0`.
pub fn is_parallel_form(conn: &Connection, alpha: &KForm) -> bool {
    (0..conn.dim()).all(|i| covariant_derivative_form(conn, i, alpha).is_zero())
}
