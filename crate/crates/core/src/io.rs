//! JSON-facing file model. Rationals are strings `"p/q"` or `"p"`; bracket indices are 0-based
//! and omitted pairs are zero.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{format_rational, parse_rational, ExactError, Matrix, Rational, Vector};
use crate::liealg::{KForm, LieAlgebra, LieError};
use crate::metricgeo::{GeoError, Metric};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Geo(#[from] GeoError),
}

pub type Row = Vec<String>;
pub type BracketEntry = (usize, usize, Row);

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Row>>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<Row>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Row>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<Row>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Row>,
    /// A derivation `D′`, e.g. of a Kähler flat package.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation: Option<Vec<Row>>,
    /// A 2-form as its skew matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Row>>,
    /// Left-symmetric product `e_i · e_j`, all ordered pairs, omitted ones zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<Vec<BracketEntry>>,
}

fn row_out(v: &[Rational]) -> Row {
    v.iter().map(format_rational).collect()
}

fn matrix_out(m: &Matrix) -> Vec<Row> {
    m.to_rows().iter().map(|r| row_out(r)).collect()
}

fn row_in(r: &[String], n: usize, what: &str) -> Result<Vector, IoError> {
    if r.len() != n {
        return Err(IoError::Shape(format!("{what}: expected {n} entries, got {}", r.len())));
    }
    Ok(r.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?)
}

fn matrix_in(rows: &[Row], n: usize, what: &str) -> Result<Matrix, IoError> {
    if rows.len() != n {
        return Err(IoError::Shape(format!("{what}: expected {n} rows, got {}", rows.len())));
    }
    let rows = rows.iter().map(|r| row_in(r, n, what)).collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows)?)
}

impl AlgebraFile {
    /// Brackets with `i < j`, nonzero only.
    pub fn from_algebra(g: &LieAlgebra) -> Self {
        let brackets = g.nonzero_brackets().into_iter().filter(|(i, j, _)| i < j).map(|(i, j, v)| (i, j, row_out(&v))).collect();
        AlgebraFile { dim: g.dim(), basis: g.labels().to_vec(), brackets, ..Default::default() }
    }

    pub fn with_metric(mut self, m: &Metric) -> Self {
        self.metric = Some(matrix_out(m.gram()));
        self
    }

    pub fn with_j(mut self, j: &Matrix) -> Self {
        self.j = Some(matrix_out(j));
        self
    }

    pub fn with_contact(mut self, phi: &Matrix, xi: &[Rational], eta: &[Rational]) -> Self {
        self.phi = Some(matrix_out(phi));
        self.xi = Some(row_out(xi));
        self.eta = Some(row_out(eta));
        self
    }

    pub fn with_derivation(mut self, d: &Matrix) -> Self {
        self.derivation = Some(matrix_out(d));
        self
    }

    pub fn with_beta(mut self, beta: &KForm) -> Self {
        self.beta = Some(matrix_out(&beta.to_matrix()));
        self
    }

    pub fn with_product(mut self, table: &[Vector]) -> Self {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = &table[i * n + j];
                if !crate::exact::is_zero_vec(v) {
                    out.push((i, j, row_out(v)));
                }
            }
        }
        self.product = Some(out);
        self
    }

    /// Shape-checked algebra; antisymmetry and Jacobi are not checked.
    pub fn raw_algebra(&self) -> Result<LieAlgebra, IoError> {
        if self.basis.len() != self.dim {
            return Err(IoError::Shape(format!("dim is {} but {} basis labels given", self.dim, self.basis.len())));
        }
        let mut br = Vec::new();
        for (i, j, v) in &self.brackets {
            br.push((*i, *j, row_in(v, self.dim, "bracket")?));
        }
        Ok(LieAlgebra::from_brackets(self.basis.clone(), &br)?)
    }

    /// Shape-checked and axiom-checked algebra.
    pub fn algebra(&self) -> Result<LieAlgebra, IoError> {
        let g = self.raw_algebra()?;
        crate::liealg::validate(&g).map_err(LieError::Violation)?;
        Ok(g)
    }

    /// The Gram matrix, identity when absent.
    pub fn metric(&self) -> Result<Metric, IoError> {
        match &self.metric {
            None => Ok(Metric::identity(self.dim)),
            Some(rows) => Ok(Metric::new(matrix_in(rows, self.dim, "metric")?)?),
        }
    }

    pub fn j(&self) -> Result<Option<Matrix>, IoError> {
        self.j.as_ref().map(|r| matrix_in(r, self.dim, "J")).transpose()
    }

    pub fn phi(&self) -> Result<Option<Matrix>, IoError> {
        self.phi.as_ref().map(|r| matrix_in(r, self.dim, "phi")).transpose()
    }

    pub fn xi(&self) -> Result<Option<Vector>, IoError> {
        self.xi.as_ref().map(|r| row_in(r, self.dim, "xi")).transpose()
    }

    pub fn eta(&self) -> Result<Option<Vector>, IoError> {
        self.eta.as_ref().map(|r| row_in(r, self.dim, "eta")).transpose()
    }

    pub fn derivation(&self) -> Result<Option<Matrix>, IoError> {
        self.derivation.as_ref().map(|r| matrix_in(r, self.dim, "derivation")).transpose()
    }

    pub fn beta(&self) -> Result<Option<KForm>, IoError> {
        let Some(rows) = &self.beta else { return Ok(None) };
        let m = matrix_in(rows, self.dim, "beta")?;
        if m.transpose() != -&m {
            return Err(IoError::Shape("beta: matrix is not skew".into()));
        }
        Ok(Some(KForm::two_form_from_matrix(&m)))
    }

    /// Product table indexed `i * dim + j`.
    pub fn product(&self) -> Result<Option<Vec<Vector>>, IoError> {
        let Some(entries) = &self.product else { return Ok(None) };
        let n = self.dim;
        let mut t = vec![crate::exact::zeros(n); n * n];
        for (i, j, v) in entries {
            if *i >= n || *j >= n {
                return Err(IoError::Shape(format!("product ({i},{j}) out of range")));
            }
            t[i * n + j] = row_in(v, n, "product")?;
        }
        Ok(Some(t))
    }
}
