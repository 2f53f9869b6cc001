//! Complex structures, Hermitian data, LCK/Vaisman/Kähler verdicts, the Lee form.

mod spectrum;
mod theorem;

pub use spectrum::{spectrum_all_imaginary, SpectrumReport};
pub use theorem::{
    construct_vaisman, nilradical_prediction, reduce_vaisman, rotation_blocks, standard_j, KahlerFlatPackage,
    NilradicalCase, NilradicalPrediction, VaismanReduction,
};

use thiserror::Error;

use crate::cert::Certificate;
use crate::exact::{format_vector, is_zero_vec, sub, unit, ExactError, Matrix, Rational, Vector};
use crate::liealg::{ce_differential, derived_algebra, is_unimodular, wedge, KForm, LieAlgebra, LieError};
use crate::metricgeo::{self, flat_decomposition, levi_civita, GeoError, Metric};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HermitianError {
    #[error("J² ≠ −I")]
    NotAlmostComplex,
    #[error("J is not integrable: {0}")]
    NotIntegrable(String),
    #[error("J is not compatible with the metric")]
    NotCompatible,
    #[error("dimension {0} is too small; the Lee form needs dim ≥ 4")]
    DimensionTooSmall(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("structure is not Vaisman")]
    NotVaisman,
    #[error("algebra is not unimodular")]
    NotUnimodular,
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("metric is not flat: {0}")]
    NotFlat(String),
    #[error("invalid package: {0}")]
    Package(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Geo(#[from] GeoError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `N_J(x,y) = [Jx,Jy] − [x,y] − J([Jx,y] + [x,Jy])`.
pub fn nijenhuis(g: &LieAlgebra, j: &Matrix, x: &[Rational], y: &[Rational]) -> Vector {
    let (jx, jy) = (j.mul_vec(x), j.mul_vec(y));
    let inner = crate::exact::add(&g.bracket(&jx, y), &g.bracket(x, &jy));
    sub(&sub(&g.bracket(&jx, &jy), &g.bracket(x, y)), &j.mul_vec(&inner))
}

/// First basis pair with `N_J ≠ 0`.
pub fn nijenhuis_witness(g: &LieAlgebra, j: &Matrix) -> Option<(usize, usize, Vector)> {
    let n = g.dim();
    for a in 0..n {
        for b in a + 1..n {
            let v = nijenhuis(g, j, &unit(n, a), &unit(n, b));
            if !is_zero_vec(&v) {
                return Some((a, b, v));
            }
        }
    }
    None
}

/// Endomorphism with `J² = −I`; integrability is recorded, not required.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexStructure {
    j: Matrix,
    integrable: bool,
}

impl ComplexStructure {
    /// Requires `J² = −I` and `N_J = 0`.
    pub fn new(g: &LieAlgebra, j: Matrix) -> Result<Self, HermitianError> {
        let cs = Self::almost(g, j)?;
        if let Some((a, b, v)) = nijenhuis_witness(g, &cs.j) {
            return Err(HermitianError::NotIntegrable(format!(
                "N_J({}, {}) = {}",
                g.label(a),
                g.label(b),
                format_vector(&v)
            )));
        }
        Ok(cs)
    }

    /// Requires only `J² = −I`.
    pub fn almost(g: &LieAlgebra, j: Matrix) -> Result<Self, HermitianError> {
        let n = g.dim();
        if j.rows() != n || j.cols() != n {
            return Err(HermitianError::Dimension(format!("J must be {n}x{n}")));
        }
        if !(&(&j * &j) + &Matrix::identity(n)).is_zero() {
            return Err(HermitianError::NotAlmostComplex);
        }
        let integrable = nijenhuis_witness(g, &j).is_none();
        Ok(ComplexStructure { j, integrable })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.j
    }

    pub fn is_integrable(&self) -> bool {
        self.integrable
    }

    pub fn apply(&self, x: &[Rational]) -> Vector {
        self.j.mul_vec(x)
    }
}

/// Algebra, metric, compatible almost complex structure, and `ω(x,y) = ⟨Jx, y⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianData {
    g: LieAlgebra,
    m: Metric,
    j: ComplexStructure,
    omega: KForm,
}

impl HermitianData {
    pub fn new(g: LieAlgebra, m: Metric, j: ComplexStructure) -> Result<Self, HermitianError> {
        if m.dim() != g.dim() || j.matrix().rows() != g.dim() {
            return Err(HermitianError::Dimension("metric, J and algebra disagree".into()));
        }
        let jm = j.matrix();
        if &(&jm.transpose() * m.gram()) * jm != *m.gram() {
            return Err(HermitianError::NotCompatible);
        }
        let omega = KForm::two_form_from_matrix(&(&jm.transpose() * m.gram()));
        Ok(HermitianData { g, m, j, omega })
    }

    /// Convenience: integrable `J` given as a matrix.
    pub fn from_parts(g: LieAlgebra, m: Metric, j: Matrix) -> Result<Self, HermitianError> {
        let cs = ComplexStructure::new(&g, j)?;
        Self::new(g, m, cs)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn metric(&self) -> &Metric {
        &self.m
    }

    pub fn complex_structure(&self) -> &ComplexStructure {
        &self.j
    }

    pub fn j(&self) -> &Matrix {
        self.j.matrix()
    }

    pub fn omega(&self) -> &KForm {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// Same structure with the metric multiplied by `s > 0`.
    pub fn rescaled(&self, s: &Rational) -> Result<Self, HermitianError> {
        Self::new(self.g.clone(), self.m.scaled(s), self.j.clone())
    }
}

/// `θ = −1/(n−1) (δω)∘J` with `2n = dim`.
pub fn lee_form(h: &HermitianData) -> Result<KForm, HermitianError> {
    let d = h.dim();
    if d < 4 {
        return Err(HermitianError::DimensionTooSmall(d));
    }
    let n = (d / 2) as i64;
    let delta = metricgeo::codifferential(&h.g, &h.m, &h.omega)?;
    let dv = delta.to_covector();
    let c = -Rational::new(1.into(), (n - 1).into());
    let theta: Vector = h.j().vec_mul(&dv).iter().map(|x| x * &c).collect();
    Ok(KForm::one_form(&theta))
}

/// The unique 1-form with `dω = θ∧ω`, if one exists (dim ≥ 4).
pub fn solve_lck_form(h: &HermitianData) -> Option<KForm> {
    let n = h.dim();
    let domega = ce_differential(&h.g, &h.omega);
    let tuples = KForm::zero(n, 3).tuples();
    let cols: Vec<KForm> = (0..n).map(|i| wedge(&KForm::basis_one_form(n, i), &h.omega)).collect();
    let m = Matrix::from_fn(tuples.len(), n, |r, i| cols[i].component(&tuples[r]));
    let rhs: Vector = tuples.iter().map(|t| domega.component(t)).collect();
    let x = m.solve(&rhs)?;
    if m.rank() < n {
        return None;
    }
    Some(KForm::one_form(&x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LckVerdict {
    pub is_hermitian: bool,
    pub is_kahler: bool,
    pub is_lck: bool,
    pub is_vaisman: bool,
    pub theta: KForm,
    /// Metric dual of θ.
    pub a: Vector,
    pub certificate: Certificate,
}

pub fn lck_verdict(h: &HermitianData) -> Result<LckVerdict, HermitianError> {
    let g = &h.g;
    let n = g.dim();
    let labels = g.labels();
    let mut cert = Certificate::new();
    let is_hermitian = h.j.is_integrable();
    cert.record("integrable", is_hermitian, || {
        let (a, b, v) = nijenhuis_witness(g, h.j()).unwrap();
        format!("N_J({}, {}) = {}", labels[a], labels[b], format_vector(&v))
    });
    cert.push("compatible", true, None);

    let theta = lee_form(h)?;
    let a = h.m.sharp(&theta.to_covector());
    let dtheta = ce_differential(g, &theta);
    let domega = ce_differential(g, &h.omega);
    let two = wedge(&theta, &h.omega);
    cert.record("d_theta = 0", dtheta.is_zero(), || dtheta.display_with(labels));
    let lck_eq = domega == two;
    cert.record("d_omega = theta ^ omega", lck_eq, || {
        format!("d_omega - theta^omega = {}", domega.sub(&two).display_with(labels))
    });
    let is_kahler = is_hermitian && domega.is_zero();
    cert.record("d_omega = 0", domega.is_zero(), || domega.display_with(labels));
    let is_lck = is_hermitian && dtheta.is_zero() && lck_eq;
    cert.record("theta != 0", !theta.is_zero(), || "theta = 0".into());

    if is_lck {
        let solved = solve_lck_form(h);
        cert.record("theta agrees with the solution of d_omega = theta^omega", solved.as_ref() == Some(&theta), || {
            format!("solved {:?}", solved.map(|t| t.display_with(labels)))
        });
    }

    let ad_a = g.ad(&a);
    let skew = h.m.is_skew(&ad_a);
    cert.record("ad_A skew", skew, || format!("ad_A = {ad_a}"));
    let is_vaisman = is_lck && !theta.is_zero() && skew;

    let unimodular = is_unimodular(g);
    if is_lck && unimodular && !theta.is_zero() {
        let ja = h.j.apply(&a);
        let derived = derived_algebra(g);
        cert.record("JA in g'", derived.contains(&ja), || format!("JA = {}", format_vector(&ja)));
        if h.m.gram().is_identity() {
            // A = 1/(2(n−1)) Σ J[Je_i, e_i] for orthonormal bases (unimodular case)
            let mut s = crate::exact::zeros(n);
            for i in 0..n {
                let ei = unit(n, i);
                s = crate::exact::add(&s, &g.bracket(&h.j.apply(&ei), &ei));
            }
            let c = Rational::new(1.into(), (2 * (n as i64 / 2 - 1)).into());
            let rhs: Vector = h.j.apply(&s).iter().map(|x| x * &c).collect();
            cert.record("A = sum J[Je_i, e_i] / (2(n-1))", rhs == a, || {
                format!("A = {}, formula gives {}", format_vector(&a), format_vector(&rhs))
            });
        }
    }
    if is_vaisman {
        let ja = h.j.apply(&a);
        let ad_ja = g.ad(&ja);
        let jm = h.j();
        let c1 = is_zero_vec(&g.bracket(&a, &ja));
        cert.record("[A, JA] = 0", c1, || format_vector(&g.bracket(&a, &ja)));
        cert.record("J ad_A = ad_A J", (jm * &ad_a) == (&ad_a * jm), || "commutator nonzero".into());
        cert.record("J ad_JA = ad_JA J", (jm * &ad_ja) == (&ad_ja * jm), || "commutator nonzero".into());
        cert.record("ad_JA skew", h.m.is_skew(&ad_ja), || format!("ad_JA = {ad_ja}"));
        if cert.failures().any(|c| {
            matches!(c.name.as_str(), "[A, JA] = 0" | "J ad_A = ad_A J" | "J ad_JA = ad_JA J" | "ad_JA skew")
        }) {
            return Err(HermitianError::Invariant("Vaisman identities fail".into()));
        }
    }
    Ok(LckVerdict { is_hermitian, is_kahler, is_lck, is_vaisman, theta, a, certificate: cert })
}

/// Kähler test on a flat metric algebra, decided by `∇J = J∇` and by J-invariance of
/// `z⊕h`, `k′` plus `[ad_H, J] = 0`; the two must agree.
pub fn kahler_flat_check(g: &LieAlgebra, m: &Metric, j: &Matrix) -> Result<bool, HermitianError> {
    let n = g.dim();
    if j.rows() != n || m.dim() != n {
        return Err(HermitianError::Dimension("J, metric and algebra disagree".into()));
    }
    if !(&(j * j) + &Matrix::identity(n)).is_zero() {
        return Err(HermitianError::NotAlmostComplex);
    }
    if &(&j.transpose() * m.gram()) * j != *m.gram() {
        return Err(HermitianError::NotCompatible);
    }
    let fd = match flat_decomposition(g, m) {
        Ok(fd) => fd,
        Err(GeoError::NotFlat(w)) => return Err(HermitianError::NotFlat(w)),
        Err(e) => return Err(e.into()),
    };
    let conn = levi_civita(g, m)?;
    let route1 = (0..n).all(|i| {
        let nab = conn.basis_operator(i);
        (nab * j) == (j * nab)
    });
    let zh = fd.z.sum(&fd.h);
    let route2 = zh.is_invariant_under(j)
        && fd.kprime.is_invariant_under(j)
        && fd.h.basis().iter().all(|hv| {
            let ad = g.ad(hv);
            (&ad * j) == (j * &ad)
        });
    if route1 != route2 {
        return Err(HermitianError::Invariant("the two Kähler criteria disagree".into()));
    }
    Ok(route1)
}
