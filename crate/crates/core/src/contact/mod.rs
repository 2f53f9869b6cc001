//! Almost contact metric structures, the Sasakian and coKähler verdicts, and left-symmetric products.

mod lsa;

pub use lsa::{lsa_completeness, lsa_from_central_extension, CompletenessReport, LsaProduct};

use num_traits::One;
use thiserror::Error;

use crate::cert::Certificate;
use crate::exact::{format_vector, is_zero_vec, scale, sub, unit, ExactError, Matrix, Rational, Vector};
use crate::hermitian::{reduce_vaisman, HermitianData, HermitianError, VaismanReduction};
use crate::liealg::{
    ce_differential, center, central_extension_labeled, is_solvable, is_unimodular, semidirect_product, KForm,
    LieAlgebra, LieError, Subspace,
};
use crate::metricgeo::{is_flat, is_parallel_endomorphism, levi_civita, GeoError, Metric};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContactError {
    #[error("almost contact structures need odd dimension, got {0}")]
    EvenDimension(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not an almost contact metric structure: {0}")]
    NotAlmostContact(String),
    #[error("structure is not Sasakian")]
    NotSasakian,
    #[error("center is not spanned by the Reeb vector (dim z = {0})")]
    CenterNotReeb(usize),
    #[error("2-form is not parallel")]
    NotParallel,
    #[error("metric is not flat: {0}")]
    NotFlat(String),
    #[error("invalid product: {0}")]
    Product(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Hermitian(#[from] HermitianError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Geo(#[from] GeoError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `(⟨·,·⟩, φ, ξ, η)` with `Φ(x,y) = ⟨φx, y⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostContactStructure {
    g: LieAlgebra,
    m: Metric,
    phi: Matrix,
    xi: Vector,
    eta: Vector,
    fundamental: KForm,
}

impl AlmostContactStructure {
    pub fn new(g: LieAlgebra, m: Metric, phi: Matrix, xi: Vector, eta: Vector) -> Result<Self, ContactError> {
        let n = g.dim();
        if n % 2 == 0 {
            return Err(ContactError::EvenDimension(n));
        }
        if m.dim() != n || phi.rows() != n || phi.cols() != n || xi.len() != n || eta.len() != n {
            return Err(ContactError::Dimension("metric, phi, xi, eta and algebra disagree".into()));
        }
        let bad = |s: &str| Err(ContactError::NotAlmostContact(s.into()));
        if !crate::exact::dot(&eta, &xi).is_one() {
            return bad("eta(xi) != 1");
        }
        let xi_eta = Matrix::from_fn(n, n, |i, j| &xi[i] * &eta[j]);
        if &phi * &phi != &xi_eta - &Matrix::identity(n) {
            return bad("phi^2 != -I + eta (x) xi");
        }
        let eta_eta = Matrix::from_fn(n, n, |i, j| &eta[i] * &eta[j]);
        if &(&phi.transpose() * m.gram()) * &phi != m.gram() - &eta_eta {
            return bad("<phi x, phi y> != <x, y> - eta(x) eta(y)");
        }
        let fundamental = KForm::two_form_from_matrix(&(&phi.transpose() * m.gram()));
        Ok(AlmostContactStructure { g, m, phi, xi, eta, fundamental })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn metric(&self) -> &Metric {
        &self.m
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn xi(&self) -> &Vector {
        &self.xi
    }

    pub fn eta(&self) -> &Vector {
        &self.eta
    }

    pub fn fundamental_form(&self) -> &KForm {
        &self.fundamental
    }

    pub fn eta_form(&self) -> KForm {
        KForm::one_form(&self.eta)
    }

    /// `N_φ(x,y) = [φx,φy] + φ²[x,y] − φ([φx,y] + [x,φy])`.
    pub fn nijenhuis(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let g = &self.g;
        let (px, py) = (self.phi.mul_vec(x), self.phi.mul_vec(y));
        let phi2 = &self.phi * &self.phi;
        let a = crate::exact::add(&g.bracket(&px, &py), &phi2.mul_vec(&g.bracket(x, y)));
        let inner = crate::exact::add(&g.bracket(&px, y), &g.bracket(x, &py));
        sub(&a, &self.phi.mul_vec(&inner))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactVerdict {
    pub is_normal: bool,
    /// Normal with `dη(x,y) = −⟨φx, y⟩`.
    pub is_sasakian_paper: bool,
    /// Normal with `dη′ = 2Φ′` for `⟨·,·⟩′ = ¼⟨·,·⟩`, `η′ = −½η`, `ξ′ = −2ξ`.
    pub is_sasakian_standard: bool,
    pub is_almost_cokahler: bool,
    pub is_cokahler: bool,
    pub certificate: Certificate,
}

fn normality_witness(a: &AlmostContactStructure, eta: &[Rational], xi: &[Rational]) -> Option<(usize, usize, Vector)> {
    let n = a.g.dim();
    let deta = ce_differential(&a.g, &KForm::one_form(eta));
    for i in 0..n {
        for j in i + 1..n {
            let nphi = a.nijenhuis(&unit(n, i), &unit(n, j));
            let v = crate::exact::add(&nphi, &scale(&deta.component(&[i, j]), xi));
            if !is_zero_vec(&v) {
                return Some((i, j, v));
            }
        }
    }
    None
}

pub fn contact_verdict(a: &AlmostContactStructure) -> ContactVerdict {
    let g = &a.g;
    let labels = g.labels();
    let mut cert = Certificate::new();
    let nw = normality_witness(a, &a.eta, &a.xi);
    let is_normal = nw.is_none();
    cert.record("N_phi = -d_eta (x) xi", is_normal, || {
        let (i, j, v) = nw.clone().unwrap();
        format!("N_phi({}, {}) + d_eta({}, {}) xi = {}", labels[i], labels[j], labels[i], labels[j], format_vector(&v))
    });
    let deta = ce_differential(g, &a.eta_form());
    let phi_form = &a.fundamental;
    let minus_phi = phi_form.scale(&-Rational::one());
    let paper_eq = deta == minus_phi;
    cert.record("d_eta = -Phi", paper_eq, || format!("d_eta + Phi = {}", deta.add(phi_form).display_with(labels)));

    // rescaled structure
    let quarter = Rational::new(1.into(), 4.into());
    let half = Rational::new((-1).into(), 2.into());
    let eta2 = scale(&half, &a.eta);
    let xi2 = scale(&Rational::from_integer((-2).into()), &a.xi);
    let standard = match AlmostContactStructure::new(g.clone(), a.m.scaled(&quarter), a.phi.clone(), xi2, eta2) {
        Ok(b) => {
            let normal2 = normality_witness(&b, &b.eta, &b.xi).is_none();
            let deta2 = ce_differential(g, &b.eta_form());
            normal2 && deta2 == b.fundamental.scale(&Rational::from_integer(2.into()))
        }
        Err(_) => false,
    };
    cert.record("rescaled: d_eta' = 2 Phi'", standard, || "rescaled structure is not Sasakian".into());
    let dphi = ce_differential(g, phi_form);
    cert.record("d_eta = 0", deta.is_zero(), || deta.display_with(labels));
    cert.record("d_Phi = 0", dphi.is_zero(), || dphi.display_with(labels));
    let is_almost_cokahler = deta.is_zero() && dphi.is_zero();
    let is_cokahler = is_almost_cokahler && is_normal;
    if is_cokahler {
        let parallel = levi_civita(g, &a.m).map(|c| is_parallel_endomorphism(&c, &a.phi)).unwrap_or(false);
        cert.record("phi parallel", parallel, || "nabla phi != 0".into());
    }
    ContactVerdict {
        is_normal,
        is_sasakian_paper: is_normal && paper_eq,
        is_sasakian_standard: standard,
        is_almost_cokahler,
        is_cokahler,
        certificate: cert,
    }
}

/// `k_ω(ξ)` of a Kähler algebra `(k, J, ⟨·,·⟩)` with `ξ` last, `φ = J ⊕ 0`, `η = ξ*`, `|ξ| = 1`.
///
/// The bracket `[x,y] = ω(x,y)ξ + [x,y]_k` gives `dη = −ω`, the Sasakian sign used throughout.
pub fn sasakian_central_extension(k: &LieAlgebra, m: &Metric, j: &Matrix) -> Result<AlmostContactStructure, ContactError> {
    let h = HermitianData::from_parts(k.clone(), m.clone(), j.clone())?;
    let n = k.dim();
    let g = central_extension_labeled(k, h.omega(), "xi")?;
    let mut gram = Matrix::identity(n + 1);
    let mut phi = Matrix::zeros(n + 1, n + 1);
    for a in 0..n {
        for b in 0..n {
            gram[(a, b)] = m.gram()[(a, b)].clone();
            phi[(a, b)] = j[(a, b)].clone();
        }
    }
    AlmostContactStructure::new(g, Metric::new(gram)?, phi, unit(n + 1, n), unit(n + 1, n))
}

/// Kähler algebra on `ker η` obtained from a Sasakian algebra with center `ℝξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SasakianReduction {
    pub k: LieAlgebra,
    pub metric: Metric,
    pub j: Matrix,
    /// Basis of `ker η` in the original coordinates.
    pub basis: Vec<Vector>,
    pub flat: bool,
}

pub fn sasakian_kernel_reduction(a: &AlmostContactStructure) -> Result<SasakianReduction, ContactError> {
    let v = contact_verdict(a);
    if !v.is_sasakian_paper {
        return Err(ContactError::NotSasakian);
    }
    let g = &a.g;
    let n = g.dim();
    let z = center(g);
    if z.dim() != 1 || !z.contains(&a.xi) {
        return Err(ContactError::CenterNotReeb(z.dim()));
    }
    let project = |x: &[Rational]| sub(x, &scale(&crate::exact::dot(&a.eta, x), &a.xi));
    let mut basis: Vec<Vector> = Vec::new();
    for i in 0..n {
        let p = project(&unit(n, i));
        let mut trial = basis.clone();
        trial.push(p);
        if Subspace::span(n, &trial).dim() == trial.len() {
            basis = trial;
        }
    }
    let labels = basis.iter().enumerate().map(|(i, _)| format!("k{}", i + 1)).collect();
    let k = g.induced(&basis, labels, &|x: &Vector| project(x))?;
    let metric = a.m.restricted(&basis)?;
    let bm = Matrix::from_cols(n, &basis);
    let cols: Vec<Vector> = basis.iter().map(|b| bm.solve(&a.phi.mul_vec(b)).expect("phi preserves ker eta")).collect();
    let j = Matrix::from_cols(n - 1, &cols);
    let h = HermitianData::from_parts(k.clone(), metric.clone(), j.clone())
        .map_err(|e| ContactError::Invariant(format!("ker eta is not Hermitian: {e}")))?;
    if !ce_differential(&k, h.omega()).is_zero() {
        return Err(ContactError::Invariant("ker eta is not Kähler".into()));
    }
    let flat = is_flat(&k, &metric)?.flat;
    if is_unimodular(g) && is_solvable(g) && !flat {
        return Err(ContactError::Invariant("unimodular solvable Sasakian algebra with non-flat quotient".into()));
    }
    Ok(SasakianReduction { k, metric, j, basis, flat })
}

/// Structure on `ker θ` in the basis `(JA, w…)` for the unit-normalized metric:
/// `ξ = JA`, `η = Jθ`, `φ(aξ + x) = Jx`.
pub fn sasakian_on_lee_kernel(red: &VaismanReduction, g: &LieAlgebra) -> Result<AlmostContactStructure, ContactError> {
    let n = red.w_basis.len();
    let mut basis = vec![red.ja.clone()];
    basis.extend(red.w_basis.iter().cloned());
    let mut labels = vec!["JA".to_string()];
    labels.extend(red.package.k.labels().iter().cloned());
    let kt = g.subalgebra(&basis, labels)?;
    let mut gram = Matrix::identity(n + 1);
    let mut phi = Matrix::zeros(n + 1, n + 1);
    let p = &red.package;
    for a in 0..n {
        for b in 0..n {
            gram[(a + 1, b + 1)] = p.metric.gram()[(a, b)].clone();
            phi[(a + 1, b + 1)] = p.j.matrix()[(a, b)].clone();
        }
    }
    AlmostContactStructure::new(kt, Metric::new(gram)?, phi, unit(n + 1, 0), unit(n + 1, 0))
}

/// `d = ℝA ⋉_{D′} k` with its coKähler structure and fundamental form `Φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoKahlerReduction {
    pub structure: AlmostContactStructure,
    pub verdict: ContactVerdict,
    pub reduction: VaismanReduction,
}

impl CoKahlerReduction {
    pub fn d(&self) -> &LieAlgebra {
        self.structure.algebra()
    }

    pub fn phi_form(&self) -> &KForm {
        self.structure.fundamental_form()
    }
}

pub fn vaisman_to_cokahler(h: &HermitianData) -> Result<CoKahlerReduction, ContactError> {
    let red = reduce_vaisman(h)?;
    let p = &red.package;
    let n = p.k.dim();
    let d = semidirect_product(&p.k, p.d.matrix(), "A")?;
    let mut gram = Matrix::identity(n + 1);
    let mut phi = Matrix::zeros(n + 1, n + 1);
    for a in 0..n {
        for b in 0..n {
            gram[(a + 1, b + 1)] = p.metric.gram()[(a, b)].clone();
            phi[(a + 1, b + 1)] = p.j.matrix()[(a, b)].clone();
        }
    }
    let metric = Metric::new(gram)?;
    let s = AlmostContactStructure::new(d.clone(), metric.clone(), phi, unit(n + 1, 0), unit(n + 1, 0))?;
    let verdict = contact_verdict(&s);
    if !verdict.is_cokahler {
        return Err(ContactError::Invariant(format!("d is not coKähler:\n{}", verdict.certificate)));
    }
    let fl = is_flat(&d, &metric)?;
    if !fl.flat {
        return Err(ContactError::NotFlat(fl.describe(&d)));
    }
    // d_Φ(JA) has basis (A, k…, JA); reorder to (A, JA, k…)
    let ext = central_extension_labeled(&d, s.fundamental_form(), "B")?;
    let mut perm = vec![0, n + 1];
    perm.extend(1..=n);
    let ext = ext.permute(&perm)?;
    let canonical = h.algebra().change_basis(&red.canonical_basis())?;
    if !ext.same_structure(&canonical) {
        return Err(ContactError::Invariant("central extension by Phi does not reproduce g".into()));
    }
    Ok(CoKahlerReduction { structure: s, verdict, reduction: red })
}

