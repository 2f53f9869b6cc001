//! Vaisman reduction to a Kähler flat package and the reverse double-extension construction.

use num_traits::{One, Zero};

use super::{lck_verdict, ComplexStructure, HermitianData, HermitianError};
use crate::cert::Certificate;
use crate::exact::{add, format_vector, is_zero_vec, scale, sub, unit, zeros, Matrix, Rational, Vector};
use crate::liealg::{
    ce_differential, double_extension_labeled, is_solvable, is_unimodular, Derivation, KForm, LieAlgebra, StructureReport,
    Subspace,
};
use crate::metricgeo::{flat_decomposition, is_flat, FlatDecomposition, GeoError, Metric};

/// Kähler flat `(k, J′, ⟨·,·⟩′)` with a skew derivation `D′` commuting with `J′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerFlatPackage {
    pub k: LieAlgebra,
    pub metric: Metric,
    pub j: ComplexStructure,
    pub omega: KForm,
    pub d: Derivation,
}

impl KahlerFlatPackage {
    pub fn new(k: LieAlgebra, metric: Metric, j: Matrix, d: Matrix) -> Result<Self, HermitianError> {
        let n = k.dim();
        if n < 2 || n % 2 != 0 {
            return Err(HermitianError::Package(format!("k must have positive even dimension, got {n}")));
        }
        if metric.dim() != n || d.rows() != n || d.cols() != n {
            return Err(HermitianError::Dimension("package parts disagree".into()));
        }
        let j = ComplexStructure::new(&k, j)?;
        let h = HermitianData::new(k.clone(), metric.clone(), j.clone())?;
        let omega = h.omega().clone();
        let domega = ce_differential(&k, &omega);
        if !domega.is_zero() {
            return Err(HermitianError::Package(format!("d omega' = {}", domega.display_with(k.labels()))));
        }
        let fl = is_flat(&k, &metric)?;
        if !fl.flat {
            return Err(HermitianError::NotFlat(fl.describe(&k)));
        }
        let d = Derivation::new(&k, d).map_err(|e| HermitianError::Package(e.to_string()))?;
        if !metric.is_skew(d.matrix()) {
            return Err(HermitianError::Package("D' is not skew".into()));
        }
        if (d.matrix() * j.matrix()) != (j.matrix() * d.matrix()) {
            return Err(HermitianError::Package("D' does not commute with J'".into()));
        }
        Ok(KahlerFlatPackage { k, metric, j, omega, d })
    }

    pub fn dim(&self) -> usize {
        self.k.dim()
    }

    /// Standard flat Kähler `ℝ^{2n}`: identity metric, `J e_{2i} = e_{2i+1}`.
    pub fn standard_flat(n: usize, d: Matrix) -> Result<Self, HermitianError> {
        let k = LieAlgebra::abelian(2 * n);
        Self::new(k, Metric::identity(2 * n), standard_j(n), d)
    }
}

/// `J e_{2i} = e_{2i+1}`, `J e_{2i+1} = −e_{2i}`.
pub fn standard_j(n: usize) -> Matrix {
    let mut j = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(2 * i + 1, 2 * i)] = Rational::one();
        j[(2 * i, 2 * i + 1)] = -Rational::one();
    }
    j
}

/// Block rotation with `D e_{2i} = a_i e_{2i+1}`, `D e_{2i+1} = −a_i e_{2i}`.
pub fn rotation_blocks(a: &[Rational]) -> Matrix {
    let mut d = Matrix::zeros(2 * a.len(), 2 * a.len());
    for (i, ai) in a.iter().enumerate() {
        d[(2 * i + 1, 2 * i)] = ai.clone();
        d[(2 * i, 2 * i + 1)] = -ai.clone();
    }
    d
}

/// `k(D′, ω′)` in the basis `(A, B, k…)`, with `JA = B`, `|A| = |B| = 1`, `A, B ⊥ k`.
pub fn construct_vaisman(p: &KahlerFlatPackage) -> Result<HermitianData, HermitianError> {
    let n = p.dim();
    let mut dext = Matrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            dext[(i, j)] = p.d.matrix()[(i, j)].clone();
        }
    }
    let g = double_extension_labeled(&p.k, &p.omega, &dext, "A", "B")?;
    let m = n + 2;
    let mut jm = Matrix::zeros(m, m);
    jm[(1, 0)] = Rational::one();
    jm[(0, 1)] = -Rational::one();
    let mut gram = Matrix::identity(m);
    for i in 0..n {
        for j in 0..n {
            jm[(i + 2, j + 2)] = p.j.matrix()[(i, j)].clone();
            gram[(i + 2, j + 2)] = p.metric.gram()[(i, j)].clone();
        }
    }
    let metric = Metric::new(gram)?;
    let h = HermitianData::from_parts(g, metric, jm)?;
    let v = lck_verdict(&h)?;
    if !v.is_vaisman {
        let failed: Vec<_> = v.certificate.failures().map(|c| c.name.clone()).collect();
        return Err(HermitianError::Invariant(format!("double extension is not Vaisman: {failed:?}")));
    }
    if v.a != unit(m, 0) {
        return Err(HermitianError::Invariant(format!("Lee vector is {}, expected A", format_vector(&v.a))));
    }
    if !is_unimodular(h.algebra()) || !is_solvable(h.algebra()) {
        return Err(HermitianError::Invariant("double extension is not unimodular and solvable".into()));
    }
    Ok(h)
}

/// Output of the reduction of a unimodular solvable Vaisman algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VaismanReduction {
    pub package: KahlerFlatPackage,
    /// Unit Lee vector for the rescaled metric, in the original coordinates.
    pub a: Vector,
    pub ja: Vector,
    /// Basis of `W = span{A, JA}^⊥`, in the original coordinates.
    pub w_basis: Vec<Vector>,
    /// Factor applied to the metric so that `|A| = 1`.
    pub scale: Rational,
    pub certificate: Certificate,
}

impl VaismanReduction {
    /// Columns `(A, JA, w…)`: the canonical ordered basis.
    pub fn canonical_basis(&self) -> Matrix {
        let mut cols = vec![self.a.clone(), self.ja.clone()];
        cols.extend(self.w_basis.iter().cloned());
        Matrix::from_cols(self.a.len(), &cols)
    }

    /// Vector of `k` written in the coordinates of `g`.
    pub fn lift(&self, v: &[Rational]) -> Vector {
        let mut out = zeros(self.a.len());
        for (c, w) in v.iter().zip(&self.w_basis) {
            crate::exact::axpy(&mut out, c, w);
        }
        out
    }
}

pub fn reduce_vaisman(h: &HermitianData) -> Result<VaismanReduction, HermitianError> {
    let g = h.algebra();
    let n = g.dim();
    let v = lck_verdict(h)?;
    if !v.is_vaisman {
        return Err(HermitianError::NotVaisman);
    }
    if !is_unimodular(g) {
        return Err(HermitianError::NotUnimodular);
    }
    if !is_solvable(g) {
        return Err(HermitianError::NotSolvable);
    }
    let mut cert = Certificate::new();
    // s = |A|²; under s·G the dual of θ is A/s, of unit length
    let s = h.metric().norm2(&v.a);
    let m = h.metric().scaled(&s);
    let a = scale(&(Rational::one() / &s), &v.a);
    let ja = h.j().mul_vec(&a);
    cert.record("|A| = 1 after rescaling", m.norm2(&a).is_one(), || format!("scale {s}"));
    let jac = (0..n).all(|i| is_zero_vec(&g.bracket(&ja, &unit(n, i))));
    cert.record("JA central", jac, || format!("JA = {}", format_vector(&ja)));
    let span_aja = Subspace::span(n, &[a.clone(), ja.clone()]);
    let zc = crate::liealg::center(g);
    cert.record("z(g) in span{A, JA}", zc.is_subspace_of(&span_aja), || format!("dim z(g) = {}", zc.dim()));

    let project = |x: &[Rational]| -> Vector {
        let xa = m.inner(x, &a);
        let xj = m.inner(x, &ja);
        sub(&sub(x, &scale(&xa, &a)), &scale(&xj, &ja))
    };
    let mut w_basis: Vec<Vector> = Vec::new();
    for i in 0..n {
        if w_basis.len() == n - 2 {
            break;
        }
        let p = project(&unit(n, i));
        let mut trial = w_basis.clone();
        trial.push(p.clone());
        if Subspace::span(n, &trial).dim() == trial.len() {
            w_basis = trial;
        }
    }
    if w_basis.len() != n - 2 {
        return Err(HermitianError::Invariant("W has the wrong dimension".into()));
    }
    let wmat = Matrix::from_cols(n, &w_basis);
    let coords = |x: &Vector| -> Vector { wmat.solve(x).expect("vector lies in W") };

    // [x,y] = ω(x,y)JA + [x,y]_W on W, with ω for the rescaled metric
    let omega_s = h.omega().scale(&s);
    let mut ok_bracket = true;
    for x in &w_basis {
        for y in &w_basis {
            let b = g.bracket(x, y);
            let expect_ja = omega_s.eval(&[x.clone(), y.clone()]);
            if !m.inner(&b, &a).is_zero() || m.inner(&b, &ja) != expect_ja {
                ok_bracket = false;
            }
        }
    }
    cert.record("[x,y] = omega(x,y)JA + [x,y]_W", ok_bracket, || "bracket has a wrong A or JA component".into());
    let labels = (1..=n - 2).map(|i| format!("w{i}")).collect();
    let k = g.induced(&w_basis, labels, &|x: &Vector| project(x))?;
    let mk = m.restricted(&w_basis)?;
    let jw: Vec<Vector> = w_basis.iter().map(|w| coords(&h.j().mul_vec(w))).collect();
    let jk = Matrix::from_cols(n - 2, &jw);
    let ad_a = g.ad(&a);
    let mut ad_inside = true;
    let dcols: Vec<Vector> = w_basis
        .iter()
        .map(|w| {
            let img = ad_a.mul_vec(w);
            let p = project(&img);
            if p != img {
                ad_inside = false;
            }
            coords(&p)
        })
        .collect();
    cert.record("ad_A preserves W", ad_inside, || "ad_A leaves W".into());
    let dk = Matrix::from_cols(n - 2, &dcols);
    let package = KahlerFlatPackage::new(k, mk, jk, dk)?;

    let red = VaismanReduction { package, a, ja, w_basis, scale: s.clone(), certificate: cert };
    let back = construct_vaisman(&red.package)?;
    let p = red.canonical_basis();
    let pinv = p.inverse().ok_or_else(|| HermitianError::Invariant("canonical basis is singular".into()))?;
    let same_g = g.change_basis(&p)?.same_structure(back.algebra());
    let same_j = &(&pinv * h.j()) * &p == *back.j();
    let same_m = &(&p.transpose() * m.gram()) * &p == *back.metric().gram();
    let mut red = red;
    red.certificate.record("round trip reproduces the algebra", same_g, || "structure constants differ".into());
    red.certificate.record("round trip reproduces J", same_j, || "J differs".into());
    red.certificate.record("round trip reproduces the metric", same_m, || "metric differs".into());
    if !red.certificate.all_pass() {
        let failed: Vec<_> = red.certificate.failures().map(|c| c.name.clone()).collect();
        return Err(HermitianError::Invariant(format!("reduction checks failed: {failed:?}")));
    }
    Ok(red)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilradicalCase {
    /// `D|u ≠ 0` or `D|k′ ∉ ad(h)`: `n = ℝJA ⊕ z ⊕ k′`.
    Generic,
    /// `D|u = 0`, `D|k′ = 0`: `A` is central.
    ACentral,
    /// `D|u = 0`, `D|k′ = −ad_H|k′` with `H ≠ 0` (coordinates of `k`).
    Shifted { h: Vector, jh_in_h: bool },
}

/// Commutator ideal and nilradical of a Vaisman algebra read off its reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilradicalPrediction {
    pub case: NilradicalCase,
    pub decomposition: FlatDecomposition,
    pub derived: Subspace,
    pub nilradical: Subspace,
    /// `(p, q)` with `n ≅ ℝ^p × h_{2q+1}`.
    pub profile: (usize, usize),
}

impl NilradicalPrediction {
    pub fn compare(&self, report: &StructureReport) -> Certificate {
        let mut c = Certificate::new();
        c.record("g' matches the prediction", self.derived == report.derived, || {
            format!("predicted dim {}, computed dim {}", self.derived.dim(), report.derived.dim())
        });
        c.record("nilradical matches the prediction", self.nilradical == report.nilradical, || {
            format!("predicted dim {}, computed dim {}", self.nilradical.dim(), report.nilradical.dim())
        });
        c.record("nilradical profile matches", Some(self.profile) == report.heisenberg_profile, || {
            format!("predicted {:?}, computed {:?}", self.profile, report.heisenberg_profile)
        });
        c
    }
}

pub fn nilradical_prediction(red: &VaismanReduction) -> Result<NilradicalPrediction, HermitianError> {
    let p = &red.package;
    let k = &p.k;
    let nk = k.dim();
    let n = red.a.len();
    let mut fd = flat_decomposition(k, &p.metric).map_err(|e| match e {
        GeoError::NotFlat(w) => HermitianError::NotFlat(w),
        e => e.into(),
    })?;
    let jm = p.j.matrix();
    let u = fd.z.intersection(&fd.z.image(jm));
    fd.u = Some(u.clone());
    let s = fd.dim_z() - u.dim();
    let twice_r = u.dim() + fd.dim_kprime();
    if twice_r % 2 != 0 {
        return Err(HermitianError::Invariant("dim u + dim k' is odd".into()));
    }
    let r = twice_r / 2;
    let d = p.d.matrix();
    let im_du = u.image(d);
    let lift_space = |sp: &Subspace| -> Vec<Vector> { sp.basis().iter().map(|v| red.lift(v)).collect() };

    let mut dvecs = vec![red.ja.clone()];
    dvecs.extend(lift_space(&im_du));
    dvecs.extend(lift_space(&fd.kprime));
    let derived = Subspace::span(n, &dvecs);

    let mut base = vec![red.ja.clone()];
    base.extend(lift_space(&fd.z));
    base.extend(lift_space(&fd.kprime));

    let kp = fd.kprime.basis().to_vec();
    let hb = fd.h.basis().to_vec();
    let dk_zero = kp.iter().all(|v| is_zero_vec(&d.mul_vec(v)));
    let case = if !im_du.is_zero() {
        NilradicalCase::Generic
    } else if dk_zero {
        NilradicalCase::ACentral
    } else {
        // Σ t_b ad_{H_b} v = −D v for every v ∈ k′
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for v in &kp {
            let cols: Vec<Vector> = hb.iter().map(|hv| k.bracket(hv, v)).collect();
            let dv = d.mul_vec(v);
            for t in 0..nk {
                rows.push(cols.iter().map(|c| c[t].clone()).collect::<Vector>());
                rhs.push(-dv[t].clone());
            }
        }
        let sol = if hb.is_empty() { None } else { Matrix::from_rows(rows).ok().and_then(|mm| mm.solve(&rhs)) };
        match sol {
            None => NilradicalCase::Generic,
            Some(t) => {
                let mut hv = zeros(nk);
                for (c, b) in t.iter().zip(&hb) {
                    hv = add(&hv, &scale(c, b));
                }
                let jh_in_h = fd.h.contains(&jm.mul_vec(&hv));
                NilradicalCase::Shifted { h: hv, jh_in_h }
            }
        }
    };
    let (extra, profile) = match &case {
        NilradicalCase::Generic => (None, (s, r)),
        NilradicalCase::ACentral => (Some(red.a.clone()), (s + 1, r)),
        NilradicalCase::Shifted { h: hv, jh_in_h } => {
            let prof = if *jh_in_h {
                (s + 1, r)
            } else {
                let s1 = s.checked_sub(1).ok_or_else(|| HermitianError::Invariant("s = 0 with JH outside h".into()))?;
                (s1, r + 1)
            };
            (Some(add(&red.a, &red.lift(hv))), prof)
        }
    };
    if let Some(x) = extra {
        base.push(x);
    }
    let nilradical = Subspace::span(n, &base);
    Ok(NilradicalPrediction { case, decomposition: fd, derived, nilradical, profile })
}
