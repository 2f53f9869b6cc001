//! Dimension 4 and 6 catalogue of unimodular solvable Vaisman Lie algebras and the invariants
//! that tell its members apart.
//!
//! Separation is certified by invariants only. Equal invariants never prove an isomorphism.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{
    char_poly, format_rational, kernel_basis, rat, rational_roots, rational_sqrt, symmetric_signature, Matrix,
    Rational, Vector,
};
use crate::hermitian::{construct_vaisman, rotation_blocks, HermitianData, HermitianError, KahlerFlatPackage};
use crate::lattices::{tower_algebra, LatticeError, OscillatorParams};
use crate::liealg::{analyze, LieAlgebra, LieError, StructureReport, Subspace};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("r = {0} is outside [0, 1]")]
    ParameterRange(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Hermitian(#[from] HermitianError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    /// `ℝ × h₃`
    RxH3,
    /// `ℝ ⋉ h₃`, the `c = 1` surface algebra
    RsemiH3,
    RxH5,
    /// `ℝ ⋉_{D_r} h₅`, `r ∈ [0, 1]`
    RsemiDrH5(Rational),
    RxS5,
    RsemiD0S5,
}

impl FamilyTag {
    pub fn name(&self) -> String {
        match self {
            FamilyTag::RxH3 => "R x h3".into(),
            FamilyTag::RsemiH3 => "R x| h3".into(),
            FamilyTag::RxH5 => "R x h5".into(),
            FamilyTag::RsemiDrH5(r) => format!("R x|_(D_{}) h5", format_rational(r)),
            FamilyTag::RxS5 => "R x s5".into(),
            FamilyTag::RsemiD0S5 => "R x|_(D_0) s5".into(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            FamilyTag::RxH3 | FamilyTag::RsemiH3 => 4,
            _ => 6,
        }
    }

    /// The five dimension-6 families, with `D_r` sampled on `rs`.
    pub fn dim6_catalogue(rs: &[Rational]) -> Vec<FamilyTag> {
        let mut v = vec![FamilyTag::RxH5];
        v.extend(rs.iter().cloned().map(FamilyTag::RsemiDrH5));
        v.push(FamilyTag::RxS5);
        v.push(FamilyTag::RsemiD0S5);
        v
    }

    pub fn r_grid() -> Vec<Rational> {
        vec![rat(0, 1), rat(1, 3), rat(1, 2), rat(2, 3), rat(1, 1)]
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for FamilyTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// Each family as a double extension with its Vaisman structure, basis (A, B, k…).
pub fn build_family(tag: &FamilyTag) -> Result<HermitianData, ClassifyError> {
    let flat = |blocks: &[Rational]| -> Result<HermitianData, ClassifyError> {
        let p = KahlerFlatPackage::standard_flat(blocks.len(), rotation_blocks(blocks))?;
        Ok(construct_vaisman(&p)?)
    };
    let (o, z) = (Rational::one(), Rational::zero());
    match tag {
        FamilyTag::RxH3 => flat(&[z]),
        FamilyTag::RsemiH3 => flat(&[o]),
        FamilyTag::RxH5 => flat(&[z.clone(), z]),
        FamilyTag::RsemiDrH5(r) => {
            if r.is_negative() || *r > o {
                return Err(ClassifyError::ParameterRange(format_rational(r)));
            }
            flat(&[r.clone(), o])
        }
        FamilyTag::RxS5 => Ok(tower_algebra(0, &[o], &[z])?),
        FamilyTag::RsemiD0S5 => Ok(tower_algebra(0, &[o.clone()], &[o])?),
    }
}

/// Eigenvalue pattern of `ad_X` on the nilradical, `X` outside it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpectrumSignature {
    pub zero: usize,
    /// Pairs `±iμ`, `μ ≠ 0`.
    pub imaginary_pairs: usize,
    pub other: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IsoInvariant {
    pub dim: usize,
    pub nilradical_dim: usize,
    pub profile: Option<(usize, usize)>,
    pub center_dim: usize,
    pub derived_dim: usize,
    /// Normalized speeds when `g = ℝX ⋉ h_{2n+1}` with `ad_X` semisimple with imaginary
    /// spectrum on `h/z(h)` and rational speed ratios.
    pub oscillator: Option<Vec<i64>>,
    pub spectrum: Option<SpectrumSignature>,
}

impl IsoInvariant {
    /// Names of the fields where `self` and `o` differ.
    pub fn separating_components(&self, o: &IsoInvariant) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.dim != o.dim {
            v.push("dim");
        }
        if self.nilradical_dim != o.nilradical_dim {
            v.push("nilradical_dim");
        }
        if self.profile != o.profile {
            v.push("profile");
        }
        if self.center_dim != o.center_dim {
            v.push("center_dim");
        }
        if self.derived_dim != o.derived_dim {
            v.push("derived_dim");
        }
        if self.oscillator != o.oscillator {
            v.push("oscillator");
        }
        if self.spectrum != o.spectrum {
            v.push("spectrum");
        }
        v
    }
}

pub fn iso_invariant(g: &LieAlgebra) -> Result<IsoInvariant, ClassifyError> {
    let rep = analyze(g)?;
    Ok(iso_invariant_from(g, &rep))
}

pub fn iso_invariant_from(g: &LieAlgebra, rep: &StructureReport) -> IsoInvariant {
    let n = &rep.nilradical;
    let x = complement_vector(g.dim(), n);
    let spectrum = x.as_ref().map(|x| spectrum_signature(g, n, x));
    let oscillator = match (&x, rep.heisenberg_profile) {
        (Some(x), Some((0, _))) if n.dim() + 1 == g.dim() => oscillator_tuple(g, n, x),
        _ => None,
    };
    IsoInvariant {
        dim: g.dim(),
        nilradical_dim: n.dim(),
        profile: rep.heisenberg_profile,
        center_dim: rep.center.dim(),
        derived_dim: rep.derived.dim(),
        oscillator,
        spectrum,
    }
}

fn complement_vector(dim: usize, n: &Subspace) -> Option<Vector> {
    (0..dim).map(|i| crate::exact::unit(dim, i)).find(|e| !n.contains(e))
}

/// Matrix of `ad_x` restricted to `n` in the basis of `n`.
fn restricted_ad(g: &LieAlgebra, n: &Subspace, x: &[Rational]) -> Matrix {
    let cols: Vec<Vector> = n
        .basis()
        .iter()
        .map(|b| n.coordinates(&g.bracket(x, b)).expect("nilradical is an ideal"))
        .collect();
    Matrix::from_cols(n.dim(), &cols)
}

fn spectrum_signature(g: &LieAlgebra, n: &Subspace, x: &[Rational]) -> SpectrumSignature {
    let p = char_poly(&restricted_ad(g, n, x)).expect("square");
    let (zero, rest) = p.strip_zero_roots();
    // imaginary pairs: rest(λ) = r(λ²) with r having only negative real roots
    let even = rest.coeffs().iter().skip(1).step_by(2).all(Zero::is_zero);
    let deg = rest.degree().unwrap_or(0);
    if even && deg > 0 {
        let r = crate::exact::Polynomial::new(rest.coeffs().iter().step_by(2).cloned().collect());
        if crate::exact::all_roots_real_nonpositive(&r).unwrap_or(false) {
            return SpectrumSignature { zero, imaginary_pairs: deg / 2, other: 0 };
        }
    }
    SpectrumSignature { zero, imaginary_pairs: 0, other: deg }
}

/// Coordinates of `V = n / z(n)` and the induced data `(D, ω)` for `ad_x`.
fn oscillator_tuple(g: &LieAlgebra, n: &Subspace, x: &[Rational]) -> Option<Vec<i64>> {
    let dim = g.dim();
    let nb = n.basis();
    // z(n) = [n, n], one-dimensional for a Heisenberg algebra
    let zn = crate::liealg::bracket_spaces(g, n, n);
    let z0 = zn.basis()[0].clone();
    // basis of n adapted to z0: the z0 direction is dropped, V spanned by the rest
    let mut adapted = vec![z0.clone()];
    for b in nb {
        if Subspace::span(dim, &adapted).contains(b) {
            continue;
        }
        adapted.push(b.clone());
    }
    let basis = Matrix::from_cols(dim, &adapted);
    let coords = |v: &Vector| -> Vector { basis.solve(v).expect("vector lies in n") };
    let m = nb.len() - 1;
    let vb: Vec<Vector> = adapted[1..].to_vec();
    // D on V: ad_x(v_j) modulo z0
    let d = Matrix::from_fn(m, m, |i, j| coords(&g.bracket(x, &vb[j]))[i + 1].clone());
    let omega = Matrix::from_fn(m, m, |i, j| coords(&g.bracket(&vb[i], &vb[j]))[0].clone());
    // Q(v, w) = sym ω(v, D w)
    let od = &omega * &d;
    let q = Matrix::from_fn(m, m, |i, j| (&od[(i, j)] + &od[(j, i)]) / Rational::from_integer(2.into()));

    let p = char_poly(&d).ok()?;
    if p.reflect() != p {
        return None;
    }
    let r = crate::exact::Polynomial::new(p.coeffs().iter().step_by(2).cloned().collect());
    let roots = rational_roots(&r).ok()?;
    let total: usize = roots.iter().map(|(_, mult)| mult).sum();
    if total != m / 2 {
        return None;
    }
    let d2 = &d * &d;
    let mut speeds: Vec<(Rational, i64)> = Vec::new(); // (μ, sign)
    for (mu, mult) in roots {
        if mu.is_positive() {
            return None;
        }
        let shifted = &d2 - &Matrix::identity(m).scale(&mu);
        let ker = kernel_basis(&shifted);
        if ker.len() != 2 * mult {
            return None;
        }
        if mu.is_zero() {
            if kernel_basis(&d).len() != 2 * mult {
                return None;
            }
            speeds.extend(std::iter::repeat((mu, 0)).take(mult));
            continue;
        }
        let e = Matrix::from_cols(m, &ker);
        let qe = &(&e.transpose() * &q) * &e;
        let (pos, neg, zero) = symmetric_signature(&qe).ok()?;
        if zero != 0 || pos % 2 != 0 || neg % 2 != 0 {
            return None;
        }
        speeds.extend(std::iter::repeat((mu.clone(), 1)).take(pos / 2));
        speeds.extend(std::iter::repeat((mu, -1)).take(neg / 2));
    }
    let reference = speeds.iter().filter(|(mu, _)| !mu.is_zero()).map(|(mu, _)| mu.clone()).max()?;
    let mut vals = Vec::new();
    for (mu, s) in speeds {
        if s == 0 {
            vals.push(Rational::zero());
        } else {
            let ratio = rational_sqrt(&(&mu / &reference))?;
            vals.push(if s > 0 { ratio } else { -ratio });
        }
    }
    OscillatorParams::from_rationals(&vals).ok().map(|p| p.a().to_vec())
}

/// Outcome of matching an algebra against the catalogue.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub invariant: IsoInvariant,
    /// Every catalogue entry with the same invariant; more than one means the invariant
    /// cannot tell them apart.
    pub matches: Vec<FamilyTag>,
    pub note: Option<String>,
}

impl Classification {
    pub fn label(&self) -> String {
        if self.matches.is_empty() {
            "outside catalogue".into()
        } else {
            self.matches.iter().map(|t| t.name()).collect::<Vec<_>>().join(" | ")
        }
    }
}

/// Matches `g` of dimension 4 or 6 against the catalogue by [`IsoInvariant`].
pub fn classify(g: &LieAlgebra) -> Result<Classification, ClassifyError> {
    let inv = iso_invariant(g)?;
    let mut candidates = match g.dim() {
        4 => vec![FamilyTag::RxH3, FamilyTag::RsemiH3],
        6 => vec![FamilyTag::RxH5, FamilyTag::RxS5, FamilyTag::RsemiD0S5],
        _ => vec![],
    };
    let mut note = None;
    if g.dim() == 6 {
        if let Some(t) = &inv.oscillator {
            if t.len() == 2 && t[0] >= 0 && t[0] <= t[1] {
                candidates.push(FamilyTag::RsemiDrH5(Rational::new(t[0].into(), t[1].into())));
            } else if t.len() == 2 {
                note = Some(format!(
                    "oscillator with speeds ({}, {}) of opposite signs; not of the form D_r with r in [0, 1]",
                    t[0], t[1]
                ));
            }
        }
    } else if g.dim() != 4 {
        note = Some(format!("no catalogue in dimension {}", g.dim()));
    }
    let mut matches = Vec::new();
    for tag in candidates {
        let h = build_family(&tag)?;
        if iso_invariant(h.algebra())? == inv {
            matches.push(tag);
        }
    }
    Ok(Classification { invariant: inv, matches, note })
}

/// For a pair of catalogue entries, the invariant components that differ.
#[derive(Clone, Debug, Serialize)]
pub struct SeparationRecord {
    pub left: FamilyTag,
    pub right: FamilyTag,
    pub components: Vec<&'static str>,
}

impl SeparationRecord {
    pub fn separated(&self) -> bool {
        !self.components.is_empty()
    }
}

pub fn separation_table(tags: &[FamilyTag]) -> Result<Vec<SeparationRecord>, ClassifyError> {
    let invs: Vec<IsoInvariant> =
        tags.iter().map(|t| iso_invariant(build_family(t)?.algebra())).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for i in 0..tags.len() {
        for j in i + 1..tags.len() {
            out.push(SeparationRecord {
                left: tags[i].clone(),
                right: tags[j].clone(),
                components: invs[i].separating_components(&invs[j]),
            });
        }
    }
    Ok(out)
}
