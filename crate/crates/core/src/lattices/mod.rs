//! Oscillator algebras, lattice presentations of the oscillator and tower families, and
//! their first homology by Smith normal form.

mod tables;

pub use tables::{dim6_table_rows, render_dim6_tables, Dim6Row, TableKind};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::exact::{format_rational, smith_normal_form, IntMatrix, Rational};
use crate::hermitian::{construct_vaisman, rotation_blocks, HermitianData, HermitianError, KahlerFlatPackage};
use crate::liealg::LieAlgebra;
use crate::metricgeo::Metric;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("parameters must not all vanish")]
    AllZero,
    #[error("empty parameter list")]
    Empty,
    #[error("parameter {0} is not an integer")]
    NotInteger(String),
    #[error("expected {expected} entries in {what}, got {got}")]
    Length { what: &'static str, expected: usize, got: usize },
    #[error("k must be positive")]
    NonPositiveK,
    #[error("parameters a_i of the tower family must be nonzero")]
    ZeroAction,
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error(transparent)]
    Hermitian(#[from] HermitianError),
}

/// Integer rotation speeds `a_1 ≤ … ≤ a_n` with gcd 1, up to one overall sign.
///
/// `g_a ≅ g_b` exactly when `a = c·b` for a real `c ≠ 0`. The normal form divides by the gcd,
/// sorts, and picks the lexicographically larger of the tuples for `a` and `−a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OscillatorParams {
    a: Vec<i64>,
    original: Vec<Rational>,
}

impl OscillatorParams {
    pub fn new(a: &[i64]) -> Result<Self, LatticeError> {
        let q: Vec<Rational> = a.iter().map(|&x| Rational::from_integer(x.into())).collect();
        Self::from_rationals(&q)
    }

    /// Clears denominators first; the input is kept for reports.
    pub fn from_rationals(a: &[Rational]) -> Result<Self, LatticeError> {
        if a.is_empty() {
            return Err(LatticeError::Empty);
        }
        if a.iter().all(|x| x.is_zero()) {
            return Err(LatticeError::AllZero);
        }
        let l = a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = a.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let ints: Vec<i64> = ints
            .iter()
            .map(|x| i64::try_from(x / &g).map_err(|_| LatticeError::NotInteger(x.to_string())))
            .collect::<Result<_, _>>()?;
        let mut pos = ints.clone();
        pos.sort();
        let mut neg: Vec<i64> = ints.iter().map(|x| -x).collect();
        neg.sort();
        Ok(OscillatorParams { a: pos.max(neg), original: a.to_vec() })
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn original(&self) -> &[Rational] {
        &self.original
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }
}

impl Serialize for OscillatorParams {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("OscillatorParams", 2)?;
        st.serialize_field("a", &self.a)?;
        let orig: Vec<String> = self.original.iter().map(format_rational).collect();
        st.serialize_field("original", &orig)?;
        st.end()
    }
}

impl fmt::Display for OscillatorParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

pub fn oscillator_isomorphic(p: &OscillatorParams, q: &OscillatorParams) -> bool {
    p.a == q.a
}

/// `g_a = ℝA ⋉_D h_{2n+1}` in the basis (A, B, e1, f1, …) with its Vaisman structure.
pub fn oscillator_algebra(p: &OscillatorParams) -> Result<HermitianData, LatticeError> {
    let a: Vec<Rational> = p.a.iter().map(|&x| Rational::from_integer(x.into())).collect();
    let pkg = KahlerFlatPackage::standard_flat(a.len(), rotation_blocks(&a))?;
    Ok(relabel_blocks(construct_vaisman(&pkg)?, &["e", "f"]))
}

fn relabel_blocks(h: HermitianData, names: &[&str; 2]) -> HermitianData {
    let n = (h.dim() - 2) / 2;
    let mut labels = vec!["A".to_string(), "B".to_string()];
    for i in 1..=n {
        labels.push(format!("{}{i}", names[0]));
        labels.push(format!("{}{i}", names[1]));
    }
    let g = h.algebra().clone().with_labels(labels);
    HermitianData::new(g, h.metric().clone(), h.complex_structure().clone()).expect("relabeling keeps the structure")
}

/// Kähler flat `k = ℝH ⊕ ℝZ ⊕ ℝ^{2l} ⊕ ℝ^{2m}` in the basis (H, Z, e_i, f_i, u_j, v_j),
/// `[H, u_j] = a_j v_j`, `[H, v_j] = −a_j u_j`, `JH = Z`, `Je = f`, `Ju = v`, orthonormal.
pub fn tower_kahler_algebra(l: usize, a: &[Rational]) -> Result<(LieAlgebra, Metric, crate::exact::Matrix), LatticeError> {
    if a.iter().any(|x| x.is_zero()) {
        return Err(LatticeError::ZeroAction);
    }
    let m = a.len();
    let dim = 2 + 2 * l + 2 * m;
    let mut labels = vec!["H".to_string(), "Z".to_string()];
    for i in 1..=l {
        labels.push(format!("e{i}"));
        labels.push(format!("f{i}"));
    }
    for i in 1..=m {
        labels.push(format!("u{i}"));
        labels.push(format!("v{i}"));
    }
    let mut br = Vec::new();
    for (j, aj) in a.iter().enumerate() {
        let (u, v) = (2 + 2 * l + 2 * j, 3 + 2 * l + 2 * j);
        let mut bu = crate::exact::zeros(dim);
        bu[v] = aj.clone();
        let mut bv = crate::exact::zeros(dim);
        bv[u] = -aj.clone();
        br.push((0, u, bu));
        br.push((0, v, bv));
    }
    let k = LieAlgebra::from_brackets(labels, &br).map_err(HermitianError::from)?;
    let j = crate::hermitian::standard_j(dim / 2);
    Ok((k, Metric::identity(dim), j))
}

/// The double extension of [`tower_kahler_algebra`] by `D′` rotating the `n = l + m` planes
/// by `α` and killing `H, Z`. Basis (A, B, H, Z, e…, u…).
pub fn tower_algebra(l: usize, a: &[Rational], alpha: &[Rational]) -> Result<HermitianData, LatticeError> {
    let n = l + a.len();
    if alpha.len() != n {
        return Err(LatticeError::Length { what: "alpha", expected: n, got: alpha.len() });
    }
    let (k, m, j) = tower_kahler_algebra(l, a)?;
    let mut d = crate::exact::Matrix::zeros(k.dim(), k.dim());
    let rot = rotation_blocks(alpha);
    for r in 0..2 * n {
        for c in 0..2 * n {
            d[(r + 2, c + 2)] = rot[(r, c)].clone();
        }
    }
    let pkg = KahlerFlatPackage::new(k, m, j, d)?;
    let h = construct_vaisman(&pkg)?;
    Ok(h)
}

/// Rotation angle `m·π/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuarterTurn(pub i64);

impl QuarterTurn {
    pub const HALF_PI: QuarterTurn = QuarterTurn(1);
    pub const PI: QuarterTurn = QuarterTurn(2);
    pub const TWO_PI: QuarterTurn = QuarterTurn(4);

    /// `(cos, sin)` of `s·m·π/2`.
    pub fn cos_sin(self, s: i64) -> (i64, i64) {
        match (s * self.0).rem_euclid(4) {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        }
    }
}

/// Block rotation of the planes by `a_i·m` quarter turns, without the center coordinate.
pub fn block_rotation(a: &[i64], t: QuarterTurn) -> IntMatrix {
    let n = a.len();
    let mut r = IntMatrix::zeros(2 * n, 2 * n);
    for (i, &ai) in a.iter().enumerate() {
        let (c, s) = t.cos_sin(ai);
        r[(2 * i, 2 * i)] = c.into();
        r[(2 * i, 2 * i + 1)] = (-s).into();
        r[(2 * i + 1, 2 * i)] = s.into();
        r[(2 * i + 1, 2 * i + 1)] = c.into();
    }
    r
}

/// `φ(m·π/2) = e^{tD}` on (z, x1, y1, …): identity on the center, rotations on the planes.
pub fn rotation_matrix(p: &OscillatorParams, t: QuarterTurn) -> IntMatrix {
    embed(&block_rotation(&p.a, t), 1)
}

fn embed(m: &IntMatrix, offset: usize) -> IntMatrix {
    let n = m.rows() + offset;
    let mut r = IntMatrix::identity(n);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            r[(i + offset, j + offset)] = m[(i, j)].clone();
        }
    }
    r
}

/// `[g_a, g_b] = center^exponent`; `[g_b, g_a]` is the inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralPairing {
    pub a: usize,
    pub b: usize,
    pub center: usize,
    pub exponent: i64,
}

/// Conjugation by `actor` acts on the generators `on` by `matrix`, in additive coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionLevel {
    pub actor: usize,
    pub on: Vec<usize>,
    pub matrix: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePresentation {
    pub generators: Vec<String>,
    pub pairing: Vec<CentralPairing>,
    pub levels: Vec<ActionLevel>,
    /// Extra relations, as integer rows over the generators.
    pub torsion: Vec<Vec<i64>>,
}

impl LatticePresentation {
    pub fn new(
        generators: Vec<String>,
        pairing: Vec<CentralPairing>,
        levels: Vec<ActionLevel>,
        torsion: Vec<Vec<i64>>,
    ) -> Result<Self, LatticeError> {
        let g = generators.len();
        let bad = |s: String| Err(LatticeError::Presentation(s));
        for p in &pairing {
            if p.a == p.b || p.a >= g || p.b >= g || p.center >= g {
                return bad(format!("pairing ({}, {}) -> {} out of range or diagonal", p.a, p.b, p.center));
            }
        }
        let pm = Self::pairing_matrix_of(g, &pairing);
        for i in 0..g {
            for j in 0..g {
                if pm[i][j] != -pm[j][i] {
                    return bad("central pairing is not antisymmetric".into());
                }
            }
        }
        for l in &levels {
            if l.actor >= g || l.on.iter().any(|&i| i >= g) || l.matrix.rows() != l.on.len() || l.matrix.cols() != l.on.len() {
                return bad("action level has the wrong shape".into());
            }
            if l.on.contains(&l.actor) {
                return bad("a generator cannot act on itself".into());
            }
        }
        if torsion.iter().any(|r| r.len() != g) {
            return bad("torsion rows have the wrong length".into());
        }
        Ok(LatticePresentation { generators, pairing, levels, torsion })
    }

    fn pairing_matrix_of(g: usize, pairing: &[CentralPairing]) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; g]; g];
        for p in pairing {
            m[p.a][p.b] += p.exponent;
            m[p.b][p.a] -= p.exponent;
        }
        m
    }

    /// Rows: pairing exponents on the center generator, `(A − I)` columns of every level,
    /// and the extra torsion rows. Central corrections in conjugation relations are omitted.
    pub fn relation_matrix(&self) -> IntMatrix {
        let g = self.generators.len();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for p in &self.pairing {
            let mut r = vec![BigInt::zero(); g];
            r[p.center] = BigInt::from(p.exponent);
            rows.push(r);
        }
        for l in &self.levels {
            for (c, &gen) in l.on.iter().enumerate() {
                let mut r = vec![BigInt::zero(); g];
                for (row, &target) in l.on.iter().enumerate() {
                    r[target] += &l.matrix[(row, c)];
                }
                r[gen] -= 1;
                rows.push(r);
            }
        }
        for t in &self.torsion {
            rows.push(t.iter().map(|&x| BigInt::from(x)).collect());
        }
        IntMatrix::from_rows(rows, g)
    }
}

/// `ℤ^rank ⊕ ℤ_{d_1} ⊕ …` with `d_1 | d_2 | …`, all `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// Normalizes arbitrary cyclic orders (0 meaning ℤ, 1 dropped) to invariant factors.
    pub fn from_cyclic(rank: usize, orders: &[i64]) -> Self {
        let mut free = rank;
        let mut diag = Vec::new();
        for &o in orders {
            match o.abs() {
                0 => free += 1,
                1 => {}
                d => diag.push(d),
            }
        }
        let n = diag.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d.into();
        }
        let s = smith_normal_form(&m);
        let torsion = s.factors.into_iter().filter(|d| !d.is_one()).collect();
        AbelianGroup { rank: free, torsion }
    }
}

/// `{"rank": r, "torsion": [d1, …]}`; factors beyond `i64` are written as strings.
impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Factor {
            Small(i64),
            Big(String),
        }
        let t: Vec<Factor> = self
            .torsion
            .iter()
            .map(|d| i64::try_from(d).map(Factor::Small).unwrap_or_else(|_| Factor::Big(d.to_string())))
            .collect();
        let mut st = s.serialize_struct("AbelianGroup", 2)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("torsion", &t)?;
        st.end()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && &self.torsion[j] == d {
                j += 1;
            }
            parts.push(if j - i == 1 { format!("Z_{d}") } else { format!("Z_{d}^{}", j - i) });
            i = j;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

pub fn abelianization(lp: &LatticePresentation) -> AbelianGroup {
    let m = lp.relation_matrix();
    let g = lp.generators.len();
    if m.rows() == 0 {
        return AbelianGroup { rank: g, torsion: vec![] };
    }
    let s = smith_normal_form(&m);
    let torsion = s.factors.iter().filter(|d| !d.is_zero() && !d.abs().is_one()).map(|d| d.abs()).collect();
    AbelianGroup { rank: g - s.rank, torsion }
}

pub fn betti1(g: &AbelianGroup) -> usize {
    g.rank
}

fn heisenberg_generators(n: usize) -> Vec<String> {
    let mut gens = vec!["z".to_string()];
    for i in 1..=n {
        gens.push(format!("x{i}"));
        gens.push(format!("y{i}"));
    }
    gens
}

fn heisenberg_pairing(n: usize, offset: usize, k: i64) -> Vec<CentralPairing> {
    (0..n).map(|i| CentralPairing { a: offset + 1 + 2 * i, b: offset + 2 + 2 * i, center: offset, exponent: 2 * k }).collect()
}

/// `Γ_k = (1/2k)ℤ × ℤ^{2n}` in `H_{2n+1}`, generators (z, x1, y1, …).
pub fn lattice_presentation_heisenberg(n: usize, k: i64) -> Result<LatticePresentation, LatticeError> {
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    if k <= 0 {
        return Err(LatticeError::NonPositiveK);
    }
    LatticePresentation::new(heisenberg_generators(n), heisenberg_pairing(n, 0, k), vec![], vec![])
}

/// `Λ_{k,j} = jℤ ⋉_φ Γ_k` with `j = m·π/2`, generators (t, z, x1, y1, …).
pub fn lattice_presentation_oscillator(
    p: &OscillatorParams,
    k: i64,
    t: QuarterTurn,
) -> Result<LatticePresentation, LatticeError> {
    if k <= 0 {
        return Err(LatticeError::NonPositiveK);
    }
    let n = p.n();
    let mut gens = vec!["t".to_string()];
    gens.extend(heisenberg_generators(n));
    let level = ActionLevel { actor: 0, on: (1..=2 * n + 1).collect(), matrix: rotation_matrix(p, t) };
    LatticePresentation::new(gens, heisenberg_pairing(n, 1, k), vec![level], vec![])
}

/// `Λ_{k,j,i} = iℤ ⋉ Γ_{k,j}`, `Γ_{k,j} = jℤ ⋉ (j⁻¹ℤ × Γ_k)`.
///
/// Generators (s, t, w, z, x1, y1, …): `s` and `t` generate `iℤ` and `jℤ`, `w` is `j⁻¹Z`.
/// Conjugation by `t` shears `w ↦ w + 2k·z` and rotates the last `m` planes by `a`;
/// conjugation by `s` rotates all `l + m` planes by `α`.
pub fn lattice_presentation_tower(
    l: usize,
    a: &[i64],
    alpha: &[i64],
    k: i64,
    j: QuarterTurn,
    i: QuarterTurn,
) -> Result<LatticePresentation, LatticeError> {
    if k <= 0 {
        return Err(LatticeError::NonPositiveK);
    }
    let n = l + a.len();
    if alpha.len() != n {
        return Err(LatticeError::Length { what: "alpha", expected: n, got: alpha.len() });
    }
    let mut gens = vec!["s".to_string(), "t".to_string(), "w".to_string()];
    gens.extend(heisenberg_generators(n));
    // level 1 on (w, z, x…, y…)
    let mut speeds = vec![0i64; l];
    speeds.extend_from_slice(a);
    let mut m1 = embed(&block_rotation(&speeds, j), 2);
    m1[(1, 0)] = BigInt::from(2 * k);
    let level1 = ActionLevel { actor: 1, on: (2..2 * n + 4).collect(), matrix: m1 };
    // level 2 on (t, w, z, x…, y…)
    let m2 = embed(&block_rotation(alpha, i), 3);
    let level2 = ActionLevel { actor: 0, on: (1..2 * n + 4).collect(), matrix: m2 };
    LatticePresentation::new(gens, heisenberg_pairing(n, 3, k), vec![level1, level2], vec![])
}
