use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vaisman_core::exact::{char_poly, int, rat, unit, Matrix, Polynomial, Rational};
use vaisman_core::hermitian::*;
use vaisman_core::liealg::{analyze, KForm, LieAlgebra};
use vaisman_core::metricgeo::Metric;

/// ℝ×h_{2n+1} in the basis (x1..xn, y1..yn, z, w), `Jx = y`, `Jz = −w`, orthonormal.
fn r_times_heisenberg(n: usize) -> HermitianData {
    let d = 2 * n + 2;
    let (z, w) = (2 * n, 2 * n + 1);
    let mut labels: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    labels.extend((1..=n).map(|i| format!("y{i}")));
    labels.push("z".into());
    labels.push("w".into());
    let br: Vec<_> = (0..n).map(|i| (i, n + i, unit(d, z))).collect();
    let g = LieAlgebra::from_brackets(labels, &br).unwrap();
    let mut j = Matrix::zeros(d, d);
    for i in 0..n {
        j[(n + i, i)] = int(1);
        j[(i, n + i)] = int(-1);
    }
    j[(w, z)] = int(-1);
    j[(z, w)] = int(1);
    HermitianData::from_parts(g, Metric::identity(d), j).unwrap()
}

fn oscillator(a: &[i64]) -> HermitianData {
    let a: Vec<Rational> = a.iter().map(|&x| int(x)).collect();
    let p = KahlerFlatPackage::standard_flat(a.len(), rotation_blocks(&a)).unwrap();
    construct_vaisman(&p).unwrap()
}

/// k₂ = ℝZ ⊕ ℝH ⊕ ℝ² in the basis (H, Z, u, v): `[H,u] = a v`, `[H,v] = −a u`, `JH = Z`, `Ju = v`.
fn k2(a: i64) -> (LieAlgebra, Metric, Matrix) {
    let g = LieAlgebra::from_int_brackets(&["H", "Z", "u", "v"], &[(0, 2, &[0, 0, 0, a]), (0, 3, &[0, 0, -a, 0])]).unwrap();
    let mut j = Matrix::zeros(4, 4);
    j[(1, 0)] = int(1);
    j[(0, 1)] = int(-1);
    j[(3, 2)] = int(1);
    j[(2, 3)] = int(-1);
    (g, Metric::identity(4), j)
}

#[test]
fn lee_form_of_r_times_heisenberg_is_w_star() {
    for n in 1..=3 {
        let h = r_times_heisenberg(n);
        let d = 2 * n + 2;
        let theta = lee_form(&h).unwrap();
        assert_eq!(theta, KForm::basis_one_form(d, d - 1));
        let v = lck_verdict(&h).unwrap();
        assert!(v.is_lck && v.is_vaisman && !v.is_kahler, "{}", v.certificate);
        let failed: Vec<_> = v.certificate.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(failed, ["d_omega = 0"], "{}", v.certificate);
    }
}

#[test]
fn lee_form_needs_dimension_four() {
    let g = LieAlgebra::abelian(2);
    let mut j = Matrix::zeros(2, 2);
    j[(1, 0)] = int(1);
    j[(0, 1)] = int(-1);
    let h = HermitianData::from_parts(g, Metric::identity(2), j).unwrap();
    assert!(matches!(lee_form(&h), Err(HermitianError::DimensionTooSmall(2))));
}

#[test]
fn flat_r4_is_kahler_not_vaisman() {
    let h = HermitianData::from_parts(LieAlgebra::abelian(4), Metric::identity(4), standard_j(2)).unwrap();
    let v = lck_verdict(&h).unwrap();
    assert!(v.is_kahler && !v.is_vaisman);
    assert!(v.theta.is_zero());
    assert!(kahler_flat_check(h.algebra(), h.metric(), h.j()).unwrap());
}

#[test]
fn oscillator_lee_vector_is_a() {
    let h = oscillator(&[1]);
    assert_eq!(lee_form(&h).unwrap(), KForm::basis_one_form(4, 0));
    let h = oscillator(&[1, 2]);
    let v = lck_verdict(&h).unwrap();
    assert!(v.is_vaisman);
    assert_eq!(v.a, unit(6, 0));
}

#[test]
fn non_integrable_j_is_rejected() {
    // on ℝ×h3, J mixing z into the x,y-plane is not integrable
    let g = LieAlgebra::from_int_brackets(&["x", "y", "z", "w"], &[(0, 1, &[0, 0, 1, 0])]).unwrap();
    let mut j = Matrix::zeros(4, 4);
    j[(2, 0)] = int(1);
    j[(0, 2)] = int(-1);
    j[(3, 1)] = int(1);
    j[(1, 3)] = int(-1);
    assert!(matches!(ComplexStructure::new(&g, j.clone()), Err(HermitianError::NotIntegrable(_))));
    let cs = ComplexStructure::almost(&g, j).unwrap();
    assert!(!cs.is_integrable());
}

#[test]
fn reduce_r_times_h3() {
    let red = reduce_vaisman(&r_times_heisenberg(1)).unwrap();
    assert_eq!(red.package.k.dim(), 2);
    assert!(red.package.k.is_abelian());
    assert!(red.package.d.matrix().is_zero());
    assert!(red.certificate.all_pass());
}

#[test]
fn reduce_oscillator_recovers_rotation_blocks() {
    let red = reduce_vaisman(&oscillator(&[1, 2])).unwrap();
    assert!(red.package.k.is_abelian());
    let p = char_poly(red.package.d.matrix()).unwrap();
    let expect = Polynomial::from_i64(&[1, 0, 1]).mul(&Polynomial::from_i64(&[4, 0, 1]));
    assert_eq!(p, expect);
}

#[test]
fn reduce_rescales_non_unit_lee_vector() {
    // metric 4·I on ℝ×h3 keeps J compatible; |A| changes
    let h = r_times_heisenberg(1);
    let h = h.rescaled(&int(4)).unwrap();
    let red = reduce_vaisman(&h).unwrap();
    assert!(red.certificate.all_pass());
    assert_ne!(red.scale, int(1));
}

#[test]
fn kahler_flat_check_examples() {
    let (g, m, j) = k2(1);
    assert!(kahler_flat_check(&g, &m, &j).unwrap());
    // J sending H into k′ breaks J-invariance of z⊕h
    let mut bad = Matrix::zeros(4, 4);
    bad[(2, 0)] = int(1);
    bad[(0, 2)] = int(-1);
    bad[(3, 1)] = int(1);
    bad[(1, 3)] = int(-1);
    assert!(!kahler_flat_check(&g, &m, &bad).unwrap());
    let h3 = LieAlgebra::from_int_brackets(&["x", "y", "z", "w"], &[(0, 1, &[0, 0, 1, 0])]).unwrap();
    assert!(matches!(kahler_flat_check(&h3, &Metric::identity(4), &standard_j(2)), Err(HermitianError::NotFlat(_))));
}

#[test]
fn spectrum_examples() {
    let h = oscillator(&[1, 2]);
    let r = spectrum_all_imaginary(h.algebra(), 100, 7);
    assert!(r.pass);
    let pa = char_poly(&h.algebra().ad_basis(0)).unwrap();
    let expect = Polynomial::from_i64(&[0, 0, 1]).mul(&Polynomial::from_i64(&[1, 0, 1])).mul(&Polynomial::from_i64(&[4, 0, 1]));
    assert_eq!(pa, expect);
    // aff(ℝ) ⊕ ℝ²: [h, x] = x
    let aff = LieAlgebra::from_int_brackets(&["h", "x", "p", "q"], &[(0, 1, &[0, 1, 0, 0])]).unwrap();
    let r = spectrum_all_imaginary(&aff, 10, 7);
    assert!(!r.pass);
    let (x, p) = r.witness.unwrap();
    assert_eq!(x, unit(4, 0));
    assert_eq!(p, Polynomial::from_i64(&[0, -1, 1]).mul(&Polynomial::from_i64(&[0, 0, 1])));
    let heis = r_times_heisenberg(2);
    assert!(spectrum_all_imaginary(heis.algebra(), 20, 1).pass);
}

#[test]
fn nilradical_cases_match_structure() {
    // A central
    let red = reduce_vaisman(&r_times_heisenberg(2)).unwrap();
    let pr = nilradical_prediction(&red).unwrap();
    assert_eq!(pr.case, NilradicalCase::ACentral);
    assert_eq!(pr.profile, (1, 2));
    let rep = analyze(&r_times_heisenberg(2).algebra().clone()).unwrap();
    assert!(pr.compare(&rep).all_pass(), "{}", pr.compare(&rep));
    // generic
    let h = oscillator(&[1, 2]);
    let pr = nilradical_prediction(&reduce_vaisman(&h).unwrap()).unwrap();
    assert_eq!(pr.case, NilradicalCase::Generic);
    assert_eq!(pr.profile, (0, 2));
    assert!(pr.compare(&analyze(h.algebra()).unwrap()).all_pass());
    // k₂ with D′ = −ad_H on k′: shifted case with JH ∉ h
    let (g, m, j) = k2(1);
    let mut d = Matrix::zeros(4, 4);
    d[(3, 2)] = int(-1);
    d[(2, 3)] = int(1);
    let h = construct_vaisman(&KahlerFlatPackage::new(g, m, j, d).unwrap()).unwrap();
    let pr = nilradical_prediction(&reduce_vaisman(&h).unwrap()).unwrap();
    assert!(matches!(pr.case, NilradicalCase::Shifted { jh_in_h: false, .. }), "{:?}", pr.case);
    assert_eq!(pr.profile, (0, 2));
    assert!(pr.compare(&analyze(h.algebra()).unwrap()).all_pass());
}

#[test]
fn package_rejects_non_commuting_derivation() {
    let mut d = Matrix::zeros(4, 4);
    d[(1, 0)] = int(1);
    d[(0, 1)] = int(-1);
    d[(3, 2)] = rat(0, 1);
    // rotation mixing e1 with e2 does not commute with J
    let mut d2 = Matrix::zeros(4, 4);
    d2[(2, 0)] = int(1);
    d2[(0, 2)] = int(-1);
    assert!(KahlerFlatPackage::standard_flat(2, d).is_ok());
    assert!(KahlerFlatPackage::standard_flat(2, d2).is_err());
}

/// `ℝA ⋉_D h5` with `D B = cB`, `D|k = (c/2)I + s`, `s` skew and J-linear, in a random basis.
fn random_lck_candidate(rng: &mut ChaCha8Rng) -> Option<HermitianData> {
    use vaisman_core::liealg::semidirect_product;
    use vaisman_core::samples::{random_invertible, random_matrix, random_rational};
    let h5 = LieAlgebra::from_int_brackets(
        &["B", "e1", "f1", "e2", "f2"],
        &[(1, 2, &[1, 0, 0, 0, 0]), (3, 4, &[1, 0, 0, 0, 0])],
    )
    .unwrap();
    let j4 = standard_j(2);
    let m = random_matrix(rng, 4, 4);
    let skew = &m - &m.transpose();
    let s = (&skew - &(&(&j4 * &skew) * &j4)).scale(&rat(1, 2));
    let c = random_rational(rng);
    let mut d = Matrix::zeros(5, 5);
    d[(0, 0)] = c.clone();
    for i in 0..4 {
        for k in 0..4 {
            d[(i + 1, k + 1)] = s[(i, k)].clone();
        }
        d[(i + 1, i + 1)] += &c / int(2);
    }
    let g = semidirect_product(&h5, &d, "a").unwrap();
    let mut j = Matrix::zeros(6, 6);
    j[(1, 0)] = int(1);
    j[(0, 1)] = int(-1);
    for i in 0..4 {
        for k in 0..4 {
            j[(i + 2, k + 2)] = j4[(i, k)].clone();
        }
    }
    let p = random_invertible(rng, 6);
    let pinv = p.inverse().unwrap();
    let g = g.change_basis(&p).unwrap();
    let j = &(&pinv * &j) * &p;
    let metric = Metric::new(&p.transpose() * &p).unwrap();
    let cs = ComplexStructure::new(&g, j).ok()?;
    HermitianData::new(g, metric, cs).ok()
}

#[test]
fn closedness_for_free() {
    // whenever dω = θ∧ω has a solution on a random Hermitian structure, dθ = 0
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ee);
    let mut found = 0;
    let mut tries = 0;
    while found < 50 && tries < 500 {
        tries += 1;
        let h = if tries % 5 == 0 {
            let g = vaisman_core::samples::random_solvable_algebra(&mut rng, 6);
            let Ok(cs) = ComplexStructure::new(&g, standard_j(3)) else { continue };
            HermitianData::new(g, Metric::identity(6), cs).unwrap()
        } else {
            let Some(h) = random_lck_candidate(&mut rng) else { continue };
            h
        };
        if let Some(theta) = solve_lck_form(&h) {
            assert!(vaisman_core::liealg::ce_differential(h.algebra(), &theta).is_zero());
            found += 1;
        }
    }
    assert!(found >= 50, "only {found} LCK samples in {tries} tries");
}
