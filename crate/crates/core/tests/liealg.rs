use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vaisman_core::exact::{int, unit, Matrix, Rational, Vector};
use vaisman_core::liealg::*;
use vaisman_core::samples::{random_solvable_algebra, random_vector};

fn h3() -> LieAlgebra {
    LieAlgebra::from_int_brackets(&["x", "y", "z"], &[(0, 1, &[0, 0, 1])]).unwrap()
}

fn aff() -> LieAlgebra {
    LieAlgebra::from_int_brackets(&["h", "e"], &[(0, 1, &[0, 1])]).unwrap()
}

fn symplectic(n: usize) -> KForm {
    let terms: Vec<(Vec<usize>, Rational)> = (0..n).map(|i| (vec![2 * i, 2 * i + 1], int(1))).collect();
    KForm::from_terms(2 * n, 2, &terms)
}

/// Rotation by `a` on the plane (e, f) of ℝ² ⊕ ℝξ, zero on ξ.
fn rotation_on_h3(a: i64) -> Matrix {
    Matrix::from_i64(&[&[0, -a, 0], &[a, 0, 0], &[0, 0, 0]])
}

// the nilpotency characterization, used as the oracle for the trace-form nilradical
fn ad_nilpotent(g: &LieAlgebra, x: &[Rational]) -> bool {
    is_nilpotent_operator(&g.ad(x))
}

fn check_nilradical_oracle(g: &LieAlgebra, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = nilradical(g).map_err(|e| e.to_string())?;
    let dim = g.dim();
    for b in n.basis() {
        if !ad_nilpotent(g, b) {
            return Err(format!("basis vector {b:?} of n has non-nilpotent ad"));
        }
    }
    for _ in 0..10 {
        let c = random_vector(rng, n.dim());
        let mut x = vec![Rational::zero(); dim];
        for (ci, b) in c.iter().zip(n.basis()) {
            vaisman_core::exact::axpy(&mut x, ci, b);
        }
        if !ad_nilpotent(g, &x) {
            return Err("combination inside n has non-nilpotent ad".into());
        }
    }
    let mut outside = 0;
    while outside < 20 && n.dim() < dim {
        let x = random_vector(rng, dim);
        if n.contains(&x) {
            continue;
        }
        outside += 1;
        if ad_nilpotent(g, &x) {
            return Err(format!("{x:?} is outside n but ad-nilpotent"));
        }
    }
    Ok(())
}

#[test]
fn validate_examples() {
    assert!(validate(&h3()).is_ok());
    assert!(validate(&LieAlgebra::abelian(4)).is_ok());
    let bad = LieAlgebra::from_int_brackets(&["x", "y", "z"], &[(0, 1, &[0, 0, 1]), (0, 2, &[1, 0, 0])]).unwrap();
    match validate(&bad) {
        Err(Violation::Jacobi { i, j, k, residual, .. }) => {
            assert_eq!((i, j, k), (0, 1, 2));
            // [[x,y],z] + [[y,z],x] + [[z,x],y] = [−x, y] = −z
            assert_eq!(residual, vec![int(0), int(0), int(-1)]);
        }
        other => panic!("expected a Jacobi violation, got {other:?}"),
    }
}

#[test]
fn antisymmetry_violation_is_named() {
    let mut br = vec![vec![Rational::zero(); 2]; 4];
    br[1] = vec![int(0), int(1)];
    let g = LieAlgebra::new(vec!["a".into(), "b".into()], br).unwrap();
    assert!(matches!(validate(&g), Err(Violation::Antisymmetry { i: 0, j: 1, .. })));
}

#[test]
fn analyze_examples() {
    let rh3 = h3().direct_sum(&LieAlgebra::abelian(1));
    let r = analyze(&rh3).unwrap();
    assert!(r.nilpotent);
    assert_eq!(r.nilradical.dim(), 4);
    assert_eq!(r.heisenberg_profile, Some((1, 1)));

    let a = analyze(&aff()).unwrap();
    assert!(a.solvable && !a.nilpotent && !a.unimodular);
    assert_eq!(a.nilradical, Subspace::span(2, &[unit(2, 1)]));

    // oscillator g_(1) as the double extension of ℝ² by the rotation
    let osc = double_extension(&LieAlgebra::abelian(2), &symplectic(1), &rotation_on_h3(1)).unwrap();
    let o = analyze(&osc).unwrap();
    assert!(!o.nilpotent && o.unimodular);
    assert_eq!(o.nilradical.dim(), 3);
    assert_eq!(o.heisenberg_profile, Some((0, 1)));
    assert_eq!(o.center.dim(), 1);
}

#[test]
fn analyze_rejects_non_solvable() {
    // so(3)
    let so3 = LieAlgebra::from_int_brackets(&["x", "y", "z"], &[(0, 1, &[0, 0, 1]), (1, 2, &[1, 0, 0]), (2, 0, &[0, 1, 0])])
        .unwrap();
    assert!(validate(&so3).is_ok());
    assert!(!is_solvable(&so3));
    assert_eq!(analyze(&so3), Err(LieError::NotSolvable));
    assert_eq!(nilradical(&so3), Err(LieError::NotSolvable));
}

#[test]
fn heisenberg_profiles_of_symplectic_extensions() {
    for n in 1..=3 {
        let h = central_extension(&LieAlgebra::abelian(2 * n), &symplectic(n)).unwrap();
        assert_eq!(analyze(&h).unwrap().heisenberg_profile, Some((0, n)), "n = {n}");
    }
}

#[test]
fn differential_examples() {
    let g = h3();
    // d z* = −x* ∧ y*
    let dz = ce_differential(&g, &KForm::basis_one_form(3, 2));
    assert_eq!(dz, KForm::from_terms(3, 2, &[(vec![0, 1], int(-1))]));
    let rh3 = g.direct_sum(&LieAlgebra::abelian(1));
    assert!(ce_differential(&rh3, &KForm::basis_one_form(4, 3)).is_zero());
    let ab = LieAlgebra::abelian(4);
    let f = KForm::from_terms(4, 2, &[(vec![0, 1], int(3)), (vec![1, 3], int(-2))]);
    assert!(ce_differential(&ab, &f).is_zero());
}

#[test]
fn wedge_examples() {
    let e1 = KForm::basis_one_form(2, 0);
    let e2 = KForm::basis_one_form(2, 1);
    let area = wedge(&e1, &e2);
    assert_eq!(area.eval(&[unit(2, 0), unit(2, 1)]), int(1));
    assert!(wedge(&e1, &e1).is_zero());
    let t = KForm::one_form(&[int(1), int(2), int(3)]);
    assert!(wedge(&t, &t).is_zero());

    // (θ∧ω)(x,y,z) = θ(x)ω(y,z) − θ(y)ω(x,z) + θ(z)ω(x,y)
    let theta = KForm::one_form(&[int(1), int(-1), int(2)]);
    let omega = KForm::from_terms(3, 2, &[(vec![0, 1], int(5)), (vec![1, 2], int(7)), (vec![0, 2], int(-3))]);
    let v = [unit(3, 0), unit(3, 1), unit(3, 2)];
    let expected = &theta.eval(&v[0..1]) * omega.eval(&v[1..3])
        - &theta.eval(&v[1..2]) * omega.eval(&[v[0].clone(), v[2].clone()])
        + &theta.eval(&v[2..3]) * omega.eval(&v[0..2]);
    assert_eq!(wedge(&theta, &omega).eval(&v), expected);
}

#[test]
fn lee_form_identity_on_r_times_h3() {
    // basis (x, y, z, w); ω = x*∧y* − z*∧w*; dω = w*∧ω
    let g = h3().direct_sum(&LieAlgebra::abelian(1));
    let omega = KForm::from_terms(4, 2, &[(vec![0, 1], int(1)), (vec![2, 3], int(-1))]);
    let w = KForm::basis_one_form(4, 3);
    let d = ce_differential(&g, &omega);
    assert_eq!(d, wedge(&w, &omega));
    assert_eq!(d.eval(&[unit(4, 0), unit(4, 1), unit(4, 3)]), int(1));
}

#[test]
fn central_extension_examples() {
    let h = central_extension(&LieAlgebra::abelian(2), &symplectic(1)).unwrap();
    assert!(validate(&h).is_ok());
    assert_eq!(h.bracket_basis(0, 1), &vec![int(0), int(0), int(1)]);
    assert_eq!(center(&h), Subspace::span(3, &[unit(3, 2)]));

    let trivial = central_extension(&h3(), &KForm::zero(3, 2)).unwrap();
    assert!(trivial.same_structure(&h3().direct_sum(&LieAlgebra::abelian(1))));

    // on ℝ×h3 (x, y, z, w): d(z*∧w*) = −x*∧y*∧w*
    let rh3 = h3().direct_sum(&LieAlgebra::abelian(1));
    let open = KForm::from_terms(4, 2, &[(vec![2, 3], int(1))]);
    assert_eq!(central_extension(&rh3, &open), Err(LieError::NotClosed));
}

#[test]
fn k2_extension_is_s5() {
    // k₂ in the basis (e1, e2, e3, e4) = (H, u, v, Z): [e1,e2] = e3, [e1,e3] = −e2; ω = e1∧e4 + e2∧e3
    let k2 = LieAlgebra::from_int_brackets(&["e1", "e2", "e3", "e4"], &[(0, 1, &[0, 0, 1, 0]), (0, 2, &[0, -1, 0, 0])])
        .unwrap();
    let omega = KForm::from_terms(4, 2, &[(vec![0, 3], int(1)), (vec![1, 2], int(1))]);
    let s5 = central_extension_labeled(&k2, &omega, "B").unwrap();
    let expected = LieAlgebra::from_int_brackets(
        &["e1", "e2", "e3", "e4", "B"],
        &[(0, 1, &[0, 0, 1, 0, 0]), (0, 2, &[0, -1, 0, 0, 0]), (0, 3, &[0, 0, 0, 0, 1]), (1, 2, &[0, 0, 0, 0, 1])],
    )
    .unwrap();
    assert!(s5.same_structure(&expected));
}

#[test]
fn double_extension_examples() {
    let r2 = LieAlgebra::abelian(2);
    let beta = symplectic(1);
    let g = double_extension(&r2, &beta, &Matrix::zeros(3, 3)).unwrap();
    let r = analyze(&g).unwrap();
    assert!(r.nilpotent);
    assert_eq!(r.heisenberg_profile, Some((1, 1)));
    assert!(center(&g).contains(&unit(4, 1)));

    let osc = double_extension(&r2, &beta, &rotation_on_h3(1)).unwrap();
    assert_eq!(osc.bracket_basis(0, 2), &vec![int(0), int(0), int(0), int(1)]);
    assert!(is_unimodular(&osc));

    // D = diag(1, −1, 0) is a derivation with trace 0
    let hyp = Matrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]);
    assert!(is_unimodular(&double_extension(&r2, &beta, &hyp).unwrap()));
    // on ℝ³ with β = e1∧e2, scaling e3 gives tr D = 1
    let beta3 = KForm::from_terms(3, 2, &[(vec![0, 1], int(1))]);
    let tr = Matrix::diagonal(&[int(0), int(0), int(1), int(0)]);
    let g3 = double_extension(&LieAlgebra::abelian(3), &beta3, &tr).unwrap();
    assert!(!is_unimodular(&g3));
    assert!(!analyze(&g3).unwrap().unimodular);
    // D must fix ξ, else ξ is not central
    let moves_xi = Matrix::from_i64(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]);
    assert!(double_extension(&r2, &beta, &moves_xi).is_err());

    // not a derivation of h3: the center must be preserved consistently
    let bad = Matrix::from_i64(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
    assert!(matches!(double_extension(&r2, &beta, &bad), Err(LieError::NotDerivation(_))));
}

#[test]
fn derivation_space_of_h3() {
    // Der(h3) has dimension 6
    let ders = derivation_space(&h3());
    assert_eq!(ders.len(), 6);
    for d in &ders {
        assert!(is_derivation(&h3(), d));
    }
    assert!(!is_derivation(&h3(), &Matrix::identity(3)));
}

#[test]
fn series_of_a_filiform_algebra() {
    // [e1,e2] = e3, [e1,e3] = e4: nilpotent of step 3, derived length 2
    let g = LieAlgebra::from_int_brackets(&["e1", "e2", "e3", "e4"], &[(0, 1, &[0, 0, 1, 0]), (0, 2, &[0, 0, 0, 1])])
        .unwrap();
    let r = analyze(&g).unwrap();
    assert!(r.nilpotent);
    let dims: Vec<usize> = r.lower_central_series.iter().map(Subspace::dim).collect();
    assert_eq!(dims, vec![4, 2, 1, 0]);
    assert_eq!(r.derived_series.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![4, 2, 0]);
    assert_eq!(r.heisenberg_profile, None);
}

#[test]
fn nilradical_oracle_on_random_algebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..20 {
        let dim = 2 + case % 5;
        let g = random_solvable_algebra(&mut rng, dim);
        assert!(validate(&g).is_ok());
        if let Err(e) = check_nilradical_oracle(&g, &mut rng) {
            panic!("case {case}: {e}");
        }
        let r = analyze(&g).unwrap();
        assert!(r.derived.is_subspace_of(&r.nilradical));
    }
}

#[test]
fn subspace_operations() {
    let a = Subspace::span(3, &[unit(3, 0), unit(3, 1)]);
    let b = Subspace::span(3, &[unit(3, 1), unit(3, 2)]);
    assert_eq!(a.intersection(&b), Subspace::span(3, &[unit(3, 1)]));
    assert_eq!(a.sum(&b), Subspace::full(3));
    assert_eq!(a.orthogonal_complement(&Matrix::identity(3)), Subspace::span(3, &[unit(3, 2)]));
    let v: Vector = vec![int(2), int(-3), int(0)];
    assert_eq!(a.coordinates(&v).map(|c| c.len()), Some(2));
    assert!(b.coordinates(&v).is_none());
}

fn random_algebra_strategy() -> impl Strategy<Value = LieAlgebra> {
    (any::<u64>(), 2usize..=6).prop_map(|(seed, dim)| random_solvable_algebra(&mut ChaCha8Rng::seed_from_u64(seed), dim))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn d_squared_is_zero(g in random_algebra_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = g.dim();
        for k in 0..=3.min(n.saturating_sub(2)) {
            let terms: Vec<(Vec<usize>, Rational)> = KForm::zero(n, k)
                .tuples()
                .into_iter()
                .map(|t| (t, vaisman_core::samples::random_rational(&mut rng)))
                .collect();
            let f = KForm::from_terms(n, k, &terms);
            prop_assert!(ce_differential(&g, &ce_differential(&g, &f)).is_zero(), "degree {}", k);
        }
    }

    #[test]
    fn differential_is_a_graded_derivation(g in random_algebra_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = g.dim();
        prop_assume!(n >= 3);
        let a = KForm::one_form(&random_vector(&mut rng, n));
        let b = KForm::one_form(&random_vector(&mut rng, n));
        let lhs = ce_differential(&g, &wedge(&a, &b));
        let rhs = wedge(&ce_differential(&g, &a), &b).sub(&wedge(&a, &ce_differential(&g, &b)));
        prop_assert_eq!(lhs, rhs);
    }

}

// derivation spaces and nilradicals of 6-dimensional algebras in scrambled bases are the slow part
proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_algebras_are_solvable_lie_algebras(g in random_algebra_strategy()) {
        prop_assert!(validate(&g).is_ok());
        prop_assert!(is_solvable(&g));
        let r = analyze(&g).unwrap();
        prop_assert!(r.derived.is_subspace_of(&r.nilradical));
        if r.nilpotent {
            prop_assert_eq!(r.nilradical.dim(), g.dim());
        }
    }

    #[test]
    fn derivations_satisfy_leibniz(g in random_algebra_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = g.dim();
        let ders = derivation_space(&g);
        let d = vaisman_core::samples::random_combination(&mut rng, &ders, n, n);
        for i in 0..n {
            for j in 0..n {
                let lhs = d.mul_vec(g.bracket_basis(i, j));
                let rhs = vaisman_core::exact::add(
                    &g.bracket(&d.col(i), &unit(n, j)),
                    &g.bracket(&unit(n, i), &d.col(j)),
                );
                prop_assert_eq!(lhs, rhs);
            }
        }
        // inner derivations are derivations
        for i in 0..n {
            prop_assert!(is_derivation(&g, &g.ad_basis(i)));
        }
    }

    #[test]
    fn closed_forms_are_closed(g in random_algebra_strategy()) {
        for f in closed_forms(&g, 2) {
            prop_assert!(ce_differential(&g, &f).is_zero());
        }
    }

    #[test]
    fn change_of_basis_preserves_invariants(g in random_algebra_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = vaisman_core::samples::random_invertible(&mut rng, g.dim());
        let h = g.change_basis(&p).unwrap();
        prop_assert!(validate(&h).is_ok());
        let (a, b) = (analyze(&g).unwrap(), analyze(&h).unwrap());
        prop_assert_eq!(a.nilradical.dim(), b.nilradical.dim());
        prop_assert_eq!(a.center.dim(), b.center.dim());
        prop_assert_eq!(a.derived.dim(), b.derived.dim());
        prop_assert_eq!(a.unimodular, b.unimodular);
        prop_assert_eq!(a.nilpotent, b.nilpotent);
    }
}
