use vaisman_core::contact::*;
use vaisman_core::exact::{int, rat, unit, Matrix, Rational};
use vaisman_core::hermitian::{construct_vaisman, reduce_vaisman, rotation_blocks, standard_j, KahlerFlatPackage};
use vaisman_core::liealg::{center, KForm, LieAlgebra};
use vaisman_core::metricgeo::Metric;

fn h3_structure() -> AlmostContactStructure {
    let g = LieAlgebra::from_int_brackets(&["x", "y", "z"], &[(0, 1, &[0, 0, 1])]).unwrap();
    let mut phi = Matrix::zeros(3, 3);
    phi[(1, 0)] = int(1);
    phi[(0, 1)] = int(-1);
    AlmostContactStructure::new(g, Metric::identity(3), phi, unit(3, 2), unit(3, 2)).unwrap()
}

fn k2() -> (LieAlgebra, Metric, Matrix) {
    let g = LieAlgebra::from_int_brackets(&["H", "Z", "u", "v"], &[(0, 2, &[0, 0, 0, 1]), (0, 3, &[0, 0, -1, 0])]).unwrap();
    let mut j = Matrix::zeros(4, 4);
    j[(1, 0)] = int(1);
    j[(0, 1)] = int(-1);
    j[(3, 2)] = int(1);
    j[(2, 3)] = int(-1);
    (g, Metric::identity(4), j)
}

fn oscillator(a: &[i64]) -> vaisman_core::hermitian::HermitianData {
    let a: Vec<Rational> = a.iter().map(|&x| int(x)).collect();
    construct_vaisman(&KahlerFlatPackage::standard_flat(a.len(), rotation_blocks(&a)).unwrap()).unwrap()
}

#[test]
fn h3_is_sasakian_in_both_conventions() {
    let v = contact_verdict(&h3_structure());
    assert!(v.is_normal && v.is_sasakian_paper && v.is_sasakian_standard, "{}", v.certificate);
    assert!(!v.is_almost_cokahler);
}

#[test]
fn even_dimension_rejected() {
    let g = LieAlgebra::abelian(2);
    let r = AlmostContactStructure::new(g, Metric::identity(2), Matrix::zeros(2, 2), unit(2, 0), unit(2, 0));
    assert!(matches!(r, Err(ContactError::EvenDimension(2))));
}

#[test]
fn invalid_almost_contact_data_rejected() {
    let g = LieAlgebra::abelian(3);
    let r = AlmostContactStructure::new(g, Metric::identity(3), Matrix::zeros(3, 3), unit(3, 2), unit(3, 2));
    assert!(matches!(r, Err(ContactError::NotAlmostContact(_))));
}

#[test]
fn s5_and_h5_are_sasakian_and_reduce() {
    let (g, m, j) = k2();
    let s5 = sasakian_central_extension(&g, &m, &j).unwrap();
    let v = contact_verdict(&s5);
    assert!(v.is_sasakian_paper && v.is_sasakian_standard);
    let red = sasakian_kernel_reduction(&s5).unwrap();
    assert!(red.flat);
    assert!(red.k.same_structure(&g));
    let h5 = sasakian_central_extension(&LieAlgebra::abelian(4), &Metric::identity(4), &standard_j(2)).unwrap();
    let red = sasakian_kernel_reduction(&h5).unwrap();
    assert!(red.k.is_abelian() && red.flat);
    let red = sasakian_kernel_reduction(&h3_structure()).unwrap();
    assert_eq!(red.k.dim(), 2);
    for a in [&s5, &h5, &h3_structure()] {
        assert_eq!(center(a.algebra()).dim(), 1);
    }
}

#[test]
fn centerless_control_is_rejected() {
    // sol: [A,x] = x, [A,y] = −y has trivial center
    let g = LieAlgebra::from_int_brackets(&["A", "x", "y"], &[(0, 1, &[0, 1, 0]), (0, 2, &[0, 0, -1])]).unwrap();
    assert_eq!(center(&g).dim(), 0);
    let mut phi = Matrix::zeros(3, 3);
    phi[(2, 1)] = int(1);
    phi[(1, 2)] = int(-1);
    let a = AlmostContactStructure::new(g, Metric::identity(3), phi, unit(3, 0), unit(3, 0)).unwrap();
    assert!(!contact_verdict(&a).is_sasakian_paper);
    assert!(sasakian_kernel_reduction(&a).is_err());
}

#[test]
fn e2_type_is_cokahler() {
    let g = LieAlgebra::from_int_brackets(&["H", "u", "v"], &[(0, 1, &[0, 0, 1]), (0, 2, &[0, -1, 0])]).unwrap();
    let mut phi = Matrix::zeros(3, 3);
    phi[(2, 1)] = int(1);
    phi[(1, 2)] = int(-1);
    let a = AlmostContactStructure::new(g, Metric::identity(3), phi, unit(3, 0), unit(3, 0)).unwrap();
    let v = contact_verdict(&a);
    assert!(v.is_cokahler && v.is_normal, "{}", v.certificate);
    assert!(v.certificate.get("phi parallel").unwrap().pass);
}

#[test]
fn lee_kernel_carries_paper_sasakian_structure() {
    for a in [&[1][..], &[1, 2], &[0, 3]] {
        let h = oscillator(a);
        let red = reduce_vaisman(&h).unwrap();
        let s = sasakian_on_lee_kernel(&red, h.algebra()).unwrap();
        let v = contact_verdict(&s);
        assert!(v.is_sasakian_paper, "{}", v.certificate);
    }
}

#[test]
fn cokahler_examples() {
    let r = vaisman_to_cokahler(&oscillator(&[0])).unwrap();
    assert!(r.d().is_abelian() && r.d().dim() == 3);
    let r = vaisman_to_cokahler(&oscillator(&[1])).unwrap();
    assert_eq!(r.d().dim(), 3);
    assert!(!r.d().is_abelian());
    let ad = r.d().ad_basis(0);
    assert_eq!(vaisman_core::exact::char_poly(&ad).unwrap(), vaisman_core::exact::Polynomial::from_i64(&[0, 1, 0, 1]));
    let r = vaisman_to_cokahler(&oscillator(&[1, 1])).unwrap();
    assert_eq!(r.d().dim(), 5);
    assert!(r.verdict.is_cokahler);
}

#[test]
fn lsa_on_h3() {
    let h = LieAlgebra::abelian(2);
    let beta = KForm::from_terms(2, 2, &[(vec![0, 1], int(1))]);
    let (g, p) = lsa_from_central_extension(&h, &Metric::identity(2), &beta).unwrap();
    assert_eq!(g.bracket_basis(0, 1), &vec![int(0), int(0), int(1)]);
    assert_eq!(p.basis_product(0, 1), &vec![int(0), int(0), rat(1, 2)]);
    assert_eq!(p.basis_product(1, 0), &vec![int(0), int(0), rat(-1, 2)]);
    let rep = lsa_completeness(&p, 100, 3);
    assert!(rep.pass && rep.nilpotent_certificate && rep.symbolic == Some(true));
    let rf = p.rho(&unit(3, 1));
    assert!(rf.pow(2).is_zero() && !rf.is_zero());
    // β = 0: ξ multiplies trivially
    let (_, p0) = lsa_from_central_extension(&h, &Metric::identity(2), &KForm::zero(2, 2)).unwrap();
    assert!(p0.table().iter().all(|v| v.iter().all(|c| c == &int(0))));
}

#[test]
fn lsa_from_cokahler_is_complete() {
    let h = oscillator(&[1]);
    let r = vaisman_to_cokahler(&h).unwrap();
    let (g, p) = lsa_from_central_extension(r.d(), r.structure.metric(), r.phi_form()).unwrap();
    assert_eq!(g.dim(), 4);
    let rep = lsa_completeness(&p, 100, 11);
    assert!(rep.pass && rep.certified(), "{rep:?}");
}

#[test]
fn non_parallel_form_rejected() {
    // on e(2)-type, H*∧u* is closed but not parallel
    let g = LieAlgebra::from_int_brackets(&["H", "u", "v"], &[(0, 1, &[0, 0, 1]), (0, 2, &[0, -1, 0])]).unwrap();
    let beta = KForm::from_terms(3, 2, &[(vec![0, 1], int(1))]);
    assert!(matches!(lsa_from_central_extension(&g, &Metric::identity(3), &beta), Err(ContactError::NotParallel)));
}

#[test]
fn adversarial_product_has_witness() {
    let g = LieAlgebra::abelian(1);
    let p = LsaProduct::new(&g, vec![vec![int(-1)]]).unwrap();
    let rep = lsa_completeness(&p, 10, 0);
    assert!(!rep.pass);
    assert_eq!(rep.witness, Some(unit(1, 0)));
    assert_eq!(rep.symbolic, Some(false));
}

#[test]
fn invalid_products_rejected() {
    let g = LieAlgebra::from_int_brackets(&["x", "y", "z"], &[(0, 1, &[0, 0, 1])]).unwrap();
    let zero = vec![vec![int(0); 3]; 9];
    assert!(matches!(LsaProduct::new(&g, zero), Err(ContactError::Product(_))));
}
