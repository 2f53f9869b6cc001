use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vaisman_core::exact::{rat, Matrix};
use vaisman_core::io::AlgebraFile;
use vaisman_core::lattices::{oscillator_algebra, OscillatorParams};
use vaisman_core::liealg::LieAlgebra;
use vaisman_core::samples::random_solvable_algebra;

fn roundtrip(f: &AlgebraFile) -> AlgebraFile {
    serde_json::from_str(&serde_json::to_string(f).unwrap()).unwrap()
}

#[test]
fn heisenberg_file() {
    let text = r#"{"dim": 3, "basis": ["x", "y", "z"], "brackets": [[0, 1, ["0", "0", "1/2"]]]}"#;
    let f: AlgebraFile = serde_json::from_str(text).unwrap();
    let g = f.algebra().unwrap();
    assert_eq!(g.bracket_basis(1, 0), &vec![rat(0, 1), rat(0, 1), rat(-1, 2)]);
    assert!(f.metric().unwrap().gram().is_identity());
    assert!(f.j().unwrap().is_none());
}

#[test]
fn rejects_bad_files() {
    let bad = [
        r#"{"dim": 2, "basis": ["x"], "brackets": []}"#,
        r#"{"dim": 2, "basis": ["x", "y"], "brackets": [[0, 1, ["1"]]]}"#,
        r#"{"dim": 2, "basis": ["x", "y"], "brackets": [[0, 5, ["1", "0"]]]}"#,
        r#"{"dim": 2, "basis": ["x", "y"], "brackets": [[0, 1, ["1/0", "0"]]]}"#,
        // Jacobi fails
        r#"{"dim": 3, "basis": ["x", "y", "z"], "brackets": [[0, 1, ["0", "1", "0"]], [1, 2, ["1", "0", "0"]]]}"#,
    ];
    for t in bad {
        let f: AlgebraFile = serde_json::from_str(t).unwrap();
        assert!(f.algebra().is_err(), "{t}");
    }
    assert!(serde_json::from_str::<AlgebraFile>(r#"{"dim": 1, "basis": ["x"], "extra": 1}"#).is_err());
    let f: AlgebraFile = serde_json::from_str(r#"{"dim": 2, "basis": ["x", "y"], "metric": [["1", "0"], ["0", "-1"]]}"#).unwrap();
    assert!(f.metric().is_err());
    let f: AlgebraFile = serde_json::from_str(r#"{"dim": 2, "basis": ["x", "y"], "beta": [["0", "1"], ["1", "0"]]}"#).unwrap();
    assert!(f.beta().is_err());
}

#[test]
fn full_structure_roundtrip() {
    let h = oscillator_algebra(&OscillatorParams::new(&[1, 2]).unwrap()).unwrap();
    let f = AlgebraFile::from_algebra(h.algebra())
        .with_metric(h.metric())
        .with_j(h.j())
        .with_derivation(&Matrix::identity(6))
        .with_beta(h.omega());
    let back = roundtrip(&f);
    assert_eq!(back, f);
    assert_eq!(back.algebra().unwrap(), *h.algebra());
    assert_eq!(back.j().unwrap().unwrap(), *h.j());
    assert_eq!(back.beta().unwrap().unwrap(), *h.omega());
    let json = serde_json::to_string(&f).unwrap();
    assert!(json.contains("\"J\""));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn random_algebras_roundtrip(seed in any::<u64>(), dim in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g: LieAlgebra = random_solvable_algebra(&mut rng, dim);
        let f = AlgebraFile::from_algebra(&g);
        let back = roundtrip(&f);
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.algebra().unwrap(), g);
    }
}
