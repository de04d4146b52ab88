use epwlab_cli::{run_suite, SuiteConfig, SuiteName, SuiteReport};
use epwlab_core::epw::{sample_lagrangian, sextic_equation, SexticResult};
use epwlab_core::exterior::{graph_lagrangian, LagrangianSubspace, HALF};
use epwlab_core::lattice::{LatticeFixture, EvenLattice};
use epwlab_core::sampler::SeededSampler;
use epwlab_core::{Field, Matrix, MultiPoly};

fn roundtrip<T: serde::Serialize + serde::de::DeserializeOwned>(x: &T) -> T {
    serde_json::from_str(&serde_json::to_string(x).unwrap()).unwrap()
}

#[test]
fn rational_lagrangian_with_large_coefficients() {
    let q = Field::Rational;
    let mut s = SeededSampler::new(3).symmetric_matrix(q, HALF, 1_000_000);
    let big = q.ratio(123_456_789_012, 7).unwrap();
    s.set(0, 1, big.clone());
    s.set(1, 0, big);
    let a = graph_lagrangian(&s).unwrap();
    let back: LagrangianSubspace = roundtrip(&a);
    assert_eq!(back, a);
    assert!(back.same_subspace(&a));
}

#[test]
fn sextic_with_many_terms() {
    let a = sample_lagrangian(&mut SeededSampler::new(11), Field::Prime(3), 0).unwrap();
    let s = sextic_equation(&a, 1).unwrap();
    let p = s.polynomial().expect("nonzero sextic").clone();
    assert!(p.len() >= 200, "only {} terms", p.len());
    assert_eq!(roundtrip(&p), p);
    assert_eq!(roundtrip(&s), s);
}

#[test]
fn zero_polynomial_is_flagged() {
    let z = MultiPoly::zero(6, Field::Rational);
    let back: MultiPoly = roundtrip(&z);
    assert!(back.is_zero());
    assert_eq!(SexticResult::from_poly(back), SexticResult::IdenticallyZero);
}

#[test]
fn lattice_and_matrix() {
    let fx = LatticeFixture::new();
    let back: EvenLattice = roundtrip(&fx.l);
    assert_eq!(back.gram(), fx.l.gram());
    let m = Matrix::from_i64_rows(Field::Prime(5), &[vec![1, 2], vec![3, 4]]).unwrap();
    assert_eq!(roundtrip(&m), m);
}

#[test]
fn malformed_json_is_rejected() {
    assert!(serde_json::from_str::<LagrangianSubspace>(r#"{"ambient":"V","field":"Q","basis":[["1"]]}"#).is_err());
    assert!(serde_json::from_str::<MultiPoly>(r#"{"vars":2,"field":4,"terms":[]}"#).is_err());
}

#[test]
fn reports_roundtrip_and_are_deterministic() {
    let cfg = SuiteConfig::with_seed(9);
    let a = run_suite(SuiteName::Mukai, &cfg).unwrap();
    let b = run_suite(SuiteName::Mukai, &cfg).unwrap();
    let back: SuiteReport = roundtrip(&a);
    assert_eq!(back, a);
    assert_eq!(
        serde_json::to_string(&a.without_timing()).unwrap(),
        serde_json::to_string(&b.without_timing()).unwrap()
    );
}
