use epwlab_core::exactalg::{hnf, snf, IntRows};
use epwlab_core::exterior::{annihilator, graph_lagrangian, is_lagrangian, HALF};
use epwlab_core::lattice::{
    diagonal, discriminant_form, enumerate_norm, hyperbolic, int_vec, reflection, EvenLattice, LatticeFixture,
};
use epwlab_core::mukai::{dual_vector, mukai_pairing, RANK};
use epwlab_core::mukai::fujiki_quartic;
use epwlab_core::sampler::SeededSampler;
use epwlab_core::{Field, Matrix, MultiPoly, Scalar};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn small_vec(n: usize, b: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-b..=b, n)
}

fn mul(a: &IntRows, b: &IntRows) -> IntRows {
    a.iter()
        .map(|r| (0..b[0].len()).map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum()).collect())
        .collect()
}

fn big_rows(rows: &[Vec<i64>]) -> IntRows {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Even lattice U ⊕ diag(−2a, 2b), nondegenerate for a, b ≥ 1.
fn mixed_lattice(a: i64, b: i64) -> EvenLattice {
    hyperbolic().direct_sum(&diagonal(&[-2 * a, 2 * b]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fp_inverse(p in prop::sample::select(vec![3u32, 5, 7, 11, 101]), x in 1i64..1000) {
        let f = Field::Prime(p);
        let a = f.from_i64(x);
        prop_assume!(!a.is_zero());
        prop_assert_eq!(&a * &a.inv().unwrap(), f.one());
    }

    #[test]
    fn rank_nullity(rows in prop::collection::vec(small_vec(5, 3), 1..6)) {
        let m = Matrix::from_i64_rows(Field::Rational, &rows).unwrap();
        let (r, k) = m.rank_and_kernel();
        prop_assert_eq!(r + k.cols(), 5);
        for row in k.transpose().row_vecs() {
            prop_assert!(m.apply(&row).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in prop::collection::vec(small_vec(3, 4), 3), b in prop::collection::vec(small_vec(3, 4), 3)) {
        let q = Field::Rational;
        let ma = Matrix::from_i64_rows(q, &a).unwrap();
        let mb = Matrix::from_i64_rows(q, &b).unwrap();
        let lhs = ma.mul(&mb).unwrap().determinant().unwrap();
        prop_assert_eq!(lhs, &ma.determinant().unwrap() * &mb.determinant().unwrap());
    }

    #[test]
    fn smith_form_factors(rows in prop::collection::vec(small_vec(4, 6), 1..5)) {
        let m = big_rows(&rows);
        let s = snf(&m);
        prop_assert_eq!(mul(&mul(&s.u, &m), &s.v), s.d.clone());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert_eq!(f.len(), Matrix::from_i64_rows(Field::Rational, &rows).unwrap().rank());
    }

    #[test]
    fn hnf_is_idempotent(rows in prop::collection::vec(small_vec(4, 6), 1..5)) {
        let h = hnf(&big_rows(&rows));
        prop_assert_eq!(hnf(&h), h);
    }

    #[test]
    fn poly_eval_is_a_ring_map(seed in any::<u64>(), pt in small_vec(3, 5)) {
        let f = Field::Prime(7);
        let mut s = SeededSampler::new(seed);
        let mut draw = || {
            let terms = (0..4)
                .map(|_| ((0..3).map(|_| s.below(3) as u32).collect(), f.from_i64(s.range_i64(-3, 3))))
                .collect();
            MultiPoly::from_terms(3, f, terms).unwrap()
        };
        let (a, b) = (draw(), draw());
        let x: Vec<Scalar> = pt.iter().map(|&v| f.from_i64(v)).collect();
        prop_assert_eq!(a.mul(&b).unwrap().eval(&x).unwrap(), &a.eval(&x).unwrap() * &b.eval(&x).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().eval(&x).unwrap(), &a.eval(&x).unwrap() + &b.eval(&x).unwrap());
    }

    #[test]
    fn graph_lagrangians_and_annihilators(seed in any::<u64>()) {
        let f = Field::Prime(5);
        let s = SeededSampler::new(seed).symmetric_matrix(f, HALF, 0);
        let a = graph_lagrangian(&s).unwrap();
        prop_assert!(is_lagrangian(a.basis()));
        let perp = annihilator(&a).unwrap();
        prop_assert!(is_lagrangian(perp.basis()));
        prop_assert!(annihilator(&perp).unwrap().same_subspace(&a));
    }

    #[test]
    fn mukai_dual_is_an_isometric_involution(a in small_vec(RANK, 4), b in small_vec(RANK, 4)) {
        prop_assert_eq!(dual_vector(&dual_vector(&a)), a.clone());
        prop_assert_eq!(mukai_pairing(&dual_vector(&a), &dual_vector(&b)), mukai_pairing(&a, &b));
    }

    #[test]
    fn reflections_are_isometric_involutions(g in small_vec(4, 3), x in small_vec(4, 5), y in small_vec(4, 5)) {
        let l = mixed_lattice(1, 2);
        prop_assume!(l.norm(&g) != 0);
        let r = reflection(&l, &g).unwrap();
        prop_assert!(r.compose(&r).is_identity());
        let (rx, ry) = (r.apply_int(&x), r.apply_int(&y));
        prop_assert_eq!(l.pair_q(&rx, &ry), Field::Rational.from_i64(l.pair(&x, &y)));
        // r_g(g) = g under the x ↦ −x + (2(x,g)/(g,g)) g convention.
        prop_assert_eq!(r.apply_int(&g), int_vec(&g));
    }

    #[test]
    fn discriminant_q_and_b_are_compatible(a in 1i64..4, b in 1i64..4, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let form = discriminant_form(&mixed_lattice(a, b)).unwrap();
        let els = form.elements();
        prop_assert_eq!(els.len() as u64, form.order());
        prop_assert_eq!(form.order() as i64, 4 * a * b);
        let (x, y) = (i.get(&els), j.get(&els));
        let lhs = form.q_value(&form.add(x, y)) - form.q_value(x) - form.q_value(y);
        let diff = lhs - form.b_value(x, y) * BigInt::from(2);
        prop_assert!((diff / BigInt::from(2)).is_integer());
    }

    #[test]
    fn enumeration_matches_brute_force(a in 1i64..3, b in 1i64..3, target in -6i64..=6) {
        let l = mixed_lattice(a, b);
        let bound = 2;
        let mut got: Vec<Vec<i64>> = enumerate_norm(&l, target, bound).collect();
        got.sort();
        let mut want = Vec::new();
        let range: Vec<i64> = (-bound..=bound).collect();
        for &x0 in &range { for &x1 in &range { for &x2 in &range { for &x3 in &range {
            let v = vec![x0, x1, x2, x3];
            if l.norm(&v) == target {
                want.push(v);
            }
        }}}}
        want.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn fujiki_is_symmetric(x in small_vec(23, 2), y in small_vec(23, 2), z in small_vec(23, 2), t in small_vec(23, 2)) {
        let l = &LatticeFixture::new().lambda_tilde;
        let base = fujiki_quartic(l, [&x, &y, &z, &t]);
        prop_assert_eq!(fujiki_quartic(l, [&y, &x, &z, &t]), base);
        prop_assert_eq!(fujiki_quartic(l, [&t, &z, &y, &x]), base);
        prop_assert_eq!(fujiki_quartic(l, [&x, &x, &x, &x]), 3 * l.norm(&x).pow(2));
    }

    #[test]
    fn sampler_is_deterministic(seed in any::<u64>()) {
        let mut a = SeededSampler::new(seed);
        let mut b = SeededSampler::new(seed);
        prop_assert!((0..32).all(|_| a.next_u64() == b.next_u64()));
    }
}
