//! The rank-24 Mukai lattice of a K3 surface and the explicit isometries into Λ̂.
//!
//! Coordinates: index 0 is the degree-0 class 1, indices 1..=22 are H² =
//! U³ ⊕ (−E8)² with α, β the first hyperbolic plane, index 23 is η. The
//! pairing is ⟨x, y⟩ = x₂·y₂ − x₀y₄ − x₄y₀.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix, Scalar};
use crate::lattice::fixture::{LatticeFixture, AMBIENT_RANK};
use crate::lattice::{e8_negative, enumerate_minus2, hyperbolic, int_vec, reflection, EvenLattice, RationalIsometry};

const Q: Field = Field::Rational;

pub const RANK: usize = 24;
pub const ONE: usize = 0;
pub const ALPHA: usize = 1;
pub const BETA: usize = 2;
pub const ETA: usize = 23;

/// The Mukai lattice as an even lattice, with labels 1, alpha, beta, eta.
pub fn mukai_lattice() -> EvenLattice {
    let u = hyperbolic();
    let h2 = EvenLattice::direct_sum_all(&[u.clone(), u.clone(), u, e8_negative(), e8_negative()]);
    let mut g = vec![vec![0i64; RANK]; RANK];
    for (i, row) in h2.gram().iter().enumerate() {
        g[i + 1][1..=22].copy_from_slice(row);
    }
    g[ONE][ETA] = -1;
    g[ETA][ONE] = -1;
    EvenLattice::new(g)
        .expect("unimodular")
        .with_labels(&[("1", ONE), ("alpha", ALPHA), ("beta", BETA), ("eta", ETA)])
}

/// r·1 + Σ cᵢ·(H² basis vector i) + s·η, with H² indices 1..=22.
pub fn mukai_vector(r: i64, h2: &[(i64, usize)], s: i64) -> Vec<i64> {
    let mut v = vec![0; RANK];
    v[ONE] = r;
    v[ETA] = s;
    for &(c, i) in h2 {
        assert!((1..=22).contains(&i), "H² index out of range");
        v[i] += c;
    }
    v
}

pub fn mukai_pairing(a: &[i64], b: &[i64]) -> i64 {
    mukai_lattice().pair(a, b)
}

/// x^∨ = x₀ − x₂ + x₄.
pub fn dual_vector(a: &[i64]) -> Vec<i64> {
    a.iter()
        .enumerate()
        .map(|(i, &x)| if i == ONE || i == ETA { x } else { -x })
        .collect()
}

fn dual_matrix() -> Matrix {
    let mut m = Matrix::identity(RANK, Q);
    for i in 1..=22 {
        m.set(i, i, Q.from_i64(-1));
    }
    m
}

/// Degree-10 data: D = α + 5β, v = 2 + D + 2η, w = 1 − η, p = 5 + 2D + 5η.
pub struct DegreeTen;

impl DegreeTen {
    pub fn d() -> Vec<i64> {
        mukai_vector(0, &[(1, ALPHA), (5, BETA)], 0)
    }
    pub fn v() -> Vec<i64> {
        mukai_vector(2, &[(1, ALPHA), (5, BETA)], 2)
    }
    pub fn w() -> Vec<i64> {
        mukai_vector(1, &[], -1)
    }
    pub fn p() -> Vec<i64> {
        mukai_vector(5, &[(2, ALPHA), (10, BETA)], 5)
    }
}

/// Matrix from Mukai coordinates to Λ̂ coordinates given images of 1, η, α, β;
/// H² index i ≥ 3 goes to ambient index i + 1.
fn trivialization(images: [(usize, &[(i64, &str)]); 4], fixture: &LatticeFixture) -> Matrix {
    let mut m = Matrix::zeros(AMBIENT_RANK, RANK, Q);
    for (col, terms) in images {
        let mut img = vec![0i64; AMBIENT_RANK];
        for &(c, name) in terms {
            let v = fixture.vector(name).expect("fixture vector");
            for (o, x) in img.iter_mut().zip(v) {
                *o += c * x;
            }
        }
        for (i, x) in img.into_iter().enumerate() {
            m.set(i, col, Q.from_i64(x));
        }
    }
    for i in 3..=22 {
        m.set(i + 1, i, Q.one());
    }
    m
}

/// Υ: 1 ↦ −g₂−2f₂, η ↦ g₁−2f₂, α ↦ −2g₁+2g₂+f₁+4f₂, β ↦ f₂.
pub fn upsilon_matrix(fixture: &LatticeFixture) -> Matrix {
    trivialization(
        [
            (ONE, &[(-1, "g2"), (-2, "f2")]),
            (ETA, &[(1, "g1"), (-2, "f2")]),
            (ALPHA, &[(-2, "g1"), (2, "g2"), (1, "f1"), (4, "f2")]),
            (BETA, &[(1, "f2")]),
        ],
        fixture,
    )
}

/// Θ: 1 ↦ 2g₂+f₂, η ↦ 2g₂−f₁, α ↦ g₁+4g₂−2f₁+2f₂, β ↦ g₂.
pub fn theta_matrix(fixture: &LatticeFixture) -> Matrix {
    trivialization(
        [
            (ONE, &[(2, "g2"), (1, "f2")]),
            (ETA, &[(2, "g2"), (-1, "f1")]),
            (ALPHA, &[(1, "g1"), (4, "g2"), (-2, "f1"), (2, "f2")]),
            (BETA, &[(1, "g2")]),
        ],
        fixture,
    )
}

/// Ξ(γ) = −γ^∨ + ½⟨γ^∨, v+w⟩(v+w).
pub fn xi_isometry() -> RationalIsometry {
    let l = mukai_lattice();
    let s: Vec<i64> = DegreeTen::v().iter().zip(DegreeTen::w()).map(|(a, b)| a + b).collect();
    let gs = l.gram_times(&s);
    let half = Q.ratio(1, 2).expect("nonzero");
    let mut outer = Matrix::zeros(RANK, RANK, Q);
    for i in 0..RANK {
        for j in 0..RANK {
            outer.set(i, j, &half * &Q.from_i64(s[i] * gs[j]));
        }
    }
    // γ ↦ ½⟨γ^∨, s⟩ s is (½ s (Gs)ᵀ)·dual.
    let m = outer
        .add(&Matrix::identity(RANK, Q).scale(&Q.from_i64(-1)))
        .and_then(|m| m.mul(&dual_matrix()))
        .expect("square");
    RationalIsometry::new(&l, m).expect("Ξ preserves the pairing")
}

/// Whether Mᵀ·G_Λ̂·M equals the Mukai Gram matrix.
pub fn preserves_gram(m: &Matrix, fixture: &LatticeFixture) -> bool {
    let lhs = m
        .transpose()
        .mul(&fixture.ambient.gram_matrix())
        .and_then(|x| x.mul(m))
        .expect("matching shapes");
    lhs == mukai_lattice().gram_matrix()
}

pub fn apply(m: &Matrix, v: &[i64]) -> Vec<Scalar> {
    m.apply(&int_vec(v)).expect("matching dimension")
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationReport {
    /// Basis indices where Θ and r∘Υ∘Ξ disagree.
    pub mismatches: Vec<usize>,
    pub holds: bool,
}

/// Θ = r∘Υ∘Ξ, compared column by column on all 24 basis vectors.
pub fn verify_theta_factorization(fixture: &LatticeFixture) -> FactorizationReport {
    let rhs = fixture
        .r_on_ambient()
        .matrix()
        .mul(&upsilon_matrix(fixture))
        .and_then(|x| x.mul(xi_isometry().matrix()))
        .expect("matching shapes");
    let lhs = theta_matrix(fixture);
    let mismatches: Vec<usize> = (0..RANK).filter(|&j| lhs.column(j) != rhs.column(j)).collect();
    FactorizationReport { holds: mismatches.is_empty(), mismatches }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimReport {
    pub rank_left: usize,
    pub rank_right: usize,
    pub equal: bool,
}

/// {v, η−1, 5+2D+5η}^⊥ against D^⊥ ∩ H².
pub fn prim_complement_check() -> PrimReport {
    let l = mukai_lattice();
    let left = l.orthogonal_complement(&[DegreeTen::v(), mukai_vector(-1, &[], 1), DegreeTen::p()]);
    // H² = {1, η}^⊥.
    let right = l.orthogonal_complement(&[mukai_vector(1, &[], 0), mukai_vector(0, &[], 1), DegreeTen::d()]);
    PrimReport { rank_left: left.len(), rank_right: right.len(), equal: crate::lattice::same_lattice(&left, &right) }
}

/// Quartic-with-line data in the first two planes of H²: f₁ f₂ = α β, g'₁ g'₂ = indices 3, 4.
pub struct QuarticModel;

impl QuarticModel {
    pub fn a0() -> Vec<i64> {
        mukai_vector(0, &[(1, 1), (2, 2)], 0)
    }
    pub fn r() -> Vec<i64> {
        mukai_vector(0, &[(1, 2), (1, 3), (-1, 4)], 0)
    }
    /// v₀ = 2 + (2A₀ − R) + 2η
    pub fn v0() -> Vec<i64> {
        combine(2, &[(2, Self::a0()), (-1, Self::r())], 2)
    }
    /// w₀ = 1 + A₀ + η
    pub fn w0() -> Vec<i64> {
        combine(1, &[(1, Self::a0())], 1)
    }
    /// u₀ = 1 + (A₀ − R) + η
    pub fn u0() -> Vec<i64> {
        combine(1, &[(1, Self::a0()), (-1, Self::r())], 1)
    }
    /// 5 + 2(2A₀ − R) + 5η
    pub fn p0() -> Vec<i64> {
        combine(5, &[(4, Self::a0()), (-2, Self::r())], 5)
    }
}

fn combine(r: i64, parts: &[(i64, Vec<i64>)], s: i64) -> Vec<i64> {
    let mut v = mukai_vector(r, &[], s);
    for (c, p) in parts {
        for (o, x) in v.iter_mut().zip(p) {
            *o += c * x;
        }
    }
    v
}

/// Reflection in a (−2)-vector of the Mukai lattice.
pub fn mukai_reflection(u0: &[i64]) -> Result<RationalIsometry> {
    let l = mukai_lattice();
    if l.norm(u0) != -2 {
        return Err(Error::Precondition(format!("<u0, u0> = {}, expected -2", l.norm(u0))));
    }
    reflection(&l, u0)
}

#[derive(Clone, Debug, Serialize)]
pub struct ReflectedPairingReport {
    pub gamma0: Vec<i64>,
    pub gamma0_dot_r: i64,
    /// ⟨−r_{u₀}(γ₀), 5 + 2(2A₀−R) + 5η⟩
    pub lhs: i64,
    pub holds_with_minus_8: bool,
    pub holds_with_2: bool,
    /// lhs ≡ −8(γ₀·R) mod 5
    pub mod5_agrees: bool,
    /// γ₀·R ≢ 0 mod 5
    pub usable: bool,
}

pub fn reflected_pairing_check(gamma0: &[i64]) -> Result<ReflectedPairingReport> {
    let l = mukai_lattice();
    if gamma0.len() != RANK || gamma0[ONE] != 0 || gamma0[ETA] != 0 {
        return Err(Error::Precondition("gamma0 must lie in H^2".into()));
    }
    if l.pair(gamma0, &QuarticModel::a0()) != 0 {
        return Err(Error::Precondition("gamma0 is not orthogonal to A0".into()));
    }
    if l.norm(gamma0) != -2 {
        return Err(Error::Precondition(format!("gamma0^2 = {}, expected -2", l.norm(gamma0))));
    }
    let img = mukai_reflection(&QuarticModel::u0())?.negate().apply_int(gamma0);
    let lhs = l
        .pair_q(&img, &int_vec(&QuarticModel::p0()))
        .to_integer()
        .and_then(|x| i64::try_from(x).ok())
        .ok_or_else(|| Error::Internal("Mukai reflection is integral".into()))?;
    let g = l.pair(gamma0, &QuarticModel::r());
    Ok(ReflectedPairingReport {
        gamma0: gamma0.to_vec(),
        gamma0_dot_r: g,
        lhs,
        holds_with_minus_8: lhs == -8 * g,
        holds_with_2: lhs == 2 * g,
        mod5_agrees: (lhs + 8 * g).rem_euclid(5) == 0,
        usable: g.rem_euclid(5) != 0,
    })
}

/// (−2)-classes of U³ ⊂ H² orthogonal to A₀, coordinates in [−bound, bound].
pub fn gamma0_candidates(bound: i64) -> Vec<Vec<i64>> {
    let u = hyperbolic();
    let u3 = EvenLattice::direct_sum_all(&[u.clone(), u.clone(), u]);
    let l = mukai_lattice();
    let a0 = QuarticModel::a0();
    enumerate_minus2(&u3, bound)
        .map(|x| {
            let mut v = vec![0; RANK];
            v[1..=6].copy_from_slice(&x);
            v
        })
        .filter(|v| l.pair(v, &a0) == 0)
        .collect()
}

/// (ξ₁,ξ₂)(ξ₃,ξ₄) + (ξ₁,ξ₃)(ξ₂,ξ₄) + (ξ₁,ξ₄)(ξ₂,ξ₃)
pub fn fujiki_quartic(l: &EvenLattice, x: [&[i64]; 4]) -> i64 {
    let p = |i: usize, j: usize| l.pair(x[i], x[j]);
    p(0, 1) * p(2, 3) + p(0, 2) * p(1, 3) + p(0, 3) * p(1, 2)
}

pub fn polarized_triple(l: &EvenLattice, line: &[i64], x: [&[i64]; 3]) -> i64 {
    fujiki_quartic(l, [line, x[0], x[1], x[2]])
}

/// ½ Σ_{σ ∈ S₃} (l, ξ_{σ1})(ξ_{σ2}, ξ_{σ3}), summed term by term.
pub fn symmetrized_triple(l: &EvenLattice, line: &[i64], x: [&[i64]; 3]) -> i64 {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let twice: i64 = PERMS
        .iter()
        .map(|s| l.pair(line, x[s[0]]) * l.pair(x[s[1]], x[s[2]]))
        .sum();
    twice / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb(f: &LatticeFixture, name: &str) -> Vec<Scalar> {
        int_vec(&f.vector(name).unwrap())
    }

    #[test]
    fn pairings() {
        let v = DegreeTen::v();
        assert_eq!(mukai_pairing(&v, &v), 2);
        assert_eq!(mukai_pairing(&DegreeTen::w(), &DegreeTen::w()), 2);
        assert_eq!(mukai_pairing(&DegreeTen::p(), &DegreeTen::p()), -10);
        assert_eq!(mukai_pairing(&mukai_vector(1, &[], 0), &mukai_vector(0, &[], 1)), -1);
        assert_eq!(dual_vector(&v), mukai_vector(2, &[(-1, ALPHA), (-5, BETA)], 2));
        assert_eq!(dual_vector(&DegreeTen::w()), DegreeTen::w());
    }

    #[test]
    fn trivializations() {
        let f = LatticeFixture::new();
        let ups = upsilon_matrix(&f);
        let th = theta_matrix(&f);
        assert!(preserves_gram(&ups, &f));
        assert!(preserves_gram(&th, &f));
        assert_eq!(apply(&ups, &DegreeTen::v()), amb(&f, "z"));
        assert_eq!(apply(&th, &DegreeTen::w()), amb(&f, "z"));
        let minus = |v: Vec<i64>| v.into_iter().map(|x| -x).collect::<Vec<_>>();
        assert_eq!(apply(&ups, &minus(dual_vector(&DegreeTen::w()))), amb(&f, "u"));
        assert_eq!(apply(&th, &minus(dual_vector(&DegreeTen::v()))), amb(&f, "u"));
        assert_eq!(apply(&ups, &DegreeTen::p()), amb(&f, "zeta"));
    }

    #[test]
    fn xi_and_factorization() {
        let xi = xi_isometry();
        assert_eq!(xi.apply_int(&DegreeTen::v()), int_vec(&mukai_vector(-29, &[(-8, ALPHA), (-40, BETA)], -11)));
        let f = LatticeFixture::new();
        let rep = verify_theta_factorization(&f);
        assert!(rep.holds, "{:?}", rep.mismatches);
    }

    #[test]
    fn quartic_model() {
        let l = mukai_lattice();
        let (a0, r) = (QuarticModel::a0(), QuarticModel::r());
        assert_eq!((l.norm(&a0), l.norm(&r), l.pair(&a0, &r)), (4, -2, 1));
        assert_eq!(l.norm(&QuarticModel::u0()), -2);
        assert_eq!(l.pair(&QuarticModel::v0(), &QuarticModel::u0()), -1);
        let ru = mukai_reflection(&QuarticModel::u0()).unwrap();
        assert_eq!(ru.negate().apply_int(&QuarticModel::v0()), int_vec(&QuarticModel::w0()));
        assert_eq!(ru.apply_int(&QuarticModel::u0()), int_vec(&QuarticModel::u0()));
        assert!(matches!(mukai_reflection(&DegreeTen::v()), Err(Error::Precondition(_))));
    }

    #[test]
    fn reflected_pairing_exact_value() {
        // γ₀ = g'₁ − g'₂: γ₀·R = −2 and the pairing is 2·(−2).
        let g = mukai_vector(0, &[(1, 3), (-1, 4)], 0);
        let rep = reflected_pairing_check(&g).unwrap();
        assert_eq!((rep.gamma0_dot_r, rep.lhs), (-2, -4));
        assert!(rep.holds_with_2 && rep.mod5_agrees && rep.usable);
        assert!(!rep.holds_with_minus_8);
        let root = mukai_vector(0, &[(1, 7)], 0);
        let rep = reflected_pairing_check(&root).unwrap();
        assert_eq!((rep.gamma0_dot_r, rep.lhs), (0, 0));
        assert!(gamma0_candidates(2).len() >= 50);
    }

    #[test]
    fn prim_complement() {
        let rep = prim_complement_check();
        assert!(rep.equal);
        assert_eq!((rep.rank_left, rep.rank_right), (21, 21));
    }

    #[test]
    fn fujiki() {
        let f = LatticeFixture::new();
        let t = &f.lambda_tilde;
        let mut a = vec![0; 23];
        let mut b = vec![0; 23];
        a[1] = 1;
        b[2] = 1;
        assert_eq!(fujiki_quartic(t, [&a, &a, &b, &b]), 2 * t.pair(&a, &b).pow(2));
        let x: Vec<i64> = (0..23).map(|i| (i % 3) as i64 - 1).collect();
        assert_eq!(fujiki_quartic(t, [&x, &x, &x, &x]), 3 * t.norm(&x).pow(2));
        assert_eq!(polarized_triple(t, &x, [&a, &b, &x]), symmetrized_triple(t, &x, [&a, &b, &x]));
    }
}
