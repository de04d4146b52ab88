//! The ambient lattice Λ̂ = U⁴ ⊕ (−E8)² and the sublattices cut out by z and u.
//!
//! Ambient coordinates: f₁ f₂ | g₁ g₂ | h₁ h₂ | k₁ k₂ | E8 | E8.
//! Inside the first two planes: z = f₁+f₂, e₂ = f₁−f₂, u = g₁+g₂, e₁ = g₁−g₂.

use super::{diagonal, e8_negative, hyperbolic, same_lattice, EvenLattice, RationalIsometry};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix};

const Q: Field = Field::Rational;
pub const AMBIENT_RANK: usize = 24;

#[derive(Clone, Debug)]
pub struct LatticeFixture {
    pub ambient: EvenLattice,
    /// Λ̃ = z^⊥, basis e₂, g₁, g₂, h₁, h₂, k₁, k₂, E8, E8.
    pub lambda_tilde_basis: Vec<Vec<i64>>,
    pub lambda_tilde: EvenLattice,
    /// Λ = z^⊥ ∩ u^⊥, basis e₁, e₂, h₁, h₂, k₁, k₂, E8, E8.
    pub lambda_basis: Vec<Vec<i64>>,
    pub lambda: EvenLattice,
    /// L = ℤu ⊕ Λ, basis u followed by the basis of Λ.
    pub l_basis: Vec<Vec<i64>>,
    pub l: EvenLattice,
}

fn unit(i: usize) -> Vec<i64> {
    let mut v = vec![0; AMBIENT_RANK];
    v[i] = 1;
    v
}

fn combo(terms: &[(i64, usize)]) -> Vec<i64> {
    let mut v = vec![0; AMBIENT_RANK];
    for &(c, i) in terms {
        v[i] += c;
    }
    v
}

impl LatticeFixture {
    pub fn new() -> LatticeFixture {
        let u = hyperbolic();
        let ambient = EvenLattice::direct_sum_all(&[u.clone(), u.clone(), u.clone(), u, e8_negative(), e8_negative()])
            .with_labels(&[
                ("f1", 0),
                ("f2", 1),
                ("g1", 2),
                ("g2", 3),
                ("h1", 4),
                ("h2", 5),
                ("k1", 6),
                ("k2", 7),
            ]);
        let rest: Vec<Vec<i64>> = (4..AMBIENT_RANK).map(unit).collect();
        let e1 = combo(&[(1, 2), (-1, 3)]);
        let e2 = combo(&[(1, 0), (-1, 1)]);
        let u_vec = combo(&[(1, 2), (1, 3)]);

        let mut lambda_tilde_basis = vec![e2.clone(), unit(2), unit(3)];
        lambda_tilde_basis.extend(rest.iter().cloned());
        let mut lambda_basis = vec![e1, e2];
        lambda_basis.extend(rest);
        let mut l_basis = vec![u_vec];
        l_basis.extend(lambda_basis.iter().cloned());

        let sub = |b: &[Vec<i64>]| ambient.sublattice(b).expect("nondegenerate sublattice");
        let lambda_tilde = sub(&lambda_tilde_basis);
        let lambda = sub(&lambda_basis).with_labels(&[("e1", 0), ("e2", 1), ("h1", 2), ("h2", 3), ("k1", 4), ("k2", 5)]);
        let l = sub(&l_basis).with_labels(&[("u", 0), ("e1", 1), ("e2", 2)]);
        LatticeFixture { ambient, lambda_tilde_basis, lambda_tilde, lambda_basis, lambda, l_basis, l }
    }

    /// Named ambient vector: f1 f2 g1 g2 h1 h2 k1 k2 z e1 e2 u zeta.
    pub fn vector(&self, name: &str) -> Result<Vec<i64>> {
        if let Some(&i) = self.ambient.labels().get(name) {
            return Ok(unit(i));
        }
        Ok(match name {
            "z" => combo(&[(1, 0), (1, 1)]),
            "e2" => combo(&[(1, 0), (-1, 1)]),
            "u" => combo(&[(1, 2), (1, 3)]),
            "e1" => combo(&[(1, 2), (-1, 3)]),
            "zeta" => combo(&[(1, 2), (-1, 3), (2, 0), (-2, 1)]),
            _ => return Err(Error::Precondition(format!("unknown fixture vector {name}"))),
        })
    }

    /// Λ̃ and Λ agree with the computed orthogonal complements of z and {z, u}.
    pub fn complements_match(&self) -> bool {
        let z = self.vector("z").expect("z");
        let u = self.vector("u").expect("u");
        same_lattice(&self.ambient.orthogonal_complement(&[z.clone()]), &self.lambda_tilde_basis)
            && same_lattice(&self.ambient.orthogonal_complement(&[z, u]), &self.lambda_basis)
    }

    /// Λ̃ ≅ (−2) ⊕ U³ ⊕ (−E8)² and Λ ≅ (−2)² ⊕ U² ⊕ (−E8)², on the fixture bases.
    pub fn standard_forms_match(&self) -> bool {
        let u = hyperbolic();
        let e8 = e8_negative();
        let tilde = EvenLattice::direct_sum_all(&[diagonal(&[-2]), u.clone(), u.clone(), u.clone(), e8.clone(), e8.clone()]);
        let lam = EvenLattice::direct_sum_all(&[diagonal(&[-2, -2]), u.clone(), u, e8.clone(), e8]);
        self.lambda_tilde.gram() == tilde.gram() && self.lambda.gram() == lam.gram()
    }

    /// Ambient coordinates of a vector given in Λ-coordinates.
    pub fn lambda_to_ambient(&self, v: &[i64]) -> Vec<i64> {
        embed(&self.lambda_basis, v)
    }

    pub fn l_to_ambient(&self, v: &[i64]) -> Vec<i64> {
        embed(&self.l_basis, v)
    }

    /// r on L: swaps e₁ and e₂, fixes u and {e₁, e₂}^⊥.
    pub fn r_on_l(&self) -> RationalIsometry {
        swap_isometry(&self.l, 1, 2)
    }

    /// r on Λ.
    pub fn r_on_lambda(&self) -> RationalIsometry {
        swap_isometry(&self.lambda, 0, 1)
    }

    /// The extension of r to Λ̂ ⊗ ℚ fixing z and u; not integral.
    pub fn r_on_ambient(&self) -> RationalIsometry {
        let mut cols = vec![
            self.vector("z").expect("z"),
            self.vector("e2").expect("e2"),
            self.vector("u").expect("u"),
            self.vector("e1").expect("e1"),
        ];
        cols.extend((4..AMBIENT_RANK).map(unit));
        let b = Matrix::from_i64_rows(Q, &cols).expect("square").transpose();
        let mut perm: Vec<usize> = (0..AMBIENT_RANK).collect();
        perm.swap(1, 3);
        let p = permutation(&perm);
        let m = b
            .mul(&p)
            .and_then(|bp| bp.mul(&b.inverse()?))
            .expect("invertible change of basis");
        RationalIsometry::new(&self.ambient, m).expect("r preserves the form")
    }
}

impl Default for LatticeFixture {
    fn default() -> LatticeFixture {
        LatticeFixture::new()
    }
}

fn embed(basis: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    let mut out = vec![0; AMBIENT_RANK];
    for (c, b) in v.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

/// Matrix sending basis vector j to basis vector perm[j].
fn permutation(perm: &[usize]) -> Matrix {
    let n = perm.len();
    let mut m = Matrix::zeros(n, n, Q);
    for (j, &i) in perm.iter().enumerate() {
        m.set(i, j, Q.one());
    }
    m
}

fn swap_isometry(l: &EvenLattice, a: usize, b: usize) -> RationalIsometry {
    let mut perm: Vec<usize> = (0..l.rank()).collect();
    perm.swap(a, b);
    RationalIsometry::new(l, permutation(&perm)).expect("swap of equal-norm orthogonal vectors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;

    #[test]
    fn fixture_identities() {
        let f = LatticeFixture::new();
        let v = |n: &str| f.vector(n).unwrap();
        let a = &f.ambient;
        assert_eq!(a.norm(&v("z")), 2);
        assert_eq!(a.norm(&v("u")), 2);
        assert_eq!(a.norm(&v("e1")), -2);
        assert_eq!(a.norm(&v("e2")), -2);
        assert_eq!(a.norm(&v("zeta")), -10);
        for (x, y) in [("u", "e1"), ("u", "z"), ("u", "e2"), ("e1", "z"), ("e1", "e2"), ("z", "e2")] {
            assert_eq!(a.pair(&v(x), &v(y)), 0, "{x}, {y}");
        }
        assert!(f.complements_match());
        assert!(f.standard_forms_match());
        assert_eq!(f.l.det(), 8.into());
    }

    #[test]
    fn r_extends_to_ambient() {
        let f = LatticeFixture::new();
        let r = f.r_on_ambient();
        assert!(!r.is_integral());
        assert!(r.compose(&r).is_identity());
        let img = r.apply_int(&f.vector("e1").unwrap());
        assert_eq!(img, int_vec(&f.vector("e2").unwrap()));
        assert_eq!(r.apply_int(&f.vector("z").unwrap()), int_vec(&f.vector("z").unwrap()));
        assert!(f.r_on_l().is_integral());
    }
}
