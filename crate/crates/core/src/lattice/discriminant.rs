//! Discriminant groups A_L = L^∨/L, their forms, isotropic classes and overlattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{EvenLattice, RationalIsometry};
use crate::error::{Error, Result};
use crate::exactalg::smith::{hnf, int_mat_mul, snf};
use crate::exactalg::{Field, Scalar};

const Q: Field = Field::Rational;

/// Residues (c₁ mod d₁, …) in the cyclic decomposition of A_L.
pub type Class = Vec<u64>;

/// A_L with b_L in ℚ/ℤ and q_L in ℚ/2ℤ.
///
/// With U·G·V = D from the Smith form, L^∨ = G⁻¹ℤⁿ is spanned by the
/// columns of V·D⁻¹; the column v_i/d_i generates a cyclic factor of order
/// d_i. A dual vector x has class coordinates U·G·x.
#[derive(Clone, Debug)]
pub struct FiniteQuadForm {
    lattice: EvenLattice,
    orders: Vec<u64>,
    generators: Vec<Vec<BigRational>>,
    class_rows: Vec<Vec<BigInt>>,
}

pub fn discriminant_form(lattice: &EvenLattice) -> Result<FiniteQuadForm> {
    let g = lattice.big_gram();
    let s = snf(&g);
    let n = lattice.rank();
    if s.rank() < n {
        return Err(Error::Degenerate("Gram matrix is singular".into()));
    }
    let ug = int_mat_mul(&s.u, &g);
    let mut orders = Vec::new();
    let mut generators = Vec::new();
    let mut class_rows = Vec::new();
    for i in 0..n {
        let d = &s.d[i][i];
        if d.is_one() {
            continue;
        }
        orders.push(d.to_u64().ok_or_else(|| Error::Precondition("discriminant group too large".into()))?);
        generators.push(
            (0..n)
                .map(|k| BigRational::new(s.v[k][i].clone(), d.clone()))
                .collect(),
        );
        class_rows.push(ug[i].clone());
    }
    Ok(FiniteQuadForm {
        lattice: lattice.clone(),
        orders,
        generators,
        class_rows,
    })
}

fn rational(x: &Scalar) -> BigRational {
    x.as_rational().expect("rational scalar").clone()
}

fn scalar(x: BigRational) -> Scalar {
    Scalar::Rat(x)
}

/// Representative in [0, m).
fn reduce(x: &BigRational, m: i64) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(m));
    let k = (x / &m).floor();
    x - k * m
}

impl FiniteQuadForm {
    pub fn lattice(&self) -> &EvenLattice {
        &self.lattice
    }

    /// Orders of the cyclic factors, each dividing the next.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Generators as dual vectors in lattice coordinates.
    pub fn generators(&self) -> Vec<Vec<Scalar>> {
        self.generators
            .iter()
            .map(|g| g.iter().cloned().map(scalar).collect())
            .collect()
    }

    pub fn zero(&self) -> Class {
        vec![0; self.orders.len()]
    }

    /// Class of a rational vector; fails if it is not in L^∨.
    pub fn class_of(&self, x: &[Scalar]) -> Result<Class> {
        let gx = self.lattice.gram_matrix().apply(x)?;
        if gx.iter().any(|s| s.to_integer().is_none()) {
            return Err(Error::Integrality("vector is not in the dual lattice".into()));
        }
        Ok(self
            .class_rows
            .iter()
            .zip(&self.orders)
            .map(|(row, &d)| {
                let c: BigRational = row
                    .iter()
                    .zip(x)
                    .map(|(a, b)| BigRational::from_integer(a.clone()) * rational(b))
                    .sum();
                let c = c.to_integer();
                c.mod_floor(&BigInt::from(d)).to_u64().expect("residue")
            })
            .collect())
    }

    /// The dual vector Σ cᵢ·genᵢ.
    pub fn lift(&self, c: &[u64]) -> Vec<Scalar> {
        let n = self.lattice.rank();
        let mut out = vec![BigRational::zero(); n];
        for (ci, g) in c.iter().zip(&self.generators) {
            for (o, gi) in out.iter_mut().zip(g) {
                *o += gi * BigRational::from_integer(BigInt::from(*ci));
            }
        }
        out.into_iter().map(scalar).collect()
    }

    /// q_L in [0, 2).
    pub fn q_value(&self, c: &[u64]) -> BigRational {
        let x = self.lift(c);
        reduce(&rational(&self.lattice.pair_q(&x, &x)), 2)
    }

    /// b_L in [0, 1).
    pub fn b_value(&self, a: &[u64], b: &[u64]) -> BigRational {
        reduce(&rational(&self.lattice.pair_q(&self.lift(a), &self.lift(b))), 1)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Class {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    /// All classes, in mixed-radix order with the last factor fastest.
    pub fn elements(&self) -> Vec<Class> {
        let mut out = vec![Vec::new()];
        for &d in &self.orders {
            out = out
                .into_iter()
                .flat_map(|c: Class| {
                    (0..d).map(move |x| {
                        let mut c = c.clone();
                        c.push(x);
                        c
                    })
                })
                .collect();
        }
        out
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn subgroup(&self, gens: &[Class]) -> Vec<Class> {
        let mut group = vec![self.zero()];
        let mut frontier = group.clone();
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if !group.contains(&y) {
                    group.push(y.clone());
                    frontier.push(y);
                }
            }
        }
        group.sort();
        group
    }

    /// Image of a class under an integral isometry of L.
    pub fn act(&self, m: &RationalIsometry, c: &[u64]) -> Result<Class> {
        if !m.is_integral() {
            return Err(Error::Integrality("isometry is not integral".into()));
        }
        self.class_of(&m.apply(&self.lift(c)))
    }
}

/// Nonzero classes with q = 0 mod 2ℤ.
pub fn isotropic_elements(form: &FiniteQuadForm) -> Vec<Class> {
    form.elements()
        .into_iter()
        .filter(|c| c.iter().any(|&x| x != 0) && form.q_value(c).is_zero())
        .collect()
}

/// An overlattice M ⊇ L: basis rows in L-coordinates and the Gram on that basis.
#[derive(Clone, Debug)]
pub struct Overlattice {
    pub basis: Vec<Vec<Scalar>>,
    pub lattice: EvenLattice,
    pub index: u64,
}

impl Overlattice {
    /// Whether both span the same ℤ-module of L ⊗ ℚ.
    pub fn same_as(&self, other: &Overlattice) -> bool {
        canonical_rows(&self.basis) == canonical_rows(&other.basis)
    }

    pub fn image(&self, m: &RationalIsometry) -> Overlattice {
        Overlattice {
            basis: self.basis.iter().map(|b| m.apply(b)).collect(),
            lattice: self.lattice.clone(),
            index: self.index,
        }
    }
}

/// HNF of the rows after clearing a common denominator, with that denominator.
fn canonical_rows(rows: &[Vec<Scalar>]) -> (BigInt, Vec<Vec<BigInt>>) {
    let den = rows
        .iter()
        .flatten()
        .fold(BigInt::one(), |l, x| l.lcm(rational(x).denom()));
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| (rational(x) * BigRational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    // Strip a content common to the HNF so equal modules give equal output.
    let h = hnf(&ints);
    let g = h.iter().flatten().fold(den.clone(), |g, x| g.gcd(x));
    (
        &den / &g,
        h.into_iter().map(|r| r.into_iter().map(|x| x / &g).collect()).collect(),
    )
}

/// Overlattice generated by L and lifts of the subgroup generated by `h`.
pub fn overlattice(form: &FiniteQuadForm, h: &[Class]) -> Result<Overlattice> {
    let sub = form.subgroup(h);
    if let Some(bad) = sub.iter().find(|c| !form.q_value(c).is_zero()) {
        return Err(Error::Isotropy(format!("class {bad:?} has nonzero q")));
    }
    let n = form.lattice.rank();
    let mut rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| Q.from_i64((i == j) as i64)).collect())
        .collect();
    rows.extend(h.iter().map(|c| form.lift(c)));
    let (den, ints) = canonical_rows(&rows);
    let d = BigRational::from_integer(den);
    let basis: Vec<Vec<Scalar>> = ints
        .iter()
        .map(|r| r.iter().map(|x| scalar(BigRational::from_integer(x.clone()) / &d)).collect())
        .collect();
    let gram: Vec<Vec<i64>> = basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| {
                    let p = form.lattice.pair_q(a, b);
                    p.to_integer()
                        .and_then(|x| x.to_i64())
                        .ok_or_else(|| Error::Internal("overlattice pairing not integral".into()))
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    let lattice = EvenLattice::new(gram)?;
    let ratio = form.lattice.det() / lattice.det();
    let index = sub.len() as u64;
    if ratio.abs() != BigInt::from(index * index) {
        return Err(Error::Internal(format!("index mismatch: det ratio {ratio}, |H| = {index}")));
    }
    Ok(Overlattice { basis, lattice, index })
}

/// Permutation induced on the isotropic classes: `perm[i]` is the position of the image of class i.
pub fn epsilon_action(form: &FiniteQuadForm, m: &RationalIsometry) -> Result<Vec<usize>> {
    let iso = isotropic_elements(form);
    iso.iter()
        .map(|c| {
            let img = form.act(m, c)?;
            iso.iter()
                .position(|x| *x == img)
                .ok_or_else(|| Error::Internal("isometry does not preserve q".into()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::{diagonal, e8_negative, hyperbolic, reflection, EvenLattice};
    use super::*;
    use crate::exactalg::Matrix;

    fn half(x: i64) -> BigRational {
        BigRational::new(BigInt::from(x), BigInt::from(2))
    }

    #[test]
    fn small_forms() {
        let f = discriminant_form(&e8_negative()).unwrap();
        assert_eq!(f.order(), 1);
        assert!(isotropic_elements(&f).is_empty());

        let f = discriminant_form(&diagonal(&[-2])).unwrap();
        assert_eq!(f.orders(), &[2]);
        assert_eq!(f.q_value(&[1]), half(3));
        assert!(isotropic_elements(&f).is_empty());
    }

    #[test]
    fn compatibility_and_order() {
        let l = EvenLattice::direct_sum_all(&[diagonal(&[2, -2, -2]), hyperbolic(), e8_negative()]);
        let f = discriminant_form(&l).unwrap();
        assert_eq!(BigInt::from(f.order()), l.det().abs());
        for a in f.elements() {
            for b in f.elements() {
                let lhs = f.q_value(&f.add(&a, &b));
                let rhs = reduce(&(f.q_value(&a) + f.q_value(&b) + f.b_value(&a, &b) * BigRational::from_integer(2.into())), 2);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn overlattice_of_trivial_subgroup() {
        let l = diagonal(&[2, -2, -2]);
        let f = discriminant_form(&l).unwrap();
        let m = overlattice(&f, &[]).unwrap();
        assert_eq!(m.index, 1);
        assert_eq!(m.lattice.det(), l.det());
    }

    #[test]
    fn non_isotropic_rejected() {
        let l = diagonal(&[2, -2]);
        let f = discriminant_form(&l).unwrap();
        let c = f.class_of(&[Q.ratio(1, 2).unwrap(), Q.zero()]).unwrap();
        assert!(matches!(overlattice(&f, &[c]), Err(Error::Isotropy(_))));
    }

    #[test]
    fn epsilon_of_reflections() {
        // diag(2,−2,−2): I = {[u/2]+[e1/2], [u/2]+[e2/2]}
        let l = diagonal(&[2, -2, -2]);
        let f = discriminant_form(&l).unwrap();
        assert_eq!(isotropic_elements(&f).len(), 2);
        let swap = RationalIsometry::new(
            &l,
            Matrix::from_i64_rows(Q, &[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]).unwrap(),
        )
        .unwrap();
        assert_eq!(epsilon_action(&f, &swap).unwrap(), vec![1, 0]);
        assert_eq!(epsilon_action(&f, &swap.negate()).unwrap(), vec![1, 0]);
        let r = reflection(&l, &[0, 1, 0]).unwrap();
        assert_eq!(epsilon_action(&f, &r).unwrap(), vec![0, 1]);
        let half_refl = reflection(&l, &[0, 1, 2]).unwrap();
        assert!(matches!(epsilon_action(&f, &half_refl), Err(Error::Integrality(_))));
    }
}
