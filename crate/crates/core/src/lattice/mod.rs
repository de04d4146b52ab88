//! Even lattices given by Gram matrices, their isometries and reflections.
//!
//! Reflections follow the sign convention r_γ(x) = −x + (2(x,γ)/(γ,γ))·γ,
//! the negative of the usual reflection: γ spans the (+1)-eigenspace.

pub mod conto;
pub mod discriminant;
pub mod enumerate;
pub mod fixture;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::smith::{hnf, int_det, integer_kernel};
use crate::exactalg::{Field, Matrix, Scalar};

pub use conto::{conto_check, ContoReport};
pub use discriminant::{discriminant_form, epsilon_action, isotropic_elements, overlattice, Class, FiniteQuadForm, Overlattice};
pub use enumerate::{enumerate_minus2, enumerate_norm};
pub use fixture::LatticeFixture;

const Q: Field = Field::Rational;

/// Integral symmetric even nondegenerate Gram matrix with optional labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeJson", into = "LatticeJson")]
pub struct EvenLattice {
    gram: Vec<Vec<i64>>,
    labels: BTreeMap<String, usize>,
}

impl EvenLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<EvenLattice> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("Gram matrix must be square".into()));
        }
        for i in 0..n {
            if gram[i][i] % 2 != 0 {
                return Err(Error::Precondition(format!("odd diagonal entry {} at {i}", gram[i][i])));
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        let l = EvenLattice {
            gram,
            labels: BTreeMap::new(),
        };
        if l.det().is_zero() {
            return Err(Error::Degenerate("Gram matrix is singular".into()));
        }
        Ok(l)
    }

    pub fn with_labels(mut self, labels: &[(&str, usize)]) -> EvenLattice {
        for &(name, i) in labels {
            assert!(i < self.rank(), "label index out of range");
            self.labels.insert(name.to_string(), i);
        }
        self
    }

    pub fn labels(&self) -> &BTreeMap<String, usize> {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn gram_matrix(&self) -> Matrix {
        Matrix::from_i64_rows(Q, &self.gram).expect("square integer Gram")
    }

    pub fn det(&self) -> BigInt {
        int_det(&self.big_gram())
    }

    pub(crate) fn big_gram(&self) -> Vec<Vec<BigInt>> {
        self.gram
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc = 0i128;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += *xi as i128 * self.gram[i][j] as i128 * *yj as i128;
            }
        }
        i64::try_from(acc).expect("pairing fits in i64")
    }

    pub fn norm(&self, x: &[i64]) -> i64 {
        self.pair(x, x)
    }

    /// Pairing of rational vectors.
    pub fn pair_q(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut acc = Q.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if self.gram[i][j] != 0 && !yj.is_zero() {
                    acc = acc + xi * &(yj * &Q.from_i64(self.gram[i][j]));
                }
            }
        }
        acc
    }

    /// G·x for an integer vector.
    pub fn gram_times(&self, x: &[i64]) -> Vec<i64> {
        self.gram.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// Orthogonal direct sum; labels of `other` keep their names, shifted.
    pub fn direct_sum(&self, other: &EvenLattice) -> EvenLattice {
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![0i64; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        let mut labels = self.labels.clone();
        for (k, v) in &other.labels {
            labels.insert(k.clone(), n + v);
        }
        EvenLattice { gram, labels }
    }

    pub fn direct_sum_all(parts: &[EvenLattice]) -> EvenLattice {
        let mut it = parts.iter();
        let first = it.next().expect("at least one summand").clone();
        it.fold(first, |acc, p| acc.direct_sum(p))
    }

    /// Lattice spanned by integer rows, with Gram B·G·Bᵀ.
    pub fn sublattice(&self, basis: &[Vec<i64>]) -> Result<EvenLattice> {
        let gram = basis
            .iter()
            .map(|a| basis.iter().map(|b| self.pair(a, b)).collect())
            .collect();
        EvenLattice::new(gram)
    }

    /// Basis (HNF rows) of {x ∈ L : (x, v) = 0 for every v in `vs`}.
    pub fn orthogonal_complement(&self, vs: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let rows: Vec<Vec<BigInt>> = vs
            .iter()
            .map(|v| self.gram_times(v).into_iter().map(BigInt::from).collect())
            .collect();
        to_i64_rows(&integer_kernel(&rows, self.rank()))
    }

    pub fn is_even_integral(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }
}

pub(crate) fn to_i64_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|r| r.iter().map(|x| i64::try_from(x).expect("entry fits in i64")).collect())
        .collect()
}

/// Row-space equality of integer bases via Hermite normal form.
pub fn same_lattice(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let big = |m: &[Vec<i64>]| -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    };
    hnf(&big(a)) == hnf(&big(b))
}

pub fn hyperbolic() -> EvenLattice {
    EvenLattice::new(vec![vec![0, 1], vec![1, 0]]).expect("U")
}

/// E8 Cartan matrix (Bourbaki labels: chain 1-3-4-5-6-7-8, node 2 on node 4), negated.
pub fn e8_negative() -> EvenLattice {
    let edges = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for &(a, b) in &edges {
        g[a][b] = 1;
        g[b][a] = 1;
    }
    EvenLattice::new(g).expect("E8")
}

pub fn diagonal(entries: &[i64]) -> EvenLattice {
    let n = entries.len();
    let g = (0..n)
        .map(|i| (0..n).map(|j| if i == j { entries[i] } else { 0 }).collect())
        .collect();
    EvenLattice::new(g).expect("nondegenerate diagonal")
}

pub fn int_vec(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Q.from_i64(x)).collect()
}

/// A rational matrix preserving a lattice's form; columns are images of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalIsometry {
    matrix: Matrix,
    integral: bool,
}

impl RationalIsometry {
    /// Checks Mᵀ G M = G exactly.
    pub fn new(lattice: &EvenLattice, matrix: Matrix) -> Result<RationalIsometry> {
        let n = lattice.rank();
        if matrix.rows() != n || matrix.cols() != n || !matrix.field().is_rational() {
            return Err(Error::Shape(format!("isometry of a rank-{n} lattice needs an {n}x{n} rational matrix")));
        }
        let g = lattice.gram_matrix();
        if matrix.transpose().mul(&g)?.mul(&matrix)? != g {
            return Err(Error::Precondition("matrix does not preserve the form".into()));
        }
        let integral = matrix.is_integral();
        Ok(RationalIsometry { matrix, integral })
    }

    pub fn identity(n: usize) -> RationalIsometry {
        RationalIsometry {
            matrix: Matrix::identity(n, Q),
            integral: true,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(x).expect("matching dimension")
    }

    pub fn apply_int(&self, x: &[i64]) -> Vec<Scalar> {
        self.apply(&int_vec(x))
    }

    /// self ∘ other
    pub fn compose(&self, other: &RationalIsometry) -> RationalIsometry {
        let matrix = self.matrix.mul(&other.matrix).expect("matching dimension");
        let integral = matrix.is_integral();
        RationalIsometry { matrix, integral }
    }

    pub fn negate(&self) -> RationalIsometry {
        RationalIsometry {
            matrix: self.matrix.scale(&Q.from_i64(-1)),
            integral: self.integral,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.matrix.rows(), Q)
    }
}

/// r_γ(x) = −x + (2(x,γ)/(γ,γ))·γ.
pub fn reflection(lattice: &EvenLattice, gamma: &[i64]) -> Result<RationalIsometry> {
    let n = lattice.rank();
    if gamma.len() != n {
        return Err(Error::Shape(format!("vector of length {} in rank {n}", gamma.len())));
    }
    let gg = lattice.norm(gamma);
    if gg == 0 {
        return Err(Error::Isotropy("reflection in an isotropic vector".into()));
    }
    let gx = lattice.gram_times(gamma);
    let coef = Q.ratio(2, gg).expect("nonzero");
    let mut m = Matrix::zeros(n, n, Q);
    for i in 0..n {
        for j in 0..n {
            let mut v = &coef * &Q.from_i64(gamma[i] * gx[j]);
            if i == j {
                v = v - Q.one();
            }
            m.set(i, j, v);
        }
    }
    let integral = m.is_integral();
    Ok(RationalIsometry { matrix: m, integral })
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    rank: usize,
    gram: Vec<Vec<i64>>,
    #[serde(default)]
    labels: BTreeMap<String, usize>,
}

impl From<EvenLattice> for LatticeJson {
    fn from(l: EvenLattice) -> LatticeJson {
        LatticeJson {
            rank: l.rank(),
            gram: l.gram,
            labels: l.labels,
        }
    }
}

impl TryFrom<LatticeJson> for EvenLattice {
    type Error = Error;

    fn try_from(j: LatticeJson) -> Result<EvenLattice> {
        if j.gram.len() != j.rank {
            return Err(Error::Shape(format!("rank {} but {} Gram rows", j.rank, j.gram.len())));
        }
        if let Some((k, v)) = j.labels.iter().find(|(_, v)| **v >= j.rank) {
            return Err(Error::Shape(format!("label {k} points at index {v}")));
        }
        let mut l = EvenLattice::new(j.gram)?;
        l.labels = j.labels;
        Ok(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_determinants() {
        assert_eq!(hyperbolic().det(), BigInt::from(-1));
        assert_eq!(e8_negative().det(), BigInt::from(1));
        let lam = EvenLattice::direct_sum_all(&[
            hyperbolic(),
            hyperbolic(),
            e8_negative(),
            e8_negative(),
            diagonal(&[-2, -2]),
        ]);
        assert_eq!(lam.det(), BigInt::from(4));
    }

    #[test]
    fn validation() {
        assert!(matches!(EvenLattice::new(vec![vec![1]]), Err(Error::Precondition(_))));
        assert!(matches!(EvenLattice::new(vec![vec![0, 0], vec![0, 0]]), Err(Error::Degenerate(_))));
        assert!(matches!(EvenLattice::new(vec![vec![0, 1], vec![2, 0]]), Err(Error::NotSymmetric)));
    }

    #[test]
    fn reflection_properties() {
        let l = diagonal(&[-2, -2]);
        let zeta = [1, 2];
        let r = reflection(&l, &zeta).unwrap();
        // r_ζ(e1) = −3/5 e1 + 4/5 e2
        let img = r.apply_int(&[1, 0]);
        assert_eq!(img[0], Q.ratio(-3, 5).unwrap());
        assert_eq!(img[1], Q.ratio(4, 5).unwrap());
        assert_eq!(r.apply_int(&zeta), int_vec(&zeta));
        assert!(r.compose(&r).is_identity());
        assert!(!r.is_integral());
        assert!(RationalIsometry::new(&l, r.matrix().clone()).is_ok());
        let re1 = reflection(&l, &[1, 0]).unwrap();
        assert!(re1.is_integral());
        let u = hyperbolic();
        assert!(matches!(reflection(&u, &[1, 0]), Err(Error::Isotropy(_))));
    }

    #[test]
    fn complements_and_json() {
        let u = hyperbolic();
        let perp = u.orthogonal_complement(&[vec![1, 1]]);
        assert_eq!(perp, vec![vec![1, -1]]);
        assert_eq!(u.sublattice(&perp).unwrap().gram(), &[vec![-2]]);
        let l = e8_negative().with_labels(&[("a1", 0)]);
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(serde_json::from_str::<EvenLattice>(&s).unwrap(), l);
    }
}
