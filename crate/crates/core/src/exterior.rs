//! Exterior algebra of a fixed six-dimensional space V.
//!
//! Basis k-vectors e_I are indexed by k-subsets I of {1..6}, stored as bit
//! masks (bit i-1 for e_i) and ordered lexicographically. The volume forms are
//! vol(e₁∧…∧e₆) = 1 on V and vol^∨(e¹∧…∧e⁶) = 1 on V^∨, and ∧³V^∨ pairs with
//! ∧³V by ⟨e^J, e_I⟩ = δ_{JI}.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix, Scalar};

pub const DIM: usize = 6;
/// dim ∧³V
pub const TRI: usize = 20;
/// dim of a Lagrangian subspace of ∧³V
pub const HALF: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ambient {
    #[serde(rename = "V")]
    V,
    #[serde(rename = "Vdual")]
    VDual,
}

impl Ambient {
    pub fn dual(self) -> Ambient {
        match self {
            Ambient::V => Ambient::VDual,
            Ambient::VDual => Ambient::V,
        }
    }
}

/// A strictly increasing index tuple, e.g. (1,2,4) for e₁∧e₂∧e₄.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtIndex {
    mask: u8,
}

impl ExtIndex {
    /// From one-based indices in any order; rejects repeats and out-of-range entries.
    pub fn new(indices: &[usize]) -> Result<ExtIndex> {
        let mut mask = 0u8;
        for &i in indices {
            if !(1..=DIM).contains(&i) || mask & (1 << (i - 1)) != 0 {
                return Err(Error::Grading(format!("bad index tuple {indices:?}")));
            }
            mask |= 1 << (i - 1);
        }
        Ok(ExtIndex { mask })
    }

    pub fn from_mask(mask: u8) -> ExtIndex {
        assert!(mask < 64, "mask out of range");
        ExtIndex { mask }
    }

    pub fn mask(self) -> u8 {
        self.mask
    }

    pub fn grade(self) -> usize {
        self.mask.count_ones() as usize
    }

    /// One-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..DIM).filter(|i| self.mask & (1 << i) != 0).map(|i| i + 1).collect()
    }

    /// Position among the basis monomials of the same grade.
    pub fn position(self) -> usize {
        tables().position[self.mask as usize]
    }

    pub fn complement(self) -> ExtIndex {
        ExtIndex { mask: !self.mask & 0x3f }
    }
}

impl fmt::Display for ExtIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "e{s}")
    }
}

struct Tables {
    basis: [Vec<u8>; DIM + 1],
    position: [usize; 64],
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let mut basis: [Vec<u8>; DIM + 1] = Default::default();
        // Lex order on increasing tuples = order of reversed bit strings.
        let mut masks: Vec<u8> = (0u8..64).collect();
        masks.sort_by_key(|&m| {
            let idx: Vec<usize> = (0..DIM).filter(|i| m & (1 << i) != 0).collect();
            (m.count_ones(), idx)
        });
        let mut position = [0usize; 64];
        for m in masks {
            let k = m.count_ones() as usize;
            position[m as usize] = basis[k].len();
            basis[k].push(m);
        }
        Tables { basis, position }
    })
}

/// Basis index tuples of ∧^k in lexicographic order.
pub fn basis(k: usize) -> Vec<ExtIndex> {
    tables().basis[k].iter().map(|&m| ExtIndex { mask: m }).collect()
}

pub fn binomial6(k: usize) -> usize {
    tables().basis[k].len()
}

/// Sign of e_I ∧ e_J relative to e_{I∪J}; zero if they overlap.
pub fn wedge_sign(i: u8, j: u8) -> i32 {
    if i & j != 0 {
        return 0;
    }
    // Count pairs (a ∈ I, b ∈ J) with a > b.
    let mut inversions = 0;
    for b in 0..DIM {
        if j & (1 << b) != 0 {
            inversions += (i >> (b + 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A homogeneous element of ∧^k V or ∧^k V^∨.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KVector {
    grade: usize,
    ambient: Ambient,
    field: Field,
    coords: Vec<Scalar>,
}

/// An element of ∧³V (or ∧³V^∨), 20 coordinates over the e_I basis.
pub type Trivector = KVector;

impl KVector {
    pub fn new(grade: usize, ambient: Ambient, field: Field, coords: Vec<Scalar>) -> Result<KVector> {
        if grade > DIM {
            return Err(Error::Grading(format!("grade {grade} exceeds {DIM}")));
        }
        if coords.len() != binomial6(grade) {
            return Err(Error::Shape(format!(
                "grade {grade} needs {} coordinates, got {}",
                binomial6(grade),
                coords.len()
            )));
        }
        if let Some(bad) = coords.iter().find(|s| s.field() != field) {
            return Err(Error::Context(format!("coordinate over {} in a {field} vector", bad.field())));
        }
        Ok(KVector {
            grade,
            ambient,
            field,
            coords,
        })
    }

    pub fn zero(grade: usize, ambient: Ambient, field: Field) -> KVector {
        KVector {
            grade,
            ambient,
            field,
            coords: vec![field.zero(); binomial6(grade)],
        }
    }

    pub fn basis_vector(idx: ExtIndex, ambient: Ambient, field: Field) -> KVector {
        let mut v = KVector::zero(idx.grade(), ambient, field);
        v.coords[idx.position()] = field.one();
        v
    }

    /// e_{i1}∧…∧e_{ik} from one-based indices, with the sign of sorting them.
    pub fn monomial(indices: &[usize], ambient: Ambient, field: Field) -> Result<KVector> {
        let idx = ExtIndex::new(indices)?;
        let mut sign = 1;
        let mut acc = 0u8;
        for &i in indices {
            let bit = 1u8 << (i - 1);
            sign *= wedge_sign(acc, bit);
            acc |= bit;
        }
        let mut v = KVector::basis_vector(idx, ambient, field);
        if sign < 0 {
            v.coords[idx.position()] = -field.one();
        }
        Ok(v)
    }

    /// A vector of V (or V^∨) as a 1-vector.
    pub fn vector(coords: &[Scalar], ambient: Ambient) -> Result<KVector> {
        let field = coords
            .first()
            .map(Scalar::field)
            .ok_or_else(|| Error::Shape("empty vector".into()))?;
        KVector::new(1, ambient, field, coords.to_vec())
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coeff(&self, idx: ExtIndex) -> &Scalar {
        &self.coords[idx.position()]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    fn check_pair(&self, other: &KVector) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Ambient(format!(
                "{:?} against {:?}",
                self.ambient, other.ambient
            )));
        }
        if self.field != other.field {
            return Err(Error::Context(format!("{} against {}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn add(&self, other: &KVector) -> Result<KVector> {
        self.check_pair(other)?;
        if self.grade != other.grade {
            return Err(Error::Grading(format!("adding grades {} and {}", self.grade, other.grade)));
        }
        Ok(KVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, s: &Scalar) -> KVector {
        KVector {
            coords: self.coords.iter().map(|a| a * s).collect(),
            ..self.clone()
        }
    }

    /// a ∧ b; errors when the grades add past 6.
    pub fn wedge(&self, other: &KVector) -> Result<KVector> {
        self.check_pair(other)?;
        let k = self.grade + other.grade;
        if k > DIM {
            return Err(Error::Grading(format!(
                "wedge of grades {} and {} exceeds {DIM}",
                self.grade, other.grade
            )));
        }
        let t = tables();
        let mut out = KVector::zero(k, self.ambient, self.field);
        for (a, ca) in t.basis[self.grade].iter().zip(&self.coords) {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in t.basis[other.grade].iter().zip(&other.coords) {
                let s = wedge_sign(*a, *b);
                if s == 0 || cb.is_zero() {
                    continue;
                }
                let pos = t.position[(a | b) as usize];
                let prod = ca * cb;
                out.coords[pos] = if s > 0 { &out.coords[pos] + &prod } else { &out.coords[pos] - &prod };
            }
        }
        Ok(out)
    }

    /// Interior product ι_φ from the left by a covector: ι_φ(v∧w) = φ(v)w − v∧ι_φ(w).
    pub fn contract(&self, phi: &[Scalar]) -> Result<KVector> {
        if self.grade == 0 {
            return Err(Error::Grading("contraction of a scalar".into()));
        }
        if phi.len() != DIM {
            return Err(Error::Shape(format!("covector of length {}", phi.len())));
        }
        let t = tables();
        let mut out = KVector::zero(self.grade - 1, self.ambient, self.field);
        for (m, c) in t.basis[self.grade].iter().zip(&self.coords) {
            if c.is_zero() {
                continue;
            }
            // Removing the s-th factor (zero-based) costs (−1)^s.
            let mut s = 0;
            for i in 0..DIM {
                if m & (1 << i) == 0 {
                    continue;
                }
                if !phi[i].is_zero() {
                    let pos = t.position[(m & !(1 << i)) as usize];
                    let term = c * &phi[i];
                    out.coords[pos] = if s % 2 == 0 { &out.coords[pos] + &term } else { &out.coords[pos] - &term };
                }
                s += 1;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for KVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = basis(self.grade)
            .into_iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}*{i}"))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// ω(α, β) = vol(α∧β) for trivectors over the same ambient.
pub fn symplectic_form(a: &Trivector, b: &Trivector) -> Result<Scalar> {
    if a.grade != 3 || b.grade != 3 {
        return Err(Error::Grading("symplectic form needs trivectors".into()));
    }
    let top = a.wedge(b)?;
    Ok(top.coords[0].clone())
}

/// ω between raw coordinate rows, without building `KVector`s.
pub fn omega_rows(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let t = tables();
    let field = a[0].field();
    let mut acc = field.zero();
    for (pa, &ma) in t.basis[3].iter().enumerate() {
        if a[pa].is_zero() {
            continue;
        }
        let mc = !ma & 0x3f;
        let pb = t.position[mc as usize];
        if b[pb].is_zero() {
            continue;
        }
        let prod = &a[pa] * &b[pb];
        acc = if wedge_sign(ma, mc) > 0 { &acc + &prod } else { &acc - &prod };
    }
    acc
}

/// The 20×20 matrix of ω on the e_I basis.
pub fn omega_matrix(field: Field) -> Matrix {
    let t = tables();
    let mut m = Matrix::zeros(TRI, TRI, field);
    for (p, &mi) in t.basis[3].iter().enumerate() {
        let mc = !mi & 0x3f;
        m.set(p, t.position[mc as usize], field.from_i64(wedge_sign(mi, mc) as i64));
    }
    m
}

/// ω-Gram matrix of the rows of `m` (each a trivector).
pub fn omega_gram(m: &Matrix) -> Result<Matrix> {
    if m.cols() != TRI {
        return Err(Error::Shape(format!("trivector rows need {TRI} columns, got {}", m.cols())));
    }
    let n = m.rows();
    let mut g = Matrix::zeros(n, n, m.field());
    for i in 0..n {
        for j in i + 1..n {
            let w = omega_rows(m.row(i), m.row(j));
            g.set(j, i, -&w);
            g.set(i, j, w);
        }
    }
    Ok(g)
}

/// Rank exactly 10 and vanishing ω-Gram matrix.
pub fn is_lagrangian(m: &Matrix) -> bool {
    m.cols() == TRI
        && m.rows() == HALF
        && m.rank() == HALF
        && omega_gram(m).map(|g| g.is_zero()).unwrap_or(false)
}

/// A 10-dimensional ω-isotropic subspace of ∧³V or ∧³V^∨, stored by a basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LagrangianJson", into = "LagrangianJson")]
pub struct LagrangianSubspace {
    ambient: Ambient,
    basis: Matrix,
}

impl LagrangianSubspace {
    /// Validates rank and isotropy.
    pub fn new(ambient: Ambient, basis: Matrix) -> Result<LagrangianSubspace> {
        if basis.rows() != HALF || basis.cols() != TRI {
            return Err(Error::Shape(format!(
                "Lagrangian basis must be {HALF}x{TRI}, got {}x{}",
                basis.rows(),
                basis.cols()
            )));
        }
        if basis.rank() != HALF {
            return Err(Error::Degenerate("Lagrangian basis has rank below 10".into()));
        }
        if !omega_gram(&basis)?.is_zero() {
            return Err(Error::Isotropy("basis is not ω-isotropic".into()));
        }
        Ok(LagrangianSubspace { ambient, basis })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn same_subspace(&self, other: &LagrangianSubspace) -> bool {
        self.ambient == other.ambient
            && self.field() == other.field()
            && self.basis.same_row_space(&other.basis).unwrap_or(false)
    }

    pub fn contains(&self, t: &Trivector) -> Result<bool> {
        if t.ambient() != self.ambient {
            return Err(Error::Ambient("trivector and subspace live in different spaces".into()));
        }
        let row = Matrix::new(1, TRI, t.field(), t.coords().to_vec())?;
        Ok(self.basis.vstack(&row)?.rank() == HALF)
    }

    /// Reduction mod p: rows are made primitive integral, reduced, and re-checked.
    pub fn reduce_mod(&self, p: u32) -> Result<LagrangianSubspace> {
        let target = Field::prime(p as u64)?;
        if self.field() == target {
            return Ok(self.clone());
        }
        if !self.field().is_rational() {
            return Err(Error::Context(format!("cannot reduce a {} subspace mod {p}", self.field())));
        }
        let mut rows = Vec::with_capacity(HALF);
        for r in 0..HALF {
            rows.push(primitive_row(self.basis.row(r)));
        }
        let reduced = Matrix::from_bigint_rows(target, &rows)?;
        LagrangianSubspace::new(self.ambient, reduced).map_err(|e| Error::Reduction {
            p,
            reason: e.to_string(),
        })
    }
}

fn primitive_row(row: &[Scalar]) -> Vec<BigInt> {
    let rats: Vec<_> = row.iter().map(|s| s.as_rational().expect("rational entry")).collect();
    let l = rats.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let nums: Vec<_> = rats.iter().map(|r| r.numer() * (&l / r.denom())).collect();
    let g = nums.iter().fold(BigInt::zero(), |g, n| g.gcd(n));
    if g.is_zero() {
        return nums;
    }
    nums.into_iter().map(|n| n / &g).collect()
}

/// The Lagrangian graph of a symmetric S over the coordinate Lagrangian
/// span{e_I : 1 ∈ I}: rows p_i + Σ_j S_ij q_j with ω(p_i, q_j) = δ_ij.
pub fn graph_lagrangian(s: &Matrix) -> Result<LagrangianSubspace> {
    if s.rows() != HALF || s.cols() != HALF {
        return Err(Error::Shape(format!("graph chart needs a 10x10 matrix, got {}x{}", s.rows(), s.cols())));
    }
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let field = s.field();
    let t = tables();
    let ps: Vec<u8> = t.basis[3].iter().copied().filter(|m| m & 1 != 0).collect();
    let mut basis = Matrix::zeros(HALF, TRI, field);
    for i in 0..HALF {
        basis.set(i, t.position[ps[i] as usize], field.one());
        for (j, &pj) in ps.iter().enumerate() {
            let sij = s.get(i, j);
            if sij.is_zero() {
                continue;
            }
            let qj = !pj & 0x3f;
            // q_j = e_{I_j^c} / ω(e_{I_j}, e_{I_j^c})
            let c = sij * &field.from_i64(wedge_sign(pj, qj) as i64);
            basis.set(i, t.position[qj as usize], c);
        }
    }
    LagrangianSubspace::new(Ambient::V, basis)
}

/// Index k (zero-based) of the first nonzero coordinate of v.
fn first_nonzero(v: &[Scalar]) -> Result<usize> {
    if v.len() != DIM {
        return Err(Error::Shape(format!("vector of length {}", v.len())));
    }
    v.iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::Degenerate("zero vector".into()))
}

/// Basis of F_v = v∧∧²V: the 10 trivectors v∧e_i∧e_j with i<j avoiding the
/// first nonzero coordinate of v.
pub fn fiber_f(v: &[Scalar]) -> Result<Matrix> {
    let k = first_nonzero(v)?;
    fiber_frame(v, k)
}

/// Rows v∧e_i∧e_j for i<j, i,j ≠ k. Spans F_v whenever v_k ≠ 0.
pub fn fiber_frame(v: &[Scalar], k: usize) -> Result<Matrix> {
    if v.len() != DIM || k >= DIM {
        return Err(Error::Shape("bad vector or chart index".into()));
    }
    let field = v[0].field();
    if let Some(bad) = v.iter().find(|s| s.field() != field) {
        return Err(Error::Context(format!("mixed coordinates ({})", bad.field())));
    }
    let t = tables();
    let mut m = Matrix::zeros(HALF, TRI, field);
    let mut r = 0;
    for i in 0..DIM {
        for j in i + 1..DIM {
            if i == k || j == k {
                continue;
            }
            let eij = (1u8 << i) | (1u8 << j);
            for (l, vl) in v.iter().enumerate() {
                let s = wedge_sign(1 << l, eij);
                if s == 0 || vl.is_zero() {
                    continue;
                }
                let pos = t.position[(eij | (1 << l)) as usize];
                m.set(r, pos, if s > 0 { vl.clone() } else { -vl });
            }
            r += 1;
        }
    }
    Ok(m)
}

/// A^⊥ ⊂ ∧³V^∨ under the dual-basis pairing; Lagrangian for ω^∨.
pub fn annihilator(a: &LagrangianSubspace) -> Result<LagrangianSubspace> {
    let (_, k) = a.basis.rank_and_kernel();
    LagrangianSubspace::new(a.ambient.dual(), k.transpose())
}

/// Basis of the minimal W ⊂ V with α ∈ ∧³W (as rows, reduced echelon form).
pub fn support(alpha: &KVector) -> Result<Matrix> {
    if alpha.is_zero() {
        return Err(Error::Degenerate("support of the zero vector".into()));
    }
    let field = alpha.field;
    // Column i holds ι_{e^i} α.
    let n = binomial6(alpha.grade - 1);
    let mut c = Matrix::zeros(n, DIM, field);
    for i in 0..DIM {
        let mut phi = vec![field.zero(); DIM];
        phi[i] = field.one();
        let img = alpha.contract(&phi)?;
        for (r, x) in img.coords.iter().enumerate() {
            c.set(r, i, x.clone());
        }
    }
    let (_, ker) = c.rank_and_kernel();
    if ker.cols() == 0 {
        return Ok(Matrix::identity(DIM, field));
    }
    // {v : φ(v) = 0 for every φ in the kernel}
    let (_, w) = ker.transpose().rank_and_kernel();
    Ok(w.transpose().rref().0)
}

/// Basis of ∧³W for W spanned by the rows of `w` (assumed independent).
pub fn exterior_cube(w: &Matrix) -> Result<Matrix> {
    if w.cols() != DIM {
        return Err(Error::Shape(format!("subspace rows need {DIM} columns")));
    }
    let field = w.field();
    let vecs: Vec<KVector> = (0..w.rows())
        .map(|i| KVector::new(1, Ambient::V, field, w.row(i).to_vec()))
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for a in 0..vecs.len() {
        for b in a + 1..vecs.len() {
            let ab = vecs[a].wedge(&vecs[b])?;
            for c in vecs.iter().skip(b + 1) {
                rows.push(ab.wedge(c)?.coords);
            }
        }
    }
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, TRI, field));
    }
    Matrix::from_rows(field, rows)
}

#[derive(Serialize, Deserialize)]
struct LagrangianJson {
    ambient: Ambient,
    field: Field,
    basis: Vec<Vec<String>>,
}

impl From<LagrangianSubspace> for LagrangianJson {
    fn from(l: LagrangianSubspace) -> LagrangianJson {
        LagrangianJson {
            ambient: l.ambient,
            field: l.field(),
            basis: (0..HALF)
                .map(|i| l.basis.row(i).iter().map(Scalar::to_string).collect())
                .collect(),
        }
    }
}

impl TryFrom<LagrangianJson> for LagrangianSubspace {
    type Error = Error;

    fn try_from(j: LagrangianJson) -> Result<LagrangianSubspace> {
        let rows = j
            .basis
            .iter()
            .map(|r| r.iter().map(|s| j.field.parse_scalar(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_rows(j.field, rows)?;
        LagrangianSubspace::new(j.ambient, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn mono(ix: &[usize]) -> KVector {
        KVector::monomial(ix, Ambient::V, Q).unwrap()
    }

    fn unit(i: usize, field: Field) -> Vec<Scalar> {
        (0..DIM).map(|j| field.from_i64((i == j) as i64)).collect()
    }

    #[test]
    fn basis_is_lexicographic() {
        let b3: Vec<String> = basis(3).iter().map(|i| i.to_string()).collect();
        assert_eq!(b3.len(), 20);
        assert_eq!(&b3[..4], &["e123", "e124", "e125", "e126"]);
        assert_eq!(b3[19], "e456");
        assert_eq!(basis(2)[14].to_string(), "e56");
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(mono(&[1]).wedge(&mono(&[2])).unwrap(), mono(&[1, 2]));
        assert!(mono(&[1, 2]).wedge(&mono(&[1, 3])).unwrap().is_zero());
        let top = mono(&[1, 2, 3]).wedge(&mono(&[4, 5, 6])).unwrap();
        assert_eq!(top.coords()[0], Q.one());
        assert!(matches!(
            mono(&[1, 2, 3, 4]).wedge(&mono(&[5, 6, 1])),
            Err(Error::Grading(_))
        ));
        assert_eq!(mono(&[2, 1]), mono(&[1, 2]).scale(&Q.from_i64(-1)));
    }

    #[test]
    fn omega_examples() {
        let w = |a: &[usize], b: &[usize]| symplectic_form(&mono(a), &mono(b)).unwrap();
        assert_eq!(w(&[1, 2, 3], &[4, 5, 6]), Q.one());
        assert_eq!(w(&[4, 5, 6], &[1, 2, 3]), Q.from_i64(-1));
        assert!(w(&[1, 2, 3], &[1, 2, 4]).is_zero());
        let dual = KVector::monomial(&[4, 5, 6], Ambient::VDual, Q).unwrap();
        assert!(matches!(symplectic_form(&mono(&[1, 2, 3]), &dual), Err(Error::Ambient(_))));
    }

    #[test]
    fn omega_is_unimodular() {
        let d = omega_matrix(Q).determinant().unwrap();
        assert_eq!(d, Q.one());
        let g = omega_gram(&Matrix::identity(TRI, Q)).unwrap();
        assert_eq!(g, omega_matrix(Q));
    }

    #[test]
    fn coordinate_lagrangians() {
        let f1 = fiber_f(&unit(0, Q)).unwrap();
        assert!(is_lagrangian(&f1));
        let mut broken = f1.row_vecs();
        // Replacing e124 keeps e123, which pairs to 1 with e456.
        broken[1] = mono(&[4, 5, 6]).coords().to_vec();
        assert!(!is_lagrangian(&Matrix::from_rows(Q, broken).unwrap()));
        let s = Matrix::zeros(HALF, HALF, Q);
        let g = graph_lagrangian(&s).unwrap();
        assert!(g.basis().same_row_space(&f1).unwrap());
    }

    #[test]
    fn graph_of_identity_is_transverse() {
        let l = graph_lagrangian(&Matrix::identity(HALF, Q)).unwrap();
        let f1 = fiber_f(&unit(0, Q)).unwrap();
        let rows: Vec<Vec<Scalar>> = basis(3)
            .into_iter()
            .filter(|i| i.mask() & 1 == 0)
            .map(|i| KVector::basis_vector(i, Ambient::V, Q).coords().to_vec())
            .collect();
        let comp = Matrix::from_rows(Q, rows).unwrap();
        assert_eq!(l.basis().vstack(&f1).unwrap().rank(), TRI);
        assert_eq!(l.basis().vstack(&comp).unwrap().rank(), TRI);
    }

    #[test]
    fn asymmetric_graph_rejected() {
        let mut s = Matrix::zeros(HALF, HALF, Q);
        s.set(0, 1, Q.one());
        assert!(matches!(graph_lagrangian(&s), Err(Error::NotSymmetric)));
    }

    #[test]
    fn fibers() {
        let e1 = unit(0, Q);
        let two_e1: Vec<Scalar> = e1.iter().map(|x| x * &Q.from_i64(2)).collect();
        let a = fiber_f(&e1).unwrap();
        assert_eq!(a.rank(), 10);
        assert!(a.same_row_space(&fiber_f(&two_e1).unwrap()).unwrap());
        let b = fiber_f(&unit(1, Q)).unwrap();
        // dim(A ∩ B) = 10 + 10 − rank[A; B]
        assert_eq!(20 - a.vstack(&b).unwrap().rank(), 4);
        assert!(matches!(fiber_f(&[Q.zero(), Q.zero(), Q.zero(), Q.zero(), Q.zero(), Q.zero()]), Err(Error::Degenerate(_))));
    }

    #[test]
    fn annihilator_of_coordinate_lagrangian() {
        let a = LagrangianSubspace::new(Ambient::V, fiber_f(&unit(0, Q)).unwrap()).unwrap();
        let perp = annihilator(&a).unwrap();
        assert_eq!(perp.ambient(), Ambient::VDual);
        let expected: Vec<Vec<Scalar>> = basis(3)
            .into_iter()
            .filter(|i| i.mask() & 1 == 0)
            .map(|i| KVector::basis_vector(i, Ambient::VDual, Q).coords().to_vec())
            .collect();
        assert!(perp.basis().same_row_space(&Matrix::from_rows(Q, expected).unwrap()).unwrap());
        assert!(annihilator(&perp).unwrap().same_subspace(&a));
    }

    #[test]
    fn contraction_signs() {
        let e123 = mono(&[1, 2, 3]);
        assert_eq!(e123.contract(&unit(0, Q)).unwrap(), mono(&[2, 3]));
        assert!(e123.contract(&unit(3, Q)).unwrap().is_zero());
        let twice = e123.contract(&unit(1, Q)).unwrap().contract(&unit(0, Q)).unwrap();
        assert_eq!(twice, mono(&[3]).scale(&Q.from_i64(-1)));
        let phi: Vec<Scalar> = (1..=6).map(|i| Q.from_i64(i)).collect();
        let sq = e123.contract(&phi).unwrap().contract(&phi).unwrap();
        assert!(sq.is_zero());
        let scalar = KVector::new(0, Ambient::V, Q, vec![Q.one()]).unwrap();
        assert!(matches!(scalar.contract(&phi), Err(Error::Grading(_))));
    }

    #[test]
    fn supports() {
        let s = support(&mono(&[1, 2, 3])).unwrap();
        assert_eq!(s.rows(), 3);
        assert!(s.same_row_space(&Matrix::identity(6, Q).select_rows(&[0, 1, 2])).unwrap());
        let w = mono(&[2, 3]).add(&mono(&[4, 5])).unwrap();
        let alpha = mono(&[1]).wedge(&w).unwrap();
        assert_eq!(support(&alpha).unwrap().rows(), 5);
        let full = mono(&[1, 2, 3]).add(&mono(&[4, 5, 6])).unwrap();
        assert_eq!(support(&full).unwrap().rows(), 6);
        assert!(support(&KVector::zero(3, Ambient::V, Q)).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let l = graph_lagrangian(&Matrix::identity(HALF, Q)).unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert!(s.contains("\"ambient\":\"V\""));
        assert_eq!(serde_json::from_str::<LagrangianSubspace>(&s).unwrap(), l);
    }
}
