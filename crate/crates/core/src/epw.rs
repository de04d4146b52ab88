//! EPW sextics: the determinantal equation of Y_A, corank classification of
//! points, and the duality between A and its annihilator.
//!
//! The sextic on chart k comes from the 10×10 matrix
//! M(x)_{r,(ij)} = ω(x∧e_i∧e_j, a_r), i<j, i,j ≠ k, which represents
//! F_x → ∧³V/A ≅ A^∨ in the frame {x∧e_i∧e_j}. That frame degenerates with
//! corank 4 on {x_k = 0}, so det M = x_k⁴·s(x) with s the sextic.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::matrix::rank_fp;
use crate::exactalg::{poly_determinant, Field, Matrix, MultiPoly, Scalar};
use crate::exterior::{
    basis, exterior_cube, fiber_f, fiber_frame, graph_lagrangian, omega_rows, wedge_sign, Ambient,
    ExtIndex, KVector, LagrangianSubspace, DIM, HALF, TRI,
};
use crate::sampler::SeededSampler;

/// Exponent of the chart factor x_k removed from the degree-10 determinant.
pub const CHART_FACTOR_EXPONENT: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SexticResult {
    Polynomial(MultiPoly),
    IdenticallyZero,
}

impl SexticResult {
    pub fn polynomial(&self) -> Option<&MultiPoly> {
        match self {
            SexticResult::Polynomial(p) => Some(p),
            SexticResult::IdenticallyZero => None,
        }
    }

    pub fn is_identically_zero(&self) -> bool {
        matches!(self, SexticResult::IdenticallyZero)
    }

    /// Serialized as a polynomial; the zero polynomial (empty term list) marks the degenerate case.
    pub fn to_poly(&self, field: Field) -> MultiPoly {
        match self {
            SexticResult::Polynomial(p) => p.clone(),
            SexticResult::IdenticallyZero => MultiPoly::zero(DIM, field),
        }
    }

    pub fn from_poly(p: MultiPoly) -> SexticResult {
        if p.is_zero() {
            SexticResult::IdenticallyZero
        } else {
            SexticResult::Polynomial(p)
        }
    }
}

fn check_point(a: &LagrangianSubspace, v: &[Scalar]) -> Result<()> {
    if v.len() != DIM {
        return Err(Error::Shape(format!("point of length {}", v.len())));
    }
    if let Some(bad) = v.iter().find(|x| x.field() != a.field()) {
        return Err(Error::Context(format!(
            "point over {} for a subspace over {}",
            bad.field(),
            a.field()
        )));
    }
    if v.iter().all(Scalar::is_zero) {
        return Err(Error::Degenerate("zero vector".into()));
    }
    Ok(())
}

/// dim(F_v ∩ A) = 20 − rank[F_v; A].
pub fn corank_at(a: &LagrangianSubspace, v: &[Scalar]) -> Result<usize> {
    check_point(a, v)?;
    let k = v.iter().position(|x| !x.is_zero()).expect("nonzero");
    let f = fiber_frame(v, k)?;
    Ok(TRI - f.vstack(a.basis())?.rank())
}

/// The matrix M(x) on chart k (zero-based) with linear polynomial entries.
pub fn chart_matrix(a: &LagrangianSubspace, k: usize) -> Result<Vec<Vec<MultiPoly>>> {
    if k >= DIM {
        return Err(Error::Shape(format!("chart index {} out of range", k + 1)));
    }
    let field = a.field();
    // ω(e_l∧e_i∧e_j, a_r) for each frame pair (i,j) and each l.
    let e3: Vec<Vec<Scalar>> = basis(3)
        .into_iter()
        .map(|idx| KVector::basis_vector(idx, a.ambient(), field).coords().to_vec())
        .collect();
    let pos3 = |mask: u8| ExtIndex::from_mask(mask).position();
    let mut m = Vec::with_capacity(HALF);
    for r in 0..HALF {
        let ar = a.basis().row(r);
        let mut row = Vec::with_capacity(HALF);
        for i in 0..DIM {
            for j in i + 1..DIM {
                if i == k || j == k {
                    continue;
                }
                let mut terms = Vec::new();
                for l in 0..DIM {
                    if l == i || l == j {
                        continue;
                    }
                    let mask = (1u8 << l) | (1u8 << i) | (1u8 << j);
                    let sign = wedge_sign(1 << l, (1 << i) | (1 << j));
                    let w = omega_rows(&e3[pos3(mask)], ar);
                    if w.is_zero() {
                        continue;
                    }
                    let mut exp = vec![0u32; DIM];
                    exp[l] = 1;
                    terms.push((exp, if sign > 0 { w } else { -w }));
                }
                row.push(MultiPoly::from_terms(DIM, field, terms)?);
            }
        }
        m.push(row);
    }
    Ok(m)
}

/// The normalized sextic of Y_A computed on chart `chart` (one-based).
pub fn sextic_equation(a: &LagrangianSubspace, chart: usize) -> Result<SexticResult> {
    if !(1..=DIM).contains(&chart) {
        return Err(Error::Shape(format!("chart must be in 1..=6, got {chart}")));
    }
    let k = chart - 1;
    let det = poly_determinant(chart_matrix(a, k)?)?;
    if det.is_zero() {
        return Ok(SexticResult::IdenticallyZero);
    }
    if !det.is_homogeneous() || det.total_degree() != Some(10) {
        return Err(Error::Internal(format!(
            "chart determinant has degree {:?}, expected homogeneous degree 10",
            det.total_degree()
        )));
    }
    let mut exp = vec![0u32; DIM];
    exp[k] = CHART_FACTOR_EXPONENT;
    let factor = MultiPoly::from_terms(DIM, a.field(), vec![(exp, a.field().one())])?;
    let s = det.divide_exact(&factor).map_err(|e| match e {
        Error::NotDivisible { remainder } => Error::Internal(format!(
            "chart determinant not divisible by x{chart}^4 ({} remainder terms)",
            remainder.len()
        )),
        other => other,
    })?;
    Ok(SexticResult::Polynomial(s.normalize_monic()))
}

/// Basis (5×6 rows) of the hyperplane ker φ.
pub fn hyperplane_kernel(phi: &[Scalar]) -> Result<Matrix> {
    if phi.len() != DIM || phi.iter().all(Scalar::is_zero) {
        return Err(Error::Degenerate("hyperplane needs a nonzero covector".into()));
    }
    let field = phi[0].field();
    let row = Matrix::new(1, DIM, field, phi.to_vec())?;
    Ok(row.rank_and_kernel().1.transpose())
}

/// The covector (up to scale) cutting out a 5-dimensional W.
pub fn hyperplane_functional(w: &Matrix) -> Result<Vec<Scalar>> {
    check_hyperplane(w)?;
    let (_, k) = w.rank_and_kernel();
    Ok(k.column(0))
}

fn check_hyperplane(w: &Matrix) -> Result<()> {
    if w.cols() != DIM || w.rank() != DIM - 1 {
        return Err(Error::Shape(format!(
            "expected a 5-dimensional subspace of V, got {} rows of rank {}",
            w.rows(),
            w.rank()
        )));
    }
    Ok(())
}

/// Whether ∧³W ∩ A ≠ 0 for a 5-dimensional W given by spanning rows.
pub fn dual_membership(a: &LagrangianSubspace, w: &Matrix) -> Result<bool> {
    check_hyperplane(w)?;
    let basis5 = w.rref().0;
    let cube = exterior_cube(&basis5)?;
    Ok(cube.vstack(a.basis())?.rank() < TRI)
}

/// A nonzero trivector in F_v ∩ A, if any.
pub fn intersection_vector(a: &LagrangianSubspace, v: &[Scalar]) -> Result<Option<KVector>> {
    check_point(a, v)?;
    let k = v.iter().position(|x| !x.is_zero()).expect("nonzero");
    let f = fiber_frame(v, k)?;
    let stack = f.vstack(a.basis())?;
    let left = stack.left_kernel();
    if left.rows() == 0 {
        return Ok(None);
    }
    // y·[F; A] = 0 gives Σ y_i f_i = −Σ y_{10+j} a_j ∈ F_v ∩ A.
    let field = a.field();
    let mut coords = vec![field.zero(); TRI];
    for i in 0..HALF {
        let y = left.get(0, i);
        if y.is_zero() {
            continue;
        }
        for (c, fc) in coords.iter_mut().zip(f.row(i)) {
            *c = &*c + &(y * fc);
        }
    }
    Ok(Some(KVector::new(3, a.ambient(), field, coords)?))
}

#[derive(Clone, Debug)]
pub struct Tangent {
    /// Rows spanning the tangent hyperplane W.
    pub w: Matrix,
    /// Spans F_v ∩ A.
    pub alpha: KVector,
}

/// Tangent hyperplane to Y_A at a corank-1 point with nonzero gradient.
pub fn tangent_hyperplane(a: &LagrangianSubspace, s: &MultiPoly, v: &[Scalar]) -> Result<Tangent> {
    let c = corank_at(a, v)?;
    if c != 1 {
        return Err(Error::NotSmooth(format!("corank {c}")));
    }
    let (_, grad) = s.eval_grad(v)?;
    if grad.iter().all(Scalar::is_zero) {
        return Err(Error::NotSmooth("gradient vanishes".into()));
    }
    let w = hyperplane_kernel(&grad)?;
    let alpha = intersection_vector(a, v)?
        .ok_or_else(|| Error::Internal("corank 1 but empty intersection".into()))?;
    Ok(Tangent { w, alpha })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorankReport {
    pub point: Vec<String>,
    pub corank: usize,
    pub value: String,
    pub gradient: Vec<String>,
}

pub fn corank_report(a: &LagrangianSubspace, s: &MultiPoly, v: &[Scalar]) -> Result<CorankReport> {
    let corank = corank_at(a, v)?;
    let (value, gradient) = s.eval_grad(v)?;
    Ok(CorankReport {
        point: v.iter().map(Scalar::to_string).collect(),
        corank,
        value: value.to_string(),
        gradient: gradient.iter().map(Scalar::to_string).collect(),
    })
}

/// Number of points of ℙ⁵(𝔽_p).
pub fn projective_count(p: u32) -> u64 {
    let p = p as u64;
    (p.pow(6) - 1) / (p - 1)
}

/// The `index`-th point of ℙ⁵(𝔽_p) in canonical order: grouped by the position
/// of the leading 1, then the trailing coordinates read as a base-p number
/// with the last coordinate least significant.
pub fn projective_point(p: u32, mut index: u64) -> [u32; DIM] {
    let pp = p as u64;
    let mut out = [0u32; DIM];
    for lead in 0..DIM {
        let block = pp.pow((DIM - 1 - lead) as u32);
        if index < block {
            out[lead] = 1;
            for pos in (lead + 1..DIM).rev() {
                out[pos] = (index % pp) as u32;
                index /= pp;
            }
            return out;
        }
        index -= block;
    }
    panic!("point index out of range");
}

pub fn projective_points(p: u32) -> impl Iterator<Item = [u32; DIM]> {
    (0..projective_count(p)).map(move |i| projective_point(p, i))
}

pub fn point_scalars(field: Field, pt: &[u32]) -> Vec<Scalar> {
    pt.iter().map(|&x| field.from_i64(x as i64)).collect()
}

fn a_words(a: &LagrangianSubspace) -> Vec<Vec<u64>> {
    (0..HALF)
        .map(|i| {
            a.basis()
                .row(i)
                .iter()
                .map(|s| s.residue().expect("prime field") as u64)
                .collect()
        })
        .collect()
}

fn corank_words(aw: &[Vec<u64>], pt: &[u32; DIM], p: u32) -> u8 {
    let field = Field::Prime(p);
    let v = point_scalars(field, pt);
    let k = pt.iter().position(|&x| x != 0).expect("nonzero");
    let f = fiber_frame(&v, k).expect("valid frame");
    let mut rows: Vec<Vec<u64>> = (0..HALF)
        .map(|i| f.row(i).iter().map(|s| s.residue().expect("prime field") as u64).collect())
        .collect();
    rows.extend(aw.iter().cloned());
    (TRI - rank_fp(&mut rows, TRI, p as u64)) as u8
}

/// A over 𝔽_p: reduced from ℚ if needed, checked to stay Lagrangian.
pub fn lagrangian_mod(a: &LagrangianSubspace, p: u32) -> Result<LagrangianSubspace> {
    match a.field() {
        Field::Prime(q) if q == p => Ok(a.clone()),
        Field::Prime(q) => Err(Error::Context(format!("subspace over F_{q}, census over F_{p}"))),
        Field::Rational => a.reduce_mod(p),
    }
}

/// Corank at every point of ℙ⁵(𝔽_p), in canonical point order. Contiguous
/// index ranges run in parallel and are concatenated in order.
pub fn corank_map(a: &LagrangianSubspace, p: u32) -> Result<Vec<u8>> {
    Field::prime(p as u64)?;
    let ap = lagrangian_mod(a, p)?;
    let aw = a_words(&ap);
    let total = projective_count(p);
    let chunk = 256u64;
    let ranges: Vec<(u64, u64)> = (0..total.div_ceil(chunk))
        .map(|c| (c * chunk, ((c + 1) * chunk).min(total)))
        .collect();
    let parts: Vec<Vec<u8>> = ranges
        .par_iter()
        .map(|&(lo, hi)| {
            (lo..hi)
                .map(|i| corank_words(&aw, &projective_point(p, i), p))
                .collect()
        })
        .collect();
    Ok(parts.concat())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusTable {
    pub p: u32,
    pub total: u64,
    pub by_corank: BTreeMap<usize, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lagrangian: Option<String>,
}

impl CensusTable {
    pub fn count(&self, corank: usize) -> u64 {
        self.by_corank.get(&corank).copied().unwrap_or(0)
    }

    pub fn count_at_least(&self, corank: usize) -> u64 {
        self.by_corank.range(corank..).map(|(_, n)| n).sum()
    }
}

pub fn corank_census(a: &LagrangianSubspace, p: u32) -> Result<CensusTable> {
    let map = corank_map(a, p)?;
    Ok(census_from_map(p, &map))
}

pub fn census_from_map(p: u32, map: &[u8]) -> CensusTable {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for &c in map {
        *counts.entry(c as usize).or_default() += 1;
    }
    CensusTable {
        p,
        total: map.len() as u64,
        by_corank: counts,
        lagrangian: None,
    }
}

/// Multiplicity of the hypersurface s = 0 at a point: lowest degree of the
/// expansion in an affine chart centred there.
pub fn multiplicity_at(s: &MultiPoly, point: &[Scalar]) -> Result<u32> {
    if s.is_zero() {
        return Err(Error::Undefined("multiplicity on the zero polynomial".into()));
    }
    if !s.eval(point)?.is_zero() {
        return Err(Error::NotOnHypersurface);
    }
    let k = point
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::Degenerate("zero point".into()))?;
    let inv = point[k].inv().expect("nonzero");
    let mut shift: Vec<Scalar> = point.iter().map(|x| x * &inv).collect();
    shift[k] = s.field().zero();
    s.dehomogenize(k).translate(&shift)?.lowest_degree()
}

/// Graph Lagrangian of a seeded symmetric matrix (entries uniform in 𝔽_p,
/// or integers in [−bound, bound] over ℚ).
pub fn sample_lagrangian(sampler: &mut SeededSampler, field: Field, bound: i64) -> Result<LagrangianSubspace> {
    let s = sampler.symmetric_matrix(field, HALF, bound);
    graph_lagrangian(&s)
}

/// The fiber F_v as a Lagrangian subspace.
pub fn fiber_lagrangian(v: &[Scalar]) -> Result<LagrangianSubspace> {
    LagrangianSubspace::new(Ambient::V, fiber_f(v)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::annihilator;

    fn unit(i: usize, field: Field) -> Vec<Scalar> {
        (0..DIM).map(|j| field.from_i64((i == j) as i64)).collect()
    }

    #[test]
    fn coranks_of_a_coordinate_fiber() {
        let q = Field::Rational;
        let a = fiber_lagrangian(&unit(0, q)).unwrap();
        assert_eq!(corank_at(&a, &unit(0, q)).unwrap(), 10);
        assert_eq!(corank_at(&a, &unit(1, q)).unwrap(), 4);
        let zero = vec![q.zero(); DIM];
        assert!(matches!(corank_at(&a, &zero), Err(Error::Degenerate(_))));
    }

    #[test]
    fn degenerate_sextic() {
        let q = Field::Rational;
        let a = fiber_lagrangian(&unit(0, q)).unwrap();
        assert!(sextic_equation(&a, 1).unwrap().is_identically_zero());
        assert!(sextic_equation(&a, 2).unwrap().is_identically_zero());
    }

    #[test]
    fn point_enumeration() {
        assert_eq!(projective_count(3), 364);
        assert_eq!(projective_count(5), 3906);
        let pts: Vec<_> = projective_points(3).collect();
        assert_eq!(pts[0], [1, 0, 0, 0, 0, 0]);
        assert_eq!(pts[1], [1, 0, 0, 0, 0, 1]);
        assert_eq!(*pts.last().unwrap(), [0, 0, 0, 0, 0, 1]);
        let mut sorted = pts.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 364);
    }

    #[test]
    fn sextic_over_f3_matches_coranks() {
        let f = Field::Prime(3);
        let mut s = SeededSampler::new(11);
        let a = sample_lagrangian(&mut s, f, 0).unwrap();
        let sx = sextic_equation(&a, 1).unwrap();
        let poly = sx.polynomial().expect("nonzero sextic");
        assert!(poly.is_homogeneous());
        assert_eq!(poly.total_degree(), Some(6));
        let map = corank_map(&a, 3).unwrap();
        for (i, c) in map.iter().enumerate() {
            let v = point_scalars(f, &projective_point(3, i as u64));
            assert_eq!(poly.eval(&v).unwrap().is_zero(), *c >= 1);
        }
        assert_eq!(sextic_equation(&a, 2).unwrap(), sx);
    }

    #[test]
    fn duality_on_a_coordinate_case() {
        let q = Field::Rational;
        let a = fiber_lagrangian(&unit(0, q)).unwrap();
        let w = Matrix::identity(DIM, q).select_rows(&[0, 1, 2, 3, 4]);
        assert!(dual_membership(&a, &w).unwrap());
        let bad = Matrix::identity(DIM, q).select_rows(&[0, 1, 2, 3]);
        assert!(matches!(dual_membership(&a, &bad), Err(Error::Shape(_))));
        let perp = annihilator(&a).unwrap();
        assert_eq!(perp.ambient(), Ambient::VDual);
    }

    #[test]
    fn multiplicity_of_a_split_sextic() {
        let q = Field::Rational;
        let s = MultiPoly::from_terms(DIM, q, vec![(vec![1; DIM], q.one())]).unwrap();
        // At e1 five of the six factors vanish.
        assert_eq!(multiplicity_at(&s, &unit(0, q)).unwrap(), 5);
        let pt = vec![q.one(), q.one(), q.zero(), q.zero(), q.one(), q.one()];
        assert_eq!(multiplicity_at(&s, &pt).unwrap(), 2);
        let off = vec![q.one(); DIM];
        assert!(matches!(multiplicity_at(&s, &off), Err(Error::NotOnHypersurface)));
    }
}
