//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept sorted in descending graded-lex order (leading term first,
//! x₁ > x₂ > …), with no zero coefficients and no repeated monomials.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 16;
pub const MAX_DEGREE: u32 = 255;

/// Exponent vector packed one byte per variable, x₁ in the top byte.
///
/// Field order makes the derived `Ord` graded lexicographic: total degree
/// first, then the packed exponents compared as a big-endian integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    deg: u16,
    packed: u128,
}

impl Monomial {
    pub fn from_exponents(exp: &[u32]) -> Result<Monomial> {
        if exp.len() > MAX_VARS {
            return Err(Error::Shape(format!("at most {MAX_VARS} variables supported")));
        }
        let deg: u32 = exp.iter().sum();
        if deg > MAX_DEGREE {
            return Err(Error::Shape(format!("total degree {deg} exceeds {MAX_DEGREE}")));
        }
        let mut packed = 0u128;
        for (i, &e) in exp.iter().enumerate() {
            packed |= (e as u128) << shift(i);
        }
        Ok(Monomial {
            deg: deg as u16,
            packed,
        })
    }

    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(i: usize) -> Monomial {
        Monomial {
            deg: 1,
            packed: 1u128 << shift(i),
        }
    }

    pub fn degree(self) -> u32 {
        self.deg as u32
    }

    pub fn exponent(self, i: usize) -> u32 {
        ((self.packed >> shift(i)) & 0xff) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    /// Product of monomials. Panics past the degree cap.
    pub fn mul(self, other: Monomial) -> Monomial {
        let deg = self.deg + other.deg;
        assert!(deg as u32 <= MAX_DEGREE, "monomial degree overflow");
        // No byte can carry: each exponent is bounded by the total degree.
        Monomial {
            deg,
            packed: self.packed + other.packed,
        }
    }

    pub fn divides(self, other: Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        (0..MAX_VARS).all(|i| self.exponent(i) <= other.exponent(i))
    }

    /// `other / self`, assuming `self.divides(other)`.
    fn quotient_of(self, other: Monomial) -> Monomial {
        Monomial {
            deg: other.deg - self.deg,
            packed: other.packed - self.packed,
        }
    }

    fn without(self, i: usize) -> Monomial {
        let e = self.exponent(i);
        Monomial {
            deg: self.deg - e as u16,
            packed: self.packed & !(0xffu128 << shift(i)),
        }
    }
}

fn shift(i: usize) -> u32 {
    8 * (MAX_VARS - 1 - i) as u32
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct MultiPoly {
    nvars: usize,
    field: Field,
    terms: Vec<(Monomial, Scalar)>,
}

impl MultiPoly {
    pub fn zero(nvars: usize, field: Field) -> MultiPoly {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        MultiPoly {
            nvars,
            field,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars, c.field());
        if !c.is_zero() {
            p.terms.push((Monomial::one(), c));
        }
        p
    }

    /// The variable x_{i+1} (zero-based index).
    pub fn var(nvars: usize, field: Field, i: usize) -> MultiPoly {
        assert!(i < nvars, "variable index out of range");
        let mut p = MultiPoly::zero(nvars, field);
        p.terms.push((Monomial::var(i), field.one()));
        p
    }

    /// Builds a canonical polynomial from arbitrary (exponent, coefficient) pairs.
    pub fn from_terms(nvars: usize, field: Field, terms: Vec<(Vec<u32>, Scalar)>) -> Result<MultiPoly> {
        if nvars > MAX_VARS {
            return Err(Error::Shape(format!("at most {MAX_VARS} variables supported")));
        }
        let mut acc: FxHashMap<Monomial, Scalar> = FxHashMap::default();
        for (exp, c) in terms {
            if exp.len() != nvars {
                return Err(Error::Shape(format!(
                    "exponent vector of length {} in {nvars} variables",
                    exp.len()
                )));
            }
            if c.field() != field {
                return Err(Error::Context(format!(
                    "coefficient over {} in a polynomial over {field}",
                    c.field()
                )));
            }
            let m = Monomial::from_exponents(&exp)?;
            accumulate(&mut acc, m, c);
        }
        Ok(MultiPoly::from_map(nvars, field, acc))
    }

    fn from_map(nvars: usize, field: Field, acc: FxHashMap<Monomial, Scalar>) -> MultiPoly {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly {
            nvars,
            field,
            terms,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Minimal total degree among the terms.
    pub fn lowest_degree(&self) -> Result<u32> {
        // Descending grlex order puts the lowest degree last.
        self.terms
            .last()
            .map(|(m, _)| m.degree())
            .ok_or_else(|| Error::Undefined("lowest degree of the zero polynomial".into()))
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.terms.first(), self.terms.last()) {
            (Some(a), Some(b)) => a.0.degree() == b.0.degree(),
            _ => true,
        }
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Shape(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        if self.field != other.field {
            return Err(Error::Context(format!(
                "polynomials over {} and {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        Ok(self.merge(other, true))
    }

    // Linear merge of two sorted term lists.
    fn merge(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let conv = |c: &Scalar| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0, conv(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, conv(c))));
        MultiPoly {
            nvars: self.nvars,
            field: self.field,
            terms: out,
        }
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, s: &Scalar) -> MultiPoly {
        assert_eq!(s.field(), self.field, "scalar context mismatch");
        if s.is_zero() {
            return MultiPoly::zero(self.nvars, self.field);
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MultiPoly::zero(self.nvars, self.field));
        }
        let mut acc: FxHashMap<Monomial, Scalar> = FxHashMap::default();
        acc.reserve(self.terms.len() * other.terms.len() / 2);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(&mut acc, ma.mul(*mb), ca * cb);
            }
        }
        Ok(MultiPoly::from_map(self.nvars, self.field, acc))
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.nvars, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Exact quotient `self / d`. On failure the remainder is returned as witness.
    pub fn divide_exact(&self, d: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(d)?;
        let Some((lm, lc)) = d.leading().cloned() else {
            return Err(Error::Undefined("division by the zero polynomial".into()));
        };
        if d.len() == 1 {
            return self.divide_by_term(lm, &lc);
        }
        let lc_inv = lc
            .inv()
            .ok_or_else(|| Error::Internal("zero leading coefficient".into()))?;
        let mut rem: BTreeMap<Reverse<Monomial>, Scalar> =
            self.terms.iter().map(|(m, c)| (Reverse(*m), c.clone())).collect();
        let mut quotient = Vec::new();
        let mut stuck: FxHashMap<Monomial, Scalar> = FxHashMap::default();
        while let Some((Reverse(m), c)) = rem.pop_first() {
            if !lm.divides(m) {
                stuck.insert(m, c);
                continue;
            }
            let qm = lm.quotient_of(m);
            let qc = &c * &lc_inv;
            for (dm, dc) in &d.terms[1..] {
                let key = Reverse(qm.mul(*dm));
                let delta = &qc * dc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let v = e.get() - &delta;
                        if v.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = v;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quotient.push((qm, qc));
        }
        if !stuck.is_empty() {
            return Err(Error::NotDivisible {
                remainder: Box::new(MultiPoly::from_map(self.nvars, self.field, stuck)),
            });
        }
        // Quotient terms come out in descending order already.
        Ok(MultiPoly {
            nvars: self.nvars,
            field: self.field,
            terms: quotient,
        })
    }

    fn divide_by_term(&self, m: Monomial, c: &Scalar) -> Result<MultiPoly> {
        let inv = c
            .inv()
            .ok_or_else(|| Error::Internal("zero coefficient in divisor".into()))?;
        let mut out = Vec::with_capacity(self.terms.len());
        let mut stuck = FxHashMap::default();
        for (tm, tc) in &self.terms {
            if m.divides(*tm) {
                out.push((m.quotient_of(*tm), tc * &inv));
            } else {
                stuck.insert(*tm, tc.clone());
            }
        }
        if !stuck.is_empty() {
            return Err(Error::NotDivisible {
                remainder: Box::new(MultiPoly::from_map(self.nvars, self.field, stuck)),
            });
        }
        Ok(MultiPoly {
            nvars: self.nvars,
            field: self.field,
            terms: out,
        })
    }

    fn check_point(&self, point: &[Scalar]) -> Result<()> {
        if point.len() != self.nvars {
            return Err(Error::Shape(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        if let Some(bad) = point.iter().find(|s| s.field() != self.field) {
            return Err(Error::Context(format!(
                "point coordinate over {} for a polynomial over {}",
                bad.field(),
                self.field
            )));
        }
        Ok(())
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        self.check_point(point)?;
        let powers = power_table(point, self.total_degree().unwrap_or(0));
        Ok(self.eval_with(&powers))
    }

    fn eval_with(&self, powers: &[Vec<Scalar>]) -> Scalar {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exponent(i) as usize;
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Value and gradient at `point`, computed term by term in one pass.
    pub fn eval_grad(&self, point: &[Scalar]) -> Result<(Scalar, Vec<Scalar>)> {
        self.check_point(point)?;
        let n = self.nvars;
        let powers = power_table(point, self.total_degree().unwrap_or(0));
        let mut value = self.field.zero();
        let mut grad = vec![self.field.zero(); n];
        for (m, c) in &self.terms {
            let exps = m.exponents(n);
            let mut t = c.clone();
            for i in 0..n {
                if exps[i] > 0 {
                    t = &t * &powers[i][exps[i] as usize];
                }
            }
            value = &value + &t;
            for k in 0..n {
                if exps[k] == 0 {
                    continue;
                }
                let mut d = c * &self.field.from_i64(exps[k] as i64);
                for i in 0..n {
                    let e = exps[i] - (i == k) as u32;
                    if e > 0 {
                        d = &d * &powers[i][e as usize];
                    }
                }
                grad[k] = &grad[k] + &d;
            }
        }
        Ok((value, grad))
    }

    /// Symbolic partial derivative in the (zero-based) variable `i`.
    pub fn partial(&self, i: usize) -> MultiPoly {
        assert!(i < self.nvars, "variable index out of range");
        let mut acc = FxHashMap::default();
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let dm = Monomial {
                deg: m.deg - 1,
                packed: m.packed - (1u128 << shift(i)),
            };
            accumulate(&mut acc, dm, c * &self.field.from_i64(e as i64));
        }
        MultiPoly::from_map(self.nvars, self.field, acc)
    }

    /// Sets variable `i` to 1, keeping the variable count.
    pub fn dehomogenize(&self, i: usize) -> MultiPoly {
        let mut acc = FxHashMap::default();
        for (m, c) in &self.terms {
            accumulate(&mut acc, m.without(i), c.clone());
        }
        MultiPoly::from_map(self.nvars, self.field, acc)
    }

    /// The polynomial x ↦ self(x + shift).
    pub fn translate(&self, shift: &[Scalar]) -> Result<MultiPoly> {
        self.check_point(shift)?;
        let n = self.nvars;
        let maxdeg = self.total_degree().unwrap_or(0) as usize;
        // (x_i + a_i)^e for every variable and exponent.
        let mut binom: Vec<Vec<MultiPoly>> = Vec::with_capacity(n);
        for (i, a) in shift.iter().enumerate() {
            let lin = MultiPoly::var(n, self.field, i).add(&MultiPoly::constant(n, a.clone()))?;
            let mut row = vec![MultiPoly::constant(n, self.field.one())];
            for e in 1..=maxdeg {
                row.push(row[e - 1].mul(&lin)?);
            }
            binom.push(row);
        }
        let mut out = MultiPoly::zero(n, self.field);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(n, c.clone());
            for (i, row) in binom.iter().enumerate() {
                let e = m.exponent(i) as usize;
                if e > 0 {
                    t = t.mul(&row[e])?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn normalize_monic(&self) -> MultiPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Coefficient-wise image in 𝔽_p. Fails if p divides a denominator.
    pub fn reduce_mod(&self, p: u32) -> Result<MultiPoly> {
        let target = Field::prime(p as u64)?;
        if self.field == target {
            return Ok(self.clone());
        }
        if !self.field.is_rational() {
            return Err(Error::Context(format!("cannot reduce a polynomial over {} mod {p}", self.field)));
        }
        let mut acc = FxHashMap::default();
        for (m, c) in &self.terms {
            let r = c.reduce_mod(p).ok_or_else(|| Error::Reduction {
                p,
                reason: format!("coefficient {c} has denominator divisible by {p}"),
            })?;
            accumulate(&mut acc, *m, r);
        }
        Ok(MultiPoly::from_map(self.nvars, target, acc))
    }

    /// Primitive integer multiple (positive leading coefficient) of a ℚ polynomial.
    pub fn primitive_part(&self) -> Result<MultiPoly> {
        if !self.field.is_rational() {
            return Err(Error::Context("primitive part needs rational coefficients".into()));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let rats: Vec<_> = self.terms.iter().map(|(_, c)| c.as_rational().expect("rational")).collect();
        let l = rats.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        let nums: Vec<BigInt> = rats.iter().map(|r| r.numer() * (&l / r.denom())).collect();
        let mut g = nums.iter().fold(BigInt::zero(), |g, n| g.gcd(n));
        if nums[0].is_negative() {
            g = -g;
        }
        let terms = self
            .terms
            .iter()
            .zip(nums)
            .map(|((m, _), n)| (*m, self.field.from_bigint(&(n / &g))))
            .collect();
        Ok(MultiPoly { terms, ..self.clone() })
    }

    /// Image in 𝔽_p of the primitive integer multiple, made monic.
    /// The zero set over 𝔽_p is what survives this scaling.
    pub fn reduce_projective(&self, p: u32) -> Result<MultiPoly> {
        let r = self.primitive_part()?.reduce_mod(p)?;
        if r.is_zero() && !self.is_zero() {
            return Err(Error::Reduction {
                p,
                reason: "primitive polynomial vanishes mod p".into(),
            });
        }
        Ok(r.normalize_monic())
    }
}

fn accumulate(acc: &mut FxHashMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    match acc.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let v = e.get() + &c;
            *e.get_mut() = v;
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

fn power_table(point: &[Scalar], maxdeg: u32) -> Vec<Vec<Scalar>> {
    point
        .iter()
        .map(|x| {
            let mut row = vec![x.field().one()];
            for e in 1..=maxdeg as usize {
                row.push(&row[e - 1] * x);
            }
            row
        })
        .collect()
}

/// Determinant of a square matrix of polynomials by fraction-free elimination
/// with exact polynomial division. Row pivoting picks the first nonzero entry.
pub fn poly_determinant(mut a: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::Shape("polynomial determinant needs a square matrix".into()));
    }
    let Some(first) = a.first().and_then(|r| r.first()).cloned() else {
        return Err(Error::Shape("empty polynomial matrix".into()));
    };
    let (nvars, field) = (first.nvars, first.field);
    for p in a.iter().flatten() {
        first.check_compatible(p)?;
    }
    let mut prev = MultiPoly::constant(nvars, field.one());
    let mut negate = false;
    for k in 0..n {
        let Some(pr) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(MultiPoly::zero(nvars, field));
        };
        if pr != k {
            a.swap(pr, k);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let prow = &top[k];
        for row in rest.iter_mut() {
            let lead = std::mem::replace(&mut row[k], MultiPoly::zero(nvars, field));
            for j in k + 1..n {
                let v = prow[k].mul(&row[j])?.sub(&lead.mul(&prow[j])?)?;
                row[j] = if k == 0 { v } else { v.divide_exact(&prev)? };
            }
        }
        prev = prow[k].clone();
    }
    Ok(if negate { prev.neg() } else { prev })
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> = (0..self.nvars)
                .filter_map(|i| match m.exponent(i) {
                    0 => None,
                    1 => Some(format!("x{}", i + 1)),
                    e => Some(format!("x{}^{e}", i + 1)),
                })
                .collect();
            if vars.is_empty() {
                f.write_str(&mag)?;
            } else if mag == "1" {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: usize,
    field: Field,
    terms: Vec<TermJson>,
}

impl From<MultiPoly> for PolyJson {
    fn from(p: MultiPoly) -> PolyJson {
        PolyJson {
            vars: p.nvars,
            field: p.field,
            terms: p
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    exp: m.exponents(p.nvars),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for MultiPoly {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<MultiPoly> {
        let terms = j
            .terms
            .into_iter()
            .map(|t| Ok((t.exp, j.field.parse_scalar(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(j.vars, j.field, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(field: Field, n: usize, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(
            n,
            field,
            terms.iter().map(|(e, c)| (e.to_vec(), field.from_i64(*c))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn grlex_order_puts_degree_first() {
        let a = Monomial::from_exponents(&[0, 0, 2]).unwrap();
        let b = Monomial::from_exponents(&[1, 0, 0]).unwrap();
        let c = Monomial::from_exponents(&[0, 1, 1]).unwrap();
        let d = Monomial::from_exponents(&[1, 1, 0]).unwrap();
        assert!(a > b);
        assert!(d > c && c > a);
    }

    #[test]
    fn basic_products() {
        let q = Field::Rational;
        let x1 = MultiPoly::var(2, q, 0);
        let x2 = MultiPoly::var(2, q, 1);
        assert_eq!(x1.mul(&x2).unwrap(), poly(q, 2, &[(&[1, 1], 1)]));
        assert!(x1.add(&x1.neg()).unwrap().is_zero());
        let s = x1.add(&x2).unwrap();
        assert_eq!(s.pow(2), poly(q, 2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]));
        assert!(matches!(x1.add(&MultiPoly::var(3, q, 0)), Err(Error::Shape(_))));
    }

    #[test]
    fn exact_division() {
        let q = Field::Rational;
        let p = poly(q, 2, &[(&[4, 6], 1)]);
        let d = poly(q, 2, &[(&[4, 0], 1)]);
        assert_eq!(p.divide_exact(&d).unwrap(), poly(q, 2, &[(&[0, 6], 1)]));
        let p = poly(q, 2, &[(&[2, 0], 1), (&[0, 2], -1)]);
        let d = poly(q, 2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(p.divide_exact(&d).unwrap(), poly(q, 2, &[(&[1, 0], 1), (&[0, 1], 1)]));
        let err = poly(q, 2, &[(&[1, 0], 1)]).divide_exact(&poly(q, 2, &[(&[0, 1], 1)]));
        match err {
            Err(Error::NotDivisible { remainder }) => assert_eq!(remainder.len(), 1),
            other => panic!("expected a divisibility error, got {other:?}"),
        }
    }

    #[test]
    fn lowest_degree_queries() {
        let q = Field::Rational;
        assert_eq!(poly(q, 3, &[(&[1, 1, 0], 1), (&[0, 0, 3], 1)]).lowest_degree().unwrap(), 2);
        assert_eq!(MultiPoly::constant(3, q.from_i64(5)).lowest_degree().unwrap(), 0);
        assert!(matches!(MultiPoly::zero(3, q).lowest_degree(), Err(Error::Undefined(_))));
    }

    #[test]
    fn gradient_of_a_square() {
        let q = Field::Rational;
        let p = poly(q, 3, &[(&[2, 0, 0], 1)]);
        let pt = [q.from_i64(3), q.from_i64(1), q.from_i64(-4)];
        let (v, g) = p.eval_grad(&pt).unwrap();
        assert_eq!(v, q.from_i64(9));
        assert_eq!(g[0], q.from_i64(6));
        assert!(g[1].is_zero() && g[2].is_zero());
    }

    #[test]
    fn translation_and_dehomogenization() {
        let q = Field::Rational;
        // x1*x2 at (1, 1): (y1+1)(y2+1) = y1 y2 + y1 + y2 + 1
        let p = poly(q, 2, &[(&[1, 1], 1)]);
        let t = p.translate(&[q.one(), q.one()]).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.lowest_degree().unwrap(), 0);
        let h = poly(q, 2, &[(&[2, 1], 1), (&[0, 3], 2)]);
        assert_eq!(h.dehomogenize(0), poly(q, 2, &[(&[0, 1], 1), (&[0, 3], 2)]));
    }

    #[test]
    fn determinant_of_a_polynomial_matrix() {
        let q = Field::Rational;
        let x = MultiPoly::var(2, q, 0);
        let y = MultiPoly::var(2, q, 1);
        let zero = MultiPoly::zero(2, q);
        // [[x, y, 0], [y, x, y], [0, y, x]] has det x^3 - 2 x y^2
        let m = vec![
            vec![x.clone(), y.clone(), zero.clone()],
            vec![y.clone(), x.clone(), y.clone()],
            vec![zero.clone(), y.clone(), x.clone()],
        ];
        let d = poly_determinant(m).unwrap();
        assert_eq!(d, poly(q, 2, &[(&[3, 0], 1), (&[1, 2], -2)]));
        // A zero leading entry forces a row swap.
        let m = vec![vec![zero.clone(), x.clone()], vec![y.clone(), zero]];
        assert_eq!(poly_determinant(m).unwrap(), poly(q, 2, &[(&[1, 1], -1)]));
    }

    #[test]
    fn json_roundtrip_and_primitive_reduction() {
        let q = Field::Rational;
        let p = MultiPoly::from_terms(
            2,
            q,
            vec![(vec![1, 0], q.ratio(3, 2).unwrap()), (vec![0, 1], q.ratio(-1, 3).unwrap())],
        )
        .unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<MultiPoly>(&s).unwrap(), p);
        let prim = p.primitive_part().unwrap();
        assert_eq!(prim, poly(q, 2, &[(&[1, 0], 9), (&[0, 1], -2)]));
        // Mod 3 the primitive form 9x1 - 2x2 loses its x1 term.
        let r = p.reduce_projective(3).unwrap();
        assert_eq!(r.len(), 1);
        let z = MultiPoly::zero(4, Field::Prime(5));
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(serde_json::from_str::<MultiPoly>(&s).unwrap(), z);
    }
}
