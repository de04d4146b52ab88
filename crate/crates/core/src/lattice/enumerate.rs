//! Lazy enumeration of lattice vectors of a given norm inside a coordinate box.
//!
//! The Gram matrix is split into orthogonal blocks (connected components of
//! its off-diagonal support). A depth-first search picks one block vector at
//! a time; at each block the admissible norms are cut down by the range the
//! remaining blocks can still reach. Small blocks are tabulated once; large
//! definite blocks are searched with Fincke–Pohst on an exact LDLᵀ form.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use super::EvenLattice;

type R = Ratio<i128>;
type Vecs = Rc<Vec<Vec<i64>>>;

const TABLE_LIMIT: u64 = 1 << 16;

/// All v with (v, v) = `target` and every coordinate in [−bound, bound].
///
/// Order: blocks are visited in order of their first coordinate; at each
/// block, norms go by increasing absolute value (negative first on ties) and
/// vectors of one norm lexicographically.
pub fn enumerate_norm(lattice: &EvenLattice, target: i64, bound: i64) -> NormVectors {
    NormVectors::new(lattice, target, bound)
}

pub fn enumerate_minus2(lattice: &EvenLattice, bound: i64) -> NormVectors {
    enumerate_norm(lattice, -2, bound)
}

enum Kind {
    Table(BTreeMap<i64, Vecs>),
    /// Sign s with s·G positive definite, and the LDLᵀ data of s·G.
    Definite { sign: i64, ldl: Vec<Vec<R>> },
    Scan,
}

struct Block {
    coords: Vec<usize>,
    gram: Vec<Vec<i64>>,
    min: i64,
    max: i64,
    kind: Kind,
    memo: HashMap<i64, Vecs>,
}

impl Block {
    fn new(coords: Vec<usize>, gram: Vec<Vec<i64>>, bound: i64) -> Block {
        let dim = coords.len();
        let width = (2 * bound + 1) as u64;
        let reach: i64 = gram.iter().flatten().map(|x| x.abs()).sum::<i64>() * bound * bound;
        let small = (0..dim).try_fold(1u64, |acc, _| acc.checked_mul(width).filter(|&x| x <= TABLE_LIMIT));
        if small.is_some() {
            let mut table: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
            box_scan(dim, bound, |v| {
                table.entry(quad(&gram, v)).or_default().push(v.to_vec());
            });
            let min = *table.keys().next().expect("box is nonempty");
            let max = *table.keys().next_back().expect("box is nonempty");
            let table = table.into_iter().map(|(k, v)| (k, Rc::new(v))).collect();
            return Block { coords, gram, min, max, kind: Kind::Table(table), memo: HashMap::new() };
        }
        let (kind, min, max) = match definite_ldl(&gram) {
            Some((1, ldl)) => (Kind::Definite { sign: 1, ldl }, 0, reach),
            Some((sign, ldl)) => (Kind::Definite { sign, ldl }, -reach, 0),
            None => (Kind::Scan, -reach, reach),
        };
        Block { coords, gram, min, max, kind, memo: HashMap::new() }
    }

    fn norms_between(&self, lo: i64, hi: i64) -> Vec<i64> {
        let (lo, hi) = (lo.max(self.min), hi.min(self.max));
        let mut out: Vec<i64> = match &self.kind {
            Kind::Table(t) => t.range(lo..=hi).map(|(k, _)| *k).collect(),
            _ if lo > hi => Vec::new(),
            // Even lattice: every norm is even.
            _ => (lo..=hi).filter(|n| n % 2 == 0).collect(),
        };
        out.sort_by_key(|&n| (n.abs(), n));
        out
    }

    fn vectors(&mut self, norm: i64, bound: i64) -> Vecs {
        if let Kind::Table(t) = &self.kind {
            return t.get(&norm).cloned().unwrap_or_default();
        }
        if let Some(v) = self.memo.get(&norm) {
            return v.clone();
        }
        let mut out = Vec::new();
        match &self.kind {
            Kind::Definite { sign, ldl } => {
                let m = R::from_integer((sign * norm) as i128);
                if !m.is_negative() {
                    let mut x = vec![0i64; self.coords.len()];
                    fincke_pohst(ldl, bound, ldl.len(), &m, &mut x, &mut out);
                }
            }
            Kind::Scan => box_scan(self.coords.len(), bound, |v| {
                if quad(&self.gram, v) == norm {
                    out.push(v.to_vec());
                }
            }),
            Kind::Table(_) => unreachable!(),
        }
        out.sort();
        let out = Rc::new(out);
        self.memo.insert(norm, out.clone());
        out
    }
}

fn quad(g: &[Vec<i64>], v: &[i64]) -> i64 {
    let mut s = 0;
    for (i, vi) in v.iter().enumerate() {
        if *vi != 0 {
            for (j, vj) in v.iter().enumerate() {
                s += vi * g[i][j] * vj;
            }
        }
    }
    s
}

/// Visits the box [−b, b]^dim in lexicographic order.
fn box_scan(dim: usize, b: i64, mut f: impl FnMut(&[i64])) {
    let mut v = vec![-b; dim];
    loop {
        f(&v);
        let mut i = dim;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if v[i] < b {
                v[i] += 1;
                break;
            }
            v[i] = -b;
        }
    }
}

/// LDLᵀ of s·G for the sign s making it positive definite; None if indefinite.
/// Returns q with q[i][i] = dᵢ and q[i][j] = μᵢⱼ (j > i), so that
/// s·Q(x) = Σᵢ dᵢ (xᵢ + Σ_{j>i} μᵢⱼ xⱼ)².
fn definite_ldl(g: &[Vec<i64>]) -> Option<(i64, Vec<Vec<R>>)> {
    let n = g.len();
    let sign = if g[0][0] > 0 { 1 } else { -1 };
    let mut q: Vec<Vec<R>> = g
        .iter()
        .map(|r| r.iter().map(|&x| R::from_integer((sign * x) as i128)).collect())
        .collect();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return None;
        }
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] = q[i][j] / q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let d = q[k][i] * q[i][l];
                q[k][l] = q[k][l] - d;
            }
        }
    }
    Some((sign, q))
}

/// Fills x[..level] from the top coordinate down; collects x with form exactly m.
fn fincke_pohst(q: &[Vec<R>], bound: i64, level: usize, rem: &R, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if level == 0 {
        if rem.is_zero() {
            out.push(x.clone());
        }
        return;
    }
    let i = level - 1;
    let n = q.len();
    let c: R = (i + 1..n).map(|j| q[i][j] * R::from_integer(x[j] as i128)).sum();
    let t = rem / q[i][i];
    let s = isqrt_floor(&t);
    let centre = (-c).floor().to_integer() as i64;
    let lo = (centre - s - 1).max(-bound);
    let hi = (centre + s + 2).min(bound);
    for xi in lo..=hi {
        let y = R::from_integer(xi as i128) + c;
        let used = q[i][i] * y * y;
        if used > *rem {
            continue;
        }
        x[i] = xi;
        fincke_pohst(q, bound, i, &(rem - used), x, out);
    }
    x[i] = 0;
}

/// ⌊√t⌋ for t ≥ 0.
fn isqrt_floor(t: &R) -> i64 {
    let f = t.to_f64().unwrap_or(0.0).max(0.0).sqrt().floor() as i64;
    let sq = |k: i64| R::from_integer((k as i128) * (k as i128));
    let mut s = f.max(0);
    while sq(s + 1) <= *t {
        s += 1;
    }
    while s > 0 && sq(s) > *t {
        s -= 1;
    }
    s
}

struct Frame {
    block: usize,
    norms: Vec<i64>,
    ni: usize,
    started: bool,
    vecs: Vecs,
    vi: usize,
}

/// Iterator returned by [`enumerate_norm`].
pub struct NormVectors {
    rank: usize,
    bound: i64,
    target: i64,
    blocks: Vec<Block>,
    suffix_min: Vec<i64>,
    suffix_max: Vec<i64>,
    frames: Vec<Frame>,
    started: bool,
}

impl NormVectors {
    fn new(lattice: &EvenLattice, target: i64, bound: i64) -> NormVectors {
        let g = lattice.gram();
        let n = lattice.rank();
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut [usize], i: usize) -> usize {
            if c[i] != i {
                let r = find(c, c[i]);
                c[i] = r;
            }
            c[i]
        }
        for i in 0..n {
            for j in i + 1..n {
                if g[i][j] != 0 {
                    let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                    comp[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut comp, i);
            groups.entry(r).or_default().push(i);
        }
        let bound = bound.max(0);
        let blocks: Vec<Block> = groups
            .into_values()
            .map(|coords| {
                let gram = coords.iter().map(|&i| coords.iter().map(|&j| g[i][j]).collect()).collect();
                Block::new(coords, gram, bound)
            })
            .collect();
        let k = blocks.len();
        let mut suffix_min = vec![0; k + 1];
        let mut suffix_max = vec![0; k + 1];
        for b in (0..k).rev() {
            suffix_min[b] = suffix_min[b + 1] + blocks[b].min;
            suffix_max[b] = suffix_max[b + 1] + blocks[b].max;
        }
        NormVectors { rank: n, bound, target, blocks, suffix_min, suffix_max, frames: Vec::new(), started: false }
    }

    fn push_frame(&mut self, block: usize, rem: i64) {
        let lo = rem - self.suffix_max[block + 1];
        let hi = rem - self.suffix_min[block + 1];
        let norms = self.blocks[block].norms_between(lo, hi);
        self.frames.push(Frame { block, norms, ni: 0, started: false, vecs: Vecs::default(), vi: 0 });
    }

    fn assemble(&self) -> Vec<i64> {
        let mut out = vec![0; self.rank];
        for f in &self.frames {
            let v = &f.vecs[f.vi - 1];
            for (c, x) in self.blocks[f.block].coords.iter().zip(v) {
                out[*c] = *x;
            }
        }
        out
    }
}

impl Iterator for NormVectors {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if !self.started {
            self.started = true;
            if self.blocks.is_empty() {
                return (self.target == 0).then(Vec::new);
            }
            self.push_frame(0, self.target);
        }
        loop {
            let top = self.frames.last_mut()?;
            if top.vi < top.vecs.len() {
                top.vi += 1;
                let depth = top.block;
                if depth + 1 == self.blocks.len() {
                    return Some(self.assemble());
                }
                let used: i64 = self.frames.iter().map(|f| f.norms[f.ni]).sum();
                self.push_frame(depth + 1, self.target - used);
                continue;
            }
            if top.started {
                top.ni += 1;
            }
            top.started = true;
            if top.ni < top.norms.len() {
                let (b, norm) = (top.block, top.norms[top.ni]);
                let vecs = self.blocks[b].vectors(norm, self.bound);
                let top = self.frames.last_mut().expect("frame");
                top.vecs = vecs;
                top.vi = 0;
            } else {
                self.frames.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{diagonal, e8_negative, hyperbolic};
    use super::*;

    fn brute(l: &EvenLattice, target: i64, bound: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        box_scan(l.rank(), bound, |v| {
            if l.norm(v) == target {
                out.push(v.to_vec());
            }
        });
        out
    }

    #[test]
    fn e8_roots() {
        let roots: Vec<_> = enumerate_minus2(&e8_negative(), 6).collect();
        assert_eq!(roots.len(), 240);
        let e8 = e8_negative();
        assert!(roots.iter().all(|r| e8.norm(r) == -2));
    }

    #[test]
    fn hyperbolic_plane() {
        let v: Vec<_> = enumerate_minus2(&hyperbolic(), 1).collect();
        assert_eq!(v, vec![vec![-1, 1], vec![1, -1]]);
    }

    #[test]
    fn matches_brute_force() {
        let l = EvenLattice::direct_sum_all(&[diagonal(&[-2, -2]), hyperbolic(), hyperbolic()]);
        for target in [-2, 0, 2, -10] {
            let mut got: Vec<_> = enumerate_norm(&l, target, 2).collect();
            got.sort();
            assert_eq!(got, brute(&l, target, 2), "target {target}");
        }
    }

    #[test]
    fn definite_search_matches_scan() {
        let e8 = e8_negative();
        // 5⁸ box points exceed the table limit, so this takes the definite path.
        let mut got: Vec<_> = enumerate_norm(&e8, -4, 2).collect();
        got.sort();
        assert_eq!(got, brute(&e8, -4, 2));
    }

    #[test]
    fn deterministic_and_restartable() {
        let l = EvenLattice::direct_sum_all(&[diagonal(&[-2, -2]), hyperbolic(), e8_negative()]);
        let a: Vec<_> = enumerate_minus2(&l, 2).take(500).collect();
        let b: Vec<_> = enumerate_minus2(&l, 2).take(500).collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 500);
    }
}
