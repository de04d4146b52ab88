use std::time::{Duration, Instant};

use epwlab_core::lattice::conto::{conto_check, ContoReport};
use epwlab_core::lattice::{
    diagonal, discriminant_form, enumerate_minus2, enumerate_norm, epsilon_action, hyperbolic,
    isotropic_elements, overlattice, reflection, same_lattice, Class, EvenLattice, FiniteQuadForm,
    LatticeFixture, RationalIsometry,
};
use epwlab_core::sampler::SeededSampler;
use epwlab_core::{Field, Matrix, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use crate::config::{CliError, SuiteConfig};
use crate::report::SuiteReport;

const Q: Field = Field::Rational;

pub fn run(cfg: &SuiteConfig) -> Result<SuiteReport, CliError> {
    let mut rep = SuiteReport::new("lattice", cfg.seed, "Q");
    let fx = LatticeFixture::new();
    fixtures(&fx, &mut rep);
    let t = Instant::now();
    discriminant(&fx, &mut rep)?;
    epsilon(&fx, cfg.seed, &mut rep)?;
    rep.runtime("discriminant.runtime", t.elapsed(), Duration::from_secs(1));
    let t = Instant::now();
    conto(&fx, cfg.seed, cfg.samples.unwrap_or(100), cfg.bound.unwrap_or(3), &mut rep)?;
    rep.runtime("conto.runtime", t.elapsed(), Duration::from_secs(10));
    Ok(rep)
}

pub fn fixtures(fx: &LatticeFixture, rep: &mut SuiteReport) {
    let a = &fx.ambient;
    let v = |n: &str| fx.vector(n).expect("fixture vector");
    let norms: Vec<(&str, i64)> = ["z", "u", "e1", "e2", "zeta"].iter().map(|n| (*n, a.norm(&v(n)))).collect();
    rep.record(
        "fixture.norms",
        "(z,z) = (u,u) = 2, (e1,e1) = (e2,e2) = -2, (zeta,zeta) = -10",
        norms == [("z", 2), ("u", 2), ("e1", -2), ("e2", -2), ("zeta", -10)],
        json!(norms),
    );
    let pairs = [("u", "e1"), ("u", "z"), ("u", "e2"), ("e1", "z"), ("e1", "e2"), ("z", "e2")];
    let cross: Vec<i64> = pairs.iter().map(|(x, y)| a.pair(&v(x), &v(y))).collect();
    rep.record("fixture.orthogonality", "u, e1, z, e2 pairwise orthogonal", cross.iter().all(|&x| x == 0), json!(cross));
    // (u+e1)/2 = g1, (u−e1)/2 = g2, (z+e2)/2 = f1, (z−e2)/2 = f2.
    let halves = [("u", "e1", "g1", "g2"), ("z", "e2", "f1", "f2")];
    let ok = halves.iter().all(|(x, y, p, m)| {
        let (x, y) = (v(x), v(y));
        let plus: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let minus: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a - b).collect();
        let (p, m) = (v(p), v(m));
        let twice = |w: &[i64]| w.iter().map(|c| 2 * c).collect::<Vec<_>>();
        plus == twice(&p) && minus == twice(&m) && a.norm(&p) == 0 && a.norm(&m) == 0 && a.pair(&p, &m) == 1
    });
    rep.record("fixture.half_sums", "(u +- e1)/2 and (z +- e2)/2 are integral and span hyperbolic planes", ok, json!(null));
    rep.record(
        "fixture.complements",
        "z^perp and z^perp cap u^perp equal the fixture bases (HNF comparison)",
        fx.complements_match(),
        json!({ "rank_lambda_tilde": fx.lambda_tilde.rank(), "rank_lambda": fx.lambda.rank() }),
    );
    rep.record(
        "fixture.standard_forms",
        "Gram of z^perp is (-2)+U^3+(-E8)^2 and of Lambda is (-2)^2+U^2+(-E8)^2",
        fx.standard_forms_match(),
        json!(null),
    );
}

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn half_vector(n: usize, coords: &[usize]) -> Vec<Scalar> {
    let mut v = vec![Q.zero(); n];
    for &i in coords {
        v[i] = Q.ratio(1, 2).expect("nonzero");
    }
    v
}

/// Class of x·u/2 + y1·e1/2 + y2·e2/2 in A_L.
fn class_xyy(form: &FiniteQuadForm, x: u64, y1: u64, y2: u64) -> Class {
    let coords: Vec<usize> = [(x, 0), (y1, 1), (y2, 2)].iter().filter(|(c, _)| *c == 1).map(|(_, i)| *i).collect();
    form.class_of(&half_vector(form.lattice().rank(), &coords)).expect("dual vector")
}

pub fn discriminant(fx: &LatticeFixture, rep: &mut SuiteReport) -> Result<(), CliError> {
    let form = discriminant_form(&fx.l)?;
    rep.record(
        "discriminant.group",
        "A_L = (Z/2)^3 for L = Zu + Lambda",
        form.orders() == [2, 2, 2],
        json!({ "orders": form.orders() }),
    );
    rep.record(
        "discriminant.order",
        "|A_L| = |det Gram(L)|",
        BigInt::from(form.order()) == num_traits::Signed::abs(&fx.l.det()),
        json!({ "order": form.order(), "det": fx.l.det().to_string() }),
    );

    let mut bad = Vec::new();
    let mut classes = Vec::new();
    for x in 0..2 {
        for y1 in 0..2 {
            for y2 in 0..2 {
                let c = class_xyy(&form, x, y1, y2);
                let expected = {
                    let e = q((x * x) as i64 - (y1 * y1) as i64 - (y2 * y2) as i64, 2);
                    let two = q(2, 1);
                    &e - (&e / &two).floor() * two
                };
                if form.q_value(&c) != expected {
                    bad.push([x, y1, y2]);
                }
                classes.push(c);
            }
        }
    }
    let mut distinct = classes.clone();
    distinct.sort();
    distinct.dedup();
    rep.record(
        "discriminant.q_formula",
        "q(x[u/2] + y1[e1/2] + y2[e2/2]) = (x^2 - y1^2 - y2^2)/2 mod 2Z on all 8 classes, which are distinct",
        bad.is_empty() && distinct.len() == 8,
        json!({ "mismatches": bad, "distinct_classes": distinct.len() }),
    );

    let elems = form.elements();
    let two = q(2, 1);
    let compat = elems.iter().all(|a| {
        elems.iter().all(|b| {
            let lhs = form.q_value(&form.add(a, b));
            let r = form.q_value(a) + form.q_value(b) + form.b_value(a, b) * &two;
            lhs == &r - (&r / &two).floor() * &two
        })
    });
    rep.record(
        "discriminant.compatibility",
        "q(a+b) = q(a) + q(b) + 2b(a,b) mod 2Z for all pairs",
        compat,
        json!({ "pairs": elems.len() * elems.len() }),
    );

    let iso = isotropic_elements(&form);
    let expected = vec![class_xyy(&form, 1, 1, 0), class_xyy(&form, 1, 0, 1)];
    let mut iso_sorted = iso.clone();
    iso_sorted.sort();
    let mut exp_sorted = expected.clone();
    exp_sorted.sort();
    rep.record(
        "isotropic.set",
        "I = {[u/2]+[e1/2], [u/2]+[e2/2]}",
        iso_sorted == exp_sorted,
        json!({ "count": iso.len(), "classes": iso }),
    );

    let r = fx.r_on_l();
    let perm = epsilon_action(&form, &r)?;
    rep.record("epsilon.r", "epsilon(r) swaps the two elements of I", perm == [1, 0], json!({ "permutation": perm }));
    let minus = RationalIsometry::identity(fx.l.rank()).negate();
    let perm = epsilon_action(&form, &minus)?;
    rep.record("epsilon.minus_identity", "epsilon(-Id) is trivial", perm == [0, 1], json!({ "permutation": perm }));

    let m: Vec<_> = expected.iter().map(|c| overlattice(&form, std::slice::from_ref(c))).collect::<Result<_, _>>()?;
    rep.record(
        "overlattice.even_index_two",
        "both overlattices from I are even of index 2",
        m.iter().all(|o| o.index == 2 && o.lattice.is_even_integral()),
        json!({ "indices": m.iter().map(|o| o.index).collect::<Vec<_>>(), "dets": m.iter().map(|o| o.lattice.det().to_string()).collect::<Vec<_>>() }),
    );
    rep.record(
        "overlattice.exchanged_by_r",
        "r maps one overlattice onto the other, and they differ",
        m[0].image(&r).same_as(&m[1]) && m[1].image(&r).same_as(&m[0]) && !m[0].same_as(&m[1]),
        json!(null),
    );
    rep.record(
        "overlattice.is_z_perp",
        "the overlattice of [u/2]+[e1/2] is z^perp inside the ambient lattice",
        overlattice_in_ambient(fx, &m[0].basis).is_some_and(|b| same_lattice(&b, &fx.lambda_tilde_basis)),
        json!(null),
    );
    Ok(())
}

/// Ambient coordinates of rational L-coordinate rows, if integral.
fn overlattice_in_ambient(fx: &LatticeFixture, basis: &[Vec<Scalar>]) -> Option<Vec<Vec<i64>>> {
    let b = Matrix::from_i64_rows(Q, &fx.l_basis).ok()?;
    basis
        .iter()
        .map(|row| {
            let img = b.transpose().apply(row).ok()?;
            img.iter().map(|s| s.to_integer().and_then(|x| i64::try_from(x).ok())).collect()
        })
        .collect()
}

/// Isometry of L = Zu + Lambda acting as `m` on Lambda and fixing u.
fn extend_to_l(fx: &LatticeFixture, m: &RationalIsometry) -> RationalIsometry {
    let n = fx.l.rank();
    let mut big = Matrix::identity(n, Q);
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            big.set(i + 1, j + 1, m.matrix().get(i, j).clone());
        }
    }
    RationalIsometry::new(&fx.l, big).expect("block isometry")
}

/// Λ-coordinates from coordinates on e1, e2, h1, h2, k1, k2.
fn pad(fx: &LatticeFixture, v: &[i64]) -> Vec<i64> {
    let mut out = vec![0; fx.lambda.rank()];
    out[..v.len()].copy_from_slice(v);
    out
}

fn small_part() -> EvenLattice {
    EvenLattice::direct_sum_all(&[diagonal(&[-2, -2]), hyperbolic(), hyperbolic()])
}

pub fn epsilon(fx: &LatticeFixture, seed: u64, rep: &mut SuiteReport) -> Result<(), CliError> {
    let form = discriminant_form(&fx.l)?;
    let r = fx.r_on_l();
    let small = small_part();
    let mut pool: Vec<RationalIsometry> = Vec::new();
    let minus2: Vec<Vec<i64>> = enumerate_minus2(&small, 2).collect();
    for d in &minus2 {
        pool.push(reflection(&fx.lambda, &pad(fx, d))?);
    }
    let mut minus10 = 0;
    for d in enumerate_norm(&small, -10, 2) {
        let refl = reflection(&fx.lambda, &pad(fx, &d))?;
        if refl.is_integral() {
            minus10 += 1;
            pool.push(refl);
        }
    }
    let mut sampler = SeededSampler::new(seed);
    let mut kernel_ok = 0;
    let mut swapped = 0;
    let samples = 24;
    for _ in 0..samples {
        let len = 1 + sampler.below(3) as usize;
        let mut g = RationalIsometry::identity(fx.lambda.rank());
        for _ in 0..len {
            g = g.compose(&pool[sampler.below(pool.len() as u64) as usize]);
        }
        let gl = extend_to_l(fx, &g);
        if epsilon_action(&form, &gl)? == [0, 1] {
            kernel_ok += 1;
        }
        if epsilon_action(&form, &gl.compose(&r))? == [1, 0] {
            swapped += 1;
        }
    }
    rep.record(
        "epsilon.reflection_products",
        "products of integral reflections act trivially on I; composed with r they swap it",
        kernel_ok == samples && swapped == samples,
        json!({
            "samples": samples,
            "trivial": kernel_ok,
            "swapped_after_r": swapped,
            "minus2_pool": minus2.len(),
            "minus10_integral_pool": minus10,
        }),
    );
    Ok(())
}

pub fn conto_samples(seed: u64, bound: i64, samples: usize) -> Vec<Vec<i64>> {
    let mut all: Vec<Vec<i64>> = enumerate_minus2(&small_part(), bound).collect();
    SeededSampler::new(seed).shuffle(&mut all);
    all.truncate(samples);
    all
}

pub fn conto(fx: &LatticeFixture, seed: u64, samples: usize, bound: i64, rep: &mut SuiteReport) -> Result<(), CliError> {
    let e1 = conto_check(&fx.lambda, &pad(fx, &[1]))?;
    rep.record(
        "conto.example_e1",
        "xi = e1: image of e1 is (-7/25)e1 - (24/25)e2, not integral, (xi,zeta) = -2",
        e1.image_e1[0] == "-7/25" && e1.image_e1[1] == "-24/25" && !e1.integral && e1.xi_zeta == -2,
        json!(e1),
    );
    let ex = conto_check(&fx.lambda, &pad(fx, &[1, 2, 2, 2]))?;
    rep.record(
        "conto.example_integral",
        "xi = e1 + 2e2 + nu, nu = 2h1 + 2h2: integral, (xi,zeta) = -10, image e1 + 4e2 - 2nu",
        ex.integral && ex.xi_zeta == -10 && ex.image_e1[..4] == ["1", "4", "-4", "-4"],
        json!(ex),
    );

    let xs = conto_samples(seed, bound, samples);
    let reports: Vec<ContoReport> = xs
        .iter()
        .map(|x| conto_check(&fx.lambda, &pad(fx, x)))
        .collect::<Result<_, _>>()?;
    let n = reports.len();
    let printed = reports.iter().filter(|r| r.printed_formula_matches).count();
    let corrected = reports.iter().filter(|r| r.corrected_formula_matches).count();
    let integral = reports.iter().filter(|r| r.integral).count();
    let implication = reports.iter().filter(|r| r.implication_holds).count();
    rep.record(
        "conto.sample_count",
        "at least 100 enumerated (-2)-vectors",
        n >= 100,
        json!({ "samples": n, "bound": bound }),
    );
    let first_bad = reports.iter().find(|r| !r.printed_formula_matches);
    rep.record(
        "conto.closed_formula",
        "closed form with nu-coefficient -(2/5)(3a1 - 4a2) equals the composed image of e1",
        printed == n,
        json!({ "matches": printed, "samples": n, "first_counterexample": first_bad }),
    );
    rep.record(
        "conto.closed_formula_sign_corrected",
        "closed form with nu-coefficient +(2/5)(3a1 - 4a2) equals the composed image of e1",
        corrected == n,
        json!({ "matches": corrected, "samples": n }),
    );
    rep.record(
        "conto.integral_implies_mod5",
        "integral conjugate => (xi,zeta) = 0 mod 5",
        implication == n,
        json!({ "integral": integral, "holds": implication, "samples": n }),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conto_samples_are_minus2_and_seeded() {
        let a = conto_samples(7, 3, 100);
        assert_eq!(a.len(), 100);
        assert_eq!(a, conto_samples(7, 3, 100));
        assert_ne!(a, conto_samples(8, 3, 100));
        let s = small_part();
        assert!(a.iter().all(|x| s.norm(x) == -2));
    }
}

/// Largest group for which the full b table is printed.
const B_TABLE_LIMIT: u64 = 64;

/// Group orders, every class with its q value, the b table for small groups,
/// and the isotropic classes.
pub fn discriminant_table(l: &EvenLattice) -> Result<serde_json::Value, CliError> {
    let form = discriminant_form(l)?;
    let elements = form.elements();
    let classes: Vec<_> = elements
        .iter()
        .map(|c| json!({ "class": c, "q": form.q_value(c).to_string() }))
        .collect();
    let b = (form.order() <= B_TABLE_LIMIT).then(|| {
        elements
            .iter()
            .map(|a| elements.iter().map(|c| form.b_value(a, c).to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    });
    Ok(json!({
        "orders": form.orders(),
        "order": form.order(),
        "classes": classes,
        "b": b,
        "isotropic": isotropic_elements(&form),
    }))
}
