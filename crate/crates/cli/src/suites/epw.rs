use std::time::{Duration, Instant};

use epwlab_core::epw::{
    census_from_map, corank_map, dual_membership, fiber_lagrangian, hyperplane_functional, hyperplane_kernel,
    lagrangian_mod, multiplicity_at, point_scalars, projective_count, projective_point, sample_lagrangian,
    sextic_equation, tangent_hyperplane,
};
use epwlab_core::exterior::{annihilator, graph_lagrangian, is_lagrangian, support, LagrangianSubspace, DIM};
use epwlab_core::sampler::SeededSampler;
use epwlab_core::{Field, Matrix, MultiPoly, Scalar};
use serde_json::json;

use crate::config::{CliError, SuiteConfig};
use crate::report::SuiteReport;

fn prime_field(cfg: &SuiteConfig, default: u32) -> Result<Field, CliError> {
    match cfg.field.unwrap_or(Field::Prime(default)) {
        Field::Rational => Err(CliError::Usage("this suite needs a prime field".into())),
        f => Ok(f),
    }
}

fn nonzero_sextic(a: &LagrangianSubspace, chart: usize) -> Result<Option<MultiPoly>, CliError> {
    Ok(sextic_equation(a, chart)?.polynomial().cloned())
}

struct Oracle {
    points: u64,
    mismatches: u64,
    coranks: Vec<u8>,
}

/// Compares s(x) = 0 with corank ≥ 1 at every point of ℙ⁵(𝔽_p).
fn oracle(a: &LagrangianSubspace, s: &MultiPoly, p: u32) -> Result<Oracle, CliError> {
    let field = Field::Prime(p);
    let coranks = corank_map(a, p)?;
    let sp = if s.field() == field { s.clone() } else { s.reduce_projective(p)? };
    let mut mismatches = 0;
    for (i, &c) in coranks.iter().enumerate() {
        let v = point_scalars(field, &projective_point(p, i as u64));
        if sp.eval(&v)?.is_zero() != (c >= 1) {
            mismatches += 1;
        }
    }
    Ok(Oracle { points: coranks.len() as u64, mismatches, coranks })
}

pub fn run_oracle(cfg: &SuiteConfig) -> Result<SuiteReport, CliError> {
    let field = prime_field(cfg, 3)?;
    let p = field.characteristic();
    let mut rep = SuiteReport::new("epw-oracle", cfg.seed, &field.to_string());
    let t = Instant::now();
    let mut sampler = SeededSampler::new(cfg.seed);
    let count = cfg.samples.unwrap_or(5).max(5);
    let chart = cfg.chart.unwrap_or(1);
    let other = if chart == 1 { 2 } else { 1 };

    let mut lagrangians: Vec<LagrangianSubspace> = Vec::new();
    if let Some(a) = &cfg.lagrangian {
        lagrangians.push(lagrangian_mod(a, p)?);
    }
    while lagrangians.len() < count {
        lagrangians.push(sample_lagrangian(&mut sampler, field, 0)?);
    }

    let mut per_a = Vec::new();
    let mut all_agree = true;
    let mut charts_agree = true;
    let mut homogeneous = true;
    let mut censuses = Vec::new();
    for a in &lagrangians {
        let s1 = sextic_equation(a, chart)?;
        let s2 = sextic_equation(a, other)?;
        charts_agree &= s1 == s2;
        let Some(s) = s1.polynomial() else {
            per_a.push(json!({ "sextic": "identically zero" }));
            all_agree = false;
            continue;
        };
        homogeneous &= s.is_homogeneous() && s.total_degree() == Some(6);
        let o = oracle(a, s, p)?;
        all_agree &= o.mismatches == 0 && o.points == projective_count(p);
        let census = census_from_map(p, &o.coranks);
        per_a.push(json!({ "terms": s.len(), "points": o.points, "mismatches": o.mismatches, "by_corank": census.by_corank }));
        censuses.push((a.clone(), s.clone(), o.coranks, p));
    }
    rep.record(
        "oracle.small_field",
        &format!("sextic vanishes iff corank >= 1 at every point of P^5(F_{p}), {count} seeded graph Lagrangians"),
        all_agree,
        json!(per_a),
    );
    rep.record(
        "oracle.charts",
        &format!("normalized sextics from charts {chart} and {other} are identical"),
        charts_agree,
        json!({ "lagrangians": lagrangians.len() }),
    );
    rep.record("oracle.degree", "each sextic is homogeneous of degree 6", homogeneous, json!(null));

    let f5 = Field::Prime(5);
    let a5 = sample_lagrangian(&mut sampler, f5, 0)?;
    match nonzero_sextic(&a5, chart)? {
        Some(s) => {
            let o = oracle(&a5, &s, 5)?;
            let census = census_from_map(5, &o.coranks);
            rep.record(
                "oracle.f5",
                "sextic vanishes iff corank >= 1 at all 3906 points of P^5(F_5)",
                o.mismatches == 0 && o.points == 3906,
                json!({ "mismatches": o.mismatches, "by_corank": census.by_corank }),
            );
            censuses.push((a5, s, o.coranks, 5));
        }
        None => rep.record("oracle.f5", "sextic over F_5 is nonzero", false, json!(null)),
    }

    let q = Field::Rational;
    let id = graph_lagrangian(&Matrix::identity(10, q))?;
    let ok = match nonzero_sextic(&id, chart)? {
        Some(s) => {
            let o = oracle(&id, &s, 3)?;
            json!({ "terms": s.len(), "mismatches_mod_3": o.mismatches })
        }
        None => json!(null),
    };
    rep.record(
        "oracle.rational_identity_graph",
        "graph of the identity over Q: reduced sextic matches coranks at all 364 points of P^5(F_3)",
        ok.get("mismatches_mod_3") == Some(&json!(0)),
        ok,
    );

    let mut e1 = vec![q.zero(); DIM];
    e1[0] = q.one();
    let fiber = fiber_lagrangian(&e1)?;
    let zero = sextic_equation(&fiber, chart)?.is_identically_zero();
    rep.record("oracle.fiber_degenerate", "A = F_[e1] gives an identically zero determinant", zero, json!(null));
    rep.runtime("oracle.runtime", t.elapsed(), Duration::from_secs(60));

    let t = Instant::now();
    multiplicity(&censuses, &mut rep)?;
    rep.runtime("multiplicity.runtime", t.elapsed(), Duration::from_secs(30));
    Ok(rep)
}

/// At every census point of corank c ≥ 1: multiplicity ≥ c; for c ≥ 2 also a vanishing gradient.
fn multiplicity(censuses: &[(LagrangianSubspace, MultiPoly, Vec<u8>, u32)], rep: &mut SuiteReport) -> Result<(), CliError> {
    let mut high = 0u64;
    let mut bad_mult = 0u64;
    let mut bad_grad = 0u64;
    let mut checked = 0u64;
    let mut max_corank = 0u8;
    for (_, s, coranks, p) in censuses {
        let field = Field::Prime(*p);
        let sp = s.reduce_mod(*p)?;
        for (i, &c) in coranks.iter().enumerate() {
            if c == 0 {
                continue;
            }
            max_corank = max_corank.max(c);
            let v = point_scalars(field, &projective_point(*p, i as u64));
            let m = multiplicity_at(&sp, &v)?;
            checked += 1;
            if m < c as u32 {
                bad_mult += 1;
            }
            if c >= 2 {
                high += 1;
                let (_, grad) = sp.eval_grad(&v)?;
                if !grad.iter().all(Scalar::is_zero) {
                    bad_grad += 1;
                }
            }
        }
    }
    rep.record(
        "multiplicity.rank_inequality",
        "multiplicity >= corank at every census point on the sextic (so >= 2 where corank >= 2)",
        bad_mult == 0,
        json!({ "points": checked, "violations": bad_mult, "corank_at_least_2": high, "max_corank": max_corank }),
    );
    rep.record(
        "multiplicity.gradient",
        "the gradient vanishes at every census point of corank >= 2",
        bad_grad == 0,
        json!({ "points": high, "violations": bad_grad }),
    );
    Ok(())
}

struct DualityStats {
    hyperplanes: usize,
    agree: usize,
    members: usize,
}

fn hyperplane_round(
    a: &LagrangianSubspace,
    dual: &MultiPoly,
    sampler: &mut SeededSampler,
    count: usize,
    bound: i64,
    through_plane: bool,
) -> Result<DualityStats, CliError> {
    let field = a.field();
    let mut st = DualityStats { hyperplanes: 0, agree: 0, members: 0 };
    for i in 0..count {
        let mut phi = sampler.nonzero_vector(field, DIM, bound);
        // Every other hyperplane contains e1, e2, e3 when A does contain e123.
        if through_plane && i % 2 == 0 {
            for x in phi.iter_mut().take(3) {
                *x = field.zero();
            }
            if phi.iter().all(Scalar::is_zero) {
                phi[DIM - 1] = field.one();
            }
        }
        let w = hyperplane_kernel(&phi)?;
        let member = dual_membership(a, &w)?;
        let vanishes = dual.eval(&phi)?.is_zero();
        st.hyperplanes += 1;
        st.agree += (member == vanishes) as usize;
        st.members += member as usize;
    }
    Ok(st)
}

pub fn run_duality(cfg: &SuiteConfig) -> Result<SuiteReport, CliError> {
    let field = prime_field(cfg, 5)?;
    let p = field.characteristic();
    let mut rep = SuiteReport::new("epw-duality", cfg.seed, &field.to_string());
    let t = Instant::now();
    let mut sampler = SeededSampler::new(cfg.seed);
    let samples = cfg.samples.unwrap_or(200).max(200);
    let chart = cfg.chart.unwrap_or(1);

    let mut instances = Vec::new();
    if let Some(a) = &cfg.lagrangian {
        instances.push(lagrangian_mod(a, p)?);
    }
    while instances.len() < 2 {
        instances.push(sample_lagrangian(&mut sampler, field, 0)?);
    }

    let mut membership = Vec::new();
    let mut membership_ok = true;
    let mut tangent = Vec::new();
    let mut tangent_ok = true;
    let mut bidual_ok = true;
    let mut lagrangian_ok = true;
    for a in &instances {
        let perp = annihilator(a)?;
        lagrangian_ok &= is_lagrangian(perp.basis());
        let bidual = annihilator(&perp)?;
        let s = nonzero_sextic(a, chart)?;
        let dual = nonzero_sextic(&perp, chart)?;
        bidual_ok &= bidual.same_subspace(a) && nonzero_sextic(&bidual, chart)? == s;
        let (Some(s), Some(dual)) = (s, dual) else {
            membership_ok = false;
            continue;
        };
        let st = hyperplane_round(a, &dual, &mut sampler, samples, 0, false)?;
        membership_ok &= st.agree == st.hyperplanes;
        membership.push(json!({ "hyperplanes": st.hyperplanes, "agree": st.agree, "members": st.members }));

        let (points, ok) = smooth_points(a, &s, &dual, p, cfg.seed)?;
        tangent_ok &= ok && points >= 50;
        tangent.push(json!({ "smooth_points": points, "all_hold": ok }));
    }

    // One instance over Q: zeroing row and column 0 of S puts e123 in A.
    let q = Field::Rational;
    let mut s = sampler.symmetric_matrix(q, 10, 1);
    for i in 0..10 {
        s.set(0, i, q.zero());
        s.set(i, 0, q.zero());
    }
    let aq = graph_lagrangian(&s)?;
    let perp = annihilator(&aq)?;
    lagrangian_ok &= is_lagrangian(perp.basis());
    bidual_ok &= annihilator(&perp)?.same_subspace(&aq);
    match nonzero_sextic(&perp, chart)? {
        Some(dual) => {
            let st = hyperplane_round(&aq, &dual, &mut sampler, samples, 3, true)?;
            membership_ok &= st.agree == st.hyperplanes;
            membership.push(json!({ "field": "Q", "hyperplanes": st.hyperplanes, "agree": st.agree, "members": st.members, "dual_terms": dual.len() }));
        }
        None => membership_ok = false,
    }

    rep.record(
        "duality.membership",
        "wedge^3 W meets A nontrivially iff the sextic of A^perp vanishes at [W], on seeded hyperplanes",
        membership_ok,
        json!(membership),
    );
    rep.record(
        "duality.tangent",
        "at 50+ smooth points: W = ker grad contains v, meets A, lies on the dual sextic, and equals the support of the kernel trivector",
        tangent_ok,
        json!(tangent),
    );
    rep.record("duality.biduality", "(A^perp)^perp = A, with equal normalized sextics", bidual_ok, json!(null));
    rep.record("duality.annihilator_lagrangian", "A^perp is Lagrangian for the dual form", lagrangian_ok, json!(null));
    rep.runtime("duality.runtime", t.elapsed(), Duration::from_secs(60));
    Ok(rep)
}

/// Tangent checks at seeded corank-1 points with nonzero gradient; stops after 60.
fn smooth_points(a: &LagrangianSubspace, s: &MultiPoly, dual: &MultiPoly, p: u32, seed: u64) -> Result<(usize, bool), CliError> {
    let field = Field::Prime(p);
    let coranks = corank_map(a, p)?;
    let mut idx: Vec<usize> = (0..coranks.len()).filter(|&i| coranks[i] == 1).collect();
    SeededSampler::new(seed).shuffle(&mut idx);
    let mut found = 0;
    let mut ok = true;
    for i in idx {
        if found >= 60 {
            break;
        }
        let v = point_scalars(field, &projective_point(p, i as u64));
        let tan = match tangent_hyperplane(a, s, &v) {
            Ok(t) => t,
            Err(epwlab_core::Error::NotSmooth(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        found += 1;
        let vrow = Matrix::new(1, DIM, field, v.clone())?;
        let contains_v = tan.w.vstack(&vrow)?.rank() == DIM - 1;
        let meets = dual_membership(a, &tan.w)?;
        let phi = hyperplane_functional(&tan.w)?;
        let on_dual = dual.eval(&phi)?.is_zero();
        let supp = support(&tan.alpha)?;
        let same = supp.rows() == DIM - 1 && supp.same_row_space(&tan.w)?;
        ok &= contains_v && meets && on_dual && same;
    }
    Ok((found, ok))
}
