use std::time::{Duration, Instant};

use epwlab_core::lattice::{int_vec, LatticeFixture};
use epwlab_core::mukai::{
    apply, reflected_pairing_check, dual_vector, fujiki_quartic, gamma0_candidates, mukai_lattice, mukai_reflection,
    mukai_vector, polarized_triple, preserves_gram, prim_complement_check, symmetrized_triple, theta_matrix,
    upsilon_matrix, verify_theta_factorization, xi_isometry, DegreeTen, QuarticModel, ALPHA, BETA,
};
use epwlab_core::sampler::SeededSampler;
use serde_json::json;

use crate::config::{CliError, SuiteConfig};
use crate::report::SuiteReport;

fn neg(v: Vec<i64>) -> Vec<i64> {
    v.into_iter().map(|x| -x).collect()
}

fn strings(v: &[epwlab_core::Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn run(cfg: &SuiteConfig) -> Result<SuiteReport, CliError> {
    let t = Instant::now();
    let mut rep = SuiteReport::new("mukai", cfg.seed, "Q");
    let fx = LatticeFixture::new();
    let l = mukai_lattice();
    let (v, w, p) = (DegreeTen::v(), DegreeTen::w(), DegreeTen::p());

    rep.record("pairing.v", "<v,v> = 2 for v = 2 + D + 2eta, D = alpha + 5beta", l.norm(&v) == 2, json!(l.norm(&v)));
    rep.record("pairing.w", "<w,w> = 2 for w = 1 - eta", l.norm(&w) == 2, json!(l.norm(&w)));
    rep.record("pairing.p", "<5+2D+5eta, 5+2D+5eta> = -10", l.norm(&p) == -10, json!(l.norm(&p)));
    let one_eta = l.pair(&mukai_vector(1, &[], 0), &mukai_vector(0, &[], 1));
    rep.record("pairing.one_eta", "<1, eta> = -1", one_eta == -1, json!(one_eta));

    let mut sampler = SeededSampler::new(cfg.seed);
    let dual_ok = (0..50).all(|_| {
        let a: Vec<i64> = (0..24).map(|_| sampler.range_i64(-5, 5)).collect();
        let b: Vec<i64> = (0..24).map(|_| sampler.range_i64(-5, 5)).collect();
        dual_vector(&dual_vector(&a)) == a && l.pair(&a, &b) == l.pair(&dual_vector(&a), &dual_vector(&b))
    });
    rep.record("dual.isometric_involution", "x -> x^dual is an involution preserving the pairing (50 seeded pairs)", dual_ok, json!(null));

    let ups = upsilon_matrix(&fx);
    let th = theta_matrix(&fx);
    let amb = |n: &str| int_vec(&fx.vector(n).expect("fixture vector"));
    rep.record("upsilon.isometry", "Upsilon preserves all 24x24 pairings", preserves_gram(&ups, &fx), json!(null));
    rep.record("theta.isometry", "Theta preserves all 24x24 pairings", preserves_gram(&th, &fx), json!(null));
    let uv = apply(&ups, &v);
    rep.record("upsilon.v", "Upsilon(v) = z", uv == amb("z"), json!(strings(&uv)));
    let tw = apply(&th, &w);
    rep.record("theta.w", "Theta(w) = z", tw == amb("z"), json!(strings(&tw)));
    let uw = apply(&ups, &neg(dual_vector(&w)));
    rep.record("upsilon.minus_w_dual", "Upsilon(-w^dual) = u", uw == amb("u"), json!(strings(&uw)));
    let tv = apply(&th, &neg(dual_vector(&v)));
    rep.record("theta.minus_v_dual", "Theta(-v^dual) = u", tv == amb("u"), json!(strings(&tv)));
    let up = apply(&ups, &p);
    rep.record("upsilon.p", "Upsilon(5 + 2D + 5eta) = e1 + 2e2", up == amb("zeta"), json!(strings(&up)));

    let xi = xi_isometry();
    let xv = xi.apply_int(&v);
    let expected_xv = int_vec(&mukai_vector(-29, &[(-8, ALPHA), (-40, BETA)], -11));
    rep.record("xi.v", "Xi(v) = -29 - 8D - 11eta", xv == expected_xv, json!(strings(&xv)));
    let fact = verify_theta_factorization(&fx);
    rep.record("theta.factorization", "Theta = r o Upsilon o Xi on all 24 basis vectors", fact.holds, json!(fact));

    let ru = mukai_reflection(&QuarticModel::u0())?;
    let img = ru.negate().apply_int(&QuarticModel::v0());
    rep.record(
        "reflection.v0_to_w0",
        "-r_{u0}(v0) = w0 with u0 = 1 + (A0 - R) + eta",
        img == int_vec(&QuarticModel::w0()),
        json!(strings(&img)),
    );
    let vu = l.pair(&QuarticModel::v0(), &QuarticModel::u0());
    rep.record("reflection.v0_u0", "<v0, u0> = -1", vu == -1, json!(vu));

    let prim = prim_complement_check();
    rep.record(
        "prim.complement",
        "{v, eta - 1, 5 + 2D + 5eta}^perp = D^perp in H^2",
        prim.equal,
        json!(prim),
    );

    let bound = cfg.bound.unwrap_or(2);
    let mut cands = gamma0_candidates(bound);
    SeededSampler::new(cfg.seed).shuffle(&mut cands);
    cands.truncate(cfg.samples.unwrap_or(50).max(50));
    let reports = cands.iter().map(|g| reflected_pairing_check(g)).collect::<Result<Vec<_>, _>>()?;
    let n = reports.len();
    let minus8 = reports.iter().filter(|r| r.holds_with_minus_8).count();
    let exact = reports.iter().filter(|r| r.holds_with_2).count();
    let mod5 = reports.iter().filter(|r| r.mod5_agrees).count();
    let usable = reports.iter().filter(|r| r.usable).count();
    rep.record(
        "reflected_pairing.coefficient_minus_8",
        "<-r_{u0}(g0), 5 + 2(2A0 - R) + 5eta> = -8 (g0.R) for at least 50 classes g0 in A0^perp",
        n >= 50 && minus8 == n,
        json!({ "holds": minus8, "classes": n, "first_counterexample": reports.iter().find(|r| !r.holds_with_minus_8) }),
    );
    rep.record(
        "reflected_pairing.exact_value",
        "<-r_{u0}(g0), 5 + 2(2A0 - R) + 5eta> = 2 (g0.R)",
        n >= 50 && exact == n,
        json!({ "holds": exact, "classes": n }),
    );
    rep.record(
        "reflected_pairing.mod5",
        "the pairing agrees with -8 (g0.R) modulo 5",
        n >= 50 && mod5 == n,
        json!({ "holds": mod5, "classes": n, "g0_dot_R_nonzero_mod5": usable }),
    );

    let lt = &fx.lambda_tilde;
    let mut a = vec![0; lt.rank()];
    let mut b = vec![0; lt.rank()];
    a[1] = 1;
    b[2] = 1;
    let f = fujiki_quartic(lt, [&a, &a, &b, &b]);
    rep.record(
        "fujiki.isotropic",
        "fujiki(a,a,b,b) = 2(a,b)^2 for isotropic a, b",
        f == 2 * lt.pair(&a, &b).pow(2),
        json!({ "value": f }),
    );
    let mut fourth = true;
    let mut symmetric = true;
    let mut polar = true;
    for _ in 0..20 {
        let mut draw = || -> Vec<i64> { (0..lt.rank()).map(|_| sampler.range_i64(-3, 3)).collect() };
        let (x, y, z, t) = (draw(), draw(), draw(), draw());
        fourth &= fujiki_quartic(lt, [&x, &x, &x, &x]) == 3 * lt.norm(&x).pow(2);
        let base = fujiki_quartic(lt, [&x, &y, &z, &t]);
        symmetric &= permutations4().iter().all(|s| {
            let args = [&x, &y, &z, &t];
            fujiki_quartic(lt, [args[s[0]], args[s[1]], args[s[2]], args[s[3]]]) == base
        });
        polar &= polarized_triple(lt, &x, [&y, &z, &t]) == symmetrized_triple(lt, &x, [&y, &z, &t]);
    }
    rep.record("fujiki.fourth_power", "fujiki(x,x,x,x) = 3(x,x)^2 (20 seeded x)", fourth, json!(null));
    rep.record("fujiki.symmetric", "fujiki is invariant under all 24 argument permutations", symmetric, json!(null));
    rep.record(
        "fujiki.polarized",
        "polarized_triple(l,x,y,z) equals the half-sum over S3 of (l,x_s1)(x_s2,x_s3)",
        polar,
        json!(null),
    );
    rep.runtime("runtime", t.elapsed(), Duration::from_secs(5));
    Ok(rep)
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let s = [a, b, c, d];
                    if (0..4).all(|i| s.contains(&i)) {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}
