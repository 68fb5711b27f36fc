//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use l1cocycle::brooks::{antisymmetry_check, eta, Brooks, BrooksSpec};
use l1cocycle::cocycle::defect_measure;
use l1cocycle::derivation::{rescale_conjugate, verify_identities, DerivationAction, VerifyOptions};
use l1cocycle::group::{enumerate_ball, GroupWord, DEFAULT_BALL_CAP};
use l1cocycle::harness::{check_fixture, regen_requested, FixtureStatus};
use l1cocycle::opnorm::{max_ratio, VectorSampler};
use l1cocycle::par::{self, Exec};
use l1cocycle::proper::{
    assemble_action, decay_growth, fit_growth_constant, instance_cocycle, linear_upper_check, lower_bound_fit,
    orbit_table, properness_profile, theta, tripod_cocycle, verify_theta, DecaySpec, FitMode, InstanceMode,
    InstanceOptions, TripodSpec,
};
use l1cocycle::quasitree::{family_truncated_sum, w_sets_qt, AxisFamily, WConfig};
use l1cocycle::sparse::{iso_pair, IsoDirection};
use l1cocycle::{Rational, Scalar, SparseVec};

const SEED: u64 = 20_240_601;

type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> Outcome + 'a>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn w(s: &str) -> GroupWord {
    s.parse().unwrap()
}

fn families() -> Vec<AxisFamily> {
    ["a", "b", "ab", "aB"].into_iter().map(|s| AxisFamily::new(w(s)).unwrap()).collect()
}

fn within(t: Instant, limit: u64) -> (bool, Duration) {
    let e = t.elapsed();
    (e <= Duration::from_secs(limit), e)
}

struct Shared {
    spec: BrooksSpec<Rational>,
    /// Exact defect over all pairs in ball(6).
    defect6: Rational,
}

fn identities(sh: &Shared) -> (Outcome, Outcome) {
    let t = Instant::now();
    let action = DerivationAction::new(Brooks::new(sh.spec.clone())).with_defect(sh.defect6.clone());
    let mut opts = VerifyOptions::new(3);
    opts.seed = SEED;
    let r = verify_identities(&action, &opts).unwrap();
    let (fast, elapsed) = within(t, 120);
    let c = r.check("cocycle").unwrap();
    let cb = r.check("coboundary").unwrap();
    let rep = r.check("representation").unwrap();
    let l = r.check("leibniz").unwrap();
    (
        outcome(
            c.violations + cb.violations + rep.violations == 0 && c.checked == 2809 && fast,
            format!(
                "{} pairs, {} cocycle + {} coboundary + {} representation violations, {:.1?}",
                c.checked, c.violations, cb.violations, rep.violations, elapsed
            ),
        ),
        outcome(
            l.violations == 0,
            format!("{} checks on beta(g'), g' in ball(3), {} violations", l.checked, l.violations),
        ),
    )
}

fn orbit_growth(sh: &Shared) -> Outcome {
    let ab = w("ab");
    let bad: Vec<u64> =
        (1..=50u64).filter(|&n| eta(&sh.spec, &ab.pow(n as i64)).norm() != Rational::from_i64(2 * n as i64)).collect();
    outcome(bad.is_empty(), format!("|eta((ab)^n)| = 2n for n = 1..50, mismatches {bad:?}"))
}

fn antisymmetry(sh: &Shared) -> Outcome {
    let t = Instant::now();
    let r = antisymmetry_check(&sh.spec, 6, DEFAULT_BALL_CAP, Exec::Parallel).unwrap();
    let (fast, elapsed) = within(t, 60);
    outcome(
        r.violations == 0 && r.checked == 1457 && fast,
        format!("{} elements, {} violations, {elapsed:.1?}", r.checked, r.violations),
    )
}

fn derivation_bound(sh: &Shared) -> Outcome {
    let action = DerivationAction::new(Brooks::new(sh.spec.clone()));
    let ball = enumerate_ball(6, DEFAULT_BALL_CAP).unwrap();
    let sampler = VectorSampler::new(6, 4, true, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut violations = 0;
    let mut worst = Rational::zero();
    for _ in 0..1000 {
        let g = &ball[rng.gen_range(0..ball.len())];
        let f: SparseVec<Rational> = sampler.sample(&mut rng);
        let d = action.derivation_apply(g, &f).unwrap().norm();
        let bound = sh.defect6.mul(&f.norm());
        if d > bound {
            violations += 1;
        }
        worst = worst.max_of(d.div(&f.norm()));
    }
    outcome(
        violations == 0,
        format!(
            "1000 samples, max |D(g)f|/|f| = {}, Delta_6 = {}, {violations} violations",
            worst.to_text(),
            sh.defect6.to_text()
        ),
    )
}

fn sandwich(sh: &Shared) -> Outcome {
    let action = DerivationAction::new(Brooks::new(sh.spec.clone()));
    let ball = enumerate_ball(4, DEFAULT_BALL_CAP).unwrap();
    let sampler = VectorSampler::new(2, 3, true, None).unwrap();
    let upper = Rational::one().add(&sh.defect6);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let elements: Vec<GroupWord> = (0..100).map(|_| ball[rng.gen_range(0..ball.len())].clone()).collect();
    let vectors: Vec<(SparseVec<Rational>, SparseVec<Rational>)> =
        (0..60).map(|_| (sampler.sample(&mut rng), sampler.sample(&mut rng))).collect();
    let rows = par::map(Exec::Parallel, &elements, |g| {
        let mut pi = Vec::new();
        let mut d = Vec::new();
        let mut pd = Vec::new();
        for (x, y) in &vectors {
            pi.push((x.translate(g).norm(), x.norm()));
            let dy = action.derivation_apply(g, y).unwrap();
            d.push((dy.norm(), y.norm()));
            for (xx, yy) in [(x.clone(), SparseVec::zero()), (SparseVec::zero(), y.clone()), (x.clone(), y.clone())] {
                let (a, b) = action.linear_apply(g, &xx, &yy).unwrap();
                pd.push((a.norm().add(&b.norm()), xx.norm().add(&yy.norm())));
            }
        }
        (max_ratio(pi).value, max_ratio(d).value, max_ratio(pd).value)
    });
    let mut violations = 0;
    let mut top = Rational::zero();
    for (pi, d, pd) in &rows {
        if pi > pd || d > pd || *pd > upper || *pi != Rational::one() {
            violations += 1;
        }
        top = top.max_of(pd.clone());
    }
    outcome(
        violations == 0,
        format!(
            "100 elements x 60 pairs, max est |pi_D(g)| = {}, bound 1 + Delta_6 = {}, {violations} violations",
            top.to_text(),
            upper.to_text()
        ),
    )
}

fn banach_mazur() -> Outcome {
    let x0 = GroupWord::identity();
    let zero_sum = VectorSampler::new(3, 5, true, None).unwrap().stream::<Rational>(SEED, 1000);
    let off = VectorSampler::new(3, 4, false, Some(&x0)).unwrap().stream::<Rational>(SEED + 2, 1000);
    let round_trip = zero_sum
        .iter()
        .filter(|v| {
            iso_pair(IsoDirection::Inverse, &iso_pair(IsoDirection::Forward, v, &x0).unwrap(), &x0).unwrap() != **v
        })
        .count()
        + off
            .iter()
            .filter(|v| {
                iso_pair(IsoDirection::Forward, &iso_pair(IsoDirection::Inverse, v, &x0).unwrap(), &x0).unwrap() != **v
            })
            .count();
    let f = max_ratio(zero_sum.iter().map(|v| (iso_pair(IsoDirection::Forward, v, &x0).unwrap().norm(), v.norm())));
    let finv = max_ratio(off.iter().map(|v| (iso_pair(IsoDirection::Inverse, v, &x0).unwrap().norm(), v.norm())));
    let delta = SparseVec::<Rational>::delta(w("a"));
    let delta_ratio = iso_pair(IsoDirection::Inverse, &delta, &x0).unwrap().norm().div(&delta.norm());
    let attained_by_delta = delta_ratio == Rational::from_i64(2);
    outcome(
        round_trip == 0 && f.value == Rational::one() && finv.value == Rational::from_i64(2) && attained_by_delta,
        format!(
            "{round_trip} round-trip failures, est |F| = {}, est |F^-1| = {}, |F^-1(delta_a)|/|delta_a| = {}",
            f.value.to_text(),
            finv.value.to_text(),
            delta_ratio.to_text()
        ),
    )
}

fn rescale(sh: &Shared) -> Outcome {
    let eps = Rational::from_ratio(1, 2);
    let action = DerivationAction::new(Brooks::new(sh.spec.clone()));
    let c = rescale_conjugate(action, eps.clone(), sh.defect6.clone()).unwrap();
    let est = c.lipschitz_estimate(3, 1000, SEED).unwrap();
    let bound = c.lipschitz_bound();
    outcome(
        est.value <= bound && bound <= Rational::from_i64(2).mul(&Rational::one().add(&eps)),
        format!(
            "epsilon = 1/2, s = {}, sampled Lipschitz estimate {} <= bound 2(1 + s*Delta) = {}",
            c.scale().to_text(),
            est.value.to_text(),
            bound.to_text()
        ),
    )
}

fn qt_config(family: &AxisFamily, c: (u32, u32, u32)) -> WConfig {
    WConfig::new(family, c.0, c.1, c.2).unwrap()
}

fn disjointness() -> Outcome {
    let ball = enumerate_ball(8, DEFAULT_BALL_CAP).unwrap();
    let mut violations = 0;
    let mut nonempty = 0;
    for family in families() {
        let config = qt_config(&family, (1, 2, 2));
        let rows = par::map(Exec::Parallel, &ball, |g| w_sets_qt(&family, &config, g).unwrap());
        violations += rows.iter().filter(|ws| !ws.is_disjoint()).count();
        nonempty += rows.iter().filter(|ws| ws.size() > 0).count();
    }
    outcome(
        violations == 0 && nonempty > 0,
        format!("families a,b,ab,aB, (eps, L, K) = (1, 2, 2), ball(8): {violations} violations, {nonempty} nonempty W"),
    )
}

fn distance_formula() -> Outcome {
    let t = Instant::now();
    let ball = enumerate_ball(6, DEFAULT_BALL_CAP).unwrap();
    let mut violations = 0;
    let mut ratio = 0f64;
    for family in families() {
        let config = qt_config(&family, (1, 3, 3));
        let rows = par::map(Exec::Parallel, &ball, |g| {
            (w_sets_qt(&family, &config, g).unwrap().d_ck, family_truncated_sum(&family, g, config.l))
        });
        for (d, s) in rows {
            if s > 4 * d {
                violations += 1;
            }
            if d > 0 {
                ratio = ratio.max(s as f64 / d as f64);
            }
        }
    }
    let (fast, elapsed) = within(t, 300);
    outcome(
        violations == 0 && fast,
        format!("(eps, L, K) = (1, 3, 3), ball(6), 4 families: max sum/d_CK = {ratio:.3}, {violations} violations, {elapsed:.1?}"),
    )
}

fn theta_suite() -> Outcome {
    let t = Instant::now();
    let reports: Vec<_> = (1..=3).map(|k| verify_theta(k, 10_000).unwrap()).collect();
    let (fast, elapsed) = within(t, 60);
    let violations: u64 = reports.iter().map(|r| r.violations()).sum();
    let checked: u64 = reports.iter().flat_map(|r| r.checks.iter().map(|c| c.checked)).sum();
    outcome(
        violations == 0 && fast,
        format!("k = 1,2,3 to 10^4: {checked} checks, {violations} violations, {elapsed:.1?}"),
    )
}

fn tripod_lower_bound() -> Outcome {
    let family = AxisFamily::new(w("ab")).unwrap();
    let config = qt_config(&family, (1, 2, 2));
    let spec = TripodSpec::select(&family, &config, 1.0, 12).unwrap();
    let alpha = tripod_cocycle::<Rational>(&family, &config, &spec).unwrap();
    let ball = enumerate_ball(6, DEFAULT_BALL_CAP).unwrap();
    let rows = par::map(Exec::Parallel, &ball, |g| {
        let ws = alpha.w_sets(g);
        (alpha.eval_with(&ws).norm() >= Rational::from_i64(ws.size() as i64), ws.size())
    });
    let violations = rows.iter().filter(|r| !r.0).count();
    let nonempty = rows.iter().filter(|r| r.1 > 0).count();
    outcome(
        violations == 0 && nonempty > 0,
        format!("family ab, (1, 2, 2), ball(6): {nonempty} elements with nonempty W, {violations} violations"),
    )
}

fn decay_growth_fit() -> Outcome {
    let family = AxisFamily::new(w("a")).unwrap();
    let config = qt_config(&family, (1, 8, 2));
    let spec = DecaySpec::new(1, 30_000).unwrap();
    let rows = decay_growth(&family, &config, &spec, 100, Exec::Parallel).unwrap();
    let c_all = fit_growth_constant(&rows, 1, 1, 100);
    let c1 = fit_growth_constant(&rows, 1, 50, 75);
    let c2 = fit_growth_constant(&rows, 1, 75, 100);
    let drift = (c1 - c2).abs() / c1.max(c2);
    let holds = rows.iter().all(|&(n, norm)| norm * c_all >= theta(1, n) * (1.0 - 1e-12));
    outcome(
        c_all.is_finite() && holds && drift <= 0.10,
        format!(
            "family a, k = 1, J = 30000, M = 8: C_fit = {c_all:.4}, [50,75] {c1:.4}, [75,100] {c2:.4}, drift {:.2}%",
            100.0 * drift
        ),
    )
}

fn profile() -> Outcome {
    let fams = families();
    let opts = InstanceOptions::new(0, 1, 1);
    let cocycles = fams.iter().map(|f| instance_cocycle::<Rational>(f, InstanceMode::Tripod, &opts).unwrap()).collect();
    let action = assemble_action(cocycles, Rational::from_ratio(1, 2), 3, Exec::Parallel).unwrap();
    let table = orbit_table(&action, &fams, 1, 10, Exec::Parallel).unwrap();
    let rows = properness_profile(&table);
    let fit = lower_bound_fit(&table, FitMode::Linear);
    let upper = linear_upper_check(&action, &table).unwrap();
    let mins: Vec<String> = rows.iter().map(|r| r.min.to_text()).collect();
    let nondecreasing = rows.windows(2).all(|p| p[0].min <= p[1].min);
    let grows = rows[10].min > rows[2].min;
    let fixture = json!({
        "families": ["a", "b", "ab", "aB"],
        "constants": { "w_eps": 0, "L": 1, "K": 1, "epsilon": "1/2" },
        "min": mins,
        "max": rows.iter().map(|r| r.max.to_text()).collect::<Vec<_>>(),
        "sum_truncated": rows.iter().map(|r| r.sum_truncated).collect::<Vec<_>>(),
        "fitted_C": format!("{:.12}", fit.c),
    });
    let status = check_fixture("profile_tripod_r10", &fixture, regen_requested()).unwrap();
    let fixture_ok = !matches!(status, FixtureStatus::Mismatch { .. });
    outcome(
        fit.c.is_finite() && nondecreasing && grows && upper.violations == 0 && fixture_ok,
        format!(
            "ball(10): sphere minima {}, C = {:.4} (ball(8): {:.4}), upper-bound violations {}, fixture {status:?}",
            mins.join(" "),
            fit.c,
            fit.c_prev,
            upper.violations
        ),
    )
}

fn negative_control(sh: &Shared) -> Outcome {
    let action = DerivationAction::new(Brooks::new(sh.spec.clone()));
    let table = orbit_table(&action, &[], 1, 10, Exec::Parallel).unwrap();
    let rows = properness_profile(&table);
    let ab = w("ab");
    let bounded = rows.iter().skip(1).all(|r| r.min <= Rational::from_i64(2));
    let grows = rows.iter().all(|r| {
        let target = Rational::from_i64(2 * (r.r as i64 / 2));
        r.max >= target && action.orbit_norm(&ab.pow(r.r as i64 / 2)) >= target
    });
    outcome(
        bounded && grows,
        format!(
            "ball(10): minima {}, maxima {}",
            rows.iter().map(|r| r.min.to_text()).collect::<Vec<_>>().join(" "),
            rows.iter().map(|r| r.max.to_text()).collect::<Vec<_>>().join(" ")
        ),
    )
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let spec = BrooksSpec::<Rational>::standard();
    let defect6 = defect_measure(&Brooks::new(spec.clone()), 6, DEFAULT_BALL_CAP, Exec::Parallel).unwrap().defect;
    let sh = Shared { spec, defect6 };

    let (c1, c2) = identities(&sh);
    let criteria: Vec<Criterion> = vec![
        ("exact cocycle identity on ball(3)", Box::new(move || c1)),
        ("exact Leibniz rule on ball(3)", Box::new(move || c2)),
        ("orbit growth |eta((ab)^n)| = 2n", Box::new(|| orbit_growth(&sh))),
        ("antisymmetry on ball(6)", Box::new(|| antisymmetry(&sh))),
        ("derivation bound", Box::new(|| derivation_bound(&sh))),
        ("operator-norm sandwich", Box::new(|| sandwich(&sh))),
        ("Banach-Mazur isomorphism", Box::new(banach_mazur)),
        ("rescale-conjugate Lipschitz bound", Box::new(|| rescale(&sh))),
        ("W-set disjointness on ball(8)", Box::new(disjointness)),
        ("distance-formula upper bound on ball(6)", Box::new(distance_formula)),
        ("theta properties", Box::new(theta_suite)),
        ("tripod lower bound on ball(6)", Box::new(tripod_lower_bound)),
        ("decay-cocycle growth", Box::new(decay_growth_fit)),
        ("properness profile", Box::new(profile)),
        ("negative control", Box::new(|| negative_control(&sh))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let o = run();
        if !o.passed {
            failed += 1;
        }
        println!("{} {:>2}. {name}: {} [{:.1?}]", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.detail, t.elapsed());
    }
    println!("{} of 15 criteria passed", 15 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
