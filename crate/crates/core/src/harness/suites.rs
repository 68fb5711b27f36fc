use std::time::Instant;

use serde_json::json;

use super::config::{ExperimentConfig, Suite};
use super::report::ExperimentReport;
use crate::brooks::{eta, Brooks, BrooksSpec};
use crate::cocycle::defect_measure;
use crate::derivation::{verify_identities, DerivationAction, VerifyOptions};
use crate::error::Result;
use crate::group::{enumerate_ball, GroupWord};
use crate::par;
use crate::proper::{
    assemble_action, instance_cocycle, linear_upper_check, lower_bound_fit, orbit_table, properness_profile,
    verify_theta, DecaySpec, FitMode, InstanceOptions,
};
use crate::quasitree::{family_truncated_sum, w_sets_qt, AxisFamily, WConfig};
use crate::scalar::{Mode, Rational, Scalar};
use crate::sparse::SparseVec;

/// Counting-set constants `(eps, L, K)` used by the distance-formula suite
/// when the config leaves them unset.
pub const DISTANCE_DEFAULTS: (u32, u32, u32) = (1, 3, 3);
/// The same for the profile suite.
pub const PROFILE_DEFAULTS: (u32, u32, u32) = (0, 1, 1);

pub(crate) fn word_text(g: &GroupWord) -> String {
    if g.is_identity() {
        "e".into()
    } else {
        g.to_string()
    }
}

fn scalar_from<S: Scalar>(r: &Rational) -> S {
    S::parse_text(&r.to_text()).ok().or_else(|| S::from_f64(r.to_f64())).expect("finite coefficient")
}

fn brooks_spec<S: Scalar>(cfg: &ExperimentConfig) -> Result<BrooksSpec<S>> {
    let e = SparseVec::from_terms(cfg.vector.iter().map(|(c, g)| (g.clone(), scalar_from::<S>(c))));
    BrooksSpec::new(cfg.word.clone(), e)
}

fn families(cfg: &ExperimentConfig) -> Result<Vec<AxisFamily>> {
    cfg.families.iter().cloned().map(AxisFamily::new).collect()
}

fn constants(cfg: &ExperimentConfig, fallback: (u32, u32, u32)) -> (u32, u32, u32) {
    (cfg.w_eps.unwrap_or(fallback.0), cfg.l.unwrap_or(fallback.1), cfg.k_cross.unwrap_or(fallback.2))
}

fn w_config(cfg: &ExperimentConfig, family: &AxisFamily, c: (u32, u32, u32)) -> Result<WConfig> {
    let mut w = WConfig::new(family, c.0, c.1, c.2)?;
    if let Some(m) = cfg.m {
        w = w.with_power(family, m)?;
    }
    w.basepoints = cfg.basepoints.clone();
    Ok(w)
}

/// Runs the configured suite in the configured arithmetic.
pub fn run_suite(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut report = match cfg.mode {
        Mode::Exact => run_in::<Rational>(cfg)?,
        Mode::Float => run_in::<f64>(cfg)?,
    };
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

fn run_in<S: Scalar>(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    match cfg.suite {
        Suite::Verify => verify::<S>(cfg),
        Suite::Defect => defect::<S>(cfg),
        Suite::OrbitGrowth => orbit_growth::<S>(cfg),
        Suite::DistanceFormula => distance_formula(cfg),
        Suite::Profile => profile::<S>(cfg),
        Suite::Theta => theta(cfg),
    }
}

fn verify<S: Scalar>(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let alpha = Brooks::new(brooks_spec::<S>(cfg)?);
    let defect = defect_measure(&alpha, cfg.radius, cfg.cap, cfg.exec())?;
    let action = DerivationAction::new(alpha).with_defect(defect.defect.clone());
    let mut opts = VerifyOptions::new(cfg.radius);
    opts.seed = cfg.seed;
    opts.cap = cfg.cap;
    opts.exec = cfg.exec();
    let checks = verify_identities(&action, &opts)?;

    let mut report = ExperimentReport::new(
        Suite::Verify,
        S::MODE,
        cfg.seed,
        &["identity", "checked", "violations", "first_counterexample"],
    );
    for c in &checks.checks {
        report.push_row(vec![
            c.name.to_string(),
            c.checked.to_string(),
            c.violations.to_string(),
            c.first_counterexample.clone().unwrap_or_default(),
        ]);
    }
    report.violations = checks.violations();
    report.note("radius", cfg.radius);
    report.note("word", word_text(&cfg.word));
    report.note("defect", defect.defect.to_text());
    report.note("defect_argmax", vec![word_text(&defect.argmax.0), word_text(&defect.argmax.1)]);
    Ok(report)
}

fn defect<S: Scalar>(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let alpha = Brooks::new(brooks_spec::<S>(cfg)?);
    let mut report = ExperimentReport::new(
        Suite::Defect,
        S::MODE,
        cfg.seed,
        &["R", "defect_numerator", "defect_denominator", "argmax_g", "argmax_g_prime", "wallclock_ms"],
    );
    for r in 1..=cfg.radius {
        let d = defect_measure(&alpha, r, cfg.cap, cfg.exec())?;
        let text = d.defect.to_text();
        let (num, den) = text.split_once('/').unwrap_or((&text, "1"));
        report.push_row(vec![
            r.to_string(),
            num.to_string(),
            den.to_string(),
            word_text(&d.argmax.0),
            word_text(&d.argmax.1),
            d.elapsed_ms.to_string(),
        ]);
        if r == cfg.radius {
            report.note("defect", text.clone());
        }
    }
    report.note("word", word_text(&cfg.word));
    Ok(report)
}

/// `‖η(wⁿ)‖` against `n·‖e‖`, the value when the translates of `e` along
/// the counted copies do not overlap.
fn orbit_growth<S: Scalar>(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let spec = brooks_spec::<S>(cfg)?;
    let step = spec.vector().norm();
    let ns: Vec<u64> = (1..=cfg.n_max).collect();
    let norms = par::map(cfg.exec(), &ns, |&n| eta(&spec, &cfg.word.pow(n as i64)).norm());
    let mut report = ExperimentReport::new(Suite::OrbitGrowth, S::MODE, cfg.seed, &["n", "length", "norm", "expected"]);
    for (n, norm) in ns.iter().zip(norms) {
        let expected = step.mul(&S::from_i64(*n as i64));
        if !norm.approx_eq(&expected, &expected) {
            report.violations += 1;
        }
        report.push_row(vec![
            n.to_string(),
            cfg.word.pow(*n as i64).len().to_string(),
            norm.to_text(),
            expected.to_text(),
        ]);
    }
    report.note("word", word_text(&cfg.word));
    report.note("vector_norm", step.to_text());
    Ok(report)
}

fn distance_formula(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let (eps, l, k) = constants(cfg, DISTANCE_DEFAULTS);
    let ball = enumerate_ball(cfg.radius, cfg.cap)?;
    let mut report = ExperimentReport::new(
        Suite::DistanceFormula,
        cfg.mode,
        cfg.seed,
        &["family", "g", "d_CK", "truncated_sum", "W_plus_size", "W_minus_size"],
    );
    let mut disjointness = 0u64;
    let mut distance = 0u64;
    let mut nonempty = 0u64;
    // Least C with Σ ≤ C·(|W₊| + |W₋|) + C.
    let mut fitted = Rational::zero();
    for family in families(cfg)? {
        let config = w_config(cfg, &family, (eps, l, k))?;
        let rows = par::map(cfg.exec(), &ball, |g| -> Result<_> {
            Ok((w_sets_qt(&family, &config, g)?, family_truncated_sum(&family, g, l)))
        });
        for (g, row) in ball.iter().zip(rows) {
            let (ws, sum) = row?;
            if !ws.is_disjoint() {
                disjointness += 1;
            }
            if l >= k && sum > 4 * ws.d_ck {
                distance += 1;
            }
            if ws.size() > 0 {
                nonempty += 1;
            }
            fitted = fitted.max_of(Rational::from_ratio(sum as i64, ws.size() as i64 + 1));
            report.push_row(vec![
                word_text(family.base()),
                word_text(g),
                ws.d_ck.to_string(),
                sum.to_string(),
                ws.plus.len().to_string(),
                ws.minus.len().to_string(),
            ]);
        }
    }
    report.violations = disjointness + distance;
    report.fitted_c = Some(match cfg.mode {
        Mode::Exact => fitted.to_text(),
        Mode::Float => fitted.to_f64().to_text(),
    });
    report.note("w_eps", eps);
    report.note("L", l);
    report.note("K", k);
    report.note("distance_bound_applies", l >= k);
    report.note("disjointness_violations", disjointness);
    report.note("distance_violations", distance);
    report.note("nonempty_w", nonempty);
    Ok(report)
}

fn profile<S: Scalar>(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let (eps, l, k) = constants(cfg, PROFILE_DEFAULTS);
    let fams = families(cfg)?;
    let mut opts = InstanceOptions::new(eps, l, k);
    opts.decay = DecaySpec::new(cfg.k, cfg.j_max)?;
    let cocycles = fams.iter().map(|f| instance_cocycle::<S>(f, cfg.instance, &opts)).collect::<Result<Vec<_>>>()?;
    let action = assemble_action(cocycles, scalar_from::<S>(&cfg.epsilon), cfg.defect_radius, cfg.exec())?;
    let table = orbit_table(&action, &fams, l, cfg.radius, cfg.exec())?;
    let rows = properness_profile(&table);
    let linear = lower_bound_fit(&table, FitMode::Linear);
    let theta_fit = lower_bound_fit(&table, FitMode::Theta(cfg.k));
    let upper = linear_upper_check(&action, &table)?;

    let mut report = ExperimentReport::new(
        Suite::Profile,
        S::MODE,
        cfg.seed,
        &["r", "min_norm", "mean_norm", "max_norm", "fitted_C", "sum_truncated"],
    );
    for row in &rows {
        report.push_row(vec![
            row.r.to_string(),
            row.min.to_text(),
            row.mean.to_text(),
            row.max.to_text(),
            row.fitted_c.to_text(),
            row.sum_truncated.to_string(),
        ]);
    }
    report.violations = upper.violations + u64::from(!linear.c.is_finite());
    report.fitted_c = Some(linear.c.to_text());
    report.note("instance", cfg.instance.to_string());
    report.note("families", cfg.families.iter().map(word_text).collect::<Vec<_>>());
    report.note("w_eps", eps);
    report.note("L", l);
    report.note("K", k);
    report.note("epsilon", cfg.epsilon.to_text());
    report.note("defects", action.components().iter().map(|c| c.defect().to_text()).collect::<Vec<_>>());
    report.note("lipschitz_bound", upper.slope.to_text());
    report.note("upper_checked", upper.checked);
    report.note("upper_violations", upper.violations);
    if let Some(ce) = &upper.first_counterexample {
        report.note("upper_counterexample", ce.clone());
    }
    report.note("linear_fit", json!({ "radius": linear.radius, "c": linear.c, "c_prev": linear.c_prev }));
    report.note(
        "theta_fit",
        json!({ "k": cfg.k, "radius": theta_fit.radius, "c": theta_fit.c, "c_prev": theta_fit.c_prev }),
    );
    Ok(report)
}

fn theta(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let r = verify_theta(cfg.k, cfg.grid_max)?;
    let mut report = ExperimentReport::new(
        Suite::Theta,
        cfg.mode,
        cfg.seed,
        &["property", "checked", "violations", "first_counterexample"],
    );
    for c in &r.checks {
        report.push_row(vec![
            c.name.to_string(),
            c.checked.to_string(),
            c.violations.to_string(),
            c.first_counterexample.clone().unwrap_or_default(),
        ]);
    }
    report.violations = r.violations();
    report.note("k", cfg.k);
    report.note("grid_max", cfg.grid_max);
    Ok(report)
}
