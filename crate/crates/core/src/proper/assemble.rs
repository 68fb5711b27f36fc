use std::fmt;
use std::str::FromStr;

use super::decay::decay_cocycle;
use super::theta::DecaySpec;
use super::tripod::{tripod_cocycle, TripodSpec};
use crate::cocycle::defect_measure;
use crate::derivation::{
    rescale_conjugate, verify_identities, ConjugatedAction, DerivationAction, IdentityReport, VerifyOptions,
};
use crate::error::{Error, Result};
use crate::group::{GroupWord, DEFAULT_BALL_CAP};
use crate::par::Exec;
use crate::quasitree::{AxisFamily, QtCocycle, WConfig};
use crate::scalar::Scalar;
use crate::sparse::SparseVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceMode {
    #[default]
    Tripod,
    Decay,
}

impl FromStr for InstanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tripod" => Ok(InstanceMode::Tripod),
            "decay" => Ok(InstanceMode::Decay),
            other => Err(Error::Parse(format!("unknown instance mode `{other}`"))),
        }
    }
}

impl fmt::Display for InstanceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstanceMode::Tripod => "tripod",
            InstanceMode::Decay => "decay",
        })
    }
}

/// Shared constants for building one quasi-cocycle per family.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceOptions {
    pub eps: u32,
    pub l: u32,
    pub k: u32,
    /// Hyperbolicity used when selecting tripods.
    pub delta: f64,
    pub max_s: usize,
    pub decay: DecaySpec,
}

impl InstanceOptions {
    pub fn new(eps: u32, l: u32, k: u32) -> Self {
        InstanceOptions { eps, l, k, delta: 1.0, max_s: 12, decay: DecaySpec { k: 1, j_max: 200 } }
    }
}

pub fn instance_cocycle<S: Scalar>(
    family: &AxisFamily,
    mode: InstanceMode,
    opts: &InstanceOptions,
) -> Result<QtCocycle<S>> {
    let config = WConfig::new(family, opts.eps, opts.l, opts.k)?;
    match mode {
        InstanceMode::Tripod => {
            let spec = TripodSpec::select(family, &config, opts.delta, opts.max_s)?;
            tripod_cocycle(family, &config, &spec)
        }
        InstanceMode::Decay => decay_cocycle(family, &config, &opts.decay),
    }
}

/// The `ℓ¹` direct sum of rescaled, conjugated derivation actions, one per
/// quasi-cocycle. `‖ζ(g)‖` is the sum of the component norms.
#[derive(Clone, Debug)]
pub struct ProductAction<S> {
    components: Vec<ConjugatedAction<S, QtCocycle<S>>>,
}

/// Measures each defect on the ball of `defect_radius`, then rescales by
/// `min(1, ε/Δ)` and conjugates to `ℓ¹`.
pub fn assemble_action<S: Scalar>(
    cocycles: Vec<QtCocycle<S>>,
    epsilon: S,
    defect_radius: usize,
    exec: Exec,
) -> Result<ProductAction<S>> {
    if cocycles.is_empty() {
        return Err(Error::Precondition("at least one instance is required".into()));
    }
    let components = cocycles
        .into_iter()
        .map(|alpha| {
            let defect = defect_measure(&alpha, defect_radius, DEFAULT_BALL_CAP, exec)?.defect;
            rescale_conjugate(DerivationAction::new(alpha), epsilon.clone(), defect)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProductAction { components })
}

impl<S: Scalar> ProductAction<S> {
    pub fn components(&self) -> &[ConjugatedAction<S, QtCocycle<S>>] {
        &self.components
    }

    pub fn zeta(&self, g: &GroupWord) -> Vec<(SparseVec<S>, SparseVec<S>)> {
        self.components.iter().map(|c| c.zeta(g)).collect()
    }

    pub fn orbit_norm(&self, g: &GroupWord) -> S {
        self.components.iter().fold(S::zero(), |acc, c| acc.add(&c.orbit_norm(g)))
    }

    /// Largest component bound `2(1 + s·Δ)`.
    pub fn lipschitz_bound(&self) -> S {
        self.components.iter().map(|c| c.lipschitz_bound()).reduce(S::max_of).expect("nonempty product")
    }

    /// Identity checks run on every component, with counts summed by name.
    pub fn verify(&self, opts: &VerifyOptions) -> Result<IdentityReport> {
        let mut merged: Option<IdentityReport> = None;
        for c in &self.components {
            let r = verify_identities(c.inner(), opts)?;
            match &mut merged {
                None => merged = Some(r),
                Some(m) => {
                    for (a, b) in m.checks.iter_mut().zip(r.checks) {
                        a.checked += b.checked;
                        a.violations += b.violations;
                        if a.first_counterexample.is_none() {
                            a.first_counterexample = b.first_counterexample;
                        }
                    }
                }
            }
        }
        Ok(merged.expect("nonempty product"))
    }
}
