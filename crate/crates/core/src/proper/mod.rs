//! Tripod and decay quasi-cocycles, their product actions, θ-functions and
//! the properness profile.

mod assemble;
mod decay;
mod profile;
mod theta;
mod tripod;

pub use assemble::{assemble_action, instance_cocycle, InstanceMode, InstanceOptions, ProductAction};
pub use decay::{
    axis_decay_norm, decay_cocycle, decay_growth, decay_vector, double_sum_check, fit_growth_constant,
    growth_along_axis,
};
pub use profile::{
    fit_constant, linear_upper_check, lower_bound_fit, orbit_table, properness_profile, FitMode, LowerBoundFit,
    OrbitAction, OrbitRow, ProfileRow, UpperCheck,
};
pub use theta::{
    log_iter, log_plus, tail_bound, theta, theta_real, threshold, verify_theta, DecaySpec, PropertyCheck, Theta,
    ThetaReport,
};
pub use tripod::{tripod_cocycle, tripod_gromov, TripodSpec};
