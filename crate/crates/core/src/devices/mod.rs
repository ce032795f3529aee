//! Nonlinear optical devices: the grating beam splitter, its Kerr control,
//! and the nonlinear directional coupler.

pub mod cbs;
pub mod coupler;
pub mod grating;

pub use cbs::{cbs_physical_chain, CbsPorts};
pub use coupler::{
    coupler_constants, coupler_effective_params, coupler_transfer, eigenmode_transfer,
    integrate_coupler_ode, CouplerConstants, CouplerOutput, CouplerScenario, EffectiveParams,
    Eigenmode, OdeOutput,
};
pub use grating::{
    grating_transfer, interference_pattern, kerr_control_beta, linearize_control, BeamRole,
    BeamSpec, ControlCalibration, GratingParams, InterferencePattern,
};
