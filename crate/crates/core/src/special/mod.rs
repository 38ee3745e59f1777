//! Dixonian elliptic functions, the hypergeometric function `W`, and related constants.

mod constants;
mod dixon;
mod hyper;
mod pq;
mod quad;

pub use constants::{omega, pi3, pi3_sixth, pi_const};
pub use dixon::{
    addition_residuals, cm, cp, dixon_hyper_relation, pole_distance, reduce_to_lattice, sm, sm_cm, sm_cm_add_formula, sp, sp_cp,
    sp_cp_add_formula, taylor_coefficients, POLE_TOLERANCE,
};
pub(crate) use dixon::{taylor_ratio_cubed, TAYLOR_RADIUS_CUBED};
pub use hyper::{hyper_w, hyper_w_by, kummer_solution, ode_residual, pfaff_residual, s3_inversion_residuals, Kummer, WRoute};
pub use pq::{pq_series, Laurent};
pub use quad::adaptive_gauss;
