//! Convex roofs of rank-2 mixtures: characteristic curves, their lower
//! convex envelope, closed-form references and explicit decompositions.

mod curve;
mod decomposition;
mod hull;
mod reference;
pub mod csv;

pub use curve::{
    characteristic_curve, characteristic_curves, envelope, envelope_from_grid, golden_min, min_curve, min_curve_with_arg, nontrivial_zero,
    phase_minimum, tangent_breakpoint, uniform_p_grid, uniform_phi_grid, CurveGrid, EnvelopeResult, DEFAULT_P_POINTS,
    DEFAULT_PHI_POINTS,
};
pub use decomposition::{
    build_decomposition, build_form, regions, verify_decomposition, Decomposition, DecompositionForm, Region,
    Verification, MAX_TERMS,
};
pub use hull::{eval_hull, lower_convex_envelope, lower_hull};
pub use reference::{
    g_i_ghzw, g_i_rho2, g_ii_ghzw, g_ii_rho2, p0_f1_rho1, p0_f1_rho2, p0_ghzw, p1_equation, p1_ghzw,
    reference_formula, solve_p1, step, Case, PiecewiseFormula, P0_F2_RHO1, P0_F3_RHO3, P_STAR_RHO2,
};
