//! Certify functional equations, critical-line zeros, difference equations and the Hahn bridge.

mod equations;
mod hahn;
mod report;
mod roots;

pub use equations::{
    difference_equation_residual, difference_equation_symbolic, functional_equation_check,
    functional_equation_check_with, DiffEqResidual, SignConvention,
};
pub use hahn::{hahn_constant_exact, hahn_eval, hahn_eval_exact, hahn_proportionality, HahnParams, HahnReport};
pub use report::{critical_line_report, precision_scaling, PrecisionScaling, ZeroReport};
pub use roots::{find_roots, find_roots_certified, CertifiedRoot};
