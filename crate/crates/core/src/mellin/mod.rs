//! Mellin transforms `M_n^m(s) = int_0^1 x^{s-1} P_n^m(x) (1 - x^2)^{-1/2} dx`.

mod closed;
mod genfun;
mod laplace;
mod quadrature;
mod reps;

pub use closed::{
    eval_poly, m1_exact, m1_gamma_ratio, m1_rational_function, m1_rationality, mellin_closed, mellin_diagonal,
    mellin_recursive, poly_factor, GammaPrefactor, M1Rationality, MellinClosedForm,
};
pub use genfun::{genfun, genfun_coefficient, genfun_lines, special_value_at_1, Genfun};
pub use laplace::mellin_laplace;
pub use quadrature::{legendre_pnm, mellin_quadrature, mellin_quadrature_with, tanh_quadrature};
pub use reps::{mellin_rep, RepVariant};
