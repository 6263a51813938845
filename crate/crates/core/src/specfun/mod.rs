//! Gamma and zeta families and the generalized hypergeometric engine.

mod bernoulli;
mod gamma;
mod hyp;
pub(crate) mod tail;
mod transforms;
mod zeta;

pub use bernoulli::even_bernoulli;
pub use gamma::{digamma, euler_gamma, gamma, ln_gamma, pochhammer, rgamma};
pub use zeta::{
    hurwitz_zeta, polygamma, polygamma_at_one, riemann_zeta, zeta_family, ZetaKind, ZetaRequest,
};
pub use hyp::{
    hyp2f1_minus_one_direct, hyp_pfq, hyp_pfq_exact, hyp_pfq_exact_complex, hyp_pfq_with,
    HypStrategy, HypergeometricSpec,
};
pub use transforms::{
    a1_terms, appendix_min_excess, appendix_rhs, appendix_tuples, kummer_closed, kummer_series,
    three_f2_transform_check, AppendixId, KummerId,
};
