//! Fractional-part and integer-part Mellin integrals, their zeta closed forms,
//! the `I_j`/`J_j` transforms, and brute-force oracles.

mod fermi;
mod general;
mod moments;
mod pair;
mod zeta_comb;

pub use fermi::{
    fermi_bose_series, fermi_bose_transform, fermi_bose_zeta, fermi_closed, reduction_polynomial, Statistics,
    TransformValue,
};
pub use general::{frac_general, frac_general_alpha_one, frac_general_oracle, half_2f1_a23};
pub use moments::{
    frac_basic, frac_int_combination, frac_int_moments, numeric_fracpart_oracle, FracIntegralSpec, OracleResult,
};
pub use pair::{frac_pair_integral, frac_pair_oracle, PairOracle, Sublemma};
pub use zeta_comb::{
    basic_combination, moment_a, moment_b, moment_c, moment_c_limit, moment_d, moment_d_limit, numeric_limit,
    ZetaCombination,
};
