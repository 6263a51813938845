//! Arbitrary-precision complex values, exact rationals and dense polynomials.

mod complex;
mod gaussian;
mod poly;

pub use complex::{cmp_abs, digits_for_prec, fmt_real, HPComplex, DEFAULT_PREC, MIN_PREC};
pub use gaussian::ComplexRational;
pub use poly::{
    parse_rational, poly_affine_substitute, poly_eval_complex, poly_reflect, poly_structural_equal,
    rational_string, BigRational, RationalPolynomial,
};

use rug::ops::Pow;
use rug::Float;

/// `2^e` as a float of the given precision.
pub fn pow2(e: i32, prec: u32) -> Float {
    Float::with_val(prec.max(MIN_PREC), Float::i_exp(1, e))
}

/// Relative tolerance `2^-(prec - slack)`.
pub fn eps(prec: u32, slack: u32) -> Float {
    pow2(-(prec as i32 - slack as i32), 64)
}

/// Decimal tolerance `10^e` at 64-bit precision.
pub fn tol10(e: i32) -> Float {
    Float::with_val(128, 10u32).pow(e)
}

/// `log2 |x|`, or a large negative number for zero.
pub fn log2_abs(x: &Float) -> f64 {
    if x.is_zero() {
        return -1.0e9;
    }
    let (m, e) = x.to_f64_exp();
    m.abs().log2() + e as f64
}
