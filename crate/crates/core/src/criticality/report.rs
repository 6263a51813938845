//! Critical-line reports for the polynomial factors.

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::mellin::poly_factor;
use crate::mpcore::{log2_abs, HPComplex};

use super::roots::find_roots_certified;

#[derive(Clone, Debug)]
pub struct ZeroReport {
    pub n: u32,
    pub m: u32,
    pub roots: Vec<HPComplex>,
    /// `|p(root)|` for the monic normalization.
    pub residuals: Vec<Float>,
    /// Newton radii `|p/p'|` at each root.
    pub newton_radii: Vec<Float>,
    /// `max |Re root - 1/2|`
    pub max_deviation: Float,
    pub precision_bits: u32,
    /// Roots of `q(s) = p(s + 1/2)` match the shifted roots of `p`.
    pub shift_match: bool,
    /// `max |Re r|` over the roots of `q`.
    pub q_max_real: Float,
}

impl ZeroReport {
    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn deviation_log10(&self) -> f64 {
        log2_abs(&self.max_deviation) * std::f64::consts::LOG10_2
    }
}

/// Roots of `p_n^m`, their distance from `Re s = 1/2`, and the cross-check
/// against the roots of `q(s) = p_n^m(s + 1/2)`.
pub fn critical_line_report(n: u32, m: u32, prec: u32) -> Result<ZeroReport> {
    if m % 2 == 1 {
        return Err(Error::Domain(format!("critical-line report needs even m, got {m}")));
    }
    let p = poly_factor(n, m)?.poly;
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::Domain(format!("p_{n}^{m} is constant")));
    }
    let certified = find_roots_certified(&p, prec)?;
    // measured on the unrounded roots so the precision-scaling check sees the true error
    let mut max_deviation = Float::with_val(64, 0u32);
    for c in &certified {
        let w = c.wide.prec();
        max_deviation = max_deviation.max(&Float::with_val(w, c.wide.re() - 0.5f64).abs());
    }

    let q = p.shift(&Rational::from((1, 2)));
    let q_roots = find_roots_certified(&q, prec)?;
    let mut q_max_real = Float::with_val(64, 0u32);
    for c in &q_roots {
        q_max_real = q_max_real.max(&Float::with_val(64, c.wide.re().clone().abs()));
    }
    let shift_match = roots_match(&certified, &q_roots, prec);

    Ok(ZeroReport {
        n,
        m,
        roots: certified.iter().map(|c| c.root.clone()).collect(),
        residuals: certified.iter().map(|c| c.residual.clone()).collect(),
        newton_radii: certified.iter().map(|c| c.newton_radius.clone()).collect(),
        max_deviation,
        precision_bits: prec,
        shift_match,
        q_max_real,
    })
}

/// Every root of `p` lies within the certificate radius `2^-(prec/2)` of a distinct shifted root of `q`.
fn roots_match(p: &[super::roots::CertifiedRoot], q: &[super::roots::CertifiedRoot], prec: u32) -> bool {
    if p.len() != q.len() {
        return false;
    }
    let half = HPComplex::from_ratio(1, 2, prec + 64);
    let tol = Float::with_val(64, 1u32) >> (prec / 2);
    let mut used = vec![false; q.len()];
    for a in p {
        let target = &a.wide - &half;
        let hit = q.iter().enumerate().filter(|(j, _)| !used[*j]).find(|(_, b)| target.dist(&b.wide) <= tol);
        match hit {
            Some((j, _)) => used[j] = true,
            None => return false,
        }
    }
    true
}

/// Deviation at `prec` and `2 prec`, as `log10` values.
#[derive(Clone, Debug)]
pub struct PrecisionScaling {
    pub low: ZeroReport,
    pub high: ZeroReport,
}

impl PrecisionScaling {
    /// `log10(high / low)`, or `-inf` when the high-precision deviation is exactly zero.
    pub fn improvement_log10(&self) -> f64 {
        self.high.deviation_log10() - self.low.deviation_log10()
    }
}

pub fn precision_scaling(n: u32, m: u32, prec: u32) -> Result<PrecisionScaling> {
    Ok(PrecisionScaling { low: critical_line_report(n, m, prec)?, high: critical_line_report(n, m, 2 * prec)? })
}
