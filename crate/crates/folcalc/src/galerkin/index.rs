//! Fredholm index via thresholded singular-value counts.

use serde::{Deserialize, Serialize};

use super::galerkin_matrix;
use crate::opcalc::DiffOp;
use crate::symbolics::{check_invertibility, principal_symbol, GridSpec};
use crate::{Error, Result};

/// How near-zero singular values are separated from the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThresholdRule {
    /// Count singular values below `1e-8 * sigma_max`.
    Absolute,
    /// Among singular values below `1e-4 * sigma_max`, cut at the largest
    /// multiplicative jump.
    RelativeGap,
}

pub const ABSOLUTE_FACTOR: f64 = 1e-8;
pub const RELATIVE_ZONE: f64 = 1e-4;
/// The smallest uncounted singular value must exceed this multiple of the
/// threshold for a count to be trusted.
pub const GAP_FACTOR: f64 = 10.0;

/// Per-cutoff diagnostics of the sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepEntry {
    pub k_cut: i64,
    pub dim_ker: usize,
    pub dim_coker: usize,
    pub sigma_max: f64,
    pub tau: f64,
    /// Smallest uncounted singular value on the kernel side (and adjoint side).
    pub gap_ker: f64,
    pub gap_coker: f64,
    /// Counts from the alternative threshold rule.
    pub dim_ker_alt: usize,
    pub dim_coker_alt: usize,
}

/// Outcome of the stabilization sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IndexReport {
    /// Asserted index (`dim_ker - dim_coker`), present only when stable.
    pub index: Option<i64>,
    pub dim_ker: usize,
    pub dim_coker: usize,
    pub stable: bool,
    /// Whether the weighted symbol carries a passing invertibility
    /// certificate; counts without one are reported but meaningless.
    pub certified: bool,
    pub certificate_s_min: f64,
    pub sweep: Vec<SweepEntry>,
    pub rule: ThresholdRule,
}

impl IndexReport {
    /// Index when both stable and certified, else `None`.
    pub fn certified_index(&self) -> Option<i64> {
        if self.certified {
            self.index
        } else {
            None
        }
    }
}

fn count_below(svals: &[f64], rule: ThresholdRule) -> (usize, f64, f64) {
    // returns (count, tau, smallest uncounted)
    let smax = svals.iter().cloned().fold(0.0f64, f64::max);
    if smax == 0.0 {
        return (svals.len(), 0.0, f64::INFINITY);
    }
    let mut sorted: Vec<f64> = svals.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    match rule {
        ThresholdRule::Absolute => {
            let tau = ABSOLUTE_FACTOR * smax;
            let count = sorted.iter().take_while(|&&s| s < tau).count();
            let gap = sorted.get(count).cloned().unwrap_or(f64::INFINITY);
            (count, tau, gap)
        }
        ThresholdRule::RelativeGap => {
            let zone = RELATIVE_ZONE * smax;
            let in_zone = sorted.iter().take_while(|&&s| s < zone).count();
            if in_zone == 0 {
                return (0, zone, sorted[0]);
            }
            // largest multiplicative jump inside the zone boundary
            let mut best = (0usize, 0.0f64);
            for i in 0..in_zone {
                let lo = sorted[i].max(1e-300);
                let hi = sorted.get(i + 1).cloned().unwrap_or(smax);
                let ratio = hi / lo;
                if ratio >= best.1 {
                    best = (i + 1, ratio);
                }
            }
            let count = best.0;
            let gap = sorted.get(count).cloned().unwrap_or(f64::INFINITY);
            (count, sorted[count - 1].max(1e-300), gap)
        }
    }
}

fn singular_values(m: &crate::CMat) -> Vec<f64> {
    m.clone().singular_values().as_slice().to_vec()
}

/// Run the stabilization sweep and assert an index only when the kernel and
/// cokernel counts agree across the last three cutoffs, the spectral gap
/// clears `GAP_FACTOR * tau`, and both threshold rules agree.
///
/// The cokernel is counted from the rectangular matrix of the formal adjoint
/// at the same cutoff, not from the rows of the matrix of `P`.
pub fn numerical_index(op: &DiffOp, k_list: &[i64], rule: ThresholdRule) -> Result<IndexReport> {
    if k_list.len() < 3 {
        return Err(Error::input(
            "stabilization needs at least three cutoffs",
        ));
    }
    for &k_cut in k_list {
        if k_cut < op.bandwidth().max(1) {
            return Err(Error::input(format!(
                "cutoff {k_cut} below coefficient bandwidth"
            )));
        }
    }
    let sym = principal_symbol(op)?;
    let (certified, s_min) = if sym.is_square() {
        let cert = check_invertibility(&sym, GridSpec::default(), crate::symbolics::DEFAULT_TOL)?;
        (cert.pass, cert.s_min)
    } else {
        (false, 0.0)
    };

    let adjoint = op.formal_adjoint();
    let alt_rule = match rule {
        ThresholdRule::Absolute => ThresholdRule::RelativeGap,
        ThresholdRule::RelativeGap => ThresholdRule::Absolute,
    };

    let entries: Vec<SweepEntry> = crate::util::par_map(k_list.len(), |i| {
        let k_cut = k_list[i];
        let g = galerkin_matrix(op, k_cut).expect("validated cutoff");
        let gt = galerkin_matrix(&adjoint, k_cut).expect("validated cutoff");
        let sv = singular_values(&g.matrix);
        let svt = singular_values(&gt.matrix);
        let smax = sv.iter().cloned().fold(0.0f64, f64::max);
        let (ker, tau, gap_ker) = count_below(&sv, rule);
        let (coker, _, gap_coker) = count_below(&svt, rule);
        let (ker_alt, _, _) = count_below(&sv, alt_rule);
        let (coker_alt, _, _) = count_below(&svt, alt_rule);
        SweepEntry {
            k_cut,
            dim_ker: ker,
            dim_coker: coker,
            sigma_max: smax,
            tau,
            gap_ker,
            gap_coker,
            dim_ker_alt: ker_alt,
            dim_coker_alt: coker_alt,
        }
    });

    let last3 = &entries[entries.len() - 3..];
    let counts_stable = last3
        .iter()
        .all(|e| e.dim_ker == last3[0].dim_ker && e.dim_coker == last3[0].dim_coker);
    let rules_agree = last3
        .iter()
        .all(|e| e.dim_ker == e.dim_ker_alt && e.dim_coker == e.dim_coker_alt);
    let gaps_clear = last3
        .iter()
        .all(|e| e.gap_ker > GAP_FACTOR * e.tau && e.gap_coker > GAP_FACTOR * e.tau);
    let stable = counts_stable && rules_agree && gaps_clear;

    let dim_ker = last3[0].dim_ker;
    let dim_coker = last3[0].dim_coker;
    Ok(IndexReport {
        index: stable.then(|| dim_ker as i64 - dim_coker as i64),
        dim_ker,
        dim_coker,
        stable,
        certified,
        certificate_s_min: s_min,
        sweep: entries,
        rule,
    })
}
