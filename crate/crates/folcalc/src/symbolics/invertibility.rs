//! Invertibility certificates for weighted symbols.
//!
//! By graded homogeneity it suffices to scan the compact set
//! `{rho(xi,eta) = 1} x base`. The scan samples the weighted sphere (angle
//! grid for n = 2, dilation-normalized seeded directions in general), takes
//! the smallest singular value over all points, and refines the grid until
//! the certified minimum is stable.

use serde::{Deserialize, Serialize};

use super::{FiberPoint, WeightedSymbol};
use crate::{Error, Result};

/// Scan resolution for the certificate.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridSpec {
    /// Points per angular dimension of the weighted sphere.
    pub angular: usize,
    /// Points per base dimension.
    pub base: usize,
    /// Doubling rounds allowed while the minimum is still moving by >= 10%.
    pub max_refinements: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            angular: 32,
            base: 16,
            max_refinements: 3,
        }
    }
}

/// Outcome of the weighted-sphere scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvertibilityCertificate {
    pub pass: bool,
    /// Smallest singular value found over the scan.
    pub s_min: f64,
    /// Where the minimum was attained: base point and fiber covector.
    pub witness_x: Vec<f64>,
    pub witness_fiber: Vec<f64>,
    pub tolerance: f64,
    /// s_min after each refinement round.
    pub refinement_history: Vec<f64>,
    /// Degree of the certified symbol (even whenever q >= 1 and the scan
    /// passes; the parity guard below enforces this).
    pub degree: u32,
}

/// Default tolerance on the certified smallest singular value.
pub const DEFAULT_TOL: f64 = 1e-6;

/// Scan the weighted sphere for the smallest singular value of the symbol.
///
/// Fails (pass = false, with witness) when the minimum drops below `tol`.
/// Non-square symbols are rejected.
pub fn check_invertibility(
    sym: &WeightedSymbol,
    grid: GridSpec,
    tol: f64,
) -> Result<InvertibilityCertificate> {
    if !sym.is_square() {
        return Err(Error::input(
            "invertibility scan requires a square symbol",
        ));
    }
    let split = sym.split();

    let mut angular = grid.angular.max(4);
    let mut base = grid.base.max(2);
    let mut history = Vec::new();
    let mut best: Option<(f64, Vec<f64>, Vec<f64>)> = None;

    for round in 0..=grid.max_refinements {
        let found = scan_once(sym, angular, base, round as u64);
        history.push(found.0);
        let stable = match &best {
            Some((prev, _, _)) if *prev > 0.0 => {
                (found.0 - prev).abs() / prev.abs() < 0.10
            }
            _ => false,
        };
        if best.as_ref().map_or(true, |(prev, _, _)| found.0 < *prev) {
            best = Some(found);
        }
        if stable {
            break;
        }
        angular *= 2;
        base *= 2;
    }

    let (s_min, witness_x, witness_fiber) = best.expect("at least one scan round");
    let pass = s_min >= tol;

    // Parity guard: with a genuine transverse direction an invertible symbol
    // must have even degree, since odd degree forces every monomial to carry
    // a leafwise factor and the symbol vanishes on (xi, eta) = (0, eta).
    if pass && split.q() >= 1 && sym.degree() % 2 != 0 {
        return Err(Error::Invariant(format!(
            "certificate passed for odd degree {} with q = {}; the scan must \
             have missed the xi = 0 circle",
            sym.degree(),
            split.q()
        )));
    }

    Ok(InvertibilityCertificate {
        pass,
        s_min,
        witness_x,
        witness_fiber,
        tolerance: tol,
        refinement_history: history,
        degree: sym.degree(),
    })
}

/// One scan round; returns (s_min, witness base point, witness fiber point).
fn scan_once(
    sym: &WeightedSymbol,
    angular: usize,
    base: usize,
    round: u64,
) -> (f64, Vec<f64>, Vec<f64>) {
    let split = sym.split();
    let n = split.n();
    let base_points: Vec<Vec<f64>> = base_grid(n, base);
    let dirs = sphere_points(sym, angular, round);

    let per_base: Vec<(f64, usize)> = crate::util::par_map(base_points.len(), |bi| {
        let x = &base_points[bi];
        let mut local_min = f64::INFINITY;
        let mut local_at = 0usize;
        for (fi, f) in dirs.iter().enumerate() {
            let s = smallest_singular_value(&sym.eval(x, f));
            if s < local_min {
                local_min = s;
                local_at = fi;
            }
        }
        (local_min, local_at)
    });

    let mut min = f64::INFINITY;
    let mut at = (0usize, 0usize);
    for (bi, (s, fi)) in per_base.iter().enumerate() {
        if *s < min {
            min = *s;
            at = (bi, *fi);
        }
    }
    (
        min,
        base_points[at.0].clone(),
        dirs[at.1].full(),
    )
}

fn smallest_singular_value(m: &crate::CMat) -> f64 {
    if m.nrows() == 1 && m.ncols() == 1 {
        return m[(0, 0)].norm();
    }
    let sv = m.clone().singular_values();
    sv.iter().cloned().fold(f64::INFINITY, f64::min)
}

fn base_grid(n: usize, per_axis: usize) -> Vec<Vec<f64>> {
    let h = std::f64::consts::TAU / per_axis as f64;
    let mut pts = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(pts.len() * per_axis);
        for p in &pts {
            for j in 0..per_axis {
                let mut v = p.clone();
                v.push(j as f64 * h);
                next.push(v);
            }
        }
        pts = next;
    }
    pts
}

/// Points on the weighted sphere. For a 2-dimensional fiber this is a
/// deterministic angle grid pushed onto `{rho = 1}` by graded normalization;
/// in general it is seeded random directions, normalized the same way.
fn sphere_points(sym: &WeightedSymbol, count: usize, round: u64) -> Vec<FiberPoint> {
    let split = sym.split();
    let n = split.n();
    let mut out = Vec::with_capacity(count + 2 * n);
    // Always include the axis poles: single-axis covectors of weighted radius
    // one. These catch symbols that vanish exactly on a coordinate circle,
    // which an offset angle grid would otherwise straddle.
    for axis in 0..n {
        for sign in [1.0, -1.0] {
            let mut raw = vec![0.0; n];
            raw[axis] = sign;
            out.push(FiberPoint::from_full(&split, &raw));
        }
    }
    if n == 2 {
        for j in 0..count {
            let th = std::f64::consts::TAU * (j as f64 + 0.5) / count as f64;
            let raw = vec![th.cos(), th.sin()];
            let f = FiberPoint::from_full(&split, &raw);
            if let Some(p) = f.normalize() {
                out.push(p);
            }
        }
    } else {
        use rand::Rng;
        let mut rng = crate::util::seeded_rng(0xB07A_5EED ^ round, n as u64);
        while out.len() < count * n {
            let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0f64)).collect();
            let f = FiberPoint::from_full(&split, &raw);
            if let Some(p) = f.normalize() {
                out.push(p);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcalc::{DiffOp, FoliationSplit, MultiIndex, TrigPoly};
    use crate::symbolics::principal_symbol;
    use num_complex::Complex64;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn heat_symbol_certifies_with_unit_minimum() {
        // |xi^2 + i eta| = sqrt(xi^4 + eta^2) = rho^2 = 1 on the weighted
        // sphere, so the dense scan must come out at exactly 1.
        let sym = crate::symbolics::tests::heat_symbol();
        let cert = check_invertibility(&sym, GridSpec::default(), DEFAULT_TOL).unwrap();
        assert!(cert.pass);
        assert!((cert.s_min - 1.0).abs() < 1e-10, "s_min = {}", cert.s_min);
    }

    #[test]
    fn leafwise_laplacian_fails_with_transverse_witness() {
        // sigma = xi^2 vanishes at (xi, eta) = (0, +-1)
        let split = FoliationSplit::new(1, 1).unwrap();
        let mut op = DiffOp::zero(split, 1, 1);
        op.add_monomial(
            MultiIndex::new(vec![2, 0]),
            TrigPoly::scalar(2, z(-1.0, 0.0)),
        )
        .unwrap();
        let sym = principal_symbol(&op).unwrap();
        let cert = check_invertibility(&sym, GridSpec::default(), DEFAULT_TOL).unwrap();
        assert!(!cert.pass);
        // witness sits near the xi = 0 circle of the weighted sphere
        assert!(cert.witness_fiber[0].abs() < 0.2, "{:?}", cert.witness_fiber);
        assert!((cert.witness_fiber[1].abs() - 1.0).abs() < 0.2);
    }

    #[test]
    fn unit_modulus_coefficient_keeps_unit_minimum() {
        // |e^{ikx} i (xi_1 + i xi_2)| = |xi| = 1 on the unit sphere (q = 0)
        let op = crate::symbolics::tests::twisted_cauchy_riemann(1);
        let sym = principal_symbol(&op).unwrap();
        let cert = check_invertibility(&sym, GridSpec::default(), DEFAULT_TOL).unwrap();
        assert!(cert.pass);
        assert!((cert.s_min - 1.0).abs() < 1e-10);
    }

    #[test]
    fn non_square_symbol_rejected() {
        let split = FoliationSplit::new(1, 1).unwrap();
        let mut op = DiffOp::zero(split, 2, 1);
        let mut c = crate::CMat::zeros(2, 1);
        c[(0, 0)] = z(1.0, 0.0);
        op.add_monomial(MultiIndex::new(vec![2, 0]), TrigPoly::constant(2, c))
            .unwrap();
        let sym = principal_symbol(&op).unwrap();
        assert!(check_invertibility(&sym, GridSpec::default(), DEFAULT_TOL).is_err());
    }
}
