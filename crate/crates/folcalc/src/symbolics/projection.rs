//! Graph projections and projection-valued fields over phase space.
//!
//! For a matrix `T` the orthogonal projection onto its graph
//! `{(v, Tv)}` has the block form
//!
//! ```text
//! e_T = [ (1+T*T)^{-1}      (1+T*T)^{-1} T* ]
//!       [ T (1+T*T)^{-1}    T (1+T*T)^{-1} T* ]
//! ```
//!
//! with the equivalent right-hand variants `T*(1+TT*)^{-1}` and
//! `1 - (1+TT*)^{-1}` for the second column. Both forms are implemented and
//! cross-checked. Applied pointwise to an invertible weighted symbol this
//! produces a projection field that decays to `diag(0,1)` as the weighted
//! radius grows; the empirical decay exponent is measured and reported.

use serde::{Deserialize, Serialize};

use super::{FiberPoint, InvertibilityCertificate, WeightedSymbol};
use crate::{CMat, Error, Result};

/// Graph projection via the left-inverse form.
///
/// Accepts any rectangular `T` (rows r, cols c) and returns the
/// `(c+r) x (c+r)` projection onto the graph in `C^c (+) C^r`.
pub fn graph_projection(t: &CMat) -> CMat {
    let c = t.ncols();
    let inner = CMat::identity(c, c) + t.adjoint() * t;
    let inv = inner.try_inverse().expect("1 + T*T is positive definite");
    let ul = inv.clone();
    let ur = &inv * t.adjoint();
    let ll = t * &inv;
    let lr = t * &inv * t.adjoint();
    assemble_blocks(&ul, &ur, &ll, &lr)
}

/// Graph projection via the right-inverse form
/// (`T*(1+TT*)^{-1}`, `1-(1+TT*)^{-1}`); equal to [`graph_projection`] up to
/// rounding.
pub fn graph_projection_alt(t: &CMat) -> CMat {
    let c = t.ncols();
    let r = t.nrows();
    let left = CMat::identity(c, c) + t.adjoint() * t;
    let left_inv = left.try_inverse().expect("positive definite");
    let right = CMat::identity(r, r) + t * t.adjoint();
    let right_inv = right.try_inverse().expect("positive definite");
    let ul = left_inv.clone();
    let ur = t.adjoint() * &right_inv;
    let ll = t * &left_inv;
    let lr = CMat::identity(r, r) - &right_inv;
    assemble_blocks(&ul, &ur, &ll, &lr)
}

/// Spectral (operator) norm: largest singular value.
pub fn op_norm(m: &CMat) -> f64 {
    if m.nrows() == 1 && m.ncols() == 1 {
        return m[(0, 0)].norm();
    }
    m.clone()
        .singular_values()
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

fn assemble_blocks(ul: &CMat, ur: &CMat, ll: &CMat, lr: &CMat) -> CMat {
    let c = ul.nrows();
    let r = lr.nrows();
    let mut e = CMat::zeros(c + r, c + r);
    e.view_mut((0, 0), (c, c)).copy_from(ul);
    e.view_mut((0, c), (c, r)).copy_from(ur);
    e.view_mut((c, 0), (r, c)).copy_from(ll);
    e.view_mut((c, c), (r, r)).copy_from(lr);
    e
}

/// The constant comparison projection `diag(0, 1)` of the same block shape.
pub fn limit_projection(c: usize, r: usize) -> CMat {
    let mut e = CMat::zeros(c + r, c + r);
    for i in 0..r {
        e[(c + i, c + i)] = num_complex::Complex64::new(1.0, 0.0);
    }
    e
}

/// Fiber sampling plan for a projection field.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiberGridSpec {
    /// Base points per axis.
    pub base: usize,
    /// Fiber points per axis inside the weighted ball of radius `radius`.
    pub fiber: usize,
    /// Weighted radius of the sampled ball.
    pub radius: f64,
}

impl Default for FiberGridSpec {
    fn default() -> Self {
        FiberGridSpec {
            base: 8,
            fiber: 16,
            radius: 4.0,
        }
    }
}

/// Projection values sampled over base x fiber, with projection invariants
/// verified nodewise and the fiber decay toward `diag(0,1)` measured.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProjField {
    pub m: usize,
    pub spec: FiberGridSpec,
    /// Axis layout: base axes first, then fiber axes; row-major node order.
    pub shape: Vec<usize>,
    /// 2m x 2m complex entries per node, row-major within each node.
    pub data: Vec<(f64, f64)>,
    /// Largest deviations found while validating the field.
    pub max_idempotency_defect: f64,
    pub max_selfadjoint_defect: f64,
    pub max_trace_defect: f64,
    /// Fitted exponent kappa in `||e - diag(0,1)|| ~ C rho^(-kappa)`.
    pub decay_exponent: f64,
    pub decay_constant: f64,
}

const PROJ_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-8;

/// Sample the graph-projection field of a certified symbol.
///
/// Refuses to run without a passing invertibility certificate: the decay of
/// `e - diag(0,1)` toward zero is exactly what invertibility buys, and the
/// field is not a compactly-supported datum without it.
pub fn symbol_projection_field(
    sym: &WeightedSymbol,
    cert: &InvertibilityCertificate,
    spec: &FiberGridSpec,
) -> Result<ProjField> {
    if !cert.pass {
        return Err(Error::Uncertified(
            "projection field requires a passing invertibility certificate".into(),
        ));
    }
    if !sym.is_square() {
        return Err(Error::input("projection field needs a square symbol"));
    }
    let split = sym.split();
    let n = split.n();
    let m = sym.rank_in();

    let base_axes: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            (0..spec.base)
                .map(|j| std::f64::consts::TAU * j as f64 / spec.base as f64)
                .collect()
        })
        .collect();
    // Fiber axes in weighted units: component i spans [-R^w, R^w] for weight w.
    let fiber_axes: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let ext = spec.radius.powi(split.weight(i) as i32);
            (0..spec.fiber)
                .map(|j| -ext + 2.0 * ext * (j as f64 + 0.5) / spec.fiber as f64)
                .collect()
        })
        .collect();

    let mut shape: Vec<usize> = vec![spec.base; n];
    shape.extend(vec![spec.fiber; n]);

    let total: usize = shape.iter().product();
    let lim = limit_projection(m, m);

    let mut data = Vec::with_capacity(total * 4 * m * m);
    let mut idem = 0.0f64;
    let mut selfadj = 0.0f64;
    let mut trace = 0.0f64;
    let mut decay_samples: Vec<(f64, f64)> = Vec::new();

    for node in 0..total {
        let mut rem = node;
        let mut idx = vec![0usize; 2 * n];
        for a in (0..2 * n).rev() {
            idx[a] = rem % shape[a];
            rem /= shape[a];
        }
        let x: Vec<f64> = (0..n).map(|a| base_axes[a][idx[a]]).collect();
        let fiber: Vec<f64> = (0..n).map(|a| fiber_axes[a][idx[n + a]]).collect();
        let fp = FiberPoint::from_full(&split, &fiber);
        let e = graph_projection(&sym.eval(&x, &fp));

        idem = idem.max((&e * &e - &e).norm());
        selfadj = selfadj.max((e.adjoint() - &e).norm());
        trace = trace.max((e.trace().re - m as f64).abs() + e.trace().im.abs());

        let rho = fp.weighted_radius();
        if rho > 1.0 {
            decay_samples.push((rho, op_norm(&(&e - &lim))));
        }
        for v in e.iter() {
            data.push((v.re, v.im));
        }
    }

    if idem > PROJ_TOL || selfadj > PROJ_TOL {
        return Err(Error::Invariant(format!(
            "projection invariants violated: idempotency {idem:.2e}, self-adjointness {selfadj:.2e}"
        )));
    }
    if trace > TRACE_TOL {
        return Err(Error::Invariant(format!(
            "projection trace defect {trace:.2e} exceeds {TRACE_TOL:.0e}"
        )));
    }

    let (rhos, norms): (Vec<f64>, Vec<f64>) = decay_samples.into_iter().unzip();
    let kappa = crate::util::loglog_slope(&rhos, &norms).unwrap_or(0.0);
    // constant from the farthest shell
    let c = rhos
        .iter()
        .zip(&norms)
        .map(|(r, v)| v * r.powf(-kappa))
        .fold(0.0f64, f64::max);

    Ok(ProjField {
        m,
        spec: spec.clone(),
        shape,
        data,
        max_idempotency_defect: idem,
        max_selfadjoint_defect: selfadj,
        max_trace_defect: trace,
        decay_exponent: -kappa,
        decay_constant: c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolics::{check_invertibility, GridSpec, DEFAULT_TOL};
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn graph_of_zero_map() {
        let t = CMat::zeros(1, 1);
        let e = graph_projection(&t);
        assert_relative_eq!(e[(0, 0)].re, 1.0, epsilon = 1e-15);
        assert_relative_eq!(e[(1, 1)].re, 0.0, epsilon = 1e-15);
        assert_relative_eq!(e[(0, 1)].norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn graph_of_unit_scalar() {
        // T = 1: all four blocks are 1/2
        let t = CMat::from_element(1, 1, z(1.0, 0.0));
        let e = graph_projection(&t);
        for i in 0..2 {
            for j in 0..2 {
                assert_relative_eq!(e[(i, j)].re, 0.5, epsilon = 1e-15);
                assert_relative_eq!(e[(i, j)].im, 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn graph_of_large_scalar_approaches_range_projection() {
        let t = CMat::from_element(1, 1, z(1e8, 0.0));
        let e = graph_projection(&t);
        let lim = limit_projection(1, 1);
        assert!((e - lim).norm() < 1e-7);
    }

    #[test]
    fn both_block_forms_agree_on_random_matrices() {
        let mut rng = crate::util::seeded_rng(5, 3);
        for trial in 0..200 {
            let m = 1 + trial % 3;
            let t = CMat::from_fn(m, m, |_, _| crate::util::gaussian_c64(&mut rng) * 3.0);
            let a = graph_projection(&t);
            let b = graph_projection_alt(&t);
            assert!((&a - &b).norm() < 1e-12, "forms disagree at trial {trial}");
            assert!((&a * &a - &a).norm() < 1e-12);
            assert!((a.adjoint() - &a).norm() < 1e-12);
            assert_relative_eq!(a.trace().re, m as f64, epsilon = 1e-10);
        }
    }

    #[test]
    fn projection_field_of_heat_symbol() {
        let sym = crate::symbolics::tests::heat_symbol();
        let cert = check_invertibility(&sym, GridSpec::default(), DEFAULT_TOL).unwrap();
        let spec = FiberGridSpec {
            base: 4,
            fiber: 12,
            radius: 10.0,
        };
        let field = symbol_projection_field(&sym, &cert, &spec).unwrap();
        // scalar closed form: ||e - diag(0,1)|| = (1 + |T|^2)^{-1/2} with
        // |T| = rho^2, so the decay exponent is the symbol degree
        assert!(
            (field.decay_exponent - 2.0).abs() < 0.3,
            "kappa = {}",
            field.decay_exponent
        );
        // at rho = 10: ||e - diag(0,1)|| = 1/sqrt(1 + 10^4) < 1e-2
        let t = CMat::from_element(1, 1, z(100.0, 0.0));
        let e = graph_projection(&t);
        let d = op_norm(&(e - limit_projection(1, 1)));
        assert!(d < 1e-2 && d > 5e-3, "d = {d}");
    }

    #[test]
    fn field_refuses_failed_certificate() {
        let sym = crate::symbolics::tests::heat_symbol();
        let mut cert = check_invertibility(&sym, GridSpec::default(), DEFAULT_TOL).unwrap();
        cert.pass = false;
        assert!(matches!(
            symbol_projection_field(&sym, &cert, &FiberGridSpec::default()),
            Err(Error::Uncertified(_))
        ));
    }

    #[test]
    fn origin_gives_graph_of_zero() {
        let sym = crate::symbolics::tests::heat_symbol();
        let e = graph_projection(&sym.eval(&[0.0, 0.0], &FiberPoint::new(vec![0.0], vec![0.0])));
        assert_relative_eq!(e[(0, 0)].re, 1.0, epsilon = 1e-14);
        assert_relative_eq!(e[(1, 1)].re, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn homogeneity_transfers_to_projections() {
        // e at (x, t xi, t^2 eta) equals the graph projection of t^d sigma
        let sym = crate::symbolics::tests::heat_symbol();
        let x = [0.4, 1.3];
        let f = FiberPoint::new(vec![0.7], vec![-0.3]);
        let t = 1.7f64;
        let lhs = graph_projection(&sym.eval(&x, &f.dilate(t)));
        let rhs = graph_projection(&(sym.eval(&x, &f) * z(t * t, 0.0)));
        assert!((lhs - rhs).norm() < 1e-13);
    }
}
