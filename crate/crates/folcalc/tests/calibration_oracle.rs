//! Brute-force Galerkin oracles for the calibration operators on the
//! degenerate split (2,0). Expected values here are frozen from independent
//! computations:
//!
//! * `e^{ikx}(d_1 + i d_2) + eps` is a unitary multiplication composed with an
//!   elliptic operator plus an order-zero term, so its index is 0. In Fourier
//!   modes `(a, b)` it acts as `u_{a,b} -> i(a + ib) u_{a+k,b} + eps u_{a,b}`;
//!   for `b = 0` the recurrence has exactly one decaying solution (seeded at
//!   the vanishing weight `a = 0`), and likewise for the adjoint, giving
//!   dim ker = dim coker = 1.
//! * the Dirac-type system `d_1 + i (m.sigma) d_2` with the degree-one map
//!   `m = (sin x, sin y, cos x + cos y - 1)` splits the trivial rank-2 bundle
//!   along the eigenlines of `m.sigma`; its index is twice the degree of the
//!   positive eigenline, i.e. +-2.

use folcalc::galerkin::{numerical_index, ThresholdRule};
use folcalc::opcalc::{DiffOp, FoliationSplit, MultiIndex, TrigPoly};
use folcalc::CMat;
use num_complex::Complex64;

fn z(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// e^{ikx}(d_1 + i d_2) + eps on the degenerate split (2,0).
fn twisted_cr(k: i64, eps: f64) -> DiffOp {
    let split = FoliationSplit::new(2, 0).unwrap();
    let coeff = TrigPoly::mode(2, vec![k, 0], z(1.0, 0.0));
    let mut op = DiffOp::zero(split, 1, 1);
    op.add_monomial(MultiIndex::new(vec![1, 0]), coeff.clone())
        .unwrap();
    op.add_monomial(MultiIndex::new(vec![0, 1]), coeff.scale(z(0.0, 1.0)))
        .unwrap();
    op.add_monomial(MultiIndex::zeros(2), TrigPoly::scalar(2, z(eps, 0.0)))
        .unwrap();
    op
}

/// Pauli matrices contracted with the map m(x, y) as a trig-poly coefficient.
fn pauli_field() -> TrigPoly {
    // m1 = sin x, m2 = sin y, m3 = cos x + cos y - 1
    let mut tp = TrigPoly::zero(2, 2, 2);
    let half = 0.5;
    // sigma1 * sin x = sigma1 * (e^{ix} - e^{-ix}) / (2i)
    let mut s1 = CMat::zeros(2, 2);
    s1[(0, 1)] = z(1.0, 0.0);
    s1[(1, 0)] = z(1.0, 0.0);
    tp.add_term(vec![1, 0], &s1 * z(0.0, -half));
    tp.add_term(vec![-1, 0], &s1 * z(0.0, half));
    // sigma2 * sin y
    let mut s2 = CMat::zeros(2, 2);
    s2[(0, 1)] = z(0.0, -1.0);
    s2[(1, 0)] = z(0.0, 1.0);
    tp.add_term(vec![0, 1], &s2 * z(0.0, -half));
    tp.add_term(vec![0, -1], &s2 * z(0.0, half));
    // sigma3 * (cos x + cos y - 1)
    let mut s3 = CMat::zeros(2, 2);
    s3[(0, 0)] = z(1.0, 0.0);
    s3[(1, 1)] = z(-1.0, 0.0);
    for k in [vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]] {
        tp.add_term(k, &s3 * z(half, 0.0));
    }
    tp.add_term(vec![0, 0], &s3 * z(-1.0, 0.0));
    tp
}

/// Dirac-type winding instance: D = d_1 + i (m.sigma)(x,y) d_2 on (2,0).
fn dirac_winding() -> DiffOp {
    let split = FoliationSplit::new(2, 0).unwrap();
    let mut op = DiffOp::zero(split, 2, 2);
    op.add_monomial(
        MultiIndex::new(vec![1, 0]),
        TrigPoly::identity(2, 2),
    )
    .unwrap();
    op.add_monomial(
        MultiIndex::new(vec![0, 1]),
        pauli_field().scale(z(0.0, 1.0)),
    )
    .unwrap();
    op
}

#[test]
fn twisted_cauchy_riemann_has_index_zero() {
    for k in [1i64, 2] {
        let op = twisted_cr(k, 0.1);
        let rep = numerical_index(&op, &[6, 8, 10], ThresholdRule::Absolute).unwrap();
        assert!(rep.certified, "k = {k}");
        assert!(rep.stable, "k = {k}: {:?}", rep.sweep);
        assert_eq!(rep.dim_ker, 1, "k = {k}");
        assert_eq!(rep.dim_coker, 1, "k = {k}");
        assert_eq!(rep.index, Some(0), "k = {k}");
    }
}

#[test]
fn dirac_winding_instance_has_index_two() {
    let op = dirac_winding();
    let rep = numerical_index(&op, &[6, 8, 10], ThresholdRule::Absolute).unwrap();
    eprintln!(
        "dirac winding: ker {} coker {} index {:?} certified {} s_min {}",
        rep.dim_ker, rep.dim_coker, rep.index, rep.certified, rep.certificate_s_min
    );
    assert!(rep.certified);
    assert!(rep.stable, "{:?}", rep.sweep);
    assert_eq!(rep.index.map(i64::abs), Some(2));
}
