//! Weighted Sobolev norms on the torus.
//!
//! With the global coordinate frame the anisotropic Sobolev norm is
//! `||u||^2_{W^d} = sum_{||alpha|| <= d} ||d^alpha u||^2_{L2}`, which in
//! Fourier coefficients is the exact sum
//! `sum_k |u_k|^2 sum_{||alpha|| <= d} k^{2 alpha}`.

use crate::opcalc::{multi_indices_up_to, FoliationSplit, TrigPoly};
use crate::Result;

pub fn weighted_sobolev_norm(u: &TrigPoly, d: u32, split: &FoliationSplit) -> Result<f64> {
    let alphas = multi_indices_up_to(split, d);
    let mut acc = 0.0f64;
    for (k, c) in u.terms() {
        let coeff_sq: f64 = c.iter().map(|z| z.norm_sqr()).sum();
        let mut weight = 0.0f64;
        for alpha in &alphas {
            let mut w = 1.0f64;
            for (&a, &ki) in alpha.exponents().iter().zip(k) {
                w *= (ki as f64).powi(2 * a as i32);
            }
            weight += w;
        }
        acc += coeff_sq * weight;
    }
    Ok(acc.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn split11() -> FoliationSplit {
        FoliationSplit::new(1, 1).unwrap()
    }

    #[test]
    fn constant_has_unit_norm_in_every_order() {
        let u = TrigPoly::scalar(2, Complex64::new(1.0, 0.0));
        for d in 0..5 {
            assert_relative_eq!(
                weighted_sobolev_norm(&u, d, &split11()).unwrap(),
                1.0,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn single_leafwise_mode_order_two() {
        // u = e^{ix}: alphas with ||alpha|| <= 2 are (0,0),(1,0),(2,0),(0,1);
        // k = (1,0) contributes 1 + 1 + 1 + 0 = 3
        let u = TrigPoly::mode(2, vec![1, 0], Complex64::new(1.0, 0.0));
        let v = weighted_sobolev_norm(&u, 2, &split11()).unwrap();
        assert_relative_eq!(v, 3.0f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn order_zero_is_l2() {
        let mut u = TrigPoly::zero(2, 1, 1);
        u.add_term(vec![2, -1], crate::CMat::from_element(1, 1, Complex64::new(0.6, 0.8)));
        u.add_term(vec![0, 3], crate::CMat::from_element(1, 1, Complex64::new(0.0, 2.0)));
        let w0 = weighted_sobolev_norm(&u, 0, &split11()).unwrap();
        assert_relative_eq!(w0, u.l2_norm(), epsilon = 1e-14);
    }

    #[test]
    fn norm_dominates_derivative_norms() {
        let u = TrigPoly::mode(2, vec![3, 2], Complex64::new(1.0, 0.0));
        let w = weighted_sobolev_norm(&u, 2, &split11()).unwrap();
        let du = u.derivative(0);
        assert!(w >= du.l2_norm());
        let dyu = u.derivative(1);
        assert!(w >= dyu.l2_norm());
    }
}
