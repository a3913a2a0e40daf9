//! Matrix-valued finite Fourier series on `T^n` with exact coefficient
//! arithmetic. Products are frequency convolutions; no grids, no aliasing.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{C64, CMat, Error, Result};

/// Integer frequency vector `k` of a Fourier mode `e^{i k.x}`.
pub type Freq = Vec<i64>;

/// A finite sum `sum_k c_k e^{i k.x}` with `r_out x r_in` complex matrix
/// coefficients. Zero matrices are never stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPoly {
    n: usize,
    r_out: usize,
    r_in: usize,
    terms: BTreeMap<Freq, CMat>,
}

impl TrigPoly {
    pub fn zero(n: usize, r_out: usize, r_in: usize) -> Self {
        TrigPoly {
            n,
            r_out,
            r_in,
            terms: BTreeMap::new(),
        }
    }

    /// Constant coefficient `c` (frequency zero).
    pub fn constant(n: usize, c: CMat) -> Self {
        let mut tp = TrigPoly::zero(n, c.nrows(), c.ncols());
        tp.add_term(vec![0; n], c);
        tp
    }

    /// Scalar constant as a 1x1 coefficient.
    pub fn scalar(n: usize, z: C64) -> Self {
        TrigPoly::constant(n, CMat::from_element(1, 1, z))
    }

    /// `z * e^{i k.x}` as a 1x1 coefficient.
    pub fn mode(n: usize, k: Freq, z: C64) -> Self {
        assert_eq!(k.len(), n);
        let mut tp = TrigPoly::zero(n, 1, 1);
        tp.add_term(k, CMat::from_element(1, 1, z));
        tp
    }

    /// Identity matrix constant of size `m`.
    pub fn identity(n: usize, m: usize) -> Self {
        TrigPoly::constant(n, CMat::identity(m, m))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank_out(&self) -> usize {
        self.r_out
    }

    pub fn rank_in(&self) -> usize {
        self.r_in
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Freq, &CMat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: &[i64]) -> Option<&CMat> {
        self.terms.get(k)
    }

    /// Max `||k||_inf` over stored frequencies; 0 for the zero polynomial.
    pub fn bandwidth(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(|v| v.abs()))
            .max()
            .unwrap_or(0)
    }

    /// Accumulate `c e^{i k.x}` into the series, dropping exact zeros.
    pub fn add_term(&mut self, k: Freq, c: CMat) {
        assert_eq!(k.len(), self.n, "frequency length mismatch");
        assert_eq!((c.nrows(), c.ncols()), (self.r_out, self.r_in));
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if c.iter().any(|z| *z != Complex64::ZERO) {
                    e.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().iter().all(|z| *z == Complex64::ZERO) {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &TrigPoly) -> Result<TrigPoly> {
        if (self.n, self.r_out, self.r_in) != (other.n, other.r_out, other.r_in) {
            return Err(Error::input("trig poly shape mismatch in add"));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, z: C64) -> TrigPoly {
        let mut out = TrigPoly::zero(self.n, self.r_out, self.r_in);
        if z == Complex64::ZERO {
            return out;
        }
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * z);
        }
        out
    }

    /// Pointwise matrix product: frequency convolution of coefficients.
    pub fn mul(&self, other: &TrigPoly) -> Result<TrigPoly> {
        if self.n != other.n {
            return Err(Error::input("trig poly dimension mismatch in mul"));
        }
        if self.r_in != other.r_out {
            return Err(Error::input(format!(
                "trig poly rank mismatch in mul: ({},{}) * ({},{})",
                self.r_out, self.r_in, other.r_out, other.r_in
            )));
        }
        let mut out = TrigPoly::zero(self.n, self.r_out, other.r_in);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let k: Freq = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                out.add_term(k, ca * cb);
            }
        }
        Ok(out)
    }

    /// Pointwise conjugate transpose: `c_k e^{ik.x} -> c_k^* e^{-ik.x}`.
    pub fn conj_transpose(&self) -> TrigPoly {
        let mut out = TrigPoly::zero(self.n, self.r_in, self.r_out);
        for (k, c) in &self.terms {
            let mk: Freq = k.iter().map(|v| -v).collect();
            out.add_term(mk, c.adjoint());
        }
        out
    }

    /// Partial derivative along `axis`: multiplies mode `k` by `i k_axis`.
    pub fn derivative(&self, axis: usize) -> TrigPoly {
        let mut out = TrigPoly::zero(self.n, self.r_out, self.r_in);
        for (k, c) in &self.terms {
            let f = Complex64::new(0.0, k[axis] as f64);
            if f != Complex64::ZERO {
                out.add_term(k.clone(), c * f);
            }
        }
        out
    }

    /// Iterated derivative `d^alpha`.
    pub fn derivative_multi(&self, alpha: &super::MultiIndex) -> TrigPoly {
        let mut out = TrigPoly::zero(self.n, self.r_out, self.r_in);
        for (k, c) in &self.terms {
            let f = alpha.ik_pow(k);
            if f != Complex64::ZERO {
                out.add_term(k.clone(), c * f);
            }
        }
        out
    }

    /// Evaluate at a base point `x` (length n).
    pub fn eval(&self, x: &[f64]) -> CMat {
        let mut acc = CMat::zeros(self.r_out, self.r_in);
        for (k, c) in &self.terms {
            let phase: f64 = k.iter().zip(x).map(|(&ki, &xi)| ki as f64 * xi).sum();
            acc += c * Complex64::from_polar(1.0, phase);
        }
        acc
    }

    /// L2 inner product `<self, other>` with the normalization
    /// `||e^{ik.x}|| = 1`, i.e. the l2 pairing of coefficients
    /// `sum_k tr(other_k^* self_k)`.
    pub fn l2_inner(&self, other: &TrigPoly) -> C64 {
        let mut acc = Complex64::ZERO;
        for (k, c) in &self.terms {
            if let Some(d) = other.terms.get(k) {
                acc += (d.adjoint() * c).trace();
            }
        }
        acc
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_inner(self).re.max(0.0).sqrt()
    }

    /// Frobenius-type sup bound used in tests: max coefficient magnitude.
    pub fn max_coeff_abs(&self) -> f64 {
        self.terms
            .values()
            .flat_map(|c| c.iter().map(|z| z.norm()))
            .fold(0.0, f64::max)
    }
}
