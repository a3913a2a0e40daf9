//! Exact algebra of matrix-valued differential operators with trigonometric
//! polynomial coefficients on a foliated flat torus.
//!
//! Coordinates on `T^n` split into `p` leafwise directions and `q` transverse
//! directions. A derivative multi-index `alpha` gets the anisotropic order
//!
//! ```text
//! ||alpha|| = alpha_1 + ... + alpha_p + 2(alpha_{p+1} + ... + alpha_n),
//! ```
//!
//! i.e. transverse derivatives count twice. Operators are kept in standard
//! form (all coefficients to the left of the derivatives); composition and
//! formal adjoints expand eagerly by the Leibniz rule, all exactly on Fourier
//! coefficients.

mod diff_op;
mod trig_poly;

pub use diff_op::DiffOp;
pub use trig_poly::{Freq, TrigPoly};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Dimension split of the torus: `p` leafwise directions, `q` transverse.
///
/// `q = 0` encodes the degenerate case where the leaves fill the whole torus
/// and the weighted calculus reduces to the classical one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FoliationSplit {
    p: usize,
    q: usize,
}

impl FoliationSplit {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::input("foliation split needs p + q >= 1"));
        }
        Ok(FoliationSplit { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Total torus dimension `n = p + q`.
    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// Weight of coordinate axis `i` (0-based): 1 leafwise, 2 transverse.
    pub fn weight(&self, axis: usize) -> u32 {
        if axis < self.p {
            1
        } else {
            2
        }
    }

    /// Weighted radius `rho(xi, eta) = (|xi|^4 + |eta|^2)^(1/4)` of a fiber
    /// covector given in full coordinates of length `n`.
    pub fn weighted_radius(&self, fiber: &[f64]) -> f64 {
        let xi2: f64 = fiber[..self.p].iter().map(|v| v * v).sum();
        let eta2: f64 = fiber[self.p..].iter().map(|v| v * v).sum();
        (xi2 * xi2 + eta2).powf(0.25)
    }

    /// Graded dilation on fiber covectors: `(xi, eta) -> (t xi, t^2 eta)`.
    pub fn dilate_fiber(&self, t: f64, fiber: &[f64]) -> Vec<f64> {
        fiber
            .iter()
            .enumerate()
            .map(|(i, v)| if i < self.p { t * v } else { t * t * v })
            .collect()
    }
}

/// Derivative exponents `alpha = (alpha_1, ..., alpha_n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit multi-index for a single derivative along `axis`.
    pub fn unit(n: usize, axis: usize) -> Self {
        let mut e = vec![0; n];
        e[axis] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Plain degree `|alpha|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise `beta <= alpha`.
    pub fn leq(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn sub(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// All `beta` with `beta <= alpha` componentwise, in lexicographic order.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex(Vec::with_capacity(self.len()))];
        for &a in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
            for prefix in &out {
                for b in 0..=a {
                    let mut v = prefix.0.clone();
                    v.push(b);
                    next.push(MultiIndex(v));
                }
            }
            out = next;
        }
        out
    }

    /// Product of binomial coefficients `C(alpha_i, beta_i)`.
    pub fn binomial(&self, beta: &MultiIndex) -> f64 {
        self.0
            .iter()
            .zip(&beta.0)
            .map(|(&a, &b)| binom(a, b))
            .product()
    }

    /// `(i k)^alpha` for an integer frequency vector `k`.
    pub fn ik_pow(&self, k: &[i64]) -> num_complex::Complex64 {
        let mut z = num_complex::Complex64::new(1.0, 0.0);
        for (&a, &ki) in self.0.iter().zip(k) {
            let base = num_complex::Complex64::new(0.0, ki as f64);
            for _ in 0..a {
                z *= base;
            }
        }
        z
    }

    /// `(i f)^alpha` for a real covector `f`.
    pub fn ifreq_pow(&self, f: &[f64]) -> num_complex::Complex64 {
        let mut z = num_complex::Complex64::new(1.0, 0.0);
        for (&a, &fi) in self.0.iter().zip(f) {
            let base = num_complex::Complex64::new(0.0, fi);
            for _ in 0..a {
                z *= base;
            }
        }
        z
    }
}

fn binom(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// Weighted order `||alpha||` of a multi-index against a split.
pub fn weighted_order(alpha: &MultiIndex, split: &FoliationSplit) -> Result<u32> {
    if alpha.len() != split.n() {
        return Err(Error::input(format!(
            "multi-index length {} does not match torus dimension {}",
            alpha.len(),
            split.n()
        )));
    }
    Ok(alpha
        .exponents()
        .iter()
        .enumerate()
        .map(|(i, &a)| a * split.weight(i))
        .sum())
}

/// All multi-indices of length `n` with weighted order at most `d`.
pub fn multi_indices_up_to(split: &FoliationSplit, d: u32) -> Vec<MultiIndex> {
    let n = split.n();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(
        split: &FoliationSplit,
        cur: &mut Vec<u32>,
        axis: usize,
        budget: u32,
        out: &mut Vec<MultiIndex>,
    ) {
        if axis == cur.len() {
            out.push(MultiIndex::new(cur.clone()));
            return;
        }
        let w = split.weight(axis);
        let max = budget / w;
        for a in 0..=max {
            cur[axis] = a;
            rec(split, cur, axis + 1, budget - a * w, out);
        }
        cur[axis] = 0;
    }
    rec(split, &mut cur, 0, d, &mut out);
    out
}
