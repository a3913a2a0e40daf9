//! Weighted principal symbols and their graph-projection fields.
//!
//! The principal part of an operator keeps exactly the monomials of maximal
//! weighted order `d`; evaluated at a covector `(xi, eta)` it gives the matrix
//! `sigma(x, xi, eta) = sum_{||alpha|| = d} a_alpha(x) (i xi, i eta)^alpha`,
//! homogeneous of degree `d` under the graded dilation
//! `(xi, eta) -> (t xi, t^2 eta)`.

mod invertibility;
mod projection;

pub use invertibility::{check_invertibility, GridSpec, InvertibilityCertificate, DEFAULT_TOL};
pub use projection::{
    graph_projection, graph_projection_alt, limit_projection, op_norm, symbol_projection_field,
    FiberGridSpec, ProjField,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::opcalc::{weighted_order, DiffOp, FoliationSplit, MultiIndex, TrigPoly};
use crate::{CMat, Error, Result};

/// A covector in the fiber, split into leafwise and transverse components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberPoint {
    pub xi: Vec<f64>,
    pub eta: Vec<f64>,
}

impl FiberPoint {
    pub fn new(xi: Vec<f64>, eta: Vec<f64>) -> Self {
        FiberPoint { xi, eta }
    }

    pub fn from_full(split: &FoliationSplit, full: &[f64]) -> Self {
        FiberPoint {
            xi: full[..split.p()].to_vec(),
            eta: full[split.p()..].to_vec(),
        }
    }

    pub fn full(&self) -> Vec<f64> {
        let mut v = self.xi.clone();
        v.extend_from_slice(&self.eta);
        v
    }

    /// Weighted radius `rho = (|xi|^4 + |eta|^2)^(1/4)`.
    pub fn weighted_radius(&self) -> f64 {
        let xi2: f64 = self.xi.iter().map(|v| v * v).sum();
        let eta2: f64 = self.eta.iter().map(|v| v * v).sum();
        (xi2 * xi2 + eta2).powf(0.25)
    }

    /// Graded dilation `(xi, eta) -> (t xi, t^2 eta)`.
    pub fn dilate(&self, t: f64) -> FiberPoint {
        FiberPoint {
            xi: self.xi.iter().map(|v| t * v).collect(),
            eta: self.eta.iter().map(|v| t * t * v).collect(),
        }
    }

    /// Rescale onto the weighted unit sphere; `None` at the origin.
    pub fn normalize(&self) -> Option<FiberPoint> {
        let rho = self.weighted_radius();
        if rho <= 0.0 {
            return None;
        }
        Some(self.dilate(1.0 / rho))
    }
}

/// The weighted principal symbol: the top-weighted-order monomials of an
/// operator, with their evaluation machinery.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedSymbol {
    split: FoliationSplit,
    degree: u32,
    rank_in: usize,
    rank_out: usize,
    monomials: BTreeMap<MultiIndex, TrigPoly>,
}

impl WeightedSymbol {
    pub fn split(&self) -> FoliationSplit {
        self.split
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn rank_in(&self) -> usize {
        self.rank_in
    }

    pub fn rank_out(&self) -> usize {
        self.rank_out
    }

    pub fn monomials(&self) -> impl Iterator<Item = (&MultiIndex, &TrigPoly)> {
        self.monomials.iter()
    }

    pub fn is_square(&self) -> bool {
        self.rank_in == self.rank_out
    }

    /// Evaluate `sigma(x, f)` exactly.
    pub fn eval(&self, x: &[f64], f: &FiberPoint) -> CMat {
        let full = f.full();
        let mut acc = CMat::zeros(self.rank_out, self.rank_in);
        for (alpha, a) in &self.monomials {
            let phase = alpha.ifreq_pow(&full);
            if phase != num_complex::Complex64::ZERO {
                acc += a.eval(x) * phase;
            }
        }
        acc
    }

    /// Block-diagonal direct sum of two symbols of the same split and degree.
    pub fn direct_sum(&self, other: &WeightedSymbol) -> Result<WeightedSymbol> {
        if self.split != other.split || self.degree != other.degree {
            return Err(Error::input(
                "direct sum needs matching split and degree",
            ));
        }
        let m1o = self.rank_out;
        let m1i = self.rank_in;
        let r_out = m1o + other.rank_out;
        let r_in = m1i + other.rank_in;
        let n = self.split.n();
        let mut monomials: BTreeMap<MultiIndex, TrigPoly> = BTreeMap::new();
        let mut stash = |mono: &BTreeMap<MultiIndex, TrigPoly>, ro: usize, co: usize| {
            for (alpha, a) in mono {
                let entry = monomials
                    .entry(alpha.clone())
                    .or_insert_with(|| TrigPoly::zero(n, r_out, r_in));
                for (k, c) in a.terms() {
                    let mut big = CMat::zeros(r_out, r_in);
                    big.view_mut((ro, co), (c.nrows(), c.ncols())).copy_from(c);
                    entry.add_term(k.clone(), big);
                }
            }
        };
        stash(&self.monomials, 0, 0);
        stash(&other.monomials, m1o, m1i);
        Ok(WeightedSymbol {
            split: self.split,
            degree: self.degree,
            rank_in: r_in,
            rank_out: r_out,
            monomials,
        })
    }

    /// Conjugate by constant invertible matrices: `sigma -> U sigma V`.
    pub fn conjugate(&self, left: &CMat, right: &CMat) -> Result<WeightedSymbol> {
        let mut monomials = BTreeMap::new();
        for (alpha, a) in &self.monomials {
            let mut tp = TrigPoly::zero(self.split.n(), left.nrows(), right.ncols());
            for (k, c) in a.terms() {
                tp.add_term(k.clone(), left * c * right);
            }
            monomials.insert(alpha.clone(), tp);
        }
        Ok(WeightedSymbol {
            split: self.split,
            degree: self.degree,
            rank_in: right.ncols(),
            rank_out: left.nrows(),
            monomials,
        })
    }
}

/// Extract the weighted principal symbol of a nonzero operator: keep exactly
/// the monomials of maximal weighted order.
pub fn principal_symbol(op: &DiffOp) -> Result<WeightedSymbol> {
    let d = op.weighted_order()?;
    let split = op.split();
    let monomials: BTreeMap<MultiIndex, TrigPoly> = op
        .monomials()
        .filter(|(alpha, _)| weighted_order(alpha, &split).expect("validated") == d)
        .map(|(alpha, a)| (alpha.clone(), a.clone()))
        .collect();
    Ok(WeightedSymbol {
        split,
        degree: d,
        rank_in: op.rank_in(),
        rank_out: op.rank_out(),
        monomials,
    })
}

/// Result of a randomized graded-homogeneity check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomogeneityReport {
    pub samples: usize,
    pub max_rel_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Verify `sigma(x, t xi, t^2 eta) = t^d sigma(x, xi, eta)` at random sample
/// points and scales. Failure signals a construction bug, not bad input.
pub fn check_homogeneity(
    sym: &WeightedSymbol,
    samples: usize,
    lambda_range: (f64, f64),
    seed: u64,
) -> HomogeneityReport {
    use rand::Rng;
    let mut rng = crate::util::seeded_rng(seed, 21);
    let split = sym.split();
    let tol = 1e-10;
    let mut max_rel = 0.0f64;
    for _ in 0..samples {
        let x: Vec<f64> = (0..split.n())
            .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
            .collect();
        let f = FiberPoint::new(
            (0..split.p()).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            (0..split.q()).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        );
        let lambda = rng.gen_range(lambda_range.0..lambda_range.1);
        let lhs = sym.eval(&x, &f.dilate(lambda));
        let rhs = sym.eval(&x, &f) * num_complex::Complex64::new(
            lambda.powi(sym.degree() as i32),
            0.0,
        );
        let denom = rhs.norm().max(1e-30);
        max_rel = max_rel.max((lhs - rhs).norm() / denom);
    }
    HomogeneityReport {
        samples,
        max_rel_deviation: max_rel,
        tolerance: tol,
        pass: max_rel <= tol,
    }
}
