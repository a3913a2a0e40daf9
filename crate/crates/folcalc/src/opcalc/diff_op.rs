//! Differential operators `P = sum_alpha a_alpha(x) d^alpha` in standard form.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{weighted_order, FoliationSplit, MultiIndex, TrigPoly};
use crate::{C64, Error, Result};

/// A matrix-valued differential operator on `T^n` in standard form: a finite
/// map from derivative multi-indices to trig-poly coefficients, all of rank
/// pair `(m_F, m_E)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiffOp {
    split: FoliationSplit,
    rank_in: usize,
    rank_out: usize,
    monomials: BTreeMap<MultiIndex, TrigPoly>,
}

impl DiffOp {
    /// The zero operator (no monomials). Callers that need an order must add
    /// monomials first; `weighted_order` rejects the empty operator.
    pub fn zero(split: FoliationSplit, rank_out: usize, rank_in: usize) -> Self {
        DiffOp {
            split,
            rank_in,
            rank_out,
            monomials: BTreeMap::new(),
        }
    }

    /// Identity operator of rank `m`.
    pub fn identity(split: FoliationSplit, m: usize) -> Self {
        let mut op = DiffOp::zero(split, m, m);
        op.add_monomial(
            MultiIndex::zeros(split.n()),
            TrigPoly::identity(split.n(), m),
        )
        .expect("identity monomial");
        op
    }

    /// Scalar single derivative along `axis`.
    pub fn derivative(split: FoliationSplit, axis: usize) -> Result<Self> {
        if axis >= split.n() {
            return Err(Error::input(format!(
                "axis {} out of range for dimension {}",
                axis,
                split.n()
            )));
        }
        let mut op = DiffOp::zero(split, 1, 1);
        op.add_monomial(
            MultiIndex::unit(split.n(), axis),
            TrigPoly::scalar(split.n(), Complex64::new(1.0, 0.0)),
        )?;
        Ok(op)
    }

    /// Multiplication operator by a trig-poly coefficient.
    pub fn multiplication(split: FoliationSplit, a: TrigPoly) -> Result<Self> {
        if a.n() != split.n() {
            return Err(Error::input("coefficient dimension mismatch"));
        }
        let mut op = DiffOp::zero(split, a.rank_out(), a.rank_in());
        op.add_monomial(MultiIndex::zeros(split.n()), a)?;
        Ok(op)
    }

    /// Accumulate `a(x) d^alpha`; merges with an existing monomial and drops
    /// exact zeros.
    pub fn add_monomial(&mut self, alpha: MultiIndex, a: TrigPoly) -> Result<()> {
        if alpha.len() != self.split.n() {
            return Err(Error::input("multi-index length mismatch"));
        }
        if (a.rank_out(), a.rank_in()) != (self.rank_out, self.rank_in) {
            return Err(Error::input("coefficient rank mismatch"));
        }
        if a.n() != self.split.n() {
            return Err(Error::input("coefficient dimension mismatch"));
        }
        match self.monomials.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !a.is_zero() {
                    e.insert(a);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let merged = e.get().add(&a)?;
                if merged.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = merged;
                }
            }
        }
        Ok(())
    }

    pub fn split(&self) -> FoliationSplit {
        self.split
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

    pub fn num_monomials(&self) -> usize {
        self.monomials.len()
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Option<&TrigPoly> {
        self.monomials.get(alpha)
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Max coefficient bandwidth `B(P)`; how far the operator can shift a
    /// Fourier mode.
    pub fn bandwidth(&self) -> i64 {
        self.monomials
            .values()
            .map(|a| a.bandwidth())
            .max()
            .unwrap_or(0)
    }

    /// Weighted order `d = max ||alpha||`. The zero operator has no order.
    pub fn weighted_order(&self) -> Result<u32> {
        if self.monomials.is_empty() {
            return Err(Error::input("zero operator has no weighted order"));
        }
        let mut d = 0;
        for alpha in self.monomials.keys() {
            d = d.max(weighted_order(alpha, &self.split)?);
        }
        Ok(d)
    }

    /// Apply to a section: exact Fourier coefficients of `P u`, using
    /// `d^alpha e^{ik.x} = (ik)^alpha e^{ik.x}` and coefficient convolution.
    pub fn apply(&self, u: &TrigPoly) -> Result<TrigPoly> {
        if u.rank_out() != self.rank_in {
            return Err(Error::input(format!(
                "section rank {} does not match operator input rank {}",
                u.rank_out(),
                self.rank_in
            )));
        }
        if u.n() != self.split.n() {
            return Err(Error::input("section dimension mismatch"));
        }
        let mut out = TrigPoly::zero(u.n(), self.rank_out, u.rank_in());
        for (alpha, a) in &self.monomials {
            // d^alpha u first (diagonal in Fourier), then coefficient product.
            let du = u.derivative_multi(alpha);
            out = out.add(&a.mul(&du)?)?;
        }
        Ok(out)
    }

    /// Formal adjoint `P^t` with respect to the L2 pairing, in standard form:
    /// `P^t u = sum_alpha (-1)^{|alpha|} d^alpha (a_alpha^* u)`, expanded by
    /// the Leibniz rule.
    pub fn formal_adjoint(&self) -> DiffOp {
        let mut out = DiffOp::zero(self.split, self.rank_in, self.rank_out);
        for (alpha, a) in &self.monomials {
            let sign = if alpha.degree() % 2 == 0 { 1.0 } else { -1.0 };
            let astar = a.conj_transpose();
            for beta in alpha.sub_indices() {
                let coeff = alpha.binomial(&beta);
                let da = astar.derivative_multi(&alpha.sub(&beta));
                let term = da.scale(Complex64::new(sign * coeff, 0.0));
                out.add_monomial(beta, term).expect("adjoint monomial");
            }
        }
        out
    }

    /// Operator composition `P o Q`, Leibniz-expanded into standard form.
    pub fn compose(&self, other: &DiffOp) -> Result<DiffOp> {
        if self.split != other.split {
            return Err(Error::input("split mismatch in compose"));
        }
        if self.rank_in != other.rank_out {
            return Err(Error::input(format!(
                "rank mismatch in compose: ({},{}) o ({},{})",
                self.rank_out, self.rank_in, other.rank_out, other.rank_in
            )));
        }
        let mut out = DiffOp::zero(self.split, self.rank_out, other.rank_in);
        for (alpha, a) in &self.monomials {
            for (gamma, b) in &other.monomials {
                // a d^alpha (b d^gamma) = a sum_{beta<=alpha} C(alpha,beta)
                //   (d^{alpha-beta} b) d^{beta+gamma}
                for beta in alpha.sub_indices() {
                    let coeff = alpha.binomial(&beta);
                    let db = b.derivative_multi(&alpha.sub(&beta));
                    let prod = a.mul(&db)?.scale(Complex64::new(coeff, 0.0));
                    out.add_monomial(beta.add(gamma), prod)?;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &DiffOp) -> Result<DiffOp> {
        if self.split != other.split
            || self.rank_in != other.rank_in
            || self.rank_out != other.rank_out
        {
            return Err(Error::input("shape mismatch in operator add"));
        }
        let mut out = self.clone();
        for (alpha, a) in &other.monomials {
            out.add_monomial(alpha.clone(), a.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, z: C64) -> DiffOp {
        let mut out = DiffOp::zero(self.split, self.rank_out, self.rank_in);
        if z == Complex64::ZERO {
            return out;
        }
        for (alpha, a) in &self.monomials {
            out.add_monomial(alpha.clone(), a.scale(z))
                .expect("scaled monomial");
        }
        out
    }
}
