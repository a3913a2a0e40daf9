//! Exact Galerkin compression of a differential operator to Fourier modes.

use num_complex::Complex64;

use crate::opcalc::{DiffOp, TrigPoly};
use crate::{CMat, Error, Result};

/// Deterministic indexing of the modes `||k||_inf <= K` with `m` vector
/// components: flat index = (lexicographic mode rank) * m + component.
#[derive(Debug, Clone)]
pub struct ModeMap {
    n: usize,
    k_max: i64,
    m: usize,
}

impl ModeMap {
    pub fn new(n: usize, k_max: i64, m: usize) -> Self {
        ModeMap { n, k_max, m }
    }

    pub fn modes_per_axis(&self) -> usize {
        (2 * self.k_max + 1) as usize
    }

    pub fn num_modes(&self) -> usize {
        self.modes_per_axis().pow(self.n as u32)
    }

    pub fn dim(&self) -> usize {
        self.num_modes() * self.m
    }

    pub fn k_max(&self) -> i64 {
        self.k_max
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn contains(&self, k: &[i64]) -> bool {
        k.iter().all(|v| v.abs() <= self.k_max)
    }

    pub fn flat(&self, k: &[i64], comp: usize) -> usize {
        debug_assert!(self.contains(k));
        let w = self.modes_per_axis();
        let mut rank = 0usize;
        for &ki in k {
            rank = rank * w + (ki + self.k_max) as usize;
        }
        rank * self.m + comp
    }

    pub fn unflat(&self, idx: usize) -> (Vec<i64>, usize) {
        let comp = idx % self.m;
        let mut rank = idx / self.m;
        let w = self.modes_per_axis();
        let mut k = vec![0i64; self.n];
        for a in (0..self.n).rev() {
            k[a] = (rank % w) as i64 - self.k_max;
            rank /= w;
        }
        (k, comp)
    }

    /// Coefficient vector of a trig-poly section in this mode map.
    pub fn section_to_vec(&self, u: &TrigPoly) -> Result<crate::CVec> {
        if u.rank_in() != 1 || u.rank_out() != self.m {
            return Err(Error::input("section rank mismatch for mode map"));
        }
        if u.bandwidth() > self.k_max {
            return Err(Error::input("section bandwidth exceeds mode cutoff"));
        }
        let mut v = crate::CVec::zeros(self.dim());
        for (k, c) in u.terms() {
            for comp in 0..self.m {
                v[self.flat(k, comp)] = c[(comp, 0)];
            }
        }
        Ok(v)
    }
}

/// Exact rectangular compression of an operator.
#[derive(Debug, Clone)]
pub struct GalerkinMatrix {
    pub domain: ModeMap,
    pub codomain: ModeMap,
    pub matrix: CMat,
}

impl GalerkinMatrix {
    pub fn k_domain(&self) -> i64 {
        self.domain.k_max()
    }

    pub fn k_codomain(&self) -> i64 {
        self.codomain.k_max()
    }
}

/// Assemble the exact Galerkin matrix of `P` at domain cutoff `K`.
///
/// The codomain cutoff is `K + B(P)`; the column for mode `k` holds the exact
/// Fourier coefficients of `P e^{ik.x}`.
pub fn galerkin_matrix(op: &DiffOp, k_cut: i64) -> Result<GalerkinMatrix> {
    let bw = op.bandwidth();
    if k_cut < 1 || k_cut < bw {
        return Err(Error::input(format!(
            "cutoff K = {k_cut} must be >= 1 and >= the coefficient bandwidth {bw}"
        )));
    }
    if op.is_zero() {
        return Err(Error::input("cannot compress the zero operator"));
    }
    let n = op.split().n();
    let domain = ModeMap::new(n, k_cut, op.rank_in());
    let codomain = ModeMap::new(n, k_cut + bw, op.rank_out());

    // Pre-expand the monomials once; columns are then cheap.
    let monos: Vec<(&crate::opcalc::MultiIndex, &TrigPoly)> = op.monomials().collect();

    let cols: Vec<Vec<(usize, Complex64)>> = crate::util::par_map(domain.dim(), |j| {
        let (k, comp) = domain.unflat(j);
        let mut entries = Vec::new();
        for (alpha, a) in &monos {
            let phase = alpha.ik_pow(&k);
            if phase == Complex64::ZERO {
                continue;
            }
            for (f, c) in a.terms() {
                let target: Vec<i64> = k.iter().zip(f).map(|(x, y)| x + y).collect();
                for row_comp in 0..codomain.m() {
                    let v = c[(row_comp, comp)] * phase;
                    if v != Complex64::ZERO {
                        entries.push((codomain.flat(&target, row_comp), v));
                    }
                }
            }
        }
        entries
    });

    let mut matrix = CMat::zeros(codomain.dim(), domain.dim());
    for (j, entries) in cols.iter().enumerate() {
        for &(i, v) in entries {
            matrix[(i, j)] += v;
        }
    }

    Ok(GalerkinMatrix {
        domain,
        codomain,
        matrix,
    })
}
