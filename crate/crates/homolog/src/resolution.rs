//! Minimal free resolutions, Betti and Bass sequences.
//!
//! A syzygy Ω ⊆ R^r is never realized as a module with dense action
//! matrices. Each step keeps the reduced cover matrix of the previous
//! differential and generates kernel vectors from its free columns.

use std::sync::Arc;

use crate::algebra::ArtinAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{free_columns, kernel_vector, rref_in_place, Echelon, Matrix};
use crate::module::{free_mul, free_mul_var, Module};

pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Cap on the number of field elements held by any single dense matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub cap: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_env()
    }
}

impl Budget {
    pub fn new(cap: u64) -> Self {
        Budget { cap }
    }

    /// `HOMOLOG_BUDGET` if set and parseable, else 2^24.
    pub fn from_env() -> Self {
        let cap = std::env::var("HOMOLOG_BUDGET").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET);
        Budget { cap }
    }

    pub fn check(&self, what: &str, needed: u64) -> Result<()> {
        if needed > self.cap {
            return Err(Error::BudgetExceeded { what: what.to_string(), needed, cap: self.cap });
        }
        Ok(())
    }
}

pub(crate) struct ResolutionCache<F: Field> {
    cover: Option<Arc<Vec<F::Row>>>,
    betti: Vec<usize>,
    // diffs[n-1] holds the columns of d_n
    diffs: Vec<Arc<Vec<F::Row>>>,
}

impl<F: Field> Default for ResolutionCache<F> {
    fn default() -> Self {
        ResolutionCache { cover: None, betti: Vec::new(), diffs: Vec::new() }
    }
}

/// Differentials are stored column by column: column b of d_n is a vector of
/// F_{n−1} = R^{β_{n−1}}, block a (λ(R) coordinates) being the entry d_n[a][b].
#[derive(Clone, Debug)]
pub struct FreeResolution<F: Field> {
    ring: Arc<ArtinAlgebra<F>>,
    module_dim: usize,
    cover: Arc<Vec<F::Row>>,
    betti: Vec<usize>,
    diffs: Vec<Arc<Vec<F::Row>>>,
}

impl<F: Field> FreeResolution<F> {
    pub fn depth(&self) -> usize {
        self.betti.len() - 1
    }
    pub fn betti(&self) -> &[usize] {
        &self.betti
    }
    pub fn ring(&self) -> &Arc<ArtinAlgebra<F>> {
        &self.ring
    }
    /// Images in M of the k-basis b_j·e_g of F_0.
    pub fn cover(&self) -> &[F::Row] {
        &self.cover
    }
    /// Columns of d_n, 1 ≤ n ≤ depth.
    pub fn differential(&self, n: usize) -> &[F::Row] {
        &self.diffs[n - 1]
    }
    /// d_n[a][b] as a ring element.
    pub fn entry(&self, n: usize, a: usize, b: usize) -> F::Row {
        let lambda = self.ring.length();
        self.ring.field().row_slice(&self.diffs[n - 1][b], a * lambda, lambda)
    }

    /// d_n as a k-linear map, column (b, j) being b_j·e_b.
    pub fn expanded_columns(&self, n: usize) -> Vec<F::Row> {
        let lambda = self.ring.length();
        let f = self.ring.field();
        let rank = self.betti[n - 1];
        self.diffs[n - 1].iter().flat_map(|g| (0..lambda).map(move |j| (g, j))).map(|(g, j)| free_mul(&self.ring, rank, &f.row_unit(lambda, j), g)).collect()
    }

    /// Every entry of every differential lies in 𝔪.
    pub fn is_minimal(&self) -> bool {
        let f = self.ring.field();
        let lambda = self.ring.length();
        self.diffs.iter().all(|cols| cols.iter().all(|c| (0..f.row_len(c) / lambda.max(1)).all(|a| f.is_zero(&f.row_get(c, a * lambda)))))
    }

    /// d_{n−1}∘d_n = 0 for 2 ≤ n ≤ depth.
    pub fn composes_to_zero(&self) -> bool {
        let f = self.ring.field();
        (2..=self.depth()).all(|n| {
            let prev = self.expanded_columns(n - 1);
            self.diffs[n - 1].iter().all(|g| {
                let mut out = f.row_zeros(self.betti[n - 2] * self.ring.length());
                for (pos, c) in f.row_nonzeros(g) {
                    f.row_axpy(&mut out, &c, &prev[pos]);
                }
                f.row_is_zero(&out)
            })
        })
    }

    /// rank D_n + rank D_{n+1} = dim F_n at every interior spot, and the
    /// augmentation F_0 → M is onto with kernel the image of D_1.
    pub fn is_exact(&self) -> bool {
        let f = self.ring.field();
        let lambda = self.ring.length();
        let rank_of = |n: usize| -> usize {
            if n == 0 {
                return Matrix::from_columns(f, self.module_dim, &self.cover).rank();
            }
            let cols = self.expanded_columns(n);
            Matrix::from_columns(f, self.betti[n - 1] * lambda, &cols).rank()
        };
        let ranks: Vec<usize> = (0..=self.depth()).map(rank_of).collect();
        if ranks[0] != self.module_dim {
            return false;
        }
        (0..self.depth()).all(|n| ranks[n] + ranks[n + 1] == self.betti[n] * lambda)
    }
}

/// b_j · g for every generator g of a submodule of R^rank.
fn cover_matrix_rows<F: Field>(ring: &ArtinAlgebra<F>, rank: usize, gens: &[F::Row], budget: &Budget) -> Result<(Vec<F::Row>, usize)> {
    let f = ring.field();
    let lambda = ring.length();
    let nrows = rank * lambda;
    let ncols = gens.len() * lambda;
    budget.check("cover matrix", (nrows as u64) * (ncols as u64))?;
    let mut rows = vec![f.row_zeros(ncols); nrows];
    for (b, g) in gens.iter().enumerate() {
        let nz = f.row_nonzeros(g);
        for j in 0..lambda {
            let col = b * lambda + j;
            // b_j · g, accumulated entrywise
            for (pos, c) in &nz {
                let (a, l) = (pos / lambda, pos % lambda);
                for (t, e) in ring.mono_mult(j, l) {
                    let r = a * lambda + t;
                    let cur = f.row_get(&rows[r], col);
                    f.row_set(&mut rows[r], col, f.add(&cur, &f.mul(c, e)));
                }
            }
        }
    }
    Ok((rows, ncols))
}

/// Minimal generators of ker(C) where `rows` is C in row form, as vectors of
/// the source free module R^rank.
fn kernel_generators<F: Field>(ring: &ArtinAlgebra<F>, rank: usize, mut rows: Vec<F::Row>, ncols: usize, budget: &Budget) -> Result<Vec<F::Row>> {
    let f = ring.field();
    let pivots = rref_in_place(f, &mut rows, ncols);
    rows.truncate(pivots.len());
    let free = free_columns(&pivots, ncols);
    if free.is_empty() {
        return Ok(Vec::new());
    }
    let vector = |c: usize| kernel_vector(f, &rows, &pivots, ncols, c);
    let mut m_omega = Echelon::new(f, ncols);
    let mut stored = 0u64;
    for &c in &free {
        let v = vector(c);
        for i in 0..ring.nvars() {
            if m_omega.insert(free_mul_var(ring, rank, i, &v)) {
                stored += ncols as u64;
                budget.check("syzygy radical", stored)?;
            }
        }
    }
    let target = free.len() - m_omega.rank();
    let mut gens = Vec::with_capacity(target);
    let mut span = m_omega;
    for &c in &free {
        if gens.len() == target {
            break;
        }
        let v = vector(c);
        let mut w = v.clone();
        span.reduce(&mut w);
        if span.insert_reduced(w) {
            stored += ncols as u64;
            budget.check("syzygy generators", stored)?;
            gens.push(v);
        }
    }
    Ok(gens)
}

/// Minimal resolution of `m` through F_depth, extending the cache on `m`.
pub fn resolve<F: Field>(m: &Module<F>, depth: usize, budget: &Budget) -> Result<FreeResolution<F>> {
    let ring = m.ring().clone();
    let f = ring.field().clone();
    let lambda = ring.length();
    let mut cache = m.resolution.lock().unwrap_or_else(|e| e.into_inner());
    if cache.cover.is_none() {
        let gens = m.minimal_generators();
        let cols: Vec<F::Row> = gens.iter().flat_map(|g| (0..lambda).map(move |j| (g, j))).map(|(g, j)| m.act_ring(&f.row_unit(lambda, j), g)).collect();
        cache.betti = vec![gens.len()];
        cache.cover = Some(Arc::new(cols));
    }
    while cache.betti.len() <= depth {
        let n = cache.betti.len() - 1;
        let gens = if cache.betti[n] == 0 {
            Vec::new()
        } else if n == 0 {
            let cover = cache.cover.as_ref().unwrap();
            budget.check("cover matrix", (m.dim() as u64) * (cover.len() as u64))?;
            let rows = Matrix::from_columns(&f, m.dim(), cover).into_rows();
            kernel_generators(&ring, cache.betti[0], rows, cover.len(), budget)?
        } else {
            let (rows, ncols) = cover_matrix_rows(&ring, cache.betti[n - 1], &cache.diffs[n - 1], budget)?;
            kernel_generators(&ring, cache.betti[n], rows, ncols, budget)?
        };
        cache.betti.push(gens.len());
        cache.diffs.push(Arc::new(gens));
    }
    Ok(FreeResolution {
        ring: ring.clone(),
        module_dim: m.dim(),
        cover: cache.cover.clone().unwrap(),
        betti: cache.betti[..=depth].to_vec(),
        diffs: cache.diffs[..depth].to_vec(),
    })
}

pub fn betti_sequence<F: Field>(m: &Module<F>, depth: usize, budget: &Budget) -> Result<Vec<u64>> {
    Ok(resolve(m, depth, budget)?.betti().iter().map(|&b| b as u64).collect())
}

/// μ^n(M) computed as β_n(M^∨).
pub fn bass_sequence<F: Field>(m: &Module<F>, depth: usize, budget: &Budget) -> Result<Vec<u64>> {
    betti_sequence(&m.dual(), depth, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Rationals};
    use crate::module::ModulePresentation;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn residue_field_over_square_zero() {
        let r = Arc::new(ArtinAlgebra::build(&Gf2, &vars(&["x", "y"]), &["x^2", "x*y", "y^2"]).unwrap());
        let k = Module::residue_field(&r);
        let res = resolve(&k, 4, &Budget::new(DEFAULT_BUDGET)).unwrap();
        assert_eq!(res.betti(), &[1, 2, 4, 8, 16]);
        assert!(res.is_minimal());
        assert!(res.composes_to_zero());
        assert!(res.is_exact());
    }

    #[test]
    fn ci_residue_field() {
        let r = Arc::new(ArtinAlgebra::build(&Rationals, &vars(&["x", "y"]), &["x^2", "y^2"]).unwrap());
        let k = Module::residue_field(&r);
        let b = betti_sequence(&k, 8, &Budget::new(DEFAULT_BUDGET)).unwrap();
        assert_eq!(b, (1..=9).collect::<Vec<u64>>());
    }

    #[test]
    fn free_module_and_cache_reuse() {
        let r = Arc::new(ArtinAlgebra::build(&Rationals, &vars(&["x"]), &["x^2"]).unwrap());
        let f3 = Module::free(&r, 3);
        assert_eq!(betti_sequence(&f3, 4, &Budget::new(DEFAULT_BUDGET)).unwrap(), vec![3, 0, 0, 0, 0]);
        let k = Module::realize(&ModulePresentation::parse(&r, 1, &[vec!["x".into()]]).unwrap());
        assert_eq!(betti_sequence(&k, 3, &Budget::new(DEFAULT_BUDGET)).unwrap(), vec![1; 4]);
        assert_eq!(betti_sequence(&k, 8, &Budget::new(DEFAULT_BUDGET)).unwrap(), vec![1; 9]);
    }

    #[test]
    fn budget_is_enforced() {
        let r = Arc::new(ArtinAlgebra::build(&Gf2, &vars(&["x", "y"]), &["x^2", "x*y", "y^2"]).unwrap());
        let k = Module::residue_field(&r);
        let err = resolve(&k, 8, &Budget::new(1000)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }
}
