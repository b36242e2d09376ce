//! Ext and Tor as realized modules, and their invariant sequences.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_basis, Echelon, Matrix};
use crate::module::{subquotient, Module};
use crate::resolution::{resolve, Budget, FreeResolution};

fn same_ring<F: Field>(m: &Module<F>, n: &Module<F>) -> Result<()> {
    if Arc::ptr_eq(m.ring(), n.ring()) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// N^r with every variable acting by zero.
fn killed_power<F: Field>(n: &Module<F>, r: usize) -> Module<F> {
    let f = n.field();
    let dim = r * n.dim();
    let images = (0..n.ring().nvars()).map(|_| vec![f.row_zeros(dim); dim]).collect();
    let gens = (0..dim).map(|c| f.row_unit(dim, c)).collect();
    Module::new(n.ring().clone(), dim, images, gens)
}

/// Blockwise action of x_i on N^r.
fn block_act<F: Field>(n: &Module<F>, i: usize, v: &F::Row) -> F::Row {
    let f = n.field();
    let d = n.dim();
    let mut out = f.row_zeros(f.row_len(v));
    for (pos, c) in f.row_nonzeros(v) {
        let (blk, t) = (pos / d, pos % d);
        for (s, e) in f.row_nonzeros(&n.images(i)[t]) {
            let at = blk * d + s;
            let cur = f.row_get(&out, at);
            f.row_set(&mut out, at, f.add(&cur, &f.mul(&c, &e)));
        }
    }
    out
}

/// Columns of d_k ⊗ N : N^{β_k} → N^{β_{k−1}}, indexed (b, c).
fn tensor_columns<F: Field>(res: &FreeResolution<F>, k: usize, n: &Module<F>) -> Vec<F::Row> {
    let f = n.field();
    let lambda = res.ring().length();
    let d = n.dim();
    let mono = n.monomial_images();
    let rows = res.betti()[k - 1];
    let mut out = Vec::with_capacity(res.betti()[k] * d);
    for g in res.differential(k) {
        let nz = f.row_nonzeros(g);
        for c in 0..d {
            let mut col = f.row_zeros(rows * d);
            for (pos, a) in &nz {
                let (blk, j) = (pos / lambda, pos % lambda);
                for (s, e) in f.row_nonzeros(&mono[j][c]) {
                    let at = blk * d + s;
                    let cur = f.row_get(&col, at);
                    f.row_set(&mut col, at, f.add(&cur, &f.mul(a, &e)));
                }
            }
            out.push(col);
        }
    }
    out
}

/// Columns of Hom(d_k, N) : N^{β_{k−1}} → N^{β_k}, indexed (a, c).
fn hom_columns<F: Field>(res: &FreeResolution<F>, k: usize, n: &Module<F>) -> Vec<F::Row> {
    let f = n.field();
    let lambda = res.ring().length();
    let d = n.dim();
    let mono = n.monomial_images();
    let (src, dst) = (res.betti()[k - 1], res.betti()[k]);
    // entries[a] = list of (b, j, coefficient) with d_k[a][b]_j ≠ 0
    let mut entries: Vec<Vec<(usize, usize, F::Elem)>> = vec![Vec::new(); src];
    for (b, g) in res.differential(k).iter().enumerate() {
        for (pos, a) in f.row_nonzeros(g) {
            entries[pos / lambda].push((b, pos % lambda, a));
        }
    }
    let mut out = Vec::with_capacity(src * d);
    for ent in &entries {
        for c in 0..d {
            let mut col = f.row_zeros(dst * d);
            for (b, j, a) in ent {
                for (s, e) in f.row_nonzeros(&mono[*j][c]) {
                    let at = b * d + s;
                    let cur = f.row_get(&col, at);
                    f.row_set(&mut col, at, f.add(&cur, &f.mul(a, &e)));
                }
            }
            out.push(col);
        }
    }
    out
}

/// ker(out)/im(in) inside N^r.
fn homology<F: Field>(n: &Module<F>, r: usize, out: Option<(usize, Vec<F::Row>)>, incoming: Vec<F::Row>, budget: &Budget) -> Result<Module<F>> {
    let f = n.field();
    let dim = r * n.dim();
    let z = match out {
        Some((rows, cols)) if !cols.is_empty() => {
            budget.check("homology cycles", rows as u64 * dim as u64)?;
            kernel_basis(&Matrix::from_columns(f, rows, &cols)).into_rows()
        }
        _ => (0..dim).map(|c| f.row_unit(dim, c)).collect(),
    };
    let mut b = Echelon::new(f, dim);
    for v in incoming {
        if b.insert(v) {
            budget.check("homology boundaries", b.rank() as u64 * dim as u64)?;
        }
    }
    Ok(subquotient(n.ring(), dim, |i, v| block_act(n, i, v), &z, &b).0)
}

/// Tor_i(M, N) from a resolution of M.
pub fn tor_module<F: Field>(m: &Module<F>, n: &Module<F>, i: usize, budget: &Budget) -> Result<Module<F>> {
    same_ring(m, n)?;
    if n.is_killed_by_m() {
        let res = resolve(m, i, budget)?;
        return Ok(killed_power(n, res.betti()[i]));
    }
    let res = resolve(m, i + 1, budget)?;
    let b = res.betti();
    if b[i] == 0 {
        return Ok(Module::zero(m.ring()));
    }
    let out = (i >= 1).then(|| (b[i - 1] * n.dim(), tensor_columns(&res, i, n)));
    let incoming = if b[i + 1] > 0 { tensor_columns(&res, i + 1, n) } else { vec![] };
    homology(n, b[i], out, incoming, budget)
}

/// Ext^i(M, N) from a resolution of M.
pub fn ext_module<F: Field>(m: &Module<F>, n: &Module<F>, i: usize, budget: &Budget) -> Result<Module<F>> {
    same_ring(m, n)?;
    if n.is_killed_by_m() {
        let res = resolve(m, i, budget)?;
        return Ok(killed_power(n, res.betti()[i]));
    }
    let res = resolve(m, i + 1, budget)?;
    let b = res.betti();
    if b[i] == 0 {
        return Ok(Module::zero(m.ring()));
    }
    let out = (b[i + 1] > 0).then(|| (b[i + 1] * n.dim(), hom_columns(&res, i + 1, n)));
    let incoming = if i >= 1 { hom_columns(&res, i, n) } else { vec![] };
    homology(n, b[i], out, incoming, budget)
}

fn rank_of<F: Field>(f: &F, len: usize, vs: Vec<F::Row>, what: &str, budget: &Budget) -> Result<usize> {
    let mut e = Echelon::new(f, len);
    for v in vs {
        if e.insert(v) {
            budget.check(what, e.rank() as u64 * len as u64)?;
        }
    }
    Ok(e.rank())
}

/// Length of ker(out)/im(in) inside N^r, by ranks alone.
fn homology_len<F: Field>(n: &Module<F>, r: usize, out: Option<(usize, Vec<F::Row>)>, incoming: Vec<F::Row>, budget: &Budget) -> Result<u64> {
    let f = n.field();
    let dim = r * n.dim();
    let rank_out = match out {
        Some((rows, cols)) => rank_of(f, rows, cols, "homology rank", budget)?,
        None => 0,
    };
    let rank_in = rank_of(f, dim, incoming, "homology boundaries", budget)?;
    Ok((dim - rank_out - rank_in) as u64)
}

/// λ(Tor_i(M, N)) without building the module.
pub fn tor_len<F: Field>(m: &Module<F>, n: &Module<F>, i: usize, budget: &Budget) -> Result<u64> {
    same_ring(m, n)?;
    if n.is_killed_by_m() {
        return Ok((resolve(m, i, budget)?.betti()[i] * n.dim()) as u64);
    }
    let res = resolve(m, i + 1, budget)?;
    let b = res.betti();
    if b[i] == 0 {
        return Ok(0);
    }
    let out = (i >= 1).then(|| (b[i - 1] * n.dim(), tensor_columns(&res, i, n)));
    let incoming = if b[i + 1] > 0 { tensor_columns(&res, i + 1, n) } else { vec![] };
    homology_len(n, b[i], out, incoming, budget)
}

/// λ(Ext^i(M, N)) without building the module.
pub fn ext_len<F: Field>(m: &Module<F>, n: &Module<F>, i: usize, budget: &Budget) -> Result<u64> {
    same_ring(m, n)?;
    if n.is_killed_by_m() {
        return Ok((resolve(m, i, budget)?.betti()[i] * n.dim()) as u64);
    }
    let res = resolve(m, i + 1, budget)?;
    let b = res.betti();
    if b[i] == 0 {
        return Ok(0);
    }
    let out = (b[i + 1] > 0).then(|| (b[i + 1] * n.dim(), hom_columns(&res, i + 1, n)));
    let incoming = if i >= 1 { hom_columns(&res, i, n) } else { vec![] };
    homology_len(n, b[i], out, incoming, budget)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSequences {
    pub ext_mu: Vec<u64>,
    pub ext_len: Vec<u64>,
    pub ext_type: Vec<u64>,
    pub tor_mu: Vec<u64>,
    pub tor_len: Vec<u64>,
    pub tor_type: Vec<u64>,
    /// Least h with 𝔪^h killing every computed module.
    pub ann_exponent: usize,
    pub ext_route: String,
    pub tor_route: String,
}

/// Growth proxy used to decide which side to resolve.
fn probe<F: Field>(m: &Module<F>, depth: usize, budget: &Budget) -> Option<(usize, usize)> {
    let d = depth.min(3);
    resolve(m, d, budget).ok().map(|r| (r.betti()[d], r.betti().iter().sum()))
}

/// True when resolving `a` looks no more expensive than resolving `b`.
fn prefer_first<F: Field>(a: &Module<F>, b: &Module<F>, depth: usize, budget: &Budget) -> bool {
    match (probe(a, depth, budget), probe(b, depth, budget)) {
        (Some(x), Some(y)) => x <= y,
        (_, None) => true,
        (None, Some(_)) => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TorRoute {
    First,
    Swapped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ExtRoute {
    Direct,
    /// Ext^i(M,N) ≅ Tor_i(N^∨, M)^∨
    Dual,
}

/// How Ext(M,N) and Tor(M,N) are computed, fixed once per pair.
///
/// Each module is computed up to isomorphism through whichever of the
/// balanced or Matlis-dual descriptions needs the cheaper resolution.
pub struct PairPlan<'a, F: Field> {
    m: &'a Module<F>,
    n: &'a Module<F>,
    nd: Arc<Module<F>>,
    ext_route: ExtRoute,
    tor_route: TorRoute,
}

/// (μ, λ, type, Loewy length) of one module.
pub type Shape = (u64, u64, u64, usize);

fn shape<F: Field>(x: &Module<F>) -> Shape {
    let inv = x.invariants();
    (inv.mu as u64, inv.length as u64, inv.type_ as u64, x.loewy_length())
}

impl<'a, F: Field> PairPlan<'a, F> {
    pub fn new(m: &'a Module<F>, n: &'a Module<F>, depth: usize, budget: &Budget) -> Result<Self> {
        same_ring(m, n)?;
        let tor_route = if n.is_killed_by_m() {
            TorRoute::First
        } else if m.is_killed_by_m() || !prefer_first(m, n, depth + 1, budget) {
            TorRoute::Swapped
        } else {
            TorRoute::First
        };
        let nd = n.dual();
        let ext_route = if n.is_killed_by_m() {
            ExtRoute::Direct
        } else if m.is_killed_by_m() || !prefer_first(m, &nd, depth + 1, budget) {
            ExtRoute::Dual
        } else {
            ExtRoute::Direct
        };
        Ok(PairPlan { m, n, nd, ext_route, tor_route })
    }

    pub fn ext_route(&self) -> String {
        format!("{:?}", self.ext_route).to_lowercase()
    }
    pub fn tor_route(&self) -> String {
        format!("{:?}", self.tor_route).to_lowercase()
    }

    pub fn ext(&self, i: usize, budget: &Budget) -> Result<Module<F>> {
        match self.ext_route {
            ExtRoute::Direct => ext_module(self.m, self.n, i, budget),
            ExtRoute::Dual => Ok(tor_module(&self.nd, self.m, i, budget)?.matlis_dual()),
        }
    }

    pub fn tor(&self, i: usize, budget: &Budget) -> Result<Module<F>> {
        match self.tor_route {
            TorRoute::First => tor_module(self.m, self.n, i, budget),
            TorRoute::Swapped => tor_module(self.n, self.m, i, budget),
        }
    }

    /// Shapes of Ext^i(M,N) and Tor_i(M,N).
    pub fn step(&self, i: usize, budget: &Budget) -> Result<(Shape, Shape)> {
        Ok((shape(&self.ext(i, budget)?), shape(&self.tor(i, budget)?)))
    }
}

impl PairSequences {
    pub fn len(&self) -> usize {
        self.ext_mu.len()
    }
    pub fn is_empty(&self) -> bool {
        self.ext_mu.is_empty()
    }

    pub fn push(&mut self, (e, t): (Shape, Shape)) {
        self.ext_mu.push(e.0);
        self.ext_len.push(e.1);
        self.ext_type.push(e.2);
        self.tor_mu.push(t.0);
        self.tor_len.push(t.1);
        self.tor_type.push(t.2);
        self.ann_exponent = self.ann_exponent.max(e.3).max(t.3);
    }
}

/// μ, λ and type of Ext^i(M,N) and Tor_i(M,N) for i ≤ depth.
pub fn pair_sequences<F: Field>(m: &Module<F>, n: &Module<F>, depth: usize, budget: &Budget) -> Result<PairSequences> {
    let plan = PairPlan::new(m, n, depth, budget)?;
    pair_sequences_with(&plan, depth, budget)
}

pub fn pair_sequences_with<F: Field>(plan: &PairPlan<F>, depth: usize, budget: &Budget) -> Result<PairSequences> {
    let mut out = PairSequences {
        ext_mu: vec![],
        ext_len: vec![],
        ext_type: vec![],
        tor_mu: vec![],
        tor_len: vec![],
        tor_type: vec![],
        ann_exponent: 0,
        ext_route: plan.ext_route(),
        tor_route: plan.tor_route(),
    };
    for i in 0..=depth {
        out.push(plan.step(i, budget)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityRow {
    pub i: usize,
    pub ext_dim: u64,
    pub tor_dim: u64,
}

/// dim Ext^i(L, M^∨) against dim Tor_i(L, M) for 1 ≤ i ≤ depth, both from a
/// resolution of L.
pub fn ext_tor_duality_check<F: Field>(l: &Module<F>, m: &Module<F>, depth: usize, budget: &Budget) -> Result<Vec<DualityRow>> {
    same_ring(l, m)?;
    let md = m.dual();
    (1..=depth)
        .map(|i| Ok(DualityRow { i, ext_dim: ext_module(l, &md, i, budget)?.dim() as u64, tor_dim: tor_module(l, m, i, budget)?.dim() as u64 }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ArtinAlgebra;
    use crate::field::{Gf2, Rationals};
    use crate::module::ModulePresentation;
    use crate::resolution::DEFAULT_BUDGET;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn budget() -> Budget {
        Budget::new(DEFAULT_BUDGET)
    }

    #[test]
    fn residue_field_tor_and_ext() {
        let r = Arc::new(ArtinAlgebra::build(&Gf2, &vars(&["x", "y"]), &["x^2", "x*y", "y^2"]).unwrap());
        let k = Module::residue_field(&r);
        let dims: Vec<usize> = (0..5).map(|i| tor_module(&k, &k, i, &budget()).unwrap().dim()).collect();
        assert_eq!(dims, [1, 2, 4, 8, 16]);
        let ps = pair_sequences(&k, &k, 4, &budget()).unwrap();
        assert_eq!(ps.ext_mu, [1, 2, 4, 8, 16]);
        assert_eq!(ps.tor_mu, [1, 2, 4, 8, 16]);
        assert_eq!(ps.ann_exponent, 1);
        let e = Module::free(&r, 1).matlis_dual();
        let dims: Vec<usize> = (0..4).map(|i| ext_module(&k, &e, i, &budget()).unwrap().dim()).collect();
        assert_eq!(dims, [1, 0, 0, 0]);
    }

    #[test]
    fn self_injective_hypersurface() {
        let r = Arc::new(ArtinAlgebra::build(&Rationals, &vars(&["x"]), &["x^2"]).unwrap());
        let k = Module::residue_field(&r);
        let rr = Module::free(&r, 1);
        let dims: Vec<usize> = (0..4).map(|i| ext_module(&k, &rr, i, &budget()).unwrap().dim()).collect();
        assert_eq!(dims, [1, 0, 0, 0]);
        let t0 = tor_module(&k, &k, 0, &budget()).unwrap();
        assert_eq!(t0.dim(), 1);
    }

    #[test]
    fn periodic_module_of_example_ring() {
        let r = Arc::new(ArtinAlgebra::build(&Gf2, &vars(&["x1", "x2", "y"]), &["x1^2", "x1*x2", "x2^2", "y^2"]).unwrap());
        let m = Module::realize(&ModulePresentation::parse(&r, 1, &[vec!["y".into()]]).unwrap());
        let k = Module::residue_field(&r);
        let dims: Vec<usize> = (0..5).map(|i| ext_module(&m, &k, i, &budget()).unwrap().dim()).collect();
        assert_eq!(dims, [1; 5]);
        let rows = ext_tor_duality_check(&m, &m, 4, &budget()).unwrap();
        assert!(rows.iter().all(|r| r.ext_dim == r.tor_dim));
        let ps = pair_sequences(&m, &m, 5, &budget()).unwrap();
        assert!(ps.ann_exponent <= 2);
    }

    #[test]
    fn free_first_argument() {
        let r = Arc::new(ArtinAlgebra::build(&Rationals, &vars(&["x", "y"]), &["x^2", "y^2"]).unwrap());
        let f = Module::free(&r, 2);
        let m = Module::realize(&ModulePresentation::parse(&r, 1, &[vec!["x".into()]]).unwrap());
        let ps = pair_sequences(&f, &m, 3, &budget()).unwrap();
        assert_eq!(&ps.ext_len[1..], &[0, 0, 0]);
        assert_eq!(&ps.tor_len[1..], &[0, 0, 0]);
        let rows = ext_tor_duality_check(&m, &f, 3, &budget()).unwrap();
        assert!(rows.iter().all(|r| r.ext_dim == 0 && r.tor_dim == 0));
    }

    #[test]
    fn lengths_match_modules() {
        let r = Arc::new(ArtinAlgebra::build(&Rationals, &vars(&["x", "y"]), &["x^2", "x*y^2", "y^3"]).unwrap());
        let m = Module::realize(&ModulePresentation::parse(&r, 1, &[vec!["x".into()], vec!["y^2".into()]]).unwrap());
        let (k, rr) = (Module::residue_field(&r), Module::free(&r, 1));
        for (a, b) in [(&m, &rr), (&k, &m), (&m, &m), (&rr, &m)] {
            for i in 0..4 {
                assert_eq!(ext_len(a, b, i, &budget()).unwrap(), ext_module(a, b, i, &budget()).unwrap().dim() as u64);
                assert_eq!(tor_len(a, b, i, &budget()).unwrap(), tor_module(a, b, i, &budget()).unwrap().dim() as u64);
            }
        }
    }
}
