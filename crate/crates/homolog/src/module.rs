//! Finitely generated modules realized as k-vector spaces with an R-action.

use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::algebra::ArtinAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{free_columns, kernel_vector, rref_in_place, Coordinates, Echelon, Matrix};
use crate::resolution::ResolutionCache;

/// M = coker(R^q → R^p), row r of `matrix` being the r-th relation.
#[derive(Clone, Debug)]
pub struct ModulePresentation<F: Field> {
    pub ring: Arc<ArtinAlgebra<F>>,
    pub gens: usize,
    pub matrix: Vec<Vec<F::Row>>,
}

impl<F: Field> ModulePresentation<F> {
    pub fn parse(ring: &Arc<ArtinAlgebra<F>>, gens: usize, rows: &[Vec<String>]) -> Result<Self> {
        let mut matrix = Vec::new();
        for row in rows {
            if row.len() != gens {
                return Err(Error::Corpus(format!("relation has {} entries, expected {gens}", row.len())));
            }
            matrix.push(row.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?);
        }
        Ok(ModulePresentation { ring: ring.clone(), gens, matrix })
    }

    pub fn relations(&self) -> usize {
        self.matrix.len()
    }

    pub fn format(&self) -> Vec<Vec<String>> {
        self.matrix.iter().map(|r| r.iter().map(|a| self.ring.format(a)).collect()).collect()
    }
}

pub struct Module<F: Field> {
    ring: Arc<ArtinAlgebra<F>>,
    dim: usize,
    // images[i][c] = x_i · e_c
    images: Vec<Vec<F::Row>>,
    gens: Vec<F::Row>,
    mono: OnceLock<Vec<Vec<F::Row>>>,
    dual: OnceLock<Arc<Module<F>>>,
    pub(crate) resolution: Mutex<ResolutionCache<F>>,
}

impl<F: Field> std::fmt::Debug for Module<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Module").field("dim", &self.dim).field("images", &self.images).finish()
    }
}

impl<F: Field> Clone for Module<F> {
    fn clone(&self) -> Self {
        Module::new(self.ring.clone(), self.dim, self.images.clone(), self.gens.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleInvariants {
    pub length: usize,
    pub mu: usize,
    #[serde(rename = "type")]
    pub type_: usize,
    pub mult: usize,
    pub is_min_mult: bool,
    pub is_ulrich: bool,
}

/// x_i acting on a free module of the given rank, coordinates (g, j) ↦ g·λ + j.
pub(crate) fn free_mul_var<F: Field>(ring: &ArtinAlgebra<F>, rank: usize, i: usize, v: &F::Row) -> F::Row {
    let f = ring.field();
    let lambda = ring.length();
    let mut out = f.row_zeros(rank * lambda);
    for (pos, c) in f.row_nonzeros(v) {
        let (g, j) = (pos / lambda, pos % lambda);
        for (t, e) in ring.var_mult(i, j) {
            let at = g * lambda + t;
            let cur = f.row_get(&out, at);
            f.row_set(&mut out, at, f.add(&cur, &f.mul(&c, e)));
        }
    }
    out
}

/// Ring element times a free-module vector.
pub(crate) fn free_mul<F: Field>(ring: &ArtinAlgebra<F>, rank: usize, a: &F::Row, v: &F::Row) -> F::Row {
    let f = ring.field();
    let lambda = ring.length();
    let mut out = f.row_zeros(rank * lambda);
    let an = f.row_nonzeros(a);
    for (pos, c) in f.row_nonzeros(v) {
        let (g, l) = (pos / lambda, pos % lambda);
        for (j, d) in &an {
            let cd = f.mul(&c, d);
            for (t, e) in ring.mono_mult(*j, l) {
                let at = g * lambda + t;
                let cur = f.row_get(&out, at);
                f.row_set(&mut out, at, f.add(&cur, &f.mul(&cd, e)));
            }
        }
    }
    out
}

impl<F: Field> Module<F> {
    pub fn new(ring: Arc<ArtinAlgebra<F>>, dim: usize, images: Vec<Vec<F::Row>>, gens: Vec<F::Row>) -> Self {
        debug_assert_eq!(images.len(), ring.nvars());
        Module { ring, dim, images, gens, mono: OnceLock::new(), dual: OnceLock::new(), resolution: Mutex::new(ResolutionCache::default()) }
    }

    /// Realizes the cokernel of a presentation.
    pub fn realize(pres: &ModulePresentation<F>) -> Self {
        let ring = &pres.ring;
        let f = ring.field();
        let lambda = ring.length();
        let p = pres.gens;
        let n = p * lambda;
        let mut rel = Echelon::new(f, n);
        for row in &pres.matrix {
            let mut v = f.row_zeros(n);
            for (g, a) in row.iter().enumerate() {
                for (j, c) in f.row_nonzeros(a) {
                    f.row_set(&mut v, g * lambda + j, c);
                }
            }
            for j in 0..lambda {
                rel.insert(free_mul(ring, p, &f.row_unit(lambda, j), &v));
            }
        }
        let keep = free_columns(rel.pivots(), n);
        let project = |mut v: F::Row| -> F::Row {
            rel.reduce(&mut v);
            let mut out = f.row_zeros(keep.len());
            for (t, &c) in keep.iter().enumerate() {
                let a = f.row_get(&v, c);
                if !f.is_zero(&a) {
                    f.row_set(&mut out, t, a);
                }
            }
            out
        };
        let images = (0..ring.nvars()).map(|i| keep.iter().map(|&c| project(free_mul_var(ring, p, i, &f.row_unit(n, c)))).collect()).collect();
        let gens = (0..p).map(|g| project(f.row_unit(n, g * lambda))).collect();
        Module::new(ring.clone(), keep.len(), images, gens)
    }

    pub fn free(ring: &Arc<ArtinAlgebra<F>>, rank: usize) -> Self {
        Self::realize(&ModulePresentation { ring: ring.clone(), gens: rank, matrix: vec![] })
    }

    pub fn residue_field(ring: &Arc<ArtinAlgebra<F>>) -> Self {
        let f = ring.field();
        let images = (0..ring.nvars()).map(|_| vec![f.row_zeros(1)]).collect();
        Module::new(ring.clone(), 1, images, vec![f.row_unit(1, 0)])
    }

    pub fn zero(ring: &Arc<ArtinAlgebra<F>>) -> Self {
        Module::new(ring.clone(), 0, vec![vec![]; ring.nvars()], vec![])
    }

    pub fn ring(&self) -> &Arc<ArtinAlgebra<F>> {
        &self.ring
    }
    pub fn field(&self) -> &F {
        self.ring.field()
    }
    /// λ(M)
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }
    pub fn images(&self, i: usize) -> &[F::Row] {
        &self.images[i]
    }
    pub fn generator_coords(&self) -> &[F::Row] {
        &self.gens
    }

    /// Matrix of x_i; column c holds x_i·e_c.
    pub fn action_matrix(&self, i: usize) -> Matrix<F> {
        Matrix::from_columns(self.field(), self.dim, &self.images[i])
    }

    pub fn act(&self, i: usize, v: &F::Row) -> F::Row {
        let f = self.field();
        let mut out = f.row_zeros(self.dim);
        for (c, a) in f.row_nonzeros(v) {
            f.row_axpy(&mut out, &a, &self.images[i][c]);
        }
        out
    }

    /// mono[j][c] = b_j · e_c
    pub fn monomial_images(&self) -> &Vec<Vec<F::Row>> {
        self.mono.get_or_init(|| {
            let f = self.field();
            let mut mono: Vec<Vec<F::Row>> = Vec::with_capacity(self.ring.length());
            for j in 0..self.ring.length() {
                let row = match self.ring.factor(j) {
                    None => (0..self.dim).map(|c| f.row_unit(self.dim, c)).collect(),
                    Some((v, jp)) => mono[jp].iter().map(|w| self.act(v, w)).collect(),
                };
                mono.push(row);
            }
            mono
        })
    }

    /// Ring element acting on a vector.
    pub fn act_ring(&self, a: &F::Row, v: &F::Row) -> F::Row {
        let f = self.field();
        let mono = self.monomial_images();
        let mut out = f.row_zeros(self.dim);
        let vn = f.row_nonzeros(v);
        for (j, c) in f.row_nonzeros(a) {
            for (t, d) in &vn {
                f.row_axpy(&mut out, &f.mul(&c, d), &mono[j][*t]);
            }
        }
        out
    }

    /// Basis of 𝔪^j M in semi-echelon form.
    pub fn m_power(&self, j: usize) -> Echelon<F> {
        let f = self.field();
        let mut cur = Echelon::new(f, self.dim);
        for c in 0..self.dim {
            cur.insert(f.row_unit(self.dim, c));
        }
        for _ in 0..j {
            let mut next = Echelon::new(f, self.dim);
            for v in cur.rows() {
                for i in 0..self.ring.nvars() {
                    next.insert(self.act(i, v));
                }
            }
            cur = next;
            if cur.rank() == 0 {
                break;
            }
        }
        cur
    }

    /// Least h with 𝔪^h M = 0.
    pub fn loewy_length(&self) -> usize {
        (0..).find(|&h| self.m_power(h).rank() == 0).unwrap()
    }

    pub fn is_killed_by_m(&self) -> bool {
        self.images.iter().all(|img| img.iter().all(|v| self.field().row_is_zero(v)))
    }

    pub fn mu(&self) -> usize {
        self.dim - self.m_power(1).rank()
    }

    pub fn socle_dim(&self) -> usize {
        if self.dim == 0 {
            return 0;
        }
        let mut rows = Vec::new();
        for i in 0..self.ring.nvars() {
            rows.extend(self.action_matrix(i).into_rows());
        }
        if rows.is_empty() {
            return self.dim;
        }
        self.dim - Matrix::from_rows(self.field(), self.dim, rows).rank()
    }

    pub fn invariants(&self) -> ModuleInvariants {
        if self.dim == 0 {
            return ModuleInvariants { length: 0, mu: 0, type_: 0, mult: 0, is_min_mult: false, is_ulrich: false };
        }
        let m1 = self.m_power(1).rank();
        let m2 = self.m_power(2).rank();
        ModuleInvariants { length: self.dim, mu: self.dim - m1, type_: self.socle_dim(), mult: self.dim, is_min_mult: m2 == 0, is_ulrich: m1 == 0 }
    }

    /// Standard basis vectors outside 𝔪M chosen greedily; they generate M minimally.
    pub fn minimal_generators(&self) -> Vec<F::Row> {
        let f = self.field();
        let mut e = self.m_power(1);
        (0..self.dim).filter(|&c| e.insert(f.row_unit(self.dim, c))).map(|c| f.row_unit(self.dim, c)).collect()
    }

    /// k-dual with transposed actions.
    pub fn matlis_dual(&self) -> Module<F> {
        let f = self.field();
        let images: Vec<Vec<F::Row>> = self
            .images
            .iter()
            .map(|img| {
                let mut rows = vec![f.row_zeros(self.dim); self.dim];
                for (c, v) in img.iter().enumerate() {
                    for (d, a) in f.row_nonzeros(v) {
                        f.row_set(&mut rows[d], c, a);
                    }
                }
                rows
            })
            .collect();
        let mut m = Module::new(self.ring.clone(), self.dim, images, vec![]);
        m.gens = m.minimal_generators();
        m
    }

    /// Cached dual, shared so that resolutions of M^∨ are reused.
    pub fn dual(&self) -> Arc<Module<F>> {
        self.dual.get_or_init(|| Arc::new(self.matlis_dual())).clone()
    }

    /// The minimal cover R^μ → M as columns b_j·g, g running over minimal generators.
    fn cover_columns(&self) -> (usize, Vec<F::Row>) {
        let gens = self.minimal_generators();
        let lambda = self.ring.length();
        let f = self.field();
        let cols = gens.iter().flat_map(|g| (0..lambda).map(move |j| (g, j))).map(|(g, j)| self.act_ring(&f.row_unit(lambda, j), g)).collect();
        (gens.len(), cols)
    }

    /// Ω(M) together with the embedding of its basis into R^μ(M).
    pub fn syzygy_with_embedding(&self) -> Result<(Module<F>, Vec<F::Row>)> {
        if self.dim == 0 {
            return Err(Error::ZeroModule);
        }
        let f = self.field();
        let (mu, cols) = self.cover_columns();
        let n = cols.len();
        let mut rows = Matrix::from_columns(f, self.dim, &cols).into_rows();
        let pivots = rref_in_place(f, &mut rows, n);
        let kernel: Vec<F::Row> = free_columns(&pivots, n).into_iter().map(|c| kernel_vector(f, &rows[..pivots.len()], &pivots, n, c)).collect();
        let ring = self.ring.clone();
        let m = subquotient(&ring, n, |i, v| free_mul_var(&ring, mu, i, v), &kernel, &Echelon::new(f, n));
        Ok(m)
    }

    pub fn syzygy(&self) -> Result<Module<F>> {
        Ok(self.syzygy_with_embedding()?.0)
    }

    pub fn minimal_presentation(&self) -> ModulePresentation<F> {
        let lambda = self.ring.length();
        let f = self.field();
        let mu = self.mu();
        if self.dim == 0 {
            return ModulePresentation { ring: self.ring.clone(), gens: 0, matrix: vec![] };
        }
        let (omega, embed) = self.syzygy_with_embedding().unwrap();
        let matrix = omega
            .minimal_generators()
            .iter()
            .map(|g| {
                let mut v = f.row_zeros(mu * lambda);
                for (c, a) in f.row_nonzeros(g) {
                    f.row_axpy(&mut v, &a, &embed[c]);
                }
                (0..mu).map(|t| f.row_slice(&v, t * lambda, lambda)).collect()
            })
            .collect();
        ModulePresentation { ring: self.ring.clone(), gens: mu, matrix }
    }

    pub fn direct_sum(&self, other: &Module<F>) -> Result<Module<F>> {
        if !Arc::ptr_eq(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let f = self.field();
        let (a, b) = (self.dim, other.dim);
        let za = f.row_zeros(a);
        let zb = f.row_zeros(b);
        let images = (0..self.ring.nvars())
            .map(|i| self.images[i].iter().map(|v| f.row_concat(v, &zb)).chain(other.images[i].iter().map(|v| f.row_concat(&za, v))).collect())
            .collect();
        let gens = self.gens.iter().map(|v| f.row_concat(v, &zb)).chain(other.gens.iter().map(|v| f.row_concat(&za, v))).collect();
        Ok(Module::new(self.ring.clone(), a + b, images, gens))
    }

    /// Quotient by the submodule generated by `vectors`, with the kernel of the
    /// projection realized as a module.
    pub fn quotient(&self, vectors: &[F::Row]) -> (Module<F>, Module<F>) {
        let f = self.field();
        let sub = self.generated_submodule(vectors);
        let keep = free_columns(sub.pivots(), self.dim);
        let project = |mut v: F::Row| -> F::Row {
            sub.reduce(&mut v);
            let mut out = f.row_zeros(keep.len());
            for (t, &c) in keep.iter().enumerate() {
                let a = f.row_get(&v, c);
                if !f.is_zero(&a) {
                    f.row_set(&mut out, t, a);
                }
            }
            out
        };
        let images = (0..self.ring.nvars()).map(|i| keep.iter().map(|&c| project(self.images[i][c].clone())).collect()).collect();
        let gens = self.gens.iter().map(|g| project(g.clone())).collect();
        let q = Module::new(self.ring.clone(), keep.len(), images, gens);
        let (kernel, _) = subquotient(&self.ring, self.dim, |i, v| self.act(i, v), sub.rows(), &Echelon::new(f, self.dim));
        (q, kernel)
    }

    /// k-basis of the R-submodule generated by `vectors`.
    pub fn generated_submodule(&self, vectors: &[F::Row]) -> Echelon<F> {
        let mut e = Echelon::new(self.field(), self.dim);
        let mut frontier: Vec<F::Row> = vectors.iter().filter(|v| e.insert((*v).clone())).cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for v in &frontier {
                for i in 0..self.ring.nvars() {
                    let w = self.act(i, v);
                    if e.insert(w.clone()) {
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        e
    }

    /// True when the actions commute and every ideal generator acts as zero.
    pub fn satisfies_relations(&self) -> bool {
        let f = self.field();
        let n = self.ring.nvars();
        for c in 0..self.dim {
            let e = f.row_unit(self.dim, c);
            for i in 0..n {
                for j in 0..i {
                    if self.act(i, &self.act(j, &e)) != self.act(j, &self.act(i, &e)) {
                        return false;
                    }
                }
            }
            for p in self.ring.ideal() {
                let mut acc = f.row_zeros(self.dim);
                for (coef, mono) in p.terms() {
                    let mut w = e.clone();
                    for (i, &k) in mono.0.iter().enumerate() {
                        for _ in 0..k {
                            w = self.act(i, &w);
                        }
                    }
                    f.row_axpy(&mut acc, coef, &w);
                }
                if !f.row_is_zero(&acc) {
                    return false;
                }
            }
        }
        true
    }
}

/// Realizes Z/B inside an ambient module given by `act`. `z` must span an
/// R-submodule containing the span of `b`, and be independent.
pub(crate) fn subquotient<F: Field>(
    ring: &Arc<ArtinAlgebra<F>>,
    ambient: usize,
    act: impl Fn(usize, &F::Row) -> F::Row,
    z: &[F::Row],
    b: &Echelon<F>,
) -> (Module<F>, Vec<F::Row>) {
    let f = ring.field();
    let mut full = b.clone();
    let mut reps = Vec::new();
    let mut reduced = Vec::new();
    for v in z {
        let mut w = v.clone();
        b.reduce(&mut w);
        if full.insert(w.clone()) {
            reps.push(v.clone());
            reduced.push(w);
        }
    }
    let coords = Coordinates::new(f, ambient, &reduced);
    let images = (0..ring.nvars())
        .map(|i| {
            reps.iter()
                .map(|v| {
                    let mut w = act(i, v);
                    b.reduce(&mut w);
                    coords.coords(&w)
                })
                .collect()
        })
        .collect();
    let mut m = Module::new(ring.clone(), reps.len(), images, vec![]);
    m.gens = m.minimal_generators();
    (m, reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Rationals};

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn ex53_ring() -> Arc<ArtinAlgebra<Gf2>> {
        Arc::new(ArtinAlgebra::build(&Gf2, &vars(&["x1", "x2", "y"]), &["x1^2", "x1*x2", "x2^2", "y^2"]).unwrap())
    }

    fn m2_ring() -> Arc<ArtinAlgebra<Gf2>> {
        Arc::new(ArtinAlgebra::build(&Gf2, &vars(&["x", "y"]), &["x^2", "x*y", "y^2"]).unwrap())
    }

    #[test]
    fn realize_cyclic_module() {
        let r = ex53_ring();
        let pres = ModulePresentation::parse(&r, 1, &[vec!["y".into()]]).unwrap();
        let m = Module::realize(&pres);
        assert_eq!(m.dim(), 3);
        assert!(m.satisfies_relations());
        let inv = m.invariants();
        assert_eq!(inv, ModuleInvariants { length: 3, mu: 1, type_: 2, mult: 3, is_min_mult: true, is_ulrich: false });
    }

    #[test]
    fn free_and_residue_field() {
        let r = ex53_ring();
        assert_eq!(Module::free(&r, 1).dim(), 6);
        let h = Arc::new(ArtinAlgebra::build(&Rationals, &vars(&["x"]), &["x^2"]).unwrap());
        let k = Module::realize(&ModulePresentation::parse(&h, 1, &[vec!["x".into()]]).unwrap());
        assert_eq!(k.dim(), 1);
        assert!(k.invariants().is_ulrich);
    }

    #[test]
    fn injective_hull_invariants() {
        let r = m2_ring();
        let e = Module::free(&r, 1).matlis_dual();
        let inv = e.invariants();
        assert_eq!((inv.length, inv.mu, inv.type_), (3, 2, 1));
        assert!(e.satisfies_relations());
        let k = Module::residue_field(&r).matlis_dual();
        assert_eq!(k.invariants().length, 1);
    }

    #[test]
    fn syzygies() {
        let r = m2_ring();
        let om = Module::residue_field(&r).syzygy().unwrap();
        assert_eq!((om.dim(), om.mu()), (2, 2));
        let r3 = ex53_ring();
        let m = Module::realize(&ModulePresentation::parse(&r3, 1, &[vec!["y".into()]]).unwrap());
        let om = m.syzygy().unwrap();
        assert_eq!((om.dim(), om.mu()), (3, 1));
        assert!(Module::free(&r3, 2).syzygy().unwrap().is_zero());
        assert_eq!(Module::zero(&r3).syzygy().unwrap_err(), Error::ZeroModule);
    }

    #[test]
    fn presentations() {
        let h = Arc::new(ArtinAlgebra::build(&Rationals, &vars(&["x"]), &["x^2"]).unwrap());
        let p = Module::residue_field(&h).minimal_presentation();
        assert_eq!((p.gens, p.format()), (1, vec![vec!["x".to_string()]]));
        let p = Module::free(&h, 1).minimal_presentation();
        assert_eq!((p.gens, p.relations()), (1, 0));
        let r = ex53_ring();
        let m = Module::realize(&ModulePresentation::parse(&r, 1, &[vec!["y".into()]]).unwrap());
        let p = m.minimal_presentation();
        assert_eq!(p.format(), vec![vec!["y".to_string()]]);
    }

    #[test]
    fn sums() {
        let r = m2_ring();
        let k = Module::residue_field(&r);
        let kk = k.direct_sum(&k).unwrap();
        let inv = kk.invariants();
        assert_eq!((inv.length, inv.mu, inv.type_), (2, 2, 2));
        let other = m2_ring();
        assert_eq!(k.direct_sum(&Module::residue_field(&other)).unwrap_err(), Error::RingMismatch);
        let z = k.direct_sum(&Module::zero(&r)).unwrap();
        assert_eq!(z.invariants(), k.invariants());
    }
}
