//! Artinian local algebras k[x₁..xₙ]/I with an explicit standard-monomial basis.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Result;
use crate::field::Field;
use crate::linalg::{kernel_basis, Echelon, Matrix};
use crate::poly::{buchberger, normal_form, parse_polynomial, standard_monomials, GroebnerBasis, Monomial, Polynomial};

/// Sparse coordinate vector: (basis index, coefficient).
pub type Sparse<F> = Vec<(usize, <F as Field>::Elem)>;

#[derive(Clone, Debug)]
pub struct ArtinAlgebra<F: Field> {
    field: F,
    vars: Vec<String>,
    ideal: Vec<Polynomial<F>>,
    gb: GroebnerBasis<F>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    // var_mult[i][j] = NF(x_i * b_j)
    var_mult: Vec<Vec<Sparse<F>>>,
    // b_j = x_v * b_j' for j > 0
    factor: Vec<Option<(usize, usize)>>,
    // mono_mult[j][l] = NF(b_j * b_l)
    mono_mult: Vec<Vec<Sparse<F>>>,
    loewy: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingInvariants {
    pub length: usize,
    pub embdim: usize,
    #[serde(rename = "type")]
    pub type_: usize,
    pub mult: usize,
    pub is_min_mult: bool,
}

impl<F: Field> ArtinAlgebra<F> {
    pub fn build(field: &F, vars: &[String], ideal: &[&str]) -> Result<Self> {
        let gens = ideal.iter().map(|s| parse_polynomial(field, vars, s)).collect::<Result<Vec<_>>>()?;
        Self::from_polynomials(field, vars, gens)
    }

    pub fn from_polynomials(field: &F, vars: &[String], ideal: Vec<Polynomial<F>>) -> Result<Self> {
        let n = vars.len();
        let gb = buchberger(field, n, &ideal)?;
        let basis = standard_monomials(&gb)?;
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let lambda = basis.len();
        let coords = |p: &Polynomial<F>| -> Sparse<F> {
            let mut v: Sparse<F> = p.terms().iter().map(|(c, m)| (index[m], c.clone())).collect();
            v.sort_by_key(|(i, _)| *i);
            v
        };
        let var_mult: Vec<Vec<Sparse<F>>> = (0..n)
            .map(|i| {
                basis
                    .iter()
                    .map(|b| {
                        let p = Polynomial::monomial(field, field.one(), b.mul(&Monomial::var(n, i)));
                        coords(&normal_form(field, &p, &gb))
                    })
                    .collect()
            })
            .collect();
        let factor: Vec<Option<(usize, usize)>> = basis
            .iter()
            .map(|b| {
                let v = b.0.iter().position(|&e| e > 0)?;
                let mut rest = b.clone();
                rest.0[v] -= 1;
                Some((v, index[&rest]))
            })
            .collect();
        let mut mono_mult: Vec<Vec<Sparse<F>>> = Vec::with_capacity(lambda);
        for j in 0..lambda {
            let row = match factor[j] {
                None => (0..lambda).map(|l| vec![(l, field.one())]).collect(),
                Some((v, jp)) => (0..lambda)
                    .map(|l| {
                        let mut acc = field.row_zeros(lambda);
                        for (k, c) in &mono_mult[jp][l] {
                            for (t, d) in &var_mult[v][*k] {
                                let cur = field.row_get(&acc, *t);
                                field.row_set(&mut acc, *t, field.add(&cur, &field.mul(c, d)));
                            }
                        }
                        field.row_nonzeros(&acc)
                    })
                    .collect(),
            };
            mono_mult.push(row);
        }
        let mut alg = ArtinAlgebra { field: field.clone(), vars: vars.to_vec(), ideal, gb, basis, index, var_mult, factor, mono_mult, loewy: 0 };
        alg.loewy = (0..).find(|&j| alg.m_power_basis(j).is_empty()).unwrap();
        Ok(alg)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn vars(&self) -> &[String] {
        &self.vars
    }
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
    pub fn ideal(&self) -> &[Polynomial<F>] {
        &self.ideal
    }
    pub fn groebner_basis(&self) -> &GroebnerBasis<F> {
        &self.gb
    }
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }
    /// λ(R)
    pub fn length(&self) -> usize {
        self.basis.len()
    }
    pub fn loewy(&self) -> usize {
        self.loewy
    }
    pub fn var_mult(&self, i: usize, j: usize) -> &Sparse<F> {
        &self.var_mult[i][j]
    }
    pub fn mono_mult(&self, j: usize, l: usize) -> &Sparse<F> {
        &self.mono_mult[j][l]
    }
    pub fn factor(&self, j: usize) -> Option<(usize, usize)> {
        self.factor[j]
    }
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn zero(&self) -> F::Row {
        self.field.row_zeros(self.length())
    }
    pub fn one(&self) -> F::Row {
        self.field.row_unit(self.length(), 0)
    }
    pub fn var(&self, i: usize) -> F::Row {
        self.reduce(&Polynomial::monomial(&self.field, self.field.one(), Monomial::var(self.nvars(), i)))
    }

    /// Coordinates of the normal form of `p`.
    pub fn reduce(&self, p: &Polynomial<F>) -> F::Row {
        let nf = normal_form(&self.field, p, &self.gb);
        let mut r = self.zero();
        for (c, m) in nf.terms() {
            self.field.row_set(&mut r, self.index[m], c.clone());
        }
        r
    }

    pub fn parse(&self, src: &str) -> Result<F::Row> {
        Ok(self.reduce(&parse_polynomial(&self.field, &self.vars, src)?))
    }

    pub fn to_polynomial(&self, a: &F::Row) -> Polynomial<F> {
        Polynomial::from_terms(&self.field, self.nvars(), self.field.row_nonzeros(a).into_iter().map(|(j, c)| (c, self.basis[j].clone())))
    }

    pub fn format(&self, a: &F::Row) -> String {
        self.to_polynomial(a).format(&self.field, &self.vars)
    }

    pub fn mul(&self, a: &F::Row, b: &F::Row) -> F::Row {
        let f = &self.field;
        let mut out = self.zero();
        let bn = f.row_nonzeros(b);
        for (j, c) in f.row_nonzeros(a) {
            for (l, d) in &bn {
                let cd = f.mul(&c, d);
                for (t, e) in &self.mono_mult[j][*l] {
                    let cur = f.row_get(&out, *t);
                    f.row_set(&mut out, *t, f.add(&cur, &f.mul(&cd, e)));
                }
            }
        }
        out
    }

    pub fn mul_var(&self, i: usize, a: &F::Row) -> F::Row {
        let f = &self.field;
        let mut out = self.zero();
        for (j, c) in f.row_nonzeros(a) {
            for (t, e) in &self.var_mult[i][j] {
                let cur = f.row_get(&out, *t);
                f.row_set(&mut out, *t, f.add(&cur, &f.mul(&c, e)));
            }
        }
        out
    }

    pub fn is_unit(&self, a: &F::Row) -> bool {
        !self.field.is_zero(&self.field.row_get(a, 0))
    }

    /// Matrix of multiplication by x_i; column j holds x_i·b_j.
    pub fn action_matrix(&self, i: usize) -> Matrix<F> {
        let cols: Vec<F::Row> = (0..self.length()).map(|j| self.mul_var(i, &self.field.row_unit(self.length(), j))).collect();
        Matrix::from_columns(&self.field, self.length(), &cols)
    }

    /// A basis of 𝔪^j.
    pub fn m_power_basis(&self, j: usize) -> Vec<F::Row> {
        let lambda = self.length();
        let mut current: Vec<F::Row> = (0..lambda).map(|t| self.field.row_unit(lambda, t)).collect();
        for _ in 0..j {
            let mut e = Echelon::new(&self.field, lambda);
            for v in &current {
                for i in 0..self.nvars() {
                    e.insert(self.mul_var(i, v));
                }
            }
            current = e.rows().to_vec();
            if current.is_empty() {
                break;
            }
        }
        current
    }

    pub fn socle_basis(&self) -> Vec<F::Row> {
        let lambda = self.length();
        let mut rows = Vec::new();
        for i in 0..self.nvars() {
            rows.extend(self.action_matrix(i).into_rows());
        }
        kernel_basis(&Matrix::from_rows(&self.field, lambda, rows)).into_rows()
    }

    pub fn invariants(&self) -> RingInvariants {
        let length = self.length();
        let m = self.m_power_basis(1).len();
        let m2 = self.m_power_basis(2).len();
        RingInvariants { length, embdim: m - m2, type_: self.socle_basis().len(), mult: length, is_min_mult: m2 == 0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, PrimeField, Rationals};

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn square_of_max_ideal() {
        let r = ArtinAlgebra::build(&Gf2, &vars(&["x", "y"]), &["x^2", "x*y", "y^2"]).unwrap();
        assert_eq!(r.length(), 3);
        assert_eq!(r.loewy(), 2);
        assert_eq!(r.m_power_basis(1).len(), 2);
        assert_eq!(r.m_power_basis(2).len(), 0);
        let inv = r.invariants();
        assert_eq!(inv, RingInvariants { length: 3, embdim: 2, type_: 2, mult: 3, is_min_mult: true });
    }

    #[test]
    fn hypersurface_and_ci() {
        let h = ArtinAlgebra::build(&Rationals, &vars(&["x"]), &["x^2"]).unwrap();
        assert_eq!((h.length(), h.loewy()), (2, 2));
        assert_eq!(h.invariants(), RingInvariants { length: 2, embdim: 1, type_: 1, mult: 2, is_min_mult: true });
        let c = ArtinAlgebra::build(&Rationals, &vars(&["x", "y"]), &["x^2", "y^2"]).unwrap();
        assert_eq!((c.length(), c.loewy()), (4, 3));
        let m2 = c.m_power_basis(2);
        assert_eq!(m2.len(), 1);
        assert_eq!(c.format(&m2[0]), "x*y");
        assert_eq!(c.invariants(), RingInvariants { length: 4, embdim: 2, type_: 1, mult: 4, is_min_mult: false });
    }

    #[test]
    fn multiplication_follows_relations() {
        let f = PrimeField::new(5).unwrap();
        let r = ArtinAlgebra::build(&f, &vars(&["x", "y"]), &["x^2-y", "y^2"]).unwrap();
        let x = r.var(0);
        let x3 = r.mul(&r.mul(&x, &x), &x);
        assert_eq!(r.format(&x3), "x*y");
        assert_eq!(r.loewy(), 4);
        assert_eq!(r.invariants().embdim, 1);
    }
}
