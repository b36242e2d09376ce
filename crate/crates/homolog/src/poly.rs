//! Polynomials under degree-lexicographic order, Buchberger's algorithm and
//! normal forms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;

pub const DEFAULT_DEGREE_CAP: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
    pub fn nvars(&self) -> usize {
        self.0.len()
    }
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
    /// other / self, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
    pub fn format(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self.0.iter().zip(vars).filter(|(e, _)| **e > 0).map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") }).collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Terms sorted by decreasing monomial, no zero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial<F: Field> {
    nvars: usize,
    terms: Vec<(F::Elem, Monomial)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn monomial(field: &F, c: F::Elem, m: Monomial) -> Self {
        let nvars = m.nvars();
        if field.is_zero(&c) {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(c, m)] }
    }

    pub fn from_terms(field: &F, nvars: usize, terms: impl IntoIterator<Item = (F::Elem, Monomial)>) -> Self {
        let mut acc: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (c, m) in terms {
            assert_eq!(m.nvars(), nvars);
            accumulate(field, &mut acc, m, c);
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, map: BTreeMap<Monomial, F::Elem>) -> Self {
        Polynomial { nvars, terms: map.into_iter().rev().map(|(m, c)| (c, m)).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn terms(&self) -> &[(F::Elem, Monomial)] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn leading(&self) -> Option<&(F::Elem, Monomial)> {
        self.terms.first()
    }
    pub fn constant_term(&self, field: &F) -> F::Elem {
        match self.terms.last() {
            Some((c, m)) if m.degree() == 0 => c.clone(),
            _ => field.zero(),
        }
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        self.combine(field, other, &field.one())
    }
    pub fn sub(&self, field: &F, other: &Self) -> Self {
        self.combine(field, other, &field.neg(&field.one()))
    }
    /// self + a·other
    pub fn combine(&self, field: &F, other: &Self, a: &F::Elem) -> Self {
        let mut acc: BTreeMap<Monomial, F::Elem> = self.terms.iter().map(|(c, m)| (m.clone(), c.clone())).collect();
        for (c, m) in &other.terms {
            accumulate(field, &mut acc, m.clone(), field.mul(a, c));
        }
        Self::from_map(self.nvars, acc)
    }
    pub fn scale(&self, field: &F, a: &F::Elem) -> Self {
        if field.is_zero(a) {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(c, m)| (field.mul(a, c), m.clone())).collect() }
    }
    pub fn mul_term(&self, field: &F, a: &F::Elem, mono: &Monomial) -> Self {
        if field.is_zero(a) {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(c, m)| (field.mul(a, c), m.mul(mono))).collect() }
    }
    pub fn mul(&self, field: &F, other: &Self) -> Self {
        let mut acc = BTreeMap::new();
        for (c, m) in &self.terms {
            for (d, n) in &other.terms {
                accumulate(field, &mut acc, m.mul(n), field.mul(c, d));
            }
        }
        Self::from_map(self.nvars, acc)
    }
    pub fn monic(&self, field: &F) -> Self {
        match self.leading() {
            Some((c, _)) => self.scale(field, &field.inv(c)),
            None => self.clone(),
        }
    }

    pub fn format(&self, field: &F, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (c, m)) in self.terms.iter().enumerate() {
            let cs = field.format(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if i > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            let mono = m.format(vars);
            match (mag.as_str(), mono.as_str()) {
                (_, "1") => s.push_str(&mag),
                ("1", _) => s.push_str(&mono),
                _ => s.push_str(&format!("{mag}*{mono}")),
            }
        }
        s
    }
}

fn accumulate<F: Field>(field: &F, acc: &mut BTreeMap<Monomial, F::Elem>, m: Monomial, c: F::Elem) {
    if field.is_zero(&c) {
        return;
    }
    match acc.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = field.add(e.get(), &c);
            if field.is_zero(&s) {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Parses `2*x*y - x^2 + 3` style input. Column numbers in errors are 1-based.
pub fn parse_polynomial<F: Field>(field: &F, vars: &[String], src: &str) -> Result<Polynomial<F>> {
    let nvars = vars.len();
    let chars: Vec<char> = src.chars().collect();
    let mut pos = 0;
    let err = |pos: usize, msg: &str| Error::parse(1, pos + 1, msg.to_string());
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let read_int = |pos: &mut usize| -> Option<BigInt> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (start < *pos).then(|| chars[start..*pos].iter().collect::<String>().parse().unwrap())
    };
    let mut terms = Vec::new();
    skip_ws(&mut pos);
    if pos == chars.len() {
        return Err(err(pos, "empty polynomial"));
    }
    let mut first = true;
    while pos < chars.len() {
        let mut negative = false;
        skip_ws(&mut pos);
        if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
            negative = chars[pos] == '-';
            pos += 1;
        } else if !first {
            return Err(err(pos, "expected `+` or `-`"));
        }
        first = false;
        let mut coef = BigInt::from(1);
        let mut mono = Monomial::one(nvars);
        let mut factors = 0;
        loop {
            skip_ws(&mut pos);
            if pos >= chars.len() {
                break;
            }
            let c = chars[pos];
            if c.is_ascii_digit() {
                coef *= read_int(&mut pos).unwrap();
            } else if c.is_alphabetic() || c == '_' {
                let start = pos;
                while pos < chars.len() && (chars[pos].is_alphanumeric() || chars[pos] == '_') {
                    pos += 1;
                }
                let name: String = chars[start..pos].iter().collect();
                let Some(i) = vars.iter().position(|v| *v == name) else {
                    return Err(err(start, &format!("unknown variable `{name}`")));
                };
                skip_ws(&mut pos);
                let mut e = 1u32;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let at = pos;
                    e = read_int(&mut pos).and_then(|v| u32::try_from(v).ok()).ok_or_else(|| err(at, "expected exponent"))?;
                }
                mono.0[i] += e;
            } else {
                return Err(err(pos, &format!("unexpected `{c}`")));
            }
            factors += 1;
            skip_ws(&mut pos);
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                continue;
            }
            // juxtaposition like `2x` is allowed
            if pos < chars.len() && (chars[pos].is_alphanumeric() || chars[pos] == '_') {
                continue;
            }
            break;
        }
        if factors == 0 {
            return Err(err(pos, "expected a term"));
        }
        if negative {
            coef = -coef;
        }
        terms.push((field.from_bigint(&coef), mono));
        skip_ws(&mut pos);
    }
    Ok(Polynomial::from_terms(field, nvars, terms))
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    nvars: usize,
    gens: Vec<Polynomial<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens.iter().map(|g| g.leading().unwrap().1.clone()).collect()
    }
}

/// Reduced deg-lex Gröbner basis of the ideal generated by `gens`.
pub fn buchberger<F: Field>(field: &F, nvars: usize, gens: &[Polynomial<F>]) -> Result<GroebnerBasis<F>> {
    buchberger_capped(field, nvars, gens, DEFAULT_DEGREE_CAP)
}

pub fn buchberger_capped<F: Field>(field: &F, nvars: usize, gens: &[Polynomial<F>], cap: u32) -> Result<GroebnerBasis<F>> {
    for g in gens {
        if !field.is_zero(&g.constant_term(field)) {
            return Err(Error::ConstantTerm(format!("{g:?}")));
        }
    }
    let mut basis: Vec<Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic(field)).collect();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (ci, mi) = basis[i].leading().unwrap().clone();
        let (cj, mj) = basis[j].leading().unwrap().clone();
        if mi.coprime(&mj) {
            continue;
        }
        let l = mi.lcm(&mj);
        let s = basis[i].mul_term(field, &field.inv(&ci), &mi.quotient(&l)).sub(field, &basis[j].mul_term(field, &field.inv(&cj), &mj.quotient(&l)));
        let r = reduce(field, &s, &basis);
        if let Some((_, m)) = r.leading() {
            if m.degree() > cap {
                return Err(Error::DegreeCap(cap));
            }
            basis.push(r.monic(field));
            let k = basis.len() - 1;
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // minimize
    let lms: Vec<Monomial> = basis.iter().map(|g| g.leading().unwrap().1.clone()).collect();
    let mut keep = Vec::new();
    for (i, m) in lms.iter().enumerate() {
        let redundant = lms.iter().enumerate().any(|(j, n)| j != i && n.divides(m) && (n != m || j < i));
        if !redundant {
            keep.push(basis[i].clone());
        }
    }
    // interreduce tails
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Polynomial<F>> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        out.push(reduce(field, &keep[i], &others));
    }
    out.sort_by(|a, b| b.leading().unwrap().1.cmp(&a.leading().unwrap().1));
    Ok(GroebnerBasis { nvars, gens: out })
}

/// Full reduction of `f` by `divisors`.
fn reduce<F: Field>(field: &F, f: &Polynomial<F>, divisors: &[Polynomial<F>]) -> Polynomial<F> {
    let mut p: BTreeMap<Monomial, F::Elem> = f.terms.iter().map(|(c, m)| (m.clone(), c.clone())).collect();
    let mut rem: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
    while let Some((m, c)) = p.pop_last() {
        match divisors.iter().find(|g| g.leading().unwrap().1.divides(&m)) {
            Some(g) => {
                let (lc, lm) = g.leading().unwrap();
                let q = lm.quotient(&m);
                let a = field.neg(&field.mul(&c, &field.inv(lc)));
                for (d, n) in &g.terms[1..] {
                    accumulate(field, &mut p, n.mul(&q), field.mul(&a, d));
                }
            }
            None => {
                rem.insert(m, c);
            }
        }
    }
    Polynomial::from_map(f.nvars, rem)
}

pub fn normal_form<F: Field>(field: &F, f: &Polynomial<F>, gb: &GroebnerBasis<F>) -> Polynomial<F> {
    reduce(field, f, &gb.gens)
}

/// Monomials outside the leading-term ideal: ascending degree, and
/// decreasing within a degree.
pub fn standard_monomials<F: Field>(gb: &GroebnerBasis<F>) -> Result<Vec<Monomial>> {
    let n = gb.nvars;
    let lms = gb.leading_monomials();
    for i in 0..n {
        let has_power = lms.iter().any(|m| m.0.iter().enumerate().all(|(j, &e)| (j == i) == (e > 0)));
        if !has_power {
            return Err(Error::NotMPrimary(format!("no leading monomial is a pure power of variable {}", i + 1)));
        }
    }
    let standard = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
    let mut out = Vec::new();
    let mut layer = vec![Monomial::one(n)];
    if !standard(&layer[0]) {
        return Ok(out);
    }
    while !layer.is_empty() {
        out.extend(layer.iter().cloned());
        let mut next: Vec<Monomial> = layer.iter().flat_map(|m| (0..n).map(move |i| m.mul(&Monomial::var(n, i)))).filter(|m| standard(m)).collect();
        next.sort_by(|a, b| b.cmp(a));
        next.dedup();
        layer = next;
    }
    Ok(out)
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars()).map(|i| format!("x{i}")).collect();
        f.write_str(&self.format(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Rationals};

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn polys<F: Field>(f: &F, v: &[String], src: &[&str]) -> Vec<Polynomial<F>> {
        src.iter().map(|s| parse_polynomial(f, v, s).unwrap()).collect()
    }

    #[test]
    fn parse_grammar() {
        let v = vars(&["x", "y"]);
        let p = parse_polynomial(&Rationals, &v, "x^2-y + 2*x*y - 3").unwrap();
        assert_eq!(p.format(&Rationals, &v), "x^2 + 2*x*y - y - 3");
        assert!(parse_polynomial(&Rationals, &v, "x + z").is_err());
        let e = parse_polynomial(&Rationals, &v, "x + z").unwrap_err();
        assert_eq!(e, Error::parse(1, 5, "unknown variable `z`"));
        let q = parse_polynomial(&Rationals, &v, "2x").unwrap();
        assert_eq!(q.format(&Rationals, &v), "2*x");
    }

    #[test]
    fn gb_of_square_of_max_ideal() {
        let v = vars(&["x", "y"]);
        let g = polys(&Gf2, &v, &["x^2", "x*y", "y^2"]);
        let gb = buchberger(&Gf2, 2, &g).unwrap();
        assert_eq!(gb.generators(), &g[..]);
        let std = standard_monomials(&gb).unwrap();
        let shown: Vec<String> = std.iter().map(|m| m.format(&v)).collect();
        assert_eq!(shown, ["1", "x", "y"]);
        let f = parse_polynomial(&Gf2, &v, "x^2 + x").unwrap();
        assert_eq!(normal_form(&Gf2, &f, &gb).format(&Gf2, &v), "x");
    }

    #[test]
    fn gb_x2_minus_y() {
        let v = vars(&["x", "y"]);
        let g = polys(&Rationals, &v, &["x^2-y", "y^2"]);
        let gb = buchberger(&Rationals, 2, &g).unwrap();
        assert_eq!(gb.generators(), &g[..]);
        let x3 = parse_polynomial(&Rationals, &v, "x^3").unwrap();
        assert_eq!(normal_form(&Rationals, &x3, &gb).format(&Rationals, &v), "x*y");
        let shown: Vec<String> = standard_monomials(&gb).unwrap().iter().map(|m| m.format(&v)).collect();
        assert_eq!(shown, ["1", "x", "y", "x*y"]);
    }

    #[test]
    fn example_ring_staircase() {
        let v = vars(&["x1", "x2", "y"]);
        let g = polys(&Gf2, &v, &["x1^2", "x1*x2", "x2^2", "y^2"]);
        let gb = buchberger(&Gf2, 3, &g).unwrap();
        let shown: Vec<String> = standard_monomials(&gb).unwrap().iter().map(|m| m.format(&v)).collect();
        assert_eq!(shown, ["1", "x1", "x2", "y", "x1*y", "x2*y"]);
    }

    #[test]
    fn errors() {
        let v = vars(&["x", "y"]);
        let g = polys(&Rationals, &v, &["x+1"]);
        assert!(matches!(buchberger(&Rationals, 2, &g), Err(Error::ConstantTerm(_))));
        let g = polys(&Rationals, &v, &["x"]);
        let gb = buchberger(&Rationals, 2, &g).unwrap();
        assert!(matches!(standard_monomials(&gb), Err(Error::NotMPrimary(_))));
        let one = vars(&["x"]);
        let g = polys(&Rationals, &one, &["x"]);
        let gb = buchberger(&Rationals, 1, &g).unwrap();
        assert_eq!(gb.generators(), &g[..]);
    }
}
