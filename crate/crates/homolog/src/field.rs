//! Coefficient fields and their row storage.
//!
//! Every field carries its own row type so that GF(2) rows can be packed
//! into machine words while GF(p) and ℚ rows stay plain vectors.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;
    type Row: Clone + fmt::Debug + PartialEq + Send + Sync;

    /// 0 for ℚ.
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;

    /// Elements stored per 64-bit word of a row.
    fn elems_per_word(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(v))
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn row_zeros(&self, len: usize) -> Self::Row;
    fn row_len(&self, r: &Self::Row) -> usize;
    fn row_get(&self, r: &Self::Row, i: usize) -> Self::Elem;
    fn row_set(&self, r: &mut Self::Row, i: usize, v: Self::Elem);
    fn row_is_zero(&self, r: &Self::Row) -> bool;
    /// First nonzero position at or after `from`.
    fn row_first_nonzero(&self, r: &Self::Row, from: usize) -> Option<usize>;
    /// y += a·x
    fn row_axpy(&self, y: &mut Self::Row, a: &Self::Elem, x: &Self::Row) {
        self.row_axpy_from(y, a, x, 0)
    }
    /// y += a·x, where x is known to vanish before column `start`.
    fn row_axpy_from(&self, y: &mut Self::Row, a: &Self::Elem, x: &Self::Row, start: usize);
    fn row_scale(&self, r: &mut Self::Row, a: &Self::Elem);
    fn row_nonzeros(&self, r: &Self::Row) -> Vec<(usize, Self::Elem)>;
    /// Appends `tail` after `head`.
    fn row_concat(&self, head: &Self::Row, tail: &Self::Row) -> Self::Row {
        let (a, b) = (self.row_len(head), self.row_len(tail));
        let mut out = self.row_zeros(a + b);
        for (i, v) in self.row_nonzeros(head) {
            self.row_set(&mut out, i, v);
        }
        for (i, v) in self.row_nonzeros(tail) {
            self.row_set(&mut out, a + i, v);
        }
        out
    }
    /// Entries `start..start+len`.
    fn row_slice(&self, r: &Self::Row, start: usize, len: usize) -> Self::Row {
        let mut out = self.row_zeros(len);
        for i in 0..len {
            let v = self.row_get(r, start + i);
            if !self.is_zero(&v) {
                self.row_set(&mut out, i, v);
            }
        }
        out
    }

    fn row_from_elems(&self, v: &[Self::Elem]) -> Self::Row {
        let mut r = self.row_zeros(v.len());
        for (i, a) in v.iter().enumerate() {
            if !self.is_zero(a) {
                self.row_set(&mut r, i, a.clone());
            }
        }
        r
    }
    fn row_to_elems(&self, r: &Self::Row) -> Vec<Self::Elem> {
        (0..self.row_len(r)).map(|i| self.row_get(r, i)).collect()
    }
    fn row_unit(&self, len: usize, i: usize) -> Self::Row {
        let mut r = self.row_zeros(len);
        self.row_set(&mut r, i, self.one());
        r
    }
    fn row_dot(&self, a: &Self::Row, b: &Self::Row) -> Self::Elem {
        let mut acc = self.zero();
        for (i, v) in self.row_nonzeros(a) {
            let w = self.row_get(b, i);
            if !self.is_zero(&w) {
                acc = self.add(&acc, &self.mul(&v, &w));
            }
        }
        acc
    }
}

/// GF(2) with rows packed 64 entries per word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Gf2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl Field for Gf2 {
    type Elem = bool;
    type Row = BitRow;

    fn characteristic(&self) -> u64 {
        2
    }
    fn elems_per_word(&self) -> u64 {
        64
    }
    fn zero(&self) -> bool {
        false
    }
    fn one(&self) -> bool {
        true
    }
    fn from_bigint(&self, v: &BigInt) -> bool {
        v.is_odd()
    }
    fn is_zero(&self, a: &bool) -> bool {
        !*a
    }
    fn add(&self, a: &bool, b: &bool) -> bool {
        a ^ b
    }
    fn sub(&self, a: &bool, b: &bool) -> bool {
        a ^ b
    }
    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }
    fn neg(&self, a: &bool) -> bool {
        *a
    }
    fn inv(&self, a: &bool) -> bool {
        assert!(*a, "inverse of zero");
        true
    }
    fn format(&self, a: &bool) -> String {
        if *a { "1" } else { "0" }.to_string()
    }

    fn row_zeros(&self, len: usize) -> BitRow {
        BitRow { len, words: vec![0; len.div_ceil(64)] }
    }
    fn row_len(&self, r: &BitRow) -> usize {
        r.len
    }
    #[inline]
    fn row_get(&self, r: &BitRow, i: usize) -> bool {
        (r.words[i >> 6] >> (i & 63)) & 1 == 1
    }
    #[inline]
    fn row_set(&self, r: &mut BitRow, i: usize, v: bool) {
        let mask = 1u64 << (i & 63);
        if v {
            r.words[i >> 6] |= mask;
        } else {
            r.words[i >> 6] &= !mask;
        }
    }
    fn row_is_zero(&self, r: &BitRow) -> bool {
        r.words.iter().all(|&w| w == 0)
    }
    fn row_first_nonzero(&self, r: &BitRow, from: usize) -> Option<usize> {
        if from >= r.len {
            return None;
        }
        let mut w = from >> 6;
        let mut word = r.words[w] & (!0u64 << (from & 63));
        loop {
            if word != 0 {
                let i = (w << 6) + word.trailing_zeros() as usize;
                return (i < r.len).then_some(i);
            }
            w += 1;
            if w >= r.words.len() {
                return None;
            }
            word = r.words[w];
        }
    }
    #[inline]
    fn row_axpy_from(&self, y: &mut BitRow, a: &bool, x: &BitRow, start: usize) {
        if !*a {
            return;
        }
        let s = start >> 6;
        for (u, v) in y.words[s..].iter_mut().zip(&x.words[s..]) {
            *u ^= *v;
        }
    }
    fn row_scale(&self, r: &mut BitRow, a: &bool) {
        if !*a {
            r.words.iter_mut().for_each(|w| *w = 0);
        }
    }
    fn row_nonzeros(&self, r: &BitRow) -> Vec<(usize, bool)> {
        let mut out = Vec::new();
        for (w, &word) in r.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                out.push(((w << 6) + bits.trailing_zeros() as usize, true));
                bits &= bits - 1;
            }
        }
        out
    }
    fn row_dot(&self, a: &BitRow, b: &BitRow) -> bool {
        a.words.iter().zip(&b.words).fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones()) & 1 == 1
    }
}

/// GF(p) for an odd prime p < 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Returns `None` unless `p` is a prime below 2^31.
    pub fn new(p: u64) -> Option<Self> {
        if p < 2 || p >= 1 << 31 || !is_prime(p) {
            return None;
        }
        Some(PrimeField { p: p as u32 })
    }
    pub fn modulus(&self) -> u32 {
        self.p
    }
    #[inline]
    fn mulmod(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;
    type Row = Vec<u32>;

    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_bigint(&self, v: &BigInt) -> u32 {
        v.mod_floor(&BigInt::from(self.p)).to_u32().unwrap()
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + (self.p - *b) as u64;
        (s % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mulmod(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        let (mut t, mut newt) = (0i64, 1i64);
        let (mut r, mut newr) = (self.p as i64, *a as i64);
        while newr != 0 {
            let q = r / newr;
            (t, newt) = (newt, t - q * newt);
            (r, newr) = (newr, r - q * newr);
        }
        t.rem_euclid(self.p as i64) as u32
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }

    fn row_zeros(&self, len: usize) -> Vec<u32> {
        vec![0; len]
    }
    fn row_len(&self, r: &Vec<u32>) -> usize {
        r.len()
    }
    fn row_get(&self, r: &Vec<u32>, i: usize) -> u32 {
        r[i]
    }
    fn row_set(&self, r: &mut Vec<u32>, i: usize, v: u32) {
        r[i] = v;
    }
    fn row_is_zero(&self, r: &Vec<u32>) -> bool {
        r.iter().all(|&v| v == 0)
    }
    fn row_first_nonzero(&self, r: &Vec<u32>, from: usize) -> Option<usize> {
        r.iter().skip(from).position(|&v| v != 0).map(|i| i + from)
    }
    fn row_axpy_from(&self, y: &mut Vec<u32>, a: &u32, x: &Vec<u32>, start: usize) {
        if *a == 0 {
            return;
        }
        let (a, p) = (*a as u64, self.p as u64);
        for (u, &v) in y[start..].iter_mut().zip(&x[start..]) {
            if v != 0 {
                *u = ((*u as u64 + a * v as u64) % p) as u32;
            }
        }
    }
    fn row_scale(&self, r: &mut Vec<u32>, a: &u32) {
        for v in r.iter_mut() {
            *v = self.mulmod(*v, *a);
        }
    }
    fn row_nonzeros(&self, r: &Vec<u32>) -> Vec<(usize, u32)> {
        r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, v)).collect()
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;
    type Row = Vec<BigRational>;

    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else if a.is_negative() {
            format!("-{}/{}", a.numer().abs(), a.denom())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn row_zeros(&self, len: usize) -> Vec<BigRational> {
        vec![BigRational::zero(); len]
    }
    fn row_len(&self, r: &Vec<BigRational>) -> usize {
        r.len()
    }
    fn row_get(&self, r: &Vec<BigRational>, i: usize) -> BigRational {
        r[i].clone()
    }
    fn row_set(&self, r: &mut Vec<BigRational>, i: usize, v: BigRational) {
        r[i] = v;
    }
    fn row_is_zero(&self, r: &Vec<BigRational>) -> bool {
        r.iter().all(|v| v.is_zero())
    }
    fn row_first_nonzero(&self, r: &Vec<BigRational>, from: usize) -> Option<usize> {
        r.iter().skip(from).position(|v| !v.is_zero()).map(|i| i + from)
    }
    fn row_axpy_from(&self, y: &mut Vec<BigRational>, a: &BigRational, x: &Vec<BigRational>, start: usize) {
        if a.is_zero() {
            return;
        }
        for (u, v) in y[start..].iter_mut().zip(&x[start..]) {
            if !v.is_zero() {
                *u += a * v;
            }
        }
    }
    fn row_scale(&self, r: &mut Vec<BigRational>, a: &BigRational) {
        for v in r.iter_mut() {
            if !v.is_zero() {
                *v *= a;
            }
        }
    }
    fn row_nonzeros(&self, r: &Vec<BigRational>) -> Vec<(usize, BigRational)> {
        r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_inverse() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101u32 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert!(PrimeField::new(91).is_none());
        assert!(PrimeField::new(1 << 31).is_none());
    }

    #[test]
    fn bitrow_scan() {
        let f = Gf2;
        let mut r = f.row_zeros(200);
        f.row_set(&mut r, 3, true);
        f.row_set(&mut r, 130, true);
        assert_eq!(f.row_first_nonzero(&r, 0), Some(3));
        assert_eq!(f.row_first_nonzero(&r, 4), Some(130));
        assert_eq!(f.row_first_nonzero(&r, 131), None);
        assert_eq!(f.row_nonzeros(&r).len(), 2);
        let s = f.row_slice(&r, 128, 10);
        assert_eq!(f.row_nonzeros(&s), vec![(2, true)]);
    }

    #[test]
    fn negative_integers_reduce() {
        assert_eq!(PrimeField::new(7).unwrap().from_i64(-1), 6);
        assert!(Gf2.from_i64(-3));
        assert_eq!(Rationals.from_i64(-2), BigRational::from_integer((-2).into()));
    }
}
