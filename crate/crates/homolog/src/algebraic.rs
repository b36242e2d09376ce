//! Real algebraic numbers isolated by Sturm sequences.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial over ℚ, coefficients ascending, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly(pub Vec<BigRational>);

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly(c)
    }
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| q(v)).collect())
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    /// Degree of the zero polynomial is reported as 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }
    pub fn leading(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }
    pub fn derivative(&self) -> QPoly {
        QPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
    }
    pub fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|c| -c).collect())
    }
    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        QPoly(self.0.iter().map(|c| c / &l).collect())
    }
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dd = d.degree();
        let lead = d.leading();
        if r.len() < d.0.len() {
            return (QPoly(vec![]), self.clone());
        }
        let mut quo = vec![BigRational::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (i, di) in d.0.iter().enumerate() {
                    r[k + i] -= &c * di;
                }
            }
            quo[k] = c;
        }
        (QPoly::new(quo), QPoly::new(r))
    }
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
    pub fn squarefree(&self) -> QPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }
    /// Multiplicity of `x` as a root.
    pub fn multiplicity(&self, x: &BigRational) -> usize {
        let lin = QPoly::new(vec![-x.clone(), BigRational::one()]);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() && p.eval(x).is_zero() {
            p = p.div_rem(&lin).0;
            k += 1;
        }
        k
    }
    /// Primitive integer polynomial with the same roots.
    pub fn primitive(&self) -> Vec<BigInt> {
        let l = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return ints;
        }
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.iter().map(|c| c / &g * &sign).collect()
    }
    /// Roots lie in (−B, B).
    pub fn cauchy_bound(&self) -> BigRational {
        let l = self.leading().abs();
        let m = self.0[..self.degree()].iter().map(|c| c.abs() / &l).fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        m + q(1)
    }

    pub fn sturm(&self) -> Vec<QPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1.neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        seq.retain(|p| !p.is_zero());
        seq
    }

    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let coef = if mag.is_integer() { mag.numer().to_string() } else { format!("({}/{})", mag.numer(), mag.denom()) };
            match (i, coef.as_str()) {
                (0, _) => s.push_str(&coef),
                (1, "1") => s.push_str(var),
                (1, _) => s.push_str(&format!("{coef}*{var}")),
                (_, "1") => s.push_str(&format!("{var}^{i}")),
                _ => s.push_str(&format!("{coef}*{var}^{i}")),
            }
        }
        s
    }
}

fn sign_changes(seq: &[QPoly], x: &BigRational) -> usize {
    let signs: Vec<i32> = seq.iter().map(|p| p.sign_at(x)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct roots in (a, b].
fn count_roots(seq: &[QPoly], a: &BigRational, b: &BigRational) -> usize {
    sign_changes(seq, a) - sign_changes(seq, b)
}

/// A real algebraic number. Irrational values carry a squarefree primitive
/// integer polynomial and an interval (lo, hi) holding exactly one of its
/// roots, with neither endpoint a root.
#[derive(Clone, Debug)]
pub enum RealAlgebraic {
    Rational(BigRational),
    Root { poly: Vec<BigInt>, lo: BigRational, hi: BigRational },
}

impl RealAlgebraic {
    pub fn from_int(n: i64) -> Self {
        RealAlgebraic::Rational(q(n))
    }
    pub fn from_ratio(a: i64, b: i64) -> Self {
        RealAlgebraic::Rational(BigRational::new(a.into(), b.into()))
    }

    fn qpoly(poly: &[BigInt]) -> QPoly {
        QPoly::new(poly.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Largest real root of `p`, or `None` when `p` has no real root.
    pub fn largest_root(p: &QPoly) -> Option<Self> {
        if p.degree() == 0 {
            return None;
        }
        let sf = p.squarefree();
        let seq = sf.sturm();
        let bound = sf.cauchy_bound();
        let (mut lo, mut hi) = (-bound.clone(), bound);
        if count_roots(&seq, &lo, &hi) == 0 {
            return None;
        }
        // keep the largest root inside (lo, hi]
        while count_roots(&seq, &lo, &hi) > 1 {
            let mid = (&lo + &hi) / q(2);
            if count_roots(&seq, &mid, &hi) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(Self::pin(&sf, &seq, lo, hi))
    }

    /// Decides rationality of the unique root of `sf` in (lo, hi].
    fn pin(sf: &QPoly, seq: &[QPoly], mut lo: BigRational, mut hi: BigRational) -> Self {
        if sf.eval(&hi).is_zero() {
            return RealAlgebraic::Rational(hi);
        }
        let ints = sf.primitive();
        let lead = BigRational::from_integer(ints.last().unwrap().abs());
        // a rational root has denominator dividing the leading coefficient
        let width = BigRational::one() / (&lead * q(2));
        while &hi - &lo >= width {
            let mid = (&lo + &hi) / q(2);
            if sf.eval(&mid).is_zero() {
                return RealAlgebraic::Rational(mid);
            }
            if count_roots(seq, &mid, &hi) == 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let cand = BigRational::from_integer((&hi * &lead).floor().to_integer()) / &lead;
        if cand > lo && sf.eval(&cand).is_zero() {
            return RealAlgebraic::Rational(cand);
        }
        // no rational root of sf lies strictly inside now, so bisection midpoints never vanish
        RealAlgebraic::Root { poly: ints, lo, hi }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RealAlgebraic::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            RealAlgebraic::Rational(r) => Some(r),
            _ => None,
        }
    }

    fn bisect(&mut self) {
        if let RealAlgebraic::Root { poly, lo, hi } = self {
            let p = Self::qpoly(poly);
            let mid = (&*lo + &*hi) / q(2);
            let s_mid = p.sign_at(&mid);
            let s_hi = p.sign_at(hi);
            debug_assert!(s_mid != 0, "irrational root hit a rational midpoint");
            if s_mid == s_hi {
                *hi = mid;
            } else {
                *lo = mid;
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealAlgebraic::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            RealAlgebraic::Root { .. } => {
                let mut x = self.clone();
                for _ in 0..64 {
                    x.bisect();
                }
                let RealAlgebraic::Root { lo, hi, .. } = &x else { unreachable!() };
                ((lo + hi) / q(2)).to_f64().unwrap_or(f64::NAN)
            }
        }
    }

    fn interval(&self) -> (BigRational, BigRational) {
        match self {
            RealAlgebraic::Rational(r) => (r.clone(), r.clone()),
            RealAlgebraic::Root { lo, hi, .. } => (lo.clone(), hi.clone()),
        }
    }

    pub fn cmp_exact(&self, other: &RealAlgebraic) -> Ordering {
        use RealAlgebraic::*;
        match (self, other) {
            (Rational(a), Rational(b)) => a.cmp(b),
            (Root { .. }, Rational(_)) => other.cmp_exact(self).reverse(),
            (Rational(r), Root { .. }) => {
                let mut x = other.clone();
                loop {
                    let (lo, hi) = x.interval();
                    if *r <= lo {
                        return Ordering::Less;
                    }
                    if *r >= hi {
                        return Ordering::Greater;
                    }
                    x.bisect();
                }
            }
            (Root { poly: p, .. }, Root { poly: qq, .. }) => {
                let g = Self::qpoly(p).gcd(&Self::qpoly(qq));
                let (alo, ahi) = self.interval();
                let (blo, bhi) = other.interval();
                let lo = if alo > blo { alo } else { blo };
                let hi = if ahi < bhi { ahi } else { bhi };
                if g.degree() >= 1 && lo < hi && count_roots(&g.sturm(), &lo, &hi) == 1 {
                    return Ordering::Equal;
                }
                let (mut x, mut y) = (self.clone(), other.clone());
                loop {
                    let (xl, xh) = x.interval();
                    let (yl, yh) = y.interval();
                    if xh <= yl {
                        return Ordering::Less;
                    }
                    if yh <= xl {
                        return Ordering::Greater;
                    }
                    x.bisect();
                    y.bisect();
                }
            }
        }
    }

    pub fn max(self, other: RealAlgebraic) -> RealAlgebraic {
        if self.cmp_exact(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

impl PartialEq for RealAlgebraic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealAlgebraic::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            RealAlgebraic::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            RealAlgebraic::Root { poly, .. } => {
                write!(f, "{:.10} (root of {})", self.to_f64(), Self::qpoly(poly).format("t"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roots_are_detected() {
        // (t − 2)(t − 1)
        let p = QPoly::from_ints(&[2, -3, 1]);
        let r = RealAlgebraic::largest_root(&p).unwrap();
        assert!(r.is_rational());
        assert_eq!(r, RealAlgebraic::from_int(2));
        // 4t − 3
        let p = QPoly::from_ints(&[-3, 4]);
        assert_eq!(RealAlgebraic::largest_root(&p).unwrap(), RealAlgebraic::from_ratio(3, 4));
        // (t − 1)^3 keeps root 1
        let p = QPoly::from_ints(&[-1, 3, -3, 1]);
        assert_eq!(RealAlgebraic::largest_root(&p).unwrap(), RealAlgebraic::from_int(1));
        assert_eq!(p.multiplicity(&q(1)), 3);
    }

    #[test]
    fn golden_square_is_irrational() {
        let p = QPoly::from_ints(&[1, -3, 1]);
        let r = RealAlgebraic::largest_root(&p).unwrap();
        assert!(!r.is_rational());
        assert!((r.to_f64() - 2.618033988749895).abs() < 1e-12);
        assert_eq!(r.cmp_exact(&RealAlgebraic::from_int(2)), Ordering::Greater);
        assert_eq!(r.cmp_exact(&RealAlgebraic::from_int(3)), Ordering::Less);
        // same number through a different polynomial: (t^2 − 3t + 1)(t + 5)
        let p2 = QPoly::from_ints(&[5, -14, 2, 1]);
        let r2 = RealAlgebraic::largest_root(&p2).unwrap();
        assert_eq!(r.cmp_exact(&r2), Ordering::Equal);
        let s = RealAlgebraic::largest_root(&QPoly::from_ints(&[-7, 0, 1])).unwrap();
        assert_eq!(r.cmp_exact(&s), Ordering::Less);
    }

    #[test]
    fn no_real_roots() {
        assert!(RealAlgebraic::largest_root(&QPoly::from_ints(&[1, 0, 1])).is_none());
    }
}
