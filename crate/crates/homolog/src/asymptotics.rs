//! Complexity and curvature of non-negative integer sequences.
//!
//! A report is exact only when a linear recurrence fits every entry of the
//! prefix; otherwise the curvature is an estimate and the complexity at best
//! a lower bound.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebraic::{QPoly, RealAlgebraic};
use crate::field::Rationals;
use crate::linalg::{solve, Matrix};
use crate::{Error, Result};

/// A sequence with a label saying where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSequence {
    pub values: Vec<u64>,
    pub label: String,
}

impl InvariantSequence {
    pub fn new(label: impl Into<String>, values: Vec<u64>) -> Self {
        InvariantSequence { values, label: label.into() }
    }
    pub fn analyze(&self) -> Result<AsymptoticsReport> {
        analyze(&self.values)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cx {
    Exact(u32),
    AtLeast(u32),
    Infinite,
    Inconclusive,
}

impl Cx {
    pub fn is_exact(&self) -> bool {
        matches!(self, Cx::Exact(_) | Cx::Infinite)
    }
    /// Order on exact values, `None` if either side is not exact.
    pub fn cmp_exact(&self, other: &Cx) -> Option<Ordering> {
        let key = |c: &Cx| match c {
            Cx::Exact(b) => Some(*b as u64),
            Cx::Infinite => Some(u64::MAX),
            _ => None,
        };
        Some(key(self)?.cmp(&key(other)?))
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cx::Exact(b) => write!(f, "{b}"),
            Cx::AtLeast(b) => write!(f, ">= {b}"),
            Cx::Infinite => write!(f, "inf"),
            Cx::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Curv {
    Exact(RealAlgebraic),
    /// max of a_n^(1/n) over the trailing `window` indices
    Estimate {
        value: f64,
        window: usize,
    },
}

impl Curv {
    pub fn exact(&self) -> Option<&RealAlgebraic> {
        match self {
            Curv::Exact(r) => Some(r),
            _ => None,
        }
    }
    pub fn to_f64(&self) -> f64 {
        match self {
            Curv::Exact(r) => r.to_f64(),
            Curv::Estimate { value, .. } => *value,
        }
    }
}

impl fmt::Display for Curv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curv::Exact(r) => write!(f, "{r}"),
            Curv::Estimate { value, window } => write!(f, "~{value:.6} (estimate, window {window})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AsymptoticsReport {
    pub cx: Cx,
    pub curv: Curv,
    /// c_1..c_d with a_{n+d} = c_1 a_{n+d-1} + … + c_d a_n.
    pub recurrence: Option<Vec<BigRational>>,
    pub diagnostics: String,
}

impl AsymptoticsReport {
    pub fn is_exact(&self) -> bool {
        self.cx.is_exact() && matches!(self.curv, Curv::Exact(_))
    }
}

fn rat(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Longest initial stretch a recurrence may skip.
const MAX_TRANSIENT: usize = 3;

/// Order-d recurrence on s[t..], or None; d must leave more equations than unknowns.
fn recurrence_on(s: &[u64], d: usize) -> Option<Vec<BigRational>> {
    let f = Rationals;
    let rows: Vec<Vec<BigRational>> = (0..s.len() - d).map(|n| (1..=d).map(|j| rat(s[n + d - j])).collect()).collect();
    let a = Matrix::from_elems(&f, d, &rows);
    if a.rank() < d {
        return None;
    }
    let b: Vec<BigRational> = (0..s.len() - d).map(|n| rat(s[n + d])).collect();
    solve(&a, &b)
}

/// Shortest recurrence with rational coefficients reproducing every entry.
/// Order 0 means the sequence is zero.
///
/// A recurrence of order d that starts at index t ≤ 3 is returned padded
/// with t zero coefficients, so it holds from the start; each candidate
/// must satisfy more equations than it has unknowns, and d + t is minimized.
pub fn detect_recurrence(s: &[u64]) -> Option<Vec<BigRational>> {
    if s.len() < 6 {
        return None;
    }
    if s.iter().all(|&v| v == 0) {
        return Some(vec![]);
    }
    for total in 1..s.len() / 2 + MAX_TRANSIENT {
        for t in 0..=MAX_TRANSIENT.min(total - 1) {
            let d = total - t;
            let tail = &s[t..];
            if tail.len() < 6 || d >= tail.len() / 2 {
                continue;
            }
            if let Some(mut c) = recurrence_on(tail, d) {
                c.extend(std::iter::repeat_n(BigRational::zero(), t));
                return Some(c);
            }
        }
    }
    None
}

/// χ(t) = t^d − c_1 t^{d−1} − … − c_d.
pub fn characteristic_polynomial(c: &[BigRational]) -> QPoly {
    let d = c.len();
    let mut coeffs = vec![BigRational::zero(); d + 1];
    coeffs[d] = BigRational::one();
    for (j, cj) in c.iter().enumerate() {
        coeffs[d - 1 - j] = -cj.clone();
    }
    QPoly::new(coeffs)
}

/// Largest root modulus, by simultaneous Weierstrass iteration.
fn max_root_modulus(p: &QPoly) -> f64 {
    let deg = p.degree();
    if deg == 0 {
        return 0.0;
    }
    let lead = p.leading().to_f64().unwrap();
    let coeffs: Vec<f64> = p.0.iter().map(|c| c.to_f64().unwrap() / lead).collect();
    let eval = |z: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn trailing_zeros(s: &[u64]) -> usize {
    s.iter().rev().take_while(|&&v| v == 0).count()
}

/// Exact or estimated cx and curv for a prefix of at least 4 entries.
pub fn analyze(s: &[u64]) -> Result<AsymptoticsReport> {
    if s.len() < 4 {
        return Err(Error::TooShort(s.len()));
    }
    let window = s.len().div_ceil(3);
    let zeros = trailing_zeros(s);
    if zeros >= window.max(2) {
        return Ok(AsymptoticsReport {
            cx: Cx::Exact(0),
            curv: Curv::Exact(RealAlgebraic::from_int(0)),
            recurrence: detect_recurrence(s),
            diagnostics: format!("tail of {zeros} zeros"),
        });
    }
    let mut notes = Vec::new();
    if let Some(c) = detect_recurrence(s) {
        match exact_from_recurrence(&c) {
            Ok((cx, rho)) => {
                let diag = format!("recurrence of order {} verified on {} entries", c.len(), s.len());
                return Ok(AsymptoticsReport { cx, curv: Curv::Exact(rho), recurrence: Some(c), diagnostics: diag });
            }
            Err(why) => notes.push(format!("recurrence of order {} rejected: {why}", c.len())),
        }
    } else if s.len() >= 6 {
        notes.push(format!("no recurrence of order <= {} (transient <= {MAX_TRANSIENT})", s.len() / 2 - 1));
    } else {
        notes.push("too short for recurrence detection".into());
    }
    let start = s.len() - window;
    let value = (start..s.len()).filter(|&n| n > 0).map(|n| (s[n] as f64).powf(1.0 / n as f64)).fold(0.0, f64::max);
    let cx = growth_lower_bound(s, window);
    notes.push("estimator".into());
    Ok(AsymptoticsReport { cx, curv: Curv::Estimate { value, window }, recurrence: None, diagnostics: notes.join("; ") })
}

fn exact_from_recurrence(c: &[BigRational]) -> std::result::Result<(Cx, RealAlgebraic), String> {
    let mut chi = characteristic_polynomial(c);
    // roots at 0 only shift the start of the sequence
    while chi.degree() > 0 && chi.0[0].is_zero() {
        chi = QPoly::new(chi.0[1..].to_vec());
    }
    if chi.degree() == 0 {
        return Ok((Cx::Exact(0), RealAlgebraic::from_int(0)));
    }
    let rho = RealAlgebraic::largest_root(&chi).ok_or("no real characteristic root")?;
    let rho_f = rho.to_f64();
    // repeated roots stall the iteration; multiplicities are read off chi
    let modulus = max_root_modulus(&chi.squarefree());
    if modulus > rho_f * (1.0 + 1e-9) + 1e-12 {
        return Err(format!("complex root of modulus {modulus:.6} exceeds real root {rho_f:.6}"));
    }
    match rho.cmp_exact(&RealAlgebraic::from_int(1)) {
        Ordering::Greater => Ok((Cx::Infinite, rho)),
        Ordering::Equal => Ok((Cx::Exact(chi.multiplicity(&BigRational::one()) as u32), rho)),
        Ordering::Less => Err(format!("dominant root {rho} < 1 cannot sustain a nonzero integer tail")),
    }
}

/// Largest b such that the (b−1)-th difference stays positive over the window.
fn growth_lower_bound(s: &[u64], window: usize) -> Cx {
    let mut diff: Vec<i128> = s.iter().map(|&v| v as i128).collect();
    let mut b = 0;
    while diff.len() >= window && diff[diff.len() - window..].iter().all(|&v| v > 0) {
        b += 1;
        diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
    }
    if b == 0 {
        Cx::Inconclusive
    } else {
        Cx::AtLeast(b)
    }
}

/// Outcome of a sequence-lemma check on finite prefixes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaVerdict {
    Holds,
    /// The conclusion failed at the level of exact reports.
    Violated(String),
    /// The hypothesis fails at this index.
    HypothesisFails(usize),
    Inconclusive(String),
}

impl LemmaVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, LemmaVerdict::Holds)
    }
    pub fn counterexample(&self) -> Option<usize> {
        match self {
            LemmaVerdict::HypothesisFails(i) => Some(*i),
            _ => None,
        }
    }
}

/// The sequence-calculus lemmas with their inputs. Constants are integers.
#[derive(Clone, Debug)]
pub enum SequenceLemma {
    /// a_n ≤ w(b_n + b_{n−1}) ⇒ cx a ≤ cx b and curv a ≤ curv b.
    Domination { a: Vec<u64>, b: Vec<u64>, w: u64 },
    /// c x_{n+1} ≤ b x_n + a y_n with a, c > 0 ⇒ curv x ≤ sup{b/c, curv y}.
    Recursion { x: Vec<u64>, y: Vec<u64>, a: u64, b: u64, c: u64 },
    /// curv(a x_{n+1} + b x_n) = curv x for a, b > 0.
    ShiftSum { x: Vec<u64>, a: u64, b: u64 },
    /// cx and curv of x + y are at most the sup of those of x and y.
    Sum { x: Vec<u64>, y: Vec<u64> },
    /// a_n = Σ_i b_{n+i} c_i with c ≠ 0 ⇒ cx b ≤ cx a and curv b ≤ curv a.
    Laurent { a: Vec<u64>, b: Vec<u64>, c: Vec<u64> },
}

impl SequenceLemma {
    pub fn id(&self) -> &'static str {
        match self {
            SequenceLemma::Domination { .. } => "domination",
            SequenceLemma::Recursion { .. } => "recursion",
            SequenceLemma::ShiftSum { .. } => "shift-sum",
            SequenceLemma::Sum { .. } => "sum",
            SequenceLemma::Laurent { .. } => "laurent",
        }
    }
}

fn exact_report(s: &[u64], name: &str) -> std::result::Result<(Cx, RealAlgebraic), LemmaVerdict> {
    let r = analyze(s).map_err(|e| LemmaVerdict::Inconclusive(format!("{name}: {e}")))?;
    match (r.cx.is_exact(), r.curv) {
        (true, Curv::Exact(rho)) => Ok((r.cx, rho)),
        _ => Err(LemmaVerdict::Inconclusive(format!("{name}: no exact report ({})", r.diagnostics))),
    }
}

fn cx_le(lhs: &Cx, rhs: &Cx, what: &str) -> std::result::Result<(), LemmaVerdict> {
    match lhs.cmp_exact(rhs) {
        Some(Ordering::Greater) => Err(LemmaVerdict::Violated(format!("{what}: cx {lhs} > {rhs}"))),
        _ => Ok(()),
    }
}

fn curv_le(lhs: &RealAlgebraic, rhs: &RealAlgebraic, what: &str) -> std::result::Result<(), LemmaVerdict> {
    if lhs.cmp_exact(rhs) == Ordering::Greater {
        Err(LemmaVerdict::Violated(format!("{what}: curv {lhs} > {rhs}")))
    } else {
        Ok(())
    }
}

/// Checks the lemma's hypothesis on the prefix, then its conclusion on
/// exact reports of the sequences involved.
pub fn check_sequence_lemma(lemma: &SequenceLemma) -> LemmaVerdict {
    match run_lemma(lemma) {
        Ok(()) => LemmaVerdict::Holds,
        Err(v) => v,
    }
}

fn run_lemma(lemma: &SequenceLemma) -> std::result::Result<(), LemmaVerdict> {
    match lemma {
        SequenceLemma::Domination { a, b, w } => {
            let n_max = a.len().min(b.len());
            for n in 1..n_max {
                if a[n] as u128 > *w as u128 * (b[n] as u128 + b[n - 1] as u128) {
                    return Err(LemmaVerdict::HypothesisFails(n));
                }
            }
            let (ca, ra) = exact_report(&a[..n_max], "a")?;
            let (cb, rb) = exact_report(&b[..n_max], "b")?;
            cx_le(&ca, &cb, "domination")?;
            curv_le(&ra, &rb, "domination")
        }
        SequenceLemma::Recursion { x, y, a, b, c } => {
            if *a == 0 || *c == 0 {
                return Err(LemmaVerdict::Inconclusive("a and c must be positive".into()));
            }
            let n_max = x.len().min(y.len());
            for n in 0..n_max.saturating_sub(1) {
                if *c as u128 * x[n + 1] as u128 > *b as u128 * x[n] as u128 + *a as u128 * y[n] as u128 {
                    return Err(LemmaVerdict::HypothesisFails(n + 1));
                }
            }
            let (_, rx) = exact_report(&x[..n_max], "x")?;
            let (_, ry) = exact_report(&y[..n_max], "y")?;
            curv_le(&rx, &RealAlgebraic::from_ratio(*b as i64, *c as i64).max(ry), "recursion")
        }
        SequenceLemma::ShiftSum { x, a, b } => {
            if *a == 0 || *b == 0 {
                return Err(LemmaVerdict::Inconclusive("a and b must be positive".into()));
            }
            let z: Vec<u64> = x.windows(2).map(|w| a * w[1] + b * w[0]).collect();
            let (_, rx) = exact_report(&x[..z.len()], "x")?;
            let (_, rz) = exact_report(&z, "shifted sum")?;
            if rx.cmp_exact(&rz) != Ordering::Equal {
                return Err(LemmaVerdict::Violated(format!("shift-sum: curv {rz} != {rx}")));
            }
            Ok(())
        }
        SequenceLemma::Sum { x, y } => {
            let n_max = x.len().min(y.len());
            let z: Vec<u64> = (0..n_max).map(|n| x[n] + y[n]).collect();
            let (cx_, rx) = exact_report(&x[..n_max], "x")?;
            let (cy, ry) = exact_report(&y[..n_max], "y")?;
            let (cz, rz) = exact_report(&z, "x+y")?;
            let sup_cx = if cx_.cmp_exact(&cy) == Some(Ordering::Less) { cy } else { cx_ };
            cx_le(&cz, &sup_cx, "sum")?;
            curv_le(&rz, &rx.max(ry), "sum")
        }
        SequenceLemma::Laurent { a, b, c } => {
            if c.iter().all(|&v| v == 0) {
                return Err(LemmaVerdict::Inconclusive("P must be nonzero".into()));
            }
            let r = c.len() - 1;
            let n_max = a.len().min(b.len().saturating_sub(r));
            for n in 0..n_max {
                let rhs: u128 = (0..=r).map(|i| b[n + i] as u128 * c[i] as u128).sum();
                if a[n] as u128 != rhs {
                    return Err(LemmaVerdict::HypothesisFails(n));
                }
            }
            let (ca, ra) = exact_report(&a[..n_max], "a")?;
            let (cb, rb) = exact_report(&b[..n_max], "b")?;
            cx_le(&cb, &ca, "laurent")?;
            curv_le(&rb, &ra, "laurent")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(c: &[BigRational]) -> Vec<i64> {
        c.iter().map(|v| v.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn recurrences() {
        assert_eq!(ints(&detect_recurrence(&[1, 2, 4, 8, 16, 32, 64, 128]).unwrap()), vec![2]);
        assert_eq!(ints(&detect_recurrence(&[1, 3, 7, 15, 31, 63, 127, 255]).unwrap()), vec![3, -2]);
        assert_eq!(ints(&detect_recurrence(&[1, 2, 3, 4, 5, 6, 7, 8]).unwrap()), vec![2, -1]);
        assert!(detect_recurrence(&[1, 2, 3]).is_none());
        // no recurrence of order ≤ 2 fits 6 values here
        assert!(detect_recurrence(&[1, 5, 2, 9, 3, 17]).is_none());
        // a_{n+3} = 3a_{n+2} − 2a_{n+1} + a_n from n = 2 on
        let c = detect_recurrence(&[1, 1, 3, 9, 21, 48, 111, 258, 600, 1395, 3243]).unwrap();
        assert_eq!(ints(&c), vec![3, -2, 1, 0, 0]);
        let r = analyze(&[1, 1, 3, 9, 21, 48, 111, 258, 600, 1395, 3243]).unwrap();
        assert!(r.is_exact());
        assert!(r.curv.to_f64() > 2.3 && r.curv.to_f64() < 2.4);
    }

    #[test]
    fn analyze_examples() {
        let r = analyze(&[1, 3, 7, 15, 31, 63, 127, 255, 511]).unwrap();
        assert_eq!(r.cx, Cx::Infinite);
        assert_eq!(r.curv.exact().unwrap(), &RealAlgebraic::from_int(2));

        let r = analyze(&[1; 8]).unwrap();
        assert_eq!(r.cx, Cx::Exact(1));
        assert_eq!(r.curv.exact().unwrap(), &RealAlgebraic::from_int(1));

        let r = analyze(&[1, 2, 3, 4, 5, 6, 7, 8, 9]).unwrap();
        assert_eq!(r.cx, Cx::Exact(2));
        assert_eq!(r.curv.exact().unwrap(), &RealAlgebraic::from_int(1));

        let tri: Vec<u64> = (0..10).map(|n| (n + 1) * (n + 2) / 2).collect();
        let r = analyze(&tri).unwrap();
        assert_eq!(r.cx, Cx::Exact(3));

        let r = analyze(&[4, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(r.cx, Cx::Exact(0));
        assert_eq!(r.curv.exact().unwrap(), &RealAlgebraic::from_int(0));

        assert!(matches!(analyze(&[1, 2, 3]), Err(Error::TooShort(3))));
    }

    #[test]
    fn periodic_and_fibonacci() {
        let r = analyze(&[1, 2, 1, 2, 1, 2, 1, 2]).unwrap();
        assert_eq!(r.cx, Cx::Exact(1));
        let fib = [1, 1, 2, 3, 5, 8, 13, 21, 34];
        let r = analyze(&fib).unwrap();
        assert_eq!(r.cx, Cx::Infinite);
        let rho = r.curv.exact().unwrap();
        assert!(!rho.is_rational());
        assert!((rho.to_f64() - 1.618033988749895).abs() < 1e-12);
    }

    #[test]
    fn estimator_path() {
        let s = [1, 5, 2, 9, 3, 17, 4, 40, 5];
        let r = analyze(&s).unwrap();
        assert!(!r.is_exact());
        assert!(r.diagnostics.contains("estimator"));
        assert!(matches!(r.curv, Curv::Estimate { window: 3, .. }));
    }

    #[test]
    fn lemma_examples() {
        let ones = vec![1u64; 10];
        let pow2: Vec<u64> = (0..10).map(|n| 1 << n).collect();
        let v = check_sequence_lemma(&SequenceLemma::Domination { a: ones.clone(), b: pow2.clone(), w: 1 });
        assert_eq!(v, LemmaVerdict::Holds);
        let v = check_sequence_lemma(&SequenceLemma::ShiftSum { x: pow2.clone(), a: 1, b: 1 });
        assert_eq!(v, LemmaVerdict::Holds);
        let twos = vec![2u64; 9];
        let v = check_sequence_lemma(&SequenceLemma::Laurent { a: twos, b: ones.clone(), c: vec![1, 1] });
        assert_eq!(v, LemmaVerdict::Holds);
        let v = check_sequence_lemma(&SequenceLemma::Domination { a: pow2, b: ones, w: 1 });
        assert_eq!(v, LemmaVerdict::HypothesisFails(2));
    }
}
