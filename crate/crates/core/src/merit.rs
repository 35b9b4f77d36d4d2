//! Correlation merits: peak (λ) and sum (S) of out-of-phase magnitudes.
//!
//! Peaks are kept as exact squared magnitudes. Sums of magnitudes are kept as
//! an exact integer part plus a floating part for the irrational square
//! roots, so integer-valued merits never touch floating point.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul};
use core::str::FromStr;

use crate::correlation::{acf, ccf, periodic_ccf_of, periodic_from_aperiodic, same_len};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::seq::Seq;

/// Tolerance used only when a magnitude has an irrational part.
pub const REAL_TOLERANCE: f64 = 1e-12;

/// Integer square root, exact for all `u64`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = libm::sqrt(n as f64) as u64;
    while x.checked_mul(x).map_or(true, |sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).map_or(false, |sq| sq <= n) {
        x += 1;
    }
    x
}

/// Non-negative real of the form `integer + Σ sqrt(k_i)` for non-square `k_i`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Magnitude {
    int: u64,
    surd: f64,
    surd_terms: u32,
}

impl Magnitude {
    pub const ZERO: Magnitude = Magnitude { int: 0, surd: 0.0, surd_terms: 0 };

    pub fn from_int(v: u64) -> Self {
        Magnitude { int: v, ..Magnitude::ZERO }
    }

    /// `sqrt(sq)`, exact when `sq` is a perfect square.
    pub fn sqrt_of(sq: u64) -> Self {
        let r = isqrt(sq);
        if r * r == sq {
            Magnitude::from_int(r)
        } else {
            Magnitude { int: 0, surd: libm::sqrt(sq as f64), surd_terms: 1 }
        }
    }

    pub fn of(e: Element) -> Self {
        Magnitude::sqrt_of(e.norm())
    }

    pub fn is_exact(&self) -> bool {
        self.surd_terms == 0
    }

    pub fn as_integer(&self) -> Option<u64> {
        self.is_exact().then_some(self.int)
    }

    pub fn value(&self) -> f64 {
        self.int as f64 + self.surd
    }

    pub fn max(self, other: Magnitude) -> Magnitude {
        if other > self {
            other
        } else {
            self
        }
    }

    /// `self ≤ bound`, exact unless an irrational part is present.
    pub fn le_int(&self, bound: u64) -> bool {
        if self.is_exact() {
            self.int <= bound
        } else {
            self.value() <= bound as f64 + REAL_TOLERANCE
        }
    }
}

impl Add for Magnitude {
    type Output = Magnitude;
    fn add(self, rhs: Magnitude) -> Magnitude {
        Magnitude {
            int: self.int + rhs.int,
            surd: self.surd + rhs.surd,
            surd_terms: self.surd_terms + rhs.surd_terms,
        }
    }
}

impl Mul<u64> for Magnitude {
    type Output = Magnitude;
    fn mul(self, k: u64) -> Magnitude {
        Magnitude {
            int: self.int * k,
            surd: self.surd * k as f64,
            surd_terms: if k == 0 { 0 } else { self.surd_terms },
        }
    }
}

impl PartialOrd for Magnitude {
    fn partial_cmp(&self, other: &Magnitude) -> Option<Ordering> {
        if self.is_exact() && other.is_exact() {
            return Some(self.int.cmp(&other.int));
        }
        let (a, b) = (self.value(), other.value());
        if (a - b).abs() <= REAL_TOLERANCE {
            Some(Ordering::Equal)
        } else {
            a.partial_cmp(&b)
        }
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(v) => write!(f, "{}", v),
            None => write!(f, "{:.12}", self.value()),
        }
    }
}

impl core::iter::Sum for Magnitude {
    fn sum<I: Iterator<Item = Magnitude>>(iter: I) -> Magnitude {
        iter.fold(Magnitude::ZERO, Add::add)
    }
}

/// The four merits of a sequence (auto) or of a pair (cross).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeritReport {
    /// Squared peak aperiodic magnitude.
    pub lambda_a_sq: u64,
    /// Squared peak periodic magnitude.
    pub lambda_p_sq: u64,
    pub s_a: Magnitude,
    pub s_p: Magnitude,
}

impl MeritReport {
    pub fn lambda_a(&self) -> Magnitude {
        Magnitude::sqrt_of(self.lambda_a_sq)
    }

    pub fn lambda_p(&self) -> Magnitude {
        Magnitude::sqrt_of(self.lambda_p_sq)
    }

    pub fn get(&self, kind: MeritKind) -> MeritValue {
        match kind {
            MeritKind::LambdaA => MeritValue::Peak(self.lambda_a_sq),
            MeritKind::LambdaP => MeritValue::Peak(self.lambda_p_sq),
            MeritKind::SA => MeritValue::Sum(self.s_a),
            MeritKind::SP => MeritValue::Sum(self.s_p),
        }
    }

    /// Auto-merits from a full aperiodic ACF (lag 0 first).
    pub fn from_acf(aperiodic: &[Element]) -> Self {
        let periodic = periodic_from_aperiodic(aperiodic);
        let (lambda_a_sq, s_a) = peak_and_sum(&aperiodic[1..]);
        let (lambda_p_sq, s_p) = peak_and_sum(&periodic[1..]);
        MeritReport { lambda_a_sq, lambda_p_sq, s_a, s_p }
    }
}

fn peak_and_sum(values: &[Element]) -> (u64, Magnitude) {
    let peak = values.iter().map(|v| v.norm()).max().unwrap_or(0);
    let sum = values.iter().map(|&v| Magnitude::of(v)).sum();
    (peak, sum)
}

/// λ^A, λ^P, S^A, S^P of a single sequence; lag 0 excluded.
pub fn merits(a: &Seq) -> MeritReport {
    MeritReport::from_acf(&acf(a.elems()))
}

/// Cross merits: aperiodic over `|l| ≤ n-1`, periodic over `0 ≤ l ≤ n-1`.
pub fn cross_merits(a: &Seq, b: &Seq) -> Result<MeritReport> {
    same_len(a, b)?;
    let (lambda_a_sq, s_a) = peak_and_sum(&ccf(a.elems(), b.elems()));
    let (lambda_p_sq, s_p) = peak_and_sum(&periodic_ccf_of(a.elems(), b.elems()));
    Ok(MeritReport { lambda_a_sq, lambda_p_sq, s_a, s_p })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MeritKind {
    LambdaA,
    LambdaP,
    SA,
    SP,
}

impl MeritKind {
    pub fn name(self) -> &'static str {
        match self {
            MeritKind::LambdaA => "lambdaA",
            MeritKind::LambdaP => "lambdaP",
            MeritKind::SA => "SA",
            MeritKind::SP => "SP",
        }
    }

    pub fn is_periodic(self) -> bool {
        matches!(self, MeritKind::LambdaP | MeritKind::SP)
    }
}

impl FromStr for MeritKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lambdaa" | "lambda_a" | "la" => Ok(MeritKind::LambdaA),
            "lambdap" | "lambda_p" | "lp" => Ok(MeritKind::LambdaP),
            "sa" | "s_a" => Ok(MeritKind::SA),
            "sp" | "s_p" => Ok(MeritKind::SP),
            _ => Err(Error::Parse(alloc::format!("unknown merit `{}`", s))),
        }
    }
}

impl fmt::Display for MeritKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One merit of one kind, comparable exactly within its kind.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MeritValue {
    /// Squared peak magnitude.
    Peak(u64),
    Sum(Magnitude),
}

impl MeritValue {
    pub fn magnitude(&self) -> Magnitude {
        match *self {
            MeritValue::Peak(sq) => Magnitude::sqrt_of(sq),
            MeritValue::Sum(m) => m,
        }
    }

    pub fn le_int(&self, bound: u64) -> bool {
        match *self {
            MeritValue::Peak(sq) => sq <= bound.saturating_mul(bound),
            MeritValue::Sum(m) => m.le_int(bound),
        }
    }

    pub fn max(self, other: MeritValue) -> MeritValue {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl PartialOrd for MeritValue {
    fn partial_cmp(&self, other: &MeritValue) -> Option<Ordering> {
        match (self, other) {
            (MeritValue::Peak(a), MeritValue::Peak(b)) => Some(a.cmp(b)),
            _ => self.magnitude().partial_cmp(&other.magnitude()),
        }
    }
}

impl fmt::Display for MeritValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.magnitude().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(txt: &str) -> Seq {
        txt.parse().unwrap()
    }

    #[test]
    fn quad_example_merits() {
        let r = merits(&s("+ +j - +j"));
        assert_eq!(r.lambda_a().as_integer(), Some(1));
        assert_eq!(r.s_a.as_integer(), Some(2));
    }

    #[test]
    fn m_sequence_length_seven() {
        // x^3 + x + 1 shift register output
        let r = merits(&s("+ + + - - + -"));
        assert_eq!(r.lambda_p().as_integer(), Some(1));
    }

    #[test]
    fn constant_sequence() {
        let r = merits(&s("+ + +"));
        assert_eq!(r.lambda_a().as_integer(), Some(2));
        assert_eq!(r.s_a.as_integer(), Some(3));
        assert!(r.lambda_a() <= r.s_a);
    }

    #[test]
    fn cross_merits_include_lag_zero() {
        let a = s("+ -");
        let r = cross_merits(&a, &a).unwrap();
        assert_eq!(r.lambda_a().as_integer(), Some(2));
        assert_eq!(r.s_a.as_integer(), Some(4));
        assert!(cross_merits(&a, &s("+")).is_err());
    }

    #[test]
    fn irrational_magnitudes() {
        // ACF of (1, 1+j): A(1) = 1·conj(1+j) = 1-j, |A(1)| = sqrt(2)
        let r = merits(&s("+ 1+1i"));
        assert_eq!(r.lambda_a_sq, 2);
        assert!(r.s_a.as_integer().is_none());
        assert!((r.s_a.value() - core::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(r.s_a.le_int(2));
        assert!(!r.s_a.le_int(1));
    }

    #[test]
    fn isqrt_exact() {
        for n in [0u64, 1, 2, 3, 4, 15, 16, 17, 1 << 52, (1 << 52) + 1, u64::MAX] {
            let r = isqrt(n);
            assert!(r * r <= n);
            assert!((r + 1).checked_mul(r + 1).map_or(true, |v| v > n));
        }
    }

    #[test]
    fn merit_value_ordering() {
        assert!(MeritValue::Peak(4) < MeritValue::Peak(5));
        assert!(MeritValue::Sum(Magnitude::from_int(3)) > MeritValue::Sum(Magnitude::sqrt_of(8)));
        assert!(MeritValue::Peak(4).le_int(2));
        assert!(!MeritValue::Peak(5).le_int(2));
    }
}
