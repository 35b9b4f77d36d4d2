//! Aperiodic and periodic auto/cross-correlation, computed exactly.

use alloc::vec::Vec;

use crate::element::Element;
use crate::error::{domain, Result};
use crate::seq::Seq;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CorrelationKind {
    AperiodicAuto,
    PeriodicAuto,
    AperiodicCross,
    PeriodicCross,
}

/// Correlation values indexed by lag over `lo..=hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelationProfile {
    kind: CorrelationKind,
    lo: isize,
    values: Vec<Element>,
}

impl CorrelationProfile {
    pub(crate) fn new(kind: CorrelationKind, lo: isize, values: Vec<Element>) -> Self {
        CorrelationProfile { kind, lo, values }
    }

    pub fn kind(&self) -> CorrelationKind {
        self.kind
    }

    /// Inclusive lag range `(lo, hi)`.
    pub fn lag_range(&self) -> (isize, isize) {
        (self.lo, self.lo + self.values.len() as isize - 1)
    }

    /// Value at `lag`; zero outside the stored range.
    pub fn at(&self, lag: isize) -> Element {
        let idx = lag - self.lo;
        if idx < 0 || idx as usize >= self.values.len() {
            Element::ZERO
        } else {
            self.values[idx as usize]
        }
    }

    /// Values in lag order starting at `lo`.
    pub fn values(&self) -> &[Element] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Element> {
        self.values
    }
}

/// `A(l) = Σ_{i=0}^{n-1-l} a_i conj(a_{i+l})` for `0 ≤ l < n`.
pub fn acf(a: &[Element]) -> Vec<Element> {
    let n = a.len();
    (0..n)
        .map(|l| a[..n - l].iter().zip(&a[l..]).map(|(&x, &y)| x.mul_conj(y)).sum())
        .collect()
}

/// `P(l) = Σ_i a_i conj(a_{(i+l) mod n})` for `0 ≤ l < n`.
pub fn periodic_acf_of(a: &[Element]) -> Vec<Element> {
    let n = a.len();
    (0..n)
        .map(|l| (0..n).map(|i| a[i].mul_conj(a[(i + l) % n])).sum())
        .collect()
}

/// Periodic ACF from an aperiodic one: `P(l) = A(l) + conj(A(n-l))`.
pub fn periodic_from_aperiodic(aperiodic: &[Element]) -> Vec<Element> {
    let n = aperiodic.len();
    (0..n)
        .map(|l| if l == 0 { aperiodic[0] } else { aperiodic[l] + aperiodic[n - l].conj() })
        .collect()
}

/// Aperiodic cross-correlation at a single lag; zero when `|l| ≥ n`.
pub fn ccf_at(a: &[Element], b: &[Element], lag: isize) -> Element {
    let n = a.len() as isize;
    if lag >= n || lag <= -n {
        return Element::ZERO;
    }
    if lag >= 0 {
        let l = lag as usize;
        a[..a.len() - l].iter().zip(&b[l..]).map(|(&x, &y)| x.mul_conj(y)).sum()
    } else {
        let l = (-lag) as usize;
        a[l..].iter().zip(&b[..b.len() - l]).map(|(&x, &y)| x.mul_conj(y)).sum()
    }
}

/// Aperiodic cross-correlation over lags `1-n ..= n-1`.
pub fn ccf(a: &[Element], b: &[Element]) -> Vec<Element> {
    let n = a.len() as isize;
    (1 - n..n).map(|l| ccf_at(a, b, l)).collect()
}

/// Periodic cross-correlation over lags `0 ..= n-1`.
pub fn periodic_ccf_of(a: &[Element], b: &[Element]) -> Vec<Element> {
    let n = a.len();
    (0..n)
        .map(|l| (0..n).map(|i| a[i].mul_conj(b[(i + l) % n])).sum())
        .collect()
}

pub fn aperiodic_acf(a: &Seq) -> CorrelationProfile {
    CorrelationProfile::new(CorrelationKind::AperiodicAuto, 0, acf(a.elems()))
}

pub fn periodic_acf(a: &Seq) -> CorrelationProfile {
    CorrelationProfile::new(CorrelationKind::PeriodicAuto, 0, periodic_acf_of(a.elems()))
}

pub fn aperiodic_ccf(a: &Seq, b: &Seq) -> Result<CorrelationProfile> {
    same_len(a, b)?;
    let lo = 1 - a.len() as isize;
    Ok(CorrelationProfile::new(CorrelationKind::AperiodicCross, lo, ccf(a.elems(), b.elems())))
}

pub fn periodic_ccf(a: &Seq, b: &Seq) -> Result<CorrelationProfile> {
    same_len(a, b)?;
    Ok(CorrelationProfile::new(CorrelationKind::PeriodicCross, 0, periodic_ccf_of(a.elems(), b.elems())))
}

pub(crate) fn same_len(a: &Seq, b: &Seq) -> Result<()> {
    if a.len() != b.len() {
        return Err(domain!("sequence lengths differ: {} vs {}", a.len(), b.len()));
    }
    Ok(())
}
