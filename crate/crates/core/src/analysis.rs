//! Column-sequence analytics. Column ACFs come from a recursion over size
//! extensions; bounds are exact rationals where the formulas allow it.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::complementary::{is_companion_pair, SeqMatrix};
use crate::construct::{BuildRecipe, ExtendMode};
use crate::correlation::{acf, ccf_at, periodic_acf_of, periodic_ccf_of, same_len, CorrelationKind, CorrelationProfile};
use crate::element::Element;
use crate::error::{domain, Result};
use crate::merit::{cross_merits, isqrt, merits, Magnitude, MeritReport};
use crate::seq::Seq;

/// Exact rational used for the closed-form bounds.
pub type Rational = Ratio<i128>;

/// Per-column merits and their maxima.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnReport {
    pub per_column: Vec<MeritReport>,
    pub zero_counts: Vec<usize>,
    /// Squared `max_i λ^A(u_i)`.
    pub lambda_a_sq: u64,
    pub lambda_p_sq: u64,
    pub s_a: Magnitude,
    pub s_p: Magnitude,
}

impl ColumnReport {
    pub fn lambda_a(&self) -> Magnitude {
        Magnitude::sqrt_of(self.lambda_a_sq)
    }

    pub fn lambda_p(&self) -> Magnitude {
        Magnitude::sqrt_of(self.lambda_p_sq)
    }

    fn from_parts(per_column: Vec<MeritReport>, zero_counts: Vec<usize>) -> Self {
        let mut r = ColumnReport {
            per_column,
            zero_counts,
            lambda_a_sq: 0,
            lambda_p_sq: 0,
            s_a: Magnitude::ZERO,
            s_p: Magnitude::ZERO,
        };
        for m in &r.per_column {
            r.lambda_a_sq = r.lambda_a_sq.max(m.lambda_a_sq);
            r.lambda_p_sq = r.lambda_p_sq.max(m.lambda_p_sq);
            r.s_a = r.s_a.max(m.s_a);
            r.s_p = r.s_p.max(m.s_p);
        }
        r
    }
}

/// Merits of every column of `m`.
pub fn column_report(m: &SeqMatrix) -> ColumnReport {
    let cols = m.columns();
    ColumnReport::from_parts(cols.iter().map(merits).collect(), cols.iter().map(Seq::zero_count).collect())
}

/// Column ACFs of a build, deduplicated: columns share profiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnAcfs {
    profiles: Vec<Vec<Element>>,
    column_profile: Vec<usize>,
}

impl ColumnAcfs {
    /// Number of columns.
    pub fn len(&self) -> usize {
        self.column_profile.len()
    }

    pub fn is_empty(&self) -> bool {
        self.column_profile.is_empty()
    }

    /// Aperiodic ACF of column `j`, lags `0..rows`.
    pub fn acf(&self, j: usize) -> &[Element] {
        &self.profiles[self.column_profile[j]]
    }

    /// The distinct profiles.
    pub fn distinct(&self) -> &[Vec<Element>] {
        &self.profiles
    }

    pub fn profile(&self, j: usize) -> CorrelationProfile {
        CorrelationProfile::new(CorrelationKind::AperiodicAuto, 0, self.acf(j).to_vec())
    }

    /// Column report built from the recursive profiles (periodic merits derived).
    pub fn report(&self) -> ColumnReport {
        let distinct: Vec<MeritReport> = self.profiles.iter().map(|p| MeritReport::from_acf(p)).collect();
        let per_column = self.column_profile.iter().map(|&i| distinct[i]).collect();
        ColumnReport::from_parts(per_column, Vec::new())
    }
}

/// Symbols `k mod 4` for the columns of `[C^(p) D^(p)]`: `ψ^k(c0)` with `ψ(c0) = c1`, `ψ(c1) = -c0`.
pub(crate) fn level0_symbols(length_modes: &[ExtendMode]) -> Vec<u8> {
    let mate = |c: &[u8]| -> Vec<u8> { c.iter().rev().map(|k| (k + 1) % 4).collect() };
    let mut c: Vec<u8> = vec![0, 1];
    for &mode in length_modes {
        let d = mate(&c);
        c = match mode {
            ExtendMode::Concat => c.iter().chain(&d).copied().collect(),
            ExtendMode::Interleave => c.iter().zip(&d).flat_map(|(&a, &b)| [a, b]).collect(),
        };
    }
    let d = mate(&c);
    c.extend(d);
    c
}

/// ACF of `(u, σu)` from the ACF of `u`.
fn extend_acf(a: &[Element], sigma: i64) -> Vec<Element> {
    let s = a.len();
    (0..2 * s)
        .map(|l| {
            if l < s {
                let wrap = if l == 0 { Element::ZERO } else { a[s - l].conj() };
                a[l] * 2 + wrap * sigma
            } else {
                a[l - s] * sigma
            }
        })
        .collect()
}

/// Column ACFs of `build(c0, c1, recipe)` without materializing the matrix.
///
/// Each size extension maps a column `u` to `(u, σu)`; the sign pattern is
/// `-, +, -, +` over the four concat blocks and `-, +` over each interleaved
/// column pair. Needs a companion pair in conjugate form, so that every
/// level-0 column is one of `±c0, ±c1`.
pub fn recursive_column_acf(c0: &Seq, c1: &Seq, recipe: &BuildRecipe) -> Result<ColumnAcfs> {
    let pair = is_companion_pair(c0, c1)?
        .ok_or_else(|| domain!("({}) and ({}) are not a companion pair", c0, c1))?;
    if !pair.is_conjugate_form() {
        return Err(domain!("the ACF recursion needs a conjugate-form companion pair"));
    }
    let mut profiles = vec![acf(c0.elems()), acf(c1.elems())];
    let mut cols: Vec<usize> = level0_symbols(&recipe.length_modes).iter().map(|&k| (k % 2) as usize).collect();
    for &mode in &recipe.size_modes {
        let r = cols.len();
        let mut memo: BTreeMap<(usize, i64), usize> = BTreeMap::new();
        let mut child = |parent: usize, sigma: i64, profiles: &mut Vec<Vec<Element>>| -> usize {
            *memo.entry((parent, sigma)).or_insert_with(|| {
                profiles.push(extend_acf(&profiles[parent], sigma));
                profiles.len() - 1
            })
        };
        let mut next = vec![0usize; 4 * r];
        match mode {
            ExtendMode::Concat => {
                for (b, sigma) in [-1, 1, -1, 1].into_iter().enumerate() {
                    for i in 0..r {
                        next[b * r + i] = child(cols[i], sigma, &mut profiles);
                    }
                }
            }
            ExtendMode::Interleave => {
                for half in 0..2 {
                    for i in 0..r {
                        next[half * 2 * r + 2 * i] = child(cols[i], -1, &mut profiles);
                        next[half * 2 * r + 2 * i + 1] = child(cols[i], 1, &mut profiles);
                    }
                }
            }
        }
        cols = next;
    }
    // keep only profiles still referenced, in first-use order
    let mut remap = vec![usize::MAX; profiles.len()];
    let mut kept = Vec::new();
    for c in cols.iter_mut() {
        if remap[*c] == usize::MAX {
            remap[*c] = kept.len();
            kept.push(core::mem::take(&mut profiles[*c]));
        }
        *c = remap[*c];
    }
    Ok(ColumnAcfs { profiles: kept, column_profile: cols })
}

fn pow2(k: u32) -> i128 {
    1i128 << k
}

/// `4^t·S0 + 2^(t-1)(2^t-1)·E`.
pub fn sufficient_s_a(t: u32, s0: Rational, e: Rational) -> Rational {
    let second = Rational::new(pow2(t) * (pow2(t) - 1), 2) * e;
    s0 * pow2(2 * t) + second
}

/// `max{(2^t-1)E, (2^(t+1)-1)λ0}`.
pub fn sufficient_lambda_a(t: u32, lambda0: Rational, e: Rational) -> Rational {
    let a = e * (pow2(t) - 1);
    let b = lambda0 * (pow2(t + 1) - 1);
    if a >= b {
        a
    } else {
        b
    }
}

/// `(2^t-1)E`; also the achievable minimum when the threshold condition holds.
pub fn necessary_lambda_a(t: u32, e: Rational) -> Rational {
    e * (pow2(t) - 1)
}

/// `(2^t-1)/(2^(t+1)-1)·E`.
pub fn lambda_min_threshold(t: u32, e: Rational) -> Rational {
    e * Rational::new(pow2(t) - 1, pow2(t + 1) - 1)
}

/// [`sufficient_s_a`] for an `S0` that may carry irrational terms.
pub fn sufficient_s_a_magnitude(t: u32, s0: Magnitude, e: u64) -> Magnitude {
    let second = ((1u64 << t) * ((1u64 << t) - 1) / 2) * e;
    s0 * (1u64 << (2 * t)) + Magnitude::from_int(second)
}

/// Square of [`sufficient_lambda_a`] from a squared `λ0`.
pub fn sufficient_lambda_a_sq(t: u32, lambda0_sq: u64, e: u64) -> u128 {
    let a = (((1u128 << t) - 1) * e as u128).pow(2);
    let b = ((1u128 << (t + 1)) - 1).pow(2) * lambda0_sq as u128;
    a.max(b)
}

/// `λ0 ≤ (2^t-1)/(2^(t+1)-1)·E`, exactly, from a squared `λ0`.
pub fn threshold_holds(t: u32, lambda0_sq: u64, e: u64) -> bool {
    let lhs = lambda0_sq as u128 * ((1u128 << (t + 1)) - 1).pow(2);
    let rhs = (((1u128 << t) - 1) * e as u128).pow(2);
    lhs <= rhs
}

/// Welch lower bounds `(A_max, P_max)` for `K` sequences of length `N`.
pub fn welch_bounds(n: u64, k: u64) -> Result<(f64, f64)> {
    if n < 1 || k < 2 {
        return Err(domain!("Welch bounds need N >= 1 and K >= 2, got N={} K={}", n, k));
    }
    let (nf, kf) = (n as f64, k as f64);
    let a = nf * libm::sqrt((kf - 1.0) / (2.0 * nf * kf - kf - 1.0));
    let p = nf * libm::sqrt((kf - 1.0) / (nf * kf - 1.0));
    Ok((a, p))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExistenceThresholds {
    /// `m / sqrt(2m-3)`.
    pub lambda_a_lb: f64,
    /// `m / sqrt(m-1)`.
    pub lambda_p_lb: f64,
    /// Smallest integer not below `lambda_a_lb`.
    pub lambda_w_a: u64,
    /// Smallest integer not below `lambda_p_lb`.
    pub lambda_w_p: u64,
}

/// Smallest integer `x` with `x²·den ≥ num²`.
fn ceil_ratio_sqrt(num: u64, den: u64) -> u64 {
    let num_sq = num as u128 * num as u128;
    let den = den as u128;
    let mut x = isqrt((num_sq / den) as u64) as u128;
    while x * x * den < num_sq {
        x += 1;
    }
    while x > 0 && (x - 1) * (x - 1) * den >= num_sq {
        x -= 1;
    }
    x as u64
}

/// Existence lower bounds on the column `λ^A`/`λ^P` of a length-`m` companion pair.
pub fn existence_thresholds(m: u64) -> Result<ExistenceThresholds> {
    if m < 4 || m % 2 != 0 {
        return Err(domain!("existence thresholds need an even m >= 4, got {}", m));
    }
    let mf = m as f64;
    Ok(ExistenceThresholds {
        lambda_a_lb: mf / libm::sqrt(2.0 * mf - 3.0),
        lambda_p_lb: mf / libm::sqrt(mf - 1.0),
        lambda_w_a: ceil_ratio_sqrt(m, 2 * m - 3),
        lambda_w_p: ceil_ratio_sqrt(m, m - 1),
    })
}

/// Closed-form bounds for one `(m, t, E)` and optional seed merits.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub m: u64,
    pub t: u32,
    pub e: Rational,
    pub sufficient_s_a: Option<Rational>,
    pub sufficient_lambda_a: Option<Rational>,
    pub necessary_lambda_a: Rational,
    pub lambda_min_t: Rational,
    pub threshold_lambda0: Rational,
    /// `None` when `m < 4` or odd.
    pub existence: Option<ExistenceThresholds>,
    /// Welch bounds with `N = m/2`, `K = 2`.
    pub welch_a: Option<f64>,
    pub welch_p: Option<f64>,
}

/// Gathers every bound; `E` defaults to `m` (unit-magnitude seeds).
pub fn bound_report(m: u64, t: u32, e: Option<Rational>, lambda0: Option<Rational>, s0: Option<Rational>) -> BoundReport {
    let e = e.unwrap_or_else(|| Rational::from_integer(m as i128));
    let welch = if m >= 2 && m % 2 == 0 { welch_bounds(m / 2, 2).ok() } else { None };
    BoundReport {
        m,
        t,
        e,
        sufficient_s_a: s0.map(|s| sufficient_s_a(t, s, e)),
        sufficient_lambda_a: lambda0.map(|l| sufficient_lambda_a(t, l, e)),
        necessary_lambda_a: necessary_lambda_a(t, e),
        lambda_min_t: necessary_lambda_a(t, e),
        threshold_lambda0: lambda_min_threshold(t, e),
        existence: existence_thresholds(m).ok(),
        welch_a: welch.map(|w| w.0),
        welch_p: welch.map(|w| w.1),
    }
}

/// `max{a + b, 2x}` on integer peaks: the search cost and `λ_B`.
#[inline]
pub fn lambda_b_cost(peak0: u64, peak1: u64, cross_peak: u64) -> u64 {
    (peak0 + peak1).max(2 * cross_peak)
}

/// `λ_B = max{λ^A(s0) + λ^A(s1), 2λ^A(s0, s1)}`, cross peak over all lags.
pub fn lambda_b(s0: &Seq, s1: &Seq) -> Result<Magnitude> {
    let a0 = merits(s0);
    let a1 = merits(s1);
    let x = cross_merits(s0, s1)?;
    match (a0.lambda_a().as_integer(), a1.lambda_a().as_integer(), x.lambda_a().as_integer()) {
        (Some(p0), Some(p1), Some(px)) => Ok(Magnitude::from_int(lambda_b_cost(p0, p1, px))),
        _ => Ok((a0.lambda_a() + a1.lambda_a()).max(x.lambda_a() * 2)),
    }
}

/// Upper bounds on the lifted pair's merits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CaseBounds {
    /// `max{λ^A_s0 + λ^A_s1, 2λ^A_x}`.
    pub case1_lambda_a: Magnitude,
    pub case1_lambda_p: Magnitude,
    /// `S^A_s0 + S^A_s1 + S^A_x`.
    pub case1_s_a: Magnitude,
    /// `S^P_s0 + S^P_s1 + 2S^P_x`.
    pub case1_s_p: Magnitude,
    /// `λ^A_s0 + λ^A_s1 + λ^A_x`.
    pub case2_lambda_a: Magnitude,
}

pub fn case_bounds(s0: &Seq, s1: &Seq) -> Result<CaseBounds> {
    let a0 = merits(s0);
    let a1 = merits(s1);
    let x = cross_merits(s0, s1)?;
    Ok(CaseBounds {
        case1_lambda_a: lambda_b(s0, s1)?,
        case1_lambda_p: (a0.lambda_p() + a1.lambda_p()).max(x.lambda_p() * 2),
        case1_s_a: a0.s_a + a1.s_a + x.s_a,
        case1_s_p: a0.s_p + a1.s_p + x.s_p * 2,
        case2_lambda_a: a0.lambda_a() + a1.lambda_a() + x.lambda_a(),
    })
}

/// First lag at which a decomposition identity disagrees with direct computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub identity: &'static str,
    pub lag: usize,
    pub expected: Element,
    pub actual: Element,
}

fn first_mismatch(identity: &'static str, direct: &[Element], predicted: impl Fn(usize) -> Element) -> Option<Mismatch> {
    direct.iter().enumerate().find_map(|(l, &actual)| {
        let expected = predicted(l);
        (expected != actual).then_some(Mismatch { identity, lag: l, expected, actual })
    })
}

/// Checks the interleaved-lift identities for `c0 = s0 ⊗ s1`, `c1* = s1 ⊗ (-s0)`.
///
/// Conjugates appear on the cross terms for complex input; on real input
/// the identities are the printed ones.
pub fn case1_decomposition_check(s0: &Seq, s1: &Seq) -> Result<Option<Mismatch>> {
    same_len(s0, s1)?;
    let (a, b) = (s0.elems(), s1.elems());
    let n = a.len();
    let m = 2 * n;
    let c0 = s0.interleave(s1)?;
    let c1c = s1.interleave(&s0.negate())?;
    let x = |k: isize| ccf_at(a, b, k);
    let (aa, ab) = (acf(a), acf(b));
    let even = |l: usize| aa[l / 2] + ab[l / 2];

    let r = first_mismatch("aperiodic c0", &acf(c0.elems()), |l| {
        let l = l as isize;
        if l % 2 == 1 {
            x((l - 1) / 2) + x((-l - 1) / 2).conj()
        } else {
            even(l as usize)
        }
    });
    if r.is_some() {
        return Ok(r);
    }
    let r = first_mismatch("aperiodic conj(c1)", &acf(c1c.elems()), |l| {
        let l = l as isize;
        if l % 2 == 1 {
            -x((l + 1) / 2) - x((1 - l) / 2).conj()
        } else {
            even(l as usize)
        }
    });
    if r.is_some() {
        return Ok(r);
    }
    let px = periodic_ccf_of(a, b);
    let (pa, pb) = (periodic_acf_of(a), periodic_acf_of(b));
    let peven = |l: usize| pa[l / 2] + pb[l / 2];
    let r = first_mismatch("periodic c0", &periodic_acf_of(c0.elems()), |l| {
        if l % 2 == 1 {
            px[(l - 1) / 2] + px[((m - l - 1) / 2) % n].conj()
        } else {
            peven(l)
        }
    });
    if r.is_some() {
        return Ok(r);
    }
    Ok(first_mismatch("periodic conj(c1)", &periodic_acf_of(c1c.elems()), |l| {
        if l % 2 == 1 {
            -px[((l + 1) / 2) % n] - px[((m - l + 1) / 2) % n].conj()
        } else {
            peven(l)
        }
    }))
}

/// Checks the concatenated-lift identities for `c0 = s0 s1`, `c1 = s1* (-s0*)`.
pub fn case2_decomposition_check(s0: &Seq, s1: &Seq) -> Result<Option<Mismatch>> {
    same_len(s0, s1)?;
    let (a, b) = (s0.elems(), s1.elems());
    let n = a.len() as isize;
    let c0 = s0.concat(s1);
    let c1 = s1.conjugate().concat(&s0.conjugate().negate());
    let x = |k: isize| ccf_at(a, b, k);
    let (aa, ab) = (acf(a), acf(b));
    let r = first_mismatch("aperiodic c0", &acf(c0.elems()), |l| {
        let li = l as isize;
        if li < n {
            aa[l] + ab[l] + x(li - n)
        } else {
            x(li - n)
        }
    });
    if r.is_some() {
        return Ok(r);
    }
    Ok(first_mismatch("aperiodic c1", &acf(c1.elems()), |l| {
        let li = l as isize;
        if li < n {
            (aa[l] + ab[l]).conj() - x(n - li)
        } else {
            -x(n - li)
        }
    }))
}
