//! Predicates on complementary sets and the companion-pair test.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::correlation::{acf, ccf_at};
use crate::element::{Alphabet, Element};
use crate::error::{domain, Error, Result};
use crate::seq::Seq;

/// Row-major `m × n` grid of elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeqMatrix {
    data: Vec<Element>,
    rows: usize,
    cols: usize,
    alphabet: Alphabet,
}

impl SeqMatrix {
    /// Stacks equal-length sequences as rows.
    pub fn from_rows(rows: &[Seq]) -> Result<Self> {
        let first = rows.first().ok_or_else(|| domain!("matrix needs at least one row"))?;
        let cols = first.len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        let mut alphabet = first.alphabet();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(domain!("row {} has length {}, expected {}", i, r.len(), cols));
            }
            alphabet = alphabet.join(r.alphabet());
            data.extend_from_slice(r.elems());
        }
        Ok(SeqMatrix { data, rows: rows.len(), cols, alphabet })
    }

    /// Places each sequence as a column.
    pub fn from_columns(cols: &[Seq]) -> Result<Self> {
        SeqMatrix::from_rows(cols).map(|m| m.transpose())
    }

    pub(crate) fn from_raw(data: Vec<Element>, rows: usize, cols: usize, alphabet: Alphabet) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        SeqMatrix { data, rows, cols, alphabet }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Element {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Element] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_seq(&self, i: usize) -> Seq {
        Seq::from_parts(self.row(i).to_vec(), self.alphabet)
    }

    pub fn column(&self, j: usize) -> Seq {
        Seq::from_parts((0..self.rows).map(|i| self.get(i, j)).collect(), self.alphabet)
    }

    pub fn row_seqs(&self) -> Vec<Seq> {
        (0..self.rows).map(|i| self.row_seq(i)).collect()
    }

    pub fn columns(&self) -> Vec<Seq> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> SeqMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            data.extend((0..self.rows).map(|i| self.get(i, j)));
        }
        SeqMatrix::from_raw(data, self.cols, self.rows, self.alphabet)
    }

    pub fn negate(&self) -> SeqMatrix {
        SeqMatrix::from_raw(self.data.iter().map(|&e| -e).collect(), self.rows, self.cols, self.alphabet)
    }

    pub fn conjugate(&self) -> SeqMatrix {
        SeqMatrix::from_raw(self.data.iter().map(|e| e.conj()).collect(), self.rows, self.cols, self.alphabet)
    }

    /// Row-wise concatenation `[self other]`.
    pub fn hconcat(&self, other: &SeqMatrix) -> Result<SeqMatrix> {
        self.row_wise(other, "concatenate", |a, b, out| {
            out.extend_from_slice(a);
            out.extend_from_slice(b);
        })
    }

    /// Row-wise interleaving `self ⊗ other`.
    pub fn interleave(&self, other: &SeqMatrix) -> Result<SeqMatrix> {
        if self.cols != other.cols {
            return Err(domain!("interleave needs equal widths, got {} and {}", self.cols, other.cols));
        }
        self.row_wise(other, "interleave", |a, b, out| {
            out.extend(a.iter().zip(b).flat_map(|(&x, &y)| [x, y]));
        })
    }

    fn row_wise(
        &self,
        other: &SeqMatrix,
        what: &str,
        f: impl Fn(&[Element], &[Element], &mut Vec<Element>),
    ) -> Result<SeqMatrix> {
        if self.rows != other.rows {
            return Err(domain!("cannot {} matrices with {} and {} rows", what, self.rows, other.rows));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            f(self.row(i), other.row(i), &mut data);
        }
        Ok(SeqMatrix::from_raw(data, self.rows, cols, self.alphabet.join(other.alphabet)))
    }

    /// Stacks `other` below `self`.
    pub fn vconcat(&self, other: &SeqMatrix) -> Result<SeqMatrix> {
        if self.cols != other.cols {
            return Err(domain!("cannot stack matrices of widths {} and {}", self.cols, other.cols));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(SeqMatrix::from_raw(data, self.rows + other.rows, self.cols, self.alphabet.join(other.alphabet)))
    }

    /// Columns `start..start+width` as a new matrix.
    pub fn column_block(&self, start: usize, width: usize) -> SeqMatrix {
        assert!(start + width <= self.cols, "column block out of range");
        let mut data = Vec::with_capacity(self.rows * width);
        for i in 0..self.rows {
            data.extend_from_slice(&self.row(i)[start..start + width]);
        }
        SeqMatrix::from_raw(data, self.rows, width, self.alphabet)
    }

    /// Splits into consecutive column blocks of `width`.
    pub fn split_columns(&self, width: usize) -> Result<Vec<SeqMatrix>> {
        if width == 0 || self.cols % width != 0 {
            return Err(domain!("cannot split {} columns into blocks of {}", self.cols, width));
        }
        Ok((0..self.cols / width).map(|b| self.column_block(b * width, width)).collect())
    }

    /// Joins matrices side by side.
    pub fn hconcat_all(blocks: &[SeqMatrix]) -> Result<SeqMatrix> {
        let (first, rest) = blocks.split_first().ok_or_else(|| domain!("no matrices to join"))?;
        rest.iter().try_fold(first.clone(), |acc, b| acc.hconcat(b))
    }
}

impl fmt::Display for SeqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", e)?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

/// True iff the row ACFs sum to zero at every lag `1..n-1`.
pub fn is_complementary_set(m: &SeqMatrix) -> bool {
    complementary_residual(m).is_none()
}

/// First lag at which the row ACF sum is non-zero, with that sum.
pub fn complementary_residual(m: &SeqMatrix) -> Option<(usize, Element)> {
    let mut total = vec![Element::ZERO; m.cols()];
    for i in 0..m.rows() {
        for (t, v) in total.iter_mut().zip(acf(m.row(i))) {
            *t += v;
        }
    }
    total.iter().enumerate().skip(1).find(|(_, v)| !v.is_zero()).map(|(l, &v)| (l, v))
}

/// Row-wise cross-correlation sums vanish at every lag.
///
/// Complementarity of each set is a separate check ([`is_complementary_set`]).
pub fn are_mates(a: &SeqMatrix, b: &SeqMatrix) -> Result<bool> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(domain!(
            "mate check needs equal dimensions, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        ));
    }
    let n = a.cols() as isize;
    Ok((1 - n..n).all(|l| {
        (0..a.rows()).map(|i| ccf_at(a.row(i), b.row(i), l)).sum::<Element>().is_zero()
    }))
}

/// Every set is complementary and every two sets are mates.
pub fn is_mo_collection(sets: &[SeqMatrix]) -> Result<bool> {
    if let Some(first) = sets.first() {
        if let Some(bad) = sets.iter().find(|s| s.rows() != first.rows() || s.cols() != first.cols()) {
            return Err(domain!(
                "MO collection needs equal set dimensions, got {}x{} and {}x{}",
                first.rows(),
                first.cols(),
                bad.rows(),
                bad.cols()
            ));
        }
    }
    if !sets.iter().all(is_complementary_set) {
        return Ok(false);
    }
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if !are_mates(a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Golay complementary pair check (any alphabet).
pub fn is_golay_pair(a: &Seq, b: &Seq) -> Result<bool> {
    crate::correlation::same_len(a, b)?;
    Ok(acf(a.elems()).iter().zip(acf(b.elems())).skip(1).all(|(x, y)| (*x + y).is_zero()))
}

/// Longest sequence for which [`find_golay_mate`] will search.
pub const GOLAY_SEARCH_MAX_LEN: usize = 20;

/// Whether `a` has a complementary mate over its own alphabet.
pub fn is_golay_sequence(a: &Seq) -> Result<bool> {
    find_golay_mate(a).map(|m| m.is_some())
}

/// Searches the alphabet of `a` for `b` with `A_a(l) + A_b(l) = 0`, `l ≥ 1`.
///
/// Elements are fixed from both ends inward; once `b_0..b_k` and
/// `b_{n-1-k}..b_{n-1}` are chosen, `A_b(n-1-k)` is final and can be pruned.
pub fn find_golay_mate(a: &Seq) -> Result<Option<Seq>> {
    let n = a.len();
    if n > GOLAY_SEARCH_MAX_LEN {
        return Err(Error::Capability(alloc::format!(
            "Golay mate search is limited to length {}, got {}",
            GOLAY_SEARCH_MAX_LEN,
            n
        )));
    }
    let symbols = a.alphabet().symbols().ok_or_else(|| {
        Error::Capability("Golay mate search needs a finite alphabet".into())
    })?;
    let target: Vec<Element> = acf(a.elems()).into_iter().map(|v| -v).collect();
    if n == 1 {
        return Ok(Some(a.clone()));
    }
    let mut b = vec![Element::ZERO; n];
    let found = golay_fill(&mut b, 0, symbols, &target);
    Ok(found.then(|| Seq::from_parts(b, a.alphabet())))
}

fn golay_fill(b: &mut [Element], k: usize, symbols: &[Element], target: &[Element]) -> bool {
    let n = b.len();
    if 2 * k > n - 1 {
        // lags below the last pruned one are only checked once b is complete
        return (1..n - k).all(|lag| {
            (0..n - lag).map(|i| b[i].mul_conj(b[i + lag])).sum::<Element>() == target[lag]
        });
    }
    let hi = n - 1 - k;
    // lag `hi` only involves pairs (i, i+hi) with i ≤ k
    let check = |b: &[Element]| -> bool {
        let lag = hi;
        if lag == 0 {
            return true;
        }
        let v: Element = (0..n - lag).map(|i| b[i].mul_conj(b[i + lag])).sum();
        v == target[lag]
    };
    for &x in symbols {
        b[k] = x;
        if k == hi {
            if check(b) && golay_fill(b, k + 1, symbols, target) {
                return true;
            }
            continue;
        }
        for &y in symbols {
            b[hi] = y;
            if check(b) && golay_fill(b, k + 1, symbols, target) {
                return true;
            }
        }
    }
    false
}

/// A partition of `0..m` into ordered index pairs `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pairing(Vec<(usize, usize)>);

impl Pairing {
    /// Validates that the pairs partition `0..m`.
    pub fn new(pairs: Vec<(usize, usize)>, m: usize) -> Result<Self> {
        if m % 2 != 0 {
            return Err(domain!("pairing needs an even index count, got {}", m));
        }
        if pairs.len() * 2 != m {
            return Err(domain!("expected {} pairs for {} indices, got {}", m / 2, m, pairs.len()));
        }
        let mut seen = vec![false; m];
        for &(x, y) in &pairs {
            for idx in [x, y] {
                if idx >= m {
                    return Err(domain!("pair index {} out of range 0..{}", idx, m));
                }
                if seen[idx] {
                    return Err(domain!("index {} appears in more than one pair", idx));
                }
                seen[idx] = true;
            }
        }
        Ok(Pairing(pairs))
    }

    /// `(0,1), (2,3), ...`
    pub fn adjacent(m: usize) -> Result<Self> {
        Pairing::new((0..m / 2).map(|i| (2 * i, 2 * i + 1)).collect(), m)
    }

    /// `(0, m/2), (1, m/2+1), ...`
    pub fn half_split(m: usize) -> Result<Self> {
        Pairing::new((0..m / 2).map(|i| (i, i + m / 2)).collect(), m)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len() * 2
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_adjacent(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| p == (2 * i, 2 * i + 1))
    }
}

/// Two columns whose `m × 2` matrix splits into `m/2` complementary row pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionPair {
    pub c0: Seq,
    pub c1: Seq,
    pairing: Pairing,
    conjugate_form: bool,
}

impl CompanionPair {
    /// Witness pairing; each `(x, y)` gives complementary rows.
    pub fn pairing(&self) -> &Pairing {
        &self.pairing
    }

    /// True when every pair satisfies `c1[x] = conj(c0[y])`, `c1[y] = -conj(c0[x])`.
    ///
    /// Pairs in this form have construction columns in `{±c0, ±c1}`.
    pub fn is_conjugate_form(&self) -> bool {
        self.conjugate_form
    }

    pub fn len(&self) -> usize {
        self.c0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn energy(&self) -> u64 {
        self.c0.energy()
    }

    pub fn swap(&self) -> Result<CompanionPair> {
        is_companion_pair(&self.c1, &self.c0)?
            .ok_or_else(|| domain!("swapped pair is not a companion pair"))
    }
}

fn check_companion_lengths(c0: &Seq, c1: &Seq) -> Result<usize> {
    crate::correlation::same_len(c0, c1)?;
    let m = c0.len();
    if m % 2 != 0 {
        return Err(domain!("companion sequences need even length, got {}", m));
    }
    Ok(m)
}

/// Returns a witness pairing iff `(c0, c1)` is a companion pair.
///
/// Row `i` of the companion matrix is `(c0[i], c1[i])`; rows `x`, `y` are a
/// complementary pair iff `v_x = -v_y` with `v_i = c0[i]·conj(c1[i])`.
/// The conjugate-form pairing is preferred when one exists.
pub fn is_companion_pair(c0: &Seq, c1: &Seq) -> Result<Option<CompanionPair>> {
    let m = check_companion_lengths(c0, c1)?;
    if let Some(pairs) = conjugate_form_pairing(c0.elems(), c1.elems()) {
        return Ok(Some(CompanionPair {
            c0: c0.clone(),
            c1: c1.clone(),
            pairing: Pairing::new(pairs, m)?,
            conjugate_form: true,
        }));
    }
    let values: Vec<Element> = c0.iter().zip(c1).map(|(&a, &b)| a.mul_conj(b)).collect();
    Ok(negation_pairing(&values).map(|pairs| CompanionPair {
        c0: c0.clone(),
        c1: c1.clone(),
        pairing: Pairing(pairs),
        conjugate_form: false,
    }))
}

/// Pairs each value with an unmatched negation of itself, first fit in index order.
pub(crate) fn negation_pairing(values: &[Element]) -> Option<Vec<(usize, usize)>> {
    let mut buckets: BTreeMap<Element, Vec<usize>> = BTreeMap::new();
    for (i, &v) in values.iter().enumerate().rev() {
        buckets.entry(v).or_default().push(i);
    }
    let mut used = vec![false; values.len()];
    let mut pairs = Vec::with_capacity(values.len() / 2);
    for (i, &v) in values.iter().enumerate() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let bucket = buckets.get_mut(&-v)?;
        let j = loop {
            let j = bucket.pop()?;
            if !used[j] {
                break j;
            }
        };
        used[j] = true;
        pairs.push((i, j));
    }
    Some(pairs)
}

/// Oriented pairing with `(c0[y], c1[y]) = (conj(c1[x]), -conj(c0[x]))`, if one exists.
///
/// With `φ(a, b) = (conj b, -conj a)`, `φ∘φ = -id`, so rows only pair within
/// `{±t} × {±φ(t)}` and first-fit matching is exact.
pub(crate) fn conjugate_form_pairing(c0: &[Element], c1: &[Element]) -> Option<Vec<(usize, usize)>> {
    let m = c0.len();
    let phi = |i: usize| (c1[i].conj(), -c0[i].conj());
    let mut used = vec![false; m];
    let mut pairs = Vec::with_capacity(m / 2);
    for i in 0..m {
        if used[i] {
            continue;
        }
        used[i] = true;
        let fwd = phi(i);
        let back = (-fwd.0, -fwd.1);
        let j = (i + 1..m).find(|&j| !used[j] && ((c0[j], c1[j]) == fwd || (c0[j], c1[j]) == back))?;
        used[j] = true;
        pairs.push(if (c0[j], c1[j]) == fwd { (i, j) } else { (j, i) });
    }
    Some(pairs)
}

/// Builds a companion of `c0` from a pairing.
///
/// For pair `k`, `flips[k] == false` sets `c1[x] = conj(c0[y])`,
/// `c1[y] = -conj(c0[x])`; `true` flips both signs. `None` means all false.
pub fn make_companion(c0: &Seq, pairing: &Pairing, flips: Option<&[bool]>) -> Result<Seq> {
    let m = c0.len();
    if pairing.len() != m {
        return Err(domain!("pairing covers {} indices, sequence has {}", pairing.len(), m));
    }
    if let Some(signs) = flips {
        if signs.len() != pairing.pairs().len() {
            return Err(domain!("need {} sign choices, got {}", pairing.pairs().len(), signs.len()));
        }
    }
    let mut c1 = vec![Element::ZERO; m];
    for (k, &(x, y)) in pairing.pairs().iter().enumerate() {
        let flip = flips.is_some_and(|s| s[k]);
        let (vx, vy) = (c0[y].conj(), -c0[x].conj());
        if flip {
            c1[x] = -vx;
            c1[y] = -vy;
        } else {
            c1[x] = vx;
            c1[y] = vy;
        }
    }
    Ok(Seq::from_parts(c1, c0.alphabet()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(txt: &str) -> Seq {
        txt.parse().unwrap()
    }

    fn mat(rows: &[&str]) -> SeqMatrix {
        SeqMatrix::from_rows(&rows.iter().map(|r| s(r)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn complementary_examples() {
        assert!(is_complementary_set(&mat(&["+ +", "+ -"])));
        assert!(!is_complementary_set(&mat(&["+ +"])));
    }

    #[test]
    fn mate_of_complementary_pair() {
        let a = s("+ + - + - - - +");
        let b = s("+ - - - - + - -");
        assert!(is_golay_pair(&a, &b).unwrap());
        let c = SeqMatrix::from_rows(&[a.clone(), b.clone()]).unwrap();
        let d = SeqMatrix::from_rows(&[b.conj_reverse(), a.conj_reverse().negate()]).unwrap();
        assert!(are_mates(&c, &d).unwrap());
        assert!(!are_mates(&c, &c).unwrap());
        assert!(is_mo_collection(&[c.clone(), d]).unwrap());
        assert!(are_mates(&c, &mat(&["+ +", "+ -"])).is_err());
    }

    #[test]
    fn golay_sequences() {
        assert!(is_golay_sequence(&s("+ +")).unwrap());
        assert!(!is_golay_sequence(&s("+ + +")).unwrap());
        assert!(is_golay_sequence(&s("+ + - + - - - +")).unwrap());
        assert!(is_golay_sequence(&s("+ + + - + + - +")).unwrap());
        let long = Seq::from_signs("++++++++++++++++++++++").unwrap();
        assert!(matches!(is_golay_sequence(&long), Err(Error::Capability(_))));
        let mate = find_golay_mate(&s("+ + + - + + - +")).unwrap().unwrap();
        assert!(is_golay_pair(&s("+ + + - + + - +"), &mate).unwrap());
    }

    #[test]
    fn golay_length_ten_found() {
        let a = Seq::from_signs("++-+-+--++").unwrap();
        let b = Seq::from_signs("++-+++++--").unwrap();
        assert!(is_golay_pair(&a, &b).unwrap());
        assert!(is_golay_sequence(&a).unwrap());
    }

    #[test]
    fn companion_examples() {
        let c0 = s("+ +j - +j");
        let c1 = s("-j - -j +");
        let pair = is_companion_pair(&c0, &c1).unwrap().unwrap();
        assert!(pair.pairing().is_adjacent());
        assert!(pair.is_conjugate_form());
        assert!(is_companion_pair(&s("+ +"), &s("+ +")).unwrap().is_none());
        assert!(is_companion_pair(&s("+ + +"), &s("+ + -")).is_err());
        assert!(is_companion_pair(&s("+ +"), &s("+ + - -")).is_err());
    }

    #[test]
    fn make_companion_reproduces_reshaping() {
        let c0 = s("+ +j - +j 1+2i 0");
        let adj = Pairing::adjacent(6).unwrap();
        assert_eq!(make_companion(&c0, &adj, None).unwrap(), c0.f_i_conj().unwrap());
        let half = Pairing::half_split(6).unwrap();
        // f_c puts a_{n/2+i} at i and -a_i at n/2+i, the half-split pairing with conjugation
        assert_eq!(make_companion(&c0, &half, None).unwrap(), c0.f_c_conj().unwrap());
        let ternary = s("+ - - + + + 0 +");
        assert_eq!(
            make_companion(&ternary, &Pairing::adjacent(8).unwrap(), None).unwrap(),
            s("- - + + + - + 0")
        );
        assert!(make_companion(&c0, &Pairing::adjacent(4).unwrap(), None).is_err());
        assert!(Pairing::new(alloc::vec![(0, 1), (1, 2)], 4).is_err());
    }

    #[test]
    fn sign_choices_still_companion() {
        let c0 = s("+ - +j 0 -j +");
        let p = Pairing::new(alloc::vec![(0, 3), (5, 1), (2, 4)], 6).unwrap();
        for mask in 0..8u8 {
            let signs: Vec<bool> = (0..3).map(|k| mask >> k & 1 == 1).collect();
            let c1 = make_companion(&c0, &p, Some(&signs)).unwrap();
            let pair = is_companion_pair(&c0, &c1).unwrap().expect("companion");
            assert!(pair.is_conjugate_form());
        }
    }

    #[test]
    fn non_conjugate_form_companion() {
        let c0 = s("+ +");
        let c1 = s("+j -j");
        let pair = is_companion_pair(&c0, &c1).unwrap().unwrap();
        assert!(!pair.is_conjugate_form());
        assert_eq!(pair.pairing().pairs(), &[(0, 1)]);
    }

    #[test]
    fn matrix_blocks() {
        let m = mat(&["+ - + +", "- - + -"]);
        let blocks = m.split_columns(2).unwrap();
        assert_eq!(blocks[1], mat(&["+ +", "+ -"]));
        assert_eq!(SeqMatrix::hconcat_all(&blocks).unwrap(), m);
        assert_eq!(m.column(1), s("- -"));
        assert_eq!(m.transpose().transpose(), m);
        assert!(m.split_columns(3).is_err());
    }
}
