//! The build pipeline from a companion pair to an MO collection, with its mate
//! and extension steps.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::complementary::{is_companion_pair, is_complementary_set, is_mo_collection, Pairing, SeqMatrix};
use crate::correlation::acf;
use crate::element::Element;
use crate::error::{domain, Error, Result};
use crate::seq::Seq;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtendMode {
    Concat,
    Interleave,
}

impl ExtendMode {
    pub fn name(self) -> &'static str {
        match self {
            ExtendMode::Concat => "concat",
            ExtendMode::Interleave => "interleave",
        }
    }
}

impl FromStr for ExtendMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "concat" | "c" => Ok(ExtendMode::Concat),
            "interleave" | "i" => Ok(ExtendMode::Interleave),
            _ => Err(Error::Parse(alloc::format!("unknown extension mode `{}`", s))),
        }
    }
}

impl fmt::Display for ExtendMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `p` length extensions followed by `t` size extensions, each with its mode.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BuildRecipe {
    pub length_modes: Vec<ExtendMode>,
    pub size_modes: Vec<ExtendMode>,
}

impl BuildRecipe {
    pub fn new(length_modes: Vec<ExtendMode>, size_modes: Vec<ExtendMode>) -> Self {
        BuildRecipe { length_modes, size_modes }
    }

    /// Same mode at every step.
    pub fn uniform(p: usize, length_mode: ExtendMode, t: usize, size_mode: ExtendMode) -> Self {
        BuildRecipe { length_modes: alloc::vec![length_mode; p], size_modes: alloc::vec![size_mode; t] }
    }

    pub fn p(&self) -> usize {
        self.length_modes.len()
    }

    pub fn t(&self) -> usize {
        self.size_modes.len()
    }

    /// `n^(p) = 2^(p+1)`, the width of `C^(p)`.
    pub fn set_length(&self) -> usize {
        1 << (self.p() + 1)
    }

    /// `(k, rows, set width)` of the built collection for a seed of length `m`.
    pub fn dims(&self, m: usize) -> (usize, usize, usize) {
        let t = self.t();
        (1 << (t + 1), m << t, self.set_length() << t)
    }
}

/// The rows of `R^(v)_c`, or the union for a seed pair, in matrix order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RSet {
    level: usize,
    members: Vec<Seq>,
}

impl RSet {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn members(&self) -> &[Seq] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &Seq) -> bool {
        self.members.iter().any(|m| m.elems() == s.elems())
    }
}

/// Rows of `R^(v)_c`: `R^(0) = [c; -c]`, `R^(v) = [R R; R (-R)]`.
pub fn rset(c: &Seq, v: usize) -> RSet {
    RSet { level: v, members: rset_rows(c, v) }
}

fn rset_rows(c: &Seq, v: usize) -> Vec<Seq> {
    let mut rows = alloc::vec![c.clone(), c.negate()];
    for _ in 0..v {
        let mut next: Vec<Seq> = rows.iter().map(|r| r.concat(r)).collect();
        next.extend(rows.iter().map(|r| r.concat(&r.negate())));
        rows = next;
    }
    rows
}

/// `R^(v)_c ∪ R^(v)_d`, duplicates dropped.
pub fn rset_pair(c: &Seq, d: &Seq, v: usize) -> Result<RSet> {
    crate::correlation::same_len(c, d)?;
    let mut members = rset_rows(c, v);
    for r in rset_rows(d, v) {
        if !members.contains(&r) {
            members.push(r);
        }
    }
    Ok(RSet { level: v, members })
}

/// Mate of `C` with rows grouped `(0,1), (2,3), ...`.
pub fn mate_of(c: &SeqMatrix) -> Result<SeqMatrix> {
    let pairing = Pairing::adjacent(c.rows())?;
    mate_with(c, &pairing)
}

/// Mate of `C` for an arbitrary row pairing.
///
/// For each pair `(x, y)`: `D_x = conj(rev(r_y))`, `D_y = -conj(rev(r_x))`.
pub fn mate_with(c: &SeqMatrix, pairing: &Pairing) -> Result<SeqMatrix> {
    if pairing.len() != c.rows() {
        return Err(domain!("pairing covers {} rows, matrix has {}", pairing.len(), c.rows()));
    }
    for (k, &(x, y)) in pairing.pairs().iter().enumerate() {
        let pair = SeqMatrix::from_raw(
            c.row(x).iter().chain(c.row(y)).copied().collect(),
            2,
            c.cols(),
            c.alphabet(),
        );
        if !is_complementary_set(&pair) {
            return Err(domain!("row pair {} (rows {} and {}) is not a complementary pair", k, x, y));
        }
    }
    Ok(mate_unchecked(c, pairing))
}

pub(crate) fn mate_unchecked(c: &SeqMatrix, pairing: &Pairing) -> SeqMatrix {
    let n = c.cols();
    let mut data = alloc::vec![Element::ZERO; c.rows() * n];
    for &(x, y) in pairing.pairs() {
        for j in 0..n {
            data[x * n + j] = c.get(y, n - 1 - j).conj();
            data[y * n + j] = -c.get(x, n - 1 - j).conj();
        }
    }
    SeqMatrix::from_raw(data, c.rows(), n, c.alphabet())
}

/// `C^(p+1)` from `C^(p)` with adjacent row pairs.
pub fn length_extend(c: &SeqMatrix, mode: ExtendMode) -> Result<SeqMatrix> {
    let pairing = Pairing::adjacent(c.rows())?;
    length_extend_with(c, &pairing, mode)
}

pub fn length_extend_with(c: &SeqMatrix, pairing: &Pairing, mode: ExtendMode) -> Result<SeqMatrix> {
    let d = mate_with(c, pairing)?;
    join(c, &d, mode)
}

/// Row-wise juxtaposition `[A B]` or column interleaving `A ⊗ B`.
pub fn join(a: &SeqMatrix, b: &SeqMatrix, mode: ExtendMode) -> Result<SeqMatrix> {
    match mode {
        ExtendMode::Concat => a.hconcat(b),
        ExtendMode::Interleave => a.interleave(b),
    }
}

/// `k` complementary sets of equal size laid out in one wide matrix.
///
/// Sets are column-index groups. Concatenating size extensions place the two
/// halves of a new set in different blocks, so groups need not be contiguous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoCollection {
    matrix: SeqMatrix,
    sets: Vec<Vec<usize>>,
}

impl MoCollection {
    /// Splits a wide matrix into contiguous sets of `set_width` columns.
    pub fn new(matrix: SeqMatrix, set_width: usize) -> Result<Self> {
        if set_width == 0 || matrix.cols() % set_width != 0 {
            return Err(domain!("set width {} does not divide {} columns", set_width, matrix.cols()));
        }
        let sets = (0..matrix.cols() / set_width).map(|b| (b * set_width..(b + 1) * set_width).collect()).collect();
        Ok(MoCollection { matrix, sets })
    }

    /// Uses explicit column groups, which must partition the columns into equal sizes.
    pub fn with_sets(matrix: SeqMatrix, sets: Vec<Vec<usize>>) -> Result<Self> {
        let width = sets.first().map_or(0, Vec::len);
        if width == 0 || sets.iter().any(|s| s.len() != width) {
            return Err(domain!("column groups must be non-empty and equal in size"));
        }
        let mut seen = alloc::vec![false; matrix.cols()];
        for &c in sets.iter().flatten() {
            if c >= matrix.cols() || core::mem::replace(&mut seen[c], true) {
                return Err(domain!("column {} is out of range or used twice", c));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(domain!("column groups do not cover every column"));
        }
        Ok(MoCollection { matrix, sets })
    }

    pub fn from_sets(sets: &[SeqMatrix]) -> Result<Self> {
        let width = sets.first().ok_or_else(|| domain!("no sets given"))?.cols();
        MoCollection::new(SeqMatrix::hconcat_all(sets)?, width)
    }

    pub fn matrix(&self) -> &SeqMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SeqMatrix {
        self.matrix
    }

    pub fn set_width(&self) -> usize {
        self.sets[0].len()
    }

    /// Number of sets `k`.
    pub fn k(&self) -> usize {
        self.sets.len()
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    /// Column indices of each set, in row-sequence order.
    pub fn set_columns(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> SeqMatrix {
        let cols = &self.sets[i];
        let mut data = Vec::with_capacity(self.rows() * cols.len());
        for r in 0..self.rows() {
            data.extend(cols.iter().map(|&c| self.matrix.get(r, c)));
        }
        SeqMatrix::from_raw(data, self.rows(), cols.len(), self.matrix.alphabet())
    }

    pub fn sets(&self) -> Vec<SeqMatrix> {
        (0..self.k()).map(|i| self.set(i)).collect()
    }

    pub fn columns(&self) -> Vec<Seq> {
        self.matrix.columns()
    }

    pub fn is_mo(&self) -> bool {
        is_mo_collection(&self.sets()).unwrap_or(false)
    }
}

/// `M^{2k}_{2m,2n}` from `M^k_{m,n}`.
pub fn size_extend(mo: &MoCollection, mode: ExtendMode) -> Result<MoCollection> {
    if !mo.is_mo() {
        return Err(domain!("size extension needs a valid MO collection"));
    }
    Ok(size_extend_unchecked(mo, mode))
}

/// `[M M  (-M) M; (-M) M  M M]` over the whole wide matrix, juxtaposition
/// read as concat or interleave.
///
/// New set `j` of each half takes old set `j` from both copies of `M`.
pub(crate) fn size_extend_unchecked(mo: &MoCollection, mode: ExtendMode) -> MoCollection {
    let m = &mo.matrix;
    let w = m.cols();
    let neg = m.negate();
    let j = |a: &SeqMatrix, b: &SeqMatrix| join(a, b, mode).expect("equal shapes");
    let left_top = j(m, m);
    let left_bottom = j(&neg, m);
    let top = left_top.hconcat(&left_bottom).expect("equal rows");
    let bottom = left_bottom.hconcat(&left_top).expect("equal rows");
    let sets = extended_sets(&mo.sets, w, mode);
    MoCollection { matrix: top.vconcat(&bottom).expect("equal widths"), sets }
}

/// Set columns after one size extension of a `w`-column wide matrix.
///
/// New set `j` of each half holds old set `j`'s columns from both copies of
/// the old matrix.
fn extended_sets(sets: &[Vec<usize>], w: usize, mode: ExtendMode) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(2 * sets.len());
    for half in 0..2 {
        let base = half * 2 * w;
        for cols in sets {
            let grouped: Vec<usize> = match mode {
                ExtendMode::Concat => cols.iter().map(|&c| base + c).chain(cols.iter().map(|&c| base + w + c)).collect(),
                ExtendMode::Interleave => cols.iter().flat_map(|&c| [base + 2 * c, base + 2 * c + 1]).collect(),
            };
            out.push(grouped);
        }
    }
    out
}

/// Set columns of a matrix made from `k0` contiguous sets of width `w0`
/// followed by the given size extensions.
pub fn extension_layout(k0: usize, w0: usize, modes: &[ExtendMode]) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = (0..k0).map(|i| (i * w0..(i + 1) * w0).collect()).collect();
    let mut w = k0 * w0;
    for &mode in modes {
        sets = extended_sets(&sets, w, mode);
        w *= 4;
    }
    sets
}

/// Looks for a set layout under which a wide matrix is MO: contiguous
/// blocks first, then every size-extension history consistent with the
/// shape. Returns the collection and the extension modes it assumed.
pub fn infer_mo_layout(matrix: &SeqMatrix, set_width: usize) -> Result<Option<(MoCollection, Vec<ExtendMode>)>> {
    if set_width == 0 || matrix.cols() % set_width != 0 {
        return Err(domain!("{} columns do not split into sets of width {}", matrix.cols(), set_width));
    }
    let k = matrix.cols() / set_width;
    let mut histories: Vec<Vec<ExtendMode>> = vec![Vec::new()];
    let mut level = histories.clone();
    let mut t = 0;
    while k % (2 << t) == 0 && set_width % (2 << t) == 0 && matrix.rows() % (2 << t) == 0 {
        level = level
            .iter()
            .flat_map(|h| [ExtendMode::Concat, ExtendMode::Interleave].map(|m| [h.as_slice(), &[m]].concat()))
            .collect();
        histories.extend(level.iter().cloned());
        t += 1;
    }
    for modes in histories {
        let t = modes.len();
        let sets = extension_layout(k >> t, set_width >> t, &modes);
        let mo = MoCollection::with_sets(matrix.clone(), sets)?;
        if mo.is_mo() {
            return Ok(Some((mo, modes)));
        }
    }
    Ok(None)
}

/// Full pipeline: companion matrix, `p` length extensions, mate, `t` size extensions.
pub fn build(c0: &Seq, c1: &Seq, recipe: &BuildRecipe) -> Result<MoCollection> {
    let pair = is_companion_pair(c0, c1)?
        .ok_or_else(|| domain!("({}) and ({}) are not a companion pair", c0, c1))?;
    let pairing = pair.pairing();
    let mut c = SeqMatrix::from_columns(&[c0.clone(), c1.clone()])?;
    for &mode in &recipe.length_modes {
        let d = mate_unchecked(&c, pairing);
        c = join(&c, &d, mode)?;
    }
    let d = mate_unchecked(&c, pairing);
    let mut mo = MoCollection::new(c.hconcat(&d)?, c.cols())?;
    for &mode in &recipe.size_modes {
        mo = size_extend_unchecked(&mo, mode);
    }
    Ok(mo)
}

/// Every column of `mo` is in `R^(t)_{c0,c1}`.
pub fn verify_column_membership(mo: &MoCollection, c0: &Seq, c1: &Seq, t: usize) -> Result<bool> {
    let set = rset_pair(c0, c1, t)?;
    if mo.rows() != c0.len() << t {
        return Ok(false);
    }
    Ok(mo.columns().iter().all(|col| set.contains(col)))
}

/// Seeds `(h00, h01, h10, h11)` of length `2^(q+1)`.
///
/// `h_{i,0} <- h_{i,0} rev(h_{i,1})`, `h_{i,1} <- h_{i,1} (-rev(h_{i,0}))`.
pub fn golay_seed(q: usize) -> (Seq, Seq, Seq, Seq) {
    let b = |s: &str| Seq::from_signs(s).expect("literal");
    let mut h = [[b("++"), b("+-")], [b("+-"), b("++")]];
    for _ in 0..q {
        for hi in h.iter_mut() {
            let a = hi[0].concat(&hi[1].reverse());
            let c = hi[1].concat(&hi[0].reverse().negate());
            *hi = [a, c];
        }
    }
    let [[h00, h01], [h10, h11]] = h;
    (h00, h01, h10, h11)
}

/// Direct ACF of every column, for oracle comparisons.
pub fn column_acfs(m: &SeqMatrix) -> Vec<Vec<Element>> {
    (0..m.cols()).map(|j| acf(m.column(j).elems())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complementary::{are_mates, is_golay_pair};

    fn s(txt: &str) -> Seq {
        txt.parse().unwrap()
    }

    fn mat(rows: &[&str]) -> SeqMatrix {
        SeqMatrix::from_rows(&rows.iter().map(|r| s(r)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rset_levels() {
        let c = s("+ -");
        assert_eq!(rset(&c, 0).members(), &[s("+ -"), s("- +")]);
        let r1 = rset(&c, 1);
        assert_eq!(r1.len(), 4);
        assert!(r1.contains(&s("+ - - +")));
        assert!(r1.contains(&s("- + - +")));
        let d = s("+ +");
        assert_eq!(rset_pair(&c, &d, 2).unwrap().len(), 16);
        assert_eq!(rset_pair(&c, &c.negate(), 1).unwrap().len(), 4);
    }

    #[test]
    fn mate_closed_form() {
        let c = mat(&["+ + - +", "+ + + -"]);
        let d = mate_of(&c).unwrap();
        assert_eq!(d, mat(&["- + + +", "- + - -"]));
        assert!(are_mates(&c, &d).unwrap());
        let dd = mate_of(&d).unwrap();
        assert_eq!(dd, c.negate());
    }

    #[test]
    fn mate_rejects_bad_pair() {
        let c = mat(&["+ +", "+ -", "+ +", "+ +"]);
        match mate_of(&c) {
            Err(Error::Domain(msg)) => assert!(msg.contains("row pair 1")),
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn golay_seed_small() {
        let (h00, h01, h10, h11) = golay_seed(0);
        assert_eq!((h00.clone(), h01.clone()), (s("+ +"), s("+ -")));
        assert_eq!((h10, h11), (s("+ -"), s("+ +")));
        for q in 0..5 {
            let (h00, h01, h10, h11) = golay_seed(q);
            assert_eq!(h00.len(), 2 << q);
            assert!(is_golay_pair(&h00, &h01).unwrap());
            assert!(is_golay_pair(&h10, &h11).unwrap());
            assert_eq!(h00.f_i().unwrap(), h10);
            assert_eq!(h01.f_i().unwrap(), h11.negate());
        }
    }

    #[test]
    fn build_dims_and_validity() {
        let c0 = s("+ +j - +j");
        let c1 = c0.f_i_conj().unwrap();
        for p in 0..3 {
            for t in 0..3 {
                for (lm, sm) in [(ExtendMode::Concat, ExtendMode::Interleave), (ExtendMode::Interleave, ExtendMode::Concat)] {
                    let r = BuildRecipe::uniform(p, lm, t, sm);
                    let mo = build(&c0, &c1, &r).unwrap();
                    let (k, rows, w) = r.dims(4);
                    assert_eq!((mo.k(), mo.rows(), mo.set_width()), (k, rows, w));
                    assert!(mo.is_mo());
                    assert!(verify_column_membership(&mo, &c0, &c1, t).unwrap());
                }
            }
        }
    }

    #[test]
    fn build_with_non_adjacent_pairing() {
        // half-split companion: rows i and i+m/2 are paired
        let c0 = s("+ - - + + -");
        let c1 = c0.f_c_conj().unwrap();
        let r = BuildRecipe::uniform(2, ExtendMode::Interleave, 1, ExtendMode::Concat);
        let mo = build(&c0, &c1, &r).unwrap();
        assert!(mo.is_mo());
        assert!(verify_column_membership(&mo, &c0, &c1, 1).unwrap());
        assert!(build(&c0, &c0, &r).is_err());
    }

    #[test]
    fn size_extend_rejects_invalid() {
        let m = MoCollection::new(mat(&["+ +", "+ +"]), 2).unwrap();
        assert!(size_extend(&m, ExtendMode::Concat).is_err());
    }

    #[test]
    fn layout_inference_recovers_built_sets() {
        let c0: Seq = "+ +j - +j".parse().unwrap();
        let c1 = c0.f_i_conj().unwrap();
        for modes in [[ExtendMode::Concat, ExtendMode::Interleave], [ExtendMode::Interleave, ExtendMode::Concat]] {
            let mo = build(&c0, &c1, &BuildRecipe::new(vec![ExtendMode::Concat], modes.to_vec())).unwrap();
            assert!(!MoCollection::new(mo.matrix().clone(), mo.set_width()).unwrap().is_mo());
            let (found, _) = infer_mo_layout(mo.matrix(), mo.set_width()).unwrap().unwrap();
            assert!(found.is_mo());
        }
    }
}
