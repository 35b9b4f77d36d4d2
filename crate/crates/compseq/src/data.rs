//! Reference data compiled into the binary.

use compseq_core::{Seq, SeqMatrix};
use serde::Deserialize;

use crate::format::parse_matrices;

pub const QUAD_C1_D1: &str = include_str!("../../../data/reference/quad_c1_d1.txt");
pub const QUAD_MO4_WIDE: &str = include_str!("../../../data/reference/quad_mo4_wide.txt");
pub const QUAD_MO4_SETS: &str = include_str!("../../../data/reference/quad_mo4_sets.txt");
pub const GOLAY_INTERLEAVE_C2: &str = include_str!("../../../data/reference/golay_interleave_c2.txt");
pub const TERNARY_C2_D2: &str = include_str!("../../../data/reference/ternary_c2_d2.txt");
pub const BINARY_MIN_PAIRS: &str = include_str!("../../../data/reference/binary_min_pairs.json");
pub const WELCH_LONG_SEEDS: &str = include_str!("../../../data/reference/welch_long_seeds.json");
pub const ANNEALED_HALF_PAIRS: &str = include_str!("../../../data/reference/annealed_half_pairs.json");

pub fn matrices(text: &str) -> Vec<SeqMatrix> {
    parse_matrices(text).expect("bundled matrix data parses")
}

#[derive(Clone, Debug, Deserialize)]
pub struct MinPair {
    pub m: usize,
    pub lambda_a_min: Option<u64>,
    pub s_a_min: Option<u64>,
    pub c0: String,
    pub c1: String,
}

impl MinPair {
    pub fn seqs(&self) -> (Seq, Seq) {
        (Seq::from_signs(&self.c0).expect("bundled"), Seq::from_signs(&self.c1).expect("bundled"))
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct WelchRow {
    pub m: u64,
    pub lambda_w: u64,
    pub prior_lambda_b: u64,
    pub lambda_b: u64,
}

#[derive(Clone, Debug, Deserialize)]
pub struct AnnealedPair {
    pub m: usize,
    pub lambda_b: u64,
    pub lambda_u: u64,
    pub s0: String,
    pub s1: String,
}

impl AnnealedPair {
    pub fn seqs(&self) -> (Seq, Seq) {
        (Seq::from_signs(&self.s0).expect("bundled"), Seq::from_signs(&self.s1).expect("bundled"))
    }
}

#[derive(Deserialize)]
struct Pairs<T> {
    pairs: Vec<T>,
}

#[derive(Deserialize)]
struct Rows<T> {
    rows: Vec<T>,
}

pub fn min_pairs() -> Vec<MinPair> {
    serde_json::from_str::<Pairs<MinPair>>(BINARY_MIN_PAIRS).expect("bundled").pairs
}

pub fn welch_rows() -> Vec<WelchRow> {
    serde_json::from_str::<Rows<WelchRow>>(WELCH_LONG_SEEDS).expect("bundled").rows
}

pub fn annealed_pairs() -> Vec<AnnealedPair> {
    serde_json::from_str::<Pairs<AnnealedPair>>(ANNEALED_HALF_PAIRS).expect("bundled").pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_data_loads() {
        assert_eq!(matrices(QUAD_C1_D1).len(), 2);
        assert_eq!(matrices(QUAD_MO4_WIDE)[0].cols(), 32);
        assert_eq!(matrices(QUAD_MO4_SETS).len(), 4);
        assert_eq!(matrices(TERNARY_C2_D2).len(), 2);
        assert_eq!(welch_rows().len(), 16);
        assert_eq!(annealed_pairs().len(), 3);
        for p in min_pairs() {
            let (a, b) = p.seqs();
            assert_eq!((a.len(), b.len()), (p.m, p.m));
        }
    }
}
