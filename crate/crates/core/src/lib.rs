//! Exact construction and analysis of mutually orthogonal complementary set
//! matrices built from companion sequence pairs, plus companion-pair search.
//!
//! Everything here is `no_std` with `alloc`. IO and threads live in the
//! `compseq` crate.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod complementary;
pub mod construct;
pub mod correlation;
pub mod element;
pub mod error;
pub mod merit;
pub mod search;
pub mod seq;

pub use complementary::{CompanionPair, Pairing, SeqMatrix};
pub use construct::{BuildRecipe, ExtendMode, MoCollection, RSet};
pub use correlation::{CorrelationKind, CorrelationProfile};
pub use element::{Alphabet, Element};
pub use error::{Error, Result};
pub use merit::{cross_merits, merits, Magnitude, MeritKind, MeritReport, MeritValue};
pub use seq::Seq;
