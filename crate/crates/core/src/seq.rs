//! Finite sequences and the elementary sequence operations.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;
use core::str::FromStr;

use crate::element::{Alphabet, Element};
use crate::error::{domain, Error, Result};

/// A non-empty sequence of exact elements tagged with an alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seq {
    elems: Vec<Element>,
    alphabet: Alphabet,
}

impl Seq {
    /// Builds a sequence, checking that every element belongs to `alphabet`.
    pub fn new(elems: Vec<Element>, alphabet: Alphabet) -> Result<Self> {
        if elems.is_empty() {
            return Err(domain!("empty sequence"));
        }
        if let Some((i, e)) = elems.iter().enumerate().find(|(_, e)| !alphabet.contains(**e)) {
            return Err(domain!("element {} at index {} is not in the {} alphabet", e, i, alphabet));
        }
        Ok(Seq { elems, alphabet })
    }

    /// Builds a sequence tagged with the smallest alphabet containing its elements.
    pub fn from_elems(elems: Vec<Element>) -> Result<Self> {
        let alphabet = Alphabet::infer(&elems);
        Seq::new(elems, alphabet)
    }

    /// Binary sequence from a string of `+`/`-` characters (whitespace ignored).
    pub fn from_signs(signs: &str) -> Result<Self> {
        let elems = signs
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '+' => Ok(Element::ONE),
                '-' => Ok(Element::NEG_ONE),
                '0' => Ok(Element::ZERO),
                _ => Err(Error::Parse(alloc::format!("unexpected character `{}` in sign string", c))),
            })
            .collect::<Result<Vec<_>>>()?;
        Seq::from_elems(elems)
    }

    // Operations below preserve the alphabet, so they skip re-validation.
    pub(crate) fn from_parts(elems: Vec<Element>, alphabet: Alphabet) -> Self {
        debug_assert!(!elems.is_empty());
        Seq { elems, alphabet }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// Always false: sequences are non-empty by construction.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    #[inline]
    pub fn elems(&self) -> &[Element] {
        &self.elems
    }

    pub fn into_elems(self) -> Vec<Element> {
        self.elems
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Element> {
        self.elems.iter()
    }

    /// Re-tags the sequence with a wider (or narrower, if valid) alphabet.
    pub fn with_alphabet(self, alphabet: Alphabet) -> Result<Self> {
        Seq::new(self.elems, alphabet)
    }

    /// Energy `Σ|a_i|²`, the lag-0 autocorrelation.
    pub fn energy(&self) -> u64 {
        self.elems.iter().map(|e| e.norm()).sum()
    }

    pub fn zero_count(&self) -> usize {
        self.elems.iter().filter(|e| e.is_zero()).count()
    }

    pub fn reverse(&self) -> Seq {
        Seq::from_parts(self.elems.iter().rev().copied().collect(), self.alphabet)
    }

    pub fn negate(&self) -> Seq {
        Seq::from_parts(self.elems.iter().map(|&e| -e).collect(), self.alphabet)
    }

    pub fn conjugate(&self) -> Seq {
        Seq::from_parts(self.elems.iter().map(|e| e.conj()).collect(), self.alphabet)
    }

    /// `conj(reverse(a))`.
    pub fn conj_reverse(&self) -> Seq {
        Seq::from_parts(self.elems.iter().rev().map(|e| e.conj()).collect(), self.alphabet)
    }

    /// Element-wise multiplication by a unit or scalar.
    pub fn scale(&self, factor: Element) -> Seq {
        Seq::from_elems(self.elems.iter().map(|&e| e * factor).collect()).expect("non-empty")
    }

    /// `(a_0, ..., a_{n-1}, b_0, ..., b_{n-1})`.
    pub fn concat(&self, other: &Seq) -> Seq {
        let mut elems = Vec::with_capacity(self.len() + other.len());
        elems.extend_from_slice(&self.elems);
        elems.extend_from_slice(&other.elems);
        Seq::from_parts(elems, self.alphabet.join(other.alphabet))
    }

    /// `(a_0, b_0, a_1, b_1, ...)`; lengths must match.
    pub fn interleave(&self, other: &Seq) -> Result<Seq> {
        if self.len() != other.len() {
            return Err(domain!("interleave needs equal lengths, got {} and {}", self.len(), other.len()));
        }
        let elems = self.elems.iter().zip(&other.elems).flat_map(|(&a, &b)| [a, b]).collect();
        Ok(Seq::from_parts(elems, self.alphabet.join(other.alphabet)))
    }

    /// `a_0 b_0 + ... + a_{n-1} b_{n-1}`, without conjugation.
    pub fn inner_product(&self, other: &Seq) -> Result<Element> {
        if self.len() != other.len() {
            return Err(domain!("inner product needs equal lengths, got {} and {}", self.len(), other.len()));
        }
        Ok(self.elems.iter().zip(&other.elems).map(|(&a, &b)| a * b).sum())
    }

    /// `Σ a_i conj(b_i)`.
    pub fn hermitian_product(&self, other: &Seq) -> Result<Element> {
        if self.len() != other.len() {
            return Err(domain!("inner product needs equal lengths, got {} and {}", self.len(), other.len()));
        }
        Ok(self.elems.iter().zip(&other.elems).map(|(&a, &b)| a.mul_conj(b)).sum())
    }

    /// `(a_1, -a_0, a_3, -a_2, ..., a_{n-1}, -a_{n-2})`.
    pub fn f_i(&self) -> Result<Seq> {
        self.require_even("f_i")?;
        let elems = self.elems.chunks_exact(2).flat_map(|p| [p[1], -p[0]]).collect();
        Ok(Seq::from_parts(elems, self.alphabet))
    }

    /// `(a_{n/2}, ..., a_{n-1}, -a_0, ..., -a_{n/2-1})`.
    pub fn f_c(&self) -> Result<Seq> {
        self.require_even("f_c")?;
        let half = self.len() / 2;
        let elems = self.elems[half..]
            .iter()
            .copied()
            .chain(self.elems[..half].iter().map(|&e| -e))
            .collect();
        Ok(Seq::from_parts(elems, self.alphabet))
    }

    /// `conj(f_i(a))`.
    pub fn f_i_conj(&self) -> Result<Seq> {
        self.f_i().map(|s| s.conjugate())
    }

    /// `conj(f_c(a))`.
    pub fn f_c_conj(&self) -> Result<Seq> {
        self.f_c().map(|s| s.conjugate())
    }

    fn require_even(&self, op: &str) -> Result<()> {
        if self.len() % 2 != 0 {
            return Err(domain!("{} needs an even-length sequence, got length {}", op, self.len()));
        }
        Ok(())
    }
}

impl Index<usize> for Seq {
    type Output = Element;
    fn index(&self, i: usize) -> &Element {
        &self.elems[i]
    }
}

impl<'a> IntoIterator for &'a Seq {
    type Item = &'a Element;
    type IntoIter = core::slice::Iter<'a, Element>;
    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

/// Whitespace-separated element tokens; the alphabet is inferred.
impl FromStr for Seq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut elems = Vec::new();
        for tok in s.split_whitespace() {
            push_token(tok, &mut elems)?;
        }
        if elems.is_empty() {
            return Err(Error::Parse("empty sequence".into()));
        }
        Seq::from_elems(elems)
    }
}

/// Parses one token, accepting compact runs such as `++-0+` as several elements.
pub fn push_token(tok: &str, out: &mut Vec<Element>) -> Result<()> {
    match tok.parse::<Element>() {
        Ok(e) => out.push(e),
        Err(err) => {
            if tok.len() > 1 && tok.chars().all(|c| matches!(c, '+' | '-' | '0')) {
                out.extend(tok.chars().map(|c| match c {
                    '+' => Element::ONE,
                    '-' => Element::NEG_ONE,
                    _ => Element::ZERO,
                }));
            } else {
                return Err(err);
            }
        }
    }
    Ok(())
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", e)?;
        }
        Ok(())
    }
}
