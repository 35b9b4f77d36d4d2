//! Exact Gaussian-integer sequence elements and alphabet tags.

use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use crate::error::Error;

/// A Gaussian integer `re + im·j`.
///
/// Every sequence entry and every correlation value is one of these, so all
/// equality checks in the crate are exact.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    pub re: i64,
    pub im: i64,
}

impl Element {
    pub const ZERO: Element = Element::new(0, 0);
    pub const ONE: Element = Element::new(1, 0);
    pub const NEG_ONE: Element = Element::new(-1, 0);
    pub const J: Element = Element::new(0, 1);
    pub const NEG_J: Element = Element::new(0, -1);

    #[inline]
    pub const fn new(re: i64, im: i64) -> Self {
        Element { re, im }
    }

    #[inline]
    pub const fn real(re: i64) -> Self {
        Element { re, im: 0 }
    }

    #[inline]
    pub const fn conj(self) -> Self {
        Element::new(self.re, -self.im)
    }

    /// Squared magnitude `re² + im²`.
    #[inline]
    pub const fn norm(self) -> u64 {
        (self.re * self.re + self.im * self.im) as u64
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    #[inline]
    pub const fn is_real(self) -> bool {
        self.im == 0
    }

    /// `self · conj(other)`, the product every correlation sum is built from.
    #[inline]
    pub fn mul_conj(self, other: Element) -> Element {
        Element::new(
            self.re * other.re + self.im * other.im,
            self.im * other.re - self.re * other.im,
        )
    }
}

impl Add for Element {
    type Output = Element;
    #[inline]
    fn add(self, rhs: Element) -> Element {
        Element::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Element {
    type Output = Element;
    #[inline]
    fn sub(self, rhs: Element) -> Element {
        Element::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for Element {
    type Output = Element;
    #[inline]
    fn neg(self) -> Element {
        Element::new(-self.re, -self.im)
    }
}

impl Mul for Element {
    type Output = Element;
    #[inline]
    fn mul(self, rhs: Element) -> Element {
        Element::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Mul<i64> for Element {
    type Output = Element;
    #[inline]
    fn mul(self, rhs: i64) -> Element {
        Element::new(self.re * rhs, self.im * rhs)
    }
}

impl AddAssign for Element {
    #[inline]
    fn add_assign(&mut self, rhs: Element) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl SubAssign for Element {
    #[inline]
    fn sub_assign(&mut self, rhs: Element) {
        self.re -= rhs.re;
        self.im -= rhs.im;
    }
}

impl MulAssign for Element {
    #[inline]
    fn mul_assign(&mut self, rhs: Element) {
        *self = *self * rhs;
    }
}

impl Sum for Element {
    fn sum<I: Iterator<Item = Element>>(iter: I) -> Element {
        iter.fold(Element::ZERO, Add::add)
    }
}

impl From<i64> for Element {
    fn from(re: i64) -> Self {
        Element::real(re)
    }
}

/// Token form: `+`, `-`, `0`, `+j`, `-j`, otherwise `a+bi` / `a-bi`.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (1, 0) => f.write_str("+"),
            (-1, 0) => f.write_str("-"),
            (0, 0) => f.write_str("0"),
            (0, 1) => f.write_str("+j"),
            (0, -1) => f.write_str("-j"),
            (re, im) if im < 0 => write!(f, "{}-{}i", re, -im),
            (re, im) => write!(f, "{}+{}i", re, im),
        }
    }
}

impl FromStr for Element {
    type Err = Error;

    fn from_str(tok: &str) -> Result<Self, Error> {
        match tok {
            "+" | "+1" | "1" => return Ok(Element::ONE),
            "-" | "-1" => return Ok(Element::NEG_ONE),
            "0" => return Ok(Element::ZERO),
            "+j" | "j" | "+i" | "i" => return Ok(Element::J),
            "-j" | "-i" => return Ok(Element::NEG_J),
            _ => {}
        }
        let bad = || Error::Parse(alloc::format!("invalid element token `{}`", tok));
        if let Some(body) = tok.strip_suffix('i').or_else(|| tok.strip_suffix('j')) {
            // split at the sign that starts the imaginary part (not a leading sign)
            let split = body
                .char_indices()
                .skip(1)
                .filter(|&(_, c)| c == '+' || c == '-')
                .map(|(i, _)| i)
                .last()
                .ok_or_else(bad)?;
            let re: i64 = body[..split].parse().map_err(|_| bad())?;
            let im_txt = &body[split..];
            let im: i64 = match im_txt {
                "+" => 1,
                "-" => -1,
                _ => im_txt.parse().map_err(|_| bad())?,
            };
            return Ok(Element::new(re, im));
        }
        tok.parse::<i64>().map(Element::real).map_err(|_| bad())
    }
}

/// Alphabet tag carried by a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alphabet {
    /// {+1, -1}
    Binary,
    /// {+1, 0, -1}
    Ternary,
    /// {+1, -1, +j, -j}
    Quad,
    /// unrestricted Gaussian integers
    Gauss,
}

const BINARY: [Element; 2] = [Element::ONE, Element::NEG_ONE];
const TERNARY: [Element; 3] = [Element::ONE, Element::ZERO, Element::NEG_ONE];
const QUAD: [Element; 4] = [Element::ONE, Element::NEG_ONE, Element::J, Element::NEG_J];

impl Alphabet {
    pub fn contains(self, e: Element) -> bool {
        match self {
            Alphabet::Binary => e.im == 0 && e.re.abs() == 1,
            Alphabet::Ternary => e.im == 0 && e.re.abs() <= 1,
            Alphabet::Quad => e.norm() == 1,
            Alphabet::Gauss => true,
        }
    }

    /// Enumeration order of the symbols; `None` for the unrestricted alphabet.
    pub fn symbols(self) -> Option<&'static [Element]> {
        match self {
            Alphabet::Binary => Some(&BINARY),
            Alphabet::Ternary => Some(&TERNARY),
            Alphabet::Quad => Some(&QUAD),
            Alphabet::Gauss => None,
        }
    }

    pub fn size(self) -> Option<usize> {
        self.symbols().map(<[Element]>::len)
    }

    /// Smallest tag containing every element.
    pub fn infer<'a, I: IntoIterator<Item = &'a Element>>(elems: I) -> Alphabet {
        let mut has_zero = false;
        let mut has_imag = false;
        for &e in elems {
            if e.is_zero() {
                has_zero = true;
            } else if e.norm() != 1 {
                return Alphabet::Gauss;
            } else if !e.is_real() {
                has_imag = true;
            }
        }
        match (has_zero, has_imag) {
            (false, false) => Alphabet::Binary,
            (true, false) => Alphabet::Ternary,
            (false, true) => Alphabet::Quad,
            (true, true) => Alphabet::Gauss,
        }
    }

    /// Smallest tag containing both.
    pub fn join(self, other: Alphabet) -> Alphabet {
        use Alphabet::*;
        match (self, other) {
            (a, b) if a == b => a,
            (Binary, x) | (x, Binary) => x,
            _ => Gauss,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Alphabet::Binary => "binary",
            Alphabet::Ternary => "ternary",
            Alphabet::Quad => "quad",
            Alphabet::Gauss => "gauss",
        }
    }
}

impl FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "binary" | "bin" => Ok(Alphabet::Binary),
            "ternary" | "ter" => Ok(Alphabet::Ternary),
            "quad" | "quadriphase" | "quaternary" => Ok(Alphabet::Quad),
            "gauss" | "gaussian" => Ok(Alphabet::Gauss),
            _ => Err(Error::Parse(alloc::format!("unknown alphabet `{}`", s))),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
