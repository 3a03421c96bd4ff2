//! Scalar fields: a small field abstraction and arbitrary-precision rationals.
//!
//! Every coefficient domain in this crate implements [`Field`].  The trait
//! uses by-reference methods (rather than operator overloads) so that generic
//! polynomial code can stay allocation-conscious; concrete code is free to
//! use the usual operators on the underlying types.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number.
pub type Rat = BigRational;

/// An exact field with decidable equality.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_int(n: i64) -> Self;
    /// Parse a scalar literal, e.g. `-3/4` or `1/2+3*w`.
    fn parse(text: &str) -> Option<Self>;
    /// Whether `Display` output needs parentheses inside a product.
    fn needs_parens(&self) -> bool;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// A canonical nonzero scalar dividing every entry of `items`, used to
    /// keep remainder sequences integer-primitive.  Returning `1` is always
    /// sound; fields with a distinguished subring should return the content
    /// over that subring (for rationals: gcd of numerators over lcm of
    /// denominators).
    fn content_hint(items: &[&Self]) -> Self {
        let _ = items;
        Self::one()
    }
}

/// Integer content of a nonempty list of rationals: gcd of the numerators
/// divided by the lcm of the denominators, always positive.
pub(crate) fn rational_content<'a>(items: impl Iterator<Item = &'a Rat>) -> Rat {
    let mut numer = BigInt::from(0);
    let mut denom = BigInt::from(1);
    for r in items {
        if Zero::is_zero(r) {
            continue;
        }
        numer = numer.gcd(r.numer());
        denom = denom.lcm(r.denom());
    }
    if Zero::is_zero(&numer) {
        return Rat::from_integer(BigInt::from(1));
    }
    Rat::new(numer, denom)
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_int(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn parse(text: &str) -> Option<Self> {
        parse_rat(text)
    }

    fn needs_parens(&self) -> bool {
        self.is_negative()
    }

    fn content_hint(items: &[&Self]) -> Self {
        rational_content(items.iter().copied())
    }
}

/// The rational `p/q`.  Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// The rational `n/1`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse `p` or `p/q` with optional sign; rejects zero denominators.
pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) => d.parse().ok()?,
        None => One::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}
