//! The field Q(w) where w is a primitive cube root of unity, w^2 + w + 1 = 0.
//!
//! Elements are stored as `re + om*w` with rational components.  This is the
//! splitting field needed to locate every singular point of the sextic family:
//! the three A6 points sit at coordinate vertices, but intermediate eliminants
//! pick up factors with zeros at w and w^2.

use std::fmt;

use num_traits::Signed;

use super::scalar::{parse_rat, Field, Rat};

/// An element `re + om*w` of Q(w), with `w^2 + w + 1 = 0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Eisenstein {
    re: Rat,
    om: Rat,
}

impl Eisenstein {
    pub fn new(re: Rat, om: Rat) -> Self {
        Eisenstein { re, om }
    }

    pub fn from_rat(re: Rat) -> Self {
        Eisenstein {
            re,
            om: Field::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Eisenstein::from_rat(super::scalar::rat_int(n))
    }

    /// The root of unity w itself.
    pub fn omega() -> Self {
        Eisenstein {
            re: Field::zero(),
            om: Field::one(),
        }
    }

    /// w^2 = -1 - w.
    pub fn omega_sq() -> Self {
        Eisenstein {
            re: Field::from_int(-1),
            om: Field::from_int(-1),
        }
    }

    pub fn re(&self) -> &Rat {
        &self.re
    }

    pub fn om(&self) -> &Rat {
        &self.om
    }

    /// Galois conjugate, w -> w^2.
    pub fn conj(&self) -> Self {
        Eisenstein {
            re: &self.re - &self.om,
            om: -self.om.clone(),
        }
    }

    /// Field norm `x * conj(x) = re^2 - re*om + om^2`, a nonnegative rational.
    pub fn norm(&self) -> Rat {
        &self.re * &self.re - &self.re * &self.om + &self.om * &self.om
    }

    /// The rational part if the element lies in Q.
    pub fn as_rat(&self) -> Option<&Rat> {
        if Field::is_zero(&self.om) {
            Some(&self.re)
        } else {
            None
        }
    }
}

impl Field for Eisenstein {
    fn zero() -> Self {
        Eisenstein::from_rat(Field::zero())
    }

    fn one() -> Self {
        Eisenstein::from_rat(Field::one())
    }

    fn is_zero(&self) -> bool {
        Field::is_zero(&self.re) && Field::is_zero(&self.om)
    }

    fn add(&self, rhs: &Self) -> Self {
        Eisenstein {
            re: &self.re + &rhs.re,
            om: &self.om + &rhs.om,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Eisenstein {
            re: &self.re - &rhs.re,
            om: &self.om - &rhs.om,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        // (a + b w)(c + d w) = ac - bd + (ad + bc - bd) w, using w^2 = -1 - w.
        let bd = &self.om * &rhs.om;
        Eisenstein {
            re: &self.re * &rhs.re - &bd,
            om: &self.re * &rhs.om + &self.om * &rhs.re - &bd,
        }
    }

    fn neg(&self) -> Self {
        Eisenstein {
            re: -self.re.clone(),
            om: -self.om.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Eisenstein {
            re: &c.re / &n,
            om: &c.om / &n,
        })
    }

    fn from_int(n: i64) -> Self {
        Eisenstein::from_int(n)
    }

    fn parse(text: &str) -> Option<Self> {
        parse_eisenstein(text)
    }

    fn needs_parens(&self) -> bool {
        !Field::is_zero(&self.om) || self.re.is_negative()
    }

    /// Content over the rationals: the two components are treated as one
    /// coefficient list, so dividing by the hint leaves every component an
    /// integer and the collection coprime.
    fn content_hint(items: &[&Self]) -> Self {
        let parts = items.iter().flat_map(|e| [&e.re, &e.om]);
        Eisenstein::from_rat(crate::exact::scalar::rational_content(parts))
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Field::is_zero(&self.om) {
            return write!(f, "{}", self.re);
        }
        let mag = self.om.abs();
        let wpart = if mag == Field::one() {
            "w".to_string()
        } else {
            format!("{mag}*w")
        };
        if Field::is_zero(&self.re) {
            if self.om.is_negative() {
                write!(f, "-{wpart}")
            } else {
                write!(f, "{wpart}")
            }
        } else if self.om.is_negative() {
            write!(f, "{}-{wpart}", self.re)
        } else {
            write!(f, "{}+{wpart}", self.re)
        }
    }
}

/// Parse `p/q`, `p/q+r/s*w`, `w`, `-w`, `3*w-1`, etc.
pub fn parse_eisenstein(text: &str) -> Option<Eisenstein> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return None;
    }
    let mut acc = Field::zero();
    let bytes = text.as_bytes();
    let mut start = 0;
    let mut idx = 0;
    // Split into sign-led chunks; a leading '+'/'-' belongs to the first chunk.
    while idx <= bytes.len() {
        let at_break = idx == bytes.len() || (idx > start && (bytes[idx] == b'+' || bytes[idx] == b'-'));
        if at_break {
            let chunk = &text[start..idx];
            acc = Field::add(&acc, &parse_term(chunk)?);
            start = idx;
        }
        idx += 1;
    }
    Some(acc)
}

fn parse_term(chunk: &str) -> Option<Eisenstein> {
    let (sign, body) = match chunk.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, chunk.strip_prefix('+').unwrap_or(chunk)),
    };
    let value = if body == "w" {
        Eisenstein::omega()
    } else if let Some(coef) = body.strip_suffix("*w") {
        Eisenstein::new(Field::zero(), parse_rat(coef)?)
    } else {
        Eisenstein::from_rat(parse_rat(body)?)
    };
    Some(if sign { Field::neg(&value) } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat;

    #[test]
    fn omega_is_primitive_cube_root() {
        let w = Eisenstein::omega();
        let w2 = Field::mul(&w, &w);
        assert_eq!(w2, Eisenstein::omega_sq());
        assert_eq!(Field::mul(&w2, &w), Field::one());
        let sum = Field::add(&Field::add(&Eisenstein::one(), &w), &w2);
        assert!(Field::is_zero(&sum));
    }

    #[test]
    fn inverse_and_norm() {
        let x = Eisenstein::new(rat(2, 3), rat(-1, 2));
        let xi = Field::inv(&x).unwrap();
        assert_eq!(Field::mul(&x, &xi), Eisenstein::one());
        assert_eq!(x.norm(), rat(2, 3) * rat(2, 3) + rat(1, 3) + rat(1, 4));
        assert_eq!(Field::inv(&Eisenstein::zero()), None);
    }

    #[test]
    fn conjugation_is_multiplicative() {
        let x = Eisenstein::new(rat(1, 2), rat(3, 1));
        let y = Eisenstein::new(rat(-2, 5), rat(1, 7));
        assert_eq!(
            Field::mul(&x, &y).conj(),
            Field::mul(&x.conj(), &y.conj())
        );
    }

    #[test]
    fn display_parse_round_trip() {
        let samples = [
            Eisenstein::from_int(0),
            Eisenstein::from_int(-3),
            Eisenstein::from_rat(rat(5, 6)),
            Eisenstein::omega(),
            Field::neg(&Eisenstein::omega()),
            Eisenstein::new(rat(1, 2), rat(-4, 3)),
            Eisenstein::new(rat(0, 1), rat(7, 2)),
            Eisenstein::new(rat(-1, 1), rat(1, 1)),
        ];
        for x in &samples {
            let text = x.to_string();
            assert_eq!(parse_eisenstein(&text).as_ref(), Some(x), "text {text}");
        }
        assert_eq!(parse_eisenstein("1/2+3*w"), Some(Eisenstein::new(rat(1, 2), rat(3, 1))));
        assert_eq!(parse_eisenstein("w-1"), Some(Eisenstein::new(rat(-1, 1), rat(1, 1))));
        assert_eq!(parse_eisenstein(""), None);
        assert_eq!(parse_eisenstein("1//2"), None);
        assert_eq!(parse_eisenstein("q"), None);
    }
}
