//! Sparse multivariate polynomials over an exact field.
//!
//! A [`MultiPoly`] owns an ordered list of variable names and a term map
//! keyed by exponent vectors under the graded-lexicographic order (total
//! degree first, then lexicographic on exponents).  The variable list is part
//! of a polynomial's identity: binary operations require identical lists, and
//! the `checked_*` variants report a mismatch as an error instead of
//! panicking.  Invariants maintained by every constructor and operation: no
//! stored coefficient is zero, and every exponent vector has the same length
//! as the variable list.
//!
//! The `Display`/[`MultiPoly::parse`] pair round-trips the canonical text
//! form, e.g. `2*t^2*u0 - 1/2*u1^6 + (1+w)*u2`; terms print in descending
//! graded-lex order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::scalar::Field;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("variable lists differ: [{0}] vs [{1}]")]
    VariableMismatch(String, String),
    #[error("exponent vector has wrong length")]
    ExponentLength,
    #[error("not exactly divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("missing substitution image for `{0}`")]
    MissingImage(String),
    #[error("substitution images must all share one variable list")]
    MixedImageVariables,
    #[error("resultant undefined: both inputs constant in `{0}`")]
    DegenerateResultant(String),
    #[error("resultant of the zero polynomial")]
    ZeroResultant,
    #[error("the zero polynomial has no root structure")]
    ZeroPolynomial,
    #[error("expected a polynomial univariate in `{0}`")]
    NotUnivariate(String),
    #[error("parse error at byte {0}: {1}")]
    Parse(usize, String),
}

/// Exponent vector of a monomial, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn new(exps: Vec<u32>) -> Self {
        Mono(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Componentwise quotient, if `other` divides `self`.
    fn div(&self, other: &Mono) -> Option<Mono> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Mono)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial with coefficients in `K`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly<K: Field> {
    vars: Vec<String>,
    terms: BTreeMap<Mono, K>,
}

fn own_vars(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|v| v.to_string()).collect()
}

fn check_unique(vars: &[String]) -> Result<(), PolyError> {
    for (i, v) in vars.iter().enumerate() {
        if vars[..i].contains(v) {
            return Err(PolyError::DuplicateVariable(v.clone()));
        }
    }
    Ok(())
}

impl<K: Field> MultiPoly<K> {
    /// The zero polynomial in the given variables.
    pub fn zero(vars: &[&str]) -> Self {
        Self::zero_owned(own_vars(vars))
    }

    pub fn zero_owned(vars: Vec<String>) -> Self {
        check_unique(&vars).expect("duplicate variable name");
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// A constant polynomial.
    pub fn constant(vars: &[&str], value: K) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Mono::one(p.vars.len()), value);
        p
    }

    pub fn from_int(vars: &[&str], value: i64) -> Self {
        Self::constant(vars, K::from_int(value))
    }

    /// The polynomial `name` itself.  Panics if `name` is not a variable.
    pub fn var(vars: &[&str], name: &str) -> Self {
        let mut p = Self::zero(vars);
        let idx = p.var_index(name).expect("unknown variable");
        let mut exps = vec![0; p.vars.len()];
        exps[idx] = 1;
        p.add_term(Mono(exps), K::one());
        p
    }

    /// A single term `value * prod(vars[i]^exps[i])`.
    pub fn monomial(vars: &[&str], exps: &[u32], value: K) -> Self {
        let mut p = Self::zero(vars);
        assert_eq!(exps.len(), p.vars.len(), "exponent vector has wrong length");
        p.add_term(Mono(exps.to_vec()), value);
        p
    }

    /// Sum of terms given as `(exponents, coefficient)` pairs; duplicates
    /// accumulate and zero coefficients are dropped.
    pub fn from_terms(
        vars: &[&str],
        terms: impl IntoIterator<Item = (Vec<u32>, K)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(vars);
        let n = p.vars.len();
        for (exps, coef) in terms {
            if exps.len() != n {
                return Err(PolyError::ExponentLength);
            }
            p.add_term(Mono(exps), coef);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &K)> {
        self.terms.iter()
    }

    /// The coefficient of the given exponent vector (zero if absent).
    pub fn coeff(&self, exps: &[u32]) -> K {
        self.terms
            .get(&Mono(exps.to_vec()))
            .cloned()
            .unwrap_or_else(K::zero)
    }

    /// Leading term under graded-lex, if nonzero.
    pub fn leading(&self) -> Option<(&Mono, &K)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    /// Total degree if every term shares it.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Mono::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Homogenise with a fresh variable appended after the existing ones:
    /// every term is padded up to the total degree by powers of `new_var`.
    pub fn homogenized(&self, new_var: &str) -> Result<Self, PolyError> {
        if self.vars.iter().any(|v| v == new_var) {
            return Err(PolyError::DuplicateVariable(new_var.to_string()));
        }
        let degree = self.total_degree().unwrap_or(0);
        let mut vars = self.vars.clone();
        vars.push(new_var.to_string());
        let mut out = Self::zero_owned(vars);
        for (m, c) in &self.terms {
            let mut exps = m.exps().to_vec();
            exps.push(degree - m.degree());
            out.add_term(Mono::new(exps), c.clone());
        }
        Ok(out)
    }

    pub fn degree_in(&self, name: &str) -> Result<u32, PolyError> {
        let idx = self.var_index(name)?;
        Ok(self
            .terms
            .keys()
            .map(|m| m.exps()[idx])
            .max()
            .unwrap_or(0))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The value of a constant polynomial; `None` if any variable occurs.
    pub fn as_constant(&self) -> Option<K> {
        if self.terms.is_empty() {
            return Some(K::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    fn add_term(&mut self, mono: Mono, coef: K) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coef);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn same_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch(
                self.vars.join(","),
                other.vars.join(","),
            ))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_vars(other)?;
        let mut out = Self::zero_owned(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn negated(&self) -> Self {
        let mut out = Self::zero_owned(self.vars.clone());
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, k: &K) -> Self {
        let mut out = Self::zero_owned(self.vars.clone());
        if k.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul(k));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant_owned(self.vars.clone(), K::one());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = out.checked_mul(&base).expect("same vars");
            }
            n >>= 1;
            if n > 0 {
                base = base.checked_mul(&base).expect("same vars");
            }
        }
        out
    }

    /// A constant polynomial over an owned variable list.
    pub fn constant_owned(vars: Vec<String>, value: K) -> Self {
        let mut p = Self::zero_owned(vars);
        p.add_term(Mono::one(p.vars.len()), value);
        p
    }

    /// Monic multiple: divide by the graded-lex leading coefficient.
    /// Divide out the canonical scalar content of the coefficients (see
    /// [`Field::content_hint`]); over the rationals the result has coprime
    /// integer coefficients.  The zero polynomial is returned unchanged.
    pub fn scalar_primitive(&self) -> Self {
        let coeffs: Vec<&K> = self.terms.values().collect();
        if coeffs.is_empty() {
            return self.clone();
        }
        let hint = K::content_hint(&coeffs);
        if hint.is_one() {
            return self.clone();
        }
        self.scale(&hint.inv().expect("content of a nonzero list is nonzero"))
    }

    pub fn normalized(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// The scalar `s` with `other == self * s`, if one exists.
    /// Both zero yields `K::zero()`.
    pub fn proportionality(&self, other: &Self) -> Option<K> {
        if self.is_zero() {
            return other.is_zero().then(K::zero);
        }
        if other.is_zero() {
            return None;
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (m0, c0) = self.leading().unwrap();
        let (m1, c1) = other.leading().unwrap();
        if m0 != m1 {
            return None;
        }
        let s = c1.div(c0)?;
        for (m, c) in &self.terms {
            if other.terms.get(m) != Some(&c.mul(&s)) {
                return None;
            }
        }
        Some(s)
    }

    pub fn partial_derivative(&self, name: &str) -> Result<Self, PolyError> {
        let idx = self.var_index(name)?;
        let mut out = Self::zero_owned(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.exps()[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[idx] = e - 1;
            out.add_term(Mono(exps), c.mul(&K::from_int(e as i64)));
        }
        Ok(out)
    }

    /// Substitute a scalar for one variable; the variable is removed from
    /// the variable list of the result.
    pub fn eval_var(&self, name: &str, value: &K) -> Result<Self, PolyError> {
        let idx = self.var_index(name)?;
        let mut vars = self.vars.clone();
        vars.remove(idx);
        let mut out = Self::zero_owned(vars);
        let mut powers: Vec<K> = vec![K::one()];
        for (m, c) in &self.terms {
            let e = m.exps()[idx] as usize;
            while powers.len() <= e {
                powers.push(powers.last().unwrap().mul(value));
            }
            let mut exps = m.exps().to_vec();
            exps.remove(idx);
            out.add_term(Mono(exps), c.mul(&powers[e]));
        }
        Ok(out)
    }

    /// Evaluate at a full scalar assignment.
    pub fn eval_scalars(&self, values: &BTreeMap<String, K>) -> Result<K, PolyError> {
        for v in &self.vars {
            if !values.contains_key(v) {
                return Err(PolyError::MissingImage(v.clone()));
            }
        }
        let vals: Vec<&K> = self.vars.iter().map(|v| &values[v]).collect();
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(vals[i]);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Substitute a polynomial image for every variable.  All images must
    /// share a single variable list, which becomes the result's list.
    pub fn substitute(&self, images: &BTreeMap<String, Self>) -> Result<Self, PolyError> {
        let mut image_refs: Vec<&Self> = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            image_refs.push(
                images
                    .get(v)
                    .ok_or_else(|| PolyError::MissingImage(v.clone()))?,
            );
        }
        let out_vars: Vec<String> = match image_refs.first() {
            Some(first) => first.vars.clone(),
            None => Vec::new(),
        };
        for img in &image_refs {
            if img.vars != out_vars {
                return Err(PolyError::MixedImageVariables);
            }
        }
        // Cache powers of each image up to the largest exponent used.
        let mut powers: Vec<Vec<Self>> = image_refs
            .iter()
            .map(|_| vec![Self::constant_owned(out_vars.clone(), K::one())])
            .collect();
        let mut out = Self::zero_owned(out_vars);
        for (m, c) in &self.terms {
            let mut term = Self::constant_owned(out.vars.clone(), c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().checked_mul(image_refs[i])?;
                    cache.push(next);
                }
                term = term.checked_mul(&cache[e as usize])?;
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Convenience wrapper over [`MultiPoly::substitute`].
    pub fn substitute_pairs(&self, pairs: &[(&str, &Self)]) -> Result<Self, PolyError> {
        let mut map = BTreeMap::new();
        for (name, image) in pairs {
            map.insert(name.to_string(), (*image).clone());
        }
        self.substitute(&map)
    }

    /// Same exponents, new variable names (positional).
    pub fn with_renamed_vars(&self, new: &[&str]) -> Result<Self, PolyError> {
        if new.len() != self.vars.len() {
            return Err(PolyError::ExponentLength);
        }
        let vars = own_vars(new);
        check_unique(&vars)?;
        Ok(MultiPoly {
            vars,
            terms: self.terms.clone(),
        })
    }

    /// View this polynomial inside a larger variable list (a superset of the
    /// current one, in any order).
    pub fn embed(&self, new: &[&str]) -> Result<Self, PolyError> {
        let vars = own_vars(new);
        check_unique(&vars)?;
        let mut positions = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            let idx = vars
                .iter()
                .position(|w| w == v)
                .ok_or_else(|| PolyError::UnknownVariable(v.clone()))?;
            positions.push(idx);
        }
        let mut out = Self::zero_owned(vars);
        for (m, c) in &self.terms {
            let mut exps = vec![0; out.vars.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[positions[i]] = e;
            }
            out.add_term(Mono(exps), c.clone());
        }
        Ok(out)
    }

    /// Drop a variable that does not occur in any term.
    pub fn without_var(&self, name: &str) -> Result<Self, PolyError> {
        let idx = self.var_index(name)?;
        if self.terms.keys().any(|m| m.exps()[idx] > 0) {
            return Err(PolyError::NotUnivariate(name.to_string()));
        }
        let mut vars = self.vars.clone();
        vars.remove(idx);
        let mut out = Self::zero_owned(vars);
        for (m, c) in &self.terms {
            let mut exps = m.exps().to_vec();
            exps.remove(idx);
            out.add_term(Mono(exps), c.clone());
        }
        Ok(out)
    }

    /// Coefficients of powers of `name`, as polynomials in the remaining
    /// variables.  Index `i` holds the coefficient of `name^i`; the vector is
    /// empty for the zero polynomial, else has length `degree_in(name) + 1`.
    pub fn coeffs_in(&self, name: &str) -> Result<Vec<Self>, PolyError> {
        let idx = self.var_index(name)?;
        if self.is_zero() {
            return Ok(Vec::new());
        }
        let deg = self.degree_in(name)? as usize;
        let mut sub_vars = self.vars.clone();
        sub_vars.remove(idx);
        let mut out = vec![Self::zero_owned(sub_vars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exps()[idx] as usize;
            let mut exps = m.exps().to_vec();
            exps.remove(idx);
            out[e].add_term(Mono(exps), c.clone());
        }
        Ok(out)
    }

    /// Rebuild `sum coeffs[i] * name^i` inside the full variable list.
    /// Each coefficient's variable list must be `full_vars` minus `name`.
    pub fn from_univar(
        full_vars: &[String],
        name: &str,
        coeffs: &[Self],
    ) -> Result<Self, PolyError> {
        check_unique(full_vars)?;
        let idx = full_vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let mut sub_vars = full_vars.to_vec();
        sub_vars.remove(idx);
        let mut out = Self::zero_owned(full_vars.to_vec());
        for (e, coef) in coeffs.iter().enumerate() {
            if coef.vars != sub_vars {
                return Err(PolyError::VariableMismatch(
                    coef.vars.join(","),
                    sub_vars.join(","),
                ));
            }
            for (m, c) in &coef.terms {
                let mut exps = m.exps().to_vec();
                exps.insert(idx, e as u32);
                out.add_term(Mono(exps), c.clone());
            }
        }
        Ok(out)
    }

    /// Leading coefficient with respect to one variable.
    pub fn leading_coeff_in(&self, name: &str) -> Result<Self, PolyError> {
        let coeffs = self.coeffs_in(name)?;
        match coeffs.into_iter().next_back() {
            Some(c) => Ok(c),
            None => {
                let idx = self.var_index(name)?;
                let mut vars = self.vars.clone();
                vars.remove(idx);
                Ok(Self::zero_owned(vars))
            }
        }
    }

    /// Exact quotient `self / divisor`; fails with [`PolyError::NotDivisible`]
    /// unless the division leaves no remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.same_vars(divisor)?;
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (dm, dc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let dc_inv = dc.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quo = Self::zero_owned(self.vars.clone());
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let Some(qm) = rm.div(&dm) else {
                return Err(PolyError::NotDivisible);
            };
            let qc = rc.mul(&dc_inv);
            let mut piece = Self::zero_owned(self.vars.clone());
            piece.add_term(qm, qc);
            quo = quo.checked_add(&piece)?;
            rem = rem.checked_sub(&piece.checked_mul(divisor)?)?;
        }
        Ok(quo)
    }

    /// Map coefficients into another field, dropping any that map to zero.
    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> MultiPoly<L> {
        let mut out = MultiPoly::<L>::zero_owned(self.vars.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Parse the canonical text form against a fixed variable list.
    pub fn parse(text: &str, vars: &[&str]) -> Result<Self, PolyError> {
        parser::parse_poly(text, vars)
    }
}

impl<K: Field> std::ops::Add for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn add(self, rhs: Self) -> MultiPoly<K> {
        self.checked_add(rhs).expect("variable lists differ")
    }
}

impl<K: Field> std::ops::Sub for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn sub(self, rhs: Self) -> MultiPoly<K> {
        self.checked_sub(rhs).expect("variable lists differ")
    }
}

impl<K: Field> std::ops::Mul for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn mul(self, rhs: Self) -> MultiPoly<K> {
        self.checked_mul(rhs).expect("variable lists differ")
    }
}

impl<K: Field> std::ops::Neg for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn neg(self) -> MultiPoly<K> {
        self.negated()
    }
}

impl<K: Field> fmt::Display for MultiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let multi_term = self.terms.len() > 1;
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (lead_minus, mag) = match display_negative(c) {
                Some(mag) => (true, mag),
                None => (false, c.clone()),
            };
            if i == 0 {
                if lead_minus {
                    write!(f, "-")?;
                }
            } else if lead_minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_term(f, &mag, m, &self.vars, multi_term)?;
        }
        Ok(())
    }
}

/// The magnitude of a "displayably negative" scalar, so terms can fold their
/// sign into the separating ` - `.  The rule is syntactic and field-agnostic:
/// `k` folds when its canonical text starts with `-` while `-k`'s does not.
fn display_negative<K: Field>(k: &K) -> Option<K> {
    let text = k.to_string();
    if !text.starts_with('-') {
        return None;
    }
    let neg = k.neg();
    if neg.to_string().starts_with('-') {
        return None;
    }
    Some(neg)
}

fn write_term<K: Field>(
    f: &mut fmt::Formatter<'_>,
    coef: &K,
    mono: &Mono,
    vars: &[String],
    multi_term: bool,
) -> fmt::Result {
    let mut var_parts = Vec::new();
    for (i, &e) in mono.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => var_parts.push(vars[i].clone()),
            _ => var_parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    if var_parts.is_empty() {
        return if coef.needs_parens() && multi_term {
            write!(f, "({coef})")
        } else {
            write!(f, "{coef}")
        };
    }
    let vars_text = var_parts.join("*");
    if coef.is_one() {
        write!(f, "{vars_text}")
    } else if coef.needs_parens() {
        write!(f, "({coef})*{vars_text}")
    } else {
        write!(f, "{coef}*{vars_text}")
    }
}

mod parser {
    use super::{Field, MultiPoly, PolyError};

    #[derive(Debug, PartialEq)]
    enum Tok {
        Plus,
        Minus,
        Star,
        Caret,
        LParen,
        RParen,
        Name(String),
        Number(String),
    }

    fn lex(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
        let bytes = text.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let b = bytes[i];
            match b {
                b' ' | b'\t' | b'\n' | b'\r' => i += 1,
                b'+' => {
                    out.push((i, Tok::Plus));
                    i += 1;
                }
                b'-' => {
                    out.push((i, Tok::Minus));
                    i += 1;
                }
                b'*' => {
                    out.push((i, Tok::Star));
                    i += 1;
                }
                b'^' => {
                    out.push((i, Tok::Caret));
                    i += 1;
                }
                b'(' => {
                    out.push((i, Tok::LParen));
                    i += 1;
                }
                b')' => {
                    out.push((i, Tok::RParen));
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i < bytes.len() && bytes[i] == b'/' {
                        i += 1;
                        let den_start = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        if i == den_start {
                            return Err(PolyError::Parse(i, "expected denominator".into()));
                        }
                    }
                    out.push((start, Tok::Number(text[start..i].to_string())));
                }
                _ if b.is_ascii_alphabetic() || b == b'_' => {
                    let start = i;
                    while i < bytes.len()
                        && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                    {
                        i += 1;
                    }
                    out.push((start, Tok::Name(text[start..i].to_string())));
                }
                _ => {
                    return Err(PolyError::Parse(i, format!("unexpected byte `{}`", b as char)))
                }
            }
        }
        Ok(out)
    }

    pub fn parse_poly<K: Field>(text: &str, vars: &[&str]) -> Result<MultiPoly<K>, PolyError> {
        let toks = lex(text)?;
        let mut pos = 0;
        let poly = parse_sum(&toks, &mut pos, vars, text)?;
        if pos != toks.len() {
            return Err(PolyError::Parse(toks[pos].0, "trailing input".into()));
        }
        Ok(poly)
    }

    fn parse_sum<K: Field>(
        toks: &[(usize, Tok)],
        pos: &mut usize,
        vars: &[&str],
        text: &str,
    ) -> Result<MultiPoly<K>, PolyError> {
        let mut acc = MultiPoly::<K>::zero(vars);
        let mut first = true;
        loop {
            let mut negate = false;
            match toks.get(*pos).map(|(_, t)| t) {
                Some(Tok::Plus) => {
                    *pos += 1;
                }
                Some(Tok::Minus) => {
                    negate = true;
                    *pos += 1;
                }
                _ if first => {}
                None => break,
                Some(_) => {
                    return Err(PolyError::Parse(toks[*pos].0, "expected `+` or `-`".into()))
                }
            }
            let term = parse_term(toks, pos, vars, text)?;
            acc = if negate {
                acc.checked_sub(&term)?
            } else {
                acc.checked_add(&term)?
            };
            first = false;
            if *pos == toks.len() {
                break;
            }
        }
        if first {
            return Err(PolyError::Parse(text.len(), "empty polynomial".into()));
        }
        Ok(acc)
    }

    fn parse_term<K: Field>(
        toks: &[(usize, Tok)],
        pos: &mut usize,
        vars: &[&str],
        text: &str,
    ) -> Result<MultiPoly<K>, PolyError> {
        let mut acc = parse_factor(toks, pos, vars, text)?;
        while let Some((_, Tok::Star)) = toks.get(*pos) {
            *pos += 1;
            let f = parse_factor(toks, pos, vars, text)?;
            acc = acc.checked_mul(&f)?;
        }
        Ok(acc)
    }

    fn parse_factor<K: Field>(
        toks: &[(usize, Tok)],
        pos: &mut usize,
        vars: &[&str],
        text: &str,
    ) -> Result<MultiPoly<K>, PolyError> {
        match toks.get(*pos) {
            Some((at, Tok::LParen)) => {
                // Parenthesised scalar literal, e.g. `(1/2+3*w)`.
                let open = *at;
                let mut depth = 1;
                let mut end = *pos + 1;
                while end < toks.len() {
                    match toks[end].1 {
                        Tok::LParen => depth += 1,
                        Tok::RParen => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                    end += 1;
                }
                if depth != 0 {
                    return Err(PolyError::Parse(open, "unbalanced parenthesis".into()));
                }
                let inner_start = toks[*pos + 1..end]
                    .first()
                    .map(|(at, _)| *at)
                    .unwrap_or(open + 1);
                let inner_end = toks[end].0;
                let literal = &text[inner_start..inner_end];
                let scalar = K::parse(literal).ok_or_else(|| {
                    PolyError::Parse(open, format!("bad scalar literal `{literal}`"))
                })?;
                *pos = end + 1;
                Ok(MultiPoly::constant(vars, scalar))
            }
            Some((at, Tok::Number(n))) => {
                let scalar = K::parse(n)
                    .ok_or_else(|| PolyError::Parse(*at, format!("bad number `{n}`")))?;
                *pos += 1;
                Ok(MultiPoly::constant(vars, scalar))
            }
            Some((at, Tok::Name(name))) => {
                *pos += 1;
                if vars.contains(&name.as_str()) {
                    let exp = parse_exponent(toks, pos)?;
                    let mut exps = vec![0u32; vars.len()];
                    let idx = vars.iter().position(|v| v == name).unwrap();
                    exps[idx] = exp;
                    Ok(MultiPoly::monomial(vars, &exps, K::one()))
                } else if let Some(scalar) = K::parse(name) {
                    // e.g. the literal `w` over Q(w).
                    Ok(MultiPoly::constant(vars, scalar))
                } else {
                    Err(PolyError::Parse(*at, format!("unknown name `{name}`")))
                }
            }
            Some((at, _)) => Err(PolyError::Parse(*at, "expected a factor".into())),
            None => Err(PolyError::Parse(text.len(), "unexpected end of input".into())),
        }
    }

    fn parse_exponent(toks: &[(usize, Tok)], pos: &mut usize) -> Result<u32, PolyError> {
        if let Some((_, Tok::Caret)) = toks.get(*pos) {
            *pos += 1;
            match toks.get(*pos) {
                Some((at, Tok::Number(n))) => {
                    let e: u32 = n
                        .parse()
                        .map_err(|_| PolyError::Parse(*at, format!("bad exponent `{n}`")))?;
                    *pos += 1;
                    Ok(e)
                }
                Some((at, _)) => Err(PolyError::Parse(*at, "expected exponent".into())),
                None => Err(PolyError::Parse(usize::MAX, "expected exponent".into())),
            }
        } else {
            Ok(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::eisenstein::Eisenstein;
    use crate::exact::scalar::{rat, rat_int, Rat};

    fn p(text: &str) -> MultiPoly<Rat> {
        MultiPoly::parse(text, &["x", "y"]).unwrap()
    }

    #[test]
    fn grlex_order() {
        let a = Mono::new(vec![1, 2]); // degree 3
        let b = Mono::new(vec![3, 0]); // degree 3
        let c = Mono::new(vec![0, 2]); // degree 2
        assert!(c < a && a < b);
    }

    #[test]
    fn arithmetic_and_identities() {
        let f = p("x^2 + 2*x*y + y^2");
        let g = p("x + y");
        assert_eq!(&g * &g, f);
        assert_eq!(&f - &f, MultiPoly::zero(&["x", "y"]));
        assert_eq!(g.pow(2), f);
        assert_eq!(f.total_degree(), Some(2));
        assert_eq!(f.homogeneous_degree(), Some(2));
        assert_eq!(p("x^2+1").homogeneous_degree(), None);
    }

    #[test]
    fn variable_mismatch_is_reported() {
        let f = p("x");
        let g = MultiPoly::<Rat>::parse("x", &["x", "z"]).unwrap();
        assert!(matches!(
            f.checked_add(&g),
            Err(PolyError::VariableMismatch(_, _))
        ));
    }

    #[test]
    fn derivative_and_eval() {
        let f = p("x^3*y + 3*x*y^2 - 7");
        assert_eq!(f.partial_derivative("x").unwrap(), p("3*x^2*y + 3*y^2"));
        assert_eq!(
            f.partial_derivative("q"),
            Err(PolyError::UnknownVariable("q".into()))
        );
        let at2 = f.eval_var("x", &rat_int(2)).unwrap();
        assert_eq!(at2, MultiPoly::parse("8*y + 6*y^2 - 7", &["y"]).unwrap());
        let mut values = std::collections::BTreeMap::new();
        values.insert("x".to_string(), rat_int(2));
        values.insert("y".to_string(), rat(1, 2));
        assert_eq!(f.eval_scalars(&values).unwrap(), rat(-3, 2));
    }

    #[test]
    fn substitution_composes() {
        let f = p("x^2 - y");
        let u = MultiPoly::<Rat>::parse("u + v", &["u", "v"]).unwrap();
        let v = MultiPoly::<Rat>::parse("u*v", &["u", "v"]).unwrap();
        let g = f
            .substitute_pairs(&[("x", &u), ("y", &v)])
            .unwrap();
        assert_eq!(
            g,
            MultiPoly::parse("u^2 + 2*u*v + v^2 - u*v", &["u", "v"]).unwrap()
        );
        // Missing image is an error.
        assert!(matches!(
            f.substitute_pairs(&[("x", &u)]),
            Err(PolyError::MissingImage(_))
        ));
    }

    #[test]
    fn exact_division() {
        let f = p("x^3 - y^3");
        let d = p("x - y");
        let q = f.exact_div(&d).unwrap();
        assert_eq!(q, p("x^2 + x*y + y^2"));
        assert_eq!(
            p("x^3 - y^3 + 1").exact_div(&d),
            Err(PolyError::NotDivisible)
        );
        assert_eq!(
            f.exact_div(&MultiPoly::zero(&["x", "y"])),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn coeffs_in_round_trip() {
        let f = p("x^2*y + 2*x - y^3 + 5");
        let cs = f.coeffs_in("x").unwrap();
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[1], MultiPoly::parse("2", &["y"]).unwrap());
        let back = MultiPoly::from_univar(
            &["x".to_string(), "y".to_string()],
            "x",
            &cs,
        )
        .unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn display_parse_round_trip() {
        let samples = [
            "0",
            "1",
            "-1",
            "x",
            "-x + y",
            "x^2*y - 1/2*y^3 + 2",
            "7/3*x^6 - x*y + 5/2",
        ];
        for s in samples {
            let f = p(s);
            assert_eq!(f.to_string(), *s, "canonical text for {s}");
            assert_eq!(p(&f.to_string()), f);
        }
        // Non-canonical input still parses.
        assert_eq!(p("y*x + x*y"), p("2*x*y"));
        assert_eq!(p("x^1"), p("x"));
        assert!(MultiPoly::<Rat>::parse("x + q", &["x", "y"]).is_err());
        assert!(MultiPoly::<Rat>::parse("", &["x", "y"]).is_err());
        assert!(MultiPoly::<Rat>::parse("x +", &["x", "y"]).is_err());
    }

    #[test]
    fn eisenstein_coefficients_round_trip() {
        let w = Eisenstein::omega();
        let f = MultiPoly::<Eisenstein>::parse("(1+w)*x^2 - w*y + 3", &["x", "y"]).unwrap();
        assert_eq!(f.coeff(&[2, 0]), Eisenstein::new(rat_int(1), rat_int(1)));
        assert_eq!(f.coeff(&[0, 1]), crate::exact::scalar::Field::neg(&w));
        let text = f.to_string();
        let g = MultiPoly::<Eisenstein>::parse(&text, &["x", "y"]).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn proportionality_detects_scalar_multiples() {
        let f = p("2*x^2 - 4*y");
        let g = p("-3*x^2 + 6*y");
        assert_eq!(f.proportionality(&g), Some(rat(-3, 2)));
        assert_eq!(f.proportionality(&p("x^2")), None);
        let z = MultiPoly::<Rat>::zero(&["x", "y"]);
        assert_eq!(z.proportionality(&z), Some(rat_int(0)));
        assert_eq!(z.proportionality(&f), None);
    }

    #[test]
    fn embed_and_rename() {
        let f = p("x^2 + y");
        let g = f.embed(&["t", "y", "x"]).unwrap();
        assert_eq!(g.to_string(), "x^2 + y");
        assert_eq!(g.vars(), &["t", "y", "x"]);
        let h = f.with_renamed_vars(&["u", "v"]).unwrap();
        assert_eq!(h.to_string(), "u^2 + v");
        assert!(f.embed(&["x"]).is_err());
    }
}
