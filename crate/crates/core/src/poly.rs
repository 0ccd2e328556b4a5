//! Sparse multivariate polynomials over `Q` in `x_1, x_2, …`, and the
//! operators `∂_i`, `π_i`, `π̂_i` and `r_{m,n}`.
//!
//! Terms live in a `BTreeMap` keyed by exponent in tail-lex order, so every
//! observable iteration (display, JSON, support) is tail-lex descending and
//! deterministic. No coefficient stored is ever zero.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::composition::WeakComposition;
use crate::error::{Error, Result};

pub type Coeff = BigRational;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<WeakComposition, Coeff>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(WeakComposition::zero())
    }

    /// `x^α` with coefficient 1.
    pub fn monomial(exp: WeakComposition) -> Self {
        Self::term(exp, Coeff::one())
    }

    pub fn term(exp: WeakComposition, coeff: Coeff) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// The variable `x_i` (1-based).
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i];
        e[i - 1] = 1;
        Self::monomial(WeakComposition::new(e))
    }

    pub fn constant(c: Coeff) -> Self {
        Self::term(WeakComposition::zero(), c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (WeakComposition, Coeff)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Sum of monomials with integer coefficients, handy in tests.
    pub fn from_int_terms<E: Into<WeakComposition>>(terms: impl IntoIterator<Item = (E, i64)>) -> Self {
        Self::from_terms(
            terms
                .into_iter()
                .map(|(e, c)| (e.into(), Coeff::from_integer(BigInt::from(c)))),
        )
    }

    pub fn add_term(&mut self, exp: WeakComposition, coeff: Coeff) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in tail-lex descending order of exponent.
    pub fn terms(&self) -> impl Iterator<Item = (&WeakComposition, &Coeff)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exp: &WeakComposition) -> Coeff {
        self.terms.get(exp).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Exponents with nonzero coefficient, tail-lex descending.
    pub fn support(&self) -> Vec<WeakComposition> {
        self.terms.keys().rev().cloned().collect()
    }

    /// The tail-lex-largest exponent.
    pub fn leading_exponent(&self) -> Result<WeakComposition> {
        self.terms
            .keys()
            .next_back()
            .cloned()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_term(&self) -> Result<(WeakComposition, Coeff)> {
        self.terms
            .iter()
            .next_back()
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut degrees = self.terms.keys().map(WeakComposition::size);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    /// Largest index of a variable that occurs.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(WeakComposition::len).max().unwrap_or(0)
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms.keys().map(WeakComposition::max_entry).max().unwrap_or(0)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Every coefficient is a non-negative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiply by the monomial `x^exp`.
    pub fn shift(&self, exp: &WeakComposition) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.add(exp), v.clone()))
                .collect(),
        }
    }

    /// Fails with a resource error when the polynomial has more than `limit`
    /// terms.
    pub fn ensure_within(&self, limit: usize) -> Result<()> {
        if self.len() > limit {
            return Err(Error::resource(
                "term_limit",
                limit,
                format!("polynomial with {} terms", self.len()),
            ));
        }
        Ok(())
    }

    /// Product that aborts as soon as the partial result exceeds `limit`
    /// terms.
    pub fn checked_mul(&self, other: &Self, limit: usize) -> Result<Self> {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
            out.ensure_within(limit)?;
        }
        Ok(out)
    }

    /// `s_i f`: exchange `x_i` and `x_{i+1}`.
    pub fn swap_variables(&self, i: usize) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (e.swapped(i), c.clone())),
        )
    }

    /// `∂_i f = (f − s_i f)/(x_i − x_{i+1})`, computed per monomial:
    /// for `x_i^a x_{i+1}^b` with `a > b` the quotient is
    /// `Σ_{k<a−b} x_i^{b+k} x_{i+1}^{a−1−k}`, negated when `a < b`, and zero
    /// when `a = b`.
    pub fn divided_difference(&self, i: usize) -> Self {
        assert!(i >= 1, "divided differences are indexed from 1");
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let (a, b) = (e.get(i), e.get(i + 1));
            if a == b {
                continue;
            }
            let (lo, hi, coeff) = if a > b { (b, a, c.clone()) } else { (a, b, -c) };
            let mut v = e.padded(e.len().max(i + 1));
            for k in 0..hi - lo {
                v[i - 1] = lo + k;
                v[i] = hi - 1 - k;
                out.add_term(WeakComposition::new(v.clone()), coeff.clone());
            }
        }
        out
    }

    /// `π_i f = ∂_i(x_i f)`.
    pub fn demazure_pi(&self, i: usize) -> Self {
        (&Self::var(i) * self).divided_difference(i)
    }

    /// `π̂_i f = x_i x_{i+1} ∂_i f`.
    pub fn pi_hat(&self, i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i - 1] = 1;
        e[i] = 1;
        self.divided_difference(i).shift(&WeakComposition::new(e))
    }

    /// `r_{m,n}`: the linear map `x^α ↦ x^{r_{m,n}(α)}`. Defined when every
    /// exponent vector lives in `[n]` with entries at most `m`.
    pub fn reverse_complement(&self, m: u32, n: usize) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let r = e.reverse_complement(m, n).map_err(|_| {
                Error::OutOfRange(format!(
                    "r_{{{m},{n}}} is undefined on the monomial x^({e}): need support in [{n}] and exponents <= {m}"
                ))
            })?;
            terms.insert(r, c.clone());
        }
        Ok(Polynomial { terms })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("polynomial JSON: {e}")))
    }
}

/// Formats a rational in lowest terms: `p` for integers, otherwise `p/q`.
pub fn format_coeff(c: &Coeff) -> String {
    c.to_string()
}

pub fn parse_coeff(s: &str) -> Result<Coeff> {
    let c: Coeff = s
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad coefficient {s:?}: {e}")))?;
    Ok(c)
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: WeakComposition,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            terms: self
                .terms()
                .map(|(e, c)| TermRepr {
                    exp: e.clone(),
                    coeff: format_coeff(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PolyRepr::deserialize(d)?;
        let mut terms = BTreeMap::new();
        for t in repr.terms {
            let c = parse_coeff(&t.coeff).map_err(D::Error::custom)?;
            if c.is_zero() {
                return Err(D::Error::custom(format!("zero coefficient for x^({})", t.exp)));
            }
            if terms.insert(t.exp.clone(), c).is_some() {
                return Err(D::Error::custom(format!("duplicate exponent ({})", t.exp)));
            }
        }
        Ok(Polynomial { terms })
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `c*x1^a*x2^b` per term, tail-lex descending, joined by ` + ` / ` - `.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            if !abs.is_one() || e.is_zero() {
                factors.push(format_coeff(&abs));
            }
            for i in 1..=e.len() {
                match e.get(i) {
                    0 => {}
                    1 => factors.push(format!("x{i}")),
                    a => factors.push(format!("x{i}^{a}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(mut self, rhs: Polynomial) -> Polynomial {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}
