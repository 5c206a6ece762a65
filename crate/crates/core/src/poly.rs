//! Sparse multivariate polynomials over GF(p) and the text interchange format.
//!
//! Text grammar: a signed sum of terms `c*x0^a0*x1^a1*...` where `c` is an integer,
//! `^1` exponents and unit coefficients may be omitted, and whitespace is ignored.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldScalar, PrimeField};
use crate::monomial::{dim, index_of, monomial_basis, Monomial};

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    field: PrimeField,
    terms: BTreeMap<Monomial, u32>,
}

impl Polynomial {
    pub fn zero(nvars: usize, field: PrimeField) -> Self {
        Self {
            nvars,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, field: PrimeField, c: i64) -> Self {
        Self::monomial(Monomial::one(nvars), field, c)
    }

    pub fn monomial(m: Monomial, field: PrimeField, c: i64) -> Self {
        let nvars = m.nvars();
        let mut p = Self::zero(nvars, field);
        p.add_term(m, field.from_i64(c));
        p
    }

    pub fn var(nvars: usize, field: PrimeField, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i), field, 1)
    }

    /// Build from `(coefficient, exponents)` pairs; like terms are combined.
    pub fn from_terms<I>(nvars: usize, field: PrimeField, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Vec<u32>)>,
    {
        let mut p = Self::zero(nvars, field);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(Monomial::new(e), field.from_i64(c));
        }
        p
    }

    /// Homogeneous polynomial of degree `k` from a coordinate vector on the basis of `S^k`.
    pub fn from_dense(nvars: usize, field: PrimeField, k: usize, coords: &[u32]) -> Self {
        let basis = monomial_basis(nvars, k);
        assert_eq!(basis.len(), coords.len());
        let terms = basis
            .into_iter()
            .zip(coords)
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m, c))
            .collect();
        Self {
            nvars,
            field,
            terms,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FieldScalar)> + '_ {
        self.terms
            .iter()
            .map(move |(m, &c)| (m, FieldScalar::new(self.field, c)))
    }

    pub fn coeff(&self, m: &Monomial) -> FieldScalar {
        FieldScalar::new(self.field, self.terms.get(m).copied().unwrap_or(0))
    }

    /// Common degree of all terms, `None` for the zero polynomial or mixed degrees.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let f = self.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        if self.nvars != other.nvars {
            return Err(Error::AmbientMismatch(format!(
                "{} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        let mut out = Self::zero(self.nvars, f);
        for (m, &v) in &self.terms {
            out.add_term(m.clone(), f.mul(v, c));
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = self.field;
        let mut out = Self::zero(self.nvars, f);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                out.add_term(ma.mul(mb), f.mul(ca, cb));
            }
        }
        Ok(out)
    }

    /// Partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let f = self.field;
        let mut out = Self::zero(self.nvars, f);
        for (m, &c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let m2 = m.div_var(i).expect("exponent checked");
            out.add_term(m2, f.mul(c, f.from_u64(e as u64)));
        }
        out
    }

    /// Coordinates on the basis of `S^k`. Terms of other degrees are an error.
    pub fn to_dense(&self, k: usize) -> Result<Vec<u32>> {
        let mut v = vec![0u32; dim(self.nvars, k as i64)];
        for (m, &c) in &self.terms {
            if m.degree() as usize != k {
                return Err(Error::InvalidInput(format!(
                    "term {m} is not of degree {k}"
                )));
            }
            v[index_of(m.exponents())] = c;
        }
        Ok(v)
    }

    /// Parse the text grammar with variables `x0..x{nvars-1}`.
    pub fn parse(text: &str, nvars: usize, field: PrimeField) -> Result<Self> {
        Parser {
            s: text.as_bytes(),
            pos: 0,
            nvars,
            field,
        }
        .parse()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    /// Writes terms from the highest monomial down with centered coefficients;
    /// the output parses back to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // descending degree, and x0-heavy first within a degree
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(a.0.cmp(b.0)));
        for (i, (m, &c)) in terms.into_iter().enumerate() {
            let c = self.field.centered(c);
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let is_one = m.degree() == 0;
            match (mag, is_one) {
                (1, false) => write!(f, "{m}")?,
                (_, true) => write!(f, "{mag}")?,
                _ => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    nvars: usize,
    field: PrimeField,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(&b) = self.s.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            v = match v.checked_mul(10).and_then(|v| v.checked_add((b - b'0') as u64)) {
                Some(v) => v,
                None => return self.err("integer literal overflows 64 bits"),
            };
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        Ok(v)
    }

    fn parse(mut self) -> Result<Polynomial> {
        let mut poly = Polynomial::zero(self.nvars, self.field);
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let mut first = true;
        loop {
            let mut negative = false;
            match self.peek() {
                None if !first => break,
                Some(b'+') if !first => self.pos += 1,
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                Some(_) if first => {}
                Some(c) => return self.err(format!("expected '+' or '-', found '{}'", c as char)),
                None => return self.err("unexpected end of input"),
            }
            first = false;
            let (c, m) = self.term()?;
            let c = self.field.from_u64(c);
            let c = if negative { self.field.neg(c) } else { c };
            poly.add_term(m, c);
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(u64, Monomial)> {
        let mut coeff: u64 = 1;
        let mut exps = vec![0u32; self.nvars];
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let v = self.number()?;
                    coeff = self.field.from_u64(coeff) as u64 * self.field.from_u64(v) as u64;
                }
                Some(b'x') => {
                    self.pos += 1;
                    // no whitespace inside a variable name
                    let start = self.pos;
                    while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
                        self.pos += 1;
                    }
                    if self.pos == start {
                        return self.err("expected variable index after 'x'");
                    }
                    let idx: usize = std::str::from_utf8(&self.s[start..self.pos])
                        .unwrap()
                        .parse()
                        .map_err(|_| Error::Parse {
                            pos: start,
                            msg: "bad variable index".into(),
                        })?;
                    if idx >= self.nvars {
                        return Err(Error::Parse {
                            pos: start,
                            msg: format!("variable x{idx} outside x0..x{}", self.nvars - 1),
                        });
                    }
                    let mut e = 1u64;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        e = self.number()?;
                    }
                    let Some(new) = u32::try_from(e)
                        .ok()
                        .and_then(|e| exps[idx].checked_add(e))
                    else {
                        return self.err("exponent too large");
                    };
                    exps[idx] = new;
                }
                _ => return self.err("expected a coefficient or a variable"),
            }
            factors += 1;
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        debug_assert!(factors > 0);
        Ok((coeff, Monomial::new(exps)))
    }
}
