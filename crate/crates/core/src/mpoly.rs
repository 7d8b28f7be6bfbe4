//! Sparse multivariate polynomials over `F_q` under the graded lexicographic order
//! with `x1 > x2 > ... > xn`.
//!
//! Variables are 0-based in the API and 1-based (`x1`, `x2`, ...) in text.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};

/// Exponent vector `(α_1, ..., α_n)`. `Ord` is graded lex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn write_vars(&self, out: &mut String) {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(&format!("x{}", i + 1));
            if e > 1 {
                out.push_str(&format!("^{e}"));
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut s = String::new();
        self.write_vars(&mut s);
        write!(f, "{s}")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
            .then_with(|| self.0.len().cmp(&other.0.len()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lex comparison: total degree first, then the leftmost nonzero entry of
/// `a - b` decides.
pub fn gradlex_cmp(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::DimensionMismatch {
            expected: a.nvars(),
            got: b.nvars(),
        });
    }
    Ok(a.cmp(b))
}

/// All exponent vectors in `n` variables of total degree `<= d`, ascending in graded lex.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for deg in 0..=d {
        let mut cur = vec![0u32; n];
        fill_degree(&mut cur, 0, deg, &mut out);
    }
    // within a degree, fill_degree emits lex-descending
    let mut start = 0;
    while start < out.len() {
        let deg = out[start].degree();
        let end = start
            + out[start..]
                .iter()
                .take_while(|m| m.degree() == deg)
                .count();
        out[start..end].reverse();
        start = end;
    }
    out
}

fn fill_degree(cur: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Monomial>) {
    let n = cur.len();
    if n == 0 {
        if left == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    if i == n - 1 {
        cur[i] = left;
        out.push(Monomial(cur.clone()));
        cur[i] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[i] = e;
        fill_degree(cur, i + 1, left - e, out);
    }
    cur[i] = 0;
}

/// A polynomial in `n` variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl MultiPoly {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        MultiPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, nvars: usize, c: FieldElem) -> Self {
        let mut p = MultiPoly::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(field: &Field, nvars: usize) -> Self {
        MultiPoly::constant(field, nvars, FieldElem::ONE)
    }

    /// The variable `x_{i+1}`.
    pub fn var(field: &Field, nvars: usize, i: usize) -> Self {
        MultiPoly::term(field, Monomial::var(nvars, i), FieldElem::ONE)
    }

    pub fn term(field: &Field, m: Monomial, c: FieldElem) -> Self {
        let mut p = MultiPoly::zero(field, m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(
        field: &Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, FieldElem)>,
    ) -> Result<Self> {
        let mut p = MultiPoly::zero(field, nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: m.nvars(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let f = &self.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The multidegree: the graded-lex largest exponent vector in the support.
    pub fn mdeg(&self) -> Result<Monomial> {
        self.terms
            .keys()
            .next_back()
            .cloned()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_coeff(&self) -> FieldElem {
        self.terms
            .values()
            .next_back()
            .copied()
            .unwrap_or(FieldElem::ZERO)
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Result<MultiPoly> {
        let lc = self
            .field
            .inv(self.leading_coeff())
            .map_err(|_| Error::ZeroPolynomial)?;
        Ok(self.scale(lc))
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::ContextMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.try_add(&other.neg_poly())
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let f = &self.field;
        let mut out = MultiPoly::zero(f, self.nvars);
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                out.add_term(m1.mul(m2), f.mul(c1, c2));
            }
        }
        Ok(out)
    }

    fn neg_poly(&self) -> MultiPoly {
        let f = &self.field;
        MultiPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), f.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, s: FieldElem) -> MultiPoly {
        let f = &self.field;
        if s.is_zero() {
            return MultiPoly::zero(f, self.nvars);
        }
        MultiPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), f.mul(c, s)))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.field, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[FieldElem]) -> Result<FieldElem> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let f = &self.field;
        let mut acc = FieldElem::ZERO;
        for (m, &c) in &self.terms {
            let v = m
                .exps()
                .iter()
                .zip(point)
                .fold(c, |v, (&e, &x)| f.mul(v, f.pow(x, e as u64)));
            acc = f.add(acc, v);
        }
        Ok(acc)
    }

    /// Formal partial derivative in `x_{i+1}`.
    pub fn derivative(&self, i: usize) -> MultiPoly {
        let f = &self.field;
        let mut out = MultiPoly::zero(f, self.nvars);
        for (m, &c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial(exps), f.mul(c, f.from_int(e as i64)));
        }
        out
    }

    /// Sends `x_{j+1}` to `x_{map[j]+1}` in a ring with `nvars` variables.
    pub fn rename_vars(&self, map: &[usize], nvars: usize) -> Result<MultiPoly> {
        if map.len() != self.nvars || map.iter().any(|&j| j >= nvars) {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: map.len(),
            });
        }
        let mut out = MultiPoly::zero(&self.field, nvars);
        for (m, &c) in &self.terms {
            let mut exps = vec![0; nvars];
            for (j, &e) in m.exps().iter().enumerate() {
                exps[map[j]] += e;
            }
            out.add_term(Monomial(exps), c);
        }
        Ok(out)
    }

    /// The sum of the terms of total degree `d`.
    pub fn homogeneous_component(&self, d: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m, &c) in &self.terms {
            if m.degree() == d {
                out.add_term(m.clone(), c);
            }
        }
        out
    }

    /// Splits `f = Σ x^β P_β` with `x^β` supported on `block` and each `P_β` nonzero and
    /// free of the block variables. Pairs come out in descending graded lex order of `β`.
    pub fn separate(&self, block: &[usize]) -> Result<Vec<(Monomial, MultiPoly)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if let Some(&bad) = block.iter().find(|&&i| i >= self.nvars) {
            return Err(Error::InvalidArgument(format!(
                "variable index {bad} out of range"
            )));
        }
        let mut in_block = vec![false; self.nvars];
        for &i in block {
            in_block[i] = true;
        }
        let mut parts: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
        for (m, &c) in &self.terms {
            let (mut beta, mut rest) = (vec![0; self.nvars], vec![0; self.nvars]);
            for (i, &e) in m.exps().iter().enumerate() {
                if in_block[i] {
                    beta[i] = e;
                } else {
                    rest[i] = e;
                }
            }
            parts
                .entry(Monomial(beta))
                .or_insert_with(|| MultiPoly::zero(&self.field, self.nvars))
                .add_term(Monomial(rest), c);
        }
        Ok(parts.into_iter().rev().collect())
    }

    /// Reads the textual form, e.g. `"3*x1^2*x2 + 4*x3"`.
    pub fn parse(field: &Field, nvars: usize, s: &str) -> Result<MultiPoly> {
        Parser {
            field,
            nvars,
            s: s.as_bytes(),
            pos: 0,
        }
        .polynomial()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (m, &c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            if m.is_one() {
                out.push_str(&self.field.format_elem(c));
                continue;
            }
            if !c.is_one() {
                out.push_str(&self.field.format_elem(c));
                out.push('*');
            }
            m.write_vars(&mut out);
        }
        write!(f, "{out}")
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    /// Panics if the operands live in different rings; see [`MultiPoly::try_add`].
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("polynomials from the same ring")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("polynomials from the same ring")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("polynomials from the same ring")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.neg_poly()
    }
}

struct Parser<'a> {
    field: &'a Field,
    nvars: usize,
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
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
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected a number"))
    }

    fn polynomial(mut self) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(self.field, self.nvars);
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(b'+') if !first => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                None if !first => break,
                _ if first => false,
                _ => return Err(self.err("expected '+' or '-'")),
            };
            first = false;
            let (m, mut c) = self.term()?;
            if negate {
                c = self.field.neg(c);
            }
            out.add_term(m, c);
            if self.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, FieldElem)> {
        let mut coeff = None;
        match self.peek() {
            Some(b'[') => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos] != b']' {
                    self.pos += 1;
                }
                if self.pos == self.s.len() {
                    return Err(self.err("unterminated coefficient"));
                }
                self.pos += 1;
                let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                coeff = Some(self.field.parse_elem(text)?);
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.number()?;
                coeff = Some(
                    self.field
                        .from_int((v % self.field.characteristic()) as i64),
                );
            }
            _ => {}
        }
        if coeff.is_some() && self.peek() == Some(b'*') {
            self.pos += 1;
            if self.peek() != Some(b'x') {
                return Err(self.err("expected a variable after '*'"));
            }
        }
        let mut exps = vec![0u32; self.nvars];
        let mut saw_var = false;
        while self.peek() == Some(b'x') {
            self.pos += 1;
            let idx = self.number()? as usize;
            if idx == 0 || idx > self.nvars {
                return Err(self.err(&format!("variable x{idx} outside x1..x{}", self.nvars)));
            }
            let mut e = 1u32;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                e = u32::try_from(self.number()?).map_err(|_| self.err("exponent too large"))?;
            }
            exps[idx - 1] += e;
            saw_var = true;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                if self.peek() != Some(b'x') {
                    return Err(self.err("expected a variable after '*'"));
                }
            }
        }
        if coeff.is_none() && !saw_var {
            return Err(self.err("expected a term"));
        }
        Ok((Monomial(exps), coeff.unwrap_or(FieldElem::ONE)))
    }
}
