//! Arithmetic in `F_q`, `q = p^k`, with elements packed into a single word.
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` where
//! `c_0 + c_1 t + ... + c_{k-1} t^{k-1}` is its residue modulo the defining polynomial.
//! For prime fields this is just the residue in `0..p`.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Extension fields up to this size get discrete log / exponential tables.
const LOG_TABLE_LIMIT: u64 = 1 << 20;

/// Shared handle to a field context.
pub type Field = Arc<FieldCtx>;

/// An element of some `F_q`. Meaningless without the [`FieldCtx`] it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// The packed base-`p` index of this element.
    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }

    pub(crate) fn from_packed(v: u64) -> Self {
        FieldElem(v)
    }
}

struct LogTables {
    exp: Vec<u64>,
    log: Vec<u64>,
}

pub struct FieldCtx {
    p: u64,
    k: u32,
    q: u64,
    modulus: Option<Vec<u64>>,
    order_factors: Vec<(u64, u32)>,
    tables: Option<LogTables>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds `F_{p^k}`. For `k > 1` the defining polynomial is the smallest monic
    /// irreducible of degree `k` when coefficient tuples `(c_0, ..., c_{k-1})` are
    /// compared lexicographically.
    pub fn new(p: u64, k: u32) -> Result<Field> {
        if k == 0 {
            return Err(Error::InvalidArgument(
                "extension degree must be >= 1".into(),
            ));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= 1u64 << 63)
            .ok_or(Error::FieldTooLarge { p, k })?;
        let modulus = if k > 1 {
            Some(smallest_irreducible(p, k as usize))
        } else {
            None
        };
        let mut ctx = FieldCtx {
            p,
            k,
            q,
            modulus,
            order_factors: factorize(q - 1),
            tables: None,
        };
        if k > 1 && q <= LOG_TABLE_LIMIT {
            let g = ctx.primitive_element();
            let mut exp = Vec::with_capacity((q - 1) as usize);
            let mut log = vec![0u64; q as usize];
            let mut x = FieldElem::ONE;
            for i in 0..q - 1 {
                exp.push(x.0);
                log[x.0 as usize] = i;
                x = ctx.mul(x, g);
            }
            ctx.tables = Some(LogTables { exp, log });
        }
        Ok(Arc::new(ctx))
    }

    /// Parses `"p"`, `"p^k"` or a prime power written out, such as `"9"`.
    pub fn parse(spec: &str) -> Result<Field> {
        let spec = spec.trim();
        let bad = || Error::Parse(format!("bad field spec {spec:?}"));
        if let Some((p, k)) = spec.split_once('^') {
            let p = p.trim().parse::<u64>().map_err(|_| bad())?;
            let k = k.trim().parse::<u32>().map_err(|_| bad())?;
            return FieldCtx::new(p, k);
        }
        let q = spec.parse::<u64>().map_err(|_| bad())?;
        let factors = factorize(q);
        match factors.as_slice() {
            [(p, k)] => FieldCtx::new(*p, *k),
            _ => Err(Error::NotPrime(q)),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    /// Defining polynomial, low degree first and monic; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    /// Prime factorization of `q - 1`.
    pub fn order_factors(&self) -> &[(u64, u32)] {
        &self.order_factors
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElem {
        FieldElem(v.rem_euclid(self.p as i64) as u64)
    }

    /// Element with the given packed index.
    pub fn from_index(&self, idx: u64) -> Result<FieldElem> {
        if idx < self.q {
            Ok(FieldElem(idx))
        } else {
            Err(Error::InvalidArgument(format!(
                "index {idx} out of range for F_{}",
                self.q
            )))
        }
    }

    /// Element with the given coefficient tuple (low degree first).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.k as usize {
            return Err(Error::DimensionMismatch {
                expected: self.k as usize,
                got: coeffs.len(),
            });
        }
        let mut idx = 0u64;
        for &c in coeffs.iter().rev() {
            idx = idx * self.p + c % self.p;
        }
        Ok(FieldElem(idx))
    }

    pub fn coeffs(&self, x: FieldElem) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.k as usize);
        let mut v = x.0;
        for _ in 0..self.k {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    /// All elements in packed-index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    /// All elements ordered lexicographically by coefficient tuple `(c_0, ..., c_{k-1})`.
    pub fn elements_tuple_order(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(move |i| FieldElem(self.reverse_digits(i)))
    }

    /// Sort key realizing coefficient-tuple order.
    pub fn tuple_key(&self, x: FieldElem) -> u64 {
        self.reverse_digits(x.0)
    }

    fn reverse_digits(&self, mut v: u64) -> u64 {
        if self.k == 1 {
            return v;
        }
        let mut r = 0;
        for _ in 0..self.k {
            r = r * self.p + v % self.p;
            v /= self.p;
        }
        r
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.k == 1 {
            let s = a.0 as u128 + b.0 as u128;
            return FieldElem((s % self.p as u128) as u64);
        }
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        let (mut x, mut y, mut r, mut pw) = (a.0, b.0, 0u64, 1u64);
        for i in 0..self.k {
            r += ((x % self.p + y % self.p) % self.p) * pw;
            x /= self.p;
            y /= self.p;
            if i + 1 < self.k {
                pw *= self.p;
            }
        }
        FieldElem(r)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.k == 1 {
            return FieldElem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        if self.p == 2 {
            return a;
        }
        let (mut x, mut r, mut pw) = (a.0, 0u64, 1u64);
        for i in 0..self.k {
            r += ((self.p - x % self.p) % self.p) * pw;
            x /= self.p;
            if i + 1 < self.k {
                pw *= self.p;
            }
        }
        FieldElem(r)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        if self.k == 1 {
            return FieldElem((a.0 as u128 * b.0 as u128 % self.p as u128) as u64);
        }
        if let Some(t) = &self.tables {
            let e = (t.log[a.0 as usize] + t.log[b.0 as usize]) % (self.q - 1);
            return FieldElem(t.exp[e as usize]);
        }
        self.mul_poly(a, b)
    }

    fn mul_poly(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p as u128;
        let k = self.k as usize;
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u128; 2 * k - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u128 * yj as u128) % p;
            }
        }
        let m = self
            .modulus
            .as_ref()
            .expect("extension field has a modulus");
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let sub = c * m[j] as u128 % p;
                prod[top - k + j] = (prod[top - k + j] + p - sub) % p;
            }
            prod[top] = 0;
        }
        let digits: Vec<u64> = prod[..k].iter().map(|&c| c as u64).collect();
        self.from_coeffs(&digits).expect("k digits")
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        if let Some(t) = &self.tables {
            let l = (t.log[a.0 as usize] as u128 * e as u128 % (self.q - 1) as u128) as usize;
            return FieldElem(t.exp[l]);
        }
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        if let Some(t) = &self.tables {
            let l = (self.q - 1 - t.log[a.0 as usize]) % (self.q - 1);
            return Ok(FieldElem(t.exp[l as usize]));
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Multiplicative order, found by stripping prime factors off `q - 1`.
    pub fn elem_order(&self, x: FieldElem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut ord = self.q - 1;
        for &(r, e) in &self.order_factors {
            for _ in 0..e {
                if self.pow(x, ord / r).is_one() {
                    ord /= r;
                } else {
                    break;
                }
            }
        }
        Ok(ord)
    }

    /// The first element of order `q - 1` in coefficient-tuple order.
    pub fn primitive_element(&self) -> FieldElem {
        self.elements_tuple_order()
            .skip(1)
            .find(|&x| self.elem_order(x) == Ok(self.q - 1))
            .expect("F_q^* is cyclic")
    }

    /// The first element of order `m` in coefficient-tuple order.
    pub fn element_of_order(&self, m: u64) -> Result<FieldElem> {
        if m == 0 || (self.q - 1) % m != 0 {
            return Err(Error::InvalidArgument(format!(
                "no element of order {m} in F_{}",
                self.q
            )));
        }
        if euler_phi(m)? <= 1 << 16 {
            let g = self.primitive_element();
            let step = (self.q - 1) / m;
            return Ok((1..=m)
                .filter(|j| j.gcd(&m) == 1)
                .map(|j| self.pow(g, step * j))
                .min_by_key(|&x| self.tuple_key(x))
                .expect("phi(m) >= 1"));
        }
        Ok(self
            .elements_tuple_order()
            .skip(1)
            .find(|&x| self.elem_order(x) == Ok(m))
            .expect("F_q^* is cyclic"))
    }

    /// Reads an element: an integer (reduced into the prime subfield) or a
    /// coefficient tuple `[c0,c1,...]`.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let mut coeffs = Vec::new();
            for part in inner.split(',') {
                let v = parse_int(part)?;
                coeffs.push(v.rem_euclid(self.p as i128) as u64);
            }
            return self.from_coeffs(&coeffs);
        }
        let v = parse_int(s)?;
        Ok(FieldElem(v.rem_euclid(self.p as i128) as u64))
    }

    pub fn format_elem(&self, x: FieldElem) -> String {
        if self.k == 1 {
            return x.0.to_string();
        }
        let parts: Vec<String> = self.coeffs(x).iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

fn parse_int(s: &str) -> Result<i128> {
    s.trim()
        .parse::<i128>()
        .map_err(|_| Error::Parse(format!("bad integer {:?}", s.trim())))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    if is_prime(n) {
        return vec![(n, 1)];
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
            if is_prime(n) {
                break;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("phi(0) is undefined".into()));
    }
    Ok(factorize(m)
        .iter()
        .fold(m, |acc, &(r, _)| acc / r * (r - 1)))
}

pub fn moebius(m: u64) -> Result<i64> {
    if m == 0 {
        return Err(Error::InvalidArgument("mu(0) is undefined".into()));
    }
    let f = factorize(m);
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len() % 2 == 0 { 1 } else { -1 })
}

// Dense polynomials over F_p (low degree first), only used to pick the modulus.

fn fp_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm], p - 2, p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = mul_mod(r[top], lead_inv, p);
        if c != 0 {
            for j in 0..=dm {
                let sub = mul_mod(c, m[j], p);
                r[top - dm + j] = (r[top - dm + j] + p - sub) % p;
            }
        }
        r.pop();
        r = fp_trim(r);
    }
    fp_trim(r)
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    fp_rem(&prod, m, p)
}

fn fp_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mulmod(&acc, &b, m, p);
        }
        b = fp_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (fp_trim(a.to_vec()), fp_trim(b.to_vec()));
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `t^(p^i) mod m` for `i = 0..=k`.
fn frobenius_chain(m: &[u64], p: u64, k: usize) -> Vec<Vec<u64>> {
    let mut out = vec![fp_rem(&[0, 1], m, p)];
    for _ in 0..k {
        let last = out.last().unwrap();
        out.push(fp_powmod(last, p, m, p));
    }
    out
}

/// Rabin's irreducibility test for a monic polynomial of degree `k`.
fn fp_is_irreducible(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    if k == 1 {
        return true;
    }
    if m[0] == 0 {
        return false;
    }
    let chain = frobenius_chain(m, p, k);
    let t = fp_rem(&[0, 1], m, p);
    if chain[k] != t {
        return false;
    }
    for &(r, _) in &factorize(k as u64) {
        let mut diff = chain[k / r as usize].clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = fp_gcd(m, &fp_trim(diff), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    // Counting with c_0 as the most significant digit walks the tuples lexicographically.
    // c_0 = 0 means t divides, so the walk starts at c_0 = 1.
    let mut tuple = vec![0u64; k];
    tuple[0] = 1;
    loop {
        let mut m = tuple.clone();
        m.push(1);
        if fp_is_irreducible(&m, p) {
            return m;
        }
        let mut i = k;
        loop {
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < p {
                break;
            }
            tuple[i] = 0;
            assert!(i > 0, "an irreducible of every degree exists");
        }
    }
}
