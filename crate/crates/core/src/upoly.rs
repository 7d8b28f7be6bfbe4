//! Dense univariate polynomials over `F_q`, coefficients stored low degree first.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self
            .coeffs
            .iter()
            .map(|&c| self.field.format_elem(c))
            .collect();
        write!(f, "UniPoly[{}]", c.join(", "))
    }
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Self {
        UniPoly::new(field, Vec::new())
    }

    pub fn constant(field: &Field, c: FieldElem) -> Self {
        UniPoly::new(field, vec![c])
    }

    /// `c * t^e`
    pub fn monomial(field: &Field, c: FieldElem, e: usize) -> Self {
        let mut coeffs = vec![FieldElem::ZERO; e + 1];
        coeffs[e] = c;
        UniPoly::new(field, coeffs)
    }

    /// The `idx`-th monic polynomial of degree `d`, where `idx` runs over `0..q^d`
    /// and its base-`q` digits are the lower coefficients.
    pub fn monic_from_index(field: &Field, d: usize, mut idx: u64) -> Self {
        let q = field.size();
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(FieldElem::from_packed(idx % q));
            idx /= q;
        }
        coeffs.push(FieldElem::ONE);
        UniPoly::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        UniPoly::new(f, c)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        UniPoly::new(f, c)
    }

    pub fn scale(&self, s: FieldElem) -> UniPoly {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        UniPoly::new(f, out)
    }

    pub fn pow(&self, mut e: u64) -> UniPoly {
        let mut acc = UniPoly::constant(&self.field, FieldElem::ONE);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let f = &self.field;
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let lead_inv = f.inv(d.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(f), self.clone()));
        }
        let mut quo = vec![FieldElem::ZERO; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = f.mul(r[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            quo[top - dd] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[top - dd + j] = f.sub(r[top - dd + j], f.mul(c, dj));
            }
        }
        r.truncate(dd);
        Ok((UniPoly::new(f, quo), UniPoly::new(f, r)))
    }

    pub fn rem(&self, d: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// `t^e mod m` by square-and-multiply.
    pub fn t_pow_mod(field: &Field, e: u64, m: &UniPoly) -> Result<UniPoly> {
        let mut acc = UniPoly::constant(field, FieldElem::ONE).rem(m)?;
        let mut base = UniPoly::monomial(field, FieldElem::ONE, 1).rem(m)?;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Scales to leading coefficient one.
    pub fn monic(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.scale(self.field.inv(self.leading())?))
    }

    /// `f(a t + b)`
    pub fn compose_linear(&self, a: FieldElem, b: FieldElem) -> UniPoly {
        let lin = UniPoly::new(&self.field, vec![b, a]);
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(&self.field), |acc, &c| {
                acc.mul(&lin).add(&UniPoly::constant(&self.field, c))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;

    fn poly(f: &Field, c: &[i64]) -> UniPoly {
        UniPoly::new(f, c.iter().map(|&v| f.from_int(v)).collect())
    }

    #[test]
    fn division_identity() {
        let f = FieldCtx::new(5, 1).unwrap();
        let a = poly(&f, &[1, 2, 3, 4, 1, 2]);
        let d = poly(&f, &[3, 0, 2]);
        let (q, r) = a.divrem(&d).unwrap();
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
        assert!(a.divrem(&UniPoly::zero(&f)).is_err());
    }

    #[test]
    fn t_pow_mod_matches_direct_power() {
        let f = FieldCtx::new(3, 2).unwrap();
        let m = poly(&f, &[2, 1, 0, 1]);
        for e in 0..40u64 {
            let direct = UniPoly::monomial(&f, f.one(), e as usize).rem(&m).unwrap();
            assert_eq!(UniPoly::t_pow_mod(&f, e, &m).unwrap(), direct);
        }
    }

    #[test]
    fn compose_and_eval() {
        let f = FieldCtx::new(7, 1).unwrap();
        let g = poly(&f, &[1, 0, 3, 5]);
        let (a, b) = (f.from_int(3), f.from_int(2));
        let h = g.compose_linear(a, b);
        for x in f.elements() {
            assert_eq!(h.eval(x), g.eval(f.add(f.mul(a, x), b)));
        }
    }

    #[test]
    fn monic_enumeration_covers_all() {
        let f = FieldCtx::new(3, 1).unwrap();
        let all: std::collections::HashSet<_> = (0..9)
            .map(|i| UniPoly::monic_from_index(&f, 2, i).coeffs().to_vec())
            .collect();
        assert_eq!(all.len(), 9);
        assert!(all.iter().all(|c| c.len() == 3 && c[2].is_one()));
    }
}
