//! Homogeneous bivariate invariants of `x -> a x, y -> b y`.
//!
//! A form `g = Σ c_i x^i y^{n-i}` of degree `n` corresponds to `f(t) = g(t, 1)`, and
//! `x^i y^{n-i}` is fixed exactly when `c^i = b^{-n}` with `c = a/b`. The fixed forms of
//! degree `n` are therefore spanned by the monomials with `i ≡ d0 (mod ord c)`, where
//! `d0` is the least such exponent.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::gf::{euler_phi, moebius, Field, FieldElem};
use crate::mpoly::{Monomial, MultiPoly};
use crate::upoly::UniPoly;

/// `[[a1, a2], [a3, a4]]`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub a1: FieldElem,
    pub a2: FieldElem,
    pub a3: FieldElem,
    pub a4: FieldElem,
}

impl Mat2 {
    pub fn new(a1: FieldElem, a2: FieldElem, a3: FieldElem, a4: FieldElem) -> Self {
        Mat2 { a1, a2, a3, a4 }
    }

    pub fn diag(a: FieldElem, b: FieldElem) -> Self {
        Mat2::new(a, FieldElem::ZERO, FieldElem::ZERO, b)
    }

    pub fn identity() -> Self {
        Mat2::diag(FieldElem::ONE, FieldElem::ONE)
    }

    pub fn swap() -> Self {
        Mat2::new(
            FieldElem::ZERO,
            FieldElem::ONE,
            FieldElem::ONE,
            FieldElem::ZERO,
        )
    }

    /// Parses `"a1,a2;a3,a4"`.
    pub fn parse(field: &Field, s: &str) -> Result<Self> {
        let rows: Vec<&str> = s.split(';').collect();
        let bad = || Error::Parse(format!("expected \"a1,a2;a3,a4\", got {s:?}"));
        if rows.len() != 2 {
            return Err(bad());
        }
        let mut e = Vec::new();
        for row in rows {
            let parts = split_top_level(row);
            if parts.len() != 2 {
                return Err(bad());
            }
            for p in parts {
                e.push(field.parse_elem(p)?);
            }
        }
        Ok(Mat2::new(e[0], e[1], e[2], e[3]))
    }

    pub fn det(&self, field: &Field) -> FieldElem {
        field.sub(field.mul(self.a1, self.a4), field.mul(self.a2, self.a3))
    }

    pub fn mul(&self, field: &Field, o: &Mat2) -> Mat2 {
        let f = field;
        Mat2::new(
            f.add(f.mul(self.a1, o.a1), f.mul(self.a2, o.a3)),
            f.add(f.mul(self.a1, o.a2), f.mul(self.a2, o.a4)),
            f.add(f.mul(self.a3, o.a1), f.mul(self.a4, o.a3)),
            f.add(f.mul(self.a3, o.a2), f.mul(self.a4, o.a4)),
        )
    }

    fn check(&self, field: &Field) -> Result<()> {
        if self.det(field).is_zero() {
            Err(Error::Singular)
        } else {
            Ok(())
        }
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// `(a3 t + a4)^n f((a1 t + a2) / (a3 t + a4))` for `f` of declared degree `n`.
pub fn diamond(field: &Field, m: &Mat2, f: &UniPoly, n: usize) -> Result<UniPoly> {
    m.check(field)?;
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg > n {
        return Err(Error::InvalidArgument(format!(
            "degree {deg} exceeds declared {n}"
        )));
    }
    let num = UniPoly::new(field, vec![m.a2, m.a1]);
    let den = UniPoly::new(field, vec![m.a4, m.a3]);
    let mut out = UniPoly::zero(field);
    for (i, &c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = num.pow(i as u64).mul(&den.pow((n - i) as u64)).scale(c);
        out = out.add(&term);
    }
    Ok(out)
}

/// `f(a1 x + a2 y, a3 x + a4 y)`. Composes on the right like the substitution action:
/// `star(M, star(M', f)) = star(M'·M, f)`.
pub fn star(field: &Field, m: &Mat2, f: &MultiPoly) -> Result<MultiPoly> {
    m.check(field)?;
    if f.nvars() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: f.nvars(),
        });
    }
    if **f.field() != **field {
        return Err(Error::ContextMismatch);
    }
    let x = MultiPoly::from_terms(
        field,
        2,
        [
            (Monomial::new(vec![1, 0]), m.a1),
            (Monomial::new(vec![0, 1]), m.a2),
        ],
    )?;
    let y = MultiPoly::from_terms(
        field,
        2,
        [
            (Monomial::new(vec![1, 0]), m.a3),
            (Monomial::new(vec![0, 1]), m.a4),
        ],
    )?;
    let mut out = MultiPoly::zero(field, 2);
    for (mono, &c) in f.terms() {
        let e = mono.exps();
        out = &out + &(&x.pow(e[0]) * &y.pow(e[1])).scale(c);
    }
    Ok(out)
}

/// `y^n f(x / y)`.
pub fn homogenize(f: &UniPoly, n: u32) -> Result<MultiPoly> {
    if let Some(d) = f.degree() {
        if d > n as usize {
            return Err(Error::InvalidArgument(format!("degree {d} exceeds {n}")));
        }
    }
    MultiPoly::from_terms(
        f.field(),
        2,
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(i, &c)| (Monomial::new(vec![i as u32, n - i as u32]), c)),
    )
}

/// `(g(t, 1), n)` for a nonzero form `g` of degree `n`.
pub fn dehomogenize(g: &MultiPoly) -> Result<(UniPoly, u32)> {
    if g.nvars() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: g.nvars(),
        });
    }
    let n = g.total_degree().ok_or(Error::ZeroPolynomial)?;
    if !g.is_homogeneous() {
        return Err(Error::InvalidArgument("not a form".into()));
    }
    let mut coeffs = vec![FieldElem::ZERO; n as usize + 1];
    for (m, &c) in g.terms() {
        coeffs[m.exps()[0] as usize] = c;
    }
    Ok((UniPoly::new(g.field(), coeffs), n))
}

/// The diagonal element `x -> a x, y -> b y` with its derived orders.
#[derive(Clone, Debug)]
pub struct FormSpec {
    pub field: Field,
    pub a: FieldElem,
    pub b: FieldElem,
    /// `a / b`
    pub c: FieldElem,
    /// `ord(b)`
    pub k: u64,
    /// `ord(c)`
    pub ell: u64,
    /// `lcm(ord a, ord b)`, the order of the element.
    pub d: u64,
}

impl FormSpec {
    pub fn new(field: &Field, a: FieldElem, b: FieldElem) -> Result<Self> {
        let c = field.div(a, b)?;
        let oa = field.elem_order(a)?;
        let k = field.elem_order(b)?;
        Ok(FormSpec {
            field: field.clone(),
            a,
            b,
            c,
            k,
            ell: field.elem_order(c)?,
            d: oa.lcm(&k),
        })
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::diag(self.a, self.b)
    }

    /// Least `d >= 0` with `c^d = b^{-n}`, if any.
    fn least_exponent(&self, n: u64) -> Option<u64> {
        let f = &self.field;
        let target = f.inv(f.pow(self.b, n)).expect("b is nonzero");
        let mut x = FieldElem::ONE;
        for d in 0..self.ell {
            if x == target {
                return Some(d);
            }
            x = f.mul(x, self.c);
        }
        None
    }
}

/// Residues `n` in `0..=k` for which some `d <= n` has `b^{-n} = c^d`.
pub fn s_set(spec: &FormSpec) -> Vec<u64> {
    let f = &spec.field;
    (0..=spec.k)
        .filter(|&n| {
            let target = f.inv(f.pow(spec.b, n)).expect("b is nonzero");
            (0..=n).any(|d| f.pow(spec.c, d) == target)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct GradedComponent {
    pub n: u64,
    pub nonzero: bool,
    pub d0: Option<u64>,
    pub s: Option<u64>,
    /// Number of fixed forms of degree `n`, the zero form included.
    pub size: u128,
    /// `x^{d0 + ell j} y^{n - d0 - ell j}` for `0 <= j <= s`.
    pub basis: Vec<MultiPoly>,
}

/// The fixed forms of degree `n`: nonzero exactly when the least solution `d0` of
/// `c^d = b^{-n}` is at most `n`; then they form a space of dimension `s + 1` with
/// `s = ⌊(n - d0) / ell⌋`.
pub fn graded_component(spec: &FormSpec, n: u64) -> Result<GradedComponent> {
    let q = spec.field.size() as u128;
    let d0 = spec.least_exponent(n).filter(|&d| d <= n);
    let Some(d0) = d0 else {
        return Ok(GradedComponent {
            n,
            nonzero: false,
            d0: None,
            s: None,
            size: 1,
            basis: Vec::new(),
        });
    };
    let s = (n - d0) / spec.ell;
    let size = u32::try_from(s + 1)
        .ok()
        .and_then(|e| q.checked_pow(e))
        .ok_or(Error::Overflow("component size"))?;
    let n32 = u32::try_from(n).map_err(|_| Error::Overflow("degree"))?;
    let basis = (0..=s)
        .map(|j| {
            let i = (d0 + spec.ell * j) as u32;
            MultiPoly::term(&spec.field, Monomial::new(vec![i, n32 - i]), FieldElem::ONE)
        })
        .collect();
    Ok(GradedComponent {
        n,
        nonzero: true,
        d0: Some(d0),
        s: Some(s),
        size,
        basis,
    })
}

/// Number of irreducible fixed forms of degree `n >= 2` (all scalar multiples counted):
/// zero unless `D | n`, otherwise with `n = D m`
/// `(q - 1) φ(ell) / n · Σ_{d | n/ell, gcd(d, ell) = 1} μ(d) (q^{n/(d ell)} - 1)`.
pub fn count_invariant_irreducible(spec: &FormSpec, n: u64) -> Result<u128> {
    if n < 2 {
        return Err(Error::InvalidArgument("degree must be at least 2".into()));
    }
    if n % spec.d != 0 {
        return Ok(0);
    }
    let overflow = || Error::Overflow("irreducible count");
    let q = spec.field.size() as i128;
    let ell = spec.ell;
    let quot = n / ell;
    let mut sum: i128 = 0;
    for d in 1..=quot {
        if quot % d != 0 || d.gcd(&ell) != 1 {
            continue;
        }
        let mu = moebius(d)? as i128;
        if mu == 0 {
            continue;
        }
        let e = u32::try_from(quot / d).map_err(|_| overflow())?;
        let term = q.checked_pow(e).ok_or_else(overflow)? - 1;
        sum = sum.checked_add(mu * term).ok_or_else(overflow)?;
    }
    let num = (q - 1)
        .checked_mul(euler_phi(ell)? as i128)
        .and_then(|v| v.checked_mul(sum))
        .ok_or_else(overflow)?;
    if num < 0 || num % n as i128 != 0 {
        return Err(Error::InvalidArgument(format!(
            "count formula does not divide evenly at n = {n}"
        )));
    }
    Ok((num / n as i128) as u128)
}

/// Monic irreducible polynomials over `F_q` by degree, built by trial division against
/// the lower-degree entries.
#[derive(Clone, Debug)]
pub struct IrreducibleTable {
    field: Field,
    by_degree: Vec<Vec<UniPoly>>,
}

/// Cap on the number of candidates a table may examine.
pub const TABLE_LIMIT: u128 = 1 << 22;

impl IrreducibleTable {
    pub fn new(field: &Field, max_degree: usize) -> Result<Self> {
        let q = field.size() as u128;
        let mut needed: u128 = 0;
        for d in 1..=max_degree {
            needed = u32::try_from(d)
                .ok()
                .and_then(|d| q.checked_pow(d))
                .and_then(|v| needed.checked_add(v))
                .unwrap_or(u128::MAX);
        }
        if needed > TABLE_LIMIT {
            return Err(Error::Budget {
                what: "irreducible table",
                needed,
                limit: TABLE_LIMIT,
            });
        }
        let mut by_degree: Vec<Vec<UniPoly>> = vec![Vec::new(); max_degree + 1];
        for d in 1..=max_degree {
            let count = field.size().pow(d as u32);
            for idx in 0..count {
                let cand = UniPoly::monic_from_index(field, d, idx);
                let reducible = (1..=d / 2).any(|e| {
                    by_degree[e]
                        .iter()
                        .any(|g| cand.rem(g).map(|r| r.is_zero()).unwrap_or(false))
                });
                if !reducible {
                    by_degree[d].push(cand);
                }
            }
        }
        Ok(IrreducibleTable {
            field: field.clone(),
            by_degree,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn of_degree(&self, d: usize) -> &[UniPoly] {
        self.by_degree.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    /// Irreducibility of a polynomial whose degree is at most twice the table's.
    pub fn is_irreducible(&self, f: &UniPoly) -> Result<bool> {
        let Some(d) = f.degree() else {
            return Ok(false);
        };
        if d == 0 {
            return Ok(false);
        }
        if d / 2 > self.max_degree() {
            return Err(Error::InvalidArgument(format!("degree {d} beyond table")));
        }
        for e in 1..=d / 2 {
            for g in &self.by_degree[e] {
                if f.rem(g)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Irreducible fixed forms of degree `target` that divide `a x^{q^r - 1} - b y^{q^r - 1}`,
/// found among monic irreducibles `g` of that degree as those with
/// `t^{q^r - 1} ≡ c^{-1} (mod g)`. Empty unless `D | target`.
pub fn invariant_factors_of_binomial(
    spec: &FormSpec,
    r: u32,
    target: usize,
) -> Result<Vec<MultiPoly>> {
    let field = &spec.field;
    let qr = (field.size() as u128)
        .checked_pow(r)
        .filter(|&v| v <= 1 << 16)
        .ok_or(Error::Budget {
            what: "binomial exponent q^r",
            needed: u128::MAX,
            limit: 1 << 16,
        })?;
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    if target == 0 || target as u64 % spec.d != 0 {
        return Ok(Vec::new());
    }
    let table = IrreducibleTable::new(field, target)?;
    let want = UniPoly::constant(field, field.inv(spec.c)?);
    let mut out = Vec::new();
    for g in table.of_degree(target) {
        if UniPoly::t_pow_mod(field, (qr - 1) as u64, g)? == want.rem(g)? {
            out.push(homogenize(g, target as u32)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{apply, GroupElem};
    use crate::gf::FieldCtx;

    fn up(f: &Field, c: &[i64]) -> UniPoly {
        UniPoly::new(f, c.iter().map(|&v| f.from_int(v)).collect())
    }

    #[test]
    fn diamond_examples() {
        let f = FieldCtx::new(5, 1).unwrap();
        let g = up(&f, &[3, 1, 0, 2]);
        assert_eq!(diamond(&f, &Mat2::identity(), &g, 3).unwrap(), g);
        assert_eq!(
            diamond(&f, &Mat2::swap(), &g, 3).unwrap(),
            up(&f, &[2, 0, 1, 3])
        );
        let a2 = Mat2::diag(f.from_int(2), f.one());
        assert_eq!(
            diamond(&f, &a2, &up(&f, &[1, 0, 1]), 2).unwrap(),
            up(&f, &[1, 0, 4])
        );
        let sing = Mat2::diag(f.one(), f.zero());
        assert_eq!(diamond(&f, &sing, &g, 3), Err(Error::Singular));
    }

    #[test]
    fn star_examples() {
        let f = FieldCtx::new(5, 1).unwrap();
        let g = MultiPoly::parse(&f, 2, "x1^3 + 2*x1*x2 + x2").unwrap();
        assert_eq!(
            star(&f, &Mat2::swap(), &g).unwrap(),
            MultiPoly::parse(&f, 2, "x2^3 + 2*x1*x2 + x1").unwrap()
        );
        let (a, b) = (f.from_int(3), f.from_int(2));
        let act = GroupElem::new(&f, vec![(a, f.zero()), (b, f.zero())]).unwrap();
        assert_eq!(
            star(&f, &Mat2::diag(a, b), &g).unwrap(),
            apply(&act, &g).unwrap()
        );
        let shear = Mat2::new(f.one(), f.one(), f.zero(), f.one());
        let x2 = MultiPoly::parse(&f, 2, "x1^2").unwrap();
        assert_eq!(
            star(&f, &shear, &x2).unwrap(),
            MultiPoly::parse(&f, 2, "x1^2 + 2*x1*x2 + x2^2").unwrap()
        );
    }

    #[test]
    fn star_composes_on_the_right() {
        let f = FieldCtx::new(7, 1).unwrap();
        let m = Mat2::parse(&f, "1,2;3,5").unwrap();
        let m2 = Mat2::parse(&f, "0,4;1,1").unwrap();
        let g = MultiPoly::parse(&f, 2, "x1^3 + x1*x2 + 5*x2^2").unwrap();
        let twice = star(&f, &m, &star(&f, &m2, &g).unwrap()).unwrap();
        assert_eq!(twice, star(&f, &m2.mul(&f, &m), &g).unwrap());
        assert_eq!(star(&f, &Mat2::identity(), &g).unwrap(), g);
    }

    #[test]
    fn homogenize_examples() {
        let f = FieldCtx::new(3, 1).unwrap();
        assert_eq!(
            homogenize(&up(&f, &[1, 1, 1]), 2).unwrap(),
            MultiPoly::parse(&f, 2, "x1^2 + x1*x2 + x2^2").unwrap()
        );
        assert_eq!(
            homogenize(&up(&f, &[1]), 3).unwrap(),
            MultiPoly::parse(&f, 2, "x2^3").unwrap()
        );
        let p = up(&f, &[2, 0, 1]);
        assert_eq!(
            dehomogenize(&homogenize(&p, 4).unwrap()).unwrap(),
            (p.clone(), 4)
        );
        assert!(homogenize(&p, 1).is_err());
        assert!(dehomogenize(&MultiPoly::parse(&f, 2, "x1 + 1").unwrap()).is_err());
    }

    #[test]
    fn residue_set_examples() {
        let f = FieldCtx::new(5, 1).unwrap();
        let spec = FormSpec::new(&f, f.from_int(3), f.one()).unwrap();
        assert_eq!(spec.k, 1);
        assert_eq!(s_set(&spec), vec![0, 1]);
        let spec = FormSpec::new(&f, f.from_int(2), f.from_int(2)).unwrap();
        assert_eq!(s_set(&spec), vec![0, 4]);
        let spec = FormSpec::new(&f, f.from_int(2), f.from_int(4)).unwrap();
        assert_eq!(s_set(&spec), vec![0, 2]);
    }

    #[test]
    fn residue_set_does_not_decide_nonemptiness() {
        // x^2 y is fixed by (x, y) -> (2x, 4y) over F_5, yet 3 mod ord(4) = 1 is not in
        // the residue set; the component test uses d0 <= n directly.
        let f = FieldCtx::new(5, 1).unwrap();
        let spec = FormSpec::new(&f, f.from_int(2), f.from_int(4)).unwrap();
        assert!(!s_set(&spec).contains(&(3 % spec.k)));
        let comp = graded_component(&spec, 3).unwrap();
        assert!(comp.nonzero);
        assert_eq!(
            comp.basis,
            vec![MultiPoly::parse(&f, 2, "x1^2*x2").unwrap()]
        );
    }

    #[test]
    fn component_examples() {
        let f = FieldCtx::new(5, 1).unwrap();
        let spec = FormSpec::new(&f, f.from_int(2), f.one()).unwrap();
        let c = graded_component(&spec, 4).unwrap();
        assert_eq!((c.d0, c.s, c.size), (Some(0), Some(1), 25));
        let mut basis: Vec<_> = c.basis.iter().map(|b| b.to_string()).collect();
        basis.sort();
        assert_eq!(basis, vec!["x1^4", "x2^4"]);

        let id = FormSpec::new(&f, f.one(), f.one()).unwrap();
        let c = graded_component(&id, 3).unwrap();
        assert_eq!((c.s, c.size, id.ell), (Some(3), 625, 1));

        // (4, 2): 4^i 2^{3-i} = 1 has no solution
        let spec = FormSpec::new(&f, f.from_int(4), f.from_int(2)).unwrap();
        let c = graded_component(&spec, 1).unwrap();
        assert!(!c.nonzero);
        assert_eq!(c.size, 1);
    }

    #[test]
    fn count_examples() {
        let f = FieldCtx::new(5, 1).unwrap();
        let spec = FormSpec::new(&f, f.from_int(4), f.one()).unwrap();
        assert_eq!((spec.d, spec.ell), (2, 2));
        assert_eq!(count_invariant_irreducible(&spec, 2).unwrap(), 8);
        assert_eq!(count_invariant_irreducible(&spec, 3).unwrap(), 0);
        assert_eq!(count_invariant_irreducible(&spec, 4).unwrap(), 24);
        assert!(count_invariant_irreducible(&spec, 1).is_err());
        let f3 = FieldCtx::new(3, 1).unwrap();
        let id = FormSpec::new(&f3, f3.one(), f3.one()).unwrap();
        // 3 monic irreducible quadratics over F_3, times 2 scalars
        assert_eq!(count_invariant_irreducible(&id, 2).unwrap(), 6);
    }

    #[test]
    fn irreducible_table_counts() {
        let f = FieldCtx::new(2, 1).unwrap();
        let t = IrreducibleTable::new(&f, 8).unwrap();
        let counts: Vec<_> = (1..=8).map(|d| t.of_degree(d).len()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9, 18, 30]);
        let f4 = FieldCtx::new(2, 2).unwrap();
        let t = IrreducibleTable::new(&f4, 3).unwrap();
        assert_eq!(t.of_degree(2).len(), 6);
        assert!(IrreducibleTable::new(&FieldCtx::new(17, 1).unwrap(), 8).is_err());
    }

    #[test]
    fn binomial_factor_examples() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        let id = FormSpec::new(&f3, f3.one(), f3.one()).unwrap();
        for target in 2..5 {
            assert!(invariant_factors_of_binomial(&id, 1, target)
                .unwrap()
                .is_empty());
        }
        let f5 = FieldCtx::new(5, 1).unwrap();
        let spec = FormSpec::new(&f5, f5.from_int(4), f5.one()).unwrap();
        let factors = invariant_factors_of_binomial(&spec, 1, 2).unwrap();
        // 4t^4 - 1 = 4(t^2 - 2)(t^2 + 2) over F_5, both quadratics irreducible
        let mut text: Vec<_> = factors.iter().map(|g| g.to_string()).collect();
        text.sort();
        assert_eq!(text, vec!["x1^2 + 2*x2^2", "x1^2 + 3*x2^2"]);
        for (a, b) in [(2, 1), (4, 1), (2, 3), (3, 3)] {
            let spec = FormSpec::new(&f5, f5.from_int(a), f5.from_int(b)).unwrap();
            for r in 1..=2 {
                for target in 2..=4 {
                    for g in invariant_factors_of_binomial(&spec, r, target).unwrap() {
                        assert_eq!(star(&f5, &spec.matrix(), &g).unwrap(), g);
                    }
                }
            }
        }
        assert!(invariant_factors_of_binomial(&spec, 7, 2).is_err());
    }
}
