//! Generators of the fixed-point subring `R_A = {f : A∘f = f}`.
//!
//! After conjugation an element has `h` homothety coordinates `x_i -> a_i x_i`,
//! `t` unit translations and `n - h - t` fixed coordinates. The homothety part is
//! described by the exponent vectors `b` with `0 <= b_i <= ord(a_i)`, `b != 0` and
//! `∏ a_i^{b_i} = 1`; its divisibility-minimal monomials together with the translation
//! chain and the untouched variables generate `R_A` minimally.

use std::collections::HashMap;

use num_integer::Integer;

use crate::action::{reduce_to_type, GroupElem, TypeInfo};
use crate::error::{Error, Result};
use crate::gf::{is_prime, Field, FieldElem};
use crate::mpoly::{Monomial, MultiPoly};

/// Cap on the number of box points scanned for product-one vectors.
pub const BOX_LIMIT: u128 = 50_000_000;

/// An exponent vector `(b_1, ..., b_h)`.
pub type ExponentVector = Monomial;

/// All nonzero `b` in `∏ [0, ord(a_i)]` with `∏ a_i^{b_i} = 1`.
///
/// The last coordinate is solved for from a table of powers of `a_h`, so the scan
/// costs `∏_{i<h} (ord(a_i) + 1)` steps.
pub fn product_one_vectors(field: &Field, hs: &[FieldElem]) -> Result<Vec<ExponentVector>> {
    let orders = homothety_orders(field, hs)?;
    let h = hs.len();
    if h == 0 {
        return Ok(Vec::new());
    }
    let points: u128 = orders[..h - 1].iter().map(|&d| d as u128 + 1).product();
    if points > BOX_LIMIT {
        return Err(Error::Budget {
            what: "product-one box scan",
            needed: points,
            limit: BOX_LIMIT,
        });
    }
    let last = hs[h - 1];
    let d_last = orders[h - 1];
    let mut log = HashMap::new();
    let mut x = FieldElem::ONE;
    for e in 0..d_last {
        log.insert(x, e as u32);
        x = field.mul(x, last);
    }
    let mut out = Vec::new();
    let mut b = vec![0u32; h];
    scan(
        field,
        hs,
        &orders,
        &log,
        0,
        FieldElem::ONE,
        &mut b,
        &mut out,
    );
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn scan(
    field: &Field,
    hs: &[FieldElem],
    orders: &[u64],
    log: &HashMap<FieldElem, u32>,
    i: usize,
    prod: FieldElem,
    b: &mut Vec<u32>,
    out: &mut Vec<ExponentVector>,
) {
    let h = hs.len();
    if i == h - 1 {
        let need = field.inv(prod).expect("product of units");
        if let Some(&e) = log.get(&need) {
            let d = orders[h - 1] as u32;
            for last in [e, e + d] {
                if last > d {
                    continue;
                }
                b[i] = last;
                if b.iter().any(|&v| v > 0) {
                    out.push(Monomial::new(b.clone()));
                }
            }
        }
        b[i] = 0;
        return;
    }
    let mut p = prod;
    for v in 0..=orders[i] as u32 {
        b[i] = v;
        scan(field, hs, orders, log, i + 1, p, b, out);
        p = field.mul(p, hs[i]);
    }
    b[i] = 0;
}

fn homothety_orders(field: &Field, hs: &[FieldElem]) -> Result<Vec<u64>> {
    hs.iter()
        .map(|&a| {
            let d = field.elem_order(a)?;
            if d == 1 {
                Err(Error::InvalidArgument(
                    "homothety entries must differ from 1".into(),
                ))
            } else {
                Ok(d)
            }
        })
        .collect()
}

/// The divisibility-minimal vectors, ascending in graded lex order.
pub fn minimal_monomials(c: &[ExponentVector]) -> Vec<Monomial> {
    let mut sorted: Vec<&Monomial> = c.iter().collect();
    sorted.sort();
    sorted.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !kept.iter().any(|k| k.divides(m)) {
            kept.push(m.clone());
        }
    }
    kept
}

/// The chain `x_{h+1} - x_{h+2}, ..., x_{h+t-1} - x_{h+t}, x_{h+t}^p - x_{h+t}` and the
/// untouched variables `x_{h+t+1}, ..., x_n`.
pub fn translation_generators(
    field: &Field,
    h: usize,
    t: usize,
    n: usize,
) -> Result<(Vec<MultiPoly>, Vec<MultiPoly>)> {
    if h + t > n {
        return Err(Error::InvalidArgument(format!(
            "h + t = {} exceeds n = {n}",
            h + t
        )));
    }
    let var = |i| MultiPoly::var(field, n, i);
    let mut chain = Vec::with_capacity(t);
    for i in h..h + t {
        if i + 1 < h + t {
            chain.push(&var(i) - &var(i + 1));
        } else {
            chain.push(&var(i).pow(field.characteristic() as u32) - &var(i));
        }
    }
    let vars = (h + t..n).map(var).collect();
    Ok((chain, vars))
}

/// A minimal generating set of `R_A`, in the reduced frame and in the original variables.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub n: usize,
    pub h: usize,
    pub t: usize,
    pub type_info: TypeInfo,
    /// `ord(a_i)` for the homothety entries.
    pub orders: Vec<u64>,
    /// Minimal product-one monomials over the homothety variables of the reduced frame.
    pub mstar: Vec<Monomial>,
    pub chain: Vec<MultiPoly>,
    pub vars: Vec<MultiPoly>,
    /// `|mstar| - h`
    pub n_star: usize,
    /// lcm of the homothety orders (1 when `h = 0`).
    pub ell: u64,
    /// The generators carried back to the original variables, each scaled to leading
    /// coefficient one; same order as [`GeneratorSet::reduced`].
    pub original: Vec<MultiPoly>,
}

impl GeneratorSet {
    /// `mstar`, then `chain`, then `vars`, as polynomials in the reduced frame.
    pub fn reduced(&self) -> Vec<MultiPoly> {
        let field = self.type_info.reduced.field();
        let mut out: Vec<MultiPoly> = self
            .mstar
            .iter()
            .map(|m| {
                let mut e = m.exps().to_vec();
                e.resize(self.n, 0);
                MultiPoly::term(field, Monomial::new(e), FieldElem::ONE)
            })
            .collect();
        out.extend(self.chain.iter().cloned());
        out.extend(self.vars.iter().cloned());
        out
    }

    pub fn len(&self) -> usize {
        self.mstar.len() + self.chain.len() + self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn assemble(info: TypeInfo, orders: Vec<u64>, mstar: Vec<Monomial>) -> Result<GeneratorSet> {
    let field = info.reduced.field().clone();
    let n = info.reduced.nvars();
    let (h, t) = (info.h, info.t);
    let (chain, vars) = translation_generators(&field, h, t, n)?;
    let ell = orders.iter().fold(1u64, |acc, d| acc.lcm(d));
    let mut set = GeneratorSet {
        n,
        h,
        t,
        n_star: mstar.len() - h,
        orders,
        mstar,
        chain,
        vars,
        ell,
        type_info: info,
        original: Vec::new(),
    };
    set.original = set
        .reduced()
        .iter()
        .map(|g| set.type_info.to_original(g)?.monic())
        .collect::<Result<_>>()?;
    Ok(set)
}

pub fn generating_set(g: &GroupElem) -> Result<GeneratorSet> {
    let info = reduce_to_type(g);
    let field = g.field().clone();
    let orders = homothety_orders(&field, &info.homotheties)?;
    let mstar = minimal_monomials(&product_one_vectors(&field, &info.homotheties)?);
    assemble(info, orders, mstar)
}

#[derive(Clone, Debug)]
pub enum FreeWitness {
    /// Two homothety orders sharing a factor.
    NonCoprime(u64, u64),
    /// `n` algebraically independent generators, in the original variables.
    Generators(Vec<MultiPoly>),
}

/// Whether `R_A` is a polynomial ring: true iff the homothety orders are pairwise coprime.
pub fn is_free(g: &GroupElem) -> Result<(bool, FreeWitness)> {
    let info = reduce_to_type(g);
    let orders = homothety_orders(g.field(), &info.homotheties)?;
    for i in 0..orders.len() {
        for j in i + 1..orders.len() {
            if orders[i].gcd(&orders[j]) > 1 {
                return Ok((false, FreeWitness::NonCoprime(orders[i], orders[j])));
            }
        }
    }
    let h = info.h;
    let mstar = (0..h)
        .map(|i| {
            let mut e = vec![0u32; h];
            e[i] = orders[i] as u32;
            Monomial::new(e)
        })
        .collect();
    let set = assemble(info, orders, mstar)?;
    Ok((true, FreeWitness::Generators(set.original)))
}

/// `C(n, k)`, or `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub ell: u64,
    pub n_star: usize,
    /// `C(ell + h - 1, h - 1) - h` for `h >= 2`, else 0.
    pub bound: u128,
    /// `n_star == bound`
    pub attained: bool,
    /// `C(q + h - 2, h - 1) + n - h`, a bound on the number of generators.
    pub global_bound: u128,
    pub generators: usize,
}

pub fn nstar_bounds(g: &GroupElem) -> Result<Bounds> {
    let set = generating_set(g)?;
    let h = set.h as u64;
    let overflow = || Error::Overflow("binomial bound");
    let bound = if h >= 2 {
        binomial(set.ell + h - 1, h - 1).ok_or_else(overflow)? - h as u128
    } else {
        0
    };
    let q = g.field().size();
    let global_bound = if h >= 1 {
        binomial(q + h - 2, h - 1).ok_or_else(overflow)? + (set.n as u128 - h as u128)
    } else {
        set.n as u128
    };
    Ok(Bounds {
        ell: set.ell,
        n_star: set.n_star,
        bound,
        attained: set.n_star as u128 == bound,
        global_bound,
        generators: set.len(),
    })
}

/// Determinant of the matrix of partial derivatives `∂f_i/∂x_j`.
pub fn jacobian_det(fs: &[MultiPoly]) -> Result<MultiPoly> {
    let first = fs
        .first()
        .ok_or_else(|| Error::InvalidArgument("no polynomials".into()))?;
    let field = first.field().clone();
    let n = first.nvars();
    if fs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: fs.len(),
        });
    }
    if n > 16 {
        return Err(Error::InvalidArgument(
            "Jacobian limited to 16 variables".into(),
        ));
    }
    if fs.iter().any(|f| f.nvars() != n || **f.field() != *field) {
        return Err(Error::ContextMismatch);
    }
    let jac: Vec<Vec<MultiPoly>> = fs
        .iter()
        .map(|f| (0..n).map(|j| f.derivative(j)).collect())
        .collect();
    // dp[mask]: signed sum over assignments of rows 0..|mask| to the columns in mask
    let mut dp: Vec<Option<MultiPoly>> = vec![None; 1 << n];
    dp[0] = Some(MultiPoly::one(&field, n));
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].take() else { continue };
        if cur.is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            dp[mask] = Some(cur);
            continue;
        }
        for col in 0..n {
            if mask >> col & 1 == 1 || jac[row][col].is_zero() {
                continue;
            }
            let inversions = (mask >> (col + 1)).count_ones();
            let mut term = &cur * &jac[row][col];
            if inversions % 2 == 1 {
                term = -&term;
            }
            let slot = &mut dp[mask | 1 << col];
            *slot = Some(match slot.take() {
                None => term,
                Some(s) => &s + &term,
            });
        }
    }
    Ok(dp[(1 << n) - 1]
        .take()
        .unwrap_or_else(|| MultiPoly::zero(&field, n)))
}

fn sylow_exponent(field: &Field, r: u64) -> Result<u64> {
    if !is_prime(r) {
        return Err(Error::NotPrime(r));
    }
    let q = field.size();
    if r == field.characteristic() {
        return Ok(q);
    }
    let mut d = 1;
    let mut m = q - 1;
    while m % r == 0 {
        m /= r;
        d *= r;
    }
    if d == 1 {
        return Err(Error::InvalidArgument(format!(
            "{r} divides neither p nor q - 1"
        )));
    }
    Ok(d)
}

/// Invariants of a Sylow `r`-subgroup of `G^n`: `x_i^q - x_i` when `r = p`, otherwise
/// `x_i^d` with `d` the `r`-part of `q - 1`.
pub fn sylow_invariant_generators(field: &Field, n: usize, r: u64) -> Result<Vec<MultiPoly>> {
    let d = sylow_exponent(field, r)?;
    let d32 = u32::try_from(d).map_err(|_| Error::Overflow("Sylow exponent"))?;
    Ok((0..n)
        .map(|i| {
            let x = MultiPoly::var(field, n, i);
            if r == field.characteristic() {
                &x.pow(d32) - &x
            } else {
                x.pow(d32)
            }
        })
        .collect())
}

/// Generators of that Sylow subgroup: per coordinate, the homothety by an element of
/// order `d`, or the translations by an `F_p`-basis of `F_q`.
pub fn sylow_group_generators(field: &Field, n: usize, r: u64) -> Result<Vec<GroupElem>> {
    let d = sylow_exponent(field, r)?;
    let mut out = Vec::new();
    for i in 0..n {
        if r == field.characteristic() {
            for j in 0..field.degree() as usize {
                let mut unit = vec![0u64; j + 1];
                unit[j] = 1;
                let b = field.from_coeffs(&unit)?;
                out.push(GroupElem::single(field, n, i, FieldElem::ONE, b)?);
            }
        } else {
            let theta = field.element_of_order(d)?;
            out.push(GroupElem::single(field, n, i, theta, FieldElem::ZERO)?);
        }
    }
    Ok(out)
}
