//! Brute-force cross-checks: invariant-space dimensions by linear algebra, subalgebra
//! dimensions by span closure, and exhaustive scans of fixed forms.
//!
//! Nothing here calls into the generator or counting code it is meant to check; the
//! only shared pieces are field and polynomial arithmetic and the substitution action.

mod echelon;

use std::collections::HashMap;

pub use echelon::Echelon;

use crate::action::{apply, GroupElem};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::mpoly::{monomials_up_to, Monomial, MultiPoly};
use crate::upoly::UniPoly;

/// Size limits for the dense oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Monomials of degree `<= d` in the coefficient space.
    pub monomials: usize,
    /// Forms scanned by [`enumerate_fixed_forms`].
    pub forms: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            monomials: 5000,
            forms: 10_000_000,
        }
    }
}

impl Budget {
    /// Reads `FFINV_BUDGET` as `"<monomials>"` or `"<monomials>,<forms>"`, falling
    /// back to the defaults when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var("FFINV_BUDGET") {
            Ok(v) => Budget::parse(&v),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad budget {s:?}"));
        let mut out = Budget::default();
        let mut parts = s.split(',');
        out.monomials = parts
            .next()
            .unwrap_or("")
            .trim()
            .parse()
            .map_err(|_| bad())?;
        if let Some(forms) = parts.next() {
            out.forms = forms.trim().parse().map_err(|_| bad())?;
        }
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(out)
    }
}

/// `dims[j]` is the dimension of the degree-`<= j` slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDimProfile {
    pub dims: Vec<usize>,
}

impl GradedDimProfile {
    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }
}

struct Basis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Number of monomials of degree `<= j`.
    upto: Vec<usize>,
}

impl Basis {
    fn new(n: usize, d: u32, budget: &Budget) -> Result<Self> {
        // C(n + d, n), saturating
        let mut count: u128 = 1;
        for i in 0..n as u128 {
            count = count.saturating_mul(d as u128 + 1 + i) / (i + 1);
        }
        if count > budget.monomials as u128 {
            return Err(Error::Budget {
                what: "monomials in the coefficient space",
                needed: count,
                limit: budget.monomials as u128,
            });
        }
        let monomials = monomials_up_to(n, d);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let upto = (0..=d)
            .map(|j| monomials.iter().filter(|m| m.degree() <= j).count())
            .collect();
        Ok(Basis {
            monomials,
            index,
            upto,
        })
    }

    fn write(&self, f: &MultiPoly, out: &mut [FieldElem]) {
        for (m, &c) in f.terms() {
            out[self.index[m]] = c;
        }
    }

    fn vector(&self, f: &MultiPoly) -> Vec<FieldElem> {
        let mut v = vec![FieldElem::ZERO; self.monomials.len()];
        self.write(f, &mut v);
        v
    }
}

/// Dimensions of the fixed space of `A` on polynomials of degree `<= j`, `j = 0..=d`.
pub fn invariant_space_dim(g: &GroupElem, d: u32, budget: &Budget) -> Result<GradedDimProfile> {
    invariant_space_dim_group(g.field(), g.nvars(), std::slice::from_ref(g), d, budget)
}

/// Same, for the common fixed space of several elements.
pub fn invariant_space_dim_group(
    field: &Field,
    n: usize,
    gens: &[GroupElem],
    d: u32,
    budget: &Budget,
) -> Result<GradedDimProfile> {
    if gens.iter().any(|g| g.nvars() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: gens
                .iter()
                .map(GroupElem::nvars)
                .find(|&k| k != n)
                .unwrap_or(n),
        });
    }
    let basis = Basis::new(n, d, budget)?;
    let width = basis.monomials.len();
    // one column per monomial m: the stacked vectors g(m) - m
    let mut ech = Echelon::new(field, width * gens.len().max(1));
    let mut dims = Vec::with_capacity(d as usize + 1);
    let mut next_boundary = 0;
    for (i, m) in basis.monomials.iter().enumerate() {
        if !gens.is_empty() {
            let mono = MultiPoly::term(field, m.clone(), FieldElem::ONE);
            let mut col = vec![FieldElem::ZERO; width * gens.len()];
            for (k, g) in gens.iter().enumerate() {
                let diff = &apply(g, &mono)? - &mono;
                basis.write(&diff, &mut col[k * width..(k + 1) * width]);
            }
            ech.insert(col);
        }
        while next_boundary < basis.upto.len() && basis.upto[next_boundary] == i + 1 {
            dims.push(i + 1 - ech.rank());
            next_boundary += 1;
        }
    }
    Ok(GradedDimProfile { dims })
}

/// Dimensions of the span of all products of `gens` (the empty product included) of
/// degree `<= j`, `j = 0..=d`.
pub fn subalgebra_graded_dim(
    field: &Field,
    n: usize,
    gens: &[MultiPoly],
    d: u32,
    budget: &Budget,
) -> Result<GradedDimProfile> {
    if let Some(bad) = gens.iter().find(|g| g.nvars() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: bad.nvars(),
        });
    }
    let basis = Basis::new(n, d, budget)?;
    let gens: Vec<(usize, &MultiPoly)> = gens
        .iter()
        .filter_map(|g| match g.total_degree() {
            Some(e) if e > 0 => Some((e as usize, g)),
            _ => None,
        })
        .collect();
    // layers[e] spans the products of generators whose degrees add up to e
    let mut layers: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one(field, n)]];
    let mut all = Echelon::new(field, basis.monomials.len());
    all.insert(basis.vector(&layers[0][0]));
    let mut dims = vec![all.rank()];
    for e in 1..=d as usize {
        let mut local = Echelon::new(field, basis.monomials.len());
        let mut layer = Vec::new();
        for &(dg, g) in &gens {
            if dg > e {
                continue;
            }
            for w in &layers[e - dg] {
                let prod = w * g;
                if local.insert(basis.vector(&prod)) {
                    layer.push(prod);
                }
            }
        }
        for p in &layer {
            all.insert(basis.vector(p));
        }
        layers.push(layer);
        dims.push(all.rank());
    }
    Ok(GradedDimProfile { dims })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCheck {
    pub d: u32,
    pub inv_dim: usize,
    pub alg_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    /// Every generator is fixed and the two dimension profiles agree.
    pub ok: bool,
    pub generators_fixed: bool,
    pub per_degree: Vec<DegreeCheck>,
}

/// Compares the fixed space of `A` with the algebra generated by `gens`, degree by degree.
pub fn verify_generators(
    g: &GroupElem,
    gens: &[MultiPoly],
    d: u32,
    budget: &Budget,
) -> Result<VerifyReport> {
    let inv = invariant_space_dim(g, d, budget)?;
    let alg = subalgebra_graded_dim(g.field(), g.nvars(), gens, d, budget)?;
    let mut generators_fixed = true;
    for p in gens {
        if &apply(g, p)? != p {
            generators_fixed = false;
        }
    }
    let per_degree: Vec<DegreeCheck> = (0..=d)
        .map(|j| DegreeCheck {
            d: j,
            inv_dim: inv.dims[j as usize],
            alg_dim: alg.dims[j as usize],
        })
        .collect();
    Ok(VerifyReport {
        ok: generators_fixed && per_degree.iter().all(|c| c.inv_dim == c.alg_dim),
        generators_fixed,
        per_degree,
    })
}

/// Every form `Σ c_i x^i y^{n-i}` (zero included) fixed by `x -> a x, y -> b y`, by
/// scanning all `q^{n+1}` coefficient vectors.
pub fn enumerate_fixed_forms(
    field: &Field,
    a: FieldElem,
    b: FieldElem,
    n: u32,
    budget: &Budget,
) -> Result<Vec<MultiPoly>> {
    let q = field.size();
    let total = (q as u128).checked_pow(n + 1).unwrap_or(u128::MAX);
    if total > budget.forms as u128 {
        return Err(Error::Budget {
            what: "forms to scan",
            needed: total,
            limit: budget.forms as u128,
        });
    }
    let g = GroupElem::new(field, vec![(a, FieldElem::ZERO), (b, FieldElem::ZERO)])?;
    let mut out = Vec::new();
    for idx in 0..total as u64 {
        let mut v = idx;
        let mut form = MultiPoly::zero(field, 2);
        for i in 0..=n {
            let c = field.from_index(v % q)?;
            v /= q;
            form.add_term(Monomial::new(vec![i, n - i]), c);
        }
        if apply(&g, &form)? == form {
            out.push(form);
        }
    }
    Ok(out)
}

/// Number of irreducible forms in the list. A form of degree `n >= 2` is irreducible
/// iff `y` does not divide it and `g(t, 1)` has no monic factor of degree `<= n/2`
/// (checked by dividing by every such polynomial).
pub fn count_irreducible_among(forms: &[MultiPoly]) -> Result<usize> {
    let mut cache: HashMap<Vec<FieldElem>, bool> = HashMap::new();
    let mut count = 0;
    for g in forms {
        if is_irreducible_form(g, &mut cache)? {
            count += 1;
        }
    }
    Ok(count)
}

fn is_irreducible_form(g: &MultiPoly, cache: &mut HashMap<Vec<FieldElem>, bool>) -> Result<bool> {
    if g.nvars() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: g.nvars(),
        });
    }
    let Some(n) = g.total_degree() else {
        return Ok(false);
    };
    if !g.is_homogeneous() {
        return Err(Error::InvalidArgument("not a form".into()));
    }
    match n {
        0 => return Ok(false),
        1 => return Ok(true),
        _ => {}
    }
    let field = g.field();
    let mut coeffs = vec![FieldElem::ZERO; n as usize + 1];
    for (m, &c) in g.terms() {
        coeffs[m.exps()[0] as usize] = c;
    }
    if coeffs[n as usize].is_zero() {
        return Ok(false);
    }
    let f = UniPoly::new(field, coeffs).monic()?;
    if let Some(&known) = cache.get(f.coeffs()) {
        return Ok(known);
    }
    let mut irreducible = true;
    'outer: for d in 1..=n as usize / 2 {
        for idx in 0..field.size().pow(d as u32) {
            if f.rem(&UniPoly::monic_from_index(field, d, idx))?.is_zero() {
                irreducible = false;
                break 'outer;
            }
        }
    }
    cache.insert(f.coeffs().to_vec(), irreducible);
    Ok(irreducible)
}
