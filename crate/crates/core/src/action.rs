//! The group `G^n` of coordinatewise affine maps `x_i -> a_i x_i + b_i` and its
//! substitution action on polynomials.
//!
//! Substitution composes on the right: substituting `A` and then `A'` is the same as
//! substituting the matrix product `A·A'` once, i.e.
//! `apply(A', apply(A, f)) == apply(&A.mul(&A')?, f)`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::mpoly::{Monomial, MultiPoly};

/// An element of `G^n`: one upper-triangular matrix `[[a, b], [0, 1]]` per coordinate.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupElem {
    field: Field,
    pairs: Vec<(FieldElem, FieldElem)>,
}

impl fmt::Debug for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElem({self})")
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                format!(
                    "{},{}",
                    self.field.format_elem(a),
                    self.field.format_elem(b)
                )
            })
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl GroupElem {
    pub fn new(field: &Field, pairs: Vec<(FieldElem, FieldElem)>) -> Result<Self> {
        if pairs.iter().any(|(a, _)| a.is_zero()) {
            return Err(Error::ZeroElement);
        }
        if pairs
            .iter()
            .any(|&(a, b)| a.index() >= field.size() || b.index() >= field.size())
        {
            return Err(Error::ContextMismatch);
        }
        Ok(GroupElem {
            field: field.clone(),
            pairs,
        })
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        GroupElem {
            field: field.clone(),
            pairs: vec![(FieldElem::ONE, FieldElem::ZERO); n],
        }
    }

    /// Identity everywhere except coordinate `i`.
    pub fn single(field: &Field, n: usize, i: usize, a: FieldElem, b: FieldElem) -> Result<Self> {
        let mut g = GroupElem::identity(field, n);
        if i >= n {
            return Err(Error::InvalidArgument(format!(
                "coordinate {i} out of range"
            )));
        }
        g.pairs[i] = (a, b);
        GroupElem::new(field, g.pairs)
    }

    /// Parses `"a,b;a,b;..."`, where each entry uses the field element syntax.
    pub fn parse(field: &Field, s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for part in s.split(';') {
            let part = part.trim();
            let mut depth = 0i32;
            let mut split = None;
            for (i, ch) in part.char_indices() {
                match ch {
                    '[' => depth += 1,
                    ']' => depth -= 1,
                    ',' if depth == 0 => {
                        if split.is_some() {
                            return Err(Error::Parse(format!("too many entries in pair {part:?}")));
                        }
                        split = Some(i);
                    }
                    _ => {}
                }
            }
            let i = split.ok_or_else(|| Error::Parse(format!("expected \"a,b\", got {part:?}")))?;
            let a = field.parse_elem(&part[..i])?;
            let b = field.parse_elem(&part[i + 1..])?;
            pairs.push((a, b));
        }
        GroupElem::new(field, pairs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(FieldElem, FieldElem)] {
        &self.pairs
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| a.is_one() && b.is_zero())
    }

    fn check(&self, other: &GroupElem) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::ContextMismatch);
        }
        if self.nvars() != other.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                got: other.nvars(),
            });
        }
        Ok(())
    }

    /// Coordinatewise matrix product `self · other`.
    pub fn mul(&self, other: &GroupElem) -> Result<GroupElem> {
        self.check(other)?;
        let f = &self.field;
        let pairs = self
            .pairs
            .iter()
            .zip(&other.pairs)
            .map(|(&(a1, b1), &(a, b))| (f.mul(a1, a), f.add(f.mul(a1, b), b1)))
            .collect();
        Ok(GroupElem {
            field: f.clone(),
            pairs,
        })
    }

    pub fn inverse(&self) -> GroupElem {
        let f = &self.field;
        let pairs = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                let ai = f.inv(a).expect("a_i is nonzero");
                (ai, f.neg(f.mul(ai, b)))
            })
            .collect();
        GroupElem {
            field: f.clone(),
            pairs,
        }
    }

    pub fn pow(&self, mut e: u64) -> GroupElem {
        let mut acc = GroupElem::identity(&self.field, self.nvars());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same group");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same group");
            }
        }
        acc
    }

    /// `self · other · self^{-1}`.
    pub fn conjugate(&self, other: &GroupElem) -> Result<GroupElem> {
        self.mul(other)?.mul(&self.inverse())
    }

    /// Order from the per-coordinate rule: `ord(a)` when `a != 1`, `p` for a nonzero
    /// translation, `1` for the identity; combined by lcm.
    pub fn element_order(&self) -> u64 {
        let f = &self.field;
        self.pairs.iter().fold(1u64, |acc, &(a, b)| {
            let o = if !a.is_one() {
                f.elem_order(a).expect("a_i is nonzero")
            } else if b.is_zero() {
                1
            } else {
                f.characteristic()
            };
            acc.lcm(&o)
        })
    }

    /// Restriction to the given coordinates, in that order.
    pub fn permuted(&self, perm: &[usize]) -> GroupElem {
        GroupElem {
            field: self.field.clone(),
            pairs: perm.iter().map(|&i| self.pairs[i]).collect(),
        }
    }
}

/// Substitutes `x_i -> a_i x_i + b_i` into `f`.
pub fn apply(g: &GroupElem, f: &MultiPoly) -> Result<MultiPoly> {
    if *g.field != **f.field() {
        return Err(Error::ContextMismatch);
    }
    let n = g.nvars();
    if n != f.nvars() {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: f.nvars(),
        });
    }
    let field = &g.field;
    let mut max_exp = vec![0u32; n];
    for (m, _) in f.terms() {
        for (i, &e) in m.exps().iter().enumerate() {
            max_exp[i] = max_exp[i].max(e);
        }
    }
    // powers[i][e] = coefficients of (a_i x + b_i)^e, low degree first
    let powers: Vec<Vec<Vec<FieldElem>>> = g
        .pairs
        .iter()
        .zip(&max_exp)
        .map(|(&(a, b), &top)| {
            let mut rows = vec![vec![FieldElem::ONE]];
            for e in 1..=top as usize {
                let prev = &rows[e - 1];
                let mut row = vec![FieldElem::ZERO; e + 1];
                for (j, &c) in prev.iter().enumerate() {
                    row[j] = field.add(row[j], field.mul(c, b));
                    row[j + 1] = field.add(row[j + 1], field.mul(c, a));
                }
                rows.push(row);
            }
            rows
        })
        .collect();

    let mut out = MultiPoly::zero(field, n);
    let mut exps = vec![0u32; n];
    for (m, &c) in f.terms() {
        expand(field, &powers, m, 0, c, &mut exps, &mut out);
    }
    Ok(out)
}

fn expand(
    field: &Field,
    powers: &[Vec<Vec<FieldElem>>],
    m: &Monomial,
    i: usize,
    coeff: FieldElem,
    exps: &mut Vec<u32>,
    out: &mut MultiPoly,
) {
    if i == exps.len() {
        out.add_term(Monomial::new(exps.clone()), coeff);
        return;
    }
    for (j, &c) in powers[i][m.exps()[i] as usize].iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        exps[i] = j as u32;
        expand(field, powers, m, i + 1, field.mul(coeff, c), exps, out);
    }
    exps[i] = 0;
}

/// Result of conjugating an element into reduced `(h, t)` form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeInfo {
    pub h: usize,
    pub t: usize,
    /// First-diagonal entries of the homothety coordinates, in reduced order.
    pub homotheties: Vec<FieldElem>,
    /// `A0`, in the original coordinates.
    pub conjugator: GroupElem,
    /// `A0 · A · A0^{-1}` with coordinates reordered by `permutation`.
    pub reduced: GroupElem,
    /// `permutation[j]` is the original coordinate placed at reduced position `j`.
    pub permutation: Vec<usize>,
}

impl TypeInfo {
    /// `A0 · A · A0^{-1}` in the original coordinate order.
    pub fn conjugated(&self) -> GroupElem {
        let mut pairs = vec![(FieldElem::ONE, FieldElem::ZERO); self.permutation.len()];
        for (j, &i) in self.permutation.iter().enumerate() {
            pairs[i] = self.reduced.pairs[j];
        }
        GroupElem {
            field: self.reduced.field.clone(),
            pairs,
        }
    }

    /// Carries a polynomial written in the reduced variables back to an invariant of
    /// the original element: rename variables, then substitute the conjugator.
    pub fn to_original(&self, f: &MultiPoly) -> Result<MultiPoly> {
        let renamed = f.rename_vars(&self.permutation, self.permutation.len())?;
        apply(&self.conjugator, &renamed)
    }
}

/// Conjugates each coordinate to `[[a,0],[0,1]]` (`a != 1`), `[[1,1],[0,1]]` or the
/// identity, then orders coordinates homotheties first, translations next, identities
/// last, keeping relative order within each class.
pub fn reduce_to_type(g: &GroupElem) -> TypeInfo {
    let f = &g.field;
    let n = g.nvars();
    let mut conj = Vec::with_capacity(n);
    let mut classes: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (i, &(a, b)) in g.pairs.iter().enumerate() {
        if !a.is_one() {
            let shift = f.div(b, f.sub(a, FieldElem::ONE)).expect("a != 1");
            conj.push((FieldElem::ONE, shift));
            classes[0].push(i);
        } else if !b.is_zero() {
            conj.push((f.inv(b).expect("b != 0"), FieldElem::ZERO));
            classes[1].push(i);
        } else {
            conj.push((FieldElem::ONE, FieldElem::ZERO));
            classes[2].push(i);
        }
    }
    let conjugator = GroupElem {
        field: f.clone(),
        pairs: conj,
    };
    let conjugated = conjugator.conjugate(g).expect("same group");
    let permutation: Vec<usize> = classes.concat();
    let reduced = conjugated.permuted(&permutation);
    let h = classes[0].len();
    TypeInfo {
        h,
        t: classes[1].len(),
        homotheties: reduced.pairs[..h].iter().map(|&(a, _)| a).collect(),
        conjugator,
        reduced,
        permutation,
    }
}

/// The `(h, t)` counts of an element already in reduced form.
pub fn reduced_type(g: &GroupElem) -> Result<(usize, usize)> {
    let mut stage = 0;
    let (mut h, mut t) = (0, 0);
    for &(a, b) in &g.pairs {
        let class = if !a.is_one() && b.is_zero() {
            0
        } else if a.is_one() && b.is_one() {
            1
        } else if a.is_one() && b.is_zero() {
            2
        } else {
            return Err(Error::NotReduced);
        };
        if class < stage {
            return Err(Error::NotReduced);
        }
        stage = class;
        match class {
            0 => h += 1,
            1 => t += 1,
            _ => {}
        }
    }
    Ok((h, t))
}

/// Splits a reduced element as `A1 · A2`: the homothety part and the translation part.
pub fn canonical_decomposition(g: &GroupElem) -> Result<(GroupElem, GroupElem)> {
    let (h, t) = reduced_type(g)?;
    let n = g.nvars();
    let mut a1 = GroupElem::identity(&g.field, n);
    let mut a2 = GroupElem::identity(&g.field, n);
    a1.pairs[..h].copy_from_slice(&g.pairs[..h]);
    a2.pairs[h..h + t].copy_from_slice(&g.pairs[h..h + t]);
    Ok((a1, a2))
}
