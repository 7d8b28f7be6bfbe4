//! Product-one sequences: multisets of units whose product is 1.
//!
//! A monomial `x_1^{b_1} ... x_h^{b_h}` over homothety entries `a_i` corresponds to the
//! sequence with `a_i` repeated `b_i` times; product-one monomials give product-one
//! sequences and minimal monomials give minimal ones.

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::mpoly::Monomial;

/// A product-one sequence over `F_q^*`, kept sorted (sequences are taken up to
/// permutation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProdOneSeq {
    field: Field,
    elements: Vec<FieldElem>,
}

impl ProdOneSeq {
    pub fn new(field: &Field, mut elements: Vec<FieldElem>) -> Result<Self> {
        if elements.iter().any(|e| e.is_zero()) {
            return Err(Error::ZeroElement);
        }
        let prod = elements
            .iter()
            .fold(FieldElem::ONE, |acc, &x| field.mul(acc, x));
        if !prod.is_one() {
            return Err(Error::InvalidArgument("sequence product is not 1".into()));
        }
        elements.sort();
        Ok(ProdOneSeq {
            field: field.clone(),
            elements,
        })
    }

    pub fn elements(&self) -> &[FieldElem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True when no proper nonempty sub-multiset has product 1.
    pub fn is_minimal(&self) -> bool {
        // distinct values with multiplicities; walk all count vectors
        let mut groups: Vec<(FieldElem, usize)> = Vec::new();
        for &x in &self.elements {
            match groups.last_mut() {
                Some((y, c)) if *y == x => *c += 1,
                _ => groups.push((x, 1)),
            }
        }
        let f = &self.field;
        let total = self.elements.len();
        let mut counts = vec![0usize; groups.len()];
        loop {
            let mut i = 0;
            loop {
                if i == groups.len() {
                    return true;
                }
                if counts[i] < groups[i].1 {
                    counts[i] += 1;
                    break;
                }
                counts[i] = 0;
                i += 1;
            }
            let size: usize = counts.iter().sum();
            if size == total {
                continue;
            }
            let prod = groups
                .iter()
                .zip(&counts)
                .fold(FieldElem::ONE, |acc, (&(x, _), &c)| {
                    f.mul(acc, f.pow(x, c as u64))
                });
            if prod.is_one() {
                return false;
            }
        }
    }
}

/// `a_i` repeated `b_i` times. Exponents past `hs.len()` must be zero.
pub fn monomial_to_sequence(field: &Field, m: &Monomial, hs: &[FieldElem]) -> Result<ProdOneSeq> {
    let exps = m.exps();
    if exps.len() < hs.len() {
        return Err(Error::DimensionMismatch {
            expected: hs.len(),
            got: exps.len(),
        });
    }
    if exps[hs.len()..].iter().any(|&e| e > 0) {
        return Err(Error::InvalidArgument(
            "monomial involves non-homothety variables".into(),
        ));
    }
    let mut elements = Vec::new();
    for (&a, &b) in hs.iter().zip(exps) {
        elements.extend(std::iter::repeat_n(a, b as usize));
    }
    ProdOneSeq::new(field, elements)
}

pub fn is_minimal_product_one(s: &ProdOneSeq) -> bool {
    s.is_minimal()
}

/// Largest length of a minimal product-one sequence in the cyclic group `C_m`, and all
/// minimal sequences of that length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Davenport {
    pub m: u64,
    pub d: usize,
    /// Sorted residues mod `m` (the group written additively), in lexicographic order.
    pub extremal: Vec<Vec<u64>>,
}

pub const DAVENPORT_MAX: u64 = 16;

/// Exhaustive search in `Z/m`. Minimal zero-sum sequences of length at least 2 are
/// exactly `T` followed by `-σ(T)` for nonempty zero-sum-free `T`; the singleton `(0)`
/// is the only one of length 1.
pub fn davenport_brute(m: u64) -> Result<Davenport> {
    if !(1..=DAVENPORT_MAX).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "m must lie in 1..={DAVENPORT_MAX}, got {m}"
        )));
    }
    let mut best = vec![vec![0u64]];
    let mut d = 1usize;
    let mut seq = Vec::new();
    zero_sum_free(m, 1, 0, 0, &mut seq, &mut |t, sum| {
        let len = t.len() + 1;
        if len < d {
            return;
        }
        let mut s = t.to_vec();
        s.push((m - sum) % m);
        s.sort_unstable();
        if len > d {
            d = len;
            best.clear();
        }
        best.push(s);
    });
    best.sort();
    best.dedup();
    Ok(Davenport {
        m,
        d,
        extremal: best,
    })
}

/// Visits every nonempty zero-sum-free multiset over `1..m` with entries `>= from`.
/// `sums` has bit `s` set when some nonempty sub-multiset sums to `s`.
fn zero_sum_free(
    m: u64,
    from: u64,
    sums: u32,
    total: u64,
    seq: &mut Vec<u64>,
    visit: &mut dyn FnMut(&[u64], u64),
) {
    for g in from..m {
        let shifted = rotate(sums, g, m);
        let next = sums | shifted | 1 << g;
        if next & 1 != 0 {
            continue;
        }
        seq.push(g);
        let t = (total + g) % m;
        visit(seq, t);
        zero_sum_free(m, g, next, t, seq, visit);
        seq.pop();
    }
}

fn rotate(bits: u32, by: u64, m: u64) -> u32 {
    let mask = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    let by = by as u32;
    ((bits << by) | (bits >> (m as u32 - by))) & mask
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{euler_phi, FieldCtx};
    use crate::invariant::{minimal_monomials, product_one_vectors};

    #[test]
    fn sequence_examples() {
        let f17 = FieldCtx::new(17, 1).unwrap();
        let hs = [f17.from_int(8), f17.from_int(4)];
        let s = monomial_to_sequence(&f17, &Monomial::new(vec![2, 1]), &hs).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.is_minimal());
        let s = monomial_to_sequence(&f17, &Monomial::new(vec![8, 0]), &hs).unwrap();
        assert_eq!(s.elements(), &[f17.from_int(8); 8][..]);

        let f5 = FieldCtx::new(5, 1).unwrap();
        let m1 = [f5.from_int(4), f5.from_int(4)];
        let s = monomial_to_sequence(&f5, &Monomial::new(vec![2, 2]), &m1).unwrap();
        assert_eq!(s.len(), 4);
        assert!(!is_minimal_product_one(&s));
        assert!(monomial_to_sequence(&f5, &Monomial::new(vec![1, 0, 1]), &m1).is_err());
        assert!(monomial_to_sequence(&f5, &Monomial::new(vec![1, 0]), &m1).is_err());
    }

    #[test]
    fn minimality_examples() {
        let f7 = FieldCtx::new(7, 1).unwrap();
        let g = f7.from_int(3);
        let s = ProdOneSeq::new(&f7, vec![g, f7.inv(g).unwrap()]).unwrap();
        assert!(s.is_minimal());
        assert!(ProdOneSeq::new(&f7, vec![f7.one()]).unwrap().is_minimal());
        let s = ProdOneSeq::new(&f7, vec![f7.one(), f7.one()]).unwrap();
        assert!(!s.is_minimal());
        assert!(ProdOneSeq::new(&f7, vec![g]).is_err());
    }

    #[test]
    fn mstar_sequences_are_minimal() {
        for q in [5u64, 7, 13] {
            let f = FieldCtx::new(q, 1).unwrap();
            let units: Vec<_> = f.elements().skip(2).collect();
            for &a in &units {
                for &b in &units {
                    let hs = [a, b];
                    let c = product_one_vectors(&f, &hs).unwrap();
                    let mstar = minimal_monomials(&c);
                    for m in &c {
                        let s = monomial_to_sequence(&f, m, &hs).unwrap();
                        assert_eq!(s.is_minimal(), mstar.contains(m));
                    }
                }
            }
        }
    }

    #[test]
    fn davenport_examples() {
        let d1 = davenport_brute(1).unwrap();
        assert_eq!(d1.d, 1);
        assert_eq!(d1.extremal, vec![vec![0]]);
        let d4 = davenport_brute(4).unwrap();
        assert_eq!(d4.d, 4);
        assert_eq!(d4.extremal, vec![vec![1; 4], vec![3; 4]]);
        let d8 = davenport_brute(8).unwrap();
        assert_eq!((d8.d, d8.extremal.len()), (8, 4));
        assert!(davenport_brute(0).is_err());
        assert!(davenport_brute(17).is_err());
    }

    #[test]
    fn davenport_up_to_sixteen() {
        for m in 1..=16 {
            let d = davenport_brute(m).unwrap();
            assert_eq!(d.d as u64, m);
            assert_eq!(d.extremal.len() as u64, euler_phi(m).unwrap());
        }
    }
}
