//! Incremental row echelon form over `F_q`.

use crate::gf::{Field, FieldElem};

/// Rows kept with a leading 1 at their pivot; each new row is reduced against the
/// earlier ones, so reducing in insertion order never re-fills an earlier pivot.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    width: usize,
    rows: Vec<(usize, Vec<FieldElem>)>,
}

impl Echelon {
    pub fn new(field: &Field, width: usize) -> Self {
        Echelon {
            field: field.clone(),
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `v` against the current rows in place; returns true when nothing is left.
    pub fn reduce(&self, v: &mut [FieldElem]) -> bool {
        let f = &self.field;
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row).skip(*pivot) {
                if !r.is_zero() {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span; returns true when it was independent.
    pub fn insert(&mut self, mut v: Vec<FieldElem>) -> bool {
        assert_eq!(v.len(), self.width, "vector width");
        if self.reduce(&mut v) {
            return false;
        }
        let f = &self.field;
        let pivot = v.iter().position(|x| !x.is_zero()).expect("nonzero");
        let inv = f.inv(v[pivot]).expect("nonzero pivot");
        for x in v.iter_mut().skip(pivot) {
            *x = f.mul(*x, inv);
        }
        self.rows.push((pivot, v));
        true
    }
}
