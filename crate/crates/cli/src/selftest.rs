//! Built-in regression cases from the worked examples.

use std::collections::BTreeSet;

use ffinv_core::homog::{count_invariant_irreducible, FormSpec};
use ffinv_core::prodone::davenport_brute;
use ffinv_core::{generating_set, is_free, reduce_to_type, FieldCtx, GroupElem, MultiPoly, Result};
use serde_json::{json, Value};

fn strings<T: ToString>(xs: &[T]) -> BTreeSet<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn set(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn f17_small() -> Result<bool> {
    let f = FieldCtx::new(17, 1)?;
    let l = f.element_of_order(8)?;
    let g = GroupElem::new(&f, vec![(f.pow(l, 3), f.zero()), (f.pow(l, 2), f.zero())])?;
    let s = generating_set(&g)?;
    Ok(f.format_elem(l) == "2"
        && s.n_star == 1
        && strings(&s.mstar) == set(&["x1^8", "x1^2*x2", "x2^4"]))
}

fn f17_large() -> Result<bool> {
    let f = FieldCtx::new(17, 1)?;
    let l = f.element_of_order(8)?;
    let g = GroupElem::new(&f, vec![(f.pow(l, 6), f.zero()), (f.pow(l, 7), f.zero())])?;
    let s = generating_set(&g)?;
    let want = set(&["x1^4", "x1*x2^6", "x1^2*x2^4", "x1^3*x2^2", "x2^8"]);
    Ok(s.n_star == 3 && strings(&s.mstar) == want)
}

fn type_22(p: u64) -> Result<bool> {
    let f = FieldCtx::new(p, 1)?;
    let g = GroupElem::parse(&f, "-1,0;-1,0;1,1;1,1;1,0")?;
    let s = generating_set(&g)?;
    let want: Result<Vec<MultiPoly>> = [
        "x1^2",
        "x2^2",
        "x1*x2",
        "x3 - x4",
        &format!("x4^{p} - x4"),
        "x5",
    ]
    .iter()
    .map(|t| MultiPoly::parse(&f, 5, t))
    .collect();
    Ok(s.len() == 6 && strings(&s.original) == strings(&want?))
}

fn reduce_h_type() -> Result<bool> {
    let f = FieldCtx::new(5, 1)?;
    let info = reduce_to_type(&GroupElem::parse(&f, "2,3")?);
    Ok((info.h, info.t) == (1, 0)
        && info.conjugator.to_string() == "1,3"
        && info.reduced.to_string() == "2,0")
}

fn free_q2() -> Result<bool> {
    let f = FieldCtx::new(2, 1)?;
    Ok(is_free(&GroupElem::parse(&f, "1,1")?)?.0)
}

fn davenport_4() -> Result<bool> {
    let d = davenport_brute(4)?;
    Ok(d.d == 4 && d.extremal == vec![vec![1; 4], vec![3; 4]])
}

fn homog_count() -> Result<bool> {
    let f = FieldCtx::new(5, 1)?;
    let spec = FormSpec::new(&f, f.from_int(4), f.one())?;
    Ok(count_invariant_irreducible(&spec, 2)? == 8)
}

/// Runs every case; the report lists each case with its outcome.
pub fn run() -> (bool, Value) {
    let cases: [(&str, fn() -> Result<bool>); 8] = [
        ("f17_lambda3_lambda2", f17_small),
        ("f17_lambda6_lambda7", f17_large),
        ("type_2_2_over_f3", || type_22(3)),
        ("type_2_2_over_f5", || type_22(5)),
        ("reduce_h_type_f5", reduce_h_type),
        ("free_over_f2", free_q2),
        ("davenport_4", davenport_4),
        ("homog_irreducible_count", homog_count),
    ];
    let mut all = true;
    let mut report = Vec::new();
    for (name, case) in cases {
        let (ok, error) = match case() {
            Ok(ok) => (ok, None),
            Err(e) => (false, Some(e.to_string())),
        };
        all &= ok;
        report.push(json!({ "name": name, "ok": ok, "error": error }));
    }
    (all, json!({ "ok": all, "cases": report }))
}
