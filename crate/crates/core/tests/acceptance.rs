//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use ffinv_core::gf::euler_phi;
use ffinv_core::homog::{count_invariant_irreducible, graded_component, FormSpec};
use ffinv_core::invariant::{
    is_free, minimal_monomials, nstar_bounds, product_one_vectors, sylow_group_generators,
    sylow_invariant_generators,
};
use ffinv_core::oracle::{
    count_irreducible_among, enumerate_fixed_forms, invariant_space_dim, invariant_space_dim_group,
    subalgebra_graded_dim, verify_generators, Budget,
};
use ffinv_core::prodone::davenport_brute;
use ffinv_core::{
    apply, generating_set, Field, FieldCtx, FieldElem, GroupElem, Monomial, MultiPoly,
};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn field(p: u64, k: u32) -> Field {
    FieldCtx::new(p, k).unwrap()
}

fn homotheties(f: &Field, hs: &[FieldElem]) -> GroupElem {
    GroupElem::new(f, hs.iter().map(|&a| (a, f.zero())).collect()).unwrap()
}

/// Multisets of size `h` drawn from `items`, as nondecreasing index tuples.
fn multisets<T: Copy>(items: &[T], h: usize) -> Vec<Vec<T>> {
    fn go<T: Copy>(items: &[T], h: usize, from: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == h {
            out.push(cur.clone());
            return;
        }
        for i in from..items.len() {
            cur.push(items[i]);
            go(items, h, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, h, 0, &mut Vec::new(), &mut out);
    out
}

fn non_identity_units(f: &Field) -> Vec<FieldElem> {
    f.elements()
        .filter(|x| !x.is_zero() && !x.is_one())
        .collect()
}

fn exps(ms: &[Monomial]) -> BTreeSet<Vec<u32>> {
    ms.iter().map(|m| m.exps().to_vec()).collect()
}

fn criterion_1() -> Outcome {
    let f = field(17, 1);
    let lambda = f.element_of_order(8).unwrap();
    let pw = |e| f.pow(lambda, e);
    let cases: [(u64, u64, &[[u32; 2]], usize); 2] = [
        (3, 2, &[[8, 0], [2, 1], [0, 4]], 1),
        (6, 7, &[[4, 0], [1, 6], [2, 4], [3, 2], [0, 8]], 3),
    ];
    let mut notes = vec![format!("lambda={}", f.format_elem(lambda))];
    let mut ok = f.format_elem(lambda) == "2";
    for (e1, e2, want, n_want) in cases {
        let set = generating_set(&homotheties(&f, &[pw(e1), pw(e2)])).unwrap();
        let want: BTreeSet<Vec<u32>> = want.iter().map(|v| v.to_vec()).collect();
        let good = exps(&set.mstar) == want && set.n_star == n_want;
        ok &= good;
        notes.push(format!(
            "H=(l^{e1},l^{e2}): |M*|={} N={}",
            set.mstar.len(),
            set.n_star
        ));
    }
    check(ok, notes.join("; "))
}

fn criterion_2() -> Outcome {
    let budget = Budget::default();
    let mut ok = true;
    let mut notes = Vec::new();
    for p in [3u64, 5] {
        let f = field(p, 1);
        let g = GroupElem::parse(&f, "-1,0;-1,0;1,1;1,1;1,0").unwrap();
        let set = generating_set(&g).unwrap();
        let want: BTreeSet<String> = [
            "x1^2",
            "x2^2",
            "x1*x2",
            "x3 - x4",
            &format!("x4^{p} - x4"),
            "x5",
        ]
        .iter()
        .map(|s| MultiPoly::parse(&f, 5, s).unwrap().to_string())
        .collect();
        let got: BTreeSet<String> = set.original.iter().map(|g| g.to_string()).collect();
        let same = got == want && set.original.len() == 6;
        let full = verify_generators(&g, &set.original, 4, &budget).unwrap().ok;
        let mut undetected = Vec::new();
        let mut late = Vec::new();
        for i in 0..set.original.len() {
            let mut rest = set.original.clone();
            let removed = rest.remove(i);
            if verify_generators(&g, &rest, 4, &budget).unwrap().ok {
                undetected.push(removed.to_string());
                // the removal is still visible once the degree bound reaches deg(removed)
                let deg = removed.total_degree().unwrap();
                if !verify_generators(&g, &rest, deg, &budget).unwrap().ok {
                    late.push(format!("{removed} at degree {deg}"));
                }
            }
        }
        ok &= same && full && undetected.is_empty();
        let mut note = format!(
            "F_{p}: set={} verify<=4={} ",
            if same { "ok" } else { "MISMATCH" },
            full
        );
        if undetected.is_empty() {
            note.push_str("every removal detected at degree <=4");
        } else {
            note.push_str(&format!(
                "removal undetected at degree <=4: [{}] (detected: [{}])",
                undetected.join(", "),
                late.join(", ")
            ));
        }
        notes.push(note);
    }
    check(ok, notes.join("; "))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (p, k) in [(5u64, 1u32), (7, 1), (3, 2)] {
        let f = field(p, k);
        let units = non_identity_units(&f);
        for h in 1..=3 {
            for hs in multisets(&units, h) {
                let orders: Vec<u64> = hs.iter().map(|&a| f.elem_order(a).unwrap()).collect();
                let coprime = (0..h).all(|i| (i + 1..h).all(|j| orders[i].gcd(&orders[j]) == 1));
                let mstar = minimal_monomials(&product_one_vectors(&f, &hs).unwrap());
                let n_star = mstar.len() - h;
                let pure: BTreeSet<Vec<u32>> = (0..h)
                    .map(|i| {
                        let mut e = vec![0; h];
                        e[i] = orders[i] as u32;
                        e
                    })
                    .collect();
                let (free, _) = is_free(&homotheties(&f, &hs)).unwrap();
                checked += 1;
                if coprime != (n_star == 0)
                    || (n_star == 0) != (exps(&mstar) == pure)
                    || free != coprime
                {
                    bad.push(format!(
                        "q={} H={:?}",
                        f.size(),
                        hs.iter().map(|&x| f.format_elem(x)).collect::<Vec<_>>()
                    ));
                }
            }
        }
    }
    check(
        bad.is_empty(),
        format!("{checked} multisets, {} disagreements {:?}", bad.len(), bad),
    )
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (p, k) in [(3u64, 1u32), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
        let f = field(p, k);
        let units = non_identity_units(&f);
        for h in 2..=3 {
            for hs in multisets(&units, h) {
                let g = homotheties(&f, &hs);
                let b = nstar_bounds(&g).unwrap();
                let constant = hs.iter().all(|&x| x == hs[0]);
                checked += 1;
                let good = (b.n_star as u128) <= b.bound
                    && b.attained == constant
                    && (b.generators as u128) <= b.global_bound;
                if !good {
                    bad.push(format!(
                        "q={} H={:?} N={} bound={}",
                        f.size(),
                        hs,
                        b.n_star,
                        b.bound
                    ));
                }
            }
        }
    }
    // over F_3 every H = (-1, ..., -1) gives n + h(h-1)/2 generators
    let f3 = field(3, 1);
    for h in 2..=3usize {
        for n in h..=h + 1 {
            let mut pairs = vec![(f3.from_int(-1), f3.zero()); h];
            pairs.resize(n, (f3.one(), f3.zero()));
            let set = generating_set(&GroupElem::new(&f3, pairs).unwrap()).unwrap();
            checked += 1;
            if set.len() != n + h * (h - 1) / 2 {
                bad.push(format!("q=3 h={h} n={n}: {} generators", set.len()));
            }
        }
    }
    check(
        bad.is_empty(),
        format!("{checked} cases, {} violations {:?}", bad.len(), bad),
    )
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    for m in 1..=12u64 {
        let d = davenport_brute(m).unwrap();
        let want: Vec<Vec<u64>> = if m == 1 {
            vec![vec![0]]
        } else {
            (1..m)
                .filter(|g| g.gcd(&m) == 1)
                .map(|g| vec![g; m as usize])
                .collect()
        };
        if d.d as u64 != m || d.extremal != want || want.len() as u64 != euler_phi(m).unwrap() {
            bad.push(m);
        }
    }
    check(bad.is_empty(), format!("m=1..12, failures at {bad:?}"))
}

fn criterion_6() -> Outcome {
    let budget = Budget::default();
    let mut checked = 0;
    let mut bad = Vec::new();
    for p in [3u64, 5] {
        let f = field(p, 1);
        let x = MultiPoly::var(&f, 1, 0);
        let same = |g: &GroupElem, gens: &[MultiPoly]| {
            invariant_space_dim(g, 6, &budget).unwrap()
                == subalgebra_graded_dim(&f, 1, gens, 6, &budget).unwrap()
        };
        for b in f.elements().skip(1) {
            let g = GroupElem::new(&f, vec![(f.one(), b)]).unwrap();
            let set = generating_set(&g).unwrap();
            let want = &x.pow(p as u32) - &x.scale(f.pow(b, p - 1));
            checked += 1;
            if set.original != vec![want.clone()] || !same(&g, &[want]) {
                bad.push(format!("q={p} x->x+{}", f.format_elem(b)));
            }
        }
        for a in non_identity_units(&f) {
            let g = GroupElem::new(&f, vec![(a, f.zero())]).unwrap();
            let set = generating_set(&g).unwrap();
            let want = x.pow(f.elem_order(a).unwrap() as u32);
            checked += 1;
            if set.original != vec![want.clone()] || !same(&g, &[want]) {
                bad.push(format!("q={p} x->{}x", f.format_elem(a)));
            }
        }
        let all: Vec<GroupElem> = f
            .elements()
            .skip(1)
            .map(|b| GroupElem::new(&f, vec![(f.one(), b)]).unwrap())
            .collect();
        let inv = invariant_space_dim_group(&f, 1, &all, 6, &budget).unwrap();
        let alg =
            subalgebra_graded_dim(&f, 1, &[&x.pow(f.size() as u32) - &x], 6, &budget).unwrap();
        checked += 1;
        if inv != alg {
            bad.push(format!("q={p} all translations"));
        }
    }
    check(
        bad.is_empty(),
        format!("{checked} profiles to degree 6, mismatches {bad:?}"),
    )
}

fn criterion_7() -> Outcome {
    let budget = Budget::default();
    let mut notes = Vec::new();
    let mut ok = true;
    for (p, k) in [(2u64, 2u32), (5, 1), (3, 2)] {
        let f = field(p, k);
        let q = f.size();
        let mut primes: Vec<u64> = f.order_factors().iter().map(|&(r, _)| r).collect();
        primes.push(p);
        for r in primes {
            let group = sylow_group_generators(&f, 2, r).unwrap();
            let gens = sylow_invariant_generators(&f, 2, r).unwrap();
            let inv = invariant_space_dim_group(&f, 2, &group, q as u32, &budget).unwrap();
            let alg = subalgebra_graded_dim(&f, 2, &gens, q as u32, &budget).unwrap();
            ok &= inv == alg;
            notes.push(format!(
                "q={q} r={r}:{}",
                if inv == alg { "=" } else { "!=" }
            ));
        }
    }
    check(ok, notes.join(" "))
}

fn criterion_8() -> Outcome {
    let budget = Budget::default();
    let mut checked = 0;
    let mut bad = Vec::new();
    for p in [3u64, 5] {
        let f = field(p, 1);
        for a in f.elements().skip(1) {
            for b in f.elements().skip(1) {
                let spec = FormSpec::new(&f, a, b).unwrap();
                for n in 1..=6u32 {
                    let size = graded_component(&spec, n as u64).unwrap().size;
                    let count = enumerate_fixed_forms(&f, a, b, n, &budget).unwrap().len() as u128;
                    checked += 1;
                    if size != count {
                        bad.push(format!("q={p} a={a:?} b={b:?} n={n}: {size} vs {count}"));
                    }
                }
            }
        }
    }
    check(
        bad.is_empty(),
        format!("{checked} components, mismatches {bad:?}"),
    )
}

fn criterion_9() -> Outcome {
    let budget = Budget::default();
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut spot = None;
    for p in [3u64, 5] {
        let f = field(p, 1);
        for a in f.elements().skip(1) {
            for b in f.elements().skip(1) {
                let spec = FormSpec::new(&f, a, b).unwrap();
                for n in 2..=6u32 {
                    let formula = count_invariant_irreducible(&spec, n as u64).unwrap();
                    let forms = enumerate_fixed_forms(&f, a, b, n, &budget).unwrap();
                    let brute = count_irreducible_among(&forms).unwrap() as u128;
                    checked += 1;
                    if formula != brute {
                        bad.push(format!(
                            "q={p} a={} b={} n={n}: {formula} vs {brute}",
                            f.format_elem(a),
                            f.format_elem(b)
                        ));
                    }
                    if p == 5 && a == f.from_int(4) && b.is_one() && n == 2 {
                        spot = Some((formula, brute));
                    }
                }
            }
        }
    }
    let spot_ok = spot == Some((8, 8));
    check(
        bad.is_empty() && spot_ok,
        format!("{checked} counts, q=5 a=4 b=1 n=2 -> {spot:?}, mismatches {bad:?}"),
    )
}

fn random_elem(rng: &mut ChaCha8Rng, f: &Field, n: usize) -> GroupElem {
    let q = f.size();
    let pairs = (0..n)
        .map(|_| {
            let a = f.from_index(rng.gen_range(1..q)).unwrap();
            let b = if rng.gen_bool(0.3) {
                f.zero()
            } else {
                f.from_index(rng.gen_range(0..q)).unwrap()
            };
            let a = if rng.gen_bool(0.3) { f.one() } else { a };
            (a, b)
        })
        .collect();
    GroupElem::new(f, pairs).unwrap()
}

fn random_poly(rng: &mut ChaCha8Rng, f: &Field, n: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(f, n);
    for _ in 0..rng.gen_range(1..5) {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..4)).collect();
        p.add_term(
            Monomial::new(e),
            f.from_index(rng.gen_range(1..f.size())).unwrap(),
        );
    }
    p
}

fn criterion_10() -> Outcome {
    let fields = [
        field(2, 1),
        field(3, 1),
        field(2, 2),
        field(5, 1),
        field(17, 1),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = [0usize; 4];
    let rounds = 10_000;
    for _ in 0..rounds {
        let f = &fields[rng.gen_range(0..fields.len())];
        let n = rng.gen_range(1..=3);
        let (a, a2) = (random_elem(&mut rng, f, n), random_elem(&mut rng, f, n));
        let (p1, p2) = (random_poly(&mut rng, f, n), random_poly(&mut rng, f, n));
        let img = apply(&a, &p1).unwrap();
        if img.mdeg().ok() != p1.mdeg().ok() {
            failures[0] += 1;
        }
        if apply(&a, &(&p1 * &p2)).unwrap() != &img * &apply(&a, &p2).unwrap() {
            failures[1] += 1;
        }
        if apply(&a2, &img).unwrap() != apply(&a.mul(&a2).unwrap(), &p1).unwrap() {
            failures[2] += 1;
        }
        let mut x = a.clone();
        let mut d = 1;
        while !x.is_identity() {
            x = x.mul(&a).unwrap();
            d += 1;
        }
        if d != a.element_order() {
            failures[3] += 1;
        }
    }
    check(
        failures.iter().all(|&c| c == 0),
        format!(
            "{} checks over q in {{2,3,4,5,17}}; failures mdeg/mult/compat/order = {:?}",
            rounds * 4,
            failures
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        (
            "worked example over F_17",
            criterion_1,
            Duration::from_secs(1),
        ),
        (
            "type-(2,2) example in G^5",
            criterion_2,
            Duration::from_secs(30),
        ),
        ("freeness criterion", criterion_3, Duration::from_secs(60)),
        ("bounds on N", criterion_4, Duration::MAX),
        (
            "Davenport constant of C_m",
            criterion_5,
            Duration::from_secs(60),
        ),
        ("univariate invariants", criterion_6, Duration::MAX),
        ("Sylow invariants", criterion_7, Duration::MAX),
        (
            "homogeneous component sizes",
            criterion_8,
            Duration::from_secs(120),
        ),
        ("irreducible invariant count", criterion_9, Duration::MAX),
        ("action axioms", criterion_10, Duration::MAX),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome {
                ok: false,
                detail: format!("panicked: {msg}"),
            }
        });
        let elapsed = start.elapsed();
        let in_time = elapsed <= *limit;
        let ok = outcome.ok && in_time;
        if !ok {
            failed += 1;
        }
        let timing = if *limit == Duration::MAX {
            format!("{:.2}s", elapsed.as_secs_f64())
        } else {
            format!("{:.2}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs())
        };
        println!(
            "criterion {:>2} {}: {} -- {} ({timing})",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            name,
            outcome.detail
        );
    }
    println!(
        "acceptance: {} passed, {} failed",
        criteria.len() - failed,
        failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
