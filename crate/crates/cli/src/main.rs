//! `ffinv`: JSON front end for ffinv-core.

mod selftest;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ffinv_core::homog::{
    count_invariant_irreducible, graded_component, invariant_factors_of_binomial, FormSpec, Mat2,
};
use ffinv_core::invariant::{nstar_bounds, FreeWitness};
use ffinv_core::oracle::{verify_generators, Budget};
use ffinv_core::prodone::davenport_brute;
use ffinv_core::{
    canonical_decomposition, generating_set, is_free, reduce_to_type, Error, Field, FieldCtx,
    FieldElem, GroupElem, MultiPoly,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "ffinv",
    version,
    about = "Invariants of affine substitutions over finite fields"
)]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugate an element into reduced (h, t) form.
    Reduce(ElementArgs),
    /// Minimal generating set of the fixed-point subring.
    Generators(ElementArgs),
    /// Decide whether the fixed-point subring is a polynomial ring.
    Free(ElementArgs),
    /// Bounds on the number of mixed generators.
    Bound(ElementArgs),
    /// Davenport constant of the cyclic group of order m, with extremal sequences.
    Davenport {
        #[arg(long)]
        m: u64,
    },
    /// Degree-n fixed forms of x -> a x, y -> b y.
    Homog {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        n: u64,
    },
    /// Irreducible fixed forms of degree n dividing a x^(q^r-1) - b y^(q^r-1).
    HomogFactors {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: usize,
    },
    /// Compare graded dimensions of the invariants and of the generated subalgebra.
    Verify {
        #[command(flatten)]
        element: ElementArgs,
        #[arg(long)]
        max_degree: u32,
    },
    /// Run the built-in regression examples.
    Selftest,
}

#[derive(Args)]
struct ElementArgs {
    /// "p" or "p^k".
    #[arg(long)]
    field: String,
    /// Pairs "a,b;a,b;...".
    #[arg(long, allow_hyphen_values = true)]
    element: String,
    /// Replace `L` and `L^k` in element text by powers of the smallest element of this order.
    #[arg(long)]
    lambda_order: Option<u64>,
}

#[derive(Args)]
struct FormArgs {
    #[arg(long)]
    field: String,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Diagonal matrix "a,0;0,b", instead of --a/--b.
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,
    #[arg(long)]
    lambda_order: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Selftest => {
            let (ok, report) = selftest::run();
            emit(&report, cli.pretty);
            return if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
        command => run(command),
    };
    match result {
        Ok(v) => {
            emit(&v, cli.pretty);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("ffinv: {e}");
            ExitCode::from(match e {
                Error::Budget { .. } => 3,
                _ => 2,
            })
        }
    }
}

fn emit(v: &Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    };
    println!("{}", text.expect("json values serialize"));
}

fn run(command: Command) -> Result<Value, Error> {
    match command {
        Command::Reduce(args) => reduce(&args.element()?),
        Command::Generators(args) => generators(&args.element()?),
        Command::Free(args) => free(&args.element()?),
        Command::Bound(args) => bound(&args.element()?),
        Command::Davenport { m } => davenport(m),
        Command::Homog { form, n } => homog(&form.spec()?, n),
        Command::HomogFactors { form, r, n } => {
            let spec = form.spec()?;
            let factors = invariant_factors_of_binomial(&spec, r, n)?;
            Ok(json!({ "r": r, "n": n, "factors": polys(&factors) }))
        }
        Command::Verify {
            element,
            max_degree,
        } => verify(&element.element()?, max_degree),
        Command::Selftest => unreachable!("handled in main"),
    }
}

impl ElementArgs {
    fn element(&self) -> Result<GroupElem, Error> {
        let field = FieldCtx::parse(&self.field)?;
        let text = substitute_lambda(&field, &self.element, self.lambda_order)?;
        GroupElem::parse(&field, &text)
    }
}

impl FormArgs {
    fn spec(&self) -> Result<FormSpec, Error> {
        let field = FieldCtx::parse(&self.field)?;
        let elem = |s: &str| -> Result<FieldElem, Error> {
            field.parse_elem(&substitute_lambda(&field, s, self.lambda_order)?)
        };
        let (a, b) = match (&self.matrix, &self.a, &self.b) {
            (Some(m), None, None) => {
                let m = Mat2::parse(&field, &substitute_lambda(&field, m, self.lambda_order)?)?;
                if !m.a2.is_zero() || !m.a3.is_zero() {
                    return Err(Error::InvalidArgument(
                        "only diagonal matrices are supported".into(),
                    ));
                }
                (m.a1, m.a4)
            }
            (None, Some(a), Some(b)) => (elem(a)?, elem(b)?),
            _ => {
                return Err(Error::InvalidArgument(
                    "give either --matrix or both --a and --b".into(),
                ))
            }
        };
        FormSpec::new(&field, a, b)
    }
}

/// `L^k` (or bare `L`) becomes `λ^k` for the smallest `λ` of the requested order.
fn substitute_lambda(field: &Field, text: &str, order: Option<u64>) -> Result<String, Error> {
    let Some(order) = order else {
        return Ok(text.to_string());
    };
    let lambda = field.element_of_order(order)?;
    let mut out = String::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c != 'L' {
            out.push(c);
            continue;
        }
        let mut exp = 1u64;
        if chars.peek() == Some(&'^') {
            chars.next();
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            exp = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent after L in {text:?}")))?;
        }
        out.push_str(&field.format_elem(field.pow(lambda, exp)));
    }
    Ok(out)
}

fn polys(ps: &[MultiPoly]) -> Value {
    ps.iter().map(|p| p.to_string()).collect()
}

fn elems(field: &Field, xs: &[FieldElem]) -> Value {
    xs.iter().map(|&x| field.format_elem(x)).collect()
}

/// Integers beyond u64 are written as strings.
fn big(v: u128) -> Value {
    u64::try_from(v)
        .map(Value::from)
        .unwrap_or_else(|_| Value::from(v.to_string()))
}

fn reduce(g: &GroupElem) -> Result<Value, Error> {
    let info = reduce_to_type(g);
    let (a1, a2) = canonical_decomposition(&info.reduced)?;
    Ok(json!({
        "type": { "h": info.h, "t": info.t },
        "H": elems(g.field(), &info.homotheties),
        "conjugator": info.conjugator.to_string(),
        "reduced": info.reduced.to_string(),
        "permutation": info.permutation.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "decomposition": [a1.to_string(), a2.to_string()],
        "order": g.element_order(),
    }))
}

fn generators(g: &GroupElem) -> Result<Value, Error> {
    let set = generating_set(g)?;
    let bounds = nstar_bounds(g)?;
    let (free, _) = is_free(g)?;
    Ok(json!({
        "type": { "h": set.h, "t": set.t },
        "H": elems(g.field(), &set.type_info.homotheties),
        "mstar": set.mstar.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "chain": polys(&set.chain),
        "vars": polys(&set.vars),
        "generators": polys(&set.original),
        "N": set.n_star,
        "ell": set.ell,
        "bound": big(bounds.bound),
        "attained": bounds.attained,
        "free": free,
    }))
}

fn free(g: &GroupElem) -> Result<Value, Error> {
    let (free, witness) = is_free(g)?;
    let witness = match witness {
        FreeWitness::NonCoprime(a, b) => json!({ "non_coprime_orders": [a, b] }),
        FreeWitness::Generators(gs) => json!({ "generators": polys(&gs) }),
    };
    Ok(json!({ "free": free, "witness": witness }))
}

fn bound(g: &GroupElem) -> Result<Value, Error> {
    let b = nstar_bounds(g)?;
    Ok(json!({
        "N": b.n_star,
        "ell": b.ell,
        "bound": big(b.bound),
        "attained": b.attained,
        "generators": b.generators,
        "global_bound": big(b.global_bound),
    }))
}

fn davenport(m: u64) -> Result<Value, Error> {
    let d = davenport_brute(m)?;
    Ok(json!({
        "m": d.m,
        "D": d.d,
        "extremal_count": d.extremal.len(),
        "extremal": d.extremal,
    }))
}

fn homog(spec: &FormSpec, n: u64) -> Result<Value, Error> {
    let comp = graded_component(spec, n)?;
    // irreducible counting is only defined for n >= 2
    let irreducible = if n >= 2 {
        big(count_invariant_irreducible(spec, n)?)
    } else {
        Value::Null
    };
    Ok(json!({
        "n": n,
        "nonzero": comp.nonzero,
        "d0": comp.d0,
        "s": comp.s,
        "size": big(comp.size),
        "basis": polys(&comp.basis),
        "irreducible_count": irreducible,
    }))
}

fn verify(g: &GroupElem, max_degree: u32) -> Result<Value, Error> {
    let budget = Budget::from_env()?;
    let set = generating_set(g)?;
    let report = verify_generators(g, &set.original, max_degree, &budget)?;
    let per_degree: Vec<Value> = report
        .per_degree
        .iter()
        .map(|c| json!({ "d": c.d, "inv_dim": c.inv_dim, "alg_dim": c.alg_dim }))
        .collect();
    Ok(json!({
        "ok": report.ok,
        "generators_fixed": report.generators_fixed,
        "generators": polys(&set.original),
        "per_degree": per_degree,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_tokens() {
        let f17 = FieldCtx::new(17, 1).unwrap();
        assert_eq!(
            substitute_lambda(&f17, "L^3,0;L,1", Some(8)).unwrap(),
            "8,0;2,1"
        );
        assert_eq!(substitute_lambda(&f17, "L^3,0", None).unwrap(), "L^3,0");
        assert!(substitute_lambda(&f17, "L^,0", Some(8)).is_err());
        assert!(substitute_lambda(&f17, "L,0", Some(5)).is_err());
        let f9 = FieldCtx::new(3, 2).unwrap();
        let text = substitute_lambda(&f9, "L^2,0", Some(8)).unwrap();
        assert!(GroupElem::parse(&f9, &text).is_ok());
    }
}
