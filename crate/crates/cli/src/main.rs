mod args;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use geoindep::arith::{format_rational, RationalFunction};
use geoindep::constructions::{
    build_pair, build_remark1, build_remark2, build_sequence, build_triple, finite_space_check,
    lower, quotient_lift, FINITE_SPACE_THRESHOLD,
};
use geoindep::independence::{
    cond_indep_given, indep_family_at, indep_family_mod, indep_family_symbolic, IndependenceReport,
    Value as Side,
};
use geoindep::measure::{measure_at, measure_numeric, measure_symbolic};
use geoindep::search::{enumerate_independent, lemma_bound_check, verify_converse};
use geoindep::sets::{FiniteSet, Set};
use geoindep::thresholds::threshold_digits;
use geoindep::Error;

use args::{Cli, Command, Construct, Search};

fn ratfn(f: &RationalFunction) -> Value {
    json!({"num": f.num().to_string(), "den": f.den().to_string()})
}

fn side(v: &Side) -> Value {
    match v {
        Side::Symbolic(f) => ratfn(f),
        Side::Exact(x) => json!(format_rational(x)),
    }
}

fn report(rep: &IndependenceReport) -> Value {
    let conditions: Vec<Value> = rep
        .conditions
        .iter()
        .map(|c| {
            json!({
                "indices": c.indices,
                "lhs": side(&c.lhs),
                "rhs": side(&c.rhs),
                "passed": c.passed,
            })
        })
        .collect();
    json!({
        "mode": rep.mode.to_string(),
        "independent": rep.independent,
        "conditions": conditions,
    })
}

fn sets_json<'a, I: IntoIterator<Item = &'a FiniteSet>>(sets: I) -> Vec<String> {
    sets.into_iter().map(ToString::to_string).collect()
}

fn pair_status(a: &Set, b: &Set) -> Result<bool, Error> {
    Ok(indep_family_symbolic(&[a.clone(), b.clone()])?.independent)
}

fn construct(which: Construct) -> Result<Value, Error> {
    Ok(match which {
        Construct::Pair { n, t } => {
            let p = build_pair(n, &t)?;
            json!({
                "n": n,
                "T": p.t.to_string(),
                "A": p.a.to_string(),
                "B": p.b.to_string(),
                "independent": pair_status(&p.a, &p.b)?,
            })
        }
        Construct::Triple { n, b, t } => {
            let tr = build_triple(n, b, &t)?;
            json!({
                "n": n,
                "b": b,
                "k": tr.k,
                "T": tr.t.to_string(),
                "B1_prime": tr.b1_prime.to_string(),
                "B1": tr.b1.to_string(),
                "T1": tr.t1.to_string(),
                "A1": tr.a1.to_string(),
                "A2": tr.a2.to_string(),
                "B": tr.big_b.to_string(),
                "independent": indep_family_symbolic(&tr.sets())?.independent,
            })
        }
        Construct::Remark1 => {
            let (a, b, minpoly) = build_remark1();
            let pair = [Set::Finite(a.clone()), b.clone()];
            json!({
                "A": a.to_string(),
                "B": b.to_string(),
                "minpoly": minpoly.to_string(),
                "independent_mod_minpoly": indep_family_mod(&pair, &minpoly)?.independent,
                "independent_symbolic": indep_family_symbolic(&pair)?.independent,
            })
        }
        Construct::Remark2 { n } => {
            let (a, b) = build_remark2(n)?;
            let a = Set::Finite(a);
            json!({
                "n": n,
                "A": a.to_string(),
                "B": b.to_string(),
                "independent": pair_status(&a, &b)?,
            })
        }
        Construct::Sequence { params } => {
            let seq = build_sequence(&params)?;
            let independent = if seq.sets.len() >= 2 {
                Some(indep_family_symbolic(&seq.sets)?.independent)
            } else {
                None
            };
            json!({
                "params": seq.params,
                "sets": seq.sets.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "independent": independent,
            })
        }
        Construct::Lift { n, s } => {
            json!({"n": n, "S": s.to_string(), "set": quotient_lift(n, &s)?.to_string()})
        }
        Construct::Lower { n, s } => {
            json!({"n": n, "S": s.to_string(), "set": lower(n, &s)?.to_string()})
        }
    })
}

fn search(which: Search) -> Result<Value, Error> {
    Ok(match which {
        Search::Converse { n, r, max } => {
            let rep = verify_converse(n, &r, max)?;
            let t = &rep.threshold_check;
            json!({
                "n": n,
                "r": format_rational(&r),
                "max": max,
                "found": sets_json(&rep.found),
                "violations": sets_json(&rep.violations),
                "threshold": {
                    "m": t.m,
                    "lo": format_rational(&t.lo),
                    "hi": format_rational(&t.hi),
                    "certified_below": t.certified_below,
                },
            })
        }
        Search::Enum { set, r, max } => {
            let found = enumerate_independent(&set, &r, max)?;
            json!({
                "set": set.to_string(),
                "r": format_rational(&r),
                "max": max,
                "count": found.len(),
                "found": sets_json(&found),
            })
        }
        Search::Bound { set, n, r } => {
            let l = set.as_finite().ok_or_else(|| {
                Error::InvalidParameter(format!("bound needs a finite set, got {set}"))
            })?;
            let b = lemma_bound_check(l, n, &r)?;
            json!({
                "s": b.s,
                "i": b.i,
                "j": b.j,
                "lhs": format_rational(&b.lhs),
                "rhs": format_rational(&b.rhs),
                "holds": b.holds,
            })
        }
    })
}

fn dispatch(cmd: Command) -> Result<Value, Error> {
    Ok(match cmd {
        Command::Measure(a) => {
            if let Some(r) = &a.r {
                json!({"r": format_rational(r), "value": format_rational(&measure_at(&a.set, r)?)})
            } else if let Some(x) = a.numeric {
                json!({"r": x, "tol": a.tol, "value": measure_numeric(&a.set, x, a.tol)?})
            } else {
                ratfn(&measure_symbolic(&a.set))
            }
        }
        Command::Indep(a) => {
            let rep = if let Some(b) = &a.given {
                match a.set.as_slice() {
                    [t1, t2] => cond_indep_given(t1, t2, b)?,
                    other => {
                        return Err(Error::InvalidParameter(format!(
                            "--given needs exactly two --set values, got {}",
                            other.len()
                        )))
                    }
                }
            } else if let Some(r) = &a.r {
                indep_family_at(&a.set, r)?
            } else if let Some(p) = &a.minpoly {
                indep_family_mod(&a.set, p)?
            } else {
                indep_family_symbolic(&a.set)?
            };
            report(&rep)
        }
        Command::Construct { which } => construct(which)?,
        Command::Threshold { m, digits } => json!({"m": m, "t": threshold_digits(m, digits)?}),
        Command::Search { which } => search(which)?,
        Command::FiniteSpace { n, s } => {
            let c = finite_space_check(n, s)?;
            json!({
                "n": n,
                "s": s,
                "q": c.q,
                "residual": c.residual,
                "passed": c.residual < FINITE_SPACE_THRESHOLD,
                "A": c.a.to_string(),
                "B": c.b.to_string(),
            })
        }
    })
}

fn fail(kind: &str, msg: &str) {
    eprintln!("{}", json!({"error": msg, "kind": kind}));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            fail("usage", e.to_string().trim_end());
            return ExitCode::from(1);
        }
    };
    std::panic::set_hook(Box::new(|info| fail("internal", &info.to_string())));
    match std::panic::catch_unwind(|| dispatch(cli.command)) {
        // A closed stdout (e.g. piped into `head`) is not an error.
        Ok(Ok(v)) => {
            let _ = writeln!(std::io::stdout().lock(), "{v}");
            ExitCode::SUCCESS
        }
        Ok(Err(e)) => {
            fail("input", &e.to_string());
            ExitCode::from(1)
        }
        Err(_) => ExitCode::from(2),
    }
}
