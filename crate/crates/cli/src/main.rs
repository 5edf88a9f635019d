//! Command-line front end: parses ordinal and space expressions, dispatches
//! to the engine, renders text or JSON.
//!
//! Exit codes: 0 success, 1 domain error, 2 syntax/usage error, 3 overflow.

use std::cmp::Ordering;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use szlenk_core::cb::{cb_derivative, cb_height, dirac_rank};
use szlenk_core::classification::{canonical_representative, isomorphic};
use szlenk_core::indices::{dentability_index, gamma_of, index_report, szlenk_index};
use szlenk_core::space::{decompose_bp, normalize, szlenk_bounds, RewriteTrace, SpaceExpr};
use szlenk_core::text::{format_ordinal, format_space, parse_ordinal, parse_space};
use szlenk_core::{Error, Ordinal};

#[derive(Parser)]
#[command(name = "szlenk", about = "Isomorphic invariants of the spaces C([0, a])", disable_help_subcommand = true)]
struct Cli {
    /// Emit structured JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normalize an ordinal expression and print its canonical form
    Eval { expr: String },
    /// Compare two ordinals; prints '<', '=' or '>'
    Cmp { left: String, right: String },
    /// Szlenk index of C([0, a])
    Sz { alpha: String },
    /// w*-dentability index of C([0, a]) (requires a >= w)
    Dz { alpha: String },
    /// The unique g with w^(w^g) <= a < w^(w^(g+1)) (requires a >= w)
    Gamma { alpha: String },
    /// Full index report for C([0, a])
    Report { alpha: String },
    /// Isomorphic classification of C([0, a]) and C([0, b]) (countable a, b >= w)
    Iso { alpha: String, beta: String },
    /// Canonical representative w^(w^g) of the isomorphism class of C([0, a])
    Rep { alpha: String },
    /// Cantor-Bendixson derivative of [0, a]
    Cb {
        alpha: String,
        /// Derivation stage (an ordinal expression; default 1)
        #[arg(long, default_value = "1")]
        stage: String,
        /// Print the Cantor-Bendixson height of [0, a] instead
        #[arg(long, conflicts_with = "stage")]
        height: bool,
    },
    /// Derivation rank of the Dirac functional at a point of [0, a]
    Dirac { lambda: String },
    /// Decompose C0([0, xi*zeta]) into C0([0, zeta]) (+) c0(zeta, C0([0, xi]))
    Decompose { xi: String, zeta: String },
    /// Rewrite a space expression to normal form
    NormalizeSpace {
        space: String,
        /// Also print every rewrite step
        #[arg(long)]
        trace: bool,
    },
    /// Szlenk-index bounds for a space expression
    Bounds { space: String },
}

fn ord_json(a: &Ordinal) -> Value {
    let mut obj = json!({ "text": format_ordinal(a) });
    match a {
        Ordinal::Zero => obj["terms"] = json!([]),
        Ordinal::EpsAtom(k) => obj["atom"] = json!(k),
        Ordinal::Cnf(terms) => {
            obj["terms"] = terms
                .iter()
                .map(|(e, c)| json!({ "exponent": ord_json(e), "coefficient": c }))
                .collect()
        }
    }
    obj
}

fn opt_ord_json(a: &Option<Ordinal>) -> Value {
    a.as_ref().map(ord_json).unwrap_or(Value::Null)
}

fn space_json(s: &SpaceExpr) -> Value {
    let mut obj = match s {
        SpaceExpr::C(a) => json!({ "kind": "C", "alpha": ord_json(a) }),
        SpaceExpr::C0(a) => json!({ "kind": "C0", "alpha": ord_json(a) }),
        SpaceExpr::DirectSum(parts) => {
            json!({ "kind": "direct_sum", "parts": parts.iter().map(space_json).collect::<Vec<_>>() })
        }
        SpaceExpr::C0Sum(kappa, inner) => {
            json!({ "kind": "c0_sum", "kappa": ord_json(kappa), "inner": space_json(inner) })
        }
    };
    obj["text"] = json!(format_space(s));
    obj
}

fn trace_json(t: &RewriteTrace) -> Value {
    json!({
        "start": space_json(&t.start),
        "steps": t.steps.iter().map(|s| json!({
            "rule": s.rule.name(),
            "position": s.position,
            "before": space_json(&s.before),
            "after": space_json(&s.after),
        })).collect::<Vec<_>>(),
        "end": space_json(&t.end),
    })
}

fn print_trace_steps(t: &RewriteTrace) {
    for (i, s) in t.steps.iter().enumerate() {
        let pos = s
            .position
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",");
        println!(
            "{}. {} at [{}]: {} => {}",
            i + 1,
            s.rule.name(),
            pos,
            format_space(&s.before),
            format_space(&s.after)
        );
    }
}

fn emit_json(v: Value) {
    println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
}

fn run(cli: Cli) -> Result<(), Error> {
    let json = cli.json;
    match cli.cmd {
        Cmd::Eval { expr } => {
            let a = parse_ordinal(&expr)?;
            if json {
                emit_json(json!({ "value": ord_json(&a) }));
            } else {
                println!("{}", format_ordinal(&a));
            }
        }
        Cmd::Cmp { left, right } => {
            let a = parse_ordinal(&left)?;
            let b = parse_ordinal(&right)?;
            let sym = match a.cmp(&b) {
                Ordering::Less => "<",
                Ordering::Equal => "=",
                Ordering::Greater => ">",
            };
            if json {
                emit_json(json!({ "order": sym }));
            } else {
                println!("{sym}");
            }
        }
        Cmd::Sz { alpha } => {
            let a = parse_ordinal(&alpha)?;
            let sz = szlenk_index(&a);
            if json {
                emit_json(json!({ "value": ord_json(&sz) }));
            } else {
                println!("{}", format_ordinal(&sz));
            }
        }
        Cmd::Dz { alpha } => {
            let a = parse_ordinal(&alpha)?;
            let dz = dentability_index(&a)?;
            if json {
                emit_json(json!({ "value": ord_json(&dz) }));
            } else {
                println!("{}", format_ordinal(&dz));
            }
        }
        Cmd::Gamma { alpha } => {
            let a = parse_ordinal(&alpha)?;
            let g = gamma_of(&a)?;
            if json {
                emit_json(json!({ "value": ord_json(&g) }));
            } else {
                println!("{}", format_ordinal(&g));
            }
        }
        Cmd::Report { alpha } => {
            let a = parse_ordinal(&alpha)?;
            let r = index_report(&a);
            if json {
                emit_json(json!({
                    "alpha": ord_json(&r.alpha),
                    "gamma": opt_ord_json(&r.gamma),
                    "szlenk": ord_json(&r.szlenk),
                    "dentability": opt_ord_json(&r.dentability),
                    "bracket": r.bracket.as_ref().map(|(lo, hi)| json!({
                        "low": ord_json(lo), "high": ord_json(hi),
                    })).unwrap_or(Value::Null),
                }));
            } else {
                println!("alpha = {}", format_ordinal(&r.alpha));
                if let Some(g) = &r.gamma {
                    println!("gamma = {}", format_ordinal(g));
                }
                if let Some((lo, hi)) = &r.bracket {
                    println!("bracket = [{}, {})", format_ordinal(lo), format_ordinal(hi));
                }
                println!("Sz = {}", format_ordinal(&r.szlenk));
                if let Some(dz) = &r.dentability {
                    println!("Dz = {}", format_ordinal(dz));
                }
            }
        }
        Cmd::Iso { alpha, beta } => {
            let a = parse_ordinal(&alpha)?;
            let b = parse_ordinal(&beta)?;
            let v = isomorphic(&a, &b)?;
            if json {
                emit_json(json!({
                    "isomorphic": v.isomorphic,
                    "witness_low": ord_json(&v.witness_low),
                    "witness_pow": ord_json(&v.witness_pow),
                    "gamma_a": ord_json(&v.gamma_a),
                    "gamma_b": ord_json(&v.gamma_b),
                }));
            } else if v.isomorphic {
                println!("isomorphic (beta < alpha^w = {})", format_ordinal(&v.witness_pow));
            } else {
                println!("not isomorphic (beta >= alpha^w = {})", format_ordinal(&v.witness_pow));
            }
        }
        Cmd::Rep { alpha } => {
            let a = parse_ordinal(&alpha)?;
            let rep = canonical_representative(&a)?;
            if json {
                emit_json(json!({ "value": ord_json(&rep) }));
            } else {
                println!("{}", format_ordinal(&rep));
            }
        }
        Cmd::Cb { alpha, stage, height } => {
            let a = parse_ordinal(&alpha)?;
            if height {
                let h = cb_height(&a);
                if json {
                    emit_json(json!({ "height": ord_json(&h) }));
                } else {
                    println!("{}", format_ordinal(&h));
                }
                return Ok(());
            }
            let xi = parse_ordinal(&stage)?;
            let d = cb_derivative(&a, &xi);
            if json {
                emit_json(json!({
                    "alpha": ord_json(&d.alpha),
                    "stage": ord_json(&d.stage),
                    "order_type": ord_json(&d.order_type),
                    "full_interval": d.full_interval,
                    "empty": d.is_empty(),
                }));
            } else if d.full_interval {
                println!("full interval [0, {}]", format_ordinal(&d.alpha));
            } else if d.is_empty() {
                println!("empty");
            } else {
                println!("order type {}", format_ordinal(&d.order_type));
            }
        }
        Cmd::Dirac { lambda } => {
            let l = parse_ordinal(&lambda)?;
            let rank = dirac_rank(&l);
            if json {
                emit_json(json!({ "value": ord_json(&rank) }));
            } else {
                println!("{}", format_ordinal(&rank));
            }
        }
        Cmd::Decompose { xi, zeta } => {
            let x = parse_ordinal(&xi)?;
            let z = parse_ordinal(&zeta)?;
            let (result, trace) = decompose_bp(&x, &z)?;
            if json {
                emit_json(json!({
                    "result": space_json(&result),
                    "trace": trace_json(&trace),
                }));
            } else {
                println!("{}", format_space(&result));
            }
        }
        Cmd::NormalizeSpace { space, trace } => {
            let s = parse_space(&space)?;
            let (nf, tr) = normalize(&s)?;
            if json {
                let mut obj = json!({ "normal_form": space_json(&nf) });
                if trace {
                    obj["trace"] = trace_json(&tr);
                }
                emit_json(obj);
            } else {
                if trace {
                    print_trace_steps(&tr);
                }
                println!("{}", format_space(&nf));
            }
        }
        Cmd::Bounds { space } => {
            let s = parse_space(&space)?;
            let b = szlenk_bounds(&s)?;
            if json {
                emit_json(json!({
                    "lower": ord_json(&b.lower),
                    "upper": ord_json(&b.upper),
                    "exact": b.exact,
                }));
            } else if b.exact {
                println!("Sz = {} (exact)", format_ordinal(&b.lower));
            } else {
                println!("Sz in [{}, {}]", format_ordinal(&b.lower), format_ordinal(&b.upper));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse(); // clap exits with code 2 on usage errors
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(match e {
                Error::Domain(_) => 1,
                Error::Syntax { .. } => 2,
                Error::Overflow(_) => 3,
            })
        }
    }
}
