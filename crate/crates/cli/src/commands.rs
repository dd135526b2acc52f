use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use penney::automaton::{PrefixPairAutomaton, VertexKind};
use penney::correlation::{bad_prefix_sets, correlation_poly, overlap_set};
use penney::properties::{
    has_property_r, property_e_witness_with, verify_phi_bijection, EOptions, EWitness,
};
use penney::ratfunc::{format_rational, parse_rational};
use penney::search::{
    argmax_win, census_rows, closed_form_bounds, crossover_scan, default_grid,
    longer_favorable_curve, property_r_density, symmetry_census, threshold_approximation,
    threshold_root, verify_length_gap_bound, verify_longer_by_one, DensityOptions, Sampling,
    SearchReport, Verdict,
};
use penney::winprob::{
    check_pair, expected_hitting_time, win_probability, zero_limit_combinatorial, SymmetryFlags,
};
use penney::words::{make_word, Word};

use crate::render::{format_name, json_or_human, tagged, CliError, Output};
use crate::{Check, Command, Format, Search};

pub fn run(command: &Command, format: Option<Format>) -> Result<Output, CliError> {
    match command {
        Command::Win { v, w, at } => win(v, w, at.as_deref(), only(format, "win", &[Format::Human])?),
        Command::Corr { v, w } => corr(v, w, only(format, "corr", &[Format::Human])?),
        Command::Check { check } => run_check(check, only(format, "check", &[Format::Human])?),
        Command::Graph { v, w, output } => graph(v, w.as_deref(), output.as_deref(), format),
        Command::Oracle { v, w, at } => oracle(v, w.as_deref(), at, only(format, "oracle", &[Format::Human])?),
        Command::Search { search } => run_search(search, format),
        Command::Census { n } => census(*n, only(format, "census", &[Format::Human, Format::Csv])?),
    }
}

/// `format`, defaulting to JSON, if the command supports it.
fn only(format: Option<Format>, command: &'static str, extra: &[Format]) -> Result<Format, CliError> {
    match format {
        None | Some(Format::Json) => Ok(Format::Json),
        Some(f) if extra.contains(&f) => Ok(f),
        Some(f) => Err(CliError::Unsupported { format: format_name(f), command }),
    }
}

fn word(text: &str) -> Result<Word, CliError> {
    Ok(make_word(text)?)
}

fn pair(v: &str, w: &str) -> Result<(Word, Word), CliError> {
    let (v, w) = (word(v)?, word(w)?);
    check_pair(&v, &w)?;
    Ok((v, w))
}

fn rational(flag: &'static str, text: &str) -> Result<BigRational, CliError> {
    parse_rational(text).ok_or_else(|| CliError::BadNumber { flag, value: text.to_string() })
}

/// A bias strictly inside `(0, 1)`.
fn bias(flag: &'static str, text: &str) -> Result<BigRational, CliError> {
    let q = rational(flag, text)?;
    if q <= BigRational::zero() || q >= BigRational::one() {
        return Err(CliError::OutOfUnitInterval { flag, value: text.to_string() });
    }
    Ok(q)
}

fn grid(text: Option<&str>) -> Result<Vec<BigRational>, CliError> {
    match text {
        None => Ok(default_grid()),
        Some(t) => t.split(',').map(|s| bias("--grid", s)).collect(),
    }
}

fn approx(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn emit(kind: &str, body: Value, format: Format) -> Output {
    Output::ok(json_or_human(&tagged(kind, body), format))
}

fn win(v: &str, w: &str, at: Option<&str>, format: Format) -> Result<Output, CliError> {
    let (v, w) = pair(v, w)?;
    let at = at.map(|t| bias("--at", t)).transpose()?;
    let f = win_probability(&v, &w)?;
    let flags = SymmetryFlags::of(&f);
    let limit = f.limit_at_zero().expect("Conway denominator has a non-zero constant");
    debug_assert_eq!(zero_limit_combinatorial(&v, &w)?.to_rational(), limit);
    let mut body = json!({
        "v": v,
        "w": w,
        "win": f,
        "symmetry": {
            "odd": flags.odd,
            "even": flags.even,
            "constant": flags.constant,
            "label": flags.label(),
        },
        "limit_at_zero": format_rational(&limit),
    });
    if let Some(q) = at {
        let value = f.evaluate(&q).expect("Conway denominator is positive on (0, 1)");
        body["at"] = json!(format_rational(&q));
        body["value"] = json!(format_rational(&value));
        body["approx"] = json!(approx(&value));
    }
    Ok(emit("win", body, format))
}

fn corr(v: &str, w: &str, format: Format) -> Result<Output, CliError> {
    let (v, w) = (word(v)?, word(w)?);
    let pairs = [("vv", v, v), ("vw", v, w), ("wv", w, v), ("ww", w, w)];
    let overlaps: serde_json::Map<String, Value> = pairs
        .iter()
        .map(|(name, x, y)| (name.to_string(), json!(overlap_set(x, y).lengths)))
        .collect();
    let tables: serde_json::Map<String, Value> = pairs
        .iter()
        .map(|(name, x, y)| (name.to_string(), json!(correlation_poly(x, y))))
        .collect();
    let body = json!({
        "v": v,
        "w": w,
        "overlaps": overlaps,
        "correlation": tables,
        "bad_prefixes": bad_prefix_sets(&v, &w),
    });
    Ok(emit("corr", body, format))
}

fn witness_json(w: &Option<EWitness>) -> Value {
    match w {
        Some(w) => json!(w),
        None => Value::Null,
    }
}

fn run_check(check: &Check, format: Format) -> Result<Output, CliError> {
    match check {
        Check::R { v, w } => {
            let (v, w) = pair(v, w)?;
            let holds = has_property_r(&v, &w)?;
            Ok(emit("check", json!({ "property": "r", "v": v, "w": w, "holds": holds }), format))
        }
        Check::E { v, w, strict } => {
            let (v, w) = pair(v, w)?;
            let opts = EOptions { strict: *strict, ..EOptions::default() };
            let witness = property_e_witness_with(&v, &w, opts)?;
            let body = json!({
                "property": "e",
                "v": v,
                "w": w,
                "strict": strict,
                "holds": witness.is_some(),
                "witness": witness_json(&witness),
            });
            Ok(emit("check", body, format))
        }
        Check::Phi { v, w, max_len, strict } => {
            let (v, w) = pair(v, w)?;
            let opts = EOptions { strict: *strict, ..EOptions::default() };
            let witness = property_e_witness_with(&v, &w, opts)?;
            let report = witness
                .as_ref()
                .map(|wit| verify_phi_bijection(&v, &w, wit, *max_len))
                .transpose()?;
            let holds = report.as_ref().is_some_and(|r| r.passed());
            let mut body = json!({
                "property": "phi",
                "v": v,
                "w": w,
                "strict": strict,
                "max_len": max_len,
                "holds": holds,
                "witness": witness_json(&witness),
                "report": report,
            });
            if witness.is_none() {
                body["reason"] = json!("no property-E witness, so there is no map to verify");
            }
            Ok(Output { verified: holds, ..emit("check", body, format) })
        }
    }
}

fn automaton(v: &str, w: Option<&str>) -> Result<PrefixPairAutomaton, CliError> {
    Ok(match w {
        Some(w) => {
            let (v, w) = pair(v, w)?;
            PrefixPairAutomaton::build(&v, &w)?
        }
        None => PrefixPairAutomaton::build_single(&word(v)?)?,
    })
}

fn kind_label(k: VertexKind) -> &'static str {
    match k {
        VertexKind::Transient => "transient",
        VertexKind::WinV => "win_v",
        VertexKind::WinW => "win_w",
    }
}

fn graph(
    v: &str,
    w: Option<&str>,
    output: Option<&std::path::Path>,
    format: Option<Format>,
) -> Result<Output, CliError> {
    let g = automaton(v, w)?;
    let text = match format.unwrap_or(Format::Dot) {
        Format::Dot => g.to_dot(),
        f @ (Format::Json | Format::Human) => {
            let vertices: Vec<Value> = g
                .vertices()
                .iter()
                .enumerate()
                .map(|(id, p)| json!({ "id": id, "v": p.v, "w": p.w, "kind": kind_label(g.kind(id)) }))
                .collect();
            let edges: Vec<Value> = g
                .edges()
                .map(|(s, letter, t)| json!({ "from": s, "letter": letter, "to": t }))
                .collect();
            let body = json!({
                "v": g.v(),
                "w": g.rival(),
                "vertices": vertices,
                "edges": edges,
            });
            json_or_human(&tagged("graph", body), f)
        }
        Format::Csv => return Err(CliError::Unsupported { format: "csv", command: "graph" }),
    };
    match output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| CliError::Io {
                path: path.display().to_string(),
                reason: e.to_string(),
            })?;
            Ok(Output::ok(String::new()))
        }
        None => Ok(Output::ok(text)),
    }
}

fn oracle(v: &str, w: Option<&str>, at: &str, format: Format) -> Result<Output, CliError> {
    let q = bias("--at", at)?;
    let g = automaton(v, w)?;
    let time = g.expected_absorption_time(&q)?;
    let mut body = json!({
        "v": g.v(),
        "w": g.rival(),
        "at": format_rational(&q),
        "vertices": g.len(),
        "expected_time": format_rational(&time),
    });
    let agrees = match g.rival() {
        Some(rival) => {
            let p = g.absorption_win(&q)?;
            let conway = win_probability(g.v(), rival)?.evaluate(&q).expect("inside (0, 1)");
            body["absorption_win"] = json!(format_rational(&p));
            body["conway_win"] = json!(format_rational(&conway));
            p == conway
        }
        None => {
            let conway = expected_hitting_time(g.v())?.evaluate(&q).expect("inside (0, 1)");
            body["conway_time"] = json!(format_rational(&conway));
            time == conway
        }
    };
    body["agrees"] = json!(agrees);
    Ok(Output { verified: agrees, ..emit("oracle", body, format) })
}

fn report_output(report: &SearchReport, format: Format) -> Output {
    let body = serde_json::to_value(report).expect("reports serialize");
    Output {
        verified: report.verdict != Verdict::Fail,
        ..emit("report", body, format)
    }
}

fn run_search(search: &Search, format: Option<Format>) -> Result<Output, CliError> {
    let plain = |command| only(format, command, &[Format::Human]);
    match search {
        Search::LongerByOne { n } => Ok(report_output(&verify_longer_by_one(*n)?, plain("search longer-by-one")?)),
        Search::GapBound(nk) => Ok(report_output(&verify_length_gap_bound(nk.n, nk.k)?, plain("search gap-bound")?)),
        Search::Argmax { nk, at } => {
            let format = plain("search argmax")?;
            let q = bias("--at", at)?;
            Ok(report_output(&argmax_win(nk.n, nk.k, &q)?, format))
        }
        Search::Threshold { k, tol } => {
            let format = plain("search threshold")?;
            let tol = rational("--tol", tol)?;
            let root = threshold_root(*k, &tol)?;
            let mid = (&root.lo + &root.hi) / BigRational::from_integer(2.into());
            let body = json!({
                "k": k,
                "tol": format_rational(&tol),
                "lo": format_rational(&root.lo),
                "hi": format_rational(&root.hi),
                "approx": approx(&mid),
                "linearized_approx": threshold_approximation(*k),
            });
            Ok(emit("threshold", body, format))
        }
        Search::Bounds { k, at } => {
            let format = plain("search bounds")?;
            let q = bias("--at", at)?;
            let b = closed_form_bounds(*k, &q)?;
            let mut body = serde_json::to_value(&b).expect("bounds serialize");
            body["applicable"] = json!(format_rational(b.applicable()));
            body["applicable_approx"] = json!(approx(b.applicable()));
            Ok(emit("bounds", body, format))
        }
        Search::Curve { max_len, grid: g, samples, seed } => {
            let format = only(format, "search curve", &[Format::Human, Format::Csv])?;
            let sampling = samples.zip(*seed).map(|(samples, seed)| Sampling { samples, seed });
            let curve = longer_favorable_curve(*max_len, &grid(g.as_deref())?, sampling)?;
            let text = match format {
                Format::Csv => curve.to_csv(),
                f => {
                    let mut body = serde_json::to_value(&curve).expect("curves serialize");
                    body["non_increasing"] = json!(curve.non_increasing());
                    json_or_human(&tagged("curve", body), f)
                }
            };
            Ok(Output::ok(text))
        }
        Search::Density { n, confirm_long_run, checkpoint } => {
            let format = plain("search density")?;
            let opts = DensityOptions {
                confirm_long_run: *confirm_long_run,
                checkpoint: checkpoint.clone(),
            };
            Ok(report_output(&property_r_density(*n, &opts)?, format))
        }
        Search::Crossover { nk, grid: g } => {
            let format = plain("search crossover")?;
            Ok(report_output(&crossover_scan(nk.n, nk.k, &grid(g.as_deref())?)?, format))
        }
    }
}

fn census(n: usize, format: Format) -> Result<Output, CliError> {
    if format == Format::Csv {
        let mut out = String::from("v,w,label,property_r,property_e,bitflip,equal_ones\n");
        for r in census_rows(n)? {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.v, r.w, r.label, r.property_r, r.property_e, r.bitflip, r.equal_ones
            )
            .unwrap();
        }
        return Ok(Output::ok(out));
    }
    Ok(report_output(&symmetry_census(n)?, format))
}
