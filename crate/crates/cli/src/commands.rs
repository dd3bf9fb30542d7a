use std::fmt::Write as _;
use std::sync::Arc;

use leavitt::algebra::AlgebraElement;
use leavitt::basis::{enumerate_basis_paths, ClosedBasisPath};
use leavitt::branching::{validate_erg, ExtRepGraph};
use leavitt::canonical::{build, classify_finite, representatives, Descriptor};
use leavitt::field::Field;
use leavitt::graph::{Ambient, GraphReport};
use leavitt::io::{erg_to_dot, graph_to_dot, parse_erg, write_erg};
use leavitt::modules::{act_w, check_schur, hom_dimensions, ModuleVector};
use serde::Serialize;
use serde_json::json;

use crate::input::{read, FieldChoice, GraphSource};
use crate::{with_field, CliError, Format, Verb};

pub struct Output {
    pub text: String,
    /// `false` turns a completed run into exit code 1 (a failed check).
    pub success: bool,
}

fn ok(text: String) -> Result<Output, CliError> {
    Ok(Output {
        text,
        success: true,
    })
}

fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn no_dot(format: Format, verb: &str) -> Result<(), CliError> {
    if format == Format::Dot {
        return Err(CliError::Usage(format!("`{verb}` has no dot output")));
    }
    Ok(())
}

pub fn run(source: &GraphSource, format: Format, verb: &Verb) -> Result<Output, CliError> {
    let amb = source.ambient()?;
    match verb {
        Verb::Validate { erg: None } => validate_graph(&amb, format),
        Verb::Validate { erg: Some(path) } => validate_rep_graph(&amb, &read(path)?, format),
        Verb::Basis { max_len, at } => {
            no_dot(format, "basis")?;
            basis(&amb, *max_len, at.as_deref(), format)
        }
        Verb::Mul { left, right } => {
            no_dot(format, "mul")?;
            let field = FieldChoice::from_env()?;
            with_field!(field, mul(&amb, left, right, field, format))
        }
        Verb::Erg { descriptor, depth } => erg(&amb, descriptor, *depth, format),
        Verb::Classify { erg } => {
            no_dot(format, "classify")?;
            let r = parse_erg(&amb, &read(erg)?)?;
            let d = classify_finite(&r)?;
            let text = d.format(&amb);
            match format {
                Format::Json => ok(to_json(&json!({ "descriptor": text, "kind": d.kind() }))),
                _ => ok(text + "\n"),
            }
        }
        Verb::Act {
            erg,
            descriptor,
            depth,
            vertex,
            element,
        } => {
            no_dot(format, "act")?;
            let r = match (erg, descriptor) {
                (Some(path), _) => parse_erg(&amb, &read(path)?)?,
                (None, Some(d)) => build(&amb, &Descriptor::parse(&amb, d)?, *depth)?.into_erg(),
                (None, None) => {
                    return Err(CliError::Usage("`act` needs --erg or --descriptor".into()))
                }
            };
            let field = FieldChoice::from_env()?;
            with_field!(field, act(&amb, &r, vertex, element, format))
        }
        Verb::CheckSchur { cycle, depths } => {
            no_dot(format, "check-schur")?;
            schur(&amb, cycle, depths, format)
        }
        Verb::CheckHom { from, to, depths } => {
            no_dot(format, "check-hom")?;
            let a = Descriptor::parse(&amb, from)?;
            let b = Descriptor::parse(&amb, to)?;
            let dims = hom_dimensions(&amb, &a, &b, depths)?;
            match format {
                Format::Json => ok(to_json(&json!({
                    "from": a.format(&amb), "to": b.format(&amb), "depths": depths, "dimensions": dims,
                }))),
                _ => {
                    let mut out = String::new();
                    for (d, n) in depths.iter().zip(&dims) {
                        let _ = writeln!(out, "depth {d}: dim Hom = {n}");
                    }
                    ok(out)
                }
            }
        }
        Verb::Representatives {
            max_cycle,
            max_period,
            ghostly,
        } => {
            no_dot(format, "representatives")?;
            let reps: Vec<String> = representatives(&amb, *max_cycle, *max_period, *ghostly)
                .iter()
                .map(|d| d.format(&amb))
                .collect();
            match format {
                Format::Json => ok(to_json(&reps)),
                _ => ok(reps.iter().map(|r| format!("{r}\n")).collect()),
            }
        }
    }
}

fn validate_graph(amb: &Ambient, format: Format) -> Result<Output, CliError> {
    let g = amb.graph();
    let report = GraphReport::of(g);
    let special: Vec<(String, String)> = amb
        .special()
        .iter()
        .map(|(v, e)| (g.vertex_name(v).to_string(), g.edge_name(e).to_string()))
        .collect();
    match format {
        Format::Dot => ok(graph_to_dot(amb)),
        Format::Json => ok(to_json(&json!({ "graph": report, "special": special }))),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "vertices: {}", report.vertices);
            let _ = writeln!(out, "edges: {}", report.edges);
            let _ = writeln!(out, "sinks: {}", report.sinks.join(" "));
            let _ = writeln!(out, "regular: {}", report.regular.join(" "));
            let _ = writeln!(out, "components: {}", report.components);
            for (v, e) in &special {
                let _ = writeln!(out, "special {v} {e}");
            }
            ok(out)
        }
    }
}

fn validate_rep_graph(amb: &Arc<Ambient>, text: &str, format: Format) -> Result<Output, CliError> {
    let r = parse_erg(amb, text)?;
    let report = validate_erg(&r);
    let valid = report.is_valid();
    let text = match format {
        Format::Dot => erg_to_dot(&r),
        Format::Json => to_json(&json!({ "valid": valid, "report": report })),
        Format::Text => {
            let mut out = format!(
                "{}: {} vertices, {} edges, {} frontier, {}\n",
                if valid { "valid" } else { "invalid" },
                report.vertices,
                report.edges,
                report.frontier.len(),
                if report.connected {
                    "connected"
                } else {
                    "disconnected"
                }
            );
            for v in &report.violations {
                let _ = writeln!(out, "  {} [{}]: {}", v.item, v.clause, v.detail);
            }
            out
        }
    };
    Ok(Output {
        text,
        success: valid,
    })
}

fn basis(
    amb: &Ambient,
    max_len: usize,
    at: Option<&str>,
    format: Format,
) -> Result<Output, CliError> {
    let at = at
        .map(|v| {
            amb.graph()
                .vertex_id(v)
                .ok_or_else(|| leavitt::Error::UnknownVertex(v.to_string()))
        })
        .transpose()?;
    let paths: Vec<String> = enumerate_basis_paths(amb, max_len, at)
        .iter()
        .map(|p| amb.format_path(p))
        .collect();
    match format {
        Format::Json => ok(to_json(&paths)),
        _ => ok(paths.iter().map(|p| format!("{p}\n")).collect()),
    }
}

fn mul<K: Field>(
    amb: &Arc<Ambient>,
    left: &str,
    right: &str,
    field: FieldChoice,
    format: Format,
) -> Result<Output, CliError> {
    let a = AlgebraElement::<K>::parse(amb, left, true)?;
    let b = AlgebraElement::<K>::parse(amb, right, true)?;
    let p = a.mul(&b)?;
    match format {
        Format::Json => ok(to_json(&json!({
            "field": field.name(),
            "left": a.to_string(),
            "right": b.to_string(),
            "product": p.to_string(),
        }))),
        _ => ok(format!("{p}\n")),
    }
}

fn erg(
    amb: &Arc<Ambient>,
    descriptor: &str,
    depth: usize,
    format: Format,
) -> Result<Output, CliError> {
    let d = Descriptor::parse(amb, descriptor)?;
    let t = build(amb, &d, depth)?;
    let r = t.erg();
    match format {
        Format::Dot => ok(erg_to_dot(r)),
        Format::Json => {
            let g = r.graph();
            let vertices: Vec<_> = g
                .vertices()
                .map(|w| {
                    json!({
                        "name": r.vertex_name(w),
                        "label": amb.graph().vertex_name(r.label(w)),
                        "frontier": r.is_frontier(w),
                    })
                })
                .collect();
            let edges: Vec<_> = g
                .edges()
                .map(|f| {
                    json!({
                        "name": g.edge_name(f),
                        "source": r.vertex_name(g.source(f)),
                        "range": r.vertex_name(g.range(f)),
                        "label": amb.letter_name(r.edge_label(f)),
                    })
                })
                .collect();
            ok(to_json(
                &json!({ "summary": t.summary(), "vertices": vertices, "edges": edges }),
            ))
        }
        Format::Text => {
            let s = t.summary();
            let mut out = format!(
                "# {} at depth {}: {} vertices, {} edges, {} frontier\n",
                s.descriptor, s.depth, s.vertices, s.edges, s.frontier
            );
            out.push_str(&write_erg(r));
            ok(out)
        }
    }
}

fn act<K: Field>(
    amb: &Arc<Ambient>,
    r: &ExtRepGraph,
    vertex: &str,
    element: &str,
    format: Format,
) -> Result<Output, CliError> {
    let w = r
        .vertex_id(vertex)
        .ok_or_else(|| leavitt::Error::UnknownVertex(vertex.to_string()))?;
    let a = AlgebraElement::<K>::parse(amb, element, true)?;
    let res = act_w(r, &ModuleVector::unit(w), &a)?;
    let value = res
        .defined
        .then(|| res.vector.format_with(|v| r.vertex_name(*v).to_string()));
    match format {
        Format::Json => ok(to_json(&json!({
            "vertex": vertex, "element": a.to_string(), "defined": res.defined, "result": value,
        }))),
        _ => ok(match value {
            Some(v) => format!("{v}\n"),
            None => "undefined (needs vertices beyond the truncation)\n".to_string(),
        }),
    }
}

fn schur(
    amb: &Arc<Ambient>,
    cycle: &str,
    depths: &[usize],
    format: Format,
) -> Result<Output, CliError> {
    let x = ClosedBasisPath::parse(amb, cycle)?;
    let rep = check_schur(amb, &x, depths)?;
    let text = match format {
        Format::Json => to_json(&rep),
        _ => {
            let p = &rep.preconditions;
            let mut out = format!("cycle {}\n", rep.cycle);
            let _ = writeln!(out, "all edges special: {}", p.all_special);
            match &p.exit {
                Some((i, e)) => {
                    let _ = writeln!(out, "exit: {e} at position {i}");
                }
                None => out.push_str("exit: none\n"),
            }
            for n in &p.notes {
                let _ = writeln!(out, "note: {n}");
            }
            let _ = writeln!(out, "generator: {}", rep.generator);
            for d in &rep.depths {
                let proper = match d.closure.proper {
                    Some(true) => "proper",
                    Some(false) => "everything",
                    None => "undecided",
                };
                let _ = writeln!(
                    out,
                    "depth {}: {} vertices ({} frontier), closure dim {} {}{}, End dim {}{}, table {} compared {} mismatches",
                    d.depth,
                    d.vertices,
                    d.frontier,
                    d.closure.dimension,
                    proper,
                    d.closure.witness.as_ref().map(|w| format!(" (outside: {w})")).unwrap_or_default(),
                    d.end_dimension,
                    if d.end_is_scalar { " (identity)" } else { "" },
                    d.table_compared,
                    d.table_mismatches.len(),
                );
            }
            let _ = writeln!(out, "{}", if rep.passed { "PASS" } else { "FAIL" });
            out
        }
    };
    Ok(Output {
        text,
        success: rep.passed,
    })
}
