//! Deterministic JSON and text renderings of computed artifacts. Object
//! keys are sorted and lists follow content and index order, so equal
//! inputs give byte-identical output.

use serde_json::{json, Value};

use crate::canonical::{specialize_matrix, transition_matrix, CanonicalBasis};
use crate::cartan::{DimVector, QuiverDatum, Vertex};
use crate::crystal::{monomial_basis, LeftGraph};
use crate::error::Result;
use crate::hwmodule::{HighestWeightModule, ModuleVector};
use crate::qarith::LaurentPoly;
use crate::verify::SuiteReport;

/// Bumped whenever an output format or algorithm changes.
pub const ARTIFACT_VERSION: &str = concat!("hwcb-", env!("CARGO_PKG_VERSION"), "/1");

fn poly(p: &LaurentPoly) -> Value {
    Value::String(p.to_string())
}

fn vector(q: &QuiverDatum, u: &ModuleVector) -> Value {
    Value::Array(
        u.display_terms(q)
            .into_iter()
            .map(|(w, c)| json!([w, c.to_string()]))
            .collect(),
    )
}

fn header(m: &HighestWeightModule, max_height: u32) -> Value {
    let q = m.quiver();
    let lambda: serde_json::Map<String, Value> =
        q.vertices().map(|i| (q.name(i).to_string(), json!(m.lambda().d(i)))).collect();
    let edges: Vec<Value> = q.orientation().iter().map(|&(a, b)| json!([q.name(a), q.name(b)])).collect();
    json!({
        "vertices": q.names(),
        "edges": edges,
        "highest_weight": lambda,
        "max_height": max_height,
        "version": ARTIFACT_VERSION,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimsRow {
    pub content: DimVector,
    pub spanning: usize,
    pub rank: usize,
    pub freudenthal: i64,
}

impl DimsRow {
    pub fn agrees(&self) -> bool {
        self.rank as i64 == self.freudenthal
    }
}

/// Spanning count, Gram rank and Freudenthal multiplicity per content.
pub fn dims_rows(m: &HighestWeightModule, max_height: u32) -> Result<Vec<DimsRow>> {
    Ok(m.weight_spaces_up_to(max_height)?
        .iter()
        .map(|ws| DimsRow {
            content: ws.content.clone(),
            spanning: ws.spanning.len(),
            rank: ws.rank,
            freudenthal: m.freudenthal(&ws.content),
        })
        .collect())
}

pub fn dims_json(m: &HighestWeightModule, max_height: u32, rows: &[DimsRow]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "content": r.content.to_string(),
                "spanning": r.spanning,
                "rank": r.rank,
                "freudenthal": r.freudenthal,
                "agree": r.agrees(),
            })
        })
        .collect();
    json!({ "module": header(m, max_height), "weights": rows })
}

pub fn dims_table(rows: &[DimsRow]) -> String {
    let mut s = format!("{:<16} {:>9} {:>5} {:>11} {}\n", "content", "spanning", "rank", "freudenthal", "agree");
    for r in rows {
        s.push_str(&format!(
            "{:<16} {:>9} {:>5} {:>11} {}\n",
            r.content.to_string(),
            r.spanning,
            r.rank,
            r.freudenthal,
            if r.agrees() { "yes" } else { "NO" }
        ));
    }
    s
}

/// Canonical basis dump with the transition matrices from the monomial
/// basis and their values at `v = 1`.
pub fn basis_json(cb: &CanonicalBasis, graph: &LeftGraph, order: &[Vertex]) -> Result<Value> {
    let m = cb.module();
    let q = m.quiver();
    let mut contents = Vec::new();
    for nu in cb.contents_by_height() {
        let elems = cb.elements(&nu);
        if elems.is_empty() {
            continue;
        }
        let list: Vec<Value> = elems
            .iter()
            .map(|b| {
                let prov = b.provenance.as_ref().map_or(Value::Null, |p| {
                    json!({ "i": q.name(p.vertex), "t": p.t, "parent": p.parent.to_string() })
                });
                let stats: serde_json::Map<String, Value> =
                    q.vertices().map(|i| (q.name(i).to_string(), json!(b.t(i)))).collect();
                json!({
                    "id": b.id.to_string(),
                    "vector": vector(q, &b.vector),
                    "self_pairing": poly(&b.self_pairing),
                    "t": stats,
                    "provenance": prov,
                })
            })
            .collect();
        let entries = monomial_basis(cb, graph, &nu, order)?;
        let cols: Vec<ModuleVector> = entries.iter().map(|e| e.vector.clone()).collect();
        let t = transition_matrix(cb, &nu, &cols)?;
        let rows: Vec<Vec<_>> = entries.iter().map(|e| t[e.element.index].clone()).collect();
        let at_one = specialize_matrix(&rows)?;
        contents.push(json!({
            "content": nu.to_string(),
            "elements": list,
            "transition": {
                "rows": entries.iter().map(|e| e.element.to_string()).collect::<Vec<_>>(),
                "monomials": entries.iter().map(|e| e.path.display(q).to_string()).collect::<Vec<_>>(),
                "matrix": rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "at_v1": at_one.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            },
        }));
    }
    let order_names: Vec<&str> = order.iter().map(|&i| q.name(i)).collect();
    Ok(json!({
        "module": header(m, cb.max_height()),
        "order": order_names,
        "count": cb.len(),
        "contents": contents,
    }))
}

pub fn basis_table(cb: &CanonicalBasis) -> String {
    let q = cb.module().quiver();
    let mut s = String::new();
    for nu in cb.contents_by_height() {
        for b in cb.elements(&nu) {
            let terms: Vec<String> = b
                .vector
                .display_terms(q)
                .into_iter()
                .map(|(w, c)| format!("({c})*F[{w}]"))
                .collect();
            s.push_str(&format!("{:<12} (b,b) = {:<16} {}\n", b.id.to_string(), b.self_pairing.to_string(), terms.join(" + ")));
        }
    }
    s
}

/// The left graph plus the paths `s` per content, listed in decreasing
/// path order under `order`.
pub fn graph_json(cb: &CanonicalBasis, graph: &LeftGraph, order: &[Vertex]) -> Result<Value> {
    let m = cb.module();
    let q = m.quiver();
    let arrows: Vec<Value> = graph
        .arrows
        .iter()
        .map(|a| {
            json!({
                "source": a.source.to_string(),
                "target": a.target.to_string(),
                "color": [q.name(a.vertex), a.r],
            })
        })
        .collect();
    let mut paths = Vec::new();
    for nu in cb.contents_by_height() {
        if cb.elements(&nu).is_empty() {
            continue;
        }
        let entries: Vec<Value> = monomial_basis(cb, graph, &nu, order)?
            .iter()
            .map(|e| json!({ "id": e.element.to_string(), "path": e.path.display(q).to_string(), "sign": "unknown" }))
            .collect();
        paths.push(json!({ "content": nu.to_string(), "descending": entries }));
    }
    let order_names: Vec<&str> = order.iter().map(|&i| q.name(i)).collect();
    Ok(json!({
        "module": header(m, cb.max_height()),
        "graph": {
            "kind": "left graph of the canonical basis",
            "vertices": graph.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "arrows": arrows,
        },
        "order": order_names,
        "paths": paths,
    }))
}

pub fn graph_table(cb: &CanonicalBasis, graph: &LeftGraph, order: &[Vertex]) -> Result<String> {
    let q = cb.module().quiver();
    let mut s = String::new();
    for a in &graph.arrows {
        s.push_str(&format!("{} -({},{})-> {}\n", a.source, q.name(a.vertex), a.r, a.target));
    }
    for nu in cb.contents_by_height() {
        for e in monomial_basis(cb, graph, &nu, order)? {
            s.push_str(&format!("s({}) = {}\n", e.element, e.path.display(q)));
        }
    }
    Ok(s)
}

pub fn verify_json(m: &HighestWeightModule, max_height: u32, reports: &[SuiteReport]) -> Value {
    let suites: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "checks": r.checks,
                "failures": r.failures,
                "passed": r.passed(),
                "examples": r.examples,
            })
        })
        .collect();
    json!({
        "module": header(m, max_height),
        "passed": reports.iter().all(SuiteReport::passed),
        "suites": suites,
    })
}

pub fn verify_table(reports: &[SuiteReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        s.push_str(&format!("{status} {:<15} {} checks, {} failures\n", r.name, r.checks, r.failures));
        for e in &r.examples {
            s.push_str(&format!("     counterexample: {e}\n"));
        }
    }
    s
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}
