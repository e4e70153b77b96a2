//! Result files shared by the solver and the baselines.
//!
//! JSON layout:
//!
//! ```json
//! {"method": "htec", "rho": 10.95, "lower": 10.95, "upper": 10.95,
//!  "iterations": 42, "residual_inf": 1e-12, "converged": true,
//!  "nodes": [{"id": 0, "label": "v1", "score": 0.3489}],
//!  "edges": [{"id": 0, "label": "e1", "score": 0.2192}]}
//! ```
//!
//! Spectral fields are `null` for baselines. CSV layout is
//! `kind,id,label,score` with `kind` either `node` or `edge`.

use serde::{Deserialize, Serialize};

use crate::analysis::ScoreTable;
use crate::baselines::BaselineResult;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::scalar::Scalar;
use crate::solver::CentralityResult;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreEntry {
    pub id: usize,
    pub label: String,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub method: String,
    pub rho: Option<f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub iterations: usize,
    pub residual_inf: Option<f64>,
    pub converged: bool,
    pub nodes: Vec<ScoreEntry>,
    pub edges: Vec<ScoreEntry>,
}

fn entries<T: Scalar>(scores: &[T], label: impl Fn(usize) -> String) -> Vec<ScoreEntry> {
    scores
        .iter()
        .enumerate()
        .map(|(id, &s)| ScoreEntry {
            id,
            label: label(id),
            score: s.as_f64(),
        })
        .collect()
}

impl ResultFile {
    pub fn from_htec<T: Scalar>(h: &Hypergraph, r: &CentralityResult<T>) -> Self {
        Self {
            method: "htec".into(),
            rho: Some(r.rho.as_f64()),
            lower: Some(r.lower.as_f64()),
            upper: Some(r.upper.as_f64()),
            iterations: r.iterations,
            residual_inf: Some(r.residual_inf.as_f64()),
            converged: true,
            nodes: entries(&r.x_nodes, |v| h.node_label(v).to_string()),
            edges: entries(&r.x_edges, |e| h.edge_label(e)),
        }
    }

    pub fn from_baseline<T: Scalar>(h: &Hypergraph, r: &BaselineResult<T>) -> Self {
        Self {
            method: r.model.name().into(),
            rho: None,
            lower: None,
            upper: None,
            iterations: r.iterations,
            residual_inf: None,
            converged: r.converged,
            nodes: entries(&r.x_nodes, |v| h.node_label(v).to_string()),
            edges: entries(&r.y_edges, |e| h.edge_label(e)),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: Some(e.line()),
            message: e.to_string(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["kind", "id", "label", "score"]).expect("in-memory write");
        for (kind, list) in [("node", &self.nodes), ("edge", &self.edges)] {
            for e in list {
                w.write_record([kind, &e.id.to_string(), &e.label, &e.score.to_string()])
                    .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    /// Reads the CSV layout. Spectral fields are left empty.
    pub fn from_csv(text: &str, method: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let mut out = ResultFile {
            method: method.to_string(),
            rho: None,
            lower: None,
            upper: None,
            iterations: 0,
            residual_inf: None,
            converged: true,
            nodes: Vec::new(),
            edges: Vec::new(),
        };
        for (row, rec) in r.records().enumerate() {
            let line = row + 2;
            let rec = rec.map_err(|e| Error::parse(line, e.to_string()))?;
            if rec.len() != 4 {
                return Err(Error::parse(line, "expected 4 fields"));
            }
            let id = rec[1]
                .parse()
                .map_err(|_| Error::parse(line, format!("bad id {:?}", &rec[1])))?;
            let score = rec[3]
                .parse()
                .map_err(|_| Error::parse(line, format!("bad score {:?}", &rec[3])))?;
            let entry = ScoreEntry {
                id,
                label: rec[2].to_string(),
                score,
            };
            match &rec[0] {
                "node" => out.nodes.push(entry),
                "edge" => out.edges.push(entry),
                other => return Err(Error::parse(line, format!("unknown kind {other:?}"))),
            }
        }
        Ok(out)
    }
}

/// Which half of a result file to tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Nodes,
    Edges,
}

/// Joins several result files on ids into one score table, one column per
/// file. Every file must list the same ids with the same labels.
pub fn join_results(files: &[(String, ResultFile)], side: Side) -> Result<ScoreTable<f64>> {
    let pick = |f: &ResultFile| -> Vec<ScoreEntry> {
        let mut v = match side {
            Side::Nodes => f.nodes.clone(),
            Side::Edges => f.edges.clone(),
        };
        v.sort_by_key(|e| e.id);
        v
    };
    let (_, first) = files
        .first()
        .ok_or_else(|| Error::invalid("no result files to join"))?;
    let base = pick(first);
    let mut table = ScoreTable::new(
        base.iter().map(|e| e.id).collect(),
        Some(base.iter().map(|e| e.label.clone()).collect()),
    )?;
    for (name, f) in files {
        let rows = pick(f);
        if rows.len() != base.len() {
            return Err(Error::Parse {
                line: None,
                message: format!(
                    "{name}: {} entries, expected {}",
                    rows.len(),
                    base.len()
                ),
            });
        }
        for (a, b) in rows.iter().zip(&base) {
            if a.id != b.id || a.label != b.label {
                return Err(Error::Parse {
                    line: None,
                    message: format!("{name}: id {} ({:?}) does not match {} ({:?})", a.id, a.label, b.id, b.label),
                });
            }
        }
        table.add_column(name.clone(), rows.iter().map(|e| e.score).collect())?;
    }
    Ok(table)
}
