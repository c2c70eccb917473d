//! Structured reports and their text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::biproduct::ConfluenceReport;
use crate::cartan::{CartanAux, CartanMatrix};
use crate::datum::FullRank;
use crate::morphisms::{Orientation, Witness};
use crate::report::Entry;

/// Schema version of [`Report`].
pub const REPORT_VERSION: &str = "1.0";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Datum,
    BorelUpper,
    BorelLower,
    WeylEmbedding,
    QuantumWeyl,
    Biproduct,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Datum,
        Check::BorelUpper,
        Check::BorelLower,
        Check::WeylEmbedding,
        Check::QuantumWeyl,
        Check::Biproduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Datum => "datum",
            Check::BorelUpper => "borel-upper",
            Check::BorelLower => "borel-lower",
            Check::WeylEmbedding => "weyl-embedding",
            Check::QuantumWeyl => "quantum-weyl",
            Check::Biproduct => "biproduct",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Classical,
    Quantum,
}

/// The input matrix with its derived data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixEcho {
    pub rows: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    pub rank: usize,
    pub corank: usize,
    /// Rows `q_i` of the quasi-inverse, followed by the left kernel rows.
    pub q: Vec<Vec<String>>,
    pub g: Vec<i64>,
    /// Torus direction `m_i` paired with `q_i`.
    pub directions: Vec<Vec<i64>>,
    pub torus_complement: Vec<Vec<i64>>,
}

impl MatrixEcho {
    pub fn new(c: &CartanMatrix, aux: &CartanAux) -> Self {
        MatrixEcho {
            rows: c.rows().to_vec(),
            d: aux.d.clone(),
            rank: aux.rank,
            corank: aux.corank,
            q: aux
                .q_matrix
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
            g: aux.g.clone(),
            directions: aux.dual_pairs.iter().map(|p| p.m.clone()).collect(),
            torus_complement: aux.torus_complement.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumSummary {
    pub method: String,
    pub b: Vec<String>,
    pub beta: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub full_rank: Option<FullRank>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub omega: Vec<String>,
}

/// One check in one flavor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub check: Check,
    pub flavor: Flavor,
    /// The statement this check supplies evidence for.
    pub claim: String,
    pub pass: bool,
    pub entries: Vec<Entry>,
    /// Evaluated but not counted towards `pass`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub informational: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Orientation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum: Option<DatumSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub confluence: Option<ConfluenceReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

impl Section {
    pub fn new(check: Check, flavor: Flavor, claim: impl Into<String>) -> Self {
        Section {
            check,
            flavor,
            claim: claim.into(),
            pass: false,
            entries: Vec::new(),
            informational: Vec::new(),
            witness: None,
            orientation: None,
            datum: None,
            confluence: None,
            notes: Vec::new(),
            error: None,
            elapsed_ms: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub matrix: MatrixEcho,
    pub sections: Vec<Section>,
    pub pass: bool,
}

impl Report {
    /// Copy with every timing zeroed, for determinism comparisons.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for s in &mut r.sections {
            s.elapsed_ms = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = render_matrix(&self.matrix);
        for s in &self.sections {
            let _ = writeln!(
                out,
                "\n[{}] {} ({:?}) - {}",
                if s.pass { "PASS" } else { "FAIL" },
                s.check.name(),
                s.flavor,
                s.claim
            );
            if let Some(e) = &s.error {
                let _ = writeln!(out, "  error: {e}");
            }
            let passed = s.entries.iter().filter(|e| e.pass).count();
            let _ = writeln!(out, "  {passed}/{} conditions hold", s.entries.len());
            for e in s.entries.iter().filter(|e| !e.pass) {
                let _ = writeln!(out, "  FAIL {}  residual: {}", e.label, e.residual);
            }
            if let Some(d) = &s.datum {
                for (j, b) in d.b.iter().enumerate() {
                    let _ = writeln!(out, "  b{} = {b}", j + 1);
                }
                for (i, w) in d.omega.iter().enumerate() {
                    let _ = writeln!(out, "  omega{} = {w}", i + 1);
                }
                if let Some(fr) = &d.full_rank {
                    let _ = writeln!(
                        out,
                        "  full rank: {} (jacobian {})",
                        fr.independent, fr.jacobian_determinant
                    );
                }
            }
            if let Some(o) = &s.orientation {
                let chosen = match &o.chosen {
                    Some(signs) => format!(
                        "t exponents ({})",
                        signs.iter().map(|k| format!("{k:+}")).collect::<Vec<_>>().join(", ")
                    ),
                    None => "none unique".to_string(),
                };
                let _ = writeln!(out, "  orientation: {chosen}");
            }
            if let Some(w) = &s.witness {
                let _ = writeln!(out, "  witness: {}", w.factors.join(", "));
                for u in &w.unresolved {
                    let _ = writeln!(out, "  unresolved denominator: {u}");
                }
            }
            if let Some(c) = &s.confluence {
                let _ = writeln!(
                    out,
                    "  confluence to degree {}: {}/{} ambiguities resolve ({} rules)",
                    c.degree_bound, c.resolved, c.checked, c.rules
                );
                for a in &c.unresolved {
                    let _ = writeln!(out, "  unresolved {}: {}", a.word, a.difference);
                }
            }
            for e in &s.informational {
                let _ = writeln!(
                    out,
                    "  info {} {}  residual: {}{}",
                    if e.pass { "holds" } else { "fails" },
                    e.label,
                    e.residual,
                    e.note.as_deref().map(|n| format!("  ({n})")).unwrap_or_default()
                );
            }
            for n in &s.notes {
                let _ = writeln!(out, "  NOTE: {n}");
            }
        }
        let _ = writeln!(out, "\noverall: {}", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}

pub fn render_matrix(m: &MatrixEcho) -> String {
    let mut out = String::new();
    let rows: Vec<String> = m
        .rows
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    let _ = writeln!(out, "matrix: {}", rows.join("; "));
    let _ = writeln!(out, "symmetrizer d: {:?}", m.d);
    let _ = writeln!(out, "rank {}, corank {}", m.rank, m.corank);
    for (i, q) in m.q.iter().enumerate() {
        let _ = writeln!(out, "q{}: [{}]", i + 1, q.join(", "));
    }
    let _ = writeln!(out, "g: {:?}", m.g);
    let _ = writeln!(out, "directions: {:?}", m.directions);
    if !m.torus_complement.is_empty() {
        let _ = writeln!(out, "torus complement: {:?}", m.torus_complement);
    }
    out
}
