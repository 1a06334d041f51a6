//! JSON document format for simplicial complexes.
//!
//! A document lists the maximal simplices of a complex, optionally names its
//! vertices, and optionally overrides the reference orientation of
//! top-dimensional simplices:
//!
//! ```json
//! {
//!   "format_version": "1",
//!   "vertex_names": ["a", "b", "c", 3],
//!   "maximal_simplices": [["a", "b", "c"], ["b", "c", 3]],
//!   "reference_orientations": [{ "simplex": ["b", "c", 3], "sign": -1 }]
//! }
//! ```
//!
//! Labels are either JSON integers or strings. When `vertex_names` is
//! present it defines the vertex ids by table position and every label must
//! resolve through it; when absent, ids are assigned by first appearance in
//! `maximal_simplices`. Top-dimensional simplices not listed under
//! `reference_orientations` keep the `+1` reference sign.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{Sign, Simplex, SimplicialComplex};
use crate::{Error, Result};

/// The only supported `format_version` value.
pub const FORMAT_VERSION: &str = "1";

/// A vertex label: a JSON integer or string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(u64),
    Name(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(n) => write!(f, "{n}"),
            Label::Name(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    format_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertex_names: Option<Vec<Label>>,
    maximal_simplices: Vec<Vec<Label>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference_orientations: Option<Vec<OrientationOverride>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrientationOverride {
    simplex: Vec<Label>,
    sign: i8,
}

/// A complex parsed from a document, with the label of each vertex id and
/// the reference sign of each top-dimensional simplex.
#[derive(Debug, Clone)]
pub struct ParsedComplex {
    pub complex: SimplicialComplex,
    /// `labels[v]` is the label of vertex id `v`. The table may be longer
    /// than the number of vertices actually used.
    pub labels: Vec<Label>,
    /// One sign per top-dimensional simplex, in canonical index order.
    pub reference_signs: Vec<Sign>,
}

impl ParsedComplex {
    pub fn label_of(&self, v: usize) -> &Label {
        &self.labels[v]
    }

    /// The labels of a simplex's vertices, in sorted vertex-id order.
    pub fn simplex_labels(&self, s: &Simplex) -> Vec<Label> {
        s.vertices()
            .iter()
            .map(|&v| self.labels[v].clone())
            .collect()
    }
}

fn printable_simplex(labels: &[Label]) -> String {
    let parts: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Parse a JSON document into a complex.
pub fn parse_document(text: &str) -> Result<ParsedComplex> {
    let doc: Document =
        serde_json::from_str(text).map_err(|e| Error::DocumentSyntax(e.to_string()))?;
    if doc.format_version != FORMAT_VERSION {
        return Err(Error::UnsupportedFormatVersion(doc.format_version));
    }

    let mut ids: HashMap<Label, usize> = HashMap::new();
    let mut labels: Vec<Label> = Vec::new();
    let has_table = doc.vertex_names.is_some();
    if let Some(names) = &doc.vertex_names {
        for name in names {
            if ids.insert(name.clone(), labels.len()).is_some() {
                return Err(Error::DuplicateLabel {
                    label: name.to_string(),
                });
            }
            labels.push(name.clone());
        }
    }

    let mut maximal = Vec::with_capacity(doc.maximal_simplices.len());
    for simplex in &doc.maximal_simplices {
        let mut vertices = Vec::with_capacity(simplex.len());
        for label in simplex {
            let id = match ids.get(label) {
                Some(&id) => id,
                None if has_table => {
                    return Err(Error::UnknownLabel {
                        label: label.to_string(),
                    })
                }
                None => {
                    let id = labels.len();
                    ids.insert(label.clone(), id);
                    labels.push(label.clone());
                    id
                }
            };
            vertices.push(id);
        }
        maximal.push(vertices);
    }
    let complex = SimplicialComplex::build(&maximal)?;

    let n = complex.dimension();
    let mut reference_signs = vec![Sign::Plus; complex.num_simplices(n)];
    let mut overridden = vec![false; reference_signs.len()];
    for o in doc.reference_orientations.iter().flatten() {
        let mut vertices = Vec::with_capacity(o.simplex.len());
        for label in &o.simplex {
            match ids.get(label) {
                Some(&id) => vertices.push(id),
                None => {
                    return Err(Error::UnknownOrientationReference {
                        simplex: printable_simplex(&o.simplex),
                    })
                }
            }
        }
        let s = Simplex::new(vertices)?;
        let index = if s.dim() == n {
            complex.index_of(&s)
        } else {
            None
        };
        let index = index.ok_or_else(|| Error::UnknownOrientationReference {
            simplex: printable_simplex(&o.simplex),
        })?;
        if overridden[index] {
            return Err(Error::DuplicateOrientationOverride {
                simplex: s.to_string(),
            });
        }
        overridden[index] = true;
        reference_signs[index] = match o.sign {
            1 => Sign::Plus,
            -1 => Sign::Minus,
            other => {
                return Err(Error::DocumentSyntax(format!(
                    "orientation sign must be 1 or -1, got {other}"
                )))
            }
        };
    }

    Ok(ParsedComplex {
        complex,
        labels,
        reference_signs,
    })
}

/// Write a complex as a pretty-printed JSON document.
///
/// The vertex name table is always emitted so that parsing the output
/// reproduces the same vertex ids; `labels`, when given, must cover every
/// vertex id and contain no duplicates (use [`extend_labels`] after
/// operations that add vertices). `reference_signs`, when given, must have
/// one sign per top-dimensional simplex; only `-1` entries are written.
pub fn write_document(
    k: &SimplicialComplex,
    labels: Option<&[Label]>,
    reference_signs: Option<&[Sign]>,
) -> Result<String> {
    let needed = k.max_vertex_id() + 1;
    let labels: Vec<Label> = match labels {
        Some(ls) => {
            if ls.len() < needed {
                return Err(Error::LabelTableSize {
                    names: ls.len(),
                    vertices: needed,
                });
            }
            let mut seen = HashSet::new();
            for l in ls {
                if !seen.insert(l) {
                    return Err(Error::DuplicateLabel {
                        label: l.to_string(),
                    });
                }
            }
            ls.to_vec()
        }
        None => (0..needed).map(|v| Label::Int(v as u64)).collect(),
    };

    let maximal_simplices: Vec<Vec<Label>> = k
        .maximal_simplices()
        .iter()
        .map(|s| s.vertices().iter().map(|&v| labels[v].clone()).collect())
        .collect();

    let n = k.dimension();
    let reference_orientations = match reference_signs {
        None => None,
        Some(signs) => {
            if signs.len() != k.num_simplices(n) {
                return Err(Error::OrientationCountMismatch {
                    got: signs.len(),
                    expected: k.num_simplices(n),
                });
            }
            let minus: Vec<OrientationOverride> = signs
                .iter()
                .enumerate()
                .filter(|(_, s)| **s == Sign::Minus)
                .map(|(i, _)| OrientationOverride {
                    simplex: k
                        .simplex(n, i)
                        .vertices()
                        .iter()
                        .map(|&v| labels[v].clone())
                        .collect(),
                    sign: -1,
                })
                .collect();
            if minus.is_empty() {
                None
            } else {
                Some(minus)
            }
        }
    };

    let doc = Document {
        format_version: FORMAT_VERSION.to_string(),
        vertex_names: Some(labels),
        maximal_simplices,
        reference_orientations,
    };
    let mut out =
        serde_json::to_string_pretty(&doc).map_err(|e| Error::DocumentSyntax(e.to_string()))?;
    out.push('\n');
    Ok(out)
}

/// Extend a label table to cover `count` vertex ids, appending fresh labels
/// that do not collide with existing ones. New labels are integers when
/// every existing label is an integer, `"v{id}"`-style names otherwise.
pub fn extend_labels(labels: &[Label], count: usize) -> Vec<Label> {
    let mut out = labels.to_vec();
    let taken: HashSet<&Label> = labels.iter().collect();
    let all_int = labels.iter().all(|l| matches!(l, Label::Int(_)));
    for v in labels.len()..count {
        let mut c = v as u64;
        let fresh = loop {
            let candidate = if all_int {
                Label::Int(c)
            } else {
                Label::Name(format!("v{c}"))
            };
            if !taken.contains(&candidate) && !out[labels.len()..].contains(&candidate) {
                break candidate;
            }
            c += 1;
        };
        out.push(fresh);
    }
    out
}
