//! JSON input documents and their conversion to core types.
//!
//! Exact quantities (matrix entries, coefficients, base points) are `"p/q"`
//! strings; floats only appear in `period_basis`.

use std::collections::HashMap;

use novikov_core::algebra::{parse_rational, LaurentMatrix, LaurentPoly, Rational, RationalMatrix};
use novikov_core::morse_bott::{CriticalComponent, MorseData};
use novikov_core::spectral::DeformationFamily;
use novikov_core::twisted::{build_complex, CellularData, Generator, Incidence, IncidenceTerm, TwistedComplex, Word};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("cannot parse document: {0}")]
    Syntax(String),
    #[error("{context}: {message}")]
    Schema { context: String, message: String },
    #[error("expected a {expected} document, found {found}")]
    WrongKind { expected: &'static str, found: &'static str },
}

fn schema(context: impl Into<String>, message: impl ToString) -> DocumentError {
    DocumentError::Schema {
        context: context.into(),
        message: message.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Complex(ComplexDocument),
    Morse(MorseDocument),
    Family(FamilyDocument),
}

impl Document {
    /// Syntax errors carry line and column; schema errors carry the field
    /// path, e.g. `incidences[0].terms[1].coeff`.
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let mut value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| DocumentError::Syntax(e.to_string()))?;
        let kind = value
            .as_object_mut()
            .ok_or_else(|| DocumentError::Syntax("a document must be a JSON object".into()))?
            .remove("kind")
            .ok_or_else(|| DocumentError::Syntax("missing field `kind`".into()))?;
        fn typed<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T, DocumentError> {
            serde_path_to_error::deserialize(value).map_err(|e| {
                let path = e.path().to_string();
                schema(if path == "." { "document".to_string() } else { path }, e.into_inner())
            })
        }
        match kind.as_str() {
            Some("complex") => Ok(Document::Complex(typed(value)?)),
            Some("morse") => Ok(Document::Morse(typed(value)?)),
            Some("family") => Ok(Document::Family(typed(value)?)),
            _ => Err(DocumentError::Syntax(format!(
                "unknown kind {kind}; expected \"complex\", \"morse\" or \"family\""
            ))),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn name(&self) -> &str {
        match self {
            Document::Complex(d) => &d.name,
            Document::Morse(d) => &d.name,
            Document::Family(d) => &d.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Complex(_) => "complex",
            Document::Morse(_) => "morse",
            Document::Family(_) => "family",
        }
    }

    pub fn into_complex(self) -> Result<ComplexDocument, DocumentError> {
        match self {
            Document::Complex(d) => Ok(d),
            other => Err(DocumentError::WrongKind {
                expected: "complex",
                found: other.kind(),
            }),
        }
    }

    pub fn into_morse(self) -> Result<MorseDocument, DocumentError> {
        match self {
            Document::Morse(d) => Ok(d),
            other => Err(DocumentError::WrongKind {
                expected: "morse",
                found: other.kind(),
            }),
        }
    }
}

fn one() -> usize {
    1
}

fn is_one(v: &usize) -> bool {
    *v == 1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_degree: Option<usize>,
    pub fiber_dim: usize,
    pub num_vars: usize,
    #[serde(default)]
    pub period_basis: Vec<f64>,
    /// Degree of the number field realized by the fiber; reported dimensions
    /// are also given divided by it.
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub field_degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<GeneratorDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub incidences: Vec<IncidenceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw: Option<RawComplexDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub name: String,
    pub matrix: Vec<Vec<String>>,
    pub exponents: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IncidenceDoc {
    pub degree: usize,
    pub cell: usize,
    pub face: usize,
    pub terms: Vec<WordTermDoc>,
}

/// `coeff · word`, where `word` reads like `"a b a^-1"`; the empty word is
/// the identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordTermDoc {
    pub coeff: String,
    pub word: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComplexDoc {
    pub cochain_ranks: Vec<usize>,
    pub coboundaries: Vec<RawMatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMatrixDoc {
    pub entries: Vec<RawEntryDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEntryDoc {
    pub row: usize,
    pub col: usize,
    pub terms: Vec<MonomialDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialDoc {
    pub coeff: String,
    pub exponents: Vec<i64>,
}

fn parse_q(context: &str, s: &str) -> Result<Rational, DocumentError> {
    parse_rational(s).map_err(|e| schema(context, e))
}

fn parse_matrix(context: &str, rows: &[Vec<String>]) -> Result<RationalMatrix, DocumentError> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, v)| parse_q(&format!("{context}, entry ({i}, {j})"), v))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    RationalMatrix::from_rows(parsed).map_err(|e| schema(context, e))
}

/// Parses `"a b^2 a^-1"` against the generator names.
pub fn parse_word(word: &str, names: &HashMap<&str, usize>) -> Result<Word, String> {
    word.split_whitespace()
        .map(|token| {
            let (name, power) = match token.split_once('^') {
                Some((n, p)) => (n, p.parse::<i64>().map_err(|_| format!("bad exponent in {token:?}"))?),
                None => (token, 1),
            };
            let index = names
                .get(name)
                .copied()
                .ok_or_else(|| format!("unknown generator {name:?}"))?;
            Ok((index, power))
        })
        .collect()
}

impl ComplexDocument {
    pub fn to_complex(&self) -> Result<TwistedComplex, DocumentError> {
        let complex = match (&self.cells, &self.raw) {
            (Some(_), Some(_)) => {
                return Err(schema(&self.name, "give either cells/generators/incidences or raw, not both"))
            }
            (Some(cells), None) => self.cellular(cells)?,
            (None, Some(raw)) => self.raw_complex(raw)?,
            (None, None) => return Err(schema(&self.name, "missing cells (or raw coboundaries)")),
        };
        if let Some(top) = self.top_degree {
            if top != complex.top_degree() {
                return Err(schema(
                    &self.name,
                    format!("top_degree is {top} but the cells reach degree {}", complex.top_degree()),
                ));
            }
        }
        if self.field_degree == 0 || self.fiber_dim % self.field_degree != 0 {
            return Err(schema(&self.name, "field_degree must divide fiber_dim"));
        }
        Ok(complex)
    }

    fn cellular(&self, cells: &[usize]) -> Result<TwistedComplex, DocumentError> {
        let mut names = HashMap::new();
        let mut generators = Vec::new();
        for (k, g) in self.generators.iter().enumerate() {
            let context = format!("{}: generator {:?}", self.name, g.name);
            if names.insert(g.name.as_str(), k).is_some() {
                return Err(schema(context, "declared twice"));
            }
            generators.push(Generator {
                name: g.name.clone(),
                matrix: parse_matrix(&context, &g.matrix)?,
                exponents: g.exponents.clone(),
            });
        }
        let mut incidences = Vec::new();
        for (k, inc) in self.incidences.iter().enumerate() {
            let context = format!(
                "{}: incidence #{k} (degree {}, cell {}, face {})",
                self.name, inc.degree, inc.cell, inc.face
            );
            let terms = inc
                .terms
                .iter()
                .map(|t| {
                    Ok(IncidenceTerm {
                        coeff: parse_q(&context, &t.coeff)?,
                        word: parse_word(&t.word, &names).map_err(|m| schema(&context, m))?,
                    })
                })
                .collect::<Result<Vec<_>, DocumentError>>()?;
            incidences.push(Incidence {
                degree: inc.degree,
                cell: inc.cell,
                face: inc.face,
                terms,
            });
        }
        build_complex(&CellularData {
            fiber_dim: self.fiber_dim,
            num_vars: self.num_vars,
            cell_counts: cells.to_vec(),
            generators,
            incidences,
            period_basis: self.period_basis.clone(),
        })
        .map_err(|e| schema(&self.name, e))
    }

    fn raw_complex(&self, raw: &RawComplexDoc) -> Result<TwistedComplex, DocumentError> {
        let ranks = &raw.cochain_ranks;
        if raw.coboundaries.len() + 1 != ranks.len() {
            return Err(schema(&self.name, "raw mode needs one coboundary per consecutive pair of degrees"));
        }
        let mut mats = Vec::new();
        for (p, m) in raw.coboundaries.iter().enumerate() {
            let mut entries = Vec::new();
            for e in &m.entries {
                let context = format!("{}: D^{p} entry ({}, {})", self.name, e.row, e.col);
                let terms = e
                    .terms
                    .iter()
                    .map(|t| Ok((t.exponents.clone(), parse_q(&context, &t.coeff)?)))
                    .collect::<Result<Vec<_>, DocumentError>>()?;
                let poly = LaurentPoly::from_terms(self.num_vars, terms).map_err(|err| schema(&context, err))?;
                entries.push((e.row, e.col, poly));
            }
            let mat = LaurentMatrix::from_entries(ranks[p + 1], ranks[p], self.num_vars, entries)
                .map_err(|err| schema(format!("{}: D^{p}", self.name), err))?;
            mats.push(mat);
        }
        TwistedComplex::new(self.fiber_dim, self.num_vars, ranks.clone(), mats, self.period_basis.clone())
            .map_err(|e| schema(&self.name, e))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorseDocument {
    pub name: String,
    pub fiber_dim: usize,
    /// `χ(M)` of the ambient manifold.
    pub euler_characteristic: i64,
    pub components: Vec<ComponentDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub name: String,
    pub index: usize,
    /// Twisted Betti numbers of the component, lowest degree first.
    pub poincare: Vec<u64>,
}

impl MorseDocument {
    pub fn to_morse(&self) -> Result<MorseData, DocumentError> {
        let components = self
            .components
            .iter()
            .map(|c| CriticalComponent::new(c.name.clone(), c.index, c.poincare.clone()))
            .collect();
        MorseData::new(components, self.fiber_dim).map_err(|e| schema(&self.name, e))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub name: String,
    pub base_point: String,
    pub order: usize,
    pub cochain_ranks: Vec<usize>,
    /// `terms[p][k]` is the matrix `D^p_k`, rows of `"p/q"` strings.
    pub terms: Vec<Vec<Vec<Vec<String>>>>,
}

impl FamilyDocument {
    pub fn to_family(&self) -> Result<DeformationFamily, DocumentError> {
        let base = parse_q(&format!("{}: base_point", self.name), &self.base_point)?;
        let mut terms = Vec::new();
        for (p, series) in self.terms.iter().enumerate() {
            let mut mats = Vec::new();
            for (k, rows) in series.iter().enumerate() {
                let context = format!("{}: D^{p}_{k}", self.name);
                let m = if rows.is_empty() {
                    RationalMatrix::zeros(
                        self.cochain_ranks.get(p + 1).copied().unwrap_or(0),
                        self.cochain_ranks.get(p).copied().unwrap_or(0),
                    )
                } else {
                    parse_matrix(&context, rows)?
                };
                mats.push(m);
            }
            terms.push(mats);
        }
        DeformationFamily::new(base, self.order, self.cochain_ranks.clone(), terms).map_err(|e| schema(&self.name, e))
    }
}
