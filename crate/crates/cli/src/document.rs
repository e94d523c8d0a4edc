//! The JSON interchange document and its validated form.

use std::collections::{BTreeMap, BTreeSet};

use nilform_core::gallery::{Annotations, GalleryEntry};
use nilform_core::lie::LieAlgebra;
use nilform_core::linalg::{Matrix, Rational, Subspace};
use nilform_core::metric::SymBilinearForm;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// A Lie algebra with an optional form, as exchanged on disk. Rationals are
/// strings; brackets list `[e_i, e_j]` for `i < j` only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotations: Option<DocumentAnnotations>,
}

/// `[e_i, e_j] = Σ coeffs[k] e_k`, zero coefficients omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<usize, String>,
}

/// Subspaces given by spanning vectors in basis coordinates.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentAnnotations {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_part: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilizer: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("malformed rational {text:?} at {path}, character {offset}")]
    Rational {
        path: String,
        text: String,
        offset: usize,
    },
    #[error("invalid document at {path}: {message}")]
    Invalid { path: String, message: String },
    #[error("dimension {dim} exceeds the cap {cap} (NILFORM_MAX_DIM)")]
    TooLarge { dim: usize, cap: usize },
    #[error("invalid Lie algebra: {0}")]
    Algebra(String),
}

/// A document that parsed into a valid algebra, form and annotations.
#[derive(Debug, Clone)]
pub struct LoadedDocument {
    pub document: AlgebraDocument,
    pub algebra: LieAlgebra,
    pub form: Option<SymBilinearForm>,
    pub annotations: Annotations,
    /// `sha256:` of the canonical JSON of the document.
    pub digest: String,
}

impl AlgebraDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Serialization with sorted keys.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("documents serialize");
        serde_json::to_string_pretty(&value).expect("values serialize")
    }

    pub fn digest(&self) -> String {
        let value = serde_json::to_value(self).expect("documents serialize");
        let bytes = serde_json::to_vec(&value).expect("values serialize");
        format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
    }

    pub fn from_parts(
        name: &str,
        description: &str,
        algebra: &LieAlgebra,
        form: Option<&SymBilinearForm>,
        annotations: &Annotations,
    ) -> Self {
        let n = algebra.dim();
        let brackets = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let coeffs: BTreeMap<usize, String> = algebra
                    .structure(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.to_string()))
                    .collect();
                (!coeffs.is_empty()).then_some(BracketEntry { i, j, coeffs })
            })
            .collect();
        let vectors = |s: &Subspace| -> Vec<Vec<String>> {
            s.basis()
                .iter()
                .map(|v| v.iter().map(Rational::to_string).collect())
                .collect()
        };
        let annotations = (annotations.center_part.is_some() || annotations.stabilizer.is_some())
            .then(|| DocumentAnnotations {
                center_part: annotations.center_part.as_ref().map(vectors),
                stabilizer: annotations.stabilizer.as_ref().map(vectors),
            });
        AlgebraDocument {
            name: name.into(),
            description: description.into(),
            dim: n,
            labels: algebra.labels().to_vec(),
            brackets,
            form: form.map(|f| {
                let g = f.gram();
                (0..n)
                    .map(|i| (0..n).map(|j| g[(i, j)].to_string()).collect())
                    .collect()
            }),
            annotations,
        }
    }

    pub fn from_gallery(entry: &GalleryEntry) -> Self {
        Self::from_parts(
            &entry.name,
            &entry.description,
            &entry.algebra,
            entry.form.as_ref(),
            &entry.annotations,
        )
    }

    /// Validates every field and builds the algebra; the bracket table must
    /// satisfy the Jacobi identity.
    pub fn load(self, max_dim: usize) -> Result<LoadedDocument, DocumentError> {
        let n = self.dim;
        if n > max_dim {
            return Err(DocumentError::TooLarge {
                dim: n,
                cap: max_dim,
            });
        }
        if n == 0 {
            return Err(invalid("dim", "dimension must be positive"));
        }
        if self.labels.len() != n {
            return Err(invalid(
                "labels",
                format!("expected {n} labels, found {}", self.labels.len()),
            ));
        }
        let mut seen = BTreeSet::new();
        let mut table = Vec::with_capacity(self.brackets.len());
        for (idx, b) in self.brackets.iter().enumerate() {
            let path = format!("brackets[{idx}]");
            if b.i >= b.j {
                return Err(invalid(
                    &path,
                    format!("requires i < j, found i = {}, j = {}", b.i, b.j),
                ));
            }
            if b.j >= n {
                return Err(invalid(
                    &path,
                    format!("index {} out of range for dimension {n}", b.j),
                ));
            }
            if !seen.insert((b.i, b.j)) {
                return Err(invalid(
                    &path,
                    format!("duplicate bracket ({}, {})", b.i, b.j),
                ));
            }
            let mut v = vec![Rational::zero(); n];
            for (k, text) in &b.coeffs {
                let at = format!("{path}.coeffs[\"{k}\"]");
                if *k >= n {
                    return Err(invalid(
                        &at,
                        format!("index {k} out of range for dimension {n}"),
                    ));
                }
                v[*k] = parse_rational(&at, text)?;
            }
            table.push((b.i, b.j, v));
        }
        let algebra = LieAlgebra::from_brackets(self.labels.clone(), table)
            .map_err(|e| DocumentError::Algebra(e.to_string()))?;
        let form = match &self.form {
            None => None,
            Some(rows) => {
                let m = parse_matrix("form", rows, n, n)?;
                Some(
                    SymBilinearForm::new(m)
                        .map_err(|_| invalid("form", "matrix is not symmetric"))?,
                )
            }
        };
        let mut annotations = Annotations::default();
        if let Some(a) = &self.annotations {
            let span = |path: &str, vs: &Vec<Vec<String>>| -> Result<Subspace, DocumentError> {
                let m = parse_matrix(path, vs, vs.len(), n)?;
                Ok(Subspace::span(n, (0..vs.len()).map(|i| m.row(i).to_vec())))
            };
            if let Some(vs) = &a.center_part {
                annotations.center_part = Some(span("annotations.center_part", vs)?);
            }
            if let Some(vs) = &a.stabilizer {
                annotations.stabilizer = Some(span("annotations.stabilizer", vs)?);
            }
        }
        let digest = self.digest();
        Ok(LoadedDocument {
            document: self,
            algebra,
            form,
            annotations,
            digest,
        })
    }
}

fn invalid(path: &str, message: impl Into<String>) -> DocumentError {
    DocumentError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

fn parse_matrix(
    path: &str,
    rows: &[Vec<String>],
    r: usize,
    c: usize,
) -> Result<Matrix, DocumentError> {
    if rows.len() != r {
        return Err(invalid(
            path,
            format!("expected {r} rows, found {}", rows.len()),
        ));
    }
    let mut data = Vec::with_capacity(r * c);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != c {
            return Err(invalid(
                &format!("{path}[{i}]"),
                format!("expected {c} entries, found {}", row.len()),
            ));
        }
        for (j, text) in row.iter().enumerate() {
            data.push(parse_rational(&format!("{path}[{i}][{j}]"), text)?);
        }
    }
    Ok(Matrix::new(r, c, data).expect("r·c entries"))
}

fn parse_rational(path: &str, text: &str) -> Result<Rational, DocumentError> {
    text.parse().map_err(|_| DocumentError::Rational {
        path: path.into(),
        text: text.into(),
        offset: first_bad_char(text),
    })
}

/// Character offset of the first character that breaks `[+-]digits[/digits]`
/// (surrounding whitespace allowed), or the length when the text ends early.
fn first_bad_char(text: &str) -> usize {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() && chars[i].is_whitespace() {
        i += 1;
    }
    if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
        i += 1;
    }
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        *i > start
    };
    if !digits(&mut i) {
        return i;
    }
    if i < chars.len() && chars[i] == '/' {
        i += 1;
        let start = i;
        if !digits(&mut i) {
            return i;
        }
        // a zero denominator is malformed at its first digit
        if chars[start..i].iter().all(|&c| c == '0') {
            return start;
        }
    }
    while i < chars.len() && chars[i].is_whitespace() {
        i += 1;
    }
    i
}
