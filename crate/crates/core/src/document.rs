//! JSON matrix documents and the fixed-precision writer used for all output.
//!
//! A document is `{"dim": n, "entries": [[re, im], ...]}` with `n²` row-major
//! entries. Floats are written with 17 significant digits in exponent form,
//! so every `f64` survives a write/read cycle bit for bit.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use thiserror::Error;

use crate::effects::{DensityOperator, Effect, EffectError};
use crate::linalg::{ComplexMatrix, ComplexScalar, HermitianMatrix, LinalgError};

/// Relative Hermiticity slack accepted on input documents.
pub const HERMITIAN_INPUT_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("dim must be positive")]
    ZeroDim,
    #[error("entries has length {found}, expected dim² = {expected}")]
    Length { expected: usize, found: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Effect(#[from] EffectError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        debug_assert!(m.is_square());
        Self {
            dim: m.rows(),
            entries: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, DocumentError> {
        if self.dim == 0 {
            return Err(DocumentError::ZeroDim);
        }
        let expected = self.dim * self.dim;
        if self.entries.len() != expected {
            return Err(DocumentError::Length {
                expected,
                found: self.entries.len(),
            });
        }
        let data = self.entries.iter().map(|&[re, im]| ComplexScalar::new(re, im)).collect();
        Ok(ComplexMatrix::from_vec(self.dim, self.dim, data)?)
    }

    /// Parses with the strict Hermiticity check, then symmetrizes.
    pub fn to_hermitian(&self, rel_tol: f64) -> Result<HermitianMatrix, DocumentError> {
        Ok(HermitianMatrix::strict(self.to_matrix()?, rel_tol)?)
    }

    pub fn to_effect(&self) -> Result<Effect, DocumentError> {
        Ok(Effect::new(self.to_hermitian(HERMITIAN_INPUT_TOL)?)?)
    }

    pub fn to_density(&self) -> Result<DensityOperator, DocumentError> {
        Ok(DensityOperator::new(self.to_hermitian(HERMITIAN_INPUT_TOL)?)?)
    }

    pub fn parse(json: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(json)?)
    }

    /// A decomposition file is a JSON array of documents.
    pub fn parse_list(json: &str) -> Result<Vec<Self>, DocumentError> {
        Ok(serde_json::from_str(json)?)
    }
}

impl From<&ComplexMatrix> for MatrixDocument {
    fn from(m: &ComplexMatrix) -> Self {
        Self::from_matrix(m)
    }
}

/// Pretty printer that writes every float as `{:.16e}`.
struct FixedDigits<'a> {
    inner: PrettyFormatter<'a>,
}

fn write_sci<W: ?Sized + io::Write>(writer: &mut W, value: f64) -> io::Result<()> {
    if value.is_finite() {
        write!(writer, "{value:.16e}")
    } else {
        writer.write_all(b"null")
    }
}

impl Formatter for FixedDigits<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write_sci(writer, value)
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write_sci(writer, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

/// Serializes `value` as pretty JSON with 17-significant-digit floats.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let fmt = FixedDigits {
        inner: PrettyFormatter::with_indent(b"  "),
    };
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_use_seventeen_digits() {
        let doc = MatrixDocument {
            dim: 1,
            entries: vec![[0.25, -0.1]],
        };
        let s = to_json_string(&doc);
        assert!(s.contains("2.5000000000000000e-1"), "{s}");
        assert!(s.contains("-1.0000000000000001e-1"), "{s}");
        assert_eq!(MatrixDocument::parse(&s).unwrap(), doc);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(
            MatrixDocument::parse(r#"{"dim": 2, "entries": [[1, 0]]}"#).unwrap().to_matrix(),
            Err(DocumentError::Length { expected: 4, found: 1 })
        ));
        assert!(matches!(
            MatrixDocument::parse(r#"{"dim": 0, "entries": []}"#).unwrap().to_matrix(),
            Err(DocumentError::ZeroDim)
        ));
        let skew = MatrixDocument::parse(r#"{"dim": 2, "entries": [[0.5,0],[0.3,0],[-0.3,0],[0.5,0]]}"#).unwrap();
        assert!(matches!(
            skew.to_effect(),
            Err(DocumentError::Linalg(LinalgError::NotHermitian { .. }))
        ));
        let big = MatrixDocument::parse(r#"{"dim": 1, "entries": [[1.5, 0]]}"#).unwrap();
        assert!(matches!(big.to_effect(), Err(DocumentError::Effect(_))));
        assert!(MatrixDocument::parse("{").is_err());
    }

    #[test]
    fn effect_round_trip_is_exact() {
        let doc = MatrixDocument {
            dim: 2,
            entries: vec![[0.3, 0.0], [0.1, -0.2], [0.1, 0.2], [0.6, 0.0]],
        };
        let effect = doc.to_effect().unwrap();
        assert_eq!(MatrixDocument::from_matrix(effect.matrix()), doc);
    }
}
