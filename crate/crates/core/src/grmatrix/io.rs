use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::{Field, FieldSpec};
use crate::polyring::parse_poly;

use super::matrix::GradedMatrix;

/// On-disk form of a graded matrix; entries are polynomial strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    #[serde(default)]
    pub field: FieldSpec,
    pub row_degrees: Vec<i64>,
    pub col_degrees: Vec<i64>,
    pub entries: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: MatrixFile = serde_json::from_str(text)?;
        file.field.validate()?;
        Ok(file)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Parses and validates the entries over `field`.
    pub fn to_matrix<K: Field>(&self, field: &K) -> Result<GradedMatrix<K>> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|s| parse_poly(field, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        GradedMatrix::new(field, self.row_degrees.clone(), self.col_degrees.clone(), entries)
    }

    pub fn from_matrix<K: Field>(m: &GradedMatrix<K>) -> Self {
        MatrixFile {
            field: m.field().spec(),
            row_degrees: m.row_degrees().to_vec(),
            col_degrees: m.col_degrees().to_vec(),
            entries: m
                .entries()
                .iter()
                .map(|r| r.iter().map(|e| e.to_string()).collect())
                .collect(),
        }
    }
}
