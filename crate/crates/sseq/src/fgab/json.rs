use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::module::{FgModule, Hom};
use super::ring::{CoeffRing, Elem};
use super::FgError;

/// `{"ring": ..., "matrix": [[...]]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub ring: CoeffRing,
    pub matrix: Vec<Vec<Elem>>,
}

impl MatrixJson {
    pub fn new(ring: CoeffRing, m: &Matrix) -> Self {
        MatrixJson { ring, matrix: m.to_nested() }
    }

    pub fn to_matrix(&self, cols: Option<usize>) -> Result<Matrix, FgError> {
        self.ring.validate()?;
        let cols = cols.unwrap_or_else(|| self.matrix.first().map_or(0, |r| r.len()));
        let rows: Vec<Vec<Elem>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&v| self.ring.ingest(v)).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()?;
        Matrix::from_nested(&rows, cols)
    }
}

/// A module as the cokernel of its (diagonal) relation matrix, plus the
/// normalized factor list for readability.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub ring: CoeffRing,
    pub factors: Vec<Elem>,
}

impl ModuleJson {
    pub fn new(m: &FgModule) -> Self {
        ModuleJson { ring: m.ring, factors: m.factors().to_vec() }
    }

    /// Accepts any list of cyclic orders and normalizes it.
    pub fn to_module(&self) -> Result<FgModule, FgError> {
        self.ring.validate()?;
        FgModule::from_factors(self.ring, &self.factors)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomJson {
    pub source: Vec<Elem>,
    pub target: Vec<Elem>,
    pub ring: CoeffRing,
    pub matrix: Vec<Vec<Elem>>,
}

impl HomJson {
    pub fn new(h: &Hom) -> Self {
        HomJson {
            source: h.source.factors().to_vec(),
            target: h.target.factors().to_vec(),
            ring: h.ring(),
            matrix: h.matrix.to_nested(),
        }
    }

    /// Source and target must already be in normal form, since the matrix
    /// is expressed in their generators.
    pub fn to_hom(&self) -> Result<Hom, FgError> {
        self.ring.validate()?;
        let source = FgModule::from_normal_factors(self.ring, self.source.clone())?;
        let target = FgModule::from_normal_factors(self.ring, self.target.clone())?;
        let m = MatrixJson { ring: self.ring, matrix: self.matrix.clone() }.to_matrix(Some(source.ngens()))?;
        if m.rows() != target.ngens() {
            return Err(FgError::DimensionMismatch(format!(
                "map matrix has {} rows for a target with {} generators",
                m.rows(),
                target.ngens()
            )));
        }
        Hom::new(source, target, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_tags() {
        let j = serde_json::to_string(&CoeffRing::Padic { p: 3, precision: 12 }).unwrap();
        assert_eq!(j, r#"{"kind":"Zp","p":3,"precision":12}"#);
        let z: CoeffRing = serde_json::from_str(r#"{"kind":"Z"}"#).unwrap();
        assert_eq!(z, CoeffRing::Integers);
    }

    #[test]
    fn matrix_round_trip() {
        let src = r#"{"ring":{"kind":"Z"},"matrix":[[2,0],[0,3]]}"#;
        let mj: MatrixJson = serde_json::from_str(src).unwrap();
        let m = mj.to_matrix(None).unwrap();
        assert_eq!(serde_json::to_string(&MatrixJson::new(mj.ring, &m)).unwrap(), src);
    }
}
