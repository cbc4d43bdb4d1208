use crate::error::{Error, Result};
use crate::linalg::Vector;

/// Values of a map from the points of a finite metric space into a normed
/// space. As an element of a function space it is flattened point-major:
/// coordinates `i·m .. (i+1)·m` hold the value at point `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionTable {
    values: Vec<Vector>,
}

impl FunctionTable {
    pub fn new(values: Vec<Vector>) -> Result<Self> {
        let m = values.first().map(|v| v.len()).ok_or(Error::EmptyDomain)?;
        if let Some(bad) = values.iter().find(|v| v.len() != m) {
            return Err(Error::DimMismatch { expected: m, got: bad.len() });
        }
        Ok(FunctionTable { values })
    }

    /// Real-valued table.
    pub fn scalar(values: &[f64]) -> Result<Self> {
        FunctionTable::new(values.iter().map(|&x| Vector::from_element(1, x)).collect())
    }

    pub fn from_flat(flat: &Vector, target_dim: usize) -> Result<Self> {
        if target_dim == 0 || flat.len() % target_dim != 0 || flat.is_empty() {
            return Err(Error::NotMember(format!(
                "{} coordinates do not split into values of dimension {target_dim}",
                flat.len()
            )));
        }
        let values = (0..flat.len() / target_dim)
            .map(|i| flat.rows(i * target_dim, target_dim).into_owned())
            .collect();
        Ok(FunctionTable { values })
    }

    pub fn flatten(&self) -> Vector {
        let m = self.target_dim();
        let mut out = Vector::zeros(self.values.len() * m);
        for (i, v) in self.values.iter().enumerate() {
            out.rows_mut(i * m, m).copy_from(v);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn target_dim(&self) -> usize {
        self.values[0].len()
    }

    pub fn value(&self, point: usize) -> &Vector {
        &self.values[point]
    }

    pub fn values(&self) -> &[Vector] {
        &self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    #[test]
    fn flatten_roundtrip() {
        let t = FunctionTable::new(vec![vector(&[1.0, 2.0]), vector(&[3.0, 4.0]), vector(&[5.0, 6.0])]).unwrap();
        let flat = t.flatten();
        assert_eq!(flat.as_slice(), &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(FunctionTable::from_flat(&flat, 2).unwrap(), t);
        assert!(FunctionTable::from_flat(&flat, 4).is_err());
    }

    #[test]
    fn ragged_values_rejected() {
        let err = FunctionTable::new(vec![vector(&[1.0]), vector(&[1.0, 2.0])]).unwrap_err();
        assert_eq!(err.code(), "dim_mismatch");
        assert_eq!(FunctionTable::new(vec![]).unwrap_err().code(), "empty_domain");
    }
}
