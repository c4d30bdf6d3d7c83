use crate::error::MeshError;
use crate::rational::{self, Rational};

/// One exact value per mesh vertex, linearly interpolated over triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarField {
    values: Vec<Rational>,
}

impl ScalarField {
    pub fn new(values: Vec<Rational>) -> Self {
        Self { values }
    }

    pub fn from_integers(values: impl IntoIterator<Item = i64>) -> Self {
        Self::new(values.into_iter().map(rational::from_int).collect())
    }

    pub fn constant(len: usize, value: Rational) -> Self {
        Self::new(vec![value; len])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Rational] {
        &mut self.values
    }

    #[inline]
    pub fn value(&self, vertex: u32) -> &Rational {
        &self.values[vertex as usize]
    }

    /// Sorted distinct vertex values.
    pub fn distinct_values(&self) -> Vec<Rational> {
        let mut v = self.values.clone();
        v.sort();
        v.dedup();
        v
    }

    pub fn check_len(&self, vertices: usize) -> Result<(), MeshError> {
        if self.values.len() != vertices {
            return Err(MeshError::FieldLength {
                expected: vertices,
                found: self.values.len(),
            });
        }
        Ok(())
    }
}
