use std::sync::Arc;

use rayon::prelude::*;

use super::{validate_algebra, Algebra, AlgebraRef};
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::vector::Vector;

/// Algebra stored as explicit structure constants.
#[derive(Clone, Debug)]
pub struct TableAlgebra {
    field: Field,
    labels: Vec<String>,
    degrees: Vec<i32>,
    unit: Vector,
    table: Vec<Vec<Vector>>,
    diff: Vec<Vector>,
    curvature: Vector,
    arity: Option<Vec<usize>>,
    generators: Option<Vec<Vector>>,
}

impl TableAlgebra {
    /// Zero multiplication and differential; fill in with the setters.
    pub fn new(field: Field, basis: Vec<(String, i32)>, unit: Vector) -> Result<Self> {
        let n = basis.len();
        if unit.indices().any(|i| i >= n) {
            return Err(Error::DimensionMismatch("unit refers to a missing basis vector".into()));
        }
        let (labels, degrees): (Vec<_>, Vec<_>) = basis.into_iter().unzip();
        if unit.indices().any(|i| degrees[i] != 0) {
            return Err(Error::Degree("the unit must have degree 0".into()));
        }
        Ok(TableAlgebra {
            field,
            labels,
            degrees,
            unit,
            table: vec![vec![Vector::zero(); n]; n],
            diff: vec![Vector::zero(); n],
            curvature: Vector::zero(),
            arity: None,
            generators: None,
        })
    }

    /// Copies the structure constants of any algebra.
    pub fn from_algebra(a: &dyn Algebra) -> Self {
        let n = a.dim();
        TableAlgebra {
            field: a.field(),
            labels: (0..n).map(|i| a.label(i)).collect(),
            degrees: (0..n).map(|i| a.degree(i)).collect(),
            unit: a.unit(),
            table: super::product_table(a),
            diff: (0..n).into_par_iter().map(|i| a.diff_basis(i)).collect(),
            curvature: a.curvature(),
            arity: Some((0..n).map(|i| a.arity(i)).collect()),
            generators: a.generators(),
        }
    }

    fn check_index(&self, v: &Vector) -> Result<()> {
        if v.indices().any(|i| i >= self.labels.len()) {
            return Err(Error::DimensionMismatch("basis index out of range".into()));
        }
        Ok(())
    }

    pub fn set_mul(&mut self, i: usize, j: usize, v: Vector) -> Result<()> {
        self.check_index(&v)?;
        self.table[i][j] = v;
        Ok(())
    }

    pub fn set_diff(&mut self, i: usize, v: Vector) -> Result<()> {
        self.check_index(&v)?;
        self.diff[i] = v;
        Ok(())
    }

    /// Rejects curvature elements that are not of degree 2.
    pub fn set_curvature(&mut self, h: Vector) -> Result<()> {
        self.check_index(&h)?;
        if let Some(i) = h.indices().find(|&i| self.degrees[i] != 2) {
            return Err(Error::Degree(format!(
                "curvature must have degree 2, found a term of degree {}",
                self.degrees[i]
            )));
        }
        self.curvature = h;
        Ok(())
    }

    pub fn set_generators(&mut self, gens: Option<Vec<Vector>>) {
        self.generators = gens;
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Runs [`validate_algebra`] and fails with the report if anything is violated.
    pub fn validated(self) -> Result<Self> {
        validate_algebra(&self).into_result()?;
        Ok(self)
    }

    pub fn into_ref(self) -> AlgebraRef {
        Arc::new(self)
    }
}

impl Algebra for TableAlgebra {
    fn field(&self) -> Field {
        self.field
    }
    fn dim(&self) -> usize {
        self.labels.len()
    }
    fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }
    fn label(&self, i: usize) -> String {
        self.labels[i].clone()
    }
    fn unit(&self) -> Vector {
        self.unit.clone()
    }
    fn mul_basis(&self, i: usize, j: usize) -> Vector {
        self.table[i][j].clone()
    }
    fn diff_basis(&self, i: usize) -> Vector {
        self.diff[i].clone()
    }
    fn curvature(&self) -> Vector {
        self.curvature.clone()
    }
    fn arity(&self, i: usize) -> usize {
        self.arity.as_ref().map_or(0, |a| a[i])
    }
    fn generators(&self) -> Option<Vec<Vector>> {
        self.generators.clone()
    }
}
