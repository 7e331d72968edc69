//! Sparse vectors in a space with a fixed basis.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{Field, Scalar};

/// Sparse vector: basis index → nonzero coefficient.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Vector {
    entries: BTreeMap<usize, Scalar>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn basis(i: usize, field: Field) -> Self {
        Self::term(i, field.one())
    }

    pub fn term(i: usize, c: Scalar) -> Self {
        let mut v = Vector::zero();
        v.add_term(i, &c);
        v
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        let mut out = Vector::zero();
        for (i, x) in v.iter().enumerate() {
            out.add_term(i, x);
        }
        out
    }

    pub fn to_dense(&self, field: Field, len: usize) -> Vec<Scalar> {
        let mut v = vec![field.zero(); len];
        for (&i, x) in &self.entries {
            v[i] = x.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(&i, x)| (i, x))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    pub fn add_term(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.entries.remove(&i);
                }
            }
            None => {
                self.entries.insert(i, c.clone());
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Vector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (&i, x) in &other.entries {
            self.add_term(i, &(x * c));
        }
    }

    pub fn add_assign(&mut self, other: &Vector) {
        for (&i, x) in &other.entries {
            self.add_term(i, x);
        }
    }

    pub fn sub_assign(&mut self, other: &Vector) {
        for (&i, x) in &other.entries {
            self.add_term(i, &(-x));
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Vector {
        let mut out = Vector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Vector {
        Vector {
            entries: self.entries.iter().map(|(&i, x)| (i, -x)).collect(),
        }
    }

    pub fn sum(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn diff(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    /// Applies a linear map given on basis vectors.
    pub fn map(&self, mut f: impl FnMut(usize) -> Vector) -> Vector {
        let mut out = Vector::zero();
        for (&i, x) in &self.entries {
            out.add_scaled(&f(i), x);
        }
        out
    }

    /// Bilinear extension of a map given on pairs of basis vectors.
    pub fn bilinear(&self, other: &Vector, mut f: impl FnMut(usize, usize) -> Vector) -> Vector {
        let mut out = Vector::zero();
        for (&i, x) in &self.entries {
            for (&j, y) in &other.entries {
                out.add_scaled(&f(i, j), &(x * y));
            }
        }
        out
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.entries.iter().map(|(i, x)| format!("{x}*e{i}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl FromIterator<(usize, Scalar)> for Vector {
    fn from_iter<T: IntoIterator<Item = (usize, Scalar)>>(iter: T) -> Self {
        let mut v = Vector::zero();
        for (i, x) in iter {
            v.add_term(i, &x);
        }
        v
    }
}
