use crate::algebra::AlgebraRef;
use crate::scalar::Scalar;
use crate::vector::Vector;

/// A linear functional `ε` with `ε(1) = 1`, not necessarily multiplicative
/// or compatible with `d`.
///
/// The pivot is the first basis vector with a nonzero coefficient in the
/// unit; `ε` reads off that coordinate (rescaled) and `A₊` is spanned by the
/// remaining basis vectors.
#[derive(Clone)]
pub struct FakeAugmentation {
    pub algebra: AlgebraRef,
    pub pivot: usize,
    unit_coeff: Scalar,
    /// Basis indices spanning `A₊`, increasing.
    pub plus: Vec<usize>,
}

impl FakeAugmentation {
    pub fn new(algebra: AlgebraRef) -> Self {
        let u = algebra.unit();
        let (pivot, c) = u.iter().next().map(|(i, c)| (i, c.clone())).expect("unit is nonzero");
        let plus = (0..algebra.dim()).filter(|&i| i != pivot).collect();
        FakeAugmentation {
            algebra,
            pivot,
            unit_coeff: c,
            plus,
        }
    }

    pub fn eps(&self, v: &Vector) -> Scalar {
        let f = self.algebra.field();
        match v.get(self.pivot) {
            Some(x) => x * &self.unit_coeff.inv().unwrap(),
            None => f.zero(),
        }
    }

    pub fn eps_basis(&self, i: usize) -> Scalar {
        self.eps(&Vector::basis(i, self.algebra.field()))
    }

    /// `v - ε(v)·1 ∈ A₊`.
    pub fn project(&self, v: &Vector) -> Vector {
        let mut out = v.clone();
        out.add_scaled(&self.algebra.unit(), &-self.eps(v));
        out
    }

    /// `ε(b_i b_j) - ε(b_i)ε(b_j)`.
    pub fn homutator(&self, i: usize, j: usize) -> Scalar {
        let a = &self.algebra;
        &self.eps(&a.mul_basis(i, j)) - &(&self.eps_basis(i) * &self.eps_basis(j))
    }

    /// `ε(d b_i)`.
    pub fn differentiator(&self, i: usize) -> Scalar {
        self.eps(&self.algebra.diff_basis(i))
    }

    pub fn is_multiplicative(&self) -> bool {
        let n = self.algebra.dim();
        (0..n).all(|i| (0..n).all(|j| self.homutator(i, j).is_zero()))
    }

    pub fn commutes_with_d(&self) -> bool {
        (0..self.algebra.dim()).all(|i| self.differentiator(i).is_zero())
    }

    /// Multiplicative and compatible with `d`.
    pub fn is_genuine(&self) -> bool {
        self.is_multiplicative() && self.commutes_with_d()
    }

    /// `ε` as a map of algebras `A → k` on the basis, if genuine.
    pub fn as_character(&self) -> Option<Vec<Scalar>> {
        self.is_genuine()
            .then(|| (0..self.algebra.dim()).map(|i| self.eps_basis(i)).collect())
    }
}
