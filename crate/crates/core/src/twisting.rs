//! Twisting curved algebras and modules by degree-one elements.

use std::sync::Arc;

use crate::algebra::{validate_algebra, Algebra, AlgebraExt, AlgebraRef};
use crate::error::{Error, Result};
use crate::module::{validate_module, Module, ModuleRef};
use crate::scalar::Field;
use crate::vector::Vector;

fn check_degree_one(a: &dyn Algebra, xi: &Vector) -> Result<()> {
    if !a.is_homogeneous_of(xi, 1) {
        return Err(Error::Degree(format!(
            "twisting element {} is not of degree 1",
            a.format(xi)
        )));
    }
    Ok(())
}

/// `A^ξ`: same multiplication, `d^ξ = d + [ξ,-]`, `h^ξ = h + dξ + ξ²`.
pub struct Twisted {
    pub inner: AlgebraRef,
    pub xi: Vector,
}

impl Twisted {
    pub fn new(inner: AlgebraRef, xi: Vector) -> Result<Self> {
        check_degree_one(inner.as_ref(), &xi)?;
        Ok(Twisted { inner, xi })
    }
}

impl Algebra for Twisted {
    fn field(&self) -> Field {
        self.inner.field()
    }
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn degree(&self, i: usize) -> i32 {
        self.inner.degree(i)
    }
    fn label(&self, i: usize) -> String {
        self.inner.label(i)
    }
    fn unit(&self) -> Vector {
        self.inner.unit()
    }
    fn mul_basis(&self, i: usize, j: usize) -> Vector {
        self.inner.mul_basis(i, j)
    }
    fn diff_basis(&self, i: usize) -> Vector {
        let mut v = self.inner.diff_basis(i);
        v.add_assign(&self.inner.commutator(&self.xi, &Vector::basis(i, self.field())));
        v
    }
    fn curvature(&self) -> Vector {
        mc_residual(self.inner.as_ref(), &self.xi)
    }
    fn arity(&self, i: usize) -> usize {
        self.inner.arity(i)
    }
    fn generators(&self) -> Option<Vec<Vector>> {
        self.inner.generators()
    }
}

/// `h + dξ + ξ²`.
pub fn mc_residual(a: &dyn Algebra, xi: &Vector) -> Vector {
    let mut h = a.curvature();
    h.add_assign(&a.diff(xi));
    h.add_assign(&a.mul(xi, xi));
    h
}

/// Result of [`is_mc`].
#[derive(Clone, Debug)]
pub struct McCheck {
    pub is_mc: bool,
    pub residual: Vector,
}

/// Whether `ξ` satisfies `h + dξ + ξ² = 0`.
pub fn is_mc(a: &dyn Algebra, xi: &Vector) -> Result<McCheck> {
    check_degree_one(a, xi)?;
    let residual = mc_residual(a, xi);
    Ok(McCheck {
        is_mc: residual.is_zero(),
        residual,
    })
}

/// `A^ξ`, validated.
pub fn twist_algebra(a: AlgebraRef, xi: Vector) -> Result<AlgebraRef> {
    let t: AlgebraRef = Arc::new(Twisted::new(a, xi)?);
    validate_algebra(t.as_ref()).into_result()?;
    Ok(t)
}

/// `N^{[ξ]}` over `A^ξ`: same action, `d^{[ξ]} = d_N + ξ·`.
pub struct TwistedModule {
    pub inner: ModuleRef,
    pub xi: Vector,
    algebra: AlgebraRef,
}

impl TwistedModule {
    /// Builds `A^ξ` from the module's algebra.
    pub fn new(inner: ModuleRef, xi: Vector) -> Result<Self> {
        let algebra: AlgebraRef = Arc::new(Twisted::new(inner.algebra(), xi.clone())?);
        Ok(TwistedModule { inner, xi, algebra })
    }

    /// Uses an existing algebra with the basis of `A^ξ` as the acting algebra.
    pub fn over(inner: ModuleRef, xi: Vector, twisted: AlgebraRef) -> Result<Self> {
        check_degree_one(inner.algebra().as_ref(), &xi)?;
        if twisted.dim() != inner.algebra().dim() {
            return Err(Error::MismatchedAlgebras("twisted algebra dimension".into()));
        }
        Ok(TwistedModule {
            inner,
            xi,
            algebra: twisted,
        })
    }
}

impl Module for TwistedModule {
    fn algebra(&self) -> AlgebraRef {
        self.algebra.clone()
    }
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn degree(&self, x: usize) -> i32 {
        self.inner.degree(x)
    }
    fn label(&self, x: usize) -> String {
        self.inner.label(x)
    }
    fn act_basis(&self, a: usize, x: usize) -> Vector {
        self.inner.act_basis(a, x)
    }
    fn diff_basis(&self, x: usize) -> Vector {
        let mut v = self.inner.diff_basis(x);
        v.add_assign(&self.xi.map(|a| self.inner.act_basis(a, x)));
        v
    }
}

/// `N^{[ξ]}`, validated over `A^ξ`.
pub fn twist_module(n: ModuleRef, xi: Vector) -> Result<ModuleRef> {
    let t: ModuleRef = Arc::new(TwistedModule::new(n, xi)?);
    validate_module(t.as_ref()).into_result()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::bar::{compare_structure, reduced_bar};
    use crate::module::{left_regular, LeftRegular};
    use crate::random::{degree_one_element, rng};

    const Q: Field = Field::Rational;

    fn dual_bar(w: usize) -> AlgebraRef {
        reduced_bar(builtin("dual_numbers", Q).unwrap().into_ref(), w).as_ref()
    }

    fn mat_bar(w: usize) -> AlgebraRef {
        reduced_bar(builtin("mat2", Q).unwrap().into_ref(), w).as_ref()
    }

    #[test]
    fn twist_is_curved_and_valid() {
        let a = dual_bar(3);
        let xi = degree_one_element(&mut rng(1), a.as_ref());
        let t = twist_algebra(a.clone(), xi.clone()).unwrap();
        assert_eq!(t.curvature(), mc_residual(a.as_ref(), &xi));
        assert!(!t.curvature().is_zero());
        assert!(twist_algebra(a.clone(), a.unit()).is_err());
    }

    #[test]
    fn twists_compose_additively() {
        let a = mat_bar(2);
        let mut r = rng(2);
        let xi = degree_one_element(&mut r, a.as_ref());
        let eta = degree_one_element(&mut r, a.as_ref());
        let twice: AlgebraRef =
            Arc::new(Twisted::new(Arc::new(Twisted::new(a.clone(), xi.clone()).unwrap()), eta.clone()).unwrap());
        let once = Twisted::new(a.clone(), xi.sum(&eta)).unwrap();
        let report = compare_structure(twice.as_ref(), &once);
        assert!(report.is_ok(), "{report}");
        let back = Twisted::new(Arc::new(Twisted::new(a.clone(), xi.clone()).unwrap()), xi.neg()).unwrap();
        assert!(compare_structure(&back, a.as_ref()).is_ok());
    }

    #[test]
    fn module_twist_round_trip() {
        let a = dual_bar(3);
        let n: ModuleRef = left_regular(a.clone()).into_ref();
        let xi = degree_one_element(&mut rng(3), a.as_ref());
        let twisted = twist_module(n.clone(), xi.clone()).unwrap();
        let back = TwistedModule::new(twisted, xi.neg()).unwrap();
        assert!((0..n.dim()).all(|x| back.diff_basis(x) == n.diff_basis(x)));
        assert!(validate_module(&back).is_ok());
    }

    #[test]
    fn module_and_algebra_twists_differ_by_right_multiplication() {
        let a = dual_bar(3);
        let xi = degree_one_element(&mut rng(4), a.as_ref());
        let m = TwistedModule::new(Arc::new(LeftRegular { algebra: a.clone() }), xi.clone()).unwrap();
        let t = Twisted::new(a.clone(), xi.clone()).unwrap();
        for x in 0..a.dim() {
            let e = Vector::basis(x, Q);
            let expected = a.mul(&e, &xi).scaled(&Q.one().signed(a.degree(x) as i64));
            assert_eq!(m.diff_basis(x).diff(&t.diff_basis(x)), expected);
        }
    }

    #[test]
    fn non_degree_one_rejected() {
        let a = dual_bar(2);
        assert!(matches!(Twisted::new(a.clone(), a.unit()), Err(Error::Degree(_))));
        assert!(is_mc(a.as_ref(), &a.unit()).is_err());
    }
}
