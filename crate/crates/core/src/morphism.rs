//! Morphisms of curved dg algebras: pairs `(f, a)` with
//! `f(d_B x) = d_A f(x) + [a, f(x)]` and `f(h_B) = h_A + d_A a + a²`.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, AlgebraExt, AlgebraRef};
use crate::error::{Error, Result};
use crate::graded::{Complex, GradedMap};
use crate::linalg::Matrix;
use crate::module::{underlying_complex, LeftRegular};
use crate::scalar::Scalar;
use crate::validate::Report;
use crate::vector::Vector;

#[derive(Clone)]
pub struct CurvedMorphism {
    pub source: AlgebraRef,
    pub target: AlgebraRef,
    /// Image of each source basis vector.
    pub f: Vec<Vector>,
    /// Degree-one element of the target.
    pub a: Vector,
}

impl std::fmt::Debug for CurvedMorphism {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fm.debug_struct("CurvedMorphism")
            .field("f", &self.f)
            .field("a", &self.a)
            .finish()
    }
}

impl CurvedMorphism {
    pub fn new(source: AlgebraRef, target: AlgebraRef, f: Vec<Vector>, a: Vector) -> Result<Self> {
        if f.len() != source.dim() {
            return Err(Error::DimensionMismatch("one image per source basis vector".into()));
        }
        if !target.is_homogeneous_of(&a, 1) {
            return Err(Error::Degree("the element a must have degree 1".into()));
        }
        Ok(CurvedMorphism { source, target, f, a })
    }

    /// A strict morphism `(f, 0)`.
    pub fn strict(source: AlgebraRef, target: AlgebraRef, f: Vec<Vector>) -> Result<Self> {
        Self::new(source, target, f, Vector::zero())
    }

    /// `(id, 0)`.
    pub fn identity(a: AlgebraRef) -> Self {
        let f = (0..a.dim()).map(|i| Vector::basis(i, a.field())).collect();
        CurvedMorphism {
            source: a.clone(),
            target: a,
            f,
            a: Vector::zero(),
        }
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        x.map(|i| self.f[i].clone())
    }

    /// `self ∘ other = (f∘g, a + f(b))`.
    pub fn compose(&self, other: &CurvedMorphism) -> Result<CurvedMorphism> {
        if other.target.dim() != self.source.dim() || !same_algebra(&other.target, &self.source) {
            return Err(Error::MismatchedAlgebras(
                "target of the right factor is not the source of the left".into(),
            ));
        }
        Ok(CurvedMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            f: other.f.iter().map(|v| self.apply(v)).collect(),
            a: self.a.sum(&self.apply(&other.a)),
        })
    }

    /// `(f⁻¹, -f⁻¹(a))`, if `f` is bijective.
    pub fn inverse(&self) -> Result<CurvedMorphism> {
        let n = self.source.dim();
        if self.target.dim() != n {
            return Err(Error::DimensionMismatch("not invertible: dimensions differ".into()));
        }
        let field = self.source.field();
        let cols: Vec<Vec<Scalar>> = self.f.iter().map(|v| v.to_dense(field, n)).collect();
        let inv = Matrix::from_columns(field, n, &cols)
            .inverse()
            .ok_or_else(|| Error::Unsupported("morphism is not bijective".into()))?;
        let finv: Vec<Vector> = (0..n).map(|j| Vector::from_dense(&inv.column(j))).collect();
        let a = self.a.map(|i| finv[i].clone()).neg();
        Ok(CurvedMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            f: finv,
            a,
        })
    }

    /// Equality of the underlying data.
    pub fn same_as(&self, other: &CurvedMorphism) -> bool {
        self.f == other.f && self.a == other.a
    }
}

fn same_algebra(x: &AlgebraRef, y: &AlgebraRef) -> bool {
    std::sync::Arc::ptr_eq(x, y) || (x.dim() == y.dim() && (0..x.dim()).all(|i| x.degree(i) == y.degree(i)))
}

/// Checks the defining identities of a curved morphism on basis elements.
pub fn validate_morphism(m: &CurvedMorphism) -> Report {
    let mut r = Report::new();
    let (b, a) = (&m.source, &m.target);
    let f = b.field();
    r.check("degree 0");
    for i in 0..b.dim() {
        if !a.is_homogeneous_of(&m.f[i], b.degree(i)) {
            r.fail("degree 0", b.label(i));
        }
    }
    r.check("unital");
    if m.apply(&b.unit()) != a.unit() {
        r.fail("unital", "f(1) ≠ 1".to_string());
    }
    r.check("multiplicative");
    let gens = b
        .generators()
        .unwrap_or_else(|| (0..b.dim()).map(|i| Vector::basis(i, f)).collect());
    for g in &gens {
        for j in 0..b.dim() {
            let lhs = m.apply(&b.mul(g, &Vector::basis(j, f)));
            let rhs = a.mul(&m.apply(g), &m.f[j]);
            if lhs != rhs {
                r.fail("multiplicative", format!("{}·{}", b.format(g), b.label(j)));
            }
        }
    }
    r.check("f(dx) = d f(x) + [a, f(x)]");
    for i in 0..b.dim() {
        let lhs = m.apply(&b.diff_basis(i));
        let mut rhs = a.diff(&m.f[i]);
        rhs.add_assign(&a.commutator(&m.a, &m.f[i]));
        if lhs != rhs {
            r.fail("f(dx) = d f(x) + [a, f(x)]", b.label(i));
        }
    }
    r.check("f(h) = h + da + a²");
    let lhs = m.apply(&b.curvature());
    let mut rhs = a.curvature();
    rhs.add_assign(&a.diff(&m.a));
    rhs.add_assign(&a.mul(&m.a, &m.a));
    if lhs != rhs {
        r.fail("f(h) = h + da + a²", a.format(&lhs.diff(&rhs)));
    }
    r
}

/// `(f, 0)` where `f` is a linear bijection between bases is an isomorphism
/// of curved algebras iff it validates; this checks both.
pub fn is_isomorphism(m: &CurvedMorphism) -> bool {
    validate_morphism(m).is_ok() && m.inverse().map(|inv| validate_morphism(&inv).is_ok()).unwrap_or(false)
}

/// Basis images of an algebra's identity map.
pub fn identity_images(a: &dyn Algebra) -> Vec<Vector> {
    (0..a.dim()).map(|i| Vector::basis(i, a.field())).collect()
}

/// A strict morphism of uncurved algebras as a map of underlying complexes
/// (basis grouped by degree as in [`underlying_complex`]).
pub fn underlying_chain_map(m: &CurvedMorphism) -> Result<(Complex, Complex, GradedMap)> {
    if !m.a.is_zero() {
        return Err(Error::Unsupported(
            "only strict morphisms have an underlying chain map".into(),
        ));
    }
    let field = m.source.field();
    let src = underlying_complex(&LeftRegular {
        algebra: m.source.clone(),
    })?;
    let tgt = underlying_complex(&LeftRegular {
        algebra: m.target.clone(),
    })?;
    let block_pos = |alg: &dyn Algebra| -> Vec<usize> {
        let mut counts = BTreeMap::new();
        (0..alg.dim())
            .map(|i| {
                let c = counts.entry(alg.degree(i)).or_insert(0usize);
                *c += 1;
                *c - 1
            })
            .collect()
    };
    let sp = block_pos(m.source.as_ref());
    let tp = block_pos(m.target.as_ref());
    let mut blocks: BTreeMap<i32, Matrix> = BTreeMap::new();
    for (i, image) in m.f.iter().enumerate() {
        let deg = m.source.degree(i);
        if !m.target.is_homogeneous_of(image, deg) {
            return Err(Error::Degree(format!(
                "image of {} is not of degree {deg}",
                m.source.label(i)
            )));
        }
        let block = blocks
            .entry(deg)
            .or_insert_with(|| Matrix::zeros(field, tgt.space().dim(deg), src.space().dim(deg)));
        for (j, c) in image.iter() {
            block.set(tp[j], sp[i], c.clone());
        }
    }
    let mut f = GradedMap::zero(src.space().clone(), tgt.space().clone(), 0);
    for (deg, block) in blocks {
        f.set_block(deg, block)?;
    }
    Ok((src, tgt, f))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::bar::reduced_bar;
    use crate::random::{change_basis, degree_one_element, invertible_matrix, rng};
    use crate::scalar::Field;
    use crate::twisting::Twisted;

    const Q: Field = Field::Rational;

    fn curved() -> AlgebraRef {
        reduced_bar(crate::algebra::builtin("mat2", Q).unwrap().into_ref(), 2).as_ref()
    }

    #[test]
    fn identity_laws() {
        let a = curved();
        let id = CurvedMorphism::identity(a.clone());
        assert!(validate_morphism(&id).is_ok());
        let xi = degree_one_element(&mut rng(5), a.as_ref());
        let t: AlgebraRef = Arc::new(Twisted::new(a.clone(), xi.clone()).unwrap());
        let f = CurvedMorphism::new(t.clone(), a.clone(), identity_images(a.as_ref()), xi).unwrap();
        assert!(validate_morphism(&f).is_ok(), "{}", validate_morphism(&f));
        assert!(f.compose(&CurvedMorphism::identity(t.clone())).unwrap().same_as(&f));
        assert!(CurvedMorphism::identity(a.clone()).compose(&f).unwrap().same_as(&f));
    }

    #[test]
    fn inverse_and_composition() {
        let a = curved();
        let xi = degree_one_element(&mut rng(6), a.as_ref());
        let t: AlgebraRef = Arc::new(Twisted::new(a.clone(), xi.clone()).unwrap());
        let f = CurvedMorphism::new(t.clone(), a.clone(), identity_images(a.as_ref()), xi).unwrap();
        let g = f.inverse().unwrap();
        assert!(validate_morphism(&g).is_ok(), "{}", validate_morphism(&g));
        assert!(g.compose(&f).unwrap().same_as(&CurvedMorphism::identity(t.clone())));
        assert!(f.compose(&g).unwrap().same_as(&CurvedMorphism::identity(a.clone())));
        assert!(is_isomorphism(&f));
    }

    #[test]
    fn wrong_element_fails() {
        let a = curved();
        let xi = degree_one_element(&mut rng(7), a.as_ref());
        let t: AlgebraRef = Arc::new(Twisted::new(a.clone(), xi.clone()).unwrap());
        let f = CurvedMorphism::new(t, a.clone(), identity_images(a.as_ref()), xi.neg()).unwrap();
        assert!(!validate_morphism(&f).is_ok());
    }

    #[test]
    fn basis_change_is_strict_isomorphism() {
        let a = crate::algebra::builtin("upper_tri_2", Q).unwrap().into_ref();
        let m = invertible_matrix(&mut rng(8), Q, a.dim());
        let basis: Vec<Vector> = (0..a.dim()).map(|c| Vector::from_dense(&m.column(c))).collect();
        let b = change_basis(a.as_ref(), &basis).unwrap().into_ref();
        let f = CurvedMorphism::strict(b, a, basis).unwrap();
        assert!(is_isomorphism(&f));
    }
}

#[cfg(test)]
mod chain_map_tests {
    use super::*;
    use crate::algebra::{builtin, product, product_projections};
    use crate::graded::is_quasi_iso;
    use crate::scalar::Field;

    #[test]
    fn projection_away_from_acyclic_factor() {
        let q = Field::Rational;
        let a = builtin("dual_numbers", q).unwrap();
        let c = builtin("acyclic2", q).unwrap();
        let p = product(&a, &c).unwrap().into_ref();
        let (to_a, to_c) = product_projections(&a, &c);
        let pa = CurvedMorphism::strict(p.clone(), a.into_ref(), to_a).unwrap();
        assert!(validate_morphism(&pa).is_ok());
        let (src, tgt, f) = underlying_chain_map(&pa).unwrap();
        assert!(is_quasi_iso(&f, &src, &tgt, -2, 2).unwrap());
        let pc = CurvedMorphism::strict(p, c.into_ref(), to_c).unwrap();
        let (src, tgt, f) = underlying_chain_map(&pc).unwrap();
        assert!(!is_quasi_iso(&f, &src, &tgt, -2, 2).unwrap());
    }
}
