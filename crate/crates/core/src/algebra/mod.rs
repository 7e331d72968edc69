//! Curved dg algebras given by structure constants on a finite basis.
//!
//! Everything is expressed through the [`Algebra`] trait, so constructions
//! (tensor products, opposites, twists, truncated tensor algebras) can be
//! lazy wrappers. [`TableAlgebra`] materializes any of them.

mod constructions;
mod table;

pub use constructions::*;
pub use table::TableAlgebra;

use std::sync::Arc;

use rayon::prelude::*;

use crate::scalar::Field;
use crate::validate::Report;
use crate::vector::Vector;

pub type AlgebraRef = Arc<dyn Algebra>;

/// A finite-dimensional curved dg algebra with a fixed homogeneous basis.
///
/// Uncurved algebras return a zero curvature; dg algebras are the case
/// `curvature() = 0`.
pub trait Algebra: Send + Sync {
    fn field(&self) -> Field;
    fn dim(&self) -> usize;
    fn degree(&self, i: usize) -> i32;
    fn label(&self, i: usize) -> String;
    fn unit(&self) -> Vector;
    fn mul_basis(&self, i: usize, j: usize) -> Vector;
    fn diff_basis(&self, i: usize) -> Vector;
    fn curvature(&self) -> Vector;

    /// Word length of a basis element in a filtered (tensor) algebra.
    fn arity(&self, _i: usize) -> usize {
        0
    }

    /// Elements generating the algebra multiplicatively together with the
    /// unit, if known. Lets validation skip redundant basis triples.
    fn generators(&self) -> Option<Vec<Vector>> {
        None
    }
}

/// Vector-level operations available on every algebra.
pub trait AlgebraExt: Algebra {
    fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        x.bilinear(y, |i, j| self.mul_basis(i, j))
    }

    fn diff(&self, x: &Vector) -> Vector {
        x.map(|i| self.diff_basis(i))
    }

    /// Common degree of the terms of `x`; `None` for zero or inhomogeneous `x`.
    fn homogeneous_degree(&self, x: &Vector) -> Option<i32> {
        let mut it = x.indices().map(|i| self.degree(i));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    fn is_homogeneous_of(&self, x: &Vector, d: i32) -> bool {
        x.indices().all(|i| self.degree(i) == d)
    }

    /// Graded commutator `[a,b] = ab - (-1)^{|a||b|} ba` extended bilinearly
    /// over homogeneous components.
    fn commutator(&self, x: &Vector, y: &Vector) -> Vector {
        x.bilinear(y, |i, j| {
            let s = (self.degree(i) as i64) * (self.degree(j) as i64);
            let mut v = self.mul_basis(i, j);
            v.add_scaled(&self.mul_basis(j, i), &self.field().one().signed(s + 1));
            v
        })
    }

    fn one(&self) -> Vector {
        self.unit()
    }

    fn basis_vector(&self, i: usize) -> Vector {
        Vector::basis(i, self.field())
    }

    fn basis_labels(&self) -> Vec<String> {
        (0..self.dim()).map(|i| self.label(i)).collect()
    }

    fn format(&self, x: &Vector) -> String {
        format_vector(x, |i| self.label(i))
    }
}

impl<T: Algebra + ?Sized> AlgebraExt for T {}

pub(crate) fn format_vector(x: &Vector, label: impl Fn(usize) -> String) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.iter()
        .map(|(i, c)| {
            if c.is_one() {
                label(i)
            } else {
                format!("{c}*{}", label(i))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// All basis products `table[i][j] = b_i b_j`, computed in parallel.
pub fn product_table(a: &dyn Algebra) -> Vec<Vec<Vector>> {
    let n = a.dim();
    (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| a.mul_basis(i, j)).collect())
        .collect()
}

fn mul_with(table: &[Vec<Vector>], x: &Vector, y: &Vector) -> Vector {
    x.bilinear(y, |i, j| table[i][j].clone())
}

/// Checks every defining identity of a curved dg algebra on the basis:
/// degree homogeneity, two-sided unit, associativity, Leibniz rule,
/// `d² = [h,-]`, `|h| = 2` and `dh = 0`.
pub fn validate_algebra(a: &dyn Algebra) -> Report {
    let mut r = Report::new();
    let n = a.dim();
    let field = a.field();
    let lab = |i: usize| a.label(i);
    let table = product_table(a);
    let diffs: Vec<Vector> = (0..n).map(|i| a.diff_basis(i)).collect();
    let d = |v: &Vector| v.map(|i| diffs[i].clone());

    r.check("degree homogeneity");
    for i in 0..n {
        for j in 0..n {
            if !table[i][j].indices().all(|k| a.degree(k) == a.degree(i) + a.degree(j)) {
                r.fail("degree homogeneity", format!("{}·{}", lab(i), lab(j)));
            }
        }
        if !diffs[i].indices().all(|k| a.degree(k) == a.degree(i) + 1) {
            r.fail("degree homogeneity", format!("d({})", lab(i)));
        }
    }

    r.check("unit");
    let u = a.unit();
    if !u.indices().all(|k| a.degree(k) == 0) || u.is_zero() {
        r.fail("unit", "unit is not a nonzero degree-0 element".to_string());
    }
    for i in 0..n {
        let e = Vector::basis(i, field);
        if mul_with(&table, &u, &e) != e || mul_with(&table, &e, &u) != e {
            r.fail("unit", lab(i));
        }
    }

    let gens: Vec<Vector> = a
        .generators()
        .unwrap_or_else(|| (0..n).map(|i| Vector::basis(i, field)).collect());

    r.check("associativity");
    let failures: Vec<String> = gens
        .par_iter()
        .flat_map_iter(|g| {
            let mut out = Vec::new();
            for j in 0..n {
                let gj = g.bilinear(&Vector::basis(j, field), |i, j| table[i][j].clone());
                for k in 0..n {
                    let left = gj.map(|m| table[m][k].clone());
                    let jk = &table[j][k];
                    let right = mul_with(&table, g, jk);
                    if left != right {
                        out.push(format!("({}, {}, {})", format_vector(g, lab), lab(j), lab(k)));
                    }
                }
            }
            out
        })
        .collect();
    for w in failures {
        r.fail("associativity", w);
    }

    r.check("Leibniz rule");
    for g in &gens {
        for j in 0..n {
            let ej = Vector::basis(j, field);
            let prod = mul_with(&table, g, &ej);
            let lhs = d(&prod);
            let mut rhs = mul_with(&table, &d(g), &ej);
            // (-1)^{|g|} g·d(b_j), applied termwise so inhomogeneous generators are fine
            for (i, c) in g.iter() {
                let t = mul_with(&table, &Vector::basis(i, field), &diffs[j]);
                rhs.add_scaled(&t, &c.clone().signed(a.degree(i) as i64));
            }
            if lhs != rhs {
                r.fail("Leibniz rule", format!("d({}·{})", format_vector(g, lab), lab(j)));
            }
        }
    }

    r.check("curvature degree");
    let h = a.curvature();
    if !h.indices().all(|k| a.degree(k) == 2) {
        r.fail("curvature degree", format_vector(&h, lab));
    }
    r.check("dh = 0");
    if !d(&h).is_zero() {
        r.fail("dh = 0", format_vector(&h, lab));
    }

    r.check("d² = [h,-]");
    for g in &gens {
        let lhs = d(&d(g));
        let mut rhs = Vector::zero();
        for (i, c) in g.iter() {
            for (k, hk) in h.iter() {
                let s = a.degree(i) as i64 * a.degree(k) as i64;
                let coeff = c * hk;
                rhs.add_scaled(&table[k][i], &coeff);
                rhs.add_scaled(&table[i][k], &coeff.signed(s + 1));
            }
        }
        if lhs != rhs {
            r.fail("d² = [h,-]", format_vector(g, lab));
        }
    }
    r
}

/// Whether the curvature vanishes.
pub fn is_uncurved(a: &dyn Algebra) -> bool {
    a.curvature().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{GradedMap, GradedVectorSpace};
    use crate::linalg::Matrix;
    use crate::module::{validate_module, LeftRegular, RegularBimodule};

    const Q: Field = Field::Rational;

    /// End of `k` in degrees 0, 1, 2 with both maps the identity: `h = d² ≠ 0`.
    fn curved() -> AlgebraRef {
        let f = Q;
        let labels: Vec<String> = vec!["u".into(), "v".into(), "w".into()];
        let d = vec![Vector::basis(1, f), Vector::basis(2, f), Vector::zero()];
        endomorphism_algebra_of(f, &labels, &[0, 1, 2], &d).unwrap().into_ref()
    }

    #[test]
    fn builtins_validate() {
        for name in BUILTINS {
            let a = builtin(name, Q).unwrap();
            let r = validate_algebra(&a);
            assert!(r.is_ok(), "{name}: {r}");
        }
        let f7 = Field::prime(7).unwrap();
        assert!(validate_algebra(&matrix_algebra(f7, 3)).is_ok());
        assert!(validate_algebra(&truncated_polynomial(Q, 5, 0)).is_ok());
        assert!(validate_algebra(&truncated_polynomial(Q, 2, 1)).is_ok());
        assert!(validate_algebra(&truncated_polynomial(Q, 3, -1)).is_ok());
    }

    #[test]
    fn corrupted_acyclic_algebra_breaks_leibniz() {
        let mut a = acyclic_two_dim(Q);
        // x² = x cannot even be homogeneous, so degree both to 0 first
        let mut b = TableAlgebra::new(Q, vec![("1".into(), 0), ("x".into(), 0)], Vector::basis(0, Q)).unwrap();
        b.set_mul(0, 0, Vector::basis(0, Q)).unwrap();
        b.set_mul(0, 1, Vector::basis(1, Q)).unwrap();
        b.set_mul(1, 0, Vector::basis(1, Q)).unwrap();
        b.set_mul(1, 1, Vector::basis(1, Q)).unwrap();
        b.set_diff(1, Vector::basis(0, Q)).unwrap();
        let r = validate_algebra(&b);
        assert!(r.failed("Leibniz rule"));
        a.set_mul(1, 1, Vector::basis(1, Q)).unwrap();
        assert!(validate_algebra(&a).failed("Leibniz rule"));
    }

    #[test]
    fn curvature_degree_guard() {
        let mut a = truncated_polynomial(Q, 2, 3);
        assert!(a.set_curvature(Vector::basis(1, Q)).is_err());
    }

    #[test]
    fn non_associative_table_names_triple() {
        let mut a = truncated_polynomial(Q, 4, 0);
        a.set_mul(1, 2, Vector::zero()).unwrap();
        let r = validate_algebra(&a);
        assert!(r
            .failures
            .iter()
            .any(|v| v.identity == "associativity" && v.witness == "(x, x, x)"));
    }

    #[test]
    fn acyclic_two_dim_structure() {
        let a = acyclic_two_dim(Q);
        assert_eq!(a.diff_basis(1), Vector::basis(0, Q));
        assert!(a.diff_basis(0).is_zero());
        assert!(a.mul_basis(1, 1).is_zero());
        assert_eq!(a.degree(1), -1);
    }

    #[test]
    fn endomorphism_dimensions() {
        let v = GradedVectorSpace::from_components(Q, [(0, vec!["a".into()]), (1, vec!["b".into()])]).unwrap();
        let m = crate::graded::Complex::zero_differential(v);
        let e = endomorphism_algebra(&m).unwrap();
        let mut dims = std::collections::BTreeMap::new();
        for i in 0..e.dim() {
            *dims.entry(e.degree(i)).or_insert(0) += 1;
        }
        assert_eq!(dims, [(-1, 1), (0, 2), (1, 1)].into_iter().collect());
        assert!((0..e.dim()).all(|i| e.diff_basis(i).is_zero()));

        let v = GradedVectorSpace::from_components(Q, [(0, vec!["a".into()]), (1, vec!["b".into()])]).unwrap();
        let mut d = GradedMap::zero(v.clone(), v.clone(), 1);
        d.set_block(0, Matrix::from_i64(Q, &[&[1]])).unwrap();
        let c = crate::graded::Complex::new(v, d).unwrap();
        let e = endomorphism_algebra(&c).unwrap();
        assert!(validate_algebra(&e).is_ok());
        assert!(e.curvature().is_zero());
        let k = endomorphism_algebra(&crate::graded::Complex::zero_differential(GradedVectorSpace::unit(Q))).unwrap();
        assert_eq!(k.dim(), 1);
    }

    #[test]
    fn curved_algebra_identities() {
        let a = curved();
        assert!(!a.curvature().is_zero());
        assert!(validate_algebra(a.as_ref()).is_ok());
        let reg = LeftRegular { algebra: a.clone() };
        assert!(validate_module(&reg).failed("d² = h·"));
        let env = bimodule_envelope(a.clone());
        let bimod = RegularBimodule::new(a.clone(), env.clone()).unwrap();
        assert!(validate_module(&bimod).is_ok());
        assert!(validate_algebra(env.as_ref()).is_ok());
        assert!(validate_algebra(opposite(a).as_ref()).is_ok());
    }

    #[test]
    fn envelope_of_uncurved_is_uncurved() {
        let a = dual_numbers(Q).into_ref();
        assert!(bimodule_envelope(a).curvature().is_zero());
    }

    #[test]
    fn opposite_of_commutative_is_same() {
        let a = truncated_polynomial(Q, 3, 0).into_ref();
        let op = opposite(a.clone());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(op.mul_basis(i, j), a.mul_basis(i, j));
            }
        }
    }

    #[test]
    fn product_of_fields() {
        let k = ground_field(Q);
        let p = product(&k, &k).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.unit(), Vector::basis(0, Q).sum(&Vector::basis(1, Q)));
        assert!(p.mul_basis(0, 1).is_zero());
        assert_eq!(p.mul_basis(1, 1), Vector::basis(1, Q));
        assert!(validate_algebra(&p).is_ok());
    }

    #[test]
    fn tensor_products_validate() {
        let a = upper_triangular(Q).into_ref();
        let b = acyclic_two_dim(Q).into_ref();
        let t = tensor_product(a, b.clone());
        assert!(validate_algebra(t.as_ref()).is_ok());
        let tt = tensor_product(b.clone(), b);
        assert!(validate_algebra(tt.as_ref()).is_ok());
        assert!(validate_algebra(tensor_product(curved(), curved()).as_ref()).is_ok());
    }
}
