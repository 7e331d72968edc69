use std::sync::Arc;

use super::{Algebra, AlgebraExt, AlgebraRef, TableAlgebra};
use crate::error::Result;
use crate::graded::Complex;
use crate::scalar::Field;
use crate::vector::Vector;

/// `X⊗Y` with basis `x_i⊗y_j` at index `i·dim Y + j`,
/// `(x⊗y)(x'⊗y') = (-1)^{|y||x'|} xx'⊗yy'`, `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`
/// and curvature `h_X⊗1 + 1⊗h_Y`.
pub struct TensorProduct {
    pub left: AlgebraRef,
    pub right: AlgebraRef,
}

impl TensorProduct {
    pub fn new(left: AlgebraRef, right: AlgebraRef) -> Self {
        assert_eq!(left.field(), right.field(), "tensor product over different fields");
        TensorProduct { left, right }
    }

    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.right.dim(), i % self.right.dim())
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.right.dim() + j
    }

    pub fn tensor(&self, x: &Vector, y: &Vector) -> Vector {
        let f = self.left.field();
        x.bilinear(y, |i, j| Vector::basis(self.index(i, j), f))
    }

    /// `x⊗1`.
    pub fn include_left(&self, x: &Vector) -> Vector {
        self.tensor(x, &self.right.unit())
    }

    /// `1⊗y`.
    pub fn include_right(&self, y: &Vector) -> Vector {
        self.tensor(&self.left.unit(), y)
    }
}

impl Algebra for TensorProduct {
    fn field(&self) -> Field {
        self.left.field()
    }
    fn dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }
    fn degree(&self, i: usize) -> i32 {
        let (a, b) = self.split(i);
        self.left.degree(a) + self.right.degree(b)
    }
    fn label(&self, i: usize) -> String {
        let (a, b) = self.split(i);
        format!("{}⊗{}", self.left.label(a), self.right.label(b))
    }
    fn unit(&self) -> Vector {
        self.tensor(&self.left.unit(), &self.right.unit())
    }
    fn mul_basis(&self, i: usize, j: usize) -> Vector {
        let (a, b) = self.split(i);
        let (c, d) = self.split(j);
        let xx = self.left.mul_basis(a, c);
        if xx.is_zero() {
            return xx;
        }
        let yy = self.right.mul_basis(b, d);
        let s = self.right.degree(b) as i64 * self.left.degree(c) as i64;
        self.tensor(&xx, &yy).scaled(&self.field().one().signed(s))
    }
    fn diff_basis(&self, i: usize) -> Vector {
        let (a, b) = self.split(i);
        let f = self.field();
        let mut v = self.tensor(&self.left.diff_basis(a), &Vector::basis(b, f));
        let w = self.tensor(&Vector::basis(a, f), &self.right.diff_basis(b));
        v.add_scaled(&w, &f.one().signed(self.left.degree(a) as i64));
        v
    }
    fn curvature(&self) -> Vector {
        let mut h = self.include_left(&self.left.curvature());
        h.add_assign(&self.include_right(&self.right.curvature()));
        h
    }
    fn arity(&self, i: usize) -> usize {
        let (a, b) = self.split(i);
        self.left.arity(a) + self.right.arity(b)
    }
    fn generators(&self) -> Option<Vec<Vector>> {
        let f = self.field();
        let gl = self
            .left
            .generators()
            .unwrap_or_else(|| (0..self.left.dim()).map(|i| Vector::basis(i, f)).collect());
        let gr = self
            .right
            .generators()
            .unwrap_or_else(|| (0..self.right.dim()).map(|i| Vector::basis(i, f)).collect());
        let mut out: Vec<Vector> = gl.iter().map(|g| self.include_left(g)).collect();
        out.extend(gr.iter().map(|g| self.include_right(g)));
        Some(out)
    }
}

pub fn tensor_product(left: AlgebraRef, right: AlgebraRef) -> AlgebraRef {
    Arc::new(TensorProduct::new(left, right))
}

/// `A^op`: same space and differential, `a∗b = (-1)^{|a||b|} ba`, curvature `-h`.
pub struct Opposite {
    pub inner: AlgebraRef,
}

impl Algebra for Opposite {
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
        let s = self.inner.degree(i) as i64 * self.inner.degree(j) as i64;
        self.inner.mul_basis(j, i).scaled(&self.field().one().signed(s))
    }
    fn diff_basis(&self, i: usize) -> Vector {
        self.inner.diff_basis(i)
    }
    fn curvature(&self) -> Vector {
        self.inner.curvature().neg()
    }
    fn arity(&self, i: usize) -> usize {
        self.inner.arity(i)
    }
    fn generators(&self) -> Option<Vec<Vector>> {
        self.inner.generators()
    }
}

pub fn opposite(a: AlgebraRef) -> AlgebraRef {
    Arc::new(Opposite { inner: a })
}

/// `A⊗A^op`, whose curvature is `h⊗1 - 1⊗h`.
pub fn bimodule_envelope(a: AlgebraRef) -> AlgebraRef {
    tensor_product(a.clone(), opposite(a))
}

/// `A×C` with basis of `A` followed by that of `C`.
pub fn product(a: &dyn Algebra, c: &dyn Algebra) -> Result<TableAlgebra> {
    let field = a.field();
    let (na, nc) = (a.dim(), c.dim());
    let shift = |v: Vector| v.iter().map(|(i, x)| (i + na, x.clone())).collect::<Vector>();
    let mut basis: Vec<(String, i32)> = (0..na).map(|i| (format!("({},0)", a.label(i)), a.degree(i))).collect();
    basis.extend((0..nc).map(|i| (format!("(0,{})", c.label(i)), c.degree(i))));
    let unit = a.unit().sum(&shift(c.unit()));
    let mut p = TableAlgebra::new(field, basis, unit)?;
    for i in 0..na {
        for j in 0..na {
            p.set_mul(i, j, a.mul_basis(i, j))?;
        }
        p.set_diff(i, a.diff_basis(i))?;
    }
    for i in 0..nc {
        for j in 0..nc {
            p.set_mul(na + i, na + j, shift(c.mul_basis(i, j)))?;
        }
        p.set_diff(na + i, shift(c.diff_basis(i)))?;
    }
    p.set_curvature(a.curvature().sum(&shift(c.curvature())))?;
    Ok(p)
}

/// Basis images of the two projections `A×C → A` and `A×C → C`.
pub fn product_projections(a: &dyn Algebra, c: &dyn Algebra) -> (Vec<Vector>, Vec<Vector>) {
    let f = a.field();
    let (na, nc) = (a.dim(), c.dim());
    let to_a = (0..na + nc)
        .map(|i| if i < na { Vector::basis(i, f) } else { Vector::zero() })
        .collect();
    let to_c = (0..na + nc)
        .map(|i| {
            if i < na {
                Vector::zero()
            } else {
                Vector::basis(i - na, f)
            }
        })
        .collect();
    (to_a, to_c)
}

/// `End(V)` for a graded space with a degree-one endomorphism `d`.
///
/// Basis `E_{rs}` (index `r·n + s`) sends `v_s ↦ v_r`; the differential is
/// `[d,-]` and the curvature is `d²`, so this is a dg algebra iff `d² = 0`.
pub fn endomorphism_algebra_of(field: Field, labels: &[String], degrees: &[i32], d: &[Vector]) -> Result<TableAlgebra> {
    let n = degrees.len();
    let idx = |r: usize, s: usize| r * n + s;
    let basis = (0..n)
        .flat_map(|r| (0..n).map(move |s| (r, s)))
        .map(|(r, s)| (format!("E({},{})", labels[r], labels[s]), degrees[r] - degrees[s]))
        .collect();
    let unit: Vector = (0..n).map(|r| (idx(r, r), field.one())).collect();
    let mut e = TableAlgebra::new(field, basis, unit)?;
    for r in 0..n {
        for s in 0..n {
            for u in 0..n {
                e.set_mul(idx(r, s), idx(s, u), Vector::basis(idx(r, u), field))?;
            }
            // [d, E_rs] = d∘E_rs - (-1)^{|E_rs|} E_rs∘d
            let mut v = Vector::zero();
            for (t, c) in d[r].iter() {
                v.add_term(idx(t, s), c);
            }
            let sign = field.one().signed(degrees[r] as i64 - degrees[s] as i64 + 1);
            for u in 0..n {
                if let Some(c) = d[u].get(s) {
                    v.add_term(idx(r, u), &(c * &sign));
                }
            }
            e.set_diff(idx(r, s), v)?;
        }
    }
    let mut h = Vector::zero();
    for s in 0..n {
        for (t, c) in d[s].iter() {
            for (r, c2) in d[t].iter() {
                h.add_term(idx(r, s), &(c * c2));
            }
        }
    }
    e.set_curvature(h)?;
    Ok(e)
}

/// `End(M)` of a complex.
pub fn endomorphism_algebra(m: &Complex) -> Result<TableAlgebra> {
    let field = m.field();
    let space = m.space();
    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    let mut offsets = std::collections::BTreeMap::new();
    for deg in space.degrees() {
        offsets.insert(deg, labels.len());
        for l in space.labels(deg) {
            labels.push(l.clone());
            degrees.push(deg);
        }
    }
    let mut d = vec![Vector::zero(); labels.len()];
    for deg in space.degrees() {
        let block = m.d(deg);
        for s in 0..space.dim(deg) {
            let col: Vector = (0..block.rows())
                .map(|r| (offsets[&(deg + 1)] + r, block.get(r, s).clone()))
                .collect();
            d[offsets[&deg] + s] = col;
        }
    }
    endomorphism_algebra_of(field, &labels, &degrees, &d)
}

fn algebra_from(
    field: Field,
    basis: &[(&str, i32)],
    unit: &[(usize, i64)],
    mul: &[(usize, usize, &[(usize, i64)])],
    diff: &[(usize, &[(usize, i64)])],
) -> TableAlgebra {
    let vec = |terms: &[(usize, i64)]| terms.iter().map(|&(i, c)| (i, field.from_i64(c))).collect::<Vector>();
    let mut a = TableAlgebra::new(
        field,
        basis.iter().map(|&(l, d)| (l.to_string(), d)).collect(),
        vec(unit),
    )
    .expect("builtin shape");
    for &(i, j, t) in mul {
        a.set_mul(i, j, vec(t)).unwrap();
    }
    for &(i, t) in diff {
        a.set_diff(i, vec(t)).unwrap();
    }
    a
}

/// The ground field.
pub fn ground_field(field: Field) -> TableAlgebra {
    algebra_from(field, &[("1", 0)], &[(0, 1)], &[(0, 0, &[(0, 1)])], &[])
}

/// `k[x]/x^n` with `x` in the given degree (`n ≥ 1`); for odd `x` the
/// powers beyond `x` multiply to zero.
pub fn truncated_polynomial(field: Field, n: usize, degree: i32) -> TableAlgebra {
    let basis: Vec<(String, i32)> = (0..n)
        .map(|k| {
            (
                if k == 0 {
                    "1".to_string()
                } else if k == 1 {
                    "x".into()
                } else {
                    format!("x^{k}")
                },
                degree * k as i32,
            )
        })
        .collect();
    let mut a = TableAlgebra::new(field, basis, Vector::basis(0, field)).unwrap();
    for i in 0..n {
        for j in 0..n - i {
            // an odd generator squares to zero
            if degree % 2 != 0 && i > 0 && j > 0 {
                continue;
            }
            a.set_mul(i, j, Vector::basis(i + j, field)).unwrap();
        }
    }
    a
}

/// Dual numbers `k[x]/x²`, `x` in degree 0.
pub fn dual_numbers(field: Field) -> TableAlgebra {
    truncated_polynomial(field, 2, 0)
}

/// `k^n` with orthogonal idempotents `e1..en`.
pub fn split_semisimple(field: Field, n: usize) -> TableAlgebra {
    let basis = (1..=n).map(|i| (format!("e{i}"), 0)).collect();
    let unit = (0..n).map(|i| (i, field.one())).collect();
    let mut a = TableAlgebra::new(field, basis, unit).unwrap();
    for i in 0..n {
        a.set_mul(i, i, Vector::basis(i, field)).unwrap();
    }
    a
}

/// `n×n` matrices with basis `e_{ij}` at index `(i-1)n + (j-1)`.
pub fn matrix_algebra(field: Field, n: usize) -> TableAlgebra {
    let basis = (0..n * n)
        .map(|k| (format!("e{}{}", k / n + 1, k % n + 1), 0))
        .collect();
    let unit = (0..n).map(|i| (i * n + i, field.one())).collect();
    let mut a = TableAlgebra::new(field, basis, unit).unwrap();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                a.set_mul(i * n + j, j * n + k, Vector::basis(i * n + k, field))
                    .unwrap();
            }
        }
    }
    a
}

/// Upper-triangular `2×2` matrices, basis `e11, e12, e22`.
pub fn upper_triangular(field: Field) -> TableAlgebra {
    algebra_from(
        field,
        &[("e11", 0), ("e12", 0), ("e22", 0)],
        &[(0, 1), (2, 1)],
        &[
            (0, 0, &[(0, 1)]),
            (0, 1, &[(1, 1)]),
            (1, 2, &[(1, 1)]),
            (2, 2, &[(2, 1)]),
        ],
        &[],
    )
}

/// The acyclic algebra with basis `{1, x}`, `|x| = -1`, `x² = 0`, `dx = 1`.
pub fn acyclic_two_dim(field: Field) -> TableAlgebra {
    algebra_from(
        field,
        &[("1", 0), ("x", -1)],
        &[(0, 1)],
        &[(0, 0, &[(0, 1)]), (0, 1, &[(1, 1)]), (1, 0, &[(1, 1)])],
        &[(1, &[(0, 1)])],
    )
}

/// Names accepted by [`builtin`].
pub const BUILTINS: [&str; 6] = ["k", "kxk", "dual_numbers", "upper_tri_2", "acyclic2", "mat2"];

pub fn builtin(name: &str, field: Field) -> Option<TableAlgebra> {
    Some(match name {
        "k" => ground_field(field),
        "kxk" => split_semisimple(field, 2),
        "dual_numbers" => dual_numbers(field),
        "upper_tri_2" => upper_triangular(field),
        "acyclic2" => acyclic_two_dim(field),
        "mat2" => matrix_algebra(field, 2),
        _ => return None,
    })
}

/// Whether `a` is concentrated in degree 0 with zero differential and curvature.
pub fn is_ordinary(a: &dyn Algebra) -> bool {
    (0..a.dim()).all(|i| a.degree(i) == 0 && a.diff_basis(i).is_zero()) && a.curvature().is_zero()
}

/// Left multiplication by `x` as a dense matrix on the basis.
pub fn left_multiplication(a: &dyn Algebra, x: &Vector) -> crate::linalg::Matrix {
    let n = a.dim();
    let f = a.field();
    let cols: Vec<Vec<crate::scalar::Scalar>> = (0..n).map(|j| a.mul(x, &Vector::basis(j, f)).to_dense(f, n)).collect();
    crate::linalg::Matrix::from_columns(f, n, &cols)
}
