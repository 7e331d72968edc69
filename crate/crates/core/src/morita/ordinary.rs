//! Dense linear algebra for ordinary algebras and their modules.

use crate::algebra::{is_ordinary, Algebra, AlgebraExt, AlgebraRef, TableAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{eliminate, solve, solve_many, Matrix};
use crate::module::{Module, TableModule};
use crate::scalar::{Field, Scalar};
use crate::vector::Vector;

use super::poly::Poly;

pub(crate) fn require_ordinary(a: &dyn Algebra) -> Result<()> {
    if !is_ordinary(a) {
        return Err(Error::Unsupported(
            "expected an ordinary algebra (degree 0, zero differential and curvature)".into(),
        ));
    }
    Ok(())
}

/// Matrices of the action of each basis element of the algebra.
pub fn action_matrices(m: &dyn Module) -> Vec<Matrix> {
    let a = m.algebra();
    let f = a.field();
    let n = m.dim();
    (0..a.dim())
        .map(|i| {
            let cols: Vec<Vec<Scalar>> = (0..n).map(|x| m.act_basis(i, x).to_dense(f, n)).collect();
            Matrix::from_columns(f, n, &cols)
        })
        .collect()
}

/// A module in degree 0 from action matrices.
pub fn module_from_matrices(a: AlgebraRef, labels: Vec<String>, mats: &[Matrix]) -> TableModule {
    let n = labels.len();
    let mut m = TableModule::new(a.clone(), labels.into_iter().map(|l| (l, 0)).collect());
    for (i, mat) in mats.iter().enumerate() {
        for x in 0..n {
            m.set_action(i, x, Vector::from_dense(&mat.column(x))).unwrap();
        }
    }
    m
}

/// Basis of `{φ : φ ρ_M(b) = ρ_N(b) φ}`, as `dim N × dim M` matrices.
pub fn intertwiners(field: Field, rho_m: &[Matrix], rho_n: &[Matrix], dim_m: usize, dim_n: usize) -> Vec<Matrix> {
    let unknowns = dim_m * dim_n;
    let mut rows = Vec::new();
    for (pm, pn) in rho_m.iter().zip(rho_n) {
        for r in 0..dim_n {
            for c in 0..dim_m {
                let mut row = vec![field.zero(); unknowns];
                for k in 0..dim_m {
                    row[r * dim_m + k] += pm.get(k, c);
                }
                for k in 0..dim_n {
                    row[k * dim_m + c] -= pn.get(r, k);
                }
                rows.push(row);
            }
        }
    }
    let sys = Matrix::from_rows(field, rows, unknowns).unwrap();
    eliminate(&sys)
        .kernel_basis
        .into_iter()
        .map(|v| {
            Matrix::from_rows(
                field,
                v.chunks(dim_m.max(1)).take(dim_n).map(|c| c.to_vec()).collect(),
                dim_m,
            )
            .unwrap()
        })
        .collect()
}

/// Basis of `Hom_A(M, N)`.
pub fn hom_space(m: &dyn Module, n: &dyn Module) -> Vec<Matrix> {
    let f = m.algebra().field();
    if m.dim() == 0 || n.dim() == 0 {
        return Vec::new();
    }
    intertwiners(f, &action_matrices(m), &action_matrices(n), m.dim(), n.dim())
}

/// Coordinates of `v` in the span of `basis` (columns), if it lies there.
pub(crate) fn coords(field: Field, basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    if basis.is_empty() {
        return v.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    let m = Matrix::from_columns(field, v.len(), basis);
    solve(&m, v).unwrap()
}

/// An independent subset spanning the same space.
pub(crate) fn span_basis(field: Field, len: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    eliminate(&Matrix::from_columns(field, len, vectors)).image_basis
}

/// Smallest subspace containing `gens` and stable under the matrices.
pub(crate) fn generated_submodule(field: Field, mats: &[Matrix], len: usize, gens: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut basis = span_basis(field, len, gens);
    loop {
        let mut all = basis.clone();
        for m in mats {
            for v in &basis {
                all.push(m.apply(v).unwrap());
            }
        }
        let next = span_basis(field, len, &all);
        if next.len() == basis.len() {
            return basis;
        }
        basis = next;
    }
}

/// Action on a stable subspace, in the coordinates of `basis`.
pub(crate) fn restrict_action(field: Field, mats: &[Matrix], basis: &[Vec<Scalar>]) -> Vec<Matrix> {
    let len = basis.first().map_or(0, |b| b.len());
    let b = Matrix::from_columns(field, len, basis);
    mats.iter()
        .map(|m| {
            let images: Vec<Vec<Scalar>> = basis.iter().map(|v| m.apply(v).unwrap()).collect();
            let cols = solve_many(&b, &images).unwrap().expect("subspace is stable");
            Matrix::from_columns(field, basis.len(), &cols)
        })
        .collect()
}

/// Action on `V / U` for a stable subspace `U`, on the complement spanned by
/// the returned standard basis vectors.
pub(crate) fn quotient_action(
    field: Field,
    mats: &[Matrix],
    len: usize,
    sub: &[Vec<Scalar>],
) -> (Vec<usize>, Vec<Matrix>) {
    let (complement, change) = complement_of(field, len, sub);
    let k = sub.len();
    let q = complement.len();
    let out = mats
        .iter()
        .map(|m| {
            let mut out = Matrix::zeros(field, q, q);
            for (c, &j) in complement.iter().enumerate() {
                let image = change.apply(&m.column(j)).unwrap();
                for r in 0..q {
                    out.set(r, c, image[k + r].clone());
                }
            }
            out
        })
        .collect();
    (complement, out)
}

/// Standard basis indices completing `sub` to a basis, and the inverse of the
/// basis change `[sub | e_complement]`.
pub(crate) fn complement_of(field: Field, len: usize, sub: &[Vec<Scalar>]) -> (Vec<usize>, Matrix) {
    let mut cols = sub.to_vec();
    for j in 0..len {
        let mut e = vec![field.zero(); len];
        e[j] = field.one();
        cols.push(e);
    }
    let piv = eliminate(&Matrix::from_columns(field, len, &cols)).pivots;
    let complement: Vec<usize> = piv
        .iter()
        .filter(|&&p| p >= sub.len())
        .map(|&p| p - sub.len())
        .collect();
    let mut basis = sub.to_vec();
    for &j in &complement {
        basis.push(cols[sub.len() + j].clone());
    }
    let change = Matrix::from_columns(field, len, &basis).inverse().expect("basis");
    (complement, change)
}

/// `A / I` for a two-sided ideal `I`, on a complement of standard basis vectors.
pub struct Quotient {
    pub algebra: TableAlgebra,
    /// Basis indices of `A` whose images form the basis of the quotient.
    pub complement: Vec<usize>,
    ideal_dim: usize,
    change: Matrix,
}

impl Quotient {
    pub fn new(a: &dyn Algebra, ideal: &[Vec<Scalar>]) -> Result<Quotient> {
        let field = a.field();
        let n = a.dim();
        let (complement, change) = complement_of(field, n, ideal);
        let ideal_dim = ideal.len();
        let basis = complement.iter().map(|&j| (a.label(j), a.degree(j))).collect();
        let project = |v: &Vector| -> Vector {
            let c = change.apply(&v.to_dense(field, n)).unwrap();
            Vector::from_dense(&c[ideal_dim..])
        };
        let mut q = TableAlgebra::new(field, basis, project(&a.unit()))?;
        for (r, &i) in complement.iter().enumerate() {
            for (c, &j) in complement.iter().enumerate() {
                q.set_mul(r, c, project(&a.mul_basis(i, j)))?;
            }
        }
        Ok(Quotient {
            algebra: q,
            complement,
            ideal_dim,
            change,
        })
    }

    pub fn project(&self, v: &Vector) -> Vector {
        let n = self.change.cols();
        let c = self.change.apply(&v.to_dense(self.change.field(), n)).unwrap();
        Vector::from_dense(&c[self.ideal_dim..])
    }

    /// The preimage spanned by the complement basis vectors.
    pub fn lift(&self, v: &Vector) -> Vector {
        v.iter().map(|(i, c)| (self.complement[i], c.clone())).collect()
    }
}

/// The submodule generated by `gens` (coordinate vectors).
pub fn generated_submodule_of(m: &dyn Module, gens: &[Vec<Scalar>]) -> TableModule {
    let a = m.algebra();
    let f = a.field();
    let mats = action_matrices(m);
    let basis = generated_submodule(f, &mats, m.dim(), gens);
    let labels = (0..basis.len()).map(|i| format!("u{}", i + 1)).collect();
    let action = if basis.is_empty() {
        vec![Matrix::zeros(f, 0, 0); a.dim()]
    } else {
        restrict_action(f, &mats, &basis)
    };
    module_from_matrices(a, labels, &action)
}

/// The quotient by the submodule generated by `relations`.
pub fn quotient_module_of(m: &dyn Module, relations: &[Vec<Scalar>]) -> TableModule {
    let a = m.algebra();
    let f = a.field();
    let mats = action_matrices(m);
    let sub = generated_submodule(f, &mats, m.dim(), relations);
    let (complement, action) = quotient_action(f, &mats, m.dim(), &sub);
    let labels = complement.iter().map(|&x| format!("[{}]", m.label(x))).collect();
    module_from_matrices(a, labels, &action)
}

/// `tr(L_x)` for each basis element `x`.
fn traces(a: &dyn Algebra) -> Vec<Scalar> {
    let f = a.field();
    (0..a.dim())
        .map(|k| (0..a.dim()).fold(f.zero(), |acc, l| &acc + a.mul_basis(k, l).get(l).unwrap_or(&f.zero())))
        .collect()
}

/// The trace form `(x, y) ↦ tr(L_{xy})` as a matrix.
pub fn trace_form(a: &dyn Algebra) -> Matrix {
    let f = a.field();
    let t = traces(a);
    let n = a.dim();
    let mut m = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            let v = a.mul_basis(i, j);
            let s = v.iter().fold(f.zero(), |acc, (k, c)| &acc + &(c * &t[k]));
            m.set(i, j, s);
        }
    }
    m
}

/// Basis of the Jacobson radical: the kernel of the trace form. Requires
/// characteristic 0 or `p > dim A`.
pub fn radical(a: &dyn Algebra) -> Result<Vec<Vec<Scalar>>> {
    require_ordinary(a)?;
    let p = a.field().characteristic();
    if p != 0 && p <= a.dim() as u64 {
        return Err(Error::CharacteristicTooSmall {
            characteristic: p,
            dim: a.dim(),
        });
    }
    Ok(eliminate(&trace_form(a).transpose()).kernel_basis)
}

/// `A / rad A`, certified semisimple by a nondegenerate trace form.
pub fn semisimple_quotient(a: &dyn Algebra) -> Result<(Vec<Vec<Scalar>>, Quotient)> {
    let rad = radical(a)?;
    let q = Quotient::new(a, &rad)?;
    if trace_form(&q.algebra).rank() != q.algebra.dim() {
        return Err(Error::Unsupported("quotient by the radical is not semisimple".into()));
    }
    Ok((rad, q))
}

/// Basis of the center.
pub fn center(a: &dyn Algebra) -> Vec<Vector> {
    let f = a.field();
    let n = a.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|k| a.mul_basis(k, i).diff(&a.mul_basis(i, k)).to_dense(f, n))
            .collect();
        let m = Matrix::from_columns(f, n, &cols);
        for r in 0..n {
            rows.push(m.row(r).to_vec());
        }
    }
    let sys = Matrix::from_rows(f, rows, n).unwrap();
    eliminate(&sys)
        .kernel_basis
        .iter()
        .map(|v| Vector::from_dense(v))
        .collect()
}

/// Minimal polynomial of `w` inside the corner with unit `e`.
pub fn minimal_polynomial(a: &dyn Algebra, w: &Vector, e: &Vector) -> Poly {
    let f = a.field();
    let n = a.dim();
    let mut powers = vec![e.to_dense(f, n)];
    let mut cur = e.clone();
    loop {
        cur = a.mul(&cur, w);
        let v = cur.to_dense(f, n);
        if let Some(c) = coords(f, &powers, &v) {
            let mut coeffs: Vec<Scalar> = c.iter().map(|x| -x).collect();
            coeffs.push(f.one());
            return Poly::new(f, coeffs);
        }
        powers.push(v);
    }
}

/// `p(w)` with `w⁰ = e`.
pub fn eval_poly(a: &dyn Algebra, p: &Poly, w: &Vector, e: &Vector) -> Vector {
    let mut out = Vector::zero();
    let mut pw = e.clone();
    for c in p.coeffs() {
        out.add_scaled(&pw, c);
        pw = a.mul(&pw, w);
    }
    out
}

/// Right multiplication `x ↦ x·y` as a matrix.
pub fn right_multiplication(a: &dyn Algebra, y: &Vector) -> Matrix {
    let f = a.field();
    let n = a.dim();
    let cols: Vec<Vec<Scalar>> = (0..n).map(|j| a.mul(&Vector::basis(j, f), y).to_dense(f, n)).collect();
    Matrix::from_columns(f, n, &cols)
}

/// Lifts an idempotent of `A / rad A` to an idempotent of `A`.
pub fn lift_idempotent(a: &dyn Algebra, q: &Quotient, e: &Vector) -> Result<Vector> {
    let f = a.field();
    let (two, three) = (f.from_i64(2), f.from_i64(3));
    let mut x = q.lift(e);
    for _ in 0..64 {
        let x2 = a.mul(&x, &x);
        if x2 == x {
            return Ok(x);
        }
        let x3 = a.mul(&x2, &x);
        x = x2.scaled(&three).diff(&x3.scaled(&two));
    }
    Err(Error::Unsupported("idempotent lifting did not converge".into()))
}
