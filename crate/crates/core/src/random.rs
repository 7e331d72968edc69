//! Seeded random algebras, modules and complexes for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    acyclic_two_dim, builtin, ground_field, opposite, product, split_semisimple, tensor_product, truncated_polynomial,
    Algebra, AlgebraExt, AlgebraRef, TableAlgebra,
};
use crate::error::{Error, Result};
use crate::graded::{cone, Complex, GradedMap, GradedVectorSpace};
use crate::linalg::Matrix;
use crate::module::{Module, ModuleExt, TableModule};
use crate::morita::{generated_submodule_of, quotient_module_of};
use crate::scalar::{Field, Scalar};
use crate::twisting::Twisted;
use crate::vector::Vector;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer in `[-3, 3]`.
pub fn scalar(rng: &mut Rng8, field: Field) -> Scalar {
    field.from_i64(rng.gen_range(-3..=3))
}

pub fn nonzero_scalar(rng: &mut Rng8, field: Field) -> Scalar {
    loop {
        let s = scalar(rng, field);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn invertible_matrix(rng: &mut Rng8, field: Field, n: usize) -> Matrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| scalar(rng, field)).collect()).collect();
        let m = Matrix::from_rows(field, rows, n).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

/// Degree-preserving change of basis: column vectors, one per new basis
/// element, each supported in a single degree block.
fn degree_preserving(rng: &mut Rng8, field: Field, degrees: &[i32]) -> Vec<Vector> {
    let mut out = vec![Vector::zero(); degrees.len()];
    let mut blocks: std::collections::BTreeMap<i32, Vec<usize>> = Default::default();
    for (i, &d) in degrees.iter().enumerate() {
        blocks.entry(d).or_default().push(i);
    }
    for idx in blocks.values() {
        let p = invertible_matrix(rng, field, idx.len());
        for (c, &j) in idx.iter().enumerate() {
            out[j] = (0..idx.len()).map(|r| (idx[r], p.get(r, c).clone())).collect();
        }
    }
    out
}

fn inverse_of(field: Field, basis: &[Vector]) -> Result<Matrix> {
    let n = basis.len();
    let cols: Vec<Vec<Scalar>> = basis.iter().map(|v| v.to_dense(field, n)).collect();
    Matrix::from_columns(field, n, &cols)
        .inverse()
        .ok_or_else(|| Error::DimensionMismatch("new basis is not a basis".into()))
}

fn convert(field: Field, inv: &Matrix, v: &Vector) -> Vector {
    Vector::from_dense(&inv.apply(&v.to_dense(field, inv.cols())).unwrap())
}

/// The same algebra on a new homogeneous basis.
pub fn change_basis(a: &dyn Algebra, basis: &[Vector]) -> Result<TableAlgebra> {
    let f = a.field();
    let inv = inverse_of(f, basis)?;
    let degrees: Vec<i32> = basis
        .iter()
        .map(|v| {
            a.homogeneous_degree(v)
                .ok_or_else(|| Error::Degree("new basis vector is not homogeneous".into()))
        })
        .collect::<Result<_>>()?;
    let labels = (0..basis.len()).map(|i| (format!("v{}", i + 1), degrees[i])).collect();
    let mut t = TableAlgebra::new(f, labels, convert(f, &inv, &a.unit()))?;
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            t.set_mul(i, j, convert(f, &inv, &a.mul(x, y)))?;
        }
        t.set_diff(i, convert(f, &inv, &a.diff(x)))?;
    }
    t.set_curvature(convert(f, &inv, &a.curvature()))?;
    Ok(t)
}

pub fn random_basis_change(rng: &mut Rng8, a: &dyn Algebra) -> Result<TableAlgebra> {
    let degrees: Vec<i32> = (0..a.dim()).map(|i| a.degree(i)).collect();
    let basis = degree_preserving(rng, a.field(), &degrees);
    change_basis(a, &basis)
}

/// One of a fixed list of small graded algebras.
fn catalog(rng: &mut Rng8, field: Field) -> TableAlgebra {
    let k = || ground_field(field);
    let deg = |rng: &mut Rng8| rng.gen_range(-1..=1);
    match rng.gen_range(0..12) {
        0 => k(),
        1 => builtin("kxk", field).unwrap(),
        2 => builtin("upper_tri_2", field).unwrap(),
        3 => acyclic_two_dim(field),
        4 => truncated_polynomial(field, rng.gen_range(2..=4), 0),
        5 => truncated_polynomial(field, 2, deg(rng)),
        6 => {
            let d1 = deg(rng);
            let d2 = if d1 == 0 {
                deg(rng)
            } else {
                [0, -d1][rng.gen_range(0..2)]
            };
            TableAlgebra::from_algebra(
                tensor_product(
                    truncated_polynomial(field, 2, d1).into_ref(),
                    truncated_polynomial(field, 2, d2).into_ref(),
                )
                .as_ref(),
            )
        }
        7 => product(&truncated_polynomial(field, 2, deg(rng)), &k()).unwrap(),
        8 => product(&acyclic_two_dim(field), &k()).unwrap(),
        9 => TableAlgebra::from_algebra(opposite(builtin("upper_tri_2", field).unwrap().into_ref()).as_ref()),
        10 => TableAlgebra::from_algebra(
            tensor_product(
                acyclic_two_dim(field).into_ref(),
                truncated_polynomial(field, 2, rng.gen_range(0..=1)).into_ref(),
            )
            .as_ref(),
        ),
        _ => split_semisimple(field, rng.gen_range(2..=4)),
    }
}

/// A random degree-1 element, zero if there is no degree-1 basis element.
pub fn degree_one_element(rng: &mut Rng8, a: &dyn Algebra) -> Vector {
    let f = a.field();
    (0..a.dim())
        .filter(|&i| a.degree(i) == 1)
        .map(|i| (i, scalar(rng, f)))
        .collect()
}

/// A graded algebra of dimension at most 4 with degrees in `[-1, 1]`: a
/// catalog algebra, twisted by a random degree-1 element half of the time,
/// on a random degree-preserving basis.
pub fn random_graded_algebra(rng: &mut Rng8, field: Field) -> Result<TableAlgebra> {
    let mut a = catalog(rng, field);
    let xi = degree_one_element(rng, &a);
    if !xi.is_zero() && rng.gen_bool(0.5) {
        a = TableAlgebra::from_algebra(&Twisted::new(a.into_ref(), xi)?);
    }
    random_basis_change(rng, &a)
}

/// The same module on a new homogeneous basis.
pub fn change_module_basis(m: &dyn Module, basis: &[Vector]) -> Result<TableModule> {
    let a = m.algebra();
    let f = a.field();
    let inv = inverse_of(f, basis)?;
    let degree = |v: &Vector| {
        let mut ds = v.indices().map(|x| m.degree(x));
        let d = ds.next().unwrap_or(0);
        if ds.all(|e| e == d) {
            Ok(d)
        } else {
            Err(Error::Degree("new basis vector is not homogeneous".into()))
        }
    };
    let labels = basis
        .iter()
        .enumerate()
        .map(|(i, v)| Ok((format!("w{}", i + 1), degree(v)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut t = TableModule::new(a.clone(), labels);
    for (x, v) in basis.iter().enumerate() {
        for i in 0..a.dim() {
            t.set_action(i, x, convert(f, &inv, &m.act(&Vector::basis(i, f), v)))?;
        }
        t.set_diff(x, convert(f, &inv, &m.diff(v)))?;
    }
    Ok(t)
}

pub fn random_module_basis_change(rng: &mut Rng8, m: &dyn Module) -> Result<TableModule> {
    let degrees: Vec<i32> = (0..m.dim()).map(|x| m.degree(x)).collect();
    let basis = degree_preserving(rng, m.algebra().field(), &degrees);
    change_module_basis(m, &basis)
}

/// Direct sum of modules over the same algebra.
pub fn direct_sum_modules(a: AlgebraRef, ms: &[&dyn Module]) -> Result<TableModule> {
    let mut labels = Vec::new();
    for (k, m) in ms.iter().enumerate() {
        if m.algebra().dim() != a.dim() {
            return Err(Error::MismatchedAlgebras("summands over different algebras".into()));
        }
        labels.extend((0..m.dim()).map(|x| (format!("{}.{}", k + 1, m.label(x)), m.degree(x))));
    }
    let mut t = TableModule::new(a.clone(), labels);
    let mut offset = 0;
    for m in ms {
        let shift = |v: Vector| v.iter().map(|(i, c)| (i + offset, c.clone())).collect::<Vector>();
        for x in 0..m.dim() {
            for i in 0..a.dim() {
                t.set_action(i, x + offset, shift(m.act_basis(i, x)))?;
            }
            t.set_diff(x + offset, shift(m.diff_basis(x)))?;
        }
        offset += m.dim();
    }
    Ok(t)
}

/// A module over an ordinary algebra of dimension `1..=max_dim`: a quotient
/// of a free module of rank 1 or 2 by random relations, or a random cyclic
/// submodule of the free module, on a random basis.
pub fn random_ordinary_module(rng: &mut Rng8, a: AlgebraRef, max_dim: usize) -> Result<TableModule> {
    let f = a.field();
    let n = a.dim();
    for _ in 0..200 {
        let rank = rng.gen_range(1..=2);
        let free = direct_sum_modules(
            a.clone(),
            &vec![&crate::module::LeftRegular { algebra: a.clone() } as &dyn Module; rank],
        )?;
        let vec_of = |rng: &mut Rng8| -> Vec<Scalar> {
            (0..rank * n)
                .map(|_| if rng.gen_bool(0.5) { scalar(rng, f) } else { f.zero() })
                .collect()
        };
        let candidate = if rng.gen_bool(0.5) {
            let relations: Vec<Vec<Scalar>> = (0..rng.gen_range(1..=3)).map(|_| vec_of(rng)).collect();
            quotient_module_of(&free, &relations)
        } else {
            let gens = vec![vec_of(rng)];
            generated_submodule_of(&free, &gens)
        };
        if (1..=max_dim).contains(&candidate.dim()) {
            return random_module_basis_change(rng, &candidate);
        }
    }
    Err(Error::Unsupported("no small random module found".into()))
}

/// A random direct sum of 1 to `max_pieces` of the given modules, on a
/// random basis.
pub fn random_sum_of(rng: &mut Rng8, pieces: &[TableModule], max_pieces: usize) -> Result<TableModule> {
    let a = pieces[0].algebra();
    let count = rng.gen_range(1..=max_pieces);
    let chosen: Vec<&dyn Module> = (0..count).map(|_| pieces.choose(rng).unwrap() as &dyn Module).collect();
    let sum = direct_sum_modules(a, &chosen)?;
    random_module_basis_change(rng, &sum)
}

/// A random complex in degrees `lo..=hi`: a direct sum of copies of `k` and
/// of `k → k`, on random bases.
pub fn random_complex(rng: &mut Rng8, field: Field, lo: i32, hi: i32) -> Result<Complex> {
    let mut dims: std::collections::BTreeMap<i32, usize> = (lo..=hi).map(|n| (n, 0)).collect();
    let mut arrows = Vec::new();
    for n in lo..=hi {
        for _ in 0..rng.gen_range(0..=1) {
            *dims.get_mut(&n).unwrap() += 1;
        }
        if n < hi {
            for _ in 0..rng.gen_range(0..=2) {
                let s = dims[&n];
                let t = dims[&(n + 1)];
                *dims.get_mut(&n).unwrap() += 1;
                *dims.get_mut(&(n + 1)).unwrap() += 1;
                arrows.push((n, s, t));
            }
        }
    }
    let space = GradedVectorSpace::from_components(
        field,
        dims.iter()
            .map(|(&n, &d)| (n, (0..d).map(|i| format!("c{n}_{i}")).collect())),
    )?;
    let change: std::collections::BTreeMap<i32, Matrix> = dims
        .iter()
        .map(|(&n, &d)| (n, invertible_matrix(rng, field, d)))
        .collect();
    let mut d = GradedMap::zero(space.clone(), space.clone(), 1);
    for n in lo..hi {
        let mut m = Matrix::zeros(field, dims[&(n + 1)], dims[&n]);
        for &(k, s, t) in &arrows {
            if k == n {
                m.set(t, s, field.one());
            }
        }
        // P_{n+1} d P_n^{-1}
        let conj = change[&(n + 1)].mul(&m)?.mul(&change[&n].inverse().unwrap())?;
        d.set_block(n, conj)?;
    }
    Complex::new(space, d)
}

/// The cone of the identity of a random complex.
pub fn random_acyclic_complex(rng: &mut Rng8, field: Field, lo: i32, hi: i32) -> Result<Complex> {
    let c = random_complex(rng, field, lo, hi)?;
    let id = GradedMap::identity(c.space());
    cone(&id, &c, &c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_algebra;
    use crate::module::validate_module;

    const Q: Field = Field::Rational;

    #[test]
    fn random_algebras_validate() {
        let mut with_d = 0;
        for seed in 0..50 {
            let a = random_graded_algebra(&mut rng(seed), Q).unwrap();
            assert!(a.dim() <= 4);
            assert!((0..a.dim()).all(|i| (-1..=1).contains(&a.degree(i))));
            let r = validate_algebra(&a);
            assert!(r.is_ok(), "seed {seed}: {r}");
            assert!(a.curvature().is_zero());
            if (0..a.dim()).any(|i| !a.diff_basis(i).is_zero()) {
                with_d += 1;
            }
        }
        assert!(with_d > 0);
    }

    #[test]
    fn same_seed_same_algebra() {
        let a = random_graded_algebra(&mut rng(7), Q).unwrap();
        let b = random_graded_algebra(&mut rng(7), Q).unwrap();
        assert_eq!(crate::algebra::product_table(&a), crate::algebra::product_table(&b));
    }

    #[test]
    fn random_modules_validate() {
        let a = builtin("upper_tri_2", Q).unwrap().into_ref();
        for seed in 0..20 {
            let m = random_ordinary_module(&mut rng(seed), a.clone(), 4).unwrap();
            assert!((1..=4).contains(&m.dim()));
            assert!(validate_module(&m).is_ok(), "seed {seed}");
        }
    }

    #[test]
    fn random_acyclic_complexes() {
        for seed in 0..20 {
            let c = random_acyclic_complex(&mut rng(seed), Q, -2, 2).unwrap();
            assert!(c.is_acyclic(), "seed {seed}");
        }
    }
}
