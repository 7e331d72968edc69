//! Wedderburn blocks of `A / rad A` and the simple modules of `A`.

use crate::algebra::{Algebra, AlgebraExt, AlgebraRef};
use crate::error::{Error, Result};
use crate::linalg::{eliminate, solve, Matrix};
use crate::module::TableModule;
use crate::scalar::{Field, Scalar};
use crate::vector::Vector;

use super::conic::nilpotent_in_block;
use super::ordinary::{
    center, coords, eval_poly, generated_submodule, lift_idempotent, minimal_polynomial, module_from_matrices,
    require_ordinary, semisimple_quotient, span_basis, Quotient,
};
use super::poly::Poly;

/// One simple factor `M_n(k)` of `A / rad A`.
pub struct Block {
    pub central_idempotent: Vector,
    /// `n`, the dimension of the simple module.
    pub size: usize,
    /// Basis of a minimal left ideal of `A / rad A` inside the block.
    pub simple: Vec<Vector>,
    /// Idempotent of `A / rad A` generating the minimal left ideal.
    pub primitive_idempotent: Vector,
}

/// `A / rad A` split into blocks.
pub struct Decomposition {
    pub radical: Vec<Vec<Scalar>>,
    pub quotient: Quotient,
    pub blocks: Vec<Block>,
}

fn non_split(msg: impl Into<String>) -> Error {
    Error::NonSplit(msg.into())
}

/// Splits `1` into primitive central idempotents of a semisimple algebra
/// using minimal polynomials of central elements.
fn central_idempotents(q: &dyn Algebra) -> Result<Vec<Vector>> {
    let z = center(q);
    let mut idem = vec![q.unit()];
    for c in &z {
        let mut next = Vec::new();
        for e in &idem {
            let w = q.mul(c, e);
            let mu = minimal_polynomial(q, &w, e);
            let Some(roots) = mu.split_roots()? else {
                return Err(non_split(format!(
                    "a central element has a minimal polynomial of degree {} that does not split",
                    mu.degree().unwrap_or(0)
                )));
            };
            for (i, l) in roots.iter().enumerate() {
                let mut p = Poly::constant(q.field(), q.field().one());
                for (j, m) in roots.iter().enumerate() {
                    if i != j {
                        p = p.mul(&Poly::linear(m)).scale(&(l - m).inv().unwrap());
                    }
                }
                next.push(eval_poly(q, &p, &w, e));
            }
        }
        idem = next;
    }
    if idem.len() != z.len() {
        return Err(non_split("the center is not a product of copies of the ground field"));
    }
    Ok(idem)
}

fn isqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

/// Elements tried when looking for eigenvectors: the basis, then sums.
fn candidates(block: &[Vec<Scalar>], field: Field) -> Vec<Vec<Scalar>> {
    let mut out = block.to_vec();
    let two = field.from_i64(2);
    for i in 0..block.len() {
        for j in i + 1..block.len() {
            out.push(block[i].iter().zip(&block[j]).map(|(x, y)| x + &(y * &two)).collect());
        }
    }
    out
}

/// A minimal left ideal of dimension `n` inside the block `Qe`.
fn minimal_left_ideal(q: &dyn Algebra, e: &Vector, n: usize) -> Result<Vec<Vec<Scalar>>> {
    let f = q.field();
    let d = q.dim();
    let left: Vec<Matrix> = (0..d)
        .map(|i| crate::algebra::left_multiplication(q, &Vector::basis(i, f)))
        .collect();
    let block = span_basis(
        f,
        d,
        &(0..d)
            .map(|i| q.mul(&Vector::basis(i, f), e).to_dense(f, d))
            .collect::<Vec<_>>(),
    );
    let mut ideal = block.clone();
    'shrink: while ideal.len() > n {
        for x in candidates(&block, f) {
            let xv = Vector::from_dense(&x);
            let lm = crate::algebra::left_multiplication(q, &xv);
            let images: Vec<Vec<Scalar>> = ideal.iter().map(|v| lm.apply(v).unwrap()).collect();
            let basis = Matrix::from_columns(f, d, &ideal);
            let cols: Vec<Vec<Scalar>> = images.iter().map(|v| solve(&basis, v).unwrap().unwrap()).collect();
            let rho = Matrix::from_columns(f, ideal.len(), &cols);
            let mu = matrix_minimal_polynomial(&rho);
            for l in mu.roots()? {
                let shifted = rho.add(&Matrix::identity(f, ideal.len()).scale(&-&l)).unwrap();
                for k in eliminate(&shifted).kernel_basis {
                    let v = basis.apply(&k).unwrap();
                    let sub = generated_submodule(f, &left, d, &[v]);
                    if !sub.is_empty() && sub.len() < ideal.len() {
                        ideal = sub;
                        continue 'shrink;
                    }
                }
            }
        }
        if n == 2 {
            // over Q a split block rarely has a basis element with a rational eigenvalue
            let Some(x) = nilpotent_in_block(q, &block, e)? else {
                return Err(non_split("a 4-dimensional block is a division algebra"));
            };
            ideal = generated_submodule(f, &left, d, &[x.to_dense(f, d)]);
            continue;
        }
        return Err(non_split(format!(
            "no left ideal of dimension {n} found in a block of dimension {}",
            block.len()
        )));
    }
    if ideal.len() != n {
        return Err(non_split("block is not a full matrix algebra"));
    }
    Ok(ideal)
}

/// Minimal polynomial of a square matrix.
pub fn matrix_minimal_polynomial(m: &Matrix) -> Poly {
    let f = m.field();
    let n = m.rows();
    let flat = |x: &Matrix| (0..n).flat_map(|r| x.row(r).to_vec()).collect::<Vec<_>>();
    let mut powers = vec![flat(&Matrix::identity(f, n))];
    let mut cur = Matrix::identity(f, n);
    loop {
        cur = cur.mul(m).unwrap();
        let v = flat(&cur);
        if let Some(c) = coords(f, &powers, &v) {
            let mut coeffs: Vec<Scalar> = c.iter().map(|x| -x).collect();
            coeffs.push(f.one());
            return Poly::new(f, coeffs);
        }
        powers.push(v);
    }
}

/// An idempotent `e` of `L` with `L = Q e`, for a left ideal `L`.
fn generating_idempotent(q: &dyn Algebra, ideal: &[Vec<Scalar>]) -> Result<Vector> {
    let f = q.field();
    let d = q.dim();
    let k = ideal.len();
    let vecs: Vec<Vector> = ideal.iter().map(|v| Vector::from_dense(v)).collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for li in &vecs {
        let prods: Vec<Vec<Scalar>> = vecs.iter().map(|lj| q.mul(li, lj).to_dense(f, d)).collect();
        let target = li.to_dense(f, d);
        for r in 0..d {
            rows.push((0..k).map(|j| prods[j][r].clone()).collect());
            rhs.push(target[r].clone());
        }
    }
    let sys = Matrix::from_rows(f, rows, k)?;
    let c = solve(&sys, &rhs)?.ok_or_else(|| non_split("minimal left ideal has no idempotent generator"))?;
    let mut e = Vector::zero();
    for (cj, lj) in c.iter().zip(&vecs) {
        e.add_scaled(lj, cj);
    }
    Ok(e)
}

/// Radical, semisimple quotient and its split Wedderburn blocks.
pub fn decompose(a: &dyn Algebra) -> Result<Decomposition> {
    require_ordinary(a)?;
    let (radical, quotient) = semisimple_quotient(a)?;
    let q = &quotient.algebra;
    let mut blocks = Vec::new();
    for e in central_idempotents(q)? {
        let f = q.field();
        let bdim = span_basis(
            f,
            q.dim(),
            &(0..q.dim())
                .map(|i| q.mul(&Vector::basis(i, f), &e).to_dense(f, q.dim()))
                .collect::<Vec<_>>(),
        )
        .len();
        let n = isqrt(bdim).ok_or_else(|| non_split(format!("block of non-square dimension {bdim}")))?;
        let ideal = minimal_left_ideal(q, &e, n)?;
        let primitive_idempotent = generating_idempotent(q, &ideal)?;
        blocks.push(Block {
            central_idempotent: e,
            size: n,
            simple: ideal.iter().map(|v| Vector::from_dense(v)).collect(),
            primitive_idempotent,
        });
    }
    let total: usize = blocks.iter().map(|b| b.size * b.size).sum();
    if total != q.dim() {
        return Err(non_split("block dimensions do not add up"));
    }
    Ok(Decomposition {
        radical,
        quotient,
        blocks,
    })
}

/// Number of isomorphism classes of simple modules.
pub fn count_simples(a: &dyn Algebra) -> Result<usize> {
    Ok(decompose(a)?.blocks.len())
}

impl Decomposition {
    /// The simple modules, one per block, as `A`-modules.
    pub fn simple_modules(&self, a: AlgebraRef) -> Vec<TableModule> {
        let f = a.field();
        let q = &self.quotient.algebra;
        let images: Vec<Vector> = (0..a.dim())
            .map(|i| self.quotient.project(&Vector::basis(i, f)))
            .collect();
        self.blocks
            .iter()
            .enumerate()
            .map(|(b, block)| {
                let basis: Vec<Vec<Scalar>> = block.simple.iter().map(|v| v.to_dense(f, q.dim())).collect();
                let n = basis.len();
                let basis_m = Matrix::from_columns(f, q.dim(), &basis);
                let mats: Vec<Matrix> = images
                    .iter()
                    .map(|x| {
                        let cols: Vec<Vec<Scalar>> = block
                            .simple
                            .iter()
                            .map(|v| solve(&basis_m, &q.mul(x, v).to_dense(f, q.dim())).unwrap().unwrap())
                            .collect();
                        Matrix::from_columns(f, n, &cols)
                    })
                    .collect();
                let labels = (0..n).map(|i| format!("s{}_{}", b + 1, i + 1)).collect();
                module_from_matrices(a.clone(), labels, &mats)
            })
            .collect()
    }

    /// A primitive idempotent of `A` for each block.
    pub fn primitive_idempotents(&self, a: &dyn Algebra) -> Result<Vec<Vector>> {
        self.blocks
            .iter()
            .map(|b| lift_idempotent(a, &self.quotient, &b.primitive_idempotent))
            .collect()
    }
}

/// Simple modules counted by enumerating all left ideals over a small prime
/// field and comparing maximal ones. `None` when the field is not a prime
/// field with at most 7 elements or `dim A > 4`.
pub fn count_simples_brute_force(a: &dyn Algebra) -> Option<usize> {
    let f = a.field();
    let p = f.characteristic();
    let n = a.dim();
    if p == 0 || p > 7 || n > 4 {
        return None;
    }
    let left: Vec<Matrix> = (0..n)
        .map(|i| crate::algebra::left_multiplication(a, &Vector::basis(i, f)))
        .collect();
    let ideals: Vec<Vec<Vec<Scalar>>> = subspaces(f, n)
        .into_iter()
        .filter(|s| s.len() < n && generated_submodule(f, &left, n, s).len() == s.len())
        .collect();
    let contains = |big: &Vec<Vec<Scalar>>, small: &Vec<Vec<Scalar>>| small.iter().all(|v| coords(f, big, v).is_some());
    let maximal: Vec<&Vec<Vec<Scalar>>> = ideals
        .iter()
        .filter(|i| !ideals.iter().any(|j| j.len() > i.len() && contains(j, i)))
        .collect();
    let simples: Vec<(usize, Vec<Matrix>)> = maximal
        .iter()
        .map(|i| {
            let (c, mats) = super::ordinary::quotient_action(f, &left, n, i);
            (c.len(), mats)
        })
        .collect();
    let mut classes: Vec<usize> = Vec::new();
    for (k, (dim, mats)) in simples.iter().enumerate() {
        let new = classes.iter().all(|&c| {
            let (dc, mc) = &simples[c];
            super::ordinary::intertwiners(f, mats, mc, *dim, *dc).is_empty()
        });
        if new {
            classes.push(k);
        }
    }
    Some(classes.len())
}

/// Every subspace of `F_p^n`, each as a basis in reduced echelon form.
fn subspaces(f: Field, n: usize) -> Vec<Vec<Vec<Scalar>>> {
    let p = f.characteristic() as i64;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let pivots: Vec<usize> = (0..n).filter(|&c| mask & (1 << c) != 0).collect();
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| (pc + 1..n).filter(|c| mask & (1 << c) == 0).map(move |c| (r, c)))
            .collect();
        let count = (p as u64).pow(free.len() as u32);
        for mut code in 0..count {
            let mut rows: Vec<Vec<Scalar>> = pivots
                .iter()
                .map(|&pc| {
                    let mut v = vec![f.zero(); n];
                    v[pc] = f.one();
                    v
                })
                .collect();
            for &(r, c) in &free {
                rows[r][c] = f.from_i64((code % p as u64) as i64);
                code /= p as u64;
            }
            out.push(rows);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, product, split_semisimple, truncated_polynomial, TableAlgebra};
    use crate::module::validate_module;
    use crate::morita::ordinary::hom_space;

    const Q: Field = Field::Rational;

    fn named(name: &str, f: Field) -> TableAlgebra {
        match name {
            "kxkxk" => split_semisimple(f, 3),
            "x5" => truncated_polynomial(f, 5, 0),
            _ => builtin(name, f).unwrap(),
        }
    }

    #[test]
    fn simple_counts() {
        for (name, count) in [
            ("k", 1),
            ("upper_tri_2", 2),
            ("kxkxk", 3),
            ("x5", 1),
            ("mat2", 1),
            ("kxk", 2),
        ] {
            assert_eq!(count_simples(&named(name, Q)).unwrap(), count, "{name}");
        }
    }

    #[test]
    fn simple_counts_agree_with_enumeration() {
        let f = Field::prime(5).unwrap();
        for name in ["k", "kxk", "dual_numbers", "upper_tri_2", "mat2", "kxkxk"] {
            let a = named(name, f);
            assert_eq!(
                count_simples_brute_force(&a),
                Some(count_simples(&a).unwrap()),
                "{name}"
            );
        }
    }

    #[test]
    fn counts_add_over_products() {
        let a = builtin("upper_tri_2", Q).unwrap();
        let b = builtin("mat2", Q).unwrap();
        let ab = product(&a, &b).unwrap();
        assert_eq!(count_simples(&ab).unwrap(), 3);
    }

    #[test]
    fn simple_modules_are_simple() {
        for name in ["upper_tri_2", "mat2", "kxkxk", "x5"] {
            let a = named(name, Q).into_ref();
            let d = decompose(a.as_ref()).unwrap();
            let simples = d.simple_modules(a.clone());
            for (i, s) in simples.iter().enumerate() {
                assert!(validate_module(s).is_ok(), "{name}");
                assert_eq!(hom_space(s, s).len(), 1, "{name}");
                for t in &simples[i + 1..] {
                    assert!(hom_space(s, t).is_empty(), "{name}");
                }
            }
            for e in d.primitive_idempotents(a.as_ref()).unwrap() {
                assert_eq!(a.mul(&e, &e), e);
            }
        }
    }

    #[test]
    fn quaternions_do_not_split() {
        // i² = j² = -1, ij = -ji = k
        let mut h = TableAlgebra::new(
            Q,
            ["1", "i", "j", "k"].iter().map(|l| (l.to_string(), 0)).collect(),
            Vector::basis(0, Q),
        )
        .unwrap();
        let table: [[(i64, usize); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)],
        ];
        for (i, row) in table.iter().enumerate() {
            for (j, &(c, k)) in row.iter().enumerate() {
                h.set_mul(i, j, Vector::term(k, Q.from_i64(c))).unwrap();
            }
        }
        assert!(crate::algebra::validate_algebra(&h).is_ok());
        assert!(matches!(count_simples(&h), Err(Error::NonSplit(_))));
        // k[x]/(x² + 1) over Q is a field of dimension 2
        let mut c = TableAlgebra::new(Q, vec![("1".into(), 0), ("x".into(), 0)], Vector::basis(0, Q)).unwrap();
        c.set_mul(0, 0, Vector::basis(0, Q)).unwrap();
        c.set_mul(0, 1, Vector::basis(1, Q)).unwrap();
        c.set_mul(1, 0, Vector::basis(1, Q)).unwrap();
        c.set_mul(1, 1, Vector::term(0, Q.from_i64(-1))).unwrap();
        assert!(matches!(count_simples(&c), Err(Error::NonSplit(_))));
    }
}
