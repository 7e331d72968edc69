//! Ext groups from minimal projective resolutions, independent of any bar
//! construction.

use crate::algebra::{Algebra, AlgebraExt};
use crate::error::Result;
use crate::linalg::{eliminate, Matrix};
use crate::module::{Module, TableModule};
use crate::scalar::{Field, Scalar};
use crate::vector::Vector;

use super::ordinary::{action_matrices, coords, intertwiners, module_from_matrices, restrict_action, span_basis};
use super::simples::{decompose, Decomposition};

/// A module given by action matrices.
#[derive(Clone)]
pub struct Rep {
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl Rep {
    pub fn of(m: &dyn Module) -> Rep {
        Rep {
            dim: m.dim(),
            action: action_matrices(m),
        }
    }

    fn act(&self, a: &Vector, field: Field) -> Matrix {
        let mut out = Matrix::zeros(field, self.dim, self.dim);
        for (i, c) in a.iter() {
            out = out.add(&self.action[i].scale(c)).unwrap();
        }
        out
    }
}

/// `P_0 ← P_1 ← ⋯` with `maps[n]: P_{n+1} → P_n` and `augmentation: P_0 → M`.
pub struct Resolution {
    pub terms: Vec<Rep>,
    pub maps: Vec<Matrix>,
    pub augmentation: Matrix,
}

/// The projective module `A e` for an idempotent `e`, with its basis in `A`.
pub fn projective_module(a: &dyn Algebra, e: &Vector) -> (Vec<Vec<Scalar>>, Rep) {
    let f = a.field();
    let n = a.dim();
    let basis = span_basis(
        f,
        n,
        &(0..n)
            .map(|k| a.mul(&Vector::basis(k, f), e).to_dense(f, n))
            .collect::<Vec<_>>(),
    );
    let left: Vec<Matrix> = (0..n)
        .map(|i| crate::algebra::left_multiplication(a, &Vector::basis(i, f)))
        .collect();
    let action = restrict_action(f, &left, &basis);
    (
        basis.clone(),
        Rep {
            dim: basis.len(),
            action,
        },
    )
}

/// `A e` as a module.
pub fn projective_table_module(a: crate::algebra::AlgebraRef, e: &Vector, name: &str) -> TableModule {
    let (basis, rep) = projective_module(a.as_ref(), e);
    let labels = (0..basis.len()).map(|i| format!("{name}{}", i + 1)).collect();
    module_from_matrices(a, labels, &rep.action)
}

/// Projective cover `P → X`: the term and the surjection.
fn projective_cover(a: &dyn Algebra, d: &Decomposition, idem: &[Vector], x: &Rep) -> (Rep, Matrix) {
    let f = a.field();
    let rad: Vec<Vector> = d.radical.iter().map(|v| Vector::from_dense(v)).collect();
    let mut span: Vec<Vec<Scalar>> = Vec::new();
    for r in &rad {
        let m = x.act(r, f);
        for c in 0..x.dim {
            span.push(m.column(c));
        }
    }
    let mut span = span_basis(f, x.dim, &span);
    let mut gens: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for (i, e) in idem.iter().enumerate() {
        for u in eliminate(&x.act(e, f)).image_basis {
            if coords(f, &span, &u).is_none() {
                span.push(u.clone());
                gens.push((i, u));
            }
        }
    }
    let pieces: Vec<(Vec<Vec<Scalar>>, Rep)> = idem.iter().map(|e| projective_module(a, e)).collect();
    let dim: usize = gens.iter().map(|(i, _)| pieces[*i].1.dim).sum();
    let mut action = vec![Matrix::zeros(f, dim, dim); a.dim()];
    let mut cover = Matrix::zeros(f, x.dim, dim);
    let mut offset = 0;
    for (i, g) in &gens {
        let (basis, rep) = &pieces[*i];
        for (k, act) in rep.action.iter().enumerate() {
            for r in 0..rep.dim {
                for c in 0..rep.dim {
                    action[k].set(offset + r, offset + c, act.get(r, c).clone());
                }
            }
        }
        for (c, u) in basis.iter().enumerate() {
            let image = x.act(&Vector::from_dense(u), f).apply(g).unwrap();
            for (r, v) in image.into_iter().enumerate() {
                cover.set(r, offset + c, v);
            }
        }
        offset += rep.dim;
    }
    (Rep { dim, action }, cover)
}

/// Minimal projective resolution of `m` with terms `P_0, …, P_len`.
pub fn projective_resolution(a: &dyn Algebra, m: &dyn Module, len: usize) -> Result<Resolution> {
    let f = a.field();
    let d = decompose(a)?;
    let idem = d.primitive_idempotents(a)?;
    let mut x = Rep::of(m);
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    let mut augmentation = None;
    let mut inclusion: Option<Matrix> = None;
    for _ in 0..=len {
        let (p, cover) = projective_cover(a, &d, &idem, &x);
        match inclusion.take() {
            None => augmentation = Some(cover.clone()),
            Some(inc) => maps.push(inc.mul(&cover)?),
        }
        let kernel = eliminate(&cover).kernel_basis;
        x = Rep {
            dim: kernel.len(),
            action: if kernel.is_empty() {
                vec![Matrix::zeros(f, 0, 0); a.dim()]
            } else {
                restrict_action(f, &p.action, &kernel)
            },
        };
        inclusion = Some(Matrix::from_columns(f, p.dim, &kernel));
        terms.push(p);
    }
    Ok(Resolution {
        terms,
        maps,
        augmentation: augmentation.unwrap(),
    })
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect()
}

/// `dim Ext^n_A(M, N)` for `0 ≤ n ≤ n_max`.
pub fn ext_dims(a: &dyn Algebra, m: &dyn Module, n: &dyn Module, n_max: usize) -> Result<Vec<usize>> {
    let f = a.field();
    let res = projective_resolution(a, m, n_max + 1)?;
    let target = Rep::of(n);
    let homs: Vec<Vec<Matrix>> = res
        .terms
        .iter()
        .map(|p| {
            if p.dim == 0 || target.dim == 0 {
                Vec::new()
            } else {
                intertwiners(f, &p.action, &target.action, p.dim, target.dim)
            }
        })
        .collect();
    // rank of φ ↦ φ∘d from Hom(P_k, N) to Hom(P_{k+1}, N)
    let ranks: Vec<usize> = (0..=n_max)
        .map(|k| {
            if homs[k].is_empty() || homs[k + 1].is_empty() {
                return 0;
            }
            let basis: Vec<Vec<Scalar>> = homs[k + 1].iter().map(flatten).collect();
            let cols: Vec<Vec<Scalar>> = homs[k]
                .iter()
                .map(|phi| {
                    coords(f, &basis, &flatten(&phi.mul(&res.maps[k]).unwrap())).expect("composite is a module map")
                })
                .collect();
            Matrix::from_columns(f, basis.len(), &cols).rank()
        })
        .collect();
    Ok((0..=n_max)
        .map(|k| homs[k].len() - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect())
}

/// Outcome of [`global_dimension_probe`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlobalDimension {
    /// Largest `n` with some `Ext^n(S, T) ≠ 0`.
    Finite(usize),
    /// `Ext^{n_max}` between simples is nonzero.
    Exceeded(usize),
}

/// Largest `n ≤ n_max` with `Ext^n(S, T) ≠ 0` over simple `S`, `T`.
pub fn global_dimension_probe(a: crate::algebra::AlgebraRef, n_max: usize) -> Result<GlobalDimension> {
    let d = decompose(a.as_ref())?;
    let simples = d.simple_modules(a.clone());
    let mut top = 0;
    for s in &simples {
        for t in &simples {
            let dims = ext_dims(a.as_ref(), s, t, n_max)?;
            if dims[n_max] != 0 {
                return Ok(GlobalDimension::Exceeded(n_max));
            }
            if let Some(k) = dims.iter().rposition(|&x| x != 0) {
                top = top.max(k);
            }
        }
    }
    Ok(GlobalDimension::Finite(top))
}
