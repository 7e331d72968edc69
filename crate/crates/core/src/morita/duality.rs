//! Classical Morita duality `N ↦ Hom_A(N, M)` for an injective cogenerator `M`.

use std::sync::Arc;

use crate::algebra::{opposite, AlgebraRef, TableAlgebra};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::module::{check_module_isomorphism, Module, TableModule};
use crate::morphism::CurvedMorphism;
use crate::scalar::{Field, Scalar};
use crate::validate::Report;
use crate::vector::Vector;

use super::ordinary::{action_matrices, coords, hom_space, intertwiners, module_from_matrices, require_ordinary};

/// `A*` with `(a·φ)(b) = φ(ba)`.
pub fn injective_cogenerator(a: AlgebraRef) -> Result<TableModule> {
    require_ordinary(a.as_ref())?;
    let n = a.dim();
    let mut m = TableModule::new(a.clone(), (0..n).map(|j| (format!("{}*", a.label(j)), 0)).collect());
    for i in 0..n {
        for j in 0..n {
            let v: Vector = (0..n)
                .filter_map(|k| a.mul_basis(k, i).get(j).map(|c| (k, c.clone())))
                .collect();
            m.set_action(i, j, v)?;
        }
    }
    m.validated()
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect()
}

/// Coordinates of a matrix in a basis of matrices.
fn matrix_coords(field: Field, basis: &[Matrix], m: &Matrix) -> Vector {
    let flat: Vec<Vec<Scalar>> = basis.iter().map(flatten).collect();
    Vector::from_dense(&coords(field, &flat, &flatten(m)).expect("in the span"))
}

/// `Γ = End_A(M)` with `M` as a left `Γ`-module.
pub struct Gamma {
    pub algebra: AlgebraRef,
    /// Basis of `End_A(M)`; basis element `i` of `Γ` is `endomorphisms[i]`.
    pub endomorphisms: Vec<Matrix>,
    /// `M` as an `A`-module.
    pub over_a: Arc<TableModule>,
    /// `M` as a `Γ`-module.
    pub over_gamma: Arc<TableModule>,
}

/// `Γ = End_A(M)`, multiplication by composition.
pub fn gamma(m: Arc<TableModule>) -> Result<Gamma> {
    let a = m.algebra();
    require_ordinary(a.as_ref())?;
    let f = a.field();
    let ends = hom_space(m.as_ref(), m.as_ref());
    let unit = matrix_coords(f, &ends, &Matrix::identity(f, m.dim()));
    let mut g = TableAlgebra::new(f, (0..ends.len()).map(|i| (format!("g{}", i + 1), 0)).collect(), unit)?;
    for (i, x) in ends.iter().enumerate() {
        for (j, y) in ends.iter().enumerate() {
            g.set_mul(i, j, matrix_coords(f, &ends, &x.mul(y)?))?;
        }
    }
    let g = g.validated()?.into_ref();
    let labels = (0..m.dim()).map(|x| m.label(x)).collect();
    let over_gamma = module_from_matrices(g.clone(), labels, &ends).validated()?;
    Ok(Gamma {
        algebra: g,
        endomorphisms: ends,
        over_a: m,
        over_gamma: Arc::new(over_gamma),
    })
}

/// `Hom_R(X, M)` as a left module over the algebra acting on `M` by `act`
/// (post-composition), with its basis of maps.
fn hom_into(
    x: &dyn Module,
    m: &dyn Module,
    acting: AlgebraRef,
    act: &[Matrix],
    name: &str,
) -> Result<(TableModule, Vec<Matrix>)> {
    let f = acting.field();
    let basis = if x.dim() == 0 {
        Vec::new()
    } else {
        intertwiners(f, &action_matrices(x), &action_matrices(m), x.dim(), m.dim())
    };
    let mats: Vec<Matrix> = act
        .iter()
        .map(|g| {
            let cols: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|phi| matrix_coords(f, &basis, &g.mul(phi).unwrap()).to_dense(f, basis.len()))
                .collect();
            Matrix::from_columns(f, basis.len(), &cols)
        })
        .collect();
    let labels = (0..basis.len()).map(|i| format!("{name}{}", i + 1)).collect();
    Ok((module_from_matrices(acting, labels, &mats).validated()?, basis))
}

/// `F(N) = Hom_A(N, M)` as a left `Γ`-module, with its basis of maps.
pub fn classical_f(g: &Gamma, n: &dyn Module) -> Result<(TableModule, Vec<Matrix>)> {
    hom_into(n, g.over_a.as_ref(), g.algebra.clone(), &g.endomorphisms, "phi")
}

/// `G(L) = Hom_Γ(L, M)` as a left `A`-module, with its basis of maps.
pub fn classical_g(g: &Gamma, l: &dyn Module) -> Result<(TableModule, Vec<Matrix>)> {
    let a = g.over_a.algebra();
    let act = action_matrices(g.over_a.as_ref());
    hom_into(l, g.over_gamma.as_ref(), a, &act, "psi")
}

/// Evaluation `x ↦ (φ ↦ φ(x))` from `X` into `Hom(Hom(X, M), M)`, given the
/// basis `maps` of `Hom(X, M)` and the basis `outer` of the double dual.
fn evaluation(field: Field, x_dim: usize, maps: &[Matrix], outer: &[Matrix]) -> Vec<Vector> {
    (0..x_dim)
        .map(|x| {
            let cols: Vec<Vec<Scalar>> = maps.iter().map(|phi| phi.column(x)).collect();
            let rows = maps.first().map_or(0, |m| m.rows());
            let ev = Matrix::from_columns(field, rows, &cols);
            if outer.is_empty() {
                Vector::zero()
            } else {
                matrix_coords(field, outer, &ev)
            }
        })
        .collect()
}

/// The unit `N → GF(N)` and its certification as a module isomorphism.
pub fn unit_map(g: &Gamma, n: &dyn Module) -> Result<(TableModule, Vec<Vector>, Report)> {
    let f = g.algebra.field();
    let (fn_, maps) = classical_f(g, n)?;
    let (gfn, outer) = classical_g(g, &fn_)?;
    let images = evaluation(f, n.dim(), &maps, &outer);
    let mut report = check_module_isomorphism(n, &gfn, &images);
    report.check("dimension");
    if gfn.dim() != n.dim() {
        report.fail("dimension", format!("{} vs {}", gfn.dim(), n.dim()));
    }
    Ok((gfn, images, report))
}

/// The counit `L → FG(L)` and its certification.
pub fn counit_map(g: &Gamma, l: &dyn Module) -> Result<(TableModule, Vec<Vector>, Report)> {
    let f = g.algebra.field();
    let (gl, maps) = classical_g(g, l)?;
    let (fgl, outer) = classical_f(g, &gl)?;
    let images = evaluation(f, l.dim(), &maps, &outer);
    let mut report = check_module_isomorphism(l, &fgl, &images);
    report.check("dimension");
    if fgl.dim() != l.dim() {
        report.fail("dimension", format!("{} vs {}", fgl.dim(), l.dim()));
    }
    Ok((fgl, images, report))
}

/// For `M = A*`: the algebra map `A^op → Γ`, `c ↦ (φ ↦ φ(c·-))`.
pub fn opposite_to_gamma(g: &Gamma) -> Result<CurvedMorphism> {
    let a = g.over_a.algebra();
    let f = a.field();
    let n = a.dim();
    let images = (0..n)
        .map(|c| {
            let mut r = Matrix::zeros(f, n, n);
            for k in 0..n {
                for (j, x) in a.mul_basis(c, k).iter() {
                    r.set(k, j, x.clone());
                }
            }
            matrix_coords(f, &g.endomorphisms, &r)
        })
        .collect();
    CurvedMorphism::strict(opposite(a), g.algebra.clone(), images)
}

/// Whether the action matrices span all of `End_k(X)` (so `X` is simple and
/// stays simple over any field extension).
pub fn is_absolutely_simple(x: &dyn Module) -> bool {
    let n = x.dim();
    if n == 0 {
        return false;
    }
    let f = x.algebra().field();
    let cols: Vec<Vec<Scalar>> = action_matrices(x).iter().map(flatten).collect();
    Matrix::from_columns(f, n * n, &cols).rank() == n * n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::module::validate_module;
    use crate::morita::{decompose, projective_table_module};
    use crate::morphism::is_isomorphism;

    const Q: Field = Field::Rational;

    fn indecomposables(a: AlgebraRef) -> Vec<TableModule> {
        let d = decompose(a.as_ref()).unwrap();
        let mut out = d.simple_modules(a.clone());
        for (i, e) in d.primitive_idempotents(a.as_ref()).unwrap().iter().enumerate() {
            out.push(projective_table_module(a.clone(), e, &format!("p{}_", i + 1)));
        }
        out
    }

    #[test]
    fn cogenerator_receives_simples() {
        for name in ["k", "kxk", "upper_tri_2", "dual_numbers", "mat2"] {
            let a = builtin(name, Q).unwrap().into_ref();
            let m = injective_cogenerator(a.clone()).unwrap();
            for s in decompose(a.as_ref()).unwrap().simple_modules(a.clone()) {
                assert!(!hom_space(&s, &m).is_empty(), "{name}");
            }
        }
    }

    #[test]
    fn gamma_is_opposite() {
        for name in ["k", "kxk", "upper_tri_2", "dual_numbers", "mat2"] {
            let a = builtin(name, Q).unwrap().into_ref();
            let g = gamma(Arc::new(injective_cogenerator(a.clone()).unwrap())).unwrap();
            let iso = opposite_to_gamma(&g).unwrap();
            assert!(is_isomorphism(&iso), "{name}");
        }
    }

    #[test]
    fn unit_is_iso_on_indecomposables() {
        for name in ["upper_tri_2", "kxk", "k", "dual_numbers"] {
            let a = builtin(name, Q).unwrap().into_ref();
            let g = gamma(Arc::new(injective_cogenerator(a.clone()).unwrap())).unwrap();
            for n in indecomposables(a.clone()) {
                let (gfn, _, report) = unit_map(&g, &n).unwrap();
                assert!(validate_module(&gfn).is_ok());
                assert!(report.is_ok(), "{name}: {report}");
                let (fn_, _) = classical_f(&g, &n).unwrap();
                let (_, _, back) = counit_map(&g, &fn_).unwrap();
                assert!(back.is_ok(), "{name}: {back}");
            }
        }
    }

    #[test]
    fn duality_preserves_simplicity() {
        let a = builtin("upper_tri_2", Q).unwrap().into_ref();
        let g = gamma(Arc::new(injective_cogenerator(a.clone()).unwrap())).unwrap();
        let d = decompose(a.as_ref()).unwrap();
        for s in d.simple_modules(a.clone()) {
            assert!(is_absolutely_simple(&s));
            let (fs, _) = classical_f(&g, &s).unwrap();
            assert!(is_absolutely_simple(&fs));
        }
        let p = projective_table_module(a.clone(), &d.primitive_idempotents(a.as_ref()).unwrap()[0], "p");
        if p.dim() > 1 {
            assert!(!is_absolutely_simple(&p));
        }
    }

    #[test]
    fn ground_field_duality_is_linear_duality() {
        let a = builtin("k", Q).unwrap().into_ref();
        let g = gamma(Arc::new(injective_cogenerator(a.clone()).unwrap())).unwrap();
        assert_eq!(g.algebra.dim(), 1);
        let n = crate::morita::module_from_matrices(a.clone(), vec!["x".into(), "y".into()], &[Matrix::identity(Q, 2)]);
        let (fn_, _) = classical_f(&g, &n).unwrap();
        assert_eq!(fn_.dim(), 2);
    }
}
