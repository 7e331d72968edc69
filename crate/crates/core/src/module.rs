//! Left curved dg modules over an [`Algebra`].

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{format_vector, AlgebraExt, AlgebraRef, TensorProduct};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};
use crate::validate::Report;
use crate::vector::Vector;

pub type ModuleRef = Arc<dyn Module>;

/// A finite-dimensional left module with a degree-one operator `d` such that
/// `d(ax) = da·x + (-1)^{|a|} a·dx` and `d²x = h·x`.
pub trait Module: Send + Sync {
    fn algebra(&self) -> AlgebraRef;
    fn dim(&self) -> usize;
    fn degree(&self, x: usize) -> i32;
    fn label(&self, x: usize) -> String;
    fn act_basis(&self, a: usize, x: usize) -> Vector;
    fn diff_basis(&self, x: usize) -> Vector;
}

pub trait ModuleExt: Module {
    fn field(&self) -> Field {
        self.algebra().field()
    }

    fn act(&self, a: &Vector, x: &Vector) -> Vector {
        a.bilinear(x, |i, j| self.act_basis(i, j))
    }

    fn diff(&self, x: &Vector) -> Vector {
        x.map(|i| self.diff_basis(i))
    }

    fn format(&self, x: &Vector) -> String {
        format_vector(x, |i| self.label(i))
    }

    /// Dense matrix of the differential.
    fn diff_matrix(&self) -> Matrix {
        let n = self.dim();
        let f = self.field();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|x| self.diff_basis(x).to_dense(f, n)).collect();
        Matrix::from_columns(f, n, &cols)
    }
}

impl<T: Module + ?Sized> ModuleExt for T {}

/// Checks homogeneity, unitality, associativity, the Leibniz rule and
/// `d² = h·` on basis elements.
pub fn validate_module(m: &dyn Module) -> Report {
    let mut r = Report::new();
    let a = m.algebra();
    let field = a.field();
    let (na, nm) = (a.dim(), m.dim());
    let lab = |x: usize| m.label(x);
    let alab = |i: usize| a.label(i);
    let table: Vec<Vec<Vector>> = (0..na)
        .into_par_iter()
        .map(|i| (0..nm).map(|x| m.act_basis(i, x)).collect())
        .collect();
    let act = |v: &Vector, x: &Vector| v.bilinear(x, |i, j| table[i][j].clone());
    let diffs: Vec<Vector> = (0..nm).map(|x| m.diff_basis(x)).collect();
    let d = |v: &Vector| v.map(|x| diffs[x].clone());

    r.check("degree homogeneity");
    for i in 0..na {
        for x in 0..nm {
            if !table[i][x].indices().all(|y| m.degree(y) == a.degree(i) + m.degree(x)) {
                r.fail("degree homogeneity", format!("{}·{}", alab(i), lab(x)));
            }
        }
    }
    for x in 0..nm {
        if !diffs[x].indices().all(|y| m.degree(y) == m.degree(x) + 1) {
            r.fail("degree homogeneity", format!("d({})", lab(x)));
        }
    }

    r.check("unit");
    let u = a.unit();
    for x in 0..nm {
        let e = Vector::basis(x, field);
        if act(&u, &e) != e {
            r.fail("unit", lab(x));
        }
    }

    let gens: Vec<Vector> = a
        .generators()
        .unwrap_or_else(|| (0..na).map(|i| Vector::basis(i, field)).collect());
    r.check("associativity");
    let fails: Vec<String> = gens
        .par_iter()
        .flat_map_iter(|g| {
            let mut out = Vec::new();
            for j in 0..na {
                let ej = Vector::basis(j, field);
                let gj = a.mul(g, &ej);
                for x in 0..nm {
                    let left = act(g, &table[j][x]);
                    let right = act(&gj, &Vector::basis(x, field));
                    if left != right {
                        out.push(format!("({}, {}, {})", a.format(g), alab(j), lab(x)));
                    }
                }
            }
            out
        })
        .collect();
    for w in fails {
        r.fail("associativity", w);
    }

    r.check("Leibniz rule");
    for g in &gens {
        let dg = a.diff(g);
        for x in 0..nm {
            let ex = Vector::basis(x, field);
            let lhs = d(&act(g, &ex));
            let mut rhs = act(&dg, &ex);
            for (i, c) in g.iter() {
                let t = act(&Vector::basis(i, field), &diffs[x]);
                rhs.add_scaled(&t, &c.clone().signed(a.degree(i) as i64));
            }
            if lhs != rhs {
                r.fail("Leibniz rule", format!("d({}·{})", a.format(g), lab(x)));
            }
        }
    }

    r.check("d² = h·");
    let h = a.curvature();
    for x in 0..nm {
        let ex = Vector::basis(x, field);
        if d(&d(&ex)) != act(&h, &ex) {
            r.fail("d² = h·", lab(x));
        }
    }
    r
}

/// Module stored as explicit action and differential tables.
#[derive(Clone)]
pub struct TableModule {
    algebra: AlgebraRef,
    labels: Vec<String>,
    degrees: Vec<i32>,
    action: Vec<Vec<Vector>>,
    diff: Vec<Vector>,
}

impl TableModule {
    /// Zero action and differential, except that a unit which is a multiple
    /// of a basis vector already acts as the identity.
    pub fn new(algebra: AlgebraRef, basis: Vec<(String, i32)>) -> Self {
        let (labels, degrees): (Vec<_>, Vec<_>) = basis.into_iter().unzip();
        let n = labels.len();
        let mut action = vec![vec![Vector::zero(); n]; algebra.dim()];
        let u = algebra.unit();
        if u.len() == 1 {
            let (i, c) = u.iter().next().unwrap();
            let inv = c.inv().unwrap();
            for x in 0..n {
                action[i][x] = Vector::term(x, inv.clone());
            }
        }
        TableModule {
            algebra,
            labels,
            degrees,
            action,
            diff: vec![Vector::zero(); n],
        }
    }

    /// Materializes any module.
    pub fn from_module(m: &dyn Module) -> Self {
        let a = m.algebra();
        let nm = m.dim();
        TableModule {
            labels: (0..nm).map(|x| m.label(x)).collect(),
            degrees: (0..nm).map(|x| m.degree(x)).collect(),
            action: (0..a.dim())
                .into_par_iter()
                .map(|i| (0..nm).map(|x| m.act_basis(i, x)).collect())
                .collect(),
            diff: (0..nm).into_par_iter().map(|x| m.diff_basis(x)).collect(),
            algebra: a,
        }
    }

    fn check(&self, v: &Vector) -> Result<()> {
        if v.indices().any(|i| i >= self.labels.len()) {
            return Err(Error::DimensionMismatch("module basis index out of range".into()));
        }
        Ok(())
    }

    pub fn set_action(&mut self, a: usize, x: usize, v: Vector) -> Result<()> {
        self.check(&v)?;
        self.action[a][x] = v;
        Ok(())
    }

    pub fn set_diff(&mut self, x: usize, v: Vector) -> Result<()> {
        self.check(&v)?;
        self.diff[x] = v;
        Ok(())
    }

    /// Same data over another algebra with the same basis.
    pub fn with_algebra(mut self, algebra: AlgebraRef) -> Result<Self> {
        if algebra.dim() != self.algebra.dim() {
            return Err(Error::MismatchedAlgebras("algebra dimensions differ".into()));
        }
        self.algebra = algebra;
        Ok(self)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn validated(self) -> Result<Self> {
        validate_module(&self).into_result()?;
        Ok(self)
    }

    pub fn into_ref(self) -> ModuleRef {
        Arc::new(self)
    }
}

impl Module for TableModule {
    fn algebra(&self) -> AlgebraRef {
        self.algebra.clone()
    }
    fn dim(&self) -> usize {
        self.labels.len()
    }
    fn degree(&self, x: usize) -> i32 {
        self.degrees[x]
    }
    fn label(&self, x: usize) -> String {
        self.labels[x].clone()
    }
    fn act_basis(&self, a: usize, x: usize) -> Vector {
        self.action[a][x].clone()
    }
    fn diff_basis(&self, x: usize) -> Vector {
        self.diff[x].clone()
    }
}

/// `A` acting on itself by left multiplication. A module iff `h = 0`.
pub struct LeftRegular {
    pub algebra: AlgebraRef,
}

impl Module for LeftRegular {
    fn algebra(&self) -> AlgebraRef {
        self.algebra.clone()
    }
    fn dim(&self) -> usize {
        self.algebra.dim()
    }
    fn degree(&self, x: usize) -> i32 {
        self.algebra.degree(x)
    }
    fn label(&self, x: usize) -> String {
        self.algebra.label(x)
    }
    fn act_basis(&self, a: usize, x: usize) -> Vector {
        self.algebra.mul_basis(a, x)
    }
    fn diff_basis(&self, x: usize) -> Vector {
        self.algebra.diff_basis(x)
    }
}

/// `A` over `A⊗A^op` with `(a⊗b)·x = (-1)^{|b||x|} a x b`; valid for any
/// curvature since the envelope has curvature `h⊗1 - 1⊗h`.
pub struct RegularBimodule {
    inner: AlgebraRef,
    envelope: AlgebraRef,
}

impl RegularBimodule {
    /// `envelope` must be the tensor product of `a` with an opposite of `a`.
    pub fn new(a: AlgebraRef, envelope: AlgebraRef) -> Result<Self> {
        if envelope.dim() != a.dim() * a.dim() {
            return Err(Error::MismatchedAlgebras("envelope dimension".into()));
        }
        Ok(RegularBimodule { inner: a, envelope })
    }
}

impl Module for RegularBimodule {
    fn algebra(&self) -> AlgebraRef {
        self.envelope.clone()
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
    fn act_basis(&self, ab: usize, x: usize) -> Vector {
        let n = self.inner.dim();
        let (a, b) = (ab / n, ab % n);
        let ax = self.inner.mul_basis(a, x);
        let f = self.inner.field();
        let axb = ax.map(|y| self.inner.mul_basis(y, b));
        axb.scaled(
            &f.one()
                .signed(self.inner.degree(b) as i64 * self.inner.degree(x) as i64),
        )
    }
    fn diff_basis(&self, x: usize) -> Vector {
        self.inner.diff_basis(x)
    }
}

/// `P⊗Q` over `X⊗Y`: `(a⊗b)(p⊗q) = (-1)^{|b||p|} ap⊗bq`,
/// `d(p⊗q) = dp⊗q + (-1)^{|p|} p⊗dq`. Basis `p_i⊗q_j` at `i·dim Q + j`.
pub struct TensorModule {
    pub left: ModuleRef,
    pub right: ModuleRef,
    algebra: AlgebraRef,
}

impl TensorModule {
    pub fn new(left: ModuleRef, right: ModuleRef) -> Self {
        let algebra: AlgebraRef = Arc::new(TensorProduct::new(left.algebra(), right.algebra()));
        TensorModule { left, right, algebra }
    }

    /// Uses a caller-supplied algebra whose basis is that of the tensor product.
    pub fn over(left: ModuleRef, right: ModuleRef, algebra: AlgebraRef) -> Result<Self> {
        if algebra.dim() != left.algebra().dim() * right.algebra().dim() {
            return Err(Error::MismatchedAlgebras("tensor module algebra".into()));
        }
        Ok(TensorModule { left, right, algebra })
    }

    pub fn index(&self, p: usize, q: usize) -> usize {
        p * self.right.dim() + q
    }

    pub fn tensor(&self, p: &Vector, q: &Vector) -> Vector {
        let f = self.algebra.field();
        p.bilinear(q, |i, j| Vector::basis(self.index(i, j), f))
    }
}

impl Module for TensorModule {
    fn algebra(&self) -> AlgebraRef {
        self.algebra.clone()
    }
    fn dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }
    fn degree(&self, x: usize) -> i32 {
        let n = self.right.dim();
        self.left.degree(x / n) + self.right.degree(x % n)
    }
    fn label(&self, x: usize) -> String {
        let n = self.right.dim();
        format!("{}⊗{}", self.left.label(x / n), self.right.label(x % n))
    }
    fn act_basis(&self, ab: usize, x: usize) -> Vector {
        let nb = self.right.algebra().dim();
        let (a, b) = (ab / nb, ab % nb);
        let n = self.right.dim();
        let (p, q) = (x / n, x % n);
        let ap = self.left.act_basis(a, p);
        if ap.is_zero() {
            return ap;
        }
        let bq = self.right.act_basis(b, q);
        let s = self.right.algebra().degree(b) as i64 * self.left.degree(p) as i64;
        self.tensor(&ap, &bq).scaled(&self.algebra.field().one().signed(s))
    }
    fn diff_basis(&self, x: usize) -> Vector {
        let n = self.right.dim();
        let (p, q) = (x / n, x % n);
        let f = self.algebra.field();
        let mut v = self.tensor(&self.left.diff_basis(p), &Vector::basis(q, f));
        v.add_scaled(
            &self.tensor(&Vector::basis(p, f), &self.right.diff_basis(q)),
            &f.one().signed(self.left.degree(p) as i64),
        );
        v
    }
}

/// The linear dual `N*` of an `A`-module as a module over `A^op`.
///
/// Basis `ν_i` dual to `n_i`, of degree `-|n_i|`; `x∗ν` is `(-1)^{|x||ν|} ν(x·-)`
/// and `dν = -(-1)^{|ν|} ν∘d`.
pub struct DualModule {
    inner: ModuleRef,
    op: AlgebraRef,
}

impl DualModule {
    /// `op` must be an algebra on the basis of `A` identified with `A^op`.
    pub fn new(inner: ModuleRef, op: AlgebraRef) -> Result<Self> {
        if op.dim() != inner.algebra().dim() {
            return Err(Error::MismatchedAlgebras("dual module algebra".into()));
        }
        Ok(DualModule { inner, op })
    }
}

impl Module for DualModule {
    fn algebra(&self) -> AlgebraRef {
        self.op.clone()
    }
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn degree(&self, x: usize) -> i32 {
        -self.inner.degree(x)
    }
    fn label(&self, x: usize) -> String {
        format!("{}*", self.inner.label(x))
    }
    fn act_basis(&self, a: usize, j: usize) -> Vector {
        let f = self.op.field();
        let da = self.inner.algebra().degree(a) as i64;
        let s = f.one().signed(da * self.degree(j) as i64);
        let mut out = Vector::zero();
        for i in 0..self.inner.dim() {
            if let Some(c) = self.inner.act_basis(a, i).get(j) {
                out.add_term(i, &(c * &s));
            }
        }
        out
    }
    fn diff_basis(&self, j: usize) -> Vector {
        let f = self.op.field();
        let s = f.one().signed(self.degree(j) as i64 + 1);
        let mut out = Vector::zero();
        for i in 0..self.inner.dim() {
            if let Some(c) = self.inner.diff_basis(i).get(j) {
                out.add_term(i, &(c * &s));
            }
        }
        out
    }
}

/// Restriction of scalars along an algebra map given on basis vectors.
pub struct RestrictedModule {
    inner: ModuleRef,
    algebra: AlgebraRef,
    images: Vec<Vector>,
}

impl RestrictedModule {
    pub fn new(inner: ModuleRef, algebra: AlgebraRef, images: Vec<Vector>) -> Result<Self> {
        if images.len() != algebra.dim() {
            return Err(Error::DimensionMismatch("one image per basis vector".into()));
        }
        Ok(RestrictedModule { inner, algebra, images })
    }
}

impl Module for RestrictedModule {
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
        self.images[a].map(|b| self.inner.act_basis(b, x))
    }
    fn diff_basis(&self, x: usize) -> Vector {
        self.inner.diff_basis(x)
    }
}

/// Whether `images` (one per basis vector of `source`) defines a degree-0
/// isomorphism of modules over the same algebra: bijective, homogeneous,
/// commuting with the action and the differentials.
pub fn check_module_isomorphism(source: &dyn Module, target: &dyn Module, images: &[Vector]) -> Report {
    let mut r = Report::new();
    let a = source.algebra();
    let f = a.field();
    let (ns, nt) = (source.dim(), target.dim());
    let apply = |v: &Vector| v.map(|x| images[x].clone());
    r.check("bijective");
    let cols: Vec<Vec<Scalar>> = images.iter().map(|v| v.to_dense(f, nt)).collect();
    if images.len() != ns || ns != nt || Matrix::from_columns(f, nt, &cols).rank() != ns {
        r.fail("bijective", format!("{ns} → {nt}"));
        return r;
    }
    r.check("degree");
    for x in 0..ns {
        if !images[x].indices().all(|y| target.degree(y) == source.degree(x)) {
            r.fail("degree", source.label(x));
        }
    }
    r.check("commutes with d");
    for x in 0..ns {
        if apply(&source.diff_basis(x)) != target.diff(&images[x]) {
            r.fail("commutes with d", source.label(x));
        }
    }
    r.check("module map");
    let gens = a
        .generators()
        .unwrap_or_else(|| (0..a.dim()).map(|i| Vector::basis(i, f)).collect());
    for g in &gens {
        for x in 0..ns {
            let lhs = apply(&source.act(g, &Vector::basis(x, f)));
            let rhs = target.act(g, &images[x]);
            if lhs != rhs {
                r.fail("module map", format!("{}·{}", a.format(g), source.label(x)));
            }
        }
    }
    r
}

/// `A` as a left module over itself (requires `h = 0` to validate).
pub fn left_regular(a: AlgebraRef) -> TableModule {
    TableModule::from_module(&LeftRegular { algebra: a })
}

/// The linear dual `A*` as a left `A`-module, `(a·φ)(b) = ±φ(ba)`.
pub fn coregular(a: AlgebraRef) -> TableModule {
    let right = LeftRegular {
        algebra: crate::algebra::opposite(a.clone()),
    };
    let d = DualModule::new(Arc::new(right), a).expect("same dimension");
    TableModule::from_module(&d)
}

/// The one-dimensional module in degree 0 on which `b_i` acts by `values[i]`.
pub fn character_module(a: AlgebraRef, values: &[Scalar]) -> TableModule {
    let mut m = TableModule::new(a, vec![("1".into(), 0)]);
    for (i, c) in values.iter().enumerate() {
        m.action[i][0] = Vector::term(0, c.clone());
    }
    m
}

/// The underlying complex of a module with `d² = 0`, basis grouped by degree
/// in the original order.
pub fn underlying_complex(m: &dyn Module) -> Result<crate::graded::Complex> {
    use crate::graded::{Complex, GradedMap, GradedVectorSpace};
    use std::collections::BTreeMap;
    let field = m.field();
    let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for x in 0..m.dim() {
        by_degree.entry(m.degree(x)).or_default().push(x);
    }
    let position: BTreeMap<usize, usize> = by_degree
        .values()
        .flat_map(|xs| xs.iter().enumerate().map(|(k, &x)| (x, k)))
        .collect();
    let space = GradedVectorSpace::from_components(
        field,
        by_degree
            .iter()
            .map(|(&d, xs)| (d, xs.iter().map(|&x| format!("{}#{x}", m.label(x))).collect())),
    )?;
    let mut d = GradedMap::zero(space.clone(), space.clone(), 1);
    for (&deg, xs) in &by_degree {
        let rows = space.dim(deg + 1);
        let mut block = Matrix::zeros(field, rows, xs.len());
        for (col, &x) in xs.iter().enumerate() {
            for (y, c) in m.diff_basis(x).iter() {
                if m.degree(y) != deg + 1 {
                    return Err(Error::Degree(format!("d({}) is not of degree +1", m.label(x))));
                }
                block.set(position[&y], col, c.clone());
            }
        }
        d.set_block(deg, block)?;
    }
    Complex::new(space, d)
}
