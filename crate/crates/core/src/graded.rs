//! Integer-graded vector spaces, graded maps and cochain complexes.
//!
//! Grading is cohomological: differentials have degree `+1`. Koszul signs
//! are introduced only in [`tensor_complex`], [`hom_complex`], [`dual_map`]
//! and [`dual_complex`]; every complex built here re-checks `d∘d = 0`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{eliminate, solve_many, Matrix};
use crate::scalar::{Field, Scalar};

/// Finite-support graded vector space given by basis labels per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVectorSpace {
    field: Field,
    components: BTreeMap<i32, Vec<String>>,
}

impl GradedVectorSpace {
    pub fn new(field: Field) -> Self {
        GradedVectorSpace {
            field,
            components: BTreeMap::new(),
        }
    }

    pub fn from_components(field: Field, components: impl IntoIterator<Item = (i32, Vec<String>)>) -> Result<Self> {
        let mut v = Self::new(field);
        for (d, labels) in components {
            v.set_component(d, labels)?;
        }
        Ok(v)
    }

    /// A space with `dim` anonymous basis vectors in degree `degree`.
    pub fn concentrated(field: Field, degree: i32, dim: usize) -> Self {
        let mut v = Self::new(field);
        v.set_component(degree, (0..dim).map(|i| format!("v{i}")).collect())
            .expect("generated labels are unique");
        v
    }

    /// Ground field in degree zero.
    pub fn unit(field: Field) -> Self {
        let mut v = Self::new(field);
        v.set_component(0, vec!["1".into()]).unwrap();
        v
    }

    fn set_component(&mut self, degree: i32, labels: Vec<String>) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::DimensionMismatch(format!(
                    "duplicate basis label `{l}` in degree {degree}"
                )));
            }
        }
        if labels.is_empty() {
            self.components.remove(&degree);
        } else {
            self.components.insert(degree, labels);
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.components.get(&degree).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(Vec::len).sum()
    }

    pub fn labels(&self, degree: i32) -> &[String] {
        self.components.get(&degree).map_or(&[], Vec::as_slice)
    }

    /// Degrees with a nonzero component, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.components.keys().copied()
    }

    pub fn support(&self) -> Option<(i32, i32)> {
        Some((*self.components.keys().next()?, *self.components.keys().next_back()?))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.components.iter().map(|(&d, l)| (d, l.len())).collect()
    }
}

/// Component of the shift: `shift(V, k)_n = V_{n-k}`. `Σ` is `shift(V, 1)`.
pub fn shift(v: &GradedVectorSpace, k: i32) -> GradedVectorSpace {
    GradedVectorSpace {
        field: v.field,
        components: v.components.iter().map(|(&d, l)| (d + k, l.clone())).collect(),
    }
}

/// Linear dual; the dual of the degree-`n` component sits in degree `-n`.
pub fn dual(v: &GradedVectorSpace) -> GradedVectorSpace {
    GradedVectorSpace {
        field: v.field,
        components: v
            .components
            .iter()
            .map(|(&d, l)| (-d, l.iter().map(|x| format!("{x}*")).collect()))
            .collect(),
    }
}

fn tensor_layout(v: &GradedVectorSpace, w: &GradedVectorSpace) -> BTreeMap<i32, Vec<(i32, usize, usize)>> {
    let mut out: BTreeMap<i32, Vec<(i32, usize, usize)>> = BTreeMap::new();
    for (&i, lv) in &v.components {
        for (&j, lw) in &w.components {
            let e = out.entry(i + j).or_default();
            for a in 0..lv.len() {
                for b in 0..lw.len() {
                    e.push((i, a, b));
                }
            }
        }
    }
    out
}

/// `(V⊗W)_n = ⊕_{i+j=n} V_i⊗W_j`, basis ordered by `i`, then `a`, then `b`.
pub fn tensor(v: &GradedVectorSpace, w: &GradedVectorSpace) -> GradedVectorSpace {
    let layout = tensor_layout(v, w);
    let components = layout.into_iter().map(|(n, entries)| {
        let labels = entries
            .into_iter()
            .map(|(i, a, b)| format!("{}⊗{}", v.labels(i)[a], w.labels(n - i)[b]))
            .collect();
        (n, labels)
    });
    GradedVectorSpace::from_components(v.field, components).expect("tensor labels are unique")
}

fn hom_layout(v: &GradedVectorSpace, w: &GradedVectorSpace) -> BTreeMap<i32, Vec<(i32, usize, usize)>> {
    let mut out: BTreeMap<i32, Vec<(i32, usize, usize)>> = BTreeMap::new();
    for (&j, lv) in &v.components {
        for (&t, lw) in &w.components {
            let e = out.entry(t - j).or_default();
            for a in 0..lv.len() {
                for b in 0..lw.len() {
                    e.push((j, a, b));
                }
            }
        }
    }
    out
}

/// `hom(V, W)_n = ⊕_j Hom(V_j, W_{j+n})`; basis element `(j, a, b)` sends
/// `v_a ∈ V_j` to `w_b` and kills the other basis vectors.
pub fn hom(v: &GradedVectorSpace, w: &GradedVectorSpace) -> GradedVectorSpace {
    let layout = hom_layout(v, w);
    let components = layout.into_iter().map(|(n, entries)| {
        let labels = entries
            .into_iter()
            .map(|(j, a, b)| format!("hom({},{})", v.labels(j)[a], w.labels(j + n)[b]))
            .collect();
        (n, labels)
    });
    GradedVectorSpace::from_components(v.field, components).expect("hom labels are unique")
}

/// Degree-homogeneous linear map; block `n` maps `source_n → target_{n+degree}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub source: GradedVectorSpace,
    pub target: GradedVectorSpace,
    pub degree: i32,
    blocks: BTreeMap<i32, Matrix>,
}

impl GradedMap {
    pub fn zero(source: GradedVectorSpace, target: GradedVectorSpace, degree: i32) -> Self {
        GradedMap {
            source,
            target,
            degree,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(space: &GradedVectorSpace) -> Self {
        let mut f = Self::zero(space.clone(), space.clone(), 0);
        for d in space.degrees() {
            f.blocks.insert(d, Matrix::identity(space.field, space.dim(d)));
        }
        f
    }

    pub fn new(
        source: GradedVectorSpace,
        target: GradedVectorSpace,
        degree: i32,
        blocks: BTreeMap<i32, Matrix>,
    ) -> Result<Self> {
        let mut f = Self::zero(source, target, degree);
        for (n, m) in blocks {
            f.set_block(n, m)?;
        }
        Ok(f)
    }

    pub fn set_block(&mut self, n: i32, m: Matrix) -> Result<()> {
        let (r, c) = (self.target.dim(n + self.degree), self.source.dim(n));
        if (m.rows(), m.cols()) != (r, c) {
            return Err(Error::DimensionMismatch(format!(
                "block at degree {n} is {}x{}, expected {r}x{c}",
                m.rows(),
                m.cols()
            )));
        }
        if r == 0 || c == 0 || m.is_zero() {
            self.blocks.remove(&n);
        } else {
            self.blocks.insert(n, m);
        }
        Ok(())
    }

    pub fn block(&self, n: i32) -> Matrix {
        self.blocks.get(&n).cloned().unwrap_or_else(|| {
            Matrix::zeros(
                self.source.field(),
                self.target.dim(n + self.degree),
                self.source.dim(n),
            )
        })
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if other.target != self.source {
            return Err(Error::DimensionMismatch("composition of incompatible maps".into()));
        }
        let mut out = GradedMap::zero(other.source.clone(), self.target.clone(), self.degree + other.degree);
        for n in other.source.degrees() {
            let m = self.block(n + other.degree).mul(&other.block(n))?;
            out.set_block(n, m)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.degree != other.degree || self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch("difference of incompatible maps".into()));
        }
        let mut out = self.clone();
        let minus = self.source.field().from_i64(-1);
        for n in self.source.degrees() {
            out.set_block(n, self.block(n).add(&other.block(n).scale(&minus))?)?;
        }
        Ok(out)
    }
}

/// Cochain complex with eagerly checked `d∘d = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    space: GradedVectorSpace,
    differential: GradedMap,
}

impl Complex {
    pub fn new(space: GradedVectorSpace, differential: GradedMap) -> Result<Self> {
        if differential.degree != 1 {
            return Err(Error::Degree(format!(
                "differential has degree {}, expected 1",
                differential.degree
            )));
        }
        if differential.source != space || differential.target != space {
            return Err(Error::DimensionMismatch("differential is not an endomorphism".into()));
        }
        for n in space.degrees() {
            let dd = differential.block(n + 1).mul(&differential.block(n))?;
            if !dd.is_zero() {
                return Err(Error::NotAComplex { degree: n });
            }
        }
        Ok(Complex { space, differential })
    }

    /// Complex with zero differential.
    pub fn zero_differential(space: GradedVectorSpace) -> Self {
        let d = GradedMap::zero(space.clone(), space.clone(), 1);
        Complex { space, differential: d }
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn differential(&self) -> &GradedMap {
        &self.differential
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    /// `d: C^n → C^{n+1}` as a matrix.
    pub fn d(&self, n: i32) -> Matrix {
        self.differential.block(n)
    }

    pub fn is_acyclic(&self) -> bool {
        match self.space.support() {
            None => true,
            Some((lo, hi)) => cohomology(self, lo, hi).values().all(|h| h.betti == 0),
        }
    }
}

/// Cohomology in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub betti: usize,
    /// Cocycles whose classes form a basis, as coordinate vectors in `C^n`.
    pub representatives: Vec<Vec<Scalar>>,
}

/// Cohomology of `c` for every degree in `lo..=hi`.
pub fn cohomology(c: &Complex, lo: i32, hi: i32) -> BTreeMap<i32, CohomologyGroup> {
    (lo..=hi).map(|n| (n, cohomology_at(c, n))).collect()
}

/// Just the Betti numbers.
pub fn betti_numbers(c: &Complex, lo: i32, hi: i32) -> BTreeMap<i32, usize> {
    (lo..=hi)
        .map(|n| {
            let dim = c.space.dim(n);
            let z = dim - c.d(n).rank();
            let b = c.d(n - 1).rank();
            (n, z - b)
        })
        .collect()
}

fn cohomology_at(c: &Complex, n: i32) -> CohomologyGroup {
    let field = c.field();
    let dim = c.space.dim(n);
    if dim == 0 {
        return CohomologyGroup {
            betti: 0,
            representatives: vec![],
        };
    }
    let cycles = eliminate(&c.d(n)).kernel_basis;
    let boundaries = eliminate(&c.d(n - 1)).image_basis;
    let mut columns = boundaries.clone();
    columns.extend(cycles.iter().cloned());
    let piv = eliminate(&Matrix::from_columns(field, dim, &columns)).pivots;
    let representatives: Vec<Vec<Scalar>> = piv
        .into_iter()
        .filter(|&p| p >= boundaries.len())
        .map(|p| columns[p].clone())
        .collect();
    CohomologyGroup {
        betti: representatives.len(),
        representatives,
    }
}

/// Checks `d_D f = f d_C` blockwise.
pub fn is_chain_map(f: &GradedMap, c: &Complex, d: &Complex) -> Result<bool> {
    if f.source != c.space || f.target != d.space {
        return Err(Error::DimensionMismatch("chain map endpoints".into()));
    }
    let sign = c.field().from_i64(if f.degree % 2 == 0 { 1 } else { -1 });
    for n in c.space.degrees() {
        let lhs = d.d(n + f.degree).mul(&f.block(n))?;
        let rhs = f.block(n + 1).mul(&c.d(n))?.scale(&sign);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the degree-0 chain map `f: c → d` induces isomorphisms on
/// cohomology in every degree of `lo..=hi`.
pub fn is_quasi_iso(f: &GradedMap, c: &Complex, d: &Complex, lo: i32, hi: i32) -> Result<bool> {
    if f.degree != 0 {
        return Err(Error::Degree("quasi-isomorphisms have degree 0".into()));
    }
    if !is_chain_map(f, c, d)? {
        let bad = c
            .space
            .degrees()
            .find(|&n| d.d(n).mul(&f.block(n)).ok() != f.block(n + 1).mul(&c.d(n)).ok())
            .unwrap_or(0);
        return Err(Error::NotAChainMap { degree: bad });
    }
    let field = c.field();
    for n in lo..=hi {
        let hc = cohomology_at(c, n);
        let hd = cohomology_at(d, n);
        if hc.betti != hd.betti {
            return Ok(false);
        }
        if hc.betti == 0 {
            continue;
        }
        let fm = f.block(n);
        let boundaries = eliminate(&d.d(n - 1)).image_basis;
        let mut cols = boundaries.clone();
        for r in &hc.representatives {
            cols.push(fm.apply(r)?);
        }
        let rank = eliminate(&Matrix::from_columns(field, d.space.dim(n), &cols)).rank;
        if rank != boundaries.len() + hc.betti {
            return Ok(false);
        }
    }
    Ok(true)
}

fn sign(field: Field, k: i64) -> Scalar {
    field.one().signed(k)
}

/// `Σ^k C` with differential `(-1)^k d`.
pub fn shift_complex(c: &Complex, k: i32) -> Complex {
    let space = shift(&c.space, k);
    let s = sign(c.field(), k as i64);
    let mut d = GradedMap::zero(space.clone(), space.clone(), 1);
    for n in c.space.degrees() {
        d.set_block(n + k, c.d(n).scale(&s)).unwrap();
    }
    Complex::new(space, d).expect("shift preserves d∘d = 0")
}

/// Dual map: `(f*φ)(v) = (-1)^{|f||φ|} φ(f v)`.
pub fn dual_map(f: &GradedMap) -> GradedMap {
    let field = f.source.field();
    let source = dual(&f.target);
    let target = dual(&f.source);
    let mut out = GradedMap::zero(source.clone(), target, f.degree);
    for m in f.target.degrees() {
        let s = sign(field, f.degree as i64 * m as i64);
        out.set_block(-m, f.block(m - f.degree).transpose().scale(&s)).unwrap();
    }
    out
}

/// `Hom(C, k)` with differential `dφ = -(-1)^{|φ|} φ∘d`.
pub fn dual_complex(c: &Complex) -> Complex {
    let field = c.field();
    let space = dual(&c.space);
    let mut d = GradedMap::zero(space.clone(), space.clone(), 1);
    for j in c.space.degrees() {
        // φ in degree -j is dual to C^j; dφ is dual to C^{j-1}
        let s = sign(field, j as i64 + 1);
        d.set_block(-j, c.d(j - 1).transpose().scale(&s)).unwrap();
    }
    Complex::new(space, d).expect("dual preserves d∘d = 0")
}

/// `C⊗D` with `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`.
pub fn tensor_complex(c: &Complex, d: &Complex) -> Result<Complex> {
    let field = c.field();
    let space = tensor(&c.space, &d.space);
    let layout = tensor_layout(&c.space, &d.space);
    let index: BTreeMap<i32, BTreeMap<(i32, usize, usize), usize>> = layout
        .iter()
        .map(|(&n, e)| (n, e.iter().enumerate().map(|(k, &t)| (t, k)).collect()))
        .collect();
    let mut diff = GradedMap::zero(space.clone(), space.clone(), 1);
    for (&n, entries) in &layout {
        let mut m = Matrix::zeros(field, space.dim(n + 1), entries.len());
        let Some(tgt) = index.get(&(n + 1)) else { continue };
        for (col, &(i, a, b)) in entries.iter().enumerate() {
            let j = n - i;
            let dc = c.d(i);
            for a2 in 0..dc.rows() {
                let x = dc.get(a2, a);
                if !x.is_zero() {
                    m.add_at(tgt[&(i + 1, a2, b)], col, x);
                }
            }
            let dd = d.d(j);
            let s = sign(field, i as i64);
            for b2 in 0..dd.rows() {
                let x = dd.get(b2, b);
                if !x.is_zero() {
                    m.add_at(tgt[&(i, a, b2)], col, &(x * &s));
                }
            }
        }
        diff.set_block(n, m)?;
    }
    Complex::new(space, diff)
}

/// `Hom(C, D)` with `Dφ = d∘φ - (-1)^{|φ|} φ∘d`.
pub fn hom_complex(c: &Complex, d: &Complex) -> Result<Complex> {
    let field = c.field();
    let space = hom(&c.space, &d.space);
    let layout = hom_layout(&c.space, &d.space);
    let index: BTreeMap<i32, BTreeMap<(i32, usize, usize), usize>> = layout
        .iter()
        .map(|(&n, e)| (n, e.iter().enumerate().map(|(k, &t)| (t, k)).collect()))
        .collect();
    let mut diff = GradedMap::zero(space.clone(), space.clone(), 1);
    for (&n, entries) in &layout {
        let Some(tgt) = index.get(&(n + 1)) else { continue };
        let mut m = Matrix::zeros(field, space.dim(n + 1), entries.len());
        let s = sign(field, n as i64 + 1);
        for (col, &(j, a, b)) in entries.iter().enumerate() {
            // d_D ∘ φ
            let dd = d.d(j + n);
            for b2 in 0..dd.rows() {
                let x = dd.get(b2, b);
                if !x.is_zero() {
                    m.add_at(tgt[&(j, a, b2)], col, x);
                }
            }
            // -(-1)^n φ ∘ d_C : source basis a' in C^{j-1} with (d a')_a ≠ 0
            let dc = c.d(j - 1);
            for a2 in 0..dc.cols() {
                let x = dc.get(a, a2);
                if !x.is_zero() {
                    m.add_at(tgt[&(j - 1, a2, b)], col, &(x * &s));
                }
            }
        }
        diff.set_block(n, m)?;
    }
    Complex::new(space, diff)
}

/// Mapping cone of a degree-0 chain map: `Cone^n = C^{n+1} ⊕ D^n`,
/// `d(x, y) = (-dx, f x + dy)`.
pub fn cone(f: &GradedMap, c: &Complex, d: &Complex) -> Result<Complex> {
    if f.degree != 0 || !is_chain_map(f, c, d)? {
        return Err(Error::NotAChainMap { degree: 0 });
    }
    let field = c.field();
    let mut degrees: Vec<i32> = c.space.degrees().map(|n| n - 1).chain(d.space.degrees()).collect();
    degrees.sort();
    degrees.dedup();
    let comps = degrees.iter().map(|&n| {
        let mut l: Vec<String> = c.space.labels(n + 1).iter().map(|x| format!("s{x}")).collect();
        l.extend(d.space.labels(n).iter().cloned());
        (n, l)
    });
    let space = GradedVectorSpace::from_components(field, comps)?;
    let mut diff = GradedMap::zero(space.clone(), space.clone(), 1);
    let minus = field.from_i64(-1);
    for &n in &degrees {
        let (c0, d0) = (c.space.dim(n + 1), d.space.dim(n));
        let (c1, d1) = (c.space.dim(n + 2), d.space.dim(n + 1));
        let mut m = Matrix::zeros(field, c1 + d1, c0 + d0);
        let dc = c.d(n + 1).scale(&minus);
        let fb = f.block(n + 1);
        let dd = d.d(n);
        for r in 0..c1 {
            for col in 0..c0 {
                m.set(r, col, dc.get(r, col).clone());
            }
        }
        for r in 0..d1 {
            for col in 0..c0 {
                m.set(c1 + r, col, fb.get(r, col).clone());
            }
            for col in 0..d0 {
                m.set(c1 + r, c0 + col, dd.get(r, col).clone());
            }
        }
        diff.set_block(n, m)?;
    }
    Complex::new(space, diff)
}

/// The finite truncation `M⟨n,m⟩`: `coker(d: M^{n-1}→M^n)` in degree `n`,
/// `M^i` for `n<i<m`, `ker(d: M^m→M^{m+1})` in degree `m`, zero elsewhere.
/// Acyclic whenever `M` is.
pub fn truncate_complex(c: &Complex, n: i32, m: i32) -> Result<Complex> {
    if n >= m {
        return Err(Error::Degree(format!("truncation needs n < m, got n={n}, m={m}")));
    }
    let field = c.field();
    // cokernel at n: complement of im(d_{n-1}) spanned by standard basis vectors
    let dim_n = c.space.dim(n);
    let image = eliminate(&c.d(n - 1)).image_basis;
    let mut cols = image.clone();
    for t in 0..dim_n {
        let mut e = vec![field.zero(); dim_n];
        e[t] = field.one();
        cols.push(e);
    }
    let complement: Vec<usize> = eliminate(&Matrix::from_columns(field, dim_n, &cols))
        .pivots
        .into_iter()
        .filter(|&p| p >= image.len())
        .map(|p| p - image.len())
        .collect();
    // kernel at m
    let kernel = eliminate(&c.d(m)).kernel_basis;

    let mut comps = Vec::new();
    comps.push((
        n,
        complement
            .iter()
            .map(|&t| format!("[{}]", c.space.labels(n)[t]))
            .collect::<Vec<_>>(),
    ));
    for i in n + 1..m {
        comps.push((i, c.space.labels(i).to_vec()));
    }
    comps.push((m, (0..kernel.len()).map(|k| format!("z{k}")).collect()));
    let space = GradedVectorSpace::from_components(field, comps)?;
    let mut diff = GradedMap::zero(space.clone(), space.clone(), 1);

    let kernel_coords = |vectors: Vec<Vec<Scalar>>| -> Result<Matrix> {
        let km = Matrix::from_columns(field, c.space.dim(m), &kernel);
        let sols = solve_many(&km, &vectors)?.ok_or_else(|| Error::NotAComplex { degree: m - 1 })?;
        Ok(Matrix::from_columns(field, kernel.len(), &sols))
    };

    // degree n → n+1: induced differential on complement representatives
    let dn = c.d(n);
    let images: Vec<Vec<Scalar>> = complement.iter().map(|&t| dn.column(t)).collect();
    let block_n = if n + 1 == m {
        kernel_coords(images)?
    } else {
        Matrix::from_columns(field, c.space.dim(n + 1), &images)
    };
    diff.set_block(n, block_n)?;
    for i in n + 1..m {
        let di = c.d(i);
        let block = if i + 1 == m {
            kernel_coords((0..di.cols()).map(|col| di.column(col)).collect())?
        } else {
            di
        };
        diff.set_block(i, block)?;
    }
    Complex::new(space, diff)
}

/// Direct sum of complexes.
pub fn direct_sum(c: &Complex, d: &Complex) -> Result<Complex> {
    let field = c.field();
    let mut degrees: Vec<i32> = c.space.degrees().chain(d.space.degrees()).collect();
    degrees.sort();
    degrees.dedup();
    let comps = degrees.iter().map(|&n| {
        let mut l: Vec<String> = c.space.labels(n).iter().map(|x| format!("{x}.0")).collect();
        l.extend(d.space.labels(n).iter().map(|x| format!("{x}.1")));
        (n, l)
    });
    let space = GradedVectorSpace::from_components(field, comps)?;
    let mut diff = GradedMap::zero(space.clone(), space.clone(), 1);
    for &n in &degrees {
        let (a, b) = (c.d(n), d.d(n));
        let mut m = Matrix::zeros(field, a.rows() + b.rows(), a.cols() + b.cols());
        for r in 0..a.rows() {
            for col in 0..a.cols() {
                m.set(r, col, a.get(r, col).clone());
            }
        }
        for r in 0..b.rows() {
            for col in 0..b.cols() {
                m.set(a.rows() + r, a.cols() + col, b.get(r, col).clone());
            }
        }
        diff.set_block(n, m)?;
    }
    Complex::new(space, diff)
}
