use std::sync::Arc;

use super::augmentation::FakeAugmentation;
use super::construction::{reduced_bar, unreduced_bar, BarConstruction};
use super::hochschild::action_map;
use super::words::Words;
use crate::algebra::{opposite, AlgebraRef, TensorProduct};
use crate::error::{Error, Result};
use crate::linalg::{eliminate, solve_many, Matrix};
use crate::module::{
    check_module_isomorphism, DualModule, Module, ModuleExt, ModuleRef, RegularBimodule, RestrictedModule, TableModule,
    TensorModule,
};
use crate::scalar::Scalar;
use crate::twisting::{is_mc, Twisted, TwistedModule};
use crate::validate::Report;
use crate::vector::Vector;

/// The graded space of `m` as a module over `End m` (basis `E_{rs}` at `r·n + s`).
pub fn natural_module(end: AlgebraRef, m: &dyn Module) -> Result<TableModule> {
    let n = m.dim();
    if end.dim() != n * n {
        return Err(Error::MismatchedAlgebras("End M has the wrong dimension".into()));
    }
    let field = end.field();
    let mut t = TableModule::new(end, (0..n).map(|x| (m.label(x), m.degree(x))).collect());
    for r in 0..n {
        for s in 0..n {
            for u in 0..n {
                let v = if s == u {
                    Vector::basis(r, field)
                } else {
                    Vector::zero()
                };
                t.set_action(r * n + s, u, v)?;
            }
        }
    }
    for x in 0..n {
        t.set_diff(x, m.diff_basis(x))?;
    }
    Ok(t)
}

/// The Koszul dual `E = (B̄A⊗End M)^ξ` with the data needed by the functors.
pub struct KoszulData {
    pub a: AlgebraRef,
    pub m: ModuleRef,
    pub bar: BarConstruction,
    pub end: AlgebraRef,
    pub delta: Vec<Vector>,
    /// `B̄A⊗End M`.
    pub untwisted: Arc<TensorProduct>,
    pub xi: Vector,
    /// `E` itself.
    pub e: AlgebraRef,
}

impl KoszulData {
    pub fn new(m: ModuleRef, max_len: usize) -> Result<Self> {
        let a = m.algebra();
        let (end, delta) = action_map(m.as_ref())?;
        let end = end.into_ref();
        let bar = reduced_bar(a.clone(), max_len);
        let (untwisted, xi) = bar.canonical_element(end.clone(), &delta);
        if !is_mc(untwisted.as_ref(), &xi)?.is_mc {
            return Err(Error::Unsupported("canonical element is not Maurer–Cartan".into()));
        }
        let e: AlgebraRef = Arc::new(Twisted::new(untwisted.clone(), xi.clone())?);
        Ok(KoszulData {
            a,
            m,
            bar,
            end,
            delta,
            untwisted,
            xi,
            e,
        })
    }

    pub fn max_len(&self) -> usize {
        self.bar.algebra.max_len()
    }

    pub fn b(&self) -> AlgebraRef {
        self.bar.as_ref()
    }
}

/// `F(N) = Hochb(A, Hom(N, M))` as a left `E`-module, from cochains.
///
/// Basis `(w, ν_j⊗m_k)` at `index(w)·dim N·dim M + j·dim M + k`, where `ν_j`
/// is dual to `n_j`.
pub fn functor_f(data: &KoszulData, n: &dyn Module) -> Result<TableModule> {
    let a = data.a.clone();
    if n.algebra().dim() != a.dim() {
        return Err(Error::MismatchedAlgebras("N is not a module over A".into()));
    }
    let field = a.field();
    let m = data.m.as_ref();
    let (nn, nm) = (n.dim(), m.dim());
    let nh = nn * nm;
    let hdeg = |h: usize| -n.degree(h / nm) + m.degree(h % nm);
    let sign = |k: i64| field.one().signed(k);
    // coefficient operations on Hom(N, M)
    let end_act = |g: usize, h: usize| -> Vector {
        // E_{rs}·(ν⊗m_u) = (-1)^{|g||ν|} ν⊗δ_{su} m_r
        let (j, u) = (h / nm, h % nm);
        let (r, s) = (g / nm, g % nm);
        if s != u {
            return Vector::zero();
        }
        let gdeg = (m.degree(r) - m.degree(s)) as i64;
        Vector::term(j * nm + r, sign(gdeg * -(n.degree(j) as i64)))
    };
    let right_act = |h: usize, i: usize| -> Vector {
        // (ν_j⊗m)·a = (-1)^{|a||m|} (ν_j∘a)⊗m,  ν_j∘a = Σ_l [a n_l]_j ν_l
        let (j, u) = (h / nm, h % nm);
        let s = sign(a.degree(i) as i64 * m.degree(u) as i64);
        let mut v = Vector::zero();
        for l in 0..nn {
            if let Some(c) = n.act_basis(i, l).get(j) {
                v.add_term(l * nm + u, &(c * &s));
            }
        }
        v
    };
    let hom_diff = |h: usize| -> Vector {
        let (j, u) = (h / nm, h % nm);
        let nu = -(n.degree(j) as i64);
        let mut v = Vector::zero();
        // d_{N*} ν_j = Σ_l -(-1)^{|ν_j|} [d n_l]_j ν_l
        for l in 0..nn {
            if let Some(c) = n.diff_basis(l).get(j) {
                v.add_term(l * nm + u, &(c * &sign(nu + 1)));
            }
        }
        for (u2, c) in m.diff_basis(u).iter() {
            v.add_term(j * nm + u2, &(c * &sign(nu)));
        }
        v
    };

    let eps = FakeAugmentation::new(a.clone());
    let plus = eps.plus.clone();
    let p = plus.len();
    let words = Words::new(p, data.max_len());
    let letter_pos: std::collections::BTreeMap<usize, usize> = plus.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let adeg = |k: usize| a.degree(plus[k]) as i64;
    let word_deg = |w: &[usize]| w.iter().map(|&k| 1 - adeg(k)).sum::<i64>();
    let idx = |w: &[usize], h: usize| words.index(w).map(|i| i * nh + h);
    let proj = |v: Vector| -> Vec<(usize, Scalar)> {
        eps.project(&v)
            .iter()
            .filter_map(|(i, c)| letter_pos.get(&i).map(|&k| (k, c.clone())))
            .collect()
    };
    let mut contract = vec![Vec::new(); p];
    let mut internal = vec![Vec::new(); p];
    for s in 0..p {
        for t in 0..p {
            for (k, c) in proj(a.mul_basis(plus[s], plus[t])) {
                contract[k].push((s, t, c));
            }
        }
        for (k, c) in proj(a.diff_basis(plus[s])) {
            internal[k].push((s, c));
        }
    }

    let mut basis = Vec::with_capacity(words.count() * nh);
    for wi in 0..words.count() {
        let w = words.word(wi);
        for h in 0..nh {
            let label = format!("{}⊗{}*⊗{}", data.b().label(wi), n.label(h / nm), m.label(h % nm));
            basis.push((label, word_deg(&w) as i32 + hdeg(h)));
        }
    }
    let mut out = TableModule::new(data.e.clone(), basis);
    let e = data.e.clone();
    let nend = data.end.dim();

    for wi in 0..words.count() {
        let w = words.word(wi);
        let len = w.len();
        let wdeg = word_deg(&w);
        let prefix: Vec<i64> = (0..=len).map(|j| word_deg(&w[..j])).collect();
        for h in 0..nh {
            let x = wi * nh + h;
            let mut d = Vector::zero();
            for (h2, c) in hom_diff(h).iter() {
                d.add_term(wi * nh + h2, &(c * &sign(wdeg)));
            }
            for j in 0..len {
                for (t, c) in &internal[w[j]] {
                    let mut u = w.clone();
                    u[j] = *t;
                    d.add_term(idx(&u, h).unwrap(), &(c * &-sign(prefix[j] + 1 - adeg(*t))));
                }
            }
            if len < data.max_len() {
                for j in 0..len {
                    for (s_, t, c) in &contract[w[j]] {
                        let mut u = w[..j].to_vec();
                        u.push(*s_);
                        u.push(*t);
                        u.extend_from_slice(&w[j + 1..]);
                        d.add_term(
                            idx(&u, h).unwrap(),
                            &(c * &-sign(prefix[j] + adeg(*s_) * (1 - adeg(*t)))),
                        );
                    }
                }
                for t in 0..p {
                    let mut u = vec![t];
                    u.extend_from_slice(&w);
                    let left = data.delta[plus[t]].map(|g| end_act(g, h));
                    for (h2, c) in left.iter() {
                        d.add_term(idx(&u, h2).unwrap(), &(c * &sign(adeg(t) * wdeg)));
                    }
                    let mut u = w.clone();
                    u.push(t);
                    for (h2, c) in right_act(h, plus[t]).iter() {
                        let s = -sign(wdeg + hdeg(h) as i64 * adeg(t));
                        d.add_term(idx(&u, h2).unwrap(), &(c * &s));
                    }
                }
            }
            out.set_diff(x, d)?;
        }
    }
    // action of (w1, g) on (w2, h): (-1)^{|g||w2|} (w1 w2, g·h)
    for ei in 0..e.dim() {
        let (w1, g) = (ei / nend, ei % nend);
        let gdeg = e.degree(ei) as i64 - word_deg(&words.word(w1));
        for wi in 0..words.count() {
            let w2 = words.word(wi);
            let mut cat = words.word(w1);
            cat.extend_from_slice(&w2);
            let Some(k) = words.index(&cat) else { continue };
            let s = sign(gdeg * word_deg(&w2));
            for h in 0..nh {
                let v: Vector = end_act(g, h).iter().map(|(h2, c)| (k * nh + h2, c * &s)).collect();
                out.set_action(ei, wi * nh + h, v)?;
            }
        }
    }
    Ok(out)
}

/// Index of `x⊗y⊗z` in `(X⊗Y)⊗Z`.
fn triple(x: usize, y: usize, z: usize, ny: usize, nz: usize) -> usize {
    (x * ny + y) * nz + z
}

/// `F(N)` obtained by twisting: the `B̄A`-bimodule `B̄A` tensored with `N*`
/// is a module over `(B̄A⊗B̄A^op)⊗A^op`; twisting by `-1⊗ξ`, restricting to
/// `B̄A`, applying `F′` and twisting by the canonical element of `E` gives
/// an `E`-module with the same basis as [`functor_f`].
pub fn functor_f_via_twist(data: &KoszulData, n: ModuleRef) -> Result<ModuleRef> {
    let a = data.a.clone();
    let b = data.b();
    let (nb, na) = (b.dim(), a.dim());
    let env = crate::algebra::bimodule_envelope(b.clone());
    let reg: ModuleRef = Arc::new(RegularBimodule::new(b.clone(), env.clone())?);
    let aop = opposite(a.clone());
    let ndual: ModuleRef = Arc::new(DualModule::new(n, aop)?);
    let big = TensorModule::new(reg, ndual);
    // -Σ 1⊗e^k⊗b_k
    let mut zeta = Vector::zero();
    for (k, &bk) in data.bar.letter_basis.iter().enumerate() {
        let ek = b.generators().unwrap()[k].clone();
        for (e_idx, c) in ek.iter() {
            for (u, cu) in b.unit().iter() {
                zeta.add_term(triple(u, e_idx, bk, nb, na), &-(c * cu));
            }
        }
    }
    let twisted: ModuleRef = Arc::new(TwistedModule::new(Arc::new(big), zeta)?);
    let images: Vec<Vector> = (0..nb)
        .map(|x| {
            let mut v = Vector::zero();
            for (u, cu) in b.unit().iter() {
                for (ai, ca) in a.unit().iter() {
                    v.add_term(triple(x, u, ai, nb, na), &(cu * ca));
                }
            }
            v
        })
        .collect();
    let over_b: ModuleRef = Arc::new(RestrictedModule::new(twisted, b.clone(), images)?);
    let nat: ModuleRef = Arc::new(natural_module(data.end.clone(), data.m.as_ref())?);
    let fprime: ModuleRef = Arc::new(TensorModule::over(over_b, nat, data.untwisted.clone())?);
    Ok(Arc::new(TwistedModule::over(fprime, data.xi.clone(), data.e.clone())?))
}

/// Basis-by-basis comparison of two modules: degrees, action, differential.
pub fn compare_modules(x: &dyn Module, y: &dyn Module) -> Report {
    let mut r = Report::new();
    r.check("dimension");
    if x.dim() != y.dim() || x.algebra().dim() != y.algebra().dim() {
        r.fail("dimension", format!("{} vs {}", x.dim(), y.dim()));
        return r;
    }
    r.check("degrees");
    for i in 0..x.dim() {
        if x.degree(i) != y.degree(i) {
            r.fail("degrees", x.label(i));
        }
    }
    r.check("action");
    for g in 0..x.algebra().dim() {
        for i in 0..x.dim() {
            if x.act_basis(g, i) != y.act_basis(g, i) {
                r.fail("action", format!("{}·{}", x.algebra().label(g), x.label(i)));
            }
        }
    }
    r.check("differential");
    for i in 0..x.dim() {
        if x.diff_basis(i) != y.diff_basis(i) {
            r.fail("differential", x.label(i));
        }
    }
    r
}

/// `Hom_{End M}(M, L)` for a module `L` over `B⊗End M`, as a `B`-module.
pub struct HomFromM {
    pub module: TableModule,
    /// Basis elements as maps `M → L`, in coordinates `φ(m_u) = l` at `u·dim L + l`.
    pub maps: Vec<Vector>,
}

/// Computes `Hom_{End M}(M, L)`: maps `φ: M → L` with `φ(gm) = (-1)^{|g||φ|} g·φ(m)`,
/// with `(bφ)(m) = b·φ(m)` and `dφ = d_L∘φ - (-1)^{|φ|} φ∘d_M`.
pub fn hom_from_m(l: &dyn Module, b: AlgebraRef, m: &dyn Module) -> Result<HomFromM> {
    let field = b.field();
    let (nl, nm) = (l.dim(), m.dim());
    let nend = nm * nm;
    if l.algebra().dim() != b.dim() * nend {
        return Err(Error::MismatchedAlgebras("L is not a module over B⊗End M".into()));
    }
    let bunit = b.unit();
    let on_end = |g: usize, x: &Vector| -> Vector {
        let elt: Vector = bunit.iter().map(|(u, c)| (u * nend + g, c.clone())).collect();
        l.act(&elt, x)
    };
    let on_b = |bi: usize, x: &Vector| -> Vector {
        let mut v = Vector::zero();
        for r in 0..nm {
            v.add_assign(&l.act(&Vector::basis(bi * nend + r * nm + r, field), x));
        }
        v
    };
    let hom_deg = |i: usize| l.degree(i % nl) - m.degree(i / nl);
    let mut degrees: Vec<i32> = (0..nm * nl).map(hom_deg).collect();
    degrees.sort();
    degrees.dedup();
    let mut maps: Vec<Vector> = Vec::new();
    let mut map_deg = Vec::new();
    for &p in &degrees {
        let cols: Vec<usize> = (0..nm * nl).filter(|&i| hom_deg(i) == p).collect();
        let pos: std::collections::BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        // one block of equations per (g = E_rs, u), indexed by components of L
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for r in 0..nm {
            for s in 0..nm {
                let gdeg = (m.degree(r) - m.degree(s)) as i64;
                let sgn = field.one().signed(gdeg * p as i64);
                for u in 0..nm {
                    let mut eq = vec![vec![field.zero(); cols.len()]; nl];
                    if s == u {
                        for lx in 0..nl {
                            if let Some(&c) = pos.get(&(r * nl + lx)) {
                                eq[lx][c] = &eq[lx][c] + &field.one();
                            }
                        }
                    }
                    for lx in 0..nl {
                        let Some(&c) = pos.get(&(u * nl + lx)) else { continue };
                        for (ly, x) in on_end(r * nm + s, &Vector::basis(lx, field)).iter() {
                            eq[ly][c] = &eq[ly][c] - &(x * &sgn);
                        }
                    }
                    rows.extend(eq.into_iter().filter(|row| row.iter().any(|x| !x.is_zero())));
                }
            }
        }
        let kernel = if rows.is_empty() {
            (0..cols.len())
                .map(|k| {
                    let mut v = vec![field.zero(); cols.len()];
                    v[k] = field.one();
                    v
                })
                .collect()
        } else {
            eliminate(&Matrix::from_rows(field, rows, cols.len())?).kernel_basis
        };
        for kv in kernel {
            maps.push(kv.iter().enumerate().map(|(k, x)| (cols[k], x.clone())).collect());
            map_deg.push(p);
        }
    }
    let dim_hom = nm * nl;
    let basis_matrix = Matrix::from_columns(
        field,
        dim_hom,
        &maps.iter().map(|v| v.to_dense(field, dim_hom)).collect::<Vec<_>>(),
    );
    let coords = |vs: Vec<Vector>| -> Result<Vec<Vector>> {
        let rhs: Vec<Vec<Scalar>> = vs.iter().map(|v| v.to_dense(field, dim_hom)).collect();
        let sol = solve_many(&basis_matrix, &rhs)?
            .ok_or_else(|| Error::Unsupported("Hom_{End M}(M, L) is not closed under the structure".into()))?;
        Ok(sol.iter().map(|s| Vector::from_dense(s)).collect())
    };
    let eval = |phi: &Vector, u: usize| -> Vector {
        phi.iter()
            .filter(|(i, _)| i / nl == u)
            .map(|(i, c)| (i % nl, c.clone()))
            .collect()
    };
    let from_values = |vals: Vec<Vector>| -> Vector {
        let mut v = Vector::zero();
        for (u, val) in vals.into_iter().enumerate() {
            for (lx, c) in val.iter() {
                v.add_term(u * nl + lx, c);
            }
        }
        v
    };
    let labels: Vec<(String, i32)> = (0..maps.len()).map(|k| (format!("φ{k}"), map_deg[k])).collect();
    let mut module = TableModule::new(b.clone(), labels);
    let mut diffs = Vec::new();
    for (k, phi) in maps.iter().enumerate() {
        let p = map_deg[k] as i64;
        let vals = (0..nm)
            .map(|u| {
                let mut v = l.diff(&eval(phi, u));
                let dm = m.diff_basis(u);
                let mut back = Vector::zero();
                for (u2, c) in dm.iter() {
                    back.add_scaled(&eval(phi, u2), c);
                }
                v.add_scaled(&back, &field.one().signed(p + 1));
                v
            })
            .collect();
        diffs.push(from_values(vals));
    }
    for (k, v) in coords(diffs)?.into_iter().enumerate() {
        module.set_diff(k, v)?;
    }
    for bi in 0..b.dim() {
        let acted: Vec<Vector> = maps
            .iter()
            .map(|phi| from_values((0..nm).map(|u| on_b(bi, &eval(phi, u))).collect()))
            .collect();
        for (k, v) in coords(acted)?.into_iter().enumerate() {
            module.set_action(bi, k, v)?;
        }
    }
    Ok(HomFromM { module, maps })
}

/// `F′(N) = N⊗M` over `B⊗End M`.
pub fn morita_prime_f(n: ModuleRef, end: AlgebraRef, m: &dyn Module) -> Result<TableModule> {
    let nat: ModuleRef = Arc::new(natural_module(end, m)?);
    Ok(TableModule::from_module(&TensorModule::new(n, nat)))
}

/// `G′(L) = Hom_{End M}(M, L)` over `B`.
pub fn morita_prime_g(l: &dyn Module, b: AlgebraRef, m: &dyn Module) -> Result<TableModule> {
    Ok(hom_from_m(l, b, m)?.module)
}

/// The natural isomorphism `N → G′F′(N)`, `n ↦ (m ↦ n⊗m)`, verified.
pub fn unit_iso_prime(n: ModuleRef, end: AlgebraRef, m: &dyn Module) -> Result<(TableModule, Vec<Vector>, Report)> {
    let field = end.field();
    let b = n.algebra();
    let fn_ = morita_prime_f(n.clone(), end, m)?;
    let hom = hom_from_m(&fn_, b, m)?;
    let (nn, nm) = (n.dim(), m.dim());
    let nl = nn * nm;
    let dim_hom = nm * nl;
    let basis_matrix = Matrix::from_columns(
        field,
        dim_hom,
        &hom.maps.iter().map(|v| v.to_dense(field, dim_hom)).collect::<Vec<_>>(),
    );
    let rhs: Vec<Vec<Scalar>> = (0..nn)
        .map(|x| {
            let phi: Vector = (0..nm).map(|u| (u * nl + x * nm + u, field.one())).collect();
            phi.to_dense(field, dim_hom)
        })
        .collect();
    let images: Vec<Vector> = solve_many(&basis_matrix, &rhs)?
        .ok_or_else(|| Error::Unsupported("n ↦ (m ↦ n⊗m) does not land in Hom_{End M}".into()))?
        .iter()
        .map(|s| Vector::from_dense(s))
        .collect();
    let report = check_module_isomorphism(n.as_ref(), &hom.module, &images);
    Ok((hom.module, images, report))
}

/// The natural isomorphism `F′G′(L) → L`, `φ⊗m ↦ φ(m)`, verified.
pub fn counit_iso_prime(
    l: ModuleRef,
    b: AlgebraRef,
    end: AlgebraRef,
    m: &dyn Module,
) -> Result<(TableModule, Vec<Vector>, Report)> {
    let hom = hom_from_m(l.as_ref(), b, m)?;
    let nm = m.dim();
    let nl = l.dim();
    let fg = morita_prime_f(hom.module.clone().into_ref(), end, m)?;
    let images: Vec<Vector> = (0..fg.dim())
        .map(|x| {
            let (k, u) = (x / nm, x % nm);
            hom.maps[k]
                .iter()
                .filter(|(i, _)| i / nl == u)
                .map(|(i, c)| (i % nl, c.clone()))
                .collect()
        })
        .collect();
    let report = check_module_isomorphism(&fg, l.as_ref(), &images);
    Ok((fg, images, report))
}

/// `G(L)` for an `E`-module `L`: untwist by `-ξ`, take `K = Hom_{End M}(M, L^{[-ξ]})`,
/// dualize to a `B̄A^op`-module, tensor with the bimodule `A` and twist by
/// `1⊗η`, `η = -Σ b_k⊗e^k ∈ A^op⊗B̄A^op`; the result restricted to `A`.
pub fn functor_g(data: &KoszulData, l: ModuleRef) -> Result<TableModule> {
    let a = data.a.clone();
    let b = data.b();
    let (na, nb) = (a.dim(), b.dim());
    if l.algebra().dim() != data.e.dim() {
        return Err(Error::MismatchedAlgebras("L is not a module over E".into()));
    }
    let untwisted: ModuleRef = Arc::new(TwistedModule::over(l, data.xi.neg(), data.untwisted.clone())?);
    let k = hom_from_m(untwisted.as_ref(), b.clone(), data.m.as_ref())?.module;
    let kdual: ModuleRef = Arc::new(DualModule::new(k.into_ref(), opposite(b.clone()))?);
    let env = crate::algebra::bimodule_envelope(a.clone());
    let reg: ModuleRef = Arc::new(RegularBimodule::new(a.clone(), env)?);
    let big = TensorModule::new(reg, kdual);
    let mut zeta = Vector::zero();
    let gens = b.generators().unwrap_or_default();
    for (kk, &bk) in data.bar.letter_basis.iter().enumerate() {
        for (e_idx, c) in gens[kk].iter() {
            for (u, cu) in a.unit().iter() {
                zeta.add_term(triple(u, bk, e_idx, na, nb), &-(c * cu));
            }
        }
    }
    let mc = is_mc(big.algebra().as_ref(), &zeta)?;
    if !mc.is_mc {
        return Err(Error::Unsupported("η is not Maurer–Cartan".into()));
    }
    let twisted: ModuleRef = Arc::new(TwistedModule::new(Arc::new(big), zeta)?);
    let images: Vec<Vector> = (0..na)
        .map(|x| {
            let mut v = Vector::zero();
            for (u, cu) in a.unit().iter() {
                for (w, cw) in b.unit().iter() {
                    v.add_term(triple(x, u, w, na, nb), &(cu * cw));
                }
            }
            v
        })
        .collect();
    Ok(TableModule::from_module(&RestrictedModule::new(twisted, a, images)?))
}

/// `(BA⊗N)^{[ξ]}` over `Hoch(A, A)`, built from the unreduced bar construction.
pub fn bar_resolution_module(n: ModuleRef, max_len: usize) -> Result<TableModule> {
    let a = n.algebra();
    let bar = unreduced_bar(a.clone(), max_len);
    let id = super::identity_map(a.as_ref());
    let (t, xi) = bar.canonical_element(a.clone(), &id);
    let left: ModuleRef = Arc::new(crate::module::LeftRegular { algebra: bar.as_ref() });
    let tm = TensorModule::over(left, n, t.clone())?;
    let hoch: AlgebraRef = Arc::new(Twisted::new(t, xi.clone())?);
    Ok(TableModule::from_module(&TwistedModule::over(Arc::new(tm), xi, hoch)?))
}

/// The right action of `Hochb(A, A)` on `F(N)`:
/// `(w₁, φ)·(w₂, a) = (-1)^{|φ||w₂|} (w₁w₂, φ∘a)` with `φ∘a` the right
/// `A`-action on `Hom(N, M)`. Returns `act[x][β]` for basis `x` of `F(N)`
/// and basis `β` of `Hochb(A, A)` (word-major, as in [`super::hochschild_direct_with`]).
pub fn right_hochschild_action(data: &KoszulData, n: &dyn Module) -> Result<Vec<Vec<Vector>>> {
    let a = data.a.clone();
    let field = a.field();
    let m = data.m.as_ref();
    let (nn, nm, na) = (n.dim(), m.dim(), a.dim());
    let nh = nn * nm;
    let words = data.bar.algebra.words().clone();
    let b = data.b();
    let mut out = vec![vec![Vector::zero(); words.count() * na]; words.count() * nh];
    for w1 in 0..words.count() {
        for h in 0..nh {
            let (j, u) = (h / nm, h % nm);
            let hdeg = (m.degree(u) - n.degree(j)) as i64;
            for w2 in 0..words.count() {
                let mut cat = words.word(w1);
                cat.extend(words.word(w2));
                let Some(kw) = words.index(&cat) else { continue };
                let s = field.one().signed(hdeg * b.degree(w2) as i64);
                for c in 0..na {
                    let sc = field.one().signed(a.degree(c) as i64 * m.degree(u) as i64);
                    let mut v = Vector::zero();
                    for lx in 0..nn {
                        if let Some(x) = n.act_basis(c, lx).get(j) {
                            v.add_term(kw * nh + lx * nm + u, &(x * &sc * &s));
                        }
                    }
                    out[w1 * nh + h][w2 * na + c] = v;
                }
            }
        }
    }
    Ok(out)
}


#[cfg(test)]
mod functor_tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::algebra::Algebra;
    use crate::graded::betti_numbers;
    use crate::module::{character_module, left_regular, underlying_complex, validate_module};
    use crate::scalar::Field;

    const Q: Field = Field::Rational;

    fn dual_numbers_k() -> ModuleRef {
        let a = builtin("dual_numbers", Q).unwrap().into_ref();
        let chi = FakeAugmentation::new(a.clone()).as_character().unwrap();
        character_module(a, &chi).into_ref()
    }

    #[test]
    fn morita_prime_round_trips() {
        let k = dual_numbers_k();
        let data = KoszulData::new(k.clone(), 3).unwrap();
        let b = data.b();
        // N = B itself as a left module
        let n: ModuleRef = left_regular(b.clone()).into_ref();
        for mdim in [1usize, 2] {
            let mm = crate::module::TableModule::new(
                crate::algebra::ground_field(Q).into_ref(),
                (0..mdim).map(|i| (format!("m{i}"), i as i32)).collect(),
            );
            let (end, _) = action_map(&mm).unwrap();
            let end = end.into_ref();
            let (_, _, r) = unit_iso_prime(n.clone(), end.clone(), &mm).unwrap();
            assert!(r.is_ok(), "{r}");
            let l: ModuleRef = morita_prime_f(n.clone(), end.clone(), &mm).unwrap().into_ref();
            let (_, _, r) = counit_iso_prime(l, b.clone(), end, &mm).unwrap();
            assert!(r.is_ok(), "{r}");
        }
    }

    #[test]
    fn g_of_f_recovers_k() {
        let k = dual_numbers_k();
        let data = KoszulData::new(k.clone(), 4).unwrap();
        let fk = functor_f(&data, k.as_ref()).unwrap();
        assert!(validate_module(&fk).is_ok());
        let g = functor_g(&data, fk.into_ref()).unwrap();
        let r = validate_module(&g);
        assert!(r.is_ok(), "{r}");
        let c = underlying_complex(&g).unwrap();
        let betti = betti_numbers(&c, -2, 1);
        assert_eq!(betti[&0], 1, "{betti:?}");
        assert_eq!(betti[&-1], 0, "{betti:?}");
        assert_eq!(betti[&1], 0, "{betti:?}");
    }

    #[test]
    fn bar_resolution_is_acyclic() {
        let k = dual_numbers_k();
        let r = bar_resolution_module(k, 4).unwrap();
        assert!(validate_module(&r).is_ok());
        let c = underlying_complex(&r).unwrap();
        let betti = betti_numbers(&c, 0, 3);
        assert!(betti.values().all(|&b| b == 0), "{betti:?}");
    }

    #[test]
    fn right_action_commutes() {
        let k = dual_numbers_k();
        let a = k.algebra();
        let data = KoszulData::new(k.clone(), 2).unwrap();
        let n = left_regular(a.clone());
        let fnm = functor_f(&data, &n).unwrap();
        let right = right_hochschild_action(&data, &n).unwrap();
        let hoch =
            crate::bar::hochschild_direct_with(a.clone(), a.clone(), &crate::bar::identity_map(a.as_ref()), 2).unwrap();
        let ract = |x: &Vector, beta: usize| x.map(|i| right[i][beta].clone());
        for e in 0..data.e.dim() {
            for x in 0..fnm.dim() {
                let ex = fnm.act_basis(e, x);
                for beta in 0..hoch.dim() {
                    assert_eq!(ract(&ex, beta), fnm.act(&Vector::basis(e, Q), &right[x][beta]));
                }
            }
        }
        for x in 0..fnm.dim() {
            for beta in 0..hoch.dim() {
                let lhs = fnm.diff(&right[x][beta]);
                let mut rhs = ract(&fnm.diff_basis(x), beta);
                let db = hoch.diff_basis(beta);
                let mut t = Vector::zero();
                for (g, c) in db.iter() {
                    t.add_scaled(&right[x][g], c);
                }
                rhs.add_scaled(&t, &Q.one().signed(fnm.degree(x) as i64));
                assert_eq!(lhs, rhs, "x={x} beta={beta}");
            }
        }
    }
}
