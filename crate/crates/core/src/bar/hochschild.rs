use std::sync::Arc;

use super::augmentation::FakeAugmentation;
use super::construction::{reduced_bar, unreduced_bar, BarConstruction};
use super::words::Words;
use crate::algebra::{endomorphism_algebra_of, Algebra, AlgebraExt, AlgebraRef, TableAlgebra};
use crate::error::{Error, Result};
use crate::module::Module;
use crate::morphism::CurvedMorphism;
use crate::scalar::Field;
use crate::twisting::{is_mc, Twisted};
use crate::validate::Report;
use crate::vector::Vector;

/// `End M` together with the action map `δ: A → End M` on basis vectors.
pub fn action_map(m: &dyn Module) -> Result<(TableAlgebra, Vec<Vector>)> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::ZeroModule);
    }
    let a = m.algebra();
    let field = a.field();
    let labels: Vec<String> = (0..n).map(|x| m.label(x)).collect();
    let degrees: Vec<i32> = (0..n).map(|x| m.degree(x)).collect();
    let d: Vec<Vector> = (0..n).map(|x| m.diff_basis(x)).collect();
    let end = endomorphism_algebra_of(field, &labels, &degrees, &d)?;
    let delta = (0..a.dim())
        .map(|i| {
            let mut v = Vector::zero();
            for s in 0..n {
                for (r, c) in m.act_basis(i, s).iter() {
                    v.add_term(r * n + s, c);
                }
            }
            v
        })
        .collect();
    Ok((end, delta))
}

/// `(B⊗C)^ξ` for the canonical element built from `δ: A → C`. Fails if
/// `ξ` is not Maurer–Cartan (e.g. when `δ` is not an algebra map).
pub fn hochschild_via_twist(bar: &BarConstruction, coeff: AlgebraRef, delta: &[Vector]) -> Result<AlgebraRef> {
    let (t, xi) = bar.canonical_element(coeff, delta);
    let mc = is_mc(t.as_ref(), &xi)?;
    if !mc.is_mc {
        return Err(Error::Unsupported(format!(
            "canonical element is not Maurer–Cartan, residual {}",
            t.format(&mc.residual)
        )));
    }
    Ok(Arc::new(Twisted::new(t, xi)?))
}

/// The reduced Hochschild algebra `Hochb(A, End M)` truncated at `max_len`,
/// built by twisting `B̄A⊗End M`.
pub fn koszul_dual_via_twist(m: &dyn Module, max_len: usize) -> Result<AlgebraRef> {
    let (end, delta) = action_map(m)?;
    let bar = reduced_bar(m.algebra(), max_len);
    hochschild_via_twist(&bar, end.into_ref(), &delta)
}

/// `Hochb(A, A)` truncated at `max_len`.
pub fn reduced_hochschild_of(a: AlgebraRef, max_len: usize) -> Result<AlgebraRef> {
    let bar = reduced_bar(a.clone(), max_len);
    let id = super::identity_map(a.as_ref());
    hochschild_via_twist(&bar, a, &id)
}

/// Unreduced `Hoch(A, C)` for `δ: A → C`.
pub fn unreduced_hochschild(a: AlgebraRef, coeff: AlgebraRef, delta: &[Vector], max_len: usize) -> Result<AlgebraRef> {
    let bar = unreduced_bar(a, max_len);
    hochschild_via_twist(&bar, coeff, delta)
}

/// The reduced Hochschild algebra `Hochb(A, C)` computed directly from
/// normalized cochains `A₊^{⊗n} → C`: cup product with Koszul signs and
/// the Hochschild differential (internal terms, contractions `a_j a_{j+1}`
/// and the two end terms through `δ`).
///
/// The basis cochain `(w, c)` sends the basis tuple `w` of `A₊` to `c` and
/// all other basis tuples to zero; its index is `index(w)·dim C + c`.
pub fn hochschild_direct_with(
    a: AlgebraRef,
    coeff: AlgebraRef,
    delta: &[Vector],
    max_len: usize,
) -> Result<TableAlgebra> {
    let field = a.field();
    let eps = FakeAugmentation::new(a.clone());
    let plus = eps.plus.clone();
    let p = plus.len();
    let words = Words::new(p, max_len);
    let nc = coeff.dim();
    let letter_pos: std::collections::BTreeMap<usize, usize> = plus.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let adeg = |k: usize| a.degree(plus[k]) as i64;
    let word_deg = |w: &[usize]| w.iter().map(|&k| 1 - adeg(k)).sum::<i64>();
    let idx = |w: &[usize], c: usize| words.index(w).map(|i| i * nc + c);
    let sign = |k: i64| field.one().signed(k);

    let mut basis = Vec::with_capacity(words.count() * nc);
    for wi in 0..words.count() {
        let w = words.word(wi);
        let wl = if w.is_empty() {
            "1".to_string()
        } else {
            format!(
                "[{}]",
                w.iter()
                    .map(|&k| format!("{}*", a.label(plus[k])))
                    .collect::<Vec<_>>()
                    .join("|")
            )
        };
        for c in 0..nc {
            basis.push((
                format!("{wl}⊗{}", coeff.label(c)),
                word_deg(&w) as i32 + coeff.degree(c),
            ));
        }
    }
    let unit: Vector = coeff.unit().iter().map(|(c, x)| (c, x.clone())).collect();
    let mut e = TableAlgebra::new(field, basis, unit)?;

    // π-coordinates of products and differentials inside A₊
    let proj = |v: Vector| -> Vec<(usize, crate::scalar::Scalar)> {
        eps.project(&v)
            .iter()
            .filter_map(|(i, c)| letter_pos.get(&i).map(|&k| (k, c.clone())))
            .collect()
    };
    // contract[k] lists (s, t, coefficient of b_k in π(b_s b_t)); internal[k] lists (t, coefficient of b_k in π(d b_t))
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

    for wi in 0..words.count() {
        let w = words.word(wi);
        let n = w.len();
        let wdeg = word_deg(&w);
        let prefix: Vec<i64> = (0..=n).map(|j| word_deg(&w[..j])).collect();
        for c in 0..nc {
            let ci = wi * nc + c;
            let cdeg = coeff.degree(c) as i64;
            let mut out = Vector::zero();
            // internal differential of C
            for (c2, x) in coeff.diff_basis(c).iter() {
                out.add_term(wi * nc + c2, &(x * &sign(wdeg)));
            }
            // internal differential of A in the j-th argument
            for j in 0..n {
                for (t, x) in &internal[w[j]] {
                    let mut u = w.clone();
                    u[j] = *t;
                    let s = -sign(prefix[j] + 1 - adeg(*t));
                    out.add_term(idx(&u, c).unwrap(), &(x * &s));
                }
            }
            if n < max_len {
                // contractions u_j u_{j+1}
                for j in 0..n {
                    for (s_, t, x) in &contract[w[j]] {
                        let mut u = w[..j].to_vec();
                        u.push(*s_);
                        u.push(*t);
                        u.extend_from_slice(&w[j + 1..]);
                        let s = -sign(prefix[j] + adeg(*s_) * (1 - adeg(*t)));
                        out.add_term(idx(&u, c).unwrap(), &(x * &s));
                    }
                }
                // end terms through δ
                for t in 0..p {
                    let dt = &delta[plus[t]];
                    let mut u = vec![t];
                    u.extend_from_slice(&w);
                    let left = coeff.mul(dt, &Vector::basis(c, field));
                    let s = sign(adeg(t) * wdeg);
                    for (c2, x) in left.iter() {
                        out.add_term(idx(&u, c2).unwrap(), &(x * &s));
                    }
                    let mut u = w.clone();
                    u.push(t);
                    let right = coeff.mul(&Vector::basis(c, field), dt);
                    let s = -sign(wdeg + cdeg * adeg(t));
                    for (c2, x) in right.iter() {
                        out.add_term(idx(&u, c2).unwrap(), &(x * &s));
                    }
                }
            }
            e.set_diff(ci, out)?;
            // cup product with every basis cochain
            for wj in 0..words.count() {
                let w2 = words.word(wj);
                let mut cat = w.clone();
                cat.extend_from_slice(&w2);
                let Some(k) = words.index(&cat) else { continue };
                let w2deg = word_deg(&w2);
                for c2 in 0..nc {
                    let prod = coeff.mul_basis(c, c2);
                    if prod.is_zero() {
                        continue;
                    }
                    let s = sign(cdeg * w2deg);
                    let v: Vector = prod.iter().map(|(c3, x)| (k * nc + c3, x * &s)).collect();
                    e.set_mul(ci, wj * nc + c2, v)?;
                }
            }
        }
    }
    let mut gens: Vec<Vector> = (0..p)
        .filter(|_| max_len > 0)
        .map(|t| {
            coeff
                .unit()
                .iter()
                .map(|(c, x)| ((1 + t) * nc + c, x.clone()))
                .collect()
        })
        .collect();
    gens.extend((0..nc).map(|c| Vector::basis(c, field)));
    e.set_generators(Some(gens));
    Ok(e)
}

/// `E = Hochb(A, End M)` built directly from cochains.
pub fn hochschild_direct(m: &dyn Module, max_len: usize) -> Result<TableAlgebra> {
    let (end, delta) = action_map(m)?;
    hochschild_direct_with(m.algebra(), end.into_ref(), &delta, max_len)
}

/// Basis-by-basis comparison of two algebras: degrees, unit, products,
/// differentials and curvature.
pub fn compare_structure(x: &dyn Algebra, y: &dyn Algebra) -> Report {
    let mut r = Report::new();
    r.check("dimension");
    if x.dim() != y.dim() {
        r.fail("dimension", format!("{} vs {}", x.dim(), y.dim()));
        return r;
    }
    let n = x.dim();
    r.check("degrees");
    for i in 0..n {
        if x.degree(i) != y.degree(i) {
            r.fail("degrees", x.label(i));
        }
    }
    r.check("unit");
    if x.unit() != y.unit() {
        r.fail("unit", x.format(&x.unit()));
    }
    r.check("multiplication");
    let tx = crate::algebra::product_table(x);
    let ty = crate::algebra::product_table(y);
    for i in 0..n {
        for j in 0..n {
            if tx[i][j] != ty[i][j] {
                r.fail("multiplication", format!("{}·{}", x.label(i), x.label(j)));
            }
        }
    }
    r.check("differential");
    for i in 0..n {
        if x.diff_basis(i) != y.diff_basis(i) {
            r.fail("differential", x.label(i));
        }
    }
    r.check("curvature");
    if x.curvature() != y.curvature() {
        r.fail("curvature", x.format(&x.curvature().diff(&y.curvature())));
    }
    r
}

/// `Hoch(k, k)` and `Hochb(k×k, k)` (with `k` the module on which the
/// second idempotent acts by zero), and the strict isomorphism
/// `x^n ↦ (-1)^n y^n` between them.
pub fn unreduced_vs_reduced_example(field: Field, max_len: usize) -> Result<(AlgebraRef, AlgebraRef, CurvedMorphism)> {
    let k = crate::algebra::ground_field(field).into_ref();
    let hoch = unreduced_hochschild(k.clone(), k.clone(), &super::identity_map(k.as_ref()), max_len)?;
    let kxk = crate::algebra::split_semisimple(field, 2).into_ref();
    // δ: k×k → k, e1 ↦ 1, e2 ↦ 0
    let delta = vec![Vector::basis(0, field), Vector::zero()];
    let bar = reduced_bar(kxk, max_len);
    let hochb = hochschild_via_twist(&bar, k, &delta)?;
    let images = (0..=max_len)
        .map(|n| Vector::term(n, field.one().signed(n as i64)))
        .collect();
    let iso = CurvedMorphism::strict(hoch.clone(), hochb.clone(), images)?;
    Ok((hoch, hochb, iso))
}
