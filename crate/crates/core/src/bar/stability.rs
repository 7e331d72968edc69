use std::sync::Arc;

use super::augmentation::FakeAugmentation;
use super::construction::{reduced_bar, unreduced_bar, TruncatedTensorAlgebra, WordSum};
use crate::algebra::{Algebra, AlgebraRef, TableAlgebra};
use crate::error::Result;
use crate::graded::{Complex, GradedMap};
use crate::linalg::Matrix;
use crate::module::{underlying_complex, LeftRegular, Module};
use crate::morphism::CurvedMorphism;
use crate::twisting::Twisted;
use crate::vector::Vector;

/// Degrees in which cohomology computed at word length `max_len` is not
/// affected by the truncation: every omitted word of length `max_len + 1`
/// has degree at least `(max_len + 1)·g + c`, where `g` is the least letter
/// degree and `c` the least coefficient degree, so degrees up to
/// `(max_len + 1)·g + c - 2` are exact. `None` when some letter has degree
/// `≤ 0` (no such bound exists).
pub fn stable_window(letter_degrees: &[i32], coeff_degrees: &[i32], max_len: usize) -> Option<(i32, i32)> {
    let c = *coeff_degrees.iter().min()?;
    let Some(&g) = letter_degrees.iter().min() else {
        return Some((c, i32::MAX));
    };
    if g <= 0 {
        return None;
    }
    Some((c, (max_len as i32 + 1) * g + c - 2))
}

/// Letter degrees `1 - |b|` of `B̄A` for the deterministic fake augmentation.
pub fn reduced_letter_degrees(a: &dyn Algebra) -> Vec<i32> {
    let unit = a.unit();
    let pivot = unit.indices().next().expect("unit is nonzero");
    (0..a.dim()).filter(|&i| i != pivot).map(|i| 1 - a.degree(i)).collect()
}

/// Degrees of `End M` for a module `M`.
pub fn end_degrees(m: &dyn Module) -> Vec<i32> {
    let n = m.dim();
    (0..n * n).map(|i| m.degree(i / n) - m.degree(i % n)).collect()
}

/// Stable window for `E = Hochb(A, End M)` truncated at `max_len`.
pub fn koszul_dual_window(m: &dyn Module, max_len: usize) -> Option<(i32, i32)> {
    stable_window(&reduced_letter_degrees(m.algebra().as_ref()), &end_degrees(m), max_len)
}

/// An isomorphic copy of `A` whose basis starts with the unit, followed by
/// the basis vectors other than the pivot of the fake augmentation.
pub fn unit_first(a: &dyn Algebra) -> Result<TableAlgebra> {
    let field = a.field();
    let unit = a.unit();
    let (p, up) = unit
        .iter()
        .next()
        .map(|(i, c)| (i, c.clone()))
        .expect("unit is nonzero");
    let others: Vec<usize> = (0..a.dim()).filter(|&i| i != p).collect();
    let pos = |i: usize| others.iter().position(|&j| j == i).unwrap() + 1;
    let upinv = up.inv().unwrap();
    let convert = |v: &Vector| -> Vector {
        let mut out = Vector::zero();
        for (i, c) in v.iter() {
            if i == p {
                let s = c * &upinv;
                out.add_term(0, &s);
                for (j, uj) in unit.iter() {
                    if j != p {
                        out.add_term(pos(j), &-(&s * uj));
                    }
                }
            } else {
                out.add_term(pos(i), c);
            }
        }
        out
    };
    let old = |k: usize| -> Vector {
        if k == 0 {
            unit.clone()
        } else {
            Vector::basis(others[k - 1], field)
        }
    };
    let mut basis = vec![("1".to_string(), 0)];
    basis.extend(others.iter().map(|&i| (a.label(i), a.degree(i))));
    let n = a.dim();
    let mut t = TableAlgebra::new(field, basis, Vector::basis(0, field))?;
    let mul = |x: &Vector, y: &Vector| x.bilinear(y, |i, j| a.mul_basis(i, j));
    for i in 0..n {
        for j in 0..n {
            t.set_mul(i, j, convert(&mul(&old(i), &old(j))))?;
        }
        t.set_diff(i, convert(&old(i).map(|k| a.diff_basis(k))))?;
    }
    t.set_curvature(convert(&a.curvature()))?;
    Ok(t)
}

/// For `A` whose unit is basis vector 0: `BA^ξ` with `ξ` the letter dual to
/// the unit, the algebra `B̄A⟨⟨x⟩⟩` with `dx = x² + w` (`w` the curvature
/// of `B̄A`), and the strict morphism between them sending the letter of
/// the unit to `x` and the other letters to themselves.
pub fn unreduced_twist_vs_adjoined(a: AlgebraRef, max_len: usize) -> Result<(AlgebraRef, AlgebraRef, CurvedMorphism)> {
    let field = a.field();
    assert_eq!(a.unit(), Vector::basis(0, field), "unit must be the first basis vector");
    let ba = unreduced_bar(a.clone(), max_len);
    let xi = ba.algebra.letter(0);
    let twisted: AlgebraRef = Arc::new(Twisted::new(ba.as_ref(), xi)?);

    let red = reduced_bar(a.clone(), max_len);
    let p = red.algebra.letter_count();
    // letters of B̄A⟨⟨x⟩⟩: those of B̄A, then x
    let mut letters: Vec<(String, i32)> = (0..p)
        .map(|k| (format!("{}*", a.label(k + 1)), red.algebra.letter_degree(k)))
        .collect();
    letters.push(("x".into(), 1));
    let mut letter_diff: Vec<WordSum> = (0..p).map(|k| red.algebra.letter_diff(k).clone()).collect();
    let w: WordSum = red
        .algebra
        .curvature()
        .iter()
        .map(|(i, c)| (red.algebra.word(i), c.clone()))
        .collect();
    let mut dx = vec![(vec![p, p], field.one())];
    dx.extend(w.iter().cloned());
    letter_diff.push(dx);
    let adjoined: AlgebraRef = Arc::new(TruncatedTensorAlgebra::new(field, letters, max_len, letter_diff, w));

    let words = ba.algebra.words();
    let relabel = |l: usize| if l == 0 { p } else { l - 1 };
    let target_words = super::Words::new(p + 1, max_len);
    let images = (0..words.count())
        .map(|i| {
            let word: Vec<usize> = words.word(i).into_iter().map(relabel).collect();
            Vector::basis(target_words.index(&word).unwrap(), field)
        })
        .collect();
    let iso = CurvedMorphism::strict(twisted.clone(), adjoined.clone(), images)?;
    Ok((twisted, adjoined, iso))
}

/// The inclusion `B̄A ↪ BA^ξ` (letters of `A₊` to the same letters) as a
/// map of complexes, for `A` whose unit is basis vector 0 and whose fake
/// augmentation is genuine.
pub fn reduced_inclusion(a: AlgebraRef, max_len: usize) -> Result<(Complex, Complex, GradedMap)> {
    let field = a.field();
    let (twisted, _, _) = unreduced_twist_vs_adjoined(a.clone(), max_len)?;
    let red = reduced_bar(a, max_len);
    let src = underlying_complex(&LeftRegular { algebra: red.as_ref() })?;
    let tgt = underlying_complex(&LeftRegular {
        algebra: twisted.clone(),
    })?;
    let src_words = red.algebra.words();
    let tgt_words = super::Words::new(src_words.letters() + 1, max_len);
    // position of each basis index within its degree block
    let block_pos = |alg: &dyn Algebra| -> Vec<usize> {
        let mut counts = std::collections::BTreeMap::new();
        (0..alg.dim())
            .map(|i| {
                let c = counts.entry(alg.degree(i)).or_insert(0usize);
                *c += 1;
                *c - 1
            })
            .collect()
    };
    let sp = block_pos(red.algebra.as_ref());
    let tp = block_pos(twisted.as_ref());
    let mut f = GradedMap::zero(src.space().clone(), tgt.space().clone(), 0);
    let mut blocks: std::collections::BTreeMap<i32, Matrix> = std::collections::BTreeMap::new();
    for i in 0..red.algebra.dim() {
        let deg = red.algebra.degree(i);
        let word: Vec<usize> = src_words.word(i).into_iter().map(|l| l + 1).collect();
        let j = tgt_words.index(&word).unwrap();
        let m = blocks
            .entry(deg)
            .or_insert_with(|| Matrix::zeros(field, tgt.space().dim(deg), src.space().dim(deg)));
        m.set(tp[j], sp[i], field.one());
    }
    for (deg, m) in blocks {
        f.set_block(deg, m)?;
    }
    Ok((src, tgt, f))
}

/// Whether the deterministic fake augmentation of `a` is a genuine one.
pub fn has_genuine_augmentation(a: AlgebraRef) -> bool {
    FakeAugmentation::new(a).is_genuine()
}
