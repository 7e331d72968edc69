use std::sync::Arc;

use super::augmentation::FakeAugmentation;
use super::words::Words;
use crate::algebra::{Algebra, AlgebraRef, TensorProduct};
use crate::scalar::{Field, Scalar};
use crate::vector::Vector;

/// A linear combination of words.
pub type WordSum = Vec<(Vec<usize>, Scalar)>;

/// Free graded algebra on finitely many letters, truncated at word length
/// `W`, with the derivation determined by the differentials of the letters
/// and an optional curvature.
///
/// Differentials of letters must have word length at least 1, so words of
/// length `> W` form a differential ideal and the truncation is a quotient.
pub struct TruncatedTensorAlgebra {
    field: Field,
    letter_labels: Vec<String>,
    letter_degrees: Vec<i32>,
    words: Words,
    letter_diff: Vec<WordSum>,
    curvature: Vector,
}

impl TruncatedTensorAlgebra {
    pub fn new(
        field: Field,
        letters: Vec<(String, i32)>,
        max_len: usize,
        letter_diff: Vec<WordSum>,
        curvature: WordSum,
    ) -> Self {
        let (letter_labels, letter_degrees): (Vec<_>, Vec<_>) = letters.into_iter().unzip();
        assert_eq!(letter_diff.len(), letter_labels.len());
        assert!(letter_diff.iter().flatten().all(|(w, _)| !w.is_empty()));
        let words = Words::new(letter_labels.len(), max_len);
        let mut t = TruncatedTensorAlgebra {
            field,
            letter_labels,
            letter_degrees,
            words,
            letter_diff,
            curvature: Vector::zero(),
        };
        t.curvature = t.word_sum(&curvature);
        t
    }

    pub fn words(&self) -> &Words {
        &self.words
    }

    pub fn max_len(&self) -> usize {
        self.words.max_len()
    }

    pub fn letter_count(&self) -> usize {
        self.letter_labels.len()
    }

    pub fn letter_degree(&self, k: usize) -> i32 {
        self.letter_degrees[k]
    }

    pub fn letter_diff(&self, k: usize) -> &WordSum {
        &self.letter_diff[k]
    }

    /// Index of a word, `None` beyond the truncation.
    pub fn index(&self, word: &[usize]) -> Option<usize> {
        self.words.index(word)
    }

    pub fn word(&self, i: usize) -> Vec<usize> {
        self.words.word(i)
    }

    pub fn letter(&self, k: usize) -> Vector {
        Vector::basis(self.words.index(&[k]).expect("W ≥ 1"), self.field)
    }

    /// The image of a formal combination of words, dropping long words.
    pub fn word_sum(&self, s: &WordSum) -> Vector {
        let mut v = Vector::zero();
        for (w, c) in s {
            if let Some(i) = self.words.index(w) {
                v.add_term(i, c);
            }
        }
        v
    }

    fn word_degree(&self, w: &[usize]) -> i32 {
        w.iter().map(|&l| self.letter_degrees[l]).sum()
    }
}

impl Algebra for TruncatedTensorAlgebra {
    fn field(&self) -> Field {
        self.field
    }
    fn dim(&self) -> usize {
        self.words.count()
    }
    fn degree(&self, i: usize) -> i32 {
        self.word_degree(&self.words.word(i))
    }
    fn label(&self, i: usize) -> String {
        let w = self.words.word(i);
        if w.is_empty() {
            return "1".into();
        }
        let parts: Vec<&str> = w.iter().map(|&l| self.letter_labels[l].as_str()).collect();
        format!("[{}]", parts.join("|"))
    }
    fn unit(&self) -> Vector {
        Vector::basis(0, self.field)
    }
    fn mul_basis(&self, i: usize, j: usize) -> Vector {
        let mut w = self.words.word(i);
        w.extend(self.words.word(j));
        match self.words.index(&w) {
            Some(k) => Vector::basis(k, self.field),
            None => Vector::zero(),
        }
    }
    fn diff_basis(&self, i: usize) -> Vector {
        let w = self.words.word(i);
        let mut out = Vector::zero();
        let mut prefix_degree = 0i64;
        for (pos, &l) in w.iter().enumerate() {
            let sign = self.field.one().signed(prefix_degree);
            for (term, c) in &self.letter_diff[l] {
                if w.len() - 1 + term.len() > self.words.max_len() {
                    continue;
                }
                let mut nw = w[..pos].to_vec();
                nw.extend_from_slice(term);
                nw.extend_from_slice(&w[pos + 1..]);
                out.add_term(self.words.index(&nw).unwrap(), &(c * &sign));
            }
            prefix_degree += self.letter_degrees[l] as i64;
        }
        out
    }
    fn curvature(&self) -> Vector {
        self.curvature.clone()
    }
    fn arity(&self, i: usize) -> usize {
        self.words.length(i)
    }
    fn generators(&self) -> Option<Vec<Vector>> {
        if self.max_len() == 0 {
            return Some(vec![]);
        }
        Some((0..self.letter_count()).map(|k| self.letter(k)).collect())
    }
}

/// A truncated bar construction together with the data it was built from.
#[derive(Clone)]
pub struct BarConstruction {
    pub algebra: Arc<TruncatedTensorAlgebra>,
    pub source: AlgebraRef,
    /// Basis index of `A` dual to each letter.
    pub letter_basis: Vec<usize>,
    pub augmentation: Option<FakeAugmentation>,
    /// Curvature contributions from `ε(ab) - ε(a)ε(b)` and from `ε(da)`.
    pub homutator: Vector,
    pub differentiator: Vector,
}

impl BarConstruction {
    pub fn as_ref(&self) -> AlgebraRef {
        self.algebra.clone()
    }

    pub fn is_reduced(&self) -> bool {
        self.augmentation.is_some()
    }

    /// `Σ e^k ⊗ δ(b_k)` in `B⊗C` for an algebra map `δ: A → C` given on the
    /// basis; returns the tensor algebra and the element.
    pub fn canonical_element(&self, coeff: AlgebraRef, delta: &[Vector]) -> (Arc<TensorProduct>, Vector) {
        let t = Arc::new(TensorProduct::new(self.as_ref(), coeff));
        let mut xi = Vector::zero();
        for (k, &b) in self.letter_basis.iter().enumerate() {
            xi.add_assign(&t.tensor(&self.algebra.letter(k), &delta[b]));
        }
        (t, xi)
    }
}

fn sign(field: Field, k: i64) -> Scalar {
    field.one().signed(k)
}

/// Letters for the basis vectors `indices` of `A`, dual generator of `b`
/// in degree `1 - |b|`, with the bar differential built from `proj` and the
/// curvature terms from `eps` (if any).
fn bar_from(a: AlgebraRef, indices: Vec<usize>, max_len: usize, aug: Option<FakeAugmentation>) -> BarConstruction {
    let field = a.field();
    let pos: std::collections::BTreeMap<usize, usize> = indices.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let project = |v: Vector| match &aug {
        Some(e) => e.project(&v),
        None => v,
    };
    let deg = |i: usize| a.degree(i) as i64;
    let letters: Vec<(String, i32)> = indices
        .iter()
        .map(|&i| (format!("{}*", a.label(i)), 1 - a.degree(i)))
        .collect();
    let mut letter_diff: Vec<WordSum> = vec![Vec::new(); indices.len()];
    let mut homutator: WordSum = Vec::new();
    let mut differentiator: WordSum = Vec::new();
    for (ki, &i) in indices.iter().enumerate() {
        // linear part: -(-1)^{1-|b_i|} π(d b_i)_k e^i
        let di = project(a.diff_basis(i));
        let s = -sign(field, 1 - deg(i));
        for (t, c) in di.iter() {
            if let Some(&k) = pos.get(&t) {
                letter_diff[k].push((vec![ki], c * &s));
            }
        }
        if let Some(e) = &aug {
            let c = e.differentiator(i);
            if !c.is_zero() {
                differentiator.push((vec![ki], &c * &s));
            }
        }
        for (kj, &j) in indices.iter().enumerate() {
            let s = -sign(field, deg(i) * (1 - deg(j)));
            let prod = a.mul_basis(i, j);
            if let Some(e) = &aug {
                let c = e.eps(&prod);
                if !c.is_zero() {
                    homutator.push((vec![ki, kj], &c * &s));
                }
            }
            for (t, c) in project(prod).iter() {
                if let Some(&k) = pos.get(&t) {
                    letter_diff[k].push((vec![ki, kj], c * &s));
                }
            }
        }
    }
    let mut curvature = homutator.clone();
    curvature.extend(differentiator.iter().cloned());
    let t = TruncatedTensorAlgebra::new(field, letters, max_len, letter_diff, curvature);
    let homutator = t.word_sum(&homutator);
    let differentiator = t.word_sum(&differentiator);
    BarConstruction {
        algebra: Arc::new(t),
        source: a,
        letter_basis: indices,
        augmentation: aug,
        homutator,
        differentiator,
    }
}

/// The reduced bar construction `B̄A` on `Σ(A/k)*`, truncated at word length
/// `max_len`; curved unless `ε` is a genuine augmentation.
pub fn reduced_bar(a: AlgebraRef, max_len: usize) -> BarConstruction {
    let e = FakeAugmentation::new(a.clone());
    let plus = e.plus.clone();
    bar_from(a, plus, max_len, Some(e))
}

/// The unreduced bar construction `BA` on `ΣA*` (uncurved).
pub fn unreduced_bar(a: AlgebraRef, max_len: usize) -> BarConstruction {
    let all = (0..a.dim()).collect();
    bar_from(a, all, max_len, None)
}

/// Basis images of the identity `A → A`.
pub fn identity_map(a: &dyn Algebra) -> Vec<Vector> {
    (0..a.dim()).map(|i| Vector::basis(i, a.field())).collect()
}
