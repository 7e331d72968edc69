//! Truncated bar constructions, Hochschild algebras and the duality functors.

mod augmentation;
mod construction;
mod functors;
mod hochschild;
mod stability;
mod words;

pub use augmentation::FakeAugmentation;
pub use construction::*;
pub use functors::*;
pub use hochschild::*;
pub use stability::*;
pub use words::Words;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, validate_algebra, Algebra, AlgebraRef, BUILTINS};
    use crate::scalar::Field;
    use crate::twisting::{is_mc, Twisted};

    fn algebras() -> Vec<(&'static str, AlgebraRef)> {
        BUILTINS
            .iter()
            .map(|&n| (n, builtin(n, Field::Rational).unwrap().into_ref()))
            .collect()
    }

    #[test]
    fn reduced_bar_validates() {
        for (name, a) in algebras() {
            let b = reduced_bar(a.clone(), 3);
            let r = validate_algebra(b.algebra.as_ref());
            assert!(r.is_ok(), "{name}: {r}");
            let u = unreduced_bar(a, 3);
            let r = validate_algebra(u.algebra.as_ref());
            assert!(r.is_ok(), "unreduced {name}: {r}");
            assert!(u.algebra.curvature().is_zero());
        }
    }

    #[test]
    fn canonical_element_is_mc() {
        for (name, a) in algebras() {
            for bar in [reduced_bar(a.clone(), 3), unreduced_bar(a.clone(), 3)] {
                let id = identity_map(a.as_ref());
                let (t, xi) = bar.canonical_element(a.clone(), &id);
                let mc = is_mc(t.as_ref(), &xi).unwrap();
                assert!(mc.is_mc, "{name}: {:?}", mc.residual);
                let tw = Twisted::new(t, xi).unwrap();
                assert!(tw.curvature().is_zero());
                let r = validate_algebra(&tw);
                assert!(r.is_ok(), "{name}: {r}");
            }
        }
    }

    #[test]
    fn curvature_of_matrix_bar() {
        let a = builtin("mat2", Field::Rational).unwrap().into_ref();
        let b = reduced_bar(a, 2);
        assert!(!b.homutator.is_zero());
        let c = builtin("acyclic2", Field::Rational).unwrap().into_ref();
        assert!(!reduced_bar(c, 2).differentiator.is_zero());
        let d = builtin("dual_numbers", Field::Rational).unwrap().into_ref();
        assert!(reduced_bar(d, 4).algebra.curvature().is_zero());
    }
}


#[cfg(test)]
mod stability_tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{builtin, validate_algebra, Algebra, AlgebraRef, BUILTINS};
    use crate::graded::{is_chain_map, is_quasi_iso};
    use crate::morphism::{is_isomorphism, validate_morphism};
    use crate::scalar::Field;

    #[test]
    fn window_formula() {
        assert_eq!(stable_window(&[1, 1], &[0], 4), Some((0, 3)));
        assert_eq!(stable_window(&[1], &[-1, 0, 1], 4), Some((-1, 2)));
        assert_eq!(stable_window(&[2], &[0], 3), Some((0, 6)));
        assert_eq!(stable_window(&[0, 1], &[0], 4), None);
    }

    #[test]
    fn unit_first_is_isomorphic() {
        for name in BUILTINS {
            let a = builtin(name, Field::Rational).unwrap();
            let b = unit_first(&a).unwrap();
            assert!(validate_algebra(&b).is_ok(), "{name}");
            assert_eq!(b.dim(), a.dim());
        }
    }

    #[test]
    fn unreduced_twist_is_adjoined_variable() {
        for name in BUILTINS {
            let a: AlgebraRef = Arc::new(unit_first(&builtin(name, Field::Rational).unwrap()).unwrap());
            let (twisted, adjoined, iso) = unreduced_twist_vs_adjoined(a, 3).unwrap();
            assert!(validate_algebra(adjoined.as_ref()).is_ok(), "{name}");
            assert!(validate_algebra(twisted.as_ref()).is_ok(), "{name}");
            assert!(validate_morphism(&iso).is_ok(), "{name}: {}", validate_morphism(&iso));
            assert!(is_isomorphism(&iso), "{name}");
        }
    }

    #[test]
    fn reduced_bar_includes_quasi_isomorphically() {
        for name in BUILTINS {
            let a: AlgebraRef = Arc::new(unit_first(&builtin(name, Field::Rational).unwrap()).unwrap());
            if !has_genuine_augmentation(a.clone()) {
                continue;
            }
            let (src, tgt, f) = reduced_inclusion(a.clone(), 4).unwrap();
            assert!(is_chain_map(&f, &src, &tgt).unwrap(), "{name}");
            let letters = reduced_letter_degrees(a.as_ref());
            let (lo, hi) = stable_window(&letters, &[0], 4).unwrap();
            assert!(is_quasi_iso(&f, &src, &tgt, lo, hi.min(lo + 3)).unwrap(), "{name}");
        }
    }
}
