//! Acceptance suite: one pass/fail line per criterion. All comparisons are
//! exact (tolerance 0); each criterion also has a pinned wall-clock budget.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use kmdual_core::algebra::{
    acyclic_two_dim, builtin, ground_field, matrix_algebra, product, product_projections, split_semisimple,
    truncated_polynomial, upper_triangular, validate_algebra, Algebra, AlgebraExt, AlgebraRef, BUILTINS,
};
use kmdual_core::bar::{
    action_map, compare_structure, counit_iso_prime, hochschild_direct, identity_map, koszul_dual_via_twist,
    koszul_dual_window, morita_prime_f, reduced_bar, unit_iso_prime, unreduced_bar, unreduced_vs_reduced_example,
    FakeAugmentation, KoszulData,
};
use kmdual_core::certify::{algebra_cohomology, koszul_ext_table};
use kmdual_core::graded::{is_quasi_iso, truncate_complex, Complex};
use kmdual_core::module::{
    character_module, coregular, left_regular, validate_module, LeftRegular, Module, ModuleRef, RestrictedModule,
    TableModule,
};
use kmdual_core::morita::{
    count_simples, decompose, ext_dims, gamma, injective_cogenerator, projective_table_module, unit_map,
};
use kmdual_core::morphism::{is_isomorphism, underlying_chain_map, CurvedMorphism};
use kmdual_core::random::{
    degree_one_element, random_acyclic_complex, random_complex, random_graded_algebra, random_ordinary_module,
    random_sum_of, rng,
};
use kmdual_core::twisting::{is_mc, twist_module, Twisted, TwistedModule};
use kmdual_core::{Field, Vector};

const Q: Field = Field::Rational;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn builtins() -> Vec<(&'static str, AlgebraRef)> {
    BUILTINS
        .iter()
        .map(|&n| (n, builtin(n, Q).unwrap().into_ref()))
        .collect()
}

fn k_module(a: &AlgebraRef) -> Option<TableModule> {
    let chi = FakeAugmentation::new(a.clone()).as_character()?;
    Some(character_module(a.clone(), &chi))
}

fn axioms() -> Outcome {
    let mut algebras = builtins();
    let mut r = rng(1);
    let randoms: Vec<AlgebraRef> = (0..50)
        .map(|_| random_graded_algebra(&mut r, Q).unwrap().into_ref())
        .collect();
    for a in &randoms {
        ensure(
            a.dim() <= 4 && (0..a.dim()).all(|i| (-1..=1).contains(&a.degree(i))),
            || "random algebra out of range".into(),
        )?;
    }
    algebras.extend(randoms.into_iter().map(|a| ("random", a)));
    let mut objects = 0;
    for (name, a) in &algebras {
        let check = |label: &str, x: &dyn Algebra| -> Result<(), String> {
            let rep = validate_algebra(x);
            ensure(rep.is_ok(), || format!("{name} {label}: {rep}"))
        };
        check("algebra", a.as_ref())?;
        let bar = reduced_bar(a.clone(), 3);
        check("reduced bar", bar.algebra.as_ref())?;
        check("unreduced bar", unreduced_bar(a.clone(), 2).algebra.as_ref())?;
        let xi = degree_one_element(&mut r, bar.algebra.as_ref());
        check(
            "twisted bar",
            &Twisted::new(bar.as_ref(), xi).map_err(|e| e.to_string())?,
        )?;
        let xi = degree_one_element(&mut r, a.as_ref());
        if !xi.is_zero() {
            check("twist", &Twisted::new(a.clone(), xi).map_err(|e| e.to_string())?)?;
            objects += 1;
        }
        objects += 4;
    }
    Ok(format!("{} algebras, {objects} objects validated", algebras.len()))
}

fn maurer_cartan() -> Outcome {
    for (name, a) in builtins() {
        for bar in [reduced_bar(a.clone(), 4), unreduced_bar(a.clone(), 4)] {
            let (t, xi) = bar.canonical_element(a.clone(), &identity_map(a.as_ref()));
            let mc = is_mc(t.as_ref(), &xi).map_err(|e| e.to_string())?;
            ensure(mc.is_mc, || format!("{name}: residual nonzero"))?;
            let tw = Twisted::new(t, xi).map_err(|e| e.to_string())?;
            ensure(tw.curvature().is_zero(), || {
                format!("{name}: twisted curvature nonzero")
            })?;
        }
    }
    Ok("all builtins at W=4, reduced and unreduced".into())
}

fn cross_construction() -> Outcome {
    let mut compared = 0;
    let mut skipped = Vec::new();
    for (name, a) in builtins() {
        let mut modules = vec![("A", left_regular(a.clone())), ("A*", coregular(a.clone()))];
        match k_module(&a) {
            Some(k) => modules.push(("k", k)),
            None => skipped.push(format!("{name}/k")),
        }
        for (mname, m) in modules {
            let direct = hochschild_direct(&m, 3).map_err(|e| format!("{name}/{mname}: {e}"))?;
            let twisted = koszul_dual_via_twist(&m, 3).map_err(|e| format!("{name}/{mname}: {e}"))?;
            let rep = compare_structure(&direct, twisted.as_ref());
            ensure(rep.is_ok(), || format!("{name}/{mname}: {rep}"))?;
            compared += 1;
        }
    }
    Ok(format!(
        "{compared} pairs equal at W=3; no augmentation for {}",
        skipped.join(", ")
    ))
}

fn ext_oracle() -> Outcome {
    let w = 5;
    let dual = builtin("dual_numbers", Q).unwrap().into_ref();
    let upper = builtin("upper_tri_2", Q).unwrap().into_ref();
    let kxk = builtin("kxk", Q).unwrap().into_ref();
    let pairs: Vec<(&str, TableModule)> = vec![
        ("dual_numbers,k", character_module(dual.clone(), &[Q.one(), Q.zero()])),
        ("upper_tri_2,A*", coregular(upper)),
        ("kxk,k", character_module(kxk.clone(), &[Q.one(), Q.zero()])),
    ];
    let mut rows = Vec::new();
    for (name, m) in &pairs {
        let table = koszul_ext_table(m, w, w - 2).map_err(|e| format!("{name}: {e}"))?;
        let h: Vec<usize> = table.iter().map(|r| r.hochschild).collect();
        let ext: Vec<usize> = table.iter().map(|r| r.ext).collect();
        ensure(h == ext, || format!("{name}: H(E) {h:?} vs Ext {ext:?}"))?;
        rows.push(format!("{name}: {h:?}"));
    }
    let dual_k = ext_dims(dual.as_ref(), &pairs[0].1, &pairs[0].1, w - 2).unwrap();
    ensure(dual_k == vec![1; w - 1], || format!("dual numbers Ext {dual_k:?}"))?;
    let kxk_k = ext_dims(kxk.as_ref(), &pairs[2].1, &pairs[2].1, w - 2).unwrap();
    ensure(kxk_k == vec![1, 0, 0, 0], || format!("kxk Ext {kxk_k:?}"))?;
    Ok(rows.join("; "))
}

fn reduced_vs_unreduced() -> Outcome {
    let k = ground_field(Q).into_ref();
    let km = character_module(k.clone(), &[Q.one()]);
    let hochb = koszul_dual_via_twist(&km, 4).map_err(|e| e.to_string())?;
    ensure(hochb.dim() == 1, || format!("Hochb(k,k) has dimension {}", hochb.dim()))?;
    let (hoch, hochb_kxk, iso) = unreduced_vs_reduced_example(Q, 4).map_err(|e| e.to_string())?;
    ensure(is_isomorphism(&iso), || "x^n ↦ (-1)^n y^n is not an isomorphism".into())?;
    Ok(format!(
        "dim Hochb(k,k)=1; Hoch(k,k) ≅ Hochb(kxk,k) in dimension {}={}",
        hoch.dim(),
        hochb_kxk.dim()
    ))
}

fn complex_module(a: AlgebraRef, c: &Complex) -> TableModule {
    let mut basis = Vec::new();
    let mut offsets = std::collections::BTreeMap::new();
    for n in c.space().degrees() {
        offsets.insert(n, basis.len());
        for l in c.space().labels(n) {
            basis.push((l.clone(), n));
        }
    }
    let mut m = TableModule::new(a, basis);
    for (&n, &off) in &offsets {
        let d = c.d(n);
        let next = offsets.get(&(n + 1)).copied().unwrap_or(0);
        for col in 0..c.space().dim(n) {
            let v: Vector = (0..d.rows())
                .filter(|&r| !d.get(r, col).is_zero())
                .map(|r| (next + r, d.get(r, col).clone()))
                .collect();
            m.set_diff(off + col, v).unwrap();
        }
    }
    m
}

fn round_trips() -> Outcome {
    let mut r = rng(6);
    let k = ground_field(Q).into_ref();
    let dual = builtin("dual_numbers", Q).unwrap().into_ref();
    let bar_b = KoszulData::new(k_module(&dual).unwrap().into_ref(), 3)
        .map_err(|e| e.to_string())?
        .b();
    let mut count = 0;
    for b in [k.clone(), bar_b] {
        let pieces: Vec<TableModule> = if b.dim() == 1 {
            Vec::new()
        } else {
            vec![left_regular(b.clone()), k_module(&b).unwrap()]
        };
        for mdim in [1usize, 2] {
            let mm = TableModule::new(k.clone(), (0..mdim).map(|i| (format!("m{i}"), i as i32)).collect());
            let (end, _) = action_map(&mm).map_err(|e| e.to_string())?;
            let end = end.into_ref();
            for _ in 0..20 {
                let n: ModuleRef = if pieces.is_empty() {
                    complex_module(k.clone(), &random_complex(&mut r, Q, -1, 1).unwrap()).into_ref()
                } else {
                    random_sum_of(&mut r, &pieces, 2).unwrap().into_ref()
                };
                let (_, _, rep) = unit_iso_prime(n.clone(), end.clone(), &mm).map_err(|e| e.to_string())?;
                ensure(rep.is_ok(), || format!("G'F'(N) ≇ N: {rep}"))?;
                let seed: ModuleRef = if pieces.is_empty() {
                    complex_module(k.clone(), &random_complex(&mut r, Q, -1, 1).unwrap()).into_ref()
                } else {
                    random_sum_of(&mut r, &pieces, 2).unwrap().into_ref()
                };
                let l = morita_prime_f(seed, end.clone(), &mm).map_err(|e| e.to_string())?;
                let l = kmdual_core::random::random_module_basis_change(&mut r, &l)
                    .unwrap()
                    .into_ref();
                let (_, _, rep) = counit_iso_prime(l, b.clone(), end.clone(), &mm).map_err(|e| e.to_string())?;
                ensure(rep.is_ok(), || format!("F'G'(L) ≇ L: {rep}"))?;
                count += 2;
            }
        }
    }
    Ok(format!("{count} round trips verified"))
}

fn twist_inverse() -> Outcome {
    let mut r = rng(7);
    let bases: Vec<AlgebraRef> = builtins()
        .into_iter()
        .map(|(_, a)| reduced_bar(a, 2).as_ref())
        .chain((0..4).map(|_| reduced_bar(random_graded_algebra(&mut r, Q).unwrap().into_ref(), 2).as_ref()))
        .collect();
    let flat: Vec<&AlgebraRef> = bases.iter().filter(|b| b.curvature().is_zero()).collect();
    let mut curved = 0;
    for i in 0..20 {
        let b = flat[i % flat.len()].clone();
        let xi = degree_one_element(&mut r, b.as_ref());
        let n = random_sum_of(&mut r, &[left_regular(b.clone())], 2).unwrap();
        let n: ModuleRef = Arc::new(TwistedModule::new(n.into_ref(), xi).map_err(|e| e.to_string())?);
        ensure(validate_module(n.as_ref()).is_ok(), || {
            "random curved module invalid".into()
        })?;
        if !n.algebra().curvature().is_zero() {
            curved += 1;
        }
        let eta = degree_one_element(&mut r, n.algebra().as_ref());
        let twisted = twist_module(n.clone(), eta.clone()).map_err(|e| e.to_string())?;
        let back = TwistedModule::new(twisted, eta.neg()).map_err(|e| e.to_string())?;
        ensure((0..n.dim()).all(|x| back.diff_basis(x) == n.diff_basis(x)), || {
            format!("module {i}: differentials differ")
        })?;
    }
    ensure(curved > 0, || "no curved modules generated".into())?;
    let mut checked = 0;
    for &b in &flat {
        let xi = degree_one_element(&mut r, b.as_ref());
        let m =
            TwistedModule::new(Arc::new(LeftRegular { algebra: b.clone() }), xi.clone()).map_err(|e| e.to_string())?;
        let t = Twisted::new(b.clone(), xi.clone()).map_err(|e| e.to_string())?;
        for x in 0..b.dim() {
            let e = Vector::basis(x, Q);
            let expected = b.mul(&e, &xi).scaled(&Q.one().signed(b.degree(x) as i64));
            ensure(m.diff_basis(x).diff(&t.diff_basis(x)) == expected, || {
                "A^[ξ] and A^ξ differ by more than right multiplication".into()
            })?;
        }
        checked += 1;
    }
    Ok(format!(
        "20 modules ({curved} over curved algebras); {checked} uncurved right-multiplication checks"
    ))
}

fn classical_morita() -> Outcome {
    let mut r = rng(8);
    let mut count = 0;
    for name in ["upper_tri_2", "kxk"] {
        let a = builtin(name, Q).unwrap().into_ref();
        let g =
            gamma(Arc::new(injective_cogenerator(a.clone()).map_err(|e| e.to_string())?)).map_err(|e| e.to_string())?;
        let d = decompose(a.as_ref()).map_err(|e| e.to_string())?;
        let mut tests = d.simple_modules(a.clone());
        for e in d.primitive_idempotents(a.as_ref()).map_err(|e| e.to_string())? {
            tests.push(projective_table_module(a.clone(), &e, "p"));
        }
        ensure(tests.len() == 4, || format!("{name}: {} indecomposables", tests.len()))?;
        for _ in 0..10 {
            tests.push(random_ordinary_module(&mut r, a.clone(), 4).map_err(|e| e.to_string())?);
        }
        for n in &tests {
            let (_, _, rep) = unit_map(&g, n).map_err(|e| e.to_string())?;
            ensure(rep.is_ok(), || format!("{name}: {rep}"))?;
            count += 1;
        }
    }
    Ok(format!("unit N → GF(N) is an isomorphism on {count} modules"))
}

fn simple_counts() -> Outcome {
    let cases: Vec<(&str, AlgebraRef, usize)> = vec![
        ("k", ground_field(Q).into_ref(), 1),
        ("upper_tri_2", upper_triangular(Q).into_ref(), 2),
        ("kxkxk", split_semisimple(Q, 3).into_ref(), 3),
        ("k[x]/x^5", truncated_polynomial(Q, 5, 0).into_ref(), 1),
        ("mat2", matrix_algebra(Q, 2).into_ref(), 1),
    ];
    let mut got = Vec::new();
    for (name, a, expected) in cases {
        let c = count_simples(a.as_ref()).map_err(|e| format!("{name}: {e}"))?;
        ensure(c == expected, || format!("{name}: {c} simples, expected {expected}"))?;
        got.push(c);
    }
    Ok(format!("{got:?}"))
}

fn truncation() -> Outcome {
    let mut r = rng(10);
    let mut cases = 0;
    for _ in 0..20 {
        let c = random_acyclic_complex(&mut r, Q, -2, 2).map_err(|e| e.to_string())?;
        ensure(c.is_acyclic(), || "input not acyclic".into())?;
        let (lo, hi) = c.space().support().unwrap_or((0, 0));
        for n in lo - 1..=hi + 1 {
            for m in n + 1..=hi + 1 {
                let t = truncate_complex(&c, n, m).map_err(|e| format!("⟨{n},{m}⟩: {e}"))?;
                let d2 = t.space().degrees().all(|i| t.d(i + 1).mul(&t.d(i)).unwrap().is_zero());
                ensure(d2, || format!("⟨{n},{m}⟩: d² ≠ 0"))?;
                ensure(t.is_acyclic(), || format!("⟨{n},{m}⟩: not acyclic"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} truncations of 20 complexes"))
}

fn stability() -> Outcome {
    let w = 3;
    let mut rows = Vec::new();
    for (name, a) in builtins() {
        let (mname, m) = match k_module(&a) {
            Some(k) => ("k", k),
            None => ("A", left_regular(a.clone())),
        };
        let Some((lo, hi)) = koszul_dual_window(&m, w) else {
            return Err(format!("{name}: no stable window"));
        };
        let here = hochschild_direct(&m, w).map_err(|e| e.to_string())?;
        let there = hochschild_direct(&m, w + 1).map_err(|e| e.to_string())?;
        let top = (0..there.dim()).map(|i| there.degree(i)).max().unwrap_or(lo);
        let hi = hi.min(top.max(lo));
        let h0 = algebra_cohomology(Arc::new(here), lo, hi).map_err(|e| e.to_string())?;
        let h1 = algebra_cohomology(Arc::new(there), lo, hi).map_err(|e| e.to_string())?;
        ensure(h0 == h1, || format!("{name}/{mname}: {h0:?} at W vs {h1:?} at W+1"))?;
        rows.push(format!("{name}/{mname} [{lo},{hi}]"));
    }
    Ok(rows.join(", "))
}

fn acyclic_factor() -> Outcome {
    let c = acyclic_two_dim(Q);
    let h = algebra_cohomology(c.clone().into_ref(), -3, 3).map_err(|e| e.to_string())?;
    ensure(h.values().all(|&b| b == 0), || format!("acyclic2 cohomology {h:?}"))?;
    let a = builtin("dual_numbers", Q).unwrap();
    let p = product(&a, &c).map_err(|e| e.to_string())?.into_ref();
    let (to_a, to_c) = product_projections(&a, &c);
    let pa = CurvedMorphism::strict(p.clone(), a.into_ref(), to_a).map_err(|e| e.to_string())?;
    let (src, tgt, f) = underlying_chain_map(&pa).map_err(|e| e.to_string())?;
    ensure(is_quasi_iso(&f, &src, &tgt, -3, 3).map_err(|e| e.to_string())?, || {
        "projection is not a quasi-isomorphism".into()
    })?;
    let m = RestrictedModule::new(Arc::new(LeftRegular { algebra: c.into_ref() }), p.clone(), to_c)
        .map_err(|e| e.to_string())?;
    let m = TableModule::from_module(&m);
    ensure(validate_module(&m).is_ok(), || "C is not an A×C-module".into())?;
    let e = koszul_dual_via_twist(&m, 3).map_err(|e| e.to_string())?;
    let rep = validate_algebra(e.as_ref());
    ensure(rep.is_ok(), || format!("E(A×C, C): {rep}"))?;
    Ok(format!("E(A×C, C) has dimension {} and validates", e.dim()))
}

struct Criterion {
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            title: "axioms for builtins, 50 random algebras, bars and twists",
            budget: secs(30),
            run: axioms,
        },
        Criterion {
            title: "canonical element is Maurer-Cartan, twist is flat",
            budget: secs(10),
            run: maurer_cartan,
        },
        Criterion {
            title: "direct and twisted Hochschild algebras agree",
            budget: secs(120),
            run: cross_construction,
        },
        Criterion {
            title: "H(E) equals Ext from projective resolutions",
            budget: secs(120),
            run: ext_oracle,
        },
        Criterion {
            title: "reduced vs unreduced Hochschild of k",
            budget: secs(10),
            run: reduced_vs_unreduced,
        },
        Criterion {
            title: "F'G' and G'F' round trips",
            budget: secs(120),
            run: round_trips,
        },
        Criterion {
            title: "module twists invert; A^[ξ] vs A^ξ",
            budget: secs(30),
            run: twist_inverse,
        },
        Criterion {
            title: "classical Morita unit is an isomorphism",
            budget: secs(60),
            run: classical_morita,
        },
        Criterion {
            title: "simple module counts 1,2,3,1,1",
            budget: secs(10),
            run: simple_counts,
        },
        Criterion {
            title: "truncations of acyclic complexes",
            budget: secs(30),
            run: truncation,
        },
        Criterion {
            title: "cohomology stable from W to W+1 in window",
            budget: secs(60),
            run: stability,
        },
        Criterion {
            title: "acyclic factor: quasi-isomorphic projection",
            budget: secs(30),
            run: acyclic_factor,
        },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(d) if elapsed <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({:.1}s of {}s) {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
