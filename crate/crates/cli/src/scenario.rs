//! Named verification scenarios.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use kmdual_core::algebra::{builtin, is_ordinary, validate_algebra, Algebra, AlgebraExt, AlgebraRef, BUILTINS};
use kmdual_core::bar::{
    compare_structure, hochschild_direct, identity_map, koszul_dual_via_twist, koszul_dual_window, reduced_bar,
    unreduced_bar, FakeAugmentation,
};
use kmdual_core::certify::{algebra_cohomology, koszul_ext_table};
use kmdual_core::module::{character_module, coregular, left_regular, validate_module, Module, TableModule};
use kmdual_core::morita::{
    classical_f, counit_map, count_simples_brute_force, decompose, ext_dims, gamma, global_dimension_probe, hom_space,
    injective_cogenerator, opposite_to_gamma, projective_resolution, projective_table_module, unit_map,
    GlobalDimension,
};
use kmdual_core::morphism::is_isomorphism;
use kmdual_core::random::{random_ordinary_module, rng};
use kmdual_core::twisting::{is_mc, Twisted};
use kmdual_core::{Error, Field};

use crate::parse::parse_algebra_file;
use crate::report::ScenarioReport;

/// The available scenarios.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scenario {
    Verify,
    Hochschild,
    KoszulCheck,
    Morita,
    Simples,
    Ext,
}

impl Scenario {
    pub const ALL: [Scenario; 6] = [
        Scenario::Verify,
        Scenario::Hochschild,
        Scenario::KoszulCheck,
        Scenario::Morita,
        Scenario::Simples,
        Scenario::Ext,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Verify => "verify",
            Scenario::Hochschild => "hochschild",
            Scenario::KoszulCheck => "koszul-check",
            Scenario::Morita => "morita",
            Scenario::Simples => "simples",
            Scenario::Ext => "ext",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = InputError;
    fn from_str(s: &str) -> Result<Self, InputError> {
        Scenario::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| InputError::UnknownScenario(s.to_string()))
    }
}

/// Problems with the inputs, as opposed to failed checks.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("`{0}` is neither a builtin algebra nor a readable file: {1}")]
    Algebra(String, String),
    #[error("unknown module `{0}`")]
    Module(String),
    #[error("invalid field `{0}`")]
    Field(String),
    #[error("invalid window `{0}`, expected `a:b`")]
    Window(String),
    #[error("{path}")]
    File { path: String, source: Error },
    #[error(transparent)]
    Core(#[from] Error),
}

/// Parses `Q`, `F<p>` or `<p>`.
pub fn parse_field(s: &str) -> Result<Field, InputError> {
    if s == "Q" {
        return Ok(Field::Rational);
    }
    let digits = s.strip_prefix('F').unwrap_or(s);
    let digits = digits.strip_prefix('_').unwrap_or(digits);
    digits
        .parse::<u64>()
        .ok()
        .and_then(|p| Field::prime(p).ok())
        .ok_or_else(|| InputError::Field(s.to_string()))
}

/// Parses `a:b`.
pub fn parse_window(s: &str) -> Result<(i32, i32), InputError> {
    let err = || InputError::Window(s.to_string());
    let (a, b) = s.split_once(':').ok_or_else(err)?;
    let lo = a.trim().parse().map_err(|_| err())?;
    let hi = b.trim().parse().map_err(|_| err())?;
    if lo > hi {
        return Err(err());
    }
    Ok((lo, hi))
}

/// Scenario arguments.
#[derive(Clone, Debug)]
pub struct Options {
    pub algebra: String,
    pub module: Option<String>,
    pub truncation: usize,
    pub window: Option<(i32, i32)>,
    pub field: Option<Field>,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            algebra: "k".into(),
            module: None,
            truncation: 4,
            window: None,
            field: None,
            seed: 0,
        }
    }
}

struct Inputs {
    algebra: AlgebraRef,
    modules: std::collections::BTreeMap<String, TableModule>,
}

fn sha256(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn load_algebra(opts: &Options, report: &mut ScenarioReport) -> Result<Inputs, InputError> {
    let field = opts.field.unwrap_or(Field::Rational);
    if let Some(a) = builtin(&opts.algebra, field) {
        report.input("algebra", format!("builtin:{}", opts.algebra));
        return Ok(Inputs {
            algebra: a.into_ref(),
            modules: Default::default(),
        });
    }
    let path = Path::new(&opts.algebra);
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::Algebra(opts.algebra.clone(), format!("{e} (builtins: {})", BUILTINS.join(", "))))?;
    report.input("algebra", format!("file:{}", opts.algebra));
    report.input("algebra.sha256", sha256(text.as_bytes()));
    let parsed = parse_algebra_file(&text, Field::Rational, opts.field).map_err(|source| InputError::File {
        path: opts.algebra.clone(),
        source,
    })?;
    Ok(Inputs {
        algebra: parsed.algebra,
        modules: parsed.modules,
    })
}

/// Resolves `k`, `A`, `A*`, a module block of the algebra file, or a file
/// whose first module block is over an identical algebra.
fn load_module(name: &str, inputs: &Inputs, report: &mut ScenarioReport) -> Result<TableModule, InputError> {
    let a = inputs.algebra.clone();
    let m = match name {
        "k" => {
            let values = FakeAugmentation::new(a.clone())
                .as_character()
                .ok_or_else(|| Error::Unsupported("the algebra has no augmentation, so `k` is not a module".into()))?;
            character_module(a, &values)
        }
        "A" => left_regular(a),
        "A*" => coregular(a),
        _ => {
            if let Some(m) = inputs.modules.get(name) {
                m.clone()
            } else if Path::new(name).is_file() {
                let text = std::fs::read_to_string(name).map_err(|_| InputError::Module(name.to_string()))?;
                report.input("module.sha256", sha256(text.as_bytes()));
                let parsed =
                    parse_algebra_file(&text, a.field(), Some(a.field())).map_err(|source| InputError::File {
                        path: name.to_string(),
                        source,
                    })?;
                let same = compare_structure(parsed.algebra.as_ref(), a.as_ref());
                if !same.is_ok() {
                    return Err(
                        Error::MismatchedAlgebras(format!("{name} is over a different algebra: {same}")).into(),
                    );
                }
                let m = parsed
                    .modules
                    .into_values()
                    .next()
                    .ok_or_else(|| InputError::Module(name.to_string()))?;
                m.with_algebra(a)?
            } else {
                return Err(InputError::Module(name.to_string()));
            }
        }
    };
    report.input("module", name);
    Ok(m)
}

fn require_ordinary(a: &dyn Algebra) -> Result<(), InputError> {
    if is_ordinary(a) {
        Ok(())
    } else {
        Err(
            Error::Unsupported("this scenario needs an algebra concentrated in degree 0 with zero differential".into())
                .into(),
        )
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Runs a scenario. Input problems are errors; failed checks are recorded
/// in the report.
pub fn run(scenario: Scenario, opts: &Options) -> Result<ScenarioReport, InputError> {
    let mut report = ScenarioReport::new(scenario.name());
    let inputs = load_algebra(opts, &mut report)?;
    let a = inputs.algebra.clone();
    report.input("field", a.field());
    report.input("truncation", opts.truncation);
    match scenario {
        Scenario::Verify => verify(opts, &inputs, &mut report)?,
        Scenario::Hochschild => hochschild(opts, &inputs, &mut report)?,
        Scenario::KoszulCheck => koszul_check(opts, &inputs, &mut report)?,
        Scenario::Morita => morita(opts, &inputs, &mut report)?,
        Scenario::Simples => simples(&inputs, &mut report)?,
        Scenario::Ext => ext(opts, &inputs, &mut report)?,
    }
    Ok(report)
}

fn verify(opts: &Options, inputs: &Inputs, report: &mut ScenarioReport) -> Result<(), InputError> {
    let a = inputs.algebra.clone();
    let w = opts.truncation;
    report.value("algebra.dim", a.dim());
    report.value("algebra.degrees", join((0..a.dim()).map(|i| a.degree(i))));
    report.value("algebra.curved", !a.curvature().is_zero());
    report.check_report("algebra.axioms", &validate_algebra(a.as_ref()));

    let reduced = reduced_bar(a.clone(), w);
    report.value("bar.reduced.dim", reduced.algebra.dim());
    report.check_report("bar.reduced.axioms", &validate_algebra(reduced.algebra.as_ref()));
    let unreduced = unreduced_bar(a.clone(), w);
    report.check_report("bar.unreduced.axioms", &validate_algebra(unreduced.algebra.as_ref()));

    let id = identity_map(a.as_ref());
    let (t, xi) = reduced.canonical_element(a.clone(), &id);
    let mc = is_mc(t.as_ref(), &xi)?;
    report.check("mc.canonical", mc.is_mc, format!("residual {}", t.format(&mc.residual)));
    let tw = Twisted::new(t, xi)?;
    report.check(
        "twist.curvature_zero",
        tw.curvature().is_zero(),
        tw.format(&tw.curvature()),
    );
    report.check_report("twist.axioms", &validate_algebra(&tw));

    let module = match &opts.module {
        Some(name) => Some(load_module(name, inputs, report)?),
        None if FakeAugmentation::new(a.clone()).is_genuine() => Some(load_module("k", inputs, report)?),
        None => None,
    };
    if let Some(m) = module {
        report.check_report("module.axioms", &validate_module(&m));
        let e = koszul_dual_via_twist(&m, w)?;
        report.value("koszul_dual.dim", e.dim());
        report.check_report("koszul_dual.axioms", &validate_algebra(e.as_ref()));
    }
    Ok(())
}

fn hochschild(opts: &Options, inputs: &Inputs, report: &mut ScenarioReport) -> Result<(), InputError> {
    let w = opts.truncation;
    let m = load_module(opts.module.as_deref().unwrap_or("k"), inputs, report)?;
    let direct = hochschild_direct(&m, w)?;
    let twisted = koszul_dual_via_twist(&m, w)?;
    report.value("dim", direct.dim());
    report.check_report("direct_equals_twist", &compare_structure(&direct, twisted.as_ref()));
    report.check_report("axioms", &validate_algebra(&direct));
    report.check(
        "curvature_zero",
        direct.curvature().is_zero(),
        direct.format(&direct.curvature()),
    );

    let window = opts.window.or_else(|| koszul_dual_window(&m, w));
    let Some((lo, hi)) = window else {
        report.value("window", "none");
        return Ok(());
    };
    let next = hochschild_direct(&m, w + 1)?;
    let top = (0..next.dim()).map(|i| next.degree(i)).max().unwrap_or(lo);
    let hi = hi.min(top.max(lo));
    report.input("window", format!("{lo}:{hi}"));
    let here = algebra_cohomology(Arc::new(direct), lo, hi)?;
    let there = algebra_cohomology(Arc::new(next), lo, hi)?;
    report.value("betti", join(here.iter().map(|(n, b)| format!("{n}:{b}"))));
    let moved: Vec<String> = here
        .iter()
        .filter(|(n, b)| there.get(n) != Some(b))
        .map(|(n, b)| format!("H^{n}: {b} at W, {} at W+1", there.get(n).copied().unwrap_or(0)))
        .collect();
    report.check("stable_at_next_truncation", moved.is_empty(), moved.join("; "));
    Ok(())
}

fn koszul_check(opts: &Options, inputs: &Inputs, report: &mut ScenarioReport) -> Result<(), InputError> {
    require_ordinary(inputs.algebra.as_ref())?;
    let w = opts.truncation;
    if w < 2 {
        return Err(Error::Unsupported("koszul-check needs truncation at least 2".into()).into());
    }
    let m = load_module(opts.module.as_deref().unwrap_or("k"), inputs, report)?;
    let table = koszul_ext_table(&m, w, w - 2)?;
    report.value("hochschild", join(table.iter().map(|r| r.hochschild)));
    report.value("ext", join(table.iter().map(|r| r.ext)));
    for row in &table {
        report.check(
            &format!("degree{}", row.degree),
            row.hochschild == row.ext,
            format!("H^{0}(E) = {1}, Ext^{0} = {2}", row.degree, row.hochschild, row.ext),
        );
    }
    Ok(())
}

fn morita(opts: &Options, inputs: &Inputs, report: &mut ScenarioReport) -> Result<(), InputError> {
    let a = inputs.algebra.clone();
    require_ordinary(a.as_ref())?;
    report.input("seed", opts.seed);
    let (m, is_dual) = match opts.module.as_deref() {
        None | Some("A*") => {
            report.input("module", "A*");
            (injective_cogenerator(a.clone())?, true)
        }
        Some(name) => (load_module(name, inputs, report)?, false),
    };
    let d = decompose(a.as_ref())?;
    let simples = d.simple_modules(a.clone());
    let missing: Vec<String> = simples
        .iter()
        .enumerate()
        .filter(|(_, s)| hom_space(*s, &m).is_empty())
        .map(|(i, _)| format!("simple {}", i + 1))
        .collect();
    report.check(
        "cogenerator",
        missing.is_empty(),
        format!("no map into M from {}", missing.join(", ")),
    );

    let g = gamma(Arc::new(m))?;
    report.value("gamma.dim", g.algebra.dim());
    report.check_report("gamma.axioms", &validate_algebra(g.algebra.as_ref()));
    if is_dual {
        let iso = opposite_to_gamma(&g)?;
        report.check("gamma_is_opposite", is_isomorphism(&iso), "A^op → Γ is not bijective");
    }

    let mut tests: Vec<(String, TableModule)> = Vec::new();
    for (i, s) in simples.into_iter().enumerate() {
        tests.push((format!("simple{}", i + 1), s));
    }
    for (i, e) in d.primitive_idempotents(a.as_ref())?.iter().enumerate() {
        tests.push((
            format!("projective{}", i + 1),
            projective_table_module(a.clone(), e, "p"),
        ));
    }
    let mut r = rng(opts.seed);
    for i in 0..5 {
        tests.push((
            format!("random{}", i + 1),
            random_ordinary_module(&mut r, a.clone(), 4)?,
        ));
    }
    for (name, n) in &tests {
        let (_, _, unit) = unit_map(&g, n)?;
        report.check_report(&format!("unit.{name}"), &unit);
        let (fn_, _) = classical_f(&g, n)?;
        let (_, _, counit) = counit_map(&g, &fn_)?;
        report.check_report(&format!("counit.{name}"), &counit);
    }
    Ok(())
}

fn simples(inputs: &Inputs, report: &mut ScenarioReport) -> Result<(), InputError> {
    let a = inputs.algebra.clone();
    require_ordinary(a.as_ref())?;
    let d = decompose(a.as_ref())?;
    let count = d.blocks.len();
    report.value("count", count);
    report.value("radical.dim", d.radical.len());
    report.value("block_sizes", join(d.blocks.iter().map(|b| b.size)));
    let wedderburn: usize = d.blocks.iter().map(|b| b.size * b.size).sum();
    report.check(
        "wedderburn_dimension",
        wedderburn + d.radical.len() == a.dim(),
        format!("{wedderburn} + {} ≠ {}", d.radical.len(), a.dim()),
    );
    if let Some(brute) = count_simples_brute_force(a.as_ref()) {
        report.value("count.brute_force", brute);
        report.check("brute_force_agrees", brute == count, format!("{brute} vs {count}"));
    }
    Ok(())
}

fn ext(opts: &Options, inputs: &Inputs, report: &mut ScenarioReport) -> Result<(), InputError> {
    let a = inputs.algebra.clone();
    require_ordinary(a.as_ref())?;
    let w = opts.truncation;
    let m = load_module(opts.module.as_deref().unwrap_or("k"), inputs, report)?;
    let res = projective_resolution(a.as_ref(), &m, w)?;
    let mut exact = res.augmentation.mul(&res.maps[0])?.is_zero();
    for k in 1..res.maps.len() {
        exact &= res.maps[k - 1].mul(&res.maps[k])?.is_zero();
    }
    report.value("resolution.ranks", join(res.terms.iter().map(|p| p.dim)));
    report.check("resolution.complex", exact, "consecutive maps do not compose to zero");
    report.check(
        "resolution.surjective",
        res.augmentation.rank() == m.dim(),
        "augmentation is not onto",
    );
    let dims = ext_dims(a.as_ref(), &m, &m, w)?;
    report.value("ext", join(&dims));
    let hom = hom_space(&m, &m).len();
    report.check(
        "ext0_is_hom",
        dims[0] == hom,
        format!("Ext^0 = {}, Hom = {hom}", dims[0]),
    );
    let gd = match global_dimension_probe(a, w)? {
        GlobalDimension::Finite(n) => n.to_string(),
        GlobalDimension::Exceeded(n) => format!(">={n}"),
    };
    report.value("global_dimension", gd);
    Ok(())
}
