//! One function per verb. Each returns a [`Report`]; input problems come
//! back as errors and map to exit code 2 (parse, I/O) or 1 (anything else).

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ditrace_core::absorption_monoid::{AbsMonoid, AxiomReport, FiniteAbsMonoid, MonElement, MonoidMorphism, SubMonoid};
use ditrace_core::corpus;
use ditrace_core::directed_space::{pi1_map, trace_monoid_map, Pi1Module, Space, SpaceMap};
use ditrace_core::error::Error;
use ditrace_core::format::{self, in_file, MonoidSpec};
use ditrace_core::pointed_modules::{
    module_from_transition_system, transition_system_from_module, Carrier, LeftModule,
};
use ditrace_core::scalar_functors::{
    adjunction_left_check, adjunction_right_check, coextend, extend_mon, extend_set, restrict, ScalarChange, Side,
};

use crate::report::Report;

/// Why a command could not produce a report.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    /// A malformed command-line value.
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Bounds shared by every verb.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Word-length bound `L` for checks over infinite domains.
    pub bound: usize,
    /// Rewrite budget for the monoid-carrier extension.
    pub budget: usize,
    pub seed: u64,
    pub max_size: usize,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn axioms(report: &mut Report, key: &str, r: &AxiomReport) {
    report.fact(&format!("{key}-checked"), r.checked);
    report.fact(&format!("{key}-scope"), r.scope());
    report.check(key, r.is_ok());
    if !r.is_ok() {
        report.fact(&format!("{key}-violations"), violation_lines(r));
    }
}

fn violation_lines(r: &AxiomReport) -> Vec<String> {
    r.violations
        .iter()
        .map(|v| {
            let mut s = format!("{} at ({})", v.law, v.witnesses.join(", "));
            if !v.detail.is_empty() {
                s.push_str(": ");
                s.push_str(&v.detail);
            }
            s
        })
        .collect()
}

fn table_rows(t: &FiniteAbsMonoid) -> Vec<String> {
    (0..t.len())
        .map(|a| {
            let row: Vec<&str> = (0..t.len()).map(|b| t.name(t.mul(a, b))).collect();
            format!("{}: {}", t.name(a), row.join(" "))
        })
        .collect()
}

fn describe_monoid(report: &mut Report, m: &AbsMonoid, bound: usize) {
    report.fact("monoid", m.describe());
    match m.to_table() {
        Some(t) => {
            report.fact("size", t.len());
            report.fact("elements", t.names().to_vec());
            report.fact("table", table_rows(&t));
        }
        None => {
            report.fact(&format!("elements-up-to-{bound}"), m.elements_up_to(bound).len());
        }
    }
}

/// Scalars to tabulate: all of a finite monoid, otherwise `1` and the
/// generators of a free monoid.
fn listed_scalars(t: &AbsMonoid) -> Vec<MonElement> {
    match t.elements() {
        Some(e) => e,
        None => t.elements_up_to(1).into_iter().map(|(x, _)| x).collect(),
    }
}

fn action_rows(module: &LeftModule) -> Option<Vec<String>> {
    let elems = module.carrier().elements()?;
    let t = module.scalars();
    let mut rows = Vec::new();
    for s in listed_scalars(t) {
        let images: Vec<String> = elems
            .iter()
            .map(|m| module.carrier().label(&module.act_unchecked(&s, m)))
            .collect();
        rows.push(format!("{}: {}", t.label(&s), images.join(" ")));
    }
    Some(rows)
}

fn describe_module(report: &mut Report, module: &LeftModule) {
    report.fact("module", module.name().to_string());
    report.fact("scalars", module.scalars().describe());
    report.fact("carrier", module.carrier().describe());
    if let Some(e) = module.carrier().elements() {
        report.fact("carrier-elements", e.iter().map(|x| module.carrier().label(x)).collect::<Vec<_>>());
    }
    if let Some(rows) = action_rows(module) {
        report.fact("action", rows);
    }
}

pub fn monoid_check(path: &Path, lim: &Limits) -> Result<Report> {
    let spec = format::parse_monoid(&format::read_file(path)?).map_err(|e| in_file(path, e))?;
    let mut report = Report::new("monoid check");
    report.fact("file", path.display().to_string());
    let r = match &spec {
        MonoidSpec::Table(t) => {
            report.fact("size", t.len());
            t.check_axioms()
        }
        MonoidSpec::Free(_) => spec.build()?.check_axioms_bounded(lim.bound),
    };
    axioms(&mut report, "axioms", &r);
    Ok(report)
}

pub fn monoid_product(paths: &[impl AsRef<Path>], coproduct: bool, lim: &Limits) -> Result<Report> {
    let parts = paths.iter().map(|p| format::load_monoid(p.as_ref())).collect::<std::result::Result<Vec<_>, _>>()?;
    let (verb, m) = if coproduct {
        ("monoid coproduct", AbsMonoid::coproduct(parts)?)
    } else {
        ("monoid product", AbsMonoid::product(parts)?)
    };
    let mut report = Report::new(verb);
    describe_monoid(&mut report, &m, lim.bound);
    axioms(&mut report, "axioms", &m.check_axioms_bounded(lim.bound));
    Ok(report)
}

pub fn monoid_quotient(path: &Path, kill: &[String], lim: &Limits) -> Result<Report> {
    let m = format::load_monoid(path)?;
    let gens = kill.iter().map(|k| m.parse(k)).collect::<std::result::Result<Vec<_>, _>>()?;
    let q = m.quotient(SubMonoid::generated_by(&m, gens)?)?;
    let mut report = Report::new("monoid quotient");
    report.fact("monoid", m.describe());
    report.fact("kill", kill.to_vec());
    let domain: Vec<MonElement> = match m.elements() {
        Some(e) => e,
        None => m.elements_up_to(lim.bound).into_iter().map(|(x, _)| x).collect(),
    };
    let (mut killed, mut kept) = (Vec::new(), Vec::new());
    for x in &domain {
        if x.is_zero() {
            continue;
        }
        if q.class_of(x)?.is_zero() {
            killed.push(m.label(x));
        } else {
            kept.push(m.label(x));
        }
    }
    report.fact("sent-to-zero", killed);
    report.fact("surviving", kept);
    if let Some(t) = q.to_table() {
        report.fact("table", table_rows(&t));
    }
    axioms(&mut report, "axioms", &q.check_axioms_bounded(lim.bound));
    Ok(report)
}

pub fn module_check(path: &Path, lim: &Limits) -> Result<Report> {
    let module = format::load_module(path)?;
    let mut report = Report::new("module check");
    describe_module(&mut report, &module);
    axioms(&mut report, "axioms", &module.check_module_axioms(lim.bound));
    Ok(report)
}

pub fn module_from_ts(path: &Path, lim: &Limits) -> Result<Report> {
    let ts = format::load_transition_system(path)?;
    let module = module_from_transition_system(&ts);
    let mut report = Report::new("module from-ts");
    describe_module(&mut report, &module);
    axioms(&mut report, "axioms", &module.check_module_axioms(lim.bound));
    report.check("round-trip", transition_system_from_module(&module)? == ts);
    Ok(report)
}

pub fn module_to_ts(path: &Path) -> Result<Report> {
    let module = format::load_module(path)?;
    let ts = transition_system_from_module(&module)?;
    let mut report = Report::new("module to-ts");
    report.fact("states", ts.states.len());
    report.fact("transitions", ts.transitions.len());
    report.fact("ts", format::write_transition_system(&ts).lines().map(str::to_string).collect::<Vec<_>>());
    Ok(report)
}

fn scalar_change(l: &Path, lim: &Limits) -> Result<ScalarChange> {
    Ok(ScalarChange::new(format::load_morphism(l)?, lim.bound)?)
}

pub fn scalars_restrict(l: &Path, module: &Path, lim: &Limits) -> Result<Report> {
    let l = scalar_change(l, lim)?;
    let restricted = restrict(&l, &format::load_module(module)?)?;
    let mut report = Report::new("scalars restrict");
    describe_module(&mut report, &restricted);
    axioms(&mut report, "axioms", &restricted.check_module_axioms(lim.bound));
    Ok(report)
}

pub fn scalars_extend(l: &Path, module: &Path, lim: &Limits) -> Result<Report> {
    let l = scalar_change(l, lim)?;
    let module = format::load_module(module)?;
    let mut report = Report::new("scalars extend");
    match module.carrier() {
        Carrier::Set(_) => {
            let ext = extend_set(&l, &module)?;
            report.fact("kind", "pointed-set");
            report.fact("classes", ext.class_count());
            let m = ext.module();
            let members: Vec<String> = m
                .carrier()
                .elements()
                .unwrap_or_default()
                .iter()
                .filter(|c| !c.is_zero())
                .map(|c| {
                    let pairs: Vec<String> = ext
                        .members(c)
                        .iter()
                        .map(|(t, s)| format!("<{},{}>", l.target().label(t), module.carrier().label(s)))
                        .collect();
                    format!("{} = {{{}}}", m.carrier().label(c), pairs.join(", "))
                })
                .collect();
            report.fact("class-members", members);
            describe_module(&mut report, m);
            axioms(&mut report, "axioms", &m.check_module_axioms(lim.bound));
        }
        Carrier::Mon(_) => {
            let ext = extend_mon(&l, &module, lim.budget)?;
            let w = ext.monoid();
            report.fact("kind", "monoid");
            report.fact("letters", w.letter_count());
            report.fact("rules", w.rule_count());
            report.fact("saturated", w.is_saturated());
            report.fact("trivial", w.is_trivial());
            describe_module(&mut report, ext.module());
            if w.is_saturated() {
                axioms(&mut report, "axioms", &ext.module().check_module_axioms(lim.bound));
            } else {
                report.fact("axioms", "undecided");
            }
        }
    }
    Ok(report)
}

pub fn scalars_coextend(l: &Path, module: &Path, lim: &Limits) -> Result<Report> {
    let l = scalar_change(l, lim)?;
    let co = coextend(&l, &format::load_module(module)?)?;
    let mut report = Report::new("scalars coextend");
    report.fact("maps", co.len());
    describe_module(&mut report, co.module());
    axioms(&mut report, "axioms", &co.module().check_module_axioms(lim.bound));
    Ok(report)
}

pub fn scalars_adjoint_test(side: Side, count: usize, lim: &Limits) -> Result<Report> {
    let instances = corpus::adjunction_instances(&mut rng(lim.seed), lim.max_size, count);
    let mut report = Report::new("scalars adjoint-test");
    report.fact("side", side.to_string());
    report.fact("seed", lim.seed);
    report.fact("max-size", lim.max_size);
    report.fact("instances", instances.len());
    let (mut homs, mut trips, mut squares) = (0usize, 0usize, 0usize);
    let mut failures = Vec::new();
    for (i, inst) in instances.iter().enumerate() {
        let r = match side {
            Side::Left => adjunction_left_check(&inst.l, &inst.over_source, &inst.over_target, lim.budget)?,
            Side::Right => adjunction_right_check(&inst.l, &inst.over_target, &inst.over_source)?,
        };
        homs += r.homs_over_target;
        trips += r.round_trips;
        squares += r.naturality_squares;
        failures.extend(r.failures.iter().map(|f| format!("instance {i}: {f}")));
    }
    report.fact("homs", homs);
    report.fact("round-trips", trips);
    report.fact("naturality-squares", squares);
    report.check("adjunction", failures.is_empty());
    if !failures.is_empty() {
        report.fact("failures", failures);
    }
    Ok(report)
}

fn parse_vertex(space: &Space, s: &str, flag: &str) -> Result<u32> {
    space
        .parse_vertex(s)
        .ok_or_else(|| CliError::Usage(format!("{flag}: `{s}` is not a vertex of {}", space.describe())))
}

pub fn space_classes(model: &Path, from: &str, to: &str) -> Result<Report> {
    let space = format::load_space(model)?;
    let (a, b) = (parse_vertex(&space, from, "--from")?, parse_vertex(&space, to, "--to")?);
    let pi = Pi1Module::new(&space);
    let classes = pi.classes().classes(a, b);
    let mut report = Report::new("space classes");
    report.fact("model", space.describe());
    report.fact("from", space.vertex_label(a));
    report.fact("to", space.vertex_label(b));
    report.fact("classes", classes.len());
    report.fact(
        "representatives",
        classes.iter().map(|c| pi.left().carrier().label(c)).collect::<Vec<_>>(),
    );
    Ok(report)
}

pub fn space_pi1_act(model: &Path, trace: &str, class: &str) -> Result<Report> {
    let space = format::load_space(model)?;
    let pi = Pi1Module::new(&space);
    let image = pi.act(trace, class)?;
    let mut report = Report::new("space pi1-act");
    report.fact("trace", trace);
    report.fact("class", class);
    let label = if image.is_zero() {
        "*".to_string()
    } else {
        pi.left().carrier().label(&image)
    };
    report.fact("image", label);
    Ok(report)
}

/// Functor laws for one map `f` (and `g` after it when given).
pub fn functor_laws(f: &SpaceMap, g: Option<&SpaceMap>, bound: usize) -> Result<Vec<(String, bool)>> {
    let mut out = Vec::new();
    let id = SpaceMap::identity(f.source());
    let tid = trace_monoid_map(&id);
    out.push(("T(id) = id".into(), tid.agrees_with(&MonoidMorphism::identity(tid.source()), bound)));
    let tf = trace_monoid_map(f);
    out.push(("T(f) is a morphism".into(), tf.check_morphism(bound).is_ok()));
    let (src, tgt) = (Pi1Module::new(f.source()), Pi1Module::new(f.target()));
    let pf = pi1_map(f, &src, &tgt)?;
    out.push(("pi1(f) is a module morphism".into(), pf.check(bound).is_ok()));
    if let Some(g) = g {
        let gf = f.then(g)?;
        let composed = tf.then(&trace_monoid_map(g))?;
        out.push(("T(g.f) = T(g).T(f)".into(), trace_monoid_map(&gf).agrees_with(&composed, bound)));
        let top = Pi1Module::new(g.target());
        let pg = pi1_map(g, &tgt, &top)?;
        let pgf = pi1_map(&gf, &src, &top)?;
        out.push(("pi1(g.f) = pi1(g).pi1(f)".into(), pgf.agrees_with(&pf.then(&pg)?, bound)));
    }
    Ok(out)
}

pub fn space_functor_test(maps: Option<(&Path, &Path, &Path)>, count: usize, lim: &Limits) -> Result<Report> {
    let mut report = Report::new("space functor-test");
    let mut failures = Vec::new();
    let mut checked = 0usize;
    match maps {
        Some((source, target, dmap)) => {
            let (s, t) = (format::load_space(source)?, format::load_space(target)?);
            let d = format::parse_dmap(&format::read_file(dmap)?, &s, &t).map_err(|e| in_file(dmap, e))?;
            let f = SpaceMap::new(s, t, d)?;
            for (law, ok) in functor_laws(&f, None, lim.bound)? {
                checked += 1;
                if !ok {
                    failures.push(law);
                }
            }
        }
        None => {
            report.fact("seed", lim.seed);
            let mut r = rng(lim.seed);
            let side = lim.max_size.max(1) as u32;
            for i in 0..count {
                let a = corpus::random_grid(&mut r, side, side, 0.2);
                let f = corpus::random_embedding(&mut r, &a, 0.2);
                let b = match f.target() {
                    Space::Grid(b) => b.clone(),
                    Space::Graph(_) => unreachable!("grid embeddings"),
                };
                let g = corpus::random_embedding(&mut r, &b, 0.2);
                for (law, ok) in functor_laws(&f, Some(&g), lim.bound)? {
                    checked += 1;
                    if !ok {
                        failures.push(format!("embedding {i}: {law}"));
                    }
                }
            }
            report.fact("embeddings", count);
        }
    }
    report.fact("laws-checked", checked);
    report.check("functoriality", failures.is_empty());
    if !failures.is_empty() {
        report.fact("failures", failures);
    }
    Ok(report)
}

/// Exit code for an error: 2 for unreadable or malformed input, 1 otherwise.
pub fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Usage(_) | CliError::Core(Error::Parse { .. } | Error::Io(_)) => 2,
        CliError::Core(_) => 1,
    }
}
