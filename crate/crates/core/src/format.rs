//! Plain-text input formats, one datum per line. `#` starts a comment.
//!
//! Every parser reports the 1-based line of the first offending datum. Files
//! that mention other files (modules, morphisms) resolve them through a
//! caller-supplied loader so paths can be taken relative to the referring
//! file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::absorption_monoid::{AbsMonoid, FiniteAbsMonoid, FreeAlphabet, MonElement, MonoidMorphism};
use crate::directed_space::{DMap, DirectedGraph, GridSpace, Space};
use crate::error::{Error, Result};
use crate::pointed_modules::{module_from_transition_system, Carrier, LeftModule, PointedSet, TransitionSystem};

struct Line<'a> {
    no: usize,
    words: Vec<&'a str>,
}

impl Line<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse(self.no, message)
    }

    /// Words after the keyword, requiring exactly `n` of them.
    fn args(&self, n: usize) -> Result<&[&str]> {
        let rest = &self.words[1..];
        if rest.len() != n {
            return Err(self.err(format!("`{}` takes {n} argument(s), got {}", self.words[0], rest.len())));
        }
        Ok(rest)
    }

    fn number(&self, s: &str) -> Result<u32> {
        s.parse().map_err(|_| self.err(format!("expected a non-negative integer, got `{s}`")))
    }
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let words: Vec<&str> = content.split_whitespace().collect();
            (!words.is_empty()).then_some(Line { no: i + 1, words })
        })
        .collect()
}

/// Split `row a: x y z` style lines at the colon.
fn split_row<'a>(line: &Line<'a>) -> Result<(&'a str, Vec<&'a str>)> {
    let joined: Vec<&str> = line.words[1..].to_vec();
    let first = *joined.first().ok_or_else(|| line.err("missing row name"))?;
    if let Some(name) = first.strip_suffix(':') {
        return Ok((name, joined[1..].to_vec()));
    }
    match joined.get(1) {
        Some(&":") => Ok((first, joined[2..].to_vec())),
        _ => Err(line.err("expected `<name>:` after the keyword")),
    }
}

fn header<'a, 'b>(ls: &'b [Line<'a>], what: &str) -> Result<&'b Line<'a>> {
    let first = ls.first().ok_or_else(|| Error::parse(1, format!("empty {what} file")))?;
    if first.words[0] != what {
        return Err(first.err(format!("expected `{what} ...` header, got `{}`", first.words[0])));
    }
    Ok(first)
}

/// A parsed monoid file. Tables are kept unvalidated so that checks can
/// report every broken law.
#[derive(Clone, Debug, PartialEq)]
pub enum MonoidSpec {
    Table(FiniteAbsMonoid),
    Free(Vec<String>),
}

impl MonoidSpec {
    /// The monoid, rejecting tables that break a law.
    pub fn build(&self) -> Result<AbsMonoid> {
        match self {
            MonoidSpec::Table(t) => AbsMonoid::from_table(t.clone()),
            MonoidSpec::Free(letters) => Ok(AbsMonoid::free(letters)),
        }
    }
}

/// `monoid table` + `elements <name>...` (first is 0, second is 1) + one
/// `row <name>: <name>...` per element; or `monoid free` + `letters
/// <name>...`.
pub fn parse_monoid(text: &str) -> Result<MonoidSpec> {
    let ls = lines(text);
    let head = header(&ls, "monoid")?;
    match head.args(1)?[0] {
        "table" => parse_table(head, &ls[1..]),
        "free" => {
            let mut letters: Option<Vec<String>> = None;
            for l in &ls[1..] {
                match l.words[0] {
                    "letters" if letters.is_none() => letters = Some(l.words[1..].iter().map(|s| s.to_string()).collect()),
                    "letters" => return Err(l.err("duplicate `letters` line")),
                    w => return Err(l.err(format!("unexpected `{w}` in a free monoid file"))),
                }
            }
            let letters = letters.ok_or_else(|| head.err("missing `letters` line"))?;
            check_unique(head, &letters, "letter")?;
            Ok(MonoidSpec::Free(letters))
        }
        other => Err(head.err(format!("unknown monoid kind `{other}` (expected table or free)"))),
    }
}

fn check_unique(line: &Line, names: &[String], what: &str) -> Result<()> {
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(line.err(format!("duplicate {what} `{n}`")));
        }
    }
    Ok(())
}

fn parse_table(head: &Line, rest: &[Line]) -> Result<MonoidSpec> {
    let mut names: Option<(usize, Vec<String>)> = None;
    let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for l in rest {
        match l.words[0] {
            "elements" => {
                if names.is_some() {
                    return Err(l.err("duplicate `elements` line"));
                }
                let ns: Vec<String> = l.words[1..].iter().map(|s| s.to_string()).collect();
                if ns.is_empty() {
                    return Err(l.err("`elements` needs at least the zero"));
                }
                check_unique(l, &ns, "element")?;
                names = Some((l.no, ns));
            }
            "row" => {
                let (_, ns) = names.as_ref().ok_or_else(|| l.err("`row` before `elements`"))?;
                let (name, entries) = split_row(l)?;
                let idx = ns
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| l.err(format!("unknown element `{name}`")))?;
                if entries.len() != ns.len() {
                    return Err(l.err(format!("row `{name}` has {} entries, expected {}", entries.len(), ns.len())));
                }
                let row = entries
                    .iter()
                    .map(|e| ns.iter().position(|n| n == e).ok_or_else(|| l.err(format!("unknown element `{e}`"))))
                    .collect::<Result<Vec<_>>>()?;
                if rows.insert(idx, row).is_some() {
                    return Err(l.err(format!("duplicate row `{name}`")));
                }
            }
            w => return Err(l.err(format!("unexpected `{w}` in a table monoid file"))),
        }
    }
    let (_, ns) = names.ok_or_else(|| head.err("missing `elements` line"))?;
    if let Some(missing) = (0..ns.len()).find(|i| !rows.contains_key(i)) {
        return Err(head.err(format!("missing row `{}`", ns[missing])));
    }
    let one = if ns.len() > 1 { 1 } else { 0 };
    let table = rows.into_values().collect();
    Ok(MonoidSpec::Table(FiniteAbsMonoid::new(ns, 0, one, table)))
}

/// `ts` + `states <name>...` + `letters <name>...` + `trans <state>
/// <letter> <state>` lines.
pub fn parse_transition_system(text: &str) -> Result<TransitionSystem> {
    let ls = lines(text);
    let head = header(&ls, "ts")?;
    head.args(0)?;
    let mut states: Option<Vec<String>> = None;
    let mut letters: Option<Vec<String>> = None;
    let mut ts: Option<TransitionSystem> = None;
    for l in &ls[1..] {
        match l.words[0] {
            "states" | "letters" if ts.is_some() => {
                return Err(l.err(format!("`{}` after the first transition", l.words[0])))
            }
            "states" => {
                let ns: Vec<String> = l.words[1..].iter().map(|s| s.to_string()).collect();
                check_unique(l, &ns, "state")?;
                if states.replace(ns).is_some() {
                    return Err(l.err("duplicate `states` line"));
                }
            }
            "letters" => {
                let ns: Vec<String> = l.words[1..].iter().map(|s| s.to_string()).collect();
                check_unique(l, &ns, "letter")?;
                if letters.replace(ns).is_some() {
                    return Err(l.err("duplicate `letters` line"));
                }
            }
            "trans" => {
                if ts.is_none() {
                    let s = states.clone().ok_or_else(|| l.err("`trans` before `states`"))?;
                    let a = letters.clone().ok_or_else(|| l.err("`trans` before `letters`"))?;
                    ts = Some(TransitionSystem::new(s, a));
                }
                let sys = ts.as_mut().unwrap();
                let args = l.args(3)?;
                let state = |n: &str| {
                    sys.states
                        .iter()
                        .position(|s| s == n)
                        .ok_or_else(|| l.err(format!("unknown state `{n}`")))
                };
                let (from, to) = (state(args[0])?, state(args[2])?);
                let letter = sys
                    .letters
                    .iter()
                    .position(|s| s == args[1])
                    .ok_or_else(|| l.err(format!("unknown letter `{}`", args[1])))?;
                sys.add(from, letter, to).map_err(|e| l.err(e.to_string()))?;
            }
            w => return Err(l.err(format!("unexpected `{w}` in a transition-system file"))),
        }
    }
    match ts {
        Some(ts) => Ok(ts),
        None => {
            let s = states.ok_or_else(|| head.err("missing `states` line"))?;
            let a = letters.ok_or_else(|| head.err("missing `letters` line"))?;
            Ok(TransitionSystem::new(s, a))
        }
    }
}

/// `space grid` + `size W H` + `forbidden rect x0 y0 x1 y1` lines (cells
/// `x0 <= i < x1`, `y0 <= j < y1`); or `space graph` + `vertex <name>` +
/// `edge <name> <src> <dst>` lines.
pub fn parse_space(text: &str) -> Result<Space> {
    let ls = lines(text);
    let head = header(&ls, "space")?;
    match head.args(1)?[0] {
        "grid" => {
            let mut grid: Option<GridSpace> = None;
            for l in &ls[1..] {
                match l.words[0] {
                    "size" => {
                        if grid.is_some() {
                            return Err(l.err("duplicate `size` line"));
                        }
                        let a = l.args(2)?;
                        grid = Some(GridSpace::new(l.number(a[0])?, l.number(a[1])?).map_err(|e| l.err(e.to_string()))?);
                    }
                    "forbidden" => {
                        let g = grid.as_mut().ok_or_else(|| l.err("`forbidden` before `size`"))?;
                        let a = l.args(5)?;
                        if a[0] != "rect" {
                            return Err(l.err(format!("expected `forbidden rect`, got `forbidden {}`", a[0])));
                        }
                        let n = a[1..].iter().map(|s| l.number(s)).collect::<Result<Vec<_>>>()?;
                        g.forbid_rect(n[0], n[1], n[2], n[3]).map_err(|e| l.err(e.to_string()))?;
                    }
                    w => return Err(l.err(format!("unexpected `{w}` in a grid file"))),
                }
            }
            Ok(Space::Grid(grid.ok_or_else(|| head.err("missing `size` line"))?))
        }
        "graph" => {
            let mut g = DirectedGraph::new();
            for l in &ls[1..] {
                match l.words[0] {
                    "vertex" => {
                        g.add_vertex(l.args(1)?[0]).map_err(|e| l.err(e.to_string()))?;
                    }
                    "edge" => {
                        let a = l.args(3)?;
                        g.add_edge(a[0], a[1], a[2]).map_err(|e| l.err(e.to_string()))?;
                    }
                    w => return Err(l.err(format!("unexpected `{w}` in a graph file"))),
                }
            }
            Ok(Space::Graph(g))
        }
        other => Err(head.err(format!("unknown space kind `{other}` (expected grid or graph)"))),
    }
}

/// `dmap translate dx dy` between grids; or `dmap graph` + `vertex <src>
/// <dst>` + `edge <src> <dst>` lines between graphs (by name).
pub fn parse_dmap(text: &str, source: &Space, target: &Space) -> Result<DMap> {
    let ls = lines(text);
    let head = header(&ls, "dmap")?;
    match head.words.get(1).copied() {
        Some("translate") => {
            let a = head.args(3)?;
            if ls.len() > 1 {
                return Err(ls[1].err("a translation takes no further lines"));
            }
            Ok(DMap::GridTranslation {
                dx: head.number(a[1])?,
                dy: head.number(a[2])?,
            })
        }
        Some("graph") => {
            let (Space::Graph(s), Space::Graph(t)) = (source, target) else {
                return Err(head.err("graph d-maps need graph spaces"));
            };
            let mut vm: Vec<Option<u32>> = vec![None; s.vertices.len()];
            let mut em: Vec<Option<u32>> = vec![None; s.edges.len()];
            for l in &ls[1..] {
                let a = l.args(2)?;
                let (slot, src, dst) = match l.words[0] {
                    "vertex" => (
                        s.vertex_index(a[0]).map(|i| &mut vm[i as usize]),
                        a[0],
                        t.vertex_index(a[1]),
                    ),
                    "edge" => (s.edge_index(a[0]).map(|i| &mut em[i as usize]), a[0], t.edge_index(a[1])),
                    w => return Err(l.err(format!("unexpected `{w}` in a graph d-map file"))),
                };
                let slot = slot.ok_or_else(|| l.err(format!("unknown source {} `{src}`", l.words[0])))?;
                let dst = dst.ok_or_else(|| l.err(format!("unknown target {} `{}`", l.words[0], a[1])))?;
                if slot.replace(dst).is_some() {
                    return Err(l.err(format!("{} `{src}` mapped twice", l.words[0])));
                }
            }
            let complete = |v: Vec<Option<u32>>, names: Vec<&str>, what: &str| {
                v.iter()
                    .zip(&names)
                    .map(|(x, n)| x.ok_or_else(|| head.err(format!("no image for {what} `{n}`"))))
                    .collect::<Result<Vec<u32>>>()
            };
            Ok(DMap::Graph {
                vertex_map: complete(vm, s.vertices.iter().map(|x| x.as_str()).collect(), "vertex")?,
                edge_map: complete(em, s.edges.iter().map(|e| e.label.as_str()).collect(), "edge")?,
            })
        }
        _ => Err(head.err("expected `dmap translate dx dy` or `dmap graph`")),
    }
}

/// Resolves a file reference inside another file.
pub type MonoidLoader<'a> = dyn FnMut(&str) -> Result<AbsMonoid> + 'a;

/// `module` + `scalars <monoid-file>` + `carrier set <name>...` (first is
/// the basepoint) or `carrier monoid <monoid-file>` + `act <t>: <image>...`
/// lines listing `t.m` for every carrier element in declaration order.
/// Missing rows for `0` and `1` default to the zero and identity actions.
pub fn parse_module(text: &str, load: &mut MonoidLoader) -> Result<LeftModule> {
    let ls = lines(text);
    let head = header(&ls, "module")?;
    head.args(0)?;
    let mut scalars: Option<AbsMonoid> = None;
    let mut carrier: Option<Carrier> = None;
    let mut rows: BTreeMap<MonElement, (usize, Vec<MonElement>)> = BTreeMap::new();
    for l in &ls[1..] {
        match l.words[0] {
            "scalars" => {
                if scalars.is_some() {
                    return Err(l.err("duplicate `scalars` line"));
                }
                scalars = Some(load(l.args(1)?[0]).map_err(|e| l.err(e.to_string()))?);
            }
            "carrier" => {
                if carrier.is_some() {
                    return Err(l.err("duplicate `carrier` line"));
                }
                carrier = Some(match l.words.get(1).copied() {
                    Some("set") => {
                        let names: Vec<String> = l.words[2..].iter().map(|s| s.to_string()).collect();
                        if names.is_empty() {
                            return Err(l.err("a pointed set needs its basepoint"));
                        }
                        check_unique(l, &names, "carrier element")?;
                        Carrier::Set(PointedSet::finite(&names))
                    }
                    Some("monoid") => Carrier::Mon(load(l.args(2)?[1]).map_err(|e| l.err(e.to_string()))?),
                    _ => return Err(l.err("expected `carrier set <names>` or `carrier monoid <file>`")),
                });
            }
            "act" => {
                let (t_name, images) = split_row(l)?;
                let ts = scalars.as_ref().ok_or_else(|| l.err("`act` before `scalars`"))?;
                let c = carrier.as_ref().ok_or_else(|| l.err("`act` before `carrier`"))?;
                let t = ts.parse(t_name).map_err(|_| l.err(format!("unknown scalar `{t_name}`")))?;
                let elems = c.elements().ok_or_else(|| l.err("carrier must be finite"))?;
                if images.len() != elems.len() {
                    return Err(l.err(format!("{} images for {} carrier elements", images.len(), elems.len())));
                }
                let imgs = images
                    .iter()
                    .map(|s| c.parse(s).map_err(|_| l.err(format!("unknown carrier element `{s}`"))))
                    .collect::<Result<Vec<_>>>()?;
                if rows.insert(t, (l.no, imgs)).is_some() {
                    return Err(l.err(format!("duplicate row for `{t_name}`")));
                }
            }
            w => return Err(l.err(format!("unexpected `{w}` in a module file"))),
        }
    }
    let scalars = scalars.ok_or_else(|| head.err("missing `scalars` line"))?;
    let carrier = carrier.ok_or_else(|| head.err("missing `carrier` line"))?;
    if let Some(alphabet) = scalars.as_free() {
        return free_module(&head, alphabet, &carrier, &rows);
    }
    let ts = scalars
        .elements()
        .ok_or_else(|| head.err("scalars must be finite or free"))?;
    let ms = carrier.elements().expect("checked when parsing rows");
    let mut table = BTreeMap::new();
    for t in &ts {
        let imgs = match rows.get(t) {
            Some((_, imgs)) => imgs.clone(),
            None if t.is_zero() => vec![MonElement::Zero; ms.len()],
            None if *t == scalars.one() => ms.clone(),
            None => return Err(head.err(format!("missing `act {}:` row", scalars.label(t)))),
        };
        for (m, img) in ms.iter().zip(imgs) {
            table.insert((t.clone(), m.clone()), img);
        }
    }
    LeftModule::from_table(scalars, carrier, table).map_err(|e| head.err(e.to_string()))
}

/// Over a free monoid only the letters need rows; words act letter by
/// letter. The result is the module of the transition system the rows
/// describe, so its basepoint is labelled `*`.
fn free_module(
    head: &Line,
    alphabet: &FreeAlphabet,
    carrier: &Carrier,
    rows: &BTreeMap<MonElement, (usize, Vec<MonElement>)>,
) -> Result<LeftModule> {
    let Carrier::Set(set) = carrier else {
        return Err(head.err("modules over a free monoid need a `carrier set`"));
    };
    let ms = set.elements().expect("finite carrier");
    let states: Vec<String> = ms[1..].iter().map(|m| set.label(m)).collect();
    let mut ts = TransitionSystem::new(states, alphabet.letters.clone());
    for (t, (no, imgs)) in rows {
        let err = |m: String| Error::parse(*no, m);
        let letter = match t.as_word() {
            Some([a]) => *a as usize,
            _ => return Err(err("over a free monoid only letters get `act` rows".into())),
        };
        if !imgs[0].is_zero() {
            return Err(err("a letter must send the basepoint to itself".into()));
        }
        for (i, img) in imgs.iter().enumerate().skip(1) {
            if let Some(j) = ms.iter().position(|m| m == img).filter(|&j| j > 0) {
                ts.add(i - 1, letter, j - 1).map_err(|e| err(e.to_string()))?;
            }
        }
    }
    for (i, l) in alphabet.letters.iter().enumerate() {
        if !rows.contains_key(&MonElement::letter(i as u32)) {
            return Err(head.err(format!("missing `act {l}:` row")));
        }
    }
    Ok(module_from_transition_system(&ts))
}

/// `morphism` + `source <monoid-file>` + `target <monoid-file>` + `map <x>
/// <y>` lines. Unlisted `0` and `1` map to `0` and `1`.
pub fn parse_morphism(text: &str, load: &mut MonoidLoader) -> Result<MonoidMorphism> {
    let ls = lines(text);
    let head = header(&ls, "morphism")?;
    head.args(0)?;
    let (mut source, mut target): (Option<AbsMonoid>, Option<AbsMonoid>) = (None, None);
    let mut images = BTreeMap::new();
    for l in &ls[1..] {
        match l.words[0] {
            "source" | "target" => {
                let m = load(l.args(1)?[0]).map_err(|e| l.err(e.to_string()))?;
                let slot = if l.words[0] == "source" { &mut source } else { &mut target };
                if slot.replace(m).is_some() {
                    return Err(l.err(format!("duplicate `{}` line", l.words[0])));
                }
            }
            "map" => {
                let a = l.args(2)?;
                let s = source.as_ref().ok_or_else(|| l.err("`map` before `source`"))?;
                let t = target.as_ref().ok_or_else(|| l.err("`map` before `target`"))?;
                let x = s.parse(a[0]).map_err(|_| l.err(format!("unknown source element `{}`", a[0])))?;
                let y = t.parse(a[1]).map_err(|_| l.err(format!("unknown target element `{}`", a[1])))?;
                if images.insert(x, y).is_some() {
                    return Err(l.err(format!("`{}` mapped twice", a[0])));
                }
            }
            w => return Err(l.err(format!("unexpected `{w}` in a morphism file"))),
        }
    }
    let source = source.ok_or_else(|| head.err("missing `source` line"))?;
    let target = target.ok_or_else(|| head.err("missing `target` line"))?;
    images.entry(MonElement::Zero).or_insert(MonElement::Zero);
    images.entry(source.one()).or_insert_with(|| target.one());
    MonoidMorphism::from_table(source, target, images).map_err(|e| head.err(e.to_string()))
}

/// Read a file, mapping I/O failures to [`Error::Io`].
pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Attach the file a parse error comes from, unless it already names one.
pub fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { file: None, line, message } => Error::Parse {
            file: Some(path.display().to_string()),
            line,
            message,
        },
        other => other,
    }
}

fn relative(base: &Path, reference: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new(".")).join(reference)
}

pub fn load_monoid(path: &Path) -> Result<AbsMonoid> {
    let spec = parse_monoid(&read_file(path)?).map_err(|e| in_file(path, e))?;
    spec.build()
}

pub fn load_module(path: &Path) -> Result<LeftModule> {
    let text = read_file(path)?;
    parse_module(&text, &mut |r| load_monoid(&relative(path, r))).map_err(|e| in_file(path, e))
}

pub fn load_morphism(path: &Path) -> Result<MonoidMorphism> {
    let text = read_file(path)?;
    parse_morphism(&text, &mut |r| load_monoid(&relative(path, r))).map_err(|e| in_file(path, e))
}

pub fn load_space(path: &Path) -> Result<Space> {
    parse_space(&read_file(path)?).map_err(|e| in_file(path, e))
}

pub fn load_transition_system(path: &Path) -> Result<TransitionSystem> {
    parse_transition_system(&read_file(path)?).map_err(|e| in_file(path, e))
}

/// Render a transition system in the format read by
/// [`parse_transition_system`].
pub fn write_transition_system(ts: &TransitionSystem) -> String {
    let mut out = format!("ts\nstates {}\nletters {}\n", ts.states.join(" "), ts.letters.join(" "));
    for ((s, a), t) in &ts.transitions {
        out.push_str(&format!("trans {} {} {}\n", ts.states[*s], ts.letters[*a], ts.states[*t]));
    }
    out
}

/// Render a finite table monoid in the format read by [`parse_monoid`].
/// Returns `None` for tables whose zero and one are not the first two
/// elements.
pub fn write_table(t: &FiniteAbsMonoid) -> Option<String> {
    if t.zero() != 0 || (t.len() > 1 && t.one() != 1) {
        return None;
    }
    let mut out = format!("monoid table\nelements {}\n", t.names().join(" "));
    for (i, row) in t.table().iter().enumerate() {
        let entries: Vec<&str> = row.iter().map(|&j| t.name(j)).collect();
        out.push_str(&format!("row {}: {}\n", t.name(i), entries.join(" ")));
    }
    Some(out)
}
