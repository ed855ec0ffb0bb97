use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use chainsheaf::chaincore::{
    build_chain_graph, validate_simple_chain, Assembly, ChainGraph, ComponentData, EdgeDatum, GraphDescription,
    LineAssembly, OrbitDatum, SimpleChainDatum, TopWedgeData, VectorAssembly,
};
use chainsheaf::filtobj::{Degree, FilteredObject, Line, TameQuotientDatum};
use chainsheaf::groupdata::{validate_group_datum, GroupDatum, NormalCharacter};
use chainsheaf::intlin::{AbHom, Element, FgAbelianGroup, IntMatrix, Presentation, Subgroup};
use chainsheaf::tamering::{
    ComponentGroupData, FInfinity, IdealAdicComponent, IdealAdicPresentation, IdealKind, WeightedFreePresentation,
};
use chainsheaf::Error;
use num_bigint::BigInt;

use super::schema::*;

/// The only schema version understood so far.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    Syntax,
    /// Well-formed but not matching the schema: missing fields, bad kinds, wrong lengths.
    Schema,
    UnresolvedReference,
    IllDefinedHom,
    InvariantViolation,
}

impl ErrorKind {
    pub fn label(self) -> &'static str {
        match self {
            ErrorKind::Syntax => "syntax",
            ErrorKind::Schema => "schema",
            ErrorKind::UnresolvedReference => "unresolved-reference",
            ErrorKind::IllDefinedHom => "ill-defined-hom",
            ErrorKind::InvariantViolation => "invariant-violation",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError {
    pub kind: ErrorKind,
    pub origin: String,
    /// One-based line and column.
    pub position: Option<(usize, usize)>,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.origin)?;
        if let Some((line, col)) = self.position {
            write!(f, ":{line}:{col}")?;
        }
        write!(f, ": {} error: {}", self.kind.label(), self.message)
    }
}

/// Every problem found in one file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadErrors(pub Vec<FormatError>);

impl LoadErrors {
    /// The kind of the first error, which decides how the failure is reported.
    pub fn primary_kind(&self) -> ErrorKind {
        self.0.first().map(|e| e.kind).unwrap_or(ErrorKind::Schema)
    }
}

impl fmt::Display for LoadErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for LoadErrors {}

#[derive(Clone, Debug)]
pub struct GroupEntry {
    pub group: FgAbelianGroup,
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct HomEntry {
    pub source: String,
    pub target: String,
    pub hom: AbHom,
}

#[derive(Clone, Debug)]
pub struct SimpleEntry {
    pub datum: SimpleChainDatum,
    pub char_s1: String,
    pub char_l0: String,
}

#[derive(Clone, Debug)]
pub enum ChainEntry {
    /// A single closed orbit, with nothing to glue.
    Orbit {
        chars: String,
        group: FgAbelianGroup,
    },
    Simple(Box<SimpleEntry>),
    Graph {
        graph: String,
    },
}

#[derive(Clone, Debug)]
pub struct ObjectEntry {
    pub chain: String,
    pub object: FilteredObject,
}

#[derive(Clone, Debug)]
pub enum AssemblyEntry {
    /// A line bundle on a chain: open characters, then closed ones.
    Chain {
        chain: String,
        open: Vec<Element>,
        closed: Vec<Element>,
    },
    Graph {
        graph: String,
        assembly: Assembly,
    },
}

#[derive(Clone, Debug)]
pub enum RingEntry {
    Weighted(WeightedFreePresentation),
    IdealAdic(IdealAdicPresentation),
}

#[derive(Clone, Debug)]
pub struct QuotientEntry {
    pub chain: String,
    pub datum: TameQuotientDatum,
}

/// A fully resolved and validated chain file.
#[derive(Clone, Debug)]
pub struct ChainFile {
    pub origin: String,
    pub version: u32,
    pub groups: BTreeMap<String, GroupEntry>,
    pub homs: BTreeMap<String, HomEntry>,
    pub data: BTreeMap<String, GroupDatum>,
    pub normals: BTreeMap<String, NormalCharacter>,
    pub chains: BTreeMap<String, ChainEntry>,
    pub graphs: BTreeMap<String, ChainGraph>,
    pub objects: BTreeMap<String, ObjectEntry>,
    pub assemblies: BTreeMap<String, AssemblyEntry>,
    pub rings: BTreeMap<String, RingEntry>,
    pub quotients: BTreeMap<String, QuotientEntry>,
    pub results: BTreeMap<String, RawResult>,
    raw: RawFile,
}

impl ChainFile {
    pub fn raw(&self) -> &RawFile {
        &self.raw
    }

    /// Coordinate labels for a named group, falling back to `prefix` and an index.
    pub fn labels_of(&self, group: &str, prefix: &str) -> Vec<String> {
        let entry = &self.groups[group];
        if let Some(l) = &entry.labels {
            return l.clone();
        }
        let k = entry.group.ngens();
        if k == 1 {
            vec![prefix.to_string()]
        } else {
            (0..k).map(|i| format!("{prefix}[{i}]")).collect()
        }
    }

    /// The simple chain of that name, if it is one.
    pub fn simple_chain(&self, name: &str) -> Option<&SimpleEntry> {
        match self.chains.get(name) {
            Some(ChainEntry::Simple(s)) => Some(s),
            _ => None,
        }
    }
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map(|s| s.chars().count()).unwrap_or(0) + 1;
    (line, col)
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Failure already reported; dependents stay quiet.
struct Reported;

type Step<T> = std::result::Result<T, Reported>;

struct Loader<'a> {
    text: &'a str,
    origin: &'a str,
    raw: &'a RawFile,
    errors: Vec<FormatError>,
    file: ChainFile,
}

impl<'a> Loader<'a> {
    fn error(&mut self, kind: ErrorKind, span: &Range<usize>, message: String) -> Reported {
        self.errors.push(FormatError {
            kind,
            origin: self.origin.to_string(),
            position: Some(position(self.text, span.start)),
            message,
        });
        Reported
    }

    fn group(&mut self, name: &str, span: &Range<usize>, context: &str) -> Step<FgAbelianGroup> {
        if let Some(g) = self.file.groups.get(name) {
            return Ok(g.group.clone());
        }
        if self.raw.groups.contains_key(name) {
            return Err(Reported);
        }
        Err(self.error(
            ErrorKind::UnresolvedReference,
            span,
            format!("{context} refers to group \"{name}\", which is not defined"),
        ))
    }

    fn hom(&mut self, name: &str, span: &Range<usize>, context: &str) -> Step<AbHom> {
        if let Some(h) = self.file.homs.get(name) {
            return Ok(h.hom.clone());
        }
        if self.raw.homs.contains_key(name) {
            return Err(Reported);
        }
        Err(self.error(
            ErrorKind::UnresolvedReference,
            span,
            format!("{context} refers to hom \"{name}\", which is not defined"),
        ))
    }

    fn datum(&mut self, name: &str, span: &Range<usize>, context: &str) -> Step<GroupDatum> {
        if let Some(d) = self.file.data.get(name) {
            return Ok(d.clone());
        }
        if self.raw.data.contains_key(name) {
            return Err(Reported);
        }
        Err(self.error(
            ErrorKind::UnresolvedReference,
            span,
            format!("{context} refers to group datum \"{name}\", which is not defined"),
        ))
    }

    fn simple(&mut self, name: &str, span: &Range<usize>, context: &str) -> Step<SimpleChainDatum> {
        match self.file.chains.get(name) {
            Some(ChainEntry::Simple(s)) => return Ok(s.datum.clone()),
            Some(_) => {
                return Err(self.error(
                    ErrorKind::Schema,
                    span,
                    format!("{context} needs a simple chain, but \"{name}\" is not one"),
                ))
            }
            None => {}
        }
        if self.raw.chains.contains_key(name) {
            return Err(Reported);
        }
        Err(self.error(
            ErrorKind::UnresolvedReference,
            span,
            format!("{context} refers to chain \"{name}\", which is not defined"),
        ))
    }

    fn element(&mut self, group: &FgAbelianGroup, coords: &[i64], span: &Range<usize>, context: &str) -> Step<Element> {
        group
            .element(big(coords))
            .map_err(|e| self.error(ErrorKind::Schema, span, format!("{context}: {e} in {group}")))
    }

    fn required<'b, T>(
        &mut self,
        value: &'b Option<T>,
        field: &str,
        span: &Range<usize>,
        context: &str,
    ) -> Step<&'b T> {
        match value {
            Some(v) => Ok(v),
            None => Err(self.error(ErrorKind::Schema, span, format!("{context} is missing `{field}`"))),
        }
    }

    fn invariant(&mut self, span: &Range<usize>, context: &str, e: Error) -> Reported {
        let kind = match &e {
            Error::Intlin(chainsheaf::intlin::IntlinError::IllDefined(_)) => ErrorKind::IllDefinedHom,
            _ => ErrorKind::InvariantViolation,
        };
        let message = match e {
            Error::Invalid(report) => report
                .violations()
                .iter()
                .map(|v| format!("{}: {}", v.subject, v.message))
                .collect::<Vec<_>>()
                .join("; "),
            other => other.to_string(),
        };
        self.error(kind, span, format!("{context}: {message}"))
    }

    fn load_groups(&mut self) {
        for (name, entry) in &self.raw.groups {
            let span = entry.span();
            let g = entry.get_ref();
            let ctx = format!("group {name}");
            let group = match (&g.orders, g.generators, &g.relations) {
                (Some(orders), None, None) => match FgAbelianGroup::new(big(orders)) {
                    Ok(group) => group,
                    Err(e) => {
                        self.error(ErrorKind::Schema, &span, format!("{ctx}: {e}"));
                        continue;
                    }
                },
                (None, Some(n), relations) => {
                    let rows = relations.clone().unwrap_or_default();
                    let m = IntMatrix::from_rows_with_cols(rows.iter().map(|r| big(r)).collect(), n);
                    match m.ok_or(()).and_then(|m| Presentation::new(n, m).map_err(|_| ())) {
                        Ok(p) => p.canonicalize(),
                        Err(()) => {
                            self.error(
                                ErrorKind::Schema,
                                &span,
                                format!("{ctx}: every relation needs {n} entries"),
                            );
                            continue;
                        }
                    }
                }
                _ => {
                    self.error(
                        ErrorKind::Schema,
                        &span,
                        format!("{ctx} needs either `orders` or `generators` (with optional `relations`)"),
                    );
                    continue;
                }
            };
            if let Some(labels) = &g.labels {
                if labels.len() != group.ngens() {
                    self.error(
                        ErrorKind::Schema,
                        &span,
                        format!("{ctx} has {} generators but {} labels", group.ngens(), labels.len()),
                    );
                    continue;
                }
            }
            self.file.groups.insert(
                name.clone(),
                GroupEntry {
                    group,
                    labels: g.labels.clone(),
                },
            );
        }
    }

    fn load_homs(&mut self) {
        for (name, entry) in &self.raw.homs {
            let span = entry.span();
            let h = entry.get_ref();
            let ctx = format!("hom {name}");
            let (Ok(source), Ok(target)) = (self.group(&h.source, &span, &ctx), self.group(&h.target, &span, &ctx))
            else {
                continue;
            };
            let rows: Vec<Vec<BigInt>> = h.matrix.iter().map(|r| big(r)).collect();
            let shape_ok = rows.len() == target.ngens() && rows.iter().all(|r| r.len() == source.ngens());
            if !shape_ok {
                self.error(
                    ErrorKind::Schema,
                    &span,
                    format!(
                        "{ctx}: matrix must have {} rows of {} entries for {} -> {}",
                        target.ngens(),
                        source.ngens(),
                        source,
                        target
                    ),
                );
                continue;
            }
            let m = IntMatrix::from_rows_with_cols(rows, source.ngens()).expect("shape checked");
            match AbHom::new(source, target, m) {
                Ok(hom) => {
                    self.file.homs.insert(
                        name.clone(),
                        HomEntry {
                            source: h.source.clone(),
                            target: h.target.clone(),
                            hom,
                        },
                    );
                }
                Err(e) => {
                    self.error(
                        ErrorKind::IllDefinedHom,
                        &span,
                        format!("hom {name} does not respect the relations of its source: {e}"),
                    );
                }
            }
        }
    }

    fn load_data(&mut self) {
        for (name, entry) in &self.raw.data {
            let span = entry.span();
            let d = entry.get_ref();
            let ctx = format!("group datum {name}");
            let (Ok(chars), Ok(com), Ok(pull)) = (
                self.group(&d.chars, &span, &ctx),
                self.group(&d.com_chars, &span, &ctx),
                self.hom(&d.com_pullback, &span, &ctx),
            ) else {
                continue;
            };
            let datum = GroupDatum {
                name: name.clone(),
                char_group: chars,
                com_char_group: com,
                com_pullback: pull,
            };
            let report = validate_group_datum(&datum);
            if !report.is_valid() {
                self.invariant(&span, &ctx, Error::Invalid(report));
                continue;
            }
            self.file.data.insert(name.clone(), datum);
        }
        for (name, entry) in &self.raw.normals {
            let span = entry.span();
            let nrm = entry.get_ref();
            let ctx = format!("normal character {name}");
            let Ok(datum) = self.datum(&nrm.data, &span, &ctx) else {
                continue;
            };
            let Ok(value) = self.element(&datum.char_group, &nrm.value, &span, &ctx) else {
                continue;
            };
            match NormalCharacter::new(datum, value) {
                Ok(nc) => {
                    self.file.normals.insert(name.clone(), nc);
                }
                Err(e) => {
                    self.invariant(&span, &ctx, e);
                }
            }
        }
    }

    fn load_simple(&mut self, name: &str, c: &RawChain, span: &Range<usize>) -> Step<ChainEntry> {
        let ctx = format!("chain {name}");
        let n = *self.required(&c.n, "n", span, &ctx)?;
        let s1_name = self.required(&c.char_s1, "char_s1", span, &ctx)?.clone();
        let s0_name = self.required(&c.char_s0, "char_s0", span, &ctx)?.clone();
        let l0_name = self.required(&c.char_l0, "char_l0", span, &ctx)?.clone();
        let lim = self.required(&c.lim, "lim", span, &ctx)?.clone();
        let iota = self.required(&c.iota, "iota", span, &ctx)?.clone();
        let gamma = self.required(&c.gamma, "gamma", span, &ctx)?.clone();
        let mu = self.required(&c.mu, "mu", span, &ctx)?.clone();
        let act = self.required(&c.act, "act", span, &ctx)?.clone();

        let char_s1 = self.group(&s1_name, span, &ctx);
        let char_s0 = self.group(&s0_name, span, &ctx);
        let char_l0 = self.group(&l0_name, span, &ctx);
        let lim_map = self.hom(&lim, span, &ctx);
        let iota_res = self.hom(&iota, span, &ctx);
        let gamma_pair = self.hom(&gamma, span, &ctx);
        let mu_n_res = self.hom(&mu, span, &ctx);
        let (char_s1, char_s0, char_l0) = (char_s1?, char_s0?, char_l0?);
        let (lim_map, iota_res, gamma_pair, mu_n_res) = (lim_map?, iota_res?, gamma_pair?, mu_n_res?);
        let act_char = self.element(&char_l0, &act, span, &format!("{ctx}, act"))?;

        let components = match (&c.com_s1, &c.com_s0, &c.sigma) {
            (None, None, None) => None,
            (Some(a), Some(b), Some(s)) => {
                let com_s1 = self.datum(a, span, &ctx);
                let com_s0 = self.datum(b, span, &ctx);
                let sigma_res = self.hom(s, span, &ctx);
                Some(ComponentData {
                    com_s1: com_s1?,
                    com_s0: com_s0?,
                    sigma_res: sigma_res?,
                })
            }
            _ => {
                return Err(self.error(
                    ErrorKind::Schema,
                    span,
                    format!("{ctx}: `com_s1`, `com_s0` and `sigma` go together"),
                ))
            }
        };
        let top_wedge = match (&c.identity_chars, &c.r0, &c.top_char0) {
            (None, None, None) => None,
            (Some(g), Some(r), Some(t)) => {
                let identity_chars = self.group(g, span, &ctx);
                let r0 = self.hom(r, span, &ctx);
                let top_char0 = self.element(&char_s0, t, span, &format!("{ctx}, top_char0"));
                Some(TopWedgeData {
                    identity_chars: identity_chars?,
                    r0: r0?,
                    top_char0: top_char0?,
                })
            }
            _ => {
                return Err(self.error(
                    ErrorKind::Schema,
                    span,
                    format!("{ctx}: `identity_chars`, `r0` and `top_char0` go together"),
                ))
            }
        };
        let datum = SimpleChainDatum {
            name: name.to_string(),
            n: BigInt::from(n),
            char_s1,
            char_s0,
            char_l0,
            lim_map,
            iota_res,
            gamma_pair,
            mu_n_res,
            act_char,
            components,
            top_wedge,
        };
        let report = validate_simple_chain(&datum);
        if !report.is_valid() {
            return Err(self.invariant(span, &ctx, Error::Invalid(report)));
        }
        Ok(ChainEntry::Simple(Box::new(SimpleEntry {
            datum,
            char_s1: s1_name,
            char_l0: l0_name,
        })))
    }

    fn load_chains(&mut self, graphs_ready: bool) {
        for (name, entry) in &self.raw.chains {
            let span = entry.span();
            let c = entry.get_ref();
            let ctx = format!("chain {name}");
            let loaded = match (c.kind.as_str(), graphs_ready) {
                ("simple", false) => self.load_simple(name, c, &span),
                ("orbit", false) => self
                    .required(&c.chars, "chars", &span, &ctx)
                    .cloned()
                    .and_then(|chars| {
                        let group = self.group(&chars, &span, &ctx)?;
                        Ok(ChainEntry::Orbit { chars, group })
                    }),
                ("graph", true) => self
                    .required(&c.graph, "graph", &span, &ctx)
                    .cloned()
                    .and_then(|graph| {
                        if self.file.graphs.contains_key(&graph) {
                            Ok(ChainEntry::Graph { graph })
                        } else if self.raw.graphs.contains_key(&graph) {
                            Err(Reported)
                        } else {
                            Err(self.error(
                                ErrorKind::UnresolvedReference,
                                &span,
                                format!("{ctx} refers to graph \"{graph}\", which is not defined"),
                            ))
                        }
                    }),
                ("simple" | "orbit", true) | ("graph", false) => continue,
                (other, false) => Err(self.error(
                    ErrorKind::Schema,
                    &span,
                    format!("{ctx} has kind \"{other}\"; expected orbit, simple or graph"),
                )),
                (_, true) => continue,
            };
            if let Ok(entry) = loaded {
                self.file.chains.insert(name.clone(), entry);
            }
        }
    }

    fn load_graphs(&mut self) {
        for (name, entry) in &self.raw.graphs {
            let span = entry.span();
            let g = entry.get_ref();
            let ctx = format!("graph {name}");
            let mut ok = true;
            let mut orbits = |raw: &[RawOrbit], this: &mut Self| -> Vec<OrbitDatum> {
                let mut out = Vec::new();
                for o in raw {
                    match this.group(&o.chars, &span, &format!("{ctx}, orbit {}", o.name)) {
                        Ok(chars) => out.push(OrbitDatum {
                            name: o.name.clone(),
                            chars,
                        }),
                        Err(_) => ok = false,
                    }
                }
                out
            };
            let open_orbits = orbits(&g.open, self);
            let closed_orbits = orbits(&g.closed, self);
            let mut edges = Vec::new();
            for e in &g.edges {
                let ectx = format!("{ctx}, edge {}", e.name);
                let a = g.open.iter().position(|o| o.name == e.open);
                let nu = g.closed.iter().position(|o| o.name == e.closed);
                let (Some(a), Some(nu)) = (a, nu) else {
                    self.error(
                        ErrorKind::UnresolvedReference,
                        &span,
                        format!(
                            "{ectx} joins \"{}\" and \"{}\", which are not both orbits of the graph",
                            e.open, e.closed
                        ),
                    );
                    ok = false;
                    continue;
                };
                let chain = self.simple(&e.chain, &span, &ectx);
                let open_ident = self.hom(&e.open_ident, &span, &ectx);
                let pull = self.hom(&e.pull, &span, &ectx);
                let restrict = e.restrict_l0.as_ref().map(|r| self.hom(r, &span, &ectx));
                match (chain, open_ident, pull, restrict.transpose()) {
                    (Ok(chain), Ok(open_ident), Ok(pull), Ok(restrict_l0)) => edges.push(EdgeDatum {
                        name: e.name.clone(),
                        a,
                        nu,
                        chain,
                        open_ident,
                        pull,
                        restrict_l0,
                    }),
                    _ => ok = false,
                }
            }
            if !ok || open_orbits.len() != g.open.len() || closed_orbits.len() != g.closed.len() {
                continue;
            }
            let desc = GraphDescription {
                name: name.clone(),
                open_orbits,
                closed_orbits,
                edges,
            };
            match build_chain_graph(desc) {
                Ok(graph) => {
                    self.file.graphs.insert(name.clone(), graph);
                }
                Err(e) => {
                    self.invariant(&span, &ctx, e);
                }
            }
        }
    }

    fn graph(&mut self, name: &str, span: &Range<usize>, context: &str) -> Step<ChainGraph> {
        if let Some(g) = self.file.graphs.get(name) {
            return Ok(g.clone());
        }
        if self.raw.graphs.contains_key(name) {
            return Err(Reported);
        }
        Err(self.error(
            ErrorKind::UnresolvedReference,
            span,
            format!("{context} refers to graph \"{name}\", which is not defined"),
        ))
    }

    fn load_objects(&mut self) {
        for (name, entry) in &self.raw.objects {
            let span = entry.span();
            let o = entry.get_ref();
            let ctx = format!("object {name}");
            let Ok(chain) = self.simple(&o.chain, &span, &ctx) else {
                continue;
            };
            let mut lines = Vec::new();
            let mut ok = true;
            for (i, l) in o.lines.iter().enumerate() {
                let lctx = format!("{ctx}, line {i}");
                let chi = self.element(&chain.char_s1, &l.chi, &span, &lctx);
                let degree = match &l.degree {
                    RawDegree::Finite(d) => Ok(Degree::finite(*d)),
                    RawDegree::Named(s) if s == "inf" => Ok(Degree::Infinite),
                    RawDegree::Named(s) => Err(self.error(
                        ErrorKind::Schema,
                        &span,
                        format!("{lctx}: degree must be an integer or \"inf\", not \"{s}\""),
                    )),
                };
                match (chi, degree) {
                    (Ok(chi), Ok(degree)) => lines.push(Line { chi, degree }),
                    _ => ok = false,
                }
            }
            if ok {
                self.file.objects.insert(
                    name.clone(),
                    ObjectEntry {
                        chain: o.chain.clone(),
                        object: FilteredObject::new(lines),
                    },
                );
            }
        }
    }

    fn elements(
        &mut self,
        groups: &[FgAbelianGroup],
        raw: &[Vec<i64>],
        span: &Range<usize>,
        ctx: &str,
    ) -> Step<Vec<Element>> {
        if groups.len() != raw.len() {
            return Err(self.error(
                ErrorKind::Schema,
                span,
                format!("{ctx}: expected {} characters, found {}", groups.len(), raw.len()),
            ));
        }
        let mut out = Vec::new();
        for (g, x) in groups.iter().zip(raw) {
            out.push(self.element(g, x, span, ctx)?);
        }
        Ok(out)
    }

    fn load_line_on_graph(
        &mut self,
        graph: &ChainGraph,
        a: &RawAssembly,
        span: &Range<usize>,
        ctx: &str,
    ) -> Step<Assembly> {
        let open_groups: Vec<_> = graph.open_orbits().iter().map(|o| o.chars.clone()).collect();
        let closed_groups: Vec<_> = graph.closed_orbits().iter().map(|o| o.chars.clone()).collect();
        if a.open_reps.is_some() || a.closed_reps.is_some() || a.edges.is_some() {
            let open_reps = self.required(&a.open_reps, "open_reps", span, ctx)?.clone();
            let closed_reps = self.required(&a.closed_reps, "closed_reps", span, ctx)?.clone();
            let edge_names = self.required(&a.edges, "edges", span, ctx)?.clone();
            let reps = |groups: &[FgAbelianGroup], raw: &[Vec<Vec<i64>>], this: &mut Self| -> Step<Vec<Vec<Element>>> {
                if groups.len() != raw.len() {
                    return Err(this.error(
                        ErrorKind::Schema,
                        span,
                        format!("{ctx}: expected {} representations, found {}", groups.len(), raw.len()),
                    ));
                }
                let mut out = Vec::new();
                for (g, xs) in groups.iter().zip(raw) {
                    let mut rep = Vec::new();
                    for x in xs {
                        rep.push(this.element(g, x, span, ctx)?);
                    }
                    out.push(rep);
                }
                Ok(out)
            };
            let open = reps(&open_groups, &open_reps, self)?;
            let closed = reps(&closed_groups, &closed_reps, self)?;
            let mut edges = Vec::new();
            for e in &edge_names {
                match self.file.objects.get(e) {
                    Some(o) => edges.push(o.object.clone()),
                    None if self.raw.objects.contains_key(e) => return Err(Reported),
                    None => {
                        return Err(self.error(
                            ErrorKind::UnresolvedReference,
                            span,
                            format!("{ctx} refers to object \"{e}\", which is not defined"),
                        ))
                    }
                }
            }
            return Ok(Assembly::Vector(VectorAssembly { open, closed, edges }));
        }
        let open = self.required(&a.open, "open", span, ctx)?.clone();
        let closed = self.required(&a.closed, "closed", span, ctx)?.clone();
        Ok(Assembly::Line(LineAssembly {
            open: self.elements(&open_groups, &open, span, ctx)?,
            closed: self.elements(&closed_groups, &closed, span, ctx)?,
        }))
    }

    fn load_assemblies(&mut self) {
        for (name, entry) in &self.raw.assemblies {
            let span = entry.span();
            let a = entry.get_ref();
            let ctx = format!("assembly {name}");
            let loaded = match (&a.chain, &a.graph) {
                (Some(chain), None) => self.load_chain_assembly(chain, a, &span, &ctx),
                (None, Some(graph)) => self.graph(graph, &span, &ctx).and_then(|g| {
                    let assembly = self.load_line_on_graph(&g, a, &span, &ctx)?;
                    Ok(AssemblyEntry::Graph {
                        graph: graph.clone(),
                        assembly,
                    })
                }),
                _ => Err(self.error(
                    ErrorKind::Schema,
                    &span,
                    format!("{ctx} needs exactly one of `chain` and `graph`"),
                )),
            };
            if let Ok(entry) = loaded {
                self.file.assemblies.insert(name.clone(), entry);
            }
        }
    }

    fn load_chain_assembly(
        &mut self,
        chain: &str,
        a: &RawAssembly,
        span: &Range<usize>,
        ctx: &str,
    ) -> Step<AssemblyEntry> {
        let entry = match self.file.chains.get(chain) {
            Some(e) => e.clone(),
            None if self.raw.chains.contains_key(chain) => return Err(Reported),
            None => {
                return Err(self.error(
                    ErrorKind::UnresolvedReference,
                    span,
                    format!("{ctx} refers to chain \"{chain}\", which is not defined"),
                ))
            }
        };
        let (open_groups, closed_groups) = match &entry {
            ChainEntry::Orbit { group, .. } => (vec![], vec![group.clone()]),
            ChainEntry::Simple(s) => (vec![s.datum.char_s1.clone()], vec![s.datum.char_l0.clone()]),
            ChainEntry::Graph { graph } => {
                let g = self.file.graphs[graph].clone();
                let assembly = self.load_line_on_graph(&g, a, span, ctx)?;
                return Ok(AssemblyEntry::Graph {
                    graph: graph.clone(),
                    assembly,
                });
            }
        };
        let open = a.open.clone().unwrap_or_default();
        let closed = self.required(&a.closed, "closed", span, ctx)?.clone();
        Ok(AssemblyEntry::Chain {
            chain: chain.to_string(),
            open: self.elements(&open_groups, &open, span, ctx)?,
            closed: self.elements(&closed_groups, &closed, span, ctx)?,
        })
    }

    fn load_rings(&mut self) {
        for (name, entry) in &self.raw.rings {
            let span = entry.span();
            let r = entry.get_ref();
            let ctx = format!("ring {name}");
            let loaded = match r.kind.as_str() {
                "weighted" => self
                    .required(&r.degrees, "degrees", &span, &ctx)
                    .map(|d| RingEntry::Weighted(WeightedFreePresentation { degrees: d.clone() })),
                "ideal-adic" => self.load_ideal_adic(r, &span, &ctx),
                other => Err(self.error(
                    ErrorKind::Schema,
                    &span,
                    format!("{ctx} has kind \"{other}\"; expected weighted or ideal-adic"),
                )),
            };
            if let Ok(entry) = loaded {
                self.file.rings.insert(name.clone(), entry);
            }
        }
    }

    fn load_ideal_adic(&mut self, r: &RawRing, span: &Range<usize>, ctx: &str) -> Step<RingEntry> {
        let raw_components = self.required(&r.components, "components", span, ctx)?.clone();
        let mut components = Vec::new();
        for c in &raw_components {
            let ideal = match c.ideal.as_str() {
                "zero" => IdealKind::Zero,
                "proper-principal" => IdealKind::ProperPrincipal,
                "unit" => IdealKind::Unit,
                other => {
                    return Err(self.error(
                        ErrorKind::Schema,
                        span,
                        format!(
                            "{ctx}, component {}: ideal \"{other}\" is not zero, proper-principal or unit",
                            c.name
                        ),
                    ))
                }
            };
            let f_infinity = match c.f_infinity.as_deref() {
                None => None,
                Some("zero") => Some(FInfinity::Zero),
                Some("all") => Some(FInfinity::All),
                Some(other) => {
                    return Err(self.error(
                        ErrorKind::Schema,
                        span,
                        format!("{ctx}, component {}: f_infinity \"{other}\" is not zero or all", c.name),
                    ))
                }
            };
            components.push(IdealAdicComponent {
                name: c.name.clone(),
                integral: c.integral,
                ideal,
                f_infinity,
            });
        }
        let component_groups = match &r.component_groups {
            None => None,
            Some(g) => {
                let general_chars = self.group(&g.general_chars, span, ctx);
                let special_chars = self.group(&g.special_chars, span, ctx);
                let restriction = self.hom(&g.restriction, span, ctx);
                let (general_chars, special_chars, restriction) = (general_chars?, special_chars?, restriction?);
                if restriction.source() != &general_chars || restriction.target() != &special_chars {
                    return Err(self.error(
                        ErrorKind::InvariantViolation,
                        span,
                        format!("{ctx}: restriction must map {general_chars} to {special_chars}"),
                    ));
                }
                Some(ComponentGroupData {
                    general_name: g.general.clone(),
                    general_chars,
                    special_chars,
                    restriction,
                })
            }
        };
        Ok(RingEntry::IdealAdic(IdealAdicPresentation {
            components,
            component_groups,
        }))
    }

    fn load_quotients(&mut self) {
        for (name, entry) in &self.raw.quotients {
            let span = entry.span();
            let q = entry.get_ref();
            let ctx = format!("quotient {name}");
            let loaded = self.load_quotient(q, &span, &ctx);
            if let Ok(datum) = loaded {
                self.file.quotients.insert(
                    name.clone(),
                    QuotientEntry {
                        chain: q.chain.clone(),
                        datum,
                    },
                );
            }
        }
    }

    fn load_quotient(&mut self, q: &RawQuotient, span: &Range<usize>, ctx: &str) -> Step<TameQuotientDatum> {
        let chain = self.simple(&q.chain, span, ctx);
        let char_h0 = self.group(&q.char_h0, span, ctx);
        let proj0_res = self.hom(&q.proj0, span, ctx);
        let (chain, char_h0, proj0_res) = (chain?, char_h0?, proj0_res?);
        if q.sub.len() != q.spec_images.len() {
            return Err(self.error(
                ErrorKind::Schema,
                span,
                format!(
                    "{ctx}: {} generators but {} specialization images",
                    q.sub.len(),
                    q.spec_images.len()
                ),
            ));
        }
        let mut gens = Vec::new();
        let mut images = Vec::new();
        for (g, y) in q.sub.iter().zip(&q.spec_images) {
            gens.push(self.element(&chain.char_s1, g, span, &format!("{ctx}, sub"))?);
            images.push(self.element(&char_h0, y, span, &format!("{ctx}, spec_images"))?);
        }
        let sub = Subgroup::new(chain.char_s1.clone(), gens).expect("elements checked");
        let spec_res = match hom_on_generators(&sub, &char_h0, &images) {
            Ok(f) => f,
            Err(message) => {
                return Err(self.error(ErrorKind::IllDefinedHom, span, format!("{ctx}: {message}")));
            }
        };
        let datum = TameQuotientDatum {
            sub,
            char_h0,
            spec_res,
            proj0_res,
        };
        let report = datum.validate(&chain);
        if !report.is_valid() {
            return Err(self.invariant(span, ctx, Error::Invalid(report)));
        }
        Ok(datum)
    }
}

/// The map on `sub.group()` sending each listed generator of `sub` to the
/// matching image, when that is well defined.
pub fn hom_on_generators(sub: &Subgroup, target: &FgAbelianGroup, images: &[Element]) -> Result<AbHom, String> {
    let combine = |coeffs: &[BigInt]| {
        coeffs
            .iter()
            .zip(images)
            .fold(target.zero(), |acc, (c, y)| target.add(&acc, &target.scale(c, y)))
    };
    let basis_images: Vec<Element> = sub
        .basis()
        .iter()
        .map(|b| combine(&sub.express(b).expect("basis lies in the subgroup")))
        .collect();
    let f = AbHom::from_images(sub.group().clone(), target.clone(), &basis_images)
        .map_err(|e| format!("specialization is not well defined: {e}"))?;
    for (g, y) in sub.generators().iter().zip(images) {
        let x = sub.coordinates(g).expect("generator lies in the subgroup");
        if &f.apply(&x).expect("coordinates") != y {
            return Err(format!(
                "specialization is not well defined: relations among the generators do not hold for {g} -> {y}"
            ));
        }
    }
    Ok(f)
}

/// Parses and validates a chain file; `origin` names it in error messages.
pub fn load_str(text: &str, origin: &str) -> Result<ChainFile, LoadErrors> {
    let raw: RawFile = toml::from_str(text).map_err(|e| {
        LoadErrors(vec![FormatError {
            kind: ErrorKind::Syntax,
            origin: origin.to_string(),
            position: e.span().map(|s| position(text, s.start)),
            message: e.message().trim().to_string(),
        }])
    })?;
    if raw.version != FORMAT_VERSION {
        return Err(LoadErrors(vec![FormatError {
            kind: ErrorKind::Schema,
            origin: origin.to_string(),
            position: None,
            message: format!(
                "unsupported format version {}; this build reads version {FORMAT_VERSION}",
                raw.version
            ),
        }]));
    }
    let mut loader = Loader {
        text,
        origin,
        raw: &raw,
        errors: Vec::new(),
        file: ChainFile {
            origin: origin.to_string(),
            version: raw.version,
            groups: BTreeMap::new(),
            homs: BTreeMap::new(),
            data: BTreeMap::new(),
            normals: BTreeMap::new(),
            chains: BTreeMap::new(),
            graphs: BTreeMap::new(),
            objects: BTreeMap::new(),
            assemblies: BTreeMap::new(),
            rings: BTreeMap::new(),
            quotients: BTreeMap::new(),
            results: raw.results.clone(),
            raw: RawFile::default(),
        },
    };
    loader.load_groups();
    loader.load_homs();
    loader.load_data();
    loader.load_chains(false);
    loader.load_graphs();
    loader.load_chains(true);
    loader.load_objects();
    loader.load_assemblies();
    loader.load_rings();
    loader.load_quotients();

    let Loader { errors, mut file, .. } = loader;
    if !errors.is_empty() {
        let mut errors = errors;
        errors.sort_by_key(|e| e.position);
        errors.dedup();
        return Err(LoadErrors(errors));
    }
    file.raw = raw;
    Ok(file)
}

pub fn load_path(path: &std::path::Path) -> Result<ChainFile, LoadErrors> {
    let origin = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| {
        LoadErrors(vec![FormatError {
            kind: ErrorKind::Syntax,
            origin: origin.clone(),
            position: None,
            message: format!("cannot read file: {e}"),
        }])
    })?;
    load_str(&text, &origin)
}
