use std::collections::HashSet;

use num_bigint::BigInt;
use petgraph::algo::is_cyclic_undirected;
use petgraph::graph::{DiGraph, NodeIndex};

use super::chain::{validate_simple_chain, SimpleChainDatum};
use crate::filtobj::{validate_cn_object, CnOptions, Degree, FilteredObject};
use crate::intlin::{AbHom, Element, FgAbelianGroup, IntMatrix, Subgroup};
use crate::report::ValidationReport;
use crate::{Error, Result};

/// An orbit with the characters of the stabilizer of its basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDatum {
    pub name: String,
    pub chars: FgAbelianGroup,
}

/// Data attached to one component `k` of the normalized closed locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDatum {
    pub name: String,
    /// Index of the adjacent open orbit.
    pub a: usize,
    /// Index of the closed orbit it maps to.
    pub nu: usize,
    pub chain: SimpleChainDatum,
    /// Identification of the open orbit characters with `char_s1` of the chain.
    pub open_ident: AbHom,
    /// Pullback from the closed orbit characters to `char_s0` of the chain.
    pub pull: AbHom,
    /// Optional identification into `char_l0`; when present `pull` must factor through it.
    pub restrict_l0: Option<AbHom>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDescription {
    pub name: String,
    pub open_orbits: Vec<OrbitDatum>,
    pub closed_orbits: Vec<OrbitDatum>,
    pub edges: Vec<EdgeDatum>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GammaVertex {
    Open(usize),
    /// `k^(1)`: the open orbit together with the closed component.
    EdgeUnion(usize),
    /// `k^(2)`: the closed component alone.
    EdgeClosed(usize),
    Closed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContractedVertex {
    OpenClosure(usize),
    EdgeClosed(usize),
    Closed(usize),
}

#[derive(Clone, Debug)]
pub struct ChainGraph {
    desc: GraphDescription,
    gamma: DiGraph<GammaVertex, ()>,
    contracted: DiGraph<ContractedVertex, ()>,
}

pub fn build_chain_graph(desc: GraphDescription) -> Result<ChainGraph> {
    check_names(&desc)?;
    for e in &desc.edges {
        let open = desc.open_orbits.get(e.a).ok_or_else(|| {
            Error::Structural(format!(
                "edge {} points at open orbit {} which does not exist",
                e.name, e.a
            ))
        })?;
        let closed = desc.closed_orbits.get(e.nu).ok_or_else(|| {
            Error::Structural(format!(
                "edge {} points at closed orbit {} which does not exist",
                e.name, e.nu
            ))
        })?;
        if e.open_ident.source() != &open.chars || e.open_ident.target() != &e.chain.char_s1 {
            return Err(Error::Structural(format!(
                "edge {}: open identification must map {} to {}",
                e.name, open.chars, e.chain.char_s1
            )));
        }
        if e.pull.source() != &closed.chars || e.pull.target() != &e.chain.char_s0 {
            return Err(Error::Structural(format!(
                "edge {}: pullback must map {} to {}",
                e.name, closed.chars, e.chain.char_s0
            )));
        }
        let report = validate_simple_chain(&e.chain);
        if !report.is_valid() {
            return Err(Error::Invalid(report));
        }
        if let Some(r) = &e.restrict_l0 {
            if r.source() != &closed.chars || r.target() != &e.chain.char_l0 {
                return Err(Error::Structural(format!(
                    "edge {}: restriction must map {} to {}",
                    e.name, closed.chars, e.chain.char_l0
                )));
            }
            if r.then(&e.chain.iota_res)? != e.pull {
                return Err(Error::Structural(format!(
                    "edge {}: pullback does not factor through the restriction to char_l0",
                    e.name
                )));
            }
        }
    }

    let mut gamma = DiGraph::new();
    let open: Vec<NodeIndex> = (0..desc.open_orbits.len())
        .map(|j| gamma.add_node(GammaVertex::Open(j)))
        .collect();
    let union: Vec<NodeIndex> = (0..desc.edges.len())
        .map(|k| gamma.add_node(GammaVertex::EdgeUnion(k)))
        .collect();
    let closed_k: Vec<NodeIndex> = (0..desc.edges.len())
        .map(|k| gamma.add_node(GammaVertex::EdgeClosed(k)))
        .collect();
    let closed: Vec<NodeIndex> = (0..desc.closed_orbits.len())
        .map(|i| gamma.add_node(GammaVertex::Closed(i)))
        .collect();
    for (k, e) in desc.edges.iter().enumerate() {
        gamma.add_edge(open[e.a], union[k], ());
        gamma.add_edge(closed_k[k], union[k], ());
        gamma.add_edge(closed_k[k], closed[e.nu], ());
    }

    let mut contracted = DiGraph::new();
    let v: Vec<NodeIndex> = (0..desc.open_orbits.len())
        .map(|j| contracted.add_node(ContractedVertex::OpenClosure(j)))
        .collect();
    let ck: Vec<NodeIndex> = (0..desc.edges.len())
        .map(|k| contracted.add_node(ContractedVertex::EdgeClosed(k)))
        .collect();
    let ci: Vec<NodeIndex> = (0..desc.closed_orbits.len())
        .map(|i| contracted.add_node(ContractedVertex::Closed(i)))
        .collect();
    for (k, e) in desc.edges.iter().enumerate() {
        contracted.add_edge(ck[k], v[e.a], ());
        contracted.add_edge(ck[k], ci[e.nu], ());
    }

    Ok(ChainGraph {
        desc,
        gamma,
        contracted,
    })
}

fn check_names(desc: &GraphDescription) -> Result<()> {
    let mut seen = HashSet::new();
    let names = desc
        .open_orbits
        .iter()
        .map(|o| &o.name)
        .chain(desc.closed_orbits.iter().map(|o| &o.name))
        .chain(desc.edges.iter().map(|e| &e.name));
    for n in names {
        if !seen.insert(n) {
            return Err(Error::Structural(format!(
                "name {n} is used twice in graph {}",
                desc.name
            )));
        }
    }
    Ok(())
}

impl ChainGraph {
    pub fn name(&self) -> &str {
        &self.desc.name
    }

    pub fn description(&self) -> &GraphDescription {
        &self.desc
    }

    pub fn open_orbits(&self) -> &[OrbitDatum] {
        &self.desc.open_orbits
    }

    pub fn closed_orbits(&self) -> &[OrbitDatum] {
        &self.desc.closed_orbits
    }

    pub fn edges(&self) -> &[EdgeDatum] {
        &self.desc.edges
    }

    /// The graph with one vertex per open orbit, two per closed component and one per closed orbit.
    pub fn gamma(&self) -> &DiGraph<GammaVertex, ()> {
        &self.gamma
    }

    /// The graph after collapsing each open orbit with its adjacent unions.
    pub fn contracted(&self) -> &DiGraph<ContractedVertex, ()> {
        &self.contracted
    }

    /// `⊕_j Char(U_j) ⊕ ⊕_i Char(Z_i)`, open orbits first.
    pub fn ambient(&self) -> FgAbelianGroup {
        FgAbelianGroup::sum_of(
            self.desc
                .open_orbits
                .iter()
                .chain(&self.desc.closed_orbits)
                .map(|o| &o.chars),
        )
    }

    fn offsets(&self) -> (Vec<usize>, Vec<usize>) {
        let mut at = 0;
        let mut open = Vec::new();
        for o in &self.desc.open_orbits {
            open.push(at);
            at += o.chars.ngens();
        }
        let mut closed = Vec::new();
        for o in &self.desc.closed_orbits {
            closed.push(at);
            at += o.chars.ngens();
        }
        (open, closed)
    }

    /// One label per coordinate of [`ChainGraph::ambient`].
    pub fn coordinate_labels(&self) -> Vec<String> {
        let mut labels = Vec::new();
        for o in self.desc.open_orbits.iter().chain(&self.desc.closed_orbits) {
            let k = o.chars.ngens();
            for i in 0..k {
                if k == 1 {
                    labels.push(o.name.clone());
                } else {
                    labels.push(format!("{}[{i}]", o.name));
                }
            }
        }
        labels
    }

    /// Assembles per-orbit characters into an element of [`ChainGraph::ambient`].
    pub fn join(&self, open: &[Element], closed: &[Element]) -> Result<Element> {
        if open.len() != self.desc.open_orbits.len() || closed.len() != self.desc.closed_orbits.len() {
            return Err(Error::Domain(format!(
                "graph {} needs {} open and {} closed characters",
                self.desc.name,
                self.desc.open_orbits.len(),
                self.desc.closed_orbits.len()
            )));
        }
        let mut coords: Vec<BigInt> = Vec::new();
        for (x, o) in open
            .iter()
            .chain(closed)
            .zip(self.desc.open_orbits.iter().chain(&self.desc.closed_orbits))
        {
            if !o.chars.contains(x) {
                return Err(Error::Domain(format!("{x} is not a character of orbit {}", o.name)));
            }
            coords.extend(x.coords().iter().cloned());
        }
        Ok(self.ambient().element(coords)?)
    }

    /// Inverse of [`ChainGraph::join`].
    pub fn split(&self, x: &Element) -> Result<(Vec<Element>, Vec<Element>)> {
        let ambient = self.ambient();
        if !ambient.contains(x) {
            return Err(Error::Domain(format!("{x} is not an element of {ambient}")));
        }
        let mut at = 0;
        let mut take = |o: &OrbitDatum| {
            let k = o.chars.ngens();
            let e = o.chars.element(x.coords()[at..at + k].to_vec()).expect("slice length");
            at += k;
            e
        };
        let open = self.desc.open_orbits.iter().map(&mut take).collect();
        let closed = self.desc.closed_orbits.iter().map(&mut take).collect();
        Ok((open, closed))
    }

    /// The map whose kernel classifies line bundles: at edge `k` it sends
    /// `(χ, λ)` to `lim_k(χ_{a(k)}) - pull_k(λ_{ν(k)})`.
    pub fn constraint_map(&self) -> Result<AbHom> {
        let ambient = self.ambient();
        let target = FgAbelianGroup::sum_of(self.desc.edges.iter().map(|e| &e.chain.char_s0));
        let (open_at, closed_at) = self.offsets();
        let mut m = IntMatrix::zeros(target.ngens(), ambient.ngens());
        let mut row = 0;
        for e in &self.desc.edges {
            let lim = e.open_ident.then(&e.chain.lim_map)?;
            let lm = lim.matrix();
            let pm = e.pull.matrix();
            for i in 0..lm.rows() {
                for j in 0..lm.cols() {
                    m[(row + i, open_at[e.a] + j)] += &lm[(i, j)];
                }
                for j in 0..pm.cols() {
                    m[(row + i, closed_at[e.nu] + j)] -= &pm[(i, j)];
                }
            }
            row += lm.rows();
        }
        Ok(AbHom::new(ambient, target, m)?)
    }
}

/// Whether the underlying undirected graph has no cycles.
pub fn is_contractible(g: &ChainGraph) -> bool {
    !is_cyclic_undirected(&g.gamma)
}

/// Tuples of open and closed characters satisfying every edge equation.
pub fn classify_line_bundles_graph(g: &ChainGraph) -> Result<Subgroup> {
    Ok(g.constraint_map()?.kernel())
}

/// Per-orbit characters; a line bundle on each orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineAssembly {
    pub open: Vec<Element>,
    pub closed: Vec<Element>,
}

/// Per-orbit representations as multisets of characters, with a filtered object per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorAssembly {
    pub open: Vec<Vec<Element>>,
    pub closed: Vec<Vec<Element>>,
    pub edges: Vec<FilteredObject>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Assembly {
    Line(LineAssembly),
    Vector(VectorAssembly),
}

pub fn validate_assembly(g: &ChainGraph, asm: &Assembly) -> ValidationReport {
    match asm {
        Assembly::Line(a) => validate_line_assembly(g, a),
        Assembly::Vector(a) => validate_vector_assembly(g, a),
    }
}

fn check_counts(g: &ChainGraph, open: usize, closed: usize, report: &mut ValidationReport) -> bool {
    let ok = open == g.open_orbits().len() && closed == g.closed_orbits().len();
    if !ok {
        report.push(
            g.name(),
            format!(
                "assembly has {open} open and {closed} closed entries, graph has {} and {}",
                g.open_orbits().len(),
                g.closed_orbits().len()
            ),
        );
    }
    ok
}

fn validate_line_assembly(g: &ChainGraph, a: &LineAssembly) -> ValidationReport {
    let mut report = ValidationReport::new();
    if !check_counts(g, a.open.len(), a.closed.len(), &mut report) {
        return report;
    }
    for (x, o) in a
        .open
        .iter()
        .chain(&a.closed)
        .zip(g.open_orbits().iter().chain(g.closed_orbits()))
    {
        if !o.chars.contains(x) {
            report.push(&o.name, format!("{x} is not a character of {}", o.chars));
        }
    }
    if !report.is_valid() {
        return report;
    }
    for e in g.edges() {
        let lhs = e
            .open_ident
            .then(&e.chain.lim_map)
            .and_then(|f| f.apply(&a.open[e.a]))
            .expect("checked character");
        let rhs = e.pull.apply(&a.closed[e.nu]).expect("checked character");
        if lhs != rhs {
            report.push(
                &e.name,
                format!(
                    "limit of {} from {} is {lhs}, but {} pulls back to {rhs}",
                    a.open[e.a],
                    g.open_orbits()[e.a].name,
                    a.closed[e.nu]
                ),
            );
        }
    }
    report
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn validate_vector_assembly(g: &ChainGraph, a: &VectorAssembly) -> ValidationReport {
    let mut report = ValidationReport::new();
    if !check_counts(g, a.open.len(), a.closed.len(), &mut report) {
        return report;
    }
    if a.edges.len() != g.edges().len() {
        report.push(
            g.name(),
            format!(
                "assembly has {} edge objects, graph has {} edges",
                a.edges.len(),
                g.edges().len()
            ),
        );
        return report;
    }
    for (xs, o) in a
        .open
        .iter()
        .chain(&a.closed)
        .zip(g.open_orbits().iter().chain(g.closed_orbits()))
    {
        for x in xs {
            if !o.chars.contains(x) {
                report.push(&o.name, format!("{x} is not a character of {}", o.chars));
            }
        }
    }
    if !report.is_valid() {
        return report;
    }

    let opts = CnOptions { finite_type: true };
    for (e, obj) in g.edges().iter().zip(&a.edges) {
        let sub = validate_cn_object(&e.chain, obj, opts);
        if !sub.is_valid() {
            for v in sub.violations() {
                report.push(format!("{}/{}", e.name, v.subject), v.message.clone());
            }
            continue;
        }

        let forgotten = sorted(obj.lines().iter().map(|l| l.chi.clone()).collect());
        let open_side = sorted(
            a.open[e.a]
                .iter()
                .map(|x| e.open_ident.apply(x).expect("checked character"))
                .collect(),
        );
        if forgotten != open_side {
            report.push(
                &e.name,
                format!(
                    "forgetting the filtration gives {} lines that do not match the representation on {}",
                    forgotten.len(),
                    g.open_orbits()[e.a].name
                ),
            );
        }

        let closed_name = &g.closed_orbits()[e.nu].name;
        match &e.restrict_l0 {
            Some(r) => {
                let graded = sorted(
                    obj.lines()
                        .iter()
                        .map(|l| {
                            let d = match &l.degree {
                                Degree::Finite(d) => d.clone(),
                                Degree::Infinite => unreachable!("rejected for finite type"),
                            };
                            (e.chain.lim_map.apply(&l.chi).expect("checked character"), d)
                        })
                        .collect(),
                );
                let closed_side = sorted(
                    a.closed[e.nu]
                        .iter()
                        .map(|x| {
                            let y = r.apply(x).expect("checked character");
                            let s0 = e.chain.iota_res.apply(&y).expect("restricted character");
                            let d = e.chain.gamma_pair.apply(&y).expect("restricted character");
                            (s0, d.coords()[0].clone())
                        })
                        .collect(),
                );
                if graded != closed_side {
                    report.push(
                        &e.name,
                        format!("associated graded does not match the representation on {closed_name}"),
                    );
                }
            }
            None => {
                let graded = sorted(
                    obj.lines()
                        .iter()
                        .map(|l| e.chain.lim_map.apply(&l.chi).expect("checked character"))
                        .collect(),
                );
                let closed_side = sorted(
                    a.closed[e.nu]
                        .iter()
                        .map(|x| e.pull.apply(x).expect("checked character"))
                        .collect(),
                );
                if graded != closed_side {
                    report.push(
                        &e.name,
                        format!("associated graded does not match the representation on {closed_name}"),
                    );
                }
            }
        }
    }
    report
}
