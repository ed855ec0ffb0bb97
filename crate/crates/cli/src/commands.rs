use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use chainsheaf::chaincore::{
    check_admissible, classify_line_bundles_graph, classify_line_bundles_simple, line_bundle_fiber_product,
    validate_assembly, ChainGraph,
};
use chainsheaf::filtobj::{
    classify_local_systems, classify_under_tame_quotient, flat_tame_criterion, validate_cn_object, CnOptions,
    SubcategoryPredicate,
};
use chainsheaf::groupdata::is_fastened;
use chainsheaf::intlin::{Element, Subgroup};
use chainsheaf::report::ValidationReport;
use chainsheaf::tamering::{
    describe_specialization, f0_generators, hilbert_basis, tame_quotient, ComponentFiltration, HilbertLimits,
    WeightConstraint,
};
use chainsheaf::Error;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::format::{
    bundled, load_path, load_str, subgroup_record, to_i64, write_machine, AssemblyEntry, ChainEntry, ChainFile,
    ErrorKind, FormatError, LoadErrors, RawResult, RingEntry, SimpleEntry,
};
use crate::{exit, render, Command, Outcome, OutputFormat};

struct Failure {
    code: i32,
    message: String,
}

impl From<LoadErrors> for Failure {
    fn from(e: LoadErrors) -> Self {
        Failure {
            code: exit::INPUT,
            message: e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Resource(_) => exit::RESOURCE,
            _ => exit::INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: exit::INPUT,
        message: message.into(),
    }
}

/// A finished command: its record, and the file it read, if any.
struct Report {
    file: Option<ChainFile>,
    result: RawResult,
}

impl Report {
    fn code(&self) -> i32 {
        match self.result.outcome.as_str() {
            "ok" => exit::OK,
            _ => exit::NEGATIVE,
        }
    }
}

/// Splits `DATASET:NAME` and loads the dataset, bundled or from disk.
pub fn resolve(reference: &str) -> Result<(ChainFile, String), LoadErrors> {
    let Some((dataset, name)) = reference.rsplit_once(':') else {
        return Err(LoadErrors(vec![FormatError {
            kind: ErrorKind::Schema,
            origin: reference.to_string(),
            position: None,
            message: "references have the form DATASET:NAME".into(),
        }]));
    };
    let file = match bundled(dataset) {
        Some(text) => load_str(text, dataset)?,
        None => load_path(Path::new(dataset))?,
    };
    Ok((file, name.to_string()))
}

fn missing(reference: &str, what: &str) -> Failure {
    input_error(format!("{reference}: no {what} of that name"))
}

fn parse_ints(text: &str) -> Result<Vec<BigInt>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| BigInt::from_str(s.trim()).map_err(|_| input_error(format!("\"{s}\" is not an integer"))))
        .collect()
}

fn record(command: &str, subject: &str, outcome: &str) -> RawResult {
    RawResult {
        command: command.into(),
        subject: subject.into(),
        outcome: outcome.into(),
        ..RawResult::default()
    }
}

fn outcome_of(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "false"
    }
}

pub(crate) fn dispatch(command: Command, format: OutputFormat) -> Outcome {
    let name = command_name(&command);
    match execute(command) {
        Ok(report) => {
            let code = report.code();
            let stdout = match format {
                OutputFormat::Table => render::table(&report.result),
                OutputFormat::Machine => {
                    let mut results = BTreeMap::new();
                    results.insert(name.to_string(), report.result);
                    write_machine(report.file.as_ref(), results)
                }
            };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::CheckFastened { .. } => "check-fastened",
        Command::ClassifyLineBundles { .. } => "classify-line-bundles",
        Command::ClassifyLocalSystems { .. } => "classify-local-systems",
        Command::ClassifyTame { .. } => "classify-tame",
        Command::ValidateObject { .. } => "validate-object",
        Command::TameQuotient { .. } => "tame-quotient",
        Command::HilbertBasis { .. } => "hilbert-basis",
        Command::CheckAdmissible { .. } => "check-admissible",
    }
}

fn execute(command: Command) -> Result<Report, Failure> {
    let name = command_name(&command);
    match command {
        Command::CheckFastened { normal, chain } => check_fastened(name, normal, chain),
        Command::ClassifyLineBundles {
            chain,
            graph,
            character,
        } => line_bundles(name, chain, graph, character),
        Command::ClassifyLocalSystems { chain } => {
            let (file, chain_name) = resolve(&chain)?;
            let entry = file
                .simple_chain(&chain_name)
                .ok_or_else(|| missing(&chain, "simple chain"))?;
            let p = classify_local_systems(&entry.datum)?;
            let labels = file.labels_of(&entry.char_s1, "chi");
            let result = predicate_record(name, &chain, &p, &labels)?;
            Ok(Report {
                file: Some(file),
                result,
            })
        }
        Command::ClassifyTame { quotient } => {
            let (file, q_name) = resolve(&quotient)?;
            let q = file
                .quotients
                .get(&q_name)
                .ok_or_else(|| missing(&quotient, "quotient"))?;
            let entry = file.simple_chain(&q.chain).expect("quotients reference simple chains");
            let p = classify_under_tame_quotient(&entry.datum, &q.datum)?;
            let labels = file.labels_of(&entry.char_s1, "chi");
            let mut result = predicate_record(name, &quotient, &p, &labels)?;
            result.value = Some(flat_tame_criterion(&q.datum));
            Ok(Report {
                file: Some(file),
                result,
            })
        }
        Command::ValidateObject {
            object,
            assembly,
            finite_type,
        } => validate_object(name, object, assembly, finite_type),
        Command::TameQuotient { ring } => tame(name, &ring),
        Command::HilbertBasis {
            weights,
            ring,
            nonnegative,
        } => {
            let constraint = if nonnegative {
                WeightConstraint::Nonnegative
            } else {
                WeightConstraint::EqualZero
            };
            let (file, weights, subject) = match (weights, ring) {
                (Some(w), _) => {
                    let subject = w.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                    (None, w, subject)
                }
                (None, Some(r)) => {
                    let (file, ring_name) = resolve(&r)?;
                    match file.rings.get(&ring_name) {
                        Some(RingEntry::Weighted(p)) => {
                            let d = p.degrees.clone();
                            (Some(file), d, r)
                        }
                        Some(_) => return Err(input_error(format!("{r} is not a weighted presentation"))),
                        None => return Err(missing(&r, "ring")),
                    }
                }
                (None, None) => unreachable!("clap requires one of the two"),
            };
            let basis = hilbert_basis(&weights, constraint, HilbertLimits::from_env())?;
            let mut result = record(name, &subject, if basis.is_empty() { "empty" } else { "ok" });
            result.basis = Some(basis);
            Ok(Report { file, result })
        }
        Command::CheckAdmissible { tr, rho } => {
            let parse = |v: &[String]| -> Result<Vec<BigRational>, Failure> {
                v.iter()
                    .map(|s| {
                        BigRational::from_str(s.trim())
                            .map_err(|_| input_error(format!("\"{s}\" is not a rational number")))
                    })
                    .collect()
            };
            let ok = check_admissible(&parse(&tr)?, &parse(&rho)?)?;
            let subject = format!("tr={} rho={}", tr.join(","), rho.join(","));
            let mut result = record(name, &subject, outcome_of(ok));
            result.value = Some(ok);
            Ok(Report { file: None, result })
        }
    }
}

fn check_fastened(name: &str, normal: Option<String>, chain: Option<String>) -> Result<Report, Failure> {
    let (reference, file, ok) = if let Some(r) = normal {
        let (file, n) = resolve(&r)?;
        let nc = file.normals.get(&n).ok_or_else(|| missing(&r, "normal character"))?;
        let ok = is_fastened(nc);
        (r, file, ok)
    } else {
        let r = chain.expect("clap requires one of the two");
        let (file, c) = resolve(&r)?;
        let fastened = |s: &SimpleEntry| !s.datum.char_l0.is_torsion(&s.datum.act_char);
        let ok = match file.chains.get(&c).ok_or_else(|| missing(&r, "chain"))? {
            // a single orbit has no closed orbit to fasten
            ChainEntry::Orbit { .. } => true,
            ChainEntry::Simple(s) => fastened(s),
            ChainEntry::Graph { graph } => file.graphs[graph]
                .edges()
                .iter()
                .all(|e| !e.chain.char_l0.is_torsion(&e.chain.act_char)),
        };
        (r, file, ok)
    };
    let mut result = record(name, &reference, outcome_of(ok));
    result.value = Some(ok);
    Ok(Report {
        file: Some(file),
        result,
    })
}

fn subgroup_result(name: &str, subject: &str, sub: &Subgroup, labels: &[String]) -> Result<RawResult, Failure> {
    let mut result = record(name, subject, "ok");
    result.subgroup = Some(subgroup_record(sub, labels)?);
    Ok(result)
}

fn graph_result(name: &str, subject: &str, g: &ChainGraph) -> Result<RawResult, Failure> {
    let sub = classify_line_bundles_graph(g)?;
    subgroup_result(name, subject, &sub, &g.coordinate_labels())
}

fn line_bundles(
    name: &str,
    chain: Option<String>,
    graph: Option<String>,
    character: Option<String>,
) -> Result<Report, Failure> {
    if let Some(r) = graph {
        if character.is_some() {
            return Err(input_error("--character applies to simple chains only"));
        }
        let (file, g) = resolve(&r)?;
        let graph = file.graphs.get(&g).ok_or_else(|| missing(&r, "graph"))?;
        let result = graph_result(name, &r, graph)?;
        return Ok(Report {
            file: Some(file),
            result,
        });
    }
    let r = chain.expect("clap requires one of the two");
    let (file, c) = resolve(&r)?;
    let entry = file.chains.get(&c).ok_or_else(|| missing(&r, "chain"))?;
    let result = match (entry, character) {
        (ChainEntry::Simple(s), Some(chi)) => {
            let chi = s.datum.char_s1.element(parse_ints(&chi)?).map_err(Error::from)?;
            let class = classify_line_bundles_simple(&s.datum, &chi)?;
            let mut result = record(name, &r, "ok");
            result.character = Some(chi.coords().iter().map(to_i64).collect::<Result<_, _>>()?);
            result.modulus = Some(to_i64(&class.modulus)?);
            result.residue = Some(to_i64(&class.residue)?);
            result
        }
        (_, Some(_)) => return Err(input_error("--character applies to simple chains only")),
        (ChainEntry::Orbit { chars, group }, None) => {
            subgroup_result(name, &r, &Subgroup::whole(group), &file.labels_of(chars, "lambda"))?
        }
        (ChainEntry::Simple(s), None) => {
            let fp = line_bundle_fiber_product(&s.datum)?;
            let mut labels = file.labels_of(&s.char_s1, "chi");
            labels.extend(file.labels_of(&s.char_l0, "lambda"));
            subgroup_result(name, &r, &fp, &labels)?
        }
        (ChainEntry::Graph { graph }, None) => graph_result(name, &r, &file.graphs[graph])?,
    };
    Ok(Report {
        file: Some(file),
        result,
    })
}

fn predicate_record(
    name: &str,
    subject: &str,
    p: &SubcategoryPredicate,
    labels: &[String],
) -> Result<RawResult, Failure> {
    let mut result = subgroup_result(name, subject, p.allowed(), labels)?;
    let residues = (0..p.allowed().group().ngens())
        .map(|i| {
            let r = p
                .residue_map()
                .apply(&p.allowed().group().generator(i))
                .expect("generator");
            to_i64(r.coords().first().unwrap_or(&BigInt::from(0)))
        })
        .collect::<Result<_, _>>()?;
    result.modulus = Some(to_i64(p.n())?);
    result.residues = Some(residues);
    if p.allowed().is_trivial() {
        result.outcome = "empty".into();
    }
    Ok(result)
}

fn violations(report: &ValidationReport) -> Vec<String> {
    report
        .violations()
        .iter()
        .map(|v| format!("{}: {}", v.subject, v.message))
        .collect()
}

fn validate_object(
    name: &str,
    object: Option<String>,
    assembly: Option<String>,
    finite_type: bool,
) -> Result<Report, Failure> {
    let (reference, file, report) = if let Some(r) = object {
        let (file, o) = resolve(&r)?;
        let entry = file.objects.get(&o).ok_or_else(|| missing(&r, "object"))?;
        let chain = &file
            .simple_chain(&entry.chain)
            .expect("objects reference simple chains")
            .datum;
        let report = validate_cn_object(chain, &entry.object, CnOptions { finite_type });
        (r, file, report)
    } else {
        let r = assembly.expect("clap requires one of the two");
        let (file, a) = resolve(&r)?;
        let report = match file.assemblies.get(&a).ok_or_else(|| missing(&r, "assembly"))? {
            AssemblyEntry::Graph { graph, assembly } => validate_assembly(&file.graphs[graph], assembly),
            AssemblyEntry::Chain { chain, open, closed } => {
                let mut report = ValidationReport::new();
                if let Some(s) = file.simple_chain(chain) {
                    let fp = line_bundle_fiber_product(&s.datum)?;
                    let coords: Vec<BigInt> = open.iter().chain(closed).flat_map(|x| x.coords().to_vec()).collect();
                    let point: Element = fp.ambient().element(coords).map_err(Error::from)?;
                    if !fp.contains(&point) {
                        report.push(
                            chain.as_str(),
                            format!("limit of {} does not match the restriction of {}", open[0], closed[0]),
                        );
                    }
                }
                report
            }
        };
        (r, file, report)
    };
    let ok = report.is_valid();
    let mut result = record(name, &reference, if ok { "ok" } else { "invalid" });
    result.value = Some(ok);
    result.violations = Some(violations(&report));
    Ok(Report {
        file: Some(file),
        result,
    })
}

fn tame(name: &str, reference: &str) -> Result<Report, Failure> {
    let (file, r) = resolve(reference)?;
    let mut result = record(name, reference, "ok");
    match file.rings.get(&r).ok_or_else(|| missing(reference, "ring"))? {
        RingEntry::IdealAdic(p) => {
            let q = tame_quotient(p)?;
            result.filtration = Some(
                q.per_component
                    .iter()
                    .map(|(c, f, _)| match f {
                        ComponentFiltration::Trivial => format!("{c}: F^m = all for m <= 0, 0 for m > 0"),
                        ComponentFiltration::All => format!("{c}: F^m = all for every m"),
                    })
                    .collect(),
            );
            result.special_fiber = Some(q.special_fiber.clone());
            result.specialization = Some(
                describe_specialization(&q)
                    .to_string()
                    .lines()
                    .map(String::from)
                    .collect(),
            );
        }
        RingEntry::Weighted(p) => {
            // the tame part F^{≥0} is generated by the degree-zero monomials
            let gens = f0_generators(p, HilbertLimits::from_env())?;
            result.filtration = Some(vec![format!(
                "F^0 generated by {}",
                if gens.is_empty() {
                    "1".to_string()
                } else {
                    gens.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                }
            )]);
            result.basis = Some(gens.into_iter().map(|m| m.exponents).collect());
        }
    }
    Ok(Report {
        file: Some(file),
        result,
    })
}
