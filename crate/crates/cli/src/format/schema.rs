//! Serde mirror of the chain file, before any reference is resolved.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use toml::Spanned;

pub type Section<T> = BTreeMap<String, Spanned<T>>;

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: Section<RawGroup>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub homs: Section<RawHom>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub data: Section<RawDatum>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub normals: Section<RawNormal>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub chains: Section<RawChain>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub graphs: Section<RawGraph>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub objects: Section<RawObject>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub assemblies: Section<RawAssembly>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub rings: Section<RawRing>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub quotients: Section<RawQuotient>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub results: BTreeMap<String, RawResult>,
}

/// Either `orders` (a direct sum of cyclic groups, 0 for `Z`) or a
/// presentation by `generators` and relation rows.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGroup {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// Rows index generators of the target, columns generators of the source.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawHom {
    pub source: String,
    pub target: String,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDatum {
    pub chars: String,
    pub com_chars: String,
    pub com_pullback: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawNormal {
    pub data: String,
    pub value: Vec<i64>,
}

/// `kind` is `orbit`, `simple` or `graph`; the other fields depend on it.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawChain {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chars: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_s1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_s0: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_l0: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lim: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iota: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub act: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub com_s1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub com_s0: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity_chars: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r0: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_char0: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOrbit {
    pub name: String,
    pub chars: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEdge {
    pub name: String,
    pub open: String,
    pub closed: String,
    pub chain: String,
    pub open_ident: String,
    pub pull: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restrict_l0: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGraph {
    pub open: Vec<RawOrbit>,
    pub closed: Vec<RawOrbit>,
    pub edges: Vec<RawEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawDegree {
    Finite(i64),
    /// Only `"inf"` is accepted.
    Named(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLine {
    pub chi: Vec<i64>,
    pub degree: RawDegree,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawObject {
    pub chain: String,
    pub lines: Vec<RawLine>,
}

/// A line bundle on a chain (`open`/`closed` characters), or a vector bundle
/// on a graph (`open_reps`/`closed_reps` multisets and one object per edge).
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAssembly {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub open: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub open_reps: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_reps: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComponent {
    pub name: String,
    pub integral: bool,
    /// `zero`, `proper-principal` or `unit`.
    pub ideal: String,
    /// `zero` or `all`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_infinity: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComponentGroups {
    pub general: String,
    pub general_chars: String,
    pub special_chars: String,
    pub restriction: String,
}

/// `kind` is `weighted` (with `degrees`) or `ideal-adic` (with `components`).
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRing {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<RawComponent>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component_groups: Option<RawComponentGroups>,
}

/// `spec_images[i]` is the specialization of `sub[i]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawQuotient {
    pub chain: String,
    pub sub: Vec<Vec<i64>>,
    pub char_h0: String,
    pub spec_images: Vec<Vec<i64>>,
    pub proj0: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCongruence {
    pub coefficients: Vec<i64>,
    pub modulus: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSubgroup {
    pub ambient: Vec<i64>,
    pub labels: Vec<String>,
    pub iso_type: Vec<i64>,
    pub generators: Vec<Vec<i64>>,
    pub conditions: Vec<RawCongruence>,
}

/// The outcome of one command, written by `--format machine`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawResult {
    pub command: String,
    pub subject: String,
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<RawSubgroup>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue: Option<i64>,
    /// Residues mod `modulus` of the subgroup generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residues: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violations: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub special_fiber: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub specialization: Option<Vec<String>>,
}
