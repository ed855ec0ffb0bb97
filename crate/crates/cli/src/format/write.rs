use std::collections::BTreeMap;

use chainsheaf::intlin::Subgroup;
use chainsheaf::{Error, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::load::{ChainFile, FORMAT_VERSION};
use super::schema::{RawCongruence, RawFile, RawResult, RawSubgroup};

pub fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Resource(format!("{x} does not fit the 64-bit integers of the file format")))
}

fn row(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(to_i64).collect()
}

/// Generators of the subgroup's canonical form and its defining congruences.
pub fn subgroup_record(sub: &Subgroup, labels: &[String]) -> Result<RawSubgroup> {
    Ok(RawSubgroup {
        ambient: row(sub.ambient().orders())?,
        labels: labels.to_vec(),
        iso_type: row(sub.group().orders())?,
        generators: sub.basis().iter().map(|b| row(b.coords())).collect::<Result<_>>()?,
        conditions: sub
            .conditions()
            .iter()
            .map(|c| {
                Ok(RawCongruence {
                    coefficients: row(&c.coefficients)?,
                    modulus: to_i64(&c.modulus)?,
                })
            })
            .collect::<Result<_>>()?,
    })
}

/// `eps + mu ≡ 0 (mod 2)`, or `m - 2*k = 0` for an exact condition.
pub fn condition_text(c: &RawCongruence, labels: &[String]) -> String {
    let mut out = String::new();
    for (&a, label) in c.coefficients.iter().zip(labels) {
        if a == 0 {
            continue;
        }
        if out.is_empty() {
            if a < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if a < 0 { " - " } else { " + " });
        }
        if a.unsigned_abs() != 1 {
            out.push_str(&format!("{}*", a.unsigned_abs()));
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    if c.modulus == 0 {
        format!("{out} = 0")
    } else {
        format!("{out} ≡ 0 (mod {})", c.modulus)
    }
}

/// The input data followed by a `results` table; loads like any chain file.
pub fn write_machine(file: Option<&ChainFile>, results: BTreeMap<String, RawResult>) -> String {
    let mut raw = file.map(|f| f.raw().clone()).unwrap_or_else(|| RawFile {
        version: FORMAT_VERSION,
        ..RawFile::default()
    });
    raw.results = results;
    toml::to_string(&raw).expect("the schema serializes to TOML")
}
