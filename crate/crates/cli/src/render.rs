//! Aligned text rendering of a result record.

use crate::format::{condition_text, RawResult, RawSubgroup};

fn group_name(order: i64) -> String {
    match order {
        0 => "Z".into(),
        d => format!("Z/{d}"),
    }
}

fn iso_type(orders: &[i64]) -> String {
    if orders.is_empty() {
        "0".into()
    } else {
        orders.iter().map(|&d| group_name(d)).collect::<Vec<_>>().join(" + ")
    }
}

fn columns(rows: &[(String, Vec<String>)]) -> String {
    let head = rows.iter().map(|(h, _)| h.chars().count()).max().unwrap_or(0);
    let ncols = rows.iter().map(|(_, r)| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|j| {
            rows.iter()
                .filter_map(|(_, r)| r.get(j))
                .map(|c| c.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for (h, r) in rows {
        let mut line = format!("  {h:<head$}");
        for (c, w) in r.iter().zip(&widths) {
            line.push_str(&format!("  {c:>w$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn subgroup(s: &RawSubgroup, residues: Option<(&[i64], i64)>) -> String {
    let mut rows = vec![
        ("coordinate".to_string(), s.labels.clone()),
        ("group".to_string(), s.ambient.iter().map(|&d| group_name(d)).collect()),
    ];
    for (i, g) in s.generators.iter().enumerate() {
        let head = format!("generator {}", i + 1);
        rows.push((head, g.iter().map(ToString::to_string).collect()));
    }
    let mut out = columns(&rows);
    out.push_str(&format!("  isomorphism type: {}\n", iso_type(&s.iso_type)));
    if let Some((res, n)) = residues {
        for (i, r) in res.iter().enumerate() {
            out.push_str(&format!("  generator {} has residue {r} mod {n}\n", i + 1));
        }
    }
    if s.conditions.is_empty() {
        out.push_str("  conditions: none\n");
    } else {
        out.push_str("  conditions:\n");
        for c in &s.conditions {
            out.push_str(&format!("    {}\n", condition_text(c, &s.labels)));
        }
    }
    out
}

pub fn table(r: &RawResult) -> String {
    let mut out = format!("{} {}: {}\n", r.command, r.subject, r.outcome);
    if let Some(s) = &r.subgroup {
        let residues = r.residues.as_deref().zip(r.modulus);
        out.push_str(&subgroup(s, residues));
    }
    if let (Some(chi), Some(n), Some(m)) = (&r.character, r.modulus, r.residue) {
        let chi: Vec<String> = chi.iter().map(ToString::to_string).collect();
        let class = match n {
            0 => format!("d = {m}"),
            1 => "every d".to_string(),
            n => format!("d ≡ {m} (mod {n})"),
        };
        out.push_str(&format!("  character ({}): degrees {class}\n", chi.join(", ")));
    }
    if let Some(v) = r.value {
        let what = match r.command.as_str() {
            "check-fastened" => "fastened",
            "classify-tame" => "flat tame criterion",
            "validate-object" => "valid",
            "check-admissible" => "admissible",
            _ => "value",
        };
        out.push_str(&format!("  {what}: {v}\n"));
    }
    if let Some(vs) = &r.violations {
        for v in vs {
            out.push_str(&format!("  violation: {v}\n"));
        }
    }
    if let Some(f) = &r.filtration {
        for line in f {
            out.push_str(&format!("  filtration: {line}\n"));
        }
    }
    if let Some(s) = &r.special_fiber {
        out.push_str(&format!("  special fiber: {}\n", s.join(", ")));
    }
    if let Some(s) = &r.specialization {
        for line in s {
            out.push_str(&format!("  specialization: {line}\n"));
        }
    }
    if let Some(b) = &r.basis {
        if b.is_empty() {
            out.push_str("  basis: none\n");
        }
        for e in b {
            let e: Vec<String> = e.iter().map(ToString::to_string).collect();
            out.push_str(&format!("  basis: ({})\n", e.join(", ")));
        }
    }
    out
}
