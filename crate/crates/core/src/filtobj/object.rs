use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::chaincore::{m_class, SimpleChainDatum};
use crate::intlin::Element;
use crate::report::ValidationReport;
use crate::{Error, Result};

/// A filtration degree: an integer, or `+∞` for lines in every filtration step.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    Finite(BigInt),
    Infinite,
}

impl Degree {
    pub fn finite(d: i64) -> Self {
        Degree::Finite(BigInt::from(d))
    }

    pub fn as_finite(&self) -> Option<&BigInt> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Degree::Infinite)
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
            (Degree::Finite(_), Degree::Infinite) => Ordering::Less,
            (Degree::Infinite, Degree::Finite(_)) => Ordering::Greater,
            (Degree::Infinite, Degree::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(d) => write!(f, "{d}"),
            Degree::Infinite => write!(f, "inf"),
        }
    }
}

/// A character line sitting in filtration degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    pub chi: Element,
    pub degree: Degree,
}

/// A split filtered representation: `F^{≥m}` is spanned by the lines of degree at least `m`.
///
/// Lines are kept sorted, so equality is multiset equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FilteredObject {
    lines: Vec<Line>,
}

impl FilteredObject {
    pub fn new(mut lines: Vec<Line>) -> Self {
        lines.sort();
        FilteredObject { lines }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn dim(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// `dim F^{≥m}`.
    pub fn filtration_dim(&self, m: &BigInt) -> usize {
        self.lines
            .iter()
            .filter(|l| match &l.degree {
                Degree::Finite(d) => d >= m,
                Degree::Infinite => true,
            })
            .count()
    }

    /// Multiplies every finite degree by `n`.
    pub fn scale_degrees(&self, n: &BigInt) -> FilteredObject {
        self.map_degrees(|d| d * n)
    }

    fn map_degrees(&self, f: impl Fn(&BigInt) -> BigInt) -> FilteredObject {
        FilteredObject::new(
            self.lines
                .iter()
                .map(|l| Line {
                    chi: l.chi.clone(),
                    degree: match &l.degree {
                        Degree::Finite(d) => Degree::Finite(f(d)),
                        Degree::Infinite => Degree::Infinite,
                    },
                })
                .collect(),
        )
    }
}

/// Options for [`validate_cn_object`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CnOptions {
    /// Reject lines at `+∞`, as for coherent objects.
    pub finite_type: bool,
}

/// Every finite-degree line `(χ, d)` must satisfy `d ≡ m_class(χ) (mod n)`.
pub fn validate_cn_object(c: &SimpleChainDatum, obj: &FilteredObject, opts: CnOptions) -> ValidationReport {
    let mut report = ValidationReport::new();
    for (i, line) in obj.lines().iter().enumerate() {
        let subject = format!("line {i}");
        let m = match m_class(c, &line.chi) {
            Ok(m) => m,
            Err(e) => {
                report.push(subject, e.to_string());
                continue;
            }
        };
        match &line.degree {
            Degree::Finite(d) => {
                if !(d - &m).is_multiple_of(&c.n) {
                    report.push(
                        subject,
                        format!("degree {d} of {} is not congruent to {m} mod {}", line.chi, c.n),
                    );
                }
            }
            Degree::Infinite => {
                if opts.finite_type {
                    report.push(subject, format!("line {} sits at infinite degree", line.chi));
                }
            }
        }
    }
    report
}

/// Whether every finite degree is divisible by `n`.
pub fn divisibility_check(obj: &FilteredObject, n: &BigInt) -> bool {
    obj.lines()
        .iter()
        .filter_map(|l| l.degree.as_finite())
        .all(|d| d.is_multiple_of(n))
}

/// Divides every finite degree by `n`; requires [`divisibility_check`].
pub fn rescale(obj: &FilteredObject, n: &BigInt) -> Result<FilteredObject> {
    if !n.is_positive() {
        return Err(Error::Domain(format!("rescaling needs a positive factor, got {n}")));
    }
    if !divisibility_check(obj, n) {
        return Err(Error::Precondition(format!("some degree is not a multiple of {n}")));
    }
    Ok(obj.map_degrees(|d| d / n))
}

/// Whether every degree is `0` or `+∞`.
pub fn is_tame(obj: &FilteredObject) -> bool {
    obj.lines().iter().all(|l| match &l.degree {
        Degree::Finite(d) => d.is_zero(),
        Degree::Infinite => true,
    })
}

/// Drops negative degrees and moves positive finite degrees to `0`.
pub fn tame_truncate(obj: &FilteredObject) -> FilteredObject {
    FilteredObject::new(
        obj.lines()
            .iter()
            .filter_map(|l| match &l.degree {
                Degree::Finite(d) if d.is_negative() => None,
                Degree::Finite(_) => Some(Line {
                    chi: l.chi.clone(),
                    degree: Degree::Finite(BigInt::zero()),
                }),
                Degree::Infinite => Some(l.clone()),
            })
            .collect(),
    )
}

/// Dimension of the space of filtered, character-preserving maps `a -> b`.
pub fn filtered_hom_dim(a: &FilteredObject, b: &FilteredObject) -> usize {
    a.lines()
        .iter()
        .map(|x| {
            b.lines()
                .iter()
                .filter(|y| y.chi == x.chi && x.degree <= y.degree)
                .count()
        })
        .sum()
}
