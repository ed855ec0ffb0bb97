use num_bigint::BigInt;
use num_traits::One;

use super::object::Degree;
use crate::{Error, Result};

/// A chain of injections `... -> V_i -> V_{i+1} -> ...` recorded by dimensions.
///
/// Below the first step every `V_i` has dimension `floor`; `steps` lists
/// `(i, dim V_i)` at the degrees where the dimension grows, after which it is
/// constant until the next step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedInjectionChain {
    floor: usize,
    steps: Vec<(BigInt, usize)>,
}

impl GradedInjectionChain {
    /// Validates and normalizes: degrees must increase and dimensions must not drop.
    pub fn new(floor: usize, steps: Vec<(BigInt, usize)>) -> Result<Self> {
        let mut prev_dim = floor;
        let mut prev_deg: Option<&BigInt> = None;
        for (d, k) in &steps {
            if prev_deg.is_some_and(|p| p >= d) {
                return Err(Error::Domain("chain degrees must strictly increase".into()));
            }
            if *k < prev_dim {
                return Err(Error::Domain(format!(
                    "dimension drops from {prev_dim} to {k} at degree {d}; the maps must be injective"
                )));
            }
            prev_dim = *k;
            prev_deg = Some(d);
        }
        let mut kept = Vec::new();
        let mut last = floor;
        for (d, k) in steps {
            if k > last {
                last = k;
                kept.push((d, k));
            }
        }
        Ok(GradedInjectionChain { floor, steps: kept })
    }

    /// Dimensions of `V_start, V_{start+1}, ...`; earlier terms equal the first,
    /// later terms equal the last.
    pub fn from_dimensions(start: BigInt, dims: &[usize]) -> Result<Self> {
        let floor = dims.first().copied().unwrap_or(0);
        let mut steps = Vec::new();
        let mut at = start;
        for &k in dims {
            steps.push((at.clone(), k));
            at += BigInt::one();
        }
        Self::new(floor, steps)
    }

    pub fn floor(&self) -> usize {
        self.floor
    }

    pub fn steps(&self) -> &[(BigInt, usize)] {
        &self.steps
    }

    /// `dim V_i`.
    pub fn dim_at(&self, i: &BigInt) -> usize {
        self.steps
            .iter()
            .take_while(|(d, _)| d <= i)
            .last()
            .map_or(self.floor, |(_, k)| *k)
    }

    /// `dim colim V_i`.
    pub fn total_dim(&self) -> usize {
        self.steps.last().map_or(self.floor, |(_, k)| *k)
    }
}

/// Reads off one line per jump of the chain. A line appearing at step `i`
/// gets degree `i`; lines present in every `V_i` get degree `+∞`.
pub fn artin_rees(chain: &GradedInjectionChain) -> Vec<Degree> {
    let mut out = vec![Degree::Infinite; chain.floor];
    let mut last = chain.floor;
    for (d, k) in &chain.steps {
        out.extend(std::iter::repeat_n(Degree::Finite(d.clone()), k - last));
        last = *k;
    }
    out.sort();
    out
}

/// Inverse of [`artin_rees`]: `dim V_i` counts the lines of degree at most `i`
/// together with those at `+∞`.
pub fn rees_chain(degrees: &[Degree]) -> GradedInjectionChain {
    let floor = degrees.iter().filter(|d| d.is_infinite()).count();
    let mut finite: Vec<&BigInt> = degrees.iter().filter_map(Degree::as_finite).collect();
    finite.sort();
    let mut steps: Vec<(BigInt, usize)> = Vec::new();
    let mut count = floor;
    for d in finite {
        count += 1;
        match steps.last_mut() {
            Some((last, k)) if last == d => *k = count,
            _ => steps.push((d.clone(), count)),
        }
    }
    GradedInjectionChain { floor, steps }
}
