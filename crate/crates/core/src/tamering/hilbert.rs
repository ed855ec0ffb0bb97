use std::fmt;

use crate::{Error, Result};

/// Environment variable overriding [`HilbertLimits::max_candidates`].
pub const CANDIDATE_LIMIT_VAR: &str = "CHAINSHEAF_HILBERT_LIMIT";

/// Which submonoid of `N^r` to describe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightConstraint {
    /// `Σ e_i d_i = 0`
    EqualZero,
    /// `Σ e_i d_i ≥ 0`
    Nonnegative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HilbertLimits {
    pub max_rank: usize,
    /// Bound on the number of monoid elements examined inside the search box.
    pub max_candidates: usize,
}

impl Default for HilbertLimits {
    fn default() -> Self {
        HilbertLimits {
            max_rank: 12,
            max_candidates: 5_000_000,
        }
    }
}

impl HilbertLimits {
    /// Defaults, with the candidate bound read from [`CANDIDATE_LIMIT_VAR`] when set.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(n) = std::env::var(CANDIDATE_LIMIT_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            limits.max_candidates = n;
        }
        limits
    }
}

/// Minimal generating set of `{e ∈ N^r : Σ e_i d_i = 0}` (or `≥ 0`), sorted
/// by total degree, then with larger leading exponents first.
///
/// Minimal solutions of one homogeneous equation have entries bounded by the
/// largest weight magnitude, so a box search followed by reduction is complete.
/// The inequality is handled as an equation with a slack variable of weight `-1`.
pub fn hilbert_basis(weights: &[i64], constraint: WeightConstraint, limits: HilbertLimits) -> Result<Vec<Vec<u64>>> {
    if weights.is_empty() {
        return Err(Error::Domain("need at least one weight".into()));
    }
    if weights.len() > limits.max_rank {
        return Err(Error::Resource(format!(
            "{} weights exceed the limit of {}",
            weights.len(),
            limits.max_rank
        )));
    }
    let mut w: Vec<i64> = weights.to_vec();
    if constraint == WeightConstraint::Nonnegative {
        w.push(-1);
    }
    let bound = w.iter().map(|d| d.unsigned_abs()).max().unwrap_or(0).max(1);

    let mut found = Vec::new();
    let mut current = vec![0u64; w.len()];
    let suffix = suffix_ranges(&w, bound);
    search(
        &w,
        bound,
        &suffix,
        0,
        0,
        &mut current,
        &mut found,
        limits.max_candidates,
    )?;

    found.sort_by(|a, b| total(a).cmp(&total(b)).then_with(|| a.cmp(b)));
    let mut basis: Vec<Vec<u64>> = Vec::new();
    for e in found {
        // e is reducible iff some smaller irreducible b leaves e - b in the monoid,
        // which holds automatically for an equation.
        let reducible = basis.iter().any(|b| b != &e && b.iter().zip(&e).all(|(x, y)| x <= y));
        if !reducible {
            basis.push(e);
        }
    }
    if constraint == WeightConstraint::Nonnegative {
        for b in &mut basis {
            b.pop();
        }
    }
    basis.sort_by(|a, b| total(a).cmp(&total(b)).then_with(|| b.cmp(a)));
    Ok(basis)
}

fn total(e: &[u64]) -> u64 {
    e.iter().sum()
}

/// For each position, the least and greatest value the remaining coordinates can contribute.
fn suffix_ranges(w: &[i64], bound: u64) -> Vec<(i128, i128)> {
    let b = bound as i128;
    let mut out = vec![(0i128, 0i128); w.len() + 1];
    for i in (0..w.len()).rev() {
        let d = w[i] as i128;
        let (lo, hi) = out[i + 1];
        out[i] = if d >= 0 { (lo, hi + d * b) } else { (lo + d * b, hi) };
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    w: &[i64],
    bound: u64,
    suffix: &[(i128, i128)],
    i: usize,
    partial: i128,
    current: &mut Vec<u64>,
    found: &mut Vec<Vec<u64>>,
    max_candidates: usize,
) -> Result<()> {
    if i == w.len() {
        if partial == 0 && current.iter().any(|&x| x > 0) {
            if found.len() >= max_candidates {
                return Err(Error::Resource(format!(
                    "more than {max_candidates} candidates; raise {CANDIDATE_LIMIT_VAR} to continue"
                )));
            }
            found.push(current.clone());
        }
        return Ok(());
    }
    let (lo, hi) = suffix[i + 1];
    for x in 0..=bound {
        let p = partial + (w[i] as i128) * (x as i128);
        if p + lo > 0 || p + hi < 0 {
            continue;
        }
        current[i] = x;
        search(w, bound, suffix, i + 1, p, current, found, max_candidates)?;
    }
    current[i] = 0;
    Ok(())
}

/// A monomial `s_1^{e_1} ... s_r^{e_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exponents: Vec<u64>,
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "s{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A polynomial ring on homogeneous generators of the given degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedFreePresentation {
    pub degrees: Vec<i64>,
}

/// Monomial generators of the degree-zero subring.
pub fn f0_generators(p: &WeightedFreePresentation, limits: HilbertLimits) -> Result<Vec<Monomial>> {
    Ok(hilbert_basis(&p.degrees, WeightConstraint::EqualZero, limits)?
        .into_iter()
        .map(|exponents| Monomial { exponents })
        .collect())
}
