use crate::{Error, Result};

/// A monomial ideal on a product of copies of the monoid algebra `k[N^dim]`.
///
/// On a component whose support flag is set the ideal is the unit ideal;
/// on every other component it is generated by `generators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdealData {
    pub dim: usize,
    pub generators: Vec<Vec<u64>>,
    pub unit_on_component: Vec<bool>,
}

impl MonomialIdealData {
    pub fn new(dim: usize, generators: Vec<Vec<u64>>, unit_on_component: Vec<bool>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != dim) {
            return Err(Error::Domain(format!(
                "exponent vector {g:?} does not have length {dim}"
            )));
        }
        Ok(MonomialIdealData {
            dim,
            generators,
            unit_on_component,
        })
    }

    /// Generators not divisible by another generator.
    pub fn minimal_generators(&self) -> Vec<Vec<u64>> {
        let mut gens = self.generators.clone();
        gens.sort();
        gens.dedup();
        gens.iter()
            .filter(|g| !gens.iter().any(|h| h != *g && divides(h, g)))
            .cloned()
            .collect()
    }
}

fn divides(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// `I = I²`: unit and zero pieces are idempotent; on the monomial part every
/// minimal generator must be divisible by a product of two generators.
pub fn is_idempotent(ideal: &MonomialIdealData) -> bool {
    let gens = ideal.minimal_generators();
    gens.iter().all(|g| {
        gens.iter().any(|a| {
            gens.iter().any(|b| {
                let sum: Vec<u64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                divides(&sum, g)
            })
        })
    })
}
