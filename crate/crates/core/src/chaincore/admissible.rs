use num_rational::BigRational;

use crate::{Error, Result};

/// Whether `rho = tr / 2` componentwise, with both functionals given on the same basis.
pub fn check_admissible(tr_pairing: &[BigRational], rho_pairing: &[BigRational]) -> Result<bool> {
    if tr_pairing.len() != rho_pairing.len() {
        return Err(Error::Domain(format!(
            "trace pairing has {} entries but rho pairing has {}",
            tr_pairing.len(),
            rho_pairing.len()
        )));
    }
    let half = BigRational::new(1.into(), 2.into());
    Ok(tr_pairing.iter().zip(rho_pairing).all(|(t, r)| &(t * &half) == r))
}
