//! Small fixtures shared by the unit tests.

use num_bigint::BigInt;

use super::chain::{ComponentData, SimpleChainDatum};
use crate::groupdata::GroupDatum;
use crate::intlin::{AbHom, FgAbelianGroup};

/// The weight-two chain of the positive open orbit closing up at the origin.
pub(crate) fn su11_plus() -> SimpleChainDatum {
    su11_chain("oplus", 1)
}

pub(crate) fn su11_chain(name: &str, sign: i64) -> SimpleChainDatum {
    let z = FgAbelianGroup::free(1);
    let z2 = FgAbelianGroup::cyclic(2);
    let id2 = AbHom::identity(z2.clone());
    let com = GroupDatum {
        name: format!("{name}-com"),
        char_group: z2.clone(),
        com_char_group: z2.clone(),
        com_pullback: id2.clone(),
    };
    SimpleChainDatum {
        name: name.into(),
        n: BigInt::from(2),
        char_s1: z2.clone(),
        char_s0: z2.clone(),
        char_l0: z.clone(),
        lim_map: id2.clone(),
        iota_res: AbHom::from_i64(z.clone(), z2.clone(), &[&[1]]).unwrap(),
        gamma_pair: AbHom::from_i64(z.clone(), z.clone(), &[&[sign]]).unwrap(),
        mu_n_res: id2.clone(),
        act_char: z.element_i64(&[2 * sign]).unwrap(),
        components: Some(ComponentData {
            com_s1: com.clone(),
            com_s0: com,
            sigma_res: id2,
        }),
        top_wedge: None,
    }
}
