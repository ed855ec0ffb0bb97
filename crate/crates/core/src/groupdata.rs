//! Character-level data of an algebraic group and the fastenedness predicate.

use crate::intlin::{AbHom, Element, FgAbelianGroup};
use crate::report::ValidationReport;
use crate::{Error, Result};

/// Characters of a group `H` together with the characters of its component group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDatum {
    pub name: String,
    /// `Char(H)`.
    pub char_group: FgAbelianGroup,
    /// `Char(Com(H))`, which must be finite.
    pub com_char_group: FgAbelianGroup,
    /// Inflation of component characters to characters of `H`.
    pub com_pullback: AbHom,
}

impl GroupDatum {
    /// A group with trivial component group.
    pub fn connected(name: impl Into<String>, char_group: FgAbelianGroup) -> Self {
        let com = FgAbelianGroup::trivial();
        GroupDatum {
            name: name.into(),
            com_pullback: AbHom::zero(com.clone(), char_group.clone()),
            char_group,
            com_char_group: com,
        }
    }
}

pub fn validate_group_datum(g: &GroupDatum) -> ValidationReport {
    let mut report = ValidationReport::new();
    if !g.com_char_group.is_finite() {
        report.push(
            &g.name,
            format!(
                "component characters {} are infinite; the component group must be finite",
                g.com_char_group
            ),
        );
    }
    if g.com_pullback.source() != &g.com_char_group {
        report.push(
            &g.name,
            format!(
                "component pullback starts at {} instead of the component characters {}",
                g.com_pullback.source(),
                g.com_char_group
            ),
        );
    }
    if g.com_pullback.target() != &g.char_group {
        report.push(
            &g.name,
            format!(
                "component pullback lands in {} instead of the character group {}",
                g.com_pullback.target(),
                g.char_group
            ),
        );
    }
    if !g.com_pullback.is_injective() {
        report.push(&g.name, "component pullback is not injective");
    }
    report
}

/// A character of a stabilizer, meant as the action on a normal line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalCharacter {
    group: GroupDatum,
    value: Element,
}

impl NormalCharacter {
    pub fn new(group: GroupDatum, value: Element) -> Result<Self> {
        if !group.char_group.contains(&value) {
            return Err(Error::Domain(format!("{value} is not a character of {}", group.name)));
        }
        Ok(NormalCharacter { group, value })
    }

    pub fn group(&self) -> &GroupDatum {
        &self.group
    }

    pub fn value(&self) -> &Element {
        &self.value
    }
}

/// A character surjects onto the multiplicative group exactly when it has
/// infinite order: torsion characters factor through the component group.
pub fn is_fastened(nc: &NormalCharacter) -> bool {
    !nc.group.char_group.is_torsion(&nc.value)
}
