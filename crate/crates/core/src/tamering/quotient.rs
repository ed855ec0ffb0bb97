use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use super::ideal::MonomialIdealData;
use crate::intlin::{AbHom, FgAbelianGroup};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdealKind {
    Zero,
    ProperPrincipal,
    Unit,
}

/// `F^∞`, the intersection of all filtration steps, on one component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FInfinity {
    Zero,
    All,
}

/// One connected component carrying an ideal-adic filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealAdicComponent {
    pub name: String,
    pub integral: bool,
    pub ideal: IdealKind,
    /// Required on non-integral components, where it cannot be derived.
    pub f_infinity: Option<FInfinity>,
}

/// Character-level description of the zero fiber's image in the general fiber:
/// restriction of characters from the general fiber to that image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentGroupData {
    pub general_name: String,
    pub general_chars: FgAbelianGroup,
    pub special_chars: FgAbelianGroup,
    pub restriction: AbHom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealAdicPresentation {
    pub components: Vec<IdealAdicComponent>,
    pub component_groups: Option<ComponentGroupData>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentFiltration {
    /// `F^{≥m} = R` for `m ≤ 0` and `0` for `m > 0`.
    Trivial,
    /// `F^{≥m} = R` for every `m`.
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiltrationSummary {
    Trivial,
    All,
    PerComponent(Vec<(String, ComponentFiltration)>),
}

impl fmt::Display for FiltrationSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationSummary::Trivial => write!(f, "trivial"),
            FiltrationSummary::All => write!(f, "all"),
            FiltrationSummary::PerComponent(v) => {
                for (i, (name, c)) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    let tag = match c {
                        ComponentFiltration::Trivial => "trivial",
                        ComponentFiltration::All => "all",
                    };
                    write!(f, "{name}: {tag}")?;
                }
                Ok(())
            }
        }
    }
}

/// How the tame quotient looks over one component of the general fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentSpecialization {
    /// The component times the line; it is present at zero.
    Identity,
    /// The component times the punctured line; it is absent at zero.
    OpenEmbedding,
}

/// A component of the general fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberComponent {
    pub name: String,
    pub integral: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameQuotientResult {
    pub general_fiber: Vec<FiberComponent>,
    pub special_fiber: Vec<String>,
    pub per_component: Vec<(String, ComponentFiltration, ComponentSpecialization)>,
    pub component_groups: Option<ComponentGroupData>,
}

impl TameQuotientResult {
    pub fn filtration(&self) -> FiltrationSummary {
        let tags: Vec<ComponentFiltration> = self.per_component.iter().map(|(_, f, _)| *f).collect();
        if tags.iter().all(|f| *f == ComponentFiltration::Trivial) {
            FiltrationSummary::Trivial
        } else if tags.iter().all(|f| *f == ComponentFiltration::All) {
            FiltrationSummary::All
        } else {
            FiltrationSummary::PerComponent(self.per_component.iter().map(|(n, f, _)| (n.clone(), *f)).collect())
        }
    }

    /// `F^{≥1}` of the tame quotient: the unit ideal on components with
    /// filtration `All`, zero elsewhere.
    pub fn f_ge1_ideal(&self) -> MonomialIdealData {
        MonomialIdealData {
            dim: 0,
            generators: Vec::new(),
            unit_on_component: self
                .per_component
                .iter()
                .map(|(_, f, _)| *f == ComponentFiltration::All)
                .collect(),
        }
    }

    /// The tame quotient written as an ideal-adic presentation again.
    pub fn to_presentation(&self) -> IdealAdicPresentation {
        let components = self
            .general_fiber
            .iter()
            .zip(&self.per_component)
            .map(|(c, (_, f, _))| {
                let (ideal, f_inf) = match f {
                    ComponentFiltration::Trivial => (IdealKind::Zero, FInfinity::Zero),
                    ComponentFiltration::All => (IdealKind::Unit, FInfinity::All),
                };
                IdealAdicComponent {
                    name: c.name.clone(),
                    integral: c.integral,
                    ideal,
                    f_infinity: if c.integral { None } else { Some(f_inf) },
                }
            })
            .collect();
        IdealAdicPresentation {
            components,
            component_groups: self.component_groups.clone(),
        }
    }
}

/// Universal tame quotient, one component at a time: the filtration is
/// replaced by `F^{≥m} = R` for `m ≤ 0` and `F^∞` for `m > 0`.
///
/// On an integral component the Krull intersection theorem gives `F^∞ = 0`
/// for a proper ideal, so the component survives at zero; the unit ideal
/// gives `F^∞ = R` and the component disappears from the zero fiber.
pub fn tame_quotient(p: &IdealAdicPresentation) -> Result<TameQuotientResult> {
    if p.components.is_empty() {
        return Err(Error::Domain("a presentation needs at least one component".into()));
    }
    let mut per_component = Vec::new();
    let mut special_fiber = Vec::new();
    for c in &p.components {
        let f_inf = if c.integral {
            match c.ideal {
                IdealKind::Zero | IdealKind::ProperPrincipal => FInfinity::Zero,
                IdealKind::Unit => FInfinity::All,
            }
        } else {
            match (c.ideal, c.f_infinity) {
                (IdealKind::Unit, _) => FInfinity::All,
                (IdealKind::Zero, _) => FInfinity::Zero,
                (IdealKind::ProperPrincipal, Some(f)) => f,
                (IdealKind::ProperPrincipal, None) => {
                    return Err(Error::Unsupported(format!(
                        "component {} is not integral; supply its F^inf explicitly",
                        c.name
                    )))
                }
            }
        };
        let (filt, spec) = match f_inf {
            FInfinity::Zero => (ComponentFiltration::Trivial, ComponentSpecialization::Identity),
            FInfinity::All => (ComponentFiltration::All, ComponentSpecialization::OpenEmbedding),
        };
        if spec == ComponentSpecialization::Identity {
            special_fiber.push(c.name.clone());
        }
        per_component.push((c.name.clone(), filt, spec));
    }
    if let Some(g) = &p.component_groups {
        if g.restriction.source() != &g.general_chars || g.restriction.target() != &g.special_chars {
            return Err(Error::Structural(format!(
                "component restriction must map {} to {}",
                g.general_chars, g.special_chars
            )));
        }
    }
    Ok(TameQuotientResult {
        general_fiber: p
            .components
            .iter()
            .map(|c| FiberComponent {
                name: c.name.clone(),
                integral: c.integral,
            })
            .collect(),
        special_fiber,
        per_component,
        component_groups: p.component_groups.clone(),
    })
}

/// The map from the zero fiber of the tame quotient to its general fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationDescription {
    pub components: Vec<(String, ComponentSpecialization)>,
    /// Present when group data was supplied.
    pub group_map: Option<GroupMapDescription>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMapDescription {
    pub general_name: String,
    /// Isomorphism type of the image of the zero fiber.
    pub image: FgAbelianGroup,
    /// Injective on groups, i.e. surjective on characters.
    pub injective: bool,
    /// For a finite image in a group with free characters, the exponent `e`
    /// such that the image is the `e`-torsion.
    pub torsion_exponent: Option<BigInt>,
}

impl fmt::Display for SpecializationDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, s)) in self.components.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let tag = match s {
                ComponentSpecialization::Identity => "identity",
                ComponentSpecialization::OpenEmbedding => "open embedding (absent at zero)",
            };
            write!(f, "{name}: {tag}")?;
        }
        if let Some(g) = &self.group_map {
            writeln!(f)?;
            if g.injective {
                write!(f, "zero fiber image {} embeds in {}", g.image, g.general_name)?;
                if let Some(e) = &g.torsion_exponent {
                    write!(f, " as the {e}-torsion")?;
                }
            } else {
                write!(f, "zero fiber maps to {} with image {}", g.general_name, g.image)?;
            }
        }
        Ok(())
    }
}

pub fn describe_specialization(result: &TameQuotientResult) -> SpecializationDescription {
    let components = result.per_component.iter().map(|(n, _, s)| (n.clone(), *s)).collect();
    let group_map = result.component_groups.as_ref().map(|g| {
        let injective = g.restriction.is_surjective();
        let image = g.restriction.image().group().canonical();
        // Image of a finite group inside a torus: the characters killed are exactly
        // the multiples of the exponent when the character lattice has rank one.
        let torsion_exponent =
            (injective && g.general_chars.free_rank() == 1 && g.general_chars.ngens() == 1 && image.is_finite()).then(
                || {
                    g.restriction
                        .kernel()
                        .basis()
                        .first()
                        .map(|b| b.coords()[0].abs())
                        .unwrap_or_default()
                },
            );
        GroupMapDescription {
            general_name: g.general_name.clone(),
            image,
            injective,
            torsion_exponent,
        }
    });
    SpecializationDescription { components, group_map }
}
