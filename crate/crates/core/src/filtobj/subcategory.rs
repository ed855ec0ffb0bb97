use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::object::{Degree, FilteredObject, Line};
use crate::chaincore::SimpleChainDatum;
use crate::intlin::{AbHom, Element, FgAbelianGroup, Subgroup};
use crate::report::ValidationReport;
use crate::{Error, Result};

/// Membership test for a full subcategory of filtered objects on a chain:
/// characters must lie in `allowed`, and a line `(χ, d)` of finite degree
/// needs `d ≡ residue(χ) (mod n)`.
#[derive(Clone, Debug)]
pub struct SubcategoryPredicate {
    allowed: Subgroup,
    n: BigInt,
    /// From `allowed.group()` to `Z/n`.
    residue: AbHom,
}

impl SubcategoryPredicate {
    pub fn allowed(&self) -> &Subgroup {
        &self.allowed
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn residue_map(&self) -> &AbHom {
        &self.residue
    }

    /// The required residue of `chi`, or `None` when `chi` is not allowed.
    pub fn residue_of(&self, chi: &Element) -> Option<BigInt> {
        let c = self.allowed.coordinates(chi)?;
        let r = self.residue.apply(&c).expect("coordinates lie in the subgroup");
        Some(r.coords().first().cloned().unwrap_or_else(BigInt::zero))
    }

    pub fn admits_line(&self, line: &Line) -> bool {
        match (self.residue_of(&line.chi), &line.degree) {
            (None, _) => false,
            (Some(_), Degree::Infinite) => true,
            (Some(m), Degree::Finite(d)) => (d - m).is_multiple_of(&self.n),
        }
    }

    pub fn check(&self, obj: &FilteredObject) -> ValidationReport {
        let mut report = ValidationReport::new();
        for (i, line) in obj.lines().iter().enumerate() {
            match self.residue_of(&line.chi) {
                None => report.push(
                    format!("line {i}"),
                    format!("character {} is outside the admitted subgroup", line.chi),
                ),
                Some(m) => {
                    if let Degree::Finite(d) = &line.degree {
                        if !(d - &m).is_multiple_of(&self.n) {
                            report.push(
                                format!("line {i}"),
                                format!("degree {d} of {} is not congruent to {m} mod {}", line.chi, self.n),
                            );
                        }
                    }
                }
            }
        }
        report
    }

    pub fn admits(&self, obj: &FilteredObject) -> bool {
        obj.lines().iter().all(|l| self.admits_line(l))
    }
}

fn residue_from_images(
    c: &SimpleChainDatum,
    allowed: &Subgroup,
    image_of: impl Fn(&Element) -> Result<Element>,
) -> Result<AbHom> {
    let zn = c.mu_n_group();
    let images = allowed
        .basis()
        .iter()
        .map(|b| image_of(b).and_then(|x| Ok(c.mu_n_res.apply(&x)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AbHom::from_images(allowed.group().clone(), zn, &images)?)
}

/// Objects whose characters factor through the component group, with the
/// congruence computed through the component-level specialization.
pub fn classify_local_systems(c: &SimpleChainDatum) -> Result<SubcategoryPredicate> {
    let comp = c
        .components
        .as_ref()
        .ok_or_else(|| Error::Configuration(format!("chain {} has no component data", c.name)))?;
    let pull1 = &comp.com_s1.com_pullback;
    let allowed = pull1.image();
    let route = comp.sigma_res.then(&comp.com_s0.com_pullback)?;
    let residue = residue_from_images(c, &allowed, |chi| {
        let coeffs = allowed
            .express(chi)
            .ok_or_else(|| Error::Domain(format!("{chi} is not a component character")))?;
        let com = pull1.source().element(coeffs)?;
        let via_sigma = route.apply(&com)?;
        let via_lim = c.lim_map.apply(chi)?;
        if c.mu_n_res.apply(&via_sigma)? != c.mu_n_res.apply(&via_lim)? {
            return Err(Error::Invalid({
                let mut r = ValidationReport::new();
                r.push(&c.name, format!("limit and component routes disagree on {chi}"));
                r
            }));
        }
        Ok(via_sigma)
    })?;
    Ok(SubcategoryPredicate {
        allowed,
        n: c.n.clone(),
        residue,
    })
}

/// The character-level shadow of a quotient of the stabilizer scheme over the line.
#[derive(Clone, Debug)]
pub struct TameQuotientDatum {
    pub sub: Subgroup,
    pub char_h0: FgAbelianGroup,
    /// From `sub.group()` to `char_h0`.
    pub spec_res: AbHom,
    /// From `char_h0` to `char_s0` of the chain.
    pub proj0_res: AbHom,
}

impl TameQuotientDatum {
    /// Checks shapes and that specializing then projecting recovers the limit map.
    pub fn validate(&self, c: &SimpleChainDatum) -> ValidationReport {
        let mut report = ValidationReport::new();
        let name = format!("{}/quotient", c.name);
        if self.sub.ambient() != &c.char_s1 {
            report.push(
                &name,
                format!("subgroup lives in {}, not {}", self.sub.ambient(), c.char_s1),
            );
        }
        if self.spec_res.source() != self.sub.group() || self.spec_res.target() != &self.char_h0 {
            report.push(
                &name,
                format!("specialization must map {} to {}", self.sub.group(), self.char_h0),
            );
        }
        if self.proj0_res.source() != &self.char_h0 || self.proj0_res.target() != &c.char_s0 {
            report.push(&name, format!("projection must map {} to {}", self.char_h0, c.char_s0));
        }
        if !report.is_valid() {
            return report;
        }
        let lhs = self.spec_res.then(&self.proj0_res).expect("shapes checked");
        let rhs = self.sub.inclusion().then(&c.lim_map).expect("shapes checked");
        if lhs != rhs {
            report.push(&name, "projection after specialization differs from the limit map");
        }
        report
    }

    /// The identity quotient: everything, specializing by the limit map.
    pub fn identity(c: &SimpleChainDatum) -> Self {
        let sub = Subgroup::whole(&c.char_s1);
        let spec_res = sub.inclusion().then(&c.lim_map).expect("inclusion into char_s1");
        TameQuotientDatum {
            char_h0: c.char_s0.clone(),
            proj0_res: AbHom::identity(c.char_s0.clone()),
            spec_res,
            sub,
        }
    }

    /// The quotient by the identity component, through the component groups.
    pub fn local_systems(c: &SimpleChainDatum) -> Result<Self> {
        let comp = c
            .components
            .as_ref()
            .ok_or_else(|| Error::Configuration(format!("chain {} has no component data", c.name)))?;
        let sub = comp.com_s1.com_pullback.image();
        let char_h0 = comp.com_s0.com_char_group.clone();
        let images = sub
            .basis()
            .iter()
            .map(|b| {
                let coeffs = sub.express(b).expect("basis lies in the subgroup");
                let com = comp.com_s1.com_char_group.element(coeffs)?;
                Ok(comp.sigma_res.apply(&com)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let spec_res = AbHom::from_images(sub.group().clone(), char_h0.clone(), &images)?;
        Ok(TameQuotientDatum {
            sub,
            char_h0,
            spec_res,
            proj0_res: comp.com_s0.com_pullback.clone(),
        })
    }
}

/// Objects with characters in the quotient's subgroup and degrees congruent to
/// `mu_n_res(proj0_res(spec_res(χ)))`.
pub fn classify_under_tame_quotient(c: &SimpleChainDatum, tq: &TameQuotientDatum) -> Result<SubcategoryPredicate> {
    tq.validate(c).into_result()?;
    let route = tq.spec_res.then(&tq.proj0_res)?;
    let allowed = tq.sub.clone();
    let residue = residue_from_images(c, &allowed, |chi| {
        let x = allowed
            .coordinates(chi)
            .ok_or_else(|| Error::Domain(format!("{chi} is outside the quotient")))?;
        Ok(route.apply(&x)?)
    })?;
    Ok(SubcategoryPredicate {
        allowed,
        n: c.n.clone(),
        residue,
    })
}

/// Whether the zero-fiber projection is surjective on groups, i.e. injective on characters.
pub fn flat_tame_criterion(tq: &TameQuotientDatum) -> bool {
    tq.proj0_res.is_injective()
}

/// Whether the top-wedge weight is nontrivial on the identity component.
pub fn top_wedge_criterion(c: &SimpleChainDatum) -> Result<bool> {
    let top = c
        .top_wedge
        .as_ref()
        .ok_or_else(|| Error::Configuration(format!("chain {} has no top-wedge data", c.name)))?;
    Ok(!top.r0.apply(&top.top_char0)?.is_zero())
}
