use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::groupdata::{validate_group_datum, GroupDatum};
use crate::intlin::{AbHom, Element, FgAbelianGroup, Subgroup};
use crate::report::ValidationReport;
use crate::{Error, Result};

/// Component characters on both ends of the chain, with the character-level
/// specialization `Char Com(G^{s(1)}) -> Char Com(G^{s(0)})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentData {
    pub com_s1: GroupDatum,
    pub com_s0: GroupDatum,
    pub sigma_res: AbHom,
}

/// Weight of the identity component of `G^{s(0)}` on the top exterior power
/// of the tangent space at `l(0)`, with restriction to identity-component characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopWedgeData {
    /// Characters of the identity component; a free lattice.
    pub identity_chars: FgAbelianGroup,
    pub r0: AbHom,
    pub top_char0: Element,
}

/// One open orbit over one closed orbit, with a fastening datum of weight `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleChainDatum {
    pub name: String,
    pub n: BigInt,
    pub char_s1: FgAbelianGroup,
    pub char_s0: FgAbelianGroup,
    pub char_l0: FgAbelianGroup,
    pub lim_map: AbHom,
    pub iota_res: AbHom,
    /// Pairing with the cocharacter, landing in `Z`.
    pub gamma_pair: AbHom,
    /// Restriction to `mu_n`, landing in `Z/n`.
    pub mu_n_res: AbHom,
    /// The character by which `G^{l(0)}` acts on the normal line.
    pub act_char: Element,
    pub components: Option<ComponentData>,
    pub top_wedge: Option<TopWedgeData>,
}

/// Degrees `d` with `d ≡ residue (mod modulus)`; modulus zero pins a single degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    pub modulus: BigInt,
    pub residue: BigInt,
}

impl ResidueClass {
    pub fn new(modulus: BigInt, residue: BigInt) -> Self {
        let modulus = modulus.abs();
        let residue = if modulus.is_zero() {
            residue
        } else {
            residue.mod_floor(&modulus)
        };
        ResidueClass { modulus, residue }
    }

    pub fn contains(&self, d: &BigInt) -> bool {
        if self.modulus.is_zero() {
            d == &self.residue
        } else {
            (d - &self.residue).is_multiple_of(&self.modulus)
        }
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus.is_zero() {
            write!(f, "{{{}}}", self.residue)
        } else if self.modulus.is_one() {
            write!(f, "Z")
        } else {
            write!(f, "{}Z + {}", self.modulus, self.residue)
        }
    }
}

impl SimpleChainDatum {
    /// The group `Z/n` that `mu_n_res` must land in.
    pub fn mu_n_group(&self) -> FgAbelianGroup {
        FgAbelianGroup::new(vec![self.n.clone()]).unwrap_or_else(|_| FgAbelianGroup::trivial())
    }

    fn check_character(&self, chi: &Element) -> Result<()> {
        if self.char_s1.contains(chi) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{chi} is not a character of the open stabilizer {} of chain {}",
                self.char_s1, self.name
            )))
        }
    }
}

fn expect_map(
    report: &mut ValidationReport,
    subject: &str,
    label: &str,
    f: &AbHom,
    source: &FgAbelianGroup,
    target: &FgAbelianGroup,
) -> bool {
    let ok = f.source() == source && f.target() == target;
    if !ok {
        report.push(
            subject,
            format!(
                "{label} goes {} -> {} but should go {} -> {}",
                f.source(),
                f.target(),
                source,
                target
            ),
        );
    }
    ok
}

pub fn validate_simple_chain(c: &SimpleChainDatum) -> ValidationReport {
    let mut report = ValidationReport::new();
    let name = c.name.as_str();
    if !c.n.is_positive() {
        report.push(name, format!("weight n = {} must be positive", c.n));
        return report;
    }
    let z = FgAbelianGroup::free(1);
    let zn = c.mu_n_group();
    let shapes = [
        expect_map(&mut report, name, "lim_map", &c.lim_map, &c.char_s1, &c.char_s0),
        expect_map(&mut report, name, "iota_res", &c.iota_res, &c.char_l0, &c.char_s0),
        expect_map(&mut report, name, "gamma_pair", &c.gamma_pair, &c.char_l0, &z),
        expect_map(&mut report, name, "mu_n_res", &c.mu_n_res, &c.char_s0, &zn),
    ];
    if !c.char_l0.contains(&c.act_char) {
        report.push(
            name,
            format!("act_char {} is not a character of {}", c.act_char, c.char_l0),
        );
        return report;
    }
    if shapes.iter().any(|ok| !ok) {
        return report;
    }

    let degree = c.gamma_pair.apply(&c.act_char).expect("checked element");
    if degree.coords()[0] != c.n {
        report.push(
            name,
            format!("gamma_pair(act_char) = {} but n = {}", degree.coords()[0], c.n),
        );
    }
    let restricted = c.iota_res.apply(&c.act_char).expect("checked element");
    if !restricted.is_zero() {
        report.push(name, format!("iota_res(act_char) = {restricted}, expected 0"));
    }

    // mu_n o iota ≡ gamma (mod n), checked on generators of Char(G^{l(0)}).
    for j in 0..c.char_l0.ngens() {
        let g = c.char_l0.generator(j);
        let lhs = c
            .mu_n_res
            .apply(&c.iota_res.apply(&g).expect("generator"))
            .expect("generator image");
        let rhs = c.gamma_pair.apply(&g).expect("generator").coords()[0].mod_floor(&c.n);
        let lhs = lhs.coords().first().cloned().unwrap_or_else(BigInt::zero);
        if lhs != rhs {
            report.push(
                name,
                format!(
                    "on generator {j} of {}: mu_n_res(iota_res) = {lhs} but gamma_pair mod {} = {rhs}",
                    c.char_l0, c.n
                ),
            );
        }
    }

    // Exactness of 0 -> Z act -> Char(G^{l(0)}) -> Char(G^{s(0)}) where limits land.
    let kernel = c.iota_res.kernel();
    let act_span = Subgroup::new(c.char_l0.clone(), vec![c.act_char.clone()]).expect("checked element");
    if kernel != act_span {
        report.push(
            name,
            format!("kernel of iota_res is {kernel}, not the span of act_char"),
        );
    }
    let lim_image = c.lim_map.image();
    if !c.iota_res.image().contains_subgroup(&lim_image) {
        report.push(name, "some limit characters do not extend to Char(G^{l(0)})");
    }

    if let Some(comp) = &c.components {
        validate_components(c, comp, &mut report);
    }
    if let Some(top) = &c.top_wedge {
        if top.identity_chars.free_rank() != top.identity_chars.ngens() {
            report.push(name, "identity-component characters must form a free lattice");
        }
        expect_map(&mut report, name, "r0", &top.r0, &c.char_s0, &top.identity_chars);
        if !c.char_s0.contains(&top.top_char0) {
            report.push(
                name,
                format!("top_char0 {} is not a character of {}", top.top_char0, c.char_s0),
            );
        }
    }
    report
}

fn validate_components(c: &SimpleChainDatum, comp: &ComponentData, report: &mut ValidationReport) {
    let name = c.name.as_str();
    for g in [&comp.com_s1, &comp.com_s0] {
        let sub = validate_group_datum(g);
        for v in sub.violations() {
            report.push(format!("{name}/{}", v.subject), v.message.clone());
        }
    }
    if comp.com_s1.char_group != c.char_s1 {
        report.push(name, "com_s1 must describe the characters of the open stabilizer");
    }
    if comp.com_s0.char_group != c.char_s0 {
        report.push(
            name,
            "com_s0 must describe the characters of the normal-vector stabilizer",
        );
    }
    let shaped = expect_map(
        report,
        name,
        "sigma_res",
        &comp.sigma_res,
        &comp.com_s1.com_char_group,
        &comp.com_s0.com_char_group,
    );
    if !report.is_valid() || !shaped {
        return;
    }
    for j in 0..comp.com_s1.com_char_group.ngens() {
        let g = comp.com_s1.com_char_group.generator(j);
        let via_lim = comp.com_s1.com_pullback.then(&c.lim_map).and_then(|f| f.apply(&g));
        let via_sigma = comp.sigma_res.then(&comp.com_s0.com_pullback).and_then(|f| f.apply(&g));
        if via_lim != via_sigma {
            report.push(
                name,
                format!("component generator {j}: limit and specialization routes disagree"),
            );
        }
    }
}

/// The residue `mu_n_res(lim_map(chi))` in `0..n`.
pub fn m_class(c: &SimpleChainDatum, chi: &Element) -> Result<BigInt> {
    c.check_character(chi)?;
    let lim = c.lim_map.apply(chi)?;
    let m = c.mu_n_res.apply(&lim)?;
    Ok(m.coords().first().cloned().unwrap_or_else(BigInt::zero))
}

/// Allowed degrees of an equivariant line bundle with open character `chi`.
pub fn classify_line_bundles_simple(c: &SimpleChainDatum, chi: &Element) -> Result<ResidueClass> {
    Ok(ResidueClass::new(c.n.clone(), m_class(c, chi)?))
}

/// The limit character, i.e. the nearby-cycles image of `chi`.
pub fn nearby_cycles(c: &SimpleChainDatum, chi: &Element) -> Result<Element> {
    c.check_character(chi)?;
    Ok(c.lim_map.apply(chi)?)
}

/// `{(chi, chi') : iota_res(chi') = lim_map(chi)}` inside `char_s1 + char_l0`.
pub fn line_bundle_fiber_product(c: &SimpleChainDatum) -> Result<Subgroup> {
    let diff = c.lim_map.copair(&c.iota_res.neg())?;
    Ok(diff.kernel())
}

/// Degrees reachable through the fiber product: `gamma_pair(chi')` over all
/// `(chi, chi')` in it. `None` when no such `chi'` exists.
pub fn degree_class_via_fiber_product(c: &SimpleChainDatum, chi: &Element) -> Result<Option<ResidueClass>> {
    c.check_character(chi)?;
    let fp = line_bundle_fiber_product(c)?;
    degree_class_in(c, &fp, chi)
}

/// As [`degree_class_via_fiber_product`], with the fiber product precomputed.
pub fn degree_class_in(c: &SimpleChainDatum, fp: &Subgroup, chi: &Element) -> Result<Option<ResidueClass>> {
    let s1 = c.char_s1.ngens();
    let l0 = c.char_l0.ngens();
    let total = fp.ambient();
    let incl = fp.inclusion();
    let p1 = incl.then(&AbHom::projection(total, 0, s1)?)?;
    let p2 = incl.then(&AbHom::projection(total, s1, l0)?)?;
    let degree = p2.then(&c.gamma_pair)?;

    let image = p1.image();
    let Some(coeffs) = image.express(chi) else {
        return Ok(None);
    };
    // image generators are the images of the generators of fp.group()
    let point = fp.group().element(coeffs)?;
    let offset = degree.apply(&point)?.coords()[0].clone();
    let spread = p1.kernel().map(&degree)?;
    let modulus = spread
        .basis()
        .first()
        .map(|b| b.coords()[0].clone())
        .unwrap_or_else(BigInt::zero);
    Ok(Some(ResidueClass::new(modulus, offset)))
}

/// A character of the open stabilizer with a degree compatible with it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineBundleClass {
    chi: Element,
    degree: BigInt,
}

impl LineBundleClass {
    pub fn new(c: &SimpleChainDatum, chi: Element, degree: BigInt) -> Result<Self> {
        let class = classify_line_bundles_simple(c, &chi)?;
        if !class.contains(&degree) {
            return Err(Error::Domain(format!(
                "degree {degree} is not in {class}, the allowed degrees for {chi} on {}",
                c.name
            )));
        }
        Ok(LineBundleClass { chi, degree })
    }

    pub fn chi(&self) -> &Element {
        &self.chi
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }
}
