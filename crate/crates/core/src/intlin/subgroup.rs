use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::{Element, FgAbelianGroup};
use super::hom::AbHom;
use super::matrix::IntMatrix;
use super::snf::{integer_kernel, smith_normal_form, LatticeSolver};
use super::IntlinError;

/// A congruence `coefficients . x ≡ 0 (mod modulus)` on ambient coordinates;
/// modulus zero means the linear form vanishes exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub coefficients: Vec<BigInt>,
    pub modulus: BigInt,
}

/// Subgroup of a finitely generated abelian group.
///
/// Besides the generators as given, carries its isomorphism type in canonical
/// form together with ambient elements realising those canonical generators,
/// and a Smith-form solver for membership.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: FgAbelianGroup,
    generators: Vec<Element>,
    solver: LatticeSolver,
    group: FgAbelianGroup,
    basis: Vec<Element>,
    // coords in `group` = to_basis * (coefficients on `generators`)
    to_basis: IntMatrix,
}

impl Subgroup {
    pub fn new(ambient: FgAbelianGroup, generators: Vec<Element>) -> Result<Self, IntlinError> {
        for g in &generators {
            ambient.check(g)?;
        }
        let n = ambient.ngens();
        let s = generators.len();
        let cols: Vec<Vec<BigInt>> = generators.iter().map(|g| g.coords().to_vec()).collect();
        let gm = IntMatrix::from_columns(n, &cols);
        let rel = IntMatrix::diagonal(n, n, ambient.orders());
        let solver = LatticeSolver::new(&gm.hstack(&rel));

        // Relations among the generators, then the structure of Z^s / relations.
        let relations: Vec<Vec<BigInt>> = integer_kernel(&gm.hstack(&rel))
            .into_iter()
            .map(|v| v[..s].to_vec())
            .collect();
        let rm = IntMatrix::from_columns(s, &relations);
        let snf = smith_normal_form(&rm);
        let diag = snf.diagonal();
        let order_at = |i: usize| diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        let keep: Vec<usize> = (0..s).filter(|&i| !order_at(i).is_one()).collect();
        let group = FgAbelianGroup::new(keep.iter().map(|&i| order_at(i)).collect())?;
        let basis_cols = &gm * &snf.u_inv.select_cols(&keep);
        let basis = (0..keep.len())
            .map(|j| ambient.element(basis_cols.column(j)))
            .collect::<Result<Vec<_>, _>>()?;
        let to_basis = snf.u.select_rows(&keep);
        Ok(Subgroup {
            ambient,
            generators,
            solver,
            group,
            basis,
            to_basis,
        })
    }

    pub fn whole(ambient: &FgAbelianGroup) -> Self {
        let gens = (0..ambient.ngens()).map(|i| ambient.generator(i)).collect();
        Subgroup::new(ambient.clone(), gens).expect("generators lie in the group")
    }

    pub fn trivial(ambient: &FgAbelianGroup) -> Self {
        Subgroup::new(ambient.clone(), Vec::new()).expect("empty generating set")
    }

    pub fn ambient(&self) -> &FgAbelianGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// The isomorphism type in canonical form.
    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    /// Ambient elements corresponding to the generators of [`Subgroup::group`].
    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn free_rank(&self) -> usize {
        self.group.free_rank()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.group.order()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.ambient.contains(x) && self.solver.contains(x.coords())
    }

    /// Coefficients `c` with `sum c_i generators[i] = x`.
    pub fn express(&self, x: &Element) -> Option<Vec<BigInt>> {
        if !self.ambient.contains(x) {
            return None;
        }
        let z = self.solver.solve(x.coords())?;
        Some(z[..self.generators.len()].to_vec())
    }

    /// Coordinates of `x` in [`Subgroup::group`].
    pub fn coordinates(&self, x: &Element) -> Option<Element> {
        let c = self.express(x)?;
        Some(
            self.group
                .element(self.to_basis.mul_vec(&c))
                .expect("basis change has the right shape"),
        )
    }

    pub fn inclusion(&self) -> AbHom {
        AbHom::from_images(self.group.clone(), self.ambient.clone(), &self.basis)
            .expect("basis elements have the recorded orders")
    }

    pub fn is_trivial(&self) -> bool {
        self.group.is_trivial()
    }

    pub fn is_whole(&self) -> bool {
        (0..self.ambient.ngens()).all(|i| self.contains(&self.ambient.generator(i)))
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        self.ambient == other.ambient && other.generators.iter().all(|g| self.contains(g))
    }

    /// Image of this subgroup under `f`.
    pub fn map(&self, f: &AbHom) -> Result<Subgroup, IntlinError> {
        let gens = self
            .generators
            .iter()
            .map(|g| f.apply(g))
            .collect::<Result<Vec<_>, _>>()?;
        Subgroup::new(f.target().clone(), gens)
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup, IntlinError> {
        if self.ambient != other.ambient {
            return Err(IntlinError::ShapeMismatch(
                "intersection of subgroups of different groups".into(),
            ));
        }
        other.inclusion().preimage(self)?.map(&other.inclusion())
    }

    /// Defining congruences on ambient coordinates, nontrivial ones only.
    pub fn conditions(&self) -> Vec<Congruence> {
        let mut out: Vec<Congruence> = self
            .solver
            .conditions()
            .into_iter()
            .map(|(coefficients, modulus)| {
                let coefficients = if modulus.is_zero() {
                    coefficients
                } else {
                    coefficients.iter().map(|a| a.mod_floor(&modulus)).collect()
                };
                Congruence { coefficients, modulus }
            })
            .collect();
        // Conditions implied by the ambient relations carry no information.
        out.retain(|c| !self.implied_by_ambient(c));
        out
    }

    // Vacuous exactly when every ambient element satisfies it.
    fn implied_by_ambient(&self, c: &Congruence) -> bool {
        c.coefficients.iter().all(|a| {
            if c.modulus.is_zero() {
                a.is_zero()
            } else {
                (a % &c.modulus).is_zero()
            }
        })
    }

    /// All elements, for finite subgroups.
    pub fn elements(&self) -> Option<Vec<Element>> {
        let incl = self.inclusion();
        let mut out: Vec<Element> = self
            .group
            .elements()?
            .iter()
            .map(|x| incl.apply(x).expect("element of the subgroup"))
            .collect();
        out.sort();
        out.dedup();
        Some(out)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.contains_subgroup(other) && other.contains_subgroup(self)
    }
}

impl Eq for Subgroup {}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "> ≅ {} in {}", self.group, self.ambient)
    }
}
