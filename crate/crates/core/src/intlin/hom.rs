use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::group::{Element, FgAbelianGroup};
use super::matrix::IntMatrix;
use super::snf::integer_kernel;
use super::subgroup::Subgroup;
use super::IntlinError;

/// A homomorphism of finitely generated abelian groups.
///
/// Column `j` of `matrix` is the image of source generator `j`, reduced in the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    matrix: IntMatrix,
}

impl AbHom {
    /// Checks the shape and that every source relation maps to zero.
    pub fn new(source: FgAbelianGroup, target: FgAbelianGroup, matrix: IntMatrix) -> Result<Self, IntlinError> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(IntlinError::ShapeMismatch(format!(
                "matrix is {}x{} but the map {} -> {} needs {}x{}",
                matrix.rows(),
                matrix.cols(),
                source,
                target,
                target.ngens(),
                source.ngens()
            )));
        }
        let mut reduced = IntMatrix::zeros(matrix.rows(), matrix.cols());
        for (j, d) in source.orders().iter().enumerate() {
            let col = matrix.column(j);
            if !d.is_zero() {
                let multiple: Vec<BigInt> = col.iter().map(|x| x * d).collect();
                let image = target.element(multiple)?;
                if !image.is_zero() {
                    return Err(IntlinError::IllDefined(format!(
                        "generator {j} has order {d} in the source but {d} times its image is {image}"
                    )));
                }
            }
            let col = target.element(col)?;
            for (i, x) in col.coords().iter().enumerate() {
                reduced[(i, j)] = x.clone();
            }
        }
        Ok(AbHom {
            source,
            target,
            matrix: reduced,
        })
    }

    pub fn from_i64(source: FgAbelianGroup, target: FgAbelianGroup, rows: &[&[i64]]) -> Result<Self, IntlinError> {
        let m = if rows.is_empty() {
            IntMatrix::zeros(0, source.ngens())
        } else {
            IntMatrix::from_i64(rows)
        };
        Self::new(source, target, m)
    }

    /// The map sending source generator `j` to `images[j]`.
    pub fn from_images(
        source: FgAbelianGroup,
        target: FgAbelianGroup,
        images: &[Element],
    ) -> Result<Self, IntlinError> {
        if images.len() != source.ngens() {
            return Err(IntlinError::WrongLength {
                expected: source.ngens(),
                found: images.len(),
            });
        }
        for x in images {
            target.check(x)?;
        }
        let cols: Vec<Vec<BigInt>> = images.iter().map(|x| x.coords().to_vec()).collect();
        let m = IntMatrix::from_columns(target.ngens(), &cols);
        Self::new(source, target, m)
    }

    pub fn zero(source: FgAbelianGroup, target: FgAbelianGroup) -> Self {
        let matrix = IntMatrix::zeros(target.ngens(), source.ngens());
        AbHom { source, target, matrix }
    }

    pub fn identity(group: FgAbelianGroup) -> Self {
        let matrix = IntMatrix::identity(group.ngens());
        let mut h = AbHom {
            source: group.clone(),
            target: group,
            matrix,
        };
        // Generators of order one map to zero.
        for (i, d) in h.target.orders().iter().enumerate() {
            if d == &BigInt::from(1) {
                h.matrix[(i, i)] = BigInt::zero();
            }
        }
        h
    }

    pub fn source(&self) -> &FgAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &Element) -> Result<Element, IntlinError> {
        self.source.check(x)?;
        self.target.element(self.matrix.mul_vec(x.coords()))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AbHom) -> Result<AbHom, IntlinError> {
        if self.target != other.source {
            return Err(IntlinError::ShapeMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        AbHom::new(self.source.clone(), other.target.clone(), &other.matrix * &self.matrix)
    }

    pub fn add(&self, other: &AbHom) -> Result<AbHom, IntlinError> {
        self.same_shape(other)?;
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] += &other.matrix[(i, j)];
            }
        }
        AbHom::new(self.source.clone(), self.target.clone(), m)
    }

    pub fn neg(&self) -> AbHom {
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            m.negate_row(i);
        }
        AbHom::new(self.source.clone(), self.target.clone(), m).expect("negation of a well-defined map")
    }

    pub fn sub(&self, other: &AbHom) -> Result<AbHom, IntlinError> {
        self.add(&other.neg())
    }

    fn same_shape(&self, other: &AbHom) -> Result<(), IntlinError> {
        if self.source != other.source || self.target != other.target {
            return Err(IntlinError::ShapeMismatch(
                "homomorphisms have different source or target".into(),
            ));
        }
        Ok(())
    }

    /// `(x, y) ↦ self(x) + other(y)` on the direct sum of the sources.
    pub fn copair(&self, other: &AbHom) -> Result<AbHom, IntlinError> {
        if self.target != other.target {
            return Err(IntlinError::ShapeMismatch("copairing needs a common target".into()));
        }
        AbHom::new(
            self.source.direct_sum(&other.source),
            self.target.clone(),
            self.matrix.hstack(&other.matrix),
        )
    }

    /// `x ↦ (self(x), other(x))` into the direct sum of the targets.
    pub fn pair(&self, other: &AbHom) -> Result<AbHom, IntlinError> {
        if self.source != other.source {
            return Err(IntlinError::ShapeMismatch("pairing needs a common source".into()));
        }
        let m = self.matrix.transpose().hstack(&other.matrix.transpose()).transpose();
        AbHom::new(self.source.clone(), self.target.direct_sum(&other.target), m)
    }

    /// `self ⊕ other` between the direct sums.
    pub fn direct_sum(&self, other: &AbHom) -> AbHom {
        AbHom {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            matrix: self.matrix.block_diag(&other.matrix),
        }
    }

    /// Projection from a direct sum onto the summand occupying generators `start..start + len`.
    pub fn projection(group: &FgAbelianGroup, start: usize, len: usize) -> Result<AbHom, IntlinError> {
        let orders = group.orders()[start..start + len].to_vec();
        let target = FgAbelianGroup::new(orders)?;
        let rows: Vec<usize> = (start..start + len).collect();
        let m = IntMatrix::identity(group.ngens()).select_rows(&rows);
        AbHom::new(group.clone(), target, m)
    }

    /// Inclusion of the summand occupying generators `start..start + len`.
    pub fn injection(group: &FgAbelianGroup, start: usize, len: usize) -> Result<AbHom, IntlinError> {
        let orders = group.orders()[start..start + len].to_vec();
        let source = FgAbelianGroup::new(orders)?;
        let cols: Vec<usize> = (start..start + len).collect();
        let m = IntMatrix::identity(group.ngens()).select_cols(&cols);
        AbHom::new(source, group.clone(), m)
    }

    /// Source-coordinate projections of the integer solutions of `[A | extra | diag(target orders)] (x, *) = 0`.
    fn solutions_with(&self, extra: &IntMatrix) -> Vec<Vec<BigInt>> {
        let t = self.target.ngens();
        let rel = IntMatrix::diagonal(t, t, self.target.orders());
        let m = self.matrix.hstack(extra).hstack(&rel);
        integer_kernel(&m)
            .into_iter()
            .map(|v| v[..self.source.ngens()].to_vec())
            .collect()
    }

    pub fn kernel(&self) -> Subgroup {
        let extra = IntMatrix::zeros(self.target.ngens(), 0);
        self.subgroup_from_lifts(self.solutions_with(&extra))
    }

    pub fn image(&self) -> Subgroup {
        let gens: Vec<Element> = (0..self.source.ngens())
            .map(|j| {
                self.target
                    .element(self.matrix.column(j))
                    .expect("column length matches target")
            })
            .collect();
        Subgroup::new(self.target.clone(), gens).expect("images lie in the target")
    }

    /// `{x : self(x) ∈ sub}`.
    pub fn preimage(&self, sub: &Subgroup) -> Result<Subgroup, IntlinError> {
        if sub.ambient() != &self.target {
            return Err(IntlinError::ShapeMismatch(
                "preimage of a subgroup of a different group".into(),
            ));
        }
        let cols: Vec<Vec<BigInt>> = sub.generators().iter().map(|g| g.coords().to_vec()).collect();
        let extra = IntMatrix::from_columns(self.target.ngens(), &cols);
        Ok(self.subgroup_from_lifts(self.solutions_with(&extra)))
    }

    fn subgroup_from_lifts(&self, lifts: Vec<Vec<BigInt>>) -> Subgroup {
        let gens: Vec<Element> = lifts
            .into_iter()
            .map(|v| self.source.element(v).expect("projection has source length"))
            .filter(|e| !e.is_zero())
            .collect();
        Subgroup::new(self.source.clone(), gens).expect("lifts lie in the source")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

impl fmt::Display for AbHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} : {}", self.source, self.target, self.matrix)
    }
}
