use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use super::IntlinError;

/// A finitely generated abelian group given as a direct sum of cyclic groups.
///
/// Each entry of `orders` is the order of one generator, with `0` standing
/// for an infinite cyclic factor. Trivial factors (order 1) are allowed so
/// that user coordinates survive unchanged. Use [`FgAbelianGroup::canonical`]
/// for the invariant-factor form `Z^r + Z/d_1 + ... + Z/d_k`, `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    orders: Vec<BigInt>,
}

/// An element, stored as reduced coordinates over the group's generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Vec<BigInt>);

impl Element {
    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Invariant description: free rank and torsion coefficients `d_1 | d_2 | ...`, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Invariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn new(orders: Vec<BigInt>) -> Result<Self, IntlinError> {
        if let Some(bad) = orders.iter().find(|d| d.is_negative()) {
            return Err(IntlinError::InvalidOrder(bad.clone()));
        }
        Ok(FgAbelianGroup { orders })
    }

    pub fn from_i64(orders: &[i64]) -> Self {
        Self::new(orders.iter().map(|&d| BigInt::from(d)).collect()).expect("negative order")
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            orders: vec![BigInt::zero(); rank],
        }
    }

    pub fn cyclic(order: u64) -> Self {
        FgAbelianGroup {
            orders: vec![BigInt::from(order)],
        }
    }

    pub fn trivial() -> Self {
        FgAbelianGroup { orders: Vec::new() }
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// Number of cyclic generators in this decomposition.
    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    pub fn free_rank(&self) -> usize {
        self.orders.iter().filter(|d| d.is_zero()).count()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// Group order, or `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.orders.iter().fold(BigInt::one(), |acc, d| acc * d))
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.iter().all(One::is_one)
    }

    pub fn invariants(&self) -> Invariants {
        let free_rank = self.free_rank();
        let finite: Vec<BigInt> = self
            .orders
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect();
        let snf = smith_normal_form(&IntMatrix::diagonal(finite.len(), finite.len(), &finite));
        let torsion = snf.diagonal().into_iter().filter(|d| !d.is_one()).collect();
        Invariants { free_rank, torsion }
    }

    /// The invariant-factor form: torsion factors first, then free factors.
    pub fn canonical(&self) -> FgAbelianGroup {
        let inv = self.invariants();
        let mut orders = inv.torsion;
        orders.extend(std::iter::repeat_n(BigInt::zero(), inv.free_rank));
        FgAbelianGroup { orders }
    }

    pub fn is_isomorphic(&self, other: &FgAbelianGroup) -> bool {
        self.invariants() == other.invariants()
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let mut orders = self.orders.clone();
        orders.extend(other.orders.iter().cloned());
        FgAbelianGroup { orders }
    }

    /// Direct sum of a list of groups.
    pub fn sum_of<'a>(groups: impl IntoIterator<Item = &'a FgAbelianGroup>) -> FgAbelianGroup {
        groups
            .into_iter()
            .fold(FgAbelianGroup::trivial(), |acc, g| acc.direct_sum(g))
    }

    fn reduce_in_place(&self, coords: &mut [BigInt]) {
        for (x, d) in coords.iter_mut().zip(&self.orders) {
            if !d.is_zero() {
                *x = x.mod_floor(d);
            }
        }
    }

    /// Reduces integer coordinates to an element.
    pub fn element(&self, coords: Vec<BigInt>) -> Result<Element, IntlinError> {
        if coords.len() != self.orders.len() {
            return Err(IntlinError::WrongLength {
                expected: self.orders.len(),
                found: coords.len(),
            });
        }
        let mut coords = coords;
        self.reduce_in_place(&mut coords);
        Ok(Element(coords))
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<Element, IntlinError> {
        self.element(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Whether the given element has the right length and reduced coordinates.
    pub fn contains(&self, x: &Element) -> bool {
        x.len() == self.ngens()
            && x.0
                .iter()
                .zip(&self.orders)
                .all(|(c, d)| d.is_zero() || (!c.is_negative() && c < d))
    }

    pub(crate) fn check(&self, x: &Element) -> Result<(), IntlinError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(IntlinError::NotAnElement {
                element: x.to_string(),
                group: self.to_string(),
            })
        }
    }

    pub fn zero(&self) -> Element {
        Element(vec![BigInt::zero(); self.ngens()])
    }

    /// The `i`-th generator.
    pub fn generator(&self, i: usize) -> Element {
        let mut c = vec![BigInt::zero(); self.ngens()];
        c[i] = BigInt::one();
        self.reduce_in_place(&mut c);
        Element(c)
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        let mut c: Vec<BigInt> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.reduce_in_place(&mut c);
        Element(c)
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        let mut c: Vec<BigInt> = a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect();
        self.reduce_in_place(&mut c);
        Element(c)
    }

    pub fn neg(&self, a: &Element) -> Element {
        let mut c: Vec<BigInt> = a.0.iter().map(|x| -x).collect();
        self.reduce_in_place(&mut c);
        Element(c)
    }

    pub fn scale(&self, k: &BigInt, a: &Element) -> Element {
        let mut c: Vec<BigInt> = a.0.iter().map(|x| x * k).collect();
        self.reduce_in_place(&mut c);
        Element(c)
    }

    /// True iff some positive multiple of `x` vanishes, i.e. all free coordinates are zero.
    pub fn is_torsion(&self, x: &Element) -> bool {
        x.0.iter().zip(&self.orders).all(|(c, d)| !d.is_zero() || c.is_zero())
    }

    /// Order of an element, `None` when it has infinite order.
    pub fn element_order(&self, x: &Element) -> Option<BigInt> {
        if !self.is_torsion(x) {
            return None;
        }
        let mut ord = BigInt::one();
        for (c, d) in x.0.iter().zip(&self.orders) {
            if d.is_zero() {
                continue;
            }
            let k = d / c.gcd(d);
            ord = ord.lcm(&k);
        }
        Some(ord)
    }

    /// Elements whose free coordinates lie in `[-bound, bound]`; every element
    /// when the group is finite. Intended for small exhaustive checks.
    pub fn elements_in_box(&self, bound: i64) -> Vec<Element> {
        let ranges: Vec<(BigInt, BigInt)> = self
            .orders
            .iter()
            .map(|d| {
                if d.is_zero() {
                    (BigInt::from(-bound), BigInt::from(bound))
                } else {
                    (BigInt::zero(), d - 1)
                }
            })
            .collect();
        let mut out = vec![Vec::new()];
        for (lo, hi) in &ranges {
            let mut next = Vec::new();
            for prefix in &out {
                let mut v = lo.clone();
                while &v <= hi {
                    let mut p: Vec<BigInt> = prefix.clone();
                    p.push(v.clone());
                    next.push(p);
                    v += 1;
                }
            }
            out = next;
        }
        out.into_iter().map(Element).collect()
    }

    /// All elements of a finite group, `None` otherwise.
    pub fn elements(&self) -> Option<Vec<Element>> {
        self.is_finite().then(|| self.elements_in_box(0))
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        for (i, d) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if d.is_zero() {
                write!(f, "Z")?;
            } else {
                write!(f, "Z/{d}")?;
            }
        }
        Ok(())
    }
}

/// A presentation `Z^generators / (row space of relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    /// One relation per row.
    pub relations: IntMatrix,
}

/// Canonical form of a presentation with the change-of-coordinates maps.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub group: FgAbelianGroup,
    /// Canonical generators x presentation generators.
    pub to_canonical: IntMatrix,
    /// Presentation generators x canonical generators.
    pub from_canonical: IntMatrix,
}

impl Presentation {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self, IntlinError> {
        if relations.cols() != generators {
            return Err(IntlinError::ShapeMismatch(format!(
                "relation matrix has {} columns but the presentation has {} generators",
                relations.cols(),
                generators
            )));
        }
        Ok(Presentation { generators, relations })
    }

    pub fn free(generators: usize) -> Self {
        Presentation {
            generators,
            relations: IntMatrix::zeros(0, generators),
        }
    }

    pub fn canonicalize(&self) -> FgAbelianGroup {
        self.canonical_form().group
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let g = self.generators;
        let m = self.relations.transpose();
        let snf = smith_normal_form(&m);
        let diag = snf.diagonal();
        let order_at = |i: usize| diag.get(i).cloned().unwrap_or_else(BigInt::zero);

        // Nontrivial torsion indices come first in the SNF diagonal, then zeros.
        let keep: Vec<usize> = (0..g).filter(|&i| !order_at(i).is_one()).collect();
        let orders: Vec<BigInt> = keep.iter().map(|&i| order_at(i)).collect();

        let to_canonical = snf.u.select_rows(&keep);
        let from_canonical = snf.u_inv.select_cols(&keep);
        CanonicalForm {
            group: FgAbelianGroup { orders },
            to_canonical,
            from_canonical,
        }
    }
}
