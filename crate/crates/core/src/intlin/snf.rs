//! Smith normal form over the integers, with both transforms and their inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u * m * v == d`, with `u`, `v` unimodular and `d` diagonal with
/// nonnegative entries `d_1 | d_2 | ... | d_r`, followed by zeros.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// The diagonal of `d`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

struct Work {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[dst] += k row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    /// col[dst] += k col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of the nonzero entry of least absolute value in the trailing block.
    fn smallest_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = &self.d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.d[(bi, bj)].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        d: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };

    'pivots: for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = w.smallest_entry(t) else {
                break 'pivots;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let pivot = w.d[(t, t)].clone();

            let mut clean = true;
            for i in t + 1..rows {
                let q = &w.d[(i, t)] / &pivot;
                w.add_row(i, t, &-q);
                clean &= w.d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = &w.d[(t, j)] / &pivot;
                w.add_col(j, t, &-q);
                clean &= w.d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            // Enforce divisibility of the trailing block by the pivot.
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.d[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }

    Snf {
        u: w.u,
        d: w.d,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
    }
}

/// Basis (as columns) of the integer kernel `{x : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    (rank..m.cols()).map(|j| snf.v.column(j)).collect()
}

/// Membership and solving in the lattice spanned by the columns of a matrix.
#[derive(Clone, Debug)]
pub struct LatticeSolver {
    snf: Snf,
    generators: usize,
}

impl LatticeSolver {
    pub fn new(basis_columns: &IntMatrix) -> Self {
        LatticeSolver {
            snf: smith_normal_form(basis_columns),
            generators: basis_columns.cols(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.snf.d.rows()
    }

    /// Some `z` with `B z = x`, if `x` lies in the lattice.
    pub fn solve(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.snf.u.mul_vec(x);
        let diag = self.snf.diagonal();
        let mut w = vec![BigInt::zero(); self.generators];
        for (i, yi) in y.iter().enumerate() {
            match diag.get(i) {
                Some(d) if !d.is_zero() => {
                    let (q, r) = yi.div_rem(d);
                    if !r.is_zero() {
                        return None;
                    }
                    w[i] = q;
                }
                _ => {
                    if !yi.is_zero() {
                        return None;
                    }
                }
            }
        }
        Some(self.snf.v.mul_vec(&w))
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.solve(x).is_some()
    }

    /// Defining conditions of the lattice: each pair `(row, modulus)` asserts
    /// `row . x == 0 (mod modulus)`, a modulus of zero meaning exact equality.
    /// Trivial conditions (modulus 1) are omitted.
    pub fn conditions(&self) -> Vec<(Vec<BigInt>, BigInt)> {
        let diag = self.snf.diagonal();
        (0..self.dimension())
            .filter_map(|i| {
                let modulus = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
                if modulus.is_one() {
                    return None;
                }
                Some((self.snf.u.row(i).to_vec(), modulus))
            })
            .collect()
    }
}
