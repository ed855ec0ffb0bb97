mod common;

use chainsheaf::intlin::{smith_normal_form, AbHom, FgAbelianGroup, IntMatrix, Presentation, Subgroup};
use common::{big, eval, random_group, random_hom, rng};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

fn matrix(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
    IntMatrix::from_rows_with_cols(rows.iter().map(|r| r.iter().map(|&x| big(x)).collect()).collect(), cols).unwrap()
}

fn is_diagonal(d: &IntMatrix) -> bool {
    (0..d.rows()).all(|i| (0..d.cols()).all(|j| i == j || d[(i, j)].is_zero()))
}

/// gcd of every entry, the first determinantal divisor.
fn content(m: &IntMatrix) -> BigInt {
    m.row_vectors().iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[test]
fn snf_of_two_by_two() {
    let m = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
    let s = smith_normal_form(&m);
    assert_eq!(s.diagonal(), vec![big(2), big(4)]);
    assert_eq!(&(&s.u * &m) * &s.v, s.d);
    // |det D| = |det M| = 8, and d_1 is the gcd of the entries.
    assert_eq!(m.determinant().unwrap().abs(), big(8));
    assert_eq!(content(&m), big(2));
}

#[test]
fn snf_of_identity_and_zero() {
    let s = smith_normal_form(&IntMatrix::identity(2));
    assert_eq!(s.d, IntMatrix::identity(2));
    let s = smith_normal_form(&IntMatrix::zeros(2, 3));
    assert!(s.d.is_zero());
    assert_eq!((s.d.rows(), s.d.cols()), (2, 3));
}

#[test]
fn canonicalize_diag_two_three() {
    let p = Presentation::new(2, IntMatrix::from_i64(&[&[2, 0], &[0, 3]])).unwrap();
    let g = p.canonicalize();
    assert_eq!(g.invariants().free_rank, 0);
    assert_eq!(g.invariants().torsion, vec![big(6)]);
    // (1, 1) generates Z/2 + Z/3: its multiples hit all six classes.
    let classes: std::collections::BTreeSet<(i64, i64)> = (0..6).map(|k| (k % 2, k % 3)).collect();
    assert_eq!(classes.len(), 6);
}

#[test]
fn canonicalize_trivial_presentations() {
    let g = Presentation::free(2).canonicalize();
    assert_eq!(g.invariants().free_rank, 2);
    assert!(g.invariants().torsion.is_empty());
    let g = Presentation::new(1, IntMatrix::from_i64(&[&[2]]))
        .unwrap()
        .canonicalize();
    assert_eq!(g.invariants().free_rank, 0);
    assert_eq!(g.invariants().torsion, vec![big(2)]);
}

#[test]
fn kernel_of_reduction_mod_two() {
    let z = FgAbelianGroup::free(1);
    let f = AbHom::from_i64(z.clone(), FgAbelianGroup::cyclic(2), &[&[1]]).unwrap();
    let k = f.kernel();
    assert_eq!(k.group().invariants().free_rank, 1);
    assert!(k.group().invariants().torsion.is_empty());
    assert!(k.contains(&z.element_i64(&[2]).unwrap()));
    assert!(!k.contains(&z.element_i64(&[1]).unwrap()));
}

#[test]
fn kernel_of_zero_map_is_everything() {
    let z4 = FgAbelianGroup::cyclic(4);
    let f = AbHom::zero(z4.clone(), FgAbelianGroup::free(1));
    assert!(f.kernel().is_whole());
    // Z/4 -> Z cannot be anything but zero.
    assert!(AbHom::from_i64(z4, FgAbelianGroup::free(1), &[&[1]]).is_err());
}

#[test]
fn kernel_of_difference_is_diagonal() {
    let z2 = FgAbelianGroup::free(2);
    let f = AbHom::from_i64(z2.clone(), FgAbelianGroup::free(1), &[&[1, -1]]).unwrap();
    let k = f.kernel();
    assert_eq!(k.basis().len(), 1);
    let b = k.basis()[0].coords();
    assert_eq!(b[0], b[1]);
    assert!(b[0].abs().is_one());
    for x in z2.elements_in_box(3) {
        let c = x.coords();
        assert_eq!(k.contains(&x), c[0] == c[1], "{x}");
    }
}

#[test]
fn torsion_examples() {
    let g = FgAbelianGroup::from_i64(&[2, 0]);
    assert!(g.is_torsion(&g.zero()));
    let z = FgAbelianGroup::free(1);
    assert!(!z.is_torsion(&z.element_i64(&[1]).unwrap()));
    let x = g.element_i64(&[1, 3]).unwrap();
    assert!(!g.is_torsion(&x));
    for k in 1..=4 {
        assert!(!g.scale(&big(k), &x).is_zero());
    }
    assert!(g.is_torsion(&g.element_i64(&[1, 0]).unwrap()));
}

fn unimodular(r: &mut rand::rngs::StdRng, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && r.gen_bool(0.5) {
            m[(0, 0)] = big(-1);
        }
        return m;
    }
    for _ in 0..3 * n {
        let i = r.gen_range(0..n);
        let j = (i + r.gen_range(1..n)) % n;
        let k = big(r.gen_range(-2..=2));
        let e = {
            let mut e = IntMatrix::identity(n);
            e[(i, j)] = k;
            e
        };
        m = &e * &m;
    }
    m
}

fn int_matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-50i64..=50, c), r).prop_map(move |rows| matrix(&rows, c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn snf_postcondition(m in int_matrix(8)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        prop_assert!(is_diagonal(&s.d));
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let diag = s.diagonal();
        prop_assert!(diag.iter().all(|d| !d.is_negative()));
        for w in diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        prop_assert_eq!(diag.first().cloned().unwrap_or_default(), content(&m));
        if m.rows() == m.cols() {
            let prod: BigInt = diag.iter().product();
            prop_assert_eq!(prod, m.determinant().unwrap().abs());
        }
    }

    #[test]
    fn canonicalize_ignores_change_of_presentation(
        rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 4), 0..5),
        seed in any::<u64>(),
    ) {
        let mut r = rng(seed);
        let rel = matrix(&rows, 4);
        let base = Presentation::new(4, rel.clone()).unwrap().canonicalize();
        let u = unimodular(&mut r, rel.rows());
        let v = unimodular(&mut r, 4);
        let changed = if rel.rows() == 0 { rel.clone() } else { &(&u * &rel) * &v };
        let other = Presentation::new(4, changed).unwrap().canonicalize();
        prop_assert_eq!(&base, &other);
        prop_assert_eq!(base.canonical(), base.clone());
    }

    #[test]
    fn kernel_matches_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_group(&mut r, 0, 3, 200);
        let fh = r.gen_range(0..=1);
        let h = random_group(&mut r, fh, 3, 200);
        let f = random_hom(&mut r, &g, &h, 5);
        let k = f.kernel();
        let mut brute = Vec::new();
        for x in g.elements().unwrap() {
            let zero = eval(&f, &x).iter().all(Zero::is_zero);
            prop_assert_eq!(k.contains(&x), zero);
            if zero {
                brute.push(x);
            }
        }
        prop_assert_eq!(k.elements().unwrap(), brute);
    }

    #[test]
    fn kernel_grows_under_composition(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fa = r.gen_range(0..=2);
        let a = random_group(&mut r, fa, 2, 200);
        let fb = r.gen_range(0..=2);
        let b = random_group(&mut r, fb, 2, 200);
        let fc = r.gen_range(0..=2);
        let c = random_group(&mut r, fc, 2, 200);
        let f = random_hom(&mut r, &a, &b, 4);
        let g = random_hom(&mut r, &b, &c, 4);
        let gf = f.then(&g).unwrap();
        prop_assert!(gf.kernel().contains_subgroup(&f.kernel()));
        for x in f.kernel().basis() {
            prop_assert!(eval(&gf, x).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn subgroup_conditions_cut_out_the_subgroup(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fg = r.gen_range(0..=2);
        let g = random_group(&mut r, fg, 2, 60);
        let gens = (0..r.gen_range(0..3)).map(|_| common::random_element(&mut r, &g, 3)).collect();
        let s = Subgroup::new(g.clone(), gens).unwrap();
        let conds = s.conditions();
        for x in g.elements_in_box(3) {
            let holds = conds.iter().all(|c| {
                let v: BigInt = c.coefficients.iter().zip(x.coords()).map(|(a, b)| a * b).sum();
                if c.modulus.is_zero() { v.is_zero() } else { v.is_multiple_of(&c.modulus) }
            });
            prop_assert_eq!(holds, s.contains(&x), "{}", x);
        }
    }
}
