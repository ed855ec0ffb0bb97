//! Random instances and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use chainsheaf::chaincore::{
    build_chain_graph, validate_simple_chain, ChainGraph, ComponentData, EdgeDatum, GraphDescription, OrbitDatum,
    SimpleChainDatum,
};
use chainsheaf::groupdata::GroupDatum;
use chainsheaf::intlin::{AbHom, Element, FgAbelianGroup, IntMatrix, Presentation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn small(x: &BigInt) -> i64 {
    x.to_i64().expect("fits in i64")
}

/// Finite cyclic orders whose product stays within `max_order`.
pub fn finite_orders(r: &mut StdRng, max_gens: usize, max_order: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut total = 1;
    for _ in 0..r.gen_range(0..=max_gens) {
        let room = max_order / total;
        if room < 2 {
            break;
        }
        let d = r.gen_range(2..=room.min(12));
        total *= d;
        out.push(d);
    }
    out
}

/// A group with `free` copies of `Z` placed at random among finite factors.
pub fn random_group(r: &mut StdRng, free: usize, max_torsion_gens: usize, max_order: i64) -> FgAbelianGroup {
    let mut orders = finite_orders(r, max_torsion_gens, max_order);
    orders.extend(std::iter::repeat_n(0, free));
    orders.shuffle(r);
    FgAbelianGroup::from_i64(&orders)
}

pub fn random_element(r: &mut StdRng, g: &FgAbelianGroup, bound: i64) -> Element {
    let coords: Vec<i64> = g
        .orders()
        .iter()
        .map(|d| {
            if d.is_zero() {
                r.gen_range(-bound..=bound)
            } else {
                r.gen_range(0..small(d))
            }
        })
        .collect();
    g.element_i64(&coords).unwrap()
}

fn order_of(g: &FgAbelianGroup, x: &Element) -> Option<BigInt> {
    if x.coords()
        .iter()
        .zip(g.orders())
        .any(|(c, d)| d.is_zero() && !c.is_zero())
    {
        return None;
    }
    Some(
        x.coords()
            .iter()
            .zip(g.orders())
            .filter(|(_, d)| !d.is_zero())
            .fold(BigInt::from(1), |acc, (c, d)| acc.lcm(&(d / c.gcd(d)))),
    )
}

/// The largest multiple of `y` whose order divides `d` (all of `y` when `d` is zero).
pub fn killed_by(g: &FgAbelianGroup, y: &Element, d: &BigInt) -> Element {
    if d.is_zero() {
        return y.clone();
    }
    match order_of(g, y) {
        None => g.zero(),
        Some(o) => g.scale(&(&o / o.gcd(d)), y),
    }
}

/// A homomorphism whose generator images are drawn by `draw` and then
/// pushed into the part killed by the generator's order.
pub fn hom_with(source: &FgAbelianGroup, target: &FgAbelianGroup, mut draw: impl FnMut() -> Element) -> AbHom {
    let images: Vec<Element> = source.orders().iter().map(|d| killed_by(target, &draw(), d)).collect();
    AbHom::from_images(source.clone(), target.clone(), &images).unwrap()
}

pub fn random_hom(r: &mut StdRng, source: &FgAbelianGroup, target: &FgAbelianGroup, bound: i64) -> AbHom {
    let mut draw = || random_element(r, target, bound);
    let images: Vec<Element> = (0..source.ngens()).map(|_| draw()).collect();
    let mut it = images.into_iter();
    hom_with(source, target, || it.next().unwrap())
}

/// Image of `x` computed from the raw matrix, reduced by the target orders.
pub fn eval(f: &AbHom, x: &Element) -> Vec<BigInt> {
    let m = f.matrix();
    (0..m.rows())
        .map(|i| {
            let s: BigInt = (0..m.cols()).map(|j| &m[(i, j)] * &x.coords()[j]).sum();
            let d = &f.target().orders()[i];
            if d.is_zero() {
                s
            } else {
                s.mod_floor(d)
            }
        })
        .collect()
}

fn torsion_positions(g: &FgAbelianGroup) -> Vec<usize> {
    (0..g.ngens()).filter(|&i| !g.orders()[i].is_zero()).collect()
}

/// Finite-order coordinates of `g` as a component group with its inclusion.
fn component_datum(name: &str, g: &FgAbelianGroup, keep: &[usize]) -> GroupDatum {
    let com = FgAbelianGroup::new(keep.iter().map(|&i| g.orders()[i].clone()).collect()).unwrap();
    let images: Vec<Element> = keep.iter().map(|&i| g.generator(i)).collect();
    GroupDatum {
        name: name.into(),
        com_pullback: AbHom::from_images(com.clone(), g.clone(), &images).unwrap(),
        char_group: g.clone(),
        com_char_group: com,
    }
}

/// Knobs for [`random_chain`]; finite parts have order at most `max_order`.
#[derive(Clone, Copy, Debug)]
pub struct ChainShape {
    pub max_order: i64,
    pub max_n: i64,
    /// Allow free factors in the open characters.
    pub free_s1: bool,
    /// Allow a second free factor in the closed characters.
    pub free_l0: bool,
}

impl Default for ChainShape {
    fn default() -> Self {
        ChainShape {
            max_order: 200,
            max_n: 6,
            free_s1: true,
            free_l0: true,
        }
    }
}

/// A valid chain: `char_l0 = Z^r + A`, `char_s0 = char_l0/<act> + B`, with
/// the limit map landing in the image of `iota_res` and component data on
/// the finite-order coordinates.
pub fn random_chain(r: &mut StdRng, shape: ChainShape) -> SimpleChainDatum {
    let n = r.gen_range(1..=shape.max_n);
    let free_l0 = if shape.free_l0 { r.gen_range(1..=2) } else { 1 };
    let torsion_l0 = finite_orders(r, 2, shape.max_order);
    let mut l0_orders = vec![0; free_l0];
    l0_orders.extend(&torsion_l0);
    let char_l0 = FgAbelianGroup::from_i64(&l0_orders);

    // gamma = (1, g2, 0, ...) and act chosen with gamma(act) = n.
    let g2 = r.gen_range(-3..=3);
    let mut gamma_row = vec![1];
    let mut act = vec![n];
    if free_l0 == 2 {
        let k = r.gen_range(-3..=3);
        gamma_row.push(g2);
        act = vec![n - g2 * k, k];
    }
    for &d in &torsion_l0 {
        gamma_row.push(0);
        act.push(r.gen_range(0..d));
    }
    let z = FgAbelianGroup::free(1);
    let gamma_pair = AbHom::from_i64(char_l0.clone(), z.clone(), &[&gamma_row]).unwrap();
    let act_char = char_l0.element_i64(&act).unwrap();

    // Quotient by the relations of char_l0 and by act.
    let k = char_l0.ngens();
    let mut rels = vec![act.iter().map(|&x| big(x)).collect::<Vec<_>>()];
    for (i, &d) in l0_orders.iter().enumerate() {
        if d != 0 {
            let mut row = vec![BigInt::zero(); k];
            row[i] = big(d);
            rels.push(row);
        }
    }
    let pres = Presentation::new(k, IntMatrix::from_rows_with_cols(rels, k).unwrap()).unwrap();
    let cf = pres.canonical_form();
    let q = cf.group.clone();
    let extra = FgAbelianGroup::from_i64(&finite_orders(r, 1, (shape.max_order / 2).max(2)));
    let char_s0 = q.direct_sum(&extra);

    let mut iota_m = IntMatrix::zeros(char_s0.ngens(), k);
    for i in 0..q.ngens() {
        for j in 0..k {
            iota_m[(i, j)] = cf.to_canonical[(i, j)].clone();
        }
    }
    let iota_res = AbHom::new(char_l0.clone(), char_s0.clone(), iota_m).unwrap();

    let zn = FgAbelianGroup::from_i64(&[n]);
    let mut mu_images = Vec::new();
    for j in 0..q.ngens() {
        let lift = cf.from_canonical.column(j);
        let deg: BigInt = lift.iter().zip(&gamma_row).map(|(x, &g)| x * g).sum();
        mu_images.push(zn.element(vec![deg]).unwrap());
    }
    for d in extra.orders() {
        let y = random_element(r, &zn, 0);
        mu_images.push(killed_by(&zn, &y, d));
    }
    let mu_n_res = AbHom::from_images(char_s0.clone(), zn, &mu_images).unwrap();

    let free_s1 = if shape.free_s1 { r.gen_range(0..=1) } else { 0 };
    let char_s1 = random_group(r, free_s1, 2, shape.max_order);
    let lifts: Vec<Element> = (0..char_s1.ngens()).map(|_| random_element(r, &char_l0, 3)).collect();
    let mut it = lifts.iter();
    let lim_map = hom_with(&char_s1, &char_s0, || iota_res.apply(it.next().unwrap()).unwrap());

    let mut s1_torsion = torsion_positions(&char_s1);
    s1_torsion.retain(|_| r.gen_bool(0.7));
    let com_s1 = component_datum("s1", &char_s1, &s1_torsion);
    let com_s0 = component_datum("s0", &char_s0, &torsion_positions(&char_s0));
    let sigma_images: Vec<Element> = s1_torsion
        .iter()
        .map(|&i| {
            let y = lim_map.apply(&char_s1.generator(i)).unwrap();
            let coords = torsion_positions(&char_s0)
                .iter()
                .map(|&p| y.coords()[p].clone())
                .collect();
            com_s0.com_char_group.element(coords).unwrap()
        })
        .collect();
    let sigma_res = AbHom::from_images(
        com_s1.com_char_group.clone(),
        com_s0.com_char_group.clone(),
        &sigma_images,
    )
    .unwrap();

    let c = SimpleChainDatum {
        name: "random".into(),
        n: big(n),
        char_s1,
        char_s0,
        char_l0,
        lim_map,
        iota_res,
        gamma_pair,
        mu_n_res,
        act_char,
        components: Some(ComponentData {
            com_s1,
            com_s0,
            sigma_res,
        }),
        top_wedge: None,
    };
    let report = validate_simple_chain(&c);
    assert!(report.is_valid(), "generated chain is invalid: {report}");
    c
}

/// A graph whose orbit character groups are finite with product order at
/// most `max_total`; edges carry random chains and random pullbacks.
pub fn random_graph(r: &mut StdRng, max_total: i64) -> ChainGraph {
    let n_open = r.gen_range(1..=3);
    let n_closed = r.gen_range(0..=3);
    let mut budget = max_total;
    let orbit = |r: &mut StdRng, name: String, budget: &mut i64| {
        let orders = finite_orders(r, 2, (*budget).min(60));
        let g = FgAbelianGroup::from_i64(&orders);
        *budget /= small(&g.order().unwrap()).max(1);
        OrbitDatum { name, chars: g }
    };
    let open: Vec<OrbitDatum> = (0..n_open).map(|j| orbit(r, format!("u{j}"), &mut budget)).collect();
    let closed: Vec<OrbitDatum> = (0..n_closed).map(|i| orbit(r, format!("z{i}"), &mut budget)).collect();
    let mut edges = Vec::new();
    if n_closed > 0 {
        for k in 0..r.gen_range(0..=4) {
            let a = r.gen_range(0..n_open);
            let nu = r.gen_range(0..n_closed);
            let chain = random_chain(
                r,
                ChainShape {
                    max_order: 24,
                    max_n: 4,
                    free_s1: false,
                    free_l0: false,
                },
            );
            let open_ident = random_hom(r, &open[a].chars, &chain.char_s1, 0);
            let pull = random_hom(r, &closed[nu].chars, &chain.char_s0, 3);
            edges.push(EdgeDatum {
                name: format!("k{k}"),
                a,
                nu,
                chain,
                open_ident,
                pull,
                restrict_l0: None,
            });
        }
    }
    build_chain_graph(GraphDescription {
        name: "random".into(),
        open_orbits: open,
        closed_orbits: closed,
        edges,
    })
    .unwrap()
}

/// Every tuple of orbit characters satisfying all edge equations, by enumeration.
pub fn brute_force_line_bundles(g: &ChainGraph) -> Vec<Element> {
    let ambient = g.ambient();
    let mut out = Vec::new();
    for x in ambient.elements().expect("finite orbit groups") {
        let (open, closed) = g.split(&x).unwrap();
        let ok = g.edges().iter().all(|e| {
            let s1 = e.open_ident.target().element(eval(&e.open_ident, &open[e.a])).unwrap();
            let lhs = eval(&e.chain.lim_map, &s1);
            let rhs = eval(&e.pull, &closed[e.nu]);
            lhs == rhs
        });
        if ok {
            out.push(x);
        }
    }
    out.sort();
    out
}

/// The weight-two chain of an open orbit of SU(1,1) closing up at the origin;
/// `sign` is the pairing of the cocharacter with the closed characters.
pub fn su11_chain(name: &str, sign: i64) -> SimpleChainDatum {
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
        n: big(2),
        char_s1: z2.clone(),
        char_s0: z2.clone(),
        char_l0: z.clone(),
        lim_map: id2.clone(),
        iota_res: AbHom::from_i64(z.clone(), z2.clone(), &[&[1]]).unwrap(),
        gamma_pair: AbHom::from_i64(z.clone(), z, &[&[sign]]).unwrap(),
        mu_n_res: id2.clone(),
        act_char: FgAbelianGroup::free(1).element_i64(&[2 * sign]).unwrap(),
        components: Some(ComponentData {
            com_s1: com.clone(),
            com_s0: com,
            sigma_res: id2,
        }),
        top_wedge: None,
    }
}

/// The graph of both open orbits of SU(1,1) over the origin.
pub fn su11_ntheta() -> ChainGraph {
    let z = FgAbelianGroup::free(1);
    let z2 = FgAbelianGroup::cyclic(2);
    let edge = |name: &str, a: usize, sign: i64| {
        let chain = su11_chain(name, sign);
        EdgeDatum {
            name: format!("z{name}"),
            a,
            nu: 0,
            open_ident: AbHom::identity(z2.clone()),
            pull: chain.iota_res.clone(),
            restrict_l0: Some(AbHom::identity(z.clone())),
            chain,
        }
    };
    build_chain_graph(GraphDescription {
        name: "ntheta".into(),
        open_orbits: vec![
            OrbitDatum {
                name: "rho_plus".into(),
                chars: z2.clone(),
            },
            OrbitDatum {
                name: "rho_minus".into(),
                chars: z2.clone(),
            },
        ],
        closed_orbits: vec![OrbitDatum {
            name: "lambda".into(),
            chars: z.clone(),
        }],
        edges: vec![edge("plus", 0, 1), edge("minus", 1, -1)],
    })
    .unwrap()
}

/// Every nonzero `e` in `[0, bound]^r` satisfying the weight condition.
pub fn weight_solutions(weights: &[i64], nonnegative: bool, bound: u64) -> Vec<Vec<u64>> {
    let r = weights.len();
    let mut out = Vec::new();
    let mut e = vec![0u64; r];
    loop {
        let s: i64 = e.iter().zip(weights).map(|(&x, &w)| x as i64 * w).sum();
        if e.iter().any(|&x| x > 0) && (s == 0 || (nonnegative && s > 0)) {
            out.push(e.clone());
        }
        let mut i = 0;
        while i < r && e[i] == bound {
            e[i] = 0;
            i += 1;
        }
        if i == r {
            return out;
        }
        e[i] += 1;
    }
}

/// Elements of the box that are not a sum of two nonzero solutions, sorted
/// by total degree and then by descending exponent vector.
///
/// Solutions are visited by increasing total degree; a decomposition `e = a + c`
/// can always be rearranged so that `a` is minimal, so only minimal elements
/// found so far need to be tried as the first summand.
pub fn minimal_solutions(weights: &[i64], nonnegative: bool, bound: u64) -> Vec<Vec<u64>> {
    let mut sols = weight_solutions(weights, nonnegative, bound);
    let set: std::collections::HashSet<Vec<u64>> = sols.iter().cloned().collect();
    sols.sort_by_key(|e| (e.iter().sum::<u64>(), std::cmp::Reverse(e.clone())));
    let mut minimal: Vec<Vec<u64>> = Vec::new();
    for e in sols {
        let reducible = minimal.iter().any(|b| {
            b.iter().zip(&e).all(|(x, y)| x <= y)
                && set.contains(&e.iter().zip(b).map(|(y, x)| y - x).collect::<Vec<u64>>())
        });
        if !reducible {
            minimal.push(e);
        }
    }
    minimal
}

/// Whether every solution in the box is a sum of elements of `basis`.
pub fn generates_box(weights: &[i64], nonnegative: bool, bound: u64, basis: &[Vec<u64>]) -> bool {
    let mut sols = weight_solutions(weights, nonnegative, bound);
    sols.sort_by_key(|e| e.iter().sum::<u64>());
    let mut reached: std::collections::HashSet<Vec<u64>> = std::collections::HashSet::new();
    reached.insert(vec![0; weights.len()]);
    for e in &sols {
        let ok = basis.iter().any(|b| {
            b.iter().zip(e).all(|(x, y)| x <= y)
                && reached.contains(&e.iter().zip(b).map(|(y, x)| y - x).collect::<Vec<u64>>())
        });
        if !ok {
            return false;
        }
        reached.insert(e.clone());
    }
    true
}
