use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use cy3lab::bps::{dt0_product, ks_ray_automorphism, TruncatedSeries};
use cy3lab::catalog::{catalog_get, CatalogEntry};
use cy3lab::quiver::{
    canonicalize_potential, equivalence_scale, potentials_equivalent, skew_euler_form, Arrow,
    DimensionVector, Potential, Quiver, SkewForm,
};
use cy3lab::symmetry::{quotient, Generator, GroupAction, Normalization};

const CASES: u32 = 128;

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(CASES)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn entry_names() -> Vec<(&'static str, Option<u32>)> {
    vec![
        ("conifold", None),
        ("c3", None),
        ("p2", None),
        ("p1xp1", None),
        ("pdp5", None),
        ("dp3", None),
        ("yN0", Some(3)),
        ("dp3z2", None),
        ("dp3z3", None),
    ]
}

fn entry(k: usize) -> CatalogEntry {
    let names = entry_names();
    let (n, p) = names[k % names.len()];
    catalog_get(n, p).unwrap()
}

/// Terms of `w`, each written starting at an arbitrary rotation.
fn rotated_terms(w: &Potential, shifts: &[usize]) -> Vec<(Vec<String>, BigRational)> {
    w.to_terms()
        .into_iter()
        .enumerate()
        .map(|(i, (mut word, c))| {
            let s = shifts[i % shifts.len()] % word.len();
            word.rotate_left(s);
            (word, c)
        })
        .collect()
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn canonicalization_is_idempotent_and_rotation_blind(
        k in 0usize..9,
        shifts in prop::collection::vec(0usize..12, 1..8),
        order in prop::collection::vec(any::<u32>(), 1..8),
        split in prop::collection::vec(1i64..5, 1..8),
    ) {
        let w = entry(k).potential;
        let mut terms = rotated_terms(&w, &shifts);
        // reorder terms and split coefficients into several rotated copies
        let perm_key = |i: usize| order[i % order.len()];
        let mut idx: Vec<usize> = (0..terms.len()).collect();
        idx.sort_by_key(|&i| (perm_key(i), i));
        terms = idx.into_iter().map(|i| terms[i].clone()).collect();
        let mut pieces = Vec::new();
        for (i, (word, c)) in terms.into_iter().enumerate() {
            let m = split[i % split.len()];
            for j in 0..m {
                let mut rot = word.clone();
                let len = rot.len();
                rot.rotate_left(j as usize % len);
                pieces.push((rot, &c / BigRational::from_integer(m.into())));
            }
        }
        let once = canonicalize_potential(pieces).unwrap();
        prop_assert_eq!(&once, &w);
        let twice = canonicalize_potential(once.to_terms()).unwrap();
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn opposite_terms_cancel(k in 0usize..9, shifts in prop::collection::vec(0usize..12, 1..8)) {
        let w = entry(k).potential;
        let mut terms = w.to_terms();
        terms.extend(rotated_terms(&w, &shifts).into_iter().map(|(t, c)| (t, -c)));
        prop_assert!(canonicalize_potential(terms).unwrap().is_empty());
    }
}

fn perturbed(w: &Potential, which: usize, delta: &BigRational) -> Potential {
    let mut terms = w.to_terms();
    let n = terms.len();
    terms[which % n].1 += delta;
    canonicalize_potential(terms).unwrap()
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn equivalence_is_symmetric_and_transitive(
        k in 0usize..9,
        (a, b) in (1i64..20, 1i64..20),
        (c, d) in (1i64..20, 1i64..20),
        shifts in prop::collection::vec(0usize..12, 1..8),
        which in 0usize..64,
        bump in prop_oneof![Just(0i64), 1i64..5, -5i64..-1],
    ) {
        let w = entry(k).potential;
        prop_assume!(!w.is_empty());
        let l = rat(a, b);
        let m = rat(c, d);
        let w1 = canonicalize_potential(rotated_terms(&w.scaled(&l), &shifts)).unwrap();
        let w2 = perturbed(&w.scaled(&m), which, &rat(bump, 1));
        let w3 = w.clone();

        let e12 = potentials_equivalent(&w1, &w2, true);
        prop_assert_eq!(e12, potentials_equivalent(&w2, &w1, true));
        prop_assert_eq!(e12, bump == 0);
        prop_assert!(potentials_equivalent(&w1, &w3, true));
        prop_assert!(potentials_equivalent(&w3, &w1, true));
        if e12 {
            prop_assert!(potentials_equivalent(&w2, &w3, true));
            let s12 = equivalence_scale(&w1, &w2, true).unwrap();
            let s23 = equivalence_scale(&w2, &w3, true).unwrap();
            prop_assert_eq!(s12 * s23, equivalence_scale(&w1, &w3, true).unwrap());
        }
        prop_assert_eq!(potentials_equivalent(&w1, &w3, false), l.is_one());
        // negative scales are never accepted
        prop_assert!(!potentials_equivalent(&w.scaled(&-l.clone()), &w, true));
    }
}

/// Random quiver on `n` vertices with the given arrow endpoints.
fn random_quiver(n: u32, ends: &[(u32, u32)]) -> Quiver {
    let arrows = ends
        .iter()
        .enumerate()
        .map(|(i, &(s, t))| Arrow::new(format!("a{i}"), s % n + 1, t % n + 1))
        .collect();
    Quiver::new((1..=n).collect(), arrows).unwrap()
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn skew_form_is_antisymmetric_and_counts_arrows(
        n in 1u32..7,
        ends in prop::collection::vec((0u32..7, 0u32..7), 0..20),
        a in prop::collection::vec(-5i64..5, 7),
        b in prop::collection::vec(-5i64..5, 7),
    ) {
        let q = random_quiver(n, &ends);
        let f = skew_euler_form(&q);
        let r = n as usize;
        for i in 0..r {
            for j in 0..r {
                prop_assert_eq!(f.get(i, j), -f.get(j, i));
                let (vi, vj) = (i as u32 + 1, j as u32 + 1);
                let fwd = q.arrows().iter().filter(|x| x.src == vi && x.tgt == vj).count() as i64;
                let bwd = q.arrows().iter().filter(|x| x.src == vj && x.tgt == vi).count() as i64;
                prop_assert_eq!(f.get(i, j), fwd - bwd);
            }
        }
        let (a, b) = (DimensionVector(a[..r].to_vec()), DimensionVector(b[..r].to_vec()));
        prop_assert_eq!(f.pairing(&a, &b).unwrap(), -f.pairing(&b, &a).unwrap());
        prop_assert_eq!(f.pairing(&a, &a).unwrap(), 0);
    }
}

/// Catalog entries with free actions, as (entry, action name).
fn free_actions() -> Vec<(CatalogEntry, &'static str)> {
    let mut v = vec![
        (catalog_get("p1xp1", None).unwrap(), "rot"),
        (catalog_get("pdp5", None).unwrap(), "pi1"),
        (catalog_get("pdp5", None).unwrap(), "pi2"),
        (catalog_get("pdp5", None).unwrap(), "pi1pi2"),
        (catalog_get("dp3", None).unwrap(), "pi"),
        (catalog_get("dp3", None).unwrap(), "pi2"),
        (catalog_get("dp3", None).unwrap(), "pi3"),
    ];
    for n in 1..=6 {
        v.push((catalog_get("yN0", Some(n)).unwrap(), "rot"));
    }
    v
}

/// Renames vertex `v` to `relabel[v - 1]` everywhere.
fn relabel(q: &Quiver, act: &GroupAction, perm: &[u32]) -> (Quiver, GroupAction) {
    let pos: BTreeMap<u32, usize> = q
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let f = |v: u32| perm[pos[&v]] + 100;
    let arrows = q
        .arrows()
        .iter()
        .map(|a| Arrow::new(a.id.clone(), f(a.src), f(a.tgt)))
        .collect();
    let q2 = Quiver::new(q.vertices().iter().map(|&v| f(v)).collect(), arrows).unwrap();
    let generators = act
        .generators
        .iter()
        .map(|g| Generator {
            vertices: g.vertices.iter().map(|(&a, &b)| (f(a), f(b))).collect(),
            arrows: g.arrows.clone(),
        })
        .collect();
    (
        q2,
        GroupAction {
            orders: act.orders.clone(),
            generators,
        },
    )
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn quotient_counts_divide_by_group_order(
        k in 0usize..13,
        keys in prop::collection::vec(any::<u32>(), 12),
        raw in any::<bool>(),
    ) {
        let cases = free_actions();
        let (e, name) = &cases[k];
        let act = e.action(name).unwrap();
        let mut perm: Vec<u32> = (0..e.quiver.vertex_count() as u32).collect();
        perm.sort_by_key(|&i| (keys[i as usize % keys.len()], i));
        let (q, act) = relabel(&e.quiver, act, &perm);
        let norm = if raw { Normalization::Raw } else { Normalization::ByGroupOrder };
        let r = quotient(&q, &e.potential, &act, norm).unwrap();
        let g = act.group().order() as usize;
        prop_assert_eq!(r.quiver.vertex_count() * g, q.vertex_count());
        prop_assert_eq!(r.quiver.arrow_count() * g, q.arrow_count());
        prop_assert_eq!(r.vertex_orbit.len(), q.vertex_count());
        // every quotient term comes from a full orbit of upstairs terms
        let total_up: BigRational = e.potential.terms().map(|(_, c)| c.abs()).sum();
        let total_down: BigRational = r.potential.terms().map(|(_, c)| c.abs()).sum();
        let expected = if raw { total_up } else { total_up / BigRational::from_integer(g.into()) };
        prop_assert!(total_down <= expected);
    }
}

/// Random antisymmetric integer matrix of size `n`.
fn skew_from(n: usize, upper: &[i64]) -> SkewForm {
    let mut m = vec![vec![0i64; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            m[i][j] = upper[k % upper.len()];
            m[j][i] = -m[i][j];
            k += 1;
        }
    }
    SkewForm::from_matrix((1..=n as u32).collect(), m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ray_multipliers_are_additive(
        upper in prop::collection::vec(-3i64..4, 6),
        classes in prop::collection::vec(prop::collection::vec(0i64..3, 4), 1..4),
        omegas in prop::collection::vec(prop_oneof![Just(1i64), Just(-2), Just(2), Just(-1)], 4),
        b1 in prop::collection::vec(-2i64..3, 4),
        b2 in prop::collection::vec(-2i64..3, 4),
    ) {
        let rank = 4;
        let skew = skew_from(rank, &upper);
        let classes: Vec<DimensionVector> = classes
            .into_iter()
            .filter(|c| c.iter().any(|&x| x > 0))
            .map(DimensionVector)
            .collect();
        prop_assume!(!classes.is_empty());
        let table: BTreeMap<DimensionVector, i64> =
            classes.iter().enumerate().map(|(i, c)| (c.clone(), omegas[i % omegas.len()])).collect();
        let aut = ks_ray_automorphism(&classes, |c| table.get(c).copied(), &skew, 6).unwrap();
        let (b1, b2) = (DimensionVector(b1), DimensionVector(b2));
        let sum = DimensionVector(b1.0.iter().zip(&b2.0).map(|(x, y)| x + y).collect());
        let lhs = aut.multiplier(&b1).unwrap().mul(&aut.multiplier(&b2).unwrap());
        prop_assert_eq!(lhs, aut.multiplier(&sum).unwrap());
    }
}

/// `(1 − x^α)^k` expanded directly from the binomial series, truncated.
fn naive_factor(weights: &[u32], order: u32, alpha: &[u32], k: i64) -> BTreeMap<Vec<u32>, BigInt> {
    let deg: u32 = alpha.iter().zip(weights).map(|(a, w)| a * w).sum();
    let mut out = BTreeMap::new();
    let mut n = 0u32;
    loop {
        if n * deg > order || (k >= 0 && n as i64 > k) {
            break;
        }
        // coefficient of (−x^α)^n in (1+y)^k is C(k, n)
        let mut binom = BigRational::one();
        for i in 0..n as i64 {
            binom *= BigRational::new((k - i).into(), (i + 1).into());
        }
        let c: BigInt = binom.to_integer() * BigInt::from(if n.is_multiple_of(2) { 1 } else { -1 });
        if !c.is_zero() {
            out.insert(alpha.iter().map(|a| a * n).collect(), c);
        }
        n += 1;
        if deg == 0 {
            break;
        }
    }
    out
}

fn naive_mul(
    weights: &[u32],
    order: u32,
    a: &BTreeMap<Vec<u32>, BigInt>,
    b: &BTreeMap<Vec<u32>, BigInt>,
) -> BTreeMap<Vec<u32>, BigInt> {
    let mut out: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let d: u32 = e.iter().zip(weights).map(|(x, w)| x * w).sum();
            if d <= order {
                *out.entry(e).or_default() += ca * cb;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn series_matches_naive_expansion(
        weights in prop::collection::vec(1u32..3, 1..4),
        order in 0u32..7,
        factors in prop::collection::vec((prop::collection::vec(0u32..3, 3), -4i64..5), 0..5),
    ) {
        let vars = weights.len();
        let mut s = TruncatedSeries::one_weighted(weights.clone(), order);
        let mut naive: BTreeMap<Vec<u32>, BigInt> = BTreeMap::from([(vec![0; vars], BigInt::one())]);
        for (alpha, k) in factors {
            let alpha = alpha[..vars].to_vec();
            if alpha.iter().all(|&a| a == 0) {
                continue;
            }
            s.mul_one_minus_pow(&alpha, k);
            naive = naive_mul(&weights, order, &naive, &naive_factor(&weights, order, &alpha, k));
        }
        let got: BTreeMap<Vec<u32>, BigInt> = s.terms().map(|(e, c)| (e.to_vec(), c.clone())).collect();
        prop_assert_eq!(got, naive);
    }

    #[test]
    fn series_product_is_commutative(
        order in 0u32..6,
        f in prop::collection::vec((prop::collection::vec(0u32..3, 2), -3i64..4), 0..4),
        g in prop::collection::vec((prop::collection::vec(0u32..3, 2), -3i64..4), 0..4),
    ) {
        let build = |fs: &[(Vec<u32>, i64)]| {
            let mut s = TruncatedSeries::one(2, order);
            for (a, k) in fs {
                if a.iter().any(|&x| x > 0) {
                    s.mul_one_minus_pow(a, *k);
                }
            }
            s
        };
        let (a, b) = (build(&f), build(&g));
        let mut all = f.clone();
        all.extend(g.clone());
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b), build(&all));
    }

    #[test]
    fn dt0_product_is_nonnegative_with_unit_constant(n in 1u32..5, order in 0u32..7) {
        let s = dt0_product(n, order).unwrap();
        prop_assert!(s.coefficient(&vec![0; n as usize]).is_one());
        prop_assert!(s.terms().all(|(_, c)| !c.is_negative()));
    }
}
