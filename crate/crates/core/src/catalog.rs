//! Built-in geometries: quivers with potential, tilings, lattices and group actions.

use std::collections::BTreeMap;

use crate::dimer::{hexagonal_dp3, square_tiling, BraneTiling, TorusLattice};
use crate::quiver::{canonicalize_potential, int, Arrow, Potential, Quiver, VertexId};
use crate::symmetry::{Generator, GroupAction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog entry '{0}'")]
    UnknownEntry(String),
    #[error("{0}")]
    BadParameter(String),
}

impl CatalogError {
    pub fn code(&self) -> &'static str {
        match self {
            CatalogError::UnknownEntry(_) => "UnknownEntry",
            CatalogError::BadParameter(_) => "BadParameter",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub quiver: Quiver,
    pub potential: Potential,
    pub tiling: Option<BraneTiling>,
    pub actions: Vec<(String, GroupAction)>,
    pub lattices: Vec<(String, TorusLattice)>,
    pub parameter: Option<u32>,
}

impl CatalogEntry {
    pub fn action(&self, name: &str) -> Option<&GroupAction> {
        self.actions.iter().find(|(n, _)| n == name).map(|(_, a)| a)
    }

    pub fn lattice(&self, name: &str) -> Option<&TorusLattice> {
        self.lattices
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, l)| l)
    }
}

/// Entries accepted by [`catalog_get`]; `yN0` takes the parameter `N`.
pub const CATALOG_NAMES: &[&str] = &[
    "conifold", "c3", "p2", "p1xp1", "pdp5", "dp3", "yN0", "dp3z2", "dp3z3",
];

pub fn catalog_get(name: &str, n: Option<u32>) -> Result<CatalogEntry, CatalogError> {
    if name != "yN0" && n.is_some() {
        return Err(CatalogError::BadParameter(format!(
            "{name} takes no parameter"
        )));
    }
    Ok(match name {
        "conifold" => conifold(),
        "c3" => c3(),
        "p2" => p2(),
        "p1xp1" => p1xp1(),
        "pdp5" => pdp5(),
        "dp3" => dp3(),
        "dp3z2" => dp3_z2(),
        "dp3z3" => dp3_z3(),
        "yN0" => match n {
            None => return Err(CatalogError::BadParameter("yN0 requires N".into())),
            Some(0) => return Err(CatalogError::BadParameter("N must be at least 1".into())),
            Some(n) if n > 8 => {
                return Err(CatalogError::BadParameter(format!(
                    "N = {n} exceeds the supported 8"
                )))
            }
            Some(n) => y_n0(n),
        },
        other => return Err(CatalogError::UnknownEntry(other.to_string())),
    })
}

/// Names arrows `X{i}_{j}`, with letters `a, b, …` in input order when
/// several arrows share endpoints.
pub fn name_arrows(ends: &[(VertexId, VertexId)]) -> Vec<String> {
    let mut total: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    for e in ends {
        *total.entry(*e).or_default() += 1;
    }
    let mut used: BTreeMap<(VertexId, VertexId), u8> = BTreeMap::new();
    ends.iter()
        .map(|&(s, t)| {
            if total[&(s, t)] == 1 {
                format!("X{s}_{t}")
            } else {
                let k = used.entry((s, t)).or_default();
                let letter = (b'a' + *k) as char;
                *k += 1;
                format!("X{s}_{t}{letter}")
            }
        })
        .collect()
}

fn quiver(n: u32, ends: &[(VertexId, VertexId)]) -> Quiver {
    let names = name_arrows(ends);
    let arrows = names
        .into_iter()
        .zip(ends)
        .map(|(id, &(s, t))| Arrow::new(id, s, t))
        .collect();
    Quiver::new((1..=n).collect(), arrows).expect("catalog quiver")
}

fn potential(terms: &[(i64, &[&str])]) -> Potential {
    canonicalize_potential(terms.iter().map(|(c, w)| (w.to_vec(), int(*c))))
        .expect("catalog potential")
}

/// Parses words written as `X1_3.X3_5.X5_7` with a sign.
fn potential_from_strings(terms: &[(i64, &str)]) -> Potential {
    canonicalize_potential(
        terms
            .iter()
            .map(|(c, w)| (w.split('.').collect::<Vec<_>>(), int(*c))),
    )
    .expect("catalog potential")
}

fn perm(pairs: &[(VertexId, VertexId)]) -> BTreeMap<VertexId, VertexId> {
    pairs.iter().copied().filter(|(a, b)| a != b).collect()
}

fn cycle_perm(cycles: &[&[VertexId]]) -> BTreeMap<VertexId, VertexId> {
    let mut m = BTreeMap::new();
    for c in cycles {
        for (i, &v) in c.iter().enumerate() {
            m.insert(v, c[(i + 1) % c.len()]);
        }
    }
    m
}

pub fn lattice_conifold() -> TorusLattice {
    TorusLattice::new([1, -1], [1, 1]).expect("nondegenerate")
}

pub fn lattice_p1xp1() -> TorusLattice {
    TorusLattice::new([2, 0], [0, 2]).expect("nondegenerate")
}

pub fn lattice_pdp5() -> TorusLattice {
    TorusLattice::new([2, -2], [2, 2]).expect("nondegenerate")
}

pub fn lattice_yn0(n: u32) -> TorusLattice {
    let n = n as i64;
    TorusLattice::new([n, n], [0, 2]).expect("nondegenerate")
}

fn conifold() -> CatalogEntry {
    let q = quiver(2, &[(1, 2), (1, 2), (2, 1), (2, 1)]);
    let w = potential(&[
        (-1, &["X1_2a", "X2_1a", "X1_2b", "X2_1b"]),
        (1, &["X1_2b", "X2_1a", "X1_2a", "X2_1b"]),
    ]);
    CatalogEntry {
        name: "conifold".into(),
        quiver: q,
        potential: w,
        tiling: Some(square_tiling(&lattice_conifold()).expect("even lattice")),
        actions: Vec::new(),
        lattices: vec![("con".into(), lattice_conifold())],
        parameter: None,
    }
}

fn c3() -> CatalogEntry {
    let q = quiver(1, &[(1, 1), (1, 1), (1, 1)]);
    let w = potential(&[
        (1, &["X1_1a", "X1_1b", "X1_1c"]),
        (-1, &["X1_1a", "X1_1c", "X1_1b"]),
    ]);
    CatalogEntry {
        name: "c3".into(),
        quiver: q,
        potential: w,
        tiling: None,
        actions: Vec::new(),
        lattices: Vec::new(),
        parameter: None,
    }
}

fn p2() -> CatalogEntry {
    let mut ends = Vec::new();
    for (s, t) in [(1, 2), (2, 3), (3, 1)] {
        ends.extend([(s, t); 3]);
    }
    let q = quiver(3, &ends);
    let letters = ['a', 'b', 'c'];
    let perms: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
        ([1, 0, 2], -1),
    ];
    let terms: Vec<(Vec<String>, _)> = perms
        .iter()
        .map(|(p, sign)| {
            let word = vec![
                format!("X1_2{}", letters[p[0]]),
                format!("X2_3{}", letters[p[1]]),
                format!("X3_1{}", letters[p[2]]),
            ];
            (word, int(*sign))
        })
        .collect();
    let w = canonicalize_potential(terms).expect("catalog potential");
    let rot = GroupAction::induced_generator(&q, cycle_perm(&[&[1, 2, 3]]));
    CatalogEntry {
        name: "p2".into(),
        quiver: q,
        potential: w,
        tiling: None,
        actions: vec![("rot".into(), GroupAction::cyclic(3, rot))],
        lattices: Vec::new(),
        parameter: None,
    }
}

fn p1xp1() -> CatalogEntry {
    let q = quiver(
        4,
        &[
            (1, 2),
            (1, 2),
            (2, 3),
            (2, 3),
            (3, 4),
            (3, 4),
            (4, 1),
            (4, 1),
        ],
    );
    let w = potential(&[
        (-1, &["X1_2a", "X2_3a", "X3_4a", "X4_1a"]),
        (-1, &["X1_2b", "X2_3b", "X3_4b", "X4_1b"]),
        (1, &["X1_2b", "X2_3a", "X3_4b", "X4_1a"]),
        (1, &["X1_2a", "X2_3b", "X3_4a", "X4_1b"]),
    ]);
    // The half-period translation of the tiling swaps the two letters.
    let swap = |s: VertexId, t: VertexId, l: char| {
        let (s2, t2) = ((s + 1) % 4 + 1, (t + 1) % 4 + 1);
        (
            format!("X{s}_{t}{l}"),
            format!("X{s2}_{t2}{}", if l == 'a' { 'b' } else { 'a' }),
        )
    };
    let arrows = [(1, 2), (2, 3), (3, 4), (4, 1)]
        .into_iter()
        .flat_map(|(s, t)| [swap(s, t, 'a'), swap(s, t, 'b')])
        .collect();
    let rot = Generator {
        vertices: perm(&[(1, 3), (3, 1), (2, 4), (4, 2)]),
        arrows,
    };
    CatalogEntry {
        name: "p1xp1".into(),
        quiver: q,
        potential: w,
        tiling: Some(square_tiling(&lattice_p1xp1()).expect("even lattice")),
        actions: vec![("rot".into(), GroupAction::cyclic(2, rot))],
        lattices: vec![
            ("p1xp1".into(), lattice_p1xp1()),
            ("con".into(), lattice_conifold()),
        ],
        parameter: None,
    }
}

fn pdp5() -> CatalogEntry {
    let w = potential_from_strings(&[
        (-1, "X1_3.X3_5.X5_7.X7_1"),
        (1, "X1_4.X4_6.X6_7.X7_1"),
        (1, "X2_4.X4_5.X5_7.X7_2"),
        (-1, "X2_3.X3_6.X6_7.X7_2"),
        (-1, "X1_4.X4_5.X5_8.X8_1"),
        (1, "X1_3.X3_6.X6_8.X8_1"),
        (1, "X2_3.X3_5.X5_8.X8_2"),
        (-1, "X2_4.X4_6.X6_8.X8_2"),
    ]);
    let mut ends: Vec<(VertexId, VertexId)> = Vec::new();
    for id in w.arrow_ids() {
        let (s, t) = id[1..].split_once('_').expect("X{s}_{t}");
        ends.push((s.parse().unwrap(), t.parse().unwrap()));
    }
    let q = quiver(8, &ends);
    let pi1 = GroupAction::induced_generator(&q, cycle_perm(&[&[1, 2], &[3, 4], &[5, 6], &[7, 8]]));
    let pi2 = GroupAction::induced_generator(&q, cycle_perm(&[&[1, 5], &[2, 6], &[3, 7], &[4, 8]]));
    // Second generator of the translation group of the tiling over the
    // conifold lattice; differs from `pi2` on the 3, 4, 7, 8 block.
    let pi2_translation =
        GroupAction::induced_generator(&q, cycle_perm(&[&[1, 5], &[2, 6], &[3, 8], &[4, 7]]));
    CatalogEntry {
        name: "pdp5".into(),
        quiver: q,
        potential: w,
        tiling: Some(square_tiling(&lattice_pdp5()).expect("even lattice")),
        actions: vec![
            ("pi1".into(), GroupAction::cyclic(2, pi1.clone())),
            ("pi2".into(), GroupAction::cyclic(2, pi2.clone())),
            (
                "pi1pi2".into(),
                GroupAction {
                    orders: vec![2, 2],
                    generators: vec![pi1.clone(), pi2_translation],
                },
            ),
            (
                "pi1pi2_displayed".into(),
                GroupAction {
                    orders: vec![2, 2],
                    generators: vec![pi1, pi2],
                },
            ),
        ],
        lattices: vec![
            ("pdp5".into(), lattice_pdp5()),
            ("p1xp1".into(), lattice_p1xp1()),
            ("con".into(), lattice_conifold()),
        ],
        parameter: None,
    }
}

fn dp3() -> CatalogEntry {
    let ends = [
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 6),
        (6, 1),
        (1, 3),
        (3, 5),
        (5, 1),
        (2, 4),
        (4, 6),
        (6, 2),
    ];
    let q = quiver(6, &ends);
    let w = potential_from_strings(&[
        (1, "X1_2.X2_3.X3_4.X4_5.X5_6.X6_1"),
        (-1, "X2_3.X3_5.X5_6.X6_2"),
        (-1, "X1_3.X3_4.X4_6.X6_1"),
        (-1, "X1_2.X2_4.X4_5.X5_1"),
        (1, "X1_3.X3_5.X5_1"),
        (1, "X2_4.X4_6.X6_2"),
    ]);
    let rotate = |k: u32| {
        let m = (1..=6)
            .map(|v| (v, (v - 1 + k) % 6 + 1))
            .collect::<Vec<_>>();
        GroupAction::induced_generator(&q, perm(&m))
    };
    CatalogEntry {
        name: "dp3".into(),
        actions: vec![
            ("pi".into(), GroupAction::cyclic(6, rotate(1))),
            ("pi3".into(), GroupAction::cyclic(2, rotate(3))),
            ("pi2".into(), GroupAction::cyclic(3, rotate(2))),
        ],
        quiver: q,
        potential: w,
        tiling: Some(hexagonal_dp3()),
        lattices: Vec::new(),
        parameter: None,
    }
}

/// The displayed potential of the `Z_2` quotient of dP3, as written.
fn dp3_z2() -> CatalogEntry {
    let q = quiver(3, &[(1, 2), (2, 3), (3, 1), (3, 2), (1, 3), (2, 1)]);
    let w = potential_from_strings(&[
        (1, "X1_2.X2_3.X3_1.X1_2.X2_3.X3_1"),
        (-1, "X2_3.X3_2.X2_3.X3_2"),
        (-1, "X1_3.X3_1.X1_3.X3_1"),
        (-1, "X1_2.X2_1.X1_2.X2_1"),
        (1, "X1_3.X3_2.X2_1"),
        (1, "X2_1.X1_3.X3_2"),
    ]);
    CatalogEntry {
        name: "dp3z2".into(),
        quiver: q,
        potential: w,
        tiling: None,
        actions: Vec::new(),
        lattices: Vec::new(),
        parameter: None,
    }
}

/// The displayed potential of the `Z_3` quotient of dP3, as written.
fn dp3_z3() -> CatalogEntry {
    let q = quiver(2, &[(1, 2), (2, 1), (1, 1), (2, 2)]);
    let w = potential_from_strings(&[
        (1, "X1_2.X2_1.X1_2.X2_1.X1_2.X2_1"),
        (-1, "X2_1.X1_1.X1_2.X2_2"),
        (-1, "X1_1.X1_2.X2_2.X2_1"),
        (-1, "X1_2.X2_2.X2_1.X1_1"),
        (1, "X1_1.X1_1.X1_1"),
        (1, "X2_2.X2_2.X2_2"),
    ]);
    CatalogEntry {
        name: "dp3z3".into(),
        quiver: q,
        potential: w,
        tiling: None,
        actions: Vec::new(),
        lattices: Vec::new(),
        parameter: None,
    }
}

/// Arrow roles of `Y^{N,0}` for block `k ∈ 1..=N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Role {
    A1,
    A2,
    C,
    D,
}

fn y_n0(n: u32) -> CatalogEntry {
    let m = 2 * n;
    let wrap = |v: i64| ((v - 1).rem_euclid(m as i64) + 1) as VertexId;
    let mut roles = Vec::new();
    let mut ends = Vec::new();
    for k in 1..=n as i64 {
        for (role, s, t) in [
            (Role::A1, 2 * k - 1, 2 * k),
            (Role::A2, 2 * k - 1, 2 * k),
            (Role::C, 2 * k, 2 * k + 1),
            (Role::D, 2 * k + 2, 2 * k - 1),
        ] {
            roles.push((role, k as u32));
            ends.push((wrap(s), wrap(t)));
        }
    }
    let q = quiver(m, &ends);
    let names = name_arrows(&ends);
    let by_role: BTreeMap<(Role, u32), String> =
        roles.iter().copied().zip(names.iter().cloned()).collect();
    let next = |k: u32| k % n + 1;
    let mut terms = Vec::new();
    for k in 1..=n {
        let word = |x: Role, y: Role| {
            vec![
                by_role[&(x, k)].clone(),
                by_role[&(Role::C, k)].clone(),
                by_role[&(y, next(k))].clone(),
                by_role[&(Role::D, k)].clone(),
            ]
        };
        terms.push((word(Role::A1, Role::A2), int(1)));
        terms.push((word(Role::A2, Role::A1), int(-1)));
    }
    let w = canonicalize_potential(terms).expect("catalog potential");
    let vertices: BTreeMap<VertexId, VertexId> = (1..=m)
        .map(|v| (v, wrap(v as i64 + 2)))
        .filter(|(a, b)| a != b)
        .collect();
    let arrows: BTreeMap<String, String> = roles
        .iter()
        .filter_map(|&(role, k)| {
            let from = by_role[&(role, k)].clone();
            let to = by_role[&(role, next(k))].clone();
            (from != to).then_some((from, to))
        })
        .collect();
    let rot = GroupAction::cyclic(n, Generator { vertices, arrows });
    CatalogEntry {
        name: "yN0".into(),
        quiver: q,
        potential: w,
        tiling: Some(square_tiling(&lattice_yn0(n)).expect("even lattice")),
        actions: vec![("rot".into(), rot)],
        lattices: vec![
            ("fine".into(), lattice_yn0(n)),
            (
                "con".into(),
                TorusLattice::new([1, 1], [0, 2]).expect("nondegenerate"),
            ),
        ],
        parameter: Some(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::validate;
    use crate::symmetry::validate_action;

    #[test]
    fn every_entry_validates_with_its_actions() {
        for &name in CATALOG_NAMES {
            let params: Vec<Option<u32>> = if name == "yN0" {
                (1..=6).map(Some).collect()
            } else {
                vec![None]
            };
            for p in params {
                let e = catalog_get(name, p).unwrap();
                validate(&e.quiver, &e.potential).unwrap();
                for (an, act) in &e.actions {
                    validate_action(&e.quiver, &e.potential, act)
                        .unwrap_or_else(|err| panic!("{name}/{an}: {err}"));
                }
            }
        }
    }

    #[test]
    fn p1xp1_shape() {
        let e = catalog_get("p1xp1", None).unwrap();
        assert_eq!(
            (
                e.quiver.vertex_count(),
                e.quiver.arrow_count(),
                e.potential.len()
            ),
            (4, 8, 4)
        );
    }

    #[test]
    fn bad_lookups() {
        assert!(matches!(
            catalog_get("nosuch", None),
            Err(CatalogError::UnknownEntry(_))
        ));
        assert!(matches!(
            catalog_get("yN0", Some(0)),
            Err(CatalogError::BadParameter(_))
        ));
        assert!(matches!(
            catalog_get("yN0", None),
            Err(CatalogError::BadParameter(_))
        ));
        assert!(matches!(
            catalog_get("c3", Some(2)),
            Err(CatalogError::BadParameter(_))
        ));
    }

    #[test]
    fn arrow_names_use_letters_only_for_parallel_arrows() {
        assert_eq!(
            name_arrows(&[(1, 2), (1, 3), (1, 2)]),
            vec!["X1_2a", "X1_3", "X1_2b"]
        );
    }
}
