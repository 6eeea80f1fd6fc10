use std::collections::BTreeMap;

use super::polygon::{LatticePolygon, Point};
use super::tiling::BraneTiling;
use super::DimerError;

/// Edge set covering every node exactly once, as indices into `tiling.edges` (ascending).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PerfectMatching {
    pub edges: Vec<usize>,
}

impl PerfectMatching {
    pub fn edge_ids<'a>(&self, t: &'a BraneTiling) -> Vec<&'a str> {
        self.edges.iter().map(|&k| t.edges[k].id.as_str()).collect()
    }
}

/// All perfect matchings, by backtracking over black nodes in node order and
/// their edges in edge order.
pub fn enumerate_matchings(t: &BraneTiling) -> Result<Vec<PerfectMatching>, DimerError> {
    let blacks = t.blacks();
    let whites = t.whites();
    if blacks.len() != whites.len() {
        return Err(DimerError::UnbalancedColors {
            black: blacks.len(),
            white: whites.len(),
        });
    }
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); t.nodes.len()];
    for (k, e) in t.edges.iter().enumerate() {
        let b = t.node_index(&e.black).expect("validated");
        let w = t.node_index(&e.white).expect("validated");
        incident[b].push((k, w));
    }
    let mut out = Vec::new();
    let mut used = vec![false; t.nodes.len()];
    let mut chosen = Vec::with_capacity(blacks.len());
    fn go(
        depth: usize,
        blacks: &[usize],
        incident: &[Vec<(usize, usize)>],
        used: &mut [bool],
        chosen: &mut Vec<usize>,
        out: &mut Vec<PerfectMatching>,
    ) {
        if depth == blacks.len() {
            let mut edges = chosen.clone();
            edges.sort_unstable();
            out.push(PerfectMatching { edges });
            return;
        }
        for &(k, w) in &incident[blacks[depth]] {
            if used[w] {
                continue;
            }
            used[w] = true;
            chosen.push(k);
            go(depth + 1, blacks, incident, used, chosen, out);
            chosen.pop();
            used[w] = false;
        }
    }
    go(0, &blacks, &incident, &mut used, &mut chosen, &mut out);
    Ok(out)
}

/// Sum of edge offsets; differences of these are homology classes in the
/// basis of the torus lattice.
pub fn matching_class(t: &BraneTiling, m: &PerfectMatching) -> Point {
    m.edges.iter().fold([0, 0], |acc, &k| {
        let o = t.edges[k].offset;
        [acc[0] + o[0], acc[1] + o[1]]
    })
}

/// Homology classes of `m − reference` over all matchings, with counts.
pub fn matching_polygon(
    t: &BraneTiling,
    reference: &PerfectMatching,
) -> Result<LatticePolygon, DimerError> {
    let all = enumerate_matchings(t)?;
    let r = matching_class(t, reference);
    let mut counts: BTreeMap<Point, u64> = BTreeMap::new();
    for m in &all {
        let c = matching_class(t, m);
        *counts.entry([c[0] - r[0], c[1] - r[1]]).or_default() += 1;
    }
    Ok(LatticePolygon::from_multiplicities(counts))
}

#[cfg(test)]
mod tests {
    use super::super::tiling::{square_tiling, Color, Edge, Node, TorusLattice};
    use super::*;
    use crate::quiver::int;

    #[test]
    fn conifold_has_four_matchings_on_a_unit_square() {
        let t = square_tiling(&TorusLattice::new([1, -1], [1, 1]).unwrap()).unwrap();
        let ms = enumerate_matchings(&t).unwrap();
        assert_eq!(ms.len(), 4);
        let poly = matching_polygon(&t, &ms[0]).unwrap();
        assert_eq!(poly.vertices.len(), 4);
        assert_eq!(poly.double_area(), 2);
        assert!(poly.multiplicities.values().all(|&m| m == 1));
    }

    #[test]
    fn unbalanced_tiling_is_rejected() {
        let l = TorusLattice::new([1, 0], [0, 1]).unwrap();
        let nodes = vec![
            Node {
                id: "b".into(),
                color: Color::Black,
                pos: [int(0), int(0)],
            },
            Node {
                id: "c".into(),
                color: Color::Black,
                pos: [int(0), int(0)],
            },
            Node {
                id: "w".into(),
                color: Color::White,
                pos: [int(0), int(0)],
            },
        ];
        let edges = vec![Edge {
            id: "e".into(),
            black: "b".into(),
            white: "w".into(),
            offset: [0, 0],
        }];
        let t = BraneTiling::new(l, nodes, edges).unwrap();
        assert!(matches!(
            enumerate_matchings(&t),
            Err(DimerError::UnbalancedColors { .. })
        ));
    }

    #[test]
    fn isolated_balanced_pair_has_no_matchings() {
        let l = TorusLattice::new([1, 0], [0, 1]).unwrap();
        let nodes = vec![
            Node {
                id: "b".into(),
                color: Color::Black,
                pos: [int(0), int(0)],
            },
            Node {
                id: "w".into(),
                color: Color::White,
                pos: [int(0), int(0)],
            },
        ];
        let t = BraneTiling::new(l, nodes, Vec::new()).unwrap();
        assert!(enumerate_matchings(&t).unwrap().is_empty());
    }
}
