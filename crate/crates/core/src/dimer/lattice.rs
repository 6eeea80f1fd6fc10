use std::collections::BTreeMap;

use super::faces::Embedding;
use super::tiling::{BraneTiling, Edge, Node, RatVec, TorusLattice};
use super::DimerError;
use crate::quiver::int;
use crate::symmetry::{Generator, GroupAction};

type Mat = Vec<Vec<i64>>;

fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Smith normal form: returns `(U, D, V)` with `U·A·V = D` diagonal,
/// `U, V` unimodular, and each diagonal entry dividing the next.
pub fn smith_normal_form(a: &[Vec<i64>]) -> (Mat, Mat, Mat) {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut d: Mat = a.to_vec();
    let mut u = identity(n);
    let mut v = identity(m);
    let row_op = |mat: &mut Mat, dst: usize, src: usize, k: i64| {
        let src_row = mat[src].clone();
        for (x, y) in mat[dst].iter_mut().zip(src_row) {
            *x -= k * y;
        }
    };
    let col_op = |mat: &mut Mat, dst: usize, src: usize, k: i64| {
        for row in mat.iter_mut() {
            row[dst] -= k * row[src];
        }
    };
    for t in 0..n.min(m) {
        loop {
            let pivot = (t..n)
                .flat_map(|i| (t..m).map(move |j| (i, j)))
                .filter(|&(i, j)| d[i][j] != 0)
                .min_by_key(|&(i, j)| (d[i][j].abs(), i, j));
            let Some((pi, pj)) = pivot else { break };
            d.swap(t, pi);
            u.swap(t, pi);
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let p = d[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let q = d[i][t].div_euclid(p);
                row_op(&mut d, i, t, q);
                row_op(&mut u, i, t, q);
                clean &= d[i][t] == 0;
            }
            for j in t + 1..m {
                let q = d[t][j].div_euclid(p);
                col_op(&mut d, j, t, q);
                col_op(&mut v, j, t, q);
                clean &= d[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..n).find(|&i| (t + 1..m).any(|j| d[i][j] % p != 0));
            match bad {
                Some(i) => {
                    row_op(&mut d, t, i, -1);
                    row_op(&mut u, t, i, -1);
                }
                None => break,
            }
        }
        if d[t][t] < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    (u, d, v)
}

fn inverse_2x2(m: &Mat) -> Mat {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    debug_assert!(det.abs() == 1);
    vec![
        vec![m[1][1] * det, -m[0][1] * det],
        vec![-m[1][0] * det, m[0][0] * det],
    ]
}

fn add(a: &RatVec, b: [i64; 2]) -> RatVec {
    [&a[0] + int(b[0]), &a[1] + int(b[1])]
}

fn diff(a: &RatVec, b: &RatVec) -> RatVec {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

/// Image of a plane translation `τ` on nodes and edges of a Γ-periodic tiling.
struct Translation {
    nodes: Vec<usize>,
    edges: Vec<usize>,
}

fn translate(t: &BraneTiling, tau: [i64; 2]) -> Result<Translation, DimerError> {
    let lat = &t.lattice;
    let mut node_map = Vec::with_capacity(t.nodes.len());
    let mut shift = Vec::with_capacity(t.nodes.len());
    for n in &t.nodes {
        let moved = add(&n.pos, tau);
        let hit = t.nodes.iter().enumerate().find_map(|(j, m)| {
            if m.color != n.color {
                return None;
            }
            lat.integral_coords(&diff(&moved, &m.pos)).map(|l| (j, l))
        });
        let (j, l) = hit.ok_or_else(|| {
            DimerError::NotInvariant(format!(
                "no node matches {} translated by ({}, {})",
                n.id, tau[0], tau[1]
            ))
        })?;
        node_map.push(j);
        shift.push(l);
    }
    let mut edge_map = Vec::with_capacity(t.edges.len());
    for e in &t.edges {
        let b = t.node_index(&e.black).expect("validated");
        let w = t.node_index(&e.white).expect("validated");
        let off = [
            e.offset[0] + shift[w][0] - shift[b][0],
            e.offset[1] + shift[w][1] - shift[b][1],
        ];
        let (nb, nw) = (&t.nodes[node_map[b]].id, &t.nodes[node_map[w]].id);
        let k = t
            .edges
            .iter()
            .position(|f| &f.black == nb && &f.white == nw && f.offset == off)
            .ok_or_else(|| {
                DimerError::NotInvariant(format!(
                    "no edge matches {} translated by ({}, {})",
                    e.id, tau[0], tau[1]
                ))
            })?;
        edge_map.push(k);
    }
    Ok(Translation {
        nodes: node_map,
        edges: edge_map,
    })
}

#[derive(Clone, Debug)]
pub struct RelatticeResult {
    pub tiling: BraneTiling,
    /// Action of `Γ′/Γ` on the dual quiver of the input tiling.
    pub action: GroupAction,
    pub index: u64,
}

/// Re-reads a Γ-periodic tiling on a coarser torus `R²/Γ′` with `Γ ⊆ Γ′`.
pub fn change_lattice(t: &BraneTiling, new: &TorusLattice) -> Result<RelatticeResult, DimerError> {
    let old = &t.lattice;
    let mut a: Mat = vec![vec![0; 2]; 2];
    for (j, g) in old.generators.iter().enumerate() {
        let c = new
            .integral_coords(&[int(g[0]), int(g[1])])
            .ok_or_else(|| {
                DimerError::NotASuperlattice(format!(
                    "generator ({}, {}) is not in the new lattice",
                    g[0], g[1]
                ))
            })?;
        a[0][j] = c[0];
        a[1][j] = c[1];
    }
    for g in new.generators {
        translate(t, g)?;
    }
    let index = old.index() / new.index();

    // Orbit representatives: the first node (in order) congruent mod Γ′.
    let mut rep = vec![usize::MAX; t.nodes.len()];
    for i in 0..t.nodes.len() {
        if rep[i] != usize::MAX {
            continue;
        }
        for j in i..t.nodes.len() {
            if rep[j] == usize::MAX
                && t.nodes[j].color == t.nodes[i].color
                && new
                    .integral_coords(&diff(&t.nodes[j].pos, &t.nodes[i].pos))
                    .is_some()
            {
                rep[j] = i;
            }
        }
    }
    let mut nodes: Vec<Node> = Vec::new();
    for (i, n) in t.nodes.iter().enumerate() {
        if rep[i] == i {
            let size = rep.iter().filter(|&&r| r == i).count() as u64;
            if size != index {
                return Err(DimerError::NotInvariant(format!(
                    "node orbit of {} has size {size}, expected {index}",
                    n.id
                )));
            }
            nodes.push(n.clone());
        }
    }
    let mut edges: Vec<Edge> = Vec::new();
    let mut seen: BTreeMap<(usize, usize, [i64; 2]), usize> = BTreeMap::new();
    for e in &t.edges {
        let b = t.node_index(&e.black).expect("validated");
        let w = t.node_index(&e.white).expect("validated");
        let (rb, rw) = (rep[b], rep[w]);
        let sigma_b = diff(&t.nodes[b].pos, &t.nodes[rb].pos);
        let end = t.white_endpoint(e);
        let moved = diff(&diff(&end, &sigma_b), &t.nodes[rw].pos);
        let off = new.integral_coords(&moved).ok_or_else(|| {
            DimerError::NotInvariant(format!("edge {} does not descend to the new torus", e.id))
        })?;
        let key = (rb, rw, off);
        if seen.contains_key(&key) {
            continue;
        }
        seen.insert(key, edges.len());
        edges.push(Edge {
            id: e.id.clone(),
            black: t.nodes[rb].id.clone(),
            white: t.nodes[rw].id.clone(),
            offset: off,
        });
    }
    if edges.len() as u64 * index != t.edges.len() as u64 {
        return Err(DimerError::NotInvariant(
            "edge orbits have unequal sizes".into(),
        ));
    }
    let tiling = BraneTiling::new(new.clone(), nodes, edges)?;

    // Γ′/Γ ≅ Z²/A·Z² = ⊕ Z/d_i, generated by the columns of U^{-1} with d_i > 1.
    let (u, d, _) = smith_normal_form(&a);
    let uinv = inverse_2x2(&u);
    let emb = Embedding::new(t)?;
    let mut orders = Vec::new();
    let mut generators = Vec::new();
    for i in 0..2 {
        let di = d[i][i];
        if di == 1 {
            continue;
        }
        let tau = new.to_plane([uinv[0][i], uinv[1][i]]);
        let tr = translate(t, tau)?;
        let mut vertices = BTreeMap::new();
        let mut arrows = BTreeMap::new();
        for (k, e) in t.edges.iter().enumerate() {
            let img = tr.edges[k];
            arrows.insert(e.id.clone(), t.edges[img].id.clone());
            for side in 0..2 {
                let from = Embedding::face_vertex(emb.dart_face[2 * k + side]);
                let to = Embedding::face_vertex(emb.dart_face[2 * img + side]);
                if let Some(prev) = vertices.insert(from, to) {
                    if prev != to {
                        return Err(DimerError::NotInvariant(
                            "translation does not act on faces".into(),
                        ));
                    }
                }
            }
        }
        debug_assert!(tr.nodes.len() == t.nodes.len());
        orders.push(di as u32);
        generators.push(Generator { vertices, arrows });
    }
    Ok(RelatticeResult {
        tiling,
        action: GroupAction { orders, generators },
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tiling::square_tiling;
    use super::*;

    fn check_snf(a: Mat) {
        let (u, d, v) = smith_normal_form(&a);
        let mul = |x: &Mat, y: &Mat| -> Mat {
            (0..x.len())
                .map(|i| {
                    (0..y[0].len())
                        .map(|j| (0..y.len()).map(|k| x[i][k] * y[k][j]).sum())
                        .collect()
                })
                .collect()
        };
        assert_eq!(mul(&mul(&u, &a), &v), d);
        assert_eq!(d[0][1], 0);
        assert_eq!(d[1][0], 0);
        if d[0][0] != 0 {
            assert_eq!(d[1][1] % d[0][0], 0);
        }
    }

    #[test]
    fn smith_forms() {
        check_snf(vec![vec![2, 4], vec![-2, 4]]);
        check_snf(vec![vec![2, 0], vec![0, 3]]);
        check_snf(vec![vec![6, 4], vec![4, 2]]);
        check_snf(vec![vec![1, 0], vec![0, 1]]);
        let (_, d, _) = smith_normal_form(&[vec![2, 0], vec![0, 3]]);
        assert_eq!((d[0][0], d[1][1]), (1, 6));
    }

    #[test]
    fn identity_change_is_trivial() {
        let l = TorusLattice::new([2, 0], [0, 2]).unwrap();
        let t = square_tiling(&l).unwrap();
        let r = change_lattice(&t, &l).unwrap();
        assert_eq!(r.index, 1);
        assert!(r.action.orders.is_empty());
        assert_eq!(r.tiling.nodes, t.nodes);
        assert_eq!(r.tiling.edges, t.edges);
    }

    #[test]
    fn non_superlattice_is_rejected() {
        let t = square_tiling(&TorusLattice::new([2, 0], [0, 2]).unwrap()).unwrap();
        let finer = TorusLattice::new([2, -2], [2, 2]).unwrap();
        assert!(matches!(
            change_lattice(&t, &finer),
            Err(DimerError::NotASuperlattice(_))
        ));
    }

    #[test]
    fn odd_translation_breaks_invariance() {
        let t = square_tiling(&TorusLattice::new([2, 0], [0, 2]).unwrap()).unwrap();
        let coarse = TorusLattice::new([1, 0], [0, 2]).unwrap();
        assert!(matches!(
            change_lattice(&t, &coarse),
            Err(DimerError::NotInvariant(_))
        ));
    }

    #[test]
    fn halving_the_torus_halves_the_tiling() {
        let t = square_tiling(&TorusLattice::new([2, 0], [0, 2]).unwrap()).unwrap();
        let r = change_lattice(&t, &TorusLattice::new([1, -1], [1, 1]).unwrap()).unwrap();
        assert_eq!(r.index, 2);
        assert_eq!(r.tiling.nodes.len(), 2);
        assert_eq!(r.tiling.edges.len(), 4);
        assert_eq!(r.action.orders, vec![2]);
    }
}
