use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::tiling::{BraneTiling, Color, RatVec};
use super::DimerError;
use crate::quiver::{int, Arrow, CyclicWord, Potential, Quiver, VertexId};

/// Rotation system and face structure of a tiling on the torus.
///
/// Dart `2e` runs black→white along edge `e`, dart `2e+1` runs back.
/// Every dart is assigned the face on its left.
#[derive(Clone, Debug)]
pub struct Embedding {
    /// Edge indices around each node in counterclockwise order.
    pub rotation: Vec<Vec<usize>>,
    /// Face (0-based) on the left of each dart.
    pub dart_face: Vec<usize>,
    pub face_count: usize,
}

fn half(v: &RatVec) -> u8 {
    if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
        0
    } else {
        1
    }
}

fn cross(a: &RatVec, b: &RatVec) -> BigRational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Orders vectors by angle in `[0, 2π)`; equal angles compare `Equal`.
fn angle_cmp(a: &RatVec, b: &RatVec) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

impl Embedding {
    pub fn new(t: &BraneTiling) -> Result<Self, DimerError> {
        let n = t.nodes.len();
        let mut ends: Vec<Vec<(usize, RatVec)>> = vec![Vec::new(); n];
        for (k, e) in t.edges.iter().enumerate() {
            let v = t.edge_vector(e);
            if v[0].is_zero() && v[1].is_zero() {
                return Err(DimerError::MalformedFaceStructure(format!(
                    "edge {} has zero length",
                    e.id
                )));
            }
            let neg = [-v[0].clone(), -v[1].clone()];
            ends[t.node_index(&e.black).expect("validated")].push((k, v));
            ends[t.node_index(&e.white).expect("validated")].push((k, neg));
        }
        let mut rotation = Vec::with_capacity(n);
        for (i, mut list) in ends.into_iter().enumerate() {
            if list.len() < 2 {
                return Err(DimerError::MalformedFaceStructure(format!(
                    "node {} has degree {}",
                    t.nodes[i].id,
                    list.len()
                )));
            }
            list.sort_by(|a, b| angle_cmp(&a.1, &b.1));
            if list
                .windows(2)
                .any(|w| angle_cmp(&w[0].1, &w[1].1) == Ordering::Equal)
            {
                return Err(DimerError::MalformedFaceStructure(format!(
                    "coincident edge directions at node {}",
                    t.nodes[i].id
                )));
            }
            rotation.push(list.into_iter().map(|(k, _)| k).collect::<Vec<_>>());
        }

        let end_node = |dart: usize| {
            let e = &t.edges[dart / 2];
            let id = if dart.is_multiple_of(2) {
                &e.white
            } else {
                &e.black
            };
            t.node_index(id).expect("validated")
        };
        // Next dart with the same left face: at the head, turn to the edge
        // immediately clockwise from the one we arrived on.
        let next = |dart: usize| {
            let v = end_node(dart);
            let rot = &rotation[v];
            let p = rot
                .iter()
                .position(|&k| k == dart / 2)
                .expect("edge at its end");
            let k = rot[(p + rot.len() - 1) % rot.len()];
            if t.nodes[v].color == Color::Black {
                2 * k
            } else {
                2 * k + 1
            }
        };

        let darts = 2 * t.edges.len();
        let mut dart_face = vec![usize::MAX; darts];
        let mut face_count = 0;
        // Faces are numbered by first appearance scanning edges in order,
        // right side before left side.
        for start in (0..t.edges.len()).flat_map(|k| [2 * k + 1, 2 * k]) {
            if dart_face[start] != usize::MAX {
                continue;
            }
            let mut d = start;
            loop {
                dart_face[d] = face_count;
                d = next(d);
                if d == start {
                    break;
                }
                if dart_face[d] != usize::MAX {
                    return Err(DimerError::MalformedFaceStructure(
                        "face tracing did not close".into(),
                    ));
                }
            }
            face_count += 1;
        }

        Ok(Embedding {
            rotation,
            dart_face,
            face_count,
        })
    }

    /// Checks that the faces cellulate a torus and the graph is connected.
    pub fn check_torus(&self, t: &BraneTiling) -> Result<(), DimerError> {
        let euler = t.nodes.len() as i64 - t.edges.len() as i64 + self.face_count as i64;
        if euler != 0 {
            return Err(DimerError::MalformedFaceStructure(format!(
                "V - E + F = {euler}; the embedding is not a torus cellulation"
            )));
        }
        let n = t.nodes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for e in &t.edges {
            let a = find(&mut parent, t.node_index(&e.black).unwrap());
            let b = find(&mut parent, t.node_index(&e.white).unwrap());
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        if (0..n).any(|i| find(&mut parent, i) != root) {
            return Err(DimerError::MalformedFaceStructure(
                "tiling graph is disconnected".into(),
            ));
        }
        Ok(())
    }

    /// Face to the left of the black→white direction of edge `e`.
    pub fn left_face(&self, e: usize) -> usize {
        self.dart_face[2 * e]
    }

    /// Face to the right of the black→white direction of edge `e`.
    pub fn right_face(&self, e: usize) -> usize {
        self.dart_face[2 * e + 1]
    }

    /// Edges on the boundary of each face, with multiplicity.
    pub fn face_boundaries(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.face_count];
        for (d, &f) in self.dart_face.iter().enumerate() {
            out[f].push(d / 2);
        }
        out
    }

    /// Quiver vertex id of a face.
    pub fn face_vertex(face: usize) -> VertexId {
        face as VertexId + 1
    }
}

/// The quiver dual to the tiling (faces become vertices numbered from 1,
/// edges become arrows with the edge ids) and its potential: black node
/// cycles with `+1`, white node cycles with `−1`.
pub fn dual_quiver(t: &BraneTiling) -> Result<(Quiver, Potential), DimerError> {
    let emb = Embedding::new(t)?;
    emb.check_torus(t)?;
    let vertices: Vec<VertexId> = (0..emb.face_count).map(Embedding::face_vertex).collect();
    let arrows: Vec<Arrow> = t
        .edges
        .iter()
        .enumerate()
        .map(|(k, e)| {
            Arrow::new(
                e.id.clone(),
                Embedding::face_vertex(emb.right_face(k)),
                Embedding::face_vertex(emb.left_face(k)),
            )
        })
        .collect();
    let q = Quiver::new(vertices, arrows)?;
    let mut w = Potential::new();
    for (i, node) in t.nodes.iter().enumerate() {
        let mut ids: Vec<String> = emb.rotation[i]
            .iter()
            .map(|&k| t.edges[k].id.clone())
            .collect();
        let sign = match node.color {
            Color::Black => 1,
            Color::White => {
                ids.reverse();
                -1
            }
        };
        w.add_term(CyclicWord::new(ids).expect("degree at least 2"), int(sign));
    }
    crate::quiver::validate(&q, &w).map_err(|e| {
        DimerError::MalformedFaceStructure(format!("node cycle is not composable: {e}"))
    })?;
    Ok((q, w))
}
