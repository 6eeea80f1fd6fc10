use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::DimerError;
use crate::quiver::{int, rational};

pub type RatVec = [BigRational; 2];

/// `Γ = Z·ω_1 ⊕ Z·ω_2`, stored as its two generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusLattice {
    pub generators: [[i64; 2]; 2],
}

impl TorusLattice {
    pub fn new(w1: [i64; 2], w2: [i64; 2]) -> Result<Self, DimerError> {
        let l = TorusLattice {
            generators: [w1, w2],
        };
        if l.det() == 0 {
            return Err(DimerError::InvalidTiling(
                "lattice generators are dependent".into(),
            ));
        }
        Ok(l)
    }

    pub fn det(&self) -> i64 {
        let [a, b] = self.generators;
        a[0] * b[1] - a[1] * b[0]
    }

    /// Index of `Γ` in `Z²`.
    pub fn index(&self) -> u64 {
        self.det().unsigned_abs()
    }

    /// Plane vector `k_1 ω_1 + k_2 ω_2`.
    pub fn to_plane(&self, k: [i64; 2]) -> [i64; 2] {
        let [a, b] = self.generators;
        [k[0] * a[0] + k[1] * b[0], k[0] * a[1] + k[1] * b[1]]
    }

    /// Lattice coordinates of a plane vector.
    pub fn coords(&self, v: &RatVec) -> RatVec {
        let [a, b] = self.generators;
        let det = int(self.det());
        let x = (&v[0] * int(b[1]) - &v[1] * int(b[0])) / &det;
        let y = (&v[1] * int(a[0]) - &v[0] * int(a[1])) / &det;
        [x, y]
    }

    /// Lattice coordinates when they are integral.
    pub fn integral_coords(&self, v: &RatVec) -> Option<[i64; 2]> {
        let [x, y] = self.coords(v);
        if x.is_integer() && y.is_integer() {
            Some([x.to_integer().to_i64()?, y.to_integer().to_i64()?])
        } else {
            None
        }
    }

    pub fn contains(&self, v: [i64; 2]) -> bool {
        self.integral_coords(&[int(v[0]), int(v[1])]).is_some()
    }

    /// Representative of `v + Γ` in the half-open parallelogram spanned by the generators.
    pub fn reduce(&self, v: &RatVec) -> RatVec {
        let [x, y] = self.coords(v);
        let k = [x.floor().to_integer(), y.floor().to_integer()];
        let [a, b] = self.generators;
        let shift = |i: usize| {
            BigRational::from_integer(&k[0] * BigInt::from(a[i]) + &k[1] * BigInt::from(b[i]))
        };
        [&v[0] - shift(0), &v[1] - shift(1)]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn name(self) -> &'static str {
        match self {
            Color::Black => "black",
            Color::White => "white",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub color: Color,
    pub pos: RatVec,
}

/// Segment from the black node at its stored position to the white node
/// translated by `offset` (lattice coordinates).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub black: String,
    pub white: String,
    pub offset: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraneTiling {
    pub lattice: TorusLattice,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    node_index: BTreeMap<String, usize>,
}

impl BraneTiling {
    /// Checks ids and bipartiteness. Face structure is checked by [`super::Embedding`].
    pub fn new(
        lattice: TorusLattice,
        nodes: Vec<Node>,
        edges: Vec<Edge>,
    ) -> Result<Self, DimerError> {
        if lattice.det() == 0 {
            return Err(DimerError::InvalidTiling(
                "lattice generators are dependent".into(),
            ));
        }
        let mut node_index = BTreeMap::new();
        for (i, n) in nodes.iter().enumerate() {
            if node_index.insert(n.id.clone(), i).is_some() {
                return Err(DimerError::InvalidTiling(format!(
                    "duplicate node id {}",
                    n.id
                )));
            }
        }
        let mut seen = BTreeSet::new();
        for e in &edges {
            if !seen.insert(e.id.as_str()) {
                return Err(DimerError::InvalidTiling(format!(
                    "duplicate edge id {}",
                    e.id
                )));
            }
            for (end, want) in [(&e.black, Color::Black), (&e.white, Color::White)] {
                match node_index.get(end) {
                    None => {
                        return Err(DimerError::InvalidTiling(format!(
                            "edge {} ends at unknown node {end}",
                            e.id
                        )))
                    }
                    Some(&i) if nodes[i].color != want => {
                        return Err(DimerError::InvalidTiling(format!(
                            "edge {} expects {end} to be {}",
                            e.id,
                            want.name()
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(BraneTiling {
            lattice,
            nodes,
            edges,
            node_index,
        })
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.node_index.get(id).copied()
    }

    pub fn node(&self, id: &str) -> &Node {
        &self.nodes[self.node_index[id]]
    }

    pub fn blacks(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].color == Color::Black)
            .collect()
    }

    pub fn whites(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].color == Color::White)
            .collect()
    }

    /// Plane position of the white end of an edge.
    pub fn white_endpoint(&self, e: &Edge) -> RatVec {
        let p = &self.node(&e.white).pos;
        let s = self.lattice.to_plane(e.offset);
        [&p[0] + int(s[0]), &p[1] + int(s[1])]
    }

    /// Displacement from the black end to the white end.
    pub fn edge_vector(&self, e: &Edge) -> RatVec {
        let w = self.white_endpoint(e);
        let b = &self.node(&e.black).pos;
        [&w[0] - &b[0], &w[1] - &b[1]]
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }
}

fn point(x: i64, y: i64) -> RatVec {
    [int(x), int(y)]
}

/// Square-lattice tiling: nodes at integer points, black where `x + y` is
/// even, each joined to its four neighbours. Every lattice vector must have
/// even coordinate sum.
pub fn square_tiling(lattice: &TorusLattice) -> Result<BraneTiling, DimerError> {
    for g in lattice.generators {
        if (g[0] + g[1]).rem_euclid(2) != 0 {
            return Err(DimerError::InvalidTiling(format!(
                "generator ({}, {}) does not preserve the checkerboard colouring",
                g[0], g[1]
            )));
        }
    }
    let [a, b] = lattice.generators;
    let xs = [0, a[0], b[0], a[0] + b[0]];
    let ys = [0, a[1], b[1], a[1] + b[1]];
    let mut reps: BTreeSet<(i64, i64)> = BTreeSet::new();
    for x in *xs.iter().min().unwrap()..=*xs.iter().max().unwrap() {
        for y in *ys.iter().min().unwrap()..=*ys.iter().max().unwrap() {
            let r = lattice.reduce(&point(x, y));
            reps.insert((
                r[0].to_integer().to_i64().unwrap(),
                r[1].to_integer().to_i64().unwrap(),
            ));
        }
    }
    debug_assert_eq!(reps.len() as u64, lattice.index());
    let mut nodes = Vec::new();
    let mut id_of = BTreeMap::new();
    let (mut nb, mut nw) = (0, 0);
    for &(x, y) in &reps {
        let color = if (x + y).rem_euclid(2) == 0 {
            Color::Black
        } else {
            Color::White
        };
        let id = match color {
            Color::Black => {
                nb += 1;
                format!("b{nb}")
            }
            Color::White => {
                nw += 1;
                format!("w{nw}")
            }
        };
        id_of.insert((x, y), id.clone());
        nodes.push(Node {
            id,
            color,
            pos: point(x, y),
        });
    }
    let mut edges = Vec::new();
    for n in nodes.iter().filter(|n| n.color == Color::Black) {
        let (x, y) = (
            n.pos[0].to_integer().to_i64().unwrap(),
            n.pos[1].to_integer().to_i64().unwrap(),
        );
        for (dx, dy) in [(1, 0), (0, 1), (-1, 0), (0, -1)] {
            let q = point(x + dx, y + dy);
            let r = lattice.reduce(&q);
            let key = (
                r[0].to_integer().to_i64().unwrap(),
                r[1].to_integer().to_i64().unwrap(),
            );
            let offset = lattice
                .integral_coords(&[&q[0] - &r[0], &q[1] - &r[1]])
                .expect("reduced by a lattice vector");
            edges.push(Edge {
                id: format!("e{}", edges.len() + 1),
                black: n.id.clone(),
                white: id_of[&key].clone(),
                offset,
            });
        }
    }
    BraneTiling::new(lattice.clone(), nodes, edges)
}

/// Hexagonal-type tiling whose dual is the dP3 quiver, with vertical
/// coordinates rescaled by `1/√3` so all positions are rational.
/// Edge ids are the arrow names of the catalog quiver.
pub fn hexagonal_dp3() -> BraneTiling {
    let lattice = TorusLattice::new([2, 0], [1, 1]).expect("nondegenerate");
    let q = |n: i64, d: i64| rational(n, d);
    let nodes = vec![
        Node {
            id: "B6".into(),
            color: Color::Black,
            pos: [q(0, 1), q(0, 1)],
        },
        Node {
            id: "B3a".into(),
            color: Color::Black,
            pos: [q(1, 1), q(-1, 3)],
        },
        Node {
            id: "B3b".into(),
            color: Color::Black,
            pos: [q(1, 1), q(1, 3)],
        },
        Node {
            id: "W1".into(),
            color: Color::White,
            pos: [q(1, 2), q(1, 2)],
        },
        Node {
            id: "W2".into(),
            color: Color::White,
            pos: [q(3, 2), q(1, 2)],
        },
        Node {
            id: "W3".into(),
            color: Color::White,
            pos: [q(1, 1), q(0, 1)],
        },
    ];
    // (arrow, black, white, white endpoint in the plane)
    let raw: [(&str, &str, &str, (i64, i64), (i64, i64)); 12] = [
        ("X12", "B6", "W3", (1, 1), (0, 1)),
        ("X23", "B6", "W1", (1, 2), (1, 2)),
        ("X34", "B6", "W2", (-1, 2), (1, 2)),
        ("X45", "B6", "W3", (-1, 1), (0, 1)),
        ("X56", "B6", "W1", (-1, 2), (-1, 2)),
        ("X61", "B6", "W2", (1, 2), (-1, 2)),
        ("X13", "B3a", "W2", (1, 2), (-1, 2)),
        ("X35", "B3a", "W1", (3, 2), (-1, 2)),
        ("X51", "B3a", "W3", (1, 1), (0, 1)),
        ("X24", "B3b", "W3", (1, 1), (0, 1)),
        ("X46", "B3b", "W2", (3, 2), (1, 2)),
        ("X62", "B3b", "W1", (1, 2), (1, 2)),
    ];
    let pos: BTreeMap<&str, RatVec> = nodes
        .iter()
        .map(|n| (n.id.as_str(), n.pos.clone()))
        .collect();
    let edges = raw
        .iter()
        .map(|&(id, b, w, (xn, xd), (yn, yd))| {
            let end = [q(xn, xd), q(yn, yd)];
            let p = &pos[w];
            let offset = lattice
                .integral_coords(&[&end[0] - &p[0], &end[1] - &p[1]])
                .expect("endpoint is a lattice translate");
            Edge {
                id: id.into(),
                black: b.into(),
                white: w.into(),
                offset,
            }
        })
        .collect();
    BraneTiling::new(lattice, nodes, edges).expect("well-formed")
}
