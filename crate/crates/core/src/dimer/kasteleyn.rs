use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::faces::Embedding;
use super::polygon::{LatticePolygon, Point};
use super::tiling::BraneTiling;
use super::DimerError;

/// Laurent polynomial in `x, y` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly(pub BTreeMap<Point, BigInt>);

impl LaurentPoly {
    pub fn monomial(p: Point, c: BigInt) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(p, c);
        }
        LaurentPoly(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_assign_scaled(&mut self, other: &LaurentPoly, sign: i32) {
        for (p, c) in &other.0 {
            let entry = self.0.entry(*p).or_default();
            if sign >= 0 {
                *entry += c;
            } else {
                *entry -= c;
            }
            if entry.is_zero() {
                self.0.remove(p);
            }
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (p, a) in &self.0 {
            for (q, b) in &other.0 {
                out.add_assign_scaled(&LaurentPoly::monomial([p[0] + q[0], p[1] + q[1]], a * b), 1);
            }
        }
        out
    }
}

/// Edge signs in `{+1, −1}` such that every face with `2k` boundary edges
/// has sign product `(−1)^{k+1}`, solved over GF(2). Free variables are `+1`.
pub fn kasteleyn_signs(t: &BraneTiling, emb: &Embedding) -> Result<Vec<i8>, DimerError> {
    let ne = t.edges.len();
    let words = ne.div_ceil(64) + 1;
    let rhs_bit = ne;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for boundary in emb.face_boundaries() {
        let mut row = vec![0u64; words];
        for &e in &boundary {
            row[e / 64] ^= 1 << (e % 64);
        }
        let k = boundary.len() / 2;
        if (k + 1) % 2 == 1 {
            row[rhs_bit / 64] ^= 1 << (rhs_bit % 64);
        }
        rows.push(row);
    }
    let bit = |r: &[u64], i: usize| (r[i / 64] >> (i % 64)) & 1 == 1;
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ne {
        let Some(p) = (rank..rows.len()).find(|&r| bit(&rows[r], col)) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && bit(&rows[r], col) {
                let pivot = rows[rank].clone();
                for (a, b) in rows[r].iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| bit(r, rhs_bit)) {
        return Err(DimerError::NoKasteleynSigns);
    }
    let mut signs = vec![1i8; ne];
    for (r, &col) in pivots.iter().enumerate() {
        if bit(&rows[r], rhs_bit) {
            signs[col] = -1;
        }
    }
    Ok(signs)
}

/// Determinant of a square matrix of Laurent polynomials by dynamic
/// programming over the set of used columns.
fn determinant(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    let mut dp: Vec<LaurentPoly> = vec![LaurentPoly::default(); 1 << n];
    dp[0] = LaurentPoly::monomial([0, 0], BigInt::from(1));
    for mask in 0usize..(1 << n) {
        let row = mask.count_ones() as usize;
        if row == n || dp[mask].is_zero() {
            continue;
        }
        let cur = dp[mask].clone();
        for (col, entry) in m[row].iter().enumerate() {
            if mask & (1 << col) != 0 || entry.is_zero() {
                continue;
            }
            let inversions = (mask >> (col + 1)).count_ones();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            let term = cur.mul(entry);
            dp[mask | (1 << col)].add_assign_scaled(&term, sign);
        }
    }
    dp[(1 << n) - 1].clone()
}

/// Kasteleyn matrix: rows are black nodes, columns white nodes, each edge
/// contributing `±x^u y^v` for its offset `(u, v)`.
pub fn kasteleyn_matrix(t: &BraneTiling, signs: &[i8]) -> Vec<Vec<LaurentPoly>> {
    let blacks = t.blacks();
    let whites = t.whites();
    let row: BTreeMap<usize, usize> = blacks.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let col: BTreeMap<usize, usize> = whites.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let mut m = vec![vec![LaurentPoly::default(); whites.len()]; blacks.len()];
    for (k, e) in t.edges.iter().enumerate() {
        let i = row[&t.node_index(&e.black).expect("validated")];
        let j = col[&t.node_index(&e.white).expect("validated")];
        m[i][j].add_assign_scaled(&LaurentPoly::monomial(e.offset, BigInt::from(signs[k])), 1);
    }
    m
}

/// Newton polygon of `det K` with `|coefficient|` multiplicities.
pub fn kasteleyn_polygon(t: &BraneTiling) -> Result<LatticePolygon, DimerError> {
    let (nb, nw) = (t.blacks().len(), t.whites().len());
    if nb != nw {
        return Err(DimerError::UnbalancedColors {
            black: nb,
            white: nw,
        });
    }
    if nb > 20 {
        return Err(DimerError::InvalidTiling(format!(
            "{nb} black nodes exceeds the determinant bound of 20"
        )));
    }
    let emb = Embedding::new(t)?;
    let signs = kasteleyn_signs(t, &emb)?;
    let det = determinant(&kasteleyn_matrix(t, &signs));
    let points = det
        .0
        .iter()
        .map(|(p, c)| (*p, c.abs().to_u64().unwrap_or(u64::MAX)))
        .collect();
    Ok(LatticePolygon::from_multiplicities(points))
}

#[cfg(test)]
mod tests {
    use super::super::tiling::{square_tiling, Color, Edge, Node, TorusLattice};
    use super::*;
    use crate::quiver::{int, rational};

    #[test]
    fn conifold_determinant_is_a_unit_square() {
        let t = square_tiling(&TorusLattice::new([1, -1], [1, 1]).unwrap()).unwrap();
        let poly = kasteleyn_polygon(&t).unwrap();
        assert_eq!(poly.vertices.len(), 4);
        assert_eq!(poly.double_area(), 2);
        assert!(poly.multiplicities.values().all(|&m| m == 1));
    }

    #[test]
    fn two_parallel_edges_give_a_segment() {
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
                pos: [rational(1, 2), rational(1, 3)],
            },
        ];
        let edges = vec![
            Edge {
                id: "e0".into(),
                black: "b".into(),
                white: "w".into(),
                offset: [0, 0],
            },
            Edge {
                id: "e1".into(),
                black: "b".into(),
                white: "w".into(),
                offset: [1, 0],
            },
        ];
        let t = BraneTiling::new(l, nodes, edges).unwrap();
        let poly = kasteleyn_polygon(&t).unwrap();
        assert_eq!(poly.vertices, vec![[0, 0], [1, 0]]);
        assert_eq!(
            poly.multiplicities,
            BTreeMap::from([([0, 0], 1), ([1, 0], 1)])
        );
    }

    #[test]
    fn determinant_of_permutation_matrix_has_its_sign() {
        let one = |c: i64| LaurentPoly::monomial([0, 0], BigInt::from(c));
        let z = LaurentPoly::default;
        let m = vec![
            vec![z(), one(1), z()],
            vec![one(1), z(), z()],
            vec![z(), z(), one(1)],
        ];
        assert_eq!(determinant(&m), one(-1));
    }
}
