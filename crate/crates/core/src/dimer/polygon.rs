use std::collections::{BTreeMap, BTreeSet};

pub type Point = [i64; 2];

/// Convex lattice polygon with a multiplicity on each support point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolygon {
    /// Hull vertices, counterclockwise from the lexicographically least.
    pub vertices: Vec<Point>,
    pub multiplicities: BTreeMap<Point, u64>,
}

impl LatticePolygon {
    /// Builds the hull of the support and translates the least support point to the origin.
    pub fn from_multiplicities(points: BTreeMap<Point, u64>) -> Self {
        let points: BTreeMap<Point, u64> = points.into_iter().filter(|(_, m)| *m > 0).collect();
        let Some((&origin, _)) = points.iter().next() else {
            return LatticePolygon {
                vertices: Vec::new(),
                multiplicities: BTreeMap::new(),
            };
        };
        let shifted: BTreeMap<Point, u64> = points
            .into_iter()
            .map(|(p, m)| ([p[0] - origin[0], p[1] - origin[1]], m))
            .collect();
        let support: Vec<Point> = shifted.keys().copied().collect();
        LatticePolygon {
            vertices: convex_hull(&support),
            multiplicities: shifted,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Lattice points strictly inside the hull.
    pub fn interior_points(&self) -> Vec<Point> {
        if self.vertices.len() < 3 {
            return Vec::new();
        }
        let (x0, x1) = minmax(self.vertices.iter().map(|p| p[0]));
        let (y0, y1) = minmax(self.vertices.iter().map(|p| p[1]));
        let n = self.vertices.len();
        let mut out = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                let inside = (0..n).all(|i| {
                    let a = self.vertices[i];
                    let b = self.vertices[(i + 1) % n];
                    cross3(a, b, [x, y]) > 0
                });
                if inside {
                    out.push([x, y]);
                }
            }
        }
        out
    }

    /// Twice the area of the hull.
    pub fn double_area(&self) -> i64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                a[0] * b[1] - a[1] * b[0]
            })
            .sum()
    }

    pub fn multiplicity(&self, p: Point) -> u64 {
        self.multiplicities.get(&p).copied().unwrap_or(0)
    }
}

fn minmax(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

fn cross3(o: Point, a: Point, b: Point) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain. Collinear boundary points are dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if pts.len() <= 1 {
        return pts;
    }
    pts.sort();
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross3(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross3(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub type Matrix2 = [[i64; 2]; 2];

fn apply(a: &Matrix2, p: Point) -> Point {
    [
        a[0][0] * p[0] + a[0][1] * p[1],
        a[1][0] * p[0] + a[1][1] * p[1],
    ]
}

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `(g, s, t)` with `a s + b t = g = gcd(a, b)`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

/// Unimodular matrix with first column `d` (primitive).
fn complete_basis(d: Point) -> Matrix2 {
    let (_, s, t) = ext_gcd(d[0], d[1]);
    [[d[0], -t], [d[1], s]]
}

fn inverse_unimodular(m: &Matrix2) -> Matrix2 {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [
        [m[1][1] * det, -m[0][1] * det],
        [-m[1][0] * det, m[0][0] * det],
    ]
}

fn mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn maps_onto(a: &Matrix2, t: Point, from: &BTreeSet<Point>, to: &BTreeSet<Point>) -> bool {
    from.iter().all(|&p| {
        let q = apply(a, p);
        to.contains(&[q[0] + t[0], q[1] + t[1]])
    })
}

/// Finds `A ∈ GL(2,Z)` and `t ∈ Z²` with `A·P + t = Q` as point sets.
///
/// When `P` spans the plane, `A` is fixed by the images of two independent
/// difference vectors, so trying every ordered triple of `Q` is exhaustive.
pub fn unimodular_equivalent(p: &[Point], q: &[Point]) -> Option<(Matrix2, Point)> {
    let ps: BTreeSet<Point> = p.iter().copied().collect();
    let qs: BTreeSet<Point> = q.iter().copied().collect();
    if ps.len() != qs.len() {
        return None;
    }
    let pv: Vec<Point> = ps.iter().copied().collect();
    let qv: Vec<Point> = qs.iter().copied().collect();
    if pv.is_empty() {
        return Some(([[1, 0], [0, 1]], [0, 0]));
    }
    let p0 = pv[0];
    let independent = pv.iter().enumerate().skip(1).find_map(|(i, &a)| {
        pv.iter()
            .skip(i + 1)
            .find(|&&b| cross3(p0, a, b) != 0)
            .map(|&b| (a, b))
    });
    match independent {
        Some((p1, p2)) => {
            let u = sub(p1, p0);
            let v = sub(p2, p0);
            let det = u[0] * v[1] - u[1] * v[0];
            for &q0 in &qv {
                for &q1 in &qv {
                    for &q2 in &qv {
                        let x = sub(q1, q0);
                        let y = sub(q2, q0);
                        // A = [x y]·[u v]^{-1}
                        let num = [
                            [x[0] * v[1] - y[0] * u[1], -x[0] * v[0] + y[0] * u[0]],
                            [x[1] * v[1] - y[1] * u[1], -x[1] * v[0] + y[1] * u[0]],
                        ];
                        if num.iter().flatten().any(|&c| c % det != 0) {
                            continue;
                        }
                        let a = [
                            [num[0][0] / det, num[0][1] / det],
                            [num[1][0] / det, num[1][1] / det],
                        ];
                        if (a[0][0] * a[1][1] - a[0][1] * a[1][0]).abs() != 1 {
                            continue;
                        }
                        let ap0 = apply(&a, p0);
                        let t = sub(q0, ap0);
                        if maps_onto(&a, t, &ps, &qs) {
                            return Some((a, t));
                        }
                    }
                }
            }
            None
        }
        None => {
            // Collinear (or a single point): compare lattice parameters along the line.
            let params = |v: &[Point]| -> Option<(Point, Vec<i64>)> {
                let base = v[0];
                let span = v.iter().map(|&x| sub(x, base)).find(|d| *d != [0, 0]);
                let Some(d) = span else {
                    return Some(([1, 0], vec![0]));
                };
                let g = gcd(d[0], d[1]);
                let prim = [d[0] / g, d[1] / g];
                let ks: Vec<i64> = v
                    .iter()
                    .map(|&x| {
                        let w = sub(x, base);
                        if prim[0] != 0 {
                            w[0] / prim[0]
                        } else {
                            w[1] / prim[1]
                        }
                    })
                    .collect();
                let lo = *ks.iter().min()?;
                let mut ks: Vec<i64> = ks.into_iter().map(|k| k - lo).collect();
                ks.sort();
                Some((prim, ks))
            };
            let (dp, kp) = params(&pv)?;
            let (dq, kq) = params(&qv)?;
            let hi = *kq.last()?;
            let mut reversed: Vec<i64> = kq.iter().map(|k| hi - k).collect();
            reversed.sort();
            for (dir, ok) in [(dq, kp == kq), ([-dq[0], -dq[1]], kp == reversed)] {
                if !ok {
                    continue;
                }
                let a = mul(
                    &complete_basis(dir),
                    &inverse_unimodular(&complete_basis(dp)),
                );
                for &q0 in &qv {
                    let t = sub(q0, apply(&a, p0));
                    if maps_onto(&a, t, &ps, &qs) {
                        return Some((a, t));
                    }
                }
            }
            None
        }
    }
}
