//! Quivers, cyclic words, potentials and the skew Euler form.
//!
//! A [`Quiver`] is a finite directed multigraph with integer vertex ids and
//! string arrow ids. A [`Potential`] is a finite rational combination of
//! cyclic words in the arrows, always stored in canonical form: every word is
//! kept as its lexicographically least rotation, rotations are merged and
//! zero coefficients are dropped.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type VertexId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("arrow {arrow} has endpoint {vertex}, which is not a vertex")]
    DanglingArrow { arrow: String, vertex: VertexId },
    #[error("term {0} is not a cyclically composable word")]
    NonCyclicTerm(String),
    #[error("potential mentions unknown arrow {0}")]
    UnknownArrow(String),
    #[error("dimension vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("isomorphism search exceeded its budget ({0})")]
    SearchBudgetExceeded(String),
}

impl QuiverError {
    pub fn code(&self) -> &'static str {
        match self {
            QuiverError::DuplicateId(_) => "DuplicateId",
            QuiverError::DanglingArrow { .. } => "DanglingArrow",
            QuiverError::NonCyclicTerm(_) => "NonCyclicTerm",
            QuiverError::UnknownArrow(_) => "UnknownArrow",
            QuiverError::DimensionMismatch { .. } => "DimensionMismatch",
            QuiverError::SearchBudgetExceeded(_) => "SearchBudgetExceeded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub id: String,
    pub src: VertexId,
    pub tgt: VertexId,
}

impl Arrow {
    pub fn new(id: impl Into<String>, src: VertexId, tgt: VertexId) -> Self {
        Arrow {
            id: id.into(),
            src,
            tgt,
        }
    }
}

/// A finite quiver. Vertex order is the order given at construction and is
/// the index order used by [`SkewForm`] and [`DimensionVector`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<VertexId>,
    arrows: Vec<Arrow>,
    vertex_index: BTreeMap<VertexId, usize>,
    arrow_index: BTreeMap<String, usize>,
}

impl Quiver {
    pub fn new(vertices: Vec<VertexId>, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        let mut vertex_index = BTreeMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            if vertex_index.insert(v, i).is_some() {
                return Err(QuiverError::DuplicateId(v.to_string()));
            }
        }
        let mut arrow_index = BTreeMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if arrow_index.insert(a.id.clone(), i).is_some() {
                return Err(QuiverError::DuplicateId(a.id.clone()));
            }
            for v in [a.src, a.tgt] {
                if !vertex_index.contains_key(&v) {
                    return Err(QuiverError::DanglingArrow {
                        arrow: a.id.clone(),
                        vertex: v,
                    });
                }
            }
        }
        Ok(Quiver {
            vertices,
            arrows,
            vertex_index,
            arrow_index,
        })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_position(&self, v: VertexId) -> Option<usize> {
        self.vertex_index.get(&v).copied()
    }

    pub fn arrow(&self, id: &str) -> Option<&Arrow> {
        self.arrow_index.get(id).map(|&i| &self.arrows[i])
    }

    /// Number of arrows `i -> j`.
    pub fn arrow_count_between(&self, i: VertexId, j: VertexId) -> usize {
        self.arrows
            .iter()
            .filter(|a| a.src == i && a.tgt == j)
            .count()
    }

    /// The quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow::new(a.id.clone(), a.tgt, a.src))
            .collect();
        Quiver::new(self.vertices.clone(), arrows).expect("reversal preserves validity")
    }
}

/// A nonempty cyclic word of arrow ids, stored as its least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord(Vec<String>);

impl CyclicWord {
    /// Returns `None` for the empty word.
    pub fn new<S: Into<String>>(arrows: impl IntoIterator<Item = S>) -> Option<Self> {
        let word: Vec<String> = arrows.into_iter().map(Into::into).collect();
        if word.is_empty() {
            return None;
        }
        Some(CyclicWord(least_rotation(word)))
    }

    pub fn arrows(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Applies an arrow relabeling and re-canonicalizes.
    pub fn map_arrows(&self, mut f: impl FnMut(&str) -> String) -> CyclicWord {
        CyclicWord(least_rotation(self.0.iter().map(|a| f(a)).collect()))
    }

    /// Whether consecutive arrows compose in `q`, including the wrap-around.
    pub fn is_cycle_in(&self, q: &Quiver) -> Result<bool, QuiverError> {
        let arrows = self
            .0
            .iter()
            .map(|id| {
                q.arrow(id)
                    .ok_or_else(|| QuiverError::UnknownArrow(id.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let n = arrows.len();
        Ok((0..n).all(|k| arrows[k].tgt == arrows[(k + 1) % n].src))
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join("·"))
    }
}

fn least_rotation(word: Vec<String>) -> Vec<String> {
    let n = word.len();
    (0..n)
        .map(|r| {
            word[r..]
                .iter()
                .chain(word[..r].iter())
                .cloned()
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap_or(word)
}

/// A potential: cyclic words with nonzero rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Potential {
    terms: BTreeMap<CyclicWord, BigRational>,
}

impl Potential {
    pub fn new() -> Self {
        Potential::default()
    }

    pub fn add_term(&mut self, word: CyclicWord, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CyclicWord, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &CyclicWord) -> Option<&BigRational> {
        self.terms.get(word)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, factor: &BigRational) -> Potential {
        let mut out = Potential::new();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * factor);
        }
        out
    }

    pub fn map_arrows(&self, mut f: impl FnMut(&str) -> String) -> Potential {
        let mut out = Potential::new();
        for (w, c) in &self.terms {
            out.add_term(w.map_arrows(&mut f), c.clone());
        }
        out
    }

    /// Terms as plain (word, coefficient) pairs in canonical order.
    pub fn to_terms(&self) -> Vec<(Vec<String>, BigRational)> {
        self.terms
            .iter()
            .map(|(w, c)| (w.arrows().to_vec(), c.clone()))
            .collect()
    }

    /// Every arrow id that occurs in some term.
    pub fn arrow_ids(&self) -> BTreeSet<&str> {
        self.terms
            .keys()
            .flat_map(|w| w.arrows().iter().map(String::as_str))
            .collect()
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if k == 0 {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if k > 0 {
                write!(f, " ")?;
            }
            if mag.is_one() {
                write!(f, "{sign}{w}")?;
            } else {
                write!(f, "{sign}{mag}·{w}")?;
            }
        }
        Ok(())
    }
}

/// Builds a canonical potential from raw terms: least rotations, merged
/// rotations, zero coefficients dropped. Empty words are rejected.
pub fn canonicalize_potential<S: Into<String>>(
    terms: impl IntoIterator<Item = (Vec<S>, BigRational)>,
) -> Result<Potential, QuiverError> {
    let mut w = Potential::new();
    for (word, coeff) in terms {
        let word =
            CyclicWord::new(word).ok_or_else(|| QuiverError::NonCyclicTerm("<empty>".into()))?;
        w.add_term(word, coeff);
    }
    Ok(w)
}

/// Checks the quiver invariants and that every term of `w` is a cyclic path in `q`.
pub fn validate(q: &Quiver, w: &Potential) -> Result<(), QuiverError> {
    // Re-running the constructor checks ids and endpoints.
    Quiver::new(q.vertices.clone(), q.arrows.clone())?;
    for (word, _) in w.terms() {
        if !word.is_cycle_in(q)? {
            return Err(QuiverError::NonCyclicTerm(word.to_string()));
        }
    }
    Ok(())
}

/// `w1 = λ·w2` with `λ` a positive rational, or `λ = 1` when `up_to_scale` is unset.
pub fn potentials_equivalent(w1: &Potential, w2: &Potential, up_to_scale: bool) -> bool {
    equivalence_scale(w1, w2, up_to_scale).is_some()
}

/// The multiplier `λ` with `w1 = λ·w2`, if one exists.
pub fn equivalence_scale(w1: &Potential, w2: &Potential, up_to_scale: bool) -> Option<BigRational> {
    if w1.len() != w2.len() {
        return None;
    }
    let Some((first, c1)) = w1.terms().next() else {
        return Some(BigRational::one());
    };
    let c2 = w2.coefficient(first)?;
    let lambda = c1 / c2;
    if !lambda.is_positive() || (!up_to_scale && !lambda.is_one()) {
        return None;
    }
    w1.terms()
        .all(|(w, c)| w2.coefficient(w).is_some_and(|d| &(d * &lambda) == c))
        .then_some(lambda)
}

/// Cyclic derivative of `w` with respect to one arrow: for every occurrence
/// of the arrow, the path that follows it around the cycle.
pub fn cyclic_derivative(w: &Potential, arrow: &str) -> BTreeMap<Vec<String>, BigRational> {
    let mut out: BTreeMap<Vec<String>, BigRational> = BTreeMap::new();
    for (word, c) in w.terms() {
        let a = word.arrows();
        for (p, id) in a.iter().enumerate() {
            if id == arrow {
                let path: Vec<String> = a[p + 1..].iter().chain(a[..p].iter()).cloned().collect();
                *out.entry(path).or_insert_with(BigRational::zero) += c;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Integer vector indexed by the vertices of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimensionVector(pub Vec<i64>);

impl DimensionVector {
    pub fn zeros(n: usize) -> Self {
        DimensionVector(vec![0; n])
    }

    /// Basis vector `e_i` (zero-based index).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimensionVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn scale(&self, k: i64) -> Self {
        DimensionVector(self.0.iter().map(|x| x * k).collect())
    }
}

impl Index<usize> for DimensionVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &DimensionVector {
    type Output = DimensionVector;
    fn add(self, rhs: &DimensionVector) -> DimensionVector {
        assert_eq!(self.len(), rhs.len(), "dimension vectors of different rank");
        DimensionVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimensionVector {
    type Output = DimensionVector;
    fn sub(self, rhs: &DimensionVector) -> DimensionVector {
        assert_eq!(self.len(), rhs.len(), "dimension vectors of different rank");
        DimensionVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DimensionVector {
    type Output = DimensionVector;
    fn neg(self) -> DimensionVector {
        self.scale(-1)
    }
}

impl Mul<&DimensionVector> for i64 {
    type Output = DimensionVector;
    fn mul(self, rhs: &DimensionVector) -> DimensionVector {
        rhs.scale(self)
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Antisymmetric integer matrix `b_ij = #(i→j) − #(j→i)`, indexed by the
/// vertex order of the generating quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewForm {
    vertices: Vec<VertexId>,
    matrix: Vec<Vec<i64>>,
}

impl SkewForm {
    pub fn from_matrix(vertices: Vec<VertexId>, matrix: Vec<Vec<i64>>) -> Option<Self> {
        let n = vertices.len();
        let square = matrix.len() == n && matrix.iter().all(|r| r.len() == n);
        let skew = square && (0..n).all(|i| (0..n).all(|j| matrix[i][j] == -matrix[j][i]));
        skew.then_some(SkewForm { vertices, matrix })
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// Entry by zero-based index.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    /// Entry by vertex id.
    pub fn entry(&self, i: VertexId, j: VertexId) -> Option<i64> {
        let pi = self.vertices.iter().position(|&v| v == i)?;
        let pj = self.vertices.iter().position(|&v| v == j)?;
        Some(self.matrix[pi][pj])
    }

    /// `⟨a, b⟩ = aᵀ B b`.
    pub fn pairing(&self, a: &DimensionVector, b: &DimensionVector) -> Result<i64, QuiverError> {
        let n = self.rank();
        for v in [a, b] {
            if v.len() != n {
                return Err(QuiverError::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        let mut total = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            let row: i64 = (0..n).map(|j| self.matrix[i][j] * b[j]).sum();
            total += a[i] * row;
        }
        Ok(total)
    }

    /// `B·v`.
    pub fn apply(&self, v: &DimensionVector) -> Result<DimensionVector, QuiverError> {
        let n = self.rank();
        if v.len() != n {
            return Err(QuiverError::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        Ok(DimensionVector(
            (0..n)
                .map(|i| (0..n).map(|j| self.matrix[i][j] * v[j]).sum())
                .collect(),
        ))
    }
}

pub fn skew_euler_form(q: &Quiver) -> SkewForm {
    let n = q.vertex_count();
    let mut matrix = vec![vec![0i64; n]; n];
    for a in q.arrows() {
        let i = q.vertex_position(a.src).expect("valid quiver");
        let j = q.vertex_position(a.tgt).expect("valid quiver");
        matrix[i][j] += 1;
        matrix[j][i] -= 1;
    }
    SkewForm {
        vertices: q.vertices().to_vec(),
        matrix,
    }
}

/// Parses `"p/q"` or `"n"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conifold() -> (Quiver, Potential) {
        let q = Quiver::new(
            vec![1, 2],
            vec![
                Arrow::new("X1_2a", 1, 2),
                Arrow::new("X1_2b", 1, 2),
                Arrow::new("X2_1a", 2, 1),
                Arrow::new("X2_1b", 2, 1),
            ],
        )
        .unwrap();
        let w = canonicalize_potential(vec![
            (vec!["X1_2a", "X2_1a", "X1_2b", "X2_1b"], int(-1)),
            (vec!["X1_2b", "X2_1a", "X1_2a", "X2_1b"], int(1)),
        ])
        .unwrap();
        (q, w)
    }

    #[test]
    fn conifold_validates() {
        let (q, w) = conifold();
        validate(&q, &w).unwrap();
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn empty_quiver_validates() {
        let q = Quiver::new(vec![1], vec![]).unwrap();
        validate(&q, &Potential::new()).unwrap();
        assert!(skew_euler_form(&q)
            .matrix()
            .iter()
            .all(|r| r.iter().all(|&x| x == 0)));
    }

    #[test]
    fn open_path_is_rejected() {
        let q = Quiver::new(vec![1, 2], vec![Arrow::new("a", 1, 2)]).unwrap();
        let w = canonicalize_potential(vec![(vec!["a"], int(1))]).unwrap();
        assert!(matches!(
            validate(&q, &w),
            Err(QuiverError::NonCyclicTerm(_))
        ));
    }

    #[test]
    fn construction_errors() {
        let dup = Quiver::new(vec![1, 1], vec![]);
        assert!(matches!(dup, Err(QuiverError::DuplicateId(_))));
        let dangling = Quiver::new(vec![1], vec![Arrow::new("a", 1, 2)]);
        assert!(matches!(dangling, Err(QuiverError::DanglingArrow { .. })));
        let dup_arrow = Quiver::new(vec![1], vec![Arrow::new("a", 1, 1), Arrow::new("a", 1, 1)]);
        assert!(matches!(dup_arrow, Err(QuiverError::DuplicateId(_))));
        let q = Quiver::new(vec![1], vec![Arrow::new("a", 1, 1)]).unwrap();
        let w = canonicalize_potential(vec![(vec!["b"], int(1))]).unwrap();
        assert!(matches!(
            validate(&q, &w),
            Err(QuiverError::UnknownArrow(_))
        ));
    }

    #[test]
    fn rotations_merge() {
        // X13X32X21 and X21X13X32 are the same cycle.
        let w = canonicalize_potential(vec![
            (vec!["X13", "X32", "X21"], int(1)),
            (vec!["X21", "X13", "X32"], int(1)),
        ])
        .unwrap();
        assert_eq!(w.len(), 1);
        let word = CyclicWord::new(["X13", "X32", "X21"]).unwrap();
        assert_eq!(word.arrows(), &["X13", "X32", "X21"]);
        assert_eq!(w.coefficient(&word), Some(&int(2)));
    }

    #[test]
    fn cancellation_and_least_rotation() {
        let w = canonicalize_potential(vec![
            (vec!["b", "c", "a"], int(1)),
            (vec!["c", "a", "b"], int(-1)),
        ])
        .unwrap();
        assert!(w.is_empty());
        let w = canonicalize_potential(vec![
            (vec!["b", "c", "a"], int(1)),
            (vec!["c", "a", "b"], int(1)),
            (vec!["a", "b", "c"], int(1)),
        ])
        .unwrap();
        let (word, c) = w.terms().next().unwrap();
        assert_eq!(word.arrows(), &["a", "b", "c"]);
        assert_eq!(c, &int(3));
    }

    #[test]
    fn equivalence_with_and_without_scale() {
        let (_, w) = conifold();
        assert!(potentials_equivalent(&w, &w, false));
        let doubled = w.scaled(&int(2));
        assert!(!potentials_equivalent(&doubled, &w, false));
        assert_eq!(equivalence_scale(&doubled, &w, true), Some(int(2)));
        assert!(!potentials_equivalent(&w.scaled(&int(-1)), &w, true));
        // Flip the sign of one term.
        let flipped = canonicalize_potential(vec![
            (vec!["X1_2a", "X2_1a", "X1_2b", "X2_1b"], int(1)),
            (vec!["X1_2b", "X2_1a", "X1_2a", "X2_1b"], int(1)),
        ])
        .unwrap();
        assert!(!potentials_equivalent(&flipped, &w, true));
        assert!(potentials_equivalent(
            &Potential::new(),
            &Potential::new(),
            false
        ));
    }

    #[test]
    fn skew_form_of_square_quiver() {
        let mut arrows = Vec::new();
        for (i, j) in [(1, 2), (2, 3), (3, 4), (4, 1)] {
            arrows.push(Arrow::new(format!("X{i}_{j}a"), i, j));
            arrows.push(Arrow::new(format!("X{i}_{j}b"), i, j));
        }
        let q = Quiver::new(vec![1, 2, 3, 4], arrows).unwrap();
        let b = skew_euler_form(&q);
        for (i, j) in [(1, 2), (2, 3), (3, 4), (4, 1)] {
            assert_eq!(b.entry(i, j), Some(2));
        }
        assert_eq!(b.entry(1, 3), Some(0));
        assert_eq!(b.entry(2, 4), Some(0));
        let rev = skew_euler_form(&q.opposite());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(rev.get(i, j), -b.get(i, j));
            }
        }
    }

    #[test]
    fn cyclic_derivative_of_commutator() {
        let w = canonicalize_potential(vec![
            (vec!["x", "y", "z"], int(1)),
            (vec!["x", "z", "y"], int(-1)),
        ])
        .unwrap();
        let dx = cyclic_derivative(&w, "x");
        let expected: BTreeMap<Vec<String>, BigRational> = [
            (vec!["y".to_string(), "z".to_string()], int(1)),
            (vec!["z".to_string(), "y".to_string()], int(-1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(dx, expected);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-1"), Some(int(-1)));
        assert_eq!(parse_rational("3/6"), Some(rational(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
