//! Free actions of finite abelian groups on quivers with potential.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::quiver::{
    potentials_equivalent, Arrow, CyclicWord, DimensionVector, Potential, Quiver, QuiverError,
    SkewForm, VertexId,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymmetryError {
    #[error("generator {generator} is not equivariant on arrow {arrow}")]
    NotEquivariant { generator: usize, arrow: String },
    #[error("group element {element:?} fixes vertex {vertex}")]
    NotFreeOnVertices { element: Vec<u32>, vertex: VertexId },
    #[error("generator {0} does not preserve the potential")]
    PotentialNotInvariant(usize),
    #[error("{0}")]
    GroupRelationViolated(String),
    #[error("{0}")]
    MalformedAction(String),
    #[error("{0}")]
    InvalidSection(String),
    #[error("expected {expected} vertices, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

impl SymmetryError {
    pub fn code(&self) -> &'static str {
        match self {
            SymmetryError::NotEquivariant { .. } => "NotEquivariant",
            SymmetryError::NotFreeOnVertices { .. } => "NotFreeOnVertices",
            SymmetryError::PotentialNotInvariant(_) => "PotentialNotInvariant",
            SymmetryError::GroupRelationViolated(_) => "GroupRelationViolated",
            SymmetryError::MalformedAction(_) => "MalformedAction",
            SymmetryError::InvalidSection(_) => "InvalidSection",
            SymmetryError::DimensionMismatch { .. } => "DimensionMismatch",
            SymmetryError::Quiver(e) => e.code(),
        }
    }
}

/// Product of cyclic groups `Z/d_1 × … × Z/d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    pub orders: Vec<u32>,
}

pub type GroupElement = Vec<u32>;

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u32>) -> Self {
        FiniteAbelianGroup { orders }
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { orders: Vec::new() }
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().map(|&d| d as u64).product()
    }

    pub fn identity(&self) -> GroupElement {
        vec![0; self.orders.len()]
    }

    pub fn is_identity(&self, g: &[u32]) -> bool {
        g.iter().all(|&x| x == 0)
    }

    /// All elements in lexicographic order of their coordinate tuples.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![Vec::new()];
        for &d in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |x| {
                        let mut e = prefix.clone();
                        e.push(x);
                        e
                    })
                })
                .collect();
        }
        out
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> GroupElement {
        self.orders
            .iter()
            .zip(a.iter().zip(b))
            .map(|(&d, (&x, &y))| (x + y) % d)
            .collect()
    }

    pub fn neg(&self, a: &[u32]) -> GroupElement {
        self.orders
            .iter()
            .zip(a)
            .map(|(&d, &x)| (d - x % d) % d)
            .collect()
    }
}

/// Permutations of vertices and arrows attached to one group generator.
/// Unlisted vertices and arrows are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub vertices: BTreeMap<VertexId, VertexId>,
    pub arrows: BTreeMap<String, String>,
}

impl Generator {
    pub fn vertex(&self, v: VertexId) -> VertexId {
        self.vertices.get(&v).copied().unwrap_or(v)
    }

    pub fn arrow<'a>(&'a self, a: &'a str) -> &'a str {
        self.arrows.get(a).map(String::as_str).unwrap_or(a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAction {
    pub orders: Vec<u32>,
    pub generators: Vec<Generator>,
}

impl GroupAction {
    pub fn trivial() -> Self {
        GroupAction {
            orders: Vec::new(),
            generators: Vec::new(),
        }
    }

    pub fn cyclic(order: u32, generator: Generator) -> Self {
        GroupAction {
            orders: vec![order],
            generators: vec![generator],
        }
    }

    pub fn group(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(self.orders.clone())
    }

    /// Builds the generator permutation on arrows induced by a vertex
    /// permutation, matching parallel arrows by position among arrows with
    /// the same endpoints.
    pub fn induced_generator(q: &Quiver, vertices: BTreeMap<VertexId, VertexId>) -> Generator {
        let mut by_ends: BTreeMap<(VertexId, VertexId), Vec<&str>> = BTreeMap::new();
        for a in q.arrows() {
            by_ends.entry((a.src, a.tgt)).or_default().push(&a.id);
        }
        let g = Generator {
            vertices,
            arrows: BTreeMap::new(),
        };
        let mut arrows = BTreeMap::new();
        for ((s, t), ids) in &by_ends {
            let image = &by_ends.get(&(g.vertex(*s), g.vertex(*t)));
            if let Some(targets) = image {
                for (a, b) in ids.iter().zip(targets.iter()) {
                    if a != b {
                        arrows.insert(a.to_string(), b.to_string());
                    }
                }
            }
        }
        Generator { arrows, ..g }
    }
}

/// Every group element resolved to explicit permutations on a quiver.
#[derive(Clone, Debug)]
pub struct ResolvedAction {
    pub group: FiniteAbelianGroup,
    pub elements: Vec<GroupElement>,
    vertex_perms: Vec<BTreeMap<VertexId, VertexId>>,
    arrow_perms: Vec<BTreeMap<String, String>>,
}

impl ResolvedAction {
    pub fn element_index(&self, g: &[u32]) -> usize {
        g.iter()
            .zip(&self.group.orders)
            .fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
    }

    pub fn vertex(&self, g: &[u32], v: VertexId) -> VertexId {
        self.vertex_perms[self.element_index(g)][&v]
    }

    pub fn arrow(&self, g: &[u32], a: &str) -> &str {
        &self.arrow_perms[self.element_index(g)][a]
    }

    pub fn vertex_perm(&self, g: &[u32]) -> &BTreeMap<VertexId, VertexId> {
        &self.vertex_perms[self.element_index(g)]
    }

    /// `g·γ` on the charge lattice, permuting coordinates along `vertices`.
    pub fn act_on_class(
        &self,
        g: &[u32],
        vertices: &[VertexId],
        gamma: &DimensionVector,
    ) -> DimensionVector {
        let perm = self.vertex_perm(g);
        let pos: BTreeMap<VertexId, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut out = vec![0i64; vertices.len()];
        for (i, v) in vertices.iter().enumerate() {
            out[pos[&perm[v]]] += gamma[i];
        }
        DimensionVector(out)
    }
}

fn check_bijection<T: Ord + Clone + std::fmt::Debug>(
    domain: &[T],
    image: impl Fn(&T) -> T,
    what: &str,
    gen: usize,
) -> Result<(), SymmetryError> {
    let set: BTreeSet<T> = domain.iter().cloned().collect();
    let mut seen = BTreeSet::new();
    for x in domain {
        let y = image(x);
        if !set.contains(&y) {
            return Err(SymmetryError::MalformedAction(format!(
                "generator {gen} sends {what} {x:?} outside the quiver"
            )));
        }
        if !seen.insert(y.clone()) {
            return Err(SymmetryError::MalformedAction(format!(
                "generator {gen} is not injective on {what}s at {y:?}"
            )));
        }
    }
    Ok(())
}

/// Resolves every element's permutations. Checks that generators are
/// bijections and satisfy the relations of the group.
pub fn resolve_action(q: &Quiver, act: &GroupAction) -> Result<ResolvedAction, SymmetryError> {
    if act.orders.len() != act.generators.len() {
        return Err(SymmetryError::MalformedAction(format!(
            "{} orders but {} generators",
            act.orders.len(),
            act.generators.len()
        )));
    }
    if act.orders.contains(&0) {
        return Err(SymmetryError::MalformedAction(
            "cyclic factor of order 0".into(),
        ));
    }
    let vertices = q.vertices().to_vec();
    let arrow_ids: Vec<String> = q.arrows().iter().map(|a| a.id.clone()).collect();
    for key in act.generators.iter().flat_map(|g| g.vertices.keys()) {
        if q.vertex_position(*key).is_none() {
            return Err(SymmetryError::MalformedAction(format!(
                "unknown vertex {key}"
            )));
        }
    }
    for key in act.generators.iter().flat_map(|g| g.arrows.keys()) {
        if q.arrow(key).is_none() {
            return Err(SymmetryError::MalformedAction(format!(
                "unknown arrow {key}"
            )));
        }
    }
    for (k, g) in act.generators.iter().enumerate() {
        check_bijection(&vertices, |v| g.vertex(*v), "vertex", k)?;
        check_bijection(&arrow_ids, |a| g.arrow(a).to_string(), "arrow", k)?;
    }

    let vpow = |g: &Generator, v: VertexId, n: u32| (0..n).fold(v, |x, _| g.vertex(x));
    let apow =
        |g: &Generator, a: &str, n: u32| (0..n).fold(a.to_string(), |x, _| g.arrow(&x).to_string());

    for (k, (g, &d)) in act.generators.iter().zip(&act.orders).enumerate() {
        let v_ok = vertices.iter().all(|&v| vpow(g, v, d) == v);
        let a_ok = arrow_ids.iter().all(|a| apow(g, a, d) == *a);
        if !v_ok || !a_ok {
            return Err(SymmetryError::GroupRelationViolated(format!(
                "generator {k} does not have order dividing {d}"
            )));
        }
    }
    for i in 0..act.generators.len() {
        for j in i + 1..act.generators.len() {
            let (gi, gj) = (&act.generators[i], &act.generators[j]);
            let v_ok = vertices
                .iter()
                .all(|&v| gi.vertex(gj.vertex(v)) == gj.vertex(gi.vertex(v)));
            let a_ok = arrow_ids
                .iter()
                .all(|a| gi.arrow(gj.arrow(a)) == gj.arrow(gi.arrow(a)));
            if !v_ok || !a_ok {
                return Err(SymmetryError::GroupRelationViolated(format!(
                    "generators {i} and {j} do not commute"
                )));
            }
        }
    }

    let group = act.group();
    let elements = group.elements();
    let mut vertex_perms = Vec::with_capacity(elements.len());
    let mut arrow_perms = Vec::with_capacity(elements.len());
    for e in &elements {
        let vp = vertices
            .iter()
            .map(|&v| {
                let image = act
                    .generators
                    .iter()
                    .zip(e)
                    .fold(v, |x, (g, &n)| vpow(g, x, n));
                (v, image)
            })
            .collect();
        let ap = arrow_ids
            .iter()
            .map(|a| {
                let image = act
                    .generators
                    .iter()
                    .zip(e)
                    .fold(a.clone(), |x, (g, &n)| apow(g, &x, n));
                (a.clone(), image)
            })
            .collect();
        vertex_perms.push(vp);
        arrow_perms.push(ap);
    }
    Ok(ResolvedAction {
        group,
        elements,
        vertex_perms,
        arrow_perms,
    })
}

/// Checks bijectivity, group relations, equivariance, freeness on vertices
/// and invariance of the potential.
pub fn validate_action(
    q: &Quiver,
    w: &Potential,
    act: &GroupAction,
) -> Result<ResolvedAction, SymmetryError> {
    let resolved = resolve_action(q, act)?;
    for (k, g) in act.generators.iter().enumerate() {
        for a in q.arrows() {
            let b = q.arrow(g.arrow(&a.id)).expect("checked bijection");
            if b.src != g.vertex(a.src) || b.tgt != g.vertex(a.tgt) {
                return Err(SymmetryError::NotEquivariant {
                    generator: k,
                    arrow: a.id.clone(),
                });
            }
        }
    }
    for e in &resolved.elements {
        if resolved.group.is_identity(e) {
            continue;
        }
        let perm = resolved.vertex_perm(e);
        if let Some((&v, _)) = perm.iter().find(|(v, w)| v == w) {
            return Err(SymmetryError::NotFreeOnVertices {
                element: e.clone(),
                vertex: v,
            });
        }
    }
    for (k, g) in act.generators.iter().enumerate() {
        let image = w.map_arrows(|a| g.arrow(a).to_string());
        if !potentials_equivalent(&image, w, false) {
            return Err(SymmetryError::PotentialNotInvariant(k));
        }
    }
    Ok(resolved)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Normalization {
    Raw,
    #[default]
    ByGroupOrder,
}

#[derive(Clone, Debug)]
pub struct QuotientResult {
    pub quiver: Quiver,
    pub potential: Potential,
    /// vertex → quotient vertex (the least vertex id of its orbit)
    pub vertex_orbit: BTreeMap<VertexId, VertexId>,
    /// arrow → quotient arrow id
    pub arrow_orbit: BTreeMap<String, String>,
    pub group_order: u64,
}

pub const ORBIT_PREFIX: &str = "orbit:";

pub fn quotient(
    q: &Quiver,
    w: &Potential,
    act: &GroupAction,
    normalization: Normalization,
) -> Result<QuotientResult, SymmetryError> {
    let resolved = validate_action(q, w, act)?;
    let mut vertex_orbit = BTreeMap::new();
    for &v in q.vertices() {
        let rep = resolved
            .elements
            .iter()
            .map(|e| resolved.vertex(e, v))
            .min()
            .expect("identity");
        vertex_orbit.insert(v, rep);
    }
    let mut arrow_orbit = BTreeMap::new();
    for a in q.arrows() {
        let rep = resolved
            .elements
            .iter()
            .map(|e| resolved.arrow(e, &a.id))
            .min()
            .expect("identity");
        arrow_orbit.insert(a.id.clone(), format!("{ORBIT_PREFIX}{rep}"));
    }
    let qverts: Vec<VertexId> = vertex_orbit
        .values()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut qarrows: BTreeMap<String, Arrow> = BTreeMap::new();
    for a in q.arrows() {
        let id = &arrow_orbit[&a.id];
        qarrows
            .entry(id.clone())
            .or_insert_with(|| Arrow::new(id.clone(), vertex_orbit[&a.src], vertex_orbit[&a.tgt]));
    }
    let quiver = Quiver::new(qverts, qarrows.into_values().collect())?;
    let mut potential = Potential::new();
    for (word, c) in w.terms() {
        let image = word.map_arrows(|a| arrow_orbit[a].clone());
        potential.add_term(image, c.clone());
    }
    let order = resolved.group.order();
    if normalization == Normalization::ByGroupOrder {
        potential = potential.scaled(&BigRational::new(BigInt::from(1), BigInt::from(order)));
    }
    Ok(QuotientResult {
        quiver,
        potential,
        vertex_orbit,
        arrow_orbit,
        group_order: order,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionData {
    /// quotient vertex → representative vertex
    pub section: BTreeMap<VertexId, VertexId>,
    /// quotient arrow → lifted arrow starting at the representative of its source
    pub lifts: BTreeMap<String, String>,
    /// quotient arrow → g(a') with g(a')·c(t(a')) = t(c(a'))
    pub labels: BTreeMap<String, GroupElement>,
    pub group: FiniteAbelianGroup,
}

/// The section choosing the least vertex id in each orbit.
pub fn default_section(res: &QuotientResult) -> BTreeMap<VertexId, VertexId> {
    let mut c = BTreeMap::new();
    for (&v, &o) in &res.vertex_orbit {
        c.entry(o).or_insert(v);
    }
    c
}

pub fn section_labels(
    q: &Quiver,
    act: &GroupAction,
    res: &QuotientResult,
    section: &BTreeMap<VertexId, VertexId>,
) -> Result<SectionData, SymmetryError> {
    let resolved = resolve_action(q, act)?;
    for &o in res.quiver.vertices() {
        match section.get(&o) {
            None => {
                return Err(SymmetryError::InvalidSection(format!(
                    "no representative for quotient vertex {o}"
                )))
            }
            Some(v) if res.vertex_orbit.get(v) != Some(&o) => {
                return Err(SymmetryError::InvalidSection(format!(
                    "vertex {v} does not lie over {o}"
                )));
            }
            Some(_) => {}
        }
    }
    if let Some(k) = section
        .keys()
        .find(|k| res.quiver.vertex_position(**k).is_none())
    {
        return Err(SymmetryError::InvalidSection(format!(
            "{k} is not a quotient vertex"
        )));
    }
    let mut lifts = BTreeMap::new();
    let mut labels = BTreeMap::new();
    for qa in res.quiver.arrows() {
        let start = section[&qa.src];
        let lift = q
            .arrows()
            .iter()
            .find(|a| a.src == start && res.arrow_orbit[&a.id] == qa.id)
            .ok_or_else(|| {
                SymmetryError::InvalidSection(format!("arrow {} has no lift at {start}", qa.id))
            })?;
        let target_rep = section[&qa.tgt];
        let g = resolved
            .elements
            .iter()
            .find(|e| resolved.vertex(e, target_rep) == lift.tgt)
            .ok_or_else(|| {
                SymmetryError::InvalidSection(format!(
                    "no element carries {target_rep} to {}",
                    lift.tgt
                ))
            })?;
        lifts.insert(qa.id.clone(), lift.id.clone());
        labels.insert(qa.id.clone(), g.clone());
    }
    Ok(SectionData {
        section: section.clone(),
        lifts,
        labels,
        group: resolved.group,
    })
}

/// A character of `G`, given by exponents `e_i` mod `d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub exponents: Vec<u32>,
}

impl Character {
    pub fn new(group: &FiniteAbelianGroup, exponents: Vec<u32>) -> Self {
        let exponents = exponents
            .iter()
            .zip(&group.orders)
            .map(|(&e, &d)| e % d)
            .collect();
        Character { exponents }
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        Character {
            exponents: vec![0; group.orders.len()],
        }
    }

    pub fn mul(&self, other: &Character, group: &FiniteAbelianGroup) -> Character {
        Character {
            exponents: group.add(&self.exponents, &other.exponents),
        }
    }

    /// `χ(g)` as an exponent of a primitive `|G|`-th root of unity.
    pub fn evaluate(&self, group: &FiniteAbelianGroup, g: &[u32]) -> u64 {
        let n = group.order();
        group
            .orders
            .iter()
            .zip(self.exponents.iter().zip(g))
            .map(|(&d, (&e, &x))| (e as u64 * x as u64 % d as u64) * (n / d as u64))
            .sum::<u64>()
            % n
    }
}

/// Root-of-unity exponent `χ(g(a'))` per quotient arrow.
pub fn character_rescaling(sec: &SectionData, chi: &Character) -> BTreeMap<String, u64> {
    sec.labels
        .iter()
        .map(|(a, g)| (a.clone(), chi.evaluate(&sec.group, g)))
        .collect()
}

/// Sum of rescaling exponents around a word, mod `|G|`.
pub fn word_phase(scalars: &BTreeMap<String, u64>, word: &CyclicWord, group_order: u64) -> u64 {
    word.arrows()
        .iter()
        .map(|a| scalars.get(a).copied().unwrap_or(0))
        .sum::<u64>()
        % group_order
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelEntry {
    pub element: GroupElement,
    pub vertex: VertexId,
    /// `B·(e_i + g(e_i)) = 0`
    pub pair_in_kernel: bool,
    /// `B·Σ_k g^k(e_i) = 0` over the cyclic subgroup generated by `g`
    pub orbit_in_kernel: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub entries: Vec<KernelEntry>,
}

impl KernelReport {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.pair_in_kernel)
    }

    pub fn orbit_sums_hold(&self) -> bool {
        self.entries.iter().all(|e| e.orbit_in_kernel)
    }
}

/// Reports for each non-identity element `g` (the identity alone when the
/// group is trivial) and each basis class whether `e_i + g(e_i)` lies in
/// the kernel of `B`.
pub fn kernel_pairing_check(
    b: &SkewForm,
    q: &Quiver,
    act: &GroupAction,
) -> Result<KernelReport, SymmetryError> {
    if b.vertices() != q.vertices() {
        return Err(SymmetryError::DimensionMismatch {
            expected: q.vertex_count(),
            got: b.vertices().len(),
        });
    }
    let resolved = resolve_action(q, act)?;
    let n = q.vertex_count();
    let group = &resolved.group;
    let mut elements: Vec<GroupElement> = resolved
        .elements
        .iter()
        .filter(|e| !group.is_identity(e))
        .cloned()
        .collect();
    if elements.is_empty() {
        elements.push(group.identity());
    }
    let mut entries = Vec::new();
    for g in &elements {
        for (i, &v) in q.vertices().iter().enumerate() {
            let e = DimensionVector::basis(n, i);
            let ge = resolved.act_on_class(g, q.vertices(), &e);
            let pair = &e + &ge;
            let pair_in_kernel = b.apply(&pair)?.is_zero();
            let mut orbit = DimensionVector::zeros(n);
            let mut h = group.identity();
            loop {
                orbit = &orbit + &resolved.act_on_class(&h, q.vertices(), &e);
                h = group.add(&h, g);
                if group.is_identity(&h) {
                    break;
                }
            }
            let orbit_in_kernel = b.apply(&orbit)?.is_zero();
            entries.push(KernelEntry {
                element: g.clone(),
                vertex: v,
                pair_in_kernel,
                orbit_in_kernel,
            });
        }
    }
    Ok(KernelReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{canonicalize_potential, int, skew_euler_form};

    fn p1xp1() -> (Quiver, Potential) {
        let mut arrows = Vec::new();
        for (s, t) in [(1, 2), (2, 3), (3, 4), (4, 1)] {
            for l in ["a", "b"] {
                arrows.push(Arrow::new(format!("X{s}_{t}{l}"), s, t));
            }
        }
        let q = Quiver::new(vec![1, 2, 3, 4], arrows).unwrap();
        let w = canonicalize_potential(vec![
            (vec!["X1_2a", "X2_3a", "X3_4a", "X4_1a"], int(-1)),
            (vec!["X1_2b", "X2_3b", "X3_4b", "X4_1b"], int(-1)),
            (vec!["X1_2b", "X2_3a", "X3_4b", "X4_1a"], int(1)),
            (vec!["X1_2a", "X2_3b", "X3_4a", "X4_1b"], int(1)),
        ])
        .unwrap();
        (q, w)
    }

    fn rot(q: &Quiver) -> GroupAction {
        GroupAction::cyclic(
            2,
            GroupAction::induced_generator(q, BTreeMap::from([(1, 3), (2, 4), (3, 1), (4, 2)])),
        )
    }

    #[test]
    fn group_elements_enumerate_lexicographically() {
        let g = FiniteAbelianGroup::new(vec![2, 3]);
        let els = g.elements();
        assert_eq!(els.len(), 6);
        assert_eq!(els[0], vec![0, 0]);
        assert_eq!(els[5], vec![1, 2]);
        assert_eq!(g.add(&[1, 2], &[1, 2]), vec![0, 1]);
        assert_eq!(g.neg(&[1, 1]), vec![1, 2]);
    }

    #[test]
    fn involution_is_a_valid_action() {
        let (q, w) = p1xp1();
        validate_action(&q, &w, &rot(&q)).unwrap();
    }

    #[test]
    fn fixed_vertex_is_rejected() {
        let (q, w) = p1xp1();
        let g = Generator {
            vertices: BTreeMap::new(),
            arrows: BTreeMap::new(),
        };
        let act = GroupAction::cyclic(2, g);
        assert!(matches!(
            validate_action(&q, &w, &act),
            Err(SymmetryError::NotFreeOnVertices { .. })
        ));
    }

    #[test]
    fn wrong_order_is_rejected() {
        let (q, w) = p1xp1();
        let mut act = rot(&q);
        act.orders = vec![3];
        assert!(matches!(
            validate_action(&q, &w, &act),
            Err(SymmetryError::GroupRelationViolated(_))
        ));
    }

    #[test]
    fn non_equivariant_arrow_map_is_rejected() {
        let (q, w) = p1xp1();
        let mut act = rot(&q);
        act.generators[0]
            .arrows
            .insert("X1_2a".into(), "X2_3a".into());
        act.generators[0]
            .arrows
            .insert("X3_4a".into(), "X4_1a".into());
        act.generators[0]
            .arrows
            .insert("X2_3a".into(), "X1_2a".into());
        act.generators[0]
            .arrows
            .insert("X4_1a".into(), "X3_4a".into());
        assert!(validate_action(&q, &w, &act).is_err());
    }

    #[test]
    fn quotient_counts_orbits() {
        let (q, w) = p1xp1();
        let res = quotient(&q, &w, &rot(&q), Normalization::ByGroupOrder).unwrap();
        assert_eq!(res.quiver.vertex_count() * 2, q.vertex_count());
        assert_eq!(res.quiver.arrow_count() * 2, q.arrow_count());
        assert_eq!(res.quiver.vertices(), &[1, 2]);
        assert!(res.quiver.arrow("orbit:X1_2a").is_some());
    }

    #[test]
    fn trivial_quotient_is_a_relabeling() {
        let (q, w) = p1xp1();
        let res = quotient(&q, &w, &GroupAction::trivial(), Normalization::ByGroupOrder).unwrap();
        let back = res
            .potential
            .map_arrows(|a| a.trim_start_matches(ORBIT_PREFIX).to_string());
        assert_eq!(back, w);
    }

    #[test]
    fn section_labels_satisfy_defining_condition() {
        let (q, w) = p1xp1();
        let act = rot(&q);
        let res = quotient(&q, &w, &act, Normalization::Raw).unwrap();
        let sec = section_labels(&q, &act, &res, &default_section(&res)).unwrap();
        let resolved = resolve_action(&q, &act).unwrap();
        for qa in res.quiver.arrows() {
            let lift = q.arrow(&sec.lifts[&qa.id]).unwrap();
            let g = &sec.labels[&qa.id];
            assert_eq!(resolved.vertex(g, sec.section[&qa.tgt]), lift.tgt);
        }
        assert_eq!(sec.labels["orbit:X1_2a"], vec![0]);
        assert_eq!(sec.labels["orbit:X2_3a"], vec![1]);
    }

    #[test]
    fn invalid_section_is_rejected() {
        let (q, w) = p1xp1();
        let act = rot(&q);
        let res = quotient(&q, &w, &act, Normalization::Raw).unwrap();
        let bad = BTreeMap::from([(1, 2), (2, 2)]);
        assert!(matches!(
            section_labels(&q, &act, &res, &bad),
            Err(SymmetryError::InvalidSection(_))
        ));
    }

    #[test]
    fn character_phases_close_on_terms() {
        let (q, w) = p1xp1();
        let act = rot(&q);
        let res = quotient(&q, &w, &act, Normalization::Raw).unwrap();
        let sec = section_labels(&q, &act, &res, &default_section(&res)).unwrap();
        let chi = Character::new(&sec.group, vec![1]);
        let scal = character_rescaling(&sec, &chi);
        for (word, _) in res.potential.terms() {
            assert_eq!(word_phase(&scal, word, 2), 0);
        }
        let triv = character_rescaling(&sec, &Character::trivial(&sec.group));
        assert!(triv.values().all(|&x| x == 0));
    }

    #[test]
    fn kernel_check_on_involution() {
        let (q, w) = p1xp1();
        let act = rot(&q);
        validate_action(&q, &w, &act).unwrap();
        let b = skew_euler_form(&q);
        let rep = kernel_pairing_check(&b, &q, &act).unwrap();
        assert_eq!(rep.entries.len(), 4);
        assert!(rep.holds());
        let triv = kernel_pairing_check(&b, &q, &GroupAction::trivial()).unwrap();
        assert!(!triv.holds());
        let empty = Quiver::new(vec![1, 2], vec![]).unwrap();
        assert!(
            kernel_pairing_check(&skew_euler_form(&empty), &empty, &GroupAction::trivial())
                .unwrap()
                .holds()
        );
    }
}
