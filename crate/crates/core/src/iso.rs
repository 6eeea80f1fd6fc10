//! Isomorphism of quivers with potential.
//!
//! Exhaustive backtracking: vertices first, pruned by degree signatures and
//! adjacency counts, then arrows within each parallel class, pruned by
//! checking every potential term as soon as all of its arrows are assigned.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::quiver::{equivalence_scale, CyclicWord, Potential, Quiver, QuiverError, VertexId};

#[derive(Clone, Copy, Debug)]
pub struct IsoLimits {
    pub max_vertices: usize,
    pub max_arrows: usize,
    /// Upper bound on backtracking nodes visited.
    pub max_steps: u64,
}

impl Default for IsoLimits {
    fn default() -> Self {
        IsoLimits {
            max_vertices: 32,
            max_arrows: 128,
            max_steps: 20_000_000,
        }
    }
}

/// A structure-preserving bijection together with the positive scale `λ`
/// such that the image of the first potential is `λ` times the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverIsomorphism {
    pub vertices: BTreeMap<VertexId, VertexId>,
    pub arrows: BTreeMap<String, String>,
    pub scale: BigRational,
}

pub fn quiver_isomorphic(
    q1: &Quiver,
    w1: &Potential,
    q2: &Quiver,
    w2: &Potential,
) -> Result<Option<QuiverIsomorphism>, QuiverError> {
    quiver_isomorphic_with(q1, w1, q2, w2, IsoLimits::default())
}

/// Per-arrow invariant: sorted list of (term length, coefficient sign,
/// occurrences in term) over the terms containing the arrow.
type ArrowSig = Vec<(usize, bool, usize)>;

fn arrow_signatures(q: &Quiver, w: &Potential) -> Vec<ArrowSig> {
    let index: BTreeMap<&str, usize> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| (a.id.as_str(), i))
        .collect();
    let mut sigs = vec![Vec::new(); q.arrow_count()];
    for (word, c) in w.terms() {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for a in word.arrows() {
            if let Some(&i) = index.get(a.as_str()) {
                *counts.entry(i).or_default() += 1;
            }
        }
        for (i, k) in counts {
            sigs[i].push((word.len(), c.is_positive(), k));
        }
    }
    for s in &mut sigs {
        s.sort();
    }
    sigs
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct VertexSig {
    out_sigs: Vec<ArrowSig>,
    in_sigs: Vec<ArrowSig>,
    loops: usize,
}

fn vertex_signatures(q: &Quiver, arrow_sigs: &[ArrowSig]) -> Vec<VertexSig> {
    q.vertices()
        .iter()
        .map(|&v| {
            let mut out_sigs = Vec::new();
            let mut in_sigs = Vec::new();
            let mut loops = 0;
            for (a, sig) in q.arrows().iter().zip(arrow_sigs) {
                if a.src == v {
                    out_sigs.push(sig.clone());
                }
                if a.tgt == v {
                    in_sigs.push(sig.clone());
                }
                if a.src == v && a.tgt == v {
                    loops += 1;
                }
            }
            out_sigs.sort();
            in_sigs.sort();
            VertexSig {
                out_sigs,
                in_sigs,
                loops,
            }
        })
        .collect()
}

struct Side<'a> {
    q: &'a Quiver,
    w: &'a Potential,
    arrow_sigs: Vec<ArrowSig>,
    vertex_sigs: Vec<VertexSig>,
    /// counts[i][j] = number of arrows between vertex positions i -> j
    counts: Vec<Vec<usize>>,
}

impl<'a> Side<'a> {
    fn new(q: &'a Quiver, w: &'a Potential) -> Self {
        let arrow_sigs = arrow_signatures(q, w);
        let vertex_sigs = vertex_signatures(q, &arrow_sigs);
        let n = q.vertex_count();
        let mut counts = vec![vec![0usize; n]; n];
        for a in q.arrows() {
            let i = q.vertex_position(a.src).expect("valid");
            let j = q.vertex_position(a.tgt).expect("valid");
            counts[i][j] += 1;
        }
        Side {
            q,
            w,
            arrow_sigs,
            vertex_sigs,
            counts,
        }
    }
}

struct Search<'a> {
    left: Side<'a>,
    right: Side<'a>,
    limits: IsoLimits,
    steps: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), QuiverError> {
        self.steps += 1;
        if self.steps > self.limits.max_steps {
            return Err(QuiverError::SearchBudgetExceeded(format!(
                "{} steps",
                self.limits.max_steps
            )));
        }
        Ok(())
    }

    fn assign_vertices(
        &mut self,
        order: &[usize],
        depth: usize,
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> Result<Option<QuiverIsomorphism>, QuiverError> {
        self.tick()?;
        if depth == order.len() {
            let vmap: Vec<usize> = map.iter().map(|m| m.expect("complete")).collect();
            return self.assign_arrows(&vmap);
        }
        let i = order[depth];
        let n = map.len();
        for j in 0..n {
            if used[j] || self.left.vertex_sigs[i] != self.right.vertex_sigs[j] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&u| {
                let fu = map[u].expect("assigned");
                self.left.counts[u][i] == self.right.counts[fu][j]
                    && self.left.counts[i][u] == self.right.counts[j][fu]
            }) && self.left.counts[i][i] == self.right.counts[j][j];
            if !consistent {
                continue;
            }
            map[i] = Some(j);
            used[j] = true;
            if let Some(found) = self.assign_vertices(order, depth + 1, map, used)? {
                return Ok(Some(found));
            }
            map[i] = None;
            used[j] = false;
        }
        Ok(None)
    }

    fn assign_arrows(&mut self, vmap: &[usize]) -> Result<Option<QuiverIsomorphism>, QuiverError> {
        let lq = self.left.q;
        let rq = self.right.q;
        let left_arrows = lq.arrows();
        let right_arrows = rq.arrows();
        let l_index: BTreeMap<&str, usize> = left_arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.id.as_str(), i))
            .collect();

        let candidates: Vec<Vec<usize>> = left_arrows
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let s = vmap[lq.vertex_position(a.src).expect("valid")];
                let t = vmap[lq.vertex_position(a.tgt).expect("valid")];
                right_arrows
                    .iter()
                    .enumerate()
                    .filter(|(m, b)| {
                        rq.vertex_position(b.src) == Some(s)
                            && rq.vertex_position(b.tgt) == Some(t)
                            && self.right.arrow_sigs[*m] == self.left.arrow_sigs[k]
                    })
                    .map(|(m, _)| m)
                    .collect()
            })
            .collect();
        if candidates.iter().any(Vec::is_empty) {
            return Ok(None);
        }

        // Terms of w1 become checkable once their last arrow (in assignment order) is placed.
        let mut checks: Vec<Vec<(Vec<usize>, BigRational)>> = vec![Vec::new(); left_arrows.len()];
        for (word, c) in self.left.w.terms() {
            let idx: Vec<usize> = word.arrows().iter().map(|a| l_index[a.as_str()]).collect();
            let last = *idx.iter().max().expect("nonempty word");
            checks[last].push((idx, c.clone()));
        }

        let mut amap = vec![usize::MAX; left_arrows.len()];
        let mut used = vec![false; right_arrows.len()];
        let mut lambda: Option<BigRational> = None;
        let found = self.arrow_step(0, &candidates, &checks, &mut amap, &mut used, &mut lambda)?;
        if !found {
            return Ok(None);
        }
        let arrows: BTreeMap<String, String> = left_arrows
            .iter()
            .zip(&amap)
            .map(|(a, &m)| (a.id.clone(), right_arrows[m].id.clone()))
            .collect();
        let mapped = self.left.w.map_arrows(|a| arrows[a].clone());
        let Some(scale) = equivalence_scale(&mapped, self.right.w, true) else {
            return Ok(None);
        };
        let vertices = lq
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, rq.vertices()[vmap[i]]))
            .collect();
        Ok(Some(QuiverIsomorphism {
            vertices,
            arrows,
            scale,
        }))
    }

    #[allow(clippy::too_many_arguments)]
    fn arrow_step(
        &mut self,
        k: usize,
        candidates: &[Vec<usize>],
        checks: &[Vec<(Vec<usize>, BigRational)>],
        amap: &mut Vec<usize>,
        used: &mut Vec<bool>,
        lambda: &mut Option<BigRational>,
    ) -> Result<bool, QuiverError> {
        self.tick()?;
        if k == candidates.len() {
            return Ok(true);
        }
        let right_arrows = self.right.q.arrows();
        for &m in &candidates[k] {
            if used[m] {
                continue;
            }
            amap[k] = m;
            used[m] = true;
            let saved = lambda.clone();
            let mut ok = true;
            for (idx, c) in &checks[k] {
                let word = CyclicWord::new(idx.iter().map(|&i| right_arrows[amap[i]].id.clone()))
                    .expect("nonempty word");
                match self.right.w.coefficient(&word) {
                    Some(d) => {
                        let ratio = c / d;
                        match lambda.as_ref() {
                            Some(l) if *l != ratio => ok = false,
                            Some(_) => {}
                            None if ratio.is_positive() => *lambda = Some(ratio),
                            None => ok = false,
                        }
                    }
                    None => ok = false,
                }
                if !ok {
                    break;
                }
            }
            if ok && self.arrow_step(k + 1, candidates, checks, amap, used, lambda)? {
                return Ok(true);
            }
            *lambda = saved;
            used[m] = false;
            amap[k] = usize::MAX;
        }
        Ok(false)
    }
}

/// Searches for a bijection of vertices and arrows preserving sources and
/// targets and carrying `w1` to a positive multiple of `w2`.
pub fn quiver_isomorphic_with(
    q1: &Quiver,
    w1: &Potential,
    q2: &Quiver,
    w2: &Potential,
    limits: IsoLimits,
) -> Result<Option<QuiverIsomorphism>, QuiverError> {
    for q in [q1, q2] {
        if q.vertex_count() > limits.max_vertices || q.arrow_count() > limits.max_arrows {
            return Err(QuiverError::SearchBudgetExceeded(format!(
                "{} vertices / {} arrows exceeds {} / {}",
                q.vertex_count(),
                q.arrow_count(),
                limits.max_vertices,
                limits.max_arrows
            )));
        }
    }
    if q1.vertex_count() != q2.vertex_count()
        || q1.arrow_count() != q2.arrow_count()
        || w1.len() != w2.len()
    {
        return Ok(None);
    }
    if w1.is_empty() && q1.vertex_count() == 0 {
        return Ok(Some(QuiverIsomorphism {
            vertices: BTreeMap::new(),
            arrows: BTreeMap::new(),
            scale: BigRational::one(),
        }));
    }
    let left = Side::new(q1, w1);
    let right = Side::new(q2, w2);
    let mut a = left.vertex_sigs.clone();
    let mut b = right.vertex_sigs.clone();
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }
    // Most-constrained first: vertices whose signature is rarest.
    let n = q1.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| {
        (
            left.vertex_sigs
                .iter()
                .filter(|s| **s == left.vertex_sigs[i])
                .count(),
            i,
        )
    });
    let mut search = Search {
        left,
        right,
        limits,
        steps: 0,
    };
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    search.assign_vertices(&order, 0, &mut map, &mut used)
}
