use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use super::central::{ray_diagram, CentralCharge};
use super::series::TruncatedSeries;
use super::spectrum::{class_label, BpsSpectrum, Window};
use super::BpsError;
use crate::quiver::{skew_euler_form, DimensionVector, Quiver, SkewForm};
use crate::symmetry::{resolve_action, GroupAction};

/// `X(β) ↦ X(β)·M_β` with `M_β = ∏_γ (1 − X(γ))^{Ω(γ)⟨β,γ⟩}`, one
/// variable per ray class, graded by a positive functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayAutomorphism {
    pub classes: Vec<DimensionVector>,
    pub omegas: Vec<i64>,
    pub degrees: Vec<u32>,
    pub order: u32,
    pub skew: SkewForm,
    /// `exponents[i][k] = Ω(γ_k)·⟨e_i, γ_k⟩`
    pub exponents: Vec<Vec<i64>>,
    /// `M_{e_i}` for each basis vector.
    pub multipliers: Vec<TruncatedSeries>,
}

impl RayAutomorphism {
    /// `M_β` for an arbitrary class `β`.
    pub fn multiplier(&self, beta: &DimensionVector) -> Result<TruncatedSeries, BpsError> {
        let exps = self
            .classes
            .iter()
            .zip(&self.omegas)
            .map(|(g, o)| {
                Ok(o * self
                    .skew
                    .pairing(beta, g)
                    .map_err(|e| BpsError::BadParameter(e.to_string()))?)
            })
            .collect::<Result<Vec<i64>, BpsError>>()?;
        Ok(product(&self.degrees, self.order, &exps))
    }

    /// True when every multiplier is `1` without identifying any classes.
    pub fn is_identity(&self) -> bool {
        self.multipliers.iter().all(TruncatedSeries::is_one)
    }
}

fn product(weights: &[u32], order: u32, exps: &[i64]) -> TruncatedSeries {
    if weights.is_empty() {
        return TruncatedSeries::one(0, order);
    }
    let mut s = TruncatedSeries::one_weighted(weights.to_vec(), order);
    for (k, &e) in exps.iter().enumerate() {
        let mut alpha = vec![0; weights.len()];
        alpha[k] = 1;
        s.mul_one_minus_pow(&alpha, e);
    }
    s
}

/// Integer functional positive on every class, or `None`.
fn grading(classes: &[DimensionVector]) -> Option<Vec<i64>> {
    let rank = classes.first()?.len();
    let sum = vec![1; rank];
    let neg = vec![-1; rank];
    let total = classes
        .iter()
        .fold(DimensionVector::zeros(rank), |a, c| &a + c)
        .0;
    [sum, neg, total].into_iter().find(|l| {
        classes
            .iter()
            .all(|c| c.0.iter().zip(l).map(|(a, b)| a * b).sum::<i64>() > 0)
    })
}

/// Builds the ray automorphism for the given ray classes.
///
/// Classes whose grade exceeds `order` are dropped; every remaining class
/// needs an invariant from `omega`.
pub fn ks_ray_automorphism(
    ray: &[DimensionVector],
    omega: impl Fn(&DimensionVector) -> Option<i64>,
    skew: &SkewForm,
    order: u32,
) -> Result<RayAutomorphism, BpsError> {
    let mut classes: Vec<DimensionVector> = ray.to_vec();
    classes.sort();
    classes.dedup();
    if classes.iter().any(|c| c.len() != skew.rank()) {
        return Err(BpsError::BadParameter(
            "class rank differs from the skew form".into(),
        ));
    }
    let (kept, degrees) = if classes.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        let l = grading(&classes).ok_or(BpsError::NotInHalfSpace)?;
        let vals: Vec<i64> = classes
            .iter()
            .map(|c| c.0.iter().zip(&l).map(|(a, b)| a * b).sum())
            .collect();
        let g = vals.iter().fold(0i64, |acc, &v| acc.gcd(&v));
        let mut kept = Vec::new();
        let mut degrees = Vec::new();
        for (c, v) in classes.into_iter().zip(vals) {
            let d = (v / g) as u32;
            if d <= order {
                kept.push(c);
                degrees.push(d);
            }
        }
        (kept, degrees)
    };
    let omegas = kept
        .iter()
        .map(|c| omega(c).ok_or_else(|| BpsError::MissingInvariant(class_label(c))))
        .collect::<Result<Vec<i64>, BpsError>>()?;
    let rank = skew.rank();
    let mut exponents = Vec::with_capacity(rank);
    let mut multipliers = Vec::with_capacity(rank);
    for i in 0..rank {
        let beta = DimensionVector::basis(rank, i);
        let exps: Vec<i64> = kept
            .iter()
            .zip(&omegas)
            .map(|(g, o)| o * skew.pairing(&beta, g).expect("rank checked"))
            .collect();
        multipliers.push(product(&degrees, order, &exps));
        exponents.push(exps);
    }
    Ok(RayAutomorphism {
        classes: kept,
        omegas,
        degrees,
        order,
        skew: skew.clone(),
        exponents,
        multipliers,
    })
}

/// Whether every multiplier becomes `1` to degree `order` after setting
/// `X(γ) = X(g·γ)` for all group elements.
///
/// Returns `false` when a class has no image among the ray classes.
pub fn check_invariant_triviality(
    aut: &RayAutomorphism,
    q: &Quiver,
    act: &GroupAction,
    order: u32,
) -> Result<bool, BpsError> {
    let resolved = resolve_action(q, act)?;
    let index: BTreeMap<&DimensionVector, usize> = aut
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let n = aut.classes.len();
    let mut orbit: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for k in 0..n {
        for g in &resolved.elements {
            let image = resolved.act_on_class(g, q.vertices(), &aut.classes[k]);
            let Some(&j) = index.get(&image) else {
                return Ok(false);
            };
            if aut.omegas[j] != aut.omegas[k] {
                return Err(BpsError::NotGStable(format!(
                    "Omega({}) = {} but Omega({}) = {}",
                    class_label(&aut.classes[k]),
                    aut.omegas[k],
                    class_label(&image),
                    aut.omegas[j]
                )));
            }
            if aut.degrees[j] != aut.degrees[k] {
                return Ok(false);
            }
            let (a, b) = (root(&mut orbit, k), root(&mut orbit, j));
            orbit[a] = b;
        }
    }
    let mut reps: BTreeMap<usize, usize> = BTreeMap::new();
    for k in 0..n {
        let r = root(&mut orbit, k);
        let next = reps.len();
        reps.entry(r).or_insert(next);
    }
    let mut weights = vec![0; reps.len()];
    for k in 0..n {
        weights[reps[&root(&mut orbit, k)]] = aut.degrees[k];
    }
    for row in &aut.exponents {
        let mut summed = vec![0i64; reps.len()];
        for k in 0..n {
            summed[reps[&root(&mut orbit, k)]] += row[k];
        }
        if !product(&weights, order, &summed).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that every ray of the spectrum has trivial automorphism on the
/// invariant quotient to degree `order`, the condition under which
/// `X(γ) = exp(Z(γ)/ε)` has no jumps.
pub fn trivial_rhp_solution_check(
    z: &CentralCharge,
    spectrum: &BpsSpectrum,
    q: &Quiver,
    act: &GroupAction,
    order: u32,
) -> Result<bool, BpsError> {
    let rank = q.vertex_count();
    if z.values.len() != rank || spectrum.rank != rank {
        return Err(BpsError::BadParameter(
            "central charge, spectrum and quiver ranks differ".into(),
        ));
    }
    let resolved = resolve_action(q, act)?;
    for g in &resolved.elements {
        for i in 0..rank {
            let image = resolved.act_on_class(g, q.vertices(), &DimensionVector::basis(rank, i));
            if z.eval(&image) != z.values[i] {
                return Err(BpsError::NotInvariant(format!(
                    "Z(g{}) changes under {:?}",
                    i + 1,
                    g
                )));
            }
        }
    }
    if z.eval(&DimensionVector(vec![1; rank])).is_zero() {
        return Err(BpsError::VanishingCentralCharge("delta".into()));
    }
    let lo = spectrum
        .families
        .iter()
        .map(|f| f.window.lo)
        .min()
        .unwrap_or(0);
    let hi = spectrum
        .families
        .iter()
        .map(|f| f.window.hi)
        .max()
        .unwrap_or(-1);
    let rays = ray_diagram(z, spectrum, Window::new(lo, hi)?)?;
    let skew = skew_euler_form(q);
    for ray in rays {
        let classes: Vec<DimensionVector> = ray.classes.iter().map(|(c, _)| c.clone()).collect();
        let table: BTreeMap<&DimensionVector, i64> =
            ray.classes.iter().map(|(c, o)| (c, *o)).collect();
        let aut = ks_ray_automorphism(&classes, |c| table.get(c).copied(), &skew, order)?;
        if !check_invariant_triviality(&aut, q, act, order)? {
            return Ok(false);
        }
    }
    Ok(true)
}
