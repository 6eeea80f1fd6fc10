use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Truncated power series in `k` variables with integer coefficients.
///
/// Variable `i` has weight `weights[i] ≥ 1`; only monomials of weighted
/// degree `≤ order` are stored. Coefficients are kept densely over the
/// monomials in lexicographic order of exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    weights: Vec<u32>,
    order: u32,
    monomials: Vec<Vec<u32>>,
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn one(vars: usize, order: u32) -> Self {
        Self::one_weighted(vec![1; vars], order)
    }

    pub fn one_weighted(weights: Vec<u32>, order: u32) -> Self {
        assert!(
            weights.iter().all(|&w| w >= 1),
            "variable weights must be positive"
        );
        let mut monomials = Vec::new();
        enumerate(&weights, order, &mut Vec::new(), &mut monomials);
        let mut coeffs = vec![BigInt::zero(); monomials.len()];
        coeffs[0] = BigInt::one();
        TruncatedSeries {
            weights,
            order,
            monomials,
            coeffs,
        }
    }

    pub fn vars(&self) -> usize {
        self.weights.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn degree(&self, e: &[u32]) -> u32 {
        e.iter().zip(&self.weights).map(|(a, w)| a * w).sum()
    }

    pub fn coefficient(&self, e: &[u32]) -> BigInt {
        self.index_map()
            .get(e)
            .map(|&i| self.coeffs[i].clone())
            .unwrap_or_default()
    }

    /// Nonzero terms in lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.monomials
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.as_slice(), c))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn index_map(&self) -> HashMap<&[u32], usize> {
        self.monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.as_slice(), i))
            .collect()
    }

    /// Indices `j` with `monomials[j] = monomials[i] − alpha`, or `None`.
    fn shifts(&self, alpha: &[u32]) -> Vec<Option<usize>> {
        let idx = self.index_map();
        self.monomials
            .iter()
            .map(|m| {
                if m.iter().zip(alpha).any(|(a, b)| a < b) {
                    return None;
                }
                let lower: Vec<u32> = m.iter().zip(alpha).map(|(a, b)| a - b).collect();
                idx.get(lower.as_slice()).copied()
            })
            .collect()
    }

    /// Multiplies by `(1 − x^alpha)^k` for any integer `k`.
    ///
    /// Negative powers are applied as repeated division, which is exact
    /// in place because `m − alpha` precedes `m` lexicographically.
    pub fn mul_one_minus_pow(&mut self, alpha: &[u32], k: i64) {
        assert_eq!(alpha.len(), self.vars());
        assert!(alpha.iter().any(|&a| a > 0), "alpha must be nonzero");
        if self.degree(alpha) > self.order || k == 0 {
            return;
        }
        let sh = self.shifts(alpha);
        let n = self.coeffs.len();
        for _ in 0..k.unsigned_abs() {
            if k < 0 {
                for i in 0..n {
                    if let Some(j) = sh[i] {
                        let add = self.coeffs[j].clone();
                        self.coeffs[i] += add;
                    }
                }
            } else {
                for i in (0..n).rev() {
                    if let Some(j) = sh[i] {
                        let sub = self.coeffs[j].clone();
                        self.coeffs[i] -= sub;
                    }
                }
            }
        }
    }

    /// Truncated product; both operands must share variables, weights and order.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.weights, other.weights);
        assert_eq!(self.order, other.order);
        let idx = self.index_map();
        let mut out = vec![BigInt::zero(); self.coeffs.len()];
        for (i, a) in self.monomials.iter().enumerate() {
            if self.coeffs[i].is_zero() {
                continue;
            }
            let da = self.degree(a);
            for (j, b) in other.monomials.iter().enumerate() {
                if other.coeffs[j].is_zero() || da + self.degree(b) > self.order {
                    continue;
                }
                let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out[idx[s.as_slice()]] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        TruncatedSeries {
            coeffs: out,
            ..self.clone()
        }
    }

    /// Sorted `"[e1,e2,…]: c"` lines, by weighted degree then exponent.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<(u32, &[u32], &BigInt)> =
            self.terms().map(|(m, c)| (self.degree(m), m, c)).collect();
        rows.sort();
        let mut s = String::new();
        for (_, m, c) in rows {
            let exps: Vec<String> = m.iter().map(u32::to_string).collect();
            let _ = writeln!(s, "[{}]: {}", exps.join(","), c);
        }
        s
    }
}

fn enumerate(weights: &[u32], budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == weights.len() {
        out.push(prefix.clone());
        return;
    }
    let w = weights[prefix.len()];
    for e in 0..=budget / w {
        prefix.push(e);
        enumerate(weights, budget - e * w, prefix, out);
        prefix.pop();
    }
}
