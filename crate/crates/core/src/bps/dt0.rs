use super::series::TruncatedSeries;
use super::spectrum::{BpsSpectrum, Family, Window};
use super::BpsError;
use crate::quiver::DimensionVector;

/// Largest truncation order accepted by [`dt0_product`].
pub const MAX_ORDER: u32 = 64;

/// `∏_{m=1}^{M} (1 − x^{first + (m−1)·step})^{exponents[m−1]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorFamily {
    pub first: Vec<i64>,
    pub step: Vec<i64>,
    pub exponents: Vec<i64>,
}

impl FactorFamily {
    fn linear(first: Vec<i64>, step: Vec<i64>, c: i64, terms: u32) -> Self {
        FactorFamily {
            first,
            step,
            exponents: (1..=terms as i64).map(|m| c * m).collect(),
        }
    }

    pub fn class(&self, m: i64) -> Vec<i64> {
        self.first
            .iter()
            .zip(&self.step)
            .map(|(a, s)| a + (m - 1) * s)
            .collect()
    }
}

fn indicator(n: u32, a: u32, b: u32) -> Vec<i64> {
    (1..=n).map(|j| i64::from(a <= j && j <= b)).collect()
}

/// Factor families of the `Z_N` orbifold degree-zero product in variables
/// `t_j ↔ v_j`, with `δ ↔ t_1⋯t_N`; each family lists `terms` factors.
///
/// Inverse monomials `δ^m ∏_{a..b} t_j^{−1}` are written as
/// `δ^{m−1} ∏_{j∉[a,b]} t_j`.
pub fn dt0_factor_families(n: u32, terms: u32) -> Vec<FactorFamily> {
    let delta = vec![1; n as usize];
    let mut out = vec![FactorFamily::linear(
        delta.clone(),
        delta.clone(),
        -2 * n as i64,
        terms,
    )];
    for a in 1..n {
        for b in a..n {
            let inside = indicator(n, a, b);
            let plus: Vec<i64> = inside.iter().map(|x| x + 1).collect();
            let minus: Vec<i64> = inside.iter().map(|x| 1 - x).collect();
            out.push(FactorFamily::linear(plus, delta.clone(), -2, terms));
            out.push(FactorFamily::linear(minus, delta.clone(), -2, terms));
        }
    }
    out
}

/// The `Z_2` product written in the two character variables `(q_0, q_1)`:
/// `∏ (1 − q_0^m q_1^{m−1})^{−2m} (1 − q_0^m q_1^{m+1})^{−2m} (1 − q_0^m q_1^m)^{−4m}`.
pub fn two_character_families(terms: u32) -> Vec<FactorFamily> {
    let delta = vec![1, 1];
    vec![
        FactorFamily::linear(vec![1, 0], delta.clone(), -2, terms),
        FactorFamily::linear(vec![1, 2], delta.clone(), -2, terms),
        FactorFamily::linear(vec![1, 1], delta, -4, terms),
    ]
}

/// Expands a product of factor families to total degree `order`.
pub fn expand_families(
    families: &[FactorFamily],
    vars: usize,
    order: u32,
) -> Result<TruncatedSeries, BpsError> {
    let mut s = TruncatedSeries::one(vars, order);
    for (i, f) in families.iter().enumerate() {
        if f.first.len() != vars || f.step.len() != vars {
            return Err(BpsError::BadParameter(format!(
                "factor family {i} has the wrong number of variables"
            )));
        }
        for (k, &e) in f.exponents.iter().enumerate() {
            let class = f.class(k as i64 + 1);
            if class.iter().any(|&x| x < 0) || class.iter().all(|&x| x == 0) {
                return Err(BpsError::BadParameter(format!(
                    "factor family {i} leaves the positive cone at m = {}",
                    k + 1
                )));
            }
            let alpha: Vec<u32> = class.iter().map(|&x| x as u32).collect();
            s.mul_one_minus_pow(&alpha, e);
        }
    }
    Ok(s)
}

/// The degree-zero generating function of the `Z_N` orbifold to total degree `order`.
pub fn dt0_product(n: u32, order: u32) -> Result<TruncatedSeries, BpsError> {
    if n == 0 {
        return Err(BpsError::BadParameter("N must be at least 1".into()));
    }
    if order > MAX_ORDER {
        return Err(BpsError::InvalidTruncation(order));
    }
    // factors with m > order have degree > order
    expand_families(&dt0_factor_families(n, order.max(1)), n as usize, order)
}

/// Reads invariants off factor exponents: a family with exponents `c·m`
/// gives `Ω(γ_0 + n·s) = c` for all `n`, where `γ_0` is the first class
/// reduced by multiples of the step while it stays in the positive cone.
pub fn extract_bps(families: &[FactorFamily], window: Window) -> Result<BpsSpectrum, BpsError> {
    let rank = families.first().map_or(0, |f| f.first.len());
    let mut out = Vec::with_capacity(families.len());
    for (i, f) in families.iter().enumerate() {
        let c = match f.exponents.first() {
            Some(&c) => c,
            None => continue,
        };
        if f.exponents
            .iter()
            .enumerate()
            .any(|(k, &e)| e != c * (k as i64 + 1))
        {
            return Err(BpsError::NonlinearExponent(i));
        }
        if f.step.iter().all(|&x| x == 0) {
            return Err(BpsError::BadParameter(format!(
                "factor family {i} has zero step"
            )));
        }
        let mut base = f.first.clone();
        loop {
            let lower: Vec<i64> = base.iter().zip(&f.step).map(|(a, s)| a - s).collect();
            if lower.iter().any(|&x| x < 0) {
                break;
            }
            base = lower;
        }
        let zero = base.iter().all(|&x| x == 0);
        let step_name = if f.step.iter().all(|&x| x == 1) {
            "delta".to_string()
        } else {
            format!("{:?}", f.step)
        };
        if window.is_empty() {
            continue;
        }
        out.push(Family {
            base: DimensionVector(base),
            step: DimensionVector(f.step.clone()),
            step_name,
            omega: c,
            window,
            exclude_zero: zero,
        });
    }
    // canonical order: larger base classes first
    out.sort_by(|a: &Family, b: &Family| b.base.cmp(&a.base).then_with(|| a.step.cmp(&b.step)));
    Ok(BpsSpectrum {
        rank,
        families: out,
    })
}

/// Rewrites a spectrum in `v_j` coordinates in the basis `γ_i`, `v_j = γ_{2j−1} + γ_{2j}`.
pub fn v_to_gamma(s: &BpsSpectrum) -> BpsSpectrum {
    let conv = |c: &DimensionVector| DimensionVector(c.0.iter().flat_map(|&x| [x, x]).collect());
    BpsSpectrum {
        rank: 2 * s.rank,
        families: s
            .families
            .iter()
            .map(|f| Family {
                base: conv(&f.base),
                step: conv(&f.step),
                ..f.clone()
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn conifold_series_starts_like_the_macmahon_square() {
        let s = dt0_product(1, 3).unwrap();
        // ∏ (1 − t^m)^{−2m}: 1 + 2t + 7t^2 + 18t^3
        let c: Vec<BigInt> = (0..=3).map(|k| s.coefficient(&[k])).collect();
        assert_eq!(c, [1, 2, 7, 18].map(BigInt::from));
    }

    #[test]
    fn order_zero_is_one() {
        assert!(dt0_product(3, 0).unwrap().is_one());
        assert!(matches!(
            dt0_product(2, MAX_ORDER + 1),
            Err(BpsError::InvalidTruncation(_))
        ));
    }

    #[test]
    fn linear_families_only() {
        let mut f = dt0_factor_families(2, 3);
        f[0].exponents[2] += 1;
        assert_eq!(
            extract_bps(&f, Window::symmetric(1)),
            Err(BpsError::NonlinearExponent(0))
        );
        assert!(extract_bps(&[], Window::symmetric(1))
            .unwrap()
            .families
            .is_empty());
    }

    #[test]
    fn both_z2_forms_extract_the_same_table() {
        let w = Window::symmetric(4);
        let a = extract_bps(&dt0_factor_families(2, 6), w).unwrap().table();
        let b = extract_bps(&two_character_families(6), w).unwrap().table();
        assert_eq!(a, b);
    }
}
