use std::cmp::Ordering;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::charge::ChargeData;
use super::spectrum::{class_label, BpsSpectrum, Window};
use super::BpsError;
use crate::quiver::{parse_rational, DimensionVector};

pub type Gaussian = Complex<BigRational>;

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` with rational `a`, `b`.
pub fn parse_gaussian(s: &str) -> Option<Gaussian> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let imag = |t: &str| -> Option<BigRational> {
        let body = t.strip_suffix('i')?;
        match body {
            "" | "+" => Some(BigRational::from_integer(1.into())),
            "-" => Some(BigRational::from_integer((-1).into())),
            _ => parse_rational(body.strip_prefix('+').unwrap_or(body)),
        }
    };
    if !s.ends_with('i') {
        return Some(Complex::new(parse_rational(&s)?, BigRational::zero()));
    }
    // split at the last sign that is not leading and not part of a fraction
    let split = s
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last();
    match split {
        Some(k) => Some(Complex::new(parse_rational(&s[..k])?, imag(&s[k..])?)),
        None => Some(Complex::new(BigRational::zero(), imag(&s)?)),
    }
}

pub fn format_gaussian(z: &Gaussian) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => z.re.to_string(),
        (true, false) => format!("{}i", z.im),
        _ => {
            let sign = if z.im.is_negative() { "-" } else { "+" };
            format!("{}{sign}{}i", z.re, z.im.abs())
        }
    }
}

/// Central charge given on the basis `γ_i`, extended linearly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharge {
    pub values: Vec<Gaussian>,
}

impl CentralCharge {
    pub fn new(values: Vec<Gaussian>) -> Self {
        CentralCharge { values }
    }

    /// `Z(γ_i) = i` for odd `i` and `1` for even `i`: invariant and generic.
    pub fn standard(rank: usize) -> Self {
        let one = BigRational::from_integer(1.into());
        let zero = BigRational::zero();
        CentralCharge {
            values: (0..rank)
                .map(|i| {
                    if i % 2 == 0 {
                        Complex::new(zero.clone(), one.clone())
                    } else {
                        Complex::new(one.clone(), zero.clone())
                    }
                })
                .collect(),
        }
    }

    pub fn eval(&self, c: &DimensionVector) -> Gaussian {
        let mut z = Complex::new(BigRational::zero(), BigRational::zero());
        for (v, &k) in self.values.iter().zip(&c.0) {
            if k != 0 {
                let k = BigRational::from_integer(k.into());
                z += Complex::new(&v.re * &k, &v.im * &k);
            }
        }
        z
    }
}

/// Checks invariance under the `Z_N` shift, `Z(δ) ≠ 0`, and that no
/// `Ω = 1` class in the window has vanishing central charge.
pub fn validate_central_charge(
    z: &CentralCharge,
    group_order: u32,
    window: Window,
) -> Result<(), BpsError> {
    let charges = ChargeData::yn0(group_order)?;
    let rank = charges.rank();
    if z.values.len() != rank {
        return Err(BpsError::BadParameter(format!(
            "{} central charge values for rank {rank}",
            z.values.len()
        )));
    }
    for i in 0..rank {
        let j = (i + 2) % rank;
        if z.values[i] != z.values[j] {
            return Err(BpsError::NotInvariant(format!(
                "Z(g{}) != Z(g{})",
                i + 1,
                j + 1
            )));
        }
    }
    if z.eval(charges.delta()).is_zero() {
        return Err(BpsError::VanishingCentralCharge("delta".into()));
    }
    for j in 1..=group_order {
        for i in [2 * j - 2, 2 * j - 1] {
            for n in window.iter() {
                let c = &DimensionVector::basis(rank, i as usize) + &charges.v(j).scale(n);
                if z.eval(&c).is_zero() {
                    return Err(BpsError::VanishingCentralCharge(class_label(&c)));
                }
            }
        }
    }
    Ok(())
}

fn upper(z: &Gaussian) -> bool {
    z.im.is_positive() || (z.im.is_zero() && z.re.is_positive())
}

fn cross(a: &Gaussian, b: &Gaussian) -> BigRational {
    &a.re * &b.im - &a.im * &b.re
}

/// Orders nonzero values by argument in `[0, 2π)`.
fn phase_cmp(a: &Gaussian, b: &Gaussian) -> Ordering {
    upper(b).cmp(&upper(a)).then_with(|| {
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

/// A ray `R_{>0}·direction` with the classes whose central charge lies on it.
#[derive(Clone, Debug, PartialEq)]
pub struct Ray {
    pub direction: Gaussian,
    /// Argument in `[0, 2π)`, for display only.
    pub phase: f64,
    pub classes: Vec<(DimensionVector, i64)>,
    /// Ray through `Z(δ)` or `−Z(δ)`.
    pub central: bool,
}

/// Groups the spectrum classes with family index in `window` by the ray of `Z`,
/// sorted by phase.
pub fn ray_diagram(
    z: &CentralCharge,
    spectrum: &BpsSpectrum,
    window: Window,
) -> Result<Vec<Ray>, BpsError> {
    let mut points: Vec<(Gaussian, DimensionVector, i64)> = Vec::new();
    for f in &spectrum.families {
        for (n, c) in f.classes() {
            if !window.contains(n) {
                continue;
            }
            let zc = z.eval(&c);
            if zc.is_zero() {
                return Err(BpsError::VanishingCentralCharge(class_label(&c)));
            }
            points.push((zc, c, f.omega));
        }
    }
    points.sort_by(|a, b| phase_cmp(&a.0, &b.0).then_with(|| a.1.cmp(&b.1)));
    let zdelta = z.eval(&DimensionVector(vec![1; spectrum.rank]));
    let mut rays: Vec<Ray> = Vec::new();
    for (zc, c, omega) in points {
        match rays.last_mut() {
            Some(r) if phase_cmp(&r.direction, &zc) == Ordering::Equal => {
                r.classes.push((c, omega))
            }
            _ => {
                let phase = {
                    let (x, y) = (zc.re.to_f64().unwrap_or(0.0), zc.im.to_f64().unwrap_or(0.0));
                    let t = y.atan2(x);
                    if t < 0.0 {
                        t + std::f64::consts::TAU
                    } else {
                        t
                    }
                };
                let central = !zdelta.is_zero() && cross(&zdelta, &zc).is_zero();
                rays.push(Ray {
                    direction: zc,
                    phase,
                    classes: vec![(c, omega)],
                    central,
                });
            }
        }
    }
    Ok(rays)
}

#[cfg(test)]
mod tests {
    use super::super::spectrum::invariant_spectrum;
    use super::*;

    fn g(s: &str) -> Gaussian {
        parse_gaussian(s).unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(format_gaussian(&g("i")), "1i");
        assert_eq!(format_gaussian(&g("1/2-3/4i")), "1/2-3/4i");
        assert_eq!(format_gaussian(&g("-2")), "-2");
        assert_eq!(format_gaussian(&g("-i")), "-1i");
        assert!(parse_gaussian("x").is_none());
    }

    #[test]
    fn validation_cases() {
        let w = Window::symmetric(3);
        assert!(validate_central_charge(&CentralCharge::standard(4), 2, w).is_ok());
        let mut z = CentralCharge::standard(4);
        z.values[2] = g("2i");
        assert!(matches!(
            validate_central_charge(&z, 2, w),
            Err(BpsError::NotInvariant(_))
        ));
        let z = CentralCharge::new(vec![g("1"), g("-1"), g("1"), g("-1")]);
        assert!(
            matches!(validate_central_charge(&z, 2, w), Err(BpsError::VanishingCentralCharge(c)) if c == "delta")
        );
    }

    #[test]
    fn omega_one_partners_share_a_ray() {
        let z = CentralCharge::standard(4);
        let s = invariant_spectrum(2, Window::symmetric(2)).unwrap();
        let rays = ray_diagram(&z, &s, Window::symmetric(2)).unwrap();
        let c1 = DimensionVector(vec![2, 1, 0, 0]);
        let c3 = DimensionVector(vec![0, 0, 2, 1]);
        let r = rays
            .iter()
            .find(|r| r.classes.iter().any(|(c, _)| *c == c1))
            .unwrap();
        assert!(r.classes.iter().any(|(c, _)| *c == c3));
        assert_eq!(r.classes.len(), 2);
        assert_eq!(rays.iter().filter(|r| r.central).count(), 2);
        assert!(rays.windows(2).all(|w| w[0].phase < w[1].phase));
    }

    #[test]
    fn empty_window_leaves_basic_rays() {
        let z = CentralCharge::standard(6);
        let s = invariant_spectrum(3, Window::symmetric(0)).unwrap();
        let rays = ray_diagram(&z, &s, Window::symmetric(0)).unwrap();
        // γ_odd on i, γ_even on 1, and the central ray through 1+i
        assert_eq!(rays.len(), 3);
        assert_eq!(rays.iter().filter(|r| r.central).count(), 1);
    }
}
