use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::charge::ChargeData;
use super::BpsError;
use crate::quiver::DimensionVector;

/// Inclusive integer range `lo..=hi`; `hi = lo − 1` is the empty window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

const MAX_WINDOW: i64 = 1 << 20;

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self, BpsError> {
        if hi < lo - 1 || hi.saturating_sub(lo) > MAX_WINDOW {
            return Err(BpsError::InvalidWindow(format!("{lo}:{hi}")));
        }
        Ok(Window { lo, hi })
    }

    pub fn symmetric(d: i64) -> Self {
        Window { lo: -d, hi: d }
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl FromStr for Window {
    type Err = BpsError;

    /// Parses `A:B`.
    fn from_str(s: &str) -> Result<Self, BpsError> {
        let bad = || BpsError::InvalidWindow(s.to_string());
        let (a, b) = s.split_once(':').ok_or_else(bad)?;
        Window::new(
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        )
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

/// Classes `base + n·step` for `n` in the window, all with invariant `omega`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub base: DimensionVector,
    pub step: DimensionVector,
    /// Display name of the step (`delta`, `v1`, …).
    pub step_name: String,
    pub omega: i64,
    pub window: Window,
    pub exclude_zero: bool,
}

impl Family {
    pub fn classes(&self) -> impl Iterator<Item = (i64, DimensionVector)> + '_ {
        self.window
            .iter()
            .map(|n| (n, &self.base + &self.step.scale(n)))
            .filter(|(_, c)| !(self.exclude_zero && c.is_zero()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpsSpectrum {
    pub rank: usize,
    pub families: Vec<Family>,
}

impl BpsSpectrum {
    pub fn empty(rank: usize) -> Self {
        BpsSpectrum {
            rank,
            families: Vec::new(),
        }
    }

    /// Every class with its invariant. Panics if two families overlap.
    pub fn table(&self) -> BTreeMap<DimensionVector, i64> {
        let mut out = BTreeMap::new();
        for f in &self.families {
            for (_, c) in f.classes() {
                if let Some(prev) = out.insert(c.clone(), f.omega) {
                    panic!("families overlap at {:?} ({prev} and {})", c.0, f.omega);
                }
            }
        }
        out
    }

    pub fn omega(&self, class: &DimensionVector) -> i64 {
        self.families
            .iter()
            .filter(|f| f.classes().any(|(_, c)| &c == class))
            .map(|f| f.omega)
            .next()
            .unwrap_or(0)
    }

    /// Text table: one line per family.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for f in &self.families {
            let zero = if f.exclude_zero { ", n != 0" } else { "" };
            s.push_str(&format!(
                "Omega({} + n*{}) = {}    n in [{}, {}]{zero}\n",
                class_label(&f.base),
                f.step_name,
                f.omega,
                f.window.lo,
                f.window.hi
            ));
        }
        s
    }

    /// JSON list of `{"class": {"g1": …}, "omega": …, "family": {"step": …, "range": [lo, hi]}}`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct FamilyRef<'a> {
            step: &'a str,
            range: [i64; 2],
            #[serde(skip_serializing_if = "std::ops::Not::not")]
            exclude_zero: bool,
        }
        #[derive(Serialize)]
        struct Row<'a> {
            class: BTreeMap<String, i64>,
            omega: i64,
            family: FamilyRef<'a>,
        }
        let rows: Vec<Row> = self
            .families
            .iter()
            .map(|f| Row {
                class: class_map(&f.base),
                omega: f.omega,
                family: FamilyRef {
                    step: &f.step_name,
                    range: [f.window.lo, f.window.hi],
                    exclude_zero: f.exclude_zero,
                },
            })
            .collect();
        crate::json::to_pretty(&rows)
    }
}

fn class_map(c: &DimensionVector) -> BTreeMap<String, i64> {
    c.0.iter()
        .enumerate()
        .map(|(i, &x)| (format!("g{}", i + 1), x))
        .collect()
}

/// `2g1+g2-g3` style label; `0` for the zero class.
pub fn class_label(c: &DimensionVector) -> String {
    let mut s = String::new();
    for (i, &x) in c.0.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let sign = if x < 0 {
            "-"
        } else if s.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = if x.abs() == 1 {
            String::new()
        } else {
            x.abs().to_string()
        };
        s.push_str(&format!("{sign}{mag}g{}", i + 1));
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

/// Closed-form spectrum of the `Z_N`-invariant stability conditions on `Y^{N,0}`.
///
/// Families: `γ_{2j−1} + n v_j` and `γ_{2j} + n v_j` with `Ω = 1`;
/// `Σ_{a..b} v_j + nδ` and `Σ_{j∉[a,b]} v_j + nδ` (the latter equal to
/// `−Σ_{a..b} v_j + (n+1)δ`) with `Ω = −2` for `0 < a ≤ b < N`;
/// `nδ`, `n ≠ 0`, with `Ω = −2N`.
pub fn invariant_spectrum(n: u32, window: Window) -> Result<BpsSpectrum, BpsError> {
    let charges = ChargeData::yn0(n)?;
    let rank = charges.rank();
    if window.is_empty() {
        return Ok(BpsSpectrum::empty(rank));
    }
    let mut families = Vec::new();
    for j in 1..=n {
        for i in [2 * j - 2, 2 * j - 1] {
            families.push(Family {
                base: DimensionVector::basis(rank, i as usize),
                step: charges.v(j).clone(),
                step_name: format!("v{j}"),
                omega: 1,
                window,
                exclude_zero: false,
            });
        }
    }
    let delta = charges.delta().clone();
    for a in 1..n {
        for b in a..n {
            let inside = (a..=b).fold(DimensionVector::zeros(rank), |acc, j| &acc + charges.v(j));
            let outside = &delta - &inside;
            for base in [inside, outside] {
                families.push(Family {
                    base,
                    step: delta.clone(),
                    step_name: "delta".into(),
                    omega: -2,
                    window,
                    exclude_zero: false,
                });
            }
        }
    }
    families.push(Family {
        base: DimensionVector::zeros(rank),
        step: delta,
        step_name: "delta".into(),
        omega: -2 * n as i64,
        window,
        exclude_zero: true,
    });
    Ok(BpsSpectrum { rank, families })
}
