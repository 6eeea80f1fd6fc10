use std::collections::BTreeMap;

use super::BpsError;
use crate::catalog::catalog_get;
use crate::quiver::{skew_euler_form, DimensionVector, SkewForm};

/// Charge lattice `Z^{2N}` of `Y^{N,0}` with basis `γ_1 … γ_{2N}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeData {
    pub group_order: u32,
    pub skew: SkewForm,
    /// `g1…`, `delta`, `v1…`
    pub classes: BTreeMap<String, DimensionVector>,
}

impl ChargeData {
    pub fn yn0(n: u32) -> Result<Self, BpsError> {
        let entry =
            catalog_get("yN0", Some(n)).map_err(|e| BpsError::BadParameter(e.to_string()))?;
        let rank = 2 * n as usize;
        let mut classes = BTreeMap::new();
        for i in 0..rank {
            classes.insert(format!("g{}", i + 1), DimensionVector::basis(rank, i));
        }
        classes.insert("delta".to_string(), free_point_class(n));
        for j in 0..n {
            classes.insert(format!("v{}", j + 1), point_class(j, n)?);
        }
        Ok(ChargeData {
            group_order: n,
            skew: skew_euler_form(&entry.quiver),
            classes,
        })
    }

    pub fn rank(&self) -> usize {
        2 * self.group_order as usize
    }

    pub fn delta(&self) -> &DimensionVector {
        &self.classes["delta"]
    }

    /// `v_j` for `1 ≤ j ≤ N`.
    pub fn v(&self, j: u32) -> &DimensionVector {
        &self.classes[&format!("v{j}")]
    }
}

fn check_k(k: u32, n: u32) -> Result<(), BpsError> {
    if n == 0 || k >= n {
        Err(BpsError::IndexOutOfRange {
            index: k as i64,
            bound: n,
        })
    } else {
        Ok(())
    }
}

/// Class of `O_C(n) ⊗ χ_k`: `γ_{2k+1} + n·v_{k+1}`.
pub fn equivariant_class(n: i64, k: u32, group_order: u32) -> Result<DimensionVector, BpsError> {
    check_k(k, group_order)?;
    let rank = 2 * group_order as usize;
    let base = DimensionVector::basis(rank, 2 * k as usize);
    Ok(&base + &point_class(k, group_order)?.scale(n))
}

/// Class of `O_C(−1)[1] ⊗ χ_k`: `γ_{2k+2}`.
pub fn shifted_class(k: u32, group_order: u32) -> Result<DimensionVector, BpsError> {
    check_k(k, group_order)?;
    Ok(DimensionVector::basis(
        2 * group_order as usize,
        2 * k as usize + 1,
    ))
}

/// Class of `O_y ⊗ χ_k` for a point on the curve: `γ_{2k+1} + γ_{2k+2}`.
pub fn point_class(k: u32, group_order: u32) -> Result<DimensionVector, BpsError> {
    check_k(k, group_order)?;
    let rank = 2 * group_order as usize;
    Ok(&DimensionVector::basis(rank, 2 * k as usize)
        + &DimensionVector::basis(rank, 2 * k as usize + 1))
}

/// Class of a free orbit of points: `δ = Σ γ_i`.
pub fn free_point_class(group_order: u32) -> DimensionVector {
    DimensionVector(vec![1; 2 * group_order as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_classes() {
        assert_eq!(
            equivariant_class(0, 0, 2).unwrap(),
            DimensionVector(vec![1, 0, 0, 0])
        );
        assert_eq!(
            equivariant_class(2, 1, 2).unwrap(),
            DimensionVector(vec![0, 0, 3, 2])
        );
        assert_eq!(
            shifted_class(1, 2).unwrap(),
            DimensionVector(vec![0, 0, 0, 1])
        );
        assert_eq!(free_point_class(2), DimensionVector(vec![1, 1, 1, 1]));
        assert!(matches!(
            equivariant_class(0, 2, 2),
            Err(BpsError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn triangle_relation() {
        for k in 0..3 {
            let oc = equivariant_class(0, k, 3).unwrap();
            assert_eq!(
                &oc + &shifted_class(k, 3).unwrap(),
                point_class(k, 3).unwrap()
            );
            // O_C(-1) = -O_C(-1)[1]
            assert_eq!(
                equivariant_class(-1, k, 3).unwrap(),
                shifted_class(k, 3).unwrap().scale(-1)
            );
        }
    }

    #[test]
    fn charge_data_for_y20() {
        let c = ChargeData::yn0(2).unwrap();
        assert_eq!(c.rank(), 4);
        assert_eq!(c.skew.get(0, 1), 2);
        assert_eq!(c.skew.apply(c.delta()).unwrap(), DimensionVector::zeros(4));
    }
}
