//! Charges, central charges, BPS spectra, degree-zero products and
//! ray automorphisms on the invariant locus.

mod central;
mod charge;
mod dt0;
mod series;
mod spectrum;
mod svg;
mod wallcrossing;

pub use central::{
    format_gaussian, parse_gaussian, ray_diagram, validate_central_charge, CentralCharge, Gaussian,
    Ray,
};
pub use charge::{equivariant_class, free_point_class, point_class, shifted_class, ChargeData};
pub use dt0::{
    dt0_factor_families, dt0_product, expand_families, extract_bps, two_character_families,
    v_to_gamma, FactorFamily, MAX_ORDER,
};
pub use series::TruncatedSeries;
pub use spectrum::{class_label, invariant_spectrum, BpsSpectrum, Family, Window};
pub use svg::svg_render;
pub use wallcrossing::{
    check_invariant_triviality, ks_ray_automorphism, trivial_rhp_solution_check, RayAutomorphism,
};

use crate::symmetry::SymmetryError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BpsError {
    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: i64, bound: u32 },
    #[error("invalid window {0}")]
    InvalidWindow(String),
    #[error("central charge vanishes on {0}")]
    VanishingCentralCharge(String),
    #[error("central charge is not invariant: {0}")]
    NotInvariant(String),
    #[error("invalid truncation order {0}")]
    InvalidTruncation(u32),
    #[error("factor family {0} has an exponent that is not linear in m")]
    NonlinearExponent(usize),
    #[error("ray classes do not lie in a strict half-space")]
    NotInHalfSpace,
    #[error("no invariant supplied for class {0}")]
    MissingInvariant(String),
    #[error("ray is not G-stable: {0}")]
    NotGStable(String),
    #[error("{0}")]
    BadParameter(String),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

impl BpsError {
    pub fn code(&self) -> &'static str {
        match self {
            BpsError::IndexOutOfRange { .. } => "IndexOutOfRange",
            BpsError::InvalidWindow(_) => "InvalidWindow",
            BpsError::VanishingCentralCharge(_) => "VanishingCentralCharge",
            BpsError::NotInvariant(_) => "NotInvariant",
            BpsError::InvalidTruncation(_) => "InvalidTruncation",
            BpsError::NonlinearExponent(_) => "NonlinearExponent",
            BpsError::NotInHalfSpace => "NotInHalfSpace",
            BpsError::MissingInvariant(_) => "MissingInvariant",
            BpsError::NotGStable(_) => "NotGStable",
            BpsError::BadParameter(_) => "BadParameter",
            BpsError::Symmetry(e) => e.code(),
        }
    }
}
