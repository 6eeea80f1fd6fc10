//! Brane tilings on the torus `R²/Γ`.

mod faces;
mod kasteleyn;
mod lattice;
mod matchings;
mod polygon;
mod tiling;

pub use faces::{dual_quiver, Embedding};
pub use kasteleyn::{kasteleyn_polygon, kasteleyn_signs, LaurentPoly};
pub use lattice::{change_lattice, smith_normal_form, RelatticeResult};
pub use matchings::{enumerate_matchings, matching_class, matching_polygon, PerfectMatching};
pub use polygon::{convex_hull, unimodular_equivalent, LatticePolygon, Point};
pub use tiling::{hexagonal_dp3, square_tiling, BraneTiling, Color, Edge, Node, TorusLattice};

use crate::quiver::QuiverError;
use crate::symmetry::SymmetryError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DimerError {
    #[error("{0}")]
    MalformedFaceStructure(String),
    #[error("{black} black nodes but {white} white nodes")]
    UnbalancedColors { black: usize, white: usize },
    #[error("no Kasteleyn sign assignment exists")]
    NoKasteleynSigns,
    #[error("{0}")]
    NotASuperlattice(String),
    #[error("{0}")]
    NotInvariant(String),
    #[error("{0}")]
    InvalidTiling(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

impl DimerError {
    pub fn code(&self) -> &'static str {
        match self {
            DimerError::MalformedFaceStructure(_) => "MalformedFaceStructure",
            DimerError::UnbalancedColors { .. } => "UnbalancedColors",
            DimerError::NoKasteleynSigns => "NoKasteleynSigns",
            DimerError::NotASuperlattice(_) => "NotASuperlattice",
            DimerError::NotInvariant(_) => "NotInvariant",
            DimerError::InvalidTiling(_) => "InvalidTiling",
            DimerError::Quiver(e) => e.code(),
            DimerError::Symmetry(e) => e.code(),
        }
    }
}
