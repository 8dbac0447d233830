//! Computations with surface-group representations into `PSL(2, C)`:
//! length inequalities for Fuchsian groups, spiraling of quasi-Fuchsian limit
//! sets, and certificates separating quasi-Fuchsian metric classes from all
//! negatively curved Riemannian ones.

pub mod boundary;
pub mod certificates;
pub mod error;
pub mod fingerprint;
pub mod moebius;
pub mod representations;
pub mod surface_group;

pub use error::{Error, Result};
pub use moebius::{MoebiusMap, Point3, ProjPoint, C64};
pub use representations::{bend, fuchsian_octagon, RepKind, Representation};
pub use surface_group::{GroupPresentation, Letter, Word};
