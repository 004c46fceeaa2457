//! Green potentials on the unit disk.
//!
//! Pseudohyperbolic farthest-point distances and their Riesz measures,
//! Green equilibrium measures via Fekete points, the sharp constant of the
//! infimum inequality for Green potentials, and the matching sup-norm
//! inequalities for finite Blaschke products.

pub mod blaschke;
pub mod cli;
pub mod constants;
pub mod equilibrium;
pub mod error;
pub mod geometry;
pub mod potentials;
pub mod quadrature;
pub mod report;
pub mod riesz;
pub mod sets;
pub mod suites;

pub use blaschke::{BlaschkeProduct, ExtremalSweepRow};
pub use constants::{ConstantsReport, InequalityCheck};
pub use equilibrium::{EquilibriumResult, FeketeResult};
pub use error::{Error, Result};
pub use geometry::{ComplexPoint, GreenValue, MoebiusMap};
pub use potentials::DiscreteMeasure;
pub use riesz::{GridDensity, GridSpec};
pub use sets::CompactSet;
