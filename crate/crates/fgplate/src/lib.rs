//! Finite-element engine for free vibration and thermal statics of
//! functionally graded Reissner-Mindlin plates with mesh-independent
//! cutouts and cracks.
//!
//! The plate is discretized with a field-consistent 4-node shear flexible
//! quadrilateral. Cutouts and cracks are represented implicitly (level sets
//! and crack polylines) and handled through partition-of-unity enrichment:
//! Heaviside functions across crack faces, branch functions at crack tips,
//! and subcell integration over the material side of cut elements. Through
//! thickness the material grades from metal to ceramic by a power law,
//! homogenized with the Mori-Tanaka scheme, with a steady-state thermal
//! profile driving thermal resultants and a geometric (initial stress)
//! stiffness.

pub mod error;
pub mod geometry;
pub mod material;
pub mod mesh;
pub mod section;

pub use error::{Error, Result};
pub use material::{ConstituentSpec, MaterialSystem, PointProperties, ThermalBc};
