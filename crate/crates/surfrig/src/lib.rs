//! Rigidity analysis for bar-joint frameworks constrained to families of
//! concentric cylinders, cones and ellipsoids.
//!
//! The crate provides:
//!
//! - [`graph`]: simple undirected graphs, (2,k)-sparsity via the pebble game,
//!   vertex connectivity, edge addition and 1-extension.
//! - [`numeric`]: dense matrices over two scalar backends (exact rationals and
//!   `f64` with tolerances) with rank, nullspace, cokernel and PSD kernels.
//! - [`surface`]: the three concentric surface families, their constraint
//!   functions, tangency vectors and induced families.
//! - [`rigidity`]: surface rigidity matrices, equilibrium stresses, stress and
//!   configuration matrices, energy functions and global-rigidity certificates.
//! - [`extension`]: the geometric 1-extension with stress lift and the
//!   construction-certification pipeline.
//! - [`fixtures`]: the three exact base frameworks on induced cylinders with
//!   their equilibrium stresses.

pub mod extension;
pub mod fixtures;
pub mod graph;
pub mod numeric;
pub mod rigidity;
pub mod surface;

pub use graph::Graph;
pub use numeric::{LinAlg, Matrix, Scalar};
pub use rigidity::{Framework, Stress};
pub use surface::{Point3, SurfaceFamily, SurfaceKind};
