//! Exact computations around the 2-periodic triangulated category attached
//! to a Dynkin diagram: its translation quiver `Γ̂_cyc`, the dg-preprojective
//! algebra whose homology gives morphism spaces, and the root system realized
//! by the classes of indecomposables.

pub mod cli;
pub mod dgalgebra;
pub mod dynkin;
pub mod error;
pub mod exactla;
pub mod hatquiver;
pub mod matrix;
pub mod meshcat;
pub mod roots;

pub use dynkin::{DiagramSpec, DynkinDiagram, Family, TreeGraph};
pub use error::{Error, Result};
pub use exactla::Limits;
pub use hatquiver::{HatQuiver, HatVertex, HeightFunction};
pub use matrix::IntMatrix;
