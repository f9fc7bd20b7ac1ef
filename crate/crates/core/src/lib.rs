//! Boundary-edges code calculus for benzenoids.

pub mod code;
pub mod lattice;

pub use code::{Code, CodeError, ConvexityClass, ConvexityKind, Deficit};
pub use lattice::{
    canonical_cells, condensation_class, embed, inner_dual, trace, walk, Benzenoid, BoundaryWalk,
    CellSet, Condensation, Direction, HexCell, InnerDual, LatticeError, LatticeVertex,
};
pub mod families;
pub mod enumeration;
pub mod render;
