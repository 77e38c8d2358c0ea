//! Coefficient rings and linear algebra for the chain complexes.

pub mod f2;
pub mod poly;
pub mod reduce;
pub mod sparse;

pub use f2::{BitMatrix, BitVec};
pub use poly::{Mono, Poly, Ring};
pub use reduce::{AlgebraError, Grading, Homology, HomologyGroup, SparseComplex};
pub use sparse::SparseEliminator;
