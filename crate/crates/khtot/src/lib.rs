//! Khovanov-type total homology of link diagrams, computed through a
//! Szabó-style spectral sequence complex over `F2[W, H]`.
//!
//! The crate is `no_std` (with `alloc`); enable the `std` feature for
//! `std::error::Error` integration and `parallel` for rayon-based assembly.
#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod diagram;
pub mod algebra;
pub mod contrib;
pub mod planar;
pub mod complex;
pub mod invariants;
pub mod corpus;
pub mod rules;

pub use diagram::{parse_pd, DiagramError, DiagramOptions, EdgeId, LinkDiagram, Move, Slot};
