//! Small-cancellation machinery for prime, reduced, alternating knot diagrams.
//!
//! The pipeline runs diagram → presentation → complex:
//!
//! * [`diagram`] parses planar diagram (PD) codes, traces the faces of the
//!   projection and fixes the outer region, basepoint and crossing-visit order.
//! * [`presentation`] reads the augmented Dehn presentation (one generator per
//!   region, one length-4 relator per crossing) and checks the `C''(4)`/`T(4)`
//!   grid conditions.
//! * [`geodesic`] solves the word problem by free reduction and chain
//!   replacement; [`oracle`] is an independent brute-force check of it.
//! * [`peripheral`] builds the fundamental block and the periodic peripheral
//!   complex, and decides (conjugate-)peripherality by walking words in it.
//! * [`arcs`] enumerates the Wirtinger arcs, Wirtinger loops, Dehn arcs and
//!   short arcs of a diagram and checks each one for peripherality.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arcs;
pub mod diagram;
mod error;
pub mod geodesic;
pub mod oracle;
pub mod peripheral;
pub mod presentation;
pub mod word;

pub use error::{Error, Result};
pub use word::{Generator, Letter, Word};
