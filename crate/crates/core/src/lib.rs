//! Algorithmic-complexity estimation for small binary objects.
//!
//! Complexity values come from the frequency with which small
//! two-dimensional Turing machines produce a block ([`ctm`]), extended to
//! larger matrices by block decomposition ([`bdm`]). Graphs are measured
//! through their adjacency matrices, minimized over node labellings
//! ([`graphs`]). Entropy and LZW code length ([`baselines`]) serve as
//! comparison measures, and [`experiments`] runs the end-to-end studies.

pub mod baselines;
pub mod bdm;
pub mod ctm;
pub mod error;
pub mod experiments;
pub mod graphs;
pub mod matrix;
pub mod polyomino;
pub mod seed;
pub mod stats;
pub mod turmite;

pub use bdm::{bdm, decompose, Boundary, Decomposition};
pub use ctm::{CtmMeta, CtmTable};
pub use error::{Error, Result};
pub use graphs::{Graph, Labelling, LabellingMode};
pub use matrix::BinaryMatrix;
pub use polyomino::Polyomino;
pub use turmite::{Machine2D, RunOutcome};
