//! Involutive singquandles and the coloring invariants of singular link diagrams.
//!
//! A singquandle is an involutive quandle `(X, *)` equipped with two extra
//! binary operations `R1`, `R2` that colour the two outgoing semiarcs of a
//! singular crossing. Counting colorings of a diagram by such a structure gives
//! an invariant of singular links.
//!
//! The crate is organised bottom-up:
//!
//! * [`table`] and [`quandle`]: finite operation tables and the classical
//!   rack/quandle predicates.
//! * [`axioms`]: the singquandle axioms as expression trees, and the checker.
//! * [`alexander`]: the linear family over `Z_n`.
//! * [`diagram`] and [`tangle`]: singular diagrams, their text format, braid-like
//!   words and their boundary relations.
//! * [`coloring`]: brute-force and Smith-normal-form coloring counts.
//! * [`enumeration`]: exhaustive search for all singquandles of small order.
//!
//! Integer linear algebra in [`smith`] is generic over the integer scalar; the
//! aliases below pin the common choices.

pub mod alexander;
pub mod axioms;
pub mod coloring;
pub mod diagram;
pub mod enumeration;
mod error;
pub mod format;
pub mod quandle;
pub mod smith;
pub mod table;
pub mod tangle;

pub use alexander::{AlexanderParams, LinearOps};
pub use axioms::{AxiomReport, AxiomStatus, Singquandle};
pub use coloring::{ColoringReport, ModularSystem};
pub use diagram::{Crossing, SingularDiagram};
pub use error::{Error, Result};
pub use table::{Color, OpTable};
pub use tangle::{Letter, TangleRelation, TangleWord};

/// Integer matrix over machine words; enough for systems reduced modulo `n`.
pub type IntMatrix = smith::Matrix<i64>;
/// Integer matrix with 128-bit entries, for unreduced eliminations of moderate size.
pub type WideMatrix = smith::Matrix<i128>;
/// Arbitrary-precision integer matrix; the exact route for integer Smith forms.
pub type BigMatrix = smith::Matrix<num_bigint::BigInt>;
