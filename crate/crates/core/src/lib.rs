//! Finite rings with involution.
//!
//! Rings are built from a small constructor language (`Z(m)`, `M(n, Z(m))`,
//! `prod(A, B)`, `sub(A; g, ...)`), classified against the Rickart / Baer /
//! p.q.-Baer family of `*`-ring classes, and fed through the unitification
//! `R ⊕ K → (R ⊕ K) / N` whose right projections and central covers are
//! checked exhaustively.
//!
//! Every scan is a pure function of an immutable [`StarRing`]. Per-element
//! work goes through [`par`], which is rayon-backed when the `parallel`
//! feature is on and a plain iterator loop otherwise; all reductions pick the
//! lowest index so results do not depend on the worker count.

pub mod algebra;
pub mod annihilator;
pub mod classify;
pub mod corpus;
pub mod descriptor;
pub mod dsl;
mod error;
pub mod golden;
pub mod par;
pub mod projection;
pub mod report;
pub mod ring;
pub mod unitify;

pub use algebra::{ActionSpec, ScalarAlgebra};
pub use descriptor::{Literal, RingDescriptor};
pub use error::{Error, Result};
pub use report::{EmbeddingReport, PropertyReport};
pub use ring::{Elem, Limits, StarRing};
