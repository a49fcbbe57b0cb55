//! Certified small feedback vertex sets.
//!
//! Two constructive solvers produce a feedback vertex set together with the
//! rational bound it provably meets:
//!
//! * [`cubic::solve_cubic`]: 2-connected graphs of maximum degree 3 get a set
//!   with `3|S| <= n + 2`.
//! * [`girth::solve_planar_weighted`]: plane graphs whose cycles all weigh at
//!   least `g` get a set with `3g|S| <= 4w(G)`.
//!
//! Both are checked against the exact branch-and-bound in [`oracle`].

pub mod certificate;
pub mod cubic;
pub mod embed;
pub mod error;
pub mod girth;
pub mod graph;
pub mod instances;
pub mod oracle;

pub use certificate::{Bound, BoundKind, FvsCertificate, ReductionStep, RuleCase, RuleId};
pub use embed::{embed, faces_of, Face, MergerSpec, PlaneGraph, RotationSystem};
pub use error::{Error, Result};
pub use graph::{Edge, Girth, Graph, VertexId, Weight};
