//! Exact-arithmetic kernel for the LMO invariant of knot surgeries and the
//! perturbative invariant of the projective group.
//!
//! The diagrammatic side builds Jacobi diagram series (wheels, the wheeling
//! element, gluings, formal Gaussian integration) and pushes them through a
//! Lie-algebra weight system. The Lie side evaluates Le's formula on
//! root-system data. [`pipeline`] puts both together and checks, order by
//! order in `h`, that the weighted LMO invariant equals `|H_1|^{|Phi_+|}`
//! times the perturbative invariant.
//!
//! No floating point is used anywhere; every number is an exact rational.

pub mod balg;
pub mod diagrams;
mod linalg;
pub mod liews;
pub mod pipeline;
pub mod qseries;
pub mod rootsys;

pub use qseries::{HSeries, Rational};
