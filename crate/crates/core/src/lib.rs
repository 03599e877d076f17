//! Purities and Concentratable Entanglement of graph states, computed from
//! stabilizer generators alone.
//!
//! The reduced state of a graph state on a qubit set `B` has purity `1/k`,
//! where `k` is the number of distinct stabilizer generator sets obtained by
//! measuring the complement in Z over every outcome. Those sets differ only in
//! their signs, and the sign pattern is a linear function of the outcome, so
//! `k = 2^r` with `r` the GF(2) rank of the cut matrix `Γ[A, B]`.
//!
//! Modules:
//! - [`gf2`]: bit-packed linear algebra over GF(2).
//! - [`graph`], [`graph6`], [`canon`]: graphs, interchange formats and
//!   canonical forms.
//! - [`stabilizer`]: tableaux, Z-measurement updates, distinct-set counts.
//! - [`metrics`] with [`dyadic`]: exact purities, CE, rank indices, bounds.
//! - [`dense`]: state-vector oracle used to cross-check all of the above.
//! - [`survey`]: isomorph-free enumeration and CE sweeps.

pub mod canon;
pub mod dense;
pub mod dyadic;
pub mod gf2;
pub mod graph;
pub mod graph6;
pub mod metrics;
pub mod stabilizer;
pub mod survey;

pub use dyadic::DyadicRational;
pub use gf2::{Gf2Matrix, Gf2Vector};
pub use graph::{Family, Graph, QubitSet};
pub use metrics::{concentratable_entanglement, purity, purity_spectrum, rank_index};
