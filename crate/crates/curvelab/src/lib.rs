//! Certified length and intersection computations for curves on small
//! hyperbolic surfaces.
//!
//! The library works with four surface types — the thrice-punctured sphere,
//! the once-punctured torus, the four-times-punctured sphere, and the closed
//! genus-2 surface — and provides:
//!
//! * free-homotopy classes of curves as cyclically reduced words
//!   ([`topology`]),
//! * hyperbolic structures in Fenchel–Nielsen coordinates with explicit
//!   holonomy representations and geodesic length evaluation
//!   ([`hyperbolic`]),
//! * certified geometric intersection numbers via axis-linking in the
//!   holonomy group ([`intersection`]),
//! * searches over curve and mapping-class orbits with machine-checkable
//!   exhaustiveness certificates ([`search`]),
//! * experiment drivers: pinching probes, length-bound sweeps, short
//!   homology bases and thick-part sampling ([`experiments`]).
//!
//! Every numeric answer that feeds a decision is paired with either an exact
//! integer certificate or an explicit error margin; results that cannot be
//! certified are flagged rather than silently returned.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod hyperbolic;
pub mod intersection;
pub mod search;
pub mod topology;

pub use error::{Error, Result};
