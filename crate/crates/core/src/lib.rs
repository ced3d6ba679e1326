//! Margulis spacetimes at desk scale: affine deformations of free groups
//! in `SO_0(n,n+1) ⋉ R^{2n+1}`, their Margulis invariant spectra computed
//! two independent ways, properness certificates by sign uniformity,
//! orbit-growth entropy, intersection numbers, and the pressure form.
//!
//! The crate is organized along the pipeline:
//!
//! * [`linalg`] — the quadratic form, adjugates, kernel extraction;
//! * [`words`] — free-group words and conjugacy-class enumeration;
//! * [`affine`] — group elements, representations, tangent directions;
//! * [`invariant`] — neutral vectors and the Margulis invariant;
//! * [`spectrum`] — spectrum tables, sign scans, entropy, intersection;
//! * [`pressure`] — the pressure quadratic form and convexity scans;
//! * [`families`] — seeded ping-pong families used as test beds.
//!
//! All computations are pure functions over immutable data; parallel
//! sweeps sort their output, so results are independent of scheduling.

pub mod affine;
pub mod families;
pub mod invariant;
pub mod linalg;
pub mod pressure;
pub mod spectrum;
pub mod tolerances;
pub mod words;

pub use affine::{AffineMap, Representation, RepresentationFile, TangentCocycle};
pub use invariant::{AlphaRecord, NeutralData};
pub use linalg::QuadraticSpace;
pub use spectrum::{EntropyEstimate, IntersectionEstimate, SpectrumTable};
pub use words::{ClassMode, ConjClass, Word};
