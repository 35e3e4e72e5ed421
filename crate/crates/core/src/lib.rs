//! Small-graph toolkit for dissociation numbers, spectral radii and
//! exhaustive extremal searches.
//!
//! The crate is organised around an immutable bitset [`graph::Graph`]
//! (order at most 64). On top of it sit constructors for the named
//! families used throughout ([`families`]), exact dissociation-number
//! engines ([`dissociation`]), Perron-vector computations ([`spectral`]),
//! graph surgeries ([`transforms`]), isomorphism-free enumeration
//! ([`enumeration`]) and the extremal search harness ([`extremal`]).

pub mod canon;
pub mod dissociation;
pub mod enumeration;
pub mod extremal;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod spectral;
pub mod transforms;

pub use canon::{canonical_form, canonical_relabeling, is_isomorphic, CanonicalForm};
pub use dissociation::{diss_bruteforce, diss_exact, diss_tree, DissResult};
pub use families::FamilySpec;
pub use graph::{Graph, GraphError};
pub use spectral::{spectral_radius, SpectralResult};
