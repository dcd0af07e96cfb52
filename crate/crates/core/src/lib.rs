//! Ramification structures on finite groups, counting of moduli components
//! of surfaces isogenous to a product via Hurwitz and automorphism orbits,
//! and the exact node/cusp combinatorics of their generic branch curves.
//!
//! The main family lives on (Z/2Z)^k, where group elements are bit-vectors
//! and counting reduces to multiplicity functions on nonzero vectors modulo
//! GL(k, 2). Small nonabelian groups go through multiplication tables and
//! explicit Hurwitz-orbit search.

pub mod branch_type;
pub mod error;
pub mod exact;
pub mod family;
pub mod group;
pub mod hurwitz;
pub mod invariants;
pub mod spherical;

pub use branch_type::BranchType;
pub use error::{Error, Result};
pub use exact::{Exact, RealValue};
pub use family::{
    family_component_count, family_params, find_witness, multiplet_report, multiplet_reports,
    FamilyCount, FamilyParams, MultipletReport, WitnessStatus,
};
pub use group::{gl_generators, Automorphism, BitMatrix, ElemId, FiniteGroup, GroupElement, IDENTITY};
pub use hurwitz::{
    count_components, hurwitz_move, hurwitz_orbit, pair_class_key, ComponentCount, Completeness,
    Convention, CountOptions, Direction, HurwitzOrbit, PairClassKey,
};
pub use invariants::{
    branch_curve_invariants, chisini_ok, chisini_threshold, main_theorem_counts,
    multiplet_bounds, plurigenus_dimension, surface_invariants, surface_invariants_from_types,
    BoundReport, BranchCurveInvariants, SurfaceInvariants,
};
pub use spherical::{
    enumerate_spherical_systems, genus_from_type, EnumerationMode, RamificationStructure,
    SphericalSystem,
};
