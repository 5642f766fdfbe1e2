//! Best approximations in finite quasi-cone metric spaces.
//!
//! Distances take values in Q^n ordered by a polyhedral cone `P`
//! (`s ⪯ r` iff `r - s ∈ P`). Everything is computed with exact rationals, so
//! order predicates, axiom checks and best-approximation sets carry no
//! tolerance.
//!
//! * [`cone`]: cones in halfspace form and the orders `⪯`, `≺`, `≪`.
//! * [`qcm`]: finite quasi-cone metric instances and exhaustive axiom checks.
//! * [`approx`] and [`front`]: forward/backward best-approximation sets and
//!   minimal fronts.
//! * [`witness`]: witness tables that certify best-set membership.
//! * [`chebyshev`]: uniqueness-style classification of candidate sets.

pub mod approx;
pub mod axioms;
pub mod chebyshev;
pub mod cone;
pub mod error;
pub mod front;
pub mod generate;
pub mod linalg;
pub mod qcm;
pub mod rational;
pub mod vector;
pub mod witness;

pub use approx::{best_approximation_set, duality_check, ApproximationResult, Direction, DominanceStats, Query};
pub use axioms::{Axiom, AxiomCheck, AxiomReport, AxiomStatus, Counterexample};
pub use chebyshev::{
    classify, counterexample_to_theorem_form, ChebyshevReport, Embedding, QueryFamily, TheoremCounterexample,
};
pub use cone::{check_cone_axioms, ConeSampling, OrderedSpace, PolyhedralCone};
pub use error::{Error, Result};
pub use front::{minimal_front_dnc, minimal_front_naive, FrontMethod, FrontOutcome};
pub use qcm::{alpha_distance, direction_distance, grid, PointId, Provenance, QcmInstance};
pub use rational::{rat, Rational};
pub use vector::Vector;
pub use witness::{
    canonical_witness, search_counterexample_witness, verify_witness_for_element, verify_witness_for_set,
    WitnessCondition, WitnessPool, WitnessTable, WitnessVerdict,
};
