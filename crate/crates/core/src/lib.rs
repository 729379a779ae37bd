//! Exact calculator for diagonal elementary abelian 2-group actions on
//! affine space, projective space and Fermat quadrics.
//!
//! The pipeline runs [`group`] → [`loci`] → [`inertia`] → [`sod`]: fixed
//! loci are cut into sectors, assembled into inertia components with their
//! coarse moduli, and ordered by decreasing dimension into a semiorthogonal
//! decomposition. [`euler`] computes equivariant Euler pairings of the
//! pieces' generators, [`mutlat`] mutates exceptional sequences at the level
//! of Grothendieck groups, and [`verify`] cross-checks everything against
//! independent counts.

pub mod cli;
pub mod euler;
pub mod group;
pub mod inertia;
pub mod loci;
pub mod mutlat;
pub mod presets;
pub mod sod;
pub mod verify;

pub use euler::{euler_pairing, gram, report_gram, GramMatrix, KObject};
pub use group::{parse_spec, ActionSpec, Character, GroupElement, SpaceKind};
pub use inertia::{components, CoarseType, InertiaComponent};
pub use mutlat::{apply_script, BlockMove, Direction, ExceptionalSequence};
pub use presets::Preset;
pub use sod::{assemble, msodc_plan, MutationPlan, SodReport};
pub use verify::{CheckResult, CheckStatus};
