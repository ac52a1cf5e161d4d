//! Effective block-diagonal Hamiltonians for the driven two-transmon
//! cross-resonance gate.
//!
//! Two back ends produce the block-diagonal model: an exact least-action
//! block-diagonalization ([`least_action`]) and an order-by-order canonical
//! transformation series ([`perturbation`]). The [`pipeline`] module chains
//! dressing, the rotating-wave approximation and either back end into a
//! table of two-qubit Pauli rates; [`sweep`] runs grids of those.

pub mod error;
pub mod frames;
pub mod least_action;
pub mod linalg;
pub mod operators;
pub mod perturbation;
pub mod pipeline;
pub mod sweep;

pub use error::{Error, Result};
pub use frames::{CrosstalkSpec, DressedSystem, DriveSpec};

pub use least_action::{BlockDiagResult, EigenAssignment};
pub use perturbation::{PerturbationProblem, PerturbationSeries};
pub use pipeline::{Method, MethodTag, PauliTable};
pub use sweep::{SweepConfig, SweepRow, SweepTable};
pub use operators::{BlockPartition, DeviceParams, HermitianOp, LadderOrder, Ordering, PauliLabel};



