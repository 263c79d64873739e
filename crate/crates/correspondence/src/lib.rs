//! The Givental spaces of both sides, the block transformation `U` from FJRW labels to
//! Chen-Ruan classes, and the checks that `U` is symplectic and carries `c_h I_h` to the
//! continued `I_g`.

pub mod identity;
pub mod omega;
pub mod rank;
pub mod symplectic;
pub mod ublock;

use thiserror::Error;

pub use identity::{c_h_power, c_h_table, check_main_identity, flatten_fjrw, MainIdentityReport};
pub use omega::{omega_pairing, Pairing, SideLabel, SymplecticVector};
pub use rank::{small_slice_rank, SliceRank};
pub use symplectic::{check_symplectic, SymplecticReport};
pub use ublock::{build_u, UBlock, UEntry, UMap};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CorrespondenceError {
    #[error("vectors and pairing come from different sides")]
    SideMismatch,
    #[error("no U column for {0}")]
    MissingColumn(String),
    #[error("label {0} outside the low-degree range")]
    Label(String),
    #[error(transparent)]
    Kernel(#[from] exact_kernel::KernelError),
    #[error(transparent)]
    Cy(#[from] cy_state::CyError),
    #[error(transparent)]
    Fjrw(#[from] fjrw_series::FjrwError),
    #[error(transparent)]
    Continuation(#[from] continuation::ContinuationError),
}
