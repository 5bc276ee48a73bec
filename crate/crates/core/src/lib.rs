//! Lorentz boosts, Wigner rotations and the entanglement of two spin-½ particles.
//!
//! The crate models two massive particles whose momenta are restricted to two
//! orthogonal values `p₊`, `p₋` along `±ẑ`, so the full state lives in four qubits
//! ordered `[momA, momB, spinA, spinB]`. A boost along `x̂` acts on each particle's
//! spin through its momentum-dependent Wigner rotation, which redistributes
//! entanglement among the partitions of that four-qubit space.
//!
//! Modules, bottom-up:
//! - [`linalg`]: small dense complex matrices, partial traces, Jacobi eigensolver.
//! - [`kinematics`]: boosts, Wigner rotations, SU(2) lift.
//! - [`qstate`]: state families, density matrices, partitions.
//! - [`relboost`]: boosted two-particle states and the Gaussian-packet experiment.
//! - [`entanglement`]: entropies, concurrence, PPT, partition entanglement, closed forms.
//! - [`bellcorr`]: CHSH, Horodecki criterion, Pauli-Ljubanski observables.
//! - [`runner`]: scenario reports and CSV sweeps behind the command-line tool.

pub mod bellcorr;
pub mod entanglement;
pub mod error;
pub mod kinematics;
pub mod linalg;
pub mod qstate;
pub mod quadrature;
pub mod relboost;
pub mod runner;
pub mod tolerances;

pub use error::{Error, Result};
