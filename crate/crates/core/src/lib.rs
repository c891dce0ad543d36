//! Ground states of the Tavis-Cummings model.
//!
//! `N` two-level atoms share one cavity mode. The Hamiltonian conserves
//! `Λ = a†a + J_z`, so the ground state lives in a single Λ sector. This
//! crate computes it two ways and compares them:
//!
//! * [`exact`]: tridiagonal diagonalization of every sector and a scan for
//!   the global minimum;
//! * [`projected`]: the analytic projection of the semiclassical coherent
//!   state onto one sector, with closed-form observables in terms of
//!   associated Laguerre polynomials ([`specfun`]).
//!
//! [`sweep`] evaluates both over parameter points, sweeps and grids, and
//! [`cli`] wraps that in the `tcm-lab` command.

pub mod cli;
pub mod exact;
pub mod model;
pub mod projected;
pub mod specfun;
pub mod state;
pub mod sweep;

pub use exact::{fidelity, ground_state, QuantumGroundState};
pub use model::{classify_region, critical_point, CriticalPoint, Lambda, ModelParams, PhaseRegion, SectorBasis};
pub use projected::{ObservableSet, ProjectedState};
pub use state::SectorState;
pub use sweep::SweepRecord;
