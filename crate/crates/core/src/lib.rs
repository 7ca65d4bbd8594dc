//! Fault-tolerant resource estimation for periodic-solid electronic
//! Hamiltonians via sparse qubitization of a Majorana-string LCU.
//!
//! The numerical core is generic over the floating-point type through
//! [`Real`]; the aliases below fix it to `f64`.

pub mod costing;
pub mod error;
pub mod ftqc;
pub mod hamiltonian;
pub mod index;
pub mod lcu;
pub mod pipeline;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use index::{CompositeIndex, Lattice};
pub use scalar::Real;

pub type Hamiltonian = hamiltonian::HamiltonianTensors<f64>;
pub type LcuTermSet = lcu::LcuTermSet<f64>;
pub type LcuTerm = lcu::LcuTerm<f64>;
pub type LambdaBreakdown = lcu::LambdaBreakdown<f64>;
