//! Small-scale oracles: dense second-quantized Hamiltonians, Pauli
//! expansions, LCU reconstruction and statevector checks of the symmetry
//! restoration circuits.

pub mod circuit;
mod dense;
pub mod majorana;
mod pauli;
pub mod restoration;
mod suite;

pub use dense::{dense_hamiltonian, lcu_reconstruct, DenseOperator, MAX_ORACLE_QUBITS};
pub use pauli::{pauli_expansion, pauli_l1, pauli_matrix, PauliSum};
pub use restoration::{
    verify_majorana_restoration, verify_spin_restoration, verify_translational_restoration, RestorationCheck,
};
pub use suite::{run_circuit_suite, run_instance_checks, Check, VerificationReport};
