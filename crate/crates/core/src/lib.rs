//! Fermion-to-qubit mapping optimization by Clifford conjugation.

pub mod campaign;
pub mod error;
pub mod fermion;
pub mod gate;
pub mod hamiltonian;
pub mod mapping;
pub mod oracle;
pub mod pauli;
pub mod search;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use fermion::{FermionicHamiltonian, FermionicTerm, LadderOp};
pub use gate::{CliffordGate, GateUnit};
pub use hamiltonian::QubitHamiltonian;
pub use mapping::MajoranaMapping;
pub use pauli::{Pauli, PauliString};
pub use tree::TernaryTree;
