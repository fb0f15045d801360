use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate::CliffordGate;
use crate::pauli::PauliString;

/// Pauli strings assigned to Majorana operators: `paulis[j]` represents
/// `γ_{j+1}`. Mode `k` (0-based) is built from `paulis[2k]` and `paulis[2k+1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajoranaMapping {
    n_qubits: usize,
    paulis: Vec<PauliString>,
}

impl MajoranaMapping {
    /// Accepts `2n` strings, or `2n + 1` when the redundant Majorana is included.
    pub fn new(n_qubits: usize, paulis: Vec<PauliString>) -> Result<Self> {
        if paulis.len() != 2 * n_qubits && paulis.len() != 2 * n_qubits + 1 {
            return Err(Error::InvalidMapping(format!(
                "expected {} or {} strings for {n_qubits} qubits, got {}",
                2 * n_qubits,
                2 * n_qubits + 1,
                paulis.len()
            )));
        }
        for p in &paulis {
            if p.n_qubits() != n_qubits {
                return Err(Error::Dimension {
                    expected: n_qubits,
                    found: p.n_qubits(),
                });
            }
        }
        for (i, p) in paulis.iter().enumerate() {
            for q in &paulis[i + 1..] {
                if p.stripped() == q.stripped() {
                    return Err(Error::InvalidMapping(format!("duplicate string {p}")));
                }
            }
        }
        Ok(MajoranaMapping { n_qubits, paulis })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_modes(&self) -> usize {
        self.n_qubits
    }

    pub fn includes_redundant(&self) -> bool {
        self.paulis.len() == 2 * self.n_qubits + 1
    }

    pub fn paulis(&self) -> &[PauliString] {
        &self.paulis
    }

    pub fn majorana(&self, j: usize) -> &PauliString {
        &self.paulis[j]
    }

    /// Checks that the first `2n` strings pairwise anticommute and are Hermitian.
    pub fn validate(&self) -> Result<()> {
        let core = &self.paulis[..2 * self.n_qubits];
        for (i, p) in core.iter().enumerate() {
            if p.phase_exp() % 2 != 0 {
                return Err(Error::InvalidMapping(format!(
                    "string {i} ({p}) is not Hermitian"
                )));
            }
            for (j, q) in core.iter().enumerate().skip(i + 1) {
                if p.commutes_with(q)? {
                    return Err(Error::InvalidMapping(format!(
                        "strings {i} ({p}) and {j} ({q}) commute"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// True iff every pair of distinct strings anticommutes on exactly one qubit.
    pub fn is_tree_compatible(&self) -> bool {
        self.paulis.iter().enumerate().all(|(i, p)| {
            self.paulis[i + 1..]
                .iter()
                .all(|q| p.anticommute_count(q).map(|c| c == 1).unwrap_or(false))
        })
    }

    /// Conjugates every string by `gates` (first gate acts first).
    pub fn conjugate(&self, gates: &[CliffordGate]) -> Result<MajoranaMapping> {
        let paulis = self
            .paulis
            .iter()
            .map(|p| p.conjugate_sequence(gates))
            .collect::<Result<Vec<_>>>()?;
        Ok(MajoranaMapping {
            n_qubits: self.n_qubits,
            paulis,
        })
    }

    /// Strings with phases removed, index by index.
    pub fn stripped(&self) -> Vec<PauliString> {
        self.paulis.iter().map(PauliString::stripped).collect()
    }

    /// Equality up to the sign of each string.
    pub fn eq_up_to_phase(&self, other: &MajoranaMapping) -> bool {
        self.n_qubits == other.n_qubits && self.stripped() == other.stripped()
    }
}
