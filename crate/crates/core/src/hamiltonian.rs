//! Qubit Hamiltonians as sums of phase-free Pauli strings.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate::{flatten_units, CliffordGate, GateUnit};
use crate::pauli::PauliString;

/// Coefficients below this magnitude are dropped when terms are combined.
pub const COMBINE_TOL: f64 = 1e-12;

pub(crate) fn i_pow(k: u8) -> Complex64 {
    match k & 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `Σ c_j P_j` with every `P_j` stored at phase `+1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QubitJson", into = "QubitJson")]
pub struct QubitHamiltonian {
    n_qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl QubitHamiltonian {
    pub fn new(n_qubits: usize) -> Self {
        QubitHamiltonian {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a Hamiltonian by adding each `(coeff, string)` in turn.
    pub fn from_terms<I>(n_qubits: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Complex64, PauliString)>,
    {
        let mut h = Self::new(n_qubits);
        for (c, p) in terms {
            h.add_term(c, p)?;
        }
        Ok(h)
    }

    /// Adds `coeff · p`, folding the phase of `p` into the coefficient.
    pub fn add_term(&mut self, coeff: Complex64, p: PauliString) -> Result<()> {
        if p.n_qubits() != self.n_qubits {
            return Err(Error::Dimension {
                expected: self.n_qubits,
                found: p.n_qubits(),
            });
        }
        let c = coeff * i_pow(p.phase_exp());
        let key = p.stripped();
        let entry = self
            .terms
            .entry(key.clone())
            .or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if entry.norm() < COMBINE_TOL {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn strings(&self) -> impl Iterator<Item = &PauliString> {
        self.terms.keys()
    }

    pub fn coeff(&self, p: &PauliString) -> Option<Complex64> {
        self.terms
            .get(&p.stripped())
            .map(|c| c * i_pow(p.phase_exp()))
    }

    /// Operator sum `self + other`.
    pub fn sum(&self, other: &QubitHamiltonian) -> Result<Self> {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(*c, p.clone())?;
        }
        Ok(out)
    }

    /// Operator product `self · other`.
    pub fn product(&self, other: &QubitHamiltonian) -> Result<Self> {
        let mut out = Self::new(self.n_qubits);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add_term(a * b, p.multiply(q)?)?;
            }
        }
        Ok(out)
    }

    /// Hermitian adjoint.
    pub fn adjoint(&self) -> Self {
        QubitHamiltonian {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.clone(), c.conj()))
                .collect(),
        }
    }

    /// Copy without the identity string.
    pub fn without_identity(&self) -> Self {
        let mut h = self.clone();
        h.terms.retain(|p, _| !p.is_identity());
        h
    }

    pub fn total_weight(&self) -> u64 {
        self.terms.keys().map(|p| p.weight() as u64).sum()
    }

    pub fn avg_weight(&self) -> Result<Ratio<u64>> {
        if self.terms.is_empty() {
            return Err(Error::Domain(
                "average weight of an empty Hamiltonian".into(),
            ));
        }
        Ok(Ratio::new(self.total_weight(), self.terms.len() as u64))
    }

    /// True when every coefficient is real within `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    /// `U H U†` for the circuit `U` given in application order.
    pub fn conjugate(&self, gates: &[CliffordGate]) -> Result<Self> {
        for g in gates {
            g.validate(self.n_qubits)?;
        }
        let mut out = Self::new(self.n_qubits);
        for (p, c) in &self.terms {
            out.add_term(*c, p.conjugate_sequence(gates)?)?;
        }
        Ok(out)
    }

    pub fn apply_units(&self, units: &[GateUnit]) -> Result<Self> {
        self.conjugate(&flatten_units(units))
    }

    /// Maximum coefficient difference against `other`, over the union of strings.
    pub fn max_abs_diff(&self, other: &QubitHamiltonian) -> f64 {
        let zero = Complex64::new(0.0, 0.0);
        let mut worst: f64 = 0.0;
        for (p, c) in &self.terms {
            worst = worst.max((c - other.terms.get(p).unwrap_or(&zero)).norm());
        }
        for (p, c) in &other.terms {
            if !self.terms.contains_key(p) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct QubitJson {
    n_qubits: usize,
    terms: Vec<QubitTermJson>,
}

#[derive(Serialize, Deserialize)]
struct QubitTermJson {
    coeff: Complex64,
    pauli: PauliString,
}

impl From<QubitHamiltonian> for QubitJson {
    fn from(h: QubitHamiltonian) -> Self {
        QubitJson {
            n_qubits: h.n_qubits,
            terms: h
                .terms
                .into_iter()
                .map(|(pauli, coeff)| QubitTermJson { coeff, pauli })
                .collect(),
        }
    }
}

impl TryFrom<QubitJson> for QubitHamiltonian {
    type Error = Error;

    fn try_from(j: QubitJson) -> Result<Self> {
        QubitHamiltonian::from_terms(j.n_qubits, j.terms.into_iter().map(|t| (t.coeff, t.pauli)))
    }
}
