//! Second-quantized Hamiltonians, model builders and their qubit encodings.

mod encode;
mod models;

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use encode::{encode, MajoranaPolynomial};
pub use models::{exchange, hopping_1d, hopping_2d, hubbard_2d, single_ops, snake_index};

/// Tolerance used when checking that a Hamiltonian equals its adjoint.
const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
enum Kind {
    #[serde(rename = "c")]
    Create,
    #[serde(rename = "a")]
    Annihilate,
}

/// A creation (`a†`) or annihilation (`a`) operator on one mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(Kind, usize)", into = "(Kind, usize)")]
pub struct LadderOp {
    pub creation: bool,
    pub mode: usize,
}

impl LadderOp {
    pub fn create(mode: usize) -> Self {
        LadderOp {
            creation: true,
            mode,
        }
    }

    pub fn annihilate(mode: usize) -> Self {
        LadderOp {
            creation: false,
            mode,
        }
    }

    pub fn adjoint(self) -> Self {
        LadderOp {
            creation: !self.creation,
            mode: self.mode,
        }
    }
}

impl From<(Kind, usize)> for LadderOp {
    fn from((k, mode): (Kind, usize)) -> Self {
        LadderOp {
            creation: k == Kind::Create,
            mode,
        }
    }
}

impl From<LadderOp> for (Kind, usize) {
    fn from(op: LadderOp) -> Self {
        let k = if op.creation {
            Kind::Create
        } else {
            Kind::Annihilate
        };
        (k, op.mode)
    }
}

/// `coeff · ops[0] ops[1] …` (leftmost operator acts last).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FermionicTerm {
    pub coeff: Complex64,
    pub ops: Vec<LadderOp>,
}

impl FermionicTerm {
    pub fn new(coeff: Complex64, ops: Vec<LadderOp>) -> Self {
        FermionicTerm { coeff, ops }
    }

    pub fn real(coeff: f64, ops: Vec<LadderOp>) -> Self {
        FermionicTerm::new(Complex64::new(coeff, 0.0), ops)
    }

    pub fn adjoint(&self) -> FermionicTerm {
        FermionicTerm {
            coeff: self.coeff.conj(),
            ops: self.ops.iter().rev().map(|o| o.adjoint()).collect(),
        }
    }

    /// Operator list in a canonical order with the reordering sign applied.
    ///
    /// Operators on distinct modes anticommute, so such a product is sorted
    /// by `(mode, kind)` with one sign flip per transposition. Products that
    /// repeat a mode are left as written.
    fn canonical(&self) -> (Vec<LadderOp>, Complex64) {
        let mut ops = self.ops.clone();
        let mut modes: Vec<usize> = ops.iter().map(|o| o.mode).collect();
        modes.sort_unstable();
        if modes.windows(2).any(|w| w[0] == w[1]) {
            return (ops, self.coeff);
        }
        let mut sign = 1.0;
        for i in 1..ops.len() {
            let mut j = i;
            while j > 0 && ops[j] < ops[j - 1] {
                ops.swap(j, j - 1);
                sign = -sign;
                j -= 1;
            }
        }
        (ops, self.coeff * sign)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FermionicJson")]
pub struct FermionicHamiltonian {
    n_modes: usize,
    hermitian: bool,
    terms: Vec<FermionicTerm>,
}

#[derive(Deserialize)]
struct FermionicJson {
    n_modes: usize,
    hermitian: bool,
    terms: Vec<FermionicTerm>,
}

impl TryFrom<FermionicJson> for FermionicHamiltonian {
    type Error = Error;

    fn try_from(j: FermionicJson) -> Result<Self> {
        FermionicHamiltonian::new(j.n_modes, j.terms, j.hermitian)
    }
}

impl FermionicHamiltonian {
    /// Validates mode indices and, when `hermitian` is set, that every term's
    /// adjoint is present with the conjugate coefficient.
    pub fn new(n_modes: usize, terms: Vec<FermionicTerm>, hermitian: bool) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::Domain(
                "a Hamiltonian needs at least one mode".into(),
            ));
        }
        for t in &terms {
            if let Some(op) = t.ops.iter().find(|o| o.mode >= n_modes) {
                return Err(Error::ModeOutOfRange {
                    mode: op.mode,
                    n_modes,
                });
            }
        }
        let h = FermionicHamiltonian {
            n_modes,
            hermitian,
            terms,
        };
        if hermitian {
            h.check_hermitian()?;
        }
        Ok(h)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn terms(&self) -> &[FermionicTerm] {
        &self.terms
    }

    fn collect(terms: impl Iterator<Item = FermionicTerm>) -> BTreeMap<Vec<LadderOp>, Complex64> {
        let mut out: BTreeMap<Vec<LadderOp>, Complex64> = BTreeMap::new();
        for t in terms {
            let (ops, c) = t.canonical();
            *out.entry(ops).or_default() += c;
        }
        out
    }

    fn check_hermitian(&self) -> Result<()> {
        let ours = Self::collect(self.terms.iter().cloned());
        let adj = Self::collect(self.terms.iter().map(FermionicTerm::adjoint));
        for key in ours.keys().chain(adj.keys()) {
            let a = ours.get(key).copied().unwrap_or_default();
            let b = adj.get(key).copied().unwrap_or_default();
            if (a - b).norm() > HERMITIAN_TOL * (1.0 + a.norm()) {
                return Err(Error::Schema(format!(
                    "Hamiltonian marked hermitian but the adjoint of {key:?} does not match"
                )));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }
}
