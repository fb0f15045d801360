//! Clifford gates, composite search units and the circuit text format.
//!
//! Circuit files hold one gate per line in application order:
//!
//! ```text
//! CNOT 0 1
//! H 0
//! S 2
//! SDG 2
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CliffordGate {
    H(usize),
    S(usize),
    /// Inverse phase gate; only produced by [`invert_sequence`] and the
    /// transform synthesizers.
    Sdg(usize),
    Cnot {
        control: usize,
        target: usize,
    },
}

impl CliffordGate {
    pub fn cnot(control: usize, target: usize) -> Self {
        CliffordGate::Cnot { control, target }
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> {
        let (a, b) = match *self {
            CliffordGate::H(q) | CliffordGate::S(q) | CliffordGate::Sdg(q) => (q, None),
            CliffordGate::Cnot { control, target } => (control, Some(target)),
        };
        std::iter::once(a).chain(b)
    }

    pub fn inverse(&self) -> Self {
        match *self {
            CliffordGate::S(q) => CliffordGate::Sdg(q),
            CliffordGate::Sdg(q) => CliffordGate::S(q),
            g => g,
        }
    }

    pub fn is_cnot(&self) -> bool {
        matches!(self, CliffordGate::Cnot { .. })
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
        }
        if let CliffordGate::Cnot { control, target } = *self {
            if control == target {
                return Err(Error::Domain(format!(
                    "CNOT control and target coincide on qubit {control}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CliffordGate::H(q) => write!(f, "H {q}"),
            CliffordGate::S(q) => write!(f, "S {q}"),
            CliffordGate::Sdg(q) => write!(f, "SDG {q}"),
            CliffordGate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
        }
    }
}

impl FromStr for CliffordGate {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let mut it = line.split_whitespace();
        let name = it
            .next()
            .ok_or_else(|| Error::Parse("empty gate line".into()))?;
        let mut idx = || -> Result<usize> {
            it.next()
                .ok_or_else(|| Error::Parse(format!("missing qubit index in {line:?}")))?
                .parse()
                .map_err(|e| Error::Parse(format!("bad qubit index in {line:?}: {e}")))
        };
        let g = match name.to_ascii_uppercase().as_str() {
            "H" => CliffordGate::H(idx()?),
            "S" => CliffordGate::S(idx()?),
            "SDG" => CliffordGate::Sdg(idx()?),
            "CNOT" | "CX" => {
                let c = idx()?;
                let t = idx()?;
                if c == t {
                    return Err(Error::Parse(format!("CNOT with equal qubits in {line:?}")));
                }
                CliffordGate::cnot(c, t)
            }
            other => return Err(Error::Parse(format!("unknown gate {other:?}"))),
        };
        if it.next().is_some() {
            return Err(Error::Parse(format!("trailing tokens in {line:?}")));
        }
        Ok(g)
    }
}

impl Serialize for CliffordGate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CliffordGate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Reverses `gates` and inverts each one, so that conjugating by the result
/// undoes conjugation by `gates`.
pub fn invert_sequence(gates: &[CliffordGate]) -> Vec<CliffordGate> {
    gates.iter().rev().map(CliffordGate::inverse).collect()
}

/// A single search move: a CNOT, optionally preceded by `H` or `S` on its control.
///
/// As an operator the unit is `CNOT_ct · G_c`, so `G_c` acts first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "UPPERCASE")]
pub enum GateUnit {
    Cnot {
        control: usize,
        target: usize,
    },
    #[serde(rename = "CNOT_H")]
    CnotH {
        control: usize,
        target: usize,
    },
    #[serde(rename = "CNOT_S")]
    CnotS {
        control: usize,
        target: usize,
    },
}

impl GateUnit {
    pub fn control(&self) -> usize {
        match *self {
            GateUnit::Cnot { control, .. }
            | GateUnit::CnotH { control, .. }
            | GateUnit::CnotS { control, .. } => control,
        }
    }

    pub fn target(&self) -> usize {
        match *self {
            GateUnit::Cnot { target, .. }
            | GateUnit::CnotH { target, .. }
            | GateUnit::CnotS { target, .. } => target,
        }
    }

    /// Elementary gates in application order.
    pub fn gates(&self) -> Vec<CliffordGate> {
        let (c, t) = (self.control(), self.target());
        let cx = CliffordGate::cnot(c, t);
        match self {
            GateUnit::Cnot { .. } => vec![cx],
            GateUnit::CnotH { .. } => vec![CliffordGate::H(c), cx],
            GateUnit::CnotS { .. } => vec![CliffordGate::S(c), cx],
        }
    }
}

/// Flattens units into their elementary gates.
pub fn flatten_units(units: &[GateUnit]) -> Vec<CliffordGate> {
    units.iter().flat_map(GateUnit::gates).collect()
}

pub fn write_circuit(gates: &[CliffordGate]) -> String {
    let mut s = String::new();
    for g in gates {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}

pub fn parse_circuit(text: &str) -> Result<Vec<CliffordGate>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| {
            l.parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))
        })
        .collect()
}
