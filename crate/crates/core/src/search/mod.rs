//! Simulated annealing and best-first search over Clifford conjugations.

mod bfs;
mod frame;
mod sa;

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fermion::{encode, FermionicHamiltonian, MajoranaPolynomial};
use crate::gate::GateUnit;
use crate::hamiltonian::QubitHamiltonian;
use crate::tree::{enumerate_mappings_bounded, TernaryTree};

pub use bfs::{bfs_run, BfsBudget};
pub use sa::{sa_run, SaConfig};

/// Which composite units a search may propose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateSetId {
    C,
    CH,
    CHS,
}

impl GateSetId {
    fn kinds(self) -> usize {
        match self {
            GateSetId::C => 1,
            GateSetId::CH => 2,
            GateSetId::CHS => 3,
        }
    }

    /// Number of distinct units on `n` qubits.
    pub fn size(self, n: usize) -> usize {
        self.kinds() * n * n.saturating_sub(1)
    }

    /// Every unit, in sampling index order.
    pub fn units(self, n: usize) -> Vec<GateUnit> {
        (0..self.size(n)).map(|i| unit_at(n, i)).collect()
    }
}

impl fmt::Display for GateSetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for GateSetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "C" => Ok(GateSetId::C),
            "CH" => Ok(GateSetId::CH),
            "CHS" => Ok(GateSetId::CHS),
            _ => Err(Error::Parse(format!(
                "unknown gate set {s:?}; expected C, CH or CHS"
            ))),
        }
    }
}

fn unit_at(n: usize, index: usize) -> GateUnit {
    let pairs = n * (n - 1);
    let (kind, pair) = (index / pairs, index % pairs);
    let control = pair / (n - 1);
    let t = pair % (n - 1);
    let target = if t >= control { t + 1 } else { t };
    match kind {
        0 => GateUnit::Cnot { control, target },
        1 => GateUnit::CnotH { control, target },
        _ => GateUnit::CnotS { control, target },
    }
}

/// Uniform draw from the units of `gs` on `n` qubits.
pub fn sample_unit<R: Rng + ?Sized>(gs: GateSetId, n: usize, rng: &mut R) -> Result<GateUnit> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "gate units need at least 2 qubits, got {n}"
        )));
    }
    Ok(unit_at(n, rng.gen_range(0..gs.size(n))))
}

/// Inverse-temperature profile `β(t) = ln(c1 + c2·t) · c3 / C` for `t > t_min`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub t_min: u64,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule {
            c1: 1.0,
            c2: 1.0,
            c3: 1.0,
            t_min: 0,
        }
    }
}

impl Schedule {
    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !(ok(self.c1) && self.c2.is_finite() && self.c2 >= 0.0 && ok(self.c3)) {
            return Err(Error::Domain(format!("invalid schedule {self:?}")));
        }
        Ok(())
    }
}

pub fn beta(t: u64, s: &Schedule, current_cost: f64) -> Result<f64> {
    if current_cost <= 0.0 || current_cost.is_nan() {
        return Err(Error::Domain(format!(
            "cost must be positive, got {current_cost}"
        )));
    }
    if t <= s.t_min {
        return Ok(0.0);
    }
    Ok((s.c1 + s.c2 * t as f64).ln() * s.c3 / current_cost)
}

/// Metropolis rule: downhill and flat moves always pass, uphill ones with
/// probability `exp(-β ΔC)`. Only uphill moves consume randomness.
pub(crate) fn metropolis<R: Rng + ?Sized>(delta: f64, beta: f64, rng: &mut R) -> bool {
    delta <= 0.0 || rng.gen::<f64>() < (-beta * delta).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CostFn {
    #[default]
    Avg,
    Total,
}

impl CostFn {
    pub fn of_total(self, total: u64, n_terms: usize) -> Ratio<u64> {
        match self {
            CostFn::Avg => Ratio::new(total, n_terms.max(1) as u64),
            CostFn::Total => Ratio::from_integer(total),
        }
    }

    pub fn of(self, h: &QubitHamiltonian) -> Ratio<u64> {
        self.of_total(h.total_weight(), h.len())
    }
}

impl FromStr for CostFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "avg" | "average" => Ok(CostFn::Avg),
            "total" => Ok(CostFn::Total),
            _ => Err(Error::Parse(format!(
                "unknown cost function {s:?}; expected avg or total"
            ))),
        }
    }
}

pub(crate) fn ratio_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Sa,
    Bfs,
}

/// Outcome of one search run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub gate_set: GateSetId,
    pub schedule: Option<Schedule>,
    pub t_max: u64,
    pub cost_fn: CostFn,
    pub n_terms: usize,
    pub initial_cost: Ratio<u64>,
    pub best_cost: Ratio<u64>,
    /// Accepted units in order.
    pub moves: Vec<GateUnit>,
    pub best_prefix_len: usize,
    /// True when `moves` was truncated to the best prefix.
    pub compacted: bool,
    /// Search iterations (SA) or node expansions (BFS) performed.
    pub iterations: u64,
    pub cost_trace: Vec<(u64, f64)>,
}

impl RunRecord {
    pub fn best_moves(&self) -> &[GateUnit] {
        &self.moves[..self.best_prefix_len]
    }

    /// Applies the best prefix to `h` and returns the result with its cost.
    pub fn replay(&self, h: &QubitHamiltonian) -> Result<(QubitHamiltonian, Ratio<u64>)> {
        let out = h.apply_units(self.best_moves())?;
        let c = self.cost_fn.of(&out);
        Ok((out, c))
    }

    pub fn trace_csv(&self) -> String {
        let mut s = String::from("t,cost\n");
        for (t, c) in &self.cost_trace {
            s.push_str(&format!("{t},{c}\n"));
        }
        s
    }
}

/// `U H U†` for the units in application order.
pub fn apply_sequence(h: &QubitHamiltonian, units: &[GateUnit]) -> Result<QubitHamiltonian> {
    h.apply_units(units)
}

/// `1 - opt / conv`.
pub fn percent_reduction(opt: f64, conv: f64) -> Result<f64> {
    if conv <= 0.0 || conv.is_nan() {
        return Err(Error::Domain(format!(
            "conventional weight must be positive, got {conv}"
        )));
    }
    Ok(1.0 - opt / conv)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Conventional {
    Jw,
    Bk,
    Balanced,
}

impl Conventional {
    pub const ALL: [Conventional; 3] = [Conventional::Jw, Conventional::Bk, Conventional::Balanced];

    pub fn tree(self, n: usize) -> Result<TernaryTree> {
        match self {
            Conventional::Jw => TernaryTree::jordan_wigner(n),
            Conventional::Bk => TernaryTree::bravyi_kitaev(n),
            Conventional::Balanced => TernaryTree::balanced(n),
        }
    }
}

impl FromStr for Conventional {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jw" => Ok(Conventional::Jw),
            "bk" => Ok(Conventional::Bk),
            "balanced" => Ok(Conventional::Balanced),
            _ => Err(Error::Parse(format!(
                "unknown mapping {s:?}; expected jw, bk or balanced"
            ))),
        }
    }
}

/// Costs of a Hamiltonian under the three conventional tree mappings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConventionalReport {
    pub cost_fn: CostFn,
    pub n_terms: usize,
    pub costs: Vec<(Conventional, Ratio<u64>)>,
    pub best: Conventional,
    pub best_cost: Ratio<u64>,
}

impl ConventionalReport {
    pub fn cost(&self, which: Conventional) -> Ratio<u64> {
        self.costs
            .iter()
            .find(|(c, _)| *c == which)
            .map(|(_, v)| *v)
            .expect("all conventional mappings are evaluated")
    }

    /// Percent reduction of `optimized` against the best conventional cost.
    pub fn percent_reduction(&self, optimized: Ratio<u64>) -> Result<f64> {
        percent_reduction(ratio_f64(optimized), ratio_f64(self.best_cost))
    }
}

pub fn compare_conventional(hf: &FermionicHamiltonian, cost: CostFn) -> Result<ConventionalReport> {
    let n = hf.n_modes();
    let mut costs = Vec::with_capacity(3);
    let mut n_terms = 0;
    for which in Conventional::ALL {
        let q = encode(hf, &which.tree(n)?.compile())?;
        n_terms = q.len();
        costs.push((which, cost.of(&q)));
    }
    // first minimum wins, so ties prefer JW, then BK
    let (best, best_cost) = costs
        .iter()
        .copied()
        .fold(costs[0], |acc, c| if c.1 < acc.1 { c } else { acc });
    Ok(ConventionalReport {
        cost_fn: cost,
        n_terms,
        costs,
        best,
        best_cost,
    })
}

/// Exhaustive minimum of a cost over every tree mapping on `n_modes` qubits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub n_modes: usize,
    pub mappings: u64,
    pub n_terms: usize,
    pub min_total_weight: u64,
    pub min_cost: Ratio<u64>,
    pub cost_fn: CostFn,
    /// First mapping reaching the minimum, as a tree.
    pub argmin: TernaryTree,
}

/// Streams all mappings (up to `bound` modes) and keeps the first minimizer.
pub fn enumerate_minimum(
    hf: &FermionicHamiltonian,
    cost_fn: CostFn,
    bound: usize,
) -> Result<EnumerationReport> {
    let n = hf.n_modes();
    let poly = MajoranaPolynomial::from_fermionic(hf);
    let n_terms = encode(hf, &TernaryTree::jordan_wigner(n)?.compile())?.len();
    let mut best: Option<(u64, crate::mapping::MajoranaMapping)> = None;
    let mut count = 0u64;
    for m in enumerate_mappings_bounded(n, bound)? {
        count += 1;
        let w = poly.total_weight(&m)?;
        if best.as_ref().is_none_or(|(b, _)| w < *b) {
            best = Some((w, m));
        }
    }
    let (w, m) = best.ok_or_else(|| Error::Domain("no mappings to enumerate".into()))?;
    Ok(EnumerationReport {
        n_modes: n,
        mappings: count,
        n_terms,
        min_total_weight: w,
        min_cost: cost_fn.of_total(w, n_terms),
        cost_fn,
        argmin: TernaryTree::from_mapping(&m)?,
    })
}
