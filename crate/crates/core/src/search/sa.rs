use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::frame::Frame;
use super::{
    beta, metropolis, ratio_f64, sample_unit, Algorithm, CostFn, GateSetId, RunRecord, Schedule,
};
use crate::error::{Error, Result};
use crate::hamiltonian::QubitHamiltonian;

/// Parameters of one annealing run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SaConfig {
    pub gate_set: GateSetId,
    pub schedule: Schedule,
    pub t_max: u64,
    pub seed: u64,
    pub cost_fn: CostFn,
    /// Record the working cost every this many iterations; 0 disables.
    pub trace_every: u64,
    /// Drop accepted moves after the best prefix before returning.
    pub compact: bool,
}

impl Default for SaConfig {
    fn default() -> Self {
        SaConfig {
            gate_set: GateSetId::CH,
            schedule: Schedule::default(),
            t_max: 100_000,
            seed: 0,
            cost_fn: CostFn::Avg,
            trace_every: 1000,
            compact: false,
        }
    }
}

/// Simulated annealing from `h`, deterministic in `cfg.seed`.
///
/// The chain itself follows the Metropolis rule on the current state; the
/// returned record also tracks the best state ever visited and the length of
/// the accepted-move prefix that reaches it.
pub fn sa_run(h: &QubitHamiltonian, cfg: &SaConfig) -> Result<RunRecord> {
    if h.is_empty() {
        return Err(Error::Domain("cannot anneal an empty Hamiltonian".into()));
    }
    if cfg.t_max == 0 {
        return Err(Error::Domain("t_max must be at least 1".into()));
    }
    cfg.schedule.validate()?;
    let n = h.n_qubits();
    let n_terms = h.len();
    let scale = match cfg.cost_fn {
        CostFn::Avg => n_terms as f64,
        CostFn::Total => 1.0,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut frame = Frame::new(h);
    let initial_total = frame.total();
    let (mut best_total, mut best_len) = (initial_total, 0);
    let mut moves = Vec::new();
    let mut trace = Vec::new();
    if cfg.trace_every > 0 {
        trace.push((0, initial_total as f64 / scale));
    }

    for t in 1..=cfg.t_max {
        let u = sample_unit(cfg.gate_set, n, &mut rng)?;
        let d = frame.delta(&u);
        let accept = if d <= 0 {
            true
        } else if frame.total() == 0 {
            false
        } else {
            let b = beta(t, &cfg.schedule, frame.total() as f64 / scale)?;
            metropolis(d as f64 / scale, b, &mut rng)
        };
        if accept {
            frame.apply(&u);
            moves.push(u);
            if frame.total() < best_total {
                best_total = frame.total();
                best_len = moves.len();
            }
        }
        if cfg.trace_every > 0 && t % cfg.trace_every == 0 {
            trace.push((t, frame.total() as f64 / scale));
        }
    }

    if cfg.compact {
        moves.truncate(best_len);
    }
    let initial_cost = cfg.cost_fn.of_total(initial_total, n_terms);
    let best_cost = cfg.cost_fn.of_total(best_total, n_terms);
    debug_assert!(ratio_f64(best_cost) <= ratio_f64(initial_cost));
    Ok(RunRecord {
        algorithm: Algorithm::Sa,
        seed: cfg.seed,
        gate_set: cfg.gate_set,
        schedule: Some(cfg.schedule),
        t_max: cfg.t_max,
        cost_fn: cfg.cost_fn,
        n_terms,
        initial_cost,
        best_cost,
        moves,
        best_prefix_len: best_len,
        compacted: cfg.compact,
        iterations: cfg.t_max,
        cost_trace: trace,
    })
}
