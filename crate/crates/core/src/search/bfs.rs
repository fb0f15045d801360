use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::frame::Frame;
use super::{Algorithm, CostFn, GateSetId, RunRecord};
use crate::error::{Error, Result};
use crate::gate::GateUnit;
use crate::hamiltonian::QubitHamiltonian;

/// Limits on a best-first search; the best state found so far is returned
/// when either is reached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BfsBudget {
    pub max_nodes: u64,
    pub timeout: Option<Duration>,
}

impl Default for BfsBudget {
    fn default() -> Self {
        BfsBudget {
            max_nodes: 10_000,
            timeout: None,
        }
    }
}

struct Node {
    frame: Frame,
    moves: Vec<GateUnit>,
}

/// Best-first search that only descends along strictly improving units.
///
/// The queue is ordered by total weight, ties served first-in first-out.
/// States already queued once are not queued again.
pub fn bfs_run(
    h: &QubitHamiltonian,
    gs: GateSetId,
    cost_fn: CostFn,
    budget: BfsBudget,
) -> Result<RunRecord> {
    if h.is_empty() {
        return Err(Error::Domain(
            "cannot search from an empty Hamiltonian".into(),
        ));
    }
    let n = h.n_qubits();
    let units = gs.units(n);
    let start = Instant::now();

    let root = Frame::new(h);
    let initial_total = root.total();
    let mut best = (initial_total, Vec::new());
    let mut seen = HashSet::from([root.clone()]);
    let mut nodes = vec![Some(Node {
        frame: root,
        moves: Vec::new(),
    })];
    let mut heap = BinaryHeap::from([(Reverse(initial_total), Reverse(0usize))]);
    let mut expanded = 0u64;
    let mut trace = vec![(0, initial_total as f64)];

    while let Some((Reverse(total), Reverse(id))) = heap.pop() {
        if expanded >= budget.max_nodes || budget.timeout.is_some_and(|t| start.elapsed() >= t) {
            break;
        }
        expanded += 1;
        let node = nodes[id].take().expect("each node is expanded once");
        for u in &units {
            if node.frame.delta(u) >= 0 {
                continue;
            }
            let mut child = node.frame.clone();
            child.apply(u);
            if !seen.insert(child.clone()) {
                continue;
            }
            let mut moves = node.moves.clone();
            moves.push(*u);
            if child.total() < best.0 {
                best = (child.total(), moves.clone());
                trace.push((expanded, child.total() as f64));
            }
            heap.push((Reverse(child.total()), Reverse(nodes.len())));
            nodes.push(Some(Node {
                frame: child,
                moves,
            }));
        }
        debug_assert!(total >= best.0);
    }

    let n_terms = h.len();
    let (best_total, moves) = best;
    let scale = match cost_fn {
        CostFn::Avg => n_terms as f64,
        CostFn::Total => 1.0,
    };
    Ok(RunRecord {
        algorithm: Algorithm::Bfs,
        seed: 0,
        gate_set: gs,
        schedule: None,
        t_max: budget.max_nodes,
        cost_fn,
        n_terms,
        initial_cost: cost_fn.of_total(initial_total, n_terms),
        best_cost: cost_fn.of_total(best_total, n_terms),
        best_prefix_len: moves.len(),
        moves,
        compacted: false,
        iterations: expanded,
        cost_trace: trace.into_iter().map(|(t, c)| (t, c / scale)).collect(),
    })
}
