use super::{FermionicHamiltonian, FermionicTerm, LadderOp};
use crate::error::{Error, Result};

fn hop(coeff: f64, i: usize, j: usize) -> [FermionicTerm; 2] {
    [
        FermionicTerm::real(coeff, vec![LadderOp::create(i), LadderOp::annihilate(j)]),
        FermionicTerm::real(coeff, vec![LadderOp::create(j), LadderOp::annihilate(i)]),
    ]
}

/// `Σ_{0 < |i-j| ≤ r} a†_i a_j` on a line of `n` sites.
pub fn hopping_1d(n: usize, r: usize) -> Result<FermionicHamiltonian> {
    if r < 1 || r >= n {
        return Err(Error::Domain(format!(
            "hopping range must satisfy 1 <= r < N, got r = {r}, N = {n}"
        )));
    }
    let terms = (0..n)
        .flat_map(|i| (i + 1..=(i + r).min(n - 1)).flat_map(move |j| hop(1.0, i, j)))
        .collect();
    FermionicHamiltonian::new(n, terms, true)
}

/// Mode index of grid site `(row, col)` on an `l × l` lattice, numbered
/// row by row with every other row reversed.
pub fn snake_index(l: usize, row: usize, col: usize) -> usize {
    if row & 1 == 1 {
        row * l + (l - 1 - col)
    } else {
        row * l + col
    }
}

fn lattice_edges(l: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(2 * l * (l - 1));
    for row in 0..l {
        for col in 0..l {
            let s = snake_index(l, row, col);
            if col + 1 < l {
                edges.push((s, snake_index(l, row, col + 1)));
            }
            if row + 1 < l {
                edges.push((s, snake_index(l, row + 1, col)));
            }
        }
    }
    edges
}

/// Nearest-neighbor hopping on an `l × l` grid with unit coefficients.
pub fn hopping_2d(l: usize) -> Result<FermionicHamiltonian> {
    if l < 2 {
        return Err(Error::Domain(format!(
            "lattice side must be at least 2, got {l}"
        )));
    }
    let terms = lattice_edges(l)
        .into_iter()
        .flat_map(|(i, j)| hop(1.0, i, j))
        .collect();
    FermionicHamiltonian::new(l * l, terms, true)
}

/// Fermi-Hubbard model `-t Σ_{<ij>,σ} a†_{iσ} a_{jσ} + U Σ_i n_{i↑} n_{i↓}`
/// on an `l × l` grid. Site `s` with spin `σ ∈ {0, 1}` is mode `2s + σ`.
pub fn hubbard_2d(l: usize, t: f64, u: f64) -> Result<FermionicHamiltonian> {
    if l < 2 {
        return Err(Error::Domain(format!(
            "lattice side must be at least 2, got {l}"
        )));
    }
    let mut terms = Vec::new();
    for (i, j) in lattice_edges(l) {
        for spin in 0..2 {
            terms.extend(hop(-t, 2 * i + spin, 2 * j + spin));
        }
    }
    for s in 0..l * l {
        let (up, down) = (2 * s, 2 * s + 1);
        // n_up n_down = a†_up a†_down a_down a_up
        terms.push(FermionicTerm::real(
            u,
            vec![
                LadderOp::create(up),
                LadderOp::create(down),
                LadderOp::annihilate(down),
                LadderOp::annihilate(up),
            ],
        ));
    }
    FermionicHamiltonian::new(2 * l * l, terms, true)
}

/// `Σ_k a_k`, deliberately not Hermitian.
pub fn single_ops(n: usize) -> Result<FermionicHamiltonian> {
    let terms = (0..n)
        .map(|k| FermionicTerm::real(1.0, vec![LadderOp::annihilate(k)]))
        .collect();
    FermionicHamiltonian::new(n, terms, false)
}

/// `a†_0 a†_1 a_2 a_3 + h.c.` on four modes.
pub fn exchange() -> Result<FermionicHamiltonian> {
    let term = FermionicTerm::real(
        1.0,
        vec![
            LadderOp::create(0),
            LadderOp::create(1),
            LadderOp::annihilate(2),
            LadderOp::annihilate(3),
        ],
    );
    let adj = term.adjoint();
    FermionicHamiltonian::new(4, vec![term, adj], true)
}
