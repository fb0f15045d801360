use crate::gate::GateUnit;
use crate::hamiltonian::QubitHamiltonian;

/// Phase-free symplectic image of a Hamiltonian, stored qubit-major.
///
/// Column `q` holds, for every term, the x and z bits on qubit `q` packed in
/// `words` u64s. The weight contributed by qubit `q` is
/// `popcount(x_q | z_q)`, so a unit on qubits `(c, t)` changes the total
/// weight only through those two columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Frame {
    words: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    col_weight: Vec<u64>,
    total: u64,
}

impl Frame {
    pub fn new(h: &QubitHamiltonian) -> Self {
        let n = h.n_qubits();
        let words = h.len().div_ceil(64).max(1);
        let mut x = vec![0u64; n * words];
        let mut z = vec![0u64; n * words];
        for (term, p) in h.strings().enumerate() {
            let (w, bit) = (term / 64, 1u64 << (term % 64));
            for q in p.support() {
                let (xb, zb) = p.get(q).bits();
                if xb {
                    x[q * words + w] |= bit;
                }
                if zb {
                    z[q * words + w] |= bit;
                }
            }
        }
        let mut f = Frame {
            words,
            x,
            z,
            col_weight: vec![0; n],
            total: 0,
        };
        for q in 0..n {
            f.col_weight[q] = f.column_weight(q);
        }
        f.total = f.col_weight.iter().sum();
        f
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    fn column_weight(&self, q: usize) -> u64 {
        let r = q * self.words..(q + 1) * self.words;
        self.x[r.clone()]
            .iter()
            .zip(&self.z[r])
            .map(|(a, b)| (a | b).count_ones() as u64)
            .sum()
    }

    /// Column bits of the control and target after `u`, word `w`.
    #[inline]
    fn image(&self, u: &GateUnit, w: usize) -> (u64, u64, u64, u64) {
        let (c, t) = (u.control() * self.words + w, u.target() * self.words + w);
        let (mut xc, mut zc) = (self.x[c], self.z[c]);
        match u {
            GateUnit::Cnot { .. } => {}
            GateUnit::CnotH { .. } => std::mem::swap(&mut xc, &mut zc),
            GateUnit::CnotS { .. } => zc ^= xc,
        }
        let (xt, zt) = (self.x[t] ^ xc, self.z[t]);
        (xc, zc ^ zt, xt, zt)
    }

    /// New weights of the control and target columns after `u`.
    fn unit_weights(&self, u: &GateUnit) -> (u64, u64) {
        let (mut wc, mut wt) = (0, 0);
        for w in 0..self.words {
            let (xc, zc, xt, zt) = self.image(u, w);
            wc += (xc | zc).count_ones() as u64;
            wt += (xt | zt).count_ones() as u64;
        }
        (wc, wt)
    }

    /// Change in total weight if `u` were applied.
    pub fn delta(&self, u: &GateUnit) -> i64 {
        let (wc, wt) = self.unit_weights(u);
        let old = self.col_weight[u.control()] + self.col_weight[u.target()];
        (wc + wt) as i64 - old as i64
    }

    pub fn apply(&mut self, u: &GateUnit) {
        let (c, t) = (u.control(), u.target());
        for w in 0..self.words {
            let (xc, zc, xt, zt) = self.image(u, w);
            self.x[c * self.words + w] = xc;
            self.z[c * self.words + w] = zc;
            self.x[t * self.words + w] = xt;
            self.z[t * self.words + w] = zt;
        }
        let (old_c, old_t) = (self.col_weight[c], self.col_weight[t]);
        self.col_weight[c] = self.column_weight(c);
        self.col_weight[t] = self.column_weight(t);
        self.total = self.total + self.col_weight[c] + self.col_weight[t] - old_c - old_t;
    }
}
