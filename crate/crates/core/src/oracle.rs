//! Dense-matrix reference for Pauli and Clifford algebra on a few qubits.
//!
//! Everything here is computed with explicit `2^n × 2^n` complex matrices and
//! shares no code with the symplectic implementation in [`crate::pauli`]. It
//! backs the verification suites and the unit tests.

use num_complex::Complex64;

use crate::gate::CliffordGate;
use crate::pauli::{Pauli, PauliString};

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    fn from_rows(rows: &[[Complex64; 2]; 2]) -> Self {
        Matrix {
            dim: 2,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let d = self.dim;
        let mut out = Matrix::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..d {
                    out.data[r * d + c] += a * other.data[k * d + c];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Matrix {
        let d = self.dim;
        let mut out = Matrix::zeros(d);
        for r in 0..d {
            for c in 0..d {
                out.data[c * d + r] = self.data[r * d + c].conj();
            }
        }
        out
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (a, b) = (self.dim, other.dim);
        let d = a * b;
        let mut out = Matrix::zeros(d);
        for r1 in 0..a {
            for c1 in 0..a {
                let v = self.data[r1 * a + c1];
                for r2 in 0..b {
                    for c2 in 0..b {
                        out.data[(r1 * b + r2) * d + c1 * b + c2] = v * other.data[r2 * b + c2];
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn approx_eq(&self, other: &Matrix) -> bool {
        self.dim == other.dim
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a - b).norm() < TOL)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn single_pauli(p: Pauli) -> Matrix {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match p {
        Pauli::I => Matrix::from_rows(&[[l, o], [o, l]]),
        Pauli::X => Matrix::from_rows(&[[o, l], [l, o]]),
        Pauli::Y => Matrix::from_rows(&[[o, -i], [i, o]]),
        Pauli::Z => Matrix::from_rows(&[[l, o], [o, -l]]),
    }
}

/// Full matrix of a Pauli string including its phase; qubit 0 is the most
/// significant tensor factor.
pub fn pauli_matrix(p: &PauliString) -> Matrix {
    let mut m = Matrix::identity(1);
    for f in p.paulis() {
        m = m.kron(&single_pauli(f));
    }
    let phase = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)][p.phase_exp() as usize];
    m.scale(phase)
}

fn embed_single(n: usize, q: usize, u: &Matrix) -> Matrix {
    let mut m = Matrix::identity(1);
    for k in 0..n {
        m = if k == q {
            m.kron(u)
        } else {
            m.kron(&Matrix::identity(2))
        };
    }
    m
}

/// Matrix of one elementary gate on `n` qubits.
pub fn gate_matrix(n: usize, g: &CliffordGate) -> Matrix {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match *g {
        CliffordGate::H(q) => embed_single(
            n,
            q,
            &Matrix::from_rows(&[[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]]),
        ),
        CliffordGate::S(q) => embed_single(n, q, &Matrix::from_rows(&[[l, o], [o, i]])),
        CliffordGate::Sdg(q) => embed_single(n, q, &Matrix::from_rows(&[[l, o], [o, -i]])),
        CliffordGate::Cnot { control, target } => {
            let d = 1usize << n;
            let mut m = Matrix::zeros(d);
            let cbit = 1usize << (n - 1 - control);
            let tbit = 1usize << (n - 1 - target);
            for col in 0..d {
                let row = if col & cbit != 0 { col ^ tbit } else { col };
                m.data[row * d + col] = l;
            }
            m
        }
    }
}

/// The unitary `U = G_M ⋯ G_1` for gates listed in application order.
pub fn sequence_unitary(n: usize, gates: &[CliffordGate]) -> Matrix {
    gates
        .iter()
        .fold(Matrix::identity(1 << n), |u, g| gate_matrix(n, g).mul(&u))
}

/// Returns `k` such that `a = i^k · b`, if one exists.
pub fn phase_between(a: &Matrix, b: &Matrix) -> Option<u8> {
    [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]
        .iter()
        .position(|&ph| a.approx_eq(&b.scale(ph)))
        .map(|k| k as u8)
}

/// Identifies a matrix as `i^k · P` by trying every Pauli string on `n` qubits.
pub fn identify_pauli(n: usize, m: &Matrix) -> Option<PauliString> {
    let all = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    for code in 0..(1usize << (2 * n)) {
        let fs: Vec<Pauli> = (0..n).map(|q| all[(code >> (2 * q)) & 3]).collect();
        let p = PauliString::from_paulis(&fs);
        if let Some(k) = phase_between(m, &pauli_matrix(&p)) {
            return Some(p.with_phase(k));
        }
    }
    None
}

/// Brute-force conjugation `U P U†` through dense matrices.
pub fn conjugate_by_matrix(p: &PauliString, gates: &[CliffordGate]) -> Option<PauliString> {
    let n = p.n_qubits();
    let u = sequence_unitary(n, gates);
    let m = u.mul(&pauli_matrix(p)).mul(&u.adjoint());
    identify_pauli(n, &m)
}
