use std::collections::BTreeMap;

use num_complex::Complex64;

use super::FermionicHamiltonian;
use crate::error::{Error, Result};
use crate::hamiltonian::{QubitHamiltonian, COMBINE_TOL};
use crate::mapping::MajoranaMapping;
use crate::pauli::PauliString;

fn check_sizes(hf: &FermionicHamiltonian, m: &MajoranaMapping) -> Result<()> {
    if m.n_qubits() != hf.n_modes() {
        return Err(Error::Dimension {
            expected: hf.n_modes(),
            found: m.n_qubits(),
        });
    }
    Ok(())
}

/// Qubit Hamiltonian obtained by substituting
/// `a_k = (P_{2k} + i P_{2k+1}) / 2` and `a†_k = (P_{2k} - i P_{2k+1}) / 2`.
pub fn encode(hf: &FermionicHamiltonian, m: &MajoranaMapping) -> Result<QubitHamiltonian> {
    check_sizes(hf, m)?;
    m.validate()?;
    let n = m.n_qubits();
    let half = Complex64::new(0.5, 0.0);
    let mut out = QubitHamiltonian::new(n);
    for term in hf.terms() {
        let mut partial = vec![(term.coeff, PauliString::identity(n))];
        for op in &term.ops {
            let re = m.majorana(2 * op.mode);
            let im = m.majorana(2 * op.mode + 1);
            let im_coeff = Complex64::new(0.0, if op.creation { -0.5 } else { 0.5 });
            let mut next = Vec::with_capacity(2 * partial.len());
            for (c, p) in &partial {
                next.push((c * half, p.multiply(re)?));
                next.push((c * im_coeff, p.multiply(im)?));
            }
            partial = next;
        }
        for (c, p) in partial {
            out.add_term(c, p)?;
        }
    }
    Ok(out)
}

/// A fermionic Hamiltonian expanded once into products of Majorana operators.
///
/// Each monomial is a sorted set of Majorana indices. Under any mapping it
/// becomes a single Pauli string whose support is the XOR of its factors, so
/// weights can be evaluated without tracking phases. Distinct monomials map
/// to distinct strings because the `2n` Majoranas generate the Pauli group.
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaPolynomial {
    n_modes: usize,
    terms: Vec<(Vec<usize>, Complex64)>,
}

impl MajoranaPolynomial {
    pub fn from_fermionic(hf: &FermionicHamiltonian) -> Self {
        let mut acc: BTreeMap<Vec<usize>, Complex64> = BTreeMap::new();
        for term in hf.terms() {
            let mut partial: Vec<(Vec<usize>, Complex64)> = vec![(Vec::new(), term.coeff)];
            for op in &term.ops {
                let im = Complex64::new(0.0, if op.creation { -0.5 } else { 0.5 });
                let factors = [
                    (2 * op.mode, Complex64::new(0.5, 0.0)),
                    (2 * op.mode + 1, im),
                ];
                let mut next = Vec::with_capacity(2 * partial.len());
                for (mono, c) in &partial {
                    for &(j, f) in &factors {
                        let (m2, sign) = times_majorana(mono, j);
                        next.push((m2, c * f * sign));
                    }
                }
                partial = next;
            }
            for (mono, c) in partial {
                *acc.entry(mono).or_default() += c;
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| c.norm() >= COMBINE_TOL)
            .collect();
        MajoranaPolynomial {
            n_modes: hf.n_modes(),
            terms,
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Vec<usize>, Complex64)] {
        &self.terms
    }

    /// Sum of Pauli weights of the encoded strings, identity included at 0.
    pub fn total_weight(&self, m: &MajoranaMapping) -> Result<u64> {
        if m.n_qubits() != self.n_modes {
            return Err(Error::Dimension {
                expected: self.n_modes,
                found: m.n_qubits(),
            });
        }
        let words = m.paulis()[0].x_words().len();
        let mut x = vec![0u64; words];
        let mut z = vec![0u64; words];
        let mut total = 0u64;
        for (mono, _) in &self.terms {
            x.fill(0);
            z.fill(0);
            for &j in mono {
                let p = m.majorana(j);
                for (a, b) in x.iter_mut().zip(p.x_words()) {
                    *a ^= b;
                }
                for (a, b) in z.iter_mut().zip(p.z_words()) {
                    *a ^= b;
                }
            }
            total += x
                .iter()
                .zip(&z)
                .map(|(a, b)| (a | b).count_ones() as u64)
                .sum::<u64>();
        }
        Ok(total)
    }
}

/// `γ_{mono} · γ_j` as a sorted monomial and the reordering sign.
fn times_majorana(mono: &[usize], j: usize) -> (Vec<usize>, f64) {
    let larger = mono.iter().filter(|&&k| k > j).count();
    let sign = if larger % 2 == 0 { 1.0 } else { -1.0 };
    let mut out = mono.to_vec();
    match out.binary_search(&j) {
        Ok(pos) => {
            out.remove(pos);
        }
        Err(pos) => out.insert(pos, j),
    }
    (out, sign)
}
