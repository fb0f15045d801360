//! Phase-tracked Pauli strings in symplectic form.
//!
//! A string on `n` qubits is stored as two packed bit vectors `x` and `z`
//! plus a global phase `i^k`. Per qubit the encoding is
//! `(0,0) = I`, `(1,0) = X`, `(0,1) = Z`, `(1,1) = Y`, where `Y` is the
//! Hermitian Pauli matrix (not `XZ`). Qubit 0 is the leftmost character of
//! the text form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gate::CliffordGate;

const WORD: usize = 64;

#[inline]
pub(crate) fn n_words(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    pub fn label(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_label(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// A tensor product of single-qubit Paulis with a global phase `i^phase_exp`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n_qubits: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase_exp: u8,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        let w = n_words(n_qubits);
        PauliString {
            n_qubits,
            x: vec![0; w],
            z: vec![0; w],
            phase_exp: 0,
        }
    }

    /// Builds a string from `(qubit, pauli)` factors; unspecified qubits are `I`.
    pub fn from_factors(n_qubits: usize, factors: &[(usize, Pauli)]) -> Result<Self> {
        let mut p = Self::identity(n_qubits);
        for &(q, f) in factors {
            p.set(q, f)?;
        }
        Ok(p)
    }

    pub fn from_paulis(paulis: &[Pauli]) -> Self {
        let mut p = Self::identity(paulis.len());
        for (q, &f) in paulis.iter().enumerate() {
            p.put(q, f);
        }
        p
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    pub fn with_phase(mut self, phase_exp: u8) -> Self {
        self.phase_exp = phase_exp & 3;
        self
    }

    /// Copy with the phase reset to `+1`.
    pub fn stripped(&self) -> Self {
        let mut p = self.clone();
        p.phase_exp = 0;
        p
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn get(&self, q: usize) -> Pauli {
        debug_assert!(q < self.n_qubits);
        let (w, b) = (q / WORD, q % WORD);
        Pauli::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    pub fn set(&mut self, q: usize, p: Pauli) -> Result<()> {
        self.check_qubit(q)?;
        self.put(q, p);
        Ok(())
    }

    fn put(&mut self, q: usize, p: Pauli) {
        let (w, b) = (q / WORD, q % WORD);
        let (x, z) = p.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | ((x as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((z as u64) << b);
    }

    pub fn paulis(&self) -> impl Iterator<Item = Pauli> + '_ {
        (0..self.n_qubits).map(|q| self.get(q))
    }

    /// Indices of non-identity factors.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, (&x, &z)) in self.x.iter().zip(&self.z).enumerate() {
            let mut m = x | z;
            while m != 0 {
                out.push(w * WORD + m.trailing_zeros() as usize);
                m &= m - 1;
            }
        }
        out
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    fn check_len(&self, other: &PauliString) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Dimension {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        Ok(())
    }

    pub(crate) fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    /// Operator product `self · other` with exact phase.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        self.check_len(other)?;
        let mut phase = self.phase_exp as i64 + other.phase_exp as i64;
        let mut x = Vec::with_capacity(self.x.len());
        let mut z = Vec::with_capacity(self.z.len());
        for w in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[w], self.z[w], other.x[w], other.z[w]);
            phase += product_phase_word(x1, z1, x2, z2);
            x.push(x1 ^ x2);
            z.push(z1 ^ z2);
        }
        Ok(PauliString {
            n_qubits: self.n_qubits,
            x,
            z,
            phase_exp: phase.rem_euclid(4) as u8,
        })
    }

    /// Qubits on which the single-qubit factors anticommute.
    pub fn anticommute_support(&self, other: &PauliString) -> Result<Vec<usize>> {
        self.check_len(other)?;
        let mut out = Vec::new();
        for w in 0..self.x.len() {
            let mut m = (self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w]);
            while m != 0 {
                out.push(w * WORD + m.trailing_zeros() as usize);
                m &= m - 1;
            }
        }
        Ok(out)
    }

    /// Size of [`Self::anticommute_support`] without allocating.
    pub fn anticommute_count(&self, other: &PauliString) -> Result<usize> {
        self.check_len(other)?;
        Ok((0..self.x.len())
            .map(|w| ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones() as usize)
            .sum())
    }

    pub fn commutes_with(&self, other: &PauliString) -> Result<bool> {
        Ok(self.anticommute_count(other)? % 2 == 0)
    }

    /// `g · self · g†`.
    pub fn conjugate(&self, g: &CliffordGate) -> Result<PauliString> {
        let mut p = self.clone();
        p.conjugate_in_place(g)?;
        Ok(p)
    }

    pub fn conjugate_in_place(&mut self, g: &CliffordGate) -> Result<()> {
        for q in g.qubits() {
            self.check_qubit(q)?;
        }
        match *g {
            CliffordGate::H(q) => {
                let (x, z) = (self.bit_x(q), self.bit_z(q));
                if x && z {
                    self.phase_exp = (self.phase_exp + 2) & 3;
                }
                self.put_bits(q, z, x);
            }
            CliffordGate::S(q) => {
                let (x, z) = (self.bit_x(q), self.bit_z(q));
                // X -> Y, Y -> -X
                if x && z {
                    self.phase_exp = (self.phase_exp + 2) & 3;
                }
                self.put_bits(q, x, z ^ x);
            }
            CliffordGate::Sdg(q) => {
                let (x, z) = (self.bit_x(q), self.bit_z(q));
                // X -> -Y, Y -> X
                if x && !z {
                    self.phase_exp = (self.phase_exp + 2) & 3;
                }
                self.put_bits(q, x, z ^ x);
            }
            CliffordGate::Cnot { control, target } => {
                let (xc, zc) = (self.bit_x(control), self.bit_z(control));
                let (xt, zt) = (self.bit_x(target), self.bit_z(target));
                if xc && zt && (xt == zc) {
                    self.phase_exp = (self.phase_exp + 2) & 3;
                }
                self.put_bits(control, xc, zc ^ zt);
                self.put_bits(target, xt ^ xc, zt);
            }
        }
        Ok(())
    }

    /// Folds [`Self::conjugate`] over `gates`; the first gate acts first.
    pub fn conjugate_sequence(&self, gates: &[CliffordGate]) -> Result<PauliString> {
        let mut p = self.clone();
        for g in gates {
            p.conjugate_in_place(g)?;
        }
        Ok(p)
    }

    #[inline]
    fn bit_x(&self, q: usize) -> bool {
        (self.x[q / WORD] >> (q % WORD)) & 1 == 1
    }

    #[inline]
    fn bit_z(&self, q: usize) -> bool {
        (self.z[q / WORD] >> (q % WORD)) & 1 == 1
    }

    #[inline]
    fn put_bits(&mut self, q: usize, x: bool, z: bool) {
        let (w, b) = (q / WORD, q % WORD);
        self.x[w] = (self.x[w] & !(1 << b)) | ((x as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((z as u64) << b);
    }
}

/// Exponent of `i` (not reduced) picked up by the qubit-wise products in one word.
#[inline]
fn product_phase_word(x1: u64, z1: u64, x2: u64, z2: u64) -> i64 {
    let (y1, px1, pz1) = (x1 & z1, x1 & !z1, z1 & !x1);
    let (y2, px2, pz2) = (x2 & z2, x2 & !z2, z2 & !x2);
    // XY = iZ, YZ = iX, ZX = iY and the reverses carry -i.
    let plus = (px1 & y2) | (y1 & pz2) | (pz1 & px2);
    let minus = (y1 & px2) | (pz1 & y2) | (px1 & pz2);
    plus.count_ones() as i64 - minus.count_ones() as i64
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase_exp {
            0 => "",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for p in self.paulis() {
            write!(f, "{}", p.label())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else {
            (0, s)
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("empty Pauli string {s:?}")));
        }
        let paulis = body
            .chars()
            .map(|c| {
                Pauli::from_label(c)
                    .ok_or_else(|| Error::Parse(format!("invalid Pauli character {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString::from_paulis(&paulis).with_phase(phase))
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{pauli_matrix, phase_between};
    use proptest::prelude::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(ps("IIII").weight(), 0);
        assert_eq!(ps("XIZY").weight(), 3);
        assert_eq!(ps("ZZX").weight(), 3);
        assert_eq!(ps("-iXIZY").weight(), 3);
    }

    #[test]
    fn multiply_examples() {
        let r = ps("X").multiply(&ps("Z")).unwrap();
        assert_eq!(r.to_string(), "-iY");
        assert_eq!(r.phase_exp(), 3);

        let r = ps("XX").multiply(&ps("ZZ")).unwrap();
        assert_eq!(r.to_string(), "-YY");

        for s in ["X", "Y", "Z", "XYZI", "YY"] {
            let p = ps(s);
            let r = p.multiply(&p).unwrap();
            assert!(r.is_identity());
            assert_eq!(r.phase_exp(), 0);
        }
    }

    #[test]
    fn multiply_length_mismatch() {
        assert!(matches!(
            ps("X").multiply(&ps("XX")),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn anticommute_support_examples() {
        assert_eq!(ps("XX").anticommute_support(&ps("ZZ")).unwrap(), vec![0, 1]);
        assert!(ps("XX").commutes_with(&ps("ZZ")).unwrap());
        assert_eq!(ps("XI").anticommute_support(&ps("ZI")).unwrap(), vec![0]);
        assert!(!ps("XI").commutes_with(&ps("ZI")).unwrap());
        assert!(ps("XYZ")
            .anticommute_support(&ps("XYZ"))
            .unwrap()
            .is_empty());
        assert!(ps("X").anticommute_support(&ps("XI")).is_err());
    }

    #[test]
    fn conjugate_examples() {
        let cx = CliffordGate::cnot(0, 1);
        assert_eq!(ps("XI").conjugate(&cx).unwrap().stripped(), ps("XX"));
        assert_eq!(ps("IY").conjugate(&cx).unwrap().stripped(), ps("ZY"));
        assert_eq!(ps("X").conjugate(&CliffordGate::H(0)).unwrap(), ps("Z"));
        assert!(matches!(
            ps("XI").conjugate(&CliffordGate::H(2)),
            Err(Error::QubitOutOfRange { .. })
        ));
    }

    #[test]
    fn conjugate_sequence_examples() {
        let p = ps("XZY");
        assert_eq!(p.conjugate_sequence(&[]).unwrap(), p);
        let cx = CliffordGate::cnot(0, 1);
        assert_eq!(p.conjugate_sequence(&[cx, cx]).unwrap(), p);

        // [CNOT01, H0] on ZZ: CNOT gives IZ, H0 leaves it.
        let r = ps("ZZ")
            .conjugate_sequence(&[cx, CliffordGate::H(0)])
            .unwrap();
        let u = crate::oracle::sequence_unitary(2, &[cx, CliffordGate::H(0)]);
        let expect = u.mul(&pauli_matrix(&ps("ZZ"))).mul(&u.adjoint());
        assert_eq!(phase_between(&expect, &pauli_matrix(&r)), Some(0));
        assert_eq!(r, ps("IZ"));
    }

    #[test]
    fn text_form_round_trip() {
        for s in ["XIZY", "-iXX", "+iZ", "-Y"] {
            assert_eq!(ps(s).to_string(), s);
        }
        assert_eq!(ps("+XY"), ps("XY"));
        assert!("XA".parse::<PauliString>().is_err());
        assert!("".parse::<PauliString>().is_err());
    }

    #[test]
    fn words_beyond_64_qubits() {
        let mut p = PauliString::identity(130);
        p.set(0, Pauli::X).unwrap();
        p.set(129, Pauli::Y).unwrap();
        p.set(64, Pauli::Z).unwrap();
        assert_eq!(p.weight(), 3);
        assert_eq!(p.support(), vec![0, 64, 129]);
        let q = p.conjugate(&CliffordGate::cnot(0, 129)).unwrap();
        // X_c Y_t -> (X Z)_c (X Y)_t = (-iY)(iZ) = Y_c Z_t
        assert_eq!(q.get(0), Pauli::Y);
        assert_eq!(q.get(129), Pauli::Z);
        assert_eq!(q.phase_exp(), 0);
    }

    fn arb_pauli(n: usize) -> impl Strategy<Value = PauliString> {
        (prop::collection::vec(0u8..4, n), 0u8..4).prop_map(|(v, ph)| {
            let ps: Vec<Pauli> = v
                .into_iter()
                .map(|k| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][k as usize])
                .collect();
            PauliString::from_paulis(&ps).with_phase(ph)
        })
    }

    fn arb_gate(n: usize) -> impl Strategy<Value = CliffordGate> {
        (0usize..4, 0..n, 1..n).prop_map(move |(k, a, d)| match k {
            0 => CliffordGate::H(a),
            1 => CliffordGate::S(a),
            2 => CliffordGate::Sdg(a),
            _ => CliffordGate::cnot(a, (a + d) % n),
        })
    }

    proptest! {
        #[test]
        fn multiply_matches_matrices(p in arb_pauli(3), q in arb_pauli(3)) {
            let r = p.multiply(&q).unwrap();
            let m = pauli_matrix(&p).mul(&pauli_matrix(&q));
            prop_assert_eq!(phase_between(&m, &pauli_matrix(&r)), Some(0));
        }

        #[test]
        fn multiply_associative(p in arb_pauli(4), q in arb_pauli(4), r in arb_pauli(4)) {
            let a = p.multiply(&q).unwrap().multiply(&r).unwrap();
            let b = p.multiply(&q.multiply(&r).unwrap()).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn multiply_left_cancels(p in arb_pauli(4).prop_map(|p| p.stripped()), q in arb_pauli(4)) {
            prop_assert_eq!(p.multiply(&p.multiply(&q).unwrap()).unwrap(), q);
        }

        #[test]
        fn conjugate_matches_matrices(p in arb_pauli(3), g in arb_gate(3)) {
            let r = p.conjugate(&g).unwrap();
            let u = crate::oracle::sequence_unitary(3, &[g]);
            let m = u.mul(&pauli_matrix(&p)).mul(&u.adjoint());
            prop_assert_eq!(phase_between(&m, &pauli_matrix(&r)), Some(0));
        }

        #[test]
        fn conjugation_preserves_commutation(
            p in arb_pauli(5), q in arb_pauli(5),
            gates in prop::collection::vec(arb_gate(5), 0..12),
        ) {
            let before = p.anticommute_count(&q).unwrap() % 2;
            let p2 = p.conjugate_sequence(&gates).unwrap();
            let q2 = q.conjugate_sequence(&gates).unwrap();
            prop_assert_eq!(p2.anticommute_count(&q2).unwrap() % 2, before);
        }

        #[test]
        fn single_qubit_gates_keep_weight(p in arb_pauli(5), q in 0usize..5, k in 0usize..3) {
            let g = [CliffordGate::H(q), CliffordGate::S(q), CliffordGate::Sdg(q)][k];
            prop_assert_eq!(p.conjugate(&g).unwrap().weight(), p.weight());
        }

        #[test]
        fn inverse_sequence_restores(p in arb_pauli(5), gates in prop::collection::vec(arb_gate(5), 0..12)) {
            let inv = crate::gate::invert_sequence(&gates);
            let back = p.conjugate_sequence(&gates).unwrap().conjugate_sequence(&inv).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
