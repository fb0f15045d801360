//! Self-checks run by `cliffmap verify`: each suite tallies passing cases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::fermion::{encode, FermionicHamiltonian, FermionicTerm, LadderOp};
use crate::gate::CliffordGate;
use crate::hamiltonian::QubitHamiltonian;
use crate::mapping::MajoranaMapping;
use crate::oracle::conjugate_by_matrix;
use crate::pauli::PauliString;
use crate::tree::{full_transform_sequence, jw_bk_sequence, Child, TernaryTree};

/// Gate columns of the two-qubit action table on qubits `(i, j) = (0, 1)`,
/// each written in application order.
pub fn action_table_columns() -> [(&'static str, Vec<CliffordGate>); 6] {
    use CliffordGate::{H, S};
    let (cij, cji) = (CliffordGate::cnot(0, 1), CliffordGate::cnot(1, 0));
    [
        ("CNOT_ij", vec![cij]),
        ("CNOT_ji", vec![cji]),
        ("CNOT_ij H_i", vec![H(0), cij]),
        ("CNOT_ji H_i", vec![H(0), cji]),
        ("CNOT_ij S_i", vec![S(0), cij]),
        ("CNOT_ji S_i", vec![S(0), cji]),
    ]
}

/// Reference two-qubit action table, sign dropped: row input, then one
/// output per column of [`action_table_columns`].
pub const ACTION_TABLE: [(&str, [&str; 6]); 16] = [
    ("II", ["II", "II", "II", "II", "II", "II"]),
    ("IX", ["IX", "XX", "IX", "XX", "IX", "XX"]),
    ("IY", ["ZY", "XY", "ZY", "XY", "ZY", "XY"]),
    ("IZ", ["ZZ", "IZ", "ZZ", "IZ", "ZZ", "IZ"]),
    ("XI", ["XX", "XI", "ZI", "ZZ", "YX", "ZY"]),
    ("XX", ["XI", "IX", "ZX", "YY", "YI", "ZY"]),
    ("XY", ["YZ", "IY", "IY", "YX", "XZ", "ZX"]),
    ("XZ", ["YY", "XZ", "IZ", "ZI", "XY", "YI"]),
    ("YI", ["YX", "YZ", "YX", "YZ", "XX", "XI"]),
    ("YX", ["YI", "ZY", "YI", "ZY", "XI", "IX"]),
    ("YY", ["XZ", "ZX", "XZ", "ZX", "YZ", "IY"]),
    ("YZ", ["XY", "YI", "XY", "YI", "YY", "XZ"]),
    ("ZI", ["ZI", "ZZ", "XX", "XI", "ZI", "ZZ"]),
    ("ZX", ["ZX", "YY", "XI", "IX", "ZX", "YY"]),
    ("ZY", ["IY", "YX", "YZ", "IY", "IY", "YX"]),
    ("ZZ", ["IZ", "ZI", "YY", "XZ", "IZ", "ZI"]),
];

/// Known misprints in [`ACTION_TABLE`]: (row, column index, printed, correct).
/// `XI` under `CNOT_ji S_i` is printed as `ZY`, but `S` sends `X` to `Y` and
/// `CNOT_ji` then sends `YI` to `YZ`. The entry is also a duplicate of the
/// `XX` row in that column, which a bijection cannot have.
pub const ACTION_TABLE_ERRATA: [(&str, usize, &str, &str); 1] = [("XI", 5, "ZY", "YZ")];

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        SuiteResult {
            name: name.to_string(),
            passed: 0,
            total: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

/// Expected table entry after applying the errata.
pub fn action_table_expected(row: &str, col: usize) -> &'static str {
    let (_, outs) = ACTION_TABLE
        .iter()
        .find(|(r, _)| *r == row)
        .expect("row in table");
    ACTION_TABLE_ERRATA
        .iter()
        .find(|(r, c, _, _)| *r == row && *c == col)
        .map_or(outs[col], |e| e.3)
}

/// Symplectic conjugation against the dense matrix oracle and the table.
pub fn action_table_suite() -> SuiteResult {
    let mut s = SuiteResult::new("two-qubit action table");
    for (col, (name, gates)) in action_table_columns().iter().enumerate() {
        for (row, _) in ACTION_TABLE {
            let p: PauliString = row.parse().expect("table strings parse");
            let fast = p
                .conjugate_sequence(gates)
                .expect("two-qubit gates")
                .stripped();
            let slow = conjugate_by_matrix(&p, gates).map(|q| q.stripped());
            let want = action_table_expected(row, col);
            s.check(
                slow.as_ref() == Some(&fast) && fast.to_string() == want,
                || format!("{row} under {name}: symplectic {fast}, matrix {slow:?}, table {want}"),
            );
        }
    }
    s
}

fn ladder(m: &MajoranaMapping, k: usize, creation: bool) -> crate::error::Result<QubitHamiltonian> {
    let op = if creation {
        LadderOp::create(k)
    } else {
        LadderOp::annihilate(k)
    };
    let h = FermionicHamiltonian::new(
        m.n_qubits(),
        vec![FermionicTerm::real(1.0, vec![op])],
        false,
    )?;
    encode(&h, m)
}

/// `{a_i, a_j} = 0` and `{a†_i, a_j} = δ_ij` for one mapping, checked on Pauli sums.
pub fn check_car(m: &MajoranaMapping, tol: f64) -> crate::error::Result<Vec<String>> {
    let n = m.n_qubits();
    let a: Vec<_> = (0..n)
        .map(|k| ladder(m, k, false))
        .collect::<Result<_, _>>()?;
    let ad: Vec<_> = (0..n)
        .map(|k| ladder(m, k, true))
        .collect::<Result<_, _>>()?;
    let mut identity = QubitHamiltonian::new(n);
    identity.add_term(
        num_complex::Complex64::new(1.0, 0.0),
        PauliString::identity(n),
    )?;
    let zero = QubitHamiltonian::new(n);
    let mut bad = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let aa = a[i].product(&a[j])?.sum(&a[j].product(&a[i])?)?;
            if aa.max_abs_diff(&zero) > tol {
                bad.push(format!("{{a_{i}, a_{j}}} != 0"));
            }
            let da = ad[i].product(&a[j])?.sum(&a[j].product(&ad[i])?)?;
            let want = if i == j { &identity } else { &zero };
            if da.max_abs_diff(want) > tol {
                bad.push(format!("{{a+_{i}, a_{j}}} != delta"));
            }
        }
    }
    Ok(bad)
}

pub fn car_suite(n_max: usize) -> SuiteResult {
    let mut s = SuiteResult::new("canonical anticommutation");
    for n in 1..=n_max {
        for (name, tree) in [
            ("jw", TernaryTree::jordan_wigner(n)),
            ("bk", TernaryTree::bravyi_kitaev(n)),
            ("balanced", TernaryTree::balanced(n)),
        ] {
            let result = tree.and_then(|t| check_car(&t.compile(), 1e-12));
            s.check(matches!(&result, Ok(b) if b.is_empty()), || {
                format!("{name} n={n}: {result:?}")
            });
        }
    }
    s
}

pub fn jw_bk_suite(n_range: std::ops::RangeInclusive<usize>) -> SuiteResult {
    let mut s = SuiteResult::new("Bravyi-Kitaev to Jordan-Wigner by CNOTs");
    for n in n_range {
        let ok = (|| -> crate::error::Result<bool> {
            let gates = jw_bk_sequence(n)?;
            let bk = TernaryTree::bravyi_kitaev(n)?.compile().conjugate(&gates)?;
            let jw = TernaryTree::jordan_wigner(n)?.compile();
            Ok(gates.len() < n && bk.eq_up_to_phase(&jw))
        })();
        s.check(matches!(ok, Ok(true)), || format!("n={n}: {ok:?}"));
    }
    s
}

fn rotation_case(t: &TernaryTree, slot: usize, j: usize, k: usize) -> crate::error::Result<bool> {
    let rotated = if slot == 0 {
        t.rotate_left(j, k)?
    } else {
        t.rotate_middle(j, k)?
    };
    let via = t.compile().conjugate(&[CliffordGate::cnot(j, k)])?;
    let mut ok = via.eq_up_to_phase(&rotated.compile());
    if slot == 0 {
        ok &= rotated.inorder_qubits() == t.inorder_qubits()
            && rotated.inorder_leaves() == t.inorder_leaves();
    }
    Ok(ok)
}

/// Random rotations: compiled strings must equal CNOT-conjugated strings.
pub fn rotation_suite(cases: usize, max_n: usize, seed: u64) -> SuiteResult {
    let mut s = SuiteResult::new("tree rotations");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while s.total < cases {
        let n = rng.gen_range(2..=max_n);
        let t = TernaryTree::random(n, &mut rng).expect("n >= 1");
        let edges: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|k| {
                let t = &t;
                (0..2).filter_map(move |slot| match t.children(k)[slot] {
                    Child::Node(j) => Some((slot, j, k)),
                    Child::Leaf(_) => None,
                })
            })
            .collect();
        if edges.is_empty() {
            continue;
        }
        let (slot, j, k) = edges[rng.gen_range(0..edges.len())];
        let ok = rotation_case(&t, slot, j, k);
        s.check(matches!(ok, Ok(true)), || {
            format!("{t:?} slot {slot} ({j}, {k}): {ok:?}")
        });
    }
    s
}

/// Random pairs of trees joined by a synthesized Clifford circuit.
pub fn transform_suite(cases: usize, max_n: usize, seed: u64) -> SuiteResult {
    let mut s = SuiteResult::new("tree-to-tree Clifford circuits");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let n = rng.gen_range(1..=max_n);
        let t1 = TernaryTree::random(n, &mut rng).expect("n >= 1");
        let t2 = TernaryTree::random(n, &mut rng).expect("n >= 1");
        let ok = full_transform_sequence(&t1, &t2)
            .and_then(|g| t1.compile().conjugate(&g))
            .map(|m| m.eq_up_to_phase(&t2.compile()));
        s.check(matches!(ok, Ok(true)), || {
            format!("{t1:?} -> {t2:?}: {ok:?}")
        });
    }
    s
}

pub fn run_all() -> Vec<SuiteResult> {
    vec![
        action_table_suite(),
        car_suite(8),
        jw_bk_suite(2..=16),
        rotation_suite(500, 8, 1),
        transform_suite(200, 8, 2),
    ]
}
