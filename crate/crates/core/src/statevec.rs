//! Exact state vectors over computational basis strings, qubit 1 being the
//! most significant bit of the index.

use num_complex::Complex64;

use crate::codes::CssCode;
use crate::error::{Error, Result};
use crate::gf2;

pub const MAX_QUBITS: usize = 28;

/// Pauli operator `X^a Z^b` on `n` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PauliOp {
    pub n: usize,
    pub a: u64,
    pub b: u64,
}

impl PauliOp {
    pub fn new(n: usize, a: u64, b: u64) -> Result<Self> {
        let mask = gf2::low_mask(n);
        if n > 64 || a & !mask != 0 || b & !mask != 0 {
            return Err(Error::Dimension(format!("Pauli vectors exceed {n} qubits")));
        }
        Ok(PauliOp { n, a, b })
    }

    pub fn identity(n: usize) -> Self {
        PauliOp { n, a: 0, b: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amp: Vec<Complex64>,
}

fn check_capacity(m: usize) -> Result<()> {
    if m > MAX_QUBITS {
        return Err(Error::Capacity {
            what: "register size in qubits",
            value: m,
            limit: MAX_QUBITS,
        });
    }
    Ok(())
}

impl StateVector {
    pub fn basis(num_qubits: usize, index: u64) -> Result<Self> {
        check_capacity(num_qubits)?;
        let len = 1usize << num_qubits;
        if index as usize >= len {
            return Err(Error::Dimension(format!(
                "basis index {index} outside {num_qubits} qubits"
            )));
        }
        let mut amp = vec![Complex64::new(0.0, 0.0); len];
        amp[index as usize] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amp })
    }

    pub fn from_amplitudes(num_qubits: usize, amp: Vec<Complex64>) -> Result<Self> {
        check_capacity(num_qubits)?;
        if amp.len() != 1usize << num_qubits {
            return Err(Error::Dimension(format!(
                "{} amplitudes for {num_qubits} qubits",
                amp.len()
            )));
        }
        Ok(StateVector { num_qubits, amp })
    }

    /// Uniform superposition over the given basis states, which must be distinct.
    fn uniform(num_qubits: usize, support: impl ExactSizeIterator<Item = u64>) -> Result<Self> {
        check_capacity(num_qubits)?;
        let scale = 1.0 / (support.len() as f64).sqrt();
        let mut amp = vec![Complex64::new(0.0, 0.0); 1usize << num_qubits];
        for v in support {
            amp[v as usize] = Complex64::new(scale, 0.0);
        }
        Ok(StateVector { num_qubits, amp })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn amplitude(&self, index: u64) -> Complex64 {
        self.amp[index as usize]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `self ⊗ other`, with `self` occupying the leading qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let m = self.num_qubits + other.num_qubits;
        check_capacity(m)?;
        let mut amp = Vec::with_capacity(1usize << m);
        for &a in &self.amp {
            amp.extend(other.amp.iter().map(|&b| a * b));
        }
        Ok(StateVector { num_qubits: m, amp })
    }

    pub fn scaled(&self, factor: Complex64) -> StateVector {
        StateVector {
            num_qubits: self.num_qubits,
            amp: self.amp.iter().map(|&a| a * factor).collect(),
        }
    }

    /// Largest amplitude-wise distance `|self_v - other_v|`.
    pub fn max_deviation(&self, other: &StateVector) -> Result<f64> {
        self.check_same_size(other)?;
        Ok(self
            .amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_same_size(other)?;
        Ok(self.amp.iter().zip(&other.amp).map(|(a, b)| a.conj() * b).sum())
    }

    fn check_same_size(&self, other: &StateVector) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::Dimension(format!(
                "registers differ: {} vs {} qubits",
                self.num_qubits, other.num_qubits
            )));
        }
        Ok(())
    }

    /// Nonzero amplitudes, one `index re im` line each.
    pub fn dump_nonzero(&self) -> String {
        let mut s = String::new();
        for (i, a) in self.amp.iter().enumerate() {
            if a.norm_sqr() > 0.0 {
                s.push_str(&format!("{i} {:e} {:e}\n", a.re, a.im));
            }
        }
        s
    }
}

fn unpack_logical(q: &CssCode, psi: &[u8]) -> Result<u64> {
    if psi.len() != q.k() {
        return Err(Error::Dimension(format!(
            "logical vector has {} entries, code encodes {}",
            psi.len(),
            q.k()
        )));
    }
    psi.iter().try_fold(0u64, |acc, &b| match b {
        0 | 1 => Ok((acc << 1) | b as u64),
        other => Err(Error::Dimension(format!("{other} is not a bit"))),
    })
}

/// `|psi>_L`: uniform superposition over the coset `psi * A + C2^perp`.
pub fn encode_logical(q: &CssCode, psi: &[u8]) -> Result<StateVector> {
    let packed = unpack_logical(q, psi)?;
    encode_logical_packed(q, packed)
}

/// As [`encode_logical`], with `psi` packed so logical qubit 1 is the most
/// significant of `k` bits.
pub fn encode_logical_packed(q: &CssCode, psi: u64) -> Result<StateVector> {
    check_capacity(q.n())?;
    if psi >> q.k() != 0 {
        return Err(Error::Dimension(format!("{psi} is not a {}-bit vector", q.k())));
    }
    let x = q.encoding().combine(psi);
    let stab = q.x_stabilizers().row_space_elements();
    StateVector::uniform(q.n(), stab.into_iter().map(|y| x ^ y))
}

/// `|psi_a>_L ⊗ |psi_b>_L` built directly on the joint `2n`-qubit register.
pub fn encode_logical_pair(qa: &CssCode, qb: &CssCode, psi_a: u64, psi_b: u64) -> Result<StateVector> {
    let (na, nb) = (qa.n(), qb.n());
    check_capacity(na + nb)?;
    if psi_a >> qa.k() != 0 || psi_b >> qb.k() != 0 {
        return Err(Error::Dimension("logical vector too long".into()));
    }
    let xa = qa.encoding().combine(psi_a);
    let xb = qb.encoding().combine(psi_b);
    let ya = qa.x_stabilizers().row_space_elements();
    let zb = qb.x_stabilizers().row_space_elements();
    let support: Vec<u64> = ya
        .iter()
        .flat_map(|&y| zb.iter().map(move |&z| ((xa ^ y) << nb) | (xb ^ z)))
        .collect();
    StateVector::uniform(na + nb, support.into_iter())
}

/// Applies `X^{a_i} Z^{b_i}` to qubit `offset + i` (0-based offset):
/// `|v> -> (-1)^{b.v} |v + a>`.
pub fn apply_pauli(s: &StateVector, p: &PauliOp, offset: usize) -> Result<StateVector> {
    let m = s.num_qubits;
    if offset + p.n > m {
        return Err(Error::Dimension(format!(
            "Pauli on qubits {}..{} exceeds a {m}-qubit register",
            offset + 1,
            offset + p.n
        )));
    }
    let shift = m - offset - p.n;
    let a = (p.a << shift) as usize;
    let b = (p.b << shift) as usize;
    let mut amp = vec![Complex64::new(0.0, 0.0); s.amp.len()];
    for (v, &x) in s.amp.iter().enumerate() {
        let sign = if (v & b).count_ones() & 1 == 1 { -1.0 } else { 1.0 };
        amp[v ^ a] = x * sign;
    }
    Ok(StateVector { num_qubits: m, amp })
}

fn halves(s: &StateVector, n: usize) -> Result<()> {
    if s.num_qubits != 2 * n {
        return Err(Error::Dimension(format!(
            "transversal gate on n = {n} needs {} qubits, register has {}",
            2 * n,
            s.num_qubits
        )));
    }
    Ok(())
}

/// CNOT from qubit `i` to qubit `n + i` for every `i`: `|v>|w> -> |v>|v+w>`.
pub fn apply_transversal_cnot(s: &StateVector, n: usize) -> Result<StateVector> {
    halves(s, n)?;
    let mut amp = vec![Complex64::new(0.0, 0.0); s.amp.len()];
    for (idx, &x) in s.amp.iter().enumerate() {
        amp[idx ^ (idx >> n)] = x;
    }
    Ok(StateVector {
        num_qubits: s.num_qubits,
        amp,
    })
}

/// CZ on every pair `(i, n + i)`: amplitude of `|v>|w>` times `(-1)^{v.w}`.
pub fn apply_transversal_cz(s: &StateVector, n: usize) -> Result<StateVector> {
    halves(s, n)?;
    let low = gf2::low_mask(n) as usize;
    let amp = s
        .amp
        .iter()
        .enumerate()
        .map(|(idx, &x)| {
            if ((idx >> n) & idx & low).count_ones() & 1 == 1 {
                -x
            } else {
                x
            }
        })
        .collect();
    Ok(StateVector {
        num_qubits: s.num_qubits,
        amp,
    })
}

/// `|<s1|s2>|^2`.
pub fn fidelity(s1: &StateVector, s2: &StateVector) -> Result<f64> {
    Ok(s1.inner(s2)?.norm_sqr())
}

/// Logical basis vectors `0..2^k`, packed.
pub(crate) fn logical_basis(k: usize) -> std::ops::Range<u64> {
    0..(1u64 << k)
}

/// Encoded states of every logical basis vector.
pub fn encoded_basis(q: &CssCode) -> Result<Vec<StateVector>> {
    logical_basis(q.k()).map(|psi| encode_logical_packed(q, psi)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{make_classical, make_css, steane};
    use crate::gf2::{dual_basis, BitMatrix};
    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    fn shared_first() -> CssCode {
        let g1 = BitMatrix::from_row_strs(&["1100000", "0101111", "0011011", "1011100"]).unwrap();
        let g2p = BitMatrix::from_row_strs(&["1100000", "0101111"]).unwrap();
        make_css(
            &make_classical(&g1).unwrap(),
            &make_classical(&dual_basis(&g2p)).unwrap(),
            None,
        )
        .unwrap()
    }

    fn random_state(m: usize, seed: u64) -> StateVector {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut amp: Vec<Complex64> = (0..1usize << m)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = amp.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amp.iter_mut().for_each(|a| *a /= norm);
        StateVector::from_amplitudes(m, amp).unwrap()
    }

    #[test]
    fn encode_zero_is_uniform_over_stabilizer_span() {
        let q = shared_first();
        let s = encode_logical(&q, &[0, 0]).unwrap();
        let support: Vec<u64> = (0..128u64).filter(|&v| s.amplitude(v).norm() > 0.0).collect();
        assert_eq!(support, vec![0b0000000, 0b0101111, 0b1001111, 0b1100000]);
    }

    #[test]
    fn encode_first_logical_one() {
        let q = shared_first();
        let s = encode_logical(&q, &[1, 0]).unwrap();
        let x = 0b0011011u64;
        for y in [0u64, 0b1100000, 0b0101111, 0b1001111] {
            assert!((s.amplitude(x ^ y) - Complex64::new(0.5, 0.0)).norm() < TOL);
        }
        assert!((s.norm_sqr() - 1.0).abs() < TOL);
        assert!(encode_logical(&q, &[1]).is_err());
    }

    #[test]
    fn encoded_basis_is_orthonormal() {
        for q in [shared_first(), steane()] {
            let basis = encoded_basis(&q).unwrap();
            for (i, s) in basis.iter().enumerate() {
                for (j, t) in basis.iter().enumerate() {
                    let ip = s.inner(t).unwrap();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((ip - Complex64::new(expect, 0.0)).norm() < TOL);
                }
            }
        }
        let q = shared_first();
        let f = fidelity(
            &encode_logical(&q, &[0, 0]).unwrap(),
            &encode_logical(&q, &[1, 0]).unwrap(),
        )
        .unwrap();
        assert!(f.abs() < TOL);
    }

    #[test]
    fn stabilizers_fix_encoded_states() {
        for q in [shared_first(), steane()] {
            for s in encoded_basis(&q).unwrap() {
                for g in q.stabilizer_generators() {
                    let p = PauliOp::new(q.n(), g.a, g.b).unwrap();
                    let t = apply_pauli(&s, &p, 0).unwrap();
                    assert!(t.max_deviation(&s).unwrap() < TOL);
                }
            }
        }
    }

    #[test]
    fn pauli_examples() {
        let s = StateVector::basis(1, 0).unwrap();
        let x = PauliOp::new(1, 1, 0).unwrap();
        assert_eq!(apply_pauli(&s, &x, 0).unwrap(), StateVector::basis(1, 1).unwrap());
        let r = random_state(3, 7);
        assert_eq!(apply_pauli(&r, &PauliOp::identity(3), 0).unwrap(), r);
        // Z then X on |1>: X Z |1> = -|0>.
        let y_like = PauliOp::new(1, 1, 1).unwrap();
        let out = apply_pauli(&StateVector::basis(1, 1).unwrap(), &y_like, 0).unwrap();
        assert_eq!(out.amplitude(0), Complex64::new(-1.0, 0.0));
        assert!(apply_pauli(&r, &x, 3).is_err());
        // Offset addresses qubit 2 of 3 (0-based offset 1).
        let out = apply_pauli(&StateVector::basis(3, 0).unwrap(), &x, 1).unwrap();
        assert_eq!(out, StateVector::basis(3, 0b010).unwrap());
    }

    #[test]
    fn transversal_gate_examples() {
        let v = 0b101u64;
        let s = StateVector::basis(6, v << 3).unwrap();
        assert_eq!(
            apply_transversal_cnot(&s, 3).unwrap(),
            StateVector::basis(6, (v << 3) | v).unwrap()
        );
        let s = StateVector::basis(2, 0).unwrap();
        assert_eq!(apply_transversal_cnot(&s, 1).unwrap(), s);

        let s = StateVector::basis(2, 0b11).unwrap();
        assert_eq!(apply_transversal_cz(&s, 1).unwrap().amplitude(3), Complex64::new(-1.0, 0.0));
        let s = StateVector::basis(6, 0b000_111).unwrap();
        assert_eq!(apply_transversal_cz(&s, 3).unwrap(), s);
        assert!(apply_transversal_cz(&StateVector::basis(3, 0).unwrap(), 1).is_err());
    }

    #[test]
    fn joint_encoding_matches_tensor_product() {
        let qa = shared_first();
        let qb = steane();
        for pa in 0..4 {
            for pb in 0..2 {
                let joint = encode_logical_pair(&qa, &qb, pa, pb).unwrap();
                let tensor = encode_logical_packed(&qa, pa)
                    .unwrap()
                    .tensor(&encode_logical_packed(&qb, pb).unwrap())
                    .unwrap();
                assert!(joint.max_deviation(&tensor).unwrap() < TOL);
            }
        }
    }

    #[test]
    fn capacity_limit() {
        assert!(StateVector::basis(29, 0).unwrap_err().is_capacity());
    }

    #[test]
    fn dump_lists_nonzero_amplitudes() {
        let s = StateVector::basis(2, 2).unwrap();
        assert_eq!(s.dump_nonzero(), "2 1e0 0e0\n");
    }

    proptest! {
        #[test]
        fn gates_are_involutions_and_preserve_norm(seed in any::<u64>(), n in 1usize..=4) {
            let s = random_state(2 * n, seed);
            let c = apply_transversal_cnot(&s, n).unwrap();
            let z = apply_transversal_cz(&s, n).unwrap();
            prop_assert!((c.norm_sqr() - 1.0).abs() < TOL);
            prop_assert!((z.norm_sqr() - 1.0).abs() < TOL);
            prop_assert!(apply_transversal_cnot(&c, n).unwrap().max_deviation(&s).unwrap() < TOL);
            prop_assert!(apply_transversal_cz(&z, n).unwrap().max_deviation(&s).unwrap() < TOL);
            let p = PauliOp::new(n, seed & gf2::low_mask(n), (seed >> 8) & gf2::low_mask(n)).unwrap();
            let t = apply_pauli(&s, &p, n).unwrap();
            prop_assert!((t.norm_sqr() - 1.0).abs() < TOL);
            prop_assert!((fidelity(&s, &s).unwrap() - 1.0).abs() < TOL);
        }
    }
}
