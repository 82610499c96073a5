//! Algebraic deciders for transversal CNOT and CZ between two CSS codes, the
//! mirrored-pair construction, and brute-force state-vector oracles.
//!
//! Station A holds `CSS(C1, C2)` with representatives `A`; station B holds
//! `CSS(C3, C4)` with representatives `B`. Qubit `i` of A is paired with
//! qubit `n + i` of the joint register.
//!
//! The CNOT checker has two modes. `Strict` demands `A = B` entrywise.
//! `Coset` demands only that every row of `A + B` lies in `C4^perp`, which is
//! exactly when the encode-then-gate and gate-then-encode states coincide;
//! `Strict` implies `Coset`, and the oracle agrees with `Coset`.
//!
//! The CZ checker tests `A B^T = I` plus three generator-level products
//! (`G2perp G4perp^T`, `A G4perp^T`, `G2perp B^T`, all zero). The phase
//! condition over all logical inputs and stabilizer elements is a sum of
//! bilinear forms, so it vanishes identically iff it vanishes on generators.
//!
//! An unrelated remark sometimes attached to the CZ condition asks for
//! `A B^T != I`; that contradicts the derivation above and is not
//! implemented. The oracle decides any such question.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::codes::{make_classical, make_css, CssCode};
use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix};
use crate::statevec::{self, StateVector};

/// Amplitude tolerance for oracle comparisons.
pub const ORACLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Gate {
    #[serde(rename = "CNOT")]
    Cnot,
    #[serde(rename = "CZ")]
    Cz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CnotMode {
    Strict,
    #[default]
    Coset,
}

impl CnotMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CnotMode::Strict => "strict",
            CnotMode::Coset => "coset",
        }
    }
}

impl std::str::FromStr for CnotMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(CnotMode::Strict),
            "coset" => Ok(CnotMode::Coset),
            other => Err(Error::Config(format!("unknown CNOT mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub id: String,
    pub holds: bool,
}

fn cond(id: &str, holds: bool) -> Condition {
    Condition {
        id: id.to_string(),
        holds,
    }
}

/// Logical input pair, each packed with logical qubit 1 most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub psi_a: u64,
    pub psi_b: u64,
    pub k: usize,
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Witness", 2)?;
        st.serialize_field("psi_a", &gf2::bit_string(self.psi_a, self.k))?;
        st.serialize_field("psi_b", &gf2::bit_string(self.psi_b, self.k))?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleOutcome {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub max_deviation: f64,
    pub pairs_checked: usize,
    /// Result of the extra all-`|+>_L` superposition comparison (CZ only).
    pub superposition_holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransversalityReport {
    pub format: u32,
    pub gate: Gate,
    pub mode: String,
    pub verdict: bool,
    pub conditions: Vec<Condition>,
    pub witness: Option<Witness>,
    pub oracle_checked: bool,
    pub oracle: Option<OracleOutcome>,
    pub notes: Vec<String>,
    pub matrices: BTreeMap<String, String>,
    pub seed: Option<u64>,
}

impl TransversalityReport {
    fn new(gate: Gate, mode: &str, conditions: Vec<Condition>, verdict: bool) -> Self {
        TransversalityReport {
            format: 1,
            gate,
            mode: mode.to_string(),
            verdict,
            conditions,
            witness: None,
            oracle_checked: false,
            oracle: None,
            notes: Vec::new(),
            matrices: BTreeMap::new(),
            seed: None,
        }
    }

    pub fn condition(&self, id: &str) -> Option<bool> {
        self.conditions.iter().find(|c| c.id == id).map(|c| c.holds)
    }

    pub fn attach_oracle(&mut self, outcome: OracleOutcome) {
        self.oracle_checked = true;
        self.witness = outcome.witness;
        self.oracle = Some(outcome);
    }

    /// `None` until an oracle has been attached.
    pub fn oracle_agrees(&self) -> Option<bool> {
        self.oracle.as_ref().map(|o| o.holds == self.verdict)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_pretty(&self) -> String {
        let gate = match self.gate {
            Gate::Cnot => "CNOT",
            Gate::Cz => "CZ",
        };
        let mut s = format!(
            "{gate}-transversality ({}): {}\n",
            self.mode,
            if self.verdict { "YES" } else { "NO" }
        );
        for c in &self.conditions {
            s.push_str(&format!("  [{}] {}\n", if c.holds { "x" } else { " " }, c.id));
        }
        for n in &self.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
        if let Some(o) = &self.oracle {
            s.push_str(&format!(
                "  oracle: {} over {} logical pairs, max deviation {:e}\n",
                if o.holds { "agrees with gate" } else { "mismatch" },
                o.pairs_checked,
                o.max_deviation
            ));
        }
        if let Some(w) = &self.witness {
            s.push_str(&format!(
                "  witness: psi_a = {}, psi_b = {}\n",
                gf2::bit_string(w.psi_a, w.k),
                gf2::bit_string(w.psi_b, w.k)
            ));
        }
        s
    }

    fn echo(&mut self, name: &str, m: &BitMatrix) {
        self.matrices.insert(name.to_string(), m.to_text());
    }
}

fn same_length(qa: &CssCode, qb: &CssCode) -> Result<()> {
    if qa.n() != qb.n() {
        return Err(Error::Dimension(format!(
            "block lengths differ: {} vs {}",
            qa.n(),
            qb.n()
        )));
    }
    Ok(())
}

fn product_is_zero(a: &BitMatrix, b: &BitMatrix) -> Result<bool> {
    Ok(a.mul_transpose(b)?.is_zero())
}

fn abt_is_identity(qa: &CssCode, qb: &CssCode) -> Result<bool> {
    if qa.k() != qb.k() {
        return Ok(false);
    }
    Ok(qa.encoding().mul_transpose(qb.encoding())?.is_identity())
}

fn k_note(report: &mut TransversalityReport, qa: &CssCode, qb: &CssCode) {
    if qa.k() != qb.k() {
        report
            .notes
            .push(format!("k_mismatch: {} vs {}", qa.k(), qb.k()));
    }
}

/// Decides CNOT-transversality with `qa` as control and `qb` as target.
pub fn check_cnot_transversal(qa: &CssCode, qb: &CssCode, mode: CnotMode) -> Result<TransversalityReport> {
    same_length(qa, qb)?;
    let k_match = qa.k() == qb.k();
    let nested = gf2::subspace_leq(qa.x_stabilizers(), qb.x_stabilizers())?;
    let encoding = match mode {
        CnotMode::Strict => ("A_eq_B", k_match && qa.encoding() == qb.encoding()),
        CnotMode::Coset => {
            let c4p = qb.x_stabilizers().span();
            let holds = k_match
                && qa
                    .encoding()
                    .rows()
                    .iter()
                    .zip(qb.encoding().rows())
                    .all(|(&a, &b)| c4p.contains(a ^ b));
            ("A_eq_B_mod_C4perp", holds)
        }
    };
    let conditions = vec![
        cond("k_match", k_match),
        cond("C2perp_in_C4perp", nested),
        cond(encoding.0, encoding.1),
    ];
    let verdict = conditions.iter().all(|c| c.holds);
    let mut report = TransversalityReport::new(Gate::Cnot, mode.as_str(), conditions, verdict);
    k_note(&mut report, qa, qb);
    report.echo("A", qa.encoding());
    report.echo("B", qb.encoding());
    report.echo("C2perp", qa.x_stabilizers());
    report.echo("C4perp", qb.x_stabilizers());
    Ok(report)
}

/// Decides CZ-transversality of the pair.
pub fn check_cz_transversal(qa: &CssCode, qb: &CssCode) -> Result<TransversalityReport> {
    same_length(qa, qb)?;
    let (g2p, g4p) = (qa.x_stabilizers(), qb.x_stabilizers());
    let conditions = vec![
        cond("k_match", qa.k() == qb.k()),
        cond("cz_bilinear_1", product_is_zero(g2p, g4p)?),
        cond("cz_bilinear_2", product_is_zero(qa.encoding(), g4p)?),
        cond("cz_bilinear_3", product_is_zero(g2p, qb.encoding())?),
        cond("ABt_is_identity", abt_is_identity(qa, qb)?),
    ];
    let verdict = conditions.iter().all(|c| c.holds);
    let mut report = TransversalityReport::new(Gate::Cz, "exact", conditions, verdict);
    k_note(&mut report, qa, qb);
    report.echo("A", qa.encoding());
    report.echo("B", qb.encoding());
    report.echo("C2perp", g2p);
    report.echo("C4perp", g4p);
    if qa.k() == qb.k() {
        report.echo("ABt", &qa.encoding().mul_transpose(qb.encoding())?);
    }
    Ok(report)
}

/// Two sufficient conditions for CZ-transversality; the verdict is their
/// disjunction.
///
/// Branch 1: rows of `A` in `C4`, `C3 ⊆ C2`, `A B^T = I`.
/// Branch 2: `C1 ⊆ C4`, rows of `B` in `C2`, `A B^T = I`.
pub fn check_cz_sufficient(qa: &CssCode, qb: &CssCode) -> Result<TransversalityReport> {
    same_length(qa, qb)?;
    let (g2p, g4p) = (qa.x_stabilizers(), qb.x_stabilizers());
    let a_in_c4 = product_is_zero(qa.encoding(), g4p)?;
    let c3_in_c2 = product_is_zero(qb.c1().generator(), g2p)?;
    let c1_in_c4 = product_is_zero(qa.c1().generator(), g4p)?;
    let b_in_c2 = product_is_zero(qb.encoding(), g2p)?;
    let identity = abt_is_identity(qa, qb)?;
    let branch1 = a_in_c4 && c3_in_c2 && identity;
    let branch2 = c1_in_c4 && b_in_c2 && identity;
    let conditions = vec![
        cond("A_in_C4", a_in_c4),
        cond("C3_in_C2", c3_in_c2),
        cond("C1_in_C4", c1_in_c4),
        cond("B_in_C2", b_in_c2),
        cond("ABt_is_identity", identity),
        cond("cor1_branch1", branch1),
        cond("cor1_branch2", branch2),
    ];
    let mut report = TransversalityReport::new(Gate::Cz, "sufficient", conditions, branch1 || branch2);
    k_note(&mut report, qa, qb);
    report.echo("A", qa.encoding());
    report.echo("B", qb.encoding());
    Ok(report)
}

fn oracle_preconditions(qa: &CssCode, qb: &CssCode) -> Result<()> {
    same_length(qa, qb)?;
    if qa.k() != qb.k() {
        return Err(Error::LogicalDimension { a: qa.k(), b: qb.k() });
    }
    let m = 2 * qa.n();
    if m > statevec::MAX_QUBITS {
        return Err(Error::Capacity {
            what: "joint register size in qubits",
            value: m,
            limit: statevec::MAX_QUBITS,
        });
    }
    Ok(())
}

/// Runs `compare(psi_a, psi_b)` over every logical pair, returning the
/// deviation table folded into an outcome with the smallest failing pair.
fn sweep_pairs<F>(k: usize, compare: F) -> Result<OracleOutcome>
where
    F: Fn(u64, u64) -> Result<f64> + Sync,
{
    let size = 1u64 << k;
    let rows: Vec<Vec<f64>> = (0..size)
        .into_par_iter()
        .map(|pa| (0..size).map(|pb| compare(pa, pb)).collect::<Result<Vec<f64>>>())
        .collect::<Result<_>>()?;
    let mut witness = None;
    let mut max_deviation = 0.0f64;
    for (pa, row) in rows.iter().enumerate() {
        for (pb, &dev) in row.iter().enumerate() {
            max_deviation = max_deviation.max(dev);
            if witness.is_none() && dev > ORACLE_TOLERANCE {
                witness = Some(Witness {
                    psi_a: pa as u64,
                    psi_b: pb as u64,
                    k,
                });
            }
        }
    }
    Ok(OracleOutcome {
        holds: witness.is_none(),
        witness,
        max_deviation,
        pairs_checked: (size * size) as usize,
        superposition_holds: None,
    })
}

/// Compares `CNOT(|psi_a>_L ⊗ |psi_b>_L)` with `|psi_a>_L ⊗ |psi_a + psi_b>_L`
/// amplitude by amplitude for every logical basis pair.
pub fn oracle_cnot(qa: &CssCode, qb: &CssCode) -> Result<OracleOutcome> {
    oracle_preconditions(qa, qb)?;
    let n = qa.n();
    let sa = statevec::encoded_basis(qa)?;
    let sb = statevec::encoded_basis(qb)?;
    sweep_pairs(qa.k(), |pa, pb| {
        let (pa, pb) = (pa as usize, pb as usize);
        let physical = statevec::apply_transversal_cnot(&sa[pa].tensor(&sb[pb])?, n)?;
        let logical = sa[pa].tensor(&sb[pa ^ pb])?;
        physical.max_deviation(&logical)
    })
}

fn parity_sign(pa: u64, pb: u64) -> f64 {
    if (pa & pb).count_ones() & 1 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Compares `CZ(|psi_a>_L ⊗ |psi_b>_L)` with `(-1)^{psi_a . psi_b}
/// |psi_a>_L ⊗ |psi_b>_L`, sign included, then repeats the comparison on the
/// uniform logical superposition of both registers.
pub fn oracle_cz(qa: &CssCode, qb: &CssCode) -> Result<OracleOutcome> {
    oracle_preconditions(qa, qb)?;
    let n = qa.n();
    let sa = statevec::encoded_basis(qa)?;
    let sb = statevec::encoded_basis(qb)?;
    let mut outcome = sweep_pairs(qa.k(), |pa, pb| {
        let product = sa[pa as usize].tensor(&sb[pb as usize])?;
        let physical = statevec::apply_transversal_cz(&product, n)?;
        let logical = product.scaled(Complex64::new(parity_sign(pa, pb), 0.0));
        physical.max_deviation(&logical)
    })?;

    let size = sa.len();
    let weight = 1.0 / (size as f64).sqrt();
    let plus = |basis: &[StateVector]| -> StateVector {
        let mut amp = vec![Complex64::new(0.0, 0.0); 1 << n];
        for s in basis {
            for (acc, x) in amp.iter_mut().zip(s.amplitudes()) {
                *acc += x * weight;
            }
        }
        StateVector::from_amplitudes(n, amp).expect("size checked")
    };
    let physical = statevec::apply_transversal_cz(&plus(&sa).tensor(&plus(&sb))?, n)?;
    let mut logical = vec![Complex64::new(0.0, 0.0); 1 << (2 * n)];
    for (pa, a) in sa.iter().enumerate() {
        for (pb, b) in sb.iter().enumerate() {
            let c = parity_sign(pa as u64, pb as u64) * weight * weight;
            let term = a.tensor(b)?;
            for (acc, x) in logical.iter_mut().zip(term.amplitudes()) {
                *acc += x * c;
            }
        }
    }
    let logical = StateVector::from_amplitudes(2 * n, logical)?;
    let dev = physical.max_deviation(&logical)?;
    outcome.max_deviation = outcome.max_deviation.max(dev);
    outcome.superposition_holds = Some(dev <= ORACLE_TOLERANCE);
    outcome.holds &= dev <= ORACLE_TOLERANCE;
    Ok(outcome)
}

/// CNOT check followed by the oracle, when the logical dimensions allow it.
pub fn verify_cnot(qa: &CssCode, qb: &CssCode, mode: CnotMode) -> Result<TransversalityReport> {
    let mut report = check_cnot_transversal(qa, qb, mode)?;
    if qa.k() == qb.k() {
        report.attach_oracle(oracle_cnot(qa, qb)?);
    } else {
        report.notes.push("oracle skipped: logical dimensions differ".into());
    }
    Ok(report)
}

/// CZ check followed by the oracle, when the logical dimensions allow it.
pub fn verify_cz(qa: &CssCode, qb: &CssCode) -> Result<TransversalityReport> {
    let mut report = check_cz_transversal(qa, qb)?;
    if qa.k() == qb.k() {
        report.attach_oracle(oracle_cz(qa, qb)?);
    } else {
        report.notes.push("oracle skipped: logical dimensions differ".into());
    }
    Ok(report)
}

/// The mirrored pair with default (unrepaired) encodings: the first code has
/// X stabilizers `g2_perp` and Z stabilizers `g1_perp`, the second swaps them.
pub fn mirrored_codes(g1_perp: &BitMatrix, g2_perp: &BitMatrix) -> Result<(CssCode, CssCode)> {
    if g1_perp.num_cols() != g2_perp.num_cols() {
        return Err(Error::Dimension(format!(
            "generators have {} and {} columns",
            g1_perp.num_cols(),
            g2_perp.num_cols()
        )));
    }
    if !product_is_zero(g2_perp, g1_perp)? {
        return Err(Error::NotCssPair(
            "rows of G2perp are not orthogonal to rows of G1perp".into(),
        ));
    }
    let c1 = make_classical(&gf2::dual_basis(g1_perp))?;
    let c2 = make_classical(&gf2::dual_basis(g2_perp))?;
    Ok((make_css(&c1, &c2, None)?, make_css(&c2, &c1, None)?))
}

/// Mirrored pair with encodings repaired so that `A' B^T = I`.
pub fn make_mirrored_pair(g1_perp: &BitMatrix, g2_perp: &BitMatrix) -> Result<(CssCode, CssCode)> {
    let (q1, q2) = mirrored_codes(g1_perp, g2_perp)?;
    let (a, b) = cz_encodings_for_mirrored(&q1, &q2)?;
    Ok((q1.with_encoding(&a)?, q2.with_encoding(&b)?))
}

/// Re-chooses the first code's representatives as `W A` with `W (A B^T) = I`.
///
/// `A B^T` is always invertible for a mirrored pair; a singular product
/// means the inputs were not built as one and is reported as an invariant
/// violation.
pub fn cz_encodings_for_mirrored(q1: &CssCode, q2: &CssCode) -> Result<(BitMatrix, BitMatrix)> {
    same_length(q1, q2)?;
    let mirrored = gf2::row_equivalent(q2.x_stabilizers(), q1.z_stabilizers())?
        && gf2::row_equivalent(q2.z_stabilizers(), q1.x_stabilizers())?;
    if !mirrored {
        return Err(Error::NotCssPair("codes are not a mirrored pair".into()));
    }
    let n = q1.n();
    if q1.k() == 0 {
        return Ok((BitMatrix::empty(n), BitMatrix::empty(n)));
    }
    let (a, b) = (q1.encoding(), q2.encoding());
    let u = a.mul_transpose(b)?;
    let w = gf2::right_identity_transform(&u).map_err(|e| match e {
        Error::Singular { rank, size } => Error::Invariant(format!(
            "A B^T has rank {rank} < {size} for a mirrored pair"
        )),
        other => other,
    })?;
    let repaired = w.mul(a)?;
    if !repaired.mul_transpose(b)?.is_identity() {
        return Err(Error::Invariant("repaired encoding does not give A'B^T = I".into()));
    }
    Ok((repaired, b.clone()))
}

/// A common representative matrix usable as the encoding of both codes so
/// that the pair becomes CNOT-transversal in both modes, if one exists.
///
/// Candidates are the current rows of `A`, then of `B`, then a basis of
/// `C1 ∩ C3`; each is kept when it lies in `C1 ∩ C3` and is independent of
/// `C4^perp` and of the rows already kept.
pub fn find_cnot_encoding(qa: &CssCode, qb: &CssCode) -> Option<BitMatrix> {
    if qa.n() != qb.n() || qa.k() != qb.k() {
        return None;
    }
    if !gf2::subspace_leq(qa.x_stabilizers(), qb.x_stabilizers()).ok()? {
        return None;
    }
    let common = gf2::intersection(qa.c1().generator(), qb.c1().generator()).ok()?;
    let common_span = common.span();
    let mut span = qb.x_stabilizers().span();
    let mut picked = BitMatrix::empty(qa.n());
    let candidates = qa
        .encoding()
        .rows()
        .iter()
        .chain(qb.encoding().rows())
        .chain(common.rows());
    for &v in candidates {
        if picked.num_rows() == qa.k() {
            break;
        }
        if common_span.contains(v) && span.insert(v) {
            picked.push_row(v);
        }
    }
    (picked.num_rows() == qa.k()).then_some(picked)
}

/// Consistency of a hand-written mirrored pair against the generators it
/// claims to come from: the second code should have `G4perp ~ G1perp` and
/// `C3 = C2`, the representatives should sit in the right codes, and
/// `A B^T` should be the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisplayAudit {
    pub consistent: bool,
    pub conditions: Vec<Condition>,
}

pub fn audit_mirrored_display(
    g1_perp: &BitMatrix,
    g2_perp: &BitMatrix,
    a: &BitMatrix,
    g4_perp: &BitMatrix,
    b: &BitMatrix,
) -> Result<DisplayAudit> {
    let indep = |rows: &BitMatrix, base: &BitMatrix| {
        let mut span = base.span();
        rows.rows().iter().all(|&r| span.insert(r))
    };
    let ab = if a.num_rows() == b.num_rows() {
        a.mul_transpose(b)?.is_identity()
    } else {
        false
    };
    let conditions = vec![
        cond("G2perp_orthogonal_G1perp", product_is_zero(g2_perp, g1_perp)?),
        cond("G4perp_rowequiv_G1perp", gf2::row_equivalent(g4_perp, g1_perp)?),
        cond("A_in_C1", product_is_zero(a, g1_perp)?),
        cond("A_indep_mod_C2perp", indep(a, g2_perp)),
        cond("B_in_C3", product_is_zero(b, g2_perp)?),
        cond("B_indep_mod_C4perp", indep(b, g4_perp)),
        cond("ABt_is_identity", ab),
    ];
    Ok(DisplayAudit {
        consistent: conditions.iter().all(|c| c.holds),
        conditions,
    })
}
