//! Seeded random CSS pairs for property testing. Every pair is a pure
//! function of its seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::{make_classical, make_css, CssCode};
use crate::error::Result;
use crate::gf2::{self, BitMatrix};
use crate::transversality::make_mirrored_pair;

/// `rows` independent random vectors from the span of `basis`, each also
/// independent of `avoid`. The caller guarantees there is room.
fn random_independent<R: Rng>(rng: &mut R, basis: &BitMatrix, avoid: &BitMatrix, rows: usize) -> BitMatrix {
    let d = basis.num_rows();
    let mut span = avoid.span();
    let mut out = BitMatrix::empty(basis.num_cols());
    while out.num_rows() < rows {
        let v = basis.combine(rng.gen::<u64>() & gf2::low_mask(d));
        if span.insert(v) {
            out.push_row(v);
        }
    }
    out
}

fn random_full_rank<R: Rng>(rng: &mut R, rows: usize, n: usize) -> BitMatrix {
    random_independent(rng, &BitMatrix::identity(n), &BitMatrix::empty(n), rows)
}

/// Invertible `k x k` matrix.
pub fn random_invertible<R: Rng>(rng: &mut R, k: usize) -> BitMatrix {
    random_full_rank(rng, k, k)
}

fn css_from(c1: &BitMatrix, x_stab: &BitMatrix, enc: Option<&BitMatrix>) -> Result<CssCode> {
    make_css(
        &make_classical(c1)?,
        &make_classical(&gf2::dual_basis(x_stab))?,
        enc,
    )
}

/// Random `[[n, k]]` CSS code with a random valid encoding.
pub fn random_css<R: Rng>(rng: &mut R, n: usize, k: usize) -> Result<CssCode> {
    let r2 = rng.gen_range(0..=n - k);
    let x_stab = random_full_rank(rng, r2, n);
    let reps = random_independent(rng, &BitMatrix::identity(n), &x_stab, k);
    let q = css_from(&x_stab.vstack(&reps)?, &x_stab, None)?;
    let enc = random_encoding(rng, &q)?;
    q.with_encoding(&enc)
}

/// `W A + S`: a random invertible mix of the current representatives plus
/// random stabilizer elements per row.
pub fn random_encoding<R: Rng>(rng: &mut R, q: &CssCode) -> Result<BitMatrix> {
    let k = q.k();
    let mixed = random_invertible(rng, k).mul(q.encoding())?;
    let stab = q.x_stabilizers();
    let rows = mixed
        .rows()
        .iter()
        .map(|&a| a ^ stab.combine(rng.gen::<u64>() & gf2::low_mask(stab.num_rows())))
        .collect();
    BitMatrix::from_rows(q.n(), rows)
}

/// `(G1perp, G2perp)` with orthogonal rows and `n - rank1 - rank2 = k`.
pub fn random_mirrored_generators<R: Rng>(rng: &mut R, n: usize, k: usize) -> (BitMatrix, BitMatrix) {
    let r2 = rng.gen_range(0..=n - k);
    let g2p = random_full_rank(rng, r2, n);
    let g1p = random_independent(rng, &gf2::dual_basis(&g2p), &BitMatrix::empty(n), n - k - r2);
    (g1p, g2p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// `C2perp ⊆ C4perp`, often with `B = A` modulo `C4perp`.
    Nested,
    /// Two unrelated codes with equal `k`.
    Independent,
    /// A mirrored pair, repaired or with a scrambled second encoding.
    Mirrored,
    /// One code with two random encodings.
    SameCode,
}

#[derive(Debug, Clone)]
pub struct CorpusPair {
    pub seed: u64,
    pub kind: PairKind,
    pub qa: CssCode,
    pub qb: CssCode,
}

fn nested_pair<R: Rng>(rng: &mut R, n: usize, k: usize) -> Result<(CssCode, CssCode)> {
    let qa = random_css(rng, n, k)?;
    let g2p = qa.x_stabilizers();
    let room = n - k - g2p.num_rows();
    let count = rng.gen_range(0..=room);
    let extra = random_independent(rng, &BitMatrix::identity(n), g2p, count);
    let g4p = g2p.vstack(&extra)?;
    let reuse = rng.gen_bool(0.75) && {
        let mut s = g4p.span();
        qa.encoding().rows().iter().all(|&a| s.insert(a))
    };
    let qb = if reuse {
        let base = css_from(&g4p.vstack(qa.encoding())?, &g4p, Some(qa.encoding()))?;
        if rng.gen_bool(0.5) {
            let shifted = qa
                .encoding()
                .rows()
                .iter()
                .map(|&a| a ^ g4p.combine(rng.gen::<u64>() & gf2::low_mask(g4p.num_rows())))
                .collect();
            base.with_encoding(&BitMatrix::from_rows(n, shifted)?)?
        } else {
            base
        }
    } else {
        let reps = random_independent(rng, &BitMatrix::identity(n), &g4p, k);
        let base = css_from(&g4p.vstack(&reps)?, &g4p, None)?;
        let enc = random_encoding(rng, &base)?;
        base.with_encoding(&enc)?
    };
    Ok((qa, qb))
}

fn mirrored_pair<R: Rng>(rng: &mut R, n: usize, k: usize) -> Result<(CssCode, CssCode)> {
    let (g1p, g2p) = random_mirrored_generators(rng, n, k);
    let (q1, q2) = make_mirrored_pair(&g1p, &g2p)?;
    if rng.gen_bool(0.5) {
        let enc = random_encoding(rng, &q2)?;
        return Ok((q1, q2.with_encoding(&enc)?));
    }
    Ok((q1, q2))
}

/// A pair on `n` qubits with `1 <= k <= min(3, n - 1)`, determined by `seed`.
pub fn random_pair(seed: u64, n: usize) -> Result<CorpusPair> {
    assert!((2..=gf2::MAX_COLS).contains(&n));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=3.min(n - 1));
    let kind = match rng.gen_range(0..4) {
        0 => PairKind::Nested,
        1 => PairKind::Independent,
        2 => PairKind::Mirrored,
        _ => PairKind::SameCode,
    };
    let (qa, qb) = match kind {
        PairKind::Nested => nested_pair(&mut rng, n, k)?,
        PairKind::Independent => (random_css(&mut rng, n, k)?, random_css(&mut rng, n, k)?),
        PairKind::Mirrored => mirrored_pair(&mut rng, n, k)?,
        PairKind::SameCode => {
            let q = random_css(&mut rng, n, k)?;
            let enc = random_encoding(&mut rng, &q)?;
            let other = q.with_encoding(&enc)?;
            (q, other)
        }
    };
    Ok(CorpusPair { seed, kind, qa, qb })
}
