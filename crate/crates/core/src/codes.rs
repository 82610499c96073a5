//! Classical linear codes and the CSS codes built from pairs of them.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, Span};

/// Largest dimension for which [`ClassicalCode::min_distance`] enumerates
/// codewords.
pub const MAX_DISTANCE_DIM: usize = 20;

/// An `[n, k, d]` binary linear code held by a full-rank generator matrix.
#[derive(Debug, Clone)]
pub struct ClassicalCode {
    gen: BitMatrix,
    dropped_rows: usize,
    distance: OnceLock<usize>,
}

impl PartialEq for ClassicalCode {
    fn eq(&self, other: &Self) -> bool {
        self.gen == other.gen
    }
}

impl Eq for ClassicalCode {}

/// Builds a code from a generator matrix. Dependent rows are dropped (first
/// occurrence wins), so the stored generator keeps the caller's row order.
pub fn make_classical(gen: &BitMatrix) -> Result<ClassicalCode> {
    if gen.num_cols() == 0 {
        return Err(Error::Dimension("generator has no columns".into()));
    }
    let mut span = Span::new();
    let mut kept = BitMatrix::empty(gen.num_cols());
    for &r in gen.rows() {
        if span.insert(r) {
            kept.push_row(r);
        }
    }
    if kept.num_rows() == 0 {
        return Err(Error::Dimension("generator has rank 0".into()));
    }
    Ok(ClassicalCode {
        dropped_rows: gen.num_rows() - kept.num_rows(),
        gen: kept,
        distance: OnceLock::new(),
    })
}

impl ClassicalCode {
    pub fn n(&self) -> usize {
        self.gen.num_cols()
    }

    pub fn k(&self) -> usize {
        self.gen.num_rows()
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.gen
    }

    /// True when the input generator had dependent rows that were removed.
    pub fn was_rank_deficient(&self) -> bool {
        self.dropped_rows > 0
    }

    pub fn dropped_rows(&self) -> usize {
        self.dropped_rows
    }

    /// Generator of the dual code.
    pub fn dual_generator(&self) -> BitMatrix {
        gf2::dual_basis(&self.gen)
    }

    pub fn contains(&self, v: u64) -> bool {
        self.gen.span().contains(v)
    }

    /// Minimum Hamming weight over the nonzero codewords, by Gray-code walk
    /// over all `2^k - 1` of them. Memoized.
    pub fn min_distance(&self) -> Result<usize> {
        if let Some(&d) = self.distance.get() {
            return Ok(d);
        }
        let k = self.k();
        if k > MAX_DISTANCE_DIM {
            return Err(Error::Capacity {
                what: "code dimension for distance enumeration",
                value: k,
                limit: MAX_DISTANCE_DIM,
            });
        }
        let mut word = 0u64;
        let mut best = u32::MAX;
        for step in 1u64..(1u64 << k) {
            let flip = step.trailing_zeros() as usize;
            word ^= self.gen.row(flip);
            best = best.min(word.count_ones());
        }
        let d = best as usize;
        Ok(*self.distance.get_or_init(|| d))
    }
}

/// Pure X-type or Z-type stabilizer generator `X^a Z^b`, sign fixed at +1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilizerGenerator {
    pub a: u64,
    pub b: u64,
    pub sign: i8,
}

impl StabilizerGenerator {
    /// Whether two generators commute (symplectic product zero).
    pub fn commutes_with(&self, other: &StabilizerGenerator) -> bool {
        (gf2::dot(self.a, other.b) ^ gf2::dot(self.b, other.a)) == 0
    }
}

/// `CSS(C1, C2)` with a chosen coset-representative matrix.
///
/// The encoding maps a logical vector `psi` to the coset `psi * enc_a + C2^perp`.
/// X stabilizers are a generator of `C2^perp`; Z stabilizers a generator of
/// `C1^perp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssCode {
    c1: ClassicalCode,
    c2: ClassicalCode,
    k: usize,
    enc_a: BitMatrix,
    x_stab: BitMatrix,
    z_stab: BitMatrix,
}

/// Validates `C2^perp ⊆ C1` and fixes the encoding. Without `enc_a` the
/// representatives come from [`gf2::complement_basis`] of `C2^perp` in the
/// rows of `C1`'s generator.
pub fn make_css(
    c1: &ClassicalCode,
    c2: &ClassicalCode,
    enc_a: Option<&BitMatrix>,
) -> Result<CssCode> {
    let n = c1.n();
    if c2.n() != n {
        return Err(Error::Dimension(format!(
            "block lengths differ: C1 has {n}, C2 has {}",
            c2.n()
        )));
    }
    let x_stab = c2.dual_generator();
    let z_stab = c1.dual_generator();
    if !gf2::subspace_leq(&x_stab, c1.generator())? {
        return Err(Error::NotCssPair(
            "the dual of C2 is not contained in C1".into(),
        ));
    }
    let k = c1.k() + c2.k() - n;
    let enc_a = match enc_a {
        None => gf2::complement_basis(&x_stab, c1.generator())?,
        Some(a) => {
            validate_encoding(a, c1, &x_stab, k)?;
            a.clone()
        }
    };
    Ok(CssCode {
        c1: c1.clone(),
        c2: c2.clone(),
        k,
        enc_a,
        x_stab,
        z_stab,
    })
}

fn validate_encoding(a: &BitMatrix, c1: &ClassicalCode, x_stab: &BitMatrix, k: usize) -> Result<()> {
    if a.num_cols() != c1.n() {
        return Err(Error::Encoding(format!(
            "encoding has {} columns, code length is {}",
            a.num_cols(),
            c1.n()
        )));
    }
    if a.num_rows() != k {
        return Err(Error::Encoding(format!(
            "encoding has {} rows, logical dimension is {k}",
            a.num_rows()
        )));
    }
    let c1_span = c1.generator().span();
    if let Some(i) = a.rows().iter().position(|&r| !c1_span.contains(r)) {
        return Err(Error::Encoding(format!("row {} is not a codeword of C1", i + 1)));
    }
    let mut span = x_stab.span();
    if let Some(i) = a.rows().iter().position(|&r| !span.insert(r)) {
        return Err(Error::Encoding(format!(
            "row {} is dependent modulo the dual of C2",
            i + 1
        )));
    }
    Ok(())
}

impl CssCode {
    pub fn n(&self) -> usize {
        self.c1.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn c1(&self) -> &ClassicalCode {
        &self.c1
    }

    pub fn c2(&self) -> &ClassicalCode {
        &self.c2
    }

    /// Coset representatives; row `i` is the X-support of logical `X_i`.
    pub fn encoding(&self) -> &BitMatrix {
        &self.enc_a
    }

    /// Generator of `C2^perp`.
    pub fn x_stabilizers(&self) -> &BitMatrix {
        &self.x_stab
    }

    /// Generator of `C1^perp`.
    pub fn z_stabilizers(&self) -> &BitMatrix {
        &self.z_stab
    }

    /// `min(d1, d2)` of the underlying classical codes.
    pub fn distance(&self) -> Result<usize> {
        Ok(self.c1.min_distance()?.min(self.c2.min_distance()?))
    }

    /// Same code, different coset representatives.
    pub fn with_encoding(&self, enc_a: &BitMatrix) -> Result<CssCode> {
        validate_encoding(enc_a, &self.c1, &self.x_stab, self.k)?;
        Ok(CssCode {
            enc_a: enc_a.clone(),
            ..self.clone()
        })
    }

    /// Encoded logical X representatives (the encoding matrix).
    pub fn logical_x_representatives(&self) -> &BitMatrix {
        &self.enc_a
    }

    /// X-type generators first, then Z-type; `n - k` in total.
    pub fn stabilizer_generators(&self) -> Vec<StabilizerGenerator> {
        let xs = self.x_stab.rows().iter().map(|&a| StabilizerGenerator { a, b: 0, sign: 1 });
        let zs = self.z_stab.rows().iter().map(|&b| StabilizerGenerator { a: 0, b, sign: 1 });
        xs.chain(zs).collect()
    }
}

/// Free-function form of [`CssCode::stabilizer_generators`].
pub fn stabilizer_generators(q: &CssCode) -> Vec<StabilizerGenerator> {
    q.stabilizer_generators()
}

/// Free-function form of [`CssCode::logical_x_representatives`].
pub fn logical_x_representatives(q: &CssCode) -> BitMatrix {
    q.logical_x_representatives().clone()
}

/// The `[7,4,3]` Hamming code whose parity checks have columns `1..=7` in
/// binary.
pub fn hamming_7_4() -> ClassicalCode {
    let h = BitMatrix::from_row_strs(&["0001111", "0110011", "1010101"]).expect("static matrix");
    make_classical(&gf2::dual_basis(&h)).expect("static matrix")
}

/// `CSS(H, H)` with `H` the `[7,4,3]` Hamming code.
pub fn steane() -> CssCode {
    let h = hamming_7_4();
    make_css(&h, &h, None).expect("Hamming code contains its dual")
}
