//! Dense linear algebra over GF(2).
//!
//! Every row of a [`BitMatrix`] is packed into a single `u64`, so the column
//! count is limited to [`MAX_COLS`]. Column `j` (0-based, left to right) lives
//! at bit `cols - 1 - j`; read as an integer, a row is the binary number the
//! row spells when written left to right. The same convention indexes
//! computational basis states in [`crate::statevec`], where qubit 1 is the most
//! significant bit.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_COLS: usize = 64;

/// Mask with the low `bits` bits set.
#[inline]
pub fn low_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Mod-2 inner product.
#[inline]
pub fn dot(a: u64, b: u64) -> u8 {
    ((a & b).count_ones() & 1) as u8
}

#[inline]
pub fn weight(v: u64) -> u32 {
    v.count_ones()
}

/// Renders the low `len` bits of `v` as a 0/1 string, most significant first.
pub fn bit_string(v: u64, len: usize) -> String {
    (0..len)
        .map(|j| if (v >> (len - 1 - j)) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Dense binary matrix with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<u64>,
    cols: usize,
}

impl BitMatrix {
    /// A matrix with no rows. `cols` may be zero only for degenerate products
    /// such as the `0 x 0` result of multiplying two empty matrices.
    pub fn empty(cols: usize) -> Self {
        assert!(cols <= MAX_COLS, "{cols} columns exceeds {MAX_COLS}");
        BitMatrix {
            rows: Vec::new(),
            cols,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(cols <= MAX_COLS, "{cols} columns exceeds {MAX_COLS}");
        BitMatrix {
            rows: vec![0; rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_COLS, "{n} columns exceeds {MAX_COLS}");
        BitMatrix {
            rows: (0..n).map(|i| 1u64 << (n - 1 - i)).collect(),
            cols: n,
        }
    }

    /// Builds a matrix from packed rows, rejecting bits outside the column range.
    pub fn from_rows(cols: usize, rows: Vec<u64>) -> Result<Self> {
        if cols > MAX_COLS {
            return Err(Error::Capacity {
                what: "column count",
                value: cols,
                limit: MAX_COLS,
            });
        }
        let mask = low_mask(cols);
        if let Some(i) = rows.iter().position(|&r| r & !mask != 0) {
            return Err(Error::Dimension(format!(
                "row {} has bits beyond column {cols}",
                i + 1
            )));
        }
        Ok(BitMatrix { rows, cols })
    }

    /// Builds a matrix from rows written as `0`/`1` strings of equal length.
    pub fn from_row_strs<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut packed = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {cols}",
                    i + 1,
                    r.len()
                )));
            }
            let mut v = 0u64;
            for (j, c) in r.chars().enumerate() {
                v = (v << 1)
                    | match c {
                        '0' => 0,
                        '1' => 1,
                        other => {
                            return Err(Error::Dimension(format!(
                                "row {}, column {}: {other:?} is not a bit",
                                i + 1,
                                j + 1
                            )))
                        }
                    };
            }
            packed.push(v);
        }
        Self::from_rows(cols, packed)
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    #[inline]
    pub fn col_mask(&self) -> u64 {
        low_mask(self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(j < self.cols, "column {} out of range", j + 1);
        (self.rows[i] >> (self.cols - 1 - j)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(j < self.cols, "column {} out of range", j + 1);
        let bit = 1u64 << (self.cols - 1 - j);
        if value {
            self.rows[i] |= bit;
        } else {
            self.rows[i] &= !bit;
        }
    }

    pub fn push_row(&mut self, row: u64) {
        debug_assert_eq!(row & !self.col_mask(), 0);
        self.rows.push(row);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows.len() == self.cols && *self == Self::identity(self.cols)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (i, &r) in self.rows.iter().enumerate() {
            for j in 0..self.cols {
                if (r >> (self.cols - 1 - j)) & 1 == 1 {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows.len() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows.len(),
                self.cols,
                other.rows.len(),
                other.cols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                (0..self.cols)
                    .filter(|&l| (r >> (self.cols - 1 - l)) & 1 == 1)
                    .fold(0u64, |acc, l| acc ^ other.rows[l])
            })
            .collect();
        Ok(BitMatrix {
            rows,
            cols: other.cols,
        })
    }

    /// `self * other^T`, i.e. the table of pairwise row inner products.
    pub fn mul_transpose(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "row lengths differ: {} vs {}",
                self.cols, other.cols
            )));
        }
        let m = other.rows.len();
        if m > MAX_COLS {
            return Err(Error::Capacity {
                what: "row count of right factor",
                value: m,
                limit: MAX_COLS,
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|&a| {
                other
                    .rows
                    .iter()
                    .fold(0u64, |acc, &b| (acc << 1) | dot(a, b) as u64)
            })
            .collect();
        Ok(BitMatrix { rows, cols: m })
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "cannot stack {} columns on {}",
                other.cols, self.cols
            )));
        }
        let mut rows = self.rows.clone();
        rows.extend_from_slice(&other.rows);
        Ok(BitMatrix {
            rows,
            cols: self.cols,
        })
    }

    /// `psi * self` where `psi` packs one coefficient per row, row 1 most
    /// significant.
    pub fn combine(&self, psi: u64) -> u64 {
        let k = self.rows.len();
        self.rows
            .iter()
            .enumerate()
            .filter(|(i, _)| (psi >> (k - 1 - i)) & 1 == 1)
            .fold(0, |acc, (_, &r)| acc ^ r)
    }

    pub fn rank(&self) -> usize {
        Span::from_matrix(self).dim()
    }

    pub fn rref(&self) -> Rref {
        rref(self)
    }

    pub fn span(&self) -> Span {
        Span::from_matrix(self)
    }

    /// Every vector of the row space, in the order of `combine(0..2^rows)`.
    /// Callers bound the row count.
    pub fn row_space_elements(&self) -> Vec<u64> {
        let k = self.rows.len();
        assert!(k < 32, "refusing to enumerate 2^{k} vectors");
        let mut out = vec![0u64; 1 << k];
        for psi in 1..out.len() {
            let low = psi.trailing_zeros() as usize;
            out[psi] = out[psi ^ (1 << low)] ^ self.rows[k - 1 - low];
        }
        out
    }

    /// Text block in the matrix file format: `R C` header then one line per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows.len(), self.cols);
        for &r in &self.rows {
            s.push_str(&bit_string(r, self.cols));
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for (i, &r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            f.write_str(&bit_string(r, self.cols))?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Echelon basis of a subspace of `F_2^64`, keyed by leading bit.
///
/// `pivots[b]` is either zero or a basis vector whose highest set bit is `b`,
/// so reduction clears bits from the top down.
#[derive(Clone)]
pub struct Span {
    pivots: [u64; 64],
    dim: usize,
}

impl Default for Span {
    fn default() -> Self {
        Span {
            pivots: [0; 64],
            dim: 0,
        }
    }
}

impl Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_matrix(m: &BitMatrix) -> Self {
        let mut s = Span::new();
        for &r in m.rows() {
            s.insert(r);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical remainder of `v` modulo the span.
    pub fn reduce(&self, mut v: u64) -> u64 {
        for b in (0..64).rev() {
            if (v >> b) & 1 == 1 && self.pivots[b] != 0 {
                v ^= self.pivots[b];
            }
        }
        v
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: u64) -> bool {
        let mut v = v;
        while v != 0 {
            let b = 63 - v.leading_zeros() as usize;
            if self.pivots[b] == 0 {
                self.pivots[b] = v;
                self.dim += 1;
                return true;
            }
            v ^= self.pivots[b];
        }
        false
    }
}

/// Reduced row-echelon form together with its pivot columns (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: BitMatrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

/// Gauss-Jordan elimination, scanning columns left to right. Zero rows are
/// kept at the bottom so the shape of the input is preserved.
pub fn rref(m: &BitMatrix) -> Rref {
    let cols = m.num_cols();
    let mut rows = m.rows().to_vec();
    let mut pivot_cols = Vec::new();
    let mut next = 0;
    for j in 0..cols {
        if next == rows.len() {
            break;
        }
        let bit = 1u64 << (cols - 1 - j);
        let Some(p) = (next..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(next, p);
        let pivot = rows[next];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != next && *r & bit != 0 {
                *r ^= pivot;
            }
        }
        pivot_cols.push(j);
        next += 1;
    }
    let rank = pivot_cols.len();
    Rref {
        matrix: BitMatrix { rows, cols },
        pivot_cols,
        rank,
    }
}

/// Basis of the null space of `m`, i.e. a generator of the dual code of the
/// row space. One row per free column of the echelon form, in column order.
pub fn dual_basis(m: &BitMatrix) -> BitMatrix {
    let cols = m.num_cols();
    let r = rref(m);
    let mut out = BitMatrix::empty(cols);
    let mut is_pivot = vec![false; cols];
    for &p in &r.pivot_cols {
        is_pivot[p] = true;
    }
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = 1u64 << (cols - 1 - f);
        for (i, &p) in r.pivot_cols.iter().enumerate() {
            if r.matrix.get(i, f) {
                v |= 1u64 << (cols - 1 - p);
            }
        }
        out.push_row(v);
    }
    out
}

fn check_cols(a: &BitMatrix, b: &BitMatrix) -> Result<()> {
    if a.num_cols() != b.num_cols() {
        return Err(Error::Dimension(format!(
            "column counts differ: {} vs {}",
            a.num_cols(),
            b.num_cols()
        )));
    }
    Ok(())
}

/// Whether every row of `sub` lies in the row space of `sup`.
pub fn subspace_leq(sub: &BitMatrix, sup: &BitMatrix) -> Result<bool> {
    check_cols(sub, sup)?;
    let span = Span::from_matrix(sup);
    Ok(sub.rows().iter().all(|&r| span.contains(r)))
}

/// Same row space.
pub fn row_equivalent(a: &BitMatrix, b: &BitMatrix) -> Result<bool> {
    Ok(subspace_leq(a, b)? && subspace_leq(b, a)?)
}

/// Rows of `sup` whose cosets form a basis of `rowspace(sup) / rowspace(sub)`.
///
/// Scans `sup` top to bottom and keeps each row that is independent of
/// `sub` and of the rows already kept.
pub fn complement_basis(sub: &BitMatrix, sup: &BitMatrix) -> Result<BitMatrix> {
    if !subspace_leq(sub, sup)? {
        return Err(Error::Containment(
            "first row space is not contained in the second".into(),
        ));
    }
    let mut span = Span::from_matrix(sub);
    let mut out = BitMatrix::empty(sup.num_cols());
    for &r in sup.rows() {
        if span.insert(r) {
            out.push_row(r);
        }
    }
    Ok(out)
}

/// `W` with `W * u = I`, found by Gauss-Jordan on `[u | I]`.
pub fn right_identity_transform(u: &BitMatrix) -> Result<BitMatrix> {
    let k = u.num_rows();
    if u.num_cols() != k {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            k,
            u.num_cols()
        )));
    }
    let mut left = u.rows().to_vec();
    let mut right = BitMatrix::identity(k).rows;
    for j in 0..k {
        let bit = 1u64 << (k - 1 - j);
        let Some(p) = (j..k).find(|&i| left[i] & bit != 0) else {
            return Err(Error::Singular { rank: u.rank(), size: k });
        };
        left.swap(j, p);
        right.swap(j, p);
        for i in 0..k {
            if i != j && left[i] & bit != 0 {
                left[i] ^= left[j];
                right[i] ^= right[j];
            }
        }
    }
    Ok(BitMatrix {
        rows: right,
        cols: k,
    })
}

/// Basis of `rowspace(a) ∩ rowspace(b)`, computed as the dual of the sum of
/// the duals.
pub fn intersection(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    check_cols(a, b)?;
    let duals = dual_basis(a).vstack(&dual_basis(b))?;
    Ok(dual_basis(&duals))
}

/// Writes vectors of a full-rank generator set as combinations of its rows.
///
/// Holds at most 64 generators; the coefficient mask puts generator 1 in the
/// most significant of `len` bits.
#[derive(Debug, Clone)]
pub struct Decomposer {
    len: usize,
    pivots: Vec<Option<(u64, u64)>>,
}

impl Decomposer {
    pub fn new(gens: &BitMatrix) -> Result<Self> {
        let len = gens.num_rows();
        if len > 64 {
            return Err(Error::Capacity {
                what: "generator count",
                value: len,
                limit: 64,
            });
        }
        let mut pivots: Vec<Option<(u64, u64)>> = vec![None; 64];
        for (i, &g) in gens.rows().iter().enumerate() {
            let mut v = g;
            let mut c = 1u64 << (len - 1 - i);
            loop {
                if v == 0 {
                    return Err(Error::Dimension(format!(
                        "generator row {} is dependent on earlier rows",
                        i + 1
                    )));
                }
                let b = 63 - v.leading_zeros() as usize;
                match pivots[b] {
                    Some((pv, pc)) => {
                        v ^= pv;
                        c ^= pc;
                    }
                    None => {
                        pivots[b] = Some((v, c));
                        break;
                    }
                }
            }
        }
        Ok(Decomposer { len, pivots })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Coefficients `c` with `c * gens = v`, or `None` when `v` is outside
    /// the span.
    pub fn coefficients(&self, mut v: u64) -> Option<u64> {
        let mut c = 0u64;
        while v != 0 {
            let b = 63 - v.leading_zeros() as usize;
            let (pv, pc) = self.pivots[b]?;
            v ^= pv;
            c ^= pc;
        }
        Some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_row_strs(rows).unwrap()
    }

    // Hand elimination of the five rows below: rows 1,2 and 4,5 give pivots
    // in columns 1,2,3 and the D row adds column 5 after reduction.
    #[test]
    fn rank_of_nested_generator() {
        let g3 = m(&["1100000", "0101111", "0111010", "0011011", "1011100"]);
        assert_eq!(rref(&g3).rank, 5);
    }

    // Second reduction route: count the size of the row space by enumeration.
    #[test]
    fn rank_matches_enumeration() {
        let g3 = m(&["1100000", "0101111", "0111010", "0011011", "1011100"]);
        let mut all: Vec<u64> = g3.row_space_elements();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), 1 << 5);
    }

    #[test]
    fn rref_basic() {
        let r = rref(&m(&["11", "01"]));
        assert_eq!(r.rank, 2);
        assert_eq!(r.matrix, BitMatrix::identity(2));
        assert_eq!(r.pivot_cols, vec![0, 1]);
        assert_eq!(rref(&BitMatrix::zeros(3, 5)).rank, 0);
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_basis(&m(&["11"])), m(&["11"]));
        assert_eq!(dual_basis(&BitMatrix::identity(4)).num_rows(), 0);
        let g2p = m(&["1100000", "0101111"]);
        let k = dual_basis(&g2p);
        assert_eq!(k.num_rows(), 5);
        assert_eq!(k.rank(), 5);
        assert!(g2p.mul_transpose(&k).unwrap().is_zero());
    }

    #[test]
    fn subspace_examples() {
        let g2p = m(&["1100000", "0101111"]);
        let g4p = m(&["1100000", "0101111", "0111010"]);
        assert!(subspace_leq(&g2p, &g2p).unwrap());
        assert!(subspace_leq(&g2p, &g4p).unwrap());
        assert!(!subspace_leq(&g4p, &g2p).unwrap());
        assert!(!subspace_leq(&m(&["100"]), &m(&["010"])).unwrap());
        assert!(matches!(
            subspace_leq(&m(&["10"]), &m(&["010"])),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn complement_examples() {
        let c = complement_basis(&BitMatrix::empty(2), &BitMatrix::identity(2)).unwrap();
        assert_eq!(c.rank(), 2);

        let g2p = m(&["1100000", "0101111"]);
        let g1 = m(&["1100000", "0101111", "0011011", "1011100"]);
        let a = complement_basis(&g2p, &g1).unwrap();
        assert_eq!(a, m(&["0011011", "1011100"]));

        assert_eq!(complement_basis(&g1, &g1).unwrap().num_rows(), 0);
        assert!(matches!(
            complement_basis(&g1, &g2p),
            Err(Error::Containment(_))
        ));
    }

    #[test]
    fn right_identity_examples() {
        assert_eq!(
            right_identity_transform(&BitMatrix::identity(3)).unwrap(),
            BitMatrix::identity(3)
        );
        let u = m(&["11", "01"]);
        assert_eq!(right_identity_transform(&u).unwrap(), u);
        assert!(matches!(
            right_identity_transform(&m(&["11", "11"])),
            Err(Error::Singular { rank: 1, size: 2 })
        ));
        assert!(matches!(
            right_identity_transform(&m(&["110", "011"])),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn products() {
        let a = m(&["101", "011"]);
        let b = m(&["11", "01", "10"]);
        assert_eq!(a.mul(&b).unwrap(), m(&["01", "11"]));
        assert_eq!(a.mul_transpose(&a).unwrap(), m(&["01", "10"]));
        assert_eq!(a.transpose(), m(&["10", "01", "11"]));
        assert_eq!(a.combine(0b11), 0b110);
    }

    #[test]
    fn decomposer_roundtrip() {
        let g = m(&["1100000", "0101111", "0011011", "1011100"]);
        let d = Decomposer::new(&g).unwrap();
        for c in 0..16u64 {
            assert_eq!(d.coefficients(g.combine(c)), Some(c));
        }
        assert_eq!(d.coefficients(0b0010000), None);
    }

    #[test]
    fn intersection_of_overlapping_spaces() {
        let a = m(&["1100", "0011"]);
        let b = m(&["1111", "1000"]);
        let i = intersection(&a, &b).unwrap();
        assert_eq!(i.num_rows(), 1);
        assert_eq!(i.row(0), 0b1111);
    }

    fn arb_matrix() -> impl Strategy<Value = BitMatrix> {
        (1usize..=12, 0usize..=10).prop_flat_map(|(cols, rows)| {
            proptest::collection::vec(0u64..(1u64 << cols), rows)
                .prop_map(move |r| BitMatrix::from_rows(cols, r).unwrap())
        })
    }

    fn full_rank(mut m: BitMatrix) -> BitMatrix {
        let mut s = Span::new();
        m.rows.retain(|&r| s.insert(r));
        m
    }

    proptest! {
        #[test]
        fn rref_preserves_row_space(m in arb_matrix()) {
            let r = rref(&m);
            prop_assert!(row_equivalent(&r.matrix, &m).unwrap());
            prop_assert_eq!(r.rank, r.pivot_cols.len());
            prop_assert_eq!(r.rank, m.rank());
        }

        #[test]
        fn dual_dimension_and_involution(m in arb_matrix()) {
            let m = full_rank(m);
            let d = dual_basis(&m);
            prop_assert_eq!(m.rank() + d.rank(), m.num_cols());
            prop_assert_eq!(d.rank(), d.num_rows());
            prop_assert!(m.mul_transpose(&d).unwrap().is_zero());
            prop_assert!(row_equivalent(&dual_basis(&d), &m).unwrap());
        }

        #[test]
        fn complement_fills_up(sup in arb_matrix(), pick in any::<u64>()) {
            let sup = full_rank(sup);
            let sub_rows: Vec<u64> = sup.rows().iter().enumerate()
                .filter(|(i, _)| (pick >> i) & 1 == 1)
                .map(|(_, &r)| r)
                .collect();
            let sub = BitMatrix::from_rows(sup.num_cols(), sub_rows).unwrap();
            let c = complement_basis(&sub, &sup).unwrap();
            prop_assert_eq!(c.num_rows(), sup.rank() - sub.rank());
            prop_assert_eq!(sub.vstack(&c).unwrap().rank(), sup.rank());
        }

        #[test]
        fn right_identity_inverts(m in arb_matrix()) {
            let k = m.num_cols().min(6);
            let rows: Vec<u64> = m.rows().iter().take(k).map(|r| r & low_mask(k)).collect();
            if rows.len() == k {
                let u = BitMatrix::from_rows(k, rows).unwrap();
                match right_identity_transform(&u) {
                    Ok(w) => prop_assert!(w.mul(&u).unwrap().is_identity()),
                    Err(Error::Singular { .. }) => prop_assert!(u.rank() < k),
                    Err(e) => prop_assert!(false, "unexpected error {e}"),
                }
            }
        }
    }
}
