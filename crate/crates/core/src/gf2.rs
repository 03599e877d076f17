//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors store bit `i` at word `i / 64`, position `i % 64`. Bits past the
//! logical length are always zero, so derived equality and hashing are
//! well-defined on the packed words.

use std::fmt;

use thiserror::Error;

const WORD_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
}

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds a vector from the low `len` bits of `mask` (bit `i` of the mask
    /// becomes entry `i`).
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD_BITS, "mask vectors are limited to 64 entries");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = mask & low_mask(len);
        }
        v
    }

    /// Parses a string of `0`/`1` characters; whitespace is ignored.
    pub fn parse_bits(text: &str) -> Option<Self> {
        let bits: Option<Vec<bool>> = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        bits.map(|b| Self::from_bools(&b))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        let bit = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= bit;
        } else {
            self.words[i / WORD_BITS] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD_BITS + tz)
            })
        })
    }

    /// The first 64 entries as a mask (bit `i` = entry `i`).
    pub fn to_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn xor_assign(&mut self, other: &Self) -> Result<(), Gf2Error> {
        self.check_len(other.len)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    pub fn xor(&self, other: &Self) -> Result<Self, Gf2Error> {
        let mut out = self.clone();
        out.xor_assign(other)?;
        Ok(out)
    }

    pub fn and(&self, other: &Self) -> Result<Self, Gf2Error> {
        self.check_len(other.len)?;
        Ok(Self {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        })
    }

    /// Inner product over GF(2): parity of the bitwise AND.
    pub fn dot(&self, other: &Self) -> Result<bool, Gf2Error> {
        self.check_len(other.len)?;
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        Ok(ones % 2 == 1)
    }

    fn check_len(&self, other: usize) -> Result<(), Gf2Error> {
        if self.len != other {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.len,
                actual: other,
            });
        }
        Ok(())
    }

    fn leading_index(&self) -> Option<usize> {
        self.ones().next()
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({self})")
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn low_mask(len: usize) -> u64 {
    if len >= WORD_BITS {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A dense matrix over GF(2), stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Gf2Vector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(|i| Gf2Vector::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Gf2Vector>) -> Result<Self, Gf2Error> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Gf2Error::DimensionMismatch {
                expected: cols,
                actual: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Parses rows written as `0`/`1` strings, e.g. `["0011", "0010"]`.
    pub fn parse_rows(cols: usize, rows: &[&str]) -> Option<Self> {
        let rows: Option<Vec<_>> = rows.iter().map(|r| Gf2Vector::parse_bits(r)).collect();
        Self::from_rows(cols, rows?).ok()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &Gf2Vector {
        &self.data[i]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &Gf2Vector> {
        self.data.iter()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for j in row.ones() {
                out.data[j].set(i, true);
            }
        }
        out
    }

    /// Row rank over GF(2).
    pub fn rank(&self) -> usize {
        self.clone().row_reduce()
    }

    /// Dimension of the null space of `v ↦ M v`: `cols − rank`.
    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn mat_vec(&self, v: &Gf2Vector) -> Result<Gf2Vector, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        let mut out = Gf2Vector::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            if row.dot(v)? {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Reduces to row echelon form in place and returns the rank. Zero rows
    /// end up at the bottom.
    pub fn row_reduce(&mut self) -> usize {
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| self.data[r].get(col)) else {
                continue;
            };
            self.data.swap(rank, pivot);
            let (top, bottom) = self.data.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            for row in bottom.iter_mut() {
                if row.get(col) {
                    for (a, b) in row.words.iter_mut().zip(&pivot_row.words) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// A basis of the null space `{v : M v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Gf2Vector> {
        let mut reduced = self.clone();
        let rank = reduced.row_reduce();
        // back-substitute to reduced row echelon form
        let pivots: Vec<usize> = (0..rank)
            .map(|r| reduced.data[r].leading_index().expect("nonzero pivot row"))
            .collect();
        for r in (0..rank).rev() {
            let col = pivots[r];
            let pivot_row = reduced.data[r].clone();
            for above in reduced.data[..r].iter_mut() {
                if above.get(col) {
                    above.xor_assign(&pivot_row).expect("equal row lengths");
                }
            }
        }
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = Gf2Vector::unit(self.cols, free);
                for (r, &p) in pivots.iter().enumerate() {
                    if reduced.data[r].get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Matrix {}x{} [", self.rows, self.cols)?;
        for (i, row) in self.data.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{row}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(cols: usize, rows: &[&str]) -> Gf2Matrix {
        Gf2Matrix::parse_rows(cols, rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Gf2Matrix::identity(3).rank(), 3);
        assert_eq!(Gf2Matrix::zeros(2, 2).rank(), 0);
        assert_eq!(m(4, &["0011", "0010"]).rank(), 2);
        assert_eq!(m(3, &["110", "011", "101"]).rank(), 2);
    }

    #[test]
    fn empty_matrices_have_rank_zero() {
        assert_eq!(Gf2Matrix::zeros(0, 5).rank(), 0);
        assert_eq!(Gf2Matrix::zeros(4, 0).rank(), 0);
        assert_eq!(Gf2Matrix::zeros(0, 0).kernel_dim(), 0);
        assert_eq!(Gf2Matrix::zeros(0, 3).kernel_dim(), 3);
    }

    #[test]
    fn kernel_dim_examples() {
        assert_eq!(Gf2Matrix::identity(3).kernel_dim(), 0);
        assert_eq!(Gf2Matrix::zeros(2, 2).kernel_dim(), 2);
        assert_eq!(m(2, &["11", "11"]).kernel_dim(), 1);
    }

    #[test]
    fn mat_vec_examples() {
        let v = Gf2Vector::parse_bits("1010").unwrap();
        assert_eq!(Gf2Matrix::identity(4).mat_vec(&v).unwrap(), v);
        assert!(Gf2Matrix::zeros(3, 4).mat_vec(&v).unwrap().is_zero());
        let out = m(4, &["0011", "0010"]).mat_vec(&v).unwrap();
        assert_eq!(out, Gf2Vector::parse_bits("11").unwrap());
    }

    #[test]
    fn mat_vec_rejects_wrong_length() {
        let err = Gf2Matrix::identity(3)
            .mat_vec(&Gf2Vector::zeros(4))
            .unwrap_err();
        assert_eq!(
            err,
            Gf2Error::DimensionMismatch {
                expected: 3,
                actual: 4
            }
        );
    }

    #[test]
    fn from_rows_rejects_ragged_rows() {
        let rows = vec![Gf2Vector::zeros(3), Gf2Vector::zeros(2)];
        assert!(Gf2Matrix::from_rows(3, rows).is_err());
    }

    #[test]
    fn wide_vectors_span_words() {
        let mut v = Gf2Vector::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.count_ones(), 3);
        let w = v.xor(&v).unwrap();
        assert!(w.is_zero());
        assert_eq!(w, Gf2Vector::zeros(130));
    }

    #[test]
    fn from_mask_clears_padding() {
        let v = Gf2Vector::from_mask(3, 0b1111_0101);
        assert_eq!(v.to_mask(), 0b101);
        assert_eq!(v, Gf2Vector::parse_bits("101").unwrap());
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = Gf2Matrix> {
        (0..=max, 0..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| {
                    let rows = rows.iter().map(|b| Gf2Vector::from_bools(b)).collect();
                    Gf2Matrix::from_rows(c, rows).unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(mat in arb_matrix(64)) {
            prop_assert_eq!(mat.rank(), mat.transpose().rank());
            prop_assert!(mat.rank() <= mat.rows().min(mat.cols()));
        }

        #[test]
        fn rank_nullity(mat in arb_matrix(40)) {
            prop_assert_eq!(mat.kernel_dim() + mat.rank(), mat.cols());
            let basis = mat.kernel_basis();
            prop_assert_eq!(basis.len(), mat.kernel_dim());
            for v in &basis {
                prop_assert!(mat.mat_vec(v).unwrap().is_zero());
            }
        }

        #[test]
        fn mat_vec_is_linear(
            (mat, x, y) in (1usize..24, 1usize..24).prop_flat_map(|(r, c)| (
                proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r),
                proptest::collection::vec(any::<bool>(), c),
                proptest::collection::vec(any::<bool>(), c),
            )).prop_map(|(rows, x, y)| {
                let c = x.len();
                let rows = rows.iter().map(|b| Gf2Vector::from_bools(b)).collect();
                (Gf2Matrix::from_rows(c, rows).unwrap(), Gf2Vector::from_bools(&x), Gf2Vector::from_bools(&y))
            })
        ) {
            let lhs = mat.mat_vec(&x.xor(&y).unwrap()).unwrap();
            let rhs = mat.mat_vec(&x).unwrap().xor(&mat.mat_vec(&y).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
