//! Bit-packed vectors and matrices over GF(2).
//!
//! Coordinate `i` of a [`BitVector`] lives in word `i / 64` at bit
//! `63 - i % 64`, so comparing the word slices compares vectors
//! lexicographically with coordinate 0 as the most significant position.
//! This is also the text rendering order: the leftmost character is
//! coordinate 0.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;

use smallvec::{smallvec, SmallVec};

use crate::error::{check_len, Error, Result};

type Words = SmallVec<[u64; 2]>;

#[inline]
fn mask(i: usize) -> u64 {
    1u64 << (63 - (i & 63))
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

/// A fixed-length row vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Words,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: smallvec![0; word_count(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.clear_tail();
        v
    }

    /// The `i`-th standard basis vector.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector from the low `len` bits of `value`, reading the most
    /// significant of those bits as coordinate 0. Counting `value` upwards
    /// therefore walks vectors in lexicographic order.
    ///
    /// # Panics
    /// Panics if `len > 64`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= 64, "from_u64 supports at most 64 bits");
        let mut v = Self::zeros(len);
        if len > 0 {
            let trimmed = if len == 64 {
                value
            } else {
                value & ((1u64 << len) - 1)
            };
            v.words[0] = trimmed << (64 - len);
        }
        v
    }

    /// Inverse of [`BitVector::from_u64`].
    ///
    /// # Panics
    /// Panics if `len > 64`.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= 64, "to_u64 supports at most 64 bits");
        if self.len == 0 {
            0
        } else {
            self.words[0] >> (64 - self.len)
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        self.words[i >> 6] & mask(i) != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        if value {
            self.words[i >> 6] |= mask(i);
        } else {
            self.words[i >> 6] &= !mask(i);
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        self.words[i >> 6] ^= mask(i);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the componentwise AND.
    ///
    /// # Panics
    /// Panics on a length mismatch; see [`BitVector::checked_dot`].
    #[inline]
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        let ones: u32 = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn checked_dot(&self, other: &Self) -> Result<bool> {
        check_len(self.len, other.len)?;
        Ok(self.dot(other))
    }

    /// Componentwise OR.
    pub fn or(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len);
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a | b)
            .collect();
        Self {
            len: self.len,
            words,
        }
    }

    /// Componentwise AND.
    pub fn and(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len);
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a & b)
            .collect();
        Self {
            len: self.len,
            words,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_len(self.len, other.len)?;
        Ok(self ^ other)
    }

    /// Index of the first (leftmost) set coordinate.
    pub fn leading_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.leading_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Concatenation `(self | other)`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Coordinates `start..end` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.len);
        let mut out = Self::zeros(end - start);
        for i in start..end {
            if self.get(i) {
                out.set(i - start, true);
            }
        }
        out
    }

    /// Appends one coordinate.
    pub fn extended(&self, bit: bool) -> Self {
        let mut out = Self::zeros(self.len + 1);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        if bit {
            out.set(self.len, true);
        }
        out
    }

    fn clear_tail(&mut self) {
        let rem = self.len & 63;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= !0u64 << (64 - rem);
            }
        }
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    #[inline]
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(rhs.words.iter()) {
            *a ^= b;
        }
    }
}

impl BitXor<&BitVector> for &BitVector {
    type Output = BitVector;

    #[inline]
    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.as_slice().cmp(other.words.as_slice()))
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut v = Self::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::Input(format!(
                        "invalid bit character {other:?} in {s:?}"
                    )))
                }
            }
        }
        Ok(v)
    }
}

/// A pair `(x | z)` of length-`n` vectors, i.e. an element of GF(2)^{2n}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticVector {
    pub x: BitVector,
    pub z: BitVector,
}

impl SymplecticVector {
    pub fn new(x: BitVector, z: BitVector) -> Result<Self> {
        check_len(x.len(), z.len())?;
        Ok(Self { x, z })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// The symplectic pairing `x·z' + x'·z`.
    pub fn product(&self, other: &Self) -> Result<bool> {
        check_len(self.n(), other.n())?;
        Ok(self.x.dot(&other.z) ^ other.x.dot(&self.z))
    }

    /// Number of positions where `x` or `z` is set.
    pub fn weight(&self) -> usize {
        self.x.or(&self.z).weight()
    }

    /// The flat `2n`-bit vector `(x | z)`.
    pub fn to_flat(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    pub fn from_flat(v: &BitVector) -> Result<Self> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::Input("symplectic vector needs even length".into()));
        }
        let n = v.len() / 2;
        Ok(Self {
            x: v.slice(0, n),
            z: v.slice(n, 2 * n),
        })
    }
}

/// Free-function form of the symplectic pairing.
pub fn symplectic_product(u: &SymplecticVector, v: &SymplecticVector) -> Result<bool> {
    u.product(v)
}

/// Free-function form of the checked dot product.
pub fn dot(u: &BitVector, v: &BitVector) -> Result<bool> {
    u.checked_dot(v)
}

/// A reduced row echelon basis, kept sorted by pivot column.
///
/// Every row is zero at every other row's pivot, so reducing a vector
/// clears all pivot coordinates and leaves the lexicographically smallest
/// element of its coset modulo the row space.
#[derive(Clone, Debug)]
pub struct Echelon {
    n_cols: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(n_cols: usize) -> Self {
        Self {
            n_cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<'a>(n_cols: usize, rows: impl IntoIterator<Item = &'a BitVector>) -> Self {
        let mut e = Self::new(n_cols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Clears every pivot coordinate of `v` using the stored rows.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out ^= row;
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the row space. Returns `false` if it was already there.
    pub fn insert(&mut self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.n_cols, "echelon row length mismatch");
        let r = self.reduce(v);
        let Some(p) = r.leading_one() else {
            return false;
        };
        for row in self.rows.iter_mut() {
            if row.get(p) {
                *row ^= &r;
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn to_matrix(&self) -> BitMatrix {
        BitMatrix {
            n_cols: self.n_cols,
            rows: self.rows.clone(),
        }
    }
}

/// A dense matrix over GF(2), stored as rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n_cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn new(n_cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        for r in &rows {
            check_len(n_cols, r.len())?;
        }
        Ok(Self { n_cols, rows })
    }

    pub fn empty(n_cols: usize) -> Self {
        Self {
            n_cols,
            rows: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n_cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// Parses rows such as `["1100", "0110"]`; all rows must have `n_cols` bits.
    pub fn from_strs(n_cols: usize, rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|s| s.parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(n_cols, rows)
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn push(&mut self, row: BitVector) -> Result<()> {
        check_len(self.n_cols, row.len())?;
        self.rows.push(row);
        Ok(())
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        check_len(self.n_cols, other.n_cols)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self {
            n_cols: self.n_cols,
            rows,
        })
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::from_rows(self.n_cols, &self.rows)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn has_independent_rows(&self) -> bool {
        self.rank() == self.n_rows()
    }

    pub fn row_space_contains(&self, v: &BitVector) -> bool {
        self.echelon().contains(v)
    }

    /// `M vᵀ`, one bit per row.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        check_len(self.n_cols, v.len())?;
        let mut out = BitVector::zeros(self.n_rows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![BitVector::zeros(self.n_rows()); self.n_cols];
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                rows[j].set(i, true);
            }
        }
        Self {
            n_cols: self.n_rows(),
            rows,
        }
    }

    /// Basis of `{v : M vᵀ = 0}`, one row per non-pivot column in
    /// increasing column order.
    pub fn nullspace(&self) -> Self {
        let e = self.echelon();
        let mut is_pivot = vec![false; self.n_cols];
        for &p in e.pivots() {
            is_pivot[p] = true;
        }
        let rows = (0..self.n_cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = BitVector::unit(self.n_cols, f);
                for (row, &p) in e.rows().iter().zip(e.pivots()) {
                    if row.get(f) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect();
        Self {
            n_cols: self.n_cols,
            rows,
        }
    }

    /// Some `x` with `M xᵀ = rhs`, or `None` if the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, rhs: &BitVector) -> Result<Option<BitVector>> {
        check_len(self.n_rows(), rhs.len())?;
        let augmented: Vec<BitVector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.extended(rhs.get(i)))
            .collect();
        let e = Echelon::from_rows(self.n_cols + 1, &augmented);
        if e.pivots().last() == Some(&self.n_cols) {
            return Ok(None);
        }
        let mut x = BitVector::zeros(self.n_cols);
        for (row, &p) in e.rows().iter().zip(e.pivots()) {
            if row.get(self.n_cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    /// Every element of the row space, in lexicographic order of the
    /// coefficient vector (first row is the most significant coefficient).
    pub fn span_enumerate(&self) -> Result<SpanIter> {
        if !self.has_independent_rows() {
            return Err(Error::DependentRows);
        }
        SpanIter::new(self.n_cols, self.rows.clone())
    }
}

/// Iterator over a row space; see [`BitMatrix::span_enumerate`].
#[derive(Clone, Debug)]
pub struct SpanIter {
    rows: Vec<BitVector>,
    counter: u64,
    total: u64,
    current: BitVector,
}

impl SpanIter {
    fn new(n_cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if rows.len() >= 64 {
            return Err(Error::CodeTooLarge {
                k: rows.len(),
                limit: 63,
            });
        }
        Ok(Self {
            total: 1u64 << rows.len(),
            rows,
            counter: 0,
            current: BitVector::zeros(n_cols),
        })
    }
}

impl Iterator for SpanIter {
    type Item = BitVector;

    fn next(&mut self) -> Option<BitVector> {
        if self.counter == self.total {
            return None;
        }
        let out = self.current.clone();
        let next = self.counter + 1;
        if next < self.total {
            let r = self.rows.len();
            let mut changed = self.counter ^ next;
            while changed != 0 {
                let b = changed.trailing_zeros() as usize;
                self.current ^= &self.rows[r - 1 - b];
                changed &= changed - 1;
            }
        }
        self.counter = next;
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.counter) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for SpanIter {}

/// One representative per coset of `rowspace(sub)` in `rowspace(sup)`.
///
/// Each representative is the lexicographically smallest member of its
/// coset; the list is sorted, so the zero coset comes first.
pub fn coset_reps(sub: &BitMatrix, sup: &BitMatrix) -> Result<Vec<BitVector>> {
    check_len(sub.n_cols(), sup.n_cols())?;
    let sub_e = sub.echelon();
    let sup_e = sup.echelon();
    if !sub.rows().iter().all(|r| sup_e.contains(r)) {
        return Err(Error::NotContained);
    }
    let quotient = Echelon::from_rows(
        sup.n_cols(),
        sup.rows()
            .iter()
            .map(|r| sub_e.reduce(r))
            .collect::<Vec<_>>()
            .iter(),
    );
    let mut reps: Vec<BitVector> = quotient.to_matrix().span_enumerate()?.collect();
    reps.sort();
    Ok(reps)
}

/// Extends `base` to a basis of `rowspace(within)` by repeatedly adding the
/// lexicographically smallest vector of `within` not yet spanned. Returns
/// only the added vectors.
pub fn complete_basis(base: &BitMatrix, within: &BitMatrix) -> Result<BitMatrix> {
    check_len(base.n_cols(), within.n_cols())?;
    let within_e = within.echelon();
    if !base.rows().iter().all(|r| within_e.contains(r)) {
        return Err(Error::NotContained);
    }
    let mut spanned = base.echelon();
    let mut added = BitMatrix::empty(base.n_cols());
    loop {
        let rest = Echelon::from_rows(
            base.n_cols(),
            within_e
                .rows()
                .iter()
                .map(|r| spanned.reduce(r))
                .collect::<Vec<_>>()
                .iter(),
        );
        // The row with the largest pivot is the smallest nonzero vector.
        let Some(v) = rest.rows().last().cloned() else {
            break;
        };
        spanned.insert(&v);
        added.push(v)?;
    }
    Ok(added)
}
