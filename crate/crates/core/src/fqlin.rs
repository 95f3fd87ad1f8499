//! Dense vectors and matrices over GF(q) with Gaussian elimination.
//!
//! Elimination always pivots on the leftmost available column and, within a
//! column, on the lowest row index. Bases, witnesses and nullspaces are
//! therefore reproducible bit for bit.
//!
//! Coordinates are stored 0-based like any slice; [`FqVector::support`]
//! reports 1-based coordinate labels, matching point numbering elsewhere.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Index;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::Field;

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.q().hash(state);
    }
}

/// A vector of GF(q) digits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqVector {
    field: Field,
    digits: Vec<u8>,
}

impl FqVector {
    pub fn zeros(field: &Field, len: usize) -> Self {
        FqVector {
            field: field.clone(),
            digits: vec![0; len],
        }
    }

    pub fn from_digits(field: &Field, digits: Vec<u8>) -> Result<Self> {
        for &d in &digits {
            field.check_digit(d)?;
        }
        Ok(FqVector {
            field: field.clone(),
            digits,
        })
    }

    /// Parse a string of decimal digits such as `"0120"`.
    pub fn parse(field: &Field, text: &str) -> Result<Self> {
        let digits = text
            .chars()
            .map(|c| {
                c.to_digit(10).map(|d| d as u8).ok_or(Error::Parse {
                    line: 0,
                    message: format!("unexpected character {c:?} in digit string"),
                })
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::from_digits(field, digits)
    }

    /// `value` at 0-based position `pos`, zero elsewhere.
    pub fn unit(field: &Field, len: usize, pos: usize, value: u8) -> Self {
        let mut v = Self::zeros(field, len);
        v.digits[pos] = value;
        v
    }

    pub(crate) fn from_raw(field: &Field, digits: Vec<u8>) -> Self {
        debug_assert!(digits.iter().all(|&d| d < field.q()));
        FqVector {
            field: field.clone(),
            digits,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<u8> {
        self.digits
    }

    pub fn set(&mut self, pos: usize, digit: u8) {
        debug_assert!(digit < self.field.q());
        self.digits[pos] = digit;
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    pub fn weight(&self) -> usize {
        self.digits.iter().filter(|&&d| d != 0).count()
    }

    /// 1-based labels of the nonzero coordinates, ascending.
    pub fn support(&self) -> Vec<usize> {
        support(self)
    }

    pub fn distance(&self, other: &FqVector) -> Result<usize> {
        hamming_distance(self, other)
    }

    fn check_compatible(&self, other: &FqVector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.q(),
                right: other.field.q(),
            });
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(())
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: u8, other: &FqVector) -> Result<()> {
        self.check_compatible(other)?;
        axpy(&self.field, &mut self.digits, c, &other.digits);
        Ok(())
    }

    pub fn add(&self, other: &FqVector) -> Result<FqVector> {
        let mut out = self.clone();
        out.add_scaled(1, other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &FqVector) -> Result<FqVector> {
        let mut out = self.clone();
        out.add_scaled(self.field.neg(1), other)?;
        Ok(out)
    }

    pub fn scale(&self, c: u8) -> FqVector {
        let f = &self.field;
        FqVector {
            field: f.clone(),
            digits: self.digits.iter().map(|&d| f.mul(c, d)).collect(),
        }
    }

    pub fn neg(&self) -> FqVector {
        self.scale(self.field.neg(1))
    }

    pub fn dot(&self, other: &FqVector) -> Result<u8> {
        self.check_compatible(other)?;
        Ok(dot(&self.field, &self.digits, &other.digits))
    }

    /// Uniformly random vector of length `len`.
    pub fn random<R: Rng + ?Sized>(field: &Field, len: usize, rng: &mut R) -> Self {
        let q = field.q();
        FqVector {
            field: field.clone(),
            digits: (0..len).map(|_| rng.gen_range(0..q)).collect(),
        }
    }
}

impl Index<usize> for FqVector {
    type Output = u8;

    fn index(&self, pos: usize) -> &u8 {
        &self.digits[pos]
    }
}

impl fmt::Display for FqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqVector[{:?}]({self})", self.field)
    }
}

pub fn hamming_distance(x: &FqVector, y: &FqVector) -> Result<usize> {
    x.check_compatible(y)?;
    Ok(x.digits.iter().zip(&y.digits).filter(|(a, b)| a != b).count())
}

pub fn support(x: &FqVector) -> Vec<usize> {
    x.digits
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(i, _)| i + 1)
        .collect()
}

/// `dst += c · src` on raw digit slices.
#[inline]
pub(crate) fn axpy(field: &Field, dst: &mut [u8], c: u8, src: &[u8]) {
    debug_assert_eq!(dst.len(), src.len());
    match c {
        0 => {}
        1 => {
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = field.add(*d, s);
            }
        }
        _ => {
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = field.add(*d, field.mul(c, s));
            }
        }
    }
}

#[inline]
pub(crate) fn dot(field: &Field, a: &[u8], b: &[u8]) -> u8 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// Row-major matrix of GF(q) digits.
#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl FqMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        FqMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[FqVector]) -> Result<Self> {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    actual: row.len(),
                });
            }
            if row.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.q(),
                    right: row.field().q(),
                });
            }
            m.entries[r * cols..(r + 1) * cols].copy_from_slice(row.digits());
        }
        Ok(m)
    }

    pub fn from_columns(field: &Field, rows: usize, columns: &[FqVector]) -> Result<Self> {
        Ok(Self::from_rows(field, rows, columns)?.transpose())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, digit: u8) {
        debug_assert!(digit < self.field.q());
        self.entries[r * self.cols + c] = digit;
    }

    pub fn row(&self, r: usize) -> FqVector {
        FqVector::from_raw(&self.field, self.row_slice(r).to_vec())
    }

    pub(crate) fn row_slice(&self, r: usize) -> &[u8] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> FqVector {
        FqVector::from_raw(&self.field, (0..self.rows).map(|r| self.get(r, c)).collect())
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = FqMatrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &FqVector) -> Result<FqVector> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: x.len(),
            });
        }
        let out = (0..self.rows)
            .map(|r| dot(&self.field, self.row_slice(r), x.digits()))
            .collect();
        Ok(FqVector::from_raw(&self.field, out))
    }

    fn row_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row_slice(r).to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn nullspace_basis(&self) -> Vec<FqVector> {
        nullspace_basis(self)
    }
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FqMatrix[{:?}] {}x{}", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            for d in self.row_slice(r) {
                write!(f, "{d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Bring `rows` (each of length `cols`) to reduced row echelon form in place,
/// dropping zero rows. Returns the pivot column of each surviving row.
pub(crate) fn rref_in_place(field: &Field, rows: &mut Vec<Vec<u8>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(found) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = field.inv_nonzero(rows[rank][col]);
        if inv != 1 {
            for d in rows[rank].iter_mut() {
                *d = field.mul(inv, *d);
            }
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = field.neg(row[col]);
                axpy(field, row, c, &pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    pivots
}

pub fn rank(m: &FqMatrix) -> usize {
    let mut rows = m.row_vecs();
    rref_in_place(&m.field, &mut rows, m.cols).len()
}

/// Nullspace vectors of an RREF system: one per free column, ascending, with
/// that free variable set to 1 and every other free variable 0.
fn nullspace_from_rref(field: &Field, rows: &[Vec<u8>], pivots: &[usize], cols: usize) -> Vec<Vec<u8>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![0u8; cols];
            x[free] = 1;
            for (row, &p) in rows.iter().zip(pivots) {
                x[p] = field.neg(row[free]);
            }
            x
        })
        .collect()
}

/// Basis of `{x : M x = 0}`, of size `cols - rank(M)`.
pub fn nullspace_basis(m: &FqMatrix) -> Vec<FqVector> {
    let mut rows = m.row_vecs();
    let pivots = rref_in_place(&m.field, &mut rows, m.cols);
    nullspace_from_rref(&m.field, &rows, &pivots, m.cols)
        .into_iter()
        .map(|x| FqVector::from_raw(&m.field, x))
        .collect()
}

/// Decide whether `v` is a linear combination of `basis`. On success returns
/// coefficients `w` with `Σ w_k · basis[k] = v`; free coefficients are zero.
pub fn in_span(v: &FqVector, basis: &[FqVector]) -> Result<Option<Vec<u8>>> {
    let field = v.field();
    for b in basis {
        v.check_compatible(b)?;
    }
    let t = basis.len();
    // augmented system [B | v] where B has the basis vectors as columns
    let mut rows: Vec<Vec<u8>> = (0..v.len())
        .map(|r| {
            let mut row: Vec<u8> = basis.iter().map(|b| b[r]).collect();
            row.push(v[r]);
            row
        })
        .collect();
    let pivots = rref_in_place(field, &mut rows, t + 1);
    if pivots.last() == Some(&t) {
        return Ok(None);
    }
    let mut witness = vec![0u8; t];
    for (row, &p) in rows.iter().zip(&pivots) {
        witness[p] = row[t];
    }
    Ok(Some(witness))
}

/// A subspace of GF(q)^len kept in reduced row echelon form, together with a
/// check matrix whose kernel is exactly the subspace.
#[derive(Clone)]
pub struct Subspace {
    field: Field,
    len: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
    checks: Vec<Vec<u8>>,
}

impl Subspace {
    pub fn span<'a, I>(field: &Field, len: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a FqVector>,
    {
        let mut rows = Vec::new();
        for v in vectors {
            if v.len() != len {
                return Err(Error::LengthMismatch {
                    expected: len,
                    actual: v.len(),
                });
            }
            if v.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.q(),
                    right: v.field().q(),
                });
            }
            rows.push(v.digits().to_vec());
        }
        Ok(Self::from_rows(field, len, rows))
    }

    fn from_rows(field: &Field, len: usize, mut rows: Vec<Vec<u8>>) -> Self {
        let pivots = rref_in_place(field, &mut rows, len);
        // rows of the RREF are orthogonal to the checks, and dim checks = len - dim
        let checks = nullspace_from_rref(field, &rows, &pivots, len);
        Subspace {
            field: field.clone(),
            len,
            rows,
            pivots,
            checks,
        }
    }

    /// Sum of two subspaces of the same ambient space.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                actual: other.len,
            });
        }
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(Self::from_rows(&self.field, self.len, rows))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The row-reduced basis.
    pub fn basis(&self) -> Vec<FqVector> {
        self.rows
            .iter()
            .map(|r| FqVector::from_raw(&self.field, r.clone()))
            .collect()
    }

    pub(crate) fn check_rows(&self) -> &[Vec<u8>] {
        &self.checks
    }

    /// Values of the check functionals at `x`; zero exactly on the subspace.
    pub fn check_values(&self, x: &[u8]) -> Vec<u8> {
        self.checks.iter().map(|c| dot(&self.field, c, x)).collect()
    }

    /// Membership through the check matrix.
    pub fn contains_digits(&self, x: &[u8]) -> bool {
        debug_assert_eq!(x.len(), self.len);
        self.checks.iter().all(|c| dot(&self.field, c, x) == 0)
    }

    pub fn contains(&self, x: &FqVector) -> bool {
        x.len() == self.len && self.contains_digits(x.digits())
    }

    /// Membership by reducing against the echelon basis; independent of the
    /// check matrix and used to cross-check it.
    pub fn contains_by_reduction(&self, x: &FqVector) -> bool {
        let mut r = x.digits().to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p] != 0 {
                let c = self.field.neg(r[p]);
                axpy(&self.field, &mut r, c, row);
            }
        }
        r.iter().all(|&d| d == 0)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> FqVector {
        let mut x = vec![0u8; self.len];
        let q = self.field.q();
        for row in &self.rows {
            axpy(&self.field, &mut x, rng.gen_range(0..q), row);
        }
        FqVector::from_raw(&self.field, x)
    }

    /// Number of elements, `q^dim`, saturating at `u128::MAX`.
    pub fn size(&self) -> u128 {
        (self.field.q() as u128)
            .checked_pow(self.dim() as u32)
            .unwrap_or(u128::MAX)
    }

    /// Every element, each exactly once, starting with zero.
    pub fn elements(&self) -> SpanWalker {
        SpanWalker::new(&self.field, self.len, self.rows.clone())
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.len == other.len && self.rows == other.rows
    }
}

impl Eq for Subspace {}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("field", &self.field)
            .field("len", &self.len)
            .field("dim", &self.dim())
            .finish()
    }
}

/// Walks the GF(q)-span of a list of linearly independent rows.
///
/// Internally the span is treated as a GF(p)-space generated by `x^j · row`
/// for every row and every power `x^j` below the extension degree, and walked
/// with a base-p odometer: each step adds exactly the generators whose
/// counters changed, so no multiplications are needed.
pub struct SpanWalker {
    field: Field,
    generators: Vec<Vec<u8>>,
    counters: Vec<u8>,
    current: Vec<u8>,
    done: bool,
}

impl SpanWalker {
    pub fn new(field: &Field, len: usize, rows: Vec<Vec<u8>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == len));
        let p = field.characteristic();
        let mut generators = Vec::with_capacity(rows.len() * field.degree() as usize);
        for row in &rows {
            let mut g = 1u8;
            for _ in 0..field.degree() {
                generators.push(row.iter().map(|&d| field.mul(g, d)).collect());
                g = g.wrapping_mul(p);
            }
        }
        SpanWalker {
            field: field.clone(),
            counters: vec![0; generators.len()],
            generators,
            current: vec![0; len],
            done: false,
        }
    }

    /// Number of vectors the walk produces.
    pub fn total(&self) -> u128 {
        (self.field.characteristic() as u128)
            .checked_pow(self.generators.len() as u32)
            .unwrap_or(u128::MAX)
    }

    fn advance(&mut self) {
        let p = self.field.characteristic();
        for k in 0..self.generators.len() {
            axpy(&self.field, &mut self.current, 1, &self.generators[k]);
            self.counters[k] += 1;
            if self.counters[k] < p {
                return;
            }
            self.counters[k] = 0;
        }
        self.done = true;
    }

    /// Visit every vector in the span without allocating.
    pub fn for_each<F: FnMut(&[u8])>(mut self, mut f: F) {
        while !self.done {
            f(&self.current);
            self.advance();
        }
    }
}

impl Iterator for SpanWalker {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        self.advance();
        Some(out)
    }
}

/// Digits of `index` in base q, most significant first, as a length-`len`
/// vector. This is the canonical ordering of GF(q)^len.
pub fn vector_from_index(field: &Field, len: usize, mut index: u128) -> FqVector {
    let q = field.q() as u128;
    let mut digits = vec![0u8; len];
    for d in digits.iter_mut().rev() {
        *d = (index % q) as u8;
        index /= q;
    }
    FqVector::from_raw(field, digits)
}

/// Advance `digits` to the next vector in canonical order; false on wrap-around.
pub(crate) fn increment_digits(q: u8, digits: &mut [u8]) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}
