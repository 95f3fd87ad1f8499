//! The q-ary Hamming code of length n = (q^m − 1)/(q − 1).
//!
//! The parity-check matrix H has as columns every nonzero vector of GF(q)^m
//! whose first nonzero digit is 1, sorted ascending by base-q value with the
//! first row as most significant digit. Column `k` (1-based) is also point
//! `k` of PG(m−1, q); see [`crate::pg`].
//!
//! In this order the unit columns are not the first m columns: for q = 2,
//! m = 4 the column e_4 = (0,0,0,1)ᵀ is point 1 and e_1 = (1,0,0,0)ᵀ is point 8.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fqlin::{axpy, FqMatrix, FqVector, SpanWalker};
use crate::gf::Field;
use crate::pg::{self, PointIndex};

/// Largest q^m accepted by [`HammingCode::build`].
const MAX_PROJECTIVE_SPACE: u64 = 1 << 20;

struct CodeInner {
    field: Field,
    m: usize,
    n: usize,
    h: FqMatrix,
    columns: Vec<Vec<u8>>,
    // base-q value of a normalized column -> 1-based point, 0 if not normalized
    point_by_value: Vec<u32>,
    generators: Vec<FqVector>,
}

/// A q-ary Hamming code. Cheap to clone.
#[derive(Clone)]
pub struct HammingCode(Arc<CodeInner>);

/// A weight-3 codeword with digit 1 at its anchor coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub codeword: FqVector,
    pub anchor: PointIndex,
}

/// Result of radius-1 decoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub codeword: FqVector,
    /// Position and value of the error: `received = codeword + value · e_position`.
    pub error: Option<(PointIndex, u8)>,
}

pub fn build(q: u32, m: usize) -> Result<HammingCode> {
    HammingCode::build(q, m)
}

impl HammingCode {
    pub fn build(q: u32, m: usize) -> Result<Self> {
        let field = Field::new(q)?;
        if m < 2 {
            return Err(Error::InvalidParameters(format!("m must be at least 2, got {m}")));
        }
        let space = (q as u64)
            .checked_pow(m as u32)
            .filter(|&s| s <= MAX_PROJECTIVE_SPACE)
            .ok_or_else(|| Error::InvalidParameters(format!("q^m = {q}^{m} is too large")))?;

        let mut columns = Vec::new();
        let mut point_by_value = vec![0u32; space as usize];
        for value in 1..space {
            let mut digits = vec![0u8; m];
            let mut rest = value;
            for d in digits.iter_mut().rev() {
                *d = (rest % q as u64) as u8;
                rest /= q as u64;
            }
            if digits.iter().find(|&&d| d != 0) == Some(&1) {
                columns.push(digits);
                point_by_value[value as usize] = columns.len() as u32;
            }
        }
        let n = columns.len();
        debug_assert_eq!(n as u64, (space - 1) / (q as u64 - 1));

        let mut h = FqMatrix::zeros(&field, m, n);
        for (c, col) in columns.iter().enumerate() {
            for (r, &d) in col.iter().enumerate() {
                h.set(r, c, d);
            }
        }
        let generators = h.nullspace_basis();
        Ok(HammingCode(Arc::new(CodeInner {
            field,
            m,
            n,
            h,
            columns,
            point_by_value,
            generators,
        })))
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn q(&self) -> u8 {
        self.0.field.q()
    }

    pub fn m(&self) -> usize {
        self.0.m
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    /// Dimension n − m.
    pub fn dimension(&self) -> usize {
        self.0.n - self.0.m
    }

    /// Number of codewords, q^(n−m).
    pub fn size(&self) -> u128 {
        (self.q() as u128)
            .checked_pow(self.dimension() as u32)
            .unwrap_or(u128::MAX)
    }

    pub fn parity_check(&self) -> &FqMatrix {
        &self.0.h
    }

    /// Deterministic basis of the code (nullspace basis of H).
    pub fn generators(&self) -> &[FqVector] {
        &self.0.generators
    }

    pub fn point(&self, index: usize) -> Result<PointIndex> {
        PointIndex::new(index, self.n())
    }

    pub fn points(&self) -> impl Iterator<Item = PointIndex> {
        (1..=self.n()).map(PointIndex::from_label)
    }

    pub fn column(&self, p: PointIndex) -> FqVector {
        FqVector::from_raw(self.field(), self.0.columns[p.offset()].clone())
    }

    pub(crate) fn column_digits(&self, p: PointIndex) -> &[u8] {
        &self.0.columns[p.offset()]
    }

    fn value_of(&self, digits: &[u8]) -> usize {
        let q = self.q() as usize;
        digits.iter().fold(0, |acc, &d| acc * q + d as usize)
    }

    /// The point whose column equals `digits` exactly, if `digits` is normalized.
    pub fn point_of_column(&self, digits: &[u8]) -> Option<PointIndex> {
        if digits.len() != self.m() {
            return None;
        }
        match self.0.point_by_value[self.value_of(digits)] {
            0 => None,
            k => Some(PointIndex::from_label(k as usize)),
        }
    }

    /// Write a nonzero length-m vector as `c · h_i`. None for the zero vector.
    pub fn locate(&self, v: &[u8]) -> Option<(PointIndex, u8)> {
        let (normalized, c) = pg::normalize_digits(self.field(), v)?;
        self.point_of_column(&normalized).map(|p| (p, c))
    }

    fn check_len(&self, x: &FqVector) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: x.len(),
            });
        }
        if x.field() != self.field() {
            return Err(Error::FieldMismatch {
                left: self.q(),
                right: x.field().q(),
            });
        }
        Ok(())
    }

    pub(crate) fn syndrome_digits(&self, x: &[u8]) -> Vec<u8> {
        let mut s = vec![0u8; self.m()];
        for (col, &d) in self.0.columns.iter().zip(x) {
            axpy(self.field(), &mut s, d, col);
        }
        s
    }

    /// H · x.
    pub fn syndrome(&self, x: &FqVector) -> Result<FqVector> {
        self.check_len(x)?;
        Ok(FqVector::from_raw(self.field(), self.syndrome_digits(x.digits())))
    }

    pub(crate) fn is_codeword_digits(&self, x: &[u8]) -> bool {
        self.syndrome_digits(x).iter().all(|&d| d == 0)
    }

    pub fn is_codeword(&self, x: &FqVector) -> Result<bool> {
        self.check_len(x)?;
        Ok(self.is_codeword_digits(x.digits()))
    }

    /// The unique codeword within distance 1 of `x`.
    pub fn decode(&self, x: &FqVector) -> Result<Decoded> {
        self.check_len(x)?;
        let s = self.syndrome_digits(x.digits());
        match self.locate(&s) {
            None => Ok(Decoded {
                codeword: x.clone(),
                error: None,
            }),
            Some((p, c)) => {
                let mut codeword = x.clone();
                let pos = p.offset();
                codeword.set(pos, self.field().sub(x[pos], c));
                Ok(Decoded {
                    codeword,
                    error: Some((p, c)),
                })
            }
        }
    }

    fn check_cap(&self, cap: u64) -> Result<()> {
        let required = self.size();
        if required > cap as u128 {
            return Err(Error::CapExceeded { required, cap });
        }
        Ok(())
    }

    /// Every codeword exactly once, starting with zero.
    pub fn enumerate(&self, cap: u64) -> Result<Codewords> {
        self.check_cap(cap)?;
        Ok(Codewords {
            field: self.field().clone(),
            walker: self.walker(),
        })
    }

    pub(crate) fn walker(&self) -> SpanWalker {
        SpanWalker::new(
            self.field(),
            self.n(),
            self.0.generators.iter().map(|g| g.digits().to_vec()).collect(),
        )
    }

    pub fn random_codeword<R: Rng + ?Sized>(&self, rng: &mut R) -> FqVector {
        let q = self.q();
        let mut x = vec![0u8; self.n()];
        for g in &self.0.generators {
            axpy(self.field(), &mut x, rng.gen_range(0..q), g.digits());
        }
        FqVector::from_raw(self.field(), x)
    }

    /// All weight-3 codewords with digit 1 at `i`, grouped by the lines of the
    /// pencil through `i` and, within a line, ordered by second support point.
    pub fn triples_at(&self, i: PointIndex) -> Vec<Triple> {
        let f = self.field();
        let hi = self.column_digits(i).to_vec();
        let mut out = Vec::new();
        for line in pg::pencil(i, self) {
            for &a in line.points().iter().filter(|&&a| a != i) {
                let ha = self.column_digits(a);
                for alpha in f.nonzero() {
                    // h_i + α h_a = γ h_b  ⇒  e_i + α e_a − γ e_b ∈ ℍ
                    let mut v = hi.clone();
                    axpy(f, &mut v, alpha, ha);
                    let (b, gamma) = self.locate(&v).expect("h_i, h_a independent");
                    if b < a {
                        continue;
                    }
                    debug_assert!(b != i && b != a);
                    let mut cw = FqVector::zeros(f, self.n());
                    cw.set(i.offset(), 1);
                    cw.set(a.offset(), alpha);
                    cw.set(b.offset(), f.neg(gamma));
                    out.push(Triple {
                        codeword: cw,
                        anchor: i,
                    });
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for HammingCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HammingCode(q={}, m={}, n={})", self.q(), self.m(), self.n())
    }
}

impl PartialEq for HammingCode {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q() && self.m() == other.m()
    }
}

impl Eq for HammingCode {}

/// Iterator over all codewords of a Hamming code.
pub struct Codewords {
    field: Field,
    walker: SpanWalker,
}

impl Codewords {
    pub fn total(&self) -> u128 {
        self.walker.total()
    }

    /// Visit every codeword as a digit slice without allocating.
    pub fn for_each<F: FnMut(&[u8])>(self, f: F) {
        self.walker.for_each(f)
    }
}

impl Iterator for Codewords {
    type Item = FqVector;

    fn next(&mut self) -> Option<FqVector> {
        self.walker.next().map(|d| FqVector::from_raw(&self.field, d))
    }
}
