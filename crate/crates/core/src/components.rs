//! i-components of a Hamming code.
//!
//! R_i is the span of all triples (weight-3 codewords) with digit 1 at
//! coordinate i; its cosets R_i + u with u ∈ ℍ are the i-components. The
//! primary construction sums the line subcodes ℍ_l over the pencil of lines
//! through i. [`component_from_triples`] builds the same space directly from
//! the triples and serves as its cross-check.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::fqlin::{FqMatrix, FqVector, Subspace};
use crate::hamming::HammingCode;
use crate::pg::{self, Line, PointIndex};

/// A coset R_i + u of the subspace spanned by the triples through `anchor`.
#[derive(Clone)]
pub struct Component {
    code: HammingCode,
    anchor: PointIndex,
    space: Arc<Subspace>,
    rep: FqVector,
}

impl Component {
    pub fn code(&self) -> &HammingCode {
        &self.code
    }

    pub fn anchor(&self) -> PointIndex {
        self.anchor
    }

    /// The subspace R_i, in row-reduced form.
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis(&self) -> Vec<FqVector> {
        self.space.basis()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn rep(&self) -> &FqVector {
        &self.rep
    }

    /// The coset R_i + u for another representative `u ∈ ℍ`.
    pub fn with_rep(&self, u: FqVector) -> Result<Component> {
        if !self.code.is_codeword(&u)? {
            return Err(Error::NotACodeword);
        }
        Ok(Component {
            code: self.code.clone(),
            anchor: self.anchor,
            space: Arc::clone(&self.space),
            rep: u,
        })
    }

    pub(crate) fn contains_digits(&self, x: &[u8]) -> bool {
        let f = self.code.field();
        let diff: Vec<u8> = x.iter().zip(self.rep.digits()).map(|(&a, &b)| f.sub(a, b)).collect();
        self.space.contains_digits(&diff)
    }

    /// Whether `x − u ∈ R_i`.
    pub fn contains(&self, x: &FqVector) -> bool {
        x.len() == self.code.n() && self.contains_digits(x.digits())
    }

    /// Number of elements of the coset, q^dim.
    pub fn size(&self) -> u128 {
        self.space.size()
    }

    /// Every element of the coset exactly once, starting with the representative.
    pub fn elements(&self, cap: u64) -> Result<impl Iterator<Item = FqVector> + '_> {
        let required = self.size();
        if required > cap as u128 {
            return Err(Error::CapExceeded { required, cap });
        }
        Ok(self.space.elements().map(move |x| {
            let mut v = FqVector::from_raw(self.code.field(), x);
            v.add_scaled(1, &self.rep).expect("same length");
            v
        }))
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> FqVector {
        let mut x = self.space.random_element(rng);
        x.add_scaled(1, &self.rep).expect("same length");
        x
    }
}

impl PartialEq for Component {
    /// Equal subspaces and the same coset.
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
            && self
                .rep
                .sub(&other.rep)
                .map(|d| self.space.contains(&d))
                .unwrap_or(false)
    }
}

impl fmt::Debug for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Component")
            .field("anchor", &self.anchor)
            .field("dim", &self.dim())
            .field("rep", &self.rep.to_string())
            .finish()
    }
}

/// Basis of the codewords of ℍ supported inside the line `l`.
pub fn line_subcode(code: &HammingCode, l: &Line) -> Vec<FqVector> {
    let f = code.field();
    let cols: Vec<FqVector> = l.points().iter().map(|&p| code.column(p)).collect();
    let restricted = FqMatrix::from_columns(f, code.m(), &cols).expect("columns have length m");
    restricted
        .nullspace_basis()
        .into_iter()
        .map(|local| {
            let mut v = FqVector::zeros(f, code.n());
            for (&p, &d) in l.points().iter().zip(local.digits()) {
                v.set(p.offset(), d);
            }
            v
        })
        .collect()
}

/// R_i built as the sum of the line subcodes over the pencil through `i`,
/// with representative 0.
pub fn component_basis(code: &HammingCode, i: PointIndex) -> Component {
    let generators: Vec<FqVector> = pg::pencil(i, code).iter().flat_map(|l| line_subcode(code, l)).collect();
    make_component(code, i, &generators)
}

/// R_i built directly as the span of the triples with digit 1 at `i`.
pub fn component_from_triples(code: &HammingCode, i: PointIndex) -> Component {
    let triples: Vec<FqVector> = code.triples_at(i).into_iter().map(|t| t.codeword).collect();
    make_component(code, i, &triples)
}

fn make_component(code: &HammingCode, i: PointIndex, generators: &[FqVector]) -> Component {
    let space = Subspace::span(code.field(), code.n(), generators).expect("generators have length n");
    Component {
        code: code.clone(),
        anchor: i,
        space: Arc::new(space),
        rep: FqVector::zeros(code.field(), code.n()),
    }
}

pub fn in_component(comp: &Component, x: &FqVector) -> Result<bool> {
    if x.len() != comp.code.n() {
        return Err(Error::LengthMismatch {
            expected: comp.code.n(),
            actual: x.len(),
        });
    }
    Ok(comp.contains(x))
}

/// Outcome of a support-closure check; on failure names the offending point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    Holds,
    Violated(PointIndex),
}

impl Closure {
    pub fn holds(self) -> bool {
        self == Closure::Holds
    }
}

/// For `u ∈ R_i`: every support point x ≠ i has a companion y on the line
/// l_ix, distinct from i and x, with u_y ≠ 0.
pub fn line_closure_holds(r_i: &Component, u: &FqVector) -> Result<Closure> {
    let code = &r_i.code;
    if u.len() != code.n() || !r_i.space.contains(u) {
        return Err(Error::NotInSubspace);
    }
    let i = r_i.anchor;
    for x in support_points(code, u) {
        if x == i {
            continue;
        }
        let line = pg::line_through(i, x, code)?;
        let companion = line.points().iter().any(|&y| y != i && y != x && u[y.offset()] != 0);
        if !companion {
            return Ok(Closure::Violated(x));
        }
    }
    Ok(Closure::Holds)
}

fn support_points(code: &HammingCode, u: &FqVector) -> Vec<PointIndex> {
    u.support()
        .into_iter()
        .map(|k| code.point(k).expect("support within 1..=n"))
        .collect()
}

/// The sum R_i + R_j for two distinct anchors.
#[derive(Clone)]
pub struct PairSpan {
    code: HammingCode,
    i: PointIndex,
    j: PointIndex,
    line: Line,
    space: Arc<Subspace>,
}

impl PairSpan {
    pub fn new(r_i: &Component, r_j: &Component) -> Result<Self> {
        if r_i.anchor == r_j.anchor {
            return Err(Error::RepeatedPoint);
        }
        let space = r_i.space.sum(&r_j.space)?;
        Self::from_space(&r_i.code, r_i.anchor, r_j.anchor, Arc::new(space))
    }

    fn from_space(code: &HammingCode, i: PointIndex, j: PointIndex, space: Arc<Subspace>) -> Result<Self> {
        Ok(PairSpan {
            code: code.clone(),
            i,
            j,
            line: pg::line_through(i, j, code)?,
            space,
        })
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn contains(&self, x: &FqVector) -> bool {
        self.space.contains(x)
    }

    /// For `u ∈ R_i + R_j`: every support point x off the line l_ij has a
    /// companion y in the plane through i, j, x, distinct from all three,
    /// with u_y ≠ 0.
    pub fn plane_closure_holds(&self, u: &FqVector) -> Result<Closure> {
        if u.len() != self.code.n() || !self.space.contains(u) {
            return Err(Error::NotInSubspace);
        }
        for x in support_points(&self.code, u) {
            if self.line.contains(x) {
                continue;
            }
            let plane = pg::plane_points(self.i, self.j, x, &self.code)?;
            let companion = plane
                .points()
                .iter()
                .any(|&y| y != self.i && y != self.j && y != x && u[y.offset()] != 0);
            if !companion {
                return Ok(Closure::Violated(x));
            }
        }
        Ok(Closure::Holds)
    }
}

pub fn plane_closure_holds(r_i: &Component, r_j: &Component, u: &FqVector) -> Result<Closure> {
    PairSpan::new(r_i, r_j)?.plane_closure_holds(u)
}

/// Shared cache of the subspaces R_i and R_i + R_j of one code.
///
/// Entries are computed on first use and never mutated once inserted, so
/// concurrent readers only ever observe complete values.
pub struct ComponentCache {
    code: HammingCode,
    singles: RwLock<HashMap<PointIndex, Component>>,
    pairs: RwLock<HashMap<(PointIndex, PointIndex), Arc<Subspace>>>,
}

impl ComponentCache {
    pub fn new(code: &HammingCode) -> Self {
        ComponentCache {
            code: code.clone(),
            singles: RwLock::new(HashMap::new()),
            pairs: RwLock::new(HashMap::new()),
        }
    }

    pub fn code(&self) -> &HammingCode {
        &self.code
    }

    /// R_i with representative 0.
    pub fn component(&self, i: PointIndex) -> Component {
        if let Some(c) = self.singles.read().unwrap().get(&i) {
            return c.clone();
        }
        let c = component_basis(&self.code, i);
        self.singles.write().unwrap().entry(i).or_insert(c).clone()
    }

    /// R_i + R_j; symmetric in i and j.
    pub fn pair(&self, i: PointIndex, j: PointIndex) -> Arc<Subspace> {
        let key = if i <= j { (i, j) } else { (j, i) };
        if let Some(s) = self.pairs.read().unwrap().get(&key) {
            return Arc::clone(s);
        }
        let a = self.component(key.0);
        let b = self.component(key.1);
        let joint = Arc::new(a.space.sum(&b.space).expect("same ambient space"));
        Arc::clone(self.pairs.write().unwrap().entry(key).or_insert(joint))
    }

    pub fn pair_span(&self, i: PointIndex, j: PointIndex) -> Result<PairSpan> {
        if i == j {
            return Err(Error::RepeatedPoint);
        }
        PairSpan::from_space(&self.code, i, j, self.pair(i, j))
    }
}
