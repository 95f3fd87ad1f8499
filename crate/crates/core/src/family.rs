//! Admissible families of components built from a short code Λ, and the
//! switching that turns them into a nonlinear 1-perfect code T.
//!
//! Given chosen columns c_1, …, c_L of H (m independent base columns, plus k
//! columns that are combinations of exactly two base columns in the extended
//! binary flavor), each λ ∈ Λ is lifted to
//!
//! * v = Σ_j λ_j h_{c_j} = μ · h_i for a unique point i and scalar μ ≠ 0,
//! * u = λ_j at c_j, −μ at i, zero elsewhere, so that H u = 0.
//!
//! The component R_i + u is then switched to R_i + u + μ e_i. Because the
//! chosen columns keep their canonical positions in H, "the first m
//! coordinates" of a lifted vector are the chosen columns, wherever they sit.

use std::fmt;
use std::sync::Arc;

use crate::components::{Component, ComponentCache};
use crate::error::{Error, Result};
use crate::fqlin::{axpy, in_span, FqMatrix, FqVector, SpanWalker};
use crate::gf::Field;
use crate::hamming::HammingCode;
use crate::pg::PointIndex;

/// Which hypotheses Λ must satisfy.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Any q; weights ≥ 3 and pairwise distances ≥ 5.
    General,
    /// q = 3; weights ≥ 3 and pairwise distances ≥ 3.
    Ternary,
    /// q = 2, length m + k; weights and distances ≥ 3k + 3.
    BinaryExtended { k: usize },
}

impl Flavor {
    pub fn weight_bound(self) -> usize {
        match self {
            Flavor::General | Flavor::Ternary => 3,
            Flavor::BinaryExtended { k } => 3 * k + 3,
        }
    }

    pub fn distance_bound(self) -> usize {
        match self {
            Flavor::General => 5,
            Flavor::Ternary => 3,
            Flavor::BinaryExtended { k } => 3 * k + 3,
        }
    }

    /// Number of extra (two-column) positions.
    pub fn k(self) -> usize {
        match self {
            Flavor::BinaryExtended { k } => k,
            _ => 0,
        }
    }

    pub fn required_q(self) -> Option<u8> {
        match self {
            Flavor::General => None,
            Flavor::Ternary => Some(3),
            Flavor::BinaryExtended { .. } => Some(2),
        }
    }

    /// Whether the converse (strong) embedding is expected to hold.
    pub fn embeds_strongly(self) -> bool {
        !matches!(self, Flavor::BinaryExtended { .. })
    }

    /// Parse `general`, `ternary` or `binary-extended:K`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 0,
            message: format!("unknown flavor {s:?}; expected general, ternary or binary-extended:K"),
        };
        match s {
            "general" => Ok(Flavor::General),
            "ternary" => Ok(Flavor::Ternary),
            _ => {
                let k = s.strip_prefix("binary-extended:").ok_or_else(bad)?;
                Ok(Flavor::BinaryExtended {
                    k: k.parse().map_err(|_| bad())?,
                })
            }
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::General => write!(f, "general"),
            Flavor::Ternary => write!(f, "ternary"),
            Flavor::BinaryExtended { k } => write!(f, "binary-extended:{k}"),
        }
    }
}

/// The nonzero words λ_1, …, λ_t of a short code Λ ∪ {0}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaCode {
    field: Field,
    length: usize,
    vectors: Vec<FqVector>,
    flavor: Flavor,
}

impl LambdaCode {
    pub fn new(field: &Field, length: usize, vectors: Vec<FqVector>, flavor: Flavor) -> Result<Self> {
        for v in &vectors {
            if v.len() != length {
                return Err(Error::LengthMismatch {
                    expected: length,
                    actual: v.len(),
                });
            }
            if v.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.q(),
                    right: v.field().q(),
                });
            }
        }
        Ok(LambdaCode {
            field: field.clone(),
            length,
            vectors,
            flavor,
        })
    }

    /// Convenience constructor from digit strings; the length is taken from
    /// the first word.
    pub fn parse_vectors(field: &Field, flavor: Flavor, words: &[&str]) -> Result<Self> {
        let vectors = words
            .iter()
            .map(|w| FqVector::parse(field, w))
            .collect::<Result<Vec<_>>>()?;
        let length = vectors.first().map_or(0, |v| v.len());
        Self::new(field, length, vectors, flavor)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn vectors(&self) -> &[FqVector] {
        &self.vectors
    }

    pub fn t(&self) -> usize {
        self.vectors.len()
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn with_flavor(mut self, flavor: Flavor) -> Self {
        self.flavor = flavor;
        self
    }

    /// Whether `x` is one of the λ or zero.
    pub fn contains_with_zero(&self, x: &FqVector) -> bool {
        x.is_zero() || self.vectors.contains(x)
    }
}

/// One failed hypothesis. Vector indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaViolation {
    WrongField {
        q: u8,
        required: u8,
    },
    ZeroVector {
        index: usize,
    },
    Duplicate {
        first: usize,
        second: usize,
        word: String,
    },
    LowWeight {
        index: usize,
        word: String,
        weight: usize,
        bound: usize,
    },
    ShortDistance {
        first: usize,
        second: usize,
        distance: usize,
        bound: usize,
    },
}

impl fmt::Display for LambdaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaViolation::WrongField { q, required } => {
                write!(f, "flavor requires GF({required}), got GF({q})")
            }
            LambdaViolation::ZeroVector { index } => write!(f, "vector {index} is zero"),
            LambdaViolation::Duplicate { first, second, word } => {
                write!(f, "vectors {first} and {second} are both {word}")
            }
            LambdaViolation::LowWeight {
                index,
                word,
                weight,
                bound,
            } => {
                write!(f, "vector {index} ({word}) has weight {weight} < {bound}")
            }
            LambdaViolation::ShortDistance {
                first,
                second,
                distance,
                bound,
            } => {
                write!(f, "vectors {first} and {second} are at distance {distance} < {bound}")
            }
        }
    }
}

/// Every hypothesis violated by a lambda code; empty when valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaReport {
    pub violations: Vec<LambdaViolation>,
}

impl LambdaReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for LambdaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

pub fn validate_lambda(lam: &LambdaCode) -> LambdaReport {
    let flavor = lam.flavor;
    let mut violations = Vec::new();
    if let Some(required) = flavor.required_q() {
        if lam.field.q() != required {
            violations.push(LambdaViolation::WrongField {
                q: lam.field.q(),
                required,
            });
        }
    }
    for (k, v) in lam.vectors.iter().enumerate() {
        if v.is_zero() {
            violations.push(LambdaViolation::ZeroVector { index: k + 1 });
            continue;
        }
        let weight = v.weight();
        if weight < flavor.weight_bound() {
            violations.push(LambdaViolation::LowWeight {
                index: k + 1,
                word: v.to_string(),
                weight,
                bound: flavor.weight_bound(),
            });
        }
    }
    for (r, a) in lam.vectors.iter().enumerate() {
        for (s, b) in lam.vectors.iter().enumerate().skip(r + 1) {
            let distance = a.distance(b).expect("same length and field");
            if distance == 0 {
                violations.push(LambdaViolation::Duplicate {
                    first: r + 1,
                    second: s + 1,
                    word: a.to_string(),
                });
            } else if distance < flavor.distance_bound() {
                violations.push(LambdaViolation::ShortDistance {
                    first: r + 1,
                    second: s + 1,
                    distance,
                    bound: flavor.distance_bound(),
                });
            }
        }
    }
    LambdaReport { violations }
}

/// The columns of H that carry the coordinates of Λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnChoice {
    base: Vec<PointIndex>,
    extra: Vec<PointIndex>,
}

impl ColumnChoice {
    /// `base` must be m independent columns; every `extra` column must be a
    /// combination of exactly two base columns. All columns distinct.
    pub fn new(code: &HammingCode, base: Vec<PointIndex>, extra: Vec<PointIndex>) -> Result<Self> {
        if base.len() != code.m() {
            return Err(Error::InvalidChoice(format!(
                "need {} base columns, got {}",
                code.m(),
                base.len()
            )));
        }
        let mut all: Vec<PointIndex> = base.iter().chain(&extra).copied().collect();
        all.sort();
        all.dedup();
        if all.len() != base.len() + extra.len() {
            return Err(Error::InvalidChoice("columns must be distinct".into()));
        }
        let base_cols: Vec<FqVector> = base.iter().map(|&p| code.column(p)).collect();
        if FqMatrix::from_columns(code.field(), code.m(), &base_cols)?.rank() != code.m() {
            return Err(Error::InvalidChoice("base columns are linearly dependent".into()));
        }
        for &p in &extra {
            let coeffs = in_span(&code.column(p), &base_cols)?.expect("base spans GF(q)^m");
            if coeffs.iter().filter(|&&c| c != 0).count() != 2 {
                return Err(Error::InvalidChoice(format!(
                    "column {p} is not a combination of exactly two base columns"
                )));
            }
        }
        Ok(ColumnChoice { base, extra })
    }

    pub fn base(&self) -> &[PointIndex] {
        &self.base
    }

    pub fn extra(&self) -> &[PointIndex] {
        &self.extra
    }

    pub fn k(&self) -> usize {
        self.extra.len()
    }

    /// Base columns followed by extra columns, in Λ coordinate order.
    pub fn columns(&self) -> impl Iterator<Item = PointIndex> + '_ {
        self.base.iter().chain(&self.extra).copied()
    }

    pub fn len(&self) -> usize {
        self.base.len() + self.extra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, p: PointIndex) -> bool {
        self.base.contains(&p) || self.extra.contains(&p)
    }
}

/// Base = the unit columns e_1, …, e_m. Extra = e_a + e_b for pairs (a, b)
/// taken lexicographically: e_1+e_2, e_1+e_3, …, e_2+e_3, …
pub fn default_choice(code: &HammingCode, k: usize) -> Result<ColumnChoice> {
    let m = code.m();
    let unit = |a: usize| -> Vec<u8> {
        let mut d = vec![0u8; m];
        d[a] = 1;
        d
    };
    let base: Vec<PointIndex> = (0..m)
        .map(|a| code.point_of_column(&unit(a)).expect("unit columns are normalized"))
        .collect();
    let pairs = m * (m - 1) / 2;
    if k > pairs {
        return Err(Error::InvalidChoice(format!(
            "k = {k} exceeds the {pairs} two-column sums available for m = {m}"
        )));
    }
    let extra = (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .take(k)
        .map(|(a, b)| {
            let mut d = unit(a);
            d[b] = 1;
            code.point_of_column(&d).expect("e_a + e_b is normalized")
        })
        .collect();
    ColumnChoice::new(code, base, extra)
}

/// Anchor i, scalar μ and representative u for one λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub anchor: PointIndex,
    pub mu: u8,
    pub rep: FqVector,
}

/// Lift one λ (1-based `index` used in error messages).
pub fn lift(code: &HammingCode, choice: &ColumnChoice, lambda: &FqVector, index: usize) -> Result<Lift> {
    if lambda.len() != choice.len() {
        return Err(Error::LengthMismatch {
            expected: choice.len(),
            actual: lambda.len(),
        });
    }
    let f = code.field();
    let mut v = vec![0u8; code.m()];
    for (c, &d) in choice.columns().zip(lambda.digits()) {
        axpy(f, &mut v, d, code.column_digits(c));
    }
    let (anchor, mu) = code.locate(&v).ok_or(Error::DegenerateLambda { index })?;
    if choice.contains(anchor) {
        return Err(Error::AnchorInChoice {
            index,
            anchor: anchor.get(),
        });
    }
    let mut rep = FqVector::zeros(f, code.n());
    for (c, &d) in choice.columns().zip(lambda.digits()) {
        rep.set(c.offset(), d);
    }
    rep.set(anchor.offset(), f.neg(mu));
    debug_assert!(code.is_codeword(&rep).unwrap());
    Ok(Lift { anchor, mu, rep })
}

/// One member R_i + u of a family together with its switching scalar μ.
#[derive(Clone, Debug)]
pub struct FamilyEntry {
    pub anchor: PointIndex,
    pub mu: u8,
    pub component: Component,
}

impl FamilyEntry {
    pub fn rep(&self) -> &FqVector {
        self.component.rep()
    }
}

/// A family of components R_{i_1} + u_1, …, R_{i_t} + u_t of one Hamming code.
#[derive(Clone)]
pub struct SwitchFamily {
    code: HammingCode,
    choice: Option<ColumnChoice>,
    k: usize,
    entries: Vec<FamilyEntry>,
    cache: Arc<ComponentCache>,
}

impl SwitchFamily {
    /// Assemble a family from raw `(i, μ, u)` records, e.g. read from a file.
    /// Checks μ ≠ 0 and u ∈ ℍ, nothing else.
    pub fn from_entries(code: &HammingCode, k: usize, records: Vec<(PointIndex, u8, FqVector)>) -> Result<Self> {
        let cache = Arc::new(ComponentCache::new(code));
        let mut entries = Vec::with_capacity(records.len());
        for (anchor, mu, rep) in records {
            if mu == 0 || mu >= code.q() {
                return Err(Error::InvalidParameters(format!(
                    "switching scalar must be a nonzero digit, got {mu}"
                )));
            }
            let component = cache.component(anchor).with_rep(rep)?;
            entries.push(FamilyEntry { anchor, mu, component });
        }
        Ok(SwitchFamily {
            code: code.clone(),
            choice: None,
            k,
            entries,
            cache,
        })
    }

    pub fn code(&self) -> &HammingCode {
        &self.code
    }

    pub fn choice(&self) -> Option<&ColumnChoice> {
        self.choice.as_ref()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[FamilyEntry] {
        &self.entries
    }

    pub fn t(&self) -> usize {
        self.entries.len()
    }

    pub fn cache(&self) -> &ComponentCache {
        &self.cache
    }
}

impl fmt::Debug for SwitchFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SwitchFamily")
            .field("code", &self.code)
            .field("k", &self.k)
            .field("entries", &self.entries)
            .finish()
    }
}

fn check_structure(code: &HammingCode, choice: &ColumnChoice, lam: &LambdaCode) -> Result<()> {
    if lam.field() != code.field() {
        return Err(Error::FieldMismatch {
            left: code.q(),
            right: lam.field().q(),
        });
    }
    if lam.length() != choice.len() {
        return Err(Error::InvalidLambda(format!(
            "lambda length {} does not match the {} chosen columns",
            lam.length(),
            choice.len()
        )));
    }
    if choice.k() != lam.flavor().k() {
        return Err(Error::InvalidLambda(format!(
            "flavor {} needs {} extra columns, choice has {}",
            lam.flavor(),
            lam.flavor().k(),
            choice.k()
        )));
    }
    Ok(())
}

/// Lift every λ of `lam` and check that no representative lies in its own
/// component. With `force` the hypotheses on Λ are not enforced and the
/// representative check is left to [`check_representatives`].
pub fn build_family(code: &HammingCode, choice: &ColumnChoice, lam: &LambdaCode, force: bool) -> Result<SwitchFamily> {
    check_structure(code, choice, lam)?;
    if !force {
        let report = validate_lambda(lam);
        if !report.is_ok() {
            return Err(Error::InvalidLambda(report.to_string()));
        }
    }
    let mut records = Vec::with_capacity(lam.t());
    for (k, lambda) in lam.vectors().iter().enumerate() {
        let l = lift(code, choice, lambda, k + 1)?;
        records.push((l.anchor, l.mu, l.rep));
    }
    let mut fam = SwitchFamily::from_entries(code, choice.k(), records)?;
    fam.choice = Some(choice.clone());
    if !force {
        check_representatives(&fam)?;
    }
    Ok(fam)
}

/// Every representative lies outside its own component: u_s ∉ R_{i_s}.
/// This is what keeps the zero word in the switched code.
pub fn check_representatives(fam: &SwitchFamily) -> Result<()> {
    for (k, e) in fam.entries.iter().enumerate() {
        if e.component.space().contains(e.rep()) {
            return Err(Error::RepresentativeInComponent {
                index: k + 1,
                anchor: e.anchor.get(),
            });
        }
    }
    Ok(())
}

/// Whether two entries' cosets are disjoint, via u_r − u_s ∉ R_{i_r} + R_{i_s}
/// (just R_{i_r} when the anchors coincide).
pub fn entries_disjoint(fam: &SwitchFamily, r: usize, s: usize) -> bool {
    let a = &fam.entries[r];
    let b = &fam.entries[s];
    let diff = a.rep().sub(b.rep()).expect("same length");
    if a.anchor == b.anchor {
        !a.component.space().contains(&diff)
    } else {
        !fam.cache.pair(a.anchor, b.anchor).contains(&diff)
    }
}

/// Pairwise disjointness of all components; reports the first intersecting
/// pair (1-based, lexicographic).
pub fn check_admissible(fam: &SwitchFamily) -> Result<()> {
    let t = fam.entries.len();
    for r in 0..t {
        for s in r + 1..t {
            if !entries_disjoint(fam, r, s) {
                return Err(Error::NotAdmissible(r + 1, s + 1));
            }
        }
    }
    Ok(())
}

struct Switched {
    anchor: PointIndex,
    mu: u8,
    component: Component,
    shift_syndrome: Vec<u8>,
}

/// The code T obtained from ℍ by replacing every R_{i_s} + u_s with
/// R_{i_s} + u_s + μ_s e_{i_s}.
pub struct SwitchedCode {
    code: HammingCode,
    entries: Vec<Switched>,
}

/// Switch an admissible family. Admissibility is re-checked.
pub fn switch(fam: &SwitchFamily) -> Result<SwitchedCode> {
    check_admissible(fam)?;
    let f = fam.code.field();
    let entries = fam
        .entries
        .iter()
        .map(|e| Switched {
            anchor: e.anchor,
            mu: e.mu,
            component: e.component.clone(),
            shift_syndrome: fam
                .code
                .column_digits(e.anchor)
                .iter()
                .map(|&d| f.mul(e.mu, d))
                .collect(),
        })
        .collect();
    Ok(SwitchedCode {
        code: fam.code.clone(),
        entries,
    })
}

impl SwitchedCode {
    pub fn code(&self) -> &HammingCode {
        &self.code
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    /// |T| = |ℍ|.
    pub fn size(&self) -> u128 {
        self.code.size()
    }

    pub fn contains(&self, x: &FqVector) -> bool {
        x.len() == self.n() && x.field() == self.code.field() && self.contains_digits(x.digits())
    }

    pub fn contains_digits(&self, x: &[u8]) -> bool {
        let s = self.code.syndrome_digits(x);
        if s.iter().all(|&d| d == 0) {
            return !self.entries.iter().any(|e| e.component.contains_digits(x));
        }
        let f = self.code.field();
        let mut y = x.to_vec();
        for e in self.entries.iter().filter(|e| e.shift_syndrome == s) {
            let pos = e.anchor.offset();
            y[pos] = f.sub(x[pos], e.mu);
            if e.component.contains_digits(&y) {
                return true;
            }
            y[pos] = x[pos];
        }
        false
    }

    /// The switching map ℍ → T: c + μ_s e_{i_s} for the first component
    /// containing `c`, otherwise `c` itself.
    pub fn image(&self, c: &FqVector) -> FqVector {
        let mut out = c.clone();
        if let Some(e) = self.entries.iter().find(|e| e.component.contains(c)) {
            let pos = e.anchor.offset();
            out.set(pos, self.code.field().add(c[pos], e.mu));
        }
        out
    }

    /// Codewords of ℍ that [`image`](Self::image) sends to `x`.
    pub fn preimages(&self, x: &FqVector) -> Vec<FqVector> {
        let f = self.code.field();
        let mut candidates = vec![x.clone()];
        for e in &self.entries {
            let mut c = x.clone();
            let pos = e.anchor.offset();
            c.set(pos, f.sub(x[pos], e.mu));
            if !candidates.contains(&c) {
                candidates.push(c);
            }
        }
        candidates
            .into_iter()
            .filter(|c| self.code.is_codeword(c).unwrap_or(false) && &self.image(c) == x)
            .collect()
    }

    /// Visit every member of T exactly once, in the order of the codewords of
    /// ℍ they come from.
    ///
    /// The walk carries, next to each codeword c, the check values P_s c of
    /// every component so that membership c ∈ R_{i_s} + u_s is a comparison.
    pub fn for_each_member<F: FnMut(&[u8])>(&self, cap: u64, mut f: F) -> Result<()> {
        let required = self.size();
        if required > cap as u128 {
            return Err(Error::CapExceeded { required, cap });
        }
        let field = self.code.field();
        let n = self.n();
        let checks: Vec<&[Vec<u8>]> = self.entries.iter().map(|e| e.component.space().check_rows()).collect();
        let targets: Vec<Vec<u8>> = self
            .entries
            .iter()
            .map(|e| e.component.space().check_values(e.component.rep().digits()))
            .collect();
        let width = n + checks.iter().map(|c| c.len()).sum::<usize>();
        let generators: Vec<Vec<u8>> = self
            .code
            .generators()
            .iter()
            .map(|g| {
                let mut row = g.digits().to_vec();
                for rows in &checks {
                    row.extend(rows.iter().map(|c| crate::fqlin::dot(field, c, g.digits())));
                }
                row
            })
            .collect();
        let mut buf = vec![0u8; n];
        SpanWalker::new(field, width, generators).for_each(|w| {
            let (c, mut rest) = w.split_at(n);
            buf.copy_from_slice(c);
            for (e, target) in self.entries.iter().zip(&targets) {
                let (vals, tail) = rest.split_at(target.len());
                rest = tail;
                if vals == target.as_slice() {
                    let pos = e.anchor.offset();
                    buf[pos] = field.add(buf[pos], e.mu);
                    break;
                }
            }
            f(&buf);
        });
        Ok(())
    }

    /// All members as vectors.
    pub fn members(&self, cap: u64) -> Result<Vec<FqVector>> {
        let mut out = Vec::new();
        let field = self.code.field().clone();
        self.for_each_member(cap, |x| out.push(FqVector::from_raw(&field, x.to_vec())))?;
        Ok(out)
    }
}

/// Λ ∪ {0} written into length-n vectors: λ_j at chosen column c_j, zero
/// elsewhere. The zero vector comes first.
pub fn padded(lam: &LambdaCode, choice: &ColumnChoice, n: usize) -> Vec<FqVector> {
    let f = lam.field();
    std::iter::once(FqVector::zeros(f, n))
        .chain(lam.vectors().iter().map(|v| {
            let mut x = FqVector::zeros(f, n);
            for (c, &d) in choice.columns().zip(v.digits()) {
                x.set(c.offset(), d);
            }
            x
        }))
        .collect()
}
