//! Brute-force oracles: perfectness, minimum distance, coset disjointness,
//! sphere-packing cardinality and embedding.
//!
//! These checks rely only on a membership predicate and, where needed, an
//! enumerator. They never consult the linear-algebra shortcuts used to build
//! the codes, so a pass is independent evidence.
//!
//! Exhaustive scans walk GF(q)^n in canonical base-q order split into
//! contiguous ranges that run in parallel; the reported counterexample is
//! always the first one in canonical order. Sampled scans draw vectors from a
//! ChaCha8 generator seeded with the recorded seed.

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::components::Component;
use crate::error::{Error, Result};
use crate::family::{padded, ColumnChoice, LambdaCode, SwitchedCode};
use crate::fqlin::{increment_digits, vector_from_index, FqVector};
use crate::gf::Field;
use crate::hamming::HammingCode;

/// Name of the generator used for sampled modes.
pub const GENERATOR: &str = "chacha8";

const CHUNK: u128 = 1 << 14;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Linear,
    Switched,
    Explicit,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Linear => "linear",
            Provenance::Switched => "switched",
            Provenance::Explicit => "explicit",
        })
    }
}

enum Members {
    Linear(HammingCode),
    Switched(SwitchedCode),
    Explicit {
        set: HashSet<Vec<u8>>,
        words: Vec<FqVector>,
    },
}

/// A code of length n over GF(q) given by a total membership predicate and
/// an enumerator.
pub struct PerfectCodeOracle {
    field: Field,
    n: usize,
    members: Members,
}

impl PerfectCodeOracle {
    pub fn hamming(code: &HammingCode) -> Self {
        PerfectCodeOracle {
            field: code.field().clone(),
            n: code.n(),
            members: Members::Linear(code.clone()),
        }
    }

    pub fn switched(t: SwitchedCode) -> Self {
        PerfectCodeOracle {
            field: t.code().field().clone(),
            n: t.n(),
            members: Members::Switched(t),
        }
    }

    /// An explicit list of words; duplicates are dropped.
    pub fn explicit(field: &Field, n: usize, words: Vec<FqVector>) -> Result<Self> {
        let mut set = HashSet::with_capacity(words.len());
        let mut unique = Vec::with_capacity(words.len());
        for w in words {
            if w.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    actual: w.len(),
                });
            }
            if w.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.q(),
                    right: w.field().q(),
                });
            }
            if set.insert(w.digits().to_vec()) {
                unique.push(w);
            }
        }
        Ok(PerfectCodeOracle {
            field: field.clone(),
            n,
            members: Members::Explicit { set, words: unique },
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn provenance(&self) -> Provenance {
        match self.members {
            Members::Linear(_) => Provenance::Linear,
            Members::Switched(_) => Provenance::Switched,
            Members::Explicit { .. } => Provenance::Explicit,
        }
    }

    pub fn size(&self) -> u128 {
        match &self.members {
            Members::Linear(c) => c.size(),
            Members::Switched(t) => t.size(),
            Members::Explicit { words, .. } => words.len() as u128,
        }
    }

    pub fn contains_digits(&self, x: &[u8]) -> bool {
        match &self.members {
            Members::Linear(c) => c.is_codeword_digits(x),
            Members::Switched(t) => t.contains_digits(x),
            Members::Explicit { set, .. } => set.contains(x),
        }
    }

    pub fn contains(&self, x: &FqVector) -> bool {
        x.len() == self.n && x.field() == &self.field && self.contains_digits(x.digits())
    }

    /// Visit every member once.
    pub fn for_each_member<F: FnMut(&[u8])>(&self, cap: u64, mut f: F) -> Result<()> {
        match &self.members {
            Members::Linear(c) => {
                c.enumerate(cap)?.for_each(f);
                Ok(())
            }
            Members::Switched(t) => t.for_each_member(cap, f),
            Members::Explicit { words, .. } => {
                for w in words {
                    f(w.digits());
                }
                Ok(())
            }
        }
    }

    pub fn members(&self, cap: u64) -> Result<Vec<FqVector>> {
        let mut out = Vec::new();
        self.for_each_member(cap, |x| out.push(FqVector::from_raw(&self.field, x.to_vec())))?;
        Ok(out)
    }
}

/// How a property is checked.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { seed: u64, samples: u64 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => write!(f, "exhaustive"),
            Mode::Sampled { .. } => write!(f, "sampled:{GENERATOR}"),
        }
    }
}

/// Outcome of one verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub property: String,
    pub mode: Mode,
    pub passed: bool,
    /// Number of items examined.
    pub checked: u128,
    pub counterexample: Option<String>,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn new(property: &str, mode: Mode, passed: bool, checked: u128) -> Self {
        VerifyReport {
            property: property.to_string(),
            mode,
            passed,
            checked,
            counterexample: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn with_counterexample(mut self, c: impl Into<String>) -> Self {
        self.counterexample = Some(c.into());
        self
    }

    fn timed(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }
}

impl fmt::Display for VerifyReport {
    /// `property mode result seed samples time_ms [counterexample]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seed = match self.mode {
            Mode::Exhaustive => "-".to_string(),
            Mode::Sampled { seed, .. } => seed.to_string(),
        };
        write!(
            f,
            "{} {} {} {} {} {}",
            self.property,
            self.mode,
            if self.passed { "pass" } else { "fail" },
            seed,
            self.checked,
            self.elapsed.as_millis()
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

fn space_size(field: &Field, n: usize) -> Option<u128> {
    (field.q() as u128).checked_pow(n as u32)
}

fn require_cap(required: Option<u128>, cap: u64) -> Result<u128> {
    match required {
        Some(r) if r <= cap as u128 => Ok(r),
        Some(r) => Err(Error::CapExceeded { required: r, cap }),
        None => Err(Error::CapExceeded {
            required: u128::MAX,
            cap,
        }),
    }
}

/// Number of members within distance 1 of `x`, stopping once it exceeds 1.
/// `x` is restored before returning.
fn ball_count(oracle: &PerfectCodeOracle, x: &mut [u8]) -> usize {
    let f = &oracle.field;
    let mut count = usize::from(oracle.contains_digits(x));
    for pos in 0..x.len() {
        let orig = x[pos];
        for c in f.nonzero() {
            x[pos] = f.add(orig, c);
            if oracle.contains_digits(x) {
                count += 1;
                if count > 1 {
                    x[pos] = orig;
                    return count;
                }
            }
        }
        x[pos] = orig;
    }
    count
}

fn describe_ball(x: &[u8], count: usize) -> String {
    let digits: String = x.iter().map(|d| char::from(b'0' + d)).collect();
    format!("{digits}(covered:{count})")
}

/// Every vector of GF(q)^n has exactly one member within distance 1.
pub fn is_perfect(oracle: &PerfectCodeOracle, mode: Mode, cap: u64) -> Result<VerifyReport> {
    let start = Instant::now();
    let n = oracle.n;
    let q = oracle.field.q();
    match mode {
        Mode::Exhaustive => {
            let total = require_cap(space_size(&oracle.field, n), cap)?;
            let chunks = total.div_ceil(CHUNK);
            let failure = (0..chunks).into_par_iter().find_map_first(|chunk| {
                let lo = chunk * CHUNK;
                let hi = (lo + CHUNK).min(total);
                let mut x = vector_from_index(&oracle.field, n, lo).into_digits();
                for _ in lo..hi {
                    let count = ball_count(oracle, &mut x);
                    if count != 1 {
                        return Some(describe_ball(&x, count));
                    }
                    increment_digits(q, &mut x);
                }
                None
            });
            let report = VerifyReport::new("perfect", mode, failure.is_none(), total);
            Ok(match failure {
                Some(c) => report.with_counterexample(c),
                None => report,
            }
            .timed(start))
        }
        Mode::Sampled { seed, samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let vectors: Vec<FqVector> = (0..samples)
                .map(|_| FqVector::random(&oracle.field, n, &mut rng))
                .collect();
            let failure = vectors.par_iter().find_map_first(|v| {
                let mut x = v.digits().to_vec();
                let count = ball_count(oracle, &mut x);
                (count != 1).then(|| describe_ball(&x, count))
            });
            let report = VerifyReport::new("perfect", mode, failure.is_none(), samples as u128);
            Ok(match failure {
                Some(c) => report.with_counterexample(c),
                None => report,
            }
            .timed(start))
        }
    }
}

/// Minimum distance over all pairs of distinct words. None for fewer than two.
pub fn min_distance_pairwise(words: &[FqVector]) -> Option<usize> {
    (0..words.len())
        .into_par_iter()
        .filter_map(|r| {
            words[r + 1..]
                .iter()
                .map(|w| words[r].distance(w).expect("compatible words"))
                .min()
        })
        .min()
}

/// Visit every vector at distance exactly `r` from `x` (restoring `x`),
/// stopping early when `f` returns true.
fn any_at_distance<F: FnMut(&[u8]) -> bool>(field: &Field, x: &mut [u8], r: usize, f: &mut F) -> bool {
    fn go<F: FnMut(&[u8]) -> bool>(field: &Field, x: &mut [u8], from: usize, left: usize, f: &mut F) -> bool {
        if left == 0 {
            return f(x);
        }
        for pos in from..=x.len() - left {
            let orig = x[pos];
            for c in field.nonzero() {
                x[pos] = field.add(orig, c);
                if go(field, x, pos + 1, left - 1, f) {
                    x[pos] = orig;
                    return true;
                }
            }
            x[pos] = orig;
        }
        false
    }
    r <= x.len() && go(field, x, 0, r, f)
}

/// Minimum distance by searching, around every member, the spheres of radius
/// 1, 2, … for another member.
pub fn min_distance_by_neighborhood(oracle: &PerfectCodeOracle, cap: u64) -> Result<usize> {
    let members = oracle.members(cap)?;
    if members.len() < 2 {
        return Err(Error::InvalidParameters(
            "minimum distance needs at least two codewords".into(),
        ));
    }
    for r in 1..=oracle.n {
        let found = members.par_iter().any(|c| {
            let mut x = c.digits().to_vec();
            any_at_distance(&oracle.field, &mut x, r, &mut |y| oracle.contains_digits(y))
        });
        if found {
            return Ok(r);
        }
    }
    unreachable!("two distinct members are at distance at most n")
}

/// Minimum distance of the code. Linear codes use the minimum nonzero weight,
/// explicit lists compare all pairs, switched codes search neighborhoods.
pub fn min_distance(oracle: &PerfectCodeOracle, cap: u64) -> Result<usize> {
    match &oracle.members {
        Members::Linear(code) => {
            let mut best = usize::MAX;
            code.enumerate(cap)?.for_each(|c| {
                let w = c.iter().filter(|&&d| d != 0).count();
                if w > 0 {
                    best = best.min(w);
                }
            });
            if best == usize::MAX {
                return Err(Error::InvalidParameters(
                    "minimum distance needs at least two codewords".into(),
                ));
            }
            Ok(best)
        }
        Members::Explicit { words, .. } => {
            if words.len() as u128 > cap as u128 {
                return Err(Error::CapExceeded {
                    required: words.len() as u128,
                    cap,
                });
            }
            min_distance_pairwise(words)
                .ok_or_else(|| Error::InvalidParameters("minimum distance needs at least two codewords".into()))
        }
        Members::Switched(_) => min_distance_by_neighborhood(oracle, cap),
    }
}

/// Whether the cosets `a` and `b` share no vector.
pub fn cosets_disjoint(a: &Component, b: &Component, mode: Mode, cap: u64) -> Result<VerifyReport> {
    let start = Instant::now();
    match mode {
        Mode::Exhaustive => {
            let (small, large) = if a.size() <= b.size() { (a, b) } else { (b, a) };
            let set: HashSet<FqVector> = small.elements(cap)?.collect();
            let mut checked = set.len() as u128;
            let mut common = None;
            for x in large.elements(cap)? {
                checked += 1;
                if set.contains(&x) {
                    common = Some(x);
                    break;
                }
            }
            let report = VerifyReport::new("cosets-disjoint", mode, common.is_none(), checked);
            Ok(match common {
                Some(x) => report.with_counterexample(x.to_string()),
                None => report,
            }
            .timed(start))
        }
        Mode::Sampled { seed, samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let common = (0..samples).map(|_| b.random_element(&mut rng)).find(|x| a.contains(x));
            let report = VerifyReport::new("cosets-disjoint", mode, common.is_none(), samples as u128);
            Ok(match common {
                Some(x) => report.with_counterexample(x.to_string()),
                None => report,
            }
            .timed(start))
        }
    }
}

/// |C| · (1 + n(q − 1)) = q^n, with |C| counted by enumeration.
pub fn sphere_packing_ok(oracle: &PerfectCodeOracle, cap: u64) -> Result<bool> {
    let mut count: u128 = 0;
    oracle.for_each_member(cap, |_| count += 1)?;
    let q = oracle.field.q() as u128;
    let ball = 1 + oracle.n as u128 * (q - 1);
    let Some(mut product) = count.checked_mul(ball) else {
        return Ok(false);
    };
    // product == q^n without forming q^n
    for _ in 0..oracle.n {
        if product % q != 0 {
            return Ok(false);
        }
        product /= q;
    }
    Ok(product == 1)
}

/// Λ ∪ {0}, padded into the chosen columns, lies in the code. With `strong`,
/// additionally every member vanishing outside the chosen columns restricts
/// to a word of Λ ∪ {0}; all q^len restrictions are scanned.
pub fn embedding_check(
    lam: &LambdaCode,
    choice: &ColumnChoice,
    oracle: &PerfectCodeOracle,
    strong: bool,
    cap: u64,
) -> Result<VerifyReport> {
    let start = Instant::now();
    let n = oracle.n;
    if lam.length() != choice.len() {
        return Err(Error::LengthMismatch {
            expected: choice.len(),
            actual: lam.length(),
        });
    }
    let pads = padded(lam, choice, n);
    let mut checked = pads.len() as u128;
    if let Some(missing) = pads.iter().find(|p| !oracle.contains(p)) {
        let property = if strong { "embed-strong" } else { "embed-weak" };
        return Ok(VerifyReport::new(property, Mode::Exhaustive, false, checked)
            .with_counterexample(format!("missing:{missing}"))
            .timed(start));
    }
    if !strong {
        return Ok(VerifyReport::new("embed-weak", Mode::Exhaustive, true, checked).timed(start));
    }
    let total = require_cap(space_size(lam.field(), choice.len()), cap)?;
    let columns: Vec<usize> = choice.columns().map(|c| c.offset()).collect();
    let mut prefix = vec![0u8; columns.len()];
    let mut x = vec![0u8; n];
    let mut extra = None;
    for _ in 0..total {
        for (&pos, &d) in columns.iter().zip(&prefix) {
            x[pos] = d;
        }
        checked += 1;
        if oracle.contains_digits(&x) {
            let word = FqVector::from_raw(lam.field(), prefix.clone());
            if !lam.contains_with_zero(&word) {
                extra = Some(word);
                break;
            }
        }
        increment_digits(lam.field().q(), &mut prefix);
    }
    let report = VerifyReport::new("embed-strong", Mode::Exhaustive, extra.is_none(), checked);
    Ok(match extra {
        Some(w) => report.with_counterexample(format!("extra:{w}")),
        None => report,
    }
    .timed(start))
}

/// Sampled audit of the switching map ℍ → T: each sampled codeword maps to a
/// member of T that has no other preimage.
pub fn bijection_audit(t: &SwitchedCode, seed: u64, samples: u64) -> VerifyReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code = t.code();
    let words: Vec<FqVector> = (0..samples).map(|_| code.random_codeword(&mut rng)).collect();
    let failure = words.par_iter().find_map_first(|c| {
        let x = t.image(c);
        let ok = t.contains(&x) && t.preimages(&x) == vec![c.clone()];
        (!ok).then(|| c.to_string())
    });
    let mode = Mode::Sampled { seed, samples };
    let report = VerifyReport::new("bijection", mode, failure.is_none(), samples as u128);
    match failure {
        Some(c) => report.with_counterexample(c),
        None => report,
    }
    .timed(start)
}
