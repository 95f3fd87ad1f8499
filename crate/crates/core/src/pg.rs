//! Points, lines, pencils and planes of PG(m−1, q), realized on the columns
//! of a Hamming parity-check matrix. Point `k` is column `k` of H.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::fqlin::{axpy, FqMatrix, FqVector};
use crate::gf::Field;
use crate::hamming::HammingCode;

/// A 1-based column index of H, i.e. a point of the projective space.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PointIndex(usize);

impl PointIndex {
    pub fn new(index: usize, n: usize) -> Result<Self> {
        if index == 0 || index > n {
            return Err(Error::PointOutOfRange { index, n });
        }
        Ok(PointIndex(index))
    }

    pub(crate) fn from_label(index: usize) -> Self {
        debug_assert!(index >= 1);
        PointIndex(index)
    }

    /// The 1-based label.
    pub fn get(self) -> usize {
        self.0
    }

    /// The 0-based position in a length-n vector.
    pub fn offset(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for PointIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The q + 1 points of a projective line, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    points: Vec<PointIndex>,
}

impl Line {
    pub fn points(&self) -> &[PointIndex] {
        &self.points
    }

    pub fn contains(&self, p: PointIndex) -> bool {
        self.points.binary_search(&p).is_ok()
    }
}

/// The q² + q + 1 points of a projective plane, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Plane {
    points: Vec<PointIndex>,
}

impl Plane {
    pub fn points(&self) -> &[PointIndex] {
        &self.points
    }

    pub fn contains(&self, p: PointIndex) -> bool {
        self.points.binary_search(&p).is_ok()
    }
}

/// Scale a nonzero vector so its first nonzero digit is 1. Returns the
/// normalized vector `w` and the scalar `c` with `v = c · w`.
pub fn normalize_point(v: &FqVector) -> Result<(FqVector, u8)> {
    let (w, c) = normalize_digits(v.field(), v.digits()).ok_or(Error::ZeroPoint)?;
    Ok((FqVector::from_raw(v.field(), w), c))
}

pub(crate) fn normalize_digits(field: &Field, v: &[u8]) -> Option<(Vec<u8>, u8)> {
    let lead = *v.iter().find(|&&d| d != 0)?;
    let inv = field.inv_nonzero(lead);
    Some((v.iter().map(|&d| field.mul(inv, d)).collect(), lead))
}

/// Points whose columns lie in the span of the columns of `generators`.
fn span_points(code: &HammingCode, generators: &[PointIndex]) -> Vec<PointIndex> {
    let f = code.field();
    let q = f.q();
    let mut coeffs = vec![0u8; generators.len()];
    let mut out = BTreeSet::new();
    loop {
        // odometer over all coefficient tuples; the zero tuple is skipped by locate
        let mut v = vec![0u8; code.m()];
        for (&c, &g) in coeffs.iter().zip(generators) {
            axpy(f, &mut v, c, code.column_digits(g));
        }
        if let Some((p, _)) = code.locate(&v) {
            out.insert(p);
        }
        if !crate::fqlin::increment_digits(q, &mut coeffs) {
            break;
        }
    }
    out.into_iter().collect()
}

pub fn line_through(x: PointIndex, y: PointIndex, code: &HammingCode) -> Result<Line> {
    if x == y {
        return Err(Error::RepeatedPoint);
    }
    let f = code.field();
    let mut points = vec![x, y];
    // every other point is h_x + b·h_y up to scaling
    for b in f.nonzero() {
        let mut v = code.column_digits(x).to_vec();
        axpy(f, &mut v, b, code.column_digits(y));
        let (p, _) = code.locate(&v).expect("distinct points are independent");
        points.push(p);
    }
    points.sort();
    points.dedup();
    debug_assert_eq!(points.len(), f.q() as usize + 1);
    Ok(Line { points })
}

/// The (n − 1)/q lines through `i`, ordered by their smallest point other than `i`.
pub fn pencil(i: PointIndex, code: &HammingCode) -> Vec<Line> {
    let mut covered = vec![false; code.n()];
    covered[i.offset()] = true;
    let mut lines = Vec::new();
    for j in code.points() {
        if covered[j.offset()] {
            continue;
        }
        let line = line_through(i, j, code).expect("j != i");
        for p in line.points() {
            covered[p.offset()] = true;
        }
        lines.push(line);
    }
    lines
}

pub fn collinear(x: PointIndex, y: PointIndex, z: PointIndex, code: &HammingCode) -> bool {
    let cols = [code.column(x), code.column(y), code.column(z)];
    FqMatrix::from_columns(code.field(), code.m(), &cols)
        .expect("columns have length m")
        .rank()
        <= 2
}

pub fn plane_points(x: PointIndex, y: PointIndex, z: PointIndex, code: &HammingCode) -> Result<Plane> {
    if x == y || y == z || x == z {
        return Err(Error::RepeatedPoint);
    }
    if collinear(x, y, z, code) {
        return Err(Error::CollinearPoints(x.get(), y.get(), z.get()));
    }
    Ok(Plane {
        points: span_points(code, &[x, y, z]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field;
    use crate::hamming::build;

    fn point_of(code: &HammingCode, s: &str) -> PointIndex {
        let v = FqVector::parse(code.field(), s).unwrap();
        code.point_of_column(v.digits()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let f3 = field(3).unwrap();
        let f2 = field(2).unwrap();
        let (w, c) = normalize_point(&FqVector::parse(&f3, "021").unwrap()).unwrap();
        assert_eq!((w.to_string(), c), ("012".to_string(), 2));
        let (w, c) = normalize_point(&FqVector::parse(&f2, "101").unwrap()).unwrap();
        assert_eq!((w.to_string(), c), ("101".to_string(), 1));
        let (w, c) = normalize_point(&FqVector::parse(&f3, "222").unwrap()).unwrap();
        assert_eq!((w.to_string(), c), ("111".to_string(), 2));
        assert_eq!(normalize_point(&FqVector::zeros(&f3, 3)).unwrap_err(), Error::ZeroPoint);
    }

    #[test]
    fn line_examples() {
        let code = build(2, 4).unwrap();
        let e1 = point_of(&code, "1000");
        let e2 = point_of(&code, "0100");
        let s = point_of(&code, "1100");
        let line = line_through(e1, e2, &code).unwrap();
        let mut expected = vec![e1, e2, s];
        expected.sort();
        assert_eq!(line.points(), expected.as_slice());
        assert_eq!(line_through(e1, e1, &code).unwrap_err(), Error::RepeatedPoint);

        // brute force: points whose column is a combination of h_e1, h_e2
        let brute: Vec<PointIndex> = code
            .points()
            .filter(|&p| {
                crate::fqlin::in_span(&code.column(p), &[code.column(e1), code.column(e2)])
                    .unwrap()
                    .is_some()
            })
            .collect();
        assert_eq!(brute, line.points());

        let t = build(3, 3).unwrap();
        for x in t.points() {
            for y in t.points().filter(|&y| y != x) {
                assert_eq!(line_through(x, y, &t).unwrap().points().len(), 4);
            }
        }
    }

    #[test]
    fn two_points_share_exactly_one_line() {
        for (q, m) in [(2, 3), (2, 4), (3, 3)] {
            let code = build(q, m).unwrap();
            for x in code.points() {
                for y in code.points().filter(|&y| y > x) {
                    let l = line_through(x, y, &code).unwrap();
                    assert!(l.contains(x) && l.contains(y));
                    for &z in l.points().iter().filter(|&&z| z != x && z != y) {
                        assert_eq!(line_through(x, z, &code).unwrap(), l);
                        assert_eq!(line_through(y, z, &code).unwrap(), l);
                        assert!(collinear(x, y, z, &code));
                    }
                }
            }
        }
    }

    #[test]
    fn pencil_partitions_other_points() {
        for (q, m, lines) in [(2, 4, 7), (3, 3, 4), (2, 3, 3), (4, 3, 5)] {
            let code = build(q, m).unwrap();
            for i in code.points() {
                let p = pencil(i, &code);
                assert_eq!(p.len(), lines);
                assert_eq!(p.len(), (code.n() - 1) / q as usize);
                let mut seen = vec![0usize; code.n()];
                for l in &p {
                    assert!(l.contains(i));
                    for pt in l.points() {
                        seen[pt.offset()] += 1;
                    }
                }
                for (k, &c) in seen.iter().enumerate() {
                    if k == i.offset() {
                        assert_eq!(c, lines);
                    } else {
                        assert_eq!(c, 1);
                    }
                }
            }
        }
    }

    #[test]
    fn plane_sizes_and_containment() {
        let code = build(2, 4).unwrap();
        let e1 = point_of(&code, "1000");
        let e2 = point_of(&code, "0100");
        let e3 = point_of(&code, "0010");
        let plane = plane_points(e1, e2, e3, &code).unwrap();
        assert_eq!(plane.points().len(), 7);
        for p in line_through(e1, e2, &code).unwrap().points() {
            assert!(plane.contains(*p));
        }
        let s = point_of(&code, "1100");
        assert_eq!(
            plane_points(e1, e2, s, &code).unwrap_err(),
            Error::CollinearPoints(e1.get(), e2.get(), s.get())
        );

        let t = build(3, 3).unwrap();
        let x = point_of(&t, "100");
        let y = point_of(&t, "010");
        let z = point_of(&t, "001");
        assert_eq!(plane_points(x, y, z, &t).unwrap().points().len(), 13);
        assert!(collinear(x, y, point_of(&t, "120"), &t));
        assert!(!collinear(x, y, z, &t));
    }
}
