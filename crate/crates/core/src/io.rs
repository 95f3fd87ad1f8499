//! Plain-text file formats. Every file is newline-terminated ASCII, lines
//! starting with `#` are comments, and field elements are single digits.
//!
//! * code file: header `q m n`, then one vector per line as n digits;
//! * lambda file: header `q len t flavor`, then t digit strings;
//! * family file: header `q m n t k`, then one `i mu u` line per entry.

use std::io::Write;

use crate::error::{Error, Result};
use crate::family::{Flavor, LambdaCode, SwitchFamily};
use crate::fqlin::FqVector;
use crate::gf::{field, Field};
use crate::hamming::HammingCode;

/// Contents of a code file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeFile {
    pub q: u8,
    pub m: usize,
    pub n: usize,
    pub vectors: Vec<FqVector>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_usize(line: usize, what: &str, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| parse_err(line, format!("{what} must be a non-negative integer, got {s:?}")))
}

fn parse_field(line: usize, s: &str) -> Result<Field> {
    let q = parse_usize(line, "q", s)?;
    field(q as u32).map_err(|e| parse_err(line, e.to_string()))
}

fn parse_vector(line: usize, f: &Field, len: usize, s: &str) -> Result<FqVector> {
    let v = FqVector::parse(f, s).map_err(|e| parse_err(line, e.to_string()))?;
    if v.len() != len {
        return Err(parse_err(line, format!("expected {len} digits, got {}", v.len())));
    }
    Ok(v)
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    fields: usize,
    shape: &str,
) -> Result<(usize, Vec<&'a str>)> {
    let (no, text) = lines
        .next()
        .ok_or_else(|| parse_err(1, format!("missing header `{shape}`")))?;
    let parts: Vec<&str> = text.split_whitespace().collect();
    if parts.len() != fields {
        return Err(parse_err(no, format!("header must be `{shape}`, got {text:?}")));
    }
    Ok((no, parts))
}

pub fn parse_code_file(text: &str) -> Result<CodeFile> {
    let mut lines = content_lines(text);
    let (no, h) = header(&mut lines, 3, "q m n")?;
    let f = parse_field(no, h[0])?;
    let m = parse_usize(no, "m", h[1])?;
    let n = parse_usize(no, "n", h[2])?;
    let vectors = lines
        .map(|(no, l)| parse_vector(no, &f, n, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(CodeFile {
        q: f.q(),
        m,
        n,
        vectors,
    })
}

/// Write a code file, streaming the vectors.
pub fn write_code_file<'a, W, I>(out: &mut W, q: u8, m: usize, n: usize, vectors: I) -> std::io::Result<()>
where
    W: Write,
    I: IntoIterator<Item = &'a [u8]>,
{
    writeln!(out, "{q} {m} {n}")?;
    let mut line = Vec::with_capacity(n + 1);
    for v in vectors {
        line.clear();
        line.extend(v.iter().map(|d| b'0' + d));
        line.push(b'\n');
        out.write_all(&line)?;
    }
    Ok(())
}

pub fn render_code_file(q: u8, m: usize, n: usize, vectors: &[FqVector]) -> String {
    let mut out = Vec::new();
    write_code_file(&mut out, q, m, n, vectors.iter().map(|v| v.digits())).expect("writing to memory");
    String::from_utf8(out).expect("ASCII digits")
}

/// The m rows of the parity-check matrix as a code file.
pub fn render_parity_check(code: &HammingCode) -> String {
    let h = code.parity_check();
    let rows: Vec<FqVector> = (0..h.rows()).map(|r| h.row(r)).collect();
    render_code_file(code.q(), code.m(), code.n(), &rows)
}

/// Read a code file and check it against an existing Hamming code's parameters.
pub fn expect_code_shape(file: &CodeFile, code: &HammingCode) -> Result<()> {
    if file.q != code.q() || file.m != code.m() || file.n != code.n() {
        return Err(parse_err(
            1,
            format!(
                "header `{} {} {}` does not match `{} {} {}`",
                file.q,
                file.m,
                file.n,
                code.q(),
                code.m(),
                code.n()
            ),
        ));
    }
    Ok(())
}

pub fn parse_lambda_file(text: &str) -> Result<LambdaCode> {
    let mut lines = content_lines(text);
    let (no, h) = header(&mut lines, 4, "q len t flavor")?;
    let f = parse_field(no, h[0])?;
    let len = parse_usize(no, "len", h[1])?;
    let t = parse_usize(no, "t", h[2])?;
    let flavor = Flavor::parse(h[3]).map_err(|e| parse_err(no, e.to_string()))?;
    let vectors = lines
        .map(|(no, l)| parse_vector(no, &f, len, l))
        .collect::<Result<Vec<_>>>()?;
    if vectors.len() != t {
        return Err(parse_err(
            no,
            format!("header announces {t} words, found {}", vectors.len()),
        ));
    }
    LambdaCode::new(&f, len, vectors, flavor)
}

pub fn render_lambda_file(lam: &LambdaCode) -> String {
    let mut out = format!("{} {} {} {}\n", lam.field().q(), lam.length(), lam.t(), lam.flavor());
    for v in lam.vectors() {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}

/// Parse a family file and rebuild the Hamming code it refers to. The
/// representative may be one digit string or n space-separated digits.
pub fn parse_family_file(text: &str) -> Result<SwitchFamily> {
    let mut lines = content_lines(text);
    let (no, h) = header(&mut lines, 5, "q m n t k")?;
    let f = parse_field(no, h[0])?;
    let m = parse_usize(no, "m", h[1])?;
    let n = parse_usize(no, "n", h[2])?;
    let t = parse_usize(no, "t", h[3])?;
    let k = parse_usize(no, "k", h[4])?;
    let code = HammingCode::build(f.q() as u32, m).map_err(|e| parse_err(no, e.to_string()))?;
    if code.n() != n {
        return Err(parse_err(
            no,
            format!("n = {n} does not match q = {}, m = {m} (n = {})", f.q(), code.n()),
        ));
    }
    let mut records = Vec::with_capacity(t);
    for (no, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() < 3 {
            return Err(parse_err(no, "entry must be `i mu u`"));
        }
        let i = parse_usize(no, "i", parts[0])?;
        let anchor = code.point(i).map_err(|e| parse_err(no, e.to_string()))?;
        let mu = parse_usize(no, "mu", parts[1])?;
        let mu = u8::try_from(mu)
            .ok()
            .filter(|&d| d != 0 && d < f.q())
            .ok_or_else(|| parse_err(no, format!("mu must be a nonzero element of GF({}), got {mu}", f.q())))?;
        let rep = parse_vector(no, &f, n, &parts[2..].concat())?;
        records.push((anchor, mu, rep));
    }
    if records.len() != t {
        return Err(parse_err(
            no,
            format!("header announces {t} entries, found {}", records.len()),
        ));
    }
    SwitchFamily::from_entries(&code, k, records)
}

pub fn render_family_file(fam: &SwitchFamily) -> String {
    let code = fam.code();
    let mut out = format!("{} {} {} {} {}\n", code.q(), code.m(), code.n(), fam.t(), fam.k());
    for e in fam.entries() {
        out.push_str(&format!("{} {} {}\n", e.anchor, e.mu, e.rep()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_family, default_choice};

    #[test]
    fn code_file_round_trip() {
        let code = HammingCode::build(2, 3).unwrap();
        let text = render_parity_check(&code);
        assert_eq!(text, "2 3 7\n0001111\n0110011\n1010101\n");
        let parsed = parse_code_file(&text).unwrap();
        assert_eq!((parsed.q, parsed.m, parsed.n), (2, 3, 7));
        assert_eq!(render_code_file(2, 3, 7, &parsed.vectors), text);
        expect_code_shape(&parsed, &code).unwrap();
        assert!(expect_code_shape(&parsed, &HammingCode::build(2, 4).unwrap()).is_err());
    }

    #[test]
    fn code_file_comments_and_errors() {
        let parsed = parse_code_file("# hello\n3 3 13\n\n# x\n0000000000000\n").unwrap();
        assert_eq!(parsed.vectors.len(), 1);
        assert!(matches!(
            parse_code_file("3 3 13\n000\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_code_file("3 3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_code_file("6 3 13\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_code_file("2 3 3\n003\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_code_file(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn lambda_file_round_trip() {
        let text = "3 3 2 ternary\n111\n222\n";
        let lam = parse_lambda_file(text).unwrap();
        assert_eq!(lam.t(), 2);
        assert_eq!(lam.flavor(), Flavor::Ternary);
        assert_eq!(render_lambda_file(&lam), text);

        let ext = parse_lambda_file("2 6 1 binary-extended:1\n111111\n").unwrap();
        assert_eq!(ext.flavor(), Flavor::BinaryExtended { k: 1 });
        assert_eq!(parse_lambda_file("3 3 0 ternary\n").unwrap().t(), 0);
        assert!(parse_lambda_file("3 3 2 ternary\n111\n").is_err());
        assert!(parse_lambda_file("3 3 1 weird\n111\n").is_err());
    }

    #[test]
    fn family_file_round_trip() {
        let code = HammingCode::build(3, 3).unwrap();
        let lam = parse_lambda_file("3 3 2 ternary\n111\n222\n").unwrap();
        let fam = build_family(&code, &default_choice(&code, 0).unwrap(), &lam, false).unwrap();
        let text = render_family_file(&fam);
        assert!(text.starts_with("3 3 13 2 0\n"));
        let back = parse_family_file(&text).unwrap();
        assert_eq!(render_family_file(&back), text);

        // space-separated digits are accepted
        let spaced: String = text
            .lines()
            .enumerate()
            .map(|(k, l)| {
                if k == 0 {
                    format!("{l}\n")
                } else {
                    let mut it = l.split(' ');
                    let (i, mu, u) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
                    let digits: Vec<String> = u.chars().map(String::from).collect();
                    format!("{i} {mu} {}\n", digits.join(" "))
                }
            })
            .collect();
        assert_eq!(render_family_file(&parse_family_file(&spaced).unwrap()), text);
    }

    #[test]
    fn family_file_errors() {
        assert!(parse_family_file("3 3 12 0 0\n").is_err());
        assert!(parse_family_file("3 3 13 1 0\n").is_err());
        assert!(matches!(
            parse_family_file("3 3 13 1 0\n14 1 0000000000000\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_family_file("3 3 13 1 0\n1 0 0000000000000\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        // representative outside the Hamming code
        assert_eq!(
            parse_family_file("3 3 13 1 0\n1 1 1000000000000\n").unwrap_err(),
            Error::NotACodeword
        );
        assert_eq!(parse_family_file("3 3 13 0 0\n").unwrap().t(), 0);
    }
}
