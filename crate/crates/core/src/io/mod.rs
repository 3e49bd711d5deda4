//! Text formats: a line lexer shared by every file type, scalar and
//! rational-function literals, and per-file parsers and serializers.
//!
//! All formats are line oriented. `#` starts a comment, blank lines are
//! ignored, and tokens are separated by whitespace except inside `[...]`.
//! The grammars are written out in `docs/formats.md`.

mod complex_file;
mod knot_file;
mod ledger_file;
mod presentation_file;

pub use complex_file::{parse_complex, parse_duality, write_complex, write_duality, ComplexFile};
pub use knot_file::{parse_knot, write_knot, KnotFile};
pub use ledger_file::{parse_ledger, write_ledger, LedgerFile};
pub use presentation_file::{parse_presentation, write_presentation, PresentationFile};

use std::fmt::Write as _;

use crate::group_ring::Word;
use crate::linalg::Matrix;
use crate::scalar::{GaussRat, Poly};
use crate::{FamilyMatrix, RatFunc};

/// Parse failure located by file, line and offending token.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{file}:{line}: {message} (at `{token}`)")]
pub struct ParseError {
    pub file: String,
    pub line: usize,
    pub token: String,
    pub message: String,
}

/// One significant input line split into tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub number: usize,
    pub tokens: Vec<String>,
}

/// Cursor over the significant lines of a document.
pub struct Lexer {
    file: String,
    lines: Vec<Line>,
    pos: usize,
    last_line: usize,
}

/// Splits on whitespace outside of brackets.
pub fn tokenize(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth <= 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

impl Lexer {
    pub fn new(file: &str, text: &str) -> Self {
        let mut lines = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            last_line = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let tokens = tokenize(body);
            if !tokens.is_empty() {
                lines.push(Line { number: i + 1, tokens });
            }
        }
        Lexer { file: file.to_string(), lines, pos: 0, last_line }
    }

    pub fn file(&self) -> &str {
        &self.file
    }

    pub fn peek(&self) -> Option<&Line> {
        self.lines.get(self.pos)
    }

    pub fn next_line(&mut self) -> Option<Line> {
        let l = self.lines.get(self.pos).cloned();
        if l.is_some() {
            self.pos += 1;
        }
        l
    }

    /// Next line, or an end-of-input error mentioning `what`.
    pub fn expect_line(&mut self, what: &str) -> Result<Line, ParseError> {
        self.next_line().ok_or_else(|| self.eof(what))
    }

    pub fn error(&self, line: &Line, token: &str, message: impl Into<String>) -> ParseError {
        ParseError { file: self.file.clone(), line: line.number, token: token.to_string(), message: message.into() }
    }

    pub fn eof(&self, what: &str) -> ParseError {
        ParseError {
            file: self.file.clone(),
            line: self.last_line + 1,
            token: "<end of input>".into(),
            message: format!("expected {what}"),
        }
    }

    /// Checks the `kind v1` header line.
    pub fn header(&mut self, kind: &str) -> Result<(), ParseError> {
        let line = self.expect_line(&format!("`{kind} v1` header"))?;
        if line.tokens[0] != kind {
            return Err(self.error(&line, &line.tokens[0], format!("expected `{kind} v1` header")));
        }
        match line.tokens.get(1).map(String::as_str) {
            Some("v1") if line.tokens.len() == 2 => Ok(()),
            Some(tok) => Err(self.error(&line, tok, "unsupported format version (expected v1)")),
            None => Err(self.error(&line, kind, "missing format version")),
        }
    }

    /// `count` lines of `cols` rational functions each. Nothing is read when
    /// the matrix is empty.
    pub fn matrix(&mut self, rows: usize, cols: usize, what: &str) -> Result<FamilyMatrix, ParseError> {
        if rows == 0 || cols == 0 {
            return Ok(Matrix::zeros(rows, cols));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = self.expect_line(&format!("row {} of {what}", r + 1))?;
            if line.tokens.len() != cols {
                let tok = line.tokens.get(cols).unwrap_or(&line.tokens[line.tokens.len() - 1]).clone();
                return Err(self.error(
                    &line,
                    &tok,
                    format!("row {} of {what} has {} entries, expected {cols}", r + 1, line.tokens.len()),
                ));
            }
            for tok in &line.tokens {
                data.push(parse_ratfunc(tok).map_err(|m| self.error(&line, tok, m))?);
            }
        }
        Ok(Matrix::from_vec(rows, cols, data))
    }
}

pub fn parse_usize(lx: &Lexer, line: &Line, tok: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| lx.error(line, tok, "expected a non-negative integer"))
}

pub fn parse_i64(lx: &Lexer, line: &Line, tok: &str) -> Result<i64, ParseError> {
    tok.parse().map_err(|_| lx.error(line, tok, "expected an integer"))
}

pub fn parse_scalar(tok: &str) -> Result<GaussRat, String> {
    tok.parse::<GaussRat>().map_err(|e| e.to_string())
}

/// `[c0, c1, ...]`, coefficients in ascending degree.
pub fn parse_poly(tok: &str) -> Result<Poly<GaussRat>, String> {
    let inner = tok
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| format!("polynomial `{tok}` must be written [c0, c1, ...]"))?;
    if inner.trim().is_empty() {
        return Ok(Poly::new(Vec::new()));
    }
    let coeffs = inner.split(',').map(|c| parse_scalar(c.trim())).collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::new(coeffs))
}

/// A scalar, a polynomial `[...]`, or a quotient `[...]/[...]`.
pub fn parse_ratfunc(tok: &str) -> Result<RatFunc, String> {
    if !tok.starts_with('[') {
        return parse_scalar(tok).map(RatFunc::constant);
    }
    let close = tok.find(']').ok_or_else(|| format!("unbalanced bracket in `{tok}`"))?;
    let num = parse_poly(&tok[..=close])?;
    let rest = &tok[close + 1..];
    let den = if rest.is_empty() {
        Poly::constant(GaussRat::from(1))
    } else {
        let d = rest.strip_prefix('/').ok_or_else(|| format!("unexpected `{rest}` after numerator"))?;
        parse_poly(d)?
    };
    RatFunc::new(num, den).ok_or_else(|| "zero denominator".to_string())
}

pub fn format_poly(p: &Poly<GaussRat>) -> String {
    let parts: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Canonical text: constants as scalar literals, otherwise `[...]` or `[...]/[...]`.
pub fn format_ratfunc(f: &RatFunc) -> String {
    if f.is_polynomial() && f.numer().degree().unwrap_or(0) == 0 {
        return f.numer().coeff(0).to_string();
    }
    if f.is_polynomial() {
        format_poly(f.numer())
    } else {
        format!("{}/{}", format_poly(f.numer()), format_poly(f.denom()))
    }
}

/// Generator names: identifiers, pairwise distinct.
pub(crate) fn parse_names(lx: &Lexer, line: &Line) -> Result<Vec<String>, ParseError> {
    let mut names: Vec<String> = Vec::new();
    for tok in &line.tokens[1..] {
        let ok = tok.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(lx.error(line, tok, "generator names must be identifiers"));
        }
        if names.contains(tok) {
            return Err(lx.error(line, tok, "duplicate generator name"));
        }
        names.push(tok.clone());
    }
    if names.is_empty() {
        return Err(lx.error(line, &line.tokens[0], "no generators listed"));
    }
    Ok(names)
}

/// Word in letter-exponent syntax: `x y x^-1 y^-1`, `a^3 b`. The literal `1`
/// alone is the empty word.
pub(crate) fn parse_word(lx: &Lexer, line: &Line, tokens: &[String], names: &[String]) -> Result<Word, ParseError> {
    if tokens.len() == 1 && tokens[0] == "1" {
        return Ok(Word::identity());
    }
    let mut powers = Vec::with_capacity(tokens.len());
    for tok in tokens {
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => {
                let e: i32 = e.parse().map_err(|_| lx.error(line, tok, "bad exponent"))?;
                (n, e)
            }
            None => (tok.as_str(), 1),
        };
        let gen = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| lx.error(line, tok, format!("unknown generator `{name}`")))?;
        powers.push((gen, exp));
    }
    Ok(Word::from_powers(&powers))
}

pub(crate) fn format_word(w: &Word, names: &[String]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = w
        .letters()
        .iter()
        .map(|l| if l.exp == 1 { names[l.gen].clone() } else { format!("{}^{}", names[l.gen], l.exp) })
        .collect();
    parts.join(" ")
}

/// `a, b, c, ...` for small counts, `x0, x1, ...` otherwise.
pub fn default_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("x{i}")).collect()
    }
}

pub(crate) fn write_matrix(out: &mut String, m: &FamilyMatrix) {
    if m.nrows() == 0 || m.ncols() == 0 {
        return;
    }
    for i in 0..m.nrows() {
        let row: Vec<String> = m.row(i).iter().map(format_ratfunc).collect();
        let _ = writeln!(out, "  {}", row.join(" "));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cayley;

    #[test]
    fn tokenizer_respects_brackets() {
        assert_eq!(tokenize("a [1, 2]/[3, 4] b"), vec!["a", "[1, 2]/[3, 4]", "b"]);
        assert_eq!(tokenize("  "), Vec::<String>::new());
    }

    #[test]
    fn ratfunc_literals_round_trip() {
        for f in [cayley(), RatFunc::t(), RatFunc::constant(GaussRat::ratio(-3, 4)), RatFunc::constant(GaussRat::i())] {
            let s = format_ratfunc(&f);
            assert_eq!(parse_ratfunc(&s).unwrap(), f, "{s}");
        }
        assert_eq!(format_ratfunc(&cayley()), "[i, -1]/[i, 1]");
        assert_eq!(parse_ratfunc("[1, i]/[1, -i]").unwrap(), cayley());
        assert!(parse_ratfunc("[1]/[0]").is_err());
        assert!(parse_ratfunc("[1, x]").is_err());
    }

    #[test]
    fn lexer_reports_location() {
        let mut lx = Lexer::new("m.txt", "# c\n\nhead v2\n");
        let e = lx.header("head").unwrap_err();
        assert_eq!((e.line, e.token.as_str()), (3, "v2"));
        assert_eq!(e.to_string(), "m.txt:3: unsupported format version (expected v1) (at `v2`)");
    }
}
