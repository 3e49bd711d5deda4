use std::fmt::Write as _;

use super::{format_ratfunc, parse_ratfunc, parse_scalar, parse_usize, write_matrix, Lexer, Line, ParseError};
use crate::complex::{ChainComplex, DualityPairing};
use crate::linalg::Matrix;
use crate::{BasedChainComplex, FamilyMatrix, GaussRat, RatFunc};

/// Contents of a `.cplx` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexFile {
    pub name: Option<String>,
    pub complex: BasedChainComplex,
    pub pairing: Option<DualityPairing<RatFunc>>,
    /// Degeneration points to analyze; empty means "find them".
    pub points: Vec<GaussRat>,
    /// Recorded torsion, checked by the self-test.
    pub expected_torsion: Option<RatFunc>,
}

fn ranks_line(lx: &Lexer, line: &Line) -> Result<Vec<usize>, ParseError> {
    if line.tokens.len() < 2 {
        return Err(lx.error(line, "ranks", "`ranks` needs at least one entry"));
    }
    line.tokens[1..].iter().map(|t| parse_usize(lx, line, t)).collect()
}

/// Reads `pairing k` sections until the next other keyword.
fn pairing_sections(
    lx: &mut Lexer,
    ranks: &[usize],
    first: Option<Line>,
) -> Result<Option<(DualityPairing<RatFunc>, Line)>, ParseError> {
    let m = ranks.len() - 1;
    let mut maps: Vec<Option<FamilyMatrix>> = vec![None; m + 1];
    let mut first_line = None;
    let mut pending = first;
    loop {
        let line = match pending.take() {
            Some(l) => l,
            None => match lx.peek() {
                Some(l) if l.tokens[0] == "pairing" => lx.next_line().unwrap(),
                _ => break,
            },
        };
        let k_tok = line.tokens.get(1).ok_or_else(|| lx.error(&line, "pairing", "missing degree"))?;
        let k = parse_usize(lx, &line, k_tok)?;
        if k > m {
            return Err(lx.error(&line, k_tok, format!("pairing degree {k} exceeds top degree {m}")));
        }
        if maps[k].is_some() {
            return Err(lx.error(&line, k_tok, format!("duplicate pairing {k}")));
        }
        maps[k] = Some(lx.matrix(ranks[m - k], ranks[k], &format!("pairing {k}"))?);
        first_line.get_or_insert(line);
    }
    let Some(first_line) = first_line else { return Ok(None) };
    let mut out = Vec::with_capacity(m + 1);
    for (k, p) in maps.into_iter().enumerate() {
        match p {
            Some(p) => out.push(p),
            None => return Err(lx.error(&first_line, "pairing", format!("pairing {k} missing"))),
        }
    }
    Ok(Some((DualityPairing { maps: out }, first_line)))
}

pub fn parse_complex(file: &str, text: &str) -> Result<ComplexFile, ParseError> {
    let mut lx = Lexer::new(file, text);
    lx.header("complex")?;
    let mut name = None;
    let mut points = Vec::new();
    let mut ranks: Option<(Vec<usize>, Line)> = None;
    let mut boundaries: Vec<Option<FamilyMatrix>> = Vec::new();
    let mut pairing = None;
    let mut expected_torsion = None;
    while let Some(line) = lx.next_line() {
        let kw = line.tokens[0].as_str();
        match kw {
            "name" => name = Some(line.tokens[1..].join(" ")),
            "points" => {
                for t in &line.tokens[1..] {
                    points.push(parse_scalar(t).map_err(|m| lx.error(&line, t, m))?);
                }
            }
            "expect_torsion" => {
                let tok = line.tokens.get(1).ok_or_else(|| lx.error(&line, kw, "missing value"))?;
                expected_torsion = Some(parse_ratfunc(tok).map_err(|m| lx.error(&line, tok, m))?);
            }
            "ranks" => {
                if ranks.is_some() {
                    return Err(lx.error(&line, kw, "duplicate `ranks`"));
                }
                let r = ranks_line(&lx, &line)?;
                boundaries = vec![None; r.len() - 1];
                ranks = Some((r, line));
            }
            "boundary" | "pairing" => {
                let Some((r, _)) = &ranks else {
                    return Err(lx.error(&line, kw, "`ranks` must come first"));
                };
                let r = r.clone();
                if kw == "pairing" {
                    if pairing.is_some() {
                        return Err(lx.error(&line, kw, "pairing sections must be contiguous"));
                    }
                    pairing = pairing_sections(&mut lx, &r, Some(line))?.map(|(p, _)| p);
                    continue;
                }
                let k_tok = line.tokens.get(1).ok_or_else(|| lx.error(&line, kw, "missing degree"))?;
                let k = parse_usize(&lx, &line, k_tok)?;
                if k == 0 || k >= r.len() {
                    return Err(lx.error(&line, k_tok, format!("boundary degree must be in 1..={}", r.len() - 1)));
                }
                if boundaries[k - 1].is_some() {
                    return Err(lx.error(&line, k_tok, format!("duplicate boundary {k}")));
                }
                boundaries[k - 1] = Some(lx.matrix(r[k - 1], r[k], &format!("boundary {k}"))?);
            }
            _ => return Err(lx.error(&line, kw, "unknown keyword")),
        }
    }
    let (r, ranks_line) = ranks.ok_or_else(|| lx.eof("`ranks` line"))?;
    let bs = boundaries
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.unwrap_or_else(|| Matrix::zeros(r[i], r[i + 1])))
        .collect();
    let complex = ChainComplex::new(r, bs).map_err(|e| lx.error(&ranks_line, "ranks", e.to_string()))?;
    if let Some(p) = &pairing {
        p.validate(&complex).map_err(|e| lx.error(&ranks_line, "pairing", e.to_string()))?;
    }
    Ok(ComplexFile { name, complex, pairing, points, expected_torsion })
}

/// Standalone duality file for a given complex.
pub fn parse_duality(file: &str, text: &str, complex: &BasedChainComplex) -> Result<DualityPairing<RatFunc>, ParseError> {
    let mut lx = Lexer::new(file, text);
    lx.header("duality")?;
    let line = lx.expect_line("`ranks` line")?;
    if line.tokens[0] != "ranks" {
        return Err(lx.error(&line, &line.tokens[0], "expected `ranks`"));
    }
    let r = ranks_line(&lx, &line)?;
    if r != complex.ranks() {
        return Err(lx.error(&line, "ranks", format!("ranks {:?} do not match the complex {:?}", r, complex.ranks())));
    }
    let (p, first) = pairing_sections(&mut lx, &r, None)?.ok_or_else(|| lx.eof("`pairing` sections"))?;
    if let Some(extra) = lx.next_line() {
        return Err(lx.error(&extra, &extra.tokens[0], "unexpected content after pairing"));
    }
    p.validate(complex).map_err(|e| lx.error(&first, "pairing", e.to_string()))?;
    Ok(p)
}

fn write_ranks(out: &mut String, ranks: &[usize]) {
    let r: Vec<String> = ranks.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(out, "ranks {}", r.join(" "));
}

fn write_pairing(out: &mut String, p: &DualityPairing<RatFunc>) {
    for (k, m) in p.maps.iter().enumerate() {
        let _ = writeln!(out, "pairing {k}");
        write_matrix(out, m);
    }
}

pub fn write_complex(f: &ComplexFile) -> String {
    let mut out = String::from("complex v1\n");
    if let Some(n) = &f.name {
        let _ = writeln!(out, "name {n}");
    }
    write_ranks(&mut out, f.complex.ranks());
    if !f.points.is_empty() {
        let p: Vec<String> = f.points.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "points {}", p.join(" "));
    }
    if let Some(t) = &f.expected_torsion {
        let _ = writeln!(out, "expect_torsion {}", format_ratfunc(t));
    }
    for k in 1..=f.complex.top_degree() {
        let _ = writeln!(out, "boundary {k}");
        write_matrix(&mut out, f.complex.boundary(k));
    }
    if let Some(p) = &f.pairing {
        write_pairing(&mut out, p);
    }
    out
}

pub fn write_duality(complex: &BasedChainComplex, p: &DualityPairing<RatFunc>) -> String {
    let mut out = String::from("duality v1\n");
    write_ranks(&mut out, complex.ranks());
    write_pairing(&mut out, p);
    out
}
