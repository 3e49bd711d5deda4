use std::fmt::Write as _;

use super::{default_names, format_word, parse_i64, parse_names, parse_usize, parse_word, Lexer, ParseError};
use crate::knot::{ConwayPolynomial, KnotPresentation, SeifertMatrix};

/// Contents of a `.knot` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotFile {
    pub generators: Vec<String>,
    pub knot: KnotPresentation,
    /// Recorded `∇`, checked by the self-test.
    pub expected_conway: Option<ConwayPolynomial>,
}

impl KnotFile {
    pub fn with_default_names(knot: KnotPresentation, expected_conway: Option<ConwayPolynomial>) -> Self {
        KnotFile { generators: default_names(knot.strands), knot, expected_conway }
    }
}

pub fn parse_knot(file: &str, text: &str) -> Result<KnotFile, ParseError> {
    let mut lx = Lexer::new(file, text);
    lx.header("knot")?;
    let mut name = None;
    let mut names: Option<(Vec<String>, super::Line)> = None;
    let mut meridian = None;
    let mut relators = Vec::new();
    let mut seifert = None;
    let mut conway = None;
    while let Some(line) = lx.next_line() {
        let kw = line.tokens[0].clone();
        let need_names = |names: &Option<(Vec<String>, super::Line)>| match names {
            Some((n, _)) => Ok(n.clone()),
            None => Err(lx.error(&line, &kw, "`generators` must come first")),
        };
        match kw.as_str() {
            "name" => name = Some(line.tokens[1..].join(" ")),
            "generators" => {
                if names.is_some() {
                    return Err(lx.error(&line, &kw, "duplicate `generators`"));
                }
                names = Some((parse_names(&lx, &line)?, line.clone()));
            }
            "meridian" => {
                let n = need_names(&names)?;
                let tok = line.tokens.get(1).ok_or_else(|| lx.error(&line, &kw, "missing generator"))?;
                let i = n.iter().position(|x| x == tok).ok_or_else(|| lx.error(&line, tok, "unknown generator"))?;
                meridian = Some(i);
            }
            "relator" => {
                let n = need_names(&names)?;
                if line.tokens.len() < 2 {
                    return Err(lx.error(&line, &kw, "empty relator"));
                }
                relators.push((parse_word(&lx, &line, &line.tokens[1..], &n)?, line.clone()));
            }
            "seifert" => {
                let tok = line.tokens.get(1).ok_or_else(|| lx.error(&line, &kw, "missing size"))?;
                let size = parse_usize(&lx, &line, tok)?;
                let mut rows = Vec::with_capacity(size);
                for r in 0..size {
                    let row = lx.expect_line(&format!("row {} of seifert", r + 1))?;
                    if row.tokens.len() != size {
                        return Err(lx.error(&row, &row.tokens[0], format!("seifert row has {} entries, expected {size}", row.tokens.len())));
                    }
                    rows.push(row.tokens.iter().map(|t| parse_i64(&lx, &row, t)).collect::<Result<Vec<_>, _>>()?);
                }
                seifert = Some(SeifertMatrix::new(rows).map_err(|e| lx.error(&line, &kw, e.to_string()))?);
            }
            "conway" => {
                let c = line.tokens[1..].iter().map(|t| parse_i64(&lx, &line, t)).collect::<Result<Vec<_>, _>>()?;
                conway = Some(ConwayPolynomial::from_ints(&c));
            }
            _ => return Err(lx.error(&line, &kw, "unknown keyword")),
        }
    }
    let (generators, gen_line) = names.ok_or_else(|| lx.eof("`generators` line"))?;
    let name = name.unwrap_or_else(|| file.to_string());
    let words: Vec<_> = relators.iter().map(|(w, _)| w.clone()).collect();
    let knot = KnotPresentation::new(name, generators.len(), words, meridian.unwrap_or(0), seifert).map_err(|e| {
        // Point at the offending relator when there is one.
        let at = match &e {
            crate::knot::KnotError::RelatorShape(i) => &relators[*i].1,
            _ => &gen_line,
        };
        lx.error(at, &at.tokens[0], e.to_string())
    })?;
    Ok(KnotFile { generators, knot, expected_conway: conway })
}

pub fn write_knot(f: &KnotFile) -> String {
    let k = &f.knot;
    let mut out = String::from("knot v1\n");
    let _ = writeln!(out, "name {}", k.name);
    let _ = writeln!(out, "generators {}", f.generators.join(" "));
    let _ = writeln!(out, "meridian {}", f.generators[k.meridian]);
    for r in &k.wirtinger_relators {
        let _ = writeln!(out, "relator {}", format_word(r, &f.generators));
    }
    if let Some(v) = &k.seifert {
        let _ = writeln!(out, "seifert {}", v.size());
        for i in 0..v.size() {
            let row: Vec<String> = v.entries().row(i).iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "  {}", row.join(" "));
        }
    }
    if let Some(c) = &f.expected_conway {
        let cs: Vec<String> = c.coeffs().iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "conway {}", cs.join(" "));
    }
    out
}
