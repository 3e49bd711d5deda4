use std::fmt::Write as _;

use super::{format_word, parse_names, parse_scalar, parse_usize, parse_word, write_matrix, Lexer, Line, ParseError};
use crate::group_ring::{presentation_complex, GroupRingError, RepFamily, Word};
use crate::{BasedChainComplex, FamilyMatrix, GaussRat, RatFunc};

/// Contents of a `.pres` file: a finite presentation with a matrix family
/// on its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub name: Option<String>,
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub rho: RepFamily<RatFunc>,
    pub points: Vec<GaussRat>,
}

impl PresentationFile {
    /// Twisted cellular complex of the presentation 2-complex.
    pub fn complex(&self) -> Result<BasedChainComplex, GroupRingError> {
        presentation_complex(self.generators.len(), &self.relators, &self.rho)
    }
}

pub fn parse_presentation(file: &str, text: &str) -> Result<PresentationFile, ParseError> {
    let mut lx = Lexer::new(file, text);
    lx.header("presentation")?;
    let mut name = None;
    let mut names: Option<(Vec<String>, Line)> = None;
    let mut relators: Vec<(Word, Line)> = Vec::new();
    let mut rank: Option<usize> = None;
    let mut images: Vec<Option<(FamilyMatrix, Line)>> = Vec::new();
    let (mut unitary, mut special) = (false, false);
    let mut points = Vec::new();
    while let Some(line) = lx.next_line() {
        let kw = line.tokens[0].clone();
        match kw.as_str() {
            "name" => name = Some(line.tokens[1..].join(" ")),
            "generators" => {
                if names.is_some() {
                    return Err(lx.error(&line, &kw, "duplicate `generators`"));
                }
                let n = parse_names(&lx, &line)?;
                images = vec![None; n.len()];
                names = Some((n, line));
            }
            "relator" => {
                let Some((n, _)) = &names else {
                    return Err(lx.error(&line, &kw, "`generators` must come first"));
                };
                if line.tokens.len() < 2 {
                    return Err(lx.error(&line, &kw, "empty relator"));
                }
                let w = parse_word(&lx, &line, &line.tokens[1..], n)?;
                relators.push((w, line));
            }
            "rank" => {
                let tok = line.tokens.get(1).ok_or_else(|| lx.error(&line, &kw, "missing rank"))?;
                let r = parse_usize(&lx, &line, tok)?;
                if r == 0 {
                    return Err(lx.error(&line, tok, "rank must be positive"));
                }
                rank = Some(r);
            }
            "image" => {
                let (Some((n, _)), Some(r)) = (&names, rank) else {
                    return Err(lx.error(&line, &kw, "`generators` and `rank` must come first"));
                };
                let tok = line.tokens.get(1).ok_or_else(|| lx.error(&line, &kw, "missing generator"))?;
                let g = n.iter().position(|x| x == tok).ok_or_else(|| lx.error(&line, tok, "unknown generator"))?;
                if images[g].is_some() {
                    return Err(lx.error(&line, tok, "duplicate image"));
                }
                let m = lx.matrix(r, r, &format!("image {tok}"))?;
                images[g] = Some((m, line));
            }
            "unitary" => unitary = true,
            "special" => special = true,
            "points" => {
                for t in &line.tokens[1..] {
                    points.push(parse_scalar(t).map_err(|m| lx.error(&line, t, m))?);
                }
            }
            _ => return Err(lx.error(&line, &kw, "unknown keyword")),
        }
    }
    let (generators, gen_line) = names.ok_or_else(|| lx.eof("`generators` line"))?;
    let rank = rank.ok_or_else(|| lx.eof("`rank` line"))?;
    let mut mats = Vec::with_capacity(generators.len());
    let mut image_lines = Vec::with_capacity(generators.len());
    for (g, im) in images.into_iter().enumerate() {
        let (m, l) = im.ok_or_else(|| lx.error(&gen_line, &generators[g], "generator has no image"))?;
        mats.push(m);
        image_lines.push(l);
    }
    let locate = |e: GroupRingError| -> ParseError {
        let at = match &e {
            GroupRingError::SingularImage(g) | GroupRingError::NotUnitary(g) | GroupRingError::NotSpecialUnitary(g) => {
                &image_lines[*g]
            }
            GroupRingError::RelatorNotSatisfied(i) => &relators[*i].1,
            _ => &gen_line,
        };
        lx.error(at, &at.tokens[at.tokens.len().min(2) - 1], e.to_string())
    };
    let mut rho = RepFamily::new(rank, mats).map_err(locate)?;
    if unitary {
        rho = rho.with_unitary().map_err(locate)?;
    }
    if special {
        rho = rho.with_special().map_err(locate)?;
    }
    let f = PresentationFile {
        name,
        generators,
        relators: relators.iter().map(|(w, _)| w.clone()).collect(),
        rho,
        points,
    };
    f.complex().map_err(locate)?;
    Ok(f)
}

pub fn write_presentation(f: &PresentationFile) -> String {
    let mut out = String::from("presentation v1\n");
    if let Some(n) = &f.name {
        let _ = writeln!(out, "name {n}");
    }
    let _ = writeln!(out, "generators {}", f.generators.join(" "));
    for r in &f.relators {
        let _ = writeln!(out, "relator {}", format_word(r, &f.generators));
    }
    let _ = writeln!(out, "rank {}", f.rho.rank());
    for (g, m) in f.rho.images().iter().enumerate() {
        let _ = writeln!(out, "image {}", f.generators[g]);
        write_matrix(&mut out, m);
    }
    if f.rho.is_unitary() {
        out.push_str("unitary\n");
    }
    if f.rho.is_special() {
        out.push_str("special\n");
    }
    if !f.points.is_empty() {
        let p: Vec<String> = f.points.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "points {}", p.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TORUS: &str = "presentation v1\nname 2-torus\ngenerators x y\nrelator x y x^-1 y^-1\nrank 1\n\
        image x\n  [1, i]/[1, -i]\nimage y\n  i\nunitary\npoints 0\n";

    #[test]
    fn torus_parses_and_round_trips() {
        let f = parse_presentation("t.pres", TORUS).unwrap();
        assert_eq!(f.complex().unwrap().ranks(), &[1, 2, 1]);
        assert!(f.rho.is_unitary());
        let text = write_presentation(&f);
        assert_eq!(parse_presentation("t.pres", &text).unwrap(), f, "{text}");
    }

    #[test]
    fn broken_relator_is_located() {
        let e = parse_presentation("t.pres", &TORUS.replace("x y x^-1 y^-1", "x y x^-1 y")).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("relator 0"));
        let e = parse_presentation("t.pres", &TORUS.replace("  i\n", "  2\n")).unwrap_err();
        assert_eq!((e.line, e.token.as_str()), (8, "y"));
    }
}
