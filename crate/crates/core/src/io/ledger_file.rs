use std::fmt::Write as _;

use super::{parse_i64, parse_scalar, parse_usize, Lexer, Line, ParseError};
use crate::eta::{ArgPairing, EtaError, EtaProfile, JumpRecord};
use crate::scalar::{fmt_rational, parse_rational};
use crate::Rat;

/// Contents of a `.eta` ledger: a ray profile, the signs to check against it,
/// and optionally the verdict the self-test should see.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerFile {
    pub name: Option<String>,
    pub profile: EtaProfile,
    /// Interval signs; when absent the derived signs are checked.
    pub signs: Option<Vec<i8>>,
    pub expect_pass: Option<bool>,
}

fn rat(lx: &Lexer, line: &Line, tok: &str) -> Result<Rat, ParseError> {
    parse_rational(tok).map_err(|m| lx.error(line, tok, format!("bad rational: {m}")))
}

fn bool_value(lx: &Lexer, line: &Line, tok: &str) -> Result<bool, ParseError> {
    match tok {
        "true" | "yes" => Ok(true),
        "false" | "no" => Ok(false),
        _ => Err(lx.error(line, tok, "expected true or false")),
    }
}

fn value<'a>(lx: &Lexer, line: &Line, tokens: &'a [String], at: usize) -> Result<&'a str, ParseError> {
    match tokens.get(at) {
        Some(t) => Ok(t.as_str()),
        None => Err(lx.error(line, &tokens[0], "missing value")),
    }
}

fn jump_line(lx: &Lexer, line: &Line) -> Result<JumpRecord, ParseError> {
    let t_tok = value(lx, line, &line.tokens, 1)?;
    let t0 = parse_scalar(t_tok).map_err(|m| lx.error(line, t_tok, m))?;
    let mut rec = JumpRecord::new(t0, 0, 0, 0);
    let (mut have_odd, mut have_nu) = (false, false);
    for tok in &line.tokens[2..] {
        let (k, v) = tok.split_once('=').ok_or_else(|| lx.error(line, tok, "expected key=value"))?;
        match k {
            "sigma_odd" => {
                rec.sigma_odd = parse_i64(lx, line, v)?;
                have_odd = true;
            }
            "sigma_even" => rec.sigma_even = parse_i64(lx, line, v)?,
            "nu" => {
                rec.nu = parse_i64(lx, line, v)?;
                have_nu = true;
            }
            "analyzed" => rec.analyzed = bool_value(lx, line, v)?,
            "eta_plus" => rec.eta_plus = Some(rat(lx, line, v)?),
            "eta_minus" => rec.eta_minus = Some(rat(lx, line, v)?),
            "eta_mid" => rec.eta_mid = Some(rat(lx, line, v)?),
            _ => return Err(lx.error(line, tok, format!("unknown jump field `{k}`"))),
        }
    }
    if !have_odd {
        return Err(lx.error(line, "jump", "jump needs sigma_odd="));
    }
    if !have_nu {
        rec.nu = rec.sigma_odd;
    }
    Ok(rec)
}

fn arg_line(lx: &Lexer, line: &Line) -> Result<(usize, ArgPairing), ParseError> {
    let i_tok = value(lx, line, &line.tokens, 1)?;
    let interval = parse_usize(lx, line, i_tok)?;
    if interval == 0 {
        return Err(lx.error(line, i_tok, "intervals are numbered from 1"));
    }
    let (mut coeffs, mut l) = (None, None);
    for tok in &line.tokens[2..] {
        let (k, v) = tok.split_once('=').ok_or_else(|| lx.error(line, tok, "expected key=value"))?;
        let items = v.split(',').filter(|s| !s.is_empty());
        match k {
            "coeffs" => coeffs = Some(items.map(|s| rat(lx, line, s)).collect::<Result<Vec<_>, _>>()?),
            "l" => l = Some(items.map(|s| parse_i64(lx, line, s)).collect::<Result<Vec<_>, _>>()?),
            _ => return Err(lx.error(line, tok, format!("unknown arg field `{k}`"))),
        }
    }
    let coeffs = coeffs.ok_or_else(|| lx.error(line, "arg", "arg needs coeffs="))?;
    let l = l.ok_or_else(|| lx.error(line, "arg", "arg needs l="))?;
    let p = ArgPairing::new(coeffs, l).map_err(|e| lx.error(line, "arg", e.to_string()))?;
    Ok((interval, p))
}

pub fn parse_ledger(file: &str, text: &str) -> Result<LedgerFile, ParseError> {
    let mut lx = Lexer::new(file, text);
    lx.header("ledger")?;
    let mut name = None;
    let mut class = None;
    let mut su = false;
    let mut base = Rat::from_integer(0.into());
    let mut signs = None;
    let mut expect_pass = None;
    let mut jumps: Vec<(JumpRecord, Line)> = Vec::new();
    let mut args: Vec<(usize, ArgPairing, Line)> = Vec::new();
    let mut first = None;
    while let Some(line) = lx.next_line() {
        first.get_or_insert_with(|| line.clone());
        let kw = line.tokens[0].as_str();
        match kw {
            "name" => name = Some(line.tokens[1..].join(" ")),
            "dimension_class" => {
                let v = value(&lx, &line, &line.tokens, 1)?;
                let c = parse_usize(&lx, &line, v)?;
                class = Some(u8::try_from(c).map_err(|_| lx.error(&line, v, "dimension class must be 1 or 3"))?);
            }
            "su" => su = bool_value(&lx, &line, value(&lx, &line, &line.tokens, 1)?)?,
            "base_eta" => base = rat(&lx, &line, value(&lx, &line, &line.tokens, 1)?)?,
            "signs" => {
                let mut s = Vec::new();
                for t in &line.tokens[1..] {
                    s.push(match t.as_str() {
                        "1" | "+1" | "+" => 1,
                        "-1" | "-" => -1,
                        _ => return Err(lx.error(&line, t, "sign must be +1 or -1")),
                    });
                }
                signs = Some(s);
            }
            "expect" => {
                let v = value(&lx, &line, &line.tokens, 1)?;
                expect_pass = Some(match v {
                    "pass" => true,
                    "fail" => false,
                    _ => return Err(lx.error(&line, v, "expected pass or fail")),
                });
            }
            "jump" => jumps.push((jump_line(&lx, &line)?, line.clone())),
            "arg" => {
                let (i, p) = arg_line(&lx, &line)?;
                args.push((i, p, line.clone()));
            }
            _ => return Err(lx.error(&line, kw, "unknown keyword")),
        }
    }
    let first = first.ok_or_else(|| lx.eof("ledger body"))?;
    let class = class.ok_or_else(|| lx.error(&first, &first.tokens[0], "missing dimension_class"))?;
    let intervals = jumps.len() + 1;
    let mut slope_data = Vec::new();
    if !args.is_empty() {
        slope_data = vec![None; intervals];
        for (i, p, line) in args {
            if i > intervals {
                return Err(lx.error(&line, &line.tokens[1], format!("ray has only {intervals} intervals")));
            }
            if slope_data[i - 1].is_some() {
                return Err(lx.error(&line, &line.tokens[1], format!("duplicate arg data for interval {i}")));
            }
            slope_data[i - 1] = Some(p);
        }
    }
    if let Some(s) = &signs {
        if s.len() != intervals {
            return Err(lx.error(&first, "signs", format!("{} signs for {intervals} intervals", s.len())));
        }
    }
    let lines: Vec<Line> = jumps.iter().map(|(_, l)| l.clone()).collect();
    let records = jumps.into_iter().map(|(j, _)| j).collect();
    let profile = EtaProfile::new(class, su, base, records, slope_data).map_err(|e| match e {
        EtaError::JumpOrder(i) => lx.error(&lines[i - 1], &lines[i - 1].tokens[1], e.to_string()),
        _ => lx.error(&first, &first.tokens[0], e.to_string()),
    })?;
    Ok(LedgerFile { name, profile, signs, expect_pass })
}

pub fn write_ledger(f: &LedgerFile) -> String {
    let p = &f.profile;
    let mut out = String::from("ledger v1\n");
    if let Some(n) = &f.name {
        let _ = writeln!(out, "name {n}");
    }
    let _ = writeln!(out, "dimension_class {}", p.dimension_class);
    let _ = writeln!(out, "su {}", p.su);
    let _ = writeln!(out, "base_eta {}", fmt_rational(&p.base_value));
    if let Some(s) = &f.signs {
        let s: Vec<String> = s.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "signs {}", s.join(" "));
    }
    if let Some(e) = f.expect_pass {
        let _ = writeln!(out, "expect {}", if e { "pass" } else { "fail" });
    }
    for j in &p.jumps {
        let _ = write!(
            out,
            "jump {} sigma_odd={} sigma_even={} nu={} analyzed={}",
            j.t0, j.sigma_odd, j.sigma_even, j.nu, j.analyzed
        );
        for (k, v) in [("eta_plus", &j.eta_plus), ("eta_minus", &j.eta_minus), ("eta_mid", &j.eta_mid)] {
            if let Some(v) = v {
                let _ = write!(out, " {k}={}", fmt_rational(v));
            }
        }
        out.push('\n');
    }
    for (i, a) in p.slope_data.iter().enumerate() {
        if let Some(a) = a {
            let c: Vec<String> = a.arg_coeffs().iter().map(fmt_rational).collect();
            let l: Vec<String> = a.l_coeffs().iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "arg {} coeffs={} l={}", i + 1, c.join(","), l.join(","));
        }
    }
    out
}
