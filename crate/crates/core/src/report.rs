//! Job reports and their two renderings.
//!
//! The structured rendering is a flat key/value document, one pair per line:
//! the key is a dotted path without spaces, the value is the rest of the
//! line. The first line is always `abstor-report 1`. See `docs/formats.md`.

use std::fmt::Write as _;

/// First line of every structured report.
pub const SCHEMA_LINE: &str = "abstor-report 1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Result for one input (a file, a t0 sweep, an invariant family).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Item {
    pub name: String,
    pub fields: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl Item {
    pub fn new(name: impl Into<String>) -> Self {
        Item { name: name.into(), ..Item::default() }
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub convention_tag: String,
    pub version: String,
    pub items: Vec<Item>,
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn key(s: &str) -> String {
    s.chars().map(|c| if c.is_whitespace() { '_' } else { c }).collect()
}

impl Report {
    pub fn new(command: &str, inputs: Vec<String>, convention_tag: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            convention_tag: convention_tag.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            items: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(Item::passed)
    }

    pub fn check_counts(&self) -> (usize, usize) {
        let total = self.items.iter().map(|i| i.checks.len()).sum();
        let failed = self.items.iter().map(|i| i.failed_checks().count()).sum();
        (total, failed)
    }

    /// Process exit status: 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Structured => self.to_structured(),
        }
    }

    pub fn to_structured(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{SCHEMA_LINE}");
        let _ = writeln!(out, "command {}", self.command);
        for (i, p) in self.inputs.iter().enumerate() {
            let _ = writeln!(out, "input.{i} {}", one_line(p));
        }
        let _ = writeln!(out, "convention {}", self.convention_tag);
        let _ = writeln!(out, "version {}", self.version);
        for (i, item) in self.items.iter().enumerate() {
            let _ = writeln!(out, "item.{i}.name {}", one_line(&item.name));
            for (k, v) in &item.fields {
                let _ = writeln!(out, "item.{i}.{} {}", key(k), one_line(v));
            }
            for c in &item.checks {
                let _ = writeln!(out, "item.{i}.check.{} {}", key(&c.name), if c.pass { "pass" } else { "fail" });
                if !c.detail.is_empty() {
                    let _ = writeln!(out, "item.{i}.check.{}.detail {}", key(&c.name), one_line(&c.detail));
                }
            }
            let _ = writeln!(out, "item.{i}.verdict {}", if item.passed() { "pass" } else { "fail" });
        }
        let (total, failed) = self.check_counts();
        let _ = writeln!(out, "summary.items {}", self.items.len());
        let _ = writeln!(out, "summary.checks {total}");
        let _ = writeln!(out, "summary.failed {failed}");
        let _ = writeln!(out, "verdict {}", if self.passed() { "pass" } else { "fail" });
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "abstor {} (convention {}, version {})", self.command, self.convention_tag, self.version);
        for item in &self.items {
            let _ = writeln!(out, "\n== {}", item.name);
            let width = item.fields.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            for (k, v) in &item.fields {
                let _ = writeln!(out, "  {k:<width$}  {v}");
            }
            for c in &item.checks {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    let _ = writeln!(out, "  [{tag}] {}", c.name);
                } else {
                    let _ = writeln!(out, "  [{tag}] {}: {}", c.name, c.detail);
                }
            }
        }
        let (total, failed) = self.check_counts();
        let _ = writeln!(
            out,
            "\n{} item(s), {total} check(s), {failed} failed: {}",
            self.items.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}

/// Reads a structured report back into `(key, value)` pairs.
pub fn parse_structured(text: &str) -> Option<Vec<(String, String)>> {
    let mut lines = text.lines();
    if lines.next()? != SCHEMA_LINE {
        return None;
    }
    lines
        .map(|l| {
            let (k, v) = l.split_once(' ').unwrap_or((l, ""));
            (!k.is_empty()).then(|| (k.to_string(), v.to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("torsion", vec!["a b.cplx".into()], "FT-cal-1");
        let mut it = Item::new("circle");
        it.field("torsion", "[i, -1]/[i, 1]");
        it.check("acyclic", true, "");
        it.check("sign flip", false, "at t0 = 0\nsecond line");
        r.items.push(it);
        r
    }

    #[test]
    fn structured_output_parses_back() {
        let r = sample();
        let s = r.to_structured();
        let kv = parse_structured(&s).unwrap();
        let get = |k: &str| kv.iter().find(|(a, _)| a == k).map(|(_, v)| v.as_str());
        assert_eq!(get("item.0.torsion"), Some("[i, -1]/[i, 1]"));
        assert_eq!(get("item.0.check.sign_flip"), Some("fail"));
        assert_eq!(get("item.0.check.sign_flip.detail"), Some("at t0 = 0 second line"));
        assert_eq!(get("verdict"), Some("fail"));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn text_output_marks_failures() {
        let t = sample().to_text();
        assert!(t.contains("[PASS] acyclic"));
        assert!(t.contains("[FAIL] sign flip"));
        assert!(t.trim_end().ends_with("FAIL"));
    }
}
