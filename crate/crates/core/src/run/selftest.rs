use std::path::PathBuf;

use num_traits::Zero;

use super::bundle::bundled_files;
use super::items::{analyze_item, analyze_point, conway_item, eta_item, Family};
use super::{parse_input, Input, RunError};
use crate::complex::CONVENTION_TAG;
use crate::corpus::{generate, CorpusEntry};
use crate::eta::{orientation_reversal_sign, ray_invariant_check, semi_characteristic, EtaProfile};
use crate::knot::{alexander_from_fox, bundled_knots, conway_from_seifert, conway_normalize};
use crate::report::{Item, Report};
use crate::scalar::Conjugate;
use crate::Rat;

/// Families drawn from the generated corpus by the self-test.
const GENERATED_FAMILIES: usize = 16;

#[derive(Clone, Debug, Default)]
pub struct SelftestOptions {
    pub seed: u64,
    /// Directory of example files to use instead of the bundled ones.
    pub corpus: Option<PathBuf>,
}

const EXTENSIONS: [&str; 4] = ["cplx", "pres", "knot", "eta"];

fn example_files(opts: &SelftestOptions) -> Result<Vec<(String, Result<String, String>)>, RunError> {
    let Some(dir) = &opts.corpus else {
        return Ok(bundled_files().iter().map(|f| (f.name.to_string(), Ok(f.text.to_string()))).collect());
    };
    let io_err = |e: std::io::Error| RunError::Io { path: dir.display().to_string(), message: e.to_string() };
    let mut paths = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io_err)? {
        let p = entry.map_err(io_err)?.path();
        if p.extension().and_then(|e| e.to_str()).is_some_and(|e| EXTENSIONS.contains(&e)) {
            paths.push(p);
        }
    }
    paths.sort();
    Ok(paths
        .into_iter()
        .map(|p| {
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            (name, std::fs::read_to_string(&p).map_err(|e| e.to_string()))
        })
        .collect())
}

fn file_item(name: &str, text: Result<String, String>) -> Item {
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            let mut it = Item::new(name);
            it.check("read", false, e);
            return it;
        }
    };
    match parse_input(name, &text) {
        Err(e) => {
            let mut it = Item::new(name);
            it.check("parse", false, e.to_string());
            it
        }
        Ok(Input::Complex(f)) => {
            let fam = Family::from_complex_file(&f);
            analyze_item(name, &fam, &fam.default_points())
        }
        Ok(Input::Presentation(f)) => {
            let fam = Family::from_presentation(&f);
            analyze_item(name, &fam, &fam.default_points())
        }
        Ok(Input::Knot(k)) => conway_item(name, &k),
        Ok(Input::Ledger(l)) => eta_item(name, &l, None, true),
    }
}

fn summarize(item: &mut Item, name: &str, failures: Vec<String>) {
    let detail = failures.iter().take(3).cloned().collect::<Vec<_>>().join("; ");
    item.check(name, failures.is_empty(), detail);
}

/// ν = χ, parity, duality and the sign-flip law at every corpus point, plus
/// ray invariance of ledgers synthesized from the same analyses.
fn corpus_items(seed: u64, entries: &[CorpusEntry]) -> Vec<Item> {
    let mut inv = Item::new(format!("generated corpus (seed {seed})"));
    let mut ray = Item::new(format!("synthesized ledgers (seed {seed})"));
    let mut galois = Item::new(format!("galois equivariance (seed {seed})"));
    let (mut calib, mut parity, mut duality, mut flips, mut gal) = (vec![], vec![], vec![], vec![], vec![]);
    let (mut ray_fail, mut mut_pass) = (vec![], vec![]);
    let (mut points, mut ledgers, mut mutations) = (0usize, 0usize, 0usize);
    for e in entries {
        let tau = match e.complex.torsion() {
            Ok(t) => t.value,
            Err(err) => {
                calib.push(format!("{}: {err}", e.name));
                continue;
            }
        };
        match e.complex.conjugate_complex().torsion() {
            Ok(t) if t.value == tau.conj() => {}
            _ => gal.push(e.name.clone()),
        }
        let mut reports = Vec::new();
        for t0 in &e.points {
            points += 1;
            match analyze_point(&e.complex, &tau, Some(&e.pairing), t0) {
                Ok(r) => {
                    if r.report.parity_matches() == Some(false) {
                        parity.push(format!("{} at {t0}", e.name));
                    }
                    if r.report.duality_ok != Some(true) {
                        duality.push(format!("{} at {t0}", e.name));
                    }
                    if let Err(m) = r.sign_flip {
                        flips.push(format!("{} at {t0}: {m}", e.name));
                    }
                    reports.push(r.report);
                }
                Err(err) => calib.push(format!("{} at {t0}: {err}", e.name)),
            }
        }
        let real: Vec<_> = reports.into_iter().filter(|r| r.t0.is_real()).take(3).collect();
        for (class, su) in [(3u8, false), (1, true)] {
            let profile = match EtaProfile::synthesize(class, su, Rat::zero(), &real) {
                Ok(p) => p,
                Err(err) => {
                    ray_fail.push(format!("{}: {err}", e.name));
                    continue;
                }
            };
            ledgers += 1;
            let signs = profile.derived_signs();
            if !ray_invariant_check(&profile, &signs).map(|v| v.pass()).unwrap_or(false) {
                ray_fail.push(e.name.clone());
            }
            for k in 0..signs.len() {
                let mut s = signs.clone();
                s[k] = -s[k];
                mutations += 1;
                if ray_invariant_check(&profile, &s).map(|v| v.pass()).unwrap_or(false) {
                    mut_pass.push(format!("{} sign {}", e.name, k + 1));
                }
            }
        }
    }
    inv.field("families", entries.len());
    inv.field("points", points);
    summarize(&mut inv, "nu_equals_chi", calib);
    summarize(&mut inv, "parity", parity);
    summarize(&mut inv, "duality", duality);
    summarize(&mut inv, "sign_flip_law", flips);
    galois.field("families", entries.len());
    summarize(&mut galois, "conjugate_torsion", gal);
    ray.field("ledgers", ledgers);
    ray.field("mutations", mutations);
    summarize(&mut ray, "derived_signs_pass", ray_fail);
    summarize(&mut ray, "mutations_fail", mut_pass);
    vec![inv, galois, ray]
}

fn knot_item() -> Item {
    let mut it = Item::new("knot pipeline");
    let mut bad = Vec::new();
    for (k, expected) in bundled_knots() {
        let fox = alexander_from_fox(&k).and_then(|d| conway_normalize(&d));
        let oracle = k.seifert.as_ref().map(conway_from_seifert);
        match fox {
            Ok(c) if c == expected && oracle.as_ref().is_none_or(|o| *o == c) => {}
            Ok(c) => bad.push(format!("{}: got {c}, expected {expected}", k.name)),
            Err(e) => bad.push(format!("{}: {e}", k.name)),
        }
        it.field(k.name.clone(), expected);
    }
    summarize(&mut it, "fox_equals_oracle_equals_expected", bad);
    it
}

fn orientation_item() -> Item {
    let mut it = Item::new("orientation and semi-characteristic");
    let mut bad = Vec::new();
    for rank in 1..=3u64 {
        let row: Vec<String> = (0..=5i64).map(|s| orientation_reversal_sign(rank, s).to_string()).collect();
        for (s, v) in row.iter().enumerate() {
            let want = if rank % 2 == 1 && s % 2 == 1 { "-1" } else { "1" };
            if v != want {
                bad.push(format!("rank {rank}, schi {s}"));
            }
        }
        it.field(format!("sign.rank{rank}"), row.join(" "));
    }
    summarize(&mut it, "sign_table", bad);
    let t3 = semi_characteristic(&[1, 3, 3, 1]).ok();
    let s3 = semi_characteristic(&[1, 0, 0, 1]).ok();
    it.field("schi.3-torus", t3.map(|x| x.to_string()).unwrap_or_default());
    it.field("schi.3-sphere", s3.map(|x| x.to_string()).unwrap_or_default());
    it.check("schi_3_torus", t3 == Some(4), "");
    it.check("schi_3_sphere", s3 == Some(1), "");
    it
}

/// Bundled example files plus the cross-module invariants.
pub fn selftest(opts: &SelftestOptions) -> Result<Report, RunError> {
    let files = example_files(opts)?;
    let mut inputs = vec![match &opts.corpus {
        Some(d) => d.display().to_string(),
        None => "bundled".to_string(),
    }];
    inputs.push(format!("seed={}", opts.seed));
    let mut report = Report::new("selftest", inputs, CONVENTION_TAG);
    for (name, text) in files {
        report.items.push(file_item(&name, text));
    }
    report.items.extend(corpus_items(opts.seed, &generate(opts.seed, GENERATED_FAMILIES)));
    report.items.push(knot_item());
    report.items.push(orientation_item());
    Ok(report)
}
