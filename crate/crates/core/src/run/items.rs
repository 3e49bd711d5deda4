//! Report items for each kind of input.

use crate::complex::DualityPairing;
use crate::deformation::{analyze, relative_sign, DeformationError, DeformationReport};
use crate::eta::{hat_eta_jump, ray_invariant_check, JumpRecord};
use crate::io::{format_ratfunc, ComplexFile, KnotFile, LedgerFile, PresentationFile};
use crate::knot::{alexander_from_fox, conway_from_seifert, conway_normalize};
use crate::report::Item;
use crate::roots::zeros_and_poles;
use crate::scalar::{fmt_rational, valuation};
use crate::{BasedChainComplex, GaussRat, Rat, RatFunc};

/// Offsets at which the sign-flip law is checked.
pub const DELTAS: [(i64, i64); 2] = [(1, 1000), (1, 10000)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSource {
    Explicit(Vec<GaussRat>),
    /// Zeros and poles of the torsion found by exact root search.
    Auto,
}

/// A family complex with what the input file says about it.
#[derive(Clone, Debug)]
pub struct Family {
    pub name: Option<String>,
    pub complex: BasedChainComplex,
    pub pairing: Option<DualityPairing<RatFunc>>,
    pub points: Vec<GaussRat>,
    pub expected_torsion: Option<RatFunc>,
    /// Set when the presentation could not be turned into a complex.
    pub build_error: Option<String>,
}

impl Family {
    pub fn from_complex_file(f: &ComplexFile) -> Self {
        Family {
            name: f.name.clone(),
            complex: f.complex.clone(),
            pairing: f.pairing.clone(),
            points: f.points.clone(),
            expected_torsion: f.expected_torsion.clone(),
            build_error: None,
        }
    }

    pub fn from_presentation(f: &PresentationFile) -> Self {
        let (complex, build_error) = match f.complex() {
            Ok(c) => (c, None),
            Err(e) => (BasedChainComplex::zero(vec![0]), Some(e.to_string())),
        };
        Family {
            name: f.name.clone(),
            complex,
            pairing: None,
            points: f.points.clone(),
            expected_torsion: None,
            build_error,
        }
    }

    pub fn default_points(&self) -> PointSource {
        if self.points.is_empty() {
            PointSource::Auto
        } else {
            PointSource::Explicit(self.points.clone())
        }
    }
}

/// Outcome of analyzing one point, with the sign-flip law evaluated.
pub struct PointResult {
    pub report: DeformationReport<GaussRat>,
    /// `Err` names the first offset where the law fails.
    pub sign_flip: Result<(), String>,
}

pub fn sign_flip_law(tau: &RatFunc, t0: &GaussRat, nu: i64) -> Result<(), String> {
    let expected: i8 = if nu.rem_euclid(2) == 0 { 1 } else { -1 };
    for (p, q) in DELTAS {
        let delta = Rat::new(p.into(), q.into());
        match relative_sign(tau, t0, &delta) {
            Some(s) if s == expected => {}
            Some(s) => return Err(format!("relative sign {s} at delta {p}/{q}, expected {expected}")),
            None => return Err(format!("torsion vanishes or has a pole at t0 ± {p}/{q}")),
        }
    }
    Ok(())
}

pub fn analyze_point(
    c: &BasedChainComplex,
    tau: &RatFunc,
    pairing: Option<&DualityPairing<RatFunc>>,
    t0: &GaussRat,
) -> Result<PointResult, DeformationError> {
    let report = analyze(c, t0, pairing)?;
    let sign_flip = sign_flip_law(tau, t0, report.nu);
    Ok(PointResult { report, sign_flip })
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Common head of `torsion` and `analyze`: torsion value and resolved points.
fn torsion_head(item: &mut Item, fam: &Family, src: &PointSource) -> Option<(RatFunc, Vec<GaussRat>, bool)> {
    if let Some(n) = &fam.name {
        item.field("label", n);
    }
    if let Some(e) = &fam.build_error {
        item.check("presentation_complex", false, e.clone());
        return None;
    }
    let c = &fam.complex;
    item.field("ranks", join(c.ranks()));
    item.field("euler_characteristic", c.euler_characteristic());
    let tau = match c.torsion() {
        Ok(t) => {
            item.check("acyclic", true, "");
            item.field("convention", t.convention_tag);
            item.field("torsion", format_ratfunc(&t.value));
            t.value
        }
        Err(e) => {
            item.check("acyclic", false, e.to_string());
            return None;
        }
    };
    if let Some(exp) = &fam.expected_torsion {
        let ok = *exp == tau;
        item.check("expected_torsion", ok, if ok { String::new() } else { format!("recorded {}", format_ratfunc(exp)) });
    }
    let (points, auto) = match src {
        PointSource::Explicit(p) => (p.clone(), false),
        PointSource::Auto => {
            let (pts, unresolved) = zeros_and_poles(&tau);
            item.field("points.source", "auto");
            if unresolved > 0 {
                item.field("points.outside_exact_scope", format!("{unresolved} root(s) not in Q(i) or beyond the search cap"));
            }
            (pts, true)
        }
    };
    item.field("points.count", points.len());
    Some((tau, points, auto))
}

pub fn torsion_item(name: &str, fam: &Family, src: &PointSource) -> Item {
    let mut item = Item::new(name);
    let Some((tau, points, _)) = torsion_head(&mut item, fam, src) else { return item };
    for (i, t0) in points.iter().enumerate() {
        item.field(format!("point.{i}.t0"), t0);
        match valuation(&tau, t0) {
            Ok(v) => item.field(format!("point.{i}.valuation"), v),
            Err(e) => item.check(format!("point.{i}.valuation"), false, e.to_string()),
        }
    }
    item
}

pub fn analyze_item(name: &str, fam: &Family, src: &PointSource) -> Item {
    let mut item = Item::new(name);
    let Some((tau, points, auto)) = torsion_head(&mut item, fam, src) else { return item };
    item.field("duality", if fam.pairing.is_some() { "on" } else { "off" });
    for (i, t0) in points.iter().enumerate() {
        let p = format!("point.{i}");
        item.field(format!("{p}.t0"), t0);
        let res = match analyze_point(&fam.complex, &tau, fam.pairing.as_ref(), t0) {
            Ok(r) => r,
            Err(DeformationError::NotLocal) if auto => {
                item.field(format!("{p}.status"), "skipped: boundary entries have a pole here");
                continue;
            }
            Err(e @ DeformationError::CalibrationViolated { .. }) => {
                item.check(format!("{p}.nu_equals_chi"), false, e.to_string());
                continue;
            }
            Err(e) => {
                item.check(format!("{p}.analysis"), false, e.to_string());
                continue;
            }
        };
        let r = &res.report;
        item.field(format!("{p}.nu"), r.nu);
        item.field(format!("{p}.chi"), r.chi);
        item.field(format!("{p}.torsion_dims"), join(&r.dims.dims));
        item.field(format!("{p}.cohomological_dims"), join(r.dims.cohomological()));
        if let Some(d) = r.dims.middle_dim() {
            item.field(format!("{p}.middle_dim"), d);
        }
        item.field(format!("{p}.sign_flip"), r.sign_flip);
        item.check(format!("{p}.nu_equals_chi"), true, "");
        if let Some(ok) = r.parity_matches() {
            item.check(format!("{p}.parity"), ok, if ok { "" } else { "nu and middle dimension differ mod 2" });
        }
        if let Some(ok) = r.duality_ok {
            item.check(format!("{p}.duality"), ok, if ok { "" } else { "pairing not a local unit or dims not symmetric" });
        }
        item.check(format!("{p}.sign_flip_law"), res.sign_flip.is_ok(), res.sign_flip.err().unwrap_or_default());
    }
    item
}

pub fn conway_item(name: &str, k: &KnotFile) -> Item {
    let mut item = Item::new(name);
    item.field("knot", &k.knot.name);
    let fox = alexander_from_fox(&k.knot).and_then(|d| conway_normalize(&d).map(|c| (d, c)));
    let fox_conway = match fox {
        Ok((d, c)) => {
            item.field("alexander", &d);
            item.field("conway", &c);
            item.check("fox_pipeline", true, "");
            Some(c)
        }
        Err(e) => {
            item.check("fox_pipeline", false, e.to_string());
            None
        }
    };
    match &k.knot.seifert {
        Some(v) => {
            let oracle = conway_from_seifert(v);
            item.field("seifert_oracle", &oracle);
            if let Some(c) = &fox_conway {
                let ok = *c == oracle;
                item.check("oracle_agreement", ok, if ok { String::new() } else { format!("fox {c}, oracle {oracle}") });
            }
        }
        None => item.field("seifert_oracle", "none"),
    }
    if let (Some(exp), Some(c)) = (&k.expected_conway, &fox_conway) {
        let ok = exp == c;
        item.check("expected_conway", ok, if ok { String::new() } else { format!("recorded {exp}") });
    }
    item
}

/// Ray-invariance item. With `family`, `ν` and `σ_odd` at each jump come from
/// analyzing the family there. In `expectation` mode the verdict is compared
/// with the ledger's `expect` line instead of being required to pass.
pub fn eta_item(name: &str, l: &LedgerFile, family: Option<&Family>, expectation: bool) -> Item {
    let mut item = Item::new(name);
    if let Some(n) = &l.name {
        item.field("label", n);
    }
    let mut profile = l.profile.clone();
    if let Some(fam) = family {
        item.field("jumps.source", "analyzed");
        for (k, j) in profile.jumps.iter_mut().enumerate() {
            match analyze(&fam.complex, &j.t0, fam.pairing.as_ref()).map_err(|e| e.to_string()).and_then(|r| {
                JumpRecord::from_report(&r).map_err(|e| e.to_string())
            }) {
                Ok(r) => {
                    j.nu = r.nu;
                    j.sigma_odd = r.sigma_odd;
                    j.analyzed = true;
                }
                Err(e) => item.check(format!("jump.{}.analysis", k + 1), false, e),
            }
        }
    }
    item.field("dimension_class", profile.dimension_class);
    item.field("su", profile.su);
    item.field("uses_argument", profile.uses_argument());
    for (k, j) in profile.jumps.iter().enumerate() {
        let p = format!("jump.{}", k + 1);
        item.field(format!("{p}.t0"), &j.t0);
        item.field(format!("{p}.nu"), j.nu);
        item.field(format!("{p}.sigma_odd"), j.sigma_odd);
        item.field(format!("{p}.hat_eta_jump_mod4"), hat_eta_jump(j));
    }
    let derived = profile.derived_signs();
    let signs = l.signs.clone().unwrap_or_else(|| derived.clone());
    item.field("signs", join(&signs));
    item.field("derived_signs", join(&derived));
    let (pass, detail) = match ray_invariant_check(&profile, &signs) {
        Ok(v) => {
            item.field("phases", join(v.phases.iter().map(fmt_rational)));
            for w in &v.warnings {
                item.field("warning", w);
            }
            (v.pass(), v.failure.map(|f| f.to_string()).unwrap_or_default())
        }
        Err(e) => (false, e.to_string()),
    };
    match (expectation, l.expect_pass) {
        (true, Some(exp)) => {
            item.field("ray_invariant", if pass { "pass" } else { "fail" });
            if !detail.is_empty() {
                item.field("ray_invariant.detail", &detail);
            }
            let ok = pass == exp;
            let want = if exp { "pass" } else { "fail" };
            item.check("expected_verdict", ok, if ok { String::new() } else { format!("expected {want}: {detail}") });
        }
        _ => item.check("ray_invariant", pass, detail),
    }
    item
}
