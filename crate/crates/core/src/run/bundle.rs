/// An example file shipped inside the library.
pub struct BundledFile {
    pub name: &'static str,
    pub text: &'static str,
}

macro_rules! bundle {
    ($($name:literal),* $(,)?) => {
        &[$(BundledFile { name: $name, text: include_str!(concat!("../../data/", $name)) }),*]
    };
}

static FILES: &[BundledFile] = bundle!(
    "circle.cplx",
    "direct_sum_m1.cplx",
    "direct_sum_m3.cplx",
    "figure_eight.knot",
    "knot_5_1.knot",
    "knot_5_2.knot",
    "ledger_arg.eta",
    "ledger_fail.eta",
    "ledger_pass.eta",
    "ledger_su.eta",
    "torus2.pres",
    "torus3.cplx",
    "torus3_degenerate.cplx",
    "trefoil.knot",
    "unknot.knot",
);

/// Bundled examples, sorted by name.
pub fn bundled_files() -> &'static [BundledFile] {
    FILES
}
