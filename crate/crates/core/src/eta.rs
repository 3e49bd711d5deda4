//! Eta-invariant bookkeeping along a ray of flat families: jump and midpoint
//! formulas, the argument-class pairing, `η̂`, ray invariance of
//! `sign(τ)·exp(iπη/2)`, the semi-characteristic and the orientation sign.
//!
//! Eta values are inputs. Phases are kept as rationals measured in half
//! turns, so `exp(iπx)` is represented by `x mod 2`.

use num_integer::Integer;
use num_traits::Zero;

use crate::deformation::DeformationReport;
use crate::scalar::GaussRat;
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EtaError {
    #[error("L-class degree-(m−1) part not even: hypothesis w_{{m−1}} = 0 / no 2-torsion violated (entry {index})")]
    OddLClass { index: usize },
    #[error("{what}: expected {expected} entries, got {got}")]
    LengthMismatch { what: &'static str, expected: usize, got: usize },
    #[error("semi-characteristic needs an odd dimension m (got m = {0})")]
    EvenDimension(usize),
    #[error("dimension class must be 1 or 3 (got {0})")]
    DimensionClass(u8),
    #[error("jump points must be real and strictly increasing (at jump {0})")]
    JumpOrder(usize),
    #[error("argument data required for interval {0} (dimension class 1, non-SU family)")]
    MissingArgData(usize),
    #[error("sign entries must be +1 or -1 (interval {0})")]
    BadSign(usize),
    #[error("nu = {nu} and sigma_odd = {sigma_odd} differ in parity at an analyzed jump")]
    ParityMismatch { nu: i64, sigma_odd: i64 },
    #[error("argument pairing needs at least one class")]
    EmptyPairing,
}

/// Reduces `x` into `[0, n)`.
pub fn rat_mod(x: &Rat, n: i64) -> Rat {
    let n = Rat::from_integer(n.into());
    let q = (x / &n).floor();
    x - q * n
}

/// Signature data at one degeneration point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JumpRecord {
    pub t0: GaussRat,
    pub sigma_odd: i64,
    pub sigma_even: i64,
    pub nu: i64,
    /// Produced by [`JumpRecord::from_report`]; parity of `nu` and `sigma_odd` is then enforced.
    pub analyzed: bool,
    /// Optional eta values just right of, just left of, and at `t0`.
    pub eta_plus: Option<Rat>,
    pub eta_minus: Option<Rat>,
    pub eta_mid: Option<Rat>,
}

impl JumpRecord {
    pub fn new(t0: GaussRat, sigma_odd: i64, sigma_even: i64, nu: i64) -> Self {
        JumpRecord { t0, sigma_odd, sigma_even, nu, analyzed: false, eta_plus: None, eta_minus: None, eta_mid: None }
    }

    /// Record from an analysis. `σ_odd` is known only modulo 2, through the
    /// middle torsion dimension, and is stored as that parity.
    pub fn from_report(rep: &DeformationReport<GaussRat>) -> Result<Self, EtaError> {
        let sigma_odd = rep.middle_dim_parity.map(i64::from).unwrap_or(rep.nu.rem_euclid(2));
        if (rep.nu - sigma_odd).rem_euclid(2) != 0 {
            return Err(EtaError::ParityMismatch { nu: rep.nu, sigma_odd });
        }
        let mut r = JumpRecord::new(rep.t0.clone(), sigma_odd, 0, rep.nu);
        r.analyzed = true;
        Ok(r)
    }

    /// Warning text for hand-entered records whose parities disagree.
    pub fn parity_warning(&self) -> Option<String> {
        ((self.nu - self.sigma_odd).rem_euclid(2) != 0).then(|| {
            format!("jump at t0 = {}: nu = {} and sigma_odd = {} differ in parity", self.t0, self.nu, self.sigma_odd)
        })
    }
}

/// Values of the argument class on a basis of `H¹` and the pairings of the
/// degree-`(m-1)` part of `L(X)` with the dual basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArgPairing {
    arg_coeffs: Vec<Rat>,
    l_coeffs: Vec<i64>,
}

impl ArgPairing {
    pub fn new(arg_coeffs: Vec<Rat>, l_coeffs: Vec<i64>) -> Result<Self, EtaError> {
        if arg_coeffs.is_empty() {
            return Err(EtaError::EmptyPairing);
        }
        if arg_coeffs.len() != l_coeffs.len() {
            return Err(EtaError::LengthMismatch {
                what: "l coefficients",
                expected: arg_coeffs.len(),
                got: l_coeffs.len(),
            });
        }
        Ok(ArgPairing { arg_coeffs, l_coeffs })
    }

    pub fn betti_b1(&self) -> usize {
        self.arg_coeffs.len()
    }

    pub fn arg_coeffs(&self) -> &[Rat] {
        &self.arg_coeffs
    }

    pub fn l_coeffs(&self) -> &[i64] {
        &self.l_coeffs
    }
}

/// Eta data along a ray with its jump points in increasing order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EtaProfile {
    pub dimension_class: u8,
    /// The family is special unitary, so the argument class vanishes.
    pub su: bool,
    /// `η` on the first interval.
    pub base_value: Rat,
    pub jumps: Vec<JumpRecord>,
    /// One entry per interval (`jumps.len() + 1`), or empty.
    pub slope_data: Vec<Option<ArgPairing>>,
}

impl EtaProfile {
    pub fn new(
        dimension_class: u8,
        su: bool,
        base_value: Rat,
        jumps: Vec<JumpRecord>,
        slope_data: Vec<Option<ArgPairing>>,
    ) -> Result<Self, EtaError> {
        if dimension_class != 1 && dimension_class != 3 {
            return Err(EtaError::DimensionClass(dimension_class));
        }
        for (i, j) in jumps.iter().enumerate() {
            if !j.t0.is_real() || (i > 0 && jumps[i - 1].t0.re >= j.t0.re) {
                return Err(EtaError::JumpOrder(i + 1));
            }
        }
        if !slope_data.is_empty() && slope_data.len() != jumps.len() + 1 {
            return Err(EtaError::LengthMismatch {
                what: "argument data intervals",
                expected: jumps.len() + 1,
                got: slope_data.len(),
            });
        }
        Ok(EtaProfile { dimension_class, su, base_value, jumps, slope_data })
    }

    /// Profile from analyses at the jump points of a ray (any order).
    pub fn synthesize(
        dimension_class: u8,
        su: bool,
        base_value: Rat,
        reports: &[DeformationReport<GaussRat>],
    ) -> Result<Self, EtaError> {
        let mut jumps = reports.iter().map(JumpRecord::from_report).collect::<Result<Vec<_>, _>>()?;
        jumps.sort_by(|a, b| a.t0.re.cmp(&b.t0.re));
        EtaProfile::new(dimension_class, su, base_value, jumps, Vec::new())
    }

    pub fn intervals(&self) -> usize {
        self.jumps.len() + 1
    }

    /// Whether the argument phase enters the ray invariant.
    pub fn uses_argument(&self) -> bool {
        self.dimension_class == 1 && !self.su
    }

    /// Interval signs generated by the jump exponents: `+1` on the first
    /// interval, then a flip at every jump with odd `ν`.
    pub fn derived_signs(&self) -> Vec<i8> {
        let mut s = 1i8;
        let mut out = vec![s];
        for j in &self.jumps {
            if j.nu.rem_euclid(2) == 1 {
                s = -s;
            }
            out.push(s);
        }
        out
    }

    fn pairing(&self, interval: usize) -> Result<Rat, EtaError> {
        if !self.uses_argument() {
            return Ok(Rat::zero());
        }
        match self.slope_data.get(interval).and_then(|p| p.as_ref()) {
            Some(p) => arg_pairing_value(p),
            None => Err(EtaError::MissingArgData(interval + 1)),
        }
    }

    /// Representative of `η̂` (or `η` when the argument does not enter) on
    /// each interval. Jumps with a recorded `η₊` restart from it; otherwise the
    /// jump law `+2σ_odd` is applied.
    pub fn interval_values(&self) -> Result<Vec<Rat>, EtaError> {
        let mut out = Vec::with_capacity(self.intervals());
        out.push(&self.base_value + self.pairing(0)? * Rat::from_integer(2.into()));
        for (k, j) in self.jumps.iter().enumerate() {
            let p = self.pairing(k + 1)? * Rat::from_integer(2.into());
            let next = match &j.eta_plus {
                Some(e) => e + p,
                None => &out[k] + Rat::from_integer(eta_jump(j).into()),
            };
            out.push(next);
        }
        Ok(out)
    }
}

/// `η₊ - η₋ = 2σ_odd`.
pub fn eta_jump(rec: &JumpRecord) -> i64 {
    2 * rec.sigma_odd
}

/// `η_{t0} = ½(η₊ + η₋) - σ_even`.
pub fn eta_at_jump(eta_plus: &Rat, eta_minus: &Rat, sigma_even: i64) -> Rat {
    (eta_plus + eta_minus) / Rat::from_integer(2.into()) - Rat::from_integer(sigma_even.into())
}

/// `Σ arg_j · l_j mod 2`. Well defined because every `l_j` is even.
pub fn arg_pairing_value(p: &ArgPairing) -> Result<Rat, EtaError> {
    let mut acc = Rat::zero();
    for (index, (a, &l)) in p.arg_coeffs.iter().zip(&p.l_coeffs).enumerate() {
        if l.is_odd() {
            return Err(EtaError::OddLClass { index });
        }
        acc += a * Rat::from_integer(l.into());
    }
    Ok(rat_mod(&acc, 2))
}

/// `η̂ = η + 2·⟨Arg ∪ L, [X]⟩ mod 4`.
pub fn hat_eta(eta: &Rat, p: &ArgPairing) -> Result<Rat, EtaError> {
    let v = arg_pairing_value(p)?;
    Ok(rat_mod(&(eta + v * Rat::from_integer(2.into())), 4))
}

/// Jump of `η̂` across a record, `2σ_odd mod 4`.
pub fn hat_eta_jump(rec: &JumpRecord) -> i64 {
    eta_jump(rec).rem_euclid(4)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RayFailure {
    /// `sign·exp(iπη̂/2)` on this interval differs from the first interval.
    Phase { interval: usize },
    /// Recorded `η₊ - η₋` contradicts `2σ_odd` at this jump.
    Jump { jump: usize },
    /// Recorded `η₋` at the right end of this interval disagrees with the
    /// interval value, i.e. `η̂` is not locally constant.
    Drift { interval: usize },
    /// Recorded `η_{t0}` contradicts the midpoint formula at this jump.
    Midpoint { jump: usize },
}

impl std::fmt::Display for RayFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RayFailure::Phase { interval } => write!(f, "phase changes on interval {interval}"),
            RayFailure::Jump { jump } => write!(f, "recorded eta jump contradicts 2*sigma_odd at jump {jump}"),
            RayFailure::Drift { interval } => write!(f, "eta not locally constant on interval {interval}"),
            RayFailure::Midpoint { jump } => write!(f, "midpoint value contradicts the average at jump {jump}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RayVerdict {
    /// Phase of `sign·exp(iπη̂/2)` per interval, in half turns mod 2.
    pub phases: Vec<Rat>,
    pub failure: Option<RayFailure>,
    pub warnings: Vec<String>,
}

impl RayVerdict {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }

    /// 1-based index of the first offending interval, for phase failures.
    pub fn offending_interval(&self) -> Option<usize> {
        match self.failure {
            Some(RayFailure::Phase { interval }) => Some(interval),
            _ => None,
        }
    }
}

/// Checks that `sign_k · exp(iπη̂_k/2)` is the same on every interval, where
/// `η̂ = η` unless the family is non-SU in dimension class 1. Recorded eta
/// values at jumps are also checked against the jump and midpoint formulas.
pub fn ray_invariant_check(profile: &EtaProfile, signs: &[i8]) -> Result<RayVerdict, EtaError> {
    if signs.len() != profile.intervals() {
        return Err(EtaError::LengthMismatch { what: "sign sequence", expected: profile.intervals(), got: signs.len() });
    }
    if let Some(i) = signs.iter().position(|&s| s != 1 && s != -1) {
        return Err(EtaError::BadSign(i + 1));
    }
    let values = profile.interval_values()?;
    let two = Rat::from_integer(2.into());
    let phases: Vec<Rat> = values
        .iter()
        .zip(signs)
        .map(|(v, &s)| rat_mod(&(v / &two + if s < 0 { Rat::from_integer(1.into()) } else { Rat::zero() }), 2))
        .collect();
    let warnings = profile.jumps.iter().filter_map(JumpRecord::parity_warning).collect();
    let mut failure = None;
    for (k, j) in profile.jumps.iter().enumerate() {
        let Some(m) = &j.eta_minus else { continue };
        let left = m + profile.pairing(k)? * &two;
        if !rat_mod(&(&left - &values[k]), 4).is_zero() {
            failure = Some(RayFailure::Drift { interval: k + 1 });
            break;
        }
        let Some(p) = &j.eta_plus else { continue };
        let expected = Rat::from_integer(eta_jump(j).into());
        // With the argument present only η̂ obeys the jump law, mod 4.
        let ok = if profile.uses_argument() {
            let right = p + profile.pairing(k + 1)? * &two;
            rat_mod(&(right - left - expected), 4).is_zero()
        } else {
            p - m == expected
        };
        if !ok {
            failure = Some(RayFailure::Jump { jump: k + 1 });
            break;
        }
        if let Some(mid) = &j.eta_mid {
            if *mid != eta_at_jump(p, m, j.sigma_even) {
                failure = Some(RayFailure::Midpoint { jump: k + 1 });
                break;
            }
        }
    }
    if failure.is_none() {
        if let Some(k) = phases.iter().position(|p| *p != phases[0]) {
            failure = Some(RayFailure::Phase { interval: k + 1 });
        }
    }
    Ok(RayVerdict { phases, failure, warnings })
}

/// `sχ = Σ_{i ≤ (m-1)/2} b_{2i}` for Betti numbers `b_0..b_m`, `m` odd.
pub fn semi_characteristic(bettis: &[u64]) -> Result<u64, EtaError> {
    let m = bettis.len().saturating_sub(1);
    if bettis.is_empty() || m % 2 == 0 {
        return Err(EtaError::EvenDimension(m));
    }
    Ok(bettis.iter().take(m).step_by(2).sum())
}

/// `(-1)^{rank · sχ}`.
pub fn orientation_reversal_sign(rank: u64, schi: i64) -> i8 {
    if (rank as i128 * schi as i128).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Whether the torsion is insensitive to orientation, i.e. one of the two numbers is even.
pub fn orientation_independent(rank: u64, schi: i64) -> bool {
    rank % 2 == 0 || schi.abs() % 2 == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rat {
        Rat::new(p.into(), d.into())
    }

    fn rec(t: i64, sigma_odd: i64) -> JumpRecord {
        JumpRecord::new(GaussRat::from(t), sigma_odd, 0, sigma_odd)
    }

    #[test]
    fn jump_and_midpoint() {
        assert_eq!(eta_jump(&rec(0, 1)), 2);
        assert_eq!(eta_jump(&rec(0, 0)), 0);
        assert_eq!(eta_jump(&rec(0, -3)), -6);
        assert_eq!(eta_at_jump(&q(1, 1), &q(1, 1), 0), q(1, 1));
        assert_eq!(eta_at_jump(&q(3, 1), &q(1, 1), 1), q(1, 1));
        assert_eq!(eta_at_jump(&q(0, 1), &q(0, 1), 2), q(-2, 1));
    }

    #[test]
    fn pairing_and_hat() {
        let zero = ArgPairing::new(vec![q(0, 1), q(0, 1)], vec![2, 4]).unwrap();
        assert_eq!(arg_pairing_value(&zero).unwrap(), q(0, 1));
        let quarter = ArgPairing::new(vec![q(1, 4)], vec![2]).unwrap();
        assert_eq!(arg_pairing_value(&quarter).unwrap(), q(1, 2));
        let shifted = ArgPairing::new(vec![q(5, 4)], vec![2]).unwrap();
        assert_eq!(arg_pairing_value(&shifted).unwrap(), q(1, 2));
        let odd = ArgPairing::new(vec![q(1, 3)], vec![3]).unwrap();
        let err = arg_pairing_value(&odd).unwrap_err();
        assert!(err.to_string().starts_with("L-class degree-(m−1) part not even"));

        assert_eq!(hat_eta(&q(0, 1), &zero).unwrap(), q(0, 1));
        assert_eq!(hat_eta(&q(1, 1), &quarter).unwrap(), q(2, 1));
        assert_eq!(hat_eta_jump(&rec(0, 1)), 2);
        assert!(ArgPairing::new(vec![q(1, 2)], vec![]).is_err());
    }

    #[test]
    fn ray_examples() {
        let one = EtaProfile::new(3, false, q(1, 3), vec![], vec![]).unwrap();
        assert!(ray_invariant_check(&one, &[1]).unwrap().pass());
        assert!(ray_invariant_check(&one, &[-1]).unwrap().pass());

        let two = EtaProfile::new(3, false, q(0, 1), vec![rec(1, 1)], vec![]).unwrap();
        assert!(ray_invariant_check(&two, &[1, -1]).unwrap().pass());
        let v = ray_invariant_check(&two, &[1, 1]).unwrap();
        assert_eq!(v.offending_interval(), Some(2));
        assert_eq!(two.derived_signs(), vec![1, -1]);
        assert!(ray_invariant_check(&two, &[1]).is_err());
    }

    #[test]
    fn ray_with_argument_data() {
        let p = |a: Rat| Some(ArgPairing::new(vec![a], vec![2]).unwrap());
        // η̂ = 1 on the left; at the jump η moves by 3/2 but η̂ by 2.
        let mut j = rec(1, 1);
        j.eta_minus = Some(q(0, 1));
        j.eta_plus = Some(q(3, 2));
        let prof = EtaProfile::new(1, false, q(0, 1), vec![j.clone()], vec![p(q(1, 4)), p(q(3, 8))]).unwrap();
        let v = ray_invariant_check(&prof, &[1, -1]).unwrap();
        assert!(v.pass(), "{v:?}");
        assert_eq!(v.phases, vec![q(1, 2), q(1, 2)]);

        j.eta_minus = Some(q(1, 2));
        let drift = EtaProfile::new(1, false, q(0, 1), vec![j], vec![p(q(1, 4)), p(q(3, 8))]).unwrap();
        assert_eq!(ray_invariant_check(&drift, &[1, -1]).unwrap().failure, Some(RayFailure::Drift { interval: 1 }));

        let missing = EtaProfile::new(1, false, q(0, 1), vec![rec(1, 1)], vec![]).unwrap();
        assert_eq!(ray_invariant_check(&missing, &[1, -1]).unwrap_err(), EtaError::MissingArgData(1));
        let su = EtaProfile::new(1, true, q(0, 1), vec![rec(1, 1)], vec![]).unwrap();
        assert!(ray_invariant_check(&su, &[1, -1]).unwrap().pass());
    }

    #[test]
    fn recorded_values_are_checked() {
        let mut j = rec(1, 1);
        j.eta_minus = Some(q(0, 1));
        j.eta_plus = Some(q(2, 1));
        j.eta_mid = Some(q(1, 1));
        let good = EtaProfile::new(3, false, q(0, 1), vec![j.clone()], vec![]).unwrap();
        assert!(ray_invariant_check(&good, &[1, -1]).unwrap().pass());
        j.eta_mid = Some(q(0, 1));
        let bad = EtaProfile::new(3, false, q(0, 1), vec![j.clone()], vec![]).unwrap();
        assert_eq!(ray_invariant_check(&bad, &[1, -1]).unwrap().failure, Some(RayFailure::Midpoint { jump: 1 }));
        j.eta_plus = Some(q(4, 1));
        let bad = EtaProfile::new(3, false, q(0, 1), vec![j], vec![]).unwrap();
        assert_eq!(ray_invariant_check(&bad, &[1, -1]).unwrap().failure, Some(RayFailure::Jump { jump: 1 }));
    }

    #[test]
    fn profile_validation() {
        assert_eq!(EtaProfile::new(2, false, q(0, 1), vec![], vec![]).unwrap_err(), EtaError::DimensionClass(2));
        let err = EtaProfile::new(3, false, q(0, 1), vec![rec(2, 0), rec(1, 0)], vec![]).unwrap_err();
        assert_eq!(err, EtaError::JumpOrder(2));
        let mut hand = rec(0, 1);
        hand.nu = 2;
        assert!(hand.parity_warning().is_some());
    }

    #[test]
    fn semi_characteristic_and_orientation() {
        assert_eq!(semi_characteristic(&[1, 0, 0, 1]), Ok(1));
        assert_eq!(semi_characteristic(&[0, 0, 0, 0]), Ok(0));
        assert_eq!(semi_characteristic(&[1, 3, 3, 1]), Ok(4));
        assert_eq!(semi_characteristic(&[1, 0, 1]), Err(EtaError::EvenDimension(2)));
        assert_eq!(orientation_reversal_sign(2, 3), 1);
        assert_eq!(orientation_reversal_sign(1, 1), -1);
        assert_eq!(orientation_reversal_sign(1, 4), 1);
    }
}
