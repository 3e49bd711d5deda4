//! Exact search for roots in `ℚ(i)` of polynomials over `ℚ(i)`.
//!
//! Real rational roots come from the rational root theorem applied to
//! `gcd(Re p, Im p)`. Non-real roots come from the same theorem over the
//! Gaussian integers, with divisor enumeration capped by [`NORM_CAP`]. What is
//! left after deflation (irrational roots, or roots beyond the caps) is
//! reported as an unresolved degree rather than dropped.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{GaussRat, Poly, RatFunc};
use crate::Rat;

/// Largest integer (or Gaussian norm) whose divisors are enumerated.
pub const NORM_CAP: u64 = 100_000_000;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RootSearch {
    /// Distinct roots with multiplicity, sorted by real then imaginary part.
    pub roots: Vec<(GaussRat, usize)>,
    /// Degree of the cofactor with no root found; zero when fully resolved.
    pub unresolved_degree: usize,
}

/// All roots of `p` in `ℚ(i)` that the capped search can certify.
pub fn gaussian_roots(p: &Poly<GaussRat>) -> RootSearch {
    let mut rest = p.clone();
    let mut roots = Vec::new();
    if rest.degree().unwrap_or(0) == 0 {
        return RootSearch::default();
    }
    let mut take = |rest: &mut Poly<GaussRat>, r: GaussRat| {
        let (k, cof) = rest.root_multiplicity(&r);
        if k > 0 {
            roots.push((r, k));
            *rest = cof;
        }
    };
    take(&mut rest, GaussRat::from(0));
    for r in real_candidates(&rest) {
        take(&mut rest, GaussRat::real(r));
    }
    if rest.degree().unwrap_or(0) > 0 {
        for r in gaussian_candidates(&rest) {
            if rest.degree().unwrap_or(0) == 0 {
                break;
            }
            take(&mut rest, r);
        }
    }
    roots.sort_by(|a, b| (&a.0.re, &a.0.im).cmp(&(&b.0.re, &b.0.im)));
    RootSearch { roots, unresolved_degree: rest.degree().unwrap_or(0) }
}

/// Candidate degeneration points of a rational function: roots of its
/// numerator and denominator, merged and sorted. The second component is the
/// total unresolved degree.
pub fn zeros_and_poles(f: &RatFunc<GaussRat>) -> (Vec<GaussRat>, usize) {
    let a = gaussian_roots(f.numer());
    let b = gaussian_roots(f.denom());
    let mut pts: Vec<GaussRat> = a.roots.into_iter().chain(b.roots).map(|(r, _)| r).collect();
    pts.sort_by(|x, y| (&x.re, &x.im).cmp(&(&y.re, &y.im)));
    pts.dedup();
    (pts, a.unresolved_degree + b.unresolved_degree)
}

fn real_candidates(p: &Poly<GaussRat>) -> Vec<Rat> {
    let re: Poly<Rat> = Poly::new(p.coeffs().iter().map(|c| c.re.clone()).collect());
    let im: Poly<Rat> = Poly::new(p.coeffs().iter().map(|c| c.im.clone()).collect());
    let g = re.gcd(&im);
    if g.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let ints = integer_coeffs(g.coeffs());
    let (c0, cn) = (ints[0].abs(), ints[ints.len() - 1].abs());
    let (Some(num_divs), Some(den_divs)) = (divisors(&c0), divisors(&cn)) else {
        return Vec::new();
    };
    let mut out = BTreeSet::new();
    for a in &num_divs {
        for b in &den_divs {
            for s in [1, -1] {
                let r = Rat::new(BigInt::from(s) * a, b.clone());
                if g.eval(&r).is_zero() {
                    out.insert(r);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Clears denominators of a rational coefficient list.
fn integer_coeffs(c: &[Rat]) -> Vec<BigInt> {
    let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    c.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect()
}

/// Positive divisors of `n > 0`, or `None` above the cap.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64().filter(|&n| n > 0 && n <= NORM_CAP)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small.into_iter().map(BigInt::from).collect())
}

type GInt = (BigInt, BigInt);

fn gnorm(z: &GInt) -> BigInt {
    &z.0 * &z.0 + &z.1 * &z.1
}

/// Gaussian integers dividing `z`, including associates.
fn gaussian_divisors(z: &GInt) -> Option<Vec<GInt>> {
    let n = gnorm(z);
    let mut out = Vec::new();
    for d in divisors(&n)? {
        let mut x = BigInt::zero();
        while &x * &x <= d {
            let y2 = &d - &x * &x;
            let y = y2.sqrt();
            if &y * &y == y2 {
                for (a, b) in [(x.clone(), y.clone()), (-x.clone(), y.clone()), (x.clone(), -y.clone()), (-x.clone(), -y.clone())] {
                    // g | z iff z·conj(g) is divisible by N(g).
                    let re = &z.0 * &a + &z.1 * &b;
                    let im = &z.1 * &a - &z.0 * &b;
                    if re.is_multiple_of(&d) && im.is_multiple_of(&d) {
                        out.push((a, b));
                    }
                }
            }
            x += 1;
        }
    }
    out.sort();
    out.dedup();
    Some(out)
}

fn gaussian_candidates(p: &Poly<GaussRat>) -> Vec<GaussRat> {
    let mut parts = Vec::new();
    for c in p.coeffs() {
        parts.push(c.re.clone());
        parts.push(c.im.clone());
    }
    let ints = integer_coeffs(&parts);
    let n = ints.len() / 2;
    let c0 = (ints[0].clone(), ints[1].clone());
    let cn = (ints[2 * n - 2].clone(), ints[2 * n - 1].clone());
    let (Some(us), Some(vs)) = (gaussian_divisors(&c0), gaussian_divisors(&cn)) else {
        return Vec::new();
    };
    // Denominators only matter up to units.
    let vs: Vec<&GInt> = vs.iter().filter(|v| v.0.is_positive() && !v.1.is_negative()).collect();
    let mut out = BTreeSet::new();
    for u in &us {
        for v in &vs {
            let num = GaussRat::new(Rat::from_integer(u.0.clone()), Rat::from_integer(u.1.clone()));
            let den = GaussRat::new(Rat::from_integer(v.0.clone()), Rat::from_integer(v.1.clone()));
            let r = num / den;
            if !r.is_real() && p.eval(&r).is_zero() {
                out.insert((r.re.clone(), r.im.clone()));
            }
        }
    }
    out.into_iter().map(|(re, im)| GaussRat::new(re, im)).collect()
}
