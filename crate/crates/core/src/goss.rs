//! Special values of the zeta function of A = F_q[t] at the infinite
//! place: one-units, exponentials with p-adic exponents, power sums over
//! monic polynomials, certified partial sums, exact values at negative
//! integers, and the coefficientwise interpolation identity against the
//! Stickelberger side.
//!
//! The exponential a^s for s = (x, y) is x^deg(a) <a>^y with <a> the
//! 1-unit a t^{-deg a}. A residue exponent y mod p^M is exact at Laurent
//! precision P <= p^M because u^(p^M) = 1 + (u-1)^(p^M) in characteristic p.

use crate::error::{Error, Result};
use crate::ff::laurent::{self, Laurent};
use crate::ff::poly::{self, FqPoly};
use crate::ff::Fq;
use serde::{Deserialize, Serialize};

/// A p-adic exponent: an honest integer or a residue class mod p^M.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub enum Exponent {
    Int(i64),
    Residue { value: u64, modulus_exp: u32 },
}

impl Exponent {
    pub fn negated(&self, p: u64) -> Exponent {
        match *self {
            Exponent::Int(v) => Exponent::Int(-v),
            Exponent::Residue { value, modulus_exp } => {
                let pm = p.pow(modulus_exp);
                Exponent::Residue { value: (pm - value % pm) % pm, modulus_exp }
            }
        }
    }
}

/// A point s = (x, y) of the zeta plane with x in the completion at
/// infinity.
#[derive(Clone, Debug)]
pub struct SPoint {
    pub x: Laurent,
    pub y: Exponent,
}

impl SPoint {
    /// The embedding of an integer j: s = (t^j, j), so a^s = a^j.
    pub fn from_int(fq: &Fq, j: i64, prec: i64) -> SPoint {
        let _ = fq;
        SPoint { x: Laurent::pi_pow(-j, prec), y: Exponent::Int(j) }
    }
}

/// The 1-unit <a> = a t^{-deg a} of a monic polynomial.
pub fn one_unit(fq: &Fq, a: &FqPoly, prec: i64) -> Result<Laurent> {
    if !a.is_monic() {
        return Err(Error::validation("one-unit of a non-monic polynomial"));
    }
    let _ = fq;
    // a t^{-deg a}: the reversed coefficient vector starts at valuation 0
    let window: Vec<u64> = a.coeffs().iter().rev().copied().collect();
    Ok(Laurent::from_terms(0, window, prec))
}

/// u^y for a 1-unit u. Residue exponents demand prec <= p^M.
pub fn unit_pow(fq: &Fq, u: &Laurent, y: Exponent, prec: i64) -> Result<Laurent> {
    if u.is_zero() || u.val() != 0 || u.coeff(0) != 1 {
        return Err(Error::validation("unit_pow requires a 1-unit"));
    }
    match y {
        Exponent::Int(k) => laurent::pow(fq, u, k),
        Exponent::Residue { value, modulus_exp } => {
            let pm = fq.p().checked_pow(modulus_exp).ok_or_else(|| {
                Error::guardrail("residue modulus overflow")
            })?;
            if prec > pm as i64 {
                return Err(Error::Precision(format!(
                    "precision {prec} exceeds p^M = {pm}; the residue class cannot determine it"
                )));
            }
            laurent::pow(fq, u, (value % pm) as i64)
        }
    }
}

/// a^s = x^deg(a) <a>^y.
pub fn ideal_power(fq: &Fq, a: &FqPoly, s: &SPoint, prec: i64) -> Result<Laurent> {
    let d = a.degree().ok_or_else(|| Error::validation("zero polynomial"))? as i64;
    let xe = laurent::pow(fq, &s.x, d)?;
    let u = one_unit(fq, a, prec)?;
    let up = unit_pow(fq, &u, s.y, prec)?;
    Ok(laurent::mul(fq, &xe, &up))
}

/// Power sums S_d(y) = sum over monic a of degree d of <a>^y, with the
/// variants omitting multiples of a fixed prime.
pub struct PowerSums<'a> {
    fq: &'a Fq,
    prec: i64,
}

impl<'a> PowerSums<'a> {
    pub fn new(fq: &'a Fq, prec: i64) -> PowerSums<'a> {
        PowerSums { fq, prec }
    }

    pub fn full(&self, d: usize, y: Exponent) -> Result<Laurent> {
        let mut acc = Laurent::zero(self.prec);
        for a in poly::enumerate_monics(self.fq, d) {
            let u = one_unit(self.fq, &a, self.prec)?;
            acc = laurent::add(self.fq, &acc, &unit_pow(self.fq, &u, y, self.prec)?);
        }
        Ok(acc)
    }

    pub fn coprime(&self, d: usize, y: Exponent, prime: &FqPoly) -> Result<Laurent> {
        let mut acc = Laurent::zero(self.prec);
        for a in poly::enumerate_monics(self.fq, d) {
            if poly::rem(self.fq, &a, prime)?.is_zero() {
                continue;
            }
            let u = one_unit(self.fq, &a, self.prec)?;
            acc = laurent::add(self.fq, &acc, &unit_pow(self.fq, &u, y, self.prec)?);
        }
        Ok(acc)
    }
}

/// Certified partial sum of zeta_A(s) = sum over monics of a^{-s}:
/// sum_{d <= cutoff} x^{-d} S_d(-y), plus a valuation bound on the omitted
/// tail (each degree stratum is a sum of 1-units, so its value has
/// absolute value at most 1).
pub fn zeta_partial(
    fq: &Fq,
    s: &SPoint,
    cutoff: u32,
    prec: i64,
) -> Result<(Laurent, i64)> {
    if s.x.is_zero() || s.x.val() >= 0 {
        return Err(Error::validation("zeta_partial needs |x| > 1"));
    }
    let sums = PowerSums::new(fq, prec);
    let x_inv = laurent::inv(fq, &s.x)?;
    let minus_y = s.y.negated(fq.p());
    let mut acc = Laurent::zero(prec);
    let mut xpow = Laurent::one(prec);
    for d in 0..=cutoff {
        let stratum = sums.full(d as usize, minus_y)?;
        acc = laurent::add(fq, &acc, &laurent::mul(fq, &xpow, &stratum));
        xpow = laurent::mul(fq, &xpow, &x_inv);
    }
    let tail_val = (cutoff as i64 + 1) * x_inv.val();
    Ok((acc, tail_val))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StoppingCertificate {
    pub last_nonzero_degree: Option<u32>,
    pub zero_run: u32,
    pub highest_checked: u32,
}

/// zeta_A(-j) for a positive integer j: the exact polynomial
/// sum_d sum_{monic deg d} a^j, summed until the strata vanish. The
/// stopping rule demands two consecutive zero strata beyond degree j; if
/// that never happens by degree j + 8 the enumeration is broken and we
/// abort.
pub fn zeta_at_negative_int(fq: &Fq, j: u32) -> Result<(FqPoly, StoppingCertificate)> {
    if j < 1 {
        return Err(Error::validation("j must be >= 1"));
    }
    let mut total = FqPoly::zero();
    let mut last_nonzero = None;
    let mut zero_run = 0u32;
    let mut d = 0u32;
    loop {
        let mut stratum = FqPoly::zero();
        for a in poly::enumerate_monics(fq, d as usize) {
            let mut pw = FqPoly::one();
            for _ in 0..j {
                pw = poly::mul(fq, &pw, &a);
            }
            stratum = poly::add(fq, &stratum, &pw);
        }
        if stratum.is_zero() {
            zero_run += 1;
        } else {
            zero_run = 0;
            last_nonzero = Some(d);
            total = poly::add(fq, &total, &stratum);
        }
        if zero_run >= 2 && d > j {
            return Ok((
                total,
                StoppingCertificate { last_nonzero_degree: last_nonzero, zero_run, highest_checked: d },
            ));
        }
        if d > j + 8 {
            return Err(Error::theorem(
                "zeta stratum vanishing not observed by degree j + 8; enumeration bug",
            ));
        }
        d += 1;
    }
}

/// Per-degree result of the interpolation identity: the Euler-product
/// expansion of the twisted Stickelberger series against the power-sum
/// side (1 - p^s) zeta_A(-s).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InterpolationDegree {
    pub degree: u32,
    pub euler_matches_rhs: bool,
    pub euler_matches_direct: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InterpolationReport {
    pub degrees: Vec<InterpolationDegree>,
    pub all_match: bool,
}

/// Verify, coefficient by coefficient in the formal variable, that the
/// character twist of the Stickelberger series (an Euler product over
/// monic irreducibles away from p) equals (1 - p^s) times the full zeta
/// side: S'_d(y) = S_d(y) - <p>^y S_{d - deg p}(y).
pub fn interpolation_check(
    fq: &Fq,
    prime: &FqPoly,
    y: Exponent,
    cutoff: u32,
    prec: i64,
) -> Result<InterpolationReport> {
    if !prime.is_monic() || !poly::is_irreducible(fq, prime)? {
        return Err(Error::validation("interpolation prime must be monic irreducible"));
    }
    let dp = prime.degree().unwrap();
    // Euler side: prod over q != p, deg q <= cutoff of (1 - <q>^y u^deg)^{-1}
    let mut euler: Vec<Laurent> = (0..=cutoff as usize)
        .map(|i| if i == 0 { Laurent::one(prec) } else { Laurent::zero(prec) })
        .collect();
    for d in 1..=cutoff as usize {
        for q in poly::enumerate_monic_irreducibles(fq, d)? {
            if q == *prime {
                continue;
            }
            let u = one_unit(fq, &q, prec)?;
            let w = unit_pow(fq, &u, y, prec)?;
            for i in d..=cutoff as usize {
                let add = laurent::mul(fq, &w, &euler[i - d]);
                euler[i] = laurent::add(fq, &euler[i], &add);
            }
        }
    }
    let sums = PowerSums::new(fq, prec);
    let p_unit = unit_pow(fq, &one_unit(fq, prime, prec)?, y, prec)?;
    let mut degrees = Vec::new();
    for d in 0..=cutoff {
        let full = sums.full(d as usize, y)?;
        let rhs = if (d as usize) < dp {
            full
        } else {
            let lower = sums.full(d as usize - dp, y)?;
            laurent::sub(fq, &full, &laurent::mul(fq, &p_unit, &lower))
        };
        let direct = sums.coprime(d as usize, y, prime)?;
        degrees.push(InterpolationDegree {
            degree: d,
            euler_matches_rhs: euler[d as usize].agrees_with(&rhs),
            euler_matches_direct: euler[d as usize].agrees_with(&direct),
        });
    }
    let all_match = degrees.iter().all(|x| x.euler_matches_rhs && x.euler_matches_direct);
    Ok(InterpolationReport { degrees, all_match })
}
