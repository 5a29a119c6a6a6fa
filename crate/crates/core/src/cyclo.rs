//! Exact arithmetic in the cyclotomic field Q(zeta_m), m prime to p.
//!
//! Character values and idempotent coefficients live here. The ring W of
//! the Fitting-ideal formulas (an extension of Z_p containing the |H|-th
//! roots of unity) is realized as the p-local subring: elements whose
//! denominators are prime to p. Ideal comparisons truncate to W/p^M
//! through [`Cyc::to_residue`].

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// The field Q(zeta_m) with basis 1, zeta, ..., zeta^(phi(m)-1).
#[derive(Clone, Debug)]
pub struct CycloField {
    m: u64,
    phi: usize,
    /// m-th cyclotomic polynomial, monic, integer coefficients, length phi+1.
    min_poly: Vec<BigInt>,
    /// red[i] = coefficients of zeta^(phi+i) on the power basis.
    red: Vec<Vec<BigRational>>,
}

/// An element of Q(zeta_m) on the power basis. Operations go through the
/// owning [`CycloField`].
#[derive(Clone, PartialEq, Eq)]
pub struct Cyc {
    c: Vec<BigRational>,
}

impl std::fmt::Debug for Cyc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| if i == 0 { format!("{v}") } else { format!("{v}*z^{i}") })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // exact division of integer polynomials, den monic
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
    }
    assert!(rem.iter().all(|v| v.is_zero()), "inexact cyclotomic division");
    quot
}

/// The m-th cyclotomic polynomial, computed by exact division of x^m - 1
/// by the cyclotomic polynomials of the proper divisors.
pub fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    let mut quot = num;
    for d in 1..m {
        if m % d == 0 {
            let phid = cyclotomic_poly(d);
            quot = poly_div_exact(&quot, &phid);
        }
    }
    quot
}

impl CycloField {
    pub fn new(m: u64) -> CycloField {
        let m = m.max(1);
        let min_poly = cyclotomic_poly(m);
        let phi = min_poly.len() - 1;
        // reduction rows for zeta^phi up to the largest power either a
        // product (2*phi - 2) or a raw root of unity (m - 1) can produce
        let highest = (2 * phi).saturating_sub(2).max((m - 1) as usize);
        let rows = (highest + 1).saturating_sub(phi);
        let mut red: Vec<Vec<BigRational>> = Vec::new();
        let to_rat = |v: &BigInt| BigRational::from_integer(v.clone());
        for i in 0..rows {
            // zeta^(phi+i) = zeta * zeta^(phi+i-1); base case from min_poly
            let mut row: Vec<BigRational> = if i == 0 {
                min_poly[..phi].iter().map(|c| -to_rat(c)).collect()
            } else {
                let prev = &red[i - 1];
                let mut shifted = vec![BigRational::zero(); phi + 1];
                for (j, v) in prev.iter().enumerate() {
                    shifted[j + 1] = v.clone();
                }
                let top = shifted[phi].clone();
                let mut row: Vec<BigRational> = shifted[..phi].to_vec();
                if !top.is_zero() {
                    for (j, c) in min_poly[..phi].iter().enumerate() {
                        row[j] -= &top * to_rat(c);
                    }
                }
                row
            };
            row.truncate(phi);
            red.push(row);
        }
        CycloField { m, phi, min_poly, red }
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn zero(&self) -> Cyc {
        Cyc { c: vec![BigRational::zero(); self.phi] }
    }

    pub fn one(&self) -> Cyc {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Cyc {
        let mut c = vec![BigRational::zero(); self.phi];
        c[0] = BigRational::from_integer(v.into());
        Cyc { c }
    }

    pub fn from_rational(&self, num: i64, den: i64) -> Cyc {
        let mut c = vec![BigRational::zero(); self.phi];
        c[0] = BigRational::new(num.into(), den.into());
        Cyc { c }
    }

    /// zeta^k.
    pub fn root_of_unity(&self, k: u64) -> Cyc {
        let k = (k % self.m) as usize;
        let mut long = vec![BigRational::zero(); k + 1];
        long[k] = BigRational::one();
        self.reduce(long)
    }

    fn reduce(&self, mut long: Vec<BigRational>) -> Cyc {
        while long.len() > self.phi {
            let top = long.pop().unwrap();
            let deg = long.len(); // the removed term was zeta^deg
            if top.is_zero() {
                continue;
            }
            let row = &self.red[deg - self.phi];
            for (j, r) in row.iter().enumerate() {
                long[j] += &top * r;
            }
        }
        long.resize(self.phi, BigRational::zero());
        Cyc { c: long }
    }

    pub fn is_zero(&self, a: &Cyc) -> bool {
        a.c.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc { c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect() }
    }

    pub fn neg(&self, a: &Cyc) -> Cyc {
        Cyc { c: a.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc { c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect() }
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let mut long = vec![BigRational::zero(); 2 * self.phi - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    long[i + j] += x * y;
                }
            }
        }
        self.reduce(long)
    }

    pub fn scale(&self, r: &BigRational, a: &Cyc) -> Cyc {
        Cyc { c: a.c.iter().map(|x| x * r).collect() }
    }

    /// Field inverse via the extended Euclidean algorithm against the
    /// minimal polynomial.
    pub fn inv(&self, a: &Cyc) -> Result<Cyc> {
        if self.is_zero(a) {
            return Err(Error::validation("inverse of zero cyclotomic number"));
        }
        // work in Q[x]
        type P = Vec<BigRational>;
        let trim = |mut p: P| -> P {
            while p.last().map_or(false, |v| v.is_zero()) {
                p.pop();
            }
            p
        };
        let minp: P = self.min_poly.iter().map(|v| BigRational::from_integer(v.clone())).collect();
        let mut r0: P = minp;
        let mut r1: P = trim(a.c.clone());
        let mut t0: P = vec![];
        let mut t1: P = vec![BigRational::one()];
        while !r1.is_empty() {
            // divide r0 by r1
            let mut rem = r0.clone();
            let mut q: P = vec![BigRational::zero(); rem.len().saturating_sub(r1.len() - 1)];
            let lead = r1.last().unwrap().clone();
            for i in (0..q.len()).rev() {
                let c = &rem[i + r1.len() - 1] / &lead;
                if !c.is_zero() {
                    q[i] = c.clone();
                    for (j, v) in r1.iter().enumerate() {
                        let t = &c * v;
                        rem[i + j] -= t;
                    }
                }
            }
            let rem = trim(rem);
            // t_new = t0 - q * t1
            let mut tn = t0.clone();
            tn.resize(tn.len().max(q.len() + t1.len()), BigRational::zero());
            for (i, qc) in q.iter().enumerate() {
                if qc.is_zero() {
                    continue;
                }
                for (j, tc) in t1.iter().enumerate() {
                    let v = qc * tc;
                    tn[i + j] -= v;
                }
            }
            let tn = trim(tn);
            r0 = std::mem::replace(&mut r1, rem);
            t0 = std::mem::replace(&mut t1, tn);
        }
        // r0 = gcd, must be a nonzero constant
        if r0.len() != 1 {
            return Err(Error::validation("cyclotomic inverse: gcd not constant"));
        }
        let scale = r0[0].recip();
        let mut c = t0;
        c.resize(self.phi, BigRational::zero());
        for v in c.iter_mut() {
            *v = &*v * &scale;
        }
        Ok(Cyc { c })
    }

    /// Every coefficient denominator is prime to p.
    pub fn is_p_integral(&self, a: &Cyc, p: u64) -> bool {
        let p = BigInt::from(p);
        a.c.iter().all(|v| (v.denom() % &p).abs() != BigInt::zero())
    }

    /// Residue vector mod p^M on the zeta-power basis.
    pub fn to_residue(&self, a: &Cyc, pm: u64) -> Result<Vec<u64>> {
        let pm_big = BigInt::from(pm);
        a.c.iter()
            .map(|v| {
                let den = v.denom().mod_floor_u(&pm_big);
                let num = v.numer().mod_floor_u(&pm_big);
                let dinv = mod_inverse(den, pm).ok_or_else(|| {
                    Error::validation("coefficient is not p-integral")
                })?;
                Ok(num * dinv % pm)
            })
            .collect()
    }

    pub fn coeffs<'a>(&self, a: &'a Cyc) -> &'a [BigRational] {
        &a.c
    }

    pub fn from_coeffs(&self, mut c: Vec<BigRational>) -> Cyc {
        c.resize(self.phi, BigRational::zero());
        Cyc { c }
    }
}

trait ModFloorU {
    fn mod_floor_u(&self, m: &BigInt) -> u64;
}

impl ModFloorU for BigInt {
    fn mod_floor_u(&self, m: &BigInt) -> u64 {
        use num::ToPrimitive;
        let r = ((self % m) + m) % m;
        r.to_u64().expect("residue fits u64")
    }
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (m as i128, (a % m) as i128);
    while nr != 0 {
        let q = r / nr;
        t -= q * nt;
        std::mem::swap(&mut t, &mut nt);
        r -= q * nr;
        std::mem::swap(&mut r, &mut nr);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        let to = |v: &[i64]| -> Vec<BigInt> { v.iter().map(|&x| x.into()).collect() };
        assert_eq!(cyclotomic_poly(1), to(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), to(&[1, 1]));
        assert_eq!(cyclotomic_poly(3), to(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(4), to(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), to(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), to(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn roots_of_unity_multiply() {
        let f = CycloField::new(4);
        let i = f.root_of_unity(1);
        let m1 = f.mul(&i, &i);
        assert_eq!(m1, f.from_i64(-1));
        assert_eq!(f.mul(&m1, &m1), f.one());
    }

    #[test]
    fn zeta_power_sum_vanishes() {
        for m in [2u64, 3, 4, 6, 8] {
            let f = CycloField::new(m);
            let mut s = f.zero();
            for k in 0..m {
                s = f.add(&s, &f.root_of_unity(k));
            }
            assert!(f.is_zero(&s), "m={m}");
        }
    }

    #[test]
    fn inverse_of_one_minus_zeta() {
        let f = CycloField::new(3);
        let x = f.sub(&f.one(), &f.root_of_unity(1));
        let xi = f.inv(&x).unwrap();
        assert_eq!(f.mul(&x, &xi), f.one());
        // norm of 1 - zeta_3 is 3, so the inverse is 3-adically non-integral
        assert!(!f.is_p_integral(&xi, 3));
        assert!(f.is_p_integral(&xi, 2));
    }

    #[test]
    fn residue_reduction() {
        let f = CycloField::new(3);
        let half = f.from_rational(1, 2); // 1/2 mod 27 = 14
        assert_eq!(f.to_residue(&half, 27).unwrap(), vec![14, 0]);
        let third = f.from_rational(1, 3);
        assert!(f.to_residue(&third, 27).is_err());
    }

    #[test]
    fn degenerate_m_one() {
        let f = CycloField::new(1);
        assert_eq!(f.degree(), 1);
        let two = f.from_i64(2);
        assert_eq!(f.mul(&two, &two), f.from_i64(4));
    }
}
