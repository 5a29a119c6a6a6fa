//! Finite-precision Laurent series at the place at infinity.
//!
//! The completion of F_q(t) at infinity is F_q((pi)) with uniformizer
//! pi = 1/t. A value is stored as a valuation, a coefficient window and an
//! absolute precision P: terms of pi-valuation >= P are unknown. Addition
//! keeps the minimum of the operand precisions; multiplication keeps
//! min(val_a + prec_b, val_b + prec_a). All arithmetic is exact within the
//! stated window.

use crate::error::{Error, Result};
use crate::ff::field::Fq;
use crate::ff::poly::FqPoly;

#[derive(Clone, PartialEq, Eq)]
pub struct Laurent {
    /// Valuation of the first stored coefficient. For the zero value the
    /// window is empty and `val == prec`.
    val: i64,
    /// Coefficients of pi^val, pi^(val+1), ...; leading entry nonzero.
    window: Vec<u64>,
    /// Absolute precision: coefficients of pi^k for k >= prec are unknown.
    prec: i64,
}

impl std::fmt::Debug for Laurent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.window.is_empty() {
            return write!(f, "O(pi^{})", self.prec);
        }
        let terms: Vec<String> = self
            .window
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| format!("{}*pi^{}", c, self.val + i as i64))
            .collect();
        write!(f, "{} + O(pi^{})", terms.join(" + "), self.prec)
    }
}

impl Laurent {
    /// Zero known to precision `prec`.
    pub fn zero(prec: i64) -> Laurent {
        Laurent { val: prec, window: vec![], prec }
    }

    pub fn one(prec: i64) -> Laurent {
        Laurent::from_terms(0, vec![1], prec)
    }

    /// Build from a coefficient list starting at valuation `val`,
    /// truncating to precision `prec` and normalizing the leading term.
    pub fn from_terms(val: i64, window: Vec<u64>, prec: i64) -> Laurent {
        let mut val = val;
        let mut window = window;
        if val + window.len() as i64 > prec {
            let keep = (prec - val).max(0) as usize;
            window.truncate(keep);
        }
        while window.first() == Some(&0) {
            window.remove(0);
            val += 1;
        }
        while window.last() == Some(&0) {
            window.pop();
        }
        if window.is_empty() {
            return Laurent::zero(prec);
        }
        Laurent { val, window, prec }
    }

    /// pi^k (exact up to `prec`).
    pub fn pi_pow(k: i64, prec: i64) -> Laurent {
        Laurent::from_terms(k, vec![1], prec)
    }

    /// The image of a polynomial in t = 1/pi: valuation -deg.
    pub fn from_poly(f: &FqPoly, prec: i64) -> Laurent {
        if f.is_zero() {
            return Laurent::zero(prec);
        }
        let d = f.degree().unwrap();
        let window: Vec<u64> = f.coeffs().iter().rev().copied().collect();
        Laurent::from_terms(-(d as i64), window, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.window.is_empty()
    }

    /// Valuation; for an effective zero this is the precision bound.
    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn coeff(&self, k: i64) -> u64 {
        if k < self.val || k >= self.val + self.window.len() as i64 {
            0
        } else {
            self.window[(k - self.val) as usize]
        }
    }

    /// Both values agree on every coefficient below the joint precision.
    pub fn agrees_with(&self, other: &Laurent) -> bool {
        let p = self.prec.min(other.prec);
        let lo = self.val.min(other.val);
        (lo..p).all(|k| self.coeff(k) == other.coeff(k))
    }
}

pub fn add(fq: &Fq, a: &Laurent, b: &Laurent) -> Laurent {
    let prec = a.prec.min(b.prec);
    if a.is_zero() && b.is_zero() {
        return Laurent::zero(prec);
    }
    let lo = a.val.min(b.val);
    let hi = (a.val + a.window.len() as i64).max(b.val + b.window.len() as i64);
    let mut window = Vec::with_capacity((hi - lo) as usize);
    for k in lo..hi {
        window.push(fq.add(a.coeff(k), b.coeff(k)));
    }
    Laurent::from_terms(lo, window, prec)
}

pub fn neg(fq: &Fq, a: &Laurent) -> Laurent {
    Laurent { val: a.val, window: a.window.iter().map(|&c| fq.neg(c)).collect(), prec: a.prec }
}

pub fn sub(fq: &Fq, a: &Laurent, b: &Laurent) -> Laurent {
    add(fq, a, &neg(fq, b))
}

pub fn mul(fq: &Fq, a: &Laurent, b: &Laurent) -> Laurent {
    // unknown tails enter at val_a + prec_b and val_b + prec_a
    let prec = (a.val + b.prec).min(b.val + a.prec);
    if a.is_zero() || b.is_zero() {
        return Laurent::zero(prec);
    }
    let lo = a.val + b.val;
    let n = ((prec - lo).max(0)) as usize;
    let mut window = vec![0u64; n.min(a.window.len() + b.window.len())];
    for (i, &x) in a.window.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.window.iter().enumerate() {
            if i + j < window.len() {
                window[i + j] = fq.add(window[i + j], fq.mul(x, y));
            }
        }
    }
    Laurent::from_terms(lo, window, prec)
}

pub fn scale(fq: &Fq, c: u64, a: &Laurent) -> Laurent {
    if c == 0 {
        return Laurent::zero(a.prec);
    }
    Laurent::from_terms(a.val, a.window.iter().map(|&x| fq.mul(c, x)).collect(), a.prec)
}

/// Invert a value with known nonzero leading term. The result has relative
/// precision equal to the operand's: absolute precision prec - 2*val.
pub fn inv(fq: &Fq, a: &Laurent) -> Result<Laurent> {
    if a.is_zero() {
        return Err(Error::Precision(format!(
            "inverse of an effective zero (O(pi^{}))",
            a.prec
        )));
    }
    let rel = (a.prec - a.val) as usize; // number of known coefficients
    let lead_inv = fq.inv(a.window[0])?;
    // long division of 1 by the normalized window
    let mut out = Vec::with_capacity(rel);
    let mut remainder = vec![0u64; rel];
    remainder[0] = 1;
    for k in 0..rel {
        let c = fq.mul(remainder[k], lead_inv);
        out.push(c);
        if c != 0 {
            for (j, &w) in a.window.iter().enumerate() {
                if k + j < rel {
                    remainder[k + j] = fq.sub(remainder[k + j], fq.mul(c, w));
                }
            }
        }
    }
    Ok(Laurent::from_terms(-a.val, out, -a.val + rel as i64))
}

pub fn pow(fq: &Fq, a: &Laurent, k: i64) -> Result<Laurent> {
    if k < 0 {
        let i = inv(fq, a)?;
        return pow(fq, &i, -k);
    }
    let mut out = Laurent::one(a.prec + 1); // precision settles via mul rules
    let mut base = a.clone();
    let mut k = k as u64;
    if k == 0 {
        // exact one at the operand's relative precision
        return Ok(Laurent::one(a.prec - a.val));
    }
    while k > 0 {
        if k & 1 == 1 {
            out = mul(fq, &out, &base);
        }
        k >>= 1;
        if k > 0 {
            base = mul(fq, &base, &base);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_one_plus_minus_pi() {
        let f3 = Fq::prime(3).unwrap();
        let a = Laurent::from_terms(0, vec![1, 1], 5); // 1 + pi
        let b = Laurent::from_terms(0, vec![1, 2], 5); // 1 - pi
        let p = mul(&f3, &a, &b);
        assert_eq!(p, Laurent::from_terms(0, vec![1, 0, 2], 5)); // 1 - pi^2
    }

    #[test]
    fn geometric_inverse() {
        let f3 = Fq::prime(3).unwrap();
        let a = Laurent::from_terms(0, vec![1, 1], 3); // 1 + pi
        let i = inv(&f3, &a).unwrap();
        assert_eq!(i, Laurent::from_terms(0, vec![1, 2, 1], 3)); // 1 - pi + pi^2
    }

    #[test]
    fn valuation_of_polynomial() {
        let f = FqPoly::new(vec![0, 1, 0, 1]); // t^3 + t
        let l = Laurent::from_poly(&f, 10);
        assert_eq!(l.val(), -3);
    }

    #[test]
    fn inverse_of_effective_zero_fails() {
        let f3 = Fq::prime(3).unwrap();
        assert!(inv(&f3, &Laurent::zero(4)).is_err());
    }

    #[test]
    fn precision_propagation_on_add() {
        let f3 = Fq::prime(3).unwrap();
        let a = Laurent::from_terms(0, vec![1, 1, 1, 1], 4);
        let b = Laurent::from_terms(2, vec![2], 7);
        let s = add(&f3, &a, &b);
        assert_eq!(s.prec(), 4);
        assert_eq!(s.coeff(2), 0);
    }

    #[test]
    fn higher_precision_agrees_on_overlap() {
        let f3 = Fq::prime(3).unwrap();
        let mk = |p: i64| {
            let a = Laurent::from_terms(0, vec![1, 2, 1, 1, 2, 1, 2, 2, 1, 1], p);
            let b = inv(&f3, &a).unwrap();
            mul(&f3, &b, &b)
        };
        assert!(mk(6).agrees_with(&mk(10)));
    }
}
