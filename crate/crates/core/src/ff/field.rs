//! Small finite fields F_q with table-based arithmetic.
//!
//! Elements are stored as integer encodings: an element with prime-field
//! digit vector (c_0, ..., c_{m-1}) is the integer Σ c_i p^i. Addition is
//! digit-wise mod p; multiplication, inversion and powering go through
//! discrete-log tables built once per field. Extension fields F_{q^k} are
//! built on top of a base field by the same mechanism, so the residue
//! fields used by the factorization oracle share all the code below.

use crate::error::{Error, Result};
use crate::ff::poly::FqPoly;

/// Largest field cardinality for which we build exp/log tables.
pub const MAX_TABLE_Q: u64 = 1 << 20;

/// Largest supported base-field cardinality.
pub const MAX_BASE_Q: u64 = 1 << 16;

/// A finite field F_q, q = p^r, with exp/log tables for multiplication.
#[derive(Clone)]
pub struct Fq {
    p: u64,
    q: u64,
    /// Cardinality of the coefficient field of `modulus` (p for base fields).
    base_q: u64,
    /// Degree of this field over the coefficient field of `modulus`.
    deg: usize,
    /// Monic irreducible defining polynomial over the base-q field,
    /// lowest coefficient first, length deg+1. For prime fields this is
    /// the formal [0, 1].
    modulus: Vec<u64>,
    exp: Vec<u64>,
    log: Vec<u64>,
}

impl std::fmt::Debug for Fq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Fq(p={}, q={})", self.p, self.q)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn factor(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Structural (table-free) arithmetic on digit-encoded residues, used only
/// while the tables are being built.
struct RawOps<'a> {
    base: Option<&'a Fq>,
    p: u64,
    base_q: u64,
    deg: usize,
    modulus: &'a [u64],
}

impl<'a> RawOps<'a> {
    fn cadd(&self, a: u64, b: u64) -> u64 {
        match self.base {
            Some(f) => f.add(a, b),
            None => (a + b) % self.p,
        }
    }
    fn cmul(&self, a: u64, b: u64) -> u64 {
        match self.base {
            Some(f) => f.mul(a, b),
            None => (a * b) % self.p,
        }
    }
    fn cneg(&self, a: u64) -> u64 {
        match self.base {
            Some(f) => f.neg(a),
            None => (self.p - a) % self.p,
        }
    }

    fn decode(&self, mut v: u64) -> Vec<u64> {
        let mut out = vec![0; self.deg];
        for slot in out.iter_mut() {
            *slot = v % self.base_q;
            v /= self.base_q;
        }
        out
    }

    fn encode(&self, digits: &[u64]) -> u64 {
        let mut v = 0;
        for &d in digits.iter().rev() {
            v = v * self.base_q + d;
        }
        v
    }

    /// Product of two residues mod the defining polynomial.
    fn mul(&self, a: u64, b: u64) -> u64 {
        let da = self.decode(a);
        let db = self.decode(b);
        let mut prod = vec![0u64; 2 * self.deg];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = self.cadd(prod[i + j], self.cmul(x, y));
            }
        }
        // reduce mod modulus (monic)
        for i in (self.deg..2 * self.deg).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..self.deg {
                let t = self.cmul(c, self.modulus[j]);
                prod[i - self.deg + j] = self.cadd(prod[i - self.deg + j], self.cneg(t));
            }
        }
        self.encode(&prod[..self.deg])
    }

    fn pow(&self, mut a: u64, mut k: u64) -> u64 {
        let mut r = 1;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        r
    }
}

impl Fq {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Fq> {
        if !is_prime(p) || p > MAX_BASE_Q {
            return Err(Error::validation(format!("p = {p} is not a prime <= 2^16")));
        }
        Self::build(None, p, p, 1, vec![0, 1])
    }

    /// F_{p^r} with the canonical defining polynomial: the monic irreducible
    /// of degree r over F_p whose integer encoding Σ c_i p^i of the
    /// non-leading coefficients is least.
    pub fn new(p: u64, r: usize) -> Result<Fq> {
        let prime = Fq::prime(p)?;
        if r == 1 {
            return Ok(prime);
        }
        if r == 0 || p.pow(r as u32) > MAX_BASE_Q {
            return Err(Error::guardrail(format!("q = {p}^{r} exceeds 2^16")));
        }
        let modulus = canonical_modulus(&prime, r)?;
        prime.extension(&modulus)
    }

    /// Extension of `self` by a monic irreducible of degree >= 2.
    pub fn extension(&self, modulus: &FqPoly) -> Result<Fq> {
        let k = modulus.degree().ok_or_else(|| Error::validation("zero modulus"))?;
        if k < 1 {
            return Err(Error::validation("extension degree must be >= 1"));
        }
        if modulus.coeffs()[k] != 1 {
            return Err(Error::validation("extension modulus must be monic"));
        }
        let q = self
            .q
            .checked_pow(k as u32)
            .filter(|&v| v <= MAX_TABLE_Q)
            .ok_or_else(|| Error::guardrail("extension field too large for tables"))?;
        Self::build(Some(self), self.p, q, k, modulus.coeffs().to_vec())
    }

    fn build(base: Option<&Fq>, p: u64, q: u64, deg: usize, modulus: Vec<u64>) -> Result<Fq> {
        let base_q = base.map(|f| f.q).unwrap_or(p);
        let raw = RawOps { base, p, base_q, deg, modulus: &modulus };
        // find a multiplicative generator
        let primes = factor(q - 1);
        let mut gen = 0;
        for cand in 2..q {
            if primes.iter().all(|&l| raw.pow(cand, (q - 1) / l) != 1) {
                gen = cand;
                break;
            }
        }
        if gen == 0 && q > 2 {
            return Err(Error::validation("modulus is not irreducible (no generator found)"));
        }
        if q == 2 {
            gen = 1;
        }
        let mut exp = vec![0u64; (q - 1) as usize];
        let mut log = vec![u64::MAX; q as usize];
        let mut cur = 1u64;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = cur;
            if log[cur as usize] != u64::MAX {
                return Err(Error::validation("modulus is not irreducible (short orbit)"));
            }
            log[cur as usize] = k as u64;
            cur = raw.mul(cur, gen);
        }
        if cur != 1 {
            return Err(Error::validation("modulus is not irreducible"));
        }
        Ok(Fq { p, q, base_q, deg, modulus, exp, log })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Degree over the prime field.
    pub fn degree_over_prime(&self) -> usize {
        let mut d = 0;
        let mut v = self.q;
        while v > 1 {
            v /= self.p;
            d += 1;
        }
        d
    }

    /// Degree over the immediate base field.
    pub fn degree(&self) -> usize {
        self.deg
    }

    /// Defining polynomial over the immediate base field.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        if self.p == 2 {
            return a ^ b;
        }
        let mut out = 0;
        let mut mult = 1;
        let (mut a, mut b) = (a, b);
        while a > 0 || b > 0 {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * mult;
            mult *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let mut out = 0;
        let mut mult = 1;
        let mut a = a;
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * mult;
            mult *= self.p;
            a /= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = self.log[a as usize] + self.log[b as usize];
        self.exp[(k % (self.q - 1)) as usize]
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::validation("inverse of zero field element"));
        }
        let k = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
        Ok(self.exp[k as usize])
    }

    pub fn pow(&self, a: u64, k: i64) -> Result<u64> {
        if a == 0 {
            return if k > 0 {
                Ok(0)
            } else if k == 0 {
                Ok(1)
            } else {
                Err(Error::validation("negative power of zero"))
            };
        }
        let ord = (self.q - 1) as i64;
        let e = k.rem_euclid(ord) as u64;
        let t = self.log[a as usize] * e % (self.q - 1);
        Ok(self.exp[t as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::validation("order of zero"));
        }
        let l = self.log[a as usize];
        Ok((self.q - 1) / num::integer::gcd(l, self.q - 1))
    }

    /// Embed an element of the immediate base field.
    pub fn embed_base(&self, a: u64) -> u64 {
        debug_assert!(a < self.base_q);
        a
    }

    /// Reduce a polynomial over the base field to an element of this
    /// extension field (evaluation at the residue class of the variable).
    pub fn from_base_poly(&self, f: &FqPoly, base: &Fq) -> u64 {
        debug_assert_eq!(base.q, self.base_q);
        let mut acc = 0u64;
        // Horner against the class of the variable; for a degree-1
        // modulus the variable reduces to the constant -modulus[0]
        let x = if self.deg >= 2 {
            self.base_q
        } else {
            self.neg(self.embed_base(self.modulus[0]))
        };
        for &c in f.coeffs().iter().rev() {
            acc = self.mul(acc, x);
            acc = self.add(acc, self.embed_base(c));
        }
        acc
    }
}

/// The canonical monic irreducible of degree r over F_p: least integer
/// encoding of the non-leading coefficient vector.
fn canonical_modulus(prime: &Fq, r: usize) -> Result<FqPoly> {
    let p = prime.q();
    let count = p.pow(r as u32);
    for v in 0..count {
        let mut coeffs: Vec<u64> = Vec::with_capacity(r + 1);
        let mut t = v;
        for _ in 0..r {
            coeffs.push(t % p);
            t /= p;
        }
        coeffs.push(1);
        let f = FqPoly::new(coeffs);
        if crate::ff::poly::is_irreducible(prime, &f)? {
            return Ok(f);
        }
    }
    Err(Error::validation(format!("no irreducible of degree {r} found")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f3 = Fq::prime(3).unwrap();
        assert_eq!(f3.add(2, 2), 1);
        assert_eq!(f3.mul(2, 2), 1);
        assert_eq!(f3.inv(2).unwrap(), 2);
        assert_eq!(f3.neg(1), 2);
    }

    #[test]
    fn f4_tables() {
        let f4 = Fq::new(2, 2).unwrap();
        assert_eq!(f4.q(), 4);
        // x^2 + x + 1 is the only irreducible of degree 2 over F_2
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // the two non-trivial elements are cube roots of unity
        for a in 2..4 {
            assert_eq!(f4.order(a).unwrap(), 3);
        }
        // Frobenius additivity (a+b)^2 = a^2 + b^2
        for a in 0..4 {
            for b in 0..4 {
                let lhs = f4.mul(f4.add(a, b), f4.add(a, b));
                let rhs = f4.add(f4.mul(a, a), f4.mul(b, b));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn f9_field_axioms() {
        let f9 = Fq::new(3, 2).unwrap();
        assert_eq!(f9.q(), 9);
        for a in 1..9 {
            let inv = f9.inv(a).unwrap();
            assert_eq!(f9.mul(a, inv), 1);
        }
        for a in 0..9 {
            for b in 0..9 {
                for c in 0..9 {
                    let lhs = f9.mul(a, f9.add(b, c));
                    let rhs = f9.add(f9.mul(a, b), f9.mul(a, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        let f2 = Fq::prime(2).unwrap();
        // x^2 + 1 = (x+1)^2 over F_2
        let m = FqPoly::new(vec![1, 0, 1]);
        assert!(f2.extension(&m).is_err());
    }
}
