//! The unit group (A/p^n)^* of a prime-power modulus in A = F_q[t], split
//! into its prime-to-p part H = (A/p)^* and p-part G = (1+pA)/(1+p^nA).
//!
//! The whole group is tabulated once: every coprime residue gets its
//! (H, G)-coordinates, so Frobenius classes of monic polynomials are O(1)
//! lookups during series computations. The splitting uses the canonical
//! idempotent powers x -> x^(|G| b) and x -> x^(|H| a) with
//! b = |G|^-1 mod |H|, a = |H|^-1 mod |G|.

use crate::abelian::{AbelianGroup, Elem};
use crate::cyclo::mod_inverse;
use crate::error::{Error, Result};
use crate::ff::poly::{self, FqPoly};
use crate::ff::Fq;
use std::collections::HashMap;

/// Desk-scale bound on |(A/p^n)^*|.
pub const MAX_RAY_ORDER: u64 = 10_000;

#[derive(Clone, Debug)]
pub struct RayClassCtx {
    pub fq: Fq,
    pub prime: FqPoly,
    pub level: u32,
    pub modulus: FqPoly,
    pub h: AbelianGroup,
    pub g: AbelianGroup,
    h_order: u64,
    g_order: u64,
    /// Generator of H as a residue mod p (degree < d).
    h_gen: FqPoly,
    /// Basis of the 1-unit group, orders matching `g.factors()`.
    g_basis: Vec<FqPoly>,
    /// residue key -> (h-coordinate, g-coordinates)
    table: HashMap<u64, (u64, Vec<u64>)>,
    split_exp_h: u64,
    split_exp_g: u64,
}

impl RayClassCtx {
    pub fn new(fq: &Fq, prime: &FqPoly, level: u32) -> Result<RayClassCtx> {
        if level < 1 {
            return Err(Error::validation("level must be >= 1"));
        }
        if !prime.is_monic() || !poly::is_irreducible(fq, prime)? {
            return Err(Error::validation(format!(
                "modulus base {} is not monic irreducible",
                prime.to_text()
            )));
        }
        let d = prime.degree().unwrap() as u32;
        let q = fq.q();
        let nd = (level * d) as usize;
        let total = q.checked_pow(nd as u32).ok_or_else(|| Error::guardrail("q^(n d) overflow"))?;
        let h_order = q.pow(d) - 1;
        let g_order = q.pow((level - 1) * d);
        if h_order * g_order > MAX_RAY_ORDER {
            return Err(Error::guardrail(format!(
                "|(A/p^n)^*| = {} exceeds the desk-scale bound {MAX_RAY_ORDER}",
                h_order * g_order
            )));
        }
        let mut modulus = FqPoly::one();
        for _ in 0..level {
            modulus = poly::mul(fq, &modulus, prime);
        }

        let key = |f: &FqPoly| -> u64 {
            let mut v = 0u64;
            for &c in f.coeffs().iter().rev() {
                v = v * q + c;
            }
            v
        };
        let residue_at = |mut v: u64| -> FqPoly {
            let mut coeffs = Vec::with_capacity(nd);
            for _ in 0..nd {
                coeffs.push(v % q);
                v /= q;
            }
            FqPoly::new(coeffs)
        };

        let mulmod = |a: &FqPoly, b: &FqPoly| -> FqPoly {
            poly::rem(fq, &poly::mul(fq, a, b), &modulus).expect("modulus nonzero")
        };
        let powmod = |a: &FqPoly, mut k: u64| -> FqPoly {
            let mut acc = FqPoly::one();
            let mut base = a.clone();
            while k > 0 {
                if k & 1 == 1 {
                    acc = mulmod(&acc, &base);
                }
                base = mulmod(&base, &base);
                k >>= 1;
            }
            acc
        };

        // H generator: first residue mod p (in key order) of full order
        let mut h_gen = None;
        let prime_factors = factor(h_order);
        'outer: for v in 1..q.pow(d) {
            let f = residue_at(v);
            if f.is_zero() || poly::rem(fq, &f, prime)?.is_zero() {
                continue;
            }
            for &l in &prime_factors {
                if powmod_level1(fq, prime, &f, h_order / l) == FqPoly::one() {
                    continue 'outer;
                }
            }
            h_gen = Some(f);
            break;
        }
        let h_gen = h_gen.ok_or_else(|| Error::validation("no generator of (A/p)^* found"))?;

        // H discrete logs at level 1
        let mut h_dlog: HashMap<u64, u64> = HashMap::new();
        {
            let mut cur = FqPoly::one();
            for k in 0..h_order {
                let kk = key(&poly::rem(fq, &cur, prime)?);
                h_dlog.insert(kk, k);
                cur = poly::rem(fq, &poly::mul(fq, &cur, &h_gen), prime)?;
            }
        }

        // 1-units and their p-group structure
        let one_units: Vec<FqPoly> = (0..total)
            .map(residue_at)
            .filter(|f| poly::rem(fq, f, prime).map(|r| r == FqPoly::one()).unwrap_or(false))
            .collect();
        debug_assert_eq!(one_units.len() as u64, g_order);
        let (g_basis, g_orders, g_coords) =
            p_group_basis(&one_units, &mulmod, &powmod, key)?;
        let g = AbelianGroup::new(g_orders.clone());

        // splitting exponents
        let split_exp_h = g_order * mod_inverse(g_order % h_order.max(1), h_order.max(1)).unwrap_or(0);
        let split_exp_g = if g_order == 1 {
            0
        } else {
            h_order * mod_inverse(h_order % g_order, g_order).expect("coprime orders")
        };

        // full table
        let mut table = HashMap::new();
        for v in 0..total {
            let f = residue_at(v);
            if f.is_zero() || poly::rem(fq, &f, prime)?.is_zero() {
                continue;
            }
            let h_part = powmod(&f, split_exp_h);
            let g_part = if g_order == 1 { FqPoly::one() } else { powmod(&f, split_exp_g) };
            debug_assert_eq!(mulmod(&h_part, &g_part), f);
            let hk = key(&poly::rem(fq, &h_part, prime)?);
            let h_coord = *h_dlog.get(&hk).expect("h part lies in (A/p)^*");
            let g_coord = g_coords.get(&key(&g_part)).expect("g part is a 1-unit").clone();
            table.insert(key(&f), (h_coord, g_coord));
        }

        Ok(RayClassCtx {
            fq: fq.clone(),
            prime: prime.clone(),
            level,
            modulus,
            h: AbelianGroup::cyclic(h_order),
            g,
            h_order,
            g_order,
            h_gen,
            g_basis,
            table,
            split_exp_h,
            split_exp_g,
        })
    }

    pub fn prime_degree(&self) -> u32 {
        self.prime.degree().unwrap() as u32
    }

    pub fn h_order(&self) -> u64 {
        self.h_order
    }

    pub fn g_order(&self) -> u64 {
        self.g_order
    }

    pub fn order(&self) -> u64 {
        self.h_order * self.g_order
    }

    fn residue_key(&self, f: &FqPoly) -> u64 {
        let q = self.fq.q();
        let mut v = 0u64;
        for &c in f.coeffs().iter().rev() {
            v = v * q + c;
        }
        v
    }

    /// (H, G)-coordinates of a polynomial coprime to p.
    pub fn class_of(&self, a: &FqPoly) -> Result<(Elem, Elem)> {
        let r = poly::rem(&self.fq, a, &self.modulus)?;
        match self.table.get(&self.residue_key(&r)) {
            Some((h, g)) => {
                let h_elem = if self.h_order == 1 { vec![] } else { vec![*h] };
                Ok((h_elem, g.clone()))
            }
            None => Err(Error::validation(format!(
                "{} is not coprime to the modulus",
                a.to_text()
            ))),
        }
    }

    /// The canonical H x G splitting of a unit residue, as residues:
    /// h-part = x^(|G| b), g-part = x^(|H| a).
    pub fn hg_split(&self, a: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        if self.class_of(a).is_err() {
            return Err(Error::validation("hg_split needs a residue coprime to p"));
        }
        let r = poly::rem(&self.fq, a, &self.modulus)?;
        let h = self.powmod(&r, self.split_exp_h);
        let g = if self.g_order == 1 { FqPoly::one() } else { self.powmod(&r, self.split_exp_g) };
        Ok((h, g))
    }

    pub fn mulmod(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        poly::rem(&self.fq, &poly::mul(&self.fq, a, b), &self.modulus).expect("modulus nonzero")
    }

    pub fn powmod(&self, a: &FqPoly, mut k: u64) -> FqPoly {
        let mut acc = FqPoly::one();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mulmod(&acc, &base);
            }
            base = self.mulmod(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative order of a residue coprime to p.
    pub fn order_of(&self, a: &FqPoly) -> Result<u64> {
        let (h, g) = self.class_of(a)?;
        let oh = self.h.elem_order(&h);
        let og = self.g.elem_order(&g);
        Ok(num::integer::lcm(oh, og))
    }

    /// Representative residue for abstract (H, G)-coordinates.
    pub fn residue_for(&self, h: &[u64], g: &[u64]) -> FqPoly {
        let mut acc = if self.h_order == 1 {
            FqPoly::one()
        } else {
            // Teichmueller lift of the H generator power
            let lift = self.powmod(&self.h_gen, self.split_exp_h);
            self.powmod(&lift, h[0])
        };
        for (b, &e) in self.g_basis.iter().zip(g) {
            acc = self.mulmod(&acc, &self.powmod(b, e));
        }
        acc
    }

    /// The image of the constants F_q^* in H (generators of the inertia at
    /// infinity). Constants have prime-to-p order so their G-part is
    /// trivial.
    pub fn constant_image_h(&self) -> Result<Vec<Elem>> {
        if self.fq.q() == 2 {
            return Ok(vec![]);
        }
        // a multiplicative generator of F_q^*
        let c0 = (2..self.fq.q())
            .find(|&c| self.fq.order(c).unwrap() == self.fq.q() - 1)
            .unwrap_or(1);
        let (h, g) = self.class_of(&FqPoly::constant(c0))?;
        if !self.g.is_identity(&g) {
            return Err(Error::validation("constant with nontrivial p-part"));
        }
        Ok(vec![h])
    }

    /// Level projection of G-coordinates to a lower-level context for the
    /// same prime.
    pub fn g_projection(&self, lower: &RayClassCtx) -> Result<Vec<Elem>> {
        if lower.prime != self.prime || lower.level > self.level {
            return Err(Error::validation("incompatible level projection"));
        }
        self.g_basis
            .iter()
            .map(|b| Ok(lower.class_of(b)?.1))
            .collect()
    }
}

fn powmod_level1(fq: &Fq, prime: &FqPoly, a: &FqPoly, mut k: u64) -> FqPoly {
    let mut acc = FqPoly::one();
    let mut base = poly::rem(fq, a, prime).unwrap();
    while k > 0 {
        if k & 1 == 1 {
            acc = poly::rem(fq, &poly::mul(fq, &acc, &base), prime).unwrap();
        }
        base = poly::rem(fq, &poly::mul(fq, &base, &base), prime).unwrap();
        k >>= 1;
    }
    acc
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

/// Basis of a finite abelian p-group given as an explicit list of residues
/// closed under the supplied multiplication. Greedy maximal-coset-order
/// construction with an exhaustive verification at the end; orders are
/// returned ascending. Returns (basis, orders, coordinates keyed by
/// residue key) with coordinates matching the ascending order list.
fn p_group_basis(
    elements: &[FqPoly],
    mulmod: &dyn Fn(&FqPoly, &FqPoly) -> FqPoly,
    powmod: &dyn Fn(&FqPoly, u64) -> FqPoly,
    key: impl Fn(&FqPoly) -> u64,
) -> Result<(Vec<FqPoly>, Vec<u64>, HashMap<u64, Vec<u64>>)> {
    let total = elements.len() as u64;
    let one = FqPoly::one();
    if total == 1 {
        let mut coords = HashMap::new();
        coords.insert(key(&one), vec![]);
        return Ok((vec![], vec![], coords));
    }
    // descending-order basis
    let mut basis: Vec<FqPoly> = Vec::new();
    let mut orders_desc: Vec<u64> = Vec::new();
    // subgroup generated so far: key -> coords (descending basis order)
    let mut sub: HashMap<u64, Vec<u64>> = HashMap::new();
    sub.insert(key(&one), vec![]);
    while (sub.len() as u64) < total {
        // maximal coset order, first witness in list order
        let mut best: Option<(&FqPoly, u64)> = None;
        for x in elements {
            if sub.contains_key(&key(x)) {
                continue;
            }
            let mut k = 1;
            let mut cur = x.clone();
            while !sub.contains_key(&key(&cur)) {
                cur = mulmod(&cur, x);
                k += 1;
            }
            if best.map_or(true, |(_, bk)| k > bk) {
                best = Some((x, k));
            }
        }
        let (x, k) = best.expect("proper subgroup has a complement element");
        // representative of x's coset with exact order k
        let mut found = None;
        let mut sub_elems: Vec<u64> = sub.keys().copied().collect();
        sub_elems.sort_unstable();
        for uk in sub_elems {
            let u = elements.iter().find(|e| key(e) == uk).unwrap_or(&one);
            let y = mulmod(x, u);
            if powmod(&y, k) == one {
                found = Some(y);
                break;
            }
        }
        let y = found.ok_or_else(|| {
            Error::validation("p-group basis: no exact-order coset representative")
        })?;
        // extend the subgroup table
        let old: Vec<(u64, Vec<u64>)> = sub.drain().collect();
        let mut next = HashMap::new();
        for (ok, oc) in old {
            let elem = elements.iter().find(|e| key(e) == ok).cloned().unwrap_or(one.clone());
            let mut cur = elem;
            for e in 0..k {
                let mut coords = oc.clone();
                coords.push(e);
                next.insert(key(&cur), coords);
                cur = mulmod(&cur, &y);
            }
        }
        sub = next;
        basis.push(y);
        orders_desc.push(k);
    }
    // verify the decomposition is a bijection
    if sub.len() as u64 != total || orders_desc.iter().product::<u64>() != total {
        return Err(Error::validation("p-group basis verification failed"));
    }
    // ascending invariant-factor order
    let idx: Vec<usize> = (0..basis.len()).rev().collect();
    let basis_asc: Vec<FqPoly> = idx.iter().map(|&i| basis[i].clone()).collect();
    let orders_asc: Vec<u64> = idx.iter().map(|&i| orders_desc[i]).collect();
    for w in orders_asc.windows(2) {
        if w[1] % w[0] != 0 {
            return Err(Error::validation("p-group orders not in divisibility chain"));
        }
    }
    let coords: HashMap<u64, Vec<u64>> = sub
        .into_iter()
        .map(|(k0, c)| (k0, idx.iter().map(|&i| c[i]).collect()))
        .collect();
    Ok((basis_asc, orders_asc, coords))
}
