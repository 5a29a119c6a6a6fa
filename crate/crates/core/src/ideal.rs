//! Ideal comparison in finite truncations of cyclotomic group rings.
//!
//! A group-ring ideal with p-integral generators is compared after
//! truncating the coefficient ring to W/p^M: the ring becomes a free
//! Z/p^M-module of rank |G| * phi(m) and the ideal becomes the row span of
//! the generator translates. Row spans over Z/p^M are canonicalized by the
//! Howell normal form, which (unlike plain echelon form) supports both
//! membership tests and equality of spans.

use crate::abelian::AbelianGroup;
use crate::cyclo::{Cyc, CycloField};
use crate::error::{Error, Result};
use crate::gring::{self, GrElem};

/// Ring spec for truncated comparisons: (W/p^M)[G] with W realized on the
/// zeta-power basis of Q(zeta_m).
#[derive(Clone, Debug)]
pub struct IdealCtx {
    pub group: AbelianGroup,
    pub field: CycloField,
    pub p: u64,
    pub trunc: u32,
}

#[derive(Clone, Debug)]
pub struct IdealHandle {
    pub ctx: IdealCtx,
    pub generators: Vec<GrElem<Cyc>>,
}

impl IdealCtx {
    pub fn new(group: AbelianGroup, field: CycloField, p: u64, trunc: u32) -> Result<IdealCtx> {
        let pm = p.checked_pow(trunc).filter(|&v| v < (1 << 31)).ok_or_else(|| {
            Error::guardrail(format!("truncation p^M = {p}^{trunc} too large"))
        })?;
        let _ = pm;
        Ok(IdealCtx { group, field, p, trunc })
    }

    pub fn pm(&self) -> u64 {
        self.p.pow(self.trunc)
    }

    pub fn row_len(&self) -> usize {
        self.group.order() as usize * self.field.degree()
    }

    /// Flatten a group-ring element to its residue row; fails when a
    /// coefficient is not p-integral.
    pub fn flatten(&self, a: &GrElem<Cyc>) -> Result<Vec<u64>> {
        let phi = self.field.degree();
        let mut row = vec![0u64; self.row_len()];
        for (k, v) in &a.coeffs {
            let res = self.field.to_residue(v, self.pm())?;
            for (j, r) in res.into_iter().enumerate() {
                row[*k as usize * phi + j] = r;
            }
        }
        Ok(row)
    }

    /// All rows spanning the ideal generated by `gens` as a Z/p^M-module:
    /// each generator times each zeta-power basis element times each group
    /// element.
    fn span_rows(&self, gens: &[GrElem<Cyc>]) -> Result<Vec<Vec<u64>>> {
        let mut rows = Vec::new();
        for gen in gens {
            for a in 0..self.field.degree() as u64 {
                let za = self.field.root_of_unity(a % self.field.order().max(1));
                // zeta^a for a < phi is a basis power, no reduction happens
                let scaled = gring::scale(&self.field, &za, gen);
                for x in self.group.elements() {
                    let t = gring::translate(&self.group, &x, &scaled);
                    rows.push(self.flatten(&t)?);
                }
            }
        }
        Ok(rows)
    }

    pub fn howell_basis(&self, gens: &[GrElem<Cyc>]) -> Result<Vec<Vec<u64>>> {
        Ok(howell(self.span_rows(gens)?, self.row_len(), self.p, self.pm()))
    }
}

fn val_p(mut x: u64, p: u64, max: u32) -> u32 {
    if x == 0 {
        return max;
    }
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Howell normal form of a row span inside (Z/p^M)^n. The result is the
/// unique reduced basis: pivots are powers of p in strictly increasing
/// column order, all other entries in a pivot column are reduced mod the
/// pivot, and the span is preserved including its annihilator structure.
pub fn howell(rows: Vec<Vec<u64>>, n: usize, p: u64, pm: u64) -> Vec<Vec<u64>> {
    let max_v = val_p(pm, p, 64) as u32;
    let mut work: Vec<Vec<u64>> = rows
        .into_iter()
        .map(|mut r| {
            for x in r.iter_mut() {
                *x %= pm;
            }
            r
        })
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    let mut done: Vec<Vec<u64>> = Vec::new();
    for col in 0..n {
        // pick the working row with minimal valuation in this column
        let mut best: Option<(usize, u32)> = None;
        for (i, r) in work.iter().enumerate() {
            if r[col] != 0 {
                let v = val_p(r[col], p, max_v);
                if best.map_or(true, |(_, bv)| v < bv) {
                    best = Some((i, v));
                }
            }
        }
        let Some((bi, v)) = best else { continue };
        let mut piv = work.swap_remove(bi);
        // normalize so the pivot entry is exactly p^v
        let unit = piv[col] / p.pow(v);
        let uinv = crate::cyclo::mod_inverse(unit, pm).expect("unit inverse mod p^M");
        for x in piv.iter_mut() {
            *x = *x * uinv % pm;
        }
        let pv = p.pow(v);
        // eliminate this column from the remaining working rows (all have
        // valuation >= v here) and reduce it in the finished rows
        for r in work.iter_mut() {
            if r[col] != 0 {
                let f = r[col] / pv;
                for (x, y) in r.iter_mut().zip(&piv) {
                    *x = (*x + (pm - f % pm) * y) % pm;
                }
            }
        }
        for r in done.iter_mut() {
            if r[col] >= pv {
                let f = r[col] / pv;
                for (x, y) in r.iter_mut().zip(&piv) {
                    *x = (*x + (pm - f % pm) * y) % pm;
                }
            }
        }
        // annihilator companion keeps the span property for later columns
        if v > 0 {
            let mult = pm / pv;
            let ann: Vec<u64> = piv.iter().map(|&x| x * mult % pm).collect();
            if ann.iter().any(|&x| x != 0) {
                work.push(ann);
            }
        }
        work.retain(|r| r.iter().any(|&x| x != 0));
        done.push(piv);
    }
    done
}

/// Pivot structure of a Howell basis: (column, valuation) per row.
fn pivots(basis: &[Vec<u64>], p: u64, pm: u64) -> Vec<(usize, u32)> {
    let max_v = val_p(pm, p, 64);
    basis
        .iter()
        .map(|r| {
            let col = r.iter().position(|&x| x != 0).expect("nonzero basis row");
            (col, val_p(r[col], p, max_v))
        })
        .collect()
}

/// Reduce a vector against a Howell basis; returns the residue.
fn reduce_vector(basis: &[Vec<u64>], mut w: Vec<u64>, pm: u64) -> Vec<u64> {
    for r in basis {
        let col = r.iter().position(|&x| x != 0).expect("nonzero basis row");
        let pv = r[col];
        if w[col] != 0 && w[col] % pv == 0 {
            let f = w[col] / pv;
            for (x, y) in w.iter_mut().zip(r) {
                *x = (*x + (pm - f % pm) * y) % pm;
            }
        }
    }
    w
}

impl IdealHandle {
    pub fn new(ctx: IdealCtx, generators: Vec<GrElem<Cyc>>) -> IdealHandle {
        IdealHandle { ctx, generators }
    }

    pub fn basis(&self) -> Result<Vec<Vec<u64>>> {
        self.ctx.howell_basis(&self.generators)
    }

    pub fn contains(&self, x: &GrElem<Cyc>) -> Result<bool> {
        let basis = self.basis()?;
        let w = self.ctx.flatten(x)?;
        let r = reduce_vector(&basis, w, self.ctx.pm());
        Ok(r.iter().all(|&v| v == 0))
    }

    pub fn contains_ideal(&self, other: &IdealHandle) -> Result<bool> {
        let basis = self.basis()?;
        for g in &other.generators {
            for x in self.ctx.group.elements() {
                let t = gring::translate(&self.ctx.group, &x, g);
                let w = self.ctx.flatten(&t)?;
                let r = reduce_vector(&basis, w, self.ctx.pm());
                if r.iter().any(|&v| v != 0) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &IdealHandle) -> Result<bool> {
        Ok(self.basis()? == other.basis()?)
    }

    /// log_p of the index of the ideal inside the truncated ring. Columns
    /// without a pivot contribute a full p^M factor, so for an ideal of
    /// finite index the value is independent of M once M is large enough.
    pub fn quotient_log_p(&self) -> Result<u32> {
        let basis = self.basis()?;
        let pv = pivots(&basis, self.ctx.p, self.ctx.pm());
        let mut total = 0u32;
        let mut have = vec![false; self.ctx.row_len()];
        for (col, v) in pv {
            have[col] = true;
            total += v;
        }
        for h in have {
            if !h {
                total += self.ctx.trunc;
            }
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gring::{term, IntRing};

    fn z2_ring(trunc: u32) -> IdealCtx {
        IdealCtx::new(AbelianGroup::cyclic(2), CycloField::new(1), 2, trunc).unwrap()
    }

    fn z3_ring(trunc: u32) -> IdealCtx {
        IdealCtx::new(AbelianGroup::cyclic(3), CycloField::new(1), 3, trunc).unwrap()
    }

    fn gen_of(ctx: &IdealCtx, terms: &[(Vec<u64>, i64)]) -> GrElem<Cyc> {
        let ring = IntRing;
        let mut x = GrElem::zero();
        for (k, c) in terms {
            gring::add_assign(&ring, &mut x, &term(&ring, ctx.group.index_of(k), *c));
        }
        gring::to_cyclo(&ctx.field, &x)
    }

    #[test]
    fn generator_order_is_irrelevant() {
        // (2, sigma - 1) = (sigma - 1, 2) over Z/8[Z/2]
        let ctx = z2_ring(3);
        let two = gen_of(&ctx, &[(vec![0], 2)]);
        let sm1 = gen_of(&ctx, &[(vec![1], 1), (vec![0], -1)]);
        let a = IdealHandle::new(ctx.clone(), vec![two.clone(), sm1.clone()]);
        let b = IdealHandle::new(ctx.clone(), vec![sm1.clone(), two.clone()]);
        let c = IdealHandle::new(ctx.clone(), vec![sm1.clone(), two.clone(), sm1]);
        assert!(a.equals(&b).unwrap());
        assert!(a.equals(&c).unwrap());
    }

    #[test]
    fn p_times_translate_membership() {
        let ctx = z2_ring(3);
        let p = gen_of(&ctx, &[(vec![0], 2)]);
        let ideal = IdealHandle::new(ctx.clone(), vec![p]);
        let x = gen_of(&ctx, &[(vec![1], 2)]);
        assert!(ideal.contains(&x).unwrap());
        let y = gen_of(&ctx, &[(vec![1], 1)]);
        assert!(!ideal.contains(&y).unwrap());
    }

    /// Exhaustive ideal enumeration oracle in a small finite group ring:
    /// close the generator set under addition and multiplication by every
    /// ring element.
    fn enumerate_ideal(ctx: &IdealCtx, gens: &[GrElem<Cyc>]) -> std::collections::BTreeSet<Vec<u64>> {
        let pm = ctx.pm();
        let n = ctx.row_len();
        // all ring elements as multiplier rows: group translates times scalars
        let mut members = std::collections::BTreeSet::new();
        let mut frontier: Vec<Vec<u64>> = Vec::new();
        for g in gens {
            for x in ctx.group.elements() {
                let t = gring::translate(&ctx.group, &x, g);
                let row = ctx.flatten(&t).unwrap();
                frontier.push(row);
            }
        }
        members.insert(vec![0u64; n]);
        // span over Z/pm by BFS on additions of scalar multiples
        let mut stack: Vec<Vec<u64>> = vec![vec![0u64; n]];
        while let Some(cur) = stack.pop() {
            for f in &frontier {
                for s in 1..pm {
                    let mut nxt = cur.clone();
                    for (a, b) in nxt.iter_mut().zip(f) {
                        *a = (*a + s * b) % pm;
                    }
                    if members.insert(nxt.clone()) {
                        stack.push(nxt);
                    }
                }
            }
        }
        members
    }

    #[test]
    fn square_of_augmentation_differs_over_z9() {
        // (sigma-1)^2 vs (sigma-1) over Z/9[Z/3]: derived by exhaustive
        // enumeration of both ideals
        let ctx = z3_ring(2);
        let s = gen_of(&ctx, &[(vec![1], 1), (vec![0], -1)]);
        let s2 = {
            let sq = gring::mul(&ctx.group, &ctx.field, &s, &s);
            sq
        };
        let i1 = IdealHandle::new(ctx.clone(), vec![s.clone()]);
        let i2 = IdealHandle::new(ctx.clone(), vec![s2.clone()]);
        assert!(!i1.equals(&i2).unwrap());
        assert!(i1.contains_ideal(&i2).unwrap());
        assert!(!i2.contains_ideal(&i1).unwrap());
        // oracle agreement
        let e1 = enumerate_ideal(&ctx, &[s]);
        let e2 = enumerate_ideal(&ctx, &[s2]);
        assert!(e2.is_subset(&e1));
        assert_ne!(e1, e2);
        // Howell index matches the enumerated index
        let n = ctx.row_len() as u32;
        let log1 = i1.quotient_log_p().unwrap();
        assert_eq!(3u64.pow(2 * n - log1), e1.len() as u64);
        let log2 = i2.quotient_log_p().unwrap();
        assert_eq!(3u64.pow(2 * n - log2), e2.len() as u64);
    }

    #[test]
    fn howell_membership_on_annihilator_structure() {
        // span of (2, 2) over Z/4 contains (0, 2)? No; but span of (2, 0)
        // and (0, 2) does. The Howell form distinguishes these.
        let r1 = howell(vec![vec![2, 2]], 2, 2, 4);
        let red = reduce_vector(&r1, vec![0, 2], 4);
        assert!(red.iter().any(|&v| v != 0));
        let r2 = howell(vec![vec![2, 0], vec![0, 2]], 2, 2, 4);
        let red2 = reduce_vector(&r2, vec![0, 2], 4);
        assert!(red2.iter().all(|&v| v == 0));
    }

    #[test]
    fn howell_canonical_under_row_mixing() {
        // the same span presented two ways must produce identical bases
        let a = howell(vec![vec![1, 2, 3], vec![0, 4, 2], vec![0, 0, 4]], 3, 2, 8);
        let b = howell(
            vec![vec![1, 6, 5], vec![0, 4, 6], vec![0, 4, 2], vec![2, 4, 6]],
            3,
            2,
            8,
        );
        assert_eq!(a, b);
    }
}
