//! Commutative group rings over exact coefficient rings.
//!
//! Elements are sparse maps from packed group-element indices to
//! coefficients; the group and the coefficient context are passed to each
//! operation. Two coefficient rings are used: plain integers (Stickelberger
//! series before a character is applied) and cyclotomic rationals.

use crate::abelian::{AbelianGroup, Elem};
use crate::cyclo::{Cyc, CycloField};
use std::collections::BTreeMap;

/// Coefficient-ring context for group-ring arithmetic.
pub trait CoeffRing {
    type El: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn from_i64(&self, v: i64) -> Self::El;
}

/// The integers, with overflow checks.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntRing;

impl CoeffRing for IntRing {
    type El = i64;
    fn zero(&self) -> i64 {
        0
    }
    fn one(&self) -> i64 {
        1
    }
    fn is_zero(&self, a: &i64) -> bool {
        *a == 0
    }
    fn add(&self, a: &i64, b: &i64) -> i64 {
        a.checked_add(*b).expect("group-ring integer overflow")
    }
    fn neg(&self, a: &i64) -> i64 {
        -a
    }
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a.checked_mul(*b).expect("group-ring integer overflow")
    }
    fn from_i64(&self, v: i64) -> i64 {
        v
    }
}

impl CoeffRing for CycloField {
    type El = Cyc;
    fn zero(&self) -> Cyc {
        CycloField::zero(self)
    }
    fn one(&self) -> Cyc {
        CycloField::one(self)
    }
    fn is_zero(&self, a: &Cyc) -> bool {
        CycloField::is_zero(self, a)
    }
    fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        CycloField::add(self, a, b)
    }
    fn neg(&self, a: &Cyc) -> Cyc {
        CycloField::neg(self, a)
    }
    fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        CycloField::mul(self, a, b)
    }
    fn from_i64(&self, v: i64) -> Cyc {
        CycloField::from_i64(self, v)
    }
}

/// A group-ring element: sparse coefficient map keyed by packed indices.
#[derive(Clone, PartialEq, Debug)]
pub struct GrElem<El> {
    pub coeffs: BTreeMap<u32, El>,
}

impl<El> Default for GrElem<El> {
    fn default() -> Self {
        GrElem { coeffs: BTreeMap::new() }
    }
}

impl<El> GrElem<El> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> usize {
        self.coeffs.len()
    }
}

pub fn term<R: CoeffRing>(ring: &R, key: u32, c: R::El) -> GrElem<R::El> {
    let mut out = GrElem::zero();
    if !ring.is_zero(&c) {
        out.coeffs.insert(key, c);
    }
    out
}

pub fn one<R: CoeffRing>(group: &AbelianGroup, ring: &R) -> GrElem<R::El> {
    term(ring, group.index_of(&group.identity()), ring.one())
}

pub fn add_assign<R: CoeffRing>(ring: &R, a: &mut GrElem<R::El>, b: &GrElem<R::El>) {
    for (k, v) in &b.coeffs {
        let cur = a.coeffs.remove(k);
        let nv = match cur {
            Some(x) => ring.add(&x, v),
            None => v.clone(),
        };
        if !ring.is_zero(&nv) {
            a.coeffs.insert(*k, nv);
        }
    }
}

pub fn add<R: CoeffRing>(ring: &R, a: &GrElem<R::El>, b: &GrElem<R::El>) -> GrElem<R::El> {
    let mut out = a.clone();
    add_assign(ring, &mut out, b);
    out
}

pub fn neg<R: CoeffRing>(ring: &R, a: &GrElem<R::El>) -> GrElem<R::El> {
    GrElem { coeffs: a.coeffs.iter().map(|(k, v)| (*k, ring.neg(v))).collect() }
}

pub fn sub<R: CoeffRing>(ring: &R, a: &GrElem<R::El>, b: &GrElem<R::El>) -> GrElem<R::El> {
    add(ring, a, &neg(ring, b))
}

pub fn scale<R: CoeffRing>(ring: &R, c: &R::El, a: &GrElem<R::El>) -> GrElem<R::El> {
    if ring.is_zero(c) {
        return GrElem::zero();
    }
    let mut out = GrElem::zero();
    for (k, v) in &a.coeffs {
        let nv = ring.mul(c, v);
        if !ring.is_zero(&nv) {
            out.coeffs.insert(*k, nv);
        }
    }
    out
}

pub fn mul<R: CoeffRing>(
    group: &AbelianGroup,
    ring: &R,
    a: &GrElem<R::El>,
    b: &GrElem<R::El>,
) -> GrElem<R::El> {
    let mut out: BTreeMap<u32, R::El> = BTreeMap::new();
    for (ka, va) in &a.coeffs {
        let ea = group.elem_at(*ka);
        for (kb, vb) in &b.coeffs {
            let eb = group.elem_at(*kb);
            let k = group.index_of(&group.add(&ea, &eb));
            let prod = ring.mul(va, vb);
            match out.remove(&k) {
                Some(cur) => {
                    let s = ring.add(&cur, &prod);
                    if !ring.is_zero(&s) {
                        out.insert(k, s);
                    }
                }
                None => {
                    if !ring.is_zero(&prod) {
                        out.insert(k, prod);
                    }
                }
            }
        }
    }
    GrElem { coeffs: out }
}

/// Translation by a single group element.
pub fn translate<El: Clone>(group: &AbelianGroup, g: &Elem, a: &GrElem<El>) -> GrElem<El> {
    let mut out = GrElem::zero();
    for (k, v) in &a.coeffs {
        let e = group.elem_at(*k);
        out.coeffs.insert(group.index_of(&group.add(&e, g)), v.clone());
    }
    out
}

/// n(N) = sum of the listed subgroup elements.
pub fn norm_element<R: CoeffRing>(
    group: &AbelianGroup,
    ring: &R,
    members: &[Elem],
) -> GrElem<R::El> {
    let mut out = GrElem::zero();
    for x in members {
        out.coeffs.insert(group.index_of(x), ring.one());
    }
    out
}

/// Sum of all coefficients (image under the augmentation map).
pub fn augmentation<R: CoeffRing>(ring: &R, a: &GrElem<R::El>) -> R::El {
    let mut acc = ring.zero();
    for v in a.coeffs.values() {
        acc = ring.add(&acc, v);
    }
    acc
}

/// Push forward along a group map (sums coefficients over fibers).
pub fn map_keys<R: CoeffRing>(
    src: &AbelianGroup,
    dst: &AbelianGroup,
    ring: &R,
    f: impl Fn(&Elem) -> Elem,
    a: &GrElem<R::El>,
) -> GrElem<R::El> {
    let mut out = GrElem::zero();
    for (k, v) in &a.coeffs {
        let key = dst.index_of(&f(&src.elem_at(*k)));
        let cur = out.coeffs.remove(&key);
        let nv = match cur {
            Some(x) => ring.add(&x, v),
            None => v.clone(),
        };
        if !ring.is_zero(&nv) {
            out.coeffs.insert(key, nv);
        }
    }
    out
}

/// Corestriction along a projection pi: big -> quot: a coset class maps to
/// the sum of its lifts.
pub fn corestrict<El: Clone>(
    big: &AbelianGroup,
    quot: &AbelianGroup,
    pi: impl Fn(&Elem) -> Elem,
    a: &GrElem<El>,
) -> GrElem<El> {
    // bucket the big group by image
    let mut out = GrElem::zero();
    if a.is_zero() {
        return out;
    }
    for y in big.elements() {
        let key = quot.index_of(&pi(&y));
        if let Some(v) = a.coeffs.get(&key) {
            out.coeffs.insert(big.index_of(&y), v.clone());
        }
    }
    out
}

/// Convert an integer group-ring element into cyclotomic coefficients.
pub fn to_cyclo(f: &CycloField, a: &GrElem<i64>) -> GrElem<Cyc> {
    GrElem { coeffs: a.coeffs.iter().map(|(k, v)| (*k, f.from_i64(*v))).collect() }
}

/// The Galois group of a two-step cover, identified with H x G. Keys of
/// group-ring elements over `full` split into an H-part (the leading
/// factors) and a G-part.
#[derive(Clone, Debug)]
pub struct SplitGroup {
    pub full: AbelianGroup,
    pub h: AbelianGroup,
    pub g: AbelianGroup,
}

impl SplitGroup {
    pub fn new(h: AbelianGroup, g: AbelianGroup) -> SplitGroup {
        SplitGroup { full: h.product(&g), h, g }
    }

    pub fn join(&self, h: &[u64], g: &[u64]) -> Elem {
        let mut e = Vec::with_capacity(h.len() + g.len());
        e.extend_from_slice(h);
        e.extend_from_slice(g);
        e
    }

    pub fn split(&self, x: &Elem) -> (Elem, Elem) {
        let r = self.h.rank();
        (x[..r].to_vec(), x[r..].to_vec())
    }

    /// Apply a character of H coefficientwise: (h, g) -> chi(h) * g. The
    /// result lives over G with cyclotomic coefficients; `f` must be the
    /// cyclotomic field of order divisible by the character's order.
    pub fn apply_character_h(
        &self,
        f: &CycloField,
        chi: &[u64],
        a: &GrElem<i64>,
    ) -> GrElem<Cyc> {
        let mut out: GrElem<Cyc> = GrElem::zero();
        let e = self.h.exponent().max(1);
        debug_assert_eq!(f.order() % e, 0);
        let lift = f.order() / e;
        for (k, v) in &a.coeffs {
            let x = self.full.elem_at(*k);
            let (hp, gp) = self.split(&x);
            let zeta = f.root_of_unity(self.h.char_pairing(chi, &hp) * lift);
            let c = f.mul(&zeta, &f.from_i64(*v));
            let key = self.g.index_of(&gp);
            let cur = out.coeffs.remove(&key);
            let nv = match cur {
                Some(prev) => f.add(&prev, &c),
                None => c,
            };
            if !CycloField::is_zero(f, &nv) {
                out.coeffs.insert(key, nv);
            }
        }
        out
    }

    /// The idempotent e_chi = (1/|H|) sum_h chi(h^-1) h, an element of the
    /// full group ring supported on H x {0}.
    pub fn idempotent(&self, f: &CycloField, chi: &[u64]) -> GrElem<Cyc> {
        let e = self.h.exponent().max(1);
        let lift = f.order() / e;
        let inv_h = f.from_rational(1, self.h.order() as i64);
        let mut out = GrElem::zero();
        for hp in self.h.elements() {
            let pairing = self.h.char_pairing(chi, &self.h.neg(&hp));
            let c = f.mul(&f.root_of_unity(pairing * lift), &inv_h);
            let key = self.full.index_of(&self.join(&hp, &self.g.identity()));
            out.coeffs.insert(key, c);
        }
        out
    }

    /// Embed an element over G into the full ring (H-part = identity).
    pub fn embed_g(&self, f: &CycloField, a: &GrElem<Cyc>) -> GrElem<Cyc> {
        let mut out = GrElem::zero();
        for (k, v) in &a.coeffs {
            let gp = self.g.elem_at(*k);
            let key = self.full.index_of(&self.join(&self.h.identity(), &gp));
            out.coeffs.insert(key, v.clone());
        }
        let _ = f;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2z3() -> SplitGroup {
        SplitGroup::new(AbelianGroup::cyclic(2), AbelianGroup::cyclic(3))
    }

    #[test]
    fn norm_absorbs_translations() {
        let sg = z2z3();
        let ring = IntRing;
        let members: Vec<_> = sg.full.span(&[vec![1, 0]]);
        let n = norm_element(&sg.full, &ring, &members);
        for m in &members {
            let t = translate(&sg.full, m, &n);
            assert_eq!(t, n);
        }
        // (1 - sigma) * n(<sigma>) = 0
        let sigma = term(&ring, sg.full.index_of(&vec![1, 0]), 1i64);
        let one_e = one(&sg.full, &ring);
        let d = sub(&ring, &one_e, &sigma);
        assert!(mul(&sg.full, &ring, &d, &n).is_zero());
    }

    #[test]
    fn idempotents_are_idempotent_and_sum_to_one() {
        let sg = z2z3();
        let f = CycloField::new(2);
        let mut total: GrElem<Cyc> = GrElem::zero();
        for chi in sg.h.elements() {
            let e = sg.idempotent(&f, &chi);
            let e2 = mul(&sg.full, &f, &e, &e);
            assert_eq!(e2, e);
            total = add(&f, &total, &e);
        }
        assert_eq!(total, one(&sg.full, &f));
    }

    #[test]
    fn character_application() {
        let sg = z2z3();
        let f = CycloField::new(2);
        let ring = IntRing;
        // n(H): trivial character sums the fiber, nontrivial kills it
        let h_members: Vec<_> = sg.full.span(&[vec![1, 0]]);
        let n_h = norm_element(&sg.full, &ring, &h_members);
        let triv = sg.apply_character_h(&f, &[0], &n_h);
        assert_eq!(triv, term(&f, sg.g.index_of(&vec![0]), f.from_i64(2)));
        let quad = sg.apply_character_h(&f, &[1], &n_h);
        assert!(quad.is_zero());
        // a single H-element maps to chi(h) * identity
        let h0 = term(&ring, sg.full.index_of(&vec![1, 0]), 1i64);
        let v = sg.apply_character_h(&f, &[1], &h0);
        assert_eq!(v, term(&f, sg.g.index_of(&vec![0]), f.from_i64(-1)));
    }

    #[test]
    fn chi_part_decomposition_reassembles() {
        // x = sum over chi of (chi-part embedded) * e_chi, exactly
        let sg = z2z3();
        let f = CycloField::new(2);
        let ring = IntRing;
        let mut x: GrElem<i64> = GrElem::zero();
        for (i, key) in [(3i64, vec![0u64, 1u64]), (-2, vec![1, 2]), (7, vec![1, 0])] {
            add_assign(&ring, &mut x, &term(&ring, sg.full.index_of(&key), i));
        }
        let xc = to_cyclo(&f, &x);
        let mut reassembled: GrElem<Cyc> = GrElem::zero();
        for chi in sg.h.elements() {
            let part = sg.apply_character_h(&f, &chi, &x);
            let emb = sg.embed_g(&f, &part);
            let contrib = mul(&sg.full, &f, &emb, &sg.idempotent(&f, &chi));
            reassembled = add(&f, &reassembled, &contrib);
        }
        assert_eq!(reassembled, xc);
    }

    #[test]
    fn corestriction_of_identity_is_norm() {
        let g = AbelianGroup::cyclic(4);
        let (q, pi) = g.quotient(&[vec![2]]);
        let ring = IntRing;
        let idq = one(&q, &ring);
        let c = corestrict(&g, &q, |y| pi.apply(y), &idq);
        // lifts of the identity coset: {0, 2}
        let expect = norm_element(&g, &ring, &[vec![0], vec![2]]);
        assert_eq!(c, expect);
        // [1]-coset maps to sigma + sigma^3
        let c1 = corestrict(&g, &q, |y| pi.apply(y), &term(&ring, q.index_of(&pi.apply(&[1])), 1));
        let expect1 = norm_element(&g, &ring, &[vec![1], vec![3]]);
        assert_eq!(c1, expect1);
    }
}
