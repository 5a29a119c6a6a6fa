//! Stickelberger series and their character parts.
//!
//! The series of a cover is the Euler product over the unramified place
//! stream of (1 - Fr_q^{-1} u^{deg q})^{-1}, with exact integer group-ring
//! coefficients. For covers backed by F_q[t] arithmetic the same series is
//! computed a second, independent way as a Dirichlet sum over monic
//! polynomials; the two must agree coefficientwise (executable unique
//! factorization).
//!
//! Character parts stabilize: away from the trivial character the
//! coefficients eventually vanish, while the trivial part has an exact
//! geometric tail, stored in closed form as base * u^D0 / (1 - q u). The
//! substitution u = gamma^{-1} therefore produces honest polynomials (or a
//! rational expression with p-adically invertible denominator), on which
//! trivial-zero orders and values at gamma = 1 are exact operations.

use crate::abelian::{AbelianGroup, GroupHom};
use crate::cover::{CharacterData, Cover};
use crate::cyclo::{Cyc, CycloField};
use crate::error::{Error, Result};
use crate::ff::poly;
use crate::gring::{self, GrElem, IntRing};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThetaMethod {
    Euler,
    Dirichlet,
}

#[derive(Clone, Debug)]
pub struct ThetaSeries {
    pub cover_hash: String,
    pub group: AbelianGroup,
    pub degree: u32,
    pub method: ThetaMethod,
    pub coeffs: Vec<GrElem<i64>>,
}

/// Euler-product route: expand the product of inverse local factors over
/// the place stream, truncated at degree `d`.
pub fn theta_euler(cover: &Cover, d: u32) -> Result<ThetaSeries> {
    cover.require_degree(d)?;
    let ring = IntRing;
    let group = &cover.split.full;
    let mut coeffs: Vec<GrElem<i64>> = vec![GrElem::zero(); d as usize + 1];
    coeffs[0] = gring::one(group, &ring);
    for pl in &cover.places {
        if pl.degree > d {
            continue;
        }
        let e = pl.degree as usize;
        let x = group.neg(&cover.split.join(&pl.frob_h, &pl.frob_g));
        // multiply by (1 - [x] u^e)^{-1}: c[i] += [x] * c[i - e] in place
        for i in e..=d as usize {
            let shifted = gring::translate(group, &x, &coeffs[i - e]);
            let merged = gring::add(&ring, &coeffs[i], &shifted);
            coeffs[i] = merged;
        }
    }
    Ok(ThetaSeries {
        cover_hash: crate::cover::cover_hash(cover),
        group: group.clone(),
        degree: d,
        method: ThetaMethod::Euler,
        coeffs,
    })
}

/// Dirichlet route: the u^d coefficient is the sum of inverse Frobenius
/// classes over monic polynomials of degree d prime to the conductor.
/// Requires an arithmetic backend and the full ramified set (no restored
/// places in the stream).
pub fn theta_dirichlet(cover: &Cover, d: u32) -> Result<ThetaSeries> {
    let backend = cover
        .cyclotomic
        .as_ref()
        .ok_or_else(|| Error::validation("no ideal enumeration for file-provided covers"))?;
    if cover.s.iter().all(|v| v.label != crate::cover::INFINITE_LABEL) {
        return Err(Error::validation(
            "Dirichlet enumeration needs the infinite place in the ramified set",
        ));
    }
    let ring = IntRing;
    let group = &cover.split.full;
    let fq = &backend.ray.fq;
    let prime = &backend.ray.prime;
    let mut coeffs: Vec<GrElem<i64>> = Vec::with_capacity(d as usize + 1);
    for deg in 0..=d as usize {
        let mut acc: GrElem<i64> = GrElem::zero();
        for a in poly::enumerate_monics(fq, deg) {
            if poly::rem(fq, &a, prime)?.is_zero() {
                continue;
            }
            let (h, g) = backend.class_of(&a)?;
            let key = group.index_of(&group.neg(&cover.split.join(&h, &g)));
            gring::add_assign(&ring, &mut acc, &gring::term(&ring, key, 1));
        }
        coeffs.push(acc);
    }
    Ok(ThetaSeries {
        cover_hash: crate::cover::cover_hash(cover),
        group: group.clone(),
        degree: d,
        method: ThetaMethod::Dirichlet,
        coeffs,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Stabilization {
    pub d0: u32,
    pub verified: bool,
}

/// A character part of a Stickelberger series, with its verified
/// stabilization data.
#[derive(Clone, Debug)]
pub struct ChiTheta {
    pub chi: CharacterData,
    pub g_group: AbelianGroup,
    pub field: CycloField,
    pub q: u64,
    pub degree: u32,
    pub coeffs: Vec<GrElem<Cyc>>,
    pub stab: Stabilization,
    /// Tail base at d0 for the trivial character: coefficients continue as
    /// base * q^(d - d0). `None` means the verified tail is zero.
    pub tail: Option<GrElem<Cyc>>,
}

/// Apply a character of H to every coefficient and verify stabilization.
/// For backed covers the stabilization degree is n * deg(p) by counting
/// monics in residue classes; for file covers it is detected and requires
/// at least two tail terms.
pub fn chi_theta(cover: &Cover, theta: &ThetaSeries, chi: &CharacterData) -> Result<ChiTheta> {
    let field = CycloField::new(cover.split.h.exponent().max(1));
    let q = cover.q();
    let coeffs: Vec<GrElem<Cyc>> = theta
        .coeffs
        .iter()
        .map(|c| cover.split.apply_character_h(&field, &chi.chi, c))
        .collect();
    let d = theta.degree;
    let expected_d0 = cover
        .cyclotomic
        .as_ref()
        .map(|b| b.ray.level * b.ray.prime_degree());
    let (stab, tail) = verify_stabilization(&field, &cover.split.g, q, &coeffs, d, chi, expected_d0);
    Ok(ChiTheta {
        chi: chi.clone(),
        g_group: cover.split.g.clone(),
        field,
        q,
        degree: d,
        coeffs,
        stab,
        tail,
    })
}

fn is_nonneg_norm_multiple(
    field: &CycloField,
    g_group: &AbelianGroup,
    x: &GrElem<Cyc>,
) -> bool {
    if x.is_zero() {
        return true;
    }
    if x.coeffs.len() as u64 != g_group.order() {
        return false;
    }
    let first = x.coeffs.values().next().unwrap();
    if !x.coeffs.values().all(|v| v == first) {
        return false;
    }
    // the common value must be a nonnegative integer
    let c = field.coeffs(x.coeffs.values().next().unwrap());
    c[0].is_integer()
        && c[0].numer().sign() != num::bigint::Sign::Minus
        && c.iter().skip(1).all(|v| num::Zero::is_zero(v))
}

fn verify_stabilization(
    field: &CycloField,
    g_group: &AbelianGroup,
    q: u64,
    coeffs: &[GrElem<Cyc>],
    d: u32,
    chi: &CharacterData,
    expected_d0: Option<u32>,
) -> (Stabilization, Option<GrElem<Cyc>>) {
    let check_from = |d0: u32| -> Option<Option<GrElem<Cyc>>> {
        if d0 > d {
            return None;
        }
        if chi.is_trivial {
            let base = coeffs[d0 as usize].clone();
            if !is_nonneg_norm_multiple(field, g_group, &base) {
                return None;
            }
            let qc = field.from_i64(q as i64);
            let mut cur = base.clone();
            for i in d0 + 1..=d {
                cur = gring::scale(field, &qc, &cur);
                if coeffs[i as usize] != cur {
                    return None;
                }
            }
            Some(Some(base))
        } else {
            for i in d0..=d {
                if !coeffs[i as usize].is_zero() {
                    return None;
                }
            }
            Some(None)
        }
    };
    match expected_d0 {
        Some(d0) => {
            if d0 > d {
                return (Stabilization { d0, verified: false }, None);
            }
            match check_from(d0) {
                Some(tail) => (Stabilization { d0, verified: true }, tail),
                None => (Stabilization { d0, verified: false }, None),
            }
        }
        None => {
            // detect the least d0 with at least two verified tail entries
            for d0 in 0..d {
                if let Some(tail) = check_from(d0) {
                    return (Stabilization { d0, verified: true }, tail);
                }
            }
            (Stabilization { d0: d + 1, verified: false }, None)
        }
    }
}

/// A polynomial in g = gamma^{-1} over W[G], possibly divided by the
/// p-adically invertible factor (1 - q g) coming from the trivial
/// character's geometric tail.
#[derive(Clone, Debug)]
pub struct GammaPoly {
    pub g_group: AbelianGroup,
    pub field: CycloField,
    pub num: Vec<GrElem<Cyc>>,
    pub denom_q: Option<u64>,
}

impl GammaPoly {
    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    fn trim(&mut self) {
        while self.num.last().map_or(false, |c| c.is_zero()) {
            self.num.pop();
        }
    }

    pub fn constant(g_group: &AbelianGroup, field: &CycloField, c: GrElem<Cyc>) -> GammaPoly {
        GammaPoly { g_group: g_group.clone(), field: field.clone(), num: vec![c], denom_q: None }
    }

    /// Exact division of the numerator by a polynomial with unit constant
    /// term 1; the remainder must vanish.
    pub fn divide_exact(&self, divisor: &[GrElem<Cyc>], what: &str) -> Result<GammaPoly> {
        let f = &self.field;
        let dd = divisor.len() - 1;
        assert!(
            divisor[0] == gring::one(&self.g_group, f),
            "divisor must have constant term 1"
        );
        let mut num = self.num.clone();
        while num.last().map_or(false, |c| c.is_zero()) {
            num.pop();
        }
        if num.is_empty() {
            return Ok(GammaPoly {
                g_group: self.g_group.clone(),
                field: f.clone(),
                num: vec![],
                denom_q: self.denom_q,
            });
        }
        if num.len() <= dd {
            return Err(Error::theorem(format!(
                "exact division by {what}: numerator degree too small"
            )));
        }
        let qlen = num.len() - dd;
        let mut quot: Vec<GrElem<Cyc>> = Vec::with_capacity(qlen);
        for i in 0..num.len() {
            // expected coefficient from already-known quotient terms
            let mut acc = GrElem::zero();
            for j in 1..=dd.min(i) {
                if i - j < quot.len() {
                    let t = gring::mul(&self.g_group, f, &divisor[j], &quot[i - j]);
                    acc = gring::add(f, &acc, &t);
                }
            }
            if i < qlen {
                quot.push(gring::sub(f, &num[i], &acc));
            } else if gring::add(f, &acc, &GrElem::zero()) != num[i] {
                return Err(Error::theorem(format!(
                    "exact division by {what} left a remainder at degree {i}"
                )));
            }
        }
        Ok(GammaPoly {
            g_group: self.g_group.clone(),
            field: f.clone(),
            num: quot,
            denom_q: self.denom_q,
        })
    }

    /// Maximal k with (1-g)^k dividing the value, together with the
    /// quotient by (1-g)^k.
    pub fn trivial_zero_order(&self) -> Result<(u32, GammaPoly)> {
        if self.is_zero() {
            return Err(Error::validation("trivial-zero order of the zero value is undefined"));
        }
        let one_minus_g = vec![
            gring::one(&self.g_group, &self.field),
            gring::neg(&self.field, &gring::one(&self.g_group, &self.field)),
        ];
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            match cur.divide_exact(&one_minus_g, "(1 - gamma^-1)") {
                Ok(next) => {
                    k += 1;
                    cur = next;
                }
                Err(_) => return Ok((k, cur)),
            }
        }
    }

    /// Substitute g = 1. The tail denominator becomes the p-adic unit
    /// 1/(1 - q).
    pub fn eval_at_one(&self) -> GrElem<Cyc> {
        let f = &self.field;
        let mut acc: GrElem<Cyc> = GrElem::zero();
        for c in &self.num {
            acc = gring::add(f, &acc, c);
        }
        if let Some(q) = self.denom_q {
            let s = f.from_rational(1, 1 - q as i64);
            acc = gring::scale(f, &s, &acc);
        }
        acc
    }

    pub fn mul_elem(&self, x: &GrElem<Cyc>) -> GammaPoly {
        let num = self
            .num
            .iter()
            .map(|c| gring::mul(&self.g_group, &self.field, c, x))
            .collect();
        let mut out = GammaPoly {
            g_group: self.g_group.clone(),
            field: self.field.clone(),
            num,
            denom_q: self.denom_q,
        };
        out.trim();
        out
    }

    /// Multiply by a polynomial in g.
    pub fn mul_poly(&self, other: &[GrElem<Cyc>]) -> GammaPoly {
        let f = &self.field;
        if self.num.is_empty() || other.is_empty() {
            return GammaPoly {
                g_group: self.g_group.clone(),
                field: f.clone(),
                num: vec![],
                denom_q: self.denom_q,
            };
        }
        let mut num = vec![GrElem::<Cyc>::zero(); self.num.len() + other.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.iter().enumerate() {
                let t = gring::mul(&self.g_group, f, a, b);
                num[i + j] = gring::add(f, &num[i + j], &t);
            }
        }
        let mut out = GammaPoly {
            g_group: self.g_group.clone(),
            field: f.clone(),
            num,
            denom_q: self.denom_q,
        };
        out.trim();
        out
    }
}

/// Substitute u = gamma^{-1} into a verified character part: the zero tail
/// is dropped; the trivial character's geometric tail folds into the
/// closed form (poly * (1 - q g) + base * g^D0) / (1 - q g).
pub fn substitute_gamma(ct: &ChiTheta) -> Result<GammaPoly> {
    if !ct.stab.verified {
        return Err(Error::validation(format!(
            "character part not stabilized by degree {} (d0 = {})",
            ct.degree, ct.stab.d0
        )));
    }
    let f = &ct.field;
    let d0 = ct.stab.d0 as usize;
    let poly_part = &ct.coeffs[..d0];
    match &ct.tail {
        None => {
            let mut gp = GammaPoly {
                g_group: ct.g_group.clone(),
                field: f.clone(),
                num: poly_part.to_vec(),
                denom_q: None,
            };
            gp.trim();
            Ok(gp)
        }
        Some(base) => {
            let q = ct.q as i64;
            let mut num = vec![GrElem::<Cyc>::zero(); d0 + 1];
            let minus_q = f.from_i64(-q);
            for (i, c) in poly_part.iter().enumerate() {
                num[i] = gring::add(f, &num[i], c);
                let t = gring::scale(f, &minus_q, c);
                num[i + 1] = gring::add(f, &num[i + 1], &t);
            }
            num[d0] = gring::add(f, &num[d0], base);
            let mut gp = GammaPoly {
                g_group: ct.g_group.clone(),
                field: f.clone(),
                num,
                denom_q: Some(ct.q),
            };
            gp.trim();
            Ok(gp)
        }
    }
}

// ---------------------------------------------------------------------------
// level projections
// ---------------------------------------------------------------------------

/// The projection between two cyclotomic covers of the same prime,
/// realized on the full Galois groups (identity on H).
pub struct LevelMap {
    pub hom: GroupHom,
    src_group: AbelianGroup,
}

pub fn level_map(higher: &Cover, lower: &Cover) -> Result<LevelMap> {
    let (bh, bl) = match (&higher.cyclotomic, &lower.cyclotomic) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::validation("level projection needs backed covers")),
    };
    if bh.h_proj.is_some() || bh.g_proj.is_some() || bl.h_proj.is_some() || bl.g_proj.is_some() {
        return Err(Error::validation("level projection of quotient covers is unsupported"));
    }
    let g_imgs = bh.ray.g_projection(&bl.ray)?;
    let mut images: Vec<crate::abelian::Elem> = Vec::new();
    for i in 0..higher.split.h.rank() {
        // H is the same group at every level
        let mut e = lower.split.h.identity();
        e[i] = 1;
        images.push(lower.split.join(&e, &lower.split.g.identity()));
    }
    for img in &g_imgs {
        images.push(lower.split.join(&lower.split.h.identity(), img));
    }
    Ok(LevelMap {
        hom: GroupHom { dst: lower.split.full.clone(), images },
        src_group: higher.split.full.clone(),
    })
}

impl LevelMap {
    pub fn push_int(&self, x: &GrElem<i64>) -> GrElem<i64> {
        gring::map_keys(&self.src_group, &self.hom.dst, &IntRing, |e| self.hom.apply(e), x)
    }

    pub fn push_cyc(&self, field: &CycloField, x: &GrElem<Cyc>) -> GrElem<Cyc> {
        gring::map_keys(&self.src_group, &self.hom.dst, field, |e| self.hom.apply(e), x)
    }
}

/// Per-degree comparison of a projected higher-level series with the
/// lower-level one.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProjectionReport {
    pub degree: u32,
    pub matches: Vec<bool>,
    pub all_match: bool,
}

pub fn projection_compat_check(
    higher: &Cover,
    lower: &Cover,
    d: u32,
) -> Result<ProjectionReport> {
    let lm = level_map(higher, lower)?;
    let th = theta_euler(higher, d)?;
    let tl = theta_euler(lower, d)?;
    let matches: Vec<bool> = (0..=d as usize)
        .map(|i| lm.push_int(&th.coeffs[i]) == tl.coeffs[i])
        .collect();
    let all_match = matches.iter().all(|&b| b);
    Ok(ProjectionReport { degree: d, matches, all_match })
}

// ---------------------------------------------------------------------------
// stabilized value at u = 1 (for quotient covers in the subset form)
// ---------------------------------------------------------------------------

/// Evaluate the full Stickelberger series of a cover at u = 1 as an
/// element of W[Gal]: each character part of the prime-to-p factor must
/// stabilize (zero tail, or the trivial part's geometric tail whose sum is
/// the p-adic unit denominator 1/(1-q)); the parts are reassembled through
/// the idempotents.
pub fn theta_value_at_one(cover: &Cover, d: u32, field: &CycloField) -> Result<GrElem<Cyc>> {
    let theta = theta_euler(cover, d)?;
    let expected_d0 = cover
        .cyclotomic
        .as_ref()
        .map(|b| b.ray.level * b.ray.prime_degree());
    let f = field;
    let q = cover.q() as i64;
    let mut total: GrElem<Cyc> = GrElem::zero();
    for chi in cover.split.h.elements() {
        let parts: Vec<GrElem<Cyc>> = theta
            .coeffs
            .iter()
            .map(|c| cover.split.apply_character_h(f, &chi, c))
            .collect();
        let is_trivial = cover.split.h.is_identity(&chi);
        // detect the tail: zero for nontrivial, geometric ratio q allowed
        // in general (its p-adic sum converges)
        let value = stabilized_sum(f, q, &parts, d, is_trivial, expected_d0)?;
        let emb = cover.split.embed_g(f, &value);
        let contrib = gring::mul(&cover.split.full, f, &emb, &cover.split.idempotent(f, &chi));
        total = gring::add(f, &total, &contrib);
    }
    Ok(total)
}

fn stabilized_sum(
    f: &CycloField,
    q: i64,
    parts: &[GrElem<Cyc>],
    d: u32,
    _is_trivial: bool,
    expected_d0: Option<u32>,
) -> Result<GrElem<Cyc>> {
    let geometric_from = |d0: u32| -> bool {
        let qc = f.from_i64(q);
        let mut cur = parts[d0 as usize].clone();
        for i in d0 + 1..=d {
            cur = gring::scale(f, &qc, &cur);
            if parts[i as usize] != cur {
                return false;
            }
        }
        true
    };
    let d0 = match expected_d0 {
        Some(d0) if d0 + 1 <= d && geometric_from(d0) => d0,
        Some(d0) => {
            return Err(Error::validation(format!(
                "series does not stabilize at the expected degree {d0} within {d}"
            )))
        }
        None => (0..d)
            .find(|&d0| geometric_from(d0))
            .ok_or_else(|| Error::validation("quotient series not stabilized; increase D"))?,
    };
    let mut acc: GrElem<Cyc> = GrElem::zero();
    for c in &parts[..d0 as usize] {
        acc = gring::add(f, &acc, c);
    }
    // sum of base * q^k from the stabilization degree on
    let s = f.from_rational(1, 1 - q);
    let tail = gring::scale(f, &s, &parts[d0 as usize]);
    Ok(gring::add(f, &acc, &tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::cyclotomic_cover;
    use crate::ff::{Fq, FqPoly};

    fn carlitz(q: u64, prime: &str, n: u32, d: u32) -> Cover {
        let fq = Fq::prime(q).unwrap();
        let p = FqPoly::parse(&fq, prime).unwrap();
        cyclotomic_cover(&fq, &p, n, d).unwrap()
    }

    #[test]
    fn euler_equals_dirichlet_small() {
        for (q, pr, n) in [(3u64, "t", 1u32), (3, "t", 2), (2, "t^2+t+1", 1)] {
            let c = carlitz(q, pr, n, 6);
            let e = theta_euler(&c, 6).unwrap();
            let s = theta_dirichlet(&c, 6).unwrap();
            assert_eq!(e.coeffs, s.coeffs, "q={q} p={pr} n={n}");
        }
    }

    #[test]
    fn degree_one_coefficient_q3_t() {
        // c_1 = [t+1]^{-1} + [t+2]^{-1} = [1] + [2] in (A/t)^*
        let c = carlitz(3, "t", 1, 2);
        let th = theta_euler(&c, 2).unwrap();
        let ring = IntRing;
        let mut expect: GrElem<i64> = GrElem::zero();
        for h in c.split.h.elements() {
            gring::add_assign(
                &ring,
                &mut expect,
                &gring::term(&ring, c.split.full.index_of(&h), 1),
            );
        }
        assert_eq!(th.coeffs[1], expect);
        assert_eq!(th.coeffs[0], gring::one(&c.split.full, &ring));
    }

    #[test]
    fn stabilization_quadratic_character_level1() {
        // q=3, p=t, n=1, quadratic chi: the polynomial is exactly 1
        let c = carlitz(3, "t", 1, 5);
        let th = theta_euler(&c, 5).unwrap();
        let chi = c.classify_character(&vec![1]).unwrap();
        let ct = chi_theta(&c, &th, &chi).unwrap();
        assert!(ct.stab.verified);
        assert_eq!(ct.stab.d0, 1);
        let gp = substitute_gamma(&ct).unwrap();
        assert_eq!(gp.num.len(), 1);
        assert_eq!(gp.num[0], gring::one(&c.split.g, &ct.field));
    }

    #[test]
    fn stabilization_trivial_character_tail() {
        // the trivial part's tail base q^(d-d0)(q^dp - 1) n(G)
        let c = carlitz(3, "t", 2, 6);
        let th = theta_euler(&c, 6).unwrap();
        let chi = c.classify_character(&vec![0]).unwrap();
        let ct = chi_theta(&c, &th, &chi).unwrap();
        assert!(ct.stab.verified);
        assert_eq!(ct.stab.d0, 2);
        let base = ct.tail.as_ref().unwrap();
        // base = (q^dp - 1) n(G) = 2 n(G)
        let members: Vec<_> = c.split.g.elements().collect();
        let n_g = gring::norm_element(&c.split.g, &ct.field, &members);
        let two = ct.field.from_i64(2);
        assert_eq!(*base, gring::scale(&ct.field, &two, &n_g));
    }

    #[test]
    fn quadratic_character_level2_degree_bound() {
        // q=3, p=t, n=2: nontrivial chi parts have g-degree < n d_p = 2
        let c = carlitz(3, "t", 2, 6);
        let th = theta_euler(&c, 6).unwrap();
        for chi in c.characters() {
            if chi.is_trivial {
                continue;
            }
            let ct = chi_theta(&c, &th, &chi).unwrap();
            assert!(ct.stab.verified);
            let gp = substitute_gamma(&ct).unwrap();
            assert!(gp.num.len() <= 2, "degree must be < n d_p");
        }
    }

    #[test]
    fn gamma_division_and_zero_orders() {
        let g = AbelianGroup::cyclic(3);
        let f = CycloField::new(2);
        let one = gring::one(&g, &f);
        let m1 = gring::neg(&f, &one);
        // f = (1-g)(1+g) = 1 - g^2
        let gp = GammaPoly {
            g_group: g.clone(),
            field: f.clone(),
            num: vec![one.clone(), GrElem::zero(), m1.clone()],
            denom_q: None,
        };
        let (k, quot) = gp.trivial_zero_order().unwrap();
        assert_eq!(k, 1);
        assert_eq!(quot.num, vec![one.clone(), one.clone()]);
        // (1-g)^2 has order 2
        let gp2 = GammaPoly {
            g_group: g.clone(),
            field: f.clone(),
            num: vec![
                one.clone(),
                gring::scale(&f, &f.from_i64(-2), &one),
                one.clone(),
            ],
            denom_q: None,
        };
        assert_eq!(gp2.trivial_zero_order().unwrap().0, 2);
        // constants have order 0 and evaluate to themselves
        let c = GammaPoly::constant(&g, &f, one.clone());
        assert_eq!(c.trivial_zero_order().unwrap().0, 0);
        assert_eq!(c.eval_at_one(), one);
        // (1-g)*h evaluates to zero at 1
        assert_eq!(gp.eval_at_one(), GrElem::zero());
    }

    #[test]
    fn projection_compatibility_loop() {
        let hi = carlitz(3, "t", 2, 4);
        let lo = carlitz(3, "t", 1, 4);
        let rep = projection_compat_check(&hi, &lo, 4).unwrap();
        assert!(rep.all_match, "{:?}", rep.matches);
    }

    #[test]
    fn theta_value_at_one_on_full_quotient() {
        // quotient of (3, t, 1) by I_inf = H is the trivial cover of F
        // with S = {t}: Theta(1) = 1/(1-q) = -1/2
        let c = carlitz(3, "t", 1, 5);
        let q = c.quotient_by_inertia(&[crate::cover::INFINITE_LABEL]).unwrap();
        let f = CycloField::new(c.split.h.exponent());
        let v = theta_value_at_one(&q, 5, &f).unwrap();
        let expect = gring::scale(&f, &f.from_rational(1, -2), &gring::one(&q.split.full, &f));
        assert_eq!(v, expect);
    }
}
