//! Abelian-cover descriptions: the Galois group split H x G, ramified
//! places with inertia and Frobenius data, and a complete unramified place
//! stream up to a declared degree bound.
//!
//! Two providers exist. The cyclotomic provider derives everything from
//! torsion of the rank-1 module over F_q[t] via the reciprocity law
//! Fr_q = [q mod p^n]; the file provider reads the same data from a JSON
//! document, which is how covers of more general base fields enter.

use crate::abelian::{AbelianGroup, Elem};
use crate::error::{Error, Result};
use crate::ff::poly::{self, FqPoly};
use crate::ff::Fq;
use crate::gring::SplitGroup;
use crate::rayclass::RayClassCtx;
use serde::{Deserialize, Serialize};

pub const INFINITE_LABEL: &str = "inf";

#[derive(Clone, Debug, PartialEq)]
pub struct RamifiedPlace {
    pub label: String,
    pub degree: u32,
    pub inertia_h: Vec<Elem>,
    pub inertia_g: Vec<Elem>,
    /// Frobenius class modulo the inertia projections.
    pub frob_h: Elem,
    pub frob_g: Elem,
    pub totally_ramified: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnramifiedPlace {
    pub degree: u32,
    pub frob_h: Elem,
    pub frob_g: Elem,
}

/// Carlitz-cyclotomic backend: present when the cover (or a quotient of
/// it) is backed by honest F_q[t] arithmetic, enabling ideal enumeration.
#[derive(Clone, Debug)]
pub struct CyclotomicBackend {
    pub ray: RayClassCtx,
    /// Factor projections from the ray-class (H, G) onto this cover's
    /// (H, G); `None` means the identity.
    pub h_proj: Option<crate::abelian::GroupHom>,
    pub g_proj: Option<crate::abelian::GroupHom>,
}

impl CyclotomicBackend {
    /// This cover's class of a monic polynomial coprime to the conductor.
    pub fn class_of(&self, a: &FqPoly) -> Result<(Elem, Elem)> {
        let (h, g) = self.ray.class_of(a)?;
        let h = match &self.h_proj {
            Some(p) => p.apply(&h),
            None => h,
        };
        let g = match &self.g_proj {
            Some(p) => p.apply(&g),
            None => g,
        };
        Ok((h, g))
    }
}

#[derive(Clone, Debug)]
pub struct Cover {
    pub field_p: u64,
    pub field_r: u32,
    pub split: SplitGroup,
    /// Generators (in H) of the subgroup fixing the Hilbert-class-field
    /// level of the cover; characters trivial on it are "type 3".
    pub ha_subgroup: Vec<Elem>,
    pub s: Vec<RamifiedPlace>,
    pub degree_bound: u32,
    pub places: Vec<UnramifiedPlace>,
    pub cyclotomic: Option<CyclotomicBackend>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CharType {
    Type1,
    Type2,
    Type3,
}

#[derive(Clone, Debug)]
pub struct CharacterData {
    pub chi: Elem,
    pub value_order: u64,
    pub char_type: CharType,
    /// chi(Fr_{p,H}) as an exponent of zeta_e (e = exponent of H); only
    /// defined when chi is trivial on the H-inertia at the totally
    /// ramified place.
    pub frob_p_pairing: Option<u64>,
    pub is_trivial: bool,
}

impl Cover {
    pub fn fq(&self) -> Result<Fq> {
        Fq::new(self.field_p, self.field_r as usize)
    }

    pub fn q(&self) -> u64 {
        self.field_p.pow(self.field_r)
    }

    pub fn totally_ramified(&self) -> Result<&RamifiedPlace> {
        self.s
            .iter()
            .find(|v| v.totally_ramified)
            .ok_or_else(|| Error::validation("cover lacks a totally ramified place"))
    }

    /// The designated infinite place: the entry labeled "inf", or the
    /// unique non-totally-ramified entry.
    pub fn infinite_place(&self) -> Result<&RamifiedPlace> {
        if let Some(v) = self.s.iter().find(|v| v.label == INFINITE_LABEL) {
            return Ok(v);
        }
        let rest: Vec<_> = self.s.iter().filter(|v| !v.totally_ramified).collect();
        if rest.len() == 1 {
            Ok(rest[0])
        } else {
            Err(Error::validation("cannot identify the infinite place"))
        }
    }

    pub fn place(&self, label: &str) -> Result<&RamifiedPlace> {
        self.s
            .iter()
            .find(|v| v.label == label)
            .ok_or_else(|| Error::validation(format!("no ramified place labeled {label}")))
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.field_p;
        if self.split.h.order() % p == 0 {
            return Err(Error::validation("p divides |H|"));
        }
        let mut g_ord = self.split.g.order();
        while g_ord % p == 0 {
            g_ord /= p;
        }
        if g_ord != 1 {
            return Err(Error::validation("|G| is not a power of p"));
        }
        let tot: Vec<_> = self.s.iter().filter(|v| v.totally_ramified).collect();
        if tot.len() != 1 {
            return Err(Error::validation("exactly one totally ramified place is required"));
        }
        for v in &self.s {
            for e in v.inertia_h.iter().chain(&v.inertia_g).chain([&v.frob_h, &v.frob_g]) {
                let bound = if std::ptr::eq(e, &v.frob_g)
                    || v.inertia_g.iter().any(|x| std::ptr::eq(e, x))
                {
                    self.split.g.factors()
                } else {
                    self.split.h.factors()
                };
                if e.len() != bound.len() || e.iter().zip(bound).any(|(&x, &d)| x >= d) {
                    return Err(Error::validation(format!(
                        "place {}: element outside group bounds",
                        v.label
                    )));
                }
            }
        }
        for pl in &self.places {
            if pl.frob_h.len() != self.split.h.rank() || pl.frob_g.len() != self.split.g.rank() {
                return Err(Error::validation("unramified place with malformed Frobenius"));
            }
            if pl.degree > self.degree_bound {
                return Err(Error::validation("place beyond the declared degree bound"));
            }
        }
        // the infinite place's inertia must sit inside H and inside the
        // Hilbert marker subgroup (otherwise the type trichotomy breaks)
        let inf = self.infinite_place()?;
        if !inf.inertia_g.is_empty() {
            return Err(Error::validation("infinite place with p-part inertia"));
        }
        let marker_span = self.split.h.span(&self.ha_subgroup);
        let marker_keys: std::collections::BTreeSet<u32> =
            marker_span.iter().map(|e| self.split.h.index_of(e)).collect();
        for x in self.split.h.span(&inf.inertia_h) {
            if !marker_keys.contains(&self.split.h.index_of(&x)) {
                return Err(Error::validation(
                    "inertia at infinity not contained in the Hilbert marker subgroup",
                ));
            }
        }
        Ok(())
    }

    /// Stream completeness check used by series builders.
    pub fn require_degree(&self, d: u32) -> Result<()> {
        if d > self.degree_bound {
            return Err(Error::validation(format!(
                "requested degree {d} exceeds the stream bound {}",
                self.degree_bound
            )));
        }
        Ok(())
    }

    /// Classify a character of H by its restriction to the inertia at
    /// infinity and to the Hilbert marker subgroup.
    pub fn classify_character(&self, chi: &Elem) -> Result<CharacterData> {
        let h = &self.split.h;
        let inf = self.infinite_place()?;
        let v1 = self.totally_ramified()?;
        let type1 = !h.char_trivial_on(chi, &inf.inertia_h);
        let type3 = h.char_trivial_on(chi, &self.ha_subgroup);
        if type1 && type3 {
            return Err(Error::validation(
                "character trichotomy violated: inertia at infinity escapes the marker subgroup",
            ));
        }
        let char_type = if type1 {
            CharType::Type1
        } else if type3 {
            CharType::Type3
        } else {
            CharType::Type2
        };
        let frob_p_pairing = if h.char_trivial_on(chi, &v1.inertia_h) {
            Some(h.char_pairing(chi, &v1.frob_h))
        } else {
            None
        };
        Ok(CharacterData {
            chi: chi.clone(),
            value_order: h.char_order(chi).max(1),
            char_type,
            frob_p_pairing,
            is_trivial: h.is_identity(chi),
        })
    }

    pub fn characters(&self) -> Vec<CharacterData> {
        self.split
            .h
            .elements()
            .map(|chi| self.classify_character(&chi).expect("validated cover"))
            .collect()
    }

    /// Quotient cover by the compositum of the inertia groups of the named
    /// subset W of S' = S minus the totally ramified place. The W-places
    /// become unramified and re-enter the place stream; everything else is
    /// projected.
    pub fn quotient_by_inertia(&self, w_labels: &[&str]) -> Result<Cover> {
        Ok(self.quotient_with_projection(w_labels)?.0)
    }

    /// Quotient cover together with the projection of the full Galois
    /// group onto the quotient's full group (needed for corestriction).
    pub fn quotient_with_projection(
        &self,
        w_labels: &[&str],
    ) -> Result<(Cover, crate::abelian::GroupHom)> {
        let v1 = self.totally_ramified()?;
        let mut h_gens: Vec<Elem> = Vec::new();
        let mut g_gens: Vec<Elem> = Vec::new();
        for &lbl in w_labels {
            let v = self.place(lbl)?;
            if v.label == v1.label {
                return Err(Error::validation("subset may not contain the totally ramified place"));
            }
            h_gens.extend(v.inertia_h.iter().cloned());
            g_gens.extend(v.inertia_g.iter().cloned());
        }
        let (hq, h_proj) = self.split.h.quotient(&h_gens);
        let (gq, g_proj) = self.split.g.quotient(&g_gens);
        let split = SplitGroup::new(hq, gq);
        let w_set: std::collections::BTreeSet<&str> = w_labels.iter().copied().collect();
        let mut s = Vec::new();
        for v in &self.s {
            if w_set.contains(v.label.as_str()) {
                continue;
            }
            s.push(RamifiedPlace {
                label: v.label.clone(),
                degree: v.degree,
                inertia_h: v.inertia_h.iter().map(|e| h_proj.apply(e)).collect(),
                inertia_g: v.inertia_g.iter().map(|e| g_proj.apply(e)).collect(),
                frob_h: h_proj.apply(&v.frob_h),
                frob_g: g_proj.apply(&v.frob_g),
                totally_ramified: v.totally_ramified,
            });
        }
        let mut places: Vec<UnramifiedPlace> = self
            .places
            .iter()
            .map(|pl| UnramifiedPlace {
                degree: pl.degree,
                frob_h: h_proj.apply(&pl.frob_h),
                frob_g: g_proj.apply(&pl.frob_g),
            })
            .collect();
        // the W-places are unramified in the quotient; their Frobenius
        // classes become well defined
        for &lbl in w_labels {
            let v = self.place(lbl)?;
            places.push(UnramifiedPlace {
                degree: v.degree,
                frob_h: h_proj.apply(&v.frob_h),
                frob_g: g_proj.apply(&v.frob_g),
            });
        }
        places.sort_by_key(|p| (p.degree, p.frob_h.clone(), p.frob_g.clone()));
        let cyclotomic = self.cyclotomic.as_ref().map(|b| {
            let hp = compose(&b.h_proj, &h_proj);
            let gp = compose(&b.g_proj, &g_proj);
            CyclotomicBackend { ray: b.ray.clone(), h_proj: hp, g_proj: gp }
        });
        // projection of the full group onto the quotient's full group
        let mut images: Vec<Elem> = Vec::new();
        for img in &h_proj.images {
            images.push([img.clone(), gq_identity(&split)].concat());
        }
        for img in &g_proj.images {
            images.push([split.h.identity(), img.clone()].concat());
        }
        let full_proj = crate::abelian::GroupHom { dst: split.full.clone(), images };
        let cover = Cover {
            field_p: self.field_p,
            field_r: self.field_r,
            split,
            ha_subgroup: self.ha_subgroup.iter().map(|e| h_proj.apply(e)).collect(),
            s,
            degree_bound: self.degree_bound,
            places,
            cyclotomic,
        };
        Ok((cover, full_proj))
    }

    /// Full-group elements (packed) of the subgroup generated by a
    /// ramified place's inertia, as the product of its two projections.
    pub fn inertia_subgroup(&self, v: &RamifiedPlace) -> Vec<Elem> {
        let mut gens: Vec<Elem> = Vec::new();
        for h in &v.inertia_h {
            gens.push(self.split.join(h, &self.split.g.identity()));
        }
        for g in &v.inertia_g {
            gens.push(self.split.join(&self.split.h.identity(), g));
        }
        self.split.full.span(&gens)
    }
}

fn gq_identity(split: &SplitGroup) -> Elem {
    split.g.identity()
}

fn compose(
    first: &Option<crate::abelian::GroupHom>,
    second: &crate::abelian::GroupHom,
) -> Option<crate::abelian::GroupHom> {
    match first {
        None => Some(second.clone()),
        Some(f) => Some(f.then(second)),
    }
}

/// Build the cyclotomic cover of F = F_q(t) at a prime-power conductor.
///
/// H = (A/p)^* with the p-inertia equal to the whole group (the base has
/// trivial class number), G the 1-unit group, S = {p, inf} with the
/// infinite inertia the image of the constants and Fr_inf = 1, and the
/// stream listing every monic irreducible away from p up to the bound.
pub fn cyclotomic_cover(fq: &Fq, prime: &FqPoly, level: u32, degree_bound: u32) -> Result<Cover> {
    if degree_bound < 1 {
        return Err(Error::validation("degree bound must be >= 1"));
    }
    let ray = RayClassCtx::new(fq, prime, level)?;
    let h = ray.h.clone();
    let g = ray.g.clone();
    let split = SplitGroup::new(h.clone(), g.clone());
    let h_gens: Vec<Elem> = if h.order() == 1 { vec![] } else { vec![vec![1]] };
    let g_gens: Vec<Elem> = (0..g.rank())
        .map(|i| {
            let mut e = g.identity();
            e[i] = 1;
            e
        })
        .collect();
    let d = ray.prime_degree();
    let s = vec![
        RamifiedPlace {
            label: "p".into(),
            degree: d,
            inertia_h: h_gens.clone(),
            inertia_g: g_gens,
            frob_h: h.identity(),
            frob_g: g.identity(),
            totally_ramified: true,
        },
        RamifiedPlace {
            label: INFINITE_LABEL.into(),
            degree: 1,
            inertia_h: ray.constant_image_h()?,
            inertia_g: vec![],
            frob_h: h.identity(),
            frob_g: g.identity(),
            totally_ramified: false,
        },
    ];
    let mut places = Vec::new();
    for deg in 1..=degree_bound {
        for q in poly::enumerate_monic_irreducibles(fq, deg as usize)? {
            if q == *prime {
                continue;
            }
            let (frob_h, frob_g) = ray.class_of(&q)?;
            places.push(UnramifiedPlace { degree: deg, frob_h, frob_g });
        }
    }
    let cover = Cover {
        field_p: fq.p(),
        field_r: fq.degree_over_prime() as u32,
        split,
        ha_subgroup: h_gens,
        s,
        degree_bound,
        places,
        cyclotomic: Some(CyclotomicBackend { ray, h_proj: None, g_proj: None }),
    };
    cover.validate()?;
    Ok(cover)
}

// ---------------------------------------------------------------------------
// file format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct FileField {
    p: u64,
    r: u32,
}

#[derive(Serialize, Deserialize)]
struct FileGroup {
    invariants: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct FileMarker {
    generators: Vec<Elem>,
}

#[derive(Serialize, Deserialize)]
struct FileRamified {
    label: String,
    degree: u32,
    #[serde(rename = "inertia_H")]
    inertia_h: Vec<Elem>,
    #[serde(rename = "inertia_G")]
    inertia_g: Vec<Elem>,
    #[serde(rename = "frob_H")]
    frob_h: Elem,
    #[serde(rename = "frob_G")]
    frob_g: Elem,
    totally_ramified: bool,
}

#[derive(Serialize, Deserialize)]
struct FilePlace {
    degree: u32,
    #[serde(rename = "frob_H")]
    frob_h: Elem,
    #[serde(rename = "frob_G")]
    frob_g: Elem,
}

#[derive(Serialize, Deserialize)]
struct CoverFile {
    field: FileField,
    #[serde(rename = "H")]
    h: FileGroup,
    #[serde(rename = "G")]
    g: FileGroup,
    #[serde(rename = "gal_F1_over_HA")]
    marker: FileMarker,
    #[serde(rename = "S")]
    s: Vec<FileRamified>,
    degree_bound: u32,
    places: Vec<FilePlace>,
}

pub fn cover_to_json(cover: &Cover) -> serde_json::Value {
    let file = CoverFile {
        field: FileField { p: cover.field_p, r: cover.field_r },
        h: FileGroup { invariants: cover.split.h.factors().to_vec() },
        g: FileGroup { invariants: cover.split.g.factors().to_vec() },
        marker: FileMarker { generators: cover.ha_subgroup.clone() },
        s: cover
            .s
            .iter()
            .map(|v| FileRamified {
                label: v.label.clone(),
                degree: v.degree,
                inertia_h: v.inertia_h.clone(),
                inertia_g: v.inertia_g.clone(),
                frob_h: v.frob_h.clone(),
                frob_g: v.frob_g.clone(),
                totally_ramified: v.totally_ramified,
            })
            .collect(),
        degree_bound: cover.degree_bound,
        places: cover
            .places
            .iter()
            .map(|p| FilePlace {
                degree: p.degree,
                frob_h: p.frob_h.clone(),
                frob_g: p.frob_g.clone(),
            })
            .collect(),
    };
    serde_json::to_value(&file).expect("cover serializes")
}

pub fn cover_from_json(value: &serde_json::Value) -> Result<Cover> {
    let file: CoverFile = serde_json::from_value(value.clone())
        .map_err(|e| Error::validation(format!("cover file: {e}")))?;
    let h = AbelianGroup::new(file.h.invariants.clone());
    for w in h.factors().windows(2) {
        if w[1] % w[0] != 0 {
            return Err(Error::validation("H invariants not in divisibility order"));
        }
    }
    let g = AbelianGroup::new(file.g.invariants.clone());
    let cover = Cover {
        field_p: file.field.p,
        field_r: file.field.r,
        split: SplitGroup::new(h, g),
        ha_subgroup: file.marker.generators,
        s: file
            .s
            .into_iter()
            .map(|v| RamifiedPlace {
                label: v.label,
                degree: v.degree,
                inertia_h: v.inertia_h,
                inertia_g: v.inertia_g,
                frob_h: v.frob_h,
                frob_g: v.frob_g,
                totally_ramified: v.totally_ramified,
            })
            .collect(),
        degree_bound: file.degree_bound,
        places: file
            .places
            .into_iter()
            .map(|p| UnramifiedPlace { degree: p.degree, frob_h: p.frob_h, frob_g: p.frob_g })
            .collect(),
        cyclotomic: None,
    };
    cover.validate()?;
    Ok(cover)
}

pub fn save_cover(cover: &Cover, path: &std::path::Path) -> Result<()> {
    let json = serde_json::to_string_pretty(&cover_to_json(cover))?;
    std::fs::write(path, json)?;
    Ok(())
}

pub fn load_cover(path: &std::path::Path) -> Result<Cover> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    cover_from_json(&value)
}

/// Stable content hash of the cover data (used in report provenance).
pub fn cover_hash(cover: &Cover) -> String {
    use sha2::{Digest, Sha256};
    let json = cover_to_json(cover);
    let canon = serde_json::to_string(&json).expect("serializable");
    let mut h = Sha256::new();
    h.update(canon.as_bytes());
    let out = h.finalize();
    out.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn carlitz(q: u64, prime: &str, n: u32, d: u32) -> Cover {
        let fq = Fq::prime(q).unwrap();
        let p = FqPoly::parse(&fq, prime).unwrap();
        cyclotomic_cover(&fq, &p, n, d).unwrap()
    }

    #[test]
    fn q3_t_level1_structure() {
        let c = carlitz(3, "t", 1, 4);
        assert_eq!(c.split.h.order(), 2);
        assert_eq!(c.split.g.order(), 1);
        // the place t+1 has trivial Frobenius (t+1 = 1 mod t)
        let p1 = c.places.iter().find(|p| p.degree == 1).unwrap();
        assert!(c.split.h.is_identity(&p1.frob_h));
    }

    #[test]
    fn q2_quadratic_level1() {
        let c = carlitz(2, "t^2+t+1", 1, 4);
        assert_eq!(c.split.h.order(), 3);
        assert_eq!(c.split.g.order(), 1);
        let inf = c.infinite_place().unwrap();
        assert!(inf.inertia_h.is_empty());
    }

    #[test]
    fn character_types_on_cyclotomic_covers() {
        // q=3, p=t: the quadratic character sees the constants, so type 1;
        // the trivial character is type 3
        let c = carlitz(3, "t", 1, 3);
        let chars = c.characters();
        assert_eq!(chars.len(), 2);
        for ch in &chars {
            if ch.is_trivial {
                assert_eq!(ch.char_type, CharType::Type3);
            } else {
                assert_eq!(ch.char_type, CharType::Type1);
            }
        }
        // q=2: trivial constants, every nontrivial character is type 2
        let c = carlitz(2, "t^2+t+1", 1, 3);
        for ch in c.characters() {
            if ch.is_trivial {
                assert_eq!(ch.char_type, CharType::Type3);
            } else {
                assert_eq!(ch.char_type, CharType::Type2);
            }
        }
    }

    #[test]
    fn classification_partitions_characters() {
        for c in [carlitz(3, "t", 2, 3), carlitz(2, "t^2+t+1", 2, 3)] {
            let mut counts = std::collections::HashMap::new();
            for ch in c.characters() {
                *counts.entry(ch.char_type).or_insert(0usize) += 1;
            }
            let total: usize = counts.values().sum();
            assert_eq!(total as u64, c.split.h.order());
            // type-1 count = |H| - number of characters trivial on the
            // image of the constants
            let inf = c.infinite_place().unwrap();
            let trivial_on_inf = c
                .split
                .h
                .elements()
                .filter(|chi| c.split.h.char_trivial_on(chi, &inf.inertia_h))
                .count();
            let t1 = counts.get(&CharType::Type1).copied().unwrap_or(0);
            assert_eq!(t1 as u64, c.split.h.order() - trivial_on_inf as u64);
        }
    }

    #[test]
    fn round_trip_file() {
        let c = carlitz(3, "t", 2, 5);
        let json = cover_to_json(&c);
        let back = cover_from_json(&json).unwrap();
        assert_eq!(back.split.h.factors(), c.split.h.factors());
        assert_eq!(back.split.g.factors(), c.split.g.factors());
        assert_eq!(back.s, c.s);
        assert_eq!(back.places, c.places);
        assert_eq!(cover_hash(&back), cover_hash(&c));
    }

    #[test]
    fn validation_rejects_bad_group_orders() {
        let c = carlitz(3, "t", 2, 4);
        let mut json = cover_to_json(&c);
        json["G"]["invariants"] = serde_json::json!([6]);
        let err = cover_from_json(&json).unwrap_err();
        assert!(format!("{err}").contains("power of p"));
    }

    #[test]
    fn synthetic_marker_classification() {
        // H = Z/2 x Z/4, marker = first factor, chi trivial on it with
        // chi(Fr_p) = 1: a nontrivial type-3 character
        let h = AbelianGroup::new(vec![2, 4]);
        let g = AbelianGroup::cyclic(3);
        let cover = Cover {
            field_p: 3,
            field_r: 1,
            split: SplitGroup::new(h, g.clone()),
            ha_subgroup: vec![vec![1, 0]],
            s: vec![
                RamifiedPlace {
                    label: "p".into(),
                    degree: 1,
                    inertia_h: vec![vec![1, 0]],
                    inertia_g: vec![vec![1]],
                    frob_h: vec![0, 0],
                    frob_g: vec![0],
                    totally_ramified: true,
                },
                RamifiedPlace {
                    label: INFINITE_LABEL.into(),
                    degree: 1,
                    inertia_h: vec![],
                    inertia_g: vec![],
                    frob_h: vec![0, 0],
                    frob_g: vec![0],
                    totally_ramified: false,
                },
            ],
            degree_bound: 1,
            places: vec![UnramifiedPlace { degree: 1, frob_h: vec![0, 0], frob_g: vec![0] }],
            cyclotomic: None,
        };
        cover.validate().unwrap();
        let chi = vec![0u64, 2u64]; // trivial on Z/2 x 0, order 2 on the Z/4 part
        let cd = cover.classify_character(&chi).unwrap();
        assert_eq!(cd.char_type, CharType::Type3);
        assert!(!cd.is_trivial);
        assert_eq!(cd.frob_p_pairing, Some(0)); // chi(Fr) = 1
    }

    #[test]
    fn quotient_by_infinite_inertia() {
        // q=3, p=t, n=2: I_inf = H of order 2; the quotient has order 3 and
        // the infinite place becomes an unramified degree-1 place with
        // identity Frobenius
        let c = carlitz(3, "t", 2, 4);
        let q = c.quotient_by_inertia(&[INFINITE_LABEL]).unwrap();
        assert_eq!(q.split.full.order(), 3);
        assert_eq!(q.s.len(), 1);
        let restored: Vec<_> = q
            .places
            .iter()
            .filter(|p| p.degree == 1 && q.split.h.is_identity(&p.frob_h) && q.split.g.is_identity(&p.frob_g))
            .collect();
        assert!(!restored.is_empty());
        // empty subset: identical description
        let same = c.quotient_by_inertia(&[]).unwrap();
        assert_eq!(same.split.full.order(), c.split.full.order());
        assert_eq!(same.places.len(), c.places.len());
    }

    #[test]
    fn degenerate_full_quotient() {
        let c = carlitz(3, "t", 1, 3);
        // S' = {inf}, I_inf = H: quotient is the trivial cover of F itself
        let q = c.quotient_by_inertia(&[INFINITE_LABEL]).unwrap();
        assert_eq!(q.split.full.order(), 1);
    }
}
