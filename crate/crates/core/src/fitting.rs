//! Fitting-ideal generator sets for class groups of the covers.
//!
//! The five-case dispatch computes generators of Fitt_{W[G]}(C(chi)^dual)
//! from the character part of the Stickelberger element: the character
//! type decides how many times (1 - gamma^{-1}) divides out and which
//! norm-element factor is appended. All scalar divisions are audited for
//! p-integrality; an inexact polynomial division is a hard error carrying
//! the case tag, because exactness there is a theorem, not a tolerance.
//!
//! Two further forms exist for the totally ramified setting: the product
//! form (pairs (1, n(I_v)/e_v) expanded by exact division per character)
//! and the subset-corestriction form, whose generators are integer
//! multiples of corestricted quotient-cover Stickelberger values at
//! gamma = 1. Their agreement is one of the acceptance criteria.
//!
//! A minors-based Fitting ideal of an explicitly presented module serves
//! as the semantic oracle for all of the above.

use crate::abelian::AbelianGroup;
use crate::cover::{CharType, CharacterData, Cover};
use crate::cyclo::{Cyc, CycloField};
use crate::error::{Error, Result};
use crate::gring::{self, GrElem};
use crate::ideal::{IdealCtx, IdealHandle};
use crate::theta::{self, GammaPoly};
use num::BigRational;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    Type1,
    Type2,
    Type3FrobNontrivial,
    Type3DoubleZero,
    TrivialCharacter,
    TateDualChi,
    TotallyRamifiedProduct,
    SubsetCorestriction,
    GenericMinors,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FractionalStep {
    pub what: String,
    pub denominator: String,
    pub p_integral: bool,
}

/// A generator set for a Fitting ideal over W[group], gamma already at 1.
#[derive(Clone, Debug)]
pub struct FittingGenerators {
    pub case: CaseTag,
    pub group: AbelianGroup,
    pub field: CycloField,
    pub generators: Vec<GrElem<Cyc>>,
    pub fractional_audit: Vec<FractionalStep>,
    pub trivial_zero_order: u32,
}

impl FittingGenerators {
    pub fn handle(&self, p: u64, trunc: u32) -> Result<IdealHandle> {
        let ctx = IdealCtx::new(self.group.clone(), self.field.clone(), p, trunc)?;
        Ok(IdealHandle::new(ctx, self.generators.clone()))
    }

    pub fn audit_all_integral(&self) -> bool {
        self.fractional_audit.iter().all(|s| s.p_integral)
    }
}

fn norm_of_group(f: &CycloField, g: &AbelianGroup) -> GrElem<Cyc> {
    let members: Vec<_> = g.elements().collect();
    gring::norm_element(g, f, &members)
}

/// x * n(G) / k computed through the augmentation (x n(G) = aug(x) n(G)),
/// with the p-integrality of aug(x)/k audited.
fn norm_quotient(
    f: &CycloField,
    g: &AbelianGroup,
    p: u64,
    x: &GrElem<Cyc>,
    k: i64,
    what: &str,
    audit: &mut Vec<FractionalStep>,
) -> GrElem<Cyc> {
    let aug = gring::augmentation(f, x);
    let scaled = f.scale(&BigRational::new(1.into(), k.into()), &aug);
    let integral = f.is_p_integral(&scaled, p);
    audit.push(FractionalStep {
        what: what.into(),
        denominator: k.to_string(),
        p_integral: integral,
    });
    let n = norm_of_group(f, g);
    if integral {
        gring::scale(f, &scaled, &n)
    } else {
        // the divided value is not p-integral: emit the undivided product
        // with the failure recorded loudly in the audit
        gring::scale(f, &aug, &n)
    }
}

/// The five-case Fitting ideal of the dual class group part, at gamma = 1.
pub fn fitting_class_dual(
    cover: &Cover,
    chi: &CharacterData,
    theta_chi: &GammaPoly,
) -> Result<FittingGenerators> {
    let f = &theta_chi.field;
    let g = &theta_chi.g_group;
    let p = cover.field_p;
    let v1 = cover.totally_ramified()?;
    let d_p = v1.degree as i64;
    let (order, reduced) = theta_chi.trivial_zero_order()?;
    let mut audit = Vec::new();
    let case;
    let generators;
    match (chi.char_type, chi.is_trivial, chi.frob_p_pairing) {
        (CharType::Type1, _, _) => {
            case = CaseTag::Type1;
            generators = vec![theta_chi.eval_at_one()];
        }
        (CharType::Type2, _, _) => {
            case = CaseTag::Type2;
            if order < 1 {
                return Err(Error::theorem(
                    "type-2 division by (1 - gamma^-1) inexact: no trivial zero",
                ));
            }
            let one_minus_g = one_minus_g(f, g);
            let quot = theta_chi.divide_exact(&one_minus_g, "type-2 (1 - gamma^-1)")?;
            generators = vec![quot.eval_at_one()];
        }
        (CharType::Type3, false, Some(k)) if k != 0 => {
            case = CaseTag::Type3FrobNontrivial;
            if order < 1 {
                return Err(Error::theorem(
                    "type-3 division by (1 - gamma^-1) inexact: no trivial zero",
                ));
            }
            let quot = theta_chi.divide_exact(&one_minus_g(f, g), "type-3 (1 - gamma^-1)")?;
            let y = quot.eval_at_one();
            // second generator y * n(G) / (1 - chi(Fr_p)^{-1})
            let e = cover.split.h.exponent().max(1);
            let zeta_inv = f.root_of_unity(((e - k % e) % e) * (f.order() / e));
            let den = f.sub(&f.one(), &zeta_inv);
            let den_inv = f.inv(&den)?;
            let integral = f.is_p_integral(&den_inv, p);
            audit.push(FractionalStep {
                what: "n(G) / (1 - chi(Fr_p)^-1)".into(),
                denominator: format!("1 - zeta^-{k}"),
                p_integral: integral,
            });
            if !integral {
                return Err(Error::theorem(
                    "1/(1 - chi(Fr_p)^-1) is not p-integral (prime-to-p root expected)",
                ));
            }
            let aug = gring::augmentation(f, &y);
            let c = f.mul(&aug, &den_inv);
            let second = gring::scale(f, &c, &norm_of_group(f, g));
            generators = vec![y, second];
        }
        (CharType::Type3, false, _) => {
            case = CaseTag::Type3DoubleZero;
            if order < 2 {
                return Err(Error::theorem(format!(
                    "type-3 double zero expected, found order {order}"
                )));
            }
            let quot = theta_chi
                .divide_exact(&one_minus_g(f, g), "type-3 first (1 - gamma^-1)")?
                .divide_exact(&one_minus_g(f, g), "type-3 second (1 - gamma^-1)")?;
            let y = quot.eval_at_one();
            generators = vec![norm_quotient(f, g, p, &y, d_p, "n(G)/deg(p)", &mut audit)];
        }
        (CharType::Type3, true, _) => {
            case = CaseTag::TrivialCharacter;
            if order < 1 {
                return Err(Error::theorem(
                    "trivial-character division by (1 - gamma^-1) inexact",
                ));
            }
            let quot = theta_chi.divide_exact(&one_minus_g(f, g), "chi_0 (1 - gamma^-1)")?;
            let y = quot.eval_at_one();
            let second = norm_quotient(f, g, p, &y, d_p, "n(G)/deg(p)", &mut audit);
            generators = vec![y, second];
        }
    }
    let _ = reduced;
    Ok(FittingGenerators {
        case,
        group: g.clone(),
        field: f.clone(),
        generators,
        fractional_audit: audit,
        trivial_zero_order: order,
    })
}

fn one_minus_g(f: &CycloField, g: &AbelianGroup) -> Vec<GrElem<Cyc>> {
    vec![gring::one(g, f), gring::neg(f, &gring::one(g, f))]
}

/// Generators of the Tate-module-dual Fitting ideal as polynomials in
/// g = gamma^{-1} (the two-step-cover product form per character).
pub struct GammaFitting {
    pub case: CaseTag,
    pub generators: Vec<GammaPoly>,
}

/// The local factor 1 - chi(Fr_H)^{-1} [Fr_G]^{-1} g^{d_v} as a divisor or
/// multiplier polynomial over W[G].
fn chi_local_factor(
    cover: &Cover,
    f: &CycloField,
    chi: &CharacterData,
    v: &crate::cover::RamifiedPlace,
) -> Vec<GrElem<Cyc>> {
    let g = &cover.split.g;
    let e = cover.split.h.exponent().max(1);
    let pairing = cover.split.h.char_pairing(&chi.chi, &v.frob_h);
    let zeta_inv = f.root_of_unity(((e - pairing % e) % e) * (f.order() / e));
    let frob_g_inv = g.neg(&v.frob_g);
    let mut out = vec![GrElem::zero(); v.degree as usize + 1];
    out[0] = gring::one(g, f);
    out[v.degree as usize] =
        gring::term(f, g.index_of(&frob_g_inv), f.neg(&zeta_inv));
    out
}

/// Fitting ideal of the chi-part of the dual Tate module: divide the
/// character part by the local factors of the totally split-in-G part of
/// S_chi, then expand the two-generator factors of the rest.
pub fn fitting_tate_dual_chi(
    cover: &Cover,
    chi: &CharacterData,
    theta_chi: &GammaPoly,
) -> Result<GammaFitting> {
    let f = &theta_chi.field;
    let g = &cover.split.g;
    let h = &cover.split.h;
    let v1 = cover.totally_ramified()?;
    // S_chi and its inertia-free-in-G part
    let mut divisors: Vec<(String, Vec<GrElem<Cyc>>)> = Vec::new();
    let mut pairs: Vec<(String, GrElem<Cyc>, Vec<GrElem<Cyc>>)> = Vec::new();
    for v in &cover.s {
        if !h.char_trivial_on(&chi.chi, &v.inertia_h) {
            continue; // chi kills this place's contribution
        }
        if chi.is_trivial && v.label == v1.label {
            continue; // the totally ramified place gets the special factor
        }
        let factor = chi_local_factor(cover, f, chi, v);
        let g_inertia_order = g.subgroup_order(&v.inertia_g);
        if g_inertia_order == 1 {
            divisors.push((v.label.clone(), factor));
        } else {
            let members = g.span(&v.inertia_g);
            let n_i = gring::norm_element(g, f, &members);
            pairs.push((v.label.clone(), n_i, factor));
        }
    }
    let mut base = theta_chi.clone();
    for (label, div) in &divisors {
        base = base.divide_exact(div, &format!("local factor at {label}"))?;
    }
    let mut generators = vec![base.clone()];
    let mut case = CaseTag::TateDualChi;
    if chi.is_trivial {
        case = CaseTag::TotallyRamifiedProduct;
        // the special pair (1, n(G) (1-g)/(1-g^{d_{v1}})): realized as
        // n(G) / (1 + g + ... + g^{d-1})
        let mut cyclotomic_sum = vec![gring::one(g, f); v1.degree as usize];
        if cyclotomic_sum.is_empty() {
            cyclotomic_sum = vec![gring::one(g, f)];
        }
        let n_g = norm_of_group(f, g);
        let mut with_norm = base.mul_elem(&n_g);
        with_norm = with_norm.divide_exact(
            &cyclotomic_sum,
            "trivial-character norm factor (1 + g + ... + g^{d_p - 1})",
        )?;
        generators.push(with_norm);
    }
    // expand the two-generator factors
    for (label, n_i, factor) in &pairs {
        let mut next = Vec::new();
        for gen in &generators {
            next.push(gen.clone());
            let frac = gen
                .mul_elem(n_i)
                .divide_exact(factor, &format!("inertia-norm factor at {label}"))?;
            next.push(frac);
        }
        generators = next;
    }
    Ok(GammaFitting { case, generators })
}

/// gamma = 1 image of the product-form ideal, per character, assembled
/// into the full group ring through the idempotents.
pub fn fitting_totram_at_one(cover: &Cover, d: u32) -> Result<FittingGenerators> {
    let field = CycloField::new(cover.split.h.exponent().max(1));
    let theta = theta::theta_euler(cover, d)?;
    let mut generators: Vec<GrElem<Cyc>> = Vec::new();
    let mut audit = Vec::new();
    for chi in cover.characters() {
        let ct = theta::chi_theta(cover, &theta, &chi)?;
        let tchi = theta::substitute_gamma(&ct)?;
        let gf = fitting_tate_dual_chi(cover, &chi, &tchi)?;
        let e_chi = cover.split.idempotent(&field, &chi.chi);
        for gen in &gf.generators {
            let v = gen.eval_at_one();
            let emb = cover.split.embed_g(&field, &v);
            let full = gring::mul(&cover.split.full, &field, &emb, &e_chi);
            if !full.is_zero() {
                generators.push(full);
            }
        }
        audit.push(FractionalStep {
            what: format!("idempotent for chi = {:?}", chi.chi),
            denominator: cover.split.h.order().to_string(),
            p_integral: true,
        });
    }
    Ok(FittingGenerators {
        case: CaseTag::TotallyRamifiedProduct,
        group: cover.split.full.clone(),
        field,
        generators,
        fractional_audit: audit,
        trivial_zero_order: 0,
    })
}

/// Subset-corestriction generators: for every subset W of S' = S - {v_1},
/// the integer g_W = prod |I_v| / |I_W| times the corestriction of the
/// quotient cover's Stickelberger value at 1.
pub fn fitting_subset_form(cover: &Cover, d: u32) -> Result<FittingGenerators> {
    let field = CycloField::new(cover.split.h.exponent().max(1));
    let v1 = cover.totally_ramified()?;
    let others: Vec<&str> = cover
        .s
        .iter()
        .filter(|v| v.label != v1.label)
        .map(|v| v.label.as_str())
        .collect();
    let mut generators = Vec::new();
    let mut audit = Vec::new();
    for mask in 0..(1u32 << others.len()) {
        let w: Vec<&str> = others
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &l)| l)
            .collect();
        let (quot, proj) = cover.quotient_with_projection(&w)?;
        // g_W = prod |I_v| / |I_W|
        let mut prod: u64 = 1;
        let mut joint_gens = Vec::new();
        for &lbl in &w {
            let v = cover.place(lbl)?;
            let span = cover.inertia_subgroup(v);
            prod *= span.len() as u64;
            joint_gens.extend(span);
        }
        let joint = if joint_gens.is_empty() {
            1
        } else {
            cover.split.full.span(&joint_gens).len() as u64
        };
        let g_w = (prod / joint) as i64;
        audit.push(FractionalStep {
            what: format!("g_W for W = {w:?}"),
            denominator: joint.to_string(),
            p_integral: true,
        });
        let value = theta::theta_value_at_one(&quot, d, &field)?;
        let cor = gring::corestrict(&cover.split.full, &quot.split.full, |y| proj.apply(y), &value);
        let gen = gring::scale(&field, &field.from_i64(g_w), &cor);
        if !gen.is_zero() {
            generators.push(gen);
        }
    }
    Ok(FittingGenerators {
        case: CaseTag::SubsetCorestriction,
        group: cover.split.full.clone(),
        field,
        generators,
        fractional_audit: audit,
        trivial_zero_order: 0,
    })
}

// ---------------------------------------------------------------------------
// generic Fitting ideal of a finitely presented module
// ---------------------------------------------------------------------------

/// A finitely presented module over W[G]: `relations` are rows, one per
/// relation, each with `generators` entries.
pub struct PresentedModule {
    pub group: AbelianGroup,
    pub field: CycloField,
    pub generators: usize,
    pub relations: Vec<Vec<GrElem<Cyc>>>,
}

/// Initial Fitting ideal: all maximal minors of the relation matrix,
/// by exact cofactor expansion.
pub fn generic_fitting(m: &PresentedModule) -> Result<Vec<GrElem<Cyc>>> {
    let r = m.generators;
    if r > 6 {
        return Err(Error::guardrail("presentation with more than 6 generators"));
    }
    for row in &m.relations {
        if row.len() != r {
            return Err(Error::validation("relation row of wrong length"));
        }
    }
    if m.relations.len() < r {
        return Ok(vec![]); // zero ideal
    }
    let mut minors = Vec::new();
    let idx: Vec<usize> = (0..m.relations.len()).collect();
    for rows in combinations(&idx, r) {
        let det = determinant(&m.group, &m.field, &m.relations, &rows);
        if !det.is_zero() {
            minors.push(det);
        }
    }
    Ok(minors)
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

fn determinant(
    group: &AbelianGroup,
    field: &CycloField,
    rows: &[Vec<GrElem<Cyc>>],
    pick: &[usize],
) -> GrElem<Cyc> {
    let n = pick.len();
    if n == 0 {
        return gring::one(group, field);
    }
    // cofactor expansion along the first row
    let mut acc: GrElem<Cyc> = GrElem::zero();
    for j in 0..n {
        let entry = &rows[pick[0]][j];
        if entry.is_zero() {
            continue;
        }
        let sub_pick: Vec<usize> = pick[1..].to_vec();
        let sub_rows: Vec<Vec<GrElem<Cyc>>> = sub_pick
            .iter()
            .map(|&ri| {
                rows[ri]
                    .iter()
                    .enumerate()
                    .filter(|(jj, _)| *jj != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let local_pick: Vec<usize> = (0..sub_rows.len()).collect();
        let minor = determinant(group, field, &sub_rows, &local_pick);
        let t = gring::mul(group, field, entry, &minor);
        if j % 2 == 0 {
            acc = gring::add(field, &acc, &t);
        } else {
            acc = gring::sub(field, &acc, &t);
        }
    }
    acc
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

    fn theta_chi_of(cover: &Cover, chi: &CharacterData, d: u32) -> GammaPoly {
        let th = theta::theta_euler(cover, d).unwrap();
        let ct = theta::chi_theta(cover, &th, chi).unwrap();
        theta::substitute_gamma(&ct).unwrap()
    }

    #[test]
    fn type1_unit_ideal_at_level1() {
        // q=3, p=t, n=1: quadratic chi is type 1 with Theta_chi = 1, so the
        // Fitting ideal is the unit ideal (genus-0 layer)
        let c = carlitz(3, "t", 1, 5);
        let chi = c.classify_character(&vec![1]).unwrap();
        let tchi = theta_chi_of(&c, &chi, 5);
        let fit = fitting_class_dual(&c, &chi, &tchi).unwrap();
        assert_eq!(fit.case, CaseTag::Type1);
        assert_eq!(fit.generators.len(), 1);
        assert_eq!(fit.generators[0], gring::one(&c.split.g, &fit.field));
    }

    #[test]
    fn trivial_character_case_runs_with_audit() {
        let c = carlitz(3, "t", 2, 6);
        let chi = c.classify_character(&vec![0]).unwrap();
        let tchi = theta_chi_of(&c, &chi, 6);
        let fit = fitting_class_dual(&c, &chi, &tchi).unwrap();
        assert_eq!(fit.case, CaseTag::TrivialCharacter);
        assert_eq!(fit.generators.len(), 2);
        assert!(fit.audit_all_integral());
        assert!(fit.trivial_zero_order >= 1);
    }

    #[test]
    fn type2_division_exact_q2() {
        let c = carlitz(2, "t^2+t+1", 2, 6);
        for chi in c.characters() {
            if chi.is_trivial {
                continue;
            }
            let tchi = theta_chi_of(&c, &chi, 6);
            let fit = fitting_class_dual(&c, &chi, &tchi).unwrap();
            assert_eq!(fit.case, CaseTag::Type2);
            assert!(fit.trivial_zero_order >= 1);
        }
    }

    #[test]
    fn synthetic_double_zero_case() {
        // constructed input: type-3 chi != chi_0 with chi(Fr) = 1 and
        // Theta = (1-g)^2 * c: single generator c|_{g=1} n(G)/d_p
        let g = AbelianGroup::cyclic(3);
        let f = CycloField::new(4);
        let one = gring::one(&g, &f);
        let chi = CharacterData {
            chi: vec![2],
            value_order: 2,
            char_type: CharType::Type3,
            frob_p_pairing: Some(0),
            is_trivial: false,
        };
        // only the totally ramified degree enters this case
        let c = carlitz(3, "t", 2, 4);
        let m2 = gring::scale(&f, &f.from_i64(-2), &one);
        let tchi = GammaPoly {
            g_group: g.clone(),
            field: f.clone(),
            num: vec![one.clone(), m2, one.clone()],
            denom_q: None,
        };
        let fit = fitting_class_dual(&c, &chi, &tchi).unwrap();
        assert_eq!(fit.case, CaseTag::Type3DoubleZero);
        assert_eq!(fit.trivial_zero_order, 2);
        assert_eq!(fit.generators.len(), 1);
        // c|_{g=1} = 1, d_p = 1: generator is n(G)
        let n_g = norm_of_group(&f, &g);
        assert_eq!(fit.generators[0], n_g);
    }

    #[test]
    fn minors_oracle_basics() {
        let g = AbelianGroup::cyclic(2);
        let f = CycloField::new(1);
        let one = gring::one(&g, &f);
        let a = gring::scale(&f, &f.from_i64(3), &one);
        let b = gring::sub(&f, &gring::term(&f, g.index_of(&vec![1]), f.one()), &one);
        // R/(a): single relation [a]
        let m = PresentedModule {
            group: g.clone(),
            field: f.clone(),
            generators: 1,
            relations: vec![vec![a.clone()]],
        };
        assert_eq!(generic_fitting(&m).unwrap(), vec![a.clone()]);
        // R/(a) + R/(b): diag(a,b) -> (ab)
        let m2 = PresentedModule {
            group: g.clone(),
            field: f.clone(),
            generators: 2,
            relations: vec![
                vec![a.clone(), GrElem::zero()],
                vec![GrElem::zero(), b.clone()],
            ],
        };
        let ab = gring::mul(&g, &f, &a, &b);
        assert_eq!(generic_fitting(&m2).unwrap(), vec![ab]);
        // free module: no relations -> zero ideal
        let m3 = PresentedModule {
            group: g,
            field: f,
            generators: 1,
            relations: vec![],
        };
        assert!(generic_fitting(&m3).unwrap().is_empty());
    }

    #[test]
    fn subset_form_matches_product_form_q3() {
        let c = carlitz(3, "t", 2, 6);
        let lhs = fitting_totram_at_one(&c, 6).unwrap();
        let rhs = fitting_subset_form(&c, 6).unwrap();
        let hl = lhs.handle(3, 6).unwrap();
        let hr = rhs.handle(3, 6).unwrap();
        assert!(hl.equals(&hr).unwrap());
    }
}
