//! Engineered file covers containing nontrivial type-3 characters.
//!
//! Honest covers of the rational function field have Hilbert marker
//! subgroup all of H, so their only type-3 character is trivial. The
//! double-zero phenomenon needs a proper marker subgroup, which these
//! covers supply: H = Z/4 with marker <2>, G = Z/3, over q = 3.
//!
//! The construction works backwards from prescribed character parts: the
//! type-2 characters get a polynomial with a simple zero at u = 1, the
//! type-3 character gets a simple or double zero, and the trivial part
//! gets a geometric tail whose closed form also vanishes at 1. The
//! resulting coefficient data is then factored into an Euler product,
//! choosing place multiplicities greedily so every count stays a
//! nonnegative integer; the factorization is certified by replaying the
//! product.

use crate::abelian::AbelianGroup;
use crate::cover::{Cover, RamifiedPlace, UnramifiedPlace, INFINITE_LABEL};
use crate::error::{Error, Result};
use crate::gring::{self, GrElem, IntRing};
use crate::gring::SplitGroup;

const Q: i64 = 3;
const H_ORDER: u64 = 4;
const G_ORDER: u64 = 3;

struct Design {
    /// chi-part target for the two type-2 characters (b odd).
    a_poly: Vec<i64>,
    /// chi-part target for the type-3 character (b = 2).
    b_poly: Vec<i64>,
    /// first tail degree of the trivial part
    d0: usize,
    v1_degree: u32,
    /// Frobenius class of the totally ramified place mod the marker
    v1_frob_h: u64,
}

/// Type-3 character with chi(Fr_p) != 1: both nontrivial targets share
/// the simple zero 1 - u^2 = (1-u)(1+u).
pub fn cover_type3_frob_nontrivial(degree_bound: u32) -> Result<Cover> {
    build(
        &Design {
            a_poly: vec![1, 0, -1],
            b_poly: vec![1, 0, -1],
            d0: 5,
            v1_degree: 1,
            v1_frob_h: 1,
        },
        degree_bound,
    )
}

/// Type-3 character with chi(Fr_p) = 1: the type-3 target carries the
/// double zero (1-u)^2 (1+u)^2, the type-2 one the simple zero 1 - u^4.
pub fn cover_type3_double_zero(degree_bound: u32) -> Result<Cover> {
    build(
        &Design {
            a_poly: vec![1, 0, 0, 0, -1],
            b_poly: vec![1, 0, -2, 0, 1],
            d0: 5,
            v1_degree: 2,
            v1_frob_h: 0,
        },
        degree_bound,
    )
}

fn build(design: &Design, degree_bound: u32) -> Result<Cover> {
    let h = AbelianGroup::cyclic(H_ORDER);
    let g = AbelianGroup::cyclic(G_ORDER);
    let split = SplitGroup::new(h.clone(), g.clone());
    let full = &split.full;
    let ring = IntRing;
    let d0 = design.d0;
    let top = degree_bound as usize;
    if top < d0 + 1 {
        return Err(Error::validation("degree bound too small for the designed tail"));
    }
    let at = |d: usize, poly: &[i64]| poly.get(d).copied().unwrap_or(0);
    // a_d, f_d from the two nontrivial targets (they must agree mod 2)
    let mut a = vec![0i64; d0];
    let mut fpart = vec![0i64; d0];
    for d in 0..d0 {
        let s = at(d, &design.a_poly) + at(d, &design.b_poly);
        let df = at(d, &design.b_poly) - at(d, &design.a_poly);
        if s % 2 != 0 {
            return Err(Error::validation("designed targets have mismatched parity"));
        }
        a[d] = s / 2;
        fpart[d] = df / 2;
    }
    let structural = |d: usize, hh: u64, gg: u64| -> i64 {
        let mut v = 0;
        if hh == 0 && gg == 0 {
            v += a.get(d).copied().unwrap_or(0);
        }
        if hh == 2 && gg == 0 {
            v += fpart.get(d).copied().unwrap_or(0);
        }
        v
    };
    let key = |hh: u64, gg: u64| full.index_of(&[hh, gg]);
    // Euler state and chosen places
    let mut euler: Vec<GrElem<i64>> = vec![GrElem::zero(); top + 1];
    euler[0] = gring::one(full, &ring);
    let mut places: Vec<UnramifiedPlace> = Vec::new();
    let mut fold = |euler: &mut Vec<GrElem<i64>>, d: usize, inv_key: u64, count: i64| {
        let x = full.elem_at(inv_key as u32);
        for _ in 0..count {
            for i in d..=top {
                let shifted = gring::translate(full, &x, &euler[i - d]);
                euler[i] = gring::add(&ring, &euler[i], &shifted);
            }
        }
    };
    let mut b_rows: Vec<[i64; 3]> = vec![[0; 3]; d0];
    let mut register_degree = |euler: &mut Vec<GrElem<i64>>,
                               places: &mut Vec<UnramifiedPlace>,
                               d: usize,
                               coeff: &dyn Fn(u64, u64) -> i64|
     -> Result<()> {
        // deficit = target coefficient - mass already generated
        let mut prime_counts: Vec<(u64, i64)> = Vec::new();
        for hh in 0..H_ORDER {
            for gg in 0..G_ORDER {
                let want = coeff(hh, gg);
                let have = euler[d]
                    .coeffs
                    .get(&key(hh, gg))
                    .copied()
                    .unwrap_or(0);
                let delta = want - have;
                if delta < 0 {
                    return Err(Error::validation(format!(
                        "synthetic design infeasible at degree {d}, class ({hh},{gg}): {delta}"
                    )));
                }
                if delta > 0 {
                    prime_counts.push((key(hh, gg) as u64, delta));
                }
            }
        }
        for (k, count) in prime_counts {
            let frob = full.neg(&full.elem_at(k as u32));
            places.push(UnramifiedPlace {
                degree: d as u32,
                frob_h: vec![frob[0]],
                frob_g: vec![frob[1]],
            });
            // multiplicity beyond one: repeated identical places
            for _ in 1..count {
                places.push(UnramifiedPlace {
                    degree: d as u32,
                    frob_h: vec![frob[0]],
                    frob_g: vec![frob[1]],
                });
            }
            fold(euler, d, k, count);
        }
        Ok(())
    };
    // low degrees: choose the uniform padding greedily
    for d in 1..d0 {
        let mut b_row = [0i64; 3];
        for gg in 0..G_ORDER as usize {
            let mut need = 0i64;
            for hh in 0..H_ORDER {
                let have = euler[d].coeffs.get(&key(hh, gg as u64)).copied().unwrap_or(0);
                need = need.max(have - structural(d, hh, gg as u64));
            }
            b_row[gg] = need.max(0);
        }
        if d == d0 - 1 {
            // pad so the column sums agree (the tail base must be a
            // multiple of the norm of G)
            let sums: Vec<i64> = (0..3)
                .map(|gg| (0..d0).map(|i| b_rows.get(i).map_or(0, |r| r[gg]) ).sum::<i64>() + b_row[gg])
                .collect();
            let s = *sums.iter().max().unwrap();
            for gg in 0..3 {
                b_row[gg] += s - sums[gg];
            }
        }
        b_rows[d] = b_row;
        register_degree(&mut euler, &mut places, d, &|hh, gg| {
            structural(d, hh, gg) + b_row[gg as usize]
        })?;
    }
    let s: i64 = (0..3).map(|gg| (0..d0).map(|i| b_rows[i][gg]).sum::<i64>()).max().unwrap();
    // the closed form of the trivial part vanishes at u = 1 exactly when
    // the tail base is twice the accumulated padding (q = 3)
    let base = 2 * s;
    let mut tail = base;
    for d in d0..=top {
        let t = tail;
        register_degree(&mut euler, &mut places, d, &|_, _| t)?;
        tail *= Q;
    }
    places.sort_by_key(|p| (p.degree, p.frob_h.clone(), p.frob_g.clone()));
    let cover = Cover {
        field_p: 3,
        field_r: 1,
        split,
        ha_subgroup: vec![vec![2]],
        s: vec![
            RamifiedPlace {
                label: "p".into(),
                degree: design.v1_degree,
                inertia_h: vec![vec![2]],
                inertia_g: vec![vec![1]],
                frob_h: vec![design.v1_frob_h],
                frob_g: vec![0],
                totally_ramified: true,
            },
            RamifiedPlace {
                label: INFINITE_LABEL.into(),
                degree: 1,
                inertia_h: vec![],
                inertia_g: vec![],
                frob_h: vec![0],
                frob_g: vec![0],
                totally_ramified: false,
            },
        ],
        degree_bound,
        places,
        cyclotomic: None,
    };
    cover.validate()?;
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::CharType;
    use crate::theta;

    #[test]
    fn both_covers_build_and_classify() {
        let a = cover_type3_frob_nontrivial(8).unwrap();
        let b = cover_type3_double_zero(8).unwrap();
        for (cover, expect_pairing) in [(&a, 2u64), (&b, 0u64)] {
            let mut type2 = 0;
            let mut type3_nontrivial = 0;
            for ch in cover.characters() {
                match ch.char_type {
                    CharType::Type1 => panic!("no type-1 characters by design"),
                    CharType::Type2 => type2 += 1,
                    CharType::Type3 => {
                        if !ch.is_trivial {
                            type3_nontrivial += 1;
                            // chi = [2]: pairing with Fr_h in Z/4
                            assert_eq!(
                                ch.frob_p_pairing.unwrap(),
                                expect_pairing,
                                "chi(Fr) exponent"
                            );
                        }
                    }
                }
            }
            assert_eq!(type2, 2);
            assert_eq!(type3_nontrivial, 1);
        }
    }

    #[test]
    fn streams_reproduce_designed_character_parts() {
        let cover = cover_type3_double_zero(8).unwrap();
        let th = theta::theta_euler(&cover, 8).unwrap();
        for ch in cover.characters() {
            let ct = theta::chi_theta(&cover, &th, &ch).unwrap();
            assert!(ct.stab.verified, "chi = {:?}", ch.chi);
            let gp = theta::substitute_gamma(&ct).unwrap();
            if ch.is_trivial {
                // rational closed form vanishes at u = 1
                assert!(gp.eval_at_one().is_zero());
            } else if ch.chi == vec![2] {
                let (k, _) = gp.trivial_zero_order().unwrap();
                assert_eq!(k, 2, "double zero");
            } else {
                let (k, _) = gp.trivial_zero_order().unwrap();
                assert_eq!(k, 1);
            }
        }
    }

    #[test]
    fn frob_nontrivial_cover_has_simple_zeros() {
        let cover = cover_type3_frob_nontrivial(8).unwrap();
        let th = theta::theta_euler(&cover, 8).unwrap();
        for ch in cover.characters() {
            if ch.is_trivial {
                continue;
            }
            let ct = theta::chi_theta(&cover, &th, &ch).unwrap();
            let gp = theta::substitute_gamma(&ct).unwrap();
            assert_eq!(gp.trivial_zero_order().unwrap().0, 1, "chi = {:?}", ch.chi);
        }
    }
}
