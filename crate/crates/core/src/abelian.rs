//! Finite abelian groups as products of cyclic factors, with subgroups,
//! quotients (via Smith normal form) and characters.
//!
//! Elements are exponent vectors reduced mod the factor orders; for
//! group-ring keys they are packed into a mixed-radix index. Factor lists
//! are not required to be in divisibility order except where noted.

use serde::{Deserialize, Serialize};

pub type Elem = Vec<u64>;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> AbelianGroup {
        AbelianGroup { factors: factors.into_iter().filter(|&d| d > 1).collect() }
    }

    pub fn trivial() -> AbelianGroup {
        AbelianGroup { factors: vec![] }
    }

    pub fn cyclic(n: u64) -> AbelianGroup {
        AbelianGroup::new(vec![n])
    }

    /// Direct product; `self`'s factors come first.
    pub fn product(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut f = self.factors.clone();
        f.extend_from_slice(&other.factors);
        AbelianGroup { factors: f }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |a, &b| num::integer::lcm(a, b))
    }

    pub fn identity(&self) -> Elem {
        vec![0; self.factors.len()]
    }

    pub fn is_identity(&self, x: &[u64]) -> bool {
        x.iter().all(|&v| v == 0)
    }

    pub fn reduce(&self, x: &[i64]) -> Elem {
        x.iter()
            .zip(&self.factors)
            .map(|(&v, &d)| v.rem_euclid(d as i64) as u64)
            .collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Elem {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Elem {
        a.iter().zip(&self.factors).map(|(&x, &d)| (d - x) % d).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn scalar(&self, k: i64, a: &[u64]) -> Elem {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| ((x as i128 * k as i128).rem_euclid(d as i128)) as u64)
            .collect()
    }

    pub fn elem_order(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| d / num::integer::gcd(x, d))
            .fold(1, num::integer::lcm)
    }

    /// Pack an exponent vector into a mixed-radix index; the first factor
    /// is the least significant digit.
    pub fn index_of(&self, a: &[u64]) -> u32 {
        debug_assert_eq!(a.len(), self.factors.len());
        let mut idx: u64 = 0;
        for (&x, &d) in a.iter().zip(&self.factors).rev() {
            idx = idx * d + x % d;
        }
        idx as u32
    }

    pub fn elem_at(&self, mut idx: u32) -> Elem {
        let mut out = Vec::with_capacity(self.factors.len());
        for &d in &self.factors {
            out.push(idx as u64 % d);
            idx = (idx as u64 / d) as u32;
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order() as u32).map(|i| self.elem_at(i))
    }

    /// Enumerate the subgroup generated by `gens` (indices into this group).
    pub fn span(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![self.identity()];
        seen.insert(self.index_of(&self.identity()));
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(self.index_of(&y)) {
                    stack.push(y);
                }
            }
        }
        seen.into_iter().map(|i| self.elem_at(i)).collect()
    }

    pub fn subgroup_order(&self, gens: &[Elem]) -> u64 {
        self.span(gens).len() as u64
    }

    /// Whether a character (dual exponent vector) is trivial on all `gens`.
    pub fn char_trivial_on(&self, chi: &[u64], gens: &[Elem]) -> bool {
        gens.iter().all(|g| self.char_pairing(chi, g) == 0)
    }

    /// The pairing <chi, x> in Z/exponent: chi(x) = zeta_e^pairing.
    pub fn char_pairing(&self, chi: &[u64], x: &[u64]) -> u64 {
        let e = self.exponent();
        let mut acc: u128 = 0;
        for ((&w, &v), &d) in chi.iter().zip(x).zip(&self.factors) {
            acc += (w as u128) * (v as u128) * ((e / d) as u128);
        }
        (acc % e as u128) as u64
    }

    /// Order of the character chi in the dual group.
    pub fn char_order(&self, chi: &[u64]) -> u64 {
        self.elem_order(chi)
    }

    /// Quotient by the subgroup generated by `gens`: returns the quotient
    /// group and the projection homomorphism.
    pub fn quotient(&self, gens: &[Elem]) -> (AbelianGroup, GroupHom) {
        let k = self.factors.len();
        if k == 0 {
            let q = AbelianGroup::trivial();
            return (q.clone(), GroupHom { dst: q, images: vec![] });
        }
        let mut rows: Vec<Vec<i128>> = Vec::new();
        for (i, &d) in self.factors.iter().enumerate() {
            let mut r = vec![0i128; k];
            r[i] = d as i128;
            rows.push(r);
        }
        for g in gens {
            rows.push(g.iter().map(|&v| v as i128).collect());
        }
        let (diag, v) = smith_normal_form(rows, k);
        // quotient = prod Z/diag[i]; drop trivial factors
        let keep: Vec<usize> = (0..k).filter(|&i| diag[i] != 1).collect();
        let q = AbelianGroup::new(keep.iter().map(|&i| diag[i] as u64).collect());
        // image of each standard generator of self
        let images: Vec<Elem> = (0..k)
            .map(|i| {
                keep.iter()
                    .map(|&j| v[i][j].rem_euclid(diag[j]) as u64)
                    .collect()
            })
            .collect();
        (q.clone(), GroupHom { dst: q, images })
    }
}

/// A homomorphism out of a product of cyclic groups, stored as the images
/// of the standard generators.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub dst: AbelianGroup,
    pub images: Vec<Elem>,
}

impl GroupHom {
    pub fn identity(g: &AbelianGroup) -> GroupHom {
        let images = (0..g.rank())
            .map(|i| {
                let mut e = g.identity();
                e[i] = 1;
                e
            })
            .collect();
        GroupHom { dst: g.clone(), images }
    }

    pub fn apply(&self, x: &[u64]) -> Elem {
        debug_assert_eq!(x.len(), self.images.len());
        let mut acc = self.dst.identity();
        for (&xi, img) in x.iter().zip(&self.images) {
            acc = self.dst.add(&acc, &self.dst.scalar(xi as i64, img));
        }
        acc
    }

    /// Composite self followed by `next`.
    pub fn then(&self, next: &GroupHom) -> GroupHom {
        GroupHom {
            dst: next.dst.clone(),
            images: self.images.iter().map(|img| next.apply(img)).collect(),
        }
    }
}

/// Smith normal form of an integer matrix whose row space has full column
/// rank n (guaranteed here because the relation rows include diag(d)).
/// Returns the diagonal (d_1 | d_2 | ... ascending) and the right
/// transformation V (n x n) with rowspace(A·V) = rowspace-diagonalized.
fn smith_normal_form(mut a: Vec<Vec<i128>>, n: usize) -> (Vec<i128>, Vec<Vec<i128>>) {
    let m = a.len();
    let mut v: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut t = 0; // pivot position
    while t < n && t < m {
        // find nonzero pivot with minimal absolute value
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().take(m).skip(t) {
                for (j, &val) in row.iter().enumerate().take(n).skip(t) {
                    if val != 0 && best.map_or(true, |(bi, bj)| val.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish_snf(a, v, t, n);
            };
            a.swap(t, bi);
            if bj != t {
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                for row in v.iter_mut() {
                    row.swap(t, bj);
                }
            }
            if a[t][t] < 0 {
                for row in a.iter_mut() {
                    row[t] = -row[t];
                }
                for row in v.iter_mut() {
                    row[t] = -row[t];
                }
            }
            let p = a[t][t];
            let mut clean = true;
            // clear column t below
            for i in t + 1..m {
                let q = div_round(a[i][t], p);
                if q != 0 {
                    for j in 0..n {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            // clear row t to the right (column ops, mirrored in v)
            for j in t + 1..n {
                let q = div_round(a[t][j], p);
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        t += 1;
    }
    finish_snf(a, v, t, n)
}

fn div_round(a: i128, b: i128) -> i128 {
    // quotient minimizing |a - q b|
    let q = a.div_euclid(b);
    let r = a - q * b;
    if 2 * r > b {
        q + 1
    } else {
        q
    }
}

fn finish_snf(
    a: Vec<Vec<i128>>,
    mut v: Vec<Vec<i128>>,
    t: usize,
    n: usize,
) -> (Vec<i128>, Vec<Vec<i128>>) {
    assert_eq!(t, n, "relation lattice must have full rank");
    let mut diag: Vec<i128> = (0..n).map(|i| a[i][i].abs()).collect();
    // Enforce d_i | d_j for i < j. For a diagonal pair (a, b) with
    // g = gcd(a, b) = s*a + t*b and l = lcm(a, b), the column operations
    //   C_i <- C_i + C_j ;  C_j <- C_j - (t*b/g) * C_i
    // together with row operations (which never touch V) turn
    // diag(a, b) into diag(g, l).
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in i + 1..n {
                let (di, dj) = (diag[i], diag[j]);
                if dj % di == 0 {
                    continue;
                }
                changed = true;
                let g = num::integer::gcd(di, dj);
                let l = di / g * dj;
                let (_, bt) = bezout(di, dj);
                let f = bt * (dj / g);
                for row in v.iter_mut() {
                    row[i] += row[j];
                    row[j] -= f * row[i];
                }
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    (diag, v)
}

fn bezout(a: i128, b: i128) -> (i128, i128) {
    if b == 0 {
        return (1, 0);
    }
    let (s, t) = bezout(b, a % b);
    (t, s - (a / b) * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_quotient() {
        let g = AbelianGroup::cyclic(4);
        let (q, pi) = g.quotient(&[vec![2]]);
        assert_eq!(q.order(), 2);
        assert_eq!(pi.apply(&[0]), pi.apply(&[2]));
        assert_ne!(pi.apply(&[1]), pi.apply(&[0]));
    }

    #[test]
    fn product_quotient_diagonal() {
        let g = AbelianGroup::new(vec![2, 4]);
        let (q, pi) = g.quotient(&[vec![1, 2]]);
        assert_eq!(q.order(), 4);
        // the kernel is exactly {0, (1,2)}
        let mut kernel = 0;
        for x in g.elements() {
            if q.is_identity(&pi.apply(&x)) {
                kernel += 1;
            }
        }
        assert_eq!(kernel, 2);
    }

    #[test]
    fn projection_is_homomorphism() {
        let g = AbelianGroup::new(vec![6, 4]);
        let (q, pi) = g.quotient(&[vec![3, 2]]);
        for a in g.elements() {
            for b in g.elements() {
                let lhs = pi.apply(&g.add(&a, &b));
                let rhs = q.add(&pi.apply(&a), &pi.apply(&b));
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(q.order() * g.subgroup_order(&[vec![3, 2]]), g.order());
    }

    #[test]
    fn span_and_orders() {
        let g = AbelianGroup::new(vec![2, 4]);
        assert_eq!(g.subgroup_order(&[vec![0, 2], vec![1, 0]]), 4);
        assert_eq!(g.elem_order(&[1, 2]), 2);
        assert_eq!(g.elem_order(&[0, 1]), 4);
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn character_pairing_orthogonality() {
        let g = AbelianGroup::new(vec![2, 4]);
        // sum over the group of zeta^<chi,x> is 0 for chi != 0 (checked via
        // pairing value distribution: each value class equally often)
        for chi in g.elements() {
            if g.is_identity(&chi) {
                continue;
            }
            let mut counts = std::collections::HashMap::new();
            for x in g.elements() {
                *counts.entry(g.char_pairing(&chi, &x)).or_insert(0u64) += 1;
            }
            let vals: Vec<u64> = counts.values().copied().collect();
            assert!(vals.iter().all(|&v| v == vals[0]));
            assert!(counts.len() > 1);
        }
    }
}
