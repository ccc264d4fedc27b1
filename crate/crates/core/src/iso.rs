//! Isomorphism testing and canonical forms for small semirings.

use crate::algebra::{Elem, FiniteSemiring};

/// Per-element data preserved by every isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Invariant {
    mul_idempotent: bool,
    mul_index: usize,
    mul_period: usize,
    left_fixed: usize,
    right_fixed: usize,
    add_absorbed: usize,
    add_row: Vec<usize>,
    mul_row: Vec<usize>,
}

/// Index and period of the cyclic subsemigroup generated by `a`.
fn index_period(s: &FiniteSemiring, a: Elem) -> (usize, usize) {
    let mut seen = vec![usize::MAX; s.order()];
    let mut x = a;
    let mut i = 1;
    loop {
        if seen[x] != usize::MAX {
            return (seen[x], i - seen[x]);
        }
        seen[x] = i;
        x = s.mul(x, a);
        i += 1;
    }
}

fn invariants(s: &FiniteSemiring) -> Vec<Invariant> {
    let k = s.order();
    let basic: Vec<(usize, usize)> = (0..k).map(|a| index_period(s, a)).collect();
    (0..k)
        .map(|a| {
            let mut add_row: Vec<usize> = (0..k).map(|b| basic[s.add(a, b)].0).collect();
            let mut mul_row: Vec<usize> = (0..k).map(|b| basic[s.mul(a, b)].1).collect();
            add_row.sort_unstable();
            mul_row.sort_unstable();
            Invariant {
                mul_idempotent: s.mul(a, a) == a,
                mul_index: basic[a].0,
                mul_period: basic[a].1,
                left_fixed: (0..k).filter(|&b| s.mul(a, b) == b).count(),
                right_fixed: (0..k).filter(|&b| s.mul(b, a) == b).count(),
                add_absorbed: (0..k).filter(|&b| s.add(a, b) == a).count(),
                add_row,
                mul_row,
            }
        })
        .collect()
}

/// Finds a bijection `f` with `f(a+b) = f(a)+f(b)` and `f(ab) = f(a)f(b)`.
///
/// Search assigns images to `0, 1, ...` in turn trying candidates in increasing
/// order, so the result is the lexicographically first isomorphism.
pub fn are_isomorphic(s1: &FiniteSemiring, s2: &FiniteSemiring) -> Option<Vec<Elem>> {
    let k = s1.order();
    if k != s2.order() {
        return None;
    }
    let inv1 = invariants(s1);
    let inv2 = invariants(s2);
    let mut sorted1 = inv1.clone();
    let mut sorted2 = inv2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return None;
    }
    let candidates: Vec<Vec<Elem>> = inv1
        .iter()
        .map(|i1| (0..k).filter(|&b| inv2[b] == *i1).collect())
        .collect();
    let mut map = vec![usize::MAX; k];
    let mut used = vec![false; k];
    if extend(s1, s2, &candidates, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn consistent(s1: &FiniteSemiring, s2: &FiniteSemiring, map: &[Elem], a: Elem) -> bool {
    for b in 0..=a {
        for (x, y) in [(a, b), (b, a)] {
            let checks = [
                (s1.add(x, y), s2.add(map[x], map[y])),
                (s1.mul(x, y), s2.mul(map[x], map[y])),
            ];
            for (src, dst) in checks {
                if src <= a && map[src] != dst {
                    return false;
                }
            }
        }
    }
    true
}

fn extend(
    s1: &FiniteSemiring,
    s2: &FiniteSemiring,
    candidates: &[Vec<Elem>],
    a: Elem,
    map: &mut [Elem],
    used: &mut [bool],
) -> bool {
    if a == s1.order() {
        return is_homomorphism(s1, s2, map);
    }
    for &b in &candidates[a] {
        if used[b] {
            continue;
        }
        map[a] = b;
        used[b] = true;
        if consistent(s1, s2, map, a) && extend(s1, s2, candidates, a + 1, map, used) {
            return true;
        }
        used[b] = false;
    }
    map[a] = usize::MAX;
    false
}

fn is_homomorphism(s1: &FiniteSemiring, s2: &FiniteSemiring, map: &[Elem]) -> bool {
    let k = s1.order();
    (0..k).all(|a| {
        (0..k).all(|b| {
            map[s1.add(a, b)] == s2.add(map[a], map[b])
                && map[s1.mul(a, b)] == s2.mul(map[a], map[b])
        })
    })
}

/// Lexicographically least `(add, mul)` table pair over all relabellings.
///
/// Exhaustive over `k!` permutations; meant for the enumerator's orders (`k <= 4`).
pub fn canonical_form(s: &FiniteSemiring) -> FiniteSemiring {
    let k = s.order();
    let mut perm: Vec<Elem> = (0..k).collect();
    let mut best: Option<(Vec<Elem>, Vec<Elem>)> = None;
    let mut best_perm = perm.clone();
    loop {
        let r = s.relabel(&perm).expect("valid permutation");
        let key = (r.add_table().to_vec(), r.mul_table().to_vec());
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
            best_perm = perm.clone();
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    s.relabel(&best_perm).expect("valid permutation")
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice_b() -> FiniteSemiring {
        FiniteSemiring::new(&[vec![0, 1], vec![1, 1]], &[vec![0, 0], vec![0, 1]]).unwrap()
    }

    fn flat_z2() -> FiniteSemiring {
        FiniteSemiring::new(
            &[vec![0, 2, 2], vec![2, 1, 2], vec![2, 2, 2]],
            &[vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]],
        )
        .unwrap()
    }

    #[test]
    fn identity_bijection_on_self() {
        assert_eq!(are_isomorphic(&lattice_b(), &lattice_b()), Some(vec![0, 1]));
    }

    #[test]
    fn different_orders_are_not_isomorphic() {
        assert_eq!(are_isomorphic(&flat_z2(), &lattice_b()), None);
    }

    #[test]
    fn relabelling_is_recovered_as_inverse() {
        let s = flat_z2();
        let perm = vec![2, 0, 1];
        let r = s.relabel(&perm).unwrap();
        let iso = are_isomorphic(&r, &s).unwrap();
        let mut inverse = vec![0; 3];
        for (a, &p) in perm.iter().enumerate() {
            inverse[p] = a;
        }
        assert_eq!(iso, inverse);
    }

    #[test]
    fn canonical_form_is_relabelling_invariant() {
        let s = flat_z2();
        let c = canonical_form(&s);
        let mut perm = vec![0, 1, 2];
        while next_permutation(&mut perm) {
            assert_eq!(canonical_form(&s.relabel(&perm).unwrap()), c);
        }
    }
}
