//! Congruences of finite semirings: principal congruences, the full lattice,
//! the monolith, and extension of congruences from the idempotents.

use std::collections::HashSet;
use std::fmt;

use crate::algebra::{Elem, FiniteSemiring, MulTable};
use crate::error::{Error, Result};
use crate::partition::{Partition, UnionFind};
use crate::semigroup::idempotents;
use crate::terms::{member_of, VarietySpec};

/// Largest carrier `all_congruences` accepts.
pub const MAX_LATTICE_ORDER: usize = 64;

/// A partition of the carrier compatible with `+` and `·`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    partition: Partition,
}

impl Congruence {
    /// Checks compatibility with both operations before accepting `partition`.
    pub fn new(s: &FiniteSemiring, partition: Partition) -> Result<Self> {
        if partition.len() != s.order() {
            return Err(Error::Malformed(format!(
                "partition covers {} elements, algebra has {}",
                partition.len(),
                s.order()
            )));
        }
        if let Some((a, b, c)) = compatibility_witness(s, &partition) {
            return Err(Error::Precondition(format!(
                "{partition} is not a congruence: {a} ~ {b} but translating by {c} separates them"
            )));
        }
        Ok(Congruence { partition })
    }

    pub fn identity(s: &FiniteSemiring) -> Self {
        Congruence {
            partition: Partition::identity(s.order()),
        }
    }

    pub fn total(s: &FiniteSemiring) -> Self {
        Congruence {
            partition: Partition::total(s.order()),
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.partition.related(a, b)
    }

    pub fn is_identity(&self) -> bool {
        self.partition.is_identity()
    }

    pub fn is_total(&self) -> bool {
        self.partition.is_total()
    }

    pub fn block_count(&self) -> usize {
        self.partition.block_count()
    }

    pub fn contains(&self, other: &Congruence) -> bool {
        other.partition.refines(&self.partition)
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.partition.fmt(f)
    }
}

/// A pair in the same block and a constant whose translation separates them.
pub fn compatibility_witness(s: &FiniteSemiring, p: &Partition) -> Option<(Elem, Elem, Elem)> {
    for block in p.blocks() {
        let Some(&a) = block.first() else { continue };
        for &b in &block[1..] {
            for c in s.elements() {
                if !p.related(s.add(a, c), s.add(b, c))
                    || !p.related(s.mul(a, c), s.mul(b, c))
                    || !p.related(s.mul(c, a), s.mul(c, b))
                {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Least congruence containing all `pairs`.
///
/// Each pair that merges two classes is queued; its images under the
/// translations `x+c`, `xc`, `cx` are merged in turn until nothing changes.
pub fn generate_congruence(s: &FiniteSemiring, pairs: &[(Elem, Elem)]) -> Congruence {
    let mut uf = UnionFind::new(s.order());
    let mut queue: Vec<(Elem, Elem)> = Vec::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            queue.push((a, b));
        }
    }
    while let Some((a, b)) = queue.pop() {
        for c in s.elements() {
            for (x, y) in [
                (s.add(a, c), s.add(b, c)),
                (s.mul(a, c), s.mul(b, c)),
                (s.mul(c, a), s.mul(c, b)),
            ] {
                if uf.union(x, y) {
                    queue.push((x, y));
                }
            }
        }
    }
    Congruence {
        partition: uf.into_partition(),
    }
}

/// `Cg(a, b)`.
pub fn principal_congruence(s: &FiniteSemiring, a: Elem, b: Elem) -> Congruence {
    generate_congruence(s, &[(a, b)])
}

pub fn join(s: &FiniteSemiring, x: &Congruence, y: &Congruence) -> Congruence {
    let joined = x.partition.join(&y.partition);
    let pairs: Vec<(Elem, Elem)> = joined
        .blocks()
        .iter()
        .flat_map(|b| b.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>())
        .collect();
    generate_congruence(s, &pairs)
}

pub fn meet(x: &Congruence, y: &Congruence) -> Congruence {
    Congruence {
        partition: x.partition.meet(&y.partition),
    }
}

/// Distinct principal congruences `Cg(a,b)`, `a < b`, in order of first appearance.
pub fn principal_congruences(s: &FiniteSemiring) -> Vec<Congruence> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in s.elements() {
        for b in a + 1..s.order() {
            let c = principal_congruence(s, a, b);
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
    }
    out
}

/// Every congruence of `s`: the identity and all principal congruences, closed
/// under joins. Sorted from most blocks (identity) to fewest (total).
pub fn all_congruences(s: &FiniteSemiring) -> Result<Vec<Congruence>> {
    if s.order() > MAX_LATTICE_ORDER {
        return Err(Error::TooLarge {
            what: "carrier",
            size: s.order(),
            limit: MAX_LATTICE_ORDER,
        });
    }
    let mut all = vec![Congruence::identity(s)];
    let mut seen: HashSet<Congruence> = all.iter().cloned().collect();
    for c in principal_congruences(s) {
        if seen.insert(c.clone()) {
            all.push(c);
        }
    }
    let mut i = 0;
    while i < all.len() {
        for j in 0..i {
            let c = join(s, &all[i], &all[j]);
            if seen.insert(c.clone()) {
                all.push(c);
            }
        }
        i += 1;
    }
    all.sort_by(|x, y| {
        y.block_count()
            .cmp(&x.block_count())
            .then_with(|| x.partition.cmp(&y.partition))
    });
    Ok(all)
}

/// Pairs `(i, j)` of indices into `lattice` with `lattice[i]` covered by `lattice[j]`.
pub fn hasse_covers(lattice: &[Congruence]) -> Vec<(usize, usize)> {
    let below = |i: usize, j: usize| i != j && lattice[j].contains(&lattice[i]);
    let mut covers = Vec::new();
    for i in 0..lattice.len() {
        for j in 0..lattice.len() {
            if below(i, j) && !(0..lattice.len()).any(|m| below(i, m) && below(m, j)) {
                covers.push((i, j));
            }
        }
    }
    covers
}

/// Least non-identity congruence, if there is one.
pub fn monolith(s: &FiniteSemiring) -> Result<Option<Congruence>> {
    if s.order() < 2 {
        return Err(Error::Trivial);
    }
    let mut acc = Congruence::total(s);
    for c in principal_congruences(s) {
        acc = meet(&acc, &c);
        if acc.is_identity() {
            return Ok(None);
        }
    }
    Ok(Some(acc))
}

pub fn is_subdirectly_irreducible(s: &FiniteSemiring) -> Result<bool> {
    Ok(monolith(s)?.is_some())
}

pub fn is_congruence_simple(s: &FiniteSemiring) -> Result<bool> {
    if s.order() < 2 {
        return Err(Error::Trivial);
    }
    Ok(all_congruences(s)?.len() == 2)
}

/// Extends a congruence on the subsemiring of idempotents to all of `s`.
///
/// `rho` is a congruence on `idempotents(s).subsemiring`, whose element `i` is the
/// `i`-th idempotent of `s` in ascending order. The relation
/// `a τ b ⇔ ∃ e ∈ E(S): ea = eb, e ρ a^{n-1}, a^{n-1} ρ b^{n-1}`
/// is built pointwise; it must be an equivalence, compatible with both operations,
/// and restrict to `rho` on the idempotents, otherwise a falsification is returned.
pub fn extend_idempotent_congruence(
    s: &FiniteSemiring,
    n: u32,
    rho: &Congruence,
) -> Result<Congruence> {
    let variety = VarietySpec::m(n)?;
    if !member_of(s, &variety) {
        return Err(Error::Precondition(format!(
            "algebra is not a member of {}",
            variety.name
        )));
    }
    let e = idempotents(s)?;
    if rho.partition.len() != e.elements.len() {
        return Err(Error::Precondition(format!(
            "congruence covers {} elements but there are {} idempotents",
            rho.partition.len(),
            e.elements.len()
        )));
    }
    if let Some((a, b, c)) = compatibility_witness(&e.subsemiring, &rho.partition) {
        return Err(Error::Precondition(format!(
            "{} is not a congruence on the idempotents: {a} ~ {b}, translation by {c}",
            rho.partition
        )));
    }

    let k = s.order();
    let local = |x: Elem| e.index_of(x).expect("power n-1 is idempotent");
    let in_rho = |x: Elem, y: Elem| rho.related(local(x), local(y));
    let top: Vec<Elem> = s.elements().map(|a| s.power(a, n - 1)).collect();
    let related = |a: Elem, b: Elem| {
        in_rho(top[a], top[b])
            && e.elements
                .iter()
                .any(|&f| s.mul(f, a) == s.mul(f, b) && in_rho(f, top[a]))
    };
    let tau: Vec<Vec<bool>> = (0..k)
        .map(|a| (0..k).map(|b| related(a, b)).collect())
        .collect();

    for a in 0..k {
        if !tau[a][a] {
            return Err(Error::Falsified(format!(
                "extended relation is not reflexive at {a}"
            )));
        }
        for b in 0..k {
            if tau[a][b] && !tau[b][a] {
                return Err(Error::Falsified(format!(
                    "extended relation is not symmetric: ({a},{b}) but not ({b},{a})"
                )));
            }
            if tau[a][b] {
                if let Some(c) = (0..k).find(|&c| tau[b][c] && !tau[a][c]) {
                    return Err(Error::Falsified(format!(
                        "extended relation is not transitive: ({a},{b}), ({b},{c}) but not ({a},{c})"
                    )));
                }
            }
        }
    }
    let keys: Vec<Elem> = (0..k)
        .map(|a| (0..k).find(|&b| tau[a][b]).expect("reflexive"))
        .collect();
    let partition = Partition::from_keys(&keys);
    let tau = Congruence::new(s, partition)
        .map_err(|err| Error::Falsified(format!("extended relation: {err}")))?;
    let restricted = tau.partition.restrict(&e.elements);
    if restricted != rho.partition {
        return Err(Error::Falsified(format!(
            "extension restricts to {restricted} on the idempotents, expected {}",
            rho.partition
        )));
    }
    Ok(tau)
}

/// Independent congruence enumeration by scanning every set partition.
///
/// Shares nothing with the closure engine above: partitions are generated as
/// restricted growth strings and compatibility is tested pair by pair.
pub mod oracle {
    use crate::algebra::FiniteSemiring;
    use crate::error::{Error, Result};

    pub const MAX_ORDER: usize = 8;

    /// All congruences as restricted growth strings (block of element 0 is 0,
    /// each new block gets the next label), in lexicographic order.
    pub fn brute_force_congruences(s: &FiniteSemiring) -> Result<Vec<Vec<usize>>> {
        let k = s.order();
        if k > MAX_ORDER {
            return Err(Error::TooLarge {
                what: "carrier for the partition scan",
                size: k,
                limit: MAX_ORDER,
            });
        }
        let mut out = Vec::new();
        let mut rgs = vec![0usize; k];
        loop {
            if is_compatible(s, &rgs) {
                out.push(rgs.clone());
            }
            if !next_rgs(&mut rgs) {
                break;
            }
        }
        Ok(out)
    }

    fn next_rgs(rgs: &mut [usize]) -> bool {
        let k = rgs.len();
        for i in (1..k).rev() {
            let max_before = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_before {
                rgs[i] += 1;
                for x in rgs[i + 1..].iter_mut() {
                    *x = 0;
                }
                return true;
            }
        }
        false
    }

    fn is_compatible(s: &FiniteSemiring, label: &[usize]) -> bool {
        let k = s.order();
        for a in 0..k {
            for b in 0..k {
                if label[a] != label[b] {
                    continue;
                }
                for c in 0..k {
                    if label[s.add(a, c)] != label[s.add(b, c)]
                        || label[s.add(c, a)] != label[s.add(c, b)]
                        || label[s.mul(a, c)] != label[s.mul(b, c)]
                        || label[s.mul(c, a)] != label[s.mul(c, b)]
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::oracle::brute_force_congruences;
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

    fn as_labels(cs: &[Congruence]) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = cs.iter().map(|c| c.partition().labels().to_vec()).collect();
        v.sort();
        v
    }

    #[test]
    fn principal_examples() {
        let f = flat_z2();
        assert!(principal_congruence(&f, 1, 1).is_identity());
        assert!(principal_congruence(&f, 0, 1).is_total());
        assert!(principal_congruence(&lattice_b(), 0, 1).is_total());
    }

    #[test]
    fn lattices_of_small_examples() {
        let b = lattice_b();
        let cs = all_congruences(&b).unwrap();
        assert_eq!(cs.len(), 2);
        assert!(cs[0].is_identity() && cs[1].is_total());
        let f = flat_z2();
        let cs = all_congruences(&f).unwrap();
        assert_eq!(as_labels(&cs), brute_force_congruences(&f).unwrap());
        assert_eq!(cs.len(), 2);
    }

    #[test]
    fn product_of_lattices_is_not_subdirectly_irreducible() {
        let bb = lattice_b().product(&lattice_b());
        assert_eq!(monolith(&bb).unwrap(), None);
        assert!(!is_subdirectly_irreducible(&bb).unwrap());
        assert!(!is_congruence_simple(&bb).unwrap());
        let cs = all_congruences(&bb).unwrap();
        assert_eq!(as_labels(&cs), brute_force_congruences(&bb).unwrap());
    }

    #[test]
    fn simple_examples() {
        let b = lattice_b();
        assert!(is_subdirectly_irreducible(&b).unwrap());
        assert!(is_congruence_simple(&b).unwrap());
        assert!(monolith(&flat_z2()).unwrap().unwrap().is_total());
    }

    #[test]
    fn trivial_algebra_is_rejected() {
        let one = FiniteSemiring::new(&[vec![0]], &[vec![0]]).unwrap();
        assert_eq!(monolith(&one), Err(Error::Trivial));
        assert_eq!(is_congruence_simple(&one), Err(Error::Trivial));
    }

    #[test]
    fn hasse_diagram_of_chain() {
        let bb = lattice_b().product(&lattice_b());
        let cs = all_congruences(&bb).unwrap();
        let covers = hasse_covers(&cs);
        // Identity is covered only by atoms, never directly by total.
        let total = cs.len() - 1;
        assert!(!covers.contains(&(0, total)));
    }

    #[test]
    fn congruence_rejects_incompatible_partition() {
        let f = flat_z2();
        let p = Partition::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
        assert!(Congruence::new(&f, p).is_err());
    }

    #[test]
    fn extension_in_flat_z2() {
        let f = flat_z2();
        // E = {0, 2}: identity and zero
        let e = idempotents(&f).unwrap();
        let identity = Congruence::identity(&e.subsemiring);
        assert!(extend_idempotent_congruence(&f, 3, &identity)
            .unwrap()
            .is_identity());
        let total = Congruence::total(&e.subsemiring);
        assert!(extend_idempotent_congruence(&f, 3, &total)
            .unwrap()
            .is_total());
        assert!(matches!(
            extend_idempotent_congruence(&f, 2, &total),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn extension_on_idempotent_algebra_is_identity_map() {
        // mul = add = max on a 3-chain: every element idempotent
        let add = vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]];
        let s = FiniteSemiring::new(&add, &add).unwrap();
        for labels in brute_force_congruences(&s).unwrap() {
            let rho = Congruence::new(&s, Partition::from_keys(&labels)).unwrap();
            let tau = extend_idempotent_congruence(&s, 2, &rho).unwrap();
            assert_eq!(tau, rho);
        }
    }
}
