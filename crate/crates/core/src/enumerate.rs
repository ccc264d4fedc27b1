//! Exhaustive catalogs of small ai-semirings up to isomorphism.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::algebra::{validate_axioms, Elem, FiniteSemiring};
use crate::congruence::{is_congruence_simple, is_subdirectly_irreducible};
use crate::constructions::flat_extension;
use crate::error::{Error, Result};
use crate::iso::{are_isomorphic, canonical_form};
use crate::semigroup::zero_group;
use crate::terms::{member_of, Family, VarietySpec};
use crate::text::format_semiring;

pub const MAX_ORDER: usize = 4;

const UNSET: usize = usize::MAX;

/// All semilattice tables (commutative, idempotent, associative) on `k`
/// elements, one per isomorphism class, in ascending table order.
pub fn semilattices(k: usize) -> Vec<Vec<Elem>> {
    let cells: Vec<(usize, usize)> = (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .collect();
    let mut table = vec![UNSET; k * k];
    for a in 0..k {
        table[a * k + a] = a;
    }
    let mut found = BTreeSet::new();
    let mut choices = vec![0usize; cells.len()];
    loop {
        for (&(a, b), &v) in cells.iter().zip(&choices) {
            table[a * k + b] = v;
            table[b * k + a] = v;
        }
        let assoc = (0..k).all(|a| {
            (0..k).all(|b| {
                (0..k).all(|c| table[table[a * k + b] * k + c] == table[a * k + table[b * k + c]])
            })
        });
        if assoc {
            let s = FiniteSemiring::from_flat(k, table.clone(), table.clone()).expect("in range");
            found.insert(canonical_form(&s).add_table().to_vec());
        }
        let mut i = 0;
        loop {
            if i == choices.len() {
                return found.into_iter().collect();
            }
            choices[i] += 1;
            if choices[i] < k {
                break;
            }
            choices[i] = 0;
            i += 1;
        }
    }
}

struct Search<'a> {
    k: usize,
    add: &'a [Elem],
    mul: Vec<Elem>,
    found: Vec<Vec<Elem>>,
}

impl Search<'_> {
    fn get(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.k + b]
    }

    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.k + b]
    }

    /// Every associativity and distributivity instance whose cells are all set.
    fn consistent(&self) -> bool {
        let k = self.k;
        for a in 0..k {
            for b in 0..k {
                let ab = self.get(a, b);
                for c in 0..k {
                    if ab != UNSET {
                        let bc = self.get(b, c);
                        if bc != UNSET {
                            let (l, r) = (self.get(ab, c), self.get(a, bc));
                            if l != UNSET && r != UNSET && l != r {
                                return false;
                            }
                        }
                    }
                    let (bc_sum, ab_sum) = (self.add(b, c), self.add(a, b));
                    let left = self.get(a, bc_sum);
                    let (ab_, ac) = (ab, self.get(a, c));
                    if left != UNSET && ab_ != UNSET && ac != UNSET && left != self.add(ab_, ac) {
                        return false;
                    }
                    let right = self.get(ab_sum, c);
                    let (ac2, bc2) = (self.get(a, c), self.get(b, c));
                    if right != UNSET && ac2 != UNSET && bc2 != UNSET && right != self.add(ac2, bc2)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, cell: usize) {
        if cell == self.k * self.k {
            self.found.push(self.mul.clone());
            return;
        }
        for v in 0..self.k {
            self.mul[cell] = v;
            if self.consistent() {
                self.run(cell + 1);
            }
        }
        self.mul[cell] = UNSET;
    }
}

/// All multiplications on `add` that are associative and distribute over it.
pub fn multiplications(k: usize, add: &[Elem]) -> Vec<Vec<Elem>> {
    let mut search = Search {
        k,
        add,
        mul: vec![UNSET; k * k],
        found: Vec::new(),
    };
    search.run(0);
    search.found
}

/// Every ai-semiring of order `k` in `v`, one per isomorphism class, each in its
/// canonical (lexicographically least) labelling, sorted by that labelling.
pub fn enumerate(k: usize, v: &VarietySpec) -> Result<Vec<FiniteSemiring>> {
    if k > MAX_ORDER {
        return Err(Error::TooLarge {
            what: "enumeration order",
            size: k,
            limit: MAX_ORDER,
        });
    }
    if k == 0 {
        return Err(Error::Precondition("order must be positive".into()));
    }
    if v.family == Family::Group {
        return Err(Error::Precondition(format!(
            "{} is a group variety; catalogs hold semirings",
            v.name
        )));
    }
    let mut canon: BTreeSet<(Vec<Elem>, Vec<Elem>)> = BTreeSet::new();
    for add in semilattices(k) {
        for mul in multiplications(k, &add) {
            let s = FiniteSemiring::from_flat(k, add.clone(), mul).expect("in range");
            if member_of(&s, v) {
                let c = canonical_form(&s);
                canon.insert((c.add_table().to_vec(), c.mul_table().to_vec()));
            }
        }
    }
    Ok(canon
        .into_iter()
        .map(|(add, mul)| FiniteSemiring::from_flat(k, add, mul).expect("in range"))
        .collect())
}

/// Catalogs for every order `1..=max_order`.
pub fn enumerate_up_to(max_order: usize, v: &VarietySpec) -> Result<Vec<Vec<FiniteSemiring>>> {
    (1..=max_order).map(|k| enumerate(k, v)).collect()
}

/// Stable file name for catalog entry `index` (0-based) of order `k`.
pub fn catalog_file_name(v: &VarietySpec, k: usize, index: usize) -> String {
    format!("{}_k{}_{}.alg", v.short_name(), k, index)
}

/// Writes each catalog entry in the text format and returns the paths written.
pub fn write_catalog(
    dir: &Path,
    v: &VarietySpec,
    catalog: &[FiniteSemiring],
) -> std::io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut per_order = std::collections::BTreeMap::<usize, usize>::new();
    for s in catalog {
        let index = per_order.entry(s.order()).or_insert(0);
        let path = dir.join(catalog_file_name(v, s.order(), *index));
        *index += 1;
        let header = format!("# {} catalog entry, order {}\n", v.name, s.order());
        fs::write(&path, header + &format_semiring(s))?;
        written.push(path);
    }
    Ok(written)
}

/// A catalog member on which the three-way equivalence fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropositionViolation {
    pub index: usize,
    pub order: usize,
    pub subdirectly_irreducible: bool,
    pub simple: bool,
    pub zero_group: bool,
    /// SI but not isomorphic to the flat extension of its group part.
    pub not_flat: bool,
}

impl fmt::Display for PropositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "entry {} (order {}): SI={} simple={} 0-group={}{}",
            self.index,
            self.order,
            self.subdirectly_irreducible,
            self.simple,
            self.zero_group,
            if self.not_flat {
                ", not a flat extension"
            } else {
                ""
            }
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    /// Members of order at least 2 that were checked.
    pub checked: usize,
    pub subdirectly_irreducible: usize,
    pub violations: Vec<PropositionViolation>,
}

impl PropositionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Group formed by the nonzero elements of a 0-group, relabelled `0..m`.
fn group_part(s: &FiniteSemiring, group: &[Elem]) -> Option<crate::algebra::FiniteGroup> {
    let m = group.len();
    let index = |x: Elem| group.iter().position(|&g| g == x);
    let mut table = Vec::with_capacity(m * m);
    for &a in group {
        for &b in group {
            table.push(index(s.mul(a, b))?);
        }
    }
    let identity = group
        .iter()
        .position(|&e| group.iter().all(|&x| s.mul(e, x) == x))?;
    crate::algebra::FiniteGroup::from_flat(m, table, identity).ok()
}

/// Checks SI ⇔ simple ⇔ 0-group on each member of order ≥ 2, and that each SI
/// member is isomorphic to the flat extension of its group of units.
pub fn verify_proposition(catalog: &[FiniteSemiring]) -> Result<PropositionReport> {
    let mut report = PropositionReport::default();
    for (index, s) in catalog.iter().enumerate() {
        if s.order() < 2 {
            continue;
        }
        report.checked += 1;
        let si = is_subdirectly_irreducible(s)?;
        let simple = is_congruence_simple(s)?;
        let zg = zero_group(s);
        let mut not_flat = false;
        if si {
            report.subdirectly_irreducible += 1;
            not_flat = match zg.as_ref().and_then(|z| group_part(s, &z.group)) {
                Some(g) => are_isomorphic(s, &flat_extension(&g)).is_none(),
                None => true,
            };
        }
        if si != simple || si != zg.is_some() || not_flat {
            report.violations.push(PropositionViolation {
                index,
                order: s.order(),
                subdirectly_irreducible: si,
                simple,
                zero_group: zg.is_some(),
                not_flat,
            });
        }
    }
    Ok(report)
}

/// Catalog members that fail `validate_axioms` or membership in `v` (expected empty).
pub fn invalid_members(catalog: &[FiniteSemiring], v: &VarietySpec) -> Vec<usize> {
    catalog
        .iter()
        .enumerate()
        .filter(|(_, s)| !validate_axioms(s).is_valid() || !member_of(s, v))
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cyclic_group;

    #[test]
    fn semilattice_counts() {
        let counts: Vec<usize> = (1..=4).map(|k| semilattices(k).len()).collect();
        // unlabelled semilattices: 1, 1, 2, 5
        assert_eq!(counts, vec![1, 1, 2, 5]);
    }

    #[test]
    fn trivial_order() {
        for v in [VarietySpec::sr(2).unwrap(), VarietySpec::m(3).unwrap()] {
            assert_eq!(enumerate(1, &v).unwrap().len(), 1);
        }
    }

    #[test]
    fn m2_is_semilattices_with_mul_equal_add() {
        let v = VarietySpec::m(2).unwrap();
        for k in 1..=4 {
            let cat = enumerate(k, &v).unwrap();
            assert_eq!(cat.len(), semilattices(k).len());
            assert!(cat.iter().all(|s| s.add_table() == s.mul_table()));
        }
    }

    #[test]
    fn m3_order_three_contains_flat_z2() {
        let cat = enumerate(3, &VarietySpec::m(3).unwrap()).unwrap();
        let f = flat_extension(&cyclic_group(2).unwrap());
        assert!(cat.iter().any(|s| are_isomorphic(s, &f).is_some()));
    }

    #[test]
    fn order_limit() {
        assert!(matches!(
            enumerate(5, &VarietySpec::sr(2).unwrap()),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn proposition_on_small_m3() {
        let cat: Vec<FiniteSemiring> = enumerate_up_to(3, &VarietySpec::m(3).unwrap())
            .unwrap()
            .concat();
        let rep = verify_proposition(&cat).unwrap();
        assert!(rep.holds(), "{:?}", rep.violations);
        assert!(rep.subdirectly_irreducible >= 2);
    }
}
