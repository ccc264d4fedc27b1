//! Structure of the multiplicative reduct: idempotents, Green's relations,
//! Clifford decompositions, 0-groups and the natural partial orders.

use std::fmt;

use serde::Serialize;

use crate::algebra::{Elem, FiniteSemiring, MulTable};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::terms::{member_of, VarietySpec};

/// The idempotents `E(S)` and the subsemiring they form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Idempotents {
    /// Ascending; element `i` of `subsemiring` is `elements[i]`.
    pub elements: Vec<Elem>,
    pub subsemiring: FiniteSemiring,
}

impl Idempotents {
    pub fn index_of(&self, x: Elem) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.index_of(x).is_some()
    }
}

/// Collects `{a : aa = a}`; fails if that set is not closed under `+` and `·`,
/// which cannot happen in a Burnside ai-semiring.
pub fn idempotents(s: &FiniteSemiring) -> Result<Idempotents> {
    let elements: Vec<Elem> = s.elements().filter(|&a| s.mul(a, a) == a).collect();
    for &a in &elements {
        for &b in &elements {
            let (sum, prod) = (s.add(a, b), s.mul(a, b));
            if s.mul(sum, sum) != sum {
                return Err(Error::Falsified(format!(
                    "idempotents are not closed under +: {a}+{b} = {sum}"
                )));
            }
            if s.mul(prod, prod) != prod {
                return Err(Error::Falsified(format!(
                    "idempotents are not closed under ·: {a}·{b} = {prod}"
                )));
            }
        }
    }
    let subsemiring = s.restrict(&elements).expect("closure checked above");
    Ok(Idempotents {
        elements,
        subsemiring,
    })
}

/// Green's relations of the multiplicative reduct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenData {
    pub l: Partition,
    pub r: Partition,
    pub h: Partition,
    pub d: Partition,
}

fn ideal(s: &FiniteSemiring, a: Elem, left: bool) -> Vec<bool> {
    // S¹a (or aS¹): the formal identity contributes `a` itself.
    let mut members = vec![false; s.order()];
    members[a] = true;
    for c in s.elements() {
        let x = if left { s.mul(c, a) } else { s.mul(a, c) };
        members[x] = true;
    }
    members
}

/// Computes L and R from equality of principal one-sided ideals, then
/// `H = L ∧ R` and `D = L ∨ R`.
pub fn green_relations(s: &FiniteSemiring) -> GreenData {
    let left: Vec<Vec<bool>> = s.elements().map(|a| ideal(s, a, true)).collect();
    let right: Vec<Vec<bool>> = s.elements().map(|a| ideal(s, a, false)).collect();
    let l = Partition::from_keys(&left);
    let r = Partition::from_keys(&right);
    let h = l.meet(&r);
    let d = l.join(&r);
    GreenData { l, r, h, d }
}

/// A pair on which an ideal-computed Green relation disagrees with its
/// power characterisation in `Sr(n,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreenMismatch {
    pub relation: char,
    pub a: Elem,
    pub b: Elem,
    pub by_ideals: bool,
    pub by_powers: bool,
}

impl fmt::Display for GreenMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on ({},{}): ideals say {}, powers say {}",
            self.relation, self.a, self.b, self.by_ideals, self.by_powers
        )
    }
}

/// Compares `H` with `a^{n-1} = b^{n-1}` and `D` with
/// `a^{n-1}b^{n-1}a^{n-1} = a^{n-1} ∧ b^{n-1}a^{n-1}b^{n-1} = b^{n-1}`.
pub fn green_power_mismatches(
    s: &FiniteSemiring,
    green: &GreenData,
    n: u32,
) -> Result<Vec<GreenMismatch>> {
    let variety = VarietySpec::sr(n)?;
    if !member_of(s, &variety) {
        return Err(Error::Precondition(format!(
            "not a member of {}",
            variety.name
        )));
    }
    let top: Vec<Elem> = s.elements().map(|a| s.power(a, n - 1)).collect();
    let mut out = Vec::new();
    for a in s.elements() {
        for b in s.elements() {
            let (ea, eb) = (top[a], top[b]);
            let h = ea == eb;
            let d = s.mul(s.mul(ea, eb), ea) == ea && s.mul(s.mul(eb, ea), eb) == eb;
            for (relation, part, by_powers) in [('H', &green.h, h), ('D', &green.d, d)] {
                let by_ideals = part.related(a, b);
                if by_ideals != by_powers {
                    out.push(GreenMismatch {
                        relation,
                        a,
                        b,
                        by_ideals,
                        by_powers,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Every H-class contains an idempotent (so every H-class is a group).
pub fn is_completely_regular(s: &FiniteSemiring) -> bool {
    let h = green_relations(s).h;
    h.blocks()
        .iter()
        .all(|block| block.iter().any(|&x| s.mul(x, x) == x))
}

/// A semilattice `Y` of groups `G_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordDecomposition {
    /// The groups `G_α`, as blocks of the carrier.
    pub classes: Partition,
    /// `structure[α][β]` is the class containing `G_α · G_β`.
    pub structure: Vec<Vec<usize>>,
}

/// Returns `[G_α, Y]` when the reduct is completely regular with central idempotents.
pub fn clifford_decomposition(s: &FiniteSemiring) -> Option<CliffordDecomposition> {
    if !is_completely_regular(s) {
        return None;
    }
    let central = s
        .elements()
        .filter(|&e| s.mul(e, e) == e)
        .all(|e| s.elements().all(|x| s.mul(e, x) == s.mul(x, e)));
    if !central {
        return None;
    }
    let classes = green_relations(s).h;
    let blocks = classes.blocks();
    let m = blocks.len();
    let mut structure = vec![vec![usize::MAX; m]; m];
    for a in s.elements() {
        for b in s.elements() {
            let (ca, cb) = (classes.block_of(a), classes.block_of(b));
            let cp = classes.block_of(s.mul(a, b));
            if structure[ca][cb] == usize::MAX {
                structure[ca][cb] = cp;
            } else if structure[ca][cb] != cp {
                return None;
            }
        }
    }
    for block in &blocks {
        if !is_subgroup(s, block) {
            return None;
        }
    }
    Some(CliffordDecomposition { classes, structure })
}

pub fn is_clifford(s: &FiniteSemiring) -> bool {
    clifford_decomposition(s).is_some()
}

/// Whether `set` is a group under the multiplication of `s`.
pub fn is_subgroup(s: &FiniteSemiring, set: &[Elem]) -> bool {
    let inside = |x: Elem| set.contains(&x);
    if set.is_empty()
        || !set
            .iter()
            .all(|&a| set.iter().all(|&b| inside(s.mul(a, b))))
    {
        return false;
    }
    let Some(&id) = set
        .iter()
        .find(|&&e| set.iter().all(|&x| s.mul(e, x) == x && s.mul(x, e) == x))
    else {
        return false;
    };
    set.iter()
        .all(|&a| set.iter().any(|&b| s.mul(a, b) == id && s.mul(b, a) == id))
}

/// A multiplicative reduct of the form `G ∪ {zero}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroGroup {
    pub zero: Elem,
    pub group: Vec<Elem>,
}

/// Detects a 0-group: an absorbing element whose complement is a group.
pub fn zero_group(s: &FiniteSemiring) -> Option<ZeroGroup> {
    let zero = s
        .elements()
        .find(|&z| s.elements().all(|x| s.mul(z, x) == z && s.mul(x, z) == z))?;
    let group: Vec<Elem> = s.elements().filter(|&x| x != zero).collect();
    if is_subgroup(s, &group) {
        Some(ZeroGroup { zero, group })
    } else {
        None
    }
}

pub fn is_zero_group(s: &FiniteSemiring) -> bool {
    zero_group(s).is_some()
}

/// The two orders on a member of `M_n` and any failure of their duality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    /// `plus_le[a][b]` iff `a + b = b`.
    pub plus_le: Vec<Vec<bool>>,
    /// `mul_le[a][b]` iff `a = eb` for some idempotent `e`.
    pub mul_le: Vec<Vec<bool>>,
    pub violations: Vec<String>,
}

impl OrderReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

fn partial_order_violation(rel: &[Vec<bool>], name: &str) -> Option<String> {
    let k = rel.len();
    if let Some(a) = (0..k).find(|&a| !rel[a][a]) {
        return Some(format!("{name} is not reflexive at {a}"));
    }
    for a in 0..k {
        for b in 0..k {
            if a != b && rel[a][b] && rel[b][a] {
                return Some(format!("{name} is not antisymmetric on ({a},{b})"));
            }
            if rel[a][b] {
                if let Some(c) = (0..k).find(|&c| rel[b][c] && !rel[a][c]) {
                    return Some(format!("{name} is not transitive on ({a},{b},{c})"));
                }
            }
        }
    }
    None
}

/// Computes `≤_+` and `≤_·`, checks both are partial orders and that
/// `a ≤_+ b ⇔ b ≤_· a`.
pub fn partial_orders(s: &FiniteSemiring, n: u32) -> Result<OrderReport> {
    let variety = VarietySpec::m(n)?;
    if !member_of(s, &variety) {
        return Err(Error::Precondition(format!(
            "not a member of {}",
            variety.name
        )));
    }
    let e = idempotents(s)?;
    let k = s.order();
    let plus_le: Vec<Vec<bool>> = (0..k)
        .map(|a| (0..k).map(|b| s.add(a, b) == b).collect())
        .collect();
    let mul_le: Vec<Vec<bool>> = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| e.elements.iter().any(|&f| s.mul(f, b) == a))
                .collect()
        })
        .collect();
    let mut violations = Vec::new();
    violations.extend(partial_order_violation(&plus_le, "≤_+"));
    violations.extend(partial_order_violation(&mul_le, "≤_·"));
    for a in 0..k {
        for b in 0..k {
            if plus_le[a][b] != mul_le[b][a] {
                violations.push(format!(
                    "{a} ≤_+ {b} is {} but {b} ≤_· {a} is {}",
                    plus_le[a][b], mul_le[b][a]
                ));
            }
        }
    }
    Ok(OrderReport {
        plus_le,
        mul_le,
        violations,
    })
}

/// Greatest lower bound of `{a, b}` under the order `le`, if it exists.
pub fn greatest_lower_bound(le: &[Vec<bool>], a: Elem, b: Elem) -> Option<Elem> {
    let k = le.len();
    let lower: Vec<Elem> = (0..k).filter(|&x| le[x][a] && le[x][b]).collect();
    lower
        .iter()
        .copied()
        .find(|&g| lower.iter().all(|&x| le[x][g]))
}

/// Pairs `(a, f)` with `f` idempotent for which `a ∧ f` does not exist under `≤_·`.
pub fn missing_meets_with_idempotents(
    s: &FiniteSemiring,
    report: &OrderReport,
) -> Result<Vec<(Elem, Elem)>> {
    let e = idempotents(s)?;
    let mut missing = Vec::new();
    for a in s.elements() {
        for &f in &e.elements {
            if greatest_lower_bound(&report.mul_le, a, f).is_none() {
                missing.push((a, f));
            }
        }
    }
    Ok(missing)
}
