//! Operation-table representation of finite semirings and groups.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// An element of a finite algebra: a dense index into its tables.
pub type Elem = usize;

/// Anything with an associative-looking binary product that words can be evaluated in.
pub trait MulTable {
    fn order(&self) -> usize;
    fn mul(&self, a: Elem, b: Elem) -> Elem;

    /// `a^m` for `m >= 1`.
    fn power(&self, a: Elem, m: u32) -> Elem {
        assert!(m >= 1, "powers start at 1");
        (1..m).fold(a, |acc, _| self.mul(acc, a))
    }
}

/// A finite algebra `(S, +, ·)` given by two `k × k` tables.
#[derive(Clone, Debug)]
pub struct FiniteSemiring {
    order: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    names: Option<Vec<String>>,
}

impl PartialEq for FiniteSemiring {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.add == other.add && self.mul == other.mul
    }
}

impl Eq for FiniteSemiring {}

impl std::hash::Hash for FiniteSemiring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.add.hash(state);
        self.mul.hash(state);
    }
}

fn flatten_square(table: &[Vec<Elem>], k: usize, what: &str) -> Result<Vec<Elem>> {
    if table.len() != k {
        return Err(Error::Malformed(format!(
            "{what} table has {} rows, expected {k}",
            table.len()
        )));
    }
    let mut flat = Vec::with_capacity(k * k);
    for (i, row) in table.iter().enumerate() {
        if row.len() != k {
            return Err(Error::Malformed(format!(
                "{what} table row {i} has {} entries, expected {k}",
                row.len()
            )));
        }
        for (j, &x) in row.iter().enumerate() {
            if x >= k {
                return Err(Error::Malformed(format!(
                    "{what} entry ({i},{j}) = {x} is out of range 0..{k}"
                )));
            }
            flat.push(x);
        }
    }
    Ok(flat)
}

fn check_flat(flat: &[Elem], k: usize, what: &str) -> Result<()> {
    if flat.len() != k * k {
        return Err(Error::Malformed(format!(
            "{what} table has {} entries, expected {}",
            flat.len(),
            k * k
        )));
    }
    if let Some(pos) = flat.iter().position(|&x| x >= k) {
        return Err(Error::Malformed(format!(
            "{what} entry ({},{}) = {} is out of range 0..{k}",
            pos / k,
            pos % k,
            flat[pos]
        )));
    }
    Ok(())
}

impl FiniteSemiring {
    pub fn new(add: &[Vec<Elem>], mul: &[Vec<Elem>]) -> Result<Self> {
        let k = add.len();
        if k == 0 {
            return Err(Error::Malformed("empty carrier".into()));
        }
        let add = flatten_square(add, k, "addition")?;
        let mul = flatten_square(mul, k, "multiplication")?;
        Ok(FiniteSemiring {
            order: k,
            add,
            mul,
            names: None,
        })
    }

    /// Builds from row-major flat tables of length `k * k`.
    pub fn from_flat(order: usize, add: Vec<Elem>, mul: Vec<Elem>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Malformed("empty carrier".into()));
        }
        check_flat(&add, order, "addition")?;
        check_flat(&mul, order, "multiplication")?;
        Ok(FiniteSemiring {
            order,
            add,
            mul,
            names: None,
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::Malformed(format!(
                "{} names given for {} elements",
                names.len(),
                self.order
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.order + b]
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    pub fn add_table(&self) -> &[Elem] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: Elem) -> String {
        match &self.names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// Sum of a nonempty list of elements.
    pub fn sum<I: IntoIterator<Item = Elem>>(&self, items: I) -> Option<Elem> {
        items.into_iter().reduce(|acc, x| self.add(acc, x))
    }

    /// The algebra relabelled so that old element `a` becomes `perm[a]`.
    pub fn relabel(&self, perm: &[Elem]) -> Result<Self> {
        let k = self.order;
        if !is_permutation(perm, k) {
            return Err(Error::Malformed("relabelling is not a permutation".into()));
        }
        let mut add = vec![0; k * k];
        let mut mul = vec![0; k * k];
        for a in 0..k {
            for b in 0..k {
                add[perm[a] * k + perm[b]] = perm[self.add(a, b)];
                mul[perm[a] * k + perm[b]] = perm[self.mul(a, b)];
            }
        }
        let names = self.names.as_ref().map(|names| {
            let mut out = vec![String::new(); k];
            for a in 0..k {
                out[perm[a]] = names[a].clone();
            }
            out
        });
        Ok(FiniteSemiring {
            order: k,
            add,
            mul,
            names,
        })
    }

    /// Direct product; the pair `(a, b)` has index `a * other.order() + b`.
    pub fn product(&self, other: &FiniteSemiring) -> FiniteSemiring {
        let (k1, k2) = (self.order, other.order);
        let k = k1 * k2;
        let mut add = Vec::with_capacity(k * k);
        let mut mul = Vec::with_capacity(k * k);
        for x in 0..k {
            for y in 0..k {
                let (a1, a2) = (x / k2, x % k2);
                let (b1, b2) = (y / k2, y % k2);
                add.push(self.add(a1, b1) * k2 + other.add(a2, b2));
                mul.push(self.mul(a1, b1) * k2 + other.mul(a2, b2));
            }
        }
        let names = Some(
            (0..k)
                .map(|x| format!("({},{})", self.name(x / k2), other.name(x % k2)))
                .collect(),
        );
        FiniteSemiring {
            order: k,
            add,
            mul,
            names,
        }
    }

    /// Subalgebra on a set closed under both operations, relabelled `0..elements.len()`
    /// in the order given. Returns `None` if the set is not closed.
    pub fn restrict(&self, elements: &[Elem]) -> Option<FiniteSemiring> {
        let index = |x: Elem| elements.iter().position(|&e| e == x);
        let m = elements.len();
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for &a in elements {
            for &b in elements {
                add.push(index(self.add(a, b))?);
                mul.push(index(self.mul(a, b))?);
            }
        }
        let names = Some(elements.iter().map(|&x| self.name(x)).collect());
        Some(FiniteSemiring {
            order: m,
            add,
            mul,
            names,
        })
    }
}

impl MulTable for FiniteSemiring {
    fn order(&self) -> usize {
        self.order
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        FiniteSemiring::mul(self, a, b)
    }
}

pub(crate) fn is_permutation(perm: &[Elem], k: usize) -> bool {
    if perm.len() != k {
        return false;
    }
    let mut seen = vec![false; k];
    for &p in perm {
        if p >= k || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

/// The laws an ai-semiring must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Law {
    AddCommutative,
    AddAssociative,
    AddIdempotent,
    MulAssociative,
    LeftDistributive,
    RightDistributive,
}

impl Law {
    pub const ALL: [Law; 6] = [
        Law::AddCommutative,
        Law::AddAssociative,
        Law::AddIdempotent,
        Law::MulAssociative,
        Law::LeftDistributive,
        Law::RightDistributive,
    ];

    pub fn formula(self) -> &'static str {
        match self {
            Law::AddCommutative => "a+b = b+a",
            Law::AddAssociative => "(a+b)+c = a+(b+c)",
            Law::AddIdempotent => "a+a = a",
            Law::MulAssociative => "(ab)c = a(bc)",
            Law::LeftDistributive => "a(b+c) = ab+ac",
            Law::RightDistributive => "(a+b)c = ac+bc",
        }
    }
}

/// A failed law together with the first witness found (in lexicographic order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub law: Law,
    pub witness: Vec<Elem>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["a", "b", "c"];
        write!(f, "{} fails at ", self.law.formula())?;
        for (i, w) in self.witness.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}={}", names[i], w)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fails(&self, law: Law) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }
}

/// Exhaustively checks every ai-semiring law, one witness per failed law.
pub fn validate_axioms(s: &FiniteSemiring) -> AxiomReport {
    let k = s.order();
    let mut violations = Vec::new();
    for law in Law::ALL {
        let witness = match law {
            Law::AddIdempotent => (0..k).find(|&a| s.add(a, a) != a).map(|a| vec![a]),
            Law::AddCommutative => pairs(k)
                .find(|&(a, b)| s.add(a, b) != s.add(b, a))
                .map(|(a, b)| vec![a, b]),
            _ => triples(k)
                .find(|&(a, b, c)| !law_holds(s, law, a, b, c))
                .map(|(a, b, c)| vec![a, b, c]),
        };
        if let Some(witness) = witness {
            violations.push(AxiomViolation { law, witness });
        }
    }
    AxiomReport { violations }
}

fn law_holds(s: &FiniteSemiring, law: Law, a: Elem, b: Elem, c: Elem) -> bool {
    match law {
        Law::AddAssociative => s.add(s.add(a, b), c) == s.add(a, s.add(b, c)),
        Law::MulAssociative => s.mul(s.mul(a, b), c) == s.mul(a, s.mul(b, c)),
        Law::LeftDistributive => s.mul(a, s.add(b, c)) == s.add(s.mul(a, b), s.mul(a, c)),
        Law::RightDistributive => s.mul(s.add(a, b), c) == s.add(s.mul(a, c), s.mul(b, c)),
        Law::AddCommutative => s.add(a, b) == s.add(b, a),
        Law::AddIdempotent => s.add(a, a) == a,
    }
}

fn pairs(k: usize) -> impl Iterator<Item = (Elem, Elem)> {
    (0..k).flat_map(move |a| (0..k).map(move |b| (a, b)))
}

fn triples(k: usize) -> impl Iterator<Item = (Elem, Elem, Elem)> {
    (0..k).flat_map(move |a| (0..k).flat_map(move |b| (0..k).map(move |c| (a, b, c))))
}

/// A finite group given by its multiplication table and identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<Elem>,
    identity: Elem,
    inverse: Vec<Elem>,
    names: Option<Vec<String>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul && self.identity == other.identity
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    pub fn new(table: &[Vec<Elem>], identity: Elem) -> Result<Self> {
        let k = table.len();
        let flat = flatten_square(table, k, "group")?;
        Self::from_flat(k, flat, identity)
    }

    pub fn from_flat(order: usize, mul: Vec<Elem>, identity: Elem) -> Result<Self> {
        if order == 0 {
            return Err(Error::Malformed("empty carrier".into()));
        }
        check_flat(&mul, order, "group")?;
        if identity >= order {
            return Err(Error::Malformed(format!(
                "identity {identity} is out of range 0..{order}"
            )));
        }
        let at = |a: Elem, b: Elem| mul[a * order + b];
        for a in 0..order {
            if at(identity, a) != a || at(a, identity) != a {
                return Err(Error::NotAGroup(format!(
                    "{identity} is not a two-sided identity (fails at {a})"
                )));
            }
        }
        if let Some((a, b, c)) =
            triples(order).find(|&(a, b, c)| at(at(a, b), c) != at(a, at(b, c)))
        {
            return Err(Error::NotAGroup(format!(
                "multiplication is not associative at ({a},{b},{c})"
            )));
        }
        let mut inverse = Vec::with_capacity(order);
        for a in 0..order {
            match (0..order).find(|&b| at(a, b) == identity && at(b, a) == identity) {
                Some(b) => inverse.push(b),
                None => return Err(Error::NotAGroup(format!("{a} has no inverse"))),
            }
        }
        Ok(FiniteGroup {
            order,
            mul,
            identity,
            inverse,
            names: None,
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::Malformed(format!(
                "{} names given for {} elements",
                names.len(),
                self.order
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    pub fn inverse(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: Elem) -> String {
        match &self.names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order)
            .map(|a| self.element_order(a))
            .fold(1, |acc, o| acc / gcd(acc, o) * o)
    }

    pub fn is_abelian(&self) -> bool {
        pairs(self.order).all(|(a, b)| self.mul(a, b) == self.mul(b, a))
    }

    /// The first non-commuting pair, if any.
    pub fn noncommuting_pair(&self) -> Option<(Elem, Elem)> {
        pairs(self.order).find(|&(a, b)| self.mul(a, b) != self.mul(b, a))
    }

    pub fn center(&self) -> Vec<Elem> {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    /// Smallest subset containing `generators` and closed under multiplication,
    /// which in a finite group is the generated subgroup.
    pub fn subgroup_closure(&self, generators: &[Elem]) -> BTreeSet<Elem> {
        let mut set: BTreeSet<Elem> = generators.iter().copied().collect();
        set.insert(self.identity);
        let mut frontier: Vec<Elem> = set.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            let current: Vec<Elem> = set.iter().copied().collect();
            for y in current {
                for z in [self.mul(x, y), self.mul(y, x)] {
                    if set.insert(z) {
                        frontier.push(z);
                    }
                }
            }
        }
        set
    }
}

impl MulTable for FiniteGroup {
    fn order(&self) -> usize {
        self.order
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        FiniteGroup::mul(self, a, b)
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A generator set with the multiplicative subsemigroup and the subsemiring it generates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetClosure {
    pub generators: BTreeSet<Elem>,
    pub semigroup_closure: BTreeSet<Elem>,
    pub semiring_closure: BTreeSet<Elem>,
}

/// Computes `⟨A⟩_s` and `⟨A⟩`, and checks that `⟨A⟩` is exactly the set of finite
/// sums of elements of `⟨A⟩_s`, with `|⟨A⟩| <= 2^|⟨A⟩_s|`.
pub fn generated_subalgebras(s: &FiniteSemiring, generators: &[Elem]) -> Result<SubsetClosure> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    if let Some(&g) = generators.iter().find(|&&g| g >= s.order()) {
        return Err(Error::Malformed(format!(
            "generator {g} is out of range 0..{}",
            s.order()
        )));
    }
    let generators: BTreeSet<Elem> = generators.iter().copied().collect();
    let semigroup_closure = close(&generators, |a, b| vec![s.mul(a, b)]);
    let semiring_closure = close(&generators, |a, b| vec![s.mul(a, b), s.add(a, b)]);
    let sums = close(&semigroup_closure, |a, b| vec![s.add(a, b)]);
    if sums != semiring_closure {
        return Err(Error::Falsified(format!(
            "subsemiring generated by {generators:?} is {semiring_closure:?}, \
             but sums over the subsemigroup give {sums:?}"
        )));
    }
    let bound_holds = semigroup_closure.len() >= usize::BITS as usize
        || semiring_closure.len() <= 1usize << semigroup_closure.len();
    if !bound_holds {
        return Err(Error::Falsified(format!(
            "|<A>| = {} exceeds 2^{}",
            semiring_closure.len(),
            semigroup_closure.len()
        )));
    }
    Ok(SubsetClosure {
        generators,
        semigroup_closure,
        semiring_closure,
    })
}

fn close<F>(seed: &BTreeSet<Elem>, ops: F) -> BTreeSet<Elem>
where
    F: Fn(Elem, Elem) -> Vec<Elem>,
{
    let mut set = seed.clone();
    let mut order: Vec<Elem> = set.iter().copied().collect();
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for j in 0..=i {
            let y = order[j];
            for z in ops(x, y).into_iter().chain(ops(y, x)) {
                if set.insert(z) {
                    order.push(z);
                }
            }
        }
        i += 1;
    }
    set
}
