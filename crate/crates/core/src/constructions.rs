//! Builders for named groups and semirings.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{Elem, FiniteGroup, FiniteSemiring, MulTable};
use crate::error::{Error, Result};
use crate::terms::{member_of, VarietySpec};
use crate::text::AlgebraFile;

/// Largest group order `sylow_abelian_report` will search.
pub const MAX_SYLOW_ORDER: usize = 64;

/// `G⁰`: the group plus an absorbing zero at the last index, with
/// `a + b = a` if `a = b` and `0` otherwise.
pub fn flat_extension(g: &FiniteGroup) -> FiniteSemiring {
    let m = g.order();
    let k = m + 1;
    let zero = m;
    let mut add = vec![zero; k * k];
    let mut mul = vec![zero; k * k];
    for a in 0..k {
        add[a * k + a] = a;
    }
    for a in 0..m {
        for b in 0..m {
            mul[a * k + b] = g.mul(a, b);
        }
    }
    let s = FiniteSemiring::from_flat(k, add, mul).expect("tables are in range");
    // Unnamed groups keep plain indices so the zero cannot clash with element 0.
    let Some(group_names) = g.names() else {
        return s;
    };
    let mut names = group_names.to_vec();
    names.push(
        if names.iter().any(|n| n == "0") {
            "z"
        } else {
            "0"
        }
        .into(),
    );
    s.with_names(names).expect("one name per element")
}

/// Smallest `n >= 2` with `g ∈ G(n,1)`, i.e. exponent + 1.
pub fn burnside_exponent(g: &FiniteGroup) -> u32 {
    g.exponent() as u32 + 1
}

/// Flat extension together with the membership `G⁰ ∈ M_n` for `n = exp(G) + 1`.
pub fn checked_flat_extension(g: &FiniteGroup) -> Result<FiniteSemiring> {
    let s = flat_extension(g);
    let n = burnside_exponent(g);
    let v = VarietySpec::m(n)?;
    if !member_of(&s, &v) {
        return Err(Error::Falsified(format!(
            "flat extension of a group of exponent {} is not in {}",
            n - 1,
            v.name
        )));
    }
    Ok(s)
}

/// A flat-extension law failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FlatLawViolation {
    /// `c ≠ d` but `c + d ≠ 0`.
    DistinctSum { c: Elem, d: Elem, sum: Elem },
    /// `a ≠ 1` but `a + a^{n-1} ≠ 0`.
    PowerSum { a: Elem, sum: Elem },
}

/// Checks `c ≠ d ⇒ c+d = 0` and `a ≠ 1_G ⇒ a + a^{n-1} = 0` on a flat extension
/// built by [`flat_extension`] (zero last, identity at `g.identity()`).
pub fn flat_law_violations(s: &FiniteSemiring, g: &FiniteGroup, n: u32) -> Vec<FlatLawViolation> {
    let zero = s.order() - 1;
    let mut out = Vec::new();
    for c in s.elements() {
        for d in s.elements() {
            if c != d && s.add(c, d) != zero {
                out.push(FlatLawViolation::DistinctSum {
                    c,
                    d,
                    sum: s.add(c, d),
                });
            }
        }
    }
    for a in 0..g.order() {
        if a == g.identity() {
            continue;
        }
        let sum = s.add(a, s.power(a, n - 1));
        if sum != zero {
            out.push(FlatLawViolation::PowerSum { a, sum });
        }
    }
    out
}

/// `Z_m` with identity 0.
pub fn cyclic_group(m: usize) -> Result<FiniteGroup> {
    if m == 0 {
        return Err(Error::Precondition(
            "cyclic groups have order at least 1".into(),
        ));
    }
    let table = (0..m * m).map(|x| (x / m + x % m) % m).collect();
    FiniteGroup::from_flat(m, table, 0)
}

/// Componentwise product; `(a, b)` has index `a * h.order() + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (m1, m2) = (g.order(), h.order());
    let k = m1 * m2;
    let mut table = Vec::with_capacity(k * k);
    for x in 0..k {
        for y in 0..k {
            table.push(g.mul(x / m2, y / m2) * m2 + h.mul(x % m2, y % m2));
        }
    }
    let names = (0..k)
        .map(|x| format!("({},{})", g.name(x / m2), h.name(x % m2)))
        .collect();
    FiniteGroup::from_flat(k, table, g.identity() * m2 + h.identity())
        .expect("product of groups is a group")
        .with_names(names)
        .expect("one name per element")
}

/// Quaternion group on `1, -1, i, -i, j, -j, k, -k` (indices 0..8) with
/// `i² = j² = k² = ijk = -1`.
pub fn quaternion_group() -> FiniteGroup {
    // Element 2u + s is (-1)^s times unit u, where units are 1, i, j, k.
    // unit_mul[u][v] = (sign, unit) of u·v.
    const UNIT_MUL: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut table = Vec::with_capacity(64);
    for x in 0..8 {
        for y in 0..8 {
            let (ux, sx) = (x / 2, x % 2);
            let (uy, sy) = (y / 2, y % 2);
            let (s, u) = UNIT_MUL[ux][uy];
            table.push(2 * u + (s + sx + sy) % 2);
        }
    }
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_flat(8, table, 0)
        .expect("quaternion table is a group")
        .with_names(names)
        .expect("eight names")
}

pub fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// The order-`p³` group on triples `(i, j, k)` (standing for `a^i b^j c^k`) with
/// `(i,j,k)·(m,n,r) = (i+m, j+km+n, k+r) mod p`. Triple `(i,j,k)` has index `i p² + j p + k`.
pub fn heisenberg_group(p: u64) -> Result<FiniteGroup> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if p * p * p > 1000 {
        return Err(Error::TooLarge {
            what: "group order",
            size: (p * p * p) as usize,
            limit: 1000,
        });
    }
    let p = p as usize;
    let k = p * p * p;
    let split = |x: usize| (x / (p * p), (x / p) % p, x % p);
    let join = |i: usize, j: usize, c: usize| i * p * p + j * p + c;
    let mut table = Vec::with_capacity(k * k);
    for x in 0..k {
        let (i, j, c) = split(x);
        for y in 0..k {
            let (m, n, r) = split(y);
            table.push(join((i + m) % p, (j + c * m + n) % p, (c + r) % p));
        }
    }
    let names = (0..k)
        .map(|x| {
            let (i, j, c) = split(x);
            format!("a{i}b{j}c{c}")
        })
        .collect();
    FiniteGroup::from_flat(k, table, 0)?.with_names(names)
}

/// One Sylow subgroup for a prime divisor of the group order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SylowEntry {
    pub prime: usize,
    pub order: usize,
    pub elements: Vec<Elem>,
    pub abelian: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SylowReport {
    pub group_order: usize,
    pub entries: Vec<SylowEntry>,
    /// Some Sylow subgroup is non-abelian, so the flat extension is predicted
    /// to be nonfinitely based. This is a label, not a verified fact.
    pub predicted_nonfinitely_based: bool,
}

fn prime_factors(mut m: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        let mut e = 0;
        while m.is_multiple_of(d) {
            m /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

fn is_power_of(mut x: usize, q: usize) -> bool {
    while x.is_multiple_of(q) {
        x /= q;
    }
    x == 1
}

/// Finds a Sylow `q`-subgroup for each prime `q` dividing `|G|`.
///
/// Starting from the trivial subgroup, repeatedly adjoins an element whose
/// closure with the current subgroup is still a `q`-group. A maximal `q`-subgroup
/// is a Sylow subgroup, and the resulting order is checked against `|G|`.
pub fn sylow_abelian_report(g: &FiniteGroup) -> Result<SylowReport> {
    if g.order() > MAX_SYLOW_ORDER {
        return Err(Error::TooLarge {
            what: "group for the Sylow search",
            size: g.order(),
            limit: MAX_SYLOW_ORDER,
        });
    }
    let mut entries = Vec::new();
    for (q, e) in prime_factors(g.order()) {
        let target = q.pow(e);
        let q_elements: Vec<Elem> = (0..g.order())
            .filter(|&x| is_power_of(g.element_order(x), q))
            .collect();
        let mut current: BTreeSet<Elem> = BTreeSet::from([g.identity()]);
        'grow: while current.len() < target {
            for &x in &q_elements {
                if current.contains(&x) {
                    continue;
                }
                let mut gens: Vec<Elem> = current.iter().copied().collect();
                gens.push(x);
                let next = g.subgroup_closure(&gens);
                if is_power_of(next.len(), q) {
                    current = next;
                    continue 'grow;
                }
            }
            return Err(Error::Falsified(format!(
                "maximal {q}-subgroup has order {} but |G| has {q}-part {target}",
                current.len()
            )));
        }
        let elements: Vec<Elem> = current.into_iter().collect();
        let abelian = elements
            .iter()
            .all(|&a| elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
        entries.push(SylowEntry {
            prime: q,
            order: target,
            elements,
            abelian,
        });
    }
    let predicted_nonfinitely_based = entries.iter().any(|e| !e.abelian);
    Ok(SylowReport {
        group_order: g.order(),
        entries,
        predicted_nonfinitely_based,
    })
}

/// Parses and builds `zn:<m>`, `q8`, `gp:<p>`, `prod(<g>,<g>)` and `flat(<g>)`.
pub fn build(expr: &str) -> Result<AlgebraFile> {
    let expr = expr.trim();
    let bad = |msg: &str| Error::Parse {
        line: 1,
        message: format!("{msg} in `{expr}`"),
    };
    if let Some(inner) = expr.strip_prefix("flat(").and_then(|r| r.strip_suffix(')')) {
        return match build(inner)? {
            AlgebraFile::Group(g) => Ok(AlgebraFile::Semiring(flat_extension(&g))),
            AlgebraFile::Semiring(_) => Err(bad("flat(...) needs a group")),
        };
    }
    if let Some(inner) = expr.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
        let split = top_level_comma(inner).ok_or_else(|| bad("prod(...) needs two arguments"))?;
        let (left, right) = (build(&inner[..split])?, build(&inner[split + 1..])?);
        return match (left, right) {
            (AlgebraFile::Group(g), AlgebraFile::Group(h)) => {
                Ok(AlgebraFile::Group(direct_product(&g, &h)))
            }
            (AlgebraFile::Semiring(s), AlgebraFile::Semiring(t)) => {
                Ok(AlgebraFile::Semiring(s.product(&t)))
            }
            _ => Err(bad("prod(...) needs two groups or two semirings")),
        };
    }
    if expr == "q8" {
        return Ok(AlgebraFile::Group(quaternion_group()));
    }
    if let Some(m) = expr.strip_prefix("zn:") {
        let m: usize = m.trim().parse().map_err(|_| bad("expected a number"))?;
        return Ok(AlgebraFile::Group(cyclic_group(m)?));
    }
    if let Some(p) = expr.strip_prefix("gp:") {
        let p: u64 = p.trim().parse().map_err(|_| bad("expected a number"))?;
        return Ok(AlgebraFile::Group(heisenberg_group(p)?));
    }
    Err(bad("unknown algebra expression"))
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}
