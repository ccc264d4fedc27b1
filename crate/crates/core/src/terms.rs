//! Terms of the free ai-semiring (finite sets of nonempty words), identities
//! between them, and exhaustive identity checking in finite algebras.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{Elem, FiniteGroup, FiniteSemiring, MulTable};
use crate::error::{Error, Result};

/// Variable index; `0` prints as `x1`.
pub type Var = usize;

/// A nonempty word over the variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Var>,
}

impl Word {
    pub fn new(letters: Vec<Var>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Precondition("words must be nonempty".into()));
        }
        Ok(Word { letters })
    }

    pub fn var(v: Var) -> Self {
        Word { letters: vec![v] }
    }

    pub fn letters(&self) -> &[Var] {
        &self.letters
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// `self` repeated `m >= 1` times.
    pub fn pow(&self, m: u32) -> Word {
        assert!(m >= 1, "word powers start at 1");
        Word {
            letters: self.letters.repeat(m as usize),
        }
    }

    /// Left-to-right product of the letters' values.
    pub fn eval<A: MulTable + ?Sized>(&self, alg: &A, assignment: &[Elem]) -> Result<Elem> {
        let value = |v: Var| {
            assignment
                .get(v)
                .copied()
                .ok_or(Error::UnassignedVariable(v))
        };
        let mut acc = value(self.letters[0])?;
        for &v in &self.letters[1..] {
            acc = alg.mul(acc, value(v)?);
        }
        Ok(acc)
    }
}

impl fmt::Display for Word {
    /// Runs of a repeated letter are written as powers: `x1*x2^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        let mut first = true;
        while i < self.letters.len() {
            let v = self.letters[i];
            let run = self.letters[i..].iter().take_while(|&&w| w == v).count();
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", v + 1)?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// A finite nonempty set of words, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SemiringTerm {
    words: BTreeSet<Word>,
}

impl SemiringTerm {
    pub fn from_words<I: IntoIterator<Item = Word>>(words: I) -> Result<Self> {
        let words: BTreeSet<Word> = words.into_iter().collect();
        if words.is_empty() {
            return Err(Error::Precondition("terms must contain a word".into()));
        }
        Ok(SemiringTerm { words })
    }

    pub fn word(w: Word) -> Self {
        SemiringTerm {
            words: BTreeSet::from([w]),
        }
    }

    pub fn var(v: Var) -> Self {
        Self::word(Word::var(v))
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.words
            .iter()
            .flat_map(|w| w.letters.iter().copied())
            .collect()
    }

    /// Union of the word sets.
    pub fn sum(&self, other: &SemiringTerm) -> SemiringTerm {
        SemiringTerm {
            words: self.words.union(&other.words).cloned().collect(),
        }
    }

    /// All concatenations `ab` with `a` from `self` and `b` from `other`.
    pub fn product(&self, other: &SemiringTerm) -> SemiringTerm {
        let words = self
            .words
            .iter()
            .flat_map(|a| other.words.iter().map(move |b| a.concat(b)))
            .collect();
        SemiringTerm { words }
    }

    /// Evaluates each word by multiplication, then adds the values in ascending word order.
    pub fn eval(&self, s: &FiniteSemiring, assignment: &[Elem]) -> Result<Elem> {
        let mut acc: Option<Elem> = None;
        for w in &self.words {
            let x = w.eval(s, assignment)?;
            acc = Some(match acc {
                Some(a) => s.add(a, x),
                None => x,
            });
        }
        Ok(acc.expect("terms are nonempty"))
    }

    fn single_word(&self) -> Option<&Word> {
        if self.words.len() == 1 {
            self.words.iter().next()
        } else {
            None
        }
    }
}

pub fn term_sum(t1: &SemiringTerm, t2: &SemiringTerm) -> SemiringTerm {
    t1.sum(t2)
}

pub fn term_product(t1: &SemiringTerm, t2: &SemiringTerm) -> SemiringTerm {
    t1.product(t2)
}

pub fn eval_term(t: &SemiringTerm, s: &FiniteSemiring, assignment: &[Elem]) -> Result<Elem> {
    t.eval(s, assignment)
}

impl fmt::Display for SemiringTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// An identity `lhs ≈ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: SemiringTerm,
    pub rhs: SemiringTerm,
}

impl Identity {
    pub fn new(lhs: SemiringTerm, rhs: SemiringTerm) -> Self {
        Identity { lhs, rhs }
    }

    pub fn variables(&self) -> Vec<Var> {
        self.lhs
            .variables()
            .union(&self.rhs.variables())
            .copied()
            .collect()
    }

    /// True when both sides are single words, so the identity makes sense in a
    /// semigroup or group.
    pub fn is_semigroup_identity(&self) -> bool {
        self.lhs.single_word().is_some() && self.rhs.single_word().is_some()
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≈ {}", self.lhs, self.rhs)
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_identity(s)
    }
}

/// A failing assignment for an identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// `(variable, value)` for each variable of the identity, ascending by variable.
    pub assignment: Vec<(Var, Elem)>,
    pub lhs_value: Elem,
    pub rhs_value: Elem,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, x)) in self.assignment.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "x{}↦{}", v + 1, x)?;
        }
        write!(f, " gives {} vs {}", self.lhs_value, self.rhs_value)
    }
}

/// Runs `check` on every assignment of the identity's variables, in the order
/// where the first variable changes fastest, and returns the first failure.
fn search_assignments<F>(id: &Identity, order: usize, mut check: F) -> Option<Counterexample>
where
    F: FnMut(&[Elem]) -> (Elem, Elem),
{
    let vars = id.variables();
    let width = vars.last().map_or(0, |&v| v + 1);
    let mut assignment = vec![0; width];
    let mut digits = vec![0usize; vars.len()];
    loop {
        for (d, &v) in digits.iter().zip(&vars) {
            assignment[v] = *d;
        }
        let (l, r) = check(&assignment);
        if l != r {
            return Some(Counterexample {
                assignment: vars.iter().map(|&v| (v, assignment[v])).collect(),
                lhs_value: l,
                rhs_value: r,
            });
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return None;
            }
            digits[i] += 1;
            if digits[i] < order {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Exhaustive check of `id` in `s`; returns the first failing assignment.
pub fn check_identity(s: &FiniteSemiring, id: &Identity) -> Result<(), Counterexample> {
    match search_assignments(id, s.order(), |a| {
        (
            id.lhs.eval(s, a).expect("assignment covers all variables"),
            id.rhs.eval(s, a).expect("assignment covers all variables"),
        )
    }) {
        Some(cx) => Err(cx),
        None => Ok(()),
    }
}

pub fn satisfies(s: &FiniteSemiring, id: &Identity) -> bool {
    check_identity(s, id).is_ok()
}

/// Exhaustive check of a word identity in any multiplicative table.
pub fn check_word_identity<A: MulTable + ?Sized>(
    alg: &A,
    id: &Identity,
) -> Result<Result<(), Counterexample>> {
    let (Some(l), Some(r)) = (id.lhs.single_word(), id.rhs.single_word()) else {
        return Err(Error::Precondition(format!(
            "`{id}` uses +, which a semigroup cannot interpret"
        )));
    };
    Ok(
        match search_assignments(id, alg.order(), |a| {
            (
                l.eval(alg, a).expect("assignment covers all variables"),
                r.eval(alg, a).expect("assignment covers all variables"),
            )
        }) {
            Some(cx) => Err(cx),
            None => Ok(()),
        },
    )
}

/// Which kind of algebra a variety preset describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    Semiring,
    Semigroup,
    Group,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedIdentity {
    pub name: &'static str,
    pub identity: Identity,
}

/// A variety given by its exponent and defining identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietySpec {
    pub name: String,
    pub family: Family,
    pub exponent: u32,
    pub identities: Vec<NamedIdentity>,
}

fn check_exponent(n: u32) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidExponent(n))
    } else {
        Ok(())
    }
}

const X: Var = 0;
const Y: Var = 1;

fn w(letters: &[Var]) -> Word {
    Word {
        letters: letters.to_vec(),
    }
}

fn xp(v: Var, m: u32) -> Word {
    Word::var(v).pow(m)
}

fn t(words: Vec<Word>) -> SemiringTerm {
    SemiringTerm::from_words(words).expect("nonempty")
}

/// `x^n ≈ x`.
pub fn burnside_identity(n: u32) -> Result<Identity> {
    check_exponent(n)?;
    Ok(Identity::new(t(vec![xp(X, n)]), SemiringTerm::var(X)))
}

/// `x^{n-1} + y^{n-1} ≈ x^{n-1}y^{n-1}`.
pub fn m_identity(n: u32) -> Result<Identity> {
    check_exponent(n)?;
    let e = n - 1;
    Ok(Identity::new(
        t(vec![xp(X, e), xp(Y, e)]),
        t(vec![xp(X, e).concat(&xp(Y, e))]),
    ))
}

/// Names of the consequences of the defining identity of `M_n`, in the order
/// [`builtin_identities`] lists them after the two defining identities.
pub const CONSEQUENCE_NAMES: [&str; 5] = [
    "idempotent-powers-commute",
    "idempotent-power-central",
    "sum-as-products",
    "sum-of-powers",
    "power-of-product",
];

/// The defining identities `x^n ≈ x` and `x^{n-1}+y^{n-1} ≈ x^{n-1}y^{n-1}`,
/// followed by the five identities every member of `M_n` satisfies.
pub fn builtin_identities(n: u32) -> Result<Vec<NamedIdentity>> {
    check_exponent(n)?;
    let e = n - 1;
    let xe = xp(X, e);
    let ye = xp(Y, e);
    let mut out = vec![
        NamedIdentity {
            name: "burnside",
            identity: burnside_identity(n)?,
        },
        NamedIdentity {
            name: "m-defining",
            identity: m_identity(n)?,
        },
    ];
    let consequences = [
        // x^{n-1}y^{n-1} ≈ y^{n-1}x^{n-1}
        Identity::new(t(vec![xe.concat(&ye)]), t(vec![ye.concat(&xe)])),
        // xy^{n-1} ≈ y^{n-1}x
        Identity::new(t(vec![w(&[X]).concat(&ye)]), t(vec![ye.concat(&w(&[X]))])),
        // x+y ≈ xy^{n-1}+x^{n-1}y
        Identity::new(
            t(vec![w(&[X]), w(&[Y])]),
            t(vec![w(&[X]).concat(&ye), xe.concat(&w(&[Y]))]),
        ),
        // x+x^{n-1} ≈ x+x^2+...+x^{n-1}
        Identity::new(
            t(vec![w(&[X]), xe.clone()]),
            t((1..=e).map(|m| xp(X, m)).collect()),
        ),
        // (xy)^{n-1} ≈ x^{n-1}y^{n-1}
        Identity::new(t(vec![w(&[X, Y]).pow(e)]), t(vec![xe.concat(&ye)])),
    ];
    out.extend(
        CONSEQUENCE_NAMES
            .iter()
            .zip(consequences)
            .map(|(&name, identity)| NamedIdentity { name, identity }),
    );
    Ok(out)
}

impl VarietySpec {
    /// `Sr(n,1)`: ai-semirings with `x^n ≈ x`.
    pub fn sr(n: u32) -> Result<Self> {
        Ok(VarietySpec {
            name: format!("Sr({n},1)"),
            family: Family::Semiring,
            exponent: n,
            identities: vec![NamedIdentity {
                name: "burnside",
                identity: burnside_identity(n)?,
            }],
        })
    }

    /// `M_n`: `Sr(n,1)` plus `x^{n-1}+y^{n-1} ≈ x^{n-1}y^{n-1}`.
    pub fn m(n: u32) -> Result<Self> {
        let mut v = Self::sr(n)?;
        v.name = format!("M_{n}");
        v.identities.push(NamedIdentity {
            name: "m-defining",
            identity: m_identity(n)?,
        });
        Ok(v)
    }

    /// `Sg(n,1)`, applied to multiplicative reducts.
    pub fn sg(n: u32) -> Result<Self> {
        let mut v = Self::sr(n)?;
        v.name = format!("Sg({n},1)");
        v.family = Family::Semigroup;
        Ok(v)
    }

    /// `G(n,1)`, applied to groups.
    pub fn g(n: u32) -> Result<Self> {
        let mut v = Self::sr(n)?;
        v.name = format!("G({n},1)");
        v.family = Family::Group;
        Ok(v)
    }

    /// Looks up a preset by short name: `sr3`, `m3`, `sg3`, `g3`.
    pub fn preset(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        let split = lower
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::Precondition(format!("unknown variety `{name}`")))?;
        let (family, digits) = lower.split_at(split);
        let n: u32 = digits
            .parse()
            .map_err(|_| Error::Precondition(format!("unknown variety `{name}`")))?;
        match family {
            "sr" => Self::sr(n),
            "m" => Self::m(n),
            "sg" => Self::sg(n),
            "g" => Self::g(n),
            _ => Err(Error::Precondition(format!("unknown variety `{name}`"))),
        }
    }

    /// Short name usable with [`VarietySpec::preset`] and in file names.
    pub fn short_name(&self) -> String {
        let prefix = match (self.family, self.identities.len()) {
            (Family::Semiring, 1) => "sr",
            (Family::Semiring, _) => "m",
            (Family::Semigroup, _) => "sg",
            (Family::Group, _) => "g",
        };
        format!("{prefix}{}", self.exponent)
    }
}

/// First failing identity of `v` in `s`, with its counterexample.
pub fn first_failure<'a>(
    s: &FiniteSemiring,
    v: &'a VarietySpec,
) -> Option<(&'a NamedIdentity, Counterexample)> {
    v.identities
        .iter()
        .find_map(|ni| check_identity(s, &ni.identity).err().map(|cx| (ni, cx)))
}

/// Whether `s` satisfies every identity of `v`. Semigroup and group presets only
/// look at the multiplicative reduct.
pub fn member_of(s: &FiniteSemiring, v: &VarietySpec) -> bool {
    first_failure(s, v).is_none()
}

pub fn group_member_of(g: &FiniteGroup, v: &VarietySpec) -> Result<bool> {
    for ni in &v.identities {
        if check_word_identity(g, &ni.identity)?.is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}

// Identity syntax: `x1*x2^2 + x1 ≈ x2*x1`, with `=` accepted for `≈` and
// parenthesised words allowed under a power, e.g. `(x1*x2)^2`.

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
}

fn syntax_error(src: &str, pos: usize, message: &str) -> Error {
    Error::Parse {
        line: 1,
        message: format!("{message} at column {} in `{src}`", pos + 1),
    }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn pos(&mut self) -> usize {
        self.peek().map_or(self.src.len(), |(p, _)| p)
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos();
        let mut digits = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        digits
            .parse()
            .map_err(|_| syntax_error(self.src, start, "expected a number"))
    }

    fn power(&mut self, base: Word) -> Result<Word> {
        if let Some((_, '^')) = self.peek() {
            self.chars.next();
            self.skip_ws();
            let start = self.pos();
            let m = self.number()?;
            if m == 0 {
                return Err(syntax_error(self.src, start, "exponent must be positive"));
            }
            return Ok(base.pow(m));
        }
        Ok(base)
    }

    fn factor(&mut self) -> Result<Word> {
        match self.peek() {
            Some((_, 'x')) => {
                self.chars.next();
                let start = self.pos();
                let idx = self.number()?;
                if !(1..=9).contains(&idx) {
                    return Err(syntax_error(self.src, start, "variables are x1..x9"));
                }
                self.power(Word::var(idx as usize - 1))
            }
            Some((_, '(')) => {
                self.chars.next();
                let inner = self.word()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.chars.next();
                    }
                    _ => {
                        let p = self.pos();
                        return Err(syntax_error(self.src, p, "expected `)`"));
                    }
                }
                self.power(inner)
            }
            _ => {
                let p = self.pos();
                Err(syntax_error(self.src, p, "expected a variable or `(`"))
            }
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut acc = self.factor()?;
        while let Some((_, '*')) = self.peek() {
            self.chars.next();
            acc = acc.concat(&self.factor()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SemiringTerm> {
        let mut words = vec![self.word()?];
        while let Some((_, '+')) = self.peek() {
            self.chars.next();
            words.push(self.word()?);
        }
        SemiringTerm::from_words(words)
    }
}

pub fn parse_term(src: &str) -> Result<SemiringTerm> {
    let mut p = Parser {
        chars: src.char_indices().peekable(),
        src,
    };
    let term = p.term()?;
    if let Some((pos, _)) = p.peek() {
        return Err(syntax_error(src, pos, "unexpected input"));
    }
    Ok(term)
}

pub fn parse_identity(src: &str) -> Result<Identity> {
    let mut p = Parser {
        chars: src.char_indices().peekable(),
        src,
    };
    let lhs = p.term()?;
    match p.peek() {
        Some((_, '≈')) | Some((_, '=')) => {
            p.chars.next();
        }
        _ => {
            let pos = p.pos();
            return Err(syntax_error(src, pos, "expected `≈` or `=`"));
        }
    }
    let rhs = p.term()?;
    if let Some((pos, _)) = p.peek() {
        return Err(syntax_error(src, pos, "unexpected input"));
    }
    Ok(Identity::new(lhs, rhs))
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

    fn term(s: &str) -> SemiringTerm {
        parse_term(s).unwrap()
    }

    #[test]
    fn union_is_idempotent() {
        assert_eq!(term("x1").sum(&term("x1")), term("x1"));
    }

    #[test]
    fn product_is_setwise_concatenation() {
        assert_eq!(term("x1").product(&term("x2 + x3")), term("x1*x2 + x1*x3"));
        let lhs = term("x1").sum(&term("x2")).product(&term("x3"));
        assert_eq!(lhs, term("x1*x3 + x2*x3"));
        assert_eq!(
            lhs,
            term("x1")
                .product(&term("x3"))
                .sum(&term("x2").product(&term("x3")))
        );
    }

    #[test]
    fn evaluation_examples() {
        let b = lattice_b();
        assert_eq!(term("x1").eval(&b, &[1]).unwrap(), 1);
        assert_eq!(term("x1*x2 + x1").eval(&b, &[1, 0]).unwrap(), 1);
        let f = flat_z2();
        assert_eq!(term("x1^3").eval(&f, &[1]).unwrap(), 1);
        assert_eq!(
            term("x1*x2").eval(&f, &[1]),
            Err(Error::UnassignedVariable(1))
        );
    }

    #[test]
    fn satisfaction_examples() {
        let f = flat_z2();
        assert!(satisfies(&f, &burnside_identity(3).unwrap()));
        assert!(satisfies(&f, &m_identity(3).unwrap()));
        let cx =
            check_identity(&lattice_b(), &parse_identity("x1 + x2 ≈ x1*x2").unwrap()).unwrap_err();
        assert_eq!(cx.assignment, vec![(0, 1), (1, 0)]);
        assert_eq!((cx.lhs_value, cx.rhs_value), (1, 0));
    }

    #[test]
    fn lattice_is_not_in_m2() {
        assert!(!member_of(&lattice_b(), &VarietySpec::m(2).unwrap()));
        assert!(member_of(&lattice_b(), &VarietySpec::sr(2).unwrap()));
    }

    #[test]
    fn builtin_identity_shapes() {
        let ids = builtin_identities(3).unwrap();
        let sum_as_products = &ids
            .iter()
            .find(|i| i.name == "sum-as-products")
            .unwrap()
            .identity;
        assert_eq!(
            sum_as_products,
            &parse_identity("x1 + x2 ≈ x1*x2^2 + x1^2*x2").unwrap()
        );
        let ids = builtin_identities(2).unwrap();
        let sum_of_powers = &ids
            .iter()
            .find(|i| i.name == "sum-of-powers")
            .unwrap()
            .identity;
        assert_eq!(sum_of_powers, &parse_identity("x1 + x1 ≈ x1").unwrap());
        let ids = builtin_identities(4).unwrap();
        let power_of_product = &ids
            .iter()
            .find(|i| i.name == "power-of-product")
            .unwrap()
            .identity;
        assert_eq!(
            power_of_product,
            &parse_identity("(x1*x2)^3 ≈ x1^3*x2^3").unwrap()
        );
        assert_eq!(builtin_identities(1), Err(Error::InvalidExponent(1)));
        assert_eq!(ids.len(), 7);
    }

    #[test]
    fn parse_and_display() {
        let id = parse_identity("x1*x2^2 + x1 ≈ x2*x1").unwrap();
        assert_eq!(id.to_string(), "x1 + x1*x2^2 ≈ x2*x1");
        assert_eq!(parse_identity(&id.to_string()).unwrap(), id);
        assert!(parse_identity("x1 + x2 = x2 + x1").is_ok());
        assert!(parse_identity("x0 ≈ x1").is_err());
        assert!(parse_identity("x1 ≈").is_err());
        assert!(parse_identity("x1^0 ≈ x1").is_err());
        assert!(parse_identity("x1 ≈ x1 x2").is_err());
    }

    #[test]
    fn presets() {
        assert_eq!(
            VarietySpec::preset("m3").unwrap(),
            VarietySpec::m(3).unwrap()
        );
        assert_eq!(VarietySpec::preset("Sr4").unwrap().short_name(), "sr4");
        assert!(VarietySpec::preset("q3").is_err());
        assert!(VarietySpec::preset("m1").is_err());
    }

    #[test]
    fn group_membership() {
        let z3 = FiniteGroup::new(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]], 0).unwrap();
        assert!(group_member_of(&z3, &VarietySpec::g(4).unwrap()).unwrap());
        assert!(!group_member_of(&z3, &VarietySpec::g(3).unwrap()).unwrap());
        assert!(group_member_of(&z3, &VarietySpec::m(4).unwrap()).is_err());
    }
}
