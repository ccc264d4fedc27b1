//! Runs the structure theory of `M_n` against concrete algebras: built-in flat
//! extensions and the enumerated catalogs.

use std::fmt;

use serde::Serialize;

use crate::algebra::{generated_subalgebras, validate_axioms, FiniteGroup, FiniteSemiring};
use crate::congruence::{
    all_congruences, extend_idempotent_congruence, is_congruence_simple,
    is_subdirectly_irreducible, oracle, Congruence,
};
use crate::constructions::{
    build, burnside_exponent, flat_extension, flat_law_violations, sylow_abelian_report,
};
use crate::enumerate::{self, verify_proposition};
use crate::error::Result;
use crate::iso::are_isomorphic;
use crate::partition::Partition;
use crate::semigroup::{
    clifford_decomposition, green_power_mismatches, green_relations, idempotents,
    missing_meets_with_idempotents, partial_orders, zero_group,
};
use crate::terms::{builtin_identities, check_identity, first_failure, member_of, VarietySpec};
use crate::text::AlgebraFile;

/// Group expressions whose flat extensions the suite always considers.
pub const BUILTIN_GROUPS: [&str; 7] = [
    "zn:1",
    "zn:2",
    "zn:3",
    "zn:4",
    "prod(zn:2,zn:2)",
    "q8",
    "gp:3",
];

/// Largest catalog order used by the suite.
pub const CATALOG_ORDER: usize = 4;

/// Largest carrier on which congruences are cross-checked against the partition scan.
pub const ORACLE_ORDER: usize = oracle::MAX_ORDER;

/// An algebra under test.
#[derive(Clone, Debug)]
pub struct Subject {
    pub label: String,
    pub semiring: FiniteSemiring,
    /// The group, when the subject is a flat extension built by the suite.
    pub group: Option<FiniteGroup>,
}

/// The built-in flat extensions that belong to `M_n`, i.e. whose group has
/// exponent dividing `n - 1`.
pub fn builtin_subjects(n: u32) -> Result<Vec<Subject>> {
    let mut out = Vec::new();
    for expr in BUILTIN_GROUPS {
        let AlgebraFile::Group(g) = build(expr)? else {
            unreachable!("built-in expressions are groups")
        };
        if (n as usize - 1).is_multiple_of(g.exponent()) {
            out.push(Subject {
                label: format!("flat({expr})"),
                semiring: flat_extension(&g),
                group: Some(g),
            });
        }
    }
    Ok(out)
}

/// The `M_n` catalog for orders `1..=max_order`, labelled by catalog file stem.
pub fn catalog_subjects(n: u32, max_order: usize) -> Result<Vec<Subject>> {
    let v = VarietySpec::m(n)?;
    labelled_catalog(&v, max_order)
}

pub fn labelled_catalog(v: &VarietySpec, max_order: usize) -> Result<Vec<Subject>> {
    let mut out = Vec::new();
    for (i, cat) in enumerate::enumerate_up_to(max_order, v)?
        .into_iter()
        .enumerate()
    {
        for (j, s) in cat.into_iter().enumerate() {
            let file = enumerate::catalog_file_name(v, i + 1, j);
            out.push(Subject {
                label: file.trim_end_matches(".alg").to_string(),
                semiring: s,
                group: None,
            });
        }
    }
    Ok(out)
}

/// One claim checked on one subject.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub subject: String,
    pub claim: String,
    pub passed: bool,
    /// Counterexample on failure, or a short note.
    pub detail: Option<String>,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {}", self.subject, self.claim)?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

struct Checks<'a> {
    subject: &'a str,
    out: Vec<Check>,
}

impl Checks<'_> {
    fn record(&mut self, claim: impl Into<String>, failure: Option<String>) {
        self.out.push(Check {
            subject: self.subject.to_string(),
            claim: claim.into(),
            passed: failure.is_none(),
            detail: failure,
        });
    }

    fn note(&mut self, claim: impl Into<String>, note: String) {
        self.out.push(Check {
            subject: self.subject.to_string(),
            claim: claim.into(),
            passed: true,
            detail: Some(note),
        });
    }

    fn result<T>(&mut self, claim: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.record(claim, Some(e.to_string()));
                None
            }
        }
    }
}

/// Every congruence of `s` found by the partition scan (for `k <= ORACLE_ORDER`),
/// or by the closure engine beyond that.
pub fn congruences_for_extension(e: &FiniteSemiring) -> Result<Vec<Congruence>> {
    if e.order() <= ORACLE_ORDER {
        oracle::brute_force_congruences(e)?
            .into_iter()
            .map(|labels| Congruence::new(e, Partition::from_keys(&labels)))
            .collect()
    } else {
        all_congruences(e)
    }
}

/// Checks every claim about members of `M_n` on one subject.
pub fn check_m_member(subject: &Subject, n: u32) -> Result<Vec<Check>> {
    let s = &subject.semiring;
    let variety = VarietySpec::m(n)?;
    let mut c = Checks {
        subject: &subject.label,
        out: Vec::new(),
    };

    let axioms = validate_axioms(s);
    c.record(
        "valid ai-semiring",
        axioms.violations.first().map(|v| v.to_string()),
    );
    let membership = first_failure(s, &variety);
    c.record(
        format!("member of {}", variety.name),
        membership
            .as_ref()
            .map(|(ni, cx)| format!("{} fails: {cx}", ni.identity)),
    );
    if !axioms.is_valid() || membership.is_some() {
        return Ok(c.out);
    }

    for ni in builtin_identities(n)?.into_iter().skip(2) {
        c.record(
            format!("identity {} [{}]", ni.name, ni.identity),
            check_identity(s, &ni.identity)
                .err()
                .map(|cx| cx.to_string()),
        );
    }

    let e = c.result("idempotents form a subsemiring", idempotents(s));
    if e.is_some() {
        c.record("idempotents form a subsemiring", None);
    }

    let green = green_relations(s);
    let mismatches = c.result(
        "Green H and D match power forms",
        green_power_mismatches(s, &green, n),
    );
    if let Some(m) = mismatches {
        c.record(
            "Green H and D match power forms",
            m.first().map(|x| x.to_string()),
        );
    }
    c.record(
        "D equals H",
        (green.d != green.h).then(|| format!("D = {}, H = {}", green.d, green.h)),
    );
    c.record(
        "multiplicative reduct is Clifford",
        clifford_decomposition(s)
            .is_none()
            .then(|| "no semilattice-of-groups decomposition".to_string()),
    );

    if let Some(rep) = c.result("orders are dual", partial_orders(s, n)) {
        c.record("orders are dual", rep.violations.first().cloned());
        if let Some(missing) = c.result(
            "meets with idempotents exist",
            missing_meets_with_idempotents(s, &rep),
        ) {
            c.record(
                "meets with idempotents exist",
                missing
                    .first()
                    .map(|(a, f)| format!("no glb of {{{a}, {f}}}")),
            );
        }
    }

    let closure_failure = s
        .elements()
        .find_map(|x| generated_subalgebras(s, &[x]).err().map(|e| e.to_string()));
    c.record(
        "generated subsemirings are sums of products",
        closure_failure,
    );

    let lattice = c.result("congruence lattice", all_congruences(s));
    if let Some(lattice) = &lattice {
        if s.order() <= ORACLE_ORDER {
            let mut engine: Vec<Vec<usize>> = lattice
                .iter()
                .map(|c| c.partition().labels().to_vec())
                .collect();
            engine.sort();
            let scan = oracle::brute_force_congruences(s)?;
            c.record(
                "congruences agree with partition scan",
                (engine != scan)
                    .then(|| format!("engine found {}, scan found {}", engine.len(), scan.len())),
            );
        }
        if let Some(e) = &e {
            let bad = lattice.iter().find(|theta| {
                theta.is_identity() != theta.partition().restrict(&e.elements).is_identity()
            });
            c.record(
                "congruence is identity iff identity on idempotents",
                bad.map(|theta| theta.to_string()),
            );
        }
    }

    if let Some(e) = &e {
        if let Some(rhos) = c.result(
            "idempotent congruences extend",
            congruences_for_extension(&e.subsemiring),
        ) {
            let failure =
                rhos.iter()
                    .find_map(|rho| match extend_idempotent_congruence(s, n, rho) {
                        Ok(_) => None,
                        Err(err) => Some(format!("rho = {rho}: {err}")),
                    });
            c.record("idempotent congruences extend", failure);
        }
    }

    if s.order() >= 2 {
        let si = is_subdirectly_irreducible(s)?;
        let simple = is_congruence_simple(s)?;
        let zg = zero_group(s);
        c.record(
            "SI iff simple iff 0-group",
            (si != simple || si != zg.is_some())
                .then(|| format!("SI={si} simple={simple} 0-group={}", zg.is_some())),
        );
        if si {
            let flat = enumerate_flat_check(s);
            c.record("SI member is a flat extension", flat);
        }
        c.note(
            "subdirect irreducibility",
            format!("SI={si} simple={simple}"),
        );
    }

    if let Some(g) = &subject.group {
        let laws = flat_law_violations(s, g, n);
        c.record(
            "flat-extension sum laws",
            laws.first().map(|v| format!("{v:?}")),
        );
        let exp = burnside_exponent(g);
        c.note("group exponent", format!("G in G({exp},1)"));
        if g.order() <= crate::constructions::MAX_SYLOW_ORDER {
            let rep = sylow_abelian_report(g)?;
            c.note(
                "Sylow subgroups",
                if rep.predicted_nonfinitely_based {
                    "some Sylow subgroup is non-abelian; flat extension predicted nonfinitely based"
                        .to_string()
                } else {
                    "all Sylow subgroups abelian".to_string()
                },
            );
        }
    }
    Ok(c.out)
}

fn enumerate_flat_check(s: &FiniteSemiring) -> Option<String> {
    let report = verify_proposition(std::slice::from_ref(s)).ok()?;
    report.violations.first().map(|v| v.to_string())
}

/// Green cross-check for a member of `Sr(n,1)` that need not lie in `M_n`.
pub fn check_sr_member(subject: &Subject, n: u32) -> Result<Vec<Check>> {
    let s = &subject.semiring;
    let mut c = Checks {
        subject: &subject.label,
        out: Vec::new(),
    };
    let green = green_relations(s);
    if let Some(m) = c.result(
        "Green H and D match power forms",
        green_power_mismatches(s, &green, n),
    ) {
        c.record(
            "Green H and D match power forms",
            m.first().map(|x| x.to_string()),
        );
    }
    c.record(
        "idempotents form a subsemiring",
        idempotents(s).err().map(|e| e.to_string()),
    );
    Ok(c.out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub n: u32,
    pub checks: Vec<Check>,
    /// Catalog sizes per order, `[order 1, order 2, ...]`, found by exhaustive search.
    pub m_catalog_counts: Vec<usize>,
    pub sr_catalog_counts: Vec<usize>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs `f` over `items` on up to `workers` threads, keeping input order.
pub fn parallel_map<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    if workers <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| scope.spawn(|| part.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// The full suite for exponent `n`: every built-in flat extension in `M_n`, the
/// `M_n` catalog, and the Green cross-check on the `Sr(n,1)` catalog.
pub fn verify_all(n: u32, workers: usize) -> Result<SuiteReport> {
    let mut subjects = builtin_subjects(n)?;
    let m_catalog = catalog_subjects(n, CATALOG_ORDER)?;
    let m_catalog_counts = count_by_order(&m_catalog);
    subjects.extend(m_catalog);
    let sr = VarietySpec::sr(n)?;
    let sr_catalog = labelled_catalog(&sr, CATALOG_ORDER)?;
    let sr_catalog_counts = count_by_order(&sr_catalog);

    let mut checks = Vec::new();
    for r in parallel_map(&subjects, workers, |s| check_m_member(s, n)) {
        checks.extend(r?);
    }
    for r in parallel_map(&sr_catalog, workers, |s| check_sr_member(s, n)) {
        checks.extend(r?);
    }
    for s in &sr_catalog {
        if member_of(&s.semiring, &VarietySpec::m(n)?)
            && !subjects
                .iter()
                .any(|t| are_isomorphic(&t.semiring, &s.semiring).is_some())
        {
            checks.push(Check {
                subject: s.label.clone(),
                claim: "M_n catalog is complete within Sr(n,1) catalog".into(),
                passed: false,
                detail: Some("member of M_n missing from the M_n catalog".into()),
            });
        }
    }
    Ok(SuiteReport {
        n,
        checks,
        m_catalog_counts,
        sr_catalog_counts,
    })
}

fn count_by_order(subjects: &[Subject]) -> Vec<usize> {
    let max = subjects
        .iter()
        .map(|s| s.semiring.order())
        .max()
        .unwrap_or(0);
    (1..=max)
        .map(|k| subjects.iter().filter(|s| s.semiring.order() == k).count())
        .collect()
}
