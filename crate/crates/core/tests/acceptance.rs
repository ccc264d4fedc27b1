//! Acceptance gate: each criterion recomputes its facts with small oracles
//! written directly from the definitions and compares them with the library.
//! Prints one `criterion N: PASS|FAIL` line per criterion and exits nonzero if
//! any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use burnside_core::algebra::{generated_subalgebras, Elem, FiniteGroup, FiniteSemiring};
use burnside_core::congruence::{
    all_congruences, extend_idempotent_congruence, is_congruence_simple,
    is_subdirectly_irreducible, oracle, Congruence,
};
use burnside_core::constructions::{
    build, flat_extension, flat_law_violations, heisenberg_group, quaternion_group,
    sylow_abelian_report,
};
use burnside_core::iso::are_isomorphic;
use burnside_core::partition::Partition;
use burnside_core::semigroup::{green_relations, idempotents, partial_orders, zero_group};
use burnside_core::terms::{builtin_identities, check_identity, member_of, VarietySpec};
use burnside_core::text::AlgebraFile;
use burnside_core::verify::{builtin_subjects, catalog_subjects, labelled_catalog, Subject};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const EXPONENTS: [u32; 4] = [2, 3, 4, 5];

/// A member of `M_n` under test together with its `n`.
struct Case {
    n: u32,
    subject: Subject,
}

/// Built-in flat extensions in `M_n` for n = 2..=5, then the `M_n` catalogs.
fn m_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for n in EXPONENTS {
        for subject in builtin_subjects(n).unwrap() {
            out.push(Case { n, subject });
        }
    }
    for n in EXPONENTS {
        for subject in catalog_subjects(n, 4).unwrap() {
            out.push(Case { n, subject });
        }
    }
    out
}

fn sr_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for n in EXPONENTS {
        for subject in labelled_catalog(&VarietySpec::sr(n).unwrap(), 4).unwrap() {
            out.push(Case { n, subject });
        }
    }
    out
}

// ---- oracles ----

fn pow(s: &FiniteSemiring, a: Elem, m: u32) -> Elem {
    (1..m).fold(a, |acc, _| s.mul(acc, a))
}

/// The five consequences of the `M_n` identity evaluated by hand at every pair `(x, y)`.
fn consequence_failures(s: &FiniteSemiring, n: u32) -> Vec<String> {
    let e = n - 1;
    let mut out = Vec::new();
    for x in s.elements() {
        for y in s.elements() {
            let (xe, ye) = (pow(s, x, e), pow(s, y, e));
            if s.mul(xe, ye) != s.mul(ye, xe) {
                out.push(format!("x^e y^e commute fails at ({x},{y})"));
            }
            if s.mul(x, ye) != s.mul(ye, x) {
                out.push(format!("x y^e = y^e x fails at ({x},{y})"));
            }
            if s.add(x, y) != s.add(s.mul(x, ye), s.mul(xe, y)) {
                out.push(format!("x+y = x y^e + x^e y fails at ({x},{y})"));
            }
            if pow(s, s.mul(x, y), e) != s.mul(xe, ye) {
                out.push(format!("(xy)^e = x^e y^e fails at ({x},{y})"));
            }
        }
        let powers = (2..=e).fold(x, |acc, i| s.add(acc, pow(s, x, i)));
        if s.add(x, pow(s, x, e)) != powers {
            out.push(format!("x + x^e = x + ... + x^e fails at {x}"));
        }
    }
    out
}

/// Least congruence containing `(a, b)`, as a boolean matrix closed by
/// brute-force iteration.
fn naive_cg(s: &FiniteSemiring, a: Elem, b: Elem) -> Vec<Vec<bool>> {
    let k = s.order();
    let mut r = vec![vec![false; k]; k];
    for (x, row) in r.iter_mut().enumerate() {
        row[x] = true;
    }
    r[a][b] = true;
    r[b][a] = true;
    loop {
        let mut changed = false;
        for x in 0..k {
            for y in 0..k {
                if !r[x][y] {
                    continue;
                }
                for c in 0..k {
                    for (p, q) in [
                        (s.add(x, c), s.add(y, c)),
                        (s.mul(x, c), s.mul(y, c)),
                        (s.mul(c, x), s.mul(c, y)),
                    ] {
                        if !r[p][q] {
                            r[p][q] = true;
                            r[q][p] = true;
                            changed = true;
                        }
                    }
                    if r[y][c] && !r[x][c] {
                        r[x][c] = true;
                        r[c][x] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return r;
        }
    }
}

/// (SI, simple) from principal congruences: SI iff the meet of all nonzero
/// principal congruences is nontrivial, simple iff each of them is total.
fn naive_si_simple(s: &FiniteSemiring) -> (bool, bool) {
    let k = s.order();
    let mut meet = vec![vec![true; k]; k];
    let mut simple = true;
    for a in 0..k {
        for b in a + 1..k {
            let cg = naive_cg(s, a, b);
            simple &= cg.iter().all(|row| row.iter().all(|&v| v));
            for x in 0..k {
                for y in 0..k {
                    meet[x][y] &= cg[x][y];
                }
            }
        }
    }
    let si = (0..k).any(|x| (0..k).any(|y| x != y && meet[x][y]));
    (si, simple)
}

/// The zero of `s` when `s` minus it is a group under multiplication.
fn naive_zero_group(s: &FiniteSemiring) -> Option<Elem> {
    let k = s.order();
    let z = (0..k).find(|&z| (0..k).all(|x| s.mul(z, x) == z && s.mul(x, z) == z))?;
    let rest: Vec<Elem> = (0..k).filter(|&x| x != z).collect();
    if rest.is_empty() || rest.iter().any(|&a| rest.iter().any(|&b| s.mul(a, b) == z)) {
        return None;
    }
    let one = *rest
        .iter()
        .find(|&&e| rest.iter().all(|&x| s.mul(e, x) == x && s.mul(x, e) == x))?;
    rest.iter()
        .all(|&a| rest.iter().any(|&b| s.mul(a, b) == one))
        .then_some(z)
}

fn is_compatible(s: &FiniteSemiring, labels: &[usize]) -> bool {
    let k = s.order();
    (0..k).all(|a| {
        (0..k).all(|b| {
            labels[a] != labels[b]
                || (0..k).all(|c| {
                    labels[s.add(a, c)] == labels[s.add(b, c)]
                        && labels[s.mul(a, c)] == labels[s.mul(b, c)]
                        && labels[s.mul(c, a)] == labels[s.mul(c, b)]
                })
        })
    })
}

fn principal_left(s: &FiniteSemiring, a: Elem) -> BTreeSet<Elem> {
    s.elements().map(|x| s.mul(x, a)).chain([a]).collect()
}

fn principal_right(s: &FiniteSemiring, a: Elem) -> BTreeSet<Elem> {
    s.elements().map(|x| s.mul(a, x)).chain([a]).collect()
}

fn naive_closure(seed: &BTreeSet<Elem>, op: impl Fn(Elem, Elem) -> Vec<Elem>) -> BTreeSet<Elem> {
    let mut set = seed.clone();
    loop {
        let items: Vec<Elem> = set.iter().copied().collect();
        let before = set.len();
        for &a in &items {
            for &b in &items {
                set.extend(op(a, b));
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

// ---- criteria ----

fn criterion_1(cases: &[Case]) -> Result<String, String> {
    let start = Instant::now();
    let mut failures = Vec::new();
    for case in cases {
        let s = &case.subject.semiring;
        for f in consequence_failures(s, case.n) {
            failures.push(format!("{} (n={}): {f}", case.subject.label, case.n));
        }
        for ni in builtin_identities(case.n).unwrap() {
            if let Err(cx) = check_identity(s, &ni.identity) {
                failures.push(format!(
                    "{} (n={}): {} at {cx}",
                    case.subject.label, case.n, ni.name
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(10) {
        failures.push(format!("runtime {elapsed:?} is not under 10 s"));
    }
    summarize(failures, format!("{} members, {elapsed:.2?}", cases.len()))
}

fn criterion_2(cases: &[Case]) -> Result<String, String> {
    let mut failures = Vec::new();
    let mut si_count = 0;
    let mut checked = 0;
    for case in cases.iter().filter(|c| c.subject.semiring.order() >= 2) {
        let s = &case.subject.semiring;
        let label = &case.subject.label;
        checked += 1;
        let (si, simple) = naive_si_simple(s);
        let zg = naive_zero_group(s);
        if si != is_subdirectly_irreducible(s).unwrap()
            || simple != is_congruence_simple(s).unwrap()
        {
            failures.push(format!(
                "{label}: library SI/simple disagrees with the principal-congruence oracle"
            ));
        }
        if zg.is_some() != zero_group(s).is_some() {
            failures.push(format!(
                "{label}: library 0-group test disagrees with the oracle"
            ));
        }
        if si != simple || si != zg.is_some() {
            failures.push(format!(
                "{label}: SI={si} simple={simple} 0-group={}",
                zg.is_some()
            ));
        }
        if let (true, Some(z)) = (si, zg) {
            si_count += 1;
            // Identity map onto the flat extension of S \ {0} iff addition is flat.
            let flat_shape = s.elements().all(|a| {
                s.elements()
                    .all(|b| s.add(a, b) == if a == b { a } else { z })
            });
            let group: Vec<Elem> = s.elements().filter(|&x| x != z).collect();
            let m = group.len();
            let table: Vec<Elem> = group
                .iter()
                .flat_map(|&a| group.iter().map(move |&b| (a, b)))
                .map(|(a, b)| group.iter().position(|&g| g == s.mul(a, b)).unwrap())
                .collect();
            let identity = (0..m)
                .find(|&e| (0..m).all(|x| table[e * m + x] == x))
                .unwrap();
            let g = FiniteGroup::from_flat(m, table, identity).unwrap();
            let iso = are_isomorphic(s, &flat_extension(&g)).is_some();
            if !flat_shape || !iso {
                failures.push(format!(
                    "{label}: SI but not a flat extension (shape={flat_shape}, iso={iso})"
                ));
            }
        }
    }
    summarize(
        failures,
        format!("{checked} members, {si_count} subdirectly irreducible"),
    )
}

fn criterion_3() -> Result<String, String> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 2..=7 {
        for subject in builtin_subjects(n).unwrap() {
            let s = &subject.semiring;
            let g = subject.group.as_ref().unwrap();
            let zero = s.order() - 1;
            checked += 1;
            for c in s.elements() {
                for d in s.elements() {
                    if c != d && s.add(c, d) != zero {
                        failures.push(format!("{} : {c}+{d} is not 0", subject.label));
                    }
                }
            }
            for a in (0..g.order()).filter(|&a| a != g.identity()) {
                if s.add(a, pow(s, a, n - 1)) != zero {
                    failures.push(format!(
                        "{} (n={n}): {a} + {a}^{} is not 0",
                        subject.label,
                        n - 1
                    ));
                }
            }
            if !flat_law_violations(s, g, n).is_empty() {
                failures.push(format!(
                    "{} (n={n}): library reports violations",
                    subject.label
                ));
            }
        }
    }
    summarize(failures, format!("{checked} (flat extension, n) pairs"))
}

fn criterion_4() -> Result<String, String> {
    let start = Instant::now();
    let mut algebras: Vec<(String, FiniteSemiring)> = Vec::new();
    for n in EXPONENTS {
        for v in [VarietySpec::sr(n).unwrap(), VarietySpec::m(n).unwrap()] {
            for subject in labelled_catalog(&v, 4).unwrap() {
                algebras.push((subject.label, subject.semiring));
            }
        }
    }
    for expr in [
        "flat(zn:1)",
        "flat(zn:2)",
        "flat(zn:3)",
        "flat(zn:4)",
        "flat(prod(zn:2,zn:2))",
        "flat(zn:5)",
    ] {
        let AlgebraFile::Semiring(s) = build(expr).unwrap() else {
            unreachable!()
        };
        algebras.push((expr.to_string(), s));
    }
    // Products reach orders 4 and 6, which the built-ins barely cover.
    let sr2 = labelled_catalog(&VarietySpec::sr(2).unwrap(), 3).unwrap();
    let small: Vec<&Subject> = sr2.iter().filter(|s| s.semiring.order() >= 2).collect();
    for a in small.iter().filter(|s| s.semiring.order() == 2) {
        for b in &small {
            algebras.push((
                format!("{}x{}", a.label, b.label),
                a.semiring.product(&b.semiring),
            ));
        }
    }
    let mut failures = Vec::new();
    let mut max_order = 0;
    for (label, s) in &algebras {
        assert!(s.order() <= 6);
        max_order = max_order.max(s.order());
        let engine: BTreeSet<Vec<usize>> = all_congruences(s)
            .unwrap()
            .iter()
            .map(|c| c.partition().labels().to_vec())
            .collect();
        let scan: BTreeSet<Vec<usize>> = oracle::brute_force_congruences(s)
            .unwrap()
            .into_iter()
            .collect();
        if engine != scan {
            failures.push(format!(
                "{label}: engine {} vs scan {}",
                engine.len(),
                scan.len()
            ));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        failures.push(format!("runtime {elapsed:?} is not under 60 s"));
    }
    summarize(
        failures,
        format!(
            "{} algebras up to order {max_order}, {elapsed:.2?}",
            algebras.len()
        ),
    )
}

fn criterion_5() -> Result<String, String> {
    let mut failures = Vec::new();
    let mut extensions = 0;
    for n in [2, 3] {
        for subject in catalog_subjects(n, 4).unwrap() {
            let s = &subject.semiring;
            let e = idempotents(s).unwrap();
            for rgs in oracle::brute_force_congruences(&e.subsemiring).unwrap() {
                let rho = Congruence::new(&e.subsemiring, Partition::from_keys(&rgs)).unwrap();
                extensions += 1;
                let tau = match extend_idempotent_congruence(s, n, &rho) {
                    Ok(t) => t,
                    Err(err) => {
                        failures.push(format!("{} rho={rgs:?}: {err}", subject.label));
                        continue;
                    }
                };
                let labels = tau.partition().labels();
                if !is_compatible(s, labels) {
                    failures.push(format!(
                        "{} rho={rgs:?}: tau is not compatible",
                        subject.label
                    ));
                }
                for (i, &a) in e.elements.iter().enumerate() {
                    for (j, &b) in e.elements.iter().enumerate() {
                        if (labels[a] == labels[b]) != (rgs[i] == rgs[j]) {
                            failures.push(format!(
                                "{} rho={rgs:?}: restriction differs at ({a},{b})",
                                subject.label
                            ));
                        }
                    }
                }
            }
        }
    }
    summarize(failures, format!("{extensions} (member, rho) pairs"))
}

fn criterion_6(cases: &[Case]) -> Result<String, String> {
    let mut failures = Vec::new();
    for case in cases {
        let s = &case.subject.semiring;
        let idem: Vec<Elem> = s.elements().filter(|&e| s.mul(e, e) == e).collect();
        let report = partial_orders(s, case.n).unwrap();
        for a in s.elements() {
            for b in s.elements() {
                let plus = s.add(a, b) == b;
                let mul_converse = idem.iter().any(|&e| b == s.mul(e, a));
                if plus != mul_converse {
                    failures.push(format!("{}: a={a} b={b}", case.subject.label));
                }
                if report.plus_le[a][b] != plus || report.mul_le[b][a] != mul_converse {
                    failures.push(format!(
                        "{}: library orders differ at ({a},{b})",
                        case.subject.label
                    ));
                }
            }
        }
        if !report.is_consistent() {
            failures.push(format!("{}: {:?}", case.subject.label, report.violations));
        }
    }
    summarize(failures, format!("{} members", cases.len()))
}

fn criterion_7() -> Result<String, String> {
    let mut failures = Vec::new();
    let mut expect = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };
    let g3 = heisenberg_group(3).unwrap();
    expect(g3.order() == 27, "G_3 has order 27");
    expect(!g3.is_abelian(), "G_3 is non-abelian");
    expect(g3.exponent() == 3, "G_3 has exponent 3");
    let f = flat_extension(&g3);
    expect(
        member_of(&f, &VarietySpec::m(4).unwrap()),
        "flat(G_3) is in M_4",
    );
    expect(
        naive_si_simple(&f).1,
        "flat(G_3) is congruence simple (oracle)",
    );
    expect(
        is_congruence_simple(&f).unwrap(),
        "flat(G_3) is congruence simple",
    );

    let q8 = quaternion_group();
    expect(q8.order() == 8, "Q_8 has order 8");
    expect(q8.exponent() == 4, "Q_8 has exponent 4");
    let sylow = sylow_abelian_report(&q8).unwrap();
    expect(
        sylow.entries.len() == 1 && sylow.entries[0].prime == 2 && sylow.entries[0].order == 8,
        "the Sylow 2-subgroup of Q_8 is Q_8",
    );
    expect(
        sylow.entries.iter().any(|e| !e.abelian),
        "Q_8 has a non-abelian Sylow 2-subgroup",
    );
    let f = flat_extension(&q8);
    expect(
        member_of(&f, &VarietySpec::m(5).unwrap()),
        "flat(Q_8) is in M_5",
    );
    expect(
        naive_si_simple(&f).1,
        "flat(Q_8) is congruence simple (oracle)",
    );
    expect(
        is_congruence_simple(&f).unwrap(),
        "flat(Q_8) is congruence simple",
    );
    summarize(failures, "G_3 and Q_8 facts".to_string())
}

fn criterion_8() -> Result<String, String> {
    let mut pool: Vec<(String, FiniteSemiring)> = Vec::new();
    for expr in [
        "flat(zn:2)",
        "flat(zn:4)",
        "flat(q8)",
        "flat(gp:3)",
        "prod(flat(zn:2),flat(zn:3))",
        "prod(flat(zn:2),flat(prod(zn:2,zn:2)))",
        "prod(flat(zn:3),flat(zn:4))",
    ] {
        let AlgebraFile::Semiring(s) = build(expr).unwrap() else {
            unreachable!()
        };
        pool.push((expr.to_string(), s));
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    for trial in 0..20 {
        let (label, s) = &pool[trial % pool.len()];
        let size = rng.gen_range(1..=3);
        let gens: Vec<Elem> = (0..size).map(|_| rng.gen_range(0..s.order())).collect();
        let seed: BTreeSet<Elem> = gens.iter().copied().collect();
        let semigroup = naive_closure(&seed, |a, b| vec![s.mul(a, b)]);
        let semiring = naive_closure(&seed, |a, b| vec![s.mul(a, b), s.add(a, b)]);
        let sums = naive_closure(&semigroup, |a, b| vec![s.add(a, b)]);
        if semiring != sums {
            failures.push(format!(
                "{label} {gens:?}: <A> differs from sums over <A>_s"
            ));
        }
        if semiring.len() as f64 > 2f64.powi(semigroup.len() as i32) {
            failures.push(format!("{label} {gens:?}: bound fails"));
        }
        match generated_subalgebras(s, &gens) {
            Ok(c) if c.semigroup_closure == semigroup && c.semiring_closure == semiring => {}
            Ok(_) => failures.push(format!("{label} {gens:?}: library closures differ")),
            Err(e) => failures.push(format!("{label} {gens:?}: {e}")),
        }
    }
    summarize(failures, "20 generator sets".to_string())
}

fn criterion_9(m: &[Case], sr: &[Case]) -> Result<String, String> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (case, in_m) in m
        .iter()
        .map(|c| (c, true))
        .chain(sr.iter().map(|c| (c, false)))
    {
        let s = &case.subject.semiring;
        let in_m = in_m || member_of(s, &VarietySpec::m(case.n).unwrap());
        let green = green_relations(s);
        let left: Vec<_> = s.elements().map(|a| principal_left(s, a)).collect();
        let right: Vec<_> = s.elements().map(|a| principal_right(s, a)).collect();
        checked += 1;
        for a in s.elements() {
            for b in s.elements() {
                let h = left[a] == left[b] && right[a] == right[b];
                let d = s
                    .elements()
                    .any(|c| left[a] == left[c] && right[c] == right[b]);
                let powers = pow(s, a, case.n - 1) == pow(s, b, case.n - 1);
                if h != powers || green.h.related(a, b) != h || green.d.related(a, b) != d {
                    failures.push(format!(
                        "{} (n={}): H at ({a},{b})",
                        case.subject.label, case.n
                    ));
                }
                if in_m && d != h {
                    failures.push(format!(
                        "{} (n={}): D differs from H at ({a},{b})",
                        case.subject.label, case.n
                    ));
                }
            }
        }
    }
    summarize(failures, format!("{checked} members"))
}

fn summarize(failures: Vec<String>, scope: String) -> Result<String, String> {
    if failures.is_empty() {
        Ok(scope)
    } else {
        let shown: Vec<&String> = failures.iter().take(5).collect();
        Err(format!(
            "{} violations over {scope}; first: {shown:?}",
            failures.len()
        ))
    }
}

fn main() -> ExitCode {
    let m = m_cases();
    let sr = sr_cases();
    let results = [
        criterion_1(&m),
        criterion_2(&m),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(&m),
        criterion_7(),
        criterion_8(),
        criterion_9(&m, &sr),
    ];
    let mut all = true;
    for (i, r) in results.iter().enumerate() {
        match r {
            Ok(scope) => println!("criterion {}: PASS ({scope})", i + 1),
            Err(why) => {
                all = false;
                println!("criterion {}: FAIL ({why})", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
