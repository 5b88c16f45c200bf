//! Acceptance run: one line per criterion, non-zero exit if any fails.
//! Runs without the libtest harness so the lines always reach stdout.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rlwb::amalgamation::{
    bounded_amalgam_search, bounded_one_amalgam_search, builtin_formation, check_obstruction, find_obstruction,
    injectivity_reduction, ObstructionOutcome, SearchOptions, Side, VFormation,
};
use rlwb::constructions::{
    generalized_rotation, godel, lukasiewicz, ordinal_sum, partial_gluing, two, validate_triple, vs_a, vs_b, vs_c,
    vs_k_triple, Nucleus,
};
use rlwb::doc::tables_json;
use rlwb::enumeration::{enumerate_chains, ChainFlags};
use rlwb::{
    check_identity, congruence_filters, congruence_to_filter, filter_to_congruence, parse_identity, AlgebraParts,
    FiniteRL, IdentityVerdict, Order, Property, Result, Table,
};

const SECOND: Duration = Duration::from_secs(1);
const MINUTE: Duration = Duration::from_secs(60);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { ok, detail: detail.into() })
}

fn run(n: usize, limit: Option<Duration>, f: impl FnOnce() -> Result<Outcome>) -> bool {
    let start = Instant::now();
    let r = f();
    let took = start.elapsed();
    let (ok, detail) = match r {
        Ok(o) => (o.ok, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    let in_time = limit.is_none_or(|l| took <= l);
    let limit_s = limit.map(|l| format!(" (limit {:.0?})", l)).unwrap_or_default();
    let pass = ok && in_time;
    let mark = if pass { "PASS" } else { "FAIL" };
    println!("criterion {n}: {mark} [{took:.2?}{limit_s}] {detail}");
    pass
}

fn holds(a: &FiniteRL, id: &str) -> Result<bool> {
    Ok(check_identity(a, &parse_identity(id)?)?.holds())
}

fn el(a: &FiniteRL, l: &str) -> usize {
    a.element(l).unwrap_or_else(|| panic!("{} has no element {l}", a.name()))
}

fn criterion_1() -> Result<Outcome> {
    let (a, b, c) = (vs_a(), vs_b(), vs_c());
    let props = [Property::Chain, Property::Commutative, Property::Integral];
    let valid = [&a, &b, &c].iter().all(|x| x.validate_rl().passed() && x.validate(&props).passed());
    let (bu, bb, bv) = (el(&b, "u"), el(&b, "b"), el(&b, "v"));
    let (cu, cd, cc, cv) = (el(&c, "u"), el(&c, "d"), el(&c, "c"), el(&c, "v"));
    let facts = [
        ("b = vb", b.mul(bv, bb) == bb),
        ("b = b\\u", b.under(bb, bu) == bb),
        ("b = v\\b", b.under(bv, bb) == bb),
        ("u = b²", b.mul(bb, bb) == bu),
        ("c = c\\u", c.under(cc, cu) == cc),
        ("c = v\\c", c.under(cv, cc) == cc),
        ("c = v\\d", c.under(cv, cd) == cc),
        ("d = vc", c.mul(cv, cc) == cd),
        ("d = vd", c.mul(cv, cd) == cd),
        ("u = c²", c.mul(cc, cc) == cu),
    ];
    let bad: Vec<&str> = facts.iter().filter(|f| !f.1).map(|f| f.0).collect();
    outcome(valid && bad.is_empty(), format!("VS.A/B/C valid chains; {} table annotations hold; failing: {bad:?}", facts.len()))
}

fn criterion_2() -> Result<Outcome> {
    let t = vs_k_triple();
    let good = validate_triple(&t)?;
    let mut m = t.clone();
    let c = m.k.labels().iter().position(|l| l == "c").expect("K has c");
    m.sigma[c] = c;
    let broken = match validate_triple(&m) {
        Ok(r) => r.first_failure().map(|f| f.name.clone()),
        Err(e) => Some(e.to_string()),
    };
    outcome(
        good.passed() && broken.is_some(),
        format!("{} clauses pass; with σ(c) = c the first failure is {:?}", good.checks.len(), broken.unwrap_or_default()),
    )
}

fn criterion_3() -> Result<Outcome> {
    let sum = tables_json(&ordinal_sum(&lukasiewicz(3), &two())?) == tables_json(&vs_b());
    let glue = tables_json(&partial_gluing(&vs_k_triple(), &two())?) == tables_json(&vs_c());
    outcome(sum && glue, format!("Ł3 ⊕ 2 = VS.B: {sum}; K ⊕ 2 = VS.C: {glue}"))
}

fn witness_labels(vf: &VFormation, w: &rlwb::amalgamation::ObstructionWitness) -> [String; 5] {
    [vf.a.label(w.a), vf.b.label(w.b), vf.c.label(w.c), vf.a.label(w.u1), vf.a.label(w.u2)].map(String::from)
}

/// Witness, its certified trace, and an UNSAT amalgam search at every bound.
fn obstruction_and_searches(vf: &VFormation, bounds: std::ops::RangeInclusive<usize>) -> Result<(bool, String)> {
    let Some(w) = find_obstruction(vf)? else { return Ok((false, "no witness".into())) };
    let labels = witness_labels(vf, &w);
    let trace = match check_obstruction(vf, &w)? {
        ObstructionOutcome::Trace(t) => t,
        ObstructionOutcome::Reject { clause, detail } => return Ok((false, format!("rejected at {clause}: {detail}"))),
    };
    let contradictions = trace.iter().filter(|l| l.contains("by residuation") && l.contains("contradicting")).count();
    let mut unsat = vec![];
    for bound in bounds {
        let r = bounded_amalgam_search(vf, &SearchOptions::new(bound))?;
        if r.found() {
            return Ok((false, format!("amalgam found at bound {bound}")));
        }
        unsat.push(bound);
    }
    let ok = labels == ["v", "b", "c", "u", "u"] && w.side == Side::Left && contradictions == 2;
    Ok((ok, format!("witness {labels:?}, {contradictions} residuation contradictions, UNSAT at bounds {unsat:?}")))
}

fn criterion_4() -> Result<Outcome> {
    let (ok, detail) = obstruction_and_searches(&builtin_formation("VS")?, 6..=9)?;
    outcome(ok, detail)
}

fn criterion_5() -> Result<Outcome> {
    let vf = builtin_formation("VS")?;
    let fil: Vec<Vec<&str>> =
        congruence_filters(&vf.b).iter().map(|f| f.members.iter().map(|&x| vf.b.label(x)).collect()).collect();
    let inj: Vec<&str> = injectivity_reduction(&vf).iter().map(|&a| vf.a.label(a)).collect();
    let r = bounded_one_amalgam_search(&vf, &SearchOptions::new(9))?;
    let ok = fil == [vec!["1"], vec!["v", "1"], vec!["u", "b", "v", "1"]] && inj.contains(&"v") && !r.found();
    outcome(ok, format!("Fil(B) = {fil:?}; injectivity forced by {inj:?}; one-amalgam UNSAT at bound 9: {}", !r.found()))
}

fn criterion_6() -> Result<Outcome> {
    let plain = builtin_formation("VS")?;
    let vf = builtin_formation("VS.pointed")?;
    let zero_is_u = [&vf.a, &vf.b, &vf.c].iter().all(|x| x.zero().map(|z| x.label(z)) == Some("u"));
    let (ok, detail) = obstruction_and_searches(&vf, 6..=9)?;
    let same = find_obstruction(&vf)? == find_obstruction(&plain)?;
    let one = !bounded_one_amalgam_search(&vf, &SearchOptions::new(9))?.found();
    outcome(zero_is_u && ok && same && one, format!("0 = u; same witness: {same}; {detail}; one-amalgam UNSAT: {one}"))
}

fn criterion_7() -> Result<Outcome> {
    let mut ok = true;
    let mut parts = vec![];
    for (delta, law) in [("identity", "inv"), ("const-1", "stone")] {
        let vf = builtin_formation(&format!("VS^{delta}:2"))?;
        let mut laws = true;
        for x in [&vf.a, &vf.b, &vf.c] {
            laws &= x.validate(&Property::ALL).passed() && holds(x, law)?;
        }
        let certified = match find_obstruction(&vf)? {
            Some(w) => check_obstruction(&vf, &w)?.is_certified(),
            None => false,
        };
        let opts = SearchOptions::new(8);
        let a = !bounded_amalgam_search(&vf, &opts)?.found();
        let o = !bounded_one_amalgam_search(&vf, &opts)?.found();
        ok &= laws && certified && a && o;
        parts.push(format!("{delta}: {law} {laws}, certificate {certified}, amalgam UNSAT {a}, one-amalgam UNSAT {o}"));
    }
    let mut lifting = true;
    for x in [vs_a(), vs_b(), vs_c()] {
        let lift = generalized_rotation(&x, &Nucleus::constant_one(&x), 2)?;
        lifting &= lift.reduct_tables_eq(&ordinal_sum(&two(), &x)?);
    }
    parts.push(format!("lifting = 2 ⊕ X: {lifting}"));
    outcome(ok && lifting, parts.join("; "))
}

fn criterion_8() -> Result<Outcome> {
    let mut names = vec![];
    let mut ok = true;
    for f in ["VS", "VS^identity:2", "VS^const-1:2"] {
        let vf = builtin_formation(f)?;
        for (s, x) in [("A", &vf.a), ("B", &vf.b), ("C", &vf.c)] {
            ok &= holds(x, "x * x = x * x * x")?;
            names.push(format!("{f}.{s}"));
        }
    }
    outcome(ok, format!("x² = x³ holds on {}", names.join(", ")))
}

fn criterion_9() -> Result<Outcome> {
    let (b, c) = (vs_b(), vs_c());
    let b_div = holds(&b, "div")?;
    let ok = match check_identity(&c, &parse_identity("div")?)? {
        IdentityVerdict::Fails(w) => {
            let w: Vec<(String, &str)> = w.into_iter().map(|(v, x)| (v, c.label(x))).collect();
            let least = w == [("x".to_string(), "v"), ("y".to_string(), "c")];
            return outcome(b_div && least, format!("VS.B divisible: {b_div}; VS.C fails at {w:?}"));
        }
        IdentityVerdict::Holds => false,
    };
    outcome(ok, "VS.C unexpectedly divisible")
}

// ---- criterion 10: exhaustive versions of the property suites ----

fn corpus() -> Result<Vec<FiniteRL>> {
    let mut v = vec![two(), lukasiewicz(4), godel(4), vs_a(), vs_b(), vs_c()];
    for n in 1..=4 {
        v.extend(enumerate_chains(n, ChainFlags::default())?);
    }
    for f in ["VS^identity:2", "VS^const-1:2", "VS^identity:3"] {
        let vf = builtin_formation(f)?;
        v.extend([vf.a, vf.b, vf.c]);
    }
    Ok(v)
}

fn residuation_failures(a: &FiniteRL) -> usize {
    let mut bad = 0;
    for x in a.elements() {
        for y in a.elements() {
            for z in a.elements() {
                let p = a.leq(a.mul(x, y), z);
                bad += usize::from(p != a.leq(y, a.under(x, z)) || p != a.leq(x, a.over(z, y)));
            }
        }
    }
    bad
}

fn filter_round_trip_failures(a: &FiniteRL) -> Result<usize> {
    let mut bad = 0;
    for f in congruence_filters(a) {
        bad += usize::from(congruence_to_filter(a, &filter_to_congruence(a, &f))? != f);
    }
    Ok(bad)
}

/// Brute-force chain tables (unit row and column fixed) that validate.
fn naive_count(n: usize, integral: bool, commutative: bool) -> usize {
    let units: Vec<usize> = if integral { vec![n - 1] } else { (0..n).collect() };
    let mut props = vec![Property::Lattice, Property::Monoid, Property::Residuation];
    if integral {
        props.push(Property::Integral);
    }
    if commutative {
        props.push(Property::Commutative);
    }
    let mut count = 0;
    for unit in units {
        let free: Vec<usize> = (0..n * n).filter(|&c| c / n != unit && c % n != unit).collect();
        for code in 0..n.pow(free.len() as u32) {
            let mut cells: Vec<usize> = (0..n * n).map(|c| if c / n == unit { c % n } else { c / n }).collect();
            let mut k = code;
            for &c in &free {
                cells[c] = k % n;
                k /= n;
            }
            let parts = AlgebraParts {
                name: "naive".into(),
                labels: (0..n).map(|i| i.to_string()).collect(),
                order: Order::Chain,
                unit,
                product: Table::from_cells(n, cells),
                ldiv: None,
                rdiv: None,
                zero: None,
            };
            if FiniteRL::from_parts(parts).is_ok_and(|a| a.validate(&props).passed()) {
                count += 1;
            }
        }
    }
    count
}

fn criterion_10() -> Result<Outcome> {
    let corpus = corpus()?;
    let residuation: usize = corpus.iter().map(residuation_failures).sum();
    let mut filters = 0;
    for a in &corpus {
        filters += filter_round_trip_failures(a)?;
    }

    let mut enumeration = 0;
    for n in 1..=4 {
        for (integral, commutative) in [(false, false), (true, false), (false, true), (true, true)] {
            let flags = ChainFlags { integral, commutative, ..Default::default() };
            enumeration += usize::from(enumerate_chains(n, flags)?.len() != naive_count(n, integral, commutative));
        }
    }

    let chains: Vec<FiniteRL> = corpus
        .iter()
        .filter(|a| a.is_integral() && a.is_commutative() && a.zero().is_none() && a.size() <= 4)
        .cloned()
        .collect();
    let mut assoc = 0;
    for x in &chains {
        for y in &chains {
            let xy = ordinal_sum(x, y)?;
            for z in &chains {
                let l = ordinal_sum(&xy, z)?;
                let r = ordinal_sum(x, &ordinal_sum(y, z)?)?;
                assoc += usize::from(!l.tables_eq(&r));
            }
        }
    }

    let mut rotation = 0;
    let mut rotations = 0;
    for a in &chains {
        for d in [Nucleus::identity(a), Nucleus::constant_one(a)] {
            for n in 2..=5 {
                let r = generalized_rotation(a, &d, n)?;
                let closed = a.elements().filter(|&x| d.is_closed(x)).count();
                rotation += usize::from(r.size() != a.size() + closed + n - 2 || !r.validate(&Property::ALL).passed());
                rotations += 1;
            }
        }
    }

    let total = residuation + filters + enumeration + assoc + rotation;
    outcome(
        total == 0,
        format!(
            "failures: residuation {residuation} / filter↔congruence {filters} over {} algebras; enumeration vs brute force {enumeration} (n ≤ 4); sum associativity {assoc} over {} triples; rotation size {rotation} over {rotations} rotations",
            corpus.len(),
            chains.len().pow(3)
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let results = [
        run(1, Some(SECOND), criterion_1),
        run(2, Some(SECOND), criterion_2),
        run(3, Some(SECOND), criterion_3),
        run(4, Some(5 * MINUTE), criterion_4),
        run(5, Some(10 * MINUTE), criterion_5),
        run(6, None, criterion_6),
        run(7, Some(15 * MINUTE), criterion_7),
        run(8, None, criterion_8),
        run(9, None, criterion_9),
        run(10, Some(10 * MINUTE), criterion_10),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed in {:.2?}", results.len(), start.elapsed());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
