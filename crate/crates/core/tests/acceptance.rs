//! Acceptance suite. Runs every criterion in order, prints one PASS/FAIL line
//! for each, and exits non-zero if any failed.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use perfcode::components::{component_basis, line_closure_holds, ComponentCache, PairSpan};
use perfcode::family::{
    build_family, check_admissible, check_representatives, default_choice, entries_disjoint, switch, validate_lambda,
    Flavor, LambdaCode, SwitchFamily,
};
use perfcode::fqlin::Subspace;
use perfcode::io::{parse_family_file, render_family_file};
use perfcode::verify::{
    bijection_audit, cosets_disjoint, embedding_check, is_perfect, min_distance, min_distance_pairwise,
    sphere_packing_ok, Mode, PerfectCodeOracle,
};
use perfcode::{Error, FqVector, HammingCode};

/// Sampled perfectness checks draw this many vectors.
const PERFECT_SAMPLES: u64 = 100_000;
/// Sampled bijection audits draw this many codewords.
const AUDIT_SAMPLES: u64 = 100_000;
/// Random elements per subspace in the closure suite.
const CLOSURE_SAMPLES: usize = 1000;
const CLOSURE_PAIRS: usize = 20;
/// Random valid ternary lambda sets in the admissibility cross-check.
const RANDOM_LAMBDAS: usize = 50;
const SEED: u64 = 0;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cap() -> u64 {
    perfcode::cap_from_env().expect("PERFCODE_CAP must parse")
}

fn lambda(q: u32, flavor: Flavor, words: &[&str]) -> LambdaCode {
    let code_field = perfcode::gf::field(q).unwrap();
    LambdaCode::parse_vectors(&code_field, flavor, words).unwrap()
}

fn hamming_baseline() -> Check {
    let mut notes = Vec::new();
    for (q, m, n, size) in [(2u32, 4usize, 15usize, 2048u128), (2, 3, 7, 16), (3, 3, 13, 59049)] {
        let code = HammingCode::build(q, m).map_err(|e| e.to_string())?;
        ensure(code.n() == n, || format!("q={q} m={m}: n = {}", code.n()))?;
        ensure(code.size() == size, || format!("q={q} m={m}: size = {}", code.size()))?;
        let oracle = PerfectCodeOracle::hamming(&code);
        let d = min_distance(&oracle, cap()).map_err(|e| e.to_string())?;
        ensure(d == 3, || format!("q={q} m={m}: min distance {d}"))?;
        // pairwise comparison as a second route for the small codes
        if size <= 2048 {
            let words = oracle.members(cap()).map_err(|e| e.to_string())?;
            ensure(words.len() as u128 == size, || "enumerated size differs".into())?;
            let pd = min_distance_pairwise(&words);
            ensure(pd == Some(3), || format!("pairwise min distance {pd:?}"))?;
        }
        let r = is_perfect(&oracle, Mode::Exhaustive, cap()).map_err(|e| e.to_string())?;
        ensure(r.passed, || r.to_string())?;
        let scanned = (q as u128).pow(n as u32);
        ensure(r.checked == scanned, || format!("scanned {} of {scanned}", r.checked))?;
        notes.push(format!("({q},{m}) {}ms", r.elapsed.as_millis()));
    }
    Ok(notes.join(", "))
}

/// Weight-3 vectors with digit 1 at `i` whose syndrome against H is zero,
/// found by scanning every such vector.
fn brute_force_triples(code: &HammingCode, i: usize) -> Vec<FqVector> {
    let f = code.field();
    let n = code.n();
    let h = code.parity_check();
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            if a == i || b == i {
                continue;
            }
            for x in f.nonzero() {
                for y in f.nonzero() {
                    let mut v = FqVector::zeros(f, n);
                    v.set(i - 1, 1);
                    v.set(a - 1, x);
                    v.set(b - 1, y);
                    if h.mul_vec(&v).unwrap().is_zero() {
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}

fn pencil_equals_triple_span() -> Check {
    let mut dims = Vec::new();
    for (q, m) in [(2u32, 3usize), (3, 3), (2, 4)] {
        let code = HammingCode::build(q, m).unwrap();
        let mut seen_dims = std::collections::BTreeSet::new();
        for i in code.points() {
            let comp = component_basis(&code, i);
            let triples = brute_force_triples(&code, i.get());
            ensure(!triples.is_empty(), || format!("no triples at n={} i={i}", code.n()))?;
            let span = Subspace::span(code.field(), code.n(), triples.iter()).unwrap();
            ensure(span == *comp.space(), || {
                format!("n={} i={i}: pencil basis differs from triple span", code.n())
            })?;
            seen_dims.insert(comp.dim());
        }
        dims.push(format!("n={} dim {:?}", code.n(), seen_dims));
    }
    Ok(dims.join(", "))
}

fn closure_properties() -> Check {
    let code = HammingCode::build(2, 4).unwrap();
    let cache = ComponentCache::new(&code);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let points: Vec<_> = code.points().collect();
    for _ in 0..CLOSURE_SAMPLES {
        let i = *points.choose(&mut rng).unwrap();
        let comp = cache.component(i);
        let u = comp.space().random_element(&mut rng);
        let c = line_closure_holds(&comp, &u).map_err(|e| e.to_string())?;
        ensure(c.holds(), || format!("line closure fails at R_{i} for {u}: {c:?}"))?;
    }
    for _ in 0..CLOSURE_PAIRS {
        let pair: Vec<_> = points.choose_multiple(&mut rng, 2).copied().collect();
        let (i, j) = (pair[0], pair[1]);
        let span = PairSpan::new(&cache.component(i), &cache.component(j)).map_err(|e| e.to_string())?;
        for _ in 0..CLOSURE_SAMPLES {
            let u = span.space().random_element(&mut rng);
            let c = span.plane_closure_holds(&u).map_err(|e| e.to_string())?;
            ensure(c.holds(), || {
                format!("plane closure fails at R_{i}+R_{j} for {u}: {c:?}")
            })?;
        }
    }
    Ok(format!(
        "{CLOSURE_SAMPLES} elements of R_i, {CLOSURE_PAIRS} pairs x {CLOSURE_SAMPLES} elements of R_i+R_j"
    ))
}

fn exhaustive_pairs_agree(fam: &SwitchFamily) -> Result<usize, String> {
    let entries = fam.entries();
    let mut pairs = 0;
    for r in 0..entries.len() {
        for s in r + 1..entries.len() {
            let fast = entries_disjoint(fam, r, s);
            let slow = cosets_disjoint(&entries[r].component, &entries[s].component, Mode::Exhaustive, cap())
                .map_err(|e| e.to_string())?;
            ensure(fast == slow.passed, || {
                format!(
                    "entries {} and {}: fast {fast}, exhaustive {}",
                    r + 1,
                    s + 1,
                    slow.passed
                )
            })?;
            pairs += 1;
        }
    }
    Ok(pairs)
}

fn ternary_end_to_end() -> Check {
    let start = Instant::now();
    let code = HammingCode::build(3, 3).unwrap();
    let lam = lambda(3, Flavor::Ternary, &["111", "222"]);
    let report = validate_lambda(&lam);
    ensure(report.is_ok(), || report.to_string())?;
    let choice = default_choice(&code, 0).unwrap();
    let fam = build_family(&code, &choice, &lam, false).map_err(|e| e.to_string())?;
    ensure(fam.t() == 2, || format!("t = {}", fam.t()))?;
    let anchors: Vec<_> = fam.entries().iter().map(|e| e.anchor).collect();
    ensure(anchors[0] == anchors[1], || format!("anchors differ: {anchors:?}"))?;
    check_admissible(&fam).map_err(|e| e.to_string())?;
    let slow = cosets_disjoint(
        &fam.entries()[0].component,
        &fam.entries()[1].component,
        Mode::Exhaustive,
        cap(),
    )
    .map_err(|e| e.to_string())?;
    ensure(slow.passed, || slow.to_string())?;

    let t = switch(&fam).map_err(|e| e.to_string())?;
    ensure(t.contains(&FqVector::zeros(code.field(), 13)), || {
        "T misses the zero word".into()
    })?;
    let oracle = PerfectCodeOracle::switched(t);
    let perfect = is_perfect(&oracle, Mode::Exhaustive, cap()).map_err(|e| e.to_string())?;
    ensure(perfect.passed, || perfect.to_string())?;
    ensure(perfect.checked == 3u128.pow(13), || "not every vector scanned".into())?;

    let strong = embedding_check(&lam, &choice, &oracle, true, cap()).map_err(|e| e.to_string())?;
    ensure(strong.passed, || strong.to_string())?;
    ensure(strong.checked == 2 + 1 + 27, || {
        format!("strong check examined {}", strong.checked)
    })?;
    Ok(format!("anchor {}, {}s", anchors[0], start.elapsed().as_secs()))
}

fn binary_general_end_to_end() -> Check {
    let code = HammingCode::build(2, 5).unwrap();
    let lam = lambda(2, Flavor::General, &["11111"]);
    let report = validate_lambda(&lam);
    ensure(report.is_ok(), || report.to_string())?;
    let choice = default_choice(&code, 0).unwrap();
    let fam = build_family(&code, &choice, &lam, false).map_err(|e| e.to_string())?;
    check_representatives(&fam).map_err(|e| e.to_string())?;
    check_admissible(&fam).map_err(|e| e.to_string())?;

    let t = switch(&fam).map_err(|e| e.to_string())?;
    ensure(t.contains(&FqVector::zeros(code.field(), 31)), || {
        "T misses the zero word".into()
    })?;
    let audit = bijection_audit(&t, SEED, AUDIT_SAMPLES);
    ensure(audit.passed, || audit.to_string())?;
    let oracle = PerfectCodeOracle::switched(t);
    let perfect = is_perfect(
        &oracle,
        Mode::Sampled {
            seed: SEED,
            samples: PERFECT_SAMPLES,
        },
        cap(),
    )
    .map_err(|e| e.to_string())?;
    ensure(perfect.passed, || perfect.to_string())?;

    let packing = if oracle.size() <= cap() as u128 {
        let ok = sphere_packing_ok(&oracle, cap()).map_err(|e| e.to_string())?;
        ensure(ok, || "enumerated size times ball volume differs from 2^31".into())?;
        "sphere packing by enumeration of 2^26 words"
    } else {
        "sphere packing by bijection audit (cap below 2^26)"
    };

    for strong in [false, true] {
        let r = embedding_check(&lam, &choice, &oracle, strong, cap()).map_err(|e| e.to_string())?;
        ensure(r.passed, || r.to_string())?;
    }
    Ok(packing.into())
}

fn binary_extended_end_to_end() -> Check {
    let code = HammingCode::build(2, 5).unwrap();
    let lam = lambda(2, Flavor::BinaryExtended { k: 1 }, &["111111"]);
    let report = validate_lambda(&lam);
    ensure(report.is_ok(), || report.to_string())?;
    let choice = default_choice(&code, 1).unwrap();
    let fam = build_family(&code, &choice, &lam, false).map_err(|e| e.to_string())?;
    let anchor = fam.entries()[0].anchor;
    ensure(!choice.contains(anchor), || {
        format!("anchor {anchor} is a chosen column")
    })?;
    check_admissible(&fam).map_err(|e| e.to_string())?;

    let t = switch(&fam).map_err(|e| e.to_string())?;
    let oracle = PerfectCodeOracle::switched(t);
    let perfect = is_perfect(
        &oracle,
        Mode::Sampled {
            seed: SEED,
            samples: PERFECT_SAMPLES,
        },
        cap(),
    )
    .map_err(|e| e.to_string())?;
    ensure(perfect.passed, || perfect.to_string())?;
    let weak = embedding_check(&lam, &choice, &oracle, false, cap()).map_err(|e| e.to_string())?;
    ensure(weak.passed, || weak.to_string())?;
    let strong = embedding_check(&lam, &choice, &oracle, true, cap()).map_err(|e| e.to_string())?;
    Ok(format!("anchor {anchor}; strong converse (informational): {strong}"))
}

fn negative_controls() -> Check {
    // (a) one codeword removed from the Hamming code of length 15
    let code = HammingCode::build(2, 4).unwrap();
    let mut words: Vec<FqVector> = code.enumerate(cap()).unwrap().collect();
    let removed = words.remove(1000);
    let oracle = PerfectCodeOracle::explicit(code.field(), 15, words).unwrap();
    let r = is_perfect(&oracle, Mode::Exhaustive, cap()).map_err(|e| e.to_string())?;
    ensure(!r.passed, || "deleted codeword went unnoticed".into())?;
    let counter = r.counterexample.clone().ok_or("no counterexample")?;
    let x = FqVector::parse(code.field(), &counter[..15]).map_err(|e| e.to_string())?;
    ensure(x.distance(&removed).unwrap() <= 1, || {
        format!("counterexample {counter} is not near {removed}")
    })?;

    // (b) a family file with one entry listed twice
    let ternary = HammingCode::build(3, 3).unwrap();
    let lam = lambda(3, Flavor::Ternary, &["111", "222"]);
    let fam = build_family(&ternary, &default_choice(&ternary, 0).unwrap(), &lam, false).unwrap();
    let text = render_family_file(&fam);
    let last = text.lines().last().unwrap();
    let edited = text.replacen("3 3 13 2 0", "3 3 13 3 0", 1) + last + "\n";
    let dup = parse_family_file(&edited).map_err(|e| e.to_string())?;
    let verdict = check_admissible(&dup);
    ensure(verdict == Err(Error::NotAdmissible(2, 3)), || {
        format!("duplicated entry: {verdict:?}")
    })?;
    ensure(switch(&dup).is_err(), || {
        "switch accepted an inadmissible family".into()
    })?;

    // (c) a word below the weight bound
    let bad = lambda(3, Flavor::Ternary, &["110", "222"]);
    let report = validate_lambda(&bad);
    ensure(!report.is_ok(), || "weight-2 word accepted".into())?;
    ensure(report.to_string().contains("110"), || {
        format!("report does not name the word: {report}")
    })?;
    let built = build_family(&ternary, &default_choice(&ternary, 0).unwrap(), &bad, false);
    ensure(
        matches!(&built, Err(Error::InvalidLambda(m)) if m.contains("110")),
        || format!("build accepted the weight-2 word: {:?}", built.as_ref().err()),
    )?;
    Ok(format!("counterexample {counter}"))
}

fn random_valid_ternary_lambda(rng: &mut ChaCha8Rng) -> LambdaCode {
    let f3 = perfcode::gf::field(3).unwrap();
    loop {
        let t = rng.gen_range(0..=3);
        let words = (0..t)
            .map(|_| FqVector::from_digits(&f3, (0..3).map(|_| rng.gen_range(1..3)).collect()).unwrap())
            .collect();
        let lam = LambdaCode::new(&f3, 3, words, Flavor::Ternary).unwrap();
        if validate_lambda(&lam).is_ok() {
            return lam;
        }
    }
}

fn admissibility_cross_check() -> Check {
    let code = HammingCode::build(3, 3).unwrap();
    let choice = default_choice(&code, 0).unwrap();
    let mut pairs = 0;

    let lam = lambda(3, Flavor::Ternary, &["111", "222"]);
    pairs += exhaustive_pairs_agree(&build_family(&code, &choice, &lam, false).unwrap())?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_LAMBDAS {
        let lam = random_valid_ternary_lambda(&mut rng);
        let fam = build_family(&code, &choice, &lam, false).map_err(|e| e.to_string())?;
        pairs += exhaustive_pairs_agree(&fam)?;
        check_admissible(&fam).map_err(|e| format!("valid lambda {lam:?}: {e}"))?;
    }

    // forced families of arbitrary words, so both verdicts occur
    let f3 = code.field().clone();
    let mut intersecting = 0;
    let mut forced = 0;
    while forced < RANDOM_LAMBDAS {
        let words: Vec<FqVector> = (0..rng.gen_range(2..=4))
            .map(|_| FqVector::random(&f3, 3, &mut rng))
            .collect();
        let lam = LambdaCode::new(&f3, 3, words, Flavor::Ternary).unwrap();
        let Ok(fam) = build_family(&code, &choice, &lam, true) else {
            continue;
        };
        forced += 1;
        pairs += exhaustive_pairs_agree(&fam)?;
        if check_admissible(&fam).is_err() {
            intersecting += 1;
        }
    }
    ensure(intersecting > 0, || "forced families never intersected".into())?;
    Ok(format!(
        "{pairs} pairs agree, {intersecting} of {forced} forced families inadmissible"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 hamming baseline", hamming_baseline),
        ("2 pencil basis equals triple span", pencil_equals_triple_span),
        ("3 line and plane closure", closure_properties),
        ("4 ternary end to end", ternary_end_to_end),
        ("5 binary general end to end", binary_general_end_to_end),
        ("6 binary extended end to end", binary_extended_end_to_end),
        ("7 negative controls", negative_controls),
        ("8 admissibility cross-check", admissibility_cross_check),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({secs:.1}s) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({secs:.1}s) {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
