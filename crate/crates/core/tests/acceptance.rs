//! Acceptance criteria. Prints one PASS/FAIL line per criterion, followed by
//! indented details, and exits nonzero if any criterion fails.

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

use weylcheck::biproduct::{classical_rules, quantum_rules, RewriteSystem, Strategy as Redex};
use weylcheck::cartan::{catalog, CartanAux, CartanMatrix, FINITE_TYPE};
use weylcheck::datum::{
    build_omega, build_quantum_datum, check_bound_classical, check_bound_quantum, ClassicalDatum,
    QuantumDatum,
};
use weylcheck::exact::{Field, QScalar, Rational};
use weylcheck::morphisms::{
    check_relations, quantum_borel_assignment, verify_classical_borel, verify_quantum_borel,
    verify_quantum_weyl, verify_weyl_embedding, MorphismReport, RelationKind,
};
use weylcheck::ncpoly::{NCPoly, Word};
use weylcheck::report::Entry;

const AFFINE: &str = "A1^(1)";

struct Outcome {
    details: Vec<String>,
    pass: bool,
}

impl Outcome {
    fn new() -> Self {
        Outcome { details: Vec::new(), pass: true }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.details.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(what.into());
    }

    fn error(&mut self, ctx: &str, e: impl std::fmt::Display) {
        self.pass = false;
        self.details.push(format!("{ctx}: error: {e}"));
    }
}

fn cartan(name: &str) -> (CartanMatrix, CartanAux) {
    let c = catalog(name).expect("catalog entry");
    let aux = CartanAux::derive(&c).expect("auxiliary data");
    (c, aux)
}

fn classical(name: &str) -> weylcheck::Result<ClassicalDatum> {
    let (c, aux) = cartan(name);
    ClassicalDatum::canonical(&c, &aux)
}

fn quantum(name: &str) -> weylcheck::Result<QuantumDatum> {
    let (c, aux) = cartan(name);
    build_quantum_datum(&c, &aux)
}

fn failing(entries: &[Entry]) -> Vec<&Entry> {
    entries.iter().filter(|e| !e.pass).collect()
}

fn summarize(name: &str, what: &str, entries: &[Entry]) -> String {
    let bad = failing(entries);
    let first = bad
        .first()
        .map(|e| format!("; first: {}  residual: {}", e.label, truncate(&e.residual)))
        .unwrap_or_default();
    format!("{name} {what}: {} of {} fail{first}", bad.len(), entries.len())
}

fn truncate(s: &str) -> String {
    if s.len() > 90 {
        format!("{}...", &s[..90])
    } else {
        s.to_string()
    }
}

fn morphism_ok(out: &mut Outcome, name: &str, rep: &MorphismReport) {
    out.require(
        rep.relations.iter().all(|e| e.pass),
        summarize(name, &rep.name, &rep.relations),
    );
    out.require(
        rep.witness.complete,
        format!("{name} {}: unresolved denominators {:?}", rep.name, rep.witness.unresolved),
    );
}

fn classical_borel() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    for &name in FINITE_TYPE {
        let d = match classical(name) {
            Ok(d) => d,
            Err(e) => {
                out.error(name, e);
                continue;
            }
        };
        match check_bound_classical(&d) {
            Ok(entries) => out.require(
                entries.iter().all(|e| e.pass),
                summarize(name, "binding conditions", &entries),
            ),
            Err(e) => out.error(name, e),
        }
        for upper in [true, false] {
            match verify_classical_borel(&d, upper) {
                Ok(rep) => morphism_ok(&mut out, name, &rep),
                Err(e) => out.error(name, e),
            }
        }
    }
    budget(&mut out, start.elapsed(), Duration::from_secs(60));
    out
}

fn weyl_embedding() -> Outcome {
    let mut out = Outcome::new();
    for name in FINITE_TYPE.iter().copied().chain([AFFINE]) {
        match classical(name).and_then(|d| verify_weyl_embedding(&d)) {
            Ok(rep) => {
                morphism_ok(&mut out, name, &rep);
                let affine = name == AFFINE;
                out.require(
                    rep.notes.is_empty() != affine,
                    format!("{name}: corank note present = {}", !rep.notes.is_empty()),
                );
                if affine {
                    out.require(
                        rep.relations.iter().any(|e| e.label.starts_with("[z1,")),
                        format!("{name}: no central relations checked"),
                    );
                }
            }
            Err(e) => out.error(name, e),
        }
    }
    out
}

/// Images of the root generators under the orientation chosen by the search.
fn oriented_images(
    d: &QuantumDatum,
    upper: bool,
    rep: &MorphismReport,
) -> weylcheck::Result<Vec<weylcheck::skew::SkewElem<weylcheck::exact::QuantumCoeff>>> {
    let n = d.cartan.n();
    let signs = rep
        .orientation
        .as_ref()
        .and_then(|o| o.chosen.clone())
        .unwrap_or_else(|| vec![if upper { 1 } else { -1 }; n]);
    let (_, a) = quantum_borel_assignment(d, upper, &signs)?;
    let root = if upper { "E" } else { "F" };
    (1..=n).map(|i| a.image(&format!("{root}{i}")).cloned()).collect()
}

fn quantum_borel() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    for &name in FINITE_TYPE {
        let d = match quantum(name) {
            Ok(d) => d,
            Err(e) => {
                out.error(name, e);
                continue;
            }
        };
        let mut images = Vec::new();
        for upper in [true, false] {
            let rep = match verify_quantum_borel(&d, upper) {
                Ok(rep) => rep,
                Err(e) => {
                    out.error(name, e);
                    continue;
                }
            };
            out.require(
                rep.orientation.as_ref().is_some_and(|o| o.chosen.is_some()),
                format!("{name} {}: no unique orientation", rep.name),
            );
            morphism_ok(&mut out, name, &rep);
            match oriented_images(&d, upper, &rep) {
                Ok(im) => images.push(im),
                Err(e) => out.error(name, e),
            }
        }
        if images.len() == 2 {
            match check_bound_quantum(&d, &images[0], Some(&images[1])) {
                Ok(rep) => {
                    out.require(
                        rep.scaling.iter().all(|e| e.pass),
                        summarize(name, "scaling conditions", &rep.scaling),
                    );
                    out.require(
                        rep.localized.iter().all(|e| e.pass),
                        summarize(name, "localized conditions", &rep.localized),
                    );
                }
                Err(e) => out.error(name, e),
            }
        }
    }
    budget(&mut out, start.elapsed(), Duration::from_secs(300));
    out
}

fn quantum_weyl_map() -> Outcome {
    let mut out = Outcome::new();
    for name in FINITE_TYPE.iter().copied().chain([AFFINE]) {
        let d = match quantum(name) {
            Ok(d) => d,
            Err(e) => {
                out.error(name, e);
                continue;
            }
        };
        let omega = match build_omega(&d) {
            Ok(o) => o,
            Err(e) => {
                out.error(name, e);
                continue;
            }
        };
        let table = omega.scaling.entries(false);
        out.require(
            omega.scaling.stated_holds(),
            summarize(name, "omega scaling table (exponents g_i)", &table),
        );
        match verify_quantum_weyl(&d, &omega, false) {
            Ok(rep) => morphism_ok(&mut out, name, &rep),
            Err(e) => out.error(name, e),
        }
        if !omega.scaling.stated_holds() && omega.scaling.corrected_holds() {
            out.note(format!("{name}: the table with exponents d_i g_i holds (d = {:?})", d.d));
        }
    }
    out
}

fn poly<S: Field + Send + Sync>(sys: &RewriteSystem<S>, text: &str) -> NCPoly<S> {
    NCPoly::word(sys.word(text).expect("word"))
}

/// `E_i F_j - delta_ij H_i`.
fn classical_fe_oracle(sys: &RewriteSystem<Rational>, i: usize, j: usize) -> NCPoly<Rational> {
    let ef = poly(sys, &format!("E{i}*F{j}"));
    if i == j {
        ef.minus(&poly(sys, &format!("H{i}")))
    } else {
        ef
    }
}

/// `E_i F_j - delta_ij (K_i - K_i^-1) / (q^d_i - q^-d_i)`.
fn quantum_fe_oracle(sys: &RewriteSystem<QScalar>, d: &[i64], i: usize, j: usize) -> NCPoly<QScalar> {
    let ef = poly(sys, &format!("E{i}*F{j}"));
    if i != j {
        return ef;
    }
    let k = poly(sys, &format!("K{i}")).minus(&poly(sys, &format!("K{i}^-1")));
    let di = d[i - 1];
    let denom = (QScalar::q_pow(di) - QScalar::q_pow(-di)).inv().expect("nonzero");
    ef.minus(&k.scaled(&denom))
}

fn random_inputs<S: Field + Send + Sync>(
    runner: &mut TestRunner,
    sys: &RewriteSystem<S>,
    count: usize,
) -> Vec<NCPoly<S>> {
    let letters = sys.alphabet.len() as u16;
    let strategy = prop::collection::vec(
        (prop::collection::vec(0..letters, 0..=4), -3i64..4),
        1..4,
    );
    (0..count)
        .map(|_| {
            let terms = strategy.new_tree(runner).expect("strategy").current();
            let mut p = NCPoly::zero();
            for (w, c) in terms {
                p.add_term(Word(w), S::from_i64(c));
            }
            p
        })
        .collect()
}

fn order_independent<S: Field + Send + Sync>(
    out: &mut Outcome,
    label: &str,
    sys: &RewriteSystem<S>,
    runner: &mut TestRunner,
) {
    let mut disagreements = 0;
    for p in random_inputs(runner, sys, 100) {
        let a = sys.normal_form_with(&p, Redex::LeftmostLargest, 1_000_000);
        let b = sys.normal_form_with(&p, Redex::RightmostSmallest, 1_000_000);
        match (a, b) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(a), Ok(b)) => {
                disagreements += 1;
                if disagreements == 1 {
                    out.note(format!(
                        "{label}: {} reduces to {} and {}",
                        sys.display(&p),
                        sys.display(&a),
                        sys.display(&b)
                    ));
                }
            }
            (Err(e), _) | (_, Err(e)) => return out.error(label, e),
        }
    }
    out.require(disagreements == 0, format!("{label}: {disagreements} of 100 inputs disagree"));
}

fn confluent<S: Field + Send + Sync>(out: &mut Outcome, label: &str, sys: &RewriteSystem<S>) {
    match sys.check_local_confluence(4) {
        Ok(rep) => out.require(
            rep.pass(),
            format!(
                "{label}: {} unresolved ambiguities, first at {}",
                rep.unresolved.len(),
                rep.unresolved.first().map_or("-", |a| a.word.as_str())
            ),
        ),
        Err(e) => out.error(label, e),
    }
}

fn biproduct() -> Outcome {
    let mut out = Outcome::new();
    let mut runner = TestRunner::deterministic();
    for name in ["A1", "A2"] {
        let (c, aux) = cartan(name);
        let n = c.n();
        let cl = classical_rules(&c);
        confluent(&mut out, &format!("{name} classical"), &cl);
        for i in 1..=n {
            for j in 1..=n {
                let got = cl.normal_form(&poly(&cl, &format!("F{j}*E{i}")));
                let want = classical_fe_oracle(&cl, i, j);
                out.require(
                    got.as_ref().is_ok_and(|g| *g == want),
                    format!("{name} classical: normal form of F{j}*E{i} is not {}", cl.display(&want)),
                );
            }
        }
        order_independent(&mut out, &format!("{name} classical"), &cl, &mut runner);

        let qs = match quantum_rules(&c, &aux.d) {
            Ok(q) => q,
            Err(e) => {
                out.error(name, e);
                continue;
            }
        };
        confluent(&mut out, &format!("{name} quantum"), &qs);
        for i in 1..=n {
            for j in 1..=n {
                let got = qs.normal_form(&poly(&qs, &format!("F{j}*E{i}")));
                let want = quantum_fe_oracle(&qs, &aux.d, i, j);
                out.require(
                    got.as_ref().is_ok_and(|g| *g == want),
                    format!("{name} quantum: normal form of F{j}*E{i} is not {}", qs.display(&want)),
                );
            }
        }
        order_independent(&mut out, &format!("{name} quantum"), &qs, &mut runner);
    }
    out
}

/// Second difference of `b = h (h - 2) / 4` along a shift of step `a`:
/// `b(x + 2a) - 2 b(x + a) + b(x)`, a constant. Returned as `(num, den)`.
fn serre_residual_oracle(a: i64) -> (i64, i64) {
    let four_b = |x: i64| x * (x - 2);
    let x = 5;
    let num = four_b(x + 2 * a) - 2 * four_b(x + a) + four_b(x);
    let g = gcd(num.abs(), 4);
    (num / g, 4 / g)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn negative_controls() -> Outcome {
    let mut out = Outcome::new();

    // Zero corrections for A2: exactly the Serre conditions fail, each with 1/2.
    match classical("A2").and_then(|d| d.with_zero_beta()).and_then(|d| {
        let e = check_bound_classical(&d)?;
        Ok((d, e))
    }) {
        Ok((d, entries)) => {
            let c = &d.cartan;
            let mut expected = Vec::new();
            for j in 0..2 {
                for i in 0..2 {
                    if i != j && c.a(i, j) == -1 {
                        expected.push(format!("D{}^2(b{}) = 0", i + 1, j + 1));
                    }
                }
            }
            let got: Vec<String> = failing(&entries).iter().map(|e| e.label.clone()).collect();
            out.require(got == expected, format!("A2 with beta = 0: failing {got:?}, expected {expected:?}"));
            let (num, den) = serre_residual_oracle(-1);
            let want = format!("{num}/{den}");
            for e in failing(&entries) {
                out.require(e.residual == want, format!("{}: residual {} (expected {want})", e.label, e.residual));
            }
        }
        Err(e) => out.error("A2 with beta = 0", e),
    }

    // Flipped quantum orientation breaks the weight relations.
    match quantum("A2") {
        Ok(d) => {
            for (upper, signs) in [(true, [-1, -1]), (false, [1, 1])] {
                match quantum_borel_assignment(&d, upper, &signs)
                    .and_then(|(p, a)| check_relations(&p, &a, Some(RelationKind::Weight)))
                {
                    Ok(entries) => out.require(
                        !entries.is_empty() && entries.iter().all(|e| !e.pass),
                        format!(
                            "A2 quantum flipped ({}): {} of {} weight relations still hold",
                            if upper { "E" } else { "F" },
                            entries.iter().filter(|e| e.pass).count(),
                            entries.len()
                        ),
                    ),
                    Err(e) => out.error("A2 quantum flipped", e),
                }
            }
        }
        Err(e) => out.error("A2 quantum", e),
    }

    // Corrupted F*E rule breaks local confluence.
    let sl2 = classical_rules(&catalog("A1").expect("A1"));
    let fe = sl2.word("F1*E1").expect("word");
    let corrupt = poly(&sl2, "E1*F1").minus(&poly(&sl2, "E1"));
    match sl2.with_rule(&fe, corrupt).and_then(|s| s.check_local_confluence(4)) {
        Ok(rep) => out.require(!rep.pass(), "A1 with F1*E1 -> E1*F1 - E1: still locally confluent"),
        Err(e) => out.error("A1 corrupted", e),
    }
    out
}

fn documented_discrepancy() -> Outcome {
    let mut out = Outcome::new();
    for &name in FINITE_TYPE {
        let d = match quantum(name) {
            Ok(d) => d,
            Err(e) => {
                out.error(name, e);
                continue;
            }
        };
        let n = d.cartan.n();
        let mut images = Vec::new();
        for upper in [true, false] {
            match verify_quantum_borel(&d, upper).and_then(|rep| oriented_images(&d, upper, &rep)) {
                Ok(im) => images.push(im),
                Err(e) => out.error(name, e),
            }
        }
        if images.len() != 2 {
            continue;
        }
        let rep = match check_bound_quantum(&d, &images[0], Some(&images[1])) {
            Ok(r) => r,
            Err(e) => {
                out.error(name, e);
                continue;
            }
        };
        // Plain entries come in the order j, then i != j.
        let mut k = 0;
        for j in 0..n {
            for i in 0..n {
                if i == j {
                    continue;
                }
                let e = &rep.plain[k];
                k += 1;
                let a = d.cartan.a(i, j);
                out.require(
                    e.pass == (a == 0),
                    format!("{name} plain {}: pass = {} with a{}{} = {a}", e.label, e.pass, i + 1, j + 1),
                );
            }
        }
        out.require(k == rep.plain.len(), format!("{name}: unexpected plain entry count"));
        out.require(
            rep.localized.iter().all(|e| e.pass),
            summarize(name, "localized conditions", &rep.localized),
        );
    }
    out
}

fn rust_sources(dir: &Path, acc: &mut Vec<std::path::PathBuf>) {
    let Ok(rd) = std::fs::read_dir(dir) else { return };
    for entry in rd.flatten() {
        let p = entry.path();
        if p.is_dir() {
            rust_sources(&p, acc);
        } else if p.extension().is_some_and(|e| e == "rs") {
            acc.push(p);
        }
    }
}

fn exactness() -> Outcome {
    let mut out = Outcome::new();
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let mut files = Vec::new();
    for sub in ["src", "tests", "../ffi/src", "../ffi/tests"] {
        rust_sources(&root.join(sub), &mut files);
    }
    let banned = [["f", "32"].concat(), ["f", "64"].concat()];
    for f in &files {
        let text = std::fs::read_to_string(f).unwrap_or_default();
        for word in text.split(|ch: char| !ch.is_ascii_alphanumeric() && ch != '_') {
            if banned.iter().any(|b| b == word || word.ends_with(&format!("_{b}"))) {
                out.require(false, format!("floating-point token `{word}` in {}", f.display()));
            }
        }
    }
    out.require(!files.is_empty(), "no sources scanned");

    let mut checked = 0;
    for &name in FINITE_TYPE {
        match classical(name) {
            Ok(d) => {
                for upper in [true, false] {
                    match verify_classical_borel(&d, upper) {
                        Ok(rep) => {
                            checked += 1;
                            out.require(
                                rep.witness.complete,
                                format!("{name} {}: unresolved {:?}", rep.name, rep.witness.unresolved),
                            );
                        }
                        Err(e) => out.error(name, e),
                    }
                }
            }
            Err(e) => out.error(name, e),
        }
        match quantum(name) {
            Ok(d) => {
                for upper in [true, false] {
                    match verify_quantum_borel(&d, upper) {
                        Ok(rep) => {
                            checked += 1;
                            out.require(
                                rep.witness.complete,
                                format!("{name} {}: unresolved {:?}", rep.name, rep.witness.unresolved),
                            );
                        }
                        Err(e) => out.error(name, e),
                    }
                }
            }
            Err(e) => out.error(name, e),
        }
    }
    out.note(format!("{} source files scanned, {checked} Borel maps witnessed", files.len()));
    out
}

fn budget(out: &mut Outcome, elapsed: Duration, limit: Duration) {
    out.require(
        elapsed <= limit,
        format!("took {} ms, budget {} ms", elapsed.as_millis(), limit.as_millis()),
    );
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("classical Borel equivalence", classical_borel),
        ("Weyl embedding", weyl_embedding),
        ("quantum Borel equivalence", quantum_borel),
        ("quantum Weyl map", quantum_weyl_map),
        ("biproduct and PBW", biproduct),
        ("negative controls", negative_controls),
        ("documented discrepancy", documented_discrepancy),
        ("exactness hygiene", exactness),
    ];
    let mut failures = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict}  {title}  ({} ms)", k + 1, start.elapsed().as_millis());
        for d in &outcome.details {
            println!("    {d}");
        }
        if !outcome.pass {
            failures += 1;
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
