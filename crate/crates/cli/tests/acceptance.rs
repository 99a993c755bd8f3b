//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::path::PathBuf;
use std::process::Command;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use convring::action::sorted_strings;
use convring::blowup::{BlowupAlgebra, Flavor};
use convring::centralizer::{blowup_match, commutant_basis, kernel_of_map, model, same_module, ModelName};
use convring::fraction::Fraction;
use convring::fusion::{fusion_sweep, fusion_table, FusionKind, FusionParams, FusionTerm};
use convring::groebner::GbLimits;
use convring::heisenberg::{poisson_from_q, HeisenbergElement};
use convring::homology::BmRing;
use convring::kring::{abstract_vars, KElement, KRing, VClass};
use convring::poisson::{invariant_closure_check, jacobi_check, PoissonChart};
use convring::relations::RelationSet;
use convring::report::Status;
use convring::steinberg::{exhaustive_unit_comparison, rank_one_invariants};
use convring::{Frac, GaussianRational as Q, Poly};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn lim() -> GbLimits {
    GbLimits::default()
}

fn image(name: ModelName, coord: &str) -> Frac {
    model(name).image(coord).cloned().expect("coordinate has an image")
}

fn hypersurface_identities() -> Outcome {
    use ModelName::*;
    let (a, b, c) = (image(S, "a"), image(S, "b"), image(S, "c"));
    let lhs = a.mul(&b).mul(&c).sub(&b.mul(&b)).sub(&c.mul(&c));
    ensure(lhs == Fraction::one(lhs.vars()), || format!("abc - b^2 - c^2 = {lhs}"))?;
    let (xi, delta, eta) = (image(SPrime, "xi"), image(SPrime, "delta"), image(SPrime, "eta"));
    let det = xi.mul(&xi).sub(&delta.mul(&eta).mul(&eta));
    ensure(det == Fraction::one(det.vars()), || format!("xi^2 - delta eta^2 = {det}"))?;
    Ok("abc - b^2 - c^2 = 1 and xi^2 - delta*eta^2 = 1".into())
}

fn implicitization() -> Outcome {
    let expected: [(ModelName, &[&str]); 4] = [
        (ModelName::S, &["a*b*c - b^2 - c^2 - 1"]),
        (ModelName::SPrime, &["xi^2 - delta*eta^2 - 1"]),
        (ModelName::PlaneGroupLie, &[]),
        (ModelName::PlaneLieLie, &[]),
    ];
    let mut seen = Vec::new();
    for (name, want) in expected {
        let m = model(name);
        let k = e2s(kernel_of_map(&m.target, &m.parametrization, &lim()))?;
        let got = sorted_strings(&k);
        ensure(got == want, || format!("{}: kernel {got:?}, expected {want:?}", name.name()))?;
        seen.push(format!("{}: <{}>", name.name(), if got.is_empty() { "0".into() } else { got.join(", ") }));
    }
    Ok(seen.join("; "))
}

fn commutants() -> Outcome {
    let mut n = 0;
    for name in ModelName::all() {
        let m = model(name);
        let comm = e2s(m.general_commutator())?;
        ensure(comm.is_zero(), || format!("{}: [X, M] = {comm}", name.name()))?;
        let solved = e2s(commutant_basis(&m.slice, m.constraint))?;
        let params: Vec<&str> = m.family_params.iter().map(String::as_str).collect();
        let printed = e2s(m.general_element.linear_parts(&params))?;
        ensure(e2s(same_module(&solved, &printed))?, || format!("{}: solved commutant differs from the printed family", name.name()))?;
        n += 1;
    }
    Ok(format!("{n} families reproduced, every [X, M] reduces to 0"))
}

fn blowup_coincidence() -> Outcome {
    let mut seen = Vec::new();
    for name in ModelName::all() {
        let m = model(name);
        let b = e2s(BlowupAlgebra::rank_one(name.flavor(), &lim()))?;
        let r = e2s(blowup_match(&m, &b, 4, &lim()))?;
        ensure(r.passed(), || format!("{} vs {}: {:?}", name.name(), name.flavor(), r))?;
        seen.push(format!("({}, {})", name.name(), name.flavor()));
    }
    Ok(seen.join(", ") + " at degree 4")
}

fn kring_relations() -> Outcome {
    let rels = RelationSet::default();
    let k = e2s(KRing::new(rels.get("S"), &lim()))?;
    let v = |n, m| -> Result<KElement, String> { Ok(KElement::Abstract(e2s(k.v_class(n, m))?)) };
    let abs = |s: &str| Poly::parse_in(s, &abstract_vars()).unwrap();
    // Products of classes against the dictionary values of their right-hand sides.
    let cases = [
        (v(1, 1)?, v(-1, 1)?, "b^2 + 1"),
        (v(1, 0)?, v(0, 1)?, "a*b"),
        (v(0, 1)?, v(0, 1)?, "b^2"),
        (v(1, 1)?, v(1, 1)?, "c^2"),
    ];
    for (f, g, want) in &cases {
        let got = e2s(k.multiply(f, g))?;
        ensure(got == e2s(k.normal_form(&abs(want)))?, || format!("{f} * {g} = {got}, expected {want}"))?;
    }
    let triple = e2s(k.multiply(&KElement::Abstract(abs("a*b")), &v(1, 1)?))?;
    let rhs = e2s(k.normal_form(&abs("c^2 + b^2 + 1")))?;
    ensure(triple == rhs, || format!("v(1)_0 v(0)_1 v(1)_1 = {triple}, expected {rhs}"))?;
    for c in e2s(k.relation_checks())? {
        ensure(c.holds, || format!("{}: {}", c.name, c.witness))?;
    }
    let rewritten = k.triple_product_rewrite();
    ensure(&rewritten == rels.get("S"), || format!("rewritten identity {rewritten} is not the relation"))?;
    Ok(format!("4 products and the triple identity hold; rewriting gives {rewritten}"))
}

fn involutions() -> Outcome {
    for name in ModelName::all() {
        ensure(e2s(model(name).involutions_preserve_relation(&lim()))?, || format!("{} relation not preserved", name.name()))?;
    }
    let cases: [(ModelName, &str, &[&str]); 3] = [
        (ModelName::S, "iota", &["a", "b*c", "b^2", "c^2"]),
        (ModelName::S, "jmath", &["a*c", "a^2", "b", "c^2"]),
        (ModelName::SPrime, "iota", &["delta", "eta^2", "xi*eta", "xi^2"]),
    ];
    for (name, inv, want) in cases {
        let g = e2s(model(name).isogeny_invariants(&[inv], 2, &lim()))?;
        let got = sorted_strings(&g.essential());
        ensure(got == want, || format!("{} / {inv}: {got:?}, expected {want:?}", name.name()))?;
    }
    Ok("relations preserved; S/jmath = {a*c, a^2, b, c^2}; S-prime/iota = {delta, eta^2, xi*eta, xi^2}".into())
}

/// Log-canonical bracket on Laurent polynomials in (t, z) with {t, z} = -t z.
fn log_bracket(f: &Poly, g: &Poly) -> Poly {
    let lhs = &f.log_derivative(0) * &g.log_derivative(1);
    let rhs = &f.log_derivative(1) * &g.log_derivative(0);
    -&(&lhs - &rhs)
}

fn heisenberg() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let [x, y, z] = [0; 3].map(|_| HeisenbergElement::random(&mut rng, 1, 3, 3));
        let l = e2s(x.mul(&y).and_then(|xy| xy.mul(&z)))?;
        let r = e2s(y.mul(&z).and_then(|yz| x.mul(&yz)))?;
        ensure(l == r, || format!("({x})({y})({z}) is not associative"))?;
        ensure(e2s(x.commutator(&y))?.divisible_by_q_minus_one(), || format!("[{x}, {y}] not divisible by q - 1"))?;
    }
    let mono = |rng: &mut ChaCha8Rng| {
        use rand_chacha::rand_core::RngCore;
        let mut c = || (rng.next_u32() % 7) as i64 - 3;
        HeisenbergElement::basis(0, vec![c()], vec![c()])
    };
    let chart = e2s(PoissonChart::for_blowup(&e2s(BlowupAlgebra::rank_one(Flavor::DUAL_GROUP, &lim()))?, Q::from(1)))?;
    for _ in 0..10 {
        let (u, v) = (mono(&mut rng), mono(&mut rng));
        let q = e2s(poisson_from_q(&u, &v))?;
        let oracle = log_bracket(&u.at_q_one(), &v.at_q_one());
        ensure(q == oracle, || format!("q-limit {{{u}, {v}}} = {q}, expected {oracle}"))?;
        let ch = e2s(chart.bracket(&Fraction::from_poly(u.at_q_one()), &Fraction::from_poly(v.at_q_one())))?;
        let via_chart = e2s(ch.with_vars(q.vars()))?;
        ensure(via_chart == Fraction::from_poly(q.clone()), || format!("chart gives {ch}, q-limit gives {q}"))?;
    }
    for _ in 0..20 {
        let [f, g, h] = [0; 3].map(|_| mono(&mut rng).at_q_one());
        let j = &(&log_bracket(&f, &log_bracket(&g, &h)) + &log_bracket(&g, &log_bracket(&h, &f)))
            + &log_bracket(&h, &log_bracket(&f, &g));
        ensure(j.is_zero(), || format!("Jacobi fails on {f}, {g}, {h}"))?;
    }
    Ok("100 associative triples, commutators divisible by q - 1, 10 bracket pairs, 20 Jacobi triples".into())
}

fn poisson_closure() -> Outcome {
    let mut seen = Vec::new();
    for flavor in Flavor::all() {
        let b = e2s(BlowupAlgebra::rank_one(flavor, &lim()))?;
        let chart = e2s(PoissonChart::for_blowup(&b, Q::from(1)))?;
        let closure = e2s(invariant_closure_check(&b, &chart))?;
        if let Some(p) = closure.failures().next() {
            return Err(format!("{flavor}: {{{}, {}}} = {} is not a member", p.f, p.g, p.bracket));
        }
        let mut elements: Vec<Frac> = b.generator_fractions().into_iter().map(|(_, f)| f).collect();
        elements.extend(e2s(b.invariant_elements(1, 1))?.into_iter().map(|e| e.fraction));
        if let Some((i, j, k)) = e2s(jacobi_check(&chart, &elements))? {
            return Err(format!("{flavor}: Jacobi sum nonzero on elements {i}, {j}, {k}"));
        }
        seen.push(format!("{flavor} ({} pairs)", closure.pairs.len()));
    }
    Ok(format!("W-invariant generator brackets are members and Jacobi sums vanish: {}", seen.join(", ")))
}

fn steinberg() -> Outcome {
    let g = e2s(rank_one_invariants(2, &lim()))?;
    let got = sorted_strings(&g.essential());
    let want = ["t + t^-1", "t*z + t^-1*z^-1", "t*z^-1 + t^-1*z", "z + z^-1"];
    ensure(got == want, || format!("invariant generators {got:?}"))?;
    let (count, failure) = e2s(exhaustive_unit_comparison(4, 3))?;
    let expected_count: usize = (0..=4).map(|k| 7usize.pow(k)).sum();
    ensure(count == expected_count, || format!("{count} lists checked, expected {expected_count}"))?;
    ensure(failure.is_none(), || format!("unit identity fails on {failure:?}"))?;
    Ok(format!("four orbit sums generate; unit identity on {count} lists"))
}

fn homology() -> Outcome {
    let ring = e2s(BmRing::new(RelationSet::default().get("BM"), &lim()))?;
    let g = ring.grading_check();
    ensure(g.holds, || g.witness.clone())?;
    let bound = 3u32;
    let (dim, ok) = e2s(ring.basis_check(bound))?;
    let want = 2 * (bound as usize + 1).pow(2);
    ensure(ok && dim == want, || format!("{dim} independent monomials, expected {want}"))?;
    let gens = sorted_strings(&e2s(ring.invariant_subalgebra())?);
    ensure(gens == ["delta", "eta^2", "xi*eta", "xi^2"], || format!("generators {gens:?}"))?;
    Ok(format!("homogeneous relation; {dim} basis monomials; generators {}", gens.join(", ")))
}

fn fusion() -> Outcome {
    for l in -2..=4 {
        let e = e2s(fusion_table(FusionKind::Tri, FusionParams { n: 0, l, a: 1, b: 0 }))?;
        let want = vec![FusionTerm { coeff: 1, q_power: 0, class: VClass::new(l + 1, 1).unwrap() }];
        ensure(e.terms == want && e.ambiguity.is_none(), || format!("tri(1,0,{l}) = {}", e.rhs_string()))?;
        let e = e2s(fusion_table(FusionKind::Tri, FusionParams { n: 0, l, a: 1, b: 1 }))?;
        let want = vec![FusionTerm { coeff: 1, q_power: -l, class: VClass::new(2 * l + 1, 2).unwrap() }];
        ensure(e.terms == want && e.ambiguity.is_none(), || format!("tri(1,1,{l}) = {}", e.rhs_string()))?;
    }
    let k = e2s(KRing::new(RelationSet::default().get("S"), &lim()))?;
    let (report, entries) = e2s(fusion_sweep(&k, 2..=6, 1..=4))?;
    ensure(report.passed(), || format!("sweep failures: {:?}", report.failures()))?;
    let expected_entries = 2 * 5 * 4;
    ensure(entries.len() >= expected_entries, || format!("sweep emitted {} entries", entries.len()))?;
    let n1: Vec<_> = report.checks.iter().filter(|c| c.name.contains("n=1)")).collect();
    ensure(!n1.is_empty() && n1.iter().all(|c| c.status == Status::SkippedAmbiguous), || {
        format!("n = 1 cases not all skipped-ambiguous: {n1:?}")
    })?;
    for l in 1..=4 {
        let e = e2s(fusion_table(FusionKind::Odin, FusionParams { n: 1, l, a: 0, b: 0 }))?;
        ensure(e.ambiguity.is_some(), || format!("odin(l={l}, n=1) was not flagged ambiguous"))?;
    }
    Ok(format!(
        "tri specializations match for l in -2..4; sweep of {} entries with {} passed and {} skipped-ambiguous checks",
        entries.len(),
        report.count(Status::Pass),
        report.count(Status::SkippedAmbiguous)
    ))
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn verify(suite: &str, config: &str) -> Result<(i32, Value), String> {
    let out = e2s(
        Command::new(env!("CARGO_BIN_EXE_convring"))
            .args(["verify", suite, "--output", "json", "--config"])
            .arg(fixtures().join(config))
            .output(),
    )?;
    let report = e2s(serde_json::from_slice(&out.stdout))?;
    Ok((out.status.code().unwrap_or(-1), report))
}

fn negative_controls() -> Outcome {
    let cases = [
        ("corrupt-S.json", "centralizer"),
        ("corrupt-S.json", "kring"),
        ("corrupt-S-prime.json", "centralizer"),
        ("corrupt-BM.json", "homology"),
        ("corrupt-blowup-gg.json", "blowup"),
        ("corrupt-blowup-Gg.json", "blowup"),
        ("corrupt-blowup-gG.json", "blowup"),
        ("corrupt-blowup-GG.json", "blowup"),
        ("corrupt-blowup-GGv.json", "blowup"),
    ];
    let mut suites: Vec<&str> = cases.iter().map(|(_, s)| *s).collect();
    suites.dedup();
    for s in &suites {
        let (code, _) = verify(s, "clean.json")?;
        ensure(code == 0, || format!("clean {s} run exited {code}"))?;
    }
    for (fixture, suite) in cases {
        let (code, report) = verify(suite, fixture)?;
        let failed = report["checks"].as_array().map_or(0, |c| c.iter().filter(|c| c["status"] == "fail").count());
        ensure(code == 1 && failed > 0, || format!("{fixture} on {suite}: exit {code}, {failed} failed checks"))?;
    }
    Ok(format!("{} corrupted fixtures each make their suite exit 1; clean runs exit 0", RelationSet::names().len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("hypersurface identities", hypersurface_identities),
        ("implicitization", implicitization),
        ("commutants", commutants),
        ("blow-up coincidence", blowup_coincidence),
        ("K-ring relations", kring_relations),
        ("involutions and isogenies", involutions),
        ("Heisenberg and Poisson limit", heisenberg),
        ("Poisson closure", poisson_closure),
        ("Steinberg invariant ring", steinberg),
        ("homology ring", homology),
        ("fusion table", fusion),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(w) => println!("PASS criterion {}: {name}: {w}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
