//! Verification suites: each runs a fixed list of checks and returns a [`Report`].
//!
//! A check whose computation fails is recorded as a failure, except that an
//! exceeded resource limit aborts the whole suite with [`Error::ResourceLimit`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::action::{generates_invariants_up_to, sorted_strings};
use crate::blowup::{BlowupAlgebra, Flavor};
use crate::centralizer::{blowup_match, kernel_of_map, model, ModelName, SliceModel};
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::fusion::fusion_sweep;
use crate::groebner::GbLimits;
use crate::heisenberg::{poisson_from_q, HeisenbergElement};
use crate::homology::BmRing;
use crate::ideal::Ideal;
use crate::kring::{IdentityCheck, KElement, KRing, Side};
use crate::poisson::{invariant_closure_check, jacobi_check, PoissonChart};
use crate::relations::RelationSet;
use crate::report::Report;
use crate::scalar::GaussianRational;
use crate::screen::screen_identity;
use crate::steinberg::{exhaustive_unit_comparison, orbit_sums, rank_one_invariants, rank_one_ring};
use crate::text::parse_fraction;
use crate::{Frac, Poly};

type Q = GaussianRational;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub degree_bound: u32,
    pub limits: GbLimits,
    /// Base count for randomized checks; the Heisenberg suite uses 5x, 1/2x and 1x of it.
    pub random_checks: usize,
    pub seed: u64,
    pub relations: RelationSet,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            degree_bound: 4,
            limits: GbLimits::default(),
            random_checks: 20,
            seed: 0,
            relations: RelationSet::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Blowup,
    Centralizer,
    Kring,
    Homology,
    Heisenberg,
    Steinberg,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "blowup" => Suite::Blowup,
            "centralizer" => Suite::Centralizer,
            "kring" => Suite::Kring,
            "homology" => Suite::Homology,
            "heisenberg" => Suite::Heisenberg,
            "steinberg" => Suite::Steinberg,
            _ => return Err(Error::Parse(format!("unknown suite `{s}`"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Blowup => "blowup",
            Suite::Centralizer => "centralizer",
            Suite::Kring => "kring",
            Suite::Homology => "homology",
            Suite::Heisenberg => "heisenberg",
            Suite::Steinberg => "steinberg",
        }
    }

    pub fn components() -> [Suite; 6] {
        [Suite::Blowup, Suite::Centralizer, Suite::Kring, Suite::Homology, Suite::Heisenberg, Suite::Steinberg]
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Report> {
    match suite {
        Suite::All => {
            let mut r = Report::new("all");
            for s in Suite::components() {
                r.absorb(run_suite(s, cfg)?);
            }
            Ok(r)
        }
        Suite::Blowup => blowup_suite(cfg),
        Suite::Centralizer => centralizer_suite(cfg),
        Suite::Kring => kring_suite(cfg),
        Suite::Homology => homology_suite(cfg),
        Suite::Heisenberg => heisenberg_suite(cfg),
        Suite::Steinberg => steinberg_suite(cfg),
    }
}

/// Records `result` judged by `judge`; resource-limit errors propagate.
fn run<T>(r: &mut Report, name: impl Into<String>, result: Result<T>, judge: impl FnOnce(T) -> (bool, String)) -> Result<()> {
    match result {
        Err(e @ Error::ResourceLimit(_)) => Err(e),
        other => {
            r.check_result(name, other, judge);
            Ok(())
        }
    }
}

fn record_identities(r: &mut Report, prefix: &str, checks: Result<Vec<IdentityCheck>>) -> Result<()> {
    match checks {
        Ok(cs) => {
            for c in cs {
                r.check(format!("{prefix}{}", c.name), c.holds, c.witness);
            }
            Ok(())
        }
        Err(e) => run(r, format!("{prefix}computation"), Err::<(), _>(e), |_| (true, String::new())),
    }
}

fn blowup_suite(cfg: &SuiteConfig) -> Result<Report> {
    let mut r = Report::new("blowup");
    let lim = &cfg.limits;
    for fl in Flavor::all() {
        let b = BlowupAlgebra::rank_one(fl, lim)?;
        let rel = cfg.relations.blowup(fl).clone();
        run(
            &mut r,
            format!("{fl}: configured relation vanishes and lies in the relation ideal"),
            (|| {
                let rel = rel.with_vars(b.ring().vars())?;
                Ok((b.to_fraction(&rel)?.is_zero() && b.relation_basis()?.contains(&rel)?, rel))
            })(),
            |(ok, rel)| (ok, rel.to_string()),
        )?;
        run(&mut r, format!("{fl}: presentation relations hold"), b.defining_relations_hold(), |ok| (ok, String::new()))?;
        run(&mut r, format!("{fl}: coordinates are nonzerodivisors"), b.generators_are_nonzerodivisors(), |ok| {
            (ok, String::new())
        })?;
        run(
            &mut r,
            format!("{fl}: generator fractions are members"),
            b.generator_fractions().iter().map(|(_, f)| Ok(b.membership(f)?.member)).collect::<Result<Vec<_>>>(),
            |v| (v.iter().all(|&m| m), format!("{} generators", v.len())),
        )?;
        let chart = PoissonChart::for_blowup(&b, Q::from(1))?;
        run(&mut r, format!("{fl}: brackets of invariant elements are members"), invariant_closure_check(&b, &chart), |c| {
            let witness = match c.failures().next() {
                Some(p) => format!("{{{}, {}}} = {} is not a member", p.f, p.g, p.bracket),
                None => format!("{} pairs", c.pairs.len()),
            };
            (c.passed(), witness)
        })?;
        let elements: Result<Vec<Frac>> = b.invariant_elements(1, 1).map(|es| {
            es.into_iter().map(|e| e.fraction).chain(b.generator_fractions().into_iter().map(|(_, f)| f)).collect()
        });
        run(
            &mut r,
            format!("{fl}: Jacobi identity on generators and low-degree invariant elements"),
            elements.and_then(|es| Ok((jacobi_check(&chart, &es)?, es.len()))),
            |(fail, n)| (fail.is_none(), fail.map_or(format!("{n} elements"), |t| format!("fails on {t:?}"))),
        )?;
    }
    let gg = BlowupAlgebra::rank_one(Flavor::GROUP_GROUP, lim)?;
    let f = |s: &str| parse_fraction(s, Some(gg.base_ring().vars()));
    for (text, cert) in [("(y^2-1)/(z^2-1)", "T"), ("(y-y^-1)/(z-z^-1)", "y^-1*z*T")] {
        run(&mut r, format!("GG: {text} is a member"), f(text).and_then(|x| gg.membership(&x)), |m| {
            let c = m.certificate.map(|c| c.to_string()).unwrap_or_default();
            (m.member && c == cert, c)
        })?;
    }
    run(&mut r, "GG: 1/(z^2-1) is not a member", f("1/(z^2-1)").and_then(|x| gg.membership(&x)), |m| {
        (!m.member, String::new())
    })?;
    let off_wall = f("1/(z-2)").and_then(|x| gg.membership(&x));
    r.check(
        "GG: 1/(z-2) is rejected as a non-wall denominator",
        matches!(off_wall, Err(Error::NonWallDenominator(_))),
        format!("{off_wall:?}"),
    );
    let dual = BlowupAlgebra::rank_one(Flavor::DUAL_GROUP, lim)?;
    for (comp, expected) in [("z^2", true), ("z", false), ("2*z^2", false)] {
        run(
            &mut r,
            format!("GGv: unit condition on {comp} is {expected}"),
            Poly::parse(comp).and_then(|p| dual.denis_check(&[p])),
            |v| (v == expected, v.to_string()),
        )?;
    }
    Ok(r)
}

fn configured_model(name: ModelName, rel: &RelationSet) -> Result<SliceModel> {
    let mut m = model(name);
    let key = match name {
        ModelName::S => Some("S"),
        ModelName::SPrime => Some("S-prime"),
        _ => None,
    };
    if let Some(k) = key {
        m.relation = Some(rel.get(k).with_vars(m.ring.vars())?);
    }
    Ok(m)
}

fn centralizer_suite(cfg: &SuiteConfig) -> Result<Report> {
    let mut r = Report::new("centralizer");
    let lim = &cfg.limits;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for name in ModelName::all() {
        let m = configured_model(name, &cfg.relations)?;
        let n = name.name();
        if let Some(sub) = m.substituted_relation()? {
            let zero = Fraction::zero(sub.vars());
            let witness = match screen_identity(&sub, &zero, cfg.random_checks, &mut rng) {
                Some(p) => format!("{sub} is nonzero at {}", p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")),
                None => sub.to_string(),
            };
            r.check(format!("{n}: parametrization satisfies the relation"), sub.is_zero(), witness);
            if let Some(rel) = &m.relation {
                let det = &m.general_element.det().with_vars(m.ring.vars())? - &Poly::one(m.ring.vars());
                r.check(format!("{n}: determinant of the commuting element minus 1 is the relation"), &det == rel, det.to_string());
            }
        }
        run(&mut r, format!("{n}: involutions preserve the relation"), m.involutions_preserve_relation(lim), |ok| {
            (ok, String::new())
        })?;
        run(
            &mut r,
            format!("{n}: kernel of the parametrization"),
            (|| {
                let kernel = kernel_of_map(&m.target, &m.parametrization, lim)?;
                let expected: Vec<Poly> = m.relation.iter().cloned().collect();
                let same = Ideal::new(m.ring.clone(), kernel.clone())?.same_as(&Ideal::new(m.ring.clone(), expected)?, lim)?;
                Ok((same, kernel))
            })(),
            |(same, k)| (same, if k.is_empty() { "<0>".into() } else { sorted_strings(&k).join(", ") }),
        )?;
        run(
            &mut r,
            format!("{n}: commutant matches the printed family"),
            m.commutant_matches().and_then(|ok| Ok((ok, m.general_commutator()?))),
            |(ok, c)| (ok && c.is_zero(), format!("[X, M] = {c}")),
        )?;
        let b = BlowupAlgebra::rank_one(name.flavor(), lim)?;
        run(
            &mut r,
            format!("{n}: matches the {} blow-up up to degree {}", name.flavor(), cfg.degree_bound),
            blowup_match(&m, &b, cfg.degree_bound, lim),
            |bm| {
                let missing: Vec<&str> = bm
                    .coordinates
                    .iter()
                    .chain(&bm.invariants)
                    .filter(|(_, c)| c.is_none())
                    .map(|(s, _)| s.as_str())
                    .collect();
                (bm.passed(), format!("{} invariants; unmatched: {missing:?}", bm.invariants.len()))
            },
        )?;
    }
    let s = configured_model(ModelName::S, &cfg.relations)?;
    let sp = configured_model(ModelName::SPrime, &cfg.relations)?;
    let cases: [(&SliceModel, &[&str], u32, &[&str]); 4] = [
        (&s, &["iota"], 2, &["a", "b*c", "b^2", "c^2"]),
        (&s, &["jmath"], 2, &["a*c", "a^2", "b", "c^2"]),
        (&s, &["iota", "jmath"], 3, &["a^2", "b^2", "c^2"]),
        (&sp, &["iota"], 2, &["delta", "eta^2", "xi*eta", "xi^2"]),
    ];
    for (m, which, bound, expected) in cases {
        run(
            &mut r,
            format!("{}: invariants of {} up to degree {bound}", m.name.name(), which.join("+")),
            m.isogeny_invariants(which, bound, lim),
            |g| {
                let got = sorted_strings(&g.essential());
                let red = sorted_strings(&g.redundant.iter().map(|x| x.poly.clone()).collect::<Vec<_>>());
                (got == expected, format!("{got:?}; redundant {red:?}"))
            },
        )?;
    }
    Ok(r)
}

fn kring_suite(cfg: &SuiteConfig) -> Result<Report> {
    let mut r = Report::new("kring");
    let k = match KRing::new(cfg.relations.get("S"), &cfg.limits) {
        Ok(k) => k,
        Err(e @ Error::ResourceLimit(_)) => return Err(e),
        Err(e) => {
            r.check("ring construction", false, e.to_string());
            return Ok(r);
        }
    };
    record_identities(&mut r, "", k.relation_checks())?;
    record_identities(&mut r, "dictionary: ", k.dictionary_consistency())?;
    record_identities(&mut r, "round trip: ", k.round_trip_checks())?;
    record_identities(&mut r, "Iwahori: ", k.iwahori_checks())?;
    let vars = k.ring().vars().clone();
    let p = |s: &str| Poly::parse_in(s, &vars);
    run(
        &mut r,
        "c * (a*b - c) = b^2 + 1",
        (|| k.multiply(&KElement::Abstract(p("c")?), &KElement::Abstract(p("a*b - c")?)))(),
        |x| (x == p("b^2 + 1").unwrap(), x.to_string()),
    )?;
    for (text, side, expected) in
        [("a", Side::Group, true), ("c", Side::Group, false), ("c^2", Side::Both, true), ("b", Side::Dual, true)]
    {
        run(&mut r, format!("{text} fixed on the {side:?} side is {expected}"), p(text).and_then(|f| k.subring_filter(&f, side)), |v| {
            (v == expected, v.to_string())
        })?;
    }
    for side in [Side::Group, Side::Dual] {
        run(&mut r, format!("{side:?}-side invariants match the listed classes"), k.side_generators(side), |(g, same)| {
            (same, sorted_strings(&g).join(", "))
        })?;
    }
    match fusion_sweep(&k, 2..=6, 1..=4) {
        Ok((fr, _)) => r.absorb(fr),
        Err(e) => run(&mut r, "fusion table", Err::<(), _>(e), |_| (true, String::new()))?,
    }
    Ok(r)
}

fn homology_suite(cfg: &SuiteConfig) -> Result<Report> {
    let mut r = Report::new("homology");
    let bm = BmRing::new(cfg.relations.get("BM"), &cfg.limits)?;
    let g = bm.grading_check();
    r.check(g.name, g.holds, g.witness);
    run(&mut r, "monomial basis at bound 3", bm.basis_check(3), |(n, ok)| (ok && n == 32, format!("{n} independent normal forms")))?;
    run(&mut r, "invariant subalgebra generators", bm.invariant_subalgebra(), |gens| {
        let s = sorted_strings(&gens);
        (s == ["delta", "eta^2", "xi*eta", "xi^2"], s.join(", "))
    })?;
    run(&mut r, "slice parametrization satisfies the relation", bm.relation_matches_model(), |ok| (ok, bm.relation().to_string()))?;
    Ok(r)
}

fn random_monomial(rng: &mut ChaCha8Rng) -> HeisenbergElement {
    use rand::Rng;
    HeisenbergElement::basis(0, vec![rng.gen_range(-3..=3)], vec![rng.gen_range(-3..=3)])
}

/// The `q = 1` Laurent polynomial as a combination of group elements with `q^0`.
fn lift(p: &Poly) -> Result<HeisenbergElement> {
    let rank = p.vars().len() / 2;
    HeisenbergElement::from_terms(
        rank,
        p.terms().map(|(e, c)| {
            let e: Vec<i64> = e.iter().map(|&x| x as i64).collect();
            ((0, e[..rank].to_vec(), e[rank..].to_vec()), c.clone())
        }),
    )
}

fn heisenberg_suite(cfg: &SuiteConfig) -> Result<Report> {
    let mut r = Report::new("heisenberg");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let rc = cfg.random_checks;
    let b2 = HeisenbergElement::basis(0, vec![0], vec![2]).mul(&HeisenbergElement::basis(0, vec![1], vec![0]))?;
    r.check("(1, 0, alpha) * (1, alpha-check, 0) = (q^2, alpha-check, alpha)", b2 == HeisenbergElement::basis(2, vec![1], vec![2]), b2.to_string());
    let (mut assoc, mut divisible) = (true, true);
    let mut witness = String::new();
    for _ in 0..5 * rc {
        let x = HeisenbergElement::random(&mut rng, 1, 5, 3);
        let y = HeisenbergElement::random(&mut rng, 1, 5, 3);
        let z = HeisenbergElement::random(&mut rng, 1, 5, 3);
        if x.mul(&y)?.mul(&z)? != x.mul(&y.mul(&z)?)? && assoc {
            assoc = false;
            witness = format!("({x}) ({y}) ({z})");
        }
        divisible &= x.commutator(&y)?.divisible_by_q_minus_one();
    }
    r.check(format!("associativity on {} random triples", 5 * rc), assoc, witness);
    r.check(format!("commutators vanish at q = 1 on {} random pairs", 5 * rc), divisible, "");
    let chart = PoissonChart::for_blowup(&BlowupAlgebra::rank_one(Flavor::DUAL_GROUP, &cfg.limits)?, Q::from(1))?;
    let vars = HeisenbergElement::limit_vars(1);
    let (mut agree, mut w) = (true, String::new());
    for _ in 0..rc / 2 {
        let (u, v) = (random_monomial(&mut rng), random_monomial(&mut rng));
        let limit = poisson_from_q(&u, &v)?;
        let classical = chart.bracket(&Fraction::from_poly(u.at_q_one()), &Fraction::from_poly(v.at_q_one()))?;
        if Fraction::from_poly(limit.with_vars(&vars)?) != classical.with_vars(&vars)? && agree {
            agree = false;
            w = format!("{{{u}, {v}}}: {limit} vs {classical}");
        }
    }
    r.check(format!("q-limit bracket equals the chart bracket on {} monomial pairs", rc / 2), agree, w);
    let (mut jac, mut w) = (true, String::new());
    for _ in 0..rc {
        let (u, v, x) = (random_monomial(&mut rng), random_monomial(&mut rng), random_monomial(&mut rng));
        let br = |a: &HeisenbergElement, b: &HeisenbergElement| poisson_from_q(a, b).and_then(|p| lift(&p));
        let sum = br(&u, &br(&v, &x)?)?.add(&br(&v, &br(&x, &u)?)?)?.add(&br(&x, &br(&u, &v)?)?)?;
        let fs: Vec<Frac> = [&u, &v, &x].iter().map(|e| Fraction::from_poly(e.at_q_one())).collect();
        let chart_sum = chart.jacobiator(&fs[0], &fs[1], &fs[2])?;
        if (!sum.is_zero() || !chart_sum.is_zero()) && jac {
            jac = false;
            w = format!("({u}, {v}, {x})");
        }
    }
    r.check(format!("Jacobi identity on {rc} monomial triples"), jac, w);
    Ok(r)
}

fn steinberg_suite(cfg: &SuiteConfig) -> Result<Report> {
    let mut r = Report::new("steinberg");
    let lim = &cfg.limits;
    run(&mut r, "invariants up to degree 2 are the four orbit sums", rank_one_invariants(2, lim), |g| {
        let got = sorted_strings(&g.polys());
        (got == sorted_strings(&orbit_sums()), got.join(", "))
    })?;
    let (ring, action) = rank_one_ring();
    run(&mut r, "orbit sums generate the invariants up to degree 2", generates_invariants_up_to(&action, &ring, &orbit_sums(), 2, lim), |ok| (ok, String::new()))?;
    run(&mut r, "unit identity on every character list of length <= 4 with exponents in [-3, 3]", exhaustive_unit_comparison(4, 3), |(n, fail)| {
        (fail.is_none() && n == 2801, fail.map_or(format!("{n} lists"), |l| format!("fails on {l:?}")))
    })?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn default_suites_pass() {
        let cfg = SuiteConfig::default();
        for s in [Suite::Homology, Suite::Heisenberg, Suite::Steinberg] {
            let r = run_suite(s, &cfg).unwrap();
            assert!(r.passed(), "{}: {:?}", s.name(), r.failures());
        }
    }

    #[test]
    fn corrupted_homology_relation_fails() {
        let overrides = BTreeMap::from([("BM".to_string(), "xi^2 - delta*eta^2 - 2".to_string())]);
        let cfg = SuiteConfig { relations: RelationSet::with_overrides(&overrides).unwrap(), ..Default::default() };
        assert!(!run_suite(Suite::Homology, &cfg).unwrap().passed());
    }

    #[test]
    fn tiny_term_cap_aborts() {
        let cfg = SuiteConfig { limits: GbLimits { term_cap: 3 }, ..Default::default() };
        assert!(matches!(run_suite(Suite::Centralizer, &cfg), Err(Error::ResourceLimit(_))));
    }
}
