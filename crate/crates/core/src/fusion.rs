//! Recurrences for products of the classes `v(n)_1` in the loop-rotation
//! equivariant ring, as formal sums `sum q^k v(n)_m`, and their consistency sweep.
//!
//! The left-hand side of the first two tables is read as `v(l+n)_1 * v(l)_1`
//! (resp. `v(l-n)_1 * v(l)_1`); the stray `0` before the product is dropped.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::kring::{KRing, VClass};
use crate::report::{csv_writer, Report};
use crate::Poly;

/// How the source digit before the product is read.
pub const LHS_READING: &str = "`v(l+n)_1 0 * v(l)_1` read as `v(l+n)_1 * v(l)_1`";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FusionKind {
    /// `q^-l v(l+n)_1 * v(l)_1`.
    Odin,
    /// `q^(-l-2) v(l-n)_1 * v(l)_1`.
    Dva,
    /// `v(l+1)_1^a * v(l)_1^b`.
    Tri,
}

impl FusionKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "odin" => Ok(FusionKind::Odin),
            "dva" => Ok(FusionKind::Dva),
            "tri" => Ok(FusionKind::Tri),
            _ => Err(Error::Parse(format!("unknown table `{s}` (expected odin, dva or tri)"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FusionKind::Odin => "odin",
            FusionKind::Dva => "dva",
            FusionKind::Tri => "tri",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FusionParams {
    pub n: i64,
    pub l: i64,
    pub a: i64,
    pub b: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FusionTerm {
    pub coeff: i64,
    pub q_power: i64,
    pub class: VClass,
}

impl fmt::Display for FusionTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff != 1 {
            write!(f, "{} * ", self.coeff)?;
        }
        if self.q_power != 0 {
            write!(f, "q^{} * ", self.q_power)?;
        }
        write!(f, "{}", self.class)
    }
}

/// One table entry: `q^lhs_q_power * product(lhs_factors) = sum terms`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionEntry {
    pub kind: FusionKind,
    pub params: FusionParams,
    pub lhs_q_power: i64,
    pub lhs_factors: Vec<VClass>,
    pub terms: Vec<FusionTerm>,
    /// Why the tail of the expansion is undetermined, when it is.
    pub ambiguity: Option<String>,
}

impl FusionEntry {
    pub fn params_string(&self) -> String {
        let p = &self.params;
        match self.kind {
            FusionKind::Odin | FusionKind::Dva => format!("l={};n={}", p.l, p.n),
            FusionKind::Tri => format!("a={};b={};l={}", p.a, p.b, p.l),
        }
    }

    pub fn lhs_string(&self) -> String {
        let prod: Vec<String> = self.lhs_factors.iter().map(|c| c.to_string()).collect();
        let prod = if prod.is_empty() { "1".to_string() } else { prod.join(" * ") };
        if self.lhs_q_power == 0 {
            prod
        } else {
            format!("q^{} * {prod}", self.lhs_q_power)
        }
    }

    pub fn rhs_string(&self) -> String {
        let t: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        let mut s = t.join(" + ");
        if self.ambiguity.is_some() {
            s.push_str(" + [ambiguous tail]");
        }
        s
    }

    /// The right-hand side at `q = 1` as class multiplicities.
    pub fn classical(&self) -> BTreeMap<VClass, i64> {
        let mut m = BTreeMap::new();
        for t in &self.terms {
            *m.entry(t.class).or_insert(0) += t.coeff;
        }
        m.retain(|_, c| *c != 0);
        m
    }
}

impl fmt::Display for FusionEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rhs_string())
    }
}

fn term(q_power: i64, n: i64, m: i64) -> Result<FusionTerm> {
    Ok(FusionTerm { coeff: 1, q_power, class: VClass::new(n, m)? })
}

fn class(n: i64, m: i64) -> Result<VClass> {
    VClass::new(n, m)
}

/// The tail `sum_{j=1}^{floor(n/2)} q^(sign*2j) v(n-2j)_0`.
fn point_tail(n: i64, sign: i64) -> Result<Vec<FusionTerm>> {
    (1..=n / 2).map(|j| term(sign * 2 * j, n - 2 * j, 0)).collect()
}

/// The separately stated last summand: `q^(sign*n) v(0)_0` for even `n`, `q^(sign*(n-1)) v(1)_0` for odd `n`.
pub fn stated_last_summand(n: i64, sign: i64) -> Result<FusionTerm> {
    if n % 2 == 0 {
        term(sign * n, 0, 0)
    } else {
        term(sign * (n - 1), 1, 0)
    }
}

/// `(a(1-a) + l(a+b)(1-a-b)) / 2`, always an integer.
pub fn tri_exponent(a: i64, b: i64, l: i64) -> i64 {
    (a * (1 - a) + l * (a + b) * (1 - a - b)) / 2
}

pub fn fusion_table(kind: FusionKind, p: FusionParams) -> Result<FusionEntry> {
    let ambiguous_tail = |n: i64| {
        (n < 2).then(|| {
            format!(
                "n = {n}: the series starts at v(n-2)_0 = v({})_0 while the stated last summand is {}",
                n - 2,
                stated_last_summand(n, 1).map(|t| t.class.to_string()).unwrap_or_default()
            )
        })
    };
    match kind {
        FusionKind::Odin | FusionKind::Dva => {
            if p.n < 0 {
                return Err(Error::OutOfRange(format!("n = {} must be nonnegative", p.n)));
            }
            let (lhs_q_power, first, lead, sign) = match kind {
                FusionKind::Odin => (-p.l, p.l + p.n, term(-2 * p.l, 2 * p.l + p.n, 2)?, 1),
                _ => (-p.l - 2, p.l - p.n, term(-2 * p.l - 2, 2 * p.l - p.n, 2)?, -1),
            };
            let ambiguity = ambiguous_tail(p.n);
            let mut terms = vec![lead];
            if ambiguity.is_none() {
                terms.extend(point_tail(p.n, sign)?);
            }
            Ok(FusionEntry {
                kind,
                params: p,
                lhs_q_power,
                lhs_factors: vec![class(first, 1)?, class(p.l, 1)?],
                terms,
                ambiguity,
            })
        }
        FusionKind::Tri => {
            if p.a < 0 || p.b < 0 || p.a + p.b < 1 {
                return Err(Error::OutOfRange(format!("need a, b >= 0 and a + b >= 1, got a = {}, b = {}", p.a, p.b)));
            }
            let mut lhs_factors = vec![class(p.l + 1, 1)?; p.a as usize];
            lhs_factors.extend(vec![class(p.l, 1)?; p.b as usize]);
            let terms = vec![term(tri_exponent(p.a, p.b, p.l), p.a + p.l * (p.a + p.b), p.a + p.b)?];
            Ok(FusionEntry { kind, params: p, lhs_q_power: 0, lhs_factors, terms, ambiguity: None })
        }
    }
}

/// CSV rows `kind,params,term:coeff_q_power,n,m`, where the term column is `coeff:q_power`.
pub fn entries_to_csv(entries: &[FusionEntry]) -> String {
    let mut w = csv_writer();
    w.write_record(["kind", "params", "term:coeff_q_power", "n", "m"]).unwrap();
    for e in entries {
        for t in &e.terms {
            w.write_record([
                e.kind.name().to_string(),
                e.params_string(),
                format!("{}:{}", t.coeff, t.q_power),
                t.class.n.to_string(),
                t.class.m.to_string(),
            ])
            .unwrap();
        }
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

pub fn entry_to_json(e: &FusionEntry) -> serde_json::Value {
    serde_json::json!({
        "kind": e.kind.name(),
        "params": e.params_string(),
        "lhs": e.lhs_string(),
        "lhs_reading": if e.kind == FusionKind::Tri { None } else { Some(LHS_READING) },
        "terms": e.terms.iter().map(|t| serde_json::json!({
            "coeff": t.coeff, "q_power": t.q_power, "n": t.class.n, "m": t.class.m,
        })).collect::<Vec<_>>(),
        "ambiguity": e.ambiguity,
    })
}

fn multiset(classes: &[VClass]) -> Vec<VClass> {
    let mut v = classes.to_vec();
    v.sort();
    v
}

/// Compares an entry at `q = 1` with products in `k` when every class involved is in the dictionary.
fn dictionary_comparison(k: &KRing, e: &FusionEntry) -> Result<Option<(bool, String)>> {
    let image = |c: &VClass| k.v_class(c.n, c.m);
    let mut lhs = Poly::one(k.ring().vars());
    for c in &e.lhs_factors {
        match image(c) {
            Ok(p) => lhs = k.normal_form(&(&lhs * &p))?,
            Err(Error::NotDerivable(..)) => return Ok(None),
            Err(err) => return Err(err),
        }
    }
    let mut rhs = Poly::zero(k.ring().vars());
    for (c, mult) in e.classical() {
        match image(&c) {
            Ok(p) => rhs = &rhs + &p.scale(&crate::GaussianRational::from(mult)),
            Err(Error::NotDerivable(..)) => return Ok(None),
            Err(err) => return Err(err),
        }
    }
    let rhs = k.normal_form(&rhs)?;
    Ok(Some((lhs == rhs, format!("{} = {lhs} vs {} = {rhs}", e.lhs_string(), e.rhs_string()))))
}

/// The consistency sweep over `n` in `ns` and `l` in `ls`, plus the `tri` specializations.
pub fn fusion_sweep(k: &KRing, ns: std::ops::RangeInclusive<i64>, ls: std::ops::RangeInclusive<i64>) -> Result<(Report, Vec<FusionEntry>)> {
    let mut r = Report::new("fusion");
    let mut entries = Vec::new();
    r.check("left-hand side reading", true, LHS_READING);
    for n in ns.clone() {
        for l in ls.clone() {
            let p = FusionParams { n, l, ..Default::default() };
            let odin = fusion_table(FusionKind::Odin, p)?;
            let dva_params = FusionParams { n, l: l + n, ..Default::default() };
            let dva = fusion_table(FusionKind::Dva, dva_params)?;
            let same_factors = multiset(&odin.lhs_factors) == multiset(&dva.lhs_factors);
            r.check(
                format!("odin(l={l},n={n}) = dva(l={},n={n}) at q=1", l + n),
                same_factors && odin.classical() == dva.classical(),
                format!("{} | {}", odin.rhs_string(), dva.rhs_string()),
            );
            let dva_here = fusion_table(FusionKind::Dva, p)?;
            for (e, sign) in [(&odin, 1), (&dva_here, -1)] {
                let last = *e.terms.last().unwrap();
                let stated = stated_last_summand(n, sign)?;
                r.check(
                    format!("{}({}) last summand", e.kind.name(), e.params_string()),
                    e.terms.len() > 1 && last == stated,
                    format!("{last} vs stated {stated}"),
                );
            }
            for e in [&odin, &dva_here] {
                if let Some((ok, w)) = dictionary_comparison(k, e)? {
                    r.check(format!("{}({}) against the dictionary at q=1", e.kind.name(), e.params_string()), ok, w);
                }
            }
            entries.push(odin);
            entries.push(dva_here);
        }
    }
    for n in [0, 1] {
        for l in ls.clone() {
            let odin = fusion_table(FusionKind::Odin, FusionParams { n, l, ..Default::default() })?;
            let (a, b) = if n == 1 { (1, 1) } else { (0, 2) };
            let tri = fusion_table(FusionKind::Tri, FusionParams { a, b, l, ..Default::default() })?;
            r.skip(
                format!("odin(l={l},n={n}) against tri(a={a},b={b},l={l})"),
                format!("{}; tri gives {}", odin.ambiguity.clone().unwrap_or_default(), tri.rhs_string()),
            );
            entries.push(odin);
        }
    }
    for l in -2..=4 {
        let t = fusion_table(FusionKind::Tri, FusionParams { a: 1, b: 0, l, ..Default::default() })?;
        let expected = vec![term(0, 1 + l, 1)?];
        r.check(format!("tri(a=1,b=0,l={l}) is v(l+1)_1"), t.terms == expected, t.rhs_string());
        let t2 = fusion_table(FusionKind::Tri, FusionParams { a: 1, b: 1, l, ..Default::default() })?;
        let expected = vec![term(-l, 1 + 2 * l, 2)?];
        r.check(format!("tri(a=1,b=1,l={l}) is q^-l v(2l+1)_2"), t2.terms == expected, t2.rhs_string());
        entries.push(t);
        entries.push(t2);
    }
    let mut integral = true;
    for a in 0..=4 {
        for b in 0..=4 {
            for l in -4..=4 {
                integral &= (a * (1 - a) + l * (a + b) * (1 - a - b)) % 2 == 0;
                if a + b >= 1 && a + b <= 2 {
                    let t = fusion_table(FusionKind::Tri, FusionParams { a, b, l, ..Default::default() })?;
                    if let Some((ok, w)) = dictionary_comparison(k, &t)? {
                        r.check(format!("tri({}) against the dictionary at q=1", t.params_string()), ok, w);
                    }
                }
            }
        }
    }
    r.check("tri exponent is an integer for a, b in 0..4, l in -4..4", integral, "");
    Ok((r, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kring::abstract_vars;
    use crate::report::Status;

    fn tri(a: i64, b: i64, l: i64) -> String {
        fusion_table(FusionKind::Tri, FusionParams { a, b, l, n: 0 }).unwrap().to_string()
    }

    #[test]
    fn tri_specializations() {
        assert_eq!(tri(1, 1, 2), "q^-2 * v(5)_2");
        assert_eq!(tri(1, 0, 3), "v(4)_1");
        assert_eq!(tri(2, 0, 0), "q^-1 * v(2)_2");
        assert!(matches!(
            fusion_table(FusionKind::Tri, FusionParams { a: 0, b: 0, l: 1, n: 0 }),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn odin_and_dva_expansions() {
        let odin = fusion_table(FusionKind::Odin, FusionParams { n: 2, l: 1, ..Default::default() }).unwrap();
        assert_eq!(odin.to_string(), "q^-2 * v(4)_2 + q^2 * v(0)_0");
        assert_eq!(odin.lhs_string(), "q^-1 * v(3)_1 * v(1)_1");
        let dva = fusion_table(FusionKind::Dva, FusionParams { n: 5, l: 1, ..Default::default() }).unwrap();
        assert_eq!(dva.to_string(), "q^-4 * v(-3)_2 + q^-2 * v(3)_0 + q^-4 * v(1)_0");
        let amb = fusion_table(FusionKind::Odin, FusionParams { n: 1, l: 1, ..Default::default() }).unwrap();
        assert!(amb.ambiguity.is_some());
    }

    #[test]
    fn csv_rows() {
        let e = fusion_table(FusionKind::Tri, FusionParams { a: 1, b: 1, l: 2, n: 0 }).unwrap();
        assert_eq!(entries_to_csv(&[e]), "kind,params,term:coeff_q_power,n,m\ntri,a=1;b=1;l=2,1:-2,5,2\n");
    }

    #[test]
    fn sweep_passes_and_reports_ambiguity() {
        let rel = Poly::parse_in("a*b*c - b^2 - c^2 - 1", &abstract_vars()).unwrap();
        let k = KRing::new(&rel, &Default::default()).unwrap();
        let (r, _) = fusion_sweep(&k, 2..=6, 1..=4).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert_eq!(r.count(Status::SkippedAmbiguous), 8);
        assert!(r.checks.iter().any(|c| c.name == "dva(l=1;n=2) against the dictionary at q=1" && c.status == Status::Pass));
    }
}
