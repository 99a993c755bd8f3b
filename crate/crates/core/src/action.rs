//! Finite groups acting on Laurent rings by substitution, Reynolds averaging and
//! degree-bounded invariant generators.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fraction::{substitute_poly, Fraction};
use crate::groebner::{GbLimits, MonomialOrder};
use crate::ideal::{GroebnerBasis, Ideal, PolyRing};
use crate::laurent::{var_list, Exponents, VarList};
use crate::linalg::LinearSpan;
use crate::roots::DEFAULT_GROUP_CAP;
use crate::scalar::{Field, GaussianRational};
use crate::text::parse_poly;
use crate::{Frac, Poly};

type Q = GaussianRational;

/// A ring endomorphism given by the image of each variable in its domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    vars: VarList,
    images: Vec<Poly>,
}

impl Substitution {
    pub fn new(vars: &VarList, images: Vec<Poly>) -> Result<Self> {
        if images.len() != vars.len() {
            return Err(Error::Invalid("one image per variable is required".into()));
        }
        let images = images.into_iter().map(|p| p.with_vars(vars)).collect::<Result<Vec<_>>>()?;
        Ok(Substitution { vars: vars.clone(), images })
    }

    pub fn identity(vars: &VarList) -> Self {
        let images = vars.iter().map(|v| Poly::var(vars, v).unwrap()).collect();
        Substitution { vars: vars.clone(), images }
    }

    /// Builds from `(variable, image text)` pairs; the domain is the listed variables.
    pub fn from_pairs(pairs: &[(&str, &str)]) -> Result<Self> {
        let vars = var_list(&pairs.iter().map(|(v, _)| *v).collect::<Vec<_>>());
        let images = pairs.iter().map(|(_, s)| parse_poly(s, Some(&vars))).collect::<Result<Vec<_>>>()?;
        Self::new(&vars, images)
    }

    /// Parses a JSON table such as `{"y":"y^-1","z":"z^-1"}`.
    pub fn from_json(s: &str) -> Result<Self> {
        let map: serde_json::Map<String, serde_json::Value> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut pairs = Vec::new();
        for (k, v) in &map {
            let img = v.as_str().ok_or_else(|| Error::Parse(format!("image of `{k}` must be a string")))?;
            pairs.push((k.as_str(), img));
        }
        Self::from_pairs(&pairs)
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn image(&self, var: &str) -> Option<&Poly> {
        self.vars.iter().position(|v| v == var).map(|i| &self.images[i])
    }

    fn check_domain(&self, vars: &[String]) -> Result<()> {
        for v in vars {
            if !self.vars.contains(v) {
                return Err(Error::UnknownVariable(v.clone()));
            }
        }
        Ok(())
    }

    fn table(&self) -> HashMap<String, Poly> {
        self.vars.iter().cloned().zip(self.images.iter().cloned()).collect()
    }

    /// Applies the substitution; the result is expressed over the domain variables.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        self.check_domain(&f.occurring_vars())?;
        let f = f.with_vars(&self.vars)?;
        f.substitute(&self.table(), &self.vars)
    }

    /// Applies to numerator and denominator separately.
    pub fn apply_fraction(&self, f: &Frac) -> Result<Frac> {
        self.check_domain(&f.num().occurring_vars())?;
        self.check_domain(&f.den().occurring_vars())?;
        let table: HashMap<String, Frac> =
            self.vars.iter().cloned().zip(self.images.iter().map(|p| Fraction::from_poly(p.clone()))).collect();
        let n = substitute_poly(&f.num().with_vars(&self.vars)?, &table, &self.vars)?;
        let d = substitute_poly(&f.den().with_vars(&self.vars)?, &table, &self.vars)?;
        Ok(n.mul(&d.inverse()?))
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Substitution) -> Result<Substitution> {
        let images = other.images.iter().map(|p| self.apply(p)).collect::<Result<Vec<_>>>()?;
        Substitution::new(&self.vars, images)
    }

    pub fn is_identity(&self) -> bool {
        *self == Substitution::identity(&self.vars)
    }
}

/// A finite group generated by substitutions on a common domain.
#[derive(Debug, Clone)]
pub struct GroupAction {
    vars: VarList,
    generators: Vec<Substitution>,
    elements: Vec<Substitution>,
}

impl GroupAction {
    pub fn new(generators: Vec<Substitution>) -> Result<Self> {
        Self::with_cap(generators, DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(generators: Vec<Substitution>, cap: usize) -> Result<Self> {
        let first = generators.first().ok_or_else(|| Error::Invalid("at least one generator is required".into()))?;
        let vars = first.vars.clone();
        for g in &generators {
            if *g.vars != *vars {
                return Err(Error::Invalid("generators must share a domain".into()));
            }
        }
        let mut elements = vec![Substitution::identity(&vars)];
        let mut frontier = elements.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for g in &generators {
                    let e = g.compose(h)?;
                    if !elements.contains(&e) {
                        if elements.len() >= cap {
                            return Err(Error::GroupTooLarge(cap));
                        }
                        elements.push(e.clone());
                        next.push(e);
                    }
                }
            }
            frontier = next;
        }
        Ok(GroupAction { vars, generators, elements })
    }

    pub fn from_pairs(generators: &[&[(&str, &str)]]) -> Result<Self> {
        Self::new(generators.iter().map(|g| Substitution::from_pairs(g)).collect::<Result<Vec<_>>>()?)
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn generators(&self) -> &[Substitution] {
        &self.generators
    }

    pub fn elements(&self) -> &[Substitution] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn reynolds(&self, f: &Poly) -> Result<Poly> {
        let mut acc = Poly::zero(&self.vars);
        for g in &self.elements {
            acc = &acc + &g.apply(f)?;
        }
        Ok(acc.scale(&Q::ratio(1, self.order() as i64)))
    }

    pub fn reynolds_fraction(&self, f: &Frac) -> Result<Frac> {
        let mut acc = Fraction::zero(&self.vars);
        for g in &self.elements {
            acc = acc.add(&g.apply_fraction(f)?);
        }
        Ok(acc.scale(&Q::ratio(1, self.order() as i64)))
    }

    pub fn is_invariant(&self, f: &Poly) -> Result<bool> {
        let f = f.with_vars(&self.vars)?;
        for g in &self.generators {
            if g.apply(&f)? != f {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_invariant_fraction(&self, f: &Frac) -> Result<bool> {
        for g in &self.generators {
            if g.apply_fraction(f)? != *f {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Exponent vectors with sum of absolute values at most `bound`; negative entries
/// only where `allow_negative` is set.
pub fn exponent_box(allow_negative: &[bool], bound: u32) -> Vec<Exponents> {
    fn rec(i: usize, left: i32, neg: &[bool], cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i == neg.len() {
            out.push(cur.clone());
            return;
        }
        let lo = if neg[i] { -left } else { 0 };
        for k in lo..=left {
            cur.push(k);
            rec(i + 1, left - k.abs(), neg, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, bound as i32, allow_negative, &mut Vec::new(), &mut out);
    out.sort_by_key(|e| (e.iter().map(|x| x.unsigned_abs()).sum::<u32>(), std::cmp::Reverse(e.clone())));
    out
}

/// An invariant with the degree of the monomial it symmetrizes.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedInvariant {
    pub degree: u32,
    pub poly: Poly,
}

/// Output of [`invariant_generators`].
#[derive(Debug, Clone)]
pub struct InvariantGenerators {
    /// Generators needed without using any relation.
    pub generators: Vec<GradedInvariant>,
    /// Those generators that become redundant modulo the relations, with an
    /// expression of their normal form in the remaining ones.
    pub redundant: Vec<GradedInvariant>,
}

impl InvariantGenerators {
    pub fn polys(&self) -> Vec<Poly> {
        self.generators.iter().map(|g| g.poly.clone()).collect()
    }

    /// Generators minus the redundant ones.
    pub fn essential(&self) -> Vec<Poly> {
        self.generators.iter().filter(|g| !self.redundant.contains(g)).map(|g| g.poly.clone()).collect()
    }
}

/// Products of the given graded elements of total degree at most `bound`.
fn products_up_to(gens: &[GradedInvariant], bound: u32, vars: &VarList) -> Vec<Poly> {
    let mut out = vec![(0u32, Poly::one(vars))];
    for g in gens {
        if g.degree == 0 {
            continue;
        }
        let mut extra = Vec::new();
        for (d, p) in &out {
            let mut d2 = *d + g.degree;
            let mut q = p.clone();
            while d2 <= bound {
                q = &q * &g.poly;
                extra.push((d2, q.clone()));
                d2 += g.degree;
            }
        }
        out.extend(extra);
    }
    out.into_iter().map(|(_, p)| p).collect()
}

fn select(
    candidates: &[GradedInvariant],
    vars: &VarList,
    reduce: &dyn Fn(&Poly) -> Result<Poly>,
) -> Result<Vec<GradedInvariant>> {
    let mut kept: Vec<GradedInvariant> = Vec::new();
    for c in candidates {
        let lower: Vec<GradedInvariant> = kept.iter().filter(|k| k.degree < c.degree).cloned().collect();
        let mut span = LinearSpan::new();
        for p in products_up_to(&lower, c.degree, vars) {
            span.insert(&reduce(&p)?);
        }
        if !span.contains(&reduce(&c.poly)?) {
            kept.push(c.clone());
        }
    }
    Ok(kept)
}

/// Degree-bounded generators of the invariants of `action` in `ring` modulo `relations`.
///
/// Candidates are Reynolds images of monomials of absolute degree at most `bound`.
/// A candidate is kept unless it lies in the span of products of already kept
/// generators of strictly lower degree.
pub fn invariant_generators(
    action: &GroupAction,
    ring: &PolyRing,
    relations: &[Poly],
    bound: u32,
    limits: &GbLimits,
) -> Result<InvariantGenerators> {
    if bound == 0 {
        return Err(Error::OutOfRange("degree bound must be at least 1".into()));
    }
    let vars = ring.vars().clone();
    for v in vars.iter() {
        if !action.vars().contains(v) {
            return Err(Error::UnknownVariable(v.clone()));
        }
    }
    let neg: Vec<bool> = vars.iter().map(|v| ring.is_invertible(v)).collect();
    let mut candidates: Vec<GradedInvariant> = Vec::new();
    let mut seen = LinearSpan::new();
    for e in exponent_box(&neg, bound) {
        let degree: u32 = e.iter().map(|x| x.unsigned_abs()).sum();
        if degree == 0 {
            continue;
        }
        let m = Poly::monomial(&vars, e, Q::from(1));
        let r = action.reynolds(&m.with_vars(action.vars())?)?.with_vars(&vars)?;
        if r.is_zero() || seen.contains(&r) {
            continue;
        }
        seen.insert(&r);
        // Scale so that the orbit sum has integer-looking leading coefficient 1.
        let lc = r.leading().unwrap().1.clone();
        candidates.push(GradedInvariant { degree, poly: r.scale(&lc.inverse().unwrap()) });
    }
    let identity = |p: &Poly| -> Result<Poly> { Ok(p.clone()) };
    let generators = select(&candidates, &vars, &identity)?;
    let redundant = if relations.is_empty() {
        Vec::new()
    } else {
        let gb: GroebnerBasis<Q> = Ideal::new(ring.clone(), relations.to_vec())?.groebner(MonomialOrder::GrevLex, limits)?;
        let nf = |p: &Poly| gb.normal_form(p);
        let essential = select(&generators, &vars, &nf)?;
        generators.iter().filter(|g| !essential.contains(g)).cloned().collect()
    };
    Ok(InvariantGenerators { generators, redundant })
}

/// Checks that every Reynolds image of a monomial up to `bound` is a polynomial in
/// `gens`, using the subalgebra membership oracle.
pub fn generates_invariants_up_to(
    action: &GroupAction,
    ring: &PolyRing,
    gens: &[Poly],
    bound: u32,
    limits: &GbLimits,
) -> Result<bool> {
    let names: Vec<(String, Frac)> =
        gens.iter().enumerate().map(|(k, g)| (format!("_g{k}"), Fraction::from_poly(g.clone()))).collect();
    let sub = crate::ideal::Subalgebra::new(ring, &[], &names, limits)?;
    let neg: Vec<bool> = ring.vars().iter().map(|v| ring.is_invertible(v)).collect();
    for e in exponent_box(&neg, bound) {
        let m = Poly::monomial(ring.vars(), e, Q::from(1));
        let r = action.reynolds(&m.with_vars(action.vars())?)?.with_vars(ring.vars())?;
        if sub.express(&Fraction::from_poly(r))?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sorted canonical strings, for order-insensitive comparison of generator lists.
pub fn sorted_strings(polys: &[Poly]) -> Vec<String> {
    let mut v: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
    v.sort();
    v
}
