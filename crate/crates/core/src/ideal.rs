//! Ideals in mixed polynomial/Laurent rings.
//!
//! A variable declared invertible is represented internally by a pair `v, v'`
//! together with the relation `v*v' - 1`; every Gröbner computation is then an
//! ordinary polynomial computation.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::groebner::{groebner_basis, reduce, GbLimits, MonomialOrder, Poly};
use crate::laurent::{var_list, LaurentPoly, VarList};
use crate::scalar::Field;

/// A ring `k[x_1..x_n]` in which a chosen subset of variables is inverted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    vars: VarList,
    invertible: Vec<bool>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S], invertible: &[S]) -> Result<Self> {
        let names: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.clone()) {
                return Err(Error::Invalid(format!("duplicate variable `{n}`")));
            }
        }
        for v in invertible {
            if !names.iter().any(|n| n == v.as_ref()) {
                return Err(Error::UnknownVariable(v.as_ref().to_string()));
            }
        }
        let invertible = names.iter().map(|n| invertible.iter().any(|v| v.as_ref() == n)).collect();
        Ok(PolyRing { vars: var_list(&names), invertible })
    }

    pub fn polynomial<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::new(vars, &[]).expect("distinct variable names")
    }

    pub fn laurent<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::new(vars, vars).expect("distinct variable names")
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn is_invertible(&self, name: &str) -> bool {
        self.vars.iter().position(|v| v == name).is_some_and(|i| self.invertible[i])
    }

    pub fn invertible_vars(&self) -> Vec<String> {
        self.vars.iter().zip(&self.invertible).filter(|(_, &b)| b).map(|(v, _)| v.clone()).collect()
    }

    /// The same ring with variables listed in a new order (a permutation, or a subset).
    pub fn restrict<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self> {
        let names: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let inv: Vec<String> = names.iter().filter(|v| self.is_invertible(v)).cloned().collect();
        for v in vars {
            if !self.vars.iter().any(|w| w == v.as_ref()) {
                return Err(Error::UnknownVariable(v.as_ref().to_string()));
            }
        }
        Self::new(&names, &inv)
    }

    /// Adjoins new variables at the front or back.
    pub fn extend(&self, front: &[(&str, bool)], back: &[(&str, bool)]) -> Result<Self> {
        let mut names: Vec<String> = front.iter().map(|(v, _)| v.to_string()).collect();
        names.extend(self.vars.iter().cloned());
        names.extend(back.iter().map(|(v, _)| v.to_string()));
        let mut inv: Vec<String> = front.iter().filter(|(_, b)| *b).map(|(v, _)| v.to_string()).collect();
        inv.extend(self.invertible_vars());
        inv.extend(back.iter().filter(|(_, b)| *b).map(|(v, _)| v.to_string()));
        Self::new(&names, &inv)
    }

    /// Internal variable names: each invertible `v` is preceded by its partner `v'`.
    pub fn internal_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (v, &inv) in self.vars.iter().zip(&self.invertible) {
            if inv {
                out.push(format!("{v}'"));
            }
            out.push(v.clone());
        }
        out
    }

    fn internal_positions(&self) -> Vec<(usize, Option<usize>)> {
        let mut pos = 0;
        self.invertible
            .iter()
            .map(|&inv| {
                let p = pos;
                pos += if inv { 2 } else { 1 };
                if inv { (p + 1, Some(p)) } else { (p, None) }
            })
            .collect()
    }

    fn internal_len(&self) -> usize {
        self.invertible.iter().map(|&b| if b { 2 } else { 1 }).sum()
    }

    /// Number of internal variables occupied by the first `n` ring variables.
    pub fn block_len(&self, n: usize) -> usize {
        self.invertible[..n].iter().map(|&b| if b { 2 } else { 1 }).sum()
    }

    fn internal_order(&self, order: MonomialOrder) -> MonomialOrder {
        match order {
            MonomialOrder::Elim(k) => MonomialOrder::Elim(self.block_len(k.min(self.vars.len()))),
            o => o,
        }
    }

    fn to_internal<F: Field>(&self, f: &LaurentPoly<F>, order: MonomialOrder) -> Result<Poly<F>> {
        let f = f.with_vars(&self.vars)?;
        let pos = self.internal_positions();
        let n = self.internal_len();
        let mut terms = Vec::with_capacity(f.num_terms());
        for (e, c) in f.terms() {
            let mut ie = vec![0u16; n];
            for (i, &k) in e.iter().enumerate() {
                if k >= 0 {
                    ie[pos[i].0] = k as u16;
                } else {
                    let p = pos[i].1.ok_or_else(|| {
                        Error::NotUnit(format!("negative power of non-invertible variable `{}`", self.vars[i]))
                    })?;
                    ie[p] = (-k) as u16;
                }
            }
            terms.push((ie, c.clone()));
        }
        Ok(Poly::from_unsorted(terms, order))
    }

    fn to_laurent<F: Field>(&self, p: &Poly<F>) -> LaurentPoly<F> {
        let pos = self.internal_positions();
        let mut out = LaurentPoly::zero(&self.vars);
        for (ie, c) in &p.terms {
            let e: Vec<i32> = pos
                .iter()
                .map(|(a, b)| ie[*a] as i32 - b.map_or(0, |b| ie[b] as i32))
                .collect();
            out.add_term(e, c.clone());
        }
        out
    }

    fn internal_as_laurent<F: Field>(&self, p: &Poly<F>) -> LaurentPoly<F> {
        let vars = var_list(&self.internal_names());
        LaurentPoly::from_terms(&vars, p.terms.iter().map(|(e, c)| (e.iter().map(|&x| x as i32).collect(), c.clone())))
    }

    fn unit_relations<F: Field>(&self, order: MonomialOrder) -> Vec<Poly<F>> {
        let n = self.internal_len();
        self.internal_positions()
            .iter()
            .filter_map(|&(a, b)| b.map(|b| (a, b)))
            .map(|(a, b)| {
                let mut e = vec![0u16; n];
                e[a] = 1;
                e[b] = 1;
                Poly::from_unsorted(vec![(e, F::one()), (vec![0; n], -F::one())], order)
            })
            .collect()
    }
}

/// An ideal given by generators.
#[derive(Debug, Clone)]
pub struct Ideal<F> {
    ring: PolyRing,
    gens: Vec<LaurentPoly<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: PolyRing, gens: Vec<LaurentPoly<F>>) -> Result<Self> {
        let gens = gens.into_iter().map(|g| g.with_vars(ring.vars())).collect::<Result<Vec<_>>>()?;
        for g in &gens {
            ring.to_internal(g, MonomialOrder::GrevLex)?;
        }
        Ok(Ideal { ring, gens })
    }

    pub fn zero(ring: PolyRing) -> Self {
        Ideal { ring, gens: Vec::new() }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[LaurentPoly<F>] {
        &self.gens
    }

    pub fn with_generator(&self, g: LaurentPoly<F>) -> Result<Self> {
        let mut gens = self.gens.clone();
        gens.push(g);
        Ideal::new(self.ring.clone(), gens)
    }

    /// Re-expresses the ideal in a ring that contains all its variables.
    pub fn in_ring(&self, ring: &PolyRing) -> Result<Self> {
        Ideal::new(ring.clone(), self.gens.clone())
    }

    pub fn groebner(&self, order: MonomialOrder, limits: &GbLimits) -> Result<GroebnerBasis<F>> {
        let iorder = self.ring.internal_order(order);
        let mut gens = self.ring.unit_relations(iorder);
        for g in &self.gens {
            gens.push(self.ring.to_internal(g, iorder)?);
        }
        let polys = groebner_basis(&gens, iorder, limits)?;
        Ok(GroebnerBasis { ring: self.ring.clone(), order, polys, limits: *limits })
    }

    /// Whether two ideals in the same ring coincide (compared through reduced bases).
    pub fn same_as(&self, other: &Self, limits: &GbLimits) -> Result<bool> {
        let other = other.in_ring(&self.ring)?;
        let a = self.groebner(MonomialOrder::GrevLex, limits)?;
        let b = other.groebner(MonomialOrder::GrevLex, limits)?;
        Ok(a.polys == b.polys)
    }

    /// Reduced grevlex generators, each scaled so that its largest term in
    /// lexicographic order has coefficient 1; unit relations are omitted.
    pub fn reduced_generators(&self, limits: &GbLimits) -> Result<Vec<LaurentPoly<F>>> {
        let gb = self.groebner(MonomialOrder::GrevLex, limits)?;
        Ok(gb.generators().into_iter().map(lex_monic).collect())
    }
}

/// Scales so that the lexicographically leading term has coefficient 1.
pub fn lex_monic<F: Field>(p: LaurentPoly<F>) -> LaurentPoly<F> {
    match p.leading().map(|(_, c)| c.inverse()) {
        Some(Some(inv)) => p.scale(&inv),
        _ => p,
    }
}

/// A reduced Gröbner basis attached to a ring and an order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis<F> {
    ring: PolyRing,
    order: MonomialOrder,
    polys: Vec<Poly<F>>,
    limits: GbLimits,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Basis elements over the internal variables (partners written `v'`).
    pub fn internal_generators(&self) -> Vec<LaurentPoly<F>> {
        self.polys.iter().map(|p| self.ring.internal_as_laurent(p)).collect()
    }

    /// Basis elements read back as Laurent polynomials, with the unit relations dropped.
    pub fn generators(&self) -> Vec<LaurentPoly<F>> {
        let mut out: Vec<LaurentPoly<F>> = Vec::new();
        for p in &self.polys {
            let l = self.ring.to_laurent(p);
            if !l.is_zero() && !out.contains(&l) {
                out.push(l);
            }
        }
        out
    }

    pub fn into_ideal(self) -> Ideal<F> {
        let gens = self.generators();
        Ideal { ring: self.ring, gens }
    }

    fn nf_internal(&self, f: &LaurentPoly<F>) -> Result<Poly<F>> {
        let iorder = self.ring.internal_order(self.order);
        let p = self.ring.to_internal(f, iorder)?;
        let refs: Vec<&Poly<F>> = self.polys.iter().collect();
        reduce(&p, &refs, iorder, &self.limits)
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &LaurentPoly<F>) -> Result<LaurentPoly<F>> {
        Ok(self.ring.to_laurent(&self.nf_internal(f)?))
    }

    /// As [`normal_form`](Self::normal_form), insisting the caller expects `order`.
    pub fn normal_form_in(&self, f: &LaurentPoly<F>, order: MonomialOrder) -> Result<LaurentPoly<F>> {
        if order != self.order {
            return Err(Error::OrderMismatch(format!("basis computed for {:?}, requested {:?}", self.order, order)));
        }
        self.normal_form(f)
    }

    pub fn contains(&self, f: &LaurentPoly<F>) -> Result<bool> {
        Ok(self.nf_internal(f)?.is_zero())
    }
}

/// `I ∩ k[keep]`, computed with the discarded variables in the leading block.
pub fn eliminate<F: Field, S: AsRef<str>>(ideal: &Ideal<F>, keep: &[S], limits: &GbLimits) -> Result<Ideal<F>> {
    let keep: Vec<String> = keep.iter().map(|s| s.as_ref().to_string()).collect();
    for k in &keep {
        if !ideal.ring.vars().contains(k) {
            return Err(Error::UnknownVariable(k.clone()));
        }
    }
    let kept: Vec<String> = ideal.ring.vars().iter().filter(|v| keep.contains(v)).cloned().collect();
    let dropped: Vec<String> = ideal.ring.vars().iter().filter(|v| !keep.contains(v)).cloned().collect();
    let mut order_vars = dropped.clone();
    order_vars.extend(kept.iter().cloned());
    let ring = ideal.ring.restrict(&order_vars)?;
    let gb = ideal.in_ring(&ring)?.groebner(MonomialOrder::Elim(dropped.len()), limits)?;
    let target = ideal.ring.restrict(&kept)?;
    let block = ring.block_len(dropped.len());
    let mut gens = Vec::new();
    for p in &gb.polys {
        if p.terms.iter().all(|(e, _)| e[..block].iter().all(|&x| x == 0)) {
            let l = ring.to_laurent(p);
            if !l.is_zero() {
                gens.push(l.with_vars(target.vars())?);
            }
        }
    }
    Ideal::new(target, gens)
}

fn fresh_name(ring: &PolyRing, base: &str) -> String {
    let mut name = base.to_string();
    while ring.vars().contains(&name) {
        name.push('_');
    }
    name
}

/// `I : f^∞`, via an auxiliary variable `s` with `s*f - 1` and elimination of `s`.
pub fn saturate<F: Field>(ideal: &Ideal<F>, f: &LaurentPoly<F>, limits: &GbLimits) -> Result<Ideal<F>> {
    if f.is_zero() {
        return Err(Error::Invalid("cannot saturate by zero".into()));
    }
    let s = fresh_name(&ideal.ring, "_sat");
    let ring = ideal.ring.extend(&[(&s, false)], &[])?;
    let svar = LaurentPoly::var(ring.vars(), &s)?;
    let f = f.with_vars(ring.vars())?;
    let aux = &(&svar * &f) - &LaurentPoly::one(ring.vars());
    let ext = ideal.in_ring(&ring)?.with_generator(aux)?;
    let kept: Vec<String> = ideal.ring.vars().to_vec();
    eliminate(&ext, &kept, limits)
}

/// Writes `f` as `num / den` where neither has a negative power of a non-invertible variable.
pub fn clear_for_ring<F: Field>(f: &Fraction<F>, ring: &PolyRing) -> Result<(LaurentPoly<F>, LaurentPoly<F>)> {
    let num = f.num().with_vars(ring.vars())?;
    let den = f.den().with_vars(ring.vars())?;
    let mut shift = vec![0i32; ring.vars().len()];
    for (i, v) in ring.vars().iter().enumerate() {
        if !ring.is_invertible(v) {
            let lo = num.terms().map(|(e, _)| e[i]).chain(den.terms().map(|(e, _)| e[i])).min().unwrap_or(0);
            shift[i] = (-lo).max(0);
        }
    }
    Ok((num.shift(&shift), den.shift(&shift)))
}

/// The subalgebra of `target / relations` (localized at the denominators) generated by
/// named fractions, with an elimination basis that decides membership and yields
/// polynomial expressions in the generator names.
#[derive(Debug, Clone)]
pub struct Subalgebra<F> {
    target: PolyRing,
    names: Vec<String>,
    ring: PolyRing,
    inverse_name: String,
    den_product: LaurentPoly<F>,
    gb: GroebnerBasis<F>,
}

impl<F: Field> Subalgebra<F> {
    pub fn new(
        target: &PolyRing,
        relations: &[LaurentPoly<F>],
        images: &[(String, Fraction<F>)],
        limits: &GbLimits,
    ) -> Result<Self> {
        let inverse_name = fresh_name(target, "_inv");
        let names: Vec<String> = images.iter().map(|(n, _)| n.clone()).collect();
        for n in &names {
            if target.vars().contains(n) {
                return Err(Error::Invalid(format!("generator name `{n}` clashes with a target variable")));
            }
        }
        let mut back: Vec<(&str, bool)> = vec![(inverse_name.as_str(), false)];
        back.extend(names.iter().map(|n| (n.as_str(), false)));
        let ring = target.extend(&[], &back)?;
        let vars = ring.vars().clone();
        let mut gens: Vec<LaurentPoly<F>> = relations.iter().map(|r| r.with_vars(&vars)).collect::<Result<_>>()?;
        let mut den_product = LaurentPoly::one(target.vars());
        for (name, f) in images {
            let (n, d) = clear_for_ring(f, target)?;
            let x = LaurentPoly::var(&vars, name)?;
            gens.push(&(&x * &d.with_vars(&vars)?) - &n.with_vars(&vars)?);
            den_product = &den_product * &d;
        }
        let s = LaurentPoly::var(&vars, &inverse_name)?;
        if !den_product.is_constant() {
            gens.push(&(&s * &den_product.with_vars(&vars)?) - &LaurentPoly::one(&vars));
        }
        let gb = Ideal::new(ring.clone(), gens)?.groebner(MonomialOrder::Elim(target.vars().len() + 1), limits)?;
        Ok(Subalgebra { target: target.clone(), names, ring, inverse_name, den_product, gb })
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    /// Relations among the generators (the kernel of the presenting map).
    pub fn kernel(&self) -> Result<Ideal<F>> {
        let names_ring = PolyRing::polynomial(&self.names);
        let mut gens = Vec::new();
        for g in self.gb.generators() {
            if g.occurring_vars().iter().all(|v| self.names.contains(v)) {
                gens.push(g.with_vars(names_ring.vars())?);
            }
        }
        Ideal::new(names_ring, gens)
    }

    /// A polynomial in the generators equal to `f`, or `None` if `f` is not in the subalgebra.
    /// Errors when the denominator of `f` is not a factor of a power of the generator denominators.
    pub fn express(&self, f: &Fraction<F>) -> Result<Option<LaurentPoly<F>>> {
        let (n, d) = clear_for_ring(f, &self.target)?;
        let mut power = LaurentPoly::one(self.target.vars());
        for k in 0..=12 {
            if let Some(q) = power.div_exact(&d) {
                if clear_ok(&q, &self.target) {
                    let vars = self.ring.vars().clone();
                    let s = LaurentPoly::var(&vars, &self.inverse_name)?.pow(k);
                    let g = &(&n * &q).with_vars(&vars)? * &s;
                    let nf = self.gb.normal_form(&g)?;
                    if nf.occurring_vars().iter().all(|v| self.names.contains(v)) {
                        return Ok(Some(nf.with_vars(&var_list(&self.names))?));
                    }
                    return Ok(None);
                }
            }
            power = &power * &self.den_product;
        }
        Err(Error::NonWallDenominator(format!("{:?}", f.den())))
    }
}

fn clear_ok<F: Field>(p: &LaurentPoly<F>, ring: &PolyRing) -> bool {
    ring.vars().iter().enumerate().all(|(i, v)| ring.is_invertible(v) || p.terms().all(|(e, _)| e[i] >= 0))
}
