//! Affine blow-ups of products of tori and Cartan algebras along the root walls.
//!
//! A flavor names the two factors. The first factor carries the numerators
//! `¹α - ε₁`, the second the wall equations `²α - ε₂` (ε is 0 on a Lie factor and
//! 1 on a group factor). The ring is presented by one generator `T_α` per positive
//! root, modulo the saturation of `T_α (²α - ε₂) - (¹α - ε₁)` by the wall product.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::action::{exponent_box, GroupAction, Substitution};
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::groebner::{GbLimits, MonomialOrder};
use crate::ideal::{clear_for_ring, saturate, GroebnerBasis, Ideal, PolyRing};
use crate::laurent::{var_list, VarList};
use crate::roots::{pairing, RootDatum, Vector};
use num_traits::Zero;

use crate::scalar::{Field, GaussianRational};
use crate::{Frac, Poly};

type Q = GaussianRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    /// The Cartan algebra, with linear coordinates.
    Lie,
    /// The maximal torus.
    Group,
    /// The dual torus.
    DualGroup,
}

impl Factor {
    pub fn is_multiplicative(self) -> bool {
        self != Factor::Lie
    }
}

/// The pair of factors of a blow-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Flavor {
    pub first: Factor,
    pub second: Factor,
}

impl Flavor {
    pub const GG_LIE: Flavor = Flavor { first: Factor::Lie, second: Factor::Lie };
    pub const LIE_GROUP: Flavor = Flavor { first: Factor::Lie, second: Factor::Group };
    pub const GROUP_LIE: Flavor = Flavor { first: Factor::Group, second: Factor::Lie };
    pub const GROUP_GROUP: Flavor = Flavor { first: Factor::Group, second: Factor::Group };
    pub const DUAL_GROUP: Flavor = Flavor { first: Factor::DualGroup, second: Factor::Group };

    /// All five flavors in a fixed order.
    pub fn all() -> [Flavor; 5] {
        [Self::GG_LIE, Self::LIE_GROUP, Self::GROUP_LIE, Self::GROUP_GROUP, Self::DUAL_GROUP]
    }

    /// Parses the short names `gg`, `Gg`, `gG`, `GG`, `GGv`.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "gg" => Self::GG_LIE,
            "Gg" => Self::LIE_GROUP,
            "gG" => Self::GROUP_LIE,
            "GG" => Self::GROUP_GROUP,
            "GGv" => Self::DUAL_GROUP,
            _ => return Err(Error::Parse(format!("unknown flavor `{s}` (expected gg, Gg, gG, GG, GGv)"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match (self.first, self.second) {
            (Factor::Lie, Factor::Lie) => "gg",
            (Factor::Lie, Factor::Group) => "Gg",
            (Factor::Group, Factor::Lie) => "gG",
            (Factor::Group, Factor::Group) => "GG",
            (Factor::DualGroup, Factor::Group) => "GGv",
            _ => "invalid",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn coordinate_names(base: &str, rank: usize) -> Vec<String> {
    if rank == 1 {
        vec![base.to_string()]
    } else {
        (1..=rank).map(|i| format!("{base}{i}")).collect()
    }
}

/// Result of a membership test: a polynomial in the ring generators when the
/// fraction lies in the blow-up.
#[derive(Debug, Clone, PartialEq)]
pub struct Membership {
    pub member: bool,
    pub certificate: Option<Poly>,
}

/// An invariant element of the blow-up with its provenance.
#[derive(Debug, Clone)]
pub struct InvariantElement {
    /// Canonical text of the symmetrized monomial, e.g. `y^-1*z*T`.
    pub label: String,
    /// Total degree `|m| + Σ k_α` of the symmetrized monomial.
    pub degree: u32,
    pub fraction: Frac,
    pub certificate: Poly,
}

#[derive(Debug)]
pub struct BlowupAlgebra {
    datum: RootDatum,
    flavor: Flavor,
    first_vars: Vec<String>,
    second_vars: Vec<String>,
    t_vars: Vec<String>,
    base_ring: PolyRing,
    ring: PolyRing,
    defining: Vec<Frac>,
    walls: Vec<Poly>,
    relations: Ideal<Q>,
    presentation: Vec<Poly>,
    limits: GbLimits,
    relation_gb: OnceLock<GroebnerBasis<Q>>,
    membership_gb: OnceLock<(PolyRing, GroebnerBasis<Q>)>,
    weyl: GroupAction,
}

impl BlowupAlgebra {
    pub fn build(datum: &RootDatum, flavor: Flavor, limits: &GbLimits) -> Result<Self> {
        if flavor.second == Factor::DualGroup {
            return Err(Error::Invalid("the second factor must be the Cartan algebra or the torus".into()));
        }
        let rank = datum.rank();
        let first_base = match (flavor.first, flavor.second) {
            (Factor::Lie, Factor::Lie) => "u",
            (Factor::Lie, _) => "x",
            (Factor::Group, _) => "y",
            (Factor::DualGroup, _) => "t",
        };
        let second_base = if flavor.second == Factor::Lie { "x" } else { "z" };
        let first_vars = coordinate_names(first_base, rank);
        let second_vars = coordinate_names(second_base, rank);
        let npos = datum.positive_roots().len();
        let t_vars = if npos == 1 { vec!["T".to_string()] } else { (1..=npos).map(|i| format!("T{i}")).collect() };

        let mut base_names = first_vars.clone();
        base_names.extend(second_vars.iter().cloned());
        let mut inv: Vec<String> = Vec::new();
        if flavor.first.is_multiplicative() {
            inv.extend(first_vars.iter().cloned());
        }
        if flavor.second.is_multiplicative() {
            inv.extend(second_vars.iter().cloned());
        }
        let base_ring = PolyRing::new(&base_names, &inv)?;
        let mut all_names = base_names.clone();
        all_names.extend(t_vars.iter().cloned());
        let ring = PolyRing::new(&all_names, &inv)?;
        let bvars = base_ring.vars().clone();

        let mut defining = Vec::new();
        let mut walls = Vec::new();
        let mut gens = Vec::new();
        for (k, coords) in datum.positive_root_coords().iter().enumerate() {
            let root = &datum.positive_roots()[k];
            let coroot = &datum.positive_coroots()[k];
            let numer = factor_character(flavor.first, &first_vars, root, coroot, coords, &bvars)?;
            let wall = factor_character(flavor.second, &second_vars, root, coroot, coords, &bvars)?;
            let t = Poly::var(ring.vars(), &t_vars[k])?;
            gens.push(&(&t * &wall.with_vars(ring.vars())?) - &numer.with_vars(ring.vars())?);
            defining.push(Fraction::new(numer, wall.clone())?);
            walls.push(wall);
        }
        let wall_product = walls.iter().fold(Poly::one(&bvars), |acc, w| &acc * w);
        let naive = Ideal::new(ring.clone(), gens.clone())?;
        let relations = saturate(&naive, &wall_product.with_vars(ring.vars())?, limits)?;
        let weyl = weyl_action(datum, flavor, &first_vars, &second_vars, &bvars)?;
        Ok(BlowupAlgebra {
            datum: datum.clone(),
            flavor,
            first_vars,
            second_vars,
            t_vars,
            base_ring,
            ring,
            defining,
            walls,
            relations,
            presentation: gens,
            limits: *limits,
            relation_gb: OnceLock::new(),
            membership_gb: OnceLock::new(),
            weyl,
        })
    }

    /// The rank-one algebra attached to `SL_2`.
    pub fn rank_one(flavor: Flavor, limits: &GbLimits) -> Result<Self> {
        Self::build(&RootDatum::sl2(), flavor, limits)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn first_vars(&self) -> &[String] {
        &self.first_vars
    }

    pub fn second_vars(&self) -> &[String] {
        &self.second_vars
    }

    pub fn t_vars(&self) -> &[String] {
        &self.t_vars
    }

    /// Ring of the two factors (without the blow-up generators).
    pub fn base_ring(&self) -> &PolyRing {
        &self.base_ring
    }

    /// Ring of the presentation: both factors plus the generators `T_α`.
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn relations(&self) -> &Ideal<Q> {
        &self.relations
    }

    pub fn limits(&self) -> &GbLimits {
        &self.limits
    }

    /// Defining fractions `(¹α - ε₁)/(²α - ε₂)`, one per positive root.
    pub fn defining_fractions(&self) -> &[Frac] {
        &self.defining
    }

    /// Wall equations `²α - ε₂`, one per positive root.
    pub fn walls(&self) -> &[Poly] {
        &self.walls
    }

    pub fn weyl_action(&self) -> &GroupAction {
        &self.weyl
    }

    /// Generators of the presentation as fractions in the base coordinates.
    pub fn generator_fractions(&self) -> Vec<(String, Frac)> {
        let bvars = self.base_ring.vars();
        let mut out: Vec<(String, Frac)> = self
            .first_vars
            .iter()
            .chain(&self.second_vars)
            .map(|v| (v.clone(), Fraction::from_poly(Poly::var(bvars, v).unwrap())))
            .collect();
        out.extend(self.t_vars.iter().cloned().zip(self.defining.iter().cloned()));
        out
    }

    pub fn relation_basis(&self) -> Result<&GroebnerBasis<Q>> {
        if let Some(gb) = self.relation_gb.get() {
            return Ok(gb);
        }
        let gb = self.relations.groebner(MonomialOrder::GrevLex, &self.limits)?;
        Ok(self.relation_gb.get_or_init(|| gb))
    }

    fn membership_basis(&self) -> Result<&(PolyRing, GroebnerBasis<Q>)> {
        if let Some(v) = self.membership_gb.get() {
            return Ok(v);
        }
        let s = "_S";
        let ring = self.ring.extend(&[(s, false)], &[])?;
        let w = self.wall_product().with_vars(ring.vars())?;
        let aux = &(&Poly::var(ring.vars(), s)? * &w) - &Poly::one(ring.vars());
        let ideal = self.relations.in_ring(&ring)?.with_generator(aux)?;
        let gb = ideal.groebner(MonomialOrder::Elim(1), &self.limits)?;
        Ok(self.membership_gb.get_or_init(|| (ring, gb)))
    }

    pub fn wall_product(&self) -> Poly {
        self.walls.iter().fold(Poly::one(self.base_ring.vars()), |acc, w| &acc * w)
    }

    /// Substitutes the defining fractions for the `T_α`.
    pub fn to_fraction(&self, p: &Poly) -> Result<Frac> {
        let table = self.t_vars.iter().cloned().zip(self.defining.iter().cloned()).collect();
        let p = p.with_vars(self.ring.vars())?;
        let f = crate::fraction::substitute_poly(&p, &table, self.base_ring.vars())?;
        Ok(f)
    }

    /// Decides whether `f` (a fraction over the presentation ring whose denominator
    /// divides a unit times a power of the wall product) lies in the blow-up.
    pub fn membership(&self, f: &Frac) -> Result<Membership> {
        let (ring, gb) = self.membership_basis()?;
        let f = f.with_vars(self.ring.vars()).map_err(|_| {
            Error::UnknownVariable(format!("fraction involves variables outside {:?}", self.ring.vars()))
        })?;
        let (n, d) = clear_for_ring(&f, &self.ring)?;
        let w = self.wall_product().with_vars(self.ring.vars())?;
        let mut power = Poly::one(self.ring.vars());
        for k in 0..=16u32 {
            if let Some(q) = power.div_exact(&d) {
                if nonnegative_on_noninvertible(&q, &self.ring) {
                    let s = Poly::var(ring.vars(), "_S")?.pow(k);
                    let g = &(&n * &q).with_vars(ring.vars())? * &s;
                    let nf = gb.normal_form(&g)?;
                    if nf.occurring_vars().iter().any(|v| v == "_S") {
                        return Ok(Membership { member: false, certificate: None });
                    }
                    return Ok(Membership { member: true, certificate: Some(nf.with_vars(self.ring.vars())?) });
                }
            }
            power = &power * &w;
        }
        Err(Error::NonWallDenominator(d.to_string()))
    }

    /// Membership of a fraction in the base coordinates that must also be W-invariant.
    pub fn invariant_membership(&self, f: &Frac) -> Result<Membership> {
        let fb = f.with_vars(self.base_ring.vars())?;
        if !self.weyl.is_invariant_fraction(&fb)? {
            return Ok(Membership { member: false, certificate: None });
        }
        self.membership(f)
    }

    /// Whether the presentation relation `T_α (²α - ε₂) - (¹α - ε₁)` lies in the relation ideal.
    pub fn defining_relations_hold(&self) -> Result<bool> {
        let gb = self.relation_basis()?;
        for g in &self.presentation {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Spot check of the domain property: no generator is a zero divisor modulo the relations.
    pub fn generators_are_nonzerodivisors(&self) -> Result<bool> {
        for v in self.ring.vars().iter() {
            let g = Poly::var(self.ring.vars(), v)?;
            let sat = saturate(&self.relations, &g, &self.limits)?;
            if !sat.same_as(&self.relations, &self.limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `∏_{α∈R} (²α - ε₂)` over all roots, in the second-factor coordinates.
    pub fn discriminant(&self) -> Result<Poly> {
        let bvars = self.base_ring.vars();
        let mut acc = Poly::one(bvars);
        let n = self.datum.positive_roots().len();
        for k in 0..n {
            let coords = &self.datum.positive_root_coords()[k];
            for sign in [1i64, -1] {
                let root: Vector = self.datum.positive_roots()[k].iter().map(|x| sign * x).collect();
                let coroot: Vector = self.datum.positive_coroots()[k].iter().map(|x| sign * x).collect();
                let c: Vector = coords.iter().map(|x| sign * x).collect();
                acc = &acc * &factor_character(self.flavor.second, &self.second_vars, &root, &coroot, &c, bvars)?;
            }
        }
        Ok(acc)
    }

    /// Reynolds images of `m * ∏ T_α^{k_α}` for base monomials `m` of absolute degree at
    /// most `base_degree` and `k_α ∈ {0, .., t_degree}`, deduplicated up to scalars.
    pub fn invariant_elements(&self, base_degree: u32, t_degree: u32) -> Result<Vec<InvariantElement>> {
        let nt = self.t_vars.len() as u32;
        self.symmetrized(base_degree + t_degree * nt, &|base, ts| {
            base <= base_degree && ts.iter().all(|&k| k as u32 <= t_degree)
        })
    }

    /// As [`Self::invariant_elements`], bounding the total degree `|m| + Σ k_α` instead.
    pub fn invariant_elements_total(&self, bound: u32) -> Result<Vec<InvariantElement>> {
        self.symmetrized(bound, &|base, ts| base + ts.iter().map(|&k| k as u32).sum::<u32>() <= bound)
    }

    fn symmetrized(&self, bound: u32, keep: &dyn Fn(u32, &[i32]) -> bool) -> Result<Vec<InvariantElement>> {
        let mut neg: Vec<bool> = self.base_ring.vars().iter().map(|v| self.base_ring.is_invertible(v)).collect();
        let nbase = neg.len();
        neg.extend(std::iter::repeat_n(false, self.t_vars.len()));
        let mut seen: HashSet<String> = HashSet::new();
        let mut out = Vec::new();
        for full in exponent_box(&neg, bound) {
            let base: u32 = full[..nbase].iter().map(|k| k.unsigned_abs()).sum();
            if !keep(base, &full[nbase..]) {
                continue;
            }
            let degree = base + full[nbase..].iter().map(|&k| k as u32).sum::<u32>();
            let mono = Poly::monomial(self.ring.vars(), full, Q::from(1));
            let frac = self.to_fraction(&mono)?;
            let r = self.weyl.reynolds_fraction(&frac)?;
            if r.is_zero() {
                continue;
            }
            let lc = r.num().leading().unwrap().1.clone();
            let r = r.scale(&lc.inverse().unwrap());
            if r.as_poly().is_some_and(|p| p.is_constant()) {
                continue;
            }
            if !seen.insert(format!("{}|{}", r.num(), r.den())) {
                continue;
            }
            let m = self.membership(&r)?;
            let certificate = m
                .certificate
                .ok_or_else(|| Error::NotMember(format!("invariant {mono} is not in the blow-up")))?;
            out.push(InvariantElement { label: mono.to_string(), degree, fraction: r, certificate });
        }
        Ok(out)
    }

    /// Evaluates conditions of the form `χ(f(wall)) = 1` on a unit-valued map from
    /// the second factor to the first, given by one `c * monomial` per first-factor coordinate.
    /// `χ` is the root for a torus target and the coroot for a dual-torus target; maps
    /// into a Cartan algebra carry no condition.
    pub fn denis_check(&self, components: &[Poly]) -> Result<bool> {
        let rank = self.datum.rank();
        if components.len() != rank {
            return Err(Error::Invalid(format!("expected {rank} components, got {}", components.len())));
        }
        let second: VarList = var_list(&self.second_vars);
        let mut consts = Vec::new();
        let mut exps = Vec::new();
        for f in components {
            let f = f.with_vars(&second).map_err(|_| Error::NotUnit(format!("{f} is not a map on the second factor")))?;
            let (c, e) = f.as_unit().ok_or_else(|| Error::NotUnit(f.to_string()))?;
            if c.is_zero() {
                return Err(Error::NotUnit(f.to_string()));
            }
            if self.flavor.second == Factor::Lie && e.iter().any(|&k| k != 0) {
                return Err(Error::NotUnit(format!("{f} is not invertible on the Cartan algebra")));
            }
            consts.push(c);
            exps.push(e);
        }
        if self.flavor.first == Factor::Lie {
            return Ok(true);
        }
        for k in 0..self.datum.positive_roots().len() {
            let root = &self.datum.positive_roots()[k];
            let chi = match self.flavor.first {
                Factor::DualGroup => &self.datum.positive_coroots()[k],
                _ => root,
            };
            let mut value = Q::from(1);
            let mut m = vec![0i64; rank];
            for (i, &ci) in chi.iter().enumerate() {
                value = value.mul_ref(&consts[i].pow_i64(ci).ok_or(Error::DivisionByZero)?);
                for (mj, &ej) in m.iter_mut().zip(&exps[i]) {
                    *mj += ci * ej as i64;
                }
            }
            if value != Q::from(1) {
                return Ok(false);
            }
            if self.flavor.second == Factor::Group && !in_span_of(&m, root) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn in_span_of(m: &[i64], alpha: &[i64]) -> bool {
    let Some(i) = alpha.iter().position(|&a| a != 0) else { return m.iter().all(|&x| x == 0) };
    if m[i] % alpha[i] != 0 {
        return false;
    }
    let k = m[i] / alpha[i];
    m.iter().zip(alpha).all(|(x, a)| *x == k * a)
}

fn nonnegative_on_noninvertible(p: &Poly, ring: &PolyRing) -> bool {
    ring.vars().iter().enumerate().all(|(i, v)| ring.is_invertible(v) || p.terms().all(|(e, _)| e[i] >= 0))
}

/// `α - ε` on a factor: a linear form in simple-root coordinates, or a character.
fn factor_character(
    factor: Factor,
    names: &[String],
    root: &[i64],
    coroot: &[i64],
    coords: &[i64],
    vars: &VarList,
) -> Result<Poly> {
    match factor {
        Factor::Lie => {
            let mut p = Poly::zero(vars);
            for (name, &c) in names.iter().zip(coords) {
                p = &p + &Poly::var(vars, name)?.scale(&Q::from(c));
            }
            Ok(p)
        }
        Factor::Group | Factor::DualGroup => {
            let chi = if factor == Factor::Group { root } else { coroot };
            let mut e = vec![0i32; vars.len()];
            for (name, &c) in names.iter().zip(chi) {
                e[vars.iter().position(|v| v == name).unwrap()] = c as i32;
            }
            Ok(&Poly::monomial(vars, e, Q::from(1)) - &Poly::one(vars))
        }
    }
}

fn factor_reflection_images(
    factor: Factor,
    datum: &RootDatum,
    i: usize,
    names: &[String],
    vars: &VarList,
) -> Result<Vec<Poly>> {
    let rank = datum.rank();
    let mut out = Vec::new();
    match factor {
        Factor::Lie => {
            let r = datum.reflection_on_root_coords(i);
            for k in 0..rank {
                let mut p = Poly::zero(vars);
                for (row, name) in names.iter().enumerate() {
                    p = &p + &Poly::var(vars, name)?.scale(&Q::from(r[row][k]));
                }
                out.push(p);
            }
        }
        Factor::Group | Factor::DualGroup => {
            let m = if factor == Factor::Group { datum.reflection_on_weights(i) } else { datum.reflection_on_coweights(i) };
            for k in 0..rank {
                let mut e = vec![0i32; vars.len()];
                for (row, name) in names.iter().enumerate() {
                    e[vars.iter().position(|v| v == name).unwrap()] = m[row][k] as i32;
                }
                out.push(Poly::monomial(vars, e, Q::from(1)));
            }
        }
    }
    Ok(out)
}

fn weyl_action(
    datum: &RootDatum,
    flavor: Flavor,
    first: &[String],
    second: &[String],
    vars: &VarList,
) -> Result<GroupAction> {
    let mut gens = Vec::new();
    for i in 0..datum.rank() {
        let mut images = factor_reflection_images(flavor.first, datum, i, first, vars)?;
        images.extend(factor_reflection_images(flavor.second, datum, i, second, vars)?);
        gens.push(Substitution::new(vars, images)?);
    }
    GroupAction::new(gens)
}

/// Pairing helper re-exported for chart construction.
pub fn lattice_pairing(mu: &[i64], lambda: &[i64]) -> i64 {
    pairing(mu, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_fraction;

    fn lim() -> GbLimits {
        GbLimits::default()
    }

    fn frac(b: &BlowupAlgebra, s: &str) -> Frac {
        parse_fraction(s, Some(b.ring().vars())).unwrap()
    }

    #[test]
    fn rank_one_presentations() {
        let gg = BlowupAlgebra::rank_one(Flavor::GROUP_GROUP, &lim()).unwrap();
        assert_eq!(gg.defining_fractions()[0].to_string(), "(y^2 - 1)/(z^2 - 1)");
        let gl = BlowupAlgebra::rank_one(Flavor::GROUP_LIE, &lim()).unwrap();
        assert_eq!(**gl.ring().vars(), vec!["y", "x", "T"]);
        assert!(gl.defining_relations_hold().unwrap());
        let ll = BlowupAlgebra::rank_one(Flavor::GG_LIE, &lim()).unwrap();
        assert_eq!(ll.defining_fractions()[0], frac(&ll, "u/x"));
        for fl in Flavor::all() {
            let b = BlowupAlgebra::rank_one(fl, &lim()).unwrap();
            assert!(b.defining_relations_hold().unwrap(), "{fl}");
        }
    }

    #[test]
    fn membership_examples() {
        let b = BlowupAlgebra::rank_one(Flavor::GROUP_GROUP, &lim()).unwrap();
        let m = b.membership(&frac(&b, "(y^2-1)/(z^2-1)")).unwrap();
        assert_eq!(m.certificate.unwrap().to_string(), "T");
        let m = b.membership(&frac(&b, "(y-y^-1)/(z-z^-1)")).unwrap();
        assert!(m.member);
        let cert = m.certificate.unwrap();
        assert_eq!(b.to_fraction(&cert).unwrap(), frac(&b, "(y-y^-1)/(z-z^-1)"));
        assert_eq!(cert.to_string(), "y^-1*z*T");
        assert!(!b.membership(&frac(&b, "1/(z^2-1)")).unwrap().member);
        assert!(matches!(b.membership(&frac(&b, "1/(z-2)")), Err(Error::NonWallDenominator(_))));
    }

    #[test]
    fn denis_examples() {
        let b = BlowupAlgebra::rank_one(Flavor::DUAL_GROUP, &lim()).unwrap();
        let p = |s: &str| Poly::parse(s).unwrap();
        assert!(b.denis_check(&[p("z^2")]).unwrap());
        assert!(!b.denis_check(&[p("z")]).unwrap());
        assert!(!b.denis_check(&[p("2*z^2")]).unwrap());
        assert!(matches!(b.denis_check(&[p("z + 1")]), Err(Error::NotUnit(_))));
        let lie = BlowupAlgebra::rank_one(Flavor::GROUP_LIE, &lim()).unwrap();
        assert!(lie.denis_check(&[p("1")]).unwrap());
        assert!(lie.denis_check(&[p("-1")]).unwrap());
        assert!(!lie.denis_check(&[p("2")]).unwrap());
        assert!(matches!(lie.denis_check(&[p("x")]), Err(Error::NotUnit(_))));
    }

    #[test]
    fn discriminant_is_invariant() {
        for fl in Flavor::all() {
            let b = BlowupAlgebra::rank_one(fl, &lim()).unwrap();
            let d = b.discriminant().unwrap();
            assert!(b.weyl_action().is_invariant(&d).unwrap(), "{fl}: {d}");
        }
    }
}
