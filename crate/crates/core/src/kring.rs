//! The rank-one convolution ring `C[a, b, c] / (abc - b^2 - c^2 - 1)` with its
//! basis classes `v(n)_m`, three isomorphic presentations and the Iwahori
//! localization identities.

use std::collections::BTreeMap;
use std::fmt;

use crate::blowup::{BlowupAlgebra, Flavor};
use crate::centralizer::{model, ModelName, SliceModel};
use crate::error::{Error, Result};
use crate::fraction::{substitute_poly, Fraction};
use crate::groebner::{GbLimits, MonomialOrder};
use crate::ideal::{GroebnerBasis, Ideal, PolyRing, Subalgebra};
use crate::laurent::var_list;
use crate::linalg::LinearSpan;
use crate::scalar::GaussianRational;
use crate::text::parse_fraction;
use crate::{Frac, Poly};

type Q = GaussianRational;

/// The class `v(n)_m`: line-bundle degree `n` on the orbit closure labelled `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VClass {
    pub n: i64,
    pub m: i64,
}

impl VClass {
    pub fn new(n: i64, m: i64) -> Result<Self> {
        if m < 0 || (m == 0 && n < 0) {
            return Err(Error::OutOfRange(format!("v({n})_{m}")));
        }
        Ok(VClass { n, m })
    }

    /// Whether the class lies on the side where `n` is even (fixed by `jmath`).
    pub fn dual_side(&self) -> bool {
        self.n % 2 == 0
    }

    /// Whether the class lies on the side where `m` is even (fixed by `iota`).
    pub fn group_side(&self) -> bool {
        self.m % 2 == 0
    }
}

impl fmt::Display for VClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v({})_{}", self.n, self.m)
    }
}

/// How a dictionary entry was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation {
    Generator,
    Unit,
    /// `v(1)_0 * v(0)_1 - v(1)_1`.
    SolvedLinear,
    /// A product of two known classes minus a combination of known classes.
    Product { left: VClass, right: VClass, minus: Vec<VClass>, constant: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Presentation {
    /// Polynomials in `a, b, c` modulo the hypersurface relation.
    Abstract,
    /// W-invariant fractions in `y, z`.
    Localized,
    /// Polynomials in the `GG` blow-up coordinates `y, z, T`.
    Blowup,
}

impl Presentation {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "abstract" => Ok(Presentation::Abstract),
            "localized" => Ok(Presentation::Localized),
            "blowup" => Ok(Presentation::Blowup),
            _ => Err(Error::Parse(format!("unknown presentation `{s}` (expected abstract, localized or blowup)"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Presentation::Abstract => "abstract",
            Presentation::Localized => "localized",
            Presentation::Blowup => "blowup",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KElement {
    Abstract(Poly),
    Localized(Frac),
    Blowup(Poly),
}

impl KElement {
    pub fn presentation(&self) -> Presentation {
        match self {
            KElement::Abstract(_) => Presentation::Abstract,
            KElement::Localized(_) => Presentation::Localized,
            KElement::Blowup(_) => Presentation::Blowup,
        }
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KElement::Abstract(p) | KElement::Blowup(p) => write!(f, "{p}"),
            KElement::Localized(q) => write!(f, "{q}"),
        }
    }
}

/// Which side of the ring a subring test refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Fixed by `iota`: classes with `m` even.
    Group,
    /// Fixed by `jmath`: classes with `n` even.
    Dual,
    Both,
}

impl Side {
    fn involutions(&self) -> &'static [&'static str] {
        match self {
            Side::Group => &["iota"],
            Side::Dual => &["jmath"],
            Side::Both => &["iota", "jmath"],
        }
    }
}

/// A named identity and whether it held.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    pub witness: String,
}

impl IdentityCheck {
    fn new(name: &str, holds: bool, witness: impl Into<String>) -> Self {
        IdentityCheck { name: name.to_string(), holds, witness: witness.into() }
    }
}

pub struct KRing {
    relation: Poly,
    model: SliceModel,
    gb: GroebnerBasis<Q>,
    dictionary: BTreeMap<VClass, (Poly, Derivation)>,
    blowup: BlowupAlgebra,
    subalgebra: Subalgebra<Q>,
    limits: GbLimits,
}

impl KRing {
    /// The ring defined by `relation` in `a, b, c`.
    pub fn new(relation: &Poly, limits: &GbLimits) -> Result<Self> {
        let mut model = model(ModelName::S);
        let relation = relation.with_vars(model.ring.vars())?;
        model.relation = Some(relation.clone());
        let gb = Ideal::new(model.ring.clone(), vec![relation.clone()])?.groebner(MonomialOrder::GrevLex, limits)?;
        let blowup = BlowupAlgebra::rank_one(Flavor::GROUP_GROUP, limits)?;
        let subalgebra = model.subalgebra(limits)?;
        let mut ring =
            KRing { relation, model, gb, dictionary: BTreeMap::new(), blowup, subalgebra, limits: *limits };
        ring.derive_dictionary()?;
        Ok(ring)
    }

    pub fn relation(&self) -> &Poly {
        &self.relation
    }

    pub fn ring(&self) -> &PolyRing {
        &self.model.ring
    }

    pub fn blowup(&self) -> &BlowupAlgebra {
        &self.blowup
    }

    fn var(&self, name: &str) -> Poly {
        Poly::var(self.model.ring.vars(), name).expect("a, b, c are ring variables")
    }

    fn constant(&self, c: i64) -> Poly {
        Poly::constant(self.model.ring.vars(), Q::from(c))
    }

    fn derive_dictionary(&mut self) -> Result<()> {
        let v = |n, m| VClass { n, m };
        self.dictionary.insert(v(0, 0), (self.constant(1), Derivation::Unit));
        self.dictionary.insert(v(1, 0), (self.var("a"), Derivation::Generator));
        self.dictionary.insert(v(0, 1), (self.var("b"), Derivation::Generator));
        self.dictionary.insert(v(1, 1), (self.var("c"), Derivation::Generator));
        let ab = self.product(&self.var("a"), &self.var("b"))?;
        self.dictionary.insert(v(-1, 1), (&ab - &self.var("c"), Derivation::SolvedLinear));
        let products: [(VClass, VClass, VClass, &[VClass], i64); 5] = [
            (v(0, 2), v(0, 1), v(0, 1), &[], 0),
            (v(2, 2), v(1, 1), v(1, 1), &[], 0),
            (v(1, 2), v(1, 1), v(0, 1), &[], 0),
            (v(2, 0), v(1, 0), v(1, 0), &[], 1),
            (v(2, 1), v(1, 1), v(1, 0), &[v(0, 1)], 0),
        ];
        for (target, left, right, minus, constant) in products {
            let mut p = self.product(&self.dictionary[&left].0, &self.dictionary[&right].0)?;
            for cl in minus {
                p = &p - &self.dictionary[cl].0;
            }
            p = &p - &self.constant(constant);
            self.dictionary
                .insert(target, (p, Derivation::Product { left, right, minus: minus.to_vec(), constant }));
        }
        Ok(())
    }

    /// Image of `v(n)_m`; only classes reachable from the generator relations are known.
    pub fn v_class(&self, n: i64, m: i64) -> Result<Poly> {
        self.dictionary.get(&VClass { n, m }).map(|(p, _)| p.clone()).ok_or(Error::NotDerivable(n, m))
    }

    pub fn derivation(&self, c: VClass) -> Option<&Derivation> {
        self.dictionary.get(&c).map(|(_, d)| d)
    }

    pub fn known_classes(&self) -> Vec<VClass> {
        self.dictionary.keys().copied().collect()
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        self.gb.normal_form(&p.with_vars(self.model.ring.vars())?)
    }

    fn product(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.normal_form(&(f * g))
    }

    fn equal(&self, f: &Poly, g: &Poly) -> Result<bool> {
        self.gb.contains(&(f - g))
    }

    /// Product of two elements, returned in the abstract presentation.
    pub fn multiply(&self, f: &KElement, g: &KElement) -> Result<Poly> {
        self.product(&self.to_abstract(f)?, &self.to_abstract(g)?)
    }

    pub fn parse(&self, presentation: Presentation, s: &str) -> Result<KElement> {
        Ok(match presentation {
            Presentation::Abstract => KElement::Abstract(Poly::parse_in(s, self.model.ring.vars())?),
            Presentation::Localized => KElement::Localized(parse_fraction(s, Some(self.model.target.vars()))?),
            Presentation::Blowup => KElement::Blowup(Poly::parse_in(s, self.blowup.ring().vars())?),
        })
    }

    fn to_abstract(&self, f: &KElement) -> Result<Poly> {
        match self.convert(f, Presentation::Abstract)? {
            KElement::Abstract(p) => Ok(p),
            _ => unreachable!("conversion returns the requested presentation"),
        }
    }

    fn localize(&self, p: &Poly) -> Result<Frac> {
        let table = self.model.parametrization.iter().cloned().collect();
        substitute_poly(&p.with_vars(self.model.ring.vars())?, &table, self.model.target.vars())
    }

    fn delocalize(&self, f: &Frac) -> Result<Poly> {
        let f = f.with_vars(self.model.target.vars())?;
        if !self.blowup.weyl_action().is_invariant_fraction(&f)? {
            return Err(Error::Invalid(format!("{f} is not invariant under (y, z) -> (1/y, 1/z)")));
        }
        let expr = self.subalgebra.express(&f)?.ok_or_else(|| Error::Invalid(format!("{f} is not in the image")))?;
        self.normal_form(&expr.with_vars(self.model.ring.vars())?)
    }

    fn to_blowup(&self, f: &Frac) -> Result<Poly> {
        let m = self.blowup.membership(f)?;
        m.certificate.filter(|_| m.member).ok_or_else(|| Error::Invalid(format!("{f} is not in the blow-up algebra")))
    }

    pub fn convert(&self, f: &KElement, to: Presentation) -> Result<KElement> {
        use Presentation::*;
        Ok(match (f, to) {
            (KElement::Abstract(p), Abstract) => KElement::Abstract(self.normal_form(p)?),
            (KElement::Abstract(p), Localized) => KElement::Localized(self.localize(p)?),
            (KElement::Abstract(p), Blowup) => KElement::Blowup(self.to_blowup(&self.localize(p)?)?),
            (KElement::Localized(q), Abstract) => KElement::Abstract(self.delocalize(q)?),
            (KElement::Localized(q), Localized) => KElement::Localized(q.clone()),
            (KElement::Localized(q), Blowup) => KElement::Blowup(self.to_blowup(q)?),
            (KElement::Blowup(p), Abstract) => KElement::Abstract(self.delocalize(&self.blowup.to_fraction(p)?)?),
            (KElement::Blowup(p), Localized) => KElement::Localized(self.blowup.to_fraction(p)?),
            (KElement::Blowup(p), Blowup) => KElement::Blowup(p.clone()),
        })
    }

    /// Whether an abstract element is fixed by the involutions of `side`, modulo the relation.
    pub fn subring_filter(&self, f: &Poly, side: Side) -> Result<bool> {
        for name in side.involutions() {
            let (_, s) = self.model.involutions.iter().find(|(n, _)| n == name).expect("model has both involutions");
            let image = s.apply(&f.with_vars(self.model.ring.vars())?)?.with_vars(self.model.ring.vars())?;
            if !self.equal(&image, f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `v(1)_0 v(0)_1 v(1)_1 - v(1)_1^2 - v(0)_1^2 - 1` with the dictionary substituted, unreduced.
    pub fn triple_product_rewrite(&self) -> Poly {
        let a = &self.dictionary[&VClass { n: 1, m: 0 }].0;
        let b = &self.dictionary[&VClass { n: 0, m: 1 }].0;
        let c = &self.dictionary[&VClass { n: 1, m: 1 }].0;
        &(&(&(&(a * b) * c) - &(c * c)) - &(b * b)) - &self.constant(1)
    }

    /// The convolution relations between the basis classes.
    pub fn relation_checks(&self) -> Result<Vec<IdentityCheck>> {
        let v = |n, m| self.dictionary[&VClass { n, m }].0.clone();
        let one = self.constant(1);
        let cases: Vec<(&str, Poly, Poly)> = vec![
            ("v(1)_1*v(-1)_1 = v(0)_2 + 1", self.product(&v(1, 1), &v(-1, 1))?, &v(0, 2) + &one),
            ("v(1)_0*v(0)_1 = v(1)_1 + v(-1)_1", self.product(&v(1, 0), &v(0, 1))?, &v(1, 1) + &v(-1, 1)),
            ("v(0)_1*v(0)_1 = v(0)_2", self.product(&v(0, 1), &v(0, 1))?, v(0, 2)),
            ("v(1)_1*v(1)_1 = v(2)_2", self.product(&v(1, 1), &v(1, 1))?, v(2, 2)),
            (
                "v(1)_0*v(0)_1*v(1)_1 = v(1)_1^2 + v(0)_1^2 + 1",
                self.product(&self.product(&v(1, 0), &v(0, 1))?, &v(1, 1))?,
                &(&self.product(&v(1, 1), &v(1, 1))? + &self.product(&v(0, 1), &v(0, 1))?) + &one,
            ),
        ];
        let mut out = Vec::new();
        for (name, lhs, rhs) in cases {
            let holds = self.equal(&lhs, &rhs)?;
            out.push(IdentityCheck::new(name, holds, format!("{} vs {}", self.normal_form(&lhs)?, self.normal_form(&rhs)?)));
        }
        let rewritten = self.triple_product_rewrite();
        let regenerates = rewritten == self.relation || rewritten == self.relation.scale(&Q::from(-1));
        out.push(IdentityCheck::new("rewritten triple-product identity equals the relation", regenerates, rewritten.to_string()));
        Ok(out)
    }

    /// Independent re-derivations of `v(0)_2` and `v(2)_0`, plus the parity of every known class.
    pub fn dictionary_consistency(&self) -> Result<Vec<IdentityCheck>> {
        let v = |n, m| self.dictionary[&VClass { n, m }].0.clone();
        let mut out = Vec::new();
        let via_minus = &self.product(&v(1, 1), &v(-1, 1))? - &self.constant(1);
        out.push(IdentityCheck::new(
            "v(0)_2 = v(1)_1*v(-1)_1 - 1",
            self.equal(&via_minus, &v(0, 2))?,
            self.normal_form(&via_minus)?.to_string(),
        ));
        let character = parse_fraction("z^2 + 1 + z^-2", Some(self.model.target.vars()))?;
        let loc = self.localize(&v(2, 0))?;
        out.push(IdentityCheck::new("v(2)_0 localizes to z^2 + 1 + z^-2", loc == character, loc.to_string()));
        for (cl, (p, _)) in &self.dictionary {
            let holds = self.subring_filter(p, Side::Group)? == cl.group_side()
                && self.subring_filter(p, Side::Dual)? == cl.dual_side();
            out.push(IdentityCheck::new(&format!("{cl} has the parity of its labels"), holds, p.to_string()));
        }
        Ok(out)
    }

    /// Invariant generators of the involutions of `side`, and whether they span the same
    /// space (with constants) as the dictionary's generator list for that side.
    pub fn side_generators(&self, side: Side) -> Result<(Vec<Poly>, bool)> {
        let essential = self.model.isogeny_invariants(side.involutions(), 2, &self.limits)?.essential();
        let listed: Vec<(i64, i64)> = match side {
            Side::Group => vec![(1, 0), (0, 2), (2, 2), (1, 2)],
            Side::Dual => vec![(2, 0), (0, 1), (2, 2), (2, 1)],
            Side::Both => vec![(2, 0), (0, 2), (2, 2)],
        };
        let listed: Vec<Poly> = listed.into_iter().map(|(n, m)| self.v_class(n, m)).collect::<Result<_>>()?;
        let span = |ps: &[Poly]| {
            let mut s = LinearSpan::new();
            s.insert(&self.constant(1));
            for p in ps {
                s.insert(p);
            }
            s
        };
        let (e, l) = (span(&essential), span(&listed));
        let same = e.dim() == l.dim() && essential.iter().all(|p| l.contains(p));
        Ok((essential, same))
    }

    /// The Iwahori localization identities, checked in `y, z` with `u0 - u2 = -i/y`.
    pub fn iwahori_checks(&self) -> Result<Vec<IdentityCheck>> {
        let target = self.model.target.vars().clone();
        let frac = |s: &str| parse_fraction(s, Some(&target));
        let loc = |n, m| self.localize(&self.dictionary[&VClass { n, m }].0);
        let i = Fraction::from_poly(Poly::constant(&target, Q::i()));
        let y = frac("y")?;
        let y_inv = frac("y^-1")?;
        let u_diff = i.neg().mul(&y_inv);
        let y_inv_expr = i.mul(&u_diff);
        let y_expr = i.mul(&loc(0, 1)?.sub(&loc(2, 1)?).sub(&u_diff));
        let product = y_expr.mul(&y_inv_expr);
        let sum_rhs = i.mul(&loc(0, 1)?.scale(&Q::from(2)).sub(&loc(1, 0)?.mul(&loc(1, 1)?)));
        let diff_rhs = i.mul(&frac("z - z^-1")?).mul(&loc(1, 1)?);
        Ok(vec![
            IdentityCheck::new("y * y^-1 = 1 through the Iwahori classes", product == Fraction::one(&target), product.to_string()),
            IdentityCheck::new("y + y^-1 = i(2 v(0)_1 - v(1)_0 v(1)_1)", y.add(&y_inv) == sum_rhs, sum_rhs.to_string()),
            IdentityCheck::new("y - y^-1 = i(z - z^-1) v(1)_1", y.sub(&y_inv) == diff_rhs, diff_rhs.to_string()),
        ])
    }

    /// Round trips abstract -> localized -> abstract and abstract -> blowup -> abstract on `a, b, c`.
    pub fn round_trip_checks(&self) -> Result<Vec<IdentityCheck>> {
        let mut out = Vec::new();
        for name in ["a", "b", "c"] {
            let x = KElement::Abstract(self.var(name));
            for via in [Presentation::Localized, Presentation::Blowup] {
                let label = format!("{name} through {}", via.name());
                let back = self.convert(&x, via).and_then(|e| Ok((self.convert(&e, Presentation::Abstract)?, e)));
                out.push(match back {
                    Ok((KElement::Abstract(p), mid)) => {
                        IdentityCheck::new(&label, self.equal(&p, &self.var(name))?, mid.to_string())
                    }
                    Ok(_) => unreachable!("conversion returns the requested presentation"),
                    Err(e) => IdentityCheck::new(&label, false, e.to_string()),
                });
            }
        }
        Ok(out)
    }
}

/// Variables of the abstract presentation.
pub fn abstract_vars() -> crate::laurent::VarList {
    var_list(&["a", "b", "c"])
}
