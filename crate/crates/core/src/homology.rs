//! The graded ring `C[delta, xi, eta] / (xi^2 - delta*eta^2 - 1)` with
//! `deg delta = 4`, `deg xi = 0`, `deg eta = -2`.

use crate::centralizer::{model, ModelName};
use crate::error::Result;
use crate::groebner::{GbLimits, MonomialOrder};
use crate::ideal::{GroebnerBasis, Ideal, PolyRing};
use crate::kring::IdentityCheck;
use crate::linalg::LinearSpan;
use crate::scalar::GaussianRational;
use crate::Poly;

type Q = GaussianRational;

/// Degrees of `xi, delta, eta`, in that variable order.
pub const GRADING: [i64; 3] = [0, 4, -2];

pub struct BmRing {
    ring: PolyRing,
    relation: Poly,
    gb: GroebnerBasis<Q>,
    limits: GbLimits,
}

impl BmRing {
    /// `relation` must be a polynomial in `xi, delta, eta`.
    pub fn new(relation: &Poly, limits: &GbLimits) -> Result<Self> {
        let ring = PolyRing::polynomial(&["xi", "delta", "eta"]);
        let relation = relation.with_vars(ring.vars())?;
        // Lex with xi first makes xi^2 the leading monomial of the relation.
        let gb = Ideal::new(ring.clone(), vec![relation.clone()])?.groebner(MonomialOrder::Lex, limits)?;
        Ok(BmRing { ring, relation, gb, limits: *limits })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn relation(&self) -> &Poly {
        &self.relation
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        self.gb.normal_form(&p.with_vars(self.ring.vars())?)
    }

    /// Degrees of the terms of `p`, in order of appearance.
    pub fn term_degrees(p: &Poly) -> Vec<i64> {
        p.terms().map(|(e, _)| e.iter().zip(GRADING).map(|(&k, d)| k as i64 * d).sum()).collect()
    }

    /// Whether every term of the relation has degree 0.
    pub fn grading_check(&self) -> IdentityCheck {
        let degrees = Self::term_degrees(&self.relation);
        IdentityCheck {
            name: "relation is homogeneous of degree 0".into(),
            holds: degrees.iter().all(|&d| d == 0),
            witness: format!("term degrees {degrees:?}"),
        }
    }

    /// The monomials `delta^p eta^r` and `delta^p eta^r xi` for `p, r <= bound`.
    pub fn basis_monomials(&self, bound: u32) -> Vec<Poly> {
        let mut out = Vec::new();
        for p in 0..=bound as i32 {
            for r in 0..=bound as i32 {
                for x in 0..=1 {
                    out.push(Poly::monomial(self.ring.vars(), vec![x, p, r], Q::from(1)));
                }
            }
        }
        out
    }

    /// Number of basis monomials that are their own normal forms and are linearly independent.
    pub fn basis_check(&self, bound: u32) -> Result<(usize, bool)> {
        let mut span = LinearSpan::new();
        let monomials = self.basis_monomials(bound);
        let mut reduced = true;
        for m in &monomials {
            let nf = self.normal_form(m)?;
            reduced &= &nf == m;
            span.insert(&nf);
        }
        Ok((span.dim(), reduced && span.dim() == monomials.len()))
    }

    /// Generators of the `iota`-invariant subalgebra, computed on the matching slice model
    /// with this ring's relation.
    pub fn invariant_subalgebra(&self) -> Result<Vec<Poly>> {
        let mut m = model(ModelName::SPrime);
        m.relation = Some(self.relation.with_vars(m.ring.vars())?);
        Ok(m.isogeny_invariants(&["iota"], 2, &self.limits)?.essential())
    }

    /// Whether the slice parametrization satisfies this ring's relation.
    pub fn relation_matches_model(&self) -> Result<bool> {
        let mut m = model(ModelName::SPrime);
        m.relation = Some(self.relation.with_vars(m.ring.vars())?);
        Ok(m.substituted_relation()?.is_some_and(|f| f.is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::sorted_strings;

    fn bm() -> BmRing {
        let ring = PolyRing::polynomial(&["xi", "delta", "eta"]);
        BmRing::new(&Poly::parse_in("xi^2 - delta*eta^2 - 1", ring.vars()).unwrap(), &GbLimits::default()).unwrap()
    }

    #[test]
    fn grading_and_basis() {
        let b = bm();
        assert!(b.grading_check().holds);
        assert_eq!(b.basis_check(3).unwrap(), (32, true));
        assert_eq!(b.normal_form(&Poly::parse_in("xi^2", b.ring().vars()).unwrap()).unwrap().to_string(), "delta*eta^2 + 1");
    }

    #[test]
    fn invariant_generators() {
        let b = bm();
        assert_eq!(sorted_strings(&b.invariant_subalgebra().unwrap()), vec!["delta", "eta^2", "xi*eta", "xi^2"]);
        assert!(b.relation_matches_model().unwrap());
    }

    #[test]
    fn corrupted_relation_is_detected() {
        let ring = PolyRing::polynomial(&["xi", "delta", "eta"]);
        let bad = BmRing::new(&Poly::parse_in("xi^2 - delta*eta^2 - 2", ring.vars()).unwrap(), &GbLimits::default())
            .unwrap();
        assert!(!bad.relation_matches_model().unwrap());
        let inhomogeneous =
            BmRing::new(&Poly::parse_in("xi^2 - delta*eta - 1", ring.vars()).unwrap(), &GbLimits::default()).unwrap();
        assert!(!inhomogeneous.grading_check().holds);
    }
}
