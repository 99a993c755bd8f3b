//! Invariants of the product of a torus with its dual under the diagonal Weyl
//! action, and the unit relating the two orderings of the wall product.

use crate::action::{invariant_generators, GroupAction, InvariantGenerators, Substitution};
use crate::error::{Error, Result};
use crate::groebner::GbLimits;
use crate::ideal::PolyRing;
use crate::laurent::VarList;
use crate::scalar::GaussianRational;
use crate::Poly;

type Q = GaussianRational;

/// The rank-one ring `C[t^±1, z^±1]` with `W = Z/2` inverting both coordinates.
pub fn rank_one_ring() -> (PolyRing, GroupAction) {
    let ring = PolyRing::new(&["t", "z"], &["t", "z"]).expect("valid ring");
    let action = GroupAction::new(vec![Substitution::from_pairs(&[("t", "t^-1"), ("z", "z^-1")]).unwrap()])
        .expect("finite action");
    (ring, action)
}

/// Degree-bounded invariant generators of the rank-one ring.
pub fn rank_one_invariants(bound: u32, limits: &GbLimits) -> Result<InvariantGenerators> {
    let (ring, action) = rank_one_ring();
    invariant_generators(&action, &ring, &[], bound, limits)
}

/// The four orbit sums `t + t^-1`, `z + z^-1`, `tz + (tz)^-1`, `tz^-1 + t^-1z`.
pub fn orbit_sums() -> Vec<Poly> {
    ["t + t^-1", "z + z^-1", "t*z + t^-1*z^-1", "t*z^-1 + t^-1*z"]
        .iter()
        .map(|s| Poly::parse(s).unwrap().with_vars(rank_one_ring().0.vars()).unwrap())
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitComparison {
    /// `∏ (1 - χ_k)`.
    pub delta1: Poly,
    /// `∏ (1 - χ_k^-1)`.
    pub delta2: Poly,
    /// `∏ (-χ_k)`.
    pub unit: Poly,
    /// Whether `delta1 = delta2 * unit`.
    pub holds: bool,
}

/// Compares the two products over a list of monomial characters.
pub fn unit_comparison(vars: &VarList, chars: &[Poly]) -> Result<UnitComparison> {
    let one = Poly::one(vars);
    let mut delta1 = one.clone();
    let mut delta2 = one.clone();
    let mut unit = one.clone();
    for chi in chars {
        let chi = chi.with_vars(vars)?;
        let (c, _) = chi.as_unit().ok_or_else(|| Error::NotUnit(chi.to_string()))?;
        if c != Q::from(1) {
            return Err(Error::Invalid(format!("{chi} is not a character")));
        }
        let inv = chi.pow_i(-1)?;
        delta1 = &delta1 * &(&one - &chi);
        delta2 = &delta2 * &(&one - &inv);
        unit = &unit * &chi.scale(&Q::from(-1));
    }
    let holds = delta1 == &delta2 * &unit;
    Ok(UnitComparison { delta1, delta2, unit, holds })
}

/// Every list of at most `max_len` characters `z^k` with `k` in `[-range, range]`.
pub fn exhaustive_unit_comparison(max_len: usize, range: i32) -> Result<(usize, Option<Vec<i32>>)> {
    let vars = crate::laurent::var_list(&["z"]);
    let values: Vec<i32> = (-range..=range).collect();
    let mut count = 0;
    let mut lists: Vec<Vec<i32>> = vec![Vec::new()];
    for len in 0..=max_len {
        for l in &lists {
            let chars: Vec<Poly> = l.iter().map(|&k| Poly::monomial(&vars, vec![k], Q::from(1))).collect();
            count += 1;
            if !unit_comparison(&vars, &chars)?.holds {
                return Ok((count, Some(l.clone())));
            }
        }
        if len < max_len {
            lists = lists
                .iter()
                .flat_map(|l| values.iter().map(move |&v| l.iter().cloned().chain([v]).collect()))
                .collect();
        }
    }
    Ok((count, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{generates_invariants_up_to, sorted_strings};

    #[test]
    fn bound_two_invariants_are_the_orbit_sums() {
        let lim = GbLimits::default();
        let inv = rank_one_invariants(2, &lim).unwrap();
        assert_eq!(sorted_strings(&inv.polys()), sorted_strings(&orbit_sums()));
        let (ring, action) = rank_one_ring();
        assert!(generates_invariants_up_to(&action, &ring, &orbit_sums(), 2, &lim).unwrap());
    }

    #[test]
    fn unit_examples() {
        let v = crate::laurent::var_list(&["z"]);
        let z = |k| Poly::monomial(&v, vec![k], Q::from(1));
        let r = unit_comparison(&v, &[z(2)]).unwrap();
        assert!(r.holds);
        assert_eq!(r.delta1.to_string(), "-z^2 + 1");
        assert_eq!(r.unit.to_string(), "-z^2");
        let e = unit_comparison(&v, &[]).unwrap();
        assert_eq!((e.delta1.clone(), e.delta2.clone(), e.unit.clone()), (Poly::one(&v), Poly::one(&v), Poly::one(&v)));
        assert!(unit_comparison(&v, &[z(2), z(4)]).unwrap().holds);
        assert!(unit_comparison(&v, &[&z(1) + &z(2)]).is_err());
    }

    #[test]
    fn all_short_lists() {
        assert_eq!(exhaustive_unit_comparison(4, 3).unwrap(), (2801, None));
    }
}
