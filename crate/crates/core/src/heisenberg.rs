//! The group algebra of the Heisenberg extension of `Y × X` by `q^Z`, where
//! `(q^n1, λ1, μ1) · (q^n2, λ2, μ2) = (q^(n1+n2+<μ1,λ2>), λ1+λ2, μ1+μ2)`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::laurent::{var_list, VarList};
use crate::roots::pairing;
use crate::scalar::{Field, GaussianRational};
use crate::Poly;

type Q = GaussianRational;

/// Key of a basis element: power of `q`, a coweight, a weight.
pub type Triple = (i64, Vec<i64>, Vec<i64>);

/// Coefficients indexed by the power of `q`.
type QSeries = Vec<(i64, Q)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeisenbergElement {
    rank: usize,
    terms: BTreeMap<Triple, Q>,
}

impl HeisenbergElement {
    pub fn zero(rank: usize) -> Self {
        HeisenbergElement { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::basis(0, vec![0; rank], vec![0; rank])
    }

    /// The group element `(q^k, e^λ, e^μ)`.
    pub fn basis(k: i64, coweight: Vec<i64>, weight: Vec<i64>) -> Self {
        let rank = weight.len();
        let mut terms = BTreeMap::new();
        terms.insert((k, coweight, weight), Q::from(1));
        HeisenbergElement { rank, terms }
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Triple, Q)>) -> Result<Self> {
        let mut out = Self::zero(rank);
        for (t, c) in terms {
            if t.1.len() != rank || t.2.len() != rank {
                return Err(Error::LatticeMismatch(format!("triple {t:?} does not have rank {rank}")));
            }
            out.add_term(t, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, t: Triple, c: Q) {
        match self.terms.entry(t) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add_ref(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Triple, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::LatticeMismatch(format!("ranks {} and {}", self.rank, other.rank)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        HeisenbergElement { rank: self.rank, terms: self.terms.iter().map(|(t, v)| (t.clone(), v.mul_ref(c))).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Q::from(-1)))
    }

    /// Bilinear extension of the group law.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.rank);
        for ((n1, l1, m1), c1) in &self.terms {
            for ((n2, l2, m2), c2) in &other.terms {
                let k = n1 + n2 + pairing(m1, l2);
                let l: Vec<i64> = l1.iter().zip(l2).map(|(a, b)| a + b).collect();
                let m: Vec<i64> = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term((k, l, m), c1.mul_ref(c2));
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Coefficients grouped by `(λ, μ)` as maps from the power of `q`.
    fn by_lattice_point(&self) -> BTreeMap<(Vec<i64>, Vec<i64>), QSeries> {
        let mut out: BTreeMap<_, QSeries> = BTreeMap::new();
        for ((k, l, m), c) in &self.terms {
            out.entry((l.clone(), m.clone())).or_default().push((*k, c.clone()));
        }
        out
    }

    /// Whether every coefficient (a Laurent polynomial in `q`) vanishes at `q = 1`.
    pub fn divisible_by_q_minus_one(&self) -> bool {
        self.by_lattice_point().values().all(|v| v.iter().fold(Q::zero(), |a, (_, c)| a.add_ref(c)).is_zero())
    }

    /// Variables `t…` (coweights) then `z…` (weights) of the classical limit.
    pub fn limit_vars(rank: usize) -> VarList {
        let names = |b: &str| -> Vec<String> {
            if rank == 1 {
                vec![b.to_string()]
            } else {
                (1..=rank).map(|i| format!("{b}{i}")).collect()
            }
        };
        let mut v = names("t");
        v.extend(names("z"));
        var_list(&v)
    }

    /// The image at `q = 1`, with `e^λ e^μ ↦ t^λ z^μ`.
    pub fn at_q_one(&self) -> Poly {
        self.derivative_at_one(false)
    }

    fn derivative_at_one(&self, differentiate: bool) -> Poly {
        let vars = Self::limit_vars(self.rank);
        let mut out = Poly::zero(&vars);
        for ((l, m), coeffs) in self.by_lattice_point() {
            let c = coeffs.iter().fold(Q::zero(), |a, (k, c)| {
                a.add_ref(&if differentiate { c.mul_ref(&Q::from(*k)) } else { c.clone() })
            });
            let e: Vec<i32> = l.iter().chain(&m).map(|&x| x as i32).collect();
            out.add_term(e, c);
        }
        out
    }

    /// The full element as a Laurent polynomial in `q`, `t…`, `z…`.
    pub fn to_poly(&self) -> Poly {
        let mut names = vec!["q".to_string()];
        names.extend(Self::limit_vars(self.rank).iter().cloned());
        let vars = var_list(&names);
        Poly::from_terms(
            &vars,
            self.terms.iter().map(|((k, l, m), c)| {
                let mut e = vec![*k as i32];
                e.extend(l.iter().chain(m).map(|&x| x as i32));
                (e, c.clone())
            }),
        )
    }

    /// A random element with up to `max_terms` terms and entries in `[-range, range]`.
    pub fn random(rng: &mut ChaCha8Rng, rank: usize, max_terms: usize, range: i64) -> Self {
        let n = rng.gen_range(1..=max_terms);
        let mut out = Self::zero(rank);
        for _ in 0..n {
            let k = rng.gen_range(-range..=range);
            let l = (0..rank).map(|_| rng.gen_range(-range..=range)).collect();
            let m = (0..rank).map(|_| rng.gen_range(-range..=range)).collect();
            let c = Q::from(rng.gen_range(-5i64..=5));
            out.add_term((k, l, m), c);
        }
        out
    }
}

impl fmt::Display for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// `((u v - v u)/(q - 1))` at `q = 1`; errors if the commutator is not divisible.
pub fn poisson_from_q(u: &HeisenbergElement, v: &HeisenbergElement) -> Result<Poly> {
    let c = u.commutator(v)?;
    if !c.divisible_by_q_minus_one() {
        return Err(Error::Invalid(format!("commutator {c} is not divisible by q - 1")));
    }
    Ok(c.derivative_at_one(true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn b(k: i64, l: i64, m: i64) -> HeisenbergElement {
        HeisenbergElement::basis(k, vec![l], vec![m])
    }

    #[test]
    fn group_law_examples() {
        // alpha = 2 in weight coordinates, alpha-check = 1 in coweight coordinates.
        assert_eq!(b(0, 0, 2).mul(&b(0, 1, 0)).unwrap(), b(2, 1, 2));
        assert_eq!(b(0, 1, 0).mul(&b(0, 0, 2)).unwrap(), b(0, 1, 2));
        let v = b(3, -1, 4);
        assert_eq!(HeisenbergElement::one(1).mul(&v).unwrap(), v);
        assert!(matches!(
            HeisenbergElement::basis(0, vec![0, 0], vec![0, 0]).mul(&v),
            Err(Error::LatticeMismatch(_))
        ));
    }

    #[test]
    fn poisson_limit_examples() {
        let u = b(0, 1, 0);
        let v = b(0, 0, 2);
        assert_eq!(poisson_from_q(&u, &v).unwrap().to_string(), "-2*t*z^2");
        assert!(poisson_from_q(&u, &u).unwrap().is_zero());
    }

    #[test]
    fn random_associativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let x = HeisenbergElement::random(&mut rng, 1, 5, 3);
            let y = HeisenbergElement::random(&mut rng, 1, 5, 3);
            let z = HeisenbergElement::random(&mut rng, 1, 5, 3);
            assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
            assert!(x.commutator(&y).unwrap().divisible_by_q_minus_one());
        }
    }
}
