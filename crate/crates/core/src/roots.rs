//! Root data given by a Cartan matrix and a lattice flavor.
//!
//! Convention: `cartan[i][j] = <alpha_j, coroot_i>`.  The character lattice `X`
//! and cocharacter lattice `Y` carry dual bases, so the pairing is the dot product.
//! For the simply connected flavor the basis of `X` is the fundamental weights;
//! for the adjoint flavor it is the simple roots.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vector = Vec<i64>;
pub type Matrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeFlavor {
    SimplyConnected,
    Adjoint,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RootDatumSpec {
    cartan: Matrix,
    flavor: LatticeFlavor,
}

/// A half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    pub doubled: i64,
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

pub const DEFAULT_GROUP_CAP: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    cartan: Matrix,
    flavor: LatticeFlavor,
    simple_roots: Vec<Vector>,
    simple_coroots: Vec<Vector>,
    positive_roots: Vec<Vector>,
    positive_coroots: Vec<Vector>,
    positive_root_coords: Vec<Vector>,
    weyl: Vec<Matrix>,
}

pub fn pairing(mu: &[i64], lambda: &[i64]) -> i64 {
    mu.iter().zip(lambda).map(|(a, b)| a * b).sum()
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn mat_vec(a: &Matrix, v: &[i64]) -> Vector {
    a.iter().map(|row| pairing(row, v)).collect()
}

impl RootDatum {
    pub fn from_cartan(cartan: Matrix, flavor: LatticeFlavor) -> Result<Self> {
        Self::with_cap(cartan, flavor, DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(cartan: Matrix, flavor: LatticeFlavor, cap: usize) -> Result<Self> {
        let n = cartan.len();
        if n == 0 || cartan.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("Cartan matrix must be square and nonempty".into()));
        }
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::Invalid("Cartan matrix diagonal must be 2".into()));
            }
            for j in 0..n {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::Invalid("invalid off-diagonal Cartan entries".into()));
                }
            }
        }
        let (simple_roots, simple_coroots): (Vec<Vector>, Vec<Vector>) = match flavor {
            LatticeFlavor::SimplyConnected => (
                (0..n).map(|j| (0..n).map(|i| cartan[i][j]).collect()).collect(),
                identity(n),
            ),
            LatticeFlavor::Adjoint => (identity(n), cartan.clone()),
        };
        // Simple reflections on X: mu -> mu - <mu, coroot_i> alpha_i.
        let reflections: Vec<Matrix> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|r| (0..n).map(|c| i64::from(r == c) - simple_roots[i][r] * simple_coroots[i][c]).collect())
                    .collect()
            })
            .collect();
        let mut weyl = vec![identity(n)];
        let mut seen: HashSet<Matrix> = weyl.iter().cloned().collect();
        let mut queue: VecDeque<Matrix> = weyl.iter().cloned().collect();
        while let Some(w) = queue.pop_front() {
            for s in &reflections {
                let m = mat_mul(s, &w);
                if seen.insert(m.clone()) {
                    if seen.len() > cap {
                        return Err(Error::GroupTooLarge(cap));
                    }
                    weyl.push(m.clone());
                    queue.push_back(m);
                }
            }
        }
        // Roots in simple-root coordinates paired with coroots in simple-coroot coordinates.
        let mut pairs: Vec<(Vector, Vector)> = Vec::new();
        let mut seen_pairs = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            queue.push_back((e.clone(), e));
        }
        while let Some((c, d)) = queue.pop_front() {
            if !seen_pairs.insert(c.clone()) {
                continue;
            }
            pairs.push((c.clone(), d.clone()));
            for i in 0..n {
                let p: i64 = (0..n).map(|j| cartan[i][j] * c[j]).sum();
                let q: i64 = (0..n).map(|j| cartan[j][i] * d[j]).sum();
                let mut c2 = c.clone();
                c2[i] -= p;
                let mut d2 = d.clone();
                d2[i] -= q;
                if !seen_pairs.contains(&c2) {
                    queue.push_back((c2, d2));
                }
            }
            if pairs.len() > 2 * cap {
                return Err(Error::GroupTooLarge(cap));
            }
        }
        let mut positive: Vec<(Vector, Vector)> = pairs.into_iter().filter(|(c, _)| c.iter().all(|&x| x >= 0)).collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.0.iter().sum();
            let hb: i64 = b.0.iter().sum();
            ha.cmp(&hb).then(b.0.cmp(&a.0))
        });
        let to_lattice = |coords: &Vector, basis: &Vec<Vector>| -> Vector {
            (0..n).map(|k| coords.iter().zip(basis).map(|(c, b)| c * b[k]).sum()).collect()
        };
        let positive_roots: Vec<Vector> = positive.iter().map(|(c, _)| to_lattice(c, &simple_roots)).collect();
        let positive_coroots: Vec<Vector> = positive.iter().map(|(_, d)| to_lattice(d, &simple_coroots)).collect();
        for (a, b) in positive_roots.iter().zip(&positive_coroots) {
            if pairing(a, b) != 2 {
                return Err(Error::Invalid("root/coroot pairing differs from 2".into()));
            }
        }
        for s in &reflections {
            if mat_mul(s, s) != identity(n) {
                return Err(Error::Invalid("simple reflection is not an involution".into()));
            }
        }
        let positive_root_coords = positive.into_iter().map(|(c, _)| c).collect();
        Ok(RootDatum {
            cartan,
            flavor,
            simple_roots,
            simple_coroots,
            positive_roots,
            positive_coroots,
            positive_root_coords,
            weyl,
        })
    }

    /// `SL_2`: `X = Z` with `alpha = 2`, `Y = Z` with `coroot = 1`.
    pub fn sl2() -> Self {
        Self::from_cartan(vec![vec![2]], LatticeFlavor::SimplyConnected).unwrap()
    }

    /// `PGL_2`: `alpha = 1`, `coroot = 2`.
    pub fn pgl2() -> Self {
        Self::from_cartan(vec![vec![2]], LatticeFlavor::Adjoint).unwrap()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: RootDatumSpec = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_cartan(spec.cartan, spec.flavor)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&RootDatumSpec { cartan: self.cartan.clone(), flavor: self.flavor }).unwrap()
    }

    /// The datum with roots and coroots exchanged.
    pub fn dual(&self) -> Self {
        let t: Matrix = (0..self.rank()).map(|i| (0..self.rank()).map(|j| self.cartan[j][i]).collect()).collect();
        let flavor = match self.flavor {
            LatticeFlavor::SimplyConnected => LatticeFlavor::Adjoint,
            LatticeFlavor::Adjoint => LatticeFlavor::SimplyConnected,
        };
        Self::from_cartan(t, flavor).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &Matrix {
        &self.cartan
    }

    pub fn flavor(&self) -> LatticeFlavor {
        self.flavor
    }

    pub fn simple_roots(&self) -> &[Vector] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vector] {
        &self.simple_coroots
    }

    pub fn positive_roots(&self) -> &[Vector] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Vector] {
        &self.positive_coroots
    }

    /// Positive roots written in the basis of simple roots.
    pub fn positive_root_coords(&self) -> &[Vector] {
        &self.positive_root_coords
    }

    /// Simple reflection `s_i` on `X`, as a matrix acting on column vectors.
    pub fn reflection_on_weights(&self, i: usize) -> Matrix {
        let n = self.rank();
        let (a, c) = (&self.simple_roots[i], &self.simple_coroots[i]);
        (0..n).map(|r| (0..n).map(|k| i64::from(r == k) - a[r] * c[k]).collect()).collect()
    }

    /// Simple reflection `s_i` on `Y`.
    pub fn reflection_on_coweights(&self, i: usize) -> Matrix {
        let n = self.rank();
        let (a, c) = (&self.simple_roots[i], &self.simple_coroots[i]);
        (0..n).map(|r| (0..n).map(|k| i64::from(r == k) - c[r] * a[k]).collect()).collect()
    }

    /// Simple reflection `s_i` on the root lattice in simple-root coordinates.
    pub fn reflection_on_root_coords(&self, i: usize) -> Matrix {
        let n = self.rank();
        (0..n)
            .map(|r| (0..n).map(|k| i64::from(r == k) - if r == i { self.cartan[i][k] } else { 0 }).collect())
            .collect()
    }

    /// All roots: positive ones followed by their negatives.
    pub fn roots(&self) -> Vec<Vector> {
        let mut out = self.positive_roots.clone();
        out.extend(self.positive_roots.iter().map(|r| r.iter().map(|x| -x).collect::<Vector>()));
        out
    }

    pub fn coroots(&self) -> Vec<Vector> {
        let mut out = self.positive_coroots.clone();
        out.extend(self.positive_coroots.iter().map(|r| r.iter().map(|x| -x).collect::<Vector>()));
        out
    }

    /// Weyl group elements as matrices acting on `X`.
    pub fn weyl_group(&self) -> &[Matrix] {
        &self.weyl
    }

    /// Action of a Weyl element on `Y` (the inverse transpose of its action on `X`).
    pub fn act_on_coweight(&self, w: &Matrix, lambda: &[i64]) -> Vector {
        let n = self.rank();
        let inv = self.weyl.iter().find(|m| mat_mul(m, w) == identity(n)).expect("group element has inverse");
        let t: Matrix = (0..n).map(|i| (0..n).map(|j| inv[j][i]).collect()).collect();
        mat_vec(&t, lambda)
    }

    pub fn act_on_weight(&self, w: &Matrix, mu: &[i64]) -> Vector {
        mat_vec(w, mu)
    }

    /// `2*rho`, the sum of the positive roots.
    pub fn two_rho(&self) -> Vector {
        let mut out = vec![0; self.rank()];
        for r in &self.positive_roots {
            for (o, x) in out.iter_mut().zip(r) {
                *o += x;
            }
        }
        out
    }

    pub fn rho(&self) -> Vec<HalfInt> {
        self.two_rho().into_iter().map(|d| HalfInt { doubled: d }).collect()
    }

    pub fn is_dominant_coweight(&self, lambda: &[i64]) -> bool {
        lambda.len() == self.rank() && self.simple_roots.iter().all(|a| pairing(a, lambda) >= 0)
    }

    fn check_dominant(&self, lambda: &[i64]) -> Result<()> {
        if lambda.len() != self.rank() {
            return Err(Error::LatticeMismatch(format!("coweight of length {} for rank {}", lambda.len(), self.rank())));
        }
        if !self.is_dominant_coweight(lambda) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        Ok(())
    }

    /// Dimension `<2 rho, lambda>` of the orbit indexed by a dominant coweight.
    pub fn orbit_dimension(&self, lambda: &[i64]) -> Result<i64> {
        self.check_dominant(lambda)?;
        Ok(pairing(&self.two_rho(), lambda))
    }

    /// Middle perversity `-<rho, lambda>`.
    pub fn perversity(&self, lambda: &[i64]) -> Result<HalfInt> {
        Ok(HalfInt { doubled: -self.orbit_dimension(lambda)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_data() {
        let sl2 = RootDatum::sl2();
        assert_eq!(sl2.positive_roots(), &[vec![2]]);
        assert_eq!(sl2.positive_coroots(), &[vec![1]]);
        assert_eq!(sl2.weyl_group().len(), 2);
        let pgl2 = RootDatum::pgl2();
        assert_eq!(pgl2.positive_roots(), &[vec![1]]);
        assert_eq!(pgl2.positive_coroots(), &[vec![2]]);
        assert_eq!(sl2.dual(), pgl2);
        assert_eq!(sl2.reflection_on_weights(0), vec![vec![-1]]);
        assert_eq!(sl2.reflection_on_coweights(0), vec![vec![-1]]);
        assert_eq!(sl2.reflection_on_root_coords(0), vec![vec![-1]]);
    }

    #[test]
    fn reflections_are_compatible_with_pairing() {
        let b2 = RootDatum::from_cartan(vec![vec![2, -2], vec![-1, 2]], LatticeFlavor::SimplyConnected).unwrap();
        let mu = vec![3, -1];
        let lam = vec![2, 5];
        for i in 0..2 {
            let sx = b2.reflection_on_weights(i);
            let sy = b2.reflection_on_coweights(i);
            assert_eq!(pairing(&mat_vec(&sx, &mu), &mat_vec(&sy, &lam)), pairing(&mu, &lam));
        }
    }

    #[test]
    fn orbit_dimensions_and_perversity() {
        let sl2 = RootDatum::sl2();
        let pgl2 = RootDatum::pgl2();
        assert_eq!(sl2.orbit_dimension(&[0]).unwrap(), 0);
        assert_eq!(sl2.orbit_dimension(&[1]).unwrap(), 2);
        for n in 0..6 {
            assert_eq!(pgl2.orbit_dimension(&[n]).unwrap(), n);
        }
        assert_eq!(pgl2.perversity(&[1]).unwrap().to_string(), "-1/2");
        assert_eq!(pgl2.perversity(&[2]).unwrap().to_string(), "-1");
        assert!(matches!(pgl2.orbit_dimension(&[-1]), Err(Error::NotDominant(_))));
    }

    #[test]
    fn higher_rank_weyl_orders() {
        let a2 = RootDatum::from_cartan(vec![vec![2, -1], vec![-1, 2]], LatticeFlavor::SimplyConnected).unwrap();
        assert_eq!(a2.weyl_group().len(), 6);
        assert_eq!(a2.positive_roots().len(), 3);
        let b2 = RootDatum::from_cartan(vec![vec![2, -2], vec![-1, 2]], LatticeFlavor::Adjoint).unwrap();
        assert_eq!(b2.weyl_group().len(), 8);
        assert_eq!(b2.positive_roots().len(), 4);
        let g2 = RootDatum::from_cartan(vec![vec![2, -1], vec![-3, 2]], LatticeFlavor::SimplyConnected).unwrap();
        assert_eq!(g2.weyl_group().len(), 12);
    }

    #[test]
    fn affine_cartan_matrix_hits_the_cap() {
        let affine = vec![vec![2, -2], vec![-2, 2]];
        assert!(matches!(RootDatum::with_cap(affine, LatticeFlavor::Adjoint, 64), Err(Error::GroupTooLarge(64))));
    }

    #[test]
    fn json_round_trip() {
        let d = RootDatum::from_json(r#"{"cartan":[[2]],"flavor":"adjoint"}"#).unwrap();
        assert_eq!(d, RootDatum::pgl2());
        assert_eq!(d.to_json(), r#"{"cartan":[[2]],"flavor":"adjoint"}"#);
    }
}
