//! Constant Poisson structures in logarithmic and linear coordinates, extended to
//! fractions by the Leibniz rule, and the closure checks for blow-up algebras.

use serde::Serialize;

use crate::blowup::{BlowupAlgebra, Factor};
use crate::error::{Error, Result};
use crate::laurent::VarList;
use crate::scalar::GaussianRational;
use crate::Frac;

type Q = GaussianRational;

/// A bracket `{f, g} = Σ B_ij θ_i(f) θ_j(g)` where `θ_i` is `v ∂/∂v` on a
/// multiplicative coordinate and `∂/∂v` on a linear one.
#[derive(Debug, Clone)]
pub struct PoissonChart {
    vars: VarList,
    multiplicative: Vec<bool>,
    matrix: Vec<Vec<Q>>,
}

impl PoissonChart {
    pub fn new(vars: &VarList, multiplicative: Vec<bool>, matrix: Vec<Vec<Q>>) -> Result<Self> {
        let n = vars.len();
        if multiplicative.len() != n || matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("chart data does not match {n} variables")));
        }
        for i in 0..n {
            for j in 0..n {
                if matrix[i][j] != -matrix[j][i].clone() {
                    return Err(Error::Invalid("bracket matrix is not antisymmetric".into()));
                }
            }
        }
        Ok(PoissonChart { vars: vars.clone(), multiplicative, matrix })
    }

    /// The chart pairing the two factors of a blow-up with constant `kappa`.
    ///
    /// At rank one this is `{first, second} = κ` in the log/linear coordinates. For the
    /// torus against its dual it is `{log z_i, log t_j} = κ δ_ij`, where the `z_i` are
    /// dual to the `t_j` under the lattice pairing.
    pub fn for_blowup(b: &BlowupAlgebra, kappa: Q) -> Result<Self> {
        let flavor = b.flavor();
        let rank = b.datum().rank();
        if rank != 1 && flavor.first != Factor::DualGroup {
            return Err(Error::Invalid(format!("the {flavor} chart is only defined in rank one")));
        }
        let vars = b.base_ring().vars().clone();
        let mut matrix = vec![vec![Q::from(0); 2 * rank]; 2 * rank];
        for i in 0..rank {
            let sign = if flavor.first == Factor::DualGroup { -kappa.clone() } else { kappa.clone() };
            matrix[i][rank + i] = sign.clone();
            matrix[rank + i][i] = -sign;
        }
        let multiplicative = (0..2 * rank)
            .map(|i| if i < rank { flavor.first.is_multiplicative() } else { flavor.second.is_multiplicative() })
            .collect();
        Self::new(&vars, multiplicative, matrix)
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn matrix(&self) -> &[Vec<Q>] {
        &self.matrix
    }

    fn theta(&self, f: &Frac, i: usize) -> Frac {
        if self.multiplicative[i] {
            f.log_derivative(i)
        } else {
            f.derivative(i)
        }
    }

    pub fn bracket(&self, f: &Frac, g: &Frac) -> Result<Frac> {
        let f = f.with_vars(&self.vars)?;
        let g = g.with_vars(&self.vars)?;
        let n = self.vars.len();
        let tf: Vec<Frac> = (0..n).map(|i| self.theta(&f, i)).collect();
        let tg: Vec<Frac> = (0..n).map(|i| self.theta(&g, i)).collect();
        let mut acc = Frac::zero(&self.vars);
        for i in 0..n {
            if tf[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let b = &self.matrix[i][j];
                if b == &Q::from(0) || tg[j].is_zero() {
                    continue;
                }
                acc = acc.add(&tf[i].mul(&tg[j]).scale(b));
            }
        }
        Ok(acc)
    }

    /// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`.
    pub fn jacobiator(&self, f: &Frac, g: &Frac, h: &Frac) -> Result<Frac> {
        let a = self.bracket(f, &self.bracket(g, h)?)?;
        let b = self.bracket(g, &self.bracket(h, f)?)?;
        let c = self.bracket(h, &self.bracket(f, g)?)?;
        Ok(a.add(&b).add(&c))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRecord {
    pub f: String,
    pub g: String,
    pub bracket: String,
    pub member: bool,
    pub certificate: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureReport {
    pub flavor: String,
    pub pairs: Vec<PairRecord>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.member)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairRecord> {
        self.pairs.iter().filter(|p| !p.member)
    }
}

/// Tests every bracket of two listed elements for membership in the blow-up.
pub fn bracket_closure_check(
    b: &BlowupAlgebra,
    chart: &PoissonChart,
    elements: &[(String, Frac)],
) -> Result<ClosureReport> {
    let mut pairs = Vec::new();
    for (i, (fname, f)) in elements.iter().enumerate() {
        for (gname, g) in &elements[i + 1..] {
            let br = chart.bracket(f, g)?;
            let m = b.membership(&br)?;
            pairs.push(PairRecord {
                f: fname.clone(),
                g: gname.clone(),
                bracket: br.to_string(),
                member: m.member,
                certificate: m.certificate.map(|c| c.to_string()),
            });
        }
    }
    Ok(ClosureReport { flavor: b.flavor().name().to_string(), pairs })
}

/// Closure of the W-invariant part: brackets of the symmetrized monomials
/// `m * T^k` with `|m| <= 2` and `k <= 1`.
pub fn invariant_closure_check(b: &BlowupAlgebra, chart: &PoissonChart) -> Result<ClosureReport> {
    let elements: Vec<(String, Frac)> =
        b.invariant_elements(2, 1)?.into_iter().map(|e| (e.label, e.fraction)).collect();
    bracket_closure_check(b, chart, &elements)
}

/// Jacobi identity on all triples drawn from `elements`; returns the first failing triple.
pub fn jacobi_check(chart: &PoissonChart, elements: &[Frac]) -> Result<Option<(usize, usize, usize)>> {
    let n = elements.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if !chart.jacobiator(&elements[i], &elements[j], &elements[k])?.is_zero() {
                    return Ok(Some((i, j, k)));
                }
            }
        }
    }
    Ok(None)
}
