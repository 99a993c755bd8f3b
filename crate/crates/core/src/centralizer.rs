//! Rank-one commuting-pair models: Kostant slices, commutants of slice matrices,
//! the hypersurfaces they cut out, their diagonal parametrizations, and the
//! comparison with the W-invariant parts of the blow-ups.

use std::fmt;

use serde_json::{json, Value};

use crate::action::{invariant_generators, GroupAction, InvariantGenerators, Substitution};
use crate::blowup::{BlowupAlgebra, Flavor};
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::groebner::{GbLimits, MonomialOrder};
use crate::ideal::{Ideal, PolyRing, Subalgebra};
use crate::laurent::{var_list, VarList};
use crate::scalar::GaussianRational;
use crate::{Frac, Poly};

type Q = GaussianRational;

/// A 2×2 matrix with Laurent polynomial entries over a common variable list.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricMatrix {
    vars: VarList,
    entries: [[Poly; 2]; 2],
}

impl ParametricMatrix {
    pub fn new(vars: &VarList, entries: [[Poly; 2]; 2]) -> Result<Self> {
        let [[p, q], [r, s]] = entries;
        Ok(ParametricMatrix {
            vars: vars.clone(),
            entries: [[p.with_vars(vars)?, q.with_vars(vars)?], [r.with_vars(vars)?, s.with_vars(vars)?]],
        })
    }

    /// Parses four entries given row by row.
    pub fn parse(vars: &[&str], rows: [[&str; 2]; 2]) -> Result<Self> {
        let vl = var_list(vars);
        let e = |s: &str| Poly::parse_in(s, &vl);
        Self::new(&vl, [[e(rows[0][0])?, e(rows[0][1])?], [e(rows[1][0])?, e(rows[1][1])?]])
    }

    pub fn identity(vars: &VarList) -> Self {
        let (o, z) = (Poly::one(vars), Poly::zero(vars));
        ParametricMatrix { vars: vars.clone(), entries: [[o.clone(), z.clone()], [z, o]] }
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    /// Entries in row-major order.
    pub fn flat(&self) -> Vec<Poly> {
        self.entries.iter().flatten().cloned().collect()
    }

    pub fn from_flat(vars: &VarList, v: &[Poly]) -> Result<Self> {
        Self::new(vars, [[v[0].clone(), v[1].clone()], [v[2].clone(), v[3].clone()]])
    }

    pub fn with_vars(&self, vars: &VarList) -> Result<Self> {
        Self::new(vars, self.entries.clone())
    }

    pub fn trace(&self) -> Poly {
        &self.entries[0][0] + &self.entries[1][1]
    }

    pub fn det(&self) -> Poly {
        let e = &self.entries;
        &(&e[0][0] * &e[1][1]) - &(&e[0][1] * &e[1][0])
    }

    pub fn scale(&self, c: &Poly) -> Result<Self> {
        let c = c.with_vars(&self.vars)?;
        let f: Vec<Poly> = self.flat().iter().map(|x| x * &c).collect();
        Self::from_flat(&self.vars, &f)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let o = other.with_vars(&self.vars)?;
        let f: Vec<Poly> = self.flat().iter().zip(o.flat()).map(|(a, b)| a + &b).collect();
        Self::from_flat(&self.vars, &f)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let o = other.with_vars(&self.vars)?;
        let (a, b) = (&self.entries, &o.entries);
        let cell = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        Self::new(&self.vars, [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]])
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let xy = self.mul(other)?;
        let yx = other.with_vars(&self.vars)?.mul(self)?;
        let f: Vec<Poly> = xy.flat().iter().zip(yx.flat()).map(|(a, b)| a - &b).collect();
        Self::from_flat(&self.vars, &f)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    /// Row-major list of entry strings.
    pub fn to_json(&self) -> Value {
        json!(self.flat().iter().map(|e| e.to_string()).collect::<Vec<_>>())
    }

    /// Coefficient matrices of a general element that is linear in `params`.
    pub fn linear_parts(&self, params: &[&str]) -> Result<Vec<ParametricMatrix>> {
        params
            .iter()
            .map(|p| {
                let idx = self.vars.iter().position(|v| v == p).ok_or_else(|| Error::UnknownVariable(p.to_string()))?;
                let f: Vec<Poly> = self.flat().iter().map(|e| e.derivative(idx)).collect();
                Self::from_flat(&self.vars, &f)
            })
            .collect()
    }
}

impl fmt::Display for ParametricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        write!(f, "[[{}, {}], [{}, {}]]", e[0][0], e[0][1], e[1][0], e[1][1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceKind {
    Group,
    Lie,
}

/// `[[a-1, a-2], [1, 1]]` for the group, `[[0, delta], [1, 0]]` for the Lie algebra.
pub fn kostant_slice(kind: SliceKind) -> ParametricMatrix {
    match kind {
        SliceKind::Group => ParametricMatrix::parse(&["a"], [["a - 1", "a - 2"], ["1", "1"]]),
        SliceKind::Lie => ParametricMatrix::parse(&["delta"], [["0", "delta"], ["1", "0"]]),
    }
    .expect("slice matrices parse")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    None,
    Traceless,
}

/// Gaussian elimination over the fraction field; returns a nullspace basis of the
/// rows (each of length `cols`).
fn fraction_nullspace(rows: &[Vec<Frac>], cols: usize, vars: &VarList) -> Result<Vec<Vec<Frac>>> {
    let mut m: Vec<Vec<Frac>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inverse()?;
        m[r] = m[r].iter().map(|x| x.mul(&inv)).collect();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let row_r = m[r].clone();
                m[i] = m[i].iter().zip(&row_r).map(|(x, y)| x.sub(&y.mul(&f))).collect();
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Frac::zero(vars); cols];
        v[free] = Frac::one(vars);
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = m[row][free].neg();
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Multiplies a fraction vector by its common denominator and removes common
/// polynomial factors among the denominators that divide every entry.
fn clear_vector(v: &[Frac], vars: &VarList) -> Result<Vec<Poly>> {
    let mut dens: Vec<Poly> = Vec::new();
    for f in v {
        if !f.den().is_constant() && !dens.contains(f.den()) {
            dens.push(f.den().clone());
        }
    }
    let common = dens.iter().fold(Poly::one(vars), |acc, d| &acc * d);
    let mut out: Vec<Poly> = v
        .iter()
        .map(|f| {
            let q = common.div_exact(f.den()).ok_or(Error::DivisionByZero)?;
            Ok(f.num() * &q)
        })
        .collect::<Result<_>>()?;
    for d in &dens {
        while out.iter().all(|e| e.div_exact(d).is_some()) && out.iter().any(|e| !e.is_zero()) {
            out = out.iter().map(|e| e.div_exact(d).unwrap()).collect();
        }
    }
    Ok(out)
}

/// A basis over the parameter ring of the matrices `X` with `[X, M] = 0`
/// (and `tr X = 0` when requested). Each basis element is verified to commute.
pub fn commutant_basis(m: &ParametricMatrix, constraint: Constraint) -> Result<Vec<ParametricMatrix>> {
    let vars = m.vars().clone();
    let cols = if constraint == Constraint::Traceless { 3 } else { 4 };
    // Unknowns are (p, q, r, s) or (p, q, r) with s = -p.
    let unit = |k: usize| -> Result<ParametricMatrix> {
        let mut e = vec![Poly::zero(&vars); 4];
        if constraint == Constraint::Traceless && k == 0 {
            e[0] = Poly::one(&vars);
            e[3] = Poly::constant(&vars, Q::from(-1));
        } else {
            e[k] = Poly::one(&vars);
        }
        ParametricMatrix::from_flat(&vars, &e)
    };
    let images: Vec<Vec<Poly>> = (0..cols).map(|k| Ok(unit(k)?.commutator(m)?.flat())).collect::<Result<_>>()?;
    let rows: Vec<Vec<Frac>> =
        (0..4).map(|eq| (0..cols).map(|k| Fraction::from_poly(images[k][eq].clone())).collect()).collect();
    let null = fraction_nullspace(&rows, cols, &vars)?;
    if null.is_empty() {
        return Err(Error::Degenerate(format!("only the zero matrix commutes with {m}")));
    }
    let mut out = Vec::new();
    for v in null {
        let c = clear_vector(&v, &vars)?;
        let flat = if constraint == Constraint::Traceless {
            vec![c[0].clone(), c[1].clone(), c[2].clone(), -&c[0]]
        } else {
            c
        };
        let x = ParametricMatrix::from_flat(&vars, &flat)?;
        if !x.commutator(m)?.is_zero() {
            return Err(Error::Degenerate(format!("candidate {x} does not commute with {m}")));
        }
        out.push(x);
    }
    Ok(out)
}

/// Coefficients expressing `v` in the span of `basis` over the fraction field, if any.
fn span_coefficients(basis: &[ParametricMatrix], v: &ParametricMatrix) -> Result<Option<Vec<Frac>>> {
    let vars = v.vars().clone();
    let n = basis.len();
    // Solve Σ c_k B_k = v: augmented nullspace with last column -v.
    let rows: Vec<Vec<Frac>> = (0..4)
        .map(|e| {
            let mut row: Vec<Frac> = basis.iter().map(|b| Fraction::from_poly(b.flat()[e].clone())).collect();
            row.push(Fraction::from_poly(-&v.flat()[e]));
            row
        })
        .collect();
    let null = fraction_nullspace(&rows, n + 1, &vars)?;
    for w in null {
        if !w[n].is_zero() {
            let inv = w[n].inverse()?;
            return Ok(Some(w[..n].iter().map(|c| c.mul(&inv)).collect()));
        }
    }
    Ok(None)
}

/// Whether two families of matrices generate the same module over the
/// polynomial parameter ring (every element of each is a polynomial combination of the other).
pub fn same_module(a: &[ParametricMatrix], b: &[ParametricMatrix]) -> Result<bool> {
    let contains = |basis: &[ParametricMatrix], v: &ParametricMatrix| -> Result<bool> {
        let v = v.with_vars(basis[0].vars())?;
        Ok(match span_coefficients(basis, &v)? {
            Some(c) => c.iter().all(|x| x.as_poly().is_some_and(|p| p.terms().all(|(e, _)| e.iter().all(|&k| k >= 0)))),
            None => false,
        })
    };
    if a.is_empty() || b.is_empty() {
        return Ok(a.is_empty() && b.is_empty());
    }
    for v in b {
        if !contains(a, v)? {
            return Ok(false);
        }
    }
    for v in a {
        if !contains(b, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelName {
    /// Commuting pairs in the group: the cubic surface `abc - b^2 - c^2 = 1`.
    S,
    /// Group element commuting with a Lie slice: `xi^2 - delta*eta^2 = 1`.
    SPrime,
    /// Traceless matrix commuting with a group slice: the plane `(a, zeta)`.
    PlaneGroupLie,
    /// Traceless matrix commuting with a Lie slice: the plane `(delta, theta)`.
    PlaneLieLie,
}

impl ModelName {
    pub fn all() -> [ModelName; 4] {
        [ModelName::S, ModelName::SPrime, ModelName::PlaneGroupLie, ModelName::PlaneLieLie]
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "S" => ModelName::S,
            "S-prime" => ModelName::SPrime,
            "A2-Gg" => ModelName::PlaneGroupLie,
            "A2-gg" => ModelName::PlaneLieLie,
            _ => return Err(Error::Parse(format!("unknown model `{s}` (expected S, S-prime, A2-Gg, A2-gg)"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            ModelName::S => "S",
            ModelName::SPrime => "S-prime",
            ModelName::PlaneGroupLie => "A2-Gg",
            ModelName::PlaneLieLie => "A2-gg",
        }
    }

    /// The blow-up flavor whose W-invariant part the model matches.
    pub fn flavor(&self) -> Flavor {
        match self {
            ModelName::S => Flavor::GROUP_GROUP,
            ModelName::SPrime => Flavor::GROUP_LIE,
            ModelName::PlaneGroupLie => Flavor::LIE_GROUP,
            ModelName::PlaneLieLie => Flavor::GG_LIE,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SliceModel {
    pub name: ModelName,
    /// Coordinate ring of the model (polynomial, no inverses).
    pub ring: PolyRing,
    /// The defining relation, or `None` for an affine plane.
    pub relation: Option<Poly>,
    /// Ring of the diagonal coordinates.
    pub target: PolyRing,
    /// Image of each model coordinate in the diagonal coordinates.
    pub parametrization: Vec<(String, Frac)>,
    /// Named involutions of the model coordinates.
    pub involutions: Vec<(String, Substitution)>,
    /// The slice matrix and the general commuting element, over slice and family parameters.
    pub slice: ParametricMatrix,
    pub general_element: ParametricMatrix,
    pub family_params: Vec<String>,
    pub constraint: Constraint,
}

fn fractions(target: &PolyRing, pairs: &[(&str, &str)]) -> Result<Vec<(String, Frac)>> {
    pairs
        .iter()
        .map(|(n, s)| Ok((n.to_string(), crate::text::parse_fraction(s, Some(target.vars()))?)))
        .collect()
}

/// Builds one of the four rank-one models.
pub fn model(name: ModelName) -> SliceModel {
    build_model(name).expect("model data is well formed")
}

fn build_model(name: ModelName) -> Result<SliceModel> {
    let m = match name {
        ModelName::S => {
            let ring = PolyRing::polynomial(&["a", "b", "c"]);
            let target = PolyRing::laurent(&["y", "z"]);
            let parametrization = fractions(
                &target,
                &[
                    ("a", "z + z^-1"),
                    ("b", "-i/2*(y + y^-1 + (y - y^-1)*(z + z^-1)/(z - z^-1))"),
                    ("c", "-i*(y - y^-1)/(z - z^-1)"),
                ],
            )?;
            SliceModel {
                name,
                relation: Some(Poly::parse_in("a*b*c - b^2 - c^2 - 1", ring.vars())?),
                involutions: vec![
                    ("iota".into(), Substitution::from_pairs(&[("a", "a"), ("b", "-b"), ("c", "-c")])?),
                    ("jmath".into(), Substitution::from_pairs(&[("a", "-a"), ("b", "b"), ("c", "-c")])?),
                ],
                ring,
                target,
                parametrization,
                slice: kostant_slice(SliceKind::Group),
                general_element: ParametricMatrix::parse(
                    &["a", "b", "c"],
                    [["i*((1 - a)*c + b)", "i*(2 - a)*c"], ["-i*c", "i*(b - c)"]],
                )?,
                family_params: vec!["b".into(), "c".into()],
                constraint: Constraint::None,
            }
        }
        ModelName::SPrime => {
            let ring = PolyRing::polynomial(&["xi", "delta", "eta"]);
            let target = PolyRing::new(&["y", "x"], &["y"])?;
            let parametrization =
                fractions(&target, &[("xi", "(y + y^-1)/2"), ("delta", "x^2"), ("eta", "(y - y^-1)/(2*x)")])?;
            SliceModel {
                name,
                relation: Some(Poly::parse_in("xi^2 - delta*eta^2 - 1", ring.vars())?),
                involutions: vec![(
                    "iota".into(),
                    Substitution::from_pairs(&[("xi", "-xi"), ("delta", "delta"), ("eta", "-eta")])?,
                )],
                ring,
                target,
                parametrization,
                slice: kostant_slice(SliceKind::Lie),
                general_element: ParametricMatrix::parse(&["delta", "xi", "eta"], [["xi", "delta*eta"], ["eta", "xi"]])?,
                family_params: vec!["xi".into(), "eta".into()],
                constraint: Constraint::None,
            }
        }
        ModelName::PlaneGroupLie => {
            let ring = PolyRing::polynomial(&["a", "zeta"]);
            let target = PolyRing::new(&["x", "z"], &["z"])?;
            let parametrization = fractions(&target, &[("a", "z + z^-1"), ("zeta", "x/(z - z^-1)")])?;
            SliceModel {
                name,
                relation: None,
                involutions: vec![("jmath".into(), Substitution::from_pairs(&[("a", "-a"), ("zeta", "-zeta")])?)],
                ring,
                target,
                parametrization,
                slice: kostant_slice(SliceKind::Group),
                general_element: ParametricMatrix::parse(
                    &["a", "zeta"],
                    [["zeta*(2 - a)", "zeta*(4 - 2*a)"], ["-2*zeta", "zeta*(a - 2)"]],
                )?,
                family_params: vec!["zeta".into()],
                constraint: Constraint::Traceless,
            }
        }
        ModelName::PlaneLieLie => {
            let ring = PolyRing::polynomial(&["delta", "theta"]);
            let target = PolyRing::polynomial(&["u", "x"]);
            let parametrization = fractions(&target, &[("delta", "x^2"), ("theta", "u/x")])?;
            SliceModel {
                name,
                relation: None,
                involutions: Vec::new(),
                ring,
                target,
                parametrization,
                slice: kostant_slice(SliceKind::Lie),
                general_element: ParametricMatrix::parse(
                    &["delta", "theta"],
                    [["0", "delta*theta"], ["theta", "0"]],
                )?,
                family_params: vec!["theta".into()],
                constraint: Constraint::Traceless,
            }
        }
    };
    Ok(m)
}

impl SliceModel {
    pub fn image(&self, coord: &str) -> Option<&Frac> {
        self.parametrization.iter().find(|(n, _)| n == coord).map(|(_, f)| f)
    }

    /// The relation with the parametrization substituted.
    pub fn substituted_relation(&self) -> Result<Option<Frac>> {
        let Some(rel) = &self.relation else { return Ok(None) };
        let table = self.parametrization.iter().cloned().collect();
        Ok(Some(crate::fraction::substitute_poly(rel, &table, self.target.vars())?))
    }

    /// Whether substituting the parametrization kills the relation and every
    /// involution preserves the relation ideal.
    pub fn verify_parametrization(&self, limits: &GbLimits) -> Result<bool> {
        if let Some(f) = self.substituted_relation()? {
            if !f.is_zero() {
                return Ok(false);
            }
        }
        self.involutions_preserve_relation(limits)
    }

    pub fn involutions_preserve_relation(&self, limits: &GbLimits) -> Result<bool> {
        let Some(rel) = &self.relation else { return Ok(true) };
        let gb = Ideal::new(self.ring.clone(), vec![rel.clone()])?.groebner(MonomialOrder::GrevLex, limits)?;
        for (_, s) in &self.involutions {
            if !gb.contains(&s.apply(rel)?.with_vars(self.ring.vars())?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `[X, M]` for the printed general element, with the slice aligned to its variables.
    pub fn general_commutator(&self) -> Result<ParametricMatrix> {
        let m = self.slice.with_vars(self.general_element.vars())?;
        self.general_element.commutator(&m)
    }

    /// Computed commutant basis compared as a module with the printed family.
    pub fn commutant_matches(&self) -> Result<bool> {
        let computed = commutant_basis(&self.slice, self.constraint)?;
        let params: Vec<&str> = self.family_params.iter().map(|s| s.as_str()).collect();
        let printed = self.general_element.linear_parts(&params)?;
        let computed: Vec<ParametricMatrix> =
            computed.iter().map(|c| c.with_vars(self.general_element.vars())).collect::<Result<_>>()?;
        same_module(&computed, &printed)
    }

    pub fn subalgebra(&self, limits: &GbLimits) -> Result<Subalgebra<Q>> {
        Subalgebra::new(&self.target, &[], &self.parametrization, limits)
    }

    /// Generators of the invariants under the chosen involutions, modulo the relation.
    pub fn isogeny_invariants(&self, which: &[&str], bound: u32, limits: &GbLimits) -> Result<InvariantGenerators> {
        let mut gens = Vec::new();
        for w in which {
            let (_, s) = self
                .involutions
                .iter()
                .find(|(n, _)| n == w)
                .ok_or_else(|| Error::Invalid(format!("model {} has no involution `{w}`", self.name.name())))?;
            gens.push(s.clone());
        }
        let action = GroupAction::new(gens)?;
        let rels: Vec<Poly> = self.relation.iter().cloned().collect();
        invariant_generators(&action, &self.ring, &rels, bound, limits)
    }
}

/// Relations satisfied by a list of image fractions: the kernel of the map from
/// the polynomial ring on the names, as reduced lex-monic generators.
pub fn kernel_of_map(target: &PolyRing, images: &[(String, Frac)], limits: &GbLimits) -> Result<Vec<Poly>> {
    let sub = Subalgebra::new(target, &[], images, limits)?;
    sub.kernel()?.reduced_generators(limits)
}

/// Outcome of comparing a model with the invariant part of a blow-up.
#[derive(Debug, Clone)]
pub struct BlowupMatch {
    /// Model coordinates with their membership certificates (`None` when not a member).
    pub coordinates: Vec<(String, Option<Poly>)>,
    /// Invariant blow-up elements with their expression in the model coordinates.
    pub invariants: Vec<(String, Option<Poly>)>,
}

impl BlowupMatch {
    pub fn passed(&self) -> bool {
        self.coordinates.iter().all(|(_, c)| c.is_some()) && self.invariants.iter().all(|(_, e)| e.is_some())
    }
}

/// Two-sided containment between the model coordinate ring and the W-invariant
/// elements of the blow-up of total degree at most `bound`.
///
/// An invariant that is a linear combination of products of lower-degree invariants
/// already expressed is written through those products; the rest go through the
/// subalgebra membership basis.
pub fn blowup_match(m: &SliceModel, b: &BlowupAlgebra, bound: u32, limits: &GbLimits) -> Result<BlowupMatch> {
    if m.target.vars() != b.base_ring().vars() {
        return Err(Error::Invalid(format!(
            "model {} lives over {:?}, the blow-up over {:?}",
            m.name.name(),
            m.target.vars(),
            b.base_ring().vars()
        )));
    }
    let mut coordinates = Vec::new();
    for (n, f) in &m.parametrization {
        coordinates.push((n.clone(), b.invariant_membership(f)?.certificate));
    }
    let sub = m.subalgebra(limits)?;
    let model_vars = var_list(&m.ring.vars().iter().cloned().collect::<Vec<_>>());
    let mut elements = b.invariant_elements_total(bound)?;
    elements.sort_by_key(|e| e.degree);
    // Irreducible invariants found so far, with their expressions.
    let mut generators: Vec<(u32, Frac, Poly)> = Vec::new();
    let mut pool: Option<ProductPool> = None;
    let mut invariants = Vec::new();
    for e in elements {
        if pool.as_ref().is_none_or(|p| p.generators != generators.len() || p.degree != e.degree) {
            pool = Some(ProductPool::new(&generators, e.degree, b.base_ring().vars(), &model_vars));
        }
        let expr = match pool.as_mut().unwrap().express(&e.fraction)? {
            Some(x) => Some(x),
            None => {
                let x = sub.express(&e.fraction)?.map(|p| p.with_vars(&model_vars)).transpose()?;
                if let Some(x) = &x {
                    generators.push((e.degree, e.fraction.clone(), x.clone()));
                }
                x
            }
        };
        invariants.push((e.label, expr));
    }
    Ok(BlowupMatch { coordinates, invariants })
}

/// Products of expressed generators of degree below a fixed bound, cleared to a
/// common denominator so that span questions become linear algebra.
struct ProductPool {
    generators: usize,
    degree: u32,
    products: Vec<(Frac, Poly)>,
    common: Poly,
    span: crate::linalg::TrackedSpan<Q>,
    model_vars: VarList,
}

impl ProductPool {
    fn new(gens: &[(u32, Frac, Poly)], degree: u32, base: &VarList, vars: &VarList) -> Self {
        let mut graded: Vec<(u32, Frac, Poly)> = vec![(0, Frac::one(base), Poly::one(vars))];
        for (d, g, x) in gens.iter().filter(|(d, _, _)| *d < degree) {
            let mut extra = Vec::new();
            for (pd, pf, px) in &graded {
                let (mut nd, mut nf, mut nx) = (*pd + d, pf.clone(), px.clone());
                while nd <= degree {
                    nf = nf.mul(g);
                    nx = &nx * x;
                    extra.push((nd, nf.clone(), nx.clone()));
                    nd += d;
                }
            }
            graded.extend(extra);
        }
        let products: Vec<(Frac, Poly)> = graded.into_iter().map(|(_, f, x)| (f, x)).collect();
        let mut common = Poly::one(base);
        for (p, _) in &products {
            if common.div_exact(p.den()).is_none() {
                common = &common * p.den();
            }
        }
        let columns: Vec<Poly> =
            products.iter().map(|(p, _)| clear_to(p, &common).expect("common multiple")).collect();
        let span = crate::linalg::TrackedSpan::new(&columns);
        ProductPool { generators: gens.len(), degree, products, common, span, model_vars: vars.clone() }
    }

    fn express(&mut self, f: &Frac) -> Result<Option<Poly>> {
        if self.products.len() <= 1 {
            return Ok(None);
        }
        let Some(q) = self.common.div_exact(f.den()) else { return Ok(None) };
        let target = f.num() * &q;
        let Some(coeffs) = self.span.solve(&target) else { return Ok(None) };
        let mut expr = Poly::zero(&self.model_vars);
        for (c, (_, x)) in coeffs.iter().zip(&self.products) {
            expr = &expr + &x.scale(c);
        }
        Ok(Some(expr))
    }
}

fn clear_to(g: &Frac, common: &Poly) -> Option<Poly> {
    Some(g.num() * &common.div_exact(g.den())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::sorted_strings;

    fn lim() -> GbLimits {
        GbLimits::default()
    }

    #[test]
    fn slices() {
        assert_eq!(kostant_slice(SliceKind::Group).to_string(), "[[a - 1, a - 2], [1, 1]]");
        assert_eq!(kostant_slice(SliceKind::Lie).to_string(), "[[0, delta], [1, 0]]");
        assert_eq!(kostant_slice(SliceKind::Group).trace().to_string(), "a");
    }

    #[test]
    fn commutants() {
        let lie = kostant_slice(SliceKind::Lie);
        let basis = commutant_basis(&lie, Constraint::None).unwrap();
        assert!(same_module(&basis, &[ParametricMatrix::identity(lie.vars()), lie.clone()]).unwrap());
        let t = commutant_basis(&kostant_slice(SliceKind::Group), Constraint::Traceless).unwrap();
        assert_eq!(t.len(), 1);
        let printed = ParametricMatrix::parse(&["a"], [["2 - a", "4 - 2*a"], ["-2", "a - 2"]]).unwrap();
        assert!(same_module(&t, std::slice::from_ref(&printed)).unwrap());
        assert!(!same_module(&t, &[printed.scale(&Poly::parse_in("a", printed.vars()).unwrap()).unwrap()]).unwrap());
        for name in ModelName::all() {
            let m = model(name);
            assert!(m.commutant_matches().unwrap(), "{}", name.name());
            assert!(m.general_commutator().unwrap().is_zero());
        }
    }

    #[test]
    fn determinant_of_general_element_is_the_relation() {
        let s = model(ModelName::S);
        let one = Poly::one(s.ring.vars());
        assert_eq!(&s.general_element.det() - &one, s.relation.clone().unwrap());
        let sp = model(ModelName::SPrime);
        let one = Poly::one(sp.ring.vars());
        assert_eq!(&sp.general_element.det().with_vars(sp.ring.vars()).unwrap() - &one, sp.relation.clone().unwrap());
    }

    #[test]
    fn parametrizations() {
        for name in ModelName::all() {
            assert!(model(name).verify_parametrization(&lim()).unwrap(), "{}", name.name());
        }
        let s = model(ModelName::S);
        assert_eq!(s.image("a").unwrap().to_string(), "z + z^-1");
        let g = model(ModelName::PlaneGroupLie);
        assert_eq!(g.image("zeta").unwrap().to_string(), "(x*z)/(z^2 - 1)");
    }

    #[test]
    fn kernels() {
        let k = |n| {
            let m = model(n);
            kernel_of_map(&m.target, &m.parametrization, &lim()).unwrap().iter().map(|p| p.to_string()).collect::<Vec<_>>()
        };
        assert_eq!(k(ModelName::SPrime), vec!["xi^2 - delta*eta^2 - 1"]);
        assert_eq!(k(ModelName::S), vec!["a*b*c - b^2 - c^2 - 1"]);
        assert!(k(ModelName::PlaneGroupLie).is_empty());
        assert!(k(ModelName::PlaneLieLie).is_empty());
    }

    #[test]
    fn isogenies() {
        let s = model(ModelName::S);
        let j = s.isogeny_invariants(&["jmath"], 2, &lim()).unwrap();
        assert_eq!(sorted_strings(&j.essential()), vec!["a*c", "a^2", "b", "c^2"]);
        let both = s.isogeny_invariants(&["iota", "jmath"], 3, &lim()).unwrap();
        assert_eq!(sorted_strings(&both.polys()), vec!["a*b*c", "a^2", "b^2", "c^2"]);
        assert_eq!(sorted_strings(&both.redundant.iter().map(|g| g.poly.clone()).collect::<Vec<_>>()), vec!["a*b*c"]);
        let sp = model(ModelName::SPrime);
        let i = sp.isogeny_invariants(&["iota"], 2, &lim()).unwrap();
        assert_eq!(sorted_strings(&i.essential()), vec!["delta", "eta^2", "xi*eta", "xi^2"]);
    }

    #[test]
    fn blowup_matches() {
        for name in ModelName::all() {
            let m = model(name);
            let b = BlowupAlgebra::rank_one(name.flavor(), &lim()).unwrap();
            let r = blowup_match(&m, &b, 4, &lim()).unwrap();
            assert!(r.passed(), "{}: {:?}", name.name(), r);
        }
    }
}
