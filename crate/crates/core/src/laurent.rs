//! Sparse multivariate Laurent polynomials over an exact field.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Exponent vector; negative entries are allowed.
pub type Exponents = Vec<i32>;

/// Ordered list of variable names shared between polynomials of one ring.
pub type VarList = Arc<Vec<String>>;

pub fn var_list<S: AsRef<str>>(names: &[S]) -> VarList {
    Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect())
}

/// A Laurent polynomial: a finite map from exponent vectors to nonzero coefficients.
///
/// Terms are kept in a `BTreeMap`, so the canonical order is lexicographic on the
/// variable list; iteration via [`LaurentPoly::terms`] is descending.
#[derive(Clone)]
pub struct LaurentPoly<F> {
    vars: VarList,
    terms: BTreeMap<Exponents, F>,
}

impl<F: Field> LaurentPoly<F> {
    pub fn zero(vars: &VarList) -> Self {
        LaurentPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &VarList) -> Self {
        Self::constant(vars, F::one())
    }

    pub fn constant(vars: &VarList, c: F) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn monomial(vars: &VarList, exps: Exponents, c: F) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { vars: vars.clone(), terms }
    }

    /// The variable `name` raised to the first power.
    pub fn var(vars: &VarList, name: &str) -> Result<Self> {
        let idx = index_of(vars, name)?;
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Ok(Self::monomial(vars, e, F::one()))
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, F)>>(vars: &VarList, terms: I) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    /// Terms in descending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &F)> {
        self.terms.iter().rev()
    }

    /// Terms in printing order: variable by variable, larger absolute exponent
    /// first and positive before negative, so `y + y^-1 + z + z^-1 + 2`.
    pub fn display_terms(&self) -> Vec<(&Exponents, &F)> {
        let mut v: Vec<(&Exponents, &F)> = self.terms.iter().collect();
        v.sort_by(|a, b| display_cmp(b.0, a.0));
        v
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[i32]) -> F {
        self.terms.get(exps).cloned().unwrap_or_else(F::zero)
    }

    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// `Some((c, e))` when the polynomial is a single term `c * x^e`, i.e. a unit.
    pub fn as_unit(&self) -> Option<(F, Exponents)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some((c.clone(), e.clone()))
    }

    /// The leading (lexicographically largest) term.
    pub fn leading(&self) -> Option<(&Exponents, &F)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, exps: Exponents, c: F) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.vars.len());
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Re-expresses the polynomial over `vars`, which must contain every variable
    /// that occurs with a nonzero exponent.
    pub fn with_vars(&self, vars: &VarList) -> Result<Self> {
        if Arc::ptr_eq(vars, &self.vars) || **vars == *self.vars {
            return Ok(LaurentPoly { vars: vars.clone(), terms: self.terms.clone() });
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            let pos = vars.iter().position(|w| w == v);
            if pos.is_none() && self.terms.keys().any(|e| e[i] != 0) {
                return Err(Error::UnknownVariable(v.clone()));
            }
            map.push(pos);
        }
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &x) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    ne[j] += x;
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Brings two polynomials over a common variable list (union, `self` first).
    pub fn align(&self, other: &Self) -> (Self, Self) {
        if Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars {
            return (self.clone(), other.with_vars(&self.vars).unwrap());
        }
        let mut names: Vec<String> = self.vars.to_vec();
        for v in other.vars.iter() {
            if !names.contains(v) {
                names.push(v.clone());
            }
        }
        let vars = Arc::new(names);
        (self.with_vars(&vars).unwrap(), other.with_vars(&vars).unwrap())
    }

    /// Drops variables that do not occur.
    pub fn occurring_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|e| e[*i] != 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.mul_ref(c))).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `x^e` for a unit; negative powers only for single-term polynomials.
    pub fn pow_i(&self, n: i32) -> Result<Self> {
        if n >= 0 {
            return Ok(self.pow(n as u32));
        }
        let (c, e) = self.as_unit().ok_or_else(|| Error::NotUnit(format!("{self:?}")))?;
        let inv = c.inverse().ok_or(Error::DivisionByZero)?;
        let unit = Self::monomial(&self.vars, e.iter().map(|x| -x).collect(), inv);
        Ok(unit.pow((-n) as u32))
    }

    /// Total degree measured as the sum of absolute exponents of the largest term.
    pub fn abs_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().map(|x| x.unsigned_abs()).sum()).max().unwrap_or(0)
    }

    /// Componentwise minimum of exponents (the largest monomial dividing every term).
    pub fn monomial_content(&self) -> Exponents {
        let mut m: Option<Exponents> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(mm) => mm.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.vars.len()])
    }

    /// Partial derivative with respect to variable `idx`.
    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[idx] != 0 {
                let mut ne = e.clone();
                ne[idx] -= 1;
                out.add_term(ne, c.mul_ref(&F::from_i64(e[idx] as i64)));
            }
        }
        out
    }

    /// Euler operator `x_idx * d/dx_idx`.
    pub fn log_derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[idx] != 0 {
                out.add_term(e.clone(), c.mul_ref(&F::from_i64(e[idx] as i64)));
            }
        }
        out
    }

    /// Evaluates at a point. Returns `None` if a variable with a negative exponent is 0.
    pub fn evaluate(&self, point: &[F]) -> Option<F> {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k != 0 {
                    t = t.mul_ref(&x.pow_i64(k as i64)?);
                }
            }
            acc = acc.add_ref(&t);
        }
        Some(acc)
    }

    /// Substitutes polynomials for variables. Variables without an image are kept
    /// if they exist in the target variable list.  Negative powers require unit images.
    pub fn substitute(&self, images: &HashMap<String, LaurentPoly<F>>, target: &VarList) -> Result<Self> {
        let mut cache: HashMap<(usize, i32), LaurentPoly<F>> = HashMap::new();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let key = (i, k);
                if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(key) {
                    let base = match images.get(&self.vars[i]) {
                        Some(img) => img.with_vars(target)?,
                        None => Self::var(target, &self.vars[i])?,
                    };
                    e.insert(base.pow_i(k)?);
                }
                t = &t * &cache[&key];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Exact division in the Laurent ring (monomials are units). `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (num, den) = self.align(d);
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(num);
        }
        if let Some((c, e)) = den.as_unit() {
            let inv = c.inverse()?;
            return Some(num.shift(&e.iter().map(|x| -x).collect::<Vec<_>>()).scale(&inv));
        }
        let dc = den.monomial_content();
        let neg_dc: Vec<i32> = dc.iter().map(|x| -x).collect();
        let den = den.shift(&neg_dc);
        let nc = num.monomial_content();
        let neg_nc: Vec<i32> = nc.iter().map(|x| -x).collect();
        let mut rem = num.shift(&neg_nc);
        let (lde, ldc) = den.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let ldc_inv = ldc.inverse()?;
        let mut quot = Self::zero(&rem.vars);
        while let Some((le, lc)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i32> = le.iter().zip(&lde).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let qc = lc.mul_ref(&ldc_inv);
            let step = Self::monomial(&rem.vars, qe, qc);
            rem = &rem - &(&step * &den);
            quot = &quot + &step;
        }
        // num = quot * den * x^(nc - dc)
        let adj: Vec<i32> = nc.iter().zip(&dc).map(|(a, b)| a - b).collect();
        Some(quot.shift(&adj))
    }

    /// Splits off a unit so that the remainder is a polynomial with no monomial
    /// factor and leading coefficient 1: `self = unit * rest`.
    pub fn unit_normalize(&self) -> (F, Exponents, Self) {
        if self.is_zero() {
            return (F::one(), vec![0; self.vars.len()], self.clone());
        }
        let content = self.monomial_content();
        let neg: Vec<i32> = content.iter().map(|x| -x).collect();
        let shifted = self.shift(&neg);
        let lc = shifted.leading().unwrap().1.clone();
        let rest = shifted.scale(&lc.inverse().unwrap());
        (lc, content, rest)
    }

    pub fn map_coefficients<G: Field>(&self, f: impl Fn(&F) -> G) -> LaurentPoly<G> {
        let mut out = LaurentPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }
}

/// Total order used for printing; see [`LaurentPoly::display_terms`].
pub fn display_cmp(a: &[i32], b: &[i32]) -> std::cmp::Ordering {
    let key = |k: i32| (k.unsigned_abs(), k > 0);
    for (x, y) in a.iter().zip(b) {
        match key(*x).cmp(&key(*y)) {
            std::cmp::Ordering::Equal => {}
            o => return o,
        }
    }
    std::cmp::Ordering::Equal
}

pub(crate) fn index_of(vars: &[String], name: &str) -> Result<usize> {
    vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
}

impl<F: Field> PartialEq for LaurentPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        if *self.vars == *other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = self.align(other);
        a.terms == b.terms
    }
}

impl<F: Field> Eq for LaurentPoly<F> {}

impl<'a, F: Field> Add<&'a LaurentPoly<F>> for &'a LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(self, rhs: &'a LaurentPoly<F>) -> LaurentPoly<F> {
        let (mut a, b) = if *self.vars == *rhs.vars {
            (self.clone(), rhs.clone())
        } else {
            self.align(rhs)
        };
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl<'a, F: Field> Sub<&'a LaurentPoly<F>> for &'a LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn sub(self, rhs: &'a LaurentPoly<F>) -> LaurentPoly<F> {
        let (mut a, b) = if *self.vars == *rhs.vars {
            (self.clone(), rhs.clone())
        } else {
            self.align(rhs)
        };
        for (e, c) in b.terms {
            a.add_term(e, -c);
        }
        a
    }
}

impl<'a, F: Field> Mul<&'a LaurentPoly<F>> for &'a LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn mul(self, rhs: &'a LaurentPoly<F>) -> LaurentPoly<F> {
        let (a, b) = if *self.vars == *rhs.vars {
            (self.clone(), rhs.clone())
        } else {
            self.align(rhs)
        };
        let mut out = LaurentPoly::zero(&a.vars);
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                #[allow(clippy::suspicious_arithmetic_impl)]
                let e: Exponents = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.add_term(e, c1.mul_ref(c2));
            }
        }
        out
    }
}

impl<F: Field> Add for LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<F: Field> Sub for LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<F: Field> Mul for LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<F: Field> Neg for LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn neg(self) -> Self {
        LaurentPoly { vars: self.vars, terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl<F: Field> Neg for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn neg(self) -> LaurentPoly<F> {
        -(self.clone())
    }
}

impl<F: fmt::Debug> fmt::Debug for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sorted: Vec<(&Exponents, &F)> = self.terms.iter().collect();
        sorted.sort_by(|a, b| display_cmp(b.0, a.0));
        let parts: Vec<String> = sorted
            .into_iter()
            .map(|(e, c)| {
                let mono: Vec<String> = self
                    .vars
                    .iter()
                    .zip(e)
                    .filter(|(_, &k)| k != 0)
                    .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                    .collect();
                format!("{c:?}*{}", if mono.is_empty() { "1".to_string() } else { mono.join("*") })
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as Q;

    fn vars() -> VarList {
        var_list(&["y", "z"])
    }

    fn y() -> LaurentPoly<Q> {
        LaurentPoly::var(&vars(), "y").unwrap()
    }

    fn z() -> LaurentPoly<Q> {
        LaurentPoly::var(&vars(), "z").unwrap()
    }

    fn inv(p: &LaurentPoly<Q>) -> LaurentPoly<Q> {
        p.pow_i(-1).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = &y() + &inv(&y());
        let b = &y() - &inv(&y());
        let expected = &y().pow(2) - &inv(&y()).pow(2);
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn multiplicative_identity() {
        let f = &(&y() * &z()) + &LaurentPoly::constant(&vars(), Q::from(3));
        assert_eq!(&f * &LaurentPoly::one(&vars()), f);
    }

    #[test]
    fn binomial_square() {
        let a = &z() + &inv(&z());
        let expected = &(&z().pow(2) + &LaurentPoly::constant(&vars(), Q::from(2))) + &inv(&z()).pow(2);
        assert_eq!(a.pow(2), expected);
    }

    #[test]
    fn alignment_by_name_union() {
        let p: LaurentPoly<Q> = LaurentPoly::var(&var_list(&["a"]), "a").unwrap();
        let q: LaurentPoly<Q> = LaurentPoly::var(&var_list(&["b"]), "b").unwrap();
        let s = &p + &q;
        assert_eq!(**s.vars(), vec!["a".to_string(), "b".to_string()]);
        assert_eq!(s.num_terms(), 2);
    }

    #[test]
    fn exact_division_in_laurent_ring() {
        // (y - y^-1) / (z - z^-1) is not a Laurent polynomial, but (y^2 - 1) / (y - y^-1) = y.
        let num = &y().pow(2) - &LaurentPoly::one(&vars());
        let den = &y() - &inv(&y());
        assert_eq!(num.div_exact(&den).unwrap(), y());
        let den2 = &z() - &inv(&z());
        assert!(num.div_exact(&den2).is_none());
    }

    #[test]
    fn missing_variable_is_an_error() {
        let p = y();
        assert!(p.with_vars(&var_list(&["z"])).is_err());
    }
}
