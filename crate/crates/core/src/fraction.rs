//! Quotients of Laurent polynomials.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, VarList};
use crate::scalar::Field;

/// `num / den` with `den` a polynomial with no monomial factor and leading coefficient 1.
#[derive(Clone)]
pub struct Fraction<F> {
    num: LaurentPoly<F>,
    den: LaurentPoly<F>,
}

impl<F: Field> Fraction<F> {
    pub fn new(num: LaurentPoly<F>, den: LaurentPoly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (num, den) = num.align(&den);
        let (c, e, rest) = den.unit_normalize();
        let inv = c.inverse().ok_or(Error::DivisionByZero)?;
        let num = num.shift(&e.iter().map(|x| -x).collect::<Vec<_>>()).scale(&inv);
        Ok(Self::cancel(num, rest))
    }

    fn cancel(num: LaurentPoly<F>, den: LaurentPoly<F>) -> Self {
        if den.is_constant() {
            return Fraction { num, den };
        }
        if let Some(q) = num.div_exact(&den) {
            let one = LaurentPoly::one(q.vars());
            return Fraction { num: q, den: one };
        }
        Fraction { num, den }
    }

    /// `num / (f_1 * ... * f_k)`, cancelling any factor `f_i` that divides `num`.
    fn from_factors(mut num: LaurentPoly<F>, factors: [&LaurentPoly<F>; 2]) -> Self {
        let mut den = LaurentPoly::one(num.vars());
        for f in factors {
            match num.div_exact(f) {
                Some(q) if !f.is_constant() => num = q,
                _ => den = &den * f,
            }
        }
        Self::new(num, den).unwrap()
    }

    pub fn from_poly(p: LaurentPoly<F>) -> Self {
        let den = LaurentPoly::one(p.vars());
        Fraction { num: p, den }
    }

    pub fn zero(vars: &VarList) -> Self {
        Self::from_poly(LaurentPoly::zero(vars))
    }

    pub fn one(vars: &VarList) -> Self {
        Self::from_poly(LaurentPoly::one(vars))
    }

    pub fn num(&self) -> &LaurentPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly<F> {
        &self.den
    }

    pub fn vars(&self) -> &VarList {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial this fraction equals, if any.
    pub fn as_poly(&self) -> Option<LaurentPoly<F>> {
        if self.den.is_constant() {
            let c = self.den.as_constant().unwrap();
            return Some(self.num.scale(&c.inverse()?));
        }
        self.num.div_exact(&self.den)
    }

    pub fn with_vars(&self, vars: &VarList) -> Result<Self> {
        Ok(Fraction { num: self.num.with_vars(vars)?, den: self.den.with_vars(vars)? })
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let (n1, d1) = (&self.num, &self.den);
        let (n2, d2) = (&other.num, &other.den);
        if d1 == d2 {
            return Self::new(n1 + n2, d1.clone()).unwrap();
        }
        if d2.is_constant() {
            return Self::new(n1 + &(n2 * d1), d1.clone()).unwrap();
        }
        if d1.is_constant() {
            return Self::new(&(n1 * d2) + n2, d2.clone()).unwrap();
        }
        if let Some(q) = d2.div_exact(d1) {
            return Self::new(&(n1 * &q) + n2, d2.clone()).unwrap();
        }
        if let Some(q) = d1.div_exact(d2) {
            return Self::new(n1 + &(n2 * &q), d1.clone()).unwrap();
        }
        Self::from_factors(&(n1 * d2) + &(n2 * d1), [d1, d2])
    }

    pub fn neg(&self) -> Self {
        Fraction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let Some(q) = self.num.div_exact(&other.den) {
            return Self::new(&q * &other.num, self.den.clone()).unwrap();
        }
        if let Some(q) = other.num.div_exact(&self.den) {
            return Self::new(&self.num * &q, other.den.clone()).unwrap();
        }
        Self::from_factors(&self.num * &other.num, [&self.den, &other.den])
    }

    pub fn scale(&self, c: &F) -> Self {
        Fraction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow_i(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.vars());
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Partial derivative with respect to variable `idx` (quotient rule).
    pub fn derivative(&self, idx: usize) -> Self {
        self.derive_with(|p| p.derivative(idx))
    }

    /// `x_idx * d/dx_idx`.
    pub fn log_derivative(&self, idx: usize) -> Self {
        self.derive_with(|p| p.log_derivative(idx))
    }

    fn derive_with(&self, d: impl Fn(&LaurentPoly<F>) -> LaurentPoly<F>) -> Self {
        let dn = d(&self.num);
        if self.den.is_constant() {
            return Fraction { num: dn, den: self.den.clone() };
        }
        let dd = d(&self.den);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::from_factors(num, [&self.den, &self.den])
    }

    pub fn evaluate(&self, point: &[F]) -> Option<F> {
        let d = self.den.evaluate(point)?;
        let n = self.num.evaluate(point)?;
        Some(n * d.inverse()?)
    }

    /// Substitutes fractions for the variables of `self`.
    pub fn substitute(&self, images: &HashMap<String, Fraction<F>>, target: &VarList) -> Result<Self> {
        let n = substitute_poly(&self.num, images, target)?;
        let d = substitute_poly(&self.den, images, target)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(n.mul(&d.inverse()?))
    }
}

/// Evaluates a Laurent polynomial at fractional images of its variables.
pub fn substitute_poly<F: Field>(
    p: &LaurentPoly<F>,
    images: &HashMap<String, Fraction<F>>,
    target: &VarList,
) -> Result<Fraction<F>> {
    let vars = p.vars().clone();
    let mut powers: HashMap<(usize, i32), Fraction<F>> = HashMap::new();
    let mut acc = Fraction::zero(target);
    for (e, c) in p.terms() {
        let mut t = Fraction::from_poly(LaurentPoly::constant(target, c.clone()));
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if let std::collections::hash_map::Entry::Vacant(e) = powers.entry((i, k)) {
                let base = match images.get(&vars[i]) {
                    Some(f) => f.with_vars(target)?,
                    None => Fraction::from_poly(LaurentPoly::var(target, &vars[i])?),
                };
                e.insert(base.pow_i(k)?);
            }
            t = t.mul(&powers[&(i, k)]);
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}

impl<F: Field> PartialEq for Fraction<F> {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<F: Field> Eq for Fraction<F> {}

impl<F: Field> From<LaurentPoly<F>> for Fraction<F> {
    fn from(p: LaurentPoly<F>) -> Self {
        Fraction::from_poly(p)
    }
}

impl<F: fmt::Debug> fmt::Debug for Fraction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}
