use std::cmp::Ordering;

use super::order::MonomialOrder;
use crate::scalar::Field;

/// A polynomial with nonnegative exponents, terms sorted by decreasing monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F> {
    pub terms: Vec<(Vec<u16>, F)>,
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn from_unsorted(mut terms: Vec<(Vec<u16>, F)>, order: MonomialOrder) -> Self {
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Vec<u16>, F)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc = lc.add_ref(&c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &[u16] {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &F {
        &self.terms[0].1
    }

    pub fn monic(mut self) -> Self {
        if let Some(inv) = self.terms.first().and_then(|t| t.1.inverse()) {
            for t in &mut self.terms {
                t.1 = t.1.mul_ref(&inv);
            }
        }
        self
    }
}

pub fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u16], b: &[u16]) -> Vec<u16> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// `p - c * x^m * g`, where `p` is given as a sorted term slice.
pub fn sub_mul<F: Field>(
    p: &[(Vec<u16>, F)],
    c: &F,
    m: &[u16],
    g: &[(Vec<u16>, F)],
    order: MonomialOrder,
) -> Vec<(Vec<u16>, F)> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |t: &(Vec<u16>, F)| -> Vec<u16> { t.0.iter().zip(m).map(|(a, b)| a + b).collect() };
    let mut gj = g.first().map(shifted);
    while i < p.len() || gj.is_some() {
        let ord = match (&gj, p.get(i)) {
            (None, _) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(e), Some(t)) => order.cmp(&t.0, e),
        };
        match ord {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let e = gj.take().unwrap();
                out.push((e, -(c.mul_ref(&g[j].1))));
                j += 1;
                gj = g.get(j).map(shifted);
            }
            Ordering::Equal => {
                let e = gj.take().unwrap();
                let v = p[i].1.sub_ref(&c.mul_ref(&g[j].1));
                if !v.is_zero() {
                    out.push((e, v));
                }
                i += 1;
                j += 1;
                gj = g.get(j).map(shifted);
            }
        }
    }
    out
}
