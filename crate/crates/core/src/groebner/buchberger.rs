use super::order::MonomialOrder;
use super::poly::{coprime, divides, lcm, sub_mul, Poly};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Limits applied during a Gröbner computation.
#[derive(Debug, Clone, Copy)]
pub struct GbLimits {
    /// Largest number of terms any intermediate polynomial may carry.
    pub term_cap: usize,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits { term_cap: 200_000 }
    }
}

fn check_cap(len: usize, limits: &GbLimits) -> Result<()> {
    if len > limits.term_cap {
        Err(Error::ResourceLimit(format!("intermediate polynomial with {len} terms exceeds cap {}", limits.term_cap)))
    } else {
        Ok(())
    }
}

/// Full reduction of `f` by `basis`.
pub fn reduce<F: Field>(f: &Poly<F>, basis: &[&Poly<F>], order: MonomialOrder, limits: &GbLimits) -> Result<Poly<F>> {
    let mut rem: Vec<(Vec<u16>, F)> = Vec::new();
    let mut p = f.terms.clone();
    let mut start = 0;
    while start < p.len() {
        let (lt_e, lt_c) = (&p[start].0, &p[start].1);
        let divisor = basis.iter().find(|g| divides(g.lm(), lt_e));
        match divisor {
            Some(g) => {
                let m: Vec<u16> = lt_e.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
                let c = lt_c.mul_ref(&g.lc().inverse().expect("basis elements are nonzero"));
                p = sub_mul(&p[start..], &c, &m, &g.terms, order);
                start = 0;
                check_cap(p.len(), limits)?;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    Ok(Poly { terms: rem })
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<u16>,
}

fn spoly<F: Field>(f: &Poly<F>, g: &Poly<F>, l: &[u16], order: MonomialOrder) -> Poly<F> {
    let mf: Vec<u16> = l.iter().zip(f.lm()).map(|(a, b)| a - b).collect();
    let mg: Vec<u16> = l.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
    let cf = f.lc().inverse().unwrap();
    let cg = g.lc().inverse().unwrap();
    let scaled_f: Vec<(Vec<u16>, F)> =
        f.terms.iter().map(|(e, c)| (e.iter().zip(&mf).map(|(a, b)| a + b).collect(), c.mul_ref(&cf))).collect();
    Poly { terms: sub_mul(&scaled_f, &cg, &mg, &g.terms, order) }
}

struct State<F> {
    polys: Vec<Poly<F>>,
    basis: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<F: Field> State<F> {
    /// Gebauer–Möller update after adding polynomial index `h`.
    fn update(&mut self, h: usize) {
        let lh = self.polys[h].lm().to_vec();
        let mut candidates: Vec<Pair> = self
            .basis
            .iter()
            .map(|&g| Pair { i: g, j: h, lcm: lcm(self.polys[g].lm(), &lh) })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let lg = self.polys[p.i].lm();
            let redundant = !coprime(lg, &lh)
                && candidates.iter().chain(kept.iter()).any(|q| divides(&q.lcm, &p.lcm));
            if !redundant {
                kept.push(p);
            }
        }
        let new_pairs: Vec<Pair> =
            kept.into_iter().filter(|p| !coprime(self.polys[p.i].lm(), &lh)).collect();
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let li = polys[p.i].lm();
            let lj = polys[p.j].lm();
            !(divides(&lh, &p.lcm) && lcm(li, &lh) != p.lcm && lcm(lj, &lh) != p.lcm)
        });
        self.pairs.extend(new_pairs);
        let polys = &self.polys;
        self.basis.retain(|&g| !divides(&lh, polys[g].lm()));
        self.basis.push(h);
    }

    fn basis_refs(&self) -> Vec<&Poly<F>> {
        self.basis.iter().map(|&i| &self.polys[i]).collect()
    }
}

/// Reduced monic Gröbner basis of the ideal generated by `gens`, sorted by increasing leading monomial.
pub fn groebner_basis<F: Field>(gens: &[Poly<F>], order: MonomialOrder, limits: &GbLimits) -> Result<Vec<Poly<F>>> {
    let mut st = State { polys: Vec::new(), basis: Vec::new(), pairs: Vec::new() };
    let mut sorted: Vec<&Poly<F>> = gens.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for g in sorted {
        check_cap(g.terms.len(), limits)?;
        let r = reduce(g, &st.basis_refs(), order, limits)?;
        if !r.is_zero() {
            st.polys.push(r.monic());
            let h = st.polys.len() - 1;
            st.update(h);
        }
    }
    while !st.pairs.is_empty() {
        let best = (0..st.pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&st.pairs[a], &st.pairs[b]);
                order.cmp(&pa.lcm, &pb.lcm).then((pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .unwrap();
        let pair = st.pairs.swap_remove(best);
        let s = spoly(&st.polys[pair.i], &st.polys[pair.j], &pair.lcm, order);
        check_cap(s.terms.len(), limits)?;
        let r = reduce(&s, &st.basis_refs(), order, limits)?;
        if !r.is_zero() {
            st.polys.push(r.monic());
            let h = st.polys.len() - 1;
            st.update(h);
        }
    }
    let minimal: Vec<Poly<F>> = st.basis.iter().map(|&i| st.polys[i].clone()).collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<&Poly<F>> = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p).collect();
        let lead = Poly { terms: vec![g.terms[0].clone()] };
        let tail = Poly { terms: g.terms[1..].to_vec() };
        let tail = reduce(&tail, &others, order, limits)?;
        let mut terms = lead.terms;
        terms.extend(tail.terms);
        reduced.push(Poly { terms }.monic());
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    Ok(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as Q;

    fn p(terms: &[(&[u16], i64)]) -> Poly<Q> {
        Poly::from_unsorted(terms.iter().map(|(e, c)| (e.to_vec(), Q::from(*c))).collect(), MonomialOrder::GrevLex)
    }

    #[test]
    fn principal_monomial_ideal() {
        let g = groebner_basis(&[p(&[(&[1], 1)])], MonomialOrder::GrevLex, &GbLimits::default()).unwrap();
        assert_eq!(g, vec![p(&[(&[1], 1)])]);
    }

    #[test]
    fn twisted_cubic_has_three_generators() {
        // <y - x^2, z - x^3> in grevlex, variables (x, y, z)
        let gens = [p(&[(&[0, 1, 0], 1), (&[2, 0, 0], -1)]), p(&[(&[0, 0, 1], 1), (&[3, 0, 0], -1)])];
        let g = groebner_basis(&gens, MonomialOrder::GrevLex, &GbLimits::default()).unwrap();
        assert_eq!(g.len(), 3);
        for f in &gens {
            let refs: Vec<&Poly<Q>> = g.iter().collect();
            assert!(reduce(f, &refs, MonomialOrder::GrevLex, &GbLimits::default()).unwrap().is_zero());
        }
    }

    #[test]
    fn term_cap_is_enforced() {
        let gens = [p(&[(&[5, 0], 1), (&[0, 5], 1), (&[1, 1], 1)])];
        let tiny = GbLimits { term_cap: 2 };
        assert!(matches!(groebner_basis(&gens, MonomialOrder::GrevLex, &tiny), Err(Error::ResourceLimit(_))));
    }
}
