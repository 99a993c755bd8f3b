//! Exact linear algebra over a field.


use crate::laurent::LaurentPoly;
use crate::scalar::Field;

/// Row-echelon span of Laurent polynomials viewed as coefficient vectors.
///
/// Each stored row has a distinct leading term; reduction clears those terms.
#[derive(Debug, Clone)]
pub struct LinearSpan<F> {
    rows: Vec<LaurentPoly<F>>,
}

impl<F: Field> Default for LinearSpan<F> {
    fn default() -> Self {
        LinearSpan { rows: Vec::new() }
    }
}

impl<F: Field> LinearSpan<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `p` after subtracting its projection onto the pivots.
    pub fn reduce(&self, p: &LaurentPoly<F>) -> LaurentPoly<F> {
        let mut r = p.clone();
        loop {
            let mut changed = false;
            for row in &self.rows {
                let (e, c) = row.leading().expect("rows are nonzero");
                let k = r.coefficient(e);
                if !k.is_zero() {
                    r = &r - &row.scale(&k.mul_ref(&c.inverse().unwrap()));
                    changed = true;
                }
            }
            if !changed {
                return r;
            }
        }
    }

    pub fn contains(&self, p: &LaurentPoly<F>) -> bool {
        self.reduce(p).is_zero()
    }

    /// Adds `p`; returns `false` if it was already in the span.
    pub fn insert(&mut self, p: &LaurentPoly<F>) -> bool {
        let r = self.reduce(p);
        if r.is_zero() {
            return false;
        }
        let (_, c) = r.leading().unwrap();
        let r = r.scale(&c.inverse().unwrap());
        self.rows.push(r);
        true
    }
}

/// A span of labelled vectors that also records, for each reduction, the
/// combination of inputs that was subtracted.
#[derive(Debug, Clone)]
pub struct TrackedSpan<F> {
    inputs: usize,
    rows: Vec<(LaurentPoly<F>, Vec<F>)>,
}

impl<F: Field> TrackedSpan<F> {
    /// Builds the span of `inputs`, labelling them `0..inputs.len()`.
    pub fn new(inputs: &[LaurentPoly<F>]) -> Self {
        let mut span = TrackedSpan { inputs: inputs.len(), rows: Vec::new() };
        for (k, p) in inputs.iter().enumerate() {
            let mut combo = vec![F::zero(); inputs.len()];
            combo[k] = F::one();
            let (r, sub) = span.reduce(p);
            if r.is_zero() {
                continue;
            }
            for (c, s) in combo.iter_mut().zip(sub) {
                *c = c.sub_ref(&s);
            }
            let inv = r.leading().unwrap().1.inverse().unwrap();
            span.rows.push((r.scale(&inv), combo.iter().map(|c| c.mul_ref(&inv)).collect()));
        }
        span
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `(r, c)` with `p = Σ c_k input_k + r`, where `r` has no pivot terms.
    pub fn reduce(&self, p: &LaurentPoly<F>) -> (LaurentPoly<F>, Vec<F>) {
        let mut r = p.clone();
        let mut combo = vec![F::zero(); self.inputs];
        loop {
            let mut changed = false;
            for (row, rc) in &self.rows {
                let (e, _) = row.leading().expect("rows are nonzero");
                let k = r.coefficient(e);
                if !k.is_zero() {
                    r = &r - &row.scale(&k);
                    for (c, x) in combo.iter_mut().zip(rc) {
                        *c = c.add_ref(&k.mul_ref(x));
                    }
                    changed = true;
                }
            }
            if !changed {
                return (r, combo);
            }
        }
    }

    /// Coefficients expressing `p` through the inputs, if it lies in the span.
    pub fn solve(&self, p: &LaurentPoly<F>) -> Option<Vec<F>> {
        let (r, c) = self.reduce(p);
        r.is_zero().then_some(c)
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inverse().unwrap();
        for x in m[r].iter_mut() {
            *x = x.mul_ref(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = m[i][j].sub_ref(&f.mul_ref(&m[r][j]));
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// A basis of the right nullspace `{v : m v = 0}`.
pub fn nullspace<F: Field>(m: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as Q;

    #[test]
    fn span_membership() {
        let mut s = LinearSpan::new();
        assert!(s.insert(&LaurentPoly::parse("y + y^-1").unwrap()));
        assert!(s.insert(&LaurentPoly::parse("y - y^-1").unwrap()));
        assert!(s.contains(&LaurentPoly::parse("y").unwrap()));
        assert!(!s.insert(&LaurentPoly::parse("3*y^-1").unwrap()));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn tracked_span_recovers_combinations() {
        let p = |s: &str| LaurentPoly::parse_in(s, &crate::laurent::var_list(&["y"])).unwrap();
        let inputs = vec![p("y + 1"), p("y - 1"), p("2*y")];
        let span = TrackedSpan::new(&inputs);
        assert_eq!(span.dim(), 2);
        let c = span.solve(&p("3*y + 5")).unwrap();
        let mut sum = p("0");
        for (k, x) in c.iter().zip(&inputs) {
            sum = &sum + &x.scale(k);
        }
        assert_eq!(sum, p("3*y + 5"));
        assert!(span.solve(&p("y^2")).is_none());
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        let m = vec![vec![Q::from(1), Q::from(2), Q::from(3)], vec![Q::from(2), Q::from(4), Q::from(6)]];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot: Q = m[0].iter().zip(&v).fold(Q::from(0), |acc, (a, b)| acc + a.clone() * b.clone());
            assert_eq!(dot, Q::from(0));
        }
    }
}
