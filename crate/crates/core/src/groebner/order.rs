use std::cmp::Ordering;

/// Admissible monomial orders on exponent vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Block order: grevlex on the first `n` variables, ties broken by grevlex on the rest.
    /// Any monomial involving the first block dominates every monomial free of it.
    Elim(usize),
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&x| x as u32).sum();
    let db: u32 = b.iter().map(|&x| x as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u16], b: &[u16]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Elim(n) => {
                let n = (*n).min(a.len());
                match grevlex(&a[..n], &b[..n]) {
                    Ordering::Equal => grevlex(&a[n..], &b[n..]),
                    o => o,
                }
            }
        }
    }
}
