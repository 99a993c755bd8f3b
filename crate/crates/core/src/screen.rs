//! Numeric screening of symbolic identities at random Gaussian-rational points.

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::GaussianRational;
use crate::Frac;

type Q = GaussianRational;

/// A random point with small Gaussian-rational coordinates, none of them zero.
pub fn random_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Q> {
    (0..dim)
        .map(|_| loop {
            let c = Q::from_parts(rng.gen_range(-9..=9), rng.gen_range(1..=5), rng.gen_range(-9..=9), rng.gen_range(1..=5));
            if !c.is_zero() {
                break c;
            }
        })
        .collect()
}

/// Evaluates `lhs - rhs` at `points` random points where both are defined.
///
/// Returns the first point where the difference is nonzero. Points that hit a
/// denominator are redrawn (at most `10 * points` draws in total).
pub fn screen_identity(lhs: &Frac, rhs: &Frac, points: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Q>> {
    let (l, r) = (lhs.clone(), rhs.with_vars(lhs.vars()).unwrap_or_else(|_| rhs.clone()));
    let vars = if l.vars().len() >= r.vars().len() { l.vars().clone() } else { r.vars().clone() };
    let l = l.with_vars(&vars).ok()?;
    let r = r.with_vars(&vars).ok()?;
    let mut tested = 0;
    let mut draws = 0;
    while tested < points && draws < 10 * points.max(1) {
        draws += 1;
        let p = random_point(rng, vars.len());
        let (Some(a), Some(b)) = (l.evaluate(&p), r.evaluate(&p)) else { continue };
        tested += 1;
        if a != b {
            return Some(p);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_fraction;
    use rand::SeedableRng;

    #[test]
    fn accepts_identities_and_rejects_non_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = parse_fraction("(y^2 - 1)/(y - 1)", None).unwrap();
        let g = parse_fraction("y + 1", None).unwrap();
        assert_eq!(screen_identity(&f, &g, 20, &mut rng), None);
        let h = parse_fraction("y + 2", None).unwrap();
        assert!(screen_identity(&f, &h, 20, &mut rng).is_some());
    }
}
