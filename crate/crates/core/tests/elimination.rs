use convring::centralizer::kernel_of_map;
use convring::groebner::GbLimits;
use convring::ideal::{Ideal, PolyRing};
use convring::text::parse_fraction;
use convring::Poly;

/// Kernel of `names -> images` compared with a hand-computed generating set.
fn check(target: PolyRing, images: &[(&str, &str)], expected: &[&str]) {
    let lim = GbLimits::default();
    let imgs: Vec<_> = images
        .iter()
        .map(|(n, s)| (n.to_string(), parse_fraction(s, Some(target.vars())).unwrap()))
        .collect();
    let kernel = kernel_of_map(&target, &imgs, &lim).unwrap();
    let names: Vec<&str> = images.iter().map(|(n, _)| *n).collect();
    let ring = PolyRing::polynomial(&names);
    let want: Vec<Poly> = expected.iter().map(|s| Poly::parse_in(s, ring.vars()).unwrap()).collect();
    let got = Ideal::new(ring.clone(), kernel.clone()).unwrap();
    assert!(got.same_as(&Ideal::new(ring, want).unwrap(), &lim).unwrap(), "{images:?}: {kernel:?}");
}

#[test]
fn cusp() {
    check(PolyRing::polynomial(&["s"]), &[("p", "s^2"), ("q", "s^3")], &["p^3 - q^2"]);
}

#[test]
fn twisted_cubic() {
    check(
        PolyRing::polynomial(&["s"]),
        &[("u", "s"), ("v", "s^2"), ("w", "s^3")],
        &["u^2 - v", "u*v - w", "v^2 - u*w"],
    );
}

#[test]
fn chebyshev_pair() {
    check(PolyRing::laurent(&["z"]), &[("a", "z + z^-1"), ("b", "z^2 + z^-2")], &["b - a^2 + 2"]);
}

#[test]
fn rational_circle() {
    check(PolyRing::polynomial(&["s"]), &[("x", "(1 - s^2)/(1 + s^2)"), ("y", "2*s/(1 + s^2)")], &["x^2 + y^2 - 1"]);
}

#[test]
fn product_map() {
    check(PolyRing::polynomial(&["s", "t"]), &[("p", "s*t"), ("q", "s"), ("r", "t")], &["p - q*r"]);
}
