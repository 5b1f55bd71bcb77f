#![allow(dead_code)]

use hypercurve_core::curvefile::{Curve, CurveFile};
use hypercurve_core::field::{Field, NumberField, Rationals};
use hypercurve_core::groebner::Ideal;
use hypercurve_core::parse::parse;
use hypercurve_core::poly::{default_names, MultiPoly, RatFun};
use hypercurve_core::Settings;

pub const QUARTIC: &str = include_str!("../../../../curves/quartic.curve");
pub const CUSP: &str = include_str!("../../../../curves/cusp_shifted.curve");
pub const PARABOLA: &str = include_str!("../../../../curves/parabola_over_gaussian.curve");

pub type Qa = NumberField<Rationals>;

pub fn curve(src: &str) -> Curve {
    CurveFile::parse(src).unwrap().load(&Settings::default()).unwrap()
}

/// Polynomial over `Q` in `t0, ..., t(n-1)`.
pub fn qpoly(src: &str, n: usize) -> MultiPoly<Rationals> {
    let names = default_names(n);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    parse(src).unwrap().to_poly(&Rationals, &refs).unwrap()
}

pub fn qideal(gens: &[&str], n: usize) -> Ideal<Rationals> {
    Ideal::new(&Rationals, n, gens.iter().map(|g| qpoly(g, n)).collect())
}

/// Rational function in `t` over `Q(a)` with extra named constants.
pub fn ratfun(field: &Qa, src: &str, constants: &[(&str, Vec<hypercurve_core::arith::Rational>)]) -> RatFun<Qa> {
    let mut all: Vec<(&str, <Qa as Field>::Elem)> = vec![("a", field.generator())];
    all.extend(constants.iter().cloned());
    parse(src).unwrap().to_ratfun(field, "t", &all).unwrap()
}
