//! Parametric Weil descent: substituting `t = sum a^i t_i` into a
//! parametrization over `L(a)` and splitting the result into its
//! coordinates over `L`.

use crate::error::{Error, Result};
use crate::exec::{self, Settings};
use crate::field::{Field, NumberField};
use crate::groebner::Ideal;
use crate::poly::{resultant_in, MultiPoly, PolyDomain, RatFun, UniPoly};

/// A rational parametrization `t -> (phi_1(t), ..., phi_N(t))`.
#[derive(Clone, Debug, PartialEq)]
pub struct Parametrization<K: Field> {
    pub components: Vec<RatFun<K>>,
}

impl<K: Field> Parametrization<K> {
    pub fn new(components: Vec<RatFun<K>>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidArgument("parametrization has no components".into()));
        }
        Ok(Parametrization { components })
    }

    pub fn field(&self) -> &K {
        self.components[0].field()
    }

    /// Monic least common multiple of the denominators.
    pub fn common_denominator(&self) -> UniPoly<K> {
        let mut g = UniPoly::one(self.field());
        for c in &self.components {
            let d = g.gcd(c.den()).expect("nonzero denominators");
            g = g.mul(&c.den().exact_div(&d).expect("gcd divides"));
        }
        g
    }

    /// Numerators `f_j` over the common denominator `g`.
    pub fn numerators(&self) -> Vec<UniPoly<K>> {
        let g = self.common_denominator();
        self.components
            .iter()
            .map(|c| c.num().mul(&g.exact_div(c.den()).expect("den divides lcm")))
            .collect()
    }

    /// Every coefficient of every (reduced, monic-denominator) component.
    pub fn coefficients(&self) -> Vec<K::Elem> {
        self.components
            .iter()
            .flat_map(|c| c.coefficients().cloned().collect::<Vec<_>>())
            .collect()
    }

    /// `phi(inner(t))`.
    pub fn compose(&self, inner: &RatFun<K>) -> Result<Self> {
        let comps = self
            .components
            .iter()
            .map(|c| c.compose(inner))
            .collect::<Result<Vec<_>>>()?;
        Parametrization::new(comps)
    }

    pub fn map_coeffs<G: Field>(&self, target: &G, map: impl Fn(&K::Elem) -> G::Elem) -> Result<Parametrization<G>> {
        let comps = self
            .components
            .iter()
            .map(|c| c.map_coeffs(target, &map))
            .collect::<Result<Vec<_>>>()?;
        Parametrization::new(comps)
    }
}

/// Numerators `F_ij` (indexed `[j][i]`) over a common denominator `delta`,
/// with `phi_j(sum a^i t_i) = sum_i a^i F_ij / delta`.
#[derive(Clone, Debug, PartialEq)]
pub struct DescentResult<L: Field> {
    pub numerators: Vec<Vec<MultiPoly<L>>>,
    pub delta: MultiPoly<L>,
}

/// Splits a polynomial over `L(a)` into its `a`-power coordinates over `L`.
pub fn alpha_components<L: Field>(top: &NumberField<L>, p: &MultiPoly<NumberField<L>>) -> Vec<MultiPoly<L>> {
    let base = top.base();
    let mut out = vec![MultiPoly::zero(base, p.nvars()); top.degree()];
    for (m, c) in p.terms() {
        for (part, x) in out.iter_mut().zip(c) {
            part.add_term(m.clone(), x.clone());
        }
    }
    out
}

/// Norm of a polynomial over `L(a)`: `Res_x(M(x), den(x))` where `a` is
/// replaced by `x` in `den`.
pub fn norm<L: Field>(top: &NumberField<L>, den: &MultiPoly<NumberField<L>>) -> Result<MultiPoly<L>> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let base = top.base();
    let nvars = den.nvars();
    let dom = PolyDomain {
        field: base.clone(),
        nvars,
    };
    let m: Vec<MultiPoly<L>> = top
        .modulus()
        .coeffs()
        .iter()
        .map(|c| MultiPoly::constant(base, nvars, c.clone()))
        .collect();
    let mut g = alpha_components(top, den);
    while g.last().is_some_and(|p| p.is_zero()) {
        g.pop();
    }
    resultant_in(&dom, &m, &g)
}

/// Writes `num / den` over `L(a)` as `sum a^i comp_i / delta` with
/// `delta = norm(den)` and `comp_i` over `L`.
pub fn alpha_decompose<L: Field>(
    top: &NumberField<L>,
    num: &MultiPoly<NumberField<L>>,
    den: &MultiPoly<NumberField<L>>,
) -> Result<(Vec<MultiPoly<L>>, MultiPoly<L>)> {
    let delta = norm(top, den)?;
    let lifted = delta.map_coeffs(top, |c| top.from_base(c));
    let cofactor = lifted.exact_divide(den)?;
    Ok((alpha_components(top, &num.mul(&cofactor)), delta))
}

/// `u(image)` for a univariate polynomial and a multivariate image.
pub fn eval_at<K: Field>(u: &UniPoly<K>, image: &MultiPoly<K>) -> MultiPoly<K> {
    let f = u.field();
    u.coeffs().iter().rev().fold(MultiPoly::zero(f, image.nvars()), |acc, c| {
        acc.mul(image).add(&MultiPoly::constant(f, image.nvars(), c.clone()))
    })
}

/// `t0 + a t1 + ... + a^(n-1) t_(n-1)` over `L(a)`.
pub fn generic_point<L: Field>(top: &NumberField<L>) -> MultiPoly<NumberField<L>> {
    let n = top.degree();
    let a = top.generator();
    let mut p = MultiPoly::zero(top, n);
    let mut ai = top.one();
    for i in 0..n {
        p = p.add(&MultiPoly::var(top, n, i).scale(&ai));
        ai = top.mul(&ai, &a);
    }
    p
}

/// Substitutes the generic point into every component, using the norm of
/// the substituted common denominator as the single `delta`.
pub fn weil_substitute<L: Field>(
    phi: &Parametrization<NumberField<L>>,
    top: &NumberField<L>,
    settings: &Settings,
) -> Result<DescentResult<L>> {
    let point = generic_point(top);
    let g = eval_at(&phi.common_denominator(), &point);
    let delta = norm(top, &g)?;
    let cofactor = delta.map_coeffs(top, |c| top.from_base(c)).exact_divide(&g)?;
    let nums = phi.numerators();
    let numerators = exec::map(settings.exec, &nums, |f| {
        alpha_components(top, &eval_at(f, &point).mul(&cofactor))
    });
    Ok(DescentResult { numerators, delta })
}

/// The witness ideal: the saturation of `(F_ij : i >= 1)` by `delta`.
pub fn witness_ideal<L: Field>(
    phi: &Parametrization<NumberField<L>>,
    top: &NumberField<L>,
    settings: &Settings,
) -> Result<(Ideal<L>, MultiPoly<L>)> {
    let descent = weil_substitute(phi, top, settings)?;
    let gens: Vec<MultiPoly<L>> = descent
        .numerators
        .iter()
        .flat_map(|comps| comps[1..].iter().cloned())
        .collect();
    let raw = Ideal::new(top.base(), top.degree(), gens);
    let sat = raw.saturate(&descent.delta, settings)?;
    Ok((sat, descent.delta))
}
