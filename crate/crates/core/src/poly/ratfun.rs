use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::UniPoly;

/// Univariate rational function kept in lowest terms with a monic
/// denominator.
#[derive(Clone, PartialEq)]
pub struct RatFun<F: Field> {
    num: UniPoly<F>,
    den: UniPoly<F>,
}

impl<F: Field> fmt::Debug for RatFun<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({})", self.render("t"))
    }
}

impl<F: Field> RatFun<F> {
    pub fn new(num: UniPoly<F>, den: UniPoly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = den.field().clone();
        if num.is_zero() {
            return Ok(RatFun {
                num,
                den: UniPoly::one(&field),
            });
        }
        let g = num.gcd(&den)?;
        let num = num.exact_div(&g)?;
        let den = den.exact_div(&g)?;
        let lc_inv = field.inv(den.lc().unwrap())?;
        Ok(RatFun {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        })
    }

    pub fn from_poly(p: UniPoly<F>) -> Self {
        let den = UniPoly::one(p.field());
        RatFun { num: p, den }
    }

    pub fn field(&self) -> &F {
        self.den.field()
    }

    pub fn num(&self) -> &UniPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("product of nonzero denominators")
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("product of nonzero denominators")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// `self(inner)` for a rational function `inner`.
    pub fn compose(&self, inner: &RatFun<F>) -> Result<Self> {
        // p(u/v) = P(u, v) / v^deg p, homogenized in (u, v)
        let (u, v) = (&inner.num, &inner.den);
        let hom = |p: &UniPoly<F>, d: usize| {
            let f = p.field();
            let mut acc = UniPoly::zero(f);
            for (k, c) in p.coeffs().iter().enumerate() {
                let term = u.pow(k as u32).mul(&v.pow((d - k) as u32)).scale(c);
                acc = acc.add(&term);
            }
            acc
        };
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let d = dn.max(dd);
        let num = hom(&self.num, d);
        let den = hom(&self.den, d);
        if den.is_zero() {
            return Err(Error::SubstitutionPole);
        }
        Self::new(num, den)
    }

    pub fn eval(&self, x: &F::Elem) -> Result<F::Elem> {
        let d = self.den.eval(x);
        self.field().div(&self.num.eval(x), &d)
    }

    pub fn map_coeffs<G: Field>(&self, target: &G, map: impl Fn(&F::Elem) -> G::Elem) -> Result<RatFun<G>> {
        RatFun::new(self.num.map_coeffs(target, &map), self.den.map_coeffs(target, &map))
    }

    /// All coefficients of numerator and denominator.
    pub fn coefficients(&self) -> impl Iterator<Item = &F::Elem> {
        self.num.coeffs().iter().chain(self.den.coeffs())
    }

    pub fn render(&self, var: &str) -> String {
        if self.den.degree() == Some(0) {
            self.num.render(var)
        } else {
            let wrap = |p: &UniPoly<F>| {
                let text = p.render(var);
                let terms: Vec<&F::Elem> = p.coeffs().iter().filter(|c| !p.field().is_zero(c)).collect();
                if terms.len() == 1 && p.field().is_atomic(terms[0]) {
                    text
                } else {
                    format!("({text})")
                }
            };
            format!("{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{NumberField, Rationals};

    #[test]
    fn reduces_to_lowest_terms() {
        let q = Rationals;
        let num = UniPoly::from_i64(&q, &[-1, 0, 1]);
        let den = UniPoly::from_i64(&q, &[-2, 2]);
        let r = RatFun::new(num, den).unwrap();
        assert_eq!(r.num(), &UniPoly::from_i64(&q, &[1, 1]).scale(&crate::arith::rat(1, 2)));
        assert_eq!(r.den(), &UniPoly::from_i64(&q, &[1]));
        assert_eq!(r.render("t"), "1/2*t + 1/2");
    }

    #[test]
    fn compose_with_affine_shift() {
        let k = NumberField::new(Rationals, UniPoly::from_i64(&Rationals, &[1, 0, 1]), "a");
        let i = k.generator();
        // (t - i)^2 composed with t + i is t^2
        let lin = UniPoly::new(&k, vec![k.neg(&i), k.one()]);
        let sq = RatFun::from_poly(lin.mul(&lin));
        let shift = RatFun::from_poly(UniPoly::new(&k, vec![i.clone(), k.one()]));
        let out = sq.compose(&shift).unwrap();
        assert_eq!(out, RatFun::from_poly(UniPoly::monomial(&k, k.one(), 2)));
        let inv = RatFun::new(UniPoly::one(&k), UniPoly::new(&k, vec![i, k.one()])).unwrap();
        let back = inv.compose(&RatFun::from_poly(UniPoly::new(&k, vec![k.zero(), k.one()]))).unwrap();
        assert_eq!(back, inv);
    }

    #[test]
    fn zero_denominator_rejected() {
        let q = Rationals;
        assert_eq!(
            RatFun::new(UniPoly::one(&q), UniPoly::zero(&q)),
            Err(Error::DivisionByZero)
        );
    }
}
