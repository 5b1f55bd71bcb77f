use std::fmt;
use std::sync::Arc;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::field::{render_terms, Field};
use crate::poly::UniPoly;

struct Inner<K: Field> {
    base: K,
    modulus: UniPoly<K>,
    name: String,
}

/// The simple extension `K[x]/(m(x))` for a monic `m`, with generator `name`.
///
/// Elements are coefficient vectors of length `deg m` over `K`, always
/// reduced modulo `m`. Construction does not check irreducibility; use
/// [`make_extension`](crate::field::make_extension) for validated input.
pub struct NumberField<K: Field> {
    inner: Arc<Inner<K>>,
}

impl<K: Field> Clone for NumberField<K> {
    fn clone(&self) -> Self {
        NumberField {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<K: Field> PartialEq for NumberField<K> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base
                && self.inner.modulus == other.inner.modulus
                && self.inner.name == other.inner.name)
    }
}

impl<K: Field> fmt::Debug for NumberField<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "NumberField({} : {} over {:?})",
            self.inner.name,
            self.inner.modulus.render("x"),
            self.inner.base
        )
    }
}

impl<K: Field> NumberField<K> {
    /// Builds `K(name)`, making `modulus` monic. Panics on a constant modulus.
    pub fn new(base: K, modulus: UniPoly<K>, name: &str) -> Self {
        assert!(
            modulus.degree().is_some_and(|d| d >= 1),
            "defining polynomial must have positive degree"
        );
        NumberField {
            inner: Arc::new(Inner {
                modulus: modulus.monic(),
                base,
                name: name.to_string(),
            }),
        }
    }

    pub fn base(&self) -> &K {
        &self.inner.base
    }

    pub fn modulus(&self) -> &UniPoly<K> {
        &self.inner.modulus
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    /// Relative degree over the base field.
    pub fn degree(&self) -> usize {
        self.inner.modulus.degree().unwrap()
    }

    pub fn generator(&self) -> Vec<K::Elem> {
        let b = self.base();
        let mut v = vec![b.zero(); self.degree()];
        if self.degree() == 1 {
            // x + c = 0 gives generator -c
            v[0] = b.neg(&self.modulus().coeff(0));
        } else {
            v[1] = b.one();
        }
        v
    }

    pub fn from_base(&self, c: &K::Elem) -> Vec<K::Elem> {
        let b = self.base();
        let mut v = vec![b.zero(); self.degree()];
        v[0] = c.clone();
        v
    }

    /// Reduces an arbitrary coefficient list (lowest power first).
    pub fn from_coeffs(&self, coeffs: &[K::Elem]) -> Vec<K::Elem> {
        let b = self.base();
        let n = self.degree();
        let mut v: Vec<K::Elem> = coeffs.to_vec();
        if v.len() < n {
            v.resize(n, b.zero());
        }
        let m = self.modulus().coeffs();
        for k in (n..v.len()).rev() {
            let c = v[k].clone();
            if b.is_zero(&c) {
                continue;
            }
            for i in 0..n {
                v[k - n + i] = b.sub(&v[k - n + i], &b.mul(&c, &m[i]));
            }
        }
        v.truncate(n);
        v
    }

    /// The element as a polynomial over the base.
    pub fn to_poly(&self, a: &[K::Elem]) -> UniPoly<K> {
        UniPoly::new(self.base(), a.to_vec())
    }

    /// Whether the element lies in the base field.
    pub fn in_base(&self, a: &[K::Elem]) -> Option<K::Elem> {
        let b = self.base();
        if a[1..].iter().all(|c| b.is_zero(c)) {
            Some(a[0].clone())
        } else {
            None
        }
    }
}

impl<K: Field> Field for NumberField<K> {
    type Elem = Vec<K::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base().zero(); self.degree()]
    }

    fn one(&self) -> Self::Elem {
        self.from_base(&self.base().one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base().is_zero(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base().add(x, y)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base().sub(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base().neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = self.base();
        let n = self.degree();
        let mut prod = vec![k.zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if k.is_zero(y) {
                    continue;
                }
                prod[i + j] = k.add(&prod[i + j], &k.mul(x, y));
            }
        }
        self.from_coeffs(&prod)
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let (d, s, _) = self.to_poly(a).ext_gcd(self.modulus())?;
        if !d.is_constant() {
            return Err(Error::Inconsistent(format!(
                "defining polynomial of {} is reducible",
                self.name()
            )));
        }
        Ok(self.from_coeffs(s.coeffs()))
    }

    fn from_rational(&self, q: &Rational) -> Self::Elem {
        self.from_base(&self.base().from_rational(q))
    }

    fn absolute_degree(&self) -> usize {
        self.degree() * self.base().absolute_degree()
    }

    fn to_rationals(&self, a: &Self::Elem) -> Vec<Rational> {
        a.iter().flat_map(|c| self.base().to_rationals(c)).collect()
    }

    fn from_rationals(&self, coords: &[Rational]) -> Self::Elem {
        let d = self.base().absolute_degree();
        coords
            .chunks(d)
            .map(|chunk| self.base().from_rationals(chunk))
            .collect()
    }

    fn render(&self, a: &Self::Elem) -> String {
        let k = self.base();
        if self.degree() == 1 {
            return k.render(&a[0]);
        }
        let terms: Vec<(String, bool, String)> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !k.is_zero(c))
            .map(|(i, c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => self.name().to_string(),
                    _ => format!("{}^{}", self.name(), i),
                };
                (k.render(c), k.is_atomic(c), mono)
            })
            .collect();
        render_terms(&terms)
    }

    fn is_atomic(&self, a: &Self::Elem) -> bool {
        let k = self.base();
        let nonzero: Vec<_> = a.iter().filter(|c| !k.is_zero(c)).collect();
        match nonzero.len() {
            0 => true,
            1 => self.degree() == 1 || k.is_atomic(nonzero[0]),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use crate::field::Rationals;
    use proptest::prelude::*;

    fn quartic() -> NumberField<Rationals> {
        NumberField::new(Rationals, UniPoly::from_i64(&Rationals, &[8, -16, 12, -4, 1]), "a")
    }

    fn gaussian() -> NumberField<Rationals> {
        NumberField::new(Rationals, UniPoly::from_i64(&Rationals, &[1, 0, 1]), "a")
    }

    #[test]
    fn inverse_examples() {
        let k = gaussian();
        assert_eq!(k.inv(&k.one()).unwrap(), k.one());
        let a = k.generator();
        assert_eq!(k.inv(&a).unwrap(), k.neg(&a));
        assert_eq!(k.inv(&k.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn arithmetic_reduces_modulo_minpoly() {
        let k = quartic();
        let a = k.generator();
        let a4 = k.pow(&a, 4);
        // a^4 = 4a^3 - 12a^2 + 16a - 8
        assert_eq!(a4, vec![rat_int(-8), rat_int(16), rat_int(-12), rat_int(4)]);
        let gamma = vec![rat_int(0), rat_int(-4), rat(3, 2), rat(-1, 2)];
        let val = k.add(&k.add(&k.mul(&gamma, &gamma), &k.mul(&k.from_i64(6), &gamma)), &k.from_i64(10));
        assert!(k.is_zero(&val));
    }

    #[test]
    fn rendering() {
        let k = quartic();
        let gamma = vec![rat_int(0), rat_int(-4), rat(3, 2), rat(-1, 2)];
        assert_eq!(k.render(&gamma), "-4*a + 3/2*a^2 - 1/2*a^3");
        assert_eq!(k.render(&k.zero()), "0");
        let tower = NumberField::new(
            k.clone(),
            UniPoly::new(&k, vec![k.from_i64(3), k.zero(), k.one()]),
            "b",
        );
        let x = vec![k.from_i64(2), gamma.clone()];
        assert_eq!(tower.render(&x), "2 + (-4*a + 3/2*a^2 - 1/2*a^3)*b");
    }

    fn elem() -> impl Strategy<Value = Vec<(i64, i64)>> {
        prop::collection::vec((-9i64..10, 1i64..5), 4)
    }

    proptest! {
        #[test]
        fn inverse_is_involution(c in elem()) {
            let k = quartic();
            let x: Vec<Rational> = c.iter().map(|&(n, d)| rat(n, d)).collect();
            prop_assume!(!k.is_zero(&x));
            let y = k.inv(&x).unwrap();
            prop_assert_eq!(k.mul(&x, &y), k.one());
            prop_assert_eq!(k.inv(&y).unwrap(), x);
        }

        #[test]
        fn rational_coordinates_round_trip(c in elem()) {
            let k = quartic();
            let x: Vec<Rational> = c.iter().map(|&(n, d)| rat(n, d)).collect();
            prop_assert_eq!(k.from_rationals(&k.to_rationals(&x)), x);
        }
    }
}
