//! Exact coefficient fields: the rationals and (towers of) simple algebraic
//! extensions `K(a) = K[x]/(m(x))`.

mod number_field;
mod roots;
mod tower;

pub use number_field::NumberField;
pub use roots::{
    cmp_vectors,
    is_irreducible, rational_roots, rational_solutions, roots_in_field, solve_system_in_field,
    solve_triangular,
};
pub use tower::{
    make_extension, membership, min_poly_over_q, primitive_element, relative_min_poly,
    SubfieldEmbedding, Tower,
};

use std::cmp::Ordering;
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// An exact field given by a context value; elements are plain data.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn from_rational(&self, q: &Rational) -> Self::Elem;

    /// Degree of the field over `Q`.
    fn absolute_degree(&self) -> usize;
    /// Coordinates over `Q` in the flattened power basis.
    fn to_rationals(&self, a: &Self::Elem) -> Vec<Rational>;
    fn from_rationals(&self, coords: &[Rational]) -> Self::Elem;

    /// Canonical text form, ascending powers of each generator.
    fn render(&self, a: &Self::Elem) -> String;
    /// True when the rendering is a single signed term (no parentheses needed
    /// when used as a coefficient).
    fn is_atomic(&self, a: &Self::Elem) -> bool;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_rational(&Rational::from_integer(v.into()))
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Canonical total order: lexicographic on the rational coordinates.
    fn cmp_elems(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        self.to_rationals(a).cmp(&self.to_rationals(b))
    }

    /// The rational value of `a`, when `a` lies in `Q`.
    fn as_rational(&self, a: &Self::Elem) -> Option<Rational> {
        let c = self.to_rationals(a);
        if c[1..].iter().all(Zero::is_zero) {
            Some(c[0].clone())
        } else {
            None
        }
    }

    /// The rational basis elements `b_k` with `a = sum c_k b_k` for
    /// `c = to_rationals(a)`.
    fn rational_basis(&self) -> Vec<Self::Elem> {
        let d = self.absolute_degree();
        (0..d)
            .map(|k| {
                let mut v = vec![Rational::zero(); d];
                v[k] = Rational::one();
                self.from_rationals(&v)
            })
            .collect()
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Result<Rational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }
    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }
    fn absolute_degree(&self) -> usize {
        1
    }
    fn to_rationals(&self, a: &Rational) -> Vec<Rational> {
        vec![a.clone()]
    }
    fn from_rationals(&self, coords: &[Rational]) -> Rational {
        coords[0].clone()
    }
    fn render(&self, a: &Rational) -> String {
        render_rational(a)
    }
    fn is_atomic(&self, _a: &Rational) -> bool {
        true
    }
    fn cmp_elems(&self, a: &Rational, b: &Rational) -> Ordering {
        a.cmp(b)
    }
}

/// `p/q` with `q > 0`, or just `p` for integers.
pub fn render_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Joins `(coefficient, monomial)` pairs into `c1*m1 + c2*m2 - ...`.
///
/// `coeff` is the rendered coefficient and `atomic` tells whether it may be
/// written without parentheses. An empty monomial denotes the constant term.
pub(crate) fn render_terms(terms: &[(String, bool, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (coeff, atomic, mono)) in terms.iter().enumerate() {
        let piece = if mono.is_empty() {
            if *atomic {
                coeff.clone()
            } else {
                format!("({coeff})")
            }
        } else if coeff == "1" {
            mono.clone()
        } else if coeff == "-1" {
            format!("-{mono}")
        } else if *atomic {
            format!("{coeff}*{mono}")
        } else {
            format!("({coeff})*{mono}")
        };
        if idx == 0 {
            out.push_str(&piece);
        } else if let Some(rest) = piece.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&piece);
        }
    }
    out
}
