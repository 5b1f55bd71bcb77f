use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{render_terms, Field};
use crate::linalg::Domain;
use crate::poly::UniPoly;

/// Dense exponent vector of fixed arity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        parts.join("*")
    }
}

/// Sparse multivariate polynomial: monomial -> nonzero coefficient.
///
/// Iteration order of the term map is lexicographic on exponent vectors
/// (variable 0 most significant), which keeps every traversal deterministic.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        write!(f, "MultiPoly({})", self.render(&names))
    }
}

/// `t0, t1, ...`
pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("t{i}")).collect()
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        MultiPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        if !field.is_zero(&c) {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(field: &F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        Self::term(field, Monomial::var(nvars, i), field.one())
    }

    pub fn term(field: &F, mono: Monomial, c: F::Elem) -> Self {
        let nvars = mono.nvars();
        let mut p = Self::zero(field, nvars);
        if !field.is_zero(&c) {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn from_terms(field: &F, nvars: usize, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Value when the polynomial is constant.
    pub fn constant_value(&self) -> Option<F::Elem> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn add_term(&mut self, m: Monomial, c: F::Elem) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = self.field.add(old, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field, self.nvars);
        }
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), self.field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, mono: &Monomial, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field, self.nvars);
        }
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), self.field.mul(a, c)))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Which variables occur.
    pub fn support(&self) -> Vec<bool> {
        let mut used = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (u, &e) in used.iter_mut().zip(&m.0) {
                *u |= e > 0;
            }
        }
        used
    }

    /// Leading term under lex with variable 0 largest.
    pub fn lex_leading(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor`; fails when the remainder is nonzero.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        let (lm, lc) = divisor.lex_leading().ok_or(Error::DivisionByZero)?;
        let lc_inv = self.field.inv(lc)?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.field, self.nvars);
        while let Some((m, c)) = rem.lex_leading() {
            if !lm.divides(m) {
                return Err(Error::NotDivisible);
            }
            let qm = m.div(lm);
            let qc = self.field.mul(c, &lc_inv);
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Composition: variable `i` is replaced by `images[i]`. All images share
    /// one arity, which becomes the arity of the result.
    pub fn substitute(&self, images: &[MultiPoly<F>]) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<MultiPoly<F>>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(&self.field, p.nvars), p.clone()])
            .collect();
        let mut out = Self::zero(&self.field, target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&self.field, target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        self.terms.iter().fold(f.zero(), |acc, (m, c)| {
            let v = m
                .0
                .iter()
                .zip(point)
                .fold(c.clone(), |v, (&e, x)| f.mul(&v, &f.pow(x, e)));
            f.add(&acc, &v)
        })
    }

    /// Appends a new last variable `h` making every term of total degree
    /// `deg self`.
    pub fn homogenize(&self) -> Self {
        let d = self.total_degree().unwrap_or(0);
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.push(d - m.degree());
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Sets variable `index` to 1 and removes it.
    pub fn dehomogenize(&self, index: usize) -> Self {
        let mut out = Self::zero(&self.field, self.nvars - 1);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.remove(index);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// The homogeneous component of highest total degree.
    pub fn top_form(&self) -> Self {
        let Some(d) = self.total_degree() else {
            return self.clone();
        };
        Self::from_terms(
            &self.field,
            self.nvars,
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn map_coeffs<G: Field>(&self, target: &G, map: impl Fn(&F::Elem) -> G::Elem) -> MultiPoly<G> {
        MultiPoly::from_terms(
            target,
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), map(c))),
        )
    }

    /// Re-indexes variables: variable `i` becomes `positions[i]` in a ring of
    /// arity `nvars`.
    pub fn remap_vars(&self, nvars: usize, positions: &[usize]) -> Self {
        Self::from_terms(
            &self.field,
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; nvars];
                for (i, &x) in m.0.iter().enumerate() {
                    e[positions[i]] += x;
                }
                (Monomial(e), c.clone())
            }),
        )
    }

    /// Drops the variables not listed in `keep`; fails if a dropped variable
    /// occurs.
    pub fn restrict_vars(&self, keep: &[usize]) -> Option<Self> {
        let mut out = Self::zero(&self.field, keep.len());
        for (m, c) in &self.terms {
            let kept: u32 = keep.iter().map(|&i| m.0[i]).sum();
            if kept != m.degree() {
                return None;
            }
            out.add_term(Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone());
        }
        Some(out)
    }

    /// Coefficients with respect to `var`: `self = sum_k c_k * var^k`, with
    /// `var` absent from every `c_k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(&self.field, self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut e = m.0.clone();
            e[var] = 0;
            out[k].add_term(Monomial(e), c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    /// The polynomial as univariate in `var`, if no other variable occurs.
    pub fn to_unipoly(&self, var: usize) -> Option<UniPoly<F>> {
        let mut coeffs = vec![self.field.zero(); self.degree_in(var).unwrap_or(0) as usize + 1];
        for (m, c) in &self.terms {
            if m.degree() != m.0[var] {
                return None;
            }
            coeffs[m.0[var] as usize] = c.clone();
        }
        Some(UniPoly::new(&self.field, coeffs))
    }

    pub fn from_unipoly(u: &UniPoly<F>, nvars: usize, var: usize) -> Self {
        Self::from_terms(
            u.field(),
            nvars,
            u.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; nvars];
                e[var] = k as u32;
                (Monomial(e), c.clone())
            }),
        )
    }

    /// Terms in graded-lex descending order.
    pub fn grlex_terms(&self) -> Vec<(&Monomial, &F::Elem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
        v
    }

    pub fn render(&self, names: &[String]) -> String {
        let f = &self.field;
        let terms: Vec<(String, bool, String)> = self
            .grlex_terms()
            .into_iter()
            .map(|(m, c)| (f.render(c), f.is_atomic(c), m.render(names)))
            .collect();
        render_terms(&terms)
    }
}

/// The polynomial ring `F[t_0, ..., t_{n-1}]` as a [`Domain`].
pub struct PolyDomain<F: Field> {
    pub field: F,
    pub nvars: usize,
}

impl<F: Field> Domain for PolyDomain<F> {
    type Elem = MultiPoly<F>;
    fn zero(&self) -> MultiPoly<F> {
        MultiPoly::zero(&self.field, self.nvars)
    }
    fn one(&self) -> MultiPoly<F> {
        MultiPoly::one(&self.field, self.nvars)
    }
    fn is_zero(&self, a: &MultiPoly<F>) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &MultiPoly<F>, b: &MultiPoly<F>) -> MultiPoly<F> {
        a.sub(b)
    }
    fn mul(&self, a: &MultiPoly<F>, b: &MultiPoly<F>) -> MultiPoly<F> {
        a.mul(b)
    }
    fn neg(&self, a: &MultiPoly<F>) -> MultiPoly<F> {
        a.neg()
    }
    fn exact_div(&self, a: &MultiPoly<F>, b: &MultiPoly<F>) -> Result<MultiPoly<F>> {
        a.exact_divide(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat_int, Rational};
    use crate::field::{NumberField, Rationals};
    use crate::poly::resultant_in;
    use proptest::prelude::*;

    fn gaussian() -> NumberField<Rationals> {
        NumberField::new(Rationals, UniPoly::from_i64(&Rationals, &[1, 0, 1]), "a")
    }

    fn qpoly(nvars: usize, terms: &[(&[u32], i64)]) -> MultiPoly<Rationals> {
        MultiPoly::from_terms(
            &Rationals,
            nvars,
            terms.iter().map(|(e, c)| (Monomial(e.to_vec()), rat_int(*c))),
        )
    }

    #[test]
    fn norm_form_resultant() {
        // Res_x(x^2 + 1, t0 + x t1) = t0^2 + t1^2
        let d = PolyDomain { field: Rationals, nvars: 2 };
        let f = vec![d.one(), d.zero(), d.one()];
        let g = vec![qpoly(2, &[(&[1, 0], 1)]), qpoly(2, &[(&[0, 1], 1)])];
        let r = resultant_in(&d, &f, &g).unwrap();
        assert_eq!(r, qpoly(2, &[(&[2, 0], 1), (&[0, 2], 1)]));
    }

    #[test]
    fn exact_division_over_gaussian() {
        let k = gaussian();
        let i = k.generator();
        let t0 = MultiPoly::var(&k, 2, 0);
        let t1 = MultiPoly::var(&k, 2, 1);
        let norm = t0.mul(&t0).add(&t1.mul(&t1));
        let lin = t0.add(&t1.scale(&i));
        let q = norm.exact_divide(&lin).unwrap();
        assert_eq!(q, t0.sub(&t1.scale(&i)));
        assert_eq!(norm.exact_divide(&norm).unwrap(), MultiPoly::one(&k, 2));
        assert_eq!(norm.exact_divide(&MultiPoly::one(&k, 2)).unwrap(), norm);
        assert_eq!(norm.exact_divide(&t0), Err(Error::NotDivisible));
    }

    #[test]
    fn weil_substitution_of_square() {
        // t -> t0 + a t1 in t^2 over Q(i)
        let k = gaussian();
        let i = k.generator();
        let t = MultiPoly::var(&k, 1, 0);
        let sq = t.mul(&t);
        let image = MultiPoly::var(&k, 2, 0).add(&MultiPoly::var(&k, 2, 1).scale(&i));
        let out = sq.substitute(&[image]);
        let t0 = MultiPoly::var(&k, 2, 0);
        let t1 = MultiPoly::var(&k, 2, 1);
        let expected = t0
            .mul(&t0)
            .sub(&t1.mul(&t1))
            .add(&t0.mul(&t1).scale(&k.mul(&i, &k.from_i64(2))));
        assert_eq!(out, expected);
        let id = sq.substitute(&[t.clone()]);
        assert_eq!(id, sq);
    }

    #[test]
    fn homogenization() {
        let f = qpoly(1, &[(&[2], 2), (&[1], -10), (&[0], 15)]);
        let h = f.homogenize();
        assert_eq!(h, qpoly(2, &[(&[2, 0], 2), (&[1, 1], -10), (&[0, 2], 15)]));
        assert_eq!(h.dehomogenize(1), f);
        let lin = qpoly(4, &[(&[0, 0, 1, 0], 4), (&[0, 0, 0, 1], 12), (&[0, 0, 0, 0], -3)]);
        assert_eq!(
            lin.homogenize(),
            qpoly(5, &[(&[0, 0, 1, 0, 0], 4), (&[0, 0, 0, 1, 0], 12), (&[0, 0, 0, 0, 1], -3)])
        );
        let names: Vec<String> = ["t0", "h"].iter().map(|s| s.to_string()).collect();
        assert_eq!(h.render(&names), "2*t0^2 - 10*t0*h + 15*h^2");
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly<Rationals>> {
        prop::collection::vec(((0u32..3, 0u32..3), -4i64..5), 0..5).prop_map(|ts| {
            MultiPoly::from_terms(
                &Rationals,
                2,
                ts.into_iter()
                    .map(|((a, b), c)| (Monomial(vec![a, b]), Rational::from_integer(c.into()))),
            )
        })
    }

    proptest! {
        #[test]
        fn exact_divide_inverts_mul(f in arb_poly(), g in arb_poly()) {
            prop_assume!(!g.is_zero());
            prop_assert_eq!(f.mul(&g).exact_divide(&g).unwrap(), f);
        }

        #[test]
        fn substitution_is_homomorphism(f in arb_poly(), g in arb_poly(), x in arb_poly(), y in arb_poly()) {
            let imgs = [x, y];
            prop_assert_eq!(f.add(&g).substitute(&imgs), f.substitute(&imgs).add(&g.substitute(&imgs)));
            prop_assert_eq!(f.mul(&g).substitute(&imgs), f.substitute(&imgs).mul(&g.substitute(&imgs)));
        }

        #[test]
        fn dehomogenize_inverts_homogenize(f in arb_poly()) {
            prop_assert_eq!(f.homogenize().dehomogenize(2), f);
        }
    }
}
