use num_traits::Zero;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::exec::Settings;
use crate::field::{is_irreducible, Field, NumberField, Rationals};
use crate::linalg;
use crate::poly::UniPoly;

/// Validated simple extension `base[x]/(minpoly)`.
pub fn make_extension<K: Field>(
    base: &K,
    minpoly: &UniPoly<K>,
    name: &str,
    settings: &Settings,
) -> Result<NumberField<K>> {
    let deg = minpoly.degree().unwrap_or(0);
    if deg < 2 {
        return Err(Error::InvalidArgument(format!(
            "defining polynomial of {name} must have degree at least 2"
        )));
    }
    if !base.is_one(minpoly.lc().unwrap()) {
        return Err(Error::InvalidArgument(format!("defining polynomial of {name} must be monic")));
    }
    if let Some(factor) = is_irreducible(minpoly, settings)? {
        return Err(Error::NotIrreducible {
            factor: factor.render("x"),
        });
    }
    Ok(NumberField::new(base.clone(), minpoly.clone(), name))
}

/// Minimal polynomial over `Q` of an element, from the first linear
/// dependency among its powers.
pub fn min_poly_over_q<K: Field>(field: &K, x: &K::Elem) -> UniPoly<Rationals> {
    let mut powers: Vec<Vec<Rational>> = vec![field.to_rationals(&field.one())];
    let mut p = field.one();
    loop {
        p = field.mul(&p, x);
        powers.push(field.to_rationals(&p));
        let k = powers.len();
        let rows = linalg::transpose(&powers);
        let kernel = linalg::nullspace(&Rationals, &rows, k);
        if let Some(v) = kernel.into_iter().next() {
            // single free column, the last one, with coefficient 1
            return UniPoly::new(&Rationals, v).monic();
        }
    }
}

/// A subfield `Q(gamma)` of a number field `K`, with `gamma` given in `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubfieldEmbedding<K: Field> {
    pub ambient: K,
    pub gamma_minpoly: UniPoly<Rationals>,
    pub gamma_in_alpha: K::Elem,
    powers: Vec<Vec<Rational>>,
}

impl<K: Field> SubfieldEmbedding<K> {
    /// Builds the embedding of `Q(gamma)`; a rational `gamma` yields the
    /// normalized trivial embedding with minimal polynomial `x` and `gamma = 0`.
    pub fn new(ambient: &K, gamma: K::Elem) -> Self {
        let (minpoly, gamma) = if ambient.as_rational(&gamma).is_some() {
            (UniPoly::from_i64(&Rationals, &[0, 1]), ambient.zero())
        } else {
            (min_poly_over_q(ambient, &gamma), gamma)
        };
        let r = minpoly.degree().unwrap();
        let mut powers = Vec::with_capacity(r);
        let mut p = ambient.one();
        for _ in 0..r {
            powers.push(ambient.to_rationals(&p));
            p = ambient.mul(&p, &gamma);
        }
        SubfieldEmbedding {
            ambient: ambient.clone(),
            gamma_minpoly: minpoly,
            gamma_in_alpha: gamma,
            powers,
        }
    }

    /// `[Q(gamma) : Q]`.
    pub fn degree(&self) -> usize {
        self.gamma_minpoly.degree().unwrap()
    }

    /// `Q(gamma)` as an abstract field with generator named `g`.
    pub fn subfield(&self) -> NumberField<Rationals> {
        NumberField::new(Rationals, self.gamma_minpoly.clone(), "g")
    }

    /// `sum c_j gamma^j` in the ambient field.
    pub fn embed(&self, coords: &[Rational]) -> K::Elem {
        let d = self.ambient.absolute_degree();
        let mut v = vec![Rational::zero(); d];
        for (c, p) in coords.iter().zip(&self.powers) {
            for (x, y) in v.iter_mut().zip(p) {
                *x += c * y;
            }
        }
        self.ambient.from_rationals(&v)
    }

    /// Coordinates of `x` in the basis `1, gamma, ..., gamma^(r-1)`.
    pub fn membership(&self, x: &K::Elem) -> Option<Vec<Rational>> {
        let rows = linalg::transpose(&self.powers);
        linalg::solve(&Rationals, &rows, &self.ambient.to_rationals(x))
    }
}

/// Coordinates of `x` over `Q(gamma)`, if it lies there.
pub fn membership<K: Field>(x: &K::Elem, emb: &SubfieldEmbedding<K>) -> Option<Vec<Rational>> {
    emb.membership(x)
}

/// A primitive element of the field generated by `gens`.
///
/// Each generator is tried in input order; failing that, generators are
/// adjoined one by one through combinations `c + lambda * g` with
/// `lambda = 1, 2, ...`. At most `settings.primitive_search_cap` candidates
/// are examined.
pub fn primitive_element<K: Field>(
    field: &K,
    gens: &[K::Elem],
    settings: &Settings,
) -> Result<SubfieldEmbedding<K>> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument("no generators".into()));
    }
    let cap = settings.primitive_search_cap;
    let mut tried = 0usize;
    let all_in = |emb: &SubfieldEmbedding<K>| gens.iter().all(|g| emb.membership(g).is_some());
    for g in gens {
        tried += 1;
        if tried > cap {
            return Err(Error::PrimitiveSearch { limit: cap });
        }
        let emb = SubfieldEmbedding::new(field, g.clone());
        if all_in(&emb) {
            return Ok(emb);
        }
    }
    let mut current = SubfieldEmbedding::new(field, gens[0].clone());
    let mut c = gens[0].clone();
    for g in &gens[1..] {
        if current.membership(g).is_some() {
            continue;
        }
        let mut lambda = 1i64;
        loop {
            tried += 1;
            if tried > cap {
                return Err(Error::PrimitiveSearch { limit: cap });
            }
            let cand = field.add(&c, &field.mul(&field.from_i64(lambda), g));
            let emb = SubfieldEmbedding::new(field, cand.clone());
            if emb.membership(g).is_some() && emb.membership(&c).is_some() {
                c = cand;
                current = emb;
                break;
            }
            lambda += 1;
        }
    }
    Ok(current)
}

/// The minimal polynomial of the generator `a` of `field` over `Q(gamma)`.
pub fn relative_min_poly(
    field: &NumberField<Rationals>,
    emb: &SubfieldEmbedding<NumberField<Rationals>>,
) -> Result<UniPoly<NumberField<Rationals>>> {
    let n = field.degree();
    let r = emb.degree();
    if !n.is_multiple_of(r) {
        return Err(Error::Inconsistent(format!("subfield degree {r} does not divide {n}")));
    }
    let m = n / r;
    let sub = emb.subfield();
    let basis = mixed_basis(field, emb, m);
    let target = field.to_rationals(&field.pow(&field.generator(), m as u32));
    let c = linalg::solve(&Rationals, &linalg::transpose(&basis), &target)
        .ok_or_else(|| Error::Inconsistent("alpha power outside the tower basis".into()))?;
    let mut coeffs: Vec<Vec<Rational>> = (0..m)
        .map(|k| sub.neg(&c[k * r..(k + 1) * r].to_vec()))
        .collect();
    coeffs.push(sub.one());
    Ok(UniPoly::new(&sub, coeffs))
}

/// Rational vectors of `gamma^j alpha^k`, ordered by `k` then `j`.
fn mixed_basis(
    field: &NumberField<Rationals>,
    emb: &SubfieldEmbedding<NumberField<Rationals>>,
    m: usize,
) -> Vec<Vec<Rational>> {
    let r = emb.degree();
    let a = field.generator();
    let mut out = Vec::with_capacity(m * r);
    let mut ak = field.one();
    for _ in 0..m {
        let mut g = ak.clone();
        for _ in 0..r {
            out.push(field.to_rationals(&g));
            g = field.mul(&g, &emb.gamma_in_alpha);
        }
        ak = field.mul(&ak, &a);
    }
    out
}

/// The tower `Q(gamma)(a)` over a subfield of `Q(a)`, with conversions
/// between absolute and relative coordinates.
#[derive(Clone, Debug)]
pub struct Tower {
    pub absolute: NumberField<Rationals>,
    pub embedding: SubfieldEmbedding<NumberField<Rationals>>,
    pub sub: NumberField<Rationals>,
    pub top: NumberField<NumberField<Rationals>>,
    inverse: Vec<Vec<Rational>>,
}

impl Tower {
    pub fn new(
        absolute: &NumberField<Rationals>,
        embedding: &SubfieldEmbedding<NumberField<Rationals>>,
    ) -> Result<Self> {
        let rel = relative_min_poly(absolute, embedding)?;
        let sub = embedding.subfield();
        let m = rel.degree().unwrap();
        let basis = mixed_basis(absolute, embedding, m);
        let inverse = linalg::inverse(&Rationals, &linalg::transpose(&basis))?;
        Ok(Tower {
            absolute: absolute.clone(),
            embedding: embedding.clone(),
            top: NumberField::new(sub.clone(), rel, absolute.name()),
            sub,
            inverse,
        })
    }

    /// Relative degree `n / r`.
    pub fn relative_degree(&self) -> usize {
        self.top.degree()
    }

    /// Coordinates of an absolute element over `Q(gamma)` in the basis
    /// `1, a, ..., a^(m-1)`.
    pub fn to_tower(&self, x: &[Rational]) -> Vec<Vec<Rational>> {
        let v = self.absolute.to_rationals(&x.to_vec());
        let c: Vec<Rational> = self
            .inverse
            .iter()
            .map(|row| row.iter().zip(&v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .collect();
        let r = self.embedding.degree();
        c.chunks(r).map(|ch| ch.to_vec()).collect()
    }

    /// Inverse of [`Tower::to_tower`].
    pub fn flatten(&self, y: &[Vec<Rational>]) -> Vec<Rational> {
        let f = &self.absolute;
        let a = f.generator();
        let mut acc = f.zero();
        let mut ak = f.one();
        for coeff in y {
            acc = f.add(&acc, &f.mul(&self.embedding.embed(coeff), &ak));
            ak = f.mul(&ak, &a);
        }
        acc
    }

    /// Embeds a subfield element into the absolute field.
    pub fn embed_sub(&self, y: &[Rational]) -> Vec<Rational> {
        self.embedding.embed(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use proptest::prelude::*;

    fn quartic() -> NumberField<Rationals> {
        NumberField::new(Rationals, UniPoly::from_i64(&Rationals, &[8, -16, 12, -4, 1]), "a")
    }

    fn reference_gamma() -> Vec<Rational> {
        vec![rat_int(0), rat_int(-4), rat(3, 2), rat(-1, 2)]
    }

    #[test]
    fn extension_validation() {
        let s = Settings::default();
        let q = Rationals;
        let k = make_extension(&q, &UniPoly::from_i64(&q, &[8, -16, 12, -4, 1]), "a", &s).unwrap();
        assert_eq!(k.degree(), 4);
        assert_eq!(
            make_extension(&q, &UniPoly::from_i64(&q, &[-1, 0, 1]), "a", &s),
            Err(Error::NotIrreducible { factor: "x - 1".into() })
        );
        let sub = make_extension(&q, &UniPoly::from_i64(&q, &[10, 6, 1]), "g", &s).unwrap();
        let g = sub.generator();
        let rel = UniPoly::new(
            &sub,
            vec![
                sub.add(&sub.from_i64(8), &sub.mul(&sub.from_i64(2), &g)),
                sub.sub(&sub.from_i64(-8), &sub.mul(&sub.from_i64(2), &g)),
                sub.one(),
            ],
        );
        let top = make_extension(&sub, &rel, "a", &s).unwrap();
        assert_eq!(top.absolute_degree(), 4);
    }

    #[test]
    fn minimal_polynomials() {
        let k = quartic();
        assert_eq!(min_poly_over_q(&k, &reference_gamma()), UniPoly::from_i64(&Rationals, &[10, 6, 1]));
        assert_eq!(min_poly_over_q(&k, &k.from_i64(5)), UniPoly::from_i64(&Rationals, &[-5, 1]));
        assert_eq!(min_poly_over_q(&k, &k.generator()), k.modulus().clone());
    }

    #[test]
    fn membership_examples() {
        let k = quartic();
        let emb = SubfieldEmbedding::new(&k, reference_gamma());
        assert_eq!(membership(&k.from_i64(8), &emb), Some(vec![rat_int(8), rat_int(0)]));
        let two_gamma = k.mul(&k.from_i64(2), &reference_gamma());
        assert_eq!(membership(&two_gamma, &emb), Some(vec![rat_int(0), rat_int(2)]));
        assert_eq!(membership(&k.generator(), &emb), None);
    }

    #[test]
    fn primitive_elements() {
        let k = quartic();
        let s = Settings::default();
        let two_gamma = k.mul(&k.from_i64(2), &reference_gamma());
        let gens = [two_gamma.clone(), k.from_i64(8), k.from_i64(-3), k.one()];
        let emb = primitive_element(&k, &gens, &s).unwrap();
        assert_eq!(emb.degree(), 2);
        assert_eq!(emb.gamma_in_alpha, two_gamma);
        assert_eq!(emb.gamma_minpoly, UniPoly::from_i64(&Rationals, &[40, 12, 1]));
        let triv = primitive_element(&k, &[k.from_i64(7)], &s).unwrap();
        assert_eq!(triv.degree(), 1);
        assert_eq!(triv.gamma_minpoly, UniPoly::from_i64(&Rationals, &[0, 1]));
        assert_eq!(triv.gamma_in_alpha, k.zero());
        let full = primitive_element(&k, &[k.generator()], &s).unwrap();
        assert_eq!(full.gamma_minpoly, k.modulus().clone());
        // Q(sqrt 2, sqrt 3) from its two square roots needs a combination
        let q = Rationals;
        let biq = NumberField::new(q, UniPoly::from_i64(&q, &[1, 0, -10, 0, 1]), "a");
        let a = biq.generator();
        // a = sqrt2 + sqrt3, a^3 = 11 sqrt2 + 9 sqrt3
        let a3 = biq.pow(&a, 3);
        let s2 = biq.mul(&biq.sub(&a3, &biq.mul(&biq.from_i64(9), &a)), &biq.from_rational(&rat(1, 2)));
        let s3 = biq.sub(&a, &s2);
        assert_eq!(biq.mul(&s2, &s2), biq.from_i64(2));
        let emb = primitive_element(&biq, &[s2.clone(), s3.clone()], &s).unwrap();
        assert_eq!(emb.degree(), 4);
        assert_eq!(emb.gamma_in_alpha, biq.add(&s2, &s3));
        let capped = Settings {
            primitive_search_cap: 2,
            ..Settings::default()
        };
        assert_eq!(
            primitive_element(&biq, &[s2, s3], &capped),
            Err(Error::PrimitiveSearch { limit: 2 })
        );
    }

    #[test]
    fn relative_minimal_polynomial() {
        let k = quartic();
        let emb = SubfieldEmbedding::new(&k, reference_gamma());
        let rel = relative_min_poly(&k, &emb).unwrap();
        let sub = emb.subfield();
        let g = sub.generator();
        let two_g = sub.mul(&sub.from_i64(2), &g);
        let expected = UniPoly::new(
            &sub,
            vec![
                sub.add(&sub.from_i64(8), &two_g),
                sub.sub(&sub.from_i64(-8), &two_g),
                sub.one(),
            ],
        );
        assert_eq!(rel, expected);
        let triv = SubfieldEmbedding::new(&k, k.zero());
        let rel1 = relative_min_poly(&k, &triv).unwrap();
        assert_eq!(rel1.degree(), Some(4));
        let full = SubfieldEmbedding::new(&k, k.generator());
        let reln = relative_min_poly(&k, &full).unwrap();
        assert_eq!(reln.degree(), Some(1));
        assert_eq!(full.subfield().to_rationals(&reln.coeff(0)), vec![rat_int(0), rat_int(-1), rat_int(0), rat_int(0)]);
    }

    #[test]
    fn tower_coordinates() {
        let k = quartic();
        let tower = Tower::new(&k, &SubfieldEmbedding::new(&k, reference_gamma())).unwrap();
        // -39 - 15g + (21 + 9g) a
        let y = vec![vec![rat_int(-39), rat_int(-15)], vec![rat_int(21), rat_int(9)]];
        let x = tower.flatten(&y);
        assert_eq!(tower.to_tower(&x), y);
        assert_eq!(
            tower.to_tower(&k.from_i64(5)),
            vec![vec![rat_int(5), rat_int(0)], vec![rat_int(0), rat_int(0)]]
        );
    }

    proptest! {
        #[test]
        fn tower_round_trip(c in prop::collection::vec(-20i64..20, 4)) {
            let k = quartic();
            let tower = Tower::new(&k, &SubfieldEmbedding::new(&k, reference_gamma())).unwrap();
            let x: Vec<Rational> = c.iter().map(|&v| rat_int(v)).collect();
            prop_assert_eq!(tower.flatten(&tower.to_tower(&x)), x);
        }

        #[test]
        fn min_poly_vanishes(c in prop::collection::vec(-5i64..6, 4)) {
            let k = quartic();
            let x: Vec<Rational> = c.iter().map(|&v| rat_int(v)).collect();
            let m = min_poly_over_q(&k, &x);
            let mk = m.map_coeffs(&k, |q| k.from_rational(q));
            prop_assert!(k.is_zero(&mk.eval(&x)));
            prop_assert_eq!(4 % m.degree().unwrap(), 0);
        }
    }
}
