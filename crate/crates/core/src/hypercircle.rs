//! Hypercircles: the Weil descent of a unit `(a t + b)/(c t + d)`, and
//! points at infinity of witness varieties.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exec::Settings;
use crate::field::{primitive_element, roots_in_field, solve_triangular, Field, NumberField, SubfieldEmbedding};
use crate::descent::{alpha_decompose, witness_ideal, Parametrization};
use crate::groebner::{GroebnerBasis, Ideal, MonomialOrder};
use crate::poly::{MultiPoly, RatFun, UniPoly};

/// A Möbius transformation `(a t + b) / (c t + d)` with `ad - bc != 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFraction<K: Field> {
    pub a: K::Elem,
    pub b: K::Elem,
    pub c: K::Elem,
    pub d: K::Elem,
}

impl<K: Field> LinearFraction<K> {
    pub fn determinant(&self, field: &K) -> K::Elem {
        field.sub(&field.mul(&self.a, &self.d), &field.mul(&self.b, &self.c))
    }

    /// Reads `(a t + b) / (c t + d)` off a reduced rational function.
    pub fn from_ratfun(f: &RatFun<K>) -> Result<Self> {
        let field = f.field();
        if f.num().degree().unwrap_or(0) > 1 || f.den().degree().unwrap_or(0) > 1 {
            return Err(Error::InvalidArgument(format!("{} is not a unit", f.render("t"))));
        }
        let u = LinearFraction {
            a: f.num().coeff(1),
            b: f.num().coeff(0),
            c: f.den().coeff(1),
            d: f.den().coeff(0),
        };
        if field.is_zero(&u.determinant(field)) {
            return Err(Error::InvalidArgument(format!("{} is constant", f.render("t"))));
        }
        Ok(u)
    }

    pub fn to_ratfun(&self, field: &K) -> Result<RatFun<K>> {
        RatFun::new(
            UniPoly::new(field, vec![self.b.clone(), self.a.clone()]),
            UniPoly::new(field, vec![self.d.clone(), self.c.clone()]),
        )
    }

    /// `(d t - b) / (-c t + a)`.
    pub fn inverse(&self, field: &K) -> Self {
        LinearFraction {
            a: self.d.clone(),
            b: field.neg(&self.b),
            c: field.neg(&self.c),
            d: self.a.clone(),
        }
    }
}

/// Implicit equations of the hypercircle of `u`: the witness ideal of the
/// inverse unit, whose `L`-rational values are exactly the `u(s)`, `s` in `L`.
pub fn hypercircle_ideal<L: Field>(
    u: &LinearFraction<NumberField<L>>,
    top: &NumberField<L>,
    settings: &Settings,
) -> Result<Ideal<L>> {
    if top.is_zero(&u.determinant(top)) {
        return Err(Error::InvalidArgument("degenerate unit: ad - bc = 0".into()));
    }
    let inv = Parametrization::new(vec![u.inverse(top).to_ratfun(top)?])?;
    Ok(witness_ideal(&inv, top, settings)?.0)
}

/// The `a`-hypercircle of a unit: its coordinates `psi_0, ..., psi_(n-1)`
/// over `L`, each in lowest terms.
pub fn unit_to_hypercircle<L: Field>(
    u: &LinearFraction<NumberField<L>>,
    top: &NumberField<L>,
) -> Result<Vec<RatFun<L>>> {
    if top.is_zero(&u.determinant(top)) {
        return Err(Error::InvalidArgument("degenerate unit: ad - bc = 0".into()));
    }
    let lin = |x: &Vec<L::Elem>, y: &Vec<L::Elem>| {
        MultiPoly::from_unipoly(&UniPoly::new(top, vec![y.clone(), x.clone()]), 1, 0)
    };
    let (comps, delta) = alpha_decompose(top, &lin(&u.a, &u.b), &lin(&u.c, &u.d))?;
    let den = delta.to_unipoly(0).expect("univariate");
    comps
        .iter()
        .map(|c| RatFun::new(c.to_unipoly(0).expect("univariate"), den.clone()))
        .collect()
}

/// A point of projective space, stored with its last nonzero coordinate
/// scaled to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectivePoint<K: Field> {
    coords: Vec<K::Elem>,
}

impl<K: Field> ProjectivePoint<K> {
    pub fn new(field: &K, coords: Vec<K::Elem>) -> Result<Self> {
        let last = coords
            .iter()
            .rposition(|c| !field.is_zero(c))
            .ok_or_else(|| Error::InvalidArgument("all projective coordinates are zero".into()))?;
        let inv = field.inv(&coords[last])?;
        Ok(ProjectivePoint {
            coords: coords.iter().map(|c| field.mul(c, &inv)).collect(),
        })
    }

    pub fn coords(&self) -> &[K::Elem] {
        &self.coords
    }

    /// Coordinates without the trailing homogenizing zero.
    pub fn affine_direction(&self) -> &[K::Elem] {
        &self.coords[..self.coords.len() - 1]
    }

    pub fn cmp_canonical(&self, other: &Self, field: &K) -> Ordering {
        crate::field::cmp_vectors(field, &self.coords, &other.coords)
    }

    pub fn render(&self, field: &K) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| field.render(c)).collect();
        format!("[{}]", parts.join(" : "))
    }
}

/// `[l_0 : ... : l_(n-1) : 0]` with `l_i` the coefficients of
/// `M(t) / (t - a)`; always `l_(n-1) = 1`.
pub fn primitive_infinity_point<L: Field>(top: &NumberField<L>) -> ProjectivePoint<NumberField<L>> {
    let m = top.modulus().map_coeffs(top, |c| top.from_base(c));
    let (q, _) = m
        .divrem(&UniPoly::linear_root(top, &top.generator()))
        .expect("nonzero divisor");
    let mut coords = q.into_coeffs();
    coords.push(top.zero());
    ProjectivePoint::new(top, coords).expect("monic quotient")
}

/// Points at infinity, with coordinates in `target`, of the variety of an
/// ideal over `L`.
///
/// The leading forms of a graded basis cut out the points at infinity. Each
/// chart `t_k = 1, t_j = 0 (j > k)` is tried for `k = m-1, ..., 0`, so every
/// point is found exactly once; each chart is solved by a lex basis over
/// `L` and back-substitution with roots taken in `target`.
pub fn points_at_infinity_in<L: Field, T: Field>(
    ideal: &Ideal<L>,
    target: &T,
    lift: impl Fn(&L::Elem) -> T::Elem + Copy,
    roots: impl Fn(&UniPoly<T>) -> Result<Vec<T::Elem>> + Copy,
    settings: &Settings,
) -> Result<Vec<ProjectivePoint<T>>> {
    let base = ideal.field();
    let m = ideal.nvars();
    let gb = ideal.groebner(MonomialOrder::GrevLex, settings)?;
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    let tops: Vec<MultiPoly<L>> = gb.polys().iter().map(|g| g.top_form()).collect();
    let mut points = Vec::new();
    for k in (0..m).rev() {
        // t_k = 1, t_j = 0 for j > k, leaving t_0 .. t_(k-1)
        let images: Vec<MultiPoly<L>> = (0..m)
            .map(|i| match i.cmp(&k) {
                Ordering::Less => MultiPoly::var(base, k, i),
                Ordering::Equal => MultiPoly::one(base, k),
                Ordering::Greater => MultiPoly::zero(base, k),
            })
            .collect();
        let eqs: Vec<MultiPoly<L>> = tops.iter().map(|f| f.substitute(&images)).collect();
        let chart_solutions: Vec<Vec<T::Elem>> = if k == 0 {
            if eqs.iter().all(|e| e.is_zero()) {
                vec![Vec::new()]
            } else {
                Vec::new()
            }
        } else {
            let chart = GroebnerBasis::compute(base, k, &eqs, MonomialOrder::GrevLex, settings)?;
            if chart.is_unit() {
                continue;
            }
            if !chart.is_zero_dimensional() {
                return Err(Error::PositiveDimensionalInfinity);
            }
            let lex = chart.convert(MonomialOrder::Lex)?;
            solve_triangular(&lex, target, lift, roots)?
        };
        for sol in chart_solutions {
            let mut coords = sol;
            coords.push(target.one());
            coords.resize(m + 1, target.zero());
            points.push(ProjectivePoint::new(target, coords)?);
        }
    }
    points.sort_by(|a, b| a.cmp_canonical(b, target));
    points.dedup();
    Ok(points)
}

/// Points at infinity with coordinates in `L(a)`.
pub fn points_at_infinity<L: Field>(
    ideal: &Ideal<L>,
    top: &NumberField<L>,
    settings: &Settings,
) -> Result<Vec<ProjectivePoint<NumberField<L>>>> {
    points_at_infinity_in(ideal, top, |c| top.from_base(c), |u| roots_in_field(u, settings), settings)
}

/// The field generated by the coordinates of the canonically first point.
pub fn hypercircle_degree_field<K: Field>(
    field: &K,
    points: &[ProjectivePoint<K>],
    settings: &Settings,
) -> Result<SubfieldEmbedding<K>> {
    let first = points
        .first()
        .ok_or_else(|| Error::InvalidArgument("no points at infinity".into()))?;
    primitive_element(field, first.affine_direction(), settings)
}
