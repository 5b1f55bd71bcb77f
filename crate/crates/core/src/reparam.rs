//! Optimal affine reparametrization.
//!
//! Given `phi` over `Q(a)`, finds `t -> a_0 t + b_0` such that the
//! coefficients of `phi(a_0 t + b_0)` generate a field `Q(g)` of the least
//! possible degree `r`, or reports FAIL when no affine change brings `phi`
//! down to `Q` at all (the witness variety has no points at infinity).

use std::fmt;

use crate::descent::{witness_ideal, Parametrization};
use crate::error::{Error, Result};
use crate::exec::{self, Settings};
use crate::field::{
    primitive_element, roots_in_field, solve_system_in_field, Field, NumberField, Rationals,
    SubfieldEmbedding, Tower,
};
use crate::groebner::Ideal;
use crate::hypercircle::{points_at_infinity, points_at_infinity_in, ProjectivePoint};
use crate::poly::{default_names, Monomial, MultiPoly, RatFun, UniPoly};

/// Absolute number field `Q(a)`.
pub type Extension = NumberField<Rationals>;
/// An element of `Q(a)` in the power basis.
pub type Elem = <Extension as Field>::Elem;

/// The substitution `t -> a t + b` with `a != 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineShift {
    pub a: Elem,
    pub b: Elem,
}

impl AffineShift {
    pub fn new(field: &Extension, a: Elem, b: Elem) -> Result<Self> {
        if field.is_zero(&a) {
            return Err(Error::InvalidArgument("affine shift with zero slope".into()));
        }
        Ok(AffineShift { a, b })
    }

    pub fn identity(field: &Extension) -> Self {
        AffineShift {
            a: field.one(),
            b: field.zero(),
        }
    }

    pub fn is_identity(&self, field: &Extension) -> bool {
        field.is_one(&self.a) && field.is_zero(&self.b)
    }

    pub fn as_ratfun(&self, field: &Extension) -> RatFun<Extension> {
        RatFun::from_poly(UniPoly::new(field, vec![self.b.clone(), self.a.clone()]))
    }

    pub fn render(&self, field: &Extension) -> String {
        UniPoly::new(field, vec![self.b.clone(), self.a.clone()]).render("t")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Success => "success",
            Status::Fail => "fail",
        })
    }
}

/// Which route produced the line of a witness variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineMethod {
    /// Linear forms of the ideal of rank `m - 1`.
    LinearPart,
    /// Direction from a point at infinity, base point from the coefficients
    /// of `g(p + s v)` in `s`.
    InfinityPoint,
}

/// The line `p + s v` inside a witness variety.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessLine<L: Field> {
    pub point: Vec<L::Elem>,
    pub direction: Vec<L::Elem>,
    pub method: LineMethod,
}

impl<L: Field> WitnessLine<L> {
    /// Coordinates `p_i + v_i s` as polynomials in `s`.
    pub fn coordinates(&self, field: &L) -> Vec<UniPoly<L>> {
        self.point
            .iter()
            .zip(&self.direction)
            .map(|(p, v)| UniPoly::new(field, vec![p.clone(), v.clone()]))
            .collect()
    }

    pub fn render(&self, field: &L) -> String {
        let parts: Vec<String> = self.coordinates(field).iter().map(|c| c.render("s")).collect();
        format!("({})", parts.join(", "))
    }
}

/// Outcome of [`optimal_affine_reparametrize`] with the intermediate objects
/// of every step that ran.
#[derive(Clone, Debug)]
pub struct ReparamReport {
    pub status: Status,
    /// Degree of the optimal coefficient field; `None` on FAIL.
    pub r: Option<usize>,
    pub gamma: Option<SubfieldEmbedding<Extension>>,
    pub shift: Option<AffineShift>,
    /// `phi(a t + b)` over `Q(a)`.
    pub reparametrized: Option<Parametrization<Extension>>,
    /// The same parametrization with coefficients written over `Q(g)`.
    pub over_gamma: Option<Parametrization<Extension>>,
    /// Witness ideal over `Q`; absent when the input was already rational.
    pub witness: Option<Ideal<Rationals>>,
    pub witness_dimension: Option<i64>,
    pub infinity_points: Vec<ProjectivePoint<Extension>>,
    /// Minimal polynomial of `a` over `Q(g)` when `1 < r < n`.
    pub relative_minpoly: Option<UniPoly<Extension>>,
    /// Witness ideal of the descent from `Q(g)(a)` to `Q(g)`.
    pub second_witness: Option<Ideal<Extension>>,
    pub line: Option<String>,
    pub line_method: Option<LineMethod>,
    /// The shift written over `Q(g)(a)`, as `t + c*a`-style text.
    pub shift_relative: Option<String>,
}

impl ReparamReport {
    fn new(status: Status) -> Self {
        ReparamReport {
            status,
            r: None,
            gamma: None,
            shift: None,
            reparametrized: None,
            over_gamma: None,
            witness: None,
            witness_dimension: None,
            infinity_points: Vec::new(),
            relative_minpoly: None,
            second_witness: None,
            line: None,
            line_method: None,
            shift_relative: None,
        }
    }

    /// Records the shift and everything derived from it.
    fn finish(
        mut self,
        phi: &Parametrization<Extension>,
        emb: SubfieldEmbedding<Extension>,
        shift: AffineShift,
    ) -> Result<Self> {
        let field = phi.field();
        let reparametrized = phi.compose(&shift.as_ratfun(field))?;
        let over_gamma = express_over(&reparametrized, &emb)?;
        self.r = Some(emb.degree());
        self.gamma = Some(emb);
        self.shift = Some(shift);
        self.reparametrized = Some(reparametrized);
        self.over_gamma = Some(over_gamma);
        Ok(self)
    }
}

/// Rewrites every coefficient over `Q(g)`; fails if one lies outside.
pub fn express_over(
    phi: &Parametrization<Extension>,
    emb: &SubfieldEmbedding<Extension>,
) -> Result<Parametrization<Extension>> {
    let sub = emb.subfield();
    if let Some(c) = phi.coefficients().iter().find(|c| emb.membership(c).is_none()) {
        return Err(Error::Inconsistent(format!(
            "coefficient {} lies outside the subfield",
            emb.ambient.render(c)
        )));
    }
    phi.map_coeffs(&sub, |c| emb.membership(c).expect("checked above"))
}

/// The optimal affine reparametrization of `phi` over its field `Q(a)`.
pub fn optimal_affine_reparametrize(
    phi: &Parametrization<Extension>,
    settings: &Settings,
) -> Result<ReparamReport> {
    let field = phi.field();
    let n = field.degree();
    if phi.coefficients().iter().all(|c| field.as_rational(c).is_some()) {
        let emb = SubfieldEmbedding::new(field, field.zero());
        return ReparamReport::new(Status::Success).finish(phi, emb, AffineShift::identity(field));
    }

    // witness variety and its points at infinity
    let (witness, _) = witness_ideal(phi, field, settings)?;
    let dim = witness.dimension(settings)?;
    let points = points_at_infinity(&witness, field, settings)?;
    let mut report = ReparamReport::new(Status::Fail);
    report.witness = Some(witness.clone());
    report.witness_dimension = Some(dim);
    report.infinity_points = points.clone();
    if points.is_empty() != (dim <= 0) {
        return Err(Error::Inconsistent(format!(
            "witness variety has dimension {dim} but {} points at infinity",
            points.len()
        )));
    }
    if points.is_empty() {
        return Ok(report);
    }
    report.status = Status::Success;

    // field of the first point at infinity
    let emb = primitive_element(field, points[0].affine_direction(), settings)?;
    let r = emb.degree();
    if r == n {
        return report.finish(phi, emb, AffineShift::identity(field));
    }
    if r == 1 {
        let line = extract_line(&witness, settings)?;
        let shift = AffineShift::new(
            field,
            field.from_rationals(&line.direction),
            field.from_rationals(&line.point),
        )?;
        report.line = Some(line.render(&Rationals));
        report.line_method = Some(line.method);
        return report.finish(phi, emb, shift);
    }

    // descent from Q(g)(a) to Q(g)
    let tower = Tower::new(field, &emb)?;
    report.relative_minpoly = Some(tower.top.modulus().clone());
    let phi_t = phi.map_coeffs(&tower.top, |c| tower.to_tower(c))?;
    let sub = &tower.sub;
    let over_sub = phi_t
        .coefficients()
        .iter()
        .all(|c| c[1..].iter().all(|x| sub.is_zero(x)));
    if over_sub {
        return report.finish(phi, emb, AffineShift::identity(field));
    }
    let (second, _) = witness_ideal(&phi_t, &tower.top, settings)?;
    report.second_witness = Some(second.clone());
    let line = extract_line(&second, settings)?;
    let shift = AffineShift::new(
        field,
        tower.flatten(&line.direction),
        tower.flatten(&line.point),
    )?;
    report.line = Some(line.render(sub));
    report.line_method = Some(line.method);
    let relative = UniPoly::new(&tower.top, vec![line.point.clone(), line.direction.clone()]);
    report.shift_relative = Some(relative.render("t"));
    report.finish(phi, emb, shift)
}

/// Runs [`optimal_affine_reparametrize`] on many inputs, in parallel when
/// the settings allow it.
pub fn reparametrize_all(
    inputs: &[Parametrization<Extension>],
    settings: &Settings,
) -> Vec<Result<ReparamReport>> {
    exec::map(settings.exec, inputs, |phi| optimal_affine_reparametrize(phi, settings))
}

/// The line contained in a witness variety.
///
/// Tries the linear forms of the ideal first. When extra zero-dimensional
/// or embedded components hide them, the direction is taken from a point
/// at infinity `v` and the base point `p` (with `p_k = 0`, `k` the last
/// nonzero index of `v`) from the vanishing of every coefficient of
/// `g(p + s v)` in `s`.
pub fn extract_line<L: Field>(ideal: &Ideal<L>, settings: &Settings) -> Result<WitnessLine<L>> {
    let m = ideal.nvars();
    if let Some(line) = line_from_linear_part(ideal, settings)? {
        if lies_on(ideal, &line) {
            return Ok(line);
        }
    }
    let field = ideal.field();
    let points = points_at_infinity_in(
        ideal,
        field,
        |c| c.clone(),
        |u| roots_in_field(u, settings),
        settings,
    )?;
    for v in &points {
        let dir = v.affine_direction().to_vec();
        let k = dir
            .iter()
            .rposition(|c| !field.is_zero(c))
            .ok_or_else(|| Error::Inconsistent("point at infinity with zero direction".into()))?;
        // unknowns p_j (j != k) at positions 0..m-1, the parameter s last
        let unknowns: Vec<usize> = (0..m).filter(|&j| j != k).collect();
        let images: Vec<MultiPoly<L>> = (0..m)
            .map(|i| {
                let s = MultiPoly::var(field, m, m - 1).scale(&dir[i]);
                match unknowns.iter().position(|&j| j == i) {
                    Some(pos) => MultiPoly::var(field, m, pos).add(&s),
                    None => s,
                }
            })
            .collect();
        let keep: Vec<usize> = (0..m - 1).collect();
        let mut eqs = Vec::new();
        for g in ideal.gens() {
            for c in g.substitute(&images).coefficients_in(m - 1) {
                eqs.push(c.restrict_vars(&keep).expect("parameter eliminated"));
            }
        }
        let solutions = if m == 1 {
            if eqs.iter().all(|e| e.is_zero()) {
                vec![Vec::new()]
            } else {
                Vec::new()
            }
        } else {
            solve_system_in_field(field, &eqs, m - 1, settings)?
        };
        if let Some(sol) = solutions.into_iter().next() {
            let mut point = vec![field.zero(); m];
            for (j, x) in unknowns.iter().zip(sol) {
                point[*j] = x;
            }
            let line = WitnessLine {
                point,
                direction: dir,
                method: LineMethod::InfinityPoint,
            };
            if lies_on(ideal, &line) {
                return Ok(line);
            }
        }
    }
    Err(Error::LineExtraction(format!(
        "no line found in the variety of {}",
        render_ideal(ideal)
    )))
}

fn line_from_linear_part<L: Field>(ideal: &Ideal<L>, settings: &Settings) -> Result<Option<WitnessLine<L>>> {
    let field = ideal.field();
    let m = ideal.nvars();
    let forms = ideal.linear_part(settings)?;
    if m == 0 || forms.len() != m - 1 {
        return Ok(None);
    }
    let coeff = |f: &MultiPoly<L>, i: usize| f.coeff(&Monomial::var(m, i));
    let mut pivots = Vec::with_capacity(m - 1);
    for f in &forms {
        match (0..m).find(|&i| !field.is_zero(&coeff(f, i))) {
            Some(p) => pivots.push(p),
            None => return Ok(None),
        }
    }
    let free = match (0..m).find(|i| !pivots.contains(i)) {
        Some(j) => j,
        None => return Ok(None),
    };
    let mut point = vec![field.zero(); m];
    let mut direction = vec![field.zero(); m];
    direction[free] = field.one();
    for (f, &p) in forms.iter().zip(&pivots) {
        // reduced echelon: t_p + c t_free + c0 = 0
        let lc = coeff(f, p);
        let c = field.div(&coeff(f, free), &lc)?;
        let c0 = field.div(&f.coeff(&Monomial::one(m)), &lc)?;
        direction[p] = field.neg(&c);
        point[p] = field.neg(&c0);
    }
    Ok(Some(WitnessLine {
        point,
        direction,
        method: LineMethod::LinearPart,
    }))
}

/// True when every generator vanishes identically on the line.
fn lies_on<L: Field>(ideal: &Ideal<L>, line: &WitnessLine<L>) -> bool {
    let field = ideal.field();
    let images: Vec<MultiPoly<L>> = line
        .coordinates(field)
        .iter()
        .map(|c| MultiPoly::from_unipoly(c, 1, 0))
        .collect();
    ideal.gens().iter().all(|g| g.substitute(&images).is_zero())
}

fn render_ideal<L: Field>(ideal: &Ideal<L>) -> String {
    let names = default_names(ideal.nvars());
    let gens: Vec<String> = ideal.gens().iter().map(|g| g.render(&names)).collect();
    format!("({})", gens.join(", "))
}

/// True when every coefficient of `phi(a t + b)`, reduced with a monic
/// denominator, lies in `Q(g)`.
pub fn verify_reparametrization(
    phi: &Parametrization<Extension>,
    shift: &AffineShift,
    emb: &SubfieldEmbedding<Extension>,
) -> bool {
    match phi.compose(&shift.as_ratfun(phi.field())) {
        Ok(p) => p.coefficients().iter().all(|c| emb.membership(c).is_some()),
        Err(_) => false,
    }
}

/// Degree over `Q` of the field generated by the coefficients of `phi`.
pub fn coefficient_field_degree(phi: &Parametrization<Extension>, settings: &Settings) -> Result<usize> {
    let field = phi.field();
    let coeffs: Vec<Elem> = phi
        .coefficients()
        .into_iter()
        .filter(|c| field.as_rational(c).is_none())
        .collect();
    if coeffs.is_empty() {
        return Ok(1);
    }
    Ok(primitive_element(field, &coeffs, settings)?.degree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn gaussian() -> Extension {
        NumberField::new(Rationals, UniPoly::from_i64(&Rationals, &[1, 0, 1]), "a")
    }

    fn poly(k: &Extension, coeffs: &[(i64, i64)]) -> UniPoly<Extension> {
        UniPoly::new(
            k,
            coeffs
                .iter()
                .map(|&(x, y)| k.from_rationals(&[rat_int(x), rat_int(y)]))
                .collect(),
        )
    }

    #[test]
    fn gaussian_positive() {
        let k = gaussian();
        // (t - i)^2 and (t - i)^3
        let x = poly(&k, &[(-1, 0), (0, -2), (1, 0)]);
        let y = poly(&k, &[(0, 1), (-3, 0), (0, -3), (1, 0)]);
        let phi = Parametrization::new(vec![RatFun::from_poly(x), RatFun::from_poly(y)]).unwrap();
        let s = Settings::default();
        let rep = optimal_affine_reparametrize(&phi, &s).unwrap();
        assert_eq!(rep.status, Status::Success);
        assert_eq!(rep.r, Some(1));
        let shift = rep.shift.unwrap();
        assert_eq!(shift, AffineShift { a: k.one(), b: k.generator() });
        let out = rep.reparametrized.unwrap();
        assert_eq!(out.components[0], RatFun::from_poly(poly(&k, &[(0, 0), (0, 0), (1, 0)])));
        assert_eq!(out.components[1], RatFun::from_poly(poly(&k, &[(0, 0), (0, 0), (0, 0), (1, 0)])));
        assert_eq!(rep.line_method, Some(LineMethod::InfinityPoint));
    }

    #[test]
    fn gaussian_negative() {
        let k = gaussian();
        let x = poly(&k, &[(0, 1), (1, 0)]);
        let y = poly(&k, &[(0, 0), (0, 0), (1, 0)]);
        let phi = Parametrization::new(vec![RatFun::from_poly(x), RatFun::from_poly(y)]).unwrap();
        let rep = optimal_affine_reparametrize(&phi, &Settings::default()).unwrap();
        assert_eq!(rep.status, Status::Fail);
        assert_eq!(rep.witness_dimension, Some(0));
        assert!(rep.infinity_points.is_empty());
        assert!(rep.shift.is_none());
    }

    #[test]
    fn rational_input_short_circuits() {
        let k = gaussian();
        let x = poly(&k, &[(1, 0), (2, 0)]);
        let phi = Parametrization::new(vec![RatFun::from_poly(x)]).unwrap();
        let rep = optimal_affine_reparametrize(&phi, &Settings::default()).unwrap();
        assert_eq!(rep.r, Some(1));
        assert!(rep.shift.unwrap().is_identity(&k));
        assert!(rep.witness.is_none());
    }

    #[test]
    fn full_degree_keeps_identity() {
        // x^2 + y^2 + 1 = 0 has no rational points: r = 2 = n
        let k = gaussian();
        let den = poly(&k, &[(1, 0), (0, 0), (1, 0)]);
        let x = RatFun::new(poly(&k, &[(0, -1), (0, 0), (0, 1)]), den.clone()).unwrap();
        let y = RatFun::new(poly(&k, &[(0, 0), (0, -2)]), den).unwrap();
        let phi = Parametrization::new(vec![x, y]).unwrap();
        let rep = optimal_affine_reparametrize(&phi, &Settings::default()).unwrap();
        assert_eq!(rep.status, Status::Success);
        assert_eq!(rep.r, Some(2));
        assert!(rep.shift.unwrap().is_identity(&k));
    }

    #[test]
    fn verification_and_degree() {
        let k = gaussian();
        let x = poly(&k, &[(-1, 0), (0, -2), (1, 0)]);
        let phi = Parametrization::new(vec![RatFun::from_poly(x)]).unwrap();
        let s = Settings::default();
        let trivial = SubfieldEmbedding::new(&k, k.zero());
        assert!(!verify_reparametrization(&phi, &AffineShift::identity(&k), &trivial));
        let shift = AffineShift::new(&k, k.one(), k.generator()).unwrap();
        assert!(verify_reparametrization(&phi, &shift, &trivial));
        assert_eq!(coefficient_field_degree(&phi, &s).unwrap(), 2);
        assert!(AffineShift::new(&k, k.zero(), k.one()).is_err());
    }

    #[test]
    fn line_from_linear_forms() {
        let q = Rationals;
        // t1 - 2 t0 - 3 in two variables
        let f = MultiPoly::var(&q, 2, 1)
            .sub(&MultiPoly::var(&q, 2, 0).scale(&rat_int(2)))
            .sub(&MultiPoly::constant(&q, 2, rat_int(3)));
        let line = extract_line(&Ideal::new(&q, 2, vec![f]), &Settings::default()).unwrap();
        assert_eq!(line.method, LineMethod::LinearPart);
        // pivot on t0: t0 = t1/2 - 3/2
        assert_eq!(line.direction, vec![rat(1, 2), rat_int(1)]);
        assert_eq!(line.point, vec![rat(-3, 2), rat_int(0)]);
    }
}
