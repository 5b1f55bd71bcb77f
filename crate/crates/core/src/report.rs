//! Machine-readable reports. Every rendered expression parses back with
//! [`crate::parse`]: `a` is the generator of `Q(a)`, `g` the generator of
//! `Q(g)`, `t` the curve parameter and `t0, t1, ...` descent variables.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Error;
use crate::field::{Field, NumberField, Rationals};
use crate::groebner::Ideal;
use crate::hypercircle::ProjectivePoint;
use crate::poly::{default_names, RatFun};
use crate::quadfields::{render_rational, ConicSpec, FieldDescriptor, Method};
use crate::reparam::{LineMethod, ReparamReport, Status};

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minpoly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_minpoly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_in_alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_minpoly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift_relative: Option<String>,
    /// Components over `Q(g)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reparametrization: Option<Vec<String>>,
    /// The same components over `Q(a)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reparametrization_alpha: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_ideal: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_dimension: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub infinity_points: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line_method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypercircle: Option<HypercircleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conic: Option<ConicReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypercircleReport {
    pub unit: String,
    pub components: Vec<String>,
    pub primitive_infinity_point: String,
    pub implicit_equations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConicReport {
    pub a: String,
    pub b: String,
    pub c: String,
    pub method: String,
    pub slopes: Vec<String>,
    pub radicands: Vec<String>,
    pub canonical: Vec<String>,
    pub pairwise_distinct: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorReport {
    pub code: String,
    pub message: String,
}

type Qa = NumberField<Rationals>;

pub fn render_ideal<F: Field>(ideal: &Ideal<F>) -> Vec<String> {
    let names = default_names(ideal.nvars());
    ideal.gens().iter().map(|g| g.render(&names)).collect()
}

pub fn render_points<K: Field>(field: &K, points: &[ProjectivePoint<K>]) -> Vec<String> {
    points.iter().map(|p| p.render(field)).collect()
}

fn render_components<K: Field>(comps: &[RatFun<K>]) -> Vec<String> {
    comps.iter().map(|c| c.render("t")).collect()
}

impl Report {
    fn new(command: &str, status: &str) -> Self {
        Report {
            command: command.to_string(),
            status: status.to_string(),
            ..Report::default()
        }
    }

    pub fn reparam(field: &Qa, rep: &ReparamReport) -> Self {
        let mut out = Report::new("reparam", &rep.status.to_string());
        out.minpoly = Some(field.modulus().render("x"));
        out.r = rep.r;
        if let Some(g) = &rep.gamma {
            out.gamma_minpoly = Some(g.gamma_minpoly.render("x"));
            out.gamma_in_alpha = Some(field.render(&g.gamma_in_alpha));
        }
        out.relative_minpoly = rep.relative_minpoly.as_ref().map(|p| p.render("x"));
        out.shift = rep.shift.as_ref().map(|s| s.render(field));
        out.shift_relative = rep.shift_relative.clone();
        out.reparametrization = rep.over_gamma.as_ref().map(|p| render_components(&p.components));
        out.reparametrization_alpha = rep
            .reparametrized
            .as_ref()
            .map(|p| render_components(&p.components));
        out.witness_ideal = rep.witness.as_ref().map(render_ideal);
        out.witness_dimension = rep.witness_dimension;
        if rep.witness.is_some() {
            out.infinity_points = Some(render_points(field, &rep.infinity_points));
        }
        out.second_witness = rep.second_witness.as_ref().map(render_ideal);
        out.line = rep.line.clone();
        out.line_method = rep.line_method.map(|m| {
            match m {
                LineMethod::LinearPart => "linear_part",
                LineMethod::InfinityPoint => "infinity_point",
            }
            .to_string()
        });
        out
    }

    pub fn witness(field: &Qa, ideal: &Ideal<Rationals>, dimension: i64) -> Self {
        let mut out = Report::new("witness", "success");
        out.minpoly = Some(field.modulus().render("x"));
        out.witness_ideal = Some(render_ideal(ideal));
        out.witness_dimension = Some(dimension);
        out
    }

    pub fn infinity(field: &Qa, ideal: &Ideal<Rationals>, points: &[ProjectivePoint<Qa>], dimension: i64) -> Self {
        let status = if points.is_empty() { Status::Fail } else { Status::Success };
        let mut out = Report::new("infinity", &status.to_string());
        out.minpoly = Some(field.modulus().render("x"));
        out.witness_ideal = Some(render_ideal(ideal));
        out.witness_dimension = Some(dimension);
        out.infinity_points = Some(render_points(field, points));
        out
    }

    pub fn hypercircle(
        field: &Qa,
        unit: &RatFun<Qa>,
        psi: &[RatFun<Rationals>],
        primitive: &ProjectivePoint<Qa>,
        implicit: &Ideal<Rationals>,
        points: &[ProjectivePoint<Qa>],
        r: usize,
    ) -> Self {
        let mut out = Report::new("hypercircle", "success");
        out.minpoly = Some(field.modulus().render("x"));
        out.r = Some(r);
        out.infinity_points = Some(render_points(field, points));
        out.hypercircle = Some(HypercircleReport {
            unit: unit.render("t"),
            components: render_components(psi),
            primitive_infinity_point: primitive.render(field),
            implicit_equations: render_ideal(implicit),
        });
        out
    }

    pub fn conic(conic: &ConicSpec, method: Method, fields: &[FieldDescriptor], distinct: bool) -> Self {
        let mut out = Report::new("conic-fields", "success");
        out.conic = Some(ConicReport {
            a: conic.a.to_string(),
            b: conic.b.to_string(),
            c: conic.c.to_string(),
            method: method.to_string(),
            slopes: fields.iter().map(|f| f.n.to_string()).collect(),
            radicands: fields.iter().map(|f| render_rational(&f.radicand)).collect(),
            canonical: fields.iter().map(|f| f.canonical.to_string()).collect(),
            pairwise_distinct: distinct,
        });
        out
    }

    pub fn error(command: &str, err: &Error) -> Self {
        let mut out = Report::new(command, "error");
        out.error = Some(ErrorReport {
            code: err.code().to_string(),
            message: err.to_string(),
        });
        out
    }

    /// One-paragraph human summary.
    pub fn summary(&self) -> String {
        let mut lines = vec![format!("{}: {}", self.command, self.status)];
        let mut push = |label: &str, value: &Option<String>| {
            if let Some(v) = value {
                lines.push(format!("  {label}: {v}"));
            }
        };
        push("minpoly", &self.minpoly);
        push("r", &self.r.map(|r| r.to_string()));
        push("gamma", &self.gamma_in_alpha);
        push("gamma minpoly", &self.gamma_minpoly);
        push("shift", &self.shift);
        push("dimension", &self.witness_dimension.map(|d| d.to_string()));
        if let Some(e) = &self.error {
            lines.push(format!("  error [{}]: {}", e.code, e.message));
        }
        let mut list = |label: &str, items: &Option<Vec<String>>| {
            if let Some(items) = items {
                lines.push(format!("  {label}:"));
                lines.extend(items.iter().map(|i| format!("    {i}")));
            }
        };
        list("witness ideal", &self.witness_ideal);
        list("points at infinity", &self.infinity_points);
        list("reparametrization", &self.reparametrization);
        if let Some(c) = &self.conic {
            for ((n, r), d) in c.slopes.iter().zip(&c.radicands).zip(&c.canonical) {
                lines.push(format!("  n = {n}: Q(sqrt({r})) = Q(sqrt({d}))"));
            }
            lines.push(format!("  pairwise distinct: {}", c.pairwise_distinct));
        }
        if let Some(h) = &self.hypercircle {
            lines.push(format!("  unit: {}", h.unit));
            lines.extend(h.components.iter().enumerate().map(|(i, c)| format!("    psi{i} = {c}")));
        }
        lines.join("\n")
    }
}
