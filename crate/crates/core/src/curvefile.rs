//! Curve input files.
//!
//! A curve file is flat `key = value` text (a TOML subset):
//!
//! ```text
//! minpoly = "x^2 + 1"
//! x1 = "(t - a)^2"
//! x2 = "(t - a)^3"
//! budget = 50000
//! ```
//!
//! `minpoly` is the monic irreducible polynomial of `a` in `x`; components
//! `x1, x2, ...` are rational functions in `t` and `a`. Optional integer
//! keys `budget` (S-pair budget) and `primitive_cap` override settings.

use std::collections::BTreeMap;

use toml::Spanned;

use crate::descent::Parametrization;
use crate::error::{Error, Result};
use crate::exec::Settings;
use crate::field::{make_extension, NumberField, Rationals};
use crate::parse::{parse_at, Pos};

/// A string value together with the position of its first character.
#[derive(Clone, Debug, PartialEq)]
pub struct Located {
    pub text: String,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveFile {
    pub minpoly: Located,
    /// Components in order `x1, x2, ...`.
    pub components: Vec<Located>,
    pub budget: Option<usize>,
    pub primitive_cap: Option<usize>,
}

/// A parsed and validated curve.
#[derive(Clone, Debug)]
pub struct Curve {
    pub field: NumberField<Rationals>,
    pub phi: Parametrization<NumberField<Rationals>>,
}

fn position(src: &str, offset: usize) -> Pos {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Pos { line, column }
}

fn input_at(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

impl CurveFile {
    pub fn parse(src: &str) -> Result<Self> {
        let table: BTreeMap<String, Spanned<toml::Value>> = toml::from_str(src).map_err(|e| {
            let pos = e.span().map_or(Pos { line: 1, column: 1 }, |s| position(src, s.start));
            input_at(pos, e.message().to_string())
        })?;
        let mut minpoly = None;
        let mut comps: BTreeMap<usize, Located> = BTreeMap::new();
        let mut budget = None;
        let mut primitive_cap = None;
        for (key, value) in &table {
            let pos = position(src, value.span().start);
            let string = || match value.get_ref() {
                toml::Value::String(s) => Ok(Located {
                    text: s.clone(),
                    pos: Pos {
                        line: pos.line,
                        column: pos.column + 1,
                    },
                }),
                _ => Err(input_at(pos, format!("`{key}` must be a quoted expression"))),
            };
            let count = || match value.get_ref() {
                toml::Value::Integer(v) if *v >= 0 => Ok(*v as usize),
                _ => Err(input_at(pos, format!("`{key}` must be a nonnegative integer"))),
            };
            match key.as_str() {
                "minpoly" => minpoly = Some(string()?),
                "budget" => budget = Some(count()?),
                "primitive_cap" => primitive_cap = Some(count()?),
                k => {
                    let index = k
                        .strip_prefix('x')
                        .and_then(|d| d.parse::<usize>().ok())
                        .filter(|&i| i >= 1)
                        .ok_or_else(|| Error::Input(format!("unknown key `{k}`")))?;
                    comps.insert(index, string()?);
                }
            }
        }
        let minpoly = minpoly.ok_or_else(|| Error::Input("missing `minpoly`".into()))?;
        if comps.is_empty() {
            return Err(Error::Input("no components `x1`, `x2`, ...".into()));
        }
        if let Some((gap, _)) = comps.keys().enumerate().find(|(i, k)| **k != i + 1) {
            return Err(Error::Input(format!("component `x{}` is missing", gap + 1)));
        }
        Ok(CurveFile {
            minpoly,
            components: comps.into_values().collect(),
            budget,
            primitive_cap,
        })
    }

    /// Settings with the file's overrides applied.
    pub fn settings(&self, base: &Settings) -> Settings {
        let mut s = base.clone();
        if let Some(b) = self.budget {
            s.pair_budget = b;
        }
        if let Some(c) = self.primitive_cap {
            s.primitive_search_cap = c;
        }
        s
    }

    /// Builds the field `Q(a)` and the parametrization.
    pub fn load(&self, settings: &Settings) -> Result<Curve> {
        let m = parse_at(&self.minpoly.text, self.minpoly.pos)?.to_poly(&Rationals, &["x"])?;
        let m = m.to_unipoly(0).expect("single variable");
        let field = make_extension(&Rationals, &m, "a", settings)?;
        let a = field.generator();
        let comps = self
            .components
            .iter()
            .map(|c| parse_at(&c.text, c.pos)?.to_ratfun(&field, "t", &[("a", a.clone())]))
            .collect::<Result<Vec<_>>>()?;
        let phi = Parametrization::new(comps)?;
        Ok(Curve { field, phi })
    }
}

/// Renders a curve back to file form, components in ascending powers.
pub fn render_curve(curve: &Curve) -> String {
    let f = &curve.field;
    let mut out = format!("minpoly = \"{}\"\n", f.modulus().render("x"));
    for (i, c) in curve.phi.components.iter().enumerate() {
        out.push_str(&format!("x{} = \"{}\"\n", i + 1, c.render("t")));
    }
    out
}
