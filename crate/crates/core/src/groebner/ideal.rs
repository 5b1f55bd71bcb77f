use crate::error::Result;
use crate::exec::Settings;
use crate::field::Field;
use crate::groebner::{GroebnerBasis, MonomialOrder};
use crate::linalg;
use crate::poly::{Monomial, MultiPoly};

/// A polynomial ideal given by generators in a fixed number of variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal<F: Field> {
    field: F,
    nvars: usize,
    gens: Vec<MultiPoly<F>>,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(field: &F, nvars: usize, gens: Vec<MultiPoly<F>>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect::<Vec<_>>();
        debug_assert!(gens.iter().all(|g| g.nvars() == nvars));
        Ideal {
            field: field.clone(),
            nvars,
            gens,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[MultiPoly<F>] {
        &self.gens
    }

    pub fn groebner(&self, order: MonomialOrder, settings: &Settings) -> Result<GroebnerBasis<F>> {
        GroebnerBasis::compute(&self.field, self.nvars, &self.gens, order, settings)
    }

    /// `I ∩ F[t_k, ..., t_{n-1}]`, as an ideal in the remaining `n - k`
    /// variables.
    pub fn eliminate(&self, k: usize, settings: &Settings) -> Result<Ideal<F>> {
        assert!(k < self.nvars || (k == 0 && self.nvars == 0));
        let gb = self.groebner(MonomialOrder::Block(k), settings)?;
        let keep: Vec<usize> = (k..self.nvars).collect();
        let gens = gb.polys().iter().filter_map(|g| g.restrict_vars(&keep)).collect();
        Ok(Ideal::new(&self.field, self.nvars - k, gens))
    }

    /// The saturation `I : f^∞`, computed as `(I + (1 - z f)) ∩ F[t]`.
    pub fn saturate(&self, f: &MultiPoly<F>, settings: &Settings) -> Result<Ideal<F>> {
        let n = self.nvars;
        let positions: Vec<usize> = (1..=n).collect();
        let mut gens: Vec<MultiPoly<F>> = self.gens.iter().map(|g| g.remap_vars(n + 1, &positions)).collect();
        let z = MultiPoly::var(&self.field, n + 1, 0);
        let zf = z.mul(&f.remap_vars(n + 1, &positions));
        gens.push(MultiPoly::one(&self.field, n + 1).sub(&zf));
        Ideal::new(&self.field, n + 1, gens).eliminate(1, settings)
    }

    /// Krull dimension of `V(I)` over the algebraic closure; `-1` for the
    /// unit ideal.
    pub fn dimension(&self, settings: &Settings) -> Result<i64> {
        let gb = self.groebner(MonomialOrder::GrevLex, settings)?;
        Ok(dimension_of(&gb))
    }

    pub fn ideal_equal(&self, other: &Ideal<F>, settings: &Settings) -> Result<bool> {
        let a = self.groebner(MonomialOrder::GrevLex, settings)?;
        let b = other.groebner(MonomialOrder::GrevLex, settings)?;
        Ok(other.gens.iter().all(|g| a.contains(g)) && self.gens.iter().all(|g| b.contains(g)))
    }

    pub fn contains(&self, f: &MultiPoly<F>, settings: &Settings) -> Result<bool> {
        Ok(self.groebner(MonomialOrder::GrevLex, settings)?.contains(f))
    }

    /// A basis, in reduced echelon form, of the polynomials of total degree
    /// at most one lying in the ideal.
    pub fn linear_part(&self, settings: &Settings) -> Result<Vec<MultiPoly<F>>> {
        let gb = self.groebner(MonomialOrder::GrevLex, settings)?;
        Ok(linear_part_of(&gb))
    }
}

/// Dimension from the leading monomials: the largest set of variables
/// containing no leading monomial.
pub fn dimension_of<F: Field>(gb: &GroebnerBasis<F>) -> i64 {
    if gb.is_unit() {
        return -1;
    }
    let n = gb.nvars();
    let lms = gb.leading_monomials();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as i64;
        if size <= best {
            continue;
        }
        let independent = lms.iter().all(|m| {
            m.exps()
                .iter()
                .enumerate()
                .any(|(i, &e)| e > 0 && mask & (1 << i) == 0)
        });
        if independent {
            best = size;
        }
    }
    best
}

/// Linear forms `c + sum c_i t_i` in the ideal of `gb`, ordered with the
/// constant coordinate last so that pivots fall on variables first.
pub fn linear_part_of<F: Field>(gb: &GroebnerBasis<F>) -> Vec<MultiPoly<F>> {
    let f = gb.field();
    let n = gb.nvars();
    // columns: t_0 .. t_{n-1}, 1
    let cols: Vec<MultiPoly<F>> = (0..n)
        .map(|i| MultiPoly::var(f, n, i))
        .chain(std::iter::once(MultiPoly::one(f, n)))
        .map(|p| gb.normal_form(&p))
        .collect();
    let mut monos: Vec<Monomial> = cols.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<F::Elem>> = monos
        .iter()
        .map(|m| cols.iter().map(|p| p.coeff(m)).collect())
        .collect();
    let kernel = linalg::nullspace(f, &rows, n + 1);
    // echelon form of the kernel vectors
    let mut kernel = kernel;
    let pivots = linalg::rref(f, &mut kernel);
    kernel
        .into_iter()
        .take(pivots.len())
        .map(|v| {
            let mut p = MultiPoly::constant(f, n, v[n].clone());
            for (i, c) in v.iter().take(n).enumerate() {
                p.add_term(Monomial::var(n, i), c.clone());
            }
            p
        })
        .collect()
}
