use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exec::{self, Settings};
use crate::field::Field;
use crate::groebner::MonomialOrder;
use crate::poly::{Monomial, MultiPoly};

/// Terms sorted in strictly decreasing monomial order.
type Terms<F> = Vec<(Monomial, <F as Field>::Elem)>;

pub(crate) fn sorted_terms<F: Field>(p: &MultiPoly<F>, order: MonomialOrder) -> Terms<F> {
    let mut t: Terms<F> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

fn to_poly<F: Field>(field: &F, nvars: usize, t: Terms<F>) -> MultiPoly<F> {
    MultiPoly::from_terms(field, nvars, t)
}

fn make_monic<F: Field>(field: &F, t: &mut Terms<F>) {
    if let Some((_, lc)) = t.first() {
        if !field.is_one(lc) {
            let inv = field.inv(lc).expect("nonzero leading coefficient");
            for (_, c) in t.iter_mut() {
                *c = field.mul(c, &inv);
            }
        }
    }
}

/// `p - c * mono * g`, where `g` is monic and `mono * lm(g) = lm(p)`.
/// Both inputs are sorted; the leading terms cancel.
fn sub_multiple<F: Field>(
    field: &F,
    order: MonomialOrder,
    p: &[(Monomial, F::Elem)],
    c: &F::Elem,
    mono: &Monomial,
    g: &[(Monomial, F::Elem)],
) -> Terms<F> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (1, 1);
    while i < p.len() || j < g.len() {
        if j == g.len() {
            out.push(p[i].clone());
            i += 1;
            continue;
        }
        let gm = g[j].0.mul(mono);
        let ord = if i == p.len() {
            Ordering::Less
        } else {
            order.cmp(&p[i].0, &gm)
        };
        match ord {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, field.neg(&field.mul(c, &g[j].1))));
                j += 1;
            }
            Ordering::Equal => {
                let v = field.sub(&p[i].1, &field.mul(c, &g[j].1));
                if !field.is_zero(&v) {
                    out.push((gm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Full reduction of `f` modulo monic sorted `basis`.
fn reduce<F: Field>(field: &F, order: MonomialOrder, mut f: Terms<F>, basis: &[&Terms<F>]) -> Terms<F> {
    let mut rem: Terms<F> = Vec::new();
    while !f.is_empty() {
        let lead = &f[0].0;
        match basis.iter().find(|g| g[0].0.divides(lead)) {
            Some(g) => {
                let mono = lead.div(&g[0].0);
                let c = f[0].1.clone();
                f = sub_multiple(field, order, &f, &c, &mono, g);
            }
            None => {
                // everything after the head stays sorted; move head to remainder
                let head = f.remove(0);
                rem.push(head);
            }
        }
    }
    rem
}

fn s_poly<F: Field>(field: &F, order: MonomialOrder, f: &Terms<F>, g: &Terms<F>) -> Terms<F> {
    let l = f[0].0.lcm(&g[0].0);
    let mf = l.div(&f[0].0);
    let mg = l.div(&g[0].0);
    // mf*f - mg*g with both monic: build mf*f then subtract
    let scaled: Terms<F> = f.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    sub_multiple(field, order, &scaled, &field.one(), &mg, g)
}

/// A reduced Gröbner basis: monic, sorted by decreasing leading monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    field: F,
    nvars: usize,
    order: MonomialOrder,
    polys: Vec<MultiPoly<F>>,
    sorted: Vec<Terms<F>>,
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn polys(&self) -> &[MultiPoly<F>] {
        &self.polys
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_unit(&self) -> bool {
        self.sorted.len() == 1 && self.sorted[0][0].0.is_one()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|t| t[0].0.clone()).collect()
    }

    pub fn leading_term(&self, f: &MultiPoly<F>) -> Option<(Monomial, F::Elem)> {
        sorted_terms(f, self.order).into_iter().next()
    }

    /// Remainder of `f` on division by the basis; zero iff `f` is in the ideal.
    pub fn normal_form(&self, f: &MultiPoly<F>) -> MultiPoly<F> {
        let refs: Vec<&Terms<F>> = self.sorted.iter().collect();
        let r = reduce(&self.field, self.order, sorted_terms(f, self.order), &refs);
        to_poly(&self.field, self.nvars, r)
    }

    pub fn contains(&self, f: &MultiPoly<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// S-polynomial of basis elements `i` and `j`.
    pub fn s_polynomial(&self, i: usize, j: usize) -> MultiPoly<F> {
        let s = s_poly(&self.field, self.order, &self.sorted[i], &self.sorted[j]);
        to_poly(&self.field, self.nvars, s)
    }

    /// Buchberger's criterion, checked on every pair.
    pub fn is_groebner(&self) -> bool {
        (0..self.sorted.len())
            .all(|i| (i + 1..self.sorted.len()).all(|j| self.normal_form(&self.s_polynomial(i, j)).is_zero()))
    }

    /// Buchberger's algorithm with the normal selection strategy and the
    /// Gebauer–Möller criteria. Pairs of equal minimal lcm degree form a
    /// batch whose S-polynomials are reduced concurrently against the current
    /// basis and then re-reduced in order, so the result never depends on
    /// the execution mode.
    pub fn compute(
        field: &F,
        nvars: usize,
        gens: &[MultiPoly<F>],
        order: MonomialOrder,
        settings: &Settings,
    ) -> Result<Self> {
        let mut polys: Vec<Terms<F>> = Vec::new();
        let mut active: Vec<bool> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        let mut treated = 0usize;

        for g in gens {
            if g.nvars() != nvars {
                return Err(Error::InvalidArgument("generator arity mismatch".into()));
            }
            let refs: Vec<&Terms<F>> = active_refs(&polys, &active);
            let mut t = reduce(field, order, sorted_terms(g, order), &refs);
            if t.is_empty() {
                continue;
            }
            make_monic(field, &mut t);
            insert::<F>(&mut polys, &mut active, &mut pairs, t);
        }

        while !pairs.is_empty() {
            let lcm_deg = |p: &Pair| polys[p.i][0].0.lcm(&polys[p.j][0].0).degree();
            let dmin = pairs.iter().map(lcm_deg).min().unwrap();
            let (mut batch, rest): (Vec<Pair>, Vec<Pair>) = pairs.into_iter().partition(|p| lcm_deg(p) == dmin);
            pairs = rest;
            batch.sort_by(|a, b| {
                let la = polys[a.i][0].0.lcm(&polys[a.j][0].0);
                let lb = polys[b.i][0].0.lcm(&polys[b.j][0].0);
                order.cmp(&la, &lb).then(a.i.cmp(&b.i)).then(a.j.cmp(&b.j))
            });
            treated += batch.len();
            if treated > settings.pair_budget {
                return Err(Error::GroebnerBudget {
                    limit: settings.pair_budget,
                });
            }
            let reduced: Vec<Terms<F>> = {
                let refs: Vec<&Terms<F>> = active_refs(&polys, &active);
                let snapshot = &polys;
                exec::map(settings.exec, &batch, |p| {
                    let s = s_poly(field, order, &snapshot[p.i], &snapshot[p.j]);
                    reduce(field, order, s, &refs)
                })
            };
            for r in reduced {
                if r.is_empty() {
                    continue;
                }
                let refs: Vec<&Terms<F>> = active_refs(&polys, &active);
                let mut t = reduce(field, order, r, &refs);
                if t.is_empty() {
                    continue;
                }
                make_monic(field, &mut t);
                insert::<F>(&mut polys, &mut active, &mut pairs, t);
            }
        }

        // the active set is minimal; interreduce for the unique reduced basis
        let minimal: Vec<Terms<F>> = polys
            .iter()
            .zip(&active)
            .filter(|(_, a)| **a)
            .map(|(t, _)| t.clone())
            .collect();
        let mut sorted: Vec<Terms<F>> = exec::map(settings.exec, &(0..minimal.len()).collect::<Vec<_>>(), |&k| {
            let others: Vec<&Terms<F>> = minimal
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, t)| t)
                .collect();
            let head = minimal[k][0].clone();
            let tail = reduce(field, order, minimal[k][1..].to_vec(), &others);
            let mut t = vec![head];
            t.extend(tail);
            t
        });
        sorted.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
        let polys = sorted.iter().map(|t| to_poly(field, nvars, t.clone())).collect();
        Ok(GroebnerBasis {
            field: field.clone(),
            nvars,
            order,
            polys,
            sorted,
        })
    }
}


impl<F: Field> GroebnerBasis<F> {
    /// Whether the ideal has finitely many zeros: some leading monomial is a
    /// pure power of each variable.
    pub fn is_zero_dimensional(&self) -> bool {
        let lms = self.leading_monomials();
        (0..self.nvars).all(|k| lms.iter().any(|m| m.exps()[k] > 0 && m.degree() == m.exps()[k]))
    }

    /// Change of order for zero-dimensional ideals by linear algebra in the
    /// quotient ring (FGLM): monomials are visited in increasing target
    /// order and every linear dependency among their normal forms yields a
    /// basis element.
    pub fn convert(&self, target: MonomialOrder) -> Result<GroebnerBasis<F>> {
        if target == self.order {
            return Ok(self.clone());
        }
        if !self.is_zero_dimensional() {
            return Err(Error::NotZeroDimensional);
        }
        let f = &self.field;
        let n = self.nvars;
        if self.is_unit() {
            return Ok(Self::from_sorted(f, n, target, vec![vec![(Monomial::one(n), f.one())]]));
        }
        struct Row<E> {
            pivot: usize,
            vec: Vec<E>,
            comb: Vec<E>,
        }
        let refs: Vec<&Terms<F>> = self.sorted.iter().collect();
        let mut columns: std::collections::BTreeMap<Monomial, usize> = std::collections::BTreeMap::new();
        let mut staircase: Vec<Monomial> = Vec::new();
        let mut normal_forms: Vec<Terms<F>> = Vec::new();
        let mut rows: Vec<Row<F::Elem>> = Vec::new();
        let mut found: Vec<Terms<F>> = Vec::new();
        let mut candidates: Vec<(Monomial, Option<(usize, usize)>)> = vec![(Monomial::one(n), None)];
        while !candidates.is_empty() {
            // smallest candidate in the target order
            let idx = (0..candidates.len())
                .min_by(|&a, &b| target.cmp(&candidates[a].0, &candidates[b].0))
                .unwrap();
            let (m, origin) = candidates.swap_remove(idx);
            if found.iter().any(|g| g[0].0.divides(&m)) || staircase.contains(&m) {
                continue;
            }
            let nf = match origin {
                None => reduce(f, self.order, vec![(m.clone(), f.one())], &refs),
                Some((b, var)) => {
                    let x = Monomial::var(n, var);
                    let mut shifted: Terms<F> =
                        normal_forms[b].iter().map(|(mm, c)| (mm.mul(&x), c.clone())).collect();
                    shifted.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
                    reduce(f, self.order, shifted, &refs)
                }
            };
            for (mm, _) in &nf {
                let next = columns.len();
                columns.entry(mm.clone()).or_insert(next);
            }
            let width = columns.len();
            let mut vec = vec![f.zero(); width];
            for (mm, c) in &nf {
                vec[columns[mm]] = c.clone();
            }
            let k = staircase.len();
            let mut comb = vec![f.zero(); k + 1];
            comb[k] = f.one();
            for row in &rows {
                let c = vec.get(row.pivot).cloned().unwrap_or_else(|| f.zero());
                if f.is_zero(&c) {
                    continue;
                }
                for (i, x) in row.vec.iter().enumerate() {
                    vec[i] = f.sub(&vec[i], &f.mul(&c, x));
                }
                for (i, x) in row.comb.iter().enumerate() {
                    comb[i] = f.sub(&comb[i], &f.mul(&c, x));
                }
            }
            match vec.iter().position(|c| !f.is_zero(c)) {
                None => {
                    // m + sum comb_b * b lies in the ideal
                    let mut t: Terms<F> = vec![(m.clone(), f.one())];
                    for (b, c) in staircase.iter().zip(&comb) {
                        if !f.is_zero(c) {
                            t.push((b.clone(), c.clone()));
                        }
                    }
                    t[1..].sort_by(|a, b| target.cmp(&b.0, &a.0));
                    found.push(t);
                }
                Some(p) => {
                    let inv = f.inv(&vec[p])?;
                    let vec: Vec<F::Elem> = vec.iter().map(|x| f.mul(x, &inv)).collect();
                    let comb: Vec<F::Elem> = comb.iter().map(|x| f.mul(x, &inv)).collect();
                    rows.push(Row { pivot: p, vec, comb });
                    let b = staircase.len();
                    staircase.push(m.clone());
                    normal_forms.push(nf);
                    for var in 0..n {
                        candidates.push((m.mul(&Monomial::var(n, var)), Some((b, var))));
                    }
                }
            }
        }
        // rows hold combinations of shorter length; pad is implicit
        found.sort_by(|a, b| target.cmp(&b[0].0, &a[0].0));
        Ok(Self::from_sorted(f, n, target, found))
    }

    fn from_sorted(field: &F, nvars: usize, order: MonomialOrder, sorted: Vec<Terms<F>>) -> Self {
        let polys = sorted.iter().map(|t| to_poly(field, nvars, t.clone())).collect();
        GroebnerBasis {
            field: field.clone(),
            nvars,
            order,
            polys,
            sorted,
        }
    }
}

fn active_refs<'a, T>(polys: &'a [T], active: &[bool]) -> Vec<&'a T> {
    polys.iter().zip(active).filter(|(_, a)| **a).map(|(p, _)| p).collect()
}

/// Gebauer–Möller update for a new basis element.
fn insert<F: Field>(polys: &mut Vec<Terms<F>>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: Terms<F>) {
    let k = polys.len();
    let lh = h[0].0.clone();
    polys.push(h);
    active.push(true);
    let lm = |i: usize| &polys[i][0].0;

    let cands: Vec<usize> = (0..k).filter(|&i| active[i]).collect();
    let lcms: Vec<Monomial> = cands.iter().map(|&i| lm(i).lcm(&lh)).collect();
    // chain criterion among the new pairs
    let mut keep = Vec::new();
    for (a, &i) in cands.iter().enumerate() {
        let coprime = lm(i).coprime(&lh);
        let dominated = cands.iter().enumerate().any(|(b, _)| {
            b != a && lcms[b].divides(&lcms[a]) && (lcms[b] != lcms[a] || b < a)
        });
        if coprime || !dominated {
            keep.push((i, coprime));
        }
    }
    // old pairs made redundant by the new element
    pairs.retain(|p| {
        let l = lm(p.i).lcm(lm(p.j));
        !(lh.divides(&l) && lm(p.i).lcm(&lh) != l && lm(p.j).lcm(&lh) != l)
    });
    // product criterion
    for (i, coprime) in keep {
        if !coprime {
            pairs.push(Pair { i, j: k });
        }
    }
    for i in 0..k {
        if active[i] && lh.divides(lm(i)) {
            active[i] = false;
        }
    }
}
