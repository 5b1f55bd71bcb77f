use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{mod_inverse, modulo, Integer, Rational};
use crate::error::{Error, Result};
use crate::exec::Settings;
use crate::field::{Field, Rationals};
use crate::groebner::{GroebnerBasis, MonomialOrder};
use crate::poly::{Monomial, MultiPoly, UniPoly};

/// Distinct rational roots in increasing order.
///
/// The polynomial is made squarefree, integral and monic (`y = lc * x`);
/// every integer root of the monic form is then found by lifting the simple
/// roots modulo a small prime `p` to a power of `p` exceeding twice the
/// Cauchy bound and checking the symmetric representatives exactly.
pub fn rational_roots(f: &UniPoly<Rationals>) -> Vec<Rational> {
    assert!(!f.is_zero(), "rational_roots of the zero polynomial");
    if f.is_constant() {
        return Vec::new();
    }
    let f = f.squarefree().expect("nonzero polynomial");
    let mut roots = Vec::new();
    let mut coeffs: Vec<Rational> = f.coeffs().to_vec();
    if coeffs[0].is_zero() {
        roots.push(Rational::zero());
        coeffs.remove(0);
    }
    if coeffs.len() > 1 {
        let den_lcm = coeffs.iter().fold(Integer::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<Integer> = coeffs.iter().map(|c| (c * &den_lcm).to_integer()).collect();
        let n = ints.len() - 1;
        let lc = ints[n].clone();
        // Q(y) = lc^(n-1) P(y / lc), monic with integer coefficients
        let mut q = Vec::with_capacity(n + 1);
        for (i, a) in ints.iter().enumerate() {
            if i == n {
                q.push(Integer::one());
            } else {
                q.push(a * num_traits::pow(lc.clone(), n - 1 - i));
            }
        }
        for y in monic_integer_roots(&q) {
            roots.push(Rational::new(y, lc.clone()));
        }
    }
    roots.sort();
    roots
}

fn eval_int(q: &[Integer], x: &Integer) -> Integer {
    q.iter().rev().fold(Integer::zero(), |acc, c| acc * x + c)
}

fn eval_mod(q: &[Integer], x: &Integer, m: &Integer) -> Integer {
    q.iter().rev().fold(Integer::zero(), |acc, c| modulo(&(acc * x + c), m))
}

fn small_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Integer roots of a monic, squarefree integer polynomial with nonzero
/// constant term.
fn monic_integer_roots(q: &[Integer]) -> Vec<Integer> {
    let dq: Vec<Integer> = q
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Integer::from(i))
        .collect();
    let bound = q.iter().map(|c| c.abs()).max().unwrap() + 1u32;
    let mut p = 2u64;
    loop {
        p += 1;
        if !small_prime(p) {
            continue;
        }
        let pm = Integer::from(p);
        let residues: Vec<Integer> = (0..p)
            .map(Integer::from)
            .filter(|r| eval_mod(q, r, &pm).is_zero())
            .collect();
        if residues.iter().any(|r| eval_mod(&dq, r, &pm).is_zero()) {
            continue;
        }
        let mut out = Vec::new();
        for r0 in residues {
            let mut r = r0;
            let mut m = pm.clone();
            while m <= &bound * 2u32 {
                m = &m * &m;
                let d = eval_mod(&dq, &r, &m);
                let inv = mod_inverse(&d, &m).expect("derivative is a unit");
                r = modulo(&(&r - eval_mod(q, &r, &m) * inv), &m);
            }
            let half: Integer = &m >> 1u32;
            let y = if r > half { r - &m } else { r };
            if y.abs() <= bound && eval_int(q, &y).is_zero() {
                out.push(y);
            }
        }
        return out;
    }
}

/// Back-substitution through a lexicographic Gröbner basis of a
/// zero-dimensional ideal over `L`, extending solutions in a field `T`
/// that contains `L` via `lift`. `roots` must return all roots in `T` of a
/// nonzero univariate polynomial.
pub fn solve_triangular<L: Field, T: Field>(
    gb: &GroebnerBasis<L>,
    target: &T,
    lift: impl Fn(&L::Elem) -> T::Elem,
    roots: impl Fn(&UniPoly<T>) -> Result<Vec<T::Elem>>,
) -> Result<Vec<Vec<T::Elem>>> {
    assert_eq!(gb.order(), MonomialOrder::Lex);
    let n = gb.nvars();
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    let lms = gb.leading_monomials();
    for k in 0..n {
        let pure = lms.iter().any(|m| m.exps()[k] > 0 && m.degree() == m.exps()[k]);
        if !pure {
            return Err(Error::NotZeroDimensional);
        }
    }
    // elements grouped by the smallest variable index they involve
    let mut levels: Vec<Vec<MultiPoly<T>>> = vec![Vec::new(); n];
    for g in gb.polys() {
        let used = g.support();
        let k = used.iter().position(|&u| u).expect("non-constant element");
        levels[k].push(g.map_coeffs(target, &lift));
    }
    // partial solutions for variables k..n, stored as full-length vectors
    let mut partial: Vec<Vec<T::Elem>> = vec![vec![target.zero(); n]];
    for k in (0..n).rev() {
        let mut next = Vec::new();
        for sol in &partial {
            let mut acc: Option<UniPoly<T>> = None;
            for g in &levels[k] {
                let u = specialize(g, k, sol, target);
                if u.is_zero() {
                    continue;
                }
                acc = Some(match acc {
                    None => u.monic(),
                    Some(a) => a.gcd(&u)?,
                });
            }
            let Some(u) = acc else {
                return Err(Error::NotZeroDimensional);
            };
            if u.is_constant() {
                continue;
            }
            for r in roots(&u)? {
                let mut s = sol.clone();
                s[k] = r;
                next.push(s);
            }
        }
        partial = next;
    }
    partial.sort_by(|a, b| cmp_vectors(target, a, b));
    partial.dedup();
    Ok(partial)
}

/// Substitutes the known values of variables `k+1..n` and returns the
/// result as a polynomial in variable `k`.
fn specialize<T: Field>(g: &MultiPoly<T>, k: usize, sol: &[T::Elem], target: &T) -> UniPoly<T> {
    let mut coeffs = vec![target.zero(); g.degree_in(k).unwrap_or(0) as usize + 1];
    for (m, c) in g.terms() {
        let mut v = c.clone();
        for (i, &e) in m.exps().iter().enumerate().skip(k + 1) {
            if e > 0 {
                v = target.mul(&v, &target.pow(&sol[i], e));
            }
        }
        let d = m.exps()[k] as usize;
        coeffs[d] = target.add(&coeffs[d], &v);
    }
    UniPoly::new(target, coeffs)
}

/// Lexicographic comparison of vectors under the canonical element order.
pub fn cmp_vectors<T: Field>(f: &T, a: &[T::Elem], b: &[T::Elem]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = f.cmp_elems(x, y);
        if o.is_ne() {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

/// All rational points of a zero-dimensional system over `Q`.
pub fn rational_solutions(
    eqs: &[MultiPoly<Rationals>],
    nvars: usize,
    settings: &Settings,
) -> Result<Vec<Vec<Rational>>> {
    let gb = GroebnerBasis::compute(&Rationals, nvars, eqs, MonomialOrder::GrevLex, settings)?;
    if nvars == 0 {
        return Ok(if gb.is_unit() { Vec::new() } else { vec![Vec::new()] });
    }
    let lex = gb.convert(MonomialOrder::Lex)?;
    solve_triangular(&lex, &Rationals, |c| c.clone(), |u| Ok(rational_roots(u)))
}

/// All solutions with coordinates in `field` of a zero-dimensional system
/// over `field`, by restriction of scalars to `Q`: each unknown is written
/// in the rational basis and every equation is split into its rational
/// coordinates.
pub fn solve_system_in_field<K: Field>(
    field: &K,
    eqs: &[MultiPoly<K>],
    nvars: usize,
    settings: &Settings,
) -> Result<Vec<Vec<K::Elem>>> {
    let d = field.absolute_degree();
    let basis = field.rational_basis();
    let total = nvars * d;
    let images: Vec<MultiPoly<K>> = (0..nvars)
        .map(|j| {
            let mut p = MultiPoly::zero(field, total);
            for (l, b) in basis.iter().enumerate() {
                p.add_term(Monomial::var(total, j * d + l), b.clone());
            }
            p
        })
        .collect();
    let mut rational_eqs = Vec::new();
    for e in eqs {
        let expanded = e.substitute(&images);
        let mut parts = vec![MultiPoly::zero(&Rationals, total); d];
        for (m, c) in expanded.terms() {
            for (part, q) in parts.iter_mut().zip(field.to_rationals(c)) {
                part.add_term(m.clone(), q);
            }
        }
        rational_eqs.extend(parts.into_iter().filter(|p| !p.is_zero()));
    }
    let sols = rational_solutions(&rational_eqs, total, settings)?;
    let mut out: Vec<Vec<K::Elem>> = sols
        .iter()
        .map(|s| s.chunks(d).map(|c| field.from_rationals(c)).collect())
        .collect();
    out.sort_by(|a, b| cmp_vectors(field, a, b));
    Ok(out)
}

/// All roots of `f` lying in its coefficient field, sorted canonically.
pub fn roots_in_field<K: Field>(f: &UniPoly<K>, settings: &Settings) -> Result<Vec<K::Elem>> {
    let field = f.field();
    if f.is_zero() {
        return Err(Error::InvalidArgument("roots of the zero polynomial".into()));
    }
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let f = f.squarefree()?;
    if f.degree() == Some(1) {
        return Ok(vec![field.neg(&f.coeff(0))]);
    }
    if field.absolute_degree() == 1 {
        let q = f.map_coeffs(&Rationals, |c| field.as_rational(c).unwrap());
        return Ok(rational_roots(&q).iter().map(|r| field.from_rational(r)).collect());
    }
    let eq = MultiPoly::from_unipoly(&f, 1, 0);
    let sols = solve_system_in_field(field, &[eq], 1, settings)?;
    Ok(sols.into_iter().map(|mut s| s.remove(0)).collect())
}

/// `None` if `f` is irreducible over its coefficient field, otherwise a
/// monic proper factor of least degree (for linear factors, the one of the
/// canonically largest root).
///
/// Linear factors come from [`roots_in_field`]; for a factor of degree `d`
/// the remainder of `f` on division by a generic monic `g` of degree `d`
/// gives `d` equations in the `d` unknown coefficients of `g`.
pub fn is_irreducible<K: Field>(f: &UniPoly<K>, settings: &Settings) -> Result<Option<UniPoly<K>>> {
    let field = f.field();
    let n = f.degree().ok_or_else(|| Error::InvalidArgument("zero polynomial".into()))?;
    if n <= 1 {
        return Ok(None);
    }
    if let Some(r) = roots_in_field(f, settings)?.last() {
        return Ok(Some(UniPoly::linear_root(field, r)));
    }
    let f = f.monic();
    for d in 2..=n / 2 {
        // g = x^d + sum u_i x^i; reduce f modulo g with coefficients in Q-poly ring
        let one = MultiPoly::one(field, d);
        let g: Vec<MultiPoly<K>> = (0..d).map(|i| MultiPoly::var(field, d, i)).chain([one]).collect();
        let mut rem: Vec<MultiPoly<K>> = f
            .coeffs()
            .iter()
            .map(|c| MultiPoly::constant(field, d, c.clone()))
            .collect();
        for k in (d..rem.len()).rev() {
            let c = rem[k].clone();
            if c.is_zero() {
                continue;
            }
            for i in 0..d {
                rem[k - d + i] = rem[k - d + i].sub(&c.mul(&g[i]));
            }
            rem[k] = MultiPoly::zero(field, d);
        }
        rem.truncate(d);
        let sols = solve_system_in_field(field, &rem, d, settings)?;
        if let Some(s) = sols.first() {
            let mut coeffs = s.clone();
            coeffs.push(field.one());
            return Ok(Some(UniPoly::new(field, coeffs)));
        }
    }
    Ok(None)
}
