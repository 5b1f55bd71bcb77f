//! Infinitely many pairwise distinct quadratic fields of parametrization for
//! conics `a x^2 + b y^2 + c = 0`.
//!
//! The line `y = n x` meets the conic where `x^2 = -c / (a + b n^2)`, so each
//! slope `n` gives a parametrization over `Q(sqrt(-c / (a + b n^2)))`. Two
//! slopes give the same field exactly when the ratio of their `a + b n^2`
//! values is a rational square. The generators below pick slopes whose
//! values differ by a nonsquare modulo a growing set of primes.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{
    crt_class, int, is_prime, is_quadratic_residue, mod_inverse, modulo, rational_is_square,
    squarefree_part, Integer, Rational,
};
use crate::error::{Error, Result};
use crate::exec::{self, Settings};

/// The conic `a x^2 + b y^2 + c` with `a b c != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicSpec {
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
}

impl ConicSpec {
    pub fn new(a: Integer, b: Integer, c: Integer) -> Result<Self> {
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Err(Error::InvalidArgument("conic coefficients must be nonzero".into()));
        }
        Ok(ConicSpec { a, b, c })
    }

    /// `a + b n^2`.
    pub fn slope_value(&self, n: &Integer) -> Integer {
        &self.a + &self.b * n * n
    }
}

/// The field `Q(sqrt(radicand))` reached through the slope `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub n: Integer,
    pub radicand: Rational,
    /// Squarefree integer `d` with `Q(sqrt(radicand)) = Q(sqrt(d))`.
    pub canonical: Integer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Prime,
    Crt,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Prime => "prime",
            Method::Crt => "crt",
        })
    }
}

/// Smallest `n >= 1` such that `1 + e n^2` is not a square modulo `p`.
pub fn nonsquare_witness(e: &Integer, p: &Integer) -> Result<Integer> {
    if !is_prime(p) || modulo(p, &int(4)) != Integer::one() {
        return Err(Error::InvalidArgument(format!("{p} is not a prime congruent to 1 mod 4")));
    }
    if modulo(e, p).is_zero() {
        return Err(Error::InvalidArgument(format!("{e} is divisible by {p}")));
    }
    let mut n = Integer::one();
    while &n < p {
        let v = modulo(&(Integer::one() + e * &n * &n), p);
        if !v.is_zero() && !is_quadratic_residue(&v, p)? {
            return Ok(n);
        }
        n += 1u32;
    }
    Err(Error::SearchCap(format!("no nonsquare of the form 1 + {e} n^2 modulo {p}")))
}

fn admissible(a: &Integer, b: &Integer, p: &Integer) -> bool {
    !modulo(a, p).is_zero() && !modulo(b, p).is_zero() && !(a + b * p * p).is_zero()
}

/// `b (a + b n^2)^-1 mod p`.
fn ratio_class(a: &Integer, b: &Integer, n: &Integer, p: &Integer) -> Result<Integer> {
    let inv = mod_inverse(&(a + b * n * n), p)
        .ok_or_else(|| Error::Inconsistent(format!("a + b n^2 divisible by {p} for n = {n}")))?;
    Ok(modulo(&(b * inv), p))
}

/// Smallest prime `p > 1` with `p = x mod m`, `p` not dividing `a b` and
/// `a + b p^2 != 0`.
fn smallest_prime_in_class(
    x: &Integer,
    m: &Integer,
    a: &Integer,
    b: &Integer,
    settings: &Settings,
) -> Result<Integer> {
    let mut p = x.clone();
    for _ in 0..settings.prime_search_cap {
        if p > Integer::one() && is_prime(&p) && admissible(a, b, &p) {
            return Ok(p);
        }
        p += m;
    }
    Err(Error::SearchCap(format!(
        "no admissible prime = {x} mod {m} within {} candidates",
        settings.prime_search_cap
    )))
}

/// The first `k` primes of the set built by successive congruence classes:
/// `p_1` is the smallest admissible prime `= 1 mod 4`, and `p_(i+1)` the
/// smallest admissible prime with `p = 1 mod 4` and `p = w_j mod p_j` for
/// `j <= i`, where `w_j` is the nonsquare witness for `b (a + b p_j^2)^-1`.
pub fn prime_set(a: &Integer, b: &Integer, k: usize, settings: &Settings) -> Result<Vec<Integer>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument("a and b must be nonzero".into()));
    }
    let mut out: Vec<Integer> = Vec::with_capacity(k);
    let mut congruences = vec![(Integer::one(), int(4))];
    while out.len() < k {
        let (x, m) = crt_class(&congruences)?;
        let p = smallest_prime_in_class(&x, &m, a, b, settings)?;
        let e = ratio_class(a, b, &p, &p)?;
        congruences.push((nonsquare_witness(&e, &p)?, p.clone()));
        out.push(p);
    }
    Ok(out)
}

/// The `i`-th prime `= 1 mod 4` (1-based) not dividing `a b` with
/// `a + b m^2 != 0`.
fn moduli(a: &Integer, b: &Integer, k: usize) -> Vec<Integer> {
    let mut out = Vec::with_capacity(k);
    let mut p = int(5);
    while out.len() < k {
        if is_prime(&p) && admissible(a, b, &p) {
            out.push(p.clone());
        }
        p += 4u32;
    }
    out
}

/// The first `k` integers of the set built by the Chinese remainder theorem:
/// `n_1 = m_1` and `n_(i+1)` the smallest nonnegative `n` with `n = q_j mod
/// m_j` for `j <= i` and `n = 0 mod m_(i+1)`, where `m_i` is the `i`-th
/// admissible prime `= 1 mod 4` and `q_j` the nonsquare witness for
/// `b (a + b n_j^2)^-1 mod m_j`.
pub fn crt_set(a: &Integer, b: &Integer, k: usize) -> Result<Vec<Integer>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument("a and b must be nonzero".into()));
    }
    let ms = moduli(a, b, k);
    let mut out: Vec<Integer> = Vec::with_capacity(k);
    let mut congruences: Vec<(Integer, Integer)> = Vec::with_capacity(k);
    for (i, m) in ms.iter().enumerate() {
        let n = if i == 0 {
            m.clone()
        } else {
            let mut system = congruences.clone();
            system.push((Integer::zero(), m.clone()));
            crt_class(&system)?.0
        };
        let e = ratio_class(a, b, &n, m)?;
        congruences.push((nonsquare_witness(&e, m)?, m.clone()));
        out.push(n);
    }
    Ok(out)
}

/// `Q(sqrt(-c / (a + b n^2)))` for each slope.
pub fn parametrization_fields(conic: &ConicSpec, slopes: &[Integer]) -> Result<Vec<FieldDescriptor>> {
    slopes
        .iter()
        .map(|n| {
            let v = conic.slope_value(n);
            if v.is_zero() {
                return Err(Error::InvalidArgument(format!("a + b n^2 vanishes for n = {n}")));
            }
            let radicand = Rational::new(-&conic.c, v);
            let canonical = squarefree_part(&radicand)?;
            Ok(FieldDescriptor {
                n: n.clone(),
                radicand,
                canonical,
            })
        })
        .collect()
}

/// True when no two slopes give the same field, i.e. no ratio
/// `(a + b p^2) / (a + b q^2)` is a rational square.
pub fn verify_pairwise_distinct(a: &Integer, b: &Integer, slopes: &[Integer], settings: &Settings) -> bool {
    let values: Vec<Integer> = slopes.iter().map(|n| a + b * n * n).collect();
    if values.iter().any(Zero::is_zero) {
        return false;
    }
    let idx: Vec<usize> = (0..values.len()).collect();
    exec::map(settings.exec, &idx, |&i| {
        values[i + 1..]
            .iter()
            .all(|w| !rational_is_square(&Rational::new(values[i].clone(), w.clone())))
    })
    .into_iter()
    .all(|ok| ok)
}

/// Generates `count` slopes with the chosen method and their fields.
pub fn conic_fields(
    conic: &ConicSpec,
    method: Method,
    count: usize,
    settings: &Settings,
) -> Result<Vec<FieldDescriptor>> {
    let slopes = match method {
        Method::Prime => prime_set(&conic.a, &conic.b, count, settings)?,
        Method::Crt => crt_set(&conic.a, &conic.b, count)?,
    };
    parametrization_fields(conic, &slopes)
}

/// Renders a rational as `p/q` with `q > 0`, or `p` when integral.
pub fn render_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom().abs())
    }
}
