//! Exact integer and rational arithmetic plus the elementary number theory
//! used by the conic generators.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(Integer::from(v))
}

/// Nonnegative representative of `a mod m` (`m > 0`).
pub fn modulo(a: &Integer, m: &Integer) -> Integer {
    a.mod_floor(m)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &Integer, m: &Integer) -> Option<Integer> {
    let ext = modulo(a, m).extended_gcd(m);
    if ext.gcd.is_one() {
        Some(modulo(&ext.x, m))
    } else {
        None
    }
}

pub fn mod_pow(base: &Integer, exp: &Integer, m: &Integer) -> Integer {
    modulo(base, m).modpow(exp, m)
}

/// Combines congruences into the class `(x, M)` with `0 <= x < M`.
pub fn crt_class(congruences: &[(Integer, Integer)]) -> Result<(Integer, Integer)> {
    let mut x = Integer::zero();
    let mut m = Integer::one();
    for (r, mi) in congruences {
        if *mi <= Integer::one() {
            return Err(Error::InvalidArgument(format!("modulus {mi} must exceed 1")));
        }
        let inv = mod_inverse(&m, mi).ok_or(Error::ModuliNotCoprime)?;
        // x + m*k = r (mod mi)
        let k = modulo(&((r - &x) * inv), mi);
        x += &m * k;
        m *= mi;
        x = modulo(&x, &m);
    }
    Ok((x, m))
}

/// Smallest nonnegative solution of the simultaneous congruences.
pub fn crt_solve(congruences: &[(Integer, Integer)]) -> Result<Integer> {
    crt_class(congruences).map(|(x, _)| x)
}

const SMALL_PRIMES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn miller_rabin(n: &BigUint, base: u32) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut x = BigUint::from(base).modpow(&d, n);
    if x == one || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
    }
    false
}

/// Exact primality test.
///
/// Miller–Rabin with the first thirteen prime bases is deterministic below
/// 3.317e24; larger inputs fall back to trial division.
pub fn is_prime(n: &Integer) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    let n = n.magnitude();
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for p in SMALL_PRIMES {
            if small == p as u64 {
                return true;
            }
            if small % p as u64 == 0 {
                return false;
            }
        }
    } else {
        for p in SMALL_PRIMES {
            if (n % p).is_zero() {
                return false;
            }
        }
    }
    let bound: BigUint = "3317044064679887385961981".parse().unwrap();
    if *n < bound {
        return SMALL_PRIMES.iter().all(|&b| miller_rabin(n, b));
    }
    let root = n.sqrt();
    let mut d = BigUint::from(43u32);
    while d <= root {
        if (n % &d).is_zero() {
            return false;
        }
        d += 2u32;
    }
    true
}

/// Euler's criterion for an odd prime `p`.
pub fn is_quadratic_residue(a: &Integer, p: &Integer) -> Result<bool> {
    if *p <= int(2) {
        return Err(Error::InvalidArgument("modulus must be an odd prime".into()));
    }
    let a = modulo(a, p);
    if a.is_zero() {
        return Err(Error::InvalidArgument(format!("{a} is divisible by {p}")));
    }
    let e = (p - 1u32) / 2u32;
    Ok(mod_pow(&a, &e, p).is_one())
}

fn pollard_brent(n: &BigUint, c: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let m = 64;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn factor_into(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime(&BigInt::from(n.clone())) {
        out.push(n);
        return;
    }
    for c in 1u64.. {
        if let Some(d) = pollard_brent(&n, c) {
            let rest = &n / &d;
            factor_into(d, out);
            factor_into(rest, out);
            return;
        }
    }
}

/// Prime factorization `[(p, e)]` with `p` ascending. `factor(1)` is empty.
pub fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut n = n.clone();
    let mut primes = Vec::new();
    if n.is_zero() {
        return Vec::new();
    }
    let mut d = 2u32;
    while d < 10_000 {
        let dd = BigUint::from(d);
        if &dd * &dd > n {
            break;
        }
        while (&n % d).is_zero() {
            primes.push(dd.clone());
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    factor_into(n, &mut primes);
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// The squarefree integer `d` with `q = d * s^2` for a rational `s`.
pub fn squarefree_part(q: &Rational) -> Result<Integer> {
    if q.is_zero() {
        return Err(Error::InvalidArgument("squarefree part of zero".into()));
    }
    // q = n/d = n*d / d^2
    let prod = (q.numer() * q.denom()).abs();
    let mut out = BigUint::one();
    for (p, e) in factor(prod.magnitude()) {
        if e % 2 == 1 {
            out *= p;
        }
    }
    let out = BigInt::from(out);
    Ok(if q.is_negative() { -out } else { out })
}

fn is_perfect_square(n: &Integer) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Whether `q = r^2` for some rational `r`.
pub fn rational_is_square(q: &Rational) -> bool {
    q.is_zero() || (is_perfect_square(q.numer()) && is_perfect_square(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[(i64, i64)]) -> Vec<(Integer, Integer)> {
        v.iter().map(|&(a, b)| (int(a), int(b))).collect()
    }

    #[test]
    fn crt_conic_values() {
        assert_eq!(crt_class(&ints(&[(1, 4), (1, 5)])).unwrap(), (int(1), int(20)));
        assert_eq!(
            crt_class(&ints(&[(1, 4), (1, 5), (4, 41)])).unwrap(),
            (int(701), int(820))
        );
        assert_eq!(crt_solve(&ints(&[(3, 7)])).unwrap(), int(3));
    }

    #[test]
    fn crt_rejects_shared_factors() {
        assert_eq!(
            crt_solve(&ints(&[(1, 4), (3, 6)])),
            Err(Error::ModuliNotCoprime)
        );
        assert!(crt_solve(&ints(&[(0, 1)])).is_err());
    }

    #[test]
    fn primality() {
        assert!(is_prime(&int(266381)));
        assert!(is_prime(&int(701)));
        assert!(!is_prime(&int(1)));
        assert!(!is_prime(&int(0)));
        assert!(is_prime(&int(2)));
        assert!(!is_prime(&int(561)));
        assert!(is_prime(&int(1_000_000_007)));
        assert!(!is_prime(&(int(1_000_000_007) * int(998_244_353))));
        let mersenne: Integer = (Integer::one() << 61) - 1;
        assert!(is_prime(&mersenne));
    }

    #[test]
    fn primality_matches_sieve_below_5000() {
        let mut sieve = vec![true; 5000];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..5000 {
            if sieve[i] {
                let mut j = i * i;
                while j < 5000 {
                    sieve[j] = false;
                    j += i;
                }
            }
        }
        for (i, &p) in sieve.iter().enumerate() {
            assert_eq!(is_prime(&int(i as i64)), p, "{i}");
        }
    }

    #[test]
    fn residues() {
        assert!(!is_quadratic_residue(&int(2), &int(5)).unwrap());
        assert!(!is_quadratic_residue(&int(17), &int(41)).unwrap());
        assert!(is_quadratic_residue(&int(1), &int(7)).unwrap());
        assert!(is_quadratic_residue(&int(14), &int(7)).is_err());
    }

    #[test]
    fn residues_match_enumeration_below_200() {
        for p in (3..200i64).filter(|&p| is_prime(&int(p))) {
            let squares: std::collections::BTreeSet<i64> = (1..p).map(|x| x * x % p).collect();
            for a in 1..p {
                assert_eq!(
                    is_quadratic_residue(&int(a), &int(p)).unwrap(),
                    squares.contains(&a),
                    "a={a} p={p}"
                );
            }
        }
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&rat(3, 841)).unwrap(), int(3));
        assert_eq!(squarefree_part(&rat_int(4)).unwrap(), int(1));
        assert_eq!(squarefree_part(&rat(3, 13)).unwrap(), int(39));
        assert_eq!(squarefree_part(&rat(-12, 1)).unwrap(), int(-3));
        assert!(squarefree_part(&rat_int(0)).is_err());
    }

    #[test]
    fn squares() {
        assert!(rational_is_square(&rat(4, 9)));
        assert!(!rational_is_square(&rat(26, 1682)));
        assert!(rational_is_square(&rat_int(0)));
        assert!(!rational_is_square(&rat(-4, 9)));
    }

    #[test]
    fn factor_large_semiprime() {
        let n: BigUint = BigUint::from(1_000_003u64) * BigUint::from(998_244_353u64);
        let f = factor(&n);
        assert_eq!(
            f,
            vec![(BigUint::from(1_000_003u64), 1), (BigUint::from(998_244_353u64), 1)]
        );
    }

    proptest! {
        #[test]
        fn crt_recovers_residues(x in 0i64..1_000_000, pick in 0usize..4) {
            let mods: [&[i64]; 4] = [&[4, 5, 41], &[7, 9, 11], &[13, 16], &[3, 5, 7, 11, 13]];
            let ms = mods[pick];
            let cong: Vec<(Integer, Integer)> = ms.iter().map(|&m| (int(x % m), int(m))).collect();
            let (sol, big) = crt_class(&cong).unwrap();
            prop_assert!(sol < big);
            for &m in ms {
                prop_assert_eq!(modulo(&sol, &int(m)), int(x % m));
            }
        }

        #[test]
        fn squarefree_reconstructs(n in -5000i64..5000, d in 1i64..5000) {
            prop_assume!(n != 0);
            let q = rat(n, d);
            let s = squarefree_part(&q).unwrap();
            let ratio = &q / Rational::from_integer(s.clone());
            prop_assert!(rational_is_square(&ratio));
            prop_assert_eq!(rational_is_square(&q), s.is_one());
        }

        #[test]
        fn squarefree_multiplicative_up_to_squares(a in 1i64..3000, b in 1i64..3000) {
            let sa = squarefree_part(&rat_int(a)).unwrap();
            let sb = squarefree_part(&rat_int(b)).unwrap();
            let sab = squarefree_part(&rat_int(a * b)).unwrap();
            let prod = Rational::from_integer(sa * sb) / Rational::from_integer(sab);
            prop_assert!(rational_is_square(&prod));
        }
    }
}
