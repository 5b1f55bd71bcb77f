//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use hypercurve_core::arith::{int, is_quadratic_residue, rat, rat_int, Integer, Rational};
use hypercurve_core::descent::alpha_decompose;
use hypercurve_core::field::{
    min_poly_over_q, primitive_element, roots_in_field, Field, NumberField, Rationals,
};
use hypercurve_core::groebner::{Ideal, MonomialOrder};
use hypercurve_core::hypercircle::ProjectivePoint;
use hypercurve_core::poly::{Monomial, MultiPoly, RatFun, UniPoly};
use hypercurve_core::quadfields::{
    conic_fields, crt_set, nonsquare_witness, verify_pairwise_distinct, ConicSpec, Method,
};
use hypercurve_core::reparam::{
    coefficient_field_degree, optimal_affine_reparametrize, verify_reparametrization, AffineShift,
    Status,
};
use hypercurve_core::Settings;

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    let spent = start.elapsed();
    ensure(spent < limit, format!("took {spent:?}, limit {limit:?}"))
}

/// Roots of `x^2 + 6x + 10` in the quartic field.
fn reference_gammas(k: &Qa, s: &Settings) -> Vec<<Qa as Field>::Elem> {
    let m = UniPoly::from_i64(&Rationals, &[10, 6, 1]).map_coeffs(k, |c| k.from_rational(c));
    roots_in_field(&m, s).unwrap()
}

fn end_to_end() -> Check {
    let start = Instant::now();
    let s = Settings::default();
    let c = curve(QUARTIC);
    let k = &c.field;
    let rep = optimal_affine_reparametrize(&c.phi, &s).map_err(|e| e.to_string())?;

    // (a) witness ideal
    let expected = qideal(
        &[
            "4*t2 + 12*t3 - 3",
            "5 + 2*t1 - 16*t3",
            "2*t0^2 + 24*t3*t0 + 80*t3^2 - 10*t0 - 52*t3 + 15",
        ],
        4,
    );
    let witness = rep.witness.clone().ok_or("no witness ideal")?;
    ensure(witness.ideal_equal(&expected, &s).unwrap(), "(a) witness ideal differs")?;

    // (b) points at infinity [2g : 8 : -3 : 1 : 0] for both roots g
    let gammas = reference_gammas(k, &s);
    ensure(gammas.len() == 2, "x^2 + 6x + 10 should split in Q(a)")?;
    let mut expected_points: Vec<ProjectivePoint<Qa>> = gammas
        .iter()
        .map(|g| {
            let coords = vec![k.add(g, g), k.from_i64(8), k.from_i64(-3), k.one(), k.zero()];
            ProjectivePoint::new(k, coords).unwrap()
        })
        .collect();
    expected_points.sort_by(|x, y| x.cmp_canonical(y, k));
    ensure(rep.infinity_points == expected_points, "(b) points at infinity differ")?;

    // (c) r = 2
    ensure(rep.status == Status::Success && rep.r == Some(2), "(c) r != 2")?;
    let emb = rep.gamma.clone().ok_or("no gamma")?;

    // (d) relative minimal polynomial, for one conjugate
    let rel = rep.relative_minpoly.clone().ok_or("no relative minimal polynomial")?;
    let rel_abs = rel.map_coeffs(k, |c| emb.embed(c));
    let matches_reference = |g: &<Qa as Field>::Elem| {
        let two_g = k.add(g, g);
        let reference = UniPoly::new(
            k,
            vec![k.add(&k.from_i64(8), &two_g), k.sub(&k.from_i64(-8), &two_g), k.one()],
        );
        reference == rel_abs
    };
    ensure(gammas.iter().any(matches_reference), "(d) relative minimal polynomial differs")?;

    // (e) second witness linear part spanned by 2 t1 - 3 g - 7
    let second = rep.second_witness.clone().ok_or("no second witness")?;
    let lin = second.linear_part(&s).map_err(|e| e.to_string())?;
    ensure(lin.len() == 1, format!("(e) linear part has {} forms", lin.len()))?;
    let form = lin[0].map_coeffs(k, |c| emb.embed(c));
    let t1 = Monomial::var(2, 1);
    let monic = form.scale(&k.inv(&form.coeff(&t1)).unwrap());
    let spans = |g: &<Qa as Field>::Elem| {
        // t1 - (3 g + 7) / 2
        let c = k.mul(&k.from_rational(&rat(-1, 2)), &k.add(&k.mul(&k.from_i64(3), g), &k.from_i64(7)));
        let mut p = MultiPoly::var(k, 2, 1);
        p.add_term(Monomial::one(2), c);
        p == monic
    };
    ensure(gammas.iter().any(spans), "(e) linear part differs")?;

    // (f) verification and cross-composition with the reference output
    let shift = rep.shift.clone().ok_or("no shift")?;
    ensure(verify_reparametrization(&c.phi, &shift, &emb), "(f) verification failed")?;
    let ours = rep.reparametrized.clone().ok_or("no output")?;
    let reference_x = "(-3*g - 2*t^2*g + 4*t*g - 5 + 6*t^2 - 4*t^3)/(5 - 8*t + 4*t^2)";
    let reference_y = "2*(7*t*g + 2*t^3*g - 3*g - 6*t^2*g - 10 + 23*t + 6*t^3 - 19*t^2)/(5 - 8*t + 4*t^2)";
    let mut found = false;
    for g in &gammas {
        let reference: Vec<RatFun<Qa>> = [reference_x, reference_y]
            .iter()
            .map(|src| ratfun(k, src, &[("g", g.clone())]))
            .collect();
        // reference shift t + (3 g + 7)/2 a applied to the input
        let b = k.mul(
            &k.mul(&k.from_rational(&rat(1, 2)), &k.add(&k.mul(&k.from_i64(3), g), &k.from_i64(7))),
            &k.generator(),
        );
        let direct = c.phi.compose(&AffineShift::new(k, k.one(), b.clone()).unwrap().as_ratfun(k)).unwrap();
        if direct.components != reference {
            continue;
        }
        // ours = reference(u t + v) with u, v in Q(gamma)
        let u = shift.a.clone();
        let v = k.sub(&shift.b, &b);
        let sub = primitive_element(k, std::slice::from_ref(g), &s).unwrap();
        if sub.membership(&u).is_none() || sub.membership(&v).is_none() {
            continue;
        }
        let inner = AffineShift::new(k, u, v).unwrap().as_ratfun(k);
        let composed: Vec<RatFun<Qa>> = reference.iter().map(|p| p.compose(&inner).unwrap()).collect();
        if composed == ours.components {
            found = true;
        }
    }
    ensure(found, "(f) output does not match the reference parametrization")?;
    within(start, Duration::from_secs(60))
}

fn conic_primes() -> Check {
    let start = Instant::now();
    let s = Settings::default();
    let conic = ConicSpec::new(int(1), int(1), int(-6)).unwrap();
    let fields = conic_fields(&conic, Method::Prime, 4, &s).map_err(|e| e.to_string())?;
    let slopes: Vec<Integer> = fields.iter().map(|f| f.n.clone()).collect();
    ensure(slopes == [5, 41, 701, 266381].map(int), format!("slopes {slopes:?}"))?;
    let expected = [
        rat(3, 13),
        rat(3, 841),
        rat(3, 245701),
        Rational::new(int(3), "35479418581".parse().unwrap()),
    ];
    let radicands: Vec<Rational> = fields.iter().map(|f| f.radicand.clone()).collect();
    ensure(radicands == expected, format!("radicands {radicands:?}"))?;
    within(start, Duration::from_secs(5))
}

fn conic_crt() -> Check {
    let start = Instant::now();
    let s = Settings::default();
    let set = crt_set(&int(1), &int(1), 6).map_err(|e| e.to_string())?;
    ensure(set == [5, 26, 391, 4031, 175306, 9276086].map(int), format!("set {set:?}"))?;
    ensure(verify_pairwise_distinct(&int(1), &int(1), &set, &s), "fields not distinct")?;
    within(start, Duration::from_secs(5))
}

fn gaussian_positive() -> Check {
    let start = Instant::now();
    let s = Settings::default();
    let c = curve(CUSP);
    let k = &c.field;
    let rep = optimal_affine_reparametrize(&c.phi, &s).map_err(|e| e.to_string())?;
    ensure(rep.status == Status::Success, "status is not success")?;
    ensure(rep.r == Some(1), format!("r = {:?}", rep.r))?;
    let shift = rep.shift.clone().ok_or("no shift")?;
    ensure(shift == AffineShift::new(k, k.one(), k.generator()).unwrap(), "shift is not t + i")?;
    let out = rep.reparametrized.ok_or("no output")?;
    let expected = [ratfun(k, "t^2", &[]), ratfun(k, "t^3", &[])];
    ensure(out.components == expected, "output is not (t^2, t^3)")?;
    within(start, Duration::from_secs(1))
}

fn gaussian_negative() -> Check {
    let start = Instant::now();
    let s = Settings::default();
    let c = curve(PARABOLA);
    let rep = optimal_affine_reparametrize(&c.phi, &s).map_err(|e| e.to_string())?;
    ensure(rep.status == Status::Fail, "status is not FAIL")?;
    ensure(rep.infinity_points.is_empty(), "points at infinity found")?;
    let witness = rep.witness.ok_or("no witness")?;
    ensure(witness.dimension(&s).unwrap() == 0, "witness is not zero-dimensional")?;
    ensure(rep.witness_dimension == Some(0), "reported dimension is not 0")?;
    within(start, Duration::from_secs(1))
}

fn random_elem(rng: &mut ChaCha8Rng, k: &Qa) -> <Qa as Field>::Elem {
    let coords: Vec<Rational> = (0..k.degree())
        .map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)))
        .collect();
    k.from_rationals(&coords)
}

fn random_poly(rng: &mut ChaCha8Rng, k: &Qa, nvars: usize) -> MultiPoly<Qa> {
    let mut p = MultiPoly::zero(k, nvars);
    for _ in 0..rng.gen_range(1..=4) {
        let e: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=2)).collect();
        p.add_term(Monomial(e), random_elem(rng, k));
    }
    p
}

fn decomposition_identity(rng: &mut ChaCha8Rng, k: &Qa) -> Check {
    let mut done = 0;
    while done < 50 {
        let num = random_poly(rng, k, 2);
        let den = random_poly(rng, k, 2);
        if den.is_zero() {
            continue;
        }
        let (comps, delta) = alpha_decompose(k, &num, &den).map_err(|e| e.to_string())?;
        // sum a^i c_i * den = num * delta over Q(a)
        let mut lhs = MultiPoly::zero(k, 2);
        let mut ai = k.one();
        for c in &comps {
            lhs = lhs.add(&c.map_coeffs(k, |x| k.from_base(x)).scale(&ai));
            ai = k.mul(&ai, &k.generator());
        }
        let rhs = num.mul(&delta.map_coeffs(k, |x| k.from_base(x)));
        ensure(lhs.mul(&den) == rhs, "reconstruction identity failed")?;
        done += 1;
    }
    Ok(())
}

fn corpus(s: &Settings) -> Vec<Ideal<Rationals>> {
    let mut out = vec![
        qideal(&["t0 + t1 + t2", "t0*t1 + t1*t2 + t2*t0", "t0*t1*t2 - 1"], 3),
        qideal(&["t0^2 - t1", "t0*t1 - 1"], 2),
        qideal(&["t0^2*t1 - t2", "t1^2 - t0*t2 + 1"], 3),
    ];
    for src in [QUARTIC, CUSP, PARABOLA] {
        let c = curve(src);
        out.push(hypercurve_core::descent::witness_ideal(&c.phi, &c.field, s).unwrap().0);
    }
    out
}

fn groebner_properties(s: &Settings) -> Check {
    for ideal in corpus(s) {
        let n = ideal.nvars();
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            let gb = ideal.groebner(order, s).map_err(|e| e.to_string())?;
            ensure(gb.is_groebner(), "S-polynomial does not reduce to zero")?;
            for g in ideal.gens() {
                ensure(gb.normal_form(g).is_zero(), "generator does not reduce to zero")?;
            }
        }
        let f = MultiPoly::var(&Rationals, n, n - 1);
        let once = ideal.saturate(&f, s).map_err(|e| e.to_string())?;
        let twice = once.saturate(&f, s).map_err(|e| e.to_string())?;
        ensure(once.ideal_equal(&twice, s).unwrap(), "saturation is not idempotent")?;
    }
    Ok(())
}

fn roots_properties(rng: &mut ChaCha8Rng, s: &Settings) -> Check {
    let gaussian = NumberField::new(Rationals, UniPoly::from_i64(&Rationals, &[1, 0, 1]), "a");
    let k = &gaussian;
    // candidate grid p + q i, p, q in {-2, -3/2, ..., 2}
    let grid: Vec<<Qa as Field>::Elem> = (-4..=4)
        .flat_map(|p| (-4..=4).map(move |q| (p, q)))
        .map(|(p, q)| k.from_rationals(&[rat(p, 2), rat(q, 2)]))
        .collect();
    for _ in 0..30 {
        let deg = rng.gen_range(1..=2);
        let mut f = UniPoly::constant(k, random_elem(rng, k));
        if k.is_zero(&f.coeff(0)) {
            continue;
        }
        for _ in 0..deg {
            let factor = if rng.gen_bool(0.7) {
                UniPoly::linear_root(k, &grid[rng.gen_range(0..grid.len())])
            } else {
                UniPoly::new(k, vec![random_elem(rng, k), k.one()])
            };
            f = f.mul(&factor);
        }
        if deg == 1 && rng.gen_bool(0.3) {
            // an irreducible quadratic: x^2 - (1 + i)
            f = UniPoly::new(k, vec![k.from_rationals(&[rat_int(-1), rat_int(-1)]), k.zero(), k.one()]);
        }
        let roots = roots_in_field(&f, s).map_err(|e| e.to_string())?;
        for r in &roots {
            ensure(k.is_zero(&f.eval(r)), "reported root is not a root")?;
        }
        for g in &grid {
            if k.is_zero(&f.eval(g)) {
                ensure(roots.contains(g), format!("missed root {}", k.render(g)))?;
            }
        }
        // brute force over the restriction of scalars: f(p + q i) = 0 on the grid
        // agrees with roots in the grid
        let brute: Vec<_> = grid.iter().filter(|g| k.is_zero(&f.eval(g))).cloned().collect();
        let found: Vec<_> = roots.iter().filter(|r| grid.contains(r)).cloned().collect();
        ensure(brute.len() == found.len(), "grid roots disagree")?;
    }
    Ok(())
}

fn minimality(rng: &mut ChaCha8Rng, s: &Settings) -> Check {
    let c = curve(QUARTIC);
    let k = &c.field;
    let rep = optimal_affine_reparametrize(&c.phi, s).map_err(|e| e.to_string())?;
    let emb = rep.gamma.ok_or("no gamma")?;
    let sub = emb.subfield();
    for _ in 0..20 {
        let mut e1 = random_elem(rng, k);
        while k.is_zero(&e1) {
            e1 = random_elem(rng, k);
        }
        let e2 = random_elem(rng, k);
        let moved = c.phi.compose(&AffineShift::new(k, e1, e2).unwrap().as_ratfun(k)).unwrap();
        let d = coefficient_field_degree(&moved, s).map_err(|e| e.to_string())?;
        ensure(d >= 2, format!("coefficient field of degree {d} < 2"))?;
        if d == 2 {
            let coeffs: Vec<_> = moved.coefficients().into_iter().filter(|x| k.as_rational(x).is_none()).collect();
            let prim = primitive_element(k, &coeffs, s).unwrap();
            let m = min_poly_over_q(k, &prim.gamma_in_alpha).map_coeffs(&sub, |q| sub.from_rational(q));
            ensure(!roots_in_field(&m, s).unwrap().is_empty(), "degree-2 field not isomorphic to Q(g)")?;
        }
    }
    Ok(())
}

fn witness_exhaustive() -> Check {
    let primes: Vec<i64> = (5..200).filter(|p| p % 4 == 1 && (2..*p).all(|d| p % d != 0)).collect();
    for p in primes {
        let squares: Vec<bool> = {
            let mut sq = vec![false; p as usize];
            for x in 0..p {
                sq[(x * x % p) as usize] = true;
            }
            sq
        };
        for e in 1..p {
            let brute = (1..p).find(|n| !squares[((1 + e * n * n) % p) as usize]).map(int);
            let got = nonsquare_witness(&int(e), &int(p)).ok();
            ensure(got == brute, format!("witness mismatch for e = {e}, p = {p}"))?;
            if let Some(n) = got {
                let v = (int(1) + int(e) * &n * &n) % int(p);
                ensure(!is_quadratic_residue(&v, &int(p)).unwrap(), "witness value is a residue")?;
            }
        }
    }
    Ok(())
}

fn properties() -> Check {
    let start = Instant::now();
    let s = Settings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let gaussian = NumberField::new(Rationals, UniPoly::from_i64(&Rationals, &[1, 0, 1]), "a");
    let quartic = curve(QUARTIC).field;
    decomposition_identity(&mut rng, &gaussian).map_err(|e| format!("(a) Q(i): {e}"))?;
    decomposition_identity(&mut rng, &quartic).map_err(|e| format!("(a) quartic: {e}"))?;
    groebner_properties(&s).map_err(|e| format!("(b) {e}"))?;
    roots_properties(&mut rng, &s).map_err(|e| format!("(c) {e}"))?;
    minimality(&mut rng, &s).map_err(|e| format!("(d) {e}"))?;
    witness_exhaustive().map_err(|e| format!("(e) {e}"))?;
    within(start, Duration::from_secs(300))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("1 end-to-end quartic reparametrization", end_to_end),
        ("2 conic prime set", conic_primes),
        ("3 conic CRT set", conic_crt),
        ("4 Gaussian positive case", gaussian_positive),
        ("5 Gaussian negative case", gaussian_negative),
        ("6 property suites", properties),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(()) => println!("criterion {name}: PASS ({ms:.0} ms)"),
            Err(e) => {
                failed += 1;
                println!("criterion {name}: FAIL ({ms:.0} ms): {e}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
