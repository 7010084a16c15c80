//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dynheight::boettcher::boettcher_series;
use dynheight::countkit::census::{census, reverify, Modular, Square, Verdict};
use dynheight::countkit::masser::{masser_holds, masser_t_threshold};
use dynheight::countkit::modular::ModularFn;
use dynheight::countkit::power_lemma::{oracle_table, power_bound, power_constant, power_lemma_min_x, PowerSystem};
use dynheight::countkit::vanishing::{minimal_degree, vanishing_polynomial};
use dynheight::countkit::{disk_cover, jensen_zero_bound};
use dynheight::dynamics::{canonical_height, count_from, snap_degree_multiset, PolyMap, DEFAULT_DEGREE_CAP};
use dynheight::exactnum::rational::{int, rat};
use dynheight::exactnum::{Ball, IntPoly, RatPoly, Rational};
use dynheight::galois::{cyclotomic_degree_qp, lifting_exponent, mult_order};
use dynheight::galois::padic_degree_bound;
use dynheight::Execution;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let den = rng.gen_range(1..=4);
    let num = rng.gen_range(-bound * den..=bound * den);
    rat(num, den)
}

fn random_map(rng: &mut ChaCha8Rng, degrees: &[usize]) -> PolyMap {
    let d = degrees[rng.gen_range(0..degrees.len())];
    let mut coeffs: Vec<Rational> = (0..d).map(|_| random_rational(rng, 3)).collect();
    coeffs.push(Rational::one());
    PolyMap::new(RatPoly::new(coeffs)).expect("monic map")
}

fn c1_boettcher_residual() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10 {
        let map = random_map(&mut rng, &[2, 3]);
        let s = boettcher_series(&map, 10).map_err(|e| e.to_string())?;
        let res = s.residual().map_err(|e| e.to_string())?;
        ensure(res.is_zero(), format!("nonzero residual for {map}"))?;
    }
    Ok("10 maps, residual identically zero".into())
}

fn c2_boettcher_coefficients() -> Check {
    for c in [int(1), int(-1), rat(1, 2)] {
        let map = PolyMap::new(RatPoly::new(vec![c.clone(), Rational::zero(), Rational::one()])).unwrap();
        let s = boettcher_series(&map, 6).map_err(|e| e.to_string())?;
        let b1 = &c / int(2);
        let b3 = &c * (int(2) - &c) / int(8);
        ensure(s.b(1) == &b1 && s.b(3) == &b3, format!("c = {c}: b1 = {}, b3 = {}", s.b(1), s.b(3)))?;
    }
    Ok("b1 = c/2 and b3 = c(2-c)/8 for c in {1, -1, 1/2}".into())
}

fn c3_canonical_height() -> Check {
    let eps = Rational::new(BigInt::one(), BigInt::from(10u64).pow(20));
    let sq = PolyMap::parse("X^2").unwrap();
    let h = canonical_height(&sq, &int(2), &eps, DEFAULT_DEGREE_CAP).map_err(|e| e.to_string())?;
    let ln2 = Ball::ln2(400);
    ensure(ln2.lower() >= h.value.lower() && ln2.upper() <= h.value.upper(), "log 2 not inside the enclosure")?;
    ensure(h.value.rad().to_rational() <= eps, "radius above 1e-20")?;
    let m = PolyMap::parse("X^2 - 1").unwrap();
    let h0 = canonical_height(&m, &int(0), &rat(1, 1000), DEFAULT_DEGREE_CAP).map_err(|e| e.to_string())?;
    ensure(h0.value.contains_rational(&Rational::zero()), "h_{X^2-1}(0) excludes 0")?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let eps = rat(1, 100);
    for _ in 0..20 {
        let map = random_map(&mut rng, &[2, 3]);
        let alpha = random_rational(&mut rng, 5);
        let a = canonical_height(&map, &alpha, &eps, DEFAULT_DEGREE_CAP).map_err(|e| e.to_string())?;
        let b = canonical_height(&map, &map.eval(&alpha), &eps, DEFAULT_DEGREE_CAP).map_err(|e| e.to_string())?;
        let scaled = a.value.mul_rational(&int(map.degree() as i64));
        ensure(scaled.overlaps(&b.value), format!("functional equation fails for {map} at {alpha}"))?;
    }
    Ok("log 2 enclosed at radius <= 1e-20, preperiodic 0 enclosed, 20 functional-equation cases".into())
}

fn c4_dynamics_degrees() -> Check {
    let map = PolyMap::parse("X^2").unwrap();
    for n in 1..=6u32 {
        let snap = snap_degree_multiset(&map, &int(2), n, DEFAULT_DEGREE_CAP, 0).map_err(|e| e.to_string())?;
        let mut expected = vec![1usize, 1];
        for k in 1..n {
            let d = 1usize << k;
            expected.extend(std::iter::repeat_n(d, d));
        }
        ensure(snap.degrees == expected, format!("n = {n}: multiset {:?}", snap.degrees))?;
        let count = count_from(&snap);
        ensure(count.r == n as usize + 1, format!("n = {n}: r = {}", count.r))?;
        let d = 1usize << n;
        let mut target = vec![BigInt::zero(); d + 1];
        target[0] = -(BigInt::from(2).pow(d as u32));
        target[d] = BigInt::one();
        ensure(snap.factors.reconstruct() == IntPoly::new(target), format!("n = {n}: reconstruction differs"))?;
        if n <= 3 {
            for f in &snap.factors.factors {
                ensure(common::kronecker_irreducible(&common::to_i128(&f.coeffs)), format!("n = {n}: factor {} reducible", f.coeffs))?;
            }
        }
    }
    Ok("multisets and r = n + 1 for n <= 6; Kronecker search confirms irreducibility for n <= 3".into())
}

fn c5_padic_bound() -> Check {
    let map = PolyMap::parse("X^2").unwrap();
    let b = padic_degree_bound(&map, &rat(1, 8), 3, DEFAULT_DEGREE_CAP, 0, 128).map_err(|e| e.to_string())?;
    let snap = snap_degree_multiset(&map, &rat(1, 8), 3, DEFAULT_DEGREE_CAP, 0).map_err(|e| e.to_string())?;
    ensure(snap.degrees == vec![1, 1, 2, 2, 4, 4, 4, 4], format!("multiset {:?}", snap.degrees))?;
    ensure(b.bound == 4 && b.observed_max == Some(4), format!("bound {} observed {:?}", b.bound, b.observed_max))?;
    Ok("bound 4 equals the largest factor degree".into())
}

fn naive_order(a: u64, n: u64) -> u64 {
    let mut x = a % n;
    let mut k = 1;
    while x != 1 % n {
        x = x * a % n;
        k += 1;
    }
    k
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn c6_galois() -> Check {
    let mut cases = 0;
    for n in 2..=500u64 {
        for a in 1..n {
            if gcd(a, n) != 1 {
                continue;
            }
            let got = mult_order(a as i64, n).map_err(|e| e.to_string())?;
            ensure(got == naive_order(a, n), format!("order of {a} mod {n}"))?;
            cases += 1;
        }
    }
    for q in [2u64, 3, 5, 7] {
        for a in 2..50i64 {
            if (a as u64).is_multiple_of(q) {
                continue;
            }
            let le = lifting_exponent(a, q).map_err(|e| e.to_string())?;
            for n in le.m.max(1)..=le.m + 4 {
                let modulus = q.pow(n);
                let predicted = le.predicted_order(n).ok_or("no prediction")?;
                ensure(predicted == naive_order(a as u64, modulus), format!("a = {a}, q = {q}, n = {n}"))?;
            }
        }
    }
    for k in 1..=10u32 {
        let got = cyclotomic_degree_qp(2, 1 << k).map_err(|e| e.to_string())?;
        ensure(got == 1 << (k - 1), format!("k = {k}: {got}"))?;
    }
    Ok(format!("{cases} orders, lifting formula, cyclotomic degrees"))
}

fn c7_power_lemma() -> Check {
    let sys = PowerSystem::new(int(1), int(2)).unwrap();
    let c_theta = power_constant(&sys, 200, 128).map_err(|e| e.to_string())?;
    let table = oracle_table(30, &sys, Execution::best_available()).map_err(|e| e.to_string())?;
    for row in &table {
        let bound = power_bound(&sys, &c_theta, row.x).map_err(|e| e.to_string())?;
        ensure(
            !Ball::from_int(row.max_m as i64, 128).gt(&bound),
            format!("X = {}: M = {} above {}", row.x, row.max_m, bound),
        )?;
        ensure(sys.admits(&row.witness), format!("X = {}: witness fails", row.x))?;
    }
    let m4 = power_lemma_min_x(4, &sys).map_err(|e| e.to_string())?;
    ensure(m4.x0 == 9 && m4.witness == vec![1, 2, 3, 3], format!("X_min(4) = {}", m4.x0))?;
    ensure(table[8].max_m == 4, "oracle(9) != 4")?;
    Ok(format!("X <= 30 within c_theta = {} times sqrt(X); X_min(4) = 9", c_theta))
}

fn c8_cover_jensen() -> Check {
    let cover = disk_cover(&int(2), &int(1), 64).map_err(|e| e.to_string())?;
    ensure(cover.len() <= 23, format!("{} centers", cover.len()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut sampled = 0;
    while sampled < 10_000 {
        let (x, y): (f64, f64) = (rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0));
        if x * x + y * y > 4.0 {
            continue;
        }
        ensure(cover.covers(x, y, 1.0), format!("({x}, {y}) uncovered"))?;
        sampled += 1;
    }
    // g(z) = ∏(z − z_i): |g| ≤ ∏(R + |z_i|) on |z| = R and |g(0)| = ∏|z_i|
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for case in 0..20 {
        let k = rng.gen_range(1..=6);
        let roots: Vec<Rational> = (0..k)
            .map(|_| {
                let den = rng.gen_range(1..=8);
                let mut num = 0;
                while num == 0 {
                    num = rng.gen_range(-12..=12);
                }
                rat(num, den)
            })
            .collect();
        let r = rat(1, 2) + rat(case % 3, 4);
        let big_r = &r * rat(2 + case % 4, 1);
        let m: Rational = roots.iter().map(|z| &big_r + z.abs()).product();
        let g0: Rational = roots.iter().map(|z| z.abs()).product();
        let truth = roots.iter().filter(|z| z.abs() <= r).count() as u64;
        let b = |q: &Rational| Ball::from_rational(q, 128);
        let bound = jensen_zero_bound(&b(&m), &b(&g0), &b(&r), &b(&big_r)).map_err(|e| e.to_string())?;
        ensure(bound >= truth, format!("case {case}: bound {bound} < {truth} zeros"))?;
    }
    Ok(format!("{} centers cover 10^4 samples; 20 Jensen cases dominate", cover.len()))
}

fn c9_vanishing() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let size = rng.gen_range(1..=12);
        let mut pts: Vec<(Rational, Rational)> = Vec::new();
        while pts.len() < size {
            let p = (random_rational(&mut rng, 5), random_rational(&mut rng, 5));
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let t = minimal_degree(pts.len());
        let poly = vanishing_polynomial(&pts, t).map_err(|e| e.to_string())?;
        ensure(!poly.is_zero() && poly.total_degree() <= t, "zero or over-degree polynomial")?;
        for (x, y) in &pts {
            ensure(poly.eval(x, y).is_zero(), format!("{poly} nonzero at ({x}, {y})"))?;
        }
    }
    Ok("10 random sets, exact vanishing".into())
}

fn c10_census() -> Check {
    let sq = census(&Square, 4, 128, Execution::best_available()).map_err(|e| e.to_string())?;
    ensure(sq.count == 1, format!("square census count {}", sq.count))?;
    let hit = sq.records.iter().find(|r| r.candidate.is_some()).ok_or("no candidate")?;
    ensure(hit.q == rat(1, 2), "candidate is not q = 1/2")?;
    let lam = Modular(ModularFn::Lambda);
    let rep = census(&lam, 20, 128, Execution::best_available()).map_err(|e| e.to_string())?;
    let candidates = rep.records.iter().filter(|r| r.candidate.is_some()).count();
    ensure(candidates == 0, format!("{candidates} lambda candidates"))?;
    let late = rep.records.iter().filter(|r| r.verdict == Verdict::Undecided || r.precision > 256).count();
    ensure(late == 0, format!("{late} points undecided after one escalation"))?;
    let checks = reverify(&lam, &rep, Execution::best_available());
    ensure(checks.iter().all(|c| c.consistent && c.after == Verdict::CertifiedNoRational), "reverification failed")?;
    Ok(format!("square: 1 candidate; lambda: {} points certified and re-verified", rep.records.len()))
}

fn c11_masser() -> Check {
    let p = 128;
    let e = Ball::e(p);
    let tuples = [
        (Ball::from_int(2, p), Ball::one(p), e.clone(), 2),
        (Ball::from_int(100, p).exp(), Ball::one(p), Ball::one(p), 1),
        (Ball::from_int(3, p), Ball::from_int(5, p), Ball::from_int(2, p), 1),
        (Ball::from_rational(&rat(3, 2), p), Ball::from_int(1, p), Ball::from_int(10, p), 3),
        (Ball::from_int(1000, p), Ball::from_int(50, p), e.clone(), 4),
    ];
    let mut ts = Vec::new();
    for (az, m, h, d) in &tuples {
        let r = masser_t_threshold(az, m, h, *d).map_err(|e| e.to_string())?;
        ensure(masser_holds(az, m, h, *d, &r.t, 256).map_err(|e| e.to_string())? == Some(true), "T fails")?;
        let smaller = &r.t * (Rational::one() - rat(1, 1_000_000));
        ensure(masser_holds(az, m, h, *d, &smaller, 256).map_err(|e| e.to_string())? == Some(false), "smaller T holds")?;
        ts.push(format!("{:.4}", Ball::from_rational(&r.t, 64).mid_f64()));
    }
    Ok(format!("T = [{}]", ts.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 11] = [
        ("1 boettcher functional equation", c1_boettcher_residual, Duration::from_secs(5)),
        ("2 boettcher coefficients of z^2 + c", c2_boettcher_coefficients, Duration::from_secs(1)),
        ("3 canonical height", c3_canonical_height, Duration::from_secs(10)),
        ("4 dynamics degrees", c4_dynamics_degrees, Duration::from_secs(60)),
        ("5 p-adic bound tightness", c5_padic_bound, Duration::from_secs(5)),
        ("6 galois lemmas", c6_galois, Duration::from_secs(30)),
        ("7 power lemma", c7_power_lemma, Duration::from_secs(120)),
        ("8 covering and jensen", c8_cover_jensen, Duration::from_secs(10)),
        ("9 vanishing polynomial", c9_vanishing, Duration::from_secs(10)),
        ("10 census soundness", c10_census, Duration::from_secs(300)),
        ("11 masser threshold", c11_masser, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => Err(format!("{msg}; took {elapsed:.2?}, budget {budget:?}")),
            o => o,
        };
        match outcome {
            Ok(msg) => println!("criterion {name}: PASS ({elapsed:.2?}) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({elapsed:.2?}) {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 11 acceptance criteria passed");
}
