//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p fibotheta --test acceptance` (add `--release`
//! for realistic timings).

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fibotheta::cli::{eval_constant, Constant};
use fibotheta::exactnum::{
    ball_round, rat, render_decimal, render_truncated, ten_pow_neg, Ball, BigInt, BigRational,
    QuadElem,
};
use fibotheta::fibonacci::{convention_probe, fib, fib_binet_ball, fib_pair, Convention};
use fibotheta::products::{
    eval_product_cutoff, lucas_sum_cutoff, reciprocal_sum_cutoff, thm1_rhs, ProductSpec,
    ReciprocalKind, Thm1Target,
};
use fibotheta::qseries::{compare_sides, identity_sides, Identity};
use fibotheta::relations::{
    find_integer_relation, minimal_polynomial_search, polynomial_relation_search,
};
use fibotheta::theta::{theta_ball, theta_ball_terms, ThetaIndex};
use fibotheta::verify::{run_check, run_check_with, sides, Status, VerifyOptions};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("{what} took {:.2}s, limit {:.0}s", elapsed.as_secs_f64(), limit.as_secs_f64()),
    )
}

fn digits_cli(constant: &str, printed: &str) -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_fibotheta"))
        .args(["digits", constant, "--digits", "10"])
        .output()
        .map_err(e2s)?;
    let elapsed = start.elapsed();
    let text = String::from_utf8_lossy(&out.stdout).trim().to_string();
    ensure(out.status.code() == Some(0), format!("exit code {:?}", out.status.code()))?;
    ensure(text == printed, format!("printed {text}, expected {printed}"))?;
    let c: Constant = constant.parse().map_err(e2s)?;
    let ball = eval_constant(c, 10, Convention::Standard).map_err(e2s)?;
    ensure(ball.radius() < &rat(5, 100_000_000_000), "radius not below 5e-11")?;
    within(elapsed, Duration::from_secs(5), "digits")?;
    Ok(format!("{text} in {} ms", elapsed.as_millis()))
}

fn c1() -> Outcome {
    digits_cli("xi1", "13.1509666577")
}

fn c2() -> Outcome {
    digits_cli("xi2", "0.1897891436")
}

fn c3() -> Outcome {
    let mut gaps = Vec::new();
    for name in ["thm1_xi1", "thm1_xi2"] {
        let r = run_check(name, 40).map_err(e2s)?;
        ensure(r.status == Status::Pass, format!("{name}: {}", r.status))?;
        let (lhs, rhs) = sides(name, 40).map_err(e2s)?;
        let (_, gap) = lhs.distance_bounds(&rhs);
        ensure(gap < ten_pow_neg(35), format!("{name}: gap {} too large", r.gap_bound))?;
        gaps.push(format!("{name} gap <= {}", r.gap_bound));
    }
    Ok(gaps.join(", "))
}

fn c4() -> Outcome {
    let one_plus = &QuadElem::one() + &QuadElem::sqrt5();
    let cases = [
        ("eq453a", one_plus.clone()),
        ("eq453b", one_plus.scale(&rat(1, 6))),
        ("eq3484", QuadElem::new(rat(5, 2), rat(-1, 2))),
    ];
    for (name, exact) in cases {
        let (lhs, _) = sides(name, 40).map_err(e2s)?;
        ensure(lhs.contains_exact(&exact), format!("{name}: ball misses {exact}"))?;
        ensure(run_check(name, 40).map_err(e2s)?.status == Status::Pass, format!("{name} not pass"))?;
    }
    Ok("1+√5, (1+√5)/6, (5−√5)/2 are exact members".into())
}

fn c5() -> Outcome {
    let names = ["eq09101", "eq09102", "eq09081", "eq113", "eq492a", "eq492b"];
    for name in names {
        let r = run_check(name, 40).map_err(e2s)?;
        ensure(r.status == Status::Pass, format!("{name}: {}", r.status))?;
    }
    Ok(format!("{} checks pass at 40 digits", names.len()))
}

fn c6() -> Outcome {
    let start = Instant::now();
    let opts = VerifyOptions { precision_digits: 40, order: 200 };
    let names = [
        "series_tp2",
        "series_tp3",
        "series_tp4",
        "series_eq46",
        "series_eq467",
        "series_eq47",
        "series_jacobi_quartic",
        "series_landen_sum",
        "series_landen_prod",
    ];
    for name in names {
        let r = run_check_with(name, &opts).map_err(e2s)?;
        ensure(r.status == Status::Pass, format!("{name}: {}", r.status))?;
    }
    let mut rng = StdRng::seed_from_u64(6);
    let mut mutations = 0;
    for id in Identity::ALL {
        let sides = identity_sides(id, 200).map_err(e2s)?;
        for side in 0..sides.len() {
            let mut positions = vec![0usize, 1, 2, 199, 200];
            positions.extend((0..6).map(|_| rng.gen_range(0..=200)));
            for k in positions {
                let mut mutated = sides.clone();
                let c = mutated[side].coeff(k).clone();
                let delta = rat(rng.gen_range(1..5) * if rng.gen_bool(0.5) { 1 } else { -1 }, 1);
                mutated[side].set_coeff(k, c + delta);
                let found = compare_sides(&mutated).map_err(e2s)?;
                ensure(found.is_some(), format!("{id}: mutation at side {side}, q^{k} missed"))?;
                mutations += 1;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(30), "series checks")?;
    Ok(format!(
        "9 identities exact to q^200, {mutations} mutations detected, {} ms",
        start.elapsed().as_millis()
    ))
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn c7() -> Outcome {
    let h = BigInt::from(100_000_000);
    let s5 = QuadElem::sqrt5();
    let one = QuadElem::one();
    let cases = [
        ("β", QuadElem::beta(), big(&[-1, 1, 1])),
        ("1+√5", &one + &s5, big(&[-4, -2, 1])),
        ("(1+√5)/6", (&one + &s5).scale(&rat(1, 6)), big(&[-1, -3, 9])),
    ];
    for (label, x, want) in cases {
        let r = minimal_polynomial_search(&Ball::exact(x), 4, &h, 40).map_err(e2s)?;
        ensure(r.coefficients.as_ref() == Some(&want), format!("{label}: got {:?}", r.coefficients))?;
    }
    let b = QuadElem::beta();
    let t = ten_pow_neg(50);
    let t2 = theta_ball(ThetaIndex::Two, &b, &t).map_err(e2s)?.pow(4).collapse(50).map_err(e2s)?;
    let t3 = theta_ball(ThetaIndex::Three, &b, &t).map_err(e2s)?.collapse(50).map_err(e2s)?;
    let t4 = theta_ball(ThetaIndex::Four, &b, &t).map_err(e2s)?.collapse(50).map_err(e2s)?;
    let r = find_integer_relation(&[t2, t3.pow(4), t4.pow(4)], &h, 40).map_err(e2s)?;
    ensure(r.coefficients == Some(big(&[1, -1, 1])), format!("theta quartic: {:?}", r.coefficients))?;
    Ok("x²+x−1, x²−2x−4, 9x²−3x−1 and (1, −1, 1) recovered".into())
}

fn c8() -> Outcome {
    let start = Instant::now();
    let xi1 = thm1_rhs(Thm1Target::Xi1, 320).map_err(e2s)?;
    let xi2 = thm1_rhs(Thm1Target::Xi2, 320).map_err(e2s)?;
    let r = polynomial_relation_search(&xi1, &xi2, 4, &BigInt::from(100_000_000), 300).map_err(e2s)?;
    ensure(!r.found, format!("unexpected relation {:?}", r.coefficients))?;
    ensure(r.search_params.precision_digits == 300, "precision was lowered")?;
    ensure(r.search_params.dimension == 15, "wrong monomial count")?;
    let text = r.to_string();
    ensure(text.contains("evidence, not proof"), "report lacks the evidence label")?;
    within(start.elapsed(), Duration::from_secs(600), "probe")?;
    Ok(format!(
        "not found over 15 monomials at 300 digits, labelled evidence, {} ms",
        start.elapsed().as_millis()
    ))
}

fn c9() -> Outcome {
    let report = convention_probe(10).map_err(e2s)?;
    ensure(report.reproducing == vec![Convention::Standard], format!("reproducing {:?}", report.reproducing))?;
    let shifted = eval_constant(Constant::Xi1, 8, Convention::Shifted).map_err(e2s)?;
    let r = render_decimal(&shifted, 4);
    ensure(r.text == "6.5755" && r.certified, format!("shifted product {} (certified {})", r.text, r.certified))?;
    Ok(format!("standard reproduces printed values; shifted ξ₁ = {}", r.text))
}

fn random_ball(rng: &mut StdRng) -> Ball {
    let a = rat(rng.gen_range(-50..50), rng.gen_range(1..20));
    let b = rat(rng.gen_range(-10..10), rng.gen_range(1..20));
    let r = rat(rng.gen_range(0..100), rng.gen_range(100..100_000));
    Ball::new(QuadElem::new(a, b), r)
}

/// A point of the ball: `center + t · radius` with `t ∈ [-1, 1]`.
fn member(rng: &mut StdRng, x: &Ball) -> QuadElem {
    let t = rat(rng.gen_range(-64..=64), 64);
    x.center() + &QuadElem::from_rational(x.radius() * t)
}

fn c10() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let mut checks = 0;
    for case in 0..1000 {
        let (x, y) = (random_ball(&mut rng), random_ball(&mut rng));
        let (u, v) = (member(&mut rng, &x), member(&mut rng, &y));
        let mut results = vec![
            (x.add(&y), &u + &v),
            (x.sub(&y), &u - &v),
            (x.mul(&y), &u * &v),
            (x.pow(3), u.pow(3).map_err(e2s)?),
            (ball_round(&x.mul(&y), 24), &u * &v),
        ];
        if y.mag_lower(128) > BigRational::from_integer(0.into()) {
            results.push((x.div(&y).map_err(e2s)?, u.checked_div(&v).map_err(e2s)?));
        }
        for (ball, exact) in results {
            ensure(ball.contains_exact(&exact), format!("containment violated in case {case}"))?;
            checks += 1;
        }
    }

    let mut nests = 0;
    let mut specs = vec![
        ProductSpec::xi1(),
        ProductSpec::xi2(),
        ProductSpec::odd_plus(),
        ProductSpec::odd_minus(),
        ProductSpec::even_plus(),
        ProductSpec::even_minus(),
    ];
    for conv in [Convention::Standard, Convention::Shifted] {
        for spec in specs.clone() {
            if let Ok(s) = spec.with_convention(conv) {
                specs.push(s);
            }
        }
    }
    let cutoffs = |spec: &ProductSpec| -> Vec<Ball> {
        [10, 20, 40]
            .iter()
            .map(|&n| eval_product_cutoff(spec, n).expect("cutoff evaluates"))
            .collect()
    };
    let mut chains: Vec<(String, Vec<Ball>)> = specs.iter().map(|s| (format!("{s:?}"), cutoffs(s))).collect();
    for j in 1..=3 {
        let g = ProductSpec::gamma(j).map_err(e2s)?;
        chains.push((
            format!("gamma{j}"),
            [2, 3, 4].iter().map(|&n| eval_product_cutoff(&g, n).expect("cutoff evaluates")).collect(),
        ));
    }
    for conv in [Convention::Standard, Convention::Shifted] {
        chains.push((
            format!("lucas {conv}"),
            [2, 4, 6].iter().map(|&n| lucas_sum_cutoff(conv, n).expect("cutoff")).collect(),
        ));
    }
    for kind in [ReciprocalKind::All, ReciprocalKind::Odd] {
        chains.push((
            format!("reciprocal {kind:?}"),
            [5, 15, 40].iter().map(|&n| reciprocal_sum_cutoff(kind, n).expect("cutoff")).collect(),
        ));
    }
    let beta = QuadElem::beta();
    for q in [beta.clone(), beta.pow(4).map_err(e2s)?, QuadElem::from_rational(rat(1, 2))] {
        for which in [ThetaIndex::Two, ThetaIndex::Three, ThetaIndex::Four] {
            chains.push((
                format!("theta {which:?} at {q}"),
                [2, 5, 10]
                    .iter()
                    .map(|&n| theta_ball_terms(which, &q, n).expect("theta").body().clone())
                    .collect(),
            ));
        }
    }
    for (label, c) in &chains {
        ensure(c[0].contains_ball(&c[1]) && c[1].contains_ball(&c[2]), format!("{label} does not nest"))?;
        nests += 1;
    }

    for n in 0..=200u64 {
        let exact = fib(n, Convention::Standard);
        ensure(fib_pair(n).0 == exact, format!("fast doubling at {n}"))?;
        let binet = fib_binet_ball(n);
        ensure(binet.contains_exact(&QuadElem::from_rational(BigRational::from_integer(exact.clone()))), format!("Binet at {n}"))?;
        ensure(render_truncated(&binet, 0).text == exact.to_string(), format!("Binet digits at {n}"))?;
    }
    Ok(format!("{checks} containment checks, {nests} nesting chains, n <= 200 Binet = doubling"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("xi1 digits", c1),
        ("xi2 digits", c2),
        ("product vs theta formula at 40 digits", c3),
        ("closed forms by exact membership", c4),
        ("intermediate identities", c5),
        ("formal series identities and mutations", c6),
        ("relation probe positive controls", c7),
        ("no relation between xi1 and xi2", c8),
        ("index convention", c9),
        ("soundness suite", c10),
    ];
    let mut failed = 0;
    for (i, (label, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {label}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {label}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
