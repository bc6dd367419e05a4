//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p prolong-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use prolong_core::bundles::{
    covering_euler_classes, enumerate_covering_classes, gysin_check, obstruction_vanishes,
    CircleBundle,
};
use prolong_core::engel::{
    characteristic_line_check, contact_check, contact_form, contact_plane_field, development_alpha,
    engel_check, fiber_field, lie_bracket, prolonged_engel_frame, prolonged_spanner,
    twisting_number, Distribution, EngelFailure, TrigVectorField,
};
use prolong_core::groups::{reduce_mod_n, Manifold3Data};
use prolong_core::prolongation::{
    counterexample_search, n_fold_prolongation_exists, prolongation_euler, GaussClass,
};
use prolong_core::torus::{build_phi_alpha, classify_covering_map};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|err| format!("{err:?}"))
}

/// `(n, α)` pairs for the Engel criteria, with α reduced and deduplicated.
fn engel_samples() -> Vec<(i64, [i64; 3])> {
    let mut out = Vec::new();
    for n in 1..=3i64 {
        for a in [[0, 0, 0], [1, 0, 0], [1, 1, 0], [1, 2, 0]] {
            let a = a.map(|x: i64| x.rem_euclid(n));
            if !out.contains(&(n, a)) {
                out.push((n, a));
            }
        }
    }
    out
}

fn torsor_roundtrip() -> Outcome {
    let mut count = 0;
    for n in 2..=5u32 {
        let k = n as i64;
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let phi = e(build_phi_alpha(n, [a, b, c]))?;
                    let got = e(classify_covering_map(&phi, 64))?;
                    ensure(got == [a, b, c], || {
                        format!("n={n} α={:?} classified as {got:?}", [a, b, c])
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} maps"))
}

fn brute_force_divisors(e: i64, n: i64, order: i64) -> Vec<i64> {
    (0..order)
        .filter(|x| (n * x - e).rem_euclid(order) == 0)
        .collect()
}

fn obstruction_and_lifts() -> Outcome {
    let t3 = Manifold3Data::torus3();
    let mut checked = 0;
    for n in 2..=6u64 {
        let ni = n as i64;
        for x in -4..=4i64 {
            for y in -4..=4i64 {
                for z in -4..=4i64 {
                    let p = e(CircleBundle::with_euler_i64(t3.clone(), &[x, y, z]))?;
                    let divisible = [x, y, z].iter().all(|v| v % ni == 0);
                    let vanishes = e(obstruction_vanishes(&p, n))?;
                    let lifts = e(covering_euler_classes(&p, n))?;
                    ensure(vanishes == divisible, || format!("e=({x},{y},{z}) n={n}"))?;
                    ensure(vanishes == !lifts.is_empty(), || {
                        format!("lifts e=({x},{y},{z}) n={n}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    let l4 = Manifold3Data::lens4();
    for n in 2..=6u64 {
        for ev in 0..4i64 {
            let p = e(CircleBundle::with_euler_i64(l4.clone(), &[ev]))?;
            let brute = brute_force_divisors(ev, n as i64, 4);
            let lifts: Vec<i64> = e(covering_euler_classes(&p, n))?
                .iter()
                .map(|g| g.to_i64s().unwrap()[0])
                .collect();
            ensure(e(obstruction_vanishes(&p, n))? == !brute.is_empty(), || {
                format!("L4 e={ev} n={n}")
            })?;
            ensure(lifts == brute, || {
                format!("L4 e={ev} n={n}: {lifts:?} vs {brute:?}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} bundles"))
}

/// The bundles of the obstruction grid, on `T³` and on the lens space.
fn bundle_grid() -> Result<Vec<(CircleBundle, u64)>, String> {
    let mut out = Vec::new();
    for n in 2..=6u64 {
        for x in -4..=4i64 {
            for y in -4..=4i64 {
                for z in -4..=4i64 {
                    out.push((
                        e(CircleBundle::with_euler_i64(
                            Manifold3Data::torus3(),
                            &[x, y, z],
                        ))?,
                        n,
                    ));
                }
            }
        }
        for ev in 0..4i64 {
            out.push((
                e(CircleBundle::with_euler_i64(Manifold3Data::lens4(), &[ev]))?,
                n,
            ));
        }
    }
    Ok(out)
}

/// `n·e(Q) = e(P)` for every enumerated class and every lift.
fn check_lifting_identity(p: &CircleBundle, n: u64) -> Result<usize, String> {
    let h2 = p.base().h2();
    let nb = BigInt::from(n);
    let en = e(enumerate_covering_classes(p, n))?;
    let lifts = e(covering_euler_classes(p, n))?;
    let mut count = 0;
    for q in en.classes().iter().map(|c| &c.upstairs_euler).chain(&lifts) {
        ensure(&e(h2.scale(&nb, q))? == p.euler(), || {
            format!("n·e(Q) ≠ e(P) for {q:?}")
        })?;
        count += 1;
    }
    Ok(count)
}

fn lifting_identity() -> Outcome {
    let mut classes = 0;
    for (p, n) in bundle_grid()? {
        classes += check_lifting_identity(&p, n)?;
    }
    ensure(classes > 0, || "no classes enumerated".into())?;
    Ok(format!("{classes} classes and lifts"))
}

fn gysin_counting() -> Outcome {
    let mut cases = Vec::new();
    for ev in [[0, 0, 0], [1, 0, 0], [2, 0, 0], [2, 2, 0]] {
        for n in [2, 3, 4, 6] {
            cases.push((Manifold3Data::torus3(), ev.to_vec(), n));
        }
    }
    for ev in 0..=2 {
        for n in [2, 4] {
            cases.push((Manifold3Data::lens4(), vec![ev], n));
        }
    }
    for (m, ev, n) in &cases {
        let p = e(CircleBundle::with_euler_i64(m.clone(), ev))?;
        let r = e(gysin_check(&p, *n))?;
        ensure(r.passed(), || {
            format!("{} e={ev:?} n={n}: {:?}", m.name(), r.failures)
        })?;
        ensure(
            r.h1_total_zn_order == r.h1_base_zn_order * r.kernel_d.len() as u64,
            || format!("{} e={ev:?} n={n}: counting", m.name()),
        )?;
        ensure(r.h1_total_zn_enumerated == r.h1_total_zn_order, || {
            "enumeration".into()
        })?;
    }
    let p = e(CircleBundle::with_euler_i64(
        Manifold3Data::torus3(),
        &[2, 0, 0],
    ))?;
    let r = e(gysin_check(&p, 4))?;
    ensure(
        (r.h1_total_zn_order, r.h1_base_zn_order, r.kernel_d.len()) == (128, 64, 2),
        || {
            format!(
                "worked value: {} = {}·{}",
                r.h1_total_zn_order,
                r.h1_base_zn_order,
                r.kernel_d.len()
            )
        },
    )?;
    Ok(format!("{} bundles, 128 = 64·2", cases.len()))
}

fn engel_verification() -> Outcome {
    let samples = engel_samples();
    let mut worst = f64::INFINITY;
    for &(n, a) in &samples {
        let d = e(prolonged_engel_frame(n, a))?;
        let r = e(engel_check(&d, 16, 1e-6))?;
        ensure(r.passed, || format!("n={n} α={a:?}: {:?}", r.failure))?;
        worst = r
            .stages
            .iter()
            .map(|s| s.min_singular_value)
            .fold(worst, f64::min);
        let c = e(characteristic_line_check(&d, &fiber_field(), 16, 1e-6))?;
        ensure(c.characteristic, || {
            format!("∂θ not characteristic for n={n} α={a:?}")
        })?;
    }
    let control = e(Distribution::new(
        vec![fiber_field(), TrigVectorField::coordinate(2)],
        2,
    ))?;
    let r = e(engel_check(&control, 16, 1e-6))?;
    ensure(r.failure == Some(EngelFailure::Stage { stage: 2 }), || {
        format!("control: {:?}", r.failure)
    })?;
    Ok(format!(
        "{} distributions, smallest margin {worst:.3}",
        samples.len()
    ))
}

fn development_data() -> Outcome {
    let samples = engel_samples();
    for &(n, a) in &samples {
        let d = e(prolonged_engel_frame(n, a))?;
        let t = e(twisting_number(&d))?;
        ensure(t == n, || format!("n={n} α={a:?}: twisting number {t}"))?;
        let got = e(development_alpha(&d, n))?;
        ensure(got == a, || {
            format!("n={n} α={a:?}: development class {got:?}")
        })?;
    }
    Ok(format!("{} distributions", samples.len()))
}

fn prolongation_existence() -> Outcome {
    let t3 = Manifold3Data::torus3();
    for x in -3..=3i64 {
        for y in -3..=3i64 {
            for z in -3..=3i64 {
                let gc = e(GaussClass::from_i64(t3.clone(), &[x, y, z]))?;
                for n in [2, 4] {
                    ensure(e(n_fold_prolongation_exists(&gc, n))?, || {
                        format!("g=({x},{y},{z}) n={n}")
                    })?;
                }
                let r = e(prolongation_euler(&gc))?;
                let ep = r.e_prolongation.to_i64s().unwrap();
                ensure(ep == vec![4 * x, 4 * y, 4 * z], || format!("e(P)={ep:?}"))?;
                let red = e(reduce_mod_n(t3.h2(), &r.e_prolongation, &BigInt::from(4)))?;
                ensure(red.zero, || format!("{ep:?} not in 4·H²"))?;
            }
        }
    }
    let found = e(counterexample_search(&t3, 3, 3))?.map(|gc| gc.g().to_i64s().unwrap());
    ensure(found == Some(vec![1, 0, 0]), || {
        format!("counterexample {found:?}")
    })?;
    let s3 = Manifold3Data::sphere3();
    for n in [3, 5, 6, 7, 8] {
        ensure(e(counterexample_search(&s3, n, 3))?.is_none(), || {
            format!("S3 n={n}")
        })?;
    }
    Ok("343 classes, counterexample (1,0,0)".into())
}

/// `∂f/∂u_i` by Richardson-extrapolated central differences.
fn partial_fd(f: &impl Fn([f64; 4]) -> [f64; 4], u: [f64; 4], i: usize) -> [f64; 4] {
    let central = |h: f64| {
        let (mut a, mut b) = (u, u);
        a[i] += h;
        b[i] -= h;
        let (fa, fb) = (f(a), f(b));
        std::array::from_fn::<f64, 4, _>(|j| (fa[j] - fb[j]) / (2.0 * h))
    };
    let (d1, d2) = (central(1e-3), central(5e-4));
    std::array::from_fn(|j| (4.0 * d2[j] - d1[j]) / 3.0)
}

fn bracket_fd(x: &TrigVectorField, y: &TrigVectorField, u: [f64; 4]) -> [f64; 4] {
    let (cx, cy) = (x.compile(), y.compile());
    let (xv, yv) = (cx.eval(u), cy.eval(u));
    let mut out = [0.0; 4];
    for i in 0..4 {
        let dy = partial_fd(&|p| cy.eval(p), u, i);
        let dx = partial_fd(&|p| cx.eval(p), u, i);
        for j in 0..4 {
            out[j] += xv[i] * dy[j] - yv[i] * dx[j];
        }
    }
    out
}

fn calculus_soundness() -> Outcome {
    let mut frames = vec![
        fiber_field(),
        TrigVectorField::coordinate(2),
        contact_plane_field(),
    ];
    frames.extend(
        engel_samples()
            .into_iter()
            .map(|(n, a)| prolonged_spanner(n, a)),
    );
    for x in &frames {
        for y in &frames {
            ensure((&lie_bracket(x, y) + &lie_bracket(y, x)).is_zero(), || {
                "antisymmetry".into()
            })?;
        }
    }
    let mut jacobi = 0;
    for (i, x) in frames.iter().enumerate() {
        for (j, y) in frames.iter().enumerate().skip(i + 1) {
            for z in frames.iter().skip(j + 1) {
                let s = &(&lie_bracket(x, &lie_bracket(y, z))
                    + &lie_bracket(y, &lie_bracket(z, x)))
                    + &lie_bracket(z, &lie_bracket(x, y));
                ensure(s.is_zero(), || format!("Jacobi fails: {s}"))?;
                jacobi += 1;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut max_err: f64 = 0.0;
    for _ in 0..25 {
        let u: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>());
        let x = &frames[rng.random_range(0..frames.len())];
        let y = &frames[rng.random_range(0..frames.len())];
        let exact = lie_bracket(x, y).eval(u);
        let approx = bracket_fd(x, y, u);
        for j in 0..4 {
            max_err = max_err.max((exact[j] - approx[j]).abs());
        }
    }
    ensure(max_err < 1e-7, || {
        format!("finite-difference mismatch {max_err:e}")
    })?;

    let r = e(contact_check(&contact_form()))?;
    let two = BigRational::from_integer(BigInt::from(2));
    ensure(r.contact && r.volume_is(&two, 1), || {
        format!("contact volume {}", r.volume)
    })?;
    Ok(format!(
        "{jacobi} Jacobi triples, FD error {max_err:.1e}, α∧dα = {}",
        r.volume
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "torsor roundtrip",
            torsor_roundtrip,
            Duration::from_secs(30),
        ),
        (
            "obstruction vs divisibility",
            obstruction_and_lifts,
            Duration::from_secs(10),
        ),
        (
            "lifting identity n·e(Q) = e(P)",
            lifting_identity,
            Duration::from_secs(10),
        ),
        (
            "Gysin counting and exactness",
            gysin_counting,
            Duration::from_secs(10),
        ),
        (
            "Engel flag ranks (2,3,4)",
            engel_verification,
            Duration::from_secs(180),
        ),
        (
            "development data",
            development_data,
            Duration::from_secs(30),
        ),
        (
            "prolongation existence",
            prolongation_existence,
            Duration::from_secs(5),
        ),
        (
            "symbolic calculus soundness",
            calculus_soundness,
            Duration::from_secs(10),
        ),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let (status, detail) = match &outcome {
            Ok(d) if took <= *budget => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("{d}; over budget {budget:?}")),
            Err(d) => ("FAIL", d.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "[{status}] {} {name}: {detail} ({:.2}s)",
            i + 1,
            took.as_secs_f64()
        );
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
