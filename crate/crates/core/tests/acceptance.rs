//! Acceptance suite: one pass/fail line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use common::{corpus, pure_dvr, random_dvr_poly, random_fp_poly, random_local_poly, var_names};
use singloc::arith::{LocalIntegers, LocalRational, PrimeField};
use singloc::calculus::{d_dpi, delta_p, reduce_mod_pi};
use singloc::criterion::{
    cross_validate, hj_singular_locus, is_regular_at, kunz_pdegree, omega_free_rank_check,
    prime_constant,
};
use singloc::groebner::{buchberger, IdealHandle};
use singloc::jacobian::{classical_jacobian, minors};
use singloc::oracle::{
    cotangent_matrix_at_point, fp_rank, oracle_is_regular_at_point, scan_rational_points,
};
use singloc::poly::{MonomialOrder, PolyRing, Polynomial};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn local_ring(p: u64, vars: &[&str]) -> PolyRing<LocalIntegers> {
    PolyRing::new(LocalIntegers::new(p).unwrap(), vars.iter().copied()).unwrap()
}

fn c1_hj_unit_ideal() -> Result<String, String> {
    for p in [2u64, 3, 5] {
        let z = local_ring(p, &["x"]);
        let f = &z.parse("x^2").unwrap() - &prime_constant(&z);
        let l = hj_singular_locus(&z, &[f], Some(1)).map_err(|e| e.to_string())?;
        let basis = l.basis().to_string();
        ensure(l.is_empty && basis == "(1)", || {
            format!("p = {p}: locus {basis}")
        })?;
    }
    Ok("x^2 - p, h' = 1: locus (1) for p = 2, 3, 5".into())
}

fn c2_naive_jacobian() -> Result<String, String> {
    for p in [2u64, 3, 5] {
        let z = local_ring(p, &["x"]);
        let f = &z.parse("x^2").unwrap() - &prime_constant(&z);
        let j = classical_jacobian(&z, &[f]);
        let two_x = z.parse("2*x").unwrap();
        ensure(
            j.nrows() == 1 && j.ncols() == 1 && *j.get(0, 0) == two_x,
            || format!("p = {p}: J = {j}"),
        )?;
        let m = minors(&j, 1);
        ensure(m == vec![two_x], || format!("p = {p}: minors {m:?}"))?;
    }
    Ok("J(x^2 - p) = [2*x], I_1 = (2*x)".into())
}

fn c3_d_dpi_normalized() -> Result<String, String> {
    for p in [2u64, 3, 5] {
        for e in [2usize, 3] {
            let ring = PolyRing::new(pure_dvr(p, e), ["x"]).unwrap();
            let d = d_dpi(&ring.parse("pi").unwrap());
            ensure(d.is_one(), || format!("(p, e) = ({p}, {e}): got {d}"))?;
        }
    }
    Ok("d/dpi(pi) = 1 for (p, e) in {2,3,5} x {2,3}".into())
}

/// `(a^p + b^p - (a + b)^p) / p` from binomial coefficients.
fn cross_terms(
    a: &Polynomial<LocalIntegers>,
    b: &Polynomial<LocalIntegers>,
) -> Polynomial<LocalIntegers> {
    let ring = a.ring();
    let p = ring.coeff_ring().prime();
    let mut acc = ring.zero();
    for i in 1..p {
        let c = num_integer::binomial(BigInt::from(p), BigInt::from(i)) / BigInt::from(p);
        let term = (&a.pow(i) * &b.pow(p - i)).scale(&LocalRational::from_integer(c, p));
        acc = &acc - &term;
    }
    acc
}

fn c4_derivation_laws() -> Result<String, String> {
    const TRIALS: usize = 1000;
    let mut checks = 0;
    for p in [2u64, 3, 5] {
        for e in [2usize, 3] {
            let mut rng = StdRng::seed_from_u64(p * 100 + e as u64);
            let v = pure_dvr(p, e);
            let ring = PolyRing::new(v.clone(), ["x", "y"]).unwrap();
            let z = local_ring(p, &["x", "y"]);
            let pi2 = ring.constant(v.pi_power(2));
            let pc = ring.from_i64(p as i64);
            let pz = prime_constant(&z);
            for trial in 0..TRIALS {
                let poly = |r: &mut StdRng| {
                    let t = r.random_range(1..=3);
                    random_dvr_poly(r, &ring, t, 2)
                };
                let (f, g, h) = (poly(&mut rng), poly(&mut rng), poly(&mut rng));
                let ctx = || format!("(p, e) = ({p}, {e}), trial {trial}: f = {f}, g = {g}");
                ensure(d_dpi(&(&f + &g)) == &d_dpi(&f) + &d_dpi(&g), || {
                    format!("additivity {}", ctx())
                })?;
                let leibniz =
                    &(&reduce_mod_pi(&f) * &d_dpi(&g)) + &(&reduce_mod_pi(&g) * &d_dpi(&f));
                ensure(d_dpi(&(&f * &g)) == leibniz, || {
                    format!("Leibniz {}", ctx())
                })?;
                let shifted = &(&f + &(&pi2 * &h)) + &(&pc * &g);
                ensure(d_dpi(&shifted) == d_dpi(&f), || {
                    format!("pi^2 window {}", ctx())
                })?;

                let lpoly = |r: &mut StdRng| {
                    let t = r.random_range(1..=2);
                    random_local_poly(r, &z, t, 2)
                };
                let (a, b) = (lpoly(&mut rng), lpoly(&mut rng));
                let lctx = || format!("(p, e) = ({p}, {e}), trial {trial}: a = {a}, b = {b}");
                let (da, db) = (delta_p(&a), delta_p(&b));
                let sum = &(&da + &db) + &cross_terms(&a, &b);
                ensure(delta_p(&(&a + &b)) == sum, || {
                    format!("delta_p sum rule {}", lctx())
                })?;
                let product = &(&(&a.pow(p) * &db) + &(&b.pow(p) * &da)) + &(&pz * &(&da * &db));
                ensure(delta_p(&(&a * &b)) == product, || {
                    format!("delta_p product rule {}", lctx())
                })?;
                checks += 5;
            }
        }
    }
    Ok(format!(
        "{checks} exact checks over 6 (p, e) configurations"
    ))
}

fn c5_oracle_equivalence() -> Result<String, String> {
    let entries = corpus();
    ensure(entries.len() >= 10, || {
        format!("corpus has {} members", entries.len())
    })?;
    let (mut points, mut singular) = (0, 0);
    for entry in &entries {
        let pres = &entry.pres;
        let ring = pres.fiber_ring();
        for scan in scan_rational_points(pres).map_err(|e| e.to_string())? {
            if !scan.on_fiber {
                continue;
            }
            let m = scan.point.maximal_ideal_generators(&ring);
            let criterion = is_regular_at(pres, &m).map_err(|e| e.to_string())?;
            let oracle =
                oracle_is_regular_at_point(pres, &scan.point).map_err(|e| e.to_string())?;
            ensure(criterion == oracle, || {
                format!(
                    "{} at {}: criterion {criterion}, oracle {oracle}",
                    entry.name, scan.point
                )
            })?;
            points += 1;
            singular += usize::from(!oracle);
        }
    }
    Ok(format!(
        "{points} on-fiber points ({singular} singular) across {} presentations agree",
        entries.len()
    ))
}

fn c6_path_independence() -> Result<String, String> {
    let mut points = 0;
    for entry in corpus() {
        let pres = &entry.pres;
        let j = pres.mixed_jacobian();
        for scan in scan_rational_points(pres).map_err(|e| e.to_string())? {
            if !scan.on_fiber {
                continue;
            }
            let rows = cotangent_matrix_at_point(pres, &scan.point).map_err(|e| e.to_string())?;
            let eval = j.evaluate(scan.point.coords()).map_err(|e| e.to_string())?;
            for (col, row) in rows.iter().enumerate() {
                let column: Vec<_> = eval.iter().map(|r| r[col]).collect();
                ensure(column == *row, || {
                    format!("{} at {}, generator {}", entry.name, scan.point, col + 1)
                })?;
            }
            points += 1;
        }
    }
    Ok(format!("{points} points, zero mismatches"))
}

fn c7_rank_bound() -> Result<String, String> {
    let mut points = 0;
    for entry in corpus() {
        let pres = &entry.pres;
        let (h, _) = pres.height().map_err(|e| e.to_string())?;
        let field = pres.dvr().residue_field();
        let j = pres.mixed_jacobian();
        for scan in scan_rational_points(pres).map_err(|e| e.to_string())? {
            if !scan.on_fiber {
                continue;
            }
            let eval = j.evaluate(scan.point.coords()).map_err(|e| e.to_string())?;
            let r = fp_rank(&field, &eval);
            ensure(r <= h, || {
                format!("{} at {}: rank {r} > h = {h}", entry.name, scan.point)
            })?;
            points += 1;
        }
    }
    Ok(format!("{points} points, zero violations"))
}

fn c8_cross_validation() -> Result<String, String> {
    let entries = corpus();
    let mut nonempty = 0;
    for entry in &entries {
        let cv = cross_validate(&entry.pres).map_err(|e| format!("{}: {e}", entry.name))?;
        ensure(cv.agree, || {
            format!(
                "{}: pi-locus {} vs hj-locus {}",
                entry.name,
                cv.pi_locus.basis(),
                cv.hj_locus.basis()
            )
        })?;
        nonempty += usize::from(!cv.pi_locus.is_empty);
    }
    Ok(format!(
        "{} presentations ({nonempty} with non-empty locus), all radical-equal",
        entries.len()
    ))
}

fn c9_groebner_self_check() -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(9);
    for trial in 0..200 {
        let p = [2u64, 3, 5, 7][rng.random_range(0..4)];
        let n = rng.random_range(1..=3);
        let ring = PolyRing::new(PrimeField::new(p).unwrap(), var_names(n)).unwrap();
        let k = rng.random_range(1..=3);
        let mut gens: Vec<_> = (0..k)
            .map(|_| {
                let t = rng.random_range(1..=4);
                random_fp_poly(&mut rng, &ring, t, 3)
            })
            .collect();
        let order = if rng.random_bool(0.5) {
            MonomialOrder::grevlex(n)
        } else {
            MonomialOrder::lex(n)
        };
        let gb = buchberger(&ring, &gens, &order);
        ensure(gb.verify(), || {
            format!("trial {trial}: basis {gb} fails verification")
        })?;
        gens.shuffle(&mut rng);
        let again = buchberger(&ring, &gens, &order);
        ensure(again == gb, || {
            format!("trial {trial}: {gb} vs {again} after permutation")
        })?;
    }
    Ok("200 random ideals verified and permutation-stable".into())
}

fn c10_omega_rank() -> Result<String, String> {
    let mut primes = 0;
    for entry in corpus() {
        let pres = &entry.pres;
        let n = pres.nvars() as i64;
        let (h, _) = pres.height().map_err(|e| e.to_string())?;
        let ring = pres.fiber_ring();
        let mut tested: Vec<Vec<Polynomial<PrimeField>>> = Vec::new();
        if let Some(q) = &entry.doc.prime_ideal {
            tested.push(q.iter().map(|g| ring.parse(g).unwrap()).collect());
        }
        for scan in scan_rational_points(pres).map_err(|e| e.to_string())? {
            if scan.on_fiber {
                tested.push(scan.point.maximal_ideal_generators(&ring));
            }
        }
        for q in &tested {
            let o = omega_free_rank_check(pres, q).map_err(|e| format!("{}: {e}", entry.name))?;
            let regular = is_regular_at(pres, q).map_err(|e| e.to_string())?;
            ensure(o.rank == n + 1 - h as i64 && o.free == regular, || {
                format!("{}: {o:?} with h = {h}, regular = {regular}", entry.name)
            })?;
            primes += 1;
        }
    }
    for n in 1..=3 {
        let ring = PolyRing::new(PrimeField::new(3).unwrap(), var_names(n)).unwrap();
        let maximal = IdealHandle::new(&ring, (0..n).map(|i| ring.var(i).unwrap())).unwrap();
        let zero = IdealHandle::zero(&ring);
        let (a, b) = (kunz_pdegree(&maximal), kunz_pdegree(&zero));
        ensure(a == Ok(0) && b == Ok(n), || {
            format!("n = {n}: {a:?}, {b:?}")
        })?;
    }
    Ok(format!(
        "{primes} primes: rank = n + 1 - h, free matches regularity; p-degrees 0 and n"
    ))
}

fn c11_rejects_non_eisenstein() -> Result<String, String> {
    let dir = std::env::temp_dir().join(format!("singloc-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let cases = [
        ("unit_constant", 3, "[-1, 0]", "does not divide a_0"),
        ("square_constant", 3, "[-9, 0]", "p^2 = 9 divides a_0"),
        ("unit_constant_p5", 5, "[-1, 0]", "does not divide a_0"),
        ("square_constant_p2", 2, "[-4, 0]", "p^2 = 4 divides a_0"),
    ];
    for (name, p, e, expected) in cases {
        let path = dir.join(format!("{name}.json"));
        let doc = format!(
            r#"{{"p": {p}, "eisenstein": {e}, "variables": ["x"], "generators": ["x - pi"]}}"#
        );
        std::fs::write(&path, doc).map_err(|e| e.to_string())?;
        let out = Command::new(env!("CARGO_BIN_EXE_singloc"))
            .arg("locus")
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        let stderr = String::from_utf8_lossy(&out.stderr);
        ensure(out.status.code() == Some(1), || {
            format!("{name}: exit {:?}", out.status.code())
        })?;
        ensure(
            stderr.contains("Eisenstein condition violated") && stderr.contains(expected),
            || format!("{name}: stderr `{}`", stderr.trim()),
        )?;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok("y^2 - 1 and y^2 - p^2 rejected with exit 1 and the violated condition".into())
}

fn main() {
    let criteria: [(u32, &str, Option<u64>, Check); 11] = [
        (
            1,
            "delta_p path on x^2 - p gives the unit ideal",
            Some(1),
            c1_hj_unit_ideal,
        ),
        (
            2,
            "naive Jacobian of x^2 - p is (2x)",
            Some(1),
            c2_naive_jacobian,
        ),
        (3, "d/dpi normalization", None, c3_d_dpi_normalized),
        (4, "derivation laws", Some(30), c4_derivation_laws),
        (
            5,
            "criterion agrees with the oracle",
            Some(60),
            c5_oracle_equivalence,
        ),
        (
            6,
            "Jacobian columns equal cotangent rows",
            None,
            c6_path_independence,
        ),
        (7, "rank bound at on-fiber points", None, c7_rank_bound),
        (
            8,
            "ramified and unramified loci agree",
            Some(120),
            c8_cross_validation,
        ),
        (
            9,
            "Groebner self-verification",
            None,
            c9_groebner_self_check,
        ),
        (
            10,
            "differential module rank arithmetic",
            None,
            c10_omega_rank,
        ),
        (
            11,
            "non-Eisenstein input rejected",
            None,
            c11_rejects_non_eisenstein,
        ),
    ];
    let total = Instant::now();
    let mut failures = 0;
    for (id, title, budget, check) in criteria {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let over = budget.is_some_and(|b| elapsed > Duration::from_secs(b));
        let budget_text = budget.map_or(String::new(), |b| format!(" / {b}s"));
        let (status, detail) = match result {
            Ok(_) if over => ("FAIL", "time budget exceeded".to_string()),
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {id:>2} {status} [{:.2}s{budget_text}] {title}: {detail}",
            elapsed.as_secs_f64()
        );
    }
    let elapsed = total.elapsed();
    let over = elapsed > Duration::from_secs(300);
    println!(
        "suite {} [{:.2}s / 300s]: {} of 11 criteria passed",
        if failures == 0 && !over {
            "PASS"
        } else {
            "FAIL"
        },
        elapsed.as_secs_f64(),
        11 - failures
    );
    if failures > 0 || over {
        std::process::exit(1);
    }
}
