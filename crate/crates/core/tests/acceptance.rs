//! Acceptance suite. Prints one PASS/FAIL line per criterion; run with
//! `cargo test -p ladder-resistance --test acceptance -- --nocapture`.

use std::f64::consts::PI;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use ladder_resistance::field::{int, parse_rational, rational_to_f64, ratio, Surd3};
use ladder_resistance::formulas::{self, ClosedForms, GForms};
use ladder_resistance::invariants::{self, InvariantSet};
use ladder_resistance::ladder::LadderSpec;
use ladder_resistance::oracle::{self, LadderGraph};
use ladder_resistance::reduction;
use ladder_resistance::sequences::{self, GenFibCache};
use num_bigint::BigInt;
use rayon::prelude::*;

type Check = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn lib<T>(r: ladder_resistance::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn criterion_1() -> Check {
    let expected = [
        "1", "5", "71/5", "214/7", "11725/209", "6031/65", "415177/2911", "140972/679",
    ];
    for (k, text) in expected.iter().enumerate() {
        let n = k + 1;
        let kf = lib(formulas::kirchhoff(n))?;
        ensure(kf == lib(parse_rational(text))?, || format!("Kf({n}) = {kf}, want {text}"))?;
    }
    Ok("Kf(1..8) exact".into())
}

fn criterion_2() -> Check {
    let expected = ["1", "3/4", "11/15", "41/56", "153/209", "571/780"];
    for (k, text) in expected.iter().enumerate() {
        let n = k + 1;
        let z = lib(formulas::corner_z(n))?;
        ensure(z == lib(parse_rational(text))?, || format!("z_{n} = {z}, want {text}"))?;
    }
    Ok("z_1..z_6 exact".into())
}

fn criterion_3() -> Check {
    let solves: usize = (1..=25usize)
        .into_par_iter()
        .map(|n| -> Result<usize, String> {
            let spec = lib(LadderSpec::new(n as i64))?;
            let closed = lib(formulas::resistance_table(spec))?;
            let exact = lib(oracle::oracle_table(&LadderGraph::new(spec)))?;
            let bad = closed.mismatches(&exact);
            ensure(bad.is_empty(), || format!("n={n}: mismatch at {:?}", bad[0]))?;
            Ok(exact.len())
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok(format!("{solves} pairs agree with the Laplacian solve for n <= 25"))
}

fn criterion_4() -> Check {
    let mut checks = 0;
    for n in 1..=15usize {
        let forms = lib(ClosedForms::new(n))?;
        let reducer = lib(reduction::Reducer::new(n))?;
        for i in 1..=n {
            let (to_p, to_q, rung) = lib(reduction::corner_resistances_by_reduction(n, i))?;
            let (top_p, top_q) = lib(forms.top_corner(i))?;
            ensure(to_p == top_p && to_q == top_q, || format!("n={n}: corner values at i={i}"))?;
            ensure(rung == lib(forms.rung(i))?, || format!("n={n}: rung at i={i}"))?;
            for j in 1..=i {
                let (same, cross) = lib(reducer.pair(i, j))?;
                ensure(same == lib(forms.same_side(i, j))?, || format!("n={n}: r(p{i}, p{j})"))?;
                ensure(cross == lib(forms.cross_side(i, j))?, || format!("n={n}: r(q{i}, p{j})"))?;
                checks += 2;
            }
            checks += 3;
        }
    }
    Ok(format!("{checks} reduction values agree for n <= 15"))
}

fn criterion_5() -> Check {
    let listed = [0i64, 1, 4, 15, 56, 209, 780, 2911, 10864, 40545, 151316];
    for (k, &v) in listed.iter().enumerate() {
        ensure(lib(sequences::gen_fib(k as i64))? == BigInt::from(v), || format!("G_{k}"))?;
    }
    for n in 1..=15usize {
        let trees = oracle::spanning_trees(&lib(LadderGraph::with_n(n))?);
        ensure(trees == lib(sequences::gen_fib(n as i64))?, || format!("spanning trees n={n}"))?;
    }
    let mut cache = GenFibCache::with_max(201);
    for n in 0..=100usize {
        let g = cache.get(n).clone();
        let k = n as i64;
        ensure(lib(sequences::gen_fib_binet(k))? == g, || format!("Binet n={n}"))?;
        ensure(
            lib(sequences::alpha_pow_via_g(k))? == lib(Surd3::alpha().pow(k))?,
            || format!("alpha power n={n}"),
        )?;
        if n >= 1 {
            ensure(lib(sequences::gen_fib_double(k))? == *cache.get(2 * n), || {
                format!("G_2n n={n}")
            })?;
        }
    }
    let cheb = sequences::chebyshev_u2_table(100);
    for n in 1..=50usize {
        let (u, du) = &cheb[n - 1];
        let rhs = BigInt::from(n) * &cheb[2 * n - 1].0 - 4 * u * u;
        ensure(6 * du * u == rhs, || format!("Chebyshev derivative n={n}"))?;
    }
    Ok("listed values, spanning trees, Binet, powers, doubling, derivative".into())
}

fn criterion_6() -> Check {
    for n in 1..=50usize {
        let alpha = lib(ClosedForms::new(n))?;
        let g = lib(GForms::new(n))?;
        ensure(g.t() == lib(alpha.t())?, || format!("t, n={n}"))?;
        ensure(g.z() == lib(alpha.z())?, || format!("z, n={n}"))?;
        ensure(g.x() == lib(alpha.x())?, || format!("x, n={n}"))?;
        ensure(g.y() == lib(alpha.y())?, || format!("y, n={n}"))?;
        ensure(g.kirchhoff() == lib(alpha.kirchhoff())?, || format!("Kf, n={n}"))?;
        ensure(
            lib(invariants::invariants_gfib(n))? == lib(InvariantSet::closed(n))?,
            || format!("invariants, n={n}"),
        )?;
        if n <= 30 {
            for i in 1..=n {
                for j in 1..=i {
                    ensure(
                        lib(g.same_side(i, j))? == lib(alpha.same_side(i, j))?
                            && lib(g.cross_side(i, j))? == lib(alpha.cross_side(i, j))?,
                        || format!("pair ({i}, {j}), n={n}"),
                    )?;
                }
            }
        }
    }
    Ok("G forms equal alpha forms for n <= 50, tables for n <= 30".into())
}

fn criterion_7() -> Check {
    for n in 1..=20usize {
        let theta = lib(invariants::theta_closed(n))?;
        ensure(lib(invariants::theta_definition(n))? == theta, || format!("theta n={n}"))?;
        let tau = lib(invariants::tau_closed(n))?;
        for s in lib(LadderSpec::new(n as i64))?.vertices() {
            ensure(lib(invariants::tau_edge_sum(n, s))? == tau, || format!("tau n={n} at {s}"))?;
        }
        if n >= 2 {
            let (lhs, rhs) = lib(invariants::theta_kirchhoff_identity(n))?;
            ensure(lhs == rhs, || format!("Kf identity n={n}"))?;
        }
    }
    Ok("theta, tau at every base point and the Kf identity for n <= 20".into())
}

fn criterion_8() -> Check {
    let mut cache = GenFibCache::with_max(401);
    let (mut worst_eig, mut worst_inv, mut worst_shift) = (0f64, 0f64, 0f64);
    for n in 1..=200usize {
        let kf = rational_to_f64(&lib(formulas::kirchhoff(n))?);
        let eig = ((lib(oracle::eigen_kf(n))? - kf) / kf).abs();
        let nf = n as f64;
        let inv = (lib(oracle::trig_sum_inverse_sin2(n))? - 2.0 * (nf * nf - 1.0) / 3.0).abs();
        let gn = cache.rational(n);
        let target = ratio(1, 3) + int(n as i64) * cache.rational(2 * n) / (int(6) * &gn * &gn);
        let shift = (lib(oracle::trig_sum_shifted(n))? - rational_to_f64(&target)).abs();
        ensure(eig <= 1e-9, || format!("eigenvalue Kf n={n}: relative error {eig:e}"))?;
        ensure(inv <= 1e-8, || format!("inverse sin^2 sum n={n}: error {inv:e}"))?;
        ensure(shift <= 1e-9, || format!("shifted sum n={n}: error {shift:e}"))?;
        worst_eig = worst_eig.max(eig);
        worst_inv = worst_inv.max(inv);
        worst_shift = worst_shift.max(shift);
    }
    Ok(format!(
        "worst errors {worst_eig:.1e} / {worst_inv:.1e} / {worst_shift:.1e} for n <= 200"
    ))
}

fn criterion_9() -> Check {
    let limits = invariants::ratio_limits();
    let near = lib(invariants::invariant_ratios(100))?;
    let far = lib(invariants::invariant_ratios(1000))?;
    for k in 0..6 {
        let label = invariants::RATIO_LABELS[k];
        let (e100, e1000) = ((near[k] - limits[k]).abs(), (far[k] - limits[k]).abs());
        ensure(e1000 <= 1e-2, || format!("{label} at n=1000 off by {e1000:e}"))?;
        ensure(e1000 < e100, || format!("{label}: error {e100:e} -> {e1000:e} not decreasing"))?;
    }
    let riemann = (lib(oracle::riemann_left(2000))? - PI / (2.0 * 3f64.sqrt())).abs();
    ensure(riemann <= 1e-3, || format!("Riemann sum off by {riemann:e}"))?;
    Ok(format!("six ratios converge, Riemann sum off by {riemann:.1e}"))
}

fn criterion_10() -> Check {
    for n in 1..=40usize {
        ensure(
            lib(reduction::cf_convergent_z(n))? == lib(formulas::corner_z(n))?,
            || format!("n={n}"),
        )?;
    }
    Ok("convergents equal z_n for n <= 40".into())
}

fn ladder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ladder"))
        .args(args)
        .output()
        .expect("run ladder binary")
}

fn expect_stdout(args: &[&str], want: &str) -> Result<(), String> {
    let out = ladder(args);
    let got = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.code() == Some(0) && got == want, || {
        format!("`ladder {}` gave {got:?} (status {:?}), want {want:?}", args.join(" "), out.status)
    })
}

fn expect_code(args: &[&str], code: i32) -> Result<Output, String> {
    let out = ladder(args);
    ensure(out.status.code() == Some(code), || {
        format!("`ladder {}` exited {:?}, want {code}", args.join(" "), out.status.code())
    })?;
    Ok(out)
}

fn json_field(args: &[&str], key: &str) -> Result<serde_json::Value, String> {
    let out = expect_code(args, 0)?;
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    Ok(value[key].clone())
}

fn criterion_11() -> Check {
    expect_stdout(&["resist", "--n", "3", "--pair", "p3,q3"], "11/15\n")?;
    expect_stdout(&["resist", "--n", "2", "--pair", "p1,q2"], "1\n")?;
    expect_stdout(&["resist", "--n", "1", "--pair", "p1,p1"], "0\n")?;
    expect_stdout(&["kirchhoff", "--n", "7"], "415177/2911\n")?;
    expect_stdout(&["kirchhoff", "--n", "1"], "1\n")?;
    expect_stdout(&["kirchhoff", "--n", "2", "--float"], "5.000000000000\n")?;
    expect_stdout(
        &["sequence", "--kind", "gfib", "--max", "10"],
        "0, 1, 4, 15, 56, 209, 780, 2911, 10864, 40545, 151316\n",
    )?;
    expect_stdout(&["sequence", "--kind", "cheb", "--max", "3"], "1, 4, 15, 56\n")?;
    expect_stdout(&["sequence", "--kind", "gfib", "--max", "0"], "0\n")?;

    let two = ["invariants", "--n", "2", "--format", "json"];
    for (key, want) in [("tau", "1/3"), ("theta", "0"), ("lambda", "1/3")] {
        ensure(json_field(&two, key)? == want, || format!("invariants n=2 {key}"))?;
    }
    let one = ["invariants", "--n", "1", "--format", "json"];
    ensure(json_field(&one, "tau")? == "1/4", || "invariants n=1 tau".into())?;
    ensure(json_field(&one, "phi")? == "undefined (genus 0)", || "invariants n=1 phi".into())?;
    let three = ["invariants", "--n", "3", "--format", "json"];
    ensure(json_field(&three, "theta")? == "6/5", || "invariants n=3 theta".into())?;

    let csv = expect_code(&["resist", "--n", "4", "--all", "--format", "csv"], 0)?;
    let text = String::from_utf8_lossy(&csv.stdout);
    let again = lib(ladder_resistance::cli::rerender_csv(4, &text))?;
    ensure(again == text, || "CSV table does not round-trip".into())?;

    let verify = expect_code(&["verify", "--n-max", "10"], 0)?;
    let report = String::from_utf8_lossy(&verify.stdout);
    ensure(!report.contains("FAIL"), || format!("verify reported a failure:\n{report}"))?;
    let spectral = expect_code(&["verify", "--n-max", "10", "--suite", "spectral"], 0)?;
    let report = String::from_utf8_lossy(&spectral.stdout);
    ensure(report.lines().count() == 1 && report.contains("spectral"), || {
        format!("suite filter ignored:\n{report}")
    })?;
    let fault = expect_code(&["verify", "--n-max", "4", "--suite", "oracle", "--inject-fault"], 1)?;
    let report = String::from_utf8_lossy(&fault.stdout);
    ensure(report.contains("at (p1, p2)"), || format!("fault not named:\n{report}"))?;

    expect_code(&["resist", "--n", "0", "--pair", "p1,p1"], 2)?;
    expect_code(&["resist", "--n", "3", "--pair", "p4,q1"], 2)?;
    expect_code(&["resist", "--n", "3", "--pair", "x1"], 2)?;
    expect_code(&["kirchhoff"], 2)?;
    expect_code(&["verify", "--n-max", "0"], 2)?;
    Ok("documented outputs, CSV round trip and exit codes 0/1/2".into())
}

#[test]
fn acceptance() {
    let criteria: [(fn() -> Check, Duration); 11] = [
        (criterion_1, Duration::from_secs(1)),
        (criterion_2, Duration::from_secs(1)),
        (criterion_3, Duration::from_secs(120)),
        (criterion_4, Duration::from_secs(30)),
        (criterion_5, Duration::from_secs(30)),
        (criterion_6, Duration::from_secs(60)),
        (criterion_7, Duration::from_secs(60)),
        (criterion_8, Duration::from_secs(10)),
        (criterion_9, Duration::from_secs(10)),
        (criterion_10, Duration::from_secs(1)),
        (criterion_11, Duration::from_secs(120)),
    ];
    let mut failed = Vec::new();
    for (k, (run, budget)) in criteria.into_iter().enumerate() {
        let number = k + 1;
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(note) if elapsed <= budget => Ok(note),
            Ok(note) => Err(format!("{note}, but took longer than {budget:?}")),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(note) => println!("PASS criterion {number}: {note} ({elapsed:.2?})"),
            Err(e) => {
                println!("FAIL criterion {number}: {e} ({elapsed:.2?})");
                failed.push(number);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

