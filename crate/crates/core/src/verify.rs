//! Cross-validation suites run by `ladder verify`.
//!
//! Each suite compares the closed forms against an independent route and
//! records every disagreement by name, so a failing report points at the
//! offending ladder and vertex pair.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{format_rational, int, rational_to_f64, Rational};
use crate::formulas::{self, ClosedForms, GForms};
use crate::invariants::{self, InvariantSet};
use crate::ladder::LadderSpec;
use crate::oracle::{self, LadderGraph};
use crate::reduction;
use crate::sequences::{self, GenFibCache};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    /// Closed forms against exact Laplacian solves and spanning-tree counts.
    Oracle,
    /// Closed forms against series/parallel/star reductions.
    Reduction,
    /// G_n forms against α forms.
    Gform,
    /// Sequence identities.
    Sequences,
    /// Definitional sums for θ and τ.
    Invariants,
    /// Floating-point spectral and trigonometric identities.
    Spectral,
    /// Asymptotic ratios and the Riemann-sum limit.
    Limits,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Oracle,
        Suite::Reduction,
        Suite::Gform,
        Suite::Sequences,
        Suite::Invariants,
        Suite::Spectral,
        Suite::Limits,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Reduction => "reduction",
            Suite::Gform => "gform",
            Suite::Sequences => "sequences",
            Suite::Invariants => "invariants",
            Suite::Spectral => "spectral",
            Suite::Limits => "limits",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub n_max: usize,
    /// Run only these suites; all when empty.
    pub suites: Vec<Suite>,
    /// Corrupt one closed-form table entry before the oracle comparison.
    pub inject_fault: bool,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            checks: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn check_eq<T: PartialEq + fmt::Debug>(&mut self, label: impl FnOnce() -> String, left: &T, right: &T) {
        self.check(left == right, || format!("{}: {left:?} != {right:?}", label()));
    }

    fn check_close(&mut self, label: impl FnOnce() -> String, value: f64, target: f64, tol: f64) {
        let err = (value - target).abs();
        self.check(err <= tol, || {
            format!("{}: |{value} - {target}| = {err:e} > {tol:e}", label())
        });
    }

    fn record(&mut self, label: &str, result: Result<()>) {
        if let Err(e) = result {
            self.checks += 1;
            self.failures.push(format!("{label}: {e}"));
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for report in &self.suites {
            let status = if report.passed() { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{status} {} ({} checks, {} failed)",
                report.suite,
                report.checks,
                report.failures.len()
            )?;
            for failure in &report.failures {
                writeln!(f, "  - {failure}")?;
            }
        }
        Ok(())
    }
}

pub fn run(options: &VerifyOptions) -> Result<VerifyReport> {
    if options.n_max < 1 {
        return Err(Error::Domain("--n-max must be at least 1".into()));
    }
    let selected: Vec<Suite> = if options.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        Suite::ALL
            .into_iter()
            .filter(|s| options.suites.contains(s))
            .collect()
    };
    let suites = selected
        .into_iter()
        .map(|suite| run_suite(suite, options))
        .collect();
    Ok(VerifyReport { suites })
}

fn run_suite(suite: Suite, options: &VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new(suite);
    let n_max = options.n_max;
    let result = match suite {
        Suite::Oracle => oracle_suite(&mut report, n_max, options.inject_fault),
        Suite::Reduction => reduction_suite(&mut report, n_max),
        Suite::Gform => gform_suite(&mut report, n_max),
        Suite::Sequences => sequence_suite(&mut report, n_max),
        Suite::Invariants => invariant_suite(&mut report, n_max),
        Suite::Spectral => spectral_suite(&mut report, n_max),
        Suite::Limits => limit_suite(&mut report),
    };
    report.record(suite.name(), result);
    report
}

fn spec(n: usize) -> Result<LadderSpec> {
    LadderSpec::new(n as i64)
}

fn oracle_suite(report: &mut SuiteReport, n_max: usize, inject_fault: bool) -> Result<()> {
    for n in 1..=n_max {
        let mut closed = formulas::resistance_table(spec(n)?)?;
        if inject_fault && n == n_max {
            let (a, b, value) = closed
                .entries()
                .next()
                .map(|(a, b, r)| (a, b, r + int(1)))
                .expect("table is nonempty");
            closed.set(a, b, value);
        }
        let graph = LadderGraph::with_n(n)?;
        let exact = oracle::oracle_table(&graph)?;
        for (a, b) in closed.mismatches(&exact) {
            report.failures.push(format!(
                "n={n}: closed form {} != oracle {} at ({a}, {b})",
                closed.get(a, b).map_or("-".into(), format_rational),
                exact.get(a, b).map_or("-".into(), format_rational),
            ));
        }
        report.checks += exact.len();
        report.check_eq(
            || format!("n={n}: Kirchhoff by oracle sum"),
            &exact.kirchhoff(),
            &formulas::kirchhoff(n)?,
        );
        report.check_eq(
            || format!("n={n}: spanning trees"),
            &oracle::spanning_trees(&graph),
            &sequences::gen_fib(n as i64)?,
        );
    }
    Ok(())
}

fn reduction_suite(report: &mut SuiteReport, n_max: usize) -> Result<()> {
    for n in 1..=n_max {
        let forms = ClosedForms::new(n)?;
        let closed = formulas::resistance_table(spec(n)?)?;
        let reduced = reduction::reduction_table(spec(n)?)?;
        for (a, b) in closed.mismatches(&reduced) {
            report
                .failures
                .push(format!("n={n}: closed form != reduction at ({a}, {b})"));
        }
        report.checks += closed.len();

        let z = reduction::z_by_recurrence(n)?;
        report.check_eq(|| format!("n={n}: z recurrence"), &z, &forms.z()?);
        let (x, y) = reduction::xy_by_recurrence(n)?;
        report.check_eq(|| format!("n={n}: x recurrence"), &x, &forms.x()?);
        report.check_eq(|| format!("n={n}: y recurrence"), &y, &forms.y()?);
        let t = reduction::t_by_product(n)?;
        report.check_eq(|| format!("n={n}: t product"), &t, &forms.t()?);
        report.check_eq(|| format!("n={n}: t = x - y"), &t, &(&x - &y));
        let t_next = reduction::t_by_product(n + 1)?;
        report.check_eq(|| format!("n={n}: t_(n+1)(z_n + 3) = t_n"), &(t_next * (&z + int(3))), &t);
        report.check_eq(
            || format!("n={n}: continued fraction"),
            &reduction::cf_convergent_z(n)?,
            &forms.z()?,
        );
        for i in 1..=n {
            let (to_p, to_q, rung) = reduction::corner_resistances_by_reduction(n, i)?;
            let (top_p, top_q) = forms.top_corner(i)?;
            report.check_eq(|| format!("n={n}, i={i}: r(p_n, p_i)"), &to_p, &top_p);
            report.check_eq(|| format!("n={n}, i={i}: r(p_n, q_i)"), &to_q, &top_q);
            report.check_eq(|| format!("n={n}, i={i}: r(p_i, q_i)"), &rung, &forms.rung(i)?);
        }
    }
    Ok(())
}

fn gform_suite(report: &mut SuiteReport, n_max: usize) -> Result<()> {
    for n in 1..=n_max {
        let alpha = ClosedForms::new(n)?;
        let g = GForms::new(n)?;
        report.check_eq(|| format!("n={n}: t"), &g.t(), &alpha.t()?);
        report.check_eq(|| format!("n={n}: z"), &g.z(), &alpha.z()?);
        report.check_eq(|| format!("n={n}: x"), &g.x(), &alpha.x()?);
        report.check_eq(|| format!("n={n}: y"), &g.y(), &alpha.y()?);
        report.check_eq(|| format!("n={n}: Kf"), &g.kirchhoff(), &alpha.kirchhoff()?);
        for i in 1..=n {
            for j in 1..=i {
                report.check_eq(
                    || format!("n={n}: r(p{i}, p{j})"),
                    &g.same_side(i, j)?,
                    &alpha.same_side(i, j)?,
                );
                report.check_eq(
                    || format!("n={n}: r(q{i}, p{j})"),
                    &g.cross_side(i, j)?,
                    &alpha.cross_side(i, j)?,
                );
            }
        }
        report.check_eq(
            || format!("n={n}: invariants"),
            &invariants::invariants_gfib(n)?,
            &InvariantSet::closed(n)?,
        );
        let (sum, plus, minus) = formulas::corner_combinations(n)?;
        let (x, y, z) = (alpha.x()?, alpha.y()?, alpha.z()?);
        report.check_eq(|| format!("n={n}: x + y - z"), &(&x + &y - &z), &sum);
        report.check_eq(|| format!("n={n}: x - y + z"), &(&x - &y + &z), &plus);
        report.check_eq(|| format!("n={n}: -x + y + z"), &(-&x + &y + &z), &minus);
    }
    Ok(())
}

fn sequence_suite(report: &mut SuiteReport, n_max: usize) -> Result<()> {
    let top = n_max.max(10);
    let mut cache = GenFibCache::with_max(2 * top + 1);
    let listed = [0i64, 1, 4, 15, 56, 209, 780, 2911, 10864, 40545, 151316];
    for (k, &v) in listed.iter().enumerate() {
        report.check_eq(|| format!("G_{k} listed"), cache.get(k), &BigInt::from(v));
    }
    let cheb = sequences::chebyshev_u2_table(2 * top);
    for n in 0..=top {
        let g = cache.get(n).clone();
        report.check_eq(|| format!("Binet G_{n}"), &sequences::gen_fib_binet(n as i64)?, &g);
        report.check_eq(
            || format!("g_{n} = alpha^{n}"),
            &sequences::alpha_pow_via_g(n as i64)?,
            &crate::field::Surd3::alpha().pow(n as i64)?,
        );
        if n >= 1 {
            let g2n = cache.get(2 * n).clone();
            report.check_eq(|| format!("G_{{2*{n}}}"), &sequences::gen_fib_double(n as i64)?, &g2n);
            let (u, du) = &cheb[n - 1];
            report.check_eq(|| format!("U_{}(2) = G_{n}", n - 1), u, &g);
            let lhs = 6 * du * u;
            let rhs = BigInt::from(n) * &cheb[2 * n - 1].0 - 4 * u * u;
            report.check_eq(|| format!("derivative identity at n={n}"), &lhs, &rhs);
        }
    }
    Ok(())
}

fn invariant_suite(report: &mut SuiteReport, n_max: usize) -> Result<()> {
    for n in 1..=n_max {
        let theta = invariants::theta_closed(n)?;
        report.check_eq(
            || format!("n={n}: theta definition"),
            &invariants::theta_definition(n)?,
            &theta,
        );
        let tau = invariants::tau_closed(n)?;
        for s in spec(n)?.vertices() {
            report.check_eq(
                || format!("n={n}: tau edge sum at {s}"),
                &invariants::tau_edge_sum(n, s)?,
                &tau,
            );
        }
        if n >= 2 {
            let (lhs, rhs) = invariants::theta_kirchhoff_identity(n)?;
            report.check_eq(|| format!("n={n}: 2Kf - theta identity"), &lhs, &rhs);
        }
    }
    Ok(())
}

/// Relative agreement of a float with an exact value.
fn relative_error(value: f64, exact: &Rational) -> f64 {
    let target = rational_to_f64(exact);
    ((value - target) / target).abs()
}

fn spectral_suite(report: &mut SuiteReport, n_max: usize) -> Result<()> {
    let mut cache = GenFibCache::with_max(2 * n_max + 1);
    for n in 1..=n_max {
        let kf = formulas::kirchhoff(n)?;
        let eig = oracle::eigen_kf(n)?;
        report.check(relative_error(eig, &kf) <= 1e-9, || {
            format!("n={n}: eigenvalue Kf {eig} vs {}", format_rational(&kf))
        });
        let eq21 = oracle::kf_shifted_sum(n)?;
        report.check(relative_error(eq21, &kf) <= 1e-9, || {
            format!("n={n}: shifted-sum Kf {eq21} vs {}", format_rational(&kf))
        });
        let gn = cache.rational(n);
        let g2n = cache.rational(2 * n);
        let rhs = Rational::one() / int(3) + int(n as i64) * &g2n / (int(6) * &gn * &gn);
        report.check_close(
            || format!("n={n}: shifted trig sum"),
            oracle::trig_sum_shifted(n)?,
            rational_to_f64(&rhs),
            1e-9,
        );
        let nf = n as f64;
        report.check_close(
            || format!("n={n}: inverse sin^2 sum"),
            oracle::trig_sum_inverse_sin2(n)?,
            2.0 * (nf * nf - 1.0) / 3.0,
            1e-8,
        );
        // hyperbolic-cotangent forms
        let z = formulas::corner_z(n)?;
        report.check(relative_error(oracle::z_coth(n)?, &z) <= 1e-9, || {
            format!("n={n}: coth form of z")
        });
        report.check(relative_error(oracle::kirchhoff_coth(n)?, &kf) <= 1e-9, || {
            format!("n={n}: coth form of Kf")
        });
        let ratio = &g2n / (&gn * &gn);
        report.check(
            relative_error(oracle::g_double_ratio_coth(n)?, &ratio) <= 1e-9,
            || format!("n={n}: coth form of G_2n/G_n^2"),
        );
    }
    Ok(())
}

fn limit_suite(report: &mut SuiteReport) -> Result<()> {
    let limits = invariants::ratio_limits();
    let near = invariants::invariant_ratios(100)?;
    let far = invariants::invariant_ratios(1000)?;
    for k in 0..6 {
        let label = invariants::RATIO_LABELS[k];
        report.check_close(|| format!("{label} at n=1000"), far[k], limits[k], 1e-2);
        let (e_near, e_far) = ((near[k] - limits[k]).abs(), (far[k] - limits[k]).abs());
        report.check(e_far < e_near, || {
            format!("{label}: error {e_far:e} at n=1000 not below {e_near:e} at n=100")
        });
    }
    let target = std::f64::consts::PI / (2.0 * 3f64.sqrt());
    report.check_close(|| "Riemann sum at n=2000".into(), oracle::riemann_left(2000)?, target, 1e-3);
    Ok(())
}
