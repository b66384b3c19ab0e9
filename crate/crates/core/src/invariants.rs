//! Admissible metrized-graph invariants τ, θ, λ, φ, ε and Z of L_n with
//! unit edge lengths.
//!
//! Closed forms are rational functions of n plus a multiple of the bracket
//! `1 − 2/(1 − α^{2n})`; θ and τ also have definitional sums over vertex
//! pairs and edges, computed here from the pairwise resistances.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::field::{format_rational, int, rational_to_f64, ratio, Rational, Surd3};
use crate::formulas::{ClosedForms, GForms};
use crate::ladder::{LadderSpec, VertexRef};
use crate::oracle::LadderGraph;

fn check_n(n: usize) -> Result<()> {
    if n < 1 {
        return Err(domain("ladder needs n >= 1"));
    }
    Ok(())
}

fn check_genus(n: usize, what: &str) -> Result<()> {
    check_n(n)?;
    if n < 2 {
        return Err(domain(format!("{what} is undefined for genus 0 (n = 1)")));
    }
    Ok(())
}

/// `rational + coefficient·(1/√3)·bracket`, which must come out rational.
fn with_bracket(n: usize, rational: Rational, coefficient: Rational) -> Result<Rational> {
    let forms = ClosedForms::new(n)?;
    let inv_sqrt3 = Surd3::new(int(0), ratio(1, 3));
    (forms.bracket() * inv_sqrt3 * coefficient + rational).into_rational()
}

fn q(n: usize) -> Rational {
    int(n as i64)
}

pub fn theta_closed(n: usize) -> Result<Rational> {
    check_n(n)?;
    let m = q(n);
    let lead = int(2) * (&m - int(2)) / int(3);
    let poly = &m * &m - int(4) * &m + int(10);
    // −(n − 6)√3·bracket = −3(n − 6)·(bracket/√3)
    let coefficient = -(int(3) * (&m - int(6)));
    let inner = with_bracket(n, poly, coefficient)?;
    Ok(lead * inner)
}

pub fn tau_closed(n: usize) -> Result<Rational> {
    check_n(n)?;
    let m = q(n);
    with_bracket(n, (int(9) * &m - int(20)) / int(36), (&m - int(6)) / int(6))
}

pub fn lambda_closed(n: usize) -> Result<Rational> {
    check_n(n)?;
    let m = q(n);
    Ok(&m * (&m + int(4)) * (&m - int(1)) / (int(12) * (int(2) * &m - int(1))))
}

pub fn phi_closed(n: usize) -> Result<Rational> {
    check_genus(n, "phi")?;
    let m = q(n);
    let g = &m - int(1);
    let cubic = int(3) * &m * &m * &m - int(9) * &m * &m - int(5) * &m + int(1);
    with_bracket(
        n,
        cubic / (int(18) * &g),
        (&m - int(6)) * (int(2) * &m - int(1)) / (int(6) * &g),
    )
}

pub fn epsilon_closed(n: usize) -> Result<Rational> {
    check_genus(n, "epsilon")?;
    let m = q(n);
    let g = &m - int(1);
    let quad = int(3) * &m * &m - int(3) * &m + int(10);
    with_bracket(
        n,
        quad * (&m - int(2)) / (int(9) * &g),
        -((&m - int(2)) * (&m - int(6)) / (int(3) * &g)),
    )
}

pub fn zcap_closed(n: usize) -> Result<Rational> {
    check_genus(n, "Z")?;
    let m = q(n);
    let g2 = (&m - int(1)) * (&m - int(1));
    with_bracket(
        n,
        (int(3) * &m * &m - int(13)) * &m / (int(36) * &g2),
        &m * (&m - int(6)) / (int(12) * &g2),
    )
}

/// θ = Σ over ordered vertex pairs of (v(p) − 2)(v(q) − 2)·r(p, q).
pub fn theta_definition(n: usize) -> Result<Rational> {
    check_n(n)?;
    let graph = LadderGraph::with_n(n)?;
    let forms = ClosedForms::new(n)?;
    let weighted: Vec<(VertexRef, i64)> = graph
        .vertices()
        .iter()
        .map(|&v| (v, graph.degree(v) as i64 - 2))
        .filter(|&(_, w)| w != 0)
        .collect();
    let mut total = int(0);
    for &(a, wa) in &weighted {
        for &(b, wb) in &weighted {
            total += forms.resistance(a, b)? * int(wa * wb);
        }
    }
    Ok(total)
}

/// τ from edge resistances, based at `s`:
/// (1/12)Σ_{p∼q}(1 − r(p,q))² + (1/4)Σ_{p∼q}(r(s,p) − r(s,q))², one term
/// per undirected edge.
pub fn tau_edge_sum(n: usize, s: VertexRef) -> Result<Rational> {
    check_n(n)?;
    let spec = LadderSpec::new(n as i64)?;
    spec.check(s)?;
    let graph = LadderGraph::new(spec);
    let forms = ClosedForms::new(n)?;
    let mut local = int(0);
    let mut based = int(0);
    for &(p, q) in graph.edges() {
        let gap = int(1) - forms.resistance(p, q)?;
        local += &gap * &gap;
        let diff = forms.resistance(s, p)? - forms.resistance(s, q)?;
        based += &diff * &diff;
    }
    Ok(local / int(12) + based / int(4))
}

/// Both sides of 2Kf − θ = 8Σ_p r(p, p_n) − 4[r(p_n,p_1) + r(p_n,q_1) + r(p_n,q_n)],
/// left side from the closed forms of Kf and θ, right side from pairwise
/// resistances.
pub fn theta_kirchhoff_identity(n: usize) -> Result<(Rational, Rational)> {
    check_n(n)?;
    let forms = ClosedForms::new(n)?;
    let lhs = int(2) * forms.kirchhoff()? - theta_closed(n)?;
    let spec = LadderSpec::new(n as i64)?;
    let top = VertexRef::p(n);
    let mut sum = int(0);
    for v in spec.vertices() {
        sum += forms.resistance(v, top)?;
    }
    let corners = forms.resistance(top, VertexRef::p(1))?
        + forms.resistance(top, VertexRef::q(1))?
        + forms.resistance(top, VertexRef::q(n))?;
    Ok((lhs, int(8) * sum - int(4) * corners))
}

/// The six invariants of one ladder. φ, ε and Z are absent at n = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSet {
    pub n: usize,
    pub tau: Rational,
    pub theta: Rational,
    pub lambda: Rational,
    pub phi: Option<Rational>,
    pub epsilon: Option<Rational>,
    pub zcap: Option<Rational>,
}

impl InvariantSet {
    /// From the α closed forms.
    pub fn closed(n: usize) -> Result<Self> {
        check_n(n)?;
        let higher = n >= 2;
        Ok(InvariantSet {
            n,
            tau: tau_closed(n)?,
            theta: theta_closed(n)?,
            lambda: lambda_closed(n)?,
            phi: higher.then(|| phi_closed(n)).transpose()?,
            epsilon: higher.then(|| epsilon_closed(n)).transpose()?,
            zcap: higher.then(|| zcap_closed(n)).transpose()?,
        })
    }

    /// Named fields in a stable order: tau, theta, lambda, phi, epsilon, zcap.
    pub fn fields(&self) -> [(&'static str, Option<&Rational>); 6] {
        [
            ("tau", Some(&self.tau)),
            ("theta", Some(&self.theta)),
            ("lambda", Some(&self.lambda)),
            ("phi", self.phi.as_ref()),
            ("epsilon", self.epsilon.as_ref()),
            ("zcap", self.zcap.as_ref()),
        ]
    }
}

/// Text used for invariants that do not exist at genus zero.
pub const UNDEFINED_GENUS_ZERO: &str = "undefined (genus 0)";

#[derive(Serialize)]
struct InvariantJson {
    n: usize,
    total_length: usize,
    genus: usize,
    tau: String,
    theta: String,
    lambda: String,
    phi: String,
    epsilon: String,
    zcap: String,
}

/// JSON object with n, total_length, genus and the six invariants rendered
/// by `render` (absent ones as [`UNDEFINED_GENUS_ZERO`]).
pub fn invariants_json(set: &InvariantSet, render: &dyn Fn(&Rational) -> String) -> serde_json::Value {
    let spec = LadderSpec::new(set.n as i64).expect("n >= 1");
    let show = |v: Option<&Rational>| v.map_or_else(|| UNDEFINED_GENUS_ZERO.to_string(), render);
    serde_json::to_value(InvariantJson {
        n: set.n,
        total_length: spec.total_length(),
        genus: spec.genus(),
        tau: render(&set.tau),
        theta: render(&set.theta),
        lambda: render(&set.lambda),
        phi: show(set.phi.as_ref()),
        epsilon: show(set.epsilon.as_ref()),
        zcap: show(set.zcap.as_ref()),
    })
    .expect("plain struct")
}

pub fn invariants_exact_json(set: &InvariantSet) -> serde_json::Value {
    invariants_json(set, &format_rational)
}

/// The invariants from their G_n forms, with R = G_{2n}/G_n².
pub fn invariants_gfib(n: usize) -> Result<InvariantSet> {
    check_n(n)?;
    let r = GForms::new(n)?.ratio_2n();
    let m = q(n);
    let six = &m - int(6);
    let half_term = &six * &r / int(2);
    let tau = (int(9) * &m - int(20)) / int(36) - &six * &r / int(36);
    let theta = int(2) * (&m - int(2)) / int(3) * (&m * &m - int(4) * &m + int(10) + &half_term);
    let lambda = lambda_closed(n)?;
    let (phi, epsilon, zcap) = if n >= 2 {
        let g = &m - int(1);
        let cubic = int(3) * &m * &m * &m - int(9) * &m * &m - int(5) * &m + int(1);
        let phi = cubic / (int(18) * &g)
            - &six * (int(2) * &m - int(1)) * &r / (int(36) * &g);
        let epsilon = (&m - int(2)) / (int(9) * &g)
            * (int(3) * &m * &m - int(3) * &m + int(10) + &half_term);
        let zcap = &m / (int(36) * &g * &g) * (int(3) * &m * &m - int(13) - &half_term);
        (Some(phi), Some(epsilon), Some(zcap))
    } else {
        (None, None, None)
    };
    Ok(InvariantSet {
        n,
        tau,
        theta,
        lambda,
        phi,
        epsilon,
        zcap,
    })
}

/// Labels of [`invariant_ratios`], in order.
pub const RATIO_LABELS: [&str; 6] = [
    "tau/l",
    "Z/l",
    "phi/(g l)",
    "epsilon/(g l)",
    "lambda/(g l)",
    "theta/(g^2 l)",
];

/// Limits of the six ratios as n → ∞.
pub fn ratio_limits() -> [f64; 6] {
    let sqrt3 = 3f64.sqrt();
    [
        (9.0 - 2.0 * sqrt3) / 108.0,
        1.0 / 36.0,
        1.0 / 18.0,
        1.0 / 9.0,
        1.0 / 72.0,
        2.0 / 9.0,
    ]
}

/// τ/ℓ, Z/ℓ, φ/(gℓ), ε/(gℓ), λ/(gℓ), θ/(g²ℓ) with ℓ = 3n − 2, g = n − 1.
pub fn invariant_ratios(n: usize) -> Result<[f64; 6]> {
    check_genus(n, "invariant ratios")?;
    let spec = LadderSpec::new(n as i64)?;
    let length = int(spec.total_length() as i64);
    let genus = int(spec.genus() as i64);
    let set = InvariantSet::closed(n)?;
    let by_length = |v: &Rational| rational_to_f64(&(v / &length));
    let by_genus = |v: &Rational| rational_to_f64(&(v / (&length * &genus)));
    Ok([
        by_length(&set.tau),
        by_length(set.zcap.as_ref().expect("n >= 2")),
        by_genus(set.phi.as_ref().expect("n >= 2")),
        by_genus(set.epsilon.as_ref().expect("n >= 2")),
        by_genus(&set.lambda),
        rational_to_f64(&(&set.theta / (&length * &genus * &genus))),
    ])
}
