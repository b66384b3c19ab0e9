//! Ground truth that never touches the closed forms.
//!
//! Effective resistances come from exact rational solves of the grounded
//! Laplacian, spanning-tree counts from a fraction-free determinant, and the
//! spectral and trigonometric identities are evaluated in `f64`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::field::{int, Rational};
use crate::ladder::{LadderSpec, Side, VertexRef};
use crate::table::{ResistanceTable, TableSource};

/// L_n as an explicit graph with unit edges.
///
/// Vertices are numbered in rung order `p1, q1, p2, q2, …`, which keeps the
/// Laplacian banded (every edge joins vertices at most two apart).
#[derive(Clone, Debug)]
pub struct LadderGraph {
    n: usize,
    vertices: Vec<VertexRef>,
    edges: Vec<(VertexRef, VertexRef)>,
}

impl LadderGraph {
    pub fn new(spec: LadderSpec) -> Self {
        let n = spec.n();
        let vertices = (1..=n)
            .flat_map(|i| [VertexRef::p(i), VertexRef::q(i)])
            .collect();
        let mut edges = Vec::with_capacity(3 * n - 2);
        for i in 1..=n {
            edges.push((VertexRef::p(i), VertexRef::q(i)));
            if i < n {
                edges.push((VertexRef::p(i), VertexRef::p(i + 1)));
                edges.push((VertexRef::q(i), VertexRef::q(i + 1)));
            }
        }
        LadderGraph { n, vertices, edges }
    }

    pub fn with_n(n: usize) -> Result<Self> {
        Ok(Self::new(LadderSpec::new(n as i64)?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> LadderSpec {
        LadderSpec::new(self.n as i64).expect("n >= 1")
    }

    pub fn vertices(&self) -> &[VertexRef] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(VertexRef, VertexRef)] {
        &self.edges
    }

    /// Position of `v` in [`LadderGraph::vertices`].
    pub fn position(&self, v: VertexRef) -> Result<usize> {
        if !(1..=self.n).contains(&v.index) {
            return Err(Error::InvalidVertex(format!("{v} is not a vertex of L_{}", self.n)));
        }
        let offset = match v.side {
            Side::LeftP => 0,
            Side::RightQ => 1,
        };
        Ok(2 * (v.index - 1) + offset)
    }

    pub fn degree(&self, v: VertexRef) -> usize {
        self.edges
            .iter()
            .filter(|(a, b)| *a == v || *b == v)
            .count()
    }
}

/// Combinatorial Laplacian in the vertex order of [`LadderGraph::vertices`].
pub fn laplacian(g: &LadderGraph) -> Vec<Vec<i64>> {
    let size = g.vertices.len();
    let mut m = vec![vec![0i64; size]; size];
    for &(a, b) in &g.edges {
        let (i, j) = (g.position(a).expect("own vertex"), g.position(b).expect("own vertex"));
        m[i][i] += 1;
        m[j][j] += 1;
        m[i][j] -= 1;
        m[j][i] -= 1;
    }
    m
}

/// Solve `A x = b` over the rationals by Gaussian elimination, taking the
/// first nonzero pivot in each column. Zero entries are skipped, so banded
/// systems cost little more than their bandwidth.
pub fn solve_exact(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Result<Vec<Rational>> {
    let size = b.len();
    if a.len() != size || a.iter().any(|row| row.len() != size) {
        return Err(domain("system must be square and match the right-hand side"));
    }
    for col in 0..size {
        let pivot = (col..size)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::Singular)?;
        if pivot != col {
            a.swap(pivot, col);
            b.swap(pivot, col);
        }
        let (upper, lower) = a.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for (offset, row) in lower.iter_mut().enumerate() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for k in col..size {
                if !pivot_row[k].is_zero() {
                    row[k] -= &factor * &pivot_row[k];
                }
            }
            let r = col + 1 + offset;
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    let mut x = vec![Rational::zero(); size];
    for row in (0..size).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..size {
            if !a[row][k].is_zero() {
                acc -= &a[row][k] * &x[k];
            }
        }
        x[row] = acc / &a[row][row];
    }
    Ok(x)
}

/// Effective resistance by grounding `b` and injecting a unit current at `a`.
pub fn resistance_exact(g: &LadderGraph, a: VertexRef, b: VertexRef) -> Result<Rational> {
    let ia = g.position(a)?;
    let ib = g.position(b)?;
    if ia == ib {
        return Ok(int(0));
    }
    let lap = laplacian(g);
    let keep: Vec<usize> = (0..lap.len()).filter(|&k| k != ib).collect();
    let reduced: Vec<Vec<Rational>> = keep
        .iter()
        .map(|&r| keep.iter().map(|&c| int(lap[r][c])).collect())
        .collect();
    let target = keep.iter().position(|&k| k == ia).expect("a != b");
    let mut rhs = vec![Rational::zero(); keep.len()];
    rhs[target] = Rational::one();
    let potentials = solve_exact(reduced, rhs)?;
    Ok(potentials[target].clone())
}

/// Every unordered pair by exact solves.
pub fn oracle_table(g: &LadderGraph) -> Result<ResistanceTable> {
    let spec = g.spec();
    let values = spec
        .unordered_pairs()
        .into_par_iter()
        .map(|(a, b)| resistance_exact(g, a, b).map(|r| (a, b, r)))
        .collect::<Result<Vec<_>>>()?;
    ResistanceTable::from_entries(spec, TableSource::Oracle, values)
}

/// Half the sum of resistances over ordered pairs.
pub fn kirchhoff_by_sum(g: &LadderGraph) -> Result<Rational> {
    Ok(oracle_table(g)?.kirchhoff())
}

/// Determinant of an integer matrix by Bareiss fraction-free elimination.
pub fn determinant_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let size = m.len();
    if size == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let value = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = value / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[size - 1][size - 1]
}

/// Number of spanning trees: any cofactor of the Laplacian.
pub fn spanning_trees(g: &LadderGraph) -> BigInt {
    let lap = laplacian(g);
    let minor: Vec<Vec<BigInt>> = lap[1..]
        .iter()
        .map(|row| row[1..].iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    determinant_bareiss(minor)
}

fn check_n(n: usize) -> Result<()> {
    if n < 1 {
        return Err(domain("ladder needs n >= 1"));
    }
    Ok(())
}

fn sin2(k: usize, n: usize) -> f64 {
    let s = (k as f64 * PI / (2.0 * n as f64)).sin();
    s * s
}

/// Kf from the Laplacian spectrum: the nonzero eigenvalues are 2,
/// 4sin²(kπ/2n) and 2 + 4sin²(kπ/2n) for k = 1..n−1.
pub fn eigen_kf(n: usize) -> Result<f64> {
    check_n(n)?;
    let nf = n as f64;
    let inverse_sin2: f64 = (1..n).map(|k| 1.0 / sin2(k, n)).sum();
    let shifted: f64 = (1..n).map(|k| 1.0 / (1.0 + 2.0 * sin2(k, n))).sum();
    Ok(nf + nf / 2.0 * inverse_sin2 + nf * shifted)
}

/// Σ_{k=0}^{n−1} 1/(1 + 2sin²(kπ/2n)).
pub fn trig_sum_shifted(n: usize) -> Result<f64> {
    check_n(n)?;
    Ok((0..n).map(|k| 1.0 / (1.0 + 2.0 * sin2(k, n))).sum())
}

/// Σ_{k=1}^{n−1} 1/sin²(kπ/2n).
pub fn trig_sum_inverse_sin2(n: usize) -> Result<f64> {
    check_n(n)?;
    Ok((1..n).map(|k| 1.0 / sin2(k, n)).sum())
}

/// Left Riemann sum of 1/(1 + 2sin²x) over [0, π/2] with n pieces.
pub fn riemann_left(n: usize) -> Result<f64> {
    Ok(PI / (2.0 * n as f64) * trig_sum_shifted(n)?)
}

/// Kf = n(n² − 1)/3 + n·Σ_{k=0}^{n−1} 1/(1 + 2sin²(kπ/2n)).
pub fn kf_shifted_sum(n: usize) -> Result<f64> {
    let nf = n as f64;
    Ok(nf * (nf * nf - 1.0) / 3.0 + nf * trig_sum_shifted(n)?)
}

fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

fn log_alpha() -> f64 {
    (2.0 - 3f64.sqrt()).ln()
}

/// z_n = −1 − √3·coth(n ln α).
pub fn z_coth(n: usize) -> Result<f64> {
    check_n(n)?;
    Ok(-1.0 - 3f64.sqrt() * coth(n as f64 * log_alpha()))
}

/// Kf = (n²/3)[n − √3·coth(n ln α)].
pub fn kirchhoff_coth(n: usize) -> Result<f64> {
    check_n(n)?;
    let nf = n as f64;
    Ok(nf * nf / 3.0 * (nf - 3f64.sqrt() * coth(nf * log_alpha())))
}

/// G_{2n}/G_n² = −2√3·coth(n ln α).
pub fn g_double_ratio_coth(n: usize) -> Result<f64> {
    check_n(n)?;
    Ok(-2.0 * 3f64.sqrt() * coth(n as f64 * log_alpha()))
}
