//! Resistances by circuit reduction: series and parallel combination,
//! star-from-triangle solves and the corner recurrences.
//!
//! Nothing here evaluates a power of α. The corner values x_k, y_k, z_k are
//! produced by iterating their recurrences from L_1, and every pairwise
//! value is assembled from those by reductions.

use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::field::{format_rational, int, ratio, Rational};
use crate::ladder::LadderSpec;
use crate::table::{ResistanceTable, TableSource};

fn check_n(n: usize) -> Result<()> {
    if n < 1 {
        return Err(domain("ladder needs n >= 1"));
    }
    Ok(())
}

fn check_nonnegative(values: &[&Rational]) -> Result<()> {
    if values.iter().any(|r| r.is_negative()) {
        return Err(domain("resistances must be non-negative"));
    }
    Ok(())
}

pub fn series(r1: &Rational, r2: &Rational) -> Result<Rational> {
    check_nonnegative(&[r1, r2])?;
    Ok(r1 + r2)
}

pub fn parallel(r1: &Rational, r2: &Rational) -> Result<Rational> {
    check_nonnegative(&[r1, r2])?;
    let sum = r1 + r2;
    if sum.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(r1 * r2 / sum)
}

/// Arms of the star equivalent to three terminals with given pairwise
/// resistances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarArms {
    pub arm_1: Rational,
    pub arm_2: Rational,
    pub arm_3: Rational,
}

/// Solve `arm_i + arm_j = r_ij` for the three arms.
pub fn star_from_triangle(r12: &Rational, r13: &Rational, r23: &Rational) -> Result<StarArms> {
    check_nonnegative(&[r12, r13, r23])?;
    let half = ratio(1, 2);
    let arms = StarArms {
        arm_1: (r12 + r13 - r23) * &half,
        arm_2: (r12 + r23 - r13) * &half,
        arm_3: (r13 + r23 - r12) * &half,
    };
    if [&arms.arm_1, &arms.arm_2, &arms.arm_3]
        .iter()
        .any(|a| a.is_negative())
    {
        return Err(Error::NonRealizable(format!(
            "({}, {}, {})",
            format_rational(r12),
            format_rational(r13),
            format_rational(r23)
        )));
    }
    Ok(arms)
}

/// z_k for k = 1..=n from z_k = (z_{k−1} + 2)/(z_{k−1} + 3), z_1 = 1.
/// Entry 0 of the result is unused and holds zero.
pub fn z_sequence(n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(int(0));
    if n == 0 {
        return out;
    }
    out.push(int(1));
    let two = int(2);
    for k in 2..=n {
        let prev = &out[k - 1];
        // parallel(1, z + 2), the rung in parallel with the loop through L_{k−1}
        let loop_ = prev + &two;
        out.push(&loop_ / (&loop_ + int(1)));
    }
    out
}

pub fn z_by_recurrence(n: usize) -> Result<Rational> {
    check_n(n)?;
    Ok(z_sequence(n).pop().expect("n >= 1"))
}

/// Corner values (x_k, y_k, z_k) for k = 1..=n. Entry 0 is unused.
pub fn corner_sequence(n: usize) -> Vec<(Rational, Rational, Rational)> {
    let z = z_sequence(n);
    let mut out = Vec::with_capacity(n + 1);
    out.push((int(0), int(0), int(0)));
    if n == 0 {
        return out;
    }
    out.push((int(0), int(1), int(1)));
    for k in 1..n {
        let (x, y, _) = out[k].clone();
        let zk = &z[k];
        let d = int(4) * (zk + int(3));
        let half_c = (&x + &y - zk) / int(2);
        let next_x = (&x - &y + zk + int(2)) * (-&x + &y + zk + int(4)) / &d + &half_c;
        let next_y = (-&x + &y + zk + int(2)) * (&x - &y + zk + int(4)) / &d + &half_c;
        out.push((next_x, next_y, z[k + 1].clone()));
    }
    out
}

pub fn xy_by_recurrence(n: usize) -> Result<(Rational, Rational)> {
    check_n(n)?;
    let (x, y, _) = corner_sequence(n).pop().expect("n >= 1");
    Ok((x, y))
}

/// t_n = −∏_{k<n} 1/(z_k + 3), with t_1 = −1.
pub fn t_by_product(n: usize) -> Result<Rational> {
    check_n(n)?;
    let z = z_sequence(n);
    let product = z[1..n]
        .iter()
        .fold(Rational::one(), |acc, zk| acc / (zk + int(3)));
    Ok(-product)
}

/// Reduction-side data for one ladder: corner values of every sub-ladder.
#[derive(Clone, Debug)]
pub struct Reducer {
    n: usize,
    corners: Vec<(Rational, Rational, Rational)>,
}

impl Reducer {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Reducer {
            n,
            corners: corner_sequence(n),
        })
    }

    fn z(&self, k: usize) -> &Rational {
        &self.corners[k].2
    }

    /// (r(p_m, p_i), r(p_m, q_i), r(p_i, q_i)) inside the sub-ladder L_m.
    pub fn corner_in(&self, m: usize, i: usize) -> Result<(Rational, Rational, Rational)> {
        if !(m >= i && i >= 1 && m <= self.n) {
            return Err(domain(format!(
                "corner reduction needs {} >= m >= i >= 1, got m={m}, i={i}",
                self.n
            )));
        }
        if m == i {
            let z = self.z(m).clone();
            return Ok((int(0), z.clone(), z));
        }
        let (x_up, y_up, z_up) = &self.corners[m - i];
        // upper L_{m−i} as a star on p_m, p_{i+1}, q_{i+1}
        let star = star_from_triangle(x_up, y_up, z_up)?;
        let (big_m, big_n, big_k) = (&star.arm_1, &star.arm_2, &star.arm_3);
        let zi = self.z(i);
        let one = int(1);
        let denom = z_up + zi + int(2);
        let to_p = (big_n + &one) * (big_k + zi + &one) / &denom + big_m;
        let to_q = (big_k + &one) * (big_n + zi + &one) / &denom + big_m;
        let rung = zi * (z_up + int(2)) / &denom;
        Ok((to_p, to_q, rung))
    }

    /// (r(p_i, p_j), r(q_i, p_j)) in L_n for n ≥ i ≥ j ≥ 1.
    pub fn pair(&self, i: usize, j: usize) -> Result<(Rational, Rational)> {
        let n = self.n;
        if !(n >= i && i >= j && j >= 1) {
            return Err(domain(format!(
                "pair reduction needs n >= i >= j >= 1, got n={n}, i={i}, j={j}"
            )));
        }
        if i == n {
            let (same, cross, _) = self.corner_in(n, j)?;
            return Ok((same, cross));
        }
        // lower part L_i reduced to a star on p_i, p_j, q_i
        let (pp, pq, _) = self.corner_in(i, j)?;
        let zi = self.z(i);
        let star = star_from_triangle(&pp, zi, &pq)?;
        let (d, e, f) = (&star.arm_1, &star.arm_2, &star.arm_3);
        let z_up = self.z(n - i);
        let denom = z_up + zi + int(2);
        let same = d * (z_up + f + int(2)) / &denom + e;
        let cross = f * (z_up + d + int(2)) / &denom + e;
        Ok((same, cross))
    }
}

/// (r(p_n, p_i), r(p_n, q_i), r(p_i, q_i)) in L_n, for n ≥ i ≥ 1.
pub fn corner_resistances_by_reduction(n: usize, i: usize) -> Result<(Rational, Rational, Rational)> {
    Reducer::new(n)?.corner_in(n, i)
}

/// (r(p_i, p_j), r(q_i, p_j)) in L_n, for n ≥ i ≥ j ≥ 1.
pub fn pair_resistances_by_reduction(n: usize, i: usize, j: usize) -> Result<(Rational, Rational)> {
    Reducer::new(n)?.pair(i, j)
}

/// Finite continued fraction [0; 1, 2, 1, 2, …, 1] with n ones.
pub fn cf_convergent_z(n: usize) -> Result<Rational> {
    check_n(n)?;
    let mut terms = vec![0i64];
    for k in 0..n {
        if k > 0 {
            terms.push(2);
        }
        terms.push(1);
    }
    let mut value = int(*terms.last().expect("nonempty"));
    for &a in terms[..terms.len() - 1].iter().rev() {
        value = int(a) + value.recip();
    }
    Ok(value)
}

/// Every unordered pair of L_n by reduction.
pub fn reduction_table(spec: LadderSpec) -> Result<ResistanceTable> {
    let reducer = Reducer::new(spec.n())?;
    let mut values = Vec::new();
    for (a, b) in spec.unordered_pairs() {
        let (hi, lo) = if a.index >= b.index { (a, b) } else { (b, a) };
        let (same, cross) = reducer.pair(hi.index, lo.index)?;
        let value = if hi.side == lo.side { same } else { cross };
        values.push((a, b, value));
    }
    ResistanceTable::from_entries(spec, TableSource::Reduction, values)
}
