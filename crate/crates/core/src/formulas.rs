//! Closed-form effective resistances and Kirchhoff index of L_n.
//!
//! Every expression is a rational function of α = 2 − √3 evaluated in
//! [`Surd3`]; results must come out with a zero √3 part, and conversion to
//! [`Rational`] fails loudly otherwise. Each quantity also has a second
//! form written with the integers G_n (the `*_gfib` functions), which the
//! tests hold equal to the α form.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::field::{int, ratio, AlphaPowers, Rational, Surd3};
use crate::ladder::{LadderSpec, Side, VertexRef};
use crate::sequences::{alpha_pow_from_cache, GenFibCache};
use crate::table::{ResistanceTable, TableSource};

fn check_n(n: usize) -> Result<()> {
    if n < 1 {
        return Err(domain("ladder needs n >= 1"));
    }
    Ok(())
}

fn check_order(n: usize, i: usize, j: usize) -> Result<()> {
    check_n(n)?;
    if !(n >= i && i >= j && j >= 1) {
        return Err(domain(format!(
            "indices must satisfy n >= i >= j >= 1, got n={n}, i={i}, j={j}"
        )));
    }
    Ok(())
}

/// `1/√3 = √3/3`.
fn inv_sqrt3() -> Surd3 {
    Surd3::new(int(0), ratio(1, 3))
}

/// α powers and `1/(1 − α^{2n})` for one ladder, shared by all of its
/// pairwise evaluations.
#[derive(Clone, Debug)]
pub struct ClosedForms {
    n: usize,
    /// α^0..=α^{2n+1}, built on first pairwise evaluation.
    powers: OnceLock<AlphaPowers>,
    alpha_n: Surd3,
    /// 1/(1 − α^{2n})
    inv_gap: Surd3,
}

impl ClosedForms {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        let alpha_n = Surd3::alpha().pow(n as i64)?;
        let inv_gap = (Surd3::one() - &alpha_n * &alpha_n).inverse()?;
        Ok(ClosedForms {
            n,
            powers: OnceLock::new(),
            alpha_n,
            inv_gap,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn a(&self, k: usize) -> Surd3 {
        if k == self.n {
            return self.alpha_n.clone();
        }
        self.powers
            .get_or_init(|| AlphaPowers::with_max(2 * self.n + 1))
            .power(k)
    }

    /// The recurring bracket `1 − 2/(1 − α^{2n})`.
    pub fn bracket(&self) -> Surd3 {
        Surd3::one() - &self.inv_gap * Surd3::from_int(2)
    }

    /// z_n = r(p_n, q_n) as a surd.
    pub fn z_surd(&self) -> Surd3 {
        Surd3::new(int(-1), int(-1)) + Surd3::new(int(0), int(2)) * &self.inv_gap
    }

    pub fn z(&self) -> Result<Rational> {
        self.z_surd().into_rational()
    }

    /// y_n = (n − 2 − √3)/2 + √3/(1 − α^n).
    pub fn y(&self) -> Result<Rational> {
        let n = self.n as i64;
        let lead = Surd3::new(ratio(n - 2, 2), ratio(-1, 2));
        let tail = Surd3::sqrt3() * (Surd3::one() - self.a(self.n)).inverse()?;
        (lead + tail).into_rational()
    }

    /// x_n = (n − 2 − √3)/2 + √3/(1 + α^n).
    pub fn x(&self) -> Result<Rational> {
        let n = self.n as i64;
        let lead = Surd3::new(ratio(n - 2, 2), ratio(-1, 2));
        let tail = Surd3::sqrt3() * (Surd3::one() + self.a(self.n)).inverse()?;
        (lead + tail).into_rational()
    }

    /// t_n = x_n − y_n = −2√3 α^n/(1 − α^{2n}).
    pub fn t(&self) -> Result<Rational> {
        let t = Surd3::new(int(0), int(-2)) * self.a(self.n) * &self.inv_gap;
        t.into_rational()
    }

    /// r(p_i, p_j) for n ≥ i ≥ j ≥ 1.
    pub fn same_side_surd(&self, i: usize, j: usize) -> Result<Surd3> {
        let n = self.n;
        check_order(n, i, j)?;
        let m = i - j;
        let s = i + j - 1;
        let inner = Surd3::one() - self.a(m) - self.a(s) * Surd3::from_int(2);
        let body = Surd3::from_int(2) - self.a(s)
            + self.a(2 * j - 1)
            + self.a(2 * n - 2 * i + 1) * inner;
        let prefactor = (Surd3::one() - self.a(m)) * &self.inv_gap * inv_sqrt3() * ratio(1, 4);
        Ok(prefactor * body + ratio(m as i64, 2))
    }

    /// r(q_i, p_j) for n ≥ i ≥ j ≥ 1.
    pub fn cross_side_surd(&self, i: usize, j: usize) -> Result<Surd3> {
        let n = self.n;
        check_order(n, i, j)?;
        let m = i - j;
        let s = i + j - 1;
        let inner = Surd3::one() + self.a(m) + self.a(s) * Surd3::from_int(2);
        let body = Surd3::from_int(2)
            + self.a(s)
            + self.a(2 * j - 1)
            + self.a(2 * n - 2 * i + 1) * inner;
        let prefactor = (Surd3::one() + self.a(m)) * &self.inv_gap * inv_sqrt3() * ratio(1, 4);
        Ok(prefactor * body + ratio(m as i64, 2))
    }

    pub fn same_side(&self, i: usize, j: usize) -> Result<Rational> {
        self.same_side_surd(i, j)?.into_rational()
    }

    pub fn cross_side(&self, i: usize, j: usize) -> Result<Rational> {
        self.cross_side_surd(i, j)?.into_rational()
    }

    /// r(p_i, q_i) = (1 + α^{2n−2i+1})(1 + α^{2i−1}) / (√3(1 − α^{2n})).
    pub fn rung(&self, i: usize) -> Result<Rational> {
        let n = self.n;
        check_order(n, i, 1)?;
        let value = (Surd3::one() + self.a(2 * n - 2 * i + 1))
            * (Surd3::one() + self.a(2 * i - 1))
            * &self.inv_gap
            * inv_sqrt3();
        value.into_rational()
    }

    /// (r(p_n, p_i), r(p_n, q_i)), anchored at the top corner p_n.
    pub fn top_corner(&self, i: usize) -> Result<(Rational, Rational)> {
        let n = self.n;
        check_order(n, i, 1)?;
        let d = n - i;
        let half = ratio(d as i64, 2);
        let scale = &self.inv_gap * inv_sqrt3() * ratio(1, 4);
        let two = Surd3::from_int(2);
        let same_body = &two - &(self.a(n + i) * &two) - self.a(n + i - 1) - self.a(n - i + 1)
            + self.a(2 * i - 1)
            + self.a(1);
        let cross_body = &two
            + &(self.a(n + i) * &two)
            + self.a(n + i - 1)
            + self.a(n - i + 1)
            + self.a(2 * i - 1)
            + self.a(1);
        let same = (Surd3::one() - self.a(d)) * &scale * same_body + half.clone();
        let cross = (Surd3::one() + self.a(d)) * &scale * cross_body + half;
        Ok((same.into_rational()?, cross.into_rational()?))
    }

    /// Effective resistance between any two vertices.
    ///
    /// Canonicalization: metric symmetry orders the pair so that the larger
    /// index comes first, then reflection maps the pair onto either
    /// `(p_i, p_j)` or `(q_i, p_j)` with i ≥ j.
    pub fn resistance(&self, a: VertexRef, b: VertexRef) -> Result<Rational> {
        let spec = LadderSpec::new(self.n as i64)?;
        spec.check(a)?;
        spec.check(b)?;
        if a == b {
            return Ok(int(0));
        }
        let (hi, lo) = if a.index >= b.index { (a, b) } else { (b, a) };
        if hi.side == lo.side {
            self.same_side(hi.index, lo.index)
        } else {
            self.cross_side(hi.index, lo.index)
        }
    }

    /// Kf(L_n) = n³/3 − (n²/√3)·[1 − 2/(1 − α^{2n})].
    pub fn kirchhoff(&self) -> Result<Rational> {
        let n = self.n as i64;
        let value = Surd3::from_rational(ratio(n * n * n, 3))
            - self.bracket() * inv_sqrt3() * int(n * n);
        value.into_rational()
    }
}

/// x_n + y_n − z_n, x_n − y_n + z_n and −x_n + y_n + z_n, all in closed form
/// directly (not through x, y, z).
pub fn corner_combinations(n: usize) -> Result<(Rational, Rational, Rational)> {
    let forms = ClosedForms::new(n)?;
    let base = Surd3::new(int(-1), int(-1));
    let two_sqrt3 = Surd3::new(int(0), int(2));
    let an = forms.a(n);
    let plus = &base + &(&two_sqrt3 * &(Surd3::one() + an.clone()).inverse()?);
    let minus = &base + &(&two_sqrt3 * &(Surd3::one() - an).inverse()?);
    Ok((int(n as i64 - 1), plus.into_rational()?, minus.into_rational()?))
}

pub fn corner_z(n: usize) -> Result<Rational> {
    ClosedForms::new(n)?.z()
}

pub fn corner_x(n: usize) -> Result<Rational> {
    ClosedForms::new(n)?.x()
}

pub fn corner_y(n: usize) -> Result<Rational> {
    ClosedForms::new(n)?.y()
}

pub fn corner_t(n: usize) -> Result<Rational> {
    ClosedForms::new(n)?.t()
}

pub fn r_same_side(n: usize, i: usize, j: usize) -> Result<Rational> {
    check_order(n, i, j)?;
    ClosedForms::new(n)?.same_side(i, j)
}

pub fn r_cross_side(n: usize, i: usize, j: usize) -> Result<Rational> {
    check_order(n, i, j)?;
    ClosedForms::new(n)?.cross_side(i, j)
}

pub fn rung_resistance(n: usize, i: usize) -> Result<Rational> {
    check_order(n, i, 1)?;
    ClosedForms::new(n)?.rung(i)
}

pub fn top_corner_resistances(n: usize, i: usize) -> Result<(Rational, Rational)> {
    check_order(n, i, 1)?;
    ClosedForms::new(n)?.top_corner(i)
}

pub fn resistance(spec: LadderSpec, a: VertexRef, b: VertexRef) -> Result<Rational> {
    spec.check(a)?;
    spec.check(b)?;
    ClosedForms::new(spec.n())?.resistance(a, b)
}

pub fn kirchhoff(n: usize) -> Result<Rational> {
    ClosedForms::new(n)?.kirchhoff()
}

/// All unordered pairs of L_n from the closed forms.
pub fn resistance_table(spec: LadderSpec) -> Result<ResistanceTable> {
    let forms = ClosedForms::new(spec.n())?;
    let values = spec
        .unordered_pairs()
        .into_par_iter()
        .map(|(a, b)| forms.resistance(a, b).map(|r| (a, b, r)))
        .collect::<Result<Vec<_>>>()?;
    ResistanceTable::from_entries(spec, TableSource::ClosedForm, values)
}

/// Expressions in terms of G_n. They share no code with [`ClosedForms`]
/// beyond field arithmetic; α^k enters only as g_k = 1/(G_{k+1} − αG_k).
#[derive(Clone, Debug)]
pub struct GForms {
    n: usize,
    cache: GenFibCache,
    g_powers: Vec<Surd3>,
}

impl GForms {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        let mut cache = GenFibCache::with_max(2 * n + 2);
        let g_powers = (0..=2 * n + 1)
            .map(|k| alpha_pow_from_cache(&mut cache, k))
            .collect();
        Ok(GForms {
            n,
            cache,
            g_powers,
        })
    }

    fn g(&self, k: usize) -> &Surd3 {
        &self.g_powers[k]
    }

    fn big_g(&self, k: usize) -> Rational {
        Rational::from_integer(self.cache.values()[k].clone())
    }

    /// G_{2n}/G_n².
    pub fn ratio_2n(&self) -> Rational {
        let gn = self.big_g(self.n);
        self.big_g(2 * self.n) / (&gn * &gn)
    }

    /// t_n = −1/G_n.
    pub fn t(&self) -> Rational {
        -self.big_g(self.n).recip()
    }

    /// z_n = −1 + G_{2n}/(2G_n²).
    pub fn z(&self) -> Rational {
        int(-1) + self.ratio_2n() / int(2)
    }

    /// y_n = (n − 2)/2 + 3G_n²/(G_{2n} − 2G_n).
    pub fn y(&self) -> Rational {
        let n = self.n as i64;
        let gn = self.big_g(self.n);
        let g2n = self.big_g(2 * self.n);
        ratio(n - 2, 2) + int(3) * &gn * &gn / (g2n - int(2) * gn)
    }

    /// x_n = (n − 2)/2 + (G_{2n} − 2G_n)/(4G_n²).
    pub fn x(&self) -> Rational {
        let n = self.n as i64;
        let gn = self.big_g(self.n);
        let g2n = self.big_g(2 * self.n);
        ratio(n - 2, 2) + (g2n - int(2) * &gn) / (int(4) * &gn * &gn)
    }

    fn pair_scale(&self) -> Surd3 {
        // (1 + G_{2n}/(2√3 G_n²)) / (8√3)
        let lead = Surd3::one() + inv_sqrt3() * (self.ratio_2n() / int(2));
        lead * inv_sqrt3() * ratio(1, 8)
    }

    /// r(p_i, p_j) through g_k, for n ≥ i ≥ j ≥ 1.
    pub fn same_side(&self, i: usize, j: usize) -> Result<Rational> {
        let n = self.n;
        check_order(n, i, j)?;
        let one = Surd3::one();
        let first = (&one - self.g(i + j - 1)) * (&one + self.g(2 * n - 2 * i + 1));
        let second = (&one + self.g(2 * j - 1)) * (&one - self.g(2 * n - i - j + 1));
        let value = (&one - self.g(i - j)) * self.pair_scale() * (first + second)
            + ratio((i - j) as i64, 2);
        value.into_rational()
    }

    /// r(q_i, p_j) through g_k, for n ≥ i ≥ j ≥ 1.
    pub fn cross_side(&self, i: usize, j: usize) -> Result<Rational> {
        let n = self.n;
        check_order(n, i, j)?;
        let one = Surd3::one();
        let first = (&one + self.g(i + j - 1)) * (&one + self.g(2 * n - 2 * i + 1));
        let second = (&one + self.g(2 * j - 1)) * (&one + self.g(2 * n - i - j + 1));
        let value = (&one + self.g(i - j)) * self.pair_scale() * (first + second)
            + ratio((i - j) as i64, 2);
        value.into_rational()
    }

    /// Kf(L_n) = n³/3 + n²G_{2n}/(6G_n²).
    pub fn kirchhoff(&self) -> Rational {
        let n = self.n as i64;
        ratio(n * n * n, 3) + int(n * n) * self.ratio_2n() / int(6)
    }
}

pub fn kirchhoff_gfib(n: usize) -> Result<Rational> {
    Ok(GForms::new(n)?.kirchhoff())
}

/// Resistance through the G-form pair formulas, canonicalized as in
/// [`ClosedForms::resistance`].
pub fn resistance_gfib(forms: &GForms, a: VertexRef, b: VertexRef) -> Result<Rational> {
    let spec = LadderSpec::new(forms.n as i64)?;
    spec.check(a)?;
    spec.check(b)?;
    if a == b {
        return Ok(int(0));
    }
    let (hi, lo) = if a.index >= b.index { (a, b) } else { (b, a) };
    match (hi.side, lo.side) {
        (Side::LeftP, Side::LeftP) | (Side::RightQ, Side::RightQ) => {
            forms.same_side(hi.index, lo.index)
        }
        _ => forms.cross_side(hi.index, lo.index),
    }
}
