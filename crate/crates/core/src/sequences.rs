//! The integer sequence G_n (G₀ = 0, G₁ = 1, G_{n+2} = 4G_{n+1} − G_n),
//! which counts spanning trees of the ladder, and Chebyshev values
//! U_n(2), U'_n(2) of the second kind.
//!
//! Chebyshev values use the standard convention U₀ = 1, U₁(x) = 2x, under
//! which G_n = U_{n−1}(2).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::field::{int, Rational, Surd3};

/// Memoized prefix G_0..=G_max of the sequence.
#[derive(Clone, Debug)]
pub struct GenFibCache {
    values: Vec<BigInt>,
}

impl Default for GenFibCache {
    fn default() -> Self {
        Self::new()
    }
}

impl GenFibCache {
    pub fn new() -> Self {
        GenFibCache {
            values: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn with_max(max: usize) -> Self {
        let mut cache = Self::new();
        cache.extend_to(max);
        cache
    }

    fn extend_to(&mut self, max: usize) {
        while self.values.len() <= max {
            let k = self.values.len();
            let next = 4 * &self.values[k - 1] - &self.values[k - 2];
            self.values.push(next);
        }
    }

    pub fn get(&mut self, n: usize) -> &BigInt {
        self.extend_to(n);
        &self.values[n]
    }

    /// Cached prefix; `values()[k]` is G_k.
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// G_n as a rational, for use inside closed forms.
    pub fn rational(&mut self, n: usize) -> Rational {
        Rational::from_integer(self.get(n).clone())
    }
}

fn check_index(n: i64, what: &str) -> Result<usize> {
    usize::try_from(n).map_err(|_| domain(format!("{what} needs n >= 0, got {n}")))
}

/// G_n by the integer recurrence.
pub fn gen_fib(n: i64) -> Result<BigInt> {
    let n = check_index(n, "gen_fib")?;
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    if n == 0 {
        return Ok(prev);
    }
    for _ in 1..n {
        let next = 4 * &cur - &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

fn integer_of(value: Surd3) -> Result<BigInt> {
    let r = value.into_rational()?;
    if !r.is_integer() {
        return Err(domain(format!("expected an integer, got {r}")));
    }
    Ok(r.to_integer())
}

/// G_n = (α^{−n} − α^n)/(2√3), evaluated exactly in Q(√3).
pub fn gen_fib_binet(n: i64) -> Result<BigInt> {
    check_index(n, "gen_fib_binet")?;
    let alpha = Surd3::alpha();
    let diff = alpha.pow(-n)? - alpha.pow(n)?;
    let two_sqrt3 = Surd3::new(int(0), int(2));
    integer_of(diff * two_sqrt3.inverse()?)
}

/// g_n = 1/(G_{n+1} − α·G_n), which equals α^n.
pub fn alpha_pow_via_g(n: i64) -> Result<Surd3> {
    let n = check_index(n, "alpha_pow_via_g")?;
    let mut cache = GenFibCache::with_max(n + 1);
    Ok(alpha_pow_from_cache(&mut cache, n))
}

pub(crate) fn alpha_pow_from_cache(cache: &mut GenFibCache, n: usize) -> Surd3 {
    let next = cache.rational(n + 1);
    let cur = cache.rational(n);
    let denom = Surd3::from_rational(next) - Surd3::alpha() * cur;
    denom.inverse().expect("G_{n+1} - alpha G_n is positive")
}

/// G_{2n} = G_n(α^{−n} + α^n).
pub fn gen_fib_double(n: i64) -> Result<BigInt> {
    if n < 1 {
        return Err(domain(format!("gen_fib_double needs n >= 1, got {n}")));
    }
    let alpha = Surd3::alpha();
    let g = Rational::from_integer(gen_fib(n)?);
    integer_of((alpha.pow(-n)? + alpha.pow(n)?) * g)
}

/// U_n(2).
pub fn chebyshev_u2(n: i64) -> Result<BigInt> {
    let n = check_index(n, "chebyshev_u2")?;
    Ok(chebyshev_u2_table(n).pop().expect("nonempty").0)
}

/// U'_n(2), from differentiating U_{k+2} = 2xU_{k+1} − U_k at x = 2.
pub fn chebyshev_u2_deriv(n: i64) -> Result<BigInt> {
    let n = check_index(n, "chebyshev_u2_deriv")?;
    Ok(chebyshev_u2_table(n).pop().expect("nonempty").1)
}

/// Pairs (U_k(2), U'_k(2)) for k = 0..=max.
pub fn chebyshev_u2_table(max: usize) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::with_capacity(max + 1);
    out.push((BigInt::one(), BigInt::zero()));
    if max >= 1 {
        out.push((BigInt::from(4), BigInt::from(2)));
    }
    for k in 2..=max {
        let (u1, d1) = out[k - 1].clone();
        let (u0, d0) = &out[k - 2];
        let u = 4 * &u1 - u0;
        let d = 2 * &u1 + 4 * &d1 - d0;
        out.push((u, d));
    }
    out
}
