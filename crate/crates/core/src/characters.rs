//! Quadratic Dirichlet characters and their L-values at negative integers.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::exact::bernoulli::{bernoulli_numbers, bernoulli_poly_with};
use crate::exact::int::is_fundamental;
use crate::exact::scalar::{pow, Scalar};
use crate::{Error, Rat, Result};

/// The Kronecker symbol `(d | n)`.
pub fn kronecker_symbol(d: i64, n: i64) -> i32 {
    if n == 0 {
        return if d.abs() == 1 { 1 } else { 0 };
    }
    let mut result = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if d < 0 {
            result = -1;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if d % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(d.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= twos;
    }
    result * jacobi(d.rem_euclid(n), n)
}

/// Jacobi symbol for odd `n > 0`.
fn jacobi(a: i64, n: i64) -> i32 {
    let (mut a, mut n) = (a.rem_euclid(n), n);
    let mut result = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// The character `a -> (D | a)` for a fundamental discriminant `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct QuadChar {
    disc: i64,
}

impl QuadChar {
    pub fn new(disc: i64) -> Result<Self> {
        if disc == 1 || !is_fundamental(disc) {
            return Err(Error::InvalidArgument(format!(
                "{disc} is not a non-trivial fundamental discriminant"
            )));
        }
        Ok(QuadChar { disc })
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn conductor(&self) -> u64 {
        self.disc.unsigned_abs()
    }

    pub fn eval(&self, a: i64) -> i32 {
        kronecker_symbol(self.disc, a)
    }

    /// `chi(-1) = -1`.
    pub fn is_odd(&self) -> bool {
        self.disc < 0
    }
}

impl TryFrom<i64> for QuadChar {
    type Error = Error;
    fn try_from(d: i64) -> Result<Self> {
        QuadChar::new(d)
    }
}

impl From<QuadChar> for i64 {
    fn from(c: QuadChar) -> i64 {
        c.disc
    }
}

/// `B_{n,chi} = f^(n-1) sum_{a=1}^{f} chi(a) B_n(a/f)`.
pub fn generalized_bernoulli<T: Scalar>(n: usize, chi: QuadChar) -> T {
    assert!(n >= 1, "generalized Bernoulli numbers start at n = 1");
    let f = chi.conductor() as i64;
    let b = bernoulli_numbers::<T>(n);
    let sum = (1..=f).fold(T::zero(), |acc, a| match chi.eval(a) {
        0 => acc,
        s => {
            let v = bernoulli_poly_with(&b, n, &(T::from_int(a) / T::from_int(f)));
            acc + T::from_int(s as i64) * v
        }
    });
    pow(&T::from_int(f), n as u32 - 1) * sum
}

/// `L(1 - n, chi) = -B_{n,chi} / n`.
pub fn dirichlet_l_neg<T: Scalar>(n: usize, chi: QuadChar) -> T {
    -generalized_bernoulli::<T>(n, chi) / T::from_int(n as i64)
}

/// A list of quadratic characters, as in `zeta_K = zeta * prod L(chi)`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CharProduct {
    factors: Vec<QuadChar>,
}

impl CharProduct {
    pub fn new(discs: &[i64]) -> Result<Self> {
        let factors = discs
            .iter()
            .map(|&d| QuadChar::new(d))
            .collect::<Result<_>>()?;
        Ok(CharProduct { factors })
    }

    pub fn factors(&self) -> &[QuadChar] {
        &self.factors
    }

    pub fn discs(&self) -> Vec<i64> {
        self.factors.iter().map(|c| c.disc).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product of the conductors, i.e. `|disc|` by the conductor-discriminant formula.
    pub fn conductor_product(&self) -> u128 {
        self.factors.iter().map(|c| c.conductor() as u128).product()
    }

    /// Characters of `self` not in `sub`, for relative products such as `L_{l|k}`.
    pub fn minus(&self, sub: &CharProduct) -> Result<CharProduct> {
        let mut rest = self.factors.clone();
        for c in &sub.factors {
            let i = rest.iter().position(|x| x == c).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "character {} missing from the larger field",
                    c.disc
                ))
            })?;
            rest.remove(i);
        }
        Ok(CharProduct { factors: rest })
    }
}

/// `zeta_k(-1) = (-1/12) prod L(-1, chi_D)` for a totally real abelian `k`.
pub fn zeta_k_minus1(k: &CharProduct) -> Result<Rat> {
    if let Some(c) = k.factors.iter().find(|c| c.is_odd()) {
        return Err(Error::InvalidArgument(format!(
            "negative discriminant {} in a totally real field",
            c.disc
        )));
    }
    let zeta = Rat::new((-1).into(), 12.into());
    Ok(k.factors
        .iter()
        .fold(zeta, |acc, &c| acc * dirichlet_l_neg::<Rat>(2, c)))
}

/// `L_{l|k}(-2) = prod L(-2, chi_D)` over the characters of `l` not in `k`.
pub fn l_rel_minus2(rel: &CharProduct) -> Result<Rat> {
    if rel.is_empty() {
        return Err(Error::InvalidArgument(
            "empty relative character list".into(),
        ));
    }
    if let Some(c) = rel.factors.iter().find(|c| !c.is_odd()) {
        return Err(Error::InvalidArgument(format!(
            "even character {} would force a trivial zero at s = -2",
            c.disc
        )));
    }
    let distinct: BTreeSet<_> = rel.factors.iter().collect();
    if distinct.len() != rel.factors.len() {
        return Err(Error::InvalidArgument(
            "repeated character in a relative product".into(),
        ));
    }
    Ok(rel.factors.iter().fold(Rat::from_int(1), |acc, &c| {
        acc * dirichlet_l_neg::<Rat>(3, c)
    }))
}
