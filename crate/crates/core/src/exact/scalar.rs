use std::fmt::{self, Debug};

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// Exact scalar used by the generic parts of the arithmetic layer.
///
/// Every implementor must be exact: `a / b` is the true quotient.
pub trait Scalar: Clone + Debug + PartialEq + Num + Signed {
    fn from_int(n: i64) -> Self;

    /// Image in `F_p` when the denominator is prime to `p`, else `None`.
    fn residue_mod(&self, p: u64) -> Option<u64>;

    /// Exact cube root when one exists in the scalar domain.
    fn cube_root(&self) -> Option<Self>;
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Debug + Integer + Signed + From<i64> + ToPrimitive + Roots,
{
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(T::from(n))
    }

    fn residue_mod(&self, p: u64) -> Option<u64> {
        let pt = T::from(p as i64);
        let den = self.denom().mod_floor(&pt).to_u64()?;
        if den == 0 {
            return None;
        }
        let num = self.numer().mod_floor(&pt).to_u64()?;
        let inv = super::int::pow_mod(den, p - 2, p);
        Some(super::int::mul_mod(num, inv, p))
    }

    fn cube_root(&self) -> Option<Self> {
        let root = |x: &T| {
            let r = x.cbrt();
            (r.clone() * r.clone() * r.clone() == *x).then_some(r)
        };
        if self.is_zero() {
            return Some(Self::zero());
        }
        Some(Ratio::new(root(self.numer())?, root(self.denom())?))
    }
}

/// `n` as a scalar, for small loop counters.
pub(crate) fn sc<T: Scalar>(n: i64) -> T {
    T::from_int(n)
}

/// `x^e` by repeated squaring.
pub fn pow<T: Scalar>(x: &T, mut e: u32) -> T {
    let mut base = x.clone();
    let mut acc = T::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    acc
}

/// Writes `sum c_i * basis_i`, dropping zero terms and unit coefficients.
/// An empty basis string marks the constant term.
pub fn write_terms<T: Scalar + fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    terms: &[(&T, String)],
) -> fmt::Result {
    let mut first = true;
    for (c, basis) in terms {
        if c.is_zero() {
            continue;
        }
        let abs = c.abs();
        if c.is_negative() {
            f.write_str("-")?;
        } else if !first {
            f.write_str("+")?;
        }
        first = false;
        if basis.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            f.write_str(basis)?;
        } else {
            write!(f, "{abs}*{basis}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    #[test]
    fn residues() {
        let x = Rat::new(3.into(), 4.into());
        assert_eq!(x.residue_mod(5), Some(2)); // 3 * 4^{-1} = 3 * 4 = 12
        assert_eq!(x.residue_mod(2), None);
        assert_eq!(Rat::from_int(-1).residue_mod(7), Some(6));
    }

    #[test]
    fn cube_roots() {
        assert_eq!(Rat::from_int(8).cube_root(), Some(Rat::from_int(2)));
        assert_eq!(Rat::from_int(-27).cube_root(), Some(Rat::from_int(-3)));
        let x = Rat::new(8.into(), 125.into());
        assert_eq!(x.cube_root(), Some(Rat::new(2.into(), 5.into())));
        assert_eq!(Rat::from_int(9).cube_root(), None);
        let small = Ratio::<i64>::new(-1, 27);
        assert_eq!(small.cube_root(), Some(Ratio::new(-1, 3)));
    }
}
