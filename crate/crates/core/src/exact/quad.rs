//! Elements `a + b*sqrt(d)` of a quadratic field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::int::is_squarefree;
use super::scalar::Scalar;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem<T> {
    d: i64,
    a: T,
    b: T,
}

/// Subfield selector for relative norms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subfield {
    Rational,
    /// `Q(sqrt d)` for squarefree `d`.
    Quadratic(i64),
}

/// Value of a relative norm.
#[derive(Clone, Debug, PartialEq)]
pub enum NormValue<T> {
    Rational(T),
    Quadratic(QuadElem<T>),
}

impl<T: Scalar> QuadElem<T> {
    pub fn new(d: i64, a: T, b: T) -> Result<Self> {
        if d == 1 || !is_squarefree(d) {
            return Err(Error::InvalidArgument(format!(
                "radicand {d} must be squarefree and != 1"
            )));
        }
        Ok(QuadElem { d, a, b })
    }

    pub fn from_ints(d: i64, a: i64, b: i64) -> Result<Self> {
        Self::new(d, T::from_int(a), T::from_int(b))
    }

    pub fn rational(d: i64, a: T) -> Result<Self> {
        Self::new(d, a, T::zero())
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn conj(&self) -> Self {
        QuadElem {
            d: self.d,
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    pub fn norm(&self) -> T {
        self.a.clone() * self.a.clone() - T::from_int(self.d) * self.b.clone() * self.b.clone()
    }

    pub fn trace(&self) -> T {
        self.a.clone() + self.a.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn one(d: i64) -> Result<Self> {
        Self::rational(d, T::one())
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let c = self.conj();
        Ok(QuadElem {
            d: self.d,
            a: c.a / n.clone(),
            b: c.b / n,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QuadElem {
            d: self.d,
            a: T::one(),
            b: T::zero(),
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Norm down to `sub`; `Q(sqrt d)` itself is allowed (trivial subgroup).
    pub fn field_norm(&self, sub: Subfield) -> Result<NormValue<T>> {
        match sub {
            Subfield::Rational => Ok(NormValue::Rational(self.norm())),
            Subfield::Quadratic(d) if d == self.d => Ok(NormValue::Quadratic(self.clone())),
            Subfield::Quadratic(d) => Err(Error::InvalidArgument(format!(
                "Q(sqrt {d}) is not a subfield of Q(sqrt {})",
                self.d
            ))),
        }
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.d, other.d, "mixed quadratic fields");
    }
}

impl<T: Scalar> Add for &QuadElem<T> {
    type Output = QuadElem<T>;
    fn add(self, o: &QuadElem<T>) -> QuadElem<T> {
        self.same_field(o);
        QuadElem {
            d: self.d,
            a: self.a.clone() + o.a.clone(),
            b: self.b.clone() + o.b.clone(),
        }
    }
}

impl<T: Scalar> Sub for &QuadElem<T> {
    type Output = QuadElem<T>;
    fn sub(self, o: &QuadElem<T>) -> QuadElem<T> {
        self.same_field(o);
        QuadElem {
            d: self.d,
            a: self.a.clone() - o.a.clone(),
            b: self.b.clone() - o.b.clone(),
        }
    }
}

impl<T: Scalar> Mul for &QuadElem<T> {
    type Output = QuadElem<T>;
    fn mul(self, o: &QuadElem<T>) -> QuadElem<T> {
        self.same_field(o);
        let d = T::from_int(self.d);
        QuadElem {
            d: self.d,
            a: self.a.clone() * o.a.clone() + d * self.b.clone() * o.b.clone(),
            b: self.a.clone() * o.b.clone() + self.b.clone() * o.a.clone(),
        }
    }
}

impl<T: Scalar> Neg for &QuadElem<T> {
    type Output = QuadElem<T>;
    fn neg(self) -> QuadElem<T> {
        QuadElem {
            d: self.d,
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for QuadElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::exact::scalar::write_terms(
            f,
            &[
                (&self.a, String::new()),
                (&self.b, format!("sqrt({})", self.d)),
            ],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> QuadElem<Rat> {
        QuadElem::from_ints(-7, a, b).unwrap()
    }

    #[test]
    fn norm_of_one_plus_sqrt_minus7() {
        assert_eq!(
            q(1, 1).field_norm(Subfield::Rational).unwrap(),
            NormValue::Rational(Rat::from_int(8))
        );
        assert_eq!(&q(1, 1) * &q(1, -1), q(8, 0));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(QuadElem::<Rat>::from_ints(4, 1, 1).is_err());
        assert!(QuadElem::<Rat>::from_ints(1, 1, 1).is_err());
        assert!(q(1, 1).field_norm(Subfield::Quadratic(-3)).is_err());
        assert_eq!(q(0, 0).inv(), Err(Error::ZeroDivisor));
    }

    #[test]
    fn inverse_and_powers() {
        let x = q(1, 1);
        assert_eq!(&x * &x.inv().unwrap(), q(1, 0));
        assert_eq!(x.pow(3), &(&x * &x) * &x);
        assert_eq!(x.pow(0), q(1, 0));
    }

    fn arb() -> impl Strategy<Value = QuadElem<Rat>> {
        (-50i64..50, -50i64..50, 1i64..20, 1i64..20).prop_map(|(a, b, da, db)| {
            QuadElem::new(
                -7,
                Rat::new(a.into(), da.into()),
                Rat::new(b.into(), db.into()),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(x in arb(), y in arb()) {
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn ring_laws(x in arb(), y in arb(), z in arb()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
        }
    }
}
