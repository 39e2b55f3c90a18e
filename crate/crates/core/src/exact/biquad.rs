//! Elements of `Q(sqrt d1, sqrt d2)` over the basis `1, e1, e2, e3` with
//! `e1 = sqrt d1`, `e2 = sqrt d2`, `e3 = e1*e2`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::int::{is_squarefree, squarefree_part};
use super::quad::{NormValue, QuadElem, Subfield};
use super::scalar::Scalar;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiquadElem<T> {
    d1: i64,
    d2: i64,
    c: [T; 4],
}

/// The three non-trivial automorphisms, by which square roots they negate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Automorphism {
    /// `e1 -> -e1`, fixes `Q(sqrt d2)`.
    FlipFirst,
    /// `e2 -> -e2`, fixes `Q(sqrt d1)`.
    FlipSecond,
    /// Both; fixes `Q(sqrt(d1 d2))`.
    FlipBoth,
}

impl<T: Scalar> BiquadElem<T> {
    pub fn new(d1: i64, d2: i64, c: [T; 4]) -> Result<Self> {
        if d1 == d2 || d1 == 1 || d2 == 1 || !is_squarefree(d1) || !is_squarefree(d2) {
            return Err(Error::InvalidArgument(format!(
                "radicands ({d1}, {d2}) must be distinct squarefree integers != 1"
            )));
        }
        Ok(BiquadElem { d1, d2, c })
    }

    pub fn from_ints(d1: i64, d2: i64, c: [i64; 4]) -> Result<Self> {
        Self::new(d1, d2, c.map(T::from_int))
    }

    pub fn rational(d1: i64, d2: i64, x: T) -> Result<Self> {
        Self::new(d1, d2, [x, T::zero(), T::zero(), T::zero()])
    }

    pub fn radicands(&self) -> (i64, i64) {
        (self.d1, self.d2)
    }

    pub fn coords(&self) -> &[T; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn apply(&self, sigma: Automorphism) -> Self {
        let [a, b, c, d] = self.c.clone();
        let c = match sigma {
            Automorphism::FlipFirst => [a, -b, c, -d],
            Automorphism::FlipSecond => [a, b, -c, -d],
            Automorphism::FlipBoth => [a, -b, -c, d],
        };
        BiquadElem {
            d1: self.d1,
            d2: self.d2,
            c,
        }
    }

    /// Norm to `Q`.
    pub fn norm(&self) -> T {
        let half = self * &self.apply(Automorphism::FlipSecond);
        let [a, b, _, _] = half.c;
        a.clone() * a - T::from_int(self.d1) * b.clone() * b
    }

    /// Relative norm to `sub`. For `Q(sqrt(d1 d2))` the result is written in
    /// the squarefree radicand `s` via `e3 = m*sqrt(s)` where `d1 d2 = m^2 s`.
    pub fn field_norm(&self, sub: Subfield) -> Result<NormValue<T>> {
        let d = match sub {
            Subfield::Rational => return Ok(NormValue::Rational(self.norm())),
            Subfield::Quadratic(d) => d,
        };
        let (s, m) = squarefree_part(self.d1 * self.d2);
        let (sigma, idx, radicand, scale) = if d == self.d1 {
            (Automorphism::FlipSecond, 1, self.d1, 1)
        } else if d == self.d2 {
            (Automorphism::FlipFirst, 2, self.d2, 1)
        } else if d == s {
            (Automorphism::FlipBoth, 3, s, m)
        } else {
            return Err(Error::InvalidArgument(format!(
                "Q(sqrt {d}) is not a subfield of Q(sqrt {}, sqrt {})",
                self.d1, self.d2
            )));
        };
        let n = self * &self.apply(sigma);
        let [a, ..] = n.c.clone();
        let b = n.c[idx].clone() * T::from_int(scale);
        Ok(NormValue::Quadratic(QuadElem::new(radicand, a, b)?))
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let others = &(&self.apply(Automorphism::FlipFirst)
            * &self.apply(Automorphism::FlipSecond))
            * &self.apply(Automorphism::FlipBoth);
        Ok(BiquadElem {
            d1: self.d1,
            d2: self.d2,
            c: others.c.map(|x| x / n.clone()),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn one(d1: i64, d2: i64) -> Result<Self> {
        Self::rational(d1, d2, T::one())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = BiquadElem {
            d1: self.d1,
            d2: self.d2,
            c: [T::one(), T::zero(), T::zero(), T::zero()],
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

    fn same_field(&self, o: &Self) {
        assert_eq!((self.d1, self.d2), (o.d1, o.d2), "mixed biquadratic fields");
    }
}

impl<T: Scalar> Add for &BiquadElem<T> {
    type Output = BiquadElem<T>;
    fn add(self, o: &BiquadElem<T>) -> BiquadElem<T> {
        self.same_field(o);
        let c = std::array::from_fn(|i| self.c[i].clone() + o.c[i].clone());
        BiquadElem {
            d1: self.d1,
            d2: self.d2,
            c,
        }
    }
}

impl<T: Scalar> Sub for &BiquadElem<T> {
    type Output = BiquadElem<T>;
    fn sub(self, o: &BiquadElem<T>) -> BiquadElem<T> {
        self.same_field(o);
        let c = std::array::from_fn(|i| self.c[i].clone() - o.c[i].clone());
        BiquadElem {
            d1: self.d1,
            d2: self.d2,
            c,
        }
    }
}

impl<T: Scalar> Neg for &BiquadElem<T> {
    type Output = BiquadElem<T>;
    fn neg(self) -> BiquadElem<T> {
        BiquadElem {
            d1: self.d1,
            d2: self.d2,
            c: self.c.clone().map(|x| -x),
        }
    }
}

impl<T: Scalar> Mul for &BiquadElem<T> {
    type Output = BiquadElem<T>;
    fn mul(self, o: &BiquadElem<T>) -> BiquadElem<T> {
        self.same_field(o);
        let [a0, a1, a2, a3] = self.c.clone();
        let [b0, b1, b2, b3] = o.c.clone();
        let d1 = T::from_int(self.d1);
        let d2 = T::from_int(self.d2);
        // e1 e2 = e3, e1 e3 = d1 e2, e2 e3 = d2 e1, e3^2 = d1 d2
        let c0 = a0.clone() * b0.clone()
            + d1.clone() * a1.clone() * b1.clone()
            + d2.clone() * a2.clone() * b2.clone()
            + d1.clone() * d2.clone() * a3.clone() * b3.clone();
        let c1 = a0.clone() * b1.clone()
            + a1.clone() * b0.clone()
            + d2 * (a2.clone() * b3.clone() + a3.clone() * b2.clone());
        let c2 = a0.clone() * b2.clone()
            + a2.clone() * b0.clone()
            + d1 * (a1.clone() * b3.clone() + a3.clone() * b1.clone());
        let c3 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1;
        BiquadElem {
            d1: self.d1,
            d2: self.d2,
            c: [c0, c1, c2, c3],
        }
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for BiquadElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.c;
        let (s1, s2) = (format!("sqrt({})", self.d1), format!("sqrt({})", self.d2));
        crate::exact::scalar::write_terms(
            f,
            &[
                (a, String::new()),
                (b, s1.clone()),
                (c, s2.clone()),
                (d, format!("{s1}*{s2}")),
            ],
        )
    }
}
