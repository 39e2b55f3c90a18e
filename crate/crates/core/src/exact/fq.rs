//! Finite fields `F_p` and `F_{p^2}`.
//!
//! `F_{p^2}` is `F_p[t]/(t^2 - c1*t - c0)`. For odd `p` the modulus is
//! `t^2 = r` with `r` a non-residue; `F_4` uses `t^2 = t + 1`.

use std::fmt;

use super::int::{is_prime, mul_mod, pow_mod};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fq {
    p: u64,
    f: u32,
    c1: u64,
    c0: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FqElem {
    field: Fq,
    c: [u64; 2],
}

impl Fq {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(Fq {
            p,
            f: 1,
            c1: 0,
            c0: 0,
        })
    }

    /// `F_{p^2}` presented as `t^2 = r`; `r` must be a non-residue mod odd `p`.
    pub fn quadratic(p: u64, r: i64) -> Result<Self> {
        Self::with_modulus(p, 0, r)
    }

    /// `F_{p^2}` presented as `t^2 = c1*t + c0`; the polynomial must have no root.
    pub fn with_modulus(p: u64, c1: i64, c0: i64) -> Result<Self> {
        Self::prime(p)?;
        let red = |x: i64| x.rem_euclid(p as i64) as u64;
        let field = Fq {
            p,
            f: 2,
            c1: red(c1),
            c0: red(c0),
        };
        let has_root = (0..p).any(|x| {
            let lhs = mul_mod(x, x, p);
            let rhs = (mul_mod(field.c1, x, p) + field.c0) % p;
            lhs == rhs
        });
        if has_root {
            return Err(Error::InvalidArgument(format!(
                "t^2 - {c1}t - {c0} is reducible mod {p}"
            )));
        }
        Ok(field)
    }

    /// The field of order `q` with the default modulus: smallest non-residue
    /// for odd `p`, `t^2 = t + 1` for `q = 4`.
    pub fn of_order(q: u64) -> Result<Self> {
        if is_prime(q) {
            return Self::prime(q);
        }
        let p = (2..q).find(|p| p * p == q && is_prime(*p));
        match p {
            Some(2) => Self::with_modulus(2, 1, 1),
            Some(p) => {
                let r = (2..p)
                    .find(|&r| pow_mod(r, (p - 1) / 2, p) == p - 1)
                    .expect("odd p");
                Self::quadratic(p, r as i64)
            }
            None => Err(Error::Unsupported(format!("field of order {q}"))),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.f)
    }

    /// `(c1, c0)` of the modulus `t^2 = c1*t + c0`; zero for prime fields.
    pub fn modulus(&self) -> (u64, u64) {
        (self.c1, self.c0)
    }

    pub fn elem(&self, a: i64, b: i64) -> FqElem {
        let red = |x: i64| x.rem_euclid(self.p as i64) as u64;
        assert!(self.f == 2 || b == 0, "t-coordinate in a prime field");
        FqElem {
            field: *self,
            c: [red(a), red(b)],
        }
    }

    pub fn from_int(&self, a: i64) -> FqElem {
        self.elem(a, 0)
    }

    pub fn from_u64(&self, a: u64) -> FqElem {
        FqElem {
            field: *self,
            c: [a % self.p, 0],
        }
    }

    pub fn zero(&self) -> FqElem {
        self.elem(0, 0)
    }

    pub fn one(&self) -> FqElem {
        self.elem(1, 0)
    }

    /// The generator `t` of `F_{p^2}`.
    pub fn gen(&self) -> FqElem {
        assert_eq!(self.f, 2, "prime field has no generator t");
        self.elem(0, 1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        let p = self.p;
        let b_max = if self.f == 2 { p } else { 1 };
        (0..b_max).flat_map(move |b| {
            (0..p).map(move |a| FqElem {
                field: *self,
                c: [a, b],
            })
        })
    }

    /// Roots of `x^2 = c1*x + c0` in this field, in enumeration order.
    pub fn quadratic_roots(&self, c1: &FqElem, c0: &FqElem) -> Vec<FqElem> {
        self.elements()
            .filter(|x| x.mul(x) == c1.mul(x).add(c0))
            .collect()
    }
}

impl FqElem {
    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn coords(&self) -> [u64; 2] {
        self.c
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.field, other.field, "mixed finite fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let p = self.field.p;
        FqElem {
            field: self.field,
            c: [(self.c[0] + other.c[0]) % p, (self.c[1] + other.c[1]) % p],
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.field.p;
        FqElem {
            field: self.field,
            c: [(p - self.c[0]) % p, (p - self.c[1]) % p],
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let Fq { p, c1, c0, .. } = self.field;
        let [a, b] = self.c;
        let [c, d] = other.c;
        // (a + bt)(c + dt) = ac + (ad + bc)t + bd t^2, t^2 = c1 t + c0
        let bd = mul_mod(b, d, p);
        let x = (mul_mod(a, c, p) + mul_mod(bd, c0, p)) % p;
        let y = (mul_mod(a, d, p) + mul_mod(b, c, p) + mul_mod(bd, c1, p)) % p;
        FqElem {
            field: self.field,
            c: [x, y],
        }
    }

    /// Square-and-multiply exponentiation.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.pow(self.field.order() - 2))
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0, 0]
    }

    pub fn is_one(&self) -> bool {
        self.c == [1, 0]
    }

    pub fn frobenius(&self) -> Self {
        self.pow(self.field.p)
    }
}

/// Prints `a + b t` as `2+t`, `3t`, `4`, ...
impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.c;
        let t = match b {
            0 => String::new(),
            1 => "t".to_string(),
            b => format!("{b}t"),
        };
        match (a, b) {
            (a, 0) => write!(f, "{a}"),
            (0, _) => write!(f, "{t}"),
            (a, _) => write!(f, "{a}+{t}"),
        }
    }
}
