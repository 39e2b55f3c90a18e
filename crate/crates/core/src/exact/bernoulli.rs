//! Bernoulli numbers and polynomials, convention `B_1 = -1/2`.

use super::scalar::{sc, Scalar};

/// `B_0, ..., B_n` via the Akiyama–Tanigawa transform.
pub fn bernoulli_numbers<T: Scalar>(n: usize) -> Vec<T> {
    let mut row: Vec<T> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        row.push(T::one() / sc(m as i64 + 1));
        for j in (1..=m).rev() {
            row[j - 1] = sc::<T>(j as i64) * (row[j - 1].clone() - row[j].clone());
        }
        out.push(row[0].clone());
    }
    // The transform yields B_1 = +1/2.
    if n >= 1 {
        out[1] = -out[1].clone();
    }
    out
}

pub fn bernoulli_number<T: Scalar>(n: usize) -> T {
    bernoulli_numbers::<T>(n).pop().expect("non-empty table")
}

/// Binomial row `C(n, 0..=n)` in the scalar type.
pub(crate) fn binomial_row<T: Scalar>(n: usize) -> Vec<T> {
    let mut row = vec![T::one()];
    for k in 1..=n {
        let prev = row[k - 1].clone();
        row.push(prev * sc(n as i64 - k as i64 + 1) / sc(k as i64));
    }
    row
}

/// `B_n(x) = sum_k C(n,k) B_k x^(n-k)`, evaluated by Horner's rule.
pub fn bernoulli_poly<T: Scalar>(n: usize, x: &T) -> T {
    let b = bernoulli_numbers::<T>(n);
    bernoulli_poly_with(&b, n, x)
}

/// As [`bernoulli_poly`] with a precomputed table `b` of length > n.
pub(crate) fn bernoulli_poly_with<T: Scalar>(b: &[T], n: usize, x: &T) -> T {
    let c = binomial_row::<T>(n);
    (0..=n).fold(T::zero(), |acc, k| {
        acc * x.clone() + c[k].clone() * b[k].clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use num_rational::Ratio;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    // Independent oracle: sum_{k=0}^{n} C(n+1,k) B_k = 0 solved for B_n.
    fn recurrence_table(n: usize) -> Vec<Rat> {
        let mut b = vec![Rat::from_int(1)];
        for m in 1..=n {
            let c = binomial_row::<Rat>(m + 1);
            let s = (0..m).fold(Rat::from_int(0), |acc, k| acc + c[k].clone() * b[k].clone());
            b.push(-s / c[m].clone());
        }
        b
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli_number::<Rat>(0), r(1, 1));
        assert_eq!(bernoulli_number::<Rat>(1), r(-1, 2));
        assert_eq!(bernoulli_number::<Rat>(2), r(1, 6));
        assert_eq!(bernoulli_number::<Rat>(3), r(0, 1));
    }

    #[test]
    fn b12_matches_recurrence_oracle() {
        let oracle = recurrence_table(12);
        assert_eq!(oracle[12], r(-691, 2730));
        assert_eq!(bernoulli_number::<Rat>(12), oracle[12]);
    }

    #[test]
    fn recurrence_holds_to_30() {
        let b = bernoulli_numbers::<Rat>(30);
        assert_eq!(b, recurrence_table(30));
        for n in 1..=30 {
            let c = binomial_row::<Rat>(n + 1);
            let s = (0..=n).fold(Rat::from_int(0), |acc, k| acc + c[k].clone() * b[k].clone());
            assert_eq!(s, Rat::from_int(0), "n = {n}");
        }
    }

    #[test]
    fn generic_over_machine_rationals() {
        let small: Vec<Ratio<i128>> = bernoulli_numbers(14);
        let big: Vec<Rat> = bernoulli_numbers(14);
        for (s, b) in small.iter().zip(&big) {
            assert_eq!(s.numer().to_string(), b.numer().to_string());
            assert_eq!(s.denom().to_string(), b.denom().to_string());
        }
    }

    #[test]
    fn polynomial_values() {
        assert_eq!(bernoulli_poly(2, &r(0, 1)), r(1, 6));
        assert_eq!(bernoulli_poly(1, &r(1, 2)), r(0, 1));
        assert_eq!(bernoulli_poly(2, &r(1, 4)), r(-1, 48));
    }

    proptest! {
        #[test]
        fn difference_equation(n in 1usize..=10, a in -200i64..200, d in 1i64..60) {
            let x = r(a, d);
            let lhs = bernoulli_poly(n, &(x.clone() + Rat::from_int(1))) - bernoulli_poly(n, &x);
            let rhs = Rat::from_int(n as i64) * crate::exact::scalar::pow(&x, n as u32 - 1);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
