//! Test-side oracles, written without the library's arithmetic.

#![allow(dead_code)]

use fpp_core::Rat;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `F_{p^n}` for `n <= 3` by full addition and multiplication tables.
/// Element `i` is the polynomial with base-`p` digits of `i`.
pub struct SmallField {
    pub p: usize,
    pub n: u32,
    pub size: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

fn digits(mut x: usize, p: usize, n: u32) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

impl SmallField {
    pub fn new(p: usize, n: u32) -> Self {
        assert!((1..=3).contains(&n));
        let size = p.pow(n);
        // monic x^n + c(x) with no root in F_p; irreducible since n <= 3
        let modulus = (0..p.pow(n))
            .map(|c| digits(c, p, n))
            .find(|c| {
                n == 1
                    || (0..p).all(|x| {
                        let mut v = 1;
                        for _ in 0..n {
                            v = v * x % p;
                        }
                        let mut pw = 1;
                        for &ci in c.iter() {
                            v = (v + ci * pw) % p;
                            pw = pw * x % p;
                        }
                        v != 0
                    })
            })
            .unwrap();
        let mulpoly = |a: &[usize], b: &[usize]| {
            let mut prod = vec![0; 2 * n as usize];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            for k in (n as usize..prod.len()).rev() {
                let top = prod[k];
                if top == 0 {
                    continue;
                }
                prod[k] = 0;
                // x^n = -c(x)
                for (i, &ci) in modulus.iter().enumerate() {
                    let idx = k - n as usize + i;
                    prod[idx] = (prod[idx] + top * (p - ci % p)) % p;
                }
            }
            prod.truncate(n as usize);
            prod
        };
        let mut add = vec![vec![0; size]; size];
        let mut mul = vec![vec![0; size]; size];
        for a in 0..size {
            let da = digits(a, p, n);
            for b in 0..size {
                let db = digits(b, p, n);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a][b] = undigits(&s, p);
                mul[a][b] = undigits(&mulpoly(&da, &db), p);
            }
        }
        SmallField {
            p,
            n,
            size,
            add,
            mul,
        }
    }

    pub fn q(&self) -> usize {
        self.size
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.size).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn int(&self, a: i64) -> usize {
        a.rem_euclid(self.p as i64) as usize
    }

    /// The set of nonzero cubes, by enumeration.
    pub fn cubes(&self) -> Vec<bool> {
        let mut is = vec![false; self.size];
        for x in 1..self.size {
            is[self.pow(x, 3)] = true;
        }
        is
    }

    pub fn sqrt_all(&self, a: usize) -> Vec<usize> {
        (0..self.size).filter(|&x| self.mul(x, x) == a).collect()
    }
}

// Finite groups of Lie type over F_q, counted element by element.

/// `F_{q^2}` with conjugation `x -> x^q`.
pub struct Unitary {
    f: SmallField,
    conj: Vec<usize>,
}

impl Unitary {
    pub fn new(p: usize) -> Self {
        let f = SmallField::new(p, 2);
        let conj = (0..f.size).map(|x| f.pow(x, p)).collect();
        Unitary { f, conj }
    }

    /// `h(u, v) = sum u_i conj(v_{2-i})` for the antidiagonal form.
    fn h(&self, u: &[usize], v: &[usize]) -> usize {
        let n = u.len();
        (0..n).fold(0, |acc, i| {
            self.f.add(acc, self.f.mul(u[i], self.conj[v[n - 1 - i]]))
        })
    }

    fn vectors(&self, n: usize) -> Vec<Vec<usize>> {
        let s = self.f.size;
        (0..s.pow(n as u32))
            .map(|mut x| {
                (0..n)
                    .map(|_| {
                        let d = x % s;
                        x /= s;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    fn det3(&self, c: &[&Vec<usize>; 3]) -> usize {
        let f = &self.f;
        let m = |i: usize, j: usize| c[j][i];
        let t = |a: usize, b: usize, d: usize| f.mul(f.mul(a, b), d);
        let pos = f.add(
            f.add(t(m(0, 0), m(1, 1), m(2, 2)), t(m(0, 1), m(1, 2), m(2, 0))),
            t(m(0, 2), m(1, 0), m(2, 1)),
        );
        let neg = f.add(
            f.add(t(m(0, 2), m(1, 1), m(2, 0)), t(m(0, 0), m(1, 2), m(2, 1))),
            t(m(0, 1), m(1, 0), m(2, 2)),
        );
        f.sub(pos, neg)
    }

    /// `|SU(3)(F_q)|`: columns `c` with `h(c_i, c_j) = J_{ij}` and det 1.
    pub fn su3(&self) -> usize {
        let vs = self.vectors(3);
        let mut count = 0;
        for a in &vs {
            if self.h(a, a) != 0 || a.iter().all(|&x| x == 0) {
                continue;
            }
            for c in &vs {
                if self.h(a, c) != 1 || self.h(c, c) != 0 {
                    continue;
                }
                for b in &vs {
                    if self.h(b, b) == 1
                        && self.h(a, b) == 0
                        && self.h(c, b) == 0
                        && self.det3(&[a, b, c]) == 1
                    {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// `|U(2)(F_q)|` for the antidiagonal form; isomorphic to `S(U(2) x U(1))`.
    pub fn u2(&self) -> usize {
        let vs = self.vectors(2);
        let mut count = 0;
        for a in &vs {
            for b in &vs {
                if self.h(a, a) == 0 && self.h(b, b) == 0 && self.h(a, b) == 1 {
                    count += 1;
                }
            }
        }
        count
    }

    /// Diagonal elements of `SU(3)` for the antidiagonal form.
    pub fn torus(&self) -> usize {
        let n = self.f.size;
        let mut count = 0;
        for a in 1..n {
            for b in 1..n {
                for c in 1..n {
                    let f = &self.f;
                    if f.mul(a, self.conj[c]) == 1
                        && f.mul(b, self.conj[b]) == 1
                        && f.mul(f.mul(a, b), c) == 1
                    {
                        count += 1;
                    }
                }
            }
        }
        count
    }
}

pub fn sl(n: usize, p: usize) -> usize {
    let f = SmallField::new(p, 1);
    let entries = n * n;
    let mut count = 0;
    for mut x in 0..p.pow(entries as u32) {
        let m: Vec<usize> = (0..entries)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect();
        let det = match n {
            2 => f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2])),
            3 => {
                let t = |i: usize, j: usize, k: usize| f.mul(f.mul(m[i], m[j]), m[k]);
                f.sub(
                    f.add(f.add(t(0, 4, 8), t(1, 5, 6)), t(2, 3, 7)),
                    f.add(f.add(t(2, 4, 6), t(0, 5, 7)), t(1, 3, 8)),
                )
            }
            _ => unreachable!(),
        };
        if det == 1 {
            count += 1;
        }
    }
    count
}

/// Norm-one elements of `F_{q^3}` over `F_q`.
pub fn norm_one_cubic(p: usize) -> usize {
    let f = SmallField::new(p, 3);
    (1..f.size)
        .filter(|&x| f.pow(x, 1 + p + p * p) == 1)
        .count()
}

/// `e' = (|M_hyp| / |M_P|) / q^((dim M_hyp - dim M_P) / 2)` for reductive
/// quotients `M`.
pub fn euler_ratio(q: usize, hyp: (usize, u32), par: (usize, u32)) -> Rat {
    let n = |x: usize| Rat::from_integer((x as i64).into());
    n(hyp.0) / n(par.0) / n(q.pow((hyp.1 - par.1) / 2))
}

// Generalized Bernoulli numbers from power sums.

pub fn is_squarefree(n: i64) -> bool {
    let n = n.abs();
    (2..=n).take_while(|p| p * p <= n).all(|p| n % (p * p) != 0)
}

pub fn is_fundamental(d: i64) -> bool {
    if d == 1 || d == 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d),
        0 => matches!((d / 4).rem_euclid(4), 2 | 3) && is_squarefree(d / 4),
        _ => false,
    }
}

/// `chi_d(p)` by Euler's criterion and the rule at 2.
pub fn chi_prime(d: i64, p: i64) -> i64 {
    if d % p == 0 {
        return 0;
    }
    if p == 2 {
        return if matches!(d.rem_euclid(8), 1 | 7) {
            1
        } else {
            -1
        };
    }
    let mut r = 1i64;
    let b = d.rem_euclid(p);
    for _ in 0..(p - 1) / 2 {
        r = r * b % p;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

pub fn chi(d: i64, mut a: i64) -> i64 {
    if d == 1 {
        return 1;
    }
    let mut v = 1;
    let mut p = 2;
    while a > 1 {
        while a % p == 0 {
            v *= chi_prime(d, p);
            a /= p;
        }
        p += 1;
    }
    v
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Coefficient of `N^1` in the interpolating polynomial through `(x_i, y_i)`.
pub fn linear_coefficient(xs: &[i64], ys: &[Rat]) -> Rat {
    let mut total = Rat::zero();
    for (i, yi) in ys.iter().enumerate() {
        // coefficients of prod_{j != i} (N - x_j), low degree first
        let mut poly = vec![Rat::one()];
        let mut denom = Rat::one();
        for (j, &xj) in xs.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut next = vec![Rat::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k] -= c * rat(xj);
                next[k + 1] += c;
            }
            poly = next;
            denom *= rat(xs[i] - xj);
        }
        total += yi * &poly[1] / denom;
    }
    total
}

/// `B_{k,chi_d}` from power sums.
pub fn bernoulli_oracle(k: usize, d: i64) -> Rat {
    let f = if d == 1 { 1 } else { d.abs() };
    let xs: Vec<i64> = (0..=k as i64 + 1).collect();
    let ys: Vec<Rat> = xs
        .iter()
        .map(|&n| {
            let s: BigInt = (1..=n * f)
                .map(|a| BigInt::from(chi(d, a)) * BigInt::from(a).pow(k as u32))
                .sum();
            Rat::from_integer(s)
        })
        .collect();
    linear_coefficient(&xs, &ys) / rat(f)
}

pub fn l_oracle(k: usize, d: i64) -> Rat {
    -bernoulli_oracle(k, d) / rat(k as i64)
}
