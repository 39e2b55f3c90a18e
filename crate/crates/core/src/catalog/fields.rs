//! Splitting of rational primes in `k` and `l`, plus small field invariants.

use serde::{Deserialize, Serialize};

use super::{FieldDesc, PairDesc};
use crate::characters::kronecker_symbol;
use num_integer::Integer;

use crate::exact::int::{is_prime, pow_mod};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Behavior {
    Split,
    Inert,
    Ramified,
}

/// `(e, f, g)` of `p` in `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Splitting {
    pub e: u32,
    pub f: u32,
    pub g: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceOfK {
    pub q: u64,
    /// Behavior of this place in `l/k`; `None` when `l` is unknown.
    pub in_ell: Option<Behavior>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceData {
    pub p: u64,
    /// `None` when the splitting in `k` comes from catalog places only.
    pub in_k: Option<Splitting>,
    pub places: Vec<PlaceOfK>,
    /// `computed` or `catalog`.
    pub source: &'static str,
}

pub(crate) fn is_power_of(q: u64, p: u64) -> bool {
    if p < 2 || q < p {
        return false;
    }
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

/// `(e, f, g)` of an unramified-or-not prime in the compositum of quadratic
/// fields with the given characters (all characters of a 2-elementary group).
fn splitting_from_chars(chars: &[i64], p: u64) -> Splitting {
    let vals: Vec<i32> = chars
        .iter()
        .map(|&d| kronecker_symbol(d, p as i64))
        .collect();
    let ramified = vals.iter().filter(|&&v| v == 0).count();
    // a group with 2^r - 1 nontrivial characters cuts out a field of degree 2^r
    let degree = chars.len() as u32 + 1;
    let e = match ramified {
        0 => 1,
        r => degree / (degree - r as u32),
    };
    // the unramified characters form a subgroup; Frobenius is trivial on it iff every value is 1
    let unram: Vec<i32> = vals.iter().copied().filter(|&v| v != 0).collect();
    let f = if unram.iter().all(|&v| v == 1) { 1 } else { 2 };
    Splitting {
        e,
        f,
        g: degree / (e * f),
    }
}

fn splitting_cyclotomic_real(n: u64, p: u64) -> (Splitting, Splitting) {
    let order =
        |target: &dyn Fn(u64) -> bool| (1..=n).find(|&t| target(pow_mod(p, t, n))).unwrap() as u32;
    let f_l = order(&|x| x == 1);
    let f_k = order(&|x| x == 1 || x == n - 1);
    let deg_l = crate::exact::int::euler_phi(n) as u32;
    (
        Splitting {
            e: 1,
            f: f_k,
            g: deg_l / 2 / f_k,
        },
        Splitting {
            e: 1,
            f: f_l,
            g: deg_l / f_l,
        },
    )
}

fn relative(k: Splitting, l: Splitting) -> Behavior {
    if l.e > k.e {
        Behavior::Ramified
    } else if l.f > k.f {
        Behavior::Inert
    } else {
        Behavior::Split
    }
}

/// Places of `k` over `p` and how each behaves in `l`.
///
/// Quadratic `k` and biquadratic `l` are handled through Kronecker symbols of
/// the character lists; the real cyclotomic case through orders mod the
/// conductor; anything else falls back to catalog-supplied places.
pub fn place_behavior(pair: &PairDesc, p: u64) -> Result<PlaceData> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let k_chars = pair.k.char_factors.as_ref().map(|c| c.discs());
    let l_chars = pair.ell.char_factors.as_ref().map(|c| c.discs());
    let known_shape = |k: &[i64], l: &[i64]| {
        (k.is_empty() && l.len() == 1) || (k.len() == 1 && l.len() == 3 && l.contains(&k[0]))
    };

    let computed = match (&k_chars, &l_chars, pair.ell.cyclotomic_conductor) {
        (Some(k), Some(l), _) if known_shape(k, l) => {
            let (sk, sl) = (splitting_from_chars(k, p), splitting_from_chars(l, p));
            let q = p.pow(sk.f);
            let in_ell = relative(sk, sl);
            Some(PlaceData {
                p,
                in_k: Some(sk),
                places: vec![
                    PlaceOfK {
                        q,
                        in_ell: Some(in_ell)
                    };
                    sk.g as usize
                ],
                source: "computed",
            })
        }
        (_, _, Some(n)) if n % p != 0 => {
            let (sk, sl) = splitting_cyclotomic_real(n, p);
            Some(PlaceData {
                p,
                in_k: Some(sk),
                places: vec![
                    PlaceOfK {
                        q: p.pow(sk.f),
                        in_ell: Some(relative(sk, sl))
                    };
                    sk.g as usize
                ],
                source: "computed",
            })
        }
        (Some(k), _, _) if k.len() <= 1 => {
            let sk = splitting_from_chars(k, p);
            Some(PlaceData {
                p,
                in_k: Some(sk),
                places: vec![
                    PlaceOfK {
                        q: p.pow(sk.f),
                        in_ell: None
                    };
                    sk.g as usize
                ],
                source: "computed",
            })
        }
        _ => None,
    };

    let listed: Vec<PlaceOfK> = pair
        .places
        .iter()
        .filter(|v| v.prime == p)
        .map(|v| PlaceOfK {
            q: v.q,
            in_ell: Some(v.in_ell),
        })
        .collect();
    match computed {
        Some(mut data) => {
            // fill unknown l-behavior from catalog places with the same q
            let mut pool = listed;
            for place in data.places.iter_mut().filter(|pl| pl.in_ell.is_none()) {
                if let Some(i) = pool.iter().position(|c| c.q == place.q) {
                    place.in_ell = pool.remove(i).in_ell;
                }
            }
            Ok(data)
        }
        None if !listed.is_empty() => Ok(PlaceData {
            p,
            in_k: None,
            places: listed,
            source: "catalog",
        }),
        None => Err(Error::MissingData {
            pair: pair.id.clone(),
            what: format!("splitting data at {p}"),
        }),
    }
}

/// Class number of the imaginary quadratic order of discriminant `d < 0`,
/// by counting reduced primitive forms.
pub fn class_number_imaginary(d: i64) -> Result<u32> {
    if d >= 0 || d.rem_euclid(4) > 1 {
        return Err(Error::InvalidArgument(format!(
            "{d} is not a negative discriminant"
        )));
    }
    let mut h = 0;
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    Ok(h)
}

/// Order of the group of roots of unity, from the character list or the
/// cyclotomic conductor.
pub fn roots_of_unity_order(field: &FieldDesc) -> Option<u32> {
    if let Some(n) = field.cyclotomic_conductor {
        return Some(crate::exact::int::lcm(2, n) as u32);
    }
    let discs = field.char_factors.as_ref()?.discs();
    let mut w = 2;
    if discs.contains(&-4) {
        w = if discs.contains(&8) { 8 } else { 4 };
    }
    if discs.contains(&-3) {
        w *= 3;
    }
    Some(w)
}
