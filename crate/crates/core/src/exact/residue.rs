//! Reduction of quadratic and biquadratic field elements to residue fields.
//!
//! Each place above `p` is a ring map from the `p`-integral elements onto
//! `F_q`. Elements are first rewritten in a basis that is integral at `p`
//! (monomials in generators `sqrt d` or `(1 + sqrt d)/2`); non-integral
//! local coordinates mean the element is not `p`-integral.

use super::fq::{Fq, FqElem};
use super::int::is_prime;
use super::scalar::Scalar;
use crate::{Error, Result};

/// The two field shapes handled by the residue machinery.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldShape {
    Quadratic(i64),
    Biquadratic(i64, i64),
}

impl FieldShape {
    pub fn degree(&self) -> usize {
        match self {
            FieldShape::Quadratic(_) => 2,
            FieldShape::Biquadratic(..) => 4,
        }
    }

    pub fn radicands(&self) -> Vec<i64> {
        match *self {
            FieldShape::Quadratic(d) => vec![d],
            FieldShape::Biquadratic(d1, d2) => vec![d1, d2],
        }
    }
}

/// A generator `g` with `sqrt d = shift + scale * g` and `g^2 = c1 g + c0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Generator {
    shift: i64,
    scale: i64,
    c1: i64,
    c0: i64,
}

impl Generator {
    fn for_radicand(d: i64, p: u64) -> Self {
        if p == 2 && d.rem_euclid(4) == 1 {
            // (1 + sqrt d)/2 satisfies g^2 = g + (d - 1)/4
            Generator {
                shift: -1,
                scale: 2,
                c1: 1,
                c0: (d - 1) / 4,
            }
        } else {
            Generator {
                shift: 0,
                scale: 1,
                c1: 0,
                c0: d,
            }
        }
    }
}

/// One place above `p`, as a residue map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiduePlace {
    p: u64,
    index: usize,
    field: Fq,
    gens: Vec<Generator>,
    /// Images of the local monomial basis `1, g1, g2, g1 g2` (truncated for
    /// quadratic fields).
    images: Vec<FqElem>,
}

impl ResiduePlace {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Position among the places above `p`, starting at 0.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn residue_field(&self) -> Fq {
        self.field
    }

    pub fn residue_cardinality(&self) -> u64 {
        self.field.order()
    }

    /// Coordinates in the local basis, from coordinates in the standard basis.
    fn local_coords<T: Scalar>(&self, c: &[T]) -> Vec<T> {
        let sc = |n: i64| T::from_int(n);
        match (self.gens.as_slice(), c) {
            ([g], [a, b]) => vec![a.clone() + b.clone() * sc(g.shift), b.clone() * sc(g.scale)],
            ([g1, g2], [a, b, c, d]) => {
                let (a1, b1, a2, b2) = (sc(g1.shift), sc(g1.scale), sc(g2.shift), sc(g2.scale));
                vec![
                    a.clone()
                        + b.clone() * a1.clone()
                        + c.clone() * a2.clone()
                        + d.clone() * a1.clone() * a2.clone(),
                    b.clone() * b1.clone() + d.clone() * b1.clone() * a2,
                    c.clone() * b2.clone() + d.clone() * a1 * b2.clone(),
                    d.clone() * b1 * b2,
                ]
            }
            _ => panic!("coordinate count does not match the field degree"),
        }
    }

    /// Image in the residue field, or `None` if the element is not integral at `p`.
    pub fn reduce<T: Scalar>(&self, coords: &[T]) -> Option<FqElem> {
        let local = self.local_coords(coords);
        let mut acc = self.field.zero();
        for (x, img) in local.iter().zip(&self.images) {
            let r = x.residue_mod(self.p)?;
            acc = acc.add(&self.field.from_u64(r).mul(img));
        }
        Some(acc)
    }
}

/// All places of the field above `p`, in a fixed order.
pub fn places_over(shape: FieldShape, p: u64) -> Result<Vec<ResiduePlace>> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let radicands = shape.radicands();
    if let FieldShape::Biquadratic(d1, d2) = shape {
        let supported = if p == 2 {
            d1.rem_euclid(4) == 1 || d2.rem_euclid(4) == 1
        } else {
            !(d1 % p as i64 == 0 && d2 % p as i64 == 0)
        };
        if !supported {
            return Err(Error::Unsupported(format!(
                "no monomial integral basis for Q(sqrt {d1}, sqrt {d2}) at {p}"
            )));
        }
    }
    let gens: Vec<Generator> = radicands
        .iter()
        .map(|&d| Generator::for_radicand(d, p))
        .collect();

    let base = Fq::prime(p)?;
    let rootless = gens.iter().find(|g| {
        base.quadratic_roots(&base.from_int(g.c1), &base.from_int(g.c0))
            .is_empty()
    });
    let field = match rootless {
        Some(g) => Fq::with_modulus(p, g.c1, g.c0)?,
        None => base,
    };
    let roots: Vec<Vec<FqElem>> = gens
        .iter()
        .map(|g| field.quadratic_roots(&field.from_int(g.c1), &field.from_int(g.c0)))
        .collect();

    // Ring maps are choices of roots; places are their Frobenius orbits.
    let mut maps: Vec<Vec<FqElem>> = vec![vec![]];
    for rs in &roots {
        maps = maps
            .into_iter()
            .flat_map(|m| rs.iter().map(move |r| [m.clone(), vec![*r]].concat()))
            .collect();
    }
    let mut reps: Vec<Vec<FqElem>> = Vec::new();
    for m in maps {
        let mut orbit = vec![m.clone()];
        for _ in 1..field.degree() {
            let next: Vec<FqElem> = orbit
                .last()
                .unwrap()
                .iter()
                .map(|x| x.frobenius())
                .collect();
            orbit.push(next);
        }
        if !reps.iter().any(|r| orbit.contains(r)) {
            reps.push(m);
        }
    }

    Ok(reps
        .into_iter()
        .enumerate()
        .map(|(index, m)| {
            let one = field.one();
            let images = match m.as_slice() {
                [g] => vec![one, *g],
                [g1, g2] => vec![one, *g1, *g2, g1.mul(g2)],
                _ => unreachable!(),
            };
            ResiduePlace {
                p,
                index,
                field,
                gens: gens.clone(),
                images,
            }
        })
        .collect())
}
