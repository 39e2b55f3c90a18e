//! Cube classes in `Q(sqrt-7)` and `Q(sqrt-2, sqrt-3)`: membership in the
//! group of elements that are cubes away from `S`, local cube tests through
//! residue fields, and the normalizer certificates built from them.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::catalog::PairDesc;
use crate::exact::fq::FqElem;
use crate::exact::int::{prime_divisors, primes_up_to, trial_factor};
use crate::exact::quad::{NormValue, Subfield};
use crate::exact::residue::{places_over, FieldShape, ResiduePlace};
use crate::exact::scalar::Scalar;
use crate::parahoric::{CoherentCollection, ParahoricTag};
use crate::{Biquad, Error, Quad, Rat, Result};

/// Largest witness prime tried when separating cosets.
const WITNESS_LIMIT: u64 = 100;

/// Names of facts used but not computed here.
pub const AXIOM_FIXED_POINTS: &str = "fixed points of a finite-order element in the building form the building of its centralizer torus";
pub const AXIOM_HYPERSPECIAL: &str = "a torus anisotropic over k_v whose splitting field is unramified lies in a unique parahoric, which is hyperspecial";
pub const AXIOM_COBOUNDARY: &str =
    "the coboundary map identifies the normalizer quotient with the cube-class group";
pub const AXIOM_SPLIT_COSETS: &str = "for cosets that are cubes at the witness place the centralizer torus is still anisotropic there";
pub const AXIOM_IWAHORI_EDGE: &str = "the two maximal parahorics containing an Iwahori are of different types, so normalizing it fixes an edge";
pub const ASSUMPTION_EXHAUSTIVE: &str = "class number 1 and units handled by the norm condition, so elements with all valuations divisible by 3 are cubes";

/// An element of one of the two supported fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    Quad(Quad),
    Biquad(Biquad),
}

impl Elem {
    pub fn shape(&self) -> FieldShape {
        match self {
            Elem::Quad(x) => FieldShape::Quadratic(x.d()),
            Elem::Biquad(x) => {
                let (d1, d2) = x.radicands();
                FieldShape::Biquadratic(d1, d2)
            }
        }
    }

    pub fn one(shape: FieldShape) -> Result<Elem> {
        Ok(match shape {
            FieldShape::Quadratic(d) => Elem::Quad(Quad::one(d)?),
            FieldShape::Biquadratic(d1, d2) => Elem::Biquad(Biquad::one(d1, d2)?),
        })
    }

    pub fn coords(&self) -> Vec<Rat> {
        match self {
            Elem::Quad(x) => vec![x.a().clone(), x.b().clone()],
            Elem::Biquad(x) => x.coords().to_vec(),
        }
    }

    pub fn mul(&self, o: &Elem) -> Result<Elem> {
        match (self, o) {
            (Elem::Quad(a), Elem::Quad(b)) if a.d() == b.d() => Ok(Elem::Quad(a * b)),
            (Elem::Biquad(a), Elem::Biquad(b)) if a.radicands() == b.radicands() => {
                Ok(Elem::Biquad(a * b))
            }
            _ => Err(Error::InvalidArgument(
                "elements of different fields".into(),
            )),
        }
    }

    pub fn div(&self, o: &Elem) -> Result<Elem> {
        match (self, o) {
            (Elem::Quad(a), Elem::Quad(b)) if a.d() == b.d() => Ok(Elem::Quad(a.div(b)?)),
            (Elem::Biquad(a), Elem::Biquad(b)) if a.radicands() == b.radicands() => {
                Ok(Elem::Biquad(a.div(b)?))
            }
            _ => Err(Error::InvalidArgument(
                "elements of different fields".into(),
            )),
        }
    }

    pub fn pow(&self, e: u32) -> Elem {
        match self {
            Elem::Quad(x) => Elem::Quad(x.pow(e)),
            Elem::Biquad(x) => Elem::Biquad(x.pow(e)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        let c = self.coords();
        c[0].is_one() && c[1..].iter().all(Zero::is_zero)
    }

    pub fn norm(&self) -> Rat {
        match self {
            Elem::Quad(x) => x.norm(),
            Elem::Biquad(x) => x.norm(),
        }
    }

    fn relative_norm(&self) -> Result<NormValue<Rat>> {
        match self {
            Elem::Quad(x) => x.field_norm(Subfield::Rational),
            Elem::Biquad(x) => {
                let (d1, d2) = x.radicands();
                let s = crate::exact::int::squarefree_part(d1 * d2).0;
                x.field_norm(Subfield::Quadratic(s))
            }
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Quad(x) => write!(f, "{x}"),
            Elem::Biquad(x) => write!(f, "{x}"),
        }
    }
}

pub fn field_label(shape: FieldShape) -> String {
    match shape {
        FieldShape::Quadratic(d) => format!("Q(sqrt{d})"),
        FieldShape::Biquadratic(d1, d2) => format!("Q(sqrt{d1},sqrt{d2})"),
    }
}

fn check_supported(shape: FieldShape) -> Result<()> {
    match shape {
        FieldShape::Quadratic(-7) | FieldShape::Biquadratic(-2, -3) => Ok(()),
        other => Err(Error::Unsupported(format!(
            "cube classes of {}",
            field_label(other)
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportCheck {
    pub prime: u64,
    pub in_s: bool,
    /// Valuations at the places above `prime`, when computed.
    pub valuations: Option<Vec<i64>>,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    pub element: String,
    pub field: String,
    pub s: Vec<u64>,
    pub relative_norm: String,
    /// A cube root of the relative norm, when one was exhibited.
    pub norm_cube_root: Option<String>,
    pub norm_status: CheckStatus,
    pub support: Vec<SupportCheck>,
    pub status: CheckStatus,
}

fn rat_str(x: &Rat) -> String {
    crate::exact::ratio::to_string(x)
}

fn norm_cube(elem: &Elem) -> Result<(String, Option<String>, CheckStatus)> {
    Ok(match elem.relative_norm()? {
        NormValue::Rational(n) => {
            let root = n.cube_root();
            let status = if root.is_some() {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            (rat_str(&n), root.map(|r| rat_str(&r)), status)
        }
        NormValue::Quadratic(y) if y.b().is_zero() => {
            let root = y.a().cube_root();
            let status = if root.is_some() {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            (y.to_string(), root.map(|r| rat_str(&r)), status)
        }
        NormValue::Quadratic(y) => {
            // a cube in k has a cube as its norm to Q
            let status = if y.norm().cube_root().is_none() {
                CheckStatus::Fail
            } else {
                CheckStatus::Undecided
            };
            (y.to_string(), None, status)
        }
    })
}

fn v_p_int(n: &BigInt, p: u64) -> i64 {
    if n.is_zero() {
        return i64::MAX;
    }
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    v
}

fn v_p(x: &Rat, p: u64) -> i64 {
    v_p_int(x.numer(), p) - v_p_int(x.denom(), p)
}

/// A square root of `d` modulo `p^n`, when `d` is a nonzero square in `Z_p`.
fn padic_sqrt(d: i64, p: u64, n: u32) -> Option<BigInt> {
    let modulus = BigInt::from(p).pow(n);
    let dd = BigInt::from(d);
    if p == 2 {
        if d.rem_euclid(8) != 1 {
            return None;
        }
        let mut r = BigInt::one();
        for k in 3..n {
            let m = BigInt::from(2).pow(k + 1);
            if !((&r * &r - &dd).mod_floor(&m)).is_zero() {
                r += BigInt::from(2).pow(k - 1);
            }
        }
        return Some(r.mod_floor(&modulus));
    }
    let r0 = (1..p).find(|&x| (x as i128 * x as i128 - d as i128).rem_euclid(p as i128) == 0)?;
    let mut r = BigInt::from(r0);
    let mut prec = BigInt::from(p);
    while prec < modulus {
        prec = (&prec * &prec).min(modulus.clone());
        let f = (&r * &r - &dd).mod_floor(&prec);
        let inv = (BigInt::from(2) * &r)
            .modpow(&(&prec / BigInt::from(p) * BigInt::from(p - 1) - 1), &prec);
        r = (&r - f * inv).mod_floor(&prec);
    }
    Some(r)
}

/// Valuations of `x` at the places of `Q(sqrt d)` above `p`.
fn quad_valuations(x: &Quad, p: u64) -> Option<Vec<i64>> {
    let d = x.d();
    let kron = crate::characters::kronecker_symbol(crate::exact::int::quadratic_disc(d), p as i64);
    let vn = v_p(&x.norm(), p);
    match kron {
        -1 => Some(vec![vn / 2]),
        0 => Some(vec![vn]),
        _ => {
            const PREC: u32 = 48;
            let r = padic_sqrt(d, p, PREC)?;
            let den = x.a().denom().lcm(x.b().denom());
            let a = x.a().numer() * (&den / x.a().denom());
            let b = x.b().numer() * (&den / x.b().denom());
            let modulus = BigInt::from(p).pow(PREC);
            let vd = v_p_int(&den, p);
            let mut out = Vec::new();
            for root in [r.clone(), -r] {
                let val = (&a + &b * &root).mod_floor(&modulus);
                let v = v_p_int(&val, p);
                if v >= PREC as i64 - 1 {
                    return None;
                }
                out.push(v - vd);
            }
            Some(out)
        }
    }
}

/// Candidate primes of the support: those dividing the norm's numerator or
/// a coordinate denominator.
fn support_primes(elem: &Elem) -> Result<BTreeSet<u64>> {
    let mut primes = BTreeSet::new();
    let n = elem.norm();
    for part in [n.numer().clone(), n.denom().clone()] {
        let (ps, rest) = trial_factor(&part, 1_000_000);
        if !rest.is_one() {
            return Err(Error::Unsupported(format!(
                "norm factor {rest} beyond trial division"
            )));
        }
        primes.extend(ps);
    }
    for c in elem.coords() {
        let den = c
            .denom()
            .to_u64()
            .ok_or_else(|| Error::Unsupported("large denominator".into()))?;
        primes.extend(prime_divisors(den));
    }
    Ok(primes)
}

fn is_unit_at(elem: &Elem, place: &ResiduePlace) -> Result<bool> {
    let here = place
        .reduce(&elem.coords())
        .map(|r| !r.is_zero())
        .unwrap_or(false);
    if !here {
        return Ok(false);
    }
    // the inverse must also be integral
    let inv = Elem::one(elem.shape())?.div(elem)?;
    Ok(place.reduce(&inv.coords()).is_some())
}

/// Checks `z` against the defining conditions of the group of `S`-cube
/// classes: the norm to `k` is a cube, and `z` has valuation divisible by 3
/// at every place not above `S`.
pub fn s_membership_check(elem: &Elem, s: &[u64]) -> Result<MembershipCertificate> {
    let shape = elem.shape();
    check_supported(shape)?;
    if elem.is_zero() {
        return Err(Error::InvalidArgument(
            "zero is not in the multiplicative group".into(),
        ));
    }
    let (relative_norm, norm_cube_root, norm_status) = norm_cube(elem)?;
    let mut support = Vec::new();
    for p in support_primes(elem)? {
        let in_s = s.contains(&p);
        if in_s {
            support.push(SupportCheck {
                prime: p,
                in_s,
                valuations: None,
                status: CheckStatus::Pass,
            });
            continue;
        }
        let places = places_over(shape, p)?;
        let mut all_units = true;
        for pl in &places {
            all_units &= is_unit_at(elem, pl)?;
        }
        let check = if all_units {
            SupportCheck {
                prime: p,
                in_s,
                valuations: Some(vec![0; places.len()]),
                status: CheckStatus::Pass,
            }
        } else {
            let vals = match elem {
                Elem::Quad(x) => quad_valuations(x, p),
                Elem::Biquad(_) => None,
            };
            let status = match &vals {
                Some(v) if v.iter().all(|x| x % 3 == 0) => CheckStatus::Pass,
                Some(_) => CheckStatus::Fail,
                None => CheckStatus::Undecided,
            };
            SupportCheck {
                prime: p,
                in_s,
                valuations: vals,
                status,
            }
        };
        support.push(check);
    }
    let statuses = std::iter::once(norm_status).chain(support.iter().map(|c| c.status));
    let status = statuses.fold(CheckStatus::Pass, |acc, s| match (acc, s) {
        (CheckStatus::Fail, _) | (_, CheckStatus::Fail) => CheckStatus::Fail,
        (CheckStatus::Undecided, _) | (_, CheckStatus::Undecided) => CheckStatus::Undecided,
        _ => CheckStatus::Pass,
    });
    Ok(MembershipCertificate {
        element: elem.to_string(),
        field: field_label(shape),
        s: s.to_vec(),
        relative_norm,
        norm_cube_root,
        norm_status,
        support,
        status,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCubeReport {
    pub element: String,
    pub p: u64,
    pub place_index: usize,
    pub residue_cardinality: u64,
    pub residue_image: String,
    /// `r^((q-1)/3)` for the residue `r`.
    pub power_value: String,
    pub is_cube: bool,
}

fn local_cube_at(elem: &Elem, place: &ResiduePlace) -> Result<LocalCubeReport> {
    let q = place.residue_cardinality();
    if place.p() == 3 {
        return Err(Error::Inapplicable("local cube test at 3".into()));
    }
    if q % 3 != 1 {
        return Err(Error::Inapplicable(format!("q = {q} is not 1 mod 3")));
    }
    if !is_unit_at(elem, place)? {
        return Err(Error::InvalidArgument(format!(
            "{elem} is not a unit at the place over {}",
            place.p()
        )));
    }
    let r: FqElem = place.reduce(&elem.coords()).expect("unit is integral");
    let power = r.pow((q - 1) / 3);
    Ok(LocalCubeReport {
        element: elem.to_string(),
        p: place.p(),
        place_index: place.index(),
        residue_cardinality: q,
        residue_image: r.to_string(),
        power_value: power.to_string(),
        is_cube: power.is_one(),
    })
}

/// Cube test in the completion at every place above `p`.
///
/// By Hensel's lemma a unit of an unramified extension of `Q_p` (`p != 3`)
/// is a cube iff its residue is a cube, i.e. `r^((q-1)/3) = 1`.
pub fn local_cube_test(elem: &Elem, p: u64) -> Result<Vec<LocalCubeReport>> {
    places_over(elem.shape(), p)?
        .iter()
        .map(|pl| local_cube_at(elem, pl))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CubicSplitting {
    /// `X^3 - lambda` splits: three copies of the local field.
    SplitThreeCopies,
    /// `X^3 - lambda` is irreducible and defines the unramified cubic extension.
    UnramifiedCubicField,
}

/// Splitting type of `l_v[X]/(X^3 - lambda)` where `l_v` is the completion
/// at the single place above `p`.
pub fn cubic_splitting_type(lambda: &Elem, p: u64) -> Result<CubicSplitting> {
    let reports = local_cube_test(lambda, p)?;
    match reports.as_slice() {
        [r] => Ok(if r.is_cube {
            CubicSplitting::SplitThreeCopies
        } else {
            CubicSplitting::UnramifiedCubicField
        }),
        _ => Err(Error::Inapplicable(format!(
            "{} places above {p}; the completion is not a field",
            reports.len()
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetRep {
    /// Exponents on the generators.
    pub exponents: Vec<u32>,
    pub element: String,
    #[serde(skip)]
    pub value: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistinctnessWitness {
    pub first: Vec<u32>,
    pub second: Vec<u32>,
    pub ratio: String,
    pub p: u64,
    pub place_index: usize,
    pub residue_cardinality: u64,
    pub power_value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identity {
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeClassGroup {
    pub field: String,
    pub s: Vec<u64>,
    pub generators: Vec<String>,
    pub rank: u32,
    pub coset_reps: Vec<CosetRep>,
    pub memberships: Vec<MembershipCertificate>,
    pub distinctness_witnesses: Vec<DistinctnessWitness>,
    pub identities: Vec<Identity>,
    /// Upper bound on the group order; assumed, not computed.
    pub assumptions: Vec<String>,
}

impl CubeClassGroup {
    pub fn order(&self) -> usize {
        self.coset_reps.len()
    }

    /// Every rep is a member and every pair of reps is separated.
    pub fn is_certified(&self) -> bool {
        let n = self.coset_reps.len();
        self.memberships
            .iter()
            .all(|m| m.status == CheckStatus::Pass)
            && self.distinctness_witnesses.len() == n * (n - 1) / 2
            && self.identities.iter().all(|i| i.holds)
    }
}

fn q(d: i64, a: (i64, i64), b: (i64, i64)) -> Result<Quad> {
    Quad::new(
        d,
        Rat::new(a.0.into(), a.1.into()),
        Rat::new(b.0.into(), b.1.into()),
    )
}

/// Generators of the cube-class group, with the product identity behind the
/// support bound.
fn generators(shape: FieldShape, s: &[u64]) -> Result<(Vec<Elem>, Vec<Identity>)> {
    match (shape, s) {
        (FieldShape::Quadratic(-7), [2]) => {
            let plus = q(-7, (1, 1), (1, 1))?;
            let minus = plus.conj();
            let prod = &plus * &minus;
            let holds = prod == Quad::rational(-7, Rat::from_integer(8.into()))?
                && Rat::from_integer(8.into()).cube_root() == Some(Rat::from_integer(2.into()));
            Ok((
                vec![Elem::Quad(plus)],
                vec![Identity {
                    statement: "(1+sqrt-7)(1-sqrt-7) = 8 = 2^3".into(),
                    holds,
                }],
            ))
        }
        (FieldShape::Biquadratic(-2, -3), [3]) => {
            let b = |c: [(i64, i64); 4]| {
                Biquad::new(-2, -3, c.map(|(n, d)| Rat::new(n.into(), d.into())))
            };
            let num = b([(1, 1), (1, 1), (0, 1), (0, 1)])?;
            let den = b([(1, 1), (-1, 1), (0, 1), (0, 1)])?;
            let alpha = num.div(&den)?;
            let zeta3 = b([(-1, 2), (0, 1), (1, 2), (0, 1)])?;
            let prod_ok = &num * &den == Biquad::rational(-2, -3, Rat::from_integer(3.into()))?;
            let zeta_ok = zeta3.pow(3) == Biquad::one(-2, -3)? && zeta3 != Biquad::one(-2, -3)?;
            Ok((
                vec![Elem::Biquad(alpha), Elem::Biquad(zeta3)],
                vec![
                    Identity {
                        statement: "(1+sqrt-2)(1-sqrt-2) = 3".into(),
                        holds: prod_ok,
                    },
                    Identity {
                        statement: "zeta3^3 = 1, zeta3 != 1".into(),
                        holds: zeta_ok,
                    },
                ],
            ))
        }
        _ => Err(Error::Unsupported(format!(
            "cube classes of {} with S = {s:?}",
            field_label(shape)
        ))),
    }
}

fn reps_from(gens: &[Elem]) -> Result<Vec<CosetRep>> {
    let shape = gens[0].shape();
    let mut reps = vec![CosetRep {
        exponents: vec![],
        element: String::new(),
        value: Elem::one(shape)?,
    }];
    for g in gens {
        let mut next = Vec::new();
        for r in &reps {
            for e in 0..3u32 {
                let value = r.value.mul(&g.pow(e))?;
                let mut exponents = r.exponents.clone();
                exponents.push(e);
                next.push(CosetRep {
                    exponents,
                    element: String::new(),
                    value,
                });
            }
        }
        reps = next;
    }
    for r in &mut reps {
        r.element = r.value.to_string();
    }
    Ok(reps)
}

/// First prime (ascending, `<= 100`) with a place where `x` is a local non-cube.
fn find_witness(x: &Elem) -> Result<Option<LocalCubeReport>> {
    for p in primes_up_to(WITNESS_LIMIT) {
        if p == 3 {
            continue;
        }
        let Ok(places) = places_over(x.shape(), p) else {
            continue;
        };
        for pl in &places {
            if let Ok(r) = local_cube_at(x, pl) {
                if !r.is_cube {
                    return Ok(Some(r));
                }
            }
        }
    }
    Ok(None)
}

/// The cube-class group of the supported `(field, S)` pairs.
pub fn cube_class_group(shape: FieldShape, s: &[u64]) -> Result<CubeClassGroup> {
    let (gens, identities) = generators(shape, s)?;
    let mut coset_reps = reps_from(&gens)?;
    if gens.len() == 1 {
        // write the square class as 1 - sqrt-7, its cube-equivalent conjugate
        if let Elem::Quad(g) = &gens[0] {
            let r = &mut coset_reps[2];
            r.value = Elem::Quad(g.conj());
            r.element = r.value.to_string();
        }
    }
    let memberships = coset_reps
        .iter()
        .map(|r| s_membership_check(&r.value, s))
        .collect::<Result<Vec<_>>>()?;
    let mut distinctness_witnesses = Vec::new();
    for (i, a) in coset_reps.iter().enumerate() {
        for b in &coset_reps[i + 1..] {
            let ratio = a.value.div(&b.value)?;
            if let Some(w) = find_witness(&ratio)? {
                distinctness_witnesses.push(DistinctnessWitness {
                    first: a.exponents.clone(),
                    second: b.exponents.clone(),
                    ratio: ratio.to_string(),
                    p: w.p,
                    place_index: w.place_index,
                    residue_cardinality: w.residue_cardinality,
                    power_value: w.power_value,
                });
            }
        }
    }
    Ok(CubeClassGroup {
        field: field_label(shape),
        s: s.to_vec(),
        generators: gens.iter().map(ToString::to_string).collect(),
        rank: gens.len() as u32,
        coset_reps,
        memberships,
        distinctness_witnesses,
        identities,
        assumptions: vec![ASSUMPTION_EXHAUSTIVE.to_string()],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetCheck {
    pub exponents: Vec<u32>,
    pub local: Option<LocalCubeReport>,
    pub splitting: Option<CubicSplitting>,
    /// How this coset is ruled out, if it is.
    pub excluded_by: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupCheck {
    pub generator: Vec<u32>,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Order3Verdict {
    /// No element of order 3 in the whole normalizer image.
    Excluded,
    /// Only the index-3 subgroups listed are certified torsion-free.
    ExcludedInSubgroups {
        subgroups: Vec<Vec<u32>>,
    },
    Undecided {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizerCertificate {
    pub pair_id: String,
    pub collection: String,
    pub witness_place: String,
    pub witness_tag: ParahoricTag,
    pub group: CubeClassGroup,
    pub cosets: Vec<CosetCheck>,
    pub subgroups: Vec<SubgroupCheck>,
    pub axioms: Vec<String>,
    pub verdict: Order3Verdict,
}

/// The cube-class field attached to a pair, from its character list.
pub fn cube_field_of(pair: &PairDesc) -> Result<FieldShape> {
    let mut discs = pair
        .ell
        .char_factors
        .as_ref()
        .map(|c| c.discs())
        .unwrap_or_default();
    discs.sort();
    match discs.as_slice() {
        [-7] => Ok(FieldShape::Quadratic(-7)),
        [-8, -3, 24] => Ok(FieldShape::Biquadratic(-2, -3)),
        _ => Err(Error::Unsupported(format!(
            "{}: no cube-class data for {}",
            pair.id, pair.ell.label
        ))),
    }
}

fn lines_of_rank_two() -> Vec<Vec<u32>> {
    vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]
}

fn in_line(exps: &[u32], gen: &[u32]) -> bool {
    (1..3).any(|k| exps.iter().zip(gen).all(|(e, g)| *e == (k * g) % 3))
}

/// Rules out elements of order 3 in the normalizer image (or in index-3
/// subgroups of it) through the cube class of `lambda = g^3`.
pub fn normalizer_torsion_certificate(
    pair: &PairDesc,
    coll: &CoherentCollection,
) -> Result<NormalizerCertificate> {
    let shape = cube_field_of(pair)?;
    let group = cube_class_group(shape, &[pair.t0_prime])?;
    if !group.is_certified() {
        return Err(Error::Invariant(vec![format!(
            "{}: cube-class group not certified",
            group.field
        )]));
    }
    let (label, tag) = coll
        .overrides
        .iter()
        .find(|(_, &t)| matches!(t, ParahoricTag::NonHypMaxInert | ParahoricTag::IwahoriInert))
        .map(|(l, &t)| (l.clone(), t))
        .ok_or_else(|| {
            Error::Inapplicable(format!(
                "{coll}: no non-hyperspecial parahoric at an inert place"
            ))
        })?;
    let p = pair.place(&label)?.prime;

    let mut axioms = vec![AXIOM_FIXED_POINTS.to_string()];
    let mut cosets = Vec::new();
    let mut undecided = None;
    for rep in &group.coset_reps {
        let identity = rep.value.is_one();
        let (local, splitting) = match (
            local_cube_test(&rep.value, p),
            cubic_splitting_type(&rep.value, p),
        ) {
            (Ok(mut r), Ok(s)) => (r.pop(), Some(s)),
            (Err(e), _) | (_, Err(e)) => {
                undecided.get_or_insert(format!("local test at {label}: {e}"));
                (None, None)
            }
        };
        let excluded_by = match (tag, splitting) {
            (_, Some(CubicSplitting::UnramifiedCubicField))
                if tag == ParahoricTag::NonHypMaxInert =>
            {
                Some("unramified cubic: unique fixed point is hyperspecial".to_string())
            }
            (ParahoricTag::IwahoriInert, Some(CubicSplitting::UnramifiedCubicField)) => {
                Some("unramified cubic: anisotropic torus fixes a single point".to_string())
            }
            (ParahoricTag::IwahoriInert, Some(CubicSplitting::SplitThreeCopies)) => {
                Some("split cosets: anisotropic torus (imported)".to_string())
            }
            _ => None,
        };
        if !identity || tag == ParahoricTag::IwahoriInert {
            cosets.push(CosetCheck {
                exponents: rep.exponents.clone(),
                local,
                splitting,
                excluded_by,
            });
        }
    }

    let all_excluded = cosets.iter().all(|c| c.excluded_by.is_some());
    let mut subgroups = Vec::new();
    let verdict = if let Some(reason) = undecided {
        Order3Verdict::Undecided { reason }
    } else if tag == ParahoricTag::IwahoriInert {
        axioms.push(AXIOM_SPLIT_COSETS.to_string());
        axioms.push(AXIOM_IWAHORI_EDGE.to_string());
        Order3Verdict::Excluded
    } else {
        axioms.push(AXIOM_HYPERSPECIAL.to_string());
        if all_excluded {
            Order3Verdict::Excluded
        } else if group.rank == 2 {
            axioms.push(AXIOM_COBOUNDARY.to_string());
            for gen in lines_of_rank_two() {
                let certified = cosets
                    .iter()
                    .filter(|c| in_line(&c.exponents, &gen))
                    .all(|c| c.excluded_by.is_some());
                subgroups.push(SubgroupCheck {
                    generator: gen,
                    certified,
                });
            }
            let ok: Vec<Vec<u32>> = subgroups
                .iter()
                .filter(|s| s.certified)
                .map(|s| s.generator.clone())
                .collect();
            if ok.is_empty() {
                Order3Verdict::Undecided {
                    reason: "every line contains a locally split coset".into(),
                }
            } else {
                Order3Verdict::ExcludedInSubgroups { subgroups: ok }
            }
        } else {
            Order3Verdict::Undecided {
                reason: "a non-identity coset is a local cube at the witness place".into(),
            }
        }
    };
    Ok(NormalizerCertificate {
        pair_id: pair.id.clone(),
        collection: coll.to_string(),
        witness_place: label,
        witness_tag: tag,
        group,
        cosets,
        subgroups,
        axioms,
        verdict,
    })
}
