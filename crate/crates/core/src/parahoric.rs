//! Parahoric types, Euler factors `e'`, coherent collections and the
//! covolume / Euler-characteristic arithmetic built on them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{Behavior, PairDesc};
use crate::exact::int::factorize;
use crate::{Error, Rat, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ParahoricTag {
    Hyperspecial,
    NonHypMaxInert,
    IwahoriInert,
    MaxAtRamified,
    IwahoriAtRamified,
    AnisotropicMax,
}

impl ParahoricTag {
    /// Whether this type can occur at a place with the given behavior in `l`.
    pub fn admissible(self, behavior: Behavior, is_t0: bool) -> bool {
        use ParahoricTag::*;
        match self {
            AnisotropicMax => is_t0,
            _ if is_t0 => false,
            Hyperspecial => behavior != Behavior::Ramified,
            NonHypMaxInert | IwahoriInert => behavior == Behavior::Inert,
            MaxAtRamified | IwahoriAtRamified => behavior == Behavior::Ramified,
        }
    }

    /// Short name used in variant labels.
    pub fn short(self) -> &'static str {
        use ParahoricTag::*;
        match self {
            Hyperspecial => "hyp",
            NonHypMaxInert => "nonhyp",
            IwahoriInert | IwahoriAtRamified => "iwahori",
            MaxAtRamified => "max",
            AnisotropicMax => "aniso",
        }
    }

    fn in_t(self) -> bool {
        !matches!(
            self,
            ParahoricTag::Hyperspecial | ParahoricTag::MaxAtRamified
        )
    }
}

fn check_prime_power(q: u64) -> Result<()> {
    if q >= 2 && factorize(q).len() == 1 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{q} is not a prime power")))
    }
}

/// `e'(P)` at a place with residue field of order `q`.
///
/// At ramified places the Iwahori factor is relative to the maximal type,
/// i.e. the index `q + 1`.
pub fn euler_factor(q: u64, tag: ParahoricTag) -> Result<u64> {
    check_prime_power(q)?;
    use ParahoricTag::*;
    Ok(match tag {
        Hyperspecial | MaxAtRamified => 1,
        NonHypMaxInert => q * q - q + 1,
        IwahoriInert => (q + 1) * (q * q - q + 1),
        AnisotropicMax => (q - 1) * (q * q - 1),
        IwahoriAtRamified => q + 1,
    })
}

/// A choice of parahoric type at finitely many places of `k`; everything
/// else is hyperspecial (or maximal, at ramified places).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoherentCollection {
    pub pair_id: String,
    pub overrides: BTreeMap<String, ParahoricTag>,
}

impl CoherentCollection {
    /// Checks tags against place behavior and `T` against the admissible list.
    pub fn new(pair: &PairDesc, overrides: BTreeMap<String, ParahoricTag>) -> Result<Self> {
        let t0 = pair.t0_place()?;
        if overrides.get(&t0.label) != Some(&ParahoricTag::AnisotropicMax) {
            return Err(Error::InvalidArgument(format!(
                "{}: the T0 place {} must carry the anisotropic type",
                pair.id, t0.label
            )));
        }
        for (label, &tag) in &overrides {
            let place = pair.place(label)?;
            if !tag.admissible(place.in_ell, place.label == t0.label) {
                return Err(Error::InvalidArgument(format!(
                    "{}: {tag:?} is not admissible at {label} ({:?})",
                    pair.id, place.in_ell
                )));
            }
        }
        let coll = CoherentCollection {
            pair_id: pair.id.clone(),
            overrides,
        };
        pair.admissible(&coll.t())?;
        Ok(coll)
    }

    /// Places whose type is neither hyperspecial nor maximal-at-ramified.
    pub fn t(&self) -> Vec<String> {
        self.overrides
            .iter()
            .filter(|(_, t)| t.in_t())
            .map(|(l, _)| l.clone())
            .collect()
    }

    pub fn t0(&self) -> Vec<String> {
        self.overrides
            .iter()
            .filter(|(_, &t)| t == ParahoricTag::AnisotropicMax)
            .map(|(l, _)| l.clone())
            .collect()
    }

    pub fn tag(&self, label: &str) -> ParahoricTag {
        self.overrides
            .get(label)
            .copied()
            .unwrap_or(ParahoricTag::Hyperspecial)
    }

    /// `base` for `T = T0`, else `label:type` for each extra place.
    pub fn variant_label(&self) -> String {
        let extra: Vec<String> = self
            .overrides
            .iter()
            .filter(|(_, &t)| t.in_t() && t != ParahoricTag::AnisotropicMax)
            .map(|(l, t)| format!("{l}:{}", t.short()))
            .collect();
        if extra.is_empty() {
            "base".into()
        } else {
            extra.join(",")
        }
    }
}

impl fmt::Display for CoherentCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{}/{}",
            self.pair_id,
            self.t().join("+"),
            self.variant_label()
        )
    }
}

/// Every coherent collection with the given `T`: each inert place of
/// `T \ T0` is tried as non-hyperspecial maximal and as Iwahori, each
/// ramified place as Iwahori.
pub fn variants(pair: &PairDesc, t: &[String]) -> Result<Vec<CoherentCollection>> {
    let t = pair.admissible(t)?;
    let t0 = pair.t0_place()?;
    let mut partial: Vec<BTreeMap<String, ParahoricTag>> = vec![BTreeMap::from([(
        t0.label.clone(),
        ParahoricTag::AnisotropicMax,
    )])];
    for label in t.iter().filter(|l| **l != t0.label) {
        let choices: &[ParahoricTag] = match pair.place(label)?.in_ell {
            Behavior::Inert => &[ParahoricTag::NonHypMaxInert, ParahoricTag::IwahoriInert],
            Behavior::Ramified => &[ParahoricTag::IwahoriAtRamified],
            Behavior::Split => {
                return Err(Error::Unsupported(format!(
                    "{}: split place {label} outside T0",
                    pair.id
                )));
            }
        };
        partial = partial
            .into_iter()
            .flat_map(|m| {
                choices.iter().map(move |&c| {
                    let mut m = m.clone();
                    m.insert(label.clone(), c);
                    m
                })
            })
            .collect();
    }
    partial
        .into_iter()
        .map(|m| CoherentCollection::new(pair, m))
        .collect()
}

fn euler_product(pair: &PairDesc, coll: &CoherentCollection, skip_t0: bool) -> Result<Rat> {
    let mut prod = Rat::one();
    for (label, &tag) in &coll.overrides {
        if skip_t0 && tag == ParahoricTag::AnisotropicMax {
            continue;
        }
        let e = euler_factor(pair.place(label)?.q, tag)?;
        prod *= Rat::from_integer(e.into());
    }
    Ok(prod)
}

/// `mu_base * prod e'` over the places of the collection.
pub fn mu_principal(pair: &PairDesc, coll: &CoherentCollection) -> Result<Rat> {
    let mu = pair.mu_base.as_ref().ok_or_else(|| Error::MissingData {
        pair: pair.id.clone(),
        what: "mu_base".into(),
    })?;
    Ok(mu * euler_product(pair, coll, false)?)
}

/// Orbifold Euler characteristic of the principal arithmetic subgroup.
///
/// Uses `3 mu` when `mu_base` is known, otherwise scales `chi_lambda` (which
/// already includes the `T0` factor) by the remaining factors.
pub fn chi_principal(pair: &PairDesc, coll: &CoherentCollection) -> Result<Rat> {
    if pair.mu_base.is_some() {
        return Ok(Rat::from_integer(3.into()) * mu_principal(pair, coll)?);
    }
    let chi = pair.chi_lambda.as_ref().ok_or_else(|| Error::MissingData {
        pair: pair.id.clone(),
        what: "mu_base or chi_lambda".into(),
    })?;
    Ok(chi * euler_product(pair, coll, true)?)
}

/// Orbifold Euler characteristic of the normalizer image, `chi / 3`.
pub fn normalizer_chi(pair: &PairDesc, coll: &CoherentCollection) -> Result<Rat> {
    Ok(chi_principal(pair, coll)? / Rat::from_integer(3.into()))
}

/// Euler characteristic of a subgroup of the given index.
pub fn index_descent(chi: &Rat, index: u64) -> Result<Rat> {
    if index == 0 {
        return Err(Error::InvalidArgument("index must be positive".into()));
    }
    Ok(chi * Rat::from_integer(index.into()))
}

/// Order of the center of the principal arithmetic subgroup: 3 exactly when
/// `l` contains a primitive cube root of unity.
pub fn center_order(pair: &PairDesc) -> Option<u32> {
    pair.ell
        .root_of_unity_order
        .map(|w| if w % 3 == 0 { 3 } else { 1 })
}

/// `[Gamma-bar : Lambda-bar]`. The normalizer index is 3 for every pair with
/// a single `T0` place; the center adds another factor 3 when present.
pub fn normalizer_index(pair: &PairDesc) -> Option<u32> {
    center_order(pair).map(|c| 3 * c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Viability {
    /// A torsion-free subgroup of index `n` would have Euler characteristic 3.
    Viable {
        n: u64,
    },
    NotViable,
}

pub fn fpp_viability(chi_gammabar: &Rat) -> Viability {
    if !chi_gammabar.is_positive() {
        return Viability::NotViable;
    }
    let n = Rat::from_integer(3.into()) / chi_gammabar;
    if n.is_integer() && !n.is_zero() {
        match n.to_integer().try_into() {
            Ok(n) => Viability::Viable { n },
            Err(_) => Viability::NotViable,
        }
    } else {
        Viability::NotViable
    }
}
