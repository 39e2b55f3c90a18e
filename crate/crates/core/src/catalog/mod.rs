//! Pair data: fields, places, catalog constants and admissible `T` sets.
//!
//! The catalog is a JSON file. Rationals are `"num/den"` strings, every
//! numeric field may carry a provenance tag in the pair's `provenance` map
//! (`stated`, `derived`, `legacy`, `trusted`).

mod fields;
mod validate;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::characters::CharProduct;
use crate::exact::ratio::serde_opt_rat;
use crate::parahoric::{euler_factor, ParahoricTag};
use crate::{Error, Rat, Result};

pub use fields::{
    class_number_imaginary, place_behavior, roots_of_unity_order, Behavior, PlaceData, PlaceOfK,
};
pub use validate::{validate_catalog, Check, CheckStatus, ValidationReport};

/// The catalog shipped with the crate.
pub const DEFAULT_CATALOG: &str = include_str!("../../data/catalog.json");

pub fn default_catalog() -> Catalog {
    load_catalog(DEFAULT_CATALOG.as_bytes()).expect("shipped catalog is valid")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDesc {
    pub label: String,
    #[serde(default)]
    pub degree: Option<u32>,
    #[serde(default)]
    pub disc: Option<i64>,
    /// Quadratic characters of the field, `None` when not expressible that way.
    #[serde(default)]
    pub char_factors: Option<CharProduct>,
    #[serde(default)]
    pub class_number: Option<u32>,
    #[serde(default)]
    pub root_of_unity_order: Option<u32>,
    /// `n` when the field is `Q(zeta_n)` or its maximal real subfield.
    #[serde(default)]
    pub cyclotomic_conductor: Option<u64>,
}

/// A named place of `k` used by admissible `T` sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogPlace {
    pub label: String,
    pub prime: u64,
    pub q: u64,
    pub in_ell: Behavior,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fact {
    /// The principal arithmetic subgroup is torsion-free.
    PrincipalTorsionFree,
    /// The image of the normalizer is torsion-free.
    NormalizerTorsionFree,
    /// The image of the normalizer contains an element of order 3.
    NormalizerHasOrder3,
}

/// A fact taken from outside the computation, with its source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImportedFact {
    pub fact: Fact,
    /// Restricts the fact to one `T`; absent means every admissible `T`.
    #[serde(default, rename = "T")]
    pub t: Option<Vec<String>>,
    pub source: String,
}

/// Per-class data imported from group-theoretic computations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassAnnotation {
    #[serde(rename = "T")]
    pub t: Vec<String>,
    /// Variant label as in class ids (`base`, `v2:iwahori`, ...); absent = all.
    #[serde(default)]
    pub variant: Option<String>,
    #[serde(default)]
    pub planes: Option<u32>,
    #[serde(default)]
    pub automorphism_order: Option<u32>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDesc {
    pub id: String,
    pub k: FieldDesc,
    pub ell: FieldDesc,
    pub t0_prime: u64,
    #[serde(default)]
    pub q_v0: Option<u64>,
    #[serde(default)]
    pub places: Vec<CatalogPlace>,
    #[serde(default, with = "serde_opt_rat")]
    pub mu_base: Option<Rat>,
    #[serde(default, with = "serde_opt_rat")]
    pub chi_lambda: Option<Rat>,
    #[serde(rename = "admissible_T")]
    pub admissible_t: Vec<Vec<String>>,
    #[serde(default)]
    pub legacy_class_count: Option<u32>,
    #[serde(default)]
    pub imports: Vec<ImportedFact>,
    #[serde(default)]
    pub class_annotations: Vec<ClassAnnotation>,
    #[serde(default)]
    pub annotations: Vec<String>,
    #[serde(default)]
    pub provenance: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneTotals {
    pub isometry: u32,
    pub biholomorphism: u32,
    pub not_in_su21: u32,
    pub source: String,
}

/// Expected census shape, checked against the enumerator's output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusExpectations {
    pub total: u32,
    pub by_k: BTreeMap<String, u32>,
    pub by_pair: BTreeMap<String, u32>,
    #[serde(default)]
    pub planes: Option<PlaneTotals>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExcludedPair {
    pub id: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Catalog {
    #[serde(default = "schema_default")]
    pub schema_version: u32,
    pub pairs: Vec<PairDesc>,
    #[serde(default)]
    pub census: Option<CensusExpectations>,
    #[serde(default)]
    pub excluded_pairs: Vec<ExcludedPair>,
}

pub const SCHEMA_VERSION: u32 = 1;

fn schema_default() -> u32 {
    SCHEMA_VERSION
}

impl Catalog {
    pub fn pair(&self, id: &str) -> Result<&PairDesc> {
        self.pairs
            .iter()
            .find(|p| p.id == id)
            .ok_or_else(|| Error::UnknownPair(id.to_string()))
    }
}

impl PairDesc {
    pub fn place(&self, label: &str) -> Result<&CatalogPlace> {
        self.places
            .iter()
            .find(|p| p.label == label)
            .ok_or_else(|| Error::InvalidArgument(format!("{}: unknown place `{label}`", self.id)))
    }

    /// The single place of `T0`: the catalog place over `t0_prime`.
    pub fn t0_place(&self) -> Result<&CatalogPlace> {
        let mut it = self.places.iter().filter(|p| p.prime == self.t0_prime);
        match (it.next(), it.next()) {
            (Some(p), None) => Ok(p),
            _ => Err(Error::MissingData {
                pair: self.id.clone(),
                what: format!("exactly one catalog place over t0_prime {}", self.t0_prime),
            }),
        }
    }

    /// `[k:Q]`, when known.
    pub fn k_degree(&self) -> Option<u32> {
        self.k.degree
    }

    /// Relative characters of `l/k`.
    pub fn relative_chars(&self) -> Option<CharProduct> {
        let (k, l) = (
            self.k.char_factors.as_ref()?,
            self.ell.char_factors.as_ref()?,
        );
        l.minus(k).ok()
    }

    /// Canonical (sorted, deduplicated) form of an admissible `T`.
    pub fn normalize_t(&self, t: &[String]) -> Result<Vec<String>> {
        let set: BTreeSet<&String> = t.iter().collect();
        if set.len() != t.len() {
            return Err(Error::InvalidArgument(format!(
                "{}: repeated place in T",
                self.id
            )));
        }
        for label in &set {
            self.place(label)?;
        }
        Ok(set.into_iter().cloned().collect())
    }

    /// Finds the admissible `T` equal to `t` as a set.
    pub fn admissible(&self, t: &[String]) -> Result<Vec<String>> {
        let want = self.normalize_t(t)?;
        for cand in &self.admissible_t {
            if self.normalize_t(cand)? == want {
                return Ok(want);
            }
        }
        Err(Error::Inadmissible(format!(
            "{}: T = {{{}}} is not admissible",
            self.id,
            want.join(",")
        )))
    }

    pub fn provenance_of(&self, field: &str) -> &str {
        self.provenance
            .get(field)
            .map(String::as_str)
            .unwrap_or("unspecified")
    }

    pub fn imported(&self, fact: Fact, t: &[String]) -> Option<&ImportedFact> {
        self.imports.iter().find(|f| {
            f.fact == fact
                && f.t.as_ref().is_none_or(|ft| {
                    let mut a = ft.clone();
                    a.sort();
                    let mut b = t.to_vec();
                    b.sort();
                    a == b
                })
        })
    }
}

/// Invariants checked at load time; one message per violation.
pub(crate) fn pair_invariants(pair: &PairDesc) -> Vec<String> {
    let mut out = Vec::new();
    let mut fail = |field: &str, msg: String| out.push(format!("{}: {field}: {msg}", pair.id));

    if let (Some(mu), Some(chi), Some(q)) = (&pair.mu_base, &pair.chi_lambda, pair.q_v0) {
        match euler_factor(q, ParahoricTag::AnisotropicMax) {
            Ok(e) => {
                let expected = Rat::from_integer(3.into()) * mu * Rat::from_integer(e.into());
                if &expected != chi {
                    fail(
                        "chi_lambda",
                        format!(
                            "{} != 3 * mu_base * e'(q_v0) = {}",
                            crate::exact::ratio::to_string(chi),
                            crate::exact::ratio::to_string(&expected)
                        ),
                    );
                }
            }
            Err(e) => fail("q_v0", e.to_string()),
        }
    }
    if let Some(expected) = expected_t0_prime(&pair.id) {
        if pair.t0_prime != expected {
            fail(
                "t0_prime",
                format!(
                    "{} but the T0 place of {} lies over {expected}",
                    pair.t0_prime, pair.id
                ),
            );
        }
    }
    if let Some(q) = pair.q_v0 {
        if !fields::is_power_of(q, pair.t0_prime) {
            fail(
                "q_v0",
                format!("{q} is not a power of t0_prime {}", pair.t0_prime),
            );
        }
    }
    match pair.t0_place() {
        Ok(v0) => {
            if v0.in_ell != Behavior::Split {
                fail("places", format!("T0 place {} must split in ell", v0.label));
            }
            if pair.q_v0.is_some_and(|q| q != v0.q) {
                fail(
                    "q_v0",
                    format!("disagrees with place {} (q = {})", v0.label, v0.q),
                );
            }
            for t in &pair.admissible_t {
                let t0_count = t
                    .iter()
                    .filter(|l| {
                        pair.places
                            .iter()
                            .any(|p| &p.label == *l && p.prime == pair.t0_prime)
                    })
                    .count();
                if t0_count != 1 {
                    fail(
                        "admissible_T",
                        format!("{{{}}} must contain the T0 place exactly once", t.join(",")),
                    );
                }
            }
        }
        Err(e) => fail("places", e.to_string()),
    }
    for t in &pair.admissible_t {
        if let Err(e) = pair.normalize_t(t) {
            fail("admissible_T", e.to_string());
        }
    }
    if pair.admissible_t.is_empty() {
        fail("admissible_T", "no admissible T".into());
    }
    if let Some(d) = pair.k.degree {
        if ![1, 2, 4].contains(&d) {
            fail("k.degree", format!("{d} not in {{1, 2, 4}}"));
        }
        if pair.ell.degree.is_some_and(|e| e != 2 * d) {
            fail("ell.degree", "must be twice the degree of k".into());
        }
    }
    for f in [&pair.k, &pair.ell] {
        if f.class_number == Some(0) {
            fail(
                "class_number",
                format!("{}: class number must be positive", f.label),
            );
        }
    }
    for (field, v) in [("mu_base", &pair.mu_base), ("chi_lambda", &pair.chi_lambda)] {
        if v.as_ref()
            .is_some_and(|x| x <= &Rat::from_integer(0.into()))
        {
            fail(field, "must be positive".into());
        }
    }
    out
}

/// Prime below the `T0` place, for pair ids with a known answer.
pub(crate) fn expected_t0_prime(id: &str) -> Option<u64> {
    match id {
        "C3" | "C35" => Some(5),
        "C18" => Some(3),
        "C2" | "C10" | "C20" | "C26" | "C31" | "C39" => Some(2),
        _ => parse_rational_pair_id(id).map(|(_, p)| p),
    }
}

/// `(a,p)` for ids of the form `"(a,p)"`.
pub fn parse_rational_pair_id(id: &str) -> Option<(u64, u64)> {
    let inner = id.strip_prefix('(')?.strip_suffix(')')?;
    let (a, p) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, p.trim().parse().ok()?))
}

/// Parses the catalog and checks every per-pair invariant.
pub fn load_catalog(source: &[u8]) -> Result<Catalog> {
    let cat = parse_catalog(source)?;
    let violations: Vec<String> = cat.pairs.iter().flat_map(pair_invariants).collect();
    if violations.is_empty() {
        Ok(cat)
    } else {
        Err(Error::Invariant(violations))
    }
}

/// Schema-level parsing only: JSON shape, version, duplicate ids.
pub fn parse_catalog(source: &[u8]) -> Result<Catalog> {
    let text = std::str::from_utf8(source).map_err(|e| Error::Schema(format!("not UTF-8: {e}")))?;
    if text.trim().is_empty() {
        return Err(Error::Schema("empty catalog".into()));
    }
    let cat: Catalog = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    if cat.schema_version != SCHEMA_VERSION {
        return Err(Error::Schema(format!(
            "schema_version {} (expected {SCHEMA_VERSION})",
            cat.schema_version
        )));
    }
    let mut seen = BTreeSet::new();
    for p in &cat.pairs {
        if !seen.insert(p.id.as_str()) {
            return Err(Error::Schema(format!("duplicate pair id `{}`", p.id)));
        }
    }
    Ok(cat)
}
