//! The census: coherent-collection counting, class enumeration over every
//! pair and admissible `T`, and per-class certificate bundles.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::catalog::{place_behavior, Behavior, Catalog, PairDesc};
use crate::cubes::{normalizer_torsion_certificate, NormalizerCertificate, Order3Verdict};
use crate::exact::int::prime_divisors;
use crate::exact::ratio::{serde_opt_rat, serde_rat};
use crate::parahoric::{
    center_order, chi_principal, fpp_viability, mu_principal, normalizer_chi, variants,
    CoherentCollection, Viability,
};
use crate::torsion::{torsion_verdict, Level, TorsionCertificate, Verdict};
use crate::{Error, Rat, Result};

/// Number of conjugacy classes of coherent collections with the given `T`:
/// a free choice of one of the two maximal parahorics at every place of `k`
/// that ramifies in `l` and is not in `T`.
pub fn collection_count(pair: &PairDesc, t: &[String]) -> Result<u64> {
    let t = pair.admissible(t)?;
    let ramified = ramified_places(pair)?;
    let mut free = 0u32;
    for (p, n) in ramified {
        let in_t = t
            .iter()
            .filter(|l| {
                pair.place(l)
                    .is_ok_and(|v| v.prime == p && v.in_ell == Behavior::Ramified)
            })
            .count() as u32;
        free += n.saturating_sub(in_t);
    }
    Ok(1 << free)
}

/// Finite places of `k` ramified in `l`, counted per rational prime.
fn ramified_places(pair: &PairDesc) -> Result<BTreeMap<u64, u32>> {
    let missing = || Error::MissingData {
        pair: pair.id.clone(),
        what: "characters or cyclotomic conductor of l".into(),
    };
    if let Some(chars) = &pair.ell.char_factors {
        let mut out = BTreeMap::new();
        let conductor = u64::try_from(chars.conductor_product()).map_err(|_| missing())?;
        for p in prime_divisors(conductor) {
            let data = place_behavior(pair, p)?;
            let mut n = 0;
            for pl in &data.places {
                match pl.in_ell {
                    Some(Behavior::Ramified) => n += 1,
                    Some(_) => {}
                    None => return Err(missing()),
                }
            }
            if n > 0 {
                out.insert(p, n);
            }
        }
        return Ok(out);
    }
    if let Some(n) = pair.ell.cyclotomic_conductor {
        // Q(zeta_n) over its real subfield is unramified at finite places
        // unless n is a prime power
        let n = if n % 4 == 2 { n / 2 } else { n };
        let ps = prime_divisors(n);
        return Ok(match ps.as_slice() {
            [p] => BTreeMap::from([(*p, 1)]),
            _ => BTreeMap::new(),
        });
    }
    Err(missing())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiChain {
    #[serde(with = "serde_opt_rat")]
    pub mu: Option<Rat>,
    #[serde(with = "serde_rat")]
    pub chi_lambda: Rat,
    /// `chi` of the congruence subgroup, when that level is used.
    #[serde(with = "serde_opt_rat", skip_serializing_if = "Option::is_none")]
    pub chi_lambda_plus: Option<Rat>,
    #[serde(with = "serde_rat")]
    pub chi_gammabar: Rat,
}

fn chi_chain(pair: &PairDesc, coll: &CoherentCollection) -> Result<ChiChain> {
    Ok(ChiChain {
        mu: mu_principal(pair, coll).ok(),
        chi_lambda: chi_principal(pair, coll)?,
        chi_lambda_plus: None,
        chi_gammabar: normalizer_chi(pair, coll)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Count reproduced from the catalog's legacy constant.
    Legacy,
    /// Assembled from computed covolume, viability and certificates.
    Computed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    pub id: String,
    pub pair_id: String,
    pub k: String,
    #[serde(skip)]
    pub k_disc: Option<i64>,
    #[serde(rename = "T")]
    pub t: Vec<String>,
    pub variant: String,
    pub collection_class_index: u64,
    pub chi_chain: Option<ChiChain>,
    pub fundamental_group_note: Option<String>,
    pub certificates: Vec<String>,
    pub provenance: Provenance,
    pub annotations: Vec<String>,
}

impl ClassRecord {
    fn sort_key(&self) -> (i64, &str, &[String], &str, u64) {
        (
            self.k_disc.unwrap_or(i64::MAX),
            &self.pair_id,
            &self.t,
            &self.variant,
            self.collection_class_index,
        )
    }
}

/// What fundamental groups of the planes in a class look like, from the
/// index `n = 3 / chi(Gamma-bar)`.
pub fn fundamental_group_note(n: u64) -> String {
    match n {
        1 => "Γ̄ itself".into(),
        3 => "index-3 subgroups".into(),
        21 => "index-21 subgroups (Λ̄⁺ is one)".into(),
        n => format!("index-{n} subgroups"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Outcome {
    Accepted,
    Rejected { reason: String },
    Incomplete { reason: String },
}

/// Everything computed for one coherent collection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assessment {
    pub collection: String,
    pub chi_chain: Option<ChiChain>,
    pub viability: Option<Viability>,
    pub level: Option<Level>,
    pub torsion: Option<TorsionCertificate>,
    pub cube: Option<NormalizerCertificate>,
    pub outcome: Outcome,
}

fn gives_none(coll: &CoherentCollection, why: impl std::fmt::Display) -> Outcome {
    Outcome::Rejected {
        reason: format!("{coll} gives none: {why}"),
    }
}

fn verdict_outcome(coll: &CoherentCollection, cert: &TorsionCertificate) -> Outcome {
    match &cert.verdict {
        Verdict::TorsionFree => Outcome::Accepted,
        Verdict::NotTorsionFree => gives_none(
            coll,
            format!(
                "the {} level has torsion",
                format!("{:?}", cert.level).to_lowercase()
            ),
        ),
        Verdict::OrdersPossible { orders } => Outcome::Incomplete {
            reason: format!("orders {orders:?} not excluded"),
        },
        Verdict::Undecided { reason } => Outcome::Incomplete {
            reason: reason.clone(),
        },
    }
}

/// Decides whether a coherent collection contributes classes.
pub fn assess(pair: &PairDesc, coll: &CoherentCollection) -> Assessment {
    let mut a = Assessment {
        collection: coll.to_string(),
        chi_chain: None,
        viability: None,
        level: None,
        torsion: None,
        cube: None,
        outcome: Outcome::Incomplete {
            reason: String::new(),
        },
    };
    let mut chain = match chi_chain(pair, coll) {
        Ok(c) => c,
        Err(e) => {
            a.outcome = Outcome::Incomplete {
                reason: e.to_string(),
            };
            return a;
        }
    };
    let viability = fpp_viability(&chain.chi_gammabar);
    a.viability = Some(viability);
    let n = match viability {
        Viability::Viable { n } => n,
        Viability::NotViable => {
            a.outcome = gives_none(coll, format!("χ(Γ̄) = {} is not 3/n", chain.chi_gammabar));
            a.chi_chain = Some(chain);
            return a;
        }
    };
    let center = center_order(pair);
    a.outcome = match (n, center) {
        (1, _) => {
            let cert = torsion_verdict(pair, coll, Level::Normalizer);
            a.level = Some(Level::Normalizer);
            let out = verdict_outcome(coll, &cert);
            a.torsion = Some(cert);
            out
        }
        (3, Some(1)) => {
            let cert = torsion_verdict(pair, coll, Level::Principal);
            a.level = Some(Level::Principal);
            let out = verdict_outcome(coll, &cert);
            a.torsion = Some(cert);
            out
        }
        (3, Some(3)) => {
            a.level = Some(Level::Normalizer);
            a.torsion = Some(torsion_verdict(pair, coll, Level::Principal));
            match normalizer_torsion_certificate(pair, coll) {
                Ok(cert) => {
                    let out = match &cert.verdict {
                        Order3Verdict::Excluded | Order3Verdict::ExcludedInSubgroups { .. } => {
                            Outcome::Accepted
                        }
                        Order3Verdict::Undecided { reason } => Outcome::Incomplete {
                            reason: reason.clone(),
                        },
                    };
                    a.cube = Some(cert);
                    out
                }
                Err(e) => Outcome::Incomplete {
                    reason: e.to_string(),
                },
            }
        }
        (21, Some(1)) => {
            let cert = torsion_verdict(pair, coll, Level::Congruence);
            a.level = Some(Level::Congruence);
            let q0 = pair.q_v0.unwrap_or(0);
            chain.chi_lambda_plus =
                Some(&chain.chi_lambda * Rat::from_integer((q0 * q0 + q0 + 1).into()));
            let out = verdict_outcome(coll, &cert);
            a.torsion = Some(cert);
            out
        }
        (n, c) => Outcome::Incomplete {
            reason: format!("no certificate route for index {n} with center {c:?}"),
        },
    };
    a.chi_chain = Some(chain);
    a
}

fn annotations_for(pair: &PairDesc, t: &[String], variant: &str) -> Vec<String> {
    let mut out = Vec::new();
    for a in &pair.class_annotations {
        if a.t != t || a.variant.as_deref().is_some_and(|v| v != variant) {
            continue;
        }
        if let Some(p) = a.planes {
            out.push(format!("planes per class: {p} (trusted)"));
        }
        if let Some(o) = a.automorphism_order {
            out.push(format!("automorphism group order: {o} (trusted)"));
        }
        if let Some(n) = &a.note {
            out.push(n.clone());
        }
    }
    out
}

fn certificate_refs(a: &Assessment) -> Vec<String> {
    let mut refs = Vec::new();
    if let Some(t) = &a.torsion {
        refs.push(format!("torsion:{:?}:{}", t.level, verdict_tag(&t.verdict)).to_lowercase());
    }
    if let Some(c) = &a.cube {
        let v = match c.verdict {
            Order3Verdict::Excluded => "excluded",
            Order3Verdict::ExcludedInSubgroups { .. } => "excluded_in_subgroups",
            Order3Verdict::Undecided { .. } => "undecided",
        };
        refs.push(format!("cubes:{}:{v}", c.witness_place));
    }
    refs
}

fn verdict_tag(v: &Verdict) -> &'static str {
    match v {
        Verdict::TorsionFree => "torsion_free",
        Verdict::OrdersPossible { .. } => "orders_possible",
        Verdict::NotTorsionFree => "not_torsion_free",
        Verdict::Undecided { .. } => "undecided",
    }
}

pub fn class_id(pair_id: &str, t: &[String], variant: &str, index: u64) -> String {
    format!("{pair_id}/{}/{variant}/{index}", t.join("+"))
}

fn record(
    pair: &PairDesc,
    coll: &CoherentCollection,
    index: u64,
    chi_chain: Option<ChiChain>,
    certificates: Vec<String>,
    provenance: Provenance,
) -> ClassRecord {
    let t = coll.t();
    let variant = coll.variant_label();
    let note = chi_chain
        .as_ref()
        .and_then(|c| match fpp_viability(&c.chi_gammabar) {
            Viability::Viable { n } => Some(fundamental_group_note(n)),
            Viability::NotViable => None,
        });
    ClassRecord {
        id: class_id(&pair.id, &t, &variant, index),
        pair_id: pair.id.clone(),
        k: pair.k.label.clone(),
        k_disc: pair.k.disc,
        annotations: annotations_for(pair, &t, &variant),
        t,
        variant,
        collection_class_index: index,
        chi_chain,
        fundamental_group_note: note,
        certificates,
        provenance,
    }
}

/// Collections considered but contributing no class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Omitted {
    pub collection: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusCheck {
    pub name: String,
    pub expected: u32,
    pub actual: u32,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub total: u32,
    pub by_k: BTreeMap<String, u32>,
    pub by_pair: BTreeMap<String, u32>,
    pub records: Vec<ClassRecord>,
    pub omitted: Vec<Omitted>,
    pub checks: Vec<CensusCheck>,
}

impl Census {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

fn legacy_records(
    pair: &PairDesc,
    coll: &CoherentCollection,
    count: u32,
) -> Result<Vec<ClassRecord>> {
    let discrepancy = |detail: String| Error::Discrepancy {
        pair: pair.id.clone(),
        detail,
    };
    if let Ok(n) = collection_count(pair, &coll.t()) {
        if u64::from(count) > n {
            return Err(discrepancy(format!(
                "legacy count {count} exceeds the {n} coherent collections"
            )));
        }
    }
    let chain = chi_chain(pair, coll).ok();
    if let Some(c) = &chain {
        if count > 0 && fpp_viability(&c.chi_gammabar) == Viability::NotViable {
            return Err(discrepancy(format!(
                "legacy count {count} but χ(Γ̄) = {} is not viable",
                c.chi_gammabar
            )));
        }
    }
    let source = format!(
        "catalog:legacy_class_count ({})",
        pair.provenance_of("legacy_class_count")
    );
    Ok((1..=u64::from(count))
        .map(|i| {
            record(
                pair,
                coll,
                i,
                chain.clone(),
                vec![source.clone()],
                Provenance::Legacy,
            )
        })
        .collect())
}

/// Builds the census from the catalog alone.
///
/// Legacy records contradicting viability or the collection count abort
/// with a discrepancy; totals are compared with the catalog's expectations
/// in `checks`, never forced.
pub fn census(catalog: &Catalog) -> Result<Census> {
    let mut records = Vec::new();
    let mut omitted = Vec::new();
    for pair in &catalog.pairs {
        let t0 = pair.t0_place()?.label.clone();
        for t in &pair.admissible_t {
            for coll in variants(pair, t)? {
                let base = coll.t() == [t0.clone()];
                if let (true, Some(count)) = (base, pair.legacy_class_count) {
                    records.extend(legacy_records(pair, &coll, count)?);
                    continue;
                }
                let a = assess(pair, &coll);
                if a.outcome != Outcome::Accepted {
                    omitted.push(Omitted {
                        collection: a.collection,
                        outcome: a.outcome,
                    });
                    continue;
                }
                let count = collection_count(pair, &coll.t())?;
                let refs = certificate_refs(&a);
                for i in 1..=count {
                    records.push(record(
                        pair,
                        &coll,
                        i,
                        a.chi_chain.clone(),
                        refs.clone(),
                        Provenance::Computed,
                    ));
                }
            }
        }
    }
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));

    let mut by_k = BTreeMap::new();
    let mut by_pair = BTreeMap::new();
    for r in &records {
        *by_k.entry(r.k.clone()).or_insert(0) += 1;
        *by_pair.entry(r.pair_id.clone()).or_insert(0) += 1;
    }
    let total = records.len() as u32;
    let mut checks = Vec::new();
    if let Some(exp) = &catalog.census {
        let mut check = |name: String, expected: u32, actual: u32| {
            checks.push(CensusCheck {
                name,
                expected,
                actual,
                ok: expected == actual,
            })
        };
        check("total".into(), exp.total, total);
        for (k, &n) in &exp.by_k {
            check(format!("k = {k}"), n, by_k.get(k).copied().unwrap_or(0));
        }
        for (p, &n) in &exp.by_pair {
            check(format!("pair {p}"), n, by_pair.get(p).copied().unwrap_or(0));
        }
    }
    Ok(Census {
        total,
        by_k,
        by_pair,
        records,
        omitted,
        checks,
    })
}

pub fn enumerate_classes(catalog: &Catalog) -> Result<Vec<ClassRecord>> {
    Ok(census(catalog)?.records)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum BundleStatus {
    /// Every step computed or covered by a named import.
    Certified,
    /// The class count is a legacy constant; the chain was rechecked where known.
    Legacy,
    Incomplete {
        reason: String,
    },
    Rejected {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassBundle {
    pub class_id: String,
    pub chi_chain: Option<ChiChain>,
    pub viability: Option<Viability>,
    pub level: Option<Level>,
    pub torsion: Option<TorsionCertificate>,
    pub cube: Option<NormalizerCertificate>,
    pub computed: Vec<String>,
    pub imported: Vec<String>,
    pub annotations: Vec<String>,
    pub status: BundleStatus,
}

impl ClassBundle {
    pub fn passes(&self) -> bool {
        matches!(self.status, BundleStatus::Certified | BundleStatus::Legacy)
    }
}

fn find_collection(pair: &PairDesc, t: &[String], variant: &str) -> Result<CoherentCollection> {
    variants(pair, t)?
        .into_iter()
        .find(|c| c.variant_label() == variant)
        .ok_or_else(|| Error::InvalidArgument(format!("{}: no variant `{variant}`", pair.id)))
}

/// A record for any collection, whether or not the census contains it.
pub fn pseudo_record(
    catalog: &Catalog,
    pair_id: &str,
    t: &[String],
    variant: &str,
) -> Result<ClassRecord> {
    let pair = catalog.pair(pair_id)?;
    let coll = find_collection(pair, t, variant)?;
    let chain = chi_chain(pair, &coll).ok();
    Ok(record(
        pair,
        &coll,
        1,
        chain,
        Vec::new(),
        Provenance::Computed,
    ))
}

/// Parses `pair/T/variant[/index]`, looking the class up in the census
/// first and falling back to a pseudo-record.
pub fn resolve_class(catalog: &Catalog, id: &str) -> Result<ClassRecord> {
    if let Some(r) = enumerate_classes(catalog)?.into_iter().find(|r| r.id == id) {
        return Ok(r);
    }
    let parts: Vec<&str> = id.split('/').collect();
    let (pair, t, variant) = match parts.as_slice() {
        [p, t, v] | [p, t, v, _] => (*p, *t, *v),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "class id `{id}` is not pair/T/variant[/index]"
            )))
        }
    };
    let t: Vec<String> = t.split('+').map(str::to_string).collect();
    pseudo_record(catalog, pair, &t, variant)
}

/// Recomputes everything behind a record and bundles it.
pub fn certify_class(catalog: &Catalog, record: &ClassRecord) -> Result<ClassBundle> {
    let pair = catalog.pair(&record.pair_id)?;
    let coll = find_collection(pair, &record.t, &record.variant)?;
    let a = assess(pair, &coll);
    let mut computed = Vec::new();
    let mut imported = Vec::new();
    if let Some(c) = &a.chi_chain {
        computed.push(format!(
            "χ(Λ) = {}, χ(Γ̄) = {}",
            c.chi_lambda, c.chi_gammabar
        ));
        if record.chi_chain.as_ref().is_some_and(|r| r != c) {
            return Ok(bundle(
                record,
                a,
                computed,
                imported,
                BundleStatus::Incomplete {
                    reason: "record χ chain differs from the recomputation".into(),
                },
            ));
        }
    }
    if let Some(t) = &a.torsion {
        for s in &t.exclusion_steps {
            let line = format!("{:?}: {}", s.reason, s.detail);
            if s.reason == crate::torsion::Reason::Imported {
                imported.push(line);
            } else {
                computed.push(line);
            }
        }
    }
    if let Some(c) = &a.cube {
        computed.push(format!(
            "cube classes of {}: {} cosets, witness place {}",
            c.group.field,
            c.group.order(),
            c.witness_place
        ));
        imported.extend(c.axioms.iter().cloned());
        imported.extend(c.group.assumptions.iter().cloned());
    }
    let status = match (&a.outcome, record.provenance) {
        (_, Provenance::Legacy) => BundleStatus::Legacy,
        (Outcome::Accepted, _) => BundleStatus::Certified,
        (Outcome::Rejected { reason }, _) => BundleStatus::Rejected {
            reason: reason.clone(),
        },
        (Outcome::Incomplete { reason }, _) => BundleStatus::Incomplete {
            reason: reason.clone(),
        },
    };
    if record.provenance == Provenance::Legacy {
        imported.push(format!(
            "class count {} ({})",
            pair.legacy_class_count.unwrap_or(0),
            pair.provenance_of("legacy_class_count")
        ));
    }
    Ok(bundle(record, a, computed, imported, status))
}

fn bundle(
    record: &ClassRecord,
    a: Assessment,
    computed: Vec<String>,
    imported: Vec<String>,
    status: BundleStatus,
) -> ClassBundle {
    ClassBundle {
        class_id: record.id.clone(),
        chi_chain: a.chi_chain,
        viability: a.viability,
        level: a.level,
        torsion: a.torsion,
        cube: a.cube,
        computed,
        imported,
        annotations: record.annotations.clone(),
        status,
    }
}

/// Plane counts; `None` when the catalog has no totals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneSummary {
    pub isometry: Option<u32>,
    pub biholomorphism: Option<u32>,
    pub not_in_su21: Option<u32>,
    pub source: Option<String>,
    /// Sum of per-class plane counts where the catalog records them.
    pub annotated_classes: u32,
    pub annotated_planes: u32,
    pub warnings: Vec<String>,
}

pub fn plane_count_annotations(catalog: &Catalog) -> PlaneSummary {
    let totals = catalog.census.as_ref().and_then(|c| c.planes.as_ref());
    let mut annotated_classes = 0;
    let mut annotated_planes = 0;
    for pair in &catalog.pairs {
        for a in &pair.class_annotations {
            if let Some(p) = a.planes {
                let classes = collection_count(pair, &a.t).unwrap_or(1) as u32;
                annotated_classes += classes;
                annotated_planes += p * classes;
            }
        }
    }
    let mut warnings = Vec::new();
    if let Some(t) = totals {
        if t.biholomorphism != 2 * t.isometry {
            warnings.push(format!(
                "biholomorphism count {} is not twice the isometry count {}",
                t.biholomorphism, t.isometry
            ));
        }
        if annotated_planes > t.isometry {
            warnings.push(format!(
                "per-class plane counts sum to {annotated_planes}, above the total {}",
                t.isometry
            ));
        }
    }
    PlaneSummary {
        isometry: totals.map(|t| t.isometry),
        biholomorphism: totals.map(|t| t.biholomorphism),
        not_in_su21: totals.map(|t| t.not_in_su21),
        source: totals.map(|t| t.source.clone()),
        annotated_classes,
        annotated_planes,
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::default_catalog;

    fn ts(t: &[&str]) -> Vec<String> {
        t.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn collection_counts() {
        let cat = default_catalog();
        let n = |id: &str, t: &[&str]| collection_count(cat.pair(id).unwrap(), &ts(t)).unwrap();
        assert_eq!(n("(15,2)", &["2"]), 4);
        assert_eq!(n("(1,5)", &["5"]), 2);
        assert_eq!(n("(1,5)", &["2", "5"]), 1);
        assert_eq!(n("(2,3)", &["2", "3"]), 1);
        assert_eq!(n("(7,2)", &["2", "3"]), 2);
        assert_eq!(n("(23,2)", &["2"]), 2);
        assert_eq!(n("C18", &["v0", "v2"]), 1);
        assert_eq!(n("C20", &["v0", "v3'"]), 1);
        assert_eq!(n("C35", &["v0"]), 1);
        assert!(matches!(
            collection_count(cat.pair("C26").unwrap(), &ts(&["v0", "v1"])),
            Err(Error::Inadmissible(_))
                | Err(Error::UnknownPair(_))
                | Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn census_of_default_catalog() {
        let c = census(&default_catalog()).unwrap();
        assert_eq!(c.total, 28, "{:#?}", c.omitted);
        assert!(c.passes(), "{:#?}", c.checks);
        let by_pair: Vec<_> = [
            "(1,5)", "(2,3)", "(7,2)", "(15,2)", "(23,2)", "C2", "C10", "C18", "C20",
        ]
        .iter()
        .map(|p| c.by_pair[*p])
        .collect();
        assert_eq!(by_pair, [3, 3, 6, 4, 2, 2, 2, 3, 3]);
        assert!(!c.by_pair.contains_key("C26") && !c.by_pair.contains_key("C35"));
    }

    #[test]
    fn notes_follow_viability() {
        for r in enumerate_classes(&default_catalog()).unwrap() {
            let Some(chain) = &r.chi_chain else { continue };
            let note = r.fundamental_group_note.as_deref().unwrap();
            if chain.chi_gammabar == Rat::from_integer(1.into()) {
                assert!(note.contains("index-3"), "{}", r.id);
            }
            if chain.chi_gammabar == Rat::from_integer(3.into()) {
                assert_eq!(note, "Γ̄ itself", "{}", r.id);
            }
        }
    }

    #[test]
    fn records_are_ordered_and_unique() {
        let recs = enumerate_classes(&default_catalog()).unwrap();
        let ids: std::collections::BTreeSet<_> = recs.iter().map(|r| r.id.clone()).collect();
        assert_eq!(ids.len(), recs.len());
        assert!(recs.windows(2).all(|w| w[0].sort_key() <= w[1].sort_key()));
        assert_eq!(recs[0].k, "Q");
        assert_eq!(recs.last().unwrap().pair_id, "C20");
    }

    #[test]
    fn dropping_an_admissible_t_drops_two_classes() {
        let mut cat = default_catalog();
        let pair = cat.pairs.iter_mut().find(|p| p.id == "(7,2)").unwrap();
        pair.admissible_t.retain(|t| t != &ts(&["2", "5"]));
        let c = census(&cat).unwrap();
        assert_eq!(c.total, 26);
        assert!(!c.passes());
    }

    #[test]
    fn c20_bundle() {
        let cat = default_catalog();
        let r = resolve_class(&cat, "C20/v0/base/1").unwrap();
        let b = certify_class(&cat, &r).unwrap();
        assert_eq!(b.status, BundleStatus::Certified);
        let chain = b.chi_chain.unwrap();
        assert_eq!(chain.chi_lambda, Rat::new(3.into(), 7.into()));
        assert_eq!(chain.chi_lambda_plus, Some(Rat::from_integer(3.into())));
        assert_eq!(
            r.fundamental_group_note.as_deref(),
            Some("index-21 subgroups (Λ̄⁺ is one)")
        );
        assert!(b.computed.iter().any(|s| s.starts_with("CongruenceProP")));
        assert!(r.annotations.iter().any(|a| a.contains("21")));
    }

    #[test]
    fn seven_two_bundle_uses_the_cube_witness() {
        let cat = default_catalog();
        let r = resolve_class(&cat, "(7,2)/2+5/5:nonhyp/2").unwrap();
        assert_eq!(r.provenance, Provenance::Computed);
        let b = certify_class(&cat, &r).unwrap();
        assert_eq!(b.status, BundleStatus::Certified);
        assert!(b.computed.iter().any(|s| s.starts_with("CubeCertificate")));
    }

    #[test]
    fn c18_bundles() {
        let cat = default_catalog();
        let p =
            certify_class(&cat, &resolve_class(&cat, "C18/v0+v2/v2:nonhyp/1").unwrap()).unwrap();
        assert_eq!(p.status, BundleStatus::Certified);
        assert!(matches!(
            p.cube.unwrap().verdict,
            Order3Verdict::ExcludedInSubgroups { .. }
        ));
        let i = certify_class(
            &cat,
            &resolve_class(&cat, "C18/v0+v2/v2:iwahori/1").unwrap(),
        )
        .unwrap();
        assert_eq!(i.status, BundleStatus::Certified);
        let legacy = certify_class(&cat, &resolve_class(&cat, "C18/v0/base/1").unwrap()).unwrap();
        assert_eq!(legacy.status, BundleStatus::Legacy);
    }

    #[test]
    fn c26_gives_none() {
        let cat = default_catalog();
        let r = resolve_class(&cat, "C26/v0/base").unwrap();
        let b = certify_class(&cat, &r).unwrap();
        match &b.status {
            BundleStatus::Rejected { reason } => assert!(reason.contains("gives none"), "{reason}"),
            other => panic!("{other:?}"),
        }
        assert!(!b.passes());
    }

    #[test]
    fn legacy_count_above_collections_is_a_discrepancy() {
        let mut cat = default_catalog();
        cat.pairs
            .iter_mut()
            .find(|p| p.id == "(23,2)")
            .unwrap()
            .legacy_class_count = Some(3);
        assert!(matches!(census(&cat), Err(Error::Discrepancy { .. })));
    }

    #[test]
    fn plane_counts() {
        let mut cat = default_catalog();
        let s = plane_count_annotations(&cat);
        assert_eq!(
            (s.isometry, s.biholomorphism, s.not_in_su21),
            (Some(50), Some(100), Some(8))
        );
        assert!(s.warnings.is_empty());
        cat.census.as_mut().unwrap().planes = None;
        let s = plane_count_annotations(&cat);
        assert_eq!(
            (s.isometry, s.biholomorphism, s.not_in_su21),
            (None, None, None)
        );
    }
}
