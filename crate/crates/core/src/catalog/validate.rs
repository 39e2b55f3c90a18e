//! Catalog-wide validation: every check runs, failures are collected.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::Serialize;

use super::fields::{class_number_imaginary, place_behavior, roots_of_unity_order, Behavior};
use super::{pair_invariants, Catalog, PairDesc};
use crate::characters::{l_rel_minus2, zeta_k_minus1};
use crate::exact::int::primes_up_to;
use crate::exact::ratio;
use crate::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Informational disagreement that does not fail validation.
    Warn,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub pair: Option<String>,
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    fn push(
        &mut self,
        pair: Option<&str>,
        name: &str,
        status: CheckStatus,
        detail: impl Into<String>,
    ) {
        self.checks.push(Check {
            pair: pair.map(str::to_string),
            name: name.to_string(),
            status,
            detail: detail.into(),
        });
    }

    fn check(&mut self, pair: &str, name: &str, ok: bool, detail: impl Into<String>) {
        let status = if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        self.push(Some(pair), name, status, detail);
    }
}

/// Admissible `T` sets by pair, as multisets of the primes under each place.
fn expected_t_shapes(id: &str) -> Option<Vec<Vec<u64>>> {
    let shapes: &[&[u64]] = match id {
        "(1,5)" => &[&[5], &[2, 5]],
        "(2,3)" => &[&[3], &[2, 3]],
        "(7,2)" => &[&[2], &[2, 3], &[2, 5]],
        "C18" => &[&[3], &[2, 3]],
        "C20" => &[&[2], &[2, 3], &[2, 3]],
        _ => return super::expected_t0_prime(id).map(|p| vec![vec![p]]),
    };
    Some(shapes.iter().map(|s| s.to_vec()).collect())
}

/// Pairs where every finite place of `k` is unramified in `l`.
const UNRAMIFIED_PAIRS: [&str; 4] = ["C18", "C20", "C26", "C35"];

fn t_shapes(pair: &PairDesc) -> Option<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for t in &pair.admissible_t {
        let mut primes = Vec::new();
        for label in t {
            primes.push(pair.place(label).ok()?.prime);
        }
        primes.sort();
        out.push(primes);
    }
    out.sort();
    Some(out)
}

fn validate_pair(pair: &PairDesc, report: &mut ValidationReport) {
    let id = pair.id.as_str();

    let violations = pair_invariants(pair);
    report.check(
        id,
        "invariants",
        violations.is_empty(),
        violations.join("; "),
    );

    match (expected_t_shapes(id), t_shapes(pair)) {
        (Some(mut want), Some(got)) => {
            want.sort();
            report.check(
                id,
                "admissible_T",
                want == got,
                format!("expected primes {want:?}, catalog {got:?}"),
            );
        }
        (None, _) => report.push(
            Some(id),
            "admissible_T",
            CheckStatus::Skip,
            "no reference table for this id",
        ),
        (_, None) => report.check(id, "admissible_T", false, "T refers to an unknown place"),
    }

    for (name, field) in [("k", &pair.k), ("ell", &pair.ell)] {
        if let (Some(chars), Some(disc)) = (&field.char_factors, field.disc) {
            let prod = chars.conductor_product();
            report.check(
                id,
                &format!("{name}.conductor_discriminant"),
                prod == disc.unsigned_abs() as u128,
                format!("prod |D_i| = {prod}, |disc| = {}", disc.unsigned_abs()),
            );
        }
        if let (Some(chars), Some(deg)) = (&field.char_factors, field.degree) {
            report.check(
                id,
                &format!("{name}.character_count"),
                chars.factors().len() as u32 + 1 == deg,
                format!("{} characters for degree {deg}", chars.factors().len()),
            );
        }
    }

    if let (Some(k), Some(l)) = (&pair.k.char_factors, &pair.ell.char_factors) {
        match l.minus(k) {
            Ok(rel) => {
                let odd = rel.factors().iter().all(|c| c.is_odd());
                report.check(
                    id,
                    "ell.totally_complex",
                    odd,
                    format!("relative characters {:?}", rel.discs()),
                );
            }
            Err(e) => report.check(id, "ell.contains_k", false, e.to_string()),
        }
    }

    if UNRAMIFIED_PAIRS.contains(&id) {
        match (pair.k.disc, pair.ell.disc) {
            (Some(dk), Some(dl)) => report.check(
                id,
                "disc_ell_is_disc_k_squared",
                dl == dk * dk,
                format!("D_k = {dk}, D_ell = {dl}"),
            ),
            _ => report.check(
                id,
                "disc_ell_is_disc_k_squared",
                false,
                "discriminants missing",
            ),
        }
        let mut ramified = Vec::new();
        let mut unknown = Vec::new();
        for p in primes_up_to(100) {
            match place_behavior(pair, p) {
                Ok(d) => {
                    if d.places
                        .iter()
                        .any(|pl| pl.in_ell == Some(Behavior::Ramified))
                    {
                        ramified.push(p);
                    }
                }
                Err(_) => unknown.push(p),
            }
        }
        report.check(
            id,
            "unramified_below_100",
            ramified.is_empty() && unknown.is_empty(),
            format!("ramified at {ramified:?}, no data at {unknown:?}"),
        );
    }

    for v in &pair.places {
        match place_behavior(pair, v.prime) {
            Ok(d) if d.source == "computed" => {
                let ok = d
                    .places
                    .iter()
                    .any(|pl| pl.q == v.q && pl.in_ell == Some(v.in_ell));
                report.check(
                    id,
                    &format!("place {}", v.label),
                    ok,
                    format!(
                        "catalog q = {}, {:?}; computed {:?}",
                        v.q, v.in_ell, d.places
                    ),
                );
            }
            Ok(_) => report.push(
                Some(id),
                &format!("place {}", v.label),
                CheckStatus::Skip,
                "catalog-supplied place",
            ),
            Err(e) => report.check(id, &format!("place {}", v.label), false, e.to_string()),
        }
    }

    if let Some(h) = pair.ell.class_number {
        let disc = pair.ell.disc.filter(|_| pair.ell.degree == Some(2));
        match disc {
            Some(d) if d < 0 => match class_number_imaginary(d) {
                Ok(c) => report.check(
                    id,
                    "ell.class_number",
                    c == h,
                    format!("reduced forms give {c}, catalog {h}"),
                ),
                Err(e) => report.check(id, "ell.class_number", false, e.to_string()),
            },
            _ => report.push(
                Some(id),
                "ell.class_number",
                CheckStatus::Skip,
                format!("h = {h} is a trusted input"),
            ),
        }
    }

    if let Some(w) = pair.ell.root_of_unity_order {
        match roots_of_unity_order(&pair.ell) {
            Some(c) => report.check(
                id,
                "ell.root_of_unity_order",
                c == w,
                format!("computed {c}, catalog {w}"),
            ),
            None => report.push(
                Some(id),
                "ell.root_of_unity_order",
                CheckStatus::Skip,
                "no character data",
            ),
        }
    }

    analytic_cross_check(pair, report);
}

/// `mu = 4^{-d} |zeta_k(-1) L_{l|k}(-2)|` against the catalog constant.
/// Reported as a warning only: it presumes the standard normalization.
fn analytic_cross_check(pair: &PairDesc, report: &mut ValidationReport) {
    let id = pair.id.as_str();
    let (Some(k), Some(rel), Some(d)) =
        (&pair.k.char_factors, pair.relative_chars(), pair.k.degree)
    else {
        return;
    };
    let (Ok(z), Ok(l)) = (zeta_k_minus1(k), l_rel_minus2(&rel)) else {
        report.push(
            Some(id),
            "analytic_mu",
            CheckStatus::Skip,
            "characters do not encode the pair",
        );
        return;
    };
    let mu = (z * l).abs() / Rat::from_integer(4u32.pow(d).into());
    let implied_chi = pair.q_v0.map(|q| {
        Rat::from_integer(3.into()) * &mu * Rat::from_integer(((q - 1) * (q * q - 1)).into())
    });
    let detail = format!(
        "analytic mu = {}{}",
        ratio::to_string(&mu),
        implied_chi
            .as_ref()
            .map(|c| format!(", implied chi = {}", ratio::to_string(c)))
            .unwrap_or_default()
    );
    let agrees = match (&pair.mu_base, &pair.chi_lambda, &implied_chi) {
        (Some(m), _, _) => Some(m == &mu),
        (None, Some(c), Some(ic)) => Some(c == ic),
        _ => None,
    };
    let status = match agrees {
        Some(true) => CheckStatus::Pass,
        Some(false) => CheckStatus::Warn,
        None => CheckStatus::Skip,
    };
    report.push(Some(id), "analytic_mu", status, detail);
}

fn validate_census(cat: &Catalog, report: &mut ValidationReport) {
    let Some(census) = &cat.census else {
        report.push(None, "census", CheckStatus::Skip, "no census expectations");
        return;
    };
    let by_k: u32 = census.by_k.values().sum();
    report.check_global(
        "census.by_k_total",
        by_k == census.total,
        format!("sum {by_k}, total {}", census.total),
    );
    let unknown: Vec<&String> = census
        .by_pair
        .keys()
        .filter(|id| cat.pair(id).is_err())
        .collect();
    report.check_global(
        "census.by_pair_ids",
        unknown.is_empty(),
        format!("unknown ids {unknown:?}"),
    );
    let mut per_k: BTreeMap<String, u32> = BTreeMap::new();
    for (id, n) in &census.by_pair {
        if let Ok(p) = cat.pair(id) {
            *per_k.entry(p.k.label.clone()).or_default() += n;
        }
    }
    let consistent = per_k
        .iter()
        .all(|(k, n)| census.by_k.get(k).is_some_and(|m| n <= m));
    report.check_global(
        "census.by_pair_within_by_k",
        consistent,
        format!("{per_k:?}"),
    );
    if let Some(planes) = &census.planes {
        report.check_global(
            "census.planes",
            planes.biholomorphism == 2 * planes.isometry
                && planes.not_in_su21 <= planes.biholomorphism,
            format!(
                "{} / {} / {}",
                planes.isometry, planes.biholomorphism, planes.not_in_su21
            ),
        );
        let annotated: u32 = cat
            .pairs
            .iter()
            .flat_map(|p| p.class_annotations.iter())
            .filter_map(|a| a.planes)
            .sum();
        let status = if annotated <= planes.isometry {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        report.push(
            None,
            "census.plane_annotations",
            status,
            format!("per-class annotations sum to {annotated}"),
        );
    }
}

impl ValidationReport {
    fn check_global(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        let status = if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        self.push(None, name, status, detail);
    }
}

/// Re-checks every pair and the census block. Never stops at the first failure.
pub fn validate_catalog(cat: &Catalog) -> ValidationReport {
    let mut report = ValidationReport::default();
    for pair in &cat.pairs {
        validate_pair(pair, &mut report);
    }
    validate_census(cat, &mut report);
    report
}
