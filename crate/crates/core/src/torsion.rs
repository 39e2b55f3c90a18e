//! Orders of finite-order elements: cyclotomic candidates, ramification and
//! pro-p index exclusions, and assembled torsion verdicts.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::catalog::{Fact, PairDesc};
use crate::cubes::{normalizer_torsion_certificate, Order3Verdict};
use crate::exact::int::{euler_phi, lcm, prime_divisors};
use crate::parahoric::{CoherentCollection, ParahoricTag};
use crate::{Error, Result};

/// Largest `m` scanned. `phi(m) <= 6 [k:Q] <= 24` already forces `m <= 90`.
const SCAN_LIMIT: u64 = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateOrders {
    /// Odd `m > 1` with `phi(lcm(w, m)) | 6d`.
    pub cyclotomic: BTreeSet<u64>,
    /// Those whose prime factors are `p` or divide `q^2 + q + 1` at the `T0` place.
    pub refined: BTreeSet<u64>,
}

fn field_data(pair: &PairDesc) -> Result<(u64, u64)> {
    let missing = |what: &str| Error::MissingData {
        pair: pair.id.clone(),
        what: what.into(),
    };
    let w = pair
        .ell
        .root_of_unity_order
        .ok_or_else(|| missing("ell.root_of_unity_order"))? as u64;
    let d = pair.k.degree.ok_or_else(|| missing("k.degree"))? as u64;
    Ok((w, d))
}

/// Possible orders of nontrivial finite-order elements of `G(k)`.
///
/// An element `x` of order `m` generates a cubic extension `L = l(x)` of
/// degree `6d` containing a primitive `lcm(w, m)`-th root of unity. Only odd
/// `m` occur: the reduced norm of `-1` is `-1`, so `-1` is not in `G(k)`.
/// Requires `l` without cube roots of unity (otherwise `x` may lie in `l`).
pub fn torsion_order_candidates(pair: &PairDesc) -> Result<CandidateOrders> {
    let (w, d) = field_data(pair)?;
    if w % 3 == 0 {
        return Err(Error::Inapplicable(format!(
            "{}: l contains a cube root of unity (w = {w})",
            pair.id
        )));
    }
    let w_primes = prime_divisors(w);
    let cyclotomic: BTreeSet<u64> = (3..=SCAN_LIMIT)
        .step_by(2)
        // a prime of w dividing m would raise the root-of-unity order inside l itself
        .filter(|m| w_primes.iter().all(|&r| r == 3 || m % r != 0))
        .filter(|&m| (6 * d) % euler_phi(lcm(w, m)) == 0)
        .collect();
    let q = pair.q_v0.ok_or_else(|| Error::MissingData {
        pair: pair.id.clone(),
        what: "q_v0".into(),
    })?;
    let index = pro_p_radical_index(q, ParahoricTag::AnisotropicMax)?;
    let refined = cyclotomic
        .iter()
        .copied()
        .filter(|&m| {
            prime_divisors(m)
                .iter()
                .all(|&r| r == pair.t0_prime || index % r == 0)
        })
        .collect();
    Ok(CandidateOrders {
        cyclotomic,
        refined,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Obstruction {
    /// `L` would be `Q(zeta_n)`, in which this prime (ramified in `k`) is unramified.
    Obstructed {
        prime: u64,
        conductor: u64,
    },
    Unobstructed {
        conductor: u64,
    },
    /// `Q(zeta_n)` is smaller than `L`, so nothing is forced.
    NotApplicable,
}

/// When `phi(lcm(w, m)) = 6d`, the field `L` equals `Q(zeta_n)`; every prime
/// ramified in `k` must then divide `n`.
pub fn ramification_obstruction(pair: &PairDesc, m: u64) -> Result<Obstruction> {
    let (w, d) = field_data(pair)?;
    let n = lcm(w, m);
    if euler_phi(n) != 6 * d {
        return Ok(Obstruction::NotApplicable);
    }
    let disc = pair.k.disc.ok_or_else(|| Error::MissingData {
        pair: pair.id.clone(),
        what: "k.disc".into(),
    })?;
    let bad = prime_divisors(disc.unsigned_abs())
        .into_iter()
        .find(|r| !n.is_multiple_of(*r));
    Ok(match bad {
        Some(prime) => Obstruction::Obstructed {
            prime,
            conductor: n,
        },
        None => Obstruction::Unobstructed { conductor: n },
    })
}

/// Index of the maximal normal pro-p subgroup.
pub fn pro_p_radical_index(q: u64, tag: ParahoricTag) -> Result<u64> {
    match tag {
        ParahoricTag::NonHypMaxInert => Ok(q * (q - 1) * (q + 1) * (q + 1)),
        ParahoricTag::AnisotropicMax => Ok(q * q + q + 1),
        other => Err(Error::Unsupported(format!(
            "pro-p radical index for {other:?}"
        ))),
    }
}

/// An element of prime order `r != p` injects into the finite quotient, so
/// it is excluded when `r` does not divide the index.
pub fn order_excluded(r: u64, q: u64, tag: ParahoricTag) -> Result<bool> {
    let p = prime_divisors(q)[0];
    Ok(r != p && pro_p_radical_index(q, tag)? % r != 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// The principal arithmetic subgroup (modulo center).
    Principal,
    /// Its intersection with the first congruence subgroup at the `T0` place.
    Congruence,
    /// The image of the normalizer.
    Normalizer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    CyclotomicScan,
    AnisotropicQuotient,
    RamificationMismatch,
    ParahoricIndex,
    CongruenceProP,
    CubeCertificate,
    Imported,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExclusionStep {
    /// `None` for steps about the whole candidate list.
    pub order: Option<u64>,
    pub reason: Reason,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Verdict {
    TorsionFree,
    OrdersPossible { orders: BTreeSet<u64> },
    NotTorsionFree,
    Undecided { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionCertificate {
    pub pair_id: String,
    pub collection: String,
    pub level: Level,
    pub candidate_orders: BTreeSet<u64>,
    pub exclusion_steps: Vec<ExclusionStep>,
    pub verdict: Verdict,
}

impl TorsionCertificate {
    pub fn is_torsion_free(&self) -> bool {
        self.verdict == Verdict::TorsionFree
    }
}

struct Builder {
    steps: Vec<ExclusionStep>,
}

impl Builder {
    fn step(&mut self, order: Option<u64>, reason: Reason, detail: impl Into<String>) {
        self.steps.push(ExclusionStep {
            order,
            reason,
            detail: detail.into(),
        });
    }
}

fn first_excluded_prime(m: u64, mut pred: impl FnMut(u64) -> bool) -> Option<u64> {
    prime_divisors(m).into_iter().find(|&r| pred(r))
}

/// Runs the exclusion chain; returns candidates and the orders left over.
fn principal_chain(
    pair: &PairDesc,
    coll: &CoherentCollection,
    b: &mut Builder,
) -> Result<(BTreeSet<u64>, BTreeSet<u64>)> {
    let cands = torsion_order_candidates(pair)?;
    let (w, d) = field_data(pair)?;
    b.step(
        None,
        Reason::CyclotomicScan,
        format!(
            "odd m <= {SCAN_LIMIT} with phi(lcm({w}, m)) | {}: {:?}",
            6 * d,
            cands.cyclotomic
        ),
    );
    let q0 = pair.q_v0.unwrap_or(0);
    let index0 = q0 * q0 + q0 + 1;
    let mut left = BTreeSet::new();
    for &m in &cands.cyclotomic {
        if !cands.refined.contains(&m) {
            let r = first_excluded_prime(m, |r| r != pair.t0_prime && !index0.is_multiple_of(r))
                .unwrap_or(m);
            b.step(
                Some(m),
                Reason::AnisotropicQuotient,
                format!(
                    "{r} is not {} and does not divide q^2+q+1 = {index0} at the T0 place",
                    pair.t0_prime
                ),
            );
            continue;
        }
        if let Obstruction::Obstructed { prime, conductor } = ramification_obstruction(pair, m)? {
            b.step(
                Some(m),
                Reason::RamificationMismatch,
                format!("L = Q(zeta_{conductor}) but {prime} ramifies in k and does not divide {conductor}"),
            );
            continue;
        }
        let mut excluded = false;
        for (label, &tag) in &coll.overrides {
            if tag != ParahoricTag::NonHypMaxInert {
                continue;
            }
            let q = pair.place(label)?.q;
            let mut hit = None;
            for r in prime_divisors(m) {
                if order_excluded(r, q, tag)? {
                    hit = Some(r);
                    break;
                }
            }
            if let Some(r) = hit {
                b.step(
                    Some(m),
                    Reason::ParahoricIndex,
                    format!(
                        "{r} does not divide [P:P+] = {} at {label} and is prime to the residue characteristic",
                        pro_p_radical_index(q, tag)?
                    ),
                );
                excluded = true;
                break;
            }
        }
        if !excluded {
            left.insert(m);
        }
    }
    Ok((cands.cyclotomic, left))
}

fn principal_verdict(
    pair: &PairDesc,
    coll: &CoherentCollection,
    b: &mut Builder,
) -> (BTreeSet<u64>, Verdict) {
    let import = pair.imported(Fact::PrincipalTorsionFree, &coll.t());
    let (cands, outcome) = match principal_chain(pair, coll, b) {
        Ok((cands, left)) if left.is_empty() => return (cands, Verdict::TorsionFree),
        Ok((cands, left)) => (cands, Verdict::OrdersPossible { orders: left }),
        Err(e) => (
            BTreeSet::new(),
            Verdict::Undecided {
                reason: e.to_string(),
            },
        ),
    };
    match import {
        Some(f) => {
            b.step(
                None,
                Reason::Imported,
                format!("principal_torsion_free ({})", f.source),
            );
            (cands, Verdict::TorsionFree)
        }
        None => (cands, outcome),
    }
}

/// Torsion verdict for one coherent collection at the given level.
///
/// Missing data gives `Undecided`, never a silent pass.
pub fn torsion_verdict(
    pair: &PairDesc,
    coll: &CoherentCollection,
    level: Level,
) -> TorsionCertificate {
    let mut b = Builder { steps: Vec::new() };
    let (candidates, principal) = principal_verdict(pair, coll, &mut b);
    let verdict = match level {
        Level::Principal => principal,
        Level::Congruence => match principal {
            Verdict::OrdersPossible { orders } => {
                for &m in &orders {
                    if let Some(r) = first_excluded_prime(m, |r| r != pair.t0_prime) {
                        b.step(
                            Some(m),
                            Reason::CongruenceProP,
                            format!(
                                "the first congruence subgroup is pro-{}; order {r} impossible",
                                pair.t0_prime
                            ),
                        );
                    }
                }
                let left: BTreeSet<u64> = orders
                    .into_iter()
                    .filter(|&m| first_excluded_prime(m, |r| r != pair.t0_prime).is_none())
                    .collect();
                if left.is_empty() {
                    Verdict::TorsionFree
                } else {
                    Verdict::OrdersPossible { orders: left }
                }
            }
            other => other,
        },
        Level::Normalizer => normalizer_verdict(pair, coll, principal, &mut b),
    };
    TorsionCertificate {
        pair_id: pair.id.clone(),
        collection: coll.to_string(),
        level,
        candidate_orders: candidates,
        exclusion_steps: b.steps,
        verdict,
    }
}

fn normalizer_verdict(
    pair: &PairDesc,
    coll: &CoherentCollection,
    principal: Verdict,
    b: &mut Builder,
) -> Verdict {
    let t = coll.t();
    if let Some(f) = pair.imported(Fact::NormalizerHasOrder3, &t) {
        b.step(
            Some(3),
            Reason::Imported,
            format!("normalizer_has_order3 ({})", f.source),
        );
        return Verdict::NotTorsionFree;
    }
    match principal {
        Verdict::TorsionFree => {}
        Verdict::OrdersPossible { mut orders } => {
            orders.insert(3);
            return Verdict::OrdersPossible { orders };
        }
        other => return other,
    }
    // the normalizer image is an extension of a torsion-free group by a
    // 3-group, so only order 3 remains
    if let Some(f) = pair.imported(Fact::NormalizerTorsionFree, &t) {
        b.step(
            Some(3),
            Reason::Imported,
            format!("normalizer_torsion_free ({})", f.source),
        );
        return Verdict::TorsionFree;
    }
    match normalizer_torsion_certificate(pair, coll) {
        Ok(cert) => match cert.verdict {
            Order3Verdict::Excluded => {
                b.step(
                    Some(3),
                    Reason::CubeCertificate,
                    format!(
                        "no coset of the cube-class group is realized; witness place {}",
                        cert.witness_place
                    ),
                );
                Verdict::TorsionFree
            }
            Order3Verdict::ExcludedInSubgroups { .. } => Verdict::Undecided {
                reason: "order 3 excluded only in index-3 subgroups".into(),
            },
            Order3Verdict::Undecided { reason } => Verdict::Undecided { reason },
        },
        Err(e) => Verdict::Undecided {
            reason: e.to_string(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::default_catalog;
    use crate::parahoric::variants;

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    fn coll(id: &str, t: &[&str], variant: &str) -> (PairDesc, CoherentCollection) {
        let cat = default_catalog();
        let pair = cat.pair(id).unwrap().clone();
        let t: Vec<String> = t.iter().map(|s| s.to_string()).collect();
        let c = variants(&pair, &t)
            .unwrap()
            .into_iter()
            .find(|c| c.variant_label() == variant)
            .unwrap();
        (pair, c)
    }

    #[test]
    fn candidate_orders() {
        let cat = default_catalog();
        let c = |id: &str| torsion_order_candidates(cat.pair(id).unwrap()).unwrap();
        assert_eq!(c("C20").cyclotomic, set(&[3, 7, 9]));
        assert_eq!(c("C20").refined, set(&[7]));
        assert_eq!(c("C35").cyclotomic, set(&[]));
        assert_eq!(c("(7,2)").refined, set(&[7]));
        assert_eq!(c("(2,3)").refined, set(&[3, 9]));
        assert_eq!(c("(1,5)").cyclotomic, set(&[]));
        assert!(matches!(
            torsion_order_candidates(cat.pair("C18").unwrap()),
            Err(Error::Inapplicable(_))
        ));
        assert!(matches!(
            torsion_order_candidates(cat.pair("C10").unwrap()),
            Err(Error::MissingData { .. })
        ));
    }

    #[test]
    fn candidates_stay_within_three_seven_nine() {
        for pair in &default_catalog().pairs {
            if let Ok(c) = torsion_order_candidates(pair) {
                assert!(c.cyclotomic.is_subset(&set(&[3, 7, 9])), "{}", pair.id);
            }
        }
    }

    #[test]
    fn ramification() {
        let cat = default_catalog();
        assert_eq!(
            ramification_obstruction(cat.pair("C26").unwrap(), 7).unwrap(),
            Obstruction::Obstructed {
                prime: 3,
                conductor: 28
            }
        );
        assert_eq!(
            ramification_obstruction(cat.pair("C20").unwrap(), 7).unwrap(),
            Obstruction::Unobstructed { conductor: 28 }
        );
        assert_eq!(
            ramification_obstruction(cat.pair("C20").unwrap(), 3).unwrap(),
            Obstruction::NotApplicable
        );
    }

    #[test]
    fn pro_p_indices() {
        assert_eq!(
            pro_p_radical_index(3, ParahoricTag::NonHypMaxInert).unwrap(),
            96
        );
        assert_eq!(
            pro_p_radical_index(5, ParahoricTag::NonHypMaxInert).unwrap(),
            720
        );
        assert_eq!(
            pro_p_radical_index(2, ParahoricTag::AnisotropicMax).unwrap(),
            7
        );
        assert!(pro_p_radical_index(2, ParahoricTag::IwahoriInert).is_err());
        assert!(order_excluded(7, 3, ParahoricTag::NonHypMaxInert).unwrap());
        assert!(order_excluded(7, 5, ParahoricTag::NonHypMaxInert).unwrap());
        assert!(!order_excluded(3, 3, ParahoricTag::NonHypMaxInert).unwrap());
    }

    #[test]
    fn principal_verdicts() {
        let (p, c) = coll("C26", &["v0"], "base");
        let cert = torsion_verdict(&p, &c, Level::Principal);
        assert!(cert.is_torsion_free());
        assert!(cert
            .exclusion_steps
            .iter()
            .any(|s| s.reason == Reason::RamificationMismatch));

        let (p, c) = coll("(7,2)", &["2", "3"], "3:nonhyp");
        let cert = torsion_verdict(&p, &c, Level::Principal);
        assert!(cert.is_torsion_free());
        assert!(cert
            .exclusion_steps
            .iter()
            .any(|s| s.order == Some(7) && s.reason == Reason::ParahoricIndex));

        let (p, c) = coll("C20", &["v0"], "base");
        let cert = torsion_verdict(&p, &c, Level::Principal);
        assert_eq!(cert.verdict, Verdict::OrdersPossible { orders: set(&[7]) });
        assert!(torsion_verdict(&p, &c, Level::Congruence).is_torsion_free());

        let (p, c) = coll("C35", &["v0"], "base");
        let cert = torsion_verdict(&p, &c, Level::Principal);
        assert!(cert.is_torsion_free());
        assert!(!cert.exclusion_steps.is_empty());
    }

    #[test]
    fn normalizer_verdicts() {
        let (p, c) = coll("(7,2)", &["2", "5"], "5:nonhyp");
        let cert = torsion_verdict(&p, &c, Level::Normalizer);
        assert!(cert.is_torsion_free(), "{cert:?}");
        assert!(cert
            .exclusion_steps
            .iter()
            .any(|s| s.reason == Reason::CubeCertificate));

        let (p, c) = coll("C26", &["v0"], "base");
        assert_eq!(
            torsion_verdict(&p, &c, Level::Normalizer).verdict,
            Verdict::NotTorsionFree
        );

        let (p, c) = coll("C18", &["v0", "v2"], "v2:iwahori");
        assert!(torsion_verdict(&p, &c, Level::Normalizer).is_torsion_free());

        let (p, c) = coll("C2", &["v0"], "base");
        assert!(matches!(
            torsion_verdict(&p, &c, Level::Normalizer).verdict,
            Verdict::Undecided { .. }
        ));
    }
}
