//! Local cube tests against the set of cubes of `F_q`, enumerated.

mod common;

use common::SmallField;
use fpp_core::cubes::{local_cube_test, Elem};
use fpp_core::{Biquad, Quad, Rat};
use proptest::prelude::*;

fn quad(d: i64, a: i64, b: i64) -> Elem {
    Elem::Quad(Quad::from_ints(d, a, b).unwrap())
}

/// Sorted cube verdicts at the residue images `a + b s`, one per root `s`
/// of `x^2 = d`; `None` if some image is zero.
fn oracle(f: &SmallField, d: i64, a: i64, b: i64, places: usize) -> Option<Vec<bool>> {
    let cubes = f.cubes();
    let mut roots = f.sqrt_all(f.int(d));
    roots.dedup();
    // an inert prime has a single place; both roots are conjugate
    roots.truncate(places);
    let mut out = Vec::new();
    for s in roots {
        let r = f.add(f.int(a), f.mul(f.int(b), s));
        if r == 0 {
            return None;
        }
        out.push(cubes[r]);
    }
    out.sort();
    Some(out)
}

fn check_quadratic(d: i64, p: usize, n: u32, places: usize) {
    let f = SmallField::new(p, n);
    assert_eq!(f.q() % 3, 1);
    let mut seen = [0, 0];
    for a in -8..=8 {
        for b in -8..=8 {
            if a == 0 && b == 0 {
                continue;
            }
            let elem = quad(d, a, b);
            match (
                oracle(&f, d, a, b, places),
                local_cube_test(&elem, p as u64),
            ) {
                (Some(expected), Ok(reports)) => {
                    assert!(reports
                        .iter()
                        .all(|r| r.residue_cardinality == f.q() as u64));
                    let mut got: Vec<bool> = reports.iter().map(|r| r.is_cube).collect();
                    got.sort();
                    assert_eq!(got, expected, "{elem} at {p}");
                    seen[usize::from(expected[0])] += 1;
                }
                (None, Err(_)) => {}
                (o, l) => panic!("{elem} at {p}: oracle {o:?}, library {l:?}"),
            }
        }
    }
    // both cubes and non-cubes occur
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn q25_inert_five_in_sqrt_minus7() {
    check_quadratic(-7, 5, 2, 1);
}

#[test]
fn q7_and_q13_split_in_sqrt_minus3() {
    check_quadratic(-3, 7, 1, 2);
    check_quadratic(-3, 13, 1, 2);
}

#[test]
fn q4_at_two_in_the_biquadratic_field() {
    let f = SmallField::new(2, 2);
    let cubes = f.cubes();
    let omega = (0..4)
        .find(|&x| f.add(f.add(f.mul(x, x), x), 1) == 0)
        .unwrap();
    let h = |n: i64| Rat::new(n.into(), 2.into());
    for u in -3..=3i64 {
        for v in -3..=3i64 {
            for w in -2..=2i64 {
                // u + v zeta3 + w sqrt-2
                let coords = [
                    h(2 * u - v),
                    Rat::from_integer(w.into()),
                    h(v),
                    Rat::from_integer(0.into()),
                ];
                let elem = Elem::Biquad(Biquad::new(-2, -3, coords).unwrap());
                let r = f.add(f.int(u), f.mul(f.int(v), omega));
                let got = local_cube_test(&elem, 2);
                if r == 0 {
                    assert!(got.is_err(), "{elem}");
                    continue;
                }
                let got = got.unwrap();
                assert_eq!(got.len(), 1);
                assert_eq!(got[0].residue_cardinality, 4);
                assert_eq!(got[0].is_cube, cubes[r], "{elem}");
            }
        }
    }
}

proptest! {
    #[test]
    fn cube_class_is_stable_under_cubes(a in -20i64..20, b in -20i64..20, c in -20i64..20, e in -20i64..20) {
        let x = quad(-7, a, b);
        let y = quad(-7, c, e);
        prop_assume!((a, b) != (0, 0) && (c, e) != (0, 0));
        if let (Ok(rx), Ok(ry)) = (local_cube_test(&x, 5), local_cube_test(&y, 5)) {
            prop_assert!(!rx.is_empty() && !ry.is_empty());
            let z = x.mul(&y.pow(3)).unwrap();
            prop_assert_eq!(local_cube_test(&z, 5).unwrap()[0].is_cube, rx[0].is_cube);
        }
    }
}
