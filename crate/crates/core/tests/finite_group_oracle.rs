//! Euler factors and pro-p indices against orders of finite groups of Lie
//! type, counted element by element over `F_q` for `q = 2, 3`.

mod common;

use common::{euler_ratio, norm_one_cubic, sl, Unitary};
use fpp_core::parahoric::{euler_factor, ParahoricTag};
use fpp_core::torsion::pro_p_radical_index;
use fpp_core::Rat;
use num_traits::One;

fn int(x: u64) -> Rat {
    Rat::from_integer((x as i64).into())
}

#[test]
fn euler_factors_match_group_orders() {
    for q in [2usize, 3] {
        let u = Unitary::new(q);
        let su3 = u.su3();
        let u2 = u.u2();
        let torus = u.torus();
        let qi = q as i64;
        assert_eq!(
            su3 as i64,
            qi.pow(3) * (qi * qi - 1) * (qi.pow(3) + 1),
            "q = {q}"
        );

        let e = |tag| int(euler_factor(q as u64, tag).unwrap());
        assert_eq!(
            e(ParahoricTag::NonHypMaxInert),
            euler_ratio(q, (su3, 8), (u2, 4)),
            "q = {q}"
        );
        assert_eq!(
            e(ParahoricTag::IwahoriInert),
            euler_ratio(q, (su3, 8), (torus, 2)),
            "q = {q}"
        );
        assert_eq!(e(ParahoricTag::Hyperspecial), Rat::one());

        let sl3 = sl(3, q);
        let aniso = norm_one_cubic(q);
        assert_eq!(
            e(ParahoricTag::AnisotropicMax),
            euler_ratio(q, (sl3, 8), (aniso, 2)),
            "q = {q}"
        );

        // ramified: PGL_2 (same order as SL_2) against its split torus
        let pgl2 = sl(2, q);
        assert_eq!(
            e(ParahoricTag::IwahoriAtRamified),
            euler_ratio(q, (pgl2, 3), (q - 1, 1)),
            "q = {q}"
        );

        assert_eq!(
            pro_p_radical_index(q as u64, ParahoricTag::NonHypMaxInert).unwrap(),
            u2 as u64
        );
        assert_eq!(
            pro_p_radical_index(q as u64, ParahoricTag::AnisotropicMax).unwrap(),
            aniso as u64
        );
    }
}
