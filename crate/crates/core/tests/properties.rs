use num_traits::Zero;
use padic_wavefront::char_sums::{
    brute_force_ft, direct_ft, homogeneity_factor, inverse_ft, scaled_eval, truncated_stratum_oracle,
    weight_cube_integral, FrequencyPoint, MonomialScene, PolynomialScene, Scene,
};
use padic_wavefront::geometry::{
    crit_of_map, is_conic, isotropic_check, membership, symplectic_swap, AmbientSpec, Block, Stratum, Subspace, WRule,
};
use padic_wavefront::poly::MultiPoly;
use padic_wavefront::rational::{int, ratio, Rational};
use padic_wavefront::{CyclotomicValue, ExecMode, PAdicScalar, PrimeContext, ResidueCube};
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

fn scalar(ctx: &PrimeContext, n: i64, k: u32) -> PAdicScalar {
    PAdicScalar::from_parts(ctx, n, k)
}

/// Random polynomial in `n` variables with small integer coefficients and degree <= `deg`.
fn poly(n: usize, deg: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0..=deg, n), -4i64..=4), 1..=3).prop_map(move |terms| {
        let terms = terms.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= deg).map(|(e, c)| (e, int(c)));
        MultiPoly::from_terms(n, terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_is_multiplicative(p in prime(), a in -200i64..200, b in -200i64..200, ka in 0u32..4, kb in 0u32..4) {
        let ctx = PrimeContext::new(p, 8).unwrap();
        let x = scalar(&ctx, a, ka);
        let y = scalar(&ctx, b, kb);
        let lhs = x.add(&y).psi(&ctx).unwrap();
        let rhs = x.psi(&ctx).unwrap().mul(&y.psi(&ctx).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn psi_trivial_on_integers(p in prime(), a in -10_000i64..10_000) {
        let ctx = PrimeContext::new(p, 4).unwrap();
        prop_assert!(PAdicScalar::from_int(&ctx, a).psi(&ctx).unwrap().is_one());
    }

    #[test]
    fn reduce_is_idempotent(p in prime(), level in 0u32..3, coeffs in prop::collection::vec(-5i64..5, 1..30)) {
        let n = p.pow(level) as usize;
        let dense: Vec<Rational> = (0..n).map(|i| int(coeffs[i % coeffs.len()])).collect();
        let v = CyclotomicValue::from_dense(p, level, dense);
        prop_assert_eq!(v.reduce().reduce(), v.reduce());
    }

    #[test]
    fn full_sums_vanish(p in prime(), k in 1u32..4, unit in 1i64..50) {
        prop_assume!(unit % p as i64 != 0);
        let ctx = PrimeContext::new(p, 6).unwrap();
        let x = scalar(&ctx, unit, k);
        let mut acc = CyclotomicValue::zero(p);
        for t in 0..p.pow(k) as i64 {
            acc = acc.add(&x.mul(&PAdicScalar::from_int(&ctx, t)).psi(&ctx).unwrap());
        }
        prop_assert!(acc.is_zero());
    }

    #[test]
    fn abs_norm_is_multiplicative(p in prime(), a in 1i64..500, b in 1i64..500, ka in 0u32..3, kb in 0u32..3) {
        let ctx = PrimeContext::new(p, 4).unwrap();
        let x = scalar(&ctx, a, ka);
        let y = scalar(&ctx, -b, kb);
        prop_assert_eq!(x.mul(&y).abs_norm(), x.abs_norm() * y.abs_norm());
    }

    #[test]
    fn direct_matches_brute(
        p in prime(),
        phi in poly(2, 3),
        r in prop::collection::vec(0i64..=2, 2),
        m in 0u32..=2,
        unit in 1i64..30,
        level in 0u32..=1,
        extra in 0u32..=1,
    ) {
        prop_assume!(unit % p as i64 != 0);
        let ctx = PrimeContext::new(p, 8).unwrap();
        let scene = PolynomialScene::new(2, vec![phi], r, None).unwrap();
        let cube = ResidueCube::new(p, vec![1, 0], level).unwrap();
        let freq = FrequencyPoint::scalar(scalar(&ctx, unit, m));
        let fast = direct_ft(&ctx, &scene, &cube, &freq).unwrap();
        let k = m.max(level) + extra;
        let slow = brute_force_ft(&ctx, &Scene::Direct(scene), &cube, &freq, k).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn refinement_is_additive(p in prime(), phi in poly(2, 3), r in prop::collection::vec(0i64..=2, 2), m in 0u32..=3, unit in 1i64..30) {
        prop_assume!(unit % p as i64 != 0);
        let ctx = PrimeContext::new(p, 8).unwrap();
        let scene = PolynomialScene::new(2, vec![phi], r, None).unwrap();
        let freq = FrequencyPoint::scalar(scalar(&ctx, unit, m));
        let cube = ResidueCube::new(p, vec![0, 1], 1).unwrap();
        let whole = direct_ft(&ctx, &scene, &cube, &freq).unwrap();
        let parts = cube.children(p).iter().fold(CyclotomicValue::zero(p), |acc, c| {
            acc.add(&direct_ft(&ctx, &scene, c, &freq).unwrap())
        });
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn integrating_out_a_variable(p in prime(), phi in poly(1, 3), r in 0i64..=2, r_last in 0i64..=2, m in 0u32..=3, unit in 1i64..30, k in 1u32..=2) {
        // phi ignores y2: the level-k cubes of Z_p^2 sum to the transform in y1
        // times the weight integral of y2
        prop_assume!(unit % p as i64 != 0);
        let ctx = PrimeContext::new(p, 8).unwrap();
        let freq = FrequencyPoint::scalar(scalar(&ctx, unit, m));
        let small = PolynomialScene::new(1, vec![phi.clone()], vec![r], None).unwrap();
        let big = PolynomialScene::new(2, vec![phi.extend_vars(1)], vec![r, r_last], None).unwrap();
        let acc = ResidueCube::full(2).subcubes(p, k).iter().fold(CyclotomicValue::zero(p), |acc, c| {
            acc.add(&direct_ft(&ctx, &big, c, &freq).unwrap())
        });
        let w = weight_cube_integral(&ctx, &ResidueCube::full(1), &[r_last]).unwrap();
        let expect = direct_ft(&ctx, &small, &ResidueCube::full(1), &freq).unwrap().scale(&w);
        prop_assert_eq!(acc, expect);
    }

    #[test]
    fn linear_phase_constant_on_integer_cosets(p in prime(), m in 0u32..=4, unit in 1i64..50, shift in -20i64..20) {
        let ctx = PrimeContext::new(p, 8).unwrap();
        let scene = PolynomialScene::new(1, vec![MultiPoly::var(1, 0)], vec![0], None).unwrap();
        let xi = scalar(&ctx, unit, m);
        let moved = xi.add(&PAdicScalar::from_int(&ctx, shift));
        let a = direct_ft(&ctx, &scene, &ResidueCube::full(1), &FrequencyPoint::scalar(xi)).unwrap();
        let b = direct_ft(&ctx, &scene, &ResidueCube::full(1), &FrequencyPoint::scalar(moved)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn constant_phase_cube(p in prime(), c in -5i64..5, a in -50i64..50, b in -50i64..50, k in 0u32..3) {
        // phi is constant, so the value is psi(<xi1 + xi2, phi>) times the volume
        let ctx = PrimeContext::new(p, 8).unwrap();
        let scene = PolynomialScene::new(1, vec![MultiPoly::constant(1, int(c))], vec![0], None).unwrap();
        let x1 = scalar(&ctx, a, k);
        let x2 = scalar(&ctx, b, k);
        let cube = ResidueCube::new(p, vec![1], 1).unwrap();
        let v = direct_ft(&ctx, &scene, &cube, &FrequencyPoint::scalar(x1.add(&x2))).unwrap();
        let expect = x1.add(&x2).mul(&PAdicScalar::from_int(&ctx, c)).psi(&ctx).unwrap().scale(&cube.volume(p));
        prop_assert_eq!(v, expect);
    }

    #[test]
    fn homogeneity_identity(
        p in prop::sample::select(vec![2u64, 3, 5]),
        l in prop::collection::vec(0u32..=2, 1..=2),
        r in prop::collection::vec(0i64..=2, 2),
        a in prop::collection::vec((0u32..=1, 1i64..9), 2),
        m in 0u32..=2,
        unit in 1i64..9,
    ) {
        prop_assume!(unit % p as i64 != 0 && a.iter().all(|(_, w)| w % p as i64 != 0));
        let n = l.len();
        let ctx = PrimeContext::new(p, 10).unwrap();
        let scene = MonomialScene::new(l, r[..n].to_vec()).unwrap();
        let alpha: Vec<PAdicScalar> = a[..n].iter().map(|&(v, w)| PAdicScalar::from_int(&ctx, w * p.pow(v) as i64)).collect();
        let cube = ResidueCube::full(n);
        let xi = scalar(&ctx, unit, m);
        let lhs = scaled_eval(&ctx, &scene, &alpha, &cube, &xi).unwrap();
        let rhs = inverse_ft(&ctx, &scene, &cube, &xi).unwrap().scale(&homogeneity_factor(&scene, &alpha));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_matches_truncated_oracle(p in prop::sample::select(vec![2u64, 3]), l in 1u32..=2, r in -1i64..=1, m in 0u32..=2, unit in 1i64..9) {
        prop_assume!(unit % p as i64 != 0);
        let ctx = PrimeContext::new(p, 12).unwrap();
        let scene = MonomialScene::new(vec![l], vec![r]).unwrap();
        let xi = scalar(&ctx, unit, m);
        let cube = ResidueCube::full(1);
        let exact = inverse_ft(&ctx, &scene, &cube, &xi).unwrap();
        // every shell at valuation >= depth has conductor past the vanishing threshold
        let threshold = (l % p as u32 == 0) as i64 + 2 + (p == 2) as i64;
        let depth = ((threshold - m as i64).max(0) as u32).div_ceil(l);
        let oracle = truncated_stratum_oracle(&ctx, &scene, &cube, std::slice::from_ref(&xi), depth).unwrap();
        prop_assert_eq!(exact, oracle);
    }

    #[test]
    fn sequential_equals_parallel(p in prime(), phi in poly(2, 3), m in 0u32..=3, unit in 1i64..30) {
        prop_assume!(unit % p as i64 != 0);
        let seq = PrimeContext::new(p, 8).unwrap().with_exec(ExecMode::Sequential);
        let par = PrimeContext::new(p, 8).unwrap().with_exec(ExecMode::Parallel);
        let scene = PolynomialScene::new(2, vec![phi], vec![1, 0], None).unwrap();
        let freq = FrequencyPoint::scalar(scalar(&seq, unit, m));
        let cube = ResidueCube::full(2);
        prop_assert_eq!(direct_ft(&seq, &scene, &cube, &freq).unwrap(), direct_ft(&par, &scene, &cube, &freq).unwrap());
    }
}

fn random_descriptor() -> impl Strategy<Value = (AmbientSpec, Vec<Stratum>)> {
    (1usize..=3, 1usize..=2).prop_flat_map(|(q, d)| {
        let rule = prop_oneof![
            Just(WRule::FullFiber),
            Just(WRule::ZeroSection),
            prop::collection::vec(-2i64..=2, d).prop_map(move |v| {
                let v: Vec<Rational> = v.into_iter().map(int).collect();
                if v.iter().all(Zero::is_zero) {
                    WRule::ZeroSection
                } else {
                    WRule::from_subspace(Subspace::span(d, vec![v]))
                }
            }),
        ];
        let stratum = (prop::collection::btree_set(0..q, 0..=q), rule).prop_map(|(s, r)| Stratum { zero_set: s, rule: r });
        (Just(AmbientSpec::new(q, d, Block::W)), prop::collection::vec(stratum, 0..5))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn swap_is_an_involution((amb, strata) in random_descriptor()) {
        let desc = crit_of_map(amb, &strata).unwrap();
        prop_assert!(is_conic(&desc) && isotropic_check(&desc));
        prop_assert_eq!(symplectic_swap(&symplectic_swap(&desc)), desc);
    }

    #[test]
    fn membership_is_conic((amb, strata) in random_descriptor(), pt in prop::collection::vec(-2i64..=2, 10), cov in prop::collection::vec(-2i64..=2, 10), s in prop::sample::select(vec![-3i64, -1, 2, 5])) {
        let desc = crit_of_map(amb, &strata).unwrap();
        let n = amb.base_dim();
        let base: Vec<Rational> = pt[..n].iter().map(|&x| int(x)).collect();
        let c: Vec<Rational> = cov[..n].iter().map(|&x| int(x)).collect();
        let scaled: Vec<Rational> = c.iter().map(|x| x * int(s)).collect();
        prop_assert_eq!(membership(&desc, &base, &c).unwrap(), membership(&desc, &base, &scaled).unwrap());
        // homothety in the W-block of the base point
        let mut moved = base.clone();
        for x in moved[amb.q..].iter_mut() {
            *x *= ratio(s, 7);
        }
        prop_assert_eq!(membership(&desc, &base, &c).unwrap(), membership(&desc, &moved, &c).unwrap());
    }
}
