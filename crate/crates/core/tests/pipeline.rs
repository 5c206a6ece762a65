use hyperjac_core::sampling::{random_bpf_subspace, random_smooth_hypersurface, rng_from_seed};
use hyperjac_core::yukawa::random_chain_instance;
use hyperjac_core::*;
use proptest::prelude::*;

fn ring(n: usize) -> PolyRing {
    PolyRing::new(n, PrimeField::new(65521).unwrap()).unwrap()
}

#[test]
fn parsed_form_to_hodge_numbers() {
    let r = ring(4);
    let f = Polynomial::parse("x0^4 + x1^4 + x2^4 + x3^4 - 3*x0*x1*x2*x3", 4, r.field()).unwrap();
    let x = Hypersurface::new(r, f).unwrap();
    assert!(smoothness_certificate(&x).unwrap().is_smooth());
    let h = hodge_numbers_prim(&x).unwrap();
    assert_eq!(h.numbers(), [1, 19, 1]);
    assert_eq!(hodge_level(&h).unwrap(), 2);
}

#[test]
fn hodge_entries_are_hilbert_values() {
    for (n, big_n) in [(3, 4), (4, 5), (5, 3)] {
        let x = Hypersurface::fermat(ring(n), big_n).unwrap();
        let jr = JacobianRing::new(&x).unwrap();
        let h = hodge_from_ring(&jr).unwrap();
        let d = n - 2;
        let total: usize = (0..=d)
            .map(|q| (big_n * (q + 1)) as i64 - d as i64 - 2)
            .map(|k| if k < 0 { 0 } else { hilbert_r(&x, k as usize).unwrap() })
            .sum();
        assert_eq!(h.numbers().iter().sum::<usize>(), total);
    }
}

#[test]
fn reports_round_trip_through_json() {
    let w = random_bpf_subspace(ring(3), 2, 1, &mut rng_from_seed(1), 10).unwrap().0;
    let rep = middle_exactness(ModuleKind::Polynomial, &w, 2, 1).unwrap();
    let back: KoszulReport = serde_json::from_str(&serde_json::to_string(&rep).unwrap()).unwrap();
    assert_eq!(back, rep);

    let c = sweep_criterion(CriterionInput::new(4, 6, 2, 3).unwrap());
    let back: CriterionReport = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
    assert_eq!(back, c);

    let (_, jr, k) = random_chain_instance(ring(4), &mut rng_from_seed(2), 20).unwrap();
    let y = yukawa_chain(&jr, &k).unwrap();
    let back: YukawaChainReport = serde_json::from_str(&serde_json::to_string(&y).unwrap()).unwrap();
    assert_eq!(back, y);
}

#[test]
fn full_systems_are_exact_from_a_equals_s() {
    for (n, big_n) in [(2, 3), (3, 2), (4, 2)] {
        let w = GradedSubspace::full(ring(n), big_n).unwrap();
        for s in 0..=2 {
            for a in s as i64..=4 {
                let rep = middle_exactness(ModuleKind::Polynomial, &w, a, s).unwrap();
                assert!(rep.exact, "n={n} N={big_n} a={a} s={s}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_jacobian_rings_are_gorenstein(seed in any::<u64>(), shape in 0usize..3) {
        let (n, big_n) = [(3, 3), (3, 4), (4, 3)][shape];
        let (x, jr) = random_smooth_hypersurface(ring(n), big_n, &mut rng_from_seed(seed), 50).unwrap();
        let sigma = x.socle_degree();
        prop_assert_eq!(jr.hilbert(sigma).unwrap(), 1);
        prop_assert_eq!(jr.hilbert(sigma + 1).unwrap(), 0);
        for k in 0..=sigma {
            prop_assert_eq!(jr.hilbert(k).unwrap(), jr.hilbert(sigma - k).unwrap());
        }
        let h = hodge_from_ring(&jr).unwrap();
        let level = hodge_level(&h).unwrap();
        prop_assert!(level >= 0 && level <= h.weight as i64);
    }

    #[test]
    fn koszul_defect_is_nonnegative(seed in any::<u64>(), a in -1i64..4, s in 0usize..3, codim in 0usize..3) {
        let w = random_bpf_subspace(ring(3), 2, codim, &mut rng_from_seed(seed), 20).unwrap().0;
        let rep = middle_exactness(ModuleKind::Polynomial, &w, a, s).unwrap();
        let direct = hyperjac_core::koszul::middle_exactness_direct(ModuleKind::Polynomial, &w, a, s).unwrap();
        prop_assert!(rep.rank_in <= rep.kernel_out);
        prop_assert_eq!(rep.defect, rep.kernel_out - rep.rank_in);
        prop_assert_eq!((rep.rank_in, rep.kernel_out), (direct.rank_in, direct.kernel_out));
        if a >= (s + codim) as i64 {
            prop_assert!(rep.exact);
        }
    }
}
