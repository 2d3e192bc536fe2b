use fse_core::counting::{self, DavisMethod};
use fse_core::fse::{
    are_isomorphic, canonical_form, classify, from_pointed, from_quadruple, power, power_iterated, to_pointed,
    to_quadruple, verify_braid, verify_fs, Quadruple, Solution,
};
use fse_core::funcgraph::{are_conjugate, aut_order, canonical_code, is_connected};
use fse_core::{EndoMap, PairMap, Perm, RectFactorization};
use proptest::prelude::*;

fn endo(n: usize) -> impl Strategy<Value = EndoMap> {
    proptest::collection::vec(0..n, n).prop_map(|v| EndoMap::new(v).unwrap())
}

fn sized_endo(max: usize) -> impl Strategy<Value = EndoMap> {
    (1..=max).prop_flat_map(endo)
}

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::new(v).unwrap())
}

/// Random solution from a random quadruple on up to `max` points.
fn solution(max: usize) -> impl Strategy<Value = Solution> {
    (1..=max)
        .prop_flat_map(|n| {
            (
                Just(n),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
                1..=n,
                proptest::collection::vec(any::<prop::sample::Index>(), n),
                any::<prop::sample::Index>(),
                proptest::collection::vec(any::<prop::sample::Index>(), n),
            )
        })
        .prop_map(|(n, pts, k, hix, aix, tix)| {
            let image = &pts[..k];
            let h: Vec<usize> = (0..n).map(|x| if image.contains(&x) { x } else { image[hix[x].index(k)] }).collect();
            let divs = counting::divisors(k);
            let a = divs[aix.index(divs.len())];
            let b = k / a;
            let rect = RectFactorization::from_grid(n, a, b, image.to_vec()).unwrap();
            let theta = EndoMap::new((0..b).map(|j| tix[j].index(b)).collect()).unwrap();
            from_quadruple(&Quadruple::new(EndoMap::new(h).unwrap(), rect, theta).unwrap()).unwrap()
        })
}

fn with_perm<T: std::fmt::Debug + Clone>(
    s: impl Strategy<Value = T>,
    n: fn(&T) -> usize,
) -> impl Strategy<Value = (T, Perm)> {
    s.prop_flat_map(move |x| {
        let k = n(&x);
        (Just(x), perm(k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn conjugation_preserves_code_and_order((f, sigma) in with_perm(sized_endo(8), |f: &EndoMap| f.len())) {
        let g = f.conjugate_by(&sigma).unwrap();
        prop_assert_eq!(canonical_code(&f), canonical_code(&g));
        prop_assert_eq!(aut_order(&f).0, aut_order(&g).0);
        prop_assert_eq!(is_connected(&f), is_connected(&g));
        let found = are_conjugate(&f, &g).unwrap();
        prop_assert_eq!(f.conjugate_by(&found).unwrap(), g);
    }

    #[test]
    fn generated_solutions_are_braided(s in solution(7)) {
        let r = verify_fs(s.pm());
        prop_assert!(r.valid && r.path_agreement);
        prop_assert!(verify_braid(s.pm()));
    }

    #[test]
    fn relabeling_preserves_canonical_form_and_flags((s, sigma) in with_perm(solution(6), |s: &Solution| s.n())) {
        let t = Solution::new(s.pm().relabel(&sigma).unwrap()).unwrap();
        prop_assert_eq!(canonical_form(&s), canonical_form(&t));
        prop_assert_eq!(classify(&s).unwrap(), classify(&t).unwrap());
        let iso = are_isomorphic(&s, &t).unwrap();
        prop_assert_eq!(s.pm().relabel(&iso).unwrap(), t.pm().clone());
    }

    #[test]
    fn round_trips(s in solution(8)) {
        let (t, theta) = to_pointed(&s);
        prop_assert_eq!(from_pointed(&t, &theta).unwrap(), s.clone());
        prop_assert_eq!(from_quadruple(&to_quadruple(&s)).unwrap(), s);
    }

    #[test]
    fn closed_form_powers(s in solution(8), k in 1u64..40) {
        prop_assert_eq!(power(&s, k), power_iterated(s.pm(), k));
    }

    #[test]
    fn fs_routes_agree_on_random_pair_maps(l in proptest::collection::vec(0usize..3, 9), r in proptest::collection::vec(0usize..3, 9)) {
        let pm = PairMap::new(3, l, r).unwrap();
        prop_assert!(verify_fs(&pm).path_agreement);
    }
}

#[test]
fn euler_transform_of_connected_classes_gives_all_classes() {
    let c = counting::harary_c(20);
    let d = counting::davis_d(20, DavisMethod::BruijnSum);
    let back = counting::euler_transform(&c.coeffs);
    assert_eq!(back[1..], d.coeffs[1..]);
}
