use proptest::prelude::*;

use l1cocycle::brooks::{eta, Brooks, BrooksSpec};
use l1cocycle::cocycle::QuasiCocycle;
use l1cocycle::derivation::DerivationAction;
use l1cocycle::group::{geodesic, median, GroupWord};
use l1cocycle::proper::{theta_real, Theta};
use l1cocycle::quasitree::{w_sets_qt, AxisFamily, WConfig};
use l1cocycle::sparse::{coboundary_beta, iso_pair, IsoDirection};
use l1cocycle::{Rational, Scalar, SparseVec};

fn word(max: usize) -> impl Strategy<Value = GroupWord> {
    proptest::string::string_regex(&format!("[aAbB]{{0,{max}}}")).unwrap().prop_map(|s| s.parse::<GroupWord>().unwrap())
}

fn vector(max_len: usize) -> impl Strategy<Value = SparseVec<Rational>> {
    proptest::collection::vec((word(max_len), -6i64..=6, 1i64..=4), 0..5)
        .prop_map(|terms| SparseVec::from_terms(terms.into_iter().map(|(g, p, q)| (g, Rational::from_ratio(p, q)))))
}

fn zero_sum(max_len: usize) -> impl Strategy<Value = SparseVec<Rational>> {
    vector(max_len).prop_map(|v| {
        let s = v.sum();
        v.sub(&SparseVec::delta(GroupWord::identity()).scale(&s))
    })
}

fn standard() -> BrooksSpec<Rational> {
    BrooksSpec::standard()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn group_axioms(g in word(10), h in word(10), k in word(10)) {
        prop_assert_eq!(g.mul(&h).mul(&k), g.mul(&h.mul(&k)));
        prop_assert!(g.mul(&g.inverse()).is_identity());
        prop_assert!(g.mul(&h).len() <= g.len() + h.len());
        prop_assert_eq!(g.mul(&h).inverse(), h.inverse().mul(&g.inverse()));
        prop_assert_eq!(g.distance(&h), g.inverse().mul(&h).len());
    }

    #[test]
    fn geodesics_and_medians(g in word(8), h in word(8), k in word(8)) {
        let seg = geodesic(&g, &h);
        prop_assert_eq!(seg.length(), g.distance(&h));
        prop_assert_eq!(seg.vertices().first(), Some(&g));
        prop_assert_eq!(seg.vertices().last(), Some(&h));
        let m = median(&g, &h, &k);
        prop_assert_eq!(m.distance(&g) + m.distance(&h), g.distance(&h));
        prop_assert_eq!(m.distance(&h) + m.distance(&k), h.distance(&k));
    }

    #[test]
    fn translation_is_an_isometric_action(v in vector(4), g in word(6), h in word(6)) {
        prop_assert_eq!(v.translate(&g).norm(), v.norm());
        prop_assert_eq!(v.translate(&g.mul(&h)), v.translate(&h).translate(&g));
        prop_assert_eq!(v.translate(&g).sum(), v.sum());
    }

    #[test]
    fn sparse_algebra(u in vector(4), v in vector(4)) {
        prop_assert!(u.add(&v).norm() <= u.norm().add(&v.norm()));
        prop_assert!(u.sub(&u).is_empty());
        prop_assert_eq!(u.add(&v), v.add(&u));
        prop_assert_eq!(SparseVec::<Rational>::deserialize(&u.serialize()).unwrap(), u);
    }

    #[test]
    fn isomorphism_round_trips(v in zero_sum(4)) {
        let x0 = GroupWord::identity();
        let f = iso_pair(IsoDirection::Forward, &v, &x0).unwrap();
        prop_assert!(f.norm() <= v.norm());
        let back = iso_pair(IsoDirection::Inverse, &f, &x0).unwrap();
        prop_assert!(back.norm() <= f.norm().mul(&Rational::from_i64(2)));
        prop_assert_eq!(back, v);
    }

    #[test]
    fn coboundary_identity(g in word(8), h in word(8)) {
        let x0 = GroupWord::identity();
        let lhs: SparseVec<Rational> = coboundary_beta(&g.mul(&h), &x0);
        let rhs = coboundary_beta(&g, &x0).add(&coboundary_beta::<Rational>(&h, &x0).translate(&g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn brooks_antisymmetry_and_defect(g in word(12), h in word(12)) {
        let spec = standard();
        let gi = g.inverse();
        prop_assert_eq!(eta(&spec, &gi), eta(&spec, &g).translate(&gi).neg());
        let alpha = Brooks::new(spec.clone());
        let d = alpha.eval(&g.mul(&h)).sub(&alpha.eval(&g)).sub(&alpha.eval(&h).translate(&g));
        prop_assert!(d.norm() <= Rational::from_i64(2));
        prop_assert!(eta(&spec, &g).is_zero_sum());
    }

    #[test]
    fn exact_and_float_agree(g in word(12)) {
        let exact = eta(&standard(), &g);
        let float = eta(&BrooksSpec::<f64>::standard(), &g);
        prop_assert!((exact.norm().to_f64() - float.norm()).abs() <= 1e-12);
    }

    #[test]
    fn zeta_is_a_cocycle(g in word(6), h in word(6), x in zero_sum(3)) {
        let action = DerivationAction::new(Brooks::new(standard()));
        let (ag, bg) = action.zeta(&g);
        let (ah, bh) = action.zeta(&h);
        let (pa, pb) = action.linear_apply(&g, &ah, &bh).unwrap();
        let (a, b) = action.zeta(&g.mul(&h));
        prop_assert_eq!(a, ag.add(&pa));
        prop_assert_eq!(b, bg.add(&pb));
        let lhs = action.derivation_apply(&g.mul(&h), &x).unwrap();
        let rhs = action
            .derivation_apply(&g, &x.translate(&h))
            .unwrap()
            .add(&action.derivation_apply(&h, &x).unwrap().translate(&g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_monotone_and_subadditive(k in 1u32..=3, s in 0.0f64..1e5, t in 0.0f64..1e5) {
        let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
        prop_assert!(theta_real(k, lo) <= theta_real(k, hi));
        let sum = theta_real(k, lo) + theta_real(k, hi);
        let whole = theta_real(k, (lo.ceil() + hi.ceil()).max(0.0));
        prop_assert!(whole <= sum * (1.0 + 1e-12));
        let j = hi as u64 + 1;
        prop_assert!(Theta(k, j) > 0.0 && Theta(k, j) <= 1.0);
        prop_assert!(Theta(k, j + 1) <= Theta(k, j));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn w_sets_disjoint_and_bounded(g in word(9), base in prop::sample::select(vec!["a", "b", "ab", "aB", "abb"])) {
        let family = AxisFamily::new(base.parse().unwrap()).unwrap();
        let config = WConfig::new(&family, 1, 2, 2).unwrap();
        let ws = w_sets_qt(&family, &config, &g).unwrap();
        prop_assert!(ws.is_disjoint());
        prop_assert!(ws.plus.windows(2).all(|p| p[0] < p[1]));
        let inv = w_sets_qt(&family, &config, &g.inverse()).unwrap();
        prop_assert_eq!(inv.d_ck, ws.d_ck);
    }
}
