use proptest::prelude::*;

use spectracone_core::cones::{Cone, HRep};
use spectracone_core::perron::{is_rhc, PerronContext};
use spectracone_core::ratmath::{frac, Rational, RationalMatrix, SpectralVector};
use spectracone_core::transforms::{apply, predicted_effect, Transform};

fn entry() -> impl Strategy<Value = Rational> {
    (-3i64..=3, 1i64..=3).prop_map(|(p, q)| frac(p, q))
}

fn invertible(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(prop::collection::vec(entry(), n), n)
        .prop_map(|rows| RationalMatrix::from_rows(rows).unwrap())
        .prop_filter("invertible", |m| m.invert().is_ok())
}

fn square() -> impl Strategy<Value = RationalMatrix> {
    prop_oneof![invertible(2), invertible(3)]
}

fn nonzero_diag(n: usize) -> impl Strategy<Value = SpectralVector> {
    prop::collection::vec(entry().prop_filter("nonzero", |x| x != &frac(0, 1)), n).prop_map(SpectralVector::new)
}

fn positive_diag(n: usize) -> impl Strategy<Value = SpectralVector> {
    prop::collection::vec((1i64..=3, 1i64..=3).prop_map(|(p, q)| frac(p, q)), n).prop_map(SpectralVector::new)
}

fn transform_for(n: usize) -> impl Strategy<Value = Transform> {
    let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
    prop_oneof![
        perm.clone().prop_map(Transform::PermuteRows),
        positive_diag(n).prop_map(Transform::ScaleRowsPositive),
        perm.prop_map(Transform::PermuteCols),
        nonzero_diag(n).prop_map(Transform::ScaleColsInvertible),
    ]
}

fn with_transform() -> impl Strategy<Value = (RationalMatrix, Transform)> {
    square().prop_flat_map(|s| {
        let n = s.rows();
        (Just(s), transform_for(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rhc_matches_row_cone_containment(s in square()) {
        let ctx = PerronContext::new(s.clone()).unwrap();
        let verdict = is_rhc(&s).unwrap();
        prop_assert_eq!(verdict.holds, ctx.row_cone().is_subset(ctx.spectracone()).unwrap());
        if let Some(f) = verdict.failure {
            prop_assert!(f.verify(&s));
        }
        let report = ctx.classify().unwrap();
        for w in &report.witnesses {
            prop_assert!(w.holds(&ctx));
        }
    }

    #[test]
    fn spectracone_contains_ones_and_is_pointed(s in square()) {
        let ctx = PerronContext::new(s).unwrap();
        let n = ctx.n();
        prop_assert!(ctx.spectracone().contains(&SpectralVector::ones(n)).unwrap());
        for ray in ctx.spectracone().extremal_rays().rays() {
            prop_assert_eq!(ctx.spectracone().tight_rank(ray).unwrap(), n - 1);
        }
    }

    #[test]
    fn predicted_cones_match_recomputation((s, t) in with_transform()) {
        let ctx = PerronContext::new(s.clone()).unwrap();
        let (c, rc) = predicted_effect(&t, &ctx).unwrap();
        let fresh = PerronContext::new(apply(&t, &s).unwrap()).unwrap();
        prop_assert!(c.equals_as_sets(fresh.spectracone()).unwrap(), "{}", t);
        prop_assert!(rc.equals_as_sets(fresh.row_cone()).unwrap(), "{}", t);
    }

    #[test]
    fn column_scalings_compose(s in invertible(3), d in nonzero_diag(3), e in nonzero_diag(3)) {
        let once = apply(&Transform::ScaleColsInvertible(d.hadamard(&e).unwrap()), &s).unwrap();
        let twice = apply(&Transform::ScaleColsInvertible(e), &apply(&Transform::ScaleColsInvertible(d), &s).unwrap()).unwrap();
        let a = PerronContext::new(once).unwrap();
        let b = PerronContext::new(twice).unwrap();
        prop_assert!(a.row_cone().equals_as_sets(b.row_cone()).unwrap());
        prop_assert!(a.spectracone().equals_as_sets(b.spectracone()).unwrap());
    }

    #[test]
    fn row_operations_keep_the_classification(s in invertible(3), perm in Just(vec![0usize, 1, 2]).prop_shuffle(), d in positive_diag(3)) {
        let base = PerronContext::new(s.clone()).unwrap().classify().unwrap();
        for t in [Transform::PermuteRows(perm.clone()), Transform::ScaleRowsPositive(d.clone())] {
            let other = PerronContext::new(apply(&t, &s).unwrap()).unwrap().classify().unwrap();
            prop_assert_eq!(base.relation.as_str(), other.relation.as_str());
            prop_assert_eq!(base.is_rhc, other.is_rhc);
        }
    }

    #[test]
    fn double_description_rays_generate_the_cone(
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3..8),
        weights in prop::collection::vec(0i64..5, 8),
    ) {
        let rows: Vec<SpectralVector> = rows.iter().map(|r| SpectralVector::from_ints(r)).collect();
        let Ok(cone) = Cone::from_halfspaces(HRep::new(3, rows).unwrap()) else { return Ok(()) };
        let rays = cone.extremal_rays().rays();
        for ray in rays {
            prop_assert!(cone.contains(ray).unwrap());
            prop_assert_eq!(cone.tight_rank(ray).unwrap(), 2);
        }
        let mut point = SpectralVector::zeros(3);
        for (ray, w) in rays.iter().zip(&weights) {
            point = SpectralVector::new(point.iter().zip(ray.iter()).map(|(a, b)| a + b * frac(*w, 1)).collect());
        }
        prop_assert!(cone.contains(&point).unwrap());
    }
}
