use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;

use fflat::autgroup::{
    elliptic_subgroup_check, isometry_group_order, perm_report, perm_stabilizer, IsometryReport, PermutationGroup,
    ReportGenerators, DEFAULT_MAX_ISOMETRY_RANK, DEFAULT_MAX_PERM_DIM,
};
use fflat::builders::{barnes_lattice, build_ff_lattice, build_rational, root_lattice_a, scale};
use fflat::curves::{HyperellipticModel, Selector};
use fflat::io::{lattice_to_json, places_to_json, to_canonical_string};
use fflat::latcore::lattice::{combine, dot, permute};
use fflat::latcore::{IntegerLattice, DEFAULT_ENUM_CAP};

fn full(lat: &IntegerLattice) -> IsometryReport {
    isometry_group_order(lat, DEFAULT_MAX_ISOMETRY_RANK, DEFAULT_ENUM_CAP).unwrap()
}

fn small_lattice() -> impl Strategy<Value = IntegerLattice> {
    (1usize..=4, 0usize..=1)
        .prop_flat_map(|(rank, extra)| {
            let dim = rank + extra;
            proptest::collection::vec(proptest::collection::vec(-2i64..=2, dim), rank)
        })
        .prop_filter_map("dependent rows", |rows| IntegerLattice::new(rows).ok())
}

fn named_lattice() -> impl Strategy<Value = IntegerLattice> {
    prop_oneof![
        (1usize..=6).prop_map(|n| root_lattice_a(n).unwrap()),
        (3usize..=7).prop_map(|n| barnes_lattice(n).unwrap()),
    ]
}

fn constructed_lattice() -> impl Strategy<Value = IntegerLattice> {
    prop_oneof![
        (2usize..=6, 1i64..=2).prop_map(|(n, c)| scale(&root_lattice_a(n).unwrap(), c).unwrap()),
        (3usize..=7).prop_map(|n| barnes_lattice(n).unwrap()),
    ]
}

fn lattice() -> impl Strategy<Value = IntegerLattice> {
    prop_oneof![small_lattice(), named_lattice()]
}

fn shuffled(dim: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..dim).collect::<Vec<_>>()).prop_shuffle()
}

/// Every generator is an isometry of the lattice onto itself.
fn generators_preserve(lat: &IntegerLattice, report: &IsometryReport) {
    match &report.generators {
        ReportGenerators::Permutations(images) => {
            for sigma in images {
                for row in lat.basis() {
                    assert!(lat.contains(&permute(row, sigma)).unwrap());
                }
            }
        }
        ReportGenerators::Matrices { basis, images } => {
            for m in images {
                let mapped: Vec<Vec<i64>> = m.iter().map(|c| combine(c, basis)).collect();
                for i in 0..basis.len() {
                    assert!(lat.contains(&mapped[i]).unwrap());
                    for j in 0..basis.len() {
                        assert_eq!(dot(&mapped[i], &mapped[j]), dot(&basis[i], &basis[j]));
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // on the constructed lattices minimal vectors have mixed signs, so -Id
    // is never a coordinate permutation (unlike on <(1, -1)>)
    #[test]
    fn twice_perm_order_divides_isometry_order(lat in constructed_lattice()) {
        let perm = perm_report(&perm_stabilizer(&lat, DEFAULT_MAX_PERM_DIM, DEFAULT_ENUM_CAP).unwrap());
        let iso = full(&lat);
        prop_assert!((&iso.order % (perm.order * 2u32)).is_zero());
        prop_assert!(iso.includes_minus_id);
    }

    #[test]
    fn isometry_order_invariant_under_scaling(lat in lattice(), c in 2i64..=3) {
        prop_assert_eq!(full(&lat).order, full(&scale(&lat, c).unwrap()).order);
    }

    #[test]
    fn isometry_order_invariant_under_relabeling(
        (lat, sigma) in lattice().prop_flat_map(|l| { let d = l.ambient_dim(); (Just(l), shuffled(d)) })
    ) {
        let moved = lat.permute_coordinates(&sigma).unwrap();
        prop_assert_eq!(full(&lat).order, full(&moved).order);
    }

    #[test]
    fn isometry_generators_map_lattice_to_itself(lat in lattice()) {
        let report = full(&lat);
        generators_preserve(&lat, &report);
        let product: BigUint = report.factored.iter().map(|&(p, e)| BigUint::from(p).pow(e)).product();
        prop_assert_eq!(product, report.order);
    }

    #[test]
    fn perm_generators_map_lattice_to_itself(lat in lattice()) {
        let report = perm_report(&perm_stabilizer(&lat, DEFAULT_MAX_PERM_DIM, DEFAULT_ENUM_CAP).unwrap());
        generators_preserve(&lat, &report);
    }
}

fn orbit_of_zero(g: &PermutationGroup) -> usize {
    let mut seen = vec![false; g.degree()];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for s in g.generators() {
            let y = s.apply(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.iter().filter(|&&b| b).count()
}

/// Nonsingular cubics `x^3 + a x + b` over small primes.
fn elliptic_model() -> impl Strategy<Value = HyperellipticModel> {
    prop_oneof![Just(5u64), Just(7), Just(11), Just(13)]
        .prop_flat_map(|p| (Just(p), 0..p, 0..p))
        .prop_filter_map("singular cubic", |(p, a, b)| HyperellipticModel::parse(p, &format!("{b},{a},0,1")).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn elliptic_point_stabilizer_is_group_automorphisms(model in elliptic_model()) {
        let bundle = build_ff_lattice(&model, Selector::EllipticAllRational).unwrap();
        let report = elliptic_subgroup_check(&bundle).unwrap();
        let m = bundle.lattice.ambient_dim();
        let stab = PermutationGroup::new(m, report.automorphisms.clone()).unwrap();
        prop_assert!(report.automorphisms.iter().all(|g| g.apply(0) == 0));
        prop_assert_eq!(stab.order(), BigUint::from(report.aut_order));
        let mut all = report.translations.clone();
        all.extend(report.automorphisms.iter().cloned());
        let whole = PermutationGroup::new(m, all).unwrap();
        prop_assert_eq!(whole.order(), BigUint::from(report.group_order * report.aut_order));

        // the full stabilizer is no larger, and fixing coordinate 0 leaves Aut(G)
        let perm = perm_stabilizer(&bundle.lattice, 32, DEFAULT_ENUM_CAP).unwrap();
        prop_assert_eq!(perm.order(), whole.order());
        let orbit = orbit_of_zero(&perm);
        prop_assert_eq!(perm.order() / BigUint::from(orbit), BigUint::from(report.aut_order));
    }

    #[test]
    fn builds_are_deterministic(model in elliptic_model(), n in 1usize..=8) {
        let a = build_ff_lattice(&model, Selector::EllipticAllRational).unwrap();
        let b = build_ff_lattice(&model, Selector::EllipticAllRational).unwrap();
        prop_assert_eq!(to_canonical_string(&lattice_to_json(&a.lattice)), to_canonical_string(&lattice_to_json(&b.lattice)));
        prop_assert_eq!(to_canonical_string(&places_to_json(&a.places)), to_canonical_string(&places_to_json(&b.places)));
        let r1 = build_rational(n).unwrap();
        let r2 = build_rational(n).unwrap();
        prop_assert_eq!(r1.lattice.basis(), r2.lattice.basis());
    }
}
