use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use weyl_tori::e6::{expectations, normalize_abelian};
use weyl_tori::exact_linalg::{kernel_basis_rational, IntMatrix, RatVector};
use weyl_tori::root_system::{GroupElement, RootSystem};
use weyl_tori::torus_fixed::{
    centre_points, gcd_minors_check, gcd_minors_sweep, ramification, verify_duality, FixedSet,
    FixedSetReport, LatticeSide, Ramification, TorusPoint,
};
use weyl_tori::weyl_group::{reflection_length, ClassPartition, ClassTable, Group};

struct Fixture {
    rs: RootSystem,
    group: Group,
    table: ClassTable,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let rs = RootSystem::e6();
        let group = Group::enumerate(&rs).unwrap();
        let p = ClassPartition::compute(&group);
        let table = ClassTable::e6(&rs, &group, p, &expectations()).unwrap();
        Fixture { rs, group, table }
    })
}

#[test]
fn component_groups_match_reference() {
    let f = fixture();
    for (c, row) in f.table.classes.iter().zip(expectations().classes) {
        for side in LatticeSide::BOTH {
            let fs = FixedSet::new(&f.rs, &c.representative, side);
            assert_eq!(fs.torus_dim(), row.torus_dim, "{} {side:?}", row.label);
            assert_eq!(fs.torus_dim() + reflection_length(&c.representative), 6);
            assert_eq!(
                fs.invariant_factors_u64(),
                normalize_abelian(&row.component_factors),
                "{} {side:?}",
                row.label
            );
            let reps = fs.component_reps();
            assert_eq!(reps.len(), fs.order());
            for (i, x) in reps.iter().enumerate() {
                assert_eq!(fs.component_index(x).unwrap(), i);
                for (j, y) in reps.iter().enumerate() {
                    assert_eq!(fs.same_component(x, y).unwrap(), i == j);
                }
            }
        }
    }
}

#[test]
fn elliptic_e6_fixed_set_is_the_centre() {
    let f = fixture();
    let centre = centre_points(&f.rs);
    for label in ["E6", "E6[a1]", "E6[a2]"] {
        let w = &f.table.by_label(label).unwrap().representative;
        let mut reps = FixedSet::new(&f.rs, w, LatticeSide::Root).component_reps();
        reps.sort();
        assert_eq!(reps, centre, "{label}");
    }
}

#[test]
fn duality_holds_for_every_class() {
    let f = fixture();
    for c in &f.table.classes {
        let r = verify_duality(
            &f.rs,
            &c.representative,
            &c.label,
            &c.centraliser_generators,
        )
        .unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.vacuous, c.representative.is_identity());
    }
    let a14 = f.table.by_label("A1^4").unwrap();
    let r = verify_duality(&f.rs, &a14.representative, "A1^4", &[]).unwrap();
    assert_eq!(r.mu, 2);
    assert_eq!(r.root_factors, vec![2, 2]);
}

#[test]
fn orbit_counts_agree_across_sides() {
    let f = fixture();
    for (c, row) in f.table.classes.iter().zip(expectations().classes) {
        let counts: Vec<usize> = LatticeSide::BOTH
            .iter()
            .map(|&s| {
                FixedSetReport::build(
                    &f.rs,
                    &c.representative,
                    &c.label,
                    s,
                    &c.centraliser_generators,
                )
                .orbit_count
            })
            .collect();
        assert_eq!(counts[0], counts[1], "{}", c.label);
        if let Some(n) = row.orbit_count {
            assert_eq!(counts[0] as u64, n, "{}", c.label);
        }
    }
}

#[test]
fn ramification_dichotomy() {
    let f = fixture();
    let component = [
        "A2^2", "A2^2xA1", "A5", "A2^3", "A5xA1", "E6", "E6[a1]", "E6[a2]",
    ];
    for (c, row) in f.table.classes.iter().zip(expectations().classes) {
        let r = ramification(
            &f.rs,
            &c.representative,
            &c.label,
            &c.centraliser_generators,
        );
        assert!(r.consistent, "{r:?}");
        let expect = if component.contains(&c.label.as_str()) {
            Ramification::Component
        } else {
            Ramification::Torus
        };
        assert_eq!(r.kind, expect, "{}", c.label);
        assert_eq!(row.component_ramified, expect == Ramification::Component);
    }
}

#[test]
fn gcd_minors_on_representatives_and_sample() {
    let f = fixture();
    for c in &f.table.classes {
        assert!(
            gcd_minors_check(&f.rs, &c.representative).holds(),
            "{}",
            c.label
        );
    }
    let sweep = gcd_minors_sweep(&f.rs, &f.group, 1000, 7);
    assert_eq!(sweep.checked, 1000);
    assert!(sweep.failures.is_empty());
}

#[test]
fn mu_projection_for_every_representative() {
    let f = fixture();
    for c in f
        .table
        .classes
        .iter()
        .filter(|c| !c.representative.is_identity())
    {
        for side in LatticeSide::BOTH {
            assert!(
                weyl_tori::torus_fixed::mu_projection_holds(&f.rs, &c.representative, side)
                    .unwrap()
            );
        }
    }
}

fn kernel_point(w: &GroupElement, coeffs: &[(i64, i64)]) -> TorusPoint {
    let b = &IntMatrix::identity(6) - &w.matrix();
    let kernel = kernel_basis_rational(&b);
    let mut v = RatVector::zeros(6);
    for (k, &(p, q)) in kernel.iter().zip(coeffs) {
        v = &v + &k.scale(&BigRational::new(BigInt::from(p), BigInt::from(q)));
    }
    TorusPoint::new(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identity_component_contains_kernel_points(
        idx in 0usize..51840,
        coeffs in prop::collection::vec((-20i64..20, 1i64..13), 6),
    ) {
        let f = fixture();
        let w = f.group.element(idx);
        for side in LatticeSide::BOTH {
            let a = side.action_of(&f.rs, w);
            let fs = FixedSet::new(&f.rs, w, side);
            let p = kernel_point(&a, &coeffs);
            prop_assert!(fs.same_component(&TorusPoint::origin(6), &p).unwrap());
            prop_assert_eq!(fs.component_index(&p).unwrap(), 0);
        }
    }

    #[test]
    fn components_are_permuted_by_the_centraliser(idx in 0usize..25, g in 0usize..51840) {
        let f = fixture();
        let c = &f.table.classes[idx];
        let g = f.group.element(c.centraliser.indices()[g % c.centraliser_order()]);
        for side in LatticeSide::BOTH {
            let fs = FixedSet::new(&f.rs, &c.representative, side);
            let mut perm = fs.permutation(&side.action_of(&f.rs, g));
            perm.sort_unstable();
            prop_assert_eq!(perm, (0..fs.order()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn torsion_agrees_across_sides(idx in 0usize..51840) {
        let f = fixture();
        let check = gcd_minors_check(&f.rs, f.group.element(idx));
        prop_assert!(check.holds());
        prop_assert!(check.root_torsion > 0);
    }
}
