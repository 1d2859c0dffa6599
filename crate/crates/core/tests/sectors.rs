use std::sync::OnceLock;

use num_rational::BigRational;
use weyl_tori::e6::expectations;
use weyl_tori::root_system::{GroupElement, RootSystem};
use weyl_tori::sectors_ktheory::{
    compare_forms, extended_quotient_report, ktheory, sector_euler_by_determinant,
    trivial_average_matches, SectorReport,
};
use weyl_tori::torus_fixed::{FixedSetReport, LatticeSide};
use weyl_tori::weyl_group::{ClassPartition, ClassTable, Group};

struct Fixture {
    rs: RootSystem,
    group: Group,
    table: ClassTable,
    root: Vec<SectorReport>,
    weight: Vec<SectorReport>,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let rs = RootSystem::e6();
        let group = Group::enumerate(&rs).unwrap();
        let p = ClassPartition::compute(&group);
        let table = ClassTable::e6(&rs, &group, p, &expectations()).unwrap();
        let root = extended_quotient_report(&rs, &group, &table, LatticeSide::Root).unwrap();
        let weight = extended_quotient_report(&rs, &group, &table, LatticeSide::Weight).unwrap();
        Fixture {
            rs,
            group,
            table,
            root,
            weight,
        }
    })
}

#[test]
fn betti_numbers_match_quotient_types() {
    let f = fixture();
    for ((r, w), row) in f.root.iter().zip(&f.weight).zip(expectations().classes) {
        assert_eq!(r.betti_trimmed(), row.betti, "{}", row.label);
        assert_eq!(w.betti, r.betti, "{}", row.label);
        assert!(r.betti.iter().skip(2).all(|&b| b == 0));
    }
    assert_eq!(
        f.root
            .iter()
            .filter(|s| s.betti.get(1).copied().unwrap_or(0) > 0)
            .count(),
        10
    );
}

#[test]
fn ktheory_totals() {
    let f = fixture();
    for sectors in [&f.root, &f.weight] {
        let k = ktheory(sectors);
        assert_eq!((k.k0, k.k1), expectations().ktheory);
        assert!(k.k0 >= 25);
    }
}

#[test]
fn forms_agree() {
    let f = fixture();
    let reports = |side| -> Vec<FixedSetReport> {
        f.table
            .classes
            .iter()
            .map(|c| {
                FixedSetReport::build(
                    &f.rs,
                    &c.representative,
                    &c.label,
                    side,
                    &c.centraliser_generators,
                )
            })
            .collect()
    };
    let cmp = compare_forms(
        &reports(LatticeSide::Root),
        &reports(LatticeSide::Weight),
        &f.root,
        &f.weight,
    );
    assert!(cmp.all_equal);
    assert_eq!(cmp.status, "consistent at cohomology level");
}

#[test]
fn elliptic_sectors_count_orbits() {
    let f = fixture();
    for (c, s) in f.table.classes.iter().zip(&f.root) {
        if s.torus_dim == 0 {
            let fr = FixedSetReport::build(
                &f.rs,
                &c.representative,
                &c.label,
                LatticeSide::Root,
                &c.centraliser_generators,
            );
            assert_eq!(s.betti, vec![fr.orbit_count as u64], "{}", c.label);
        }
    }
}

#[test]
fn euler_characteristic_two_ways() {
    let f = fixture();
    for (c, s) in f.table.classes.iter().zip(&f.root) {
        if c.centraliser_order() > 2000 {
            continue;
        }
        let elements: Vec<&GroupElement> = c.centraliser.elements(&f.group).collect();
        let chi =
            sector_euler_by_determinant(&f.rs, &c.representative, elements, LatticeSide::Root);
        assert_eq!(
            chi,
            BigRational::from_integer(s.euler.into()),
            "{}",
            c.label
        );
    }
}

#[test]
fn trivial_group_average_gives_fixed_set_cohomology() {
    let f = fixture();
    for c in &f.table.classes {
        for side in LatticeSide::BOTH {
            assert!(
                trivial_average_matches(&f.rs, &c.representative, side),
                "{}",
                c.label
            );
        }
    }
}
