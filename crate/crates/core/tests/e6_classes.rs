use weyl_tori::e6::expectations;
use weyl_tori::root_system::RootSystem;
use weyl_tori::weyl_group::{
    centraliser, power_class_map, subgroup_generated, ClassPartition, ClassTable, Group,
};

fn table() -> (RootSystem, Group, ClassTable) {
    let rs = RootSystem::e6();
    let g = Group::enumerate(&rs).unwrap();
    let p = ClassPartition::compute(&g);
    let t = ClassTable::e6(&rs, &g, p, &expectations()).unwrap();
    (rs, g, t)
}

#[test]
fn classes_match_reference_rows() {
    let (_, g, t) = table();
    let exp = expectations();
    assert_eq!(g.order(), 51840);
    assert_eq!(t.len(), 25);
    let mut total = 0;
    for (c, row) in t.classes.iter().zip(&exp.classes) {
        assert_eq!(c.label, row.label);
        assert_eq!(c.eigenvalue_orders, row.eigenvalue_orders, "{}", row.label);
        assert_eq!(
            c.centraliser_order() as u64,
            row.centraliser_order,
            "{}",
            row.label
        );
        assert_eq!(
            c.elementary.as_ref().unwrap().index as u64,
            row.elementary_index,
            "{}",
            row.label
        );
        assert_eq!(c.torus_dim(), row.torus_dim, "{}", row.label);
        assert_eq!(c.size * c.centraliser_order(), 51840);
        total += c.size;
    }
    assert_eq!(total, 51840);
}

#[test]
fn structural_spot_checks() {
    let (rs, g, t) = table();
    let w = |s: &str| rs.parse_word(s).unwrap();

    // Z(s0 s6) contains u1 but the elementary part does not
    let a2 = t.by_label("A2").unwrap();
    let u1 = g.index_of(&w("u1")).unwrap();
    assert!(a2.centraliser.contains_index(u1));
    let elem = subgroup_generated(&g, &[w("s1"), w("s3"), w("s4"), w("s5")]);
    assert!(!elem.contains_index(u1));

    let s4 = subgroup_generated(&g, &[w("s1"), w("T"), w("s5")]);
    assert_eq!(s4.order(), 24);
    let rep = &t.by_label("A3xA1^2").unwrap().representative;
    let cyclic = subgroup_generated(&g, std::slice::from_ref(rep));
    assert_eq!(s4.intersection(&cyclic).order(), 1);

    let d4 = subgroup_generated(&g, &[w("s0"), w("s1"), w("s5"), w("T")]);
    let pauli = t.by_label("D4[a1]").unwrap().centraliser.intersection(&d4);
    assert_eq!(pauli.order(), 16);
    assert_eq!(centraliser(&g, &w("T")).intersection(&d4).order(), 16);
}

#[test]
fn power_map_contains_stated_edges() {
    let (_, g, t) = table();
    let edges = power_class_map(&g, &t);
    for e in expectations().power_edges {
        assert!(
            edges
                .iter()
                .any(|x| x.source == e.source && x.exponent == e.exponent && x.target == e.target),
            "{e:?}"
        );
    }
    for e in &edges {
        assert!(e.centraliser_inclusion, "{e:?}");
    }
}

#[test]
fn reference_centraliser_generators_generate() {
    let (_, _, t) = table();
    let failing: Vec<&str> = t
        .classes
        .iter()
        .filter(|c| c.reference_generators_generate != Some(true))
        .map(|c| c.label.as_str())
        .collect();
    assert!(failing.is_empty(), "{failing:?}");
}
