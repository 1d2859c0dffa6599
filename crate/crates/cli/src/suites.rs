//! One function per command. Each returns the report plus the list of failed expectations.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use weyl_tori::e6::normalize_abelian;
use weyl_tori::sectors_ktheory::{
    compare_forms, ktheory, ktheory_markdown, sectors_markdown, KTheoryReport,
};
use weyl_tori::torus_fixed::{
    centre_points, fixed_sets_markdown, gcd_minors_check, gcd_minors_sweep, ramification,
    verify_duality, FixedSetReport, LatticeSide, Ramification, RamificationReport,
};
use weyl_tori::weyl_group::{
    class_table_markdown, eigenvalue_string, power_class_map, reflection_length, ClassRow,
};

use crate::context::Context;

pub struct Outcome {
    pub suite: &'static str,
    pub report: Value,
    pub markdown: String,
    /// Header row first.
    pub csv: Vec<Vec<String>>,
    pub mismatches: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn check<T: PartialEq + std::fmt::Debug>(
    out: &mut Vec<String>,
    row: &str,
    field: &str,
    expected: T,
    got: T,
) {
    if expected != got {
        out.push(format!(
            "row {row}: {field}: expected {expected:?}, got {got:?}"
        ));
    }
}

fn strings<const N: usize>(xs: [&str; N]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub fn classes(ctx: &Context) -> Outcome {
    let rows: Vec<ClassRow> = ctx.table.classes.iter().map(ClassRow::new).collect();
    let mut mismatches = Vec::new();
    if let Some(e) = &ctx.expected {
        check(
            &mut mismatches,
            "*",
            "group order",
            e.group_order,
            ctx.group.order() as u64,
        );
        check(
            &mut mismatches,
            "*",
            "class count",
            e.class_count,
            ctx.table.len(),
        );
        for (r, x) in rows.iter().zip(&e.classes) {
            check(
                &mut mismatches,
                &x.label,
                "eigenvalues",
                eigenvalue_string(&x.eigenvalue_orders),
                r.eigenvalues.clone(),
            );
            check(
                &mut mismatches,
                &x.label,
                "centraliser order",
                x.centraliser_order,
                r.centraliser_order as u64,
            );
            let index = r.elementary.as_ref().map_or(1, |el| el.index as u64);
            check(
                &mut mismatches,
                &x.label,
                "elementary index",
                x.elementary_index,
                index,
            );
        }
    }
    let mut csv = vec![strings([
        "type",
        "word",
        "eigenvalues",
        "centraliser_order",
        "elementary_order",
        "elementary_index",
        "class_size",
    ])];
    for r in &rows {
        let (eo, ei) = r
            .elementary
            .as_ref()
            .map_or((String::new(), String::new()), |e| {
                (e.order.to_string(), e.index.to_string())
            });
        csv.push(vec![
            r.label.clone(),
            r.word.clone().unwrap_or_default(),
            r.eigenvalues.clone(),
            r.centraliser_order.to_string(),
            eo,
            ei,
            r.class_size.to_string(),
        ]);
    }
    Outcome {
        suite: "classes",
        report: json!({ "group_order": ctx.group.order(), "classes": to_value(&rows) }),
        markdown: class_table_markdown(&rows),
        csv,
        mismatches,
    }
}

fn fixed_reports(ctx: &Context, side: LatticeSide) -> Vec<FixedSetReport> {
    ctx.table
        .classes
        .par_iter()
        .map(|c| {
            FixedSetReport::build(
                &ctx.rs,
                &c.representative,
                &c.label,
                side,
                &c.centraliser_generators,
            )
        })
        .collect()
}

pub fn fixed_sets(ctx: &Context) -> Outcome {
    let n = ctx.rs.rank();
    let mut mismatches = Vec::new();
    let mut by_side = BTreeMap::new();
    let mut all = Vec::new();
    for &side in &ctx.sides {
        let reports = fixed_reports(ctx, side);
        for (r, c) in reports.iter().zip(&ctx.table.classes) {
            check(
                &mut mismatches,
                &r.label,
                "torus dim + reflection length",
                n,
                r.torus_dim + reflection_length(&c.representative),
            );
            let order: u64 = r.invariant_factors.iter().product();
            check(
                &mut mismatches,
                &r.label,
                "component count",
                order,
                r.component_reps.len() as u64,
            );
        }
        if let Some(e) = &ctx.expected {
            for (r, x) in reports.iter().zip(&e.classes) {
                let row = format!("{} ({})", x.label, side.name());
                check(&mut mismatches, &row, "torus dim", x.torus_dim, r.torus_dim);
                check(
                    &mut mismatches,
                    &row,
                    "component group",
                    normalize_abelian(&x.component_factors),
                    r.invariant_factors.clone(),
                );
                if let Some(o) = x.orbit_count {
                    check(
                        &mut mismatches,
                        &row,
                        "orbit count",
                        o,
                        r.orbit_count as u64,
                    );
                }
            }
        }
        by_side.insert(side.name(), to_value(&reports));
        all.extend(reports);
    }
    if ctx.both_sides() {
        let k = ctx.table.len();
        for (r, w) in all[..k].iter().zip(&all[k..]) {
            check(
                &mut mismatches,
                &r.label,
                "orbit count across sides",
                r.orbit_count,
                w.orbit_count,
            );
            check(
                &mut mismatches,
                &r.label,
                "component group across sides",
                &r.invariant_factors,
                &w.invariant_factors,
            );
        }
    }
    let ramified: Vec<RamificationReport> = if centre_points(&ctx.rs).len() > 1 {
        ctx.table
            .classes
            .par_iter()
            .map(|c| {
                ramification(
                    &ctx.rs,
                    &c.representative,
                    &c.label,
                    &c.centraliser_generators,
                )
            })
            .collect()
    } else {
        Vec::new()
    };
    for r in &ramified {
        if !r.consistent {
            mismatches.push(format!(
                "row {}: centre and component map disagree: {r:?}",
                r.label
            ));
        }
        let prime = (2..r.centre_order).all(|p| r.centre_order % p != 0);
        if prime && r.kind == Ramification::Mixed {
            mismatches.push(format!(
                "row {}: centre of prime order meets the components partially",
                r.label
            ));
        }
    }
    if let Some(e) = &ctx.expected {
        for (r, x) in ramified.iter().zip(&e.classes) {
            check(
                &mut mismatches,
                &x.label,
                "component ramified",
                x.component_ramified,
                r.kind == Ramification::Component,
            );
        }
    }
    let mut csv = vec![strings([
        "type",
        "side",
        "torus_dim",
        "invariant_factors",
        "components",
        "orbits",
    ])];
    for r in &all {
        csv.push(vec![
            r.label.clone(),
            r.side.name().into(),
            r.torus_dim.to_string(),
            r.invariant_factors
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" "),
            r.component_reps.len().to_string(),
            r.orbit_count.to_string(),
        ]);
    }
    Outcome {
        suite: "fixed-sets",
        report: json!({ "fixed_sets": by_side, "ramification": to_value(&ramified) }),
        markdown: fixed_sets_markdown(&all, &ramified),
        csv,
        mismatches,
    }
}

pub fn duality(ctx: &Context) -> Outcome {
    let mut mismatches = Vec::new();
    let mut notices = Vec::new();
    let reports: Vec<_> = ctx
        .table
        .classes
        .par_iter()
        .map(|c| {
            verify_duality(
                &ctx.rs,
                &c.representative,
                &c.label,
                &c.centraliser_generators,
            )
        })
        .collect();
    let mut ok_reports = Vec::new();
    for r in reports {
        match r {
            Ok(r) if r.vacuous => {
                notices.push(format!("{}: identity element, pairing skipped", r.label));
                ok_reports.push(r);
            }
            Ok(r) => {
                if let Err(e) = r.clone().into_result() {
                    mismatches.push(e.to_string());
                }
                ok_reports.push(r);
            }
            Err(e) => mismatches.push(e.to_string()),
        }
    }
    let reps: Vec<_> = ctx
        .table
        .classes
        .iter()
        .map(|c| {
            (
                c.label.clone(),
                gcd_minors_check(&ctx.rs, &c.representative),
            )
        })
        .collect();
    for (label, chk) in &reps {
        if !chk.holds() {
            mismatches.push(format!("row {label}: gcd of minors vs torsion: {chk:?}"));
        }
    }
    let sweep = gcd_minors_sweep(&ctx.rs, &ctx.group, ctx.sample, ctx.seed);
    for f in &sweep.failures {
        mismatches.push(format!(
            "sweep: gcd of minors differs from torsion order at {f:?}"
        ));
    }
    let mut md = String::from("| Type | μ | Root side | Weight side | Pairing | Perfect | Equivariant |\n|---|---|---|---|---|---|---|\n");
    let mut csv = vec![strings([
        "type",
        "mu",
        "root_factors",
        "weight_factors",
        "nondegenerate",
        "equivariant",
        "mu_projection",
    ])];
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    for r in &ok_reports {
        let pairing: Vec<String> = r.pairing.iter().map(|row| join(row)).collect();
        md.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} |\n",
            r.label,
            if r.vacuous {
                "-".into()
            } else {
                r.mu.to_string()
            },
            join(&r.root_factors),
            join(&r.weight_factors),
            pairing.join("; "),
            r.nondegenerate,
            r.equivariant
        ));
        csv.push(vec![
            r.label.clone(),
            r.mu.to_string(),
            join(&r.root_factors),
            join(&r.weight_factors),
            r.nondegenerate.to_string(),
            r.equivariant.to_string(),
            r.mu_projection.to_string(),
        ]);
    }
    md.push_str(&format!(
        "\ngcd of maximal minors = torsion order on both lattices: {} representatives, {} sampled elements (seed {}), {} failures\n",
        reps.len(),
        sweep.checked,
        sweep.seed,
        sweep.failures.len()
    ));
    for n in &notices {
        md.push_str(&format!("\nnote: {n}\n"));
    }
    Outcome {
        suite: "duality",
        report: json!({
            "pairings": to_value(&ok_reports),
            "gcd_minors": { "representatives": reps.iter().map(|(l, c)| json!({"label": l, "check": to_value(c)})).collect::<Vec<_>>(), "sweep": to_value(&sweep) },
            "notices": notices,
        }),
        markdown: md,
        csv,
        mismatches,
    }
}

pub fn sectors(ctx: &Context) -> anyhow::Result<Outcome> {
    let mut mismatches = Vec::new();
    let mut by_side = BTreeMap::new();
    let mut lists = Vec::new();
    for &side in &ctx.sides {
        let s = ctx.sectors(side)?;
        if let Some(e) = &ctx.expected {
            for (r, x) in s.iter().zip(&e.classes) {
                check(
                    &mut mismatches,
                    &format!("{} ({})", x.label, side.name()),
                    "betti",
                    x.betti.clone(),
                    r.betti_trimmed(),
                );
            }
        }
        by_side.insert(side.name(), to_value(&s));
        lists.push(s);
    }
    if lists.len() == 2 {
        for (r, w) in lists[0].iter().zip(lists[1]) {
            check(
                &mut mismatches,
                &r.label,
                "betti across sides",
                &r.betti,
                &w.betti,
            );
        }
    }
    let mut csv = vec![strings(["type", "side", "torus_dim", "betti", "euler"])];
    for s in lists.iter().flat_map(|l| l.iter()) {
        csv.push(vec![
            s.label.clone(),
            s.side.name().into(),
            s.torus_dim.to_string(),
            s.betti
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" "),
            s.euler.to_string(),
        ]);
    }
    Ok(Outcome {
        suite: "sectors",
        report: json!({ "sectors": by_side }),
        markdown: sectors_markdown(&lists),
        csv,
        mismatches,
    })
}

pub fn ktheory_suite(ctx: &Context) -> anyhow::Result<Outcome> {
    let mut mismatches = Vec::new();
    let mut reports: Vec<KTheoryReport> = Vec::new();
    for &side in &ctx.sides {
        let k = ktheory(ctx.sectors(side)?);
        if let Some(e) = &ctx.expected {
            check(
                &mut mismatches,
                side.name(),
                "(k0, k1)",
                e.ktheory,
                (k.k0, k.k1),
            );
        }
        reports.push(k);
    }
    let mut report = json!({ "ktheory": to_value(&reports) });
    if ctx.both_sides() {
        check(
            &mut mismatches,
            "*",
            "totals across sides",
            (reports[0].k0, reports[0].k1),
            (reports[1].k0, reports[1].k1),
        );
        let cmp = compare_forms(
            &fixed_reports(ctx, LatticeSide::Root),
            &fixed_reports(ctx, LatticeSide::Weight),
            ctx.sectors(LatticeSide::Root)?,
            ctx.sectors(LatticeSide::Weight)?,
        );
        for r in cmp
            .rows
            .iter()
            .filter(|r| !(r.betti_equal && r.orbit_count_equal && r.fixed_set_type_equal))
        {
            mismatches.push(format!("row {}: forms differ: {r:?}", r.label));
        }
        report["comparison"] = to_value(&cmp);
    }
    let mut csv = vec![strings(["side", "type", "even", "odd"])];
    for k in &reports {
        for r in &k.per_class {
            csv.push(vec![
                k.side.name().into(),
                r.label.clone(),
                r.even.to_string(),
                r.odd.to_string(),
            ]);
        }
        csv.push(vec![
            k.side.name().into(),
            "total".into(),
            k.k0.to_string(),
            k.k1.to_string(),
        ]);
    }
    let mut md = ktheory_markdown(&reports);
    if ctx.both_sides() && mismatches.is_empty() {
        md.push_str(
            "\nSector Betti numbers agree on both sides: consistent at cohomology level.\n",
        );
    }
    Ok(Outcome {
        suite: "ktheory",
        report,
        markdown: md,
        csv,
        mismatches,
    })
}

pub fn power_map(ctx: &Context) -> Outcome {
    let edges = power_class_map(&ctx.group, &ctx.table);
    let mut mismatches = Vec::new();
    for e in edges.iter().filter(|e| !e.centraliser_inclusion) {
        mismatches.push(format!(
            "row {}: Z(w) not contained in Z(w^{})",
            e.source, e.exponent
        ));
    }
    if let Some(x) = &ctx.expected {
        for want in &x.power_edges {
            let found = edges
                .iter()
                .find(|e| e.source == want.source && e.exponent == want.exponent);
            match found {
                Some(e) if e.target == want.target => {}
                Some(e) => mismatches.push(format!(
                    "row {}: power {}: expected {}, got {}",
                    want.source, want.exponent, want.target, e.target
                )),
                None => mismatches.push(format!(
                    "row {}: power {} not computed",
                    want.source, want.exponent
                )),
            }
        }
    }
    let mut md =
        String::from("| Type | k | Class of w^k | Same representative |\n|---|---|---|---|\n");
    let mut csv = vec![strings([
        "source",
        "exponent",
        "target",
        "representative_level",
        "centraliser_inclusion",
    ])];
    for e in &edges {
        md.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            e.source, e.exponent, e.target, e.representative_level
        ));
        csv.push(vec![
            e.source.clone(),
            e.exponent.to_string(),
            e.target.clone(),
            e.representative_level.to_string(),
            e.centraliser_inclusion.to_string(),
        ]);
    }
    Outcome {
        suite: "power-map",
        report: json!({ "edges": to_value(&edges) }),
        markdown: md,
        csv,
        mismatches,
    }
}

pub fn dump(ctx: &Context) -> Outcome {
    let rows: Vec<ClassRow> = ctx.table.classes.iter().map(ClassRow::new).collect();
    let d = ctx.rs.dump();
    let md = format!(
        "rank {}, {} roots, group order {}, {} classes\n",
        ctx.rs.rank(),
        d.roots.len(),
        ctx.group.order(),
        ctx.table.len()
    );
    let mut csv = vec![strings(["root"])];
    csv.extend(
        d.roots
            .iter()
            .map(|r| vec![r.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")]),
    );
    Outcome {
        suite: "dump",
        report: json!({ "root_system": to_value(&d), "group_order": ctx.group.order(), "classes": to_value(&rows) }),
        markdown: md,
        csv,
        mismatches: Vec::new(),
    }
}
