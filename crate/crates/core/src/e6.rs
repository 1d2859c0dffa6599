//! Reference data for W(E6): the 25 conjugacy-class representatives with their eigenvalue
//! data, centraliser orders, elementary centraliser parts, fixed-set types and sector
//! cohomology.
//!
//! Eigenvalues are recorded as cyclotomic multisets `(d, k)`: `Φ_d` divides the characteristic
//! polynomial exactly `k` times, i.e. each primitive d-th root of unity occurs `k` times.

use serde::{Deserialize, Serialize};

/// Expected data for one conjugacy class of W(E6).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassExpectation {
    pub label: String,
    pub word: String,
    pub eigenvalue_orders: Vec<(u32, u32)>,
    pub centraliser_order: u64,
    pub elementary_generators: Vec<String>,
    pub elementary_index: u64,
    /// Generators of the full centraliser.
    pub centraliser_generators: Vec<String>,
    /// Isomorphism-type label of the centraliser; recorded, not checked.
    pub centraliser_structure: String,
    pub torus_dim: usize,
    /// Component group of the fixed set in `t/Γ`, as listed (not necessarily normalized).
    pub component_factors: Vec<u64>,
    /// Homotopy type of the sector, as listed.
    pub quotient: String,
    /// Betti numbers `b₀, b₁, …` of the sector; omitted trailing entries are zero.
    pub betti: Vec<u64>,
    /// Whether the centre injects into the component group.
    pub component_ramified: bool,
    /// Centraliser orbit count on components, where a specific value is stated.
    pub orbit_count: Option<u64>,
}

/// A power relation `class(rep^k) = target` between classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerEdge {
    pub source: String,
    pub exponent: u64,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E6Expectations {
    pub group_order: u64,
    pub class_count: usize,
    pub classes: Vec<ClassExpectation>,
    pub power_edges: Vec<PowerEdge>,
    pub ktheory: (u64, u64),
}

#[allow(clippy::too_many_arguments)]
fn row(
    label: &str,
    word: &str,
    eig: &[(u32, u32)],
    order: u64,
    elementary: &[&str],
    index: u64,
    full: &[&str],
    structure: &str,
    torus_dim: usize,
    factors: &[u64],
    quotient: &str,
    betti: &[u64],
    ramified: bool,
    orbits: Option<u64>,
) -> ClassExpectation {
    let strings = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
    ClassExpectation {
        label: label.into(),
        word: word.into(),
        eigenvalue_orders: eig.to_vec(),
        centraliser_order: order,
        elementary_generators: strings(elementary),
        elementary_index: index,
        centraliser_generators: strings(full),
        centraliser_structure: structure.into(),
        torus_dim,
        component_factors: factors.to_vec(),
        quotient: quotient.into(),
        betti: betti.to_vec(),
        component_ramified: ramified,
        orbit_count: orbits,
    }
}

const E6A2: &str = "s6 s2 s0^{T} s1^{T} s4 s3";

/// The built-in E6 expectations.
pub fn expectations() -> E6Expectations {
    let e6a2_squared = format!("{E6A2} {E6A2}");
    let classes = vec![
        row(
            "∅",
            "e",
            &[(1, 6)],
            51840,
            &["s1", "s2", "s3", "s4", "s5", "s6"],
            1,
            &["s1", "s2", "s3", "s4", "s5", "s6"],
            "W(E6)",
            6,
            &[],
            "Δ6",
            &[1],
            false,
            None,
        ),
        row(
            "A1",
            "s0",
            &[(1, 5), (2, 1)],
            1440,
            &["s0", "s1", "s2", "s3", "s4", "s5"],
            1,
            &["s0", "s1", "s2", "s3", "s4", "s5"],
            "C2×W(A5)",
            5,
            &[],
            "Δ5",
            &[1],
            false,
            None,
        ),
        row(
            "A1^2",
            "s0 s1",
            &[(1, 4), (2, 2)],
            192,
            &["s0", "s1", "s3", "s4", "s5"],
            2,
            &["s0", "u2", "s3", "s4", "s5"],
            "D4×S4",
            4,
            &[],
            "Δ3 ~× S1",
            &[1, 1],
            false,
            None,
        ),
        row(
            "A2",
            "s0 s6",
            &[(1, 4), (3, 1)],
            216,
            &["s0 s6", "s1", "s2", "s4", "s5"],
            2,
            &["s0 s6", "s1", "s2", "u1"],
            "C3×(S3≀C2)",
            4,
            &[],
            "SP2(Δ2)",
            &[1],
            false,
            None,
        ),
        row(
            "A1^3",
            "s0 s1 s5",
            &[(1, 3), (2, 3)],
            96,
            &["s0", "s1", "s5", "s3"],
            6,
            &["s0", "u1", "u2", "s3"],
            "(C2≀3 D3)×C2",
            3,
            &[],
            "Δ2×Δ1",
            &[1],
            false,
            None,
        ),
        row(
            "A2xA1",
            "s0 s6 s1",
            &[(1, 3), (2, 1), (3, 1)],
            36,
            &["s0 s6", "s1", "s4", "s5"],
            1,
            &["s0 s6", "s1", "s4", "s5"],
            "C3×C2×S3",
            3,
            &[],
            "T1×Δ2",
            &[1, 1],
            false,
            None,
        ),
        row(
            "A3",
            "s0 s6 s3",
            &[(1, 3), (2, 1), (4, 1)],
            32,
            &["s0 s6 s3", "s1", "s5"],
            2,
            &["s0 s6 s3", "s1", "u1"],
            "C4×D4",
            3,
            &[],
            "Δ2 ~× S1",
            &[1, 1],
            false,
            None,
        ),
        row(
            "A1^4",
            "s0 s1 s5 s3",
            &[(1, 2), (2, 4)],
            1152,
            &["s0", "s1", "s5", "s3"],
            72,
            &["s0", "s1", "s5", "T", "u1", "u2"],
            "G28",
            2,
            &[2, 2],
            "Δ2 ⊔ Δ2",
            &[2],
            false,
            None,
        ),
        row(
            "A2xA1^2",
            "s0 s6 s1 s5",
            &[(1, 2), (2, 2), (3, 1)],
            24,
            &["s0 s6", "s1", "s5"],
            2,
            &["s0 s6", "s1", "u1"],
            "C3×D4",
            2,
            &[],
            "SP2(T1)",
            &[1, 1],
            false,
            None,
        ),
        row(
            "A2^2",
            "s0 s6 s1 s2",
            &[(1, 2), (3, 2)],
            108,
            &["s0 s6", "s1 s2", "s4", "s5"],
            2,
            &["s0 s6", "u2", "s4", "s5"],
            "(C3≀C2)×S3",
            2,
            &[3],
            "Δ2×Z",
            &[3],
            true,
            None,
        ),
        row(
            "A3xA1",
            "s0 s6 s3 s1",
            &[(1, 2), (2, 2), (4, 1)],
            16,
            &["s0 s6 s3", "s1", "s5"],
            1,
            &["s0 s6 s3", "s1", "s5"],
            "C4×V4",
            2,
            &[],
            "Δ1×T1",
            &[1, 1],
            false,
            None,
        ),
        row(
            "A4",
            "s0 s6 s3 s4",
            &[(1, 2), (5, 1)],
            10,
            &["s0 s6 s3 s4", "s1"],
            1,
            &["s0 s6 s3 s4", "s1"],
            "C5×C2",
            2,
            &[],
            "SP2(T1)",
            &[1, 1],
            false,
            None,
        ),
        row(
            "D4",
            "s0 s1 s5 T",
            &[(1, 2), (2, 2), (6, 1)],
            36,
            &["s0 s1 s5 T"],
            6,
            &["s0 s1 s5 T", "u1", "u2"],
            "C6×D3",
            2,
            &[],
            "Δ2",
            &[1],
            false,
            None,
        ),
        row(
            "D4[a1]",
            "s1 T s5 s0^{T}",
            &[(1, 2), (4, 2)],
            96,
            &["s1 T s5 s0^{T}"],
            24,
            &["s5 u3", "s5^{T} u1"],
            "G8",
            2,
            &[],
            "Δ2",
            &[1],
            false,
            None,
        ),
        row(
            "A2^2xA1",
            "s0 s6 s5 s1 s2",
            &[(1, 1), (2, 1), (3, 2)],
            36,
            &["s0 s6", "s5", "s1 s2"],
            2,
            &["s0 s6", "u2", "s5"],
            "(C3≀C2)×C2",
            1,
            &[3],
            "Δ1×Z",
            &[3],
            true,
            None,
        ),
        row(
            "A3xA1^2",
            "s0 s6 s3 s1 s5",
            &[(1, 1), (2, 3), (4, 1)],
            96,
            &["s0 s6 s3", "s1", "s5"],
            6,
            &["s0 s6 s3 s1 s5", "s1", "T", "s5"],
            "C4×S4",
            1,
            &[2, 2],
            "T1 ⊔ T1",
            &[2, 2],
            false,
            None,
        ),
        row(
            "A4xA1",
            "s0 s6 s3 s4 s1",
            &[(1, 1), (2, 1), (5, 1)],
            10,
            &["s0 s6 s3 s4", "s1"],
            1,
            &["s0 s6 s3 s4", "s1"],
            "C5×C2",
            1,
            &[],
            "T1",
            &[1, 1],
            false,
            None,
        ),
        row(
            "A5",
            "s0 s6 s3 s4 s5",
            &[(1, 1), (2, 1), (3, 1), (6, 1)],
            12,
            &["s0 s6 s3 s4 s5", "s1"],
            1,
            &["s0 s6 s3 s4 s5", "s1"],
            "C6×S2",
            1,
            &[3],
            "Δ1×Z",
            &[3],
            true,
            None,
        ),
        row(
            "D5",
            "s0 s6 s3 s4 s3^{s2 s4}",
            &[(1, 1), (2, 1), (8, 1)],
            8,
            &["s0 s6 s3 s4 s3^{s2 s4}"],
            1,
            &["s0 s6 s3 s4 s3^{s2 s4}"],
            "C8",
            1,
            &[],
            "T1",
            &[1, 1],
            false,
            None,
        ),
        row(
            "D5[a1]",
            "s0 s6 s3 s4 T",
            &[(1, 1), (2, 1), (4, 1), (6, 1)],
            12,
            &["s0 s6 s3 s4 T"],
            1,
            &["s0 s6 s3 s4 T"],
            "C12",
            1,
            &[],
            "T1",
            &[1, 1],
            false,
            None,
        ),
        row(
            "A2^3",
            "s0 s6 s1 s2 s5 s4",
            &[(3, 3)],
            648,
            &["s0 s6", "s1 s2", "s4 s5"],
            24,
            &["s0 s6", "T s3", "s5 s4"],
            "G25",
            0,
            &[3, 3, 3],
            "four points",
            &[4],
            true,
            Some(4),
        ),
        row(
            "A5xA1",
            "s0 s6 s3 s4 s5 s1",
            &[(2, 2), (3, 1), (6, 1)],
            36,
            &["s0 s6 s3 s4 s5", "s1"],
            3,
            &["s0 s6 s3 s4 s5 s1", "s1", "T"],
            "C6×S3",
            0,
            &[2, 2, 3],
            "Z ⊔ Z",
            &[6],
            true,
            Some(6),
        ),
        row(
            "E6",
            "s1 s2 s3 s4 s5 s6",
            &[(3, 1), (12, 1)],
            12,
            &["s1 s2 s3 s4 s5 s6"],
            1,
            &["s1 s2 s3 s4 s5 s6"],
            "C12",
            0,
            &[3],
            "Z",
            &[3],
            true,
            Some(3),
        ),
        row(
            "E6[a1]",
            "s1 s2 s3 s4 s5 s6^{s3}",
            &[(9, 1)],
            9,
            &["s1 s2 s3 s4 s5 s6^{s3}"],
            1,
            &["s1 s2 s3 s4 s5 s6^{s3}"],
            "C9",
            0,
            &[3],
            "Z",
            &[3],
            true,
            Some(3),
        ),
        row(
            "E6[a2]",
            E6A2,
            &[(3, 1), (6, 2)],
            72,
            &[E6A2],
            12,
            &[e6a2_squared.as_str(), "T s3", "s5 s4"],
            "G5",
            0,
            &[3],
            "Z",
            &[3],
            true,
            Some(3),
        ),
    ];
    let edge = |s: &str, k: u64, t: &str| PowerEdge {
        source: s.into(),
        exponent: k,
        target: t.into(),
    };
    E6Expectations {
        group_order: 51840,
        class_count: 25,
        classes,
        power_edges: vec![
            edge("D4[a1]", 2, "A1^4"),
            edge("E6[a2]", 2, "A2^3"),
            edge("D4", 3, "A1^4"),
        ],
        ktheory: (47, 11),
    }
}

/// Normalized invariant factors (`d₁ | d₂ | …`, all > 1) of `⊕ Z/fᵢ`.
pub fn normalize_abelian(factors: &[u64]) -> Vec<u64> {
    use crate::exact_linalg::{smith_normal_form, IntMatrix};
    let n = factors.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, &f) in factors.iter().enumerate() {
        *m.get_mut(i, i) = f.into();
    }
    smith_normal_form(&m)
        .torsion_factors()
        .iter()
        .map(|d| d.try_into().expect("small invariant factor"))
        .collect()
}
