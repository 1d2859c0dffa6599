//! Root data for simply-laced Cartan matrices, with the E6 conventions used throughout:
//! simple roots r₁…r₆ in a chain r₁–r₂–r₃–r₄–r₅ with r₆ attached to r₃, the extra root
//! r₀ = −(r₁ + 2r₂ + 3r₃ + 2r₄ + r₅ + 2r₆), and r_T = −(r₂ + r₃ + r₄ + r₆).
//!
//! Coordinates are always in the simple-root basis, so the root lattice Γ is exactly Zⁿ.
//! The weight lattice Γ^∨ is the column lattice of G⁻¹ (G the Gram matrix); a group element
//! acts on weight coordinates by the inverse transpose of its root-coordinate matrix.

mod element;
mod word;

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::exact_linalg::{smith_normal_form, IntMatrix, RatMatrix};

pub use element::{dual_action, GroupElement};
pub use word::{parse_with, WordError};

/// Root closure is abandoned past this many roots (non-finite type).
const ROOT_COUNT_BOUND: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("vector {0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("operation requires the E6 root system")]
    NotE6,
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: IntMatrix,
    gram: IntMatrix,
    gram_inverse: RatMatrix,
    roots: Vec<Vec<i64>>,
    simple_reflections: Vec<GroupElement>,
    /// `det(G)·G⁻¹`, row-major, with `det(G)`; used for the weight-lattice action.
    gram_adjugate: Vec<i64>,
    gram_det: i64,
}

impl RootSystem {
    /// Builds the root system of a simply-laced Cartan matrix of finite type.
    pub fn from_cartan(cartan: &IntMatrix) -> Result<Self, RootSystemError> {
        let n = cartan.rows();
        if !cartan.is_square() || n == 0 {
            return Err(RootSystemError::InvalidCartan(
                "matrix must be square and nonempty".into(),
            ));
        }
        for i in 0..n {
            for j in 0..n {
                let c = cartan.get(i, j);
                if i == j && *c != BigInt::from(2) {
                    return Err(RootSystemError::InvalidCartan(format!(
                        "diagonal entry ({i},{i}) is not 2"
                    )));
                }
                if i != j {
                    if *c != BigInt::from(0) && *c != BigInt::from(-1) {
                        return Err(RootSystemError::InvalidCartan(format!(
                            "entry ({i},{j}) = {c} is not simply-laced"
                        )));
                    }
                    if c != cartan.get(j, i) {
                        return Err(RootSystemError::InvalidCartan(format!(
                            "asymmetric at ({i},{j})"
                        )));
                    }
                }
            }
        }
        let gram = cartan.clone();
        let simple_reflections: Vec<GroupElement> = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                reflection_in(&gram, &r)
            })
            .collect();

        // Breadth-first closure of the simple roots under simple reflections.
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut r = vec![0; n];
            r[i] = 1;
            seen.insert(r.clone());
            queue.push_back(r);
        }
        while let Some(r) = queue.pop_front() {
            for s in &simple_reflections {
                let image = s.apply(&r);
                if seen.insert(image.clone()) {
                    if seen.len() > ROOT_COUNT_BOUND {
                        return Err(RootSystemError::InvalidCartan(
                            "root closure diverges: not of finite type".into(),
                        ));
                    }
                    queue.push_back(image);
                }
            }
        }
        let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            hb.cmp(&ha).then_with(|| b.cmp(a))
        });
        let gram_inverse = gram
            .to_rational()
            .inverse()
            .ok_or_else(|| RootSystemError::InvalidCartan("singular Gram matrix".into()))?;
        let det = gram.det();
        let gram_det: i64 = (&det).try_into().expect("small Gram determinant");
        let gram_adjugate = gram_inverse
            .scale(&det.into())
            .to_integer()
            .expect("adjugate is integral")
            .entries()
            .iter()
            .map(|x| x.try_into().expect("small adjugate entry"))
            .collect();
        Ok(Self {
            cartan: cartan.clone(),
            gram,
            gram_inverse,
            roots,
            simple_reflections,
            gram_adjugate,
            gram_det,
        })
    }

    /// E6 with simple roots r₁…r₆ (coordinates 0..5): chain r₁–r₂–r₃–r₄–r₅, r₆ attached to r₃.
    pub fn e6() -> Self {
        let rs = Self::from_cartan(&e6_cartan()).expect("E6 Cartan matrix is valid");
        let r0 = rs.r0();
        for i in 0..5 {
            let mut e = vec![0; 6];
            e[i] = 1;
            debug_assert_eq!(rs.inner(&r0, &e), 0);
        }
        rs
    }

    pub fn rank(&self) -> usize {
        self.cartan.rows()
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    /// `G⁻¹`: its columns are the fundamental weights in root coordinates.
    pub fn gram_inverse(&self) -> &RatMatrix {
        &self.gram_inverse
    }

    /// All roots, positive roots first (by decreasing height).
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.roots.iter().filter(|r| r.iter().all(|&c| c >= 0))
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.roots.iter().any(|r| r == v)
    }

    pub fn is_e6(&self) -> bool {
        self.cartan == e6_cartan()
    }

    /// `⟨x, y⟩ = xᵀ G y` on root coordinates.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        let mut acc = 0i64;
        for (i, xi) in x.iter().enumerate().take(n) {
            for (j, yj) in y.iter().enumerate().take(n) {
                let g: i64 = self.gram.get(i, j).try_into().expect("small Gram entry");
                acc += xi * g * yj;
            }
        }
        acc
    }

    pub fn simple_reflections(&self) -> &[GroupElement] {
        &self.simple_reflections
    }

    /// Reflection `x ↦ x − ⟨x, r⟩ r` in a root `r`.
    pub fn reflection_matrix(&self, root: &[i64]) -> Result<GroupElement, RootSystemError> {
        if !self.is_root(root) {
            return Err(RootSystemError::NotARoot(root.to_vec()));
        }
        Ok(reflection_in(&self.gram, root))
    }

    /// Matrix of `g` on weight coordinates, `G·M·G⁻¹`; equal to the inverse transpose of `M`.
    pub fn weight_action(&self, g: &GroupElement) -> GroupElement {
        let n = self.rank();
        let gram: Vec<i64> = self
            .gram
            .entries()
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        let mut gm = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = gram[i * n + k];
                if a != 0 {
                    for j in 0..n {
                        gm[i * n + j] += a * g.get(k, j) as i64;
                    }
                }
            }
        }
        let mut out = vec![0i32; n * n];
        for i in 0..n {
            for j in 0..n {
                let s: i64 = (0..n)
                    .map(|k| gm[i * n + k] * self.gram_adjugate[k * n + j])
                    .sum();
                debug_assert_eq!(s % self.gram_det, 0);
                out[i * n + j] = i32::try_from(s / self.gram_det).expect("entry overflow");
            }
        }
        GroupElement::from_entries(n, out)
    }

    /// Negative of the highest root.
    pub fn r0(&self) -> Vec<i64> {
        let highest = self
            .roots
            .iter()
            .max_by_key(|r| r.iter().sum::<i64>())
            .expect("nonempty root system");
        highest.iter().map(|&c| -c).collect()
    }

    /// True if `g` permutes the root set.
    pub fn preserves_roots(&self, g: &GroupElement) -> bool {
        let set: HashSet<&Vec<i64>> = self.roots.iter().collect();
        self.roots.iter().all(|r| set.contains(&g.apply(r)))
    }

    /// Invariant factors (greater than one) of Γ^∨/Γ, the SNF of the Gram matrix.
    pub fn centre_quotient(&self) -> Vec<BigInt> {
        smith_normal_form(&self.gram).torsion_factors()
    }

    /// Resolves a generator name of the word notation.
    pub fn named_generator(&self, name: &str) -> Option<GroupElement> {
        if let Some(idx) = name.strip_prefix('s').and_then(|d| d.parse::<usize>().ok()) {
            if idx == 0 {
                return self.is_e6().then(|| reflection_in(&self.gram, &self.r0()));
            }
            return self.simple_reflections.get(idx - 1).cloned();
        }
        if !self.is_e6() {
            return None;
        }
        let sp = SpecialElements::build(self);
        match name {
            "T" => Some(sp.t),
            "u1" => Some(sp.u1),
            "u2" => Some(sp.u2),
            "u3" => Some(sp.u3),
            _ => None,
        }
    }

    /// Parses a word such as `s0 s6 s3 s4 s3^{s2 s4}`.
    pub fn parse_word(&self, text: &str) -> Result<GroupElement, RootSystemError> {
        Ok(parse_with(text, self.rank(), &|name| {
            self.named_generator(name)
        })?)
    }

    /// The special roots and elements; E6 only.
    pub fn special_elements(&self) -> Result<SpecialElements, RootSystemError> {
        if !self.is_e6() {
            return Err(RootSystemError::NotE6);
        }
        Ok(SpecialElements::build(self))
    }

    /// Summary for JSON export: Cartan matrix, roots and generator matrices.
    pub fn dump(&self) -> RootSystemDump {
        let special = self.special_elements().ok().map(|sp| {
            vec![
                ("T".to_string(), sp.t.rows()),
                ("u1".to_string(), sp.u1.rows()),
                ("u2".to_string(), sp.u2.rows()),
                ("u3".to_string(), sp.u3.rows()),
            ]
            .into_iter()
            .collect()
        });
        RootSystemDump {
            cartan: (0..self.rank())
                .map(|i| {
                    self.cartan
                        .row(i)
                        .iter()
                        .map(|x| x.try_into().unwrap())
                        .collect()
                })
                .collect(),
            roots: self.roots.clone(),
            simple_reflections: self
                .simple_reflections
                .iter()
                .map(GroupElement::rows)
                .collect(),
            special_elements: special,
            centre_quotient: self
                .centre_quotient()
                .iter()
                .map(ToString::to_string)
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSystemDump {
    pub cartan: Vec<Vec<i64>>,
    pub roots: Vec<Vec<i64>>,
    pub simple_reflections: Vec<Vec<Vec<i32>>>,
    pub special_elements: Option<std::collections::BTreeMap<String, Vec<Vec<i32>>>>,
    pub centre_quotient: Vec<String>,
}

/// The E6 Cartan matrix in the labeling r₁…r₆ described in the module docs.
pub fn e6_cartan() -> IntMatrix {
    cartan_from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])
}

/// Simply-laced Cartan matrix of a graph on `n` nodes.
pub fn cartan_from_edges(n: usize, edges: &[(usize, usize)]) -> IntMatrix {
    let mut c = vec![0i64; n * n];
    for i in 0..n {
        c[i * n + i] = 2;
    }
    for &(a, b) in edges {
        c[a * n + b] = -1;
        c[b * n + a] = -1;
    }
    IntMatrix::from_i64(n, n, &c)
}

fn reflection_in(gram: &IntMatrix, root: &[i64]) -> GroupElement {
    let n = root.len();
    let g_root: Vec<i64> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| root[i] * i64::try_from(gram.get(i, j)).unwrap())
                .sum()
        })
        .collect();
    let mut entries = vec![0i32; n * n];
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { 1 } else { 0 };
            entries[i * n + j] = (delta - root[i] * g_root[j]) as i32;
        }
    }
    GroupElement::from_entries(n, entries)
}

/// r₀, r_T and the elements T, u₁, u₂, u₃ of W(E6).
#[derive(Clone, Debug)]
pub struct SpecialElements {
    pub r0: Vec<i64>,
    pub r_t: Vec<i64>,
    pub t: GroupElement,
    pub u1: GroupElement,
    pub u2: GroupElement,
    pub u3: GroupElement,
    pub u1_roots: [Vec<i64>; 4],
    pub u2_roots: [Vec<i64>; 4],
    pub u3_roots: [Vec<i64>; 4],
}

impl SpecialElements {
    fn build(rs: &RootSystem) -> Self {
        let r0 = rs.r0();
        let add = |terms: &[&[i64]]| -> Vec<i64> {
            (0..6).map(|i| terms.iter().map(|t| t[i]).sum()).collect()
        };
        let e = |i: usize| -> Vec<i64> {
            let mut v = vec![0; 6];
            v[i - 1] = 1;
            v
        };
        let r_t: Vec<i64> = add(&[&e(2), &e(3), &e(4), &e(6)])
            .iter()
            .map(|c| -c)
            .collect();
        let u1_roots = [
            r0.clone(),
            e(3),
            add(&[&e(2), &e(3), &e(4)]),
            add(&[&e(1), &e(2), &e(3), &e(4), &e(5)]),
        ];
        let u2_roots = [
            e(5),
            e(3),
            add(&[&e(6), &e(3), &e(2)]),
            add(&[&r0, &e(6), &e(3), &e(2), &e(1)]),
        ];
        let u3_roots = [
            e(1),
            e(3),
            add(&[&e(4), &e(3), &e(6)]),
            add(&[&e(5), &e(4), &e(3), &e(6), &r0]),
        ];
        let product = |roots: &[Vec<i64>; 4]| {
            roots
                .iter()
                .map(|r| reflection_in(rs.gram(), r))
                .fold(GroupElement::identity(6), |acc, s| acc.mul(&s))
        };
        let u1 = product(&u1_roots);
        let u2 = product(&u2_roots);
        let u3 = product(&u3_roots);
        let t = reflection_in(rs.gram(), &r_t);
        Self {
            r0,
            r_t,
            t,
            u1,
            u2,
            u3,
            u1_roots,
            u2_roots,
            u3_roots,
        }
    }
}

/// True when `|det| = 1`, i.e. the matrix is invertible over the integers.
pub fn is_unimodular(m: &IntMatrix) -> bool {
    m.det().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> Vec<i64> {
        let mut v = vec![0; 6];
        v[i - 1] = 1;
        v
    }

    #[test]
    fn root_counts() {
        let a1 = RootSystem::from_cartan(&IntMatrix::from_rows(&[[2]])).unwrap();
        assert_eq!(a1.roots().len(), 2);
        let a2 = RootSystem::from_cartan(&cartan_from_edges(2, &[(0, 1)])).unwrap();
        assert_eq!(a2.roots().len(), 6);
        let e6 = RootSystem::e6();
        assert_eq!(e6.roots().len(), 72);
        assert_eq!(e6.positive_roots().count(), 36);
    }

    #[test]
    fn rejects_bad_cartan_matrices() {
        let asym = IntMatrix::from_rows(&[[2, -1], [0, 2]]);
        assert!(matches!(
            RootSystem::from_cartan(&asym),
            Err(RootSystemError::InvalidCartan(_))
        ));
        let b2 = IntMatrix::from_rows(&[[2, -2], [-1, 2]]);
        assert!(matches!(
            RootSystem::from_cartan(&b2),
            Err(RootSystemError::InvalidCartan(_))
        ));
        // Affine A2 (a triangle) has infinitely many roots.
        let affine = cartan_from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert!(matches!(
            RootSystem::from_cartan(&affine),
            Err(RootSystemError::InvalidCartan(_))
        ));
    }

    #[test]
    fn r0_geometry() {
        let rs = RootSystem::e6();
        let r0 = rs.r0();
        assert_eq!(r0, vec![-1, -2, -3, -2, -1, -2]);
        for i in 1..=5 {
            assert_eq!(rs.inner(&r0, &e(i)), 0);
        }
        assert_eq!(rs.inner(&r0, &e(6)), -1);
        let sp = rs.special_elements().unwrap();
        let twice: Vec<i64> = sp.r_t.iter().map(|c| 2 * c).collect();
        let sum: Vec<i64> = (0..6)
            .map(|i| r0[i] + e(3)[i] + e(1)[i] + e(5)[i])
            .collect();
        assert_eq!(twice, sum);
    }

    #[test]
    fn reflections() {
        let rs = RootSystem::e6();
        let s1 = rs.reflection_matrix(&e(1)).unwrap();
        assert_eq!(s1.apply(&e(3)), e(3));
        assert_eq!(s1.apply(&e(1)), vec![-1, 0, 0, 0, 0, 0]);
        assert!(s1.mul(&s1).is_identity());
        let s0 = rs.parse_word("s0").unwrap();
        for i in 1..=5 {
            assert!(s0.commutes_with(&rs.parse_word(&format!("s{i}")).unwrap()));
        }
        assert_eq!(rs.parse_word("s0 s6").unwrap().order(), 3);
        assert!(matches!(
            rs.reflection_matrix(&[1, 1, 0, 0, 0, 1]),
            Err(RootSystemError::NotARoot(_))
        ));
    }

    #[test]
    fn special_element_relations() {
        let rs = RootSystem::e6();
        let sp = rs.special_elements().unwrap();
        assert!(sp.u1.mul(&sp.u1).is_identity());
        assert!(sp.u2.mul(&sp.u2).is_identity());
        assert_eq!(sp.u1.mul(&sp.u2).order(), 3);
        assert_eq!(sp.u3, sp.u1.mul(&sp.u2).mul(&sp.u1));
        assert_eq!(sp.u3, sp.u2.mul(&sp.u1).mul(&sp.u2));
        for roots in [&sp.u1_roots, &sp.u2_roots, &sp.u3_roots] {
            for a in roots.iter() {
                assert!(rs.is_root(a));
                for b in roots.iter().filter(|b| *b != a) {
                    assert_eq!(rs.inner(a, b), 0);
                }
            }
        }
        assert_eq!(sp.u1.apply(&e(6)), vec![0, 0, 0, 0, 0, -1]);
        assert_eq!(rs.parse_word("s3^{s2 s4 s6}").unwrap(), sp.t);
    }

    #[test]
    fn special_elements_conjugate_generators() {
        let rs = RootSystem::e6();
        let g = |w: &str| rs.parse_word(w).unwrap();
        let u1 = g("u1");
        let u2 = g("u2");
        let pairs_u1 = [
            ("s2", "s4"),
            ("s4", "s2"),
            ("s1", "s5"),
            ("s5", "s1"),
            ("s0", "s0"),
            ("s3", "s3"),
            ("s6", "s6"),
        ];
        for (a, b) in pairs_u1 {
            assert_eq!(g(a).conjugate_by(&u1), g(b), "u1 on {a}");
        }
        let pairs_u2 = [
            ("s6", "s2"),
            ("s2", "s6"),
            ("s0", "s1"),
            ("s1", "s0"),
            ("s3", "s3"),
            ("s4", "s4"),
            ("s5", "s5"),
        ];
        for (a, b) in pairs_u2 {
            assert_eq!(g(a).conjugate_by(&u2), g(b), "u2 on {a}");
        }
    }

    #[test]
    fn centre_quotients() {
        assert_eq!(RootSystem::e6().centre_quotient(), vec![BigInt::from(3)]);
        let a1 = RootSystem::from_cartan(&IntMatrix::from_rows(&[[2]])).unwrap();
        assert_eq!(a1.centre_quotient(), vec![BigInt::from(2)]);
        let d4 = RootSystem::from_cartan(&cartan_from_edges(4, &[(0, 1), (1, 2), (1, 3)])).unwrap();
        assert_eq!(d4.centre_quotient(), vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn weyl_group_acts_trivially_on_centre() {
        let rs = RootSystem::e6();
        let ginv = rs.gram_inverse();
        for s in rs.simple_reflections() {
            for j in 0..6 {
                let x = ginv.column(j);
                let sx = s.matrix().to_rational().mul_vec(&x);
                assert!((&sx - &x).is_integral());
            }
        }
    }

    #[test]
    fn s0_s6_a2_representative() {
        let rs = RootSystem::e6();
        let w = rs.parse_word("s0 s6").unwrap();
        assert_eq!(w.order(), 3);
        let ker =
            crate::exact_linalg::kernel_basis_rational(&(&IntMatrix::identity(6) - &w.matrix()));
        assert_eq!(ker.len(), 4);
        assert!(rs.preserves_roots(&w));
    }

    #[test]
    fn dual_action_identities() {
        let rs = RootSystem::e6();
        assert_eq!(
            dual_action(&GroupElement::identity(6)),
            IntMatrix::identity(6)
        );
        let w = rs.parse_word("s0 s1 s5 s3").unwrap();
        assert_eq!(dual_action(&w), w.matrix().transpose());
        let x = rs.parse_word("s1 s2 s3 s4 s5 s6").unwrap();
        assert_eq!(dual_action(&x.inverse()).transpose(), x.matrix());
        for w in [w, x, rs.parse_word("u1 s2").unwrap()] {
            assert_eq!(rs.weight_action(&w).matrix(), dual_action(&w));
        }
    }
}
