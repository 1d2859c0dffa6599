//! Rational cohomology of the sectors `T^w / Z_W(w)` and the K-theory ranks they add up to.
//!
//! `T^w` is a disjoint union of `|F_w|` copies of a `d`-torus with Lie algebra `t^w`, so
//! `H^k(T^w) = ⊕_components Λ^k (t^w)^*`. An element `g` of the centraliser permutes the
//! components and acts on each torus through its linear part `R_g = g|t^w` (translations act
//! trivially on cohomology). The invariant part therefore has dimension
//!
//! ```text
//! b_k = (1/|Z|) Σ_{g ∈ Z} fix(g) · tr Λ^k R_g
//! ```
//!
//! where `fix(g)` counts the components `g` maps to themselves. Using `R_g` instead of the
//! contragredient `R_{g⁻¹}ᵀ` is harmless: both have the same eigenvalues since `R_g` has
//! finite order and integer entries.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::root_system::{GroupElement, RootSystem};
use crate::torus_fixed::{FixedSet, FixedSetReport, LatticeSide};
use crate::weyl_group::{ClassTable, ConjugacyClass, Group};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SectorError {
    #[error("class {label}, {side} side: b_{degree} = {value} is not a nonnegative integer")]
    NonIntegralBetti {
        label: String,
        side: &'static str,
        degree: usize,
        value: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectorReport {
    pub label: String,
    pub side: LatticeSide,
    pub torus_dim: usize,
    /// `b_0, …, b_d`.
    pub betti: Vec<u64>,
    pub euler: i64,
}

impl SectorReport {
    /// Betti numbers with trailing zeros removed.
    pub fn betti_trimmed(&self) -> Vec<u64> {
        let mut b = self.betti.clone();
        while b.len() > 1 && b.last() == Some(&0) {
            b.pop();
        }
        b
    }

    pub fn even(&self) -> u64 {
        self.betti.iter().step_by(2).sum()
    }

    pub fn odd(&self) -> u64 {
        self.betti.iter().skip(1).step_by(2).sum()
    }
}

/// `tr Λ^k M` for `k = 0..=d`, from the characteristic polynomial by Faddeev–LeVerrier.
/// Entries of the restricted matrices are small, so machine integers suffice.
fn exterior_traces_small(m: &[i64], d: usize) -> Vec<i64> {
    let mut coeffs = vec![0i64; d + 1];
    coeffs[d] = 1;
    let mut mk = vec![0i64; d * d];
    let mul = |a: &[i64], b: &[i64]| -> Vec<i64> {
        let mut out = vec![0i64; d * d];
        for i in 0..d {
            for k in 0..d {
                let x = a[i * d + k];
                if x != 0 {
                    for j in 0..d {
                        out[i * d + j] += x * b[k * d + j];
                    }
                }
            }
        }
        out
    };
    for k in 1..=d {
        let mut next = mul(m, &mk);
        for i in 0..d {
            next[i * d + i] += coeffs[d - k + 1];
        }
        mk = next;
        let prod = mul(m, &mk);
        let tr: i64 = (0..d).map(|i| prod[i * d + i]).sum();
        debug_assert_eq!(tr % k as i64, 0);
        coeffs[d - k] = -tr / k as i64;
    }
    (0..=d)
        .map(|k| {
            if k % 2 == 0 {
                coeffs[d - k]
            } else {
                -coeffs[d - k]
            }
        })
        .collect()
}

/// Restriction of centralising elements to `ker(I − A) ∩ L`, in the basis given by the
/// trailing columns of `V` from the Smith form of `I − A`.
struct KernelRestriction {
    n: usize,
    d: usize,
    kernel: Vec<i64>,
    /// Last `d` rows of `V⁻¹`.
    v_inverse_tail: Vec<i64>,
}

impl KernelRestriction {
    fn new(fs: &FixedSet) -> Self {
        let snf = fs.snf();
        let n = snf.v.rows();
        let r = snf.rank();
        let d = n - r;
        let v_inv = snf
            .v
            .to_rational()
            .inverse()
            .and_then(|m| m.to_integer())
            .expect("V is unimodular");
        let small = |x: &BigInt| x.to_i64().expect("small basis entry");
        let kernel = (0..n)
            .flat_map(|i| (r..n).map(move |j| (i, j)))
            .map(|(i, j)| small(snf.v.get(i, j)))
            .collect();
        let v_inverse_tail = (r..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| small(v_inv.get(i, j)))
            .collect();
        Self {
            n,
            d,
            kernel,
            v_inverse_tail,
        }
    }

    /// `R` with `A_g K = K R`.
    fn restrict(&self, g: &GroupElement) -> Vec<i64> {
        let (n, d) = (self.n, self.d);
        let mut gk = vec![0i64; n * d];
        for i in 0..n {
            for k in 0..n {
                let x = g.get(i, k) as i64;
                if x != 0 {
                    for j in 0..d {
                        gk[i * d + j] += x * self.kernel[k * d + j];
                    }
                }
            }
        }
        let mut r = vec![0i64; d * d];
        for i in 0..d {
            for k in 0..n {
                let x = self.v_inverse_tail[i * n + k];
                if x != 0 {
                    for j in 0..d {
                        r[i * d + j] += x * gk[k * d + j];
                    }
                }
            }
        }
        r
    }
}

fn fixed_components(fs: &FixedSet, g_side: &GroupElement) -> i64 {
    if fs.order() == 1 {
        return 1;
    }
    fs.permutation(g_side)
        .iter()
        .enumerate()
        .filter(|(i, &j)| *i == j)
        .count() as i64
}

/// Betti numbers of `T^w / Z` for `Z` given as a list of elements (root coordinates).
pub fn sector_betti<'a, I>(
    rs: &RootSystem,
    w: &GroupElement,
    label: &str,
    centraliser: I,
    side: LatticeSide,
) -> Result<SectorReport, SectorError>
where
    I: IntoParallelIterator<Item = &'a GroupElement>,
{
    let fs = FixedSet::new(rs, w, side);
    let restriction = KernelRestriction::new(&fs);
    let d = restriction.d;
    let (count, sums) = centraliser
        .into_par_iter()
        .map(|g| {
            let a = side.action_of(rs, g);
            let fix = fixed_components(&fs, &a);
            let traces = exterior_traces_small(&restriction.restrict(&a), d);
            (
                1i64,
                traces.into_iter().map(|t| fix * t).collect::<Vec<i64>>(),
            )
        })
        .reduce(
            || (0, vec![0; d + 1]),
            |(c1, s1), (c2, s2)| (c1 + c2, s1.iter().zip(&s2).map(|(a, b)| a + b).collect()),
        );
    let mut betti = Vec::with_capacity(d + 1);
    for (k, s) in sums.iter().enumerate() {
        let v = BigRational::new(BigInt::from(*s), BigInt::from(count));
        if !v.is_integer() || v.is_negative() {
            return Err(SectorError::NonIntegralBetti {
                label: label.to_string(),
                side: side.name(),
                degree: k,
                value: v.to_string(),
            });
        }
        betti.push(v.to_integer().to_u64().unwrap());
    }
    let euler = betti
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    Ok(SectorReport {
        label: label.to_string(),
        side,
        torus_dim: d,
        betti,
        euler,
    })
}

/// Euler characteristic of the sector from `det(I − R_g)`, independently of the Betti sum.
pub fn sector_euler_by_determinant<'a, I>(
    rs: &RootSystem,
    w: &GroupElement,
    centraliser: I,
    side: LatticeSide,
) -> BigRational
where
    I: IntoIterator<Item = &'a GroupElement>,
{
    let fs = FixedSet::new(rs, w, side);
    let restriction = KernelRestriction::new(&fs);
    let d = restriction.d;
    let mut total = BigInt::zero();
    let mut count = 0i64;
    for g in centraliser {
        let a = side.action_of(rs, g);
        let r = restriction.restrict(&a);
        let mut i_minus_r = crate::exact_linalg::IntMatrix::identity(d);
        for i in 0..d {
            for j in 0..d {
                *i_minus_r.get_mut(i, j) -= r[i * d + j];
            }
        }
        total += BigInt::from(fixed_components(&fs, &a)) * i_minus_r.det();
        count += 1;
    }
    BigRational::new(total, BigInt::from(count))
}

fn class_sector(
    rs: &RootSystem,
    group: &Group,
    class: &ConjugacyClass,
    side: LatticeSide,
) -> Result<SectorReport, SectorError> {
    let elements: Vec<&GroupElement> = class.centraliser.elements(group).collect();
    sector_betti(rs, &class.representative, &class.label, elements, side)
}

/// One sector per conjugacy class.
pub fn extended_quotient_report(
    rs: &RootSystem,
    group: &Group,
    table: &ClassTable,
    side: LatticeSide,
) -> Result<Vec<SectorReport>, SectorError> {
    table
        .classes
        .par_iter()
        .map(|c| class_sector(rs, group, c, side))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KTheoryClassRow {
    pub label: String,
    pub even: u64,
    pub odd: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KTheoryReport {
    pub side: LatticeSide,
    pub k0: u64,
    pub k1: u64,
    pub per_class: Vec<KTheoryClassRow>,
}

/// Ranks of `K_0` and `K_1`: total even and odd Betti numbers over all sectors.
pub fn ktheory(sectors: &[SectorReport]) -> KTheoryReport {
    let per_class: Vec<KTheoryClassRow> = sectors
        .iter()
        .map(|s| KTheoryClassRow {
            label: s.label.clone(),
            even: s.even(),
            odd: s.odd(),
        })
        .collect();
    KTheoryReport {
        side: sectors.first().map_or(LatticeSide::Root, |s| s.side),
        k0: per_class.iter().map(|r| r.even).sum(),
        k1: per_class.iter().map(|r| r.odd).sum(),
        per_class,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FormComparisonRow {
    pub label: String,
    pub fixed_set_type_equal: bool,
    pub betti_equal: bool,
    pub orbit_count_equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormComparison {
    pub rows: Vec<FormComparisonRow>,
    pub all_equal: bool,
    /// Only Betti numbers are compared; equality is consistent with, not a proof of, a
    /// homotopy equivalence of sectors.
    pub status: &'static str,
}

/// Compares the two sides class by class: fixed-set type, sector Betti numbers, orbit counts.
pub fn compare_forms(
    root_fixed: &[FixedSetReport],
    weight_fixed: &[FixedSetReport],
    root_sectors: &[SectorReport],
    weight_sectors: &[SectorReport],
) -> FormComparison {
    let rows: Vec<FormComparisonRow> = root_fixed
        .iter()
        .zip(weight_fixed)
        .zip(root_sectors.iter().zip(weight_sectors))
        .map(|((rf, wf), (rs, ws))| FormComparisonRow {
            label: rf.label.clone(),
            fixed_set_type_equal: rf.torus_dim == wf.torus_dim
                && rf.invariant_factors == wf.invariant_factors,
            betti_equal: rs.betti == ws.betti,
            orbit_count_equal: rf.orbit_count == wf.orbit_count,
        })
        .collect();
    let all_equal = rows
        .iter()
        .all(|r| r.fixed_set_type_equal && r.betti_equal && r.orbit_count_equal);
    FormComparison {
        rows,
        all_equal,
        status: if all_equal {
            "consistent at cohomology level"
        } else {
            "inconsistent"
        },
    }
}

/// Sector table: one row per class with Betti numbers on each side present.
pub fn sectors_markdown(sectors: &[&[SectorReport]]) -> String {
    let mut out = String::from("| Type | Side | dim | Betti | χ |\n|---|---|---|---|---|\n");
    for side in sectors {
        for s in *side {
            let betti: Vec<String> = s.betti_trimmed().iter().map(u64::to_string).collect();
            out.push_str(&format!(
                "| {} | {} | {} | ({}) | {} |\n",
                s.label,
                s.side.name(),
                s.torus_dim,
                betti.join(", "),
                s.euler
            ));
        }
    }
    out
}

pub fn ktheory_markdown(reports: &[KTheoryReport]) -> String {
    let mut out = String::from("| Side | K0 rank | K1 rank |\n|---|---|---|\n");
    for r in reports {
        out.push_str(&format!("| {} | {} | {} |\n", r.side.name(), r.k0, r.k1));
    }
    out
}

/// `|F_w| · C(d, k)`: the Betti numbers of `T^w` itself.
pub fn fixed_set_betti(fs: &FixedSet) -> Vec<u64> {
    let d = fs.torus_dim() as u64;
    let mut binom = 1u64;
    (0..=d)
        .map(|k| {
            let b = fs.order() as u64 * binom;
            binom = binom * (d - k) / (k + 1);
            b
        })
        .collect()
}

/// True when `Σ_g fix(g) tr Λ^k R_g` over the trivial group reproduces [`fixed_set_betti`].
pub fn trivial_average_matches(rs: &RootSystem, w: &GroupElement, side: LatticeSide) -> bool {
    let id = GroupElement::identity(w.dim());
    let fs = FixedSet::new(rs, w, side);
    sector_betti(rs, w, "", vec![&id], side).is_ok_and(|r| r.betti == fixed_set_betti(&fs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{exterior_traces, IntMatrix};

    #[test]
    fn small_traces_match_exact_ones() {
        let m = [0i64, -1, 0, 1, -1, 0, 0, 0, -1];
        let exact = exterior_traces(&IntMatrix::from_i64(3, 3, &m)).unwrap();
        let small = exterior_traces_small(&m, 3);
        assert_eq!(
            exact,
            small.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()
        );
        assert_eq!(exterior_traces_small(&[], 0), vec![1]);
    }

    #[test]
    fn identity_sector_is_contractible() {
        let rs = RootSystem::e6();
        let group = Group::enumerate(&rs).unwrap();
        let id = GroupElement::identity(6);
        for side in LatticeSide::BOTH {
            let r = sector_betti(&rs, &id, "∅", group.elements(), side).unwrap();
            assert_eq!(r.betti, vec![1, 0, 0, 0, 0, 0, 0]);
            assert_eq!(r.euler, 1);
        }
    }

    #[test]
    fn betti_of_fixed_set() {
        let rs = RootSystem::e6();
        let w = rs.parse_word("s0 s1 s5 s3").unwrap();
        let fs = FixedSet::new(&rs, &w, LatticeSide::Root);
        assert_eq!(fixed_set_betti(&fs), vec![4, 8, 4]);
        assert!(trivial_average_matches(&rs, &w, LatticeSide::Root));
    }
}
