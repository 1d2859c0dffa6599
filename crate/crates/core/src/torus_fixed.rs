//! Fixed sets `T^w` of a Weyl group element on `t/Γ` (root side) and `t/Γ^∨` (weight side).
//!
//! Root-side points use simple-root coordinates, weight-side points fundamental-weight
//! coordinates; in both cases the lattice is `Zⁿ` and a point is a vector modulo 1. With
//! `B = I − A` (A the action on the chosen side) and `U·B·V = D` its Smith form, a point `x`
//! is fixed iff `Bx` is integral, and its component is the class of `Bx` in the torsion of
//! `Zⁿ/BZⁿ`, read off as `(U·Bx)_i mod d_i`.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::exact_linalg::{
    gcd_minors, kernel_basis_rational, min_poly, smith_normal_form, solve_with_snf, IntMatrix,
    IntPoly, RatMatrix, RatVector, SnfResult,
};
use crate::root_system::{GroupElement, RootSystem};
use crate::weyl_group::Group;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("the identity element has no twisted pairing")]
    IdentityElement,
    #[error("point {0} is not fixed")]
    NotFixed(String),
    #[error("vector {0:?} is not orthogonal to the fixed subspace")]
    NotOrthogonal(Vec<String>),
    #[error("duality check failed for {label}: {witness}")]
    DualityFailure { label: String, witness: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeSide {
    /// `t/Γ`, coordinates in the simple roots.
    Root,
    /// `t/Γ^∨`, coordinates in the fundamental weights.
    Weight,
}

impl LatticeSide {
    pub const BOTH: [LatticeSide; 2] = [LatticeSide::Root, LatticeSide::Weight];

    pub fn name(self) -> &'static str {
        match self {
            LatticeSide::Root => "root",
            LatticeSide::Weight => "weight",
        }
    }

    pub fn dual(self) -> Self {
        match self {
            LatticeSide::Root => LatticeSide::Weight,
            LatticeSide::Weight => LatticeSide::Root,
        }
    }

    /// Matrix of `g` in this side's coordinates. The two actions are contragredient.
    pub fn action_of(self, rs: &RootSystem, g: &GroupElement) -> GroupElement {
        match self {
            LatticeSide::Root => g.clone(),
            LatticeSide::Weight => rs.weight_action(g),
        }
    }

    /// The invariant inner product in this side's coordinates: `G` or `G⁻¹`.
    pub fn form(self, rs: &RootSystem) -> RatMatrix {
        match self {
            LatticeSide::Root => rs.gram().to_rational(),
            LatticeSide::Weight => rs.gram_inverse().clone(),
        }
    }
}

fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// A point of `t/L`, coordinates reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    coords: RatVector,
}

impl TorusPoint {
    pub fn new(coords: RatVector) -> Self {
        Self {
            coords: coords.fractional_part(),
        }
    }

    pub fn origin(n: usize) -> Self {
        Self {
            coords: RatVector::zeros(n),
        }
    }

    pub fn coords(&self) -> &RatVector {
        &self.coords
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.entries().iter().map(rational_string).collect()
    }

    pub fn add(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint::new(&self.coords + &other.coords)
    }
}

impl Serialize for TorusPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

fn apply_rational(g: &GroupElement, x: &RatVector) -> RatVector {
    let n = g.dim();
    RatVector::new(
        (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| g.get(i, j) != 0)
                    .map(|j| &x.entries()[j] * BigInt::from(g.get(i, j)))
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect(),
    )
}

fn apply_integral(g: &GroupElement, x: &[BigInt]) -> Vec<BigInt> {
    let n = g.dim();
    (0..n)
        .map(|i| (0..n).map(|j| &x[j] * BigInt::from(g.get(i, j))).sum())
        .collect()
}

fn i_minus(g: &GroupElement) -> IntMatrix {
    &IntMatrix::identity(g.dim()) - &g.matrix()
}

/// `T^w` on one side: Smith data of `I − A` and the induced component bookkeeping.
#[derive(Clone, Debug)]
pub struct FixedSet {
    side: LatticeSide,
    action: GroupElement,
    b: IntMatrix,
    snf: SnfResult,
    /// `(position in D, d)` for every invariant factor `d > 1`.
    torsion: Vec<(usize, BigInt)>,
    u_inverse: IntMatrix,
}

impl FixedSet {
    pub fn new(rs: &RootSystem, w: &GroupElement, side: LatticeSide) -> Self {
        let action = side.action_of(rs, w);
        let b = i_minus(&action);
        let snf = smith_normal_form(&b);
        let torsion = snf
            .invariant_factors
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_one())
            .map(|(i, d)| (i, d.clone()))
            .collect();
        let u_inverse = snf
            .u
            .to_rational()
            .inverse()
            .and_then(|m| m.to_integer())
            .expect("U is unimodular");
        Self {
            side,
            action,
            b,
            snf,
            torsion,
            u_inverse,
        }
    }

    pub fn side(&self) -> LatticeSide {
        self.side
    }

    pub fn action(&self) -> &GroupElement {
        &self.action
    }

    pub fn snf(&self) -> &SnfResult {
        &self.snf
    }

    pub fn torus_dim(&self) -> usize {
        self.b.cols() - self.snf.rank()
    }

    /// Non-unit invariant factors of `I − A`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.torsion.iter().map(|(_, d)| d.clone()).collect()
    }

    pub fn invariant_factors_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|(_, d)| d.to_u64().expect("small factor"))
            .collect()
    }

    /// `|F_w|`.
    pub fn order(&self) -> usize {
        self.torsion
            .iter()
            .map(|(_, d)| d.to_usize().expect("small factor"))
            .product()
    }

    /// Mixed-radix index, first torsion coordinate least significant.
    pub fn index_of_coeffs(&self, c: &[BigInt]) -> usize {
        let mut idx = 0usize;
        let mut stride = 1usize;
        for ((_, d), ci) in self.torsion.iter().zip(c) {
            idx += ci.mod_floor(d).to_usize().unwrap() * stride;
            stride *= d.to_usize().unwrap();
        }
        idx
    }

    pub fn coeffs_of_index(&self, mut idx: usize) -> Vec<BigInt> {
        self.torsion
            .iter()
            .map(|(_, d)| {
                let d = d.to_usize().unwrap();
                let c = idx % d;
                idx /= d;
                BigInt::from(c)
            })
            .collect()
    }

    /// One point per component, in index order: `x = V·(c/d)` on the torsion coordinates.
    pub fn component_reps(&self) -> Vec<TorusPoint> {
        let n = self.b.cols();
        (0..self.order())
            .map(|idx| {
                let c = self.coeffs_of_index(idx);
                let mut y = vec![BigRational::zero(); n];
                for ((pos, d), ci) in self.torsion.iter().zip(&c) {
                    y[*pos] = BigRational::new(ci.clone(), d.clone());
                }
                TorusPoint::new(self.snf.v.to_rational().mul_vec(&RatVector::new(y)))
            })
            .collect()
    }

    fn defect(&self, x: &TorusPoint) -> Result<Vec<BigInt>, TorusError> {
        self.b
            .to_rational()
            .mul_vec(x.coords())
            .to_integers()
            .ok_or_else(|| TorusError::NotFixed(x.to_strings().join(", ")))
    }

    pub fn is_fixed(&self, x: &TorusPoint) -> bool {
        self.defect(x).is_ok()
    }

    /// Index of the component containing `x`.
    pub fn component_index(&self, x: &TorusPoint) -> Result<usize, TorusError> {
        let t = self.defect(x)?;
        let c = self.snf.u.mul_vec(&t);
        let coeffs: Vec<BigInt> = self
            .torsion
            .iter()
            .map(|(pos, _)| c[*pos].clone())
            .collect();
        Ok(self.index_of_coeffs(&coeffs))
    }

    /// `x − y ∈ t^w + L`, decided as integral solvability of `Bz = B(x − y)`.
    pub fn same_component(&self, x: &TorusPoint, y: &TorusPoint) -> Result<bool, TorusError> {
        let tx = self.defect(x)?;
        let ty = self.defect(y)?;
        let diff: Vec<BigInt> = tx.iter().zip(&ty).map(|(a, b)| a - b).collect();
        Ok(solve_with_snf(&self.b, &self.snf, &diff).is_some())
    }

    /// Component permutation induced by `g` (given in this side's coordinates), which must
    /// commute with the action.
    pub fn permutation(&self, g: &GroupElement) -> Vec<usize> {
        if self.order() == 1 {
            return vec![0];
        }
        self.component_reps()
            .iter()
            .map(|x| {
                let gx = TorusPoint::new(apply_rational(g, x.coords()));
                self.component_index(&gx)
                    .expect("centralising elements preserve the fixed set")
            })
            .collect()
    }

    /// Generators `U⁻¹e_i` of `x_w(L)/(I − A)L`, one per non-unit invariant factor.
    pub fn coinvariant_generators(&self) -> Vec<Vec<BigInt>> {
        self.torsion
            .iter()
            .map(|(pos, _)| self.u_inverse.column(*pos))
            .collect()
    }

    /// Z-basis of `ker(I − A) ∩ L`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.snf.rank()..self.b.cols())
            .map(|j| self.snf.v.column(j))
            .collect()
    }
}

pub fn component_invariants(rs: &RootSystem, w: &GroupElement, side: LatticeSide) -> Vec<BigInt> {
    FixedSet::new(rs, w, side).invariant_factors()
}

pub fn component_reps(rs: &RootSystem, w: &GroupElement, side: LatticeSide) -> Vec<TorusPoint> {
    FixedSet::new(rs, w, side).component_reps()
}

pub fn same_component(
    rs: &RootSystem,
    w: &GroupElement,
    side: LatticeSide,
    x: &TorusPoint,
    y: &TorusPoint,
) -> Result<bool, TorusError> {
    FixedSet::new(rs, w, side).same_component(x, y)
}

/// Permutations of the components of `T^w` induced by each of `gens`.
pub fn component_action(
    rs: &RootSystem,
    w: &GroupElement,
    gens: &[GroupElement],
    side: LatticeSide,
) -> Vec<Vec<usize>> {
    let fs = FixedSet::new(rs, w, side);
    gens.iter()
        .map(|g| fs.permutation(&side.action_of(rs, g)))
        .collect()
}

/// Labels each point by its orbit under the permutations; returns the labels.
pub fn orbit_labels(points: usize, perms: &[Vec<usize>]) -> Vec<usize> {
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut parent: Vec<usize> = (0..points).collect();
    for p in perms {
        for (i, &j) in p.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..points).map(|i| find(&mut parent, i)).collect()
}

pub fn orbit_count(points: usize, perms: &[Vec<usize>]) -> usize {
    orbit_labels(points, perms)
        .into_iter()
        .collect::<HashSet<_>>()
        .len()
}

/// `μ` and `m̄` from the minimal polynomial `m` of `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuData {
    pub min_poly: IntPoly,
    pub mu: BigInt,
    pub mbar: IntPoly,
}

pub fn mu_data(w: &GroupElement) -> Result<MuData, TorusError> {
    if w.is_identity() {
        return Err(TorusError::IdentityElement);
    }
    let m = min_poly(&w.matrix()).expect("square");
    let one = BigInt::one();
    let m1 = m.eval(&one);
    let mdot = m.difference_quotient_at_one();
    let (mu, mbar) = if !m1.is_zero() {
        (m1, mdot)
    } else {
        let mu = mdot.eval(&one);
        (mu, mdot.difference_quotient_at_one())
    };
    debug_assert!(!mu.is_zero());
    Ok(MuData {
        min_poly: m,
        mu,
        mbar,
    })
}

pub fn mu_of(w: &GroupElement) -> Result<BigInt, TorusError> {
    Ok(mu_data(w)?.mu)
}

/// `m̄(A)` for the action `A` of `w` on the given side.
pub fn mbar_matrix(
    rs: &RootSystem,
    w: &GroupElement,
    side: LatticeSide,
) -> Result<IntMatrix, TorusError> {
    let data = mu_data(w)?;
    Ok(data.mbar.eval_matrix(&side.action_of(rs, w).matrix()))
}

/// Orthogonal projection onto `x_w = (t^w)^⊥`: `I − K(KᵀQK)⁻¹KᵀQ` with `K` a kernel basis
/// of `I − A` and `Q` the invariant form on this side.
pub fn coinvariant_projection(rs: &RootSystem, w: &GroupElement, side: LatticeSide) -> RatMatrix {
    let a = side.action_of(rs, w);
    let n = a.dim();
    let kernel = kernel_basis_rational(&i_minus(&a));
    if kernel.is_empty() {
        return RatMatrix::identity(n);
    }
    let k = RatMatrix::from_columns(n, &kernel);
    let q = side.form(rs);
    let kt_q = &k.transpose() * &q;
    let inner = (&kt_q * &k)
        .inverse()
        .expect("form is definite on the fixed subspace");
    &RatMatrix::identity(n) - &(&(&k * &inner) * &kt_q)
}

/// `m̄(A)(I − A) = μ·p_{x_w}` on the given side.
pub fn mu_projection_holds(
    rs: &RootSystem,
    w: &GroupElement,
    side: LatticeSide,
) -> Result<bool, TorusError> {
    let data = mu_data(w)?;
    let a = side.action_of(rs, w);
    let lhs = &data.mbar.eval_matrix(&a.matrix()) * &i_minus(&a);
    let rhs = coinvariant_projection(rs, w, side).scale(&BigRational::from_integer(data.mu));
    Ok(lhs.to_rational() == rhs)
}

fn orthogonal_to_fixed(w: &GroupElement, v: &[BigInt], form: Option<&IntMatrix>) -> bool {
    let kernel = kernel_basis_rational(&i_minus(w));
    let v = RatVector::from_integers(&match form {
        Some(g) => g.mul_vec(v),
        None => v.to_vec(),
    });
    kernel.iter().all(|k| v.dot(k).is_zero())
}

/// `⟨x, m̄(w)y⟩ mod μ` for `x ∈ x_w(Γ^∨)` in weight coordinates and `y ∈ x_w(Γ)` in root
/// coordinates. `⟨·,·⟩` is the coordinate dot product in these bases.
pub fn twisted_pairing(
    rs: &RootSystem,
    w: &GroupElement,
    x: &[BigInt],
    y: &[BigInt],
) -> Result<BigInt, TorusError> {
    let data = mu_data(w)?;
    let strings = |v: &[BigInt]| v.iter().map(ToString::to_string).collect();
    if !orthogonal_to_fixed(w, x, None) {
        return Err(TorusError::NotOrthogonal(strings(x)));
    }
    if !orthogonal_to_fixed(w, y, Some(rs.gram())) {
        return Err(TorusError::NotOrthogonal(strings(y)));
    }
    let mbar = data.mbar.eval_matrix(&w.matrix());
    Ok(pair_raw(&mbar, x, y).mod_floor(&data.mu))
}

fn pair_raw(mbar: &IntMatrix, x: &[BigInt], y: &[BigInt]) -> BigInt {
    x.iter().zip(mbar.mul_vec(y)).map(|(a, b)| a * b).sum()
}

/// Every coefficient tuple of the finite group `⊕ Z/d_i`.
fn all_elements(factors: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for d in factors {
        let d = d.to_u64().unwrap();
        out = out
            .into_iter()
            .flat_map(|c| {
                (0..d).map(move |k| {
                    let mut c = c.clone();
                    c.push(BigInt::from(k));
                    c
                })
            })
            .collect();
    }
    out
}

/// True if no nonzero element of `⊕ Z/d_i` (rows) pairs to zero with every column.
fn left_injective(matrix: &[Vec<BigInt>], factors: &[BigInt], mu: &BigInt) -> bool {
    let cols = matrix.first().map_or(0, Vec::len);
    all_elements(factors)
        .into_iter()
        .filter(|c| {
            c.iter()
                .zip(factors)
                .any(|(ci, d)| !ci.mod_floor(d).is_zero())
        })
        .all(|c| {
            (0..cols).any(|j| {
                let v: BigInt = c.iter().zip(matrix).map(|(ci, row)| ci * &row[j]).sum();
                !v.mod_floor(mu).is_zero()
            })
        })
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub label: String,
    /// True for the identity, where there is nothing to pair.
    pub vacuous: bool,
    pub mu: u64,
    pub root_factors: Vec<u64>,
    pub weight_factors: Vec<u64>,
    /// Rows: generators of `x_w(Γ^∨)/(I−w)Γ^∨`; columns: generators of `x_w(Γ)/(I−w)Γ`.
    pub pairing: Vec<Vec<u64>>,
    pub factors_agree: bool,
    pub well_defined: bool,
    pub nondegenerate: bool,
    pub equivariant: bool,
    pub mu_projection: bool,
    pub witness: Option<String>,
}

impl PairingReport {
    pub fn passed(&self) -> bool {
        self.vacuous
            || (self.factors_agree
                && self.well_defined
                && self.nondegenerate
                && self.equivariant
                && self.mu_projection)
    }

    pub fn into_result(self) -> Result<Self, TorusError> {
        if self.passed() {
            Ok(self)
        } else {
            Err(TorusError::DualityFailure {
                label: self.label.clone(),
                witness: self.witness.clone().unwrap_or_else(|| "unspecified".into()),
            })
        }
    }
}

/// Checks that the component groups on both sides agree, that the twisted pairing descends
/// to a perfect pairing of their duals, and that it is invariant under `centraliser_gens`.
pub fn verify_duality(
    rs: &RootSystem,
    w: &GroupElement,
    label: &str,
    centraliser_gens: &[GroupElement],
) -> Result<PairingReport, TorusError> {
    let root = FixedSet::new(rs, w, LatticeSide::Root);
    let weight = FixedSet::new(rs, w, LatticeSide::Weight);
    let mut report = PairingReport {
        label: label.to_string(),
        vacuous: false,
        mu: 0,
        root_factors: root.invariant_factors_u64(),
        weight_factors: weight.invariant_factors_u64(),
        pairing: Vec::new(),
        factors_agree: root.invariant_factors() == weight.invariant_factors(),
        well_defined: true,
        nondegenerate: true,
        equivariant: true,
        mu_projection: true,
        witness: None,
    };
    let data = match mu_data(w) {
        Ok(d) => d,
        Err(TorusError::IdentityElement) => {
            report.vacuous = true;
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let mu = data.mu.abs();
    report.mu = mu.to_u64().expect("small μ");
    let fail = |report: &mut PairingReport, msg: String| {
        if report.witness.is_none() {
            report.witness = Some(msg);
        }
    };

    for side in LatticeSide::BOTH {
        if !mu_projection_holds(rs, w, side)? {
            report.mu_projection = false;
            fail(
                &mut report,
                format!("m̄(w)(I−w) ≠ μ·p on the {} side", side.name()),
            );
        }
    }

    let mbar = data.mbar.eval_matrix(&w.matrix());
    let xs = weight.coinvariant_generators();
    let ys = root.coinvariant_generators();
    let value = |x: &[BigInt], y: &[BigInt]| pair_raw(&mbar, x, y).mod_floor(&mu);
    for x in &xs {
        for y in &ys {
            twisted_pairing(rs, w, x, y)?;
        }
    }
    let matrix: Vec<Vec<BigInt>> = xs
        .iter()
        .map(|x| ys.iter().map(|y| value(x, y)).collect())
        .collect();
    report.pairing = matrix
        .iter()
        .map(|row| row.iter().map(|v| v.to_u64().unwrap()).collect())
        .collect();

    // shifting by (I − w)L must not change the value
    let n = w.dim();
    let b_root = i_minus(w);
    let b_weight = i_minus(weight.action());
    for k in 0..n {
        let x_shift = b_weight.column(k);
        let y_shift = b_root.column(k);
        for y in &ys {
            if !value(&x_shift, y).is_zero() {
                report.well_defined = false;
                fail(&mut report, format!("⟨(I−w)e_{k}, y⟩ ≠ 0 for y = {y:?}"));
            }
        }
        for x in &xs {
            if !value(x, &y_shift).is_zero() {
                report.well_defined = false;
                fail(&mut report, format!("⟨x, (I−w)e_{k}⟩ ≠ 0 for x = {x:?}"));
            }
        }
    }

    let transposed: Vec<Vec<BigInt>> = (0..ys.len())
        .map(|j| matrix.iter().map(|row| row[j].clone()).collect())
        .collect();
    if !report.factors_agree
        || !left_injective(&matrix, &weight.invariant_factors(), &mu)
        || !left_injective(&transposed, &root.invariant_factors(), &mu)
    {
        report.nondegenerate = false;
        let msg = format!("pairing matrix {:?} is degenerate mod {mu}", report.pairing);
        fail(&mut report, msg);
    }

    for g in centraliser_gens {
        let gw = rs.weight_action(g);
        for (i, x) in xs.iter().enumerate() {
            let gx = apply_integral(&gw, x);
            for (j, y) in ys.iter().enumerate() {
                let gy = apply_integral(g, y);
                if value(&gx, &gy) != matrix[i][j] {
                    report.equivariant = false;
                    fail(
                        &mut report,
                        format!("⟨g·x_{i}, g·y_{j}⟩ ≠ ⟨x_{i}, y_{j}⟩ for g = {g:?}"),
                    );
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedSetReport {
    pub label: String,
    pub side: LatticeSide,
    pub torus_dim: usize,
    pub invariant_factors: Vec<u64>,
    pub component_reps: Vec<TorusPoint>,
    /// One permutation of the components per centraliser generator.
    pub component_action: Vec<Vec<usize>>,
    pub orbit_count: usize,
}

impl FixedSetReport {
    pub fn build(
        rs: &RootSystem,
        w: &GroupElement,
        label: &str,
        side: LatticeSide,
        centraliser_gens: &[GroupElement],
    ) -> Self {
        let fs = FixedSet::new(rs, w, side);
        let component_action: Vec<Vec<usize>> = centraliser_gens
            .iter()
            .map(|g| fs.permutation(&side.action_of(rs, g)))
            .collect();
        Self {
            label: label.to_string(),
            side,
            torus_dim: fs.torus_dim(),
            invariant_factors: fs.invariant_factors_u64(),
            component_reps: fs.component_reps(),
            orbit_count: orbit_count(fs.order(), &component_action),
            component_action,
        }
    }
}

fn group_string(torus_dim: usize, factors: &[u64]) -> String {
    let mut parts = Vec::new();
    if torus_dim > 0 {
        parts.push(format!("T{torus_dim}"));
    }
    parts.extend(factors.iter().map(|d| format!("C{d}")));
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("×")
    }
}

/// Fixed-set table in Markdown: torus dimension, component group and orbit count.
pub fn fixed_sets_markdown(
    reports: &[FixedSetReport],
    ramification: &[RamificationReport],
) -> String {
    let mut out = String::from("| Type | Side | Fixed set | Components | Orbits | Ramification |\n|---|---|---|---|---|---|\n");
    for r in reports {
        let kind = ramification
            .iter()
            .find(|x| x.label == r.label)
            .map_or("", |x| match x.kind {
                Ramification::Torus => "torus",
                Ramification::Component => "component",
                Ramification::Mixed => "mixed",
            });
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} |\n",
            r.label,
            r.side.name(),
            group_string(r.torus_dim, &r.invariant_factors),
            r.component_reps.len(),
            r.orbit_count,
            kind
        ));
    }
    out
}

/// Elements of `Γ^∨/Γ` as points of `t/Γ`, by closure of the fundamental weights.
pub fn centre_points(rs: &RootSystem) -> Vec<TorusPoint> {
    let n = rs.rank();
    let weights: Vec<TorusPoint> = (0..n)
        .map(|j| TorusPoint::new(rs.gram_inverse().column(j)))
        .collect();
    let mut seen: BTreeSet<TorusPoint> = BTreeSet::from([TorusPoint::origin(n)]);
    let mut frontier = vec![TorusPoint::origin(n)];
    while let Some(p) = frontier.pop() {
        for q in &weights {
            let s = p.add(q);
            if seen.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    seen.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ramification {
    /// The centre lies in the identity component of `T^w`.
    Torus,
    /// The centre injects into the component group of `T^w`.
    Component,
    /// Neither; only possible when the centre is not of prime order.
    Mixed,
}

#[derive(Clone, Debug, Serialize)]
pub struct RamificationReport {
    pub label: String,
    pub kind: Ramification,
    pub centre_order: usize,
    /// Number of components of `T^w` met by the centre.
    pub centre_image: usize,
    /// Index of the image of `F_w → F^∨_w` induced by `t/Γ → t/Γ^∨`.
    pub image_index: usize,
    /// Centraliser orbits on `F^∨_w` within each coset of that image.
    pub coset_orbit_counts: Vec<usize>,
    /// `|F_w| = |F^∨_w|`, the image has index equal to the number of components met by the
    /// centre, and the centraliser permutes the cosets of the image trivially.
    pub consistent: bool,
}

/// Classifies `w` by how the centre sits in `T^w`, and checks the matching behaviour of
/// `T^w → (T^∨)^w` on components.
pub fn ramification(
    rs: &RootSystem,
    w: &GroupElement,
    label: &str,
    centraliser_gens: &[GroupElement],
) -> RamificationReport {
    let root = FixedSet::new(rs, w, LatticeSide::Root);
    let weight = FixedSet::new(rs, w, LatticeSide::Weight);
    let centre = centre_points(rs);
    let centre_image: BTreeSet<usize> = centre
        .iter()
        .map(|z| root.component_index(z).expect("the centre is fixed by W"))
        .collect();
    let gram = rs.gram().to_rational();
    let image: BTreeSet<usize> = root
        .component_reps()
        .iter()
        .map(|x| {
            let y = TorusPoint::new(gram.mul_vec(x.coords()));
            weight
                .component_index(&y)
                .expect("image of a fixed point is fixed")
        })
        .collect();
    let image_index = weight.order() / image.len();

    let coset_of: Vec<usize> = (0..weight.order())
        .map(|k| {
            let ck = weight.coeffs_of_index(k);
            image
                .iter()
                .map(|&h| {
                    let ch = weight.coeffs_of_index(h);
                    let diff: Vec<BigInt> = ck.iter().zip(&ch).map(|(a, b)| a - b).collect();
                    weight.index_of_coeffs(&diff)
                })
                .min()
                .unwrap()
        })
        .collect();
    let perms: Vec<Vec<usize>> = centraliser_gens
        .iter()
        .map(|g| weight.permutation(&rs.weight_action(g)))
        .collect();
    let cosets_invariant = perms
        .iter()
        .all(|p| (0..p.len()).all(|k| coset_of[p[k]] == coset_of[k]));
    let labels = orbit_labels(weight.order(), &perms);
    let cosets: BTreeSet<usize> = coset_of.iter().copied().collect();
    let coset_orbit_counts: Vec<usize> = cosets
        .iter()
        .map(|&c| {
            (0..weight.order())
                .filter(|&k| coset_of[k] == c)
                .map(|k| labels[k])
                .collect::<HashSet<_>>()
                .len()
        })
        .collect();

    let kind = if centre_image.len() == 1 {
        Ramification::Torus
    } else if centre_image.len() == centre.len() {
        Ramification::Component
    } else {
        Ramification::Mixed
    };
    RamificationReport {
        label: label.to_string(),
        kind,
        centre_order: centre.len(),
        centre_image: centre_image.len(),
        image_index,
        coset_orbit_counts,
        consistent: root.order() == weight.order()
            && image_index == centre_image.len()
            && cosets_invariant,
    }
}

/// gcd of the maximal nonvanishing minors of `I − A` against the order of the torsion of
/// `Zⁿ/(I − A)Zⁿ`, on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcdMinorsCheck {
    pub rank: usize,
    pub root_gcd: u64,
    pub root_torsion: u64,
    pub weight_gcd: u64,
    pub weight_torsion: u64,
}

impl GcdMinorsCheck {
    pub fn holds(&self) -> bool {
        self.root_gcd == self.root_torsion
            && self.weight_gcd == self.weight_torsion
            && self.root_torsion == self.weight_torsion
    }
}

pub fn gcd_minors_check(rs: &RootSystem, w: &GroupElement) -> GcdMinorsCheck {
    let side = |s: LatticeSide| {
        let b = i_minus(&s.action_of(rs, w));
        let snf = smith_normal_form(&b);
        let r = snf.rank();
        let g = if r == 0 {
            BigInt::one()
        } else {
            gcd_minors(&b, r).expect("rank in range")
        };
        (
            r,
            g.to_u64().unwrap(),
            snf.torsion_order().to_u64().unwrap(),
        )
    };
    let (rank, root_gcd, root_torsion) = side(LatticeSide::Root);
    let (_, weight_gcd, weight_torsion) = side(LatticeSide::Weight);
    GcdMinorsCheck {
        rank,
        root_gcd,
        root_torsion,
        weight_gcd,
        weight_torsion,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GcdSweepReport {
    pub checked: usize,
    pub seed: u64,
    /// Row-major matrices of elements where the check fails.
    pub failures: Vec<Vec<Vec<i32>>>,
}

/// Runs [`gcd_minors_check`] on `sample` distinct elements drawn with a seeded generator,
/// or on the whole group when `sample ≥ |W|`.
pub fn gcd_minors_sweep(
    rs: &RootSystem,
    group: &Group,
    sample_size: usize,
    seed: u64,
) -> GcdSweepReport {
    use rayon::prelude::*;
    let indices: Vec<usize> = if sample_size >= group.order() {
        (0..group.order()).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = sample(&mut rng, group.order(), sample_size).into_vec();
        v.sort_unstable();
        v
    };
    let failures = indices
        .par_iter()
        .filter(|&&i| !gcd_minors_check(rs, group.element(i)).holds())
        .map(|&i| group.element(i).rows())
        .collect();
    GcdSweepReport {
        checked: indices.len(),
        seed,
        failures,
    }
}
