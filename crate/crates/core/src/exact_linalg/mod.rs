//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers and rationals; nothing rounds.
//! The Smith normal form is the workhorse: cokernels of `I − w` give component groups,
//! its change-of-basis matrices give generators and particular solutions.

mod matrix;
mod poly;
mod snf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use matrix::{IntMatrix, RatMatrix, RatVector};
pub use poly::{
    char_poly, cyclotomic, cyclotomic_multiset, min_poly, IntPoly, CYCLOTOMIC_SEARCH_BOUND,
};
pub use snf::{smith_normal_form, SnfResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("minor size {r} out of range 1..={max}")]
    RankOutOfRange { r: usize, max: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("non-cyclotomic factor remains: {remainder}")]
    NotRootOfUnitySpectrum { remainder: String },
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// gcd of all `r×r` minors; zero when every minor vanishes.
pub fn gcd_minors(m: &IntMatrix, r: usize) -> Result<BigInt, LinalgError> {
    let max = m.rows().min(m.cols());
    if r == 0 || r > max {
        return Err(LinalgError::RankOutOfRange { r, max });
    }
    let row_sets = combinations(m.rows(), r);
    let col_sets = combinations(m.cols(), r);
    let mut g = BigInt::zero();
    for rs in &row_sets {
        for cs in &col_sets {
            g = g.gcd(&m.submatrix(rs, cs).det());
            if g.is_one() {
                return Ok(g);
            }
        }
    }
    Ok(g)
}

pub fn rank_rational(m: &IntMatrix) -> usize {
    m.to_rational().rank()
}

/// Basis of the rational kernel, one vector per free column of the RREF.
pub fn kernel_basis_rational(m: &IntMatrix) -> Vec<RatVector> {
    let (r, pivots) = m.to_rational().rref();
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, f).clone();
            }
            RatVector::new(v)
        })
        .collect()
}

/// Z-basis of `ker(M) ∩ Zⁿ`: the trailing columns of `V` in `U·M·V = D`.
pub fn kernel_basis_integral(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    (snf.rank()..m.cols()).map(|j| snf.v.column(j)).collect()
}

/// Solves `M·x = b` over the integers, deciding solvability through the Smith form.
pub fn solve_in_column_lattice(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    solve_with_snf(m, &smith_normal_form(m), b)
}

/// As [`solve_in_column_lattice`] with a precomputed Smith form of `m`.
pub fn solve_with_snf(m: &IntMatrix, snf: &SnfResult, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), m.rows(), "right-hand side has wrong length");
    let c = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, ci) in c.iter().enumerate() {
        match snf.invariant_factors.get(i) {
            Some(d) => {
                let (q, r) = ci.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
            None if !ci.is_zero() => return None,
            None => {}
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Trace of the k-th exterior power: the sum of principal `k×k` minors.
pub fn exterior_trace(m: &IntMatrix, k: usize) -> Result<BigInt, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if k > m.rows() {
        return Err(LinalgError::RankOutOfRange {
            r: k,
            max: m.rows(),
        });
    }
    Ok(combinations(m.rows(), k)
        .iter()
        .map(|s| m.submatrix(s, s).det())
        .sum())
}

/// All exterior traces `tr Λ^k M` for `k = 0..=n`, read off the characteristic polynomial:
/// `tr Λ^k M = (−1)^k · [t^{n−k}] det(tI − M)`.
pub fn exterior_traces(m: &IntMatrix) -> Result<Vec<BigInt>, LinalgError> {
    let p = char_poly(m)?;
    let n = m.rows();
    Ok((0..=n)
        .map(|k| {
            let c = p.coeff(n - k);
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The A₁⁴ example matrix, columns are images of the simple roots.
    fn a1_4_example() -> IntMatrix {
        IntMatrix::from_rows(&[
            [-1, 1, 0, 0, 0, -1],
            [0, 1, 0, 0, 0, -2],
            [0, 1, -1, 1, 0, -2],
            [0, 0, 0, 1, 0, -2],
            [0, 0, 0, 1, -1, -1],
            [0, 0, 0, 0, 0, -1],
        ])
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_trivial_cases() {
        let z = smith_normal_form(&IntMatrix::zeros(6, 6));
        assert!(z.d.is_zero());
        assert!(z.invariant_factors.is_empty());
        let i = smith_normal_form(&IntMatrix::identity(6));
        assert_eq!(i.d, IntMatrix::identity(6));
        assert_eq!(i.invariant_factors, big(&[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn example_matrix_component_order_is_four() {
        let m = a1_4_example();
        let i_minus = &IntMatrix::identity(6) - &m;
        let snf = smith_normal_form(&i_minus);
        assert!(snf.verify(&i_minus));
        assert_eq!(snf.torsion_order(), BigInt::from(4));
        assert_eq!(rank_rational(&i_minus), 4);
        assert_eq!(gcd_minors(&i_minus, 4).unwrap(), BigInt::from(4));
        assert_eq!(
            gcd_minors(&i_minus.transpose(), 4).unwrap(),
            BigInt::from(4)
        );
    }

    #[test]
    fn gcd_minors_range_and_identity() {
        let id = IntMatrix::identity(6);
        assert_eq!(gcd_minors(&id, 3).unwrap(), BigInt::one());
        assert!(matches!(
            gcd_minors(&id, 0),
            Err(LinalgError::RankOutOfRange { .. })
        ));
        assert!(matches!(
            gcd_minors(&id, 7),
            Err(LinalgError::RankOutOfRange { .. })
        ));
        assert_eq!(
            gcd_minors(&IntMatrix::zeros(3, 3), 2).unwrap(),
            BigInt::zero()
        );
    }

    #[test]
    fn kernels() {
        assert!(kernel_basis_rational(&IntMatrix::identity(4)).is_empty());
        assert_eq!(kernel_basis_rational(&IntMatrix::zeros(6, 6)).len(), 6);
        let m = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]]);
        let k = kernel_basis_rational(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.to_rational().mul_vec(v).is_zero());
        }
        let ki = kernel_basis_integral(&m);
        assert_eq!(ki.len(), 2);
        for v in &ki {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn lattice_solving() {
        let b = big(&[3, -1, 4]);
        assert_eq!(
            solve_in_column_lattice(&IntMatrix::identity(3), &b),
            Some(b.clone())
        );
        let two = IntMatrix::identity(3).scale(&BigInt::from(2));
        assert_eq!(solve_in_column_lattice(&two, &big(&[1, 2, 2])), None);
        assert_eq!(
            solve_in_column_lattice(&two, &big(&[2, 2, -4])),
            Some(big(&[1, 1, -2]))
        );
        // Rank-deficient: b outside the rational image.
        let m = IntMatrix::from_rows(&[[1, 0], [0, 0]]);
        assert_eq!(solve_in_column_lattice(&m, &big(&[1, 1])), None);
    }

    #[test]
    fn polynomials_of_identity_and_reflection() {
        let id = IntMatrix::identity(6);
        let cp = char_poly(&id).unwrap();
        assert_eq!(cyclotomic_multiset(&cp).unwrap(), vec![(1, 6)]);
        assert_eq!(min_poly(&id).unwrap(), IntPoly::linear(1));
        let refl = IntMatrix::from_rows(&[[-1, 1], [0, 1]]);
        assert_eq!(char_poly(&refl).unwrap(), IntPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(min_poly(&refl).unwrap(), IntPoly::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn exterior_trace_basics() {
        let m = IntMatrix::from_rows(&[[2, 1, 0], [1, 3, 1], [0, 1, 4]]);
        assert_eq!(exterior_trace(&m, 0).unwrap(), BigInt::one());
        assert_eq!(exterior_trace(&m, 3).unwrap(), m.det());
        assert_eq!(exterior_trace(&m, 1).unwrap(), m.trace());
        for n in 1..=6usize {
            let id = IntMatrix::identity(n);
            for k in 0..=n {
                let binom = combinations(n, k).len();
                assert_eq!(exterior_trace(&id, k).unwrap(), BigInt::from(binom));
            }
        }
        assert_eq!(
            exterior_traces(&m).unwrap(),
            (0..=3)
                .map(|k| exterior_trace(&m, k).unwrap())
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(6, 4).len(), 15);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
