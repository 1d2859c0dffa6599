use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U·M·V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `D`, in divisibility order (units included).
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Invariant factors greater than one: the torsion of the cokernel.
    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    /// Order of the torsion subgroup of the cokernel.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Re-derives `U·M·V = D` and the unimodularity of `U`, `V`.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let lhs = &(&self.u * m) * &self.v;
        lhs == self.d && self.u.det().abs().is_one() && self.v.det().abs().is_one()
    }
}

/// Smith normal form. The pivot is always the nonzero entry of least absolute value in the
/// remaining block, found by a row-major scan.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let mut clean = true;
        for i in t + 1..rows {
            if a.get(i, t).is_zero() {
                continue;
            }
            let q = a.get(i, t).div_floor(a.get(t, t));
            a.sub_row_multiple(i, t, &q);
            u.sub_row_multiple(i, t, &q);
            clean &= a.get(i, t).is_zero();
        }
        for j in t + 1..cols {
            if a.get(t, j).is_zero() {
                continue;
            }
            let q = a.get(t, j).div_floor(a.get(t, t));
            a.sub_col_multiple(j, t, &q);
            v.sub_col_multiple(j, t, &q);
            clean &= a.get(t, j).is_zero();
        }
        if !clean {
            continue;
        }

        // Pivot row and column are clear; enforce divisibility of the remaining block.
        let pivot = a.get(t, t).clone();
        let offender =
            (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
        if let Some(i) = offender {
            let minus_one = BigInt::from(-1);
            a.sub_row_multiple(t, i, &minus_one);
            u.sub_row_multiple(t, i, &minus_one);
            continue;
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let invariant_factors = (0..rows.min(cols))
        .map(|i| a.get(i, i).clone())
        .take_while(|x| !x.is_zero())
        .collect();
    SnfResult {
        u,
        d: a,
        v,
        invariant_factors,
    }
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_example() {
        let m = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        let r = smith_normal_form(&m);
        assert!(r.verify(&m));
        let f: Vec<i64> = r
            .invariant_factors
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(f, vec![2, 6, 12]);
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let m = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]]);
        let r = smith_normal_form(&m);
        assert!(r.verify(&m));
        assert_eq!(r.rank(), 1);
        assert_eq!(r.invariant_factors, vec![BigInt::one()]);
    }

    #[test]
    fn divisibility_fixup_is_exercised() {
        // diag(2, 3) is diagonal but not in Smith form.
        let m = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        let r = smith_normal_form(&m);
        assert!(r.verify(&m));
        assert_eq!(r.invariant_factors, vec![BigInt::from(1), BigInt::from(6)]);
    }
}
