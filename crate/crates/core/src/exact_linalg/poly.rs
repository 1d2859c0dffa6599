use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, LinalgError, RatMatrix, RatVector};

/// Integer polynomial, coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `t - a`
    pub fn linear(a: i64) -> Self {
        Self::from_i64(&[-a, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_matrix(&self, m: &IntMatrix) -> IntMatrix {
        assert!(m.is_square());
        let n = m.rows();
        let mut acc = IntMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &IntMatrix::identity(n).scale(c);
        }
        acc
    }

    /// Division by a monic divisor: returns `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = rem[k].clone();
            if c.is_zero() {
                continue;
            }
            quot[k - d] = c.clone();
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - d + i] -= &c * dc;
            }
        }
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    pub fn divides(&self, other: &IntPoly) -> bool {
        other.div_rem_monic(self).1.is_zero()
    }

    /// `(p(t) - p(1)) / (t - 1)`, computed by synthetic division.
    pub fn difference_quotient_at_one(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        let shifted = IntPoly::new({
            let mut c = self.coeffs.clone();
            c[0] -= self.eval(&BigInt::one());
            c
        });
        let (q, r) = shifted.div_rem_monic(&IntPoly::linear(1));
        debug_assert!(r.is_zero());
        q
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &'a IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(tI - M)` by the Faddeev–LeVerrier recurrence.
/// All divisions are exact over the integers.
pub fn char_poly(m: &IntMatrix) -> Result<IntPoly, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let ident = IntMatrix::identity(n);
    let mut mk = IntMatrix::zeros(n, n);
    for k in 1..=n {
        mk = &(m * &mk) + &ident.scale(&coeffs[n - k + 1]);
        let tr = (m * &mk).trace();
        let kk = BigInt::from(k);
        debug_assert!((&tr % &kk).is_zero());
        coeffs[n - k] = -(tr / kk);
    }
    Ok(IntPoly::new(coeffs))
}

/// Minimal polynomial via the first linear dependency among `I, M, M², …`.
pub fn min_poly(m: &IntMatrix) -> Result<IntPoly, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let flatten = |p: &IntMatrix| RatVector::from_integers(p.entries());
    let mut powers = vec![flatten(&IntMatrix::identity(n))];
    let mut current = IntMatrix::identity(n);
    for k in 1..=n {
        current = &current * m;
        let target = flatten(&current);
        let basis = RatMatrix::from_columns(n * n, &powers);
        if let Some(sol) = basis.solve(&target) {
            let mut coeffs: Vec<BigInt> = Vec::with_capacity(k + 1);
            for c in sol.entries() {
                // Gauss' lemma: a monic factor of an integer char poly is integral.
                assert!(
                    c.is_integer(),
                    "non-integral minimal polynomial coefficient"
                );
                coeffs.push(-c.to_integer());
            }
            coeffs.push(BigInt::one());
            return Ok(IntPoly::new(coeffs));
        }
        powers.push(target);
    }
    unreachable!("Cayley–Hamilton guarantees a dependency by degree n")
}

/// The d-th cyclotomic polynomial, built from `t^d - 1` by dividing out `Φ_e` for proper divisors `e`.
pub fn cyclotomic(d: u32) -> IntPoly {
    assert!(d >= 1);
    let mut c = vec![BigInt::zero(); d as usize + 1];
    c[0] = BigInt::from(-1);
    c[d as usize] = BigInt::one();
    let mut p = IntPoly::new(c);
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        let (q, r) = p.div_rem_monic(&cyclotomic(e));
        debug_assert!(r.is_zero());
        p = q;
    }
    p
}

/// Largest cyclotomic index tried during factorization.
pub const CYCLOTOMIC_SEARCH_BOUND: u32 = 30;

/// Factor a monic polynomial as a product of cyclotomic polynomials.
/// Returns `(order, multiplicity)` pairs sorted by order.
pub fn cyclotomic_multiset(p: &IntPoly) -> Result<Vec<(u32, u32)>, LinalgError> {
    if !p.is_monic() {
        return Err(LinalgError::NotMonic);
    }
    let mut rest = p.clone();
    let mut out = Vec::new();
    for d in 1..=CYCLOTOMIC_SEARCH_BOUND {
        let phi = cyclotomic(d);
        let mut mult = 0;
        loop {
            let (q, r) = rest.div_rem_monic(&phi);
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            out.push((d, mult));
        }
        if rest.degree() == Some(0) {
            break;
        }
    }
    if rest != IntPoly::one() {
        return Err(LinalgError::NotRootOfUnitySpectrum {
            remainder: rest.to_string(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(3), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(9), IntPoly::from_i64(&[1, 0, 0, 1, 0, 0, 1]));
    }

    #[test]
    fn cyclotomic_values_at_one() {
        // Φ_d(1) is p for prime powers d = p^k, else 1 (d > 1).
        let one = BigInt::one();
        for (d, v) in [
            (2, 2),
            (3, 3),
            (4, 2),
            (5, 5),
            (6, 1),
            (8, 2),
            (9, 3),
            (10, 1),
            (12, 1),
        ] {
            assert_eq!(cyclotomic(d).eval(&one), BigInt::from(v), "Φ_{d}(1)");
        }
    }

    #[test]
    fn rejects_non_cyclotomic_factor() {
        let p = IntPoly::from_i64(&[-2, 0, 1]); // t² − 2
        assert!(matches!(
            cyclotomic_multiset(&p),
            Err(LinalgError::NotRootOfUnitySpectrum { .. })
        ));
        assert!(matches!(
            cyclotomic_multiset(&IntPoly::from_i64(&[1, 2])),
            Err(LinalgError::NotMonic)
        ));
    }

    #[test]
    fn difference_quotient() {
        // m = t² − 1: ṁ = (t² − 1 − 0)/(t − 1) = t + 1; m̈ = (t + 1 − 2)/(t − 1) = 1.
        let m = IntPoly::from_i64(&[-1, 0, 1]);
        let md = m.difference_quotient_at_one();
        assert_eq!(md, IntPoly::from_i64(&[1, 1]));
        assert_eq!(md.difference_quotient_at_one(), IntPoly::one());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(
            IntPoly::from_i64(&[1, 0, -1, 0, 1]).to_string(),
            "t^4 - t^2 + 1"
        );
        assert_eq!(IntPoly::from_i64(&[-1, 1]).to_string(), "t - 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
