use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::exact_linalg::IntMatrix;

/// A Weyl group element as an integer matrix acting on root coordinates.
///
/// Column `j` holds the image of the j-th simple root. Entries are kept as machine words;
/// every product is overflow-checked.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    n: usize,
    entries: Box<[i32]>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Self {
            n,
            entries: entries.into(),
        }
    }

    pub fn from_entries(n: usize, entries: Vec<i32>) -> Self {
        assert_eq!(entries.len(), n * n, "entry count does not match dimension");
        Self {
            n,
            entries: entries.into(),
        }
    }

    /// Fails when an entry does not fit a machine word.
    pub fn from_int_matrix(m: &IntMatrix) -> Option<Self> {
        if !m.is_square() {
            return None;
        }
        let entries: Option<Vec<i32>> = m.entries().iter().map(ToPrimitive::to_i32).collect();
        Some(Self::from_entries(m.rows(), entries?))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.entries[i * self.n + j]
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::new(
            self.n,
            self.n,
            self.entries.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = vec![0i32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let prod = a
                        .checked_mul(other.entries[k * n + j])
                        .expect("entry overflow");
                    out[i * n + j] = out[i * n + j].checked_add(prod).expect("entry overflow");
                }
            }
        }
        Self::from_entries(n, out)
    }

    pub fn pow(&self, k: u64) -> GroupElement {
        let mut acc = Self::identity(self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative order. Panics past `bound` (elements here have finite order).
    pub fn order_bounded(&self, bound: u64) -> u64 {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return k;
            }
            acc = acc.mul(self);
        }
        panic!("element order exceeds {bound}")
    }

    pub fn order(&self) -> u64 {
        self.order_bounded(10_000)
    }

    pub fn inverse(&self) -> GroupElement {
        let ord = self.order();
        self.pow(ord - 1)
    }

    /// `g⁻¹ · self · g`
    pub fn conjugate_by(&self, g: &GroupElement) -> GroupElement {
        g.inverse().mul(self).mul(g)
    }

    pub fn commutes_with(&self, other: &GroupElement) -> bool {
        self.mul(other) == other.mul(self)
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) as i64 * v[j]).sum())
            .collect()
    }

    /// One signed byte per entry, row-major. Injective on matrices whose entries fit in `i8`.
    pub fn canonical_key(&self) -> Option<Vec<u8>> {
        self.entries
            .iter()
            .map(|&x| i8::try_from(x).ok().map(|b| b as u8))
            .collect()
    }

    pub fn from_canonical_key(n: usize, key: &[u8]) -> Option<Self> {
        (key.len() == n * n)
            .then(|| Self::from_entries(n, key.iter().map(|&b| b as i8 as i32).collect()))
    }

    pub fn rows(&self) -> Vec<Vec<i32>> {
        self.entries.chunks(self.n).map(<[i32]>::to_vec).collect()
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement{:?}", self.rows())
    }
}

/// Matrix of `g` acting on weight-lattice coordinates: the inverse transpose.
pub fn dual_action(g: &GroupElement) -> IntMatrix {
    g.inverse().matrix().transpose()
}
