//! Matrices over `F_q[t]` with a degree cap.

use alloc::vec;
use alloc::vec::Vec;

use super::field::Field;
use super::matrix::Matrix;
use super::ring::{self, Dense, PolyRing, Ring};
use crate::error::{Error, Result};

/// What happens when an arithmetic result has degree above the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TruncationPolicy {
    /// Exceeding the cap is an error.
    Strict,
    /// Terms above the cap are dropped: arithmetic in `F_q[t]/(t^(cap+1))`.
    Truncating,
}

/// A matrix of polynomials in `t`, each of degree at most `degree_cap`.
///
/// Entries are coefficient vectors, lowest degree first, trimmed of
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<u32>>,
    degree_cap: usize,
    policy: TruncationPolicy,
}

impl PolyMatrix {
    pub fn new(
        field: &Field,
        rows: usize,
        cols: usize,
        entries: Vec<Vec<u32>>,
        degree_cap: usize,
        policy: TruncationPolicy,
    ) -> Result<PolyMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(alloc::format!(
                "expected {} polynomial entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let mut clean = Vec::with_capacity(entries.len());
        for e in entries {
            if e.iter().any(|&c| !field.contains(c)) {
                return Err(Error::InvalidArgument("unreduced coefficient".into()));
            }
            let mut e = ring::trim(e);
            if e.len() > degree_cap + 1 {
                match policy {
                    TruncationPolicy::Strict => {
                        return Err(Error::DegreeCapExceeded {
                            cap: degree_cap,
                            degree: e.len() - 1,
                        })
                    }
                    TruncationPolicy::Truncating => {
                        e.truncate(degree_cap + 1);
                        e = ring::trim(e);
                    }
                }
            }
            clean.push(e);
        }
        Ok(PolyMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: clean,
            degree_cap,
            policy,
        })
    }

    /// A constant polynomial matrix.
    pub fn constant(m: &Matrix, degree_cap: usize, policy: TruncationPolicy) -> PolyMatrix {
        PolyMatrix {
            field: m.field().clone(),
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .entries()
                .iter()
                .map(|&a| if a == 0 { Vec::new() } else { vec![a] })
                .collect(),
            degree_cap,
            policy,
        }
    }

    pub fn identity(
        field: &Field,
        n: usize,
        degree_cap: usize,
        policy: TruncationPolicy,
    ) -> PolyMatrix {
        PolyMatrix::constant(&Matrix::identity(field, n), degree_cap, policy)
    }

    /// `Σ_d t^d · coeffs[d]`.
    pub fn from_coefficients(
        coeffs: &[Matrix],
        degree_cap: usize,
        policy: TruncationPolicy,
    ) -> Result<PolyMatrix> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::InvalidArgument("no coefficient matrices".into()))?;
        let (rows, cols) = first.shape();
        let mut entries = vec![Vec::new(); rows * cols];
        for (d, c) in coeffs.iter().enumerate() {
            if c.shape() != (rows, cols) {
                return Err(Error::DimensionMismatch {
                    op: "from_coefficients",
                    left: (rows, cols),
                    right: c.shape(),
                });
            }
            for (k, &a) in c.entries().iter().enumerate() {
                if a != 0 {
                    let e: &mut Vec<u32> = &mut entries[k];
                    e.resize(d + 1, 0);
                    e[d] = a;
                }
            }
        }
        PolyMatrix::new(first.field(), rows, cols, entries, degree_cap, policy)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn policy(&self) -> TruncationPolicy {
        self.policy
    }

    pub fn entry(&self, i: usize, j: usize) -> &[u32] {
        &self.entries[i * self.cols + j]
    }

    /// Largest degree of any entry; `None` for the zero matrix.
    pub fn degree(&self) -> Option<usize> {
        self.entries
            .iter()
            .filter(|e| !e.is_empty())
            .map(|e| e.len() - 1)
            .max()
    }

    pub(crate) fn ring(&self) -> PolyRing {
        PolyRing {
            field: self.field.clone(),
            trunc: match self.policy {
                TruncationPolicy::Strict => None,
                TruncationPolicy::Truncating => Some(self.degree_cap),
            },
        }
    }

    pub(crate) fn to_dense(&self) -> Dense<Vec<u32>> {
        Dense {
            rows: self.rows,
            cols: self.cols,
            data: self.entries.clone(),
        }
    }

    /// Wraps a generic result, enforcing the cap under `policy`.
    pub(crate) fn from_dense(
        field: &Field,
        d: Dense<Vec<u32>>,
        degree_cap: usize,
        policy: TruncationPolicy,
    ) -> Result<PolyMatrix> {
        PolyMatrix::new(field, d.rows, d.cols, d.data, degree_cap, policy)
    }

    /// Re-caps the matrix. Lowering the cap of a strict matrix below its
    /// degree is an error; a truncating one drops the excess.
    pub fn with_cap(&self, degree_cap: usize, policy: TruncationPolicy) -> Result<PolyMatrix> {
        PolyMatrix::new(
            &self.field,
            self.rows,
            self.cols,
            self.entries.clone(),
            degree_cap,
            policy,
        )
    }

    fn combine_caps(&self, other: &PolyMatrix) -> Result<(usize, TruncationPolicy)> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        match (self.policy, other.policy) {
            (TruncationPolicy::Strict, TruncationPolicy::Strict) => Ok((
                self.degree_cap.max(other.degree_cap),
                TruncationPolicy::Strict,
            )),
            (TruncationPolicy::Truncating, TruncationPolicy::Truncating) => Ok((
                self.degree_cap.min(other.degree_cap),
                TruncationPolicy::Truncating,
            )),
            _ => Err(Error::InvalidArgument(
                "cannot mix strict and truncating polynomial matrices".into(),
            )),
        }
    }

    /// Exact product, subject to the cap policy of the operands.
    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        let (cap, policy) = self.combine_caps(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "poly_mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let ring = PolyRing {
            field: self.field.clone(),
            trunc: match policy {
                TruncationPolicy::Strict => None,
                TruncationPolicy::Truncating => Some(cap),
            },
        };
        let d = ring::mat_mul(&ring, &self.to_dense(), &other.to_dense());
        PolyMatrix::from_dense(&self.field, d, cap, policy)
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        let (cap, policy) = self.combine_caps(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op: "poly_add",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let ring = self.ring();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| ring.add(a, b))
            .collect();
        PolyMatrix::new(&self.field, self.rows, self.cols, entries, cap, policy)
    }

    /// Matrix of `t^d` coefficients; zero when `d` exceeds every degree.
    pub fn coeff(&self, d: usize) -> Matrix {
        let data = self
            .entries
            .iter()
            .map(|e| e.get(d).copied().unwrap_or(0))
            .collect();
        Matrix::new(&self.field, self.rows, self.cols, data).expect("coefficients are reduced")
    }

    /// `Σ a_i t^i -> Σ a_i^(p^r) t^(i p^r)` entrywise. A strict cap scales
    /// by `p^r`; a truncating cap is kept (Frobenius preserves `(t^(c+1))`).
    pub fn frob_power(&self, r: u32) -> PolyMatrix {
        let ring = self.ring();
        let cap = match self.policy {
            TruncationPolicy::Strict => self.degree_cap * (self.field.p() as usize).pow(r),
            TruncationPolicy::Truncating => self.degree_cap,
        };
        PolyMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| ring.frob(e, r)).collect(),
            degree_cap: cap,
            policy: self.policy,
        }
    }

    /// Substitutes `t = a`.
    pub fn eval_at(&self, a: u32) -> Matrix {
        let f = &self.field;
        let data = self
            .entries
            .iter()
            .map(|e| e.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, a), c)))
            .collect();
        Matrix::new(f, self.rows, self.cols, data).expect("reduced")
    }

    /// Substitutes `t -> alpha·t`.
    pub fn scale_variable(&self, alpha: u32) -> PolyMatrix {
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let mut pw = 1u32;
                let out = e
                    .iter()
                    .map(|&c| {
                        let v = f.mul(c, pw);
                        pw = f.mul(pw, alpha);
                        v
                    })
                    .collect();
                ring::trim(out)
            })
            .collect();
        PolyMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
            degree_cap: self.degree_cap,
            policy: self.policy,
        }
    }

    /// Substitutes `t -> t^k`.
    pub fn compose_power(&self, k: usize) -> Result<PolyMatrix> {
        assert!(k >= 1);
        let entries = self
            .entries
            .iter()
            .map(|e| {
                if e.is_empty() {
                    return Vec::new();
                }
                let mut out = vec![0u32; (e.len() - 1) * k + 1];
                for (i, &c) in e.iter().enumerate() {
                    out[i * k] = c;
                }
                out
            })
            .collect();
        let cap = match self.policy {
            TruncationPolicy::Strict => self.degree_cap * k,
            TruncationPolicy::Truncating => self.degree_cap,
        };
        PolyMatrix::new(&self.field, self.rows, self.cols, entries, cap, self.policy)
    }

    pub fn is_identity(&self) -> bool {
        ring::is_identity(&self.ring(), &self.to_dense())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn identity_times_b_is_b() {
        let f = f3();
        let b = PolyMatrix::new(
            &f,
            2,
            2,
            vec![vec![1, 2], vec![], vec![0, 0, 1], vec![2]],
            3,
            TruncationPolicy::Strict,
        )
        .unwrap();
        let i = PolyMatrix::identity(&f, 2, 3, TruncationPolicy::Strict);
        assert_eq!(i.mul(&b).unwrap(), b);
    }

    #[test]
    fn square_zero_exponentials_cancel() {
        let f = f3();
        let n = Matrix::unit(&f, 2, 0, 1);
        let id = Matrix::identity(&f, 2);
        let plus =
            PolyMatrix::from_coefficients(&[id.clone(), n.clone()], 2, TruncationPolicy::Strict)
                .unwrap();
        let minus = PolyMatrix::from_coefficients(&[id, -&n], 2, TruncationPolicy::Strict).unwrap();
        assert!(plus.mul(&minus).unwrap().is_identity());
    }

    #[test]
    fn strict_cap_overflow_is_error() {
        let f = f3();
        let t = PolyMatrix::new(&f, 1, 1, vec![vec![0, 1]], 1, TruncationPolicy::Strict).unwrap();
        assert_eq!(
            t.mul(&t),
            Err(Error::DegreeCapExceeded { cap: 1, degree: 2 })
        );
        let tt = t.with_cap(1, TruncationPolicy::Truncating).unwrap();
        assert!(tt.mul(&tt).unwrap().degree().is_none());
    }

    #[test]
    fn coefficient_extraction() {
        let f = f3();
        let b = Matrix::from_ints(&f, 2, 2, &[0, 1, 2, 0]);
        let p = PolyMatrix::from_coefficients(
            &[Matrix::identity(&f, 2), b.clone()],
            4,
            TruncationPolicy::Strict,
        )
        .unwrap();
        assert_eq!(p.coeff(1), b);
        assert!(p.coeff(0).is_identity());
        assert!(p.coeff(7).is_zero());
    }

    #[test]
    fn frobenius_on_polynomials() {
        let f2 = Field::prime(2).unwrap();
        let x = PolyMatrix::new(&f2, 1, 1, vec![vec![1, 1]], 1, TruncationPolicy::Strict).unwrap();
        assert_eq!(x.frob_power(0), x);
        let y = x.frob_power(1);
        assert_eq!(y.entry(0, 0), &[1, 0, 1]);
        assert_eq!(y.degree_cap(), 2);
        // F_p entries are fixed, degrees scale by p
        let f = f3();
        let z = PolyMatrix::new(
            &f,
            1,
            2,
            vec![vec![2, 1], vec![0, 2]],
            1,
            TruncationPolicy::Strict,
        )
        .unwrap();
        let zf = z.frob_power(1);
        assert_eq!(zf.entry(0, 0), &[2, 0, 0, 1]);
        assert_eq!(zf.entry(0, 1), &[0, 0, 0, 2]);
    }

    #[test]
    fn mixing_policies_is_rejected() {
        let f = f3();
        let a = PolyMatrix::identity(&f, 2, 2, TruncationPolicy::Strict);
        let b = PolyMatrix::identity(&f, 2, 2, TruncationPolicy::Truncating);
        assert!(a.mul(&b).is_err());
    }
}
