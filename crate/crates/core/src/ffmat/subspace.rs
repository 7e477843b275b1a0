use alloc::vec;
use alloc::vec::Vec;

use super::field::Field;
use super::matrix::Matrix;

/// A subspace of `F_q^n` held as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    /// Rows in reduced echelon form.
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(field: &Field, ambient: usize) -> Subspace {
        Subspace::span(
            field,
            ambient,
            (0..ambient).map(|i| {
                let mut v = vec![0u32; ambient];
                v[i] = 1;
                v
            }),
        )
    }

    pub fn span(
        field: &Field,
        ambient: usize,
        vectors: impl IntoIterator<Item = Vec<u32>>,
    ) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            s.insert(&v);
        }
        s
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after clearing the pivot positions of the basis.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = w[pc];
            if c != 0 {
                for (x, &b) in w.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, b));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = self.field.clone();
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]).expect("nonzero");
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // Clear the new pivot column from the existing rows.
        for row in self.basis.iter_mut() {
            let c = row[pc];
            if c != 0 {
                for (x, &b) in row.iter_mut().zip(&w) {
                    *x = f.sub(*x, f.mul(c, b));
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.basis.insert(at, w);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// Whether `op` maps the subspace into itself.
    pub fn is_invariant_under(&self, op: &Matrix) -> bool {
        self.basis.iter().all(|v| self.contains(&op.mul_vec(v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_keeps_reduced_echelon_form() {
        let f = Field::prime(5).unwrap();
        let mut s = Subspace::zero(&f, 3);
        assert!(s.insert(&[0, 2, 1]));
        assert!(s.insert(&[1, 1, 1]));
        assert!(!s.insert(&[1, 3, 2]));
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivots(), &[0, 1]);
        for (row, &pc) in s.basis().iter().zip(s.pivots()) {
            assert_eq!(row[pc], 1);
        }
        assert_eq!(s.basis()[0][1], 0);
        assert!(s.contains(&[2, 2, 2]));
        assert!(!s.contains(&[0, 0, 1]) || s.dim() == 3);
    }
}
