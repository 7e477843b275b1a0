//! Modules for `k[u_0, …, u_{r-1}]/(u_i^p)`, the group algebra of an
//! elementary abelian `p`-group of rank `r` (equivalently of `G_{a(r)}`).

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ffmat::{Field, Matrix};
use crate::liealg::is_commuting_nilpotent;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EAModule {
    field: Field,
    m: usize,
    ops: Vec<Matrix>,
}

impl EAModule {
    /// Validates that every operator is `m×m`, `p`-nilpotent, and that they
    /// commute pairwise.
    pub fn new(field: &Field, m: usize, ops: Vec<Matrix>) -> Result<EAModule> {
        for (i, op) in ops.iter().enumerate() {
            if op.shape() != (m, m) || op.field() != field {
                return Err(Error::InvalidArgument(alloc::format!(
                    "operator {i} is not a {m}x{m} matrix over {:?}",
                    field
                )));
            }
        }
        is_commuting_nilpotent(&ops)?;
        Ok(EAModule {
            field: field.clone(),
            m,
            ops,
        })
    }

    /// The regular module: `u_i` acts as `I ⊗ … ⊗ J_p ⊗ … ⊗ I` on `(k^p)^{⊗r}`.
    pub fn regular(field: &Field, r: usize) -> EAModule {
        let p = field.p() as usize;
        let j = Matrix::jordan_block(field, p);
        let id = Matrix::identity(field, p);
        let ops = (0..r)
            .map(|i| {
                (0..r).fold(Matrix::identity(field, 1), |acc, k| {
                    acc.kron(if k == i { &j } else { &id })
                })
            })
            .collect();
        EAModule {
            field: field.clone(),
            m: p.pow(r as u32),
            ops,
        }
    }

    /// `m`-dimensional module with every `u_i` acting as zero.
    pub fn trivial(field: &Field, m: usize, r: usize) -> EAModule {
        EAModule {
            field: field.clone(),
            m,
            ops: alloc::vec![Matrix::zeros(field, m, m); r],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[Matrix] {
        &self.ops
    }

    /// `dim Σ_i im(u_i)`.
    pub fn radical_dim(&self) -> usize {
        if self.ops.is_empty() || self.m == 0 {
            return 0;
        }
        let refs: Vec<&Matrix> = self.ops.iter().collect();
        Matrix::hstack(&refs).expect("same row count").rank()
    }

    /// Free over the local algebra iff `dim M = p^r · dim(M / rad M)`.
    pub fn is_free(&self) -> bool {
        let top = self.m - self.radical_dim();
        let rank = (self.field.p() as usize).pow(self.r() as u32);
        self.m == rank * top
    }
}

/// Freeness test for a module over `k(Z/p)^r`.
pub fn ea_free(module: &EAModule) -> bool {
    module.is_free()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_modules_are_free() {
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            for r in 1..=2 {
                let m = EAModule::regular(&f, r);
                assert_eq!(m.dim(), (p as usize).pow(r as u32));
                assert!(EAModule::new(&f, m.dim(), m.ops().to_vec()).is_ok());
                assert!(ea_free(&m));
            }
        }
    }

    #[test]
    fn trivial_module_is_not_free() {
        for p in [2, 3, 5] {
            let f = Field::prime(p).unwrap();
            assert!(!ea_free(&EAModule::trivial(&f, 1, 1)));
        }
    }

    #[test]
    fn klein_four_regular_module() {
        // u0 = J2 ⊗ I2, u1 = I2 ⊗ J2 over F_2
        let f = Field::prime(2).unwrap();
        let j = Matrix::jordan_block(&f, 2);
        let i = Matrix::identity(&f, 2);
        let m = EAModule::new(&f, 4, alloc::vec![j.kron(&i), i.kron(&j)]).unwrap();
        assert_eq!(m.radical_dim(), 3);
        assert!(ea_free(&m));
        // u1 = u0 gives a non-free module of the same dimension
        let n = EAModule::new(&f, 4, alloc::vec![j.kron(&i), j.kron(&i)]).unwrap();
        assert!(!ea_free(&n));
    }

    #[test]
    fn rejects_invalid_operators() {
        let f = Field::prime(2).unwrap();
        let e12 = Matrix::unit(&f, 2, 0, 1);
        let e21 = Matrix::unit(&f, 2, 1, 0);
        assert!(EAModule::new(&f, 2, alloc::vec![e12, e21]).is_err());
        assert!(EAModule::new(&f, 3, alloc::vec![Matrix::identity(&f, 2)]).is_err());
    }
}
