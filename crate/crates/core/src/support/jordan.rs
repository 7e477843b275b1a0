//! Jordan types of nilpotent operators from ranks of their powers.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::ffmat::Matrix;

/// Block sizes of a `p`-nilpotent operator, largest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JordanType {
    parts: Vec<usize>,
    p: u32,
}

impl JordanType {
    /// Validates that every part lies in `1..=p`, and sorts.
    pub fn new(mut parts: Vec<usize>, p: u32) -> Result<JordanType> {
        if parts.iter().any(|&k| k == 0 || k > p as usize) {
            return Err(Error::InvalidArgument(alloc::format!(
                "Jordan block sizes must lie in 1..={p}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(JordanType { parts, p })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of blocks of size exactly `j`.
    pub fn count(&self, j: usize) -> usize {
        self.parts.iter().filter(|&&k| k == j).count()
    }

    /// All blocks have size `p`: the operator makes the space a free
    /// `k[u]/u^p`-module.
    pub fn is_free(&self) -> bool {
        self.parts.iter().all(|&k| k == self.p as usize)
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, k) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("]")
    }
}

/// Jordan block sizes of an arbitrary nilpotent matrix, largest first.
///
/// With `r_j = rank(N^j)`, there are `r_{j-1} - 2 r_j + r_{j+1}` blocks of
/// size `j`.
pub fn block_partition(n: &Matrix) -> Result<Vec<usize>> {
    if !n.is_square() {
        return Err(Error::DimensionMismatch {
            op: "block_partition",
            left: n.shape(),
            right: n.shape(),
        });
    }
    let d = n.rows();
    let mut ranks = vec![d];
    let mut power = Matrix::identity(n.field(), d);
    while *ranks.last().unwrap() > 0 {
        if ranks.len() > d {
            return Err(Error::NotNilpotent { index: 0 });
        }
        power = &power * n;
        let r = power.rank();
        if r == *ranks.last().unwrap() {
            return Err(Error::NotNilpotent { index: 0 });
        }
        ranks.push(r);
    }
    ranks.push(0);
    let mut parts = Vec::new();
    for j in (1..ranks.len() - 1).rev() {
        let count = ranks[j - 1] + ranks[j + 1] - 2 * ranks[j];
        parts.extend(core::iter::repeat_n(j, count));
    }
    Ok(parts)
}

/// Jordan type of a `p`-nilpotent matrix over a field of characteristic `p`.
pub fn jordan_type_of(n: &Matrix) -> Result<JordanType> {
    let p = n.field().p();
    if !n.is_square() || !n.pow(p as u64).is_zero() {
        return Err(Error::NotNilpotent { index: 0 });
    }
    JordanType::new(block_partition(n)?, p)
}

/// `rank(N^(p-1)) · p == dim`: every Jordan block has size `p`.
pub fn is_free_operator(n: &Matrix) -> bool {
    let p = n.field().p() as usize;
    let d = n.rows();
    d.is_multiple_of(p) && n.pow(p as u64 - 1).rank() * p == d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmat::Field;

    #[test]
    fn examples() {
        let f3 = Field::prime(3).unwrap();
        let z = Matrix::zeros(&f3, 3, 3);
        assert_eq!(jordan_type_of(&z).unwrap().parts(), &[1, 1, 1]);
        let j2 = Matrix::jordan_block(&f3, 2);
        assert_eq!(jordan_type_of(&j2).unwrap().parts(), &[2]);
        let n = Matrix::jordan_block(&f3, 3).block_diag(&Matrix::zeros(&f3, 1, 1));
        assert_eq!(jordan_type_of(&n).unwrap().parts(), &[3, 1]);
        assert_eq!(jordan_type_of(&n).unwrap().to_string(), "[3,1]");
        assert!(jordan_type_of(&Matrix::jordan_block(&f3, 4)).is_err());
        assert!(jordan_type_of(&Matrix::identity(&f3, 2)).is_err());
        assert_eq!(
            block_partition(&Matrix::jordan_block(&f3, 5)).unwrap(),
            vec![5]
        );
        assert_eq!(
            block_partition(&Matrix::zeros(&f3, 0, 0)).unwrap(),
            Vec::<usize>::new()
        );
    }

    #[test]
    fn freeness() {
        let f2 = Field::prime(2).unwrap();
        let j2 = Matrix::jordan_block(&f2, 2);
        assert!(is_free_operator(&j2.block_diag(&j2)));
        assert!(!is_free_operator(&j2.block_diag(&Matrix::zeros(&f2, 1, 1))));
        assert!(!is_free_operator(&Matrix::zeros(&f2, 2, 2)));
        assert!(is_free_operator(&Matrix::zeros(&f2, 0, 0)));
        assert!(jordan_type_of(&j2).unwrap().is_free());
    }
}
