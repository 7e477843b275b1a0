//! Support tables over enumerated or sampled points.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::jordan::JordanType;
use super::local::{alpha_operator, jordan_type};
use crate::error::{Error, Result};
use crate::ffmat::{Field, FieldSpec};
use crate::liealg::{enumerate_cr, sample_cr, NilTuple, DEFAULT_REJECTION_LIMIT};
use crate::repcore::ModuleExpr;

/// Which points a report covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Every point of `C_r(N_p(gl_n))(F_q)`.
    Enumerate { n: usize, r: usize },
    /// `count` points drawn with seeds `seed, seed + 1, …`.
    Sample {
        n: usize,
        r: usize,
        seed: u64,
        count: usize,
    },
}

impl Scope {
    pub fn kind(&self) -> &'static str {
        match self {
            Scope::Enumerate { .. } => "enumerate",
            Scope::Sample { .. } => "sample",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportRow {
    pub tuple: NilTuple,
    pub jordan_type: JordanType,
    pub in_support: bool,
}

/// Local Jordan types and support membership of one module at a set of
/// points, over one finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportReport {
    pub module: String,
    pub field: FieldSpec,
    pub scope: Scope,
    pub rows: Vec<SupportRow>,
}

impl SupportReport {
    pub fn total(&self) -> usize {
        self.rows.len()
    }

    pub fn in_support_count(&self) -> usize {
        self.rows.iter().filter(|r| r.in_support).count()
    }
}

/// Computes one row. Membership comes from the rank of `α^(p-1)`; the Jordan
/// type is computed separately and the two must agree.
pub fn support_row(module: &ModuleExpr, tuple: NilTuple) -> Result<SupportRow> {
    let op = alpha_operator(module, &tuple)?;
    let in_support = !op.is_free();
    let jt = jordan_type(&op)?;
    if jt.is_free() == in_support {
        return Err(Error::InvariantBreach(alloc::format!(
            "rank test and Jordan type {jt} disagree for {module}"
        )));
    }
    Ok(SupportRow {
        tuple,
        jordan_type: jt,
        in_support,
    })
}

pub fn enumerate_support(
    module: &ModuleExpr,
    n: usize,
    r: usize,
    field: &Field,
    budget: u64,
) -> Result<SupportReport> {
    let rows = enumerate_cr(n, r, field, budget)?
        .map(|t| support_row(module, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(SupportReport {
        module: module.to_string(),
        field: field.spec().clone(),
        scope: Scope::Enumerate { n, r },
        rows,
    })
}

/// `count` sampled points; point `i` is drawn from seed `seed + i`.
pub fn sample_support(
    module: &ModuleExpr,
    n: usize,
    r: usize,
    field: &Field,
    seed: u64,
    count: usize,
) -> Result<SupportReport> {
    let rows = (0..count as u64)
        .map(|i| {
            let t = sample_cr(n, r, field, seed.wrapping_add(i), DEFAULT_REJECTION_LIMIT);
            support_row(module, t)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SupportReport {
        module: module.to_string(),
        field: field.spec().clone(),
        scope: Scope::Sample { n, r, seed, count },
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_module_everywhere_in_support() {
        let f2 = Field::prime(2).unwrap();
        let rep = enumerate_support(&ModuleExpr::triv(), 2, 2, &f2, 1 << 20).unwrap();
        assert!(rep.total() > 1);
        assert_eq!(rep.in_support_count(), rep.total());
        assert!(rep.rows.iter().all(|r| r.jordan_type.parts() == [1]));
    }

    #[test]
    fn defining_module_support_is_zero_point() {
        let f2 = Field::prime(2).unwrap();
        let rep = enumerate_support(&ModuleExpr::defining(2), 2, 1, &f2, 1 << 20).unwrap();
        for row in &rep.rows {
            assert_eq!(row.in_support, row.tuple.is_zero());
            assert_eq!(row.in_support, row.tuple.mats()[0].rank() < 1);
        }
        assert_eq!(rep.in_support_count(), 1);
        assert_eq!(rep.scope.kind(), "enumerate");
    }

    #[test]
    fn budget_error() {
        let f3 = Field::prime(3).unwrap();
        assert!(matches!(
            enumerate_support(&ModuleExpr::defining(3), 3, 2, &f3, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn sampling_is_reproducible() {
        let f3 = Field::prime(3).unwrap();
        let e = ModuleExpr::defining(3);
        let a = sample_support(&e, 3, 2, &f3, 11, 5).unwrap();
        let b = sample_support(&e, 3, 2, &f3, 11, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total(), 5);
    }
}
