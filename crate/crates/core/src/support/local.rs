//! Local `p`-nilpotent operators at 1-parameter subgroups.

use alloc::vec::Vec;

use super::jordan::{is_free_operator, jordan_type_of, JordanType};
use crate::error::{Error, Result};
use crate::ffmat::{Matrix, TruncationPolicy};
use crate::liealg::NilTuple;
use crate::oneparam::{exp_capped, psg_eval_truncated, OneParamSubgroup};
use crate::repcore::{EAModule, ModuleExpr};

/// Where a local operator came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorSource {
    /// `α_B = Σ_s coeff_{t^(p^s)} ρ(exp_{B_s}(t))`.
    Alpha { module: ModuleExpr, tuple: NilTuple },
    /// `μ_B = coeff_{t^(p^(r-1))} ρ(Π_s exp_{B_s}(t^(p^s)))`.
    Mu { module: ModuleExpr, tuple: NilTuple },
    /// `Σ_s b_s^(p^s) u_s` on a module for `k[u_0, …, u_{r-1}]/(u_i^p)`.
    ElementaryAbelian { module: EAModule, scalars: Vec<u32> },
}

/// A `p`-nilpotent operator on a module, with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalOperator {
    matrix: Matrix,
    source: OperatorSource,
}

impl LocalOperator {
    /// Fails with [`Error::InvariantBreach`] unless `matrix^p = 0`.
    fn checked(matrix: Matrix, source: OperatorSource) -> Result<LocalOperator> {
        let p = matrix.field().p() as u64;
        if !matrix.pow(p).is_zero() {
            return Err(Error::InvariantBreach(alloc::format!(
                "local operator is not p-nilpotent ({source:?})"
            )));
        }
        Ok(LocalOperator { matrix, source })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn source(&self) -> &OperatorSource {
        &self.source
    }

    pub fn p(&self) -> u32 {
        self.matrix.field().p()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Free as a `k[u]/u^p`-module, decided from `rank(N^(p-1))` alone.
    pub fn is_free(&self) -> bool {
        is_free_operator(&self.matrix)
    }
}

fn check_tuple(module: &ModuleExpr, tuple: &NilTuple) -> Result<()> {
    if module.n() != 0 && module.n() != tuple.n() {
        return Err(Error::DimensionMismatch {
            op: "local operator",
            left: (module.n(), module.n()),
            right: (tuple.n(), tuple.n()),
        });
    }
    Ok(())
}

/// `coeff_{t^d} ρ(exp_B(t))`, computed modulo `t^(d+1)`.
pub(crate) fn exp_coefficient(module: &ModuleExpr, b: &Matrix, d: usize) -> Result<Matrix> {
    let dim = module.dim();
    if b.is_zero() {
        return Ok(Matrix::zeros(b.field(), dim, dim));
    }
    let g = exp_capped(b, false, d, TruncationPolicy::Truncating)?;
    let g_inv = if module.needs_inverse() {
        Some(exp_capped(b, true, d, TruncationPolicy::Truncating)?)
    } else {
        None
    };
    Ok(module.evaluate_poly(&g, g_inv.as_ref())?.coeff(d))
}

/// `α_B = Σ_{s<r} coeff_{t^(p^s)} ρ(exp_{B_s}(t))`.
pub fn alpha_operator(module: &ModuleExpr, tuple: &NilTuple) -> Result<LocalOperator> {
    check_tuple(module, tuple)?;
    let field = tuple.field();
    let p = field.p() as usize;
    let dim = module.dim();
    let mut sum = Matrix::zeros(field, dim, dim);
    for (s, b) in tuple.mats().iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let d = p.pow(s as u32);
        // beyond p^s > polydeg·(p-1) the coefficient is zero
        if d > module.polynomial_degree(field.p()) * (p - 1) {
            break;
        }
        sum = &sum + &exp_coefficient(module, b, d)?;
    }
    LocalOperator::checked(
        sum,
        OperatorSource::Alpha {
            module: module.clone(),
            tuple: tuple.clone(),
        },
    )
}

/// `μ_B = coeff_{t^(p^(r-1))} ρ(Π_s exp_{B_s}(t^(p^s)))`. Requires `r >= 1`.
pub fn mu_operator(module: &ModuleExpr, tuple: &NilTuple) -> Result<LocalOperator> {
    check_tuple(module, tuple)?;
    if tuple.r() == 0 {
        return Err(Error::InvalidArgument(
            "mu needs a tuple of length at least 1".into(),
        ));
    }
    let p = tuple.field().p() as usize;
    let d = p.pow(tuple.r() as u32 - 1);
    let psi = OneParamSubgroup::new(tuple.clone());
    let m = psg_eval_truncated(&psi, module, d)?.coeff(d);
    LocalOperator::checked(
        m,
        OperatorSource::Mu {
            module: module.clone(),
            tuple: tuple.clone(),
        },
    )
}

/// `(B_0, …, B_{r-1}) ↦ (B_{r-1}, …, B_0)`.
pub fn lambda_reverse(tuple: &NilTuple) -> NilTuple {
    tuple.reversed()
}

pub fn jordan_type(op: &LocalOperator) -> Result<JordanType> {
    jordan_type_of(op.matrix())
}

/// Whether `B` lies in the support variety of the module: `α_B` is not free.
pub fn in_support(module: &ModuleExpr, tuple: &NilTuple) -> Result<bool> {
    Ok(!alpha_operator(module, tuple)?.is_free())
}

/// `Σ_s b_s^(p^s) u_s`; `b` may be shorter than `r` (missing entries are 0).
pub fn ga_alpha(module: &EAModule, b: &[u32]) -> Result<LocalOperator> {
    if b.len() > module.r() {
        return Err(Error::InvalidArgument(alloc::format!(
            "{} scalars for a module of rank {}",
            b.len(),
            module.r()
        )));
    }
    let field = module.field();
    if let Some(&bad) = b.iter().find(|&&x| !field.contains(x)) {
        return Err(Error::InvalidArgument(alloc::format!(
            "{bad} is not a field element"
        )));
    }
    let mut sum = Matrix::zeros(field, module.dim(), module.dim());
    for (s, (&bs, u)) in b.iter().zip(module.ops()).enumerate() {
        let c = field.frob(bs, s as u32);
        if c != 0 {
            sum = &sum + &u.scale(c);
        }
    }
    LocalOperator::checked(
        sum,
        OperatorSource::ElementaryAbelian {
            module: module.clone(),
            scalars: b.to_vec(),
        },
    )
}

/// `(g B_0 g^{-1}, …, g B_{r-1} g^{-1})`.
pub fn conjugate_tuple(tuple: &NilTuple, g: &Matrix) -> Result<NilTuple> {
    if g.shape() != (tuple.n(), tuple.n()) {
        return Err(Error::DimensionMismatch {
            op: "conjugate_tuple",
            left: (tuple.n(), tuple.n()),
            right: g.shape(),
        });
    }
    let inv = g.inverse()?;
    Ok(conjugate_with(tuple, g, &inv))
}

pub(crate) fn conjugate_with(tuple: &NilTuple, g: &Matrix, g_inv: &Matrix) -> NilTuple {
    let mats = tuple.mats().iter().map(|b| &(g * b) * g_inv).collect();
    NilTuple::new_unchecked(tuple.field(), tuple.n(), mats)
}

/// The module pulled back along `exp_B: G_a → GL_n` and restricted to the
/// Frobenius kernel `G_{a(r)}`: `u_s` acts as `coeff_{t^(p^s)} ρ(exp_B(t))`.
pub fn restrict_along(module: &ModuleExpr, b: &Matrix, r: usize) -> Result<EAModule> {
    if module.n() != 0 && b.shape() != (module.n(), module.n()) {
        return Err(Error::DimensionMismatch {
            op: "restrict_along",
            left: (module.n(), module.n()),
            right: b.shape(),
        });
    }
    let p = b.field().p() as usize;
    let ops = (0..r)
        .map(|s| exp_coefficient(module, b, p.pow(s as u32)))
        .collect::<Result<Vec<_>>>()?;
    EAModule::new(b.field(), module.dim(), ops).map_err(|e| {
        Error::InvariantBreach(alloc::format!(
            "restriction along exp_B is not a module: {e}"
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmat::Field;
    use crate::repcore::Node;
    use alloc::vec;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn sym(d: usize, n: usize) -> ModuleExpr {
        ModuleExpr::new(Node::sym(d, Node::Def(n))).unwrap()
    }

    #[test]
    fn alpha_examples() {
        let f2 = f(2);
        let def2 = ModuleExpr::defining(2);
        let e12 = Matrix::unit(&f2, 2, 0, 1);
        assert!(alpha_operator(&def2, &NilTuple::zero(&f2, 2, 2))
            .unwrap()
            .matrix()
            .is_zero());
        let t = NilTuple::single(e12.clone()).unwrap();
        assert_eq!(alpha_operator(&def2, &t).unwrap().matrix(), &e12);
        let t = NilTuple::new(&f2, 2, vec![Matrix::zeros(&f2, 2, 2), e12.clone()]).unwrap();
        // t^2 never appears in I + t E12, so the s = 1 term vanishes
        assert!(alpha_operator(&def2, &t).unwrap().matrix().is_zero());
        assert_eq!(mu_operator(&def2, &t).unwrap().matrix(), &e12);
        let t = NilTuple::new(&f2, 2, vec![e12.clone(), Matrix::zeros(&f2, 2, 2)]).unwrap();
        assert!(mu_operator(&def2, &t).unwrap().matrix().is_zero());
    }

    #[test]
    fn alpha_on_twist_sees_second_term() {
        let f2 = f(2);
        let tw = ModuleExpr::new(Node::twist(Node::Def(2), 1)).unwrap();
        let e12 = Matrix::unit(&f2, 2, 0, 1);
        let t = NilTuple::new(&f2, 2, vec![Matrix::zeros(&f2, 2, 2), e12.clone()]).unwrap();
        assert_eq!(alpha_operator(&tw, &t).unwrap().matrix(), &e12);
    }

    #[test]
    fn sym2_at_e12() {
        let f2 = f(2);
        let t = NilTuple::single(Matrix::unit(&f2, 2, 0, 1)).unwrap();
        let op = alpha_operator(&sym(2, 2), &t).unwrap();
        // basis x1^2, x1 x2, x2^2: x1 x2 -> x1^2, the rest -> 0
        assert_eq!(op.matrix(), &Matrix::unit(&f2, 3, 0, 1));
        assert_eq!(jordan_type(&op).unwrap().parts(), &[2, 1]);
        assert!(in_support(&sym(2, 2), &t).unwrap());
    }

    #[test]
    fn mu_equals_alpha_for_r1() {
        let f3 = f(3);
        for code in 0..81u32 {
            let mut c = code;
            let b = Matrix::from_fn(&f3, 2, 2, |_, _| {
                let v = c % 3;
                c /= 3;
                v
            });
            let Ok(t) = NilTuple::single(b) else { continue };
            for e in [sym(2, 2), sym(3, 2), ModuleExpr::new(Node::Ad(2)).unwrap()] {
                assert_eq!(
                    alpha_operator(&e, &t).unwrap().matrix(),
                    mu_operator(&e, &t).unwrap().matrix()
                );
            }
        }
    }

    #[test]
    fn reverse_is_involution() {
        let f2 = f(2);
        let e12 = Matrix::unit(&f2, 2, 0, 1);
        let t = NilTuple::new(&f2, 2, vec![e12.clone(), Matrix::zeros(&f2, 2, 2)]).unwrap();
        let rev = lambda_reverse(&t);
        assert_eq!(rev.mats()[1], e12);
        assert_eq!(lambda_reverse(&rev), t);
        let single = NilTuple::single(e12).unwrap();
        assert_eq!(lambda_reverse(&single), single);
    }

    #[test]
    fn zero_tuple_is_in_support_unless_dim_zero() {
        let f3 = f(3);
        for e in [ModuleExpr::triv(), sym(2, 2), ModuleExpr::defining(2)] {
            assert!(in_support(&e, &NilTuple::zero(&f3, 2, 1)).unwrap());
        }
    }

    #[test]
    fn ga_examples() {
        let f2 = f(2);
        let reg = EAModule::regular(&f2, 2);
        assert_eq!(ga_alpha(&reg, &[1]).unwrap().matrix(), &reg.ops()[0]);
        assert!(ga_alpha(&reg, &[0, 0]).unwrap().matrix().is_zero());
        assert_eq!(
            ga_alpha(&reg, &[1, 1]).unwrap().matrix(),
            &(&reg.ops()[0] + &reg.ops()[1])
        );
        assert!(ga_alpha(&reg, &[1, 1, 1]).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let f5 = f(5);
        let e12 = Matrix::unit(&f5, 2, 0, 1);
        let t = NilTuple::single(e12.clone()).unwrap();
        assert_eq!(conjugate_tuple(&t, &Matrix::identity(&f5, 2)).unwrap(), t);
        let g = Matrix::diag(&f5, &[2, 3]);
        let c = conjugate_tuple(&t, &g).unwrap();
        // 2 · 3^{-1} = 2 · 2 = 4
        assert_eq!(c.mats()[0], e12.scale(4));
        assert_eq!(
            conjugate_tuple(&t, &Matrix::zeros(&f5, 2, 2)),
            Err(Error::Singular)
        );
    }

    #[test]
    fn restriction_of_defining_module() {
        let f3 = f(3);
        let j = Matrix::jordan_block(&f3, 3);
        let ea = restrict_along(&ModuleExpr::defining(3), &j, 2).unwrap();
        assert_eq!(ea.ops()[0], j);
        assert!(ea.ops()[1].is_zero());
        assert!(!ea.is_free());
        let ea1 = restrict_along(&ModuleExpr::defining(3), &j, 1).unwrap();
        assert!(ea1.is_free());
    }
}
