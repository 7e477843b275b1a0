//! Truncated exponentials of `p`-nilpotent matrices and the 1-parameter
//! subgroups `t ↦ Π_s exp_{B_s}(t^(p^s))` of `GL_n` they define.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ffmat::{Field, Matrix, PolyMatrix, TruncationPolicy};
use crate::liealg::{is_p_nilpotent, NilTuple};
use crate::repcore::ModuleExpr;

/// `Σ_{i<p} (±t)^i B^i / i!` as a strict polynomial matrix of cap `p - 1`.
pub fn exp_nil(b: &Matrix, negate: bool) -> Result<PolyMatrix> {
    exp_capped(
        b,
        negate,
        b.field().p() as usize - 1,
        TruncationPolicy::Strict,
    )
}

/// The exponential with the given cap and policy. Terms above a truncating
/// cap are dropped.
pub(crate) fn exp_capped(
    b: &Matrix,
    negate: bool,
    cap: usize,
    policy: TruncationPolicy,
) -> Result<PolyMatrix> {
    if !b.is_square() {
        return Err(Error::DimensionMismatch {
            op: "exp_nil",
            left: b.shape(),
            right: b.shape(),
        });
    }
    if !is_p_nilpotent(b) {
        return Err(Error::NotNilpotent { index: 0 });
    }
    let field = b.field();
    let p = field.p() as usize;
    let top = match policy {
        TruncationPolicy::Strict => p - 1,
        TruncationPolicy::Truncating => (p - 1).min(cap),
    };
    let mut coeffs = Vec::with_capacity(top + 1);
    let mut power = Matrix::identity(field, b.rows());
    for i in 0..=top {
        let mut c = field.inv_factorial(i as u32);
        if negate && i % 2 == 1 {
            c = field.neg(c);
        }
        coeffs.push(power.scale(c));
        power = &power * b;
    }
    PolyMatrix::from_coefficients(&coeffs, cap, policy)
}

/// `ψ(t) = Π_{s<r} exp_{B_s}(t^(p^s))` for a point `(B_0, …, B_{r-1})` of the
/// commuting nilpotent variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneParamSubgroup {
    tuple: NilTuple,
}

impl OneParamSubgroup {
    pub fn new(tuple: NilTuple) -> OneParamSubgroup {
        OneParamSubgroup { tuple }
    }

    pub fn tuple(&self) -> &NilTuple {
        &self.tuple
    }

    pub fn field(&self) -> &Field {
        self.tuple.field()
    }

    /// Degree bound of `ψ(t)`: `(p - 1)(1 + p + … + p^(r-1)) = p^r - 1`.
    pub fn degree_cap(&self) -> usize {
        (self.field().p() as usize).pow(self.tuple.r() as u32) - 1
    }

    /// `ψ(t)` and `ψ(t)^{-1}`, exact.
    pub fn element(&self) -> Result<(PolyMatrix, PolyMatrix)> {
        self.element_with(self.degree_cap(), TruncationPolicy::Strict)
    }

    /// `ψ(t)` and its inverse, the factors multiplied with the given cap.
    pub(crate) fn element_with(
        &self,
        cap: usize,
        policy: TruncationPolicy,
    ) -> Result<(PolyMatrix, PolyMatrix)> {
        let field = self.tuple.field();
        let n = self.tuple.n();
        let p = field.p() as usize;
        let mut g = PolyMatrix::identity(field, n, cap, policy);
        let mut g_inv = PolyMatrix::identity(field, n, cap, policy);
        for (s, b) in self.tuple.mats().iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let step = p.pow(s as u32);
            if policy == TruncationPolicy::Truncating && step > cap {
                break;
            }
            let inner_cap = match policy {
                TruncationPolicy::Strict => p - 1,
                TruncationPolicy::Truncating => cap,
            };
            let e = exp_capped(b, false, inner_cap, policy)?.compose_power(step)?;
            let e_inv = exp_capped(b, true, inner_cap, policy)?.compose_power(step)?;
            g = g.mul(&e.with_cap(cap, policy)?)?;
            g_inv = g_inv.mul(&e_inv.with_cap(cap, policy)?)?;
        }
        Ok((g, g_inv))
    }
}

fn check_size(module: &ModuleExpr, tuple: &NilTuple) -> Result<()> {
    if module.n() != 0 && module.n() != tuple.n() {
        return Err(Error::DimensionMismatch {
            op: "module at tuple",
            left: (module.n(), module.n()),
            right: (tuple.n(), tuple.n()),
        });
    }
    Ok(())
}

/// `ρ(ψ(t))`: the action of the 1-parameter subgroup on the module, as an
/// exact polynomial matrix.
pub fn psg_eval(psi: &OneParamSubgroup, module: &ModuleExpr) -> Result<PolyMatrix> {
    check_size(module, psi.tuple())?;
    let (g, g_inv) = psi.element()?;
    module.evaluate_poly(&g, module.needs_inverse().then_some(&g_inv))
}

/// `ρ(ψ(t))` modulo `t^(cap+1)`.
pub(crate) fn psg_eval_truncated(
    psi: &OneParamSubgroup,
    module: &ModuleExpr,
    cap: usize,
) -> Result<PolyMatrix> {
    check_size(module, psi.tuple())?;
    let (g, g_inv) = psi.element_with(cap, TruncationPolicy::Truncating)?;
    module.evaluate_poly(&g, module.needs_inverse().then_some(&g_inv))
}

/// Smallest `r` with `p^r > polydeg(E)·(p - 1)`.
///
/// Every coefficient of `t^(p^s)`, `s >= r`, in `ρ(exp_B(t))` vanishes, since
/// that polynomial has degree at most `polydeg(E)·(p - 1)`.
pub fn exp_degree_bound(module: &ModuleExpr, p: u32) -> usize {
    let bound = module.polynomial_degree(p) as u128 * (p as u128 - 1);
    let mut r = 0;
    let mut pr: u128 = 1;
    while pr <= bound {
        pr *= p as u128;
        r += 1;
    }
    r
}

/// Keeps the first `exp_degree_bound(E, p)` terms of a formal sequence of
/// `n×n` `p`-nilpotent matrices, padding with zeros if it ends early.
pub fn truncate_formal<I>(seq: I, module: &ModuleExpr, field: &Field, n: usize) -> Result<NilTuple>
where
    I: IntoIterator<Item = Matrix>,
{
    let r = exp_degree_bound(module, field.p());
    let mut mats: Vec<Matrix> = seq.into_iter().take(r).collect();
    while mats.len() < r {
        mats.push(Matrix::zeros(field, n, n));
    }
    NilTuple::new(field, n, mats)
}
