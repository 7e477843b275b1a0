//! Submodules: closure of a set of vectors under a family of operators,
//! exhaustive irreducibility, and restriction/quotient of an operator.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::expr::ModuleExpr;
use crate::error::{Error, Result};
use crate::ffmat::{Field, Matrix, PolyMatrix, Subspace, TruncationPolicy};

/// Smallest subspace of `F_q^ambient` containing `vectors` and mapped into
/// itself by every operator in `generators`.
pub fn submodule_closure(
    field: &Field,
    ambient: usize,
    vectors: &[Vec<u32>],
    generators: &[Matrix],
) -> Subspace {
    let mut space = Subspace::zero(field, ambient);
    let mut queue: Vec<Vec<u32>> = Vec::new();
    for v in vectors {
        if space.insert(v) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for g in generators {
            let w = g.mul_vec(&v);
            if space.insert(&w) {
                queue.push(w);
            }
        }
    }
    space
}

/// Which operators stand in for the group when testing stability.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorSet {
    /// The algebraic group `GL_n`: every `t`-coefficient of the action of
    /// the root subgroups `1 + t·E_ij` (`i != j`), together with the
    /// projections onto the torus weight spaces.
    Algebraic,
    /// The finite group `GL_n(F_q)`: transvections `1 + a·E_ij` for `a`
    /// running over an `F_p`-basis of `F_q`, and `diag(ζ, 1, …, 1)` for a
    /// primitive element `ζ`.
    FiniteGroup,
}

/// Operators whose common invariant subspaces are the submodules of `expr`
/// (for [`GeneratorSet::Algebraic`]) or of its restriction to `GL_n(F_q)`.
pub fn group_generators(
    expr: &ModuleExpr,
    field: &Field,
    set: GeneratorSet,
) -> Result<Vec<Matrix>> {
    let n = expr.n();
    let mut gens = Vec::new();
    match set {
        GeneratorSet::Algebraic => {
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let e = Matrix::unit(field, n, i, j);
                    let id = Matrix::identity(field, n);
                    let plus = PolyMatrix::from_coefficients(
                        &[id.clone(), e.clone()],
                        1,
                        TruncationPolicy::Strict,
                    )?;
                    let minus =
                        PolyMatrix::from_coefficients(&[id, -&e], 1, TruncationPolicy::Strict)?;
                    let action = expr.evaluate_poly(&plus, Some(&minus))?;
                    let top = action.degree().unwrap_or(0);
                    for d in 1..=top {
                        let c = action.coeff(d);
                        if !c.is_zero() {
                            gens.push(c);
                        }
                    }
                }
            }
            let weights = expr.basis_weights(field.p());
            let mut classes: BTreeMap<&[i64], Vec<usize>> = BTreeMap::new();
            for (k, w) in weights.iter().enumerate() {
                classes.entry(w.as_slice()).or_default().push(k);
            }
            if classes.len() > 1 {
                let dim = expr.dim();
                for members in classes.values() {
                    let mut diag = vec![0u32; dim];
                    for &k in members {
                        diag[k] = 1;
                    }
                    gens.push(Matrix::diag(field, &diag));
                }
            }
        }
        GeneratorSet::FiniteGroup => {
            let p = field.p();
            let basis: Vec<u32> = (0..field.m()).map(|k| p.pow(k)).collect();
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for &a in &basis {
                        let e = Matrix::unit(field, n, i, j);
                        let id = Matrix::identity(field, n);
                        let g = &id + &e.scale(a);
                        let g_inv = &id - &e.scale(a);
                        gens.push(expr.evaluate(&g, Some(&g_inv))?);
                    }
                }
            }
            if n > 0 {
                let mut d = vec![1u32; n];
                d[0] = field.primitive_element();
                let g = Matrix::diag(field, &d);
                let g_inv = g.inverse()?;
                gens.push(expr.evaluate(&g, Some(&g_inv))?);
            }
        }
    }
    Ok(gens)
}

/// Exhaustive irreducibility test: every nonzero vector, one per projective
/// point, must generate the whole module under [`GeneratorSet::Algebraic`].
///
/// Requires `q^dim <= budget`.
pub fn is_irreducible_exhaustive(expr: &ModuleExpr, field: &Field, budget: u64) -> Result<bool> {
    is_irreducible_with(expr, field, budget, GeneratorSet::Algebraic)
}

pub fn is_irreducible_with(
    expr: &ModuleExpr,
    field: &Field,
    budget: u64,
    set: GeneratorSet,
) -> Result<bool> {
    let dim = expr.dim();
    let q = field.q() as u128;
    let total = q.checked_pow(dim as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            candidates: total,
            budget,
        });
    }
    if dim == 0 {
        return Ok(false);
    }
    let gens = group_generators(expr, field, set)?;
    let mut v = vec![0u32; dim];
    for code in 1..total as u64 {
        let mut c = code;
        for slot in v.iter_mut().rev() {
            *slot = (c % q as u64) as u32;
            c /= q as u64;
        }
        // one representative per line: leading nonzero entry equal to 1
        if v.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let closure = submodule_closure(field, dim, core::slice::from_ref(&v), &gens);
        if closure.dim() < dim {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Splits `op` along an invariant subspace `sub`.
///
/// Returns the matrix of `op` restricted to `sub` in its echelon basis, and
/// the induced operator on the quotient in the basis of cosets of the
/// standard vectors at the non-pivot columns.
pub fn quotient_and_restrict(op: &Matrix, sub: &Subspace) -> Result<(Matrix, Matrix)> {
    let d = op.rows();
    if !op.is_square() || sub.ambient() != d {
        return Err(Error::DimensionMismatch {
            op: "quotient_and_restrict",
            left: op.shape(),
            right: (sub.ambient(), sub.ambient()),
        });
    }
    let field = op.field();
    let k = sub.dim();
    let mut is_pivot = vec![false; d];
    for &c in sub.pivots() {
        is_pivot[c] = true;
    }
    let mut columns: Vec<Vec<u32>> = sub.basis().to_vec();
    for c in (0..d).filter(|&c| !is_pivot[c]) {
        let mut e = vec![0u32; d];
        e[c] = 1;
        columns.push(e);
    }
    let basis = Matrix::from_fn(field, d, d, |i, j| columns[j][i]);
    let inv = basis.inverse()?;
    let conj = &(&inv * op) * &basis;
    for i in k..d {
        for j in 0..k {
            if conj.get(i, j) != 0 {
                return Err(Error::NotInvariant);
            }
        }
    }
    let restricted = Matrix::from_fn(field, k, k, |i, j| conj.get(i, j));
    let quotient = Matrix::from_fn(field, d - k, d - k, |i, j| conj.get(k + i, k + j));
    Ok((restricted, quotient))
}
