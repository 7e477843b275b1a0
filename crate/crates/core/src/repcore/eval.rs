//! Action matrices of module expressions.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::expr::{monomials, subsets, ModuleExpr, Node};
use crate::error::{Error, Result};
use crate::ffmat::ring::{self, Dense, Ring};
use crate::ffmat::{Matrix, PolyMatrix, TruncationPolicy};

/// Action of `node` on its canonical basis, with `g` and `g_inv` taking
/// values in the commutative ring `ring`.
pub(crate) fn act<R: Ring>(
    ring: &R,
    node: &Node,
    g: &Dense<R::Elem>,
    g_inv: Option<&Dense<R::Elem>>,
) -> Result<Dense<R::Elem>> {
    Ok(match node {
        Node::Triv => ring::identity(ring, 1),
        Node::Def(_) => g.clone(),
        Node::Ad(_) => {
            let inv = g_inv.ok_or(Error::MissingInverse)?;
            ring::kron(ring, g, &inv.transpose())
        }
        Node::Dual(e) => {
            let inv = g_inv.ok_or(Error::MissingInverse)?;
            act(ring, e, inv, Some(g))?.transpose()
        }
        Node::Sum(a, b) => {
            ring::block_diag(ring, &act(ring, a, g, g_inv)?, &act(ring, b, g, g_inv)?)
        }
        Node::Tensor(a, b) => ring::kron(ring, &act(ring, a, g, g_inv)?, &act(ring, b, g, g_inv)?),
        Node::Sym(d, e) => sym_power(ring, &act(ring, e, g, g_inv)?, *d),
        Node::Ext(d, e) => ext_power(ring, &act(ring, e, g, g_inv)?, *d),
        Node::Twist(e, r) => {
            let gf = ring::frob_mat(ring, g, *r);
            let inv_f = g_inv.map(|h| ring::frob_mat(ring, h, *r));
            act(ring, e, &gf, inv_f.as_ref())?
        }
    })
}

/// Induced action on degree-`d` monomials: column `ν` holds the expansion of
/// `Π_j (Σ_i a_ij x_i)^(ν_j)`.
fn sym_power<R: Ring>(ring: &R, a: &Dense<R::Elem>, d: usize) -> Dense<R::Elem> {
    let k = a.rows;
    let basis = monomials(k, d);
    let index: BTreeMap<&[u16], usize> = basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();
    let dim = basis.len();
    let mut data = vec![ring.zero(); dim * dim];
    for (col, nu) in basis.iter().enumerate() {
        let mut poly: BTreeMap<Vec<u16>, R::Elem> = BTreeMap::new();
        poly.insert(vec![0; k], ring.one());
        for (j, &mult) in nu.iter().enumerate() {
            for _ in 0..mult {
                let mut next: BTreeMap<Vec<u16>, R::Elem> = BTreeMap::new();
                for (mono, c) in &poly {
                    for i in 0..k {
                        let aij = a.at(i, j);
                        if ring.is_zero(aij) {
                            continue;
                        }
                        let mut m2 = mono.clone();
                        m2[i] += 1;
                        let term = ring.mul(c, aij);
                        let slot = next.entry(m2).or_insert_with(|| ring.zero());
                        *slot = ring.add(slot, &term);
                    }
                }
                poly = next;
            }
        }
        for (mono, c) in poly {
            if ring.is_zero(&c) {
                continue;
            }
            let row = index[mono.as_slice()];
            data[row * dim + col] = c;
        }
    }
    Dense {
        rows: dim,
        cols: dim,
        data,
    }
}

/// Induced action on `e_I = e_{i1} ∧ … ∧ e_{id}`: entry `(J, I)` is the
/// minor of `a` on rows `J` and columns `I`.
fn ext_power<R: Ring>(ring: &R, a: &Dense<R::Elem>, d: usize) -> Dense<R::Elem> {
    let basis = subsets(a.rows, d);
    let dim = basis.len();
    let mut data = Vec::with_capacity(dim * dim);
    for rows in &basis {
        for cols in &basis {
            let mut sub = Vec::with_capacity(d * d);
            for &r in rows {
                for &c in cols {
                    sub.push(a.at(r, c).clone());
                }
            }
            data.push(ring::det(
                ring,
                &Dense {
                    rows: d,
                    cols: d,
                    data: sub,
                },
            ));
        }
    }
    Dense {
        rows: dim,
        cols: dim,
        data,
    }
}

impl ModuleExpr {
    fn check_element(
        &self,
        shape: (usize, usize),
        inv_shape: Option<(usize, usize)>,
    ) -> Result<()> {
        if shape.0 != shape.1 || (self.n() != 0 && shape.0 != self.n()) {
            return Err(Error::DimensionMismatch {
                op: "evaluate",
                left: (self.n(), self.n()),
                right: shape,
            });
        }
        if let Some(s) = inv_shape {
            if s != shape {
                return Err(Error::DimensionMismatch {
                    op: "evaluate (inverse)",
                    left: shape,
                    right: s,
                });
            }
        }
        Ok(())
    }

    /// Action matrix of `g` on the canonical basis.
    ///
    /// `g_inv` is required (and checked) when the expression contains a
    /// dual or adjoint factor.
    pub fn evaluate(&self, g: &Matrix, g_inv: Option<&Matrix>) -> Result<Matrix> {
        self.check_element(g.shape(), g_inv.map(Matrix::shape))?;
        let field = g.field();
        let inv = if self.needs_inverse() {
            let h = g_inv.ok_or(Error::MissingInverse)?;
            if h.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !(g * h).is_identity() {
                return Err(Error::BadInverse);
            }
            Some(h.to_dense())
        } else {
            None
        };
        let d = act(field, self.root(), &g.to_dense(), inv.as_ref())?;
        Ok(Matrix::from_dense(field, d))
    }

    /// Action matrix of a polynomial group element.
    ///
    /// A strict input yields a strict output with cap `polydeg · cap(g)`;
    /// a truncating input is evaluated in `F_q[t]/(t^(cap+1))` and keeps
    /// its cap.
    pub fn evaluate_poly(&self, g: &PolyMatrix, g_inv: Option<&PolyMatrix>) -> Result<PolyMatrix> {
        self.check_element(g.shape(), g_inv.map(PolyMatrix::shape))?;
        let field = g.field();
        let inv = if self.needs_inverse() {
            let h = g_inv.ok_or(Error::MissingInverse)?;
            if h.field() != field {
                return Err(Error::FieldMismatch);
            }
            if h.policy() != g.policy() {
                return Err(Error::InvalidArgument(
                    "element and inverse use different truncation policies".into(),
                ));
            }
            Some(h)
        } else {
            None
        };
        let (cap, ring) = match g.policy() {
            TruncationPolicy::Strict => {
                let input_cap = inv.map_or(g.degree_cap(), |h| h.degree_cap().max(g.degree_cap()));
                (self.polynomial_degree(field.p()) * input_cap, g.ring())
            }
            TruncationPolicy::Truncating => {
                let c = inv.map_or(g.degree_cap(), |h| h.degree_cap().min(g.degree_cap()));
                let mut ring = g.ring();
                ring.trunc = Some(c);
                (c, ring)
            }
        };
        let gd = g.to_dense();
        let inv_d = inv.map(|h| h.to_dense());
        if let Some(h) = &inv_d {
            if !ring::is_identity(&ring, &ring::mat_mul(&ring, &gd, h)) {
                return Err(Error::BadInverse);
            }
        }
        let d = act(&ring, self.root(), &gd, inv_d.as_ref())?;
        PolyMatrix::from_dense(field, d, cap, g.policy())
    }
}
