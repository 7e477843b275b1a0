//! Torus weights of the canonical basis vectors.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::expr::{monomials, subsets, ModuleExpr, Node};

/// Weights with multiplicities, sorted in descending lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    pub entries: Vec<(Vec<i64>, usize)>,
}

impl WeightTable {
    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, weight: &[i64]) -> usize {
        self.entries
            .iter()
            .find(|(w, _)| w.as_slice() == weight)
            .map_or(0, |(_, m)| *m)
    }
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn basis_weights(node: &Node, n: usize, p: u32) -> Vec<Vec<i64>> {
    match node {
        Node::Triv => vec![vec![0; n]],
        Node::Def(_) => (0..n)
            .map(|i| {
                let mut w = vec![0; n];
                w[i] = 1;
                w
            })
            .collect(),
        Node::Ad(_) => {
            let mut out = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let mut w = vec![0; n];
                    w[i] += 1;
                    w[j] -= 1;
                    out.push(w);
                }
            }
            out
        }
        Node::Dual(e) => basis_weights(e, n, p)
            .into_iter()
            .map(|w| w.into_iter().map(|x| -x).collect())
            .collect(),
        Node::Sum(a, b) => {
            let mut out = basis_weights(a, n, p);
            out.extend(basis_weights(b, n, p));
            out
        }
        Node::Tensor(a, b) => {
            let wb = basis_weights(b, n, p);
            basis_weights(a, n, p)
                .iter()
                .flat_map(|x| wb.iter().map(move |y| add(x, y)))
                .collect()
        }
        Node::Sym(d, e) => {
            let inner = basis_weights(e, n, p);
            monomials(inner.len(), *d)
                .iter()
                .map(|mono| {
                    let mut w = vec![0; n];
                    for (i, &k) in mono.iter().enumerate() {
                        for (slot, x) in w.iter_mut().zip(&inner[i]) {
                            *slot += k as i64 * x;
                        }
                    }
                    w
                })
                .collect()
        }
        Node::Ext(d, e) => {
            let inner = basis_weights(e, n, p);
            subsets(inner.len(), *d)
                .iter()
                .map(|s| s.iter().fold(vec![0; n], |acc, &i| add(&acc, &inner[i])))
                .collect()
        }
        Node::Twist(e, r) => {
            let scale = (p as i64).pow(*r);
            basis_weights(e, n, p)
                .into_iter()
                .map(|w| w.into_iter().map(|x| x * scale).collect())
                .collect()
        }
    }
}

impl ModuleExpr {
    /// Weight of each canonical basis vector, in basis order. Twists scale
    /// by powers of the characteristic `p`.
    pub fn basis_weights(&self, p: u32) -> Vec<Vec<i64>> {
        basis_weights(self.root(), self.n(), p)
    }

    pub fn weights(&self, p: u32) -> WeightTable {
        let mut counts: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for w in self.basis_weights(p) {
            *counts.entry(w).or_default() += 1;
        }
        WeightTable {
            entries: counts.into_iter().rev().collect(),
        }
    }
}
