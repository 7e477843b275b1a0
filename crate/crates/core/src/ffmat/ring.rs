//! Commutative coefficient rings and a dense matrix type generic over them.
//!
//! Module actions are computed once, generically, and instantiated both over
//! the field itself and over truncated polynomial rings `F_q[t]/(t^(c+1))`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use super::field::Field;

pub(crate) trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Entrywise absolute Frobenius `a -> a^(p^r)` extended to the ring.
    fn frob(&self, a: &Self::Elem, r: u32) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

impl Ring for Field {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        Field::add(self, *a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        Field::neg(self, *a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        Field::mul(self, *a, *b)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn frob(&self, a: &u32, r: u32) -> u32 {
        Field::frob(self, *a, r)
    }
}

/// `F_q[t]`, optionally truncated above degree `trunc`.
///
/// Elements are coefficient vectors, lowest degree first, with no trailing
/// zeros (the zero polynomial is the empty vector).
#[derive(Clone, Debug)]
pub(crate) struct PolyRing {
    pub field: Field,
    pub trunc: Option<usize>,
}

pub(crate) fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl PolyRing {
    fn cut(&self, mut v: Vec<u32>) -> Vec<u32> {
        if let Some(c) = self.trunc {
            v.truncate(c + 1);
        }
        trim(v)
    }
}

impl Ring for PolyRing {
    type Elem = Vec<u32>;

    fn zero(&self) -> Vec<u32> {
        Vec::new()
    }
    fn one(&self) -> Vec<u32> {
        vec![1]
    }
    fn add(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.clone();
        for (o, &s) in out.iter_mut().zip(short.iter()) {
            *o = self.field.add(*o, s);
        }
        self.cut(out)
    }
    fn neg(&self, a: &Vec<u32>) -> Vec<u32> {
        a.iter().map(|&x| self.field.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut len = a.len() + b.len() - 1;
        if let Some(c) = self.trunc {
            len = len.min(c + 1);
        }
        let mut out = vec![0u32; len];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 || i >= len {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] = self.field.add(out[i + j], self.field.mul(x, y));
            }
        }
        trim(out)
    }
    fn is_zero(&self, a: &Vec<u32>) -> bool {
        a.is_empty()
    }
    fn frob(&self, a: &Vec<u32>, r: u32) -> Vec<u32> {
        if a.is_empty() {
            return Vec::new();
        }
        let step = (self.field.p() as usize).pow(r);
        let mut len = (a.len() - 1) * step + 1;
        if let Some(c) = self.trunc {
            len = len.min(c + 1);
        }
        let mut out = vec![0u32; len];
        for (i, &x) in a.iter().enumerate() {
            let k = i * step;
            if k >= len {
                break;
            }
            out[k] = self.field.frob(x, r);
        }
        trim(out)
    }
}

/// Row-major dense matrix over an arbitrary ring.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Dense<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Dense<E> {
    pub fn at(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> Dense<E> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.at(i, j).clone());
            }
        }
        Dense {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }
}

pub(crate) fn identity<R: Ring>(ring: &R, n: usize) -> Dense<R::Elem> {
    let mut data = vec![ring.zero(); n * n];
    for i in 0..n {
        data[i * n + i] = ring.one();
    }
    Dense {
        rows: n,
        cols: n,
        data,
    }
}

pub(crate) fn mat_mul<R: Ring>(ring: &R, a: &Dense<R::Elem>, b: &Dense<R::Elem>) -> Dense<R::Elem> {
    assert_eq!(a.cols, b.rows, "inner dimensions must agree");
    let mut data = vec![ring.zero(); a.rows * b.cols];
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.at(i, k);
            if ring.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.at(k, j);
                if ring.is_zero(y) {
                    continue;
                }
                let slot = &mut data[i * b.cols + j];
                *slot = ring.add(slot, &ring.mul(x, y));
            }
        }
    }
    Dense {
        rows: a.rows,
        cols: b.cols,
        data,
    }
}

/// Kronecker product with the left factor major.
pub(crate) fn kron<R: Ring>(ring: &R, a: &Dense<R::Elem>, b: &Dense<R::Elem>) -> Dense<R::Elem> {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut data = vec![ring.zero(); rows * cols];
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.at(i, j);
            if ring.is_zero(x) {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    data[(i * b.rows + k) * cols + j * b.cols + l] = ring.mul(x, b.at(k, l));
                }
            }
        }
    }
    Dense { rows, cols, data }
}

pub(crate) fn block_diag<R: Ring>(
    ring: &R,
    a: &Dense<R::Elem>,
    b: &Dense<R::Elem>,
) -> Dense<R::Elem> {
    let rows = a.rows + b.rows;
    let cols = a.cols + b.cols;
    let mut data = vec![ring.zero(); rows * cols];
    for i in 0..a.rows {
        for j in 0..a.cols {
            data[i * cols + j] = a.at(i, j).clone();
        }
    }
    for i in 0..b.rows {
        for j in 0..b.cols {
            data[(a.rows + i) * cols + a.cols + j] = b.at(i, j).clone();
        }
    }
    Dense { rows, cols, data }
}

pub(crate) fn frob_mat<R: Ring>(ring: &R, a: &Dense<R::Elem>, r: u32) -> Dense<R::Elem> {
    Dense {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().map(|x| ring.frob(x, r)).collect(),
    }
}

pub(crate) fn is_identity<R: Ring>(ring: &R, a: &Dense<R::Elem>) -> bool {
    a.rows == a.cols
        && (0..a.rows).all(|i| {
            (0..a.cols).all(|j| {
                let x = a.at(i, j);
                if i == j {
                    *x == ring.one()
                } else {
                    ring.is_zero(x)
                }
            })
        })
}

/// Determinant by cofactor expansion; valid over any commutative ring.
pub(crate) fn det<R: Ring>(ring: &R, a: &Dense<R::Elem>) -> R::Elem {
    assert_eq!(a.rows, a.cols);
    let cols: Vec<usize> = (0..a.cols).collect();
    det_rec(ring, a, 0, &cols)
}

fn det_rec<R: Ring>(ring: &R, a: &Dense<R::Elem>, row: usize, cols: &[usize]) -> R::Elem {
    match cols.len() {
        0 => ring.one(),
        1 => a.at(row, cols[0]).clone(),
        2 => {
            let x = ring.mul(a.at(row, cols[0]), a.at(row + 1, cols[1]));
            let y = ring.mul(a.at(row, cols[1]), a.at(row + 1, cols[0]));
            ring.sub(&x, &y)
        }
        _ => {
            let mut acc = ring.zero();
            let mut rest: Vec<usize> = Vec::with_capacity(cols.len() - 1);
            for (k, &c) in cols.iter().enumerate() {
                let entry = a.at(row, c);
                if ring.is_zero(entry) {
                    continue;
                }
                rest.clear();
                rest.extend(cols.iter().copied().filter(|&x| x != c));
                let term = ring.mul(entry, &det_rec(ring, a, row + 1, &rest));
                acc = if k % 2 == 0 {
                    ring.add(&acc, &term)
                } else {
                    ring.sub(&acc, &term)
                };
            }
            acc
        }
    }
}
