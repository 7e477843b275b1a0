//! Independent reference computations for the integration tests. Prime
//! fields only, plain `Vec` arithmetic, no library elimination.

#![allow(dead_code)]

use std::collections::HashSet;

use nilsupport_core::{Field, Matrix};

/// Row-major square matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub n: usize,
    pub p: u32,
    pub a: Vec<u32>,
}

impl Mat {
    pub fn zero(n: usize, p: u32) -> Mat {
        Mat {
            n,
            p,
            a: vec![0; n * n],
        }
    }

    pub fn from_matrix(m: &Matrix) -> Mat {
        assert!(m.field().is_prime_field());
        Mat {
            n: m.rows(),
            p: m.field().p(),
            a: m.entries().to_vec(),
        }
    }

    pub fn to_matrix(&self, field: &Field) -> Matrix {
        Matrix::new(field, self.n, self.n, self.a.clone()).unwrap()
    }

    pub fn at(&self, i: usize, j: usize) -> u32 {
        self.a[i * self.n + j]
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        let n = self.n;
        let p = self.p as u64;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u64;
                for k in 0..n {
                    s += self.at(i, k) as u64 * o.at(k, j) as u64;
                }
                out[i * n + j] = (s % p) as u32;
            }
        }
        Mat {
            n,
            p: self.p,
            a: out,
        }
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.n)
            .map(|i| {
                let s: u64 = (0..self.n)
                    .map(|k| self.at(i, k) as u64 * v[k] as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p)
        .find(|&b| (a as u64 * b as u64) % p as u64 == 1)
        .expect("invertible")
}

/// Echelon basis of the span of `vectors`, built one vector at a time.
#[derive(Clone, Debug)]
pub struct Span {
    p: u32,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Span {
    pub fn new(p: u32) -> Span {
        Span {
            p,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            let c = v[*piv] as u64;
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = ((*x as u64 + (p - c) * r as u64) % p) as u32;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the span grew.
    pub fn add(&mut self, v: &[u32]) -> bool {
        let mut r = self.reduce(v);
        let Some(piv) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(r[piv], self.p) as u64;
        for x in r.iter_mut() {
            *x = ((*x as u64 * inv) % self.p as u64) as u32;
        }
        // keep the basis fully reduced at pivots
        let p = self.p as u64;
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv] as u64;
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&r) {
                    *x = ((*x as u64 + (p - c) * y as u64) % p) as u32;
                }
            }
        }
        self.rows.push((piv, r));
        true
    }
}

/// Kernel basis of `m` by Gauss-Jordan elimination, one vector per free
/// column.
pub fn kernel(m: &Mat) -> Vec<Vec<u32>> {
    let (n, p) = (m.n, m.p as u64);
    // eliminate on a copy, tracking the pivot column of each row
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| m.at(i, j) as u64).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..n).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, r);
        let inv = inv_mod(a[row][col] as u32, m.p) as u64;
        for x in a[row].iter_mut() {
            *x = *x * inv % p;
        }
        for r2 in 0..n {
            if r2 != row && a[r2][col] != 0 {
                let c = a[r2][col];
                let pivot = a[row].clone();
                for (x, y) in a[r2].iter_mut().zip(pivot) {
                    *x = (*x + (p - c) * y) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u32; n];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = ((p - a[r][f]) % p) as u32;
            }
            v
        })
        .collect()
}

/// Jordan block sizes of a nilpotent matrix by building Jordan chains.
///
/// Tops of chains of length `j` are picked from `ker N^j`, independent of
/// `ker N^(j-1)` and of the chain vectors already placed at that level.
/// The chains are checked to form a basis before the sizes are returned.
pub fn chain_blocks(m: &Mat) -> Vec<usize> {
    let n = m.n;
    let mut kers: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
    let mut power = Mat {
        n,
        p: m.p,
        a: (0..n * n).map(|k| u32::from(k / n == k % n)).collect(),
    };
    loop {
        power = power.mul(m);
        let k = kernel(&power);
        let full = k.len() == n;
        kers.push(k);
        if full {
            break;
        }
        assert!(kers.len() <= n + 1, "not nilpotent");
    }
    let top = kers.len() - 1;
    let mut chains: Vec<Vec<Vec<u32>>> = Vec::new();
    for j in (1..=top).rev() {
        let mut level = Span::new(m.p);
        for v in &kers[j - 1] {
            level.add(v);
        }
        for c in &chains {
            // the vector of chain c lying in ker N^j but not ker N^(j-1)
            let idx = c.len() - j;
            level.add(&c[idx]);
        }
        for v in &kers[j] {
            if level.add(v) {
                let mut chain = vec![v.clone()];
                for _ in 1..j {
                    let next = m.apply(chain.last().unwrap());
                    chain.push(next);
                }
                assert!(m.apply(chain.last().unwrap()).iter().all(|&x| x == 0));
                chains.push(chain);
            }
        }
    }
    let mut basis = Span::new(m.p);
    for c in &chains {
        for v in c {
            assert!(basis.add(v), "chain vectors are dependent");
        }
    }
    assert_eq!(basis.dim(), n, "chains do not span");
    let mut sizes: Vec<usize> = chains.iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Every `n×n` nilpotent matrix over `F_p`, each exactly once.
///
/// A nilpotent `N` stabilizes a complete flag with `N V_k ⊂ V_(k-1)`, so it
/// is `g U g^{-1}` for `U` strictly upper triangular and `g` whose columns
/// are adapted to the flag. Flags are listed by canonical adapted bases.
pub fn all_nilpotent(n: usize, p: u32) -> Vec<Mat> {
    let mut flags: Vec<Vec<Vec<u32>>> = Vec::new();
    adapted_bases(n, p, &mut Vec::new(), &mut flags);
    let upper_slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let count = (p as u64).pow(upper_slots.len() as u32);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out = Vec::new();
    for cols in &flags {
        let g = Mat {
            n,
            p,
            a: (0..n * n).map(|k| cols[k % n][k / n]).collect(),
        };
        let g_inv = invert(&g);
        for code in 0..count {
            let mut u = Mat::zero(n, p);
            let mut c = code;
            for &(i, j) in &upper_slots {
                u.a[i * n + j] = (c % p as u64) as u32;
                c /= p as u64;
            }
            let m = g.mul(&u).mul(&g_inv);
            if seen.insert(m.a.clone()) {
                out.push(m);
            }
        }
    }
    out
}

fn adapted_bases(n: usize, p: u32, prefix: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    let mut span = Span::new(p);
    for v in prefix.iter() {
        span.add(v);
    }
    let pivots: Vec<usize> = span.rows.iter().map(|(c, _)| *c).collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let k = free.len();
    for code in 1..(p as u64).pow(k as u32) {
        let mut coords = vec![0u32; k];
        let mut c = code;
        for slot in coords.iter_mut() {
            *slot = (c % p as u64) as u32;
            c /= p as u64;
        }
        // one representative per line: first nonzero coordinate is 1
        if coords.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let mut v = vec![0u32; n];
        for (&f, &x) in free.iter().zip(&coords) {
            v[f] = x;
        }
        prefix.push(v);
        adapted_bases(n, p, prefix, out);
        prefix.pop();
    }
}

/// Inverse by Gauss-Jordan on `[g | I]`.
pub fn invert(g: &Mat) -> Mat {
    let (n, p) = (g.n, g.p as u64);
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row: Vec<u64> = (0..n).map(|j| g.at(i, j) as u64).collect();
            row.extend((0..n).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    for col in 0..n {
        let r = (col..n).find(|&r| a[r][col] != 0).expect("invertible");
        a.swap(col, r);
        let inv = inv_mod(a[col][col] as u32, g.p) as u64;
        for x in a[col].iter_mut() {
            *x = *x * inv % p;
        }
        for r2 in 0..n {
            if r2 != col && a[r2][col] != 0 {
                let c = a[r2][col];
                let pivot = a[col].clone();
                for (x, y) in a[r2].iter_mut().zip(pivot) {
                    *x = (*x + (p - c) * y) % p;
                }
            }
        }
    }
    Mat {
        n,
        p: g.p,
        a: (0..n * n).map(|k| a[k / n][n + k % n] as u32).collect(),
    }
}

/// Membership in the support from the chain construction: some block is
/// shorter than `p`.
pub fn oracle_member(op: &Matrix) -> bool {
    let p = op.field().p() as usize;
    chain_blocks(&Mat::from_matrix(op)).iter().any(|&k| k < p)
}
