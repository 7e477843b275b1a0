//! The restricted Lie algebra `gl_n`, its `p`-nilpotent cone, and the variety
//! of commuting `r`-tuples of `p`-nilpotent matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ffmat::{Field, Matrix};

/// `XY - YX`.
pub fn bracket(x: &Matrix, y: &Matrix) -> Result<Matrix> {
    if !x.is_square() || x.shape() != y.shape() {
        return Err(Error::DimensionMismatch {
            op: "bracket",
            left: x.shape(),
            right: y.shape(),
        });
    }
    (x.checked_mul(y)?).checked_sub(&y.checked_mul(x)?)
}

/// The `p`-operation of `gl_n`: the matrix `p`-th power.
pub fn p_power(x: &Matrix) -> Result<Matrix> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch {
            op: "p_power",
            left: x.shape(),
            right: x.shape(),
        });
    }
    Ok(x.pow(x.field().p() as u64))
}

pub fn is_p_nilpotent(x: &Matrix) -> bool {
    x.is_square() && x.pow(x.field().p() as u64).is_zero()
}

/// The first defining equation a candidate tuple fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `B_index^p != 0`.
    NotNilpotent { index: usize },
    /// `[B_i, B_j] != 0`.
    NotCommuting { i: usize, j: usize },
    /// Shapes or fields disagree.
    Shape { index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotNilpotent { index } => write!(f, "B_{index}^p != 0"),
            Violation::NotCommuting { i, j } => write!(f, "[B_{i}, B_{j}] != 0"),
            Violation::Shape { index } => write!(f, "B_{index} has the wrong shape or field"),
        }
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Error {
        match v {
            Violation::NotNilpotent { index } => Error::NotNilpotent { index },
            Violation::NotCommuting { i, j } => Error::NotCommuting { i, j },
            Violation::Shape { index } => Error::InvalidArgument(alloc::format!(
                "matrix {index} has the wrong shape or field"
            )),
        }
    }
}

/// Checks `B_i^p = 0` for all `i` (in order), then `[B_i, B_j] = 0` for
/// `i < j` in lexicographic order, and reports the first failure.
pub fn is_commuting_nilpotent(mats: &[Matrix]) -> core::result::Result<(), Violation> {
    let Some(first) = mats.first() else {
        return Ok(());
    };
    for (index, b) in mats.iter().enumerate() {
        if !b.is_square() || b.shape() != first.shape() || b.field() != first.field() {
            return Err(Violation::Shape { index });
        }
    }
    for (index, b) in mats.iter().enumerate() {
        if !is_p_nilpotent(b) {
            return Err(Violation::NotNilpotent { index });
        }
    }
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            if !mats[i].commutes_with(&mats[j]) {
                return Err(Violation::NotCommuting { i, j });
            }
        }
    }
    Ok(())
}

/// A point of `C_r(N_p(gl_n))`: pairwise-commuting `p`-nilpotent matrices
/// `(B_0, …, B_{r-1})`.
#[derive(Clone, PartialEq, Eq)]
pub struct NilTuple {
    field: Field,
    n: usize,
    mats: Vec<Matrix>,
}

impl fmt::Debug for NilTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.mats.iter()).finish()
    }
}

impl NilTuple {
    pub fn new(field: &Field, n: usize, mats: Vec<Matrix>) -> Result<NilTuple> {
        for (index, b) in mats.iter().enumerate() {
            if b.shape() != (n, n) || b.field() != field {
                return Err(Violation::Shape { index }.into());
            }
        }
        is_commuting_nilpotent(&mats)?;
        Ok(NilTuple {
            field: field.clone(),
            n,
            mats,
        })
    }

    pub(crate) fn new_unchecked(field: &Field, n: usize, mats: Vec<Matrix>) -> NilTuple {
        debug_assert!(is_commuting_nilpotent(&mats).is_ok());
        NilTuple {
            field: field.clone(),
            n,
            mats,
        }
    }

    pub fn zero(field: &Field, n: usize, r: usize) -> NilTuple {
        NilTuple {
            field: field.clone(),
            n,
            mats: vec![Matrix::zeros(field, n, n); r],
        }
    }

    pub fn single(b: Matrix) -> Result<NilTuple> {
        let field = b.field().clone();
        let n = b.rows();
        NilTuple::new(&field, n, vec![b])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.mats.len()
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(Matrix::is_zero)
    }

    /// `(B_{r-1}, …, B_0)`.
    pub fn reversed(&self) -> NilTuple {
        let mut mats = self.mats.clone();
        mats.reverse();
        NilTuple::new_unchecked(&self.field, self.n, mats)
    }

    /// `(B_1^(1), …, B_{r-1}^(1))`: drop the first entry and apply the
    /// entrywise Frobenius to the rest.
    pub fn frobenius_shift(&self) -> NilTuple {
        let mats = self.mats.iter().skip(1).map(|b| b.frob_power(1)).collect();
        NilTuple::new_unchecked(&self.field, self.n, mats)
    }

    /// Pads with zero matrices up to length `r`, or returns a copy.
    pub fn padded(&self, r: usize) -> NilTuple {
        let mut mats = self.mats.clone();
        while mats.len() < r {
            mats.push(Matrix::zeros(&self.field, self.n, self.n));
        }
        NilTuple::new_unchecked(&self.field, self.n, mats)
    }

    /// Whether every entry lies in the prime field.
    pub fn is_over_prime_field(&self) -> bool {
        self.mats
            .iter()
            .all(|b| b.entries().iter().all(|&a| self.field.frob(a, 1) == a))
    }
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

fn candidate_count(q: u32, n: usize, r: usize) -> u128 {
    let exp = (n * n * r) as u32;
    (q as u128).checked_pow(exp).unwrap_or(u128::MAX)
}

fn matrix_from_code(field: &Field, n: usize, mut code: u64) -> Matrix {
    let q = field.q() as u64;
    let mut data = vec![0u32; n * n];
    for slot in data.iter_mut().rev() {
        *slot = (code % q) as u32;
        code /= q;
    }
    Matrix::new(field, n, n, data).expect("reduced")
}

/// All `p`-nilpotent `n×n` matrices in lexicographic order of their
/// row-major entry lists.
pub fn nilpotent_cone(field: &Field, n: usize, budget: u64) -> Result<Vec<Matrix>> {
    let total = candidate_count(field.q(), n, 1);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            candidates: total,
            budget,
        });
    }
    Ok((0..total as u64)
        .map(|code| matrix_from_code(field, n, code))
        .filter(is_p_nilpotent)
        .collect())
}

/// Exhaustive stream over `C_r(N_p(gl_n))(F_q)`, in lexicographic order of
/// the concatenated entry lists `(B_0, …, B_{r-1})`.
pub struct CrEnumeration {
    field: Field,
    n: usize,
    r: usize,
    cone: Vec<Matrix>,
    /// `commute[a][b]`: cone elements `a` and `b` commute.
    commute: Vec<Vec<bool>>,
    stack: Vec<usize>,
    started: bool,
    done: bool,
}

impl CrEnumeration {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// The `p`-nilpotent cone the tuples are drawn from.
    pub fn cone(&self) -> &[Matrix] {
        &self.cone
    }

    fn fits(&self, depth: usize, cand: usize) -> bool {
        self.stack[..depth].iter().all(|&a| self.commute[a][cand])
    }

    /// Smallest valid index `>= from` at `depth`.
    fn next_at(&self, depth: usize, from: usize) -> Option<usize> {
        (from..self.cone.len()).find(|&c| self.fits(depth, c))
    }

    /// Fills positions `depth..r` with their smallest valid choices.
    fn fill_from(&mut self, depth: usize) -> bool {
        for d in depth..self.r {
            match self.next_at(d, 0) {
                Some(c) => self.stack.push(c),
                None => return false,
            }
        }
        true
    }

    fn advance(&mut self) -> bool {
        loop {
            let Some(last) = self.stack.pop() else {
                return false;
            };
            let depth = self.stack.len();
            if let Some(c) = self.next_at(depth, last + 1) {
                self.stack.push(c);
                if self.fill_from(depth + 1) {
                    return true;
                }
                // Zero always commutes, so this is unreachable in practice.
                self.stack.truncate(depth + 1);
            }
        }
    }
}

impl Iterator for CrEnumeration {
    type Item = NilTuple;

    fn next(&mut self) -> Option<NilTuple> {
        if self.done {
            return None;
        }
        let ok = if !self.started {
            self.started = true;
            self.fill_from(0)
        } else {
            self.advance()
        };
        if !ok {
            self.done = true;
            return None;
        }
        if self.r == 0 {
            self.done = true;
        }
        let mats = self.stack.iter().map(|&i| self.cone[i].clone()).collect();
        Some(NilTuple::new_unchecked(&self.field, self.n, mats))
    }
}

/// Enumerates every point of `C_r(N_p(gl_n))` over `field`.
///
/// Fails when `q^(n²r)` exceeds `budget`; use [`sample_cr`] instead.
pub fn enumerate_cr(n: usize, r: usize, field: &Field, budget: u64) -> Result<CrEnumeration> {
    let total = candidate_count(field.q(), n, r);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            candidates: total,
            budget,
        });
    }
    let cone = nilpotent_cone(field, n, budget)?;
    let commute = cone
        .iter()
        .map(|a| cone.iter().map(|b| a.commutes_with(b)).collect())
        .collect();
    Ok(CrEnumeration {
        field: field.clone(),
        n,
        r,
        cone,
        commute,
        stack: Vec::with_capacity(r),
        started: false,
        done: false,
    })
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

/// Default number of uniform candidates tried before the structured fallback.
pub const DEFAULT_REJECTION_LIMIT: usize = 1000;

pub fn random_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    field: &Field,
    rows: usize,
    cols: usize,
) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| rng.gen_range(0..field.q()))
}

/// Uniformly random invertible matrix, by rejection.
pub fn random_invertible<R: Rng + ?Sized>(
    rng: &mut R,
    field: &Field,
    n: usize,
) -> (Matrix, Matrix) {
    loop {
        let g = random_matrix(rng, field, n, n);
        if let Ok(inv) = g.inverse() {
            return (g, inv);
        }
    }
}

fn random_strictly_upper<R: Rng + ?Sized>(rng: &mut R, field: &Field, n: usize) -> Matrix {
    Matrix::from_fn(field, n, n, |i, j| {
        if j > i {
            rng.gen_range(0..field.q())
        } else {
            0
        }
    })
}

/// Deterministically samples a point of `C_r(N_p(gl_n))` from `seed`.
///
/// Uniform candidates are tried `rejection_limit` times; after that the
/// tuple is built inside the centralizer of one random strictly upper
/// triangular `p`-nilpotent matrix `U`, as polynomials in `U` without
/// constant term.
pub fn sample_cr(n: usize, r: usize, field: &Field, seed: u64, rejection_limit: usize) -> NilTuple {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..rejection_limit {
        let mats: Vec<Matrix> = (0..r)
            .map(|_| random_matrix(&mut rng, field, n, n))
            .collect();
        if is_commuting_nilpotent(&mats).is_ok() {
            return NilTuple::new_unchecked(field, n, mats);
        }
    }
    structured_sample(&mut rng, n, r, field)
}

fn structured_sample<R: Rng + ?Sized>(rng: &mut R, n: usize, r: usize, field: &Field) -> NilTuple {
    let mut u = Matrix::zeros(field, n, n);
    for _ in 0..32 {
        let cand = random_strictly_upper(rng, field, n);
        if is_p_nilpotent(&cand) {
            u = cand;
            break;
        }
    }
    if u.is_zero() && n >= 2 {
        // E_{0,n-1} squares to zero.
        let c = rng.gen_range(1..field.q());
        u = Matrix::unit(field, n, 0, n - 1).scale(c);
    }
    let powers: Vec<Matrix> = (1..n.max(1)).map(|k| u.pow(k as u64)).collect();
    let mats = (0..r)
        .map(|_| {
            let mut b = Matrix::zeros(field, n, n);
            for pk in &powers {
                let c = rng.gen_range(0..field.q());
                if c != 0 {
                    b = &b + &pk.scale(c);
                }
            }
            b
        })
        .collect();
    NilTuple::new_unchecked(field, n, mats)
}
