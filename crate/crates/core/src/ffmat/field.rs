//! Finite fields `F_q`, `q = p^m`, with `m <= 4`.
//!
//! Elements are `u32` representatives in `0..q`. For `m = 1` the
//! representative is the residue mod `p`; for `m > 1` it is the base-`p`
//! encoding of the coefficient vector of the residue class in
//! `F_p[x]/(modulus)`, lowest coefficient in the least significant digit.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest extension field the log tables are built for.
const MAX_EXTENSION_ORDER: u64 = 1 << 16;

/// Parameters of a finite field: characteristic, degree and defining modulus.
///
/// `modulus` lists coefficients lowest degree first, including the leading 1.
/// It is ignored (and normalized to empty) when `m = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec {
            p,
            m: 1,
            modulus: Vec::new(),
        }
    }

    pub fn extension(p: u32, modulus: Vec<u32>) -> Self {
        let m = modulus.len().saturating_sub(1) as u32;
        FieldSpec { p, m, modulus }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.p, self.m, self.modulus)
        }
    }
}

struct FieldInner {
    spec: FieldSpec,
    q: u32,
    /// `exp[k] = g^k` for a primitive element `g`; empty for prime fields.
    exp: Vec<u32>,
    /// Discrete logarithms; `log[0]` is unused.
    log: Vec<u32>,
}

/// A validated finite field. Cloning is cheap.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.inner.spec)
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Dense polynomial helpers over F_p, used only while building the field.
// ---------------------------------------------------------------------------

fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db], p - 2, p);
    while a.len() > db {
        let top = a.len() - 1;
        let c = a[top] * lead_inv % p;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let k = top - db + i;
                a[k] = (a[k] + p - c * bi % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// No monic factor of degree `1..=m/2` divides the modulus.
fn modulus_is_irreducible(modulus: &[u64], p: u64) -> bool {
    let m = modulus.len() - 1;
    for d in 1..=m / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                divisor.push(c % p);
                c /= p;
            }
            divisor.push(1);
            if poly_rem(modulus.to_vec(), &divisor, p)
                .iter()
                .all(|&x| x == 0)
            {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Field> {
        if !is_prime(spec.p) {
            return Err(Error::InvalidField(format!("{} is not prime", spec.p)));
        }
        if spec.m == 0 || spec.m > 4 {
            return Err(Error::InvalidField(format!(
                "extension degree {} outside 1..=4",
                spec.m
            )));
        }
        let p = spec.p as u64;
        if spec.m == 1 {
            return Ok(Field {
                inner: Arc::new(FieldInner {
                    spec: FieldSpec::prime(spec.p),
                    q: spec.p,
                    exp: Vec::new(),
                    log: Vec::new(),
                }),
            });
        }
        let m = spec.m as usize;
        if spec.modulus.len() != m + 1 {
            return Err(Error::InvalidField(format!(
                "modulus must have {} coefficients, got {}",
                m + 1,
                spec.modulus.len()
            )));
        }
        if spec.modulus.iter().any(|&c| c as u64 >= p) {
            return Err(Error::InvalidField(
                "modulus coefficient not reduced".into(),
            ));
        }
        if spec.modulus[m] != 1 {
            return Err(Error::InvalidField("modulus is not monic".into()));
        }
        let q64 = p.pow(spec.m);
        if q64 > MAX_EXTENSION_ORDER {
            return Err(Error::InvalidField(format!(
                "extension field of order {q64} is too large"
            )));
        }
        let modulus: Vec<u64> = spec.modulus.iter().map(|&c| c as u64).collect();
        if !modulus_is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!(
                "modulus {:?} is reducible over F_{}",
                spec.modulus, spec.p
            )));
        }
        let q = q64 as u32;
        let encode = |coeffs: &[u64]| -> u32 {
            coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
        };
        let decode = |mut v: u32| -> Vec<u64> {
            let mut out = vec![0u64; m];
            for slot in out.iter_mut() {
                *slot = v as u64 % p;
                v /= spec.p;
            }
            out
        };
        let mulmod = |a: u32, b: u32| -> u32 {
            let (a, b) = (decode(a), decode(b));
            let mut prod = vec![0u64; 2 * m - 1];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = poly_rem(prod, &modulus, p);
            r.resize(m, 0);
            encode(&r)
        };
        // Search for a primitive element.
        let order = q - 1;
        let mut exp = Vec::new();
        for g in 2..q {
            let mut powers = Vec::with_capacity(order as usize);
            let mut x = 1u32;
            let mut ok = true;
            for k in 0..order {
                if k > 0 && x == 1 {
                    ok = false;
                    break;
                }
                powers.push(x);
                x = mulmod(x, g);
            }
            if ok && x == 1 {
                exp = powers;
                break;
            }
        }
        if exp.len() != order as usize {
            return Err(Error::InvalidField("no primitive element found".into()));
        }
        let mut log = vec![0u32; q as usize];
        for (k, &v) in exp.iter().enumerate() {
            log[v as usize] = k as u32;
        }
        Ok(Field {
            inner: Arc::new(FieldInner { spec, q, exp, log }),
        })
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(FieldSpec::prime(p))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.inner.spec
    }

    pub fn p(&self) -> u32 {
        self.inner.spec.p
    }

    pub fn m(&self) -> u32 {
        self.inner.spec.m
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.spec.m == 1
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.inner.q
    }

    /// All elements in representative order.
    pub fn elements(&self) -> core::ops::Range<u32> {
        0..self.inner.q
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p() as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.p();
        if self.is_prime_field() {
            let s = a as u64 + b as u64;
            return (s % p as u64) as u32;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m() {
            let d = (a % p + b % p) % p;
            out += d * place;
            place = place.wrapping_mul(p);
            a /= p;
            b /= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.p();
        if self.is_prime_field() {
            return if a == 0 { 0 } else { p - a };
        }
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m() {
            let d = a % p;
            out += ((p - d) % p) * place;
            place = place.wrapping_mul(p);
            a /= p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.is_prime_field() {
            return ((a as u64 * b as u64) % self.p() as u64) as u32;
        }
        let inner = &*self.inner;
        let order = inner.q - 1;
        let k = (inner.log[a as usize] + inner.log[b as usize]) % order;
        inner.exp[k as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if self.is_prime_field() {
            let p = self.p() as u64;
            return Some(pow_mod(a as u64, p - 2, p) as u32);
        }
        let inner = &*self.inner;
        let order = inner.q - 1;
        let k = (order - inner.log[a as usize]) % order;
        Some(inner.exp[k as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if self.is_prime_field() {
            let p = self.p() as u64;
            return pow_mod(a as u64, e, p) as u32;
        }
        let inner = &*self.inner;
        let order = (inner.q - 1) as u64;
        let k = (inner.log[a as usize] as u64 * (e % order)) % order;
        inner.exp[k as usize]
    }

    /// `a^(p^r)`, the `r`-th power of the absolute Frobenius.
    pub fn frob(&self, a: u32, r: u32) -> u32 {
        let m = self.m();
        let shift = r % m;
        if shift == 0 {
            return a;
        }
        self.pow(a, (self.p() as u64).pow(shift))
    }

    /// Inverse of `frob(., r)`, i.e. `a^(p^-r)`.
    pub fn frob_inv(&self, a: u32, r: u32) -> u32 {
        let m = self.m();
        self.frob(a, (m - r % m) % m)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        if !self.is_prime_field() {
            return self.inner.exp.get(1).copied().unwrap_or(1);
        }
        let p = self.p();
        if p == 2 {
            return 1;
        }
        let order = (p - 1) as u64;
        let mut factors = Vec::new();
        let mut rest = order;
        let mut d = 2u64;
        while d * d <= rest {
            if rest.is_multiple_of(d) {
                factors.push(d);
                while rest.is_multiple_of(d) {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            factors.push(rest);
        }
        (2..p)
            .find(|&g| factors.iter().all(|&f| self.pow(g, order / f) != 1))
            .expect("F_p^* is cyclic")
    }

    /// `1/k!` for `k < p`.
    pub fn inv_factorial(&self, k: u32) -> u32 {
        debug_assert!(k < self.p());
        let mut f = 1u32;
        for i in 2..=k {
            f = self.mul(f, self.from_i64(i as i64));
        }
        self.inv(f).expect("k! is a unit for k < p")
    }
}
