//! Pointwise checks of the structural properties of support varieties over
//! a grid of modules and enumerated points.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::jordan::{is_free_operator, jordan_type_of};
use super::local::{
    alpha_operator, conjugate_with, ga_alpha, in_support, lambda_reverse, mu_operator,
    restrict_along,
};
use crate::error::{Error, Result};
use crate::ffmat::{Field, Matrix, Subspace};
use crate::liealg::{enumerate_cr, random_invertible, NilTuple};
use crate::oneparam::exp_degree_bound;
use crate::repcore::{ea_free, quotient_and_restrict, EAModule, ModuleExpr, Node};

/// Items run when none are requested explicitly.
pub const DEFAULT_ITEMS: [u8; 7] = [1, 3, 4, 5, 6, 7, 8];

/// Every item the suite knows. Item 2 is a partial check only.
pub const ALL_ITEMS: [u8; 8] = [1, 2, 3, 4, 5, 6, 7, 8];

pub fn item_name(item: u8) -> &'static str {
    match item {
        1 => "pi-point comparison",
        2 => "scaling along lines",
        3 => "direct sums",
        4 => "tensor products",
        5 => "short exact sequences",
        6 => "Frobenius twist",
        7 => "restriction to Frobenius kernels",
        8 => "conjugation invariance",
        _ => "unknown",
    }
}

/// A named set of modules and enumerated points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub name: String,
    pub primes: Vec<u32>,
    pub n: usize,
    pub lengths: Vec<usize>,
    pub modules: Vec<ModuleExpr>,
}

impl Grid {
    /// `p ∈ {2, 3}`, `n = 2`, `r ∈ {1, 2}` over the prime field, seven modules.
    pub fn tiny() -> Grid {
        let def = || Node::Def(2);
        let modules = [
            Node::Triv,
            def(),
            Node::sym(2, def()),
            Node::sym(3, def()),
            Node::tensor(def(), def()),
            Node::twist(def(), 1),
            Node::ext(2, def()),
        ]
        .into_iter()
        .map(|n| ModuleExpr::new(n).expect("valid"))
        .collect();
        Grid {
            name: "tiny".into(),
            primes: vec![2, 3],
            n: 2,
            lengths: vec![1, 2],
            modules,
        }
    }

    pub fn preset(name: &str) -> Option<Grid> {
        match name {
            "tiny" => Some(Grid::tiny()),
            _ => None,
        }
    }

    /// All points of `C_r(N_p(gl_n))(F_p)` for the grid's `p` and `r`.
    pub fn tuples(&self, budget: u64) -> Result<Vec<NilTuple>> {
        let mut out = Vec::new();
        for &p in &self.primes {
            let field = Field::prime(p)?;
            for &r in &self.lengths {
                out.extend(enumerate_cr(self.n, r, &field, budget)?);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub items: Vec<u8>,
    pub seed: u64,
    /// Random conjugating matrices per module and point (item 8).
    pub conjugations: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            items: DEFAULT_ITEMS.to_vec(),
            seed: 0,
            conjugations: 50,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItemReport {
    pub item: u8,
    pub name: &'static str,
    pub checks: u64,
    /// First failing datum, if any.
    pub counterexample: Option<String>,
    /// Informational counters, sorted by name.
    pub stats: Vec<(&'static str, u64)>,
}

impl ItemReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub grid: String,
    pub seed: u64,
    pub items: Vec<ItemReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(ItemReport::passed)
    }
}

/// Support membership as seen by the checks; replaceable to test the suite.
pub type Membership<'a> = &'a dyn Fn(&ModuleExpr, &NilTuple) -> Result<bool>;

struct Acc {
    item: u8,
    checks: u64,
    counterexample: Option<String>,
    stats: BTreeMap<&'static str, u64>,
}

impl Acc {
    fn new(item: u8) -> Acc {
        Acc {
            item,
            checks: 0,
            counterexample: None,
            stats: BTreeMap::new(),
        }
    }

    fn check(&mut self, ok: bool, datum: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(datum());
        }
    }

    fn bump(&mut self, key: &'static str) {
        *self.stats.entry(key).or_insert(0) += 1;
    }

    fn finish(self) -> ItemReport {
        ItemReport {
            item: self.item,
            name: item_name(self.item),
            checks: self.checks,
            counterexample: self.counterexample,
            stats: self.stats.into_iter().collect(),
        }
    }
}

/// `[[row-major entries of B_0], …]` over the tuple's field.
pub fn tuple_text(t: &NilTuple) -> String {
    let mut s = String::new();
    let _ = write!(s, "{} [", t.field().spec());
    for (i, b) in t.mats().iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push('[');
        for (k, a) in b.entries().iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            let _ = write!(s, "{a}");
        }
        s.push(']');
    }
    s.push(']');
    s
}

fn at(module: &ModuleExpr, t: &NilTuple) -> String {
    alloc::format!("{module} at {}", tuple_text(t))
}

fn compatible(module: &ModuleExpr, t: &NilTuple) -> bool {
    module.n() == 0 || module.n() == t.n()
}

/// Runs the requested items on every compatible (module, point) pair.
pub fn verify_properties(
    modules: &[ModuleExpr],
    tuples: &[NilTuple],
    config: &VerifyConfig,
) -> Result<Vec<ItemReport>> {
    verify_properties_with(modules, tuples, config, &in_support)
}

/// As [`verify_properties`], with the membership test supplied by the caller.
pub fn verify_properties_with(
    modules: &[ModuleExpr],
    tuples: &[NilTuple],
    config: &VerifyConfig,
    membership: Membership<'_>,
) -> Result<Vec<ItemReport>> {
    let mut items = config.items.clone();
    items.sort_unstable();
    items.dedup();
    let mut out = Vec::new();
    for item in items {
        let report = match item {
            1 => item_pi_points(modules, tuples)?,
            2 => item_scaling(modules, tuples, membership)?,
            3 => item_binary(3, modules, tuples, membership)?,
            4 => item_binary(4, modules, tuples, membership)?,
            5 => item_extensions(modules, tuples, membership)?,
            6 => item_twist(modules, tuples, membership)?,
            7 => item_restriction(modules, tuples, membership)?,
            8 => item_conjugation(modules, tuples, config, membership)?,
            other => {
                return Err(Error::InvalidArgument(alloc::format!(
                    "no property item {other}"
                )))
            }
        };
        out.push(report);
    }
    Ok(out)
}

pub fn verify_grid(grid: &Grid, config: &VerifyConfig, budget: u64) -> Result<VerifyReport> {
    verify_grid_with(grid, config, budget, &in_support)
}

pub fn verify_grid_with(
    grid: &Grid,
    config: &VerifyConfig,
    budget: u64,
    membership: Membership<'_>,
) -> Result<VerifyReport> {
    let tuples = grid.tuples(budget)?;
    let items = verify_properties_with(&grid.modules, &tuples, config, membership)?;
    Ok(VerifyReport {
        grid: grid.name.clone(),
        seed: config.seed,
        items,
    })
}

fn item_pi_points(modules: &[ModuleExpr], tuples: &[NilTuple]) -> Result<ItemReport> {
    let mut acc = Acc::new(1);
    for t in tuples.iter().filter(|t| t.r() > 0) {
        for e in modules.iter().filter(|e| compatible(e, t)) {
            if exp_degree_bound(e, t.field().p()) > t.r() {
                acc.bump("skipped_exp_degree");
                continue;
            }
            let mu = mu_operator(e, t)?;
            let alpha = alpha_operator(e, &lambda_reverse(t))?;
            acc.check(mu.is_free() == alpha.is_free(), || {
                alloc::format!(
                    "{}: mu free = {}, reversed alpha free = {}",
                    at(e, t),
                    mu.is_free(),
                    alpha.is_free()
                )
            });
            if jordan_type_of(mu.matrix())? != jordan_type_of(alpha.matrix())? {
                acc.bump("jordan_type_differs");
            }
        }
    }
    Ok(acc.finish())
}

/// `B_s ↦ λ^(p^-s) B_s` multiplies `α_B` by `λ`.
fn item_scaling(
    modules: &[ModuleExpr],
    tuples: &[NilTuple],
    membership: Membership<'_>,
) -> Result<ItemReport> {
    let mut acc = Acc::new(2);
    for t in tuples.iter().filter(|t| t.r() > 0) {
        let field = t.field();
        for e in modules.iter().filter(|e| compatible(e, t)) {
            let base = alpha_operator(e, t)?;
            let inside = membership(e, t)?;
            if inside {
                acc.bump("points_in_support");
            }
            let jt = jordan_type_of(base.matrix())?;
            for lambda in 1..field.q() {
                let mats = t
                    .mats()
                    .iter()
                    .enumerate()
                    .map(|(s, b)| b.scale(field.frob_inv(lambda, s as u32)))
                    .collect();
                let scaled = NilTuple::new(field, t.n(), mats)?;
                let op = alpha_operator(e, &scaled)?;
                acc.check(
                    op.matrix() == &base.matrix().scale(lambda)
                        && membership(e, &scaled)? == inside
                        && jordan_type_of(op.matrix())? == jt,
                    || alloc::format!("{} scaled by {lambda}", at(e, t)),
                );
            }
        }
    }
    Ok(acc.finish())
}

fn item_binary(
    item: u8,
    modules: &[ModuleExpr],
    tuples: &[NilTuple],
    membership: Membership<'_>,
) -> Result<ItemReport> {
    let mut acc = Acc::new(item);
    for (i, a) in modules.iter().enumerate() {
        for b in &modules[i..] {
            let combined = if item == 3 { a.sum(b) } else { a.tensor(b) };
            let Ok(c) = combined else {
                acc.bump("skipped_incompatible");
                continue;
            };
            for t in tuples.iter().filter(|t| compatible(&c, t)) {
                let (ma, mb, mc) = (membership(a, t)?, membership(b, t)?, membership(&c, t)?);
                let expected = if item == 3 { ma || mb } else { ma && mb };
                acc.check(mc == expected, || {
                    alloc::format!("{}: parts {ma}, {mb}, combined {mc}", at(&c, t))
                });
            }
        }
    }
    Ok(acc.finish())
}

/// Each of three memberships implies one of the other two.
fn two_of_three(a: bool, b: bool, c: bool) -> bool {
    (!a || b || c) && (!b || a || c) && (!c || a || b)
}

/// Indices of `x_i^p` in the monomial basis of `Sym(p, Def(n))`.
fn frobenius_monomials(module: &ModuleExpr, n: usize, p: u32) -> Vec<usize> {
    let labels = module.labels();
    (1..=n)
        .map(|i| {
            let want = alloc::format!("x{i}^{p}");
            labels
                .iter()
                .position(|l| *l == want)
                .expect("pure power in basis")
        })
        .collect()
}

/// `W = span{x_1^p, …, x_n^p} ⊂ Sym(p, Def(n))`.
pub fn frobenius_submodule(field: &Field, n: usize) -> Result<(ModuleExpr, Subspace)> {
    let p = field.p();
    let module = ModuleExpr::new(Node::sym(p as usize, Node::Def(n)))?;
    let dim = module.dim();
    let vectors = frobenius_monomials(&module, n, p).into_iter().map(|k| {
        let mut v = vec![0u32; dim];
        v[k] = 1;
        v
    });
    let w = Subspace::span(field, dim, vectors);
    Ok((module, w))
}

fn item_extensions(
    modules: &[ModuleExpr],
    tuples: &[NilTuple],
    membership: Membership<'_>,
) -> Result<ItemReport> {
    let mut acc = Acc::new(5);
    for (i, a) in modules.iter().enumerate() {
        for b in &modules[i..] {
            let Ok(mid) = a.sum(b) else { continue };
            for t in tuples.iter().filter(|t| compatible(&mid, t)) {
                let (ma, mm, mb) = (membership(a, t)?, membership(&mid, t)?, membership(b, t)?);
                acc.check(two_of_three(ma, mm, mb), || {
                    alloc::format!("0 -> {a} -> {mid} -> {b} -> 0 at {}", tuple_text(t))
                });
            }
        }
    }
    let mut cache: Vec<(Field, usize, ModuleExpr, Subspace)> = Vec::new();
    for t in tuples {
        let field = t.field();
        let idx = match cache
            .iter()
            .position(|(f, n, _, _)| f == field && *n == t.n())
        {
            Some(k) => k,
            None => {
                let (m, w) = frobenius_submodule(field, t.n())?;
                cache.push((field.clone(), t.n(), m, w));
                cache.len() - 1
            }
        };
        let (_, _, module, w) = &cache[idx];
        let alpha = alpha_operator(module, t)?;
        if !w.is_invariant_under(alpha.matrix()) {
            acc.check(false, || {
                alloc::format!("W not invariant: {}", at(module, t))
            });
            continue;
        }
        let (sub, quo) = quotient_and_restrict(alpha.matrix(), w)?;
        let (ms, mm, mq) = (
            !is_free_operator(&sub),
            !is_free_operator(alpha.matrix()),
            !is_free_operator(&quo),
        );
        acc.bump("frobenius_submodule_points");
        acc.check(two_of_three(ms, mm, mq), || {
            alloc::format!("0 -> W -> {module} -> quotient -> 0 at {}", tuple_text(t))
        });
    }
    Ok(acc.finish())
}

fn item_twist(
    modules: &[ModuleExpr],
    tuples: &[NilTuple],
    membership: Membership<'_>,
) -> Result<ItemReport> {
    let mut acc = Acc::new(6);
    for t in tuples {
        if !t.is_over_prime_field() {
            acc.bump("skipped_not_prime_field");
            continue;
        }
        let shifted = t.frobenius_shift();
        for e in modules.iter().filter(|e| compatible(e, t)) {
            let tw = e.twist(1);
            let (lhs, rhs) = (membership(&tw, t)?, membership(e, &shifted)?);
            acc.check(lhs == rhs, || {
                alloc::format!("{}: twisted {lhs}, shifted {rhs}", at(e, t))
            });
        }
    }
    Ok(acc.finish())
}

/// Every nonzero vector of `F_q^r`, in lexicographic order.
fn nonzero_vectors(field: &Field, r: usize) -> Vec<Vec<u32>> {
    let q = field.q();
    let total = (q as u64).pow(r as u32);
    (1..total)
        .map(|mut code| {
            let mut v = vec![0u32; r];
            for slot in v.iter_mut().rev() {
                *slot = (code % q as u64) as u32;
                code /= q as u64;
            }
            v
        })
        .collect()
}

fn item_restriction(
    modules: &[ModuleExpr],
    tuples: &[NilTuple],
    membership: Membership<'_>,
) -> Result<ItemReport> {
    let mut acc = Acc::new(7);
    // distinct nonzero directions B, with the tuple length r to restrict to
    let mut directions: Vec<(Matrix, usize)> = Vec::new();
    for t in tuples {
        for b in t.mats() {
            if !b.is_zero() && !directions.iter().any(|(c, r)| c == b && *r == t.r()) {
                directions.push((b.clone(), t.r()));
            }
        }
    }
    for e in modules {
        for (b, r) in &directions {
            if e.n() != 0 && e.n() != b.rows() {
                continue;
            }
            let field = b.field();
            let ea = restrict_along(e, b, *r)?;
            let free = ea_free(&ea);
            acc.bump(if free {
                "free_restrictions"
            } else {
                "nonfree_restrictions"
            });
            for scalars in nonzero_vectors(field, *r) {
                let mats = scalars.iter().map(|&c| b.scale(c)).collect();
                let t = NilTuple::new(field, b.rows(), mats)?;
                let alpha = alpha_operator(e, &t)?;
                let ga = ga_alpha(&ea, &scalars)?;
                acc.check(alpha.matrix() == ga.matrix(), || {
                    alloc::format!("{}: alpha differs from the restricted module", at(e, &t))
                });
                if free {
                    let inside = membership(e, &t)?;
                    acc.check(!inside, || {
                        alloc::format!(
                            "{}: restriction is free but the point is in the support",
                            at(e, &t)
                        )
                    });
                }
            }
        }
    }
    // regular and curated non-free modules of k[u_0, …, u_{r-1}]/(u_i^p)
    let mut cases: Vec<(Field, usize)> = Vec::new();
    for (b, r) in &directions {
        if !cases.iter().any(|(f, k)| f == b.field() && k == r) {
            cases.push((b.field().clone(), *r));
        }
    }
    for (field, r) in cases {
        let regular = EAModule::regular(&field, r);
        acc.check(ea_free(&regular), || {
            alloc::format!("regular module of rank {r} over {} not free", field.spec())
        });
        for b in nonzero_vectors(&field, r) {
            let op = ga_alpha(&regular, &b)?;
            acc.check(op.is_free(), || {
                alloc::format!("regular module of rank {r} over {} at {b:?}", field.spec())
            });
        }
        let trivial = EAModule::trivial(&field, 1, r);
        let mut witness = vec![0u32; r];
        witness[0] = 1;
        acc.check(
            !ea_free(&trivial) && !ga_alpha(&trivial, &witness)?.is_free(),
            || alloc::format!("trivial module of rank {r} over {}", field.spec()),
        );
        if r >= 2 {
            let p = field.p() as usize;
            let mut ops = vec![Matrix::jordan_block(&field, p)];
            ops.extend((1..r).map(|_| Matrix::zeros(&field, p, p)));
            let m = EAModule::new(&field, p, ops)?;
            let mut witness = vec![0u32; r];
            witness[r - 1] = 1;
            acc.check(!ea_free(&m) && !ga_alpha(&m, &witness)?.is_free(), || {
                alloc::format!("k[u_0]/u_0^p with u_{} = 0 over {}", r - 1, field.spec())
            });
        }
    }
    Ok(acc.finish())
}

fn item_conjugation(
    modules: &[ModuleExpr],
    tuples: &[NilTuple],
    config: &VerifyConfig,
    membership: Membership<'_>,
) -> Result<ItemReport> {
    let mut acc = Acc::new(8);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for e in modules {
        for t in tuples.iter().filter(|t| compatible(e, t)) {
            let jt = jordan_type_of(alpha_operator(e, t)?.matrix())?;
            let inside = membership(e, t)?;
            for _ in 0..config.conjugations {
                let (g, g_inv) = random_invertible(&mut rng, t.field(), t.n());
                let c = conjugate_with(t, &g, &g_inv);
                let jt2 = jordan_type_of(alpha_operator(e, &c)?.matrix())?;
                let inside2 = membership(e, &c)?;
                acc.check(jt == jt2 && inside == inside2, || {
                    alloc::format!(
                        "{} conjugated by {:?}: {jt} vs {jt2}",
                        at(e, t),
                        g.entries()
                    )
                });
            }
        }
    }
    Ok(acc.finish())
}
