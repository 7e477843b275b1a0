use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest module dimension a construction tree may have.
pub const MAX_MODULE_DIM: usize = 1 << 12;

/// Construction tree of a finite-dimensional polynomial `GL_n`-module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    /// The 1-dimensional trivial module.
    Triv,
    /// The defining representation `k^n`.
    Def(usize),
    /// The adjoint representation on `gl_n`, basis `E_ij` row-major.
    Ad(usize),
    Dual(Box<Node>),
    Sum(Box<Node>, Box<Node>),
    Tensor(Box<Node>, Box<Node>),
    /// `d`-th symmetric power.
    Sym(usize, Box<Node>),
    /// `d`-th exterior power.
    Ext(usize, Box<Node>),
    /// `r`-fold Frobenius twist.
    Twist(Box<Node>, u32),
}

impl Node {
    pub fn dual(e: Node) -> Node {
        Node::Dual(Box::new(e))
    }
    pub fn sum(a: Node, b: Node) -> Node {
        Node::Sum(Box::new(a), Box::new(b))
    }
    pub fn tensor(a: Node, b: Node) -> Node {
        Node::Tensor(Box::new(a), Box::new(b))
    }
    pub fn sym(d: usize, e: Node) -> Node {
        Node::Sym(d, Box::new(e))
    }
    pub fn ext(d: usize, e: Node) -> Node {
        Node::Ext(d, Box::new(e))
    }
    pub fn twist(e: Node, r: u32) -> Node {
        Node::Twist(Box::new(e), r)
    }

    /// Whether evaluating needs the inverse group element.
    pub fn needs_inverse(&self) -> bool {
        match self {
            Node::Triv | Node::Def(_) => false,
            Node::Ad(_) | Node::Dual(_) => true,
            Node::Sum(a, b) | Node::Tensor(a, b) => a.needs_inverse() || b.needs_inverse(),
            Node::Sym(_, e) | Node::Ext(_, e) | Node::Twist(e, _) => e.needs_inverse(),
        }
    }

    /// Polynomial degree of the action in the matrix entries, with the
    /// inverse counted like the element itself.
    pub fn polynomial_degree(&self, p: u32) -> usize {
        match self {
            Node::Triv => 0,
            Node::Def(_) => 1,
            Node::Ad(_) => 2,
            Node::Dual(e) => e.polynomial_degree(p),
            Node::Sum(a, b) => a.polynomial_degree(p).max(b.polynomial_degree(p)),
            Node::Tensor(a, b) => a.polynomial_degree(p) + b.polynomial_degree(p),
            Node::Sym(d, e) | Node::Ext(d, e) => d * e.polynomial_degree(p),
            Node::Twist(e, r) => (p as usize).pow(*r) * e.polynomial_degree(p),
        }
    }

    fn collect_ranks(&self, out: &mut Vec<usize>) {
        match self {
            Node::Triv => {}
            Node::Def(n) | Node::Ad(n) => out.push(*n),
            Node::Dual(e) | Node::Sym(_, e) | Node::Ext(_, e) | Node::Twist(e, _) => {
                e.collect_ranks(out)
            }
            Node::Sum(a, b) | Node::Tensor(a, b) => {
                a.collect_ranks(out);
                b.collect_ranks(out);
            }
        }
    }

    fn dim_checked(&self) -> Result<usize> {
        let too_big = || Error::InvalidModule(format!("dimension exceeds {MAX_MODULE_DIM}"));
        let d = match self {
            Node::Triv => 1,
            Node::Def(n) => *n,
            Node::Ad(n) => n.checked_mul(*n).ok_or_else(too_big)?,
            Node::Dual(e) | Node::Twist(e, _) => e.dim_checked()?,
            Node::Sum(a, b) => a.dim_checked()? + b.dim_checked()?,
            Node::Tensor(a, b) => a
                .dim_checked()?
                .checked_mul(b.dim_checked()?)
                .ok_or_else(too_big)?,
            Node::Sym(d, e) => {
                let k = e.dim_checked()?;
                if k == 0 {
                    usize::from(*d == 0)
                } else {
                    binomial(k + d - 1, *d).ok_or_else(too_big)?
                }
            }
            Node::Ext(d, e) => {
                let k = e.dim_checked()?;
                if *d > k {
                    return Err(Error::InvalidModule(format!(
                        "ext({d}, ·) of a {k}-dimensional module"
                    )));
                }
                binomial(k, *d).ok_or_else(too_big)?
            }
        };
        if d > MAX_MODULE_DIM {
            return Err(too_big());
        }
        Ok(d)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return None;
        }
    }
    Some(acc as usize)
}

/// Canonical text form, the same syntax the command line parses.
impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Triv => write!(f, "triv"),
            Node::Def(n) => write!(f, "def({n})"),
            Node::Ad(n) => write!(f, "ad({n})"),
            Node::Dual(e) => write!(f, "dual({e})"),
            Node::Sum(a, b) => write!(f, "sum({a},{b})"),
            Node::Tensor(a, b) => write!(f, "ten({a},{b})"),
            Node::Sym(d, e) => write!(f, "sym({d},{e})"),
            Node::Ext(d, e) => write!(f, "ext({d},{e})"),
            Node::Twist(e, r) => write!(f, "tw({e},{r})"),
        }
    }
}

/// A validated module expression with its cached dimension and basis labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleExpr {
    root: Node,
    /// Common `n` of all `def`/`ad` leaves; 0 when there are none.
    n: usize,
    dim: usize,
    labels: Vec<String>,
}

impl ModuleExpr {
    pub fn new(root: Node) -> Result<ModuleExpr> {
        let mut ranks = Vec::new();
        root.collect_ranks(&mut ranks);
        let n = ranks.first().copied().unwrap_or(0);
        if let Some(&other) = ranks.iter().find(|&&k| k != n) {
            return Err(Error::InvalidModule(format!(
                "leaves mix n = {n} and n = {other}"
            )));
        }
        if !ranks.is_empty() && n == 0 {
            return Err(Error::InvalidModule("def(0)/ad(0) leaf".into()));
        }
        let dim = root.dim_checked()?;
        let labels = labels(&root);
        debug_assert_eq!(labels.len(), dim);
        Ok(ModuleExpr {
            root,
            n,
            dim,
            labels,
        })
    }

    pub fn triv() -> ModuleExpr {
        ModuleExpr::new(Node::Triv).expect("valid")
    }

    pub fn defining(n: usize) -> ModuleExpr {
        ModuleExpr::new(Node::Def(n)).expect("valid")
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// Size of the group elements this module accepts; 0 means any size.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn polynomial_degree(&self, p: u32) -> usize {
        self.root.polynomial_degree(p)
    }

    pub fn needs_inverse(&self) -> bool {
        self.root.needs_inverse()
    }

    pub fn sum(&self, other: &ModuleExpr) -> Result<ModuleExpr> {
        ModuleExpr::new(Node::sum(self.root.clone(), other.root.clone()))
    }

    pub fn tensor(&self, other: &ModuleExpr) -> Result<ModuleExpr> {
        ModuleExpr::new(Node::tensor(self.root.clone(), other.root.clone()))
    }

    pub fn twist(&self, r: u32) -> ModuleExpr {
        ModuleExpr::new(Node::twist(self.root.clone(), r)).expect("twisting keeps validity")
    }

    pub fn dual(&self) -> ModuleExpr {
        ModuleExpr::new(Node::dual(self.root.clone())).expect("dual keeps validity")
    }
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

// ---------------------------------------------------------------------------
// Canonical bases
// ---------------------------------------------------------------------------

/// Exponent vectors of degree `d` in `k` variables, lexicographically
/// descending (so `x_1^d` comes first).
pub(crate) fn monomials(k: usize, d: usize) -> Vec<Vec<u16>> {
    fn rec(k: usize, d: usize, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if prefix.len() + 1 == k {
            prefix.push(d as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u16);
            rec(k, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(k, d, &mut Vec::with_capacity(k), &mut out);
    out
}

/// `d`-element subsets of `0..k`, ascending, in lexicographic order.
pub(crate) fn subsets(k: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            if k - i < d - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, k, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, d, &mut Vec::with_capacity(d), &mut out);
    out
}

fn wrap(label: &str) -> String {
    if label.chars().all(|c| c.is_ascii_alphanumeric()) {
        label.to_string()
    } else {
        format!("({label})")
    }
}

fn labels(node: &Node) -> Vec<String> {
    match node {
        Node::Triv => alloc::vec!["1".to_string()],
        Node::Def(n) => (1..=*n).map(|i| format!("x{i}")).collect(),
        Node::Ad(n) => (1..=*n)
            .flat_map(|i| (1..=*n).map(move |j| format!("E{i}_{j}")))
            .collect(),
        Node::Dual(e) => labels(e).iter().map(|l| format!("{}*", wrap(l))).collect(),
        Node::Sum(a, b) => {
            let mut out: Vec<String> = labels(a).iter().map(|l| format!("L.{l}")).collect();
            out.extend(labels(b).iter().map(|l| format!("R.{l}")));
            out
        }
        Node::Tensor(a, b) => {
            let lb = labels(b);
            labels(a)
                .iter()
                .flat_map(|x| lb.iter().map(move |y| format!("{}⊗{}", wrap(x), wrap(y))))
                .collect()
        }
        Node::Sym(d, e) => {
            let inner = labels(e);
            monomials(inner.len(), *d)
                .iter()
                .map(|mono| {
                    let parts: Vec<String> = mono
                        .iter()
                        .enumerate()
                        .filter(|(_, &k)| k > 0)
                        .map(|(i, &k)| {
                            if k == 1 {
                                wrap(&inner[i])
                            } else {
                                format!("{}^{k}", wrap(&inner[i]))
                            }
                        })
                        .collect();
                    if parts.is_empty() {
                        "1".to_string()
                    } else {
                        parts.join(" ")
                    }
                })
                .collect()
        }
        Node::Ext(d, e) => {
            let inner = labels(e);
            subsets(inner.len(), *d)
                .iter()
                .map(|s| {
                    if s.is_empty() {
                        "1".to_string()
                    } else {
                        s.iter()
                            .map(|&i| wrap(&inner[i]))
                            .collect::<Vec<_>>()
                            .join("∧")
                    }
                })
                .collect()
        }
        Node::Twist(e, r) => labels(e)
            .iter()
            .map(|l| format!("{}^[{r}]", wrap(l)))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let sym = |d, e| Node::sym(d, e);
        assert_eq!(ModuleExpr::new(sym(3, Node::Def(2))).unwrap().dim(), 4);
        assert_eq!(ModuleExpr::new(sym(2, Node::Def(3))).unwrap().dim(), 6);
        assert_eq!(
            ModuleExpr::new(Node::ext(2, Node::Def(4))).unwrap().dim(),
            6
        );
        assert_eq!(ModuleExpr::new(Node::Ad(3)).unwrap().dim(), 9);
        assert_eq!(
            ModuleExpr::new(Node::tensor(Node::Def(2), Node::twist(Node::Def(2), 1)))
                .unwrap()
                .dim(),
            4
        );
        assert!(ModuleExpr::new(Node::ext(3, Node::Def(2))).is_err());
    }

    #[test]
    fn mixed_ranks_rejected() {
        assert!(ModuleExpr::new(Node::sum(Node::Def(2), Node::Def(3))).is_err());
        let e = ModuleExpr::new(Node::sum(Node::Triv, Node::Ad(2))).unwrap();
        assert_eq!(e.n(), 2);
        assert_eq!(ModuleExpr::triv().n(), 0);
    }

    #[test]
    fn basis_orders() {
        assert_eq!(
            monomials(2, 2),
            alloc::vec![alloc::vec![2, 0], alloc::vec![1, 1], alloc::vec![0, 2]]
        );
        assert_eq!(
            subsets(3, 2),
            alloc::vec![alloc::vec![0, 1], alloc::vec![0, 2], alloc::vec![1, 2]]
        );
        let e = ModuleExpr::new(Node::sym(2, Node::Def(2))).unwrap();
        assert_eq!(e.labels(), &["x1^2", "x1 x2", "x2^2"]);
    }

    #[test]
    fn display_is_canonical_dsl() {
        let e = Node::tensor(Node::Def(2), Node::twist(Node::Def(2), 1));
        assert_eq!(e.to_string(), "ten(def(2),tw(def(2),1))");
    }

    #[test]
    fn polynomial_degrees() {
        let sym3 = Node::sym(3, Node::Def(2));
        assert_eq!(sym3.polynomial_degree(2), 3);
        assert_eq!(Node::twist(Node::Def(2), 1).polynomial_degree(3), 3);
        assert_eq!(Node::dual(Node::Def(2)).polynomial_degree(5), 1);
        assert_eq!(Node::Triv.polynomial_degree(2), 0);
    }
}
