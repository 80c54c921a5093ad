//! Enumerated bases over `U = <1, x>` and over an abstract space `V`.
//!
//! * `S^d U` has basis `x^0 .. x^d`, `D^d U` has basis `x^(0) .. x^(d)`.
//! * `∧² S^m U` has basis `x^i ∧ x^j` with `j < i`, ordered by `(i, j)`.
//! * `S^q V` for `V` with basis `v_0 .. v_n` has the degree-`q` monomials,
//!   ordered lexicographically by exponent vector (largest power of `v_0`
//!   first).
//! * Tensor products use row-major order: `a ⊗ b ↦ a * dim(B) + b`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Index of `x^i ∧ x^j` (`i > j`) in the basis of `∧²`.
pub fn wedge2_index(i: usize, j: usize) -> usize {
    debug_assert!(i > j);
    i * (i - 1) / 2 + j
}

/// Normalizes `x^a ∧ x^b` to `(index, sign)`; `None` when `a = b`.
pub fn wedge2(a: usize, b: usize) -> Option<(usize, i64)> {
    match a.cmp(&b) {
        std::cmp::Ordering::Greater => Some((wedge2_index(a, b), 1)),
        std::cmp::Ordering::Less => Some((wedge2_index(b, a), -1)),
        std::cmp::Ordering::Equal => None,
    }
}

/// Pairs `(i, j)` with `j < i <= m`, in basis order.
pub fn wedge2_pairs(m: usize) -> Vec<(usize, usize)> {
    (1..=m).flat_map(|i| (0..i).map(move |j| (i, j))).collect()
}

/// The spaces that appear as domains and codomains of the explicit maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisSpace {
    /// `S^d U`.
    Sym(usize),
    /// `D^d U`.
    Div(usize),
    /// `∧² S^m U`.
    Wedge2Sym(usize),
    /// `∧² D^m U`.
    Wedge2Div(usize),
    /// `S^q (D^n U)`, i.e. degree-`q` monomials in `n + 1` variables.
    SymOfDiv {
        q: usize,
        n: usize,
    },
    Tensor(Vec<BasisSpace>),
    DirectSum(Vec<BasisSpace>),
}

impl BasisSpace {
    pub fn dim(&self) -> usize {
        match self {
            BasisSpace::Sym(d) | BasisSpace::Div(d) => d + 1,
            BasisSpace::Wedge2Sym(m) | BasisSpace::Wedge2Div(m) => m * (m + 1) / 2,
            BasisSpace::SymOfDiv { q, n } => binomial(q + n, *n),
            BasisSpace::Tensor(parts) => parts.iter().map(BasisSpace::dim).product(),
            BasisSpace::DirectSum(parts) => parts.iter().map(BasisSpace::dim).sum(),
        }
    }

    /// Human-readable label of basis vector `i`.
    pub fn label(&self, i: usize) -> String {
        match self {
            BasisSpace::Sym(_) => format!("x^{i}"),
            BasisSpace::Div(_) => format!("x^({i})"),
            BasisSpace::Wedge2Sym(m) => {
                let (a, b) = wedge2_pairs(*m)[i];
                format!("x^{a}∧x^{b}")
            }
            BasisSpace::Wedge2Div(m) => {
                let (a, b) = wedge2_pairs(*m)[i];
                format!("x^({a})∧x^({b})")
            }
            BasisSpace::SymOfDiv { q, n } => MonomialBasis::new(n + 1, *q).label(i),
            BasisSpace::Tensor(parts) => {
                let mut rest = i;
                let mut labels = Vec::with_capacity(parts.len());
                for (k, part) in parts.iter().enumerate() {
                    let tail: usize = parts[k + 1..].iter().map(BasisSpace::dim).product();
                    labels.push(part.label(rest / tail));
                    rest %= tail;
                }
                labels.join("⊗")
            }
            BasisSpace::DirectSum(parts) => {
                let mut rest = i;
                for (k, part) in parts.iter().enumerate() {
                    if rest < part.dim() {
                        return format!("[{k}] {}", part.label(rest));
                    }
                    rest -= part.dim();
                }
                panic!("index {i} out of range for {self}");
            }
        }
    }
}

impl fmt::Display for BasisSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSpace::Sym(d) => write!(f, "S^{d}U"),
            BasisSpace::Div(d) => write!(f, "D^{d}U"),
            BasisSpace::Wedge2Sym(m) => write!(f, "∧²S^{m}U"),
            BasisSpace::Wedge2Div(m) => write!(f, "∧²D^{m}U"),
            BasisSpace::SymOfDiv { q, n } => write!(f, "S^{q}(D^{n}U)"),
            BasisSpace::Tensor(parts) => {
                let s: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "{}", s.join(" ⊗ "))
            }
            BasisSpace::DirectSum(parts) => {
                let s: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "{}", s.join(" ⊕ "))
            }
        }
    }
}

/// Degree-`degree` monomials in `nvars` variables with an index lookup.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    nvars: usize,
    degree: usize,
    monomials: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: usize) -> Self {
        assert!(degree < 256, "monomial degree too large");
        let mut monomials = Vec::with_capacity(binomial(degree + nvars.saturating_sub(1), degree));
        if nvars == 0 {
            if degree == 0 {
                monomials.push(Vec::new());
            }
        } else {
            let mut exps = vec![0u8; nvars];
            fill(&mut monomials, &mut exps, 0, degree);
        }
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialBasis {
            nvars,
            degree,
            monomials,
            index,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn exponents(&self, i: usize) -> &[u8] {
        &self.monomials[i]
    }

    pub fn index_of(&self, exps: &[u8]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u8]> {
        self.monomials.iter().map(Vec::as_slice)
    }

    /// `table[v][i]` is the index in `next` of `v_v` times monomial `i`.
    pub fn times_variable_table(&self, next: &MonomialBasis) -> Vec<Vec<usize>> {
        assert_eq!(next.degree, self.degree + 1);
        assert_eq!(next.nvars, self.nvars);
        (0..self.nvars)
            .map(|v| {
                self.monomials
                    .iter()
                    .map(|m| {
                        let mut e = m.clone();
                        e[v] += 1;
                        next.index[&e]
                    })
                    .collect()
            })
            .collect()
    }

    pub fn label(&self, i: usize) -> String {
        let parts: Vec<String> = self.monomials[i]
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| if e == 1 { format!("v{v}") } else { format!("v{v}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

fn fill(out: &mut Vec<Vec<u8>>, exps: &mut Vec<u8>, var: usize, left: usize) {
    if var + 1 == exps.len() {
        exps[var] = left as u8;
        out.push(exps.clone());
        exps[var] = 0;
        return;
    }
    for e in (0..=left).rev() {
        exps[var] = e as u8;
        fill(out, exps, var + 1, left - e);
    }
    exps[var] = 0;
}

/// Strictly increasing `k`-subsets of `0..n` in lexicographic order, with an
/// index lookup; the basis of `∧^k` of an `n`-dimensional space.
#[derive(Clone, Debug)]
pub struct WedgeBasis {
    n: usize,
    k: usize,
    subsets: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl WedgeBasis {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n < 256);
        let mut subsets = Vec::with_capacity(binomial(n, k));
        let mut cur = Vec::with_capacity(k);
        subsets_rec(n, k, 0, &mut cur, &mut subsets);
        let index = subsets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        WedgeBasis { n, k, subsets, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.subsets.len()
    }

    pub fn subset(&self, i: usize) -> &[u8] {
        &self.subsets[i]
    }

    pub fn index_of(&self, s: &[u8]) -> Option<usize> {
        self.index.get(s).copied()
    }
}

fn subsets_rec(n: usize, k: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i as u8);
        subsets_rec(n, k, i + 1, cur, out);
        cur.pop();
    }
}
