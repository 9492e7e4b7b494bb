//! Finite commutative unital quantales.
//!
//! A quantale here is a finite join-semilattice with bottom (hence a complete
//! lattice) carrying a commutative monoid `⊗` that distributes over all joins,
//! the empty one included. Elements are opaque labels; the order is derived
//! from the join table, `a ≤ b ⟺ a ∨ b = b`.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Report;

/// Largest carrier accepted. Law checks are cubic in the carrier size.
pub const MAX_ELEMENTS: usize = 64;

/// Index of an element in its quantale's carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Elem(pub u8);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinKind {
    Bool,
    Godel,
    Lukasiewicz,
}

impl FromStr for BuiltinKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bool" => Ok(BuiltinKind::Bool),
            "godel" => Ok(BuiltinKind::Godel),
            "lukasiewicz" => Ok(BuiltinKind::Lukasiewicz),
            other => Err(Error::Validation(format!("unknown quantale kind `{other}`"))),
        }
    }
}

#[derive(Clone)]
pub struct Quantale {
    name: String,
    labels: Vec<String>,
    join: Vec<u8>,
    tensor: Vec<u8>,
    bottom: Elem,
    unit: Elem,
    // derived
    top: Elem,
    leq: Vec<bool>,
    meet: Vec<u8>,
    residual: Vec<u8>,
    height: usize,
    values: Vec<Option<Ratio<u64>>>,
}

impl PartialEq for Quantale {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.join == other.join
            && self.tensor == other.tensor
            && self.bottom == other.bottom
            && self.unit == other.unit
    }
}

impl Eq for Quantale {}

impl fmt::Debug for Quantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quantale")
            .field("name", &self.name)
            .field("elements", &self.labels)
            .finish()
    }
}

fn chain_labels(n: usize) -> Vec<String> {
    let den = (n - 1) as u64;
    (0..n as u64)
        .map(|k| {
            let r = Ratio::new(k, den);
            if *r.denom() == 1 {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        })
        .collect()
}

/// Parses `3`, `1/2` or `0.25` as an exact non-negative rational.
pub fn parse_rational(s: &str) -> Option<Ratio<u64>> {
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().ok()? };
        let scale = 10u64.pow(frac.len() as u32);
        let frac: u64 = frac.parse().ok()?;
        return Some(Ratio::new(int.checked_mul(scale)?.checked_add(frac)?, scale));
    }
    let r: Ratio<u64> = s.parse().ok()?;
    Some(r)
}

impl Quantale {
    /// Builds and verifies a quantale from its tables. Tables are indexed
    /// `table[a][b]` by element position in `labels`.
    pub fn from_tables(
        name: impl Into<String>,
        labels: Vec<String>,
        join: Vec<Vec<usize>>,
        bottom: usize,
        tensor: Vec<Vec<usize>>,
        unit: usize,
    ) -> Result<Self> {
        let q = Self::from_tables_unchecked(name, labels, join, bottom, tensor, unit)?;
        let report = q.verify();
        if report.is_pass() {
            Ok(q)
        } else {
            Err(Error::Law(report))
        }
    }

    /// Builds a table structure without checking the quantale laws. Only the
    /// shape of the tables is validated. Used to exercise the law checkers on
    /// deliberately broken inputs.
    pub fn from_tables_unchecked(
        name: impl Into<String>,
        labels: Vec<String>,
        join: Vec<Vec<usize>>,
        bottom: usize,
        tensor: Vec<Vec<usize>>,
        unit: usize,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Validation("quantale carrier is empty".into()));
        }
        if n > MAX_ELEMENTS {
            return Err(Error::Validation(format!(
                "quantale has {n} elements, at most {MAX_ELEMENTS} are supported"
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Validation(format!("duplicate element label `{l}`")));
            }
        }
        let flatten = |t: &[Vec<usize>], what: &str| -> Result<Vec<u8>> {
            if t.len() != n || t.iter().any(|row| row.len() != n) {
                return Err(Error::Validation(format!("{what} table is not {n}x{n}")));
            }
            t.iter()
                .flatten()
                .map(|&v| {
                    if v < n {
                        Ok(v as u8)
                    } else {
                        Err(Error::Validation(format!("{what} table entry {v} out of range")))
                    }
                })
                .collect()
        };
        let join = flatten(&join, "join")?;
        let tensor = flatten(&tensor, "tensor")?;
        if bottom >= n || unit >= n {
            return Err(Error::Validation("bottom or unit out of range".into()));
        }
        let mut q = Quantale {
            name: name.into(),
            values: labels.iter().map(|l| parse_rational(l)).collect(),
            labels,
            join,
            tensor,
            bottom: Elem(bottom as u8),
            unit: Elem(unit as u8),
            top: Elem(bottom as u8),
            leq: vec![false; n * n],
            meet: vec![0; n * n],
            residual: vec![0; n * n],
            height: 0,
        };
        q.derive();
        Ok(q)
    }

    fn derive(&mut self) {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                self.leq[a * n + b] = self.join[a * n + b] as usize == b;
            }
        }
        self.top = self
            .elements()
            .fold(self.bottom, |acc, x| self.join(acc, x));
        for a in 0..n {
            for b in 0..n {
                let mut m = self.bottom;
                for c in self.elements() {
                    if self.leq(c, Elem(a as u8)) && self.leq(c, Elem(b as u8)) {
                        m = self.join(m, c);
                    }
                }
                self.meet[a * n + b] = m.0;
                let mut r = self.bottom;
                for c in self.elements() {
                    if self.leq(self.tensor(c, Elem(a as u8)), Elem(b as u8)) {
                        r = self.join(r, c);
                    }
                }
                self.residual[a * n + b] = r.0;
            }
        }
        // longest strictly increasing chain, by relaxation
        let mut h = vec![0usize; n];
        for _ in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if a != b && self.leq[a * n + b] && h[b] < h[a] + 1 {
                        h[b] = h[a] + 1;
                    }
                }
            }
        }
        self.height = h.into_iter().max().unwrap_or(0).min(n);
    }

    pub fn bool() -> Self {
        Self::from_tables(
            "bool",
            vec!["0".into(), "1".into()],
            vec![vec![0, 1], vec![1, 1]],
            0,
            vec![vec![0, 0], vec![0, 1]],
            1,
        )
        .expect("boolean quantale is valid")
    }

    /// `n`-element chain with `⊗ = min`.
    pub fn godel(n: usize) -> Result<Self> {
        Self::chain(format!("godel {n}"), n, |a, b| a.min(b))
    }

    /// `n`-element chain `{0, 1/(n-1), …, 1}` with `a ⊗ b = max(0, a + b - 1)`.
    pub fn lukasiewicz(n: usize) -> Result<Self> {
        Self::chain(format!("lukasiewicz {n}"), n, move |a, b| (a + b).saturating_sub(n - 1))
    }

    fn chain(name: String, n: usize, tensor: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Validation(format!("chain quantales need n >= 2, got {n}")));
        }
        if n > MAX_ELEMENTS {
            return Err(Error::Validation(format!(
                "chain quantales are capped at {MAX_ELEMENTS} elements, got {n}"
            )));
        }
        let join = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
        let tensor = (0..n).map(|a| (0..n).map(|b| tensor(a, b)).collect()).collect();
        Self::from_tables(name, chain_labels(n), join, 0, tensor, n - 1)
    }

    pub fn builtin(kind: BuiltinKind, n: usize) -> Result<Self> {
        match kind {
            BuiltinKind::Bool => Ok(Self::bool()),
            BuiltinKind::Godel => Self::godel(n),
            BuiltinKind::Lukasiewicz => Self::lukasiewicz(n),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a.index()]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.labels.len() as u8).map(Elem)
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    /// Length of the longest strictly increasing chain, counted in steps.
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.join[a.index() * self.labels.len() + b.index()])
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.meet[a.index() * self.labels.len() + b.index()])
    }

    #[inline]
    pub fn tensor(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.tensor[a.index() * self.labels.len() + b.index()])
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.index() * self.labels.len() + b.index()]
    }

    /// `[a, b]`: the largest `c` with `c ⊗ a ≤ b`.
    #[inline]
    pub fn residuate(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.residual[a.index() * self.labels.len() + b.index()])
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Greatest fixpoint of a monotone map by descending iteration from top.
    /// Returns the fixpoint and the number of strict decreases on the way.
    pub fn gfp(&self, mut f: impl FnMut(Elem) -> Elem) -> (Elem, usize) {
        let mut x = self.top;
        let mut steps = 0;
        loop {
            let next = f(x);
            if next == x {
                return (x, steps);
            }
            x = next;
            steps += 1;
            debug_assert!(steps <= self.len(), "non-monotone map in gfp");
        }
    }

    /// Resolves an element label.
    pub fn elem(&self, label: &str) -> Result<Elem> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| Elem(i as u8))
            .ok_or_else(|| {
                Error::Validation(format!("`{label}` is not an element of {}", self.name))
            })
    }

    /// Resolves a value token: an element label, one of the keywords
    /// `bottom`/`top`/`unit`, or a numeral equal to a numeric label
    /// (`0.5` finds `1/2`).
    pub fn lookup(&self, token: &str) -> Result<Elem> {
        if let Ok(e) = self.elem(token) {
            return Ok(e);
        }
        match token {
            "bottom" | "bot" | "⊥" => return Ok(self.bottom),
            "top" | "⊤" => return Ok(self.top),
            "unit" | "e" => return Ok(self.unit),
            _ => {}
        }
        if let Some(r) = parse_rational(token) {
            if let Some(i) = self.values.iter().position(|v| *v == Some(r)) {
                return Ok(Elem(i as u8));
            }
        }
        Err(Error::Validation(format!(
            "`{token}` is not an element of {}",
            self.name
        )))
    }

    pub fn residuate_labels(&self, a: &str, b: &str) -> Result<Elem> {
        Ok(self.residuate(self.lookup(a)?, self.lookup(b)?))
    }

    /// Exhaustive law check. Each violated law is reported once, with its
    /// lexicographically first counterexample.
    pub fn verify(&self) -> Report {
        let mut r = Report::new(format!("quantale {}", self.name));
        let l = |xs: &[Elem]| -> Vec<String> { xs.iter().map(|&x| self.label(x).to_string()).collect() };
        let (bot, e) = (self.bottom, self.unit);
        for a in self.elements() {
            if self.join(a, a) != a {
                r.push_once("join idempotence", || l(&[a]));
            }
            if self.join(bot, a) != a || self.join(a, bot) != a {
                r.push_once("bottom is join identity", || l(&[a]));
            }
            if self.tensor(e, a) != a || self.tensor(a, e) != a {
                r.push_once("unit law", || l(&[a]));
            }
            if self.tensor(a, bot) != bot || self.tensor(bot, a) != bot {
                r.push_once("empty-join distributivity", || l(&[a]));
            }
            for b in self.elements() {
                if self.join(a, b) != self.join(b, a) {
                    r.push_once("join commutativity", || l(&[a, b]));
                }
                if self.tensor(a, b) != self.tensor(b, a) {
                    r.push_once("tensor commutativity", || l(&[a, b]));
                }
                for c in self.elements() {
                    if self.join(self.join(a, b), c) != self.join(a, self.join(b, c)) {
                        r.push_once("join associativity", || l(&[a, b, c]));
                    }
                    if self.tensor(self.tensor(a, b), c) != self.tensor(a, self.tensor(b, c)) {
                        r.push_once("tensor associativity", || l(&[a, b, c]));
                    }
                    if self.tensor(a, self.join(b, c))
                        != self.join(self.tensor(a, b), self.tensor(a, c))
                        || self.tensor(self.join(b, c), a)
                            != self.join(self.tensor(b, a), self.tensor(c, a))
                    {
                        r.push_once("join distributivity", || l(&[a, b, c]));
                    }
                }
            }
        }
        r
    }

    /// Workspace syntax for this quantale.
    pub fn to_workspace(&self) -> String {
        if self.name == "bool" || self.name.starts_with("godel ") || self.name.starts_with("lukasiewicz ") {
            if let Some(rebuilt) = self.rebuild_builtin() {
                if rebuilt == *self {
                    return format!("quantale {}", self.name);
                }
            }
        }
        let q = |s: &str| crate::finset::quote_label(s);
        let mut out = String::from("quantale table {\n  elements");
        for lab in &self.labels {
            out.push(' ');
            out.push_str(&q(lab));
        }
        out.push_str(&format!(";\n  bottom {};\n  unit {};\n", q(self.label(self.bottom)), q(self.label(self.unit))));
        for (op, table) in [("join", &self.join), ("tensor", &self.tensor)] {
            for a in self.elements() {
                for b in self.elements() {
                    let c = Elem(table[a.index() * self.len() + b.index()]);
                    out.push_str(&format!(
                        "  {op} {} {} = {};\n",
                        q(self.label(a)),
                        q(self.label(b)),
                        q(self.label(c))
                    ));
                }
            }
        }
        out.push('}');
        out
    }

    fn rebuild_builtin(&self) -> Option<Quantale> {
        let mut parts = self.name.split_whitespace();
        let kind: BuiltinKind = parts.next()?.parse().ok()?;
        let n = parts.next().map(|s| s.parse().ok()).unwrap_or(Some(2))?;
        Quantale::builtin(kind, n).ok()
    }
}
