//! Finite sets of labelled elements and total functions between them.
//!
//! Derived carriers use canonical labels so that output is deterministic:
//! `(a,b)` for pairs, `inl:a`/`inr:a`/`in2:a` for coproduct tags,
//! `{a↦b,c↦d}` (keys sorted) for functions and `[a,b]` for merged classes.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct FinSet(Arc<Inner>);

struct Inner {
    name: String,
    elems: Vec<String>,
}

impl FinSet {
    pub fn new(name: impl Into<String>, elems: Vec<String>) -> Result<Self> {
        let name = name.into();
        let mut sorted: Vec<&String> = elems.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!(
                "set {name} lists `{}` twice",
                w[0]
            )));
        }
        Ok(FinSet(Arc::new(Inner { name, elems })))
    }

    /// `{0, 1, …, n-1}`.
    pub fn numbered(name: impl Into<String>, n: usize) -> Self {
        FinSet(Arc::new(Inner {
            name: name.into(),
            elems: (0..n).map(|i| i.to_string()).collect(),
        }))
    }

    pub fn singleton(name: impl Into<String>) -> Self {
        FinSet(Arc::new(Inner {
            name: name.into(),
            elems: vec!["*".into()],
        }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn len(&self) -> usize {
        self.0.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elems.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.elems
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.elems[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.0.elems.iter().position(|l| l == label).ok_or_else(|| {
            Error::Validation(format!("`{label}` is not an element of {}", self.name()))
        })
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        FinSet(Arc::new(Inner {
            name: name.into(),
            elems: self.0.elems.clone(),
        }))
    }

    /// Cartesian product; `(i, j)` sits at position `i * |other| + j`.
    pub fn product(&self, other: &FinSet) -> FinSet {
        let mut elems = Vec::with_capacity(self.len() * other.len());
        for a in self.labels() {
            for b in other.labels() {
                elems.push(format!("({a},{b})"));
            }
        }
        FinSet(Arc::new(Inner {
            name: format!("{}×{}", self.name(), other.name()),
            elems,
        }))
    }

    /// Tagged disjoint union. Returns the union and the offset of each summand.
    pub fn coproduct(sets: &[FinSet]) -> (FinSet, Vec<usize>) {
        let mut elems = Vec::new();
        let mut offsets = Vec::with_capacity(sets.len());
        for (i, s) in sets.iter().enumerate() {
            offsets.push(elems.len());
            let tag = coproduct_tag(i);
            elems.extend(s.labels().iter().map(|l| format!("{tag}:{l}")));
        }
        let name = sets.iter().map(|s| s.name()).collect::<Vec<_>>().join("+");
        (FinSet(Arc::new(Inner { name, elems })), offsets)
    }
}

pub fn coproduct_tag(i: usize) -> String {
    match i {
        0 => "inl".into(),
        1 => "inr".into(),
        n => format!("in{n}"),
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.elems == other.0.elems
    }
}

impl Eq for FinSet {}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{{}}}", self.name(), self.labels().join(" "))
    }
}

/// A total function between finite sets.
#[derive(Clone, PartialEq, Eq)]
pub struct FinFn {
    dom: FinSet,
    cod: FinSet,
    map: Vec<usize>,
}

impl fmt::Debug for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = (0..self.dom.len())
            .map(|i| format!("{}↦{}", self.dom.label(i), self.cod.label(self.map[i])))
            .collect();
        write!(f, "{}→{} {{{}}}", self.dom.name(), self.cod.name(), pairs.join(","))
    }
}

impl FinFn {
    pub fn new(dom: FinSet, cod: FinSet, map: Vec<usize>) -> Result<Self> {
        if map.len() != dom.len() {
            return Err(Error::Validation(format!(
                "function {}→{} is not total: {} of {} points mapped",
                dom.name(),
                cod.name(),
                map.len(),
                dom.len()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&j| j >= cod.len()) {
            return Err(Error::Validation(format!(
                "function {}→{} maps to index {bad} outside its codomain",
                dom.name(),
                cod.name()
            )));
        }
        Ok(FinFn { dom, cod, map })
    }

    /// Builds a function from `(argument, value)` label pairs; every point of
    /// the domain must be mapped exactly once.
    pub fn from_pairs(dom: FinSet, cod: FinSet, pairs: &[(String, String)]) -> Result<Self> {
        let mut map = vec![None; dom.len()];
        for (a, b) in pairs {
            let i = dom.index_of(a)?;
            let j = cod.index_of(b)?;
            if map[i].replace(j).is_some() {
                return Err(Error::Validation(format!("`{a}` is mapped twice")));
            }
        }
        if let Some(i) = map.iter().position(Option::is_none) {
            return Err(Error::Validation(format!(
                "function {}→{} is not total: `{}` is unmapped",
                dom.name(),
                cod.name(),
                dom.label(i)
            )));
        }
        Ok(FinFn {
            dom,
            cod,
            map: map.into_iter().map(Option::unwrap).collect(),
        })
    }

    pub fn identity(x: &FinSet) -> Self {
        FinFn {
            dom: x.clone(),
            cod: x.clone(),
            map: (0..x.len()).collect(),
        }
    }

    pub fn constant(dom: &FinSet, cod: &FinSet, value: usize) -> Result<Self> {
        FinFn::new(dom.clone(), cod.clone(), vec![value; dom.len()])
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &FinFn) -> Result<FinFn> {
        if self.cod != then.dom {
            return Err(Error::Composition(format!(
                "cannot compose {}→{} with {}→{}",
                self.dom.name(),
                self.cod.name(),
                then.dom.name(),
                then.cod.name()
            )));
        }
        Ok(FinFn {
            dom: self.dom.clone(),
            cod: then.cod.clone(),
            map: self.map.iter().map(|&i| then.map[i]).collect(),
        })
    }

    /// `self × other` on product carriers.
    pub fn product(&self, other: &FinFn) -> FinFn {
        let dom = self.dom.product(&other.dom);
        let cod = self.cod.product(&other.cod);
        let m = other.cod.len();
        let mut map = Vec::with_capacity(dom.len());
        for &a in &self.map {
            for &b in &other.map {
                map.push(a * m + b);
            }
        }
        FinFn { dom, cod, map }
    }

    /// Same mapping, rebased on equal-labelled carriers.
    pub fn rebased(&self, dom: &FinSet, cod: &FinSet) -> Result<FinFn> {
        if *dom != self.dom || *cod != self.cod {
            return Err(Error::Typing("rebasing onto different carriers".into()));
        }
        Ok(FinFn {
            dom: dom.clone(),
            cod: cod.clone(),
            map: self.map.clone(),
        })
    }
}

/// The set `cod^dom` of all functions, materialized as a [`FinSet`].
///
/// A function is encoded in mixed radix with the first domain point as the
/// most significant digit, so enumeration order is lexicographic.
#[derive(Clone, Debug)]
pub struct FunctionSpace {
    dom: FinSet,
    cod: FinSet,
    set: FinSet,
}

/// `base^exp` or `None` on overflow.
pub fn checked_size(base: usize, exp: usize) -> Option<u128> {
    (base as u128).checked_pow(exp as u32)
}

impl FunctionSpace {
    pub fn new(dom: &FinSet, cod: &FinSet, cap: u64) -> Result<Self> {
        let size = checked_size(cod.len(), dom.len()).filter(|&s| s <= cap as u128);
        let Some(size) = size else {
            return Err(Error::Resource {
                what: format!("function set {}^{}", cod.name(), dom.name()),
                needed: checked_size(cod.len(), dom.len()).unwrap_or(u128::MAX),
                cap,
            });
        };
        let size = size as usize;
        let mut order: Vec<usize> = (0..dom.len()).collect();
        order.sort_by(|&a, &b| dom.label(a).cmp(dom.label(b)));
        let mut elems = Vec::with_capacity(size);
        let mut digits = vec![0usize; dom.len()];
        for idx in 0..size {
            decode_into(idx, cod.len(), &mut digits);
            let body: Vec<String> = order
                .iter()
                .map(|&i| format!("{}↦{}", dom.label(i), cod.label(digits[i])))
                .collect();
            elems.push(format!("{{{}}}", body.join(",")));
        }
        let set = FinSet(Arc::new(Inner {
            name: format!("{}^{}", cod.name(), dom.name()),
            elems,
        }));
        Ok(FunctionSpace {
            dom: dom.clone(),
            cod: cod.clone(),
            set,
        })
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn set(&self) -> &FinSet {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    /// Value tuple of the `idx`-th function.
    pub fn decode(&self, idx: usize) -> Vec<usize> {
        let mut digits = vec![0; self.dom.len()];
        decode_into(idx, self.cod.len(), &mut digits);
        digits
    }

    pub fn encode(&self, values: &[usize]) -> usize {
        encode(values, self.cod.len())
    }

    pub fn function(&self, idx: usize) -> FinFn {
        FinFn {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            map: self.decode(idx),
        }
    }

    pub fn index_of(&self, f: &FinFn) -> Result<usize> {
        if f.dom != self.dom || f.cod != self.cod {
            return Err(Error::Typing("function does not belong to this function set".into()));
        }
        Ok(self.encode(&f.map))
    }
}

pub(crate) fn decode_into(mut idx: usize, radix: usize, digits: &mut [usize]) {
    for d in digits.iter_mut().rev() {
        *d = idx % radix;
        idx /= radix;
    }
}

pub(crate) fn encode(values: &[usize], radix: usize) -> usize {
    values.iter().fold(0, |acc, &v| acc * radix + v)
}

/// Coequalizer of two parallel functions: the quotient of their common
/// codomain by the equivalence generated by `f(a) ~ g(a)`.
pub fn coequalize(f: &FinFn, g: &FinFn) -> Result<FinFn> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(Error::Typing("coequalizer needs parallel functions".into()));
    }
    let n = f.cod.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for a in 0..f.dom.len() {
        let (x, y) = (find(&mut parent, f.map[a]), find(&mut parent, g.map[a]));
        if x != y {
            let (lo, hi) = (x.min(y), x.max(y));
            parent[hi] = lo;
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for b in 0..n {
        let root = find(&mut parent, b);
        if class_of[root] == usize::MAX {
            class_of[root] = members.len();
            members.push(Vec::new());
        }
        class_of[b] = class_of[root];
        members[class_of[b]].push(b);
    }
    let elems = members
        .iter()
        .map(|m| match m.as_slice() {
            [single] => f.cod.label(*single).to_string(),
            many => format!(
                "[{}]",
                many.iter().map(|&b| f.cod.label(b)).collect::<Vec<_>>().join(",")
            ),
        })
        .collect();
    let quotient = FinSet::new(format!("{}/~", f.cod.name()), elems)?;
    FinFn::new(f.cod.clone(), quotient, class_of)
}

/// Renders a label for workspace syntax, quoting it when it is not a plain word.
pub fn quote_label(s: &str) -> String {
    let plain = !s.is_empty()
        && s != "default"
        && s.chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '.' | '/' | '\'' | '*'));
    if plain {
        s.to_string()
    } else {
        let escaped = s.replace('\\', "\\\\").replace('"', "\\\"");
        format!("\"{escaped}\"")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(name: &str, elems: &[&str]) -> FinSet {
        FinSet::new(name, elems.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(FinSet::new("X", vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn function_space_labels_sort_keys() {
        let x = set("X", &["b", "a"]);
        let y = set("Y", &["0", "1"]);
        let fs = FunctionSpace::new(&x, &y, 100).unwrap();
        assert_eq!(fs.len(), 4);
        // index 1 = (b↦0, a↦1)
        assert_eq!(fs.set().label(1), "{a↦1,b↦0}");
        assert_eq!(fs.encode(&fs.decode(3)), 3);
    }

    #[test]
    fn empty_exponents() {
        let e = FinSet::numbered("E", 0);
        let y = FinSet::numbered("Y", 3);
        assert_eq!(FunctionSpace::new(&e, &y, 10).unwrap().len(), 1);
        assert_eq!(FunctionSpace::new(&y, &e, 10).unwrap().len(), 0);
        assert_eq!(FunctionSpace::new(&e, &e, 10).unwrap().set().label(0), "{}");
    }

    #[test]
    fn function_space_cap() {
        let x = FinSet::numbered("X", 10);
        assert!(matches!(
            FunctionSpace::new(&x, &x, 1000),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn partial_function_rejected() {
        let x = set("X", &["a", "b"]);
        let err = FinFn::from_pairs(x.clone(), x.clone(), &[("a".into(), "b".into())]).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn coequalizer_merges_classes() {
        let a = set("A", &["p"]);
        let b = set("B", &["x", "y", "z"]);
        let f = FinFn::new(a.clone(), b.clone(), vec![0]).unwrap();
        let g = FinFn::new(a, b, vec![2]).unwrap();
        let q = coequalize(&f, &g).unwrap();
        assert_eq!(q.cod().labels(), &["[x,z]".to_string(), "y".to_string()]);
        assert_eq!(q.map(), &[0, 1, 0]);
        let same = coequalize(&f, &f).unwrap();
        assert_eq!(same.cod().labels(), b_labels());
    }

    fn b_labels() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    #[test]
    fn quoting() {
        assert_eq!(quote_label("x1"), "x1");
        assert_eq!(quote_label("1/2"), "1/2");
        assert_eq!(quote_label("(a,b)"), "\"(a,b)\"");
        assert_eq!(quote_label("default"), "\"default\"");
    }
}
