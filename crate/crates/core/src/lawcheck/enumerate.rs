//! Exhaustive, lexicographically ordered enumeration of small structures.
//!
//! Entry vectors are counted in mixed radix with the first entry most
//! significant; structures that fail their laws are skipped.

use std::sync::Arc;

use crate::cat::{verify_category, verify_cocategory, QCategory, QCocategory};
use crate::error::{Error, Result};
use crate::finset::{checked_size, decode_into, FinFn, FinSet};
use crate::module::{verify_comodule, verify_module, QComodule, QModule};
use crate::quantale::{Elem, Quantale};
use crate::vmat::VMatrix;

/// Largest number of raw candidates a single enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(1 << 24)
    }
}

impl Budget {
    fn admit(&self, what: &str, base: usize, cells: usize) -> Result<usize> {
        match checked_size(base, cells) {
            Some(n) if n <= self.0 as u128 => Ok(n as usize),
            n => Err(Error::Resource {
                what: format!("enumerating {what} ({base}^{cells} candidates); lower the bounds"),
                needed: n.unwrap_or(u128::MAX),
                cap: self.0,
            }),
        }
    }
}

/// All vectors of `cells` quantale elements, lexicographically.
pub fn entry_vectors(q: &Quantale, cells: usize, budget: Budget) -> Result<impl Iterator<Item = Vec<Elem>>> {
    let n = q.len();
    let count = budget.admit("entry vectors", n, cells)?;
    let mut digits = vec![0usize; cells];
    Ok((0..count).map(move |i| {
        decode_into(i, n, &mut digits);
        digits.iter().map(|&d| Elem(d as u8)).collect()
    }))
}

pub fn matrices(
    q: &Arc<Quantale>,
    src: &FinSet,
    tgt: &FinSet,
    budget: Budget,
) -> Result<impl Iterator<Item = VMatrix>> {
    let (q, src, tgt) = (q.clone(), src.clone(), tgt.clone());
    let it = entry_vectors(&q, src.len() * tgt.len(), budget)?;
    Ok(it.map(move |e| VMatrix::new(q.clone(), src.clone(), tgt.clone(), e).expect("shape fixed")))
}

pub fn categories(q: &Arc<Quantale>, x: &FinSet, budget: Budget) -> Result<impl Iterator<Item = QCategory>> {
    Ok(matrices(q, x, x, budget)?.filter_map(|m| {
        if verify_category(&m).ok()?.is_pass() {
            Some(QCategory::new(m).expect("verified"))
        } else {
            None
        }
    }))
}

pub fn cocategories(q: &Arc<Quantale>, z: &FinSet, budget: Budget) -> Result<impl Iterator<Item = QCocategory>> {
    let (q, z) = (q.clone(), z.clone());
    let it = entry_vectors(&q, z.len(), budget)?;
    Ok(it.filter_map(move |w| {
        if verify_cocategory(&q, &z, &w).ok()?.is_pass() {
            Some(QCocategory::new(q.clone(), z.clone(), w).expect("verified"))
        } else {
            None
        }
    }))
}

/// Modules over `a` with source `u`.
pub fn modules(a: &QCategory, u: &FinSet, budget: Budget) -> Result<impl Iterator<Item = QModule>> {
    let a = a.clone();
    Ok(matrices(a.quantale(), u, a.objects(), budget)?.filter_map(move |m| {
        if verify_module(&a, &m).ok()?.is_pass() {
            Some(QModule::new(a.clone(), m).expect("verified"))
        } else {
            None
        }
    }))
}

/// Comodules over `c` with source `v`.
pub fn comodules(c: &QCocategory, v: &FinSet, budget: Budget) -> Result<impl Iterator<Item = QComodule>> {
    let c = c.clone();
    Ok(matrices(c.quantale(), v, c.objects(), budget)?.filter_map(move |k| {
        if verify_comodule(&c, &k).ok()?.is_pass() {
            Some(QComodule::new(c.clone(), k).expect("verified"))
        } else {
            None
        }
    }))
}

/// All functions `dom → cod`, lexicographically.
pub fn functions(dom: &FinSet, cod: &FinSet, budget: Budget) -> Result<impl Iterator<Item = FinFn>> {
    let count = budget.admit("functions", cod.len(), dom.len())?;
    let (dom, cod) = (dom.clone(), cod.clone());
    let mut digits = vec![0usize; dom.len()];
    Ok((0..count).map(move |i| {
        decode_into(i, cod.len(), &mut digits);
        FinFn::new(dom.clone(), cod.clone(), digits.clone()).expect("in range")
    }))
}

/// Carrier `{0, …, n-1}` named `name`.
pub fn carrier(name: &str, n: usize) -> FinSet {
    FinSet::numbered(name, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Matrix,
    Category,
    Cocategory,
    Module,
    Comodule,
}

#[derive(Debug, Clone)]
pub enum Enumerated {
    Matrix(VMatrix),
    Category(QCategory),
    Cocategory(QCocategory),
    Module(QModule),
    Comodule(QComodule),
}

/// Enumerates every structure of `kind` on carriers of the given sizes:
/// matrices take `[src, tgt]`, (co)categories `[objects]`, (co)modules
/// `[objects, source]` and range over every acting (co)category too.
pub fn enumerate(
    kind: Kind,
    q: &Arc<Quantale>,
    sizes: &[usize],
    budget: Budget,
    predicate: Option<&dyn Fn(&Enumerated) -> bool>,
) -> Result<Vec<Enumerated>> {
    let need = match kind {
        Kind::Matrix | Kind::Module | Kind::Comodule => 2,
        Kind::Category | Kind::Cocategory => 1,
    };
    if sizes.len() != need {
        return Err(Error::Validation(format!("{kind:?} enumeration takes {need} sizes")));
    }
    let x = carrier("X", sizes[0]);
    let out: Vec<Enumerated> = match kind {
        Kind::Matrix => matrices(q, &x, &carrier("Y", sizes[1]), budget)?
            .map(Enumerated::Matrix)
            .collect(),
        Kind::Category => categories(q, &x, budget)?.map(Enumerated::Category).collect(),
        Kind::Cocategory => cocategories(q, &x, budget)?.map(Enumerated::Cocategory).collect(),
        Kind::Module => {
            let u = carrier("U", sizes[1]);
            let mut v = Vec::new();
            for a in categories(q, &x, budget)? {
                v.extend(modules(&a, &u, budget)?.map(Enumerated::Module));
            }
            v
        }
        Kind::Comodule => {
            let u = carrier("V", sizes[1]);
            let mut v = Vec::new();
            for c in cocategories(q, &x, budget)? {
                v.extend(comodules(&c, &u, budget)?.map(Enumerated::Comodule));
            }
            v
        }
    };
    Ok(match predicate {
        Some(p) => out.into_iter().filter(|e| p(e)).collect(),
        None => out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let b = Arc::new(Quantale::bool());
        assert_eq!(enumerate(Kind::Matrix, &b, &[2, 2], Budget::default(), None).unwrap().len(), 16);
        assert_eq!(enumerate(Kind::Category, &b, &[2], Budget::default(), None).unwrap().len(), 4);
        let l = Arc::new(Quantale::lukasiewicz(3).unwrap());
        assert_eq!(enumerate(Kind::Cocategory, &l, &[1], Budget::default(), None).unwrap().len(), 2);
    }

    #[test]
    fn predicate_filters() {
        let b = Arc::new(Quantale::bool());
        let p = |e: &Enumerated| matches!(e, Enumerated::Matrix(m) if m.entries().iter().all(|&x| x == Elem(0)));
        let v = enumerate(Kind::Matrix, &b, &[2, 2], Budget::default(), Some(&p)).unwrap();
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn budget_exceeded() {
        let g = Arc::new(Quantale::godel(5).unwrap());
        let err = enumerate(Kind::Matrix, &g, &[4, 4], Budget(1000), None).unwrap_err();
        assert!(matches!(err, Error::Resource { .. }));
    }

    #[test]
    fn lexicographic_order() {
        let b = Arc::new(Quantale::bool());
        let x = carrier("X", 1);
        let y = carrier("Y", 2);
        let all: Vec<Vec<Elem>> = matrices(&b, &x, &y, Budget::default())
            .unwrap()
            .map(|m| m.entries().to_vec())
            .collect();
        assert_eq!(all[1], vec![Elem(0), Elem(1)]);
        assert_eq!(all[2], vec![Elem(1), Elem(0)]);
    }
}
