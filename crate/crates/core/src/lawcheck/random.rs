//! Seeded random structures for sampling beyond exhaustive bounds.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cat::{pullback_category, star_closure, QCategory, QCocategory};
use crate::finset::{FinFn, FinSet};
use crate::module::{cofree_comodule, free_module, QComodule, QModule};
use crate::quantale::{Elem, Quantale};
use crate::vmat::VMatrix;

pub fn size(rng: &mut ChaCha8Rng, max: usize) -> usize {
    rng.gen_range(1..=max.max(1))
}

pub fn matrix(rng: &mut ChaCha8Rng, q: &Arc<Quantale>, src: &FinSet, tgt: &FinSet) -> VMatrix {
    let n = q.len();
    VMatrix::from_fn(q, src, tgt, |_, _| Elem(rng.gen_range(0..n) as u8))
}

pub fn function(rng: &mut ChaCha8Rng, dom: &FinSet, cod: &FinSet) -> Option<FinFn> {
    if cod.is_empty() && !dom.is_empty() {
        return None;
    }
    let map = (0..dom.len()).map(|_| rng.gen_range(0..cod.len())).collect();
    FinFn::new(dom.clone(), cod.clone(), map).ok()
}

/// The least category above a random matrix.
pub fn category(rng: &mut ChaCha8Rng, q: &Arc<Quantale>, x: &FinSet) -> QCategory {
    star_closure(&matrix(rng, q, x, x)).expect("endo-matrix").0
}

/// A random category on `x` for which `f` is a functor into `b`: the meet
/// of a random category with the pullback of `b`.
pub fn category_over(rng: &mut ChaCha8Rng, f: &FinFn, b: &QCategory) -> QCategory {
    let q = b.quantale();
    let a = category(rng, q, f.dom());
    let pb = pullback_category(f, b).expect("typed");
    let hom = VMatrix::from_fn(q, f.dom(), f.dom(), |y, x| q.meet(a.get(y, x), pb.get(y, x)));
    QCategory::new(hom).expect("meet of categories")
}

/// Weights drawn from the subunital idempotents.
pub fn cocategory(rng: &mut ChaCha8Rng, q: &Arc<Quantale>, z: &FinSet) -> QCocategory {
    let ok: Vec<Elem> = q
        .elements()
        .filter(|&c| q.leq(c, q.unit()) && q.leq(c, q.tensor(c, c)))
        .collect();
    let w = (0..z.len()).map(|_| ok[rng.gen_range(0..ok.len())]).collect();
    QCocategory::new(q.clone(), z.clone(), w).expect("valid weights")
}

/// A random cocategory on `z` for which `f` is a cofunctor into `d`.
pub fn cocategory_over(rng: &mut ChaCha8Rng, f: &FinFn, d: &QCocategory) -> QCocategory {
    let q = d.quantale();
    let w = (0..f.dom().len())
        .map(|z| {
            let cap = d.weight(f.apply(z));
            let ok: Vec<Elem> = q
                .elements()
                .filter(|&c| q.leq(c, cap) && q.leq(c, q.tensor(c, c)))
                .collect();
            ok[rng.gen_range(0..ok.len())]
        })
        .collect();
    QCocategory::new(q.clone(), f.dom().clone(), w).expect("idempotents below a weight")
}

pub fn module(rng: &mut ChaCha8Rng, a: &QCategory, u: &FinSet) -> QModule {
    free_module(a, &matrix(rng, a.quantale(), u, a.objects())).expect("typed")
}

pub fn comodule(rng: &mut ChaCha8Rng, c: &QCocategory, v: &FinSet) -> QComodule {
    cofree_comodule(c, &matrix(rng, c.quantale(), v, c.objects())).expect("typed")
}
