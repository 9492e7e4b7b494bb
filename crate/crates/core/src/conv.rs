//! Convolution structures induced by the internal hom.
//!
//! For a cocategory `C` on `Z` and a category `A` on `X` the function set
//! `X^Z` carries the category `H(C,A)`; a comodule and a module give the
//! matching `H(C,A)`-module. Cocategories and comodules also have internal
//! homs of their own, computed as greatest fixpoints indexwise.

use crate::cat::{QCategory, QCocategory};
use crate::error::{Error, Result};
use crate::finset::{encode, FunctionSpace};
use crate::module::{QComodule, QModule};
use crate::vmat::{internal_hom, same_quantale, Limits, VMatrix};

fn space_cap(limits: &Limits, dom: &crate::FinSet, cod: &crate::FinSet) -> Result<FunctionSpace> {
    let n = crate::finset::checked_size(cod.len(), dom.len());
    limits.check(
        || format!("convolution carrier {}^{}", cod.name(), dom.name()),
        n.and_then(|n| n.checked_mul(n)),
    )?;
    FunctionSpace::new(dom, cod, limits.max_entries)
}

/// `H(C,A)(s,k) = ⋀_z [c_z, A(s z, k z)]` on `X^Z`.
pub fn convolution_category(c: &QCocategory, a: &QCategory, limits: &Limits) -> Result<QCategory> {
    if !same_quantale(c.quantale(), a.quantale()) {
        return Err(Error::Composition("convolution over different quantales".into()));
    }
    let space = space_cap(limits, c.objects(), a.objects())?;
    let q = a.quantale();
    let fns: Vec<Vec<usize>> = (0..space.len()).map(|i| space.decode(i)).collect();
    let hom = VMatrix::from_fn(q, space.set(), space.set(), |si, ki| {
        let (s, k) = (&fns[si], &fns[ki]);
        q.meet_all((0..s.len()).map(|z| q.residuate(c.weight(z), a.get(s[z], k[z]))))
    });
    Ok(QCategory::trusted(hom))
}

/// `H(K,M)(t,s) = ⋀_{z,v} [K(z,v), M(t z, s v)]`, a module over `H(C,A)`
/// with source `U^V`.
pub fn convolution_module(k: &QComodule, m: &QModule, limits: &Limits) -> Result<QModule> {
    let over = convolution_category(k.over(), m.over(), limits)?;
    let mat = internal_hom(k.mat(), m.mat(), limits)?;
    let mat = mat.with_carriers(mat.src(), over.objects())?;
    QModule::new(over, mat)
}

/// Internal hom of cocategories on `W^Z`:
/// `weight(k) = gfp(q ↦ e ∧ h_k ∧ q⊗q)` with `h_k = ⋀_z [c_z, d_{k z}]`.
/// Also returns the per-index iteration counts.
pub fn hom_cocategories(
    c: &QCocategory,
    d: &QCocategory,
    limits: &Limits,
) -> Result<(QCocategory, Vec<usize>)> {
    if !same_quantale(c.quantale(), d.quantale()) {
        return Err(Error::Composition("cocategories over different quantales".into()));
    }
    let space = space_cap(limits, c.objects(), d.objects())?;
    let q = c.quantale();
    let mut weights = Vec::with_capacity(space.len());
    let mut trace = Vec::with_capacity(space.len());
    for ki in 0..space.len() {
        let k = space.decode(ki);
        let h = q.meet_all((0..k.len()).map(|z| q.residuate(c.weight(z), d.weight(k[z]))));
        let bound = q.meet(q.unit(), h);
        let (w, steps) = q.gfp(|x| q.meet(bound, q.tensor(x, x)));
        weights.push(w);
        trace.push(steps);
    }
    Ok((QCocategory::trusted(q.clone(), space.set().clone(), weights), trace))
}

/// Internal hom of comodules, a comodule over `hom_cocategories(C, D)` with
/// source `S^V`: `entry(k,s) = gfp(q ↦ b ∧ weight_k ⊗ q)` with
/// `b = ⋀_{z,v} [K(z,v), L(k z, s v)]`.
pub fn hom_comodules(k: &QComodule, l: &QComodule, limits: &Limits) -> Result<(QComodule, Vec<usize>)> {
    let (over, _) = hom_cocategories(k.over(), l.over(), limits)?;
    let b = internal_hom(k.mat(), l.mat(), limits)?;
    let q = over.quantale().clone();
    let mut trace = Vec::with_capacity(b.entries().len());
    let mat = VMatrix::from_fn(&q, b.src(), over.objects(), |ki, si| {
        let (bound, w) = (b.get(ki, si), over.weight(ki));
        let (x, steps) = q.gfp(|x| q.meet(bound, q.tensor(w, x)));
        trace.push(steps);
        x
    });
    Ok((QComodule::trusted(over, mat), trace))
}

/// Compares `H(C, H(D, B))` with `H(C⊗D, B)` along the currying bijection
/// `(Y^W)^Z ≅ Y^(Z×W)`. Errors if they differ anywhere.
pub fn curry_check(c: &QCocategory, d: &QCocategory, b: &QCategory, limits: &Limits) -> Result<bool> {
    let inner = convolution_category(d, b, limits)?;
    let nested = convolution_category(c, &inner, limits)?;
    let cd = crate::cat::tensor_cocategories(c, d)?;
    let flat = convolution_category(&cd, b, limits)?;

    let (nz, nw, ny) = (c.objects().len(), d.objects().len(), b.objects().len());
    let outer = FunctionSpace::new(c.objects(), inner.objects(), limits.max_entries)?;
    let inner_space = FunctionSpace::new(d.objects(), b.objects(), limits.max_entries)?;
    let uncurry = |fi: usize| -> usize {
        let big = outer.decode(fi);
        let mut flat_vals = Vec::with_capacity(nz * nw);
        for &g in &big {
            flat_vals.extend(inner_space.decode(g));
        }
        encode(&flat_vals, ny)
    };
    let n = outer.len();
    if n != flat.objects().len() {
        return Err(Error::Invariant(format!(
            "curried carrier has {n} points, uncurried has {}",
            flat.objects().len()
        )));
    }
    let image: Vec<usize> = (0..n).map(uncurry).collect();
    for s in 0..n {
        for t in 0..n {
            if nested.get(s, t) != flat.get(image[s], image[t]) {
                return Err(Error::Invariant(format!(
                    "currying mismatch at ({}, {})",
                    nested.objects().label(s),
                    nested.objects().label(t)
                )));
            }
        }
    }
    Ok(true)
}
