//! Left modules over categories and left comodules over cocategories.
//!
//! A module `M: U ⇸ X` over `A` satisfies `A(x,x') ⊗ M(x',u) ≤ M(x,u)`; a
//! comodule `K: V ⇸ Z` over `C` satisfies `K(z,v) ≤ c_z ⊗ K(z,v)`. The
//! remaining axioms hold automatically because 2-cells are unique.

use std::sync::Arc;

use crate::cat::{morphism_check, QCategory, QCocategory};
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::quantale::Quantale;
use crate::report::Report;
use crate::vmat::{cell_check, companion_conjoint, hcompose, same_quantale, tensor_matrices, Cell2, VMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QModule {
    over: QCategory,
    mat: VMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QComodule {
    over: QCocategory,
    mat: VMatrix,
}

pub fn verify_module(a: &QCategory, m: &VMatrix) -> Result<Report> {
    if m.tgt() != a.objects() || !same_quantale(a.quantale(), m.quantale()) {
        return Err(Error::Typing(format!(
            "module matrix lands in {}, category has objects {}",
            m.tgt().name(),
            a.objects().name()
        )));
    }
    let q = a.quantale();
    let (x, u) = (a.objects(), m.src());
    let mut r = Report::new("module");
    'outer: for xi in 0..x.len() {
        for xp in 0..x.len() {
            let axx = a.get(xi, xp);
            for ui in 0..u.len() {
                if !q.leq(q.tensor(axx, m.get(xp, ui)), m.get(xi, ui)) {
                    r.push(
                        "action",
                        vec![x.label(xi).into(), x.label(xp).into(), u.label(ui).into()],
                    );
                    break 'outer;
                }
            }
        }
    }
    Ok(r)
}

pub fn verify_comodule(c: &QCocategory, k: &VMatrix) -> Result<Report> {
    if k.tgt() != c.objects() || !same_quantale(c.quantale(), k.quantale()) {
        return Err(Error::Typing(format!(
            "comodule matrix lands in {}, cocategory has objects {}",
            k.tgt().name(),
            c.objects().name()
        )));
    }
    let q = c.quantale();
    let mut r = Report::new("comodule");
    'outer: for z in 0..k.tgt().len() {
        for v in 0..k.src().len() {
            let e = k.get(z, v);
            if !q.leq(e, q.tensor(c.weight(z), e)) {
                r.push("coaction", vec![k.tgt().label(z).into(), k.src().label(v).into()]);
                break 'outer;
            }
        }
    }
    Ok(r)
}

impl QModule {
    pub fn new(over: QCategory, mat: VMatrix) -> Result<Self> {
        let r = verify_module(&over, &mat)?;
        if r.is_pass() {
            Ok(QModule { over, mat })
        } else {
            Err(Error::Law(r))
        }
    }

    pub(crate) fn trusted(over: QCategory, mat: VMatrix) -> Self {
        debug_assert!(verify_module(&over, &mat).map(|r| r.is_pass()).unwrap_or(false));
        QModule { over, mat }
    }

    /// `[e]` over the unit category.
    pub fn unit(q: &Arc<Quantale>) -> Self {
        let over = QCategory::unit(q);
        let mat = VMatrix::constant(q, &FinSet::singleton("1"), over.objects(), q.unit());
        QModule { over, mat }
    }

    /// Unit for the fixed-source tensor: `J: U ⇸ 1` with `J(u) = e`.
    pub fn fixed_domain_unit(q: &Arc<Quantale>, u: &FinSet) -> Self {
        let over = QCategory::unit(q);
        let mat = VMatrix::constant(q, u, over.objects(), q.unit());
        QModule { over, mat }
    }

    pub fn over(&self) -> &QCategory {
        &self.over
    }

    pub fn mat(&self) -> &VMatrix {
        &self.mat
    }

    pub fn src(&self) -> &FinSet {
        self.mat.src()
    }
}

impl QComodule {
    pub fn new(over: QCocategory, mat: VMatrix) -> Result<Self> {
        let r = verify_comodule(&over, &mat)?;
        if r.is_pass() {
            Ok(QComodule { over, mat })
        } else {
            Err(Error::Law(r))
        }
    }

    pub(crate) fn trusted(over: QCocategory, mat: VMatrix) -> Self {
        debug_assert!(verify_comodule(&over, &mat).map(|r| r.is_pass()).unwrap_or(false));
        QComodule { over, mat }
    }

    pub fn unit(q: &Arc<Quantale>) -> Self {
        let over = QCocategory::unit(q);
        let mat = VMatrix::constant(q, &FinSet::singleton("1"), over.objects(), q.unit());
        QComodule { over, mat }
    }

    pub fn over(&self) -> &QCocategory {
        &self.over
    }

    pub fn mat(&self) -> &VMatrix {
        &self.mat
    }

    pub fn src(&self) -> &FinSet {
        self.mat.src()
    }
}

/// A morphism `M → N` over the functor `alpha` with source function `g`
/// exists iff `alpha` is a functor and the cell `M ⇒ N` over `(g, alpha)` does.
pub fn mod_morphism_check(alpha: &FinFn, g: &FinFn, m: &QModule, n: &QModule) -> Result<bool> {
    let functor = morphism_check(alpha, &m.over, &n.over)?;
    let cell = cell_check(g, alpha, &m.mat, &n.mat)?;
    Ok(functor && cell.verdict)
}

pub fn comod_morphism_check(alpha: &FinFn, g: &FinFn, k: &QComodule, l: &QComodule) -> Result<bool> {
    let cofunctor = morphism_check(alpha, &k.over, &l.over)?;
    let cell = cell_check(g, alpha, &k.mat, &l.mat)?;
    Ok(cofunctor && cell.verdict)
}

/// `A ⊙ M` with the action induced by composition in `A`.
pub fn free_module(a: &QCategory, m: &VMatrix) -> Result<QModule> {
    if m.tgt() != a.objects() {
        return Err(Error::Typing("free module on a matrix not landing in the objects".into()));
    }
    Ok(QModule::trusted(a.clone(), hcompose(a.hom(), m)?))
}

/// `C ⊙ K`, i.e. `(z,v) ↦ c_z ⊗ K(z,v)`.
pub fn cofree_comodule(c: &QCocategory, k: &VMatrix) -> Result<QComodule> {
    if k.tgt() != c.objects() {
        return Err(Error::Typing("cofree comodule on a matrix not landing in the objects".into()));
    }
    Ok(QComodule::trusted(c.clone(), hcompose(&c.to_matrix(), k)?))
}

/// Restriction of scalars along the functor `alpha: A → B`:
/// `(f^* ⊙ N)(x,t) = N(f x, t)`.
pub fn restrict_scalars(alpha: &FinFn, a: &QCategory, n: &QModule) -> Result<QModule> {
    if !morphism_check(alpha, a, &n.over)? {
        return Err(Error::Validation("restriction along a function that is not a functor".into()));
    }
    let (_, conjoint) = companion_conjoint(a.quantale(), alpha);
    Ok(QModule::trusted(a.clone(), hcompose(&conjoint, &n.mat)?))
}

/// The cartesian cell `restrict_scalars(alpha, N) ⇒ N` over `(id_T, alpha)`.
pub fn restriction_cell(alpha: &FinFn, restricted: &QModule, n: &QModule) -> Result<Cell2> {
    cell_check(&FinFn::identity(n.src()), alpha, &restricted.mat, &n.mat)
}

/// Corestriction along the cofunctor `alpha: C → D`:
/// `(f_* ⊙ K)(w,v) = ⋁_{f z = w} K(z,v)`.
pub fn corestrict_scalars(alpha: &FinFn, k: &QComodule, d: &QCocategory) -> Result<QComodule> {
    if !morphism_check(alpha, &k.over, d)? {
        return Err(Error::Validation("corestriction along a function that is not a cofunctor".into()));
    }
    let (companion, _) = companion_conjoint(d.quantale(), alpha);
    Ok(QComodule::trusted(d.clone(), hcompose(&companion, &k.mat)?))
}

/// The cocartesian cell `K ⇒ corestrict_scalars(alpha, K)` over `(id_V, alpha)`.
pub fn corestriction_cell(alpha: &FinFn, k: &QComodule, corestricted: &QComodule) -> Result<Cell2> {
    cell_check(&FinFn::identity(k.src()), alpha, &k.mat, &corestricted.mat)
}

/// `N ⊙ f_*` for `f: U' → U`: columns reindexed, `(y,u') ↦ N(y, f u')`.
pub fn source_reindex(f: &FinFn, n: &QModule) -> Result<QModule> {
    if f.cod() != n.src() {
        return Err(Error::Typing("reindexing function does not land in the module source".into()));
    }
    let (companion, _) = companion_conjoint(n.mat.quantale(), f);
    Ok(QModule::trusted(n.over.clone(), hcompose(&n.mat, &companion)?))
}

pub fn source_reindex_comodule(f: &FinFn, k: &QComodule) -> Result<QComodule> {
    if f.cod() != k.src() {
        return Err(Error::Typing("reindexing function does not land in the comodule source".into()));
    }
    let (companion, _) = companion_conjoint(k.mat.quantale(), f);
    Ok(QComodule::trusted(k.over.clone(), hcompose(&k.mat, &companion)?))
}

/// `M ⊗ N` over `A ⊗ B`.
pub fn tensor_modules(m: &QModule, n: &QModule) -> Result<QModule> {
    let over = crate::cat::tensor_categories(&m.over, &n.over)?;
    QModule::new(over, tensor_matrices(&m.mat, &n.mat)?)
}

/// `K ⊗ L` over `C ⊗ D`.
pub fn tensor_comodules(k: &QComodule, l: &QComodule) -> Result<QComodule> {
    let over = crate::cat::tensor_cocategories(&k.over, &l.over)?;
    QComodule::new(over, tensor_matrices(&k.mat, &l.mat)?)
}

/// Tensor of single-column modules, `(M⊗N)(x,y) = M(x) ⊗ N(y)`.
pub fn unit_domain_tensor(m: &QModule, n: &QModule) -> Result<QModule> {
    if m.src().len() != 1 || n.src().len() != 1 {
        return Err(Error::Validation("unit-domain tensor needs singleton sources".into()));
    }
    let t = tensor_modules(m, n)?;
    let one = m.src().clone();
    let mat = VMatrix::new(t.mat.quantale().clone(), one, t.mat.tgt().clone(), t.mat.entries().to_vec())?;
    Ok(QModule::trusted(t.over, mat))
}

/// Tensor in the fiber over a fixed source `U`:
/// `(M⊗M')((x,y),u) = M(x,u) ⊗ M'(y,u)`.
pub fn fixed_domain_tensor(m: &QModule, mp: &QModule) -> Result<QModule> {
    if m.src() != mp.src() {
        return Err(Error::Typing("fixed-domain tensor needs a common source".into()));
    }
    let over = crate::cat::tensor_categories(&m.over, &mp.over)?;
    let q = m.mat.quantale();
    let ny = mp.over.objects().len();
    let mat = VMatrix::from_fn(q, m.src(), over.objects(), |xy, u| {
        q.tensor(m.mat.get(xy / ny, u), mp.mat.get(xy % ny, u))
    });
    QModule::new(over, mat)
}
