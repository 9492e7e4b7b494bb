//! Monads and comonads in the matrix double category: enriched categories
//! and cocategories over the quantale.
//!
//! Homs are read `hom(target, source)`, matching the matrix convention; a
//! category is an endo-matrix `A` with `e ≤ A(x,x)` and `A∘A ≤ A`.
//!
//! Cocategories are kept in diagonal normal form. The counit `C ⇒ 1_Z`
//! forces every off-diagonal entry to bottom, after which the
//! comultiplication reduces to `c_z ≤ c_z ⊗ c_z` on the diagonal.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::quantale::{Elem, Quantale};
use crate::report::Report;
use crate::vmat::{same_quantale, VMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCategory {
    hom: VMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCocategory {
    q: Arc<Quantale>,
    objects: FinSet,
    weights: Vec<Elem>,
}

/// Checks the unit and composition laws of an endo-matrix.
pub fn verify_category(m: &VMatrix) -> Result<Report> {
    if !m.is_endo() {
        return Err(Error::Validation(format!(
            "category needs an endo-matrix, got {}⇸{}",
            m.src().name(),
            m.tgt().name()
        )));
    }
    let q = m.quantale();
    let x = m.src();
    let n = x.len();
    let mut r = Report::new("category");
    for a in 0..n {
        if !q.leq(q.unit(), m.get(a, a)) {
            r.push_once("unit", || vec![x.label(a).to_string()]);
        }
    }
    'comp: for z in 0..n {
        for y in 0..n {
            let zy = m.get(z, y);
            for xx in 0..n {
                if !q.leq(q.tensor(zy, m.get(y, xx)), m.get(z, xx)) {
                    r.push(
                        "composition",
                        vec![x.label(z).into(), x.label(y).into(), x.label(xx).into()],
                    );
                    break 'comp;
                }
            }
        }
    }
    Ok(r)
}

/// Checks `c_z ≤ e` and `c_z ≤ c_z ⊗ c_z`.
pub fn verify_cocategory(q: &Quantale, objects: &FinSet, weights: &[Elem]) -> Result<Report> {
    if weights.len() != objects.len() {
        return Err(Error::Validation(format!(
            "cocategory on {} needs {} weights, got {}",
            objects.name(),
            objects.len(),
            weights.len()
        )));
    }
    let mut r = Report::new("cocategory");
    for (z, &c) in weights.iter().enumerate() {
        if !q.leq(c, q.unit()) {
            r.push_once("counit", || vec![objects.label(z).into(), q.label(c).into()]);
        }
        if !q.leq(c, q.tensor(c, c)) {
            r.push_once("idempotence", || vec![objects.label(z).into(), q.label(c).into()]);
        }
    }
    Ok(r)
}

impl QCategory {
    pub fn new(hom: VMatrix) -> Result<Self> {
        let report = verify_category(&hom)?;
        if report.is_pass() {
            Ok(QCategory { hom })
        } else {
            Err(Error::Law(report))
        }
    }

    /// Wraps a matrix already known to satisfy the laws.
    pub(crate) fn trusted(hom: VMatrix) -> Self {
        debug_assert!(verify_category(&hom).map(|r| r.is_pass()).unwrap_or(false));
        QCategory { hom }
    }

    pub fn discrete(q: &Arc<Quantale>, x: &FinSet) -> Self {
        QCategory {
            hom: VMatrix::identity(q, x),
        }
    }

    /// The monoidal unit: one object, hom `e`.
    pub fn unit(q: &Arc<Quantale>) -> Self {
        Self::discrete(q, &FinSet::singleton("I"))
    }

    /// One object with hom `⊤`; terminal among categories.
    pub fn terminal(q: &Arc<Quantale>) -> Self {
        let one = FinSet::singleton("1");
        QCategory {
            hom: VMatrix::constant(q, &one, &one, q.top()),
        }
    }

    pub fn hom(&self) -> &VMatrix {
        &self.hom
    }

    pub fn objects(&self) -> &FinSet {
        self.hom.src()
    }

    pub fn quantale(&self) -> &Arc<Quantale> {
        self.hom.quantale()
    }

    #[inline]
    pub fn get(&self, y: usize, x: usize) -> Elem {
        self.hom.get(y, x)
    }
}

impl QCocategory {
    pub fn new(q: Arc<Quantale>, objects: FinSet, weights: Vec<Elem>) -> Result<Self> {
        let report = verify_cocategory(&q, &objects, &weights)?;
        if report.is_pass() {
            Ok(QCocategory { q, objects, weights })
        } else {
            Err(Error::Law(report))
        }
    }

    pub(crate) fn trusted(q: Arc<Quantale>, objects: FinSet, weights: Vec<Elem>) -> Self {
        debug_assert!(verify_cocategory(&q, &objects, &weights).map(|r| r.is_pass()).unwrap_or(false));
        QCocategory { q, objects, weights }
    }

    /// Reads a full comonad matrix, rejecting it unless it is diagonal.
    pub fn from_matrix(m: &VMatrix) -> Result<Self> {
        if !m.is_endo() {
            return Err(Error::Validation("cocategory needs an endo-matrix".into()));
        }
        let q = m.quantale();
        let z = m.src();
        for a in 0..z.len() {
            for b in 0..z.len() {
                if a != b && m.get(a, b) != q.bottom() {
                    let mut r = Report::new("cocategory");
                    r.push("counit", vec![z.label(a).into(), z.label(b).into()]);
                    return Err(Error::Law(r));
                }
            }
        }
        Self::new(q.clone(), z.clone(), (0..z.len()).map(|a| m.get(a, a)).collect())
    }

    /// One object with weight `e`.
    pub fn unit(q: &Arc<Quantale>) -> Self {
        QCocategory {
            q: q.clone(),
            objects: FinSet::singleton("I"),
            weights: vec![q.unit()],
        }
    }

    pub fn quantale(&self) -> &Arc<Quantale> {
        &self.q
    }

    pub fn objects(&self) -> &FinSet {
        &self.objects
    }

    pub fn weights(&self) -> &[Elem] {
        &self.weights
    }

    #[inline]
    pub fn weight(&self, z: usize) -> Elem {
        self.weights[z]
    }

    /// The diagonal comonad matrix.
    pub fn to_matrix(&self) -> VMatrix {
        let bot = self.q.bottom();
        VMatrix::from_fn(&self.q, &self.objects, &self.objects, |a, b| {
            if a == b {
                self.weights[a]
            } else {
                bot
            }
        })
    }
}

/// Structures with a notion of morphism over a function of objects.
pub trait Structure {
    fn objects(&self) -> &FinSet;

    /// Whether `f` underlies a morphism `self → other`.
    fn morphism_to(&self, f: &FinFn, other: &Self) -> Result<bool>;
}

fn check_fn(f: &FinFn, dom: &FinSet, cod: &FinSet) -> Result<()> {
    if f.dom() != dom || f.cod() != cod {
        return Err(Error::Typing(format!(
            "function {}→{} does not match objects {} and {}",
            f.dom().name(),
            f.cod().name(),
            dom.name(),
            cod.name()
        )));
    }
    Ok(())
}

impl Structure for QCategory {
    fn objects(&self) -> &FinSet {
        QCategory::objects(self)
    }

    /// Functor condition `A(x,x') ≤ B(f x, f x')`.
    fn morphism_to(&self, f: &FinFn, other: &Self) -> Result<bool> {
        check_fn(f, self.objects(), other.objects())?;
        let q = self.quantale();
        let n = self.objects().len();
        Ok((0..n).all(|a| (0..n).all(|b| q.leq(self.get(a, b), other.get(f.apply(a), f.apply(b))))))
    }
}

impl Structure for QCocategory {
    fn objects(&self) -> &FinSet {
        &self.objects
    }

    /// Cofunctor condition `c_z ≤ d_{f z}`.
    fn morphism_to(&self, f: &FinFn, other: &Self) -> Result<bool> {
        check_fn(f, &self.objects, &other.objects)?;
        Ok((0..self.objects.len()).all(|z| self.q.leq(self.weights[z], other.weights[f.apply(z)])))
    }
}

pub fn morphism_check<S: Structure>(f: &FinFn, src: &S, tgt: &S) -> Result<bool> {
    src.morphism_to(f, tgt)
}

/// Cartesian lifting of `f: X → Y` to `B`: `hom(x,x') = B(f x, f x')`.
pub fn pullback_category(f: &FinFn, b: &QCategory) -> Result<QCategory> {
    if f.cod() != b.objects() {
        return Err(Error::Typing("pullback along a function not landing in the objects".into()));
    }
    let hom = VMatrix::from_fn(b.quantale(), f.dom(), f.dom(), |x, xp| b.get(f.apply(x), f.apply(xp)));
    Ok(QCategory::trusted(hom))
}

/// Cocartesian lifting of `f: Z → V` to `C`: `d_v = ⋁_{f z = v} c_z`.
pub fn pushforward_cocategory(f: &FinFn, c: &QCocategory) -> Result<QCocategory> {
    if f.dom() != c.objects() {
        return Err(Error::Typing("pushforward along a function not leaving the objects".into()));
    }
    let q = &c.q;
    let mut w = vec![q.bottom(); f.cod().len()];
    for z in 0..f.dom().len() {
        let v = f.apply(z);
        w[v] = q.join(w[v], c.weights[z]);
    }
    Ok(QCocategory::trusted(q.clone(), f.cod().clone(), w))
}

/// `(A⊗B)((x,z),(x',z')) = A(x,x') ⊗ B(z,z')`.
pub fn tensor_categories(a: &QCategory, b: &QCategory) -> Result<QCategory> {
    QCategory::new(crate::vmat::tensor_matrices(a.hom(), b.hom())?)
}

/// Weight `(z,w) ↦ c_z ⊗ d_w`.
pub fn tensor_cocategories(c: &QCocategory, d: &QCocategory) -> Result<QCocategory> {
    if !same_quantale(&c.q, &d.q) {
        return Err(Error::Composition("cocategories over different quantales".into()));
    }
    let objects = c.objects.product(&d.objects);
    let mut w = Vec::with_capacity(objects.len());
    for &a in &c.weights {
        for &b in &d.weights {
            w.push(c.q.tensor(a, b));
        }
    }
    QCocategory::new(c.q.clone(), objects, w)
}

/// Least category above an endo-matrix, by joining in squares until stable.
/// Returns the closure and the number of squaring rounds that changed it.
pub fn star_closure(g: &VMatrix) -> Result<(QCategory, usize)> {
    if !g.is_endo() {
        return Err(Error::Validation(format!(
            "star closure needs an endo-matrix, got {}⇸{}",
            g.src().name(),
            g.tgt().name()
        )));
    }
    let mut t = g.join(&VMatrix::identity(g.quantale(), g.src()))?;
    let mut rounds = 0;
    loop {
        let next = t.join(&crate::vmat::hcompose(&t, &t)?)?;
        if next == t {
            break;
        }
        t = next;
        rounds += 1;
    }
    Ok((QCategory::trusted(t), rounds))
}

/// Product of categories: entrywise meet on the product carrier.
pub fn product_categories(a: &QCategory, b: &QCategory) -> Result<QCategory> {
    if !same_quantale(a.quantale(), b.quantale()) {
        return Err(Error::Composition("categories over different quantales".into()));
    }
    let q = a.quantale();
    let x = a.objects().product(b.objects());
    let nb = b.objects().len();
    QCategory::new(VMatrix::from_fn(q, &x, &x, |i, j| {
        q.meet(a.get(i / nb, j / nb), b.get(i % nb, j % nb))
    }))
}

/// Coproduct of cocategories: weight families side by side on the disjoint union.
pub fn coproduct_cocategories(c: &QCocategory, d: &QCocategory) -> Result<QCocategory> {
    if !same_quantale(&c.q, &d.q) {
        return Err(Error::Composition("cocategories over different quantales".into()));
    }
    let (objects, _) = FinSet::coproduct(&[c.objects.clone(), d.objects.clone()]);
    let weights = c.weights.iter().chain(&d.weights).copied().collect();
    QCocategory::new(c.q.clone(), objects, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vmat::{companion_conjoint, hcompose};

    fn set(name: &str, elems: &[&str]) -> FinSet {
        FinSet::new(name, elems.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn mat(q: &Arc<Quantale>, src: &FinSet, tgt: &FinSet, vals: &[&str]) -> VMatrix {
        VMatrix::new(
            q.clone(),
            src.clone(),
            tgt.clone(),
            vals.iter().map(|v| q.lookup(v).unwrap()).collect(),
        )
        .unwrap()
    }

    fn chain2(q: &Arc<Quantale>) -> QCategory {
        // hom(target, source): 0 ≤ 1 means hom(1, 0) = ⊤
        let x = set("C", &["0", "1"]);
        QCategory::new(mat(q, &x, &x, &["1", "0", "1", "1"])).unwrap()
    }

    #[test]
    fn discrete_is_a_category() {
        let q = Arc::new(Quantale::godel(3).unwrap());
        let x = set("X", &["a", "b", "c"]);
        assert!(verify_category(&VMatrix::identity(&q, &x)).unwrap().is_pass());
    }

    #[test]
    fn missing_reflexivity_is_witnessed() {
        let q = Arc::new(Quantale::bool());
        let x = set("X", &["a", "b"]);
        let r = verify_category(&mat(&q, &x, &x, &["0", "0", "1", "0"])).unwrap();
        assert!(r.violates("unit"));
        assert_eq!(r.violations[0].witness, vec!["a".to_string()]);
    }

    #[test]
    fn non_endo_rejected() {
        let q = Arc::new(Quantale::bool());
        let m = VMatrix::identity(&q, &set("X", &["a"]));
        let other = VMatrix::constant(&q, m.src(), &set("Y", &["b", "c"]), q.bottom());
        assert!(verify_category(&other).is_err());
    }

    #[test]
    fn cocategory_examples() {
        let b = Arc::new(Quantale::bool());
        let z = set("Z", &["a", "b"]);
        for w in [[0u8, 0], [0, 1], [1, 0], [1, 1]] {
            let ws = w.iter().map(|&i| Elem(i)).collect();
            assert!(QCocategory::new(b.clone(), z.clone(), ws).is_ok());
        }
        let l = Arc::new(Quantale::lukasiewicz(3).unwrap());
        let one = set("1", &["z"]);
        let err = QCocategory::new(l.clone(), one, vec![l.lookup("1/2").unwrap()]).unwrap_err();
        match err {
            Error::Law(r) => assert!(r.violates("idempotence")),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn off_diagonal_comonad_rejected() {
        let b = Arc::new(Quantale::bool());
        let z = set("Z", &["a", "b"]);
        assert!(QCocategory::from_matrix(&mat(&b, &z, &z, &["1", "1", "0", "0"])).is_err());
        let c = QCocategory::from_matrix(&mat(&b, &z, &z, &["1", "0", "0", "0"])).unwrap();
        assert_eq!(c.weights(), &[b.top(), b.bottom()]);
    }

    #[test]
    fn functor_checks() {
        let b = Arc::new(Quantale::bool());
        let c = chain2(&b);
        let id = FinFn::identity(c.objects());
        assert!(morphism_check(&id, &c, &c).unwrap());
        let swap = FinFn::new(c.objects().clone(), c.objects().clone(), vec![1, 0]).unwrap();
        assert!(!morphism_check(&swap, &c, &c).unwrap());

        let z = set("Z", &["a", "b"]);
        let small = QCocategory::new(b.clone(), z.clone(), vec![b.top(), b.bottom()]).unwrap();
        let big = QCocategory::new(b.clone(), z.clone(), vec![b.top(), b.top()]).unwrap();
        assert!(morphism_check(&FinFn::identity(&z), &small, &big).unwrap());
        assert!(!morphism_check(&FinFn::identity(&z), &big, &small).unwrap());
    }

    #[test]
    fn pullback_matches_companion_route() {
        let g = Arc::new(Quantale::godel(3).unwrap());
        let y = set("Y", &["p", "q"]);
        let bcat = QCategory::new(mat(&g, &y, &y, &["1", "1/2", "0", "1"])).unwrap();
        let x = set("X", &["a", "b", "c"]);
        let f = FinFn::new(x.clone(), y.clone(), vec![1, 0, 1]).unwrap();
        let pb = pullback_category(&f, &bcat).unwrap();
        let (lower, upper) = companion_conjoint(&g, &f);
        let route = hcompose(&upper, &hcompose(bcat.hom(), &lower).unwrap()).unwrap();
        assert_eq!(*pb.hom(), route);
        assert!(verify_category(pb.hom()).unwrap().is_pass());

        let c = FinFn::constant(&x, &y, 0).unwrap();
        let pc = pullback_category(&c, &bcat).unwrap();
        assert!(pc.hom().entries().iter().all(|&e| e == bcat.get(0, 0)));
        assert_eq!(pullback_category(&FinFn::identity(&y), &bcat).unwrap(), bcat);
    }

    #[test]
    fn pushforward_examples() {
        let b = Arc::new(Quantale::bool());
        let z = set("Z", &["a", "b", "c"]);
        let c = QCocategory::new(b.clone(), z.clone(), vec![b.bottom(), b.top(), b.bottom()]).unwrap();
        let pt = set("P", &["*"]);
        let d = pushforward_cocategory(&FinFn::constant(&z, &pt, 0).unwrap(), &c).unwrap();
        assert_eq!(d.weights(), &[b.top()]);
        let two = set("V", &["u", "v"]);
        let d = pushforward_cocategory(&FinFn::constant(&z, &two, 0).unwrap(), &c).unwrap();
        assert_eq!(d.weights(), &[b.top(), b.bottom()]);
        assert_eq!(pushforward_cocategory(&FinFn::identity(&z), &c).unwrap(), c);
    }

    #[test]
    fn tensor_pairs() {
        let b = Arc::new(Quantale::bool());
        let c = chain2(&b);
        let unit = QCategory::unit(&b);
        let cu = tensor_categories(&c, &unit).unwrap();
        assert_eq!(cu.hom().entries(), c.hom().entries());
        let cc = tensor_categories(&c, &c).unwrap();
        // componentwise order on pairs
        for i in 0..4 {
            for j in 0..4 {
                let expect = c.get(i / 2, j / 2) == b.top() && c.get(i % 2, j % 2) == b.top();
                assert_eq!(cc.get(i, j) == b.top(), expect);
            }
        }
        let l = Arc::new(Quantale::lukasiewicz(3).unwrap());
        let one = set("1", &["*"]);
        let c1 = QCocategory::new(l.clone(), one.clone(), vec![l.top()]).unwrap();
        let c0 = QCocategory::new(l.clone(), one, vec![l.bottom()]).unwrap();
        assert_eq!(tensor_cocategories(&c1, &c0).unwrap().weights(), &[l.bottom()]);
    }

    #[test]
    fn star_examples() {
        let b = Arc::new(Quantale::bool());
        let x = set("X", &["a", "b", "c"]);
        let zero = VMatrix::constant(&b, &x, &x, b.bottom());
        assert_eq!(*star_closure(&zero).unwrap().0.hom(), VMatrix::identity(&b, &x));
        // edge a→b is hom(b, a)
        let edge = zero.with_entry(1, 0, b.top());
        let (s, _) = star_closure(&edge).unwrap();
        assert_eq!(*s.hom(), VMatrix::identity(&b, &x).with_entry(1, 0, b.top()));
        let cycle = edge.with_entry(0, 1, b.top());
        let (s, _) = star_closure(&cycle).unwrap();
        let t = b.top();
        assert_eq!(
            *s.hom(),
            VMatrix::identity(&b, &x).with_entry(1, 0, t).with_entry(0, 1, t)
        );
        let rect = VMatrix::constant(&b, &x, &set("Y", &["p"]), b.top());
        assert!(star_closure(&rect).is_err());
    }

    #[test]
    fn limits() {
        let b = Arc::new(Quantale::bool());
        let c = chain2(&b);
        let p = product_categories(&c, &QCategory::terminal(&b)).unwrap();
        assert_eq!(p.hom().entries(), c.hom().entries());
        let pp = product_categories(&c, &c).unwrap();
        assert_eq!(pp, tensor_categories(&c, &c).unwrap());

        let z = set("Z", &["a", "b"]);
        let s1 = QCocategory::new(b.clone(), z.clone(), vec![b.top(), b.bottom()]).unwrap();
        let s2 = QCocategory::new(b.clone(), z, vec![b.bottom(), b.top()]).unwrap();
        let u = coproduct_cocategories(&s1, &s2).unwrap();
        assert_eq!(u.weights(), &[b.top(), b.bottom(), b.bottom(), b.top()]);
    }
}
