//! The double category of matrices over a quantale.
//!
//! Objects are finite sets, vertical arrows are functions, horizontal arrows
//! `X ⇸ Y` are [`VMatrix`] values indexed `(target, source)`, and 2-cells are
//! decided pointwise: since the quantale is a poset, a square either exists
//! (uniquely) or it does not, which [`Cell2::verdict`] records.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finset::{coequalize, FinFn, FinSet, FunctionSpace};
use crate::quantale::{Elem, Quantale};

/// Cap on materialized carriers (function sets and the matrices over them).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_entries: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_entries: 1_000_000,
        }
    }
}

impl Limits {
    pub fn check(&self, what: impl FnOnce() -> String, needed: Option<u128>) -> Result<()> {
        match needed {
            Some(n) if n <= self.max_entries as u128 => Ok(()),
            other => Err(Error::Resource {
                what: what(),
                needed: other.unwrap_or(u128::MAX),
                cap: self.max_entries,
            }),
        }
    }
}

pub(crate) fn same_quantale(a: &Arc<Quantale>, b: &Arc<Quantale>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A horizontal 1-cell `src ⇸ tgt`.
#[derive(Clone)]
pub struct VMatrix {
    q: Arc<Quantale>,
    src: FinSet,
    tgt: FinSet,
    entries: Vec<Elem>,
}

impl PartialEq for VMatrix {
    fn eq(&self, other: &Self) -> bool {
        same_quantale(&self.q, &other.q)
            && self.src == other.src
            && self.tgt == other.tgt
            && self.entries == other.entries
    }
}

impl Eq for VMatrix {}

impl fmt::Debug for VMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ⇸ {} over {}", self.src.name(), self.tgt.name(), self.q.name())?;
        for y in 0..self.tgt.len() {
            let row: Vec<&str> = (0..self.src.len())
                .map(|x| self.q.label(self.get(y, x)))
                .collect();
            writeln!(f, "  {}: {}", self.tgt.label(y), row.join(" "))?;
        }
        Ok(())
    }
}

impl VMatrix {
    pub fn new(q: Arc<Quantale>, src: FinSet, tgt: FinSet, entries: Vec<Elem>) -> Result<Self> {
        if entries.len() != src.len() * tgt.len() {
            return Err(Error::Validation(format!(
                "matrix {}⇸{} needs {} entries, got {}",
                src.name(),
                tgt.name(),
                src.len() * tgt.len(),
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.index() >= q.len()) {
            return Err(Error::Validation(format!(
                "entry {} is outside quantale {}",
                e.index(),
                q.name()
            )));
        }
        Ok(VMatrix {
            q,
            src,
            tgt,
            entries,
        })
    }

    pub fn from_fn(
        q: &Arc<Quantale>,
        src: &FinSet,
        tgt: &FinSet,
        mut f: impl FnMut(usize, usize) -> Elem,
    ) -> Self {
        let mut entries = Vec::with_capacity(src.len() * tgt.len());
        for y in 0..tgt.len() {
            for x in 0..src.len() {
                entries.push(f(y, x));
            }
        }
        VMatrix {
            q: q.clone(),
            src: src.clone(),
            tgt: tgt.clone(),
            entries,
        }
    }

    pub fn constant(q: &Arc<Quantale>, src: &FinSet, tgt: &FinSet, value: Elem) -> Self {
        Self::from_fn(q, src, tgt, |_, _| value)
    }

    /// `1_X`: unit on the diagonal, bottom elsewhere.
    pub fn identity(q: &Arc<Quantale>, x: &FinSet) -> Self {
        let (e, bot) = (q.unit(), q.bottom());
        Self::from_fn(q, x, x, |a, b| if a == b { e } else { bot })
    }

    pub fn quantale(&self) -> &Arc<Quantale> {
        &self.q
    }

    pub fn src(&self) -> &FinSet {
        &self.src
    }

    pub fn tgt(&self) -> &FinSet {
        &self.tgt
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn is_endo(&self) -> bool {
        self.src == self.tgt
    }

    /// Entry at `(target y, source x)`.
    #[inline]
    pub fn get(&self, y: usize, x: usize) -> Elem {
        self.entries[y * self.src.len() + x]
    }

    pub fn with_entry(&self, y: usize, x: usize, v: Elem) -> Self {
        let mut m = self.clone();
        let n = m.src.len();
        m.entries[y * n + x] = v;
        m
    }

    /// Same entries on equal-labelled carriers carrying other names.
    pub fn with_carriers(&self, src: &FinSet, tgt: &FinSet) -> Result<Self> {
        if *src != self.src || *tgt != self.tgt {
            return Err(Error::Typing("relabelling onto different carriers".into()));
        }
        Ok(VMatrix {
            q: self.q.clone(),
            src: src.clone(),
            tgt: tgt.clone(),
            entries: self.entries.clone(),
        })
    }

    fn same_shape(&self, other: &VMatrix) -> Result<()> {
        if !same_quantale(&self.q, &other.q) {
            return Err(Error::Composition("matrices over different quantales".into()));
        }
        if self.src != other.src || self.tgt != other.tgt {
            return Err(Error::Composition(format!(
                "matrices {}⇸{} and {}⇸{} are not parallel",
                self.src.name(),
                self.tgt.name(),
                other.src.name(),
                other.tgt.name()
            )));
        }
        Ok(())
    }

    /// Entrywise order.
    pub fn leq(&self, other: &VMatrix) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .all(|(&a, &b)| self.q.leq(a, b)))
    }

    pub fn join(&self, other: &VMatrix) -> Result<VMatrix> {
        self.same_shape(other)?;
        let mut m = self.clone();
        for (a, &b) in m.entries.iter_mut().zip(&other.entries) {
            *a = self.q.join(*a, b);
        }
        Ok(m)
    }

    /// Transpose `tgt ⇸ src`.
    pub fn transpose(&self) -> VMatrix {
        VMatrix::from_fn(&self.q, &self.tgt, &self.src, |x, y| self.get(y, x))
    }
}

/// `(T∘S)(z,x) = ⋁_y T(z,y) ⊗ S(y,x)`.
pub fn hcompose(t: &VMatrix, s: &VMatrix) -> Result<VMatrix> {
    if !same_quantale(&t.q, &s.q) {
        return Err(Error::Composition("matrices over different quantales".into()));
    }
    if s.tgt != t.src {
        return Err(Error::Composition(format!(
            "cannot compose {}⇸{} after {}⇸{}",
            t.src.name(),
            t.tgt.name(),
            s.src.name(),
            s.tgt.name()
        )));
    }
    let q = &t.q;
    let (nx, ny, nz) = (s.src.len(), s.tgt.len(), t.tgt.len());
    let mut entries = vec![q.bottom(); nz * nx];
    for z in 0..nz {
        for y in 0..ny {
            let tzy = t.entries[z * ny + y];
            if tzy == q.bottom() {
                continue;
            }
            for x in 0..nx {
                let e = &mut entries[z * nx + x];
                *e = q.join(*e, q.tensor(tzy, s.entries[y * nx + x]));
            }
        }
    }
    Ok(VMatrix {
        q: q.clone(),
        src: s.src.clone(),
        tgt: t.tgt.clone(),
        entries,
    })
}

/// `(S⊗T)((y,w),(x,z)) = S(y,x) ⊗ T(w,z)` on product carriers.
pub fn tensor_matrices(s: &VMatrix, t: &VMatrix) -> Result<VMatrix> {
    if !same_quantale(&s.q, &t.q) {
        return Err(Error::Composition("matrices over different quantales".into()));
    }
    let src = s.src.product(&t.src);
    let tgt = s.tgt.product(&t.tgt);
    let (nz, nw) = (t.src.len(), t.tgt.len());
    let q = &s.q;
    Ok(VMatrix::from_fn(q, &src, &tgt, |yw, xz| {
        let (y, w) = (yw / nw, yw % nw);
        let (x, z) = (xz / nz, xz % nz);
        q.tensor(s.get(y, x), t.get(w, z))
    }))
}

/// Companion `f_*: X ⇸ Y` and conjoint `f^*: Y ⇸ X` of `f: X → Y`.
pub fn companion_conjoint(q: &Arc<Quantale>, f: &FinFn) -> (VMatrix, VMatrix) {
    let (e, bot) = (q.unit(), q.bottom());
    let companion = VMatrix::from_fn(q, f.dom(), f.cod(), |y, x| if f.apply(x) == y { e } else { bot });
    let conjoint = companion.transpose();
    (companion, conjoint)
}

/// A candidate 2-cell `dom ⇒ cod` with left boundary `f` (sources) and right
/// boundary `g` (targets), together with its decided existence.
#[derive(Clone, Debug)]
pub struct Cell2 {
    pub f: FinFn,
    pub g: FinFn,
    pub dom: VMatrix,
    pub cod: VMatrix,
    pub verdict: bool,
    /// First `(y, x)` with `dom(y,x) ≰ cod(g y, f x)`.
    pub witness: Option<(usize, usize)>,
}

impl Cell2 {
    pub fn witness_labels(&self) -> Option<(String, String)> {
        self.witness.map(|(y, x)| {
            (
                self.dom.tgt().label(y).to_string(),
                self.dom.src().label(x).to_string(),
            )
        })
    }
}

/// Decides whether `dom(y,x) ≤ cod(g(y), f(x))` everywhere.
pub fn cell_check(f: &FinFn, g: &FinFn, dom: &VMatrix, cod: &VMatrix) -> Result<Cell2> {
    if !same_quantale(&dom.q, &cod.q) {
        return Err(Error::Typing("cell between matrices over different quantales".into()));
    }
    if *f.dom() != dom.src || *f.cod() != cod.src {
        return Err(Error::Typing(format!(
            "left boundary {}→{} does not match sources {} and {}",
            f.dom().name(),
            f.cod().name(),
            dom.src.name(),
            cod.src.name()
        )));
    }
    if *g.dom() != dom.tgt || *g.cod() != cod.tgt {
        return Err(Error::Typing(format!(
            "right boundary {}→{} does not match targets {} and {}",
            g.dom().name(),
            g.cod().name(),
            dom.tgt.name(),
            cod.tgt.name()
        )));
    }
    let q = &dom.q;
    let mut witness = None;
    'outer: for y in 0..dom.tgt.len() {
        for x in 0..dom.src.len() {
            if !q.leq(dom.get(y, x), cod.get(g.apply(y), f.apply(x))) {
                witness = Some((y, x));
                break 'outer;
            }
        }
    }
    Ok(Cell2 {
        f: f.clone(),
        g: g.clone(),
        dom: dom.clone(),
        cod: cod.clone(),
        verdict: witness.is_none(),
        witness,
    })
}

/// Globular cell `dom ⇒ cod` (identity boundaries).
pub fn globular_check(dom: &VMatrix, cod: &VMatrix) -> Result<Cell2> {
    cell_check(
        &FinFn::identity(&dom.src),
        &FinFn::identity(&dom.tgt),
        dom,
        &cod.with_carriers(&dom.src, &dom.tgt)?,
    )
}

/// The structure cells exhibiting `f_*` and `f^*` as companion and conjoint:
/// `p1: f_* ⇒ 1_Y`, `p2: 1_X ⇒ f_*`, `q1: f^* ⇒ 1_Y`, `q2: 1_X ⇒ f^*`,
/// followed by the globular unit `1_X ⇒ f^*∘f_*` and counit `f_*∘f^* ⇒ 1_Y`.
pub fn companion_cells(q: &Arc<Quantale>, f: &FinFn) -> Result<Vec<Cell2>> {
    let (x, y) = (f.dom(), f.cod());
    let (lower, upper) = companion_conjoint(q, f);
    let (idx, idy) = (FinFn::identity(x), FinFn::identity(y));
    let (one_x, one_y) = (VMatrix::identity(q, x), VMatrix::identity(q, y));
    Ok(vec![
        cell_check(f, &idy, &lower, &one_y)?,
        cell_check(&idx, f, &one_x, &lower)?,
        cell_check(&idy, f, &upper, &one_y)?,
        cell_check(f, &idx, &one_x, &upper)?,
        globular_check(&one_x, &hcompose(&upper, &lower)?)?,
        globular_check(&hcompose(&lower, &upper)?, &one_y)?,
    ])
}

/// `H(S,T): Z^X ⇸ W^Y` for `S: X ⇸ Y`, `T: Z ⇸ W`, with
/// `H(S,T)(m,n) = ⋀_{x,y} [S(y,x), T(m y, n x)]`.
pub fn internal_hom(s: &VMatrix, t: &VMatrix, limits: &Limits) -> Result<VMatrix> {
    if !same_quantale(&s.q, &t.q) {
        return Err(Error::Composition("matrices over different quantales".into()));
    }
    let (x, y, z, w) = (&s.src, &s.tgt, &t.src, &t.tgt);
    let needed = crate::finset::checked_size(w.len(), y.len())
        .zip(crate::finset::checked_size(z.len(), x.len()))
        .and_then(|(a, b)| a.checked_mul(b));
    limits.check(|| format!("internal hom {}^{} ⇸ {}^{}", w.name(), y.name(), z.name(), x.name()), needed)?;
    let src_space = FunctionSpace::new(x, z, limits.max_entries)?;
    let tgt_space = FunctionSpace::new(y, w, limits.max_entries)?;
    let q = &s.q;
    let ns: Vec<Vec<usize>> = (0..src_space.len()).map(|i| src_space.decode(i)).collect();
    Ok(VMatrix::from_fn(q, src_space.set(), tgt_space.set(), |mi, ni| {
        let m = tgt_space.decode(mi);
        let n = &ns[ni];
        let mut acc = q.top();
        for yy in 0..y.len() {
            for xx in 0..x.len() {
                acc = q.meet(acc, q.residuate(s.get(yy, xx), t.get(m[yy], n[xx])));
            }
        }
        acc
    }))
}

/// Exponential transpose of `φ: A×X → Z` to `A → Z^X`, as indices into the
/// function set.
pub(crate) fn curry_indices(phi: &FinFn, a: usize, x: usize, z: usize) -> Vec<usize> {
    (0..a)
        .map(|i| crate::finset::encode(&phi.map()[i * x..(i + 1) * x], z))
        .collect()
}

/// Checks the closed structure on one instance: a cell `R⊗S ⇒ T` over
/// `(φ, ψ)` exists exactly when a cell `R ⇒ H(S,T)` over the transposed
/// boundaries does. Returns the shared verdict.
pub fn hom_transpose_check(
    r: &VMatrix,
    s: &VMatrix,
    t: &VMatrix,
    phi: &FinFn,
    psi: &FinFn,
    limits: &Limits,
) -> Result<bool> {
    let rs = tensor_matrices(r, s)?;
    if *phi.dom() != rs.src || *phi.cod() != t.src {
        return Err(Error::Typing("φ must map A×X to the source of T".into()));
    }
    if *psi.dom() != rs.tgt || *psi.cod() != t.tgt {
        return Err(Error::Typing("ψ must map B×Y to the target of T".into()));
    }
    let direct = cell_check(phi, psi, &rs, t)?.verdict;

    let h = internal_hom(s, t, limits)?;
    let phi_t = FinFn::new(
        r.src.clone(),
        h.src.clone(),
        curry_indices(phi, r.src.len(), s.src.len(), t.src.len()),
    )?;
    let psi_t = FinFn::new(
        r.tgt.clone(),
        h.tgt.clone(),
        curry_indices(psi, r.tgt.len(), s.tgt.len(), t.tgt.len()),
    )?;
    let curried = cell_check(&phi_t, &psi_t, r, &h)?.verdict;
    if direct != curried {
        return Err(Error::Invariant(format!(
            "R⊗S ⇒ T gives {direct} but R ⇒ H(S,T) gives {curried}"
        )));
    }
    Ok(direct)
}

/// Block-diagonal coproduct with its injection cells.
pub fn coproduct_matrices(ms: &[VMatrix]) -> Result<(VMatrix, Vec<Cell2>)> {
    let Some(first) = ms.first() else {
        return Err(Error::Validation("coproduct of an empty family".into()));
    };
    let q = first.q.clone();
    if ms.iter().any(|m| !same_quantale(&m.q, &q)) {
        return Err(Error::Composition("matrices over different quantales".into()));
    }
    let srcs: Vec<FinSet> = ms.iter().map(|m| m.src.clone()).collect();
    let tgts: Vec<FinSet> = ms.iter().map(|m| m.tgt.clone()).collect();
    let (src, src_off) = FinSet::coproduct(&srcs);
    let (tgt, tgt_off) = FinSet::coproduct(&tgts);
    let block = |i: usize, off: &[usize], len: usize| {
        (0..ms.len()).find(|&k| i >= off[k] && i < off[k] + len_of(k, off, len))
    };
    fn len_of(k: usize, off: &[usize], total: usize) -> usize {
        off.get(k + 1).copied().unwrap_or(total) - off[k]
    }
    let bot = q.bottom();
    let m = VMatrix::from_fn(&q, &src, &tgt, |yi, xi| {
        match (block(yi, &tgt_off, tgt.len()), block(xi, &src_off, src.len())) {
            (Some(a), Some(b)) if a == b => ms[a].get(yi - tgt_off[a], xi - src_off[a]),
            _ => bot,
        }
    });
    let injections = ms
        .iter()
        .enumerate()
        .map(|(k, mk)| {
            let f = FinFn::new(mk.src.clone(), src.clone(), (0..mk.src.len()).map(|i| i + src_off[k]).collect())?;
            let g = FinFn::new(mk.tgt.clone(), tgt.clone(), (0..mk.tgt.len()).map(|i| i + tgt_off[k]).collect())?;
            cell_check(&f, &g, mk, &m)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((m, injections))
}

/// Coequalizer of two parallel cells `φ, ψ: A ⇒ B`: quotient both carriers of
/// `B` and join entries over the merged classes. Returns the quotient matrix
/// and the projection cell `B ⇒ C`.
pub fn coequalizer_matrices(phi: &Cell2, psi: &Cell2) -> Result<(VMatrix, Cell2)> {
    if phi.dom != psi.dom || phi.cod != psi.cod {
        return Err(Error::Typing("coequalizer needs parallel cells".into()));
    }
    if !phi.verdict || !psi.verdict {
        return Err(Error::Validation("coequalizer input is not a valid cell".into()));
    }
    let b = &phi.cod;
    let qs = coequalize(&phi.f, &psi.f)?;
    let qt = coequalize(&phi.g, &psi.g)?;
    let quant = b.q.clone();
    let mut c = VMatrix::constant(&quant, qs.cod(), qt.cod(), quant.bottom());
    let n = qs.cod().len();
    for yy in 0..b.tgt.len() {
        for xx in 0..b.src.len() {
            let at = qt.apply(yy) * n + qs.apply(xx);
            c.entries[at] = quant.join(c.entries[at], b.get(yy, xx));
        }
    }
    let projection = cell_check(&qs, &qt, b, &c)?;
    Ok((c, projection))
}

/// Colimit of a discrete family `M_i: X_i ⇸ Y` in the fiber over `Y`:
/// `C(y,x) = ⋁_i ⋁_{q_i(x_i)=x} M_i(y,x_i)`. With `legs = None` the legs are
/// the coproduct injections into `⊔X_i`; otherwise each `q_i: X_i → X` is
/// given and images may overlap. Returns the colimit and its cocone cells.
pub fn fiber_colimit(family: &[VMatrix], legs: Option<&[FinFn]>) -> Result<(VMatrix, Vec<Cell2>)> {
    let Some(first) = family.first() else {
        return Err(Error::Validation("colimit of an empty family".into()));
    };
    let y = first.tgt.clone();
    let q = first.q.clone();
    for m in family {
        if m.tgt != y {
            return Err(Error::Composition(format!(
                "family member {}⇸{} does not land in {}",
                m.src.name(),
                m.tgt.name(),
                y.name()
            )));
        }
        if !same_quantale(&m.q, &q) {
            return Err(Error::Composition("matrices over different quantales".into()));
        }
    }
    let owned;
    let legs = match legs {
        Some(l) => {
            if l.len() != family.len() {
                return Err(Error::Validation("one leg per family member is required".into()));
            }
            let apex = l[0].cod();
            for (m, leg) in family.iter().zip(l) {
                if *leg.dom() != m.src || leg.cod() != apex {
                    return Err(Error::Typing("cocone legs must share a codomain".into()));
                }
            }
            l
        }
        None => {
            let srcs: Vec<FinSet> = family.iter().map(|m| m.src.clone()).collect();
            let (apex, off) = FinSet::coproduct(&srcs);
            owned = family
                .iter()
                .zip(off)
                .map(|(m, o)| FinFn::new(m.src.clone(), apex.clone(), (0..m.src.len()).map(|i| i + o).collect()))
                .collect::<Result<Vec<_>>>()?;
            &owned[..]
        }
    };
    let apex = legs[0].cod().clone();
    let mut c = VMatrix::constant(&q, &apex, &y, q.bottom());
    let nx = apex.len();
    for (m, leg) in family.iter().zip(legs) {
        for yy in 0..y.len() {
            for xi in 0..m.src.len() {
                let at = yy * nx + leg.apply(xi);
                c.entries[at] = q.join(c.entries[at], m.get(yy, xi));
            }
        }
    }
    let idy = FinFn::identity(&y);
    let cocone = family
        .iter()
        .zip(legs)
        .map(|(m, leg)| cell_check(leg, &idy, m, &c))
        .collect::<Result<Vec<_>>>()?;
    Ok((c, cocone))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(qu: Quantale) -> Arc<Quantale> {
        Arc::new(qu)
    }

    fn set(name: &str, elems: &[&str]) -> FinSet {
        FinSet::new(name, elems.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn mat(qu: &Arc<Quantale>, src: &FinSet, tgt: &FinSet, vals: &[&str]) -> VMatrix {
        let entries = vals.iter().map(|v| qu.lookup(v).unwrap()).collect();
        VMatrix::new(qu.clone(), src.clone(), tgt.clone(), entries).unwrap()
    }

    #[test]
    fn compose_with_identity() {
        let b = q(Quantale::godel(3).unwrap());
        let x = set("X", &["a", "b"]);
        let y = set("Y", &["c", "d", "e"]);
        let s = mat(&b, &x, &y, &["0", "1/2", "1", "0", "1/2", "1/2"]);
        assert_eq!(hcompose(&VMatrix::identity(&b, &y), &s).unwrap(), s);
        assert_eq!(hcompose(&s, &VMatrix::identity(&b, &x)).unwrap(), s);
    }

    #[test]
    fn bool_composition_can_be_empty() {
        let b = q(Quantale::bool());
        let x = set("X", &["x"]);
        let y = set("Y", &["y1", "y2"]);
        let z = set("Z", &["z"]);
        let s = mat(&b, &x, &y, &["1", "0"]);
        let t = mat(&b, &y, &z, &["0", "1"]);
        let ts = hcompose(&t, &s).unwrap();
        assert_eq!(ts.entries(), &[b.bottom()]);
    }

    #[test]
    fn godel_composition_value() {
        let g = q(Quantale::godel(3).unwrap());
        let x = set("X", &["x"]);
        let y = set("Y", &["y1", "y2"]);
        let z = set("Z", &["z"]);
        let s = mat(&g, &x, &y, &["1/2", "1"]);
        let t = mat(&g, &y, &z, &["1", "1/2"]);
        assert_eq!(g.label(hcompose(&t, &s).unwrap().get(0, 0)), "1/2");
    }

    #[test]
    fn mismatched_composition() {
        let b = q(Quantale::bool());
        let x = set("X", &["x"]);
        let y = set("Y", &["y1", "y2"]);
        let s = VMatrix::identity(&b, &x);
        let t = VMatrix::identity(&b, &y);
        assert!(matches!(hcompose(&t, &s), Err(Error::Composition(_))));
    }

    #[test]
    fn identity_is_equality_relation() {
        let b = q(Quantale::bool());
        let x = set("X", &["a", "b"]);
        let id = VMatrix::identity(&b, &x);
        assert_eq!(id.entries(), &[b.top(), b.bottom(), b.bottom(), b.top()]);
        let l = q(Quantale::lukasiewicz(3).unwrap());
        let one = set("1", &["*"]);
        assert_eq!(VMatrix::identity(&l, &one).entries(), &[l.top()]);
    }

    #[test]
    fn tensor_with_unit_is_copy() {
        let g = q(Quantale::godel(3).unwrap());
        let x = set("X", &["a", "b"]);
        let y = set("Y", &["c"]);
        let s = mat(&g, &x, &y, &["1/2", "1"]);
        let unit = VMatrix::identity(&g, &FinSet::singleton("I"));
        let st = tensor_matrices(&s, &unit).unwrap();
        assert_eq!(st.entries(), s.entries());
        assert_eq!(st.src().labels(), &["(a,*)".to_string(), "(b,*)".to_string()]);
    }

    #[test]
    fn companion_of_identity_and_constant() {
        let b = q(Quantale::bool());
        let x = set("X", &["a", "b"]);
        let (lo, up) = companion_conjoint(&b, &FinFn::identity(&x));
        assert_eq!(lo, VMatrix::identity(&b, &x));
        assert_eq!(up, VMatrix::identity(&b, &x));
        let y = set("Y", &["c", "d"]);
        let f = FinFn::constant(&x, &y, 1).unwrap();
        let (lo, _) = companion_conjoint(&b, &f);
        for yy in 0..2 {
            for xx in 0..2 {
                assert_eq!(lo.get(yy, xx) == b.top(), yy == 1);
            }
        }
    }

    #[test]
    fn companion_zigzags_on_all_bool_functions() {
        let b = q(Quantale::bool());
        let x = set("X", &["a", "b"]);
        let y = set("Y", &["c", "d"]);
        let space = FunctionSpace::new(&x, &y, 100).unwrap();
        for i in 0..space.len() {
            for cell in companion_cells(&b, &space.function(i)).unwrap() {
                assert!(cell.verdict);
            }
        }
    }

    #[test]
    fn cell_check_verdicts() {
        let g = q(Quantale::godel(3).unwrap());
        let x = set("X", &["x"]);
        let lo = mat(&g, &x, &x, &["1/2"]);
        let hi = mat(&g, &x, &x, &["1"]);
        let id = FinFn::identity(&x);
        assert!(cell_check(&id, &id, &lo, &hi).unwrap().verdict);
        let back = cell_check(&id, &id, &hi, &lo).unwrap();
        assert!(!back.verdict);
        assert_eq!(back.witness_labels(), Some(("x".into(), "x".into())));

        let b = q(Quantale::bool());
        let full = mat(&b, &x, &x, &["1"]);
        let empty = mat(&b, &x, &x, &["0"]);
        let c = cell_check(&id, &id, &full, &empty).unwrap();
        assert_eq!(c.witness, Some((0, 0)));
        let two = set("Y", &["p", "q"]);
        assert!(matches!(
            cell_check(&FinFn::identity(&two), &id, &full, &empty),
            Err(Error::Typing(_))
        ));
    }

    #[test]
    fn internal_hom_examples() {
        let l = q(Quantale::lukasiewicz(3).unwrap());
        let one = set("1", &["*"]);
        let s = mat(&l, &one, &one, &["1/2"]);
        let t = mat(&l, &one, &one, &["0"]);
        let h = internal_hom(&s, &t, &Limits::default()).unwrap();
        assert_eq!(h.entries().len(), 1);
        assert_eq!(l.label(h.get(0, 0)), "1/2");

        let b = q(Quantale::bool());
        let x = set("X", &["a", "b"]);
        let empty = VMatrix::constant(&b, &x, &x, b.bottom());
        let any = VMatrix::identity(&b, &x);
        let h = internal_hom(&empty, &any, &Limits::default()).unwrap();
        assert!(h.entries().iter().all(|&e| e == b.top()));
        assert_eq!(h.src().len(), 4);
    }

    #[test]
    fn internal_hom_respects_cap() {
        let b = q(Quantale::bool());
        let x = FinSet::numbered("X", 5);
        let m = VMatrix::identity(&b, &x);
        let err = internal_hom(&m, &m, &Limits { max_entries: 1000 }).unwrap_err();
        assert!(matches!(err, Error::Resource { .. }));
    }

    #[test]
    fn coproduct_is_block_diagonal() {
        let g = q(Quantale::godel(3).unwrap());
        let one = set("1", &["*"]);
        let a = mat(&g, &one, &one, &["1/2"]);
        let b = mat(&g, &one, &one, &["1"]);
        let (c, inj) = coproduct_matrices(&[a.clone(), b]).unwrap();
        let lab: Vec<&str> = c.entries().iter().map(|&e| g.label(e)).collect();
        assert_eq!(lab, ["1/2", "0", "0", "1"]);
        assert_eq!(c.src().labels(), &["inl:*".to_string(), "inr:*".to_string()]);
        assert!(inj.iter().all(|c| c.verdict));
        let (single, _) = coproduct_matrices(std::slice::from_ref(&a)).unwrap();
        assert_eq!(single.entries(), a.entries());
    }

    #[test]
    fn coequalizer_of_equal_cells_is_identity() {
        let b = q(Quantale::bool());
        let x = set("X", &["a", "b"]);
        let m = mat(&b, &x, &x, &["1", "0", "1", "1"]);
        let id = FinFn::identity(&x);
        let cell = cell_check(&id, &id, &m, &m).unwrap();
        let (c, proj) = coequalizer_matrices(&cell, &cell).unwrap();
        assert_eq!(c.entries(), m.entries());
        assert!(proj.verdict);
    }

    #[test]
    fn coequalizer_merges_source_points() {
        let b = q(Quantale::bool());
        let one = set("1", &["*"]);
        let x = set("X", &["a", "b"]);
        let y = set("Y", &["u", "v"]);
        // B: X ⇸ Y, merge a and b on the source side
        let big = mat(&b, &x, &y, &["1", "0", "0", "1"]);
        let small = VMatrix::constant(&b, &one, &one, b.bottom());
        let fa = FinFn::constant(&one, &x, 0).unwrap();
        let fb = FinFn::constant(&one, &x, 1).unwrap();
        let g = FinFn::constant(&one, &y, 0).unwrap();
        let phi = cell_check(&fa, &g, &small, &big).unwrap();
        let psi = cell_check(&fb, &g, &small, &big).unwrap();
        let (c, proj) = coequalizer_matrices(&phi, &psi).unwrap();
        assert_eq!(c.src().labels(), &["[a,b]".to_string()]);
        assert_eq!(c.entries(), &[b.top(), b.top()]);
        assert!(proj.verdict);
    }

    #[test]
    fn coequalizer_with_empty_source() {
        let b = q(Quantale::bool());
        let empty = FinSet::numbered("E", 0);
        let x = set("X", &["a", "b"]);
        let m = mat(&b, &x, &x, &["1", "1", "0", "1"]);
        let none = VMatrix::constant(&b, &empty, &empty, b.bottom());
        let f = FinFn::new(empty.clone(), x.clone(), vec![]).unwrap();
        let cell = cell_check(&f, &f, &none, &m).unwrap();
        let (c, _) = coequalizer_matrices(&cell, &cell).unwrap();
        assert_eq!(c.entries(), m.entries());
    }

    #[test]
    fn fiber_colimit_examples() {
        let b = q(Quantale::bool());
        let y = set("Y", &["p", "q"]);
        let x1 = set("X1", &["a"]);
        let x2 = set("X2", &["b"]);
        let m1 = mat(&b, &x1, &y, &["1", "0"]);
        let m2 = mat(&b, &x2, &y, &["0", "1"]);
        let (c, cocone) = fiber_colimit(&[m1.clone(), m2.clone()], None).unwrap();
        assert_eq!(c.entries(), &[b.top(), b.bottom(), b.bottom(), b.top()]);
        assert!(cocone.iter().all(|c| c.verdict));
        let (copy, _) = fiber_colimit(std::slice::from_ref(&m1), None).unwrap();
        assert_eq!(copy.entries(), m1.entries());

        let g = q(Quantale::godel(3).unwrap());
        let apex = set("X", &["x"]);
        let n1 = mat(&g, &x1, &y, &["1/2", "0"]);
        let n2 = mat(&g, &x2, &y, &["0", "1/2"]);
        let n3 = mat(&g, &x1, &y, &["1", "0"]);
        let legs: Vec<FinFn> = [&x1, &x2, &x1]
            .iter()
            .map(|s| FinFn::constant(s, &apex, 0).unwrap())
            .collect();
        let (c, _) = fiber_colimit(&[n1, n2, n3], Some(&legs)).unwrap();
        let lab: Vec<&str> = c.entries().iter().map(|&e| g.label(e)).collect();
        assert_eq!(lab, ["1", "1/2"]);

        let other = set("W", &["w"]);
        let bad = VMatrix::identity(&b, &other);
        assert!(matches!(fiber_colimit(&[m1, bad], None), Err(Error::Composition(_))));
    }
}
