//! Measuring cocategories and comodules, and the tensors that make
//! categories enriched in cocategories and modules enriched in comodules.
//!
//! `measure_p(A, B)` is the universal cocategory on `Y^X` measuring `A` into
//! `B`, and `comeasure_q(M, N)` the matching comodule on `T^U ⇸ Y^X`. Both are
//! computed indexwise as greatest fixpoints. `tensor_cat` and `tensor_mod`
//! are their left partners, built by star closure and free modules. The
//! `verify_*` functions decide the adjunction correspondences exhaustively
//! on small carriers.

use serde::Serialize;

use crate::cat::{star_closure, tensor_cocategories, QCategory, QCocategory};
use crate::conv::{convolution_category, convolution_module};
use crate::error::{Error, Result};
use crate::finset::{checked_size, decode_into, FinSet, FunctionSpace};
use crate::lawcheck::enumerate::{carrier, categories, cocategories, comodules, modules, Budget};
use crate::module::{free_module, QComodule, QModule};
use crate::quantale::{Elem, Quantale};
use crate::report::Report;
use crate::vmat::{internal_hom, same_quantale, tensor_matrices, Limits, VMatrix};

/// Output of a measuring operator with its fixpoint trace.
#[derive(Clone, Debug)]
pub struct MeasuringReport<T> {
    pub operator: &'static str,
    pub inputs: Vec<String>,
    pub output: T,
    /// Per-index iteration counts: gfp steps, or squaring rounds for a star.
    pub trace: Vec<usize>,
    pub adjunctions: Option<AdjunctionReport>,
}

impl<T> MeasuringReport<T> {
    pub fn max_steps(&self) -> usize {
        self.trace.iter().copied().max().unwrap_or(0)
    }
}

fn space(dom: &FinSet, cod: &FinSet, limits: &Limits) -> Result<FunctionSpace> {
    limits.check(
        || format!("function set {}^{}", cod.name(), dom.name()),
        checked_size(cod.len(), dom.len()),
    )?;
    FunctionSpace::new(dom, cod, limits.max_entries)
}

fn decoded(s: &FunctionSpace) -> Vec<Vec<usize>> {
    (0..s.len()).map(|i| s.decode(i)).collect()
}

/// `m_k = ⋀_{x,x'} [A(x,x'), B(k x, k x')]`: the largest `q` with
/// `q ⊗ A(x,x') ≤ B(k x, k x')` everywhere.
pub fn measuring_bounds(a: &QCategory, b: &QCategory, limits: &Limits) -> Result<Vec<Elem>> {
    if !same_quantale(a.quantale(), b.quantale()) {
        return Err(Error::Composition("categories over different quantales".into()));
    }
    let q = a.quantale();
    let yx = space(a.objects(), b.objects(), limits)?;
    let n = a.objects().len();
    Ok((0..yx.len())
        .map(|ki| {
            let k = yx.decode(ki);
            let mut acc = q.top();
            for x in 0..n {
                for xp in 0..n {
                    acc = q.meet(acc, q.residuate(a.get(x, xp), b.get(k[x], k[xp])));
                }
            }
            acc
        })
        .collect())
}

/// The universal measuring cocategory on `Y^X`:
/// `p_k = gfp(q ↦ (e ∧ m_k) ∧ q⊗q)`.
pub fn measure_p(a: &QCategory, b: &QCategory, limits: &Limits) -> Result<MeasuringReport<QCocategory>> {
    let q = a.quantale();
    let bounds = measuring_bounds(a, b, limits)?;
    let yx = space(a.objects(), b.objects(), limits)?;
    let mut weights = Vec::with_capacity(bounds.len());
    let mut trace = Vec::with_capacity(bounds.len());
    for m in bounds {
        let cap = q.meet(q.unit(), m);
        let (p, steps) = q.gfp(|x| q.meet(cap, q.tensor(x, x)));
        weights.push(p);
        trace.push(steps);
    }
    Ok(MeasuringReport {
        operator: "measure",
        inputs: vec![a.objects().name().to_string(), b.objects().name().to_string()],
        output: QCocategory::trusted(q.clone(), yx.set().clone(), weights),
        trace,
        adjunctions: None,
    })
}

/// The measuring comodule `Q(M,N): T^U ⇸ Y^X` over `measure_p(A,B)`:
/// `Q(k,h) = gfp(q ↦ b_{k,h} ∧ p_k ⊗ q)` with
/// `b_{k,h} = ⋀_{x,u} [M(x,u), N(k x, h u)]`.
pub fn comeasure_q(m: &QModule, n: &QModule, limits: &Limits) -> Result<MeasuringReport<QComodule>> {
    let p = measure_p(m.over(), n.over(), limits)?.output;
    let b = internal_hom(m.mat(), n.mat(), limits)?;
    let b = b.with_carriers(b.src(), p.objects())?;
    let q = p.quantale().clone();
    let mut trace = Vec::with_capacity(b.entries().len());
    let mat = VMatrix::from_fn(&q, b.src(), p.objects(), |k, h| {
        let (bound, w) = (b.get(k, h), p.weight(k));
        let (x, steps) = q.gfp(|x| q.meet(bound, q.tensor(w, x)));
        trace.push(steps);
        x
    });
    Ok(MeasuringReport {
        operator: "comeasure",
        inputs: vec![m.src().name().to_string(), n.src().name().to_string()],
        output: QComodule::trusted(p, mat),
        trace,
        adjunctions: None,
    })
}

/// `C ▷ B` on `Z×Y`: the least category above
/// `G((z,y),(z',y')) = c_z ⊗ B(y,y')` when `z = z'`, bottom otherwise.
/// The trace holds the number of squaring rounds.
pub fn tensor_cat(c: &QCocategory, b: &QCategory) -> Result<MeasuringReport<QCategory>> {
    if !same_quantale(c.quantale(), b.quantale()) {
        return Err(Error::Composition("tensor over different quantales".into()));
    }
    let q = b.quantale();
    let zy = c.objects().product(b.objects());
    let ny = b.objects().len();
    let g = VMatrix::from_fn(q, &zy, &zy, |i, j| {
        if i / ny == j / ny {
            q.tensor(c.weight(i / ny), b.get(i % ny, j % ny))
        } else {
            q.bottom()
        }
    });
    let (cat, rounds) = star_closure(&g)?;
    Ok(MeasuringReport {
        operator: "tensorcat",
        inputs: vec![c.objects().name().to_string(), b.objects().name().to_string()],
        output: cat,
        trace: vec![rounds],
        adjunctions: None,
    })
}

/// `K ⊘ N`: the free module over `C ▷ B` on `K ⊗ N`, with source `V×T`.
pub fn tensor_mod(k: &QComodule, n: &QModule) -> Result<MeasuringReport<QModule>> {
    let tc = tensor_cat(k.over(), n.over())?;
    let module = free_module(&tc.output, &tensor_matrices(k.mat(), n.mat())?)?;
    Ok(MeasuringReport {
        operator: "tensormod",
        inputs: vec![k.src().name().to_string(), n.src().name().to_string()],
        output: module,
        trace: tc.trace,
        adjunctions: None,
    })
}

/// Cotensor of a cocategory and a category.
pub fn cotensor_cat(c: &QCocategory, b: &QCategory, limits: &Limits) -> Result<QCategory> {
    convolution_category(c, b, limits)
}

/// Cotensor of a comodule and a module.
pub fn cotensor_mod(k: &QComodule, n: &QModule, limits: &Limits) -> Result<QModule> {
    convolution_module(k, n, limits)
}

/// Summary of an exhaustive adjunction check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub adjunction: String,
    pub bound: usize,
    pub cases: u64,
    pub mismatches: u64,
    /// The first few mismatching cases in enumeration order.
    pub failures: Vec<String>,
}

const LISTED: usize = 16;

impl AdjunctionReport {
    fn new(adjunction: &str, bound: usize) -> Self {
        AdjunctionReport {
            adjunction: adjunction.to_string(),
            bound,
            cases: 0,
            mismatches: 0,
            failures: Vec::new(),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.mismatches == 0
    }

    fn record(&mut self, agree: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !agree {
            self.mismatches += 1;
            if self.failures.len() < LISTED {
                self.failures.push(describe());
            }
        }
    }
}

impl std::fmt::Display for AdjunctionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} (bound {}): {} cases, {} mismatches",
            self.adjunction, self.bound, self.cases, self.mismatches
        )?;
        for line in &self.failures {
            write!(f, "\n  {line}")?;
        }
        Ok(())
    }
}

/// Which correspondence to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    P,
    Q,
    TensorCat,
    TensorMod,
    HomCocat,
    HomComod,
}

impl std::str::FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "P" | "p" => Which::P,
            "Q" | "q" => Which::Q,
            "tensor_cat" => Which::TensorCat,
            "tensor_mod" => Which::TensorMod,
            "hom_cocat" => Which::HomCocat,
            "hom_comod" => Which::HomComod,
            _ => return Err(Error::Validation(format!("unknown adjunction `{s}`"))),
        })
    }
}

/// The data an adjunction check runs on.
#[derive(Clone, Copy, Debug)]
pub enum Instance<'a> {
    P(&'a QCategory, &'a QCategory),
    Q(&'a QModule, &'a QModule),
    TensorCat(&'a QCocategory, &'a QCategory),
    TensorMod(&'a QComodule, &'a QModule),
    HomCocat(&'a QCocategory, &'a QCocategory),
    HomComod(&'a QComodule, &'a QComodule),
}

impl Instance<'_> {
    pub fn which(&self) -> Which {
        match self {
            Instance::P(..) => Which::P,
            Instance::Q(..) => Which::Q,
            Instance::TensorCat(..) => Which::TensorCat,
            Instance::TensorMod(..) => Which::TensorMod,
            Instance::HomCocat(..) => Which::HomCocat,
            Instance::HomComod(..) => Which::HomComod,
        }
    }
}

/// Exhaustively checks the universal property behind `instance` over all
/// test objects on carriers of size at most `bound`.
pub fn verify_adjunctions(instance: Instance<'_>, bound: usize, limits: &Limits) -> Result<AdjunctionReport> {
    match instance {
        Instance::P(a, b) => {
            let p = measure_p(a, b, limits)?.output;
            verify_measuring(a, b, p.weights(), bound, limits)
        }
        Instance::Q(m, n) => {
            let qm = comeasure_q(m, n, limits)?.output;
            verify_comeasuring(m, n, &qm, bound, limits)
        }
        Instance::TensorCat(c, b) => verify_tensor_cat(c, b, bound, limits),
        Instance::TensorMod(k, n) => verify_tensor_mod(k, n, bound, limits),
        Instance::HomCocat(c, d) => verify_hom_cocat(c, d, bound, limits),
        Instance::HomComod(k, l) => verify_hom_comod(k, l, bound, limits),
    }
}

fn count(base: usize, exp: usize, budget: Budget) -> Result<usize> {
    match checked_size(base, exp) {
        Some(n) if n <= budget.0 as u128 => Ok(n as usize),
        n => Err(Error::Resource {
            what: format!("adjunction enumeration ({base}^{exp} functions); lower the bound"),
            needed: n.unwrap_or(u128::MAX),
            cap: budget.0,
        }),
    }
}

fn show_weights(c: &QCocategory) -> String {
    let q = c.quantale();
    let body: Vec<String> = (0..c.objects().len())
        .map(|z| format!("{}:{}", c.objects().label(z), q.label(c.weight(z))))
        .collect();
    format!("[{}]", body.join(", "))
}

fn show_matrix(m: &VMatrix) -> String {
    let q = m.quantale();
    let rows: Vec<String> = (0..m.tgt().len())
        .map(|y| {
            (0..m.src().len())
                .map(|x| q.label(m.get(y, x)).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

fn show_map(dom: &FinSet, cod: &FinSet, map: &[usize]) -> String {
    let body: Vec<String> = map
        .iter()
        .enumerate()
        .map(|(i, &j)| format!("{}↦{}", dom.label(i), cod.label(j)))
        .collect();
    format!("{{{}}}", body.join(", "))
}

/// Transposes `g: Z → Y^X` (as value tables) to `X → Y^Z` (as indices).
fn transpose_into(g: &[usize], table: &[Vec<usize>], radix: usize, out: &mut [usize]) {
    for (x, slot) in out.iter_mut().enumerate() {
        *slot = g.iter().fold(0, |acc, &k| acc * radix + table[k][x]);
    }
}

/// Checks that `weights` on `Y^X` has the universal property of the measuring
/// cocategory: for every cocategory `C` on `Z` and `g: Z → Y^X`,
/// `g` is a cofunctor `C → (Y^X, weights)` exactly when its transpose
/// `X → Y^Z` is a functor `A → H(C,B)`.
pub fn verify_measuring(
    a: &QCategory,
    b: &QCategory,
    weights: &[Elem],
    bound: usize,
    limits: &Limits,
) -> Result<AdjunctionReport> {
    let q = a.quantale();
    let yx = space(a.objects(), b.objects(), limits)?;
    if weights.len() != yx.len() {
        return Err(Error::Typing(format!(
            "{} weights for a function set of size {}",
            weights.len(),
            yx.len()
        )));
    }
    let table = decoded(&yx);
    let (nx, ny) = (a.objects().len(), b.objects().len());
    let budget = Budget::default();
    let mut report = AdjunctionReport::new("P", bound);
    for nz in 0..=bound {
        let z = carrier("Z", nz);
        let ng = count(yx.len(), nz, budget)?;
        let (mut g, mut gt) = (vec![0; nz], vec![0; nx]);
        for c in cocategories(q, &z, budget)? {
            let h = convolution_category(&c, b, limits)?;
            for gi in 0..ng {
                decode_into(gi, yx.len(), &mut g);
                let lhs = (0..nz).all(|i| q.leq(c.weight(i), weights[g[i]]));
                transpose_into(&g, &table, ny, &mut gt);
                let rhs = (0..nx).all(|x| (0..nx).all(|xp| q.leq(a.get(x, xp), h.get(gt[x], gt[xp]))));
                report.record(lhs == rhs, || {
                    format!(
                        "C = {}, g = {}: cofunctor {lhs}, functor {rhs}",
                        show_weights(&c),
                        show_map(&z, yx.set(), &g)
                    )
                });
            }
        }
    }
    Ok(report)
}

/// Checks `qm` (a matrix `T^U ⇸ Y^X`) against the universal property of the
/// measuring comodule: for every comodule `K: V ⇸ Z` over `C` and
/// `g: Z → Y^X`, `h: V → T^U`, the pair is a comodule morphism into
/// `(measure_p(A,B), qm)` exactly when its transpose is a module morphism
/// `M → H(K,N)`.
pub fn verify_comeasuring(
    m: &QModule,
    n: &QModule,
    qm: &QComodule,
    bound: usize,
    limits: &Limits,
) -> Result<AdjunctionReport> {
    let (a, b) = (m.over(), n.over());
    let q = a.quantale();
    let yx = space(a.objects(), b.objects(), limits)?;
    let tu = space(m.src(), n.src(), limits)?;
    let (p, qmat) = (qm.over(), qm.mat());
    if qmat.tgt().len() != yx.len() || qmat.src().len() != tu.len() {
        return Err(Error::Typing("comodule is not shaped like T^U ⇸ Y^X".into()));
    }
    let (ytab, ttab) = (decoded(&yx), decoded(&tu));
    let (nx, ny, nu, nt) = (a.objects().len(), b.objects().len(), m.src().len(), n.src().len());
    let budget = Budget::default();
    let mut report = AdjunctionReport::new("Q", bound);
    for nz in 0..=bound {
        let z = carrier("Z", nz);
        let ng = count(yx.len(), nz, budget)?;
        for c in cocategories(q, &z, budget)? {
            let hcb = convolution_category(&c, b, limits)?;
            let mut g = vec![0; nz];
            // Cofunctor and functor halves depend on g alone.
            let halves: Vec<(bool, bool, Vec<usize>)> = (0..ng)
                .map(|gi| {
                    decode_into(gi, yx.len(), &mut g);
                    let mut gt = vec![0; nx];
                    transpose_into(&g, &ytab, ny, &mut gt);
                    let cof = (0..nz).all(|i| q.leq(c.weight(i), p.weight(g[i])));
                    let fun = (0..nx).all(|x| (0..nx).all(|xp| q.leq(a.get(x, xp), hcb.get(gt[x], gt[xp]))));
                    (cof, fun, gt)
                })
                .collect();
            for nv in 0..=bound {
                let v = carrier("V", nv);
                let nh = count(tu.len(), nv, budget)?;
                let (mut h, mut ht) = (vec![0; nv], vec![0; nu]);
                for k in comodules(&c, &v, budget)? {
                    let hkn = internal_hom(k.mat(), n.mat(), limits)?;
                    for (gi, (cof, fun, gt)) in halves.iter().enumerate() {
                        decode_into(gi, yx.len(), &mut g);
                        for hi in 0..nh {
                            decode_into(hi, tu.len(), &mut h);
                            transpose_into(&h, &ttab, nt, &mut ht);
                            let lhs = *cof
                                && (0..nz).all(|i| (0..nv).all(|j| q.leq(k.mat().get(i, j), qmat.get(g[i], h[j]))));
                            let rhs = *fun
                                && (0..nx).all(|x| (0..nu).all(|u| q.leq(m.mat().get(x, u), hkn.get(gt[x], ht[u]))));
                            report.record(lhs == rhs, || {
                                format!(
                                    "C = {}, K = {}, g = {}, h = {}: comodule map {lhs}, module map {rhs}",
                                    show_weights(&c),
                                    show_matrix(k.mat()),
                                    show_map(&z, yx.set(), &g),
                                    show_map(&v, tu.set(), &h)
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Functors `C ▷ B → B'` over `f: Z×Y → W` correspond to functors
/// `B → H(C,B')` over the transpose `Y → W^Z`.
pub fn verify_tensor_cat(c: &QCocategory, b: &QCategory, bound: usize, limits: &Limits) -> Result<AdjunctionReport> {
    let q = b.quantale();
    let t = tensor_cat(c, b)?.output;
    let (nz, ny) = (c.objects().len(), b.objects().len());
    let nzy = nz * ny;
    let budget = Budget::default();
    let mut report = AdjunctionReport::new("tensor_cat", bound);
    for nw in 0..=bound {
        let w = carrier("W", nw);
        let nf = count(nw, nzy, budget)?;
        let (mut f, mut ft) = (vec![0; nzy], vec![0; ny]);
        for bp in categories(q, &w, budget)? {
            let h = convolution_category(c, &bp, limits)?;
            for fi in 0..nf {
                decode_into(fi, nw.max(1), &mut f);
                let lhs = (0..nzy).all(|i| (0..nzy).all(|j| q.leq(t.get(i, j), bp.get(f[i], f[j]))));
                for (y, slot) in ft.iter_mut().enumerate() {
                    *slot = (0..nz).fold(0, |acc, zi| acc * nw + f[zi * ny + y]);
                }
                let rhs = (0..ny).all(|y| (0..ny).all(|yp| q.leq(b.get(y, yp), h.get(ft[y], ft[yp]))));
                report.record(lhs == rhs, || {
                    format!(
                        "B' = {}, f = {}: functor from tensor {lhs}, functor into cotensor {rhs}",
                        show_matrix(bp.hom()),
                        show_map(t.objects(), &w, &f)
                    )
                });
            }
        }
    }
    Ok(report)
}

/// Module maps `K ⊘ N → N'` over `(f: Z×Y → W, h: V×T → R)` correspond to
/// module maps `N → H(K,N')` over the transposes.
pub fn verify_tensor_mod(k: &QComodule, n: &QModule, bound: usize, limits: &Limits) -> Result<AdjunctionReport> {
    let (c, b) = (k.over(), n.over());
    let q = b.quantale();
    let tm = tensor_mod(k, n)?.output;
    let t = tm.over();
    let (nz, ny, nv, nt) = (c.objects().len(), b.objects().len(), k.src().len(), n.src().len());
    let (nzy, nvt) = (nz * ny, nv * nt);
    let budget = Budget::default();
    let mut report = AdjunctionReport::new("tensor_mod", bound);
    for nw in 0..=bound {
        let w = carrier("W", nw);
        let nf = count(nw, nzy, budget)?;
        for bp in categories(q, &w, budget)? {
            let hcb = convolution_category(c, &bp, limits)?;
            let mut f = vec![0; nzy];
            let halves: Vec<(bool, bool, Vec<usize>)> = (0..nf)
                .map(|fi| {
                    decode_into(fi, nw.max(1), &mut f);
                    let fun_t = (0..nzy).all(|i| (0..nzy).all(|j| q.leq(t.get(i, j), bp.get(f[i], f[j]))));
                    let ft: Vec<usize> = (0..ny)
                        .map(|y| (0..nz).fold(0, |acc, zi| acc * nw + f[zi * ny + y]))
                        .collect();
                    let fun_b = (0..ny).all(|y| (0..ny).all(|yp| q.leq(b.get(y, yp), hcb.get(ft[y], ft[yp]))));
                    (fun_t, fun_b, ft)
                })
                .collect();
            for nr in 0..=bound {
                let r = carrier("R", nr);
                let nh = count(nr, nvt, budget)?;
                let (mut h, mut ht) = (vec![0; nvt], vec![0; nt]);
                for np in modules(&bp, &r, budget)? {
                    let hkn = internal_hom(k.mat(), np.mat(), limits)?;
                    for (fi, (fun_t, fun_b, ft)) in halves.iter().enumerate() {
                        decode_into(fi, nw.max(1), &mut f);
                        for hi in 0..nh {
                            decode_into(hi, nr.max(1), &mut h);
                            for (ti, slot) in ht.iter_mut().enumerate() {
                                *slot = (0..nv).fold(0, |acc, vi| acc * nr + h[vi * nt + ti]);
                            }
                            let lhs = *fun_t
                                && (0..nzy).all(|i| (0..nvt).all(|j| q.leq(tm.mat().get(i, j), np.mat().get(f[i], h[j]))));
                            let rhs = *fun_b
                                && (0..ny).all(|y| (0..nt).all(|ti| q.leq(n.mat().get(y, ti), hkn.get(ft[y], ht[ti]))));
                            report.record(lhs == rhs, || {
                                format!(
                                    "N' = {} over {}, f = {}, h = {}: map from tensor {lhs}, map into cotensor {rhs}",
                                    show_matrix(np.mat()),
                                    show_matrix(bp.hom()),
                                    show_map(t.objects(), &w, &f),
                                    show_map(tm.src(), &r, &h)
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Cofunctors `E → Hom(C,D)` over `g: U → W^Z` correspond to cofunctors
/// `E ⊗ C → D` over the uncurried `U×Z → W`.
pub fn verify_hom_cocat(c: &QCocategory, d: &QCocategory, bound: usize, limits: &Limits) -> Result<AdjunctionReport> {
    let q = c.quantale();
    let (hom, _) = crate::conv::hom_cocategories(c, d, limits)?;
    let wz = space(c.objects(), d.objects(), limits)?;
    let table = decoded(&wz);
    let nz = c.objects().len();
    let budget = Budget::default();
    let mut report = AdjunctionReport::new("hom_cocat", bound);
    for nu in 0..=bound {
        let u = carrier("U", nu);
        let ng = count(wz.len(), nu, budget)?;
        let mut g = vec![0; nu];
        for e in cocategories(q, &u, budget)? {
            let ec = tensor_cocategories(&e, c)?;
            for gi in 0..ng {
                decode_into(gi, wz.len(), &mut g);
                let lhs = (0..nu).all(|i| q.leq(e.weight(i), hom.weight(g[i])));
                let rhs = (0..nu).all(|i| (0..nz).all(|zi| q.leq(ec.weight(i * nz + zi), d.weight(table[g[i]][zi]))));
                report.record(lhs == rhs, || {
                    format!(
                        "E = {}, g = {}: cofunctor into hom {lhs}, cofunctor from tensor {rhs}",
                        show_weights(&e),
                        show_map(&u, wz.set(), &g)
                    )
                });
            }
        }
    }
    Ok(report)
}

/// Comodule maps `J → Hom(K,L)` over `(g: U → W^Z, h: R → S^V)` correspond
/// to comodule maps `J ⊗ K → L` over the uncurried functions.
pub fn verify_hom_comod(k: &QComodule, l: &QComodule, bound: usize, limits: &Limits) -> Result<AdjunctionReport> {
    let (c, d) = (k.over(), l.over());
    let q = c.quantale();
    let (hom, _) = crate::conv::hom_comodules(k, l, limits)?;
    let wz = space(c.objects(), d.objects(), limits)?;
    let sv = space(k.src(), l.src(), limits)?;
    let (wtab, stab) = (decoded(&wz), decoded(&sv));
    let (nz, nv) = (c.objects().len(), k.src().len());
    let budget = Budget::default();
    let mut report = AdjunctionReport::new("hom_comod", bound);
    for nu in 0..=bound {
        let u = carrier("U", nu);
        let ng = count(wz.len(), nu, budget)?;
        let mut g = vec![0; nu];
        for e in cocategories(q, &u, budget)? {
            let ec = tensor_cocategories(&e, c)?;
            let halves: Vec<(bool, bool)> = (0..ng)
                .map(|gi| {
                    decode_into(gi, wz.len(), &mut g);
                    let into = (0..nu).all(|i| q.leq(e.weight(i), hom.over().weight(g[i])));
                    let from = (0..nu)
                        .all(|i| (0..nz).all(|zi| q.leq(ec.weight(i * nz + zi), d.weight(wtab[g[i]][zi]))));
                    (into, from)
                })
                .collect();
            for nr in 0..=bound {
                let r = carrier("R", nr);
                let nh = count(sv.len(), nr, budget)?;
                let mut h = vec![0; nr];
                for j in comodules(&e, &r, budget)? {
                    let jk = tensor_matrices(j.mat(), k.mat())?;
                    for (gi, (into, from)) in halves.iter().enumerate() {
                        decode_into(gi, wz.len(), &mut g);
                        for hi in 0..nh {
                            decode_into(hi, sv.len(), &mut h);
                            let lhs = *into
                                && (0..nu).all(|i| (0..nr).all(|ri| q.leq(j.mat().get(i, ri), hom.mat().get(g[i], h[ri]))));
                            let rhs = *from
                                && (0..nu * nz).all(|uz| {
                                    (0..nr * nv).all(|rv| {
                                        let target = wtab[g[uz / nz]][uz % nz];
                                        let source = stab[h[rv / nv]][rv % nv];
                                        q.leq(jk.get(uz, rv), l.mat().get(target, source))
                                    })
                                });
                            report.record(lhs == rhs, || {
                                format!(
                                    "E = {}, J = {}, g = {}, h = {}: map into hom {lhs}, map from tensor {rhs}",
                                    show_weights(&e),
                                    show_matrix(j.mat()),
                                    show_map(&u, wz.set(), &g),
                                    show_map(&r, sv.set(), &h)
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

fn compose_index(k: &[usize], l: &[usize], radix: usize) -> usize {
    k.iter().fold(0, |acc, &y| acc * radix + l[y])
}

/// Composition and unit of the enrichment of categories in cocategories:
/// `p^{BC}_l ⊗ p^{AB}_k ≤ p^{AC}_{l∘k}` for all `k: X → Y`, `l: Y → Z`, and
/// `p^{AA}_{id} = e`.
pub fn enriched_check(a: &QCategory, b: &QCategory, c: &QCategory, limits: &Limits) -> Result<Report> {
    let q = a.quantale();
    let pab = measure_p(a, b, limits)?.output;
    let pbc = measure_p(b, c, limits)?.output;
    let pac = measure_p(a, c, limits)?.output;
    let paa = measure_p(a, a, limits)?.output;
    let yx = space(a.objects(), b.objects(), limits)?;
    let zy = space(b.objects(), c.objects(), limits)?;
    let (ktab, ltab) = (decoded(&yx), decoded(&zy));
    let nz = c.objects().len();
    let mut r = Report::new("enrichment");
    for (ki, k) in ktab.iter().enumerate() {
        for (li, l) in ltab.iter().enumerate() {
            let lk = compose_index(k, l, nz);
            if !q.leq(q.tensor(pbc.weight(li), pab.weight(ki)), pac.weight(lk)) {
                r.push_once("composition", || vec![yx.set().label(ki).into(), zy.set().label(li).into()]);
            }
        }
    }
    let nx = a.objects().len();
    let id = compose_index(&(0..nx).collect::<Vec<_>>(), &(0..nx).collect::<Vec<_>>(), nx);
    if paa.weight(id) != q.unit() {
        r.push("unit", vec![paa.objects().label(id).into()]);
    }
    Ok(r)
}

/// The comodule-level analogue for modules `M`, `N`, `O`:
/// `Q^{NO}(l,h') ⊗ Q^{MN}(k,h) ≤ Q^{MO}(l∘k, h'∘h)` and `e ≤ Q^{MM}(id,id)`.
pub fn enriched_module_check(m: &QModule, n: &QModule, o: &QModule, limits: &Limits) -> Result<Report> {
    let qmn = comeasure_q(m, n, limits)?.output;
    let qno = comeasure_q(n, o, limits)?.output;
    let qmo = comeasure_q(m, o, limits)?.output;
    let qmm = comeasure_q(m, m, limits)?.output;
    let mut r = Report::new("module enrichment");
    if let Some(w) = module_composition_witness([m, n, o], [&qmn, &qno, &qmo], limits)? {
        r.push("composition", w);
    }
    if let Some(w) = module_unit_witness(m, &qmm) {
        r.push("unit", w);
    }
    Ok(r)
}

/// First `(k, l, h, h')` violating the composition inequality, given the
/// three measuring comodules.
pub(crate) fn module_composition_witness(
    [m, n, o]: [&QModule; 3],
    [qmn, qno, qmo]: [&QComodule; 3],
    limits: &Limits,
) -> Result<Option<Vec<String>>> {
    let q = m.over().quantale();
    let (sx, sy, sz) = (m.over().objects(), n.over().objects(), o.over().objects());
    let (su, st, sr) = (m.src(), n.src(), o.src());
    let ktab = decoded(&space(sx, sy, limits)?);
    let ltab = decoded(&space(sy, sz, limits)?);
    let htab = decoded(&space(su, st, limits)?);
    let hptab = decoded(&space(st, sr, limits)?);
    for (ki, k) in ktab.iter().enumerate() {
        for (li, l) in ltab.iter().enumerate() {
            let lk = compose_index(k, l, sz.len());
            for (hi, h) in htab.iter().enumerate() {
                let left = qmn.mat().get(ki, hi);
                if left == q.bottom() {
                    continue;
                }
                for (hpi, hp) in hptab.iter().enumerate() {
                    let hh = compose_index(h, hp, sr.len());
                    if !q.leq(q.tensor(qno.mat().get(li, hpi), left), qmo.mat().get(lk, hh)) {
                        return Ok(Some(vec![
                            qmn.mat().tgt().label(ki).into(),
                            qno.mat().tgt().label(li).into(),
                            qmn.mat().src().label(hi).into(),
                            qno.mat().src().label(hpi).into(),
                        ]));
                    }
                }
            }
        }
    }
    Ok(None)
}

pub(crate) fn module_unit_witness(m: &QModule, qmm: &QComodule) -> Option<Vec<String>> {
    let q = m.over().quantale();
    let (nx, nu) = (m.over().objects().len(), m.src().len());
    let idx = compose_index(&(0..nx).collect::<Vec<_>>(), &(0..nx).collect::<Vec<_>>(), nx);
    let idu = compose_index(&(0..nu).collect::<Vec<_>>(), &(0..nu).collect::<Vec<_>>(), nu);
    if q.leq(q.unit(), qmm.mat().get(idx, idu)) {
        None
    } else {
        Some(vec![qmm.mat().tgt().label(idx).into(), qmm.mat().src().label(idu).into()])
    }
}

/// Brute-force maximality scan: `p_k` satisfies the three measuring
/// conditions and dominates every element that does.
pub fn measuring_maximal(q: &Quantale, m_k: Elem, p_k: Elem) -> bool {
    let ok = |x: Elem| q.leq(x, q.unit()) && q.leq(x, q.tensor(x, x)) && q.leq(x, m_k);
    ok(p_k) && q.elements().filter(|&x| ok(x)).all(|x| q.leq(x, p_k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::verify_cocategory;
    use crate::module::verify_comodule;
    use std::sync::Arc;

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

    fn chain(q: &Arc<Quantale>, name: &str) -> QCategory {
        let x = set(name, &["lo", "hi"]);
        QCategory::new(mat(q, &x, &x, &["1", "0", "1", "1"])).unwrap()
    }

    #[test]
    fn monotone_maps_of_chain() {
        let b = Arc::new(Quantale::bool());
        let (a, bb) = (chain(&b, "X"), chain(&b, "Y"));
        let p = measure_p(&a, &bb, &Limits::default()).unwrap();
        let tops = p.output.weights().iter().filter(|&&w| w == b.top()).count();
        assert_eq!(tops, 3);
        // The one non-monotone map swaps the two points.
        let yx = FunctionSpace::new(a.objects(), bb.objects(), 100).unwrap();
        let swap = yx.encode(&[1, 0]);
        assert_eq!(p.output.weight(swap), b.bottom());
        let rep = verify_adjunctions(Instance::P(&a, &bb), 2, &Limits::default()).unwrap();
        assert!(rep.is_pass(), "{rep}");
        assert!(rep.cases > 0);
    }

    #[test]
    fn discrete_source_gives_unit() {
        let g = Arc::new(Quantale::godel(3).unwrap());
        let x = set("X", &["a", "b"]);
        let a = QCategory::discrete(&g, &x);
        let p = measure_p(&a, &chain(&g, "Y"), &Limits::default()).unwrap();
        assert!(p.output.weights().iter().all(|&w| w == g.unit()));
    }

    #[test]
    fn lukasiewicz_half_collapses() {
        let l = Arc::new(Quantale::lukasiewicz(3).unwrap());
        let x = set("X", &["p", "q"]);
        let a = QCategory::new(mat(&l, &x, &x, &["1", "1", "1", "1"])).unwrap();
        let y = set("Y", &["r", "s"]);
        let b = QCategory::new(mat(&l, &y, &y, &["1", "1/2", "1/2", "1"])).unwrap();
        let m = measuring_bounds(&a, &b, &Limits::default()).unwrap();
        let p = measure_p(&a, &b, &Limits::default()).unwrap();
        let half = l.lookup("1/2").unwrap();
        let mut seen = false;
        for (k, &mk) in m.iter().enumerate() {
            if l.meet(l.unit(), mk) == half {
                seen = true;
                assert_eq!(p.output.weight(k), l.bottom());
                assert_eq!(p.trace[k], 2);
            }
        }
        assert!(seen);
        assert!(p.max_steps() <= l.len());
    }

    #[test]
    fn corrupted_weight_is_caught() {
        let b = Arc::new(Quantale::bool());
        let (a, bb) = (chain(&b, "X"), chain(&b, "Y"));
        let mut w = measure_p(&a, &bb, &Limits::default()).unwrap().output.weights().to_vec();
        let yx = FunctionSpace::new(a.objects(), bb.objects(), 100).unwrap();
        w[yx.encode(&[1, 0])] = b.top();
        let rep = verify_measuring(&a, &bb, &w, 2, &Limits::default()).unwrap();
        assert!(!rep.is_pass());
        assert!(rep.failures[0].contains("cofunctor true, functor false"), "{}", rep.failures[0]);
    }

    #[test]
    fn comeasure_single_entry() {
        let g = Arc::new(Quantale::godel(3).unwrap());
        let one = QCategory::unit(&g);
        let u = set("U", &["u"]);
        let m = QModule::new(one.clone(), mat(&g, &u, one.objects(), &["1/2"])).unwrap();
        let n = QModule::new(one.clone(), mat(&g, &u, one.objects(), &["0"])).unwrap();
        let qm = comeasure_q(&m, &n, &Limits::default()).unwrap().output;
        assert_eq!(qm.mat().entries(), &[g.residuate(g.lookup("1/2").unwrap(), g.bottom())]);
        assert!(verify_comodule(qm.over(), qm.mat()).unwrap().is_pass());
    }

    #[test]
    fn comeasure_top_target_copies_p() {
        let b = Arc::new(Quantale::bool());
        let (a, bb) = (chain(&b, "X"), chain(&b, "Y"));
        let u = set("U", &["u"]);
        let t = set("T", &["t", "t'"]);
        let m = QModule::new(a.clone(), mat(&b, &u, a.objects(), &["0", "1"])).unwrap();
        let n = QModule::new(bb.clone(), VMatrix::constant(&b, &t, bb.objects(), b.top())).unwrap();
        let qm = comeasure_q(&m, &n, &Limits::default()).unwrap().output;
        for k in 0..4 {
            for h in 0..qm.src().len() {
                assert_eq!(qm.mat().get(k, h), qm.over().weight(k));
            }
        }
        let rep = verify_adjunctions(Instance::Q(&m, &n), 1, &Limits::default()).unwrap();
        assert!(rep.is_pass(), "{rep}");
    }

    #[test]
    fn tensor_cat_examples() {
        let b = Arc::new(Quantale::bool());
        let y = chain(&b, "Y");
        let z = set("Z", &["z1", "z2"]);
        let c = QCocategory::new(b.clone(), z, vec![b.top(), b.bottom()]).unwrap();
        let t = tensor_cat(&c, &y).unwrap().output;
        let expect = ["1", "0", "0", "0", "1", "1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1"];
        let got: Vec<&str> = t.hom().entries().iter().map(|&e| b.label(e)).collect();
        assert_eq!(got, expect);

        let zero = QCocategory::new(b.clone(), c.objects().clone(), vec![b.bottom(); 2]).unwrap();
        let t0 = tensor_cat(&zero, &y).unwrap().output;
        assert_eq!(t0.hom(), &VMatrix::identity(&b, t0.objects()));

        let t1 = tensor_cat(&QCocategory::unit(&b), &y).unwrap().output;
        assert_eq!(t1.hom().entries(), y.hom().entries());
        let rep = verify_adjunctions(Instance::TensorCat(&c, &y), 2, &Limits::default()).unwrap();
        assert!(rep.is_pass(), "{rep}");
    }

    #[test]
    fn tensor_mod_zero_and_unit() {
        let b = Arc::new(Quantale::bool());
        let y = chain(&b, "Y");
        let t = set("T", &["t"]);
        let n = QModule::new(y.clone(), mat(&b, &t, y.objects(), &["0", "1"])).unwrap();
        let unit = QComodule::unit(&b);
        let tm = tensor_mod(&unit, &n).unwrap().output;
        assert_eq!(tm.mat().entries(), n.mat().entries());

        let v = set("V", &["v"]);
        let c = QCocategory::new(b.clone(), set("Z", &["z"]), vec![b.top()]).unwrap();
        let k0 = QComodule::new(c.clone(), VMatrix::constant(&b, &v, c.objects(), b.bottom())).unwrap();
        let tm0 = tensor_mod(&k0, &n).unwrap().output;
        assert!(tm0.mat().entries().iter().all(|&e| e == b.bottom()));
        let rep = verify_adjunctions(Instance::TensorMod(&k0, &n), 1, &Limits::default()).unwrap();
        assert!(rep.is_pass(), "{rep}");
    }

    #[test]
    fn hom_adjunctions_small() {
        let g = Arc::new(Quantale::godel(3).unwrap());
        let z = set("Z", &["a", "b"]);
        let half = g.lookup("1/2").unwrap();
        let c = QCocategory::new(g.clone(), z.clone(), vec![g.top(), half]).unwrap();
        let d = QCocategory::new(g.clone(), set("W", &["w"]), vec![half]).unwrap();
        assert!(verify_cocategory(&g, c.objects(), c.weights()).unwrap().is_pass());
        let rep = verify_adjunctions(Instance::HomCocat(&c, &d), 2, &Limits::default()).unwrap();
        assert!(rep.is_pass(), "{rep}");
        let v = set("V", &["v"]);
        let k = QComodule::new(c.clone(), mat(&g, &v, &z, &["1/2", "1/2"])).unwrap();
        let l = QComodule::new(d.clone(), mat(&g, &v, d.objects(), &["1/2"])).unwrap();
        let rep = verify_adjunctions(Instance::HomComod(&k, &l), 1, &Limits::default()).unwrap();
        assert!(rep.is_pass(), "{rep}");
    }

    #[test]
    fn enrichment_on_chains() {
        let b = Arc::new(Quantale::bool());
        let (x, y, z) = (chain(&b, "X"), chain(&b, "Y"), chain(&b, "Z"));
        assert!(enriched_check(&x, &y, &z, &Limits::default()).unwrap().is_pass());
        let d = QCategory::discrete(&b, &set("D", &["a", "b"]));
        assert!(enriched_check(&d, &d, &d, &Limits::default()).unwrap().is_pass());
    }

    #[test]
    fn maximality_scan() {
        let l = Quantale::lukasiewicz(5).unwrap();
        for m in l.elements() {
            let cap = l.meet(l.unit(), m);
            let (p, _) = l.gfp(|x| l.meet(cap, l.tensor(x, x)));
            assert!(measuring_maximal(&l, m, p));
        }
    }

    #[test]
    fn cotensor_aliases() {
        let b = Arc::new(Quantale::bool());
        let y = chain(&b, "Y");
        let c = QCocategory::unit(&b);
        assert_eq!(
            cotensor_cat(&c, &y, &Limits::default()).unwrap(),
            convolution_category(&c, &y, &Limits::default()).unwrap()
        );
    }
}
