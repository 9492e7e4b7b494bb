//! Named law suites, run exhaustively on small carriers or on seeded random
//! samples, with replayable counterexamples.

pub mod enumerate;
pub mod random;
pub mod record;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cat::{
    morphism_check, tensor_categories, tensor_cocategories, verify_category, verify_cocategory, QCategory,
    QCocategory,
};
use crate::error::{Error, Result};
use crate::finset::{checked_size, FinFn, FinSet};
use crate::module::{
    corestrict_scalars, free_module, mod_morphism_check, comod_morphism_check, restrict_scalars, tensor_comodules,
    tensor_modules, verify_comodule, verify_module, QComodule, QModule,
};
use crate::quantale::{Elem, Quantale};
use crate::sweedler::{self, comeasure_q, enriched_check, verify_adjunctions, Instance};
use crate::vmat::{
    cell_check, companion_cells, companion_conjoint, curry_indices, hcompose, hom_transpose_check, internal_hom,
    tensor_matrices, Limits, VMatrix,
};

use enumerate::{carrier, Budget};
pub use record::Case;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    DoubleCat,
    Fibrant,
    Monoidal,
    Closed,
    ModFibration,
    MonoidalFibration,
    SweedlerAdjunctions,
    Enrichment,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::DoubleCat,
        Suite::Fibrant,
        Suite::Monoidal,
        Suite::Closed,
        Suite::ModFibration,
        Suite::MonoidalFibration,
        Suite::SweedlerAdjunctions,
        Suite::Enrichment,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DoubleCat => "double_cat",
            Suite::Fibrant => "fibrant",
            Suite::Monoidal => "monoidal",
            Suite::Closed => "closed",
            Suite::ModFibration => "mod_fibration",
            Suite::MonoidalFibration => "monoidal_fibration",
            Suite::SweedlerAdjunctions => "sweedler_adjunctions",
            Suite::Enrichment => "enrichment",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Validation(format!("unknown suite `{s}`")))
    }
}

/// Sampling parameters for the seeded random mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomMode {
    pub seed: u64,
    pub samples: usize,
    /// Largest carrier size drawn.
    pub max_size: usize,
}

impl RandomMode {
    pub fn new(seed: u64) -> Self {
        RandomMode {
            seed,
            samples: 200,
            max_size: 4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Largest carrier size in exhaustive mode, and the test-object bound
    /// for adjunction checks in both modes.
    pub bound: usize,
    pub random: Option<RandomMode>,
    /// Cap on raw candidates per structure enumeration.
    pub budget: Budget,
    /// Cap on the number of cases a suite may plan to run.
    pub max_cases: u64,
    pub limits: Limits,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            bound: 2,
            random: None,
            budget: Budget::default(),
            max_cases: 1 << 28,
            limits: Limits::default(),
        }
    }
}

impl SuiteConfig {
    pub fn exhaustive(bound: usize) -> Self {
        SuiteConfig {
            bound,
            ..Default::default()
        }
    }

    pub fn random(bound: usize, mode: RandomMode) -> Self {
        SuiteConfig {
            bound,
            random: Some(mode),
            ..Default::default()
        }
    }

    fn plan(&self, what: &str, cases: u128) -> Result<()> {
        if cases > self.max_cases as u128 {
            return Err(Error::Resource {
                what: format!("{what} would run {cases} cases; lower the bound"),
                needed: cases,
                cap: self.max_cases,
            });
        }
        Ok(())
    }
}

/// Outcome of a suite run.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub quantale: String,
    pub mode: String,
    pub cases: u64,
    pub failed: u64,
    /// Sorted; at most the first few failures are kept.
    pub failures: Vec<Case>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteResult {
    pub fn is_pass(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.is_pass() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{} on {} ({}): {verdict}, {} cases, {} failed",
            self.suite, self.quantale, self.mode, self.cases, self.failed
        )?;
        if let Some(first) = self.failures.first() {
            write!(f, "\nfirst counterexample: {}", first.law)?;
            for m in &first.matrices {
                write!(f, "\n  {} : {} -> {} {:?}", m.name, m.src.name, m.tgt.name, m.rows)?;
            }
            for g in &first.functions {
                write!(f, "\n  {} : {} -> {} {:?}", g.name, g.dom.name, g.cod.name, g.map)?;
            }
        }
        Ok(())
    }
}

const KEPT: usize = 32;

#[derive(Default)]
struct Tally {
    cases: u64,
    failed: u64,
    failures: Vec<Case>,
}

impl Tally {
    fn check(&mut self, ok: bool, case: impl FnOnce() -> Case) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEPT {
                self.failures.push(case());
            }
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failed += other.failed;
        self.failures.extend(other.failures);
    }

    fn join(parts: Vec<Tally>) -> Tally {
        let mut t = Tally::default();
        for p in parts {
            t.absorb(p);
        }
        t
    }
}

/// Runs `suite` over `q`. Failures never make this an error; only budget
/// overruns and malformed inputs do.
pub fn run_suite(suite: Suite, q: &Arc<Quantale>, cfg: &SuiteConfig) -> Result<SuiteResult> {
    let start = Instant::now();
    let mut tally = match (suite, cfg.random) {
        (Suite::DoubleCat, None) => double_cat(q, cfg)?,
        (Suite::Fibrant, None) => fibrant(q, cfg)?,
        (Suite::Monoidal, None) => monoidal(q, cfg)?,
        (Suite::Closed, None) => closed(q, cfg)?,
        (Suite::ModFibration, None) => mod_fibration(q, cfg)?,
        (Suite::MonoidalFibration, None) => monoidal_fibration(q, cfg)?,
        (Suite::SweedlerAdjunctions, None) => sweedler_adjunctions(q, cfg)?,
        (Suite::Enrichment, None) => enrichment(q, cfg)?,
        (s, Some(mode)) => random_suite(s, q, cfg, mode)?,
    };
    tally.failures.sort();
    tally.failures.dedup();
    tally.failures.truncate(KEPT);
    let mode = match cfg.random {
        None => format!("exhaustive, carriers ≤ {}", cfg.bound),
        Some(m) => format!("random, seed {}, {} samples, carriers ≤ {}", m.seed, m.samples, m.max_size),
    };
    Ok(SuiteResult {
        suite: suite.name().to_string(),
        quantale: q.name().to_string(),
        mode,
        cases: tally.cases,
        failed: tally.failed,
        failures: tally.failures,
        elapsed: start.elapsed(),
    })
}

fn sizes(bound: usize) -> std::ops::RangeInclusive<usize> {
    0..=bound
}

fn mats(q: &Arc<Quantale>, src: &FinSet, tgt: &FinSet, cfg: &SuiteConfig) -> Result<Vec<VMatrix>> {
    Ok(enumerate::matrices(q, src, tgt, cfg.budget)?.collect())
}

fn fns(dom: &FinSet, cod: &FinSet, cfg: &SuiteConfig) -> Result<Vec<FinFn>> {
    Ok(enumerate::functions(dom, cod, cfg.budget)?.collect())
}

fn pow(base: usize, exp: usize) -> u128 {
    checked_size(base, exp).unwrap_or(u128::MAX)
}

fn cat_case(case: Case, name: &str, a: &QCategory) -> Case {
    case.matrix(name, a.hom())
}

fn cocat_case(case: Case, name: &str, c: &QCocategory) -> Case {
    case.matrix(name, &c.to_matrix())
}

fn mod_case(case: Case, name: &str, m: &QModule) -> Case {
    case.matrix(name, m.mat()).matrix(&format!("{name}.over"), m.over().hom())
}

fn comod_case(case: Case, name: &str, k: &QComodule) -> Case {
    case.matrix(name, k.mat()).matrix(&format!("{name}.over"), &k.over().to_matrix())
}

// ---- law predicates shared by the runners and by replay ----

fn law_associativity(r: &VMatrix, s: &VMatrix, t: &VMatrix) -> Result<bool> {
    Ok(hcompose(&hcompose(t, s)?, r)? == hcompose(t, &hcompose(s, r)?)?)
}

fn law_left_unit(s: &VMatrix) -> Result<bool> {
    Ok(hcompose(&VMatrix::identity(s.quantale(), s.tgt()), s)? == *s)
}

fn law_right_unit(s: &VMatrix) -> Result<bool> {
    Ok(hcompose(s, &VMatrix::identity(s.quantale(), s.src()))? == *s)
}

fn law_identity_tensor(q: &Arc<Quantale>, x: &FinSet, z: &FinSet) -> Result<bool> {
    let t = tensor_matrices(&VMatrix::identity(q, x), &VMatrix::identity(q, z))?;
    Ok(t.entries() == VMatrix::identity(q, &x.product(z)).entries())
}

/// `(M⊗N)∘(M'⊗N') = (M∘M')⊗(N∘N')`.
fn law_interchange(m: &VMatrix, mp: &VMatrix, n: &VMatrix, np: &VMatrix) -> Result<bool> {
    let lhs = hcompose(&tensor_matrices(m, n)?, &tensor_matrices(mp, np)?)?;
    let rhs = tensor_matrices(&hcompose(m, mp)?, &hcompose(n, np)?)?;
    Ok(lhs.entries() == rhs.entries())
}

fn law_companion_cells(q: &Arc<Quantale>, f: &FinFn) -> Result<bool> {
    Ok(companion_cells(q, f)?.iter().all(|c| c.verdict))
}

/// A cell `S ⇒ T` over `(f, g)` exists iff `S ≤ g^* ∘ T ∘ f_*`.
fn law_restriction(s: &VMatrix, t: &VMatrix, f: &FinFn, g: &FinFn) -> Result<bool> {
    let q = s.quantale();
    let (fc, _) = companion_conjoint(q, f);
    let (_, gc) = companion_conjoint(q, g);
    let r = hcompose(&hcompose(&gc, t)?, &fc)?;
    Ok(cell_check(f, g, s, t)?.verdict == s.leq(&r)?)
}

fn unit_matrix(q: &Arc<Quantale>) -> VMatrix {
    VMatrix::identity(q, &FinSet::singleton("I"))
}

fn law_tensor_unit(s: &VMatrix) -> Result<bool> {
    let i = unit_matrix(s.quantale());
    Ok(tensor_matrices(&i, s)?.entries() == s.entries() && tensor_matrices(s, &i)?.entries() == s.entries())
}

fn law_symmetry(s: &VMatrix, t: &VMatrix) -> Result<bool> {
    let st = tensor_matrices(s, t)?;
    let ts = tensor_matrices(t, s)?;
    let (nx, ny, nz, nw) = (s.src().len(), s.tgt().len(), t.src().len(), t.tgt().len());
    for y in 0..ny {
        for w in 0..nw {
            for x in 0..nx {
                for z in 0..nz {
                    if st.get(y * nw + w, x * nz + z) != ts.get(w * ny + y, z * nx + x) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn law_tensor_associativity(s: &VMatrix, t: &VMatrix, u: &VMatrix) -> Result<bool> {
    let left = tensor_matrices(&tensor_matrices(s, t)?, u)?;
    let right = tensor_matrices(s, &tensor_matrices(t, u)?)?;
    Ok(left.entries() == right.entries())
}

fn law_transpose(r: &VMatrix, s: &VMatrix, t: &VMatrix, phi: &FinFn, psi: &FinFn, limits: &Limits) -> Result<bool> {
    match hom_transpose_check(r, s, t, phi, psi, limits) {
        Ok(_) => Ok(true),
        Err(Error::Invariant(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn is_module(m: &QModule) -> Result<bool> {
    Ok(verify_module(m.over(), m.mat())?.is_pass())
}

fn is_comodule(k: &QComodule) -> Result<bool> {
    Ok(verify_comodule(k.over(), k.mat())?.is_pass())
}

/// Maps into the restriction of `N` along `α` are exactly maps into `N`
/// over `α∘β`.
fn law_cartesian(
    alpha: &FinFn,
    a: &QCategory,
    n: &QModule,
    beta: &FinFn,
    p: &QModule,
    g: &FinFn,
) -> Result<bool> {
    let r = restrict_scalars(alpha, a, n)?;
    Ok(mod_morphism_check(beta, g, p, &r)? == mod_morphism_check(&beta.then(alpha)?, g, p, n)?)
}

fn law_reindex(alpha: &FinFn, a: &QCategory, n: &QModule, beta: &FinFn, ap: &QCategory) -> Result<bool> {
    let twice = restrict_scalars(beta, ap, &restrict_scalars(alpha, a, n)?)?;
    let once = restrict_scalars(&beta.then(alpha)?, ap, n)?;
    Ok(twice.mat().entries() == once.mat().entries())
}

/// Module maps `A ⊙ M → N` over `(α, g)` are exactly cells `M ⇒ N`.
fn law_free(alpha: &FinFn, a: &QCategory, m: &VMatrix, n: &QModule, g: &FinFn) -> Result<bool> {
    let free = free_module(a, m)?;
    let functor = morphism_check(alpha, a, n.over())?;
    Ok(mod_morphism_check(alpha, g, &free, n)? == (functor && cell_check(g, alpha, m, n.mat())?.verdict))
}

fn law_cocartesian(
    alpha: &FinFn,
    k: &QComodule,
    d: &QCocategory,
    beta: &FinFn,
    l: &QComodule,
    g: &FinFn,
) -> Result<bool> {
    let pushed = corestrict_scalars(alpha, k, d)?;
    Ok(comod_morphism_check(beta, g, &pushed, l)? == comod_morphism_check(&alpha.then(beta)?, g, k, l)?)
}

fn law_coreindex(alpha: &FinFn, k: &QComodule, d: &QCocategory, beta: &FinFn, dp: &QCocategory) -> Result<bool> {
    let twice = corestrict_scalars(beta, &corestrict_scalars(alpha, k, d)?, dp)?;
    let once = corestrict_scalars(&alpha.then(beta)?, k, dp)?;
    Ok(twice.mat().entries() == once.mat().entries())
}

fn law_tensor_lifting(
    (alpha, a, m): (&FinFn, &QCategory, &QModule),
    (beta, ap, n): (&FinFn, &QCategory, &QModule),
) -> Result<bool> {
    let whole = restrict_scalars(&alpha.product(beta), &tensor_categories(a, ap)?, &tensor_modules(m, n)?)?;
    let parts = tensor_modules(&restrict_scalars(alpha, a, m)?, &restrict_scalars(beta, ap, n)?)?;
    Ok(whole.mat().entries() == parts.mat().entries())
}

fn law_tensor_colifting(
    (alpha, k, d): (&FinFn, &QComodule, &QCocategory),
    (beta, l, dp): (&FinFn, &QComodule, &QCocategory),
) -> Result<bool> {
    let whole = corestrict_scalars(&alpha.product(beta), &tensor_comodules(k, l)?, &tensor_cocategories(d, dp)?)?;
    let parts = tensor_comodules(&corestrict_scalars(alpha, k, d)?, &corestrict_scalars(beta, l, dp)?)?;
    Ok(whole.mat().entries() == parts.mat().entries())
}

fn law_module_tensor(m: &QModule, n: &QModule) -> Result<bool> {
    let over = tensor_categories(m.over(), n.over())?;
    Ok(verify_module(&over, &tensor_matrices(m.mat(), n.mat())?)?.is_pass())
}

// ---- exhaustive runners ----

fn double_cat(q: &Arc<Quantale>, cfg: &SuiteConfig) -> Result<Tally> {
    const S: &str = "double_cat";
    let n = q.len();
    let b = cfg.bound;
    let mut t = Tally::default();
    for x in sizes(b) {
        for y in sizes(b) {
            let (sx, sy) = (carrier("X", x), carrier("Y", y));
            for s in mats(q, &sx, &sy, cfg)? {
                t.check(law_left_unit(&s)?, || Case::new(S, "left unit").matrix("S", &s));
                t.check(law_right_unit(&s)?, || Case::new(S, "right unit").matrix("S", &s));
            }
            t.check(law_identity_tensor(q, &sx, &sy)?, || {
                Case::new(S, "identity tensor")
                    .matrix("1_X", &VMatrix::identity(q, &sx))
                    .matrix("1_Z", &VMatrix::identity(q, &sy))
            });
        }
    }

    let mut configs = Vec::new();
    let mut planned = 0u128;
    for x in sizes(b) {
        for y in sizes(b) {
            for z in sizes(b) {
                for w in sizes(b) {
                    planned += pow(n, x * y + y * z + z * w);
                    configs.push((x, y, z, w));
                }
            }
        }
    }
    cfg.plan("double_cat associativity", planned)?;
    let parts = configs
        .par_iter()
        .map(|&(x, y, z, w)| -> Result<Tally> {
            let (sx, sy, sz, sw) = (carrier("X", x), carrier("Y", y), carrier("Z", z), carrier("W", w));
            let (rs, ss, ts) = (mats(q, &sx, &sy, cfg)?, mats(q, &sy, &sz, cfg)?, mats(q, &sz, &sw, cfg)?);
            let sr: Vec<Vec<VMatrix>> = ss
                .iter()
                .map(|s| rs.iter().map(|r| hcompose(s, r)).collect())
                .collect::<Result<_>>()?;
            let mut t = Tally::default();
            for tm in &ts {
                for (si, s) in ss.iter().enumerate() {
                    let tsm = hcompose(tm, s)?;
                    for (ri, r) in rs.iter().enumerate() {
                        let ok = hcompose(&tsm, r)? == hcompose(tm, &sr[si][ri])?;
                        t.check(ok, || Case::new(S, "associativity").matrix("R", r).matrix("S", s).matrix("T", tm));
                    }
                }
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    t.absorb(Tally::join(parts));

    // Composable pairs (M: X ⇸ Y, M': W ⇸ X), then all pairs of pairs.
    let mut pairs = Vec::new();
    for x in sizes(b) {
        for y in sizes(b) {
            for w in sizes(b) {
                let (sx, sy, sw) = (carrier("X", x), carrier("Y", y), carrier("W", w));
                let (ms, mps) = (mats(q, &sx, &sy, cfg)?, mats(q, &sw, &sx, cfg)?);
                for m in &ms {
                    for mp in &mps {
                        let composite = hcompose(m, mp)?;
                        pairs.push((m.clone(), mp.clone(), composite));
                    }
                }
            }
        }
    }
    cfg.plan("double_cat interchange", (pairs.len() as u128).pow(2))?;
    let parts = pairs
        .par_iter()
        .map(|(m, mp, mmp)| -> Result<Tally> {
            let mut t = Tally::default();
            for (nn, np, nnp) in &pairs {
                let ok = interchange_entries(q, (m, mp, mmp), (nn, np, nnp)) || law_interchange(m, mp, nn, np)?;
                t.check(ok, || {
                    Case::new(S, "interchange")
                        .matrix("M", m)
                        .matrix("M'", mp)
                        .matrix("N", nn)
                        .matrix("N'", np)
                });
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    t.absorb(Tally::join(parts));
    Ok(t)
}

/// Entrywise form of the interchange law on precomposed pairs, without
/// building the intermediate matrices. A `false` here is confirmed by
/// [`law_interchange`] before it is reported.
fn interchange_entries(
    q: &Quantale,
    (m, mp, mmp): (&VMatrix, &VMatrix, &VMatrix),
    (n, np, nnp): (&VMatrix, &VMatrix, &VMatrix),
) -> bool {
    let (ny, nx, nw) = (m.tgt().len(), m.src().len(), mp.src().len());
    let (ny2, nx2, nw2) = (n.tgt().len(), n.src().len(), np.src().len());
    for y in 0..ny {
        for y2 in 0..ny2 {
            for w in 0..nw {
                for w2 in 0..nw2 {
                    let mut lhs = q.bottom();
                    for x in 0..nx {
                        for x2 in 0..nx2 {
                            let left = q.tensor(m.get(y, x), n.get(y2, x2));
                            let right = q.tensor(mp.get(x, w), np.get(x2, w2));
                            lhs = q.join(lhs, q.tensor(left, right));
                        }
                    }
                    if lhs != q.tensor(mmp.get(y, w), nnp.get(y2, w2)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn fibrant(q: &Arc<Quantale>, cfg: &SuiteConfig) -> Result<Tally> {
    const S: &str = "fibrant";
    let n = q.len();
    let b = cfg.bound;
    let mut t = Tally::default();
    for x in sizes(b) {
        for y in sizes(b) {
            for f in fns(&carrier("X", x), &carrier("Y", y), cfg)? {
                t.check(law_companion_cells(q, &f)?, || Case::new(S, "companion cells").function("f", &f));
            }
        }
    }
    let mut planned = 0u128;
    let mut configs = Vec::new();
    for x in sizes(b) {
        for xp in sizes(b) {
            for y in sizes(b) {
                for yp in sizes(b) {
                    planned += pow(xp, x) * pow(yp, y) * pow(n, x * y) * pow(n, xp * yp);
                    configs.push((x, xp, y, yp));
                }
            }
        }
    }
    cfg.plan("fibrant restriction", planned)?;
    let parts = configs
        .par_iter()
        .map(|&(x, xp, y, yp)| -> Result<Tally> {
            let (sx, sxp, sy, syp) = (carrier("X", x), carrier("X'", xp), carrier("Y", y), carrier("Y'", yp));
            let (ss, ts) = (mats(q, &sx, &sy, cfg)?, mats(q, &sxp, &syp, cfg)?);
            let mut t = Tally::default();
            for f in fns(&sx, &sxp, cfg)? {
                let (fc, _) = companion_conjoint(q, &f);
                for g in fns(&sy, &syp, cfg)? {
                    let (_, gc) = companion_conjoint(q, &g);
                    for tm in &ts {
                        let r = hcompose(&hcompose(&gc, tm)?, &fc)?;
                        for s in &ss {
                            let ok = cell_check(&f, &g, s, tm)?.verdict == s.leq(&r)?;
                            t.check(ok, || {
                                Case::new(S, "restriction")
                                    .matrix("S", s)
                                    .matrix("T", tm)
                                    .function("f", &f)
                                    .function("g", &g)
                            });
                        }
                    }
                }
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    t.absorb(Tally::join(parts));
    Ok(t)
}

fn monoidal(q: &Arc<Quantale>, cfg: &SuiteConfig) -> Result<Tally> {
    const S: &str = "monoidal";
    let b = cfg.bound;
    let mut all = Vec::new();
    for x in sizes(b) {
        for y in sizes(b) {
            all.extend(mats(q, &carrier("X", x), &carrier("Y", y), cfg)?);
        }
    }
    let k = all.len() as u128;
    cfg.plan("monoidal", k * k * k + k * k + k)?;
    let mut t = Tally::default();
    for s in &all {
        t.check(law_tensor_unit(s)?, || Case::new(S, "unit").matrix("S", s));
        for u in &all {
            t.check(law_symmetry(s, u)?, || Case::new(S, "symmetry").matrix("S", s).matrix("T", u));
        }
    }
    let parts = all
        .par_iter()
        .map(|s| -> Result<Tally> {
            let mut t = Tally::default();
            for tm in &all {
                let st = tensor_matrices(s, tm)?;
                for u in &all {
                    let ok = tensor_matrices(&st, u)?.entries() == tensor_matrices(s, &tensor_matrices(tm, u)?)?.entries();
                    t.check(ok, || Case::new(S, "associativity").matrix("S", s).matrix("T", tm).matrix("U", u));
                }
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    t.absorb(Tally::join(parts));
    Ok(t)
}

/// Advances a mixed-radix counter; false once it wraps around.
fn bump(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

fn closed(q: &Arc<Quantale>, cfg: &SuiteConfig) -> Result<Tally> {
    let n = q.len();
    let b = cfg.bound;
    let mut configs = Vec::new();
    let mut planned = 0u128;
    for a in sizes(b) {
        for bb in sizes(b) {
            for x in sizes(b) {
                for y in sizes(b) {
                    for z in sizes(b) {
                        for w in sizes(b) {
                            planned += pow(n, a * bb) * pow(n, x * y) * pow(n, z * w) * pow(z, a * x) * pow(w, bb * y);
                            configs.push([a, bb, x, y, z, w]);
                        }
                    }
                }
            }
        }
    }
    cfg.plan("closed", planned)?;
    let parts = configs
        .par_iter()
        .map(|&dims| closed_config(q, cfg, dims))
        .collect::<Result<Vec<_>>>()?;
    Ok(Tally::join(parts))
}

/// One carrier configuration of the closed suite. The verdicts of
/// `R⊗S ⇒ T` and `R ⇒ H(S,T)` are both conjunctions over the entries of
/// `R`, so each side is tabulated per entry value once and then every `R`
/// is checked against both tables.
fn closed_config(q: &Arc<Quantale>, cfg: &SuiteConfig, [a, b, x, y, z, w]: [usize; 6]) -> Result<Tally> {
    const S: &str = "closed";
    let n = q.len();
    let (sa, sb, sx, sy, sz, sw) = (
        carrier("A", a),
        carrier("B", b),
        carrier("X", x),
        carrier("Y", y),
        carrier("Z", z),
        carrier("W", w),
    );
    let (ax, by) = (sa.product(&sx), sb.product(&sy));
    let phis = fns(&ax, &sz, cfg)?;
    let psis = fns(&by, &sw, cfg)?;
    let mut t = Tally::default();
    if phis.is_empty() || psis.is_empty() {
        return Ok(t);
    }
    let cells = a * b;
    let mut ok1 = vec![false; cells * n];
    let mut ok2 = vec![false; cells * n];
    let mut digits = vec![0usize; cells];
    for s in mats(q, &sx, &sy, cfg)? {
        for tm in mats(q, &sz, &sw, cfg)? {
            let h = internal_hom(&s, &tm, &cfg.limits)?;
            for phi in &phis {
                let phit = curry_indices(phi, a, x, z);
                for psi in &psis {
                    let psit = curry_indices(psi, b, y, w);
                    for bi in 0..b {
                        for ai in 0..a {
                            let hv = h.get(psit[bi], phit[ai]);
                            for r in 0..n {
                                let re = Elem(r as u8);
                                let slot = (bi * a + ai) * n + r;
                                ok1[slot] = (0..y).all(|yy| {
                                    (0..x).all(|xx| {
                                        q.leq(
                                            q.tensor(re, s.get(yy, xx)),
                                            tm.get(psi.apply(bi * y + yy), phi.apply(ai * x + xx)),
                                        )
                                    })
                                });
                                ok2[slot] = q.leq(re, hv);
                            }
                        }
                    }
                    digits.iter_mut().for_each(|d| *d = 0);
                    loop {
                        let v1 = digits.iter().enumerate().all(|(i, &r)| ok1[i * n + r]);
                        let v2 = digits.iter().enumerate().all(|(i, &r)| ok2[i * n + r]);
                        t.check(v1 == v2, || {
                            let r = VMatrix::new(
                                q.clone(),
                                sa.clone(),
                                sb.clone(),
                                digits.iter().map(|&d| Elem(d as u8)).collect(),
                            )
                            .expect("shape");
                            Case::new(S, "transpose")
                                .matrix("R", &r)
                                .matrix("S", &s)
                                .matrix("T", &tm)
                                .function("phi", phi)
                                .function("psi", psi)
                        });
                        if !bump(&mut digits, n) {
                            break;
                        }
                    }
                }
            }
        }
    }
    Ok(t)
}

fn categories_upto(q: &Arc<Quantale>, name: &str, cfg: &SuiteConfig) -> Result<Vec<QCategory>> {
    let mut v = Vec::new();
    for k in sizes(cfg.bound) {
        v.extend(enumerate::categories(q, &carrier(name, k), cfg.budget)?);
    }
    Ok(v)
}

fn cocategories_upto(q: &Arc<Quantale>, name: &str, cfg: &SuiteConfig) -> Result<Vec<QCocategory>> {
    let mut v = Vec::new();
    for k in sizes(cfg.bound) {
        v.extend(enumerate::cocategories(q, &carrier(name, k), cfg.budget)?);
    }
    Ok(v)
}

fn modules_upto(a: &QCategory, name: &str, cfg: &SuiteConfig) -> Result<Vec<QModule>> {
    let mut v = Vec::new();
    for k in sizes(cfg.bound) {
        v.extend(enumerate::modules(a, &carrier(name, k), cfg.budget)?);
    }
    Ok(v)
}

fn comodules_upto(c: &QCocategory, name: &str, cfg: &SuiteConfig) -> Result<Vec<QComodule>> {
    let mut v = Vec::new();
    for k in sizes(cfg.bound) {
        v.extend(enumerate::comodules(c, &carrier(name, k), cfg.budget)?);
    }
    Ok(v)
}

fn functors(a: &QCategory, b: &QCategory, cfg: &SuiteConfig) -> Result<Vec<FinFn>> {
    let mut v = Vec::new();
    for f in fns(a.objects(), b.objects(), cfg)? {
        if morphism_check(&f, a, b)? {
            v.push(f);
        }
    }
    Ok(v)
}

fn cofunctors(c: &QCocategory, d: &QCocategory, cfg: &SuiteConfig) -> Result<Vec<FinFn>> {
    let mut v = Vec::new();
    for f in fns(c.objects(), d.objects(), cfg)? {
        if morphism_check(&f, c, d)? {
            v.push(f);
        }
    }
    Ok(v)
}

/// `(A, B, α: A → B, N over B)` with carriers up to the bound.
type Lifting = (QCategory, QCategory, FinFn, QModule);
/// `(C, D, α: C → D, K over C)` with carriers up to the bound.
type Colifting = (QCocategory, QCocategory, FinFn, QComodule);

fn liftings(q: &Arc<Quantale>, cfg: &SuiteConfig) -> Result<Vec<Lifting>> {
    let (cats_x, cats_y) = (categories_upto(q, "X", cfg)?, categories_upto(q, "Y", cfg)?);
    let mut v = Vec::new();
    for bcat in &cats_y {
        let ns = modules_upto(bcat, "T", cfg)?;
        for acat in &cats_x {
            for alpha in functors(acat, bcat, cfg)? {
                for nm in &ns {
                    v.push((acat.clone(), bcat.clone(), alpha.clone(), nm.clone()));
                }
            }
        }
    }
    Ok(v)
}

fn coliftings(q: &Arc<Quantale>, cfg: &SuiteConfig) -> Result<Vec<Colifting>> {
    let (cocats_z, cocats_w) = (cocategories_upto(q, "Z", cfg)?, cocategories_upto(q, "W", cfg)?);
    let mut v = Vec::new();
    for c in &cocats_z {
        let ks = comodules_upto(c, "V", cfg)?;
        for d in &cocats_w {
            for alpha in cofunctors(c, d, cfg)? {
                for k in &ks {
                    v.push((c.clone(), d.clone(), alpha.clone(), k.clone()));
                }
            }
        }
    }
    Ok(v)
}

fn lifting_case(case: Case, (a, _, alpha, n): &Lifting, suffix: &str) -> Case {
    let case = cat_case(case, &format!("A{suffix}"), a);
    mod_case(case, &format!("N{suffix}"), n).function(&format!("alpha{suffix}"), alpha)
}

fn colifting_case(case: Case, (_, d, alpha, k): &Colifting, suffix: &str) -> Case {
    let case = cocat_case(case, &format!("D{suffix}"), d);
    comod_case(case, &format!("K{suffix}"), k).function(&format!("alpha{suffix}"), alpha)
}

fn mod_fibration(q: &Arc<Quantale>, cfg: &SuiteConfig) -> Result<Tally> {
    const S: &str = "mod_fibration";
    let mut t = Tally::default();
    let lifts = liftings(q, cfg)?;
    // Test objects: categories A' with their modules.
    let mut tests = Vec::new();
    for ap in categories_upto(q, "X'", cfg)? {
        let ps = modules_upto(&ap, "T'", cfg)?;
        tests.push((ap, ps));
    }
    for l in &lifts {
        let (a, _, alpha, n) = l;
        let r = restrict_scalars(alpha, a, n)?;
        t.check(is_module(&r)?, || lifting_case(Case::new(S, "restriction is a module"), l, ""));
        for (ap, ps) in &tests {
            for beta in functors(ap, a, cfg)? {
                t.check(law_reindex(alpha, a, n, &beta, ap)?, || {
                    cat_case(lifting_case(Case::new(S, "reindex coherence"), l, ""), "A'", ap).function("beta", &beta)
                });
                let ab = beta.then(alpha)?;
                for p in ps {
                    for g in fns(p.src(), n.src(), cfg)? {
                        let ok = mod_morphism_check(&beta, &g, p, &r)? == mod_morphism_check(&ab, &g, p, n)?;
                        t.check(ok, || {
                            mod_case(lifting_case(Case::new(S, "cartesian lifting"), l, ""), "P", p)
                                .function("beta", &beta)
                                .function("g", &g)
                        });
                    }
                }
            }
        }
    }

    // Free modules: maps A⊙M → N over α against cells M ⇒ N.
    let (cats_x, cats_y) = (categories_upto(q, "X", cfg)?, categories_upto(q, "Y", cfg)?);
    for bcat in &cats_y {
        let ns = modules_upto(bcat, "T", cfg)?;
        for a in &cats_x {
            let alphas = functors(a, bcat, cfg)?;
            if alphas.is_empty() {
                continue;
            }
            for u in sizes(cfg.bound) {
                for m in mats(q, &carrier("U", u), a.objects(), cfg)? {
                    for alpha in &alphas {
                        for nm in &ns {
                            for g in fns(m.src(), nm.src(), cfg)? {
                                t.check(law_free(alpha, a, &m, nm, &g)?, || {
                                    mod_case(cat_case(Case::new(S, "free adjunction"), "A", a).matrix("M", &m), "N", nm)
                                        .function("alpha", alpha)
                                        .function("g", &g)
                                });
                            }
                        }
                    }
                }
            }
        }
    }

    // Comodules: corestriction is cocartesian.
    let colifts = coliftings(q, cfg)?;
    let mut cotests = Vec::new();
    for dp in cocategories_upto(q, "W'", cfg)? {
        let ls = comodules_upto(&dp, "V'", cfg)?;
        cotests.push((dp, ls));
    }
    for cl in &colifts {
        let (_, d, alpha, k) = cl;
        let pushed = corestrict_scalars(alpha, k, d)?;
        t.check(is_comodule(&pushed)?, || colifting_case(Case::new(S, "corestriction is a comodule"), cl, ""));
        for (dp, ls) in &cotests {
            for beta in cofunctors(d, dp, cfg)? {
                t.check(law_coreindex(alpha, k, d, &beta, dp)?, || {
                    cocat_case(colifting_case(Case::new(S, "coreindex coherence"), cl, ""), "D'", dp)
                        .function("beta", &beta)
                });
                let ab = alpha.then(&beta)?;
                for l in ls {
                    for g in fns(k.src(), l.src(), cfg)? {
                        let ok = comod_morphism_check(&beta, &g, &pushed, l)? == comod_morphism_check(&ab, &g, k, l)?;
                        t.check(ok, || {
                            comod_case(colifting_case(Case::new(S, "cocartesian lifting"), cl, ""), "L", l)
                                .function("beta", &beta)
                                .function("g", &g)
                        });
                    }
                }
            }
        }
    }
    Ok(t)
}

fn monoidal_fibration(q: &Arc<Quantale>, cfg: &SuiteConfig) -> Result<Tally> {
    const S: &str = "monoidal_fibration";
    let lifts = liftings(q, cfg)?;
    let colifts = coliftings(q, cfg)?;
    let k = lifts.len() as u128;
    let c = colifts.len() as u128;
    cfg.plan("monoidal_fibration", 2 * k * k + c * c)?;
    let parts = lifts
        .par_iter()
        .map(|l1| -> Result<Tally> {
            let mut t = Tally::default();
            for l2 in &lifts {
                let ok = law_tensor_lifting((&l1.2, &l1.0, &l1.3), (&l2.2, &l2.0, &l2.3))?;
                t.check(ok, || lifting_case(lifting_case(Case::new(S, "tensor of liftings"), l1, "1"), l2, "2"));
                t.check(law_module_tensor(&l1.3, &l2.3)?, || {
                    mod_case(mod_case(Case::new(S, "module tensor"), "M", &l1.3), "N", &l2.3)
                });
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Tally::join(parts);
    let parts = colifts
        .par_iter()
        .map(|c1| -> Result<Tally> {
            let mut t = Tally::default();
            for c2 in &colifts {
                let ok = law_tensor_colifting((&c1.2, &c1.3, &c1.1), (&c2.2, &c2.3, &c2.1))?;
                t.check(ok, || {
                    colifting_case(colifting_case(Case::new(S, "tensor of coliftings"), c1, "1"), c2, "2")
                });
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    t.absorb(Tally::join(parts));
    Ok(t)
}

fn module_instances(q: &Arc<Quantale>, cfg: &SuiteConfig, obj: &str, src: &str) -> Result<Vec<QModule>> {
    let mut v = Vec::new();
    for a in categories_upto(q, obj, cfg)? {
        v.extend(modules_upto(&a, src, cfg)?);
    }
    Ok(v)
}

fn comodule_instances(q: &Arc<Quantale>, cfg: &SuiteConfig, obj: &str, src: &str) -> Result<Vec<QComodule>> {
    let mut v = Vec::new();
    for c in cocategories_upto(q, obj, cfg)? {
        v.extend(comodules_upto(&c, src, cfg)?);
    }
    Ok(v)
}

fn adjunction_case(instance: Instance<'_>, bound: usize) -> Case {
    let which = sweedler_law_name(instance.which());
    let case = Case::new("sweedler_adjunctions", which).with_bound(bound);
    match instance {
        Instance::P(a, b) => cat_case(cat_case(case, "A", a), "B", b),
        Instance::Q(m, n) => mod_case(mod_case(case, "M", m), "N", n),
        Instance::TensorCat(c, b) => cat_case(cocat_case(case, "C", c), "B", b),
        Instance::TensorMod(k, n) => mod_case(comod_case(case, "K", k), "N", n),
        Instance::HomCocat(c, d) => cocat_case(cocat_case(case, "C", c), "D", d),
        Instance::HomComod(k, l) => comod_case(comod_case(case, "K", k), "L", l),
    }
}

fn sweedler_law_name(w: sweedler::Which) -> &'static str {
    match w {
        sweedler::Which::P => "P",
        sweedler::Which::Q => "Q",
        sweedler::Which::TensorCat => "tensor_cat",
        sweedler::Which::TensorMod => "tensor_mod",
        sweedler::Which::HomCocat => "hom_cocat",
        sweedler::Which::HomComod => "hom_comod",
    }
}

fn run_adjunction(t: &mut Tally, instance: Instance<'_>, cfg: &SuiteConfig) -> Result<()> {
    let rep = verify_adjunctions(instance, cfg.bound, &cfg.limits)?;
    t.cases += rep.cases;
    if !rep.is_pass() {
        t.failed += rep.mismatches;
        if t.failures.len() < KEPT {
            t.failures.push(adjunction_case(instance, cfg.bound));
        }
    }
    Ok(())
}

/// Adjunction checks on every instance with carriers up to the bound. The
/// module-level tensor and hom, whose test objects are themselves pairs of
/// structures, take instances with carriers up to `bound - 1`.
fn sweedler_adjunctions(q: &Arc<Quantale>, cfg: &SuiteConfig) -> Result<Tally> {
    let mut t = Tally::default();
    let cats = categories_upto(q, "X", cfg)?;
    let cocats = cocategories_upto(q, "Z", cfg)?;
    for a in &cats {
        for b in &cats {
            run_adjunction(&mut t, Instance::P(a, b), cfg)?;
        }
    }
    for c in &cocats {
        for b in &cats {
            run_adjunction(&mut t, Instance::TensorCat(c, b), cfg)?;
        }
        for d in &cocats {
            run_adjunction(&mut t, Instance::HomCocat(c, d), cfg)?;
        }
    }
    let mods = module_instances(q, cfg, "X", "U")?;
    for m in &mods {
        for n in &mods {
            run_adjunction(&mut t, Instance::Q(m, n), cfg)?;
        }
    }
    let small = SuiteConfig {
        bound: cfg.bound.saturating_sub(1),
        ..cfg.clone()
    };
    let small_mods = module_instances(q, &small, "Y", "T")?;
    let small_comods = comodule_instances(q, &small, "Z", "V")?;
    for k in &small_comods {
        for n in &small_mods {
            run_adjunction(&mut t, Instance::TensorMod(k, n), cfg)?;
        }
        for l in &small_comods {
            run_adjunction(&mut t, Instance::HomComod(k, l), cfg)?;
        }
    }
    Ok(t)
}

fn enrichment(q: &Arc<Quantale>, cfg: &SuiteConfig) -> Result<Tally> {
    const S: &str = "enrichment";
    let mut t = Tally::default();
    let cats = categories_upto(q, "X", cfg)?;
    let k = cats.len() as u128;
    cfg.plan("enrichment", k * k * k)?;
    for a in &cats {
        for b in &cats {
            for c in &cats {
                let rep = enriched_check(a, b, c, &cfg.limits)?;
                for law in ["composition", "unit"] {
                    t.check(!rep.violates(law), || {
                        cat_case(cat_case(cat_case(Case::new(S, law), "A", a), "B", b), "C", c)
                    });
                }
            }
        }
    }
    let mods = module_instances(q, cfg, "X", "U")?;
    let m = mods.len();
    cfg.plan("module enrichment", (m as u128).pow(3))?;
    let qs: Vec<Vec<QComodule>> = mods
        .par_iter()
        .map(|a| mods.iter().map(|b| Ok(comeasure_q(a, b, &cfg.limits)?.output)).collect())
        .collect::<Result<_>>()?;
    for (i, mi) in mods.iter().enumerate() {
        t.check(sweedler::module_unit_witness(mi, &qs[i][i]).is_none(), || {
            mod_case(Case::new(S, "module unit"), "M", mi)
        });
    }
    let parts = (0..m)
        .into_par_iter()
        .map(|i| -> Result<Tally> {
            let mut t = Tally::default();
            for j in 0..m {
                for k in 0..m {
                    let w = sweedler::module_composition_witness(
                        [&mods[i], &mods[j], &mods[k]],
                        [&qs[i][j], &qs[j][k], &qs[i][k]],
                        &cfg.limits,
                    )?;
                    t.check(w.is_none(), || {
                        mod_case(mod_case(mod_case(Case::new(S, "module composition"), "M", &mods[i]), "N", &mods[j]), "O", &mods[k])
                    });
                }
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    t.absorb(Tally::join(parts));
    Ok(t)
}

// ---- seeded random mode ----

fn random_suite(suite: Suite, q: &Arc<Quantale>, cfg: &SuiteConfig, mode: RandomMode) -> Result<Tally> {
    let mut rng = ChaCha8Rng::seed_from_u64(mode.seed);
    let mut t = Tally::default();
    let name = suite.name();
    let mx = mode.max_size;
    for _ in 0..mode.samples {
        let sz = |rng: &mut ChaCha8Rng, label: &str| carrier(label, random::size(rng, mx));
        match suite {
            Suite::DoubleCat => {
                let (x, y, z, w) = (sz(&mut rng, "X"), sz(&mut rng, "Y"), sz(&mut rng, "Z"), sz(&mut rng, "W"));
                let r = random::matrix(&mut rng, q, &x, &y);
                let s = random::matrix(&mut rng, q, &y, &z);
                let tm = random::matrix(&mut rng, q, &z, &w);
                t.check(law_associativity(&r, &s, &tm)?, || {
                    Case::new(name, "associativity").matrix("R", &r).matrix("S", &s).matrix("T", &tm)
                });
                t.check(law_left_unit(&s)?, || Case::new(name, "left unit").matrix("S", &s));
                t.check(law_right_unit(&s)?, || Case::new(name, "right unit").matrix("S", &s));
                t.check(law_identity_tensor(q, &x, &z)?, || {
                    Case::new(name, "identity tensor")
                        .matrix("1_X", &VMatrix::identity(q, &x))
                        .matrix("1_Z", &VMatrix::identity(q, &z))
                });
                let (x2, y2, w2) = (sz(&mut rng, "X"), sz(&mut rng, "Y"), sz(&mut rng, "W"));
                let m = random::matrix(&mut rng, q, &x, &y);
                let mp = random::matrix(&mut rng, q, &w, &x);
                let n = random::matrix(&mut rng, q, &x2, &y2);
                let np = random::matrix(&mut rng, q, &w2, &x2);
                t.check(law_interchange(&m, &mp, &n, &np)?, || {
                    Case::new(name, "interchange")
                        .matrix("M", &m)
                        .matrix("M'", &mp)
                        .matrix("N", &n)
                        .matrix("N'", &np)
                });
            }
            Suite::Fibrant => {
                let (x, xp, y, yp) = (sz(&mut rng, "X"), sz(&mut rng, "X'"), sz(&mut rng, "Y"), sz(&mut rng, "Y'"));
                let f = random::function(&mut rng, &x, &xp).expect("nonempty");
                let g = random::function(&mut rng, &y, &yp).expect("nonempty");
                let s = random::matrix(&mut rng, q, &x, &y);
                let tm = random::matrix(&mut rng, q, &xp, &yp);
                t.check(law_companion_cells(q, &f)?, || Case::new(name, "companion cells").function("f", &f));
                t.check(law_restriction(&s, &tm, &f, &g)?, || {
                    Case::new(name, "restriction")
                        .matrix("S", &s)
                        .matrix("T", &tm)
                        .function("f", &f)
                        .function("g", &g)
                });
            }
            Suite::Monoidal => {
                let ms: Vec<VMatrix> = (0..3)
                    .map(|_| {
                        let (x, y) = (sz(&mut rng, "X"), sz(&mut rng, "Y"));
                        random::matrix(&mut rng, q, &x, &y)
                    })
                    .collect();
                let (s, tm, u) = (&ms[0], &ms[1], &ms[2]);
                t.check(law_tensor_unit(s)?, || Case::new(name, "unit").matrix("S", s));
                t.check(law_symmetry(s, tm)?, || Case::new(name, "symmetry").matrix("S", s).matrix("T", tm));
                t.check(law_tensor_associativity(s, tm, u)?, || {
                    Case::new(name, "associativity").matrix("S", s).matrix("T", tm).matrix("U", u)
                });
            }
            Suite::Closed => {
                let (a, b, x, y) = (sz(&mut rng, "A"), sz(&mut rng, "B"), sz(&mut rng, "X"), sz(&mut rng, "Y"));
                let (z, w) = (sz(&mut rng, "Z"), sz(&mut rng, "W"));
                let r = random::matrix(&mut rng, q, &a, &b);
                let s = random::matrix(&mut rng, q, &x, &y);
                let tm = random::matrix(&mut rng, q, &z, &w);
                let phi = random::function(&mut rng, &a.product(&x), &z).expect("nonempty");
                let psi = random::function(&mut rng, &b.product(&y), &w).expect("nonempty");
                t.check(law_transpose(&r, &s, &tm, &phi, &psi, &cfg.limits)?, || {
                    Case::new(name, "transpose")
                        .matrix("R", &r)
                        .matrix("S", &s)
                        .matrix("T", &tm)
                        .function("phi", &phi)
                        .function("psi", &psi)
                });
            }
            Suite::ModFibration => {
                let (x, y, tt) = (sz(&mut rng, "X"), sz(&mut rng, "Y"), sz(&mut rng, "T"));
                let b = random::category(&mut rng, q, &y);
                let alpha = random::function(&mut rng, &x, &y).expect("nonempty");
                let a = random::category_over(&mut rng, &alpha, &b);
                let n = random::module(&mut rng, &b, &tt);
                let xp = sz(&mut rng, "X'");
                let beta = random::function(&mut rng, &xp, &x).expect("nonempty");
                let ap = random::category_over(&mut rng, &beta, &a);
                let p_set = sz(&mut rng, "T'");
                let p = random::module(&mut rng, &ap, &p_set);
                let g = random::function(&mut rng, p.src(), n.src()).expect("nonempty");
                let l: Lifting = (a.clone(), b.clone(), alpha.clone(), n.clone());
                t.check(is_module(&restrict_scalars(&alpha, &a, &n)?)?, || {
                    lifting_case(Case::new(name, "restriction is a module"), &l, "")
                });
                t.check(law_reindex(&alpha, &a, &n, &beta, &ap)?, || {
                    cat_case(lifting_case(Case::new(name, "reindex coherence"), &l, ""), "A'", &ap)
                        .function("beta", &beta)
                });
                t.check(law_cartesian(&alpha, &a, &n, &beta, &p, &g)?, || {
                    mod_case(lifting_case(Case::new(name, "cartesian lifting"), &l, ""), "P", &p)
                        .function("beta", &beta)
                        .function("g", &g)
                });
                let m_set = sz(&mut rng, "U");
                let m = random::matrix(&mut rng, q, &m_set, a.objects());
                let g2 = random::function(&mut rng, m.src(), n.src()).expect("nonempty");
                t.check(law_free(&alpha, &a, &m, &n, &g2)?, || {
                    mod_case(cat_case(Case::new(name, "free adjunction"), "A", &a).matrix("M", &m), "N", &n)
                        .function("alpha", &alpha)
                        .function("g", &g2)
                });
                let (z, w, v) = (sz(&mut rng, "Z"), sz(&mut rng, "W"), sz(&mut rng, "V"));
                let d = random::cocategory(&mut rng, q, &w);
                let ca = random::function(&mut rng, &z, &w).expect("nonempty");
                let c = random::cocategory_over(&mut rng, &ca, &d);
                let k = random::comodule(&mut rng, &c, &v);
                let wp = sz(&mut rng, "W'");
                let dp = random::cocategory(&mut rng, q, &wp);
                let cb = random::function(&mut rng, &w, &wp).expect("nonempty");
                // Make cb a cofunctor by shrinking D to fit under D'.
                let d = random::cocategory_over(&mut rng, &cb, &dp);
                let c = QCocategory::new(
                    q.clone(),
                    z.clone(),
                    (0..z.len()).map(|i| q.meet(c.weight(i), d.weight(ca.apply(i)))).collect(),
                )
                .unwrap_or_else(|_| QCocategory::new(q.clone(), z.clone(), vec![q.bottom(); z.len()]).expect("bottom"));
                let k = crate::module::cofree_comodule(&c, k.mat())?;
                let l_set = sz(&mut rng, "V'");
                let l = random::comodule(&mut rng, &dp, &l_set);
                let g3 = random::function(&mut rng, k.src(), l.src()).expect("nonempty");
                let cl: Colifting = (c.clone(), d.clone(), ca.clone(), k.clone());
                t.check(law_coreindex(&ca, &k, &d, &cb, &dp)?, || {
                    cocat_case(colifting_case(Case::new(name, "coreindex coherence"), &cl, ""), "D'", &dp)
                        .function("beta", &cb)
                });
                t.check(law_cocartesian(&ca, &k, &d, &cb, &l, &g3)?, || {
                    comod_case(colifting_case(Case::new(name, "cocartesian lifting"), &cl, ""), "L", &l)
                        .function("beta", &cb)
                        .function("g", &g3)
                });
            }
            Suite::MonoidalFibration => {
                let lift = |rng: &mut ChaCha8Rng| -> Lifting {
                    let (x, y, tt) = (sz(rng, "X"), sz(rng, "Y"), sz(rng, "T"));
                    let b = random::category(rng, q, &y);
                    let alpha = random::function(rng, &x, &y).expect("nonempty");
                    let a = random::category_over(rng, &alpha, &b);
                    let n = random::module(rng, &b, &tt);
                    (a, b, alpha, n)
                };
                let (l1, l2) = (lift(&mut rng), lift(&mut rng));
                t.check(law_tensor_lifting((&l1.2, &l1.0, &l1.3), (&l2.2, &l2.0, &l2.3))?, || {
                    lifting_case(lifting_case(Case::new(name, "tensor of liftings"), &l1, "1"), &l2, "2")
                });
                t.check(law_module_tensor(&l1.3, &l2.3)?, || {
                    mod_case(mod_case(Case::new(name, "module tensor"), "M", &l1.3), "N", &l2.3)
                });
                let colift = |rng: &mut ChaCha8Rng| -> Colifting {
                    let (z, w, v) = (sz(rng, "Z"), sz(rng, "W"), sz(rng, "V"));
                    let d = random::cocategory(rng, q, &w);
                    let alpha = random::function(rng, &z, &w).expect("nonempty");
                    let c = random::cocategory_over(rng, &alpha, &d);
                    let k = random::comodule(rng, &c, &v);
                    (c, d, alpha, k)
                };
                let (c1, c2) = (colift(&mut rng), colift(&mut rng));
                t.check(law_tensor_colifting((&c1.2, &c1.3, &c1.1), (&c2.2, &c2.3, &c2.1))?, || {
                    colifting_case(colifting_case(Case::new(name, "tensor of coliftings"), &c1, "1"), &c2, "2")
                });
            }
            Suite::SweedlerAdjunctions => {
                let small = mx.min(2);
                let sz2 = |rng: &mut ChaCha8Rng, label: &str| carrier(label, random::size(rng, small));
                let (x, y) = (sz2(&mut rng, "X"), sz2(&mut rng, "Y"));
                let a = random::category(&mut rng, q, &x);
                let b = random::category(&mut rng, q, &y);
                let c_set = sz2(&mut rng, "Z");
                let c = random::cocategory(&mut rng, q, &c_set);
                let d_set = sz2(&mut rng, "W");
                let d = random::cocategory(&mut rng, q, &d_set);
                let m_set = sz2(&mut rng, "U");
                let m = random::module(&mut rng, &a, &m_set);
                let n_set = sz2(&mut rng, "T");
                let n = random::module(&mut rng, &b, &n_set);
                let k_set = sz2(&mut rng, "V");
                let k = random::comodule(&mut rng, &c, &k_set);
                let l_set = sz2(&mut rng, "S");
                let l = random::comodule(&mut rng, &d, &l_set);
                run_adjunction(&mut t, Instance::P(&a, &b), cfg)?;
                run_adjunction(&mut t, Instance::Q(&m, &n), cfg)?;
                run_adjunction(&mut t, Instance::TensorCat(&c, &b), cfg)?;
                run_adjunction(&mut t, Instance::HomCocat(&c, &d), cfg)?;
                run_adjunction(&mut t, Instance::HomComod(&k, &l), cfg)?;
                let small_cfg = SuiteConfig {
                    bound: cfg.bound.min(1),
                    ..cfg.clone()
                };
                run_adjunction(&mut t, Instance::TensorMod(&k, &n), &small_cfg)?;
            }
            Suite::Enrichment => {
                let small = mx.min(3);
                let sz3 = |rng: &mut ChaCha8Rng, label: &str| carrier(label, random::size(rng, small));
                let a_set = sz3(&mut rng, "X");
                let a = random::category(&mut rng, q, &a_set);
                let b_set = sz3(&mut rng, "Y");
                let b = random::category(&mut rng, q, &b_set);
                let c_set = sz3(&mut rng, "Z");
                let c = random::category(&mut rng, q, &c_set);
                let rep = enriched_check(&a, &b, &c, &cfg.limits)?;
                for law in ["composition", "unit"] {
                    t.check(!rep.violates(law), || {
                        cat_case(cat_case(cat_case(Case::new(name, law), "A", &a), "B", &b), "C", &c)
                    });
                }
                let m_set = sz3(&mut rng, "U");
                let m = random::module(&mut rng, &a, &m_set);
                let n_set = sz3(&mut rng, "T");
                let n = random::module(&mut rng, &b, &n_set);
                let o_set = sz3(&mut rng, "R");
                let o = random::module(&mut rng, &c, &o_set);
                let rep = sweedler::enriched_module_check(&m, &n, &o, &cfg.limits)?;
                t.check(!rep.violates("composition"), || {
                    mod_case(mod_case(mod_case(Case::new(name, "module composition"), "M", &m), "N", &n), "O", &o)
                });
                t.check(!rep.violates("unit"), || mod_case(Case::new(name, "module unit"), "M", &m));
            }
        }
    }
    Ok(t)
}

// ---- replay ----

fn category_of(case: &Case, q: &Arc<Quantale>, name: &str) -> Result<QCategory> {
    QCategory::new(case.get_matrix(q, name)?)
}

fn cocategory_of(case: &Case, q: &Arc<Quantale>, name: &str) -> Result<QCocategory> {
    QCocategory::from_matrix(&case.get_matrix(q, name)?)
}

fn module_of(case: &Case, q: &Arc<Quantale>, name: &str) -> Result<QModule> {
    let over = category_of(case, q, &format!("{name}.over"))?;
    let m = case.get_matrix(q, name)?;
    QModule::new(over.clone(), m.with_carriers(m.src(), over.objects())?)
}

fn comodule_of(case: &Case, q: &Arc<Quantale>, name: &str) -> Result<QComodule> {
    let over = cocategory_of(case, q, &format!("{name}.over"))?;
    let k = case.get_matrix(q, name)?;
    QComodule::new(over.clone(), k.with_carriers(k.src(), over.objects())?)
}

fn lifting_of(case: &Case, q: &Arc<Quantale>, suffix: &str) -> Result<(FinFn, QCategory, QModule)> {
    let a = category_of(case, q, &format!("A{suffix}"))?;
    let n = module_of(case, q, &format!("N{suffix}"))?;
    let alpha = case.get_function(&format!("alpha{suffix}"))?.rebased(a.objects(), n.over().objects())?;
    Ok((alpha, a, n))
}

fn colifting_of(case: &Case, q: &Arc<Quantale>, suffix: &str) -> Result<(FinFn, QComodule, QCocategory)> {
    let d = cocategory_of(case, q, &format!("D{suffix}"))?;
    let k = comodule_of(case, q, &format!("K{suffix}"))?;
    let alpha = case.get_function(&format!("alpha{suffix}"))?.rebased(k.over().objects(), d.objects())?;
    Ok((alpha, k, d))
}

/// Re-evaluates the law recorded in `case`; `Ok(true)` means it now holds.
pub fn replay(q: &Arc<Quantale>, case: &Case) -> Result<bool> {
    let m = |name: &str| case.get_matrix(q, name);
    let f = |name: &str| case.get_function(name);
    let limits = Limits::default();
    match (case.suite.as_str(), case.law.as_str()) {
        ("double_cat", "associativity") => law_associativity(&m("R")?, &m("S")?, &m("T")?),
        ("double_cat", "left unit") => law_left_unit(&m("S")?),
        ("double_cat", "right unit") => law_right_unit(&m("S")?),
        ("double_cat", "identity tensor") => law_identity_tensor(q, m("1_X")?.src(), m("1_Z")?.src()),
        ("double_cat", "interchange") => law_interchange(&m("M")?, &m("M'")?, &m("N")?, &m("N'")?),
        ("fibrant", "companion cells") => law_companion_cells(q, &f("f")?),
        ("fibrant", "restriction") => {
            let (s, t) = (m("S")?, m("T")?);
            let fx = f("f")?.rebased(s.src(), t.src())?;
            let gx = f("g")?.rebased(s.tgt(), t.tgt())?;
            law_restriction(&s, &t, &fx, &gx)
        }
        ("monoidal", "unit") => law_tensor_unit(&m("S")?),
        ("monoidal", "symmetry") => law_symmetry(&m("S")?, &m("T")?),
        ("monoidal", "associativity") => law_tensor_associativity(&m("S")?, &m("T")?, &m("U")?),
        ("closed", "transpose") => {
            let (r, s, t) = (m("R")?, m("S")?, m("T")?);
            let phi = f("phi")?.rebased(&r.src().product(s.src()), t.src())?;
            let psi = f("psi")?.rebased(&r.tgt().product(s.tgt()), t.tgt())?;
            law_transpose(&r, &s, &t, &phi, &psi, &limits)
        }
        ("mod_fibration", "restriction is a module") => {
            let (alpha, a, n) = lifting_of(case, q, "")?;
            is_module(&restrict_scalars(&alpha, &a, &n)?)
        }
        ("mod_fibration", "reindex coherence") => {
            let (alpha, a, n) = lifting_of(case, q, "")?;
            let ap = category_of(case, q, "A'")?;
            let beta = f("beta")?.rebased(ap.objects(), a.objects())?;
            law_reindex(&alpha, &a, &n, &beta, &ap)
        }
        ("mod_fibration", "cartesian lifting") => {
            let (alpha, a, n) = lifting_of(case, q, "")?;
            let p = module_of(case, q, "P")?;
            let beta = f("beta")?.rebased(p.over().objects(), a.objects())?;
            let g = f("g")?.rebased(p.src(), n.src())?;
            law_cartesian(&alpha, &a, &n, &beta, &p, &g)
        }
        ("mod_fibration", "free adjunction") => {
            let a = category_of(case, q, "A")?;
            let n = module_of(case, q, "N")?;
            let mm = m("M")?;
            let mm = mm.with_carriers(mm.src(), a.objects())?;
            let alpha = f("alpha")?.rebased(a.objects(), n.over().objects())?;
            let g = f("g")?.rebased(mm.src(), n.src())?;
            law_free(&alpha, &a, &mm, &n, &g)
        }
        ("mod_fibration", "corestriction is a comodule") => {
            let (alpha, k, d) = colifting_of(case, q, "")?;
            is_comodule(&corestrict_scalars(&alpha, &k, &d)?)
        }
        ("mod_fibration", "coreindex coherence") => {
            let (alpha, k, d) = colifting_of(case, q, "")?;
            let dp = cocategory_of(case, q, "D'")?;
            let beta = f("beta")?.rebased(d.objects(), dp.objects())?;
            law_coreindex(&alpha, &k, &d, &beta, &dp)
        }
        ("mod_fibration", "cocartesian lifting") => {
            let (alpha, k, d) = colifting_of(case, q, "")?;
            let l = comodule_of(case, q, "L")?;
            let beta = f("beta")?.rebased(d.objects(), l.over().objects())?;
            let g = f("g")?.rebased(k.src(), l.src())?;
            law_cocartesian(&alpha, &k, &d, &beta, &l, &g)
        }
        ("monoidal_fibration", "tensor of liftings") => {
            let (a1, c1, n1) = lifting_of(case, q, "1")?;
            let (a2, c2, n2) = lifting_of(case, q, "2")?;
            law_tensor_lifting((&a1, &c1, &n1), (&a2, &c2, &n2))
        }
        ("monoidal_fibration", "module tensor") => law_module_tensor(&module_of(case, q, "M")?, &module_of(case, q, "N")?),
        ("monoidal_fibration", "tensor of coliftings") => {
            let (a1, k1, d1) = colifting_of(case, q, "1")?;
            let (a2, k2, d2) = colifting_of(case, q, "2")?;
            law_tensor_colifting((&a1, &k1, &d1), (&a2, &k2, &d2))
        }
        ("sweedler_adjunctions", which) => {
            let bound = case.bound.unwrap_or(2);
            let rep = match which.parse::<sweedler::Which>()? {
                sweedler::Which::P => {
                    let (a, b) = (category_of(case, q, "A")?, category_of(case, q, "B")?);
                    verify_adjunctions(Instance::P(&a, &b), bound, &limits)?
                }
                sweedler::Which::Q => {
                    let (mm, n) = (module_of(case, q, "M")?, module_of(case, q, "N")?);
                    verify_adjunctions(Instance::Q(&mm, &n), bound, &limits)?
                }
                sweedler::Which::TensorCat => {
                    let (c, b) = (cocategory_of(case, q, "C")?, category_of(case, q, "B")?);
                    verify_adjunctions(Instance::TensorCat(&c, &b), bound, &limits)?
                }
                sweedler::Which::TensorMod => {
                    let (k, n) = (comodule_of(case, q, "K")?, module_of(case, q, "N")?);
                    verify_adjunctions(Instance::TensorMod(&k, &n), bound, &limits)?
                }
                sweedler::Which::HomCocat => {
                    let (c, d) = (cocategory_of(case, q, "C")?, cocategory_of(case, q, "D")?);
                    verify_adjunctions(Instance::HomCocat(&c, &d), bound, &limits)?
                }
                sweedler::Which::HomComod => {
                    let (k, l) = (comodule_of(case, q, "K")?, comodule_of(case, q, "L")?);
                    verify_adjunctions(Instance::HomComod(&k, &l), bound, &limits)?
                }
            };
            Ok(rep.is_pass())
        }
        ("enrichment", law @ ("composition" | "unit")) => {
            let (a, b, c) = (category_of(case, q, "A")?, category_of(case, q, "B")?, category_of(case, q, "C")?);
            Ok(!enriched_check(&a, &b, &c, &limits)?.violates(law))
        }
        ("enrichment", "module composition") => {
            let (mm, n, o) = (module_of(case, q, "M")?, module_of(case, q, "N")?, module_of(case, q, "O")?);
            Ok(!sweedler::enriched_module_check(&mm, &n, &o, &limits)?.violates("composition"))
        }
        ("enrichment", "module unit") => {
            let mm = module_of(case, q, "M")?;
            Ok(!sweedler::enriched_module_check(&mm, &mm, &mm, &limits)?.violates("unit"))
        }
        (s, l) => Err(Error::Validation(format!("no law `{l}` in suite `{s}`"))),
    }
}

/// Category and cocategory checks used by callers that hold raw matrices.
pub fn is_category(m: &VMatrix) -> Result<bool> {
    Ok(verify_category(m)?.is_pass())
}

pub fn is_cocategory(q: &Quantale, objects: &FinSet, weights: &[Elem]) -> Result<bool> {
    Ok(verify_cocategory(q, objects, weights)?.is_pass())
}
