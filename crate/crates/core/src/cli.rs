//! Command-line front end over workspace files.
//!
//! Exit codes: 0 success or PASS, 1 a check or suite FAILED, 2 a parse,
//! validation or resource error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::cat::{pullback_category, pushforward_cocategory, star_closure, tensor_categories, tensor_cocategories};
use crate::conv::{convolution_category, convolution_module, hom_cocategories, hom_comodules};
use crate::error::{Error, Result};
use crate::lawcheck::{self, RandomMode, Suite, SuiteConfig};
use crate::module::{corestrict_scalars, restrict_scalars, tensor_comodules, tensor_modules};
use crate::report::Report;
use crate::sweedler::{self, verify_adjunctions, AdjunctionReport, Instance};
use crate::vmat::{hcompose, internal_hom, tensor_matrices, Limits};
use crate::workspace::{to_json, Emitter, Item, Workspace};

#[derive(Parser, Debug)]
#[command(name = "sweedler", version, about = "Quantale-enriched matrices, categories and their measuring objects")]
pub struct Cli {
    /// Workspace file to load.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Print structured JSON instead of workspace syntax.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cap on materialized carrier and enumeration sizes.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Run suites in seeded random mode.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the law check of a structure, or of the quantale with `check quantale`.
    Check { name: String },
    /// Horizontal composite T∘S.
    Compose { t: String, s: String },
    /// Tensor of two matrices, (co)categories or (co)modules.
    Tensor { a: String, b: String },
    /// Internal hom of matrices, cocategories or comodules.
    Hom { s: String, t: String },
    /// Convolution category of (C, A) or convolution module of (K, M).
    Convolve { c: String, a: String },
    /// Least category above an endo-matrix.
    Star { g: String },
    /// Restrict a module along a function of objects.
    Restrict {
        f: String,
        n: String,
        /// Category on the new objects; defaults to the pullback.
        #[arg(long)]
        over: Option<String>,
    },
    /// Corestrict a comodule along a function of objects.
    Corestrict {
        f: String,
        k: String,
        /// Cocategory on the new objects; defaults to the pushforward.
        #[arg(long)]
        over: Option<String>,
    },
    /// Universal measuring cocategory P(A, B).
    Measure {
        a: String,
        b: String,
        /// Also check the adjunction with test objects up to this size.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Universal measuring comodule Q(M, N).
    Comeasure {
        m: String,
        n: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Tensor of a cocategory with a category.
    Tensorcat {
        c: String,
        b: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Tensor of a comodule with a module.
    Tensormod {
        k: String,
        n: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Run a law suite over the workspace quantale.
    Verify {
        suite: String,
        /// Largest carrier size.
        #[arg(long)]
        bound: Option<usize>,
        /// Samples in random mode.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Largest carrier drawn in random mode.
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
    /// Re-evaluate a counterexample saved as JSON.
    Replay { case: PathBuf },
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn verdict(pass: bool, stdout: String) -> Self {
        Outcome {
            code: if pass { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }

    fn error(msg: String) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: msg,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome::error(text)
            };
        }
    };
    let Some(path) = cli.input.clone() else {
        return Outcome::error("error: --input <file> is required\n".into());
    };
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => return Outcome::error(format!("error: cannot read {}: {e}\n", path.display())),
    };
    let ws = match Workspace::parse(&text) {
        Ok(ws) => ws,
        Err(e @ Error::Parse { .. }) => return Outcome::error(format!("{}:{e}\n", path.display())),
        Err(e) => return Outcome::error(format!("{}: {e}\n", path.display())),
    };
    match execute(&cli, &ws) {
        Ok(o) => o,
        Err(e) => Outcome::error(format!("error: {e}\n")),
    }
}

struct Ctx<'a> {
    ws: &'a Workspace,
    json: bool,
}

impl Ctx<'_> {
    fn item(&self, name: &str) -> Result<&Item> {
        self.ws
            .get(name)
            .ok_or_else(|| Error::Validation(format!("no structure named `{name}`")))
    }

    fn typed<T>(&self, name: &str, kind: &str, pick: impl Fn(&Item) -> Option<T>) -> Result<T> {
        let item = self.item(name)?;
        pick(item).ok_or_else(|| Error::Validation(format!("`{name}` is a {}, expected a {kind}", item.kind())))
    }

    fn matrix(&self, name: &str) -> Result<crate::vmat::VMatrix> {
        self.typed(name, "matrix", Item::matrix)
    }

    fn category(&self, name: &str) -> Result<crate::cat::QCategory> {
        self.typed(name, "category", |i| match i {
            Item::Category(a) => Some(a.clone()),
            _ => None,
        })
    }

    fn cocategory(&self, name: &str) -> Result<crate::cat::QCocategory> {
        self.typed(name, "cocategory", |i| match i {
            Item::Cocategory(c) => Some(c.clone()),
            _ => None,
        })
    }

    fn module(&self, name: &str) -> Result<crate::module::QModule> {
        self.typed(name, "module", |i| match i {
            Item::Module(m) => Some(m.clone()),
            _ => None,
        })
    }

    fn comodule(&self, name: &str) -> Result<crate::module::QComodule> {
        self.typed(name, "comodule", |i| match i {
            Item::Comodule(k) => Some(k.clone()),
            _ => None,
        })
    }

    fn function(&self, name: &str) -> Result<crate::finset::FinFn> {
        self.typed(name, "function", |i| match i {
            Item::Function(f) => Some(f.clone()),
            _ => None,
        })
    }

    /// Prints a computed structure with optional notes and extra JSON fields.
    fn emit(&self, name: &str, item: Item, notes: &[String], extra: Value) -> String {
        if self.json {
            let mut v = to_json(name, &item);
            if let (Value::Object(obj), Value::Object(more)) = (&mut v, extra) {
                obj.extend(more);
            }
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        } else {
            let mut e = Emitter::new(self.ws.quantale());
            for n in notes {
                e.comment(n);
            }
            e.item(name, &item);
            e.finish()
        }
    }
}

fn report_json(name: &str, r: &Report) -> Value {
    json!({
        "kind": "report",
        "name": name,
        "subject": r.subject,
        "pass": r.is_pass(),
        "violations": r.violations.iter().map(|v| json!({ "law": v.law, "witness": v.witness })).collect::<Vec<_>>(),
    })
}

fn adjunction_note(rep: &Option<AdjunctionReport>) -> Vec<String> {
    rep.iter().map(|r| r.to_string()).collect()
}

fn adjunction_json(trace: &[usize], rep: &Option<AdjunctionReport>) -> Value {
    json!({
        "trace": trace,
        "adjunction": rep.as_ref().map(|r| serde_json::to_value(r).expect("json")),
    })
}

fn execute(cli: &Cli, ws: &Workspace) -> Result<Outcome> {
    let limits = Limits {
        max_entries: cli.cap.or(ws.config.cap).unwrap_or(Limits::default().max_entries),
    };
    let cx = Ctx {
        ws,
        json: cli.json,
    };
    let q = ws.quantale();
    let lawful = ws.quantale_report().is_pass();
    let needs_lawful = !matches!(cli.command, Command::Check { .. } | Command::Verify { .. } | Command::Replay { .. });
    if needs_lawful && !lawful {
        return Err(Error::Law(ws.quantale_report().clone()));
    }
    let pass_through = |rep: &Option<AdjunctionReport>| rep.as_ref().is_none_or(|r| r.is_pass());
    let out = match &cli.command {
        Command::Check { name } => {
            let (subject, report) = match ws.get(name) {
                None if name == "quantale" => ("quantale".to_string(), ws.quantale_report().clone()),
                None => return Err(Error::Validation(format!("no structure named `{name}`"))),
                Some(item) => (name.clone(), check_item(item)?),
            };
            let text = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&report_json(&subject, &report)).expect("json"))
            } else {
                format!("{subject}: {report}\n")
            };
            Outcome::verdict(report.is_pass(), text)
        }
        Command::Compose { t, s } => {
            let r = hcompose(&cx.matrix(t)?, &cx.matrix(s)?)?;
            Outcome::ok(cx.emit(&format!("{t}_{s}"), Item::Matrix(r), &[], json!({})))
        }
        Command::Tensor { a, b } => {
            let name = format!("{a}_x_{b}");
            let item = match (cx.item(a)?, cx.item(b)?) {
                (Item::Category(x), Item::Category(y)) => Item::Category(tensor_categories(x, y)?),
                (Item::Cocategory(x), Item::Cocategory(y)) => Item::Cocategory(tensor_cocategories(x, y)?),
                (Item::Module(x), Item::Module(y)) => Item::Module(tensor_modules(x, y)?),
                (Item::Comodule(x), Item::Comodule(y)) => Item::Comodule(tensor_comodules(x, y)?),
                _ => Item::Matrix(tensor_matrices(&cx.matrix(a)?, &cx.matrix(b)?)?),
            };
            Outcome::ok(cx.emit(&name, item, &[], json!({})))
        }
        Command::Hom { s, t } => {
            let name = format!("hom_{s}_{t}");
            let (item, trace) = match (cx.item(s)?, cx.item(t)?) {
                (Item::Cocategory(c), Item::Cocategory(d)) => {
                    let (h, trace) = hom_cocategories(c, d, &limits)?;
                    (Item::Cocategory(h), trace)
                }
                (Item::Comodule(k), Item::Comodule(l)) => {
                    let (h, trace) = hom_comodules(k, l, &limits)?;
                    (Item::Comodule(h), trace)
                }
                _ => (Item::Matrix(internal_hom(&cx.matrix(s)?, &cx.matrix(t)?, &limits)?), Vec::new()),
            };
            let notes = steps_note(&trace);
            Outcome::ok(cx.emit(&name, item, &notes, json!({ "trace": trace })))
        }
        Command::Convolve { c, a } => {
            let name = format!("conv_{c}_{a}");
            let item = match (cx.item(c)?, cx.item(a)?) {
                (Item::Cocategory(c), Item::Category(a)) => Item::Category(convolution_category(c, a, &limits)?),
                (Item::Comodule(k), Item::Module(m)) => Item::Module(convolution_module(k, m, &limits)?),
                (x, y) => {
                    return Err(Error::Validation(format!(
                        "convolve takes a cocategory and a category, or a comodule and a module; got a {} and a {}",
                        x.kind(),
                        y.kind()
                    )))
                }
            };
            Outcome::ok(cx.emit(&name, item, &[], json!({})))
        }
        Command::Star { g } => {
            let (a, rounds) = star_closure(&cx.matrix(g)?)?;
            let notes = vec![format!("squaring rounds: {rounds}")];
            Outcome::ok(cx.emit(&format!("star_{g}"), Item::Category(a), &notes, json!({ "rounds": rounds })))
        }
        Command::Restrict { f, n, over } => {
            let f_ = cx.function(f)?;
            let n_ = cx.module(n)?;
            let a = match over {
                Some(a) => cx.category(a)?,
                None => pullback_category(&f_, n_.over())?,
            };
            let r = restrict_scalars(&f_, &a, &n_)?;
            Outcome::ok(cx.emit(&format!("{n}_along_{f}"), Item::Module(r), &[], json!({})))
        }
        Command::Corestrict { f, k, over } => {
            let f_ = cx.function(f)?;
            let k_ = cx.comodule(k)?;
            let d = match over {
                Some(d) => cx.cocategory(d)?,
                None => pushforward_cocategory(&f_, k_.over())?,
            };
            let r = corestrict_scalars(&f_, &k_, &d)?;
            Outcome::ok(cx.emit(&format!("{k}_along_{f}"), Item::Comodule(r), &[], json!({})))
        }
        Command::Measure { a, b, bound } => {
            let (a_, b_) = (cx.category(a)?, cx.category(b)?);
            let mut rep = sweedler::measure_p(&a_, &b_, &limits)?;
            if let Some(n) = bound {
                rep.adjunctions = Some(verify_adjunctions(Instance::P(&a_, &b_), *n, &limits)?);
            }
            let mut notes = steps_note(&rep.trace);
            notes.extend(adjunction_note(&rep.adjunctions));
            let text = cx.emit(
                &format!("P_{a}_{b}"),
                Item::Cocategory(rep.output.clone()),
                &notes,
                adjunction_json(&rep.trace, &rep.adjunctions),
            );
            Outcome::verdict(pass_through(&rep.adjunctions), text)
        }
        Command::Comeasure { m, n, bound } => {
            let (m_, n_) = (cx.module(m)?, cx.module(n)?);
            let mut rep = sweedler::comeasure_q(&m_, &n_, &limits)?;
            if let Some(k) = bound {
                rep.adjunctions = Some(verify_adjunctions(Instance::Q(&m_, &n_), *k, &limits)?);
            }
            let mut notes = steps_note(&rep.trace);
            notes.extend(adjunction_note(&rep.adjunctions));
            let text = cx.emit(
                &format!("Q_{m}_{n}"),
                Item::Comodule(rep.output.clone()),
                &notes,
                adjunction_json(&rep.trace, &rep.adjunctions),
            );
            Outcome::verdict(pass_through(&rep.adjunctions), text)
        }
        Command::Tensorcat { c, b, bound } => {
            let (c_, b_) = (cx.cocategory(c)?, cx.category(b)?);
            let mut rep = sweedler::tensor_cat(&c_, &b_)?;
            if let Some(k) = bound {
                rep.adjunctions = Some(verify_adjunctions(Instance::TensorCat(&c_, &b_), *k, &limits)?);
            }
            let mut notes = vec![format!("squaring rounds: {}", rep.max_steps())];
            notes.extend(adjunction_note(&rep.adjunctions));
            let text = cx.emit(
                &format!("{c}_tensor_{b}"),
                Item::Category(rep.output.clone()),
                &notes,
                adjunction_json(&rep.trace, &rep.adjunctions),
            );
            Outcome::verdict(pass_through(&rep.adjunctions), text)
        }
        Command::Tensormod { k, n, bound } => {
            let (k_, n_) = (cx.comodule(k)?, cx.module(n)?);
            let mut rep = sweedler::tensor_mod(&k_, &n_)?;
            if let Some(b) = bound {
                rep.adjunctions = Some(verify_adjunctions(Instance::TensorMod(&k_, &n_), *b, &limits)?);
            }
            let notes = adjunction_note(&rep.adjunctions);
            let text = cx.emit(
                &format!("{k}_tensor_{n}"),
                Item::Module(rep.output.clone()),
                &notes,
                adjunction_json(&rep.trace, &rep.adjunctions),
            );
            Outcome::verdict(pass_through(&rep.adjunctions), text)
        }
        Command::Verify {
            suite,
            bound,
            samples,
            max_size,
        } => {
            let suite: Suite = suite.parse()?;
            let bound = bound.or(ws.config.bound).unwrap_or(2);
            let mut cfg = match cli.seed {
                None => SuiteConfig::exhaustive(bound),
                Some(seed) => SuiteConfig::random(
                    bound,
                    RandomMode {
                        seed,
                        samples: *samples,
                        max_size: *max_size,
                    },
                ),
            };
            cfg.limits = limits;
            let result = lawcheck::run_suite(suite, q, &cfg)?;
            let text = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&serde_json::to_value(&result).expect("json")).expect("json"))
            } else {
                format!("{result}\n")
            };
            Outcome::verdict(result.is_pass(), text)
        }
        Command::Replay { case } => {
            let text = std::fs::read_to_string(case)
                .map_err(|e| Error::Validation(format!("cannot read {}: {e}", case.display())))?;
            let case: lawcheck::Case = serde_json::from_str(&text)
                .map_err(|e| Error::Validation(format!("{} is not a recorded case: {e}", case.display())))?;
            let holds = lawcheck::replay(q, &case)?;
            let verdict = if holds { "holds" } else { "fails" };
            Outcome::verdict(holds, format!("{} / {}: law {verdict}\n", case.suite, case.law))
        }
    };
    Ok(out)
}

fn steps_note(trace: &[usize]) -> Vec<String> {
    if trace.is_empty() {
        Vec::new()
    } else {
        vec![format!("fixpoint steps: max {} over {} entries", trace.iter().max().unwrap_or(&0), trace.len())]
    }
}

fn check_item(item: &Item) -> Result<Report> {
    use crate::cat::{verify_category, verify_cocategory};
    use crate::module::{verify_comodule, verify_module};
    Ok(match item {
        Item::Category(a) => verify_category(a.hom())?,
        Item::Cocategory(c) => verify_cocategory(c.quantale(), c.objects(), c.weights())?,
        Item::Module(m) => verify_module(m.over(), m.mat())?,
        Item::Comodule(k) => verify_comodule(k.over(), k.mat())?,
        Item::Set(_) => Report::new("set"),
        Item::Matrix(_) => Report::new("matrix"),
        Item::Function(_) => Report::new("function"),
    })
}

/// Entry point shared by the binary: runs, prints, and returns the exit code.
pub fn main_with_args(args: Vec<OsString>) -> i32 {
    let o = run(args);
    print!("{}", o.stdout);
    eprint!("{}", o.stderr);
    o.code
}

