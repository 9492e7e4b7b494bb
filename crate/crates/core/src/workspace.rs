//! Workspace files: one quantale plus named sets, matrices, (co)categories,
//! (co)modules and functions.
//!
//! ```text
//! quantale lukasiewicz 3
//! set X { lo hi }
//! matrix M : X -> X { hi lo = 1/2; default = bottom }
//! category A on X { lo hi = 0 }
//! cocategory C on X { lo = 1; hi = 0 }
//! function f : X -> X { lo = hi; hi = hi }
//! ```
//!
//! Matrix entries are keyed target first. Every structure is verified when
//! it is loaded.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::cat::{verify_category, verify_cocategory, QCategory, QCocategory};
use crate::error::{Error, Result};
use crate::finset::{quote_label, FinFn, FinSet};
use crate::module::{verify_comodule, verify_module, QComodule, QModule};
use crate::quantale::{BuiltinKind, Elem, Quantale};
use crate::report::Report;
use crate::vmat::VMatrix;

#[derive(Clone, Debug)]
pub enum Item {
    Set(FinSet),
    Matrix(VMatrix),
    Category(QCategory),
    Cocategory(QCocategory),
    Module(QModule),
    Comodule(QComodule),
    Function(FinFn),
}

impl Item {
    pub fn kind(&self) -> &'static str {
        match self {
            Item::Set(_) => "set",
            Item::Matrix(_) => "matrix",
            Item::Category(_) => "category",
            Item::Cocategory(_) => "cocategory",
            Item::Module(_) => "module",
            Item::Comodule(_) => "comodule",
            Item::Function(_) => "function",
        }
    }

    /// The underlying matrix, for items that have one.
    pub fn matrix(&self) -> Option<VMatrix> {
        match self {
            Item::Matrix(m) => Some(m.clone()),
            Item::Category(a) => Some(a.hom().clone()),
            Item::Cocategory(c) => Some(c.to_matrix()),
            Item::Module(m) => Some(m.mat().clone()),
            Item::Comodule(k) => Some(k.mat().clone()),
            Item::Set(_) | Item::Function(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub cap: Option<u64>,
    pub bound: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Workspace {
    quantale: Arc<Quantale>,
    /// Law check of the quantale. Table quantales are loaded even when this
    /// fails, so the law checkers can be exercised on them.
    quantale_report: Report,
    items: BTreeMap<String, Item>,
    order: Vec<String>,
    pub config: Config,
}

impl Workspace {
    pub fn new(q: Arc<Quantale>) -> Self {
        Workspace {
            quantale_report: q.verify(),
            quantale: q,
            items: BTreeMap::new(),
            order: Vec::new(),
            config: Config::default(),
        }
    }

    pub fn quantale(&self) -> &Arc<Quantale> {
        &self.quantale
    }

    pub fn quantale_report(&self) -> &Report {
        &self.quantale_report
    }

    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.get(name)
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }

    pub fn insert(&mut self, name: impl Into<String>, item: Item) -> Result<()> {
        let name = name.into();
        if self.items.contains_key(&name) {
            return Err(Error::Validation(format!("`{name}` is already defined")));
        }
        self.order.push(name.clone());
        self.items.insert(name, item);
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text)?.workspace()
    }
}

// ---- tokens ----

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Str(String),
    Sym(char),
    Arrow,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_sym(c: char) -> bool {
    matches!(c, '{' | '}' | ';' | '=' | ':')
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    let err = |line, col, msg: String| Error::Parse { line, col, msg };
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
        } else if c == '"' {
            bump(&mut chars);
            let mut s = String::new();
            loop {
                match bump(&mut chars) {
                    None => return Err(err(l0, c0, "unterminated string".into())),
                    Some('"') => break,
                    Some('\\') => match bump(&mut chars) {
                        Some(e @ ('"' | '\\')) => s.push(e),
                        Some('n') => s.push('\n'),
                        _ => return Err(err(l0, c0, "bad escape in string".into())),
                    },
                    Some(ch) => s.push(ch),
                }
            }
            out.push(Token {
                tok: Tok::Str(s),
                line: l0,
                col: c0,
            });
        } else if is_sym(c) {
            bump(&mut chars);
            out.push(Token {
                tok: Tok::Sym(c),
                line: l0,
                col: c0,
            });
        } else if c == '→' {
            bump(&mut chars);
            out.push(Token {
                tok: Tok::Arrow,
                line: l0,
                col: c0,
            });
        } else {
            let mut s = String::new();
            while let Some(&ch) = chars.peek() {
                if ch.is_whitespace() || is_sym(ch) || matches!(ch, '"' | '#' | '→') {
                    break;
                }
                if ch == '-' {
                    let mut ahead = chars.clone();
                    ahead.next();
                    if ahead.peek() == Some(&'>') {
                        break;
                    }
                }
                s.push(ch);
                bump(&mut chars);
            }
            if s.is_empty() {
                // `->`
                bump(&mut chars);
                bump(&mut chars);
                out.push(Token {
                    tok: Tok::Arrow,
                    line: l0,
                    col: c0,
                });
            } else {
                out.push(Token {
                    tok: Tok::Word(s),
                    line: l0,
                    col: c0,
                });
            }
        }
    }
    Ok(out)
}

// ---- parser ----

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
    q: Option<Arc<Quantale>>,
    ws: Option<Workspace>,
    config: Config,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Word(w) => format!("`{w}`"),
        Tok::Str(s) => format!("\"{s}\""),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Arrow => "`->`".into(),
    }
}

fn law_message(what: &str, r: &Report) -> String {
    let parts: Vec<String> = r
        .violations
        .iter()
        .map(|v| format!("{} at ({})", v.law, v.witness.join(", ")))
        .collect();
    format!("{what} rejected: {}", parts.join("; "))
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let lines = text.lines().count().max(1);
        let last = text.lines().last().map_or(0, |l| l.chars().count());
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            end: (lines, last + 1),
            q: None,
            ws: None,
            config: Config::default(),
        })
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.col))
    }

    fn error_at(&self, (line, col): (usize, usize), msg: impl Into<String>) -> Error {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        self.error_at(self.here(), msg)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Result<Tok> {
        let t = self
            .toks
            .get(self.pos)
            .map(|t| t.tok.clone())
            .ok_or_else(|| self.error("unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let at = self.here();
        let got = self.next()?;
        if got == want {
            Ok(())
        } else {
            Err(self.error_at(at, format!("expected {}, found {}", describe(&want), describe(&got))))
        }
    }

    fn sym(&mut self, c: char) -> Result<()> {
        self.expect(Tok::Sym(c))
    }

    /// A name or label: a bare word or a quoted string.
    fn ident(&mut self) -> Result<String> {
        let at = self.here();
        match self.next()? {
            Tok::Word(w) | Tok::Str(w) => Ok(w),
            other => Err(self.error_at(at, format!("expected a name, found {}", describe(&other)))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        self.expect(Tok::Word(kw.into()))
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Word(w)) if w == kw)
    }

    fn number(&mut self) -> Result<u64> {
        let at = self.here();
        let w = self.ident()?;
        w.parse().map_err(|_| self.error_at(at, format!("expected a number, found `{w}`")))
    }

    fn ws(&mut self) -> Result<&mut Workspace> {
        let at = self.here();
        match self.ws.as_mut() {
            Some(ws) => Ok(ws),
            None => Err(Error::Parse {
                line: at.0,
                col: at.1,
                msg: "declare the quantale first".into(),
            }),
        }
    }

    fn quantale(&self) -> Arc<Quantale> {
        self.q.clone().expect("checked by ws()")
    }

    fn value(&mut self) -> Result<Elem> {
        let at = self.here();
        let tok = self.ident()?;
        self.ws()?;
        self.quantale().lookup(&tok).map_err(|e| self.error_at(at, e.to_string()))
    }

    fn lookup(&mut self, kind: &str, at: (usize, usize), name: &str) -> Result<Item> {
        let item = self.ws()?.get(name).cloned();
        match item {
            None => Err(self.error_at(at, format!("unknown {kind} `{name}`"))),
            Some(it) if it.kind() == kind || (kind == "matrix" && it.matrix().is_some()) => Ok(it),
            Some(it) => Err(self.error_at(at, format!("`{name}` is a {}, expected a {kind}", it.kind()))),
        }
    }

    fn set_ref(&mut self) -> Result<FinSet> {
        let at = self.here();
        let name = self.ident()?;
        match self.lookup("set", at, &name)? {
            Item::Set(s) => Ok(s),
            _ => unreachable!(),
        }
    }

    fn define(&mut self, at: (usize, usize), name: String, item: Item) -> Result<()> {
        self.ws()?.insert(name, item).map_err(|e| match e {
            Error::Validation(m) => Error::Parse {
                line: at.0,
                col: at.1,
                msg: m,
            },
            e => e,
        })
    }

    fn workspace(mut self) -> Result<Workspace> {
        while self.peek().is_some() {
            let at = self.here();
            let kw = match self.next()? {
                Tok::Word(w) => w,
                other => return Err(self.error_at(at, format!("expected a declaration, found {}", describe(&other)))),
            };
            match kw.as_str() {
                "quantale" => self.decl_quantale(at)?,
                "config" => self.decl_config()?,
                "set" => self.decl_set()?,
                "matrix" => self.decl_matrix()?,
                "category" => self.decl_category()?,
                "cocategory" => self.decl_cocategory()?,
                "module" => self.decl_module(false)?,
                "comodule" => self.decl_module(true)?,
                "function" => self.decl_function()?,
                other => return Err(self.error_at(at, format!("unknown declaration `{other}`"))),
            }
            self.eat(&Tok::Sym(';'));
        }
        let mut ws = self.ws.ok_or(Error::Parse {
            line: 1,
            col: 1,
            msg: "workspace declares no quantale".into(),
        })?;
        ws.config = self.config;
        Ok(ws)
    }

    fn decl_quantale(&mut self, at: (usize, usize)) -> Result<()> {
        if self.q.is_some() {
            return Err(self.error_at(at, "a workspace has exactly one quantale"));
        }
        let kat = self.here();
        let kind = self.ident()?;
        let q = if kind == "table" {
            self.quantale_table()?
        } else {
            let k: BuiltinKind = kind
                .parse()
                .map_err(|_| self.error_at(kat, format!("unknown quantale `{kind}`")))?;
            let n = if k == BuiltinKind::Bool {
                2
            } else {
                self.number()? as usize
            };
            Quantale::builtin(k, n).map_err(|e| self.error_at(kat, e.to_string()))?
        };
        let q = Arc::new(q);
        self.q = Some(q.clone());
        self.ws = Some(Workspace::new(q));
        Ok(())
    }

    fn quantale_table(&mut self) -> Result<Quantale> {
        let start = self.here();
        self.sym('{')?;
        let mut labels: Vec<String> = Vec::new();
        let (mut bottom, mut unit) = (None, None);
        let mut tables: [BTreeMap<(usize, usize), usize>; 2] = Default::default();
        while !self.eat(&Tok::Sym('}')) {
            let at = self.here();
            let kw = self.ident()?;
            let elem = |p: &Parser, at, s: &str| {
                labels
                    .iter()
                    .position(|l| l == s)
                    .ok_or_else(|| p.error_at(at, format!("`{s}` is not a listed element")))
            };
            match kw.as_str() {
                "elements" => {
                    while !matches!(self.peek(), Some(Tok::Sym(';' | '}')) | None) {
                        let at = self.here();
                        let l = self.ident()?;
                        if labels.contains(&l) {
                            return Err(self.error_at(at, format!("duplicate element `{l}`")));
                        }
                        labels.push(l);
                    }
                }
                "bottom" | "unit" => {
                    let at = self.here();
                    let s = self.ident()?;
                    let e = elem(self, at, &s)?;
                    if kw == "bottom" {
                        bottom = Some(e);
                    } else {
                        unit = Some(e);
                    }
                }
                "join" | "tensor" => {
                    let mut abc = [0; 3];
                    for (i, slot) in abc.iter_mut().enumerate() {
                        if i == 2 {
                            self.sym('=')?;
                        }
                        let at = self.here();
                        let s = self.ident()?;
                        *slot = elem(self, at, &s)?;
                    }
                    let t = &mut tables[usize::from(kw == "tensor")];
                    if t.insert((abc[0], abc[1]), abc[2]).is_some_and(|old| old != abc[2]) {
                        return Err(self.error_at(at, format!("conflicting {kw} entries")));
                    }
                }
                other => return Err(self.error_at(at, format!("unknown table clause `{other}`"))),
            }
            if !self.eat(&Tok::Sym(';')) && self.peek() != Some(&Tok::Sym('}')) {
                return Err(self.error("expected `;`"));
            }
        }
        let n = labels.len();
        let mut full = Vec::new();
        for (name, t) in ["join", "tensor"].iter().zip(&tables) {
            let mut rows = vec![vec![0; n]; n];
            for (a, row) in rows.iter_mut().enumerate() {
                for (b, cell) in row.iter_mut().enumerate() {
                    *cell = *t.get(&(a, b)).or_else(|| t.get(&(b, a))).ok_or_else(|| {
                        self.error_at(start, format!("{name} table has no entry for {} {}", labels[a], labels[b]))
                    })?;
                }
            }
            full.push(rows);
        }
        let bottom = bottom.ok_or_else(|| self.error_at(start, "table quantale needs `bottom`"))?;
        let unit = unit.ok_or_else(|| self.error_at(start, "table quantale needs `unit`"))?;
        let tensor = full.pop().expect("two tables");
        let join = full.pop().expect("two tables");
        Quantale::from_tables_unchecked("table", labels, join, bottom, tensor, unit)
            .map_err(|e| self.error_at(start, e.to_string()))
    }

    fn decl_config(&mut self) -> Result<()> {
        self.sym('{')?;
        while !self.eat(&Tok::Sym('}')) {
            let at = self.here();
            let key = self.ident()?;
            self.sym('=')?;
            let v = self.number()?;
            match key.as_str() {
                "cap" => self.config.cap = Some(v),
                "bound" => self.config.bound = Some(v as usize),
                other => return Err(self.error_at(at, format!("unknown config key `{other}`"))),
            }
            self.eat(&Tok::Sym(';'));
        }
        Ok(())
    }

    fn decl_set(&mut self) -> Result<()> {
        let at = self.here();
        let name = self.ident()?;
        self.sym('{')?;
        let mut elems: Vec<String> = Vec::new();
        while !self.eat(&Tok::Sym('}')) {
            if self.eat(&Tok::Sym(';')) {
                continue;
            }
            let eat = self.here();
            let e = self.ident()?;
            if elems.contains(&e) {
                return Err(self.error_at(eat, format!("duplicate element `{e}` in set {name}")));
            }
            elems.push(e);
        }
        let s = FinSet::new(name.clone(), elems).map_err(|e| self.error_at(at, e.to_string()))?;
        self.define(at, name, Item::Set(s))
    }

    fn label_in(&self, set: &FinSet, at: (usize, usize), label: &str) -> Result<usize> {
        set.index_of(label)
            .map_err(|_| self.error_at(at, format!("`{label}` is not an element of {}", set.name())))
    }

    /// `{ t s = q; ...; default = q }` over `tgt × src`. Unlisted diagonal
    /// entries take `diagonal` when given.
    fn entries(&mut self, src: &FinSet, tgt: &FinSet, diagonal: Option<Elem>) -> Result<Vec<Elem>> {
        self.sym('{')?;
        let q = self.quantale();
        let mut given: BTreeMap<(usize, usize), Elem> = BTreeMap::new();
        let mut default = q.bottom();
        while !self.eat(&Tok::Sym('}')) {
            if self.eat(&Tok::Sym(';')) {
                continue;
            }
            if self.is_keyword("default") && self.toks.get(self.pos + 1).map(|t| &t.tok) == Some(&Tok::Sym('=')) {
                self.pos += 2;
                default = self.value()?;
                continue;
            }
            let at = self.here();
            let t = self.ident()?;
            let tat = self.here();
            let s = self.ident()?;
            self.sym('=')?;
            let v = self.value()?;
            let key = (self.label_in(tgt, at, &t)?, self.label_in(src, tat, &s)?);
            if given.insert(key, v).is_some() {
                return Err(self.error_at(at, format!("entry {t} {s} given twice")));
            }
        }
        let mut out = vec![default; tgt.len() * src.len()];
        for y in 0..tgt.len() {
            for x in 0..src.len() {
                out[y * src.len() + x] = match (given.get(&(y, x)), diagonal) {
                    (Some(&v), _) => v,
                    (None, Some(d)) if x == y => d,
                    _ => default,
                };
            }
        }
        Ok(out)
    }

    fn decl_matrix(&mut self) -> Result<()> {
        let at = self.here();
        let name = self.ident()?;
        self.sym(':')?;
        let src = self.set_ref()?;
        self.expect(Tok::Arrow)?;
        let tgt = self.set_ref()?;
        let entries = self.entries(&src, &tgt, None)?;
        let m = VMatrix::new(self.quantale(), src, tgt, entries).map_err(|e| self.error_at(at, e.to_string()))?;
        self.define(at, name, Item::Matrix(m))
    }

    /// `from M`, checked against the expected carriers.
    fn matrix_from(&mut self, src: &FinSet, tgt: &FinSet) -> Result<VMatrix> {
        self.keyword("from")?;
        let at = self.here();
        let name = self.ident()?;
        let m = self.lookup("matrix", at, &name)?.matrix().expect("matrix-like");
        m.with_carriers(src, tgt).map_err(|_| {
            self.error_at(
                at,
                format!(
                    "`{name}` is {}⇸{}, expected {}⇸{}",
                    m.src().name(),
                    m.tgt().name(),
                    src.name(),
                    tgt.name()
                ),
            )
        })
    }

    fn decl_category(&mut self) -> Result<()> {
        let at = self.here();
        let name = self.ident()?;
        self.keyword("on")?;
        let x = self.set_ref()?;
        let q = self.quantale();
        let hom = if self.is_keyword("from") {
            self.matrix_from(&x, &x)?
        } else if self.peek() == Some(&Tok::Sym('{')) {
            let e = self.entries(&x, &x, Some(q.unit()))?;
            VMatrix::new(q.clone(), x.clone(), x.clone(), e)?
        } else {
            VMatrix::identity(&q, &x)
        };
        let r = verify_category(&hom)?;
        if !r.is_pass() {
            return Err(self.error_at(at, law_message(&format!("category {name}"), &r)));
        }
        self.define(at, name, Item::Category(QCategory::new(hom)?))
    }

    fn decl_cocategory(&mut self) -> Result<()> {
        let at = self.here();
        let name = self.ident()?;
        self.keyword("on")?;
        let z = self.set_ref()?;
        let q = self.quantale();
        let weights = if self.is_keyword("from") {
            let m = self.matrix_from(&z, &z)?;
            let c = QCocategory::from_matrix(&m).map_err(|e| match e {
                Error::Law(r) => self.error_at(at, law_message(&format!("cocategory {name}"), &r)),
                e => e,
            })?;
            c.weights().to_vec()
        } else {
            self.sym('{')?;
            let mut given: BTreeMap<usize, Elem> = BTreeMap::new();
            let mut default = q.bottom();
            while !self.eat(&Tok::Sym('}')) {
                if self.eat(&Tok::Sym(';')) {
                    continue;
                }
                let eat = self.here();
                let key = self.ident()?;
                self.sym('=')?;
                let v = self.value()?;
                if key == "default" && z.index_of("default").is_err() {
                    default = v;
                    continue;
                }
                let i = self.label_in(&z, eat, &key)?;
                if given.insert(i, v).is_some() {
                    return Err(self.error_at(eat, format!("weight of {key} given twice")));
                }
            }
            (0..z.len()).map(|i| given.get(&i).copied().unwrap_or(default)).collect()
        };
        let r = verify_cocategory(&q, &z, &weights)?;
        if !r.is_pass() {
            return Err(self.error_at(at, law_message(&format!("cocategory {name}"), &r)));
        }
        self.define(at, name, Item::Cocategory(QCocategory::new(q, z, weights)?))
    }

    /// `module M : U -> A (from N | { x u = q; ... })`, and the comodule
    /// form over a cocategory.
    fn decl_module(&mut self, co: bool) -> Result<()> {
        let at = self.here();
        let name = self.ident()?;
        self.sym(':')?;
        let src = self.set_ref()?;
        self.expect(Tok::Arrow)?;
        let oat = self.here();
        let over_name = self.ident()?;
        let over = self.lookup(if co { "cocategory" } else { "category" }, oat, &over_name)?;
        let objects = match &over {
            Item::Category(a) => a.objects().clone(),
            Item::Cocategory(c) => c.objects().clone(),
            _ => unreachable!(),
        };
        let mat = if self.is_keyword("from") {
            self.matrix_from(&src, &objects)?
        } else {
            let e = self.entries(&src, &objects, None)?;
            VMatrix::new(self.quantale(), src, objects, e)?
        };
        let item = match over {
            Item::Category(a) => {
                let r = verify_module(&a, &mat)?;
                if !r.is_pass() {
                    return Err(self.error_at(at, law_message(&format!("module {name}"), &r)));
                }
                Item::Module(QModule::new(a, mat)?)
            }
            Item::Cocategory(c) => {
                let r = verify_comodule(&c, &mat)?;
                if !r.is_pass() {
                    return Err(self.error_at(at, law_message(&format!("comodule {name}"), &r)));
                }
                Item::Comodule(QComodule::new(c, mat)?)
            }
            _ => unreachable!(),
        };
        self.define(at, name, item)
    }

    fn decl_function(&mut self) -> Result<()> {
        let at = self.here();
        let name = self.ident()?;
        self.sym(':')?;
        let dom = self.set_ref()?;
        self.expect(Tok::Arrow)?;
        let cod = self.set_ref()?;
        self.sym('{')?;
        let mut map: Vec<Option<usize>> = vec![None; dom.len()];
        while !self.eat(&Tok::Sym('}')) {
            if self.eat(&Tok::Sym(';')) {
                continue;
            }
            let aat = self.here();
            let a = self.ident()?;
            self.sym('=')?;
            let bat = self.here();
            let b = self.ident()?;
            let i = self.label_in(&dom, aat, &a)?;
            let j = self.label_in(&cod, bat, &b)?;
            if map[i].replace(j).is_some_and(|old| old != j) {
                return Err(self.error_at(aat, format!("{a} is mapped twice")));
            }
        }
        let missing: Vec<&str> = (0..dom.len()).filter(|&i| map[i].is_none()).map(|i| dom.label(i)).collect();
        if !missing.is_empty() {
            return Err(self.error_at(at, format!("function {name} is not total: no value for {}", missing.join(", "))));
        }
        let f = FinFn::new(dom, cod, map.into_iter().map(|v| v.expect("total")).collect())?;
        self.define(at, name, Item::Function(f))
    }
}

// ---- emission ----

/// Writes structures back in workspace syntax, declaring the sets they need.
pub struct Emitter {
    q: Arc<Quantale>,
    out: String,
    sets: Vec<(String, FinSet)>,
    used: Vec<String>,
}

impl Emitter {
    pub fn new(q: &Arc<Quantale>) -> Self {
        Emitter {
            q: q.clone(),
            out: format!("{}\n", q.to_workspace()),
            sets: Vec::new(),
            used: Vec::new(),
        }
    }

    pub fn comment(&mut self, line: &str) {
        for l in line.lines() {
            let _ = writeln!(self.out, "# {l}");
        }
    }

    fn fresh(&mut self, base: &str) -> String {
        let mut name = if base.is_empty() { "S".to_string() } else { base.to_string() };
        while self.used.contains(&name) {
            name.push('\'');
        }
        self.used.push(name.clone());
        name
    }

    fn set(&mut self, s: &FinSet) -> String {
        if let Some((n, _)) = self.sets.iter().find(|(_, t)| t == s && t.name() == s.name()) {
            return quote_label(n);
        }
        let name = self.fresh(s.name());
        let elems: Vec<String> = s.labels().iter().map(|l| quote_label(l)).collect();
        let _ = writeln!(self.out, "set {} {{ {} }}", quote_label(&name), elems.join(" "));
        self.sets.push((name.clone(), s.clone()));
        quote_label(&name)
    }

    fn label(&self, e: Elem) -> String {
        quote_label(self.q.label(e))
    }

    fn body(&self, m: &VMatrix, keep: impl Fn(usize, usize, Elem) -> bool) -> String {
        let mut lines = Vec::new();
        for y in 0..m.tgt().len() {
            for x in 0..m.src().len() {
                let v = m.get(y, x);
                if keep(y, x, v) {
                    lines.push(format!(
                        "  {} {} = {};",
                        quote_label(m.tgt().label(y)),
                        quote_label(m.src().label(x)),
                        self.label(v)
                    ));
                }
            }
        }
        if lines.is_empty() {
            "{ }".into()
        } else {
            format!("{{\n{}\n}}", lines.join("\n"))
        }
    }

    fn nonzero(&self, m: &VMatrix) -> String {
        let bot = self.q.bottom();
        self.body(m, |_, _, v| v != bot)
    }

    /// Emits `item` under `name` (made unique) and returns the name used.
    pub fn item(&mut self, name: &str, item: &Item) -> String {
        match item {
            Item::Set(s) => {
                // Sets are declared on first use; force one under this name.
                let n = self.fresh(name);
                let elems: Vec<String> = s.labels().iter().map(|l| quote_label(l)).collect();
                let _ = writeln!(self.out, "set {} {{ {} }}", quote_label(&n), elems.join(" "));
                self.sets.push((n.clone(), s.clone()));
                n
            }
            Item::Matrix(m) => {
                let (x, y) = (self.set(m.src()), self.set(m.tgt()));
                let n = self.fresh(name);
                let body = self.nonzero(m);
                let _ = writeln!(self.out, "matrix {} : {x} -> {y} {body}", quote_label(&n));
                n
            }
            Item::Category(a) => {
                let x = self.set(a.objects());
                let n = self.fresh(name);
                let bot = self.q.bottom();
                let body = self.body(a.hom(), |y, x, v| y == x || v != bot);
                let _ = writeln!(self.out, "category {} on {x} {body}", quote_label(&n));
                n
            }
            Item::Cocategory(c) => {
                let z = self.set(c.objects());
                let n = self.fresh(name);
                let lines: Vec<String> = (0..c.objects().len())
                    .map(|i| format!("  {} = {};", quote_label(c.objects().label(i)), self.label(c.weight(i))))
                    .collect();
                let body = if lines.is_empty() {
                    "{ }".to_string()
                } else {
                    format!("{{\n{}\n}}", lines.join("\n"))
                };
                let _ = writeln!(self.out, "cocategory {} on {z} {body}", quote_label(&n));
                n
            }
            Item::Module(m) => {
                let over = self.item(&format!("{name}_over"), &Item::Category(m.over().clone()));
                let u = self.set(m.src());
                let n = self.fresh(name);
                let body = self.nonzero(m.mat());
                let _ = writeln!(self.out, "module {} : {u} -> {} {body}", quote_label(&n), quote_label(&over));
                n
            }
            Item::Comodule(k) => {
                let over = self.item(&format!("{name}_over"), &Item::Cocategory(k.over().clone()));
                let v = self.set(k.src());
                let n = self.fresh(name);
                let body = self.nonzero(k.mat());
                let _ = writeln!(self.out, "comodule {} : {v} -> {} {body}", quote_label(&n), quote_label(&over));
                n
            }
            Item::Function(f) => {
                let (x, y) = (self.set(f.dom()), self.set(f.cod()));
                let n = self.fresh(name);
                let lines: Vec<String> = (0..f.dom().len())
                    .map(|i| format!("  {} = {};", quote_label(f.dom().label(i)), quote_label(f.cod().label(f.apply(i)))))
                    .collect();
                let body = if lines.is_empty() {
                    "{ }".to_string()
                } else {
                    format!("{{\n{}\n}}", lines.join("\n"))
                };
                let _ = writeln!(self.out, "function {} : {x} -> {y} {body}", quote_label(&n));
                n
            }
        }
    }

    pub fn finish(self) -> String {
        self.out
    }
}

/// A standalone workspace holding `item` under `name`.
pub fn emit(q: &Arc<Quantale>, name: &str, item: &Item) -> String {
    let mut e = Emitter::new(q);
    e.item(name, item);
    e.finish()
}

// ---- JSON ----

fn set_json(s: &FinSet) -> Value {
    json!({ "name": s.name(), "elems": s.labels() })
}

fn entries_json(m: &VMatrix, keep: impl Fn(usize, usize) -> bool) -> Value {
    let q = m.quantale();
    let mut rows: Vec<(String, String, String)> = Vec::new();
    for y in 0..m.tgt().len() {
        for x in 0..m.src().len() {
            if keep(y, x) {
                rows.push((m.tgt().label(y).into(), m.src().label(x).into(), q.label(m.get(y, x)).into()));
            }
        }
    }
    rows.sort();
    Value::Array(rows.into_iter().map(|(t, s, v)| json!({ "t": t, "s": s, "q": v })).collect())
}

/// Structured form of an item. Object keys come out sorted and entries are
/// sorted by target then source label.
pub fn to_json(name: &str, item: &Item) -> Value {
    match item {
        Item::Set(s) => json!({ "kind": "set", "name": name, "elems": s.labels() }),
        Item::Matrix(m) => json!({
            "kind": "matrix", "name": name, "src": set_json(m.src()), "tgt": set_json(m.tgt()),
            "entries": entries_json(m, |_, _| true),
        }),
        Item::Category(a) => json!({
            "kind": "category", "name": name, "src": set_json(a.objects()), "tgt": set_json(a.objects()),
            "entries": entries_json(a.hom(), |_, _| true),
        }),
        Item::Cocategory(c) => json!({
            "kind": "cocategory", "name": name, "src": set_json(c.objects()), "tgt": set_json(c.objects()),
            "entries": entries_json(&c.to_matrix(), |y, x| y == x),
        }),
        Item::Module(m) => json!({
            "kind": "module", "name": name, "src": set_json(m.src()), "tgt": set_json(m.over().objects()),
            "entries": entries_json(m.mat(), |_, _| true),
            "over": to_json(&format!("{name}_over"), &Item::Category(m.over().clone())),
        }),
        Item::Comodule(k) => json!({
            "kind": "comodule", "name": name, "src": set_json(k.src()), "tgt": set_json(k.over().objects()),
            "entries": entries_json(k.mat(), |_, _| true),
            "over": to_json(&format!("{name}_over"), &Item::Cocategory(k.over().clone())),
        }),
        Item::Function(f) => {
            let mut rows: Vec<(String, String)> = (0..f.dom().len())
                .map(|i| (f.cod().label(f.apply(i)).to_string(), f.dom().label(i).to_string()))
                .collect();
            rows.sort();
            json!({
                "kind": "function", "name": name, "src": set_json(f.dom()), "tgt": set_json(f.cod()),
                "entries": rows.into_iter().map(|(t, s)| json!({ "t": t, "s": s })).collect::<Vec<_>>(),
            })
        }
    }
}
