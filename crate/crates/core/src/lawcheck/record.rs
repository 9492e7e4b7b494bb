//! Serializable counterexamples, detailed enough to rebuild every input.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::quantale::Quantale;
use crate::vmat::VMatrix;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetRecord {
    pub name: String,
    pub elems: Vec<String>,
}

impl SetRecord {
    pub fn of(s: &FinSet) -> Self {
        SetRecord {
            name: s.name().to_string(),
            elems: s.labels().to_vec(),
        }
    }

    pub fn to_set(&self) -> Result<FinSet> {
        FinSet::new(self.name.clone(), self.elems.clone())
    }
}

/// A matrix by rows: `rows[y][x]` is the label of the entry at (target y, source x).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub name: String,
    pub src: SetRecord,
    pub tgt: SetRecord,
    pub rows: Vec<Vec<String>>,
}

impl MatrixRecord {
    pub fn of(name: &str, m: &VMatrix) -> Self {
        let q = m.quantale();
        let rows = (0..m.tgt().len())
            .map(|y| (0..m.src().len()).map(|x| q.label(m.get(y, x)).to_string()).collect())
            .collect();
        MatrixRecord {
            name: name.to_string(),
            src: SetRecord::of(m.src()),
            tgt: SetRecord::of(m.tgt()),
            rows,
        }
    }

    pub fn to_matrix(&self, q: &Arc<Quantale>) -> Result<VMatrix> {
        let (src, tgt) = (self.src.to_set()?, self.tgt.to_set()?);
        if self.rows.len() != tgt.len() || self.rows.iter().any(|r| r.len() != src.len()) {
            return Err(Error::Validation(format!("matrix record `{}` has the wrong shape", self.name)));
        }
        let entries = self
            .rows
            .iter()
            .flatten()
            .map(|l| q.lookup(l))
            .collect::<Result<Vec<_>>>()?;
        VMatrix::new(q.clone(), src, tgt, entries)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FunctionRecord {
    pub name: String,
    pub dom: SetRecord,
    pub cod: SetRecord,
    /// Image label of each domain element, in domain order.
    pub map: Vec<String>,
}

impl FunctionRecord {
    pub fn of(name: &str, f: &FinFn) -> Self {
        FunctionRecord {
            name: name.to_string(),
            dom: SetRecord::of(f.dom()),
            cod: SetRecord::of(f.cod()),
            map: f.map().iter().map(|&i| f.cod().label(i).to_string()).collect(),
        }
    }

    pub fn to_fn(&self) -> Result<FinFn> {
        let (dom, cod) = (self.dom.to_set()?, self.cod.to_set()?);
        let map = self.map.iter().map(|l| cod.index_of(l)).collect::<Result<Vec<_>>>()?;
        FinFn::new(dom, cod, map)
    }
}

/// One failing instance of a law.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Case {
    pub suite: String,
    pub law: String,
    pub matrices: Vec<MatrixRecord>,
    pub functions: Vec<FunctionRecord>,
    /// Test-object bound, for laws that enumerate internally.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
}

impl Case {
    pub fn new(suite: &str, law: &str) -> Self {
        Case {
            suite: suite.to_string(),
            law: law.to_string(),
            matrices: Vec::new(),
            functions: Vec::new(),
            bound: None,
        }
    }

    pub fn matrix(mut self, name: &str, m: &VMatrix) -> Self {
        self.matrices.push(MatrixRecord::of(name, m));
        self
    }

    pub fn function(mut self, name: &str, f: &FinFn) -> Self {
        self.functions.push(FunctionRecord::of(name, f));
        self
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn get_matrix(&self, q: &Arc<Quantale>, name: &str) -> Result<VMatrix> {
        self.matrices
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::Validation(format!("case has no matrix `{name}`")))?
            .to_matrix(q)
    }

    pub fn get_function(&self, name: &str) -> Result<FinFn> {
        self.functions
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| Error::Validation(format!("case has no function `{name}`")))?
            .to_fn()
    }
}
