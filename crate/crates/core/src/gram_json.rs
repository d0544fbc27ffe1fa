//! On-disk format for Gram matrices.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "kind": "gram2",
//!   "orientation": "entries[u][v] = <z^u, z^v>, linear in the first slot",
//!   "orders": [M, N],
//!   "index": "u = m * (N + 1) + n for the monomial z1^m z2^n",
//!   "kernel": "k(z, w) = sum_{u,v} C[u][v] z^u conj(w)^v with C the inverse of the transpose of entries",
//!   "entries": [[[re, im], ...], ...]
//! }
//! ```
//!
//! One-variable Gram files use `"kind": "gram1"`, a single-element `orders`
//! and the index `u = m`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space1d::Gram1;
use crate::space2d::Gram2;

pub const SCHEMA_VERSION: u32 = 1;
pub const ORIENTATION: &str = "entries[u][v] = <z^u, z^v>, linear in the first slot";
pub const KERNEL: &str =
    "k(z, w) = sum_{u,v} C[u][v] z^u conj(w)^v with C the inverse of the transpose of entries";
const INDEX1: &str = "u = m for the monomial z^m";
const INDEX2: &str = "u = m * (N + 1) + n for the monomial z1^m z2^n";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GramKind {
    Gram1,
    Gram2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramFile {
    pub schema_version: u32,
    pub kind: GramKind,
    pub orientation: String,
    pub orders: Vec<usize>,
    pub index: String,
    #[serde(default)]
    pub kernel: String,
    pub entries: Vec<Vec<Complex64>>,
}

fn rows(m: &DMatrix<Complex64>) -> Vec<Vec<Complex64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

impl GramFile {
    pub fn from_gram1(g: &Gram1) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind: GramKind::Gram1,
            orientation: ORIENTATION.into(),
            orders: vec![g.order()],
            index: INDEX1.into(),
            kernel: KERNEL.into(),
            entries: rows(g.matrix()),
        }
    }

    pub fn from_gram2(g: &Gram2) -> Self {
        let (m, n) = g.orders();
        Self {
            schema_version: SCHEMA_VERSION,
            kind: GramKind::Gram2,
            orientation: ORIENTATION.into(),
            orders: vec![m, n],
            index: INDEX2.into(),
            kernel: KERNEL.into(),
            entries: rows(g.matrix()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text)?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidArgument(format!(
                "unsupported Gram schema version {}",
                file.schema_version
            )));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("Gram serialization cannot fail")
    }

    fn matrix(&self, dim: usize) -> Result<DMatrix<Complex64>> {
        if self.entries.len() != dim || self.entries.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidArgument(format!(
                "Gram entries must form a {dim}x{dim} matrix"
            )));
        }
        if self.entries.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("Gram entries must be finite".into()));
        }
        Ok(DMatrix::from_fn(dim, dim, |i, j| self.entries[i][j]))
    }

    pub fn to_gram1(&self) -> Result<Gram1> {
        match (self.kind, self.orders.as_slice()) {
            (GramKind::Gram1, &[order]) => Gram1::from_matrix(self.matrix(order + 1)?),
            _ => Err(Error::InvalidArgument(
                "expected a gram1 file with one order".into(),
            )),
        }
    }

    pub fn to_gram2(&self) -> Result<Gram2> {
        match (self.kind, self.orders.as_slice()) {
            (GramKind::Gram2, &[m, n]) => {
                Gram2::from_matrix((m, n), self.matrix((m + 1) * (n + 1))?)
            }
            _ => Err(Error::InvalidArgument(
                "expected a gram2 file with two orders".into(),
            )),
        }
    }
}
