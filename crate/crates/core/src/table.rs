//! Pairwise resistance tables and their CSV / JSON encodings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{format_rational, int, parse_rational, Rational};
use crate::ladder::{LadderSpec, Side, VertexRef};

/// Which computation path produced a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableSource {
    ClosedForm,
    Reduction,
    Oracle,
}

/// Resistances of all unordered vertex pairs of one ladder.
///
/// Keys are stored as `(a, b)` with `a < b` in vertex order (p before q,
/// then index); lookups accept either orientation and the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResistanceTable {
    spec: LadderSpec,
    source: TableSource,
    entries: BTreeMap<(VertexRef, VertexRef), Rational>,
}

fn key(a: VertexRef, b: VertexRef) -> (VertexRef, VertexRef) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl ResistanceTable {
    pub fn from_entries(
        spec: LadderSpec,
        source: TableSource,
        values: impl IntoIterator<Item = (VertexRef, VertexRef, Rational)>,
    ) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (a, b, r) in values {
            spec.check(a)?;
            spec.check(b)?;
            if a == b {
                return Err(Error::InvalidVertex(format!("diagonal entry {a}-{b}")));
            }
            entries.insert(key(a, b), r);
        }
        Ok(ResistanceTable {
            spec,
            source,
            entries,
        })
    }

    pub fn spec(&self) -> LadderSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn source(&self) -> TableSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Resistance between `a` and `b`; zero on the diagonal.
    pub fn get(&self, a: VertexRef, b: VertexRef) -> Option<&Rational> {
        if a == b && self.spec.contains(a) {
            return Some(&ZERO);
        }
        self.entries.get(&key(a, b))
    }

    pub fn set(&mut self, a: VertexRef, b: VertexRef, value: Rational) {
        self.entries.insert(key(a, b), value);
    }

    pub fn entries(&self) -> impl Iterator<Item = (VertexRef, VertexRef, &Rational)> {
        self.entries.iter().map(|(&(a, b), r)| (a, b, r))
    }

    /// Sum over unordered pairs.
    pub fn kirchhoff(&self) -> Rational {
        self.entries.values().fold(int(0), |acc, r| acc + r)
    }

    /// Pairs whose values differ from `other`, in key order.
    pub fn mismatches(&self, other: &ResistanceTable) -> Vec<(VertexRef, VertexRef)> {
        let mut out: Vec<_> = self
            .entries
            .iter()
            .filter(|(k, v)| other.entries.get(k) != Some(v))
            .map(|(&k, _)| k)
            .collect();
        for k in other.entries.keys() {
            if !self.entries.contains_key(k) {
                out.push(*k);
            }
        }
        out.sort();
        out
    }

    fn rows(&self, render: &dyn Fn(&Rational) -> String) -> Vec<TableRow> {
        self.entries()
            .map(|(a, b, r)| TableRow {
                side_a: a.side,
                idx_a: a.index,
                side_b: b.side,
                idx_b: b.index,
                value: render(r),
            })
            .collect()
    }

    /// CSV with header `side_a,idx_a,side_b,idx_b,value`.
    pub fn to_csv_with(&self, render: &dyn Fn(&Rational) -> String) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        for row in self.rows(render) {
            writer
                .serialize(row)
                .map_err(|e| Error::Parse(e.to_string()))?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_csv(&self) -> Result<String> {
        self.to_csv_with(&format_rational)
    }

    /// Parse CSV written in exact mode back into a table.
    pub fn from_csv(spec: LadderSpec, source: TableSource, text: &str) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let mut values = Vec::new();
        for row in reader.deserialize::<TableRow>() {
            let row = row.map_err(|e| Error::Parse(e.to_string()))?;
            values.push((
                VertexRef::new(row.side_a, row.idx_a),
                VertexRef::new(row.side_b, row.idx_b),
                parse_rational(&row.value)?,
            ));
        }
        Self::from_entries(spec, source, values)
    }

    pub fn to_json_with(&self, render: &dyn Fn(&Rational) -> String) -> serde_json::Value {
        serde_json::json!({
            "n": self.n(),
            "source": self.source,
            "entries": self.rows(render),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.to_json_with(&format_rational)
    }
}

static ZERO: std::sync::LazyLock<Rational> = std::sync::LazyLock::new(|| int(0));

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub side_a: Side,
    pub idx_a: usize,
    pub side_b: Side,
    pub idx_b: usize,
    pub value: String,
}
