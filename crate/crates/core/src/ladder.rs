//! Ladder parameters and vertex addressing.
//!
//! Vertices are 1-indexed: `p1..pn` on the left rail, `q1..qn` on the right,
//! with rung `i` joining `p_i` and `q_i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// The ladder L_n with `n` rungs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LadderSpec {
    n: usize,
}

impl LadderSpec {
    pub fn new(n: i64) -> Result<Self> {
        if n < 1 {
            return Err(domain(format!("ladder needs n >= 1, got {n}")));
        }
        Ok(LadderSpec { n: n as usize })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    pub fn edge_count(&self) -> usize {
        3 * self.n - 2
    }

    /// Sum of the unit edge lengths.
    pub fn total_length(&self) -> usize {
        self.edge_count()
    }

    /// First Betti number, edges − vertices + 1.
    pub fn genus(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    pub fn contains(&self, v: VertexRef) -> bool {
        (1..=self.n).contains(&v.index)
    }

    pub fn check(&self, v: VertexRef) -> Result<VertexRef> {
        if self.contains(v) {
            Ok(v)
        } else {
            Err(Error::InvalidVertex(format!("{v} is not a vertex of L_{}", self.n)))
        }
    }

    /// All vertices in the canonical order p1..pn, q1..qn.
    pub fn vertices(&self) -> Vec<VertexRef> {
        let n = self.n;
        (1..=n)
            .map(VertexRef::p)
            .chain((1..=n).map(VertexRef::q))
            .collect()
    }

    /// Unordered pairs `(a, b)` with `a < b` in canonical order.
    pub fn unordered_pairs(&self) -> Vec<(VertexRef, VertexRef)> {
        let vs = self.vertices();
        let mut out = Vec::with_capacity(vs.len() * (vs.len() - 1) / 2);
        for (k, &a) in vs.iter().enumerate() {
            for &b in &vs[k + 1..] {
                out.push((a, b));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    /// Left rail, vertices `p_i`.
    #[serde(rename = "p")]
    LeftP,
    /// Right rail, vertices `q_i`.
    #[serde(rename = "q")]
    RightQ,
}

impl Side {
    pub fn letter(self) -> char {
        match self {
            Side::LeftP => 'p',
            Side::RightQ => 'q',
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::LeftP => Side::RightQ,
            Side::RightQ => Side::LeftP,
        }
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(Side::LeftP),
            "q" => Ok(Side::RightQ),
            _ => Err(Error::Parse(format!("unknown side {s:?}"))),
        }
    }
}

/// A vertex `p_i` or `q_i`. Ordered by side (p before q), then index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexRef {
    pub side: Side,
    pub index: usize,
}

impl VertexRef {
    pub fn new(side: Side, index: usize) -> Self {
        VertexRef { side, index }
    }

    pub fn p(index: usize) -> Self {
        VertexRef::new(Side::LeftP, index)
    }

    pub fn q(index: usize) -> Self {
        VertexRef::new(Side::RightQ, index)
    }

    /// Reflection across the ladder's vertical axis.
    pub fn mirrored(self) -> Self {
        VertexRef::new(self.side.other(), self.index)
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side.letter(), self.index)
    }
}

impl FromStr for VertexRef {
    type Err = Error;

    /// Parses `p3`, `q12`, ...
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad vertex {s:?}, expected p<k> or q<k>"));
        let mut chars = s.chars();
        let side = match chars.next() {
            Some('p') => Side::LeftP,
            Some('q') => Side::RightQ,
            _ => return Err(bad()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let index: usize = digits.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(Error::InvalidVertex(format!("{s}: indices start at 1")));
        }
        Ok(VertexRef::new(side, index))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for n in 1..20 {
            let spec = LadderSpec::new(n).unwrap();
            let n = n as usize;
            assert_eq!(spec.vertex_count(), 2 * n);
            assert_eq!(spec.total_length(), 3 * n - 2);
            assert_eq!(spec.genus(), n - 1);
            assert_eq!(spec.unordered_pairs().len(), n * (2 * n - 1));
        }
        assert!(LadderSpec::new(0).is_err());
        assert!(LadderSpec::new(-4).is_err());
    }

    #[test]
    fn vertex_syntax() {
        assert_eq!("p3".parse::<VertexRef>().unwrap(), VertexRef::p(3));
        assert_eq!("q12".parse::<VertexRef>().unwrap(), VertexRef::q(12));
        assert_eq!(VertexRef::q(7).to_string(), "q7");
        for bad in ["", "p", "x1", "p-1", "p1a", "P1"] {
            assert!(bad.parse::<VertexRef>().is_err(), "{bad}");
        }
        assert!(matches!(
            "q0".parse::<VertexRef>(),
            Err(Error::InvalidVertex(_))
        ));
        let spec = LadderSpec::new(3).unwrap();
        assert!(spec.check(VertexRef::p(4)).is_err());
        assert!(spec.check(VertexRef::q(3)).is_ok());
    }

    #[test]
    fn ordering_puts_p_first() {
        assert!(VertexRef::p(9) < VertexRef::q(1));
        assert!(VertexRef::q(1) < VertexRef::q(2));
    }
}
