use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, Radical, Rational};

/// Sparse operator on a finite basis, keyed by `(source, target)`: the entry
/// `c` at `(s, t)` means the basis vector `s` is sent to `c * t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinOp {
    dim: usize,
    entries: BTreeMap<(usize, usize), Radical>,
}

impl LinOp {
    pub fn zero(dim: usize) -> Self {
        LinOp {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| Radical::one()).collect())
    }

    pub fn diagonal(values: Vec<Radical>) -> Self {
        let dim = values.len();
        let mut op = Self::zero(dim);
        for (i, v) in values.into_iter().enumerate() {
            op.insert(i, i, v);
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Radical)> {
        self.entries.iter().map(|((s, t), c)| (*s, *t, c))
    }

    pub fn get(&self, source: usize, target: usize) -> Radical {
        self.entries
            .get(&(source, target))
            .cloned()
            .unwrap_or_else(Radical::zero)
    }

    /// Image of the basis vector `source`, as `(target, coeff)` pairs.
    pub fn column(&self, source: usize) -> impl Iterator<Item = (usize, &Radical)> {
        self.entries
            .range((source, 0)..(source + 1, 0))
            .map(|((_, t), c)| (*t, c))
    }

    /// Adds `c` to the entry at `(source, target)`.
    pub fn insert(&mut self, source: usize, target: usize, c: Radical) {
        assert!(
            source < self.dim && target < self.dim,
            "entry outside {}x{}",
            self.dim,
            self.dim
        );
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&(source, target)) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.entries.remove(&(source, target));
                }
            }
            None => {
                self.entries.insert((source, target), c);
            }
        }
    }

    fn check_dims(&self, other: &LinOp) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &LinOp) -> Result<LinOp> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (&(s, t), c) in &other.entries {
            out.insert(s, t, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LinOp) -> Result<LinOp> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LinOp {
        LinOp {
            dim: self.dim,
            entries: self.entries.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Radical) -> LinOp {
        let mut out = LinOp::zero(self.dim);
        for (&(s, t), v) in &self.entries {
            out.insert(s, t, v * c);
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> LinOp {
        let mut out = LinOp::zero(self.dim);
        for (&(s, t), v) in &self.entries {
            out.insert(s, t, v.scale(c));
        }
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LinOp) -> Result<LinOp> {
        self.check_dims(other)?;
        let mut out = LinOp::zero(self.dim);
        for (&(s, mid), c1) in &other.entries {
            for (t, c2) in self.column(mid) {
                out.insert(s, t, c1 * c2);
            }
        }
        Ok(out)
    }

    /// `self ∘ self ∘ ... ` (`k` factors); `k = 0` is the identity.
    pub fn power(&self, k: usize) -> LinOp {
        let mut acc = LinOp::identity(self.dim);
        for _ in 0..k {
            acc = self.compose(&acc).expect("same operator");
        }
        acc
    }

    /// `self ∘ other - other ∘ self`.
    pub fn commutator(&self, other: &LinOp) -> Result<LinOp> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    pub fn transpose(&self) -> LinOp {
        LinOp {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(&(s, t), c)| ((t, s), c.clone()))
                .collect(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|(s, t)| s == t)
    }

    /// Diagonal entries on states where the operator is supported.
    pub fn diagonal_entry(&self, i: usize) -> Radical {
        self.get(i, i)
    }

    /// At most one entry per source and per target.
    pub fn is_partial_monomial(&self) -> bool {
        let mut sources = std::collections::HashSet::new();
        let mut targets = std::collections::HashSet::new();
        self.entries
            .keys()
            .all(|(s, t)| sources.insert(*s) && targets.insert(*t))
    }

    /// `[{from, to, coeff: {m: "p/s"}}]`, with `from`/`to` rendered by
    /// `label`.
    pub fn to_json<L: Fn(usize) -> Value>(&self, label: L) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(&(s, t), c)| {
                json!({
                    "from": label(s),
                    "to": label(t),
                    "coeff": radical_json(c),
                })
            })
            .collect();
        Value::Array(entries)
    }

    /// `from,to,coeff` rows; states rendered by `label`, coefficients as
    /// `c*sqrt(m)` sums.
    pub fn to_csv<L: Fn(usize) -> String>(&self, label: L) -> String {
        let mut out = String::from("from,to,coeff\n");
        for (&(s, t), c) in &self.entries {
            let _ = writeln!(out, "\"{}\",\"{}\",\"{}\"", label(s), label(t), c);
        }
        out
    }
}

/// `{ "m": "p/s" }` for each radicand `m`.
pub fn radical_json(c: &Radical) -> Value {
    let mut map = Map::new();
    for (m, v) in c.terms() {
        map.insert(m.to_string(), Value::String(format_rational(v)));
    }
    Value::Object(map)
}
