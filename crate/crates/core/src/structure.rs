//! Signatures and finite relational structures.
//!
//! A [`Structure`] is a finite collection of relation slots, slot `j` holding
//! a set of ordered tuples of arity `α(j)` over signed integer ids. The domain
//! is implicit: it is the set of ids that occur in some tuple.
//!
//! The textual form produced by [`Structure::encode`] is the interchange
//! format used by model files and class keys:
//!
//! ```text
//! {1:[(1,2);(3,1)];2:[(1,4,5)]}
//! ```
//!
//! Slots appear in increasing index, empty slots are omitted and tuples are
//! sorted lexicographically by their integer components.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The set of ids occurring in a structure.
pub type Domain = BTreeSet<i64>;

/// Arity function `α`, stored as a finite prefix. Arities past the prefix are
/// zero, and once a zero appears every later entry is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    arities: Vec<usize>,
}

impl Signature {
    /// Builds a signature from its arity prefix. Trailing zeros are dropped.
    pub fn new(arities: Vec<usize>) -> Result<Self> {
        if let Some(first_zero) = arities.iter().position(|&a| a == 0) {
            if let Some(k) = arities[first_zero..].iter().position(|&a| a != 0) {
                return Err(Error::InvalidSignature(format!(
                    "slot {} has arity 0 but slot {} has arity {}",
                    first_zero + 1,
                    first_zero + k + 1,
                    arities[first_zero + k]
                )));
            }
        }
        let mut arities = arities;
        while arities.last() == Some(&0) {
            arities.pop();
        }
        Ok(Signature { arities })
    }

    /// Single slot of arity one: singleton sets, i.e. partitions.
    pub fn singletons() -> Self {
        Signature { arities: vec![1] }
    }

    /// Single binary slot: directed or undirected edges.
    pub fn pairs() -> Self {
        Signature { arities: vec![2] }
    }

    /// `α(j) = j` for `j = 1..=max`: sets or paths of size up to `max`.
    pub fn identity(max: usize) -> Self {
        Signature {
            arities: (1..=max).collect(),
        }
    }

    /// Arity of slot `j` (1-based). Zero past the stored prefix.
    pub fn arity(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.arities.get(j - 1).copied().unwrap_or(0)
    }

    /// Number of slots with positive arity.
    pub fn len(&self) -> usize {
        self.arities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arities.is_empty()
    }

    pub fn arities(&self) -> &[usize] {
        &self.arities
    }
}

/// A finite α-structure: slot `j` (1-based) holds a set of ordered tuples.
///
/// Trailing empty slots are never stored, so `slots().len()` is `r_A`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Structure {
    slots: Vec<BTreeSet<Vec<i64>>>,
}

impl Structure {
    /// The structure with every relation empty.
    pub fn empty() -> Self {
        Structure::default()
    }

    /// Builds a structure from per-slot tuple lists (index 0 is slot 1).
    /// Duplicate tuples collapse; arities are checked by [`Structure::validate`].
    pub fn from_slots<I, S, T>(slots: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = T>,
        T: Into<Vec<i64>>,
    {
        let slots = slots
            .into_iter()
            .map(|s| s.into_iter().map(Into::into).collect())
            .collect();
        Self::normalized(slots)
    }

    /// A structure whose only non-empty relation is slot `j`.
    pub fn in_slot<S, T>(j: usize, tuples: S) -> Self
    where
        S: IntoIterator<Item = T>,
        T: Into<Vec<i64>>,
    {
        assert!(j >= 1, "slots are 1-based");
        let mut slots = vec![BTreeSet::new(); j];
        slots[j - 1] = tuples.into_iter().map(Into::into).collect();
        Self::normalized(slots)
    }

    /// Singleton `{a}` in slot 1.
    pub fn singleton(a: i64) -> Self {
        Self::in_slot(1, [vec![a]])
    }

    /// Single ordered pair `{(a,b)}` in slot 1.
    pub fn pair(a: i64, b: i64) -> Self {
        Self::in_slot(1, [vec![a, b]])
    }

    fn normalized(mut slots: Vec<BTreeSet<Vec<i64>>>) -> Self {
        while slots.last().is_some_and(|s| s.is_empty()) {
            slots.pop();
        }
        Structure { slots }
    }

    pub fn slots(&self) -> &[BTreeSet<Vec<i64>>] {
        &self.slots
    }

    /// Tuples of slot `j` (1-based); empty past `r_A`.
    pub fn slot(&self, j: usize) -> impl Iterator<Item = &Vec<i64>> {
        j.checked_sub(1)
            .and_then(|i| self.slots.get(i))
            .into_iter()
            .flatten()
    }

    /// Largest non-empty slot index, 0 for the empty structure.
    pub fn r(&self) -> usize {
        self.slots.len()
    }

    pub fn tuple_count(&self) -> usize {
        self.slots.iter().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Every `(slot, tuple)` pair, slots ascending.
    pub fn tuples(&self) -> impl Iterator<Item = (usize, &Vec<i64>)> {
        self.slots
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |t| (i + 1, t)))
    }

    /// Ids occurring in any tuple.
    pub fn domain(&self) -> Domain {
        self.tuples().flat_map(|(_, t)| t.iter().copied()).collect()
    }

    /// Ids in order of first occurrence when tuples are read in encoding order.
    pub fn ids_in_order(&self) -> Vec<i64> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (_, t) in self.tuples() {
            for &a in t {
                if seen.insert(a) {
                    out.push(a);
                }
            }
        }
        out
    }

    /// Checks every tuple against `sig`; reports each failure.
    pub fn validate(&self, sig: &Signature) -> Result<()> {
        let mut problems = Vec::new();
        for (j, slot) in self.slots.iter().enumerate() {
            let j = j + 1;
            let arity = sig.arity(j);
            if arity == 0 {
                if !slot.is_empty() {
                    problems.push(format!("slot {j} is non-empty but has arity 0"));
                }
                continue;
            }
            for t in slot {
                if t.len() != arity {
                    problems.push(format!(
                        "slot {j} tuple {} has {} components, expected {arity}",
                        fmt_tuple(t),
                        t.len()
                    ));
                }
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Violation(problems))
        }
    }

    /// Applies an injection to every id. `rho` must be defined and injective
    /// on the domain.
    pub fn relabel<F>(&self, rho: F) -> Result<Structure>
    where
        F: Fn(i64) -> Option<i64>,
    {
        let mut image: HashMap<i64, i64> = HashMap::new();
        let mut seen: HashMap<i64, i64> = HashMap::new();
        for a in self.domain() {
            let b = rho(a).ok_or(Error::UndefinedElement(a))?;
            if let Some(&prev) = seen.get(&b) {
                return Err(Error::NonInjective(prev, a, b));
            }
            seen.insert(b, a);
            image.insert(a, b);
        }
        Ok(self.map_ids(|a| image[&a]))
    }

    /// Relabels with a map; see [`Structure::relabel`].
    pub fn relabel_with(&self, rho: &HashMap<i64, i64>) -> Result<Structure> {
        self.relabel(|a| rho.get(&a).copied())
    }

    /// Applies `f` to every id without checking injectivity.
    pub(crate) fn map_ids<F: Fn(i64) -> i64>(&self, f: F) -> Structure {
        let slots = self
            .slots
            .iter()
            .map(|s| s.iter().map(|t| t.iter().map(|&a| f(a)).collect()).collect())
            .collect();
        Structure { slots }
    }

    /// Deterministic text form, e.g. `{1:[(1,2);(3,1)]}`.
    pub fn encode(&self) -> String {
        self.to_string()
    }

    /// Parses the text form written by [`Structure::encode`].
    pub fn decode(text: &str) -> Result<Structure> {
        Parser::new(text).structure()
    }
}

fn fmt_tuple(t: &[i64]) -> String {
    let parts: Vec<String> = t.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first_slot = true;
        for (i, slot) in self.slots.iter().enumerate() {
            if slot.is_empty() {
                continue;
            }
            if !first_slot {
                f.write_str(";")?;
            }
            first_slot = false;
            write!(f, "{}:[", i + 1)?;
            for (k, t) in slot.iter().enumerate() {
                if k > 0 {
                    f.write_str(";")?;
                }
                f.write_str(&fmt_tuple(t))?;
            }
            f.write_str("]")?;
        }
        f.write_str("}")
    }
}

impl FromStr for Structure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Structure::decode(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        if self.pos < bytes.len() && (bytes[self.pos] == b'-' || bytes[self.pos] == b'+') {
            self.pos += 1;
        }
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("expected integer"))
    }

    fn structure(&mut self) -> Result<Structure> {
        self.expect('{')?;
        let mut slots: Vec<BTreeSet<Vec<i64>>> = Vec::new();
        if self.peek() == Some('}') {
            self.pos += 1;
        } else {
            loop {
                let j = self.integer()?;
                if j < 1 {
                    return Err(self.err("slot index must be at least 1"));
                }
                let j = j as usize;
                if slots.len() >= j {
                    return Err(self.err("slot indices must be strictly increasing"));
                }
                slots.resize(j, BTreeSet::new());
                self.expect(':')?;
                self.expect('[')?;
                if self.peek() != Some(']') {
                    loop {
                        let t = self.tuple()?;
                        slots[j - 1].insert(t);
                        match self.peek() {
                            Some(';') => self.pos += 1,
                            _ => break,
                        }
                    }
                }
                self.expect(']')?;
                match self.peek() {
                    Some(';') => self.pos += 1,
                    Some('}') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected ';' or '}'")),
                }
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.err("trailing input"));
        }
        Ok(Structure::normalized(slots))
    }

    fn tuple(&mut self) -> Result<Vec<i64>> {
        self.expect('(')?;
        let mut t = vec![self.integer()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            t.push(self.integer()?);
        }
        self.expect(')')?;
        Ok(t)
    }
}
