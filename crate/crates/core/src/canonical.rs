//! Canonical representatives of relationally labeled sequences.
//!
//! Two sequences are equivalent when a single bijection of ids carries one
//! onto the other item by item. The representative chosen here is the
//! lexicographically smallest relabeling among those that number ids
//! `1, 2, 3, ...` in order of first appearance: items are scanned in order and
//! the fresh ids of each item are assigned so that the relabeled item is as
//! small as possible. Ties between assignments that produce the same item but
//! bind ids differently are all kept until later items separate them.
//!
//! Canonical forms are prefix-closed: the first `n` items of a canonical
//! sequence are the canonical form of the first `n` items of any
//! representative.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::structure::{Signature, Structure};

/// A finite sequence of structures over a common signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelSequence {
    sig: Signature,
    items: Vec<Structure>,
}

impl RelSequence {
    /// Validates every item against `sig`.
    pub fn new(sig: Signature, items: Vec<Structure>) -> Result<Self> {
        for (i, item) in items.iter().enumerate() {
            item.validate(&sig).map_err(|e| match e {
                Error::Violation(v) => Error::Violation(
                    v.into_iter().map(|m| format!("item {}: {m}", i + 1)).collect(),
                ),
                other => other,
            })?;
        }
        Ok(RelSequence { sig, items })
    }

    pub(crate) fn new_unchecked(sig: Signature, items: Vec<Structure>) -> Self {
        RelSequence { sig, items }
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn items(&self) -> &[Structure] {
        &self.items
    }

    pub fn into_items(self) -> Vec<Structure> {
        self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Applies one injection to every item.
    pub fn relabel<F>(&self, rho: F) -> Result<RelSequence>
    where
        F: Fn(i64) -> Option<i64>,
    {
        let all: Structure = self.union_structure();
        // injectivity is checked once over the combined domain
        all.relabel(&rho)?;
        let items = self
            .items
            .iter()
            .map(|s| s.map_ids(|a| rho(a).expect("checked above")))
            .collect();
        Ok(RelSequence::new_unchecked(self.sig.clone(), items))
    }

    fn union_structure(&self) -> Structure {
        let slots: Vec<Vec<Vec<i64>>> = vec![self
            .items
            .iter()
            .flat_map(|s| s.domain())
            .map(|a| vec![a])
            .collect()];
        Structure::from_slots(slots)
    }

    pub fn canonical_form(&self) -> CanonicalSequence {
        canonical_form(self)
    }
}

/// The chosen representative of an equivalence class, with the id map that
/// produced it from the input sequence.
#[derive(Clone, Debug)]
pub struct CanonicalSequence {
    sig: Signature,
    items: Vec<Structure>,
    witness: BTreeMap<i64, i64>,
}

impl PartialEq for CanonicalSequence {
    fn eq(&self, other: &Self) -> bool {
        self.sig == other.sig && self.items == other.items
    }
}

impl Eq for CanonicalSequence {}

impl CanonicalSequence {
    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn items(&self) -> &[Structure] {
        &self.items
    }

    /// Original id -> canonical id.
    pub fn witness(&self) -> &BTreeMap<i64, i64> {
        &self.witness
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Forgets canonicity; the items are kept as they are.
    pub fn to_sequence(&self) -> RelSequence {
        RelSequence::new_unchecked(self.sig.clone(), self.items.clone())
    }

    /// Class key: item encodings in order, e.g. `[{1:[(1,2)]},{1:[(3,1)]}]`.
    pub fn encode(&self) -> String {
        self.to_string()
    }

    /// Number of distinct ids.
    pub fn element_count(&self) -> usize {
        self.items
            .iter()
            .flat_map(|s| s.domain())
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Canonical form of the first `n` items.
    pub fn restrict(&self, n: usize) -> Result<CanonicalSequence> {
        if n > self.items.len() {
            return Err(Error::OutOfRange {
                requested: n,
                len: self.items.len(),
            });
        }
        Ok(canonical_form(&RelSequence::new_unchecked(
            self.sig.clone(),
            self.items[..n].to_vec(),
        )))
    }

    /// Canonical form of `i ↦ x(σ(i))`.
    pub fn permute(&self, sigma: &Permutation) -> Result<CanonicalSequence> {
        if sigma.len() != self.items.len() {
            return Err(Error::InvalidPermutation(format!(
                "permutation of {} positions applied to sequence of length {}",
                sigma.len(),
                self.items.len()
            )));
        }
        let items = sigma
            .images()
            .iter()
            .map(|&j| self.items[j].clone())
            .collect();
        Ok(canonical_form(&RelSequence::new_unchecked(
            self.sig.clone(),
            items,
        )))
    }

    /// `1/(1+s)` where `s` is the longest common restriction, compared up to
    /// the shorter length; `0` when the sequences agree through that depth.
    pub fn distance(&self, other: &CanonicalSequence) -> Result<Rational64> {
        let depth = self.len().min(other.len());
        self.distance_at_depth(other, depth)
    }

    /// As [`CanonicalSequence::distance`] with an explicit comparison depth.
    pub fn distance_at_depth(&self, other: &CanonicalSequence, depth: usize) -> Result<Rational64> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        let limit = self.len().min(other.len());
        if depth > limit {
            return Err(Error::OutOfRange {
                requested: depth,
                len: limit,
            });
        }
        // prefix-closed, so restrictions agree exactly up to the first differing item
        let s = (0..depth)
            .find(|&i| self.items[i] != other.items[i])
            .unwrap_or(depth);
        if s == depth {
            Ok(Rational64::from_integer(0))
        } else {
            Ok(Rational64::new(1, 1 + s as i64))
        }
    }
}

impl fmt::Display for CanonicalSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// A permutation of sequence positions, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_zero_based(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut hit = vec![false; n];
        for &j in &images {
            if j >= n || std::mem::replace(&mut hit[j], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation { images })
    }

    /// Images written 1-based, `(2,3,4,1)` meaning position 1 takes item 2.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let zero: Option<Vec<usize>> = images.iter().map(|&j| j.checked_sub(1)).collect();
        let zero = zero.ok_or_else(|| {
            Error::InvalidPermutation(format!("{images:?} contains 0 in 1-based form"))
        })?;
        Self::from_zero_based(zero)
    }

    /// Reverses positions.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            images: (0..n).rev().collect(),
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Every permutation of `n` positions in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }
}

/// Advances `v` to its lexicographic successor; false once it wraps.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

// assignments made so far, shared between branches
struct Trail {
    prev: Option<Rc<Trail>>,
    pairs: Vec<(i64, i64)>,
}

impl Drop for Trail {
    // unlink iteratively, long chains would overflow the stack
    fn drop(&mut self) {
        let mut cur = self.prev.take();
        while let Some(rc) = cur {
            match Rc::try_unwrap(rc) {
                Ok(mut t) => cur = t.prev.take(),
                Err(_) => break,
            }
        }
    }
}

#[derive(Clone)]
struct Branch {
    // ids still needed by later items
    live: BTreeMap<i64, i64>,
    trail: Option<Rc<Trail>>,
}

/// Computes the canonical representative of the class of `x`.
pub fn canonical_form(x: &RelSequence) -> CanonicalSequence {
    let items = x.items();
    let mut last_pos: HashMap<i64, usize> = HashMap::new();
    for (i, item) in items.iter().enumerate() {
        for a in item.domain() {
            last_pos.insert(a, i);
        }
    }

    let mut branches = vec![Branch {
        live: BTreeMap::new(),
        trail: None,
    }];
    let mut seen: BTreeSet<i64> = BTreeSet::new();
    let mut next_id: i64 = 1;
    let mut out = Vec::with_capacity(items.len());

    for (i, item) in items.iter().enumerate() {
        // encoding order makes the enumeration deterministic
        let fresh: Vec<i64> = item
            .ids_in_order()
            .into_iter()
            .filter(|a| !seen.contains(a))
            .collect();
        let k = fresh.len() as i64;

        let mut best: Option<Structure> = None;
        let mut winners: Vec<Branch> = Vec::new();
        for branch in &branches {
            let mut ids: Vec<i64> = (next_id..next_id + k).collect();
            loop {
                let lookup = |a: i64| -> i64 {
                    match fresh.iter().position(|&b| b == a) {
                        Some(t) => ids[t],
                        None => branch.live[&a],
                    }
                };
                let cand = item.map_ids(lookup);
                let keep = match &best {
                    None => true,
                    Some(b) => cand <= *b,
                };
                if keep {
                    if best.as_ref().is_some_and(|b| cand < *b) {
                        winners.clear();
                    }
                    let mut live = branch.live.clone();
                    let mut pairs = Vec::with_capacity(fresh.len());
                    for (t, &a) in fresh.iter().enumerate() {
                        live.insert(a, ids[t]);
                        pairs.push((a, ids[t]));
                    }
                    let trail = if pairs.is_empty() {
                        branch.trail.clone()
                    } else {
                        Some(Rc::new(Trail {
                            prev: branch.trail.clone(),
                            pairs,
                        }))
                    };
                    winners.push(Branch { live, trail });
                    best = Some(cand);
                }
                if !next_permutation(&mut ids) {
                    break;
                }
            }
        }

        seen.extend(fresh.iter().copied());
        next_id += k;
        out.push(best.unwrap_or_default());

        let mut dedup: BTreeMap<Vec<(i64, i64)>, Branch> = BTreeMap::new();
        for mut b in winners {
            b.live.retain(|a, _| last_pos[a] > i);
            let key: Vec<(i64, i64)> = b.live.iter().map(|(&a, &c)| (a, c)).collect();
            dedup.entry(key).or_insert(b);
        }
        branches = dedup.into_values().collect();
    }

    let mut witness = BTreeMap::new();
    let mut cur = branches.into_iter().next().and_then(|b| b.trail);
    while let Some(t) = cur {
        witness.extend(t.pairs.iter().copied());
        cur = t.prev.clone();
    }
    CanonicalSequence {
        sig: x.sig().clone(),
        items: out,
        witness,
    }
}

/// True iff one bijection of ids carries `y` onto `x` item by item.
pub fn are_equivalent(x: &RelSequence, y: &RelSequence) -> Result<bool> {
    if x.sig() != y.sig() {
        return Err(Error::SignatureMismatch);
    }
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    Ok(canonical_form(x) == canonical_form(y))
}
