//! Uniform labels, propensities, atom ordering and the star map.
//!
//! Labeling every element of a canonical sequence with an independent
//! Uniform[0,1] value, ranking the recurring labels, coding each item with
//! [`star`] and sending the codes back through [`dagger`](crate::simplex::dagger)
//! recovers the original class exactly. [`roundtrip_check`] runs that loop.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::hash::Hash;

use rand::Rng;

use crate::canonical::{canonical_form, CanonicalSequence, RelSequence};
use crate::simplex::{dagger, SimplexPoint};
use crate::structure::{Signature, Structure};
use crate::weight::Weight;

/// Default number of distinct positions a label needs to count as an atom.
pub const DEFAULT_RECURRENCE_THRESHOLD: usize = 2;

/// A structure whose elements carry real labels in `[0,1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledStructure {
    slots: Vec<Vec<Vec<f64>>>,
}

impl LabeledStructure {
    /// Substitutes `label(a)` for every id `a` of `s`.
    pub fn from_structure<F: Fn(i64) -> f64>(s: &Structure, label: F) -> Self {
        let slots = s
            .slots()
            .iter()
            .map(|slot| slot.iter().map(|t| t.iter().map(|&a| label(a)).collect()).collect())
            .collect();
        LabeledStructure { slots }
    }

    pub fn slots(&self) -> &[Vec<Vec<f64>>] {
        &self.slots
    }

    /// Distinct labels, ascending.
    pub fn labels(&self) -> Vec<f64> {
        let mut seen = HashSet::new();
        let mut out: Vec<f64> = self
            .slots
            .iter()
            .flatten()
            .flatten()
            .copied()
            .filter(|x| seen.insert(x.to_bits()))
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }

    /// Replaces labels by integers via `f`.
    pub fn to_structure<F: Fn(f64) -> i64>(&self, f: F) -> Structure {
        Structure::from_slots(
            self.slots
                .iter()
                .map(|slot| slot.iter().map(|t| t.iter().map(|&x| f(x)).collect::<Vec<i64>>())),
        )
    }

    /// The unlabeled shape: canonical form of the structure on its own.
    fn shape(&self) -> Structure {
        let labels = self.labels();
        let index: HashMap<u64, i64> = labels
            .iter()
            .enumerate()
            .map(|(i, x)| (x.to_bits(), i as i64 + 1))
            .collect();
        shape_of(&self.to_structure(|x| index[&x.to_bits()]))
    }
}

/// Canonical form of a single structure, ignoring which ids it uses.
pub fn shape_of(s: &Structure) -> Structure {
    // the signature is not inspected by canonical_form
    let seq = RelSequence::new_unchecked(Signature::new(vec![]).expect("empty"), vec![s.clone()]);
    canonical_form(&seq).items()[0].clone()
}

/// Recurring labels ranked by empirical propensity.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomOrdering {
    atoms: Vec<f64>,
    propensities: Vec<Weight>,
}

impl AtomOrdering {
    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn propensities(&self) -> &[Weight] {
        &self.propensities
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Rank (1-based) of `label`, if it is an atom.
    pub fn rank(&self, label: f64) -> Option<usize> {
        self.atoms
            .iter()
            .position(|a| a.to_bits() == label.to_bits())
            .map(|i| i + 1)
    }
}

/// Ranks elements appearing in at least `threshold` positions.
///
/// Order: more positions first; then per-shape counts compared along the
/// shapes sorted by encoded text, larger first at the first difference; then
/// `fallback`. Returns `(element, positions)` pairs.
pub(crate) fn rank_elements<K, F>(
    items: &[(Structure, Vec<K>)],
    threshold: usize,
    fallback: F,
) -> Vec<(K, usize)>
where
    K: Copy + Eq + Hash,
    F: Fn(&K, &K) -> Ordering,
{
    let mut counts: HashMap<K, usize> = HashMap::new();
    let mut profiles: HashMap<K, BTreeMap<String, usize>> = HashMap::new();
    for (shape, elems) in items {
        let key = shape.encode();
        for &e in elems {
            *counts.entry(e).or_default() += 1;
            *profiles.entry(e).or_default().entry(key.clone()).or_default() += 1;
        }
    }
    let mut atoms: Vec<(K, usize)> = counts.into_iter().filter(|&(_, c)| c >= threshold).collect();
    atoms.sort_by(|(a, ca), (b, cb)| {
        cb.cmp(ca)
            .then_with(|| {
                let (pa, pb) = (&profiles[a], &profiles[b]);
                let shapes: BTreeSet<&String> = pa.keys().chain(pb.keys()).collect();
                shapes
                    .into_iter()
                    .map(|s| {
                        let x = pa.get(s).copied().unwrap_or(0);
                        let y = pb.get(s).copied().unwrap_or(0);
                        y.cmp(&x)
                    })
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
            .then_with(|| fallback(a, b))
    });
    atoms
}

/// Draws one distinct Uniform[0,1] label per element and substitutes it.
pub fn attach_uniform_labels<R: Rng + ?Sized>(x: &CanonicalSequence, rng: &mut R) -> Vec<LabeledStructure> {
    let ids: BTreeSet<i64> = x.items().iter().flat_map(|s| s.domain()).collect();
    let mut used: HashSet<u64> = HashSet::new();
    let mut label: HashMap<i64, f64> = HashMap::new();
    for id in ids {
        let u = loop {
            let u: f64 = rng.gen();
            if used.insert(u.to_bits()) {
                break u;
            }
        };
        label.insert(id, u);
    }
    x.items()
        .iter()
        .map(|s| LabeledStructure::from_structure(s, |a| label[&a]))
        .collect()
}

/// `Σ f_B` over codes containing `atom`.
pub fn propensity(f: &SimplexPoint, atom: i64) -> Weight {
    f.support()
        .iter()
        .filter(|(code, _)| code.domain().contains(&atom))
        .map(|(_, w)| w)
        .sum()
}

/// Mass of codes with the same shape as `template` that contain `atom`.
pub fn propensity_given(f: &SimplexPoint, atom: i64, template: &Structure) -> Weight {
    let target = shape_of(template);
    f.support()
        .iter()
        .filter(|(code, _)| code.domain().contains(&atom) && shape_of(code) == target)
        .map(|(_, w)| w)
        .sum()
}

/// Ranks labels occurring in at least `threshold` positions; final ties go
/// to the smaller label.
pub fn atom_order(labeled: &[LabeledStructure], threshold: usize) -> AtomOrdering {
    let n = labeled.len() as i64;
    let items: Vec<(Structure, Vec<u64>)> = labeled
        .iter()
        .map(|s| (s.shape(), s.labels().into_iter().map(f64::to_bits).collect()))
        .collect();
    let ranked = rank_elements(&items, threshold, |a, b| {
        f64::from_bits(*a).total_cmp(&f64::from_bits(*b))
    });
    AtomOrdering {
        atoms: ranked.iter().map(|(b, _)| f64::from_bits(*b)).collect(),
        propensities: ranked
            .iter()
            .map(|&(_, c)| Weight::ratio(c as i64, n))
            .collect(),
    }
}

/// Codes one labeled item: atom `u_j ↦ j`; other labels get `0, -1, -2, ...`
/// from the largest down.
pub fn star(labeled: &LabeledStructure, ordering: &AtomOrdering) -> Structure {
    let mut code: HashMap<u64, i64> = HashMap::new();
    let mut blips: Vec<f64> = Vec::new();
    for x in labeled.labels() {
        match ordering.rank(x) {
            Some(r) => {
                code.insert(x.to_bits(), r as i64);
            }
            None => blips.push(x),
        }
    }
    // labels() is ascending, so the largest blip is last and gets 0
    for (z, x) in blips.iter().rev().enumerate() {
        code.insert(x.to_bits(), -(z as i64));
    }
    labeled.to_structure(|x| code[&x.to_bits()])
}

/// Labels `x`, stars every item, daggers and canonicalizes; true iff the
/// class comes back unchanged.
pub fn roundtrip_check<R: Rng + ?Sized>(x: &CanonicalSequence, rng: &mut R) -> bool {
    let labeled = attach_uniform_labels(x, rng);
    let ordering = atom_order(&labeled, DEFAULT_RECURRENCE_THRESHOLD);
    let codes: Vec<Structure> = labeled.iter().map(|s| star(s, &ordering)).collect();
    match dagger(x.sig(), &codes) {
        Ok(seq) => canonical_form(&seq) == *x,
        Err(_) => false,
    }
}
