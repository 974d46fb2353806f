//! Finitely supported points of the R-simplex and the samplers they drive.
//!
//! A [`SimplexPoint`] is a categorical law over codes. A code is a
//! [`Structure`] whose positive ids name recurring atoms by rank and whose
//! non-positive ids `0, -1, ..., -k` name elements that occur only inside that
//! one relation. Drawing codes i.i.d., passing them through [`dagger`] to make
//! the non-positive ids globally distinct, and canonicalizing gives one draw
//! of `ε_f` restricted to the first `n` positions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, RngCore};

use crate::canonical::{canonical_form, next_permutation, CanonicalSequence, RelSequence};
use crate::error::{Error, Result};
use crate::structure::{Signature, Structure};
use crate::weight::Weight;

/// A code: a structure over atom ranks (positive) and in-relation blips
/// (non-positive, consecutive from 0).
pub type RStarCode = Structure;

/// Tolerance on the total mass of float-weighted points.
pub const FLOAT_MASS_TOL: f64 = 1e-12;

/// Checks the code invariants: valid under `sig`, non-empty, and blip ids
/// exactly `{0, -1, ..., -k}`.
pub fn validate_code(code: &Structure, sig: &Signature) -> Result<()> {
    code.validate(sig)?;
    if code.is_empty() {
        return Err(Error::MalformedCode("empty code".into()));
    }
    blip_count(code).map(|_| ())
}

/// Number of distinct non-positive ids, after checking they run `0, -1, ...`.
pub fn blip_count(code: &Structure) -> Result<usize> {
    let blips: BTreeSet<i64> = code.domain().into_iter().filter(|&a| a <= 0).collect();
    let k = blips.len() as i64;
    if blips.iter().copied().eq(1 - k..=0) {
        Ok(blips.len())
    } else {
        Err(Error::MalformedCode(format!(
            "non-positive ids {blips:?} in {code} are not consecutive from 0"
        )))
    }
}

/// Representative of a code up to re-ranking its blips: the smallest
/// structure over all permutations of the non-positive ids.
pub fn blip_class(code: &Structure) -> Structure {
    let k = code.domain().into_iter().filter(|&a| a <= 0).count() as i64;
    if k < 2 {
        return code.clone();
    }
    let mut perm: Vec<i64> = (0..k).collect();
    let mut best = code.clone();
    while next_permutation(&mut perm) {
        let cand = code.map_ids(|a| if a <= 0 { -perm[(-a) as usize] } else { a });
        if cand < best {
            best = cand;
        }
    }
    best
}

/// A finitely supported point of the R-simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexPoint {
    sig: Signature,
    support: BTreeMap<Structure, Weight>,
}

impl SimplexPoint {
    /// Validates codes and weights. Repeated codes have their weights summed.
    pub fn new<I>(sig: Signature, support: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Structure, Weight)>,
    {
        let mut map: BTreeMap<Structure, Weight> = BTreeMap::new();
        for (code, w) in support {
            validate_code(&code, &sig)?;
            if !w.is_positive() {
                return Err(Error::InvalidWeights(format!("weight {w} on {code} is not positive")));
            }
            let entry = map.entry(code).or_default();
            *entry = &*entry + &w;
        }
        if map.is_empty() {
            return Err(Error::InvalidWeights("empty support".into()));
        }
        let total: Weight = map.values().sum();
        if !total.approx_eq(&Weight::one(), FLOAT_MASS_TOL) {
            return Err(Error::InvalidWeights(format!("weights sum to {total}, not 1")));
        }
        Ok(SimplexPoint { sig, support: map })
    }

    /// Point mass at one code.
    pub fn degenerate(sig: Signature, code: Structure) -> Result<Self> {
        Self::new(sig, [(code, Weight::one())])
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn support(&self) -> &BTreeMap<Structure, Weight> {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Weight of `code`, zero off the support.
    pub fn weight(&self, code: &Structure) -> Weight {
        self.support.get(code).cloned().unwrap_or_default()
    }

    pub fn is_exact(&self) -> bool {
        self.support.values().all(Weight::is_exact)
    }

    /// Codes in the fixed enumeration order (by encoded text).
    pub fn codes_in_enumeration_order(&self) -> Vec<&Structure> {
        let mut codes: Vec<&Structure> = self.support.keys().collect();
        codes.sort_by_cached_key(|c| c.encode());
        codes
    }

    /// Positive ids used by any code.
    pub fn atoms(&self) -> BTreeSet<i64> {
        self.support
            .keys()
            .flat_map(|c| c.domain())
            .filter(|&a| a > 0)
            .collect()
    }

    /// Same law with codes replaced by their [`blip_class`] representative.
    pub fn merge_blip_classes(&self) -> SimplexPoint {
        let mut map: BTreeMap<Structure, Weight> = BTreeMap::new();
        for (code, w) in &self.support {
            let entry = map.entry(blip_class(code)).or_default();
            *entry = &*entry + w;
        }
        SimplexPoint {
            sig: self.sig.clone(),
            support: map,
        }
    }

    /// Sum of `|f_B - g_B|` over the union of supports.
    pub fn distance(&self, other: &SimplexPoint) -> Result<f64> {
        simplex_distance(self, other)
    }

    pub fn sample_codes<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<Structure> {
        sample_codes(self, n, rng)
    }

    pub fn sample_epsilon<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> CanonicalSequence {
        sample_epsilon_f(self, n, rng)
    }
}

impl fmt::Display for SimplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, code) in self.codes_in_enumeration_order().into_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{code}: {}", self.support[code])?;
        }
        f.write_str("}")
    }
}

/// `Σ_B |f_B − g_B|`; 2 for disjoint supports.
pub fn simplex_distance(f: &SimplexPoint, g: &SimplexPoint) -> Result<f64> {
    if f.sig != g.sig {
        return Err(Error::SignatureMismatch);
    }
    let codes: BTreeSet<&Structure> = f.support.keys().chain(g.support.keys()).collect();
    Ok(codes
        .into_iter()
        .map(|c| (&f.weight(c) - &g.weight(c)).abs().to_f64())
        .sum())
}

/// `n` i.i.d. codes from the categorical law `f`.
pub fn sample_codes<R: Rng + ?Sized>(f: &SimplexPoint, n: usize, rng: &mut R) -> Vec<Structure> {
    let codes: Vec<&Structure> = f.support.keys().collect();
    if codes.len() == 1 {
        return vec![codes[0].clone(); n];
    }
    let weights: Vec<f64> = f.support.values().map(Weight::to_f64).collect();
    let index = WeightedIndex::new(&weights).expect("validated positive weights");
    (0..n).map(|_| codes[index.sample(rng)].clone()).collect()
}

/// Rewrites per-relation blips into globally distinct non-positive ids.
///
/// A running counter starts at 0; an item with blips `0..=-k` has each `-i`
/// replaced by `counter - i` and the counter moves to `counter - k - 1`.
/// Items without blips pass through unchanged.
pub fn dagger(sig: &Signature, codes: &[Structure]) -> Result<RelSequence> {
    let mut m: i64 = 0;
    let mut items = Vec::with_capacity(codes.len());
    for (i, code) in codes.iter().enumerate() {
        code.validate(sig)?;
        let k = blip_count(code)
            .map_err(|e| Error::MalformedCode(format!("item {}: {e}", i + 1)))?;
        if k == 0 {
            items.push(code.clone());
        } else {
            let base = m;
            items.push(code.map_ids(|a| if a <= 0 { base + a } else { a }));
            m -= k as i64;
        }
    }
    Ok(RelSequence::new_unchecked(sig.clone(), items))
}

/// One draw of `ε_f` restricted to `[n]`.
pub fn sample_epsilon_f<R: Rng + ?Sized>(f: &SimplexPoint, n: usize, rng: &mut R) -> CanonicalSequence {
    let codes = sample_codes(f, n, rng);
    let seq = dagger(&f.sig, &codes).expect("support codes are validated");
    canonical_form(&seq)
}

type Generator = dyn Fn(&mut dyn RngCore) -> SimplexPoint + Send + Sync;

/// A mixing measure over simplex points.
#[derive(Clone)]
pub enum MixingMeasure {
    /// Weighted finite list of points.
    Finite(Vec<(Weight, SimplexPoint)>),
    /// Draws a point per call.
    Generator(Arc<Generator>),
}

impl fmt::Debug for MixingMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MixingMeasure::Finite(c) => f.debug_tuple("Finite").field(c).finish(),
            MixingMeasure::Generator(_) => f.write_str("Generator(..)"),
        }
    }
}

impl MixingMeasure {
    /// Validates positive weights summing to one and a shared signature.
    pub fn finite(components: Vec<(Weight, SimplexPoint)>) -> Result<Self> {
        let Some((_, first)) = components.first() else {
            return Err(Error::InvalidWeights("mixture has no components".into()));
        };
        let sig = first.sig.clone();
        for (w, f) in &components {
            if !w.is_positive() {
                return Err(Error::InvalidWeights(format!("mixture weight {w} is not positive")));
            }
            if f.sig != sig {
                return Err(Error::SignatureMismatch);
            }
        }
        let total: Weight = components.iter().map(|(w, _)| w).sum();
        if !total.approx_eq(&Weight::one(), FLOAT_MASS_TOL) {
            return Err(Error::InvalidWeights(format!("mixture weights sum to {total}, not 1")));
        }
        Ok(MixingMeasure::Finite(components))
    }

    pub fn single(f: SimplexPoint) -> Self {
        MixingMeasure::Finite(vec![(Weight::one(), f)])
    }

    pub fn generator<F>(gen: F) -> Self
    where
        F: Fn(&mut dyn RngCore) -> SimplexPoint + Send + Sync + 'static,
    {
        MixingMeasure::Generator(Arc::new(gen))
    }

    /// Draws one simplex point.
    pub fn draw<R: RngCore + ?Sized>(&self, rng: &mut R) -> SimplexPoint {
        match self {
            MixingMeasure::Finite(components) => {
                if components.len() == 1 {
                    return components[0].1.clone();
                }
                let weights: Vec<f64> = components.iter().map(|(w, _)| w.to_f64()).collect();
                let index = WeightedIndex::new(&weights).expect("validated positive weights");
                components[index.sample(rng)].1.clone()
            }
            MixingMeasure::Generator(gen) => {
                let mut rng = rng;
                gen(&mut rng)
            }
        }
    }
}

/// One draw of `ε_φ` restricted to `[n]`: pick `f` from `phi`, then `ε_f`.
pub fn sample_epsilon_phi<R: RngCore + ?Sized>(phi: &MixingMeasure, n: usize, rng: &mut R) -> CanonicalSequence {
    let f = phi.draw(rng);
    sample_epsilon_f(&f, n, rng)
}

/// Paintbox point on singleton codes: `atoms[j-1]` on `{j}`, `f0` on `{0}`.
pub fn make_paintbox<W: Into<Weight>>(f0: W, atoms: Vec<W>) -> Result<SimplexPoint> {
    let f0 = f0.into();
    let atoms: Vec<Weight> = atoms.into_iter().map(Into::into).collect();
    if f0 < Weight::zero() {
        return Err(Error::InvalidWeights(format!("f0 = {f0} is negative")));
    }
    for (j, w) in atoms.iter().enumerate() {
        if !w.is_positive() {
            return Err(Error::InvalidWeights(format!("atom {} weight {w} is not positive", j + 1)));
        }
        if j > 0 && *w > atoms[j - 1] {
            return Err(Error::InvalidWeights(format!(
                "atom weights must be non-increasing: {} > {}",
                w,
                atoms[j - 1]
            )));
        }
    }
    let mut support: Vec<(Structure, Weight)> = atoms
        .into_iter()
        .enumerate()
        .map(|(j, w)| (Structure::singleton(j as i64 + 1), w))
        .collect();
    if f0.is_positive() {
        support.push((Structure::singleton(0), f0));
    }
    SimplexPoint::new(Signature::singletons(), support)
}

/// An endpoint of a code: atom of rank `r ≥ 1`, or the `k`-th blip (id `-k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Atom(u32),
    Blip(u32),
}

impl Node {
    fn id(self) -> Result<i64> {
        match self {
            Node::Atom(0) => Err(Error::MalformedCode("atom ranks start at 1".into())),
            Node::Atom(r) => Ok(r as i64),
            Node::Blip(k) => Ok(-(k as i64)),
        }
    }
}

fn node_ids(nodes: &[Node]) -> Result<Vec<i64>> {
    nodes.iter().map(|n| n.id()).collect()
}

/// `{(i,j)}` under signature `(2)`.
pub fn make_pair_code(i: Node, j: Node) -> Result<Structure> {
    if i == j {
        return Err(Error::MalformedCode("pair endpoints must differ".into()));
    }
    let ids = node_ids(&[i, j])?;
    let code = Structure::pair(ids[0], ids[1]);
    validate_code(&code, &Signature::pairs())?;
    Ok(code)
}

/// Both orientations of a pair, for undirected edges.
pub fn make_undirected_pair_code(i: Node, j: Node) -> Result<Structure> {
    if i == j {
        return Err(Error::MalformedCode("pair endpoints must differ".into()));
    }
    let ids = node_ids(&[i, j])?;
    let code = Structure::in_slot(1, [vec![ids[0], ids[1]], vec![ids[1], ids[0]]]);
    validate_code(&code, &Signature::pairs())?;
    Ok(code)
}

/// A set of size `k` stored as all `k!` orderings in slot `k`.
pub fn make_set_code(members: &[Node]) -> Result<Structure> {
    if members.is_empty() {
        return Err(Error::MalformedCode("set codes need at least one member".into()));
    }
    let mut ids = node_ids(members)?;
    ids.sort_unstable();
    if ids.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::MalformedCode("set members must be distinct".into()));
    }
    let mut tuples = Vec::new();
    loop {
        tuples.push(ids.clone());
        if !next_permutation(&mut ids) {
            break;
        }
    }
    let code = Structure::in_slot(members.len(), tuples);
    validate_code(&code, &Signature::identity(members.len()))?;
    Ok(code)
}

/// A path `a_1 → ... → a_k` stored as one `k`-tuple in slot `k`.
pub fn make_path_code(steps: &[Node]) -> Result<Structure> {
    if steps.is_empty() {
        return Err(Error::MalformedCode("path codes need at least one step".into()));
    }
    let code = Structure::in_slot(steps.len(), [node_ids(steps)?]);
    validate_code(&code, &Signature::identity(steps.len()))?;
    Ok(code)
}
