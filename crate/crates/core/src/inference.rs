//! Estimation of simplex points and exchangeability checks.
//!
//! [`estimate_f`] is the plug-in estimator: elements seen in at least
//! `threshold` positions are atoms, ranked by empirical propensity; each item
//! is coded with atom ranks and per-item blips, and code frequencies become
//! the estimate. [`exact_distribution`] enumerates every code tuple to get the
//! exact law of the first `n` positions, and [`test_exchangeability_exact`]
//! compares that law with its image under every permutation of positions.
//! [`test_exchangeability_mc`] is the sampling surrogate for large `n`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::RngCore;
use rayon::prelude::*;
use serde_json::json;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::canonical::{canonical_form, CanonicalSequence, Permutation};
use crate::error::{Error, Result};
use crate::simplex::{blip_class, dagger, sample_epsilon_f, sample_epsilon_phi, MixingMeasure, SimplexPoint};
use crate::starmap::{rank_elements, shape_of};
use crate::structure::{Signature, Structure};
use crate::weight::Weight;

/// Default cap on the number of code tuples [`exact_distribution`] visits.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1_000_000;

/// Codes every item of `x` and returns the code frequencies.
///
/// Blips inside an item are numbered `0, -1, ...` by first appearance and the
/// resulting code is replaced by its [`blip_class`] representative, so codes
/// that differ only in how their blips are ranked are counted together.
pub fn estimate_f(x: &CanonicalSequence, threshold: usize) -> Result<SimplexPoint> {
    if x.is_empty() {
        return Err(Error::EmptySequence);
    }
    let threshold = threshold.max(1);
    let mut first_seen: HashMap<i64, usize> = HashMap::new();
    let items: Vec<(Structure, Vec<i64>)> = x
        .items()
        .iter()
        .map(|s| {
            let ids = s.ids_in_order();
            for &a in &ids {
                let next = first_seen.len();
                first_seen.entry(a).or_insert(next);
            }
            (shape_of(s), ids)
        })
        .collect();
    let ranked = rank_elements(&items, threshold, |a, b| first_seen[a].cmp(&first_seen[b]));
    let rank: HashMap<i64, i64> = ranked
        .iter()
        .enumerate()
        .map(|(r, &(a, _))| (a, r as i64 + 1))
        .collect();

    let mut counts: BTreeMap<Structure, i64> = BTreeMap::new();
    for (s, (_, ids)) in x.items().iter().zip(&items) {
        let mut code: HashMap<i64, i64> = HashMap::new();
        let mut next_blip = 0;
        for &a in ids {
            let c = match rank.get(&a) {
                Some(&r) => r,
                None => {
                    let z = next_blip;
                    next_blip -= 1;
                    z
                }
            };
            code.insert(a, c);
        }
        *counts.entry(blip_class(&s.map_ids(|a| code[&a]))).or_default() += 1;
    }
    let n = x.len() as i64;
    SimplexPoint::new(
        x.sig().clone(),
        counts.into_iter().map(|(c, k)| (c, Weight::ratio(k, n))),
    )
}

/// Fraction of positions whose item contains `element`.
pub fn empirical_propensity(x: &CanonicalSequence, element: i64) -> Result<Weight> {
    let hits = x
        .items()
        .iter()
        .filter(|s| s.domain().contains(&element))
        .count();
    if hits == 0 {
        return Err(Error::AbsentElement(element));
    }
    Ok(Weight::ratio(hits as i64, x.len() as i64))
}

/// Exact law of a sequence of classes, keyed by the class encoding.
#[derive(Clone, Debug)]
pub struct ClassDistribution {
    n: usize,
    sig: Signature,
    source: Option<SimplexPoint>,
    probs: BTreeMap<String, Weight>,
    reps: BTreeMap<String, CanonicalSequence>,
}

impl ClassDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    /// The generating point, when there is a single one.
    pub fn source(&self) -> Option<&SimplexPoint> {
        self.source.as_ref()
    }

    pub fn probs(&self) -> &BTreeMap<String, Weight> {
        &self.probs
    }

    pub fn prob(&self, key: &str) -> Weight {
        self.probs.get(key).cloned().unwrap_or_default()
    }

    /// Class representatives, same keys as [`ClassDistribution::probs`].
    pub fn classes(&self) -> impl Iterator<Item = (&CanonicalSequence, &Weight)> {
        self.probs.iter().map(|(k, p)| (&self.reps[k], p))
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total(&self) -> Weight {
        self.probs.values().sum()
    }

    /// Probability of the event `pred`.
    pub fn mass_where<F: Fn(&CanonicalSequence) -> bool>(&self, pred: F) -> Weight {
        self.classes().filter(|(c, _)| pred(c)).map(|(_, p)| p).sum()
    }

    /// Image of the law under `σ`.
    pub fn permuted(&self, sigma: &Permutation) -> Result<BTreeMap<String, Weight>> {
        let mut out: BTreeMap<String, Weight> = BTreeMap::new();
        for (c, p) in self.classes() {
            let key = c.permute(sigma)?.encode();
            let e = out.entry(key).or_default();
            *e = &*e + p;
        }
        Ok(out)
    }
}

/// Total variation `½ Σ |p − q|` between two class laws.
pub fn total_variation(p: &BTreeMap<String, Weight>, q: &BTreeMap<String, Weight>) -> Weight {
    let keys: BTreeSet<&String> = p.keys().chain(q.keys()).collect();
    let zero = Weight::zero();
    let sum: Weight = keys
        .into_iter()
        .map(|k| (p.get(k).unwrap_or(&zero) - q.get(k).unwrap_or(&zero)).abs())
        .sum();
    &sum * &Weight::ratio(1, 2)
}

/// Exact law of `ε_f` on `[n]` by enumerating all `|support|^n` code tuples.
pub fn exact_distribution(f: &SimplexPoint, n: usize) -> Result<ClassDistribution> {
    exact_distribution_with_budget(f, n, DEFAULT_ENUMERATION_BUDGET)
}

pub fn exact_distribution_with_budget(f: &SimplexPoint, n: usize, budget: u128) -> Result<ClassDistribution> {
    let laws = vec![f; n];
    let mut dist = enumerate(f.sig(), &laws, budget)?;
    dist.source = Some(f.clone());
    Ok(dist)
}

/// Exact law of `ε_φ` on `[n]` for a finite mixture: the weighted sum of the
/// component laws.
pub fn exact_distribution_phi(phi: &MixingMeasure, n: usize) -> Result<ClassDistribution> {
    let MixingMeasure::Finite(components) = phi else {
        return Err(Error::InvalidArgument(
            "exact laws need a finite mixture".into(),
        ));
    };
    let mut out: Option<ClassDistribution> = None;
    for (w, f) in components {
        let d = exact_distribution(f, n)?;
        let acc = out.get_or_insert_with(|| ClassDistribution {
            n,
            sig: d.sig.clone(),
            source: None,
            probs: BTreeMap::new(),
            reps: BTreeMap::new(),
        });
        for (k, p) in d.probs {
            let e = acc.probs.entry(k).or_default();
            *e = &*e + &(w * &p);
        }
        for (k, c) in d.reps {
            acc.reps.entry(k).or_insert(c);
        }
    }
    if components.len() == 1 {
        if let Some(d) = out.as_mut() {
            d.source = Some(components[0].1.clone());
        }
    }
    out.ok_or_else(|| Error::InvalidArgument("mixture has no components".into()))
}

/// A law whose `i`-th code comes from its own simplex point: i.i.d. only when
/// all points coincide. Positions past the list reuse the last point.
///
/// Not relationally exchangeable in general, which makes it the negative
/// control for the exchangeability tests.
#[derive(Clone, Debug)]
pub struct PositionalLaw {
    laws: Vec<SimplexPoint>,
}

impl PositionalLaw {
    pub fn new(laws: Vec<SimplexPoint>) -> Result<Self> {
        let Some(first) = laws.first() else {
            return Err(Error::InvalidArgument("positional law needs at least one point".into()));
        };
        if laws.iter().any(|f| f.sig() != first.sig()) {
            return Err(Error::SignatureMismatch);
        }
        Ok(PositionalLaw { laws })
    }

    pub fn sig(&self) -> &Signature {
        self.laws[0].sig()
    }

    pub fn at(&self, i: usize) -> &SimplexPoint {
        &self.laws[i.min(self.laws.len() - 1)]
    }

    pub fn exact_distribution(&self, n: usize) -> Result<ClassDistribution> {
        let laws: Vec<&SimplexPoint> = (0..n).map(|i| self.at(i)).collect();
        enumerate(self.sig(), &laws, DEFAULT_ENUMERATION_BUDGET)
    }

    pub fn sample(&self, n: usize, rng: &mut dyn RngCore) -> CanonicalSequence {
        let codes: Vec<Structure> = (0..n)
            .map(|i| self.at(i).sample_codes(1, rng).remove(0))
            .collect();
        canonical_form(&dagger(self.sig(), &codes).expect("validated codes"))
    }
}

fn enumerate(sig: &Signature, laws: &[&SimplexPoint], budget: u128) -> Result<ClassDistribution> {
    let n = laws.len();
    let supports: Vec<Vec<(&Structure, &Weight)>> =
        laws.iter().map(|f| f.support().iter().collect()).collect();
    let needed = supports
        .iter()
        .try_fold(1u128, |acc, s| acc.checked_mul(s.len() as u128))
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }

    type Partial = (BTreeMap<String, Weight>, BTreeMap<String, CanonicalSequence>);

    let visit = |prefix: Option<usize>| -> Partial {
        let mut probs: BTreeMap<String, Weight> = BTreeMap::new();
        let mut reps: BTreeMap<String, CanonicalSequence> = BTreeMap::new();
        let start = usize::from(prefix.is_some());
        let mut idx = vec![0usize; n];
        if let Some(p) = prefix {
            idx[0] = p;
        }
        loop {
            let codes: Vec<Structure> = (0..n).map(|i| supports[i][idx[i]].0.clone()).collect();
            let w: Weight = (0..n).fold(Weight::one(), |acc, i| &acc * supports[i][idx[i]].1);
            let class = canonical_form(&dagger(sig, &codes).expect("validated codes"));
            let key = class.encode();
            let e = probs.entry(key.clone()).or_default();
            *e = &*e + &w;
            reps.entry(key).or_insert(class);

            // mixed-radix increment over positions start..n
            let mut pos = n;
            loop {
                if pos == start {
                    return (probs, reps);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < supports[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    };

    let partials: Vec<Partial> = if n == 0 {
        vec![visit(None)]
    } else {
        (0..supports[0].len())
            .into_par_iter()
            .map(|p| visit(Some(p)))
            .collect()
    };
    let mut probs: BTreeMap<String, Weight> = BTreeMap::new();
    let mut reps: BTreeMap<String, CanonicalSequence> = BTreeMap::new();
    for (p, r) in partials {
        for (k, w) in p {
            let e = probs.entry(k).or_default();
            *e = &*e + &w;
        }
        for (k, c) in r {
            reps.entry(k).or_insert(c);
        }
    }
    Ok(ClassDistribution {
        n,
        sig: sig.clone(),
        source: None,
        probs,
        reps,
    })
}

/// Per-permutation total variation against the unpermuted law.
#[derive(Clone, Debug)]
pub struct ExactReport {
    pub n: usize,
    pub max_tv: Weight,
    pub per_sigma: Vec<(Permutation, Weight)>,
}

impl ExactReport {
    /// `{"max_tv": ..., "per_sigma": [{"sigma": [...], "tv": ...}, ...]}`,
    /// permutations written 1-based.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "format": 1,
            "n": self.n,
            "max_tv": self.max_tv.to_json(),
            "per_sigma": self.per_sigma.iter().map(|(s, tv)| json!({
                "sigma": s.images().iter().map(|i| i + 1).collect::<Vec<_>>(),
                "tv": tv.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Pushes `dist` through every permutation of its positions.
pub fn max_tv_over_permutations(dist: &ClassDistribution) -> Result<ExactReport> {
    let base = dist.probs();
    let per_sigma = Permutation::all(dist.n())
        .into_par_iter()
        .map(|sigma| {
            let tv = total_variation(base, &dist.permuted(&sigma)?);
            Ok((sigma, tv))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut max_tv = Weight::zero();
    for (_, tv) in &per_sigma {
        if *tv > max_tv {
            max_tv = tv.clone();
        }
    }
    Ok(ExactReport {
        n: dist.n(),
        max_tv,
        per_sigma,
    })
}

/// Exact relational-exchangeability check of `ε_f` on `[n]`.
pub fn test_exchangeability_exact(f: &SimplexPoint, n: usize) -> Result<ExactReport> {
    max_tv_over_permutations(&exact_distribution(f, n)?)
}

/// Anything that draws canonical sequences of a given length.
pub trait ClassSampler {
    fn sample_class(&self, n: usize, rng: &mut dyn RngCore) -> CanonicalSequence;
}

impl ClassSampler for SimplexPoint {
    fn sample_class(&self, n: usize, rng: &mut dyn RngCore) -> CanonicalSequence {
        sample_epsilon_f(self, n, rng)
    }
}

impl ClassSampler for MixingMeasure {
    fn sample_class(&self, n: usize, rng: &mut dyn RngCore) -> CanonicalSequence {
        sample_epsilon_phi(self, n, rng)
    }
}

impl ClassSampler for PositionalLaw {
    fn sample_class(&self, n: usize, rng: &mut dyn RngCore) -> CanonicalSequence {
        self.sample(n, rng)
    }
}

impl<F> ClassSampler for F
where
    F: Fn(usize, &mut dyn RngCore) -> CanonicalSequence,
{
    fn sample_class(&self, n: usize, rng: &mut dyn RngCore) -> CanonicalSequence {
        self(n, rng)
    }
}

/// Two-sample chi-square comparison of a law and its permuted image.
#[derive(Clone, Debug, PartialEq)]
pub struct McReport {
    pub chi2: f64,
    pub dof: usize,
    pub p: f64,
    /// Bins after pooling; fewer than two means the test says nothing.
    pub bins: usize,
    pub informative: bool,
}

impl McReport {
    pub fn to_json(&self) -> serde_json::Value {
        if self.informative {
            json!({"format": 1, "chi2": self.chi2, "dof": self.dof, "p": self.p, "bins": self.bins})
        } else {
            json!({"format": 1, "chi2": null, "dof": 0, "p": null, "bins": self.bins, "status": "uninformative"})
        }
    }
}

/// Minimum expected count per bin before pooling.
pub const MIN_EXPECTED: f64 = 5.0;

/// Draws `samples` sequences and `samples` permuted sequences and compares
/// their class frequencies with a 2×K chi-square test.
pub fn test_exchangeability_mc<S: ClassSampler + ?Sized>(
    sampler: &S,
    n: usize,
    sigma: &Permutation,
    samples: usize,
    rng: &mut dyn RngCore,
) -> Result<McReport> {
    if samples < 1000 {
        return Err(Error::InvalidArgument(format!(
            "at least 1000 samples required, got {samples}"
        )));
    }
    if sigma.len() != n {
        return Err(Error::InvalidPermutation(format!(
            "permutation of {} positions for sequences of length {n}",
            sigma.len()
        )));
    }
    let mut counts: BTreeMap<String, [u64; 2]> = BTreeMap::new();
    for _ in 0..samples {
        let x = sampler.sample_class(n, rng);
        counts.entry(x.encode()).or_default()[0] += 1;
    }
    for _ in 0..samples {
        let x = sampler.sample_class(n, rng).permute(sigma)?;
        counts.entry(x.encode()).or_default()[1] += 1;
    }
    Ok(chi_square_two_sample(counts.into_values().collect()))
}

/// Chi-square homogeneity test on paired counts, pooling sparse bins.
pub fn chi_square_two_sample(mut bins: Vec<[u64; 2]>) -> McReport {
    let totals = [
        bins.iter().map(|b| b[0]).sum::<u64>() as f64,
        bins.iter().map(|b| b[1]).sum::<u64>() as f64,
    ];
    let grand = totals[0] + totals[1];
    let expected = |b: &[u64; 2], side: usize| (b[0] + b[1]) as f64 * totals[side] / grand;
    let sparse = |b: &[u64; 2]| expected(b, 0).min(expected(b, 1)) < MIN_EXPECTED;

    let mut pooled = [0u64; 2];
    let mut any_pooled = false;
    bins.retain(|b| {
        if sparse(b) {
            pooled[0] += b[0];
            pooled[1] += b[1];
            any_pooled = true;
            false
        } else {
            true
        }
    });
    if any_pooled {
        if sparse(&pooled) && !bins.is_empty() {
            let smallest = (0..bins.len())
                .min_by_key(|&i| bins[i][0] + bins[i][1])
                .expect("non-empty");
            bins[smallest][0] += pooled[0];
            bins[smallest][1] += pooled[1];
        } else {
            bins.push(pooled);
        }
    }

    let k = bins.len();
    if k < 2 || grand == 0.0 {
        return McReport {
            chi2: 0.0,
            dof: 0,
            p: 1.0,
            bins: k,
            informative: false,
        };
    }
    let chi2: f64 = bins
        .iter()
        .flat_map(|b| {
            (0..2).map(move |side| {
                let e = expected(b, side);
                let d = b[side] as f64 - e;
                d * d / e
            })
        })
        .sum();
    let dof = k - 1;
    let p = ChiSquared::new(dof as f64)
        .expect("positive degrees of freedom")
        .sf(chi2);
    McReport {
        chi2,
        dof,
        p,
        bins: k,
        informative: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::RelSequence;
    use crate::simplex::make_paintbox;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn canon_singles(v: &[i64]) -> CanonicalSequence {
        canonical_form(
            &RelSequence::new(
                Signature::singletons(),
                v.iter().map(|&a| Structure::singleton(a)).collect(),
            )
            .unwrap(),
        )
    }

    fn half_atom_half_blip() -> SimplexPoint {
        SimplexPoint::new(
            Signature::singletons(),
            [
                (Structure::singleton(1), Weight::ratio(1, 2)),
                (Structure::singleton(0), Weight::ratio(1, 2)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn estimate_partition_example() {
        let x = canon_singles(&[1, 2, 3, 4, 3, 3, 5]);
        let fhat = estimate_f(&x, 2).unwrap();
        assert_eq!(fhat.len(), 2);
        assert_eq!(fhat.weight(&Structure::singleton(1)), Weight::ratio(3, 7));
        assert_eq!(fhat.weight(&Structure::singleton(0)), Weight::ratio(4, 7));
    }

    #[test]
    fn estimate_degenerate() {
        let sig = Signature::pairs();
        let x = canonical_form(&RelSequence::new(sig, vec![Structure::pair(4, 9); 5]).unwrap());
        let fhat = estimate_f(&x, 2).unwrap();
        assert_eq!(fhat.weight(&Structure::pair(1, 2)), Weight::one());
    }

    #[test]
    fn estimate_rejects_empty() {
        let x = canon_singles(&[]);
        assert_eq!(estimate_f(&x, 2).unwrap_err(), Error::EmptySequence);
    }

    #[test]
    fn empirical_propensity_examples() {
        let x = canon_singles(&[1, 2, 3, 4, 3, 3, 5]);
        assert_eq!(empirical_propensity(&x, 3).unwrap(), Weight::ratio(3, 7));
        assert_eq!(empirical_propensity(&x, 5).unwrap(), Weight::ratio(1, 7));
        assert_eq!(empirical_propensity(&x, 9).unwrap_err(), Error::AbsentElement(9));
        let all = canon_singles(&[1, 1, 1]);
        assert_eq!(empirical_propensity(&all, 1).unwrap(), Weight::one());
    }

    #[test]
    fn exact_distribution_two_draws() {
        let d = exact_distribution(&half_atom_half_blip(), 2).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.prob("[{1:[(1)]},{1:[(1)]}]"), Weight::ratio(1, 4));
        assert_eq!(d.prob("[{1:[(1)]},{1:[(2)]}]"), Weight::ratio(3, 4));
        assert_eq!(d.total(), Weight::one());
    }

    #[test]
    fn exact_distribution_single_draw() {
        let f = make_paintbox(Weight::ratio(1, 5), vec![Weight::ratio(1, 2), Weight::ratio(3, 10)])
            .unwrap();
        let d = exact_distribution(&f, 1).unwrap();
        // every singleton code canonicalizes to {1}
        assert_eq!(d.len(), 1);
        assert_eq!(d.prob("[{1:[(1)]}]"), Weight::one());
    }

    #[test]
    fn exact_distribution_budget() {
        let f = half_atom_half_blip();
        assert!(matches!(
            exact_distribution_with_budget(&f, 4, 15),
            Err(Error::BudgetExceeded { needed: 16, budget: 15 })
        ));
        let d = exact_distribution(&f, 0).unwrap();
        assert_eq!(d.prob("[]"), Weight::one());
    }

    #[test]
    fn exchangeability_exact_trivial_cases() {
        let r = test_exchangeability_exact(&half_atom_half_blip(), 1).unwrap();
        assert!(r.max_tv.is_zero());
        assert_eq!(r.per_sigma.len(), 1);
        let r = test_exchangeability_exact(&half_atom_half_blip(), 3).unwrap();
        assert!(r.max_tv.is_zero());
        assert_eq!(r.per_sigma.len(), 6);
    }

    #[test]
    fn mixture_law_is_weighted_sum() {
        let sig = Signature::pairs();
        let atoms = SimplexPoint::degenerate(sig.clone(), Structure::pair(1, 2)).unwrap();
        let blips = SimplexPoint::degenerate(sig, Structure::pair(0, -1)).unwrap();
        let phi = MixingMeasure::finite(vec![
            (Weight::ratio(1, 2), atoms),
            (Weight::ratio(1, 2), blips),
        ])
        .unwrap();
        let d = exact_distribution_phi(&phi, 2).unwrap();
        assert_eq!(d.prob("[{1:[(1,2)]},{1:[(1,2)]}]"), Weight::ratio(1, 2));
        assert_eq!(d.prob("[{1:[(1,2)]},{1:[(3,4)]}]"), Weight::ratio(1, 2));
        assert!(max_tv_over_permutations(&d).unwrap().max_tv.is_zero());
    }

    #[test]
    fn positional_law_is_not_exchangeable() {
        let sig = Signature::singletons();
        let atom = SimplexPoint::degenerate(sig.clone(), Structure::singleton(1)).unwrap();
        let blip = SimplexPoint::degenerate(sig, Structure::singleton(0)).unwrap();
        let law = PositionalLaw::new(vec![atom.clone(), atom, blip]).unwrap();
        let r = max_tv_over_permutations(&law.exact_distribution(3).unwrap()).unwrap();
        assert_eq!(r.max_tv, Weight::one());
    }

    #[test]
    fn chi_square_uninformative_for_constant_sampler() {
        let f = SimplexPoint::degenerate(Signature::pairs(), Structure::pair(1, 2)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = test_exchangeability_mc(&f, 3, &Permutation::reversal(3), 1000, &mut rng).unwrap();
        assert!(!r.informative);
        assert_eq!(r.to_json()["status"], "uninformative");
    }

    #[test]
    fn chi_square_argument_checks() {
        let f = half_atom_half_blip();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(test_exchangeability_mc(&f, 3, &Permutation::reversal(3), 999, &mut rng).is_err());
        assert!(test_exchangeability_mc(&f, 3, &Permutation::reversal(2), 1000, &mut rng).is_err());
    }

    #[test]
    fn chi_square_statistic_by_hand() {
        // 2x2 table [[30,10],[20,20]]: expected 25/15 per row side
        let r = chi_square_two_sample(vec![[30, 20], [10, 20]]);
        let by_hand = 2.0 * (25.0f64 / 25.0 + 25.0 / 15.0);
        assert!((r.chi2 - by_hand).abs() < 1e-12, "{}", r.chi2);
        assert_eq!(r.dof, 1);
        assert!(r.p > 0.0 && r.p < 0.05);
    }

    #[test]
    fn chi_square_pools_sparse_bins() {
        // pooled remainder [4,3] is itself sparse and joins the smallest bin
        let r = chi_square_two_sample(vec![[500, 500], [1, 0], [0, 2], [3, 1], [496, 497]]);
        assert_eq!(r.bins, 2);
        assert_eq!(r.dof, 1);
        // pooled remainder [6,6] stands as its own bin
        let r = chi_square_two_sample(vec![[500, 500], [3, 3], [3, 3], [490, 490]]);
        assert_eq!(r.bins, 3);
        assert!(r.chi2.abs() < 1e-12);
    }
}
