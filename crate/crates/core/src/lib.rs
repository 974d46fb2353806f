//! Relationally exchangeable random structures.
//!
//! A sequence of finite relational structures is *relationally labeled* when
//! the ids of its elements carry no meaning beyond which items share them,
//! and *relationally exchangeable* when the law of that labeled sequence does
//! not change if positions are permuted. Every such law is a mixture of laws
//! `ε_f` indexed by points `f` of the R-simplex: categorical distributions over
//! codes in which recurring elements are ranked atoms and one-off elements
//! are blips.
//!
//! The crate is organized bottom-up:
//!
//! - [`structure`]: signatures, finite structures, relabeling and the text
//!   encoding used as the interchange format.
//! - [`canonical`]: canonical representatives, restriction, permutation of
//!   positions and the prefix metric.
//! - [`simplex`]: simplex points, the dagger transform and the `ε_f` / `ε_φ`
//!   samplers, plus constructors for paintboxes, edges, sets and paths.
//! - [`starmap`]: uniform labeling, propensities, atom ordering, the star map
//!   and the label/star/dagger round trip.
//! - [`inference`]: plug-in estimation of `f`, exact finite-`n` laws and
//!   exact / Monte Carlo exchangeability tests.
//! - [`io`]: JSON-lines sequence files, model files and edge lists.
//!
//! ```
//! use rand::SeedableRng;
//! use relex::prelude::*;
//!
//! let f = make_paintbox(Weight::ratio(1, 5), vec![Weight::ratio(1, 2), Weight::ratio(3, 10)])?;
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
//! let x = sample_epsilon_f(&f, 20, &mut rng);
//! assert!(roundtrip_check(&x, &mut rng));
//! let fhat = estimate_f(&x, 2)?;
//! assert_eq!(fhat.sig(), f.sig());
//! # Ok::<(), relex::Error>(())
//! ```

pub mod canonical;
pub mod error;
pub mod inference;
pub mod io;
pub mod simplex;
pub mod starmap;
pub mod structure;
pub mod weight;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::canonical::{are_equivalent, canonical_form, CanonicalSequence, Permutation, RelSequence};
    pub use crate::error::{Error, Result};
    pub use crate::inference::{
        empirical_propensity, estimate_f, exact_distribution, exact_distribution_phi, max_tv_over_permutations,
        test_exchangeability_exact, test_exchangeability_mc, ClassDistribution, ClassSampler,
        PositionalLaw,
    };
    pub use crate::simplex::{
        dagger, make_paintbox, make_pair_code, make_path_code, make_set_code, sample_codes,
        sample_epsilon_f, sample_epsilon_phi, simplex_distance, MixingMeasure, Node, SimplexPoint,
    };
    pub use crate::starmap::{
        atom_order, attach_uniform_labels, propensity, propensity_given, roundtrip_check, star,
    };
    pub use crate::structure::{Domain, Signature, Structure};
    pub use crate::weight::Weight;
}
