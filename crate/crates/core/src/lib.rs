//! Nullity probability of finite group algebras.
//!
//! `P(K[G])` is the probability that two uniformly random elements of the
//! group algebra multiply to zero. This crate computes it two independent
//! ways: by closed forms ([`formulas`]) and by an exhaustive annihilator
//! census ([`oracle`]), which ranks the regular representation of every
//! element over a finite field or counts pairs directly over `Z/nZ`.
//!
//! ```
//! use nullity::{group_algebra, annihilator_histogram, formulas, Caps, Side};
//!
//! let alg = group_algebra(&"F:2".parse().unwrap(), &"C3".parse().unwrap()).unwrap();
//! let census = annihilator_histogram(&alg, Side::Left, &Caps::default(), None).unwrap();
//! assert_eq!(census.probability(), formulas::p_cyclic_semisimple(2, 3).unwrap().value);
//! ```

pub mod coeffring;
pub mod error;
pub mod formulas;
pub mod groupring;
pub mod groups;
pub mod linalg;
pub mod oracle;
pub mod report;
pub mod scalar;

pub use coeffring::{CoeffRing, CoeffSpec, Elem};
pub use error::{Error, Result};
pub use formulas::{FormulaResult, Variant};
pub use groupring::{GroupAlgebra, GroupRingElement, MulSide, Side};
pub use groups::{CayleyGroup, GroupSpec};
pub use oracle::{annihilator_histogram, group_algebra, nullity_probability, pair_count_naive, AnnihilatorHistogram, Caps, Relation};
pub use report::OracleRecord;
pub use scalar::Scalar;

/// Exact probabilities, always in lowest terms.
pub type Probability = num_rational::BigRational;

/// Closed forms evaluated in floating point, for display and sanity checks.
pub type ApproxProbability = f64;

/// Closed forms in fixed-width rationals; exact while numerators and
/// denominators fit in `i128`.
pub type SmallProbability = num_rational::Ratio<i128>;
