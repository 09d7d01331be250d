//! Matroids induced by rough sets.
//!
//! Given a finite universe, an equivalence relation on it (held as a
//! [`Partition`]) and a parameter set `X`, the sets whose lower approximation
//! stays inside `X` form the independent sets of a matroid `M_X`. This crate
//! provides:
//!
//! * [`sets`]: universes, bitset subsets, set families, relations, partitions;
//! * [`rough`]: lower and upper approximations and the lower approximation number;
//! * [`matroid`]: an oracle-based matroid kernel with free and partition-circuit
//!   matroids, restriction and direct sum;
//! * [`parametric`]: `M_X` itself, its five equivalent descriptions, its
//!   decomposition, and closed forms for rank, circuits, bases and closure;
//! * [`oracle`]: brute-force profiles, set-partition enumeration, seeded random
//!   instances and property checks;
//! * [`ingest`]: indiscernibility partitions from tabular data.
//!
//! ```
//! use rough_matroid::{Partition, ParametricInstance, Universe, parametric};
//!
//! let u = Universe::numbered(3)?;
//! let p = Partition::from_ids(u.clone(), &[vec!["1", "2"], vec!["3"]])?;
//! let inst = ParametricInstance::from_partition(p, u.subset(["1"])?)?;
//! let m = parametric::parametric_matroid(&inst);
//! assert_eq!(u.format_family(&m.independents()?), "{{}, {1}, {2}}");
//! # Ok::<(), rough_matroid::Error>(())
//! ```

pub mod error;
pub mod ingest;
pub mod matroid;
pub mod oracle;
pub mod parametric;
pub mod rough;
pub mod sets;

pub use error::{Error, Result};
pub use matroid::{AxiomVerdict, Matroid, Provenance};
pub use parametric::{ParametricInstance, Representation};
pub use rough::ApproximationSpace;
pub use sets::{BinaryRelation, Partition, SetFamily, Subset, Universe};

// The guide under book/ is compiled here so its snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/approximations.md")]
    mod approximations {}
    #[doc = include_str!("../../../book/src/matroids.md")]
    mod matroids {}
    #[doc = include_str!("../../../book/src/parametric.md")]
    mod parametric {}
    #[doc = include_str!("../../../book/src/closed-forms.md")]
    mod closed_forms {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/tables.md")]
    mod tables {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
