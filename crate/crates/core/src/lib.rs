//! Finite quantaloid-enriched order theory, at desk scale.
//!
//! Everything here is exhaustively checkable: lattices have a handful of
//! elements, categories a handful of objects, and every law is verified by
//! direct scan rather than by symbolic reasoning. The crate builds up in
//! layers:
//!
//! * [`suplattice`]: finite complete lattices and join-preserving maps.
//! * [`quantaloid`]: Sup-enriched categories, residuation, idempotent
//!   splitting, centres, suspensions of quantales.
//! * [`enriched`]: categories, functors and distributors enriched in a
//!   quantaloid.
//! * [`presheaf`]: contravariant presheaves, the presheaf category, weighted
//!   colimits and cocompleteness.
//! * [`cauchy`]: adjoint distributors, Cauchy completeness and completion.
//! * [`modules`]: Sup-valued modules on a quantaloid and their equivalence
//!   with cocomplete enriched categories.
//! * [`doctrine`]: the presheaf construction as a lax-idempotent doctrine,
//!   with monad and algebra checks.
//! * [`locale_sheaf`]: sheaves on a finite locale, ordered sheaves, and the
//!   dictionary between downsets and presheaves.
//! * [`centre_morita`]: the centre of a quantaloid compared with the centre
//!   of its module category, and invariance under equivalence.
//! * [`workspace`]: the JSON interchange format shared by fixtures and the
//!   `qk` binary.

pub mod cauchy;
pub mod centre_morita;
pub mod doctrine;
pub mod enriched;
pub mod error;
pub mod fixtures;
pub mod locale_sheaf;
pub mod modules;
pub mod presheaf;
pub mod quantaloid;
pub mod report;
pub mod suplattice;
pub mod workspace;

pub use error::Error;
pub use report::{LawCheck, Report};
