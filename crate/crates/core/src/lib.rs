//! Exact enumeration for species of structures over finite fields.
//!
//! A species here assigns a finite set of structures to every finite
//! dimensional vector space over F_q, functorially in linear isomorphisms.
//! The crate computes three series for an expression built from the
//! built-in species and the sum, product, power, symmetric power,
//! assembly, restriction, and weight-mark combinators:
//!
//! - the generating series `sum f_n x^n / |GL_n(q)|`,
//! - the type generating series counting isomorphism classes,
//! - the cycle index series over the primary cyclic invariants of
//!   automorphisms.
//!
//! Everything is exact. The [`oracle`] module materializes structures on
//! F_q^n for small `q` and `n` and recomputes every series by brute force;
//! the closed forms elsewhere are tested against it.

pub mod classes;
pub mod coeff;
pub mod config;
pub mod error;
pub mod gfq;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod render;
pub mod series;
pub mod species;
pub mod verify;
pub mod zindex;

pub use classes::{centralizer_order, class_weighted_sum, enumerate_classes, ClassKind, ConjClass};
pub use coeff::{Coeff, TPoly};
pub use config::Budget;
pub use error::{Error, Result};
pub use gfq::{FieldElem, FieldSpec};
pub use linalg::{gl_order, invariant_data, qbinomial, InvariantData, Matrix, Subspace};
pub use poly::{irreducible_count, monic_irreducibles, Poly};
pub use series::PowerSeries;
pub use species::{Builtin, SpeciesExpr};
pub use zindex::{CycleIndexSeries, ZMonomial};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
